//! Applying one local operation to a product state, either by drawing a
//! branch or by enumerating both.

use super::ops::{BranchRule, LocalOperation};
use super::product::{normalized, ProductState};
use crate::real::{Real, C};
use rand::Rng;

/// Branch probabilities at or below this are treated as zero.
pub const PRUNE_TOL: f64 = 1e-15;

struct BranchImage<T: Real> {
    control: [C<T>; 2],
    target: [C<T>; 2],
    prob: T,
}

fn images<T: Real>(state: &ProductState<T>, op: &LocalOperation<T>, control: usize, target: usize) -> [BranchImage<T>; 2] {
    let (cv, tv) = (state.qubit(control), state.qubit(target));
    op.branches.map(|b| {
        let control = b.control.apply(cv);
        let target = b.target.apply(tv);
        let prob = match op.rule {
            BranchRule::Born => {
                let pc = control[0].norm_sqr() + control[1].norm_sqr();
                let pt = target[0].norm_sqr() + target[1].norm_sqr();
                pc * pt
            }
            BranchRule::Half => T::lit(0.5),
        };
        BranchImage { control, target, prob }
    })
}

/// Selection weights of both branches, clamped and renormalized so that
/// a numerically empty branch has weight exactly zero.
pub fn branch_weights<T: Real>(state: &ProductState<T>, op: &LocalOperation<T>, control: usize, target: usize) -> [T; 2] {
    let imgs = images(state, op, control, target);
    clamp_pair(imgs[0].prob, imgs[1].prob)
}

fn clamp_pair<T: Real>(a: T, b: T) -> [T; 2] {
    let cut = T::lit(PRUNE_TOL);
    let a = if a > cut { a } else { T::zero() };
    let b = if b > cut { b } else { T::zero() };
    let total = a + b;
    assert!(total > T::zero(), "both branches of a local operation vanished");
    [a / total, b / total]
}

/// Draws one branch of `op` on `(control, target)` and updates `state` in
/// place. Returns the branch index.
pub(crate) fn apply_local_op_in_place<T: Real, R: Rng + ?Sized>(
    state: &mut ProductState<T>,
    op: &LocalOperation<T>,
    control: usize,
    target: usize,
    rng: &mut R,
) -> usize {
    let imgs = images(state, op, control, target);
    let branch = match op.rule {
        BranchRule::Half => usize::from(rng.random::<bool>()),
        BranchRule::Born => {
            let [p0, _] = clamp_pair(imgs[0].prob, imgs[1].prob);
            let u: f64 = rng.random();
            usize::from(u >= p0.as_f64())
        }
    };
    let img = &imgs[branch];
    state.set(control, normalized(img.control));
    state.set(target, normalized(img.target));
    branch
}

/// Draws a branch of `op`: Born-rule selection for measurement operations,
/// a fair coin for L̄3. The result is still a product state.
pub fn apply_local_op<T: Real, R: Rng + ?Sized>(
    state: &ProductState<T>,
    op: &LocalOperation<T>,
    control: usize,
    target: usize,
    rng: &mut R,
) -> (ProductState<T>, usize) {
    assert_ne!(control, target, "control equals target");
    let mut out = state.clone();
    let branch = apply_local_op_in_place(&mut out, op, control, target, rng);
    (out, branch)
}

/// Both branches with their exact weights; branches with weight below
/// [`PRUNE_TOL`] are dropped. Each entry carries its branch index.
pub fn expand_branches<T: Real>(
    state: &ProductState<T>,
    op: &LocalOperation<T>,
    control: usize,
    target: usize,
) -> Vec<(ProductState<T>, T, usize)> {
    assert_ne!(control, target, "control equals target");
    let imgs = images(state, op, control, target);
    let weights = clamp_pair(imgs[0].prob, imgs[1].prob);
    let mut out = Vec::with_capacity(2);
    for (idx, (img, w)) in imgs.iter().zip(weights).enumerate() {
        if w == T::zero() {
            continue;
        }
        let mut s = state.clone();
        s.set(control, normalized(img.control));
        s.set(target, normalized(img.target));
        out.push((s, w, idx));
    }
    out
}
