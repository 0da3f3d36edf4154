//! Circuit representation, Pauli observables and the plain-text circuit format.
//!
//! ```text
//! # three-qubit GHZ preparation
//! qubits 3
//! h 0
//! cnot 0 1
//! cnot 0 2
//! ```
//!
//! Qubit 0 is the most significant bit of a basis label, so `|100⟩` has
//! qubit 0 set.

use crate::error::{Error, Result};
use crate::linalg::Mat2;
use crate::real::{Real, C};
use std::fmt::{self, Write as _};
use std::str::FromStr;

/// Unitarity tolerance for matrices typed in by a user.
pub const USER_UNITARY_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NamedGate {
    H,
    X,
    Y,
    Z,
    S,
    Sdg,
    T,
    Tdg,
}

impl NamedGate {
    pub const ALL: [NamedGate; 8] = [
        NamedGate::H,
        NamedGate::X,
        NamedGate::Y,
        NamedGate::Z,
        NamedGate::S,
        NamedGate::Sdg,
        NamedGate::T,
        NamedGate::Tdg,
    ];

    pub fn matrix<T: Real>(self) -> Mat2<T> {
        match self {
            NamedGate::H => Mat2::hadamard(),
            NamedGate::X => Mat2::pauli_x(),
            NamedGate::Y => Mat2::pauli_y(),
            NamedGate::Z => Mat2::pauli_z(),
            NamedGate::S => Mat2::phase_s(),
            NamedGate::Sdg => Mat2::phase_s().dagger(),
            NamedGate::T => Mat2::phase_t(),
            NamedGate::Tdg => Mat2::phase_t().dagger(),
        }
    }

    pub fn mnemonic(self) -> &'static str {
        match self {
            NamedGate::H => "h",
            NamedGate::X => "x",
            NamedGate::Y => "y",
            NamedGate::Z => "z",
            NamedGate::S => "s",
            NamedGate::Sdg => "sdg",
            NamedGate::T => "t",
            NamedGate::Tdg => "tdg",
        }
    }

    pub fn from_mnemonic(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|g| g.mnemonic() == s)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Gate<T: Real> {
    LocalUnitary {
        qubit: usize,
        matrix: Mat2<T>,
        /// Set when the gate came from a named mnemonic; used when rendering.
        name: Option<NamedGate>,
    },
    Cnot {
        control: usize,
        target: usize,
    },
}

impl<T: Real> Gate<T> {
    pub fn named(gate: NamedGate, qubit: usize) -> Self {
        Gate::LocalUnitary { qubit, matrix: gate.matrix(), name: Some(gate) }
    }

    /// Custom single-qubit unitary, checked at `tol`.
    pub fn unitary(qubit: usize, matrix: Mat2<T>, tol: f64) -> Result<Self> {
        let deviation = matrix.unitarity_deviation();
        if deviation > T::tol(tol) {
            return Err(Error::NonUnitary { deviation: deviation.as_f64() });
        }
        Ok(Gate::LocalUnitary { qubit, matrix, name: None })
    }

    pub fn cnot(control: usize, target: usize) -> Self {
        Gate::Cnot { control, target }
    }

    fn check(&self, n_qubits: usize) -> Result<()> {
        let in_range = |index: usize| {
            if index < n_qubits {
                Ok(())
            } else {
                Err(Error::QubitOutOfRange { index, n_qubits })
            }
        };
        match *self {
            Gate::LocalUnitary { qubit, .. } => in_range(qubit),
            Gate::Cnot { control, target } => {
                in_range(control)?;
                in_range(target)?;
                if control == target {
                    return Err(Error::ControlEqualsTarget(control));
                }
                Ok(())
            }
        }
    }
}

/// Ordered gate list over a fixed register. Gate order is execution order.
#[derive(Clone, Debug, PartialEq)]
pub struct Circuit<T: Real> {
    n_qubits: usize,
    gates: Vec<Gate<T>>,
}

impl<T: Real> Circuit<T> {
    pub fn new(n_qubits: usize, gates: Vec<Gate<T>>) -> Result<Self> {
        if n_qubits == 0 {
            return Err(Error::Syntax { line: 0, message: "register must have at least one qubit".into() });
        }
        for g in &gates {
            g.check(n_qubits)?;
        }
        Ok(Circuit { n_qubits, gates })
    }

    pub fn empty(n_qubits: usize) -> Result<Self> {
        Self::new(n_qubits, Vec::new())
    }

    /// H on qubit 0 followed by CNOT(0,1) and CNOT(0,2).
    pub fn ghz3() -> Self {
        Circuit {
            n_qubits: 3,
            gates: vec![Gate::named(NamedGate::H, 0), Gate::cnot(0, 1), Gate::cnot(0, 2)],
        }
    }

    pub fn push(&mut self, gate: Gate<T>) -> Result<&mut Self> {
        gate.check(self.n_qubits)?;
        self.gates.push(gate);
        Ok(self)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[Gate<T>] {
        &self.gates
    }

    pub fn cnot_count(&self) -> usize {
        self.gates.iter().filter(|g| matches!(g, Gate::Cnot { .. })).count()
    }

    /// Canonical text form; `parse_circuit` inverts it exactly.
    pub fn render(&self) -> String {
        let mut out = format!("qubits {}\n", self.n_qubits);
        for g in &self.gates {
            match g {
                Gate::LocalUnitary { qubit, name: Some(name), .. } => {
                    writeln!(out, "{} {}", name.mnemonic(), qubit).unwrap();
                }
                Gate::LocalUnitary { qubit, matrix, name: None } => {
                    write!(out, "u {qubit}").unwrap();
                    for row in &matrix.0 {
                        for z in row {
                            write!(out, " {:?} {:?}", z.re.as_f64(), z.im.as_f64()).unwrap();
                        }
                    }
                    out.push('\n');
                }
                Gate::Cnot { control, target } => {
                    writeln!(out, "cnot {control} {target}").unwrap();
                }
            }
        }
        out
    }
}

/// Parses the line-oriented circuit format. Gate order equals line order.
pub fn parse_circuit<T: Real>(text: &str) -> Result<Circuit<T>> {
    let mut n_qubits: Option<usize> = None;
    let mut gates = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let syntax = |message: String| Error::Syntax { line: line_no, message };
        let mut tokens = line.split_whitespace();
        let op = tokens.next().expect("non-empty line").to_ascii_lowercase();
        let args: Vec<&str> = tokens.collect();

        let parse_index = |s: &str| -> Result<usize> {
            s.parse::<usize>().map_err(|_| syntax(format!("`{s}` is not a qubit index")))
        };
        let expect_args = |count: usize| -> Result<()> {
            if args.len() == count {
                Ok(())
            } else {
                Err(syntax(format!("`{op}` takes {count} argument(s), found {}", args.len())))
            }
        };

        let Some(n) = n_qubits else {
            if op != "qubits" {
                return Err(Error::MissingHeader);
            }
            expect_args(1)?;
            let n = args[0]
                .parse::<usize>()
                .ok()
                .filter(|&n| n > 0)
                .ok_or_else(|| syntax(format!("`{}` is not a positive qubit count", args[0])))?;
            n_qubits = Some(n);
            continue;
        };

        let gate = match op.as_str() {
            "qubits" => return Err(syntax("duplicate `qubits` header".into())),
            "cnot" => {
                expect_args(2)?;
                Gate::cnot(parse_index(args[0])?, parse_index(args[1])?)
            }
            "u" => {
                expect_args(9)?;
                let q = parse_index(args[0])?;
                let mut vals = [0.0f64; 8];
                for (v, s) in vals.iter_mut().zip(&args[1..]) {
                    *v = s.parse::<f64>().map_err(|_| syntax(format!("`{s}` is not a number")))?;
                }
                let z = |k: usize| C::new(T::lit(vals[2 * k]), T::lit(vals[2 * k + 1]));
                let m = Mat2::new(z(0), z(1), z(2), z(3));
                Gate::unitary(q, m, USER_UNITARY_TOL)?
            }
            other => match NamedGate::from_mnemonic(other) {
                Some(g) => {
                    expect_args(1)?;
                    Gate::named(g, parse_index(args[0])?)
                }
                None => return Err(syntax(format!("unknown instruction `{other}`"))),
            },
        };
        gate.check(n)?;
        gates.push(gate);
    }

    let n = n_qubits.ok_or(Error::MissingHeader)?;
    Circuit::new(n, gates)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    pub fn matrix<T: Real>(self) -> Mat2<T> {
        match self {
            Pauli::I => Mat2::identity(),
            Pauli::X => Mat2::pauli_x(),
            Pauli::Y => Mat2::pauli_y(),
            Pauli::Z => Mat2::pauli_z(),
        }
    }

    pub fn letter(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    fn from_letter(ch: char) -> Option<Self> {
        match ch.to_ascii_uppercase() {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

/// Tensor product of single-qubit Paulis, one letter per qubit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliString(Vec<Pauli>);

impl PauliString {
    pub fn new(letters: Vec<Pauli>) -> Self {
        PauliString(letters)
    }

    pub fn letters(&self) -> &[Pauli] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&p| p == Pauli::I)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|p| f.write_char(p.letter()))
    }
}

/// Parses `n` Pauli letters, case-insensitive.
pub fn parse_pauli(text: &str, n: usize) -> Result<PauliString> {
    let text = text.trim();
    let letters = text
        .chars()
        .map(|ch| Pauli::from_letter(ch).ok_or_else(|| Error::InvalidPauli(format!("invalid letter `{ch}` in `{text}`"))))
        .collect::<Result<Vec<_>>>()?;
    if letters.len() != n {
        return Err(Error::InvalidPauli(format!("`{text}` has {} letters, register has {n} qubits", letters.len())));
    }
    Ok(PauliString(letters))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Plus,
    Minus,
}

impl Parity {
    pub fn sign(self) -> i32 {
        match self {
            Parity::Plus => 1,
            Parity::Minus => -1,
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Plus => "+1",
            Parity::Minus => "-1",
        })
    }
}

impl FromStr for Parity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+1" | "1" | "+" => Ok(Parity::Plus),
            "-1" | "-" => Ok(Parity::Minus),
            other => Err(Error::InvalidObservable(format!("parity `{other}` is not ±1"))),
        }
    }
}

/// A parity event: the product of the single-qubit outcomes of `pauli`
/// equals `parity`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Observable {
    pub pauli: PauliString,
    pub parity: Parity,
}

impl Observable {
    pub fn new(pauli: PauliString, parity: Parity) -> Result<Self> {
        if pauli.is_identity() {
            return Err(Error::InvalidPauli(format!("`{pauli}` has no non-identity letter")));
        }
        Ok(Observable { pauli, parity })
    }

    /// Parses `XXX=+1`; a bare `XXX` means parity +1.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let (p, parity) = match text.split_once('=') {
            Some((p, par)) => (p, par.parse()?),
            None => (text, Parity::Plus),
        };
        Self::new(parse_pauli(p, n)?, parity)
    }

    pub fn label(&self) -> String {
        format!("{}={}", self.pauli, self.parity)
    }
}

impl fmt::Display for Observable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}={}", self.pauli, self.parity)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Circ = Circuit<f64>;

    #[test]
    fn parses_ghz() {
        let c: Circ = parse_circuit("qubits 3\nh 0\ncnot 0 1\ncnot 0 2").unwrap();
        assert_eq!(c, Circ::ghz3());
        assert_eq!(c.cnot_count(), 2);
    }

    #[test]
    fn header_only_is_empty_circuit() {
        let c: Circ = parse_circuit("qubits 1").unwrap();
        assert_eq!(c.n_qubits(), 1);
        assert!(c.gates().is_empty());
        assert_eq!(c.cnot_count(), 0);
    }

    #[test]
    fn rejects_control_equal_target() {
        let err = parse_circuit::<f64>("qubits 2\ncnot 0 0").unwrap_err();
        assert_eq!(err, Error::ControlEqualsTarget(0));
    }

    #[test]
    fn rejects_missing_header() {
        assert_eq!(parse_circuit::<f64>("h 0").unwrap_err(), Error::MissingHeader);
        assert_eq!(parse_circuit::<f64>("# nothing\n\n").unwrap_err(), Error::MissingHeader);
    }

    #[test]
    fn reports_line_of_syntax_error() {
        let err = parse_circuit::<f64>("# c\nqubits 2\n\nh 0\nfoo 1").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 5, .. }), "{err:?}");
        let err = parse_circuit::<f64>("qubits 2\ncnot 0").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 2, .. }), "{err:?}");
    }

    #[test]
    fn rejects_out_of_range_index() {
        let err = parse_circuit::<f64>("qubits 2\nh 2").unwrap_err();
        assert_eq!(err, Error::QubitOutOfRange { index: 2, n_qubits: 2 });
    }

    #[test]
    fn custom_unitary_checked() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let ok = format!("qubits 1\nu 0 {s} 0 {s} 0 {s} 0 {} 0", -s);
        assert!(parse_circuit::<f64>(&ok).is_ok());
        // 1e-12 off is within user tolerance
        let near = format!("qubits 1\nu 0 {} 0 0 0 0 0 1 0", 1.0 + 1e-12);
        assert!(parse_circuit::<f64>(&near).is_ok());
        let bad = "qubits 1\nu 0 1 0 1 0 0 0 1 0";
        assert!(matches!(parse_circuit::<f64>(bad).unwrap_err(), Error::NonUnitary { .. }));
    }

    #[test]
    fn cnot_count_mixed() {
        let mut c = Circ::empty(3).unwrap();
        for k in 0..5 {
            c.push(Gate::cnot(k % 3, (k + 1) % 3)).unwrap();
        }
        for q in 0..3 {
            c.push(Gate::named(NamedGate::T, q)).unwrap();
        }
        assert_eq!(c.cnot_count(), 5);
    }

    #[test]
    fn pauli_parsing() {
        use Pauli::*;
        assert_eq!(parse_pauli("XXX", 3).unwrap().letters(), &[X, X, X]);
        assert_eq!(parse_pauli("xyy", 3).unwrap().letters(), &[X, Y, Y]);
        assert!(parse_pauli("XXZ", 2).is_err());
        assert!(parse_pauli("XQZ", 3).is_err());
        assert!(Observable::parse("III=+1", 3).is_err());
        let o = Observable::parse("YXY=-1", 3).unwrap();
        assert_eq!(o.parity, Parity::Minus);
        assert_eq!(o.label(), "YXY=-1");
    }

    #[test]
    fn render_round_trips_custom_matrix() {
        let m = Mat2::new(
            C::new(0.6, 0.0),
            C::new(0.0, 0.8),
            C::new(0.0, 0.8),
            C::new(0.6, 0.0),
        );
        let c = Circ::new(2, vec![Gate::unitary(1, m, 1e-12).unwrap(), Gate::cnot(1, 0)]).unwrap();
        assert_eq!(parse_circuit::<f64>(&c.render()).unwrap(), c);
    }
}
