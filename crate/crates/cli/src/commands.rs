use crate::cli::{CircuitArgs, CommonArgs, EnumerateArgs, Format, SampleArgs, VerifyArgs};
use crate::render::{csv_line, fmt12, fraction, num, object, table};
use negsim::analysis::ghz_table;
use negsim::exact::{parity_probability, pauli_expectation, run_exact};
use negsim::quasi::{enumerate, overhead_ratio, sample, EnumerateOptions};
use negsim::verify::{run_all, Tolerances};
use negsim::{parse_circuit, Circuit, Enumeration, Error, GhzReport, Observable, Parity, ProductState};
use serde_json::{json, Value};
use std::fmt;

pub const EXIT_USAGE: i32 = 1;
pub const EXIT_RESOURCE: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError { code: EXIT_USAGE, message: message.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::DimensionMismatch { .. }
            | Error::BudgetExceeded { .. }
            | Error::EntangledInput
            | Error::Overflow(_)
            | Error::ImaginaryResidue { .. }
            | Error::InvalidDensityMatrix(_) => EXIT_RESOURCE,
            _ => EXIT_USAGE,
        };
        let message = match &e {
            Error::BudgetExceeded { required, budget } => {
                format!("{e}; rerun with --budget {required} (or NEGSIM_BUDGET) to allow it (current {budget})")
            }
            _ => e.to_string(),
        };
        CliError { code, message }
    }
}

/// Rendered report plus the process exit code.
pub struct Report {
    pub text: String,
    pub exit: i32,
}

impl Report {
    fn ok(text: String) -> Self {
        Report { text, exit: 0 }
    }
}

struct Loaded {
    circuit: Circuit,
    observables: Vec<Observable>,
    input: ProductState,
}

fn load(args: &CircuitArgs) -> Result<Loaded, CliError> {
    let text = std::fs::read_to_string(&args.circuit)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", args.circuit.display())))?;
    let circuit: Circuit = parse_circuit(&text)?;
    let n = circuit.n_qubits();
    let observables = args.observables.iter().map(|o| Observable::parse(o, n)).collect::<Result<Vec<_>, _>>()?;
    let input = match &args.input {
        Some(labels) => {
            let s = ProductState::from_labels(labels)?;
            if s.n_qubits() != n {
                return Err(Error::DimensionMismatch { expected: n, found: s.n_qubits() }.into());
            }
            s
        }
        None => ProductState::zeros(n),
    };
    Ok(Loaded { circuit, observables, input })
}

/// `0`, `1/2`, `1` for exact halves, otherwise a decimal.
fn prob_cell(p: f64) -> String {
    match fraction(p, 2.0).as_str() {
        "0/2" | "-0/2" => "0".into(),
        "2/2" => "1".into(),
        "1/2" => "1/2".into(),
        _ => fmt12(p),
    }
}

pub fn cmd_exact(args: &CircuitArgs) -> Result<Report, CliError> {
    let l = load(args)?;
    let out = run_exact(&l.circuit, &l.input.to_state_vector())?;
    let mut rows = Vec::new();
    for obs in &l.observables {
        let p = parity_probability(&out, obs)?;
        let plus = parity_probability(&out, &Observable { parity: Parity::Plus, ..obs.clone() })?;
        let e = pauli_expectation(&out, &obs.pauli)?;
        rows.push((obs, p, plus, e));
    }
    let text = match args.common.format {
        Format::Json => {
            let list: Vec<Value> = rows
                .iter()
                .map(|(o, p, plus, e)| {
                    json!({
                        "observable": o.label(),
                        "probability": num(*p),
                        "p_plus": num(*plus),
                        "expectation": num(*e),
                    })
                })
                .collect();
            let v = json!({
                "n_qubits": l.circuit.n_qubits(),
                "n_cnots": l.circuit.cnot_count(),
                "observables": list,
            });
            to_json(&v)
        }
        Format::Csv => {
            let mut s = csv_line(&["observable", "probability", "p_plus", "expectation"].map(String::from));
            for (o, p, plus, e) in &rows {
                s.push_str(&csv_line(&[o.label(), fmt12(*p), fmt12(*plus), fmt12(*e)]));
            }
            s
        }
        Format::Pretty => {
            let header = ["observable", "p(parity)", "p(+1)", "<P>"].map(String::from);
            let body: Vec<Vec<String>> =
                rows.iter().map(|(o, p, plus, e)| vec![o.label(), fmt12(*p), fmt12(*plus), fmt12(*e)]).collect();
            format!(
                "exact state-vector simulation: {} qubits, {} CNOTs\n\n{}",
                l.circuit.n_qubits(),
                l.circuit.cnot_count(),
                table(&header, &body)
            )
        }
    };
    Ok(Report::ok(text))
}

fn enumeration_json(e: &Enumeration) -> Value {
    let labels: Vec<String> = e.observables.iter().map(Observable::label).collect();
    let sequences: Vec<Value> = e
        .rows
        .iter()
        .map(|r| {
            json!({
                "label": r.choice.label(),
                "sign": r.sign,
                "conditionals": object(labels.iter().cloned().zip(r.conditionals.iter().map(|&p| num(p)))),
            })
        })
        .collect();
    json!({
        "n_qubits": e.n_qubits,
        "n_cnots": e.n_cnots,
        "sequences": sequences,
        "totals": object(labels.iter().cloned().zip(e.totals.iter().map(|&p| num(p)))),
        "amplification": num(e.amplification),
    })
}

fn sequence_table_csv(labels: &[String], rows: impl Iterator<Item = (String, i32, Vec<f64>)>, totals: &[f64]) -> String {
    let mut header = vec!["label".to_string(), "sign".to_string()];
    header.extend(labels.iter().cloned());
    let mut s = csv_line(&header);
    for (label, sign, cond) in rows {
        let mut cells = vec![label, sign.to_string()];
        cells.extend(cond.iter().map(|&p| fmt12(p)));
        s.push_str(&csv_line(&cells));
    }
    let mut cells = vec!["total".to_string(), String::new()];
    cells.extend(totals.iter().map(|&p| fmt12(p)));
    s.push_str(&csv_line(&cells));
    s
}

fn sequence_table_pretty(labels: &[String], rows: impl Iterator<Item = (String, i32, Vec<f64>)>, totals: &[f64]) -> String {
    let mut header = vec!["sequence".to_string(), "p(i)".to_string()];
    header.extend(labels.iter().cloned());
    let mut body: Vec<Vec<String>> = rows
        .map(|(label, sign, cond)| {
            let mut cells = vec![label, format!("{sign:+}")];
            cells.extend(cond.iter().map(|&p| prob_cell(p)));
            cells
        })
        .collect();
    let mut total = vec!["p(m)".to_string(), String::new()];
    total.extend(totals.iter().map(|&p| fmt12(p)));
    body.push(total);
    table(&header, &body)
}

pub fn cmd_enumerate(args: &EnumerateArgs) -> Result<Report, CliError> {
    let l = load(&args.circuit)?;
    let e = enumerate(&l.circuit, &l.input, &l.observables, EnumerateOptions { budget: args.budget })?;
    let labels: Vec<String> = e.observables.iter().map(Observable::label).collect();
    let rows = || e.rows.iter().map(|r| (r.choice.label(), r.sign, r.conditionals.clone()));
    let text = match args.circuit.common.format {
        Format::Json => to_json(&enumeration_json(&e)),
        Format::Csv => sequence_table_csv(&labels, rows(), &e.totals),
        Format::Pretty => format!(
            "signed enumeration: {} qubits, {} CNOTs, {} sequences, amplification {}\n\n{}",
            e.n_qubits,
            e.n_cnots,
            e.rows.len(),
            e.amplification,
            sequence_table_pretty(&labels, rows(), &e.totals)
        ),
    };
    Ok(Report::ok(text))
}

pub fn cmd_sample(args: &SampleArgs) -> Result<Report, CliError> {
    let l = load(&args.circuit)?;
    let estimates = sample(&l.circuit, &l.input, &l.observables, args.shots, args.seed)?;
    let n_cnots = l.circuit.cnot_count();
    let overhead = overhead_ratio(n_cnots);
    let text = match args.circuit.common.format {
        Format::Json => {
            let list: Vec<Value> = l
                .observables
                .iter()
                .zip(&estimates)
                .map(|(o, q)| {
                    json!({
                        "observable": o.label(),
                        "p_pos": num(q.p_pos),
                        "p_neg": num(q.p_neg),
                        "amplification": num(q.amplification),
                        "estimate": num(q.estimate),
                        "std_error": num(q.std_error),
                        "shots": q.shots,
                        "seed": args.seed,
                    })
                })
                .collect();
            to_json(&json!({
                "n_qubits": l.circuit.n_qubits(),
                "n_cnots": n_cnots,
                "shots": args.shots,
                "seed": args.seed,
                "overhead": num(overhead),
                "estimates": list,
            }))
        }
        Format::Csv => {
            let mut s = csv_line(&["observable", "p_pos", "p_neg", "amplification", "estimate", "std_error", "shots", "seed"].map(String::from));
            for (o, q) in l.observables.iter().zip(&estimates) {
                s.push_str(&csv_line(&[
                    o.label(),
                    fmt12(q.p_pos),
                    fmt12(q.p_neg),
                    fmt12(q.amplification),
                    fmt12(q.estimate),
                    fmt12(q.std_error),
                    q.shots.to_string(),
                    args.seed.to_string(),
                ]));
            }
            s
        }
        Format::Pretty => {
            let header = ["observable", "p_pos", "p_neg", "amplification", "estimate", "std_error"].map(String::from);
            let body: Vec<Vec<String>> = l
                .observables
                .iter()
                .zip(&estimates)
                .map(|(o, q)| {
                    vec![o.label(), fmt12(q.p_pos), fmt12(q.p_neg), fmt12(q.amplification), fmt12(q.estimate), fmt12(q.std_error)]
                })
                .collect();
            format!(
                "signed Monte Carlo: {} qubits, {} CNOTs, {} shots, seed {}\noverhead: 3^{n_cnots} = {overhead} trials per quantum trial\n\n{}",
                l.circuit.n_qubits(),
                n_cnots,
                args.shots,
                args.seed,
                table(&header, &body)
            )
        }
    };
    Ok(Report::ok(text))
}

fn ghz_json(r: &GhzReport) -> Value {
    let labels: Vec<String> = r.observables.iter().map(Observable::label).collect();
    let sequences: Vec<Value> = r
        .rows
        .iter()
        .map(|row| {
            json!({
                "label": row.label,
                "sign": row.sign,
                "conditionals": object(labels.iter().cloned().zip(row.conditionals.iter().map(|&p| num(p)))),
            })
        })
        .collect();
    let classical: Vec<Value> = r
        .classical_frequencies
        .iter()
        .map(|c| {
            json!({
                "observable": c.observable.label(),
                "p_pos": num(c.p_pos),
                "p_neg": num(c.p_neg),
                "amplification": num(c.amplification),
                "reconstruction": num(c.reconstruction),
            })
        })
        .collect();
    json!({
        "n_qubits": 3,
        "n_cnots": 2,
        "sequences": sequences,
        "totals": object(labels.iter().cloned().zip(r.recombined.iter().map(|&p| num(p)))),
        "amplification": num(9.0),
        "classical": classical,
    })
}

pub fn cmd_ghz_table(common: &CommonArgs) -> Result<Report, CliError> {
    let r: GhzReport = ghz_table();
    let labels: Vec<String> = r.observables.iter().map(Observable::label).collect();
    let rows = || r.rows.iter().map(|row| (row.label.clone(), row.sign, row.conditionals.to_vec()));
    let text = match common.format {
        Format::Json => to_json(&ghz_json(&r)),
        Format::Csv => sequence_table_csv(&labels, rows(), &r.recombined),
        Format::Pretty => {
            let header = ["observable", "p_pos", "p_neg", "amplification", "amplification·(p_pos−p_neg)"].map(String::from);
            let body: Vec<Vec<String>> = r
                .classical_frequencies
                .iter()
                .map(|c| {
                    vec![
                        c.observable.label(),
                        fraction(c.p_pos, c.amplification),
                        fraction(c.p_neg, c.amplification),
                        fmt12(c.amplification),
                        fmt12(c.reconstruction),
                    ]
                })
                .collect();
            format!(
                "GHZ circuit: h 0; cnot 0 1; cnot 0 2 on |000>\n\nconditional probabilities p(m|i)\n\n{}\nclassical frequencies (each sequence run with weight 1/9)\n\n{}",
                sequence_table_pretty(&labels, rows(), &r.recombined),
                table(&header, &body)
            )
        }
    };
    Ok(Report::ok(text))
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<Report, CliError> {
    let mut tol = Tolerances::default();
    if let Some(t) = args.tol {
        if t.is_nan() || t < 0.0 {
            return Err(CliError::usage("--tol must be a non-negative number"));
        }
        tol.identity = t;
    }
    let checks = run_all(&tol);
    let passed = checks.iter().all(|c| c.passed);
    let max_residual = checks.iter().map(|c| c.residual).fold(0.0, f64::max);
    let text = match args.common.format {
        Format::Json => {
            let list: Vec<Value> = checks
                .iter()
                .map(|c| json!({"name": c.name, "passed": c.passed, "residual": num(c.residual), "detail": c.detail}))
                .collect();
            to_json(&json!({"passed": passed, "max_residual": num(max_residual), "checks": list}))
        }
        Format::Csv => {
            let mut s = csv_line(&["check", "passed", "residual", "detail"].map(String::from));
            for c in &checks {
                s.push_str(&csv_line(&[c.name.to_string(), c.passed.to_string(), format!("{:.3e}", c.residual), c.detail.clone()]));
            }
            s
        }
        Format::Pretty => {
            let mut s = String::new();
            for c in &checks {
                s.push_str(&format!(
                    "[{}] {:<26} residual {:>9.3e}  {}\n",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    c.residual,
                    c.detail
                ));
            }
            s.push_str(&format!(
                "\n{} of {} checks passed; max residual {max_residual:.3e}\n",
                checks.iter().filter(|c| c.passed).count(),
                checks.len()
            ));
            s
        }
    };
    Ok(Report { text, exit: if passed { 0 } else { EXIT_VERIFY } })
}

fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}
