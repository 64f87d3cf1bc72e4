use std::fmt::Write as _;
use std::time::Instant;

use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

use quon_core::energy::{
    check_remark1, coeffs_via_explicit, coeffs_via_product, greenberg_limit_check, r_p_closed,
    r_p_defining, XGroupPolynomial,
};
use quon_core::fock::eigen_suite;
use quon_core::linalg::{ExactField, Matrix};
use quon_core::scalar::{rational_text, QRational, Scalar};
use quon_core::zagier::{
    check_integrality, matrix_json, zagier_formula, zagier_formula_at, ZagierMatrix,
};
use quon_core::Error;

use crate::config::{Check, MethodArg, QMode};

/// Random states per eigenvalue check.
pub const EIGEN_DRAWS: usize = 20;
/// Random superpositions per Greenberg check.
pub const GREENBERG_STATES: usize = 10;

/// What a command produced: pass/fail, a JSON result and its text rendering.
pub struct Outcome {
    pub passed: bool,
    pub result: Value,
    pub text: String,
}

impl Outcome {
    fn pass(result: Value, text: String) -> Self {
        Outcome {
            passed: true,
            result,
            text,
        }
    }
}

/// Run `$body` with `$q` bound to the symbolic `q` or to the rational value.
macro_rules! with_q {
    ($mode:expr, |$q:ident| $body:expr) => {
        match $mode {
            QMode::Symbolic => {
                let $q = &QRational::q();
                $body
            }
            QMode::Rational(v) => {
                let $q: &BigRational = v;
                $body
            }
        }
    };
}

fn to_json(x: &impl Serialize) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn perm_label(p: &quon_core::permutation::Permutation) -> String {
    if p.is_identity() {
        "e".into()
    } else {
        p.to_string()
    }
}

fn matrix_texts<S: Scalar>(m: &Matrix<S>) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| m.get(i, j).canonical_text())
                .collect()
        })
        .collect()
}

fn write_rows(text: &mut String, rows: &[Vec<String>]) {
    for row in rows {
        writeln!(text, "{}", row.join(", ")).unwrap();
    }
}

pub fn matrix(n: usize, q: &QMode, inverse: bool) -> Result<Outcome, Error> {
    let m = ZagierMatrix::build(n)?;
    let order: Vec<String> = m.perms().iter().map(|p| p.to_string()).collect();
    let (entries, inv) = with_q!(q, |q| {
        let entries = matrix_texts(&m.specialize(q));
        let inv = if inverse {
            Some(matrix_texts(&m.invert(q)?))
        } else {
            None
        };
        (entries, inv)
    });
    let mut text = format!(
        "A_{n}({q}), rows and columns in lexicographic order: {}\n",
        order.join(" ")
    );
    write_rows(&mut text, &entries);
    let mut result = json!({ "matrix": matrix_json(n, &entries) });
    if let Some(inv) = inv {
        text.push_str("inverse:\n");
        write_rows(&mut text, &inv);
        result["inverse"] = matrix_json(n, &inv);
    }
    Ok(Outcome::pass(result, text))
}

fn coeff_lines<S: Scalar>(c: &XGroupPolynomial<S>) -> String {
    let mut text = String::new();
    for ((p, d), v) in c.terms() {
        writeln!(text, "c_{}({}) = {v}", d + 1, perm_label(p)).unwrap();
    }
    text
}

pub fn coeffs(n: usize, q: &QMode, method: MethodArg) -> Result<Outcome, Error> {
    with_q!(q, |q| {
        let (primary, other) = match method {
            MethodArg::Product => (coeffs_via_product(n, q)?, None),
            MethodArg::Explicit => (coeffs_via_explicit(n, q)?, None),
            MethodArg::Both => (coeffs_via_product(n, q)?, Some(coeffs_via_explicit(n, q)?)),
        };
        let mut text = coeff_lines(&primary);
        let method_name = match method {
            MethodArg::Product => "product",
            MethodArg::Explicit => "explicit",
            MethodArg::Both => "both",
        };
        let mut result = json!({ "method": method_name, "coefficients": to_json(&primary) });
        let mut passed = true;
        if let Some(other) = other {
            passed = primary == other;
            writeln!(text, "product and explicit formulas agree: {passed}").unwrap();
            result["explicit"] = to_json(&other);
            result["match"] = json!(passed);
        }
        Ok(Outcome {
            passed,
            result,
            text,
        })
    })
}

pub fn verify(check: Check, n: usize, q: &QMode, seed: u64) -> Result<Outcome, Error> {
    match check {
        Check::Det => verify_det(n, q),
        Check::Eigen => with_q!(q, |q| {
            let rep = eigen_suite(n, q, seed, EIGEN_DRAWS)?;
            let mut text = String::new();
            for d in &rep.draws {
                writeln!(
                    text,
                    "{:?} eigenvalue {}: {}",
                    d.modes,
                    d.eigenvalue,
                    if d.holds { "ok" } else { "FAILED" }
                )
                .unwrap();
                if let Some(r) = &d.residual {
                    writeln!(text, "  residual: {}", r.replace('\n', " + ")).unwrap();
                }
            }
            Ok(Outcome {
                passed: rep.holds,
                result: to_json(&rep),
                text,
            })
        }),
        Check::Remark1 => with_q!(q, |q| {
            let rep = check_remark1(&coeffs_via_product(n, q)?, q);
            let mut text = format!(
                "{} pairs checked, {} violations\n",
                rep.pairs_checked,
                rep.violations.len()
            );
            for v in &rep.violations {
                writeln!(
                    text,
                    "c_{i}({p}) = {} but c_π({i})({p}) = {}",
                    v.c_i,
                    v.c_pi_i,
                    i = v.i,
                    p = v.perm
                )
                .unwrap();
            }
            Ok(Outcome {
                passed: rep.holds,
                result: to_json(&rep),
                text,
            })
        }),
        Check::Greenberg => {
            let rep = greenberg_limit_check(n, seed, GREENBERG_STATES)?;
            let mut text = format!(
                "coefficients reduce to the Kronecker delta: {}\n{} states checked, {} violations\n",
                rep.coefficients_reduce,
                rep.states_checked,
                rep.violations.len()
            );
            for v in &rep.violations {
                writeln!(text, "{v}").unwrap();
            }
            Ok(Outcome {
                passed: rep.holds,
                result: to_json(&rep),
                text,
            })
        }
        Check::Integrality => {
            let rep = check_integrality(n)?;
            let mut text = format!(
                "{} entries of Δ_{n}·A_{n}⁻¹ checked, {} not integral\n",
                rep.entries_checked,
                rep.violations.len()
            );
            for v in &rep.violations {
                writeln!(text, "({}, {}): {}", v.row, v.col, v.value).unwrap();
            }
            Ok(Outcome {
                passed: rep.holds,
                result: to_json(&rep),
                text,
            })
        }
        Check::Rp => with_q!(q, |q| {
            let closed = r_p_closed(n, q)?;
            let product = r_p_defining(q, &coeffs_via_product(n, q)?)? == closed;
            let explicit = r_p_defining(q, &coeffs_via_explicit(n, q)?)? == closed;
            let mut text = String::from("closed form:\n");
            for ((p, d), v) in closed.terms() {
                writeln!(text, "X^{d} {}: {v}", perm_label(p)).unwrap();
            }
            writeln!(
                text,
                "defining form (product coefficients) matches: {product}"
            )
            .unwrap();
            writeln!(
                text,
                "defining form (explicit coefficients) matches: {explicit}"
            )
            .unwrap();
            Ok(Outcome {
                passed: product && explicit,
                result: json!({
                    "closed": to_json(&closed),
                    "product_match": product,
                    "explicit_match": explicit,
                }),
                text,
            })
        }),
    }
}

fn verify_det(n: usize, q: &QMode) -> Result<Outcome, Error> {
    let m = ZagierMatrix::build(n)?;
    let (det, formula) = match q {
        QMode::Symbolic => (m.determinant().to_string(), zagier_formula(n).to_string()),
        QMode::Rational(v) => (
            rational_text(&m.determinant_at(v)),
            rational_text(&zagier_formula_at(n, v)),
        ),
    };
    let passed = det == formula;
    let text = format!("determinant: {det}\nformula:     {formula}\nmatch: {passed}\n");
    Ok(Outcome {
        passed,
        result: json!({ "determinant": det, "formula": formula, "match": passed }),
        text,
    })
}

#[derive(Serialize)]
struct BenchRow {
    n: usize,
    mode: String,
    step: &'static str,
    seconds: f64,
    /// Nonzero terms (polynomial terms or matrix entries) in the result.
    terms: usize,
}

/// Symbolic steps are skipped past these sizes; see the README for timings.
const BENCH_SYMBOLIC_DET: usize = 5;
const BENCH_SYMBOLIC_SOLVE: usize = 4;
const BENCH_RATIONAL_SOLVE: usize = 5;

fn timed<T>(f: impl FnOnce() -> Result<T, Error>) -> Result<(T, f64), Error> {
    let t = Instant::now();
    let v = f()?;
    Ok((v, t.elapsed().as_secs_f64()))
}

fn nonzero<S: Scalar>(m: &Matrix<S>) -> usize {
    (0..m.rows())
        .map(|i| (0..m.cols()).filter(|&j| !m.get(i, j).is_zero()).count())
        .sum()
}

fn bench_solves<S: ExactField>(
    rows: &mut Vec<BenchRow>,
    m: &ZagierMatrix,
    q: &S,
    label: &str,
) -> Result<(), Error> {
    let n = m.n();
    let (inv, secs) = timed(|| m.invert(q))?;
    rows.push(BenchRow {
        n,
        mode: label.into(),
        step: "invert",
        seconds: secs,
        terms: nonzero(&inv),
    });
    let (c, secs) = timed(|| coeffs_via_product(n, q))?;
    rows.push(BenchRow {
        n,
        mode: label.into(),
        step: "coeffs",
        seconds: secs,
        terms: c.len(),
    });
    Ok(())
}

pub fn bench(max: usize, q: &QMode) -> Result<Outcome, Error> {
    let q0 = match q {
        QMode::Rational(v) => v.clone(),
        QMode::Symbolic => BigRational::new(1.into(), 3.into()),
    };
    let spec = format!("q={}", rational_text(&q0));
    let mut rows = Vec::new();
    for n in 2..=max {
        let (m, secs) = timed(|| ZagierMatrix::build(n))?;
        rows.push(BenchRow {
            n,
            mode: "exponents".into(),
            step: "build",
            seconds: secs,
            terms: m.size() * m.size(),
        });
        if n <= BENCH_SYMBOLIC_DET {
            let (d, secs) = timed(|| Ok(m.determinant()))?;
            let terms = d.coeffs().iter().filter(|c| **c != 0.into()).count();
            rows.push(BenchRow {
                n,
                mode: "symbolic".into(),
                step: "det",
                seconds: secs,
                terms,
            });
        }
        if n <= BENCH_SYMBOLIC_SOLVE {
            bench_solves(&mut rows, &m, &QRational::q(), "symbolic")?;
        }
        let (_, secs) = timed(|| Ok(m.determinant_at(&q0)))?;
        rows.push(BenchRow {
            n,
            mode: spec.clone(),
            step: "det",
            seconds: secs,
            terms: 1,
        });
        if n <= BENCH_RATIONAL_SOLVE {
            bench_solves(&mut rows, &m, &q0, &spec)?;
        }
    }
    let mut text = format!(
        "{:>2}  {:<10}  {:<7}  {:>10}  {:>8}\n",
        "n", "mode", "step", "seconds", "terms"
    );
    for r in &rows {
        writeln!(
            text,
            "{:>2}  {:<10}  {:<7}  {:>10.4}  {:>8}",
            r.n, r.mode, r.step, r.seconds, r.terms
        )
        .unwrap();
    }
    Ok(Outcome::pass(json!({ "rows": to_json(&rows) }), text))
}
