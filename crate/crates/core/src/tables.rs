//! Known infinite families of divisible, relative and regular partial
//! difference sets, with the frame angles their harmonic frames carry.
//!
//! Each row is instantiated at concrete parameters, the parameter tuple is
//! fed to the matching predictor, and the predicted angle pair is compared
//! with the row's own closed form. Existence hypotheses on external designs
//! are taken as given; only arithmetic conditions are checked.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::number_theory::{is_prime, prime_power, factorize};
use crate::predictions::{dds_angles, pds_angles, rds_angles, AnglePrediction, PredictionClass};
use crate::tolerance;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TableId {
    Divisible = 2,
    Relative = 3,
    Partial = 4,
}

impl TableId {
    pub fn from_number(t: u8) -> Result<Self> {
        match t {
            2 => Ok(TableId::Divisible),
            3 => Ok(TableId::Relative),
            4 => Ok(TableId::Partial),
            _ => Err(Error::InvalidParameters(format!("no table {t}; tables are 2, 3, 4"))),
        }
    }

    pub fn number(self) -> u8 {
        self as u8
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub table: TableId,
    pub row: u8,
    pub class: PredictionClass,
    pub conditions: &'static str,
    pub parameters: &'static str,
    pub alpha1: &'static str,
    pub alpha2: &'static str,
    pub variables: &'static [&'static str],
    pub samples: &'static [&'static [i64]],
}

impl TableRow {
    pub fn id(&self) -> String {
        format!("{}.{}", self.table.number(), self.row)
    }

    pub fn sample_map(&self, values: &[i64]) -> BTreeMap<String, i64> {
        self.variables.iter().map(|v| v.to_string()).zip(values.iter().copied()).collect()
    }
}

const DDS: PredictionClass = PredictionClass::Divisible;
const RDS: PredictionClass = PredictionClass::Relative;
const PDS: PredictionClass = PredictionClass::Partial;

pub static ROWS: &[TableRow] = &[
    TableRow { table: TableId::Divisible, row: 1, class: DDS,
        conditions: "p a Mersenne prime",
        parameters: "(p^2(p+1), p(p+1), p^2, p, p+1)",
        alpha1: "0", alpha2: "1/(p+1)",
        variables: &["p"], samples: &[&[3], &[7]] },
    TableRow { table: TableId::Divisible, row: 2, class: DDS,
        conditions: "p a Mersenne prime",
        parameters: "(p^2(p+1), p(2p-1), p^2, p(p-1), 3(p-1))",
        alpha1: "(p-2)/(2p-1)", alpha2: "1/(2p-1)",
        variables: &["p"], samples: &[&[7], &[31]] },
    TableRow { table: TableId::Divisible, row: 3, class: DDS,
        conditions: "a > 1 odd",
        parameters: "(4a, a+2, a, a-2, 2)",
        alpha1: "(a-2)/(a+2)", alpha2: "2/(a+2)",
        variables: &["a"], samples: &[&[3], &[5], &[7]] },
    TableRow { table: TableId::Divisible, row: 4, class: DDS,
        conditions: "q a prime power, q = 1 mod 4",
        parameters: "(2q, q, 2, q-1, (q-1)/2)",
        alpha1: "1/sqrt(q)", alpha2: "1/q",
        variables: &["q"], samples: &[&[5], &[9], &[13]] },
    TableRow { table: TableId::Divisible, row: 5, class: DDS,
        conditions: "a >= 1; delta = 3^(2a) - 2*3^a",
        parameters: "(4*3^(2a), 2(3^(2a) - 3^a), 3^(2a), delta, delta+1)",
        alpha1: "0", alpha2: "1/(2(3^a - 1))",
        variables: &["a"], samples: &[&[1], &[2]] },
    TableRow { table: TableId::Divisible, row: 6, class: DDS,
        conditions: "Hadamard difference set of order 4u^2 and a (w, v, v(v-1)/(w-1)) difference set assumed; delta = 2wu^2 + wu - 2uv, eps = 2wu + w - 2v",
        parameters: "(4wu^2, delta, w, delta - 4u^2 v + 4u^2 v(v-1)/(w-1), delta - wu^2)",
        alpha1: "|w-2v|/eps", alpha2: "sqrt(4v(w-v)/(w-1))/eps",
        variables: &["u", "v", "w"], samples: &[&[1, 3, 7], &[1, 4, 7], &[2, 3, 7]] },
    TableRow { table: TableId::Divisible, row: 7, class: DDS,
        conditions: "q a prime power, 1 <= a <= b, elementary abelian subgroup assumed; beta = q^(2b-a-1), delta = (q^(a-1)-1)/(q-1), eps = (q^a-1)/(q-1)",
        parameters: "(eps q^(2b-a), eps beta, q^a, delta beta, eps beta / q)",
        alpha1: "0", alpha2: "q^(a-b)/eps",
        variables: &["q", "a", "b"], samples: &[&[2, 2, 3], &[3, 2, 2], &[3, 1, 2]] },
    TableRow { table: TableId::Relative, row: 1, class: RDS,
        conditions: "p prime, 1 <= a <= b",
        parameters: "(p^(a+b), p^b, p^a, p^(b-a))",
        alpha1: "0", alpha2: "p^(-b/2)",
        variables: &["p", "a", "b"], samples: &[&[2, 1, 1], &[3, 1, 2], &[2, 2, 3]] },
    TableRow { table: TableId::Relative, row: 2, class: RDS,
        conditions: "Hadamard difference set of order 4u^2 assumed",
        parameters: "(8u^2, 4u^2, 2, 2u^2)",
        alpha1: "0", alpha2: "1/(2u)",
        variables: &["u"], samples: &[&[1], &[2]] },
    TableRow { table: TableId::Relative, row: 3, class: RDS,
        conditions: "Hadamard difference set of order 4u^2 assumed",
        parameters: "(16u^2, 8u^2, 2, 4u^2)",
        alpha1: "0", alpha2: "sqrt(2)/(4u)",
        variables: &["u"], samples: &[&[1], &[2]] },
    TableRow { table: TableId::Relative, row: 4, class: RDS,
        conditions: "q a prime power, a >= 1, d | q-1",
        parameters: "((q^(a+1)-1)/d, q^a, (q-1)/d, d q^(a-1))",
        alpha1: "q^(-(a+1)/2)", alpha2: "q^(-a/2)",
        variables: &["q", "a", "d"], samples: &[&[3, 1, 1], &[5, 1, 2], &[4, 2, 1]] },
    TableRow { table: TableId::Relative, row: 5, class: RDS,
        conditions: "q a prime power, q and a even; delta = (q-1)/2",
        parameters: "((q^(a+1)-1)/delta, q^a, 2, delta q^(a-1))",
        alpha1: "q^(-(a+1)/2)", alpha2: "q^(-a/2)",
        variables: &["q", "a"], samples: &[&[4, 2], &[16, 2]] },
    TableRow { table: TableId::Partial, row: 1, class: PDS,
        conditions: "q a prime power, q = 1 mod 4",
        parameters: "(q, (q-1)/2, (q-5)/4, (q-1)/4)",
        alpha1: "1/(sqrt(q)+1)", alpha2: "1/(sqrt(q)-1)",
        variables: &["q"], samples: &[&[5], &[9], &[13], &[17], &[25]] },
    TableRow { table: TableId::Partial, row: 2, class: PDS,
        conditions: "a > 1",
        parameters: "(a^2, 2(a-1), a-2, 2)",
        alpha1: "(a-2)/(2(a-1))", alpha2: "1/(a-1)",
        variables: &["a"], samples: &[&[3], &[5], &[6]] },
    TableRow { table: TableId::Partial, row: 3, class: PDS,
        conditions: "a > 1",
        parameters: "(a^2, 3(a-1), a, 6)",
        alpha1: "(a-3)/(3(a-1))", alpha2: "1/(a-1)",
        variables: &["a"], samples: &[&[3], &[4], &[5]] },
    TableRow { table: TableId::Partial, row: 4, class: PDS,
        conditions: "c = p_1^a_1 ... p_v^a_v with distinct primes, b <= min_j (p_j^a_j + 1)",
        parameters: "(c^2, b(c-1), c + b^2 - 3b, b^2 - b)",
        alpha1: "|c-b|/(b(c-1))", alpha2: "1/(c-1)",
        variables: &["c", "b"], samples: &[&[5, 3], &[9, 4], &[12, 3]] },
    TableRow { table: TableId::Partial, row: 5, class: PDS,
        conditions: "p an odd prime, a >= 1; delta = 9p^(4a)",
        parameters: "(delta, (delta-1)/2, (delta-5)/4, (delta-1)/4)",
        alpha1: "1/(sqrt(delta)+1)", alpha2: "1/(sqrt(delta)-1)",
        variables: &["p", "a"], samples: &[&[3, 1], &[5, 1]] },
    TableRow { table: TableId::Partial, row: 6, class: PDS,
        conditions: "p an odd prime, a >= 1; delta = 3p^(2a), eps = (delta-3)/2",
        parameters: "(delta^2, eps(delta+1), -delta + eps^2 + 3eps, eps^2 + eps)",
        alpha1: "1/(delta+1)", alpha2: "(delta-eps)/(eps(delta+1))",
        variables: &["p", "a"], samples: &[&[3, 1], &[5, 1]] },
    TableRow { table: TableId::Partial, row: 7, class: PDS,
        conditions: "a >= 1; beta = 2^(2a-1) - 2^(a-1), delta = 2^(a-1) - 1, eps = 2^a - 1",
        parameters: "(2^(3a), beta eps, 2^(a-1) + beta(delta-1), beta delta)",
        alpha1: "eps^(-2)", alpha2: "eps^(-1)",
        variables: &["a"], samples: &[&[2], &[3]] },
    TableRow { table: TableId::Partial, row: 8, class: PDS,
        conditions: "a > 1 odd; delta = 4^(a-1) - 1, eps = 4^(a-1)",
        parameters: "(4^(2a), (4^a+1) delta, eps^2 - 3eps - 2, delta eps)",
        alpha1: "1/(4^a+1)", alpha2: "(3eps+1)/(delta(4^a+1))",
        variables: &["a"], samples: &[&[3], &[5]] },
];

pub fn rows() -> &'static [TableRow] {
    ROWS
}

pub fn find_row(table: u8, row: u8) -> Result<&'static TableRow> {
    let id = TableId::from_number(table)?;
    ROWS.iter()
        .find(|r| r.table == id && r.row == row)
        .ok_or_else(|| Error::InvalidParameters(format!("table {table} has no row {row}")))
}

/// Instantiated `(n, m, l, lambda, mu)`; `l` is unused for partial sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowParameters {
    pub n: u64,
    pub m: u64,
    pub l: u64,
    pub lambda: u64,
    pub mu: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Passed,
    Failed,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RowCheck {
    pub table: u8,
    pub row: u8,
    pub sample: BTreeMap<String, i64>,
    pub status: RowStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parameters: Option<RowParameters>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub row_angles: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub predicted: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_deviation: Option<f64>,
}

impl RowCheck {
    pub fn passed(&self) -> bool {
        self.status == RowStatus::Passed
    }
}

/// Flat view of a check, one CSV line per instantiation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableRecord {
    pub table: u8,
    pub row: u8,
    pub conditions: String,
    pub parameters: String,
    pub alpha1_formula: String,
    pub alpha2_formula: String,
    pub sample: String,
    pub n: Option<u64>,
    pub m: Option<u64>,
    pub l: Option<u64>,
    pub lambda: Option<u64>,
    pub mu: Option<u64>,
    pub alpha1: Option<f64>,
    pub alpha2: Option<f64>,
    pub max_deviation: Option<f64>,
    pub status: RowStatus,
    pub reason: Option<String>,
}

impl TableRecord {
    pub fn new(row: &TableRow, check: &RowCheck) -> Self {
        let sample = check
            .sample
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";");
        let p = check.parameters;
        TableRecord {
            table: row.table.number(),
            row: row.row,
            conditions: row.conditions.into(),
            parameters: row.parameters.into(),
            alpha1_formula: row.alpha1.into(),
            alpha2_formula: row.alpha2.into(),
            sample,
            n: p.map(|p| p.n),
            m: p.map(|p| p.m),
            l: p.filter(|_| row.class != PredictionClass::Partial).map(|p| p.l),
            lambda: p.filter(|_| row.class != PredictionClass::Relative).map(|p| p.lambda),
            mu: p.map(|p| p.mu),
            alpha1: check.row_angles.map(|a| a[0]),
            alpha2: check.row_angles.map(|a| a[1]),
            max_deviation: check.max_deviation,
            status: check.status,
            reason: check.reason.clone(),
        }
    }
}

type Skip = String;

fn pow(b: i128, e: i128) -> std::result::Result<i128, Skip> {
    if e < 0 {
        return Err(format!("negative exponent {e}"));
    }
    let e = u32::try_from(e).map_err(|_| format!("exponent {e} too large"))?;
    b.checked_pow(e).ok_or_else(|| format!("{b}^{e} overflows"))
}

fn div(a: i128, b: i128) -> std::result::Result<i128, Skip> {
    if b == 0 || a % b != 0 {
        return Err(format!("{a}/{b} is not an integer"));
    }
    Ok(a / b)
}

fn cond(ok: bool, reason: impl FnOnce() -> String) -> std::result::Result<(), Skip> {
    if ok {
        Ok(())
    } else {
        Err(reason())
    }
}

fn natural(name: &str, v: i128) -> std::result::Result<(), Skip> {
    cond(v >= 1, || format!("{name} = {v} is not a positive integer"))
}

fn prime(p: i128) -> std::result::Result<(), Skip> {
    cond(p > 1 && is_prime(p as u64), || format!("p = {p} is not prime"))
}

fn mersenne(p: i128) -> std::result::Result<(), Skip> {
    prime(p)?;
    cond((p + 1) & p == 0, || format!("p = {p} is not a Mersenne prime"))
}

fn prime_power_q(q: i128) -> std::result::Result<(), Skip> {
    cond(q > 1 && prime_power(q as u64).is_some(), || format!("q = {q} is not a prime power"))
}

struct Instance {
    params: [i128; 5],
    alphas: [f64; 2],
}

fn instantiate(row: &TableRow, s: &BTreeMap<String, i64>) -> Result<std::result::Result<Instance, Skip>> {
    let mut vals = Vec::with_capacity(row.variables.len());
    for v in row.variables {
        let x = s.get(*v).ok_or_else(|| {
            Error::InvalidParameters(format!("row {} needs variable `{v}`", row.id()))
        })?;
        vals.push(*x as i128);
    }
    Ok(instantiate_values(row.table, row.row, &vals))
}

fn instantiate_values(table: TableId, row: u8, v: &[i128]) -> std::result::Result<Instance, Skip> {
    let f = |x: i128| x as f64;
    let inst = |params: [i128; 5], a1: f64, a2: f64| Ok(Instance { params, alphas: [a1, a2] });
    match (table, row) {
        (TableId::Divisible, 1) => {
            let p = v[0];
            mersenne(p)?;
            inst([p * p * (p + 1), p * (p + 1), p * p, p, p + 1], 0.0, 1.0 / f(p + 1))
        }
        (TableId::Divisible, 2) => {
            let p = v[0];
            mersenne(p)?;
            let d = f(2 * p - 1);
            inst([p * p * (p + 1), p * (2 * p - 1), p * p, p * (p - 1), 3 * (p - 1)], f(p - 2) / d, 1.0 / d)
        }
        (TableId::Divisible, 3) => {
            let a = v[0];
            cond(a > 1 && a % 2 == 1, || format!("a = {a} is not an odd integer > 1"))?;
            inst([4 * a, a + 2, a, a - 2, 2], f(a - 2) / f(a + 2), 2.0 / f(a + 2))
        }
        (TableId::Divisible, 4) => {
            let q = v[0];
            prime_power_q(q)?;
            cond(q % 4 == 1, || format!("q = {q} is not 1 mod 4"))?;
            inst([2 * q, q, 2, q - 1, (q - 1) / 2], 1.0 / f(q).sqrt(), 1.0 / f(q))
        }
        (TableId::Divisible, 5) => {
            let a = v[0];
            natural("a", a)?;
            let t = pow(3, a)?;
            let delta = t * t - 2 * t;
            inst([4 * t * t, 2 * (t * t - t), t * t, delta, delta + 1], 0.0, 1.0 / f(2 * (t - 1)))
        }
        (TableId::Divisible, 6) => {
            let (u, vv, w) = (v[0], v[1], v[2]);
            natural("u", u)?;
            natural("v", vv)?;
            cond(w > vv && w > 1, || format!("need w > v, got v = {vv}, w = {w}"))?;
            let lam = div(vv * (vv - 1), w - 1)?;
            let delta = 2 * w * u * u + w * u - 2 * u * vv;
            let eps = 2 * w * u + w - 2 * vv;
            cond(eps > 0, || format!("eps = {eps} is not positive"))?;
            let a1 = f((w - 2 * vv).abs()) / f(eps);
            let a2 = (4.0 * f(vv * (w - vv)) / f(w - 1)).sqrt() / f(eps);
            inst([4 * w * u * u, delta, w, delta - 4 * u * u * vv + 4 * u * u * lam, delta - w * u * u], a1, a2)
        }
        (TableId::Divisible, 7) => {
            let (q, a, b) = (v[0], v[1], v[2]);
            prime_power_q(q)?;
            natural("a", a)?;
            cond(a <= b, || format!("need a <= b, got a = {a}, b = {b}"))?;
            let beta = pow(q, 2 * b - a - 1)?;
            let delta = div(pow(q, a - 1)? - 1, q - 1)?;
            let eps = div(pow(q, a)? - 1, q - 1)?;
            let mu = div(eps * beta, q)?;
            let a2 = f(q).powi((a - b) as i32) / f(eps);
            inst([eps * pow(q, 2 * b - a)?, eps * beta, pow(q, a)?, delta * beta, mu], 0.0, a2)
        }
        (TableId::Relative, 1) => {
            let (p, a, b) = (v[0], v[1], v[2]);
            prime(p)?;
            natural("a", a)?;
            cond(a <= b, || format!("need a <= b, got a = {a}, b = {b}"))?;
            let pb = pow(p, b)?;
            inst([pow(p, a + b)?, pb, pow(p, a)?, 0, pow(p, b - a)?], 0.0, 1.0 / f(pb).sqrt())
        }
        (TableId::Relative, 2) => {
            let u = v[0];
            natural("u", u)?;
            inst([8 * u * u, 4 * u * u, 2, 0, 2 * u * u], 0.0, 1.0 / f(2 * u))
        }
        (TableId::Relative, 3) => {
            let u = v[0];
            natural("u", u)?;
            inst([16 * u * u, 8 * u * u, 2, 0, 4 * u * u], 0.0, 2f64.sqrt() / f(4 * u))
        }
        (TableId::Relative, 4) => {
            let (q, a, d) = (v[0], v[1], v[2]);
            prime_power_q(q)?;
            natural("a", a)?;
            natural("d", d)?;
            cond((q - 1) % d == 0, || format!("d = {d} does not divide q - 1 = {}", q - 1))?;
            let n = div(pow(q, a + 1)? - 1, d)?;
            inst([n, pow(q, a)?, (q - 1) / d, 0, d * pow(q, a - 1)?], f(q).powf(-f(a + 1) / 2.0), f(q).powf(-f(a) / 2.0))
        }
        (TableId::Relative, 5) => {
            let (q, a) = (v[0], v[1]);
            prime_power_q(q)?;
            natural("a", a)?;
            cond(q % 2 == 0 && a % 2 == 0, || format!("q = {q} and a = {a} must both be even"))?;
            // delta = (q - 1)/2 is a half-integer for even q; n and mu still come out integral.
            let n = div(2 * (pow(q, a + 1)? - 1), q - 1)?;
            let mu = div((q - 1) * pow(q, a - 1)?, 2)?;
            inst([n, pow(q, a)?, 2, 0, mu], f(q).powf(-f(a + 1) / 2.0), f(q).powf(-f(a) / 2.0))
        }
        (TableId::Partial, 1) => {
            let q = v[0];
            prime_power_q(q)?;
            cond(q % 4 == 1, || format!("q = {q} is not 1 mod 4"))?;
            let r = f(q).sqrt();
            inst([q, (q - 1) / 2, 0, (q - 5) / 4, (q - 1) / 4], 1.0 / (r + 1.0), 1.0 / (r - 1.0))
        }
        (TableId::Partial, 2) => {
            let a = v[0];
            cond(a > 1, || format!("a = {a} is not > 1"))?;
            inst([a * a, 2 * (a - 1), 0, a - 2, 2], f(a - 2) / f(2 * (a - 1)), 1.0 / f(a - 1))
        }
        (TableId::Partial, 3) => {
            let a = v[0];
            cond(a > 1, || format!("a = {a} is not > 1"))?;
            inst([a * a, 3 * (a - 1), 0, a, 6], f(a - 3) / f(3 * (a - 1)), 1.0 / f(a - 1))
        }
        (TableId::Partial, 4) => {
            let (c, b) = (v[0], v[1]);
            natural("b", b)?;
            cond(c > 1, || format!("c = {c} is not > 1"))?;
            let bound = factorize(c as u64)
                .into_iter()
                .map(|(p, e)| p.pow(e) as i128 + 1)
                .min()
                .unwrap_or(0);
            cond(b <= bound, || format!("b = {b} exceeds min p_j^a_j + 1 = {bound}"))?;
            inst([c * c, b * (c - 1), 0, c + b * b - 3 * b, b * b - b], f((c - b).abs()) / f(b * (c - 1)), 1.0 / f(c - 1))
        }
        (TableId::Partial, 5) => {
            let (p, a) = (v[0], v[1]);
            prime(p)?;
            cond(p % 2 == 1, || format!("p = {p} is not odd"))?;
            natural("a", a)?;
            let d = 9 * pow(p, 4 * a)?;
            let r = f(d).sqrt();
            inst([d, (d - 1) / 2, 0, (d - 5) / 4, (d - 1) / 4], 1.0 / (r + 1.0), 1.0 / (r - 1.0))
        }
        (TableId::Partial, 6) => {
            let (p, a) = (v[0], v[1]);
            prime(p)?;
            cond(p % 2 == 1, || format!("p = {p} is not odd"))?;
            natural("a", a)?;
            let d = 3 * pow(p, 2 * a)?;
            let e = (d - 3) / 2;
            let a2 = f(d - e) / (f(e) * f(d + 1));
            inst([d * d, e * (d + 1), 0, -d + e * e + 3 * e, e * e + e], 1.0 / f(d + 1), a2)
        }
        (TableId::Partial, 7) => {
            let a = v[0];
            natural("a", a)?;
            let beta = pow(2, 2 * a - 1)? - pow(2, a - 1)?;
            let delta = pow(2, a - 1)? - 1;
            let eps = pow(2, a)? - 1;
            let params = [pow(2, 3 * a)?, beta * eps, 0, pow(2, a - 1)? + beta * (delta - 1), beta * delta];
            inst(params, 1.0 / f(eps * eps), 1.0 / f(eps))
        }
        (TableId::Partial, 8) => {
            let a = v[0];
            cond(a > 1 && a % 2 == 1, || format!("a = {a} is not an odd integer > 1"))?;
            let delta = pow(4, a - 1)? - 1;
            let eps = pow(4, a - 1)?;
            let k = pow(4, a)? + 1;
            let a2 = f(3 * eps + 1) / (f(delta) * f(k));
            inst([pow(4, 2 * a)?, k * delta, 0, eps * eps - 3 * eps - 2, delta * eps], 1.0 / f(k), a2)
        }
        _ => Err(format!("unknown row {}.{row}", table.number())),
    }
}

fn to_u64(name: &str, v: i128) -> std::result::Result<u64, Skip> {
    u64::try_from(v).map_err(|_| format!("{name} = {v} is negative or too large"))
}

fn predict(class: PredictionClass, p: &[i128; 5]) -> std::result::Result<(RowParameters, Result<AnglePrediction>), Skip> {
    let rp = RowParameters {
        n: to_u64("n", p[0])?,
        m: to_u64("m", p[1])?,
        l: to_u64("l", p[2])?,
        lambda: to_u64("lambda", p[3])?,
        mu: to_u64("mu", p[4])?,
    };
    let pred = match class {
        PredictionClass::Divisible => dds_angles(rp.n, rp.m, rp.l, rp.lambda, rp.mu),
        PredictionClass::Relative => rds_angles(rp.n, rp.m, rp.l, rp.mu),
        _ => pds_angles(rp.n, rp.m, rp.lambda, rp.mu, false),
    };
    Ok((rp, pred))
}

/// Instantiates one row at `sample`, runs the matching predictor and
/// compares the predicted pair with the row's angle column, both sorted.
/// A predictor that returns a single (equiangular) angle must match both
/// row entries.
pub fn table_row_check(table: u8, row: u8, sample: &BTreeMap<String, i64>) -> Result<RowCheck> {
    let spec = find_row(table, row)?;
    let mut check = RowCheck {
        table,
        row,
        sample: sample.clone(),
        status: RowStatus::Skipped,
        reason: None,
        parameters: None,
        row_angles: None,
        predicted: None,
        max_deviation: None,
    };
    let inst = match instantiate(spec, sample)? {
        Ok(i) => i,
        Err(reason) => {
            check.reason = Some(reason);
            return Ok(check);
        }
    };
    check.row_angles = Some(inst.alphas);
    let (params, pred) = match predict(spec.class, &inst.params) {
        Ok(x) => x,
        Err(reason) => {
            check.reason = Some(reason);
            return Ok(check);
        }
    };
    check.parameters = Some(params);
    let pred = match pred {
        Ok(p) => p,
        Err(e) => {
            check.status = RowStatus::Failed;
            check.reason = Some(e.to_string());
            return Ok(check);
        }
    };
    let predicted = pred.sorted_values();
    let mut row_sorted = inst.alphas;
    row_sorted.sort_by(f64::total_cmp);
    let dev = match predicted.as_slice() {
        [x] => row_sorted.iter().map(|r| (r - x).abs()).fold(0.0, f64::max),
        [x, y] => (row_sorted[0] - x).abs().max((row_sorted[1] - y).abs()),
        _ => f64::INFINITY,
    };
    check.predicted = Some(predicted);
    check.max_deviation = Some(dev);
    if dev <= tolerance::TABLE_ROW {
        check.status = RowStatus::Passed;
    } else {
        check.status = RowStatus::Failed;
        check.reason = Some(format!("predicted angles differ from the row by {dev:e}"));
    }
    Ok(check)
}

/// Checks every row at its built-in sample instantiations.
pub fn check_all() -> Vec<(&'static TableRow, RowCheck)> {
    ROWS.iter()
        .flat_map(|row| {
            row.samples.iter().map(move |s| {
                let check = table_row_check(row.table.number(), row.row, &row.sample_map(s))
                    .expect("built-in samples name every variable");
                (row, check)
            })
        })
        .collect()
}
