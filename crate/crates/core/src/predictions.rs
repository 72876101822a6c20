//! Closed-form frame angles for the difference-set classes, to be compared
//! with brute-force angle profiles.
//!
//! Angle values come from the closed forms. Multiplicities are recomputed
//! from the tight-frame identity or by direct counting; where a closed form
//! states its own multiplicities they are kept alongside and any mismatch is
//! reported in `multiplicity_note`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::difference::NestedChain;
use crate::error::{Error, Result};
use crate::harmonic::{btf_multiplicities_from_angles, AngleProfile};
use crate::number_theory::{is_prime, represent_as};
use crate::symbolic::QuadraticSurd;
use crate::tolerance;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PredictionClass {
    Divisible,
    Relative,
    Partial,
    Gaussian,
    NestedDivisible,
    QuarticFamily,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PredictedAngle {
    pub value: f64,
    pub squared: QuadraticSurd,
    pub symbolic: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multiplicity: Option<usize>,
}

impl PredictedAngle {
    fn from_square(squared: QuadraticSurd) -> Result<Self> {
        let sq = squared.value();
        if sq < -tolerance::PREDICTION {
            return Err(Error::InvalidParameters(format!(
                "negative squared angle {squared}"
            )));
        }
        let value = sq.max(0.0).sqrt();
        if value > 1.0 + tolerance::PREDICTION {
            return Err(Error::InvalidParameters(format!("angle {value} exceeds 1")));
        }
        Ok(PredictedAngle {
            value: value.min(1.0),
            squared,
            symbolic: squared.sqrt_display(),
            multiplicity: None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnglePrediction {
    pub class: PredictionClass,
    pub n: u64,
    pub m: u64,
    pub parameters: BTreeMap<String, i64>,
    /// Angles in the order the closed form labels them (`alpha_1` first).
    /// One angle means the prediction is an equiangular tight frame.
    pub angles: Vec<PredictedAngle>,
    pub etf: bool,
    /// Multiplicities as the closed form states them, if it states any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stated_multiplicities: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multiplicity_note: Option<String>,
    /// For nested divisible chains: whether the layer conditions make the
    /// frame biangular.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub biangular: Option<bool>,
    pub source: String,
}

impl AnglePrediction {
    pub fn values(&self) -> Vec<f64> {
        self.angles.iter().map(|a| a.value).collect()
    }

    pub fn sorted_values(&self) -> Vec<f64> {
        let mut v = self.values();
        v.sort_by(f64::total_cmp);
        v
    }

    pub fn multiplicities(&self) -> Option<Vec<usize>> {
        self.angles.iter().map(|a| a.multiplicity).collect()
    }

    /// `sum tau alpha^2 - (n - m)/m`, when multiplicities are known.
    pub fn tight_identity_residual(&self) -> Option<f64> {
        let taus = self.multiplicities()?;
        let lhs: f64 = self
            .angles
            .iter()
            .zip(&taus)
            .map(|(a, &t)| t as f64 * a.value * a.value)
            .sum();
        Some(lhs - (self.n as f64 - self.m as f64) / self.m as f64)
    }

    /// Largest gap between predicted values and the profile angles, matched
    /// after sorting; `None` when the angle counts differ.
    pub fn deviation_from(&self, profile: &AngleProfile) -> Option<f64> {
        let predicted = self.sorted_values();
        let observed = profile.values();
        (predicted.len() == observed.len()).then(|| {
            predicted
                .iter()
                .zip(&observed)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
        })
    }

    /// Predicted angles and, where known, multiplicities agree with `profile`.
    pub fn agrees_with(&self, profile: &AngleProfile, tol: f64) -> bool {
        if !self.deviation_from(profile).is_some_and(|d| d <= tol) {
            return false;
        }
        match self.multiplicities() {
            Some(taus) => {
                let mut pairs: Vec<(f64, usize)> =
                    self.angles.iter().map(|a| a.value).zip(taus).collect();
                pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
                pairs
                    .iter()
                    .map(|p| p.1)
                    .eq(profile.multiplicities())
            }
            None => true,
        }
    }
}

fn params(pairs: &[(&str, i64)]) -> BTreeMap<String, i64> {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameters(msg()))
    }
}

fn welch_square(n: u64, m: u64) -> QuadraticSurd {
    QuadraticSurd::rational((n - m) as i128, (m * (n - 1)) as i128)
}

fn etf_prediction(class: PredictionClass, n: u64, m: u64, parameters: BTreeMap<String, i64>, source: &str) -> Result<AnglePrediction> {
    let mut angle = PredictedAngle::from_square(welch_square(n, m))?;
    angle.multiplicity = Some(n as usize - 1);
    Ok(AnglePrediction {
        class,
        n,
        m,
        parameters,
        angles: vec![angle],
        etf: true,
        stated_multiplicities: None,
        multiplicity_note: None,
        biangular: None,
        source: source.into(),
    })
}

/// Attaches multiplicities forced by the tight-frame identity.
fn attach_identity_multiplicities(p: &mut AnglePrediction) -> Result<()> {
    if p.angles.len() != 2 {
        return Ok(());
    }
    let (t1, t2) = btf_multiplicities_from_angles(
        p.n as usize,
        p.m as usize,
        p.angles[0].value,
        p.angles[1].value,
    )?;
    p.angles[0].multiplicity = Some(t1);
    p.angles[1].multiplicity = Some(t2);
    Ok(())
}

/// Divisible difference set `(n, m, l, lambda, mu)`: angles
/// `sqrt(m - lambda + l (lambda - mu)) / m` and `sqrt(m - lambda) / m`.
///
/// The off-diagonal count gives `n/l - 1` and `n - n/l` occurrences; the
/// closed form states `n/l` and `n - n/l - 1`. Both are kept.
pub fn dds_angles(n: u64, m: u64, l: u64, lambda: u64, mu: u64) -> Result<AnglePrediction> {
    require(n >= 2 && m >= 1 && m <= n, || format!("need 1 <= m <= n, got n = {n}, m = {m}"))?;
    require(l >= 1 && l <= n && n.is_multiple_of(l), || format!("l = {l} must divide n = {n}"))?;
    let (ni, mi, li, la, mui) = (n as i128, m as i128, l as i128, lambda as i128, mu as i128);
    require(mi * (mi - 1) == la * (li - 1) + mui * (ni - li), || {
        format!("m(m-1) = {} differs from lambda(l-1) + mu(n-l) = {}", mi * (mi - 1), la * (li - 1) + mui * (ni - li))
    })?;
    let parameters = params(&[
        ("n", n as i64),
        ("m", m as i64),
        ("l", l as i64),
        ("lambda", lambda as i64),
        ("mu", mu as i64),
    ]);
    if lambda == mu || l == 1 {
        // With l = 1 the subgroup is trivial and S is a plain difference set.
        return etf_prediction(PredictionClass::Divisible, n, m, parameters, "divisible difference set, equal counts");
    }
    let a1 = PredictedAngle::from_square(QuadraticSurd::rational(mi - la + li * (la - mui), mi * mi))?;
    let a2 = PredictedAngle::from_square(QuadraticSurd::rational(mi - la, mi * mi))?;
    let counted = [(n / l) as usize - 1, (n - n / l) as usize];
    let stated = vec![(n / l) as usize, (n - n / l) as usize - 1];
    let mut p = AnglePrediction {
        class: PredictionClass::Divisible,
        n,
        m,
        parameters,
        angles: vec![a1, a2],
        etf: false,
        stated_multiplicities: Some(stated.clone()),
        multiplicity_note: None,
        biangular: Some(true),
        source: "divisible difference set angle formula".into(),
    };
    p.angles[0].multiplicity = Some(counted[0]);
    p.angles[1].multiplicity = Some(counted[1]);
    if stated != counted {
        p.multiplicity_note = Some(format!(
            "stated multiplicities ({}, {}) count the identity character; off-diagonal counts are ({}, {})",
            stated[0], stated[1], counted[0], counted[1]
        ));
    }
    Ok(p)
}

/// Relative difference set `(n, m, l, mu)`: angles `sqrt(m - l mu) / m` and
/// `1 / sqrt(m)`; equiangular when `l = 1`.
pub fn rds_angles(n: u64, m: u64, l: u64, mu: u64) -> Result<AnglePrediction> {
    require(l * mu <= m, || format!("l mu = {} exceeds m = {m}", l * mu))?;
    let mut p = dds_angles(n, m, l, 0, mu).map_err(|e| match e {
        Error::InvalidParameters(msg) => Error::InvalidParameters(msg.replace("lambda(l-1) + ", "")),
        other => other,
    })?;
    p.class = PredictionClass::Relative;
    p.parameters.remove("lambda");
    p.source = "relative difference set angle formula".into();
    Ok(p)
}

/// Partial difference set `(n, m, lambda, mu)` with `A = S ∪ {0}`:
/// `alpha^2 = (2 gamma + d^2 ± d sqrt(d^2 + 4 gamma)) / (2 m^2)` where
/// `d = lambda - mu` and `gamma = m - lambda` if `0 ∈ S`, else `m - mu`.
pub fn pds_angles(n: u64, m: u64, lambda: u64, mu: u64, zero_in_s: bool) -> Result<AnglePrediction> {
    require(n >= 2 && m >= 1 && m < n, || format!("need 1 <= m < n, got n = {n}, m = {m}"))?;
    let (ni, mi, la, mui) = (n as i128, m as i128, lambda as i128, mu as i128);
    let l = if zero_in_s { mi } else { mi + 1 };
    require(mi * (mi - 1) == la * (l - 1) + mui * (ni - l), || {
        format!("m(m-1) = {} differs from lambda(l-1) + mu(n-l) = {}", mi * (mi - 1), la * (l - 1) + mui * (ni - l))
    })?;
    let parameters = params(&[
        ("n", n as i64),
        ("m", m as i64),
        ("lambda", lambda as i64),
        ("mu", mu as i64),
        ("zero_in_s", zero_in_s as i64),
    ]);
    if lambda == mu {
        return etf_prediction(PredictionClass::Partial, n, m, parameters, "partial difference set, equal counts");
    }
    let d = la - mui;
    let gamma = if zero_in_s { mi - la } else { mi - mui };
    let radicand = d * d + 4 * gamma;
    require(radicand >= 0, || format!("negative radicand {radicand}"))?;
    let square = |sign: i128| {
        PredictedAngle::from_square(QuadraticSurd::new(2 * gamma + d * d, sign * d, radicand as u64, 2 * mi * mi))
    };
    let mut p = AnglePrediction {
        class: PredictionClass::Partial,
        n,
        m,
        parameters,
        angles: vec![square(1)?, square(-1)?],
        etf: false,
        stated_multiplicities: None,
        multiplicity_note: None,
        biangular: Some(true),
        source: "partial difference set angle formula".into(),
    };
    attach_identity_multiplicities(&mut p)?;
    Ok(p)
}

/// Gaussian difference set in `Z_p` with `A = QR ∪ {0}`:
/// `alpha^2 = (2 (m - lambda) + (lambda - mu)(1 ± sqrt(p))) / (2 m^2)`, each
/// occurring `(p - 1)/2` times.
pub fn gaussian_angles(p: u64, m: u64, lambda: u64, mu: u64) -> Result<AnglePrediction> {
    require(p > 2 && is_prime(p), || format!("{p} is not an odd prime"))?;
    require(m >= 1 && m < p, || format!("need 1 <= m < p, got m = {m}"))?;
    let (pi, mi, la, mui) = (p as i128, m as i128, lambda as i128, mu as i128);
    let half = (pi - 1) / 2;
    require(mi * (mi - 1) == (la + mui) * half, || {
        format!("m(m-1) = {} differs from (lambda + mu)(p-1)/2 = {}", mi * (mi - 1), (la + mui) * half)
    })?;
    let parameters = params(&[
        ("p", p as i64),
        ("m", m as i64),
        ("lambda", lambda as i64),
        ("mu", mu as i64),
    ]);
    if lambda == mu {
        return etf_prediction(PredictionClass::Gaussian, p, m, parameters, "Gaussian difference set, equal counts");
    }
    require(p % 4 == 1, || format!("p = {p} = 3 mod 4 forces lambda = mu"))?;
    let d = la - mui;
    let square = |sign: i128| {
        PredictedAngle::from_square(QuadraticSurd::new(2 * (mi - la) + d, sign * d, p, 2 * mi * mi))
    };
    let mut angles = vec![square(1)?, square(-1)?];
    for a in &mut angles {
        a.multiplicity = Some(half as usize);
    }
    let mut pred = AnglePrediction {
        class: PredictionClass::Gaussian,
        n: p,
        m,
        parameters,
        angles,
        etf: false,
        stated_multiplicities: Some(vec![half as usize; 2]),
        multiplicity_note: None,
        biangular: Some(true),
        source: "Gaussian difference set angle formula".into(),
    };
    let (t1, t2) = btf_multiplicities_from_angles(p as usize, m as usize, pred.angles[0].value, pred.angles[1].value)?;
    if (t1, t2) != (half as usize, half as usize) {
        pred.multiplicity_note = Some(format!(
            "tight-frame identity gives ({t1}, {t2}) instead of ({half}, {half})"
        ));
    }
    Ok(pred)
}

/// Nested divisible chain with `t >= 2`: `alpha_1^2 = 1/m - lambda_1/m^2`
/// and `alpha_2^2 = alpha_1^2 + (lambda_s - lambda_{s+1}) |A_s| / m^2` with
/// `s` the first layer where the count changes.
///
/// Every annihilator layer `Ann(A_r) \ Ann(A_{r+1})` carries the squared
/// angle `alpha_1^2 + (1/m^2) sum_{j=s}^{r} (lambda_j - lambda_{j+1}) |A_j|`
/// for `r >= s` and `alpha_1^2` below `s`; it has `n/|A_r| - n/|A_{r+1}|`
/// nonzero members. The frame is biangular iff every layer lands on
/// `alpha_1` or `alpha_2`.
pub fn ndds_angles(chain: &NestedChain, m: u64) -> Result<AnglePrediction> {
    let t = chain.t;
    require(t >= 2, || format!("need t >= 2, got {t}"))?;
    require(chain.lambdas.len() == t && chain.chain.len() == t + 1, || "malformed chain".into())?;
    let orders: Vec<i128> = chain.orders().into_iter().map(|o| o as i128).collect();
    let lam: Vec<i128> = chain.lambdas.iter().map(|&x| x as i128).collect();
    let n = orders[t];
    let mi = m as i128;
    // lam[j - 1] is lambda_j; orders[j] is |A_j|.
    let s = (1..t)
        .find(|&j| lam[j - 1] != lam[j])
        .ok_or_else(|| Error::InvalidParameters("chain is not proper: all counts equal".into()))?;

    // Numerators over m^2 of the squared angle on each layer r = 0..t-1.
    let base = mi - lam[0];
    let mut layer_num = Vec::with_capacity(t);
    let mut partial = 0i128;
    for r in 0..t {
        if r >= s {
            partial += (lam[r - 1] - lam[r]) * orders[r];
        }
        layer_num.push(base + partial);
    }
    let alpha2_num = base + (lam[s - 1] - lam[s]) * orders[s];
    let biangular = layer_num
        .iter()
        .all(|&v| v == base || v == alpha2_num);

    let mut distinct: Vec<(i128, usize)> = Vec::new();
    for (r, &v) in layer_num.iter().enumerate() {
        let mult = (n / orders[r] - n / orders[r + 1]) as usize;
        match distinct.iter_mut().find(|(x, _)| *x == v) {
            Some(entry) => entry.1 += mult,
            None => distinct.push((v, mult)),
        }
    }
    let mut angles = Vec::new();
    for &v in [base, alpha2_num].iter() {
        let mut a = PredictedAngle::from_square(QuadraticSurd::rational(v, mi * mi))?;
        if biangular {
            a.multiplicity = distinct.iter().find(|(x, _)| *x == v).map(|e| e.1);
        }
        angles.push(a);
    }
    let mut parameters = params(&[("n", n as i64), ("m", m as i64), ("t", t as i64), ("s", s as i64)]);
    for (j, (&l, &o)) in lam.iter().zip(&orders[1..]).enumerate() {
        parameters.insert(format!("lambda_{}", j + 1), l as i64);
        parameters.insert(format!("order_{}", j + 1), o as i64);
    }
    Ok(AnglePrediction {
        class: PredictionClass::NestedDivisible,
        n: n as u64,
        m,
        parameters,
        angles,
        etf: false,
        stated_multiplicities: None,
        multiplicity_note: None,
        biangular: Some(biangular),
        source: "nested divisible difference set angle formula".into(),
    })
}

/// Squared angles of the frames generated by `R4` or `R4 ∪ {0}` in `Z_p`,
/// `p = 5 mod 8`, in the families where they are known in closed form.
///
/// `R4`: difference set when `p = 4a^2 + 1` with `a` odd; otherwise angles
/// `sqrt(3p + 1 ± 8 sqrt(p)) / (p - 1)` when `p = 9 + 4a^2` or `25 + 4a^2`.
/// `R4 ∪ {0}`: difference set when `p = 4a^2 + 9` with `a` odd; otherwise
/// `sqrt(3p + 9 ± 8 sqrt(p)) / (p + 3)` when `p = 1 + 4a^2` or `49 + 4a^2`.
pub fn quartic_family_angles(p: u64, with_zero: bool) -> Result<AnglePrediction> {
    if !is_prime(p) || p % 8 != 5 || p < 13 {
        return Err(Error::NotApplicable(format!("{p} is not a prime = 5 mod 8 above 5")));
    }
    let m = if with_zero { p.div_ceil(4) } else { (p - 1) / 4 };
    let (etf_offset, families): (u64, [u64; 2]) = if with_zero { (9, [1, 49]) } else { (1, [9, 25]) };
    let mut parameters = params(&[("p", p as i64), ("with_zero", with_zero as i64)]);
    if let Some(a) = represent_as(p, etf_offset).filter(|a| a % 2 == 1) {
        parameters.insert("a".into(), a as i64);
        return etf_prediction(PredictionClass::QuarticFamily, p, m, parameters, "quartic residue difference set");
    }
    let Some((offset, a)) = families.iter().find_map(|&o| represent_as(p, o).map(|a| (o, a))) else {
        return Err(Error::NotApplicable(format!(
            "{p} is not of the form {} + 4a^2 or {} + 4a^2",
            families[0], families[1]
        )));
    };
    parameters.insert("a".into(), a as i64);
    parameters.insert("offset".into(), offset as i64);
    let pi = p as i128;
    let (c, den) = if with_zero { (3 * pi + 9, (pi + 3) * (pi + 3)) } else { (3 * pi + 1, (pi - 1) * (pi - 1)) };
    let half = (p as usize - 1) / 2;
    let mut angles = Vec::new();
    for sign in [1i128, -1] {
        let mut a = PredictedAngle::from_square(QuadraticSurd::new(c, sign * 8, p, den))?;
        a.multiplicity = Some(half);
        angles.push(a);
    }
    Ok(AnglePrediction {
        class: PredictionClass::QuarticFamily,
        n: p,
        m,
        parameters,
        angles,
        etf: false,
        stated_multiplicities: Some(vec![half; 2]),
        multiplicity_note: None,
        biangular: Some(true),
        source: "quartic residue almost difference set angle formula".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::difference::nested_divisible_chain;
    use crate::group::GroupSpec;
    use crate::harmonic::FrameSpec;

    fn profile(g: &str, s: &str) -> AngleProfile {
        let g: GroupSpec = g.parse().unwrap();
        let s = g.parse_subset(s).unwrap();
        FrameSpec::new(&g, &s).unwrap().angle_profile()
    }

    #[test]
    fn dds_z6() {
        let p = dds_angles(6, 3, 2, 2, 1).unwrap();
        let v = p.values();
        assert!((v[0] - 1.0 / 3f64.sqrt()).abs() < 1e-12);
        assert!((v[1] - 1.0 / 3.0).abs() < 1e-12);
        assert_eq!(p.multiplicities(), Some(vec![2, 3]));
        assert_eq!(p.stated_multiplicities, Some(vec![3, 2]));
        assert!(p.multiplicity_note.is_some());
        assert!(p.agrees_with(&profile("Z6", "0,1,3"), 1e-10));
        assert!(p.tight_identity_residual().unwrap().abs() < 1e-12);
    }

    #[test]
    fn dds_equal_counts_is_etf() {
        let p = dds_angles(7, 3, 1, 1, 1).unwrap();
        assert!(p.etf);
        assert_eq!(p.angles.len(), 1);
        assert!((p.values()[0] - 2f64.sqrt() / 3.0).abs() < 1e-12);
    }

    #[test]
    fn dds_rejects_inconsistent() {
        assert!(matches!(dds_angles(6, 3, 2, 1, 1), Err(Error::InvalidParameters(_))));
        assert!(matches!(dds_angles(6, 3, 4, 2, 1), Err(Error::InvalidParameters(_))));
    }

    #[test]
    fn rds_examples() {
        let p = rds_angles(4, 2, 2, 1).unwrap();
        let v = p.values();
        assert!(v[0].abs() < 1e-12);
        assert!((v[1] - 0.5f64.sqrt()).abs() < 1e-12);
        assert!(p.agrees_with(&profile("Z4", "0,1"), 1e-10));

        let p = rds_angles(8, 4, 2, 2).unwrap();
        let v = p.sorted_values();
        assert!(v[0].abs() < 1e-12);
        assert!((v[1] - 0.5).abs() < 1e-12);
        assert_eq!(p.multiplicities(), Some(vec![3, 4]));

        let p = rds_angles(7, 3, 1, 1).unwrap();
        assert!(p.etf && p.angles.len() == 1);
        assert!(matches!(rds_angles(8, 3, 4, 1), Err(Error::InvalidParameters(_))));
    }

    #[test]
    fn pds_paley_13() {
        let p = pds_angles(13, 6, 2, 3, false).unwrap();
        let v = p.sorted_values();
        assert!((v[0] - 0.217_212_927_295_533).abs() < 1e-3);
        assert!((v[0] - 1.0 / (13f64.sqrt() + 1.0)).abs() < 1e-12);
        assert!((v[1] - 1.0 / (13f64.sqrt() - 1.0)).abs() < 1e-12);
        assert_eq!(p.multiplicities(), Some(vec![6, 6]));
        assert!(p.agrees_with(&profile("Z13", "1,3,4,9,10,12"), 1e-10));
    }

    #[test]
    fn pds_with_zero_and_etf_branch() {
        let p = pds_angles(13, 7, 4, 3, true).unwrap();
        assert!(p.agrees_with(&profile("Z13", "0,1,3,4,9,10,12"), 1e-10));
        let p = pds_angles(7, 3, 1, 1, false).unwrap();
        assert!(p.etf);
    }

    #[test]
    fn gaussian_r4_13() {
        let p = gaussian_angles(13, 3, 0, 1).unwrap();
        assert_eq!(p.multiplicities(), Some(vec![6, 6]));
        assert!(p.multiplicity_note.is_none());
        assert!(p.agrees_with(&profile("Z13", "1,3,9"), 1e-10));
        let expected: Vec<f64> = [-1.0, 1.0]
            .iter()
            .map(|s| (3.0 - (1.0 + s * 13f64.sqrt()) / 2.0).sqrt() / 3.0)
            .collect();
        let mut expected = expected;
        expected.sort_by(f64::total_cmp);
        let v = p.sorted_values();
        assert!((v[0] - expected[0]).abs() < 1e-12 && (v[1] - expected[1]).abs() < 1e-12);
        assert!(gaussian_angles(7, 3, 1, 1).unwrap().etf);
        assert!(matches!(gaussian_angles(7, 3, 0, 2), Err(Error::InvalidParameters(_))));
    }

    #[test]
    fn ndds_z2xz4() {
        let g: GroupSpec = "Z2xZ4".parse().unwrap();
        let s = g.parse_subset("(0,0),(1,0),(0,1)").unwrap();
        let chain = nested_divisible_chain(&g, &s).unwrap().unwrap();
        let p = ndds_angles(&chain, 3).unwrap();
        assert_eq!(p.biangular, Some(true));
        assert!((p.values()[0] - 1.0 / 3.0).abs() < 1e-12);
        assert!((p.values()[1] - 5f64.sqrt() / 3.0).abs() < 1e-12);
        assert_eq!(p.multiplicities(), Some(vec![5, 2]));
        assert!(p.agrees_with(&profile("Z2xZ4", "(0,0),(1,0),(0,1)"), 1e-10));
    }

    #[test]
    fn ndds_t2_matches_dds() {
        let g: GroupSpec = "Z6".parse().unwrap();
        let s = g.parse_subset("0,1,3").unwrap();
        let chain = nested_divisible_chain(&g, &s).unwrap().unwrap();
        let p = ndds_angles(&chain, 3).unwrap();
        assert_eq!(p.biangular, Some(true));
        let d = dds_angles(6, 3, 2, 2, 1).unwrap();
        assert_eq!(p.sorted_values().len(), 2);
        for (a, b) in p.sorted_values().iter().zip(d.sorted_values()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn quartic_families() {
        let p = quartic_family_angles(29, false).unwrap();
        let v = p.sorted_values();
        assert!((v[0] - (88.0 - 8.0 * 29f64.sqrt()).sqrt() / 28.0).abs() < 1e-12);
        assert!((v[1] - (88.0 + 8.0 * 29f64.sqrt()).sqrt() / 28.0).abs() < 1e-12);
        assert!(p.agrees_with(&profile("Z29", "1,7,16,20,23,24,25"), 1e-8));

        let p = quartic_family_angles(13, false).unwrap();
        assert!(p.agrees_with(&profile("Z13", "1,3,9"), 1e-8));
        let p = quartic_family_angles(13, true).unwrap();
        assert!(p.etf);
        assert!(quartic_family_angles(37, false).unwrap().etf);
        assert!(matches!(quartic_family_angles(17, false), Err(Error::NotApplicable(_))));
    }
}
