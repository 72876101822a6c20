//! Quadratic and quartic residues over prime fields, Legendre and quartic
//! symbols, quadratic Gauss sums, and the residue-class difference sets
//! built from them.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::difference::{classify, Classification};
use crate::error::{Error, Result};
use crate::group::{Element, GroupSpec};

/// Largest prime accepted by the residue machinery.
pub const MAX_PRIME: u64 = 10_000;

/// Deterministic trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization as `(prime, exponent)` pairs, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `Some((p, s))` when `q = p^s` for a prime `p`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    match factorize(q).as_slice() {
        [(p, s)] => Some((*p, *s)),
        _ => None,
    }
}

pub fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let m = modulus as u128;
    let mut b = base as u128 % m;
    let mut acc = 1u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

fn require_odd_prime(p: u64) -> Result<()> {
    if p == 2 || !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not an odd prime")));
    }
    if p > MAX_PRIME {
        return Err(Error::Capacity {
            what: "prime",
            actual: p as u128,
            limit: MAX_PRIME as u128,
        });
    }
    Ok(())
}

fn reduce_unit(a: i64, p: u64) -> Result<u64> {
    let r = a.rem_euclid(p as i64) as u64;
    if r == 0 {
        return Err(Error::Domain(format!("{a} is not a unit mod {p}")));
    }
    Ok(r)
}

/// Legendre symbol by Euler's criterion, as `+1` or `-1`.
pub fn legendre(a: i64, p: u64) -> Result<i8> {
    require_odd_prime(p)?;
    let a = reduce_unit(a, p)?;
    Ok(if mod_pow(a, (p - 1) / 2, p) == 1 { 1 } else { -1 })
}

/// Quartic residue symbol `a^((p-1)/4)` for a quadratic residue `a`.
///
/// Outside the quadratic residues the symbol is `±i`, which is not handled.
pub fn quartic_symbol(a: i64, p: u64) -> Result<i8> {
    require_odd_prime(p)?;
    if p % 4 != 1 {
        return Err(Error::Domain(format!("quartic symbol needs p = 1 mod 4, got {p}")));
    }
    if legendre(a, p)? != 1 {
        return Err(Error::Domain(format!("{a} is not a quadratic residue mod {p}")));
    }
    let a = reduce_unit(a, p)?;
    Ok(if mod_pow(a, (p - 1) / 4, p) == 1 { 1 } else { -1 })
}

/// The multiplicative subgroup of `s`-th powers in `Z_p^*`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueClass {
    pub p: u64,
    pub power: u32,
    pub elements: Vec<u64>,
}

impl ResidueClass {
    pub fn contains(&self, a: u64) -> bool {
        self.elements.binary_search(&(a % self.p)).is_ok()
    }

    /// `c * R` as a sorted set.
    pub fn coset(&self, c: u64) -> Vec<u64> {
        let mut v: Vec<u64> = self.elements.iter().map(|&r| r * c % self.p).collect();
        v.sort_unstable();
        v
    }
}

/// Squares (`power = 2`) or fourth powers (`power = 4`) mod `p`.
pub fn residues(p: u64, power: u32) -> Result<ResidueClass> {
    require_odd_prime(p)?;
    if power != 2 && power != 4 {
        return Err(Error::Domain(format!("only 2nd and 4th powers are supported, got {power}")));
    }
    let mut elements: Vec<u64> = (1..p).map(|x| mod_pow(x, power as u64, p)).collect();
    elements.sort_unstable();
    elements.dedup();
    Ok(ResidueClass { p, power, elements })
}

/// A numerically evaluated Gauss sum next to its closed form.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaussSumValue {
    pub a: u64,
    pub p: u64,
    pub value: Complex64,
    pub closed_form: Complex64,
}

impl GaussSumValue {
    pub fn deviation(&self) -> f64 {
        (self.value - self.closed_form).norm()
    }
}

fn exp_2pi_i(num: u64, den: u64) -> Complex64 {
    let theta = 2.0 * std::f64::consts::PI * (num % den) as f64 / den as f64;
    Complex64::new(theta.cos(), theta.sin())
}

/// `sum_{x in Z_p} exp(2 pi i a x^2 / p)`.
pub fn gauss_sum(a: i64, p: u64) -> Result<GaussSumValue> {
    let symbol = legendre(a, p)? as f64;
    let a = reduce_unit(a, p)?;
    let value = (0..p).map(|x| exp_2pi_i(a * (x * x % p) % p, p)).sum();
    let root = (p as f64).sqrt();
    let closed_form = if p % 4 == 1 {
        Complex64::new(symbol * root, 0.0)
    } else {
        Complex64::new(0.0, symbol * root)
    };
    Ok(GaussSumValue {
        a,
        p,
        value,
        closed_form,
    })
}

/// `sum_{j in R2 ∪ {0}} exp(2 pi i a j / p)` with its four-case closed form
/// `(1 ± sqrt(p))/2` or `(1 ± i sqrt(p))/2`.
pub fn half_gauss_sum(a: i64, p: u64) -> Result<GaussSumValue> {
    let symbol = legendre(a, p)? as f64;
    let a = reduce_unit(a, p)?;
    let squares = residues(p, 2)?;
    let value = Complex64::new(1.0, 0.0)
        + squares
            .elements
            .iter()
            .map(|&j| exp_2pi_i(a * j % p, p))
            .sum::<Complex64>();
    let root = (p as f64).sqrt();
    let closed_form = if p % 4 == 1 {
        Complex64::new((1.0 + symbol * root) / 2.0, 0.0)
    } else {
        Complex64::new(0.5, symbol * root / 2.0)
    };
    Ok(GaussSumValue {
        a,
        p,
        value,
        closed_form,
    })
}

fn as_elements(set: &[u64]) -> Vec<Element> {
    set.iter().map(|&x| Element(vec![x as u32])).collect()
}

/// Parameters a residue-class construction is expected to have.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExpectedDesign {
    DifferenceSet { n: u64, m: u64, lambda: u64 },
    PartialDifferenceSet { n: u64, m: u64, lambda: u64, mu: u64 },
}

/// The quadratic residues of `Z_p` with their verified classification.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PaleySet {
    pub p: u64,
    pub set: Vec<u64>,
    pub expected: ExpectedDesign,
    pub classification: Classification,
    pub verified: bool,
}

pub fn paley_pds(p: u64) -> Result<PaleySet> {
    let squares = residues(p, 2)?;
    let group = GroupSpec::cyclic(p as u32)?;
    let classification = classify(&group, &as_elements(&squares.elements))?;
    let (expected, verified) = if p % 4 == 3 {
        let exp = ExpectedDesign::DifferenceSet {
            n: p,
            m: (p - 1) / 2,
            lambda: (p - 3) / 4,
        };
        let ok = classification
            .difference_set
            .as_ref()
            .is_some_and(|d| d.lambda as u64 == (p - 3) / 4 && d.m as u64 == (p - 1) / 2);
        (exp, ok)
    } else {
        let (lambda, mu) = ((p - 5) / 4, (p - 1) / 4);
        let exp = ExpectedDesign::PartialDifferenceSet {
            n: p,
            m: (p - 1) / 2,
            lambda,
            mu,
        };
        let ok = classification.partial.as_ref().is_some_and(|pd| {
            pd.proper && pd.lambda as u64 == lambda && pd.mu as u64 == mu && pd.regular
        });
        (exp, ok)
    };
    Ok(PaleySet {
        p,
        set: squares.elements,
        expected,
        classification,
        verified,
    })
}

/// `Z_p^* = R4 ∪ a R4 ∪ a^2 R4 ∪ a^3 R4` for a quadratic non-residue `a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuarticCosets {
    pub p: u64,
    /// Coset representative; 2 whenever 2 is a non-residue.
    pub generator: u64,
    /// `[R4, a R4, a^2 R4, a^3 R4]`, each sorted.
    pub cosets: [Vec<u64>; 4],
}

impl QuarticCosets {
    /// Index `j` with `x ∈ a^j R4`.
    pub fn coset_of(&self, x: u64) -> Option<usize> {
        let x = x % self.p;
        self.cosets.iter().position(|c| c.binary_search(&x).is_ok())
    }
}

pub fn quartic_coset_decomposition(p: u64) -> Result<QuarticCosets> {
    require_odd_prime(p)?;
    if p % 4 != 1 {
        return Err(Error::Domain(format!("quartic cosets need p = 1 mod 4, got {p}")));
    }
    let generator = if legendre(2, p)? == -1 {
        2
    } else {
        (3..p)
            .find(|&a| legendre(a as i64, p).ok() == Some(-1))
            .expect("every odd prime has a quadratic non-residue")
    };
    let r4 = residues(p, 4)?;
    let cosets = [
        r4.coset(1),
        r4.coset(generator),
        r4.coset(generator * generator % p),
        r4.coset(mod_pow(generator, 3, p)),
    ];
    Ok(QuarticCosets {
        p,
        generator,
        cosets,
    })
}

/// `|{(x, y) in Z_p^* x Z_p^* : x^4 - y^4 = a}|` by direct enumeration.
pub fn quartic_difference_pairs(p: u64, a: u64) -> Result<u64> {
    require_odd_prime(p)?;
    let fourth: Vec<u64> = (1..p).map(|x| mod_pow(x, 4, p)).collect();
    let target = a % p;
    let mut count = 0;
    for &x4 in &fourth {
        for &y4 in &fourth {
            if (x4 + p - y4) % p == target {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// The quartic residues (optionally with 0) of `Z_p`, `p = 8q + 5`, as a
/// Gaussian difference set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuarticGaussian {
    pub p: u64,
    pub q: u64,
    pub with_zero: bool,
    pub set: Vec<u64>,
    /// Difference count on the quadratic residues.
    pub lambda: u64,
    /// Difference count on the non-residues.
    pub mu: u64,
    /// `lambda` and `mu` of the bare quartic residues.
    pub base_lambda: u64,
    pub base_mu: u64,
    pub classification: Classification,
}

pub fn quartic_gaussian_ds(p: u64, with_zero: bool) -> Result<QuarticGaussian> {
    require_odd_prime(p)?;
    if p % 8 != 5 || p < 13 {
        return Err(Error::Domain(format!("{p} is not of the form 8q + 5 with q > 0")));
    }
    let q = (p - 5) / 8;
    let r4 = residues(p, 4)?;
    let group = GroupSpec::cyclic(p as u32)?;
    let base = crate::difference::difference_counts(&group, &as_elements(&r4.elements))?;
    let squares = residues(p, 2)?;
    let on_squares: Vec<u32> = squares
        .elements
        .iter()
        .map(|&x| base.count_idx(x as usize))
        .collect();
    let on_rest: Vec<u32> = (1..p)
        .filter(|x| !squares.contains(*x))
        .map(|x| base.count_idx(x as usize))
        .collect();
    let constant = |v: &[u32]| v.iter().all(|&c| c == v[0]);
    if !constant(&on_squares) || !constant(&on_rest) {
        return Err(Error::InvalidOperation(format!(
            "quartic residues of {p} are not count-constant on the square classes"
        )));
    }
    let (base_lambda, base_mu) = (on_squares[0] as u64, on_rest[0] as u64);
    if base_lambda + base_mu != q {
        return Err(Error::InvalidOperation(format!(
            "lambda + mu = {} differs from q = {q}",
            base_lambda + base_mu
        )));
    }
    let mut set = r4.elements.clone();
    if with_zero {
        set.insert(0, 0);
    }
    let classification = classify(&group, &as_elements(&set))?;
    let (lambda, mu) = if with_zero {
        (base_lambda + 1, base_mu)
    } else {
        (base_lambda, base_mu)
    };
    Ok(QuarticGaussian {
        p,
        q,
        with_zero,
        set,
        lambda,
        mu,
        base_lambda,
        base_mu,
        classification,
    })
}

/// `Some(a)` with `a >= 1` and `p = offset + 4 a^2`.
pub fn represent_as(p: u64, offset: u64) -> Option<u64> {
    if p <= offset || !(p - offset).is_multiple_of(4) {
        return None;
    }
    let sq = (p - offset) / 4;
    let a = (sq as f64).sqrt().round() as u64;
    (a >= 1 && a * a == sq).then_some(a)
}

/// One of the quadratic-form conditions on `p` and what it implies.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuarticCase {
    /// Human-readable condition, e.g. `p = 4a^2 + 1, a odd`.
    pub condition: String,
    pub a: u64,
    pub with_zero: bool,
    pub implied: ExpectedQuartic,
    /// Whether brute-force classification agrees with the implication.
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExpectedQuartic {
    DifferenceSet { n: u64, m: u64, lambda: u64 },
    AlmostDifferenceSet { n: u64, m: u64, lambda: u64, t: u64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuarticSpecialCases {
    pub p: u64,
    pub cases: Vec<QuarticCase>,
}

impl QuarticSpecialCases {
    pub fn all_verified(&self) -> bool {
        self.cases.iter().all(|c| c.verified)
    }
}

/// Checks the four representability conditions `p = 4a^2 + 1` (a odd),
/// `p = 4a^2 + 9` (a odd), `p = 9 + 4a^2` or `25 + 4a^2`, and
/// `p = 1 + 4a^2` or `49 + 4a^2`, and verifies each implied design.
pub fn quartic_special_cases(p: u64) -> Result<QuarticSpecialCases> {
    require_odd_prime(p)?;
    if p % 4 != 1 {
        return Err(Error::Domain(format!("quartic residues need p = 1 mod 4, got {p}")));
    }
    let group = GroupSpec::cyclic(p as u32)?;
    let r4 = residues(p, 4)?.elements;
    let mut with0 = r4.clone();
    with0.insert(0, 0);
    let bare = classify(&group, &as_elements(&r4))?;
    let zero = classify(&group, &as_elements(&with0))?;

    let mut cases = Vec::new();
    let ds_check = |c: &Classification, m: u64, lambda: u64| {
        c.difference_set
            .as_ref()
            .is_some_and(|d| d.m as u64 == m && d.lambda as u64 == lambda)
    };
    let almost_check = |c: &Classification, m: u64, lambda: u64, t: u64| {
        c.almost
            .iter()
            .any(|a| a.m as u64 == m && a.lambda as u64 == lambda && a.t as u64 == t)
    };

    if let Some(a) = represent_as(p, 1).filter(|a| a % 2 == 1) {
        let (m, lambda) = ((p - 1) / 4, (p - 5) / 16);
        cases.push(QuarticCase {
            condition: "p = 4a^2 + 1, a odd".into(),
            a,
            with_zero: false,
            implied: ExpectedQuartic::DifferenceSet { n: p, m, lambda },
            verified: (p - 5).is_multiple_of(16) && ds_check(&bare, m, lambda),
        });
    }
    if let Some(a) = represent_as(p, 9).filter(|a| a % 2 == 1) {
        let (m, lambda) = (p.div_ceil(4), (p + 3) / 16);
        cases.push(QuarticCase {
            condition: "p = 4a^2 + 9, a odd".into(),
            a,
            with_zero: true,
            implied: ExpectedQuartic::DifferenceSet { n: p, m, lambda },
            verified: (p + 3).is_multiple_of(16) && ds_check(&zero, m, lambda),
        });
    }
    for offset in [9, 25] {
        if let Some(a) = represent_as(p, offset) {
            let (m, t) = ((p - 1) / 4, (p - 1) / 2);
            let lambda = p.saturating_sub(13) / 16;
            cases.push(QuarticCase {
                condition: format!("p = {offset} + 4a^2"),
                a,
                with_zero: false,
                implied: ExpectedQuartic::AlmostDifferenceSet { n: p, m, lambda, t },
                verified: p >= 13 && (p - 13).is_multiple_of(16) && almost_check(&bare, m, lambda, t),
            });
        }
    }
    for offset in [1, 49] {
        if let Some(a) = represent_as(p, offset) {
            let (m, t) = (p.div_ceil(4), (p - 1) / 2);
            let lambda = (p - 5) / 16;
            cases.push(QuarticCase {
                condition: format!("p = {offset} + 4a^2"),
                a,
                with_zero: true,
                implied: ExpectedQuartic::AlmostDifferenceSet { n: p, m, lambda, t },
                verified: (p - 5).is_multiple_of(16) && almost_check(&zero, m, lambda, t),
            });
        }
    }
    Ok(QuarticSpecialCases { p, cases })
}

#[cfg(test)]
mod tests {
    use super::*;

    const ODD_PRIMES_TO_97: [u64; 24] = [
        3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
        97,
    ];

    #[test]
    fn primality_and_factorization() {
        let primes: Vec<u64> = (0..100).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes.len(), 25);
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(prime_power(81), Some((3, 4)));
        assert_eq!(prime_power(12), None);
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre(2, 7).unwrap(), 1);
        assert_eq!(legendre(1, 13).unwrap(), 1);
        assert_eq!(legendre(2, 13).unwrap(), -1);
        assert!(matches!(legendre(0, 7), Err(Error::Domain(_))));
        assert!(matches!(legendre(14, 7), Err(Error::Domain(_))));
        assert!(legendre(3, 9).is_err());
    }

    #[test]
    fn legendre_is_multiplicative() {
        for p in ODD_PRIMES_TO_97 {
            for a in 1..p as i64 {
                for b in 1..p as i64 {
                    let ab = legendre(a * b, p).unwrap();
                    assert_eq!(ab, legendre(a, p).unwrap() * legendre(b, p).unwrap());
                }
            }
        }
    }

    #[test]
    fn two_is_a_square_exactly_for_p_plus_minus_one_mod_8() {
        for p in ODD_PRIMES_TO_97 {
            let expect = if p % 8 == 1 || p % 8 == 7 { 1 } else { -1 };
            assert_eq!(legendre(2, p).unwrap(), expect, "p = {p}");
        }
    }

    #[test]
    fn quartic_symbol_examples() {
        assert_eq!(residues(13, 4).unwrap().elements, vec![1, 3, 9]);
        assert_eq!(quartic_symbol(3, 13).unwrap(), 1);
        assert_eq!(quartic_symbol(1, 13).unwrap(), 1);
        assert_eq!(quartic_symbol(4, 13).unwrap(), -1);
        assert!(quartic_symbol(2, 13).is_err());
        assert!(quartic_symbol(2, 7).is_err());
    }

    #[test]
    fn residue_class_sizes() {
        for p in ODD_PRIMES_TO_97 {
            assert_eq!(residues(p, 2).unwrap().elements.len() as u64, (p - 1) / 2);
            if p % 4 == 1 {
                assert_eq!(residues(p, 4).unwrap().elements.len() as u64, (p - 1) / 4);
            }
        }
    }

    #[test]
    fn gauss_sum_examples() {
        let g = gauss_sum(1, 13).unwrap();
        assert!((g.value - Complex64::new(13f64.sqrt(), 0.0)).norm() < 1e-9);
        let g = gauss_sum(1, 7).unwrap();
        assert!((g.value - Complex64::new(0.0, 7f64.sqrt())).norm() < 1e-9);
        let g = gauss_sum(2, 13).unwrap();
        assert!((g.value - Complex64::new(-(13f64.sqrt()), 0.0)).norm() < 1e-9);
    }

    #[test]
    fn gauss_sums_match_closed_form() {
        for p in ODD_PRIMES_TO_97 {
            for a in 1..p as i64 {
                let g = gauss_sum(a, p).unwrap();
                assert!(g.deviation() < 1e-9, "p={p} a={a}");
                assert!((g.value.norm() - (p as f64).sqrt()).abs() < 1e-9);
                assert!(half_gauss_sum(a, p).unwrap().deviation() < 1e-9);
            }
        }
    }

    #[test]
    fn half_gauss_sum_cases() {
        let r13 = 13f64.sqrt();
        let h = half_gauss_sum(1, 13).unwrap();
        assert!((h.value - Complex64::new((1.0 + r13) / 2.0, 0.0)).norm() < 1e-9);
        let h = half_gauss_sum(2, 13).unwrap();
        assert!((h.value - Complex64::new((1.0 - r13) / 2.0, 0.0)).norm() < 1e-9);
        let h = half_gauss_sum(2, 7).unwrap();
        assert!((h.value - Complex64::new(0.5, 7f64.sqrt() / 2.0)).norm() < 1e-9);
        let h = half_gauss_sum(3, 7).unwrap();
        assert!((h.value - Complex64::new(0.5, -(7f64.sqrt()) / 2.0)).norm() < 1e-9);
    }

    #[test]
    fn paley_sets() {
        let s7 = paley_pds(7).unwrap();
        assert_eq!(s7.set, vec![1, 2, 4]);
        assert!(s7.verified);
        assert_eq!(
            s7.expected,
            ExpectedDesign::DifferenceSet { n: 7, m: 3, lambda: 1 }
        );
        for (p, lambda, mu) in [(13, 2, 3), (17, 3, 4)] {
            let s = paley_pds(p).unwrap();
            assert!(s.verified, "p = {p}");
            assert_eq!(
                s.expected,
                ExpectedDesign::PartialDifferenceSet { n: p, m: (p - 1) / 2, lambda, mu }
            );
        }
    }

    #[test]
    fn quartic_cosets() {
        let c = quartic_coset_decomposition(13).unwrap();
        assert_eq!(c.generator, 2);
        assert_eq!(c.cosets[0], vec![1, 3, 9]);
        assert_eq!(c.cosets[1], vec![2, 5, 6]);
        assert_eq!(c.cosets[2], vec![4, 10, 12]);
        assert_eq!(c.cosets[3], vec![7, 8, 11]);
        for p in [13, 17, 29, 37, 41, 53, 61, 73, 89, 97] {
            let c = quartic_coset_decomposition(p).unwrap();
            let mut all: Vec<u64> = c.cosets.iter().flatten().copied().collect();
            all.sort_unstable();
            assert_eq!(all, (1..p).collect::<Vec<_>>(), "p = {p}");
            assert!(c.cosets.iter().all(|s| s.len() as u64 == (p - 1) / 4));
        }
        assert!(quartic_coset_decomposition(7).is_err());
    }

    #[test]
    fn minus_one_and_minus_two_land_in_the_expected_cosets() {
        for p in [13u64, 29, 37, 53, 61] {
            let c = quartic_coset_decomposition(p).unwrap();
            assert_eq!(c.generator, 2);
            assert_eq!(c.coset_of(p - 1), Some(2), "-1 in 4R4 for p = {p}");
            assert_eq!(c.coset_of(p - 2), Some(3), "-2 in 8R4 for p = {p}");
        }
    }

    #[test]
    fn quartic_pair_counts_are_constant_on_cosets() {
        for p in [13u64, 17, 29, 37, 41, 53, 61] {
            let c = quartic_coset_decomposition(p).unwrap();
            for coset in &c.cosets {
                let first = quartic_difference_pairs(p, coset[0]).unwrap();
                for &a in coset {
                    assert_eq!(quartic_difference_pairs(p, a).unwrap(), first, "p={p} a={a}");
                }
            }
        }
    }

    #[test]
    fn quartic_gaussian_sets() {
        let g = quartic_gaussian_ds(13, false).unwrap();
        assert_eq!(g.set, vec![1, 3, 9]);
        assert_eq!((g.lambda, g.mu), (0, 1));
        assert!(g.classification.gaussian.is_some());
        assert!(g.classification.almost.is_some());

        let g = quartic_gaussian_ds(29, false).unwrap();
        assert_eq!(g.lambda + g.mu, 3);

        let g = quartic_gaussian_ds(13, true).unwrap();
        assert_eq!(g.set, vec![0, 1, 3, 9]);
        assert_eq!((g.lambda, g.mu), (1, 1));
        assert_eq!(g.classification.difference_set.as_ref().unwrap().lambda, 1);

        assert!(quartic_gaussian_ds(17, false).is_err());
        assert!(quartic_gaussian_ds(5, false).is_err());
    }

    #[test]
    fn pair_counts_are_sixteen_times_difference_counts() {
        for p in [13u64, 29, 37, 53, 61] {
            let g = quartic_gaussian_ds(p, false).unwrap();
            assert_eq!(quartic_difference_pairs(p, 1).unwrap(), 16 * g.base_lambda);
            assert_eq!(quartic_difference_pairs(p, 2).unwrap(), 16 * g.base_mu);
        }
    }

    #[test]
    fn special_cases() {
        let c = quartic_special_cases(37).unwrap();
        assert!(c.all_verified());
        assert!(c.cases.iter().any(|k| k.implied
            == ExpectedQuartic::DifferenceSet { n: 37, m: 9, lambda: 2 }));

        let c = quartic_special_cases(13).unwrap();
        assert!(c.all_verified());
        assert!(c.cases.iter().any(|k| k.with_zero
            && k.implied == ExpectedQuartic::DifferenceSet { n: 13, m: 4, lambda: 1 }));

        let c = quartic_special_cases(29).unwrap();
        assert!(c.all_verified());
        assert!(c.cases.iter().any(|k| k.implied
            == ExpectedQuartic::AlmostDifferenceSet { n: 29, m: 7, lambda: 1, t: 14 }));
    }
}
