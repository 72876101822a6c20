//! Exact values of the form `(a + b sqrt(s)) / d` for squared frame angles,
//! and a small recognizer that recovers them from floats.

use std::fmt;

use serde::{Deserialize, Serialize};

/// `(a + b sqrt(s)) / d` with `s` squarefree, `d > 0` and `gcd(a, b, d) = 1`.
/// Rationals have `b = 0` and `s = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadraticSurd {
    pub a: i128,
    pub b: i128,
    pub s: u64,
    pub d: i128,
}

impl QuadraticSurd {
    pub fn new(a: i128, b: i128, s: u64, d: i128) -> Self {
        assert!(d != 0, "zero denominator");
        let (k, r) = split_square(s);
        let (mut a, mut b, mut s, mut d) = (a, b * k as i128, r, d);
        if s == 1 || b == 0 {
            a += b * s as i128;
            b = 0;
            s = 1;
        }
        if s == 0 {
            b = 0;
            s = 1;
        }
        if d < 0 {
            a = -a;
            b = -b;
            d = -d;
        }
        let g = gcd(gcd(a.unsigned_abs(), b.unsigned_abs()), d.unsigned_abs()) as i128;
        if g > 1 {
            a /= g;
            b /= g;
            d /= g;
        }
        QuadraticSurd { a, b, s, d }
    }

    pub fn rational(num: i128, den: i128) -> Self {
        Self::new(num, 0, 1, den)
    }

    pub fn is_rational(&self) -> bool {
        self.b == 0
    }

    pub fn value(&self) -> f64 {
        (self.a as f64 + self.b as f64 * (self.s as f64).sqrt()) / self.d as f64
    }

    /// `(a - b sqrt(s)) / d`.
    pub fn conjugate(&self) -> Self {
        QuadraticSurd {
            b: -self.b,
            ..*self
        }
    }

    /// Renders `sqrt(self)`, simplified when `self` is rational.
    pub fn sqrt_display(&self) -> String {
        if self.b != 0 {
            return format!("sqrt({self})");
        }
        if self.a == 0 {
            return "0".into();
        }
        // sqrt(a/d) = sqrt(a d) / d = k sqrt(r) / d.
        let (k, r) = split_square((self.a * self.d) as u64);
        let g = gcd(k as u128, self.d as u128) as u64;
        let (k, den) = (k / g, self.d as u64 / g);
        let num = match (k, r) {
            (k, 1) => k.to_string(),
            (1, r) => format!("sqrt({r})"),
            (k, r) => format!("{k}*sqrt({r})"),
        };
        if den == 1 {
            num
        } else {
            format!("{num}/{den}")
        }
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let numer = if self.b == 0 {
            self.a.to_string()
        } else {
            let sign = if self.b < 0 { "-" } else { "+" };
            let mag = self.b.abs();
            let rad = if mag == 1 {
                format!("sqrt({})", self.s)
            } else {
                format!("{mag}*sqrt({})", self.s)
            };
            if self.a == 0 {
                format!("{}{rad}", if self.b < 0 { "-" } else { "" })
            } else {
                format!("({}{sign}{rad})", self.a)
            }
        };
        if self.d == 1 {
            write!(f, "{numer}")
        } else {
            write!(f, "{numer}/{}", self.d)
        }
    }
}

/// `s = k^2 r` with `r` squarefree.
fn split_square(s: u64) -> (u64, u64) {
    if s == 0 {
        return (0, 0);
    }
    let mut k = 1;
    let mut r = 1;
    for (p, e) in crate::number_theory::factorize(s) {
        k *= p.pow(e / 2);
        if e % 2 == 1 {
            r *= p;
        }
    }
    (k, r)
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Squarefree divisors `> 1` of `n`, ascending.
fn squarefree_divisors(n: u64) -> Vec<u64> {
    let primes: Vec<u64> = crate::number_theory::factorize(n)
        .into_iter()
        .map(|(p, _)| p)
        .collect();
    let mut out = Vec::new();
    for mask in 1u32..(1 << primes.len()) {
        out.push(
            primes
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, p)| p)
                .product(),
        );
    }
    out.sort_unstable();
    out
}

/// Recovers `alpha^2` of a harmonic frame angle as a quadratic surd.
///
/// `m^2 alpha^2` is the squared modulus of a sum of `m` roots of unity of
/// order dividing `exponent`, so `4 m^2 alpha^2 = a + b sqrt(s)` with integers
/// `a`, `b` whenever it lies in a quadratic field; `s` then divides `2 N`
/// up to squares. Both the value and its conjugate must lie in `[0, 4 m^2]`.
pub fn recognize_angle_square(alpha_sq: f64, m: usize, exponent: u64) -> Option<QuadraticSurd> {
    const EPS: f64 = 1e-9;
    let scale = 4 * (m as i128) * (m as i128);
    let x = alpha_sq * scale as f64;
    let upper = scale as f64 + EPS;
    let tol = EPS * scale as f64;
    let nearest = x.round();
    if (x - nearest).abs() < tol {
        return Some(QuadraticSurd::rational(nearest as i128, scale));
    }
    for s in squarefree_divisors(2 * exponent.max(1)) {
        let root = (s as f64).sqrt();
        let bmax = (scale as f64 / root).ceil() as i128;
        for b in 1..=bmax {
            for b in [b, -b] {
                let a = (x - b as f64 * root).round();
                if (a + b as f64 * root - x).abs() >= tol {
                    continue;
                }
                let conj = a - b as f64 * root;
                if conj < -tol || conj > upper + tol {
                    continue;
                }
                return Some(QuadraticSurd::new(a as i128, b, s, scale));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization() {
        let q = QuadraticSurd::new(88, 8, 29, 784);
        assert_eq!((q.a, q.b, q.s, q.d), (11, 1, 29, 98));
        let q = QuadraticSurd::new(2, 2, 8, 4);
        assert_eq!((q.a, q.b, q.s, q.d), (1, 2, 2, 2));
        let q = QuadraticSurd::new(1, 3, 4, -2);
        assert_eq!((q.a, q.b, q.s, q.d), (-7, 0, 1, 2));
        assert_eq!(QuadraticSurd::rational(6, 8), QuadraticSurd::rational(3, 4));
    }

    #[test]
    fn display_forms() {
        assert_eq!(QuadraticSurd::rational(1, 9).to_string(), "1/9");
        assert_eq!(QuadraticSurd::new(7, -1, 13, 72).to_string(), "(7-sqrt(13))/72");
        assert_eq!(QuadraticSurd::new(0, 2, 5, 3).to_string(), "2*sqrt(5)/3");
        assert_eq!(QuadraticSurd::rational(1, 9).sqrt_display(), "1/3");
        assert_eq!(QuadraticSurd::rational(5, 9).sqrt_display(), "sqrt(5)/3");
        assert_eq!(QuadraticSurd::rational(1, 3).sqrt_display(), "sqrt(3)/3");
        assert_eq!(QuadraticSurd::rational(2, 9).sqrt_display(), "sqrt(2)/3");
        assert_eq!(QuadraticSurd::rational(0, 9).sqrt_display(), "0");
        assert_eq!(
            QuadraticSurd::new(7, 1, 13, 72).sqrt_display(),
            "sqrt((7+sqrt(13))/72)"
        );
    }

    #[test]
    fn values_and_conjugates() {
        let q = QuadraticSurd::new(3, 1, 5, 2);
        assert!((q.value() - (3.0 + 5f64.sqrt()) / 2.0).abs() < 1e-15);
        assert!((q.conjugate().value() - (3.0 - 5f64.sqrt()) / 2.0).abs() < 1e-15);
    }

    #[test]
    fn recognizes_rational_squares() {
        let q = recognize_angle_square(1.0 / 9.0, 3, 6).unwrap();
        assert_eq!(q, QuadraticSurd::rational(1, 9));
        let q = recognize_angle_square(5.0 / 9.0, 3, 4).unwrap();
        assert_eq!(q, QuadraticSurd::rational(5, 9));
    }

    #[test]
    fn recognizes_paley_13() {
        // Squares of (sqrt(2)/12) sqrt(7 -/+ sqrt(13)).
        for sign in [-1i128, 1] {
            let exact = QuadraticSurd::new(7, sign, 13, 72);
            let q = recognize_angle_square(exact.value(), 6, 13).unwrap();
            assert_eq!(q, exact);
        }
    }

    #[test]
    fn recognizes_quartic_29() {
        let exact = QuadraticSurd::new(88, -8, 29, 784);
        assert_eq!(recognize_angle_square(exact.value(), 7, 29), Some(exact));
    }

    #[test]
    fn gives_up_on_higher_degree() {
        // 2cos(2 pi / 9) lives in a cubic field.
        let c = 2.0 * (2.0 * std::f64::consts::PI / 9.0).cos();
        assert_eq!(recognize_angle_square((1.0 + c) / 16.0 + 0.0123456789, 4, 9), None);
    }
}
