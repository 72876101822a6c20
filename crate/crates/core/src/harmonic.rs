//! Harmonic frames: `f_x = (rho_{g_1}(x), ..., rho_{g_m}(x)) / sqrt(m)` for
//! `x` in `G`. The frame is never materialized unless tightness or the
//! modulation operators are requested; angle profiles use
//! `<f_x, f_y> = <f_{x-y}, f_0>` and need only `n - 1` character sums.

use ndarray::Array2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::difference::subset_indices;
use crate::error::{Error, Result};
use crate::group::{Element, GroupSpec};
use crate::symbolic::{recognize_angle_square, QuadraticSurd};
use crate::tolerance;

/// Bound on `n * m^2` for materializing frames and modulation operators.
pub const MAX_MATERIALIZED: usize = 1 << 26;

/// A group together with an ordered generator subset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameSpec {
    group: GroupSpec,
    generators: Vec<Element>,
    gen_idx: Vec<usize>,
}

impl FrameSpec {
    pub fn new(group: &GroupSpec, generators: &[Element]) -> Result<Self> {
        let gen_idx = subset_indices(group, generators)?;
        Self::check_size(group, gen_idx.len())?;
        Ok(FrameSpec {
            group: group.clone(),
            generators: generators.to_vec(),
            gen_idx,
        })
    }

    /// From element indices; duplicates are rejected.
    pub fn from_indices(group: &GroupSpec, gen_idx: &[usize]) -> Result<Self> {
        let generators: Vec<Element> = gen_idx
            .iter()
            .map(|&i| {
                if i < group.order() {
                    Ok(group.element(i))
                } else {
                    Err(Error::InvalidSubset(format!("index {i} out of range")))
                }
            })
            .collect::<Result<_>>()?;
        Self::new(group, &generators)
    }

    fn check_size(group: &GroupSpec, m: usize) -> Result<()> {
        if m == 0 || m > group.order() {
            return Err(Error::InvalidSubset(format!(
                "need 1 <= m <= {}, got {m}",
                group.order()
            )));
        }
        Ok(())
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.gen_idx
    }

    pub fn m(&self) -> usize {
        self.gen_idx.len()
    }

    pub fn n(&self) -> usize {
        self.group.order()
    }

    /// Coordinates of `f_x`.
    pub fn vector(&self, x: &Element) -> Result<Vec<Complex64>> {
        let xi = self.group.index_of(x)?;
        Ok(self.vector_idx(xi))
    }

    fn vector_idx(&self, x: usize) -> Vec<Complex64> {
        let scale = 1.0 / (self.m() as f64).sqrt();
        self.gen_idx
            .iter()
            .map(|&g| self.group.character_value_idx(g, x) * scale)
            .collect()
    }

    /// The `n x m` synthesis matrix with rows `f_x`.
    pub fn frame_matrix(&self) -> Result<Array2<Complex64>> {
        self.check_materializable()?;
        let (n, m) = (self.n(), self.m());
        let mut out = Array2::zeros((n, m));
        for x in 0..n {
            for (j, v) in self.vector_idx(x).into_iter().enumerate() {
                out[[x, j]] = v;
            }
        }
        Ok(out)
    }

    fn check_materializable(&self) -> Result<()> {
        let size = self.n().saturating_mul(self.m()).saturating_mul(self.m());
        if size > MAX_MATERIALIZED {
            return Err(Error::Capacity {
                what: "n * m^2",
                actual: size as u128,
                limit: MAX_MATERIALIZED as u128,
            });
        }
        Ok(())
    }

    /// `sum_j rho_{g_j}(z)`.
    pub fn character_sum_idx(&self, z: usize) -> Complex64 {
        self.gen_idx
            .iter()
            .map(|&g| self.group.character_value_idx(g, z))
            .sum()
    }

    /// `<f_x, f_y> = (1/m) sum_j rho_{g_j}(x - y)`.
    pub fn inner_product(&self, x: &Element, y: &Element) -> Result<Complex64> {
        let z = self.group.sub_idx(self.group.index_of(x)?, self.group.index_of(y)?);
        Ok(self.character_sum_idx(z) / self.m() as f64)
    }

    /// `<f_x, f_y>` summed coordinate by coordinate, without the shift reduction.
    pub fn inner_product_direct(&self, x: &Element, y: &Element) -> Result<Complex64> {
        let fx = self.vector(x)?;
        let fy = self.vector(y)?;
        Ok(fx.iter().zip(&fy).map(|(a, b)| a * b.conj()).sum())
    }

    /// Sorted phase numerators (over the exponent) of the terms of
    /// `<f_x, f_y>`, computed coordinatewise as `phase(g_j, x) - phase(g_j, y)`.
    pub fn inner_product_phases(&self, x: &Element, y: &Element) -> Result<Vec<u64>> {
        let (xi, yi) = (self.group.index_of(x)?, self.group.index_of(y)?);
        let big_n = self.group.exponent();
        let mut v: Vec<u64> = self
            .gen_idx
            .iter()
            .map(|&g| {
                (self.group.phase_idx(g, xi) + big_n - self.group.phase_idx(g, yi)) % big_n
            })
            .collect();
        v.sort_unstable();
        Ok(v)
    }

    /// `|<f_z, f_0>|` for every nonzero `z`, in element order.
    pub fn magnitudes(&self) -> Vec<f64> {
        let inv_m = 1.0 / self.m() as f64;
        (1..self.n())
            .map(|z| self.character_sum_idx(z).norm() * inv_m)
            .collect()
    }

    /// `|<f_x, f_y>|` over all `y != x`, sorted.
    pub fn magnitudes_from(&self, x: &Element) -> Result<Vec<f64>> {
        let xi = self.group.index_of(x)?;
        let inv_m = 1.0 / self.m() as f64;
        let mut v: Vec<f64> = (0..self.n())
            .filter(|&y| y != xi)
            .map(|y| self.character_sum_idx(self.group.sub_idx(xi, y)).norm() * inv_m)
            .collect();
        v.sort_by(f64::total_cmp);
        Ok(v)
    }

    pub fn angle_profile(&self) -> AngleProfile {
        self.angle_profile_with(tolerance::ANGLE_CLUSTER)
    }

    pub fn angle_profile_with(&self, tol: f64) -> AngleProfile {
        AngleProfile::from_magnitudes(self.magnitudes(), tol)
    }

    /// `sum_x f_x f_x^*` against `(n/m) I`.
    pub fn verify_tightness(&self) -> Result<TightnessReport> {
        self.check_materializable()?;
        let (n, m) = (self.n(), self.m());
        let mut op = Array2::<Complex64>::zeros((m, m));
        for x in 0..n {
            let f = self.vector_idx(x);
            for a in 0..m {
                for b in 0..m {
                    op[[a, b]] += f[a] * f[b].conj();
                }
            }
        }
        let bound = n as f64 / m as f64;
        let mut max_deviation: f64 = 0.0;
        for a in 0..m {
            for b in 0..m {
                let target = if a == b { bound } else { 0.0 };
                max_deviation = max_deviation.max((op[[a, b]] - target).norm());
            }
        }
        Ok(TightnessReport {
            frame_bound: bound,
            max_deviation,
            tight: max_deviation < tolerance::TIGHTNESS,
        })
    }

    /// True iff every `rho_{g_j}(x)` is `+1` or `-1`, decided on exact phases.
    pub fn is_real_frame(&self) -> bool {
        let big_n = self.group.exponent();
        self.gen_idx.iter().all(|&g| {
            (0..self.n()).all(|x| {
                let k = self.group.phase_idx(g, x);
                k == 0 || 2 * k == big_n
            })
        })
    }

    pub fn classify_angularity(&self) -> Result<Angularity> {
        let profile = self.angle_profile();
        let tight = self.verify_tightness().map(|t| t.tight).unwrap_or(true);
        angularity_of(&profile, self.n(), self.m(), tight)
    }

    /// `X_xi` from the closed form: `n/m` at `(a, b)` with `g_b - g_a = xi`.
    pub fn modulation_operator(&self, xi: &Element) -> Result<ModulationOperator> {
        let xi_idx = self.group.index_of(xi)?;
        self.check_materializable()?;
        let m = self.m();
        let value = self.n() as f64 / m as f64;
        let mut entries = Array2::<Complex64>::zeros((m, m));
        let mut pairs = 0usize;
        for a in 0..m {
            for b in 0..m {
                if self.group.sub_idx(self.gen_idx[b], self.gen_idx[a]) == xi_idx {
                    entries[[a, b]] = Complex64::new(value, 0.0);
                    pairs += 1;
                }
            }
        }
        Ok(ModulationOperator {
            xi: xi.clone(),
            entries,
            hs_norm_sq: pairs as f64 * value * value,
        })
    }

    /// `X_xi = sum_x rho_xi(x) f_x f_x^*`, summed over the group.
    pub fn modulation_operator_definitional(&self, xi: &Element) -> Result<Array2<Complex64>> {
        let xi_idx = self.group.index_of(xi)?;
        self.check_materializable()?;
        Ok(self.definitional_idx(xi_idx))
    }

    fn definitional_idx(&self, xi: usize) -> Array2<Complex64> {
        let m = self.m();
        let mut out = Array2::<Complex64>::zeros((m, m));
        for x in 0..self.n() {
            let w = self.group.character_value_idx(xi, x);
            let f = self.vector_idx(x);
            for a in 0..m {
                let wa = w * f[a];
                for b in 0..m {
                    out[[a, b]] += wa * f[b].conj();
                }
            }
        }
        out
    }

    /// Checks the closed form of every `X_xi`, their Hilbert-Schmidt
    /// orthogonality, Fourier inversion of `f_x f_x^*`, and the encoding
    /// `n^2 |<f_x, f_y>|^2 = sum_xi rho_{y-x}(xi) ||X_xi||^2`.
    pub fn verify_modulation_identities(&self) -> Result<ModulationReport> {
        self.check_materializable()?;
        let (n, m) = (self.n(), self.m());
        let g = &self.group;
        let defs: Vec<Array2<Complex64>> = (0..n).map(|xi| self.definitional_idx(xi)).collect();

        let mut closed_form_max: f64 = 0.0;
        let mut norms = Vec::with_capacity(n);
        for (xi, d) in defs.iter().enumerate() {
            let closed = self.modulation_operator(&g.element(xi))?;
            for (u, v) in d.iter().zip(closed.entries.iter()) {
                closed_form_max = closed_form_max.max((u - v).norm());
            }
            norms.push(closed.hs_norm_sq);
        }

        let mut hs_orthogonality_max: f64 = 0.0;
        let mut hs_norm_max: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                let ip: Complex64 = defs[i]
                    .iter()
                    .zip(defs[j].iter())
                    .map(|(u, v)| u * v.conj())
                    .sum();
                if i == j {
                    hs_norm_max = hs_norm_max.max((ip.re - norms[i]).abs());
                } else {
                    hs_orthogonality_max = hs_orthogonality_max.max(ip.norm());
                }
            }
        }

        let mut fourier_inversion_max: f64 = 0.0;
        for x in 0..n {
            let f = self.vector_idx(x);
            let mut recon = Array2::<Complex64>::zeros((m, m));
            for (xi, d) in defs.iter().enumerate() {
                let w = g.character_value_idx(x, g.neg_idx(xi));
                recon.scaled_add(w, d);
            }
            recon /= Complex64::new(n as f64, 0.0);
            for a in 0..m {
                for b in 0..m {
                    let target = f[a] * f[b].conj();
                    fourier_inversion_max = fourier_inversion_max.max((recon[[a, b]] - target).norm());
                }
            }
        }

        let n2 = (n * n) as f64;
        let inv_m = 1.0 / m as f64;
        let mut angle_encoding_max: f64 = 0.0;
        for z in 0..n {
            // Both sides depend on x, y only through y - x.
            let lhs = n2 * (self.character_sum_idx(g.neg_idx(z)) * inv_m).norm_sqr();
            let rhs: Complex64 = (0..n)
                .map(|xi| g.character_value_idx(z, xi) * norms[xi])
                .sum();
            angle_encoding_max = angle_encoding_max.max((rhs - lhs).norm());
        }

        let tol = tolerance::MODULATION;
        // Entries and norms scale with n/m and n^2/m^2; compare relative to that.
        let scale = (n as f64 / m as f64).max(1.0);
        let passed = closed_form_max < tolerance::MODULATION_ENTRY * scale
            && hs_orthogonality_max < tol * scale * scale
            && hs_norm_max < tol * scale * scale
            && fourier_inversion_max < tol
            && angle_encoding_max < tol * n2;
        Ok(ModulationReport {
            closed_form_max,
            hs_orthogonality_max,
            hs_norm_max,
            fourier_inversion_max,
            angle_encoding_max,
            passed,
        })
    }

    /// Largest spread between the sorted angle multisets seen from each
    /// vector. Gram rows come from the materialized vectors, not from the
    /// shift identity, so this is an independent check.
    pub fn equidistribution_deviation(&self) -> Result<f64> {
        self.check_materializable()?;
        let n = self.n();
        let vectors: Vec<Vec<Complex64>> = (0..n).map(|x| self.vector_idx(x)).collect();
        let row = |x: usize| {
            let mut v: Vec<f64> = (0..n)
                .filter(|&y| y != x)
                .map(|y| {
                    vectors[x]
                        .iter()
                        .zip(&vectors[y])
                        .map(|(a, b)| a * b.conj())
                        .sum::<Complex64>()
                        .norm()
                })
                .collect();
            v.sort_by(f64::total_cmp);
            v
        };
        let base = row(0);
        let mut worst: f64 = 0.0;
        for x in 1..n {
            for (u, v) in base.iter().zip(&row(x)) {
                worst = worst.max((u - v).abs());
            }
        }
        Ok(worst)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TightnessReport {
    pub frame_bound: f64,
    pub max_deviation: f64,
    pub tight: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModulationReport {
    pub closed_form_max: f64,
    pub hs_orthogonality_max: f64,
    pub hs_norm_max: f64,
    pub fourier_inversion_max: f64,
    pub angle_encoding_max: f64,
    pub passed: bool,
}

/// The operator `X_xi` of a harmonic frame.
#[derive(Clone, Debug, PartialEq)]
pub struct ModulationOperator {
    pub xi: Element,
    pub entries: Array2<Complex64>,
    pub hs_norm_sq: f64,
}

impl ModulationOperator {
    /// Index pairs `(a, b)` carrying a nonzero entry.
    pub fn support(&self) -> Vec<(usize, usize)> {
        self.entries
            .indexed_iter()
            .filter(|(_, v)| v.norm() > 0.0)
            .map(|(ab, _)| ab)
            .collect()
    }
}

/// One frame angle with its multiplicity among the `n - 1` nonzero shifts.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrameAngle {
    pub value: f64,
    pub multiplicity: usize,
    /// Closed form of the angle, when recognized.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symbolic: Option<String>,
    /// Exact square of the angle, when recognized.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub squared: Option<QuadraticSurd>,
}

/// Distinct frame angles, ascending, with multiplicities.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AngleProfile {
    pub angles: Vec<FrameAngle>,
    pub tolerance: f64,
    /// Two clusters are closer than the ambiguity margin; clusters were
    /// kept apart, not merged.
    pub ambiguous: bool,
}

impl AngleProfile {
    /// Clusters sorted magnitudes: a gap above `tol` starts a new angle.
    pub fn from_magnitudes(mut mags: Vec<f64>, tol: f64) -> Self {
        mags.sort_by(f64::total_cmp);
        let mut clusters: Vec<(f64, f64, usize)> = Vec::new(); // (sum, last, count)
        for v in mags {
            match clusters.last_mut() {
                Some((sum, last, count)) if v - *last <= tol => {
                    *sum += v;
                    *last = v;
                    *count += 1;
                }
                _ => clusters.push((v, v, 1)),
            }
        }
        let angles: Vec<FrameAngle> = clusters
            .iter()
            .map(|&(sum, _, count)| FrameAngle {
                value: (sum / count as f64).clamp(0.0, 1.0),
                multiplicity: count,
                symbolic: None,
                squared: None,
            })
            .collect();
        let margin = tol * tolerance::CLUSTER_AMBIGUITY_FACTOR;
        let ambiguous = angles.windows(2).any(|w| w[1].value - w[0].value < margin);
        AngleProfile {
            angles,
            tolerance: tol,
            ambiguous,
        }
    }

    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    pub fn values(&self) -> Vec<f64> {
        self.angles.iter().map(|a| a.value).collect()
    }

    pub fn multiplicities(&self) -> Vec<usize> {
        self.angles.iter().map(|a| a.multiplicity).collect()
    }

    pub fn total_multiplicity(&self) -> usize {
        self.angles.iter().map(|a| a.multiplicity).sum()
    }

    /// `sum_l tau_l alpha_l^2 - (n - m)/m`.
    pub fn tight_identity_residual(&self, n: usize, m: usize) -> f64 {
        let lhs: f64 = self
            .angles
            .iter()
            .map(|a| a.multiplicity as f64 * a.value * a.value)
            .sum();
        lhs - (n as f64 - m as f64) / m as f64
    }

    /// Same number of angles, each within `tol` of the sorted target.
    pub fn matches(&self, target: &[f64], tol: f64) -> bool {
        if target.len() != self.angles.len() {
            return false;
        }
        let mut t = target.to_vec();
        t.sort_by(f64::total_cmp);
        self.angles
            .iter()
            .zip(&t)
            .all(|(a, b)| (a.value - b).abs() <= tol)
    }

    /// Fills in closed forms where the recognizer finds one.
    pub fn with_symbolic(mut self, m: usize, exponent: u64) -> Self {
        for a in &mut self.angles {
            if let Some(q) = recognize_angle_square(a.value * a.value, m, exponent) {
                a.symbolic = Some(q.sqrt_display());
                a.squared = Some(q);
            }
        }
        self
    }
}

/// Angle count together with the equiangular and biangular tight flags.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Angularity {
    Etf,
    Btf,
    Angular { d: usize },
}

impl Angularity {
    pub fn d(&self) -> Option<usize> {
        match self {
            Angularity::Etf => Some(1),
            Angularity::Btf => Some(2),
            Angularity::Angular { d } => Some(*d),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Angularity::Etf => "ETF".into(),
            Angularity::Btf => "BTF".into(),
            Angularity::Angular { d } => format!("{d}-angular"),
        }
    }
}

/// ETF iff one angle at the Welch bound; BTF iff two angles and tight.
pub fn angularity_of(profile: &AngleProfile, n: usize, m: usize, tight: bool) -> Result<Angularity> {
    let d = profile.len();
    if d == 1 && n >= 2 {
        let w = welch_bound(n, m)?;
        if (profile.angles[0].value - w).abs() < tolerance::WELCH_EQUALITY {
            return Ok(Angularity::Etf);
        }
    }
    if d == 2 && tight {
        return Ok(Angularity::Btf);
    }
    Ok(Angularity::Angular { d })
}

/// `sqrt((n - m) / (m (n - 1)))`.
pub fn welch_bound(n: usize, m: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::Domain(format!("Welch bound needs n >= 2, got {n}")));
    }
    if m == 0 || m > n {
        return Err(Error::Domain(format!("Welch bound needs 1 <= m <= n, got m = {m}")));
    }
    Ok(((n - m) as f64 / (m as f64 * (n - 1) as f64)).sqrt())
}

/// Multiplicities `(tau_1, tau_2)` of the angles of a biangular tight frame,
/// forced by the tight-frame identity.
pub fn btf_multiplicities_from_angles(n: usize, m: usize, alpha1: f64, alpha2: f64) -> Result<(usize, usize)> {
    let (t1, t2) = btf_multiplicities_raw(n, m, alpha1, alpha2)?;
    let round = |t: f64| {
        let r = t.round();
        ((t - r).abs() < tolerance::MULTIPLICITY_INTEGRALITY && r >= 0.0).then_some(r as usize)
    };
    match (round(t1), round(t2)) {
        (Some(a), Some(b)) => Ok((a, b)),
        _ => Err(Error::InconsistentAngles(format!(
            "multiplicities {t1}, {t2} are not nonnegative integers"
        ))),
    }
}

/// Unrounded `(tau_1, tau_2)`.
pub fn btf_multiplicities_raw(n: usize, m: usize, alpha1: f64, alpha2: f64) -> Result<(f64, f64)> {
    if n < 2 || m == 0 || m > n {
        return Err(Error::Domain(format!("invalid frame size n = {n}, m = {m}")));
    }
    let in_range = |a: f64| (0.0..=1.0).contains(&a);
    if !in_range(alpha1) || !in_range(alpha2) {
        return Err(Error::InconsistentAngles("angles must lie in [0, 1]".into()));
    }
    let (a1, a2) = (alpha1 * alpha1, alpha2 * alpha2);
    if (a2 - a1).abs() < tolerance::ANGLE_CLUSTER {
        return Err(Error::InconsistentAngles("the two angles coincide".into()));
    }
    let (nf, mf) = (n as f64, m as f64);
    let w2 = (nf - mf) / (mf * (nf - 1.0));
    let t1 = (nf - 1.0) / (a2 - a1) * (a2 - w2);
    Ok((t1, nf - 1.0 - t1))
}

/// Serialized report on one harmonic frame.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrameReport {
    pub schema: u32,
    pub group: GroupSpec,
    pub subset: Vec<Element>,
    pub n: usize,
    pub m: usize,
    pub angles: Vec<FrameAngle>,
    pub angularity: Angularity,
    pub is_tight: bool,
    pub is_etf: bool,
    pub is_btf: bool,
    /// `None` for the single-vector group of order 1, which never occurs.
    pub welch_bound: Option<f64>,
    pub real_frame: bool,
    pub max_tightness_deviation: f64,
    pub tolerance: f64,
    pub ambiguous_clustering: bool,
}

impl FrameReport {
    pub fn build(frame: &FrameSpec, tol: f64) -> Result<Self> {
        let (n, m) = (frame.n(), frame.m());
        let profile = frame
            .angle_profile_with(tol)
            .with_symbolic(m, frame.group().exponent());
        let tight = frame.verify_tightness()?;
        let angularity = angularity_of(&profile, n, m, tight.tight)?;
        Ok(FrameReport {
            schema: 1,
            group: frame.group().clone(),
            subset: frame.generators().to_vec(),
            n,
            m,
            angularity,
            is_tight: tight.tight,
            is_etf: angularity == Angularity::Etf,
            is_btf: angularity == Angularity::Btf,
            welch_bound: welch_bound(n, m).ok(),
            real_frame: frame.is_real_frame(),
            max_tightness_deviation: tight.max_deviation,
            tolerance: tol,
            ambiguous_clustering: profile.ambiguous,
            angles: profile.angles,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frame(g: &str, s: &str) -> FrameSpec {
        let g: GroupSpec = g.parse().unwrap();
        let s = g.parse_subset(s).unwrap();
        FrameSpec::new(&g, &s).unwrap()
    }

    fn el(f: &FrameSpec, s: &str) -> Element {
        f.group().parse_element(s).unwrap()
    }

    #[test]
    fn inner_products() {
        let f = frame("Z6", "0,1,3");
        let ip = f.inner_product(&el(&f, "2"), &el(&f, "0")).unwrap();
        assert!((ip.norm() - 1.0 / 3f64.sqrt()).abs() < 1e-12);
        let one = f.inner_product(&el(&f, "4"), &el(&f, "4")).unwrap();
        assert!((one - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        let f = frame("Z7", "0,1,3");
        let ip = f.inner_product(&el(&f, "1"), &el(&f, "0")).unwrap();
        assert!((ip.norm() - 2f64.sqrt() / 3.0).abs() < 1e-12);
    }

    #[test]
    fn direct_and_reduced_inner_products_agree() {
        let f = frame("Z2xZ4", "(0,0),(1,0),(0,1)");
        let g = f.group().clone();
        for x in g.elements() {
            for y in g.elements() {
                let a = f.inner_product(&x, &y).unwrap();
                let b = f.inner_product_direct(&x, &y).unwrap();
                assert!((a - b).norm() < 1e-12);
                let z = g.sub(&x, &y);
                assert_eq!(
                    f.inner_product_phases(&x, &y).unwrap(),
                    f.inner_product_phases(&z, &g.zero()).unwrap()
                );
            }
        }
    }

    #[test]
    fn profiles() {
        let p = frame("Z7", "0,1,3").angle_profile();
        assert_eq!(p.multiplicities(), vec![6]);
        assert!((p.values()[0] - 2f64.sqrt() / 3.0).abs() < 1e-12);

        let p = frame("Z6", "0,1,3").angle_profile();
        assert_eq!(p.multiplicities(), vec![3, 2]);
        assert!((p.values()[0] - 1.0 / 3.0).abs() < 1e-12);
        assert!((p.values()[1] - 1.0 / 3f64.sqrt()).abs() < 1e-12);

        let p = frame("Z9", "0,1,3,4").angle_profile();
        assert_eq!(p.len(), 4);
        assert_eq!(p.total_multiplicity(), 8);
        assert!(!p.ambiguous);
    }

    #[test]
    fn full_character_table_is_orthonormal() {
        let f = frame("Z5", "0,1,2,3,4");
        let p = f.angle_profile();
        assert_eq!(p.len(), 1);
        assert!(p.values()[0].abs() < 1e-12);
        assert_eq!(f.classify_angularity().unwrap(), Angularity::Etf);
    }

    #[test]
    fn clustering_flags_near_collisions() {
        let p = AngleProfile::from_magnitudes(vec![0.1, 0.1 + 5e-7, 0.3], 1e-7);
        assert_eq!(p.len(), 3);
        assert!(p.ambiguous);
        let p = AngleProfile::from_magnitudes(vec![0.1, 0.1 + 5e-8, 0.3], 1e-7);
        assert_eq!(p.multiplicities(), vec![2, 1]);
        assert!(!p.ambiguous);
    }

    #[test]
    fn tightness() {
        for (g, s, bound) in [
            ("Z7", "0,1,3", 7.0 / 3.0),
            ("Z2xZ4", "(0,0),(1,0),(0,1)", 8.0 / 3.0),
            ("Z6", "0", 6.0),
        ] {
            let t = frame(g, s).verify_tightness().unwrap();
            assert!(t.tight);
            assert!((t.frame_bound - bound).abs() < 1e-12);
        }
    }

    #[test]
    fn welch() {
        assert!((welch_bound(7, 3).unwrap() - 2f64.sqrt() / 3.0).abs() < 1e-12);
        assert_eq!(welch_bound(5, 5).unwrap(), 0.0);
        assert!((welch_bound(6, 3).unwrap() - 0.2f64.sqrt()).abs() < 1e-12);
        assert!(matches!(welch_bound(1, 1), Err(Error::Domain(_))));
    }

    #[test]
    fn angularity() {
        assert_eq!(frame("Z7", "0,1,3").classify_angularity().unwrap(), Angularity::Etf);
        assert_eq!(frame("Z6", "0,1,3").classify_angularity().unwrap(), Angularity::Btf);
        assert_eq!(
            frame("Z9", "0,1,3,4").classify_angularity().unwrap(),
            Angularity::Angular { d: 4 }
        );
    }

    #[test]
    fn btf_multiplicities() {
        assert_eq!(
            btf_multiplicities_from_angles(6, 3, 1.0 / 3f64.sqrt(), 1.0 / 3.0).unwrap(),
            (2, 3)
        );
        assert_eq!(
            btf_multiplicities_from_angles(8, 3, 1.0 / 3.0, 5f64.sqrt() / 3.0).unwrap(),
            (5, 2)
        );
        let p = frame("Z13", "1,3,4,9,10,12").angle_profile();
        let v = p.values();
        assert_eq!(btf_multiplicities_from_angles(13, 6, v[0], v[1]).unwrap(), (6, 6));
        assert!(matches!(
            btf_multiplicities_from_angles(6, 3, 0.2, 0.5),
            Err(Error::InconsistentAngles(_))
        ));
        assert!(btf_multiplicities_from_angles(6, 3, 0.5, 0.5).is_err());
    }

    #[test]
    fn modulation_closed_form() {
        let f = frame("Z7", "0,1,3");
        let x = f.modulation_operator(&el(&f, "1")).unwrap();
        assert_eq!(x.support(), vec![(0, 1)]);
        assert!((x.entries[[0, 1]].re - 7.0 / 3.0).abs() < 1e-15);

        let x0 = f.modulation_operator(&el(&f, "0")).unwrap();
        assert_eq!(x0.support(), vec![(0, 0), (1, 1), (2, 2)]);

        let f = frame("Z6", "0,1,3");
        let x = f.modulation_operator(&el(&f, "2")).unwrap();
        assert_eq!(x.support(), vec![(1, 2)]);
        let def = f.modulation_operator_definitional(&el(&f, "2")).unwrap();
        for (u, v) in def.iter().zip(x.entries.iter()) {
            assert!((u - v).norm() < 1e-9);
        }
    }

    #[test]
    fn modulation_identities() {
        for (g, s) in [("Z6", "0,1,3"), ("Z2xZ4", "(0,0),(1,0),(0,1)"), ("Z7", "0,1,3")] {
            let r = frame(g, s).verify_modulation_identities().unwrap();
            assert!(r.passed, "{g} {s}: {r:?}");
        }
        let f = frame("Z7", "0,1,3");
        for xi in 1..7u32 {
            let x = f.modulation_operator(&Element(vec![xi])).unwrap();
            assert!((x.hs_norm_sq - 49.0 / 9.0).abs() < 1e-12);
        }
    }

    #[test]
    fn real_frames() {
        assert!(frame("Z2xZ2xZ2", "(0,0,1),(1,1,0),(1,0,1)").is_real_frame());
        assert!(!frame("Z7", "0,1,3").is_real_frame());
        assert!(frame("Z8", "0,4").is_real_frame());
    }

    #[test]
    fn equidistributed() {
        assert!(frame("Z9", "0,1,3,4").equidistribution_deviation().unwrap() < 1e-12);
    }

    #[test]
    fn report_round_trip() {
        let f = frame("Z6", "0,1,3");
        let r = FrameReport::build(&f, 1e-7).unwrap();
        assert!(r.is_btf && r.is_tight && !r.is_etf);
        assert_eq!(r.angles[0].symbolic.as_deref(), Some("1/3"));
        assert_eq!(r.angles[1].symbolic.as_deref(), Some("sqrt(3)/3"));
        let json = serde_json::to_string(&r).unwrap();
        let back: FrameReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }
}
