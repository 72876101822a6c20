//! Finite abelian groups `Z_{n1} + ... + Z_{nk}` with a fixed cyclic
//! decomposition, their characters, subgroups and annihilators.
//!
//! Elements are coordinate tuples. Internally every element also has a
//! mixed-radix index with the first coordinate most significant, so index
//! order coincides with lexicographic order on tuples. All set-valued
//! outputs are sorted in that order.
//!
//! Characters are labeled by group elements: `rho_x(y) = exp(2 pi i sum_j x_j y_j / n_j)`.
//! A character value is carried as an exact phase `k / N` (with `N` the group
//! exponent) next to its floating-point value.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest group order the crate will construct.
pub const MAX_GROUP_ORDER: u64 = 1 << 22;

/// Default bound on the group order for subgroup enumeration.
pub const DEFAULT_SUBGROUP_ORDER_CAP: usize = 4096;

/// Hard ceiling on the number of subgroups enumerated.
pub const MAX_SUBGROUP_COUNT: usize = 200_000;

/// A group element as a coordinate tuple.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Element(pub Vec<u32>);

impl Element {
    pub fn new(coords: Vec<u32>) -> Self {
        Element(coords)
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl From<u32> for Element {
    fn from(v: u32) -> Self {
        Element(vec![v])
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            write!(f, "{}", self.0[0])
        } else {
            write!(f, "(")?;
            for (i, c) in self.0.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, ")")
        }
    }
}

/// A value of a character: the exact phase `numerator / denominator` and
/// the complex number `exp(2 pi i numerator / denominator)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CharacterValue {
    pub numerator: u64,
    pub denominator: u64,
    pub value: Complex64,
}

impl CharacterValue {
    /// Phase reduced to lowest terms.
    pub fn reduced_phase(&self) -> (u64, u64) {
        let g = gcd(self.numerator, self.denominator);
        (self.numerator / g, self.denominator / g)
    }
}

/// A finite abelian group given by its cyclic factors.
#[derive(Clone)]
pub struct GroupSpec {
    factors: Vec<u32>,
    order: usize,
    exponent: u64,
    strides: Vec<usize>,
    /// `exponent / n_j` for each factor.
    weights: Vec<u64>,
    roots: Arc<[Complex64]>,
}

impl GroupSpec {
    pub fn new(factors: Vec<u32>) -> Result<Self> {
        if factors.is_empty() || factors.iter().any(|&f| f < 2) {
            return Err(Error::InvalidGroup(format_factors(&factors)));
        }
        let mut order: u64 = 1;
        let mut exponent: u64 = 1;
        for &f in &factors {
            order = order.saturating_mul(f as u64);
            if order > MAX_GROUP_ORDER {
                return Err(Error::Capacity {
                    what: "group order",
                    actual: order as u128,
                    limit: MAX_GROUP_ORDER as u128,
                });
            }
            exponent = lcm(exponent, f as u64);
        }
        let mut strides = vec![1usize; factors.len()];
        for j in (0..factors.len().saturating_sub(1)).rev() {
            strides[j] = strides[j + 1] * factors[j + 1] as usize;
        }
        let weights = factors.iter().map(|&f| exponent / f as u64).collect();
        let roots: Arc<[Complex64]> = (0..exponent)
            .map(|k| unit_root(k, exponent))
            .collect::<Vec<_>>()
            .into();
        Ok(GroupSpec {
            factors,
            order: order as usize,
            exponent,
            strides,
            weights,
            roots,
        })
    }

    pub fn cyclic(n: u32) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn is_cyclic(&self) -> bool {
        self.exponent as usize == self.order
    }

    /// `Some(p)` when the group is `Z_p` for an odd prime `p`.
    pub fn odd_prime_order(&self) -> Option<u64> {
        let n = self.order as u64;
        (self.factors.len() == 1 && n > 2 && crate::number_theory::is_prime(n)).then_some(n)
    }

    pub fn zero(&self) -> Element {
        Element(vec![0; self.rank()])
    }

    pub fn check(&self, x: &Element) -> Result<()> {
        if x.0.len() != self.rank() {
            return Err(self.element_error(x, format!("expected {} coordinates", self.rank())));
        }
        for (j, (&c, &n)) in x.0.iter().zip(&self.factors).enumerate() {
            if c >= n {
                return Err(self.element_error(x, format!("coordinate {j} not in [0, {n})")));
            }
        }
        Ok(())
    }

    fn element_error(&self, x: &Element, reason: String) -> Error {
        Error::InvalidElement {
            element: x.to_string(),
            group: self.to_string(),
            reason,
        }
    }

    pub fn index_of(&self, x: &Element) -> Result<usize> {
        self.check(x)?;
        Ok(self.index_unchecked(&x.0))
    }

    fn index_unchecked(&self, coords: &[u32]) -> usize {
        coords
            .iter()
            .zip(&self.strides)
            .map(|(&c, &s)| c as usize * s)
            .sum()
    }

    pub fn element(&self, index: usize) -> Element {
        Element(self.coords_of(index))
    }

    fn coords_of(&self, index: usize) -> Vec<u32> {
        debug_assert!(index < self.order);
        self.strides
            .iter()
            .zip(&self.factors)
            .map(|(&s, &n)| ((index / s) % n as usize) as u32)
            .collect()
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.order).map(move |i| self.element(i))
    }

    pub fn add(&self, x: &Element, y: &Element) -> Element {
        Element(
            x.0.iter()
                .zip(&y.0)
                .zip(&self.factors)
                .map(|((&a, &b), &n)| ((a as u64 + b as u64) % n as u64) as u32)
                .collect(),
        )
    }

    pub fn neg(&self, x: &Element) -> Element {
        Element(
            x.0.iter()
                .zip(&self.factors)
                .map(|(&a, &n)| if a == 0 { 0 } else { n - a })
                .collect(),
        )
    }

    pub fn sub(&self, x: &Element, y: &Element) -> Element {
        Element(
            x.0.iter()
                .zip(&y.0)
                .zip(&self.factors)
                .map(|((&a, &b), &n)| ((a as u64 + n as u64 - b as u64) % n as u64) as u32)
                .collect(),
        )
    }

    pub fn add_idx(&self, x: usize, y: usize) -> usize {
        let mut out = 0;
        for j in 0..self.rank() {
            let n = self.factors[j] as usize;
            let s = self.strides[j];
            let a = (x / s) % n;
            let b = (y / s) % n;
            out += ((a + b) % n) * s;
        }
        out
    }

    pub fn sub_idx(&self, x: usize, y: usize) -> usize {
        let mut out = 0;
        for j in 0..self.rank() {
            let n = self.factors[j] as usize;
            let s = self.strides[j];
            let a = (x / s) % n;
            let b = (y / s) % n;
            out += ((a + n - b) % n) * s;
        }
        out
    }

    pub fn neg_idx(&self, x: usize) -> usize {
        self.sub_idx(0, x)
    }

    /// Phase numerator `k` (mod the exponent `N`) of `rho_x(y) = exp(2 pi i k / N)`.
    pub fn phase_idx(&self, x: usize, y: usize) -> u64 {
        let mut k = 0u64;
        for j in 0..self.rank() {
            let n = self.factors[j] as usize;
            let s = self.strides[j];
            let a = ((x / s) % n) as u64;
            let b = ((y / s) % n) as u64;
            k += (a * b % n as u64) * self.weights[j];
        }
        k % self.exponent
    }

    /// Complex value of the `k / N` phase, read from a precomputed table.
    pub fn root(&self, k: u64) -> Complex64 {
        self.roots[(k % self.exponent) as usize]
    }

    pub fn character_value_idx(&self, x: usize, y: usize) -> Complex64 {
        self.root(self.phase_idx(x, y))
    }

    /// `rho_x(y)`.
    pub fn character_eval(&self, x: &Element, y: &Element) -> Result<CharacterValue> {
        let xi = self.index_of(x)?;
        let yi = self.index_of(y)?;
        let k = self.phase_idx(xi, yi);
        Ok(CharacterValue {
            numerator: k,
            denominator: self.exponent,
            value: self.root(k),
        })
    }

    /// `sum_{a in A} rho_z(a)`.
    pub fn character_sum_over(&self, z: &Element, set: &[Element]) -> Result<Complex64> {
        let zi = self.index_of(z)?;
        let mut sum = Complex64::new(0.0, 0.0);
        for a in set {
            sum += self.character_value_idx(zi, self.index_of(a)?);
        }
        Ok(sum)
    }

    pub fn character_sum_over_idx(&self, z: usize, set: &[usize]) -> Complex64 {
        set.iter().map(|&a| self.character_value_idx(z, a)).sum()
    }

    /// `sum_{y in G} rho_x(y)`: the group order at the identity, zero elsewhere.
    pub fn full_group_sum(&self, x: &Element) -> Result<Complex64> {
        let xi = self.index_of(x)?;
        Ok((0..self.order).map(|y| self.character_value_idx(xi, y)).sum())
    }

    /// Smallest subgroup containing `gens`.
    pub fn subgroup_generated(&self, gens: &[Element]) -> Result<Subgroup> {
        let idx = gens
            .iter()
            .map(|g| self.index_of(g))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.subgroup_generated_idx(&idx))
    }

    pub fn subgroup_generated_idx(&self, gens: &[usize]) -> Subgroup {
        let mut members = vec![false; self.order];
        members[0] = true;
        let mut list = vec![0usize];
        for &g in gens {
            self.extend_subgroup(&mut members, &mut list, g);
        }
        list.sort_unstable();
        Subgroup {
            parent: self.clone(),
            indices: list,
        }
    }

    /// Grows the subgroup `list` to `<list, g>` by adjoining cosets `H + k g`.
    fn extend_subgroup(&self, members: &mut [bool], list: &mut Vec<usize>, g: usize) {
        let base: Vec<usize> = list.clone();
        let mut cur = g;
        while !members[cur] {
            for &h in &base {
                let e = self.add_idx(h, cur);
                if !members[e] {
                    members[e] = true;
                    list.push(e);
                }
            }
            cur = self.add_idx(cur, g);
        }
    }

    /// Every subgroup exactly once, sorted by order and then lexicographically.
    pub fn all_subgroups(&self) -> Result<Vec<Subgroup>> {
        self.all_subgroups_capped(DEFAULT_SUBGROUP_ORDER_CAP)
    }

    pub fn all_subgroups_capped(&self, order_cap: usize) -> Result<Vec<Subgroup>> {
        if self.order > order_cap {
            return Err(Error::Capacity {
                what: "group order for subgroup enumeration",
                actual: self.order as u128,
                limit: order_cap as u128,
            });
        }
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut queue: VecDeque<Vec<usize>> = VecDeque::new();
        seen.insert(vec![0]);
        queue.push_back(vec![0]);
        let mut members = vec![false; self.order];
        while let Some(h) = queue.pop_front() {
            for &i in &h {
                members[i] = true;
            }
            for g in 1..self.order {
                if members[g] {
                    continue;
                }
                let mut grown_members = members.clone();
                let mut grown = h.clone();
                self.extend_subgroup(&mut grown_members, &mut grown, g);
                grown.sort_unstable();
                if !seen.contains(&grown) {
                    if seen.len() >= MAX_SUBGROUP_COUNT {
                        return Err(Error::Capacity {
                            what: "subgroup count",
                            actual: seen.len() as u128 + 1,
                            limit: MAX_SUBGROUP_COUNT as u128,
                        });
                    }
                    seen.insert(grown.clone());
                    queue.push_back(grown);
                }
            }
            for &i in &h {
                members[i] = false;
            }
        }
        let mut all: Vec<Vec<usize>> = seen.into_iter().collect();
        all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(all
            .into_iter()
            .map(|indices| Subgroup {
                parent: self.clone(),
                indices,
            })
            .collect())
    }

    /// Labels `z` with `rho_z` trivial on `h`.
    pub fn annihilator(&self, h: &Subgroup) -> Result<Subgroup> {
        if h.parent != *self {
            return Err(Error::InvalidSubgroup(format!(
                "subgroup of {} used with {}",
                h.parent, self
            )));
        }
        let indices = (0..self.order)
            .filter(|&z| h.indices.iter().all(|&x| self.phase_idx(z, x) == 0))
            .collect();
        Ok(Subgroup {
            parent: self.clone(),
            indices,
        })
    }

    pub fn parse_element(&self, s: &str) -> Result<Element> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(t);
        let coords = inner
            .split(',')
            .map(|c| c.trim().parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::InvalidElement {
                element: t.to_string(),
                group: self.to_string(),
                reason: "expected an integer or a parenthesized tuple".into(),
            })?;
        let e = Element(coords);
        self.check(&e)?;
        Ok(e)
    }

    /// Parses `{a,b,...}` or a bare comma list; tuples are parenthesized.
    pub fn parse_subset(&self, s: &str) -> Result<Vec<Element>> {
        let t = s.trim();
        let t = t
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .unwrap_or(t);
        let mut items = Vec::new();
        let mut depth = 0i32;
        let mut start = 0;
        for (i, ch) in t.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                ',' if depth == 0 => {
                    items.push(&t[start..i]);
                    start = i + 1;
                }
                _ => {}
            }
        }
        if depth != 0 {
            return Err(Error::InvalidSubset(format!("unbalanced parentheses in `{s}`")));
        }
        items.push(&t[start..]);
        let set = items
            .into_iter()
            .filter(|it| !it.trim().is_empty())
            .map(|it| self.parse_element(it))
            .collect::<Result<Vec<_>>>()?;
        check_distinct(&set)?;
        Ok(set)
    }

    pub fn format_subset(set: &[Element]) -> String {
        let parts: Vec<String> = set.iter().map(|e| e.to_string()).collect();
        format!("{{{}}}", parts.join(","))
    }
}

pub(crate) fn check_distinct(set: &[Element]) -> Result<()> {
    let mut seen = HashSet::new();
    for e in set {
        if !seen.insert(e) {
            return Err(Error::InvalidSubset(format!("duplicate element {e}")));
        }
    }
    Ok(())
}

impl PartialEq for GroupSpec {
    fn eq(&self, other: &Self) -> bool {
        self.factors == other.factors
    }
}

impl Eq for GroupSpec {}

impl std::hash::Hash for GroupSpec {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.factors.hash(state);
    }
}

impl fmt::Debug for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupSpec({self})")
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_factors(&self.factors))
    }
}

fn format_factors(factors: &[u32]) -> String {
    factors
        .iter()
        .map(|n| format!("Z{n}"))
        .collect::<Vec<_>>()
        .join("x")
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::InvalidGroup(t.to_string());
        let mut factors = Vec::new();
        for part in t.split(['x', 'X']) {
            let digits = part
                .trim()
                .strip_prefix(['Z', 'z'])
                .ok_or_else(bad)?;
            factors.push(digits.parse::<u32>().map_err(|_| bad())?);
        }
        GroupSpec::new(factors).map_err(|e| match e {
            Error::InvalidGroup(_) => bad(),
            other => other,
        })
    }
}

impl Serialize for GroupSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GroupSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A subgroup, stored as sorted element indices of its parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    parent: GroupSpec,
    indices: Vec<usize>,
}

impl Subgroup {
    /// Validates closure of `elements` under addition and negation.
    pub fn from_elements(parent: &GroupSpec, elements: &[Element]) -> Result<Self> {
        let mut indices = elements
            .iter()
            .map(|e| parent.index_of(e))
            .collect::<Result<Vec<_>>>()?;
        indices.sort_unstable();
        indices.dedup();
        Self::from_indices(parent, indices)
    }

    pub fn from_indices(parent: &GroupSpec, mut indices: Vec<usize>) -> Result<Self> {
        indices.sort_unstable();
        indices.dedup();
        let mut members = vec![false; parent.order()];
        for &i in &indices {
            if i >= parent.order() {
                return Err(Error::InvalidSubgroup(format!("index {i} out of range")));
            }
            members[i] = true;
        }
        if indices.first() != Some(&0) {
            return Err(Error::InvalidSubgroup("missing identity".into()));
        }
        for &a in &indices {
            if !members[parent.neg_idx(a)] {
                return Err(Error::InvalidSubgroup(format!(
                    "not closed under negation at {}",
                    parent.element(a)
                )));
            }
            for &b in &indices {
                if !members[parent.add_idx(a, b)] {
                    return Err(Error::InvalidSubgroup(format!(
                        "not closed under addition at {} + {}",
                        parent.element(a),
                        parent.element(b)
                    )));
                }
            }
        }
        Ok(Subgroup {
            parent: parent.clone(),
            indices,
        })
    }

    pub fn parent(&self) -> &GroupSpec {
        &self.parent
    }

    pub fn order(&self) -> usize {
        self.indices.len()
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn elements(&self) -> Vec<Element> {
        self.indices.iter().map(|&i| self.parent.element(i)).collect()
    }

    pub fn contains_idx(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.indices.iter().all(|&i| other.contains_idx(i))
    }
}

/// All abelian groups of order `n` up to isomorphism, in invariant-factor
/// form with factors ascending (`n1 | n2 | ...`).
pub fn abelian_groups_of_order(n: u32) -> Result<Vec<GroupSpec>> {
    if n < 2 {
        return Err(Error::Domain(format!("no nontrivial group of order {n}")));
    }
    let prime_powers = crate::number_theory::factorize(n as u64);
    // For each prime, every partition of its exponent.
    let mut per_prime: Vec<Vec<Vec<u32>>> = Vec::new();
    for &(p, e) in &prime_powers {
        per_prime.push(
            partitions(e)
                .into_iter()
                .map(|parts| parts.iter().map(|&a| (p as u32).pow(a)).collect())
                .collect(),
        );
    }
    let mut combos: Vec<Vec<Vec<u32>>> = vec![Vec::new()];
    for choices in &per_prime {
        let mut next = Vec::new();
        for c in &combos {
            for choice in choices {
                let mut c2 = c.clone();
                c2.push(choice.clone());
                next.push(c2);
            }
        }
        combos = next;
    }
    let mut groups = Vec::new();
    for combo in combos {
        // Invariant factors: multiply the i-th largest prime power of every prime.
        let width = combo.iter().map(|v| v.len()).max().unwrap_or(0);
        let mut inv = vec![1u32; width];
        for powers in &combo {
            let mut sorted = powers.clone();
            sorted.sort_unstable_by(|a, b| b.cmp(a));
            for (i, q) in sorted.into_iter().enumerate() {
                inv[i] *= q;
            }
        }
        inv.sort_unstable();
        groups.push(GroupSpec::new(inv)?);
    }
    groups.sort_by(|a, b| {
        b.factors
            .len()
            .cmp(&a.factors.len())
            .then_with(|| a.factors.cmp(&b.factors))
    });
    Ok(groups)
}

/// Partitions of `e` as non-increasing part lists.
fn partitions(e: u32) -> Vec<Vec<u32>> {
    fn go(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rem.min(max)).rev() {
            cur.push(part);
            go(rem - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(e, e, &mut Vec::new(), &mut out);
    out
}

fn unit_root(k: u64, n: u64) -> Complex64 {
    // Quarter turns are exact so real characters stay exactly real.
    let k = k % n;
    if 4 * k == n {
        return Complex64::new(0.0, 1.0);
    }
    if 2 * k == n {
        return Complex64::new(-1.0, 0.0);
    }
    if 4 * k == 3 * n {
        return Complex64::new(0.0, -1.0);
    }
    if k == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
    Complex64::new(theta.cos(), theta.sin())
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32) -> GroupSpec {
        GroupSpec::cyclic(n).unwrap()
    }

    fn e(c: &[u32]) -> Element {
        Element(c.to_vec())
    }

    #[test]
    fn parses_group_specs() {
        let g: GroupSpec = "Z2xZ4".parse().unwrap();
        assert_eq!(g.factors(), &[2, 4]);
        assert_eq!(g.order(), 8);
        assert_eq!(g.exponent(), 4);
        assert_eq!(g.to_string(), "Z2xZ4");
        assert!("Z1".parse::<GroupSpec>().is_err());
        assert!("Z2xQ4".parse::<GroupSpec>().is_err());
        assert!("".parse::<GroupSpec>().is_err());
    }

    #[test]
    fn element_enumeration_is_lexicographic_and_complete() {
        let g: GroupSpec = "Z2xZ3xZ2".parse().unwrap();
        let all: Vec<Element> = g.elements().collect();
        assert_eq!(all.len(), 12);
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(all, sorted);
        for (i, x) in all.iter().enumerate() {
            assert_eq!(g.index_of(x).unwrap(), i);
        }
    }

    #[test]
    fn arithmetic_reduces_mod_factors() {
        let g: GroupSpec = "Z2xZ4".parse().unwrap();
        assert_eq!(g.add(&e(&[1, 3]), &e(&[1, 2])), e(&[0, 1]));
        assert_eq!(g.neg(&e(&[1, 1])), e(&[1, 3]));
        let x = e(&[1, 3]);
        assert!(g.add(&x, &g.neg(&x)).is_zero());
        let (a, b) = (g.index_of(&e(&[1, 3])).unwrap(), g.index_of(&e(&[0, 2])).unwrap());
        assert_eq!(g.element(g.sub_idx(a, b)), e(&[1, 1]));
    }

    #[test]
    fn character_eval_examples() {
        let g: GroupSpec = "Z2xZ4".parse().unwrap();
        let v = g.character_eval(&e(&[0, 0]), &e(&[1, 3])).unwrap();
        assert_eq!(v.numerator, 0);
        assert!((v.value - Complex64::new(1.0, 0.0)).norm() < 1e-15);

        let v = g.character_eval(&e(&[1, 1]), &e(&[0, 1])).unwrap();
        assert_eq!(v.reduced_phase(), (1, 4));
        assert!((v.value - Complex64::new(0.0, 1.0)).norm() < 1e-15);

        let z7 = z(7);
        let v = z7.character_eval(&e(&[3]), &e(&[5])).unwrap();
        assert_eq!(v.reduced_phase(), (1, 7));
        let expect = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 7.0);
        assert!((v.value - expect).norm() < 1e-14);
    }

    #[test]
    fn character_eval_rejects_out_of_range() {
        let g: GroupSpec = "Z2xZ4".parse().unwrap();
        let err = g.character_eval(&e(&[2, 0]), &e(&[0, 0])).unwrap_err();
        assert!(matches!(err, Error::InvalidElement { .. }));
        assert!(g.character_eval(&e(&[1]), &e(&[0, 0])).is_err());
    }

    #[test]
    fn character_sums_over_subgroups() {
        let g = z(6);
        let a = vec![e(&[0]), e(&[3])];
        let s2 = g.character_sum_over(&e(&[2]), &a).unwrap();
        assert!((s2 - Complex64::new(2.0, 0.0)).norm() < 1e-9);
        let s1 = g.character_sum_over(&e(&[1]), &a).unwrap();
        assert!(s1.norm() < 1e-9);
        let all: Vec<Element> = g.elements().collect();
        let s0 = g.character_sum_over(&g.zero(), &all).unwrap();
        assert!((s0 - Complex64::new(6.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn full_group_sums() {
        let g = z(7);
        assert!((g.full_group_sum(&e(&[0])).unwrap() - Complex64::new(7.0, 0.0)).norm() < 1e-9);
        assert!(g.full_group_sum(&e(&[3])).unwrap().norm() < 1e-9);
        let h: GroupSpec = "Z2xZ4".parse().unwrap();
        assert!(h.full_group_sum(&e(&[1, 2])).unwrap().norm() < 1e-9);
    }

    #[test]
    fn generated_subgroups() {
        let g = z(8);
        let h = g.subgroup_generated(&[e(&[2])]).unwrap();
        assert_eq!(h.elements(), vec![e(&[0]), e(&[2]), e(&[4]), e(&[6])]);
        let g2: GroupSpec = "Z2xZ4".parse().unwrap();
        let h2 = g2.subgroup_generated(&[e(&[1, 0])]).unwrap();
        assert_eq!(h2.elements(), vec![e(&[0, 0]), e(&[1, 0])]);
        assert_eq!(z(7).subgroup_generated(&[e(&[3])]).unwrap().order(), 7);
        assert_eq!(g.subgroup_generated(&[]).unwrap().order(), 1);
    }

    #[test]
    fn subgroup_counts() {
        let z8 = z(8).all_subgroups().unwrap();
        assert_eq!(z8.len(), 4);
        let orders: Vec<usize> = z8.iter().map(|h| h.order()).collect();
        assert_eq!(orders, vec![1, 2, 4, 8]);
        assert_eq!("Z2xZ2".parse::<GroupSpec>().unwrap().all_subgroups().unwrap().len(), 5);
        assert_eq!(z(7).all_subgroups().unwrap().len(), 2);
        // Z2^3 has 16 subgroups; Z2xZ4 has 8; Z12 has 6 (one per divisor).
        assert_eq!("Z2xZ2xZ2".parse::<GroupSpec>().unwrap().all_subgroups().unwrap().len(), 16);
        assert_eq!("Z2xZ4".parse::<GroupSpec>().unwrap().all_subgroups().unwrap().len(), 8);
        assert_eq!(z(12).all_subgroups().unwrap().len(), 6);
    }

    #[test]
    fn subgroup_enumeration_respects_cap() {
        let g = z(16);
        assert!(matches!(g.all_subgroups_capped(8), Err(Error::Capacity { .. })));
    }

    #[test]
    fn annihilator_examples() {
        let g = z(6);
        let h = Subgroup::from_elements(&g, &[e(&[0]), e(&[3])]).unwrap();
        let ann = g.annihilator(&h).unwrap();
        assert_eq!(ann.elements(), vec![e(&[0]), e(&[2]), e(&[4])]);
        let trivial = g.subgroup_generated(&[]).unwrap();
        assert_eq!(g.annihilator(&trivial).unwrap().order(), 6);
        let whole = g.subgroup_generated(&[e(&[1])]).unwrap();
        assert_eq!(g.annihilator(&whole).unwrap().elements(), vec![e(&[0])]);
    }

    #[test]
    fn rejects_non_subgroups() {
        let g = z(6);
        assert!(Subgroup::from_elements(&g, &[e(&[0]), e(&[1])]).is_err());
        assert!(Subgroup::from_elements(&g, &[e(&[3])]).is_err());
    }

    #[test]
    fn parses_elements_and_subsets() {
        let g: GroupSpec = "Z2xZ4".parse().unwrap();
        assert_eq!(g.parse_element("(1,3)").unwrap(), e(&[1, 3]));
        assert!(g.parse_element("(2,3)").is_err());
        let s = g.parse_subset("{(0,0),(1,0),(0,1)}").unwrap();
        assert_eq!(s.len(), 3);
        let z6 = z(6);
        assert_eq!(z6.parse_subset("0,1,3").unwrap(), vec![e(&[0]), e(&[1]), e(&[3])]);
        assert_eq!(z6.parse_subset("{0, 1, 3}").unwrap().len(), 3);
        assert!(matches!(z6.parse_subset("0,1,1"), Err(Error::InvalidSubset(_))));
        assert_eq!(GroupSpec::format_subset(&s), "{(0,0),(1,0),(0,1)}");
    }

    #[test]
    fn groups_of_order() {
        let names = |n| {
            abelian_groups_of_order(n)
                .unwrap()
                .iter()
                .map(|g| g.to_string())
                .collect::<Vec<_>>()
        };
        assert_eq!(names(8), vec!["Z2xZ2xZ2", "Z2xZ4", "Z8"]);
        assert_eq!(names(12), vec!["Z2xZ6", "Z12"]);
        assert_eq!(names(7), vec!["Z7"]);
        assert_eq!(names(16).len(), 5);
        assert_eq!(names(36).len(), 4);
    }

    #[test]
    fn unit_modulus_of_table_roots() {
        let g: GroupSpec = "Z3xZ5xZ8".parse().unwrap();
        for k in 0..g.exponent() {
            assert!((g.root(k).norm() - 1.0).abs() < crate::tolerance::UNIT_MODULUS);
        }
    }
}
