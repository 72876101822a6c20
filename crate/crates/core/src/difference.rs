//! Difference structure of a subset and its place in the taxonomy of
//! nested, bi-, divisible, relative, partial, Gaussian, almost and nested
//! divisible difference sets.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{check_distinct, Element, GroupSpec, Subgroup};
use crate::number_theory;

/// Default bound on subgroups visited by the nested divisible chain search.
pub const DEFAULT_CHAIN_NODE_CAP: usize = 50_000;

/// Counts of each nonzero element as a difference `g_a - g_b`, `a != b`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiffCounts {
    pub group: GroupSpec,
    pub subset: Vec<Element>,
    /// Indexed by lexicographic element index; entry 0 (the identity) is 0.
    pub counts: Vec<u32>,
}

impl DiffCounts {
    pub fn count(&self, x: &Element) -> Result<u32> {
        Ok(self.counts[self.group.index_of(x)?])
    }

    pub fn count_idx(&self, i: usize) -> u32 {
        self.counts[i]
    }

    pub fn m(&self) -> usize {
        self.subset.len()
    }

    /// Sorted distinct counts over the nonzero elements.
    pub fn distinct_values(&self) -> Vec<u32> {
        distinct_values(&self.counts)
    }

    /// Nonzero elements grouped by count value.
    pub fn levels(&self) -> BTreeMap<u32, Vec<Element>> {
        let mut out: BTreeMap<u32, Vec<Element>> = BTreeMap::new();
        for (i, &c) in self.counts.iter().enumerate().skip(1) {
            out.entry(c).or_default().push(self.group.element(i));
        }
        out
    }

    /// `(element, count)` for every nonzero element.
    pub fn entries(&self) -> Vec<(Element, u32)> {
        self.counts
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| (self.group.element(i), c))
            .collect()
    }
}

pub fn difference_counts(g: &GroupSpec, s: &[Element]) -> Result<DiffCounts> {
    let idx = subset_indices(g, s)?;
    if idx.len() < 2 {
        return Err(Error::InvalidSubset(format!(
            "need at least 2 elements, got {}",
            idx.len()
        )));
    }
    Ok(DiffCounts {
        group: g.clone(),
        subset: s.to_vec(),
        counts: counts_idx(g, &idx),
    })
}

pub(crate) fn subset_indices(g: &GroupSpec, s: &[Element]) -> Result<Vec<usize>> {
    check_distinct(s)?;
    s.iter().map(|x| g.index_of(x)).collect()
}

/// Difference counts from element indices; no validation.
pub fn counts_idx(g: &GroupSpec, s: &[usize]) -> Vec<u32> {
    let mut counts = vec![0u32; g.order()];
    for &a in s {
        for &b in s {
            if a != b {
                counts[g.sub_idx(a, b)] += 1;
            }
        }
    }
    counts
}

fn distinct_values(counts: &[u32]) -> Vec<u32> {
    let mut v: Vec<u32> = counts[1..].to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferenceSetParams {
    pub n: usize,
    pub m: usize,
    pub lambda: u32,
}

/// One assignment of the two count values: `lambda` on `A \ {0}`, `mu` off `A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BidifferenceParams {
    pub n: usize,
    pub m: usize,
    pub l: usize,
    pub lambda: u32,
    pub mu: u32,
    pub a: Vec<Element>,
    pub proper: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisibleParams {
    pub n: usize,
    pub m: usize,
    pub l: usize,
    pub lambda: u32,
    pub mu: u32,
    pub subgroup: Vec<Element>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelativeParams {
    pub n: usize,
    pub m: usize,
    pub l: usize,
    pub mu: u32,
    pub subgroup: Vec<Element>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialParams {
    pub n: usize,
    pub m: usize,
    pub lambda: u32,
    pub mu: u32,
    pub zero_in_s: bool,
    pub reversible: bool,
    pub regular: bool,
    /// False when `lambda == mu`, i.e. a difference set.
    pub proper: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaussianParams {
    pub p: usize,
    pub m: usize,
    pub lambda: u32,
    pub mu: u32,
    pub proper: bool,
}

/// `(n, m, lambda, t)`: `t` nonzero elements are hit `lambda` times, the
/// rest `lambda + 1` times.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlmostParams {
    pub n: usize,
    pub m: usize,
    pub lambda: u32,
    pub t: usize,
}

/// Subgroup chain `{0} = A_0 < A_1 < ... < A_t = G` with the difference
/// count equal to `lambdas[j-1]` on every layer `A_j \ A_{j-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NestedChain {
    pub chain: Vec<Vec<Element>>,
    pub lambdas: Vec<u32>,
    pub t: usize,
    /// No subgroup chain with fewer layers represents the same counts.
    pub proper: bool,
}

impl NestedChain {
    pub fn orders(&self) -> Vec<usize> {
        self.chain.iter().map(Vec::len).collect()
    }
}

/// Every taxonomy membership of a subset.
///
/// The class predicates follow the two-value rule: with exactly two distinct
/// counts both choices of `A` are tried and a class holds when either fits.
/// A difference set is recorded under `difference_set`; it also fills the
/// partial and Gaussian records with `lambda == mu` and `proper == false`
/// when those witnesses exist.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub group: GroupSpec,
    pub subset: Vec<Element>,
    pub n: usize,
    pub m: usize,
    /// Sorted distinct difference counts over the nonzero elements.
    pub count_values: Vec<u32>,
    pub difference_set: Option<DifferenceSetParams>,
    /// Both assignments when the counts take exactly two values.
    pub bidifference: Vec<BidifferenceParams>,
    pub divisible: Option<DivisibleParams>,
    pub relative: Option<RelativeParams>,
    pub partial: Option<PartialParams>,
    pub gaussian: Option<GaussianParams>,
    pub almost: Option<AlmostParams>,
    /// Minimal subgroup chain, if any fits the counts.
    pub nested_divisible: Option<NestedChain>,
    /// The chain search hit its node cap; `nested_divisible` is then unknown.
    pub chain_search_truncated: bool,
    /// Minimal `t` over unconstrained (not necessarily subgroup) chains: the
    /// number of distinct counts.
    pub nested_t: usize,
    pub reversible: bool,
    pub regular: bool,
}

impl Classification {
    pub fn is_difference_set(&self) -> bool {
        self.difference_set.is_some()
    }

    /// Raw flag: at most two count values, so difference sets count too.
    pub fn is_bidifference(&self) -> bool {
        self.count_values.len() <= 2
    }

    /// Two distinct count values.
    pub fn is_proper_bidifference(&self) -> bool {
        self.count_values.len() == 2
    }

    pub fn is_divisible(&self) -> bool {
        self.divisible.is_some()
    }

    pub fn is_relative(&self) -> bool {
        self.relative.is_some()
    }

    pub fn is_partial(&self) -> bool {
        self.partial.is_some()
    }

    pub fn is_proper_partial(&self) -> bool {
        self.partial.as_ref().is_some_and(|p| p.proper)
    }

    pub fn is_gaussian(&self) -> bool {
        self.gaussian.is_some()
    }

    pub fn is_almost(&self) -> bool {
        self.almost.is_some()
    }

    pub fn is_nested_divisible(&self) -> bool {
        self.nested_divisible.is_some()
    }

    /// Nested divisible with at least three layers, i.e. not a divisible
    /// difference set.
    pub fn is_proper_nested_divisible(&self) -> bool {
        self.nested_divisible
            .as_ref()
            .is_some_and(|c| c.proper && c.t >= 3)
    }

    /// Short class names, most specific first.
    pub fn tags(&self) -> Vec<&'static str> {
        let mut tags = Vec::new();
        if self.is_difference_set() {
            tags.push("difference_set");
        }
        if self.is_relative() {
            tags.push("relative");
        }
        if self.is_divisible() {
            tags.push("divisible");
        }
        if self.is_proper_partial() {
            tags.push("partial");
        }
        if self.gaussian.as_ref().is_some_and(|g| g.proper) {
            tags.push("gaussian");
        }
        if self.is_almost() {
            tags.push("almost");
        }
        if self.is_proper_bidifference() {
            tags.push("bidifference");
        }
        if self.is_proper_nested_divisible() {
            tags.push("nested_divisible");
        }
        tags
    }
}

/// Reusable, read-only state for classifying many subsets of one group.
#[derive(Clone, Debug)]
pub struct ClassifyContext {
    group: GroupSpec,
    /// `QR ∪ {0}` membership when the group is cyclic of odd prime order.
    qr_mask: Option<Vec<bool>>,
    chain_node_cap: usize,
}

impl ClassifyContext {
    pub fn new(group: &GroupSpec) -> Self {
        let qr_mask = group.odd_prime_order().map(|p| {
            let mut mask = vec![false; p as usize];
            mask[0] = true;
            for x in 1..p {
                mask[(x * x % p) as usize] = true;
            }
            mask
        });
        ClassifyContext {
            group: group.clone(),
            qr_mask,
            chain_node_cap: DEFAULT_CHAIN_NODE_CAP,
        }
    }

    pub fn with_chain_node_cap(mut self, cap: usize) -> Self {
        self.chain_node_cap = cap;
        self
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn classify(&self, s: &[Element]) -> Result<Classification> {
        let idx = subset_indices(&self.group, s)?;
        self.classify_idx(&idx)
    }

    /// Classification of the subset with element indices `s` (distinct).
    pub fn classify_idx(&self, s: &[usize]) -> Result<Classification> {
        let g = &self.group;
        let n = g.order();
        let m = s.len();
        if m < 2 {
            return Err(Error::InvalidSubset(format!("need at least 2 elements, got {m}")));
        }
        let counts = counts_idx(g, s);
        let values = distinct_values(&counts);

        let mut in_s = vec![false; n];
        for &x in s {
            in_s[x] = true;
        }
        let reversible = s.iter().all(|&x| in_s[g.neg_idx(x)]);
        let zero_in_s = in_s[0];
        let regular = reversible && !zero_in_s;

        let mut c = Classification {
            group: g.clone(),
            subset: s.iter().map(|&i| g.element(i)).collect(),
            n,
            m,
            count_values: values.clone(),
            difference_set: None,
            bidifference: Vec::new(),
            divisible: None,
            relative: None,
            partial: None,
            gaussian: None,
            almost: None,
            nested_divisible: None,
            chain_search_truncated: false,
            nested_t: values.len(),
            reversible,
            regular,
        };

        // `S ∪ {0}` as a witness set, excluding the degenerate `{0}` and `G`.
        let s_zero_len = m + usize::from(!zero_in_s);
        let s_zero_nondegenerate = s_zero_len > 1 && s_zero_len < n;

        if values.len() == 1 {
            let lambda = values[0];
            c.difference_set = Some(DifferenceSetParams { n, m, lambda });
            if s_zero_nondegenerate {
                c.partial = Some(PartialParams {
                    n,
                    m,
                    lambda,
                    mu: lambda,
                    zero_in_s,
                    reversible,
                    regular,
                    proper: false,
                });
            }
            if let Some(p) = g.odd_prime_order() {
                c.gaussian = Some(GaussianParams {
                    p: p as usize,
                    m,
                    lambda,
                    mu: lambda,
                    proper: false,
                });
            }
        } else if values.len() == 2 {
            for (v_in, v_out) in [(values[0], values[1]), (values[1], values[0])] {
                let a: Vec<usize> = (0..n).filter(|&i| i == 0 || counts[i] == v_in).collect();
                let l = a.len();
                let a_elems: Vec<Element> = a.iter().map(|&i| g.element(i)).collect();
                if Subgroup::from_indices(g, a.clone()).is_ok() && c.divisible.is_none() {
                    c.divisible = Some(DivisibleParams {
                        n,
                        m,
                        l,
                        lambda: v_in,
                        mu: v_out,
                        subgroup: a_elems.clone(),
                    });
                    if v_in == 0 {
                        c.relative = Some(RelativeParams {
                            n,
                            m,
                            l,
                            mu: v_out,
                            subgroup: a_elems.clone(),
                        });
                    }
                }
                let is_s_zero = l == s_zero_len && a.iter().all(|&i| i == 0 || in_s[i]);
                if is_s_zero && c.partial.is_none() {
                    c.partial = Some(PartialParams {
                        n,
                        m,
                        lambda: v_in,
                        mu: v_out,
                        zero_in_s,
                        reversible,
                        regular,
                        proper: true,
                    });
                }
                if let (Some(mask), Some(p)) = (&self.qr_mask, g.odd_prime_order()) {
                    let is_qr = l == (p as usize).div_ceil(2) && a.iter().all(|&i| mask[i]);
                    if is_qr && c.gaussian.is_none() {
                        c.gaussian = Some(GaussianParams {
                            p: p as usize,
                            m,
                            lambda: v_in,
                            mu: v_out,
                            proper: true,
                        });
                    }
                }
                if v_out == v_in + 1 {
                    c.almost = Some(AlmostParams {
                        n,
                        m,
                        lambda: v_in,
                        t: l - 1,
                    });
                }
                c.bidifference.push(BidifferenceParams {
                    n,
                    m,
                    l,
                    lambda: v_in,
                    mu: v_out,
                    a: a_elems,
                    proper: true,
                });
            }
        }

        match chain_search(g, &counts, None, self.chain_node_cap) {
            ChainOutcome::Found(chain) => c.nested_divisible = Some(chain),
            ChainOutcome::None => {}
            ChainOutcome::Truncated => c.chain_search_truncated = true,
        }
        Ok(c)
    }
}

pub fn classify(g: &GroupSpec, s: &[Element]) -> Result<Classification> {
    ClassifyContext::new(g).classify(s)
}

/// `-S`, in the order of `s`.
pub fn reversal(g: &GroupSpec, s: &[Element]) -> Result<Vec<Element>> {
    s.iter()
        .map(|x| {
            g.check(x)?;
            Ok(g.neg(x))
        })
        .collect()
}

/// `S + c`, in the order of `s`.
pub fn translate(g: &GroupSpec, s: &[Element], c: &Element) -> Result<Vec<Element>> {
    g.check(c)?;
    s.iter()
        .map(|x| {
            g.check(x)?;
            Ok(g.add(x, c))
        })
        .collect()
}

/// Whether `s` is a partial difference set with exactly these parameters.
pub fn is_partial_with(g: &GroupSpec, s: &[Element], params: &PartialParams) -> Result<bool> {
    let c = classify(g, s)?;
    Ok(c.partial.as_ref().is_some_and(|p| {
        p.n == params.n && p.m == params.m && p.lambda == params.lambda && p.mu == params.mu
    }))
}

/// Removes `0` from a reversible partial difference set, or adjoins it to a
/// regular one: `(n, m, lambda, mu)` becomes `(n, m -/+ 1, lambda -/+ 2, mu)`.
pub fn pds_zero_toggle(
    g: &GroupSpec,
    s: &[Element],
    params: &PartialParams,
) -> Result<(Vec<Element>, PartialParams)> {
    let current = classify(g, s)?;
    let found = current
        .partial
        .as_ref()
        .filter(|p| p.n == params.n && p.m == params.m && p.lambda == params.lambda && p.mu == params.mu)
        .ok_or_else(|| {
            Error::InvalidOperation(format!(
                "{} is not a ({}, {}, {}, {}) partial difference set",
                GroupSpec::format_subset(s),
                params.n,
                params.m,
                params.lambda,
                params.mu
            ))
        })?;
    if !found.reversible {
        return Err(Error::InvalidOperation("partial difference set is not reversible".into()));
    }
    let zero = g.zero();
    let (out, expected) = if found.zero_in_s {
        if params.lambda < 2 {
            return Err(Error::InvalidOperation("lambda < 2, cannot remove 0".into()));
        }
        let out: Vec<Element> = s.iter().filter(|x| !x.is_zero()).cloned().collect();
        (out, (params.m - 1, params.lambda - 2))
    } else {
        let mut out = vec![zero];
        out.extend(s.iter().cloned());
        (out, (params.m + 1, params.lambda + 2))
    };
    if out.len() < 2 {
        return Err(Error::InvalidOperation("result has fewer than 2 elements".into()));
    }
    let re = classify(g, &out)?;
    let p = re.partial.ok_or_else(|| {
        Error::InvalidOperation("toggled set is not a partial difference set".into())
    })?;
    if (p.m, p.lambda, p.mu) != (expected.0, expected.1, params.mu) {
        return Err(Error::InvalidOperation(format!(
            "toggled parameters ({}, {}, {}, {}) break the zero-toggle law",
            p.n, p.m, p.lambda, p.mu
        )));
    }
    Ok((out, p))
}

/// Minimal subgroup chain fitting the difference counts of `s`, or `None`.
pub fn nested_divisible_chain(g: &GroupSpec, s: &[Element]) -> Result<Option<NestedChain>> {
    let idx = subset_indices(g, s)?;
    if idx.len() < 2 {
        return Err(Error::InvalidSubset("need at least 2 elements".into()));
    }
    let counts = counts_idx(g, &idx);
    Ok(match chain_search(g, &counts, None, DEFAULT_CHAIN_NODE_CAP) {
        ChainOutcome::Found(c) => Some(c),
        _ => None,
    })
}

/// Bidifference properness: not a difference set.
pub fn is_proper_bidifference(params: &BidifferenceParams) -> bool {
    params.lambda != params.mu
}

/// A chain is proper when no subgroup chain with fewer layers fits the
/// same counts.
pub fn is_proper_chain(g: &GroupSpec, s: &[Element], chain: &NestedChain) -> Result<bool> {
    if !verify_chain(g, s, chain)? {
        return Ok(false);
    }
    if chain.t <= 1 {
        return Ok(true);
    }
    let idx = subset_indices(g, s)?;
    let counts = counts_idx(g, &idx);
    Ok(matches!(
        chain_search(g, &counts, Some(chain.t - 1), DEFAULT_CHAIN_NODE_CAP),
        ChainOutcome::None
    ))
}

/// Checks that `chain` is a strictly increasing subgroup chain from `{0}` to
/// `G` with the stated count on every layer.
pub fn verify_chain(g: &GroupSpec, s: &[Element], chain: &NestedChain) -> Result<bool> {
    let idx = subset_indices(g, s)?;
    let counts = counts_idx(g, &idx);
    if chain.chain.len() != chain.t + 1 || chain.lambdas.len() != chain.t {
        return Ok(false);
    }
    let mut prev: Option<Subgroup> = None;
    for (j, layer) in chain.chain.iter().enumerate() {
        let Ok(h) = Subgroup::from_elements(g, layer) else {
            return Ok(false);
        };
        match &prev {
            None if h.order() != 1 => return Ok(false),
            Some(p) => {
                if !p.is_subgroup_of(&h) || p.order() == h.order() {
                    return Ok(false);
                }
                let lambda = chain.lambdas[j - 1];
                if h
                    .indices()
                    .iter()
                    .any(|&i| !p.contains_idx(i) && counts[i] != lambda)
                {
                    return Ok(false);
                }
            }
            None => {}
        }
        prev = Some(h);
    }
    Ok(prev.is_some_and(|h| h.order() == g.order()))
}

enum ChainOutcome {
    Found(NestedChain),
    None,
    Truncated,
}

/// Breadth-first search over subgroups from `{0}` to `G`, with an edge
/// `H -> K` when `H < K` and the count is constant on `K \ H`.
///
/// Among chains of minimal length the lexicographically smallest (comparing
/// subgroups as sorted element lists) is returned. With `max_t`, only chains
/// of at most that length are considered.
fn chain_search(g: &GroupSpec, counts: &[u32], max_t: Option<usize>, node_cap: usize) -> ChainOutcome {
    let n = g.order();
    let full: Vec<usize> = (0..n).collect();
    let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut nodes: Vec<Vec<usize>> = Vec::new();
    let mut succ: Vec<Vec<usize>> = Vec::new();
    let mut dist: Vec<usize> = Vec::new();

    let mut intern = |set: Vec<usize>, nodes: &mut Vec<Vec<usize>>, succ: &mut Vec<Vec<usize>>| {
        if let Some(&id) = ids.get(&set) {
            return (id, false);
        }
        let id = nodes.len();
        ids.insert(set.clone(), id);
        nodes.push(set);
        succ.push(Vec::new());
        (id, true)
    };

    let (root, _) = intern(vec![0], &mut nodes, &mut succ);
    dist.push(0);
    let mut queue = VecDeque::from([root]);
    let mut target: Option<(usize, usize)> = None;

    while let Some(h) = queue.pop_front() {
        let d = dist[h];
        if let Some((_, td)) = target {
            if d >= td {
                break;
            }
        }
        if max_t.is_some_and(|t| d >= t) {
            continue;
        }
        let exts = match extensions(g, counts, &nodes[h], node_cap) {
            Some(e) => e,
            None => return ChainOutcome::Truncated,
        };
        for k in exts {
            let is_full = k.len() == n;
            let (id, fresh) = intern(k, &mut nodes, &mut succ);
            if fresh {
                dist.push(d + 1);
                if nodes.len() > node_cap {
                    return ChainOutcome::Truncated;
                }
                if is_full {
                    target.get_or_insert((id, d + 1));
                } else {
                    queue.push_back(id);
                }
            }
            if dist[id] == d + 1 {
                succ[h].push(id);
            }
        }
    }
    let Some((goal, t)) = target else {
        return ChainOutcome::None;
    };
    debug_assert_eq!(nodes[goal], full);

    // Nodes that reach the goal along shortest paths.
    let mut good = vec![false; nodes.len()];
    good[goal] = true;
    let mut order: Vec<usize> = (0..nodes.len()).filter(|&i| dist[i] < t).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(dist[i]));
    for i in order {
        good[i] = succ[i].iter().any(|&k| good[k]);
    }

    let mut path = vec![root];
    let mut cur = root;
    while cur != goal {
        cur = succ[cur]
            .iter()
            .copied()
            .filter(|&k| good[k])
            .min_by(|&a, &b| nodes[a].cmp(&nodes[b]))
            .expect("a good node has a good successor");
        path.push(cur);
    }
    let lambdas = path
        .windows(2)
        .map(|w| {
            let inner = &nodes[w[0]];
            let x = nodes[w[1]]
                .iter()
                .find(|i| inner.binary_search(i).is_err())
                .expect("strict extension");
            counts[*x]
        })
        .collect();
    ChainOutcome::Found(NestedChain {
        chain: path
            .iter()
            .map(|&id| nodes[id].iter().map(|&i| g.element(i)).collect())
            .collect(),
        lambdas,
        t,
        proper: true,
    })
}

/// All subgroups `K > H` whose new elements share one count, sorted.
/// `None` when more than `node_cap` are generated.
fn extensions(g: &GroupSpec, counts: &[u32], h: &[usize], node_cap: usize) -> Option<Vec<Vec<usize>>> {
    let n = g.order();
    let mut in_h = vec![false; n];
    for &i in h {
        in_h[i] = true;
    }
    let mut found: Vec<Vec<usize>> = Vec::new();
    let mut values: Vec<u32> = (0..n).filter(|&i| !in_h[i]).map(|i| counts[i]).collect();
    values.sort_unstable();
    values.dedup();
    for v in values {
        let allowed = |i: usize| in_h[i] || counts[i] == v;
        let mut seen: std::collections::HashSet<Vec<usize>> = std::collections::HashSet::new();
        let mut stack: Vec<Vec<usize>> = vec![h.to_vec()];
        while let Some(k) = stack.pop() {
            let mut in_k = vec![false; n];
            for &i in &k {
                in_k[i] = true;
            }
            for x in 0..n {
                if in_k[x] || !allowed(x) {
                    continue;
                }
                let Some(grown) = close_with(g, &k, &in_k, x, &allowed) else {
                    continue;
                };
                if seen.insert(grown.clone()) {
                    if seen.len() > node_cap {
                        return None;
                    }
                    stack.push(grown);
                }
            }
        }
        found.extend(seen);
    }
    found.sort();
    Some(found)
}

/// `<K, x>` if it stays inside `allowed`.
fn close_with(
    g: &GroupSpec,
    k: &[usize],
    in_k: &[bool],
    x: usize,
    allowed: &impl Fn(usize) -> bool,
) -> Option<Vec<usize>> {
    let mut members = in_k.to_vec();
    let mut list = k.to_vec();
    let mut cur = x;
    while !members[cur] {
        for &h in k {
            let e = g.add_idx(h, cur);
            if !allowed(e) {
                return None;
            }
            if !members[e] {
                members[e] = true;
                list.push(e);
            }
        }
        cur = g.add_idx(cur, x);
    }
    list.sort_unstable();
    Some(list)
}

/// Quadratic residues of `Z_p` together with 0, as elements.
pub fn quadratic_residues_with_zero(p: u64) -> Result<Vec<Element>> {
    let mut v: Vec<Element> = vec![Element(vec![0])];
    v.extend(
        number_theory::residues(p, 2)?
            .elements
            .into_iter()
            .map(|x| Element(vec![x as u32])),
    );
    Ok(v)
}
