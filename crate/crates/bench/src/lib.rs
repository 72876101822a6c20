//! Fixtures shared by the criterion benches under `benches/`.

use framelab_core::{Element, FrameSpec, GroupSpec};

/// Parses a group and subset that are known to be valid.
pub fn fixture(group: &str, set: &str) -> (GroupSpec, Vec<Element>) {
    let g: GroupSpec = group.parse().expect("fixture group");
    let s = g.parse_subset(set).expect("fixture subset");
    (g, s)
}

pub fn frame(group: &str, set: &str) -> FrameSpec {
    let (g, s) = fixture(group, set);
    FrameSpec::new(&g, &s).expect("fixture frame")
}

/// Quadratic residues mod `p` as a subset of `Z_p`.
pub fn paley(p: u32) -> (GroupSpec, Vec<Element>) {
    let g = GroupSpec::cyclic(p).expect("prime order");
    let mut s: Vec<u32> = (1..p).map(|x| (x as u64 * x as u64 % p as u64) as u32).collect();
    s.sort_unstable();
    s.dedup();
    (g, s.into_iter().map(|x| Element::new(vec![x])).collect())
}
