//! Isomorphism tests between associahedral tilings, classification of
//! symbol families, and the maximal symmetry test.

use std::collections::{BTreeMap, BTreeSet};

use super::assoc::TilingData;
use crate::complexes::Permutation;
use crate::{input_err, Result};

/// Outcome of one test, with the lexicographically least witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Permutation>,
}

impl Verdict {
    fn from_witness(witness: Option<Permutation>) -> Verdict {
        Verdict { holds: witness.is_some(), witness }
    }
}

/// The four comparisons between two tilings of the same dimension.
///
/// - `necessary`: some automorphism carries the nonextendable set of the
///   first onto that of the second.
/// - `pointwise`: some automorphism conjugates every gluing involution of
///   the first onto the corresponding one of the second.
/// - `weak`: some automorphism `phi` makes every transported local gluing
///   `j2_{phi v} . phi . j1_v` extend to an automorphism.
/// - `sufficient`: starting from some `phi`, the transported gluings extend
///   uniquely, the set of local maps they generate is closed, and following
///   them around every square of the dual cube complex returns to the start.
///   This builds a framed isomorphism of the two universal covers tile by
///   tile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoReport {
    pub necessary: Verdict,
    pub pointwise: Verdict,
    pub weak: Verdict,
    pub sufficient: Verdict,
    /// Size of the set of local maps reached from the sufficient witness.
    pub developing_size: Option<usize>,
}

fn check_same_dimension(a: &TilingData, b: &TilingData) -> Result<()> {
    if a.symbol().len() != b.symbol().len() {
        return input_err(format!("{} and {} have different dimensions", a.name(), b.name()));
    }
    Ok(())
}

fn extends(auts: &[Permutation], map: &BTreeMap<usize, usize>) -> Vec<Permutation> {
    auts.iter().filter(|f| map.iter().all(|(&x, &y)| f.apply(x) == y)).cloned().collect()
}

/// The local map at the neighbour of a tile across vertex `v`, given the
/// local identification `phi`.
fn transported(a: &TilingData, b: &TilingData, phi: &Permutation, v: usize) -> BTreeMap<usize, usize> {
    let ja = a.j(v);
    let jb = b.j(phi.apply(v));
    ja.iter().map(|(&x, &y)| (y, jb[&phi.apply(x)])).collect()
}

pub fn necessary(a: &TilingData, b: &TilingData) -> Result<Verdict> {
    check_same_dimension(a, b)?;
    let fa: BTreeSet<usize> = a.nonextendable().into_iter().collect();
    let fb: BTreeSet<usize> = b.nonextendable().into_iter().collect();
    let w = a
        .associahedron()
        .automorphisms()
        .iter()
        .find(|phi| fa.iter().map(|&v| phi.apply(v)).collect::<BTreeSet<_>>() == fb)
        .cloned();
    Ok(Verdict::from_witness(w))
}

pub fn pointwise(a: &TilingData, b: &TilingData) -> Result<Verdict> {
    check_same_dimension(a, b)?;
    let nv = a.associahedron().vertex_count();
    let w = a
        .associahedron()
        .automorphisms()
        .iter()
        .find(|phi| {
            (0..nv).all(|v| a.j(v).iter().all(|(&x, &y)| b.j(phi.apply(v))[&phi.apply(x)] == phi.apply(y)))
        })
        .cloned();
    Ok(Verdict::from_witness(w))
}

pub fn weak(a: &TilingData, b: &TilingData) -> Result<Verdict> {
    check_same_dimension(a, b)?;
    let auts = a.associahedron().automorphisms();
    let nv = a.associahedron().vertex_count();
    let w = auts
        .iter()
        .find(|phi| (0..nv).all(|v| !extends(auts, &transported(a, b, phi, v)).is_empty()))
        .cloned();
    Ok(Verdict::from_witness(w))
}

/// Runs the developing construction from `phi0`; returns the closed set of
/// local maps on success.
fn develop(a: &TilingData, b: &TilingData, phi0: &Permutation) -> Option<BTreeSet<Permutation>> {
    let auts = a.associahedron().automorphisms();
    let nv = a.associahedron().vertex_count();
    let mut seen = BTreeSet::from([phi0.clone()]);
    let mut todo = vec![phi0.clone()];
    let mut step: BTreeMap<(Permutation, usize), Permutation> = BTreeMap::new();
    while let Some(phi) = todo.pop() {
        for v in 0..nv {
            let ex = extends(auts, &transported(a, b, &phi, v));
            if ex.len() != 1 {
                return None;
            }
            let next = ex.into_iter().next().unwrap();
            if seen.insert(next.clone()) {
                todo.push(next.clone());
            }
            step.insert((phi.clone(), v), next);
        }
    }
    let cx = a.associahedron().complex();
    for phi in &seen {
        for (u, v) in cx.edges().into_iter().flat_map(|(u, v)| [(u, v), (v, u)]) {
            let mut seq = vec![u, v];
            for k in 2..5 {
                let next = a.j(seq[k - 1])[&seq[k - 2]];
                seq.push(next);
            }
            let mut cur = phi.clone();
            for &w in &seq[1..5] {
                cur = step[&(cur, w)].clone();
            }
            if &cur != phi {
                return None;
            }
        }
    }
    Some(seen)
}

pub fn sufficient(a: &TilingData, b: &TilingData) -> Result<(Verdict, Option<usize>)> {
    check_same_dimension(a, b)?;
    for phi0 in a.associahedron().automorphisms() {
        if let Some(set) = develop(a, b, phi0) {
            return Ok((Verdict::from_witness(Some(phi0.clone())), Some(set.len())));
        }
    }
    Ok((Verdict::from_witness(None), None))
}

pub fn iso_tests(a: &TilingData, b: &TilingData) -> Result<IsoReport> {
    let (sufficient, developing_size) = sufficient(a, b)?;
    Ok(IsoReport {
        necessary: necessary(a, b)?,
        pointwise: pointwise(a, b)?,
        weak: weak(a, b)?,
        sufficient,
        developing_size,
    })
}

/// Comparison of one pair of symbols in a family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairResult {
    pub a: usize,
    pub b: usize,
    pub report: IsoReport,
}

/// Partition of a family of tilings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub t: Vec<usize>,
    /// Classes under the sufficient test, as indices into the family.
    pub classes: Vec<Vec<usize>>,
    /// Classes under the weak test.
    pub weak_classes: Vec<Vec<usize>>,
    /// Every unordered pair, in order.
    pub pairs: Vec<PairResult>,
    /// Pairs that pass the necessary test but fail the sufficient one.
    pub flags: Vec<(usize, usize)>,
}

fn components(n: usize, joined: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    let mut root: Vec<usize> = (0..n).collect();
    fn find(root: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while root[x] != x {
            root[x] = root[root[x]];
            x = root[x];
        }
        x
    }
    for a in 0..n {
        for b in a + 1..n {
            if joined(a, b) {
                let (ra, rb) = (find(&mut root, a), find(&mut root, b));
                root[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for x in 0..n {
        let r = find(&mut root, x);
        classes.entry(r).or_default().push(x);
    }
    classes.into_values().collect()
}

/// Compares every pair of the family and partitions it.
pub fn classify_family(family: &[TilingData]) -> Result<Classification> {
    if let Some(first) = family.first() {
        for d in family {
            check_same_dimension(first, d)?;
        }
    }
    let mut pairs = Vec::new();
    for a in 0..family.len() {
        for b in a + 1..family.len() {
            pairs.push(PairResult { a, b, report: iso_tests(&family[a], &family[b])? });
        }
    }
    let lookup = |a: usize, b: usize| &pairs.iter().find(|p| p.a == a && p.b == b).unwrap().report;
    let classes = components(family.len(), |a, b| lookup(a, b).sufficient.holds);
    let weak_classes = components(family.len(), |a, b| lookup(a, b).weak.holds);
    let flags = pairs
        .iter()
        .filter(|p| p.report.necessary.holds && !p.report.sufficient.holds)
        .map(|p| (p.a, p.b))
        .collect();
    Ok(Classification { t: family.iter().map(|d| d.t()).collect(), classes, weak_classes, pairs, flags })
}

/// A failure of maximal symmetry: conjugating `j_v` by `phi` does not give
/// `j_{phi v}` up to an automorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryWitness {
    pub phi: Permutation,
    pub v: usize,
}

/// Checks that `phi . j_v . phi^-1 . j_{phi v}^-1` extends for every
/// automorphism `phi` and vertex `v`.
pub fn max_symmetry_test(d: &TilingData) -> Option<SymmetryWitness> {
    let auts = d.associahedron().automorphisms();
    let nv = d.associahedron().vertex_count();
    for phi in auts {
        let inv = phi.inverse();
        for v in 0..nv {
            let w = phi.apply(v);
            let map: BTreeMap<usize, usize> =
                d.j(w).iter().map(|(&x, &y)| (y, phi.apply(d.j(v)[&inv.apply(x)]))).collect();
            if extends(auts, &map).is_empty() {
                return Some(SymmetryWitness { phi: phi.clone(), v });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(s: &[u32]) -> TilingData {
        TilingData::new(s).unwrap()
    }

    #[test]
    fn dimension_two_all_isomorphic() {
        let base = data(&[2, 2]);
        for s in [[3u32, 3], [4, 3], [5, 3], [6, 3], [7, 3], [4, 4]] {
            assert!(iso_tests(&data(&s), &base).unwrap().sufficient.holds, "{s:?}");
        }
    }

    #[test]
    fn mirror_sets_separate_equal_t() {
        let r = iso_tests(&data(&[3, 3, 4, 3]), &data(&[5, 3, 3, 4])).unwrap();
        assert!(!r.necessary.holds);
        assert!(!r.sufficient.holds);
    }

    #[test]
    fn maximal_symmetry() {
        assert!(max_symmetry_test(&data(&[3, 3, 3])).is_none());
        assert!(max_symmetry_test(&data(&[2, 2, 2])).is_none());
        assert!(max_symmetry_test(&data(&[4, 3, 3])).is_some());
    }

    #[test]
    fn reversed_symbol_is_isomorphic() {
        let r = iso_tests(&data(&[4, 3, 3]), &data(&[3, 3, 4])).unwrap();
        assert!(r.pointwise.holds && r.sufficient.holds);
    }
}
