//! Blow-up collections, nested-set complexes, gluing involutions, Condition
//! (F) and the mock reflection presentation.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::complexes::SimplicialComplex;
use crate::coxeter::{
    is_spherical, spherical_poset, subset_symmetry, CoxeterMatrix, Entry, FiniteGroupModel, Subset, DEFAULT_GENERATOR_CAP,
};
use crate::{input_err, Error, Result};

/// Largest generator count accepted by [`condition_f`].
pub const CONDITION_F_CAP: usize = 12;

/// A Coxeter matrix on `S`, a subcomplex `L` of the spherical subsets, and a
/// blow-up collection `R` of elements of `P(L)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupProblem {
    matrix: CoxeterMatrix,
    /// Nonempty simplices of `L`, as subsets of `S`.
    l: BTreeSet<Subset>,
    r: Vec<Subset>,
}

impl BlowupProblem {
    /// `l_facets = None` means `L` is the complex of all nonempty spherical
    /// subsets. `R` must lie in `P(L)` and contain no singletons.
    pub fn new(matrix: CoxeterMatrix, l_facets: Option<Vec<Subset>>, r: Vec<Subset>) -> Result<BlowupProblem> {
        let poset = spherical_poset(&matrix, DEFAULT_GENERATOR_CAP)?;
        let l: BTreeSet<Subset> = match l_facets {
            None => poset.iter().copied().filter(|t| !t.is_empty()).collect(),
            Some(facets) => {
                let mut l = BTreeSet::new();
                for f in facets {
                    if !f.is_subset_of(matrix.full()) {
                        return input_err("facet of L mentions an unknown generator");
                    }
                    if !is_spherical(&matrix, f) {
                        return input_err(format!("facet {:?} of L is not spherical", matrix.subset_labels(f)));
                    }
                    let members: Vec<usize> = f.iter().collect();
                    for mask in 1u32..(1 << members.len()) {
                        l.insert(Subset::from_indices(
                            members.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &s)| s),
                        ));
                    }
                }
                for s in 0..matrix.rank() {
                    l.insert(Subset::singleton(s));
                }
                l
            }
        };
        for i in 0..matrix.rank() {
            for j in i + 1..matrix.rank() {
                if matrix.m(i, j).is_finite() && !l.contains(&Subset::from_indices([i, j])) {
                    return input_err(format!(
                        "L must contain the edge {{{}, {}}} since m is finite there",
                        matrix.label(i),
                        matrix.label(j)
                    ));
                }
            }
        }
        let mut rs: Vec<Subset> = Vec::new();
        for t in r {
            if t.len() < 2 {
                return input_err("R may not contain empty sets or singletons");
            }
            if !l.contains(&t) {
                return input_err(format!("R element {:?} is not in P(L)", matrix.subset_labels(t)));
            }
            if !rs.contains(&t) {
                rs.push(t);
            }
        }
        rs.sort_by_key(|t| (t.len(), t.0));
        Ok(BlowupProblem { matrix, l, r: rs })
    }

    /// The maximal blow-up set: every element of `P(L)` of size at least two.
    pub fn maximal(matrix: CoxeterMatrix, l_facets: Option<Vec<Subset>>) -> Result<BlowupProblem> {
        let p = BlowupProblem::new(matrix, l_facets, vec![])?;
        let r = p.l.iter().copied().filter(|t| t.len() >= 2).collect();
        BlowupProblem::new(p.matrix, Some(p.l.iter().copied().collect()), r)
    }

    /// The minimal blow-up set: connected elements of `P(L)` of size at least two.
    pub fn minimal(matrix: CoxeterMatrix, l_facets: Option<Vec<Subset>>) -> Result<BlowupProblem> {
        let p = BlowupProblem::new(matrix, l_facets, vec![])?;
        let r = p.l.iter().copied().filter(|&t| t.len() >= 2 && p.matrix.components(t).len() == 1).collect();
        BlowupProblem::new(p.matrix, Some(p.l.iter().copied().collect()), r)
    }

    /// `L` = all proper nonempty subsets (the boundary of a Coxeter cell, or
    /// the complete tiling of a simplicial system).
    pub fn proper_subsets(matrix: &CoxeterMatrix) -> Vec<Subset> {
        let full = matrix.full();
        (0..matrix.rank()).map(|s| full.minus(Subset::singleton(s))).collect()
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn r(&self) -> &[Subset] {
        &self.r
    }

    /// Nonempty elements of `P(L)`.
    pub fn l_simplices(&self) -> impl Iterator<Item = &Subset> {
        self.l.iter()
    }

    /// Membership in `P(L)` (the empty set included).
    pub fn in_p(&self, t: Subset) -> bool {
        t.is_empty() || self.l.contains(&t)
    }

    pub fn in_r(&self, t: Subset) -> bool {
        self.r.contains(&t)
    }

    /// `S_#`: singletons in generator order, then `R`.
    pub fn s_sharp(&self) -> Vec<Subset> {
        let mut v: Vec<Subset> = (0..self.matrix.rank()).map(Subset::singleton).collect();
        v.extend(self.r.iter().copied());
        v
    }

    /// Label of an element of `S_#`: the generator label for a singleton,
    /// `{a,b}` otherwise.
    pub fn subset_name(&self, t: Subset) -> String {
        let ls = self.matrix.subset_labels(t);
        if ls.len() == 1 {
            ls[0].clone()
        } else {
            format!("{{{}}}", ls.join(","))
        }
    }

    /// `L` as a simplicial complex on the generators.
    pub fn l_complex(&self) -> SimplicialComplex {
        let facets: Vec<Vec<usize>> = self.l.iter().map(|t| t.iter().collect()).collect();
        SimplicialComplex::from_facets(self.matrix.gens().to_vec(), &facets).expect("L is well formed")
    }
}

/// The `R`-decomposition of an element of `P(L)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RDecomposition {
    /// `T_0`: the part of `T` outside every element of `R` below `T`.
    pub fixed: Subset,
    /// Maximal elements of `R` contained in `T`.
    pub factors: Vec<Subset>,
    /// Whether the nonempty parts are pairwise disjoint and commute.
    pub completely_disjoint: bool,
}

impl RDecomposition {
    /// Nonempty parts: `T_0` (if nonempty) followed by the factors.
    pub fn parts(&self) -> Vec<Subset> {
        let mut v = Vec::new();
        if !self.fixed.is_empty() {
            v.push(self.fixed);
        }
        v.extend(self.factors.iter().copied());
        v
    }
}

/// Computes the `R`-decomposition of `t`, which must lie in `P(L)`.
pub fn r_decomposition(p: &BlowupProblem, t: Subset) -> Result<RDecomposition> {
    if !p.in_p(t) {
        return input_err(format!("{:?} is not in P(L)", p.matrix.subset_labels(t)));
    }
    Ok(decompose(p, t))
}

fn decompose(p: &BlowupProblem, t: Subset) -> RDecomposition {
    let below: Vec<Subset> = p.r.iter().copied().filter(|u| u.is_subset_of(t)).collect();
    let factors: Vec<Subset> =
        below.iter().copied().filter(|&u| !below.iter().any(|&w| u.is_proper_subset_of(w))).collect();
    let covered = factors.iter().fold(Subset::EMPTY, |a, &u| a.union(u));
    let fixed = t.minus(covered);
    let mut parts = factors.clone();
    if !fixed.is_empty() {
        parts.push(fixed);
    }
    let completely_disjoint = parts.iter().enumerate().all(|(i, &a)| {
        parts[i + 1..].iter().all(|&b| a.is_disjoint(b) && p.matrix.commute(a, b))
    });
    RDecomposition { fixed, factors, completely_disjoint }
}

/// `j_T(T') = w_T T' w_T` for `T' ⊆ T`, computed from the diagram symmetry.
pub fn conjugate_subset(p: &BlowupProblem, t: Subset, t_prime: Subset) -> Result<Subset> {
    let sym = subset_symmetry(&p.matrix, t)?;
    Ok(t_prime.map(&sym.perm))
}

/// Result of the admissibility check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibleReport {
    pub admissible: bool,
    /// First violation in a human-readable form.
    pub violation: Option<String>,
    /// Every pair `{s,t}` in `P(L)` with `2 < m < inf` lies in `R`.
    pub fully_admissible: bool,
}

/// Checks the two admissibility axioms and full admissibility.
pub fn check_admissible(p: &BlowupProblem) -> AdmissibleReport {
    let mut violation = None;
    'outer: for &t in &p.r {
        let sym = match subset_symmetry(&p.matrix, t) {
            Ok(s) => s,
            Err(_) => {
                violation = Some(format!("R element {} is not spherical", p.subset_name(t)));
                break;
            }
        };
        for &u in p.r.iter().filter(|u| u.is_subset_of(t)) {
            let image = u.map(&sym.perm);
            if !p.in_r(image) {
                violation = Some(format!(
                    "j_T does not preserve R below T: T = {}, T' = {}, image {}",
                    p.subset_name(t),
                    p.subset_name(u),
                    p.subset_name(image)
                ));
                break 'outer;
            }
        }
    }
    if violation.is_none() {
        for &t in &p.l {
            let d = decompose(p, t);
            if !d.completely_disjoint {
                violation = Some(format!("the R-decomposition of {} is not a decomposition", p.subset_name(t)));
                break;
            }
        }
    }
    let n = p.matrix.rank();
    let fully_admissible = (0..n).all(|i| {
        (i + 1..n).all(|j| match p.matrix.m(i, j) {
            Entry::Finite(m) if m > 2 => {
                let pair = Subset::from_indices([i, j]);
                !p.in_p(pair) || p.in_r(pair)
            }
            _ => true,
        })
    });
    AdmissibleReport { admissible: violation.is_none(), violation, fully_admissible }
}

/// Whether a collection of elements of `S_#` is `R`-nested, by the recursive
/// definition.
pub fn is_nested(p: &BlowupProblem, collection: &[Subset]) -> bool {
    if collection.is_empty() {
        return true;
    }
    let support = collection.iter().fold(Subset::EMPTY, |a, &u| a.union(u));
    if !p.in_p(support) {
        return false;
    }
    let in_r: Vec<Subset> = collection.iter().copied().filter(|&u| p.in_r(u)).collect();
    let mut maximal: Vec<Subset> =
        in_r.iter().copied().filter(|&u| !in_r.iter().any(|&w| u.is_proper_subset_of(w))).collect();
    maximal.sort();
    maximal.dedup();
    let mut factors = decompose(p, support).factors;
    factors.sort();
    if maximal != factors {
        return false;
    }
    maximal.iter().all(|&ti| {
        let below: Vec<Subset> = collection.iter().copied().filter(|u| u.is_proper_subset_of(ti)).collect();
        is_nested(p, &below)
    })
}

/// Which case of the pair classification makes `{T, T'}` nested, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairCase {
    /// Two singletons with finite `m` whose union is not in `R`.
    Case1,
    /// `{T, T'}` is the `R`-decomposition of `T ∪ T'`.
    Case2,
    /// One contains the other.
    Case3,
}

/// Classifies a pair of distinct elements of `S_#` directly (no recursion).
pub fn pair_case(p: &BlowupProblem, t: Subset, u: Subset) -> Option<PairCase> {
    if t.len() == 1 && u.len() == 1 {
        let (s, s2) = (t.first().unwrap(), u.first().unwrap());
        if p.matrix.m(s, s2).is_finite() && !p.in_r(t.union(u)) {
            return Some(PairCase::Case1);
        }
    }
    let union = t.union(u);
    if p.in_p(union) && t.is_disjoint(u) {
        let mut parts = decompose(p, union).parts();
        parts.sort();
        let mut want = vec![t, u];
        want.sort();
        if parts == want {
            return Some(PairCase::Case2);
        }
    }
    if t.is_proper_subset_of(u) || u.is_proper_subset_of(t) {
        return Some(PairCase::Case3);
    }
    None
}

/// The nested-set complex `L_#` with its vertex set `S_#` and matrix `M_#`.
#[derive(Debug, Clone)]
pub struct NestedComplex {
    pub s_sharp: Vec<Subset>,
    pub complex: SimplicialComplex,
    pub m_sharp: CoxeterMatrix,
}

impl NestedComplex {
    pub fn index_of(&self, t: Subset) -> Option<usize> {
        self.s_sharp.iter().position(|&u| u == t)
    }

    /// Faces as collections of subsets.
    pub fn nested_sets(&self) -> Vec<Vec<Subset>> {
        self.complex.faces().map(|f| f.iter().map(|&i| self.s_sharp[i]).collect()).collect()
    }
}

/// Builds `L_#` and `M_#`. Requires an admissible problem.
pub fn nested_complex(p: &BlowupProblem) -> Result<NestedComplex> {
    let adm = check_admissible(p);
    if !adm.admissible {
        return input_err(format!("inadmissible blow-up collection: {}", adm.violation.unwrap()));
    }
    let s_sharp = p.s_sharp();
    let n = s_sharp.len();
    let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut stack: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    while let Some(f) = stack.pop() {
        let last = *f.last().unwrap();
        for w in last + 1..n {
            let mut g = f.clone();
            g.push(w);
            let sets: Vec<Subset> = g.iter().map(|&i| s_sharp[i]).collect();
            if is_nested(p, &sets) {
                stack.push(g);
            }
        }
        faces.insert(f);
    }
    let labels: Vec<String> = s_sharp.iter().map(|&t| p.subset_name(t)).collect();
    let complex = SimplicialComplex::from_faces(labels.clone(), faces)?;
    let m_sharp = CoxeterMatrix::from_fn(labels, |i, j| {
        let (t, u) = (s_sharp[i], s_sharp[j]);
        match pair_case(p, t, u) {
            Some(PairCase::Case1) => p.matrix.m(t.first().unwrap(), u.first().unwrap()),
            Some(_) => Entry::Finite(2),
            None => Entry::Infinite,
        }
    })?;
    Ok(NestedComplex { s_sharp, complex, m_sharp })
}

/// The gluing involution `j_T` on the vertex set of the star of `T` in
/// `L_#`, as a map of `S_#` indices.
pub fn gluing_involution(p: &BlowupProblem, nc: &NestedComplex, t: Subset) -> Result<BTreeMap<usize, usize>> {
    let ti = match nc.index_of(t) {
        Some(i) => i,
        None => return input_err(format!("{} is not in S_#", p.subset_name(t))),
    };
    let sym = subset_symmetry(&p.matrix, t)?;
    let mut map = BTreeMap::new();
    for v in nc.complex.star_vertices(ti) {
        let u = nc.s_sharp[v];
        let image = if u.is_subset_of(t) { u.map(&sym.perm) } else { u };
        match nc.index_of(image) {
            Some(k) => {
                map.insert(v, k);
            }
            None => {
                return Err(Error::Internal(format!("j_T image {} is not in S_#", p.subset_name(image))));
            }
        }
    }
    Ok(map)
}

/// All gluing involutions, indexed like `S_#`.
pub fn all_gluing_involutions(p: &BlowupProblem, nc: &NestedComplex) -> Result<Vec<BTreeMap<usize, usize>>> {
    nc.s_sharp.iter().map(|&t| gluing_involution(p, nc, t)).collect()
}

/// Witness of a Condition (F) failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FWitness {
    /// The spherical set whose conclusion fails.
    pub t: Subset,
    /// The decomposition `{T_1, ..., T_k}` with `k >= 3`.
    pub parts: Vec<Subset>,
    /// Either `"not in P"` or `"in R"`.
    pub reason: &'static str,
}

/// Outcome of Condition (F).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FVerdict {
    pub holds: bool,
    pub witness: Option<FWitness>,
}

/// Checks Condition (F) on every nonempty spherical subset.
pub fn condition_f(p: &BlowupProblem) -> Result<FVerdict> {
    let n = p.matrix.rank();
    if n > CONDITION_F_CAP {
        return Err(Error::Cap(format!("{n} generators exceed the Condition (F) cap of {CONDITION_F_CAP}")));
    }
    let adm = check_admissible(p);
    if !adm.fully_admissible {
        return input_err("Condition (F) requires a fully admissible collection");
    }
    let in_sharp = |u: Subset| u.len() == 1 || p.in_r(u);
    let pair_ok = |a: Subset, b: Subset| {
        let u = a.union(b);
        p.in_p(u) && !p.in_r(u)
    };
    for t in spherical_poset(&p.matrix, CONDITION_F_CAP)? {
        let comps = p.matrix.components(t);
        if comps.len() < 3 {
            continue;
        }
        let mut found = None;
        for_each_partition(&comps, &mut |blocks: &[Subset]| {
            if found.is_some() || blocks.len() < 3 || !blocks.iter().all(|&b| in_sharp(b)) {
                return;
            }
            let pairwise = (0..blocks.len()).all(|i| (i + 1..blocks.len()).all(|j| pair_ok(blocks[i], blocks[j])));
            if pairwise {
                found = Some(blocks.to_vec());
            }
        });
        if let Some(parts) = found {
            if !p.in_p(t) || p.in_r(t) {
                let reason = if p.in_p(t) { "in R" } else { "not in P" };
                return Ok(FVerdict { holds: false, witness: Some(FWitness { t, parts, reason }) });
            }
        }
    }
    Ok(FVerdict { holds: true, witness: None })
}

/// Calls `f` with every set partition of `items`, each block given as the
/// union of its members.
fn for_each_partition(items: &[Subset], f: &mut dyn FnMut(&[Subset])) {
    fn rec(items: &[Subset], k: usize, blocks: &mut Vec<Subset>, f: &mut dyn FnMut(&[Subset])) {
        if k == items.len() {
            f(blocks);
            return;
        }
        for b in 0..blocks.len() {
            let old = blocks[b];
            blocks[b] = old.union(items[k]);
            rec(items, k + 1, blocks, f);
            blocks[b] = old;
        }
        blocks.push(items[k]);
        rec(items, k + 1, blocks, f);
        blocks.pop();
    }
    rec(items, 0, &mut Vec::new(), f);
}

/// A group presentation by involutive-or-not generators and relator words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub gens: Vec<String>,
    /// Relators as sequences of generator indices.
    pub relators: Vec<Vec<usize>>,
    /// Optional image of each generator as a word in another alphabet.
    pub images: Option<Images>,
}

/// Images of the generators as words over a target alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Images {
    pub alphabet: Vec<String>,
    pub words: Vec<Vec<usize>>,
}

impl Presentation {
    /// Relator words spelled with generator labels.
    pub fn relator_labels(&self) -> Vec<Vec<String>> {
        self.relators.iter().map(|r| r.iter().map(|&g| self.gens[g].clone()).collect()).collect()
    }

    /// Whether the presentation has a relator equal to `word` up to rotation
    /// and reversal.
    pub fn has_relator(&self, word: &[usize]) -> bool {
        let n = word.len();
        let variants = |w: &[usize]| -> Vec<Vec<usize>> {
            let mut out = Vec::new();
            for r in [w.to_vec(), w.iter().rev().copied().collect()] {
                for k in 0..n {
                    out.push(r[k..].iter().chain(&r[..k]).copied().collect());
                }
            }
            out
        };
        let vs = variants(word);
        self.relators.iter().any(|r| r.len() == n && vs.contains(r))
    }
}

/// Which relation family a mock-presentation relator belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelationKind {
    Square,
    Braid,
    Commuting,
    Conjugation,
}

/// Builds the presentation of the mock reflection group `A` with generators
/// indexed by `S_#` and images `alpha_T -> w_T` as reduced words over `S`.
/// Returns each relator's family alongside.
pub fn mock_presentation(p: &BlowupProblem) -> Result<(Presentation, Vec<RelationKind>)> {
    let nc = nested_complex(p)?;
    let s = &nc.s_sharp;
    let n = s.len();
    let mut relators = Vec::new();
    let mut kinds = Vec::new();
    for i in 0..n {
        relators.push(vec![i, i]);
        kinds.push(RelationKind::Square);
    }
    for i in 0..n {
        for j in i + 1..n {
            match pair_case(p, s[i], s[j]) {
                Some(PairCase::Case1) => {
                    if let Entry::Finite(m) = nc.m_sharp.m(i, j) {
                        relators.push((0..m).flat_map(|_| [i, j]).collect());
                        kinds.push(RelationKind::Braid);
                    }
                }
                Some(PairCase::Case2) => {
                    relators.push(vec![i, j, i, j]);
                    kinds.push(RelationKind::Commuting);
                }
                Some(PairCase::Case3) | None => {}
            }
        }
    }
    // alpha_T alpha_T' alpha_T alpha_T'' for T' strictly inside T
    for (ti, &t) in s.iter().enumerate() {
        for (ui, &u) in s.iter().enumerate() {
            if u.is_proper_subset_of(t) {
                let image = conjugate_subset(p, t, u)?;
                let vi = nc.index_of(image).ok_or_else(|| Error::Internal("conjugate outside S_#".into()))?;
                relators.push(vec![ti, ui, ti, vi]);
                kinds.push(RelationKind::Conjugation);
            }
        }
    }
    let images = Images {
        alphabet: p.matrix.gens().to_vec(),
        words: s.iter().map(|&t| longest_word_of(p, t)).collect::<Result<Vec<_>>>()?,
    };
    let gens = nc.complex.labels().to_vec();
    Ok((Presentation { gens, relators, images: Some(images) }, kinds))
}

/// A reduced word for `w_T` over `S`, computed in the finite group `W_T`.
pub fn longest_word_of(p: &BlowupProblem, t: Subset) -> Result<Vec<usize>> {
    let members: Vec<usize> = t.iter().collect();
    let sub = p.matrix.reorder(&members)?;
    let model = crate::coxeter::enumerate_finite_group(&sub, crate::coxeter::DEFAULT_ORDER_CAP)?;
    Ok(model.longest_word(sub.full()).into_iter().map(|k| members[k]).collect())
}

/// Evaluates each relator through the image map in a finite group model of
/// `W`; returns the indices of relators that do not die.
pub fn surviving_relators(pres: &Presentation, model: &FiniteGroupModel) -> Vec<usize> {
    let Some(images) = &pres.images else { return (0..pres.relators.len()).collect() };
    pres.relators
        .iter()
        .enumerate()
        .filter(|(_, r)| {
            let word: Vec<usize> = r.iter().flat_map(|&g| images.words[g].iter().copied()).collect();
            !model.is_identity(&word)
        })
        .map(|(i, _)| i)
        .collect()
}

/// Edges of `L_#` grouped by pair case, for reporting.
pub fn pair_case_counts(p: &BlowupProblem, nc: &NestedComplex) -> HashMap<&'static str, usize> {
    let mut out = HashMap::new();
    for (a, b) in nc.complex.edges() {
        let key = match pair_case(p, nc.s_sharp[a], nc.s_sharp[b]) {
            Some(PairCase::Case1) => "case1",
            Some(PairCase::Case2) => "case2",
            Some(PairCase::Case3) => "case3",
            None => "none",
        };
        *out.entry(key).or_insert(0) += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::enumerate_finite_group;

    fn a3() -> CoxeterMatrix {
        CoxeterMatrix::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![
                vec![Entry::Finite(1), Entry::Finite(3), Entry::Finite(2)],
                vec![Entry::Finite(3), Entry::Finite(1), Entry::Finite(3)],
                vec![Entry::Finite(2), Entry::Finite(3), Entry::Finite(1)],
            ],
        )
        .unwrap()
    }

    fn a3_minimal() -> BlowupProblem {
        let m = a3();
        let l = BlowupProblem::proper_subsets(&m);
        BlowupProblem::new(m, Some(l), vec![Subset::from_indices([0, 1]), Subset::from_indices([1, 2])]).unwrap()
    }

    #[test]
    fn r_decompositions() {
        let p = a3_minimal();
        let d = r_decomposition(&p, Subset::from_indices([0, 2])).unwrap();
        assert_eq!(d.fixed, Subset::from_indices([0, 2]));
        assert!(d.factors.is_empty());
        let d = r_decomposition(&p, Subset::from_indices([0, 1])).unwrap();
        assert_eq!(d.fixed, Subset::EMPTY);
        assert_eq!(d.factors, vec![Subset::from_indices([0, 1])]);
        assert!(r_decomposition(&p, Subset::full(3)).is_err());
    }

    #[test]
    fn a3_minimal_is_a_pentagon() {
        let p = a3_minimal();
        assert!(check_admissible(&p).admissible);
        let nc = nested_complex(&p).unwrap();
        assert_eq!(nc.s_sharp.len(), 5);
        assert_eq!(nc.complex.edges().len(), 5);
        assert_eq!(nc.complex.dimension(), 1);
        assert!(nc.complex.neighbors(0).iter().all(|&v| nc.complex.neighbors(v).len() == 2));
        let ab = nc.index_of(Subset::from_indices([0, 1])).unwrap();
        let bc = nc.index_of(Subset::from_indices([1, 2])).unwrap();
        assert_eq!(nc.m_sharp.m(0, 2), Entry::Finite(2));
        assert_eq!(nc.m_sharp.m(0, 1), Entry::Infinite);
        assert_eq!(nc.m_sharp.m(ab, bc), Entry::Infinite);
    }

    #[test]
    fn a3_minimal_gluing() {
        let p = a3_minimal();
        let nc = nested_complex(&p).unwrap();
        let j = gluing_involution(&p, &nc, Subset::from_indices([0, 1])).unwrap();
        assert_eq!(j[&0], 1);
        assert_eq!(j[&1], 0);
        assert_eq!(j.keys().copied().collect::<Vec<_>>(), vec![0, 1, 3]);
        assert_eq!(j[&3], 3);
    }

    #[test]
    fn schlafli_with_odd_neighbours_of_two_is_inadmissible() {
        let m = CoxeterMatrix::schlafli(&[3, 2, 3]).unwrap();
        let l = BlowupProblem::proper_subsets(&m);
        let r: Vec<Subset> = (0..4).flat_map(|a| (a + 1..4).map(move |b| Subset::interval(a, b))).filter(|t| t.len() < 4).collect();
        let p = BlowupProblem::new(m, Some(l), r).unwrap();
        assert!(!check_admissible(&p).admissible);
        assert!(nested_complex(&p).is_err());
    }

    #[test]
    fn maximal_sets_are_admissible_and_f_holds() {
        for labels in [vec![3, 3], vec![4, 3], vec![5, 3], vec![3, 3, 3], vec![2, 3, 2]] {
            let m = CoxeterMatrix::schlafli(&labels).unwrap();
            let p = BlowupProblem::maximal(m, None).unwrap();
            assert!(check_admissible(&p).admissible);
            assert!(condition_f(&p).unwrap().holds);
        }
    }

    #[test]
    fn three_a2_minimal_fails_f() {
        let m = CoxeterMatrix::schlafli(&[3, 2, 3, 2, 3]).unwrap();
        let l = BlowupProblem::proper_subsets(&m);
        let p = BlowupProblem::minimal(m, Some(l)).unwrap();
        let v = condition_f(&p).unwrap();
        assert!(!v.holds);
        let w = v.witness.unwrap();
        assert_eq!(w.t, Subset::full(6));
        assert_eq!(w.parts.len(), 3);
        assert_eq!(w.reason, "not in P");
    }

    #[test]
    fn cube_blown_up_at_its_centre() {
        for n in 2..=4 {
            let m = CoxeterMatrix::schlafli(&vec![2; n - 1]).unwrap();
            let p = BlowupProblem::new(m.clone(), None, vec![m.full()]).unwrap();
            let nc = nested_complex(&p).unwrap();
            assert_eq!(nc.s_sharp.len(), n + 1);
            // cone over the boundary of the (n-1)-simplex: n facets of size n
            let facets = nc.complex.facets();
            assert_eq!(facets.len(), n);
            assert!(facets.iter().all(|f| f.len() == n && f.contains(&n)));
        }
    }

    #[test]
    fn mock_presentation_of_a3_minimal() {
        let p = a3_minimal();
        let (pres, kinds) = mock_presentation(&p).unwrap();
        assert_eq!(pres.gens.len(), 5);
        assert!(pres.has_relator(&[0, 2, 0, 2]));
        assert!(!pres.has_relator(&[0, 1, 0, 1, 0, 1]));
        assert_eq!(kinds.iter().filter(|&&k| k == RelationKind::Braid).count(), 1);
        let model = enumerate_finite_group(&a3(), 1000).unwrap();
        assert!(surviving_relators(&pres, &model).is_empty());
    }

    #[test]
    fn empty_r_gives_the_coxeter_presentation() {
        let m = CoxeterMatrix::schlafli(&[3]).unwrap();
        let p = BlowupProblem::new(m, None, vec![]).unwrap();
        let (pres, _) = mock_presentation(&p).unwrap();
        assert_eq!(pres.relators.len(), 3);
        assert!(pres.has_relator(&[0, 1, 0, 1, 0, 1]));
    }
}
