//! The diagonal model of the associahedron and the gluing data of the
//! associahedral tilings given by Schläfli symbols.

use std::collections::BTreeMap;

use crate::blowup::{check_admissible, BlowupProblem};
use crate::complexes::{Permutation, SimplicialComplex};
use crate::coxeter::{subset_symmetry, CoxeterMatrix, Subset};
use crate::groups::GluingSystem;
use crate::{input_err, Error, Result};

/// Largest dimension accepted by [`Associahedron::new`].
pub const ASSOC_DIMENSION_CAP: usize = 12;

/// The `n`-dimensional associahedron `K^n`, seen through the diagonals of a
/// polygon with `n + 3` vertices labelled `0..n+3`.
///
/// Vertex `v` of the dual complex is the proper interval `[k, l]` of
/// `{1, ..., n+1}`, equivalently the diagonal `{k-1, l+1}`. Intervals are
/// ordered by left end, then right end.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Associahedron {
    n: usize,
    intervals: Vec<(usize, usize)>,
    complex: SimplicialComplex,
    automorphisms: Vec<Permutation>,
}

impl Associahedron {
    pub fn new(n: usize) -> Result<Associahedron> {
        if n == 0 {
            return input_err("the associahedron needs n >= 1");
        }
        if n > ASSOC_DIMENSION_CAP {
            return Err(Error::Cap(format!("dimension {n} exceeds the cap of {ASSOC_DIMENSION_CAP}")));
        }
        let intervals: Vec<(usize, usize)> = (1..=n + 1)
            .flat_map(|k| (k..=n + 1).map(move |l| (k, l)))
            .filter(|&(k, l)| !(k == 1 && l == n + 1))
            .collect();
        let labels = intervals.iter().map(|&(k, l)| interval_label(k, l)).collect();
        let diag: Vec<(usize, usize)> = intervals.iter().map(|&(k, l)| (k - 1, l + 1)).collect();
        let complex = SimplicialComplex::clique_complex(labels, |a, b| !crosses(diag[a], diag[b]));
        let mut a = Associahedron { n, intervals, complex, automorphisms: Vec::new() };
        let mut auts: Vec<Permutation> = (0..a.polygon_size())
            .flat_map(|k| [(k, false), (k, true)])
            .map(|(k, flip)| a.dihedral_image(k, flip))
            .collect();
        auts.sort();
        auts.dedup();
        a.automorphisms = auts;
        Ok(a)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of polygon vertices, `n + 3`.
    pub fn polygon_size(&self) -> usize {
        self.n + 3
    }

    /// Number of diagonals, `C(n+3, 2) - (n+3)`.
    pub fn vertex_count(&self) -> usize {
        self.intervals.len()
    }

    pub fn interval(&self, v: usize) -> (usize, usize) {
        self.intervals[v]
    }

    /// The diagonal `{k-1, l+1}` of vertex `v`, smaller end first.
    pub fn diagonal(&self, v: usize) -> (usize, usize) {
        let (k, l) = self.intervals[v];
        (k - 1, l + 1)
    }

    pub fn index_of_interval(&self, k: usize, l: usize) -> Option<usize> {
        self.intervals.iter().position(|&x| x == (k, l))
    }

    /// Index of the diagonal with the given ends, in either order.
    pub fn index_of_diagonal(&self, a: usize, b: usize) -> Option<usize> {
        let (i, j) = (a.min(b), a.max(b));
        if i == 0 && j == self.n + 2 {
            return None;
        }
        if j < i + 2 {
            return None;
        }
        self.index_of_interval(i + 1, j - 1)
    }

    /// Whether the diagonals of `a` and `b` cross in their interiors.
    pub fn crosses(&self, a: usize, b: usize) -> bool {
        crosses(self.diagonal(a), self.diagonal(b))
    }

    /// The simplicial complex `L(K^n)`: faces are sets of pairwise
    /// noncrossing diagonals.
    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    /// The image of the dihedral group of the polygon in `Aut(K^n)`, sorted.
    /// For `n = 1` the vertex-type reflections act trivially and the image
    /// has order 2.
    pub fn automorphisms(&self) -> &[Permutation] {
        &self.automorphisms
    }

    /// The action on diagonals of the polygon map `x -> k + x` (or `k - x`).
    pub fn dihedral_image(&self, k: usize, reflect: bool) -> Permutation {
        let nn = self.polygon_size();
        let f = |x: usize| if reflect { (k + nn - x) % nn } else { (k + x) % nn };
        let images = (0..self.vertex_count())
            .map(|v| {
                let (i, j) = self.diagonal(v);
                self.index_of_diagonal(f(i), f(j)).expect("dihedral maps diagonals to diagonals")
            })
            .collect();
        Permutation::new(images).expect("dihedral action is a bijection")
    }

    /// `(m(Q), m(Q'))` with `m(Q) <= m(Q')`: the two polygons cut off by the
    /// diagonal have `m + 3` vertices, and the face is `K^m(Q) x K^m(Q')`.
    pub fn face_type(&self, v: usize) -> (usize, usize) {
        let (i, j) = self.diagonal(v);
        let inner = j - i - 2;
        let outer = self.n - 1 - inner;
        (inner.min(outer), inner.max(outer))
    }

    /// The right-angled Coxeter matrix on the diagonals: `2` for noncrossing
    /// pairs, infinity for crossing ones.
    pub fn right_angled_matrix(&self) -> CoxeterMatrix {
        CoxeterMatrix::right_angled(self.complex.labels().to_vec(), |a, b| !self.crosses(a, b))
            .expect("labels are distinct")
    }
}

/// Strict interleaving of the ends of two diagonals.
pub fn crosses(a: (usize, usize), b: (usize, usize)) -> bool {
    let (i, j) = (a.0.min(a.1), a.0.max(a.1));
    let (k, l) = (b.0.min(b.1), b.0.max(b.1));
    (i < k && k < j && j < l) || (k < i && i < l && l < j)
}

pub fn interval_label(k: usize, l: usize) -> String {
    format!("[{k},{l}]")
}

/// Gluing data of the tiling `X(m_1, ..., m_n)`: the blow-up of the
/// Coxeter system with the given Schläfli symbol along all proper intervals
/// of length at least two.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TilingData {
    symbol: Vec<u32>,
    assoc: Associahedron,
    /// Per vertex, the permutation of the generators `0..=n` induced by the
    /// longest element of the interval; identity outside the interval.
    flips: Vec<Vec<usize>>,
    /// Per vertex, the gluing involution on its star.
    j: Vec<BTreeMap<usize, usize>>,
    extendable: Vec<bool>,
}

impl TilingData {
    /// Builds the gluing data. Fails on symbols whose interval collection is
    /// not admissible or that have a non-spherical proper interval.
    pub fn new(symbol: &[u32]) -> Result<TilingData> {
        let n = symbol.len();
        if n == 0 {
            return input_err("a Schläfli symbol needs at least one entry");
        }
        let matrix = CoxeterMatrix::schlafli(symbol)?;
        let assoc = Associahedron::new(n)?;
        let problem = interval_problem(&matrix)?;
        let report = check_admissible(&problem);
        if !report.admissible {
            return input_err(format!(
                "symbol {} is not admissible: {}",
                symbol_string(symbol),
                report.violation.unwrap_or_default()
            ));
        }
        let mut flips = Vec::with_capacity(assoc.vertex_count());
        for v in 0..assoc.vertex_count() {
            let (k, l) = assoc.interval(v);
            flips.push(subset_symmetry(&matrix, Subset::interval(k - 1, l - 1))?.perm);
        }
        let mut j = Vec::with_capacity(assoc.vertex_count());
        for v in 0..assoc.vertex_count() {
            let (k, l) = assoc.interval(v);
            let mut map = BTreeMap::new();
            for x in assoc.complex.star_vertices(v) {
                let (a, b) = assoc.interval(x);
                let image = if k <= a && b <= l {
                    let s = Subset::interval(a - 1, b - 1).map(&flips[v]);
                    let lo = s.first().unwrap();
                    if s != Subset::interval(lo, lo + s.len() - 1) {
                        return Err(Error::Internal(format!("j of {} does not map intervals to intervals", interval_label(k, l))));
                    }
                    assoc.index_of_interval(lo + 1, lo + s.len()).unwrap()
                } else {
                    x
                };
                map.insert(x, image);
            }
            j.push(map);
        }
        let extendable = (0..assoc.vertex_count())
            .map(|v| {
                let (k, l) = assoc.interval(v);
                let size = l - k + 1;
                j[v].iter().all(|(a, b)| a == b) || size == 1 || size == n
            })
            .collect();
        Ok(TilingData { symbol: symbol.to_vec(), assoc, flips, j, extendable })
    }

    pub fn symbol(&self) -> &[u32] {
        &self.symbol
    }

    pub fn name(&self) -> String {
        symbol_string(&self.symbol)
    }

    pub fn associahedron(&self) -> &Associahedron {
        &self.assoc
    }

    /// The generator permutation of vertex `v`.
    pub fn flip(&self, v: usize) -> &[usize] {
        &self.flips[v]
    }

    /// The gluing involution of `v` on its star.
    pub fn j(&self, v: usize) -> &BTreeMap<usize, usize> {
        &self.j[v]
    }

    pub fn j_is_trivial(&self, v: usize) -> bool {
        self.j[v].iter().all(|(a, b)| a == b)
    }

    /// Extendability by the closed form: trivial, or `|T|` is `1` or `n`.
    pub fn extendable(&self, v: usize) -> bool {
        self.extendable[v]
    }

    /// Extendability by searching the dihedral automorphisms.
    pub fn extendable_by_search(&self, v: usize) -> bool {
        self.assoc.automorphisms.iter().any(|f| self.j[v].iter().all(|(&x, &y)| f.apply(x) == y))
    }

    /// The vertices with nonextendable gluing involutions.
    pub fn nonextendable(&self) -> Vec<usize> {
        (0..self.assoc.vertex_count()).filter(|&v| !self.extendable[v]).collect()
    }

    /// The invariant `t`: the number of nonextendable gluing involutions.
    pub fn t(&self) -> usize {
        self.extendable.iter().filter(|&&e| !e).count()
    }

    /// The gluing system on the diagonals, for the generic condition checks.
    pub fn gluing_system(&self) -> Result<GluingSystem> {
        let nv = self.assoc.vertex_count();
        let j = self.j.iter().map(|m| m.iter().map(|(&a, &b)| (a, b)).collect()).collect();
        let order = (0..nv)
            .map(|a| {
                let (k, l) = self.assoc.interval(a);
                (0..nv)
                    .map(|b| {
                        let (p, q) = self.assoc.interval(b);
                        a != b && p <= k && l <= q
                    })
                    .collect()
            })
            .collect();
        GluingSystem::new(self.assoc.right_angled_matrix(), self.assoc.complex.clone(), (0..nv).collect(), j, Some(order))
    }
}

/// The blow-up problem behind a Schläfli symbol: `L` is the complex of
/// proper subsets and `R` is every proper interval with at least two
/// elements.
pub fn interval_problem(matrix: &CoxeterMatrix) -> Result<BlowupProblem> {
    let r = matrix.rank();
    let facets = (0..r).map(|i| matrix.full().minus(Subset::singleton(i))).collect();
    let intervals = (0..r)
        .flat_map(|a| (a + 1..r).map(move |b| (a, b)))
        .filter(|&(a, b)| b - a + 1 < r)
        .map(|(a, b)| Subset::interval(a, b))
        .collect();
    BlowupProblem::new(matrix.clone(), Some(facets), intervals)
}

pub fn symbol_string(symbol: &[u32]) -> String {
    let parts: Vec<String> = symbol.iter().map(|m| m.to_string()).collect();
    format!("({})", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::automorphism_group;

    #[test]
    fn diagonal_counts() {
        for n in 1..=6 {
            let a = Associahedron::new(n).unwrap();
            let nn = n + 3;
            assert_eq!(a.vertex_count(), nn * (nn - 1) / 2 - nn);
        }
    }

    #[test]
    fn automorphism_orders() {
        assert_eq!(Associahedron::new(1).unwrap().automorphisms().len(), 2);
        for n in 2..=4 {
            let a = Associahedron::new(n).unwrap();
            assert_eq!(a.automorphisms().len(), 2 * (n + 3));
            let brute = automorphism_group(a.complex(), None, 24).unwrap();
            assert_eq!(brute, a.automorphisms());
        }
    }

    #[test]
    fn face_types() {
        let a = Associahedron::new(3).unwrap();
        let main = a.index_of_diagonal(0, 3).unwrap();
        assert_eq!(a.face_type(main), (1, 1));
        let cut = a.index_of_diagonal(0, 2).unwrap();
        assert_eq!(a.face_type(cut), (0, 2));
    }

    #[test]
    fn small_t_values() {
        assert_eq!(TilingData::new(&[3, 3, 3]).unwrap().t(), 3);
        assert_eq!(TilingData::new(&[4, 3, 4]).unwrap().t(), 1);
        assert_eq!(TilingData::new(&[3, 4, 2, 4]).unwrap().t(), 1);
        assert!(TilingData::new(&[3, 2, 3]).is_err());
    }

    #[test]
    fn closed_form_matches_search() {
        for sym in [[4u32, 3, 3], [3, 4, 3], [5, 3, 5], [2, 4, 2]] {
            let d = TilingData::new(&sym).unwrap();
            for v in 0..d.associahedron().vertex_count() {
                assert_eq!(d.extendable(v), d.extendable_by_search(v), "{sym:?} {v}");
            }
        }
    }
}
