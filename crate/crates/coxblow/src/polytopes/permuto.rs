//! The permutohedron as the fundamental tile of maximal blow-ups.

use crate::blowup::{nested_complex, BlowupProblem};
use crate::complexes::{automorphism_group, Permutation, SimplicialComplex, DEFAULT_AUT_CAP};
use crate::coxeter::{is_spherical, subset_symmetry, CoxeterMatrix, Entry};
use crate::groups::{framing_conditions, FramingReport, GluingSystem};
use crate::{input_err, Error, Result};

/// Largest `n` accepted by [`permutohedron_checks`].
pub const PERMUTO_DIMENSION_CAP: usize = 4;

/// Which kind of Coxeter system is blown up.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PermutoMode {
    /// `W` finite: the maximal blow-up of the boundary of the Coxeter cell.
    CellBoundary,
    /// `W` infinite with every proper subset spherical: the maximal blow-up
    /// of the complete tiling.
    Simplicial,
}

/// Results of [`permutohedron_checks`].
#[derive(Debug, Clone)]
pub struct PermutoReport {
    pub n: usize,
    pub mode: PermutoMode,
    /// Number of proper nonempty subsets, `2^(n+1) - 2`.
    pub vertex_count: usize,
    /// `L_#` of the maximal blow-up equals the complex of chains.
    pub chains_match: bool,
    /// `M_#` is right-angled on the edges of `L_#`.
    pub right_angled: bool,
    /// Order of `Aut(N(P^n))` by search, for `n <= 3`.
    pub automorphism_count: Option<usize>,
    /// Every `j_T` is the restriction of the generator permutation that
    /// acts as the longest-element symmetry on `T` and fixes `S - T`.
    pub explicit_extensions: bool,
    /// Generic framing conditions, searched over all automorphisms.
    pub framing: FramingReport,
    /// The link of a vertex of the tiling is the boundary of the
    /// `n`-dimensional octahedron: every facet of `L_#` has `n` elements and
    /// they pairwise commute.
    pub octahedral_vertex_links: bool,
    /// Conditions (E) and (H) hold along with M1 and M2, so the reflection
    /// tiling of the permutohedron covers the blow-up.
    pub covering: bool,
}

/// Builds the maximal blow-up of a spherical or simplicial system on
/// `n + 1` generators and checks its permutohedral structure.
pub fn permutohedron_checks(matrix: &CoxeterMatrix) -> Result<PermutoReport> {
    let rank = matrix.rank();
    if rank < 3 {
        return input_err("the permutohedron checks need at least three generators");
    }
    let n = rank - 1;
    if n > PERMUTO_DIMENSION_CAP {
        return Err(Error::Cap(format!("dimension {n} exceeds the cap of {PERMUTO_DIMENSION_CAP}")));
    }
    let full = matrix.full();
    let mode = if is_spherical(matrix, full) {
        PermutoMode::CellBoundary
    } else {
        let facets = BlowupProblem::proper_subsets(matrix);
        if let Some(&bad) = facets.iter().find(|&&t| !is_spherical(matrix, t)) {
            return input_err(format!(
                "neither spherical nor simplicial: {:?} is not spherical",
                matrix.subset_labels(bad)
            ));
        }
        PermutoMode::Simplicial
    };
    let p = BlowupProblem::maximal(matrix.clone(), Some(BlowupProblem::proper_subsets(matrix)))?;
    let nc = nested_complex(&p)?;
    let chains = SimplicialComplex::clique_complex(nc.complex.labels().to_vec(), |a, b| {
        let (t, u) = (nc.s_sharp[a], nc.s_sharp[b]);
        t.is_subset_of(u) || u.is_subset_of(t)
    });
    let chains_match = chains.faces().eq(nc.complex.faces());
    let vc = nc.s_sharp.len();
    let right_angled = (0..vc).all(|a| {
        (a + 1..vc).all(|b| match nc.m_sharp.m(a, b) {
            Entry::Finite(m) => m == 2 && nc.complex.adjacent(a, b),
            Entry::Infinite => !nc.complex.adjacent(a, b),
        })
    });
    let automorphism_count =
        if vc <= DEFAULT_AUT_CAP { Some(automorphism_group(&nc.complex, None, DEFAULT_AUT_CAP)?.len()) } else { None };

    let g = GluingSystem::from_blowup(&p)?;
    let mut explicit_extensions = true;
    for (v, &t) in nc.s_sharp.iter().enumerate() {
        let perm = subset_symmetry(matrix, t)?.perm;
        let images: Option<Vec<usize>> = nc.s_sharp.iter().map(|u| nc.index_of(u.map(&perm))).collect();
        let ext = match images.map(Permutation::new) {
            Some(Ok(e)) => e,
            _ => {
                explicit_extensions = false;
                continue;
            }
        };
        let agrees = g.j_pairs(v).iter().all(|&(x, y)| ext.apply(x) == y);
        if !agrees || !nc.complex.is_automorphism(&ext) {
            explicit_extensions = false;
        }
    }
    let framing = framing_conditions(&g, vc.max(DEFAULT_AUT_CAP))?;
    let facets = nc.complex.facets();
    let octahedral_vertex_links = facets.iter().all(|f| {
        f.len() == n && f.iter().all(|&a| f.iter().all(|&b| a == b || nc.m_sharp.m(a, b) == Entry::Finite(2)))
    });
    let covering = framing.m1.holds && framing.m2.holds && framing.e.holds && framing.h == Some(true);
    Ok(PermutoReport {
        n,
        mode,
        vertex_count: vc,
        chains_match,
        right_angled,
        automorphism_count,
        explicit_extensions,
        framing,
        octahedral_vertex_links,
        covering,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_hexagon() {
        let m = CoxeterMatrix::schlafli(&[3, 3]).unwrap();
        assert!(permutohedron_checks(&CoxeterMatrix::schlafli(&[3]).unwrap()).is_err());
        let r = permutohedron_checks(&m).unwrap();
        assert_eq!(r.vertex_count, 6);
        assert_eq!(r.automorphism_count, Some(12));
        assert!(r.chains_match && r.right_angled && r.explicit_extensions && r.covering);
    }

    #[test]
    fn simplicial_euclidean() {
        let r = permutohedron_checks(&CoxeterMatrix::schlafli(&[4, 3, 4]).unwrap()).unwrap();
        assert_eq!(r.mode, PermutoMode::Simplicial);
        assert_eq!(r.vertex_count, 14);
        assert_eq!(r.automorphism_count, Some(48));
        assert!(r.framing.e.holds && r.framing.h == Some(true));
        assert!(r.octahedral_vertex_links);
    }
}
