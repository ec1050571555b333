//! Maximal blow-ups whose tile is the permutohedron: the boundary of the A3
//! and B3 Coxeter cells, the 4-cube, and the Euclidean (4,3,4) tiling.

use coxblow::coxeter::CoxeterMatrix;
use coxblow::polytopes::permutohedron_checks;

fn main() -> coxblow::Result<()> {
    for symbol in [&[3, 3][..], &[4, 3], &[2, 2, 2], &[3, 3, 3], &[4, 3, 4]] {
        let r = permutohedron_checks(&CoxeterMatrix::schlafli(symbol)?)?;
        println!(
            "{symbol:?}: n = {}, {:?}, {} vertices, |Aut| = {:?}, chains {}, right-angled {}, extensions {}, E {} H {:?}, octahedral links {}",
            r.n,
            r.mode,
            r.vertex_count,
            r.automorphism_count,
            r.chains_match,
            r.right_angled,
            r.explicit_extensions,
            r.framing.e.holds,
            r.framing.h,
            r.octahedral_vertex_links
        );
    }
    Ok(())
}
