//! Blows up the boundary of the A3 permutohedron along `{a,b}` and `{b,c}`.
//! The link is a pentagon; prints `M_#`, the gluing involutions, the mock
//! presentation and the framing conditions, then the link as DOT.

use coxblow::blowup::{check_admissible, condition_f, gluing_involution, mock_presentation, nested_complex, BlowupProblem};
use coxblow::coxeter::{CoxeterMatrix, Entry, Subset};
use coxblow::groups::{framing_conditions, GluingSystem};

fn main() -> coxblow::Result<()> {
    let gens = vec!["a".to_string(), "b".to_string(), "c".to_string()];
    let m = CoxeterMatrix::from_fn(gens, |i, j| if i.abs_diff(j) == 1 { Entry::Finite(3) } else { Entry::Finite(2) })?;
    let l = BlowupProblem::proper_subsets(&m);
    let r = vec![Subset::from_indices([0, 1]), Subset::from_indices([1, 2])];
    let p = BlowupProblem::new(m, Some(l), r)?;
    println!("admissible: {}", check_admissible(&p).admissible);

    let nc = nested_complex(&p)?;
    let labels = nc.complex.labels();
    println!("S_# = {}", labels.join(" "));
    println!("M_#:");
    for row in nc.m_sharp.rows() {
        println!("  {}", row.iter().map(|e| format!("{e:>3}")).collect::<String>());
    }
    for &t in &nc.s_sharp {
        let j = gluing_involution(&p, &nc, t)?;
        let moved: Vec<String> =
            j.iter().filter(|(x, y)| x != y).map(|(&x, &y)| format!("{}->{}", labels[x], labels[y])).collect();
        println!("j_{} on its star: {}", p.subset_name(t), if moved.is_empty() { "identity".into() } else { moved.join(", ") });
    }

    let (pres, kinds) = mock_presentation(&p)?;
    println!("mock presentation on {} generators:", pres.gens.len());
    for (rel, kind) in pres.relator_labels().iter().zip(&kinds) {
        println!("  {:<28} {kind:?}", rel.join(" "));
    }
    println!("condition (F): {}", condition_f(&p)?.holds);

    let f = framing_conditions(&GluingSystem::from_blowup(&p)?, 24)?;
    println!("M1 {} M2 {} E {} H {:?}", f.m1.holds, f.m2.holds, f.e.holds, f.h);
    print!("{}", nc.complex.to_dot("pentagon"));
    Ok(())
}
