//! The forms `B_t` and the involutions `rho_v` for the pentagonal blow-up of
//! the A3 permutohedron, in exact rational arithmetic.

use coxblow::blowup::BlowupProblem;
use coxblow::coxeter::{CoxeterMatrix, Subset};
use coxblow::groups::GluingSystem;
use coxblow::linrep::{check_order_conditions, represent, select_parameter, Rational, Scalar};

fn print_matrix(name: &str, rows: &[Vec<String>]) {
    println!("{name}");
    for r in rows {
        println!("  {}", r.iter().map(|x| format!("{x:>6}")).collect::<String>());
    }
}

fn main() -> coxblow::Result<()> {
    let m = CoxeterMatrix::schlafli(&[3, 3])?;
    let p = BlowupProblem::new(
        m.clone(),
        Some(BlowupProblem::proper_subsets(&m)),
        vec![Subset::from_indices([0, 1]), Subset::from_indices([1, 2])],
    )?;
    let g = GluingSystem::from_blowup(&p)?;
    let order = check_order_conditions(&g)?;
    println!("(P) {} (C) {}", order.p_holds(), order.c_holds());
    println!("smallest integer t that verifies: {}", select_parameter(&g, 100, 1e-9)?);

    for t in [2, 3] {
        let rep = represent(&g, &Rational::from_int(t), 1e-9)?;
        let (form, mats) = rep.render();
        println!("t = {t}, basis {}", g.labels().join(" "));
        print_matrix("B_t", &form);
        for (v, m) in g.labels().iter().zip(&mats) {
            print_matrix(&format!("rho_{v}"), m);
        }
        println!("all checks pass: {}", rep.report().all_pass());
    }
    Ok(())
}
