//! Gluing data on four commuting generators that satisfy conditions (1)-(4)
//! yet carry holonomy around a square. The group it presents is dihedral of
//! order 14, smaller than the 16 vertices of the 4-cube it should fill.

use coxblow::groups::{
    cayley_ball_from_table, check_gluing_conditions, dihedral_counterexample, framing_conditions, gluing_presentation,
    holonomy, todd_coxeter,
};

fn main() -> coxblow::Result<()> {
    let g = dihedral_counterexample();
    let labels = g.labels();
    let rep = check_gluing_conditions(&g, 100_000, 100);
    println!("conditions 1-3: {} {} {}", rep.c1.holds, rep.c2.holds, rep.c3.holds);
    println!("condition 4: {:?} via {:?}", rep.c4.holds, rep.c4.certificate);

    let word: Vec<usize> = ["a", "d", "a", "b"].iter().map(|l| g.matrix().index_of(l).unwrap()).collect();
    println!("holonomy around a d a b: {}", holonomy(&g, &word)?.cycle_string(labels));
    let f = framing_conditions(&g, 24)?;
    println!("M2 {}: {}", f.m2.holds, f.m2.witness.as_deref().unwrap_or(""));

    let table = todd_coxeter(&gluing_presentation(&g)?, 100_000);
    println!("group order {} ({} cosets defined)", table.size(), table.cosets_defined());
    let ball = cayley_ball_from_table(&table, 3)?;
    println!("ball of radius 3: layers {:?}", ball.layer_sizes);
    Ok(())
}
