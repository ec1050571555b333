//! The presentation of the symmetry group of the maximally symmetric
//! associahedral tiling, checked against its action on polygon sides.

use coxblow::polytopes::symm_presentation;

fn main() -> coxblow::Result<()> {
    for n in 2..=4 {
        let s = symm_presentation(n)?;
        println!(
            "n = {n}: {} generators, {} relators, {} fail under psi",
            s.presentation.gens.len(),
            s.presentation.relators.len(),
            s.failures.len()
        );
        let mut seen = Vec::new();
        for f in &s.families {
            if !seen.contains(f) {
                seen.push(*f);
            }
        }
        for f in seen {
            println!("  {:<16} {}", f.name(), s.families.iter().filter(|&&g| g == f).count());
        }
        println!("  reversed reflection tail breaks {} square relators", s.reversed_tail_failures);
    }
    Ok(())
}
