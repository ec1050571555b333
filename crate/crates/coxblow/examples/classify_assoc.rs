//! Computes `t` for the associahedral tilings of dimensions 2 to 5 and
//! partitions each family into isomorphism classes.

use coxblow::polytopes::{classify_family, TilingData};

fn show(title: &str, symbols: &[&[u32]]) -> coxblow::Result<()> {
    let family: Vec<TilingData> = symbols.iter().map(|s| TilingData::new(s)).collect::<coxblow::Result<_>>()?;
    let c = classify_family(&family)?;
    println!("{title}");
    for (d, t) in family.iter().zip(&c.t) {
        println!("  X{} t = {t}", d.name());
    }
    let render = |classes: &[Vec<usize>]| {
        classes
            .iter()
            .map(|cl| cl.iter().map(|&i| family[i].name()).collect::<Vec<_>>().join(" ~ "))
            .collect::<Vec<_>>()
    };
    println!("  {} classes:", c.classes.len());
    for line in render(&c.classes) {
        println!("    {line}");
    }
    if c.weak_classes != c.classes {
        println!("  {} classes under the weak test:", c.weak_classes.len());
        for line in render(&c.weak_classes) {
            println!("    {line}");
        }
    }
    for (a, b) in &c.flags {
        println!("  mirror sets match but no framed isomorphism: {} / {}", family[*a].name(), family[*b].name());
    }
    Ok(())
}

fn main() -> coxblow::Result<()> {
    show("dimension 2", &[&[2, 2], &[3, 3], &[4, 3], &[5, 3], &[4, 4], &[6, 3], &[7, 3], &[2, 3]])?;
    show(
        "dimension 3",
        &[
            &[4, 2, 4],
            &[2, 4, 2],
            &[2, 2, 2],
            &[4, 3, 4],
            &[2, 4, 3],
            &[4, 3, 3],
            &[4, 3, 5],
            &[3, 4, 3],
            &[3, 3, 3],
            &[5, 3, 3],
            &[3, 5, 3],
            &[5, 3, 5],
            &[5, 3, 4],
        ],
    )?;
    show(
        "dimension 4",
        &[
            &[2, 4, 2, 4],
            &[4, 2, 2, 4],
            &[2, 2, 2, 2],
            &[3, 4, 2, 4],
            &[3, 4, 2, 2],
            &[4, 3, 3, 4],
            &[2, 4, 3, 3],
            &[3, 3, 4, 3],
            &[5, 3, 3, 4],
            &[4, 3, 3, 3],
            &[5, 3, 3, 5],
            &[5, 3, 3, 3],
            &[3, 3, 3, 3],
            &[3, 4, 3, 3],
        ],
    )?;
    show("dimension 5", &[&[3, 3, 3, 3, 3], &[4, 3, 3, 3, 3], &[4, 3, 3, 3, 4]])?;
    Ok(())
}
