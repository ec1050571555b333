//! Reflections of Minkowski space in the face normals of the simplex,
//! pyramid, double pyramid and ideal octahedron.

use coxblow::linrep::{max_denominator, minkowski_fixtures, minkowski_form, minkowski_matrix, minkowski_reflect, Scalar};

fn main() -> coxblow::Result<()> {
    let fx = minkowski_fixtures();
    let get = |n: &str| fx.iter().find(|(m, _)| *m == n).map(|(_, v)| v.clone()).unwrap();
    for (name, v) in &fx {
        let m = minkowski_matrix(v)?;
        println!("{name:>5} {:?} norm {} denominator {}", v.render(), minkowski_form(v, v).render(), max_denominator(&m));
    }
    for x in ["v1", "v2", "v3"] {
        println!("r_u1({x}) = {:?}", minkowski_reflect(&get("u1"), &get(x))?.render());
    }
    let w = minkowski_matrix(&get("w"))?;
    println!("r_w:");
    for row in w.render() {
        println!("  {}", row.iter().map(|x| format!("{x:>5}")).collect::<String>());
    }
    Ok(())
}
