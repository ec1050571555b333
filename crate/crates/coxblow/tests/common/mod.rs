//! Shared fixtures, strategies and property checks for the integration
//! tests. Each check returns `Err` with a description of the first
//! counterexample.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use coxblow::blowup::{
    check_admissible, condition_f, gluing_involution, mock_presentation, nested_complex, pair_case, surviving_relators,
    BlowupProblem,
};
use coxblow::cli::report::{Config, Report};
use coxblow::coxeter::{enumerate_finite_group, is_spherical, spherical_poset, CoxeterMatrix, Entry, Subset};
use coxblow::groups::GluingSystem;
use coxblow::linrep::{check_order_conditions, represent, select_parameter, Rational, Representation, Scalar};
use proptest::prelude::*;

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

pub fn corpus_text(name: &str) -> String {
    std::fs::read_to_string(corpus_dir().join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn corpus_files() -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .expect("corpus directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    files
}

/// The subcommand that reads a document of the given kind.
pub fn command_for(kind: &str) -> &'static str {
    match kind {
        "blowup" => "blowup",
        "gluing-system" => "check-gluing",
        "classify-assoc" => "classify-assoc",
        "permutohedron" => "permutohedron",
        "represent" => "represent",
        "enumerate" => "enumerate",
        "minkowski" => "minkowski",
        other => panic!("unknown kind {other}"),
    }
}

pub fn replay(name: &str) -> Report {
    let text = corpus_text(name);
    let doc = coxblow::cli::doc::parse_document(&text).unwrap();
    coxblow::cli::build_report(command_for(doc.problem.kind()), &text, &Config::default())
        .unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("s{i}")).collect()
}

fn entry() -> impl Strategy<Value = Entry> {
    prop_oneof![
        5 => Just(Entry::Finite(2)),
        4 => Just(Entry::Finite(3)),
        1 => Just(Entry::Finite(4)),
        1 => Just(Entry::Finite(5)),
        1 => Just(Entry::Finite(6)),
        1 => Just(Entry::Infinite),
    ]
}

/// Coxeter matrices on `min..=max` generators with labels at most 6.
pub fn arb_matrix(min: usize, max: usize) -> impl Strategy<Value = CoxeterMatrix> {
    (min..=max).prop_flat_map(|n| {
        proptest::collection::vec(entry(), n * (n - 1) / 2).prop_map(move |upper| {
            let mut k = 0;
            let mut rows = vec![vec![Entry::Finite(1); n]; n];
            for i in 0..n {
                for j in i + 1..n {
                    rows[i][j] = upper[k];
                    rows[j][i] = upper[k];
                    k += 1;
                }
            }
            CoxeterMatrix::new(labels(n), rows).unwrap()
        })
    })
}

/// Simply-laced matrices (labels 2 and 3), so the representation is exact.
pub fn arb_simply_laced(min: usize, max: usize) -> impl Strategy<Value = CoxeterMatrix> {
    (min..=max).prop_flat_map(|n| {
        proptest::collection::vec(prop_oneof![Just(2u32), Just(3u32)], n * (n - 1) / 2).prop_map(move |upper| {
            let idx = |i: usize, j: usize| i * n - i * (i + 1) / 2 + (j - i - 1);
            CoxeterMatrix::from_fn(labels(n), |i, j| Entry::Finite(upper[idx(i.min(j), i.max(j))])).unwrap()
        })
    })
}

/// An admissible blow-up: the maximal or minimal collection, or a random
/// collection of connected spherical subsets when that happens to be
/// admissible.
pub fn blowup_from(matrix: CoxeterMatrix, choice: u8, bits: u64) -> BlowupProblem {
    match choice % 3 {
        0 => BlowupProblem::maximal(matrix, None).unwrap(),
        1 => BlowupProblem::minimal(matrix, None).unwrap(),
        _ => {
            let poset = spherical_poset(&matrix, 16).unwrap();
            let candidates: Vec<Subset> =
                poset.into_iter().filter(|&t| t.len() >= 2 && matrix.components(t).len() == 1).collect();
            let r: Vec<Subset> =
                candidates.iter().enumerate().filter(|(i, _)| bits >> (i % 64) & 1 == 1).map(|(_, &t)| t).collect();
            let p = BlowupProblem::new(matrix.clone(), None, r).unwrap();
            if check_admissible(&p).admissible {
                p
            } else {
                BlowupProblem::minimal(matrix, None).unwrap()
            }
        }
    }
}

pub fn arb_blowup(max_gens: usize) -> impl Strategy<Value = BlowupProblem> {
    (arb_matrix(2, max_gens), any::<u8>(), any::<u64>()).prop_map(|(m, c, b)| blowup_from(m, c, b))
}

/// Faces are downward closed, and two vertices span an edge exactly when
/// the pair classification names a case. When the collection is fully
/// admissible, every face is spherical for `M_#`.
pub fn check_nested_complex(p: &BlowupProblem) -> Result<(), String> {
    let nc = nested_complex(p).map_err(|e| e.to_string())?;
    if let Some(f) = nc.complex.closure_violation() {
        return Err(format!("face {f:?} has a missing subface"));
    }
    let n = nc.s_sharp.len();
    for a in 0..n {
        for b in a + 1..n {
            let edge = nc.complex.adjacent(a, b);
            let case = pair_case(p, nc.s_sharp[a], nc.s_sharp[b]);
            if edge != case.is_some() {
                return Err(format!("pair {} {}: edge {edge}, case {case:?}", nc.complex.label(a), nc.complex.label(b)));
            }
        }
    }
    if check_admissible(p).fully_admissible && n <= 32 {
        for f in nc.complex.faces() {
            if !is_spherical(&nc.m_sharp, Subset::from_indices(f.iter().copied())) {
                return Err(format!("face {f:?} is not spherical in M_#"));
            }
        }
    }
    Ok(())
}

/// Every `j_T` is an involution of the star of `T` carrying faces of the
/// star to faces.
pub fn check_gluing_involutions(p: &BlowupProblem) -> Result<(), String> {
    let nc = nested_complex(p).map_err(|e| e.to_string())?;
    for (v, &t) in nc.s_sharp.iter().enumerate() {
        let j = gluing_involution(p, &nc, t).map_err(|e| e.to_string())?;
        let star: BTreeSet<usize> = nc.complex.star_vertices(v).into_iter().collect();
        if j.keys().copied().collect::<BTreeSet<_>>() != star {
            return Err(format!("j_{} is not defined on the star", nc.complex.label(v)));
        }
        for (&x, &y) in &j {
            if j.get(&y) != Some(&x) {
                return Err(format!("j_{} is not an involution at {}", nc.complex.label(v), nc.complex.label(x)));
            }
        }
        for f in nc.complex.faces() {
            if !f.contains(&v) {
                continue;
            }
            let mut img: Vec<usize> = f.iter().map(|x| j[x]).collect();
            img.sort();
            if !nc.complex.is_face(&img) {
                return Err(format!("j_{} sends the face {f:?} to a non-face", nc.complex.label(v)));
            }
        }
    }
    Ok(())
}

/// Mock relators map to the identity of `W` when `W` is finite.
pub fn check_relators_die(p: &BlowupProblem) -> Result<(), String> {
    if !is_spherical(p.matrix(), p.matrix().full()) {
        return Ok(());
    }
    let (pres, _) = mock_presentation(p).map_err(|e| e.to_string())?;
    let model = enumerate_finite_group(p.matrix(), 100_000).map_err(|e| e.to_string())?;
    let survivors = surviving_relators(&pres, &model);
    match survivors.first() {
        None => Ok(()),
        Some(&r) => Err(format!("relator {:?} survives", pres.relator_labels()[r])),
    }
}

/// Condition (F) holds for the maximal collection.
pub fn check_maximal_f(m: CoxeterMatrix) -> Result<(), String> {
    let p = BlowupProblem::maximal(m, None).map_err(|e| e.to_string())?;
    let v = condition_f(&p).map_err(|e| e.to_string())?;
    if v.holds {
        Ok(())
    } else {
        Err(format!("maximal collection fails (F): {:?}", v.witness))
    }
}

/// `rho_v(e_u) = e_{j_v(u)}` for every `u < v`, read off the exact
/// matrices (columns are images of basis vectors). Returns the number of
/// triples checked; systems without (P) and (C) are skipped.
pub fn check_basis_moves(p: &BlowupProblem) -> Result<usize, String> {
    let g = GluingSystem::from_blowup(p).map_err(|e| e.to_string())?;
    let o = check_order_conditions(&g).map_err(|e| e.to_string())?;
    if !o.p_holds() || !o.c_holds() {
        return Ok(0);
    }
    let t = select_parameter(&g, 100, 1e-9).map_err(|e| e.to_string())?;
    let rep = represent(&g, &Rational::from_int(t), 1e-9).map_err(|e| e.to_string())?;
    let Representation::Exact { matrices, .. } = rep else {
        return Err("expected exact mode".into());
    };
    let n = g.len();
    let mut count = 0;
    for v in 0..n {
        for u in 0..n {
            if g.less(u, v) != Some(true) || !g.complex().adjacent(u, v) {
                continue;
            }
            let u2 = g.j(v, u).ok_or("u is outside the star")?;
            for i in 0..n {
                let want = Rational::from_int(i64::from(i == u2));
                if matrices[v].get(i, u) != &want {
                    return Err(format!("rho_{}(e_{}) differs from e_{} in row {i}", g.labels()[v], g.labels()[u], g.labels()[u2]));
                }
            }
            count += 1;
        }
    }
    Ok(count)
}
