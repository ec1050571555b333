//! Report builders, one per document kind.
//!
//! A report is a JSON object with the fields `kind`, `input`, `results`,
//! `verdicts` (condition name to `true`, `false` or `null` when unknown),
//! `warnings` and `graphs`. Graphs hold `nodes` (labels) and `edges`
//! (`[from, to]` or `[from, to, generator]`) and are rendered to DOT by
//! [`emit_dot`].

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use super::doc::{BlowupDoc, ClassifyDoc, CoxeterDoc, EnumerateDoc, GluingDoc, MinkowskiDoc, RepresentDoc, SystemSource};
use crate::blowup::{
    check_admissible, condition_f, mock_presentation, nested_complex, pair_case_counts, surviving_relators, BlowupProblem,
    Presentation,
};
use crate::complexes::{SimplicialComplex, DEFAULT_AUT_CAP};
use crate::coxeter::{enumerate_finite_group, is_spherical, CoxeterMatrix, Subset, DEFAULT_ORDER_CAP};
use crate::groups::{
    cayley_ball_from_table, check_gluing_conditions, framing_conditions, gluing_presentation, holonomy, todd_coxeter,
    Certificate, Check, CosetStatus, FramingReport, GluingSystem,
};
use crate::linrep::{
    check_order_conditions, max_denominator, minkowski_form, minkowski_matrix, minkowski_reflect, represent,
    select_parameter, Rational, Representation, Scalar, VerifyReport,
};
use crate::polytopes::assoc::crosses;
use crate::polytopes::{classify_family, max_symmetry_test, permutohedron_checks, Associahedron, PermutoMode, TilingData};
use crate::{input_err, Error, Result};

/// Numeric limits shared by the commands.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Config {
    pub max_cosets: usize,
    pub t_scan_cap: i64,
    pub float_tolerance: f64,
}

impl Default for Config {
    fn default() -> Config {
        Config {
            max_cosets: crate::groups::DEFAULT_MAX_COSETS,
            t_scan_cap: crate::linrep::DEFAULT_T_SCAN_CAP,
            float_tolerance: crate::linrep::DEFAULT_FLOAT_TOLERANCE,
        }
    }
}

/// A finished report.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub value: Value,
    /// Set when a configured cap stopped part of the computation.
    pub cap_exceeded: bool,
}

impl Report {
    pub fn verdict(&self, name: &str) -> Option<Option<bool>> {
        self.value.get("verdicts")?.get(name).map(|v| v.as_bool())
    }

    pub fn verdict_names(&self) -> Vec<String> {
        match self.value.get("verdicts").and_then(|v| v.as_object()) {
            Some(m) => m.keys().cloned().collect(),
            None => Vec::new(),
        }
    }

    pub fn to_pretty(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.value).expect("JSON values serialize");
        s.push('\n');
        s
    }
}

struct Builder {
    kind: &'static str,
    input: Value,
    results: Map<String, Value>,
    verdicts: Map<String, Value>,
    warnings: Vec<String>,
    graphs: Map<String, Value>,
    cap_exceeded: bool,
}

impl Builder {
    fn new(kind: &'static str, input: Value) -> Builder {
        Builder {
            kind,
            input,
            results: Map::new(),
            verdicts: Map::new(),
            warnings: Vec::new(),
            graphs: Map::new(),
            cap_exceeded: false,
        }
    }

    fn result(&mut self, key: &str, v: Value) {
        self.results.insert(key.into(), v);
    }

    fn verdict(&mut self, key: &str, v: Option<bool>) {
        self.verdicts.insert(key.into(), json!(v));
    }

    fn graph(&mut self, key: &str, v: Value) {
        self.graphs.insert(key.into(), v);
    }

    /// Records a capped sub-computation as a warning.
    fn capped(&mut self, what: &str, e: &Error) {
        self.cap_exceeded |= matches!(e, Error::Cap(_));
        self.warnings.push(format!("{what}: {e}"));
    }

    fn finish(self) -> Report {
        let value = json!({
            "kind": self.kind,
            "input": self.input,
            "results": self.results,
            "verdicts": self.verdicts,
            "warnings": self.warnings,
            "graphs": self.graphs,
        });
        Report { value, cap_exceeded: self.cap_exceeded }
    }
}

fn to_input<T: serde::Serialize>(doc: &T) -> Value {
    serde_json::to_value(doc).expect("documents serialize")
}

fn check_json(c: &Check) -> Value {
    json!({ "holds": c.holds, "witness": c.witness })
}

fn names(labels: &[String], idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| labels[i].clone()).collect()
}

fn matrix_json(m: &CoxeterMatrix) -> Value {
    json!({
        "generators": m.gens(),
        "entries": m.rows().iter().map(|r| r.iter().map(|e| e.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

fn complex_graph(cx: &SimplicialComplex) -> Value {
    json!({ "nodes": cx.labels(), "edges": cx.edges().iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>() })
}

fn presentation_json(p: &Presentation) -> Value {
    let mut v = json!({ "generators": p.gens, "relators": p.relator_labels() });
    if let Some(img) = &p.images {
        v["images"] = json!(p
            .gens
            .iter()
            .zip(&img.words)
            .map(|(g, w)| (g.clone(), json!(names(&img.alphabet, w))))
            .collect::<Map<String, Value>>());
    }
    v
}

fn framing_json(f: &FramingReport, labels: &[String]) -> Value {
    json!({
        "m1": check_json(&f.m1),
        "m2": check_json(&f.m2),
        "e": check_json(&f.e),
        "h": f.h,
        "rigid": f.rigid,
        "nonextendable": names(labels, &f.nonextendable),
        "automorphism_count": f.automorphism_count,
    })
}

fn add_framing(b: &mut Builder, g: &GluingSystem) {
    match framing_conditions(g, DEFAULT_AUT_CAP) {
        Ok(f) => {
            b.result("framing", framing_json(&f, g.labels()));
            b.verdict("M1", Some(f.m1.holds));
            b.verdict("M2", Some(f.m2.holds));
            b.verdict("E", Some(f.e.holds));
            b.verdict("H", f.h);
        }
        Err(e) => {
            b.capped("framing conditions", &e);
            for k in ["M1", "M2", "E", "H"] {
                b.verdict(k, None);
            }
        }
    }
}

/// `blowup`: `S_#`, `M_#`, `L_#`, the mock presentation and the conditions.
pub fn blowup_report(doc: &BlowupDoc) -> Result<Report> {
    let mut b = Builder::new("blowup", to_input(doc));
    let p = doc.to_problem()?;
    let adm = check_admissible(&p);
    b.result("r", json!(p.r().iter().map(|&t| p.subset_name(t)).collect::<Vec<_>>()));
    b.result(
        "admissibility",
        json!({ "admissible": adm.admissible, "violation": adm.violation, "fully_admissible": adm.fully_admissible }),
    );
    b.verdict("admissible", Some(adm.admissible));
    match condition_f(&p) {
        Ok(f) => {
            let w = f.witness.as_ref().map(|w| {
                json!({
                    "t": p.subset_name(w.t),
                    "parts": w.parts.iter().map(|&t| p.subset_name(t)).collect::<Vec<_>>(),
                    "reason": w.reason,
                })
            });
            b.result("condition_f", json!({ "holds": f.holds, "witness": w }));
            b.verdict("F", Some(f.holds));
        }
        Err(e) => {
            b.capped("condition (F)", &e);
            b.verdict("F", None);
        }
    }
    if !adm.admissible {
        for k in ["M1", "M2", "E", "H", "relators-die"] {
            b.verdict(k, None);
        }
        return Ok(b.finish());
    }
    let nc = nested_complex(&p)?;
    b.result("s_sharp", json!(nc.complex.labels()));
    b.result("m_sharp", matrix_json(&nc.m_sharp));
    b.result(
        "l_sharp",
        json!({
            "vertex_count": nc.complex.vertex_count(),
            "face_count": nc.complex.face_count(),
            "dimension": nc.complex.dimension(),
            "facets": nc.complex.facets().iter().map(|f| names(nc.complex.labels(), f)).collect::<Vec<_>>(),
        }),
    );
    let counts: BTreeMap<&str, usize> = pair_case_counts(&p, &nc).into_iter().collect();
    b.result("pair_cases", json!(counts));
    let (pres, kinds) = mock_presentation(&p)?;
    let mut pj = presentation_json(&pres);
    pj["relator_kinds"] = json!(kinds.iter().map(|k| format!("{k:?}").to_lowercase()).collect::<Vec<_>>());
    b.result("presentation", pj);
    if is_spherical(p.matrix(), p.matrix().full()) {
        match enumerate_finite_group(p.matrix(), DEFAULT_ORDER_CAP) {
            Ok(model) => {
                let survivors = surviving_relators(&pres, &model);
                b.result("surviving_relators", json!(survivors.iter().map(|&i| pres.relator_labels()[i].clone()).collect::<Vec<_>>()));
                b.verdict("relators-die", Some(survivors.is_empty()));
            }
            Err(e) => {
                b.capped("finite group enumeration", &e);
                b.verdict("relators-die", None);
            }
        }
    } else {
        b.verdict("relators-die", None);
    }
    let g = GluingSystem::from_blowup(&p)?;
    add_framing(&mut b, &g);
    b.graph("l_sharp", complex_graph(&nc.complex));
    Ok(b.finish())
}

fn system_of(source: &SystemSource) -> Result<GluingSystem> {
    source.to_system()
}

/// `check-gluing`: conditions (1)-(4), (P), (C), framing, holonomy.
pub fn gluing_report(source: &SystemSource, cfg: &Config) -> Result<Report> {
    let mut b = Builder::new("check-gluing", to_input(source));
    let g = system_of(source)?;
    let labels = g.labels().to_vec();
    let rep = check_gluing_conditions(&g, cfg.max_cosets, cfg.t_scan_cap);
    let cert = match &rep.c4.certificate {
        Certificate::Enumeration { order } => json!({ "method": "coset-enumeration", "order": order }),
        Certificate::Representation { t } => json!({ "method": "representation", "t": t }),
        Certificate::Unknown { reason } => json!({ "method": "none", "reason": reason }),
    };
    b.result(
        "conditions",
        json!({
            "1": check_json(&rep.c1),
            "2": check_json(&rep.c2),
            "3": check_json(&rep.c3),
            "4": { "holds": rep.c4.holds, "witness": rep.c4.witness, "certificate": cert },
        }),
    );
    b.verdict("1", Some(rep.c1.holds));
    b.verdict("2", Some(rep.c2.holds));
    b.verdict("3", Some(rep.c3.holds));
    b.verdict("4", rep.c4.holds);
    let mut words = Vec::new();
    for (u, v, w) in &rep.relation_words {
        let idx: Vec<usize> = w.iter().map(|l| g.matrix().index_of(l).unwrap()).collect();
        let h = holonomy(&g, &idx)?;
        words.push(json!({ "pair": [u, v], "word": w, "holonomy": h.cycle_string(&labels) }));
    }
    b.result("relation_words", json!(words));
    if g.has_order() && g.bar_is_trivial() {
        let o = check_order_conditions(&g)?;
        b.result(
            "order_conditions",
            json!({ "p": o.p.iter().map(check_json).collect::<Vec<_>>(), "c": o.c.iter().map(check_json).collect::<Vec<_>>() }),
        );
        b.verdict("P", Some(o.p_holds()));
        b.verdict("C", Some(o.c_holds()));
    }
    add_framing(&mut b, &g);
    b.graph("l", complex_graph(g.complex()));
    if rep.c1.holds && rep.c2.holds && rep.c3.holds {
        let pres = gluing_presentation(&g)?;
        let table = todd_coxeter(&pres, cfg.max_cosets);
        if table.status() == CosetStatus::Closed {
            let order = table.size();
            b.result("group_order", json!(order));
            let ball = cayley_ball_from_table(&table, order)?;
            b.graph("cayley", ball_graph(&ball));
            if is_spherical(g.matrix(), g.matrix().full()) {
                if let Ok(model) = enumerate_finite_group(g.matrix(), DEFAULT_ORDER_CAP) {
                    let cell = model.order();
                    b.result("coxeter_cell_vertices", json!(cell));
                    if order < cell {
                        b.result(
                            "note",
                            json!(format!(
                                "the group has order {order}, fewer than the {cell} vertices of the Coxeter cell, so the local picture cannot be completed"
                            )),
                        );
                    }
                }
            }
        } else {
            b.warnings.push(format!("coset enumeration stopped at {} cosets", cfg.max_cosets));
        }
    }
    Ok(b.finish())
}

fn ball_graph(ball: &crate::groups::CayleyBall) -> Value {
    let nodes: Vec<String> = (0..ball.vertex_count()).map(|i| i.to_string()).collect();
    json!({
        "nodes": nodes,
        "generators": ball.gens,
        "edges": ball.edges.iter().map(|&(a, c, g)| json!([a, c, g])).collect::<Vec<_>>(),
        "layer_sizes": ball.layer_sizes,
    })
}

/// `classify-assoc`: `t`, nonextendable mirrors, classes and witnesses.
pub fn classify_report(doc: &ClassifyDoc) -> Result<Report> {
    let mut b = Builder::new("classify-assoc", to_input(doc));
    if doc.symbols.is_empty() {
        return input_err("no symbols given");
    }
    let family: Vec<TilingData> = doc.symbols.iter().map(|s| TilingData::new(s)).collect::<Result<_>>()?;
    let c = classify_family(&family)?;
    let mut per = Vec::new();
    for d in &family {
        let a = d.associahedron();
        let mut entry = json!({
            "symbol": d.symbol(),
            "t": d.t(),
            "nonextendable": names(a.complex().labels(), &d.nonextendable()),
        });
        if a.n() <= 4 {
            entry["search_agrees"] =
                json!((0..a.vertex_count()).all(|v| d.extendable(v) == d.extendable_by_search(v)));
        }
        if doc.max_symmetry {
            entry["maximally_symmetric"] = json!(max_symmetry_test(d).is_none());
        }
        per.push(entry);
    }
    b.result("symbols", json!(per));
    let render = |classes: &[Vec<usize>]| {
        classes.iter().map(|cl| cl.iter().map(|&i| family[i].symbol().to_vec()).collect::<Vec<_>>()).collect::<Vec<_>>()
    };
    b.result("classes", json!(render(&c.classes)));
    b.result("weak_classes", json!(render(&c.weak_classes)));
    let labels = family[0].associahedron().complex().labels().to_vec();
    let mut witnesses = Map::new();
    for p in &c.pairs {
        let key = format!("{} {}", family[p.a].name(), family[p.b].name());
        let w = |v: &crate::polytopes::Verdict| v.witness.as_ref().map(|phi| phi.cycle_string(&labels));
        witnesses.insert(
            key,
            json!({
                "necessary": p.report.necessary.holds,
                "pointwise": p.report.pointwise.holds,
                "weak": p.report.weak.holds,
                "sufficient": p.report.sufficient.holds,
                "witness": w(&p.report.sufficient),
                "weak_witness": w(&p.report.weak),
            }),
        );
    }
    b.result("witnesses", Value::Object(witnesses));
    b.result(
        "flags",
        json!(c.flags.iter().map(|&(x, y)| [family[x].name(), family[y].name()]).collect::<Vec<_>>()),
    );
    b.verdict("single-class", Some(c.classes.len() == 1));
    b.verdict("no-flags", Some(c.flags.is_empty()));
    b.graph("crossing", crossing_graph(family[0].associahedron()));
    Ok(b.finish())
}

fn crossing_graph(a: &Associahedron) -> Value {
    let n = a.vertex_count();
    let nodes: Vec<String> = (0..n).map(|v| format!("{{{},{}}}", a.diagonal(v).0, a.diagonal(v).1)).collect();
    let edges: Vec<Value> = (0..n)
        .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
        .filter(|&(x, y)| crosses(a.diagonal(x), a.diagonal(y)))
        .map(|(x, y)| json!([x, y]))
        .collect();
    json!({ "nodes": nodes, "edges": edges })
}

/// `permutohedron`: the permutohedral structure of a maximal blow-up.
pub fn permutohedron_report(doc: &CoxeterDoc) -> Result<Report> {
    let mut b = Builder::new("permutohedron", to_input(doc));
    let m = doc.to_matrix()?;
    let r = permutohedron_checks(&m)?;
    let p = BlowupProblem::maximal(m.clone(), Some(BlowupProblem::proper_subsets(&m)))?;
    let nc = nested_complex(&p)?;
    b.result("n", json!(r.n));
    b.result(
        "mode",
        json!(match r.mode {
            PermutoMode::CellBoundary => "cell-boundary",
            PermutoMode::Simplicial => "simplicial",
        }),
    );
    b.result("vertex_count", json!(r.vertex_count));
    b.result("expected_vertex_count", json!((1usize << (r.n + 1)) - 2));
    b.result("automorphism_count", json!(r.automorphism_count));
    b.result("chains_match", json!(r.chains_match));
    b.result("right_angled", json!(r.right_angled));
    b.result("explicit_extensions", json!(r.explicit_extensions));
    b.result("octahedral_vertex_links", json!(r.octahedral_vertex_links));
    b.result("framing", framing_json(&r.framing, nc.complex.labels()));
    b.result(
        "conclusion",
        json!(if r.covering {
            "the reflection tiling of the permutohedron covers the blow-up"
        } else {
            "no covering conclusion: a framing condition fails"
        }),
    );
    b.verdict("chains", Some(r.chains_match));
    b.verdict("E", Some(r.framing.e.holds && r.explicit_extensions));
    b.verdict("H", r.framing.h);
    b.verdict("covering", Some(r.covering));
    b.graph("l_sharp", complex_graph(&nc.complex));
    Ok(b.finish())
}

fn verify_json(r: &VerifyReport) -> Value {
    json!({
        "involutions": check_json(&r.involutions),
        "form_preserved": check_json(&r.form_preserved),
        "relation_b": check_json(&r.relation_b),
        "relation_c": check_json(&r.relation_c),
        "relation_d": check_json(&r.relation_d),
        "moves_basis": check_json(&r.moves_basis),
        "distinctness": check_json(&r.distinctness),
        "positive_pairs": check_json(&r.positive_pairs),
        "approximate": r.approximate,
        "all_pass": r.all_pass(),
    })
}

/// `represent`: the forms `B_t` and matrices `rho_v` at each parameter.
pub fn represent_report(doc: &RepresentDoc, cfg: &Config) -> Result<Report> {
    let mut b = Builder::new("represent", to_input(doc));
    let g = system_of(&doc.system)?;
    if g.has_order() && g.bar_is_trivial() {
        let o = check_order_conditions(&g)?;
        b.verdict("P", Some(o.p_holds()));
        b.verdict("C", Some(o.c_holds()));
    }
    let mut params = doc.parameters()?;
    if params.is_empty() {
        match select_parameter(&g, cfg.t_scan_cap, cfg.float_tolerance) {
            Ok(t) => {
                b.result("selected_t", json!(t));
                params.push(Rational::from_int(t));
            }
            Err(e) => {
                if matches!(e, Error::Cap(_)) {
                    return Err(e);
                }
                return Err(e);
            }
        }
    }
    let mut runs = Vec::new();
    let mut all = true;
    for t in &params {
        let rep = represent(&g, t, cfg.float_tolerance)?;
        if !rep.is_exact() {
            b.warnings.push(format!("t = {}: floating-point mode with tolerance {}", t.render(), cfg.float_tolerance));
        }
        let (form, mats) = rep.render();
        all &= rep.report().all_pass();
        let matrices: Map<String, Value> = g.labels().iter().cloned().zip(mats.into_iter().map(|m| json!(m))).collect();
        runs.push(json!({
            "t": t.render(),
            "exact": matches!(rep, Representation::Exact { .. }),
            "basis": g.labels(),
            "form": form,
            "matrices": matrices,
            "verification": verify_json(rep.report()),
        }));
    }
    b.result("runs", json!(runs));
    b.verdict("verified", Some(all));
    Ok(b.finish())
}

/// `enumerate`: Todd-Coxeter over the trivial subgroup and a Cayley ball.
pub fn enumerate_report(doc: &EnumerateDoc, cfg: &Config) -> Result<Report> {
    let mut b = Builder::new("enumerate", to_input(doc));
    let pres = match (&doc.generators, &doc.relators, &doc.system) {
        (Some(gens), rels, None) => {
            let index = |l: &String| match gens.iter().position(|g| g == l) {
                Some(i) => Ok(i),
                None => input_err(format!("relator mentions unknown generator {l:?}")),
            };
            let relators = rels
                .iter()
                .flatten()
                .map(|r| r.iter().map(index).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            Presentation { gens: gens.clone(), relators, images: None }
        }
        (None, None, Some(SystemSource::Blowup(bd))) => mock_presentation(&bd.to_problem()?)?.0,
        (None, None, Some(SystemSource::GluingSystem(gd))) => gluing_presentation(&gd.to_system()?)?,
        _ => return input_err("give either \"generators\" (with \"relators\") or \"system\""),
    };
    b.result("presentation", presentation_json(&pres));
    let table = todd_coxeter(&pres, cfg.max_cosets);
    b.result("cosets_defined", json!(table.cosets_defined()));
    match table.status() {
        CosetStatus::Closed => {
            let order = table.size();
            b.result("status", json!("closed"));
            b.result("order", json!(order));
            b.verdict("closed", Some(true));
            let ball = cayley_ball_from_table(&table, doc.radius.unwrap_or(order))?;
            b.result("ball_size", json!(ball.vertex_count()));
            b.graph("cayley", ball_graph(&ball));
        }
        CosetStatus::Capped => {
            b.result("status", json!("capped"));
            b.result("order", Value::Null);
            b.verdict("closed", None);
            b.capped("coset enumeration", &Error::Cap(format!("more than {} cosets", cfg.max_cosets)));
        }
    }
    Ok(b.finish())
}

/// `minkowski`: reflections in `R^{3,1}` and their integrality.
pub fn minkowski_report(doc: &MinkowskiDoc) -> Result<Report> {
    let mut b = Builder::new("minkowski", to_input(doc));
    let vectors = doc.to_vectors()?;
    let lookup = |name: &str| match vectors.iter().find(|(n, _)| n == name) {
        Some((_, v)) => Ok(v.clone()),
        None => input_err(format!("unknown vector {name:?}")),
    };
    let mut per = Map::new();
    let mut unit_integral = true;
    for (name, v) in &vectors {
        let norm = minkowski_form(v, v);
        let mut entry = json!({ "coordinates": v.render(), "norm": norm.render() });
        if norm > Rational::from_int(0) {
            let m = minkowski_matrix(v)?;
            let den = max_denominator(&m);
            entry["matrix"] = json!(m.render());
            entry["max_denominator"] = json!(den.to_string());
            entry["integral"] = json!(den == num_bigint::BigInt::from(1));
            let small = norm == Rational::from_int(1) || norm == Rational::from_int(2);
            if small && den != num_bigint::BigInt::from(1) {
                unit_integral = false;
            }
        }
        per.insert(name.clone(), entry);
    }
    b.result("vectors", Value::Object(per));
    let mut images = Vec::new();
    for [v, x] in &doc.reflect {
        let img = minkowski_reflect(&lookup(v)?, &lookup(x)?)?;
        let matches: Vec<&String> = vectors.iter().filter(|(_, w)| *w == img).map(|(n, _)| n).collect();
        images.push(json!({ "mirror": v, "vector": x, "image": img.render(), "named": matches }));
    }
    b.result("reflections", json!(images));
    b.verdict("integral", Some(unit_integral));
    Ok(b.finish())
}

/// Whether a subset of generator labels is spherical; used by callers that
/// echo subsets.
pub fn subset_is_spherical(m: &CoxeterMatrix, t: Subset) -> bool {
    is_spherical(m, t)
}

/// Convenience wrapper for a gluing document.
pub fn gluing_doc_report(doc: &GluingDoc, cfg: &Config) -> Result<Report> {
    gluing_report(&SystemSource::GluingSystem(doc.clone()), cfg)
}

/// Renders a graph from a report as DOT. Nodes are emitted in report
/// order; edges with a generator index are coloured per generator.
pub fn emit_dot(report: &Value, target: &str) -> Result<String> {
    const COLOURS: [&str; 8] = ["red", "blue", "darkgreen", "orange", "purple", "brown", "cyan", "magenta"];
    let Some(graph) = report.get("graphs").and_then(|g| g.get(target)) else {
        let available: Vec<String> = report
            .get("graphs")
            .and_then(|g| g.as_object())
            .map(|m| m.keys().cloned().collect())
            .unwrap_or_default();
        return input_err(format!("the report has no graph {target:?}; available: {}", available.join(", ")));
    };
    let nodes: Vec<&str> = graph["nodes"].as_array().into_iter().flatten().filter_map(|v| v.as_str()).collect();
    let gens: Vec<&str> = graph.get("generators").and_then(|g| g.as_array()).into_iter().flatten().filter_map(|v| v.as_str()).collect();
    let esc = crate::complexes::escape;
    let mut s = format!("graph \"{}\" {{\n", esc(target));
    for (i, n) in nodes.iter().enumerate() {
        s.push_str(&format!("  {i} [label=\"{}\"];\n", esc(n)));
    }
    for e in graph["edges"].as_array().into_iter().flatten() {
        let a = e[0].as_u64().unwrap_or(0);
        let c = e[1].as_u64().unwrap_or(0);
        match e.get(2).and_then(|g| g.as_u64()) {
            Some(g) => {
                let label = gens.get(g as usize).copied().unwrap_or("");
                s.push_str(&format!(
                    "  {a} -- {c} [label=\"{}\", color={}];\n",
                    esc(label),
                    COLOURS[g as usize % COLOURS.len()]
                ));
            }
            None => s.push_str(&format!("  {a} -- {c};\n")),
        }
    }
    s.push_str("}\n");
    Ok(s)
}
