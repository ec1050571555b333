//! Gluing data on a framing system: derived sequences, relation words,
//! holonomy, the framing conditions (M1/M2/E/H), coset enumeration and
//! Cayley balls.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::hash::Hash;

use crate::blowup::{all_gluing_involutions, nested_complex, BlowupProblem, Presentation};
use crate::complexes::{automorphism_group, Permutation, SimplicialComplex};
use crate::coxeter::{is_spherical, CoxeterMatrix, Entry, Subset};
use crate::{input_err, Error, Result};

/// Default coset cap for [`todd_coxeter`].
pub const DEFAULT_MAX_COSETS: usize = 100_000;

/// Search budget for choosing extensions in Condition (H).
const H_SEARCH_BUDGET: usize = 1_000_000;

/// A framing system `(V, M, L)` with one gluing map per vertex.
///
/// `j[v][x]` is defined exactly for `x` in the star of `v` in `L`, and maps
/// that star onto the star of `bar[v]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GluingSystem {
    matrix: CoxeterMatrix,
    complex: SimplicialComplex,
    bar: Vec<usize>,
    j: Vec<Vec<Option<usize>>>,
    /// `less[u][v]` iff `u < v`.
    order: Option<Vec<Vec<bool>>>,
}

impl GluingSystem {
    /// Validates and builds a gluing system. `j[v]` lists `(x, j_v(x))`
    /// pairs, which must cover the star of `v`.
    pub fn new(
        matrix: CoxeterMatrix,
        complex: SimplicialComplex,
        bar: Vec<usize>,
        j: Vec<Vec<(usize, usize)>>,
        order: Option<Vec<Vec<bool>>>,
    ) -> Result<GluingSystem> {
        let n = matrix.rank();
        if complex.vertex_count() != n || bar.len() != n || j.len() != n {
            return input_err("matrix, complex, bar and j must agree on the vertex count");
        }
        for u in 0..n {
            for v in u + 1..n {
                if matrix.m(u, v).is_finite() != complex.adjacent(u, v) {
                    return input_err(format!(
                        "the edges of L must be exactly the pairs with finite m; {} and {} disagree",
                        matrix.label(u),
                        matrix.label(v)
                    ));
                }
            }
        }
        if (0..n).any(|v| bar[v] >= n || bar[bar[v]] != v) {
            return input_err("bar must be an involution of V");
        }
        let mut table = Vec::with_capacity(n);
        for (v, pairs) in j.iter().enumerate() {
            let mut row = vec![None; n];
            for &(x, y) in pairs {
                if x >= n || y >= n {
                    return input_err("gluing map mentions an unknown vertex");
                }
                if row[x].replace(y).is_some() {
                    return input_err(format!("j_{} is given twice at {}", matrix.label(v), matrix.label(x)));
                }
            }
            let domain = complex.star_vertices(v);
            let target = complex.star_vertices(bar[v]);
            let defined: Vec<usize> = (0..n).filter(|&x| row[x].is_some()).collect();
            if defined != domain {
                return input_err(format!("j_{} must be defined exactly on the star of {}", matrix.label(v), matrix.label(v)));
            }
            let mut image: Vec<usize> = defined.iter().map(|&x| row[x].unwrap()).collect();
            image.sort();
            image.dedup();
            if image != target {
                return input_err(format!("j_{} is not a bijection onto the star of its bar", matrix.label(v)));
            }
            if row[v] != Some(bar[v]) {
                return input_err(format!("j_{} must send {} to its bar", matrix.label(v), matrix.label(v)));
            }
            table.push(row);
        }
        if let Some(o) = &order {
            if o.len() != n || o.iter().any(|r| r.len() != n) {
                return input_err("order relation has the wrong size");
            }
            for a in 0..n {
                if o[a][a] {
                    return input_err("order relation must be strict");
                }
                for b in 0..n {
                    if o[a][b] && (0..n).any(|c| o[b][c] && !o[a][c]) {
                        return input_err("order relation is not transitive");
                    }
                }
            }
        }
        Ok(GluingSystem { matrix, complex, bar, j: table, order })
    }

    /// The natural gluing system of an admissible blow-up: `V = S_#`,
    /// `M = M_#`, `L = L_#`, trivial bar, order by inclusion.
    pub fn from_blowup(p: &BlowupProblem) -> Result<GluingSystem> {
        let nc = nested_complex(p)?;
        let js = all_gluing_involutions(p, &nc)?;
        let n = nc.s_sharp.len();
        let order =
            (0..n).map(|a| (0..n).map(|b| nc.s_sharp[a].is_proper_subset_of(nc.s_sharp[b])).collect()).collect();
        GluingSystem::new(
            nc.m_sharp,
            nc.complex,
            (0..n).collect(),
            js.into_iter().map(|m| m.into_iter().collect()).collect(),
            Some(order),
        )
    }

    /// Reflection-type data: every `j_v` is the identity on its star.
    pub fn reflection_type(matrix: CoxeterMatrix, complex: SimplicialComplex) -> Result<GluingSystem> {
        let n = matrix.rank();
        let j = (0..n).map(|v| complex.star_vertices(v).into_iter().map(|x| (x, x)).collect()).collect();
        GluingSystem::new(matrix, complex, (0..n).collect(), j, None)
    }

    /// Copy with `j_v` replaced.
    pub fn with_j(&self, v: usize, pairs: Vec<(usize, usize)>) -> Result<GluingSystem> {
        let mut j: Vec<Vec<(usize, usize)>> = self.j.iter().map(|row| pairs_of(row)).collect();
        j[v] = pairs;
        GluingSystem::new(self.matrix.clone(), self.complex.clone(), self.bar.clone(), j, self.order.clone())
    }

    pub fn len(&self) -> usize {
        self.bar.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bar.is_empty()
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn labels(&self) -> &[String] {
        self.complex.labels()
    }

    pub fn bar(&self, v: usize) -> usize {
        self.bar[v]
    }

    /// Whether every vertex is its own bar.
    pub fn bar_is_trivial(&self) -> bool {
        self.bar.iter().enumerate().all(|(v, &b)| v == b)
    }

    /// `j_v(x)`, if `x` lies in the star of `v`.
    pub fn j(&self, v: usize, x: usize) -> Option<usize> {
        self.j[v][x]
    }

    /// `j_v` as `(x, j_v(x))` pairs.
    pub fn j_pairs(&self, v: usize) -> Vec<(usize, usize)> {
        pairs_of(&self.j[v])
    }

    /// Whether `j_v` is the identity on its star.
    pub fn j_is_trivial(&self, v: usize) -> bool {
        self.j_pairs(v).iter().all(|(x, y)| x == y)
    }

    pub fn less(&self, u: usize, v: usize) -> Option<bool> {
        self.order.as_ref().map(|o| o[u][v])
    }

    pub fn has_order(&self) -> bool {
        self.order.is_some()
    }

    /// Ordered pairs `(u, v)` of distinct vertices with finite `m`.
    pub fn adjacent_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n).flat_map(|u| (0..n).map(move |v| (u, v))).filter(|&(u, v)| u != v && self.complex.adjacent(u, v)).collect()
    }
}

fn pairs_of(row: &[Option<usize>]) -> Vec<(usize, usize)> {
    row.iter().enumerate().filter_map(|(x, y)| y.map(|y| (x, y))).collect()
}

/// The sequence `v_0, ..., v_{2m+1}` attached to an ordered adjacent pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedSequence {
    pub sequence: Vec<usize>,
    /// `r(u,v) = v_1 ... v_{2m}`.
    pub word: Vec<usize>,
    /// `v_{2m} = v_0` and `v_{2m+1} = v_1`.
    pub periodic: bool,
}

/// Computes the derived sequence of `(u, v)`.
pub fn derived_sequence(g: &GluingSystem, u: usize, v: usize) -> Result<DerivedSequence> {
    let m = match g.matrix.m(u, v) {
        Entry::Finite(m) if u != v => m as usize,
        _ => return input_err("derived sequences need distinct vertices with finite m"),
    };
    let mut seq = vec![g.bar(u), v];
    for k in 2..=2 * m + 1 {
        let (prev, prev2) = (seq[k - 1], seq[k - 2]);
        match g.j(prev, g.bar(prev2)) {
            Some(x) => seq.push(x),
            None => {
                return Err(Error::Input(format!(
                    "j_{} is undefined at {}; condition (2) fails upstream",
                    g.labels()[prev],
                    g.labels()[g.bar(prev2)]
                )))
            }
        }
    }
    let periodic = seq[2 * m] == seq[0] && seq[2 * m + 1] == seq[1];
    Ok(DerivedSequence { word: seq[1..=2 * m].to_vec(), sequence: seq, periodic })
}

/// Verdict with an optional human-readable witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub holds: bool,
    pub witness: Option<String>,
}

impl Check {
    fn pass() -> Check {
        Check { holds: true, witness: None }
    }

    fn fail(w: String) -> Check {
        Check { holds: false, witness: Some(w) }
    }
}

/// How condition (4) was decided.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// Regular coset table of the given order.
    Enumeration { order: usize },
    /// Matrices of the linear representation at parameter `t`.
    Representation { t: i64 },
    /// No certificate could be produced.
    Unknown { reason: String },
}

/// Status of condition (4).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Condition4 {
    /// `None` when unknown.
    pub holds: Option<bool>,
    pub certificate: Certificate,
    pub witness: Option<String>,
}

/// Report of conditions (1) to (4) on gluing data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GluingReport {
    pub c1: Check,
    pub c2: Check,
    pub c3: Check,
    pub c4: Condition4,
    /// `r(u,v)` for every unordered adjacent pair, as label words.
    pub relation_words: Vec<(String, String, Vec<String>)>,
}

fn lab(g: &GluingSystem, v: usize) -> &str {
    &g.labels()[v]
}

/// Condition (1): `j_{bar v}` inverts `j_v`.
pub fn check_condition_1(g: &GluingSystem) -> Check {
    for v in 0..g.len() {
        for (x, y) in g.j_pairs(v) {
            if g.j(g.bar(v), y) != Some(x) {
                return Check::fail(format!("j_{} does not invert j_{} at {}", lab(g, g.bar(v)), lab(g, v), lab(g, y)));
            }
        }
    }
    Check::pass()
}

/// Condition (2), the same as (M1): `j_v` preserves `m` on its star.
pub fn check_condition_2(g: &GluingSystem) -> Check {
    for v in 0..g.len() {
        let pairs = g.j_pairs(v);
        for &(x1, y1) in &pairs {
            for &(x2, y2) in &pairs {
                if x1 < x2 && x1 != v && x2 != v && g.matrix.m(x1, x2) != g.matrix.m(y1, y2) {
                    return Check::fail(format!(
                        "m({},{}) = {} but m(j_{}({}), j_{}({})) = {}",
                        lab(g, x1),
                        lab(g, x2),
                        g.matrix.m(x1, x2),
                        lab(g, v),
                        lab(g, x1),
                        lab(g, v),
                        lab(g, x2),
                        g.matrix.m(y1, y2)
                    ));
                }
            }
        }
    }
    Check::pass()
}

/// Condition (3): every derived sequence has period `2m`.
pub fn check_condition_3(g: &GluingSystem) -> Check {
    for (u, v) in g.adjacent_pairs() {
        match derived_sequence(g, u, v) {
            Ok(d) if d.periodic => {}
            Ok(d) => {
                let w: Vec<&str> = d.sequence.iter().map(|&x| lab(g, x)).collect();
                return Check::fail(format!("sequence for ({},{}) is not periodic: {}", lab(g, u), lab(g, v), w.join(" ")));
            }
            Err(e) => return Check::fail(e.to_string()),
        }
    }
    Check::pass()
}

/// The presentation of `A`: generators `V`, relators `v bar(v)` and one
/// `r(u,v)` per unordered adjacent pair (deduplicated up to rotation).
pub fn gluing_presentation(g: &GluingSystem) -> Result<Presentation> {
    let n = g.len();
    let mut pres = Presentation { gens: g.labels().to_vec(), relators: Vec::new(), images: None };
    for v in 0..n {
        if v <= g.bar(v) {
            pres.relators.push(vec![v, g.bar(v)]);
        }
    }
    for (u, v) in g.adjacent_pairs() {
        if u < v {
            let d = derived_sequence(g, u, v)?;
            if !pres.has_relator(&d.word) {
                pres.relators.push(d.word);
            }
        }
    }
    Ok(pres)
}

/// Condition (4) evidence from a coset table of `A` over the trivial
/// subgroup: generators nontrivial and distinct, and `1, a_1, ..., a_{2m-1}`
/// distinct for every adjacent pair.
pub fn condition_4_from_table(g: &GluingSystem, table: &CosetTable) -> Condition4 {
    let order = table.size();
    let cert = Certificate::Enumeration { order };
    let fail = |w: String| Condition4 { holds: Some(false), certificate: cert.clone(), witness: Some(w) };
    let images: Vec<usize> = (0..g.len()).map(|v| table.act(0, v)).collect();
    for v in 0..g.len() {
        if images[v] == 0 {
            return fail(format!("alpha_{} is trivial", lab(g, v)));
        }
        for u in 0..v {
            if images[u] == images[v] {
                return fail(format!("alpha_{} = alpha_{}", lab(g, u), lab(g, v)));
            }
        }
    }
    for (u, v) in g.adjacent_pairs() {
        let d = match derived_sequence(g, u, v) {
            Ok(d) => d,
            Err(e) => return fail(e.to_string()),
        };
        let mut seen = vec![0usize];
        let mut c = 0;
        for &x in &d.word[..d.word.len() - 1] {
            c = table.act(c, x);
            if seen.contains(&c) {
                return fail(format!("a_k repeats for ({},{})", lab(g, u), lab(g, v)));
            }
            seen.push(c);
        }
    }
    Condition4 { holds: Some(true), certificate: cert, witness: None }
}

/// Checks conditions (1) to (4). Condition (4) is certified by coset
/// enumeration when it closes under `max_cosets`, otherwise by the linear
/// representation when an order is supplied and (P), (C) hold.
pub fn check_gluing_conditions(g: &GluingSystem, max_cosets: usize, t_scan_cap: i64) -> GluingReport {
    let c1 = check_condition_1(g);
    let c2 = check_condition_2(g);
    let c3 = check_condition_3(g);
    let mut relation_words = Vec::new();
    if c3.holds {
        for (u, v) in g.adjacent_pairs() {
            if u < v {
                if let Ok(d) = derived_sequence(g, u, v) {
                    relation_words.push((
                        lab(g, u).to_string(),
                        lab(g, v).to_string(),
                        d.word.iter().map(|&x| lab(g, x).to_string()).collect(),
                    ));
                }
            }
        }
    }
    let c4 = if !(c1.holds && c2.holds && c3.holds) {
        Condition4 {
            holds: None,
            certificate: Certificate::Unknown { reason: "conditions (1)-(3) do not all hold".into() },
            witness: None,
        }
    } else {
        condition_4(g, max_cosets, t_scan_cap)
    };
    GluingReport { c1, c2, c3, c4, relation_words }
}

fn condition_4(g: &GluingSystem, max_cosets: usize, t_scan_cap: i64) -> Condition4 {
    let pres = match gluing_presentation(g) {
        Ok(p) => p,
        Err(e) => {
            return Condition4 { holds: None, certificate: Certificate::Unknown { reason: e.to_string() }, witness: None }
        }
    };
    let table = todd_coxeter(&pres, max_cosets);
    if table.status() == CosetStatus::Closed {
        return condition_4_from_table(g, &table);
    }
    let reason = match crate::linrep::representation_certificate(g, t_scan_cap) {
        Ok(Some(t)) => return Condition4 { holds: Some(true), certificate: Certificate::Representation { t }, witness: None },
        Ok(None) => "coset enumeration capped and conditions (P), (C) do not hold".to_string(),
        Err(e) => format!("coset enumeration capped; representation unavailable: {e}"),
    };
    Condition4 { holds: None, certificate: Certificate::Unknown { reason }, witness: None }
}

/// A partial map produced by composing gluing maps along a word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Holonomy {
    /// `x -> image` for every `x` on which the whole composite is defined.
    pub map: BTreeMap<usize, usize>,
}

impl Holonomy {
    pub fn is_identity(&self) -> bool {
        self.map.iter().all(|(x, y)| x == y)
    }

    /// Cycle notation over `labels`, `"()"` for the identity. Points moved
    /// outside the domain are shown as chains.
    pub fn cycle_string(&self, labels: &[String]) -> String {
        let mut seen = std::collections::BTreeSet::new();
        let mut out = String::new();
        for &start in self.map.keys() {
            if seen.contains(&start) || self.map[&start] == start {
                continue;
            }
            let mut cyc = vec![start];
            seen.insert(start);
            let mut x = self.map[&start];
            while x != start {
                cyc.push(x);
                if !seen.insert(x) {
                    break;
                }
                match self.map.get(&x) {
                    Some(&y) => x = y,
                    None => break,
                }
            }
            let names: Vec<&str> = cyc.iter().map(|&v| labels[v].as_str()).collect();
            out.push_str(&format!("({})", names.join(" ")));
        }
        if out.is_empty() {
            "()".into()
        } else {
            out
        }
    }
}

/// `j_{w_n} o ... o j_{w_1}` on the points where it is defined throughout.
pub fn holonomy(g: &GluingSystem, word: &[usize]) -> Result<Holonomy> {
    if word.iter().any(|&w| w >= g.len()) {
        return input_err("holonomy word mentions an unknown vertex");
    }
    let mut map = BTreeMap::new();
    'points: for x in 0..g.len() {
        let mut y = x;
        for &w in word {
            match g.j(w, y) {
                Some(z) => y = z,
                None => continue 'points,
            }
        }
        map.insert(x, y);
    }
    if map.is_empty() {
        return input_err("the composite is defined nowhere");
    }
    Ok(Holonomy { map })
}

/// Holonomy of `r(u,v)` restricted to `V_uv = {y : {u,v,y} spherical}`.
pub fn cell_holonomy(g: &GluingSystem, u: usize, v: usize) -> Result<Holonomy> {
    let d = derived_sequence(g, u, v)?;
    let mut map = BTreeMap::new();
    for y in 0..g.len() {
        if !is_spherical(&g.matrix, Subset::from_indices([u, v, y])) {
            continue;
        }
        let mut z = y;
        for &w in &d.word {
            z = match g.j(w, z) {
                Some(z) => z,
                None => {
                    return input_err(format!(
                        "holonomy around ({},{}) leaves the star of {} at {}",
                        lab(g, u),
                        lab(g, v),
                        lab(g, w),
                        lab(g, z)
                    ))
                }
            };
        }
        map.insert(y, z);
    }
    Ok(Holonomy { map })
}

/// Report of the framing conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FramingReport {
    pub m1: Check,
    pub m2: Check,
    /// Vertices whose gluing map has no extension to `Aut(V, M, L)`.
    pub nonextendable: Vec<usize>,
    pub e: Check,
    /// `None` when the extension search ran out of budget or `E` fails.
    pub h: Option<bool>,
    /// Whether every extension in `E` is unique.
    pub rigid: bool,
    pub automorphism_count: usize,
}

/// Extensions of `j_v` among `auts`.
pub fn extensions<'a>(g: &GluingSystem, v: usize, auts: &'a [Permutation]) -> Vec<&'a Permutation> {
    let pairs = g.j_pairs(v);
    auts.iter().filter(|p| pairs.iter().all(|&(x, y)| p.apply(x) == y)).collect()
}

/// Checks M1, M2, E and H.
pub fn framing_conditions(g: &GluingSystem, aut_cap: usize) -> Result<FramingReport> {
    let m1 = check_condition_2(g);
    let mut m2 = Check::pass();
    for (u, v) in g.adjacent_pairs() {
        match cell_holonomy(g, u, v) {
            Ok(h) if h.is_identity() => {}
            Ok(h) => {
                m2 = Check::fail(format!("holonomy around ({},{}) is {}", lab(g, u), lab(g, v), h.cycle_string(g.labels())));
                break;
            }
            Err(e) => {
                m2 = Check::fail(e.to_string());
                break;
            }
        }
    }
    let auts = automorphism_group(&g.complex, Some(&g.matrix), aut_cap)?;
    let ext: Vec<Vec<&Permutation>> = (0..g.len()).map(|v| extensions(g, v, &auts)).collect();
    let nonextendable: Vec<usize> = (0..g.len()).filter(|&v| ext[v].is_empty()).collect();
    let e = match nonextendable.first() {
        None => Check::pass(),
        Some(&v) => Check::fail(format!("j_{} does not extend", lab(g, v))),
    };
    let rigid = ext.iter().all(|x| x.len() <= 1);
    let h = if e.holds { choose_extensions(g, &ext)? } else { None };
    Ok(FramingReport { m1, m2, nonextendable, e, h, rigid, automorphism_count: auts.len() })
}

/// Backtracking search for extensions satisfying Condition (H).
fn choose_extensions(g: &GluingSystem, ext: &[Vec<&Permutation>]) -> Result<Option<bool>> {
    let n = g.len();
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    for (u, v) in g.adjacent_pairs() {
        cycles.push(derived_sequence(g, u, v)?.word);
    }
    let mut chosen: Vec<Option<Permutation>> = vec![None; n];
    let mut budget = H_SEARCH_BUDGET;
    fn consistent(g: &GluingSystem, chosen: &[Option<Permutation>], cycles: &[Vec<usize>]) -> bool {
        for v in 0..chosen.len() {
            if let (Some(a), Some(b)) = (&chosen[v], &chosen[g.bar(v)]) {
                if !a.compose(b).is_identity() {
                    return false;
                }
            }
        }
        cycles.iter().all(|c| {
            if c.iter().any(|&w| chosen[w].is_none()) {
                return true;
            }
            let mut acc = Permutation::identity(chosen.len());
            for &w in c {
                acc = chosen[w].as_ref().unwrap().compose(&acc);
            }
            acc.is_identity()
        })
    }
    fn rec(
        g: &GluingSystem,
        v: usize,
        ext: &[Vec<&Permutation>],
        chosen: &mut Vec<Option<Permutation>>,
        cycles: &[Vec<usize>],
        budget: &mut usize,
    ) -> Option<bool> {
        if v == chosen.len() {
            return Some(true);
        }
        for p in &ext[v] {
            if *budget == 0 {
                return None;
            }
            *budget -= 1;
            chosen[v] = Some((*p).clone());
            if consistent(g, chosen, cycles) {
                match rec(g, v + 1, ext, chosen, cycles, budget) {
                    Some(true) => return Some(true),
                    None => return None,
                    Some(false) => {}
                }
            }
        }
        chosen[v] = None;
        Some(false)
    }
    Ok(rec(g, 0, ext, &mut chosen, &cycles, &mut budget))
}

/// Whether a coset enumeration finished.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CosetStatus {
    Closed,
    Capped,
}

/// Coset table over the trivial subgroup. Row `c`, column `2g` is `c·g`;
/// column `2g+1` is `c·g⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    gens: Vec<String>,
    rows: Vec<Vec<usize>>,
    status: CosetStatus,
    defined: usize,
}

const UNDEF: usize = usize::MAX;

impl CosetTable {
    pub fn status(&self) -> CosetStatus {
        self.status
    }

    /// Live cosets; the group order when closed.
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    /// Total cosets defined during the run.
    pub fn cosets_defined(&self) -> usize {
        self.defined
    }

    pub fn gens(&self) -> &[String] {
        &self.gens
    }

    /// `c · g`. Only meaningful on a closed table.
    pub fn act(&self, c: usize, g: usize) -> usize {
        self.rows[c][2 * g]
    }

    pub fn act_inv(&self, c: usize, g: usize) -> usize {
        self.rows[c][2 * g + 1]
    }

    /// Forward columns only: `table[c][g] = c·g`.
    pub fn forward_rows(&self) -> Vec<Vec<usize>> {
        self.rows.iter().map(|r| r.iter().step_by(2).copied().collect()).collect()
    }

    /// Whether every relator traces a loop from every coset.
    pub fn is_consistent(&self, relators: &[Vec<usize>]) -> bool {
        self.status == CosetStatus::Closed
            && (0..self.size()).all(|c| relators.iter().all(|r| r.iter().fold(c, |x, &g| self.act(x, g)) == c))
    }
}

struct Enumerator {
    ncols: usize,
    table: Vec<Vec<usize>>,
    parent: Vec<usize>,
    cap: usize,
    capped: bool,
    queue: Vec<usize>,
}

impl Enumerator {
    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut x = c;
        while self.parent[x] != r {
            let next = self.parent[x];
            self.parent[x] = r;
            x = next;
        }
        r
    }

    fn define(&mut self, c: usize, x: usize) -> bool {
        if self.table.len() >= self.cap {
            self.capped = true;
            return false;
        }
        let d = self.table.len();
        self.table.push(vec![UNDEF; self.ncols]);
        self.parent.push(d);
        self.table[c][x] = d;
        self.table[d][x ^ 1] = c;
        true
    }

    fn merge(&mut self, k: usize, l: usize) {
        let (k, l) = (self.rep(k), self.rep(l));
        if k == l {
            return;
        }
        let (lo, hi) = (k.min(l), k.max(l));
        self.parent[hi] = lo;
        self.queue.push(hi);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let e = self.queue[i];
            i += 1;
            for x in 0..self.ncols {
                let f = self.table[e][x];
                if f == UNDEF {
                    continue;
                }
                self.table[f][x ^ 1] = UNDEF;
                let (e1, f1) = (self.rep(e), self.rep(f));
                if self.table[e1][x] != UNDEF {
                    let t = self.table[e1][x];
                    self.merge(f1, t);
                } else if self.table[f1][x ^ 1] != UNDEF {
                    let t = self.table[f1][x ^ 1];
                    self.merge(e1, t);
                } else {
                    self.table[e1][x] = f1;
                    self.table[f1][x ^ 1] = e1;
                }
            }
        }
    }

    /// Scans `word` (column indices) from `c`, defining cosets as needed.
    fn scan_and_fill(&mut self, c: usize, word: &[usize]) {
        let r = word.len();
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, r);
        loop {
            while i < j && self.table[f][word[i]] != UNDEF {
                f = self.table[f][word[i]];
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return;
            }
            while j > i && self.table[b][word[j - 1] ^ 1] != UNDEF {
                b = self.table[b][word[j - 1] ^ 1];
                j -= 1;
            }
            if j == i {
                self.coincidence(f, b);
                return;
            }
            if j == i + 1 {
                self.table[f][word[i]] = b;
                self.table[b][word[i] ^ 1] = f;
                return;
            }
            if !self.define(f, word[i]) {
                return;
            }
        }
    }
}

/// Coset enumeration over the trivial subgroup, relator-based (HLT) with
/// coincidence processing. Relators are words of generator indices.
pub fn todd_coxeter(p: &Presentation, max_cosets: usize) -> CosetTable {
    let ncols = 2 * p.gens.len();
    let words: Vec<Vec<usize>> = p.relators.iter().map(|r| r.iter().map(|&g| 2 * g).collect()).collect();
    let mut en = Enumerator {
        ncols,
        table: vec![vec![UNDEF; ncols]],
        parent: vec![0],
        cap: max_cosets.max(1),
        capped: false,
        queue: Vec::new(),
    };
    let mut c = 0;
    while c < en.table.len() && !en.capped {
        if en.parent[c] == c {
            for w in &words {
                en.scan_and_fill(c, w);
                if en.parent[c] != c || en.capped {
                    break;
                }
            }
            if en.parent[c] == c && !en.capped {
                for x in 0..ncols {
                    if en.table[c][x] == UNDEF && !en.define(c, x) {
                        break;
                    }
                }
            }
        }
        c += 1;
    }
    let defined = en.table.len();
    if en.capped {
        let live = (0..defined).filter(|&x| en.parent[x] == x).count();
        return CosetTable {
            gens: p.gens.clone(),
            rows: vec![Vec::new(); live],
            status: CosetStatus::Capped,
            defined,
        };
    }
    let live: Vec<usize> = (0..defined).filter(|&x| en.parent[x] == x).collect();
    let mut index = vec![UNDEF; defined];
    for (k, &x) in live.iter().enumerate() {
        index[x] = k;
    }
    let rows = live
        .iter()
        .map(|&x| (0..ncols).map(|col| {
            let y = en.table[x][col];
            let y = en.rep(y);
            index[y]
        }).collect())
        .collect();
    CosetTable { gens: p.gens.clone(), rows, status: CosetStatus::Closed, defined }
}

/// A breadth-first ball in a Cayley graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyBall {
    pub gens: Vec<String>,
    /// Number of vertices at each distance `0..=radius`.
    pub layer_sizes: Vec<usize>,
    /// Directed edges `(from, to, generator)`, each undirected edge once.
    pub edges: Vec<(usize, usize, usize)>,
    /// Whether element identity was decided with a floating tolerance.
    pub approximate: bool,
}

impl CayleyBall {
    pub fn vertex_count(&self) -> usize {
        self.layer_sizes.iter().sum()
    }

    /// DOT graph with one colour per generator.
    pub fn to_dot(&self, name: &str) -> String {
        const COLOURS: [&str; 8] = ["red", "blue", "darkgreen", "orange", "purple", "brown", "cyan", "magenta"];
        let mut s = format!("graph \"{}\" {{\n", crate::complexes::escape(name));
        for v in 0..self.vertex_count() {
            s.push_str(&format!("  {v};\n"));
        }
        for &(a, b, g) in &self.edges {
            s.push_str(&format!(
                "  {a} -- {b} [label=\"{}\", color={}];\n",
                crate::complexes::escape(&self.gens[g]),
                COLOURS[g % COLOURS.len()]
            ));
        }
        s.push_str("}\n");
        s
    }
}

/// Builds the ball of the given radius around `start`, using `step(x, g)`
/// for right multiplication by generator `g`. Elements are identified by
/// equality of their keys.
pub fn cayley_ball<K: Clone + Eq + Hash>(
    gens: &[String],
    start: K,
    radius: usize,
    approximate: bool,
    mut step: impl FnMut(&K, usize) -> Result<K>,
) -> Result<CayleyBall> {
    let mut index: HashMap<K, usize> = HashMap::new();
    let mut elems = vec![start.clone()];
    let mut dist = vec![0usize];
    index.insert(start, 0);
    let mut edges = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for g in 0..gens.len() {
            let y = step(&elems[x], g)?;
            let target = match index.get(&y) {
                Some(&k) => k,
                None if dist[x] < radius => {
                    let k = elems.len();
                    index.insert(y.clone(), k);
                    elems.push(y);
                    dist.push(dist[x] + 1);
                    queue.push_back(k);
                    k
                }
                None => continue,
            };
            if x <= target {
                edges.push((x, target, g));
            }
        }
    }
    let mut layer_sizes = vec![0; radius + 1];
    for d in dist {
        layer_sizes[d] += 1;
    }
    while layer_sizes.len() > 1 && *layer_sizes.last().unwrap() == 0 {
        layer_sizes.pop();
    }
    edges.sort();
    edges.dedup();
    Ok(CayleyBall { gens: gens.to_vec(), layer_sizes, edges, approximate })
}

/// Ball read off a closed coset table.
pub fn cayley_ball_from_table(table: &CosetTable, radius: usize) -> Result<CayleyBall> {
    if table.status() != CosetStatus::Closed {
        return Err(Error::Cap("coset table did not close; it cannot identify elements".into()));
    }
    cayley_ball(table.gens(), 0usize, radius, false, |&c, g| Ok(table.act(c, g)))
}

/// The gluing data of the four-generator square complex whose group is
/// dihedral of order 14: all `m = 2`, `L` complete, `j_a = (b d)`,
/// `j_b = (c d)`, `j_c = (a d)`, `j_d = id`.
pub fn dihedral_counterexample() -> GluingSystem {
    let labels: Vec<String> = ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
    let matrix = CoxeterMatrix::right_angled(labels.clone(), |_, _| true).expect("valid matrix");
    let complex = SimplicialComplex::from_facets(labels, &[vec![0, 1, 2, 3]]).expect("valid complex");
    let perm = |swap: Option<(usize, usize)>| -> Vec<(usize, usize)> {
        (0..4)
            .map(|x| match swap {
                Some((p, q)) if x == p => (x, q),
                Some((p, q)) if x == q => (x, p),
                _ => (x, x),
            })
            .collect()
    };
    let j = vec![perm(Some((1, 3))), perm(Some((2, 3))), perm(Some((0, 3))), perm(None)];
    GluingSystem::new(matrix, complex, vec![0, 1, 2, 3], j, None).expect("valid gluing data")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::DEFAULT_AUT_CAP;

    fn a2_presentation() -> Presentation {
        Presentation { gens: vec!["a".into(), "b".into()], relators: vec![vec![0, 0], vec![1, 1], vec![0, 1, 0, 1, 0, 1]], images: None }
    }

    #[test]
    fn a2_has_order_six() {
        let t = todd_coxeter(&a2_presentation(), 1000);
        assert_eq!(t.status(), CosetStatus::Closed);
        assert_eq!(t.size(), 6);
        assert!(t.is_consistent(&a2_presentation().relators));
        let ball = cayley_ball_from_table(&t, 3).unwrap();
        assert_eq!(ball.vertex_count(), 6);
        assert_eq!(ball.edges.len(), 6);
    }

    #[test]
    fn infinite_group_is_capped() {
        let p = Presentation { gens: vec!["a".into(), "b".into()], relators: vec![vec![0, 0], vec![1, 1]], images: None };
        let t = todd_coxeter(&p, 500);
        assert_eq!(t.status(), CosetStatus::Capped);
    }

    #[test]
    fn coincidences_collapse() {
        // <a | a^3, a^5> is trivial
        let p = Presentation { gens: vec!["a".into()], relators: vec![vec![0; 3], vec![0; 5]], images: None };
        assert_eq!(todd_coxeter(&p, 100).size(), 1);
        // <a, b | a^2, b^3, (ab)^5> is A5
        let p = Presentation {
            gens: vec!["a".into(), "b".into()],
            relators: vec![vec![0, 0], vec![1, 1, 1], [0, 1].repeat(5)],
            images: None,
        };
        assert_eq!(todd_coxeter(&p, 10_000).size(), 60);
    }

    #[test]
    fn counterexample_relations_and_order() {
        let g = dihedral_counterexample();
        let d = derived_sequence(&g, 0, 1).unwrap();
        assert_eq!(d.word, vec![1, 0, 3, 0]);
        assert!(d.periodic);
        assert_eq!(derived_sequence(&g, 1, 2).unwrap().word, vec![2, 1, 3, 1]);
        assert_eq!(derived_sequence(&g, 2, 3).unwrap().word, vec![3, 2, 0, 2]);
        let rep = check_gluing_conditions(&g, 1000, 100);
        assert!(rep.c1.holds && rep.c2.holds && rep.c3.holds);
        assert_eq!(rep.c4.holds, Some(true));
        assert_eq!(rep.c4.certificate, Certificate::Enumeration { order: 14 });
        let h = holonomy(&g, &[0, 3, 0, 1]).unwrap();
        assert_eq!(h.cycle_string(g.labels()), "(c d)");
    }

    #[test]
    fn counterexample_fails_m2_only() {
        let g = dihedral_counterexample();
        let f = framing_conditions(&g, DEFAULT_AUT_CAP).unwrap();
        assert!(f.m1.holds);
        assert!(!f.m2.holds);
        assert_eq!(f.automorphism_count, 24);
    }

    #[test]
    fn reflection_type_has_no_holonomy() {
        let m = CoxeterMatrix::schlafli(&[3]).unwrap();
        let cx = SimplicialComplex::from_facets(m.gens().to_vec(), &[vec![0, 1]]).unwrap();
        let g = GluingSystem::reflection_type(m, cx).unwrap();
        let d = derived_sequence(&g, 0, 1).unwrap();
        assert_eq!(d.sequence, vec![0, 1, 0, 1, 0, 1, 0, 1]);
        assert!(cell_holonomy(&g, 0, 1).unwrap().is_identity());
        let f = framing_conditions(&g, DEFAULT_AUT_CAP).unwrap();
        assert!(f.m2.holds && f.e.holds && f.h == Some(true));
    }

    #[test]
    fn broken_bar_is_reported() {
        let g = dihedral_counterexample();
        // j_a replaced by a 3-cycle on b, c, d: no longer an involution
        let bad = g.with_j(0, vec![(0, 0), (1, 2), (2, 3), (3, 1)]).unwrap();
        assert!(!check_condition_1(&bad).holds);
    }
}
