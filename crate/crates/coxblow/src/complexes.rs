//! Abstract simplicial complexes, stars, automorphisms and flag tests.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use crate::coxeter::{is_spherical, CoxeterMatrix, Subset};
use crate::{input_err, Error, Result};

/// Default cap on the vertex count for brute-force automorphism search.
pub const DEFAULT_AUT_CAP: usize = 24;

/// A finite abstract simplicial complex on vertices `0..n` with labels.
///
/// Faces are stored as sorted vertex lists; the empty face is implicit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    labels: Vec<String>,
    faces: BTreeSet<Vec<usize>>,
    adj: Vec<Vec<bool>>,
}

impl SimplicialComplex {
    /// Complex generated by the given facets (closed downward). Every
    /// labelled vertex becomes a face even if no facet mentions it.
    pub fn from_facets(labels: Vec<String>, facets: &[Vec<usize>]) -> Result<SimplicialComplex> {
        let n = labels.len();
        let mut faces = BTreeSet::new();
        for v in 0..n {
            faces.insert(vec![v]);
        }
        for f in facets {
            let mut f = f.clone();
            f.sort_unstable();
            f.dedup();
            if let Some(&bad) = f.iter().find(|&&v| v >= n) {
                return input_err(format!("facet mentions unknown vertex {bad}"));
            }
            if f.len() > 20 {
                return input_err("facet too large");
            }
            for mask in 1u32..(1 << f.len()) {
                faces.insert(f.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect());
            }
        }
        Ok(SimplicialComplex::from_closed(labels, faces))
    }

    /// Complex from a face set that is already downward closed. Fails if it
    /// is not.
    pub fn from_faces(labels: Vec<String>, faces: BTreeSet<Vec<usize>>) -> Result<SimplicialComplex> {
        let cx = SimplicialComplex::from_closed(labels, faces);
        if let Some(f) = cx.closure_violation() {
            return input_err(format!("face set not downward closed at {f:?}"));
        }
        Ok(cx)
    }

    fn from_closed(labels: Vec<String>, mut faces: BTreeSet<Vec<usize>>) -> SimplicialComplex {
        let n = labels.len();
        for v in 0..n {
            faces.insert(vec![v]);
        }
        let mut adj = vec![vec![false; n]; n];
        for f in faces.iter().filter(|f| f.len() == 2) {
            adj[f[0]][f[1]] = true;
            adj[f[1]][f[0]] = true;
        }
        SimplicialComplex { labels, faces, adj }
    }

    /// The flag complex of a graph on `labels`.
    pub fn clique_complex(labels: Vec<String>, adjacent: impl Fn(usize, usize) -> bool) -> SimplicialComplex {
        let n = labels.len();
        let adj: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i != j && adjacent(i, j)).collect()).collect();
        let mut faces = BTreeSet::new();
        let mut stack: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
        while let Some(f) = stack.pop() {
            let last = *f.last().unwrap();
            for w in last + 1..n {
                if f.iter().all(|&u| adj[u][w]) {
                    let mut g = f.clone();
                    g.push(w);
                    stack.push(g);
                }
            }
            faces.insert(f);
        }
        SimplicialComplex { labels, faces, adj }
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Nonempty faces, sorted.
    pub fn faces(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.faces.iter()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn dimension(&self) -> isize {
        self.faces.iter().map(|f| f.len() as isize - 1).max().unwrap_or(-1)
    }

    /// Whether the (unsorted) vertex set spans a face. The empty set does.
    pub fn is_face(&self, f: &[usize]) -> bool {
        if f.is_empty() {
            return true;
        }
        let mut g = f.to_vec();
        g.sort_unstable();
        g.dedup();
        self.faces.contains(&g)
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u][v]
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.vertex_count()).filter(|&w| self.adj[v][w]).collect()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.faces.iter().filter(|f| f.len() == 2).map(|f| (f[0], f[1])).collect()
    }

    /// Maximal faces.
    pub fn facets(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        self.faces
            .iter()
            .filter(|f| {
                (0..n).all(|w| {
                    if f.contains(&w) {
                        return true;
                    }
                    let mut g = (*f).clone();
                    g.push(w);
                    !self.is_face(&g)
                })
            })
            .cloned()
            .collect()
    }

    /// First face with a missing subface, if any.
    pub fn closure_violation(&self) -> Option<Vec<usize>> {
        for f in &self.faces {
            if f.windows(2).any(|w| w[0] >= w[1]) || f.iter().any(|&v| v >= self.vertex_count()) {
                return Some(f.clone());
            }
            if f.len() > 1 {
                for skip in 0..f.len() {
                    let g: Vec<usize> = f.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                    if !self.faces.contains(&g) {
                        return Some(f.clone());
                    }
                }
            }
        }
        None
    }

    pub fn is_downward_closed(&self) -> bool {
        self.closure_violation().is_none()
    }

    /// Vertex set `V_v` of the closed star of `v`: `v` and its neighbours.
    pub fn star_vertices(&self, v: usize) -> Vec<usize> {
        (0..self.vertex_count()).filter(|&w| w == v || self.adj[v][w]).collect()
    }

    /// The closed star of `v`: faces containing `v` together with their
    /// subfaces, as a complex on the full vertex list.
    pub fn star(&self, v: usize) -> Result<Star> {
        if v >= self.vertex_count() {
            return input_err(format!("unknown vertex {v}"));
        }
        let faces: BTreeSet<Vec<usize>> = self
            .faces
            .iter()
            .filter(|f| f.contains(&v) || {
                let mut g = (*f).clone();
                g.push(v);
                self.is_face(&g)
            })
            .cloned()
            .collect();
        let vertices = self.star_vertices(v);
        let complex = SimplicialComplex::from_closed(self.labels.clone(), faces);
        Ok(Star { centre: v, vertices, complex })
    }

    /// The link of a face: faces disjoint from it whose union with it is a face.
    pub fn link(&self, sigma: &[usize]) -> Vec<Vec<usize>> {
        self.faces
            .iter()
            .filter(|f| f.iter().all(|v| !sigma.contains(v)))
            .filter(|f| {
                let mut g = sigma.to_vec();
                g.extend(f.iter());
                self.is_face(&g)
            })
            .cloned()
            .collect()
    }

    /// Vertices `y` such that `sigma + {y}` is a face (`y` outside `sigma`).
    pub fn link_vertices(&self, sigma: &[usize]) -> Vec<usize> {
        (0..self.vertex_count())
            .filter(|y| !sigma.contains(y))
            .filter(|&y| {
                let mut g = sigma.to_vec();
                g.push(y);
                self.is_face(&g)
            })
            .collect()
    }

    /// Relabelled copy: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &Permutation) -> SimplicialComplex {
        let mut labels = vec![String::new(); self.vertex_count()];
        for v in 0..self.vertex_count() {
            labels[perm.apply(v)] = self.labels[v].clone();
        }
        let faces = self.faces.iter().map(|f| perm.apply_face(f)).collect();
        SimplicialComplex::from_closed(labels, faces)
    }

    /// Whether a vertex bijection maps faces onto faces.
    pub fn is_automorphism(&self, p: &Permutation) -> bool {
        p.len() == self.vertex_count() && self.faces.iter().all(|f| self.faces.contains(&p.apply_face(f)))
    }

    /// DOT rendering of the 1-skeleton with deterministic ordering.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("graph \"{}\" {{\n", escape(name));
        for (v, l) in self.labels.iter().enumerate() {
            s.push_str(&format!("  n{v} [label=\"{}\"];\n", escape(l)));
        }
        for (a, b) in self.edges() {
            s.push_str(&format!("  n{a} -- n{b};\n"));
        }
        s.push_str("}\n");
        s
    }
}

pub(crate) fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// The closed star of a vertex with its vertex set `V_v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Star {
    pub centre: usize,
    pub vertices: Vec<usize>,
    pub complex: SimplicialComplex,
}

/// A bijection of `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Permutation {
        Permutation((0..n).collect())
    }

    /// Checks bijectivity.
    pub fn new(images: Vec<usize>) -> Result<Permutation> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return input_err(format!("not a permutation: {images:?}"));
            }
            seen[x] = true;
        }
        Ok(Permutation(images))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn apply_face(&self, f: &[usize]) -> Vec<usize> {
        let mut g: Vec<usize> = f.iter().map(|&v| self.0[v]).collect();
        g.sort_unstable();
        g
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Nontrivial cycles, each starting at its least element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for s in 0..self.len() {
            if seen[s] || self.0[s] == s {
                continue;
            }
            let mut c = vec![s];
            seen[s] = true;
            let mut x = self.0[s];
            while x != s {
                seen[x] = true;
                c.push(x);
                x = self.0[x];
            }
            out.push(c);
        }
        out
    }

    /// Cycle notation with the given labels, e.g. `(c d)`; `()` for identity.
    pub fn cycle_string(&self, labels: &[String]) -> String {
        let cs = self.cycles();
        if cs.is_empty() {
            return "()".into();
        }
        cs.iter()
            .map(|c| format!("({})", c.iter().map(|&i| labels[i].as_str()).collect::<Vec<_>>().join(" ")))
            .collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Per-vertex invariant used to prune the automorphism search: face counts
/// by dimension.
fn vertex_signature(cx: &SimplicialComplex, v: usize) -> Vec<usize> {
    let mut sig = vec![0; (cx.dimension().max(0) + 1) as usize];
    for f in cx.faces() {
        if f.contains(&v) {
            sig[f.len() - 1] += 1;
        }
    }
    sig
}

/// All automorphisms of `cx`; with `preserve`, also the Coxeter matrix on
/// the vertices is preserved. Output is sorted.
pub fn automorphism_group(cx: &SimplicialComplex, preserve: Option<&CoxeterMatrix>, cap: usize) -> Result<Vec<Permutation>> {
    let n = cx.vertex_count();
    if n > cap {
        return Err(Error::Cap(format!("{n} vertices exceed the automorphism cap of {cap}")));
    }
    if let Some(m) = preserve {
        if m.rank() != n {
            return input_err("matrix size does not match the vertex count");
        }
    }
    let sig: Vec<Vec<usize>> = (0..n).map(|v| vertex_signature(cx, v)).collect();
    // Order vertices so that each one after the first in its component has an
    // already-assigned neighbour; this makes adjacency checks prune early.
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while order.len() < n {
        let start = (0..n).filter(|&v| !placed[v]).max_by_key(|&v| (sig[v].clone(), std::cmp::Reverse(v))).unwrap();
        placed[start] = true;
        order.push(start);
        let mut head = order.len() - 1;
        while head < order.len() {
            let u = order[head];
            for w in cx.neighbors(u) {
                if !placed[w] {
                    placed[w] = true;
                    order.push(w);
                }
            }
            head += 1;
        }
    }
    let mut out = Vec::new();
    let mut img = vec![usize::MAX; n];
    let mut used = vec![false; n];
    search(cx, preserve, &sig, &order, 0, &mut img, &mut used, &mut out);
    out.sort();
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn search(
    cx: &SimplicialComplex,
    mx: Option<&CoxeterMatrix>,
    sig: &[Vec<usize>],
    order: &[usize],
    depth: usize,
    img: &mut Vec<usize>,
    used: &mut Vec<bool>,
    out: &mut Vec<Permutation>,
) {
    if depth == order.len() {
        let p = Permutation(img.clone());
        if cx.is_automorphism(&p) {
            out.push(p);
        }
        return;
    }
    let v = order[depth];
    for w in 0..cx.vertex_count() {
        if used[w] || sig[w] != sig[v] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&u| {
            cx.adjacent(u, v) == cx.adjacent(img[u], w) && mx.is_none_or(|m| m.m(u, v) == m.m(img[u], w))
        });
        if !consistent {
            continue;
        }
        img[v] = w;
        used[w] = true;
        search(cx, mx, sig, order, depth + 1, img, used, out);
        used[w] = false;
        img[v] = usize::MAX;
    }
}

/// Outcome of a flag or metric-flag test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagVerdict {
    pub holds: bool,
    /// A clique that should span a face but does not.
    pub witness: Option<Vec<usize>>,
}

/// Flag test. Without a matrix: every clique of the 1-skeleton is a face.
/// With a matrix on the vertices: every clique whose generators span a
/// spherical subgroup is a face.
pub fn flag_check(cx: &SimplicialComplex, matrix: Option<&CoxeterMatrix>) -> Result<FlagVerdict> {
    let n = cx.vertex_count();
    if let Some(m) = matrix {
        if m.rank() != n {
            return input_err("matrix size does not match the vertex count");
        }
        if n > 32 {
            return input_err("metric flag test supports at most 32 vertices");
        }
    }
    let mut stack: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    while let Some(c) = stack.pop() {
        if !seen.insert(c.clone()) {
            continue;
        }
        let relevant = match matrix {
            None => true,
            Some(m) => is_spherical(m, Subset::from_indices(c.iter().copied())),
        };
        if relevant && !cx.is_face(&c) {
            return Ok(FlagVerdict { holds: false, witness: Some(c) });
        }
        if !relevant {
            // supersets of a non-spherical set are non-spherical
            continue;
        }
        let last = *c.last().unwrap();
        for w in last + 1..n {
            if c.iter().all(|&u| cx.adjacent(u, w)) {
                let mut d = c.clone();
                d.push(w);
                stack.push(d);
            }
        }
    }
    Ok(FlagVerdict { holds: true, witness: None })
}

/// Whether every pair of elements of `group` composes inside `group`, the
/// identity is present, and inverses are present.
pub fn is_group(group: &[Permutation]) -> bool {
    let set: HashSet<&Permutation> = group.iter().collect();
    let Some(first) = group.first() else { return false };
    set.contains(&Permutation::identity(first.len()))
        && group.iter().all(|g| set.contains(&g.inverse()))
        && group.iter().all(|g| group.iter().all(|h| set.contains(&g.compose(h))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("v{i}")).collect()
    }

    pub(crate) fn cycle(n: usize) -> SimplicialComplex {
        let facets: Vec<Vec<usize>> = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
        SimplicialComplex::from_facets(labels(n), &facets).unwrap()
    }

    #[test]
    fn star_of_cycle_vertex_is_a_path() {
        let c5 = cycle(5);
        let st = c5.star(0).unwrap();
        assert_eq!(st.vertices, vec![0, 1, 4]);
        assert_eq!(st.complex.edges(), vec![(0, 1), (0, 4)]);
        let tri = cycle(3);
        assert_eq!(tri.star(1).unwrap().complex.edges(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn automorphisms_of_cycles() {
        let g = automorphism_group(&cycle(5), None, DEFAULT_AUT_CAP).unwrap();
        assert_eq!(g.len(), 10);
        assert!(is_group(&g));
        assert_eq!(automorphism_group(&cycle(6), None, DEFAULT_AUT_CAP).unwrap().len(), 12);
    }

    #[test]
    fn automorphism_cap() {
        let big = cycle(30);
        assert!(matches!(automorphism_group(&big, None, 24), Err(Error::Cap(_))));
    }

    #[test]
    fn flag_tests() {
        assert!(!flag_check(&cycle(3), None).unwrap().holds);
        assert_eq!(flag_check(&cycle(3), None).unwrap().witness, Some(vec![0, 1, 2]));
        assert!(flag_check(&cycle(4), None).unwrap().holds);
        // metric flag: the empty triangle is fine if the triple is not spherical
        let m = CoxeterMatrix::from_fn(labels(3), |_, _| crate::coxeter::Entry::Finite(3)).unwrap();
        assert!(flag_check(&cycle(3), Some(&m)).unwrap().holds);
        let m2 = CoxeterMatrix::from_fn(labels(3), |_, _| crate::coxeter::Entry::Finite(2)).unwrap();
        assert!(!flag_check(&cycle(3), Some(&m2)).unwrap().holds);
    }

    #[test]
    fn permutation_algebra() {
        let p = Permutation::new(vec![1, 2, 0, 3]).unwrap();
        assert!(p.compose(&p.inverse()).is_identity());
        assert_eq!(p.cycles(), vec![vec![0, 1, 2]]);
        assert!(Permutation::new(vec![0, 0]).is_err());
        let l: Vec<String> = ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
        let t = Permutation::new(vec![0, 1, 3, 2]).unwrap();
        assert_eq!(t.cycle_string(&l), "(c d)");
    }

    #[test]
    fn closure_detection() {
        let mut faces = BTreeSet::new();
        faces.insert(vec![0, 1, 2]);
        assert!(SimplicialComplex::from_faces(labels(3), faces).is_err());
        let full = SimplicialComplex::from_facets(labels(3), &[vec![0, 1, 2]]).unwrap();
        assert_eq!(full.face_count(), 7);
        assert!(full.is_downward_closed());
        assert_eq!(full.facets(), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn dot_output_is_deterministic() {
        let d = cycle(5).to_dot("c5");
        assert_eq!(d.matches(" -- ").count(), 5);
        assert_eq!(d, cycle(5).to_dot("c5"));
    }
}
