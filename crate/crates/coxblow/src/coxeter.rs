//! Coxeter matrices, finite-type recognition and finite reflection groups.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::{input_err, Error, Result};

/// Default cap on the number of generators of a Coxeter matrix.
pub const DEFAULT_GENERATOR_CAP: usize = 16;
/// Default cap on the order of an enumerated finite group.
pub const DEFAULT_ORDER_CAP: usize = 1_000_000;
/// Rounding scale used to deduplicate floating root vectors.
const ROOT_SCALE: f64 = 1e8;

/// An entry `m(s, t)` of a Coxeter matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Entry {
    Finite(u32),
    Infinite,
}

impl Entry {
    pub fn is_finite(self) -> bool {
        matches!(self, Entry::Finite(_))
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Entry::Finite(m) => Some(m),
            Entry::Infinite => None,
        }
    }

    /// Parses `"3"` or `"inf"`.
    pub fn parse(s: &str) -> Result<Entry> {
        let t = s.trim();
        if t == "inf" {
            return Ok(Entry::Infinite);
        }
        match t.parse::<u32>() {
            Ok(m) if m >= 1 => Ok(Entry::Finite(m)),
            _ => input_err(format!("bad Coxeter matrix entry {s:?}")),
        }
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::Finite(m) => write!(f, "{m}"),
            Entry::Infinite => write!(f, "inf"),
        }
    }
}

/// A subset of the generator set, stored as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Subset(pub u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn singleton(i: usize) -> Subset {
        Subset(1 << i)
    }

    pub fn full(n: usize) -> Subset {
        if n >= 32 {
            Subset(u32::MAX)
        } else {
            Subset((1u32 << n) - 1)
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Subset {
        Subset(it.into_iter().fold(0, |acc, i| acc | (1 << i)))
    }

    /// The interval `{lo, ..., hi}` of generator indices.
    pub fn interval(lo: usize, hi: usize) -> Subset {
        Subset::from_indices(lo..=hi)
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, o: Subset) -> Subset {
        Subset(self.0 | o.0)
    }

    pub fn intersection(self, o: Subset) -> Subset {
        Subset(self.0 & o.0)
    }

    pub fn minus(self, o: Subset) -> Subset {
        Subset(self.0 & !o.0)
    }

    pub fn is_subset_of(self, o: Subset) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn is_proper_subset_of(self, o: Subset) -> bool {
        self.is_subset_of(o) && self != o
    }

    pub fn is_disjoint(self, o: Subset) -> bool {
        self.0 & o.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.contains(i))
    }

    /// Lowest member, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Image under a permutation of generator indices.
    pub fn map(self, perm: &[usize]) -> Subset {
        Subset::from_indices(self.iter().map(|i| perm[i]))
    }
}

/// A Coxeter matrix on an ordered list of labelled generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterMatrix {
    gens: Vec<String>,
    m: Vec<Entry>,
}

impl CoxeterMatrix {
    /// Builds a matrix, checking the diagonal, symmetry and label uniqueness.
    pub fn new(gens: Vec<String>, entries: Vec<Vec<Entry>>) -> Result<CoxeterMatrix> {
        let n = gens.len();
        if entries.len() != n || entries.iter().any(|r| r.len() != n) {
            return input_err(format!("matrix must be {n}x{n}"));
        }
        for i in 0..n {
            if gens[..i].contains(&gens[i]) {
                return input_err(format!("duplicate generator label {:?}", gens[i]));
            }
            for j in 0..n {
                let e = entries[i][j];
                if i == j && e != Entry::Finite(1) {
                    return input_err(format!("diagonal entry m({0},{0}) must be 1", gens[i]));
                }
                if i != j {
                    if e != entries[j][i] {
                        return input_err(format!("matrix not symmetric at ({}, {})", gens[i], gens[j]));
                    }
                    if e == Entry::Finite(1) || e == Entry::Finite(0) {
                        return input_err(format!("off-diagonal entry at ({}, {}) must be >= 2", gens[i], gens[j]));
                    }
                }
            }
        }
        Ok(CoxeterMatrix { gens, m: entries.into_iter().flatten().collect() })
    }

    /// Builds a matrix from a closure on index pairs `i < j`.
    pub fn from_fn(gens: Vec<String>, f: impl Fn(usize, usize) -> Entry) -> Result<CoxeterMatrix> {
        let n = gens.len();
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match i.cmp(&j) {
                        std::cmp::Ordering::Equal => Entry::Finite(1),
                        std::cmp::Ordering::Less => f(i, j),
                        std::cmp::Ordering::Greater => f(j, i),
                    })
                    .collect()
            })
            .collect();
        CoxeterMatrix::new(gens, entries)
    }

    /// Path diagram `1 - 2 - ... - n+1` with the given edge labels. A label 2
    /// disconnects the path; non-adjacent generators commute.
    pub fn schlafli(labels: &[u32]) -> Result<CoxeterMatrix> {
        if let Some(&bad) = labels.iter().find(|&&m| m < 2) {
            return input_err(format!("Schlafli labels must be >= 2, got {bad}"));
        }
        let gens = (1..=labels.len() + 1).map(|i| i.to_string()).collect();
        CoxeterMatrix::from_fn(gens, |i, j| if j == i + 1 { Entry::Finite(labels[i]) } else { Entry::Finite(2) })
    }

    /// Right-angled matrix: `m = 2` on edges of the graph, infinity elsewhere.
    pub fn right_angled(gens: Vec<String>, adjacent: impl Fn(usize, usize) -> bool) -> Result<CoxeterMatrix> {
        CoxeterMatrix::from_fn(gens, |i, j| if adjacent(i, j) { Entry::Finite(2) } else { Entry::Infinite })
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    pub fn gens(&self) -> &[String] {
        &self.gens
    }

    pub fn label(&self, i: usize) -> &str {
        &self.gens[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.gens.iter().position(|g| g == label)
    }

    pub fn m(&self, i: usize, j: usize) -> Entry {
        self.m[i * self.rank() + j]
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.rank())
    }

    pub fn rows(&self) -> Vec<Vec<Entry>> {
        (0..self.rank()).map(|i| (0..self.rank()).map(|j| self.m(i, j)).collect()).collect()
    }

    /// Labels of the members of `t`.
    pub fn subset_labels(&self, t: Subset) -> Vec<String> {
        t.iter().map(|i| self.gens[i].clone()).collect()
    }

    /// Parses a list of labels into a subset.
    pub fn subset_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Subset> {
        let mut s = Subset::EMPTY;
        for l in labels {
            match self.index_of(l.as_ref()) {
                Some(i) => s = s.union(Subset::singleton(i)),
                None => return input_err(format!("unknown generator label {:?}", l.as_ref())),
            }
        }
        Ok(s)
    }

    /// Matrix with generators permuted: new generator `k` is old `order[k]`.
    pub fn reorder(&self, order: &[usize]) -> Result<CoxeterMatrix> {
        let gens = order.iter().map(|&k| self.gens[k].clone()).collect();
        CoxeterMatrix::from_fn(gens, |i, j| self.m(order[i], order[j]))
    }

    /// Whether the generators in `t` are all joined by finite entries.
    pub fn is_clique(&self, t: Subset) -> bool {
        let v: Vec<usize> = t.iter().collect();
        v.iter().enumerate().all(|(a, &i)| v[a + 1..].iter().all(|&j| self.m(i, j).is_finite()))
    }

    /// Whether no diagram edge joins `a` and `b` (every entry between them is 2).
    pub fn commute(&self, a: Subset, b: Subset) -> bool {
        a.iter().all(|i| b.iter().all(|j| i == j || self.m(i, j) == Entry::Finite(2)))
    }

    /// Connected components of the diagram restricted to `t` (edges are
    /// entries other than 2), each as a subset, ordered by lowest member.
    pub fn components(&self, t: Subset) -> Vec<Subset> {
        let mut left = t;
        let mut out = Vec::new();
        while let Some(start) = left.first() {
            let mut comp = Subset::singleton(start);
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                for j in left.iter() {
                    if !comp.contains(j) && self.m(i, j) != Entry::Finite(2) {
                        comp = comp.union(Subset::singleton(j));
                        stack.push(j);
                    }
                }
            }
            left = left.minus(comp);
            out.push(comp);
        }
        out
    }
}

/// Irreducible finite Coxeter types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Irreducible {
    A(usize),
    B(usize),
    D(usize),
    E6,
    E7,
    E8,
    F4,
    H3,
    H4,
    I2(u32),
}

impl Irreducible {
    /// Group order, saturating at `u128::MAX` (never reached for real types).
    pub fn order(self) -> u128 {
        let fact = |n: usize| (1..=n as u128).product::<u128>();
        match self {
            Irreducible::A(n) => fact(n + 1),
            Irreducible::B(n) => (1u128 << n) * fact(n),
            Irreducible::D(n) => (1u128 << (n - 1)) * fact(n),
            Irreducible::E6 => 51_840,
            Irreducible::E7 => 2_903_040,
            Irreducible::E8 => 696_729_600,
            Irreducible::F4 => 1152,
            Irreducible::H3 => 120,
            Irreducible::H4 => 14_400,
            Irreducible::I2(p) => 2 * p as u128,
        }
    }
}

impl fmt::Display for Irreducible {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Irreducible::A(n) => write!(f, "A{n}"),
            Irreducible::B(n) => write!(f, "B{n}"),
            Irreducible::D(n) => write!(f, "D{n}"),
            Irreducible::E6 => write!(f, "E6"),
            Irreducible::E7 => write!(f, "E7"),
            Irreducible::E8 => write!(f, "E8"),
            Irreducible::F4 => write!(f, "F4"),
            Irreducible::H3 => write!(f, "H3"),
            Irreducible::H4 => write!(f, "H4"),
            Irreducible::I2(p) => write!(f, "I2({p})"),
        }
    }
}

/// One connected component of a diagram with its recognized type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    /// `None` marks a non-spherical component.
    pub kind: Option<Irreducible>,
    /// Member generators. For recognized paths they are listed in path order
    /// starting at the end carrying the special label; for forks the centre
    /// comes first, then the arms from shortest to longest, each from the
    /// centre outward.
    pub nodes: Vec<usize>,
}

/// The finite-type decomposition of a subdiagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterType {
    pub components: Vec<Component>,
}

impl CoxeterType {
    pub fn is_spherical(&self) -> bool {
        self.components.iter().all(|c| c.kind.is_some())
    }

    /// Order of the corresponding finite group, if spherical.
    pub fn order(&self) -> Option<u128> {
        self.components.iter().try_fold(1u128, |acc, c| c.kind.map(|k| acc.saturating_mul(k.order())))
    }

    /// Component tags sorted into a canonical multiset (for relabeling checks).
    pub fn tags(&self) -> Vec<String> {
        let mut v: Vec<String> =
            self.components.iter().map(|c| c.kind.map_or("NonSpherical".into(), |k| k.to_string())).collect();
        v.sort();
        v
    }
}

impl fmt::Display for CoxeterType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "trivial");
        }
        if !self.is_spherical() {
            return write!(f, "NonSpherical");
        }
        let parts: Vec<String> = self.components.iter().map(|c| c.kind.unwrap().to_string()).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// Recognizes the finite type of the subdiagram on `subset`.
pub fn classify_subdiagram(matrix: &CoxeterMatrix, subset: Subset) -> CoxeterType {
    let components = matrix.components(subset).into_iter().map(|c| classify_component(matrix, c)).collect();
    CoxeterType { components }
}

/// Whether `subset` generates a finite special subgroup.
pub fn is_spherical(matrix: &CoxeterMatrix, subset: Subset) -> bool {
    classify_subdiagram(matrix, subset).is_spherical()
}

fn classify_component(mx: &CoxeterMatrix, comp: Subset) -> Component {
    let nodes: Vec<usize> = comp.iter().collect();
    let non = |nodes: Vec<usize>| Component { kind: None, nodes };
    if nodes.len() == 1 {
        return Component { kind: Some(Irreducible::A(1)), nodes };
    }
    let nbrs = |i: usize| -> Vec<usize> { nodes.iter().copied().filter(|&j| j != i && mx.m(i, j) != Entry::Finite(2)).collect() };
    let mut edges = 0;
    for (a, &i) in nodes.iter().enumerate() {
        for &j in &nodes[a + 1..] {
            match mx.m(i, j) {
                Entry::Infinite => return non(nodes),
                Entry::Finite(2) => {}
                Entry::Finite(_) => edges += 1,
            }
        }
    }
    if edges != nodes.len() - 1 {
        return non(nodes);
    }
    let degs: Vec<usize> = nodes.iter().map(|&i| nbrs(i).len()).collect();
    let label = |i: usize, j: usize| mx.m(i, j).finite().unwrap();
    let walk = |start: usize, from: Option<usize>| -> Vec<usize> {
        let mut path = vec![start];
        let mut prev = from;
        let mut cur = start;
        loop {
            let next: Vec<usize> = nbrs(cur).into_iter().filter(|&j| Some(j) != prev && !path.contains(&j)).collect();
            if next.len() != 1 {
                return path;
            }
            prev = Some(cur);
            cur = next[0];
            path.push(cur);
        }
    };
    match degs.iter().max().copied().unwrap_or(0) {
        0 | 1 | 2 => {
            let ends: Vec<usize> = nodes.iter().zip(&degs).filter(|(_, &d)| d == 1).map(|(&i, _)| i).collect();
            let mut path = walk(ends[0], None);
            let labels: Vec<u32> = path.windows(2).map(|w| label(w[0], w[1])).collect();
            let k = path.len();
            let special: Vec<usize> = (0..labels.len()).filter(|&e| labels[e] != 3).collect();
            let kind = if k == 2 {
                Some(match labels[0] {
                    3 => Irreducible::A(2),
                    4 => Irreducible::B(2),
                    p => Irreducible::I2(p),
                })
            } else if special.is_empty() {
                Some(Irreducible::A(k))
            } else if special.len() == 1 {
                let e = special[0];
                let at_end = e == 0 || e == labels.len() - 1;
                if at_end && e != 0 {
                    path.reverse();
                }
                match (labels[e], at_end, k) {
                    (4, true, _) => Some(Irreducible::B(k)),
                    (4, false, 4) => Some(Irreducible::F4),
                    (5, true, 3) => Some(Irreducible::H3),
                    (5, true, 4) => Some(Irreducible::H4),
                    _ => None,
                }
            } else {
                None
            };
            Component { kind, nodes: path }
        }
        3 => {
            let centres: Vec<usize> = nodes.iter().zip(&degs).filter(|(_, &d)| d == 3).map(|(&i, _)| i).collect();
            if centres.len() != 1 {
                return non(nodes);
            }
            let c = centres[0];
            if nodes.iter().any(|&i| nbrs(i).iter().any(|&j| label(i, j) != 3)) {
                return non(nodes);
            }
            let mut arms: Vec<Vec<usize>> = nbrs(c).into_iter().map(|a| walk(a, Some(c))).collect();
            arms.sort_by_key(|a| (a.len(), a[0]));
            let lens: Vec<usize> = arms.iter().map(|a| a.len()).collect();
            let kind = match lens.as_slice() {
                [1, 1, l] => Some(Irreducible::D(l + 3)),
                [1, 2, 2] => Some(Irreducible::E6),
                [1, 2, 3] => Some(Irreducible::E7),
                [1, 2, 4] => Some(Irreducible::E8),
                _ => None,
            };
            let mut ordered = vec![c];
            arms.iter().for_each(|a| ordered.extend(a));
            Component { kind, nodes: ordered }
        }
        _ => non(nodes),
    }
}

/// The diagram automorphism induced by conjugation with the longest element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Symmetry {
    /// Permutation of all generator indices; identity outside the subdiagram.
    pub perm: Vec<usize>,
    /// True iff the longest element acts as `-1` (the permutation is trivial).
    pub antipodal: bool,
}

/// Computes the longest-element symmetry of a spherical type on `rank`
/// generators.
pub fn longest_element_symmetry(t: &CoxeterType, rank: usize) -> Result<Symmetry> {
    if !t.is_spherical() {
        return input_err("longest element requested for a non-spherical type");
    }
    let mut perm: Vec<usize> = (0..rank).collect();
    for c in &t.components {
        let nodes = &c.nodes;
        match c.kind.unwrap() {
            Irreducible::A(n) if n > 1 => {
                for (a, b) in nodes.iter().zip(nodes.iter().rev()) {
                    perm[*a] = *b;
                }
            }
            Irreducible::I2(p) if p % 2 == 1 => {
                perm[nodes[0]] = nodes[1];
                perm[nodes[1]] = nodes[0];
            }
            Irreducible::D(n) if n % 2 == 1 => {
                // centre, tip, tip, long arm
                perm[nodes[1]] = nodes[2];
                perm[nodes[2]] = nodes[1];
            }
            Irreducible::E6 => {
                // centre, short tip, arm (x, y), arm (z, w)
                perm[nodes[2]] = nodes[4];
                perm[nodes[4]] = nodes[2];
                perm[nodes[3]] = nodes[5];
                perm[nodes[5]] = nodes[3];
            }
            _ => {}
        }
    }
    let antipodal = perm.iter().enumerate().all(|(i, &p)| i == p);
    Ok(Symmetry { perm, antipodal })
}

/// Longest-element symmetry of the subdiagram on `t`.
pub fn subset_symmetry(matrix: &CoxeterMatrix, t: Subset) -> Result<Symmetry> {
    longest_element_symmetry(&classify_subdiagram(matrix, t), matrix.rank())
}

/// All spherical subsets, including the empty set, ordered by size then mask.
pub fn spherical_poset(matrix: &CoxeterMatrix, cap: usize) -> Result<Vec<Subset>> {
    let n = matrix.rank();
    if n > cap {
        return Err(Error::Cap(format!("{n} generators exceed the cap of {cap}")));
    }
    let mut out: Vec<Subset> = (0..1u32 << n).map(Subset).filter(|&t| is_spherical(matrix, t)).collect();
    out.sort_by_key(|t| (t.len(), t.0));
    Ok(out)
}

/// A finite Coxeter group realized by its permutation action on roots.
#[derive(Debug, Clone)]
pub struct FiniteGroupModel {
    /// Root vectors in the basis of simple roots.
    pub roots: Vec<Vec<f64>>,
    /// For each generator, the induced permutation of `roots`.
    pub gen_perms: Vec<Vec<usize>>,
    /// Whether each root is positive.
    pub positive: Vec<bool>,
    /// Elements in breadth-first order, keyed by the images of the simple roots.
    pub elements: Vec<GroupElement>,
}

/// An element of a [`FiniteGroupModel`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupElement {
    /// Root indices of the images of the simple roots.
    pub simple_images: Vec<usize>,
    /// Word length.
    pub length: usize,
}

impl FiniteGroupModel {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn rank(&self) -> usize {
        self.gen_perms.len()
    }

    /// Number of reflections (positive roots).
    pub fn reflection_count(&self) -> usize {
        self.positive.iter().filter(|&&p| p).count()
    }

    /// Root permutation of the product `w[0] w[1] ... w[k-1]`.
    pub fn word_permutation(&self, word: &[usize]) -> Vec<usize> {
        (0..self.roots.len())
            .map(|r| word.iter().rev().fold(r, |x, &g| self.gen_perms[g][x]))
            .collect()
    }

    /// Whether a word in the generators evaluates to the identity.
    pub fn is_identity(&self, word: &[usize]) -> bool {
        (0..self.rank()).all(|i| word.iter().rev().fold(i, |x, &g| self.gen_perms[g][x]) == i)
    }

    /// A reduced word for the longest element of the special subgroup on `t`.
    pub fn longest_word(&self, t: Subset) -> Vec<usize> {
        let mut word: Vec<usize> = Vec::new();
        loop {
            let p = self.word_permutation(&word);
            // l(w s) > l(w) iff w(alpha_s) is positive
            match t.iter().find(|&s| self.positive[p[s]]) {
                Some(s) => word.push(s),
                None => return word,
            }
        }
    }
}

fn root_key(v: &[f64]) -> Vec<i64> {
    v.iter().map(|x| (x * ROOT_SCALE).round() as i64).collect()
}

/// Enumerates a finite Coxeter group through its action on the root system.
pub fn enumerate_finite_group(matrix: &CoxeterMatrix, order_cap: usize) -> Result<FiniteGroupModel> {
    let n = matrix.rank();
    let ty = classify_subdiagram(matrix, matrix.full());
    let expected = match ty.order() {
        Some(o) => o,
        None => return input_err("group is not finite (non-spherical diagram)"),
    };
    if expected > order_cap as u128 {
        return Err(Error::Cap(format!("group order {expected} exceeds the cap of {order_cap}")));
    }
    let form: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match matrix.m(i, j) {
                    Entry::Finite(m) => -(std::f64::consts::PI / m as f64).cos(),
                    Entry::Infinite => unreachable!("finite group has finite entries"),
                })
                .collect()
        })
        .collect();
    let reflect = |x: &[f64], i: usize| -> Vec<f64> {
        let b: f64 = (0..n).map(|j| x[j] * form[j][i]).sum();
        let mut y = x.to_vec();
        y[i] -= 2.0 * b;
        y
    };
    let mut roots: Vec<Vec<f64>> = Vec::new();
    let mut index: HashMap<Vec<i64>, usize> = HashMap::new();
    for i in 0..n {
        let mut e = vec![0.0; n];
        e[i] = 1.0;
        index.insert(root_key(&e), roots.len());
        roots.push(e);
    }
    let mut queue: VecDeque<usize> = (0..n).collect();
    while let Some(r) = queue.pop_front() {
        for i in 0..n {
            let y = reflect(&roots[r], i);
            let k = root_key(&y);
            if !index.contains_key(&k) {
                index.insert(k, roots.len());
                roots.push(y);
                queue.push_back(roots.len() - 1);
                if roots.len() > 2 * order_cap {
                    return Err(Error::Cap("root system does not close".into()));
                }
            }
        }
    }
    let gen_perms: Vec<Vec<usize>> =
        (0..n).map(|i| roots.iter().map(|r| index[&root_key(&reflect(r, i))]).collect()).collect();
    let positive: Vec<bool> = roots.iter().map(|r| r.iter().all(|&x| x > -1e-8)).collect();
    if positive.iter().zip(&roots).any(|(&p, r)| !p && !r.iter().all(|&x| x < 1e-8)) {
        return Err(Error::Internal("root with mixed signs".into()));
    }
    let mut elements = vec![GroupElement { simple_images: (0..n).collect(), length: 0 }];
    let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
    seen.insert(elements[0].simple_images.clone(), 0);
    let mut head = 0;
    while head < elements.len() {
        let (imgs, len) = (elements[head].simple_images.clone(), elements[head].length);
        for perm in &gen_perms {
            let next: Vec<usize> = imgs.iter().map(|&r| perm[r]).collect();
            if !seen.contains_key(&next) {
                seen.insert(next.clone(), elements.len());
                elements.push(GroupElement { simple_images: next, length: len + 1 });
                if elements.len() > order_cap {
                    return Err(Error::Cap(format!("group order exceeds the cap of {order_cap}")));
                }
            }
        }
        head += 1;
    }
    if elements.len() as u128 != expected {
        return Err(Error::Internal(format!("enumerated {} elements, expected {expected}", elements.len())));
    }
    Ok(FiniteGroupModel { roots, gen_perms, positive, elements })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(labels: &[u32]) -> CoxeterMatrix {
        CoxeterMatrix::schlafli(labels).unwrap()
    }

    #[test]
    fn recognizes_catalog_types() {
        let ty = |l: &[u32]| classify_subdiagram(&path(l), path(l).full()).to_string();
        assert_eq!(ty(&[3, 3]), "A3");
        assert_eq!(ty(&[3, 4]), "B3");
        assert_eq!(ty(&[4, 3]), "B3");
        assert_eq!(ty(&[2]), "A1 x A1");
        assert_eq!(ty(&[3, 4, 3]), "F4");
        assert_eq!(ty(&[5, 3, 3]), "H4");
        assert_eq!(ty(&[3, 5]), "H3");
        assert_eq!(ty(&[5, 3, 3, 3]), "NonSpherical");
        assert_eq!(ty(&[4, 3, 4]), "NonSpherical");
        assert_eq!(ty(&[6]), "I2(6)");
        assert_eq!(ty(&[3, 2, 4]), "A2 x B2");
    }

    #[test]
    fn recognizes_forks() {
        let gens: Vec<String> = (0..6).map(|i| format!("s{i}")).collect();
        // centre 0 with arms 1 | 2-3 | 4-5
        let e = |i: usize, j: usize| matches!((i, j), (0, 1) | (0, 2) | (2, 3) | (0, 4) | (4, 5));
        let mx = CoxeterMatrix::from_fn(gens, |i, j| Entry::Finite(if e(i, j) { 3 } else { 2 })).unwrap();
        let ty = classify_subdiagram(&mx, mx.full());
        assert_eq!(ty.to_string(), "E6");
        let sym = longest_element_symmetry(&ty, 6).unwrap();
        assert_eq!(sym.perm, vec![0, 1, 4, 5, 2, 3]);
        let d5 = Subset::from_indices([0, 1, 2, 3, 4]);
        assert_eq!(classify_subdiagram(&mx, d5).to_string(), "D5");
        let sym = subset_symmetry(&mx, d5).unwrap();
        assert!(!sym.antipodal);
        assert_eq!(sym.perm[1], 4);
    }

    #[test]
    fn symmetries_follow_the_antipodal_list() {
        let a1 = path(&[2]);
        let s = subset_symmetry(&a1, Subset::singleton(0)).unwrap();
        assert!(s.antipodal);
        let a3 = path(&[3, 3]);
        let s = subset_symmetry(&a3, a3.full()).unwrap();
        assert_eq!(s.perm, vec![2, 1, 0]);
        assert!(!s.antipodal);
        let f4 = path(&[3, 4, 3]);
        assert!(subset_symmetry(&f4, f4.full()).unwrap().antipodal);
        let a2b2 = path(&[3, 2, 4]);
        let s = subset_symmetry(&a2b2, a2b2.full()).unwrap();
        assert_eq!(s.perm, vec![1, 0, 2, 3]);
        assert!(!s.antipodal);
        let h = path(&[5, 3, 3]);
        assert!(subset_symmetry(&h, h.full()).unwrap().antipodal);
    }

    #[test]
    fn spherical_poset_of_a3_and_affine_c3() {
        assert_eq!(spherical_poset(&path(&[3, 3]), 16).unwrap().len(), 8);
        let c = path(&[4, 3, 3, 4]);
        let p = spherical_poset(&c, 16).unwrap();
        assert_eq!(p.len(), 31);
        assert!(!p.contains(&c.full()));
        let gens = vec!["a".to_string(), "b".into(), "c".into()];
        let inf = CoxeterMatrix::from_fn(gens, |i, j| if (i, j) == (0, 1) { Entry::Infinite } else { Entry::Finite(2) }).unwrap();
        let p = spherical_poset(&inf, 16).unwrap();
        assert!(p.iter().all(|t| !(t.contains(0) && t.contains(1))));
        assert_eq!(p.len(), 6);
    }

    #[test]
    fn generator_cap_is_enforced() {
        let m = CoxeterMatrix::schlafli(&[2; 17]).unwrap();
        assert!(matches!(spherical_poset(&m, 16), Err(Error::Cap(_))));
    }

    #[test]
    fn finite_group_orders() {
        assert_eq!(enumerate_finite_group(&path(&[7]), DEFAULT_ORDER_CAP).unwrap().order(), 14);
        assert_eq!(enumerate_finite_group(&path(&[3]), DEFAULT_ORDER_CAP).unwrap().order(), 6);
        let b3 = enumerate_finite_group(&path(&[4, 3]), DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(b3.order(), 48);
        assert_eq!(b3.roots.len(), 2 * b3.reflection_count());
        assert_eq!(b3.reflection_count(), 9);
        let h3 = enumerate_finite_group(&path(&[5, 3]), DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(h3.order(), 120);
        assert_eq!(h3.roots.len(), 30);
        assert!(matches!(enumerate_finite_group(&path(&[3, 3, 3, 3, 3, 3, 3, 3, 3]), 1000), Err(Error::Cap(_))));
    }

    #[test]
    fn longest_words_have_the_right_length() {
        let a3 = enumerate_finite_group(&path(&[3, 3]), DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(a3.longest_word(Subset::full(3)).len(), 6);
        assert_eq!(a3.longest_word(Subset::from_indices([0, 2])).len(), 2);
        let w = a3.longest_word(Subset::full(3));
        let mut ww = w.clone();
        ww.extend(&w);
        assert!(a3.is_identity(&ww));
        assert!(!a3.is_identity(&w));
    }

    #[test]
    fn entry_parsing() {
        assert_eq!(Entry::parse("inf").unwrap(), Entry::Infinite);
        assert_eq!(Entry::parse("4").unwrap(), Entry::Finite(4));
        assert!(Entry::parse("x").is_err());
        assert_eq!(Entry::Infinite.to_string(), "inf");
    }
}
