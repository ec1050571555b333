//! The symmetric presentation of the full automorphism group of the
//! maximally symmetric associahedral tiling, and its permutation image.
//!
//! Generators are `beta_Q` for each subpolygon `Q` cut off by a diagonal,
//! and `rho_d` for each diagonal. The permutation image acts on the `n + 3`
//! sides of the polygon, side `p` being the edge `{p, p+1}`: `beta_Q`
//! reverses the boundary sides of `Q` and `rho_d` is the polygon reflection
//! swapping the ends of `d`.

use crate::blowup::Presentation;
use crate::complexes::Permutation;
use crate::{input_err, Error, Result};

use super::assoc::crosses;

/// Largest `n` accepted by [`symm_presentation`].
pub const SYMM_DIMENSION_CAP: usize = 6;

/// A subpolygon: the vertices `start, start+1, ..., end` taken cyclically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subpolygon {
    pub start: usize,
    pub end: usize,
}

/// Relator families of the presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SymmFamily {
    BetaSquare,
    RhoSquare,
    SameDiagonal,
    BetaRho,
    RhoPair,
    Square,
}

impl SymmFamily {
    pub fn name(self) -> &'static str {
        match self {
            SymmFamily::BetaSquare => "beta^2",
            SymmFamily::RhoSquare => "rho^2",
            SymmFamily::SameDiagonal => "(beta beta')^2",
            SymmFamily::BetaRho => "(beta rho)^2",
            SymmFamily::RhoPair => "(rho rho')^m",
            SymmFamily::Square => "R_I(b,c)",
        }
    }
}

/// The presentation together with its permutation image.
#[derive(Debug, Clone)]
pub struct SymmPresentation {
    pub n: usize,
    pub presentation: Presentation,
    pub families: Vec<SymmFamily>,
    /// Images of the generators as permutations of the sides.
    pub psi: Vec<Permutation>,
    /// Relators whose image is not the identity.
    pub failures: Vec<usize>,
    /// Number of square relators that fail when the words are formed with
    /// unprimed subpolygons and the reflection tail in reverse order.
    pub reversed_tail_failures: usize,
}

struct Polygon {
    size: usize,
    diagonals: Vec<(usize, usize)>,
}

impl Polygon {
    fn new(n: usize) -> Polygon {
        let size = n + 3;
        let diagonals = (0..size)
            .flat_map(|i| (i + 2..size).map(move |j| (i, j)))
            .filter(|&(i, j)| !(i == 0 && j == size - 1))
            .collect();
        Polygon { size, diagonals }
    }

    fn sides(&self, d: (usize, usize)) -> [Subpolygon; 2] {
        [Subpolygon { start: d.0, end: d.1 }, Subpolygon { start: d.1, end: d.0 }]
    }

    fn vertices(&self, q: Subpolygon) -> Vec<usize> {
        let len = (q.end + self.size - q.start) % self.size + 1;
        (0..len).map(|k| (q.start + k) % self.size).collect()
    }

    fn delta(&self, q: Subpolygon) -> (usize, usize) {
        (q.start.min(q.end), q.start.max(q.end))
    }

    fn other(&self, q: Subpolygon) -> Subpolygon {
        Subpolygon { start: q.end, end: q.start }
    }

    /// Image of `q` under the vertex reflection `x -> s - x`.
    fn reflect(&self, s: usize, q: Subpolygon) -> Subpolygon {
        let f = |x: usize| (s + self.size - x) % self.size;
        Subpolygon { start: f(q.end), end: f(q.start) }
    }

    fn side_of(&self, u: usize, v: usize) -> usize {
        if (u + 1) % self.size == v {
            u
        } else {
            v
        }
    }

    fn vertex_map_on_sides(&self, f: impl Fn(usize) -> usize) -> Permutation {
        let images = (0..self.size).map(|p| self.side_of(f(p), f((p + 1) % self.size))).collect();
        Permutation::new(images).expect("polygon symmetry")
    }

    fn rho(&self, d: (usize, usize)) -> Permutation {
        self.vertex_map_on_sides(|x| (d.0 + d.1 + self.size - x) % self.size)
    }

    fn beta(&self, q: Subpolygon) -> Permutation {
        let vs = self.vertices(q);
        let sides: Vec<usize> = vs.windows(2).map(|w| self.side_of(w[0], w[1])).collect();
        let mut images: Vec<usize> = (0..self.size).collect();
        for (a, b) in sides.iter().zip(sides.iter().rev()) {
            images[*a] = *b;
        }
        Permutation::new(images).expect("reversal")
    }

    fn contains(&self, q: Subpolygon, d: (usize, usize)) -> bool {
        let vs = self.vertices(q);
        vs.contains(&d.0) && vs.contains(&d.1)
    }
}

fn rotation_order(p: &Permutation) -> usize {
    let mut acc = p.clone();
    let mut k = 1;
    while !acc.is_identity() {
        acc = acc.compose(p);
        k += 1;
    }
    k
}

fn evaluate(psi: &[Permutation], word: &[usize]) -> Permutation {
    let mut acc = Permutation::identity(psi[0].len());
    for &g in word {
        acc = acc.compose(&psi[g]);
    }
    acc
}

/// Builds the presentation and checks every relator against the side
/// permutations.
pub fn symm_presentation(n: usize) -> Result<SymmPresentation> {
    if n < 2 {
        return input_err("the symmetric presentation needs n >= 2");
    }
    if n > SYMM_DIMENSION_CAP {
        return Err(Error::Cap(format!("dimension {n} exceeds the cap of {SYMM_DIMENSION_CAP}")));
    }
    let poly = Polygon::new(n);
    let nd = poly.diagonals.len();
    // beta generators 2d (inner side) and 2d+1 (outer side), then rho_d.
    let beta_index = |q: Subpolygon| {
        let d = poly.delta(q);
        let k = poly.diagonals.iter().position(|&x| x == d).expect("subpolygon of a diagonal");
        2 * k + usize::from(q.start != d.0)
    };
    let rho_index = |d: (usize, usize)| 2 * nd + poly.diagonals.iter().position(|&x| x == d).unwrap();
    let mut gens = Vec::new();
    let mut psi = Vec::new();
    for &d in &poly.diagonals {
        for q in poly.sides(d) {
            gens.push(format!("b{}..{}", q.start, q.end));
            psi.push(poly.beta(q));
        }
    }
    for &d in &poly.diagonals {
        gens.push(format!("r{},{}", d.0, d.1));
        psi.push(poly.rho(d));
    }

    let mut relators: Vec<Vec<usize>> = Vec::new();
    let mut families = Vec::new();
    let mut push = |w: Vec<usize>, f: SymmFamily| {
        relators.push(w);
        families.push(f);
    };
    for g in 0..2 * nd {
        push(vec![g, g], SymmFamily::BetaSquare);
    }
    for k in 0..nd {
        push(vec![2 * nd + k, 2 * nd + k], SymmFamily::RhoSquare);
    }
    for k in 0..nd {
        push(vec![2 * k, 2 * k + 1, 2 * k, 2 * k + 1], SymmFamily::SameDiagonal);
    }
    for k in 0..nd {
        for g in [2 * k, 2 * k + 1] {
            push(vec![g, 2 * nd + k, g, 2 * nd + k], SymmFamily::BetaRho);
        }
    }
    for a in 0..nd {
        for b in a + 1..nd {
            let m = rotation_order(&psi[2 * nd + a].compose(&psi[2 * nd + b]));
            let w = (0..m).flat_map(|_| [2 * nd + a, 2 * nd + b]).collect();
            push(w, SymmFamily::RhoPair);
        }
    }
    let mut reversed_tail_failures = 0;
    for &b in &poly.diagonals {
        for &c in &poly.diagonals {
            if b == c || crosses(b, c) {
                continue;
            }
            let big_b = poly.sides(b).into_iter().find(|&q| !poly.contains(q, c)).unwrap();
            let big_c = poly.sides(c).into_iter().find(|&q| !poly.contains(q, b)).unwrap();
            for mask in 0..16u32 {
                let i: Vec<bool> = (0..4).map(|k| mask >> (3 - k) & 1 == 1).collect();
                let mut qs = vec![big_b, big_c];
                for k in 0..4 {
                    let d = poly.delta(qs[k + 1]);
                    let next = if i[k] { poly.reflect(d.0 + d.1, qs[k]) } else { qs[k] };
                    qs.push(next);
                }
                let mut word: Vec<usize> = (1..=4)
                    .map(|k| beta_index(if i[k - 1] { poly.other(qs[k]) } else { qs[k] }))
                    .collect();
                let tail = [(i[0], c), (i[1], b), (i[2], c), (i[3], b)];
                word.extend(tail.iter().filter(|t| t.0).map(|t| rho_index(t.1)));

                let mut literal: Vec<usize> = (1..=4).map(|k| beta_index(qs[k])).collect();
                literal.extend(tail.iter().rev().filter(|t| t.0).map(|t| rho_index(t.1)));
                if !evaluate(&psi, &literal).is_identity() {
                    reversed_tail_failures += 1;
                }
                push(word, SymmFamily::Square);
            }
        }
    }
    let failures = (0..relators.len()).filter(|&r| !evaluate(&psi, &relators[r]).is_identity()).collect();
    Ok(SymmPresentation {
        n,
        presentation: Presentation { gens, relators, images: None },
        families,
        psi,
        failures,
        reversed_tail_failures,
    })
}
