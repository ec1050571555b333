//! The forms `B_t`, the involutions `rho_v`, and reflections in Minkowski
//! space.
//!
//! Matrices act on column vectors: column `u` of `rho_v` is `rho_v(e_u)`.
//! Scalars are either exact rationals (when every finite entry of the
//! Coxeter matrix is 1, 2 or 3) or `f64` compared with a tolerance.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::coxeter::{is_spherical, CoxeterMatrix, Entry, Subset};
use crate::groups::{Check, GluingSystem};
use crate::{input_err, Error, Result};

/// Default upper end of the integer scan for `t`.
pub const DEFAULT_T_SCAN_CAP: i64 = 100;
/// Default tolerance for floating comparisons.
pub const DEFAULT_FLOAT_TOLERANCE: f64 = 1e-9;

/// Field operations needed by the representation code.
pub trait Scalar:
    Clone + fmt::Debug + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Div<Output = Self> + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    /// `-cos(pi/m)`, if representable.
    fn neg_cos_pi_over(m: u32) -> Option<Self>;
    /// Zero test; exact scalars ignore `tol`.
    fn is_negligible(&self, tol: f64) -> bool;
    fn is_positive(&self, tol: f64) -> bool;
    /// `"p/q"` for rationals, decimal for floats.
    fn render(&self) -> String;
}

/// Exact rational scalar.
pub type Rational = BigRational;

impl Scalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn neg_cos_pi_over(m: u32) -> Option<Self> {
        match m {
            1 => Some(Self::from_int(1)),
            2 => Some(Self::from_int(0)),
            3 => Some(BigRational::new(BigInt::from(-1), BigInt::from(2))),
            _ => None,
        }
    }

    fn is_negligible(&self, _tol: f64) -> bool {
        self.is_zero()
    }

    fn is_positive(&self, _tol: f64) -> bool {
        Signed::is_positive(self)
    }

    fn render(&self) -> String {
        if self.denom().is_one() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn from_int(n: i64) -> Self {
        n as f64
    }

    fn neg_cos_pi_over(m: u32) -> Option<Self> {
        if m == 0 {
            None
        } else {
            Some(-(std::f64::consts::PI / m as f64).cos())
        }
    }

    fn is_negligible(&self, tol: f64) -> bool {
        self.abs() <= tol
    }

    fn is_positive(&self, tol: f64) -> bool {
        *self > tol
    }

    fn render(&self) -> String {
        format!("{self}")
    }
}

/// Parses `"p/q"` or an integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parse_int = |x: &str| x.trim().parse::<BigInt>().map_err(|_| Error::Input(format!("bad rational '{s}'")));
    match s.split_once('/') {
        Some((p, q)) => {
            let q = parse_int(q)?;
            if q.is_zero() {
                return input_err(format!("zero denominator in '{s}'"));
            }
            Ok(BigRational::new(parse_int(p)?, q))
        }
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}

/// Dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Matrix<S> {
        Matrix { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Matrix<S> {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, S::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Matrix<S>> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return input_err("ragged matrix");
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: S) {
        self.data[i * self.cols + j] = x;
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(|r| r.to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix<S> {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, o: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut out: Matrix<S> = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_negligible(0.0) {
                    continue;
                }
                for j in 0..o.cols {
                    let v = out.get(i, j).clone() + a.clone() * o.get(k, j).clone();
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn sub(&self, o: &Matrix<S>) -> Matrix<S> {
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.clone() - b.clone()).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, k: S) -> Matrix<S> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.clone() * k.clone()).collect() }
    }

    /// Entrywise equality up to `tol` (exact for rationals).
    pub fn approx_eq(&self, o: &Matrix<S>, tol: f64) -> bool {
        self.rows == o.rows && self.cols == o.cols && self.data.iter().zip(&o.data).all(|(a, b)| (a.clone() - b.clone()).is_negligible(tol))
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.rows == self.cols && self.approx_eq(&Matrix::identity(self.rows), tol)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self, tol: f64) -> S {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return S::one();
        }
        let mut a = self.to_rows();
        let mut sign = S::one();
        let mut prev = S::one();
        for k in 0..n - 1 {
            if a[k][k].is_negligible(tol) {
                match (k + 1..n).find(|&r| !a[r][k].is_negligible(tol)) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return S::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j].clone() * a[k][k].clone() - a[i][k].clone() * a[k][j].clone()) / prev.clone();
                }
            }
            prev = a[k][k].clone();
        }
        sign * a[n - 1][n - 1].clone()
    }

    /// Inverse by Gauss-Jordan elimination; `None` if singular.
    pub fn inverse(&self, tol: f64) -> Option<Matrix<S>> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.to_rows();
        let mut inv = Matrix::<S>::identity(n).to_rows();
        for col in 0..n {
            // partial pivoting by magnitude is meaningless for rationals; pick the first usable row
            let pivot = (col..n).find(|&r| !a[r][col].is_negligible(tol))?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = a[col][col].clone();
            for j in 0..n {
                a[col][j] = a[col][j].clone() / p.clone();
                inv[col][j] = inv[col][j].clone() / p.clone();
            }
            for r in 0..n {
                if r != col && !a[r][col].is_negligible(0.0) {
                    let f = a[r][col].clone();
                    for j in 0..n {
                        a[r][j] = a[r][j].clone() - f.clone() * a[col][j].clone();
                        inv[r][j] = inv[r][j].clone() - f.clone() * inv[col][j].clone();
                    }
                }
            }
        }
        Matrix::from_rows(inv).ok()
    }

    /// Entries rendered as strings.
    pub fn render(&self) -> Vec<Vec<String>> {
        self.to_rows().iter().map(|r| r.iter().map(|x| x.render()).collect()).collect()
    }
}

/// Whether the matrix has only entries `-cos(pi/m)` that are rational.
pub fn exact_mode_available(m: &CoxeterMatrix) -> bool {
    (0..m.rank()).all(|i| (0..m.rank()).all(|j| matches!(m.m(i, j), Entry::Infinite | Entry::Finite(1..=3))))
}

/// `B_t`: `-cos(pi/m)` for finite `m`, `-t` for infinite `m`.
pub fn gram_matrix<S: Scalar>(m: &CoxeterMatrix, t: &S) -> Result<Matrix<S>> {
    let n = m.rank();
    let mut g = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let x = match m.m(i, j) {
                Entry::Finite(k) => match S::neg_cos_pi_over(k) {
                    Some(x) => x,
                    None => return input_err(format!("-cos(pi/{k}) is irrational; use float mode")),
                },
                Entry::Infinite => -t.clone(),
            };
            g.set(i, j, x);
        }
    }
    Ok(g)
}

fn mbar(m: &CoxeterMatrix) -> Result<CoxeterMatrix> {
    CoxeterMatrix::from_fn(m.gens().to_vec(), |i, j| match m.m(i, j) {
        Entry::Infinite => Entry::Finite(2),
        e => e,
    })
}

/// Report of Conditions (P) and (C).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderReport {
    /// Clauses (i)-(iv) of (P).
    pub p: Vec<Check>,
    /// Clauses (i)-(v) of (C).
    pub c: Vec<Check>,
}

impl OrderReport {
    pub fn p_holds(&self) -> bool {
        self.p.iter().all(|c| c.holds)
    }

    pub fn c_holds(&self) -> bool {
        self.c.iter().all(|c| c.holds)
    }
}

fn pass() -> Check {
    Check { holds: true, witness: None }
}

fn fail(w: String) -> Check {
    Check { holds: false, witness: Some(w) }
}

/// Checks each clause of (P) and (C) literally.
pub fn check_order_conditions(g: &GluingSystem) -> Result<OrderReport> {
    if !g.has_order() {
        return input_err("no partial order supplied");
    }
    if !g.bar_is_trivial() {
        return input_err("(P) and (C) assume a trivial bar involution");
    }
    let n = g.len();
    if n > 32 {
        return input_err("at most 32 vertices are supported");
    }
    let lt = |u: usize, v: usize| g.less(u, v).unwrap();
    let cmp = |u: usize, v: usize| lt(u, v) || lt(v, u);
    let le = |u: usize, v: usize| u == v || lt(u, v);
    let adj = |u: usize, v: usize| u != v && g.matrix().m(u, v).is_finite();
    let minimal = |v: usize| (0..n).all(|u| !lt(u, v));
    let l = |v: usize| g.labels()[v].clone();
    let m = g.matrix();

    let mut p = vec![pass(), pass(), pass(), pass()];
    'p1: for u in 0..n {
        for v in 0..n {
            if lt(u, v) && !adj(u, v) {
                p[0] = fail(format!("{} < {} but they are not adjacent", l(u), l(v)));
                break 'p1;
            }
        }
    }
    'p2: for u in 0..n {
        for v in u + 1..n {
            if let Entry::Finite(k) = m.m(u, v) {
                if k >= 3 && !(minimal(u) && minimal(v)) {
                    p[1] = fail(format!("m({},{}) = {k} but they are not both minimal", l(u), l(v)));
                    break 'p2;
                }
            }
        }
    }
    'p3: for u in 0..n {
        for v in 0..n {
            if !(adj(u, v) && !cmp(u, v)) {
                continue;
            }
            for u2 in (0..n).filter(|&x| le(x, u)) {
                for v2 in (0..n).filter(|&x| le(x, v)) {
                    if !(adj(u2, v2) && !cmp(u2, v2)) {
                        p[2] = fail(format!(
                            "{}, {} are adjacent and noncomparable but {}, {} are not",
                            l(u),
                            l(v),
                            l(u2),
                            l(v2)
                        ));
                        break 'p3;
                    }
                }
            }
        }
    }
    let mb = mbar(m)?;
    for v in 0..n {
        let below = Subset::from_indices((0..n).filter(|&u| lt(u, v)));
        if !is_spherical(&mb, below) {
            p[3] = fail(format!("the elements below {} are not spherical for M-bar", l(v)));
            break;
        }
    }

    let mut c = vec![pass(), pass(), pass(), pass(), pass()];
    'c1: for v in 0..n {
        for (x, y) in g.j_pairs(v) {
            if g.j(v, y) != Some(x) {
                c[0] = fail(format!("j_{} is not an involution at {}", l(v), l(x)));
                break 'c1;
            }
        }
    }
    let c2 = crate::groups::check_condition_2(g);
    c[1] = c2;
    'c3: for v in 0..n {
        let pairs = g.j_pairs(v);
        for &(x1, y1) in &pairs {
            for &(x2, y2) in &pairs {
                if lt(x1, x2) != lt(y1, y2) {
                    c[2] = fail(format!("j_{} does not preserve the order on {} < {}", l(v), l(x1), l(x2)));
                    break 'c3;
                }
            }
        }
    }
    'c4: for v in 0..n {
        for (u, y) in g.j_pairs(v) {
            if u != y && !lt(u, v) {
                c[3] = fail(format!("j_{} moves {} which is not below it", l(v), l(u)));
                break 'c4;
            }
        }
    }
    'c5: for v in 0..n {
        for u in (0..n).filter(|&u| lt(u, v)) {
            let u2 = g.j(v, u).unwrap();
            for y in (0..n).filter(|&y| lt(y, u)) {
                let img = g.j(v, y).and_then(|z| g.j(u2, z)).and_then(|z| g.j(v, z)).and_then(|z| g.j(u, z));
                if img != Some(y) {
                    c[4] = fail(format!("j_{} j_{} j_{} j_{} does not fix {}", l(u), l(v), l(u2), l(v), l(y)));
                    break 'c5;
                }
            }
        }
    }
    Ok(OrderReport { p, c })
}

/// Basis of `R e_v + E_v`: `e_v` first, then `e_u - e_{j(u)}` once per
/// swapped pair, as coefficient vectors.
fn projection_basis(g: &GluingSystem, v: usize) -> Vec<Vec<i64>> {
    let n = g.len();
    let mut basis = Vec::new();
    let mut e = vec![0; n];
    e[v] = 1;
    basis.push(e);
    for (u, w) in g.j_pairs(v) {
        if u < w {
            let mut e = vec![0; n];
            e[u] = 1;
            e[w] = -1;
            basis.push(e);
        }
    }
    basis
}

fn basis_matrix<S: Scalar>(basis: &[Vec<i64>], n: usize) -> Matrix<S> {
    let mut m = Matrix::zeros(n, basis.len());
    for (k, b) in basis.iter().enumerate() {
        for i in 0..n {
            m.set(i, k, S::from_int(b[i]));
        }
    }
    m
}

/// `det(B_t | E_v)` (1 when `E_v = 0`).
pub fn e_v_determinant<S: Scalar>(g: &GluingSystem, form: &Matrix<S>, v: usize, tol: f64) -> S {
    let basis: Vec<Vec<i64>> = projection_basis(g, v).into_iter().skip(1).collect();
    let bs = basis_matrix::<S>(&basis, g.len());
    bs.transpose().mul(form).mul(&bs).determinant(tol)
}

/// Smallest integer `t` in `2..=cap` making every `B_t | E_v` nondegenerate.
pub fn select_parameter(g: &GluingSystem, cap: i64, tol: f64) -> Result<i64> {
    let rep = check_order_conditions(g)?;
    if !rep.p_holds() || !rep.c_holds() {
        return input_err("conditions (P) and (C) must hold before choosing t");
    }
    let exact = exact_mode_available(g.matrix());
    for t in 2..=cap {
        let ok = if exact {
            let form = gram_matrix(g.matrix(), &Rational::from_int(t))?;
            (0..g.len()).all(|v| !e_v_determinant(g, &form, v, tol).is_negligible(tol))
        } else {
            let form = gram_matrix(g.matrix(), &(t as f64))?;
            (0..g.len()).all(|v| !e_v_determinant(g, &form, v, tol).is_negligible(tol))
        };
        if ok {
            return Ok(t);
        }
    }
    Err(Error::Cap(format!("no t in 2..={cap} makes every restricted form nondegenerate")))
}

/// `rho_v = I - 2 P_v` where `P_v` is the `B_t`-orthogonal projection onto
/// `R e_v + E_v`, for every `v`.
pub fn build_representation<S: Scalar>(g: &GluingSystem, form: &Matrix<S>, tol: f64) -> Result<Vec<Matrix<S>>> {
    let n = g.len();
    let id = Matrix::<S>::identity(n);
    (0..n)
        .map(|v| {
            let bs = basis_matrix::<S>(&projection_basis(g, v), n);
            let gram = bs.transpose().mul(form).mul(&bs);
            let inv = gram
                .inverse(tol)
                .ok_or_else(|| Error::Internal(format!("singular restricted form at {}", g.labels()[v])))?;
            let proj = bs.mul(&inv).mul(&bs.transpose()).mul(form);
            Ok(id.sub(&proj.scale(S::from_int(2))))
        })
        .collect()
}

/// Outcome of [`verify_representation`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub involutions: Check,
    pub form_preserved: Check,
    /// Relations `(u v)^m` for minimal pairs.
    pub relation_b: Check,
    /// Relations `u v u' v` for `u < v`.
    pub relation_c: Check,
    /// Relations `(u v)^2` for noncomparable commuting pairs.
    pub relation_d: Check,
    /// `rho_v(e_u) = e_{j_v(u)}` for `u < v`.
    pub moves_basis: Check,
    /// Distinct nontrivial generators, orders `m` for noncomparable pairs,
    /// and `1, rho_u, rho_u rho_v, rho_u rho_v rho_u'` distinct for `u < v`.
    pub distinctness: Check,
    /// Positive definiteness of `B_t` on `e_u, e_v` for adjacent minimal pairs.
    pub positive_pairs: Check,
    /// Whether comparisons used a floating tolerance.
    pub approximate: bool,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        [
            &self.involutions,
            &self.form_preserved,
            &self.relation_b,
            &self.relation_c,
            &self.relation_d,
            &self.moves_basis,
            &self.distinctness,
            &self.positive_pairs,
        ]
        .iter()
        .all(|c| c.holds)
    }
}

fn power_order<S: Scalar>(m: &Matrix<S>, limit: u32, tol: f64) -> Option<u32> {
    let mut acc = m.clone();
    for k in 1..=limit {
        if acc.is_identity(tol) {
            return Some(k);
        }
        acc = acc.mul(m);
    }
    None
}

/// Checks the matrices against the form, the defining relations, and the
/// distinctness facts that certify Condition (4).
pub fn verify_representation<S: Scalar>(
    mats: &[Matrix<S>],
    g: &GluingSystem,
    form: &Matrix<S>,
    tol: f64,
    approximate: bool,
) -> Result<VerifyReport> {
    let n = g.len();
    if mats.len() != n {
        return input_err("one matrix per vertex is required");
    }
    let lt = |u: usize, v: usize| g.less(u, v).unwrap_or(false);
    let minimal = |v: usize| (0..n).all(|u| !lt(u, v));
    let l = |v: usize| g.labels()[v].clone();
    let id = Matrix::<S>::identity(n);
    let first_fail = |it: &mut dyn Iterator<Item = Option<String>>| match it.flatten().next() {
        Some(w) => fail(w),
        None => pass(),
    };

    let involutions = first_fail(&mut (0..n).map(|v| (!mats[v].mul(&mats[v]).is_identity(tol)).then(|| format!("rho_{} squared is not 1", l(v)))));
    let form_preserved = first_fail(&mut (0..n).map(|v| {
        (!mats[v].transpose().mul(form).mul(&mats[v]).approx_eq(form, tol)).then(|| format!("rho_{} does not preserve B_t", l(v)))
    }));
    let pairs: Vec<(usize, usize)> = g.adjacent_pairs();
    let relation_b = first_fail(&mut pairs.iter().map(|&(u, v)| {
        let k = g.matrix().m(u, v).finite()?;
        if !(minimal(u) && minimal(v)) {
            return None;
        }
        let p = mats[u].mul(&mats[v]);
        let mut acc = id.clone();
        for _ in 0..k {
            acc = acc.mul(&p);
        }
        (!acc.is_identity(tol)).then(|| format!("(rho_{} rho_{})^{k} is not 1", l(u), l(v)))
    }));
    let relation_c = first_fail(&mut pairs.iter().map(|&(u, v)| {
        if !lt(u, v) {
            return None;
        }
        let u2 = g.j(v, u)?;
        let w = mats[u].mul(&mats[v]).mul(&mats[u2]).mul(&mats[v]);
        (!w.is_identity(tol)).then(|| format!("rho_{} rho_{} rho_{} rho_{} is not 1", l(u), l(v), l(u2), l(v)))
    }));
    let relation_d = first_fail(&mut pairs.iter().map(|&(u, v)| {
        if lt(u, v) || lt(v, u) || g.matrix().m(u, v) != Entry::Finite(2) {
            return None;
        }
        let p = mats[u].mul(&mats[v]);
        (!p.mul(&p).is_identity(tol)).then(|| format!("(rho_{} rho_{})^2 is not 1", l(u), l(v)))
    }));
    let moves_basis = first_fail(&mut pairs.iter().map(|&(u, v)| {
        if !lt(u, v) {
            return None;
        }
        let u2 = g.j(v, u)?;
        let ok = (0..n).all(|i| {
            let want = if i == u2 { S::one() } else { S::zero() };
            (mats[v].get(i, u).clone() - want).is_negligible(tol)
        });
        (!ok).then(|| format!("rho_{}(e_{}) is not e_{}", l(v), l(u), l(u2)))
    }));
    let mut distinct_fail = None;
    for v in 0..n {
        if mats[v].is_identity(tol) {
            distinct_fail = Some(format!("rho_{} is trivial", l(v)));
            break;
        }
        if let Some(u) = (0..v).find(|&u| mats[u].approx_eq(&mats[v], tol)) {
            distinct_fail = Some(format!("rho_{} = rho_{}", l(u), l(v)));
            break;
        }
    }
    if distinct_fail.is_none() {
        for &(u, v) in &pairs {
            if lt(u, v) {
                let u2 = g.j(v, u).unwrap();
                let a1 = mats[u].clone();
                let a2 = a1.mul(&mats[v]);
                let a3 = a2.mul(&mats[u2]);
                let seq = [id.clone(), a1, a2, a3];
                let clash = (0..4).any(|i| (i + 1..4).any(|k| seq[i].approx_eq(&seq[k], tol)));
                if clash {
                    distinct_fail = Some(format!("1, rho_u, rho_u rho_v, rho_u rho_v rho_u' repeat for {} < {}", l(u), l(v)));
                    break;
                }
            } else if !lt(v, u) {
                let k = g.matrix().m(u, v).finite().unwrap();
                if power_order(&mats[u].mul(&mats[v]), k, tol) != Some(k) {
                    distinct_fail = Some(format!("rho_{} rho_{} does not have order {k}", l(u), l(v)));
                    break;
                }
            }
        }
    }
    let distinctness = match distinct_fail {
        Some(w) => fail(w),
        None => pass(),
    };
    let positive_pairs = first_fail(&mut pairs.iter().map(|&(u, v)| {
        if !(minimal(u) && minimal(v)) {
            return None;
        }
        let det = form.get(u, u).clone() * form.get(v, v).clone() - form.get(u, v).clone() * form.get(v, u).clone();
        (!(form.get(u, u).is_positive(tol) && det.is_positive(tol)))
            .then(|| format!("B_t is not positive definite on e_{}, e_{}", l(u), l(v)))
    }));
    Ok(VerifyReport {
        involutions,
        form_preserved,
        relation_b,
        relation_c,
        relation_d,
        moves_basis,
        distinctness,
        positive_pairs,
        approximate,
    })
}

/// A full exact or floating run: parameter, form, matrices, verification.
#[derive(Debug, Clone)]
pub enum Representation {
    Exact { t: Rational, form: Matrix<Rational>, matrices: Vec<Matrix<Rational>>, report: VerifyReport },
    Float { t: f64, form: Matrix<f64>, matrices: Vec<Matrix<f64>>, report: VerifyReport },
}

impl Representation {
    pub fn report(&self) -> &VerifyReport {
        match self {
            Representation::Exact { report, .. } | Representation::Float { report, .. } => report,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Representation::Exact { .. })
    }

    /// `(form, matrices)` rendered as strings.
    pub fn render(&self) -> (Vec<Vec<String>>, Vec<Vec<Vec<String>>>) {
        match self {
            Representation::Exact { form, matrices, .. } => (form.render(), matrices.iter().map(|m| m.render()).collect()),
            Representation::Float { form, matrices, .. } => (form.render(), matrices.iter().map(|m| m.render()).collect()),
        }
    }
}

/// Builds and verifies the representation at parameter `t`, exactly when
/// the matrix allows it.
pub fn represent(g: &GluingSystem, t: &Rational, tol: f64) -> Result<Representation> {
    if exact_mode_available(g.matrix()) {
        let form = gram_matrix(g.matrix(), t)?;
        let matrices = build_representation(g, &form, tol)?;
        let report = verify_representation(&matrices, g, &form, tol, false)?;
        Ok(Representation::Exact { t: t.clone(), form, matrices, report })
    } else {
        let tf = t.to_f64().ok_or_else(|| Error::Input("t is out of range".into()))?;
        let form = gram_matrix(g.matrix(), &tf)?;
        let matrices = build_representation(g, &form, tol)?;
        let report = verify_representation(&matrices, g, &form, tol, true)?;
        Ok(Representation::Float { t: tf, form, matrices, report })
    }
}

/// Certifies Condition (4) through the representation: returns the chosen
/// `t` when (P), (C) hold and every check passes, `None` when (P) or (C)
/// fail or there is no order.
pub fn representation_certificate(g: &GluingSystem, t_scan_cap: i64) -> Result<Option<i64>> {
    if !g.has_order() || !g.bar_is_trivial() {
        return Ok(None);
    }
    let rep = check_order_conditions(g)?;
    if !rep.p_holds() || !rep.c_holds() {
        return Ok(None);
    }
    let t = select_parameter(g, t_scan_cap, DEFAULT_FLOAT_TOLERANCE)?;
    let r = represent(g, &Rational::from_int(t), DEFAULT_FLOAT_TOLERANCE)?;
    Ok(r.report().all_pass().then_some(t))
}

/// A vector in `R^{3,1}` with rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MinkowskiVector(pub [Rational; 4]);

impl MinkowskiVector {
    pub fn from_ints(x: [i64; 4]) -> MinkowskiVector {
        MinkowskiVector(x.map(Rational::from_int))
    }

    pub fn scale(&self, k: &Rational) -> MinkowskiVector {
        MinkowskiVector(self.0.clone().map(|x| x * k.clone()))
    }

    pub fn sub(&self, o: &MinkowskiVector) -> MinkowskiVector {
        let mut out = self.0.clone();
        for (a, b) in out.iter_mut().zip(&o.0) {
            *a = a.clone() - b.clone();
        }
        MinkowskiVector(out)
    }

    pub fn render(&self) -> Vec<String> {
        self.0.iter().map(|x| x.render()).collect()
    }
}

/// `x1 y1 + x2 y2 + x3 y3 - x4 y4`.
pub fn minkowski_form(x: &MinkowskiVector, y: &MinkowskiVector) -> Rational {
    let a = &x.0;
    let b = &y.0;
    a[0].clone() * b[0].clone() + a[1].clone() * b[1].clone() + a[2].clone() * b[2].clone() - a[3].clone() * b[3].clone()
}

/// `r_v(x) = x - 2 <x,v>/<v,v> v` for spacelike `v`.
pub fn minkowski_reflect(v: &MinkowskiVector, x: &MinkowskiVector) -> Result<MinkowskiVector> {
    let vv = minkowski_form(v, v);
    if !Signed::is_positive(&vv) {
        return input_err("reflection vector must be spacelike");
    }
    let k = Rational::from_int(2) * minkowski_form(x, v) / vv;
    Ok(x.sub(&v.scale(&k)))
}

/// Matrix of `r_v`, columns are images of the standard basis.
pub fn minkowski_matrix(v: &MinkowskiVector) -> Result<Matrix<Rational>> {
    let mut m = Matrix::zeros(4, 4);
    for j in 0..4 {
        let mut e = [0i64; 4];
        e[j] = 1;
        let img = minkowski_reflect(v, &MinkowskiVector::from_ints(e))?;
        for i in 0..4 {
            m.set(i, j, img.0[i].clone());
        }
    }
    Ok(m)
}

/// Largest denominator among the entries.
pub fn max_denominator(m: &Matrix<Rational>) -> BigInt {
    m.to_rows().iter().flatten().map(|x| x.denom().clone()).max().unwrap_or_else(BigInt::one)
}

/// The fixture vectors: the faces of the simplex, the pyramid, the double
/// pyramid and the ideal octahedron, and the half-integral reflection.
pub fn minkowski_fixtures() -> Vec<(&'static str, MinkowskiVector)> {
    let mut v = vec![
        ("u1", MinkowskiVector::from_ints([1, 1, 1, 1])),
        ("v1", MinkowskiVector::from_ints([1, 0, 0, 0])),
        ("v2", MinkowskiVector::from_ints([0, 1, 0, 0])),
        ("v3", MinkowskiVector::from_ints([0, 0, 1, 0])),
        ("w1", MinkowskiVector::from_ints([1, -1, 0, 0])),
        ("t1", MinkowskiVector::from_ints([0, 1, -1, 0])),
        ("v1'", MinkowskiVector::from_ints([0, -1, -1, -1])),
        ("v2'", MinkowskiVector::from_ints([-1, 0, -1, -1])),
        ("v3'", MinkowskiVector::from_ints([-1, -1, 0, -1])),
        ("w", MinkowskiVector::from_ints([0, 2, 1, 1])),
    ];
    let names = ["o+++", "o++-", "o+-+", "o+--", "o-++", "o-+-", "o--+", "o---"];
    for (k, name) in names.iter().enumerate() {
        let s = |bit: usize| if k >> (2 - bit) & 1 == 0 { 1 } else { -1 };
        v.push((name, MinkowskiVector::from_ints([s(0), s(1), s(2), 1])));
    }
    v
}
