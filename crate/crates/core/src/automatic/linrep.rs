use alloc::vec;
use alloc::vec::Vec;

use super::dfao::digits_msd;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;
use crate::series::Series;

pub type Matrix<E> = Vec<Vec<E>>;

/// f(n) = λ·M_{d₁}···M_{d_s}·γ for n = (d₁…d_s)_k, most significant first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearRepresentation<F: Field> {
    field: F,
    base: usize,
    row: Vec<F::Elem>,
    matrices: Vec<Matrix<F::Elem>>,
    column: Vec<F::Elem>,
}

impl<F: Field> LinearRepresentation<F> {
    pub fn new(
        field: F,
        base: usize,
        row: Vec<F::Elem>,
        matrices: Vec<Matrix<F::Elem>>,
        column: Vec<F::Elem>,
    ) -> Result<Self> {
        let r = row.len();
        if base < 2 || r == 0 || column.len() != r || matrices.len() != base {
            return Err(Error::InvalidInput("representation shape mismatch".into()));
        }
        if matrices.iter().any(|m| m.len() != r || m.iter().any(|row| row.len() != r)) {
            return Err(Error::InvalidInput("digit matrix is not r×r".into()));
        }
        Ok(LinearRepresentation { field, base, row, matrices, column })
    }

    pub fn zero(field: F, base: usize) -> Self {
        let z = field.zero();
        LinearRepresentation {
            row: vec![z.clone()],
            matrices: vec![vec![vec![z.clone()]]; base],
            column: vec![z],
            field,
            base,
        }
    }

    pub fn constant(field: F, base: usize, c: F::Elem) -> Self {
        let one = field.one();
        LinearRepresentation {
            row: vec![one.clone()],
            matrices: vec![vec![vec![one.clone()]]; base],
            column: vec![c],
            field,
            base,
        }
    }

    /// Representation of a polynomial's coefficient sequence on the
    /// monomial basis, with M_b the matrix of Λ_b.
    pub fn from_polynomial(p: &Poly<F>, base: usize) -> Self {
        let f = p.field().clone();
        let r = p.degree_or_zero() + 1;
        let mut matrices = vec![vec![vec![f.zero(); r]; r]; base];
        for (b, m) in matrices.iter_mut().enumerate() {
            for (i, row) in m.iter_mut().enumerate() {
                let j = base * i + b;
                if j < r {
                    row[j] = f.one();
                }
            }
        }
        let mut row = vec![f.zero(); r];
        row[0] = f.one();
        let column = (0..r).map(|i| p.coeff(i)).collect();
        LinearRepresentation { field: f, base, row, matrices, column }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn dim(&self) -> usize {
        self.row.len()
    }

    pub fn row(&self) -> &[F::Elem] {
        &self.row
    }

    pub fn column(&self) -> &[F::Elem] {
        &self.column
    }

    pub fn matrices(&self) -> &[Matrix<F::Elem>] {
        &self.matrices
    }

    pub fn row_times(&self, v: &[F::Elem], b: usize) -> Vec<F::Elem> {
        row_times(&self.field, v, &self.matrices[b])
    }

    pub fn output(&self, v: &[F::Elem]) -> F::Elem {
        dot(&self.field, v, &self.column)
    }

    pub fn eval(&self, n: u64) -> F::Elem {
        let v = digits_msd(n, self.base)
            .into_iter()
            .fold(self.row.clone(), |v, d| self.row_times(&v, d));
        self.output(&v)
    }

    pub fn terms(&self, count: usize) -> Series<F> {
        Series::new(self.field.clone(), (0..count as u64).map(|n| self.eval(n)).collect())
    }

    /// λ·M₀ = λ, so leading zeros do not matter.
    pub fn is_zero_stable(&self) -> bool {
        self.row_times(&self.row, 0) == self.row
    }

    /// Equivalent representation with λ·M₀ = λ, one dimension larger
    /// unless already zero-stable.
    pub fn zero_stable(&self) -> Self {
        if self.is_zero_stable() {
            return self.clone();
        }
        let f = &self.field;
        let r = self.dim();
        let lm0 = self.row_times(&self.row, 0);
        let matrices = (0..self.base)
            .map(|b| {
                let mut m: Matrix<F::Elem> = self.matrices[b]
                    .iter()
                    .map(|row| {
                        let mut row = row.clone();
                        row.push(f.zero());
                        row
                    })
                    .collect();
                let last = if b == 0 {
                    let mut x: Vec<F::Elem> = self.row.iter().zip(&lm0).map(|(a, c)| f.sub(a, c)).collect();
                    x.push(f.one());
                    x
                } else {
                    vec![f.zero(); r + 1]
                };
                m.push(last);
                m
            })
            .collect();
        let mut row = self.row.clone();
        row.push(f.one());
        let mut column = self.column.clone();
        column.push(f.zero());
        LinearRepresentation { field: f.clone(), base: self.base, row, matrices, column }
    }

    /// Reachable-then-observable reduction to the minimal dimension.
    pub fn minimize(&self) -> Self {
        let f = &self.field;
        // column space spanned by M_u·γ
        let mut span = Span::new(f.clone());
        if !span.insert(&self.column) {
            return LinearRepresentation::zero(f.clone(), self.base);
        }
        let mut i = 0;
        while i < span.len() {
            let u = span.basis[i].clone();
            for m in &self.matrices {
                span.insert(&col_times(f, m, &u));
            }
            i += 1;
        }
        let v = span.basis.clone();
        let s = v.len();
        let mut mats = vec![vec![vec![f.zero(); s]; s]; self.base];
        for (b, m) in self.matrices.iter().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                let c = span.coords(&col_times(f, m, vj)).expect("invariant subspace");
                for (ii, ci) in c.into_iter().enumerate() {
                    mats[b][ii][j] = ci;
                }
            }
        }
        let row1: Vec<F::Elem> = v.iter().map(|vj| dot(f, &self.row, vj)).collect();
        let mut col1 = vec![f.zero(); s];
        col1[0] = f.one();
        // row space spanned by λ'·M'_w
        let mut span = Span::new(f.clone());
        if !span.insert(&row1) {
            return LinearRepresentation::zero(f.clone(), self.base);
        }
        let mut i = 0;
        while i < span.len() {
            let w = span.basis[i].clone();
            for m in &mats {
                span.insert(&row_times(f, &w, m));
            }
            i += 1;
        }
        let w = span.basis.clone();
        let t = w.len();
        let mut mats2 = vec![Vec::with_capacity(t); self.base];
        for (b, m) in mats.iter().enumerate() {
            for wi in &w {
                mats2[b].push(span.coords(&row_times(f, wi, m)).expect("invariant subspace"));
            }
        }
        let mut row2 = vec![f.zero(); t];
        row2[0] = f.one();
        let col2 = w.iter().map(|wi| dot(f, wi, &col1)).collect();
        LinearRepresentation { field: f.clone(), base: self.base, row: row2, matrices: mats2, column: col2 }
    }
}

pub(crate) fn dot<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    a.iter().zip(b).fold(f.zero(), |acc, (x, y)| {
        if f.is_zero(x) || f.is_zero(y) {
            acc
        } else {
            f.add(&acc, &f.mul(x, y))
        }
    })
}

pub(crate) fn row_times<F: Field>(f: &F, v: &[F::Elem], m: &Matrix<F::Elem>) -> Vec<F::Elem> {
    let r = m.first().map_or(0, |row| row.len());
    let mut out = vec![f.zero(); r];
    for (vi, row) in v.iter().zip(m) {
        if f.is_zero(vi) {
            continue;
        }
        for (o, x) in out.iter_mut().zip(row) {
            if !f.is_zero(x) {
                *o = f.add(o, &f.mul(vi, x));
            }
        }
    }
    out
}

pub(crate) fn col_times<F: Field>(f: &F, m: &Matrix<F::Elem>, v: &[F::Elem]) -> Vec<F::Elem> {
    m.iter().map(|row| dot(f, row, v)).collect()
}

/// Incrementally built basis that can express members in its coordinates.
struct Span<F: Field> {
    field: F,
    basis: Vec<Vec<F::Elem>>,
    // (pivot, reduced vector with 1 at pivot, that vector in basis coordinates)
    echelon: Vec<(usize, Vec<F::Elem>, Vec<F::Elem>)>,
}

impl<F: Field> Span<F> {
    fn new(field: F) -> Self {
        Span { field, basis: Vec::new(), echelon: Vec::new() }
    }

    fn len(&self) -> usize {
        self.basis.len()
    }

    /// Reduces v; returns the remainder and the coordinates of v − remainder.
    fn reduce(&self, v: &[F::Elem]) -> (Vec<F::Elem>, Vec<F::Elem>) {
        let f = &self.field;
        let mut w = v.to_vec();
        let mut c = vec![f.zero(); self.basis.len()];
        for (p, e, t) in &self.echelon {
            let factor = w[*p].clone();
            if f.is_zero(&factor) {
                continue;
            }
            for (wi, ei) in w.iter_mut().zip(e) {
                if !f.is_zero(ei) {
                    *wi = f.sub(wi, &f.mul(&factor, ei));
                }
            }
            for (ci, ti) in c.iter_mut().zip(t) {
                if !f.is_zero(ti) {
                    *ci = f.add(ci, &f.mul(&factor, ti));
                }
            }
        }
        (w, c)
    }

    fn coords(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let (w, c) = self.reduce(v);
        w.iter().all(|x| self.field.is_zero(x)).then_some(c)
    }

    fn insert(&mut self, v: &[F::Elem]) -> bool {
        let f = self.field.clone();
        let (w, c) = self.reduce(v);
        let Some(p) = w.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&w[p]).expect("nonzero");
        let e: Vec<F::Elem> = w.iter().map(|x| f.mul(x, &inv)).collect();
        let mut t: Vec<F::Elem> = c.iter().map(|x| f.neg(&f.mul(x, &inv))).collect();
        t.push(inv);
        for (_, _, old) in self.echelon.iter_mut() {
            old.push(f.zero());
        }
        self.basis.push(v.to_vec());
        self.echelon.push((p, e, t));
        true
    }
}

fn kron<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let (ra, rb) = (a.len(), b.len());
    let mut out = vec![vec![f.zero(); ra * rb]; ra * rb];
    for i1 in 0..ra {
        for j1 in 0..ra {
            if f.is_zero(&a[i1][j1]) {
                continue;
            }
            for i2 in 0..rb {
                for j2 in 0..rb {
                    out[i1 * rb + i2][j1 * rb + j2] = f.mul(&a[i1][j1], &b[i2][j2]);
                }
            }
        }
    }
    out
}

fn kron_vec<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().flat_map(|x| b.iter().map(move |y| f.mul(x, y))).collect()
}

fn mat_add<F: Field>(f: &F, a: &mut Matrix<F::Elem>, b: &Matrix<F::Elem>) {
    for (ra, rb) in a.iter_mut().zip(b) {
        for (x, y) in ra.iter_mut().zip(rb) {
            *x = f.add(x, y);
        }
    }
}

/// Representation of the Cauchy product h(n) = Σ_{j≤n} f(j)·g(n−j).
///
/// Both factors are first made zero-stable, so that M_b acts as the Cartier
/// operator Λ_b on coordinates. Elements U + x·X of the product space then
/// satisfy Λ_e(u·v) = Σ_{b+c=e} Λ_b u·Λ_c v + x·Σ_{b+c=e+k} Λ_b u·Λ_c v.
pub fn representation_product<F: Field>(
    r1: &LinearRepresentation<F>,
    r2: &LinearRepresentation<F>,
) -> Result<LinearRepresentation<F>> {
    if r1.base != r2.base {
        return Err(Error::BaseMismatch);
    }
    if r1.field != r2.field {
        return Err(Error::FieldMismatch);
    }
    let f = &r1.field;
    let k = r1.base;
    let a = r1.zero_stable();
    let b = r2.zero_stable();
    let n = a.dim() * b.dim();
    let zero_block = || vec![vec![f.zero(); n]; n];
    // S_e = Σ_{b+c=e} A_b⊗B_c, T_e = Σ_{b+c=e+k} A_b⊗B_c
    let mut s = vec![zero_block(); k];
    let mut t = vec![zero_block(); k];
    for i in 0..k {
        for j in 0..k {
            let prod = kron(f, &a.matrices[i], &b.matrices[j]);
            if i + j < k {
                mat_add(f, &mut s[i + j], &prod);
            } else {
                mat_add(f, &mut t[i + j - k], &prod);
            }
        }
    }
    let mut matrices = Vec::with_capacity(k);
    for e in 0..k {
        // column form: (U', X') = [[S_e, P],[T_e, R]]·(U, X)
        let (p, r) = if e == 0 { (zero_block(), s[k - 1].clone()) } else { (s[e - 1].clone(), t[e - 1].clone()) };
        let mut m = vec![vec![f.zero(); 2 * n]; 2 * n];
        for i in 0..n {
            for j in 0..n {
                m[i][j] = s[e][i][j].clone();
                m[i][n + j] = p[i][j].clone();
                m[n + i][j] = t[e][i][j].clone();
                m[n + i][n + j] = r[i][j].clone();
            }
        }
        matrices.push(m);
    }
    let mut row = kron_vec(f, &a.row, &b.row);
    row.resize(2 * n, f.zero());
    let mut column = kron_vec(f, &a.column, &b.column);
    column.resize(2 * n, f.zero());
    LinearRepresentation::new(f.clone(), k, row, matrices, column)
}
