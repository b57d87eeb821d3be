//! Dense univariate polynomials over an exact field.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::field::Field;

/// Polynomial with coefficients from degree 0 upward; trailing zeros are
/// always trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> Poly<F> {
    pub fn new(field: F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn from_i64s(field: F, coeffs: &[i64]) -> Self {
        let c = coeffs.iter().map(|&v| field.from_i64(v)).collect();
        Poly::new(field, c)
    }

    pub fn zero(field: F) -> Self {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn one(field: F) -> Self {
        let one = field.one();
        Poly::new(field, vec![one])
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        Poly::new(field, vec![c])
    }

    /// c·x^e
    pub fn monomial(field: F, c: F::Elem, e: usize) -> Self {
        let mut v = vec![field.zero(); e + 1];
        v[e] = c;
        Poly::new(field, v)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F::Elem> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn degree_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    /// Order of vanishing at x = 0.
    pub fn ord(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !self.field.is_zero(c))
    }

    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn leading(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    pub fn lowest(&self) -> Option<&F::Elem> {
        self.ord().map(|i| &self.coeffs[i])
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|i| f.add(&self.coeff(i), &other.coeff(i))).collect();
        Poly::new(f.clone(), c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|i| f.sub(&self.coeff(i), &other.coeff(i))).collect();
        Poly::new(f.clone(), c)
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        Poly::new(f.clone(), self.coeffs.iter().map(|c| f.neg(c)).collect())
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        let f = &self.field;
        Poly::new(f.clone(), self.coeffs.iter().map(|c| f.mul(c, s)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Poly::zero(f.clone());
        }
        let n = self.coeffs.len() + other.coeffs.len() - 1;
        Poly::new(f.clone(), f.convolve(&self.coeffs, &other.coeffs, n))
    }

    pub fn pow(&self, n: usize) -> Self {
        (0..n).fold(Poly::one(self.field.clone()), |acc, _| acc.mul(self))
    }

    /// Multiplication by x^a.
    pub fn shift_up(&self, a: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![self.field.zero(); a];
        c.extend(self.coeffs.iter().cloned());
        Poly { field: self.field.clone(), coeffs: c }
    }

    /// Division by x^a, or `None` when x^a does not divide.
    pub fn shift_down(&self, a: usize) -> Option<Self> {
        if self.coeffs.iter().take(a).any(|c| !self.field.is_zero(c)) {
            return None;
        }
        let c = self.coeffs.iter().skip(a).cloned().collect();
        Some(Poly { field: self.field.clone(), coeffs: c })
    }

    /// P(x^e).
    pub fn substitute_power(&self, e: usize) -> Self {
        assert!(e >= 1, "exponent must be positive");
        let f = &self.field;
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![f.zero(); (self.coeffs.len() - 1) * e + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            c[i * e] = a.clone();
        }
        Poly { field: f.clone(), coeffs: c }
    }

    /// Λ_b: Σ p(ki+b) xⁱ.
    pub fn cartier(&self, k: usize, b: usize) -> Self {
        assert!(b < k, "digit out of range");
        let c = self.coeffs.iter().skip(b).step_by(k).cloned().collect();
        Poly::new(self.field.clone(), c)
    }

    /// Quotient and remainder of Euclidean division.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let f = &self.field;
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = f.inv(d.leading().expect("nonzero")).expect("field");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::zero(f.clone()), self.clone());
        }
        let mut q = vec![f.zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = f.mul(&r[i + dd], &lead_inv);
            if f.is_zero(&c) {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                if !f.is_zero(dj) {
                    r[i + j] = f.sub(&r[i + j], &f.mul(&c, dj));
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        (Poly::new(f.clone(), q), Poly::new(f.clone(), r))
    }

    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(&self.field.inv(l).expect("nonzero")),
        }
    }

    /// Monic greatest common divisor; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Self) -> Self {
        if !self.is_zero() && !other.is_zero() {
            if let Some(g) = self.field.poly_gcd(&self.coeffs, &other.coeffs) {
                return Poly::new(self.field.clone(), g);
            }
        }
        let (mut a, mut b) = (self.monic(), other.monic());
        while !b.is_zero() {
            let r = a.div_rem(&b).1.monic();
            a = core::mem::replace(&mut b, r);
        }
        a
    }

    /// Rescale so the lowest nonzero coefficient is 1.
    pub fn normalize_lowest(&self) -> Self {
        match self.lowest() {
            None => self.clone(),
            Some(l) => self.scale(&self.field.inv(l).expect("nonzero")),
        }
    }

    /// Space-separated coefficients from degree 0; `0` for the zero polynomial.
    pub fn to_inline(&self) -> String {
        if self.is_zero() {
            return String::from("0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|c| self.field.format_elem(c)).collect();
        parts.join(" ")
    }

    pub fn parse_inline(field: F, s: &str) -> crate::error::Result<Self> {
        let c = s
            .split_whitespace()
            .map(|t| field.parse_elem(t))
            .collect::<crate::error::Result<Vec<_>>>()?;
        Ok(Poly::new(field, c))
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let f = &self.field;
        if self.is_zero() {
            return write!(out, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            let s = f.format_elem(c);
            let (neg, mag) = match s.strip_prefix('-') {
                Some(m) => (true, String::from(m)),
                None => (false, s),
            };
            if first {
                if neg {
                    write!(out, "-")?;
                }
            } else {
                write!(out, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag == "1";
            match i {
                0 => write!(out, "{mag}")?,
                _ => {
                    if !unit {
                        write!(out, "{mag}*")?;
                    }
                    if i == 1 {
                        write!(out, "x")?;
                    } else {
                        write!(out, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
