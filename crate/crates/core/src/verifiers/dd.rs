//! Double-double reals (about 106 bits) and complex numbers over them.

use core::cmp::Ordering;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, ToPrimitive};

/// hi + lo with |lo| ≤ ulp(hi)/2.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

fn split(a: f64) -> (f64, f64) {
    const SPLITTER: f64 = 134_217_729.0; // 2^27 + 1
    let t = SPLITTER * a;
    let hi = t - (t - a);
    (hi, a - hi)
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let (ah, al) = split(a);
    let (bh, bl) = split(b);
    (p, ((ah * bh - p) + ah * bl + al * bh) + al * bl)
}

pub const LN2: Dd = Dd { hi: 0.693_147_180_559_945_3, lo: 2.319_046_813_846_299_6e-17 };
pub const PI: Dd = Dd { hi: 3.141_592_653_589_793, lo: 1.224_646_799_147_353_2e-16 };

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    pub fn new(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn from_bigint(n: &BigInt) -> Dd {
        let hi = n.to_f64().unwrap_or(f64::INFINITY);
        if !hi.is_finite() {
            return Dd::new(hi);
        }
        let rest = n - BigInt::from_f64_exact(hi);
        Dd::new(hi) + Dd::new(rest.to_f64().unwrap_or(0.0))
    }

    pub fn from_rational(r: &BigRational) -> Dd {
        Dd::from_bigint(r.numer()) / Dd::from_bigint(r.denom())
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Dd {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    /// Multiplication by 2^e, exact.
    pub fn ldexp(self, e: i32) -> Dd {
        let s = Float::powi(2.0f64, e);
        Dd { hi: self.hi * s, lo: self.lo * s }
    }

    pub fn powu(self, mut e: u64) -> Dd {
        let mut base = self;
        let mut acc = Dd::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn sqrt(self) -> Dd {
        if self.hi <= 0.0 {
            return Dd::ZERO;
        }
        let y = Dd::new(Float::sqrt(self.hi));
        y + (self - y * y) / (y + y)
    }

    pub fn exp(self) -> Dd {
        if self.hi > 709.0 {
            return Dd::new(f64::INFINITY);
        }
        if self.hi < -745.0 {
            return Dd::ZERO;
        }
        // x = m·ln2 + r, then exp(r) = (exp(r/16))^16
        let m = Float::round(self.hi / LN2.hi);
        let r = (self - LN2 * Dd::new(m)).ldexp(-4);
        let mut term = Dd::ONE;
        let mut sum = Dd::ONE;
        for i in 1..=30 {
            term = term * r / Dd::new(i as f64);
            sum = sum + term;
            if Float::abs(term.hi) < 1e-36 {
                break;
            }
        }
        for _ in 0..4 {
            sum = sum * sum;
        }
        sum.ldexp(m as i32)
    }

    /// Newton on y ↦ y + x·e^{−y} − 1 from the f64 logarithm.
    pub fn ln(self) -> Dd {
        assert!(self.hi > 0.0, "logarithm of a non-positive number");
        let mut y = Dd::new(Float::ln(self.hi));
        for _ in 0..2 {
            y = y + self * (-y).exp() - Dd::ONE;
        }
        y
    }

    /// sin and cos by reduction modulo π/2 and Taylor series.
    pub fn sin_cos(self) -> (Dd, Dd) {
        let half_pi = PI.ldexp(-1);
        let q = Float::round(self.hi / half_pi.hi);
        let r = self - half_pi * Dd::new(q);
        let r2 = r * r;
        let (mut s, mut c) = (r, Dd::ONE);
        let (mut ts, mut tc) = (r, Dd::ONE);
        for i in 1..=25 {
            ts = -(ts * r2) / Dd::new(((2 * i) * (2 * i + 1)) as f64);
            tc = -(tc * r2) / Dd::new(((2 * i - 1) * (2 * i)) as f64);
            s = s + ts;
            c = c + tc;
            if Float::abs(ts.hi) < 1e-36 && Float::abs(tc.hi) < 1e-36 {
                break;
            }
        }
        match (q as i64).rem_euclid(4) {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }
}

trait FromF64Exact {
    fn from_f64_exact(x: f64) -> Self;
}

impl FromF64Exact for BigInt {
    fn from_f64_exact(x: f64) -> BigInt {
        num_traits::FromPrimitive::from_f64(x).unwrap_or_default()
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, o: Dd) -> Dd {
        self + (-o)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self - o * Dd::new(q1);
        let q2 = r.hi / o.hi;
        let r = r - o * Dd::new(q2);
        let q3 = r.hi / o.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::new(q3)
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, o: &Dd) -> Option<Ordering> {
        match self.hi.partial_cmp(&o.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&o.lo),
            ord => ord,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cdd {
    pub re: Dd,
    pub im: Dd,
}

impl Cdd {
    pub fn real(x: Dd) -> Cdd {
        Cdd { re: x, im: Dd::ZERO }
    }

    pub fn add(self, o: Cdd) -> Cdd {
        Cdd { re: self.re + o.re, im: self.im + o.im }
    }

    pub fn mul(self, o: Cdd) -> Cdd {
        Cdd { re: self.re * o.re - self.im * o.im, im: self.re * o.im + self.im * o.re }
    }

    pub fn norm_sqr(self) -> Dd {
        self.re * self.re + self.im * self.im
    }

    pub fn abs(self) -> Dd {
        self.norm_sqr().sqrt()
    }

    /// e^{2πi·num/den}.
    pub fn root_of_unity(num: u64, den: u64) -> Cdd {
        let angle = PI.ldexp(1) * Dd::new((num % den) as f64) / Dd::new(den as f64);
        let (s, c) = angle.sin_cos();
        Cdd { re: c, im: s }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Dd, b: Dd, tol: f64) -> bool {
        Float::abs((a - b).to_f64()) < tol
    }

    #[test]
    fn exact_arithmetic_round_trip() {
        let third = Dd::ONE / Dd::new(3.0);
        assert!(close(third * Dd::new(3.0), Dd::ONE, 1e-31));
        let x = Dd::new(0.1) + Dd::new(1e-20);
        assert!(close(x - Dd::new(0.1), Dd::new(1e-20), 1e-34));
    }

    #[test]
    fn exp_ln_inverse() {
        for &x in &[0.001, 0.5, 1.0, 2.0, 10.0, 123.456] {
            let d = Dd::new(x);
            let e1 = (d.ln().exp() - d).to_f64();
            let e2 = (d.exp().ln() - d).to_f64();
            assert!(Float::abs(e1) < 1e-29 * x && Float::abs(e2) < 1e-29 * x.max(1.0), "x={x} {e1:e} {e2:e}");
        }
        // ln 2 to double-double accuracy
        assert!(close(Dd::new(2.0).ln(), LN2, 1e-31));
    }

    #[test]
    fn trig_identities() {
        for &x in &[0.1, 1.0, 2.5, -3.0, 7.0] {
            let (s, c) = Dd::new(x).sin_cos();
            assert!(close(s * s + c * c, Dd::ONE, 1e-30));
            assert!(Float::abs(s.to_f64() - Float::sin(x)) < 1e-15);
        }
        let i = Cdd::root_of_unity(1, 4);
        assert!(Float::abs(i.re.to_f64()) < 1e-30 && close(i.im, Dd::ONE, 1e-30));
    }

    #[test]
    fn sqrt_and_rational() {
        let two = Dd::new(2.0);
        assert!(close(two.sqrt() * two.sqrt(), two, 1e-30));
        let r = BigRational::new(BigInt::from(1), BigInt::from(7));
        assert!(close(Dd::from_rational(&r) * Dd::new(7.0), Dd::ONE, 1e-31));
    }
}
