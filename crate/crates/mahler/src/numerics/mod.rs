//! Configurable-precision complex arithmetic, polynomial root finding, and
//! polylogarithms on the closed unit disk.
//!
//! Precision is an explicit parameter everywhere, never ambient state; a
//! value's precision travels with it (MPFR semantics). All functions here are
//! pure and safe to call in parallel.

use rug::float::Constant;
use rug::ops::CompleteRound;
use rug::{Complete, Float, Integer, Rational};

pub mod polylog;
pub mod roots;
pub mod zeta;

pub use polylog::polylog_unit;
pub use roots::{polyroots, polyroots_numeric, RootSet};
pub use zeta::zeta_int;

/// Complex number in configurable-precision binary floating point. Both
/// components carry the same precision; it is part of the value's contract.
#[derive(Clone, PartialEq, Debug)]
pub struct BigComplex {
    pub re: Float,
    pub im: Float,
}

fn p2(a: &BigComplex, b: &BigComplex) -> u32 {
    a.prec().max(b.prec())
}

impl BigComplex {
    pub fn new(re: Float, im: Float) -> Self {
        BigComplex { re, im }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn zero(prec: u32) -> Self {
        BigComplex::new(Float::new(prec), Float::new(prec))
    }

    pub fn one(prec: u32) -> Self {
        BigComplex::from_f64(1.0, 0.0, prec)
    }

    pub fn i(prec: u32) -> Self {
        BigComplex::from_f64(0.0, 1.0, prec)
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        BigComplex::new(Float::with_val(prec, re), Float::with_val(prec, im))
    }

    pub fn from_integer(n: &Integer, prec: u32) -> Self {
        BigComplex::new(Float::with_val(prec, n), Float::new(prec))
    }

    pub fn from_rationals(re: &Rational, im: &Rational, prec: u32) -> Self {
        BigComplex::new(Float::with_val(prec, re), Float::with_val(prec, im))
    }

    pub fn real(re: Float) -> Self {
        let prec = re.prec();
        BigComplex::new(re, Float::new(prec))
    }

    /// `exp(i*theta)` on the unit circle.
    pub fn unit(theta: &Float) -> Self {
        let prec = theta.prec();
        let (s, c) = theta.clone().sin_cos(Float::new(prec));
        BigComplex::new(c, s)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        let p = p2(self, o);
        BigComplex::new((&self.re + &o.re).complete(p), (&self.im + &o.im).complete(p))
    }

    pub fn sub(&self, o: &Self) -> Self {
        let p = p2(self, o);
        BigComplex::new((&self.re - &o.re).complete(p), (&self.im - &o.im).complete(p))
    }

    pub fn neg(&self) -> Self {
        let p = self.prec();
        BigComplex::new((-&self.re).complete(p), (-&self.im).complete(p))
    }

    pub fn conj(&self) -> Self {
        let p = self.prec();
        BigComplex::new(self.re.clone(), (-&self.im).complete(p))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = p2(self, o);
        let re = Float::with_val(p, &self.re * &o.re) - Float::with_val(p, &self.im * &o.im);
        let im = Float::with_val(p, &self.re * &o.im) + Float::with_val(p, &self.im * &o.re);
        BigComplex::new(re, im)
    }

    pub fn scale(&self, s: &Float) -> Self {
        let p = self.prec().max(s.prec());
        BigComplex::new(
            (&self.re * s).complete(p),
            (&self.im * s).complete(p),
        )
    }

    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.re.square_ref()) + Float::with_val(p, self.im.square_ref())
    }

    pub fn abs(&self) -> Float {
        self.re.clone().hypot(&self.im)
    }

    /// Principal argument in (-pi, pi].
    pub fn arg(&self) -> Float {
        self.im.clone().atan2(&self.re)
    }

    pub fn recip(&self) -> Self {
        let n = self.norm_sqr();
        let p = self.prec();
        BigComplex::new(
            Float::with_val(p, &self.re / &n),
            -Float::with_val(p, &self.im / &n),
        )
    }

    pub fn div(&self, o: &Self) -> Self {
        self.mul(&o.recip())
    }

    /// Principal branch logarithm: `(ln|z|, arg z)`.
    pub fn ln(&self) -> Self {
        BigComplex::new(self.abs().ln(), self.arg())
    }

    pub fn exp(&self) -> Self {
        let r = self.re.clone().exp();
        BigComplex::unit(&self.im).scale(&r)
    }

    pub fn powu(&self, e: u32) -> Self {
        let mut acc = BigComplex::one(self.prec());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn powi(&self, e: i64) -> Self {
        if e >= 0 {
            self.powu(e as u32)
        } else {
            self.powu((-e) as u32).recip()
        }
    }

    /// Multiplication by `i`.
    pub fn mul_i(&self) -> Self {
        let p = self.prec();
        BigComplex::new((-&self.im).complete(p), self.re.clone())
    }

    pub fn to_f64s(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

/// `pi` at the requested precision.
pub fn fpi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

/// `2*pi` at the requested precision.
pub fn f2pi(prec: u32) -> Float {
    fpi(prec) * 2u32
}

/// Exact power of two `2^e` as a float.
pub fn pow2(e: i32, prec: u32) -> Float {
    Float::with_val(prec, Float::i_exp(1, e))
}

/// Converts an exact rational to a float at the requested precision.
pub fn float_from_rational(q: &Rational, prec: u32) -> Float {
    Float::with_val(prec, q)
}

/// `n!` as a float.
pub fn float_factorial(n: u32, prec: u32) -> Float {
    Float::with_val(prec, &Integer::factorial(n).complete())
}

/// Reduces an angle into `[0, 2*pi)`.
pub fn reduce_angle(theta: &Float) -> Float {
    let prec = theta.prec();
    let tau = f2pi(prec);
    let mut t = theta.clone();
    let q = Float::with_val(prec, &t / &tau).floor();
    t -= q * &tau;
    while t >= tau {
        t -= &tau;
    }
    while t.is_sign_negative() {
        t += &tau;
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_basics() {
        let p = 128;
        let a = BigComplex::from_f64(1.5, -2.0, p);
        let b = BigComplex::from_f64(-0.5, 3.0, p);
        let prod = a.mul(&b);
        assert!((prod.re.to_f64() - (1.5 * -0.5 - -2.0 * 3.0)).abs() < 1e-14);
        assert!((prod.im.to_f64() - (1.5 * 3.0 + -2.0 * -0.5)).abs() < 1e-14);
        let q = a.div(&b);
        let back = q.mul(&b);
        assert!(back.sub(&a).abs().to_f64() < 1e-30);
    }

    #[test]
    fn unit_circle_and_log() {
        let p = 192;
        let theta = Float::with_val(p, 0.7);
        let z = BigComplex::unit(&theta);
        assert!((z.abs().to_f64() - 1.0).abs() < 1e-30);
        let l = z.ln();
        assert!(l.re.to_f64().abs() < 1e-30);
        assert!((l.im.to_f64() - 0.7).abs() < 1e-15);
    }

    #[test]
    fn angle_reduction() {
        let p = 128;
        let t = Float::with_val(p, -1.0);
        let r = reduce_angle(&t);
        assert!((r.to_f64() - (2.0 * std::f64::consts::PI - 1.0)).abs() < 1e-12);
        let big = Float::with_val(p, 1000.0);
        let r = reduce_angle(&big);
        assert!(r.to_f64() >= 0.0 && r.to_f64() < 2.0 * std::f64::consts::PI);
    }

    #[test]
    fn powers() {
        let p = 128;
        let z = BigComplex::from_f64(0.3, 0.4, p);
        let z5 = z.powu(5);
        let mut acc = BigComplex::one(p);
        for _ in 0..5 {
            acc = acc.mul(&z);
        }
        assert!(z5.sub(&acc).abs().to_f64() < 1e-35);
        let zm2 = z.powi(-2);
        assert!(zm2.mul(&z.powu(2)).sub(&BigComplex::one(p)).abs().to_f64() < 1e-30);
    }
}
