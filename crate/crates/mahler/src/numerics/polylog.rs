//! Polylogarithms `Li_k(z)` for integer `k >= 2` on the closed unit disk.
//!
//! For `|z| <= 3/4` the defining series converges geometrically. Near the
//! unit circle — where every evaluation in this crate lives — we use the
//! expansion of `Li_k(e^mu)` in powers of `mu = Log z`:
//!
//! ```text
//! Li_k(e^mu) = mu^{k-1}/(k-1)! * (H_{k-1} - Log(-mu))
//!            + sum_{n>=0, n!=k-1} zeta(k-n) mu^n / n!,      |mu| < 2*pi
//! ```
//!
//! with `H_{k-1}` the harmonic number. On `|z| <= 1` we have `|mu| <= pi + e`,
//! so the tail decays at least like `2^-n`.

use rug::ops::Pow;
use rug::{Float, Rational};

use super::zeta::zeta_int;
use super::{pow2, BigComplex};
use crate::error::{Error, Result};

/// `Li_k(z)` for `k >= 2`, `|z| <= 1` (up to a small tolerance), to within
/// `2^-(prec-8)` relative error.
pub fn polylog_unit(k: u32, z: &BigComplex, prec: u32) -> Result<BigComplex> {
    if k < 2 {
        return Err(Error::InvalidArg(format!(
            "polylog_unit requires k >= 2, got {k}"
        )));
    }
    let wp = prec + 48;
    let az = z.abs();
    let tol = pow2(-(prec as i32) / 2, wp);
    if az > Float::with_val(wp, 1) + tol {
        return Err(Error::InvalidArg(format!(
            "polylog argument lies outside the closed unit disk: |z| = {}",
            az.to_f64()
        )));
    }
    if z.is_zero() {
        return Ok(BigComplex::zero(prec));
    }
    let z = BigComplex::new(Float::with_val(wp, &z.re), Float::with_val(wp, &z.im));

    // exactly 1: the singular term vanishes in the limit
    if z.re == 1 && z.im.is_zero() {
        let mut v = BigComplex::real(zeta_int(k as i64, wp));
        v.re.set_prec(prec);
        v.im.set_prec(prec);
        return Ok(v);
    }

    let mut out = if az.to_f64() <= 0.75 {
        direct_series(k, &z, wp)
    } else {
        log_expansion(k, &z, wp)
    };
    out.re.set_prec(prec);
    out.im.set_prec(prec);
    Ok(out)
}

fn direct_series(k: u32, z: &BigComplex, wp: u32) -> BigComplex {
    let eps = pow2(-(wp as i32), wp);
    let az = z.abs();
    let geom = (Float::with_val(wp, 1) - &az).recip();
    let mut acc = BigComplex::zero(wp);
    let mut zpow = BigComplex::one(wp);
    let mut n = 1u64;
    loop {
        zpow = zpow.mul(z);
        let nk = Float::with_val(wp, n).pow(k);
        acc = acc.add(&zpow.scale(&nk.recip()));
        // remaining tail is below |z|^n / (1-|z|)
        let bound = zpow.abs() * &geom;
        if bound < eps {
            return acc;
        }
        n += 1;
    }
}

fn log_expansion(k: u32, z: &BigComplex, wp: u32) -> BigComplex {
    let eps = pow2(-(wp as i32), wp);
    let mu = z.ln();

    // singular term: mu^{k-1}/(k-1)! * (H_{k-1} - Log(-mu))
    let mut harmonic = Rational::from(0);
    for j in 1..k {
        harmonic += Rational::from((1, j));
    }
    let h = BigComplex::real(Float::with_val(wp, &harmonic));
    let log_neg_mu = mu.neg().ln();
    let mut fact = Float::with_val(wp, 1);
    for j in 2..k {
        fact *= j;
    }
    let mu_pow = mu.powu(k - 1).scale(&fact.recip());
    let mut acc = mu_pow.mul(&h.sub(&log_neg_mu));

    // regular part: sum over n != k-1 of zeta(k-n) mu^n / n!
    let mut term = BigComplex::one(wp); // mu^n / n!
    let mut tiny_run = 0;
    let mut n = 0u32;
    loop {
        if n > 0 {
            term = term.scale(&Float::with_val(wp, n).recip());
            term = term.mul(&mu);
        }
        if n != k - 1 {
            let zv = zeta_int(k as i64 - n as i64, wp);
            if zv.is_zero() {
                // trivial zero of zeta: term contributes nothing, but do not
                // let it count toward convergence detection
            } else {
                let contrib = term.scale(&zv);
                let mag = contrib.abs();
                acc = acc.add(&contrib);
                if mag < eps {
                    tiny_run += 1;
                    if tiny_run >= 4 && n > k + 2 {
                        return acc;
                    }
                } else {
                    tiny_run = 0;
                }
            }
        }
        n += 1;
        assert!(n < 64 * wp, "polylog log-expansion failed to converge");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::fpi;

    fn unit_z(theta: f64, prec: u32) -> BigComplex {
        BigComplex::unit(&Float::with_val(prec, theta))
    }

    #[test]
    fn li2_at_one_is_pi2_over_6() {
        let prec = 256;
        let one = BigComplex::one(prec);
        let v = polylog_unit(2, &one, prec).unwrap();
        let want = fpi(prec).square() / 6u32;
        assert!((v.re - want).abs() < pow2(-245, prec));
        assert!(v.im.is_zero());
    }

    #[test]
    fn li2_at_third_root_of_unity() {
        let prec = 256;
        let theta = fpi(prec) * 2u32 / 3u32;
        let xi = BigComplex::unit(&theta);
        let v = polylog_unit(2, &xi, prec).unwrap();
        // Re Li2(xi) = -pi^2/18
        let want = -fpi(prec).square() / 18u32;
        assert!((v.re - want).abs() < pow2(-245, prec));
    }

    #[test]
    fn li2_at_minus_one() {
        let prec = 256;
        let m1 = BigComplex::from_f64(-1.0, 0.0, prec);
        let v = polylog_unit(2, &m1, prec).unwrap();
        let want = -fpi(prec).square() / 12u32;
        assert!((v.re - want).abs() < pow2(-245, prec));
    }

    #[test]
    fn li_at_zero() {
        let v = polylog_unit(5, &BigComplex::zero(128), 128).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn rejects_outside_disk_and_small_k() {
        let prec = 128;
        let z = BigComplex::from_f64(1.5, 0.0, prec);
        assert!(polylog_unit(2, &z, prec).is_err());
        assert!(polylog_unit(1, &BigComplex::one(prec), prec).is_err());
    }

    #[test]
    fn li3_against_brute_force() {
        // 10^6-term direct summation at double-ish precision
        let prec = 64;
        let z = unit_z(0.7, prec);
        let v = polylog_unit(3, &z, 128).unwrap();
        let mut acc = BigComplex::zero(prec);
        let mut zpow = BigComplex::one(prec);
        for n in 1u64..=1_000_000 {
            zpow = zpow.mul(&z);
            let nk = Float::with_val(prec, n).pow(3u32);
            acc = acc.add(&zpow.scale(&nk.recip()));
        }
        let diff = v.sub(&BigComplex::new(
            Float::with_val(128, &acc.re),
            Float::with_val(128, &acc.im),
        ));
        // oracle truncation error ~ 1/(2 * 10^12)
        assert!(diff.abs().to_f64() < 1e-9);
    }

    #[test]
    fn conjugate_symmetry() {
        let prec = 192;
        for k in [2u32, 3, 5, 9] {
            for &theta in &[0.3, 1.9, 3.0, 5.5] {
                let z = unit_z(theta, prec);
                let a = polylog_unit(k, &z, prec).unwrap();
                let b = polylog_unit(k, &z.conj(), prec).unwrap();
                assert!(a.conj().sub(&b).abs() < pow2(-(prec as i32) + 20, prec));
            }
        }
        // interior points as well
        for k in [2u32, 4] {
            let z = BigComplex::from_f64(0.35, -0.41, prec);
            let a = polylog_unit(k, &z, prec).unwrap();
            let b = polylog_unit(k, &z.conj(), prec).unwrap();
            assert!(a.conj().sub(&b).abs() < pow2(-(prec as i32) + 20, prec));
        }
    }

    #[test]
    fn monotone_refinement() {
        // doubling precision moves the result by less than the advertised bound
        for k in [2u32, 7] {
            for &theta in &[0.1, 2.0944, 4.0] {
                let z = unit_z(theta, 320);
                let lo = polylog_unit(k, &z, 128).unwrap();
                let hi = polylog_unit(k, &z, 256).unwrap();
                let diff = hi
                    .sub(&BigComplex::new(
                        Float::with_val(256, &lo.re),
                        Float::with_val(256, &lo.im),
                    ))
                    .abs();
                assert!(diff < pow2(-120, 256), "k={k} theta={theta}");
            }
        }
    }
}
