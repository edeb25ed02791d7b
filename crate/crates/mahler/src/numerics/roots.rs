//! Simultaneous complex root finding (Aberth–Ehrlich) with deterministic
//! Newton-polygon seeding.
//!
//! Exact inputs go through Yun's squarefree decomposition first, so the
//! iteration only ever sees simple roots and converges quadratically;
//! multiplicities are recovered exactly. On slow convergence the working
//! precision is doubled and the iteration restarted from the current
//! approximations, up to three times.

use rug::ops::CompleteRound;
use rug::Float;

use super::{pow2, BigComplex};
use crate::bivar::UniPoly;
use crate::error::{Error, Result};

/// Roots of a polynomial with certified-small residuals.
#[derive(Clone, Debug)]
pub struct RootSet {
    pub roots: Vec<BigComplex>,
    pub multiplicities: Vec<u32>,
    /// `|p(root)|` evaluated on the (monic-normalized) input factor.
    pub residuals: Vec<Float>,
    pub leading_coeff: BigComplex,
}

impl RootSet {
    /// Sum of multiplicities.
    pub fn total_degree(&self) -> u32 {
        self.multiplicities.iter().sum()
    }
}

/// All complex roots of an exact polynomial, found per squarefree factor.
pub fn polyroots(p: &UniPoly, prec: u32) -> Result<RootSet> {
    let deg = p.degree().ok_or(Error::ZeroPolynomial)?;
    if deg == 0 {
        return Err(Error::InvalidArg("polyroots requires degree >= 1".into()));
    }
    let lc = p.lc().to_complex(prec);
    // factor out x^v
    let mut shift = 0usize;
    while p.coeff(shift).is_zero() {
        shift += 1;
    }
    let reduced = UniPoly::new(p.coeffs()[shift..].to_vec());

    let mut roots = Vec::new();
    let mut mults = Vec::new();
    let mut residuals = Vec::new();
    if shift > 0 {
        roots.push(BigComplex::zero(prec));
        mults.push(shift as u32);
        residuals.push(Float::new(prec));
    }
    if reduced.degree() == Some(0) {
        return Ok(RootSet {
            roots,
            multiplicities: mults,
            residuals,
            leading_coeff: lc,
        });
    }
    for (factor, mult) in reduced.squarefree_decomposition() {
        let coeffs = factor.to_numeric(prec + 32);
        let rs = polyroots_numeric(&coeffs, prec)?;
        for (r, resid) in rs.roots.into_iter().zip(rs.residuals) {
            roots.push(r);
            mults.push(mult);
            residuals.push(resid);
        }
    }
    Ok(RootSet {
        roots,
        multiplicities: mults,
        residuals,
        leading_coeff: lc,
    })
}

/// All roots of a polynomial given by numeric coefficients (lowest first,
/// leading and constant coefficients nonzero is not required: trailing zero
/// coefficients are trimmed, roots at zero are split off).
pub fn polyroots_numeric(coeffs: &[BigComplex], prec: u32) -> Result<RootSet> {
    let mut cs: Vec<BigComplex> = coeffs.to_vec();
    while cs.last().is_some_and(|c| c.is_zero()) {
        cs.pop();
    }
    if cs.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    if cs.len() == 1 {
        return Err(Error::InvalidArg("polyroots requires degree >= 1".into()));
    }
    let lc = cs.last().unwrap().clone();
    let mut zero_mult = 0u32;
    while cs.first().is_some_and(|c| c.is_zero()) {
        cs.remove(0);
        zero_mult += 1;
    }
    let mut roots = Vec::new();
    let mut mults = Vec::new();
    let mut residuals = Vec::new();
    if zero_mult > 0 {
        roots.push(BigComplex::zero(prec));
        mults.push(zero_mult);
        residuals.push(Float::new(prec));
    }
    if cs.len() > 1 {
        let found = aberth(&cs, prec)?;
        for (r, resid) in found {
            roots.push(r);
            mults.push(1);
            residuals.push(resid);
        }
    }
    Ok(RootSet {
        roots,
        multiplicities: mults,
        residuals,
        leading_coeff: lc,
    })
}

/// Deterministic initial approximations from the Newton polygon of the
/// coefficient magnitudes (upper convex hull of `(k, ln|c_k|)`).
fn initial_seeds(cs: &[BigComplex], prec: u32) -> Vec<BigComplex> {
    let deg = cs.len() - 1;
    let logs: Vec<Option<f64>> = cs
        .iter()
        .map(|c| {
            if c.is_zero() {
                None
            } else {
                Some(c.abs().ln().to_f64())
            }
        })
        .collect();
    // upper convex hull over points with finite log
    let pts: Vec<(usize, f64)> = logs
        .iter()
        .enumerate()
        .filter_map(|(k, l)| l.map(|v| (k, v)))
        .collect();
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for &(x, y) in &pts {
        while hull.len() >= 2 {
            let (x1, y1) = hull[hull.len() - 2];
            let (x2, y2) = hull[hull.len() - 1];
            // drop if (x2,y2) below segment (x1,y1)-(x,y)
            if (y2 - y1) * (x as f64 - x1 as f64) <= (y - y1) * (x2 as f64 - x1 as f64) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push((x, y));
    }
    let mut seeds = Vec::with_capacity(deg);
    for (edge, w) in hull.windows(2).enumerate() {
        let (k1, v1) = w[0];
        let (k2, v2) = w[1];
        let m = k2 - k1;
        let radius = ((v1 - v2) / m as f64).exp();
        for t in 0..m {
            let angle = 2.0 * std::f64::consts::PI * (t as f64 + 0.5) / m as f64
                + 0.577 * edge as f64
                + 0.401;
            let r = Float::with_val(prec, radius);
            let z = BigComplex::unit(&Float::with_val(prec, angle)).scale(&r);
            seeds.push(z);
        }
    }
    debug_assert_eq!(seeds.len(), deg);
    seeds
}

/// Horner evaluation of `p` and `p'` at `z`.
fn eval_with_deriv(cs: &[BigComplex], z: &BigComplex) -> (BigComplex, BigComplex) {
    let prec = z.prec();
    let mut p = BigComplex::zero(prec);
    let mut dp = BigComplex::zero(prec);
    for c in cs.iter().rev() {
        dp = dp.mul(z).add(&p);
        p = p.mul(z).add(c);
    }
    (p, dp)
}

fn aberth(cs: &[BigComplex], prec: u32) -> Result<Vec<(BigComplex, Float)>> {
    let deg = cs.len() - 1;
    if deg == 1 {
        let r = cs[0].div(&cs[1]).neg();
        let mut r = r;
        r.re.set_prec(prec);
        r.im.set_prec(prec);
        return Ok(vec![(r, Float::new(prec))]);
    }

    let mut wp = prec + 32;
    let mut z = initial_seeds(cs, wp);
    for escalation in 0..4 {
        let cw: Vec<BigComplex> = cs
            .iter()
            .map(|c| BigComplex::new(Float::with_val(wp, &c.re), Float::with_val(wp, &c.im)))
            .collect();
        for zi in z.iter_mut() {
            zi.re.set_prec(wp);
            zi.im.set_prec(wp);
        }
        let tol = pow2(-(wp as i32) + 12, wp);
        let max_iters = 80 + 20 * (escalation + 1) * (usize::BITS - deg.leading_zeros()) as usize;
        let mut frozen = vec![false; deg];
        let mut converged = false;
        for _iter in 0..max_iters {
            let mut max_step = Float::new(wp);
            for j in 0..deg {
                if frozen[j] {
                    continue;
                }
                let (p, dp) = eval_with_deriv(&cw, &z[j]);
                if p.is_zero() {
                    frozen[j] = true;
                    continue;
                }
                let newton = if dp.is_zero() {
                    // nudge off a critical point deterministically
                    BigComplex::from_f64(1e-3, 1e-3, wp)
                } else {
                    p.div(&dp)
                };
                let mut repulse = BigComplex::zero(wp);
                for k in 0..deg {
                    if k != j {
                        let d = z[j].sub(&z[k]);
                        if d.is_zero() {
                            continue;
                        }
                        repulse = repulse.add(&d.recip());
                    }
                }
                let denom = BigComplex::one(wp).sub(&newton.mul(&repulse));
                let w = if denom.is_zero() {
                    newton.clone()
                } else {
                    newton.div(&denom)
                };
                z[j] = z[j].sub(&w);
                let scale = z[j].abs().max(&Float::with_val(wp, 1));
                let rel = w.abs() / scale;
                if rel <= tol {
                    frozen[j] = true;
                }
                if rel > max_step {
                    max_step = rel;
                }
            }
            if frozen.iter().all(|&f| f) || max_step <= tol {
                converged = true;
                break;
            }
        }
        if converged {
            // two polishing sweeps at full working precision
            for _ in 0..2 {
                for j in 0..deg {
                    let (p, dp) = eval_with_deriv(&cw, &z[j]);
                    if !dp.is_zero() {
                        z[j] = z[j].sub(&p.div(&dp));
                    }
                }
            }
            let mut out = Vec::with_capacity(deg);
            for zj in z {
                let (p, _) = eval_with_deriv(&cw, &zj);
                let resid = p.abs();
                let mut r = zj;
                r.re.set_prec(prec);
                r.im.set_prec(prec);
                let mut resid = resid;
                resid.set_prec(prec);
                out.push((r, resid));
            }
            return Ok(out);
        }
        wp *= 2;
    }
    Err(Error::NonConvergence(format!(
        "Aberth iteration failed for degree {deg} after precision escalation"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bivar::GaussRational;

    fn upoly(ints: &[i64]) -> UniPoly {
        UniPoly::new(ints.iter().map(|&c| GaussRational::from_int(c)).collect())
    }

    #[test]
    fn quadratic_with_imaginary_roots() {
        // z^2 + 1 -> {i, -i}
        let p = upoly(&[1, 0, 1]);
        let rs = polyroots(&p, 128).unwrap();
        assert_eq!(rs.total_degree(), 2);
        let mut ims: Vec<f64> = rs.roots.iter().map(|r| r.im.to_f64()).collect();
        ims.sort_by(f64::total_cmp);
        assert!((ims[0] + 1.0).abs() < 1e-30);
        assert!((ims[1] - 1.0).abs() < 1e-30);
        for r in &rs.roots {
            assert!(r.re.to_f64().abs() < 1e-30);
        }
    }

    #[test]
    fn linear() {
        let p = upoly(&[1, 2]);
        let rs = polyroots(&p, 128).unwrap();
        assert_eq!(rs.roots.len(), 1);
        assert!((rs.roots[0].re.to_f64() + 0.5).abs() < 1e-35);
    }

    #[test]
    fn repeated_roots_via_squarefree() {
        // (z-1)^3 (z+2)^2
        let f = upoly(&[-1, 1]);
        let g = upoly(&[2, 1]);
        let p = f.mul(&f).mul(&f).mul(&g).mul(&g);
        let rs = polyroots(&p, 192).unwrap();
        assert_eq!(rs.total_degree(), 5);
        let mut pairs: Vec<(f64, u32)> = rs
            .roots
            .iter()
            .zip(&rs.multiplicities)
            .map(|(r, &m)| (r.re.to_f64(), m))
            .collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        assert_eq!(pairs[0].1, 2);
        assert!((pairs[0].0 + 2.0).abs() < 1e-40);
        assert_eq!(pairs[1].1, 3);
        assert!((pairs[1].0 - 1.0).abs() < 1e-40);
    }

    #[test]
    fn residuals_are_small() {
        let p = upoly(&[1, 1, 0, 1]); // 1 + z + z^3
        let rs = polyroots(&p, 256).unwrap();
        assert_eq!(rs.total_degree(), 3);
        for resid in &rs.residuals {
            assert!(resid.clone() < pow2(-200, 64));
        }
    }

    #[test]
    fn moderately_high_degree() {
        // 1 + x + x^61
        let mut v = vec![0i64; 62];
        v[0] = 1;
        v[1] = 1;
        v[61] = 1;
        let p = upoly(&v);
        let rs = polyroots(&p, 192).unwrap();
        assert_eq!(rs.total_degree(), 61);
        for resid in &rs.residuals {
            assert!(resid.clone() < pow2(-150, 64));
        }
        // product of all roots = +-constant term: |prod| = 1
        let mut prod = Float::with_val(192, 1);
        for r in &rs.roots {
            prod *= r.abs();
        }
        assert!((prod - 1u32).abs() < pow2(-140, 192));
    }

    #[test]
    fn roots_at_zero_are_split_off() {
        // z^2 (z - 3)
        let p = upoly(&[0, 0, -3, 1]);
        let rs = polyroots(&p, 128).unwrap();
        assert_eq!(rs.total_degree(), 3);
        let zero_entry = rs
            .roots
            .iter()
            .zip(&rs.multiplicities)
            .find(|(r, _)| r.is_zero())
            .unwrap();
        assert_eq!(*zero_entry.1, 2);
    }

    #[test]
    fn deterministic() {
        let p = upoly(&[3, -2, 0, 0, 5, 1]);
        let a = polyroots(&p, 128).unwrap();
        let b = polyroots(&p, 128).unwrap();
        for (x, y) in a.roots.iter().zip(&b.roots) {
            assert_eq!(x, y);
        }
    }
}
