//! Root functions of `P(x,y)` on and near the unit circle.
//!
//! For `x` on the unit circle, the `d = deg_y(P)` roots of `P(x, .)` trace
//! continuous trajectories. The isolated points where a trajectory crosses
//! the circle `|y| = 1` form the exceptional set; the crossing direction is
//! the sign `s(alpha, beta)` entering the expansion coefficients. The sign is
//! determined algebraically from the Maclaurin coefficients of
//! `f(t) = Log(rho(alpha e^{it}) / beta)`: with `N` the first index where
//! `Re(b_N)` is nonzero, the sign is `0` for `N` even and `sign(Re(b_N))`
//! for `N` odd. Everything is cross-validated against trajectory tracking.

use std::collections::BTreeMap;

use rug::Float;

use crate::bivar::BiPoly;
use crate::error::{Error, Result};
use crate::exactalg::{self, eval_intpoly, Var};
use crate::numerics::{f2pi, pow2, reduce_angle, BigComplex};

/// A point on the unit circle: `value = exp(i*angle)` to working precision.
#[derive(Clone, Debug)]
pub struct UnitPoint {
    pub angle: Float,
    pub value: BigComplex,
}

impl UnitPoint {
    pub fn from_angle(angle: Float) -> Self {
        let angle = reduce_angle(&angle);
        let value = BigComplex::unit(&angle);
        UnitPoint { angle, value }
    }

    pub fn from_value(value: &BigComplex) -> Self {
        let angle = reduce_angle(&value.arg());
        UnitPoint {
            angle: angle.clone(),
            value: BigComplex::unit(&angle),
        }
    }
}

/// Modulus classification of a trajectory on a sub-arc.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ArcClass {
    Inside,
    Outside,
    OnCircle,
}

/// A maximal sub-arc on which the modulus classification is constant.
#[derive(Clone, Debug)]
pub struct TrajArc {
    pub theta_start: f64,
    pub theta_end: f64,
    pub class: ArcClass,
}

/// An isolated modulus-1 event of one trajectory.
#[derive(Clone, Debug)]
pub struct Crossing {
    pub theta: Float,
    pub value: BigComplex,
    pub branch: usize,
    /// +1 for inside -> outside, -1 for outside -> inside, 0 for a touch.
    pub direction: i8,
}

/// One root trajectory over the sampled circle.
#[derive(Clone, Debug)]
pub struct RootTrajectory {
    pub branch: usize,
    pub samples: Vec<(Float, BigComplex)>,
    pub arcs: Vec<TrajArc>,
    pub crossings: Vec<Crossing>,
}

/// A point of the exceptional set with its sign and crossing order.
#[derive(Clone, Debug)]
pub struct ExceptionalPoint {
    pub alpha: UnitPoint,
    pub beta: UnitPoint,
    pub sign: i8,
    /// First index `N` with `Re(b_N)` nonzero.
    pub order: u32,
    pub b_coeffs: Vec<BigComplex>,
}

/// Largest coefficient magnitude of `P`, used for relative residual tests.
pub(crate) fn coeff_scale(p: &BiPoly, prec: u32) -> Float {
    let mut s = Float::new(prec);
    for (_, c) in p.terms() {
        let a = c.to_complex(prec).abs();
        if a > s {
            s = a;
        }
    }
    s.max(&Float::with_val(prec, 1e-300))
}

/// The `d` root values of `P(x0, .)`, unordered. Fails if the leading
/// y-coefficient vanishes at `x0` (the degree drops there).
pub fn roots_at(p: &BiPoly, x0: &BigComplex, prec: u32) -> Result<Vec<BigComplex>> {
    if p.deg_y() == 0 {
        return Err(Error::InvalidArg("roots_at requires deg_y >= 1".into()));
    }
    let wp = prec + 16;
    let coeffs = p.y_coeffs_at(x0, wp);
    let scale = coeffs
        .iter()
        .map(|c| c.abs())
        .fold(Float::new(wp), |a, b| a.max(&b));
    let lead = coeffs.last().unwrap().abs();
    if lead < scale * pow2(-(prec as i32) + 8, wp) {
        return Err(Error::LeadingCoeffVanishes);
    }
    let rs = crate::numerics::polyroots_numeric(&coeffs, prec)?;
    let mut out = Vec::new();
    for (root, mult) in rs.roots.into_iter().zip(rs.multiplicities) {
        for _ in 0..mult {
            out.push(root.clone());
        }
    }
    Ok(out)
}

fn classify(modulus_minus_1: &Float, tol: &Float) -> i8 {
    if modulus_minus_1.clone().abs() <= *tol {
        0
    } else if modulus_minus_1.is_sign_positive() {
        1
    } else {
        -1
    }
}

/// Tracks all `d` root trajectories over a uniform angle grid (refined at
/// crossings), classifying each sub-arc as inside / outside / on-circle.
pub fn track_roots(p: &BiPoly, grid_size: usize, prec: u32) -> Result<Vec<RootTrajectory>> {
    let d = p.deg_y() as usize;
    if d == 0 {
        return Err(Error::InvalidArg("track_roots requires deg_y >= 1".into()));
    }
    let grid_size = grid_size.max(16);
    let tau = f2pi(prec);
    let offset = 0.381_966_011_250_1_f64;
    let tol = pow2(-(prec as i32) / 2, prec);
    let sep_margin = pow2(-(prec as i32) / 8, prec);

    let sample_at = |theta: &Float| -> Result<Vec<BigComplex>> {
        let mut th = theta.clone();
        for attempt in 0..4 {
            match roots_at(p, &BigComplex::unit(&th), prec) {
                Ok(roots) => return Ok(roots),
                Err(Error::LeadingCoeffVanishes) if attempt < 3 => {
                    th += Float::with_val(prec, 1e-9) * Float::with_val(prec, (attempt + 1) as f64);
                }
                Err(e) => return Err(e),
            }
        }
        Err(Error::LeadingCoeffVanishes)
    };

    // sample 0..=grid_size, continuation-matched
    let mut paths: Vec<Vec<(Float, BigComplex)>> = vec![Vec::new(); d];
    let mut prev: Vec<BigComplex> = Vec::new();
    for k in 0..=grid_size {
        let theta =
            tau.clone() * Float::with_val(prec, (k as f64 + offset) / grid_size as f64);
        let roots = sample_at(&theta)?;
        // collision check
        for a in 0..roots.len() {
            for b in a + 1..roots.len() {
                let dist = roots[a].sub(&roots[b]).abs();
                let scale = roots[a].abs().max(&Float::with_val(prec, 1));
                if dist < scale * &sep_margin {
                    return Err(Error::RootCollision(theta.to_f64()));
                }
            }
        }
        let ordered = if k == 0 {
            let mut idx: Vec<usize> = (0..d).collect();
            idx.sort_by(|&a, &b| {
                let (aa, ab) = (roots[a].arg().to_f64(), roots[a].abs().to_f64());
                let (ba, bb) = (roots[b].arg().to_f64(), roots[b].abs().to_f64());
                aa.total_cmp(&ba).then(ab.total_cmp(&bb))
            });
            idx.into_iter().map(|i| roots[i].clone()).collect::<Vec<_>>()
        } else {
            match_to_previous(&prev, roots)
        };
        for (j, r) in ordered.iter().enumerate() {
            paths[j].push((theta.clone(), r.clone()));
        }
        prev = ordered;
    }

    let mut out = Vec::with_capacity(d);
    for (branch, samples) in paths.into_iter().enumerate() {
        let states: Vec<i8> = samples
            .iter()
            .map(|(_, v)| {
                let m = v.abs() - 1u32;
                classify(&m, &tol)
            })
            .collect();
        let (arcs, crossings) = segment_path(p, branch, &samples, &states, prec)?;
        out.push(RootTrajectory {
            branch,
            samples,
            arcs,
            crossings,
        });
    }
    Ok(out)
}

fn match_to_previous(prev: &[BigComplex], roots: Vec<BigComplex>) -> Vec<BigComplex> {
    let d = prev.len();
    let mut taken = vec![false; roots.len()];
    let mut out: Vec<Option<BigComplex>> = vec![None; d];
    // greedy global-minimum assignment; d is small
    for _ in 0..d {
        let mut best: Option<(usize, usize, f64)> = None;
        for (j, pv) in prev.iter().enumerate() {
            if out[j].is_some() {
                continue;
            }
            for (k, rv) in roots.iter().enumerate() {
                if taken[k] {
                    continue;
                }
                let dist = pv.sub(rv).abs().to_f64();
                if best.map_or(true, |(_, _, bd)| dist < bd) {
                    best = Some((j, k, dist));
                }
            }
        }
        let (j, k, _) = best.unwrap();
        out[j] = Some(roots[k].clone());
        taken[k] = true;
    }
    out.into_iter().map(Option::unwrap).collect()
}

/// Splits one sampled path into constant-classification arcs and isolated
/// modulus-1 events.
fn segment_path(
    p: &BiPoly,
    branch: usize,
    samples: &[(Float, BigComplex)],
    states: &[i8],
    prec: u32,
) -> Result<(Vec<TrajArc>, Vec<Crossing>)> {
    let n = samples.len();
    let mut arcs: Vec<TrajArc> = Vec::new();
    let mut crossings: Vec<Crossing> = Vec::new();

    if states.iter().all(|&s| s == 0) {
        arcs.push(TrajArc {
            theta_start: samples[0].0.to_f64(),
            theta_end: samples[n - 1].0.to_f64(),
            class: ArcClass::OnCircle,
        });
        return Ok((arcs, crossings));
    }

    // runs of equal state
    let mut runs: Vec<(i8, usize, usize)> = Vec::new(); // (state, start, end inclusive)
    let mut start = 0usize;
    for k in 1..=n {
        if k == n || states[k] != states[start] {
            runs.push((states[start], start, k - 1));
            start = k;
        }
    }

    const ON_RUN_ARC: usize = 3;
    for (ri, &(state, s, e)) in runs.iter().enumerate() {
        let class = match state {
            -1 => ArcClass::Inside,
            1 => ArcClass::Outside,
            _ => {
                if e - s + 1 >= ON_RUN_ARC {
                    ArcClass::OnCircle
                } else {
                    // short on-circle blip: a touch when flanked by equal
                    // states; flips are picked up by the transition scan
                    let before = ri.checked_sub(1).map(|i| runs[i].0);
                    let after = runs.get(ri + 1).map(|r| r.0);
                    if let (Some(b), Some(a)) = (before, after) {
                        if b == a {
                            let mid = (s + e) / 2;
                            crossings.push(Crossing {
                                theta: samples[mid].0.clone(),
                                value: samples[mid].1.clone(),
                                branch,
                                direction: 0,
                            });
                        }
                    }
                    continue;
                }
            }
        };
        arcs.push(TrajArc {
            theta_start: samples[s].0.to_f64(),
            theta_end: samples[e].0.to_f64(),
            class,
        });
    }

    // transitions between consecutive non-on runs
    let non_on: Vec<&(i8, usize, usize)> = runs.iter().filter(|r| r.0 != 0).collect();
    for w in non_on.windows(2) {
        let (s1, _, e1) = *w[0];
        let (s2, s2start, _) = *w[1];
        if s1 == s2 {
            continue;
        }
        // a flip adjoining a genuine on-circle arc is not an isolated crossing
        let gap_on = s2start - e1 - 1;
        if gap_on >= ON_RUN_ARC {
            continue;
        }
        let (theta, value) = refine_crossing(p, samples, e1, s2start, prec)?;
        crossings.push(Crossing {
            theta,
            value,
            branch,
            direction: if s2 > s1 { 1 } else { -1 },
        });
    }

    Ok((arcs, crossings))
}

/// Bisection refinement of a modulus-1 crossing between two sample indices.
fn refine_crossing(
    p: &BiPoly,
    samples: &[(Float, BigComplex)],
    lo_idx: usize,
    hi_idx: usize,
    prec: u32,
) -> Result<(Float, BigComplex)> {
    let mut lo = samples[lo_idx].0.clone();
    let mut hi = samples[hi_idx].0.clone();
    let mut hint = samples[lo_idx].1.clone();
    let lo_sign = {
        let m = samples[lo_idx].1.abs() - 1u32;
        m.is_sign_positive()
    };
    let steps = (prec / 3).clamp(40, 200);
    let mut best = hint.clone();
    for _ in 0..steps {
        let mid = Float::with_val(prec, &lo + &hi) / 2u32;
        let roots = roots_at(p, &BigComplex::unit(&mid), prec)?;
        let r = roots
            .into_iter()
            .min_by(|a, b| {
                a.sub(&hint)
                    .abs()
                    .partial_cmp(&b.sub(&hint).abs())
                    .unwrap()
            })
            .unwrap();
        let m = r.abs() - 1u32;
        best = r.clone();
        hint = r;
        if m.is_sign_positive() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let theta = Float::with_val(prec, &lo + &hi) / 2u32;
    Ok((theta, best))
}

// ---------------------------------------------------------------------------
// Exceptional set
// ---------------------------------------------------------------------------

const DEFAULT_GRID: usize = 512;

/// The exceptional set: isolated points of `Z(P)` on the unit torus, each
/// with its algebraically determined sign, cross-validated against the
/// trajectory-crossing classification from [`track_roots`].
pub fn exceptional_set(p: &BiPoly, prec: u32) -> Result<Vec<ExceptionalPoint>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    // almost self-reciprocal: torus zeros are never isolated
    if p.is_asr().is_some() {
        return Ok(Vec::new());
    }
    if p.deg_x() == 0 || p.deg_y() == 0 {
        return Ok(Vec::new());
    }
    let report = crate::bivar::hypothesis_check(p, None, prec)?;
    if !report.pass {
        return Err(Error::HypothesisFailed(format!(
            "{} critical point(s) on the unit circle",
            report.offending.len()
        )));
    }

    let star = p.reciprocal();
    let res = crate::bivar::resultant_y(p, &star)?;
    if res.is_zero() {
        return Err(Error::SharedFactor);
    }
    let mut points: Vec<ExceptionalPoint> = Vec::new();
    if res.degree() == Some(0) {
        return Ok(points);
    }

    let wp = prec + 64;
    let t_tol = pow2(-(prec as i32) / 2, wp);
    let alpha_roots = crate::numerics::polyroots(&res, wp)?;
    let mut seen_angles: Vec<Float> = Vec::new();
    for root in &alpha_roots.roots {
        if root.is_zero() {
            continue;
        }
        let margin = (root.abs() - 1u32).abs();
        if margin > t_tol {
            continue;
        }
        let angle = reduce_angle(&root.arg());
        if seen_angles
            .iter()
            .any(|a| angles_close(a, &angle, &t_tol, wp))
        {
            continue;
        }
        seen_angles.push(angle.clone());
        let alpha = UnitPoint::from_angle(angle);

        // candidate beta: roots of P(alpha, .) on the circle that also kill P*
        let scale = coeff_scale(p, wp);
        let betas = roots_at(p, &alpha.value, wp)?;
        for beta_raw in betas {
            if (beta_raw.abs() - 1u32).abs() > t_tol {
                continue;
            }
            let star_val = star.eval_xy(&alpha.value, &beta_raw, wp).abs();
            if star_val > Float::with_val(wp, &scale * &t_tol) {
                continue;
            }
            let beta = UnitPoint::from_value(&beta_raw);
            let (sign, order, b_coeffs) = sign_at_impl(p, &alpha, &beta, 8, prec)?;
            points.push(ExceptionalPoint {
                alpha: alpha.clone(),
                beta,
                sign,
                order,
                b_coeffs,
            });
        }
    }
    points.sort_by(|a, b| {
        a.alpha
            .angle
            .partial_cmp(&b.alpha.angle)
            .unwrap()
            .then(a.beta.angle.partial_cmp(&b.beta.angle).unwrap())
    });

    cross_validate(p, &points, prec)?;
    Ok(points)
}

fn angles_close(a: &Float, b: &Float, tol: &Float, prec: u32) -> bool {
    let tau = f2pi(prec);
    let mut d = Float::with_val(prec, a - b).abs();
    let half = Float::with_val(prec, &tau / 2u32);
    if d > half {
        d = tau - d;
    }
    d < *tol
}

/// Checks that algebraic signs agree with trajectory crossings: every
/// sign-flip crossing matches a point with that sign, every nonzero-sign
/// point matches a crossing, and sign-0 points have no flip.
fn cross_validate(p: &BiPoly, points: &[ExceptionalPoint], prec: u32) -> Result<()> {
    let trajectories = track_roots(p, DEFAULT_GRID, prec)?;
    let angle_tol = Float::with_val(prec, 4.0 * std::f64::consts::PI / DEFAULT_GRID as f64);
    let mut flips: Vec<&Crossing> = Vec::new();
    for t in &trajectories {
        for c in &t.crossings {
            if c.direction != 0 {
                flips.push(c);
            }
        }
    }
    let mut used = vec![false; flips.len()];
    for pt in points {
        if pt.sign == 0 {
            let near_flip = flips.iter().any(|c| {
                angles_close(&c.theta, &pt.alpha.angle, &angle_tol, prec)
                    && c.value.sub(&pt.beta.value).abs().to_f64() < 1e-3
            });
            if near_flip {
                return Err(Error::SignMismatch(format!(
                    "algebraic sign 0 at angle {} but trajectory flips there",
                    pt.alpha.angle.to_f64()
                )));
            }
            continue;
        }
        let found = flips.iter().enumerate().find(|(_, c)| {
            angles_close(&c.theta, &pt.alpha.angle, &angle_tol, prec)
                && c.value.sub(&pt.beta.value).abs().to_f64() < 1e-3
        });
        match found {
            Some((i, c)) if c.direction == pt.sign => used[i] = true,
            Some((_, c)) => {
                return Err(Error::SignMismatch(format!(
                    "algebraic sign {} vs crossing direction {} at angle {}",
                    pt.sign,
                    c.direction,
                    pt.alpha.angle.to_f64()
                )))
            }
            None => {
                return Err(Error::SignMismatch(format!(
                    "no trajectory crossing near algebraic point at angle {}",
                    pt.alpha.angle.to_f64()
                )))
            }
        }
    }
    if let Some(i) = used.iter().position(|&u| !u) {
        return Err(Error::SignMismatch(format!(
            "trajectory crossing at angle {} matches no algebraic point",
            flips[i].theta.to_f64()
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Implicit derivatives, jets, Maclaurin coefficients, sign
// ---------------------------------------------------------------------------

fn check_on_curve(p: &BiPoly, alpha: &BigComplex, beta: &BigComplex, prec: u32) -> Result<()> {
    let wp = prec + 16;
    let resid = p.eval_xy(alpha, beta, wp).abs();
    let scale = coeff_scale(p, wp);
    if resid > scale * pow2(-(prec as i32) / 3, wp) {
        return Err(Error::NotOnCurve(format!("{:.3e}", resid.to_f64())));
    }
    Ok(())
}

/// Derivatives `rho^(n)(alpha)` for `n = 1..=kmax` of the root function
/// through `(alpha, beta)`, via the exact polynomials `Q[n]` evaluated at the
/// mixed partials of `P`.
pub fn implicit_derivs(
    p: &BiPoly,
    alpha: &BigComplex,
    beta: &BigComplex,
    kmax: u32,
    prec: u32,
) -> Result<Vec<BigComplex>> {
    if kmax == 0 || kmax > 12 {
        return Err(Error::InvalidArg(
            "implicit_derivs supports 1 <= kmax <= 12 (Q_n size grows quickly)".into(),
        ));
    }
    check_on_curve(p, alpha, beta, prec)?;
    let wp = prec + 32;
    let mut assign: BTreeMap<Var, BigComplex> = BTreeMap::new();
    for i in 0..=kmax {
        for j in 0..=(kmax - i) {
            let v = p.partial(i, j).eval_xy(alpha, beta, wp);
            assign.insert(Var::W(i, j), v);
        }
    }
    let w01 = assign.get(&Var::W(0, 1)).unwrap().clone();
    let scale = coeff_scale(p, wp);
    if w01.abs() < scale * pow2(-(prec as i32) / 2, wp) {
        return Err(Error::VanishingPartialY);
    }
    let mut out = Vec::with_capacity(kmax as usize);
    for n in 1..=kmax {
        let q = exactalg::q_poly(n);
        let num = eval_intpoly(&q, &assign, wp)?;
        let den = w01.powu(2 * n - 1);
        out.push(num.div(&den));
    }
    Ok(out)
}

// --- truncated power series helpers (length-L jets over BigComplex) ---

fn series_mul(a: &[BigComplex], b: &[BigComplex], len: usize, prec: u32) -> Vec<BigComplex> {
    let mut out = vec![BigComplex::zero(prec); len];
    for (i, ai) in a.iter().enumerate().take(len) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(len - i) {
            out[i + j] = out[i + j].add(&ai.mul(bj));
        }
    }
    out
}

fn series_add(a: &[BigComplex], b: &[BigComplex], len: usize, prec: u32) -> Vec<BigComplex> {
    (0..len)
        .map(|k| {
            let x = a.get(k).cloned().unwrap_or_else(|| BigComplex::zero(prec));
            let y = b.get(k).cloned().unwrap_or_else(|| BigComplex::zero(prec));
            x.add(&y)
        })
        .collect()
}

fn series_div(u: &[BigComplex], v: &[BigComplex], len: usize, prec: u32) -> Vec<BigComplex> {
    let v0inv = v[0].recip();
    let mut q = vec![BigComplex::zero(prec); len];
    for k in 0..len {
        let mut acc = u.get(k).cloned().unwrap_or_else(|| BigComplex::zero(prec));
        for j in 1..=k {
            if let Some(vj) = v.get(j) {
                acc = acc.sub(&vj.mul(&q[k - j]));
            }
        }
        q[k] = acc.mul(&v0inv);
    }
    q
}

/// Taylor coefficients of `a(alpha + t)` up to order `len-1`, by repeated
/// synthetic division by `(x - alpha)`.
fn shifted_series(
    a: &crate::bivar::UniPoly,
    alpha: &BigComplex,
    len: usize,
    prec: u32,
) -> Vec<BigComplex> {
    let mut b = a.to_numeric(prec);
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        if b.is_empty() {
            out.push(BigComplex::zero(prec));
            continue;
        }
        let n = b.len();
        let mut q = vec![BigComplex::zero(prec); n.saturating_sub(1)];
        let mut rem = b[n - 1].clone();
        for k in (0..n - 1).rev() {
            q[k] = rem.clone();
            rem = rem.mul(alpha).add(&b[k]);
        }
        out.push(rem);
        b = q;
    }
    out
}

/// The Taylor jet `rho(alpha + t) = c_0 + c_1 t + ... + c_{len-1} t^{len-1}`
/// of the root function through `(alpha, beta)`, by Newton lifting on
/// truncated power series. `c_0 = beta`; `rho^(k)(alpha) = k! c_k`.
pub fn root_jet(
    p: &BiPoly,
    alpha: &BigComplex,
    beta: &BigComplex,
    len: usize,
    prec: u32,
) -> Result<Vec<BigComplex>> {
    assert!(len >= 1);
    check_on_curve(p, alpha, beta, prec)?;
    let wp = prec + 32 + 4 * len as u32;
    let alpha = BigComplex::new(
        Float::with_val(wp, &alpha.re),
        Float::with_val(wp, &alpha.im),
    );
    let a_series: Vec<Vec<BigComplex>> = p
        .y_coeffs()
        .iter()
        .map(|a| shifted_series(a, &alpha, len, wp))
        .collect();
    let d = a_series.len() - 1;

    let eval_p_py = |y: &[BigComplex], m: usize| -> (Vec<BigComplex>, Vec<BigComplex>) {
        let mut pv = a_series[d][..m.min(a_series[d].len())].to_vec();
        pv.resize(m, BigComplex::zero(wp));
        let mut dv = vec![BigComplex::zero(wp); m];
        for j in (0..d).rev() {
            dv = series_add(&series_mul(&dv, y, m, wp), &pv, m, wp);
            let mut aj = a_series[j][..m.min(a_series[j].len())].to_vec();
            aj.resize(m, BigComplex::zero(wp));
            pv = series_add(&series_mul(&pv, y, m, wp), &aj, m, wp);
        }
        (pv, dv)
    };

    let mut y = vec![BigComplex::new(
        Float::with_val(wp, &beta.re),
        Float::with_val(wp, &beta.im),
    )];
    // polish the constant term first
    for _ in 0..3 {
        let (pv, dv) = eval_p_py(&y, 1);
        if dv[0].is_zero() {
            return Err(Error::VanishingPartialY);
        }
        y[0] = y[0].sub(&pv[0].div(&dv[0]));
    }
    let mut m = 1usize;
    while m < len {
        let m2 = (2 * m).min(len);
        y.resize(m2, BigComplex::zero(wp));
        let (pv, dv) = eval_p_py(&y, m2);
        let corr = series_div(&pv, &dv, m2, wp);
        for k in 0..m2 {
            y[k] = y[k].sub(&corr[k]);
        }
        m = m2;
    }
    for c in y.iter_mut() {
        c.re.set_prec(prec);
        c.im.set_prec(prec);
    }
    Ok(y)
}

/// Maclaurin coefficients `b_1..b_kmax` of
/// `f(t) = Log(rho(alpha e^{it}) / beta)`, computed by exact composition:
/// derivatives of `t -> alpha e^{it}`, then the root function (via `Q[n]`),
/// then `Log` (via Faa di Bruno through the partial Bell polynomials).
pub fn maclaurin_b(
    p: &BiPoly,
    alpha: &UnitPoint,
    beta: &UnitPoint,
    kmax: u32,
    prec: u32,
) -> Result<Vec<BigComplex>> {
    if kmax == 0 || kmax > 8 {
        return Err(Error::InvalidArg(
            "maclaurin_b supports 1 <= kmax <= 8".into(),
        ));
    }
    let wp = prec + 32;
    let rho = implicit_derivs(p, &alpha.value, &beta.value, kmax, wp)?;

    // h(t) = alpha e^{it}: h^(m)(0) = i^m alpha
    let i_unit = BigComplex::i(wp);
    let mut h_derivs: Vec<BigComplex> = Vec::with_capacity(kmax as usize);
    let mut ipow = BigComplex::one(wp);
    for _ in 1..=kmax {
        ipow = ipow.mul(&i_unit);
        h_derivs.push(ipow.mul(&alpha.value));
    }

    // g = rho o h: g^(k)(0) = sum_j B[k,j](h', h'', ...) rho^(j)(alpha)
    let bell_eval = |k: u32, j: u32, args: &[BigComplex]| -> Result<BigComplex> {
        let b = exactalg::bell_partial(k, j);
        let mut assign: BTreeMap<Var, BigComplex> = BTreeMap::new();
        for (m, v) in args.iter().enumerate() {
            assign.insert(Var::Y(m as u32 + 1), v.clone());
        }
        eval_intpoly(&b, &assign, wp)
    };
    let mut g_derivs: Vec<BigComplex> = Vec::with_capacity(kmax as usize);
    for k in 1..=kmax {
        let mut acc = BigComplex::zero(wp);
        for j in 1..=k {
            let b = bell_eval(k, j, &h_derivs)?;
            acc = acc.add(&b.mul(&rho[(j - 1) as usize]));
        }
        g_derivs.push(acc);
    }

    // u = g / beta (u(0) = 1), f = Log u:
    // f^(k)(0) = sum_j (-1)^{j-1} (j-1)! B[k,j](u', u'', ...)
    let beta_inv = beta.value.recip();
    let u_derivs: Vec<BigComplex> = g_derivs.iter().map(|g| g.mul(&beta_inv)).collect();
    let mut out = Vec::with_capacity(kmax as usize);
    for k in 1..=kmax {
        let mut acc = BigComplex::zero(wp);
        let mut fact = Float::with_val(wp, 1); // (j-1)!
        for j in 1..=k {
            if j > 1 {
                fact *= j - 1;
            }
            let b = bell_eval(k, j, &u_derivs)?;
            let signed = if (j - 1) % 2 == 1 { b.neg() } else { b };
            acc = acc.add(&signed.scale(&fact));
        }
        let mut kfact = Float::with_val(wp, 1);
        for t in 2..=k {
            kfact *= t;
        }
        let mut b = acc.scale(&kfact.recip());
        b.re.set_prec(prec);
        b.im.set_prec(prec);
        out.push(b);
    }
    Ok(out)
}

/// The unverified closed-form guess for the Maclaurin coefficients, kept
/// only as an optional cross-check against [`maclaurin_b`].
pub fn conjectured_b(
    p: &BiPoly,
    alpha: &UnitPoint,
    beta: &UnitPoint,
    kmax: u32,
    prec: u32,
) -> Result<Vec<BigComplex>> {
    let wp = prec + 32;
    let rho = implicit_derivs(p, &alpha.value, &beta.value, kmax, wp)?;
    let i_unit = BigComplex::i(wp);
    let mut out = Vec::with_capacity(kmax as usize);
    for k in 1..=kmax {
        let mut acc = BigComplex::zero(wp);
        for j in 1..=k {
            let s = exactalg::stirling_second(k, j);
            let term = BigComplex::from_integer(&s, wp)
                .mul(&rho[(j - 1) as usize])
                .mul(&beta.value.powi(j as i64 - 1));
            acc = acc.add(&term);
        }
        let mut kfact = Float::with_val(wp, 1);
        for t in 2..=k {
            kfact *= t;
        }
        out.push(acc.mul(&i_unit.powu(k)).scale(&kfact.recip()));
    }
    Ok(out)
}

fn sign_at_impl(
    p: &BiPoly,
    alpha: &UnitPoint,
    beta: &UnitPoint,
    kmax: u32,
    prec: u32,
) -> Result<(i8, u32, Vec<BigComplex>)> {
    let b = maclaurin_b(p, alpha, beta, kmax, prec)?;
    let thr = pow2(-(prec as i32) / 2, prec);
    for (idx, bk) in b.iter().enumerate() {
        let n = idx as u32 + 1;
        if bk.re.clone().abs() > thr {
            let sign = if n % 2 == 0 {
                0
            } else if bk.re.is_sign_positive() {
                1
            } else {
                -1
            };
            return Ok((sign, n, b));
        }
    }
    Err(Error::UndeterminedOrder(kmax))
}

/// The crossing sign `s(alpha, beta)` and its order `N`: the least index
/// with `Re(b_N)` above tolerance. Returns 0 when `N` is even.
pub fn sign_at(p: &BiPoly, alpha: &UnitPoint, beta: &UnitPoint, prec: u32) -> Result<(i8, u32)> {
    sign_at_impl(p, alpha, beta, 8, prec).map(|(s, n, _)| (s, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bivar::BiPoly;

    fn one_x_y() -> BiPoly {
        BiPoly::from_int_terms(&[(0, 0, 1), (1, 0, 1), (0, 1, 1)])
    }

    fn xi_point(prec: u32, inverse: bool) -> UnitPoint {
        let theta = f2pi(prec) / 3u32;
        let theta = if inverse { f2pi(prec) - theta } else { theta };
        UnitPoint::from_angle(theta)
    }

    #[test]
    fn roots_at_examples() {
        let prec = 128;
        let x0 = BigComplex::from_f64(0.3, 0.4, prec);
        let r = roots_at(&one_x_y(), &x0, prec).unwrap();
        assert_eq!(r.len(), 1);
        assert!((r[0].re.to_f64() + 1.3).abs() < 1e-25);
        assert!((r[0].im.to_f64() + 0.4).abs() < 1e-25);

        let p = BiPoly::from_int_terms(&[(0, 2, 1), (1, 0, -1)]); // y^2 - x
        let r = roots_at(&p, &BigComplex::one(prec), prec).unwrap();
        let mut res: Vec<f64> = r.iter().map(|z| z.re.to_f64()).collect();
        res.sort_by(f64::total_cmp);
        assert!((res[0] + 1.0).abs() < 1e-25 && (res[1] - 1.0).abs() < 1e-25);

        let p = BiPoly::from_int_terms(&[(0, 2, 1), (1, 1, 1), (0, 0, 1)]); // y^2+xy+1
        let r = roots_at(&p, &BigComplex::zero(prec), prec).unwrap();
        let mut ims: Vec<f64> = r.iter().map(|z| z.im.to_f64()).collect();
        ims.sort_by(f64::total_cmp);
        assert!((ims[0] + 1.0).abs() < 1e-25 && (ims[1] - 1.0).abs() < 1e-25);
    }

    #[test]
    fn roots_at_degree_drop() {
        // (1+x) y + 1: leading coeff vanishes at x = -1
        let p = BiPoly::from_int_terms(&[(0, 1, 1), (1, 1, 1), (0, 0, 1)]);
        let x0 = BigComplex::from_f64(-1.0, 0.0, 128);
        assert!(matches!(
            roots_at(&p, &x0, 128),
            Err(Error::LeadingCoeffVanishes)
        ));
    }

    #[test]
    fn track_one_x_y() {
        let prec = 128;
        let trajs = track_roots(&one_x_y(), 256, prec).unwrap();
        assert_eq!(trajs.len(), 1);
        let t = &trajs[0];
        // |rho(e^{i t})| = |2 cos(t/2)|: crossings at 2pi/3 (out->in) and
        // 4pi/3 (in->out)
        assert_eq!(t.crossings.len(), 2);
        let mut cr = t.crossings.clone();
        cr.sort_by(|a, b| a.theta.partial_cmp(&b.theta).unwrap());
        let tau = 2.0 * std::f64::consts::PI;
        assert!((cr[0].theta.to_f64() - tau / 3.0).abs() < 1e-9);
        assert_eq!(cr[0].direction, -1);
        assert!((cr[1].theta.to_f64() - 2.0 * tau / 3.0).abs() < 1e-9);
        assert_eq!(cr[1].direction, 1);
        // samples match the closed form
        for (theta, v) in &t.samples {
            let want = 2.0 * (theta.to_f64() / 2.0).cos().abs();
            assert!((v.abs().to_f64() - want).abs() < 1e-12);
        }
    }

    #[test]
    fn track_products_and_scalings() {
        let prec = 128;
        // (1+x)(1+y): the single trajectory is identically -1 (on-circle)
        let p = BiPoly::from_int_terms(&[(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1)]);
        let trajs = track_roots(&p, 128, prec).unwrap();
        assert_eq!(trajs.len(), 1);
        assert_eq!(trajs[0].arcs.len(), 1);
        assert_eq!(trajs[0].arcs[0].class, ArcClass::OnCircle);
        assert!(trajs[0].crossings.is_empty());

        // y - 2x: trajectory outside everywhere
        let p = BiPoly::from_int_terms(&[(0, 1, 1), (1, 0, -2)]);
        let trajs = track_roots(&p, 128, prec).unwrap();
        assert_eq!(trajs[0].arcs.len(), 1);
        assert_eq!(trajs[0].arcs[0].class, ArcClass::Outside);
        for (_, v) in &trajs[0].samples {
            assert!((v.abs().to_f64() - 2.0).abs() < 1e-20);
        }
    }

    #[test]
    fn exceptional_set_one_x_y() {
        let prec = 192;
        let pts = exceptional_set(&one_x_y(), prec).unwrap();
        assert_eq!(pts.len(), 2);
        let tau = 2.0 * std::f64::consts::PI;
        // sorted by alpha angle: (xi, xi^-1, -1) then (xi^-1, xi, +1)
        assert!((pts[0].alpha.angle.to_f64() - tau / 3.0).abs() < 1e-12);
        assert!((pts[0].beta.angle.to_f64() - 2.0 * tau / 3.0).abs() < 1e-12);
        assert_eq!(pts[0].sign, -1);
        assert_eq!(pts[0].order, 1);
        assert!((pts[1].alpha.angle.to_f64() - 2.0 * tau / 3.0).abs() < 1e-12);
        assert_eq!(pts[1].sign, 1);
        assert_eq!(pts[1].order, 1);
    }

    #[test]
    fn exceptional_set_empty_cases() {
        let prec = 128;
        let asr = BiPoly::from_int_terms(&[(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1)]);
        assert!(exceptional_set(&asr, prec).unwrap().is_empty());
        let y2x = BiPoly::from_int_terms(&[(0, 1, 1), (1, 0, -2)]);
        assert!(exceptional_set(&y2x, prec).unwrap().is_empty());
    }

    #[test]
    fn exceptional_set_touch_point() {
        // 2 + x + y: |rho| >= 1 touches at (-1, -1): sign 0, order 2
        let prec = 160;
        let p = BiPoly::from_int_terms(&[(0, 0, 2), (1, 0, 1), (0, 1, 1)]);
        let pts = exceptional_set(&p, prec).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].sign, 0);
        assert_eq!(pts[0].order, 2);
        assert!((pts[0].alpha.angle.to_f64() - std::f64::consts::PI).abs() < 1e-12);
        assert!((pts[0].beta.angle.to_f64() - std::f64::consts::PI).abs() < 1e-12);
    }

    #[test]
    fn implicit_derivs_examples() {
        let prec = 192;
        // 1+x+y at a point on the curve: rho' = -1, rho'' = 0
        let alpha = BigComplex::from_f64(0.25, 0.5, prec);
        let beta = BigComplex::from_f64(-1.25, -0.5, prec);
        let d = implicit_derivs(&one_x_y(), &alpha, &beta, 4, prec).unwrap();
        assert!((d[0].re.to_f64() + 1.0).abs() < 1e-30);
        assert!(d[0].im.to_f64().abs() < 1e-30);
        for k in 1..4 {
            assert!(d[k].abs().to_f64() < 1e-30);
        }

        // y^2 - x at (1,1): rho = sqrt(x): 1/2, -1/4, 3/8, -15/16
        let p = BiPoly::from_int_terms(&[(0, 2, 1), (1, 0, -1)]);
        let one = BigComplex::one(prec);
        let d = implicit_derivs(&p, &one, &one, 4, prec).unwrap();
        assert!((d[0].re.to_f64() - 0.5).abs() < 1e-30);
        assert!((d[1].re.to_f64() + 0.25).abs() < 1e-30);
        assert!((d[2].re.to_f64() - 0.375).abs() < 1e-30);
        assert!((d[3].re.to_f64() + 0.9375).abs() < 1e-30);
    }

    #[test]
    fn implicit_derivs_critical_point() {
        let p = BiPoly::from_int_terms(&[(0, 2, 1), (1, 0, -1)]); // y^2 - x
        let zero = BigComplex::zero(128);
        assert!(matches!(
            implicit_derivs(&p, &zero, &zero, 2, 128),
            Err(Error::VanishingPartialY)
        ));
    }

    #[test]
    fn jet_agrees_with_q_route() {
        let prec = 192;
        let p = BiPoly::from_int_terms(&[(0, 2, 1), (1, 1, 1), (0, 0, 1)]); // y^2+xy+1
        let alpha = BigComplex::from_f64(0.3, -0.2, prec);
        let beta = roots_at(&p, &alpha, prec).unwrap()[0].clone();
        let jet = root_jet(&p, &alpha, &beta, 7, prec).unwrap();
        let derivs = implicit_derivs(&p, &alpha, &beta, 6, prec).unwrap();
        let mut fact = Float::with_val(prec, 1);
        for k in 1..=6usize {
            fact *= k as u32;
            let from_jet = jet[k].scale(&fact);
            let diff = from_jet.sub(&derivs[k - 1]).abs().to_f64();
            assert!(diff < 1e-40, "order {k}: diff {diff}");
        }
    }

    #[test]
    fn maclaurin_examples() {
        let prec = 192;
        // (1+x+y, alpha=xi^-1, beta=xi): b1 = -i*xi = sqrt(3)/2 + i/2
        let alpha = xi_point(prec, true);
        let beta = xi_point(prec, false);
        let b = maclaurin_b(&one_x_y(), &alpha, &beta, 4, prec).unwrap();
        assert!((b[0].re.to_f64() - 3f64.sqrt() / 2.0).abs() < 1e-30);
        assert!((b[0].im.to_f64() - 0.5).abs() < 1e-30);

        // y - x at (1,1): f(t) = it
        let p = BiPoly::from_int_terms(&[(0, 1, 1), (1, 0, -1)]);
        let one = UnitPoint::from_angle(Float::new(prec));
        let b = maclaurin_b(&p, &one, &one, 4, prec).unwrap();
        assert!((b[0].im.to_f64() - 1.0).abs() < 1e-30);
        assert!(b[0].re.to_f64().abs() < 1e-30);
        for k in 1..4 {
            assert!(b[k].abs().to_f64() < 1e-30);
        }
    }

    #[test]
    fn sign_examples() {
        let prec = 192;
        let xi = xi_point(prec, false);
        let xi_inv = xi_point(prec, true);
        let p = one_x_y();
        assert_eq!(sign_at(&p, &xi_inv, &xi, prec).unwrap(), (1, 1));
        assert_eq!(sign_at(&p, &xi, &xi_inv, prec).unwrap(), (-1, 1));
        // conjugation reverses the crossing orientation
        let (s1, _) = sign_at(&p, &xi_inv, &xi, prec).unwrap();
        let (s2, _) = sign_at(&p, &xi, &xi_inv, prec).unwrap();
        assert_eq!(s1, -s2);
    }

    #[test]
    fn sign_undetermined_for_toric() {
        let prec = 128;
        let p = BiPoly::from_int_terms(&[(0, 1, 1), (1, 0, -1)]); // y - x
        let one = UnitPoint::from_angle(Float::new(prec));
        assert!(matches!(
            sign_at(&p, &one, &one, prec),
            Err(Error::UndeterminedOrder(_))
        ));
    }
}
