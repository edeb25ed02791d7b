//! Exact bivariate polynomials over Gaussian rationals: formal derivatives,
//! reciprocal polynomial, resultants (two independent algorithms), curve
//! substitution, and the critical-point hypothesis check.

use std::collections::BTreeMap;
use std::fmt;

use rug::ops::Pow;
use rug::{Complete, Integer, Rational};

use crate::error::{Error, Result};
use crate::numerics::{pow2, BigComplex};

/// Exact Gaussian rational `re + im*i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GaussRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussRational { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        GaussRational::new(Rational::from(n), Rational::from(0))
    }

    pub fn from_rational(re: Rational) -> Self {
        GaussRational::new(re, Rational::from(0))
    }

    pub fn zero() -> Self {
        GaussRational::from_int(0)
    }

    pub fn one() -> Self {
        GaussRational::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re == 0 && self.im == 0
    }

    pub fn is_real(&self) -> bool {
        self.im == 0
    }

    pub fn conj(&self) -> Self {
        GaussRational::new(self.re.clone(), (-&self.im).complete())
    }

    pub fn add(&self, o: &Self) -> Self {
        GaussRational::new((&self.re + &o.re).complete(), (&self.im + &o.im).complete())
    }

    pub fn sub(&self, o: &Self) -> Self {
        GaussRational::new((&self.re - &o.re).complete(), (&self.im - &o.im).complete())
    }

    pub fn neg(&self) -> Self {
        GaussRational::new((-&self.re).complete(), (-&self.im).complete())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let re = (&self.re * &o.re).complete() - (&self.im * &o.im).complete();
        let im = (&self.re * &o.im).complete() + (&self.im * &o.re).complete();
        GaussRational::new(re, im)
    }

    pub fn scale_int(&self, n: &Integer) -> Self {
        GaussRational::new((&self.re * n).complete(), (&self.im * n).complete())
    }

    pub fn norm_sqr(&self) -> Rational {
        (&self.re * &self.re).complete() + (&self.im * &self.im).complete()
    }

    pub fn recip(&self) -> Self {
        let n = self.norm_sqr();
        GaussRational::new(
            (&self.re / &n).complete(),
            -(&self.im / &n).complete(),
        )
    }

    pub fn div(&self, o: &Self) -> Self {
        self.mul(&o.recip())
    }

    pub fn to_complex(&self, prec: u32) -> BigComplex {
        BigComplex::from_rationals(&self.re, &self.im, prec)
    }
}

impl fmt::Display for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im == 0 {
            write!(f, "{}", self.re)
        } else if self.re == 0 {
            write!(f, "{}i", self.im)
        } else if self.im > 0 {
            write!(f, "{}+{}i", self.re, self.im)
        } else {
            write!(f, "{}{}i", self.re, self.im)
        }
    }
}

// ---------------------------------------------------------------------------
// UniPoly
// ---------------------------------------------------------------------------

/// Univariate polynomial over Gaussian rationals, lowest degree first,
/// leading coefficient nonzero (the zero polynomial has no coefficients).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct UniPoly {
    coeffs: Vec<GaussRational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<GaussRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly::default()
    }

    pub fn one() -> Self {
        UniPoly::constant(GaussRational::one())
    }

    pub fn constant(c: GaussRational) -> Self {
        UniPoly::new(vec![c])
    }

    pub fn monomial(c: GaussRational, e: usize) -> Self {
        let mut v = vec![GaussRational::zero(); e + 1];
        v[e] = c;
        UniPoly::new(v)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> GaussRational {
        self.coeffs.get(k).cloned().unwrap_or_else(GaussRational::zero)
    }

    pub fn coeffs(&self) -> &[GaussRational] {
        &self.coeffs
    }

    pub fn lc(&self) -> GaussRational {
        self.coeffs.last().cloned().unwrap_or_else(GaussRational::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for k in 0..n {
            v.push(self.coeff(k).add(&o.coeff(k)));
        }
        UniPoly::new(v)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        UniPoly::new(self.coeffs.iter().map(|c| c.neg()).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut v = vec![GaussRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].add(&a.mul(b));
            }
        }
        UniPoly::new(v)
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        let mut v = Vec::with_capacity(self.coeffs.len() - 1);
        for (k, c) in self.coeffs.iter().enumerate().skip(1) {
            v.push(c.scale_int(&Integer::from(k)));
        }
        UniPoly::new(v)
    }

    /// Field division with remainder: `self = q*div + r`, `deg r < deg div`.
    pub fn div_rem(&self, div: &Self) -> (Self, Self) {
        assert!(!div.is_zero(), "division by zero polynomial");
        let dd = div.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let lc_inv = div.lc().recip();
        let mut rem = self.coeffs.clone();
        let mut q = vec![GaussRational::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = rem[k].mul(&lc_inv);
            if c.is_zero() {
                continue;
            }
            q[k - dd] = c.clone();
            for (j, b) in div.coeffs.iter().enumerate() {
                rem[k - dd + j] = rem[k - dd + j].sub(&c.mul(b));
            }
        }
        rem.truncate(dd);
        (UniPoly::new(q), UniPoly::new(rem))
    }

    /// Exact division; panics if the remainder is nonzero.
    pub fn exact_div(&self, div: &Self) -> Self {
        let (q, r) = self.div_rem(div);
        assert!(r.is_zero(), "exact_div: nonzero remainder");
        q
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return UniPoly::zero();
        }
        self.scale(&self.lc().recip())
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Yun's squarefree decomposition: returns `(g_i, i)` with
    /// `self = lc * prod g_i^i`, each `g_i` monic and squarefree.
    pub fn squarefree_decomposition(&self) -> Vec<(UniPoly, u32)> {
        assert!(!self.is_zero());
        let f = self.monic();
        if f.degree() == Some(0) {
            return Vec::new();
        }
        let fp = f.derivative();
        let g = f.gcd(&fp);
        if g.degree() == Some(0) {
            return vec![(f, 1)];
        }
        let mut out = Vec::new();
        let mut c = f.exact_div(&g);
        let mut d = fp.exact_div(&g).sub(&c.derivative());
        let mut i = 1u32;
        while c.degree() != Some(0) {
            let a = c.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            c = c.exact_div(&a);
            d = d.exact_div(&a).sub(&c.derivative());
            i += 1;
        }
        out
    }

    pub fn eval_gauss(&self, x: &GaussRational) -> GaussRational {
        let mut acc = GaussRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn eval_complex(&self, x: &BigComplex, prec: u32) -> BigComplex {
        let mut acc = BigComplex::zero(prec);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&c.to_complex(prec));
        }
        acc
    }

    pub fn to_numeric(&self, prec: u32) -> Vec<BigComplex> {
        self.coeffs.iter().map(|c| c.to_complex(prec)).collect()
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if k == 0 {
                write!(f, "({c})")?;
            } else if k == 1 {
                write!(f, "({c})*x")?;
            } else {
                write!(f, "({c})*x^{k}")?;
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// BiPoly
// ---------------------------------------------------------------------------

/// Bivariate polynomial over Gaussian rationals with cached degrees.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BiPoly {
    coeffs: BTreeMap<(u32, u32), GaussRational>,
    deg_x: u32,
    deg_y: u32,
}

impl BiPoly {
    pub fn from_map(coeffs: BTreeMap<(u32, u32), GaussRational>) -> Self {
        let coeffs: BTreeMap<_, _> = coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let deg_x = coeffs.keys().map(|&(i, _)| i).max().unwrap_or(0);
        let deg_y = coeffs.keys().map(|&(_, j)| j).max().unwrap_or(0);
        BiPoly {
            coeffs,
            deg_x,
            deg_y,
        }
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_int_terms(terms: &[(u32, u32, i64)]) -> Self {
        let mut m = BTreeMap::new();
        for &(i, j, c) in terms {
            let e = m.entry((i, j)).or_insert_with(GaussRational::zero);
            *e = e.add(&GaussRational::from_int(c));
        }
        BiPoly::from_map(m)
    }

    pub fn zero() -> Self {
        BiPoly::from_map(BTreeMap::new())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg_x(&self) -> u32 {
        self.deg_x
    }

    pub fn deg_y(&self) -> u32 {
        self.deg_y
    }

    pub fn coeff(&self, i: u32, j: u32) -> GaussRational {
        self.coeffs
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(GaussRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &GaussRational)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut m = self.coeffs.clone();
        for (&k, c) in &o.coeffs {
            let e = m.entry(k).or_insert_with(GaussRational::zero);
            *e = e.add(c);
        }
        BiPoly::from_map(m)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        BiPoly::from_map(
            self.coeffs
                .iter()
                .map(|(&k, c)| (k, c.neg()))
                .collect(),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut m: BTreeMap<(u32, u32), GaussRational> = BTreeMap::new();
        for (&(i1, j1), c1) in &self.coeffs {
            for (&(i2, j2), c2) in &o.coeffs {
                let k = (i1 + i2, j1 + j2);
                let e = m.entry(k).or_insert_with(GaussRational::zero);
                *e = e.add(&c1.mul(c2));
            }
        }
        BiPoly::from_map(m)
    }

    /// Mixed partial derivative of order `(i, j)`.
    pub fn partial(&self, i: u32, j: u32) -> BiPoly {
        let mut m = BTreeMap::new();
        for (&(a, b), c) in &self.coeffs {
            if a < i || b < j {
                continue;
            }
            let mut factor = Integer::from(1);
            for t in 0..i {
                factor *= Integer::from(a - t);
            }
            for t in 0..j {
                factor *= Integer::from(b - t);
            }
            m.insert((a - i, b - j), c.scale_int(&factor));
        }
        BiPoly::from_map(m)
    }

    /// Reciprocal polynomial `P* = x^{d1} y^{d2} conj(P)(1/x, 1/y)`.
    pub fn reciprocal(&self) -> BiPoly {
        assert!(!self.is_zero(), "reciprocal of the zero polynomial");
        let (d1, d2) = (self.deg_x, self.deg_y);
        BiPoly::from_map(
            self.coeffs
                .iter()
                .map(|(&(i, j), c)| ((d1 - i, d2 - j), c.conj()))
                .collect(),
        )
    }

    /// If `P* = c P` returns the constant `c`, else `None`.
    pub fn is_asr(&self) -> Option<GaussRational> {
        assert!(!self.is_zero());
        let star = self.reciprocal();
        if star.coeffs.len() != self.coeffs.len() {
            return None;
        }
        let (&k0, c0) = self.coeffs.iter().next().unwrap();
        let s0 = star.coeffs.get(&k0)?;
        let c = s0.div(c0);
        for (&k, v) in &self.coeffs {
            let sv = star.coeffs.get(&k)?;
            if sv != &v.mul(&c) {
                return None;
            }
        }
        Some(c)
    }

    /// Coefficient of `y^j` as a polynomial in `x`.
    pub fn coeff_y(&self, j: u32) -> UniPoly {
        let mut v = vec![GaussRational::zero(); self.deg_x as usize + 1];
        for (&(i, jj), c) in &self.coeffs {
            if jj == j {
                v[i as usize] = c.clone();
            }
        }
        UniPoly::new(v)
    }

    /// All `a_j(x)` for `j = 0..=deg_y`.
    pub fn y_coeffs(&self) -> Vec<UniPoly> {
        (0..=self.deg_y).map(|j| self.coeff_y(j)).collect()
    }

    pub fn eval_xy(&self, x: &BigComplex, y: &BigComplex, prec: u32) -> BigComplex {
        let mut acc = BigComplex::zero(prec);
        for a in self.y_coeffs().iter().rev() {
            acc = acc.mul(y).add(&a.eval_complex(x, prec));
        }
        acc
    }

    /// Numeric values of the `a_j(x0)`.
    pub fn y_coeffs_at(&self, x0: &BigComplex, prec: u32) -> Vec<BigComplex> {
        self.y_coeffs()
            .iter()
            .map(|a| a.eval_complex(x0, prec))
            .collect()
    }

    /// Exact coefficient collection of `P(x, x^n)`.
    pub fn substitute_curve(&self, n: u64) -> Result<UniPoly> {
        assert!(n >= 1);
        let mut v: Vec<GaussRational> = Vec::new();
        for (&(i, j), c) in &self.coeffs {
            let e = i as u64 + n * j as u64;
            let e = usize::try_from(e)
                .map_err(|_| Error::InvalidArg("curve exponent overflow".into()))?;
            if v.len() <= e {
                v.resize(e + 1, GaussRational::zero());
            }
            v[e] = v[e].add(c);
        }
        let p = UniPoly::new(v);
        if p.is_zero() {
            return Err(Error::IdenticallyZeroCurve(n));
        }
        Ok(p)
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j), c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            if i == 1 {
                write!(f, "*x")?;
            } else if i > 1 {
                write!(f, "*x^{i}")?;
            }
            if j == 1 {
                write!(f, "*y")?;
            } else if j > 1 {
                write!(f, "*y^{j}")?;
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Resultants
// ---------------------------------------------------------------------------

/// Polynomial in `y` with `UniPoly`-in-`x` coefficients; internal helper for
/// the resultant routines.
#[derive(Clone, Debug)]
struct YPoly(Vec<UniPoly>); // lowest y-degree first, trimmed

impl YPoly {
    fn from_bipoly(p: &BiPoly) -> Self {
        let mut v = p.y_coeffs();
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        YPoly(v)
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn deg(&self) -> usize {
        assert!(!self.is_zero());
        self.0.len() - 1
    }

    fn lc(&self) -> &UniPoly {
        self.0.last().unwrap()
    }

    fn scale(&self, c: &UniPoly) -> YPoly {
        YPoly::trim(self.0.iter().map(|a| a.mul(c)).collect())
    }

    fn trim(mut v: Vec<UniPoly>) -> YPoly {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        YPoly(v)
    }

    fn exact_div_coeffs(&self, c: &UniPoly) -> YPoly {
        YPoly::trim(self.0.iter().map(|a| a.exact_div(c)).collect())
    }

    /// Pseudo-remainder: returns `lc(b)^(deg a - deg b + 1) * a  mod  b`.
    fn prem(&self, b: &YPoly) -> YPoly {
        let d = b.lc().clone();
        let n = self.deg() - b.deg();
        let mut r = self.clone();
        for k in (0..=n).rev() {
            if !r.is_zero() && r.deg() == b.deg() + k {
                let top = r.lc().clone();
                // r = r*d - b * top * y^k
                let mut rv: Vec<UniPoly> = r.0.iter().map(|a| a.mul(&d)).collect();
                for (j, bc) in b.0.iter().enumerate() {
                    let idx = j + k;
                    let sub = bc.mul(&top);
                    if idx < rv.len() {
                        rv[idx] = rv[idx].sub(&sub);
                    } else {
                        rv.resize(idx + 1, UniPoly::zero());
                        rv[idx] = sub.neg();
                    }
                }
                r = YPoly::trim(rv);
            } else {
                r = r.scale(&d);
            }
        }
        r
    }
}

fn unipoly_pow(p: &UniPoly, e: usize) -> UniPoly {
    let mut out = UniPoly::one();
    for _ in 0..e {
        out = out.mul(p);
    }
    out
}

/// Resultant with respect to `y` via the Sylvester matrix, computed by
/// Bareiss fraction-free elimination over `Q(i)[x]` entries.
pub fn resultant_y(a: &BiPoly, b: &BiPoly) -> Result<UniPoly> {
    let (pa, pb) = (YPoly::from_bipoly(a), YPoly::from_bipoly(b));
    if pa.is_zero() || pb.is_zero() {
        return Err(Error::InvalidArg("resultant of a zero polynomial".into()));
    }
    let (da, db) = (pa.deg(), pb.deg());
    if da == 0 && db == 0 {
        return Err(Error::InvalidArg(
            "resultant_y: both arguments constant in y".into(),
        ));
    }
    if db == 0 {
        return Ok(unipoly_pow(&pb.0[0], da));
    }
    if da == 0 {
        return Ok(unipoly_pow(&pa.0[0], db));
    }
    let n = da + db;
    // rows 0..db: shifts of a; rows db..n: shifts of b (highest coeff first)
    let mut m = vec![vec![UniPoly::zero(); n]; n];
    for r in 0..db {
        for (k, c) in pa.0.iter().enumerate() {
            m[r][r + (da - k)] = c.clone();
        }
    }
    for r in 0..da {
        for (k, c) in pb.0.iter().enumerate() {
            m[db + r][r + (db - k)] = c.clone();
        }
    }
    // Bareiss
    let mut sign = 1i32;
    let mut prev = UniPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let swap = (k + 1..n).find(|&r| !m[r][k].is_zero());
            match swap {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(UniPoly::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = t.exact_div(&prev);
            }
        }
        for i in k + 1..n {
            m[i][k] = UniPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let mut det = m[n - 1][n - 1].clone();
    if sign < 0 {
        det = det.neg();
    }
    Ok(det)
}

/// Resultant with respect to `y` via the subresultant polynomial remainder
/// sequence. Independent of [`resultant_y`]; the two must agree exactly.
pub fn resultant_y_prs(a: &BiPoly, b: &BiPoly) -> Result<UniPoly> {
    let (pa, pb) = (YPoly::from_bipoly(a), YPoly::from_bipoly(b));
    if pa.is_zero() || pb.is_zero() {
        return Err(Error::InvalidArg("resultant of a zero polynomial".into()));
    }
    if pa.deg() == 0 && pb.deg() == 0 {
        return Err(Error::InvalidArg(
            "resultant_y: both arguments constant in y".into(),
        ));
    }
    Ok(res_prs(pa, pb))
}

fn res_prs(mut a: YPoly, mut b: YPoly) -> UniPoly {
    let mut s = 1i32;
    if a.deg() < b.deg() {
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            s = -s;
        }
        std::mem::swap(&mut a, &mut b);
    }
    if b.deg() == 0 {
        let r = unipoly_pow(&b.0[0], a.deg());
        return if s < 0 { r.neg() } else { r };
    }
    let mut g = UniPoly::one();
    let mut h = UniPoly::one();
    loop {
        let d = a.deg();
        let e = b.deg();
        let delta = d - e;
        if d % 2 == 1 && e % 2 == 1 {
            s = -s;
        }
        let r = a.prem(&b);
        a = b;
        if r.is_zero() {
            // common nonconstant factor
            return UniPoly::zero();
        }
        let divisor = g.mul(&unipoly_pow(&h, delta));
        b = r.exact_div_coeffs(&divisor);
        g = a.lc().clone();
        if delta > 0 {
            h = unipoly_pow(&g, delta).exact_div(&unipoly_pow(&h, delta - 1));
        }
        if b.deg() == 0 {
            let da = a.deg();
            // final subresultant normalization
            let num = unipoly_pow(&b.0[0], da);
            let den = unipoly_pow(&h, da.saturating_sub(1));
            let r = num.exact_div(&den);
            return if s < 0 { r.neg() } else { r };
        }
    }
}

/// `R(x) = Res_y(P, dP/dy)`; its roots are the critical points of `P`.
pub fn critical_resultant(p: &BiPoly) -> Result<UniPoly> {
    if p.deg_y() < 1 {
        return Err(Error::InvalidArg(
            "critical_resultant requires deg_y(P) >= 1".into(),
        ));
    }
    resultant_y(p, &p.partial(0, 1))
}

/// Outcome of the critical-point hypothesis check.
#[derive(Clone, Debug)]
pub struct HypothesisReport {
    pub pass: bool,
    /// Critical points within `tol` of the unit circle, with their margins
    /// `||root| - 1|`.
    pub offending: Vec<(BigComplex, f64)>,
    pub resultant_degree: usize,
    pub total_critical_points: usize,
}

/// Checks that `P` and `dP/dy` have no common zero on the unit circle times C,
/// i.e. that `R(x) = Res_y(P, P_y)` has no roots with `||x|-1| < tol`.
pub fn hypothesis_check(p: &BiPoly, tol: Option<f64>, prec: u32) -> Result<HypothesisReport> {
    let r = critical_resultant(p)?;
    if r.is_zero() {
        return Err(Error::DegenerateResultant(
            "Res_y(P, P_y) vanishes identically; P and P_y share a factor".into(),
        ));
    }
    let tol = tol.unwrap_or_else(|| pow2(-(prec as i32) / 2, 64).to_f64());
    if r.degree() == Some(0) {
        return Ok(HypothesisReport {
            pass: true,
            offending: Vec::new(),
            resultant_degree: 0,
            total_critical_points: 0,
        });
    }
    let roots = crate::numerics::polyroots(&r, prec)?;
    let mut offending = Vec::new();
    let mut total = 0usize;
    for (root, mult) in roots.roots.iter().zip(&roots.multiplicities) {
        total += *mult as usize;
        let margin = (root.abs() - 1u32).abs().to_f64();
        if margin < tol {
            offending.push((root.clone(), margin));
        }
    }
    Ok(HypothesisReport {
        pass: offending.is_empty(),
        offending,
        resultant_degree: r.degree().unwrap_or(0),
        total_critical_points: total,
    })
}
