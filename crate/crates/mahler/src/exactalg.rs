//! Exact integer combinatorics and sparse multivariate integer polynomials.
//!
//! Provides the unsigned Stirling numbers of both kinds, the exponential
//! partial Bell polynomials `B[n,k]`, and the three integer polynomial
//! families built from them:
//!
//! * `Phi[n,k](y0,...)` — encodes the expansion of `(z d/dz)^k` applied to a
//!   power of a function,
//! * `Q[n](w)` — the numerator of the n-th implicit derivative of a root
//!   function, in indeterminates `w[i,j]` standing for mixed partials,
//! * `Psi[r,a] = Phi[r-1,r-a+1](1, Q[1], Q[2], ...)`.
//!
//! All coefficients are exact `rug::Integer`s. Polynomials are kept in a
//! canonical graded-lex order so equal polynomials serialize identically.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Mutex;

use rug::ops::Pow;
use rug::{Complete, Integer, Rational};

use crate::error::{Error, Result};
use crate::numerics::BigComplex;

/// A symbol `y[i]` or `w[i,j]`. Variables order `y` before `w`, then by index.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Var {
    Y(u32),
    W(u32, u32),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Y(i) => write!(f, "y[{i}]"),
            Var::W(i, j) => write!(f, "w[{i},{j}]"),
        }
    }
}

/// Exponent map of a single monomial. Zero exponents are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(BTreeMap<Var, u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(BTreeMap::new())
    }

    pub fn var(v: Var) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: u32) -> Self {
        let mut m = BTreeMap::new();
        if e > 0 {
            m.insert(v, e);
        }
        Monomial(m)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = self.0.clone();
        for (&v, &e) in &other.0 {
            *m.entry(v).or_insert(0) += e;
        }
        Monomial(m)
    }

    pub fn exponents(&self) -> impl Iterator<Item = (&Var, &u32)> {
        self.0.iter()
    }
}

/// Canonical term order: total degree descending, ties broken by the
/// exponent vector, lexicographically descending over the sorted variable
/// list. `Ord` is defined so that ascending `BTreeMap` iteration yields the
/// canonical serialization order directly.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match other.total_degree().cmp(&self.total_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        // Walk the union of variables in ascending Var order; the first
        // position where exponents differ decides (larger exponent first).
        let mut a = self.0.iter().peekable();
        let mut b = other.0.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Less,
                (None, Some(_)) => return Ordering::Greater,
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(vb) {
                    // A variable present only on one side: that side has a
                    // positive exponent at the earlier position, so it sorts
                    // first (is "greater" lexicographically, hence Less here).
                    Ordering::Less => return Ordering::Less,
                    Ordering::Greater => return Ordering::Greater,
                    Ordering::Equal => {
                        match eb.cmp(ea) {
                            Ordering::Equal => {}
                            ord => return ord,
                        }
                        a.next();
                        b.next();
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial with
/// arbitrary-precision integer coefficients over `y[i]` / `w[i,j]`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct IntPoly {
    terms: BTreeMap<Monomial, Integer>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(Integer::from(1))
    }

    pub fn constant(c: Integer) -> Self {
        let mut p = IntPoly::default();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn var(v: Var) -> Self {
        let mut p = IntPoly::default();
        p.add_term(Monomial::var(v), Integer::from(1));
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Integer)> {
        self.terms.iter()
    }

    /// Adds `c * m`, dropping the entry if the coefficient cancels to zero.
    pub fn add_term(&mut self, m: Monomial, c: Integer) {
        if c == 0 {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if *e.get() == 0 {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), (-c).complete()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        let mut out = IntPoly::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), (ca * cb).complete());
            }
        }
        out
    }

    pub fn scale(&self, c: &Integer) -> IntPoly {
        if *c == 0 {
            return IntPoly::zero();
        }
        IntPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), (k * c).complete()))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Integer) -> IntPoly {
        if *c == 0 {
            return IntPoly::zero();
        }
        IntPoly {
            terms: self
                .terms
                .iter()
                .map(|(mm, k)| (mm.mul(m), (k * c).complete()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> IntPoly {
        let mut out = IntPoly::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Total degree of each monomial if they all agree, i.e. the polynomial
    /// is homogeneous. Zero polynomials report `None`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys();
        let d = it.next()?.total_degree();
        it.all(|m| m.total_degree() == d).then_some(d)
    }

    /// Variables occurring with nonzero exponent.
    pub fn vars(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = Vec::new();
        for m in self.terms.keys() {
            for (&v, _) in m.exponents() {
                if !vs.contains(&v) {
                    vs.push(v);
                }
            }
        }
        vs.sort();
        vs
    }

    /// Substitutes a polynomial for every variable.
    pub fn substitute(&self, f: impl Fn(Var) -> IntPoly) -> IntPoly {
        let mut powers: BTreeMap<(Var, u32), IntPoly> = BTreeMap::new();
        let mut out = IntPoly::zero();
        for (m, c) in &self.terms {
            let mut term = IntPoly::constant(c.clone());
            for (&v, &e) in m.exponents() {
                let p = powers
                    .entry((v, e))
                    .or_insert_with(|| f(v).pow(e))
                    .clone();
                term = term.mul(&p);
            }
            out = out.add(&term);
        }
        out
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = *c < 0;
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.clone().abs();
            let mut wrote = false;
            if mag != 1 || m.total_degree() == 0 {
                write!(f, "{mag}")?;
                wrote = true;
            }
            for (v, &e) in m.exponents() {
                if wrote {
                    write!(f, "*")?;
                }
                write!(f, "{v}")?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
                wrote = true;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for IntPoly {
    type Err = Error;

    /// Parses the canonical serialization (any term order accepted).
    fn from_str(s: &str) -> Result<Self> {
        let mut out = IntPoly::zero();
        let bytes = s.as_bytes();
        let mut i = 0usize;
        let err = |pos: usize, msg: &str| Error::Parse {
            pos,
            msg: msg.to_string(),
        };
        let skip_ws = |i: &mut usize| {
            while *i < bytes.len() && bytes[*i].is_ascii_whitespace() {
                *i += 1;
            }
        };
        skip_ws(&mut i);
        if i == bytes.len() {
            return Err(err(i, "empty input"));
        }
        let mut first = true;
        while i < bytes.len() {
            skip_ws(&mut i);
            if i == bytes.len() {
                break;
            }
            let mut sign = 1i32;
            match bytes[i] {
                b'+' => {
                    i += 1;
                }
                b'-' => {
                    sign = -1;
                    i += 1;
                }
                _ if first => {}
                _ => return Err(err(i, "expected '+' or '-'")),
            }
            first = false;
            skip_ws(&mut i);
            let mut coef = Integer::from(sign);
            let mut mon = Monomial::one();
            let mut saw_factor = false;
            loop {
                skip_ws(&mut i);
                if i < bytes.len() && bytes[i].is_ascii_digit() {
                    let start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let n: Integer = s[start..i].parse().map_err(|_| err(start, "bad integer"))?;
                    coef *= n;
                    saw_factor = true;
                } else if i < bytes.len() && (bytes[i] == b'y' || bytes[i] == b'w') {
                    let fam = bytes[i];
                    i += 1;
                    if i >= bytes.len() || bytes[i] != b'[' {
                        return Err(err(i, "expected '['"));
                    }
                    i += 1;
                    let read_u32 = |i: &mut usize| -> Result<u32> {
                        let start = *i;
                        while *i < bytes.len() && bytes[*i].is_ascii_digit() {
                            *i += 1;
                        }
                        s[start..*i].parse().map_err(|_| err(start, "bad index"))
                    };
                    let a = read_u32(&mut i)?;
                    let v = if fam == b'y' {
                        Var::Y(a)
                    } else {
                        if i >= bytes.len() || bytes[i] != b',' {
                            return Err(err(i, "expected ','"));
                        }
                        i += 1;
                        Var::W(a, read_u32(&mut i)?)
                    };
                    if i >= bytes.len() || bytes[i] != b']' {
                        return Err(err(i, "expected ']'"));
                    }
                    i += 1;
                    let mut e = 1u32;
                    if i < bytes.len() && bytes[i] == b'^' {
                        i += 1;
                        let start = i;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                        e = s[start..i].parse().map_err(|_| err(start, "bad exponent"))?;
                    }
                    mon = mon.mul(&Monomial::var_pow(v, e));
                    saw_factor = true;
                } else {
                    return Err(err(i, "expected a factor"));
                }
                skip_ws(&mut i);
                if i < bytes.len() && bytes[i] == b'*' {
                    i += 1;
                    continue;
                }
                break;
            }
            if !saw_factor {
                return Err(err(i, "empty term"));
            }
            out.add_term(mon, coef);
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------------------
// Stirling numbers
// ---------------------------------------------------------------------------

static STIRLING1: Mutex<Vec<Vec<Integer>>> = Mutex::new(Vec::new());
static STIRLING2: Mutex<Vec<Vec<Integer>>> = Mutex::new(Vec::new());

fn stirling_table(table: &Mutex<Vec<Vec<Integer>>>, first_kind: bool, n: u32) -> Vec<Integer> {
    let n = n as usize;
    let mut t = table.lock().unwrap();
    if t.is_empty() {
        t.push(vec![Integer::from(1)]); // row 0: [1]
    }
    while t.len() <= n {
        let m = t.len(); // building row m from row m-1
        let prev = &t[m - 1];
        let mut row = vec![Integer::from(0); m + 1];
        for k in 1..=m {
            let lift = prev.get(k - 1).cloned().unwrap_or_default();
            let stay = prev.get(k).cloned().unwrap_or_default();
            let factor = if first_kind {
                Integer::from(m - 1)
            } else {
                Integer::from(k)
            };
            row[k] = lift + stay * factor;
        }
        t.push(row);
    }
    t[n].clone()
}

/// Unsigned Stirling number of the first kind. Nonzero iff `1 <= k <= n`,
/// except that the (0,0) entry is 1.
pub fn stirling_first(n: u32, k: u32) -> Integer {
    stirling_table(&STIRLING1, true, n)
        .get(k as usize)
        .cloned()
        .unwrap_or_default()
}

/// Stirling number of the second kind, same support as `stirling_first`.
pub fn stirling_second(n: u32, k: u32) -> Integer {
    stirling_table(&STIRLING2, false, n)
        .get(k as usize)
        .cloned()
        .unwrap_or_default()
}

// ---------------------------------------------------------------------------
// Bell / Phi / Q / Psi
// ---------------------------------------------------------------------------

/// Exponential partial Bell polynomial `B[n,k]` in `y[1]..y[n-k+1]`.
///
/// The sum runs over tuples `(j_1,...,j_{n-k+1})` of nonnegative integers
/// with `sum j_i = k` and `sum i*j_i = n`; each contributes
/// `n!/(prod j_i! (i!)^{j_i}) * prod y[i]^{j_i}`.
pub fn bell_partial(n: u32, k: u32) -> IntPoly {
    let mut out = IntPoly::zero();
    if k > n {
        return out;
    }
    if n == 0 {
        return IntPoly::one(); // B[0,0] = 1
    }
    if k == 0 {
        return out; // B[n,0] = 0 for n > 0
    }
    let nfact = Integer::factorial(n).complete();
    let width = (n - k + 1) as usize;
    let mut tuple = vec![0u32; width + 1]; // 1-based
    fn rec(
        i: usize,
        width: usize,
        rem_k: u32,
        rem_n: u32,
        tuple: &mut Vec<u32>,
        nfact: &Integer,
        out: &mut IntPoly,
    ) {
        if i > width {
            if rem_k == 0 && rem_n == 0 {
                let mut denom = Rational::from(1);
                let mut mon = Monomial::one();
                for (idx, &j) in tuple.iter().enumerate().skip(1) {
                    if j == 0 {
                        continue;
                    }
                    let ifact = Integer::factorial(idx as u32).complete();
                    denom *= Integer::factorial(j).complete();
                    denom *= ifact.pow(j);
                    mon = mon.mul(&Monomial::var_pow(Var::Y(idx as u32), j));
                }
                let coef = Rational::from(nfact) / denom;
                debug_assert_eq!(*coef.denom(), 1);
                out.add_term(mon, coef.numer().clone());
            }
            return;
        }
        let max_j = rem_k.min(rem_n / i as u32);
        for j in 0..=max_j {
            tuple[i] = j;
            rec(i + 1, width, rem_k - j, rem_n - j * i as u32, tuple, nfact, out);
        }
        tuple[i] = 0;
    }
    rec(1, width, k, n, &mut tuple, &nfact, &mut out);
    out
}

/// `Phi[n,k] = sum_{i,j} (-1)^{i-k} c(i,k) S(n,j) y[0]^{n-i} B[j,i](y[1],...)`
/// with summands vanishing outside `0 <= k <= i <= j <= n`. Identically zero
/// when `n < k` or when `k = 0 < n`; homogeneous of degree `n` otherwise.
pub fn phi_poly(n: u32, k: u32) -> IntPoly {
    let mut out = IntPoly::zero();
    for i in k..=n {
        let c = stirling_first(i, k);
        if c == 0 {
            continue;
        }
        for j in i..=n {
            let s = stirling_second(n, j);
            if s == 0 {
                continue;
            }
            let mut coef = (&c * &s).complete();
            if (i - k) % 2 == 1 {
                coef = -coef;
            }
            let b = bell_partial(j, i);
            out = out.add(&b.mul_monomial(&Monomial::var_pow(Var::Y(0), n - i), &coef));
        }
    }
    out
}

static QPOLY_CACHE: Mutex<BTreeMap<u32, IntPoly>> = Mutex::new(BTreeMap::new());

/// `Q[n]`: the integer polynomial in `w[i,j]` (i+j <= n) such that the n-th
/// derivative of a root function is `Q[n]/w[0,1]^{2n-1}` under the
/// substitution `w[i,j] -> (d^{i+j} P/dx^i dy^j)(x, rho(x))`.
///
/// Enumerates the index set of all doubly-indexed exponent sequences `e`
/// with `e[0,0] = 0`, `sum i*e = n`, `sum j*e = 2n-2`, `sum e = 2n-1`;
/// coefficients are assembled in exact rational arithmetic and asserted
/// integral rather than trusting cancellation.
pub fn q_poly(n: u32) -> IntPoly {
    assert!(n >= 1, "q_poly requires n >= 1");
    if let Some(p) = QPOLY_CACHE.lock().unwrap().get(&n) {
        return p.clone();
    }

    // positions (i,j) != (0,0) with i+j <= n
    let mut positions: Vec<(u32, u32)> = Vec::new();
    for i in 0..=n {
        for j in 0..=(n - i) {
            if i + j >= 1 {
                positions.push((i, j));
            }
        }
    }
    // suffix maxima used for feasibility pruning
    let mut suf_max_i = vec![0u32; positions.len() + 1];
    let mut suf_max_j = vec![0u32; positions.len() + 1];
    for t in (0..positions.len()).rev() {
        suf_max_i[t] = suf_max_i[t + 1].max(positions[t].0);
        suf_max_j[t] = suf_max_j[t + 1].max(positions[t].1);
    }

    let target_i = n;
    let target_j = 2 * n - 2;
    let target_c = 2 * n - 1;

    let mut out = IntPoly::zero();
    let mut exps = vec![0u32; positions.len()];

    #[allow(clippy::too_many_arguments)]
    fn rec(
        t: usize,
        rem_i: u32,
        rem_j: u32,
        rem_c: u32,
        n: u32,
        positions: &[(u32, u32)],
        suf_max_i: &[u32],
        suf_max_j: &[u32],
        exps: &mut [u32],
        out: &mut IntPoly,
    ) {
        if t == positions.len() {
            if rem_i == 0 && rem_j == 0 && rem_c == 0 {
                emit(n, positions, exps, out);
            }
            return;
        }
        // feasibility: remaining slots must be able to cover rem_i and rem_j
        if (suf_max_i[t] as u64) * (rem_c as u64) < rem_i as u64
            || (suf_max_j[t] as u64) * (rem_c as u64) < rem_j as u64
        {
            return;
        }
        let (i, j) = positions[t];
        let mut max_e = rem_c;
        if i > 0 {
            max_e = max_e.min(rem_i / i);
        }
        if j > 0 {
            max_e = max_e.min(rem_j / j);
        }
        for e in 0..=max_e {
            exps[t] = e;
            rec(
                t + 1,
                rem_i - e * i,
                rem_j - e * j,
                rem_c - e,
                n,
                positions,
                suf_max_i,
                suf_max_j,
                exps,
                out,
            );
        }
        exps[t] = 0;
    }

    fn emit(n: u32, positions: &[(u32, u32)], exps: &[u32], out: &mut IntPoly) {
        let e01 = positions
            .iter()
            .zip(exps)
            .find(|((i, j), _)| *i == 0 && *j == 1)
            .map(|(_, &e)| e)
            .unwrap_or(0);
        let mut num = Integer::factorial(n).complete();
        num *= Integer::factorial(2 * n - 2 - e01).complete();
        num *= Integer::factorial(e01).complete();
        let mut denom = Integer::from(1);
        let mut mon = Monomial::one();
        for (&(i, j), &e) in positions.iter().zip(exps) {
            if e == 0 {
                continue;
            }
            denom *= Integer::factorial(e).complete();
            let ifjf = Integer::factorial(i).complete() * Integer::factorial(j).complete();
            denom *= ifjf.pow(e);
            mon = mon.mul(&Monomial::var_pow(Var::W(i, j), e));
        }
        let coef = Rational::from((num, denom));
        assert_eq!(*coef.denom(), 1, "b_(n,e) must be integral");
        let mut c = coef.numer().clone();
        if (2 * n - 1 - e01) % 2 == 1 {
            c = -c;
        }
        out.add_term(mon, c);
    }

    rec(
        0,
        target_i,
        target_j,
        target_c,
        n,
        &positions,
        &suf_max_i,
        &suf_max_j,
        &mut exps,
        &mut out,
    );

    QPOLY_CACHE.lock().unwrap().insert(n, out.clone());
    out
}

/// `Psi[r,a] = Phi[r-1, r-a+1](1, Q[1], Q[2], ...)` for `2 <= a <= r`,
/// an integer polynomial in `w[i,j]` with `i+j <= a-1`.
pub fn psi_poly(r: u32, a: u32) -> Result<IntPoly> {
    if a < 2 || a > r {
        return Err(Error::InvalidArg(format!(
            "psi_poly requires 2 <= a <= r, got r={r}, a={a}"
        )));
    }
    let phi = phi_poly(r - 1, r - a + 1);
    Ok(phi.substitute(|v| match v {
        Var::Y(0) => IntPoly::one(),
        Var::Y(m) => q_poly(m),
        w => IntPoly::var(w),
    }))
}

/// Evaluates `p` at the given complex assignment. Every variable occurring
/// in `p` must be present. Powers are cached per variable.
pub fn eval_intpoly(
    p: &IntPoly,
    assign: &BTreeMap<Var, BigComplex>,
    prec: u32,
) -> Result<BigComplex> {
    let mut powers: BTreeMap<(Var, u32), BigComplex> = BTreeMap::new();
    let mut acc = BigComplex::zero(prec);
    for (m, c) in p.terms() {
        let mut term = BigComplex::from_integer(c, prec);
        for (&v, &e) in m.exponents() {
            let base = assign
                .get(&v)
                .ok_or_else(|| Error::MissingVariable(v.to_string()))?;
            let p = powers.entry((v, e)).or_insert_with(|| base.powu(e));
            term = term.mul(p);
        }
        acc = acc.add(&term);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::str::FromStr;

    fn ip(s: &str) -> IntPoly {
        IntPoly::from_str(s).unwrap()
    }

    #[test]
    fn stirling_first_values() {
        assert_eq!(stirling_first(0, 0), 1);
        assert_eq!(stirling_first(3, 1), 2);
        assert_eq!(stirling_first(2, 3), 0);
        assert_eq!(stirling_first(4, 2), 11);
        assert_eq!(stirling_first(0, 1), 0);
        assert_eq!(stirling_first(5, 0), 0);
    }

    #[test]
    fn stirling_second_values() {
        for n in 0..=20 {
            assert_eq!(stirling_second(n, n), 1);
        }
        assert_eq!(stirling_second(4, 2), 7);
        assert_eq!(stirling_second(0, 1), 0);
        assert_eq!(stirling_second(1, 0), 0);
        assert_eq!(stirling_second(5, 3), 25);
    }

    #[test]
    fn bell_diagonal_and_32() {
        for n in 1..=8 {
            assert_eq!(bell_partial(n, n), ip(&format!("y[1]^{n}")));
        }
        assert_eq!(bell_partial(3, 2), ip("3*y[1]*y[2]"));
        assert_eq!(bell_partial(4, 2), ip("4*y[1]*y[3] + 3*y[2]^2"));
        assert_eq!(bell_partial(0, 0), IntPoly::one());
        assert!(bell_partial(3, 4).is_zero());
        assert!(bell_partial(3, 0).is_zero());
    }

    /// Substituting y = (-x, 0, 0, ...) kills every B[j,i] with i != j.
    #[test]
    fn bell_first_arg_only() {
        for j in 1..=6u32 {
            for i in 1..j {
                let b = bell_partial(j, i);
                // keep only monomials purely in y[1]
                let survives = b
                    .terms()
                    .any(|(m, _)| m.exponents().all(|(v, _)| *v == Var::Y(1)));
                assert!(!survives, "B[{j},{i}] should vanish at (y1,0,...,0)");
            }
        }
    }

    #[test]
    fn phi_table_row_0_to_2() {
        assert_eq!(phi_poly(0, 0), IntPoly::one());
        for k in 1..=4 {
            assert!(phi_poly(0, k).is_zero());
        }
        assert!(phi_poly(1, 0).is_zero());
        assert_eq!(phi_poly(1, 1), ip("y[1]"));
        assert!(phi_poly(1, 2).is_zero());
        assert_eq!(phi_poly(2, 1), ip("y[0]*y[1] + y[0]*y[2] - y[1]^2"));
        assert_eq!(phi_poly(2, 2), ip("y[1]^2"));
    }

    #[test]
    fn phi_table_row_3() {
        assert_eq!(
            phi_poly(3, 1),
            ip("y[0]^2*y[1] + 3*y[0]^2*y[2] + y[0]^2*y[3] - 3*y[0]*y[1]^2 - 3*y[0]*y[1]*y[2] + 2*y[1]^3")
        );
        assert_eq!(phi_poly(3, 2), ip("3*y[0]*y[1]^2 + 3*y[0]*y[1]*y[2] - 3*y[1]^3"));
        assert_eq!(phi_poly(3, 3), ip("y[1]^3"));
    }

    #[test]
    fn phi_table_row_4() {
        assert_eq!(
            phi_poly(4, 1),
            ip("y[0]^3*y[1] + 7*y[0]^3*y[2] + 6*y[0]^3*y[3] + y[0]^3*y[4] \
                - 7*y[0]^2*y[1]^2 - 18*y[0]^2*y[1]*y[2] - 4*y[0]^2*y[1]*y[3] - 3*y[0]^2*y[2]^2 \
                + 12*y[0]*y[1]^3 + 12*y[0]*y[1]^2*y[2] - 6*y[1]^4")
        );
        assert_eq!(
            phi_poly(4, 2),
            ip("7*y[0]^2*y[1]^2 + 18*y[0]^2*y[1]*y[2] + 4*y[0]^2*y[1]*y[3] + 3*y[0]^2*y[2]^2 \
                - 18*y[0]*y[1]^2*y[2] - 18*y[0]*y[1]^3 + 11*y[1]^4")
        );
        assert_eq!(phi_poly(4, 3), ip("6*y[0]*y[1]^2*y[2] + 6*y[0]*y[1]^3 - 6*y[1]^4"));
        assert_eq!(phi_poly(4, 4), ip("y[1]^4"));
    }

    #[test]
    fn phi_homogeneous_up_to_12() {
        for n in 0..=12u32 {
            for k in 0..=12u32 {
                let p = phi_poly(n, k);
                if !p.is_zero() {
                    assert_eq!(p.homogeneous_degree(), Some(n), "Phi[{n},{k}]");
                }
            }
        }
    }

    #[test]
    fn phi_k0_is_zero_or_one() {
        assert_eq!(phi_poly(0, 0), IntPoly::one());
        for n in 1..=12 {
            assert!(phi_poly(n, 0).is_zero(), "Phi[{n},0]");
        }
    }

    #[test]
    fn phi_10_1_term_count() {
        // Sanity count quoted as 138 terms; recorded, not forced.
        let n = phi_poly(10, 1).num_terms();
        println!("Phi[10,1] has {n} terms");
        assert!(n > 100);
    }

    #[test]
    fn q1_q2_displayed_forms() {
        assert_eq!(q_poly(1), ip("-w[1,0]"));
        assert_eq!(
            q_poly(2),
            ip("-w[0,1]^2*w[2,0] + 2*w[0,1]*w[1,0]*w[1,1] - w[0,2]*w[1,0]^2")
        );
    }

    #[test]
    fn q3_degree_and_weights() {
        let q = q_poly(3);
        for (m, _) in q.terms() {
            assert_eq!(m.total_degree(), 5);
            let (mut wi, mut wj) = (0u32, 0u32);
            for (v, &e) in m.exponents() {
                if let Var::W(i, j) = v {
                    wi += i * e;
                    wj += j * e;
                }
            }
            assert_eq!((wi, wj), (3, 4));
        }
        assert_eq!(q.num_terms(), 9);
    }

    #[test]
    fn q_integrality_up_to_6() {
        // emit() asserts integrality of every coefficient internally.
        for n in 1..=6 {
            let _ = q_poly(n);
        }
    }

    #[test]
    fn psi_table() {
        assert_eq!(psi_poly(2, 2).unwrap(), ip("-w[1,0]"));
        assert_eq!(psi_poly(3, 2).unwrap(), ip("w[1,0]^2"));
        assert_eq!(
            psi_poly(3, 3).unwrap(),
            ip("-w[0,1]^2*w[2,0] + 2*w[0,1]*w[1,0]*w[1,1] - w[0,2]*w[1,0]^2 - w[1,0]^2 - w[1,0]")
        );
        assert_eq!(psi_poly(4, 2).unwrap(), ip("-w[1,0]^3"));
        assert_eq!(
            psi_poly(4, 3).unwrap(),
            ip("3*w[0,1]^2*w[1,0]*w[2,0] - 6*w[0,1]*w[1,0]^2*w[1,1] + 3*w[0,2]*w[1,0]^3 \
                + 3*w[1,0]^3 + 3*w[1,0]^2")
        );
        assert_eq!(
            psi_poly(4, 4).unwrap(),
            ip("-w[0,1]^4*w[3,0] + 3*w[0,1]^3*w[1,0]*w[2,1] + 3*w[0,1]^3*w[1,1]*w[2,0] \
                - 3*w[0,1]^2*w[1,0]^2*w[1,2] - 3*w[0,1]^2*w[0,2]*w[1,0]*w[2,0] \
                - 6*w[0,1]^2*w[1,0]*w[1,1]^2 + 9*w[0,1]*w[0,2]*w[1,0]^2*w[1,1] \
                + w[0,1]*w[0,3]*w[1,0]^3 - 3*w[0,2]^2*w[1,0]^3 - 3*w[0,1]^2*w[1,0]*w[2,0] \
                + 6*w[0,1]*w[1,0]^2*w[1,1] - 3*w[0,2]*w[1,0]^3 - 3*w[0,1]^2*w[2,0] \
                + 6*w[0,1]*w[1,0]*w[1,1] - 3*w[0,2]*w[1,0]^2 - 2*w[1,0]^3 - 3*w[1,0]^2 - w[1,0]")
        );
    }

    #[test]
    fn psi_rejects_bad_a() {
        assert!(psi_poly(3, 1).is_err());
        assert!(psi_poly(3, 4).is_err());
    }

    #[test]
    fn eval_examples() {
        let prec = 128;
        let mut assign = BTreeMap::new();
        assign.insert(Var::W(1, 0), BigComplex::from_f64(3.0, 0.0, prec));
        let v = eval_intpoly(&q_poly(1), &assign, prec).unwrap();
        assert!((v.re.to_f64() + 3.0).abs() < 1e-12 && v.im.to_f64().abs() < 1e-12);

        let mut assign = BTreeMap::new();
        assign.insert(Var::Y(0), BigComplex::from_f64(1.0, 0.0, prec));
        assign.insert(Var::Y(1), BigComplex::from_f64(1.0, 0.0, prec));
        assign.insert(Var::Y(2), BigComplex::from_f64(0.0, 0.0, prec));
        let v = eval_intpoly(&phi_poly(2, 1), &assign, prec).unwrap();
        assert!(v.abs().to_f64() < 1e-12);

        let psi33 = psi_poly(3, 3).unwrap();
        let mut assign = BTreeMap::new();
        for v in psi33.vars() {
            assign.insert(v, BigComplex::from_f64(1.0, 0.0, prec));
        }
        let v = eval_intpoly(&psi33, &assign, prec).unwrap();
        assert!((v.re.to_f64() + 2.0).abs() < 1e-12);
    }

    #[test]
    fn eval_missing_variable() {
        let assign = BTreeMap::new();
        assert!(matches!(
            eval_intpoly(&q_poly(1), &assign, 64),
            Err(Error::MissingVariable(_))
        ));
    }

    #[test]
    fn display_matches_expected() {
        assert_eq!(q_poly(1).to_string(), "-w[1,0]");
        assert_eq!(
            q_poly(2).to_string(),
            "-w[0,1]^2*w[2,0] + 2*w[0,1]*w[1,0]*w[1,1] - w[0,2]*w[1,0]^2"
        );
        assert_eq!(phi_poly(2, 1).to_string(), "y[0]*y[1] + y[0]*y[2] - y[1]^2");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }

    #[test]
    fn roundtrip_phi_psi() {
        for n in 0..=6 {
            for k in 0..=n {
                let p = phi_poly(n, k);
                if p.is_zero() {
                    continue;
                }
                assert_eq!(ip(&p.to_string()), p);
            }
        }
        for r in 2..=5 {
            for a in 2..=r {
                let p = psi_poly(r, a).unwrap();
                assert_eq!(ip(&p.to_string()), p);
            }
        }
    }
}
