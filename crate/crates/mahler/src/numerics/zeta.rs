//! Riemann zeta at integer arguments and exact Bernoulli numbers.
//!
//! `zeta(s)` for integer `s >= 2` is computed by Euler–Maclaurin summation;
//! for large `s` the defining series already converges at full precision.
//! Negative integer values come from `zeta(-m) = -B_{m+1}/(m+1)` with exact
//! Bernoulli numbers, which are in turn derived from the all-integer tangent
//! number triangle (no rational recurrences, no cancellation).

use std::collections::HashMap;
use std::sync::Mutex;

use rug::ops::{CompleteRound, Pow};
use rug::{Complete, Float, Integer, Rational};

use super::pow2;

static BERNOULLI: Mutex<Vec<Rational>> = Mutex::new(Vec::new());

/// Exact Bernoulli number `B_m` (convention `B_1 = -1/2`).
pub fn bernoulli(m: u32) -> Rational {
    let mut table = BERNOULLI.lock().unwrap();
    if table.len() <= m as usize {
        let need = (m as usize / 2 + 8).max(table.len() / 2 * 2);
        *table = bernoulli_table(2 * need as u32);
    }
    table[m as usize].clone()
}

/// Tangent numbers T_1..T_n: `tan x = sum T_k x^{2k-1}/(2k-1)!`.
fn tangent_numbers(n: usize) -> Vec<Integer> {
    let mut t = vec![Integer::from(0); n + 1];
    if n == 0 {
        return t;
    }
    t[1] = Integer::from(1);
    for k in 2..=n {
        t[k] = (&t[k - 1] * Integer::from(k - 1)).into();
    }
    for k in 2..=n {
        for j in k..=n {
            let a: Integer = (&t[j - 1] * Integer::from(j - k)).into();
            let b: Integer = (&t[j] * Integer::from(j - k + 2)).into();
            t[j] = a + b;
        }
    }
    t
}

fn bernoulli_table(max_m: u32) -> Vec<Rational> {
    let half = (max_m / 2) as usize;
    let tang = tangent_numbers(half);
    let mut out = vec![Rational::from(0); max_m as usize + 1];
    out[0] = Rational::from(1);
    if max_m >= 1 {
        out[1] = Rational::from((-1, 2));
    }
    for k in 1..=half {
        // |B_{2k}| = 2k * T_k / (2^{2k} (2^{2k} - 1)), sign (-1)^{k+1}
        let p = Integer::from(1) << (2 * k as u32);
        let denom: Integer = (&p * (p.clone() - Integer::from(1))).into();
        let mut num: Integer = (&tang[k] * Integer::from(2 * k)).into();
        if k % 2 == 0 {
            num = -num;
        }
        out[2 * k] = Rational::from((num, denom));
    }
    out
}

static ZETA_CACHE: Mutex<Option<HashMap<(u32, i64), Float>>> = Mutex::new(None);

/// `zeta(s)` for integer `s != 1` at the requested precision.
pub fn zeta_int(s: i64, prec: u32) -> Float {
    assert!(s != 1, "zeta has a pole at 1");
    {
        let cache = ZETA_CACHE.lock().unwrap();
        if let Some(map) = cache.as_ref() {
            if let Some(v) = map.get(&(prec, s)) {
                return v.clone();
            }
        }
    }
    let v = zeta_int_uncached(s, prec);
    let mut cache = ZETA_CACHE.lock().unwrap();
    cache
        .get_or_insert_with(HashMap::new)
        .insert((prec, s), v.clone());
    v
}

fn zeta_int_uncached(s: i64, prec: u32) -> Float {
    if s == 0 {
        return Float::with_val(prec, -0.5);
    }
    if s < 0 {
        let m = (-s) as u32;
        if m % 2 == 0 {
            return Float::new(prec); // trivial zeros
        }
        let b = bernoulli(m + 1);
        let v = -Rational::from(b) / Rational::from(m + 1);
        return Float::with_val(prec, &v);
    }
    let s = s as u32;
    let wp = prec + 32;
    if s as u64 >= wp as u64 {
        // 1 + 2^-s + ... is already 1 at this precision
        let mut acc = Float::with_val(wp, 1);
        acc += pow2(-(s as i32), wp);
        let mut v = acc;
        v.set_prec(prec);
        return v;
    }
    if s >= 64 {
        return zeta_direct(s, prec);
    }
    zeta_euler_maclaurin(s, prec)
}

fn zeta_direct(s: u32, prec: u32) -> Float {
    let wp = prec + 32;
    let eps = pow2(-(wp as i32), wp);
    let mut acc = Float::new(wp);
    let mut n = 1u64;
    loop {
        let term = Float::with_val(wp, Integer::from(n).pow(s)).recip();
        if term < eps && n > 2 {
            break;
        }
        acc += term;
        n += 1;
    }
    acc.set_prec(prec);
    acc
}

fn zeta_euler_maclaurin(s: u32, prec: u32) -> Float {
    let wp = prec + 48;
    let eps = pow2(-(wp as i32) - 8, wp);
    let mut nn = ((wp as u64) / 4).max(16);
    'outer: loop {
        // sum_{n<N} n^{-s} + N^{-s}/2 + N^{1-s}/(s-1)
        let nf = Float::with_val(wp, nn);
        let mut acc = Float::new(wp);
        for n in 1..nn {
            acc += Float::with_val(wp, Integer::from(n).pow(s)).recip();
        }
        let n_pow_s = Float::with_val(wp, Integer::from(nn).pow(s)).recip();
        acc += Float::with_val(wp, &n_pow_s / 2u32);
        acc += Float::with_val(wp, &n_pow_s * &nf) / Float::with_val(wp, s - 1);

        // tail: sum_k B_{2k}/(2k)! * (s)(s+1)...(s+2k-2) * N^{-s-2k+1}
        let mut rising = Integer::from(1); // product of (s+j), grows per k
        let mut npow = Float::with_val(wp, &n_pow_s * &nf); // N^{1-s-2k} running
        let n2 = Float::with_val(wp, &nf * &nf);
        let mut last = Float::with_val(wp, f64::INFINITY);
        let mut k = 1u32;
        loop {
            // extend rising factorial to (s)...(s+2k-2): 2k-1 factors
            if k == 1 {
                rising = Integer::from(s);
            } else {
                rising *= Integer::from(s + 2 * k - 3);
                rising *= Integer::from(s + 2 * k - 2);
            }
            npow /= &n2;
            let b = bernoulli(2 * k);
            let coef = Rational::from(b) / Rational::from(Integer::factorial(2 * k).complete());
            let term = Float::with_val(wp, &coef) * Float::with_val(wp, &rising) * &npow;
            let tmag = term.clone().abs();
            if tmag < eps {
                acc += term;
                let mut v = acc;
                v.set_prec(prec);
                return v;
            }
            if tmag > last {
                // divergence of the asymptotic tail before reaching target:
                // restart with a larger N
                nn *= 2;
                continue 'outer;
            }
            last = tmag;
            acc += term;
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::fpi;

    #[test]
    fn bernoulli_small() {
        assert_eq!(bernoulli(0), Rational::from(1));
        assert_eq!(bernoulli(1), Rational::from((-1, 2)));
        assert_eq!(bernoulli(2), Rational::from((1, 6)));
        assert_eq!(bernoulli(3), Rational::from(0));
        assert_eq!(bernoulli(4), Rational::from((-1, 30)));
        assert_eq!(bernoulli(6), Rational::from((1, 42)));
        assert_eq!(bernoulli(8), Rational::from((-1, 30)));
        assert_eq!(bernoulli(10), Rational::from((5, 66)));
        assert_eq!(bernoulli(12), Rational::from((-691, 2730)));
    }

    #[test]
    fn zeta_two_and_four() {
        let prec = 256;
        let pi = fpi(prec);
        let z2 = zeta_int(2, prec);
        let want = pi.clone().square() / 6u32;
        let diff = (z2 - want).abs();
        assert!(diff < pow2(-250, prec));

        let z4 = zeta_int(4, prec);
        let want = pi.square().square() / 90u32;
        assert!((z4 - want).abs() < pow2(-248, prec));
    }

    #[test]
    fn zeta_three_literal() {
        let z3 = zeta_int(3, 128);
        assert!((z3.to_f64() - 1.2020569031595942854).abs() < 1e-15);
    }

    #[test]
    fn zeta_negative() {
        let prec = 128;
        assert!((zeta_int(-1, prec).to_f64() + 1.0 / 12.0).abs() < 1e-20);
        assert!(zeta_int(-2, prec).is_zero());
        assert!((zeta_int(-3, prec).to_f64() - 1.0 / 120.0).abs() < 1e-20);
        assert!((zeta_int(0, prec).to_f64() + 0.5).abs() < 1e-20);
    }

    #[test]
    fn zeta_large_s() {
        let z = zeta_int(100, 128);
        let expect = 1.0 + 2f64.powi(-100);
        assert!((z.to_f64() - expect).abs() < 1e-18);
    }

    #[test]
    fn zeta_precision_consistency() {
        // doubling precision must not move the value beyond the old error
        for s in [2i64, 3, 5, 17, 63] {
            let lo = zeta_int(s, 128);
            let hi = zeta_int(s, 256);
            let diff = (Float::with_val(256, &lo) - &hi).abs();
            assert!(diff < pow2(-120, 256), "zeta({s})");
        }
    }
}
