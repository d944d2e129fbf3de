//! Oracles written independently of the library: recursive enumeration,
//! coin-change partition counts and direct q-series expansions.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// All partitions of `n`, parts weakly decreasing.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=max.min(n)).rev() {
            cur.push(k);
            go(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

fn counts(parts: &[usize]) -> Vec<usize> {
    let top = parts.first().copied().unwrap_or(0);
    let mut c = vec![0; top + 2];
    for &p in parts {
        c[p] += 1;
    }
    c
}

pub fn rank(parts: &[usize]) -> i64 {
    parts.first().copied().unwrap_or(0) as i64 - parts.len() as i64
}

/// Raw crank: largest part without ones, else (#parts > #ones) - #ones.
pub fn crank(parts: &[usize]) -> i64 {
    let ones = parts.iter().filter(|&&p| p == 1).count();
    if ones == 0 {
        parts.first().copied().unwrap_or(0) as i64
    } else {
        parts.iter().filter(|&&p| p > ones).count() as i64 - ones as i64
    }
}

pub fn durfee(parts: &[usize]) -> usize {
    (1..=parts.len()).filter(|&k| parts[k - 1] >= k).count()
}

pub fn smallest_count(parts: &[usize]) -> usize {
    match parts.last() {
        Some(s) => parts.iter().filter(|&p| p == s).count(),
        None => 0,
    }
}

/// Number of odd and even strings.
pub fn strings(parts: &[usize]) -> usize {
    let c = counts(parts);
    let has = |v: usize| v < c.len() && c[v] > 0;
    let mut total = 0;
    for s in 1..c.len() {
        if !has(s) {
            continue;
        }
        let mut len = 0;
        while has(s + len) {
            len += 1;
        }
        let ok = if s % 2 == 1 {
            c[s] == 1 && len >= s
        } else {
            !has(s - 1) && len % 2 == 1 && len + 1 >= s
        };
        total += ok as usize;
    }
    total
}

pub fn histogram(n: usize, stat: fn(&[usize]) -> i64) -> BTreeMap<i64, u64> {
    let mut h = BTreeMap::new();
    for p in partitions(n) {
        *h.entry(stat(&p)).or_insert(0) += 1;
    }
    h
}

/// `p(0..=nmax)` by counting with parts `1, 2, ...` in turn.
pub fn partition_numbers(nmax: usize) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); nmax + 1];
    p[0] = BigInt::one();
    for k in 1..=nmax {
        for n in k..=nmax {
            let prev = p[n - k].clone();
            p[n] += prev;
        }
    }
    p
}

/// Divides a series by `(1 - q^step)` in place.
fn divide_one_minus(a: &mut [BigInt], step: usize) {
    for i in step..a.len() {
        let prev = a[i - step].clone();
        a[i] += prev;
    }
}

/// `T(q)` through `q^nmax`, each quotient expanded by long division.
pub fn t_coeffs(nmax: usize) -> Vec<BigInt> {
    let mut total = vec![BigInt::zero(); nmax + 1];
    let mut n = 1;
    while n * (n + 1) / 2 <= nmax {
        let mut term = vec![BigInt::zero(); nmax + 1];
        let sign = if n % 2 == 1 { 1 } else { -1 };
        let a = n * (n + 1) / 2;
        term[a] += sign;
        if a + n * n <= nmax {
            term[a + n * n] -= sign;
        }
        divide_one_minus(&mut term, n);
        for (t, x) in total.iter_mut().zip(term) {
            *t += x;
        }
        n += 1;
    }
    total
}

/// `sum_{n>=1} (-1)^{n+1} q^{l n^2/2 + (r/2+rho) n} / (1-q^n)^r` through `q^nmax`.
pub fn appell(ell: usize, r: usize, nmax: usize) -> Vec<BigInt> {
    let mut total = vec![BigInt::zero(); nmax + 1];
    // twice the exponent: l n^2 + (r + 2 rho) n, with 2 rho = 0 (odd r) or 1
    let lin = r + (r + 1) % 2;
    let mut n = 1;
    loop {
        let twice = ell * n * n + lin * n;
        assert_eq!(twice % 2, 0);
        let e = twice / 2;
        if e > nmax {
            break;
        }
        let mut term = vec![BigInt::zero(); nmax + 1];
        term[e] = if n % 2 == 1 { BigInt::one() } else { -BigInt::one() };
        for _ in 0..r {
            divide_one_minus(&mut term, n);
        }
        for (t, x) in total.iter_mut().zip(term) {
            *t += x;
        }
        n += 1;
    }
    total
}

/// Product of two series through the shorter length, skipping zero terms of `a`.
pub fn convolve(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let len = a.len().min(b.len());
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for j in 0..len - i {
            out[i + j] += x * &b[j];
        }
    }
    out
}

pub fn binomial(n: i64, k: u32) -> BigInt {
    if n < k as i64 || n < 0 {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k as i64 {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `sum_{m>=1} w(m) c_m` over a row laid out from `m = -n` to `m = n`.
pub fn positive_weighted(row: &[BigInt], weight: impl Fn(u64) -> BigInt) -> BigInt {
    let n = (row.len() - 1) / 2;
    (1..=n).map(|m| weight(m as u64) * &row[n + m]).sum()
}

/// Positive moments `sum_{m>0} m^r c_m` for `r = 0..=rmax` of one row.
pub fn positive_moments(row: &[BigInt], rmax: usize) -> Vec<BigInt> {
    let n = (row.len() - 1) / 2;
    let mut acc = vec![BigInt::zero(); rmax + 1];
    for m in 1..=n {
        let c = &row[n + m];
        if c.is_zero() {
            continue;
        }
        let mut term = c.clone();
        acc[0] += &term;
        for a in acc.iter_mut().skip(1) {
            term *= m as u64;
            *a += &term;
        }
    }
    acc
}

/// `log |x|` of a big integer through its leading digits.
pub fn big_ln(x: &BigInt) -> f64 {
    let s = x.magnitude().to_string();
    let head = &s[..s.len().min(17)];
    head.parse::<f64>().unwrap().ln() + (s.len() - head.len()) as f64 * std::f64::consts::LN_10
}

/// `eta(s) = sum (-1)^{n+1} n^{-s}` for `s > 0`, averaging consecutive
/// partial sums repeatedly.
pub fn eta_direct(s: f64) -> f64 {
    let terms = 60;
    let mut partial = Vec::with_capacity(terms);
    let mut acc = 0.0;
    for n in 1..=terms {
        let t = (n as f64).powf(-s);
        acc += if n % 2 == 1 { t } else { -t };
        partial.push(acc);
    }
    while partial.len() > 1 {
        partial = partial.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    }
    partial[0]
}
