//! Factorization of `24N - 1` and the parity criterion for ospt and spt.
//!
//! `ospt(N)` is odd exactly when `24N - 1 = l^{4a+1} m^2` for a prime
//! `l = 23 (mod 24)` with `gcd(l, m) = 1`.

use std::fmt;
use std::io::Write;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};

const TRIAL_LIMIT: u64 = 1_000_000;

/// Prime factorization with strictly increasing primes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub n: u64,
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn product(&self) -> u128 {
        self.factors
            .iter()
            .map(|&(p, e)| (p as u128).pow(e))
            .product()
    }
}

impl fmt::Display for Factorization {
    /// `5*19`, `2^3*3`, or `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for all `n < 2^64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A nontrivial factor of the odd composite `n` (Brent's variant of rho).
fn pollard_rho(n: u64) -> u64 {
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut g) = (2u64, 2u64, 1u64);
        let mut q = 1u64;
        let mut r = 1u64;
        let mut ys = 2u64;
        const BATCH: u64 = 128;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BATCH.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += BATCH;
            }
            r *= 2;
        }
        if g == n {
            // Batch overshot; step back one at a time.
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

fn split(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(n);
    split(d, out);
    split(n / d, out);
}

/// Complete factorization of `1 <= n <= 2^63 - 1`.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 || n > i64::MAX as u64 {
        return Err(Error::Unsupported(format!("cannot factor {n}")));
    }
    let mut primes = Vec::new();
    let mut m = n;
    let mut p = 2u64;
    while p <= TRIAL_LIMIT && p * p <= m {
        while m % p == 0 {
            primes.push(p);
            m /= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        if p * p > m {
            primes.push(m);
        } else {
            split(m, &mut primes);
        }
    }
    primes.sort_unstable();
    let mut factors: Vec<(u64, u32)> = Vec::new();
    for q in primes {
        match factors.last_mut() {
            Some((last, e)) if *last == q => *e += 1,
            _ => factors.push((q, 1)),
        }
    }
    Ok(Factorization { n, factors })
}

/// Predicted parity of `ospt(N)` (and `spt(N)`); `true` means odd.
pub fn parity_predict(n: u64) -> Result<bool> {
    if n == 0 {
        return Err(Error::Domain("N must be positive".into()));
    }
    let m = n
        .checked_mul(24)
        .filter(|v| *v <= i64::MAX as u64)
        .ok_or_else(|| Error::Unsupported(format!("24N - 1 overflows for N = {n}")))?;
    let f = factorize(m - 1)?;
    let odd: Vec<&(u64, u32)> = f.factors.iter().filter(|(_, e)| e % 2 == 1).collect();
    Ok(match odd.as_slice() {
        [(l, e)] => l % 24 == 23 && e % 4 == 1,
        _ => false,
    })
}

/// One row of the parity table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParityRow {
    #[serde(rename = "N")]
    pub n: u64,
    pub factorization: Factorization,
    pub predicted_odd: bool,
    pub ospt_odd: bool,
    pub spt_odd: bool,
}

impl ParityRow {
    pub fn consistent(&self) -> bool {
        self.predicted_odd == self.ospt_odd && self.ospt_odd == self.spt_odd
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParityReport {
    pub nmax: u64,
    pub rows: Vec<ParityRow>,
    /// First `N` where prediction, ospt and spt parity disagree.
    pub first_failure: Option<u64>,
}

impl ParityReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "N",
            "24N-1",
            "factorization",
            "predicted_parity",
            "ospt_mod_2",
            "spt_mod_2",
        ])?;
        for r in &self.rows {
            w.write_record([
                r.n.to_string(),
                (24 * r.n - 1).to_string(),
                r.factorization.to_string(),
                (r.predicted_odd as u8).to_string(),
                (r.ospt_odd as u8).to_string(),
                (r.spt_odd as u8).to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Compares predicted parity with `ospt` and `spt` (both indexed by `N`,
/// entry 0 ignored) for `1 <= N <= min(len) - 1`.
pub fn parity_suite(spt: &[BigInt], ospt: &[BigInt]) -> Result<ParityReport> {
    let top = spt.len().min(ospt.len());
    if top < 2 {
        return Err(Error::InsufficientData("need values for N >= 1".into()));
    }
    let mut rows = Vec::with_capacity(top - 1);
    let mut first_failure = None;
    for n in 1..top {
        let predicted_odd = parity_predict(n as u64)?;
        let row = ParityRow {
            n: n as u64,
            factorization: factorize(24 * n as u64 - 1)?,
            predicted_odd,
            ospt_odd: ospt[n].is_odd(),
            spt_odd: spt[n].is_odd(),
        };
        if first_failure.is_none() && !row.consistent() {
            first_failure = Some(n as u64);
        }
        rows.push(row);
    }
    Ok(ParityReport {
        nmax: (top - 1) as u64,
        rows,
        first_failure,
    })
}
