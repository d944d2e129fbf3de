//! Truncated power series in `q` with exact integer coefficients.
//!
//! Every generating function used by the moment engine lives here: the
//! partition function `1/(q)_inf`, Euler's product, the false Appell sums
//! `S_{l,r}`, the ospt kernel `T(q)` and the crank/rank bivariate series
//! (in [`bivariate`]). Floating-point evaluation of the defining sums inside
//! the unit disk is in [`eval`].

pub mod bivariate;
pub mod eval;

use std::io::Write;

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use bivariate::{bivariate_gen, BivariateSeries};
pub use eval::{eval_complex, expm1, log_euler_product, Evaluation, QPoint, SeriesKind, MAX_TERMS};

/// A power series `sum_{n=0}^{nmax} c_n q^n`, exact through `q^nmax`.
///
/// `truncated` records whether terms beyond `q^nmax` were dropped while the
/// series was produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactSeries {
    coeffs: Vec<BigInt>,
    truncated: bool,
}

impl ExactSeries {
    pub fn zero(nmax: usize) -> Self {
        ExactSeries {
            coeffs: vec![BigInt::zero(); nmax + 1],
            truncated: false,
        }
    }

    pub fn one(nmax: usize) -> Self {
        let mut s = Self::zero(nmax);
        s.coeffs[0] = BigInt::one();
        s
    }

    /// Builds a series from explicit coefficients; `nmax` is `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "a series has at least the constant term");
        ExactSeries {
            coeffs,
            truncated: false,
        }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn nmax(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &BigInt {
        &self.coeffs[n]
    }

    pub fn was_truncated(&self) -> bool {
        self.truncated
    }

    fn mark_truncated(mut self, truncated: bool) -> Self {
        self.truncated |= truncated;
        self
    }

    /// Index of the highest nonzero coefficient.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn add(&self, other: &ExactSeries) -> Result<ExactSeries> {
        self.check_same_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(ExactSeries {
            coeffs,
            truncated: self.truncated || other.truncated,
        })
    }

    pub fn sub(&self, other: &ExactSeries) -> Result<ExactSeries> {
        self.check_same_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(ExactSeries {
            coeffs,
            truncated: self.truncated || other.truncated,
        })
    }

    pub fn mul(&self, other: &ExactSeries) -> Result<ExactSeries> {
        series_mul(self, other)
    }

    fn check_same_order(&self, other: &ExactSeries) -> Result<()> {
        if self.nmax() != other.nmax() {
            return Err(Error::TruncationMismatch(self.nmax(), other.nmax()));
        }
        Ok(())
    }

    /// Partial sum `sum c_n x^n` in floating point, together with the sum of
    /// `|c_n| |x|^n` (useful as a rounding scale).
    pub fn partial_sum_f64(&self, x: f64) -> (f64, f64) {
        let mut value = 0.0;
        let mut scale = 0.0;
        let mut power = 1.0;
        for c in &self.coeffs {
            let c = c.to_f64().unwrap_or(f64::INFINITY);
            value += c * power;
            scale += c.abs() * power.abs();
            power *= x;
        }
        (value, scale)
    }

    /// Writes `n,coefficient` rows with a header line.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["n", "coefficient"])?;
        for (n, c) in self.coeffs.iter().enumerate() {
            w.write_record([n.to_string(), c.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Cauchy product of two series truncated at their common order.
pub fn series_mul(a: &ExactSeries, b: &ExactSeries) -> Result<ExactSeries> {
    a.check_same_order(b)?;
    let nmax = a.nmax();
    let mut out = vec![BigInt::zero(); nmax + 1];
    // Skip zero coefficients on the left; several of our inputs are sparse.
    for (i, ai) in a.coeffs.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        if ai.is_one() {
            for (o, bj) in out[i..].iter_mut().zip(&b.coeffs) {
                *o += bj;
            }
        } else {
            for (o, bj) in out[i..].iter_mut().zip(&b.coeffs) {
                if !bj.is_zero() {
                    *o += ai * bj;
                }
            }
        }
    }
    let dropped = match (a.degree(), b.degree()) {
        (Some(da), Some(db)) => da + db > nmax,
        _ => false,
    };
    Ok(ExactSeries::from_coeffs(out).mark_truncated(a.truncated || b.truncated || dropped))
}

/// Generalized pentagonal numbers `k(3k-1)/2` for `k = 1, -1, 2, -2, ...`
/// up to `limit`, paired with the sign `(-1)^{k+1}`.
fn pentagonal_terms(limit: usize) -> Vec<(usize, bool)> {
    let mut out = Vec::new();
    for k in 1usize.. {
        let a = k * (3 * k - 1) / 2;
        if a > limit {
            break;
        }
        let positive = k % 2 == 1;
        out.push((a, positive));
        let b = k * (3 * k + 1) / 2;
        if b <= limit {
            out.push((b, positive));
        }
    }
    out
}

/// `1/(q;q)_inf` through `q^nmax`: the coefficients are `p(N)`.
///
/// Uses Euler's pentagonal recurrence `p(n) = sum_k (-1)^{k+1} p(n - k(3k-1)/2)`
/// over generalized pentagonal numbers.
pub fn euler_inverse(nmax: usize) -> ExactSeries {
    let pent = pentagonal_terms(nmax);
    let mut p: Vec<BigInt> = Vec::with_capacity(nmax + 1);
    p.push(BigInt::one());
    for n in 1..=nmax {
        let mut acc = BigInt::zero();
        for &(g, positive) in &pent {
            if g > n {
                break;
            }
            if positive {
                acc += &p[n - g];
            } else {
                acc -= &p[n - g];
            }
        }
        p.push(acc);
    }
    ExactSeries::from_coeffs(p).mark_truncated(true)
}

/// `(q;q)_inf` through `q^nmax` via the pentagonal number theorem.
pub fn euler_product(nmax: usize) -> ExactSeries {
    let mut s = ExactSeries::zero(nmax);
    s.coeffs[0] = BigInt::one();
    for (g, positive) in pentagonal_terms(nmax) {
        // (q)_inf = 1 + sum_k (-1)^k (q^{k(3k-1)/2} + q^{k(3k+1)/2})
        s.coeffs[g] = if positive { -BigInt::one() } else { BigInt::one() };
    }
    s.mark_truncated(true)
}

/// `rho(r)`: 0 for odd `r`, 1/2 for even `r`.
pub fn rho(r: u32) -> Rational64 {
    if r % 2 == 1 {
        Rational64::from_integer(0)
    } else {
        Rational64::new(1, 2)
    }
}

/// Exponent `l n^2/2 + (r/2 + rho) n` of the n-th term of `S_{l,r}`.
pub(crate) fn appell_exponent(ell: u32, r: u32, n: u64) -> Result<u64> {
    let n_r = Rational64::from_integer(n as i64);
    let e = Rational64::new(ell as i64, 2) * n_r * n_r
        + (Rational64::new(r as i64, 2) + rho(r)) * n_r;
    if !e.is_integer() || e.is_negative() {
        return Err(Error::Consistency(format!(
            "non-integral exponent {e} in S_({ell},{r}) at n={n}"
        )));
    }
    Ok(e.to_integer() as u64)
}

pub(crate) fn check_ell(ell: u32) -> Result<()> {
    if ell == 1 || ell == 3 {
        Ok(())
    } else {
        Err(Error::Unsupported(format!("ell = {ell}; only 1 and 3 are supported")))
    }
}

/// q-expansion of the false Appell sum
/// `S_{l,r}(q) = sum_{n>=1} (-1)^{n+1} q^{l n^2/2 + (r/2+rho) n} / (1-q^n)^r`.
///
/// `r = 0` is accepted and gives the generating function of the number of
/// partitions with positive crank (`l = 1`) or rank (`l = 3`) after division
/// by `(q)_inf`.
pub fn appell_s_series(ell: u32, r: u32, nmax: usize) -> Result<ExactSeries> {
    check_ell(ell)?;
    let mut s = ExactSeries::zero(nmax);
    for n in 1u64.. {
        let e = appell_exponent(ell, r, n)? as usize;
        if e > nmax {
            break;
        }
        let step = n as usize;
        // 1/(1-x)^r = sum_k C(k+r-1, r-1) x^k
        let mut binom = BigInt::one();
        let mut k = 0usize;
        let mut idx = e;
        while idx <= nmax {
            if n % 2 == 1 {
                s.coeffs[idx] += &binom;
            } else {
                s.coeffs[idx] -= &binom;
            }
            if r == 0 {
                break;
            }
            k += 1;
            binom = binom * BigInt::from(k + r as usize - 1) / BigInt::from(k);
            idx += step;
        }
    }
    Ok(s.mark_truncated(true))
}

/// `T(q) = sum_{n>=1} (-1)^{n+1} q^{(n^2+n)/2} (1 - q^{n^2}) / (1 - q^n)`.
///
/// Each quotient is the finite geometric sum `sum_{k<n} q^{nk}`.
pub fn t_series(nmax: usize) -> ExactSeries {
    let mut s = ExactSeries::zero(nmax);
    for n in 1usize.. {
        let base = n * (n + 1) / 2;
        if base > nmax {
            break;
        }
        for k in 0..n {
            let idx = base + n * k;
            if idx > nmax {
                break;
            }
            if n % 2 == 1 {
                s.coeffs[idx] += 1;
            } else {
                s.coeffs[idx] -= 1;
            }
        }
    }
    s.mark_truncated(true)
}

/// `O(q) = T(q)/(q)_inf`, whose coefficients are `ospt(N)`.
pub fn ospt_series(nmax: usize) -> ExactSeries {
    series_mul(&t_series(nmax), &euler_inverse(nmax)).expect("equal truncation orders")
}

/// `F_{l,r}(q) = S_{l,r}(q)/(q)_inf`; its coefficients are the symmetrized
/// positive moments (`l = 1` crank, `l = 3` rank).
pub fn f_series(ell: u32, r: u32, nmax: usize) -> Result<ExactSeries> {
    series_mul(&appell_s_series(ell, r, nmax)?, &euler_inverse(nmax))
}
