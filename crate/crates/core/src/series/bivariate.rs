//! Crank and rank generating functions as series in `q` whose coefficients
//! are Laurent polynomials in `w`.
//!
//! Both are `(1-w)/(q)_inf * sum_{n in Z} (-1)^n q^{E(n)} / (1 - w q^n)` with
//! `E(n) = n(n+1)/2` (crank) or `n(3n+1)/2` (rank). We expand the Appell sum
//! column by column in `w`: the `w^m` part is a sparse q-series, and
//! multiplying it by the partition series gives the generating function of
//! `M(m, N)` (resp. `N(m, N)`) over `N`.

use std::io::Write;

use num_bigint::BigInt;
use num_traits::Zero;

use super::euler_inverse;
use crate::error::Result;
use crate::Statistic;

/// `sum_n sum_{|m|<=n} c(m, n) w^m q^n`, stored densely per power of `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivariateSeries {
    /// `rows[n][m + n]` is the coefficient of `w^m q^n`.
    rows: Vec<Vec<BigInt>>,
}

impl BivariateSeries {
    pub(crate) fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        debug_assert!(rows.iter().enumerate().all(|(n, r)| r.len() == 2 * n + 1));
        BivariateSeries { rows }
    }

    pub fn nmax(&self) -> usize {
        self.rows.len() - 1
    }

    /// Coefficients of `w^{-n}, ..., w^{n}` at `q^n`.
    pub fn row(&self, n: usize) -> &[BigInt] {
        &self.rows[n]
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<BigInt>> {
        self.rows
    }

    /// Coefficient of `w^m q^n`; zero outside `|m| <= n`.
    pub fn coeff(&self, n: usize, m: i64) -> BigInt {
        let n_i = n as i64;
        if m.abs() > n_i {
            return BigInt::zero();
        }
        self.rows[n][(m + n_i) as usize].clone()
    }

    /// The q^n coefficient evaluated at `w = 1`.
    pub fn sum_at_w_one(&self, n: usize) -> BigInt {
        self.rows[n].iter().sum()
    }

    /// Writes `n,m,coefficient` rows sorted by `(n, m)`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["n", "m", "coefficient"])?;
        for (n, row) in self.rows.iter().enumerate() {
            for (i, c) in row.iter().enumerate() {
                let m = i as i64 - n as i64;
                w.write_record([n.to_string(), m.to_string(), c.to_string()])?;
            }
        }
        w.flush()?;
        Ok(())
    }
}

/// `E(n)` for the bilateral Appell sum, `n` in `Z`.
fn appell_quadratic(kind: Statistic, n: i64) -> i64 {
    match kind {
        Statistic::Crank => n * (n + 1) / 2,
        Statistic::Rank => n * (3 * n + 1) / 2,
    }
}

/// Sparse q-series `(exponent, coefficient)` of the `w^m` part of
/// `sum_{n != 0} (-1)^n q^{E(n)} / (1 - w q^n)`.
///
/// For `n >= 1` the geometric factor is `sum_{k>=0} w^k q^{nk}`; for `n = -j`
/// it is `-sum_{k>=1} w^{-k} q^{jk}`.
fn appell_column(kind: Statistic, m: i64, nmax: usize) -> Vec<(usize, i64)> {
    let mut out = Vec::new();
    let limit = nmax as i64;
    if m >= 0 {
        for n in 1i64.. {
            let e = appell_quadratic(kind, n) + n * m;
            if e > limit {
                break;
            }
            out.push((e as usize, if n % 2 == 0 { 1 } else { -1 }));
        }
    } else {
        let k = -m;
        for j in 1i64.. {
            let e = appell_quadratic(kind, -j) + j * k;
            if e > limit {
                break;
            }
            // -(-1)^j
            out.push((e as usize, if j % 2 == 0 { -1 } else { 1 }));
        }
    }
    out
}

/// Sparse q-series of the `w^m` coefficient of
/// `(1 - w) * sum_{n in Z} (-1)^n q^{E(n)} / (1 - w q^n)`.
///
/// The `n = 0` term is `(1-w)/(1-w) = 1`.
fn kernel_column(kind: Statistic, m: i64, nmax: usize) -> Vec<(usize, i64)> {
    let mut terms = appell_column(kind, m, nmax);
    terms.extend(
        appell_column(kind, m - 1, nmax)
            .into_iter()
            .map(|(e, c)| (e, -c)),
    );
    if m == 0 {
        terms.push((0, 1));
    }
    terms.sort_unstable();
    let mut merged: Vec<(usize, i64)> = Vec::with_capacity(terms.len());
    for (e, c) in terms {
        match merged.last_mut() {
            Some(last) if last.0 == e => last.1 += c,
            _ => merged.push((e, c)),
        }
    }
    merged.retain(|&(_, c)| c != 0);
    merged
}

/// Column `sum_N c(m, N) q^N` of the bivariate series, exact through `q^nmax`.
pub(crate) fn column(kind: Statistic, m: i64, partitions: &[BigInt]) -> Vec<BigInt> {
    let nmax = partitions.len() - 1;
    let mut col = vec![BigInt::zero(); nmax + 1];
    for (e, c) in kernel_column(kind, m, nmax) {
        let dst = &mut col[e..];
        match c {
            1 => dst.iter_mut().zip(partitions).for_each(|(d, p)| *d += p),
            -1 => dst.iter_mut().zip(partitions).for_each(|(d, p)| *d -= p),
            _ => {
                let c = BigInt::from(c);
                dst.iter_mut().zip(partitions).for_each(|(d, p)| *d += &c * p);
            }
        }
    }
    col
}

/// The crank (`C(w;q)`) or rank (`R(w;q)`) generating function through `q^nmax`.
///
/// Values are those of the generating function itself, so the crank series
/// has `w^{-1} - 1 + w` at `q^1`.
pub fn bivariate_gen(kind: Statistic, nmax: usize) -> BivariateSeries {
    let p = euler_inverse(nmax).into_coeffs();
    let mut rows: Vec<Vec<BigInt>> = (0..=nmax).map(|n| vec![BigInt::zero(); 2 * n + 1]).collect();
    let top = nmax as i64;
    for m in -top..=top {
        let col = column(kind, m, &p);
        let start = m.unsigned_abs() as usize;
        debug_assert!(
            col[..start.min(nmax + 1)].iter().all(Zero::is_zero),
            "nonzero coefficient outside |m| <= n"
        );
        for (n, value) in col.into_iter().enumerate().skip(start) {
            rows[n][(m + n as i64) as usize] = value;
        }
    }
    BivariateSeries::from_rows(rows)
}
