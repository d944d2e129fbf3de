//! Crank/rank tables and their moments.
//!
//! Tables come from the bivariate generating functions. All moments are taken
//! in the generating-function convention, where the crank row at `N = 1` is
//! `w^{-1} - 1 + w`; the combinatorial row `{0: 1}` is kept for export only.

use std::io::Write;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::{bivariate_gen, check_ell, f_series};
use crate::Statistic;

/// How the anomalous crank row at `N = 1` is represented.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    /// `M(-1,1) = M(1,1) = 1`, `M(0,1) = -1`, as produced by `C(w;q)`.
    GeneratingFunction,
    /// `M(0,1) = 1` and zero elsewhere.
    Combinatorial,
}

/// Exact `M(m,N)` or `N(m,N)` for `0 <= N <= nmax`, `|m| <= N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrankRankTable {
    kind: Statistic,
    convention: Convention,
    rows: Vec<Vec<BigInt>>,
}

impl CrankRankTable {
    pub fn kind(&self) -> Statistic {
        self.kind
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn nmax(&self) -> usize {
        self.rows.len() - 1
    }

    /// Counts for `m = -N, ..., N`.
    pub fn row(&self, n: usize) -> &[BigInt] {
        &self.rows[n]
    }

    /// Counts for `m = 1, ..., N`.
    pub fn positive_part(&self, n: usize) -> &[BigInt] {
        &self.rows[n][n + 1..]
    }

    pub fn count(&self, n: usize, m: i64) -> BigInt {
        if m.unsigned_abs() as usize > n {
            return BigInt::zero();
        }
        self.rows[n][(m + n as i64) as usize].clone()
    }

    fn check_n(&self, n: usize) -> Result<()> {
        if n > self.nmax() {
            return Err(Error::OutOfRange(format!("N = {n} > nmax = {}", self.nmax())));
        }
        Ok(())
    }

    fn check_convention(&self) -> Result<()> {
        if self.convention != Convention::GeneratingFunction {
            return Err(Error::Unsupported(
                "moments are defined on the generating-function convention".into(),
            ));
        }
        Ok(())
    }

    /// Writes `N,m,count` rows sorted by `(N, m)`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["N", "m", "count"])?;
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

/// Builds the crank or rank table through `nmax`.
pub fn build_table(kind: Statistic, nmax: usize, convention: Convention) -> CrankRankTable {
    let mut rows = bivariate_gen(kind, nmax).into_rows();
    if kind == Statistic::Crank && convention == Convention::Combinatorial && nmax >= 1 {
        rows[1] = vec![BigInt::zero(), BigInt::one(), BigInt::zero()];
    }
    CrankRankTable {
        kind,
        convention,
        rows,
    }
}

fn powers(max_m: usize, r: u32) -> Vec<BigInt> {
    (0..=max_m).map(|m| BigInt::from(m).pow(r)).collect()
}

fn weighted_sum(counts: &[BigInt], weights: &[BigInt]) -> BigInt {
    counts
        .iter()
        .zip(weights)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, w)| c * w)
        .sum()
}

/// `M_r^+(N) = sum_{m>=1} m^r M(m,N)` (or the rank analogue).
pub fn positive_moment(table: &CrankRankTable, r: u32, n: usize) -> Result<BigInt> {
    table.check_convention()?;
    table.check_n(n)?;
    let w = powers(n, r);
    Ok(weighted_sum(table.positive_part(n), &w[1..]))
}

/// `M_r(N) = sum_{m in Z} m^r M(m,N)`.
pub fn full_moment(table: &CrankRankTable, r: u32, n: usize) -> Result<BigInt> {
    table.check_convention()?;
    table.check_n(n)?;
    let mut total = BigInt::zero();
    for (i, c) in table.row(n).iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let m = BigInt::from(i as i64 - n as i64);
        total += c * m.pow(r);
    }
    Ok(total)
}

/// Which moment family a [`MomentTable`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MomentVariant {
    Full,
    Positive,
    Symmetrized,
}

impl MomentVariant {
    pub fn name(self) -> &'static str {
        match self {
            MomentVariant::Full => "full",
            MomentVariant::Positive => "positive",
            MomentVariant::Symmetrized => "symmetrized",
        }
    }
}

/// One moment sequence, indexed by `N = 0..=nmax`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MomentTable {
    pub kind: Statistic,
    pub variant: MomentVariant,
    pub r: u32,
    /// 1 for crank, 3 for rank; only set for symmetrized moments.
    pub ell: Option<u32>,
    #[serde(serialize_with = "serialize_bigints")]
    pub values: Vec<BigInt>,
}

fn serialize_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

pub(crate) fn serialize_bigint<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl MomentTable {
    /// Positive moments `M_r^+(N)` / `N_r^+(N)` for every `N` of the table.
    pub fn positive(table: &CrankRankTable, r: u32) -> Result<Self> {
        table.check_convention()?;
        let w = powers(table.nmax(), r);
        let values = (0..=table.nmax())
            .map(|n| weighted_sum(table.positive_part(n), &w[1..]))
            .collect();
        Ok(MomentTable {
            kind: table.kind,
            variant: MomentVariant::Positive,
            r,
            ell: None,
            values,
        })
    }

    /// Full moments `M_r(N)` / `N_r(N)`; odd orders vanish by symmetry.
    pub fn full(table: &CrankRankTable, r: u32) -> Result<Self> {
        table.check_convention()?;
        let values = (0..=table.nmax())
            .map(|n| full_moment(table, r, n))
            .collect::<Result<_>>()?;
        Ok(MomentTable {
            kind: table.kind,
            variant: MomentVariant::Full,
            r,
            ell: None,
            values,
        })
    }

    pub fn nmax(&self) -> usize {
        self.values.len() - 1
    }

    pub fn value(&self, n: usize) -> &BigInt {
        &self.values[n]
    }

    /// Writes `N,value` rows.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["N", "value"])?;
        for (n, v) in self.values.iter().enumerate() {
            w.write_record([n.to_string(), v.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Shift `floor((r-1)/2)` in the symmetrized binomial weight.
fn binomial_shift(r: u32) -> i64 {
    (r as i64 - 1).div_euclid(2)
}

/// `C(m + floor((r-1)/2), r)` for `m >= 1`.
pub fn binomial_weight(m: u64, r: u32) -> BigInt {
    let top = m as i64 + binomial_shift(r);
    if top < r as i64 {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(top), BigInt::from(r))
}

/// Symmetrized moments `mu_r^+` (`ell = 1`) or `eta_r^+` (`ell = 3`) as the
/// coefficients of `F_{ell,r}(q) = S_{ell,r}(q)/(q)_inf`.
pub fn symmetrized_moments(ell: u32, r: u32, nmax: usize) -> Result<MomentTable> {
    check_ell(ell)?;
    let kind = if ell == 1 { Statistic::Crank } else { Statistic::Rank };
    Ok(MomentTable {
        kind,
        variant: MomentVariant::Symmetrized,
        r,
        ell: Some(ell),
        values: f_series(ell, r, nmax)?.into_coeffs(),
    })
}

/// Symmetrized moments summed directly from a table with binomial weights.
pub fn symmetrized_from_table(table: &CrankRankTable, r: u32) -> Result<MomentTable> {
    table.check_convention()?;
    let w: Vec<BigInt> = (1..=table.nmax() as u64).map(|m| binomial_weight(m, r)).collect();
    let values = (0..=table.nmax())
        .map(|n| weighted_sum(table.positive_part(n), &w))
        .collect();
    Ok(MomentTable {
        kind: table.kind,
        variant: MomentVariant::Symmetrized,
        r,
        ell: Some(match table.kind {
            Statistic::Crank => 1,
            Statistic::Rank => 3,
        }),
        values,
    })
}

/// Power-basis coefficients (ascending) of `C(x + floor((l-1)/2), l)`.
fn shifted_binomial_poly(l: u32) -> Vec<BigRational> {
    let shift = binomial_shift(l);
    let mut poly = vec![BigRational::one()];
    for i in 0..l as i64 {
        // multiply by (x + shift - i)
        let c = BigRational::from_integer(BigInt::from(shift - i));
        let mut next = vec![BigRational::zero(); poly.len() + 1];
        for (k, a) in poly.iter().enumerate() {
            next[k] += a * &c;
            next[k + 1] += a;
        }
        poly = next;
    }
    let fact: BigInt = (1..=l as u64).map(BigInt::from).product();
    let fact = BigRational::from_integer(fact);
    poly.iter().map(|a| a / &fact).collect()
}

/// Integers `a_0, ..., a_{r-1}` with
/// `m^r = r! C(m + floor((r-1)/2), r) + sum_l a_l C(m + floor((l-1)/2), l)`.
///
/// Found by peeling off the top degree in the shifted binomial basis.
pub fn basis_change(r: u32) -> Result<Vec<BigInt>> {
    if r == 0 {
        return Err(Error::Unsupported("basis change needs r >= 1".into()));
    }
    let deg = r as usize;
    let mut target = vec![BigRational::zero(); deg + 1];
    target[deg] = BigRational::one();
    let mut coeffs = vec![BigRational::zero(); deg + 1];
    for l in (0..=deg).rev() {
        let basis = shifted_binomial_poly(l as u32);
        let c = &target[l] / &basis[l];
        for (t, b) in target.iter_mut().zip(&basis) {
            *t -= &c * b;
        }
        coeffs[l] = c;
    }
    if target.iter().any(|t| !t.is_zero()) {
        return Err(Error::Consistency(format!("nonzero remainder in basis change r={r}")));
    }
    let fact: BigInt = (1..=r as u64).map(BigInt::from).product();
    if coeffs[deg] != BigRational::from_integer(fact) {
        return Err(Error::Consistency(format!("leading coefficient is not {r}!")));
    }
    coeffs
        .into_iter()
        .take(deg)
        .enumerate()
        .map(|(l, c)| {
            if c.is_integer() {
                Ok(c.to_integer())
            } else {
                Err(Error::Consistency(format!("a_{l} = {c} is not an integer (r={r})")))
            }
        })
        .collect()
}

/// `mu_0^+(N)`: the number of entries with positive statistic.
pub fn positive_count(table: &CrankRankTable) -> Result<MomentTable> {
    let mut t = MomentTable::positive(table, 0)?;
    t.variant = MomentVariant::Symmetrized;
    t.ell = Some(match table.kind {
        Statistic::Crank => 1,
        Statistic::Rank => 3,
    });
    Ok(t)
}

/// Reassembles `M_r^+` from symmetrized moments `sym[l] = mu_l^+` for
/// `l = 0..=r`.
pub fn positive_from_symmetrized(r: u32, sym: &[MomentTable]) -> Result<Vec<BigInt>> {
    if sym.len() != r as usize + 1 {
        return Err(Error::Unsupported(format!(
            "need symmetrized moments for orders 0..={r}, got {}",
            sym.len()
        )));
    }
    let a = basis_change(r)?;
    let fact: BigInt = (1..=r as u64).map(BigInt::from).product();
    let nmax = sym[0].nmax();
    Ok((0..=nmax)
        .map(|n| {
            let mut v = &fact * sym[r as usize].value(n);
            for (l, al) in a.iter().enumerate() {
                if !al.is_zero() {
                    v += al * sym[l].value(n);
                }
            }
            v
        })
        .collect())
}

/// `spt(N)` and `ospt(N)` for `0 <= N <= nmax` (both 0 at `N = 0`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SptOspt {
    pub spt: Vec<BigInt>,
    pub ospt: Vec<BigInt>,
}

impl SptOspt {
    pub fn nmax(&self) -> usize {
        self.spt.len() - 1
    }

    /// Writes `N,spt,ospt` rows for `N >= 1`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["N", "spt", "ospt"])?;
        for n in 1..=self.nmax() {
            w.write_record([n.to_string(), self.spt[n].to_string(), self.ospt[n].to_string()])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// `spt = M_2^+ - N_2^+` and `ospt = M_1^+ - N_1^+` from existing tables.
pub fn spt_ospt_from_tables(crank: &CrankRankTable, rank: &CrankRankTable) -> Result<SptOspt> {
    if crank.kind != Statistic::Crank || rank.kind != Statistic::Rank {
        return Err(Error::Unsupported("expected a crank table and a rank table".into()));
    }
    if crank.nmax() != rank.nmax() {
        return Err(Error::TruncationMismatch(crank.nmax(), rank.nmax()));
    }
    let diff = |r: u32| -> Result<Vec<BigInt>> {
        let m = MomentTable::positive(crank, r)?;
        let n = MomentTable::positive(rank, r)?;
        Ok(m.values.iter().zip(&n.values).map(|(a, b)| a - b).collect())
    };
    Ok(SptOspt {
        spt: diff(2)?,
        ospt: diff(1)?,
    })
}

pub fn spt_ospt(nmax: usize) -> Result<SptOspt> {
    let crank = build_table(Statistic::Crank, nmax, Convention::GeneratingFunction);
    let rank = build_table(Statistic::Rank, nmax, Convention::GeneratingFunction);
    spt_ospt_from_tables(&crank, &rank)
}

/// Converts an exact value to `(log|x|, sign)`; zero maps to `(-inf, 0)`.
pub fn log_abs(x: &BigInt) -> (f64, i8) {
    if x.is_zero() {
        return (f64::NEG_INFINITY, 0);
    }
    let sign = if x.is_negative() { -1 } else { 1 };
    let bits = x.bits();
    let log = if bits < 1000 {
        x.abs().to_f64().unwrap().ln()
    } else {
        let shift = bits - 64;
        (x.abs() >> shift).to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
    };
    (log, sign)
}
