//! Direct floating-point evaluation of `1/(q)_inf`, `S_{l,r}(q)` and `T(q)`
//! at a point of the unit disk.
//!
//! The truncated integer series cannot see the essential singularity at
//! `q = 1`, so near the unit circle we sum the defining series and products
//! themselves. Each evaluation carries a bound on the neglected tail obtained
//! from a majorant whose term ratios decrease.

use num_complex::Complex64;

use super::{appell_exponent, check_ell};
use crate::error::{Error, Result};

/// Hard cap on the number of terms or factors summed.
pub const MAX_TERMS: usize = 1_000_000;

/// A point `q` of the open unit disk, stored through `log q` so that large
/// powers `q^e` are computed as `exp(e log q)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QPoint {
    log_q: Option<Complex64>,
}

impl QPoint {
    pub fn new(q: Complex64) -> Result<Self> {
        if !(q.norm() < 1.0) {
            return Err(Error::Domain(format!("|q| = {} is not below 1", q.norm())));
        }
        if q == Complex64::new(0.0, 0.0) {
            return Ok(QPoint { log_q: None });
        }
        Ok(QPoint { log_q: Some(q.ln()) })
    }

    /// `q = e^{2 pi i tau}`, requiring `Im tau > 0`.
    pub fn from_tau(tau: Complex64) -> Result<Self> {
        if !(tau.im > 0.0) {
            return Err(Error::Domain(format!("Im tau = {} is not positive", tau.im)));
        }
        Ok(QPoint {
            log_q: Some(Complex64::new(0.0, 2.0 * std::f64::consts::PI) * tau),
        })
    }

    /// `q = e^{-y}` for real `y > 0`.
    pub fn from_neg_log(y: f64) -> Result<Self> {
        if !(y > 0.0) {
            return Err(Error::Domain(format!("y = {y} is not positive")));
        }
        Ok(QPoint {
            log_q: Some(Complex64::new(-y, 0.0)),
        })
    }

    pub fn q(&self) -> Complex64 {
        self.log_q.map_or(Complex64::new(0.0, 0.0), |l| l.exp())
    }

    pub fn log_q(&self) -> Option<Complex64> {
        self.log_q
    }

    /// `q^e` for real `e >= 0`.
    pub fn pow(&self, e: f64) -> Complex64 {
        match self.log_q {
            Some(l) => (l * e).exp(),
            None if e == 0.0 => Complex64::new(1.0, 0.0),
            None => Complex64::new(0.0, 0.0),
        }
    }

    /// `1 - q^e`, accurate when `q^e` is close to 1.
    pub fn one_minus_pow(&self, e: f64) -> Complex64 {
        match self.log_q {
            Some(l) => -expm1(l * e),
            None if e == 0.0 => Complex64::new(0.0, 0.0),
            None => Complex64::new(1.0, 0.0),
        }
    }

    /// `|q|^e`.
    pub fn abs_pow(&self, e: f64) -> f64 {
        match self.log_q {
            Some(l) => (l.re * e).exp(),
            None if e == 0.0 => 1.0,
            None => 0.0,
        }
    }
}

/// `e^z - 1` without cancellation for small `|z|`.
pub fn expm1(z: Complex64) -> Complex64 {
    let (s, c) = z.im.sin_cos();
    let half = (0.5 * z.im).sin();
    Complex64::new(z.re.exp_m1() * c - 2.0 * half * half, z.re.exp() * s)
}

/// Which defining sum to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    /// `S_{l,r}(q)`
    Appell { ell: u32, r: u32 },
    /// `1/(q)_inf`
    EulerInverse,
    /// `T(q)`
    T,
}

/// A value together with a certified bound on the truncation error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub value: Complex64,
    pub tail_bound: f64,
    pub terms: usize,
}

/// Evaluates the chosen function at `q`, stopping once the tail bound falls
/// below `tol * |partial sum|`.
pub fn eval_complex(kind: SeriesKind, q: &QPoint, tol: f64) -> Result<Evaluation> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance {tol} must be positive")));
    }
    if q.log_q.is_none() {
        let value = match kind {
            SeriesKind::EulerInverse => 1.0,
            _ => 0.0,
        };
        return Ok(Evaluation {
            value: Complex64::new(value, 0.0),
            tail_bound: 0.0,
            terms: 0,
        });
    }
    match kind {
        SeriesKind::EulerInverse => {
            let (log, bound, terms) = log_euler_product(q, tol)?;
            let value = (-log).exp();
            Ok(Evaluation {
                value,
                tail_bound: value.norm() * bound.exp_m1(),
                terms,
            })
        }
        SeriesKind::Appell { ell, r } => appell_sum(ell, r, q, tol),
        SeriesKind::T => t_sum(q, tol),
    }
}

/// `log (q;q)_inf` (sum of principal logarithms) with a bound on the
/// neglected tail of that sum.
///
/// Returned as `(log, tail bound, factors used)`. For large `1/(q)_inf` work
/// with `exp(-log)` in log domain.
pub fn log_euler_product(q: &QPoint, tol: f64) -> Result<(Complex64, f64, usize)> {
    let a = q.abs_pow(1.0);
    let mut log = Complex64::new(0.0, 0.0);
    let mut bound = f64::INFINITY;
    for n in 1..=MAX_TERMS {
        log += q.one_minus_pow(n as f64).ln();
        // |sum_{k>n} log(1-q^k)| <= sum_{k>n} |q|^k/(1-|q|^k)
        //                       <= |q|^{n+1} / ((1-|q|)(1-|q|^{n+1}))
        let next = q.abs_pow((n + 1) as f64);
        bound = next / ((1.0 - a) * (1.0 - next));
        if bound < tol {
            return Ok((log, bound, n));
        }
    }
    Err(Error::Convergence {
        iterations: MAX_TERMS,
        achieved: bound,
    })
}

fn appell_sum(ell: u32, r: u32, q: &QPoint, tol: f64) -> Result<Evaluation> {
    check_ell(ell)?;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut bound = f64::INFINITY;
    let shift = r as f64 / 2.0 + if r % 2 == 0 { 0.5 } else { 0.0 };
    for n in 1..=MAX_TERMS {
        let e = appell_exponent(ell, r, n as u64)? as f64;
        let term = q.pow(e) / q.one_minus_pow(n as f64).powi(r as i32);
        if n % 2 == 1 {
            sum += term;
        } else {
            sum -= term;
        }
        // Majorant M_k = |q|^{e_k} / (1-|q|^k)^r; its ratios
        // M_{k+1}/M_k <= |q|^{l(2k+1)/2 + shift} decrease in k.
        let m = n + 1;
        let e_next = appell_exponent(ell, r, m as u64)? as f64;
        let next = q.abs_pow(e_next) / (1.0 - q.abs_pow(m as f64)).powi(r as i32);
        let ratio = q.abs_pow(ell as f64 * (2 * m + 1) as f64 / 2.0 + shift);
        if ratio < 1.0 {
            bound = next / (1.0 - ratio);
            if bound < tol * sum.norm() || bound == 0.0 {
                return Ok(Evaluation {
                    value: sum,
                    tail_bound: bound,
                    terms: n,
                });
            }
        }
    }
    Err(Error::Convergence {
        iterations: MAX_TERMS,
        achieved: bound,
    })
}

fn t_sum(q: &QPoint, tol: f64) -> Result<Evaluation> {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut bound = f64::INFINITY;
    for n in 1..=MAX_TERMS {
        let nf = n as f64;
        let base = q.pow(nf * (nf + 1.0) / 2.0);
        let quotient = q.one_minus_pow(nf * nf) / q.one_minus_pow(nf);
        let term = base * quotient;
        if n % 2 == 1 {
            sum += term;
        } else {
            sum -= term;
        }
        // |(1-q^{k^2})/(1-q^k)| <= k, and M_{k+1}/M_k <= |q|^{k+1} (k+1)/k.
        let m = (n + 1) as f64;
        let next = q.abs_pow(m * (m + 1.0) / 2.0) * m;
        let ratio = q.abs_pow(m + 1.0) * (m + 1.0) / m;
        if ratio < 1.0 {
            bound = next / (1.0 - ratio);
            if bound < tol * sum.norm() {
                return Ok(Evaluation {
                    value: sum,
                    tail_bound: bound,
                    terms: n,
                });
            }
        }
    }
    Err(Error::Convergence {
        iterations: MAX_TERMS,
        achieved: bound,
    })
}
