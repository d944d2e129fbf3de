//! Special functions: the Dirichlet eta function, modified Bessel functions of
//! half-integer order in log domain, and Bernoulli polynomials.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// A real number stored as `sign * exp(log)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LogValue {
    pub log: f64,
    pub sign: i8,
}

impl LogValue {
    pub fn new(log: f64, sign: i8) -> Self {
        LogValue { log, sign }
    }

    pub fn zero() -> Self {
        LogValue {
            log: f64::NEG_INFINITY,
            sign: 0,
        }
    }

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            Self::zero()
        } else {
            LogValue {
                log: x.abs().ln(),
                sign: if x < 0.0 { -1 } else { 1 },
            }
        }
    }

    /// The plain value; overflows to infinity for large logs.
    pub fn value(&self) -> f64 {
        self.sign as f64 * self.log.exp()
    }

    pub fn mul(self, other: LogValue) -> LogValue {
        if self.sign == 0 || other.sign == 0 {
            return Self::zero();
        }
        LogValue {
            log: self.log + other.log,
            sign: self.sign * other.sign,
        }
    }

    /// Multiplies by a plain real factor.
    pub fn scale(self, factor: f64) -> LogValue {
        self.mul(LogValue::from_f64(factor))
    }

    pub fn add(self, other: LogValue) -> LogValue {
        if self.sign == 0 {
            return other;
        }
        if other.sign == 0 {
            return self;
        }
        let (big, small) = if self.log >= other.log { (self, other) } else { (other, self) };
        let rel = (small.log - big.log).exp() * (small.sign * big.sign) as f64;
        let total = 1.0 + rel;
        if total == 0.0 {
            return Self::zero();
        }
        LogValue {
            log: big.log + total.abs().ln(),
            sign: if total < 0.0 { -big.sign } else { big.sign },
        }
    }

    /// `self / other` as a plain number.
    pub fn ratio(self, other: LogValue) -> f64 {
        (self.sign * other.sign) as f64 * (self.log - other.log).exp()
    }
}

/// Dirichlet eta `eta(s) = sum_{n>=1} (-1)^{n+1} n^{-s} = (1 - 2^{1-s}) zeta(s)`.
///
/// Defined here for `s > 0` (Cohen-Rodriguez Villegas-Zagier acceleration)
/// and the continued values `eta(0) = 1/2`, `eta(-1) = 1/4`.
pub fn dirichlet_eta(s: f64) -> Result<f64> {
    if s == 1.0 {
        return Ok(std::f64::consts::LN_2);
    }
    if s == 0.0 {
        return Ok(0.5);
    }
    if s == -1.0 {
        return Ok(0.25);
    }
    if !(s > 0.0) {
        return Err(Error::Unsupported(format!("eta({s}) is only provided for s > 0, 0, -1")));
    }
    // Error is about 3 (3 + sqrt 8)^{-n}, far below double precision at n = 40.
    const N: usize = 40;
    let nf = N as f64;
    let mut d = Vec::with_capacity(N + 1);
    let mut term = 1.0 / nf;
    let mut sum = term;
    d.push(nf * sum);
    for i in 1..=N {
        let i_f = i as f64;
        term *= (nf + i_f - 1.0) * (nf - i_f + 1.0) * 4.0 / ((2.0 * i_f - 1.0) * (2.0 * i_f));
        sum += term;
        d.push(nf * sum);
    }
    let dn = d[N];
    let mut acc = 0.0;
    for (k, dk) in d.iter().take(N).enumerate() {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        acc += sign * (dk - dn) / ((k + 1) as f64).powf(s);
    }
    Ok(-acc / dn)
}

/// Riemann zeta through eta; `zeta(1)` is a pole and returns an error.
pub fn zeta(s: f64) -> Result<f64> {
    if s == 1.0 {
        return Err(Error::Domain("zeta has a pole at s = 1".into()));
    }
    if s == -1.0 {
        return Ok(-1.0 / 12.0);
    }
    Ok(dirichlet_eta(s)? / (1.0 - 2f64.powf(1.0 - s)))
}

/// `n` with `nu = n + 1/2` (possibly negative), if `nu` is a half-integer.
fn half_integer_index(nu: f64) -> Option<i64> {
    let twice = 2.0 * nu;
    if twice.fract() != 0.0 || (twice as i64).rem_euclid(2) != 1 {
        return None;
    }
    Some(((twice as i64) - 1) / 2)
}

/// Coefficients `(n+k)! / (k! (n-k)! 2^k)` of the terminating Hankel expansion.
fn hankel_coeffs(n: usize) -> Vec<f64> {
    let mut a = Vec::with_capacity(n + 1);
    let mut c = 1.0;
    a.push(c);
    for k in 1..=n {
        let kf = k as f64;
        let nf = n as f64;
        c *= (nf + kf) * (nf - kf + 1.0) / (2.0 * kf);
        a.push(c);
    }
    a
}

/// `ln Gamma(n + 3/2)` for `n >= 0`.
fn ln_gamma_half(n: usize) -> f64 {
    let mut g = 0.5 * std::f64::consts::PI.ln(); // Gamma(1/2)
    for j in 0..=n {
        g += (j as f64 + 0.5).ln();
    }
    g
}

/// `log K_{n+1/2}(x)`, which is elementary and positive.
fn log_bessel_k_half(n: usize, x: f64) -> f64 {
    let a = hankel_coeffs(n);
    let s: f64 = a.iter().enumerate().map(|(k, c)| c / x.powi(k as i32)).sum();
    0.5 * (std::f64::consts::PI / (2.0 * x)).ln() - x + s.ln()
}

/// Where the positive-order evaluation switches to the Hankel form.
fn hankel_switch(n: usize) -> f64 {
    let nf = n as f64;
    (2.0 * nf * (nf + 1.0)).max(40.0)
}

/// `log I_{n+1/2}(x)` for `n >= 0` (always positive).
fn log_bessel_i_pos(n: usize, x: f64) -> f64 {
    if x >= hankel_switch(n) {
        log_bessel_i_hankel(n, x)
    } else {
        log_bessel_i_series(n, x)
    }
}

fn log_bessel_i_hankel(n: usize, x: f64) -> f64 {
    // I_{n+1/2}(x) = (2 pi x)^{-1/2} [e^x sum (-1)^k a_k/x^k + (-1)^{n+1} e^{-x} sum a_k/x^k]
    let a = hankel_coeffs(n);
    let mut s1 = 0.0;
    let mut s2 = 0.0;
    for (k, c) in a.iter().enumerate() {
        let t = c / x.powi(k as i32);
        s1 += if k % 2 == 0 { t } else { -t };
        s2 += t;
    }
    let sign = if n % 2 == 0 { -1.0 } else { 1.0 };
    let inner = s1 + sign * (-2.0 * x).exp() * s2;
    x - 0.5 * (2.0 * std::f64::consts::PI * x).ln() + inner.ln()
}

fn log_bessel_i_series(n: usize, x: f64) -> f64 {
    let nf = n as f64;
    // Power series sum_k (x/2)^{2k+nu} / (k! Gamma(k+nu+1)): positive terms.
    let nu = nf + 0.5;
    let log_half = (0.5 * x).ln();
    let log_t0 = nu * log_half - ln_gamma_half(n);
    let q = 0.25 * x * x;
    let mut rel = 1.0; // term / t0
    let mut total = 1.0;
    let mut scale = 0.0; // log of the factor pulled out of total
    let mut k = 0.0;
    loop {
        k += 1.0;
        rel *= q / (k * (k + nu));
        total += rel;
        if total > 1e200 {
            scale += total.ln();
            rel /= total;
            total = 1.0;
        }
        if k > 0.5 * x && rel < 1e-18 * total {
            break;
        }
    }
    log_t0 + scale + total.ln()
}

/// `log |I_nu(x)|` with its sign, for half-integer `nu` and `x > 0`.
///
/// Half-integer orders are elementary in `sinh`/`cosh`. Positive orders use
/// the terminating Hankel form for large `x` and the (positive) power series
/// otherwise; negative orders use `I_{-nu} = I_nu + (2/pi) sin(nu pi) K_nu`.
pub fn log_bessel_i(nu: f64, x: f64) -> Result<LogValue> {
    let idx = half_integer_index(nu)
        .ok_or_else(|| Error::Unsupported(format!("order {nu} is not a half-integer")))?;
    if !(x > 0.0) {
        return Err(Error::Domain(format!("argument {x} must be positive")));
    }
    if idx >= 0 {
        return Ok(LogValue::new(log_bessel_i_pos(idx as usize, x), 1));
    }
    // nu = -(n + 1/2)
    let n = (-idx - 1) as usize;
    let i_pos = LogValue::new(log_bessel_i_pos(n, x), 1);
    let k_sign = if n % 2 == 0 { 1 } else { -1 };
    let k_term = LogValue::new(log_bessel_k_half(n, x) + (2.0 / std::f64::consts::PI).ln(), k_sign);
    Ok(i_pos.add(k_term))
}

/// `log I_n(x)` for integer order `n` (where `I_{-n} = I_n`) and `x > 0`,
/// by the power series with positive terms.
pub fn log_bessel_i_integer(n: i64, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("argument {x} must be positive")));
    }
    let nu = n.unsigned_abs() as f64;
    let ln_gamma: f64 = (1..=n.unsigned_abs()).map(|k| (k as f64).ln()).sum();
    let log_t0 = nu * (0.5 * x).ln() - ln_gamma;
    let q = 0.25 * x * x;
    let (mut rel, mut total, mut scale, mut k) = (1.0f64, 1.0f64, 0.0f64, 0.0f64);
    loop {
        k += 1.0;
        rel *= q / (k * (k + nu));
        total += rel;
        if total > 1e200 {
            scale += total.ln();
            rel /= total;
            total = 1.0;
        }
        if k > 0.5 * x && rel < 1e-18 * total {
            break;
        }
    }
    Ok(log_t0 + scale + total.ln())
}

/// Bernoulli numbers `B_0..=B_n` with `B_1 = -1/2`.
pub fn bernoulli_numbers(n: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        if m == 0 {
            b.push(BigRational::one());
            continue;
        }
        // sum_{k=0}^{m} C(m+1, k) B_k = 0
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one();
        for (k, bk) in b.iter().enumerate() {
            acc += BigRational::from_integer(binom.clone()) * bk;
            binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
    }
    b
}

/// Bernoulli polynomial `B_n(x) = sum_k C(n,k) B_k x^{n-k}`.
pub fn bernoulli_poly(n: usize, x: f64) -> f64 {
    let b = bernoulli_numbers(n);
    let mut binom = 1.0;
    let mut total = 0.0;
    for (k, bk) in b.iter().enumerate() {
        total += binom * bk.to_f64().unwrap() * x.powi((n - k) as i32);
        binom = binom * (n - k) as f64 / (k + 1) as f64;
    }
    total
}
