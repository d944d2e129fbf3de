//! Numerical checks of the circle-method argument for `F_{l,r}`.
//!
//! Covers the partial-fraction expansion of the kernel `(-2i sin pi w)^{-r}`,
//! the theta-like sums `g_{l,j}`, the behaviour of `S_{l,r}`, `1/(q)_inf`
//! and `F_{l,r}` on the circle `|q| = e^{-pi/sqrt(6N)}`, the main-arc and
//! error-arc integrals for the coefficients, Wright's `P_s`, and Euler-type
//! expansions of sums `sum_m f((m + a) t)`.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::io::Write;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::asymptotic::{build_model, DTildeVariant};
use crate::error::{Error, Result};
use crate::moments::symmetrized_moments;
use crate::quadrature::{adaptive, GaussLegendre};
use crate::series::{check_ell, eval_complex, log_euler_product, Evaluation, QPoint, SeriesKind, MAX_TERMS};
use crate::special::{bernoulli_poly, log_bessel_i, log_bessel_i_integer};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Principal-part coefficients of `(-2i sin pi w)^{-r}` at `w = 0` in powers
/// of `(-2 pi i w)^{-j}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MLDecomposition {
    pub r: u32,
    /// `alpha_j` for `0 < j <= r`, `j = r (mod 2)`.
    pub alphas: BTreeMap<u32, f64>,
    #[serde(skip)]
    exact: BTreeMap<u32, BigRational>,
}

/// Coefficients of `(sinh u / u)^{-r}` in powers of `u^2`, through `u^{2k}`.
fn sinhc_power(r: u32, k: usize) -> Vec<BigRational> {
    // sinh u / u = sum u^{2i} / (2i+1)!
    let mut a = Vec::with_capacity(k + 1);
    let mut fact = BigInt::one();
    for i in 0..=k {
        if i > 0 {
            fact *= BigInt::from((2 * i) * (2 * i + 1));
        }
        a.push(BigRational::new(BigInt::one(), fact.clone()));
    }
    // g = f^p with p = -r: n g_n = sum_{i=1}^{n} ((p+1) i - n) a_i g_{n-i}
    let p = -(r as i64);
    let mut g = vec![BigRational::one()];
    for n in 1..=k {
        let mut acc = BigRational::zero();
        for i in 1..=n {
            let c = (p + 1) * i as i64 - n as i64;
            acc += BigRational::from_integer(BigInt::from(c)) * &a[i] * &g[n - i];
        }
        g.push(acc / BigRational::from_integer(BigInt::from(n)));
    }
    g
}

/// Builds the decomposition for `1 <= r <= 12`.
pub fn ml_alphas(r: u32) -> Result<MLDecomposition> {
    if !(1..=12).contains(&r) {
        return Err(Error::Unsupported(format!("r = {r} outside 1..=12")));
    }
    // (2 sinh(z/2))^{-r} = z^{-r} (sinh u/u)^{-r} with u = z/2, z = -2 pi i w.
    let k_max = ((r - 1) / 2) as usize;
    let g = sinhc_power(r, k_max);
    let mut exact = BTreeMap::new();
    let mut alphas = BTreeMap::new();
    let mut four_k = BigInt::one();
    for (k, gk) in g.into_iter().enumerate() {
        let j = r - 2 * k as u32;
        let a = gk / BigRational::from_integer(four_k.clone());
        alphas.insert(j, a.to_f64().unwrap_or(f64::NAN));
        exact.insert(j, a);
        four_k *= 4;
    }
    Ok(MLDecomposition { r, alphas, exact })
}

impl MLDecomposition {
    pub fn alpha(&self, j: u32) -> f64 {
        self.alphas.get(&j).copied().unwrap_or(0.0)
    }

    pub fn exact_alpha(&self, j: u32) -> Option<&BigRational> {
        self.exact.get(&j)
    }

    /// `(-2i sin pi w)^{-r}`.
    pub fn kernel(&self, w: Complex64) -> Complex64 {
        (-2.0 * I * (PI * w).sin()).powi(-(self.r as i32))
    }

    /// The partial-fraction sum with poles `|m| <= m_max`, and an estimate of
    /// the neglected part.
    ///
    /// `K(w + m) = (-1)^{mr} K(w)`, so for odd `r` the principal parts at the
    /// integers alternate in sign. In that case the last term is halved
    /// (averaging consecutive partial sums), which leaves an error of the
    /// order of the difference of two consecutive terms.
    pub fn decomposition(&self, w: Complex64, m_max: usize) -> (Complex64, f64) {
        let z = -2.0 * PI * I;
        let odd = self.r % 2 == 1;
        let mut total = Complex64::new(0.0, 0.0);
        let mut tail = 0.0;
        for (&j, &alpha) in &self.alphas {
            let ji = j as i32;
            let coef = alpha / z.powi(ji);
            let pair = |m: f64| (w - m).powi(-ji) + (w + m).powi(-ji);
            let mut s = w.powi(-ji);
            for m in 1..=m_max {
                let sign = if odd && m % 2 == 1 { -1.0 } else { 1.0 };
                let weight = if odd && m == m_max { 0.5 } else { 1.0 };
                s += pair(m as f64) * (sign * weight);
            }
            let next = pair((m_max + 1) as f64).norm();
            let err = if odd {
                (pair(m_max as f64).norm() - next).abs() * 0.5 + next * 1e-3
            } else {
                let mf = m_max as f64 - w.norm();
                if j == 1 { next * mf } else { 2.0 / ((j as f64 - 1.0) * mf.powi(ji - 1)) }
            };
            total += coef * s;
            tail += coef.norm() * err;
        }
        (total, tail)
    }
}

/// `g_{l,j}(tau) = sum_{n>=1} (-1)^{n+1} n^{-j} q^{l n^2/2 + rho n}`.
pub fn g_lj(ell: u32, j: i32, rho: f64, tau: Complex64) -> Result<Evaluation> {
    check_ell(ell)?;
    let q = QPoint::from_tau(tau)?;
    let l = ell as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    for n in 1..=MAX_TERMS {
        let nf = n as f64;
        let term = q.pow(l * nf * nf / 2.0 + rho * nf) * nf.powi(-j);
        if n % 2 == 1 {
            sum += term;
        } else {
            sum -= term;
        }
        // Majorant ratios |q|^{l(2k+1)/2 + rho} ((k+1)/k)^{max(-j,0)} decrease in k.
        let m = nf + 1.0;
        let next = q.abs_pow(l * m * m / 2.0 + rho * m) * m.powi(-j);
        let ratio = q.abs_pow(l * (2.0 * m + 1.0) / 2.0 + rho) * ((m + 1.0) / m).powi((-j).max(0));
        if ratio < 1.0 {
            let bound = next / (1.0 - ratio);
            if bound < 1e-13 * sum.norm() || bound < 1e-300 {
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
        achieved: f64::NAN,
    })
}

/// `y = 1/(2 sqrt(6N))`, the height of the integration circle in `tau`.
pub fn circle_height(n: f64) -> f64 {
    1.0 / (2.0 * (6.0 * n).sqrt())
}

/// `log F_{l,r}(q)` as `log S_{l,r}(q) - log (q)_inf`.
fn log_f(ell: u32, r: u32, q: &QPoint) -> Result<Complex64> {
    let s = eval_complex(SeriesKind::Appell { ell, r }, q, 1e-15)?;
    let (log_qinf, _, _) = log_euler_product(q, 1e-15)?;
    Ok(s.value.ln() - log_qinf)
}

/// One sample of a bound check: `lhs <= K * rhs_bound` with `ratio = lhs / rhs_bound`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundRow {
    #[serde(rename = "N")]
    pub n: u64,
    pub x: f64,
    pub y: f64,
    pub lhs: f64,
    pub rhs_bound: f64,
    pub ratio: f64,
}

/// A bound verified as stability of the fitted constant along a ladder.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCheck {
    pub name: String,
    pub rows: Vec<BoundRow>,
    /// `(N, max ratio over the samples at N)`.
    pub constants: Vec<(u64, f64)>,
    /// `max_N K_N / K_{N_0}`: how far the constant grows past its first value.
    pub growth: f64,
    /// `max_N K_N / min_N K_N`.
    pub spread: f64,
}

impl BoundCheck {
    fn from_rows(name: String, rows: Vec<BoundRow>) -> Self {
        let mut constants: Vec<(u64, f64)> = Vec::new();
        for row in &rows {
            match constants.last_mut() {
                Some((n, k)) if *n == row.n => *k = k.max(row.ratio),
                _ => constants.push((row.n, row.ratio)),
            }
        }
        let first = constants.first().map_or(f64::NAN, |c| c.1);
        let max = constants.iter().map(|c| c.1).fold(f64::NEG_INFINITY, f64::max);
        let min = constants.iter().map(|c| c.1).fold(f64::INFINITY, f64::min);
        BoundCheck {
            name,
            rows,
            constants,
            growth: max / first,
            spread: max / min,
        }
    }

    /// The constant never exceeds twice its value at the first `N`.
    pub fn bounded(&self) -> bool {
        self.growth.is_finite() && self.growth <= 2.0
    }

    /// The constant varies by less than a factor 2 along the ladder.
    pub fn stable(&self) -> bool {
        self.spread.is_finite() && self.spread < 2.0
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["N", "x", "y", "lhs", "rhs_bound", "ratio"])?;
        for r in &self.rows {
            w.write_record([
                r.n.to_string(),
                format!("{:e}", r.x),
                format!("{:e}", r.y),
                format!("{:e}", r.lhs),
                format!("{:e}", r.rhs_bound),
                format!("{:e}", r.ratio),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// `samples` points `x` evenly spread over `[-y, y]`.
fn near_grid(y: f64, samples: usize) -> Vec<f64> {
    let s = samples.max(2);
    (0..s).map(|k| y * (-1.0 + 2.0 * k as f64 / (s - 1) as f64)).collect()
}

/// Checks `1/(q)_inf = sqrt(-i tau) e^{pi i/(12 tau)} (1 + 2 pi i tau/24 + O(1/N))`
/// for `|x| <= y`: the bound is `1/N` on `|ratio - 1|`.
pub fn qinfty_check(ns: &[u64], samples: usize) -> Result<BoundCheck> {
    let mut rows = Vec::new();
    for &n in ns {
        let y = circle_height(n as f64);
        for x in near_grid(y, samples) {
            let tau = Complex64::new(x, y);
            let q = QPoint::from_tau(tau)?;
            let (log_qinf, _, _) = log_euler_product(&q, 1e-16)?;
            let approx = 0.5 * (-I * tau).ln() + PI * I / (12.0 * tau) + (1.0 + 2.0 * PI * I * tau / 24.0).ln();
            let lhs = ((-log_qinf - approx).exp() - 1.0).norm();
            let rhs = 1.0 / n as f64;
            rows.push(BoundRow { n, x, y, lhs, rhs_bound: rhs, ratio: lhs / rhs });
        }
    }
    Ok(BoundCheck::from_rows("qinfty".into(), rows))
}

/// Checks `S_{l,r}(q) - c~ z^{-r} - d~ z^{1-r} = O(N^{r/2-1})`, `z = -2 pi i tau`,
/// for `|x| <= y`.
pub fn s_residual_check(
    ell: u32,
    r: u32,
    variant: DTildeVariant,
    ns: &[u64],
    samples: usize,
) -> Result<BoundCheck> {
    let model = build_model(r, ell, variant)?;
    let mut rows = Vec::new();
    for &n in ns {
        let y = circle_height(n as f64);
        for x in near_grid(y, samples) {
            let tau = Complex64::new(x, y);
            let q = QPoint::from_tau(tau)?;
            let s = eval_complex(SeriesKind::Appell { ell, r }, &q, 1e-16)?.value;
            let z = -2.0 * PI * I * tau;
            let main = model.c_tilde * z.powi(-(r as i32)) + model.d_tilde * z.powi(1 - r as i32);
            let lhs = (s - main).norm();
            let rhs = (n as f64).powf(r as f64 / 2.0 - 1.0);
            rows.push(BoundRow { n, x, y, lhs, rhs_bound: rhs, ratio: lhs / rhs });
        }
    }
    let name = format!("s_residual_l{ell}_r{r}_{variant:?}").to_lowercase();
    Ok(BoundCheck::from_rows(name, rows))
}

/// Checks `|F_{l,r}(q)| <= K N^{r/2+1/4} e^{(pi/2) sqrt(N/6)}` on `y <= x <= 1/2`.
///
/// Since `F` has real coefficients, `|F|` is even in `x`. Samples are spaced
/// geometrically from `y` to `1/2`.
pub fn f_away_check(ell: u32, r: u32, ns: &[u64], samples: usize) -> Result<BoundCheck> {
    let mut rows = Vec::new();
    let s = samples.max(2);
    for &n in ns {
        let nf = n as f64;
        let y = circle_height(nf);
        let log_rhs = (r as f64 / 2.0 + 0.25) * nf.ln() + 0.5 * PI * (nf / 6.0).sqrt();
        for k in 0..s {
            let x = y * (0.5 / y).powf(k as f64 / (s - 1) as f64);
            let q = QPoint::from_tau(Complex64::new(x, y))?;
            let log_lhs = log_f(ell, r, &q)?.re;
            rows.push(BoundRow {
                n,
                x,
                y,
                lhs: log_lhs.exp(),
                rhs_bound: log_rhs.exp(),
                ratio: (log_lhs - log_rhs).exp(),
            });
        }
    }
    Ok(BoundCheck::from_rows(format!("f_away_l{ell}_r{r}"), rows))
}

/// Checks `|g_{l,j}(tau)| <= C` for `|x| <= y`.
pub fn glj_check(ell: u32, j: i32, rho: f64, ns: &[u64], samples: usize) -> Result<BoundCheck> {
    let mut rows = Vec::new();
    for &n in ns {
        let y = circle_height(n as f64);
        for x in near_grid(y, samples) {
            let lhs = g_lj(ell, j, rho, Complex64::new(x, y))?.value.norm();
            rows.push(BoundRow { n, x, y, lhs, rhs_bound: 1.0, ratio: lhs });
        }
    }
    Ok(BoundCheck::from_rows(format!("g_l{ell}_j{j}_rho{rho}"), rows))
}

/// Main-arc and error-arc integrals for the `N`-th coefficient of `F_{l,r}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadratureReport {
    #[serde(rename = "N")]
    pub n: usize,
    pub ell: u32,
    pub r: u32,
    /// `[re, im]`
    pub i_prime: [f64; 2],
    pub i_double_prime: [f64; 2],
    #[serde(serialize_with = "crate::moments::serialize_bigint")]
    pub exact_coefficient: BigInt,
    pub relative_error: f64,
    pub panel_count: usize,
    pub estimated_quadrature_error: f64,
    /// `|I''| / |I'|`
    pub arc_ratio: f64,
}

/// Computes `I'` (over `|x| <= y`) and `I''` (over `y <= |x| <= 1/2`) for the
/// coefficient integral of `F_{l,r}` on `|q| = e^{-pi/sqrt(6N)}` and compares
/// their sum with the exact coefficient.
///
/// `panels` is the initial number of panels per piece.
pub fn wright_integrals(ell: u32, r: u32, n: usize, panels: usize) -> Result<QuadratureReport> {
    check_ell(ell)?;
    if !(20..=400).contains(&n) {
        return Err(Error::OutOfRange(format!("N = {n} outside 20..=400")));
    }
    if r == 0 {
        return Err(Error::Domain("r must be at least 1".into()));
    }
    let nf = n as f64;
    let y = circle_height(nf);
    let shift = PI * (nf / 6.0).sqrt();
    let integrand = |x: f64| -> Result<Complex64> {
        let q = QPoint::from_tau(Complex64::new(x, y))?;
        Ok((log_f(ell, r, &q)? + shift - 2.0 * PI * I * nf * x).exp())
    };
    let rule = GaussLegendre::new(20);
    // Scale for the absolute target from a coarse main-arc pass.
    let mut pilot_f = integrand;
    let pilot = rule.integrate(&mut pilot_f, -y, y)?.norm();
    let tol = 1e-10 * pilot;
    let max_panels = 200_000;
    let main = adaptive(&rule, integrand, -y, y, tol, panels, max_panels)?;
    let right = adaptive(&rule, integrand, y, 0.5, tol / 2.0, panels, max_panels)?;
    let left = adaptive(&rule, integrand, -0.5, -y, tol / 2.0, panels, max_panels)?;
    let i1 = main.value;
    let i2 = left.value + right.value;
    let exact = symmetrized_moments(ell, r, n)?.value(n).clone();
    let exact_f = exact.to_f64().unwrap_or(f64::NAN);
    Ok(QuadratureReport {
        n,
        ell,
        r,
        i_prime: [i1.re, i1.im],
        i_double_prime: [i2.re, i2.im],
        relative_error: ((i1 + i2) - exact_f).norm() / exact_f.abs(),
        exact_coefficient: exact,
        panel_count: main.panels + left.panels + right.panels,
        estimated_quadrature_error: main.error + left.error + right.error,
        arc_ratio: i2.norm() / i1.norm(),
    })
}

/// Wright's `P_s = (1/2 pi i) int_{1-i}^{1+i} v^s e^{A(v + 1/v)} dv`,
/// `A = pi sqrt(N/6)`, returned as `(P_s e^{-2A}, 2A)`.
pub fn p_s_integral(s: f64, n: f64) -> Result<(Complex64, f64)> {
    if !(n >= 1.0) {
        return Err(Error::Domain(format!("N = {n} must be at least 1")));
    }
    let a = PI * (n / 6.0).sqrt();
    // v = 1 + i t, dv = i dt: P_s = (1/2 pi) int_{-1}^{1} v^s e^{A(v + 1/v)} dt.
    let f = |t: f64| -> Result<Complex64> {
        let v = Complex64::new(1.0, t);
        Ok((s * v.ln() + a * (v + v.inv()) - 2.0 * a).exp())
    };
    let rule = GaussLegendre::new(20);
    let q = adaptive(&rule, f, -1.0, 1.0, 1e-15, 8, 100_000)?;
    Ok((q.value / (2.0 * PI), 2.0 * a))
}

/// `P_s` set against `I_{-s-1}(pi sqrt(2N/3))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PsComparison {
    pub s: f64,
    #[serde(rename = "N")]
    pub n: f64,
    /// `|P_s - I| / |I|`
    pub relative_deviation: f64,
    /// `e^{-(pi/2) sqrt(N/6)}`
    pub scale: f64,
    /// Imaginary part of `P_s` relative to `|I|` (zero by symmetry).
    pub imaginary: f64,
}

pub fn p_s_vs_bessel(s: f64, n: f64) -> Result<PsComparison> {
    let (scaled, log_scale) = p_s_integral(s, n)?;
    let order = -s - 1.0;
    let x = PI * (2.0 * n / 3.0).sqrt();
    let bessel = if order.fract() == 0.0 {
        crate::special::LogValue::new(log_bessel_i_integer(order as i64, x)?, 1)
    } else {
        log_bessel_i(order, x)?
    };
    // Both relative to e^{2A} = e^x.
    let b = bessel.sign as f64 * (bessel.log - log_scale).exp();
    Ok(PsComparison {
        s,
        n,
        relative_deviation: (scaled - b).norm() / b.abs(),
        scale: (-0.5 * PI * (n / 6.0).sqrt()).exp(),
        imaginary: scaled.im / b.abs(),
    })
}

/// A smooth function of rapid decay with its Taylor coefficients at 0 and
/// its integral over `(0, inf)`.
#[derive(Debug, Clone, Copy)]
pub struct ZagierFunction {
    pub name: &'static str,
    pub f: fn(f64) -> f64,
    pub taylor: fn(usize) -> f64,
    pub integral: f64,
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// `e^{-u}`.
pub fn exponential() -> ZagierFunction {
    ZagierFunction {
        name: "exp",
        f: |u| (-u).exp(),
        taylor: |n| (if n % 2 == 0 { 1.0 } else { -1.0 }) / factorial(n),
        integral: 1.0,
    }
}

/// `u e^{-u^2}`.
pub fn odd_gaussian() -> ZagierFunction {
    ZagierFunction {
        name: "u_exp_neg_u2",
        f: |u| u * (-u * u).exp(),
        taylor: |n| {
            if n % 2 == 0 {
                0.0
            } else {
                let k = (n - 1) / 2;
                (if k % 2 == 0 { 1.0 } else { -1.0 }) / factorial(k)
            }
        },
        integral: 0.5,
    }
}

/// `e^{-2u^2} (1 - e^{-4u^2}) / (2u)`, the kernel behind `g(y)`.
pub fn string_kernel() -> ZagierFunction {
    ZagierFunction {
        name: "string_kernel",
        f: |u| {
            if u == 0.0 {
                0.0
            } else {
                (-2.0 * u * u).exp() * -(-4.0 * u * u).exp_m1() / (2.0 * u)
            }
        },
        taylor: |n| {
            if n % 2 == 0 {
                0.0
            } else {
                let k = (n + 1) / 2;
                ((-2f64).powi(k as i32) - (-6f64).powi(k as i32)) / (2.0 * factorial(k))
            }
        },
        integral: 3f64.ln() / 4.0,
    }
}

/// The built-in test functions.
pub fn builtin_functions() -> [ZagierFunction; 3] {
    [exponential(), odd_gaussian(), string_kernel()]
}

/// `I_f / t - sum_{n=0}^{S} b_n B_{n+1}(a) / (n+1) t^n`.
pub fn zagier_expand(f: &ZagierFunction, a: f64, t: f64, s: usize) -> f64 {
    let mut total = f.integral / t;
    for n in 0..=s {
        total -= (f.taylor)(n) * bernoulli_poly(n + 1, a) / (n + 1) as f64 * t.powi(n as i32);
    }
    total
}

/// `sum_{m>=0} f((m + a) t)` summed until the remaining terms are below
/// `1e-16` of the sum (assuming monotone decay past `u = 1`).
pub fn zagier_direct(f: &ZagierFunction, a: f64, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!("t = {t} must be positive")));
    }
    let mut sum = 0.0;
    for m in 0..MAX_TERMS {
        let u = (m as f64 + a) * t;
        let v = (f.f)(u);
        sum += v;
        if u > 1.0 && v.abs() * (1.0 + 1.0 / t) < 1e-16 * sum.abs().max(1e-300) {
            return Ok(sum);
        }
    }
    Err(Error::Convergence {
        iterations: MAX_TERMS,
        achieved: f64::NAN,
    })
}

/// Residuals of the `S`-term expansion along a ladder of `t`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZagierFit {
    pub function: String,
    pub a: f64,
    pub s: usize,
    pub ts: Vec<f64>,
    pub residuals: Vec<f64>,
    /// Least-squares slope of `log|residual|` against `log t`.
    pub slope: f64,
}

pub fn zagier_residual_slope(f: &ZagierFunction, a: f64, s: usize, ts: &[f64]) -> Result<ZagierFit> {
    if ts.len() < 2 {
        return Err(Error::InsufficientData("need at least two values of t".into()));
    }
    let mut residuals = Vec::with_capacity(ts.len());
    for &t in ts {
        residuals.push((zagier_direct(f, a, t)? - zagier_expand(f, a, t, s)).abs());
    }
    let xs: Vec<f64> = ts.iter().map(|t| t.ln()).collect();
    let ys: Vec<f64> = residuals.iter().map(|r| r.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    Ok(ZagierFit {
        function: f.name.to_string(),
        a,
        s,
        ts: ts.to_vec(),
        residuals,
        slope: sxy / sxx,
    })
}

/// `sum_{n>=1} n e^{-pi n^2 y}`, which behaves like `1/(2 pi y)`.
pub fn j1_sum(y: f64) -> Result<f64> {
    let t = (PI * y).sqrt();
    Ok(zagier_direct(&odd_gaussian(), 1.0, t)? / t)
}

/// `g(y) = sum_{n>=1} (-1)^{n+1} e^{-n^2 y/2} (1 - e^{-n^2 y}) / n`, which
/// behaves like `y/4`.
pub fn g_string(y: f64) -> Result<f64> {
    if !(y > 0.0) {
        return Err(Error::Domain(format!("y = {y} must be positive")));
    }
    let mut sum = 0.0;
    for n in 1..MAX_TERMS {
        let nf = n as f64;
        let e = nf * nf * y;
        let term = (-e / 2.0).exp() * -(-e).exp_m1() / nf;
        sum += if n % 2 == 1 { term } else { -term };
        if e > 80.0 {
            return Ok(sum);
        }
    }
    Err(Error::Convergence {
        iterations: MAX_TERMS,
        achieved: f64::NAN,
    })
}

/// One point of the approach of `T(e^{-y})` to `1/4`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TLimitRow {
    pub y: f64,
    pub value: f64,
    pub deviation: f64,
    pub tail_bound: f64,
}

pub fn t_limit_check(ys: &[f64]) -> Result<Vec<TLimitRow>> {
    ys.iter()
        .map(|&y| {
            if !(y > 0.0 && y < 1.0 + f64::EPSILON) {
                return Err(Error::Domain(format!("y = {y} outside (0, 1]")));
            }
            let e = eval_complex(SeriesKind::T, &QPoint::from_neg_log(y)?, 1e-14)?;
            Ok(TLimitRow {
                y,
                value: e.value.re,
                deviation: (e.value.re - 0.25).abs(),
                tail_bound: e.tail_bound,
            })
        })
        .collect()
}
