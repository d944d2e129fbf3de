//! Constants of the asymptotic formulas for positive and symmetrized moments,
//! one- and two-term predictions in log domain, and trend reports comparing
//! exact values with the predictions along a ladder of `N`.

use std::f64::consts::PI;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::moments::{log_abs, symmetrized_from_table, CrankRankTable, MomentTable};
pub use crate::special::{dirichlet_eta, log_bessel_i, LogValue};

/// Which reading of the `rho`-term in the second-order constant to use.
///
/// `Eta` takes `rho * eta(r-1)`, which is what the expansion of `S_{l,r}`
/// near `q = 1` produces. `Printed` takes `rho * zeta(r-1) (1 - 2^{1-r})`;
/// the two agree for odd `r` (where `rho = 0`) and the printed form has a
/// pole at `r = 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DTildeVariant {
    #[default]
    Eta,
    Printed,
}

impl std::str::FromStr for DTildeVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "eta" => Ok(DTildeVariant::Eta),
            "printed" => Ok(DTildeVariant::Printed),
            _ => Err(Error::Unsupported(format!("unknown d-tilde variant {s:?}"))),
        }
    }
}

/// `eta(s)`, extended by the trivial zeros at negative even integers.
fn eta_ext(s: i64) -> Result<f64> {
    if s < 0 && s % 2 == 0 {
        return Ok(0.0);
    }
    dirichlet_eta(s as f64)
}

fn factorial(r: u32) -> f64 {
    (1..=r).map(f64::from).product()
}

/// The constant family for one `(r, ell)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticModel {
    pub r: u32,
    pub ell: u32,
    pub rho: f64,
    pub variant: DTildeVariant,
    /// Leading constant of `M_r^+` and `N_r^+`.
    pub gamma: f64,
    /// Leading constant of `M_r^+ - N_r^+`.
    pub delta: f64,
    /// Bessel-form constants of the symmetrized moments.
    pub c: f64,
    pub d: f64,
    /// Constants of `S_{l,r}` near `q = 1`.
    pub c_tilde: f64,
    pub d_tilde: f64,
    /// Constants of `F_{l,r}` near `q = 1`.
    pub c_star: f64,
    pub d_star: f64,
}

/// Builds the model for `r >= 0` and `ell` in `{1, 3}`.
///
/// `r = 0` is accepted as the count of partitions with positive statistic;
/// there `gamma_0 = 1/(8 sqrt 3)` gives half the partition asymptotic.
pub fn build_model(r: u32, ell: u32, variant: DTildeVariant) -> Result<AsymptoticModel> {
    crate::series::check_ell(ell)?;
    let ri = r as i64;
    let rf = r as f64;
    let rho = if r % 2 == 0 { 0.5 } else { 0.0 };
    let sqrt3 = 3f64.sqrt();
    let sqrt2 = 2f64.sqrt();

    let eta_r = eta_ext(ri)?;
    let eta_r1 = eta_ext(ri - 1)?;
    let eta_r2 = eta_ext(ri - 2)?;

    let gamma = factorial(r) * eta_r * 6f64.powf(rf / 2.0) / (4.0 * sqrt3 * PI.powf(rf));
    let delta = factorial(r) * eta_r2 * 6f64.powf((rf - 1.0) / 2.0) / (4.0 * sqrt3 * PI.powf(rf - 1.0));
    let c = eta_r * 6f64.powf(rf / 2.0 - 0.75) / (sqrt2 * PI.powf(rf - 1.0));

    let rho_term = match variant {
        DTildeVariant::Eta => rho * eta_r1,
        DTildeVariant::Printed if rho == 0.0 => 0.0,
        DTildeVariant::Printed => {
            let zeta = crate::special::zeta(rf - 1.0).map_err(|_| {
                Error::Unsupported(format!("printed d-tilde has a pole at r = {r}"))
            })?;
            rho * zeta * (1.0 - 2f64.powf(1.0 - rf))
        }
    };
    let c_tilde = eta_r;
    let d_tilde = -(ell as f64 / 2.0) * eta_r2 - rho_term;
    let root = (2.0 * PI).sqrt();
    let c_star = c_tilde / root;
    let d_star = (-c_tilde / 24.0 + d_tilde) / root;
    // The F-constants pass through the Bessel integral with a factor (pi/sqrt 6)^{5/2-r}.
    let d = PI.powf(2.0 - rf) * 6f64.powf(rf / 2.0 - 1.25) / sqrt2 * (-c_tilde / 24.0 + d_tilde);

    Ok(AsymptoticModel {
        r,
        ell,
        rho,
        variant,
        gamma,
        delta,
        c,
        d,
        c_tilde,
        d_tilde,
        c_star,
        d_star,
    })
}

/// Quantity being predicted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    /// Symmetrized crank moment `mu_r^+`.
    Mu,
    /// Symmetrized rank moment `eta_r^+`.
    Eta,
    MPos,
    NPos,
    /// `M_r^+ - N_r^+`.
    Diff,
}

impl Target {
    pub fn name(self) -> &'static str {
        match self {
            Target::Mu => "mu",
            Target::Eta => "eta",
            Target::MPos => "M_pos",
            Target::NPos => "N_pos",
            Target::Diff => "diff",
        }
    }
}

impl std::str::FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mu" => Ok(Target::Mu),
            "eta" => Ok(Target::Eta),
            "M_pos" | "m_pos" | "mpos" => Ok(Target::MPos),
            "N_pos" | "n_pos" | "npos" => Ok(Target::NPos),
            "diff" => Ok(Target::Diff),
            _ => Err(Error::Unsupported(format!("unknown target {s:?}"))),
        }
    }
}

/// `pi sqrt(2N/3)`.
pub fn bessel_argument(n: f64) -> f64 {
    PI * (2.0 * n / 3.0).sqrt()
}

/// One- or two-term prediction for `target` at `N`, as a log-domain value.
///
/// Only the symmetrized moments have a second term; `Mu` uses the model's
/// `d` as given, so pass a model built with `ell = 1` for `mu` and `ell = 3`
/// for `eta`.
pub fn predict(model: &AsymptoticModel, target: Target, n: f64, terms: u32) -> Result<LogValue> {
    if !(n >= 1.0) {
        return Err(Error::Domain(format!("N = {n} must be at least 1")));
    }
    if terms == 0 || terms > 2 {
        return Err(Error::Unsupported(format!("{terms} terms")));
    }
    let x = bessel_argument(n);
    let rf = model.r as f64;
    let ln_n = n.ln();
    match target {
        Target::Mu | Target::Eta => {
            let lead = log_bessel_i(rf - 1.5, x)?
                .scale(model.c)
                .mul(LogValue::new((rf / 2.0 - 0.75) * ln_n, 1));
            if terms == 1 {
                return Ok(lead);
            }
            let second = log_bessel_i(rf - 2.5, x)?
                .scale(model.d)
                .mul(LogValue::new((rf / 2.0 - 1.25) * ln_n, 1));
            Ok(lead.add(second))
        }
        Target::MPos | Target::NPos | Target::Diff if terms == 2 => Err(Error::Unsupported(
            format!("no second term is available for {}", target.name()),
        )),
        Target::MPos | Target::NPos => {
            Ok(LogValue::from_f64(model.gamma).mul(LogValue::new((rf / 2.0 - 1.0) * ln_n + x, 1)))
        }
        Target::Diff => {
            Ok(LogValue::from_f64(model.delta).mul(LogValue::new((rf / 2.0 - 1.5) * ln_n + x, 1)))
        }
    }
}

/// Exact values set against predictions along a ladder of `N`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrendReport {
    pub target: String,
    pub r: u32,
    pub ell: Option<u32>,
    #[serde(rename = "Ns")]
    pub ns: Vec<usize>,
    pub exact_log: Vec<f64>,
    pub predicted_log: Vec<f64>,
    pub ratios: Vec<f64>,
    /// Least-squares slope of `log|ratio - 1|` against `log N`.
    pub fitted_exponent: f64,
    /// Standard error of the slope (zero for three points on a line).
    pub exponent_stderr: f64,
    /// Whether `|ratio - 1|` strictly decreases along the ladder.
    pub decreasing: bool,
}

impl TrendReport {
    /// `|ratio - 1|` at the last ladder point.
    pub fn final_deviation(&self) -> f64 {
        self.ratios.last().map_or(f64::NAN, |r| (r - 1.0).abs())
    }
}

/// Ordinary least squares `y = a + b x`; returns `(b, stderr of b)`.
fn ols_slope(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let b = sxy / sxx;
    let a = my - b * mx;
    let sse: f64 = xs.iter().zip(ys).map(|(x, y)| (y - a - b * x).powi(2)).sum();
    let se = if xs.len() > 2 { (sse / (n - 2.0) / sxx).sqrt() } else { 0.0 };
    (b, se)
}

/// Builds a trend report from log-domain exact and predicted values.
pub fn trend_from_logs(
    target: &str,
    r: u32,
    ell: Option<u32>,
    ns: &[usize],
    exact: &[LogValue],
    predicted: &[LogValue],
) -> Result<TrendReport> {
    if ns.len() < 3 {
        return Err(Error::InsufficientData(format!(
            "{} ladder points, need at least 3",
            ns.len()
        )));
    }
    if exact.len() != ns.len() || predicted.len() != ns.len() {
        return Err(Error::Consistency("ladder and value lengths differ".into()));
    }
    let mut ratios = Vec::with_capacity(ns.len());
    for ((n, e), p) in ns.iter().zip(exact).zip(predicted) {
        let ratio = e.ratio(*p);
        if !(ratio.is_finite() && ratio > 0.0) {
            return Err(Error::Consistency(format!(
                "{target} ratio at N = {n} is {ratio}"
            )));
        }
        ratios.push(ratio);
    }
    let dev: Vec<f64> = ratios.iter().map(|r| (r - 1.0).abs()).collect();
    if dev.iter().any(|d| *d == 0.0) {
        return Err(Error::InsufficientData(format!(
            "{target}: a ratio equals 1 exactly, no residual to fit"
        )));
    }
    let xs: Vec<f64> = ns.iter().map(|n| (*n as f64).ln()).collect();
    let ys: Vec<f64> = dev.iter().map(|d| d.ln()).collect();
    let (fitted_exponent, exponent_stderr) = ols_slope(&xs, &ys);
    Ok(TrendReport {
        target: target.to_string(),
        r,
        ell,
        ns: ns.to_vec(),
        exact_log: exact.iter().map(|v| v.log).collect(),
        predicted_log: predicted.iter().map(|v| v.log).collect(),
        ratios,
        fitted_exponent,
        exponent_stderr,
        decreasing: dev.windows(2).all(|w| w[1] < w[0]),
    })
}

/// Log-domain form of an exact integer.
pub fn exact_log(x: &BigInt) -> LogValue {
    let (log, sign) = log_abs(x);
    if sign == 0 {
        LogValue::zero()
    } else {
        LogValue::new(log, sign)
    }
}

/// Compares `exact[N]` (indexed by `N`) with the model's prediction.
pub fn trend(
    exact: &[BigInt],
    ns: &[usize],
    model: &AsymptoticModel,
    target: Target,
    terms: u32,
) -> Result<TrendReport> {
    if let Some(&n) = ns.iter().find(|&&n| n >= exact.len()) {
        return Err(Error::InsufficientData(format!(
            "no exact value at N = {n} (have up to {})",
            exact.len().saturating_sub(1)
        )));
    }
    let e: Vec<LogValue> = ns.iter().map(|&n| exact_log(&exact[n])).collect();
    let p = ns
        .iter()
        .map(|&n| predict(model, target, n as f64, terms))
        .collect::<Result<Vec<_>>>()?;
    let ell = matches!(target, Target::Mu | Target::Eta).then_some(model.ell);
    let label = if terms == 2 {
        format!("{}_two_term", target.name())
    } else {
        target.name().to_string()
    };
    trend_from_logs(&label, model.r, ell, ns, &e, &p)
}

/// Trend reports for `M_r^+`, `N_r^+`, their difference and (for `r >= 2`)
/// the one- and two-term symmetrized predictions.
pub fn moment_trends(
    crank: &CrankRankTable,
    rank: &CrankRankTable,
    r: u32,
    ns: &[usize],
    variant: DTildeVariant,
) -> Result<Vec<TrendReport>> {
    let m = MomentTable::positive(crank, r)?;
    let n = MomentTable::positive(rank, r)?;
    let model1 = build_model(r, 1, variant)?;
    let diff: Vec<BigInt> = m.values.iter().zip(&n.values).map(|(a, b)| a - b).collect();
    let mut out = vec![
        trend(&m.values, ns, &model1, Target::MPos, 1)?,
        trend(&n.values, ns, &model1, Target::NPos, 1)?,
        trend(&diff, ns, &model1, Target::Diff, 1)?,
    ];
    if r >= 2 {
        let model3 = build_model(r, 3, variant)?;
        let mu = symmetrized_from_table(crank, r)?;
        let eta = symmetrized_from_table(rank, r)?;
        for terms in [1, 2] {
            out.push(trend(&mu.values, ns, &model1, Target::Mu, terms)?);
            out.push(trend(&eta.values, ns, &model3, Target::Eta, terms)?);
        }
    }
    Ok(out)
}

/// `ospt(N)` against `p(N)/4`, both exact.
pub fn ospt_quarter_trend(ospt: &[BigInt], partitions: &[BigInt], ns: &[usize]) -> Result<TrendReport> {
    let top = ospt.len().min(partitions.len());
    if let Some(&n) = ns.iter().find(|&&n| n >= top) {
        return Err(Error::InsufficientData(format!("no exact value at N = {n}")));
    }
    let e: Vec<LogValue> = ns.iter().map(|&n| exact_log(&ospt[n])).collect();
    let quarter = LogValue::from_f64(0.25);
    let p: Vec<LogValue> = ns.iter().map(|&n| exact_log(&partitions[n]).mul(quarter)).collect();
    trend_from_logs("ospt_over_quarter_p", 1, None, ns, &e, &p)
}
