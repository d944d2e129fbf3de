//! Adaptive composite Gauss-Legendre quadrature for complex integrands.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Nodes and weights of an `n`-point Gauss-Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Roots of `P_n` by Newton iteration from the Chebyshev-like guesses.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// The rule mapped to `[a, b]`.
    pub fn integrate<F>(&self, f: &mut F, a: f64, b: f64) -> Result<Complex64>
    where
        F: FnMut(f64) -> Result<Complex64>,
    {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = Complex64::new(0.0, 0.0);
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += f(mid + half * x)? * *w;
        }
        Ok(acc * half)
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: Complex64,
    /// Sum of the per-panel differences between one rule and its two halves.
    pub error: f64,
    pub panels: usize,
}

/// Integrates `f` over `[a, b]` to an absolute error `abs_tol`.
///
/// The interval starts as `initial_panels` equal pieces. A panel is accepted
/// when the rule on it and the sum over its halves differ by at most its
/// share of `abs_tol`; otherwise it is bisected. Fails with a convergence
/// error once more than `max_panels` panels would be needed.
pub fn adaptive<F>(
    rule: &GaussLegendre,
    mut f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    initial_panels: usize,
    max_panels: usize,
) -> Result<Quadrature>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    if !(abs_tol > 0.0) || !(b > a) {
        return Err(Error::Domain(format!(
            "need a < b and positive tolerance, got [{a}, {b}] and {abs_tol}"
        )));
    }
    let total = b - a;
    let pieces = initial_panels.max(1);
    let mut stack: Vec<(f64, f64, Complex64)> = Vec::new();
    for i in (0..pieces).rev() {
        let lo = a + total * i as f64 / pieces as f64;
        let hi = a + total * (i + 1) as f64 / pieces as f64;
        let whole = rule.integrate(&mut f, lo, hi)?;
        stack.push((lo, hi, whole));
    }
    let mut value = Complex64::new(0.0, 0.0);
    let mut error = 0.0;
    let mut panels = 0usize;
    while let Some((lo, hi, whole)) = stack.pop() {
        let mid = 0.5 * (lo + hi);
        let left = rule.integrate(&mut f, lo, mid)?;
        let right = rule.integrate(&mut f, mid, hi)?;
        let diff = (left + right - whole).norm();
        let share = abs_tol * (hi - lo) / total;
        if diff <= share || hi - lo < total * 1e-14 {
            value += left + right;
            error += diff;
            panels += 1;
        } else {
            if panels + stack.len() + 2 > max_panels {
                return Err(Error::Convergence {
                    iterations: max_panels,
                    achieved: error + diff,
                });
            }
            stack.push((mid, hi, right));
            stack.push((lo, mid, left));
        }
    }
    Ok(Quadrature {
        value,
        error,
        panels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_integrates_polynomials_exactly() {
        let g = GaussLegendre::new(5);
        // exact through degree 9
        let v = g
            .integrate(&mut |x| Ok(Complex64::new(x.powi(8) + x.powi(3), x * x)), -1.0, 1.0)
            .unwrap();
        assert!((v.re - 2.0 / 9.0).abs() < 1e-15);
        assert!((v.im - 2.0 / 3.0).abs() < 1e-15);
        let sum: f64 = GaussLegendre::new(20).weights.iter().sum();
        assert!((sum - 2.0).abs() < 1e-14);
    }

    #[test]
    fn adaptive_oscillatory() {
        // int_0^1 e^{2 pi i 37 x} e^{-x} dx
        let k = 2.0 * std::f64::consts::PI * 37.0;
        let z = Complex64::new(-1.0, k);
        let exact = (z.exp() - 1.0) / z;
        let g = GaussLegendre::new(16);
        let q = adaptive(&g, |x| Ok((z * x).exp()), 0.0, 1.0, 1e-13, 4, 10_000).unwrap();
        assert!((q.value - exact).norm() < 1e-12);
    }

    #[test]
    fn adaptive_reports_failure() {
        let g = GaussLegendre::new(4);
        let r = adaptive(
            &g,
            |x| Ok(Complex64::new(x.abs().sqrt().recip(), 0.0)),
            -1.0,
            1.0,
            1e-15,
            1,
            8,
        );
        assert!(matches!(r, Err(Error::Convergence { .. })));
    }
}
