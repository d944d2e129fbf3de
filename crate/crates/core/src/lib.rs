//! Exact and asymptotic computation of partition crank and rank statistics.
//!
//! The crate is split along the lines of the computation:
//!
//! - [`series`]: truncated power series over big integers, the crank/rank
//!   bivariate generating functions, the false Appell sums `S_{l,r}` and
//!   direct floating-point evaluation of the same objects inside the disk.
//! - [`partition`]: brute-force enumeration and per-partition statistics,
//!   used as the oracle for everything generated from q-series.
//! - [`moments`]: crank/rank tables, full, positive and symmetrized
//!   moments, the binomial basis change, spt and ospt.
//! - [`asymptotic`]: the constants of the asymptotic formulas, half-integer
//!   Bessel functions in log domain, predictions and trend reports.
//! - [`circle`]: numerical checks of the circle-method argument (Mittag-Leffler
//!   kernel, main and error arcs, Wright's `P_s`, Zagier expansions).
//! - [`parity`]: factorization of `24N - 1` and the ospt/spt parity criterion.
//! - [`verify`]: the identity suite used by the `verify` command.

pub mod asymptotic;
pub mod circle;
pub mod error;
pub mod moments;
pub mod parity;
pub mod partition;
pub mod quadrature;
pub mod series;
pub mod special;
pub mod verify;

pub use error::{Error, Result};

/// Which partition statistic a table or generating function refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Statistic {
    Crank,
    Rank,
}

impl Statistic {
    pub fn name(self) -> &'static str {
        match self {
            Statistic::Crank => "crank",
            Statistic::Rank => "rank",
        }
    }
}

impl std::fmt::Display for Statistic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}
