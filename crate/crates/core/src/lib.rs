//! Exact q-series machinery for the shelf construction behind the
//! Göllnitz-Gordon-Andrews and Gordon partition identities.
//!
//! Everything is computed with [`Series`]: truncated formal Laurent series
//! with arbitrary-precision integer coefficients and explicit precision
//! bookkeeping. On top of it sit
//!
//! * [`product_forms`]: shelf-0 products, the specialized Jacobi triple
//!   product and the alternating-sum form of the shelf-0 series,
//! * [`shelves`]: the shelf recursion, its closed form, edge-matching and
//!   the Empirical Hypothesis checks,
//! * [`matrices`]: transfer matrices, h-polynomials and their limit,
//! * [`partitions`]: brute-force partition enumeration, the ground truth
//!   for every combinatorial statement,
//! * [`gordon`]: the same program for Gordon's identities,
//! * [`xq`]: specializations of Andrews' `J_{k,i}(a, x, q)` and the
//!   resulting dictionaries,
//! * [`verify`]: named verification suites and their reports.

pub mod check;
pub mod error;
pub mod gordon;
pub mod matrices;
pub mod partitions;
pub mod product_forms;
pub mod series;
pub mod shelves;
pub mod verify;
pub mod xq;

pub use check::{CheckResult, Discrepancy, ParamValue, Status};
pub use error::{Error, Result};
pub use series::{Series, EXACT};

/// Which identity family a computation belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// Göllnitz-Gordon-Andrews.
    Gga,
    /// Gordon (Rogers-Ramanujan for k = 2).
    Gordon,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Gga => "gga",
            Family::Gordon => "gordon",
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gga" => Ok(Family::Gga),
            "gordon" => Ok(Family::Gordon),
            other => Err(Error::InvalidParameter(format!("unknown family {other:?}"))),
        }
    }
}

pub(crate) fn check_k_i(k: i64, i: i64) -> Result<()> {
    if k < 2 {
        return Err(error::invalid(format!("k must be >= 2, got {k}")));
    }
    if !(1..=k).contains(&i) {
        return Err(error::invalid(format!("i must lie in [1, {k}], got {i}")));
    }
    Ok(())
}

pub(crate) fn binom2(n: i64) -> i64 {
    n * (n - 1) / 2
}
