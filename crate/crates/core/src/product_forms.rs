//! Shelf-0 objects: congruence-conditioned products, `F(q)`, the specialized
//! Jacobi triple product and the alternating-sum form of the shelf-0 series.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::check::CheckResult;
use crate::error::{invalid, Result};
use crate::series::Series;
use crate::{binom2, check_k_i};

/// A set of admissible exponents `m >= 1` described by excluded residues,
/// optionally intersected with a second modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceProductSpec {
    pub modulus: i64,
    pub excluded_residues: BTreeSet<i64>,
    pub secondary: Option<(i64, BTreeSet<i64>)>,
    /// `true` for `prod (1 - q^m)^{-1}`, `false` for `prod (1 - q^m)`.
    pub inverted: bool,
}

impl CongruenceProductSpec {
    pub fn new(
        modulus: i64,
        excluded: impl IntoIterator<Item = i64>,
        inverted: bool,
    ) -> Result<Self> {
        if modulus < 1 {
            return Err(invalid(format!("modulus must be positive, got {modulus}")));
        }
        Ok(CongruenceProductSpec {
            modulus,
            excluded_residues: excluded
                .into_iter()
                .map(|r| r.rem_euclid(modulus))
                .collect(),
            secondary: None,
            inverted,
        })
    }

    /// Spec admitting exactly the listed residues.
    pub fn allowing(
        modulus: i64,
        allowed: impl IntoIterator<Item = i64>,
        inverted: bool,
    ) -> Result<Self> {
        let allowed: BTreeSet<i64> = allowed
            .into_iter()
            .map(|r| r.rem_euclid(modulus.max(1)))
            .collect();
        Self::new(
            modulus,
            (0..modulus).filter(|r| !allowed.contains(r)),
            inverted,
        )
    }

    pub fn with_secondary(
        mut self,
        modulus: i64,
        excluded: impl IntoIterator<Item = i64>,
    ) -> Result<Self> {
        if modulus < 1 {
            return Err(invalid(format!("modulus must be positive, got {modulus}")));
        }
        self.secondary = Some((
            modulus,
            excluded
                .into_iter()
                .map(|r| r.rem_euclid(modulus))
                .collect(),
        ));
        Ok(self)
    }

    pub fn admits(&self, m: i64) -> bool {
        m >= 1
            && !self.excluded_residues.contains(&m.rem_euclid(self.modulus))
            && self
                .secondary
                .as_ref()
                .is_none_or(|(md, ex)| !ex.contains(&m.rem_euclid(*md)))
    }

    /// Parts `m ≢ 2 (mod 4)`, `m ≢ 0, 2k ± (2i-1) (mod 4k)`: the product side
    /// of the Göllnitz-Gordon-Andrews identity for `(k, i)`.
    pub fn gga(k: i64, i: i64) -> Result<Self> {
        check_k_i(k, i)?;
        Self::new(4 * k, [0, 2 * k + 2 * i - 1, 2 * k - 2 * i + 1], true)?.with_secondary(4, [2])
    }

    /// `F(q) = prod_{m ≢ 2 (mod 4)} (1 - q^m)`.
    pub fn f() -> Self {
        Self::new(4, [2], false).expect("static modulus")
    }

    /// `prod_{m ≡ 0, 2k ± (2i-1) (mod 4k)} (1 - q^m)`.
    pub fn jtp(k: i64, i: i64) -> Result<Self> {
        check_k_i(k, i)?;
        Self::allowing(4 * k, [0, 2 * k + 2 * i - 1, 2 * k - 2 * i + 1], false)
    }
}

/// The product over admissible `m <= n`, exact below `q^(n+1)`.
pub fn congruence_product(spec: &CongruenceProductSpec, n: i64) -> Series {
    let len = (n.max(0) + 1) as usize;
    let mut c = vec![BigInt::zero(); len];
    c[0] = BigInt::from(1);
    for m in (1..len).filter(|&m| spec.admits(m as i64)) {
        if spec.inverted {
            for t in m..len {
                let prev = c[t - m].clone();
                c[t] += prev;
            }
        } else {
            for t in (m..len).rev() {
                let prev = c[t - m].clone();
                c[t] -= prev;
            }
        }
    }
    Series::from_coeffs(0, c, len as i64)
}

/// `F(q)` to order `n`.
pub fn f_series(n: i64) -> Series {
    congruence_product(&CongruenceProductSpec::f(), n)
}

/// `1 / F(q)` to order `n`: partitions into parts `≢ 2 (mod 4)`.
pub fn f_inverse(n: i64) -> Series {
    let mut spec = CongruenceProductSpec::f();
    spec.inverted = true;
    congruence_product(&spec, n)
}

/// Accumulates monomials into a dense coefficient vector below a fixed precision.
pub(crate) struct TermSum {
    coeffs: Vec<BigInt>,
}

impl TermSum {
    pub(crate) fn new(precision: i64) -> Self {
        TermSum {
            coeffs: vec![BigInt::zero(); precision.max(0) as usize],
        }
    }

    pub(crate) fn add(&mut self, exponent: i64, c: i64) {
        if exponent >= 0 && (exponent as usize) < self.coeffs.len() {
            self.coeffs[exponent as usize] += c;
        }
    }

    pub(crate) fn finish(self) -> Series {
        let p = self.coeffs.len() as i64;
        Series::from_coeffs(0, self.coeffs, p)
    }
}

/// Sum side of the specialized Jacobi triple product:
/// `sum_{n>=0} (-1)^n q^{4k C(n,2) + (2k+2i-1) n} (1 - q^{(2k-2i+1)(2n+1)})`.
pub fn jtp_sum(k: i64, i: i64, n: i64) -> Result<Series> {
    check_k_i(k, i)?;
    let mut acc = TermSum::new(n + 1);
    for t in 0.. {
        let e = 4 * k * binom2(t) + (2 * k + 2 * i - 1) * t;
        if e > n {
            break;
        }
        let sign = if t % 2 == 0 { 1 } else { -1 };
        acc.add(e, sign);
        acc.add(e + (2 * k - 2 * i + 1) * (2 * t + 1), -sign);
    }
    Ok(acc.finish())
}

/// Product and sum sides of the specialized triple product, compared to order `n`.
pub fn jtp_check(k: i64, i: i64, n: i64) -> Result<CheckResult> {
    let product = congruence_product(&CongruenceProductSpec::jtp(k, i)?, n);
    let sum = jtp_sum(k, i, n)?;
    Ok(product
        .prefix_eq(&sum, n + 1)?
        .with_id("jtp")
        .with_param("k", k)
        .with_param("i", i)
        .with_param("order", n))
}

/// Shelf-0 series `G_i(q)` as the triple-product sum divided by `F(q)`.
pub fn gga_shelf0_altsum(k: i64, i: i64, n: i64) -> Result<Series> {
    let sum = jtp_sum(k, i, n)?;
    let inv_f = f_series(n).invert_unit()?;
    Ok(sum.mul(&inv_f))
}

/// Shelf-0 series `G_i(q)` from its product definition.
pub fn gga_shelf0_product(k: i64, i: i64, n: i64) -> Result<Series> {
    Ok(congruence_product(&CongruenceProductSpec::gga(k, i)?, n))
}
