//! Single-variable specializations of Andrews' `J_{k,i}(a, x, q)`.
//!
//! * gga: `a = -q^{-1}`, `x = q^{2j}`, base `q^2`;
//! * gordon: `a = 0`, `x = q^j`, base `q`.
//!
//! Under these, `G_{(k-1)j+i}(q) = J_{k,k-i+1}` for the matching family.

use std::collections::HashMap;

use crate::check::CheckResult;
use crate::error::{invalid, Error, Result};
use crate::matrices::closed_form;
use crate::series::Series;
use crate::{binom2, Family};

/// `prod_{m=0}^{count-1} (1 - y q^{m * base_exponent})` with `y = y_sign q^{y_exponent}`,
/// `count = None` meaning the infinite product. Known below `q^(order+1)`.
pub fn pochhammer(
    y_sign: i64,
    y_exponent: i64,
    base_exponent: i64,
    count: Option<i64>,
    order: i64,
) -> Result<Series> {
    if y_sign != 1 && y_sign != -1 {
        return Err(invalid(format!("sign must be +1 or -1, got {y_sign}")));
    }
    let precision = order + 1;
    let count = match count {
        Some(c) if c < 0 => return Err(invalid(format!("count must be >= 0, got {c}"))),
        Some(c) => c,
        None => {
            if y_exponent < 0 {
                return Err(invalid(
                    "an infinite product needs a nonnegative leading exponent",
                ));
            }
            if base_exponent < 1 {
                if y_exponent > order {
                    return Ok(Series::one(precision));
                }
                return Err(Error::DivergentProduct { order });
            }
            if y_exponent > order {
                0
            } else {
                (order - y_exponent) / base_exponent + 1
            }
        }
    };
    let mut acc = Series::one(crate::EXACT);
    for m in 0..count {
        let e = y_exponent + m * base_exponent;
        acc = acc.mul(&Series::polynomial(&[(0, 1), (e, -y_sign)]));
        if acc.valuation() >= 0 {
            acc = acc.truncate(precision);
        }
    }
    Ok(acc.truncate(precision))
}

/// Which specialization of `J_{k,i}(a, x, q)` to take.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SpecializationSpec {
    pub family: Family,
    /// `x = q^{2j}` (gga) or `q^j` (gordon).
    pub j: i64,
}

impl SpecializationSpec {
    pub fn new(family: Family, j: i64) -> Result<Self> {
        if j < 0 {
            return Err(invalid(format!("j must be >= 0, got {j}")));
        }
        Ok(SpecializationSpec { family, j })
    }

    pub fn a_substitution(&self) -> &'static str {
        match self.family {
            Family::Gga => "-q^-1",
            Family::Gordon => "0",
        }
    }

    /// Exponent `b` of the base `q^b`.
    pub fn base_exponent(&self) -> i64 {
        match self.family {
            Family::Gga => 2,
            Family::Gordon => 1,
        }
    }

    /// Exponent of `x` after substitution.
    pub fn x_exponent(&self) -> i64 {
        self.base_exponent() * self.j
    }

    pub fn next(&self) -> Self {
        SpecializationSpec {
            j: self.j + 1,
            ..*self
        }
    }
}

fn sign(n: i64) -> i64 {
    if n % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Sums `sum_n prefactor(n) * tail(n)` where `prefactor(n)` lists the
/// monomials of a Laurent polynomial and `tail(n, order')` is a power series
/// with constant term 1 known through `q^order'`. Stops once the lowest
/// prefactor exponent exceeds `order` and has started to grow.
fn sum_terms(
    order: i64,
    mut prefactor: impl FnMut(i64) -> Vec<(i64, i64)>,
    mut tail: impl FnMut(i64, i64) -> Result<Series>,
) -> Result<Series> {
    let mut acc = Series::zero(order + 1);
    let mut last_low = i64::MIN;
    for n in 0.. {
        let terms = prefactor(n);
        let low = terms.iter().map(|t| t.0).min().unwrap_or(i64::MAX);
        if low > order && low > last_low && n > 0 {
            break;
        }
        last_low = low;
        let pre = Series::polynomial(&terms);
        if low > order || pre.is_zero() {
            continue;
        }
        let t = tail(n, order - low)?;
        acc = acc.add(&pre.mul(&t));
    }
    Ok(acc)
}

fn gga_j(j: i64, k: i64, i: i64, order: i64) -> Result<Series> {
    // P(n) = (-q^{2(j+n+2)-1}; q^2)_∞ (-q; q^2)_n / ((q^2; q^2)_n (q^{2(j+n+1)}; q^2)_∞)
    let p = |n: i64, ord: i64| -> Result<Series> {
        let num = pochhammer(-1, 2 * (j + n + 2) - 1, 2, None, ord)?.mul(&pochhammer(
            -1,
            1,
            2,
            Some(n),
            ord,
        )?);
        let den =
            pochhammer(1, 2, 2, Some(n), ord)?.mul(&pochhammer(1, 2 * (j + n + 1), 2, None, ord)?);
        Ok(num.mul(&den.invert_unit()?))
    };
    let first = |n: i64| {
        let e = 2 * (j * k * n + k * n * n + k * n + n - i * n) - n;
        vec![(e, sign(n)), (e + 2 * (j + 2 * n + 1) * i, -sign(n))]
    };
    let second = |n: i64| {
        let e = 2 * j + 1 + 2 * (j * k * n + k * n * n + k * n + n - (i - 1) * n) - n;
        vec![(e, sign(n)), (e + 2 * (j + 2 * n + 1) * (i - 1), -sign(n))]
    };
    let mut cache: HashMap<(i64, i64), Series> = HashMap::new();
    let mut tail = |n: i64, ord: i64| -> Result<Series> {
        if let Some(s) = cache.get(&(n, ord)) {
            return Ok(s.clone());
        }
        let s = p(n, ord)?;
        cache.insert((n, ord), s.clone());
        Ok(s)
    };
    let a = sum_terms(order, first, &mut tail)?;
    let b = sum_terms(order, second, &mut tail)?;
    Ok(a.add(&b))
}

fn gordon_j(j: i64, k: i64, i: i64, order: i64) -> Result<Series> {
    let pre = |n: i64| {
        let e = j * k * n + k * n + k * n * n + n - i * n + binom2(n);
        vec![(e, sign(n)), (e + j * i + i + 2 * n * i, -sign(n))]
    };
    let tail = |n: i64, ord: i64| -> Result<Series> {
        let den = pochhammer(1, 1, 1, Some(n), ord)?.mul(&pochhammer(1, j + n + 1, 1, None, ord)?);
        den.invert_unit()
    };
    sum_terms(order, pre, tail)
}

/// `J_{k,i}` under `spec`, through `q^order`; `0 <= i <= k+1`.
pub fn j_specialized(spec: SpecializationSpec, k: i64, i: i64, order: i64) -> Result<Series> {
    if k < 2 {
        return Err(invalid(format!("k must be >= 2, got {k}")));
    }
    if !(0..=k + 1).contains(&i) {
        return Err(invalid(format!("i must lie in [0, {}], got {i}", k + 1)));
    }
    let s = match spec.family {
        Family::Gga => gga_j(spec.j, k, i, order)?,
        Family::Gordon => gordon_j(spec.j, k, i, order)?,
    };
    s.into_ordinary()
}

/// `H_{k,i}(0, q^m, q)` for `m >= 1`.
pub fn h_gordon(m: i64, k: i64, i: i64, order: i64) -> Result<Series> {
    if m < 1 {
        return Err(invalid(format!(
            "x must be a positive power of q, got q^{m}"
        )));
    }
    let pre = |n: i64| {
        let e = m * k * n + k * n * n + n - i * n + binom2(n);
        vec![(e, sign(n)), (e + m * i + 2 * n * i, -sign(n))]
    };
    let tail = |n: i64, ord: i64| -> Result<Series> {
        let den = pochhammer(1, 1, 1, Some(n), ord)?.mul(&pochhammer(1, m + n, 1, None, ord)?);
        den.invert_unit()
    };
    sum_terms(order, pre, tail)
}

fn tag(
    r: CheckResult,
    id: &str,
    family: Family,
    k: i64,
    j: i64,
    i: i64,
    order: i64,
) -> CheckResult {
    r.with_id(id)
        .with_param("family", family.as_str())
        .with_param("k", k)
        .with_param("j", j)
        .with_param("i", i)
        .with_param("order", order)
}

/// `G_{(k-1)j+i} = J_{k,k-i+1}` for the family's specialization.
pub fn dictionary_check(family: Family, k: i64, j: i64, i: i64, order: i64) -> Result<CheckResult> {
    let g = closed_form(family, k, j, i, order)?;
    let spec = SpecializationSpec::new(family, j)?;
    let jj = j_specialized(spec, k, k - i + 1, order)?;
    Ok(tag(
        g.prefix_eq(&jj, order + 1)?,
        "dictionary",
        family,
        k,
        j,
        i,
        order,
    ))
}

/// The functional recurrence of `J_{k,i}` specialized at `(j, i)`:
///
/// * gga, `2 <= i <= k`:
///   `J_{k,k-i+1}(x q^2) = (J_{k,i}(x) - J_{k,i-1}(x)) / q^{2(j+1)(i-1)} - q^{-1} J_{k,k-i+2}(x q^2)`;
/// * gordon, `1 <= i <= k`: `J_{k,i}(x) - J_{k,i-1}(x) = q^{(j+1)(i-1)} J_{k,k-i+1}(x q)`.
pub fn specialized_recurrence_check(
    family: Family,
    k: i64,
    j: i64,
    i: i64,
    order: i64,
) -> Result<CheckResult> {
    let spec = SpecializationSpec::new(family, j)?;
    let next = spec.next();
    let r = match family {
        Family::Gga => {
            if !(2..=k).contains(&i) {
                return Err(invalid(format!("i must lie in [2, {k}], got {i}")));
            }
            let drop = 2 * (j + 1) * (i - 1);
            let lhs = j_specialized(next, k, k - i + 1, order)?;
            let diff = j_specialized(spec, k, i, order + drop)?.sub(&j_specialized(
                spec,
                k,
                i - 1,
                order + drop,
            )?);
            let rhs = diff
                .shift(-drop)
                .sub(&j_specialized(next, k, k - i + 2, order + 1)?.shift(-1));
            lhs.prefix_eq(&rhs, order + 1)?
        }
        Family::Gordon => {
            if !(1..=k).contains(&i) {
                return Err(invalid(format!("i must lie in [1, {k}], got {i}")));
            }
            let lhs = j_specialized(spec, k, i, order)?.sub(&j_specialized(spec, k, i - 1, order)?);
            let rhs = j_specialized(next, k, k - i + 1, order)?.shift((j + 1) * (i - 1));
            lhs.prefix_eq(&rhs, order + 1)?
        }
    };
    Ok(tag(r, "j_recurrence", family, k, j, i, order))
}

/// `J_{k,1}(x) = J_{k,k}(next x)`.
pub fn edge_identity_check(family: Family, k: i64, j: i64, order: i64) -> Result<CheckResult> {
    let spec = SpecializationSpec::new(family, j)?;
    let a = j_specialized(spec, k, 1, order)?;
    let b = j_specialized(spec.next(), k, k, order)?;
    Ok(a.prefix_eq(&b, order + 1)?
        .with_id("xq_edge")
        .with_param("family", family.as_str())
        .with_param("k", k)
        .with_param("j", j)
        .with_param("order", order))
}

/// `J_{k,0}(0, q^j, q) = 0`.
pub fn gordon_j0_check(k: i64, j: i64, order: i64) -> Result<CheckResult> {
    let s = j_specialized(SpecializationSpec::new(Family::Gordon, j)?, k, 0, order)?;
    Ok(s.prefix_eq(&Series::zero(order + 1), order + 1)?
        .with_id("gordon_j0")
        .with_param("k", k)
        .with_param("j", j)
        .with_param("order", order))
}

/// `J_{k,i}(0, q^j, q) = H_{k,i}(0, q^{j+1}, q)`.
pub fn gordon_h_shift_check(k: i64, j: i64, i: i64, order: i64) -> Result<CheckResult> {
    let a = j_specialized(SpecializationSpec::new(Family::Gordon, j)?, k, i, order)?;
    let b = h_gordon(j + 1, k, i, order)?;
    Ok(tag(
        a.prefix_eq(&b, order + 1)?,
        "gordon_h_shift",
        Family::Gordon,
        k,
        j,
        i,
        order,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gordon::gordon_shelf0;
    use crate::product_forms::gga_shelf0_product;

    fn ints(s: &Series, n: i64) -> Vec<i64> {
        (0..=n)
            .map(|e| i64::try_from(s.coeff(e).unwrap()).unwrap())
            .collect()
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(
            pochhammer(1, 2, 2, Some(1), 10).unwrap(),
            Series::from_i64s(0, &[1, 0, -1], 11)
        );
        let odd = pochhammer(-1, 1, 2, None, 5).unwrap();
        assert_eq!(ints(&odd, 5), vec![1, 1, 0, 1, 1, 1]);
        assert_eq!(odd.precision(), 6);
        assert_eq!(pochhammer(1, 3, 1, Some(0), 7).unwrap(), Series::one(8));
        assert!(matches!(
            pochhammer(1, 0, 0, None, 5),
            Err(Error::DivergentProduct { .. })
        ));
        assert!(pochhammer(1, -1, 1, None, 5).is_err());
        // finite with a negative leading exponent
        let p = pochhammer(1, -2, 1, Some(2), 5).unwrap();
        assert_eq!(
            p,
            Series::polynomial(&[(-2, -1), (-1, -1), (0, 1), (-3, 1)]).truncate(6)
        );
    }

    #[test]
    fn pochhammer_matches_direct_expansion() {
        let direct = Series::binomial(1, 1)
            .mul(&Series::binomial(1, 3))
            .mul(&Series::binomial(1, 5))
            .mul(&Series::binomial(1, 7))
            .truncate(8);
        assert_eq!(pochhammer(-1, 1, 2, None, 7).unwrap(), direct);
    }

    #[test]
    fn base_cases() {
        let gga = j_specialized(SpecializationSpec::new(Family::Gga, 0).unwrap(), 2, 2, 8).unwrap();
        assert_eq!(gga, gga_shelf0_product(2, 1, 8).unwrap());
        let rr =
            j_specialized(SpecializationSpec::new(Family::Gordon, 0).unwrap(), 2, 2, 8).unwrap();
        assert_eq!(rr, gordon_shelf0(2, 1, 8).unwrap());
        for j in 0..=3 {
            assert!(gordon_j0_check(3, j, 30).unwrap().is_pass());
        }
    }

    #[test]
    fn edge_indices_are_ordinary() {
        for family in [Family::Gga, Family::Gordon] {
            for k in 2..=4 {
                for j in 0..=2 {
                    let spec = SpecializationSpec::new(family, j).unwrap();
                    assert!(j_specialized(spec, k, k + 1, 30).is_ok());
                    let zero = j_specialized(spec, k, 0, 30);
                    match family {
                        // a = -q^{-1} leaves a q^{-1} term behind
                        Family::Gga => assert!(
                            matches!(
                                zero,
                                Err(Error::NegativeExponentResidue { exponent: -1, .. })
                            ),
                            "k={k} j={j}"
                        ),
                        Family::Gordon => assert!(zero.unwrap().is_zero()),
                    }
                }
            }
        }
    }

    #[test]
    fn dictionaries() {
        assert!(dictionary_check(Family::Gga, 2, 0, 1, 50)
            .unwrap()
            .is_pass());
        assert!(dictionary_check(Family::Gordon, 3, 2, 2, 50)
            .unwrap()
            .is_pass());
        for family in [Family::Gga, Family::Gordon] {
            for j in 0..=2 {
                for i in 1..=3 {
                    assert!(dictionary_check(family, 3, j, i, 30).unwrap().is_pass());
                }
                assert!(edge_identity_check(family, 3, j, 30).unwrap().is_pass());
            }
        }
    }

    #[test]
    fn recurrence() {
        assert!(specialized_recurrence_check(Family::Gga, 2, 0, 2, 40)
            .unwrap()
            .is_pass());
        assert!(specialized_recurrence_check(Family::Gordon, 2, 0, 1, 40)
            .unwrap()
            .is_pass());
        for j in 0..=2 {
            for i in 2..=3 {
                assert!(specialized_recurrence_check(Family::Gga, 3, j, i, 30)
                    .unwrap()
                    .is_pass());
            }
            for i in 1..=3 {
                assert!(specialized_recurrence_check(Family::Gordon, 3, j, i, 30)
                    .unwrap()
                    .is_pass());
                assert!(gordon_h_shift_check(3, j, i, 30).unwrap().is_pass());
            }
        }
        assert!(specialized_recurrence_check(Family::Gga, 3, 0, 1, 30).is_err());
    }
}
