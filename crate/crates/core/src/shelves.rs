//! Göllnitz-Gordon-Andrews shelves.
//!
//! Shelf `j` holds `G_{(k-1)j+1}, ..., G_{(k-1)j+k}`; its first entry is the
//! last entry of shelf `j-1`. Shelf 0 comes from the product sides, higher
//! shelves from the recursion
//!
//! ```text
//! G_{(k-1)j+i} = (G_{(k-1)(j-1)+k-i+1} - G_{(k-1)(j-1)+k-i+2}) / q^{2j(i-1)} - q^{-1} G_{(k-1)j+i-1}
//! ```
//!
//! which references the previous entry of the same shelf, so entries are
//! produced in ascending `i`.

use num_bigint::BigInt;
use num_traits::One;

use crate::check::{CheckResult, Discrepancy};
use crate::error::{invalid, Error, Result};
use crate::product_forms::{f_inverse, gga_shelf0_product};
use crate::series::Series;
use crate::{binom2, check_k_i};

/// Position `(j, i)` of a series in the shelf picture for fixed `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ShelfIndex {
    pub k: i64,
    pub j: i64,
    pub i: i64,
}

impl ShelfIndex {
    pub fn new(k: i64, j: i64, i: i64) -> Result<Self> {
        check_k_i(k, i)?;
        if j < 0 {
            return Err(invalid(format!("shelf number must be >= 0, got {j}")));
        }
        Ok(ShelfIndex { k, j, i })
    }

    /// Linear index `l = (k-1)j + i`.
    pub fn linear(&self) -> i64 {
        (self.k - 1) * self.j + self.i
    }

    /// Canonical position of `G_l`, with `i` in `[1, k-1]`.
    pub fn from_linear(k: i64, l: i64) -> Result<Self> {
        if l < 1 {
            return Err(invalid(format!("linear index must be >= 1, got {l}")));
        }
        let j = (l - 1) / (k - 1);
        Self::new(k, j, l - (k - 1) * j)
    }

    /// The other name of an edge entry: `(j, k) <-> (j+1, 1)`.
    pub fn alias(&self) -> Option<ShelfIndex> {
        if self.i == self.k {
            Some(ShelfIndex {
                j: self.j + 1,
                i: 1,
                ..*self
            })
        } else if self.i == 1 && self.j >= 1 {
            Some(ShelfIndex {
                j: self.j - 1,
                i: self.k,
                ..*self
            })
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shelf {
    pub j: i64,
    /// Entries for `i = 1..=k`.
    pub entries: Vec<Series>,
}

impl Shelf {
    pub fn k(&self) -> i64 {
        self.entries.len() as i64
    }

    /// Entry at position `i` (1-based).
    pub fn get(&self, i: i64) -> &Series {
        &self.entries[(i - 1) as usize]
    }

    pub fn precision(&self) -> i64 {
        self.entries
            .iter()
            .map(Series::precision)
            .min()
            .unwrap_or(0)
    }
}

/// Precision consumed by producing shelf `j` from shelf `j-1`.
pub fn shelf_cost(k: i64, j: i64) -> i64 {
    2 * j * (k - 1) + 1
}

/// Starting precision that leaves shelves `0..=j_max` known through `q^order`.
pub fn precision_budget(k: i64, j_max: i64, order: i64) -> i64 {
    order + 1 + (1..=j_max).map(|t| shelf_cost(k, t)).sum::<i64>()
}

/// Shelf 0 from the product sides, known below `precision`.
pub fn shelf0(k: i64, precision: i64) -> Result<Shelf> {
    let entries = (1..=k)
        .map(|i| gga_shelf0_product(k, i, precision - 1))
        .collect::<Result<_>>()?;
    Ok(Shelf { j: 0, entries })
}

/// One step of the shelf recursion.
pub fn shelf_next(prev: &Shelf, k: i64) -> Result<Shelf> {
    step(prev, k, None)
}

/// Same as [`shelf_next`] but adds `q^e` to the last entry of the new shelf.
/// Exists so that failure paths of the verification harness can be exercised.
#[doc(hidden)]
pub fn shelf_next_perturbed(prev: &Shelf, k: i64, e: i64) -> Result<Shelf> {
    step(prev, k, Some(e))
}

fn step(prev: &Shelf, k: i64, perturb: Option<i64>) -> Result<Shelf> {
    if prev.k() != k {
        return Err(invalid(format!(
            "shelf has {} entries, expected k = {k}",
            prev.k()
        )));
    }
    let j = prev.j + 1;
    let available = prev.precision();
    let precision = available - shelf_cost(k, j);
    if precision <= 0 {
        return Err(Error::InsufficientPrecision {
            requested: shelf_cost(k, j) + 1,
            available,
        });
    }
    let mut entries: Vec<Series> = Vec::with_capacity(k as usize);
    entries.push(prev.get(k).clone());
    for i in 2..=k {
        let diff = prev.get(k - i + 1) - prev.get(k - i + 2);
        let g = diff.shift(-2 * j * (i - 1)) - entries[(i - 2) as usize].shift(-1);
        entries.push(g.into_ordinary()?);
    }
    let mut entries: Vec<Series> = entries.iter().map(|s| s.truncate(precision)).collect();
    if let Some(e) = perturb {
        let last = entries.last_mut().expect("k >= 2");
        *last = &*last + &Series::monomial(1, e, precision);
    }
    Ok(Shelf { j, entries })
}

/// Shelves `0..=j_max` by recursion from the product sides, each known through `q^order`.
pub fn shelves_by_recursion(k: i64, j_max: i64, order: i64) -> Result<Vec<Shelf>> {
    shelves_with(k, j_max, order, None)
}

#[doc(hidden)]
pub fn shelves_with(k: i64, j_max: i64, order: i64, perturb: Option<i64>) -> Result<Vec<Shelf>> {
    check_k_i(k, 1)?;
    let mut out = vec![shelf0(k, precision_budget(k, j_max, order))?];
    for _ in 0..j_max {
        let prev = out.last().expect("nonempty");
        let next = match perturb {
            Some(e) => shelf_next_perturbed(prev, k, e)?,
            None => shelf_next(prev, k)?,
        };
        out.push(next);
    }
    Ok(out)
}

/// The alternating sum of the closed form, without the `1/F(q)` factor,
/// through `q^order`.
pub fn gga_numerator(idx: ShelfIndex, order: i64) -> Series {
    numerator_with(idx, order, 0)
}

/// `skew` is added to the coefficient of `n` in the leading exponent (0 for the true form).
fn numerator_with(idx: ShelfIndex, order: i64, skew: i64) -> Series {
    let ShelfIndex { k, j, i } = idx;
    let precision = order + 1;
    let mut acc = Series::zero(precision);
    for n in 0.. {
        let e = 4 * k * binom2(n) + (2 * k * (j + 1) + 2 * i - 1 + skew) * n;
        if e > order {
            break;
        }
        let sign = if n % 2 == 0 { 1 } else { -1 };
        let tail = Series::polynomial(&[
            (0, 1),
            (2 * (k - i + 1) * (2 * n + j + 1), -1),
            (2 * (n + j) + 1, 1),
            (2 * (n + j) + 1 + 2 * (k - i) * (2 * n + j + 1), -1),
        ]);
        let mut term = Series::monomial(sign, e, precision).mul(&tail);
        for t in 1..=j {
            term = term.mul(&Series::binomial(-1, 2 * (n + t)));
        }
        for t in 0..=j {
            let den = Series::binomial(1, 2 * (n + t) + 1).truncate(precision);
            term = term.mul(&den.invert_unit().expect("1 + q^r is a unit"));
        }
        acc = acc.add(&term);
    }
    acc
}

/// Closed form of `G_{(k-1)j+i}(q)` through `q^order`.
pub fn gga_closed_form(idx: ShelfIndex, order: i64) -> Series {
    gga_numerator(idx, order).mul(&f_inverse(order))
}

/// Shelf `j` assembled entry by entry from the closed form.
pub fn closed_form_shelf(k: i64, j: i64, order: i64) -> Result<Shelf> {
    let entries = (1..=k)
        .map(|i| Ok(gga_closed_form(ShelfIndex::new(k, j, i)?, order)))
        .collect::<Result<_>>()?;
    Ok(Shelf { j, entries })
}

/// The two closed-form readings of `G_{(k-1)j+k} = G_{(k-1)(j+1)+1}` agree.
pub fn edge_match_check(k: i64, j: i64, order: i64) -> Result<CheckResult> {
    let last = gga_closed_form(ShelfIndex::new(k, j, k)?, order);
    let first = gga_closed_form(ShelfIndex::new(k, j + 1, 1)?, order);
    Ok(last
        .prefix_eq(&first, order + 1)?
        .with_id("edge_match")
        .with_param("k", k)
        .with_param("j", j)
        .with_param("order", order))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EhStrength {
    Weak,
    Plain,
    Strong,
}

/// Order of `G - 1`: finite, or zero on the whole known window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ResidualOrder {
    Finite(i64),
    BeyondWindow(i64),
}

impl ResidualOrder {
    /// Lower bound usable for monotonicity comparisons.
    pub fn bound(self) -> i64 {
        match self {
            ResidualOrder::Finite(e) | ResidualOrder::BeyondWindow(e) => e,
        }
    }
}

#[derive(Debug, Clone)]
pub struct EhResidual {
    /// `(G - 1) / q^e`.
    pub gamma: Series,
    pub order: ResidualOrder,
    pub check: CheckResult,
}

/// Residual of `G = 1 + q^e gamma(q)` for a given leading exponent `e`.
pub fn eh_residual_at(s: &Series, e: i64, strength: EhStrength) -> Result<EhResidual> {
    if s.precision() <= e {
        return Err(Error::InsufficientPrecision {
            requested: e + 1,
            available: s.precision(),
        });
    }
    let residual = s - &Series::one(s.precision());
    let gamma = residual.shift(-e);
    let order = match residual.order() {
        Some(f) => ResidualOrder::Finite(f),
        None => ResidualOrder::BeyondWindow(s.precision()),
    };
    let coeff = |n: i64| s.coeff(n).expect("inside window");
    let check = match strength {
        EhStrength::Weak => match order {
            ResidualOrder::Finite(f) if f < 1 => CheckResult::fail(
                "eh",
                Discrepancy {
                    exponent: f,
                    lhs: coeff(f),
                    rhs: BigInt::one(),
                },
            ),
            _ => CheckResult::pass("eh"),
        },
        EhStrength::Plain | EhStrength::Strong => match residual.order() {
            Some(f) if f < e => {
                let expected = if f == 0 {
                    BigInt::one()
                } else {
                    BigInt::from(0)
                };
                CheckResult::fail(
                    "eh",
                    Discrepancy {
                        exponent: f,
                        lhs: coeff(f),
                        rhs: expected,
                    },
                )
            }
            _ if strength == EhStrength::Strong && !coeff(e).is_one() => CheckResult::fail(
                "eh",
                Discrepancy {
                    exponent: e,
                    lhs: coeff(e),
                    rhs: BigInt::one(),
                },
            ),
            _ => CheckResult::pass("eh"),
        },
    };
    Ok(EhResidual {
        gamma,
        order,
        check,
    })
}

/// Residual for shelf `j`: `G = 1 + q^{2j+1} gamma` (or `q^{2j+3}` when `i = k`).
pub fn eh_residual(s: &Series, j: i64, strength: EhStrength, i_is_k: bool) -> Result<EhResidual> {
    let e = if i_is_k { 2 * j + 3 } else { 2 * j + 1 };
    let mut out = eh_residual_at(s, e, strength)?;
    out.check = out.check.with_param("j", j).with_param("exponent", e);
    Ok(out)
}

/// Strong Empirical Hypothesis for every entry of a shelf. The edge entry is
/// checked under both of its names.
pub fn strong_eh_shelf(shelf: &Shelf) -> Result<CheckResult> {
    let k = shelf.k();
    let mut parts = Vec::new();
    for i in 1..=k {
        let s = shelf.get(i);
        parts.push(
            eh_residual(s, shelf.j, EhStrength::Strong, i == k)?
                .check
                .with_param("i", i),
        );
        if i == k {
            let alias = eh_residual(s, shelf.j + 1, EhStrength::Strong, false)?;
            parts.push(alias.check.with_param("i", 1));
        }
    }
    Ok(CheckResult::all("strong_eh", parts)
        .with_param("k", k)
        .with_param("j", shelf.j))
}

/// Weak form across shelves: within each position class the order of
/// `G - 1` never decreases and strictly grows from first to last shelf.
pub fn weak_eh_check(shelves: &[Shelf]) -> Result<CheckResult> {
    let Some(first) = shelves.first() else {
        return Ok(CheckResult::pass("weak_eh"));
    };
    let k = first.k();
    for i in 1..=k {
        let orders = shelves
            .iter()
            .map(|sh| eh_residual_at(sh.get(i), 0, EhStrength::Weak))
            .collect::<Result<Vec<_>>>()?;
        for (pos, r) in orders.iter().enumerate() {
            if !r.check.is_pass() {
                return Ok(r
                    .check
                    .clone()
                    .with_id("weak_eh")
                    .with_param("i", i)
                    .with_param("j", pos as i64));
            }
        }
        for (pos, w) in orders.windows(2).enumerate() {
            if let (ResidualOrder::Finite(a), ResidualOrder::Finite(b)) = (w[0].order, w[1].order) {
                if b < a {
                    let s = shelves[pos + 1].get(i);
                    return Ok(CheckResult::fail(
                        "weak_eh",
                        Discrepancy {
                            exponent: b,
                            lhs: s.coeff(b).unwrap_or_default(),
                            rhs: BigInt::from(0),
                        },
                    )
                    .with_param("i", i)
                    .with_param("j", pos as i64 + 1));
                }
            }
        }
        if orders.len() >= 2 {
            let (a, b) = (orders[0].order, orders[orders.len() - 1].order);
            if let ResidualOrder::Finite(fb) = b {
                if fb <= a.bound() {
                    let s = shelves[orders.len() - 1].get(i);
                    return Ok(CheckResult::fail(
                        "weak_eh",
                        Discrepancy {
                            exponent: fb,
                            lhs: s.coeff(fb).unwrap_or_default(),
                            rhs: BigInt::from(0),
                        },
                    )
                    .with_param("i", i));
                }
            }
        }
    }
    Ok(CheckResult::pass("weak_eh").with_param("k", k))
}

/// Recursion-generated shelves against the closed form, entry by entry.
pub fn recursion_vs_closed_form(shelves: &[Shelf], order: i64) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for shelf in shelves {
        let k = shelf.k();
        for i in 1..=k {
            let closed = gga_closed_form(ShelfIndex::new(k, shelf.j, i)?, order);
            out.push(
                shelf
                    .get(i)
                    .prefix_eq(&closed, order + 1)?
                    .with_id("recursion_closed_form")
                    .with_param("k", k)
                    .with_param("j", shelf.j)
                    .with_param("i", i)
                    .with_param("order", order),
            );
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::product_forms::gga_shelf0_altsum;

    fn ints(s: &Series, n: i64) -> Vec<i64> {
        (0..=n)
            .map(|e| i64::try_from(s.coeff(e).unwrap()).unwrap())
            .collect()
    }

    #[test]
    fn index_round_trip() {
        for k in 2..=5 {
            for l in 1..60 {
                let idx = ShelfIndex::from_linear(k, l).unwrap();
                assert_eq!(idx.linear(), l);
                assert!(idx.i < k);
                let alias = ShelfIndex {
                    j: idx.j.saturating_sub(1),
                    i: k,
                    k,
                }
                .alias()
                .unwrap();
                if idx.i == 1 && idx.j >= 1 {
                    assert_eq!(alias, idx);
                }
            }
            let edge = ShelfIndex::new(k, 2, k).unwrap();
            assert_eq!(edge.alias().unwrap().linear(), edge.linear());
            assert_eq!(edge.alias().unwrap().alias().unwrap(), edge);
        }
    }

    #[test]
    fn k2_first_recursion_step() {
        // G_3 = (G_1 - G_2)/q^2 - q^{-1} G_2 by hand from the product sides
        let g1 = gga_shelf0_product(2, 1, 12).unwrap();
        let g2 = gga_shelf0_product(2, 2, 12).unwrap();
        let g3 = (&g1 - &g2).shift(-2) - g2.shift(-1);
        let g3 = g3.into_ordinary().unwrap();
        assert_eq!(ints(&g3, 6), vec![1, 0, 0, 0, 0, 1, 1]);

        let shelf = shelf_next(&shelf0(2, 13).unwrap(), 2).unwrap();
        assert_eq!(shelf.get(1), &g2.truncate(shelf.precision()));
        assert_eq!(ints(shelf.get(2), 6), vec![1, 0, 0, 0, 0, 1, 1]);
        assert_eq!(shelf.precision(), 13 - 3);
    }

    #[test]
    fn shelf_next_precision_loss_and_edge() {
        let s0 = shelf0(3, 80).unwrap();
        let s1 = shelf_next(&s0, 3).unwrap();
        let s2 = shelf_next(&s1, 3).unwrap();
        assert_eq!(s1.precision(), 80 - shelf_cost(3, 1));
        assert_eq!(s2.precision(), s1.precision() - shelf_cost(3, 2));
        assert_eq!(s2.get(1), &s1.get(3).truncate(s2.precision()));
        assert_eq!(s1.get(2).coeff(0).unwrap(), BigInt::one());
    }

    #[test]
    fn shelf_next_detects_corrupted_input() {
        let mut s0 = shelf0(2, 20).unwrap();
        s0.entries[0] = &s0.entries[0] + &Series::q_pow(1);
        assert!(matches!(
            shelf_next(&s0, 2),
            Err(Error::NegativeExponentResidue { .. })
        ));
        assert!(matches!(
            shelf_next(&shelf0(3, 4).unwrap(), 3),
            Err(Error::InsufficientPrecision { .. })
        ));
    }

    #[test]
    fn closed_form_base_and_higher_shelf() {
        let base = gga_closed_form(ShelfIndex::new(2, 0, 1).unwrap(), 8);
        assert_eq!(base, gga_shelf0_altsum(2, 1, 8).unwrap());
        let g = gga_closed_form(ShelfIndex::new(2, 2, 1).unwrap(), 6);
        assert_eq!(ints(&g, 6), vec![1, 0, 0, 0, 0, 1, 1]);
        for k in 2..=4 {
            for j in 0..=4 {
                for i in 1..=k {
                    let g = gga_closed_form(ShelfIndex::new(k, j, i).unwrap(), 10);
                    assert!(g.coeff(0).unwrap().is_one());
                }
            }
        }
    }

    #[test]
    fn edge_matching() {
        assert!(edge_match_check(2, 0, 50).unwrap().is_pass());
        assert!(edge_match_check(4, 3, 80).unwrap().is_pass());
    }

    #[test]
    fn mutated_closed_form_breaks_edge_matching() {
        // shift the linear exponent of one reading by one
        let idx = ShelfIndex::new(2, 0, 2).unwrap();
        let good = gga_closed_form(idx, 40);
        let bad = numerator_with(idx, 40, 1).mul(&f_inverse(40));
        let other = gga_closed_form(ShelfIndex::new(2, 1, 1).unwrap(), 40);
        assert!(good.prefix_eq(&other, 41).unwrap().is_pass());
        assert!(!bad.prefix_eq(&other, 41).unwrap().is_pass());
    }

    #[test]
    fn eh_examples() {
        let g3 = gga_closed_form(ShelfIndex::new(2, 2, 1).unwrap(), 20);
        let r = eh_residual(&g3, 2, EhStrength::Strong, false).unwrap();
        assert!(r.check.is_pass());
        assert!(r.gamma.coeff(0).unwrap().is_one());

        let g2 = gga_closed_form(ShelfIndex::new(2, 0, 2).unwrap(), 20);
        let r = eh_residual(&g2, 0, EhStrength::Strong, true).unwrap();
        assert!(r.check.is_pass());
        assert_eq!(r.order, ResidualOrder::Finite(3));

        let r = eh_residual(&Series::one(10), 1, EhStrength::Weak, false).unwrap();
        assert_eq!(r.order, ResidualOrder::BeyondWindow(10));
        assert!(r.check.is_pass());
    }

    #[test]
    fn eh_failure_reports_discrepancy() {
        let s = Series::from_i64s(0, &[1, 0, 1, 0, 0, 0], 6);
        let r = eh_residual(&s, 1, EhStrength::Plain, false).unwrap();
        let d = r.check.first_discrepancy.unwrap();
        assert_eq!(d.exponent, 2);
        let s = Series::from_i64s(0, &[1, 0, 0, 2, 0, 0], 6);
        let r = eh_residual(&s, 1, EhStrength::Strong, false).unwrap();
        assert_eq!(r.check.first_discrepancy.unwrap().exponent, 3);
        assert!(eh_residual(&s, 1, EhStrength::Plain, false)
            .unwrap()
            .check
            .is_pass());
        assert!(eh_residual(&s, 3, EhStrength::Plain, false).is_err());
    }

    #[test]
    fn recursion_agrees_with_closed_form_small() {
        let shelves = shelves_by_recursion(3, 3, 30).unwrap();
        for r in recursion_vs_closed_form(&shelves, 30).unwrap() {
            assert!(r.is_pass(), "{r}");
        }
        for sh in &shelves {
            assert!(strong_eh_shelf(sh).unwrap().is_pass());
        }
        assert!(weak_eh_check(&shelves).unwrap().is_pass());
    }

    #[test]
    fn perturbation_is_detected() {
        let shelves = shelves_with(2, 3, 30, Some(10)).unwrap();
        let fails = recursion_vs_closed_form(&shelves, 30)
            .unwrap()
            .into_iter()
            .filter(|r| !r.is_pass())
            .count();
        assert!(fails > 0);
    }
}
