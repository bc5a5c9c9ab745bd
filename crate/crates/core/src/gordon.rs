//! The shelf program for Gordon's identities.
//!
//! Shelf 0 is `G_i(q)`, the generating function of partitions into parts
//! `≢ 0, ±(k-i+1) (mod 2k+1)`. Higher shelves follow `G_(j) = B_(j) G_(j-1)`:
//!
//! ```text
//! G_{(k-1)j+1} = G_{(k-1)(j-1)+k}
//! G_{(k-1)j+r} = (G_{(k-1)(j-1)+k-r+1} - G_{(k-1)(j-1)+k-r+2}) / q^{(r-1)j}
//! ```

use num_bigint::BigInt;

use crate::check::{CheckResult, Discrepancy};
use crate::error::{invalid, Error, Result};
use crate::matrices::h_matrix;
use crate::partitions::{genfun, PartitionConstraint};
use crate::product_forms::{congruence_product, CongruenceProductSpec, TermSum};
use crate::series::Series;
use crate::shelves::{eh_residual_at, weak_eh_check, EhStrength, Shelf, ShelfIndex};
use crate::{binom2, check_k_i, Family};

/// Parts `≢ 0, ±(k-i+1) (mod 2k+1)`.
pub fn gordon_product_spec(k: i64, i: i64) -> Result<CongruenceProductSpec> {
    check_k_i(k, i)?;
    let m = 2 * k + 1;
    CongruenceProductSpec::new(m, [0, k - i + 1, k + i], true)
}

/// `(q)_∞` inverted, through `q^order`.
fn euler_inverse(order: i64) -> Series {
    congruence_product(
        &CongruenceProductSpec::new(1, [], true).expect("modulus 1"),
        order,
    )
}

fn sign(n: i64) -> i64 {
    if n % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `1 + sum_{λ>=1} (-1)^λ q^{(2k+1)C(λ,2) + (k-i+1)λ} (1 + q^{(2i-1)λ})`, over `(q)_∞`.
pub fn gordon_shelf0_symmetric(k: i64, i: i64, order: i64) -> Result<Series> {
    check_k_i(k, i)?;
    let mut acc = TermSum::new(order + 1);
    acc.add(0, 1);
    for l in 1.. {
        let e = (2 * k + 1) * binom2(l) + (k - i + 1) * l;
        if e > order {
            break;
        }
        acc.add(e, sign(l));
        acc.add(e + (2 * i - 1) * l, sign(l));
    }
    Ok(acc.finish().mul(&euler_inverse(order)))
}

/// `sum_{λ>=0} (-1)^λ q^{(2k+1)C(λ,2) + (k+i)λ} (1 - q^{(k-i+1)(2λ+1)})`, over `(q)_∞`.
pub fn gordon_shelf0_onesided(k: i64, i: i64, order: i64) -> Result<Series> {
    check_k_i(k, i)?;
    let mut acc = TermSum::new(order + 1);
    for l in 0.. {
        let e = (2 * k + 1) * binom2(l) + (k + i) * l;
        if e > order {
            break;
        }
        acc.add(e, sign(l));
        acc.add(e + (k - i + 1) * (2 * l + 1), -sign(l));
    }
    Ok(acc.finish().mul(&euler_inverse(order)))
}

pub fn gordon_shelf0_product(k: i64, i: i64, order: i64) -> Result<Series> {
    Ok(congruence_product(&gordon_product_spec(k, i)?, order))
}

/// The three shelf-0 forms compared through `q^order`.
pub fn gordon_shelf0_check(k: i64, i: i64, order: i64) -> Result<CheckResult> {
    let a = gordon_shelf0_symmetric(k, i, order)?;
    let b = gordon_shelf0_onesided(k, i, order)?;
    let c = gordon_shelf0_product(k, i, order)?;
    Ok(CheckResult::all(
        "gordon_shelf0",
        [a.prefix_eq(&b, order + 1)?, b.prefix_eq(&c, order + 1)?],
    )
    .with_param("k", k)
    .with_param("i", i)
    .with_param("order", order))
}

/// `G_i(q)` through `q^order`, after cross-checking its three forms.
pub fn gordon_shelf0(k: i64, i: i64, order: i64) -> Result<Series> {
    let a = gordon_shelf0_symmetric(k, i, order)?;
    let b = gordon_shelf0_onesided(k, i, order)?;
    let c = gordon_shelf0_product(k, i, order)?;
    for (what, other) in [
        ("symmetric and one-sided forms", &b),
        ("symmetric form and product", &c),
    ] {
        if let Some(d) = a.prefix_eq(other, order + 1)?.first_discrepancy {
            return Err(Error::Disagreement {
                what,
                exponent: d.exponent,
            });
        }
    }
    Ok(c)
}

/// Closed form of `G_{(k-1)j+i}(q)` through `q^order`.
pub fn gordon_closed_form(idx: ShelfIndex, order: i64) -> Series {
    let ShelfIndex { k, j, i } = idx;
    let precision = order + 1;
    let mut acc = Series::zero(precision);
    for l in 0.. {
        let e = (2 * k + 1) * binom2(l) + (k * (j + 1) + i) * l;
        if e > order {
            break;
        }
        let mut term =
            Series::polynomial(&[(e, sign(l)), (e + (k - i + 1) * (2 * l + j + 1), -sign(l))])
                .truncate(precision);
        for t in 1..=j {
            term = term.mul(&Series::binomial(-1, l + t));
        }
        acc = acc.add(&term);
    }
    acc.mul(&euler_inverse(order))
}

/// Precision consumed by producing shelf `j` from shelf `j-1`.
pub fn gordon_shelf_cost(k: i64, j: i64) -> i64 {
    (k - 1) * j
}

pub fn gordon_precision_budget(k: i64, j_max: i64, order: i64) -> i64 {
    order + 1 + (1..=j_max).map(|t| gordon_shelf_cost(k, t)).sum::<i64>()
}

/// One step `G_(j) = B_(j) G_(j-1)`.
pub fn gordon_shelf_next(prev: &Shelf, k: i64) -> Result<Shelf> {
    if prev.k() != k {
        return Err(invalid(format!(
            "shelf has {} entries, expected k = {k}",
            prev.k()
        )));
    }
    let j = prev.j + 1;
    let available = prev.precision();
    let precision = available - gordon_shelf_cost(k, j);
    if precision <= 0 {
        return Err(Error::InsufficientPrecision {
            requested: gordon_shelf_cost(k, j) + 1,
            available,
        });
    }
    let mut entries = vec![prev.get(k).truncate(precision)];
    for r in 2..=k {
        let g = (prev.get(k - r + 1) - prev.get(k - r + 2))
            .shift(-(r - 1) * j)
            .into_ordinary()?;
        entries.push(g.truncate(precision));
    }
    Ok(Shelf { j, entries })
}

/// Shelves `0..=j_max` by recursion, each known through `q^order`.
pub fn gordon_shelves(k: i64, j_max: i64, order: i64) -> Result<Vec<Shelf>> {
    check_k_i(k, 1)?;
    let budget = gordon_precision_budget(k, j_max, order);
    let first = (1..=k)
        .map(|i| gordon_shelf0(k, i, budget - 1))
        .collect::<Result<_>>()?;
    let mut out = vec![Shelf {
        j: 0,
        entries: first,
    }];
    for _ in 0..j_max {
        let next = gordon_shelf_next(out.last().expect("nonempty"), k)?;
        out.push(next);
    }
    Ok(out)
}

/// Recursion shelves against the closed form.
pub fn gordon_recursion_vs_closed_form(shelves: &[Shelf], order: i64) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for shelf in shelves {
        let k = shelf.k();
        for i in 1..=k {
            let closed = gordon_closed_form(ShelfIndex::new(k, shelf.j, i)?, order);
            out.push(
                shelf
                    .get(i)
                    .prefix_eq(&closed, order + 1)?
                    .with_id("gordon_recursion_closed_form")
                    .with_param("k", k)
                    .with_param("j", shelf.j)
                    .with_param("i", i)
                    .with_param("order", order),
            );
        }
    }
    Ok(out)
}

/// Strong Empirical Hypothesis: `1 + q^{j+1} + ...`, or `1 + q^{j+2} + ...` when `i = k`.
pub fn gordon_eh_check(idx: ShelfIndex, order: i64) -> Result<CheckResult> {
    let e = if idx.i == idx.k { idx.j + 2 } else { idx.j + 1 };
    let g = gordon_closed_form(idx, order.max(e));
    Ok(eh_residual_at(&g, e, EhStrength::Strong)?
        .check
        .with_id("gordon_eh")
        .with_param("k", idx.k)
        .with_param("j", idx.j)
        .with_param("i", idx.i)
        .with_param("exponent", e))
}

/// Weak form along the recursion shelves.
pub fn gordon_weak_eh_check(shelves: &[Shelf]) -> Result<CheckResult> {
    Ok(weak_eh_check(shelves)?.with_id("gordon_weak_eh"))
}

fn nonnegative(id: &str, s: &Series) -> Option<CheckResult> {
    s.first_negative(s.precision()).map(|(e, c)| {
        CheckResult::fail(
            id,
            Discrepancy {
                exponent: e,
                lhs: c,
                rhs: BigInt::from(0),
            },
        )
    })
}

/// Nonnegativity of every entry of the given shelves, and for `k = 2` of the
/// scalar sequence `G_l = (G_{l-2} - G_{l-1}) / q^{l-2}` built from shelf 0.
#[doc(hidden)]
pub fn ehrenpreis_check_on(shelves: &[Shelf], order: i64) -> Result<CheckResult> {
    for shelf in shelves {
        for i in 1..=shelf.k() {
            if let Some(r) = nonnegative("ehrenpreis", &shelf.get(i).truncate(order + 1)) {
                return Ok(r.with_param("j", shelf.j).with_param("i", i));
            }
        }
    }
    if let Some(first) = shelves.first().filter(|s| s.k() == 2) {
        let mut seq = vec![first.get(1).clone(), first.get(2).clone()];
        for l in 3..=(shelves.len() as i64 + 1) {
            let n = seq.len();
            let next = (&seq[n - 2] - &seq[n - 1])
                .shift(-(l - 2))
                .into_ordinary()?;
            if let Some(r) = nonnegative("ehrenpreis", &next.truncate(order + 1)) {
                return Ok(r.with_param("l", l));
            }
            seq.push(next);
        }
    }
    Ok(CheckResult::pass("ehrenpreis"))
}

/// Every shelf series through `j <= 6` has nonnegative coefficients through `q^order`.
pub fn ehrenpreis_check(k: i64, order: i64) -> Result<CheckResult> {
    let shelves = gordon_shelves(k, 6, order)?;
    Ok(ehrenpreis_check_on(&shelves, order)?
        .with_param("k", k)
        .with_param("order", order))
}

/// `G_{(k-1)J+i}` equals the generating function of partitions of type
/// `(k-1, J, k-i)`.
pub fn gordon_identity_check(big_j: i64, i: i64, k: i64, order: i64) -> Result<CheckResult> {
    let c = PartitionConstraint::new(Family::Gordon, k, i, big_j)?;
    let g = gordon_closed_form(ShelfIndex::new(k, big_j, i)?, order);
    Ok(g.prefix_eq(&genfun(&c, order), order + 1)?
        .with_id("gordon_identity")
        .with_param("k", k)
        .with_param("J", big_j)
        .with_param("i", i)
        .with_param("order", order))
}

/// `h^(j)_{i,l} G_{(k-1)j+l}` counts partitions of the starting class in which
/// the shelf-`j` part (`j` for gordon, `2j` for gga) appears exactly `l-1` times.
pub fn multiplicity_decomposition_check(
    family: Family,
    big_j: i64,
    i: i64,
    j: i64,
    l: i64,
    k: i64,
    order: i64,
) -> Result<CheckResult> {
    if j < big_j + 1 {
        return Err(invalid(format!("j = {j} must exceed J = {big_j}")));
    }
    let h = h_matrix(family, big_j, j, k)?;
    let g = crate::matrices::closed_form(family, k, j, l, order)?;
    let part = match family {
        Family::Gga => 2 * j,
        Family::Gordon => j,
    };
    let c = PartitionConstraint::new(family, k, i, big_j)?.with_pinned(part, l - 1);
    Ok(h.entry(i, l)
        .mul(&g)
        .prefix_eq(&genfun(&c, order), order + 1)?
        .with_id("multiplicity_decomposition")
        .with_param("family", family.as_str())
        .with_param("k", k)
        .with_param("J", big_j)
        .with_param("i", i)
        .with_param("j", j)
        .with_param("l", l)
        .with_param("order", order))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &Series, n: i64) -> Vec<i64> {
        (0..=n)
            .map(|e| i64::try_from(s.coeff(e).unwrap()).unwrap())
            .collect()
    }

    /// Partitions into parts congruent to one of `residues` modulo `m`, by direct search.
    fn brute(m: i64, residues: &[i64], n: i64) -> Vec<i64> {
        fn go(rem: i64, max: i64, ok: &dyn Fn(i64) -> bool) -> i64 {
            if rem == 0 {
                return 1;
            }
            (1..=max.min(rem))
                .filter(|&p| ok(p))
                .map(|p| go(rem - p, p, ok))
                .sum()
        }
        let ok = |p: i64| residues.contains(&(p % m));
        (0..=n).map(|t| go(t, t, &ok)).collect()
    }

    #[test]
    fn rogers_ramanujan_shelf0() {
        let g1 = gordon_shelf0(2, 1, 8).unwrap();
        assert_eq!(ints(&g1, 8), vec![1, 1, 1, 1, 2, 2, 3, 3, 4]);
        assert_eq!(ints(&g1, 8), brute(5, &[1, 4], 8));
        let g2 = gordon_shelf0(2, 2, 8).unwrap();
        assert_eq!(ints(&g2, 8), vec![1, 0, 1, 1, 1, 1, 2, 2, 3]);
        assert_eq!(ints(&g2, 8), brute(5, &[2, 3], 8));
    }

    #[test]
    fn shelf0_forms_agree() {
        for k in 2..=4 {
            for i in 1..=k {
                assert!(gordon_shelf0_check(k, i, 100).unwrap().is_pass());
                assert_eq!(
                    gordon_shelf0(k, i, 5).unwrap().coeff(0).unwrap(),
                    BigInt::from(1)
                );
            }
        }
    }

    #[test]
    fn closed_form_base_and_first_step() {
        let base = gordon_closed_form(ShelfIndex::new(2, 0, 1).unwrap(), 30);
        assert_eq!(base, gordon_shelf0(2, 1, 30).unwrap());
        let g1 = gordon_shelf0(2, 1, 31).unwrap();
        let g2 = gordon_shelf0(2, 2, 31).unwrap();
        let g3 = (&g1 - &g2).shift(-1).into_ordinary().unwrap();
        assert_eq!(ints(&g3, 4), vec![1, 0, 0, 1, 1]);
        let closed = gordon_closed_form(ShelfIndex::new(2, 1, 2).unwrap(), 29);
        assert!(g3.prefix_eq(&closed, 30).unwrap().is_pass());
    }

    #[test]
    fn recursion_matches_closed_form() {
        for k in 2..=3 {
            let shelves = gordon_shelves(k, 4, 40).unwrap();
            for r in gordon_recursion_vs_closed_form(&shelves, 40).unwrap() {
                assert!(r.is_pass(), "{r}");
            }
            assert!(gordon_weak_eh_check(&shelves).unwrap().is_pass());
        }
    }

    #[test]
    fn eh_examples() {
        let r = gordon_eh_check(ShelfIndex::new(2, 1, 1).unwrap(), 20).unwrap();
        assert!(r.is_pass(), "{r}");
        assert!(gordon_eh_check(ShelfIndex::new(3, 0, 3).unwrap(), 20)
            .unwrap()
            .is_pass());
        let g = gordon_closed_form(ShelfIndex::new(4, 2, 2).unwrap(), 20);
        assert_eq!(ints(&g, 3), vec![1, 0, 0, 1]);
    }

    #[test]
    fn ehrenpreis_and_mutation() {
        assert!(ehrenpreis_check(2, 60).unwrap().is_pass());
        let mut shelves = gordon_shelves(2, 2, 40).unwrap();
        // replace the factor 1/(1-q) of G_1 by 1/(1+q)
        let flip = Series::polynomial(&[(0, 1), (1, -1)])
            .mul(&Series::binomial(1, 1).truncate(60).invert_unit().unwrap());
        shelves[0].entries[0] = shelves[0].entries[0].mul(&flip);
        let r = ehrenpreis_check_on(&shelves, 40).unwrap();
        assert!(!r.is_pass());
        assert!(r.first_discrepancy.is_some());
    }

    #[test]
    fn identity_and_decomposition_small() {
        for k in 2..=3 {
            for i in 1..=k {
                for big_j in 0..=2 {
                    assert!(gordon_identity_check(big_j, i, k, 30).unwrap().is_pass());
                }
            }
        }
        for family in [Family::Gga, Family::Gordon] {
            for l in 1..=3 {
                let r = multiplicity_decomposition_check(family, 1, 2, 3, l, 3, 30).unwrap();
                assert!(r.is_pass(), "{r}");
            }
        }
    }
}
