#![allow(dead_code)]

use proptest::prelude::*;
use qshelf::Series;

/// Truncated series with small valuation, precision at most 40.
pub fn series() -> impl Strategy<Value = Series> {
    (
        -4i64..=4,
        prop::collection::vec(-30i64..=30, 0..12),
        0i64..=20,
        prop::bool::weighted(0.15),
    )
        .prop_map(|(v, c, extra, exact)| {
            let p = if exact {
                qshelf::EXACT
            } else {
                v + c.len() as i64 + extra
            };
            Series::from_i64s(v, &c, p)
        })
}

/// Truncated series whose lowest coefficient is `±1`.
pub fn unit() -> impl Strategy<Value = Series> {
    (
        -4i64..=4,
        prop::bool::ANY,
        prop::collection::vec(-30i64..=30, 0..12),
        1i64..=20,
    )
        .prop_map(|(v, neg, mut c, extra)| {
            c.insert(0, if neg { -1 } else { 1 });
            Series::from_i64s(v, &c, v + c.len() as i64 + extra)
        })
}

/// Equality on the window where both sides are known.
pub fn agree(a: &Series, b: &Series) -> bool {
    if a.is_exact() && b.is_exact() {
        return a == b;
    }
    let up_to = a.precision().min(b.precision());
    a.prefix_eq(b, up_to).map(|r| r.is_pass()).unwrap_or(false)
}

pub fn ring_axioms(a: &Series, b: &Series, c: &Series) -> Result<(), String> {
    let checks = [
        ("add commutes", agree(&(a + b), &(b + a))),
        ("mul commutes", agree(&(a * b), &(b * a))),
        ("add associates", agree(&((a + b) + c), &(a + &(b + c)))),
        ("mul associates", agree(&((a * b) * c), &(a * &(b * c)))),
        ("distributes", agree(&(a * &(b + c)), &((a * b) + (a * c)))),
        (
            "additive inverse",
            agree(&(a + &(-a)), &Series::zero(a.precision())),
        ),
        ("unit", agree(&(a * &Series::one(qshelf::EXACT)), a)),
    ];
    match checks.iter().find(|(_, ok)| !ok) {
        Some((name, _)) => Err(format!("{name} fails for {a:?}, {b:?}, {c:?}")),
        None => Ok(()),
    }
}

pub fn inverse_round_trip(u: &Series) -> Result<(), String> {
    let inv = u.invert_unit().map_err(|e| e.to_string())?;
    let prod = u * &inv;
    if !agree(&prod, &Series::one(qshelf::EXACT)) {
        return Err(format!("u * u^-1 != 1 for {u:?}"));
    }
    let back = inv.invert_unit().map_err(|e| e.to_string())?;
    if !agree(&back, u) {
        return Err(format!("double inverse differs for {u:?}"));
    }
    Ok(())
}
