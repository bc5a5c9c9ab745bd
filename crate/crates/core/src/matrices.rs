//! Transfer matrices over Laurent polynomials, h-polynomials and their limit.
//!
//! For the Göllnitz-Gordon-Andrews family the shelves satisfy
//! `C G_(j) = B_(j) G_(j-1)`; with `A_(j) = B_(j)^{-1}` and `A'_(j) = A_(j) C`
//! the starting shelf `J` is recovered as `G_(J) = h^(j) G_(j)` where
//! `h^(j) = A'_(J+1) ... A'_(j)`. The Gordon family has no `C` and uses
//! `A_(j)` directly.

use std::fmt;

use num_bigint::BigInt;

use crate::check::{CheckResult, Discrepancy};
use crate::error::{invalid, Error, Result};
use crate::gordon::gordon_closed_form;
use crate::product_forms::f_series;
use crate::series::Series;
use crate::shelves::{gga_closed_form, gga_numerator, ShelfIndex};
use crate::{check_k_i, Family};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MatrixKind {
    A,
    B,
    C,
    Aprime,
}

impl MatrixKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MatrixKind::A => "A",
            MatrixKind::B => "B",
            MatrixKind::C => "C",
            MatrixKind::Aprime => "Aprime",
        }
    }
}

/// Square matrix of series, row-major, addressed with 1-based indices.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    k: usize,
    entries: Vec<Series>,
}

impl PolyMatrix {
    pub fn zero(k: usize) -> Self {
        PolyMatrix {
            k,
            entries: vec![Series::zero(crate::EXACT); k * k],
        }
    }

    pub fn identity(k: usize) -> Self {
        let mut m = Self::zero(k);
        for r in 1..=k {
            m.set(r, r, Series::q_pow(0));
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn get(&self, r: usize, c: usize) -> &Series {
        &self.entries[(r - 1) * self.k + (c - 1)]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Series) {
        self.entries[(r - 1) * self.k + (c - 1)] = value;
    }

    pub fn row(&self, r: usize) -> &[Series] {
        &self.entries[(r - 1) * self.k..r * self.k]
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &Series)> + '_ {
        self.entries
            .iter()
            .enumerate()
            .map(move |(t, s)| ((t / self.k + 1, t % self.k + 1), s))
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.k, other.k, "dimension mismatch");
        let k = self.k;
        let mut out = Self::zero(k);
        for r in 1..=k {
            for c in 1..=k {
                let mut acc = Series::zero(crate::EXACT);
                for m in 1..=k {
                    let (a, b) = (self.get(r, m), other.get(m, c));
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    } else {
                        acc = acc.truncate(a.mul(b).precision());
                    }
                }
                out.set(r, c, acc);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Series]) -> Vec<Series> {
        assert_eq!(self.k, v.len(), "dimension mismatch");
        (1..=self.k)
            .map(|r| {
                (1..=self.k).fold(Series::zero(crate::EXACT), |acc, c| {
                    acc.add(&self.get(r, c).mul(&v[c - 1]))
                })
            })
            .collect()
    }

    pub fn truncate(&self, precision: i64) -> PolyMatrix {
        PolyMatrix {
            k: self.k,
            entries: self.entries.iter().map(|s| s.truncate(precision)).collect(),
        }
    }

    /// First entry (row-major) with a negative coefficient.
    pub fn first_negative(&self) -> Option<((usize, usize), i64, BigInt)> {
        self.entries()
            .find_map(|(pos, s)| s.first_negative(s.precision()).map(|(e, c)| (pos, e, c)))
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for r in 1..=self.k {
            if r > 1 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for c in 1..=self.k {
                if c > 1 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

fn step_exponent(family: Family) -> i64 {
    match family {
        Family::Gga => 2,
        Family::Gordon => 1,
    }
}

/// The matrix of the given kind at shelf `j`.
pub fn build_matrix(kind: MatrixKind, family: Family, j: i64, k: i64) -> Result<PolyMatrix> {
    check_k_i(k, 1)?;
    if j < 1 {
        return Err(invalid(format!("matrix index j must be >= 1, got {j}")));
    }
    let ku = k as usize;
    let s = step_exponent(family) * j;
    let mut m = PolyMatrix::zero(ku);
    match (kind, family) {
        (MatrixKind::B, _) => {
            m.set(1, ku, Series::q_pow(0));
            for r in 2..=ku {
                let e = -s * (r as i64 - 1);
                m.set(r, ku - r + 1, Series::q_pow(e));
                m.set(r, ku - r + 2, Series::monomial(-1, e, crate::EXACT));
            }
        }
        (MatrixKind::A, _) => {
            for r in 1..=ku {
                for c in 1..=ku - r + 1 {
                    m.set(r, c, Series::q_pow(s * (c as i64 - 1)));
                }
            }
        }
        (MatrixKind::C, Family::Gga) => {
            m = PolyMatrix::identity(ku);
            for r in 2..=ku {
                m.set(r, r - 1, Series::q_pow(-1));
            }
        }
        (MatrixKind::C, Family::Gordon) => m = PolyMatrix::identity(ku),
        (MatrixKind::Aprime, Family::Gga) => {
            for r in 1..=ku {
                for c in 1..=ku - r + 1 {
                    let ci = c as i64;
                    let mut terms = vec![(s * (ci - 1), 1)];
                    if c < ku - r + 1 {
                        terms.push((s * ci - 1, 1));
                    }
                    m.set(r, c, Series::polynomial(&terms));
                }
            }
        }
        (MatrixKind::Aprime, Family::Gordon) => {
            return Err(Error::UnsupportedKind {
                kind: kind.as_str(),
                family: family.as_str(),
            })
        }
    }
    Ok(m)
}

/// The matrix that advances `h^(j-1)` to `h^(j)`.
fn transfer(family: Family, j: i64, k: i64) -> Result<PolyMatrix> {
    match family {
        Family::Gga => build_matrix(MatrixKind::Aprime, family, j, k),
        Family::Gordon => build_matrix(MatrixKind::A, family, j, k),
    }
}

fn identity_check(m: &PolyMatrix) -> CheckResult {
    let id = PolyMatrix::identity(m.dim());
    for ((r, c), s) in m.entries() {
        let expect = id.get(r, c);
        if s != expect {
            let e = s.sub(expect).order().expect("nonzero difference");
            return CheckResult::fail(
                "ab_identity",
                Discrepancy {
                    exponent: e,
                    lhs: s.coeff(e).unwrap_or_default(),
                    rhs: expect.coeff(e).unwrap_or_default(),
                },
            )
            .with_param("row", r as i64)
            .with_param("col", c as i64);
        }
    }
    CheckResult::pass("ab_identity")
}

/// `A_(j) B_(j) = I` exactly.
pub fn ab_identity_check(family: Family, j: i64, k: i64) -> Result<CheckResult> {
    let a = build_matrix(MatrixKind::A, family, j, k)?;
    let b = build_matrix(MatrixKind::B, family, j, k)?;
    let both = [identity_check(&a.mul(&b)), identity_check(&b.mul(&a))];
    Ok(CheckResult::all("ab_identity", both)
        .with_param("family", family.as_str())
        .with_param("k", k)
        .with_param("j", j))
}

/// Closed form of shelf entry `(j, i)` for either family.
pub fn closed_form(family: Family, k: i64, j: i64, i: i64, order: i64) -> Result<Series> {
    let idx = ShelfIndex::new(k, j, i)?;
    Ok(match family {
        Family::Gga => gga_closed_form(idx, order),
        Family::Gordon => gordon_closed_form(idx, order),
    })
}

fn closed_form_vector(family: Family, k: i64, j: i64, order: i64) -> Result<Vec<Series>> {
    (1..=k)
        .map(|i| closed_form(family, k, j, i, order))
        .collect()
}

fn vector_eq(id: &str, lhs: &[Series], rhs: &[Series], up_to: i64) -> Result<CheckResult> {
    let mut parts = Vec::new();
    for (r, (a, b)) in lhs.iter().zip(rhs).enumerate() {
        parts.push(a.prefix_eq(b, up_to)?.with_param("row", r as i64 + 1));
    }
    Ok(CheckResult::all(id, parts))
}

/// `C G_(j) = B_(j) G_(j-1)` (gga) or `G_(j) = B_(j) G_(j-1)` (gordon) through `q^order`.
pub fn matrix_recursion_check(family: Family, k: i64, j: i64, order: i64) -> Result<CheckResult> {
    let b = build_matrix(MatrixKind::B, family, j, k)?;
    let c = build_matrix(MatrixKind::C, family, j, k)?;
    let depth = step_exponent(family) * j * (k - 1);
    let prev = closed_form_vector(family, k, j - 1, order + depth)?;
    let cur = closed_form_vector(family, k, j, order + 1)?;
    let lhs = c.mul_vec(&cur);
    let rhs = b.mul_vec(&prev);
    Ok(vector_eq("matrix_recursion", &lhs, &rhs, order + 1)?
        .with_param("family", family.as_str())
        .with_param("k", k)
        .with_param("j", j)
        .with_param("order", order))
}

/// `h^(j)` for a starting shelf `J`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HState {
    pub family: Family,
    pub big_j: i64,
    pub j: i64,
    pub matrix: PolyMatrix,
}

impl HState {
    /// `h^(J) = I`.
    pub fn initial(family: Family, big_j: i64, k: i64) -> Result<Self> {
        check_k_i(k, 1)?;
        if big_j < 0 {
            return Err(invalid(format!("starting shelf must be >= 0, got {big_j}")));
        }
        Ok(HState {
            family,
            big_j,
            j: big_j,
            matrix: PolyMatrix::identity(k as usize),
        })
    }

    pub fn k(&self) -> i64 {
        self.matrix.dim() as i64
    }

    /// Entry `(i, l)` of the current matrix.
    pub fn entry(&self, i: i64, l: i64) -> &Series {
        self.matrix.get(i as usize, l as usize)
    }

    pub fn truncate(&self, precision: i64) -> HState {
        HState {
            matrix: self.matrix.truncate(precision),
            ..self.clone()
        }
    }
}

/// Advances `h^(j)` to `h^(j+1)` through the componentwise recursion.
pub fn h_step(state: &HState) -> HState {
    let k = state.matrix.dim();
    let j = state.j + 1;
    let s = step_exponent(state.family) * j;
    let mut next = PolyMatrix::zero(k);
    for i in 1..=k {
        let row = state.matrix.row(i);
        let partial = |upto: usize| {
            row[..upto]
                .iter()
                .fold(Series::zero(crate::EXACT), |acc, x| acc.add(x))
        };
        for l in 1..=k {
            let li = l as i64;
            let mut value = partial(k - l + 1).shift(s * (li - 1));
            if state.family == Family::Gga && l < k {
                value = value.add(&partial(k - l).shift(s * li - 1));
            }
            next.set(i, l, value);
        }
    }
    HState {
        j,
        matrix: next,
        ..state.clone()
    }
}

/// Advances `h^(j)` to `h^(j+1)` by right-multiplying with the transfer matrix.
pub fn h_step_matrix(state: &HState) -> Result<HState> {
    let j = state.j + 1;
    let m = transfer(state.family, j, state.k())?;
    Ok(HState {
        j,
        matrix: state.matrix.mul(&m),
        ..state.clone()
    })
}

/// `h^(j)` with starting shelf `J`, exact.
pub fn h_matrix(family: Family, big_j: i64, j: i64, k: i64) -> Result<HState> {
    if j < big_j {
        return Err(invalid(format!(
            "j = {j} precedes the starting shelf {big_j}"
        )));
    }
    let mut st = HState::initial(family, big_j, k)?;
    while st.j < j {
        st = h_step(&st);
    }
    Ok(st)
}

/// First shelf from which column 1 of `h^(j)` is fixed through `q^order`.
pub fn stable_from(family: Family, order: i64) -> i64 {
    match family {
        // entries of columns l >= 2 carry q^{2j(l-1)}
        Family::Gga => (order + 2) / 2,
        Family::Gordon => order + 1,
    }
}

/// Iteration cutoff used by [`h_infinity`].
pub fn h_infinity_cutoff(family: Family, big_j: i64, order: i64) -> i64 {
    big_j.max(stable_from(family, order)) + 2
}

/// Column-1 limit `h^(inf)_{i,1}` through `q^order`.
pub fn h_infinity(big_j: i64, i: i64, k: i64, family: Family, order: i64) -> Result<Series> {
    check_k_i(k, i)?;
    let precision = order + 1;
    let stop = h_infinity_cutoff(family, big_j, order);
    let mut st = HState::initial(family, big_j, k)?.truncate(precision);
    let mut prev = st.entry(i, 1).clone();
    while st.j < stop {
        prev = st.entry(i, 1).clone();
        st = h_step(&st).truncate(precision);
    }
    let last = st.entry(i, 1).clone();
    if let Some(d) = prev.prefix_eq(&last, precision)?.first_discrepancy {
        return Err(Error::StabilizationFailure {
            j_prev: stop - 1,
            j_last: stop,
            exponent: d.exponent,
        });
    }
    Ok(last)
}

/// `G_{(k-1)J+i} = h^(inf)_{i,1}` through `q^order`.
pub fn g_equals_hinf_check(
    big_j: i64,
    i: i64,
    k: i64,
    family: Family,
    order: i64,
) -> Result<CheckResult> {
    let g = closed_form(family, k, big_j, i, order)?;
    let h = h_infinity(big_j, i, k, family, order)?;
    Ok(g.prefix_eq(&h, order + 1)?
        .with_id("g_equals_hinf")
        .with_param("family", family.as_str())
        .with_param("k", k)
        .with_param("J", big_j)
        .with_param("i", i)
        .with_param("order", order))
}

/// The componentwise recursion and the matrix-product route agree exactly at every step up to `j`.
pub fn h_route_check(family: Family, big_j: i64, j: i64, k: i64) -> Result<CheckResult> {
    let mut by_rec = HState::initial(family, big_j, k)?;
    let mut by_mat = by_rec.clone();
    let mut product = PolyMatrix::identity(k as usize);
    while by_rec.j < j {
        by_rec = h_step(&by_rec);
        by_mat = h_step_matrix(&by_mat)?;
        product = product.mul(&transfer(family, by_rec.j, k)?);
        for ((r, c), a) in by_rec.matrix.entries() {
            for other in [by_mat.matrix.get(r, c), product.get(r, c)] {
                if a != other {
                    let e = a.sub(other).order().expect("nonzero difference");
                    return Ok(CheckResult::fail(
                        "h_route",
                        Discrepancy {
                            exponent: e,
                            lhs: a.coeff(e).unwrap_or_default(),
                            rhs: other.coeff(e).unwrap_or_default(),
                        },
                    )
                    .with_param("family", family.as_str())
                    .with_param("k", k)
                    .with_param("J", big_j)
                    .with_param("j", by_rec.j));
                }
            }
        }
    }
    Ok(CheckResult::pass("h_route")
        .with_param("family", family.as_str())
        .with_param("k", k)
        .with_param("J", big_j)
        .with_param("j", j))
}

/// Every coefficient of `h^(J)`, ..., `h^(j)` is nonnegative.
pub fn h_nonnegative_check(family: Family, big_j: i64, j: i64, k: i64) -> Result<CheckResult> {
    let mut st = HState::initial(family, big_j, k)?;
    loop {
        if let Some(((r, c), e, coeff)) = st.matrix.first_negative() {
            return Ok(CheckResult::fail(
                "h_nonnegative",
                Discrepancy {
                    exponent: e,
                    lhs: coeff,
                    rhs: BigInt::from(0),
                },
            )
            .with_param("family", family.as_str())
            .with_param("k", k)
            .with_param("J", big_j)
            .with_param("j", st.j)
            .with_param("row", r as i64)
            .with_param("col", c as i64));
        }
        if st.j >= j {
            break;
        }
        st = h_step(&st);
    }
    Ok(CheckResult::pass("h_nonnegative")
        .with_param("family", family.as_str())
        .with_param("k", k)
        .with_param("J", big_j)
        .with_param("j", j))
}

/// `sum_l h^(j)_{i,l} G_{(k-1)j+l} = G_{(k-1)J+i}` through `q^order`.
pub fn decomposition_check(
    family: Family,
    big_j: i64,
    i: i64,
    j: i64,
    k: i64,
    order: i64,
) -> Result<CheckResult> {
    let h = h_matrix(family, big_j, j, k)?;
    let shelf = closed_form_vector(family, k, j, order)?;
    let lhs = (1..=k).fold(Series::zero(crate::EXACT), |acc, l| {
        acc.add(&h.entry(i, l).mul(&shelf[(l - 1) as usize]))
    });
    let rhs = closed_form(family, k, big_j, i, order)?;
    Ok(lhs
        .prefix_eq(&rhs, order + 1)?
        .with_id("decomposition")
        .with_param("family", family.as_str())
        .with_param("k", k)
        .with_param("J", big_j)
        .with_param("i", i)
        .with_param("j", j)
        .with_param("order", order))
}

/// Reassembles the denominator of the closed form from the requirement that
/// `G_{(k-1)j+1} ≡ 1 (mod q^{2j+1})`: below that exponent the denominator
/// must coincide with the numerator, so coefficient `t` is read off the
/// numerator of the smallest shelf with `2j + 1 > t`.
pub fn solve_unique_denominator(k: i64, order: i64) -> Result<Series> {
    check_k_i(k, 1)?;
    let mut coeffs = Vec::with_capacity((order + 1).max(0) as usize);
    let mut cached: Option<(i64, Series)> = None;
    for t in 0..=order {
        let j = (t + 1) / 2;
        if cached.as_ref().is_none_or(|(cj, _)| *cj != j) {
            cached = Some((j, gga_numerator(ShelfIndex::new(k, j, 1)?, order)));
        }
        let (_, numerator) = cached.as_ref().expect("just filled");
        coeffs.push(numerator.coeff(t).expect("within order"));
    }
    Ok(Series::from_coeffs(0, coeffs, order + 1))
}

/// The reassembled denominator equals `F(q)` through `q^order`.
pub fn unique_denominator_check(k: i64, order: i64) -> Result<CheckResult> {
    let solved = solve_unique_denominator(k, order)?;
    Ok(solved
        .prefix_eq(&f_series(order), order + 1)?
        .with_id("unique_denominator")
        .with_param("k", k)
        .with_param("order", order))
}
