//! Truncated formal Laurent series with exact integer coefficients.
//!
//! A [`Series`] stores a dense run of coefficients starting at its
//! valuation together with a precision: the exclusive upper exponent below
//! which every coefficient is known. Coefficients at or above the precision
//! are unknown, not zero. Exact Laurent polynomials use the sentinel
//! precision [`EXACT`].
//!
//! Precision is propagated pessimistically: no operation ever reports a
//! coefficient it cannot guarantee.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::check::{CheckResult, Discrepancy};
use crate::error::{Error, Result};

/// Precision sentinel for series known at every exponent (Laurent polynomials).
pub const EXACT: i64 = i64::MAX / 4;

fn shift_precision(precision: i64, by: i64) -> i64 {
    if precision >= EXACT {
        EXACT
    } else {
        (precision + by).min(EXACT)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Series {
    valuation: i64,
    coeffs: Vec<BigInt>,
    precision: i64,
}

impl Series {
    /// Builds a series from coefficients of `q^valuation, q^(valuation+1), ...`.
    /// Coefficients at or beyond `precision` are dropped.
    pub fn from_coeffs(valuation: i64, coeffs: Vec<BigInt>, precision: i64) -> Self {
        let mut s = Series {
            valuation,
            coeffs,
            precision: precision.min(EXACT),
        };
        s.canonicalize();
        s
    }

    pub fn from_i64s(valuation: i64, coeffs: &[i64], precision: i64) -> Self {
        Self::from_coeffs(
            valuation,
            coeffs.iter().map(|&c| BigInt::from(c)).collect(),
            precision,
        )
    }

    /// The exact Laurent polynomial `sum c q^e` over the given `(e, c)` terms.
    pub fn polynomial(terms: &[(i64, i64)]) -> Self {
        let Some(lo) = terms.iter().map(|t| t.0).min() else {
            return Self::zero(EXACT);
        };
        let hi = terms.iter().map(|t| t.0).max().unwrap_or(lo);
        let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for &(e, c) in terms {
            coeffs[(e - lo) as usize] += c;
        }
        Self::from_coeffs(lo, coeffs, EXACT)
    }

    pub fn zero(precision: i64) -> Self {
        let precision = precision.min(EXACT);
        Series {
            valuation: precision,
            coeffs: Vec::new(),
            precision,
        }
    }

    pub fn one(precision: i64) -> Self {
        Self::monomial(BigInt::one(), 0, precision)
    }

    /// `c q^e`, known below `precision`.
    pub fn monomial(c: impl Into<BigInt>, e: i64, precision: i64) -> Self {
        Self::from_coeffs(e, vec![c.into()], precision)
    }

    /// Exact `q^e`.
    pub fn q_pow(e: i64) -> Self {
        Self::monomial(1, e, EXACT)
    }

    /// Exact `1 + sign q^e`.
    pub fn binomial(sign: i64, e: i64) -> Self {
        Self::polynomial(&[(0, 1), (e, sign)])
    }

    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    pub fn precision(&self) -> i64 {
        self.precision
    }

    pub fn is_exact(&self) -> bool {
        self.precision >= EXACT
    }

    /// True when every coefficient below the precision is zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Stored coefficients, starting at [`Series::valuation`].
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `q^n`, or `None` if `n` lies at or beyond the precision.
    pub fn coeff(&self, n: i64) -> Option<BigInt> {
        if n >= self.precision {
            return None;
        }
        Some(self.coeff_unchecked(n))
    }

    fn coeff_unchecked(&self, n: i64) -> BigInt {
        if n < self.valuation {
            return BigInt::zero();
        }
        self.coeffs
            .get((n - self.valuation) as usize)
            .cloned()
            .unwrap_or_default()
    }

    /// Lowest exponent with a nonzero coefficient, if any is known.
    pub fn order(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.valuation)
    }

    /// Exponent of the highest stored nonzero coefficient.
    pub fn degree(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then(|| self.valuation + self.coeffs.len() as i64 - 1)
    }

    /// Nonzero terms as `(exponent, coefficient)` pairs in ascending order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(t, c)| (self.valuation + t as i64, c))
    }

    /// Forgets every coefficient at or above `precision`.
    pub fn truncate(&self, precision: i64) -> Series {
        if precision >= self.precision {
            return self.clone();
        }
        Series::from_coeffs(self.valuation, self.coeffs.clone(), precision)
    }

    fn canonicalize(&mut self) {
        if self.valuation > self.precision {
            self.valuation = self.precision;
            self.coeffs.clear();
        }
        let window = (self.precision - self.valuation).max(0);
        if (self.coeffs.len() as i64) > window {
            self.coeffs.truncate(window as usize);
        }
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.valuation = self.precision;
        } else if lead > 0 {
            self.coeffs.drain(..lead);
            self.valuation += lead as i64;
        }
    }

    fn combine(&self, other: &Series, sign: i64) -> Series {
        let precision = self.precision.min(other.precision);
        if self.is_zero() && other.is_zero() {
            return Series::zero(precision);
        }
        let lo = match (self.order(), other.order()) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) => a,
            (None, b) => b.unwrap_or(precision),
        }
        .min(precision);
        let hi = self
            .degree()
            .into_iter()
            .chain(other.degree())
            .max()
            .map_or(lo, |d| d + 1)
            .min(precision);
        let mut coeffs = vec![BigInt::zero(); (hi - lo).max(0) as usize];
        for (e, c) in self.terms() {
            if e < hi {
                coeffs[(e - lo) as usize] += c;
            }
        }
        for (e, c) in other.terms() {
            if e < hi {
                if sign > 0 {
                    coeffs[(e - lo) as usize] += c;
                } else {
                    coeffs[(e - lo) as usize] -= c;
                }
            }
        }
        Series::from_coeffs(lo, coeffs, precision)
    }

    pub fn add(&self, other: &Series) -> Series {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &Series) -> Series {
        self.combine(other, -1)
    }

    pub fn neg(&self) -> Series {
        Series {
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            precision: self.precision,
        }
    }

    pub fn scale(&self, factor: &BigInt) -> Series {
        Series::from_coeffs(
            self.valuation,
            self.coeffs.iter().map(|c| c * factor).collect(),
            self.precision,
        )
    }

    /// Cauchy product, computed only on the window where it is determined.
    pub fn mul(&self, other: &Series) -> Series {
        let precision = shift_precision(self.precision, other.valuation)
            .min(shift_precision(other.precision, self.valuation));
        if self.is_zero() || other.is_zero() {
            return Series::zero(precision);
        }
        let valuation = self.valuation + other.valuation;
        let full = self.coeffs.len() + other.coeffs.len() - 1;
        let len = if precision >= EXACT {
            full
        } else {
            full.min((precision - valuation).max(0) as usize)
        };
        let mut out = vec![BigInt::zero(); len];
        for (s, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (t, b) in other.coeffs.iter().enumerate().take(len - s) {
                if !b.is_zero() {
                    out[s + t] += a * b;
                }
            }
        }
        Series::from_coeffs(valuation, out, precision)
    }

    /// Multiplies by `q^m`.
    pub fn shift(&self, m: i64) -> Series {
        Series {
            valuation: if self.is_zero() {
                shift_precision(self.precision, m)
            } else {
                self.valuation + m
            },
            coeffs: self.coeffs.clone(),
            precision: shift_precision(self.precision, m),
        }
    }

    /// Multiplicative inverse of a series whose lowest nonzero coefficient is `±1`.
    ///
    /// If the input is `q^v u` known below `P`, the inverse is known below `P - 2v`.
    pub fn invert_unit(&self) -> Result<Series> {
        let Some(v) = self.order() else {
            return Err(Error::ZeroSeries);
        };
        if self.is_exact() {
            return Err(Error::UnboundedPrecision);
        }
        let lead = &self.coeffs[0];
        if !lead.abs().is_one() {
            return Err(Error::LowestCoefficientNotUnit {
                exponent: v,
                coefficient: lead.clone(),
            });
        }
        let window = (self.precision - v) as usize;
        let mut inv: Vec<BigInt> = Vec::with_capacity(window);
        inv.push(lead.clone());
        for n in 1..window {
            let mut acc = BigInt::zero();
            for t in 1..=n.min(self.coeffs.len() - 1) {
                let u = &self.coeffs[t];
                if !u.is_zero() {
                    acc += u * &inv[n - t];
                }
            }
            // lead is ±1, so dividing by it is multiplying by it
            inv.push(-(acc * lead));
        }
        Ok(Series::from_coeffs(-v, inv, self.precision - 2 * v))
    }

    /// Succeeds iff no nonzero coefficient sits at a negative exponent.
    pub fn assert_ordinary(&self) -> Result<&Series> {
        match self.terms().next() {
            Some((e, c)) if e < 0 => Err(Error::NegativeExponentResidue {
                exponent: e,
                coefficient: c.clone(),
            }),
            _ => Ok(self),
        }
    }

    pub fn into_ordinary(self) -> Result<Series> {
        self.assert_ordinary()?;
        Ok(self)
    }

    /// Compares coefficients of `q^n` for every `n < up_to`.
    pub fn prefix_eq(&self, other: &Series, up_to: i64) -> Result<CheckResult> {
        let available = self.precision.min(other.precision);
        if up_to > available {
            return Err(Error::InsufficientPrecision {
                requested: up_to,
                available,
            });
        }
        let lo = self.valuation.min(other.valuation);
        for n in lo..up_to {
            let (a, b) = (self.coeff_unchecked(n), other.coeff_unchecked(n));
            if a != b {
                return Ok(CheckResult::fail(
                    "prefix_eq",
                    Discrepancy {
                        exponent: n,
                        lhs: a,
                        rhs: b,
                    },
                ));
            }
        }
        Ok(CheckResult::pass("prefix_eq"))
    }

    /// First exponent below `up_to` carrying a negative coefficient.
    pub fn first_negative(&self, up_to: i64) -> Option<(i64, BigInt)> {
        self.terms()
            .take_while(|(e, _)| *e < up_to)
            .find(|(_, c)| c.is_negative())
            .map(|(e, c)| (e, c.clone()))
    }

    /// Text dump: a `# valuation=<v> precision=<P>` header, then one
    /// `n<TAB>coefficient` line per exponent from the valuation to `P - 1`.
    pub fn dump(&self) -> String {
        if self.is_exact() && self.is_zero() {
            return "# valuation=0 precision=0\n".to_owned();
        }
        let mut out = format!(
            "# valuation={} precision={}\n",
            self.valuation,
            self.dump_precision()
        );
        for n in self.valuation..self.dump_precision() {
            out.push_str(&format!("{}\t{}\n", n, self.coeff_unchecked(n)));
        }
        out
    }

    fn dump_precision(&self) -> i64 {
        if self.is_exact() {
            self.degree().map_or(self.valuation, |d| d + 1)
        } else {
            self.precision
        }
    }

    pub fn parse_dump(text: &str) -> Result<Series> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing header".into(),
        })?;
        let field = |name: &str| -> Result<i64> {
            header
                .split_whitespace()
                .find_map(|w| w.strip_prefix(name)?.strip_prefix('='))
                .and_then(|v| v.parse().ok())
                .ok_or(Error::Parse {
                    line: 1,
                    message: format!("bad header field {name}"),
                })
        };
        if !header.starts_with('#') {
            return Err(Error::Parse {
                line: 1,
                message: "missing header".into(),
            });
        }
        let valuation = field("valuation")?;
        let precision = field("precision")?;
        let mut coeffs = Vec::new();
        for (idx, line) in lines {
            let bad = |m: &str| Error::Parse {
                line: idx + 1,
                message: m.to_owned(),
            };
            let (n, c) = line
                .split_once('\t')
                .ok_or_else(|| bad("expected n<TAB>coefficient"))?;
            let n: i64 = n.trim().parse().map_err(|_| bad("bad exponent"))?;
            if n != valuation + coeffs.len() as i64 {
                return Err(bad("exponents must be consecutive from the valuation"));
            }
            coeffs.push(
                c.trim()
                    .parse::<BigInt>()
                    .map_err(|_| bad("bad coefficient"))?,
            );
        }
        Ok(Series::from_coeffs(valuation, coeffs, precision))
    }
}

/// Product of series, all truncated to `precision`.
pub fn product<'a>(factors: impl IntoIterator<Item = &'a Series>, precision: i64) -> Series {
    factors
        .into_iter()
        .fold(Series::one(precision), |acc, f| acc.mul(f))
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            let (neg, mag) = (c.is_negative(), c.abs());
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            match (e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("q")?,
                (1, false) => write!(f, "{mag}q")?,
                (_, true) => write!(f, "q^{e}")?,
                (_, false) => write!(f, "{mag}q^{e}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        if !self.is_exact() {
            write!(f, " + O(q^{})", self.precision)?;
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&Series> for &Series {
            type Output = Series;
            fn $method(self, rhs: &Series) -> Series {
                Series::$method(self, rhs)
            }
        }
        impl $tr<Series> for Series {
            type Output = Series;
            fn $method(self, rhs: Series) -> Series {
                Series::$method(&self, &rhs)
            }
        }
        impl $tr<&Series> for Series {
            type Output = Series;
            fn $method(self, rhs: &Series) -> Series {
                Series::$method(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series::neg(self)
    }
}

impl Neg for Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series::neg(&self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: i64, c: &[i64], p: i64) -> Series {
        Series::from_i64s(v, c, p)
    }

    #[test]
    fn add_cancels_and_takes_min_precision() {
        let a = s(0, &[1, -1], 10);
        let b = s(1, &[1], 7);
        let sum = &a + &b;
        assert_eq!(sum, Series::one(7));
        assert_eq!(sum.precision(), 7);
    }

    #[test]
    fn add_zero_is_identity() {
        let x = s(-2, &[3, 0, -4, 5], 12);
        assert_eq!(&Series::zero(EXACT) + &x, x);
    }

    #[test]
    fn add_truncates_to_smaller_window() {
        let a = Series::polynomial(&[(0, 1), (3, 1)]).truncate(10);
        let b = Series::polynomial(&[(1, 1), (3, -1)]).truncate(5);
        assert_eq!(&a + &b, s(0, &[1, 1], 5));
    }

    #[test]
    fn mul_telescopes_geometric_series() {
        let one_minus_q = Series::binomial(-1, 1);
        let geo = s(0, &[1; 12], 12);
        let prod = &one_minus_q * &geo;
        assert_eq!(prod, Series::one(12));
    }

    #[test]
    fn mul_by_one_is_identity() {
        let x = s(1, &[2, -7, 0, 1], 9);
        assert_eq!(&x * &Series::q_pow(0), x);
    }

    #[test]
    fn mul_laurent_shift() {
        let a = Series::polynomial(&[(-1, 1), (0, 1)]);
        let b = Series::q_pow(1);
        assert_eq!(&a * &b, Series::polynomial(&[(0, 1), (1, 1)]));
    }

    #[test]
    fn mul_precision_rule() {
        // (q^2 + O(q^5)) * (q^{-1} + O(q^3)) is known below min(5 - 1, 3 + 2) = 4
        let a = s(2, &[1], 5);
        let b = s(-1, &[1], 3);
        assert_eq!((&a * &b).precision(), 4);
    }

    #[test]
    fn invert_geometric() {
        let inv = Series::binomial(-1, 1).truncate(5).invert_unit().unwrap();
        assert_eq!(inv, s(0, &[1, 1, 1, 1, 1], 5));
    }

    #[test]
    fn invert_one() {
        assert_eq!(Series::one(8).invert_unit().unwrap(), Series::one(8));
    }

    #[test]
    fn invert_laurent_unit() {
        // (-q^2 + q^3 + O(q^8))^{-1} is known below 8 - 4 = 4
        let a = s(2, &[-1, 1], 8);
        let inv = a.invert_unit().unwrap();
        assert_eq!(inv.valuation(), -2);
        assert_eq!(inv.precision(), 4);
        let back = &a * &inv;
        assert!(back
            .prefix_eq(&Series::one(EXACT), back.precision())
            .unwrap()
            .is_pass());
    }

    #[test]
    fn invert_errors() {
        assert_eq!(Series::zero(5).invert_unit(), Err(Error::ZeroSeries));
        assert!(matches!(
            s(0, &[2, 1], 5).invert_unit(),
            Err(Error::LowestCoefficientNotUnit { exponent: 0, .. })
        ));
        assert_eq!(
            Series::binomial(-1, 1).invert_unit(),
            Err(Error::UnboundedPrecision)
        );
    }

    #[test]
    fn shift_round_trip() {
        assert_eq!(
            Series::binomial(1, 1).shift(2),
            Series::polynomial(&[(2, 1), (3, 1)])
        );
        assert_eq!(Series::q_pow(2).shift(-2), Series::q_pow(0));
        let x = s(-1, &[4, 0, 2], 6);
        let y = x.shift(5);
        assert_eq!(y.valuation(), 4);
        assert_eq!(y.precision(), 11);
        assert_eq!(y.shift(-5), x);
    }

    #[test]
    fn assert_ordinary_cases() {
        assert!(Series::polynomial(&[(0, 1), (5, 1)])
            .assert_ordinary()
            .is_ok());
        let err = Series::polynomial(&[(-1, 1), (0, 1)])
            .assert_ordinary()
            .unwrap_err();
        assert_eq!(
            err,
            Error::NegativeExponentResidue {
                exponent: -1,
                coefficient: BigInt::one()
            }
        );
        // zero coefficients at negative exponents are fine
        assert!(s(-3, &[0, 0, 0, 1], 9).assert_ordinary().is_ok());
    }

    #[test]
    fn prefix_eq_window_semantics() {
        let one = Series::one(EXACT);
        let other = Series::polynomial(&[(0, 1), (10, 1)]);
        assert!(one.prefix_eq(&other, 10).unwrap().is_pass());
        let r = one.prefix_eq(&other, 11).unwrap();
        let d = r.first_discrepancy.unwrap();
        assert_eq!(
            (d.exponent, d.lhs, d.rhs),
            (10, BigInt::zero(), BigInt::one())
        );
        assert!(matches!(
            one.truncate(5).prefix_eq(&other, 6),
            Err(Error::InsufficientPrecision {
                requested: 6,
                available: 5
            })
        ));
    }

    #[test]
    fn zero_canonical_form() {
        let z = s(0, &[0, 0, 0], 4);
        assert!(z.is_zero());
        assert_eq!(z, Series::zero(4));
        assert_eq!(z.coeff(3), Some(BigInt::zero()));
        assert_eq!(z.coeff(4), None);
    }

    #[test]
    fn dump_format() {
        let x = s(-1, &[2, 0, -3], 3);
        assert_eq!(
            x.dump(),
            "# valuation=-1 precision=3\n-1\t2\n0\t0\n1\t-3\n2\t0\n"
        );
        assert_eq!(Series::parse_dump(&x.dump()).unwrap(), x);
    }

    #[test]
    fn display() {
        let x = s(-1, &[1, 0, -2, 0, 1], 6);
        assert_eq!(x.to_string(), "q^-1 - 2q + q^3 + O(q^6)");
        assert_eq!(Series::zero(EXACT).to_string(), "0");
    }
}
