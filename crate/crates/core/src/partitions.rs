//! Brute-force partition enumeration under difference, parity and
//! multiplicity conditions.
//!
//! Partitions are weakly decreasing part sequences `b_1 >= b_2 >= ...`.
//! "Difference at distance `k-1`" compares `b_p` with `b_{p+k-1}` wherever
//! both exist; partitions with fewer than `k` parts satisfy it vacuously.

use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use num_bigint::BigInt;

use crate::check::CheckResult;
use crate::error::{invalid, Result};
use crate::matrices::h_matrix;
use crate::series::Series;
use crate::{check_k_i, Family};

/// A class of partitions.
///
/// For `Gga`: no repeated odd parts; `b_p - b_{p+k-1} >= 2` when `b_p` is odd
/// and `> 2` when it is even; smallest part `> 2J`; at most `k-i` parts equal
/// to `2J+1` or `2J+2`. For `Gordon`: `b_p - b_{p+k-1} >= 2`; smallest part
/// `> J`; at most `k-i` parts equal to `J+1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionConstraint {
    pub family: Family,
    pub k: i64,
    pub i: i64,
    pub big_j: i64,
    /// Upper bound on every part.
    pub max_part: Option<i64>,
    /// Exact number of parts equal to `max_part`.
    pub exact_count_of_max: Option<i64>,
    /// `(part, count)`: the part appears exactly `count` times.
    pub pinned: Option<(i64, i64)>,
}

impl PartitionConstraint {
    pub fn new(family: Family, k: i64, i: i64, big_j: i64) -> Result<Self> {
        check_k_i(k, i)?;
        if big_j < 0 {
            return Err(invalid(format!("J must be >= 0, got {big_j}")));
        }
        Ok(PartitionConstraint {
            family,
            k,
            i,
            big_j,
            max_part: None,
            exact_count_of_max: None,
            pinned: None,
        })
    }

    /// Largest part at most `max_part`, which appears exactly `count` times.
    pub fn with_max(mut self, max_part: i64, count: i64) -> Self {
        self.max_part = Some(max_part);
        self.exact_count_of_max = Some(count);
        self
    }

    pub fn with_pinned(mut self, part: i64, count: i64) -> Self {
        self.pinned = Some((part, count));
        self
    }

    /// Smallest admissible part.
    pub fn min_part(&self) -> i64 {
        match self.family {
            Family::Gga => 2 * self.big_j + 1,
            Family::Gordon => self.big_j + 1,
        }
    }

    fn is_edge_part(&self, p: i64) -> bool {
        match self.family {
            Family::Gga => p == 2 * self.big_j + 1 || p == 2 * self.big_j + 2,
            Family::Gordon => p == self.big_j + 1,
        }
    }

    /// Whether `larger` may sit `k-1` positions before `smaller`.
    fn gap_ok(&self, larger: i64, smaller: i64) -> bool {
        let d = larger - smaller;
        match self.family {
            Family::Gga if larger % 2 == 0 => d > 2,
            _ => d >= 2,
        }
    }
}

/// A named condition a partition can break.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    NotDecreasing,
    NonPositivePart,
    RepeatedOddPart,
    OddGap,
    EvenGap,
    Gap,
    SmallestPart,
    EdgeMultiplicity,
    LargestPart,
    MaxMultiplicity,
    PinnedMultiplicity,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Condition::NotDecreasing => "parts not weakly decreasing",
            Condition::NonPositivePart => "non-positive part",
            Condition::RepeatedOddPart => "odd part repeated",
            Condition::OddGap => "gap < 2 at distance k-1 below an odd part",
            Condition::EvenGap => "gap <= 2 at distance k-1 below an even part",
            Condition::Gap => "gap < 2 at distance k-1",
            Condition::SmallestPart => "smallest part too small",
            Condition::EdgeMultiplicity => "too many smallest admissible parts",
            Condition::LargestPart => "part exceeds the bound",
            Condition::MaxMultiplicity => "wrong multiplicity of the bound",
            Condition::PinnedMultiplicity => "wrong multiplicity of the pinned part",
        };
        f.write_str(s)
    }
}

/// Every condition of `c` that `parts` breaks, checked on the whole sequence.
pub fn violations(c: &PartitionConstraint, parts: &[i64]) -> Vec<Condition> {
    let mut out = Vec::new();
    if parts.windows(2).any(|w| w[0] < w[1]) {
        out.push(Condition::NotDecreasing);
    }
    if parts.iter().any(|&p| p <= 0) {
        out.push(Condition::NonPositivePart);
    }
    let count = |v: i64| parts.iter().filter(|&&p| p == v).count() as i64;
    let d = (c.k - 1) as usize;
    for p in 0..parts.len() {
        let Some(&far) = parts.get(p + d) else { break };
        let diff = parts[p] - far;
        match c.family {
            Family::Gga if parts[p] % 2 != 0 && diff < 2 => out.push(Condition::OddGap),
            Family::Gga if parts[p] % 2 == 0 && diff <= 2 => out.push(Condition::EvenGap),
            Family::Gordon if diff < 2 => out.push(Condition::Gap),
            _ => {}
        }
    }
    if c.family == Family::Gga {
        let mut odd: Vec<i64> = parts.iter().copied().filter(|p| p % 2 != 0).collect();
        odd.sort_unstable();
        if odd.windows(2).any(|w| w[0] == w[1]) {
            out.push(Condition::RepeatedOddPart);
        }
    }
    if parts.iter().any(|&p| p < c.min_part()) {
        out.push(Condition::SmallestPart);
    }
    let edge = match c.family {
        Family::Gga => count(2 * c.big_j + 1) + count(2 * c.big_j + 2),
        Family::Gordon => count(c.big_j + 1),
    };
    if edge > c.k - c.i {
        out.push(Condition::EdgeMultiplicity);
    }
    if let Some(m) = c.max_part {
        if parts.iter().any(|&p| p > m) {
            out.push(Condition::LargestPart);
        }
        if let Some(e) = c.exact_count_of_max {
            if count(m) != e {
                out.push(Condition::MaxMultiplicity);
            }
        }
    }
    if let Some((v, e)) = c.pinned {
        if count(v) != e {
            out.push(Condition::PinnedMultiplicity);
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

struct Descent<'a, F> {
    c: &'a PartitionConstraint,
    limit: i64,
    exact_sum: bool,
    parts: Vec<i64>,
    edge_used: i64,
    visit: F,
}

impl<F: FnMut(&[i64], i64)> Descent<'_, F> {
    fn complete(&self, sum: i64) -> bool {
        if self.exact_sum && sum != self.limit {
            return false;
        }
        let count = |v: i64| self.parts.iter().filter(|&&p| p == v).count() as i64;
        if let (Some(m), Some(e)) = (self.c.max_part, self.c.exact_count_of_max) {
            if count(m) != e {
                return false;
            }
        }
        if let Some((v, e)) = self.c.pinned {
            if count(v) != e {
                return false;
            }
        }
        true
    }

    fn admissible_next(&self, p: i64) -> bool {
        let c = self.c;
        let n = self.parts.len();
        if c.family == Family::Gga && p % 2 != 0 && self.parts.last() == Some(&p) {
            return false;
        }
        let d = (c.k - 1) as usize;
        if n + 1 > d && !c.gap_ok(self.parts[n - d], p) {
            return false;
        }
        if c.is_edge_part(p) && self.edge_used >= c.k - c.i {
            return false;
        }
        if let Some((v, e)) = c.pinned {
            if p == v && self.parts.iter().filter(|&&x| x == v).count() as i64 >= e {
                return false;
            }
        }
        true
    }

    fn go(&mut self, sum: i64) {
        if self.complete(sum) {
            (self.visit)(&self.parts, sum);
        }
        let top = self
            .parts
            .last()
            .copied()
            .unwrap_or(i64::MAX)
            .min(self.limit - sum);
        let top = self.c.max_part.map_or(top, |m| top.min(m));
        let mut p = top;
        while p >= self.c.min_part() {
            if self.admissible_next(p) {
                let edge = self.c.is_edge_part(p) as i64;
                self.parts.push(p);
                self.edge_used += edge;
                self.go(sum + p);
                self.edge_used -= edge;
                self.parts.pop();
            }
            p -= 1;
        }
    }
}

fn descend(c: &PartitionConstraint, limit: i64, exact_sum: bool, visit: impl FnMut(&[i64], i64)) {
    if limit < 0 {
        return;
    }
    let mut d = Descent {
        c,
        limit,
        exact_sum,
        parts: Vec::new(),
        edge_used: 0,
        visit,
    };
    d.go(0);
}

/// All partitions of `n` in the class, largest-part-first lexicographic order.
pub fn enumerate(c: &PartitionConstraint, n: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    descend(c, n, true, |parts, _| out.push(parts.to_vec()));
    out
}

/// Number of partitions of `n` in the class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PartitionCount {
    pub n: i64,
    pub count: u64,
}

/// Counts for every `n <= order`.
///
/// The admissible continuations of a prefix depend only on its last `k-1`
/// parts and a few tallies, so completions are memoized on that state.
pub fn counts(c: &PartitionConstraint, order: i64) -> Vec<PartitionCount> {
    let mut tally = vec![0u64; (order.max(-1) + 1) as usize];
    if order >= 0 {
        let mut t = Tally {
            c,
            limit: order,
            memo: HashMap::new(),
        };
        let root = t.go(TallyState {
            window: Vec::new(),
            window_sum: 0,
            edge: 0,
            pinned: 0,
            at_max: 0,
        });
        let n = tally.len();
        tally.copy_from_slice(&root[..n]);
    }
    tally
        .into_iter()
        .enumerate()
        .map(|(n, count)| PartitionCount { n: n as i64, count })
        .collect()
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct TallyState {
    /// Last `k-1` parts, oldest first.
    window: Vec<i64>,
    window_sum: i64,
    edge: i64,
    pinned: i64,
    at_max: i64,
}

struct Tally<'a> {
    c: &'a PartitionConstraint,
    limit: i64,
    memo: HashMap<TallyState, Rc<Vec<u64>>>,
}

impl Tally<'_> {
    /// Entry `t` counts completions adding exactly `t`, for `t <= limit - window_sum`.
    fn go(&mut self, st: TallyState) -> Rc<Vec<u64>> {
        if let Some(v) = self.memo.get(&st) {
            return v.clone();
        }
        let c = self.c;
        let budget = self.limit - st.window_sum;
        let mut out = vec![0u64; (budget + 1) as usize];
        let done = c.exact_count_of_max.is_none_or(|e| st.at_max == e)
            && c.pinned.is_none_or(|(_, e)| st.pinned == e);
        if done {
            out[0] = 1;
        }
        let last = st.window.last().copied();
        let mut top = last.unwrap_or(i64::MAX).min(budget);
        if let Some(m) = c.max_part {
            top = top.min(m);
        }
        let d = (c.k - 1) as usize;
        for p in c.min_part()..=top {
            if c.family == Family::Gga && p % 2 != 0 && last == Some(p) {
                continue;
            }
            if st.window.len() == d && !c.gap_ok(st.window[0], p) {
                continue;
            }
            let edge = st.edge + c.is_edge_part(p) as i64;
            if c.is_edge_part(p) && st.edge >= c.k - c.i {
                continue;
            }
            let pinned = st.pinned + c.pinned.is_some_and(|(v, _)| v == p) as i64;
            if c.pinned.is_some_and(|(_, e)| pinned > e) {
                continue;
            }
            let at_max = st.at_max + (c.max_part == Some(p)) as i64;
            let mut window = st.window.clone();
            let mut window_sum = st.window_sum + p;
            window.push(p);
            if window.len() > d {
                window_sum -= window.remove(0);
            }
            let sub = self.go(TallyState {
                window,
                window_sum,
                edge,
                pinned,
                at_max,
            });
            for t in 0..=(budget - p) as usize {
                out[t + p as usize] += sub[t];
            }
        }
        let out = Rc::new(out);
        self.memo.insert(st, out.clone());
        out
    }
}

/// Generating function of the class through `q^order`.
pub fn genfun(c: &PartitionConstraint, order: i64) -> Series {
    let coeffs = counts(c, order)
        .into_iter()
        .map(|pc| BigInt::from(pc.count))
        .collect();
    Series::from_coeffs(0, coeffs, order + 1)
}

/// Class that entry `(i, l)` of `h^(j)` counts: type `(k-1, 2J, k-i)` (gga)
/// or `(k-1, J, k-i)` (gordon) with parts bounded by the shelf-`j` part and
/// that part appearing exactly `l-1` times.
pub fn h_constraint(
    family: Family,
    big_j: i64,
    i: i64,
    j: i64,
    l: i64,
    k: i64,
) -> Result<PartitionConstraint> {
    check_k_i(k, l)?;
    let top = match family {
        Family::Gga => 2 * j,
        Family::Gordon => j,
    };
    Ok(PartitionConstraint::new(family, k, i, big_j)?.with_max(top, l - 1))
}

/// Transfer-matrix entry `h^(j)_{i,l}` against its partition interpretation.
pub fn h_oracle_check(
    big_j: i64,
    i: i64,
    j: i64,
    l: i64,
    k: i64,
    family: Family,
    order: i64,
) -> Result<CheckResult> {
    if j < big_j + 1 {
        return Err(invalid(format!("j = {j} must exceed J = {big_j}")));
    }
    let c = h_constraint(family, big_j, i, j, l, k)?;
    let h = h_matrix(family, big_j, j, k)?;
    Ok(h.entry(i, l)
        .prefix_eq(&genfun(&c, order), order + 1)?
        .with_id("h_oracle")
        .with_param("family", family.as_str())
        .with_param("k", k)
        .with_param("J", big_j)
        .with_param("i", i)
        .with_param("j", j)
        .with_param("l", l)
        .with_param("order", order))
}

/// Comma-separated parts, one partition per line.
pub fn dump(partitions: &[Vec<i64>]) -> String {
    let mut out = String::new();
    for p in partitions {
        let line: Vec<String> = p.iter().map(i64::to_string).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}
