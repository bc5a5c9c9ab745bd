//! Named verification suites over a parameter grid, and their reports.

use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::check::{CheckResult, ParamValue, Status};
use crate::error::{invalid, Error, Result};
use crate::gordon::{
    ehrenpreis_check, gordon_eh_check, gordon_identity_check, gordon_recursion_vs_closed_form,
    gordon_shelf0_check, gordon_shelf0_product, gordon_shelf0_symmetric, gordon_shelves,
    gordon_weak_eh_check, multiplicity_decomposition_check,
};
use crate::matrices::{
    ab_identity_check, closed_form, decomposition_check, g_equals_hinf_check, h_infinity, h_matrix,
    h_nonnegative_check, h_route_check, matrix_recursion_check, unique_denominator_check,
};
use crate::partitions::{enumerate, genfun, h_oracle_check, violations, PartitionConstraint};
use crate::product_forms::{gga_shelf0_altsum, gga_shelf0_product, jtp_check};
use crate::series::Series;
use crate::shelves::{
    closed_form_shelf, edge_match_check, recursion_vs_closed_form, shelves_with, strong_eh_shelf,
    weak_eh_check,
};
use crate::xq::{
    dictionary_check, edge_identity_check, gordon_h_shift_check, gordon_j0_check,
    specialized_recurrence_check,
};
use crate::Family;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Gga,
    Gordon,
    Xq,
    Matrices,
    Partitions,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 6] = ["gga", "gordon", "xq", "matrices", "partitions", "all"];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Gga => "gga",
            Suite::Gordon => "gordon",
            Suite::Xq => "xq",
            Suite::Matrices => "matrices",
            Suite::Partitions => "partitions",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "gga" => Suite::Gga,
            "gordon" => Suite::Gordon,
            "xq" => Suite::Xq,
            "matrices" => Suite::Matrices,
            "partitions" => Suite::Partitions,
            "all" => Suite::All,
            other => return Err(invalid(format!("unknown suite {other:?}"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Format {
    Text,
    Json,
}

impl Format {
    pub fn as_str(self) -> &'static str {
        match self {
            Format::Text => "text",
            Format::Json => "json",
        }
    }
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            other => Err(invalid(format!("unknown format {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteConfig {
    pub suite: Suite,
    pub k_min: i64,
    pub k_max: i64,
    pub order: i64,
    pub j_max: i64,
    pub big_j: Vec<i64>,
    pub format: Format,
    pub parallelism: usize,
    /// Adds `q^e` to the last entry of every recursion-generated gga shelf.
    #[doc(hidden)]
    pub corrupt_recursion: Option<i64>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            suite: Suite::All,
            k_min: 2,
            k_max: 4,
            order: 60,
            j_max: 6,
            big_j: vec![0, 1, 2, 3],
            format: Format::Text,
            parallelism: std::thread::available_parallelism().map_or(1, |n| n.get()),
            corrupt_recursion: None,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if self.k_min < 2 || self.k_max < self.k_min {
            return Err(invalid(format!(
                "need 2 <= k_min <= k_max, got {}..{}",
                self.k_min, self.k_max
            )));
        }
        if self.order < 1 {
            return Err(invalid(format!("order must be >= 1, got {}", self.order)));
        }
        if self.j_max < 0 {
            return Err(invalid(format!("j_max must be >= 0, got {}", self.j_max)));
        }
        if let Some(&j) = self.big_j.iter().find(|&&j| j < 0) {
            return Err(invalid(format!("J values must be >= 0, got {j}")));
        }
        if self.parallelism == 0 {
            return Err(invalid("parallelism must be >= 1"));
        }
        Ok(())
    }

    fn ks(&self) -> impl Iterator<Item = i64> + Clone {
        self.k_min..=self.k_max
    }

    fn echo(&self) -> Value {
        json!({
            "suite": self.suite.as_str(),
            "k_min": self.k_min,
            "k_max": self.k_max,
            "order": self.order,
            "j_max": self.j_max,
            "big_j": self.big_j,
            "format": self.format.as_str(),
            "parallelism": self.parallelism,
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub error: usize,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub config: SuiteConfig,
    pub results: Vec<CheckResult>,
    pub summary: Summary,
    pub exit_code: i32,
}

impl Report {
    pub fn to_json(&self) -> Value {
        let results: Vec<Value> = self
            .results
            .iter()
            .map(|r| {
                let params: Map<String, Value> = r
                    .params
                    .iter()
                    .map(|(k, v)| {
                        let v = match v {
                            ParamValue::Int(n) => json!(n),
                            ParamValue::Text(s) => json!(s),
                        };
                        (k.clone(), v)
                    })
                    .collect();
                let disc = match &r.first_discrepancy {
                    Some(d) => json!({
                        "exponent": d.exponent,
                        "lhs": d.lhs.to_string(),
                        "rhs": d.rhs.to_string(),
                    }),
                    None => Value::Null,
                };
                json!({
                    "id": r.id,
                    "params": params,
                    "status": r.status.as_str(),
                    "first_discrepancy": disc,
                })
            })
            .collect();
        json!({
            "config": self.config.echo(),
            "results": results,
            "summary": {
                "pass": self.summary.pass,
                "fail": self.summary.fail,
                "error": self.summary.error,
            },
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            let _ = writeln!(out, "{r}");
        }
        let _ = writeln!(
            out,
            "summary: pass={} fail={} error={}",
            self.summary.pass, self.summary.fail, self.summary.error
        );
        out
    }

    /// The report in the configured format.
    pub fn render(&self) -> String {
        match self.config.format {
            Format::Text => self.to_text(),
            Format::Json => {
                let mut s =
                    serde_json::to_string_pretty(&self.to_json()).expect("json values serialize");
                s.push('\n');
                s
            }
        }
    }
}

type Task = Box<dyn Fn() -> Vec<CheckResult> + Send + Sync>;

fn one(id: &'static str, f: impl Fn() -> Result<CheckResult> + Send + Sync + 'static) -> Task {
    Box::new(move || vec![CheckResult::from_outcome(id, f())])
}

fn many(
    id: &'static str,
    k: i64,
    f: impl Fn() -> Result<Vec<CheckResult>> + Send + Sync + 'static,
) -> Task {
    Box::new(move || match f() {
        Ok(v) => v,
        Err(e) => vec![CheckResult::error(id, &e).with_param("k", k)],
    })
}

fn gga_tasks(cfg: &SuiteConfig, out: &mut Vec<Task>) {
    let (order, j_max, corrupt) = (cfg.order, cfg.j_max, cfg.corrupt_recursion);
    for k in cfg.ks() {
        for i in 1..=k {
            out.push(one("gga_identity", move || {
                let c = PartitionConstraint::new(Family::Gga, k, i, 0)?;
                let prod = gga_shelf0_product(k, i, order)?;
                Ok(prod
                    .prefix_eq(&genfun(&c, order), order + 1)?
                    .with_id("gga_identity"))
            }));
            out.push(one("jtp", move || jtp_check(k, i, order)));
            out.push(one("shelf0_altsum", move || {
                let a = gga_shelf0_altsum(k, i, order)?;
                Ok(a.prefix_eq(&gga_shelf0_product(k, i, order)?, order + 1)?
                    .with_id("shelf0_altsum"))
            }));
        }
        out.push(many("recursion_closed_form", k, move || {
            let shelves = shelves_with(k, j_max, order, corrupt)?;
            recursion_vs_closed_form(&shelves, order)
        }));
        for j in 0..=j_max {
            out.push(one("edge_match", move || edge_match_check(k, j, order)));
            out.push(one("strong_eh", move || {
                strong_eh_shelf(&closed_form_shelf(k, j, order.max(2 * j + 4))?)
            }));
        }
        out.push(one("weak_eh", move || {
            let shelves = (0..=j_max)
                .map(|j| closed_form_shelf(k, j, order))
                .collect::<Result<Vec<_>>>()?;
            weak_eh_check(&shelves)
        }));
        out.push(one("unique_denominator", move || {
            unique_denominator_check(k, order)
        }));
    }
}

/// Last shelf the h machinery is run to for starting shelf `J`.
fn j_end(cfg: &SuiteConfig, big_j: i64) -> i64 {
    cfg.j_max.max(big_j + 1)
}

fn matrix_tasks(cfg: &SuiteConfig, family: Family, out: &mut Vec<Task>) {
    let order = cfg.order;
    for k in cfg.ks() {
        for j in 1..=cfg.j_max {
            out.push(one("ab_identity", move || ab_identity_check(family, j, k)));
            out.push(one("matrix_recursion", move || {
                matrix_recursion_check(family, k, j, order)
            }));
        }
        for &big_j in &cfg.big_j {
            let end = j_end(cfg, big_j);
            out.push(one("h_route", move || h_route_check(family, big_j, end, k)));
            out.push(one("h_nonnegative", move || {
                h_nonnegative_check(family, big_j, end, k)
            }));
            for i in 1..=k {
                out.push(one("g_equals_hinf", move || {
                    g_equals_hinf_check(big_j, i, k, family, order)
                }));
                for j in big_j..=end {
                    out.push(one("decomposition", move || {
                        decomposition_check(family, big_j, i, j, k, order)
                    }));
                }
            }
        }
    }
}

fn oracle_tasks(cfg: &SuiteConfig, family: Family, out: &mut Vec<Task>) {
    let order = cfg.order;
    for k in cfg.ks() {
        for &big_j in &cfg.big_j {
            for i in 1..=k {
                for j in big_j + 1..=big_j + 4 {
                    for l in 1..=k {
                        out.push(one("h_oracle", move || {
                            h_oracle_check(big_j, i, j, l, k, family, order)
                        }));
                        out.push(one("multiplicity_decomposition", move || {
                            multiplicity_decomposition_check(family, big_j, i, j, l, k, order)
                        }));
                    }
                }
            }
        }
    }
}

fn partition_tasks(cfg: &SuiteConfig, out: &mut Vec<Task>) {
    oracle_tasks(cfg, Family::Gga, out);
    let order = cfg.order;
    for k in cfg.ks() {
        for &big_j in &cfg.big_j {
            for i in 1..=k {
                out.push(one("gga_j_identity", move || {
                    let c = PartitionConstraint::new(Family::Gga, k, i, big_j)?;
                    let g = closed_form(Family::Gga, k, big_j, i, order)?;
                    Ok(g.prefix_eq(&genfun(&c, order), order + 1)?
                        .with_id("gga_j_identity")
                        .with_param("J", big_j))
                }));
                for family in [Family::Gga, Family::Gordon] {
                    out.push(one("enumeration_sound", move || {
                        let c = PartitionConstraint::new(family, k, i, big_j)?;
                        let mut emitted = 0i64;
                        for n in 0..=order.min(30) {
                            for p in enumerate(&c, n) {
                                emitted += 1;
                                if let Some(v) = violations(&c, &p).first() {
                                    return Ok(CheckResult::error(
                                        "enumeration_sound",
                                        &invalid(format!("{p:?}: {v}")),
                                    ));
                                }
                            }
                        }
                        let total: i64 = genfun(&c, order.min(30))
                            .coeffs()
                            .iter()
                            .map(|x| i64::try_from(x).unwrap_or(0))
                            .sum();
                        if total != emitted {
                            return Ok(CheckResult::error(
                                "enumeration_sound",
                                &invalid("genfun and enumerate disagree"),
                            ));
                        }
                        Ok(CheckResult::pass("enumeration_sound")
                            .with_param("family", family.as_str())
                            .with_param("J", big_j))
                    }));
                }
            }
        }
    }
}

fn gordon_tasks(cfg: &SuiteConfig, out: &mut Vec<Task>) {
    let (order, j_max) = (cfg.order, cfg.j_max);
    for k in cfg.ks() {
        for i in 1..=k {
            out.push(one("gordon_shelf0", move || {
                gordon_shelf0_check(k, i, order)
            }));
            for j in 0..=j_max {
                out.push(one("gordon_eh", move || {
                    gordon_eh_check(crate::shelves::ShelfIndex::new(k, j, i)?, order)
                }));
            }
            for &big_j in &cfg.big_j {
                out.push(one("gordon_identity", move || {
                    gordon_identity_check(big_j, i, k, order)
                }));
            }
        }
        out.push(many("gordon_recursion_closed_form", k, move || {
            gordon_recursion_vs_closed_form(&gordon_shelves(k, j_max, order)?, order)
        }));
        out.push(one("gordon_weak_eh", move || {
            gordon_weak_eh_check(&gordon_shelves(k, j_max, order)?)
        }));
        out.push(one("ehrenpreis", move || ehrenpreis_check(k, order)));
    }
    matrix_tasks(cfg, Family::Gordon, out);
    oracle_tasks(cfg, Family::Gordon, out);
}

fn xq_tasks(cfg: &SuiteConfig, out: &mut Vec<Task>) {
    let order = cfg.order;
    for k in cfg.ks() {
        for j in 0..=cfg.j_max {
            for family in [Family::Gga, Family::Gordon] {
                out.push(one("xq_edge", move || {
                    edge_identity_check(family, k, j, order)
                }));
                for i in 1..=k {
                    out.push(one("dictionary", move || {
                        dictionary_check(family, k, j, i, order)
                    }));
                    if family == Family::Gordon || i >= 2 {
                        out.push(one("j_recurrence", move || {
                            specialized_recurrence_check(family, k, j, i, order)
                        }));
                    }
                }
            }
            out.push(one("gordon_j0", move || gordon_j0_check(k, j, order)));
            for i in 0..=k + 1 {
                out.push(one("gordon_h_shift", move || {
                    gordon_h_shift_check(k, j, i, order)
                }));
            }
        }
    }
}

fn tasks(cfg: &SuiteConfig) -> Vec<Task> {
    let mut out = Vec::new();
    let s = cfg.suite;
    if matches!(s, Suite::Gga | Suite::All) {
        gga_tasks(cfg, &mut out);
    }
    if matches!(s, Suite::Matrices | Suite::All) {
        matrix_tasks(cfg, Family::Gga, &mut out);
    }
    if matches!(s, Suite::Partitions | Suite::All) {
        partition_tasks(cfg, &mut out);
    }
    if matches!(s, Suite::Gordon | Suite::All) {
        gordon_tasks(cfg, &mut out);
    }
    if matches!(s, Suite::Xq | Suite::All) {
        xq_tasks(cfg, &mut out);
    }
    out
}

/// Runs every check of the configured suite. Results are sorted by id, then parameters.
pub fn run_suite(config: &SuiteConfig) -> Result<Report> {
    config.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.parallelism)
        .build()
        .map_err(|e| invalid(format!("thread pool: {e}")))?;
    let work = tasks(config);
    let mut results: Vec<CheckResult> = pool.install(|| {
        work.par_iter()
            .flat_map_iter(|task| {
                let start = Instant::now();
                let mut rs = task();
                let per = start.elapsed() / rs.len().max(1) as u32;
                for r in &mut rs {
                    r.elapsed = per;
                }
                rs
            })
            .collect()
    });
    results.sort_by(|a, b| (&a.id, &a.params).cmp(&(&b.id, &b.params)));
    let mut summary = Summary::default();
    for r in &results {
        match r.status {
            Status::Pass => summary.pass += 1,
            Status::Fail => summary.fail += 1,
            Status::Error => summary.error += 1,
        }
    }
    let exit_code = if summary.fail + summary.error == 0 {
        0
    } else {
        1
    };
    Ok(Report {
        config: config.clone(),
        results,
        summary,
        exit_code,
    })
}

/// Objects [`emit_series`] can write.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesObject {
    Product,
    Altsum,
    ClosedForm,
    H1Infinity,
    Genfun,
    HPoly,
}

impl SeriesObject {
    pub const NAMES: [&'static str; 6] = [
        "product",
        "altsum",
        "closed-form",
        "h1-infinity",
        "genfun",
        "h-poly",
    ];
}

impl FromStr for SeriesObject {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "product" => SeriesObject::Product,
            "altsum" => SeriesObject::Altsum,
            "closed-form" => SeriesObject::ClosedForm,
            "h1-infinity" => SeriesObject::H1Infinity,
            "genfun" => SeriesObject::Genfun,
            "h-poly" => SeriesObject::HPoly,
            other => return Err(invalid(format!("unknown object {other:?}"))),
        })
    }
}

/// Parameters naming one object; unused fields are ignored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesParams {
    pub family: Family,
    pub k: i64,
    pub i: i64,
    pub j: i64,
    pub big_j: i64,
    /// With `genfun`: restrict to the class counted by `h^(j)_{i,l}`.
    pub l: Option<i64>,
}

impl Default for SeriesParams {
    fn default() -> Self {
        SeriesParams {
            family: Family::Gga,
            k: 2,
            i: 1,
            j: 0,
            big_j: 0,
            l: None,
        }
    }
}

/// Text dump of the named object through `q^order`.
pub fn emit_series(what: SeriesObject, p: &SeriesParams, order: i64) -> Result<String> {
    let series = |s: Series| Ok(s.dump());
    match what {
        SeriesObject::Product => series(match p.family {
            Family::Gga => gga_shelf0_product(p.k, p.i, order)?,
            Family::Gordon => gordon_shelf0_product(p.k, p.i, order)?,
        }),
        SeriesObject::Altsum => series(match p.family {
            Family::Gga => gga_shelf0_altsum(p.k, p.i, order)?,
            Family::Gordon => gordon_shelf0_symmetric(p.k, p.i, order)?,
        }),
        SeriesObject::ClosedForm => series(closed_form(p.family, p.k, p.j, p.i, order)?),
        SeriesObject::H1Infinity => series(h_infinity(p.big_j, p.i, p.k, p.family, order)?),
        SeriesObject::Genfun => {
            let c = match p.l {
                Some(l) => crate::partitions::h_constraint(p.family, p.big_j, p.i, p.j, l, p.k)?,
                None => PartitionConstraint::new(p.family, p.k, p.i, p.big_j)?,
            };
            series(genfun(&c, order))
        }
        SeriesObject::HPoly => {
            let h = h_matrix(p.family, p.big_j, p.j, p.k)?;
            let mut out = String::new();
            for ((r, c), s) in h.matrix.entries() {
                let _ = writeln!(out, "# entry {r} {c}: {s}");
                out.push_str(&s.dump());
            }
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(suite: Suite) -> SuiteConfig {
        SuiteConfig {
            suite,
            k_min: 2,
            k_max: 3,
            order: 20,
            j_max: 2,
            big_j: vec![0, 1],
            parallelism: 2,
            ..SuiteConfig::default()
        }
    }

    #[test]
    fn small_suites_pass() {
        for suite in [
            Suite::Gga,
            Suite::Gordon,
            Suite::Xq,
            Suite::Matrices,
            Suite::Partitions,
        ] {
            let report = run_suite(&small(suite)).unwrap();
            for r in &report.results {
                assert!(r.is_pass(), "{r}");
            }
            assert!(!report.results.is_empty());
            assert_eq!(report.exit_code, 0);
        }
    }

    #[test]
    fn degenerate_order_passes() {
        let cfg = SuiteConfig {
            order: 1,
            ..small(Suite::All)
        };
        let report = run_suite(&cfg).unwrap();
        assert_eq!(report.exit_code, 0, "{}", report.to_text());
    }

    #[test]
    fn corruption_is_reported() {
        let cfg = SuiteConfig {
            corrupt_recursion: Some(8),
            ..small(Suite::Gga)
        };
        let report = run_suite(&cfg).unwrap();
        assert_eq!(report.exit_code, 1);
        let failed: Vec<_> = report
            .results
            .iter()
            .filter(|r| r.status == Status::Fail)
            .collect();
        assert!(!failed.is_empty());
        assert!(failed.iter().all(|r| r.first_discrepancy.is_some()));
    }

    #[test]
    fn deterministic_json() {
        let a = run_suite(&SuiteConfig {
            parallelism: 1,
            ..small(Suite::Xq)
        })
        .unwrap();
        let b = run_suite(&SuiteConfig {
            parallelism: 1,
            ..small(Suite::Xq)
        })
        .unwrap();
        assert_eq!(a.render(), b.render());
        let v = a.to_json();
        let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        assert_eq!(keys, vec!["config", "results", "summary"]);
        let first = &v["results"][0];
        let mut keys: Vec<_> = first.as_object().unwrap().keys().cloned().collect();
        keys.sort();
        assert_eq!(keys, vec!["first_discrepancy", "id", "params", "status"]);
    }

    #[test]
    fn invalid_config() {
        assert!(run_suite(&SuiteConfig {
            k_min: 1,
            ..SuiteConfig::default()
        })
        .is_err());
        assert!(run_suite(&SuiteConfig {
            order: 0,
            ..SuiteConfig::default()
        })
        .is_err());
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn emit_examples() {
        let p = SeriesParams::default();
        let dump = emit_series(SeriesObject::Product, &p, 8).unwrap();
        assert_eq!(
            Series::parse_dump(&dump).unwrap(),
            gga_shelf0_product(2, 1, 8).unwrap()
        );
        let h = emit_series(SeriesObject::HPoly, &SeriesParams { j: 1, ..p.clone() }, 8).unwrap();
        assert!(h.contains("# entry 1 1: 1 + q"));
        assert!(h.contains("# entry 1 2: q^2"));
        let g = emit_series(SeriesObject::Genfun, &p, 0).unwrap();
        assert_eq!(Series::parse_dump(&g).unwrap(), Series::one(1));
        assert!("bogus".parse::<SeriesObject>().is_err());
    }
}
