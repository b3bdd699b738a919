//! Verification harness: sweeps parameter grids, compares every closed form
//! against the exact dynamic program, and assembles a deterministic report.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::closed_forms::{self as cf, ExpectedStatus, FormulaEntry};
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::harmonic::{nested_sum_dp, IndexVector, RootSums, SumScalar};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Seed for the pseudo-random index vectors of the conjugation suite.
pub const SEED: u64 = 0x71_6873_2d63_6f6e;

/// Number of seeded index vectors in the conjugation suite.
pub const CONJUGATION_CASES: usize = 200;

/// Largest exponent used in seeded index vectors.
pub const CONJUGATION_MAX_ENTRY: u32 = 4;

/// Tolerance of the floating-point advisory checks.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Table,
    Determinant,
    Degber,
    Degberpoly,
    Genfunc,
    Theorem1,
    Theorem2,
    Theorem4,
    Recurrences,
    Conjugation,
    Bik,
    Catalog,
    All,
}

impl Suite {
    pub const INDIVIDUAL: [Suite; 12] = [
        Suite::Table,
        Suite::Determinant,
        Suite::Degber,
        Suite::Degberpoly,
        Suite::Genfunc,
        Suite::Theorem1,
        Suite::Theorem2,
        Suite::Theorem4,
        Suite::Recurrences,
        Suite::Conjugation,
        Suite::Bik,
        Suite::Catalog,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Table => "table",
            Suite::Determinant => "determinant",
            Suite::Degber => "degber",
            Suite::Degberpoly => "degberpoly",
            Suite::Genfunc => "genfunc",
            Suite::Theorem1 => "theorem1",
            Suite::Theorem2 => "theorem2",
            Suite::Theorem4 => "theorem4",
            Suite::Recurrences => "recurrences",
            Suite::Conjugation => "conjugation",
            Suite::Bik => "bik",
            Suite::Catalog => "catalog",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::INDIVIDUAL
            .iter()
            .chain([Suite::All].iter())
            .find(|x| x.name() == s)
            .copied()
            .ok_or_else(|| Error::InvalidParameter(format!("unknown suite {s:?}")))
    }
}

/// Inclusive grid bounds. Lower bounds are fixed: `n ≥ 2`, `m ≥ 1`,
/// `A ≥ 1` (or the smallest value a suite admits), `s ≥ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grid {
    pub max_n: u32,
    pub max_m: u32,
    #[serde(rename = "max_A")]
    pub max_a: u32,
    pub max_s: u32,
}

impl Default for Grid {
    fn default() -> Self {
        Grid { max_n: 12, max_m: 4, max_a: 6, max_s: 8 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
    #[serde(rename = "expected-mismatch")]
    ExpectedMismatch,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::ExpectedMismatch => "expected-mismatch",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseRecord {
    pub params: Map<String, Value>,
    pub lhs: String,
    pub rhs: String,
    pub verdict: Verdict,
}

impl CaseRecord {
    /// The `check` parameter naming the identity under test.
    pub fn check(&self) -> &str {
        self.params.get("check").and_then(Value::as_str).unwrap_or("")
    }

    pub fn param(&self, key: &str) -> Option<i64> {
        self.params.get(key).and_then(Value::as_i64)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub expected_mismatch: usize,
}

/// Floating-point sanity checks; never part of any verdict.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Advisory {
    pub float_checks: usize,
    pub max_relative_error: f64,
    pub tolerance: f64,
    pub within_tolerance: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub grid: Grid,
    pub cases: Vec<CaseRecord>,
    pub summary: Summary,
    pub duration_ms: u64,
    pub version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub advisory: Option<Advisory>,
}

impl VerificationReport {
    /// True iff no case has an unexpected verdict.
    pub fn all_expected(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseRecord> {
        self.cases.iter().filter(|c| c.verdict == Verdict::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    /// One row per case: `check,params,lhs,rhs,verdict`, with `params` as
    /// compact JSON.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["check", "params", "lhs", "rhs", "verdict"]).expect("in-memory write");
        for c in &self.cases {
            let params = serde_json::to_string(&c.params).expect("params serialize");
            w.write_record([c.check(), &params, &c.lhs, &c.rhs, &c.verdict.to_string()])
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "suite {} (max-n {}, max-m {}, max-A {}, max-s {}): {} pass, {} fail, {} expected-mismatch in {} ms\n",
            self.suite,
            self.grid.max_n,
            self.grid.max_m,
            self.grid.max_a,
            self.grid.max_s,
            self.summary.pass,
            self.summary.fail,
            self.summary.expected_mismatch,
            self.duration_ms
        );
        for c in self.cases.iter().filter(|c| c.verdict != Verdict::Pass) {
            let params = serde_json::to_string(&c.params).expect("params serialize");
            out.push_str(&format!("  {:<17} {params}\n      lhs = {}\n      rhs = {}\n", c.verdict.to_string(), c.lhs, c.rhs));
        }
        if let Some(a) = &self.advisory {
            out.push_str(&format!(
                "  advisory: {} float checks, max relative error {:.3e} (tolerance {:.0e})\n",
                a.float_checks, a.max_relative_error, a.tolerance
            ));
        }
        out
    }
}

/// One grid point of one identity.
#[derive(Clone, Debug)]
enum Task {
    Table { n: u32, s: u32 },
    Determinant { n: u32, s: u32 },
    Degber { n: u32, s: u32 },
    DegberPoly { n: u32, s: u32 },
    Genfunc { n: u32, s: u32 },
    OnesPolynomial { n: u32, a: u32, m: u32 },
    OnesDegber { n: u32, a: u32, m: u32 },
    OnesDegberVsPolynomial { n: u32, a: u32, m: u32 },
    TwosDegber { n: u32, a: u32, m: u32 },
    OnesRecurrence { n: u32, a: u32, m: u32 },
    TwosRecurrence { n: u32, a: u32, m: u32 },
    Conjugation { n: u32, s: IndexVector },
    RealPart { n: u32, m: u32, j: u32 },
    Display { entry: usize, n: u32, m: u32 },
}

fn tasks_for(suite: Suite, grid: &Grid) -> Vec<Task> {
    let ns = 2..=grid.max_n;
    let ms = 1..=grid.max_m;
    let mut out = Vec::new();
    let single = |out: &mut Vec<Task>, make: fn(u32, u32) -> Task, max_s: u32| {
        for n in 2..=grid.max_n {
            for s in 1..=max_s {
                out.push(make(n, s));
            }
        }
    };
    match suite {
        Suite::Table => single(&mut out, |n, s| Task::Table { n, s }, grid.max_s.min(9)),
        Suite::Determinant => single(&mut out, |n, s| Task::Determinant { n, s }, grid.max_s),
        Suite::Degber => single(&mut out, |n, s| Task::Degber { n, s }, grid.max_s),
        Suite::Degberpoly => single(&mut out, |n, s| Task::DegberPoly { n, s }, grid.max_s),
        Suite::Genfunc => {
            for n in ns {
                for s in 0..=grid.max_s {
                    out.push(Task::Genfunc { n, s });
                }
            }
        }
        Suite::Theorem1 => {
            for a in 2..=grid.max_a.min(5) {
                for n in ns.clone() {
                    for m in ms.clone() {
                        out.push(Task::OnesPolynomial { n, a, m });
                    }
                }
            }
        }
        Suite::Theorem2 => {
            for a in 2..=grid.max_a {
                for n in ns.clone() {
                    for m in ms.clone() {
                        out.push(Task::OnesDegber { n, a, m });
                        if a <= 5 {
                            out.push(Task::OnesDegberVsPolynomial { n, a, m });
                        }
                    }
                }
            }
        }
        Suite::Theorem4 => {
            for a in 1..=grid.max_a {
                for n in ns.clone() {
                    for m in ms.clone() {
                        out.push(Task::TwosDegber { n, a, m });
                    }
                }
            }
        }
        Suite::Recurrences => {
            for a in 2..=grid.max_a {
                for n in ns.clone() {
                    for m in ms.clone() {
                        out.push(Task::OnesRecurrence { n, a, m });
                        out.push(Task::TwosRecurrence { n, a, m });
                    }
                }
            }
        }
        Suite::Conjugation => {
            if grid.max_n >= 2 && grid.max_m >= 1 {
                let mut rng = ChaCha8Rng::seed_from_u64(SEED);
                for _ in 0..CONJUGATION_CASES {
                    let n = rng.random_range(2..=grid.max_n);
                    let m = rng.random_range(1..=grid.max_m);
                    let s: Vec<u32> = (0..m).map(|_| rng.random_range(1..=CONJUGATION_MAX_ENTRY)).collect();
                    out.push(Task::Conjugation { n, s: IndexVector::new(s).expect("entries >= 1") });
                }
            }
        }
        Suite::Bik => {
            for n in ns {
                for m in ms.clone() {
                    for j in 1..=m {
                        out.push(Task::RealPart { n, m, j });
                    }
                }
            }
        }
        Suite::Catalog => {
            for (idx, e) in cf::literal_display_catalog().iter().enumerate() {
                for n in ns.clone() {
                    for m in ms.clone() {
                        if e.domain.contains(n as i64, m as i64) {
                            out.push(Task::Display { entry: idx, n, m });
                        }
                    }
                }
            }
        }
        Suite::All => {
            for s in Suite::INDIVIDUAL {
                out.extend(tasks_for(s, grid));
            }
        }
    }
    out
}

struct Context {
    sums: HashMap<u32, Arc<RootSums>>,
    catalog: Vec<FormulaEntry>,
    genfunc: HashMap<u32, Vec<Rational>>,
}

impl Context {
    fn new(grid: &Grid, tasks: &[Task]) -> Result<Self> {
        let sums = (2..=grid.max_n.max(2))
            .map(|n| Ok((n, Arc::new(RootSums::new(n)?))))
            .collect::<Result<HashMap<_, _>>>()?;
        let mut genfunc = HashMap::new();
        if tasks.iter().any(|t| matches!(t, Task::Genfunc { .. })) {
            for n in 2..=grid.max_n {
                genfunc.insert(n, cf::single_index_genfunc(n as i64, grid.max_s as usize)?);
            }
        }
        Ok(Context { sums, catalog: cf::literal_display_catalog(), genfunc })
    }

    fn sums(&self, n: u32) -> &RootSums {
        &self.sums[&n]
    }
}

fn params(check: &str, kv: &[(&str, i64)]) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("check".into(), Value::from(check));
    for (k, v) in kv {
        m.insert((*k).into(), Value::from(*v));
    }
    m
}

fn exact_case(params: Map<String, Value>, lhs: Rational, rhs: Rational) -> CaseRecord {
    let verdict = if lhs == rhs { Verdict::Pass } else { Verdict::Fail };
    CaseRecord { params, lhs: lhs.to_string(), rhs: rhs.to_string(), verdict }
}

fn run_task(task: &Task, ctx: &Context) -> Result<CaseRecord> {
    Ok(match *task {
        Task::Table { n, s } => exact_case(
            params("single_table", &[("n", n as i64), ("s", s as i64)]),
            ctx.sums(n).single(s)?,
            cf::single_index_table(n as i64, s)?,
        ),
        Task::Determinant { n, s } => exact_case(
            params("single_determinant", &[("n", n as i64), ("s", s as i64)]),
            ctx.sums(n).single(s)?,
            cf::single_index_determinant(n as i64, s)?,
        ),
        Task::Degber { n, s } => exact_case(
            params("single_degber", &[("n", n as i64), ("s", s as i64)]),
            ctx.sums(n).single(s)?,
            cf::single_index_degber(n as i64, s)?,
        ),
        Task::DegberPoly { n, s } => exact_case(
            params("single_degber_poly", &[("n", n as i64), ("s", s as i64)]),
            ctx.sums(n).single(s)?,
            cf::single_index_degber_poly(n as i64, s)?,
        ),
        Task::Genfunc { n, s } => {
            let exact = if s == 0 { Rational::from(n - 1) } else { ctx.sums(n).single(s)? };
            exact_case(
                params("single_genfunc", &[("n", n as i64), ("s", s as i64)]),
                exact,
                ctx.genfunc[&n][s as usize].clone(),
            )
        }
        Task::OnesPolynomial { n, a, m } => exact_case(
            params("ones_polynomial", &[("n", n as i64), ("A", a as i64), ("m", m as i64)]),
            ctx.sums(n).cyclic_sum_ones(a, m as usize)?,
            cf::cyclic_ones_polynomial(n as i64, a, m as i64)?,
        ),
        Task::OnesDegber { n, a, m } => exact_case(
            params("ones_degber", &[("n", n as i64), ("A", a as i64), ("m", m as i64)]),
            ctx.sums(n).cyclic_sum_ones(a, m as usize)?,
            cf::cyclic_ones_degber(n as i64, a, m as i64)?,
        ),
        Task::OnesDegberVsPolynomial { n, a, m } => exact_case(
            params("ones_degber_vs_polynomial", &[("n", n as i64), ("A", a as i64), ("m", m as i64)]),
            cf::cyclic_ones_polynomial(n as i64, a, m as i64)?,
            cf::cyclic_ones_degber(n as i64, a, m as i64)?,
        ),
        Task::TwosDegber { n, a, m } => exact_case(
            params("twos_degber", &[("n", n as i64), ("A", a as i64), ("m", m as i64)]),
            ctx.sums(n).cyclic_sum_twos(a, m as usize)?,
            cf::cyclic_twos_degber(n as i64, a, m as i64)?,
        ),
        Task::OnesRecurrence { n, a, m } => {
            let r = ctx.sums(n).check_ones_recurrence(a, m as usize)?;
            exact_case(
                params("ones_recurrence", &[("n", n as i64), ("A", a as i64), ("m", m as i64)]),
                r.lhs,
                r.rhs,
            )
        }
        Task::TwosRecurrence { n, a, m } => {
            let r = ctx.sums(n).check_twos_recurrence(a, m as usize)?;
            exact_case(
                params("twos_recurrence", &[("n", n as i64), ("A", a as i64), ("m", m as i64)]),
                r.lhs,
                r.rhs,
            )
        }
        Task::Conjugation { n, ref s } => {
            let sums = ctx.sums(n);
            let lhs = sums.dp(s).conjugate();
            let rhs = sums.dp(&s.reversed());
            let mut p = params("conjugate_reversal", &[("n", n as i64)]);
            p.insert("indices".into(), Value::from(s.as_slice().to_vec()));
            let verdict = if lhs == rhs { Verdict::Pass } else { Verdict::Fail };
            CaseRecord { params: p, lhs: lhs.to_string(), rhs: rhs.to_string(), verdict }
        }
        Task::RealPart { n, m, j } => {
            let p = ctx.sums(n).pattern_sum_ones(2, m as usize, j as usize)?;
            exact_case(
                params("ones_two_real_part", &[("n", n as i64), ("m", m as i64), ("j", j as i64)]),
                p.twice_real_part().rational_part()?,
                cf::ones_two_real_part(n as i64, m as i64)? * Rational::from(2),
            )
        }
        Task::Display { entry, n, m } => {
            let e = &ctx.catalog[entry];
            let exact = ctx.sums(n).cyclic_sum_twos(e.a, m as usize)?;
            let display = e.evaluate(n as i64, m as i64)?;
            let is_witness = e.witnesses.contains(&(n as i64, m as i64));
            let verdict = match (e.status, exact == display) {
                (ExpectedStatus::Verified, true) => Verdict::Pass,
                (ExpectedStatus::Verified, false) => Verdict::Fail,
                (ExpectedStatus::SuspectedTypo, false) => Verdict::ExpectedMismatch,
                (ExpectedStatus::SuspectedTypo, true) if is_witness => Verdict::Fail,
                (ExpectedStatus::SuspectedTypo, true) => Verdict::Pass,
            };
            let mut p = params("display", &[("n", n as i64), ("A", e.a as i64), ("m", m as i64)]);
            p.insert("id".into(), Value::from(e.id));
            CaseRecord { params: p, lhs: exact.to_string(), rhs: display.to_string(), verdict }
        }
    })
}

impl SumScalar for Complex64 {
    fn add_in_place(&mut self, other: &Self) {
        *self += other;
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
}

fn relative_error(approx: Complex64, reference: Complex64) -> f64 {
    (approx - reference).norm() / reference.norm().max(1.0)
}

/// Compares the float embedding of exact values against an independent
/// double-precision evaluation: every `u_r` against `1/2 + (i/2)cot(rπ/n)`,
/// and each conjugation-suite sum against a complex-valued DP.
fn float_advisory(tasks: &[Task], ctx: &Context) -> Advisory {
    let mut worst = 0.0f64;
    let mut count = 0usize;
    let mut ns: Vec<u32> = ctx.sums.keys().copied().collect();
    ns.sort_unstable();
    for &n in &ns {
        for (r, u) in ctx.sums(n).units().iter().enumerate() {
            let angle = (r + 1) as f64 * std::f64::consts::PI / n as f64;
            let direct = Complex64::new(0.5, 0.5 / angle.tan());
            worst = worst.max(relative_error(u.to_complex(), direct));
            count += 1;
        }
    }
    for t in tasks {
        if let Task::Conjugation { n, s } = t {
            let nf = *n as f64;
            let weights: Vec<Complex64> = (1..*n)
                .map(|r| {
                    let z = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * r as f64 / nf);
                    (Complex64::new(1.0, 0.0) - z).inv()
                })
                .collect();
            let one = Complex64::new(1.0, 0.0);
            let mut powers = HashMap::new();
            for &e in s.as_slice() {
                powers.insert(e, weights.iter().map(|w| w.powu(e)).collect::<Vec<_>>());
            }
            let direct = nested_sum_dp(&powers, weights.len(), s.as_slice(), &Complex64::new(0.0, 0.0), &one);
            let exact = if s.len() > weights.len() { ctx.sums(*n).field().zero() } else { ctx.sums(*n).dp(s) };
            worst = worst.max(relative_error(exact.to_complex(), direct));
            count += 1;
        }
    }
    Advisory {
        float_checks: count,
        max_relative_error: worst,
        tolerance: FLOAT_TOLERANCE,
        within_tolerance: worst <= FLOAT_TOLERANCE,
    }
}

/// Runs `suite` over `grid` on the current rayon pool. Case order depends
/// only on the grid, never on scheduling.
pub fn run_suite(suite: Suite, grid: &Grid) -> Result<VerificationReport> {
    let start = Instant::now();
    let tasks = tasks_for(suite, grid);
    let ctx = Context::new(grid, &tasks)?;
    let cases = tasks
        .par_iter()
        .map(|t| run_task(t, &ctx))
        .collect::<Result<Vec<_>>>()?;
    let mut summary = Summary::default();
    for c in &cases {
        match c.verdict {
            Verdict::Pass => summary.pass += 1,
            Verdict::Fail => summary.fail += 1,
            Verdict::ExpectedMismatch => summary.expected_mismatch += 1,
        }
    }
    let advisory = matches!(suite, Suite::Conjugation | Suite::All).then(|| float_advisory(&tasks, &ctx));
    Ok(VerificationReport {
        suite: suite.name().to_string(),
        grid: *grid,
        cases,
        summary,
        duration_ms: start.elapsed().as_millis() as u64,
        version: VERSION.to_string(),
        advisory,
    })
}

/// [`run_suite`] on a dedicated pool of `jobs` worker threads.
pub fn run_suite_with_jobs(suite: Suite, grid: &Grid, jobs: usize) -> Result<VerificationReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    pool.install(|| run_suite(suite, grid))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::INDIVIDUAL.iter().chain([Suite::All].iter()) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), *s);
        }
        assert!("theorem3".parse::<Suite>().is_err());
    }

    #[test]
    fn table_grid_size() {
        let grid = Grid { max_n: 20, ..Grid::default() };
        assert_eq!(tasks_for(Suite::Table, &grid).len(), 152);
        let grid = Grid { max_n: 20, max_s: 12, ..Grid::default() };
        assert_eq!(tasks_for(Suite::Table, &grid).len(), 19 * 9);
    }

    #[test]
    fn conjugation_cases_are_seeded() {
        let grid = Grid::default();
        let a: Vec<String> = tasks_for(Suite::Conjugation, &grid).iter().map(|t| format!("{t:?}")).collect();
        let b: Vec<String> = tasks_for(Suite::Conjugation, &grid).iter().map(|t| format!("{t:?}")).collect();
        assert_eq!(a.len(), CONJUGATION_CASES);
        assert_eq!(a, b);
    }

    #[test]
    fn degenerate_grid_n2() {
        let grid = Grid { max_n: 2, ..Grid::default() };
        let r = run_suite(Suite::All, &grid).unwrap();
        assert!(r.all_expected(), "{}", r.to_text());
        assert!(r.summary.pass > 0);
    }

    #[test]
    fn small_table_report() {
        let grid = Grid { max_n: 6, max_s: 3, ..Grid::default() };
        let r = run_suite(Suite::Table, &grid).unwrap();
        assert_eq!(r.summary, Summary { pass: 15, fail: 0, expected_mismatch: 0 });
        let csv = r.to_csv();
        assert_eq!(csv.lines().count(), 16);
        assert!(csv.starts_with("check,params,lhs,rhs,verdict\n"));
    }
}
