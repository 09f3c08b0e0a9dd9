use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::cache::{content_key, Cache};
use super::fuzz::{run_fuzz, FuzzSuite};
use super::SCHEMA_VERSION;
use crate::arith::{self, QuadExt};
use crate::characters::{quad_char, QuadraticCharacter};
use crate::cusps::{
    cusp_class_brute, cusp_count, enumerate_cusps, gamma0_index, rep_to_cusp, LevelShape,
};
use crate::eisenstein::{
    closed_form_qexp, constant_term, constant_term_oracle, cuspidal_order, edd_unit_check,
    eis_qexp, eisenstein_dimension, count_h, enumerate_h, lseries_factorization_check, order_nml,
    check_eigen_series, strip_primes, EisIndex,
};
use crate::error::{Error, Result};
use crate::periods::{numeric_period, random_gamma0, xi};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// `#H(DC)` against the Eisenstein dimension.
    Count,
    /// Cusp count, pairwise inequivalence and total width.
    Cusps,
    /// `T_ℓ E = λ_ℓ E` for the spec's primes.
    Eigen,
    /// Operator-built series against `σ_{M,L}(n)ψ(n)`.
    Closed,
    /// Closed-form constant terms against the recursion, plus the residue sum.
    Constants,
    /// Lattice order against `N_{M,L}` (trivial ψ, odd `D`).
    Orders,
    /// Twisted L-series factorization for `χ` of conductor 1, 3, 5, 7.
    Lseries,
    /// Unit property of `E_{D,D}` constant terms (`C = D`).
    Edd,
    /// Dedekind reciprocity, brute = fast, and the mod-8 congruence.
    Dedekind,
    XiHom,
    /// `ξ/24` against a numerical integral (`DC ≤ 30`).
    Numeric,
    TwoPart,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Self::Count,
        Self::Cusps,
        Self::Eigen,
        Self::Closed,
        Self::Constants,
        Self::Orders,
        Self::Lseries,
        Self::Edd,
        Self::Dedekind,
        Self::XiHom,
        Self::Numeric,
        Self::TwoPart,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Self::Count => "count",
            Self::Cusps => "cusps",
            Self::Eigen => "eigen",
            Self::Closed => "closed",
            Self::Constants => "constants",
            Self::Orders => "orders",
            Self::Lseries => "lseries",
            Self::Edd => "edd",
            Self::Dedekind => "dedekind",
            Self::XiHom => "xi-hom",
            Self::Numeric => "numeric",
            Self::TwoPart => "two-part",
        }
    }

    fn randomized(&self) -> bool {
        matches!(self, Self::Dedekind | Self::XiHom | Self::Numeric | Self::TwoPart)
    }

    fn applies_to(&self, s: &LevelShape) -> bool {
        match self {
            Self::Count | Self::Cusps => true,
            Self::Dedekind => false,
            Self::Edd => s.c == s.d && s.d > 1,
            Self::Numeric => s.d > 1 && s.level() <= 30,
            Self::TwoPart => s.d % 2 == 1 && arith::nu(s.d) >= 2,
            _ => s.d > 1,
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
        Self::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Unsupported(format!("unknown suite '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSpec {
    /// Used when `shapes` is empty: every shape with `DC ≤ max_level`.
    #[serde(default)]
    pub max_level: u64,
    #[serde(default)]
    pub shapes: Vec<LevelShape>,
    pub truncation: usize,
    pub primes: Vec<u64>,
    pub suites: BTreeSet<Suite>,
    pub seed: u64,
    /// Random trials per `(shape, suite)` for the randomized suites.
    #[serde(default = "default_trials")]
    pub fuzz_trials: u64,
}

fn default_trials() -> u64 {
    100
}

impl Default for SweepSpec {
    fn default() -> Self {
        Self {
            max_level: 0,
            shapes: Vec::new(),
            truncation: 100,
            primes: vec![2, 3, 5, 7, 11, 13],
            suites: BTreeSet::new(),
            seed: 0,
            fuzz_trials: default_trials(),
        }
    }
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.truncation == 0 {
            return Err(Error::Unsupported("truncation must be at least 1".into()));
        }
        for s in &self.shapes {
            LevelShape::new(s.d, s.c)?;
        }
        if let Some(&p) = self.primes.iter().find(|&&p| !arith::is_prime(p)) {
            return Err(Error::NotPrime(p));
        }
        Ok(())
    }

    pub fn resolved_shapes(&self) -> Vec<LevelShape> {
        let mut v = if self.shapes.is_empty() {
            LevelShape::all_up_to(self.max_level)
        } else {
            self.shapes.clone()
        };
        v.sort();
        v.dedup();
        v
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// `(M, L, f)` of an Eisenstein index, without its shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IndexKey {
    #[serde(rename = "M")]
    pub m: u64,
    #[serde(rename = "L")]
    pub l: u64,
    pub f: u64,
}

impl From<&EisIndex> for IndexKey {
    fn from(i: &EisIndex) -> Self {
        Self { m: i.m, l: i.l, f: i.f() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub schema_version: u32,
    pub suite: Suite,
    pub shape: Option<LevelShape>,
    pub index: Option<IndexKey>,
    /// Sub-item label when an index does not identify the record.
    pub op: String,
    pub status: Status,
    pub payload: Value,
    pub timing_ms: f64,
}

impl ResultRecord {
    fn sort_key(&self) -> (Option<LevelShape>, Suite, Option<IndexKey>, &str) {
        (self.shape, self.suite, self.index, &self.op)
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutcome {
    pub records: Vec<ResultRecord>,
    pub cache_hits: usize,
    pub computed: usize,
}

impl SweepOutcome {
    pub fn passed(&self) -> bool {
        self.records.iter().all(ResultRecord::passed)
    }
}

/// Counts per suite and overall.
pub fn summary(records: &[ResultRecord]) -> Value {
    let mut per = serde_json::Map::new();
    for r in records {
        let e = per
            .entry(r.suite.name().to_string())
            .or_insert_with(|| json!({"pass": 0, "fail": 0}));
        let k = if r.passed() { "pass" } else { "fail" };
        e[k] = json!(e[k].as_u64().unwrap_or(0) + 1);
    }
    let failed = records.iter().filter(|r| !r.passed()).count();
    json!({
        "schema_version": SCHEMA_VERSION,
        "records": records.len(),
        "passed": records.len() - failed,
        "failed": failed,
        "suites": per,
    })
}

#[derive(Serialize)]
struct JobKey<'a> {
    schema_version: u32,
    suite: Suite,
    shape: Option<LevelShape>,
    truncation: usize,
    primes: &'a [u64],
    seed: Option<u64>,
    fuzz_trials: Option<u64>,
}

struct Job {
    suite: Suite,
    shape: Option<LevelShape>,
}

struct Ctx<'a> {
    spec: &'a SweepSpec,
    shape: Option<LevelShape>,
    suite: Suite,
}

impl Ctx<'_> {
    fn record(&self, index: Option<IndexKey>, op: &str, ok: bool, payload: Value, start: Instant) -> ResultRecord {
        ResultRecord {
            schema_version: SCHEMA_VERSION,
            suite: self.suite,
            shape: self.shape,
            index,
            op: op.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
            payload,
            timing_ms: start.elapsed().as_secs_f64() * 1e3,
        }
    }

    /// Seed for one `(shape, label)` item, independent of scheduling.
    fn seed_for(&self, label: u64) -> u64 {
        let (d, c) = self.shape.map_or((0, 0), |s| (s.d, s.c));
        content_key(&(self.spec.seed, d, c, label))
            .ok()
            .and_then(|k| u64::from_str_radix(&k[..16], 16).ok())
            .unwrap_or(self.spec.seed)
    }
}

fn quad_json(q: &QuadExt) -> Value {
    json!({"value": q.parts(), "disc": q.disc})
}

fn per_index(
    ctx: &Ctx,
    shape: &LevelShape,
    f: impl Fn(&EisIndex) -> Result<(bool, Value)> + Sync,
) -> Vec<ResultRecord> {
    enumerate_h(shape)
        .par_iter()
        .map(|i| {
            let start = Instant::now();
            let (ok, payload) = f(i).unwrap_or_else(|e| (false, json!({"error": e.to_string()})));
            ctx.record(Some(i.into()), "", ok, payload, start)
        })
        .collect()
}

fn run_job(spec: &SweepSpec, job: &Job) -> Vec<ResultRecord> {
    let ctx = Ctx {
        spec,
        shape: job.shape,
        suite: job.suite,
    };
    let t = spec.truncation;
    let Some(shape) = job.shape else {
        // shape-free suites
        let start = Instant::now();
        let mut payload = serde_json::Map::new();
        let mut ok = true;
        for s in [FuzzSuite::Reciprocity, FuzzSuite::Congruence] {
            match run_fuzz(s, spec.fuzz_trials, spec.seed, &[]) {
                Ok(r) => {
                    ok &= r.passed();
                    payload.insert(s.name().into(), serde_json::to_value(&r).expect("plain data"));
                }
                Err(e) => {
                    ok = false;
                    payload.insert(s.name().into(), json!({"error": e.to_string()}));
                }
            }
        }
        return vec![ctx.record(None, "", ok, Value::Object(payload), start)];
    };
    let start = Instant::now();
    match job.suite {
        Suite::Count => {
            let (count, dim) = (count_h(&shape), eisenstein_dimension(shape.level()));
            vec![ctx.record(None, "", count == dim, json!({"count": count, "dimension": dim}), start)]
        }
        Suite::Cusps => {
            let n = shape.level();
            let reps = enumerate_cusps(&shape);
            let classes: BTreeSet<_> = reps
                .iter()
                .map(|r| cusp_class_brute(&rep_to_cusp(r, &shape), n))
                .collect();
            let widths: u64 = reps.iter().map(|r| r.width()).sum();
            let ok = reps.len() as u64 == cusp_count(n)
                && classes.len() == reps.len()
                && widths == gamma0_index(n);
            let payload = json!({
                "count": reps.len(),
                "expected": cusp_count(n),
                "classes": classes.len(),
                "width_sum": widths,
                "index": gamma0_index(n),
            });
            vec![ctx.record(None, "", ok, payload, start)]
        }
        Suite::Eigen => {
            let primes = spec.primes.clone();
            per_index(&ctx, &shape, |i| {
                let top = primes.iter().copied().max().unwrap_or(1) as usize;
                let series = eis_qexp(i, top * t)?;
                Ok(match check_eigen_series(i, &series, t, &primes) {
                    Ok(()) => (true, json!({"primes": primes, "truncation": t})),
                    Err(m) => (false, json!({"mismatch": m})),
                })
            })
        }
        Suite::Closed => per_index(&ctx, &shape, |i| {
            let e = eis_qexp(i, t)?;
            let c = closed_form_qexp(i, t, e.coeff(0).clone())?;
            let first_bad = (1..=t).find(|&n| e.coeff(n) != c.coeff(n));
            Ok(match first_bad {
                None => (true, json!({"truncation": t})),
                Some(n) => (false, json!({"n": n, "built": e.coeff(n).to_string(), "closed": c.coeff(n).to_string()})),
            })
        }),
        Suite::Constants => per_index(&ctx, &shape, |i| {
            let mut total = QuadExt::zero(i.disc());
            for rep in enumerate_cusps(&shape) {
                let a = constant_term(i, &rep)?;
                let b = constant_term_oracle(i, &rep)?;
                if a != b {
                    return Ok((false, json!({"cusp": rep, "closed": quad_json(&a), "oracle": quad_json(&b)})));
                }
                total = &total + &a.scale_int(rep.width() as i64);
            }
            Ok((total.is_zero(), json!({"residue_sum": quad_json(&total)})))
        }),
        Suite::Orders => per_index(&ctx, &shape, |i| {
            let o = cuspidal_order(i)?;
            let mut payload = json!({"order": o.order.to_string(), "inverted": o.inverted});
            let mut ok = true;
            if i.psi.is_trivial() && shape.d % 2 == 1 {
                let nml = order_nml(i.m, i.l, &shape)?;
                let mut away = o.inverted.clone();
                away.push(2);
                let lhs = o.away_from(&[2]);
                let rhs = strip_primes(&nml.into(), &away);
                ok = lhs == rhs;
                payload["n_ml"] = json!(nml);
            }
            Ok((ok, payload))
        }),
        Suite::Lseries => per_index(&ctx, &shape, |i| {
            let mut used = Vec::new();
            for cond in [1u64, 3, 5, 7] {
                if cond.gcd(&shape.d) != 1 {
                    continue;
                }
                let chi = if cond == 1 { QuadraticCharacter::trivial() } else { quad_char(cond)? };
                if let Err(m) = lseries_factorization_check(i, &chi, t)? {
                    return Ok((false, json!({"chi": cond, "mismatch": m})));
                }
                used.push(cond);
            }
            Ok((true, json!({"chi": used, "n_max": t})))
        }),
        Suite::Edd => {
            let (ok, payload) = match edd_unit_check(&shape) {
                Ok(b) => (b, json!({"units": b})),
                Err(e) => (false, json!({"error": e.to_string()})),
            };
            vec![ctx.record(None, "", ok, payload, start)]
        }
        Suite::XiHom | Suite::TwoPart => {
            let fs = if job.suite == Suite::XiHom { FuzzSuite::XiHom } else { FuzzSuite::TwoPart };
            let (ok, payload) = match run_fuzz(fs, spec.fuzz_trials, ctx.seed_for(0), &[shape]) {
                Ok(r) => (r.passed(), serde_json::to_value(&r).expect("plain data")),
                Err(e) => (false, json!({"error": e.to_string()})),
            };
            vec![ctx.record(None, "", ok, payload, start)]
        }
        Suite::Numeric => arith::divisors(shape.d)
            .into_iter()
            .filter(|&m| m > 1)
            .map(|m| {
                let start = Instant::now();
                let (ok, payload) = numeric_item(&shape, m, ctx.seed_for(m), spec.fuzz_trials)
                    .unwrap_or_else(|e| (false, json!({"error": e.to_string()})));
                ctx.record(None, &format!("M={m}"), ok, payload, start)
            })
            .collect(),
        Suite::Dedekind => Vec::new(),
    }
}

/// Series terms and tolerance for the numerical period comparison.
pub(crate) const NUMERIC_TERMS: usize = 2000;
pub(crate) const NUMERIC_TOL: f64 = 1e-6;

fn numeric_item(shape: &LevelShape, m: u64, seed: u64, samples: u64) -> Result<(bool, Value)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0f64;
    let mut done = 0;
    while done < samples {
        let g = random_gamma0(shape.level(), 30, &mut rng);
        if g.c == 0 {
            continue;
        }
        done += 1;
        let z = numeric_period(m, shape, &g, NUMERIC_TERMS)?;
        let exact = (xi(m, shape, &g)? / arith::int(24)).to_f64().expect("finite");
        let err = (z - num_complex::Complex64::new(exact, 0.0)).norm();
        if err >= NUMERIC_TOL {
            return Ok((false, json!({"gamma": g, "exact": exact, "numeric": [z.re, z.im]})));
        }
        worst = worst.max(err);
    }
    Ok((true, json!({"samples": samples, "max_error": worst})))
}

/// Runs every requested suite over every applicable shape on `jobs` worker
/// threads (0 = rayon default). Records come back sorted by
/// `(shape, suite, index, op)`; cached jobs are not recomputed.
pub fn run_sweep(spec: &SweepSpec, cache: Option<&Cache>, jobs: usize) -> Result<SweepOutcome> {
    spec.validate()?;
    let shapes = spec.resolved_shapes();
    let mut work = Vec::new();
    for &suite in &spec.suites {
        if suite == Suite::Dedekind {
            work.push(Job { suite, shape: None });
        }
        for s in shapes.iter().filter(|s| suite.applies_to(s)) {
            work.push(Job { suite, shape: Some(*s) });
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Unsupported(e.to_string()))?;
    let results: Vec<(Vec<ResultRecord>, bool)> = pool.install(|| {
        work.par_iter()
            .map(|job| {
                let key = JobKey {
                    schema_version: SCHEMA_VERSION,
                    suite: job.suite,
                    shape: job.shape,
                    truncation: spec.truncation,
                    primes: &spec.primes,
                    seed: job.suite.randomized().then_some(spec.seed),
                    fuzz_trials: job.suite.randomized().then_some(spec.fuzz_trials),
                };
                let key = content_key(&key)?;
                if let Some(hit) = cache.and_then(|c| c.get::<Vec<ResultRecord>>(&key)) {
                    return Ok((hit, true));
                }
                let recs = run_job(spec, job);
                if let Some(c) = cache {
                    c.put(&key, &recs)?;
                }
                Ok((recs, false))
            })
            .collect::<Result<Vec<_>>>()
    })?;
    let cache_hits = results.iter().filter(|r| r.1).count();
    let computed = results.len() - cache_hits;
    let mut records: Vec<ResultRecord> = results.into_iter().flat_map(|r| r.0).collect();
    records.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    Ok(SweepOutcome {
        records,
        cache_hits,
        computed,
    })
}
