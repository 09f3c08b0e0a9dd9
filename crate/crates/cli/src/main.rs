//! `cuspidal`: tables, single evaluations and verification sweeps.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 usage error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cuspidal_core::characters::quad_char;
use cuspidal_core::eisenstein::{eigenvalue, eis_qexp, enumerate_h};
use cuspidal_core::periods::{dedekind_sum, rademacher_phi, xi, DedekindMode, GammaElement};
use cuspidal_core::report::{
    csv_document, emit_table, quad_cells, run_fuzz, run_sweep, summary, Cache, FuzzSuite, Suite,
    SweepSpec, TableKind, SCHEMA_VERSION,
};
use cuspidal_core::{EisIndex, Error, LevelShape};

#[derive(Parser)]
#[command(name = "cuspidal", version, about = "Eisenstein series, cusps and periods on X0(DC), exactly")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Fmt::Json)]
    format: Fmt,
    /// Write the document here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, env = "CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads; 0 lets rayon decide.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Fmt {
    Json,
    Csv,
}

#[derive(Args)]
struct ShapeArgs {
    #[arg(long = "D")]
    d: u64,
    #[arg(long = "C", default_value_t = 1)]
    c: u64,
}

impl ShapeArgs {
    fn shape(&self) -> Result<LevelShape, Error> {
        LevelShape::new(self.d, self.c)
    }
}

#[derive(Args)]
struct IndexArgs {
    #[arg(long = "M")]
    m: u64,
    #[arg(long = "L")]
    l: u64,
    /// Conductor of ψ (1 for the trivial character).
    #[arg(long, default_value_t = 1)]
    f: u64,
}

impl IndexArgs {
    fn index(&self, shape: LevelShape) -> Result<EisIndex, Error> {
        EisIndex::new(shape, self.m, self.l, quad_char(self.f)?)
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Cusp representatives (r, s, t, x) with their widths.
    Cusps(ShapeArgs),
    /// The quadratic eigenbasis with Hecke eigenvalues.
    Basis {
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long, value_delimiter = ',', default_value = "2,3,5,7,11,13")]
        primes: Vec<u64>,
    },
    /// q-expansion of one E_{M,L,ψ}.
    Qexp {
        #[command(flatten)]
        shape: ShapeArgs,
        #[command(flatten)]
        index: IndexArgs,
        #[arg(long, default_value_t = 20)]
        terms: usize,
    },
    /// Constant terms at every cusp, for one index or all of them.
    Constants {
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long = "M", requires = "l")]
        m: Option<u64>,
        #[arg(long = "L", requires = "m")]
        l: Option<u64>,
        #[arg(long, default_value_t = 1)]
        f: u64,
    },
    /// Cuspidal-subgroup orders with their inverted primes.
    Orders(ShapeArgs),
    /// The Dedekind sum s(h, k).
    Dedekind {
        #[arg(long, allow_hyphen_values = true)]
        h: i64,
        #[arg(long)]
        k: u64,
        #[arg(long, default_value = "fast")]
        mode: DedekindMode,
    },
    /// The Rademacher function Φ of a matrix a,b,c,d.
    Phi {
        #[arg(long, allow_hyphen_values = true)]
        matrix: GammaElement,
    },
    /// The period cocycle ξ of E_{M,D/M} at a matrix of Γ₀(DC).
    Xi {
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long = "M")]
        m: u64,
        #[arg(long, allow_hyphen_values = true)]
        matrix: GammaElement,
    },
    /// Randomized suite: reciprocity, congruence, xi-hom or two-part.
    Fuzz {
        #[arg(long)]
        suite: FuzzSuite,
        #[arg(long, default_value_t = 1000)]
        n: u64,
        /// Restrict the matrix suites to one shape.
        #[arg(long = "D")]
        d: Option<u64>,
        #[arg(long = "C", requires = "d")]
        c: Option<u64>,
    },
    /// One sweep suite at one shape.
    Verify {
        #[arg(long)]
        suite: Suite,
        #[command(flatten)]
        shape: ShapeArgs,
        #[command(flatten)]
        knobs: SweepKnobs,
    },
    /// Several suites over many shapes, with caching.
    Sweep {
        /// JSON sweep spec; other sweep flags are ignored when given.
        #[arg(long)]
        spec: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        max_level: u64,
        /// Comma-separated D:C pairs.
        #[arg(long, value_delimiter = ',')]
        shapes: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        suites: Vec<Suite>,
        #[command(flatten)]
        knobs: SweepKnobs,
    },
}

#[derive(Args)]
struct SweepKnobs {
    #[arg(long, default_value_t = 100)]
    truncation: usize,
    #[arg(long, value_delimiter = ',', default_value = "2,3,5,7,11,13")]
    primes: Vec<u64>,
    /// Random trials per (shape, suite) for randomized suites.
    #[arg(long, default_value_t = 100)]
    trials: u64,
}

/// A command's result: the JSON document, an optional tabular view, and
/// whether a verification failed.
struct Output {
    json: Value,
    table: Option<(Vec<String>, Vec<Vec<Value>>)>,
    failed: bool,
}

impl Output {
    fn plain(json: Value) -> Self {
        Self { json, table: None, failed: false }
    }
}

fn cols(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn parse_shape(s: &str) -> Result<LevelShape, Error> {
    let (d, c) = s.split_once(':').unwrap_or((s, "1"));
    let num = |x: &str| {
        x.trim()
            .parse::<u64>()
            .map_err(|_| Error::Unsupported(format!("bad shape '{s}', expected D:C")))
    };
    LevelShape::new(num(d)?, num(c)?)
}

fn table_output(kind: TableKind, shape: &LevelShape, index: Option<&EisIndex>) -> Result<Output, Error> {
    let t = emit_table(kind, shape, index)?;
    Ok(Output {
        json: serde_json::to_value(&t)?,
        table: Some((t.columns, t.rows)),
        failed: false,
    })
}

fn records_output(spec: &SweepSpec, cache: Option<&Cache>, jobs: usize) -> Result<Output, Error> {
    let out = run_sweep(spec, cache, jobs)?;
    let sum = summary(&out.records);
    eprintln!(
        "{} records, {} failed; {} jobs computed, {} from cache",
        sum["records"], sum["failed"], out.computed, out.cache_hits
    );
    let rows = out
        .records
        .iter()
        .map(|r| {
            let (d, c) = r.shape.map_or((Value::Null, Value::Null), |s| (json!(s.d), json!(s.c)));
            let (m, l, f) = r
                .index
                .map_or((Value::Null, Value::Null, Value::Null), |i| (json!(i.m), json!(i.l), json!(i.f)));
            vec![json!(r.suite.name()), d, c, m, l, f, json!(r.op), json!(r.status), json!(r.timing_ms)]
        })
        .collect();
    Ok(Output {
        failed: !out.passed(),
        json: json!({
            "schema_version": SCHEMA_VERSION,
            "spec": spec,
            "summary": sum,
            "records": out.records,
        }),
        table: Some((cols(&["suite", "D", "C", "M", "L", "f", "op", "status", "timing_ms"]), rows)),
    })
}

fn run(cli: &Cli) -> Result<Output, Error> {
    let cache = cli.cache_dir.as_ref().map(Cache::new).transpose()?;
    match &cli.cmd {
        Cmd::Cusps(s) => table_output(TableKind::Cusps, &s.shape()?, None),
        Cmd::Orders(s) => table_output(TableKind::Orders, &s.shape()?, None),
        Cmd::Constants { shape, m, l, f } => {
            let shape = shape.shape()?;
            let index = match (m, l) {
                (Some(m), Some(l)) => Some(EisIndex::new(shape, *m, *l, quad_char(*f)?)?),
                _ => None,
            };
            table_output(TableKind::Constants, &shape, index.as_ref())
        }
        Cmd::Basis { shape, primes } => {
            let shape = shape.shape()?;
            if let Some(&p) = primes.iter().find(|&&p| !cuspidal_core::arith::is_prime(p)) {
                return Err(Error::NotPrime(p));
            }
            let mut entries = Vec::new();
            let mut rows = Vec::new();
            for i in enumerate_h(&shape) {
                let eig: Vec<Value> = primes
                    .iter()
                    .map(|&p| {
                        let v = eigenvalue(&i, p);
                        let mut row = vec![json!(i.m), json!(i.l), json!(i.f()), json!(p)];
                        row.extend(quad_cells(&v));
                        rows.push(row);
                        json!({"ell": p, "value": v.parts()})
                    })
                    .collect();
                entries.push(json!({"M": i.m, "L": i.l, "f": i.f(), "disc": i.disc(), "eigenvalues": eig}));
            }
            Ok(Output {
                json: json!({"schema_version": SCHEMA_VERSION, "shape": shape, "indices": entries}),
                table: Some((
                    cols(&["M", "L", "f", "ell", "rat_num", "rat_den", "irr_num", "irr_den", "disc"]),
                    rows,
                )),
                failed: false,
            })
        }
        Cmd::Qexp { shape, index, terms } => {
            let idx = index.index(shape.shape()?)?;
            let series = eis_qexp(&idx, *terms)?;
            let rows = series
                .coeffs()
                .iter()
                .enumerate()
                .map(|(n, a)| {
                    let mut row = vec![json!(n)];
                    row.extend(quad_cells(a));
                    row
                })
                .collect();
            Ok(Output {
                json: json!({
                    "schema_version": SCHEMA_VERSION,
                    "shape": idx.shape,
                    "index": {"M": idx.m, "L": idx.l, "f": idx.f()},
                    "series": series.to_json(),
                }),
                table: Some((cols(&["n", "rat_num", "rat_den", "irr_num", "irr_den", "disc"]), rows)),
                failed: false,
            })
        }
        Cmd::Dedekind { h, k, mode } => {
            let v = dedekind_sum(*h, *k, *mode)?;
            Ok(Output::plain(json!({"h": h, "k": k, "mode": mode, "value": v.to_string()})))
        }
        Cmd::Phi { matrix } => Ok(Output::plain(json!({
            "matrix": matrix.to_string(),
            "value": rademacher_phi(matrix).to_string(),
        }))),
        Cmd::Xi { shape, m, matrix } => {
            let shape = shape.shape()?;
            let v = xi(*m, &shape, matrix)?;
            let period = &v / cuspidal_core::arith::int(24);
            Ok(Output::plain(json!({
                "D": shape.d,
                "C": shape.c,
                "M": m,
                "matrix": matrix.to_string(),
                "value": v.to_string(),
                "period": period.to_string(),
            })))
        }
        Cmd::Fuzz { suite, n, d, c } => {
            let shapes = match d {
                Some(d) => vec![LevelShape::new(*d, c.unwrap_or(1))?],
                None => Vec::new(),
            };
            let pool = rayon_pool(cli.jobs)?;
            let r = pool.install(|| run_fuzz(*suite, *n, cli.seed, &shapes))?;
            Ok(Output {
                failed: !r.passed(),
                json: json!({"schema_version": SCHEMA_VERSION, "report": r}),
                table: Some((
                    cols(&["suite", "seed", "trials", "failure_count"]),
                    vec![vec![json!(r.suite.name()), json!(r.seed), json!(r.trials), json!(r.failure_count)]],
                )),
            })
        }
        Cmd::Verify { suite, shape, knobs } => {
            let spec = SweepSpec {
                shapes: vec![shape.shape()?],
                suites: [*suite].into_iter().collect(),
                seed: cli.seed,
                truncation: knobs.truncation,
                primes: knobs.primes.clone(),
                fuzz_trials: knobs.trials,
                max_level: 0,
            };
            records_output(&spec, cache.as_ref(), cli.jobs)
        }
        Cmd::Sweep { spec, max_level, shapes, suites, knobs } => {
            let spec = match spec {
                Some(path) => serde_json::from_slice::<SweepSpec>(&fs::read(path)?)?,
                None => SweepSpec {
                    max_level: *max_level,
                    shapes: shapes.iter().map(|s| parse_shape(s)).collect::<Result<_, _>>()?,
                    suites: suites.iter().copied().collect(),
                    seed: cli.seed,
                    truncation: knobs.truncation,
                    primes: knobs.primes.clone(),
                    fuzz_trials: knobs.trials,
                },
            };
            records_output(&spec, cache.as_ref(), cli.jobs)
        }
    }
}

fn rayon_pool(jobs: usize) -> Result<rayon::ThreadPool, Error> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Unsupported(e.to_string()))
}

fn render(out: &Output, fmt: Fmt) -> Result<String, Error> {
    match fmt {
        Fmt::Json => Ok(serde_json::to_string_pretty(&out.json)? + "\n"),
        Fmt::Csv => match &out.table {
            Some((c, r)) => csv_document(c, r),
            None => {
                // flat objects become a one-row table
                let obj = out.json.as_object().cloned().unwrap_or_default();
                let (c, r): (Vec<String>, Vec<Value>) = obj.into_iter().unzip();
                csv_document(&c, &[r])
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|out| {
        let text = render(&out, cli.format)?;
        match &cli.out {
            Some(path) => fs::write(path, text)?,
            None => print!("{text}"),
        }
        Ok(out.failed)
    });
    match result {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
