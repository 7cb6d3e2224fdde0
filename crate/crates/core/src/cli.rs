//! `gclose` command line: JSON reports for closures, Hermitian spaces,
//! verifiers and the Vinberg catalog.
//!
//! Exit codes: 0 success, 1 input error, 2 verification failure.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::algebra::{parse_preset, AlgebraSpec, Graded};
use crate::closure::{base_change_check, galois_closure_with, sn_character, ClosureOptions, DEFAULT_DIM_CAP};
use crate::error::Error;
use crate::hermitian::{hermitian_product_check, hermitian_space, mat_action, vinberg_catalog, CatalogOptions, Tier};
use crate::iso::{self, CheckOptions, IsoReport};
use crate::linalg::{Field, Matrix};
use crate::par::{self, Exec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "gclose", version, about = "Exact Galois closures of finite-rank algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalArgs,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Largest ambient dimension computed without --force [env: GCLOSE_DIM_CAP].
    #[arg(long, global = true)]
    pub dim_cap: Option<usize>,
    /// Ignore the dimension cap.
    #[arg(long, global = true)]
    pub force: bool,
    /// Worker threads for saturation [env: GCLOSE_THREADS].
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Run every loop sequentially.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args, Clone)]
pub struct AlgebraArgs {
    /// Preset such as `matrix:3`, `product:trivial:1+matrix:2`; see `presets`.
    #[arg(long)]
    pub preset: Option<String>,
    /// Size parameter appended to a bare preset, `--preset matrix --n 3`.
    #[arg(long)]
    pub n: Option<usize>,
    /// JSON algebra spec file.
    #[arg(long, conflicts_with = "preset")]
    pub spec: Option<PathBuf>,
    /// `rational`, `prime:p` or `quadratic:d`.
    #[arg(long, default_value = "rational")]
    pub field: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TierArg {
    Desk,
    Stretch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Verifier {
    Quadratic,
    CubicSplit,
    Endv,
    Product,
    GroupRing,
    Csa,
    BaseChange,
    HermitianProduct,
    /// The standard suite on built-in algebras.
    All,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Galois closure dimension, ideal and S_n character.
    Closure {
        #[command(flatten)]
        alg: AlgebraArgs,
        /// Include the descended action matrices.
        #[arg(long)]
        dump_actions: bool,
    },
    /// Hermitian space H_{A,U} for U of rank m.
    Hermitian {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        m: usize,
        /// Random gamma in Mat_m(A) whose traces on H are reported.
        #[arg(long, default_value_t = 2)]
        samples: usize,
    },
    /// Run an isomorphism verifier.
    Check {
        #[arg(value_enum)]
        verifier: Verifier,
        #[command(flatten)]
        alg: AlgebraArgs,
        /// Block sizes for `group-ring`, e.g. 1,1,2.
        #[arg(long, value_delimiter = ',')]
        dims: Vec<usize>,
        /// Extension field for `base-change`.
        #[arg(long)]
        ext: Option<String>,
        /// Rank of U for `hermitian-product`.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Expected versus computed dimensions of Vinberg representations.
    Catalog {
        #[arg(long, value_enum, default_value = "desk")]
        tier: TierArg,
        #[arg(long, default_value = "rational")]
        field: String,
        /// Override an expected dimension, `row=value`; repeatable.
        #[arg(long = "inject-expected")]
        inject_expected: Vec<String>,
        /// Recompute closures per row instead of sharing them.
        #[arg(long)]
        no_reuse: bool,
    },
    /// List preset syntax.
    Presets,
}

/// What a subcommand produced.
struct Outcome {
    report: Value,
    verified: bool,
}

#[derive(Debug)]
struct Failure {
    msg: String,
    code: i32,
}

fn input(msg: impl Into<String>) -> Failure {
    Failure { msg: msg.into(), code: EXIT_INPUT }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        // an unstable ideal is a mathematical failure, not bad input
        let code = if matches!(e, Error::IdealNotStable(_)) { EXIT_VERIFY } else { EXIT_INPUT };
        Failure { msg: e.to_string(), code }
    }
}

fn env_usize(name: &str) -> Result<Option<usize>, Failure> {
    match std::env::var(name) {
        Ok(v) => v.trim().parse().map(Some).map_err(|_| input(format!("{name}={v:?} is not a positive integer"))),
        Err(_) => Ok(None),
    }
}

fn closure_options(g: &GlobalArgs) -> Result<ClosureOptions, Failure> {
    let cap = match g.dim_cap {
        Some(c) => c,
        None => env_usize("GCLOSE_DIM_CAP")?.unwrap_or(DEFAULT_DIM_CAP),
    };
    if cap == 0 {
        return Err(input("dimension cap must be positive"));
    }
    let exec = if g.sequential { Exec::Sequential } else { Exec::Parallel };
    Ok(ClosureOptions { exec, dim_cap: cap, force: g.force, verify: true })
}

fn algebra_spec(a: &AlgebraArgs) -> Result<AlgebraSpec, Failure> {
    let field = Field::from_name(&a.field)?;
    if let Some(path) = &a.spec {
        let text = std::fs::read_to_string(path).map_err(|e| input(format!("cannot read {}: {e}", path.display())))?;
        let v: Value = serde_json::from_str(&text).map_err(|e| input(format!("{}: invalid JSON: {e}", path.display())))?;
        let spec = AlgebraSpec::from_json(&v)?;
        return Ok(if a.field != "rational" { spec.with_field(field)? } else { spec });
    }
    let Some(p) = &a.preset else {
        return Err(input("give an algebra with --preset or --spec"));
    };
    let p = match a.n {
        Some(n) if !p.contains(':') => format!("{p}:{n}"),
        Some(_) => return Err(input(format!("--n given but preset {p:?} already has parameters"))),
        None => p.clone(),
    };
    Ok(parse_preset(&p, field)?)
}

fn matrix_json(m: &Matrix, f: Field) -> Value {
    json!(m.to_strings(f))
}

fn closure_cmd(alg: &AlgebraArgs, dump: bool, opts: &ClosureOptions) -> Result<Outcome, Failure> {
    let spec = algebra_spec(alg)?;
    let (a, d) = spec.build()?;
    let gc = galois_closure_with(&a, &d, opts)?;
    let f = gc.field();
    let chars: BTreeMap<String, String> = sn_character(&gc).into_iter().map(|(k, v)| (k, v.to_string())).collect();
    let mut report = json!({
        "command": "closure",
        "algebra": spec.to_json(),
        "name": a.name(),
        "rank": a.rank(),
        "n": gc.n(),
        "ambient_dim": gc.ambient_dim(),
        "ideal_dim": gc.ideal_dim(),
        "closure_dim": gc.dim(),
        "characters": chars,
        "timings_ms": {
            "saturate": gc.timings.saturate_ms,
            "verify": gc.timings.verify_ms,
            "descend": gc.timings.descend_ms,
        },
    });
    if dump {
        let act: Vec<Vec<Value>> =
            (0..gc.n()).map(|i| (0..a.rank()).map(|k| matrix_json(gc.act(i, k), f)).collect()).collect();
        let sgen: Vec<Value> = gc.sgens().iter().map(|s| matrix_json(s, f)).collect();
        report["actions"] = json!({"act": act, "sgen": sgen});
    }
    Ok(Outcome { report, verified: true })
}

fn hermitian_cmd(alg: &AlgebraArgs, m: usize, samples: usize, seed: u64, opts: &ClosureOptions) -> Result<Outcome, Failure> {
    let spec = algebra_spec(alg)?;
    let (a, d) = spec.build()?;
    let t0 = Instant::now();
    let gc = galois_closure_with(&a, &d, opts)?;
    let h = hermitian_space(&gc, m, opts)?;
    let t1 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut traces = Vec::new();
    let mut preserved = true;
    for _ in 0..samples {
        let gamma: Vec<Vec<_>> = (0..m).map(|_| (0..m).map(|_| a.random_element(&mut rng, 3)).collect()).collect();
        match h.restricted_trace(&mat_action(&gc, m, &gamma)?) {
            Some(t) => traces.push(Value::String(t.to_string())),
            None => {
                preserved = false;
                traces.push(Value::Null);
            }
        }
    }
    let report = json!({
        "command": "hermitian",
        "algebra": spec.to_json(),
        "name": a.name(),
        "n": gc.n(),
        "m": m,
        "closure_dim": gc.dim(),
        "ambient_dim": h.ambient_dim(),
        "computed_dim": h.dim(),
        "seed": seed,
        "gamma_traces": traces,
        "action_preserves_h": preserved,
        "timings_ms": {"space": (t1 - t0).as_millis(), "traces": t1.elapsed().as_millis()},
    });
    Ok(Outcome { report, verified: preserved })
}

fn factors_of(spec: &AlgebraSpec) -> Result<Vec<Graded>, Failure> {
    let fs = spec.factors().ok_or_else(|| input("this verifier needs a product algebra, e.g. --preset product:trivial:1+matrix:2"))?;
    Ok(fs.iter().map(|f| f.build()).collect::<Result<_, _>>()?)
}

fn base_change_report(g: &Graded, ext: Field, opts: &CheckOptions) -> Result<IsoReport, Failure> {
    let r = base_change_check(&g.0, &g.1, ext, &opts.closure)?;
    let mut rep = IsoReport::new("base-change", g.0.name(), opts);
    rep.dim("base", r.dim_base);
    rep.dim("extension", r.dim_ext);
    rep.check("dimension", if r.dim_base == r.dim_ext { Ok(()) } else { Err(format!("{} != {}", r.dim_base, r.dim_ext)) });
    rep.check("ideal span", if r.ideal_span_equal { Ok(()) } else { Err(format!("ideals differ over {ext}")) });
    Ok(rep)
}

/// The verifier suite run by `check all`.
pub fn standard_suite(opts: &CheckOptions) -> crate::Result<Vec<IsoReport>> {
    use crate::algebra::{dual, matrix, quadratic, quaternion, split, trivial};
    let q = Field::Rational;
    let mut out = Vec::new();
    for g in [split(q, 2), quadratic(q, 2), quaternion(q, -1, -1)?] {
        out.push(iso::check_quadratic(&g, opts)?);
    }
    for b in [split(q, 2), quadratic(q, 2), dual(q)] {
        out.push(iso::check_cubic_split(&b, opts)?);
    }
    for n in [2, 3] {
        out.push(iso::check_endv(n, q, opts)?);
    }
    let splittings: Vec<Vec<Graded>> = vec![
        vec![trivial(q, 1), trivial(q, 1)],
        vec![trivial(q, 1), matrix(q, 2)],
        vec![quadratic(q, 2), dual(q)],
        vec![trivial(q, 1), trivial(q, 1), matrix(q, 2)],
    ];
    for fs in &splittings {
        out.push(iso::check_product_formula(fs, opts)?);
    }
    out.push(iso::check_group_ring(&[1, 1, 2], q, opts)?);
    out.push(iso::check_csa_dimension(&quaternion(q, -1, -1)?, opts)?);
    Ok(out)
}

fn check_cmd(
    verifier: Verifier,
    alg: &AlgebraArgs,
    dims: &[usize],
    ext: Option<&str>,
    m: Option<usize>,
    opts: &CheckOptions,
) -> Result<Outcome, Failure> {
    let needs_alg = !matches!(verifier, Verifier::Endv | Verifier::GroupRing | Verifier::All);
    let spec = if needs_alg { Some(algebra_spec(alg)?) } else { None };
    let graded = || -> Result<Graded, Failure> { Ok(spec.as_ref().unwrap().build()?) };
    let field = Field::from_name(&alg.field)?;
    let reports = match verifier {
        Verifier::Quadratic => vec![iso::check_quadratic(&graded()?, opts)?],
        Verifier::CubicSplit => vec![iso::check_cubic_split(&graded()?, opts)?],
        Verifier::Endv => {
            let n = alg.n.ok_or_else(|| input("endv needs --n"))?;
            vec![iso::check_endv(n, field, opts)?]
        }
        Verifier::Product => vec![iso::check_product_formula(&factors_of(spec.as_ref().unwrap())?, opts)?],
        Verifier::GroupRing => {
            if dims.is_empty() {
                return Err(input("group-ring needs --dims, e.g. --dims 1,1,2"));
            }
            vec![iso::check_group_ring(dims, field, opts)?]
        }
        Verifier::Csa => vec![iso::check_csa_dimension(&graded()?, opts)?],
        Verifier::BaseChange => {
            let ext = Field::from_name(ext.ok_or_else(|| input("base-change needs --ext, e.g. quadratic:2"))?)?;
            vec![base_change_report(&graded()?, ext, opts)?]
        }
        Verifier::HermitianProduct => {
            let m = m.ok_or_else(|| input("hermitian-product needs --m"))?;
            vec![hermitian_product_check(&factors_of(spec.as_ref().unwrap())?, m, opts)?]
        }
        Verifier::All => standard_suite(opts)?,
    };
    let verified = reports.iter().all(|r| r.passed);
    let name = verifier.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
    let report = json!({
        "command": "check",
        "verifier": name,
        "algebra": spec.map(|s| s.to_json()),
        "seed": opts.seed,
        "passed": verified,
        "reports": reports,
    });
    Ok(Outcome { report, verified })
}

fn catalog_cmd(tier: TierArg, field: &str, inject: &[String], reuse: bool, opts: &ClosureOptions) -> Result<Outcome, Failure> {
    let mut overrides = BTreeMap::new();
    for item in inject {
        let (row, v) = item
            .split_once('=')
            .ok_or_else(|| input(format!("--inject-expected {item:?}: expected row=value")))?;
        let v = v.trim().parse().map_err(|_| input(format!("--inject-expected {item:?}: value is not an integer")))?;
        overrides.insert(row.trim().to_string(), v);
    }
    let tier = match tier {
        TierArg::Desk => Tier::Desk,
        TierArg::Stretch => Tier::Stretch,
    };
    let known = crate::hermitian::catalog_rows(tier);
    if let Some(r) = overrides.keys().find(|r| !known.iter().any(|(k, _)| k == *r)) {
        return Err(input(format!("--inject-expected: no catalog row {r:?} in this tier")));
    }
    let copts = CatalogOptions { tier, field: Field::from_name(field)?, closure: *opts, reuse, expected_overrides: overrides };
    let t0 = Instant::now();
    let entries = vinberg_catalog(&copts)?;
    let verified = entries.iter().all(|e| e.passed());
    let report = json!({
        "command": "catalog",
        "tier": tier,
        "field": copts.field,
        "passed": verified,
        "entries": entries,
        "timings_ms": t0.elapsed().as_millis(),
    });
    Ok(Outcome { report, verified })
}

fn presets_cmd() -> Outcome {
    let list = [
        ("split:n", "k^n, regular degree n"),
        ("trivial:n", "k as a degree n algebra, char poly (T - a)^n"),
        ("matrix:n", "Mat_n(k), degree n"),
        ("quadratic:d", "k[x]/(x^2 - d), degree 2"),
        ("dual", "k[x]/(x^2), degree 2"),
        ("quaternion:d,gamma", "cyclic quaternion algebra (d, gamma), degree 2"),
        ("cyclic3", "degree 3 cyclic division algebra over Q with gamma = 2"),
        ("product:a+b+..", "direct product of presets, degrees add"),
        ("groupring:d1,d2,..", "split semisimple algebra prod Mat_{d_i}"),
    ];
    let presets: Vec<Value> = list.iter().map(|(s, d)| json!({"syntax": s, "description": d})).collect();
    Outcome { report: json!({"command": "presets", "presets": presets}), verified: true }
}

fn execute(cli: &Cli) -> Result<Outcome, Failure> {
    let g = &cli.global;
    let threads = match g.threads {
        Some(t) => Some(t),
        None => env_usize("GCLOSE_THREADS")?,
    };
    par::init_threads(threads);
    let opts = closure_options(g)?;
    match &cli.command {
        Command::Closure { alg, dump_actions } => closure_cmd(alg, *dump_actions, &opts),
        Command::Hermitian { alg, m, samples } => hermitian_cmd(alg, *m, *samples, g.seed, &opts),
        Command::Check { verifier, alg, dims, ext, m, samples } => {
            let copts = CheckOptions { closure: opts, seed: g.seed, samples: *samples };
            check_cmd(*verifier, alg, dims, ext.as_deref(), *m, &copts)
        }
        Command::Catalog { tier, field, inject_expected, no_reuse } => {
            catalog_cmd(*tier, field, inject_expected, !no_reuse, &opts)
        }
        Command::Presets => Ok(presets_cmd()),
    }
}

fn write_report(report: &Value, out: Option<&PathBuf>) -> std::io::Result<()> {
    let mut text = serde_json::to_string_pretty(report).expect("report serializes");
    text.push('\n');
    match out {
        Some(p) => std::fs::write(p, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

/// Parses `argv` (including the program name), runs the command and
/// returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(o) => {
            if let Err(e) = write_report(&o.report, cli.global.out.as_ref()) {
                eprintln!("error: cannot write report: {e}");
                return EXIT_INPUT;
            }
            if o.verified {
                EXIT_OK
            } else {
                eprintln!("verification failed");
                EXIT_VERIFY
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.msg);
            f.code
        }
    }
}

/// Drops timing fields so two reports can be compared for determinism.
pub fn strip_timings(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.remove("timings_ms");
            map.remove("ms");
            map.values_mut().for_each(strip_timings);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_timings),
        _ => {}
    }
}
