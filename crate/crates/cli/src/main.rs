//! Command-line front end: arrangement reports, algebra dimensions,
//! weight-complex computations, the stratified total complex, and the
//! verification suite, with JSON or table output and an advisory on-disk
//! cache of assembled complexes.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use aomoto_core::arrangement::{discriminantal, DiscriminantalSpec, Flat, WeightedArrangement};
use aomoto_core::exact::{scalar_from_str, scalar_to_string};
use aomoto_core::orlik_solomon::{build_os, symmetric_group_actions, OSCache};
use aomoto_core::sl2::{bgg_tensor_complex, clebsch_gordan_mult, lambda_of, lie_homology_dims};
use aomoto_core::strata::{
    condition_a_check, condition_a_zero_weight_control, gamma, genericity_scan, total_complex,
    verify_dims, verify_flag_kernel, verify_iso, TotalSkewComplex,
};
use aomoto_core::{CheckReport, Scalar};

#[derive(Parser)]
#[command(
    name = "aomoto",
    version,
    about = "Weighted arrangements, their form algebras, and the stratified complex comparison"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Arrangement structure: flats, dense edges, resonance.
    Arr {
        #[command(subcommand)]
        sub: ArrCmd,
    },
    /// Form algebra of the arrangement.
    Os {
        #[command(subcommand)]
        sub: OsCmd,
    },
    /// Weight-module computations.
    Sl2 {
        #[command(subcommand)]
        sub: Sl2Cmd,
    },
    /// The stratified total complex.
    Strata {
        #[command(subcommand)]
        sub: StrataCmd,
    },
    /// Verification suite.
    Verify {
        #[command(subcommand)]
        sub: VerifyCmd,
    },
}

#[derive(Subcommand)]
enum ArrCmd {
    /// Every flat of the intersection poset.
    Flats(Common),
    /// Dense edges only.
    Dense(Common),
    /// Dense edges with vanishing total weight.
    Resonant(Common),
}

#[derive(Subcommand)]
enum OsCmd {
    /// Basis dimensions per degree, with the Poincaré coefficients.
    Dims(Common),
    /// Dimensions of the alternating isotypic part per degree.
    Skew(Common),
    /// Betti table of the twisted differential.
    Aomoto(Common),
}

#[derive(Subcommand)]
enum Sl2Cmd {
    /// Dimensions and Betti numbers of the tensor resolution.
    Bgg(Common),
    /// Multiplicity of one weight in the tensor product.
    Cg(CgArgs),
    /// Lowest homology of the truncated lowering map.
    Homology(Common),
}

#[derive(Subcommand)]
enum StrataCmd {
    /// Full report: strata, dimensions, Betti table, sign character.
    Total(Common),
    /// Betti table only.
    Betti(Common),
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Chain isomorphism with the weight complex.
    Iso(Common),
    /// Flag span against the residue kernel.
    Flag(Common),
    /// Cohomology dimensions against the weight-space prediction.
    Dims(Common),
    /// Local vanishing at each multiplicity, with the degenerate control.
    CondA(Common),
    /// Betti stability across sampled κ.
    Generic(Common),
    /// Every check; sweeps a grid when no weights are pinned.
    All(AllArgs),
}

#[derive(Args, Clone)]
struct Common {
    /// Multiplicities at the marked points, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    m: Vec<u32>,
    /// Number of moving coordinates.
    #[arg(long, default_value_t = 1)]
    k: usize,
    /// Marked points as rationals, comma separated; default 1..n.
    #[arg(long, value_delimiter = ',')]
    z: Option<Vec<String>>,
    /// κ as an exact rational `p/q`; default: sampled from the seed.
    #[arg(long)]
    kappa: Option<String>,
    /// Seed for κ sampling.
    #[arg(long, default_value_t = 17)]
    seed: u64,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Directory for the advisory complex cache.
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// Worker threads for grid verification.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args, Clone)]
struct CgArgs {
    #[command(flatten)]
    common: Common,
    /// The weight whose multiplicity is reported.
    #[arg(long)]
    p: i64,
}

#[derive(Args, Clone)]
struct AllArgs {
    /// Multiplicities; omit to sweep the verification grid.
    #[arg(long, value_delimiter = ',')]
    m: Option<Vec<u32>>,
    /// Number of moving coordinates; omit to sweep.
    #[arg(long)]
    k: Option<usize>,
    /// κ as an exact rational `p/q`; default: sampled from the seed.
    #[arg(long)]
    kappa: Option<String>,
    /// Seed for κ sampling.
    #[arg(long, default_value_t = 17)]
    seed: u64,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Directory for the advisory complex cache.
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// Worker threads for the grid sweep.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(all_passed) => {
            if all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<bool> {
    match command {
        Command::Arr { sub } => {
            let (common, mode) = match sub {
                ArrCmd::Flats(c) => (c, "flats"),
                ArrCmd::Dense(c) => (c, "dense"),
                ArrCmd::Resonant(c) => (c, "resonant"),
            };
            let (arrangement, config) = arrangement_of(&common)?;
            let chosen: Vec<Flat> = match mode {
                "flats" => arrangement.flats(),
                "dense" => arrangement
                    .flats()
                    .into_iter()
                    .filter(|f| arrangement.is_dense(f))
                    .collect(),
                _ => arrangement.resonant_dense_edges(),
            };
            let flats: Vec<Value> = chosen
                .iter()
                .map(|f| {
                    json!({
                        "hyperplanes": f.hyperplane_indices.iter().collect::<Vec<_>>(),
                        "codim": f.codim,
                        "weight": scalar_to_string(&arrangement.edge_weight(f)),
                        "dense": arrangement.is_dense(f),
                    })
                })
                .collect();
            let payload = json!({
                "command": format!("arr {mode}"),
                "config": config,
                "hyperplanes": hyperplane_strings(&arrangement),
                mode: flats,
            });
            emit(&payload, common.format);
            Ok(true)
        }
        Command::Os { sub } => {
            let (common, mode) = match sub {
                OsCmd::Dims(c) => (c, "dims"),
                OsCmd::Skew(c) => (c, "skew"),
                OsCmd::Aomoto(c) => (c, "aomoto"),
            };
            let (arrangement, config) = arrangement_of(&common)?;
            let poincare = arrangement.moebius_poincare();
            let os = build_os(arrangement);
            let payload = match mode {
                "dims" => json!({
                    "command": "os dims",
                    "config": config,
                    "dims": os.dims(),
                    "poincare": poincare,
                }),
                "skew" => {
                    let actions = symmetric_group_actions(os.arrangement(), common.k)?;
                    json!({
                        "command": "os skew",
                        "config": config,
                        "skew_dims": os.skew_dims(&actions),
                    })
                }
                _ => json!({
                    "command": "os aomoto",
                    "config": config,
                    "betti": betti_rows(&os.aomoto()),
                }),
            };
            emit(&payload, common.format);
            Ok(true)
        }
        Command::Sl2 { sub } => match sub {
            Sl2Cmd::Bgg(common) => {
                let m = signed_m(&common.m)?;
                let lambda = lambda_of(&m, common.k);
                let complex = bgg_tensor_complex(&m, lambda)
                    .map_err(|e| anyhow!("tensor resolution: {e}"))?;
                let payload = json!({
                    "command": "sl2 bgg",
                    "config": bare_config(&common),
                    "lambda": lambda,
                    "betti": betti_rows(&complex),
                });
                emit(&payload, common.format);
                Ok(true)
            }
            Sl2Cmd::Cg(args) => {
                let m = signed_m(&args.common.m)?;
                let payload = json!({
                    "command": "sl2 cg",
                    "config": bare_config(&args.common),
                    "p": args.p,
                    "multiplicity": clebsch_gordan_mult(&m, args.p),
                });
                emit(&payload, args.common.format);
                Ok(true)
            }
            Sl2Cmd::Homology(common) => {
                let m = signed_m(&common.m)?;
                let (h1, h0) = lie_homology_dims(&m, common.k);
                let payload = json!({
                    "command": "sl2 homology",
                    "config": bare_config(&common),
                    "h1": h1,
                    "h0": h0,
                });
                emit(&payload, common.format);
                Ok(true)
            }
        },
        Command::Strata { sub } => {
            let (common, betti_only) = match sub {
                StrataCmd::Total(c) => (c, false),
                StrataCmd::Betti(c) => (c, true),
            };
            reject_z(&common)?;
            let m = signed_m(&common.m)?;
            let kappa = pick_kappa(common.kappa.as_deref(), common.seed)?;
            let os_cache = OSCache::default();
            let total = cached_total(&m, common.k, &kappa, common.cache_dir.as_deref(), &os_cache)?;
            let payload = if betti_only {
                json!({
                    "command": "strata betti",
                    "config": strata_config(&common, &kappa),
                    "betti": betti_rows(&total.complex),
                })
            } else {
                let b = aomoto_core::sl2::b_complex(&m, common.k);
                let sign_character = match gamma(&total, &b) {
                    Ok(character) => Value::Array(
                        character
                            .values
                            .iter()
                            .map(|((bold_j, kind), eps)| {
                                json!({
                                    "stratum": bold_j,
                                    "kind": kind,
                                    "epsilon": eps,
                                })
                            })
                            .collect(),
                    ),
                    Err(err) => Value::String(format!("unsolvable: {err}")),
                };
                json!({
                    "command": "strata total",
                    "config": strata_config(&common, &kappa),
                    "strata": aomoto_core::strata::stratum_classes(&m, common.k),
                    "dims_per_degree": total.labels.iter().map(Vec::len).collect::<Vec<_>>(),
                    "min_degree": total.complex.min_degree(),
                    "betti": betti_rows(&total.complex),
                    "sign_character": sign_character,
                })
            };
            emit(&payload, common.format);
            Ok(true)
        }
        Command::Verify { sub } => run_verify(sub),
    }
}

fn run_verify(sub: VerifyCmd) -> Result<bool> {
    match sub {
        VerifyCmd::Iso(common) => single_verify(&common, "verify iso", |m, k, kappa, cache| {
            vec![verify_iso(m, k, kappa, cache)]
        }),
        VerifyCmd::Dims(common) => single_verify(&common, "verify dims", |m, k, kappa, cache| {
            vec![verify_dims(m, k, kappa, cache)]
        }),
        VerifyCmd::Flag(common) => single_verify(&common, "verify flag", |m, k, _, _| {
            vec![verify_flag_kernel(m, k)]
        }),
        VerifyCmd::CondA(common) => single_verify(&common, "verify cond-a", |m, _, kappa, _| {
            condition_a_reports(m, kappa)
        }),
        VerifyCmd::Generic(common) => {
            let seed = common.seed;
            single_verify(&common, "verify generic", move |m, k, kappa, cache| {
                vec![genericity_scan(
                    m,
                    k,
                    &genericity_kappas(kappa, seed),
                    cache,
                )]
            })
        }
        VerifyCmd::All(args) => {
            if args.m.is_some() || args.k.is_some() {
                let m = args
                    .m
                    .clone()
                    .ok_or_else(|| anyhow!("--k without --m; pin both or neither"))?;
                let common = Common {
                    m,
                    k: args
                        .k
                        .ok_or_else(|| anyhow!("--m without --k; pin both or neither"))?,
                    z: None,
                    kappa: args.kappa.clone(),
                    seed: args.seed,
                    format: args.format,
                    cache_dir: args.cache_dir.clone(),
                    jobs: args.jobs,
                };
                let seed = args.seed;
                single_verify(&common, "verify all", move |m, k, kappa, cache| {
                    all_reports(m, k, kappa, seed, cache)
                })
            } else {
                grid_verify(&args)
            }
        }
    }
}

fn single_verify<F>(common: &Common, name: &str, checks: F) -> Result<bool>
where
    F: Fn(&[i64], usize, &Scalar, &OSCache) -> Vec<CheckReport>,
{
    reject_z(common)?;
    let m = signed_m(&common.m)?;
    let kappa = pick_kappa(common.kappa.as_deref(), common.seed)?;
    let os_cache = OSCache::default();
    let reports = checks(&m, common.k, &kappa, &os_cache);
    let pass = reports.iter().all(|r| r.pass);
    let payload = json!({
        "command": name,
        "config": strata_config(common, &kappa),
        "pass": pass,
        "reports": reports,
    });
    emit(&payload, common.format);
    Ok(pass)
}

fn condition_a_reports(m: &[i64], kappa: &Scalar) -> Vec<CheckReport> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for &mj in m {
        if seen.insert(mj) {
            out.push(condition_a_check(mj as usize, kappa));
            out.push(condition_a_zero_weight_control(mj as usize));
        }
    }
    out
}

fn genericity_kappas(kappa: &Scalar, seed: u64) -> Vec<Scalar> {
    let mut out = vec![kappa.clone()];
    for sample in sample_kappas(seed.wrapping_add(1), 8) {
        if out.len() == 3 {
            break;
        }
        if !out.contains(&sample) {
            out.push(sample);
        }
    }
    out
}

fn all_reports(
    m: &[i64],
    k: usize,
    kappa: &Scalar,
    seed: u64,
    cache: &OSCache,
) -> Vec<CheckReport> {
    let mut reports = vec![
        verify_iso(m, k, kappa, cache),
        verify_dims(m, k, kappa, cache),
        verify_flag_kernel(m, k),
    ];
    reports.extend(condition_a_reports(m, kappa));
    reports.push(genericity_scan(
        m,
        k,
        &genericity_kappas(kappa, seed),
        cache,
    ));
    reports
}

fn grid_verify(args: &AllArgs) -> Result<bool> {
    let kappa = pick_kappa(args.kappa.as_deref(), args.seed)?;
    let mut instances: Vec<(Vec<i64>, usize)> = Vec::new();
    for n in 1..=3usize {
        let mut m = vec![1i64; n];
        loop {
            for k in 1..=3usize {
                instances.push((m.clone(), k));
            }
            let mut idx = n;
            while idx > 0 && m[idx - 1] == 2 {
                m[idx - 1] = 1;
                idx -= 1;
            }
            if idx == 0 {
                break;
            }
            m[idx - 1] += 1;
        }
    }
    let os_cache = OSCache::default();
    let seed = args.seed;
    let worker = |(m, k): &(Vec<i64>, usize)| -> (Vec<i64>, usize, Vec<CheckReport>) {
        (m.clone(), *k, all_reports(m, *k, &kappa, seed, &os_cache))
    };
    let mut results: Vec<(Vec<i64>, usize, Vec<CheckReport>)> = match args.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .context("building the worker pool")?
            .install(|| {
                use rayon::prelude::*;
                instances.par_iter().map(worker).collect()
            }),
        None => {
            use rayon::prelude::*;
            instances.par_iter().map(worker).collect()
        }
    };
    results.sort_by(|a, b| (a.0.len(), &a.0, a.1).cmp(&(b.0.len(), &b.0, b.1)));
    let pass = results
        .iter()
        .all(|(_, _, reports)| reports.iter().all(|r| r.pass));
    let grid: Vec<Value> = results
        .iter()
        .map(|(m, k, reports)| {
            json!({
                "m": m,
                "k": k,
                "pass": reports.iter().all(|r| r.pass),
                "reports": reports,
            })
        })
        .collect();
    let payload = json!({
        "command": "verify all",
        "config": {
            "kappa": scalar_to_string(&kappa),
            "seed": args.seed,
            "grid": "n ≤ 3, k ≤ 3, m entries ≤ 2",
        },
        "pass": pass,
        "grid": grid,
    });
    emit(&payload, args.format);
    Ok(pass)
}

fn signed_m(m: &[u32]) -> Result<Vec<i64>> {
    if m.is_empty() {
        bail!("--m needs at least one entry");
    }
    if m.contains(&0) {
        bail!("--m entries must be positive");
    }
    Ok(m.iter().map(|&v| v as i64).collect())
}

fn parse_z(z: &[String]) -> Result<Vec<Scalar>> {
    z.iter()
        .map(|s| scalar_from_str(s).map_err(|e| anyhow!("--z entry {s:?}: {e}")))
        .collect()
}

fn reject_z(common: &Common) -> Result<()> {
    if common.z.is_some() {
        bail!("--z is fixed to the default points 1..n for this command");
    }
    Ok(())
}

fn pick_kappa(kappa: Option<&str>, seed: u64) -> Result<Scalar> {
    match kappa {
        Some(text) => {
            let value = scalar_from_str(text).map_err(|e| anyhow!("--kappa {text:?}: {e}"))?;
            if value == Scalar::default() {
                bail!("--kappa must be nonzero");
            }
            Ok(value)
        }
        None => Ok(sample_kappas(seed, 1).remove(0)),
    }
}

fn sample_kappas(seed: u64, count: usize) -> Vec<Scalar> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    while out.len() < count {
        let p: i64 = rng.random_range(101..10000);
        let q: i64 = rng.random_range(7..100);
        let kappa = aomoto_core::exact::frac(p, q);
        if seen.insert(scalar_to_string(&kappa)) {
            out.push(kappa);
        }
    }
    out
}

fn arrangement_of(common: &Common) -> Result<(WeightedArrangement, Value)> {
    let m = signed_m(&common.m)?;
    let m_usize: Vec<usize> = m.iter().map(|&v| v as usize).collect();
    let kappa = pick_kappa(common.kappa.as_deref(), common.seed)?;
    let spec = match &common.z {
        Some(z) => {
            let points = parse_z(z)?;
            if points.len() != m_usize.len() {
                bail!(
                    "--z needs one point per multiplicity ({} given, {} needed)",
                    points.len(),
                    m_usize.len()
                );
            }
            DiscriminantalSpec::new(m_usize, common.k, points, kappa.clone())?
        }
        None => DiscriminantalSpec::with_default_points(m_usize, common.k, kappa.clone())?,
    };
    let config = json!({
        "m": common.m,
        "k": common.k,
        "z": spec.z().iter().map(scalar_to_string).collect::<Vec<_>>(),
        "kappa": scalar_to_string(&kappa),
        "seed": common.seed,
    });
    Ok((discriminantal(&spec), config))
}

fn bare_config(common: &Common) -> Value {
    json!({
        "m": common.m,
        "k": common.k,
        "seed": common.seed,
    })
}

fn strata_config(common: &Common, kappa: &Scalar) -> Value {
    json!({
        "m": common.m,
        "k": common.k,
        "kappa": scalar_to_string(kappa),
        "seed": common.seed,
    })
}

fn hyperplane_strings(arrangement: &WeightedArrangement) -> Vec<String> {
    arrangement
        .hyperplanes()
        .iter()
        .zip(arrangement.weight_numerators())
        .map(|(h, w)| {
            let mut lhs = String::new();
            for (i, &c) in h.coefficients().iter().enumerate() {
                if c == 0 {
                    continue;
                }
                if lhs.is_empty() {
                    if c == -1 {
                        lhs.push('-');
                    } else if c != 1 {
                        lhs.push_str(&c.to_string());
                    }
                } else if c < 0 {
                    lhs.push_str(" - ");
                    if c != -1 {
                        lhs.push_str(&(-c).to_string());
                    }
                } else {
                    lhs.push_str(" + ");
                    if c != 1 {
                        lhs.push_str(&c.to_string());
                    }
                }
                lhs.push_str(&format!("t{}", i + 1));
            }
            let constant = h.constant();
            if constant != 0 {
                lhs.push_str(&format!(
                    " {} {}",
                    if constant < 0 { "-" } else { "+" },
                    constant.abs()
                ));
            }
            format!("{lhs} = 0  (numerator {})", scalar_to_string(w))
        })
        .collect()
}

fn betti_rows(complex: &aomoto_core::CochainComplex) -> Vec<Value> {
    complex
        .betti()
        .rows
        .iter()
        .map(|row| {
            json!({
                "degree": row.degree,
                "dim": row.dim,
                "betti": row.betti,
            })
        })
        .collect()
}

fn cache_path(dir: &Path, m: &[i64], k: usize, kappa: &Scalar) -> PathBuf {
    let m_part: Vec<String> = m.iter().map(i64::to_string).collect();
    let kappa_part = scalar_to_string(kappa)
        .replace('/', "over")
        .replace('-', "neg");
    dir.join(format!(
        "total_m{}_k{}_kappa{}_v{}.json",
        m_part.join("-"),
        k,
        kappa_part,
        env!("CARGO_PKG_VERSION")
    ))
}

fn cached_total(
    m: &[i64],
    k: usize,
    kappa: &Scalar,
    cache_dir: Option<&Path>,
    os_cache: &OSCache,
) -> Result<TotalSkewComplex> {
    let path = cache_dir.map(|dir| cache_path(dir, m, k, kappa));
    if let Some(path) = &path {
        if let Ok(text) = fs::read_to_string(path) {
            if let Ok(total) = serde_json::from_str::<TotalSkewComplex>(&text) {
                if total.m == m && total.k == k {
                    return Ok(total);
                }
            }
        }
    }
    let total = total_complex(m, k, kappa, os_cache)
        .map_err(|e| anyhow!("assembling the total complex: {e}"))?;
    if let Some(path) = &path {
        if let Some(dir) = path.parent() {
            let _ = fs::create_dir_all(dir);
        }
        if let Ok(text) = serde_json::to_string(&total) {
            let _ = fs::write(path, text);
        }
    }
    Ok(total)
}

fn emit(payload: &Value, format: Format) {
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(payload).expect("reports serialize")
        ),
        Format::Table => {
            let mut out = String::new();
            render_table(payload, 0, &mut out);
            print!("{out}");
        }
    }
}

fn render_table(value: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (key, inner) in map {
                match inner {
                    Value::Object(_) | Value::Array(_) if !is_scalar_array(inner) => {
                        out.push_str(&format!("{pad}{key}:\n"));
                        render_table(inner, indent + 2, out);
                    }
                    _ => out.push_str(&format!("{pad}{key}: {}\n", inline(inner))),
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match item {
                    Value::Object(_) | Value::Array(_) if !is_scalar_array(item) => {
                        out.push_str(&format!("{pad}-\n"));
                        render_table(item, indent + 2, out);
                    }
                    _ => out.push_str(&format!("{pad}- {}\n", inline(item))),
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", inline(value))),
    }
}

fn is_scalar_array(value: &Value) -> bool {
    matches!(value, Value::Array(items) if items.iter().all(|v| !matches!(v, Value::Object(_) | Value::Array(_))))
}

fn inline(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        Value::Array(items) => {
            let rendered: Vec<String> = items.iter().map(inline).collect();
            format!("[{}]", rendered.join(", "))
        }
        other => other.to_string(),
    }
}
