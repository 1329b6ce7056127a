use std::fs::File;
use std::io::{self, BufWriter};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use planar_codes::doc::GraphDocument;
use planar_codes::generate::{generate, DegreeProfile, EnsembleSpec};
use planar_codes::sweep::{run_sweep, write_csv, RateGrid, SweepConfig};
use planar_codes_core::bound::{certify_bound, BoundReport, BoundStatus};
use planar_codes_core::Ratio;
use serde_json::json;

const EXIT_VIOLATION: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_OUT_OF_SCOPE: u8 = 3;

#[derive(Parser)]
#[command(name = "planar-codes", version, about = "Minimum-distance bounds for codes on planar Tanner graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certify the rate bound for one graph and print the report as JSON.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        pretty: bool,
    },
    /// Exact minimum distance, or a weight-limited search for large codes.
    Oracle {
        file: PathBuf,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Certify, run the oracle, and check that they agree.
    Verify {
        file: PathBuf,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Oracle distance against the bound over random ensembles, as CSV.
    Sweep(SweepArgs),
    /// Write random planar Tanner graphs, one JSON document per file.
    Generate(GenerateArgs),
}

#[derive(Args)]
struct SweepArgs {
    /// `a:b:step` or `r1,r2,...`, exact rationals or decimals.
    #[arg(long)]
    rates: RateGrid,
    #[arg(long, default_value_t = 100)]
    per_rate: usize,
    /// `lo:hi`, inclusive.
    #[arg(long, default_value = "4:10", value_parser = parse_range)]
    m_range: (usize, usize),
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 24)]
    max_n: usize,
    /// Print `NA` for timings so reruns produce identical bytes.
    #[arg(long)]
    deterministic: bool,
    /// CSV destination; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenerateArgs {
    /// Ensemble spec as JSON; replaces the individual flags.
    #[arg(long, conflicts_with_all = ["m", "one", "two", "three", "high", "rate"])]
    spec: Option<PathBuf>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value_t = 0)]
    one: usize,
    #[arg(long, default_value_t = 0)]
    two: usize,
    #[arg(long, default_value_t = 0)]
    three: usize,
    /// Degrees of bits above three, comma separated.
    #[arg(long, value_delimiter = ',')]
    high: Vec<usize>,
    /// Expected design rate; checked against the profile.
    #[arg(long)]
    rate: Option<Ratio>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    count: usize,
    #[arg(long)]
    out_dir: PathBuf,
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(':').ok_or("expected lo:hi")?;
    let (a, b) = (a.trim().parse().map_err(|_| "bad lower bound")?, b.trim().parse().map_err(|_| "bad upper bound")?);
    if a > b {
        return Err(String::from("empty range"));
    }
    Ok((a, b))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Analyze { file, pretty } => analyze(&file, pretty),
        Command::Oracle { file, cap } => oracle(&file, cap),
        Command::Verify { file, cap } => verify(&file, cap),
        Command::Sweep(args) => sweep(args),
        Command::Generate(args) => generate_cmd(args),
    }
}

fn load_report(file: &Path) -> Result<(planar_codes_core::TannerGraph, BoundReport)> {
    let doc = GraphDocument::load(file)?;
    let (g, emb) = doc.graph_and_embedding()?;
    let report = certify_bound(&g, &emb)?;
    Ok((g, report))
}

fn summary(r: &BoundReport) -> String {
    let p = r.p.map_or_else(|| String::from("-"), |p| p.to_string());
    match r.status {
        BoundStatus::Certified => format!(
            "n={} m={} R={} p={p}: d <= {} via {:?}{} (witness weight {})",
            r.n,
            r.m,
            r.design_rate,
            r.bound.unwrap_or_default(),
            r.path.expect("certified reports have a path"),
            if r.outside_family { ", outside complete 3-graphs" } else { "" },
            r.witness.as_ref().map_or(0, |w| w.weight),
        ),
        BoundStatus::OutOfScope => format!("n={} m={} R={}: rate below 9/16, no bound claimed", r.n, r.m, r.design_rate),
        BoundStatus::NotCertifiable => {
            format!("n={} m={} R={} p={p}: not certified: {}", r.n, r.m, r.design_rate, r.reason.as_deref().unwrap_or("no witness"))
        }
    }
}

fn analyze(file: &Path, pretty: bool) -> Result<u8> {
    let (_, report) = load_report(file)?;
    eprintln!("{}", summary(&report));
    let text = if pretty { serde_json::to_string_pretty(&report)? } else { serde_json::to_string(&report)? };
    println!("{text}");
    Ok(if report.status == BoundStatus::OutOfScope { EXIT_OUT_OF_SCOPE } else { 0 })
}

fn oracle(file: &Path, cap: Option<usize>) -> Result<u8> {
    let g = GraphDocument::load(file)?.graph()?;
    let summary = g.code_summary(false)?;
    let x = g.min_weight_codeword(cap)?;
    let k = summary.n - summary.rank;
    let exact = k <= planar_codes_core::gf2::FULL_ENUMERATION_MAX_DIM;
    let out = json!({
        "n": g.n(),
        "k": k,
        "exact": exact,
        "d": x.as_ref().map(|x| x.weight()),
        "codeword": x.as_ref().map(|x| x.to_string()),
        "cap": (!exact).then(|| cap.unwrap_or(planar_codes_core::tanner::DEFAULT_WEIGHT_CAP)),
    });
    println!("{out}");
    Ok(0)
}

fn verify(file: &Path, cap: Option<usize>) -> Result<u8> {
    let (g, report) = load_report(file)?;
    let d = g.min_distance_oracle(cap)?;
    let claimed = report.bound.or(report.rate_bound.filter(|_| report.status != BoundStatus::OutOfScope));
    let violation = match (d, claimed) {
        (Some(d), Some(b)) => d > b,
        // Nothing within the cap: fine only if the cap already exceeds the bound.
        (None, Some(b)) => cap.unwrap_or(planar_codes_core::tanner::DEFAULT_WEIGHT_CAP) < b,
        _ => false,
    };
    let witness_ok = report.witness_is_valid(&g);
    println!(
        "{}",
        json!({
            "status": report.status,
            "bound": report.bound,
            "rate_bound": report.rate_bound,
            "oracle_d": d,
            "witness_valid": witness_ok,
            "agree": !violation && witness_ok,
        })
    );
    eprintln!("{}", summary(&report));
    if violation || !witness_ok {
        eprintln!("bound violated: oracle distance {d:?} exceeds {claimed:?}");
        return Ok(EXIT_VIOLATION);
    }
    Ok(if report.status == BoundStatus::OutOfScope { EXIT_OUT_OF_SCOPE } else { 0 })
}

fn sweep(a: SweepArgs) -> Result<u8> {
    let cfg = SweepConfig { rates: a.rates.0, per_rate: a.per_rate, m_range: a.m_range, seed: a.seed, max_n: a.max_n, deterministic: a.deterministic };
    let result = run_sweep(&cfg)?;
    match &a.out {
        Some(path) => write_csv(&result.rows, BufWriter::new(File::create(path).with_context(|| format!("creating {}", path.display()))?))?,
        None => write_csv(&result.rows, io::stdout().lock())?,
    }
    let violations: usize = result.rows.iter().map(|r| r.violations).sum();
    if violations > 0 {
        eprintln!("{violations} bound violation(s)");
        return Ok(EXIT_VIOLATION);
    }
    Ok(0)
}

fn generate_cmd(a: GenerateArgs) -> Result<u8> {
    let spec = match &a.spec {
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            serde_json::from_str::<EnsembleSpec>(&text).with_context(|| format!("parsing {}", path.display()))?
        }
        None => {
            let Some(m) = a.m else { bail!("either --spec or --m is required") };
            EnsembleSpec {
                m,
                target_rate: a.rate,
                degree_profile: DegreeProfile { one: a.one, two: a.two, three: a.three, high: a.high.clone() },
                seed: a.seed,
                count: a.count,
            }
        }
    };
    std::fs::create_dir_all(&a.out_dir).with_context(|| format!("creating {}", a.out_dir.display()))?;
    for g in generate(&spec)? {
        let path = a.out_dir.join(format!("graph-{:04}.json", g.index));
        g.document.save(&path)?;
        println!("{}", path.display());
    }
    Ok(0)
}
