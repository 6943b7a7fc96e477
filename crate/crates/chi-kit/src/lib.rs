//! Command-line harness: parses arguments and config, schedules the
//! selected verification instances over a bounded thread pool, and emits
//! deterministic text or JSON reports.
//!
//! Exit codes: 0 when every check passes, 1 when any identity fails,
//! 2 on usage or configuration errors.

pub mod config;
pub mod suites;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use config::{Format, RunConfig};
use suites::{instances, statement_table, Instance, Suite};

#[derive(Parser, Debug)]
#[command(
    name = "chi-kit",
    version,
    about = "Exact machine checks for shuffle, cone, form and total-complex identities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct CommonArgs {
    /// Flat key=value config file; flags override its entries.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Report format.
    #[arg(long, value_parser = ["text", "json"], global = true)]
    format: Option<String>,
    /// Write the report to a file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Worker threads (also capped by CHI_KIT_THREADS).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for the randomized property suites.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Include wall-clock timings in the report (off by default so that
    /// reports are byte-identical across runs).
    #[arg(long, global = true)]
    timings: bool,
    /// Deliberately flip one sign to demonstrate the failure exit code.
    #[arg(long, global = true)]
    negative_control: bool,
    /// Cap on the instance grids (m+n, and m+n+r).
    #[arg(long, global = true)]
    max_size: Option<usize>,
}

#[derive(Args, Debug, Clone)]
struct PairArgs {
    /// Run a single instance with this first index.
    #[arg(long, allow_hyphen_values = true)]
    m: Option<i64>,
    /// Run a single instance with this second index.
    #[arg(long, allow_hyphen_values = true)]
    n: Option<i64>,
    /// Third index (coassociativity only).
    #[arg(long, allow_hyphen_values = true)]
    r: Option<i64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Shuffle relations and character multiplicativity.
    Shuffle {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Cone subdivision identity and the lattice enumeration oracle.
    Brion {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        pair: PairArgs,
        /// Truncation bound for the enumeration oracle.
        #[arg(long)]
        bound: Option<i64>,
        /// Write enumerated lattice points as CSV.
        #[arg(long)]
        dump_points: Option<PathBuf>,
    },
    /// Compatibility of the simplicial and cubical shuffle morphisms.
    EzDiagram {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Boundary compatibility of the shuffle morphisms.
    CoLeibniz {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Coassociativity of the shuffle morphisms.
    Coassoc {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Pullback closed form of the logarithmic forms.
    ThetaPullback {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Shuffle sum versus product of pullbacks on the cube.
    ThetaEz {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        pair: PairArgs,
    },
    /// First-page kernels, images and exactness.
    E1 {
        #[command(flatten)]
        common: CommonArgs,
        /// Largest page degree.
        #[arg(long)]
        p_max: Option<u32>,
    },
    /// Cone pairing identities with symbolic parameter.
    ConeClaim {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Leibniz rule and associativity of the exterior product.
    Leibniz {
        #[command(flatten)]
        common: CommonArgs,
        /// Number of random pairs/triples.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Squared differentials vanish over random models.
    Dsq {
        #[command(flatten)]
        common: CommonArgs,
        /// Number of random models.
        #[arg(long)]
        models: Option<usize>,
        /// Total number of random elements.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Sign-power recursions for the normalization constants.
    Constants {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Every suite.
    All {
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Serialize)]
struct CheckJson {
    statement: String,
    paper_ref: String,
    params: BTreeMap<String, i64>,
    pass: bool,
    details: BTreeMap<String, String>,
    elapsed_ms: u64,
}

#[derive(Serialize)]
struct SuiteJson {
    tool: String,
    version: String,
    config: BTreeMap<String, String>,
    statements: BTreeMap<String, String>,
    checks: Vec<CheckJson>,
    overall_pass: bool,
    total_elapsed_ms: u64,
}

/// Entry point; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            // clap renders help/version on stdout with success status
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(all_pass) => {
            if all_pass {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("chi-kit: error: {e:#}");
            2
        }
    }
}

fn apply_common(cfg: &mut RunConfig, common: &CommonArgs) -> Result<()> {
    if let Some(path) = &common.config {
        cfg.apply_file(path)?;
    }
    if let Some(f) = &common.format {
        cfg.format = match f.as_str() {
            "json" => Format::Json,
            _ => Format::Text,
        };
    }
    if let Some(o) = &common.output {
        cfg.output = Some(o.clone());
    }
    if let Some(t) = common.threads {
        cfg.threads = t;
    }
    if let Some(s) = common.seed {
        cfg.seed = s;
    }
    if common.timings {
        cfg.timings = true;
    }
    if common.negative_control {
        cfg.negative_control = true;
    }
    if let Some(ms) = common.max_size {
        cfg.max_size = ms;
    }
    cfg.validate()
}

fn check_pair(pair: &PairArgs, needs_r: bool) -> Result<Option<(usize, usize, Option<usize>)>> {
    let conv = |v: i64, name: &str| -> Result<usize> {
        usize::try_from(v).map_err(|_| anyhow::anyhow!("--{name} must be non-negative"))
    };
    match (pair.m, pair.n) {
        (None, None) => Ok(None),
        (Some(m), n) => {
            let m = conv(m, "m")?;
            let n = conv(n.unwrap_or(0), "n")?;
            let r = match pair.r {
                Some(r) => Some(conv(r, "r")?),
                None if needs_r => Some(0),
                None => None,
            };
            Ok(Some((m, n, r)))
        }
        (None, Some(n)) => {
            let n = conv(n, "n")?;
            Ok(Some((0, n, if needs_r { Some(0) } else { None })))
        }
    }
}

fn execute(cli: Cli) -> Result<bool> {
    let mut cfg = RunConfig::default();
    let (suite, fixed) = match &cli.command {
        Command::Shuffle { common, pair } => {
            apply_common(&mut cfg, common)?;
            (Suite::Shuffle, check_pair(pair, false)?)
        }
        Command::Brion {
            common,
            pair,
            bound,
            dump_points,
        } => {
            apply_common(&mut cfg, common)?;
            if let Some(b) = bound {
                anyhow::ensure!(*b >= 0, "--bound must be non-negative");
                cfg.bound = *b;
            }
            if let Some(p) = dump_points {
                cfg.dump_points = Some(p.clone());
            }
            (Suite::Brion, check_pair(pair, false)?)
        }
        Command::EzDiagram { common, pair } => {
            apply_common(&mut cfg, common)?;
            (Suite::EzDiagram, check_pair(pair, false)?)
        }
        Command::CoLeibniz { common, pair } => {
            apply_common(&mut cfg, common)?;
            let fixed = check_pair(pair, false)?;
            if let Some((m, n, _)) = fixed {
                anyhow::ensure!(m + n >= 1, "co-leibniz needs m + n >= 1");
            }
            (Suite::CoLeibniz, fixed)
        }
        Command::Coassoc { common, pair } => {
            apply_common(&mut cfg, common)?;
            (Suite::Coassoc, check_pair(pair, true)?)
        }
        Command::ThetaPullback { common, pair } => {
            apply_common(&mut cfg, common)?;
            let fixed = check_pair(pair, false)?;
            if let Some((n, _, _)) = fixed {
                anyhow::ensure!(n >= 1, "theta-pullback needs m >= 1");
            }
            (Suite::ThetaPullback, fixed)
        }
        Command::ThetaEz { common, pair } => {
            apply_common(&mut cfg, common)?;
            (Suite::ThetaEz, check_pair(pair, false)?)
        }
        Command::E1 { common, p_max } => {
            apply_common(&mut cfg, common)?;
            if let Some(p) = p_max {
                anyhow::ensure!(*p >= 1, "--p-max must be positive");
                cfg.p_max = *p;
            }
            (Suite::E1, None)
        }
        Command::ConeClaim { common } => {
            apply_common(&mut cfg, common)?;
            (Suite::ConeClaim, None)
        }
        Command::Leibniz { common, samples } => {
            apply_common(&mut cfg, common)?;
            if let Some(s) = samples {
                cfg.samples = *s;
            }
            (Suite::Leibniz, None)
        }
        Command::Dsq {
            common,
            models,
            samples,
        } => {
            apply_common(&mut cfg, common)?;
            if let Some(m) = models {
                cfg.models = *m;
            }
            if let Some(s) = samples {
                cfg.samples = *s;
            }
            (Suite::Dsq, None)
        }
        Command::Constants { common } => {
            apply_common(&mut cfg, common)?;
            (Suite::Constants, None)
        }
        Command::All { common } => {
            apply_common(&mut cfg, common)?;
            (Suite::All, None)
        }
    };

    let list = instances(suite, &cfg, fixed);
    let report = run_instances(&cfg, &list)?;

    if let Some(path) = &cfg.dump_points {
        dump_points_csv(&cfg, path)?;
    }

    let rendered = match cfg.format {
        Format::Json => serde_json::to_string_pretty(&report).context("serializing report")? + "\n",
        Format::Text => render_text(&report),
    };
    match &cfg.output {
        Some(path) => {
            std::fs::write(path, rendered.as_bytes())
                .with_context(|| format!("writing report to {}", path.display()))?;
        }
        None => {
            print!("{rendered}");
        }
    }
    let failures = report.checks.iter().filter(|c| !c.pass).count();
    if failures > 0 {
        eprintln!(
            "chi-kit: {failures} of {} checks failed",
            report.checks.len()
        );
    } else {
        eprintln!("chi-kit: all {} checks passed", report.checks.len());
    }
    Ok(report.overall_pass)
}

fn run_instances(cfg: &RunConfig, list: &[Instance]) -> Result<SuiteJson> {
    use rayon::prelude::*;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.effective_threads())
        .build()
        .context("building thread pool")?;
    let start = Instant::now();
    // Indexed parallel map keeps submission order, so the report order is
    // the deterministic construction order regardless of scheduling.
    let results: Vec<(chi_core::report::VerificationReport, u64)> = pool.install(|| {
        list.par_iter()
            .map(|inst| {
                let t = Instant::now();
                let rep = inst.run();
                (rep, t.elapsed().as_millis() as u64)
            })
            .collect()
    });
    let total_ms = start.elapsed().as_millis() as u64;

    let table = statement_table();
    let checks: Vec<CheckJson> = results
        .into_iter()
        .map(|(rep, ms)| CheckJson {
            statement: rep.statement.to_string(),
            paper_ref: table.get(rep.statement).copied().unwrap_or("").to_string(),
            params: rep
                .params
                .iter()
                .map(|(k, v)| (k.to_string(), *v))
                .collect(),
            pass: rep.pass,
            details: {
                let mut d: BTreeMap<String, String> = rep
                    .details
                    .iter()
                    .cloned()
                    .collect();
                d.insert("lhs_terms".into(), rep.lhs_terms.to_string());
                d.insert("rhs_terms".into(), rep.rhs_terms.to_string());
                d
            },
            elapsed_ms: if cfg.timings { ms } else { 0 },
        })
        .collect();

    let overall_pass = checks.iter().all(|c| c.pass);
    Ok(SuiteJson {
        tool: "chi-kit".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        config: cfg.echo(),
        statements: table
            .iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect(),
        checks,
        overall_pass,
        total_elapsed_ms: if cfg.timings { total_ms } else { 0 },
    })
}

fn render_text(report: &SuiteJson) -> String {
    let mut out = String::new();
    for c in &report.checks {
        let params: Vec<String> = c.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        out.push_str(&format!(
            "[{}] {} {}\n",
            if c.pass { "PASS" } else { "FAIL" },
            c.statement,
            params.join(" ")
        ));
        if !c.pass {
            for (k, v) in &c.details {
                out.push_str(&format!("       {k}: {v}\n"));
            }
        }
    }
    out.push_str(&format!(
        "overall: {} ({} checks, seed {})\n",
        if report.overall_pass { "PASS" } else { "FAIL" },
        report.checks.len(),
        report.config.get("seed").map(String::as_str).unwrap_or("-")
    ));
    out
}

/// CSV of the lattice points produced by the enumeration oracle at the
/// configured bound, for every dimension up to 4.
fn dump_points_csv(cfg: &RunConfig, path: &std::path::Path) -> Result<()> {
    let mut f = std::fs::File::create(path)
        .with_context(|| format!("creating {}", path.display()))?;
    writeln!(f, "n,point")?;
    for n in 0..=4usize {
        let oracle = chi_core::cones::enumerate_oracle(n, cfg.bound);
        for p in &oracle.points {
            let coords: Vec<String> = p.iter().map(|c| c.to_string()).collect();
            writeln!(f, "{n},\"{}\"", coords.join(","))?;
        }
    }
    Ok(())
}
