use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use simplicode::analyze::{
    cross_check, family_sweep, full_report, is_griesmer_attaining, CodeReport, Engines, FaceScope,
    ReportOptions, DEFAULT_BUDGET,
};
use simplicode::reproduce::{compare, golden_path, run_checks, snapshot, GOLDEN_JSON};
use simplicode::{build_code, DefiningSetSpec, Error};

const EXIT_USAGE: u8 = 1;
const EXIT_MISMATCH: u8 = 2;
const EXIT_STRUCTURAL: u8 = 3;

#[derive(Parser)]
#[command(
    name = "simplicode",
    version,
    about = "Binary subfield codes from simplicial complexes over F2[u,v]/(u^2, v^2)"
)]
struct Cli {
    /// Worker threads for the parallel engines (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct EngineArgs {
    /// Comma-separated subset of closedform,charsum,bruteforce.
    #[arg(long, default_value = "closedform,charsum,bruteforce")]
    engines: String,
    /// Brute force is skipped when 2^k * n exceeds this.
    #[arg(long, env = "SIMPLICODE_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u128,
}

impl EngineArgs {
    fn engines(&self) -> anyhow::Result<Engines> {
        let e = Engines::parse(&self.engines)?;
        if !(e.closedform || e.charsum || e.bruteforce) {
            bail!(Usage("select at least one engine".into()));
        }
        Ok(e)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Full report for one spec.
    Analyze {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[command(flatten)]
        engines: EngineArgs,
        /// Also build the Cayley graph of a two-weight code and count its parameters.
        #[arg(long)]
        build_graph: bool,
    },
    /// Cross-check the engines on every spec of a family for m = 1..=M.
    Verify {
        /// Family part, 1 to 6.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=6))]
        family: u8,
        /// Largest m.
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[command(flatten)]
        engines: EngineArgs,
    },
    /// Strongly regular graph parameters of a projective two-weight code.
    Srg {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Build the graph and count its parameters.
        #[arg(long)]
        build_graph: bool,
        #[command(flatten)]
        engines: EngineArgs,
    },
    /// Run the built-in golden suite.
    Reproduce {
        /// Rewrite the golden file from the computed values.
        #[arg(long)]
        bless: bool,
        /// Golden file to compare against or bless (default: the compiled-in snapshot).
        #[arg(long)]
        golden: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Dump the generator matrix.
    Build {
        #[arg(long)]
        spec: PathBuf,
        /// `text` prints 0/1 rows, `hex` one column per line.
        #[arg(long, value_enum, default_value = "text")]
        output: MatrixFormat,
        /// Print the row-reduced basis instead of the raw generator.
        #[arg(long)]
        reduced: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MatrixFormat {
    Text,
    Hex,
}

/// Bad input: exit code 1.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

/// A run that completed but found failures.
#[derive(Debug)]
struct Failed(u8, String);

impl std::fmt::Display for Failed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.1)
    }
}

impl std::error::Error for Failed {}

fn exit_code(err: &anyhow::Error) -> u8 {
    if let Some(Failed(code, _)) = err.downcast_ref::<Failed>() {
        return *code;
    }
    match err.downcast_ref::<Error>() {
        Some(
            Error::DistributionMismatch { .. }
            | Error::DimensionDisagreement { .. }
            | Error::MethodDisagreement { .. }
            | Error::MultiplicityMismatch { .. }
            | Error::NonIntegralWeight { .. }
            | Error::InvalidTableRow(_),
        ) => EXIT_MISMATCH,
        Some(
            Error::NotTwoWeightProjective(_)
            | Error::NotStronglyRegular(_)
            | Error::NonIntegralMu { .. }
            | Error::InconsistentSrgParameters { .. }
            | Error::NotSelfOrthogonal
            | Error::ZeroCode,
        ) => EXIT_STRUCTURAL,
        _ => EXIT_USAGE,
    }
}

fn read_spec(path: &Path) -> anyhow::Result<DefiningSetSpec> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    DefiningSetSpec::from_json_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn to_json(v: &impl serde::Serialize) -> anyhow::Result<String> {
    Ok(serde_json::to_string_pretty(v)?)
}

fn warn_skipped(r: &CodeReport) {
    for s in &r.skipped_engines {
        eprintln!("warning: {} skipped: {}", s.engine, s.reason);
    }
}

fn analyze(
    spec: &Path,
    format: Format,
    engines: &EngineArgs,
    build_graph: bool,
) -> anyhow::Result<()> {
    let spec = read_spec(spec)?;
    let options = ReportOptions {
        engines: engines.engines()?,
        budget: engines.budget,
        build_graph,
    };
    let r = full_report(&spec, &options)?;
    warn_skipped(&r);
    match format {
        Format::Text => print!("{}", r.to_text()),
        Format::Json => println!("{}", to_json(&r)?),
        Format::Csv => print!("{}", r.distribution.to_csv()),
    }
    Ok(())
}

/// All faces up to m = 3; one face per size above that.
fn scope_for(m: usize) -> FaceScope {
    if m <= 3 {
        FaceScope::All
    } else {
        FaceScope::Prefixes
    }
}

fn verify(family: u8, m_max: usize, format: Format, engines: &EngineArgs) -> anyhow::Result<()> {
    // family 5 needs four distinct face sizes, so it has no instance below m = 4
    let limit = match family {
        1..=3 | 5 => 4,
        _ => 3,
    };
    if m_max == 0 || m_max > limit {
        bail!(Usage(format!(
            "--m must be between 1 and {limit} for family {family}"
        )));
    }
    let selected = engines.engines()?;
    let mut cases = Vec::new();
    let mut skipped_hypotheses = 0;
    for m in 1..=m_max {
        let sweep = family_sweep(family, m, scope_for(m), false)?;
        skipped_hypotheses += sweep.skipped;
        cases.extend(sweep.cases.into_iter().map(|c| (m, c)));
    }
    let results: Vec<Value> = cases
        .par_iter()
        .map(|(m, c)| {
            let mut row = json!({"m": m, "spec": c.spec.to_json()});
            match cross_check(&c.spec, selected, engines.budget) {
                Ok(cc) => {
                    let w = &cc.distribution;
                    let k = u64::from(w.dimension().unwrap_or(0));
                    let d = w.min_distance();
                    // parts 2 and 6 attain the Griesmer bound
                    let griesmer = match d {
                        Some(d) if matches!(family, 2 | 6) => {
                            is_griesmer_attaining(w.length(), k, d)
                        }
                        _ => true,
                    };
                    row["parameters"] = json!([w.length(), k, d]);
                    row["engines"] = json!(cc.engines_run);
                    row["skipped_engines"] = json!(cc.skipped);
                    row["status"] = json!(if griesmer { "pass" } else { "fail" });
                    if !griesmer {
                        row["error"] = json!("does not attain the Griesmer bound");
                    }
                }
                Err(e) => {
                    row["status"] = json!("fail");
                    row["error"] = json!(e.to_string());
                }
            }
            row
        })
        .collect();
    let failed = results.iter().filter(|r| r["status"] == "fail").count();
    let passed = results.len() - failed;
    let budget_skips = results
        .iter()
        .filter(|r| {
            r["skipped_engines"]
                .as_array()
                .is_some_and(|a| !a.is_empty())
        })
        .count();
    if budget_skips > 0 {
        eprintln!(
            "warning: {budget_skips} specs ran without every selected engine (see skipped_engines)"
        );
    }
    match format {
        Format::Json => {
            let out = json!({
                "family": family,
                "m_max": m_max,
                "passed": passed,
                "failed": failed,
                "skipped_hypotheses": skipped_hypotheses,
                "cases": results,
            });
            println!("{}", to_json(&out)?);
        }
        Format::Csv => {
            println!("m,status,n,k,d,engines,spec");
            for r in &results {
                let p = &r["parameters"];
                let engines = r["engines"].as_array().map_or(String::new(), |a| {
                    a.iter()
                        .filter_map(Value::as_str)
                        .collect::<Vec<_>>()
                        .join("+")
                });
                println!(
                    "{},{},{},{},{},{},\"{}\"",
                    r["m"],
                    r["status"].as_str().unwrap_or(""),
                    p[0],
                    p[1],
                    p[2],
                    engines,
                    r["spec"].to_string().replace('"', "\"\"")
                );
            }
        }
        Format::Text => {
            for r in &results {
                let status = if r["status"] == "pass" {
                    "PASS"
                } else {
                    "FAIL"
                };
                let extra = r["error"]
                    .as_str()
                    .map_or(String::new(), |e| format!("  {e}"));
                println!(
                    "{status} m={} {} {}{extra}",
                    r["m"], r["parameters"], r["spec"]
                );
            }
            println!("family {family}, m <= {m_max}: {passed} passed, {failed} failed, {skipped_hypotheses} skipped (hypotheses)");
        }
    }
    if failed > 0 {
        bail!(Failed(EXIT_MISMATCH, format!("{failed} specs failed")));
    }
    Ok(())
}

fn srg(spec: &Path, format: Format, build_graph: bool, engines: &EngineArgs) -> anyhow::Result<()> {
    let spec = read_spec(spec)?;
    let options = ReportOptions {
        engines: engines.engines()?,
        budget: engines.budget,
        build_graph,
    };
    let r = full_report(&spec, &options)?;
    warn_skipped(&r);
    let section = r.srg.as_ref().ok_or_else(|| {
        Error::NotTwoWeightProjective(format!(
            "{} nonzero weights, projective: {}",
            r.weight_count,
            r.projective
                .map_or("unknown".to_string(), |p| p.to_string())
        ))
    })?;
    if build_graph && section.verification.is_none() {
        eprintln!("warning: k = {} is too large to build the graph", r.k);
    }
    match format {
        Format::Json => println!("{}", to_json(section)?),
        Format::Text | Format::Csv => {
            let p = &section.params;
            let c = section.complement;
            if format == Format::Csv {
                println!("graph,n,k,lambda,mu");
                println!("computed,{},{},{},{}", p.n1, p.k1, p.lambda, p.mu);
                println!("complement,{},{},{},{}", c.0, c.1, c.2, c.3);
                if let Some(v) = &section.verification {
                    let m = v.measured;
                    println!("measured,{},{},{},{}", m.0, m.1, m.2, m.3);
                }
            } else {
                println!("weights     {} and {}", p.w1, p.w2);
                println!("computed    ({}, {}, {}, {})", p.n1, p.k1, p.lambda, p.mu);
                println!("complement  ({}, {}, {}, {})", c.0, c.1, c.2, c.3);
                if let Some(v) = &section.verification {
                    let m = v.measured;
                    let verdict = if v.verified { "verified" } else { "MISMATCH" };
                    println!("measured    ({}, {}, {}, {}) {verdict}", m.0, m.1, m.2, m.3);
                }
            }
        }
    }
    if let Some(v) = section.verification.filter(|v| !v.verified) {
        return Err(Error::NotStronglyRegular(format!(
            "measured {:?}, computed {:?}",
            v.measured,
            v.computed.tuple()
        ))
        .into());
    }
    Ok(())
}

fn reproduce(bless: bool, golden: Option<PathBuf>, format: Format) -> anyhow::Result<()> {
    let checks = run_checks()?;
    let golden_value: Value = if bless {
        let path = golden.unwrap_or_else(golden_path);
        let snap = snapshot(&checks);
        fs::write(&path, to_json(&snap)? + "\n")
            .with_context(|| format!("writing {}", path.display()))?;
        eprintln!("blessed {}", path.display());
        snap
    } else {
        let text = match &golden {
            Some(p) => fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?,
            None => GOLDEN_JSON.to_string(),
        };
        serde_json::from_str(&text).context("parsing golden file")?
    };
    let outcomes = compare(&checks, &golden_value);
    let passed = outcomes.iter().filter(|o| o.passed).count();
    match format {
        Format::Json => println!(
            "{}",
            to_json(&json!({"passed": passed, "total": outcomes.len(), "checks": outcomes}))?
        ),
        Format::Csv => {
            println!("check,status,detail");
            for o in &outcomes {
                let status = if o.passed { "pass" } else { "fail" };
                println!(
                    "\"{}\",{status},\"{}\"",
                    o.name,
                    o.detail.replace('"', "\"\"")
                );
            }
        }
        Format::Text => {
            for o in &outcomes {
                let status = if o.passed { "PASS" } else { "FAIL" };
                let detail = if o.detail.is_empty() {
                    String::new()
                } else {
                    format!("  {}", o.detail)
                };
                println!("{status} {}{detail}", o.name);
            }
            println!("{passed}/{} golden checks passed", outcomes.len());
        }
    }
    if passed < outcomes.len() {
        let first = outcomes
            .iter()
            .find(|o| !o.passed)
            .expect("a failure exists");
        bail!(Failed(
            EXIT_MISMATCH,
            format!("{}: {}", first.name, first.detail)
        ));
    }
    Ok(())
}

fn build(spec: &Path, output: MatrixFormat, reduced: bool) -> anyhow::Result<()> {
    let code = build_code(&read_spec(spec)?)?;
    let g = if reduced {
        code.reduced()
    } else {
        code.generator()
    };
    match output {
        MatrixFormat::Text => print!("{}", g.to_text()),
        MatrixFormat::Hex => print!("{}", g.to_column_hex()),
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<()> {
    if let Some(n) = cli.workers {
        if n == 0 {
            bail!(Usage("--workers must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| anyhow!("worker pool: {e}"))?;
    }
    match cli.command {
        Command::Analyze {
            spec,
            format,
            engines,
            build_graph,
        } => analyze(&spec, format, &engines, build_graph),
        Command::Verify {
            family,
            m,
            format,
            engines,
        } => verify(family, m, format, &engines),
        Command::Srg {
            spec,
            format,
            build_graph,
            engines,
        } => srg(&spec, format, build_graph, &engines),
        Command::Reproduce {
            bless,
            golden,
            format,
        } => reproduce(bless, golden, format),
        Command::Build {
            spec,
            output,
            reduced,
        } => build(&spec, output, reduced),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let mut msg = e.to_string();
            let mut last = msg.clone();
            for cause in e.chain().skip(1) {
                let text = cause.to_string();
                if !last.contains(&text) {
                    msg = format!("{msg}: {text}");
                }
                last = text;
            }
            eprintln!("error: {msg}");
            ExitCode::from(exit_code(&e))
        }
    }
}
