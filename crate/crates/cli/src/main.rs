//! `hopf-twist`: build catalog instances, deform them by 2-cocycles and verify the result.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hopf_twist::catalog::{self, Built};
use hopf_twist::galois::find_coinvariants;
use hopf_twist::instance_file;
use hopf_twist::run::{self, InstanceRecord, RunConfig, RunDocument};
use hopf_twist::sampling::DEFAULT_SEED;
use hopf_twist::suites::Suite;
use hopf_twist::{GaloisInstance, HopfStructure};

#[derive(Parser)]
#[command(name = "hopf-twist", version, about = "Exact 2-cocycle twists of Hopf-Galois extensions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites; exit 0 when all pass, 1 otherwise.
    Verify(VerifyArgs),
    /// Commutation table of the deformed algebra.
    Twist(TwistArgs),
    /// Coinvariant basis up to the degree bound.
    Coinv(SourceArgs),
    /// Structured report: a fresh run, or a saved one re-rendered.
    Report(ReportArgs),
    /// Registered instances, algebras and cocycles.
    List(OutputArgs),
    /// Build a registered object; galois instances are written as instance files.
    Build(BuildArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SourceArgs {
    /// Catalog name or path of an instance file.
    #[arg(long)]
    instance: String,
    /// Catalog parameter, `name=value`; repeatable.
    #[arg(long = "param", value_parser = parse_param)]
    params: Vec<(String, i64)>,
    /// Right cocycle by name.
    #[arg(long)]
    gamma: Option<String>,
    /// Left cocycle by name.
    #[arg(long)]
    sigma: Option<String>,
    #[arg(long, default_value_t = 3)]
    max_degree: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Suite to run; repeatable, all suites when absent.
    #[arg(long = "suite")]
    suites: Vec<Suite>,
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Args)]
struct ReportArgs {
    /// Re-render a saved report instead of running.
    #[arg(long, conflicts_with = "instance")]
    from: Option<PathBuf>,
    #[arg(long)]
    instance: Option<String>,
    #[arg(long = "param", value_parser = parse_param)]
    params: Vec<(String, i64)>,
    #[arg(long)]
    gamma: Option<String>,
    #[arg(long)]
    sigma: Option<String>,
    #[arg(long = "suite")]
    suites: Vec<Suite>,
    #[arg(long, default_value_t = 3)]
    max_degree: usize,
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TwistArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Tabulate the declared coinvariant generators instead of the algebra generators.
    #[arg(long)]
    coinvariants: bool,
}

#[derive(Args)]
struct BuildArgs {
    #[arg(long)]
    instance: String,
    #[arg(long = "param", value_parser = parse_param)]
    params: Vec<(String, i64)>,
    /// Instance file to write.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_param(s: &str) -> Result<(String, i64), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected name=value, got `{s}`"))?;
    let v = v.trim().parse().map_err(|_| format!("`{v}` is not an integer"))?;
    Ok((k.trim().to_string(), v))
}

/// Failures of the run itself, as opposed to configuration errors.
struct SuiteFailure;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(SuiteFailure)) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cmd: Command) -> anyhow::Result<Result<(), SuiteFailure>> {
    match cmd {
        Command::Verify(a) => {
            let doc = fresh_run(&a.run)?;
            let out = &a.run.source.output;
            if let Some(path) = &out.out {
                write_file(path, &doc.to_json()?)?;
            }
            match out.format {
                Format::Text => println!("{doc}"),
                Format::Json => println!("{}", doc.to_json()?),
            }
            Ok(verdict(&doc))
        }
        Command::Report(a) => report(a),
        Command::Twist(a) => twist(a).map(Ok),
        Command::Coinv(a) => coinv(a).map(Ok),
        Command::List(o) => list(o).map(Ok),
        Command::Build(a) => build(a).map(Ok),
    }
}

fn verdict(doc: &RunDocument) -> Result<(), SuiteFailure> {
    if doc.passed {
        Ok(())
    } else {
        Err(SuiteFailure)
    }
}

fn emit(out: &OutputArgs, text: String, value: Value) -> anyhow::Result<()> {
    let s = match out.format {
        Format::Text => text,
        Format::Json => serde_json::to_string_pretty(&value)?,
    };
    match &out.out {
        Some(p) => write_file(p, &s),
        None => {
            println!("{s}");
            Ok(())
        }
    }
}

fn write_file(path: &Path, s: &str) -> anyhow::Result<()> {
    fs::write(path, format!("{s}\n")).with_context(|| format!("writing {}", path.display()))
}

fn load(source: &str, params: &[(String, i64)]) -> anyhow::Result<(Arc<GaloisInstance>, InstanceRecord)> {
    let parameters: BTreeMap<String, i64> = params.iter().cloned().collect();
    let path = Path::new(source);
    if path.is_file() {
        if !parameters.is_empty() {
            bail!("--param applies to catalog instances only");
        }
        let inst = instance_file::load(path).with_context(|| format!("loading {source}"))?;
        let record = InstanceRecord {
            name: inst.name().to_string(),
            source: source.to_string(),
            parameters,
            provenance: inst.provenance().to_string(),
        };
        return Ok((inst, record));
    }
    let inst = catalog::build(source, &parameters)?.into_instance()?;
    let record = InstanceRecord {
        name: source.to_string(),
        source: "catalog".into(),
        parameters,
        provenance: inst.provenance().to_string(),
    };
    Ok((inst, record))
}

fn suites_or_all(s: &[Suite]) -> Vec<Suite> {
    if s.is_empty() {
        Suite::ALL.to_vec()
    } else {
        s.to_vec()
    }
}

fn fresh_run(a: &RunArgs) -> anyhow::Result<RunDocument> {
    let s = &a.source;
    let (inst, record) = load(&s.instance, &s.params)?;
    let cfg = RunConfig {
        gamma: s.gamma.clone(),
        sigma: s.sigma.clone(),
        suites: suites_or_all(&a.suites),
        max_degree: s.max_degree,
        samples: a.samples,
        seed: a.seed,
    };
    Ok(run::run(&inst, record, cfg)?)
}

fn report(a: ReportArgs) -> anyhow::Result<Result<(), SuiteFailure>> {
    let doc = match (&a.from, &a.instance) {
        (Some(p), _) => {
            let s = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            RunDocument::from_json(&s)?
        }
        (None, Some(instance)) => fresh_run(&RunArgs {
            source: SourceArgs {
                instance: instance.clone(),
                params: a.params.clone(),
                gamma: a.gamma.clone(),
                sigma: a.sigma.clone(),
                max_degree: a.max_degree,
                output: OutputArgs { format: a.format, out: None },
            },
            suites: a.suites.clone(),
            samples: a.samples,
            seed: a.seed,
        })?,
        (None, None) => bail!("report needs --instance or --from"),
    };
    let out = OutputArgs { format: a.format, out: a.out };
    emit(&out, doc.to_string(), serde_json::to_value(&doc)?)?;
    Ok(verdict(&doc))
}

fn twist(a: TwistArgs) -> anyhow::Result<()> {
    let s = &a.source;
    let (inst, _) = load(&s.instance, &s.params)?;
    let gamma = s.gamma.as_deref().map(|g| inst.right_cocycle(g)).transpose()?;
    let sigma = s.sigma.as_deref().map(|g| inst.left_cocycle(g)).transpose()?;
    let alg = inst.deform(gamma, sigma)?;
    let rows: Vec<(String, String, String)> = if a.coinvariants {
        let gens = inst.coinvariant_generators();
        let mut rows = Vec::new();
        for (i, (ni, xi)) in gens.iter().enumerate() {
            for (nj, xj) in &gens[i + 1..] {
                let f = alg
                    .commutation_factor(xi, xj)?
                    .map(|c| c.to_string())
                    .unwrap_or_else(|| "not proportional".into());
                rows.push((ni.clone(), nj.clone(), f));
            }
        }
        rows
    } else {
        alg.relation_table()?
            .into_iter()
            .map(|e| (e.left, e.right, e.factor.to_string()))
            .collect()
    };
    let width = rows.iter().map(|r| r.0.len() + r.1.len()).max().unwrap_or(0) + 3;
    let text = rows
        .iter()
        .map(|(l, r, f)| format!("{:width$} {f}", format!("{l} • {r}")))
        .collect::<Vec<_>>()
        .join("\n");
    let value = json!({
        "instance": inst.name(),
        "gamma": s.gamma,
        "sigma": s.sigma,
        "relations": rows.iter().map(|(l, r, f)| json!({"left": l, "right": r, "factor": f})).collect::<Vec<_>>(),
    });
    emit(&s.output, text, value)
}

fn coinv(s: SourceArgs) -> anyhow::Result<()> {
    let (inst, _) = load(&s.instance, &s.params)?;
    let gamma = s.gamma.as_deref().map(|g| inst.right_cocycle(g)).transpose()?;
    let sigma = s.sigma.as_deref().map(|g| inst.left_cocycle(g)).transpose()?;
    let alg = inst.deform(gamma, sigma)?;
    let basis = find_coinvariants(&alg, s.max_degree)?;
    let items: Vec<String> = basis.iter().map(|x| x.to_string()).collect();
    let mut text = format!("coinvariants of {} up to degree {}: dimension {}", inst.name(), s.max_degree, items.len());
    for x in &items {
        text.push_str(&format!("\n  {x}"));
    }
    let value = json!({
        "instance": inst.name(),
        "max_degree": s.max_degree,
        "dimension": items.len(),
        "basis": items,
    });
    emit(&s.output, text, value)
}

fn list(o: OutputArgs) -> anyhow::Result<()> {
    let entries = catalog::list();
    let text = entries
        .iter()
        .map(|d| {
            let params = d
                .parameters
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect::<Vec<_>>()
                .join(",");
            format!("{:24} {:16} {:10} {}", d.name, d.kind, params, d.provenance)
        })
        .collect::<Vec<_>>()
        .join("\n");
    emit(&o, text, serde_json::to_value(&entries)?)
}

fn build(a: BuildArgs) -> anyhow::Result<()> {
    let params: BTreeMap<String, i64> = a.params.iter().cloned().collect();
    match catalog::build(&a.instance, &params)? {
        Built::Instance(inst) => match &a.out {
            Some(p) => {
                instance_file::save(&inst, p)?;
                eprintln!("wrote {}", p.display());
            }
            None => println!("{}", instance_file::to_json(&inst)?),
        },
        other => {
            if a.out.is_some() {
                return Err(anyhow!("only galois instances have an instance file; `{}` is a {}", a.instance, other.kind()));
            }
            let p = match &other {
                Built::Hopf(h) => h.presentation().clone(),
                Built::Algebra(p) => p.clone(),
                Built::Cocycle(c) => c.host().presentation().clone(),
                Built::Instance(_) => unreachable!(),
            };
            let gens: Vec<&str> = p.generators().iter().map(|g| g.name.as_str()).collect();
            println!("{} `{}`: generators {}", other.kind(), p.name(), gens.join(", "));
            println!("{} commutation factors, {} rewrite rules", p.commutation().len(), p.rules().len());
        }
    }
    Ok(())
}
