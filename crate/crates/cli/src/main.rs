mod check;
mod input;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use degen_core::degeneracy::degeneracy;
use degen_core::graph::VertexSet;
use degen_core::io::{instance_hash, to_rotation_json, write_edge_list};
use degen_core::solver::{alpha_bb, alpha_oracle, greedy_heuristic, verify_certificate, Budget, SolveResult};
use degen_core::special::{enumerate_special, tau};
use serde_json::json;

use crate::input::{graph_summary, require_plane, validated_a, Source};

#[derive(Parser, Debug)]
#[command(name = "degen", version, about = "Degeneracy tools for plane graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Worker threads; defaults to all cores.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Node budget for branch and bound.
    #[arg(long, global = true, env = "DEGEN_BUDGET_NODES")]
    budget_nodes: Option<u64>,
    /// Time budget for branch and bound, in milliseconds.
    #[arg(long, global = true)]
    budget_ms: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Degeneracy value and a peeling order.
    Degeneracy(SourceArgs),
    /// Largest set inducing a (k, A)-degenerate subgraph.
    Alpha(AlphaArgs),
    /// Special cycles, packing number and the vertex bound.
    Tau(SourceArgs),
    /// Compares f(G; A) against the bound on one or many instances.
    Check(CheckArgs),
    /// Writes a generated instance.
    Gen(GenArgs),
}

#[derive(Args, Debug)]
struct SourceArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Mode {
    Exact,
    Oracle,
    Heuristic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct AlphaArgs {
    #[command(flatten)]
    source: Source,
    /// Degeneracy threshold.
    #[arg(long, default_value_t = 3)]
    k: usize,
    /// Comma-separated vertices placed first, e.g. "0,1".
    #[arg(long)]
    a: Option<String>,
    #[arg(long, conflicts_with_all = ["oracle", "heuristic"])]
    exact: bool,
    #[arg(long, conflicts_with = "heuristic")]
    oracle: bool,
    #[arg(long)]
    heuristic: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[command(flatten)]
    source: Source,
    /// Number of generated instances; instance i uses seed + i.
    #[arg(long, default_value_t = 1)]
    count: u64,
    /// Vertex set for a single --input instance.
    #[arg(long, conflicts_with = "sample_a")]
    a: Option<String>,
    /// Also check one boundary vertex and one boundary edge per instance.
    #[arg(long)]
    sample_a: bool,
    /// Report file; lines are appended.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Directory for violating instances.
    #[arg(long, default_value = "violations")]
    keep: PathBuf,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[command(flatten)]
    source: Source,
    /// Write an edge list instead of rotation JSON.
    #[arg(long)]
    edge_list: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, format!("{text}\n")).with_context(|| format!("writing {}", path.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn budget(cli: &Cli) -> Budget {
    Budget {
        max_nodes: cli.budget_nodes,
        max_time: cli.budget_ms.map(Duration::from_millis),
    }
}

fn cmd_degeneracy(args: &SourceArgs) -> Result<()> {
    let loaded = args.source.load()?;
    let g = loaded.graph();
    let (value, order) = degeneracy(g);
    let body = json!({
        "graph": graph_summary(g),
        "degeneracy": value,
        "ordering": order.as_slice(),
    });
    emit(args.out.as_ref(), &serde_json::to_string(&body)?)
}

fn result_json(r: &SolveResult, verified: bool) -> serde_json::Value {
    json!({
        "optimum": r.optimum,
        "witness": r.witness.to_vec(),
        "certificate": r.certificate.as_slice(),
        "method": r.method,
        "exact": r.exact,
        "verified": verified,
        "nodes": r.stats.nodes,
        "millis": r.stats.elapsed.as_millis() as u64,
    })
}

fn cmd_alpha(args: &AlphaArgs, budget: Budget) -> Result<bool> {
    let loaded = args.source.load()?;
    let a = validated_a(&loaded, args.a.as_deref())?;
    let g = loaded.graph();
    let mode = if args.oracle {
        Mode::Oracle
    } else if args.heuristic {
        Mode::Heuristic
    } else {
        Mode::Exact
    };
    let result = match mode {
        Mode::Oracle => alpha_oracle(g, &a, args.k)?,
        Mode::Heuristic => greedy_heuristic(g, &a, args.k),
        Mode::Exact => alpha_bb(g, &a, args.k, budget)?,
    };
    let verified = verify_certificate(g, &a, &result.witness, &result.certificate, args.k);
    let body = json!({
        "graph": graph_summary(g),
        "k": args.k,
        "a": a.to_vec(),
        "result": result_json(&result, verified),
    });
    emit(args.out.as_ref(), &serde_json::to_string(&body)?)?;
    if !verified {
        bail!("certificate failed verification");
    }
    if mode == Mode::Exact && !result.exact {
        bail!(
            "budget exhausted after {} nodes; {} is only a lower bound",
            result.stats.nodes,
            result.optimum
        );
    }
    Ok(true)
}

fn cmd_tau(args: &SourceArgs) -> Result<()> {
    let p = require_plane(args.source.load()?)?;
    let special = enumerate_special(&p);
    let packing = tau(&p);
    let body = json!({
        "graph": graph_summary(p.graph()),
        "boundary": p.boundary().vertices.len(),
        "special": special,
        "packing": packing.cycles,
        "tau": packing.tau,
        "partial_bound": packing.partial_bound,
    });
    emit(args.out.as_ref(), &serde_json::to_string(&body)?)
}

fn cmd_check(args: &CheckArgs, budget: Budget) -> Result<bool> {
    let mut jobs = Vec::new();
    if args.source.input.is_some() {
        let loaded = args.source.load()?;
        let a = validated_a(&loaded, args.a.as_deref())?;
        let plane = require_plane(loaded)?;
        let sets = if args.sample_a {
            check::sampled_sets(&plane, 0)
        } else {
            vec![a]
        };
        jobs.extend(sets.into_iter().map(|a| check::Job {
            plane: plane.clone(),
            seed: None,
            a,
        }));
    } else {
        if args.a.is_some() {
            bail!("--a applies to a single --input instance; use --sample-a with generators");
        }
        for i in 0..args.count {
            let seed = args.source.seed.wrapping_add(i);
            let plane = args.source.spec(seed)?.generate()?;
            let sets = if args.sample_a {
                check::sampled_sets(&plane, seed)
            } else {
                vec![VertexSet::new(plane.n())]
            };
            jobs.extend(sets.into_iter().map(|a| check::Job {
                plane: plane.clone(),
                seed: Some(seed),
                a,
            }));
        }
    }
    let summary = check::run(jobs, budget, args.out.as_deref(), args.format, Some(&args.keep))?;
    let fmt = |f: Option<degen_core::fraction::Fraction>| {
        f.map(|r| format!("{r} ({:.4})", r.to_f64()))
            .unwrap_or_else(|| "n/a".into())
    };
    eprintln!(
        "checked {} reports, {} violations; min f/bound {}; min alpha_3/n {}",
        summary.reports,
        summary.violations,
        fmt(summary.min_ratio),
        fmt(summary.min_alpha3_ratio)
    );
    if summary.violations > 0 {
        eprintln!("violating instances written to {}", args.keep.display());
    }
    Ok(summary.violations == 0)
}

fn cmd_gen(args: &GenArgs) -> Result<()> {
    if args.source.input.is_some() {
        bail!("gen takes --gen, not --input");
    }
    let spec = args.source.spec(args.source.seed)?;
    let p = spec.generate()?;
    let text = if args.edge_list {
        write_edge_list(p.graph()).trim_end().to_string()
    } else {
        to_rotation_json(&p)
    };
    emit(args.out.as_ref(), &text)?;
    eprintln!(
        "{} n={} m={} hash={}",
        spec.kind,
        p.n(),
        p.graph().edge_count(),
        instance_hash(&p)
    );
    Ok(())
}

fn run(cli: &Cli) -> Result<bool> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .context("configuring worker threads")?;
    }
    match &cli.command {
        Command::Degeneracy(args) => cmd_degeneracy(args).map(|_| true),
        Command::Alpha(args) => cmd_alpha(args, budget(cli)),
        Command::Tau(args) => cmd_tau(args).map(|_| true),
        Command::Check(args) => cmd_check(args, budget(cli)),
        Command::Gen(args) => cmd_gen(args).map(|_| true),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
