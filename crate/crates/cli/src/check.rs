use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use degen_core::fraction::Fraction;
use degen_core::graph::VertexSet;
use degen_core::io::{instance_hash, to_rotation_json};
use degen_core::plane::PlaneGraph;
use degen_core::solver::{check_theorem, BoundReport, Budget};
use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::Format;

pub struct Job {
    pub plane: PlaneGraph,
    pub seed: Option<u64>,
    pub a: VertexSet,
}

/// The sets tried per instance when sampling: ∅, one boundary vertex and one
/// boundary edge, picked with an RNG seeded from the instance seed.
pub fn sampled_sets(p: &PlaneGraph, seed: u64) -> Vec<VertexSet> {
    let n = p.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![VertexSet::new(n)];
    let boundary = p.boundary().vertices.to_vec();
    if let Some(&v) = boundary.choose(&mut rng) {
        out.push(VertexSet::from_vertices(n, [v]).expect("boundary vertex"));
    }
    let edges: Vec<Vec<usize>> = p
        .admissible_paths()
        .into_iter()
        .filter(|path| path.len() == 2)
        .collect();
    if let Some(e) = edges.choose(&mut rng) {
        out.push(VertexSet::from_vertices(n, e.iter().copied()).expect("boundary edge"));
    }
    out
}

pub struct Summary {
    pub reports: usize,
    pub violations: usize,
    pub min_ratio: Option<Fraction>,
    pub min_alpha3_ratio: Option<Fraction>,
}

pub fn run(
    jobs: Vec<Job>,
    budget: Budget,
    out: Option<&Path>,
    format: Format,
    keep_dir: Option<&Path>,
) -> Result<Summary> {
    let results: Vec<(Job, Result<BoundReport, String>)> = jobs
        .into_par_iter()
        .map(|job| {
            let report = check_theorem(&job.plane, &job.a, budget)
                .map(|r| BoundReport {
                    instance: instance_hash(&job.plane),
                    seed: job.seed,
                    ..r
                })
                .map_err(|e| e.to_string());
            (job, report)
        })
        .collect();

    let mut sink: Box<dyn Write> = match out {
        Some(path) => Box::new(
            OpenOptions::new()
                .create(true)
                .append(true)
                .open(path)
                .with_context(|| format!("opening {}", path.display()))?,
        ),
        None => Box::new(std::io::stdout().lock()),
    };
    let mut csv = match format {
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
            w.write_record(CSV_HEADER)?;
            Some(w)
        }
        Format::Json => None,
    };

    let mut summary = Summary {
        reports: 0,
        violations: 0,
        min_ratio: None,
        min_alpha3_ratio: None,
    };
    let mut failures = Vec::new();
    for (job, result) in results {
        let report = match result {
            Ok(r) => r,
            Err(e) => {
                failures.push(e);
                continue;
            }
        };
        summary.reports += 1;
        let ratio = report.ratio();
        summary.min_ratio = Some(summary.min_ratio.map_or(ratio, |m| m.min(ratio)));
        if report.a.is_empty() && report.n > 0 {
            let r = Fraction::new(report.f as i64, report.n as i64);
            summary.min_alpha3_ratio = Some(summary.min_alpha3_ratio.map_or(r, |m| m.min(r)));
        }
        if !report.holds || report.floor_holds == Some(false) {
            summary.violations += 1;
            if let Some(dir) = keep_dir {
                persist(dir, &job.plane, &report)?;
            }
        }
        match csv.as_mut() {
            Some(w) => w.write_record(csv_row(&report))?,
            None => writeln!(sink, "{}", serde_json::to_string(&report)?)?,
        }
    }
    if let Some(w) = csv {
        sink.write_all(&w.into_inner().context("flushing csv")?)?;
    }
    sink.flush()?;
    if let Some(first) = failures.first() {
        anyhow::bail!(
            "{} instance(s) could not be checked exactly; first: {first}",
            failures.len()
        );
    }
    Ok(summary)
}

const CSV_HEADER: [&str; 13] = [
    "instance",
    "seed",
    "n",
    "a",
    "boundary",
    "tau",
    "partial",
    "f",
    "holds",
    "floor_holds",
    "method",
    "nodes",
    "millis",
];

fn csv_row(r: &BoundReport) -> Vec<String> {
    let method = serde_json::to_value(r.method)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default();
    vec![
        r.instance.clone(),
        r.seed.map(|s| s.to_string()).unwrap_or_default(),
        r.n.to_string(),
        r.a.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "),
        r.boundary.to_string(),
        r.tau.to_string(),
        r.partial.to_string(),
        r.f.to_string(),
        r.holds.to_string(),
        r.floor_holds.map(|c| c.to_string()).unwrap_or_default(),
        method,
        r.nodes.to_string(),
        r.millis.to_string(),
    ]
}

/// Writes the rotation JSON and report of a violating instance.
fn persist(dir: &Path, p: &PlaneGraph, report: &BoundReport) -> Result<PathBuf> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let a: Vec<String> = report.a.iter().map(|v| v.to_string()).collect();
    let stem = format!("{}-a{}", &report.instance[..16.min(report.instance.len())], a.join("_"));
    let path = dir.join(format!("{stem}.json"));
    let body = serde_json::json!({
        "report": report,
        "embedding": serde_json::from_str::<serde_json::Value>(&to_rotation_json(p))?,
    });
    fs::write(&path, serde_json::to_string_pretty(&body)?)?;
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use degen_core::instances::named;

    #[test]
    fn persisted_instance_reloads() {
        let p = named("Q2").unwrap();
        let mut report = check_theorem(&p, &VertexSet::new(p.n()), Budget::unlimited()).unwrap();
        report.instance = instance_hash(&p);
        let dir = tempfile::tempdir().unwrap();
        let path = persist(dir.path(), &p, &report).unwrap();
        let body: serde_json::Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
        let back = degen_core::io::parse_rotation_json(&body["embedding"].to_string()).unwrap();
        assert_eq!(instance_hash(&back), report.instance);
        assert_eq!(body["report"]["f"], report.f);
    }

    #[test]
    fn sampled_sets_are_usable() {
        let p = named("icosahedron").unwrap();
        let sets = sampled_sets(&p, 3);
        assert_eq!(sets.iter().map(|s| s.len()).collect::<Vec<_>>(), vec![0, 1, 2]);
        assert!(sets.iter().all(|s| p.is_usable(s)));
        assert_eq!(sampled_sets(&p, 3), sets);
    }
}
