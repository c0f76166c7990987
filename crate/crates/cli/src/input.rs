use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Args;
use degen_core::graph::{Graph, VertexSet};
use degen_core::instances::{InstanceKind, InstanceSpec};
use degen_core::io::{load, Loaded};
use degen_core::plane::PlaneGraph;

#[derive(Args, Debug, Clone)]
pub struct Source {
    /// Edge-list or rotation-JSON file.
    #[arg(long, conflicts_with = "gen")]
    pub input: Option<PathBuf>,
    /// Generator kind: stacked, flipped, outerplanar, or a named graph
    /// (K4, octahedron, icosahedron, Q1, Q2, Q2+, Q3, Q4, Q4+, Q4++).
    #[arg(long)]
    pub gen: Option<String>,
    /// Vertex count for generated instances.
    #[arg(long, default_value_t = 10)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Diagonal flips for the flipped kind; defaults to 3n.
    #[arg(long)]
    pub flips: Option<usize>,
}

impl Source {
    pub fn spec(&self, seed: u64) -> Result<InstanceSpec> {
        let kind_name = self.gen.as_deref().context("no generator given")?;
        let kind: InstanceKind = kind_name.parse()?;
        let flips = match kind {
            InstanceKind::Flipped => self.flips.unwrap_or(3 * self.n),
            _ => self.flips.unwrap_or(0),
        };
        Ok(InstanceSpec {
            kind,
            n: self.n,
            seed,
            flips,
        })
    }

    pub fn load(&self) -> Result<Loaded> {
        match (&self.input, &self.gen) {
            (Some(path), None) => Ok(load(path)?),
            (None, Some(_)) => Ok(Loaded::Plane(self.spec(self.seed)?.generate()?)),
            _ => bail!("give exactly one of --input or --gen"),
        }
    }
}

pub fn require_plane(loaded: Loaded) -> Result<PlaneGraph> {
    match loaded {
        Loaded::Plane(p) => Ok(p),
        Loaded::Plain(_) => bail!("this command needs an embedding; give rotation JSON or a generator"),
    }
}

/// Parses a comma-separated vertex list.
pub fn parse_a(text: Option<&str>, n: usize) -> Result<VertexSet> {
    let mut a = VertexSet::new(n);
    let Some(text) = text.filter(|t| !t.trim().is_empty()) else {
        return Ok(a);
    };
    for token in text.split(',') {
        let v: usize = token
            .trim()
            .parse()
            .with_context(|| format!("bad vertex id {token:?} in --a"))?;
        if v >= n {
            bail!("vertex {v} in --a is out of range for {n} vertices");
        }
        if !a.insert(v) {
            bail!("vertex {v} repeated in --a");
        }
    }
    Ok(a)
}

/// A must be usable in the embedding; without one only A = ∅ is accepted.
pub fn validated_a(loaded: &Loaded, text: Option<&str>) -> Result<VertexSet> {
    let a = parse_a(text, loaded.graph().n())?;
    if a.is_empty() {
        return Ok(a);
    }
    match loaded {
        Loaded::Plane(p) if p.is_usable(&a) => Ok(a),
        Loaded::Plane(_) => bail!(
            "A = {:?} is not usable: not an admissible boundary path per component",
            a.to_vec()
        ),
        Loaded::Plain(_) => bail!("a nonempty A needs an embedding to check usability"),
    }
}

pub fn graph_summary(g: &Graph) -> serde_json::Value {
    serde_json::json!({ "n": g.n(), "m": g.edge_count() })
}
