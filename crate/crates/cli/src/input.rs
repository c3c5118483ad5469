//! Input plumbing: graph6 streams, named graphs, digests, search budgets.

use std::io::Read as _;
use std::path::Path;
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use sha2::{Digest, Sha256};
use snarkforge::generators::named_graph;
use snarkforge::graph::CubicGraph;
use snarkforge::graph6::parse_graph6_lines;
use snarkforge::hamilton::Budget;

/// A parsed graph6 stream plus the digest the report wants.
pub struct GraphInput {
    pub graphs: Vec<CubicGraph>,
    /// `sha256:<hex>` over the raw bytes read.
    pub digest: String,
}

/// Reads every graph6 line of `path` (stdin when `None` or `-`).
pub fn read_graphs(path: Option<&Path>) -> Result<GraphInput> {
    let (bytes, source) = read_bytes(path)?;
    let text = String::from_utf8(bytes.clone()).with_context(|| format!("{source}: not UTF-8"))?;
    let graphs =
        parse_graph6_lines(&text).map_err(|(line, e)| anyhow::anyhow!("{source}:{line}: {e}"))?;
    if graphs.is_empty() {
        bail!("{source}: no graphs in input");
    }
    Ok(GraphInput { graphs, digest: digest_of(&bytes) })
}

pub fn read_bytes(path: Option<&Path>) -> Result<(Vec<u8>, String)> {
    match path {
        Some(p) if p != Path::new("-") => {
            let bytes = std::fs::read(p).with_context(|| format!("reading {}", p.display()))?;
            Ok((bytes, p.display().to_string()))
        }
        _ => {
            let mut buf = Vec::new();
            std::io::stdin().read_to_end(&mut buf).context("reading stdin")?;
            Ok((buf, "-".to_string()))
        }
    }
}

pub fn digest_of(bytes: &[u8]) -> String {
    format!("sha256:{:x}", Sha256::digest(bytes))
}

/// Resolves a graph argument: a generator name (`petersen`, `B2`, `L1`,
/// `J7`, ...), a graph6 file path, or `-` for stdin. Files must hold exactly
/// one graph.
pub fn resolve_graph(arg: &str) -> Result<CubicGraph> {
    if let Some(g) = named_graph(arg) {
        return Ok(g);
    }
    let input = read_graphs(Some(Path::new(arg)))?;
    if input.graphs.len() != 1 {
        bail!("{arg}: expected exactly one graph, found {}", input.graphs.len());
    }
    Ok(input.graphs.into_iter().next().expect("checked length"))
}

/// Default budget for a graph of order `n`, shortened by the
/// `SNARKFORGE_BUDGET_SECS` environment variable when set.
pub fn budget_for(n: u32) -> Result<Budget> {
    env_deadline(Budget::for_order(n))
}

/// Applies the `SNARKFORGE_BUDGET_SECS` wall-clock cap to a base budget.
pub fn env_deadline(base: Budget) -> Result<Budget> {
    match std::env::var("SNARKFORGE_BUDGET_SECS") {
        Err(_) => Ok(base),
        Ok(raw) => {
            let secs: f64 = raw.parse().ok().filter(|s| *s > 0.0).with_context(|| {
                format!("SNARKFORGE_BUDGET_SECS: expected positive seconds, got {raw:?}")
            })?;
            Ok(base.with_deadline(Instant::now() + Duration::from_secs_f64(secs)))
        }
    }
}
