//! Path certificate files: parsing and independent verification.
//!
//! A certificate file pins down a suitable edge pair of one graph with
//! explicit witnesses:
//!
//! ```text
//! graph B2 n=18
//! HAMPATH forbid=(6,8);(10,16) : 10 11 12 ...       # path between the pairs
//! PATHPAIR forbid=(6,8);(10,16) : 8 7 ... | 16 ...  # two spanning paths
//! HAMPATH del=0 forbid=(6,8);(10,16) : 8 7 ...      # path avoiding vertex 0
//! ```
//!
//! A companion `.autos` file closes the vertex-deleted records under
//! symmetry: each `AUTO rep=r to=v : p0 p1 ...` line is a graph automorphism
//! fixing the forbidden pair set and carrying the certified vertex `r` to
//! `v`, so the image of `r`'s path certifies `v`.
//!
//! The checker here is deliberately primitive: it walks adjacency lists and
//! counts vertices, sharing no code with the search engine, so the two can
//! vouch for each other.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use thiserror::Error;

use crate::graph::{CubicGraph, Vertex};

/// A parsed certificate file.
#[derive(Clone, Debug)]
pub struct CertFile {
    pub graph_name: String,
    pub order: u32,
    pub header_line: usize,
    pub records: Vec<CertRecord>,
}

/// One witness line.
#[derive(Clone, Debug)]
pub struct CertRecord {
    /// 1-based line number in the source file.
    pub line: usize,
    /// The two forbidden (removed) edges, as given.
    pub forbidden: [(Vertex, Vertex); 2],
    pub kind: CertKind,
}

#[derive(Clone, Debug)]
pub enum CertKind {
    /// A hamiltonian path of the graph minus the forbidden edges and minus
    /// `deleted` if present.
    HamPath { deleted: Option<Vertex>, path: Vec<Vertex> },
    /// Two vertex-disjoint paths spanning the graph minus the forbidden
    /// edges; `first` must join the endpoints of the first forbidden edge,
    /// `second` those of the second.
    PathPair { first: Vec<Vertex>, second: Vec<Vertex> },
}

/// A parsed symmetry-closure file.
#[derive(Clone, Debug)]
pub struct AutoFile {
    pub graph_name: String,
    pub order: u32,
    pub header_line: usize,
    pub autos: Vec<AutoRecord>,
}

#[derive(Clone, Debug)]
pub struct AutoRecord {
    pub line: usize,
    pub rep: Vertex,
    pub to: Vertex,
    /// The automorphism: vertex `i` maps to `perm[i]`.
    pub perm: Vec<Vertex>,
}

/// Errors raised while reading certificate or closure files.
#[derive(Debug, Error)]
pub enum CertError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

fn parse_err(line: usize, msg: impl Into<String>) -> CertError {
    CertError::Parse { line, msg: msg.into() }
}

fn parse_vertex(line: usize, tok: &str) -> Result<Vertex, CertError> {
    tok.parse().map_err(|_| parse_err(line, format!("expected a vertex number, got `{tok}`")))
}

/// Parses `(u,v)` into a vertex pair.
fn parse_pair(line: usize, tok: &str) -> Result<(Vertex, Vertex), CertError> {
    let inner = tok
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| parse_err(line, format!("expected `(u,v)`, got `{tok}`")))?;
    let (u, v) = inner
        .split_once(',')
        .ok_or_else(|| parse_err(line, format!("expected `(u,v)`, got `{tok}`")))?;
    Ok((parse_vertex(line, u)?, parse_vertex(line, v)?))
}

fn parse_forbid(line: usize, tok: &str) -> Result<[(Vertex, Vertex); 2], CertError> {
    let spec = tok
        .strip_prefix("forbid=")
        .ok_or_else(|| parse_err(line, format!("expected `forbid=(u,v);(u,v)`, got `{tok}`")))?;
    let (p0, p1) = spec
        .split_once(';')
        .ok_or_else(|| parse_err(line, format!("expected two `;`-separated pairs in `{tok}`")))?;
    Ok([parse_pair(line, p0)?, parse_pair(line, p1)?])
}

/// Parses the `graph <name> n=<N>` header common to both file kinds.
fn parse_header<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
) -> Result<(String, u32, usize), CertError> {
    let Some((line, text)) = lines.next() else {
        return Err(parse_err(0, "empty file: missing `graph` header"));
    };
    let toks: Vec<&str> = text.split_whitespace().collect();
    if toks.first() != Some(&"graph") {
        return Err(parse_err(line, format!("expected `graph <name> n=<N>`, got `{text}`")));
    }
    if toks.len() != 3 {
        return Err(parse_err(line, "expected `graph <name> n=<N>`"));
    }
    let n = toks[2]
        .strip_prefix("n=")
        .ok_or_else(|| parse_err(line, format!("expected `n=<N>`, got `{}`", toks[2])))?;
    let order = n.parse().map_err(|_| parse_err(line, format!("bad order `{n}`")))?;
    Ok((toks[1].to_string(), order, line))
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Parses certificate file content.
pub fn parse_certs(text: &str) -> Result<CertFile, CertError> {
    let mut lines = content_lines(text);
    let (graph_name, order, header_line) = parse_header(&mut lines)?;
    let mut records = Vec::new();
    for (line, text) in lines {
        let toks: Vec<&str> = text.split_whitespace().collect();
        let (head, rest) = toks.split_first().unwrap();
        let colon = rest
            .iter()
            .position(|&t| t == ":")
            .ok_or_else(|| parse_err(line, "missing `:` before the vertex list"))?;
        let (opts, verts) = (&rest[..colon], &rest[colon + 1..]);
        match *head {
            "HAMPATH" => {
                let mut deleted = None;
                let mut forbidden = None;
                for tok in opts {
                    if let Some(d) = tok.strip_prefix("del=") {
                        deleted = Some(parse_vertex(line, d)?);
                    } else if tok.starts_with("forbid=") {
                        forbidden = Some(parse_forbid(line, tok)?);
                    } else {
                        return Err(parse_err(line, format!("unknown option `{tok}`")));
                    }
                }
                let forbidden =
                    forbidden.ok_or_else(|| parse_err(line, "missing `forbid=` option"))?;
                let path = verts
                    .iter()
                    .map(|t| parse_vertex(line, t))
                    .collect::<Result<Vec<_>, _>>()?;
                records.push(CertRecord {
                    line,
                    forbidden,
                    kind: CertKind::HamPath { deleted, path },
                });
            }
            "PATHPAIR" => {
                let forbidden = match opts {
                    [tok] if tok.starts_with("forbid=") => parse_forbid(line, tok)?,
                    _ => return Err(parse_err(line, "PATHPAIR takes exactly `forbid=`")),
                };
                let bar = verts
                    .iter()
                    .position(|&t| t == "|")
                    .ok_or_else(|| parse_err(line, "missing `|` between the two paths"))?;
                let parse_seq = |toks: &[&str]| {
                    toks.iter().map(|t| parse_vertex(line, t)).collect::<Result<Vec<_>, _>>()
                };
                records.push(CertRecord {
                    line,
                    forbidden,
                    kind: CertKind::PathPair {
                        first: parse_seq(&verts[..bar])?,
                        second: parse_seq(&verts[bar + 1..])?,
                    },
                });
            }
            other => return Err(parse_err(line, format!("unknown record `{other}`"))),
        }
    }
    Ok(CertFile { graph_name, order, header_line, records })
}

/// Parses symmetry-closure file content.
pub fn parse_autos(text: &str) -> Result<AutoFile, CertError> {
    let mut lines = content_lines(text);
    let (graph_name, order, header_line) = parse_header(&mut lines)?;
    let mut autos = Vec::new();
    for (line, text) in lines {
        let toks: Vec<&str> = text.split_whitespace().collect();
        match toks.as_slice() {
            ["AUTO", rep, to, ":", perm @ ..] => {
                let rep = rep
                    .strip_prefix("rep=")
                    .ok_or_else(|| parse_err(line, "expected `rep=<v>`"))
                    .and_then(|t| parse_vertex(line, t))?;
                let to = to
                    .strip_prefix("to=")
                    .ok_or_else(|| parse_err(line, "expected `to=<v>`"))
                    .and_then(|t| parse_vertex(line, t))?;
                let perm = perm
                    .iter()
                    .map(|t| parse_vertex(line, t))
                    .collect::<Result<Vec<_>, _>>()?;
                autos.push(AutoRecord { line, rep, to, perm });
            }
            _ => return Err(parse_err(line, "expected `AUTO rep=<r> to=<v> : p0 p1 ...`")),
        }
    }
    Ok(AutoFile { graph_name, order, header_line, autos })
}

/// Reads and parses a certificate file.
pub fn load_certs(path: &Path) -> Result<CertFile, CertError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| CertError::Io { path: path.display().to_string(), source })?;
    parse_certs(&text)
}

/// Reads and parses a symmetry-closure file.
pub fn load_autos(path: &Path) -> Result<AutoFile, CertError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| CertError::Io { path: path.display().to_string(), source })?;
    parse_autos(&text)
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

/// A verification failure, tied to the source line that failed.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}: {reason}")]
pub struct CheckFailure {
    pub line: usize,
    pub reason: String,
}

fn fail(line: usize, reason: impl Into<String>) -> CheckFailure {
    CheckFailure { line, reason: reason.into() }
}

fn same_edge(e: (Vertex, Vertex), f: (Vertex, Vertex)) -> bool {
    e == f || e == (f.1, f.0)
}

/// Checks that `path` is a hamiltonian path of `g` minus `deleted` (if any)
/// that never steps along a forbidden edge.
fn check_walk(
    g: &CubicGraph,
    line: usize,
    path: &[Vertex],
    deleted: Option<Vertex>,
    forbidden: &[(Vertex, Vertex); 2],
    seen: &mut [bool],
) -> Result<(), CheckFailure> {
    for &v in path {
        if v >= g.order() {
            return Err(fail(line, format!("vertex {v} out of range")));
        }
        if seen[v as usize] {
            return Err(fail(line, format!("vertex {v} appears twice")));
        }
        if deleted == Some(v) {
            return Err(fail(line, format!("deleted vertex {v} appears in the path")));
        }
        seen[v as usize] = true;
    }
    for w in path.windows(2) {
        if !g.has_edge(w[0], w[1]) {
            return Err(fail(line, format!("({},{}) is not an edge", w[0], w[1])));
        }
        if forbidden.iter().any(|&f| same_edge((w[0], w[1]), f)) {
            return Err(fail(line, format!("path uses forbidden edge ({},{})", w[0], w[1])));
        }
    }
    Ok(())
}

/// Verifies a single record against its graph, including its endpoint
/// obligations relative to the forbidden pair.
pub fn verify_record(g: &CubicGraph, rec: &CertRecord) -> Result<(), CheckFailure> {
    let line = rec.line;
    let [(a, b), (c, d)] = rec.forbidden;
    for &(u, v) in &rec.forbidden {
        if u >= g.order() || v >= g.order() || !g.has_edge(u, v) {
            return Err(fail(line, format!("forbidden pair ({u},{v}) is not an edge")));
        }
    }
    if [a, b].contains(&c) || [a, b].contains(&d) {
        return Err(fail(line, "forbidden edges are not independent"));
    }
    let mut seen = vec![false; g.order() as usize];
    match &rec.kind {
        CertKind::HamPath { deleted, path } => {
            if let Some(v) = deleted {
                if *v >= g.order() {
                    return Err(fail(line, format!("deleted vertex {v} out of range")));
                }
            }
            let want = g.order() as usize - usize::from(deleted.is_some());
            if path.len() != want {
                return Err(fail(
                    line,
                    format!("path covers {} vertices, expected {want}", path.len()),
                ));
            }
            check_walk(g, line, path, *deleted, &rec.forbidden, &mut seen)?;
            let (s, t) = (*path.first().unwrap(), *path.last().unwrap());
            let ends_ok = match deleted {
                // A removed-vertex witness must join the endpoints of one
                // forbidden edge.
                Some(_) => {
                    same_edge((s, t), (a, b)) || same_edge((s, t), (c, d))
                }
                // A plain witness must join the two forbidden edges.
                None => ([a, b].contains(&s) && [c, d].contains(&t))
                    || ([c, d].contains(&s) && [a, b].contains(&t)),
            };
            if !ends_ok {
                return Err(fail(line, format!("endpoints ({s},{t}) do not match the pair")));
            }
        }
        CertKind::PathPair { first, second } => {
            if first.len() + second.len() != g.order() as usize {
                return Err(fail(
                    line,
                    format!(
                        "paths cover {} vertices, expected {}",
                        first.len() + second.len(),
                        g.order()
                    ),
                ));
            }
            check_walk(g, line, first, None, &rec.forbidden, &mut seen)?;
            check_walk(g, line, second, None, &rec.forbidden, &mut seen)?;
            for (path, want) in [(first, (a, b)), (second, (c, d))] {
                let (s, t) = (*path.first().unwrap(), *path.last().unwrap());
                if !same_edge((s, t), want) {
                    return Err(fail(
                        line,
                        format!(
                            "path endpoints ({s},{t}) are not the forbidden pair ({},{})",
                            want.0, want.1
                        ),
                    ));
                }
            }
        }
    }
    Ok(())
}

/// Verification summary for one certificate file, with optional symmetry
/// closure.
#[derive(Clone, Debug)]
pub struct DatasetReport {
    pub graph_name: String,
    pub records: usize,
    pub autos_applied: usize,
    pub failures: Vec<CheckFailure>,
    /// All four endpoint combinations between the two forbidden edges have a
    /// hamiltonian path, and a spanning path pair is present.
    pub condition_i_complete: bool,
    /// Vertices with neither a direct removed-vertex witness nor one
    /// obtained through an automorphism.
    pub condition_ii_missing: Vec<Vertex>,
}

impl DatasetReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
            && self.condition_i_complete
            && self.condition_ii_missing.is_empty()
    }
}

impl fmt::Display for DatasetReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} records, {} closures, {} failures, condition (i) {}, condition (ii) {}",
            self.graph_name,
            self.records,
            self.autos_applied,
            self.failures.len(),
            if self.condition_i_complete { "complete" } else { "incomplete" },
            if self.condition_ii_missing.is_empty() {
                "complete".to_string()
            } else {
                format!("missing {:?}", self.condition_ii_missing)
            },
        )
    }
}

/// Verifies every record of a certificate file against `g`, checks witness
/// coverage of both suitability conditions, and (when a closure file is
/// given) extends removed-vertex coverage through verified automorphisms.
pub fn verify_dataset(
    g: &CubicGraph,
    certs: &CertFile,
    autos: Option<&AutoFile>,
) -> DatasetReport {
    let mut failures = Vec::new();

    if certs.order != g.order() {
        failures.push(fail(
            certs.header_line,
            format!("file says n={}, graph has {} vertices", certs.order, g.order()),
        ));
    }

    // All records must agree on the forbidden pair.
    let forbidden = certs.records.first().map(|r| r.forbidden);
    let mut covered: BTreeSet<Vertex> = BTreeSet::new();
    let mut cross_seen = [false; 4];
    let mut pair_seen = false;

    for rec in &certs.records {
        if let Some(fb) = forbidden {
            let matches = (same_edge(rec.forbidden[0], fb[0]) && same_edge(rec.forbidden[1], fb[1]))
                || (same_edge(rec.forbidden[0], fb[1]) && same_edge(rec.forbidden[1], fb[0]));
            if !matches {
                failures.push(fail(rec.line, "record uses a different forbidden pair"));
                continue;
            }
        }
        match verify_record(g, rec) {
            Err(f) => failures.push(f),
            Ok(()) => match &rec.kind {
                CertKind::HamPath { deleted: Some(v), .. } => {
                    covered.insert(*v);
                }
                CertKind::HamPath { deleted: None, path } => {
                    let fb = forbidden.unwrap();
                    let (s, t) = (*path.first().unwrap(), *path.last().unwrap());
                    let (a, b) = fb[0];
                    let (c, d) = fb[1];
                    // Which endpoint combination this witness realizes.
                    let (e0, e1) =
                        if [a, b].contains(&s) { (s, t) } else { (t, s) };
                    let idx = match (e0 == a, e1 == c) {
                        (true, true) => 0,
                        (true, false) => 1,
                        (false, true) => 2,
                        (false, false) => 3,
                    };
                    debug_assert!([a, b].contains(&e0) && [c, d].contains(&e1));
                    cross_seen[idx] = true;
                }
                CertKind::PathPair { .. } => pair_seen = true,
            },
        }
    }

    // Symmetry closure.
    let mut autos_applied = 0;
    if let Some(af) = autos {
        if af.graph_name != certs.graph_name || af.order != certs.order {
            failures.push(fail(
                af.header_line,
                format!(
                    "closure file is for {} n={}, certificates for {} n={}",
                    af.graph_name, af.order, certs.graph_name, certs.order
                ),
            ));
        } else {
            for auto in &af.autos {
                match apply_auto(g, certs, forbidden, auto) {
                    Err(f) => failures.push(f),
                    Ok(covered_vertex) => {
                        covered.insert(covered_vertex);
                        autos_applied += 1;
                    }
                }
            }
        }
    }

    let condition_ii_missing: Vec<Vertex> =
        (0..g.order()).filter(|v| !covered.contains(v)).collect();
    DatasetReport {
        graph_name: certs.graph_name.clone(),
        records: certs.records.len(),
        autos_applied,
        failures,
        condition_i_complete: cross_seen.iter().all(|&s| s) && pair_seen,
        condition_ii_missing,
    }
}

/// Validates one closure record and returns the newly covered vertex: the
/// permutation must be an automorphism of `g` fixing the forbidden pair set,
/// and its image of the representative's path must itself verify.
fn apply_auto(
    g: &CubicGraph,
    certs: &CertFile,
    forbidden: Option<[(Vertex, Vertex); 2]>,
    auto: &AutoRecord,
) -> Result<Vertex, CheckFailure> {
    let line = auto.line;
    let n = g.order();
    let perm = &auto.perm;
    if perm.len() != n as usize {
        return Err(fail(line, format!("permutation has {} entries, graph {n}", perm.len())));
    }
    let mut sorted: Vec<Vertex> = perm.clone();
    sorted.sort_unstable();
    if sorted != (0..n).collect::<Vec<_>>() {
        return Err(fail(line, "not a permutation of the vertices"));
    }
    for &(u, v) in g.edges() {
        if !g.has_edge(perm[u as usize], perm[v as usize]) {
            return Err(fail(
                line,
                format!("not an automorphism: image of edge ({u},{v}) is a non-edge"),
            ));
        }
    }
    if auto.rep >= n || auto.to >= n {
        return Err(fail(line, "rep or target vertex out of range"));
    }
    if perm[auto.rep as usize] != auto.to {
        return Err(fail(
            line,
            format!("permutation sends rep {} to {}, not to {}", auto.rep, perm[auto.rep as usize], auto.to),
        ));
    }
    let Some(fb) = forbidden else {
        return Err(fail(line, "certificate file has no records to close over"));
    };
    let image = |(u, v): (Vertex, Vertex)| (perm[u as usize], perm[v as usize]);
    let fixes_pair = {
        let (i0, i1) = (image(fb[0]), image(fb[1]));
        (same_edge(i0, fb[0]) && same_edge(i1, fb[1]))
            || (same_edge(i0, fb[1]) && same_edge(i1, fb[0]))
    };
    if !fixes_pair {
        return Err(fail(line, "automorphism does not fix the forbidden pair set"));
    }
    // The representative needs a direct removed-vertex record.
    let rep_record = certs.records.iter().find(|r| {
        matches!(&r.kind, CertKind::HamPath { deleted: Some(v), .. } if *v == auto.rep)
    });
    let Some(rep_record) = rep_record else {
        return Err(fail(line, format!("no direct record for representative {}", auto.rep)));
    };
    let CertKind::HamPath { path, .. } = &rep_record.kind else { unreachable!() };
    let mapped = CertRecord {
        line,
        forbidden: fb,
        kind: CertKind::HamPath {
            deleted: Some(auto.to),
            path: path.iter().map(|&v| perm[v as usize]).collect(),
        },
    };
    verify_record(g, &mapped)?;
    Ok(auto.to)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::blanusa2;

    const SAMPLE: &str = "\
# comment
graph B2 n=18
HAMPATH forbid=(6,8);(10,16) : 10 11 12 17 16 15 13 14 0 1 5 4 7 8 9 3 2 6
PATHPAIR forbid=(6,8);(10,16) : 8 7 4 5 6 | 16 17 12 11 1 0 2 3 9 15 13 14 10
HAMPATH del=0 forbid=(6,8);(10,16) : 8 7 4 5 1 11 10 14 13 12 17 16 15 9 3 2 6
";

    #[test]
    fn parses_and_verifies_sample() {
        let file = parse_certs(SAMPLE).unwrap();
        assert_eq!(file.graph_name, "B2");
        assert_eq!(file.order, 18);
        assert_eq!(file.records.len(), 3);
        let g = blanusa2();
        for rec in &file.records {
            verify_record(&g, rec).unwrap();
        }
    }

    #[test]
    fn checker_rejects_corruptions() {
        let g = blanusa2();
        let file = parse_certs(SAMPLE).unwrap();

        // Swap two interior vertices of the hamiltonian path.
        let mut bad = file.records[0].clone();
        if let CertKind::HamPath { path, .. } = &mut bad.kind {
            path.swap(3, 10);
        }
        assert!(verify_record(&g, &bad).is_err());

        // Truncate the path.
        let mut bad = file.records[0].clone();
        if let CertKind::HamPath { path, .. } = &mut bad.kind {
            path.pop();
        }
        assert!(verify_record(&g, &bad).is_err());

        // Route the pair paths with swapped endpoints.
        let mut bad = file.records[1].clone();
        if let CertKind::PathPair { first, second } = &mut bad.kind {
            std::mem::swap(first, second);
        }
        assert!(verify_record(&g, &bad).is_err());

        // Claim a non-edge as forbidden.
        let mut bad = file.records[0].clone();
        bad.forbidden[0] = (0, 3);
        assert!(verify_record(&g, &bad).is_err());

        // Delete a vertex that the path still visits.
        let mut bad = file.records[2].clone();
        if let CertKind::HamPath { deleted, .. } = &mut bad.kind {
            *deleted = Some(5);
        }
        assert!(verify_record(&g, &bad).is_err());
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_certs("graph X\n").unwrap_err();
        assert!(matches!(err, CertError::Parse { line: 1, .. }));
        let err = parse_certs("graph X n=18\nHAMPATH : 1 2\n").unwrap_err();
        assert!(matches!(err, CertError::Parse { line: 2, .. }));
        let err = parse_certs("graph X n=18\nBOGUS forbid=(0,1);(2,3) : 1\n").unwrap_err();
        assert!(matches!(err, CertError::Parse { line: 2, .. }));
    }

    #[test]
    fn condition_tracking_reports_gaps() {
        let g = blanusa2();
        let file = parse_certs(SAMPLE).unwrap();
        let report = verify_dataset(&g, &file, None);
        assert!(report.failures.is_empty());
        // Only one of the four endpoint combinations is present, and only
        // vertex 0 is covered.
        assert!(!report.condition_i_complete);
        assert_eq!(report.condition_ii_missing.len(), 17);
        assert!(!report.ok());
    }
}
