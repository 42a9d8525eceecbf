//! Format codecs: whitespace edge lists ("u v" per line, '#' comments) and
//! rotation-system files ("v: a b c ..."). Vertex ids are densified to
//! 0..n-1 at load and the original labels kept in a side map for output.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rotation::RotationSystem;
use std::collections::BTreeMap;

/// A graph plus the densification map back to the labels of the source file.
#[derive(Debug, Clone)]
pub struct LoadedGraph {
    pub graph: Graph,
    /// `labels[i]` = original label of dense vertex i.
    pub labels: Vec<u64>,
}

/// A rotation system plus its densification map.
#[derive(Debug, Clone)]
pub struct LoadedRotation {
    pub rotation: RotationSystem,
    pub labels: Vec<u64>,
}

fn parse_label(tok: &str, line: usize) -> Result<u64> {
    tok.parse::<u64>().map_err(|_| Error::Parse {
        line,
        msg: format!("expected non-negative integer, got {tok:?}"),
    })
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

/// Parse an edge list. Labels are densified in ascending order.
pub fn parse_edge_list(text: &str) -> Result<LoadedGraph> {
    let mut raw_edges: Vec<(u64, u64)> = Vec::new();
    let mut label_set = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        let mut toks = line.split_whitespace();
        let (a, b) = match (toks.next(), toks.next(), toks.next()) {
            (Some(a), Some(b), None) => (a, b),
            _ => {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("expected \"u v\", got {line:?}"),
                })
            }
        };
        let u = parse_label(a, line_no)?;
        let v = parse_label(b, line_no)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        raw_edges.push((u, v));
        label_set.insert(u, 0u32);
        label_set.insert(v, 0u32);
    }
    let labels: Vec<u64> = label_set.keys().copied().collect();
    for (i, (_, dense)) in label_set.iter_mut().enumerate() {
        *dense = i as u32;
    }
    let edges: Vec<(u32, u32)> = raw_edges
        .iter()
        .map(|&(u, v)| (label_set[&u], label_set[&v]))
        .collect();
    // Parallel-edge detection in original labels for a clearer message.
    {
        let mut canon: Vec<(u32, u32)> = edges
            .iter()
            .map(|&(u, v)| (u.min(v), u.max(v)))
            .collect();
        canon.sort_unstable();
        if let Some(w) = canon.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::ParallelEdge(
                labels[w[0].0 as usize],
                labels[w[0].1 as usize],
            ));
        }
    }
    let graph = Graph::from_edges(labels.len(), &edges)?;
    Ok(LoadedGraph { graph, labels })
}

/// Parse a rotation-system file: one line per vertex, "v: a b c ..." listing
/// neighbors in cyclic order. The induced edge set must be symmetric.
pub fn parse_rotation_system(text: &str) -> Result<LoadedRotation> {
    let mut rows: Vec<(u64, Vec<u64>)> = Vec::new();
    let mut label_set = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        let (head, rest) = line.split_once(':').ok_or_else(|| Error::Parse {
            line: line_no,
            msg: "expected \"v: a b c ...\"".into(),
        })?;
        let v = parse_label(head.trim(), line_no)?;
        let mut nbrs = Vec::new();
        for tok in rest.split_whitespace() {
            let u = parse_label(tok, line_no)?;
            if u == v {
                return Err(Error::SelfLoop(v));
            }
            nbrs.push(u);
        }
        if rows.iter().any(|(w, _)| *w == v) {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("duplicate rotation line for vertex {v}"),
            });
        }
        label_set.insert(v, 0u32);
        for &u in &nbrs {
            label_set.insert(u, 0u32);
        }
        rows.push((v, nbrs));
    }
    let labels: Vec<u64> = label_set.keys().copied().collect();
    for (i, (_, dense)) in label_set.iter_mut().enumerate() {
        *dense = i as u32;
    }
    let n = labels.len();
    if rows.len() != n {
        let missing = labels
            .iter()
            .find(|l| !rows.iter().any(|(v, _)| v == *l))
            .unwrap();
        return Err(Error::Parse {
            line: 0,
            msg: format!("no rotation line for vertex {missing}"),
        });
    }
    let mut rotations = vec![Vec::new(); n];
    for (v, nbrs) in &rows {
        let dv = label_set[v] as usize;
        rotations[dv] = nbrs.iter().map(|u| label_set[u]).collect();
    }
    // Edge set from rotations; must be symmetric, simple.
    let mut edges = Vec::new();
    for (v, rot) in rotations.iter().enumerate() {
        let mut seen = rot.to_vec();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::ParallelEdge(labels[v], 0));
        }
        for &u in rot {
            if !rotations[u as usize].contains(&(v as u32)) {
                return Err(Error::AsymmetricAdjacency(labels[v], labels[u as usize]));
            }
            if (v as u32) < u {
                edges.push((v as u32, u));
            }
        }
    }
    let graph = Graph::from_edges(n, &edges)?;
    let rotation = RotationSystem::new(graph, rotations)?;
    Ok(LoadedRotation { rotation, labels })
}

/// Canonical edge-list text: vertices ascending, each edge once with u < v.
pub fn canonical_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Rotation-system text in the file format.
pub fn rotation_system_text(r: &RotationSystem) -> String {
    let mut out = String::new();
    for (v, rot) in r.rotations().iter().enumerate() {
        let nbrs: Vec<String> = rot.iter().map(|u| u.to_string()).collect();
        out.push_str(&format!("{v}: {}\n", nbrs.join(" ")));
    }
    out
}

/// FNV-1a digest of the canonical edge list, binding certificates to their
/// instance.
pub fn graph_hash(g: &Graph) -> String {
    let text = format!("n={}\n{}", g.n(), canonical_edge_list(g));
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in text.as_bytes() {
        h ^= *b as u64;
        h = h.wrapping_mul(0x100_0000_01b3);
    }
    format!("{h:016x}")
}
