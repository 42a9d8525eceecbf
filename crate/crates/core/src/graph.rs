//! Simple undirected graphs with dense 0..n-1 vertex ids, the vertex-boundary
//! and expansion primitives, Laplacian assembly, and the cut/separator types
//! everything downstream produces.

use crate::error::{Error, Result};

/// Simple undirected graph. Neighbor lists are sorted and duplicate-free,
/// adjacency is symmetric, and there are no self-loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    m: usize,
    adjacency: Vec<Vec<u32>>,
}

impl Graph {
    /// Build a graph from an edge list over vertices `0..n-1`.
    /// Self-loops and parallel edges are rejected, not cleaned.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Graph> {
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u == v {
                return Err(Error::SelfLoop(u as u64));
            }
            let (ui, vi) = (u as usize, v as usize);
            if ui >= n || vi >= n {
                return Err(Error::VertexOutOfRange {
                    id: ui.max(vi),
                    n,
                });
            }
            adjacency[ui].push(v);
            adjacency[vi].push(u);
        }
        for (v, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                let d = list.windows(2).find(|w| w[0] == w[1]).unwrap()[0];
                return Err(Error::ParallelEdge(v.min(d as usize) as u64, v.max(d as usize) as u64));
            }
        }
        Ok(Graph {
            n,
            m: edges.len(),
            adjacency,
        })
    }

    /// Build from pre-validated adjacency lists (symmetry and simplicity are
    /// re-checked).
    pub fn from_adjacency(adjacency: Vec<Vec<u32>>) -> Result<Graph> {
        let n = adjacency.len();
        let mut deg_sum = 0usize;
        for (v, list) in adjacency.iter().enumerate() {
            deg_sum += list.len();
            for &u in list {
                if u as usize == v {
                    return Err(Error::SelfLoop(v as u64));
                }
                if u as usize >= n {
                    return Err(Error::VertexOutOfRange { id: u as usize, n });
                }
                if adjacency[u as usize].binary_search(&(v as u32)).is_err() {
                    return Err(Error::AsymmetricAdjacency(v as u64, u as u64));
                }
            }
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidSubset(format!(
                    "neighbor list of {v} not sorted/duplicate-free"
                )));
            }
        }
        Ok(Graph {
            n,
            m: deg_sum / 2,
            adjacency,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&(v as u32)).is_ok()
    }

    /// Edges in canonical order: u < v, ascending.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.m);
        for (u, list) in self.adjacency.iter().enumerate() {
            for &v in list {
                if (u as u32) < v {
                    out.push((u as u32, v));
                }
            }
        }
        out
    }

    /// Laplacian D - A as a dense row-major matrix.
    pub fn laplacian(&self) -> Vec<Vec<f64>> {
        let mut l = vec![vec![0.0; self.n]; self.n];
        for (u, list) in self.adjacency.iter().enumerate() {
            l[u][u] = list.len() as f64;
            for &v in list {
                l[u][v as usize] = -1.0;
            }
        }
        l
    }

    /// Vertices outside `s` adjacent to some vertex of `s`.
    pub fn vertex_boundary(&self, s: &[u32]) -> Result<Vec<u32>> {
        let mut in_s = vec![false; self.n];
        for &v in s {
            if v as usize >= self.n {
                return Err(Error::VertexOutOfRange {
                    id: v as usize,
                    n: self.n,
                });
            }
            in_s[v as usize] = true;
        }
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for &v in s {
            for &u in &self.adjacency[v as usize] {
                if !in_s[u as usize] && !seen[u as usize] {
                    seen[u as usize] = true;
                    out.push(u);
                }
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Number of edges with exactly one endpoint in `s`.
    pub fn edge_boundary_count(&self, s: &[u32]) -> Result<usize> {
        let mut in_s = vec![false; self.n];
        for &v in s {
            if v as usize >= self.n {
                return Err(Error::VertexOutOfRange {
                    id: v as usize,
                    n: self.n,
                });
            }
            in_s[v as usize] = true;
        }
        let mut count = 0;
        for &v in s {
            for &u in &self.adjacency[v as usize] {
                if !in_s[u as usize] {
                    count += 1;
                }
            }
        }
        Ok(count)
    }

    /// (psi, phi) = (|boundary(S)|/|S|, |crossing edges|/|S|) for a nonempty
    /// subset with |S| <= floor(n/2).
    pub fn expansion_of(&self, s: &[u32]) -> Result<(f64, f64)> {
        if s.is_empty() {
            return Err(Error::InvalidSubset("empty subset".into()));
        }
        if s.len() > self.n / 2 {
            return Err(Error::InvalidSubset(format!(
                "|S| = {} exceeds floor(n/2) = {}",
                s.len(),
                self.n / 2
            )));
        }
        let psi = self.vertex_boundary(s)?.len() as f64 / s.len() as f64;
        let phi = self.edge_boundary_count(s)? as f64 / s.len() as f64;
        Ok((psi, phi))
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.components().len() == 1
    }

    /// Connected components as sorted vertex lists, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<u32>> {
        let mut label = vec![usize::MAX; self.n];
        let mut comps = Vec::new();
        for start in 0..self.n {
            if label[start] != usize::MAX {
                continue;
            }
            let id = comps.len();
            let mut queue = vec![start];
            label[start] = id;
            let mut members = vec![start as u32];
            while let Some(v) = queue.pop() {
                for &u in &self.adjacency[v] {
                    if label[u as usize] == usize::MAX {
                        label[u as usize] = id;
                        members.push(u);
                        queue.push(u as usize);
                    }
                }
            }
            members.sort_unstable();
            comps.push(members);
        }
        comps
    }

    /// Induced subgraph on `verts` (sorted, distinct). Returns the subgraph and
    /// the map from new ids to original ids.
    pub fn induced(&self, verts: &[u32]) -> Result<(Graph, Vec<u32>)> {
        let mut new_id = vec![u32::MAX; self.n];
        for (i, &v) in verts.iter().enumerate() {
            if v as usize >= self.n {
                return Err(Error::VertexOutOfRange {
                    id: v as usize,
                    n: self.n,
                });
            }
            new_id[v as usize] = i as u32;
        }
        let mut adjacency = vec![Vec::new(); verts.len()];
        for (i, &v) in verts.iter().enumerate() {
            for &u in &self.adjacency[v as usize] {
                let nu = new_id[u as usize];
                if nu != u32::MAX {
                    adjacency[i].push(nu);
                }
            }
        }
        let g = Graph::from_adjacency(adjacency)?;
        Ok((g, verts.to_vec()))
    }
}

/// A sparse vertex cut: a subset with its outside-neighbor boundary and ratio.
#[derive(Debug, Clone)]
pub struct VertexCut {
    pub set: Vec<u32>,
    pub boundary: Vec<u32>,
    pub ratio: f64,
}

impl VertexCut {
    /// Build and validate. Enforces |S| <= floor(n/2); callers wanting larger
    /// sets take complements first. The boundary is recomputed from scratch.
    pub fn new(g: &Graph, set: Vec<u32>) -> Result<VertexCut> {
        if set.is_empty() {
            return Err(Error::InvalidSubset("empty cut set".into()));
        }
        if set.len() > g.n() / 2 {
            return Err(Error::InvalidSubset(format!(
                "cut set of size {} exceeds floor(n/2) = {}",
                set.len(),
                g.n() / 2
            )));
        }
        let mut set = set;
        set.sort_unstable();
        set.dedup();
        let boundary = g.vertex_boundary(&set)?;
        let ratio = boundary.len() as f64 / set.len() as f64;
        Ok(VertexCut {
            set,
            boundary,
            ratio,
        })
    }
}

/// A balanced vertex separator: S, A, B partition V, no A-B edge, and
/// |A|, |B| <= alpha * n.
#[derive(Debug, Clone)]
pub struct Separator {
    pub s: Vec<u32>,
    pub a: Vec<u32>,
    pub b: Vec<u32>,
    pub alpha: f64,
}

impl Separator {
    pub fn new(g: &Graph, s: Vec<u32>, a: Vec<u32>, b: Vec<u32>, alpha: f64) -> Result<Separator> {
        let sep = Separator { s, a, b, alpha };
        sep.validate(g)?;
        Ok(sep)
    }

    /// Re-check every invariant against the graph: disjoint cover, balance,
    /// and no A-B edge (by the side labels, which a BFS from A can never
    /// contradict since B is unreachable once S is removed).
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let n = g.n();
        let mut mark = vec![0u8; n];
        for (&v, tag) in self
            .s
            .iter()
            .map(|v| (v, 1u8))
            .chain(self.a.iter().map(|v| (v, 2u8)))
            .chain(self.b.iter().map(|v| (v, 3u8)))
        {
            if v as usize >= n {
                return Err(Error::VertexOutOfRange { id: v as usize, n });
            }
            if mark[v as usize] != 0 {
                return Err(Error::InvalidSubset(format!("vertex {v} in two parts")));
            }
            mark[v as usize] = tag;
        }
        if mark.contains(&0) {
            return Err(Error::InvalidSubset("S, A, B do not cover V".into()));
        }
        let bound = (self.alpha * n as f64) + 1e-9;
        if self.a.len() as f64 > bound || self.b.len() as f64 > bound {
            return Err(Error::InvalidSubset(format!(
                "balance violated: |A| = {}, |B| = {}, bound = {:.3}",
                self.a.len(),
                self.b.len(),
                bound
            )));
        }
        for &v in &self.a {
            for &u in g.neighbors(v as usize) {
                if mark[u as usize] == 3 {
                    return Err(Error::InvalidSubset(format!("edge {v}-{u} joins A and B")));
                }
            }
        }
        Ok(())
    }
}
