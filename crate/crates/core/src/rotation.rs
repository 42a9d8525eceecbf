//! Rotation systems: cyclic edge orders per vertex encoding a combinatorial
//! embedding on an orientable surface. Faces are traced by following, from
//! dart (u -> v), the dart (v -> w) where w is the rotation successor of u at
//! v; the Euler genus falls out of the face count.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// An orientable combinatorial embedding of a simple graph.
#[derive(Debug, Clone)]
pub struct RotationSystem {
    graph: Graph,
    rotations: Vec<Vec<u32>>,
    /// succ_pos[v] maps a neighbor u of v to its position in rotations[v].
    succ_pos: Vec<Vec<(u32, u32)>>,
}

impl RotationSystem {
    /// Build from per-vertex cyclic neighbor orders. Each rotation must be a
    /// permutation of exactly the incident edge set.
    pub fn new(graph: Graph, rotations: Vec<Vec<u32>>) -> Result<RotationSystem> {
        if rotations.len() != graph.n() {
            return Err(Error::InvalidRotation(format!(
                "{} rotations for {} vertices",
                rotations.len(),
                graph.n()
            )));
        }
        let mut succ_pos = Vec::with_capacity(graph.n());
        for (v, rot) in rotations.iter().enumerate() {
            let mut sorted: Vec<u32> = rot.clone();
            sorted.sort_unstable();
            if sorted != graph.neighbors(v) {
                return Err(Error::InvalidRotation(format!(
                    "rotation at {v} is not a permutation of its neighbors"
                )));
            }
            let mut pos: Vec<(u32, u32)> = rot
                .iter()
                .enumerate()
                .map(|(i, &u)| (u, i as u32))
                .collect();
            pos.sort_unstable();
            succ_pos.push(pos);
        }
        Ok(RotationSystem {
            graph,
            rotations,
            succ_pos,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn rotations(&self) -> &[Vec<u32>] {
        &self.rotations
    }

    pub fn rotation(&self, v: usize) -> &[u32] {
        &self.rotations[v]
    }

    fn position_of(&self, v: usize, u: u32) -> usize {
        let pos = &self.succ_pos[v];
        let i = pos.binary_search_by_key(&u, |&(w, _)| w).unwrap();
        pos[i].1 as usize
    }

    /// Rotation successor of neighbor u at vertex v.
    pub fn successor(&self, v: usize, u: u32) -> u32 {
        let rot = &self.rotations[v];
        let i = self.position_of(v, u);
        rot[(i + 1) % rot.len()]
    }

    /// Trace all faces. Each face is a closed walk of darts (u, v); every dart
    /// appears in exactly one face.
    pub fn faces(&self) -> Vec<Vec<(u32, u32)>> {
        let n = self.graph.n();
        let mut visited = vec![false; 2 * self.graph.m()];
        // dart index: position of v in adjacency list of u, offset by dart base of u
        let mut base = vec![0usize; n + 1];
        for v in 0..n {
            base[v + 1] = base[v] + self.graph.degree(v);
        }
        let dart_index = |u: usize, v: u32| -> usize {
            base[u] + self.graph.neighbors(u).binary_search(&v).unwrap()
        };
        let mut faces = Vec::new();
        for u in 0..n {
            for &v in self.graph.neighbors(u) {
                let start = dart_index(u, v);
                if visited[start] {
                    continue;
                }
                let mut walk = Vec::new();
                let (mut cu, mut cv) = (u as u32, v);
                loop {
                    let di = dart_index(cu as usize, cv);
                    if visited[di] {
                        break;
                    }
                    visited[di] = true;
                    walk.push((cu, cv));
                    let w = self.successor(cv as usize, cu);
                    cu = cv;
                    cv = w;
                }
                faces.push(walk);
            }
        }
        faces
    }

    /// Euler genus (2 - n + m - f) / 2 of a connected embedded graph.
    pub fn euler_genus(&self) -> Result<usize> {
        if !self.graph.is_connected() {
            return Err(Error::Disconnected);
        }
        let f = self.faces().len();
        let chi = 2 + self.graph.m() as i64 - self.graph.n() as i64 - f as i64;
        if chi < 0 || chi % 2 != 0 {
            return Err(Error::InvalidRotation(format!(
                "non-integral or negative genus: 2 - n + m - f = {}",
                -chi
            )));
        }
        Ok((chi / 2) as usize)
    }

    /// True if every traced face is a triangle.
    pub fn is_triangulation(&self) -> bool {
        self.faces().iter().all(|f| f.len() == 3)
    }

    /// Rebuild a rotation system from a set of oriented faces over a given
    /// graph. Consecutive darts (x -> v)(v -> y) in a face force y to be the
    /// rotation successor of x at v; the result must close into one cycle per
    /// vertex, otherwise the face set is not a valid embedding.
    pub fn from_oriented_faces(graph: Graph, faces: &[Vec<(u32, u32)>]) -> Result<RotationSystem> {
        let n = graph.n();
        let mut succ: Vec<Vec<(u32, u32)>> = vec![Vec::new(); n];
        for face in faces {
            let k = face.len();
            for i in 0..k {
                let (x, v) = face[i];
                let (v2, y) = face[(i + 1) % k];
                if v != v2 {
                    return Err(Error::InvalidRotation(
                        "face darts are not consecutive".into(),
                    ));
                }
                succ[v as usize].push((x, y));
            }
        }
        let mut rotations = Vec::with_capacity(n);
        for v in 0..n {
            let deg = graph.degree(v);
            let mut map = succ[v].clone();
            map.sort_unstable();
            if map.len() != deg {
                return Err(Error::InvalidRotation(format!(
                    "vertex {v}: {} successor pairs for degree {deg}",
                    map.len()
                )));
            }
            if deg == 0 {
                rotations.push(Vec::new());
                continue;
            }
            let lookup = |x: u32| -> Result<u32> {
                map.binary_search_by_key(&x, |&(a, _)| a)
                    .map(|i| map[i].1)
                    .map_err(|_| Error::InvalidRotation(format!("vertex {v}: no successor for {x}")))
            };
            let first = graph.neighbors(v)[0];
            let mut cycle = vec![first];
            let mut cur = lookup(first)?;
            while cur != first {
                if cycle.len() > deg {
                    return Err(Error::InvalidRotation(format!(
                        "vertex {v}: successor map does not close"
                    )));
                }
                cycle.push(cur);
                cur = lookup(cur)?;
            }
            if cycle.len() != deg {
                return Err(Error::InvalidRotation(format!(
                    "vertex {v}: link is not a single cycle ({} of {deg})",
                    cycle.len()
                )));
            }
            rotations.push(cycle);
        }
        RotationSystem::new(graph, rotations)
    }
}

/// Rotation system of a straight-line plane drawing: neighbors sorted by angle
/// around each vertex.
pub fn rotation_from_points(graph: Graph, points: &[(f64, f64)]) -> Result<RotationSystem> {
    let n = graph.n();
    let mut rotations = Vec::with_capacity(n);
    for v in 0..n {
        let (vx, vy) = points[v];
        let mut order: Vec<(f64, u32)> = graph
            .neighbors(v)
            .iter()
            .map(|&u| {
                let (ux, uy) = points[u as usize];
                ((uy - vy).atan2(ux - vx), u)
            })
            .collect();
        order.sort_by(|a, b| a.partial_cmp(b).unwrap());
        rotations.push(order.into_iter().map(|(_, u)| u).collect());
    }
    RotationSystem::new(graph, rotations)
}

/// The tetrahedron: planar K4 with f = 4.
pub fn tetrahedron() -> RotationSystem {
    let g = crate::generators::complete(4);
    let points = [(0.0, 0.0), (4.0, 0.0), (2.0, 3.4), (2.0, 1.2)];
    rotation_from_points(g, &points).unwrap()
}

/// The octahedron: planar, 6 vertices, 12 edges, f = 8.
pub fn octahedron() -> RotationSystem {
    let mut edges = vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)];
    for i in 0u32..3 {
        edges.push((i, i + 3));
        edges.push((i, (i + 1) % 3 + 3));
    }
    let g = Graph::from_edges(6, &edges).unwrap();
    let outer = |k: f64| (3.0 * (k.to_radians()).cos(), 3.0 * (k.to_radians()).sin());
    let inner = |k: f64| ((k.to_radians()).cos(), (k.to_radians()).sin());
    let points = [
        outer(90.0),
        outer(210.0),
        outer(330.0),
        inner(30.0),
        inner(150.0),
        inner(270.0),
    ];
    rotation_from_points(g, &points).unwrap()
}

/// K5 embedded on the torus (genus 1, f = 5).
pub fn toroidal_k5() -> RotationSystem {
    let g = crate::generators::complete(5);
    let rotations = vec![
        vec![1, 2, 3, 4],
        vec![0, 2, 3, 4],
        vec![0, 1, 4, 3],
        vec![0, 2, 1, 4],
        vec![0, 3, 1, 2],
    ];
    RotationSystem::new(g, rotations).unwrap()
}

/// K3,3 embedded on the torus (genus 1, f = 3).
pub fn toroidal_k33() -> RotationSystem {
    let g = crate::generators::complete_bipartite(3, 3);
    // Left vertices 0,1,2; right vertices 3,4,5. Rotations chosen so the
    // hexagonal faces close up on the torus; verified by tracing.
    let rotations = vec![
        vec![3, 4, 5],
        vec![3, 4, 5],
        vec![3, 4, 5],
        vec![0, 1, 2],
        vec![0, 1, 2],
        vec![0, 1, 2],
    ];
    RotationSystem::new(g, rotations).unwrap()
}

/// K7 embedded on the torus: the classical difference rotation
/// (+1, +3, +2, +6, +4, +5), a triangulation with f = 14.
pub fn toroidal_k7() -> RotationSystem {
    let g = crate::generators::complete(7);
    let rotations: Vec<Vec<u32>> = (0..7u32)
        .map(|v| [1u32, 3, 2, 6, 4, 5].iter().map(|d| (v + d) % 7).collect())
        .collect();
    RotationSystem::new(g, rotations).unwrap()
}
