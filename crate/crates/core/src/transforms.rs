//! Embedding-respecting graph transformations and certificate transport:
//! hexagonal subdivision of triangulations, degree reduction to maximum
//! degree 4 via binary trees over vertex patches, triangulation with satellite
//! cycles and zig-zag ear cuts, certificate pullback across uniform shallow
//! minors, and the vertex-expansion hardness reduction.

use crate::certificates::EmbeddingCertificate;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::rng_from;
use crate::rotation::RotationSystem;
use rand::Rng;
use std::collections::BTreeMap;

/// Witness that G is a uniform shallow minor of H: equal-size connected
/// patches p^{-1}(v) of diameter at most L, every H-edge mapping into a
/// G-edge or a patch.
#[derive(Debug, Clone)]
pub struct UniformShallowMinorMap {
    /// `patches[v]` = sorted H-vertices of p^{-1}(v).
    pub patches: Vec<Vec<u32>>,
    pub r: usize,
    pub l: usize,
}

impl UniformShallowMinorMap {
    pub fn validate(&self, g: &Graph, h: &Graph) -> Result<()> {
        let mut owner = vec![u32::MAX; h.n()];
        for (v, patch) in self.patches.iter().enumerate() {
            if patch.len() != self.r {
                return Err(Error::Precondition(format!(
                    "patch of {v} has size {} != r = {}",
                    patch.len(),
                    self.r
                )));
            }
            for &x in patch {
                if owner[x as usize] != u32::MAX {
                    return Err(Error::Precondition("patches overlap".into()));
                }
                owner[x as usize] = v as u32;
            }
        }
        if owner.contains(&u32::MAX) {
            return Err(Error::Precondition("patches do not cover H".into()));
        }
        if self.patches.len() != g.n() {
            return Err(Error::Precondition("one patch per G-vertex required".into()));
        }
        // connectivity + diameter by BFS inside each patch
        for patch in &self.patches {
            let (sub, _) = h.induced(patch)?;
            if !sub.is_connected() {
                return Err(Error::Precondition("patch not connected".into()));
            }
            let mut diam = 0usize;
            for s in 0..sub.n() {
                let mut dist = vec![usize::MAX; sub.n()];
                dist[s] = 0;
                let mut queue = std::collections::VecDeque::from([s]);
                while let Some(v) = queue.pop_front() {
                    for &u in sub.neighbors(v) {
                        if dist[u as usize] == usize::MAX {
                            dist[u as usize] = dist[v] + 1;
                            queue.push_back(u as usize);
                        }
                    }
                }
                diam = diam.max(dist.iter().copied().max().unwrap_or(0));
            }
            if diam > self.l {
                return Err(Error::Precondition(format!(
                    "patch diameter {diam} exceeds L = {}",
                    self.l
                )));
            }
        }
        // H-edges map into G-edges or stay inside a patch
        for (u, v) in h.edges() {
            let (a, b) = (owner[u as usize], owner[v as usize]);
            if a != b && !g.has_edge(a as usize, b as usize) {
                return Err(Error::Precondition(format!(
                    "H-edge {u}-{v} maps to non-edge {a}-{b}"
                )));
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Hexagonal subdivision
// ---------------------------------------------------------------------------

/// One hexagonal subdivision: bisect every edge and join the three midpoints
/// inside each face. Counts go (n, m, t) -> (n + m, 2m + 3t, 4t) and the
/// Euler genus is unchanged.
fn hexsub_once(r: &RotationSystem) -> Result<RotationSystem> {
    if !r.is_triangulation() {
        return Err(Error::NotTriangulated(
            "hexagonal subdivision needs a triangulation".into(),
        ));
    }
    let g = r.graph();
    let n = g.n();
    let edges = g.edges();
    let mut mid = BTreeMap::new();
    for (k, &(u, v)) in edges.iter().enumerate() {
        mid.insert((u, v), (n + k) as u32);
    }
    let mid_of = |a: u32, b: u32| -> u32 { mid[&(a.min(b), a.max(b))] };
    let mut new_faces: Vec<Vec<(u32, u32)>> = Vec::with_capacity(4 * r.faces().len());
    let mut new_edges: Vec<(u32, u32)> = Vec::new();
    for (k, &(u, v)) in edges.iter().enumerate() {
        let m = (n + k) as u32;
        new_edges.push((u.min(m), u.max(m)));
        new_edges.push((v.min(m), v.max(m)));
    }
    for face in r.faces() {
        let (a, b, c) = (face[0].0, face[1].0, face[2].0);
        let (mab, mbc, mca) = (mid_of(a, b), mid_of(b, c), mid_of(c, a));
        for &(x, y) in &[(mab, mbc), (mbc, mca), (mca, mab)] {
            if x < y {
                new_edges.push((x, y));
            } else {
                new_edges.push((y, x));
            }
        }
        // corner triangles keep the parent orientation; center triangle too
        new_faces.push(vec![(a, mab), (mab, mca), (mca, a)]);
        new_faces.push(vec![(b, mbc), (mbc, mab), (mab, b)]);
        new_faces.push(vec![(c, mca), (mca, mbc), (mbc, c)]);
        new_faces.push(vec![(mab, mbc), (mbc, mca), (mca, mab)]);
    }
    new_edges.sort_unstable();
    new_edges.dedup();
    let graph = Graph::from_edges(n + edges.len(), &new_edges)?;
    RotationSystem::from_oriented_faces(graph, &new_faces)
}

/// k successive hexagonal subdivisions.
pub fn hexagonal_subdivide(r: &RotationSystem, k: usize) -> Result<RotationSystem> {
    let mut cur = r.clone();
    for _ in 0..k {
        cur = hexsub_once(&cur)?;
    }
    if k == 0 && !cur.is_triangulation() {
        return Err(Error::NotTriangulated("input is not a triangulation".into()));
    }
    Ok(cur)
}

// ---------------------------------------------------------------------------
// Degree reduction
// ---------------------------------------------------------------------------

/// Near-perfect binary search tree shape over `k` in-order positions; returns
/// (edges between positions, depth). The in-order sequence of a BST is the
/// position order itself, so any required subsequence is respected.
fn bst_edges(k: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    // recursion on index ranges, midpoint as root
    fn build(lo: usize, hi: usize, out: &mut Vec<(usize, usize)>) -> Option<usize> {
        if lo >= hi {
            return None;
        }
        let midpoint = (lo + hi) / 2;
        if let Some(left) = build(lo, midpoint, out) {
            out.push((midpoint, left));
        }
        if let Some(right) = build(midpoint + 1, hi, out) {
            out.push((midpoint, right));
        }
        Some(midpoint)
    }
    build(0, k, &mut out);
    out
}

/// Replace each vertex with Delta copies joined by a near-perfect binary tree
/// whose in-order traversal lists the rotation's edge endpoints in order; the
/// output has n * Delta vertices, maximum degree 4, and the same genus.
pub fn degree_reduce(r: &RotationSystem) -> Result<(RotationSystem, UniformShallowMinorMap)> {
    let g = r.graph();
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.n();
    let delta = g.max_degree();
    if delta < 2 {
        // degenerate: single edge or empty; identity transport
        let patches = (0..n as u32).map(|v| vec![v]).collect();
        return Ok((
            r.clone(),
            UniformShallowMinorMap {
                patches,
                r: 1,
                l: 0,
            },
        ));
    }
    // copy ids: vertex v owns delta consecutive ids starting at v * delta;
    // position i in the in-order line of v is v * delta + i. The first
    // deg(v) positions carry the rotation's edges in order.
    let copy = |v: usize, i: usize| (v * delta + i) as u32;
    let mut edges: Vec<(u32, u32)> = Vec::new();
    // external edges: for edge (u, v), position of v in rotation of u pairs
    // with position of u in rotation of v
    let mut pos: Vec<BTreeMap<u32, usize>> = Vec::with_capacity(n);
    for v in 0..n {
        let map: BTreeMap<u32, usize> = r
            .rotation(v)
            .iter()
            .enumerate()
            .map(|(i, &u)| (u, i))
            .collect();
        pos.push(map);
    }
    for (u, v) in g.edges() {
        let cu = copy(u as usize, pos[u as usize][&v]);
        let cv = copy(v as usize, pos[v as usize][&u]);
        edges.push((cu.min(cv), cu.max(cv)));
    }
    // tree edges inside each patch
    let tree = bst_edges(delta);
    for v in 0..n {
        for &(a, b) in &tree {
            let (ca, cb) = (copy(v, a), copy(v, b));
            edges.push((ca.min(cb), ca.max(cb)));
        }
    }
    edges.sort_unstable();
    edges.dedup();
    let h = Graph::from_edges(n * delta, &edges)?;

    // Rotations: the patch is drawn inside a disk with positions on a line,
    // external edges pointing out in rotation order and tree arcs nested
    // below the line. Counterclockwise at position i: external edge first,
    // then arcs to the left nearest-to-farthest, then arcs to the right
    // farthest-to-nearest.
    let mut rotations: Vec<Vec<u32>> = vec![Vec::new(); n * delta];
    for v in 0..n {
        let mut left: Vec<Vec<usize>> = vec![Vec::new(); delta];
        let mut right: Vec<Vec<usize>> = vec![Vec::new(); delta];
        for &(a, b) in &tree {
            let (lo, hi) = (a.min(b), a.max(b));
            right[lo].push(hi);
            left[hi].push(lo);
        }
        for i in 0..delta {
            left[i].sort_unstable_by(|a, b| b.cmp(a)); // nearest (largest) first
            right[i].sort_unstable_by(|a, b| b.cmp(a)); // farthest (largest) first
            let mut rot = Vec::new();
            if i < g.degree(v) {
                let u = r.rotation(v)[i];
                let cu = copy(u as usize, pos[u as usize][&(v as u32)]);
                rot.push(cu);
            }
            for &j in &left[i] {
                rot.push(copy(v, j));
            }
            for &j in &right[i] {
                rot.push(copy(v, j));
            }
            rotations[copy(v, i) as usize] = rot;
        }
    }
    let hr = RotationSystem::new(h, rotations)?;
    let patches: Vec<Vec<u32>> = (0..n)
        .map(|v| (0..delta).map(|i| copy(v, i)).collect())
        .collect();
    let l = 2 * (delta as f64).log2().ceil() as usize;
    let map = UniformShallowMinorMap {
        patches,
        r: delta,
        l,
    };
    Ok((hr, map))
}

// ---------------------------------------------------------------------------
// Triangulation via satellites, face cycles, and zig-zag ear cuts
// ---------------------------------------------------------------------------

/// Split a face at two walk positions by a chord, producing two faces.
/// face[i..j) plus the chord darts.
fn split_face(face: &[(u32, u32)], i: usize, j: usize) -> (Vec<(u32, u32)>, Vec<(u32, u32)>) {
    let k = face.len();
    let a = face[i].0;
    let b = face[j].0;
    let mut f1 = vec![(b, a)];
    let mut t = i;
    while t != j {
        f1.push(face[t]);
        t = (t + 1) % k;
    }
    let mut f2 = vec![(a, b)];
    let mut t = j;
    while t != i {
        f2.push(face[t]);
        t = (t + 1) % k;
    }
    (f1, f2)
}

/// Triangulate a connected embedded graph by adding Delta satellites per
/// vertex (at least one in every rotation gap), cycling the satellites inside
/// each face, cutting the corner quadrilaterals, and zig-zag ear-cutting the
/// remaining satellite cycles. Output: (Delta + 1) n vertices, all faces
/// triangles, genus preserved, maximum degree <= max(7, 4 Delta).
pub fn triangulate(r: &RotationSystem) -> Result<RotationSystem> {
    let g = r.graph();
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.n();
    let delta = g.max_degree().max(1);

    // Stage 1: satellites. Satellite j of vertex v gets id n + v * delta + j.
    // One satellite per rotation gap first, the rest distributed evenly; the
    // face walk of the parent map is edited in place: entering v via dart
    // (x -> v) and leaving via (v -> y) means the satellites of the gap
    // between x and y are visited as spikes (v -> s)(s -> v) in between.
    let sat = |v: usize, j: usize| (n + v * delta + j) as u32;
    let mut gap_sats: Vec<Vec<Vec<u32>>> = Vec::with_capacity(n); // per vertex, per gap
    for v in 0..n {
        let deg = g.degree(v).max(1);
        let mut per_gap: Vec<Vec<u32>> = vec![Vec::new(); deg];
        for j in 0..delta {
            per_gap[j % deg].push(sat(v, j));
        }
        gap_sats.push(per_gap);
    }
    // gap index: the gap AFTER rotation position i (between rot[i] and rot[i+1]).
    let mut pos: Vec<BTreeMap<u32, usize>> = Vec::with_capacity(n);
    for v in 0..n {
        pos.push(
            r.rotation(v)
                .iter()
                .enumerate()
                .map(|(i, &u)| (u, i))
                .collect(),
        );
    }
    let mut faces: Vec<Vec<(u32, u32)>> = Vec::new();
    for face in r.faces() {
        let k = face.len();
        let mut walk: Vec<(u32, u32)> = Vec::new();
        for t in 0..k {
            let (x, v) = face[t];
            let (_, y) = face[(t + 1) % k];
            debug_assert_eq!(face[(t + 1) % k].0, v);
            walk.push((x, v));
            // spikes for the gap between arrival x and departure y at v:
            // face tracing turns from x to successor(x) = y, so the gap is
            // the one after x's rotation position.
            let vi = v as usize;
            let _ = y;
            let gap = pos[vi][&x];
            for &s in &gap_sats[vi][gap % gap_sats[vi].len()] {
                walk.push((v, s));
                walk.push((s, v));
            }
        }
        faces.push(walk);
    }
    // isolated-vertex guard: every satellite must appear in exactly one face;
    // degree-0 vertices cannot occur in a connected graph with n >= 2.

    let mut all_edges: Vec<(u32, u32)> = g.edges();
    for v in 0..n {
        for j in 0..delta {
            let s = sat(v, j);
            all_edges.push(((v as u32).min(s), (v as u32).max(s)));
        }
    }

    // Stage 2: satellite cycle per face (j >= 3), single chord (j = 2),
    // nothing (j <= 1). Splits each face into corner faces plus an inner
    // cycle face.
    let mut next_faces: Vec<Vec<(u32, u32)>> = Vec::new();
    for face in &faces {
        let sats: Vec<usize> = (0..face.len())
            .filter(|&t| face[t].1 >= n as u32) // dart (v -> s) entering a satellite
            .collect();
        let j = sats.len();
        if j <= 1 {
            next_faces.push(face.clone());
            continue;
        }
        // cycle edges between consecutive satellites along the walk
        let ids: Vec<u32> = sats.iter().map(|&t| face[t].1).collect();
        for i in 0..j {
            let (a, b) = (ids[i], ids[(i + 1) % j]);
            if (i + 1 < j) || j > 2 {
                all_edges.push((a.min(b), a.max(b)));
            }
        }
        // corner faces: from satellite s_i back along the walk to s_{i+1},
        // closed by the cycle edge (s_{i+1} -> s_i). The satellite spike dart
        // (s_i -> v) starts the corner; (v -> s_{i+1}) ends it.
        for i in 0..j {
            let from = sats[i]; // dart (v -> s_i)
            let to = sats[(i + 1) % j]; // dart (v' -> s_{i+1})
            let mut corner: Vec<(u32, u32)> = Vec::new();
            corner.push((face[from].1, face[from].0)); // (s_i -> v)
            let mut t = (from + 2) % face.len(); // skip the return dart
            while t != to {
                corner.push(face[t]);
                t = (t + 1) % face.len();
            }
            corner.push((face[to].0, face[to].1)); // (v' -> s_{i+1})
            corner.push((face[to].1, face[from].1)); // cycle edge back
            next_faces.push(corner);
        }
        if j > 2 {
            // inner face: the satellite cycle run forward; the corner faces
            // consumed the reverse darts
            let inner: Vec<(u32, u32)> = (0..j).map(|i| (ids[i], ids[(i + 1) % j])).collect();
            next_faces.push(inner);
        }
    }

    // Stage 3 + zig-zag: triangulate every face of size > 3 by chords.
    // Candidate chords prefer the zig-zag order (start at the minimum-id
    // vertex, alternate ends); a chord is admissible if its endpoints are
    // distinct, non-adjacent so far, and not yet linked by a chord here.
    all_edges.sort_unstable();
    all_edges.dedup();
    let mut edge_set: std::collections::BTreeSet<(u32, u32)> = all_edges.iter().copied().collect();
    let mut final_faces: Vec<Vec<(u32, u32)>> = Vec::new();
    let mut queue: Vec<Vec<(u32, u32)>> = next_faces;
    while let Some(face) = queue.pop() {
        let k = face.len();
        if k <= 3 {
            final_faces.push(face);
            continue;
        }
        // zig-zag position order around the face starting at min-id vertex
        let start = (0..k)
            .min_by_key(|&t| (face[t].0, t))
            .unwrap();
        let mut order: Vec<usize> = Vec::with_capacity(k);
        let (mut lo, mut hi) = (0usize, k - 1);
        let mut take_lo = true;
        while lo <= hi {
            let t = if take_lo { lo } else { hi };
            order.push((start + t) % k);
            if take_lo {
                lo += 1;
            } else {
                hi -= 1;
            }
            take_lo = !take_lo;
            if lo > hi {
                break;
            }
        }
        // find an admissible ear chord following the zig-zag preference:
        // connect order[i] and order[i+1] when they are 2 apart on the walk,
        // otherwise fall back to any walk-distance-2 pair
        let mut chosen: Option<(usize, usize)> = None;
        let mut candidates: Vec<(usize, usize)> = Vec::new();
        for w in order.windows(2) {
            candidates.push((w[0], w[1]));
        }
        for t in 0..k {
            candidates.push((t, (t + 2) % k));
        }
        for (i, j) in candidates {
            let (i, j) = (i.min(j), i.max(j));
            let d = (j - i).min(k - (j - i));
            if d < 2 {
                continue;
            }
            let (a, b) = (face[i].0, face[j].0);
            if a == b {
                continue;
            }
            let key = (a.min(b), a.max(b));
            if edge_set.contains(&key) {
                continue;
            }
            chosen = Some((i, j));
            edge_set.insert(key);
            break;
        }
        let Some((i, j)) = chosen else {
            return Err(Error::InvalidRotation(format!(
                "face of size {k} admits no chord"
            )));
        };
        let (f1, f2) = split_face(&face, i, j);
        queue.push(f1);
        queue.push(f2);
    }

    let edges: Vec<(u32, u32)> = edge_set.into_iter().collect();
    let graph = Graph::from_edges(n * (delta + 1), &edges)?;
    RotationSystem::from_oriented_faces(graph, &final_faces)
}

// ---------------------------------------------------------------------------
// Certificate pullback across a uniform shallow minor
// ---------------------------------------------------------------------------

/// Pull a 1-dimensional certificate on H back to G through a uniform shallow
/// minor map: sample one representative per patch (best of `samples` draws by
/// total pairwise squared distance, realizing the expectation argument), take
/// f_G = f_H at the representatives re-centered, and y_G(v) =
/// 4 r (2L + 1) * sum of y_H over the patch. Feasibility is re-verified
/// numerically; the value scales by exactly 4 r (2L + 1).
pub fn usm_pullback(
    g: &Graph,
    h: &Graph,
    map: &UniformShallowMinorMap,
    cert_h: &EmbeddingCertificate,
    samples: usize,
    seed: u64,
) -> Result<EmbeddingCertificate> {
    map.validate(g, h)?;
    let report = cert_h.verify(h);
    if !report.feasible {
        return Err(Error::InfeasibleCertificate(report.worst_slack));
    }
    let n = g.n();
    let factor = 4.0 * map.r as f64 * (2 * map.l + 1) as f64;
    let y_g: Vec<f64> = map
        .patches
        .iter()
        .map(|patch| factor * patch.iter().map(|&x| cert_h.y[x as usize]).sum::<f64>())
        .collect();

    // expectation of the pairwise sum under independent uniform sampling
    let d = cert_h.d;
    let mut expectation = 0.0;
    for (pu, patch_u) in map.patches.iter().enumerate() {
        for (pv, patch_v) in map.patches.iter().enumerate() {
            if pu == pv {
                continue;
            }
            let mut s = 0.0;
            for &a in patch_u {
                for &b in patch_v {
                    s += dist2(&cert_h.f[a as usize], &cert_h.f[b as usize]);
                }
            }
            expectation += s / (patch_u.len() * patch_v.len()) as f64;
        }
    }

    let mut rng = rng_from(seed, "usm-pullback", 0);
    for _ in 0..samples.max(1) {
        let reps: Vec<u32> = map
            .patches
            .iter()
            .map(|patch| patch[rng.gen_range(0..patch.len())])
            .collect();
        let mut pair_sum = 0.0;
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    pair_sum += dist2(
                        &cert_h.f[reps[u] as usize],
                        &cert_h.f[reps[v] as usize],
                    );
                }
            }
        }
        if pair_sum + 1e-12 < expectation {
            continue; // below the expectation criterion; redraw
        }
        let mut f: Vec<Vec<f64>> = reps
            .iter()
            .map(|&x| cert_h.f[x as usize].clone())
            .collect();
        for j in 0..d {
            let mean: f64 = f.iter().map(|row| row[j]).sum::<f64>() / n as f64;
            for row in f.iter_mut() {
                row[j] -= mean;
            }
        }
        let cand = EmbeddingCertificate {
            d,
            f,
            y: y_g.clone(),
        };
        if cand.verify(g).feasible {
            return Ok(cand);
        }
    }
    Err(Error::SampleBudget(format!(
        "no feasible representative sample in {samples} draws"
    )))
}

fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

// ---------------------------------------------------------------------------
// Vertex-expansion hardness reduction
// ---------------------------------------------------------------------------

/// The bisect-and-copy reduction: V' = {v^i : v in V, i < k} union E, and
/// each bisection vertex e = uv is adjacent to every copy of u and of v.
/// |V'| = n k + m.
#[derive(Debug, Clone)]
pub struct ExpansionReduction {
    pub graph: Graph,
    pub k: usize,
    /// id of copy i of vertex v: v * k + i.
    pub n_orig: usize,
    /// id of bisection vertex for edge index e: n * k + e.
    pub edges_orig: Vec<(u32, u32)>,
}

impl ExpansionReduction {
    pub fn copy_id(&self, v: u32, i: usize) -> u32 {
        v * self.k as u32 + i as u32
    }

    pub fn bisection_id(&self, edge_index: usize) -> u32 {
        (self.n_orig * self.k + edge_index) as u32
    }

    /// Forward map: S' = all copies of S plus the bisection vertices of
    /// induced edges. |S'| = |S| k + `|E[S]|` and the boundary of S' is
    /// exactly delta(S).
    pub fn forward_map(&self, s: &[u32]) -> Vec<u32> {
        let mut out = Vec::new();
        let in_s: std::collections::BTreeSet<u32> = s.iter().copied().collect();
        for &v in s {
            for i in 0..self.k {
                out.push(self.copy_id(v, i));
            }
        }
        for (e, &(u, v)) in self.edges_orig.iter().enumerate() {
            if in_s.contains(&u) && in_s.contains(&v) {
                out.push(self.bisection_id(e));
            }
        }
        out.sort_unstable();
        out
    }

    /// The normalization: complete every touched copy class and add each
    /// bisection vertex whose endpoints are both touched; never increases
    /// |boundary| / |set| once k >= n^2 + n + 1.
    pub fn normalize(&self, s_prime: &[u32]) -> Vec<u32> {
        let mut touched = vec![false; self.n_orig];
        for &x in s_prime {
            if (x as usize) < self.n_orig * self.k {
                touched[x as usize / self.k] = true;
            }
        }
        let mut out = Vec::new();
        for (v, &t) in touched.iter().enumerate() {
            if t {
                for i in 0..self.k {
                    out.push(self.copy_id(v as u32, i));
                }
            }
        }
        for (e, &(u, v)) in self.edges_orig.iter().enumerate() {
            if touched[u as usize] && touched[v as usize] {
                out.push(self.bisection_id(e));
            }
        }
        out.sort_unstable();
        out
    }
}

pub fn expansion_reduction(g: &Graph, k: usize) -> Result<ExpansionReduction> {
    let n = g.n();
    let lower = n * n + n + 1;
    if k < lower {
        // permitted for testing; the ratio-monotonicity law needs the bound
    }
    let edges_orig = g.edges();
    let mut edges = Vec::with_capacity(2 * edges_orig.len() * k);
    for (e, &(u, v)) in edges_orig.iter().enumerate() {
        let b = (n * k + e) as u32;
        for i in 0..k {
            edges.push((u * k as u32 + i as u32, b));
            edges.push((v * k as u32 + i as u32, b));
        }
    }
    let graph = Graph::from_edges(n * k + edges_orig.len(), &edges)?;
    Ok(ExpansionReduction {
        graph,
        k,
        n_orig: n,
        edges_orig,
    })
}
