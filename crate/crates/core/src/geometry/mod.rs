//! Geometric certificate factories: ball systems and their intersection
//! graphs, ply probing, k-nearest-neighbour graphs, circle packings of planar
//! triangulations lifted to the sphere and recentered, and the ball-form
//! certificate read off a normalized geodesic system.

mod delaunay;
mod pack;
mod sphere;

pub use delaunay::generate_random_triangulation;
pub use pack::circle_pack;
pub use sphere::{mobius_map, sphere_normalize, transport_cap};

use crate::certificates::BallCertificate;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::rng_from;
use rand::Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BallKind {
    Euclidean,
    GeodesicOnSphere,
}

/// A collection of balls: euclidean balls in R^d, or geodesic caps on S^d
/// (centers are unit vectors in R^{d+1}, radii are geodesic angles).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BallSystem {
    pub d: usize,
    pub kind: BallKind,
    pub centers: Vec<Vec<f64>>,
    pub radii: Vec<f64>,
}

impl BallSystem {
    pub fn n(&self) -> usize {
        self.centers.len()
    }

    pub fn validate(&self) -> Result<()> {
        let want = match self.kind {
            BallKind::Euclidean => self.d,
            BallKind::GeodesicOnSphere => self.d + 1,
        };
        if self.centers.iter().any(|c| c.len() != want) {
            return Err(Error::Precondition(format!(
                "centers must have {want} coordinates"
            )));
        }
        if self.radii.len() != self.centers.len() {
            return Err(Error::Precondition("one radius per center".into()));
        }
        if self.radii.iter().any(|&r| r < 0.0) {
            return Err(Error::Precondition("radii must be nonnegative".into()));
        }
        if self.kind == BallKind::GeodesicOnSphere {
            for c in &self.centers {
                let norm: f64 = c.iter().map(|x| x * x).sum::<f64>().sqrt();
                if (norm - 1.0).abs() > 1e-9 {
                    return Err(Error::Precondition(format!(
                        "geodesic center off the sphere by {:.2e}",
                        (norm - 1.0).abs()
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn pair_distance(&self, i: usize, j: usize) -> f64 {
        match self.kind {
            BallKind::Euclidean => self.centers[i]
                .iter()
                .zip(&self.centers[j])
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt(),
            BallKind::GeodesicOnSphere => {
                let dot: f64 = self.centers[i]
                    .iter()
                    .zip(&self.centers[j])
                    .map(|(a, b)| a * b)
                    .sum();
                dot.clamp(-1.0, 1.0).acos()
            }
        }
    }
}

/// Edge uv iff the closed balls intersect: distance <= r_u + r_v (+ tol).
pub fn intersection_graph_with_tol(b: &BallSystem, tol: f64) -> Result<Graph> {
    b.validate()?;
    let n = b.n();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if b.pair_distance(i, j) <= b.radii[i] + b.radii[j] + tol {
                edges.push((i as u32, j as u32));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

pub fn intersection_graph(b: &BallSystem) -> Result<Graph> {
    intersection_graph_with_tol(b, 0.0)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PlyReport {
    pub ply: usize,
    pub method: String,
}

fn coverage_euclidean(b: &BallSystem, point: &[f64]) -> usize {
    b.centers
        .iter()
        .zip(&b.radii)
        .filter(|(c, &r)| {
            let d2: f64 = c.iter().zip(point).map(|(a, p)| (a - p) * (a - p)).sum();
            d2.sqrt() <= r + 1e-12
        })
        .count()
}

fn coverage_geodesic(b: &BallSystem, point: &[f64]) -> usize {
    b.centers
        .iter()
        .zip(&b.radii)
        .filter(|(c, &r)| {
            let dot: f64 = c.iter().zip(point).map(|(a, p)| a * p).sum();
            dot.clamp(-1.0, 1.0).acos() <= r + 1e-12
        })
        .count()
}

/// Maximum number of balls covering a single point. Exact by arrangement
/// probing (centers plus pairwise boundary intersections) for euclidean
/// d <= 2 and geodesic systems on S^2; Monte-Carlo lower-confidence probe
/// elsewhere.
pub fn ply(b: &BallSystem, probes: usize) -> Result<PlyReport> {
    b.validate()?;
    if b.n() == 0 {
        return Ok(PlyReport {
            ply: 0,
            method: "empty".into(),
        });
    }
    match (b.kind, b.d) {
        (BallKind::Euclidean, 1) => {
            let mut cands: Vec<Vec<f64>> = Vec::new();
            for (c, &r) in b.centers.iter().zip(&b.radii) {
                cands.push(vec![c[0] - r]);
                cands.push(vec![c[0] + r]);
                cands.push(vec![c[0]]);
            }
            let best = cands
                .iter()
                .map(|p| coverage_euclidean(b, p))
                .max()
                .unwrap_or(0);
            Ok(PlyReport {
                ply: best,
                method: "exact-arrangement".into(),
            })
        }
        (BallKind::Euclidean, 2) => {
            let mut cands: Vec<Vec<f64>> = b.centers.clone();
            let n = b.n();
            for i in 0..n {
                for j in (i + 1)..n {
                    let (ci, cj) = (&b.centers[i], &b.centers[j]);
                    let (ri, rj) = (b.radii[i], b.radii[j]);
                    let dx = cj[0] - ci[0];
                    let dy = cj[1] - ci[1];
                    let d = (dx * dx + dy * dy).sqrt();
                    if d <= 1e-300 || d > ri + rj || d < (ri - rj).abs() {
                        continue;
                    }
                    let a = (ri * ri - rj * rj + d * d) / (2.0 * d);
                    let h2 = ri * ri - a * a;
                    let h = h2.max(0.0).sqrt();
                    let mx = ci[0] + a * dx / d;
                    let my = ci[1] + a * dy / d;
                    cands.push(vec![mx + h * dy / d, my - h * dx / d]);
                    cands.push(vec![mx - h * dy / d, my + h * dx / d]);
                }
            }
            let best = cands
                .iter()
                .map(|p| coverage_euclidean(b, p))
                .max()
                .unwrap_or(0);
            Ok(PlyReport {
                ply: best,
                method: "exact-arrangement".into(),
            })
        }
        (BallKind::GeodesicOnSphere, 2) => {
            let mut cands: Vec<Vec<f64>> = b.centers.clone();
            let n = b.n();
            for i in 0..n {
                for j in (i + 1)..n {
                    cands.extend(cap_boundary_intersections(
                        &b.centers[i],
                        b.radii[i],
                        &b.centers[j],
                        b.radii[j],
                    ));
                }
            }
            let best = cands
                .iter()
                .map(|p| coverage_geodesic(b, p))
                .max()
                .unwrap_or(0);
            Ok(PlyReport {
                ply: best,
                method: "exact-arrangement".into(),
            })
        }
        _ => {
            let mut rng = rng_from(11, "ply-probe", 0);
            let mut best = 0;
            for _ in 0..probes.max(100) {
                let i = rng.gen_range(0..b.n());
                let point = match b.kind {
                    BallKind::Euclidean => {
                        let mut p: Vec<f64> = (0..b.d).map(|_| rng.gen_range(-1.0..1.0)).collect();
                        let norm: f64 = p.iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-12);
                        let scale = rng.gen::<f64>().powf(1.0 / b.d as f64) * b.radii[i] / norm;
                        for (pk, ck) in p.iter_mut().zip(&b.centers[i]) {
                            *pk = ck + *pk * scale;
                        }
                        p
                    }
                    BallKind::GeodesicOnSphere => {
                        let mut p: Vec<f64> =
                            (0..=b.d).map(|_| rng.gen_range(-1.0..1.0)).collect();
                        let norm: f64 = p.iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-12);
                        for pk in p.iter_mut() {
                            *pk /= norm;
                        }
                        p
                    }
                };
                let c = match b.kind {
                    BallKind::Euclidean => coverage_euclidean(b, &point),
                    BallKind::GeodesicOnSphere => coverage_geodesic(b, &point),
                };
                best = best.max(c);
            }
            Ok(PlyReport {
                ply: best,
                method: "monte-carlo-lower-bound".into(),
            })
        }
    }
}

/// Intersection points of two cap boundary circles on S^2.
fn cap_boundary_intersections(c1: &[f64], r1: f64, c2: &[f64], r2: f64) -> Vec<Vec<f64>> {
    let dot: f64 = c1.iter().zip(c2).map(|(a, b)| a * b).sum();
    let (h1, h2) = (r1.cos(), r2.cos());
    let det = 1.0 - dot * dot;
    if det.abs() < 1e-14 {
        return Vec::new();
    }
    let a = (h1 - h2 * dot) / det;
    let bq = (h2 - h1 * dot) / det;
    let w = [
        c1[1] * c2[2] - c1[2] * c2[1],
        c1[2] * c2[0] - c1[0] * c2[2],
        c1[0] * c2[1] - c1[1] * c2[0],
    ];
    let base: Vec<f64> = (0..3).map(|k| a * c1[k] + bq * c2[k]).collect();
    let base_norm2: f64 = base.iter().map(|x| x * x).sum();
    let w_norm2: f64 = w.iter().map(|x| x * x).sum();
    let t2 = (1.0 - base_norm2) / w_norm2;
    if t2 < 0.0 {
        return Vec::new();
    }
    let t = t2.sqrt();
    vec![
        (0..3).map(|k| base[k] + t * w[k]).collect(),
        (0..3).map(|k| base[k] - t * w[k]).collect(),
    ]
}

/// k-nearest-neighbour graph: edge v_i v_j iff i is among the k nearest of j
/// or vice versa; distance ties broken by smaller index.
pub fn knn_graph(points: &[Vec<f64>], k: usize) -> Result<Graph> {
    let n = points.len();
    for i in 0..n {
        for j in (i + 1)..n {
            if points[i] == points[j] {
                return Err(Error::Precondition(format!("duplicate points {i} and {j}")));
            }
        }
    }
    let mut edges = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for i in 0..n {
        let mut order: Vec<(f64, usize)> = (0..n)
            .filter(|&j| j != i)
            .map(|j| {
                let d2: f64 = points[i]
                    .iter()
                    .zip(&points[j])
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum();
                (d2, j)
            })
            .collect();
        order.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)));
        for &(_, j) in order.iter().take(k.min(order.len())) {
            let key = (i.min(j) as u32, i.max(j) as u32);
            if seen.insert(key) {
                edges.push(key);
            }
        }
    }
    Graph::from_edges(n, &edges)
}

/// Chordal radius of a geodesic cap: the largest euclidean distance from the
/// cap center to a point of the cap in the ambient space.
pub fn chordal_radius(geodesic: f64) -> f64 {
    (2.0 * (geodesic.min(std::f64::consts::PI) / 2.0).sin()).min(2.0)
}

/// Read a ball-form certificate off a normalized geodesic system: f = the
/// cap centers re-centered exactly (the recentering loop stops at 1e-7, and
/// the translation changes no pairwise difference), s = chordal radii.
/// Feasible because intersecting caps satisfy s_u + s_v >= chord distance of
/// their centers.
pub fn ballsystem_to_certificate(b: &BallSystem, g: &Graph) -> Result<BallCertificate> {
    b.validate()?;
    if b.kind != BallKind::GeodesicOnSphere {
        return Err(Error::Precondition("need a geodesic system".into()));
    }
    if b.n() != g.n() {
        return Err(Error::Precondition("system/graph size mismatch".into()));
    }
    let n = b.n();
    let mut centroid = vec![0.0; b.d + 1];
    for c in &b.centers {
        for (m, x) in centroid.iter_mut().zip(c) {
            *m += x / n as f64;
        }
    }
    let cnorm: f64 = centroid.iter().map(|x| x * x).sum::<f64>().sqrt();
    if cnorm > 1e-6 {
        return Err(Error::Precondition(format!(
            "centroid of centers off origin by {cnorm:.2e}"
        )));
    }
    for (u, v) in g.edges() {
        let d = b.pair_distance(u as usize, v as usize);
        if d > b.radii[u as usize] + b.radii[v as usize] + 1e-9 {
            return Err(Error::Precondition(format!(
                "edge {u}-{v} absent from the intersection graph"
            )));
        }
    }
    let s: Vec<f64> = b.radii.iter().map(|&r| chordal_radius(r)).collect();
    let f: Vec<Vec<f64>> = b
        .centers
        .iter()
        .map(|c| c.iter().zip(&centroid).map(|(x, m)| x - m).collect())
        .collect();
    Ok(BallCertificate { d: b.d + 1, f, s })
}

/// A random k-ply system in the plane: k overlaid layers of pairwise disjoint
/// disks, each disk's radius just under half its nearest in-layer distance.
/// The union has ply at most k by construction.
pub fn random_kply_system(n: usize, k: usize, seed: u64) -> Result<BallSystem> {
    if n < 2 || k == 0 {
        return Err(Error::Precondition("need n >= 2 and k >= 1".into()));
    }
    let mut rng = rng_from(seed, "kply", 0);
    let mut centers: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut radii = vec![0.0; n];
    let mut layer_of = Vec::with_capacity(n);
    for i in 0..n {
        layer_of.push(i % k);
        centers.push(vec![rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)]);
    }
    for i in 0..n {
        let mut nearest = f64::INFINITY;
        for j in 0..n {
            if i != j && layer_of[i] == layer_of[j] {
                let d2: f64 = centers[i]
                    .iter()
                    .zip(&centers[j])
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum();
                nearest = nearest.min(d2.sqrt());
            }
        }
        radii[i] = if nearest.is_finite() {
            0.499 * nearest
        } else {
            0.5
        };
    }
    let b = BallSystem {
        d: 2,
        kind: BallKind::Euclidean,
        centers,
        radii,
    };
    Ok(b)
}

/// Inflate all radii uniformly by the worst deficit over the edges of `g`,
/// so every closed pair that should intersect does. Composed cap transports
/// drift by ~1e-9 per map, and the certificate reader checks edges at 1e-9,
/// so the final system gets one exact repair pass; centers are untouched.
pub fn repair_to_cover(b: &BallSystem, g: &Graph) -> Result<BallSystem> {
    b.validate()?;
    if b.n() != g.n() {
        return Err(Error::Precondition("system/graph size mismatch".into()));
    }
    let mut deficit = 0.0f64;
    for (u, v) in g.edges() {
        let d = b.pair_distance(u as usize, v as usize);
        deficit = deficit.max(d - b.radii[u as usize] - b.radii[v as usize]);
    }
    if deficit <= 0.0 {
        return Ok(b.clone());
    }
    let bump = deficit / 2.0 + 1e-13;
    Ok(BallSystem {
        d: b.d,
        kind: b.kind,
        centers: b.centers.clone(),
        radii: b.radii.iter().map(|&r| r + bump).collect(),
    })
}

/// Seeded uniform points in [-1, 1]^d, for the k-NN generator.
pub fn random_points(n: usize, d: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = rng_from(seed, "knn-points", 0);
    (0..n)
        .map(|_| (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect())
        .collect()
}

/// Lift a euclidean system to the sphere by inverse stereographic projection
/// (balls map to caps) and recenter it.
pub fn lift_and_normalize(b: &BallSystem) -> Result<BallSystem> {
    b.validate()?;
    if b.kind != BallKind::Euclidean {
        return Err(Error::Precondition("lift needs a euclidean system".into()));
    }
    let lifted = sphere::lift_to_sphere(b)?;
    sphere_normalize(&lifted)
}
