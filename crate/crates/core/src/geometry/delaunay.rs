//! Bowyer-Watson Delaunay triangulation and the random planar triangulation
//! generator: n - 3 points in a disk wrapped in a far outer triangle, so that
//! every face of the result (including the unbounded one) is a triangle.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::rng_from;
use crate::rotation::{rotation_from_points, RotationSystem};
use rand::Rng;

fn circumcircle_contains(a: (f64, f64), b: (f64, f64), c: (f64, f64), p: (f64, f64)) -> bool {
    // sign of the incircle determinant, orientation-corrected
    let (ax, ay) = (a.0 - p.0, a.1 - p.1);
    let (bx, by) = (b.0 - p.0, b.1 - p.1);
    let (cx, cy) = (c.0 - p.0, c.1 - p.1);
    let det = (ax * ax + ay * ay) * (bx * cy - cx * by)
        - (bx * bx + by * by) * (ax * cy - cx * ay)
        + (cx * cx + cy * cy) * (ax * by - bx * ay);
    let orient = (b.0 - a.0) * (c.1 - a.1) - (c.0 - a.0) * (b.1 - a.1);
    if orient >= 0.0 {
        det > 0.0
    } else {
        det < 0.0
    }
}

/// Triangles over point indices.
pub fn delaunay_triangles(points: &[(f64, f64)]) -> Vec<[usize; 3]> {
    let n = points.len();
    let (mut min_x, mut min_y, mut max_x, mut max_y) =
        (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for &(x, y) in points {
        min_x = min_x.min(x);
        min_y = min_y.min(y);
        max_x = max_x.max(x);
        max_y = max_y.max(y);
    }
    let span = (max_x - min_x).max(max_y - min_y).max(1.0);
    let cx = (min_x + max_x) / 2.0;
    let cy = (min_y + max_y) / 2.0;
    // super-triangle vertices, indices n, n+1, n+2
    let mut pts: Vec<(f64, f64)> = points.to_vec();
    pts.push((cx - 40.0 * span, cy - 20.0 * span));
    pts.push((cx + 40.0 * span, cy - 20.0 * span));
    pts.push((cx, cy + 40.0 * span));
    let mut tris: Vec<[usize; 3]> = vec![[n, n + 1, n + 2]];
    for p in 0..n {
        let mut bad: Vec<usize> = Vec::new();
        for (t, tri) in tris.iter().enumerate() {
            if circumcircle_contains(pts[tri[0]], pts[tri[1]], pts[tri[2]], pts[p]) {
                bad.push(t);
            }
        }
        // boundary of the bad region: edges appearing in exactly one bad tri
        let mut edge_count = std::collections::BTreeMap::new();
        for &t in &bad {
            let tri = tris[t];
            for k in 0..3 {
                let (a, b) = (tri[k], tri[(k + 1) % 3]);
                let key = (a.min(b), a.max(b));
                *edge_count.entry(key).or_insert(0usize) += 1;
            }
        }
        for &t in bad.iter().rev() {
            tris.swap_remove(t);
        }
        for (&(a, b), &count) in &edge_count {
            if count == 1 {
                tris.push([a, b, p]);
            }
        }
    }
    tris.retain(|tri| tri.iter().all(|&v| v < n));
    tris
}

/// Build a planar triangulation rotation system from point coordinates: edges
/// from the Delaunay triangles, rotations by angular order.
pub fn triangulation_from_points(points: &[(f64, f64)]) -> Result<RotationSystem> {
    let tris = delaunay_triangles(points);
    let mut edges: Vec<(u32, u32)> = Vec::new();
    for tri in &tris {
        for k in 0..3 {
            let (a, b) = (tri[k] as u32, tri[(k + 1) % 3] as u32);
            edges.push((a.min(b), a.max(b)));
        }
    }
    edges.sort_unstable();
    edges.dedup();
    let g = Graph::from_edges(points.len(), &edges)?;
    rotation_from_points(g, points)
}

/// A random simple planar triangulation with n total vertices: n - 3 points
/// in the unit disk plus a far enclosing triangle; all faces (including the
/// outer face) are triangles. Degenerate samples are rejected and redrawn.
pub fn generate_random_triangulation(n: usize, seed: u64) -> Result<RotationSystem> {
    if n < 4 {
        return Err(Error::Precondition("need n >= 4".into()));
    }
    for attempt in 0..64u64 {
        let mut rng = rng_from(seed, "delaunay-gen", attempt);
        let inner = n - 3;
        let mut points: Vec<(f64, f64)> = Vec::with_capacity(n);
        let min_sep = 0.7 / (inner as f64).sqrt().max(1.0);
        let mut guard = 0usize;
        while points.len() < inner && guard < 100_000 {
            guard += 1;
            let x = rng.gen_range(-1.0..1.0);
            let y = rng.gen_range(-1.0..1.0);
            if x * x + y * y > 1.0 {
                continue;
            }
            if points
                .iter()
                .all(|&(px, py)| (px - x).powi(2) + (py - y).powi(2) > min_sep * min_sep)
            {
                points.push((x, y));
            }
        }
        if points.len() < inner {
            continue;
        }
        // far triangle with incircle well beyond the unit disk
        for angle in [90.0f64, 210.0, 330.0] {
            let r = angle.to_radians();
            points.push((8.0 * r.cos(), 8.0 * r.sin()));
        }
        let Ok(rot) = triangulation_from_points(&points) else {
            continue;
        };
        if rot.graph().n() == n
            && rot.graph().is_connected()
            && rot.is_triangulation()
            && rot.euler_genus().map(|g| g == 0).unwrap_or(false)
        {
            return Ok(rot);
        }
    }
    Err(Error::Degenerate(
        "no valid triangulation after 64 resamples".into(),
    ))
}
