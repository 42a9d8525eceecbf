//! Circle packing of a simple planar triangulation: iterative radius
//! adjustment (uniform neighbor model) until every interior angle sum is
//! 2 pi, breadth-first plane layout, a tangency repair pass, inverse
//! stereographic lift, and Mobius recentering. The output's intersection
//! graph equals the input graph.

use super::sphere::{lift_to_sphere, sphere_normalize};
use super::{intersection_graph_with_tol, BallKind, BallSystem};
use crate::error::{Error, Result};
use crate::rotation::RotationSystem;
use std::collections::VecDeque;

/// Angle at the corner with radius r in a tangent triple (r, ru, rw).
fn corner_angle(r: f64, ru: f64, rw: f64) -> f64 {
    let a = r + ru;
    let b = r + rw;
    let c = ru + rw;
    let cosv = ((a * a + b * b - c * c) / (2.0 * a * b)).clamp(-1.0, 1.0);
    cosv.acos()
}

fn angle_sum(rot: &[u32], r: f64, radii: &[f64]) -> f64 {
    let k = rot.len();
    (0..k)
        .map(|i| {
            corner_angle(
                r,
                radii[rot[i] as usize],
                radii[rot[(i + 1) % k] as usize],
            )
        })
        .sum()
}

/// Pack a planar triangulation as tangent circles on the sphere, recentered
/// so the cap centers have centroid zero. The three vertices of the chosen
/// boundary face keep fixed radii; every other vertex's angle sum is driven
/// to 2 pi within 1e-8.
pub fn circle_pack(r: &RotationSystem) -> Result<BallSystem> {
    let g = r.graph();
    let n = g.n();
    if n < 4 {
        return Err(Error::Precondition("need n >= 4".into()));
    }
    if r.euler_genus()? != 0 {
        return Err(Error::Precondition("need a genus-0 embedding".into()));
    }
    if !r.is_triangulation() {
        return Err(Error::NotTriangulated(
            "circle packing needs every face to be a triangle".into(),
        ));
    }
    let faces = r.faces();
    // boundary face: lexicographically largest sorted vertex triple
    let boundary_face = faces
        .iter()
        .max_by_key(|f| {
            let mut vs: Vec<u32> = f.iter().map(|&(a, _)| a).collect();
            vs.sort_unstable();
            vs
        })
        .unwrap()
        .clone();
    let boundary: Vec<u32> = boundary_face.iter().map(|&(a, _)| a).collect();
    let is_boundary = {
        let mut flags = vec![false; n];
        for &v in &boundary {
            flags[v as usize] = true;
        }
        flags
    };

    // radius iteration, Gauss-Seidel with uniform-neighbor updates
    let target = 2.0 * std::f64::consts::PI;
    let mut radii = vec![1.0f64; n];
    let mut residual = f64::INFINITY;
    let mut iterations = 0usize;
    while residual > 1e-10 {
        iterations += 1;
        if iterations > 100_000 {
            return Err(Error::NoConvergence(format!(
                "packing residual {residual:.3e} after {iterations} sweeps"
            )));
        }
        residual = 0.0;
        for v in 0..n {
            if is_boundary[v] {
                continue;
            }
            let rot = r.rotation(v);
            let k = rot.len() as f64;
            let theta = angle_sum(rot, radii[v], &radii);
            residual = residual.max((theta - target).abs());
            // uniform neighbor model: effective neighbor radius from theta,
            // then the radius that would give exactly 2 pi
            let s = (theta / (2.0 * k)).sin();
            let u = radii[v] * s / (1.0 - s);
            let s_hat = (std::f64::consts::PI / k).sin();
            let r_hat = u * (1.0 - s_hat) / s_hat;
            radii[v] = r_hat.max(1e-12);
        }
    }

    // plane layout: boundary triangle first, then BFS over faces; the two
    // candidate positions for the third vertex are disambiguated by face
    // orientation, fixed globally by whichever sign lays out consistently
    for sign in [1.0f64, -1.0] {
        if let Some(centers) = layout(r, &faces, &boundary_face, &radii, sign) {
            // tangency repair: inflate so every edge's circles close the gap
            let mut worst_gap = 0.0f64;
            for (u, v) in g.edges() {
                let d = dist(&centers[u as usize], &centers[v as usize]);
                worst_gap = worst_gap.max(d - radii[u as usize] - radii[v as usize]);
            }
            let bump = worst_gap.max(0.0) / 2.0 + 1e-12;
            let radii_fixed: Vec<f64> = radii.iter().map(|&x| x + bump).collect();
            let plane = BallSystem {
                d: 2,
                kind: BallKind::Euclidean,
                centers: centers.iter().map(|&(x, y)| vec![x, y]).collect(),
                radii: radii_fixed,
            };
            let lifted = lift_to_sphere(&plane)?;
            let normalized = sphere_normalize(&lifted)?;
            let packed = super::repair_to_cover(&normalized, g)?;
            // the output must realize the input graph exactly
            let realized = intersection_graph_with_tol(&packed, 1e-6)?;
            if realized.edges() == g.edges() {
                return Ok(packed);
            }
        }
    }
    Err(Error::NoConvergence(
        "no consistent layout orientation".into(),
    ))
}

fn dist(a: &(f64, f64), b: &(f64, f64)) -> f64 {
    ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt()
}

/// BFS face layout. Returns None if the layout contradicts itself (wrong
/// orientation sign): a vertex placed twice at inconsistent positions.
fn layout(
    r: &RotationSystem,
    faces: &[Vec<(u32, u32)>],
    boundary_face: &[(u32, u32)],
    radii: &[f64],
    sign: f64,
) -> Option<Vec<(f64, f64)>> {
    let g = r.graph();
    let n = g.n();
    let mut pos: Vec<Option<(f64, f64)>> = vec![None; n];
    let (b0, b1, b2) = (
        boundary_face[0].0 as usize,
        boundary_face[1].0 as usize,
        boundary_face[2].0 as usize,
    );
    pos[b0] = Some((0.0, 0.0));
    pos[b1] = Some((radii[b0] + radii[b1], 0.0));
    // third boundary vertex above the base edge
    {
        let a = radii[b0] + radii[b2];
        let c = radii[b0] + radii[b1];
        let b = radii[b1] + radii[b2];
        let x = (a * a + c * c - b * b) / (2.0 * c);
        let y2 = a * a - x * x;
        let y = y2.max(0.0).sqrt();
        pos[b2] = Some((x, y));
    }
    // adjacency of faces via shared darts: process faces whose two vertices
    // are placed
    let mut queue: VecDeque<usize> = VecDeque::new();
    let mut done = vec![false; faces.len()];
    for (i, f) in faces.iter().enumerate() {
        let placed = f.iter().filter(|&&(a, _)| pos[a as usize].is_some()).count();
        if placed >= 2 {
            queue.push_back(i);
        }
    }
    let mut progress = true;
    while progress {
        progress = false;
        let mut requeue: Vec<usize> = Vec::new();
        while let Some(fi) = queue.pop_front() {
            if done[fi] {
                continue;
            }
            let f = &faces[fi];
            let verts = [f[0].0 as usize, f[1].0 as usize, f[2].0 as usize];
            let unplaced: Vec<usize> = verts
                .iter()
                .copied()
                .filter(|&v| pos[v].is_none())
                .collect();
            match unplaced.len() {
                0 => {
                    done[fi] = true;
                    progress = true;
                }
                1 => {
                    let v = unplaced[0];
                    let others: Vec<usize> =
                        verts.iter().copied().filter(|&x| x != v).collect();
                    // orient (u, w) following the face walk ending at v
                    let (u, w) = orient_pair(f, v as u32, others[0] as u32, others[1] as u32);
                    let pu = pos[u as usize].unwrap();
                    let pw = pos[w as usize].unwrap();
                    let a = radii[u as usize] + radii[v];
                    let b = radii[w as usize] + radii[v];
                    let c = dist(&pu, &pw);
                    if c < 1e-12 {
                        return None;
                    }
                    let x = (a * a + c * c - b * b) / (2.0 * c);
                    let y2 = a * a - x * x;
                    let y = y2.max(0.0).sqrt() * sign;
                    let ex = ((pw.0 - pu.0) / c, (pw.1 - pu.1) / c);
                    let ey = (-ex.1, ex.0);
                    let cand = (
                        pu.0 + x * ex.0 + y * ey.0,
                        pu.1 + x * ex.1 + y * ey.1,
                    );
                    pos[v] = Some(cand);
                    done[fi] = true;
                    progress = true;
                    // neighbors of the new vertex may complete other faces
                    for (j, other) in faces.iter().enumerate() {
                        if !done[j]
                            && other
                                .iter()
                                .filter(|&&(a, _)| pos[a as usize].is_some())
                                .count()
                                >= 2
                        {
                            requeue.push(j);
                        }
                    }
                }
                _ => {}
            }
        }
        for j in requeue {
            if !done[j] {
                queue.push_back(j);
                progress = true;
            }
        }
        if queue.is_empty() && pos.iter().any(Option::is_none) && !progress {
            return None;
        }
        if pos.iter().all(Option::is_some) {
            break;
        }
    }
    if pos.iter().any(Option::is_none) {
        return None;
    }
    // consistency: every placed face triangle must have matching side lengths
    let centers: Vec<(f64, f64)> = pos.into_iter().map(Option::unwrap).collect();
    let mut worst = 0.0f64;
    for (u, v) in g.edges() {
        let d = dist(&centers[u as usize], &centers[v as usize]);
        let want = radii[u as usize] + radii[v as usize];
        worst = worst.max((d - want).abs() / want);
    }
    if worst > 1e-3 {
        return None;
    }
    Some(centers)
}

/// Order the two placed vertices of a face so that the walk runs u -> w with
/// v as the third corner.
fn orient_pair(face: &[(u32, u32)], v: u32, a: u32, b: u32) -> (u32, u32) {
    for &(x, y) in face {
        if x == a && y == b {
            return (a, b);
        }
        if x == b && y == a {
            return (b, a);
        }
    }
    let _ = v;
    (a, b)
}
