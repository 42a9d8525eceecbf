//! Brute-force ground truth for small instances: exact vertex/edge expansion
//! with witnesses, exact dense lambda_2, exhaustive best separators, and a
//! grid-search oracle for the reweighted gap on symmetry-reduced instances.

use crate::eigen::sym_eigen;
use crate::error::{Error, Result};
use crate::graph::{Graph, Separator};
use serde::{Deserialize, Serialize};

const PSI_CAP: usize = 24;
const SEPARATOR_CAP: usize = 20;
const LAMBDA_CAP: usize = 2000;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OracleReport {
    pub psi_star: f64,
    pub psi_witness: Vec<u32>,
    pub phi_star: f64,
    pub phi_witness: Vec<u32>,
    pub lambda2: f64,
    pub notes: String,
}

fn adjacency_masks(g: &Graph) -> Vec<u64> {
    (0..g.n())
        .map(|v| {
            g.neighbors(v)
                .iter()
                .fold(0u64, |m, &u| m | (1u64 << u))
        })
        .collect()
}

fn subset_vec(mask: u64, n: usize) -> Vec<u32> {
    (0..n as u32).filter(|&v| mask & (1 << v) != 0).collect()
}

/// Exhaustive minimum over nonempty S with |S| <= floor(n/2); ties broken by
/// the lexicographically-least witness, i.e. the smallest subset bitmask.
fn brute_ratio(g: &Graph, edge_version: bool) -> Result<(f64, Vec<u32>)> {
    let n = g.n();
    if n > PSI_CAP {
        return Err(Error::CapExceeded(format!("n = {n} > {PSI_CAP}")));
    }
    if n < 2 {
        return Err(Error::InvalidSubset("need n >= 2".into()));
    }
    let adj = adjacency_masks(g);
    let half = n / 2;
    let full: u64 = if n == 64 { !0 } else { (1u64 << n) - 1 };
    let mut best = f64::INFINITY;
    let mut witness = 0u64;
    for s in 1..=full {
        let size = s.count_ones() as usize;
        if size > half {
            continue;
        }
        let value = if edge_version {
            let mut cut = 0u32;
            let mut rest = s;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                cut += (adj[v] & !s).count_ones();
            }
            cut as f64 / size as f64
        } else {
            let mut boundary = 0u64;
            let mut rest = s;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                boundary |= adj[v];
            }
            (boundary & !s).count_ones() as f64 / size as f64
        };
        if value < best - 1e-12 {
            best = value;
            witness = s;
        }
    }
    Ok((best, subset_vec(witness, n)))
}

/// Exact vertex expansion with the lexicographically-least witness.
pub fn brute_psi(g: &Graph) -> Result<(f64, Vec<u32>)> {
    brute_ratio(g, false)
}

/// Exact edge expansion with the lexicographically-least witness.
pub fn brute_phi(g: &Graph) -> Result<(f64, Vec<u32>)> {
    brute_ratio(g, true)
}

/// Exact second-smallest Laplacian eigenvalue by dense decomposition.
pub fn dense_lambda2(g: &Graph) -> Result<f64> {
    if g.n() > LAMBDA_CAP {
        return Err(Error::CapExceeded(format!("n = {} > {LAMBDA_CAP}", g.n())));
    }
    if g.n() < 2 {
        return Err(Error::InvalidSubset("need n >= 2".into()));
    }
    let (vals, _) = sym_eigen(&g.laplacian())?;
    Ok(vals[1])
}

/// Grid/coordinate search for the maximum reweighted spectral gap over
/// symmetric doubly stochastic reweightings supported on E plus self-loops,
/// with edge weights constant on each supplied orbit. With no orbit partition
/// every edge shares one weight, which is exact for edge-transitive graphs.
/// The returned value is a certified lower bound on the optimum.
pub fn oracle_lambda2_star(g: &Graph, orbits: Option<&[Vec<usize>]>, grid: usize) -> Result<f64> {
    let edges = g.edges();
    let default_orbits;
    let orbits: &[Vec<usize>] = match orbits {
        Some(o) => o,
        None => {
            default_orbits = vec![(0..edges.len()).collect::<Vec<usize>>()];
            &default_orbits
        }
    };
    if orbits.len() > 3 {
        return Err(Error::CapExceeded(format!(
            "{} orbit parameters (max 3)",
            orbits.len()
        )));
    }
    let mut orbit_of = vec![usize::MAX; edges.len()];
    for (k, orbit) in orbits.iter().enumerate() {
        for &e in orbit {
            if e >= edges.len() || orbit_of[e] != usize::MAX {
                return Err(Error::InvalidSubset("bad orbit partition".into()));
            }
            orbit_of[e] = k;
        }
    }
    if orbit_of.contains(&usize::MAX) {
        return Err(Error::InvalidSubset("orbit partition misses an edge".into()));
    }

    let n = g.n();
    let eval = |w: &[f64]| -> f64 {
        // I - P with row sums forced to 1 via self-loops; infeasible if any
        // vertex load exceeds 1.
        let mut load = vec![0.0; n];
        for (e, &(u, v)) in edges.iter().enumerate() {
            let we = w[orbit_of[e]];
            load[u as usize] += we;
            load[v as usize] += we;
        }
        if load.iter().any(|&l| l > 1.0 + 1e-12) {
            return f64::NEG_INFINITY;
        }
        let mut m = vec![vec![0.0; n]; n];
        for (e, &(u, v)) in edges.iter().enumerate() {
            let we = w[orbit_of[e]];
            m[u as usize][v as usize] = -we;
            m[v as usize][u as usize] = -we;
        }
        for v in 0..n {
            m[v][v] = load[v];
        }
        match sym_eigen(&m) {
            Ok((vals, _)) => vals[1],
            Err(_) => f64::NEG_INFINITY,
        }
    };

    let k = orbits.len();
    let mut lo = vec![0.0; k];
    let mut hi = vec![1.0; k];
    let mut best = f64::NEG_INFINITY;
    let mut best_w = vec![0.0; k];
    for _level in 0..4 {
        let steps = grid.max(4);
        let mut idx = vec![0usize; k];
        loop {
            let w: Vec<f64> = (0..k)
                .map(|i| lo[i] + (hi[i] - lo[i]) * idx[i] as f64 / steps as f64)
                .collect();
            let val = eval(&w);
            if val > best {
                best = val;
                best_w = w;
            }
            // odometer
            let mut d = 0;
            loop {
                if d == k {
                    break;
                }
                idx[d] += 1;
                if idx[d] <= steps {
                    break;
                }
                idx[d] = 0;
                d += 1;
            }
            if d == k {
                break;
            }
        }
        // shrink the window around the best point
        for i in 0..k {
            let span = (hi[i] - lo[i]) / steps as f64;
            lo[i] = (best_w[i] - 2.0 * span).max(0.0);
            hi[i] = (best_w[i] + 2.0 * span).min(1.0);
        }
    }
    if best == f64::NEG_INFINITY {
        return Err(Error::Degenerate("no feasible reweighting found".into()));
    }
    Ok(best)
}

/// Exhaustive minimum-size alpha-separator. Subsets are enumerated in
/// (size, lexicographic) order; the leftover components are packed into the
/// two sides by subset-sum over component sizes.
pub fn brute_separator(g: &Graph, alpha: f64) -> Result<Separator> {
    let n = g.n();
    if n > SEPARATOR_CAP {
        return Err(Error::CapExceeded(format!("n = {n} > {SEPARATOR_CAP}")));
    }
    let bound = (alpha * n as f64 + 1e-9).floor() as usize;
    for size in 0..=n {
        let mut comb: Vec<usize> = (0..size).collect();
        loop {
            let s: Vec<u32> = comb.iter().map(|&i| i as u32).collect();
            if let Some((a, b)) = try_pack(g, &s, bound) {
                return Separator::new(g, s, a, b, alpha);
            }
            // next combination
            let mut i = size;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if comb[i] != i + n - size {
                    comb[i] += 1;
                    for j in i + 1..size {
                        comb[j] = comb[j - 1] + 1;
                    }
                    break;
                }
                if i == 0 {
                    comb.clear();
                    break;
                }
            }
            if comb.is_empty() || size == 0 {
                break;
            }
        }
    }
    unreachable!("S = V always packs");
}

/// Try to split the components of V minus S into two sides of size <= bound.
fn try_pack(g: &Graph, s: &[u32], bound: usize) -> Option<(Vec<u32>, Vec<u32>)> {
    let n = g.n();
    let mut in_s = vec![false; n];
    for &v in s {
        in_s[v as usize] = true;
    }
    let rest: Vec<u32> = (0..n as u32).filter(|&v| !in_s[v as usize]).collect();
    if rest.is_empty() {
        return Some((Vec::new(), Vec::new()));
    }
    let (sub, map) = g.induced(&rest).ok()?;
    let comps = sub.components();
    let sizes: Vec<usize> = comps.iter().map(Vec::len).collect();
    let total: usize = sizes.iter().sum();
    if total > 2 * bound {
        return None;
    }
    // subset-sum over component sizes: find side A with total-bound <= |A| <= bound
    let mut reach = vec![u64::MAX; total + 1];
    reach[0] = 0;
    for (ci, &sz) in sizes.iter().enumerate() {
        for t in (0..=total.saturating_sub(sz)).rev() {
            if reach[t] != u64::MAX && reach[t + sz] == u64::MAX {
                reach[t + sz] = ci as u64;
            }
        }
    }
    let low = total.saturating_sub(bound);
    let target = (low..=bound.min(total)).find(|&t| reach[t] != u64::MAX)?;
    // reconstruct which components land in A
    let mut in_a = vec![false; sizes.len()];
    let mut t = target;
    while t > 0 {
        let ci = reach[t] as usize;
        in_a[ci] = true;
        t -= sizes[ci];
    }
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (ci, comp) in comps.iter().enumerate() {
        let side = if in_a[ci] { &mut a } else { &mut b };
        for &v in comp {
            side.push(map[v as usize]);
        }
    }
    a.sort_unstable();
    b.sort_unstable();
    Some((a, b))
}

pub fn oracle_report(g: &Graph) -> Result<OracleReport> {
    let (psi_star, psi_witness) = brute_psi(g)?;
    let (phi_star, phi_witness) = brute_phi(g)?;
    let lambda2 = dense_lambda2(g)?;
    Ok(OracleReport {
        psi_star,
        psi_witness,
        phi_star,
        phi_witness,
        lambda2,
        notes: "exhaustive subsets <= n/2; dense symmetric eigensolve".into(),
    })
}
