//! Dimension reduction for embedding certificates, three routes: Gaussian
//! projection with covering re-solve, best single coordinate, and random
//! padded-partition line embeddings of the certificate's edge metric.

use crate::certificates::{EmbeddingCertificate, SpreadEmbeddingCertificate};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::reweighting::optimal_y_for_embedding;
use crate::rng::rng_from;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

fn center_column(f: &mut [f64]) {
    let mean: f64 = f.iter().sum::<f64>() / f.len() as f64;
    for x in f.iter_mut() {
        *x -= mean;
    }
}

fn one_dim_certificate(g: &Graph, f1: Vec<f64>) -> Result<EmbeddingCertificate> {
    let f: Vec<Vec<f64>> = f1.iter().map(|&x| vec![x]).collect();
    let y = optimal_y_for_embedding(g, &f)?;
    Ok(EmbeddingCertificate { d: 1, f, y })
}

/// Project onto random Gaussian directions scaled by 1/sqrt(d), re-center,
/// re-solve the covering program, and keep the best trial.
pub fn gaussian_project(
    cert: &EmbeddingCertificate,
    g: &Graph,
    trials: usize,
    seed: u64,
) -> Result<EmbeddingCertificate> {
    let n = g.n();
    let d = cert.d;
    let total: f64 = cert.f.iter().flatten().map(|x| x * x).sum();
    if total <= 0.0 {
        return Err(Error::Degenerate("zero embedding".into()));
    }
    let mut best: Option<EmbeddingCertificate> = None;
    let mut rng = rng_from(seed, "gaussian-dimred", 0);
    let mut trial = 0usize;
    let mut attempts = 0usize;
    while trial < trials.max(1) && attempts < 8 * trials.max(1) {
        attempts += 1;
        let dir: Vec<f64> = (0..d)
            .map(|_| gaussian_sample(&mut rng) / (d as f64).sqrt())
            .collect();
        let mut f1: Vec<f64> = cert
            .f
            .iter()
            .map(|row| row.iter().zip(&dir).map(|(a, b)| a * b).sum())
            .collect();
        center_column(&mut f1);
        if f1.iter().map(|x| x * x).sum::<f64>() < 1e-14 * total / n as f64 {
            continue; // degenerate direction, resample
        }
        trial += 1;
        let cand = one_dim_certificate(g, f1)?;
        if best.as_ref().is_none_or(|b| cand.value() < b.value()) {
            best = Some(cand);
        }
    }
    best.ok_or_else(|| Error::Degenerate("all projections degenerate".into()))
}

fn gaussian_sample(rng: &mut ChaCha8Rng) -> f64 {
    // Box-Muller
    let u1: f64 = rng.gen_range(1e-12..1.0);
    let u2: f64 = rng.gen::<f64>();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

/// Evaluate each coordinate with a covering re-solve; return the best.
pub fn best_coordinate(cert: &EmbeddingCertificate, g: &Graph) -> Result<EmbeddingCertificate> {
    let total: f64 = cert.f.iter().flatten().map(|x| x * x).sum();
    if total <= 0.0 {
        return Err(Error::Degenerate("zero embedding".into()));
    }
    let mut best: Option<EmbeddingCertificate> = None;
    for j in 0..cert.d {
        let mut f1: Vec<f64> = cert.f.iter().map(|row| row[j]).collect();
        center_column(&mut f1);
        if f1.iter().map(|x| x * x).sum::<f64>() < 1e-18 {
            continue;
        }
        let cand = one_dim_certificate(g, f1)?;
        if best.as_ref().is_none_or(|b| cand.value() < b.value()) {
            best = Some(cand);
        }
    }
    best.ok_or_else(|| Error::Degenerate("all coordinates constant".into()))
}

#[derive(Copy, Clone, PartialEq)]
struct HeapItem(f64, u32);
impl Eq for HeapItem {}
impl Ord for HeapItem {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .0
            .partial_cmp(&self.0)
            .unwrap()
            .then(other.1.cmp(&self.1))
    }
}
impl PartialOrd for HeapItem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn edge_metric_apsp(g: &Graph, omega: &[f64]) -> Vec<Vec<f64>> {
    let n = g.n();
    let edges = g.edges();
    let mut weight_of = vec![Vec::new(); n];
    for (k, &(u, v)) in edges.iter().enumerate() {
        weight_of[u as usize].push((v, omega[k]));
        weight_of[v as usize].push((u, omega[k]));
    }
    let mut all = Vec::with_capacity(n);
    for src in 0..n {
        let mut dist = vec![f64::INFINITY; n];
        dist[src] = 0.0;
        let mut heap = BinaryHeap::new();
        heap.push(HeapItem(0.0, src as u32));
        while let Some(HeapItem(d, v)) = heap.pop() {
            if d > dist[v as usize] {
                continue;
            }
            for &(u, w) in &weight_of[v as usize] {
                let nd = d + w;
                if nd < dist[u as usize] {
                    dist[u as usize] = nd;
                    heap.push(HeapItem(nd, u));
                }
            }
        }
        all.push(dist);
    }
    all
}

/// Options for the padded-partition line embedding.
#[derive(Debug, Clone)]
pub struct PartitionOptions {
    /// Per-scale truncation divisor: contributions are capped at scale/alpha.
    pub alpha_hat: f64,
}

impl Default for PartitionOptions {
    fn default() -> Self {
        PartitionOptions { alpha_hat: 4.0 }
    }
}

/// Random padded-partition line embedding of the shortest-path metric induced
/// by nonnegative edge lengths. Ball carving at geometric scales with random
/// radius in [scale/4, scale/2] and random vertex order; each cluster
/// contributes a signed, truncated distance-to-boundary. The result is exactly
/// non-expansive for every vertex pair: after summing scales it is rescaled by
/// the measured worst pair ratio.
pub fn partition_line_embed(
    g: &Graph,
    omega: &[f64],
    seed: u64,
    opts: &PartitionOptions,
) -> Result<Vec<f64>> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.n();
    if omega.len() != g.m() || omega.iter().any(|&w| w < 0.0) {
        return Err(Error::Precondition("need one nonnegative length per edge".into()));
    }
    let dist = edge_metric_apsp(g, omega);
    let diam = dist
        .iter()
        .flatten()
        .cloned()
        .fold(0.0f64, f64::max);
    if diam <= 0.0 {
        return Ok(vec![0.0; n]); // zero metric
    }
    let min_pos = dist
        .iter()
        .flatten()
        .cloned()
        .filter(|&d| d > 0.0)
        .fold(f64::INFINITY, f64::min);
    let mut rng = rng_from(seed, "padded-partition", 0);
    let mut f = vec![0.0f64; n];
    let mut scale = min_pos.max(diam * 1e-6);
    while scale <= 2.0 * diam {
        // CKR-style carving: random order, one radius per scale.
        let radius = rng.gen_range(scale / 4.0..scale / 2.0);
        let mut order: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = rng.gen_range(0..=i);
            order.swap(i, j);
        }
        let mut cluster = vec![usize::MAX; n];
        let mut cluster_count = 0usize;
        for &c in &order {
            let mut grabbed = false;
            for v in 0..n {
                if cluster[v] == usize::MAX && dist[c][v] <= radius {
                    cluster[v] = cluster_count;
                    grabbed = true;
                }
            }
            if grabbed {
                cluster_count += 1;
            }
        }
        let signs: Vec<f64> = (0..cluster_count)
            .map(|_| if rng.gen::<bool>() { 1.0 } else { -1.0 })
            .collect();
        let cap = scale / opts.alpha_hat;
        for v in 0..n {
            // distance from v to the nearest vertex outside its cluster
            let mut out = f64::INFINITY;
            for u in 0..n {
                if cluster[u] != cluster[v] {
                    out = out.min(dist[v][u]);
                }
            }
            if out.is_finite() {
                f[v] += signs[cluster[v]] * out.min(cap);
            }
        }
        scale *= 2.0;
    }
    // Exact non-expansiveness over all pairs.
    let mut worst: f64 = 1.0;
    for u in 0..n {
        for v in (u + 1)..n {
            let stretch = (f[u] - f[v]).abs();
            if dist[u][v] > 0.0 {
                worst = worst.max(stretch / dist[u][v]);
            } else if stretch > 0.0 {
                // zero-distance pair must coincide; flatten both
                worst = f64::INFINITY;
            }
        }
    }
    if worst.is_infinite() {
        // collapse zero-distance classes to a common value
        for u in 0..n {
            for v in (u + 1)..n {
                if dist[u][v] <= 0.0 {
                    let m = 0.5 * (f[u] + f[v]);
                    f[u] = m;
                    f[v] = m;
                }
            }
        }
        worst = 1.0;
        for u in 0..n {
            for v in (u + 1)..n {
                if dist[u][v] > 0.0 {
                    worst = worst.max((f[u] - f[v]).abs() / dist[u][v]);
                }
            }
        }
    }
    if worst > 1.0 {
        for x in f.iter_mut() {
            *x /= worst;
        }
    }
    Ok(f)
}

/// Dimension reduction through the spread picture: convert the certificate to
/// a unit-mass p = 2 spread certificate, line-embed the induced edge metric
/// (y is untouched, so the edge constraints transfer), and convert back. The
/// best trial maximizes the retained spread.
pub fn partition_dimred(
    cert: &EmbeddingCertificate,
    g: &Graph,
    seed: u64,
    trials: usize,
) -> Result<EmbeddingCertificate> {
    let n = g.n();
    let total: f64 = cert.f.iter().flatten().map(|x| x * x).sum();
    let value = cert.value();
    if total <= 0.0 || value <= 0.0 {
        return Err(Error::Degenerate("constant embedding or zero value".into()));
    }
    // Unit-mass spread certificate: y~ = y / sum(y), f~ = f / sqrt(total * sum(y)).
    let y_tilde: Vec<f64> = cert.y.iter().map(|&yv| yv.max(0.0) / value).collect();
    let fscale = 1.0 / (total * value).sqrt();
    let f_tilde: Vec<Vec<f64>> = cert
        .f
        .iter()
        .map(|row| row.iter().map(|&x| x * fscale).collect())
        .collect();
    let edges = g.edges();
    let omega: Vec<f64> = edges
        .iter()
        .map(|&(u, v)| {
            f_tilde[u as usize]
                .iter()
                .zip(&f_tilde[v as usize])
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt()
        })
        .collect();
    let opts = PartitionOptions::default();
    let mut best: Option<(f64, Vec<f64>)> = None;
    for t in 0..trials.max(1) {
        let f1 = partition_line_embed(g, &omega, seed.wrapping_add(t as u64), &opts)?;
        let mut q = 0.0;
        for u in 0..n {
            for v in 0..n {
                q += (f1[u] - f1[v]) * (f1[u] - f1[v]);
            }
        }
        if best.as_ref().is_none_or(|(bq, _)| q > *bq) {
            best = Some((q, f1));
        }
    }
    let (q, f1) = best.unwrap();
    if q <= 1e-300 {
        return Err(Error::Degenerate(
            "line embedding collapsed; resample with another seed".into(),
        ));
    }
    let spread_cert = SpreadEmbeddingCertificate {
        p: 2,
        d: 1,
        f: f1.into_iter().map(|x| vec![x]).collect(),
        y: y_tilde,
    };
    let out = crate::certificates::spread_to_gamma(&spread_cert, g)?;
    let report = out.verify(g);
    if !report.feasible {
        return Err(Error::InfeasibleCertificate(report.worst_slack));
    }
    Ok(out)
}

/// Convenience wrapper used by the pipeline and CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DimredMethod {
    Gaussian,
    Coordinate,
    Partition,
}

pub fn reduce(
    method: DimredMethod,
    cert: &EmbeddingCertificate,
    g: &Graph,
    trials: usize,
    seed: u64,
) -> Result<EmbeddingCertificate> {
    match method {
        DimredMethod::Gaussian => gaussian_project(cert, g, trials, seed),
        DimredMethod::Coordinate => best_coordinate(cert, g),
        DimredMethod::Partition => partition_dimred(cert, g, seed, trials),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::reweighting::{extract_dual_embedding, solve_lambda2_star, SolveOptions};

    fn c4_optimal_cert() -> (Graph, EmbeddingCertificate) {
        let g = generators::cycle(4);
        let out = solve_lambda2_star(&g, &SolveOptions::default()).unwrap();
        let dual = extract_dual_embedding(&g, &out.reweighting, 2).unwrap();
        (g, dual.cert)
    }

    #[test]
    fn gaussian_on_one_dim_never_hurts() {
        let g = generators::path(4);
        let cert = crate::certificates::trivial_gamma1(&g).unwrap();
        let red = gaussian_project(&cert, &g, 16, 3).unwrap();
        assert!(red.verify(&g).feasible);
        assert!(red.value() <= cert.value() + 1e-9);
    }

    #[test]
    fn gaussian_c4_stays_small() {
        let (g, cert) = c4_optimal_cert();
        assert!((cert.value() - 1.0).abs() < 2e-3);
        let red = gaussian_project(&cert, &g, 64, 11).unwrap();
        assert!(red.verify(&g).feasible);
        assert!(red.value() <= 2.0 + 1e-6, "{}", red.value());
    }

    #[test]
    fn gaussian_k2_exact() {
        let g = generators::path(2);
        let cert = EmbeddingCertificate {
            d: 1,
            f: vec![vec![-1.0], vec![1.0]],
            y: vec![1.0, 1.0],
        };
        let red = gaussian_project(&cert, &g, 8, 5).unwrap();
        assert!((red.value() - 2.0).abs() < 1e-9);
    }

    #[test]
    fn best_coordinate_recovers_axis() {
        let g = generators::path(4);
        // axis-aligned: only coordinate 1 is informative
        let f: Vec<Vec<f64>> = vec![
            vec![0.0, -1.5],
            vec![0.0, -0.5],
            vec![0.0, 0.5],
            vec![0.0, 1.5],
        ];
        let y = crate::reweighting::optimal_y_for_embedding(&g, &f).unwrap();
        let cert = EmbeddingCertificate { d: 2, f, y: y.clone() };
        let red = best_coordinate(&cert, &g).unwrap();
        assert!(red.verify(&g).feasible);
        assert!((red.value() - y.iter().sum::<f64>()).abs() < 1e-9);
    }

    #[test]
    fn best_coordinate_c4() {
        let (g, cert) = c4_optimal_cert();
        let red = best_coordinate(&cert, &g).unwrap();
        assert!(red.verify(&g).feasible);
        assert!(red.value() <= 2.0 + 1e-6);
    }

    #[test]
    fn line_embed_is_non_expansive_on_all_pairs() {
        for (i, g) in [
            generators::path(9),
            generators::cycle(12),
            generators::grid(4, 5),
            generators::random_connected(15, 0.25, 3),
            generators::grid(14, 14),
        ]
        .into_iter()
        .enumerate()
        {
            let omega: Vec<f64> = (0..g.m()).map(|k| 0.2 + 0.1 * (k % 5) as f64).collect();
            let dist = edge_metric_apsp(&g, &omega);
            let seeds = if g.n() > 100 { 2 } else { 6 };
            for s in 0..seeds {
                let f = partition_line_embed(&g, &omega, 100 * i as u64 + s, &PartitionOptions::default())
                    .unwrap();
                for u in 0..g.n() {
                    for v in 0..g.n() {
                        assert!(
                            (f[u] - f[v]).abs() <= dist[u][v] + 1e-12,
                            "stretch at ({u},{v})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn line_embed_keeps_some_spread_on_p5() {
        let g = generators::path(5);
        let omega = vec![1.0; 4];
        let mut best = 0.0f64;
        for s in 0..64 {
            let f = partition_line_embed(&g, &omega, s, &PartitionOptions::default()).unwrap();
            best = best.max((f[0] - f[4]).abs());
        }
        assert!(best >= 1.0, "max end-to-end spread {best}");
    }

    #[test]
    fn line_embed_zero_metric() {
        let g = generators::path(3);
        let f = partition_line_embed(&g, &[0.0, 0.0], 1, &PartitionOptions::default()).unwrap();
        assert_eq!(f, vec![0.0; 3]);
    }

    #[test]
    fn line_embed_single_edge() {
        let g = generators::path(2);
        for s in 0..20 {
            let f = partition_line_embed(&g, &[1.0], s, &PartitionOptions::default()).unwrap();
            assert!((f[0] - f[1]).abs() <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn partition_dimred_k2() {
        let g = generators::path(2);
        let cert = EmbeddingCertificate {
            d: 1,
            f: vec![vec![-1.0], vec![1.0]],
            y: vec![1.0, 1.0],
        };
        let red = partition_dimred(&cert, &g, 3, 16).unwrap();
        assert!(red.verify(&g).feasible);
        assert!(red.value() <= 2.0 * 1.2 + 1e-9, "{}", red.value());
    }

    #[test]
    fn partition_dimred_rejects_constant() {
        let g = generators::path(3);
        let cert = EmbeddingCertificate {
            d: 1,
            f: vec![vec![0.0]; 3],
            y: vec![0.0; 3],
        };
        assert!(partition_dimred(&cert, &g, 1, 4).is_err());
    }

    /// Regression guard (empirical, not a guarantee): enough Gaussian trials land
    /// within trial noise of the best single coordinate.
    #[test]
    fn gaussian_tracks_best_coordinate() {
        for (g, seed) in [
            (generators::grid(3, 4), 5u64),
            (generators::cycle(8), 6),
            (generators::random_connected(10, 0.4, 9), 7),
        ] {
            let out = solve_lambda2_star(&g, &SolveOptions::default()).unwrap();
            let dual = extract_dual_embedding(&g, &out.reweighting, 3).unwrap();
            let coord = best_coordinate(&dual.cert, &g).unwrap();
            let gauss = gaussian_project(&dual.cert, &g, 64, seed).unwrap();
            assert!(
                gauss.value() <= coord.value() * 1.25 + 1e-9,
                "gaussian {} vs coordinate {}",
                gauss.value(),
                coord.value()
            );
        }
    }

    #[test]
    fn partition_dimred_grid_certificate() {
        let g = generators::grid(4, 4);
        let out = solve_lambda2_star(
            &g,
            &SolveOptions {
                iters: 300,
                ..Default::default()
            },
        )
        .unwrap();
        let dual = extract_dual_embedding(&g, &out.reweighting, 2).unwrap();
        let red = partition_dimred(&dual.cert, &g, 7, 32).unwrap();
        assert!(red.verify(&g).feasible);
        // lossy, but must stay within a documented factor on this instance
        assert!(red.value() <= 64.0 * dual.cert.value());
    }
}
