//! Maximum reweighted spectral gap for the uniform stationary distribution:
//! projected supergradient ascent over symmetric doubly stochastic
//! reweightings supported on the edges plus self-loops, and extraction of
//! dual embedding certificates from the eigenvectors of the walk Laplacian.

use crate::certificates::EmbeddingCertificate;
use crate::covering::solve_covering;
use crate::eigen::{smallest_eigenpairs, sym_eigen, SymOp};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Dense eigensolves below this size, deflated subspace iteration above.
const DENSE_LIMIT: usize = 128;

/// A symmetric stochastic reweighting stored as one weight per edge; each
/// self-loop weight is the slack 1 - sum of incident edge weights.
#[derive(Debug, Clone)]
pub struct Reweighting {
    n: usize,
    edges: Vec<(u32, u32)>,
    w: Vec<f64>,
}

impl Reweighting {
    pub fn new(g: &Graph, w: Vec<f64>) -> Result<Reweighting> {
        let edges = g.edges();
        if w.len() != edges.len() {
            return Err(Error::InvalidReweighting(format!(
                "{} weights for {} edges",
                w.len(),
                edges.len()
            )));
        }
        let rw = Reweighting {
            n: g.n(),
            edges,
            w,
        };
        rw.validate()?;
        Ok(rw)
    }

    /// Uniform edge weight t on every edge (t <= 1/max degree keeps loops
    /// nonnegative).
    pub fn uniform(g: &Graph, t: f64) -> Result<Reweighting> {
        Reweighting::new(g, vec![t; g.m()])
    }

    pub fn edge_weights(&self) -> &[f64] {
        &self.w
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn loop_weights(&self) -> Vec<f64> {
        let mut load = vec![0.0; self.n];
        for (&(u, v), &we) in self.edges.iter().zip(&self.w) {
            load[u as usize] += we;
            load[v as usize] += we;
        }
        load.iter().map(|&l| 1.0 - l).collect()
    }

    /// Every weight nonnegative and every row sum equal to one (the loop
    /// weights are slack variables, so only nonnegativity can fail).
    pub fn validate(&self) -> Result<()> {
        if let Some((i, &we)) = self.w.iter().enumerate().find(|(_, &we)| we < -1e-12) {
            return Err(Error::InvalidReweighting(format!(
                "negative weight {we:.3e} on edge {:?}",
                self.edges[i]
            )));
        }
        let loops = self.loop_weights();
        if let Some((v, &lv)) = loops.iter().enumerate().find(|(_, &lv)| lv < -1e-9) {
            return Err(Error::InvalidReweighting(format!(
                "vertex {v} overloaded by {:.3e}",
                -lv
            )));
        }
        Ok(())
    }

    /// I - P as a dense matrix.
    pub fn walk_laplacian(&self) -> Vec<Vec<f64>> {
        let mut m = vec![vec![0.0; self.n]; self.n];
        let mut load = vec![0.0; self.n];
        for (&(u, v), &we) in self.edges.iter().zip(&self.w) {
            m[u as usize][v as usize] -= we;
            m[v as usize][u as usize] -= we;
            load[u as usize] += we;
            load[v as usize] += we;
        }
        for v in 0..self.n {
            m[v][v] = load[v];
        }
        m
    }
}

/// Sparse operator for I - P.
struct WalkOp<'a> {
    n: usize,
    edges: &'a [(u32, u32)],
    w: &'a [f64],
}

impl SymOp for WalkOp<'_> {
    fn dim(&self) -> usize {
        self.n
    }
    fn apply(&self, x: &[f64], out: &mut [f64]) {
        out.fill(0.0);
        for (&(u, v), &we) in self.edges.iter().zip(self.w) {
            let (ui, vi) = (u as usize, v as usize);
            let d = x[ui] - x[vi];
            out[ui] += we * d;
            out[vi] -= we * d;
        }
    }
}

/// Bottom k nonzero eigenpairs of I - P (the kernel direction 1 is deflated).
fn walk_spectrum(rw: &Reweighting, k: usize, seed: u64, warm: Option<&[Vec<f64>]>) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let n = rw.n;
    if n <= DENSE_LIMIT {
        let (vals, vecs) = sym_eigen(&rw.walk_laplacian())?;
        let k = k.min(n - 1);
        Ok((vals[1..=k].to_vec(), vecs[1..=k].to_vec()))
    } else {
        let ones = vec![vec![1.0 / (n as f64).sqrt(); n]];
        let op = WalkOp {
            n,
            edges: &rw.edges,
            w: &rw.w,
        };
        smallest_eigenpairs(&op, &ones, k, seed, 1e-8, warm)
    }
}

/// lambda_2 of I - P.
pub fn lambda2_of(g: &Graph, rw: &Reweighting) -> Result<f64> {
    if rw.n != g.n() {
        return Err(Error::InvalidReweighting("size mismatch".into()));
    }
    rw.validate()?;
    let (vals, _) = walk_spectrum(rw, 1, 1, None)?;
    Ok(vals[0])
}

#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub iters: usize,
    /// Step scale; the schedule is step_c / sqrt(t). Defaults to 1/Delta.
    pub step_c: Option<f64>,
    pub seed: u64,
    pub tol: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            iters: 0, // 0 = auto by size
            step_c: None,
            seed: 1,
            tol: 1e-9,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolveTrace {
    pub lambda2: Vec<f64>,
    pub best: Vec<f64>,
    pub steps: Vec<f64>,
    pub seed: u64,
    pub final_gap: f64,
    pub converged: bool,
}

#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub reweighting: Reweighting,
    pub value: f64,
    pub trace: SolveTrace,
}

fn project_feasible(n: usize, edges: &[(u32, u32)], w: &mut [f64]) {
    for we in w.iter_mut() {
        if *we < 0.0 {
            *we = 0.0;
        }
    }
    // proportional load scaling until every vertex fits, then an exact
    // guard pass dividing each edge by the larger incident overload
    for _ in 0..100 {
        let mut load = vec![0.0f64; n];
        for (&(u, v), &we) in edges.iter().zip(w.iter()) {
            load[u as usize] += we;
            load[v as usize] += we;
        }
        let worst = load.iter().cloned().fold(0.0f64, f64::max);
        if worst <= 1.0 + 1e-12 {
            break;
        }
        for (&(u, v), we) in edges.iter().zip(w.iter_mut()) {
            let s = load[u as usize].max(load[v as usize]);
            if s > 1.0 {
                *we /= s;
            }
        }
    }
    let mut load = vec![0.0f64; n];
    for (&(u, v), &we) in edges.iter().zip(w.iter()) {
        load[u as usize] += we;
        load[v as usize] += we;
    }
    for (&(u, v), we) in edges.iter().zip(w.iter_mut()) {
        let s = load[u as usize].max(load[v as usize]);
        if s > 1.0 {
            *we /= s;
        }
    }
}

/// Projected supergradient ascent for the maximum reweighted spectral gap.
/// The reported value is computed from a feasible iterate, hence a true lower
/// bound; the best-so-far sequence is monotone by construction.
pub fn solve_lambda2_star(g: &Graph, opts: &SolveOptions) -> Result<SolveOutcome> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.n();
    if n < 2 {
        return Err(Error::Precondition("need n >= 2".into()));
    }
    let edges = g.edges();
    let delta = g.max_degree() as f64;
    let iters = if opts.iters > 0 {
        opts.iters
    } else if n <= 8 {
        12_000
    } else if n <= 32 {
        4_000
    } else if n <= 96 {
        1_000
    } else if n <= 192 {
        400
    } else {
        150
    };
    let step_c = opts.step_c.unwrap_or(1.0 / delta);

    // Two feasible starting points: the max-degree lazy walk and the
    // Laplacian walk I - L/Delta, whose gap is exactly lambda_2/Delta.
    let lazy: Vec<f64> = vec![1.0 / (2.0 * delta); edges.len()];
    let laplace: Vec<f64> = vec![1.0 / delta; edges.len()];
    let mut w = {
        let l2_lazy = lambda2_of(g, &Reweighting::new(g, lazy.clone())?)?;
        let l2_lap = lambda2_of(g, &Reweighting::new(g, laplace.clone())?)?;
        if l2_lap >= l2_lazy {
            laplace
        } else {
            lazy
        }
    };

    let mut best_w = w.clone();
    let mut best_val = f64::NEG_INFINITY;
    let mut trace = SolveTrace {
        lambda2: Vec::with_capacity(iters + 1),
        best: Vec::with_capacity(iters + 1),
        steps: Vec::with_capacity(iters),
        seed: opts.seed,
        final_gap: f64::NAN,
        converged: false,
    };
    let mut warm: Option<Vec<Vec<f64>>> = None;
    let mut gap = f64::NAN;
    for t in 1..=iters {
        let rw = Reweighting {
            n,
            edges: edges.clone(),
            w: w.clone(),
        };
        let want = 3.min(n - 1);
        let (vals, vecs) = walk_spectrum(&rw, want, opts.seed.wrapping_add(t as u64), warm.as_deref())?;
        let lam = vals[0];
        gap = if vals.len() > 1 { vals[1] - vals[0] } else { f64::INFINITY };
        trace.lambda2.push(lam);
        if lam > best_val {
            best_val = lam;
            best_w = w.clone();
        }
        trace.best.push(best_val);

        // Supergradient in the edge-weight coordinates: (v_u - v_v)^2 for the
        // bottom eigenvector; averaged over the near-degenerate eigenspace
        // when the spectral gap is tiny.
        let mut basis: Vec<&Vec<f64>> = vec![&vecs[0]];
        for j in 1..vals.len() {
            if vals[j] - vals[0] < 1e-6 {
                basis.push(&vecs[j]);
            }
        }
        let mut grad = vec![0.0f64; edges.len()];
        for v in &basis {
            for (ge, &(a, b)) in grad.iter_mut().zip(&edges) {
                let d = v[a as usize] - v[b as usize];
                *ge += d * d;
            }
        }
        let inv = 1.0 / basis.len() as f64;
        for gev in grad.iter_mut() {
            *gev *= inv;
        }
        let gnorm = grad.iter().map(|x| x * x).sum::<f64>().sqrt();
        if gnorm < 1e-15 {
            break;
        }
        let step = step_c / (t as f64).sqrt() / gnorm;
        trace.steps.push(step);
        for (weight, geo) in w.iter_mut().zip(&grad) {
            *weight += step * geo;
        }
        project_feasible(n, &edges, &mut w);
        warm = Some(vecs);
    }
    // Final accurate evaluation of the best iterate.
    let rw = Reweighting {
        n,
        edges,
        w: best_w,
    };
    rw.validate()?;
    let (vals, _) = walk_spectrum(&rw, 2.min(n - 1), opts.seed, None)?;
    trace.final_gap = if vals.len() > 1 { vals[1] - vals[0] } else { gap };
    trace.converged = trace
        .best
        .last()
        .zip(trace.best.get(trace.best.len().saturating_sub(50)))
        .map(|(a, b)| (a - b).abs() < opts.tol.max(1e-7) * a.abs().max(1.0))
        .unwrap_or(false);
    Ok(SolveOutcome {
        value: vals[0],
        reweighting: rw,
        trace,
    })
}

/// Dual embedding extraction: f spans the eigenvectors of I - P for the d
/// eigenvalues above the kernel, y is the optimal covering solution for that
/// f. The certificate is feasible by construction of y.
#[derive(Debug, Clone)]
pub struct DualEmbedding {
    pub cert: EmbeddingCertificate,
    pub requested_d: usize,
    pub warning: Option<String>,
}

pub fn extract_dual_embedding(g: &Graph, rw: &Reweighting, d: usize) -> Result<DualEmbedding> {
    let n = g.n();
    if d == 0 {
        return Err(Error::Precondition("d >= 1".into()));
    }
    let avail = n - 1;
    let eff = d.min(avail);
    let warning = (eff < d).then(|| format!("eigenspace supports only d = {eff} of requested {d}"));
    let (_, vecs) = walk_spectrum(rw, eff, 17, None)?;
    let f: Vec<Vec<f64>> = (0..n).map(|v| (0..eff).map(|j| vecs[j][v]).collect()).collect();
    // Eigenvectors above the kernel are orthogonal to the all-ones vector, so
    // f is centered up to solver tolerance; re-center to make it exact.
    let mut f = f;
    for j in 0..eff {
        let mean: f64 = f.iter().map(|r| r[j]).sum::<f64>() / n as f64;
        for r in f.iter_mut() {
            r[j] -= mean;
        }
    }
    let y = optimal_y_for_embedding(g, &f)?;
    Ok(DualEmbedding {
        cert: EmbeddingCertificate { d: eff, f, y },
        requested_d: d,
        warning,
    })
}

/// Minimize sum(y) subject to y(u) + y(v) >= ||f(u)-f(v)||^2 / sum ||f||^2,
/// y >= 0; exact via the covering solver.
pub fn optimal_y_for_embedding(g: &Graph, f: &[Vec<f64>]) -> Result<Vec<f64>> {
    let total: f64 = f.iter().flatten().map(|x| x * x).sum();
    if total <= 0.0 {
        return Err(Error::Degenerate("all-zero embedding".into()));
    }
    let cons: Vec<(u32, u32, f64)> = g
        .edges()
        .into_iter()
        .map(|(u, v)| {
            let c: f64 = f[u as usize]
                .iter()
                .zip(&f[v as usize])
                .map(|(a, b)| (a - b) * (a - b))
                .sum();
            (u, v, c / total)
        })
        .collect();
    Ok(solve_covering(g.n(), &cons)?.y)
}
