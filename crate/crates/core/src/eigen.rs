//! Symmetric eigensolvers: a dense Householder + implicit-QL decomposition
//! for full spectra at small n, and a deflated shift-invert subspace iteration
//! for the few smallest eigenpairs of large sparse operators whose kernel is
//! known (for walk Laplacians, the all-ones vector).

use crate::error::{Error, Result};

/// Dense symmetric eigendecomposition. Returns eigenvalues ascending and the
/// matching orthonormal eigenvectors as rows of the second component.
///
/// Classic tred2/tql2 pair; deterministic, O(n^3).
pub fn sym_eigen(a: &[Vec<f64>]) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let n = a.len();
    if n == 0 {
        return Ok((Vec::new(), Vec::new()));
    }
    let mut z: Vec<Vec<f64>> = a.to_vec();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];

    // Householder reduction to tridiagonal form (tred2).
    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = 0.0;
        let mut scale = 0.0;
        if l > 0 {
            for k in 0..=l {
                scale += z[i][k].abs();
            }
            if scale == 0.0 {
                e[i] = z[i][l];
            } else {
                for k in 0..=l {
                    z[i][k] /= scale;
                    h += z[i][k] * z[i][k];
                }
                let mut f = z[i][l];
                let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
                e[i] = scale * g;
                h -= f * g;
                z[i][l] = f - g;
                f = 0.0;
                for j in 0..=l {
                    z[j][i] = z[i][j] / h;
                    let mut g = 0.0;
                    for k in 0..=j {
                        g += z[j][k] * z[i][k];
                    }
                    for k in (j + 1)..=l {
                        g += z[k][j] * z[i][k];
                    }
                    e[j] = g / h;
                    f += e[j] * z[i][j];
                }
                let hh = f / (h + h);
                for j in 0..=l {
                    let f = z[i][j];
                    let g = e[j] - hh * f;
                    e[j] = g;
                    for k in 0..=j {
                        z[j][k] -= f * e[k] + g * z[i][k];
                    }
                }
            }
        } else {
            e[i] = z[i][l];
        }
        d[i] = h;
    }
    d[0] = 0.0;
    e[0] = 0.0;
    for i in 0..n {
        if d[i] != 0.0 {
            for j in 0..i {
                let mut g = 0.0;
                for k in 0..i {
                    g += z[i][k] * z[k][j];
                }
                for k in 0..i {
                    z[k][j] -= g * z[k][i];
                }
            }
        }
        d[i] = z[i][i];
        z[i][i] = 1.0;
        for j in 0..i {
            z[j][i] = 0.0;
            z[i][j] = 0.0;
        }
    }

    // Implicit QL with Wilkinson shifts (tql2).
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 50 {
                return Err(Error::NoConvergence(format!(
                    "tql2 failed at eigenvalue {l} after 50 sweeps"
                )));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            let sign_r = if g >= 0.0 { r.abs() } else { -r.abs() };
            g = d[m] - d[l] + e[l] / (g + sign_r);
            let (mut s, mut c) = (1.0, 1.0);
            let mut p = 0.0;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for k in 0..n {
                    f = z[k][i + 1];
                    z[k][i + 1] = s * z[k][i] + c * f;
                    z[k][i] = c * z[k][i] - s * f;
                }
            }
            if r == 0.0 && m > l {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    // Sort ascending, carrying eigenvectors along.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].partial_cmp(&d[j]).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| d[i]).collect();
    let vectors: Vec<Vec<f64>> = order
        .iter()
        .map(|&i| (0..n).map(|k| z[k][i]).collect())
        .collect();
    Ok((values, vectors))
}

/// A symmetric positive semidefinite linear operator.
pub trait SymOp {
    fn dim(&self) -> usize;
    fn apply(&self, x: &[f64], out: &mut [f64]);
}

pub struct DenseOp<'a>(pub &'a [Vec<f64>]);

impl SymOp for DenseOp<'_> {
    fn dim(&self) -> usize {
        self.0.len()
    }
    fn apply(&self, x: &[f64], out: &mut [f64]) {
        for (i, row) in self.0.iter().enumerate() {
            out[i] = row.iter().zip(x).map(|(a, b)| a * b).sum();
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn project_out(x: &mut [f64], basis: &[Vec<f64>]) {
    for b in basis {
        let c = dot(x, b);
        for (xi, bi) in x.iter_mut().zip(b) {
            *xi -= c * bi;
        }
    }
}

/// Conjugate gradient for `op x = rhs` restricted to the complement of
/// `kernel` (orthonormal vectors spanning the null space).
fn cg_solve(op: &dyn SymOp, rhs: &[f64], kernel: &[Vec<f64>], x: &mut [f64], tol: f64) {
    let n = op.dim();
    let mut r = vec![0.0; n];
    let mut ax = vec![0.0; n];
    project_out(x, kernel);
    op.apply(x, &mut ax);
    for i in 0..n {
        r[i] = rhs[i] - ax[i];
    }
    project_out(&mut r, kernel);
    let mut p = r.clone();
    let mut rs = dot(&r, &r);
    let rhs_norm = dot(rhs, rhs).sqrt().max(1e-300);
    let mut ap = vec![0.0; n];
    for _ in 0..(4 * n + 200) {
        if rs.sqrt() <= tol * rhs_norm {
            break;
        }
        op.apply(&p, &mut ap);
        project_out(&mut ap, kernel);
        let denom = dot(&p, &ap);
        if denom <= 0.0 {
            break;
        }
        let alpha = rs / denom;
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        project_out(&mut r, kernel);
        let rs_new = dot(&r, &r);
        let beta = rs_new / rs;
        rs = rs_new;
        for i in 0..n {
            p[i] = r[i] + beta * p[i];
        }
    }
    project_out(x, kernel);
}

/// Smallest `k` eigenpairs of a PSD operator on the orthogonal complement of
/// a known kernel, by shift-invert subspace iteration with Rayleigh-Ritz.
///
/// `warm` optionally seeds the block with previous eigenvectors.
pub fn smallest_eigenpairs(
    op: &dyn SymOp,
    kernel: &[Vec<f64>],
    k: usize,
    seed: u64,
    tol: f64,
    warm: Option<&[Vec<f64>]>,
) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    use rand::Rng;
    let n = op.dim();
    let avail = n.saturating_sub(kernel.len());
    let k = k.min(avail);
    if k == 0 {
        return Ok((Vec::new(), Vec::new()));
    }
    let b = (k + 2).min(avail);
    let mut rng = crate::rng::rng_from(seed, "eigen-block", 0);
    let mut x: Vec<Vec<f64>> = (0..b)
        .map(|j| match warm {
            Some(w) if j < w.len() => w[j].clone(),
            _ => (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect(),
        })
        .collect();
    let orthonormalize = |x: &mut Vec<Vec<f64>>, kernel: &[Vec<f64>]| {
        let mut kept: Vec<Vec<f64>> = Vec::with_capacity(x.len());
        for v in x.iter_mut() {
            project_out(v, kernel);
            project_out(v, &kept);
            // repeat once for numerical safety
            project_out(v, kernel);
            project_out(v, &kept);
            let nrm = dot(v, v).sqrt();
            if nrm > 1e-14 {
                kept.push(v.iter().map(|c| c / nrm).collect());
            }
        }
        *x = kept;
    };
    orthonormalize(&mut x, kernel);
    while x.len() < b {
        let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        x.push(v);
        orthonormalize(&mut x, kernel);
    }

    let mut theta = vec![f64::INFINITY; b];
    let mut ax = vec![0.0; n];
    for outer in 0..200 {
        // Y = A^{-1} X by CG, column by column.
        let mut y: Vec<Vec<f64>> = Vec::with_capacity(b);
        for xj in &x {
            let mut sol = xj.clone();
            cg_solve(op, xj, kernel, &mut sol, 1e-12);
            y.push(sol);
        }
        orthonormalize(&mut y, kernel);
        while y.len() < b {
            let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            y.push(v);
            orthonormalize(&mut y, kernel);
        }
        // Rayleigh-Ritz on A within span(Y).
        let mut small = vec![vec![0.0; b]; b];
        let mut ay: Vec<Vec<f64>> = Vec::with_capacity(b);
        for yj in &y {
            let mut out = vec![0.0; n];
            op.apply(yj, &mut out);
            ay.push(out);
        }
        for i in 0..b {
            for j in 0..b {
                small[i][j] = dot(&y[i], &ay[j]);
            }
            for j in 0..b {
                // symmetrize
                let s = 0.5 * (small[i][j] + small[j][i]);
                small[i][j] = s;
                small[j][i] = s;
            }
        }
        let (vals, vecs) = sym_eigen(&small)?;
        let mut newx: Vec<Vec<f64>> = Vec::with_capacity(b);
        for vec_row in vecs.iter().take(b) {
            let mut v = vec![0.0; n];
            for (c, yj) in vec_row.iter().zip(&y) {
                for i in 0..n {
                    v[i] += c * yj[i];
                }
            }
            newx.push(v);
        }
        x = newx;
        // Convergence: residual of the first k pairs.
        let mut worst = 0.0f64;
        for j in 0..k {
            op.apply(&x[j], &mut ax);
            let mut res = 0.0;
            for i in 0..n {
                let r = ax[i] - vals[j] * x[j][i];
                res += r * r;
            }
            worst = worst.max(res.sqrt() / vals[j].abs().max(1.0));
        }
        let moved = (0..k)
            .map(|j| (vals[j] - theta[j]).abs())
            .fold(0.0f64, f64::max);
        theta = vals.clone();
        if worst < tol && moved < tol && outer > 0 {
            return Ok((theta[..k].to_vec(), x[..k].to_vec()));
        }
    }
    Err(Error::NoConvergence(
        "subspace iteration exceeded 200 rounds".into(),
    ))
}
