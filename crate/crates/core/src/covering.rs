//! Exact solver for the covering program
//!
//!   minimize    sum_v y(v)
//!   subject to  y(u) + y(v) >= c_uv   for each constraint edge uv
//!               y >= 0.
//!
//! The LP is solved through its dual, a maximum-weight fractional matching,
//! which is integral on the bipartite double cover: build the n x n
//! assignment instance `W[u][v]` = c_uv (0 where no constraint, 0 diagonal)
//! and solve max-weight perfect matching. Padding with zero-weight cells is
//! free, and the assignment duals (alpha, beta) satisfy alpha_u + beta_v >=
//! `W[u][v]`
//! for every pair, so y(u) = (alpha_u + beta_u)/2 is covering-feasible with
//! sum y = w(M)/2, which matches the dual bound exactly. The solver returns
//! the strong-duality certificate so callers can re-verify optimality.

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct CoveringSolution {
    pub y: Vec<f64>,
    pub objective: f64,
    /// Per-constraint weight of the optimal fractional matching (the dual
    /// witness); entries lie in {0, 1/2, 1}.
    pub dual: Vec<f64>,
    /// max |violation| observed when the certificate was checked.
    pub certificate_slack: f64,
}

/// Hungarian algorithm (potentials form) for min-cost perfect assignment on
/// an implicitly dense cost matrix; `cost_row` fills row i.
fn assignment(n: usize, mut cost_row: impl FnMut(usize, &mut [f64])) -> (Vec<usize>, Vec<f64>, Vec<f64>) {
    // 1-indexed arrays in the classical formulation.
    let inf = f64::INFINITY;
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    let mut p = vec![0usize; n + 1]; // p[j] = row matched to column j (0 = none)
    let mut way = vec![0usize; n + 1];
    let mut row = vec![0.0; n];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![inf; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            cost_row(i0 - 1, &mut row);
            let mut delta = inf;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = row[j - 1] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut match_of_row = vec![usize::MAX; n];
    for j in 1..=n {
        match_of_row[p[j] - 1] = j - 1;
    }
    (match_of_row, u[1..].to_vec(), v[1..].to_vec())
}

/// Solve the covering program exactly. Constraints with non-positive right
/// hand side are dropped (satisfied by y = 0).
pub fn solve_covering(n: usize, constraints: &[(u32, u32, f64)]) -> Result<CoveringSolution> {
    for &(a, b, _) in constraints {
        if a as usize >= n || b as usize >= n {
            return Err(Error::VertexOutOfRange {
                id: a.max(b) as usize,
                n,
            });
        }
        if a == b {
            return Err(Error::InvalidSubset(format!("constraint loop at {a}")));
        }
    }
    if n == 0 {
        return Ok(CoveringSolution {
            y: Vec::new(),
            objective: 0.0,
            dual: vec![0.0; constraints.len()],
            certificate_slack: 0.0,
        });
    }
    // Sparse weight rows of the double-cover assignment instance.
    let mut rows: Vec<Vec<(u32, f64)>> = vec![Vec::new(); n];
    for &(a, b, c) in constraints {
        if c > 0.0 {
            let cur = rows[a as usize]
                .iter_mut()
                .find(|(j, _)| *j == b)
                .map(|(_, w)| w);
            match cur {
                Some(w) => *w = w.max(c),
                None => rows[a as usize].push((b, c)),
            }
            let cur = rows[b as usize]
                .iter_mut()
                .find(|(j, _)| *j == a)
                .map(|(_, w)| w);
            match cur {
                Some(w) => *w = w.max(c),
                None => rows[b as usize].push((a, c)),
            }
        }
    }

    let (match_of_row, u, v) = assignment(n, |i, out| {
        out.fill(0.0);
        for &(j, w) in &rows[i] {
            out[j as usize] = -w; // min-cost convention
        }
    });

    // Covering duals: alpha_i = -u_i, beta_j = -v_j.
    let y: Vec<f64> = (0..n).map(|i| (-(u[i] + v[i]) / 2.0).max(0.0)).collect();
    let matching_weight: f64 = match_of_row
        .iter()
        .enumerate()
        .map(|(i, &j)| rows[i].iter().find(|(jj, _)| *jj as usize == j).map_or(0.0, |(_, w)| *w))
        .sum();
    let objective: f64 = y.iter().sum();

    // Dual witness on the original constraints; when the same pair appears
    // more than once, the credit goes to the binding (max-c) copy so vertex
    // loads stay within one.
    let mut dual = vec![0.0; constraints.len()];
    let mut binding: std::collections::BTreeMap<(u32, u32), usize> = std::collections::BTreeMap::new();
    for (k, &(a, b, c)) in constraints.iter().enumerate() {
        let key = (a.min(b), a.max(b));
        match binding.get(&key) {
            Some(&j) if constraints[j].2 >= c => {}
            _ => {
                binding.insert(key, k);
            }
        }
    }
    for (&(a, b), &k) in &binding {
        let mut x = 0.0;
        if match_of_row[a as usize] == b as usize {
            x += 0.5;
        }
        if match_of_row[b as usize] == a as usize {
            x += 0.5;
        }
        dual[k] = x;
    }

    // Strong-duality certificate: y feasible, dual load <= 1 per vertex, and
    // matching objectives. A failure here is a solver bug, never a soft error.
    let mut slack: f64 = (objective - matching_weight / 2.0).abs();
    for &(a, b, c) in constraints {
        let viol = c - (y[a as usize] + y[b as usize]);
        slack = slack.max(viol);
    }
    let mut load = vec![0.0; n];
    for (k, &(a, b, _)) in constraints.iter().enumerate() {
        load[a as usize] += dual[k];
        load[b as usize] += dual[k];
    }
    for &l in &load {
        slack = slack.max(l - 1.0);
    }
    let scale = objective.abs().max(1.0);
    if slack > 1e-8 * scale {
        return Err(Error::NoConvergence(format!(
            "covering certificate violated by {slack:.3e}"
        )));
    }
    Ok(CoveringSolution {
        y,
        objective,
        dual,
        certificate_slack: slack,
    })
}
