//! Corpus benchmark harness: runs the full pipeline per instance in a small
//! thread pool and fits log-log slopes across sizes.

use crate::Family;
use serde::Serialize;
use std::time::Instant;
use std::path::Path;
use vsep_core::certificates::Certificate;
use vsep_core::error::{Error, Result};
use vsep_core::geometry::generate_random_triangulation;
use vsep_core::rounding::{full_pipeline, PipelineOptions};
use vsep_core::Graph;

#[derive(Debug, Clone, Serialize)]
pub struct BenchRow {
    pub family: String,
    pub n: usize,
    pub delta: usize,
    pub lambda2_star: f64,
    pub gamma_one: f64,
    pub psi_sweep: f64,
    pub separator: usize,
    pub balanced: bool,
    pub millis: u128,
    /// Path of the emitted line-certificate document, when an output
    /// directory was given; every row is re-verifiable from it.
    pub certificate_path: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    pub separator_slope: f64,
    pub gamma_slope: f64,
    pub spread_slope: f64,
}

/// Least-squares slope of log(y) against log(x); NaN with fewer than two
/// usable points.
pub fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let usable: Vec<(f64, f64)> = points
        .iter()
        .filter(|&&(x, y)| x > 0.0 && y > 0.0)
        .map(|&(x, y)| (x.ln(), y.ln()))
        .collect();
    if usable.len() < 2 {
        return f64::NAN;
    }
    let n = usable.len() as f64;
    let sx: f64 = usable.iter().map(|p| p.0).sum();
    let sy: f64 = usable.iter().map(|p| p.1).sum();
    let sxx: f64 = usable.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = usable.iter().map(|p| p.0 * p.1).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

fn instance(family: Family, n: usize, seed: u64) -> Result<Graph> {
    match family {
        Family::Delaunay => Ok(generate_random_triangulation(n, seed)?.graph().clone()),
        Family::Grid => {
            let side = (n as f64).sqrt().round() as usize;
            Ok(vsep_core::generators::grid(side, side))
        }
        Family::Path => Ok(vsep_core::generators::path(n)),
        Family::Cycle => Ok(vsep_core::generators::cycle(n)),
        Family::Gnp => Ok(vsep_core::generators::random_connected(
            n,
            2.5 / n as f64,
            seed,
        )),
        _ => Err(Error::Precondition(format!(
            "family {family:?} has no bench instance"
        ))),
    }
}

pub fn run_bench(
    family: Family,
    sizes: &[usize],
    seed: u64,
    threads: usize,
    out_dir: Option<&Path>,
) -> Result<BenchReport> {
    if sizes.len() < 2 {
        return Err(Error::Precondition("bench needs at least two sizes".into()));
    }
    let jobs: Vec<(usize, usize)> = sizes.iter().copied().enumerate().collect();
    let mut rows: Vec<Option<BenchRow>> = vec![None; jobs.len()];
    let chunk = jobs.len().div_ceil(threads.max(1));
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for (worker, slice) in jobs.chunks(chunk).enumerate() {
            let slice: Vec<(usize, usize)> = slice.to_vec();
            handles.push((
                worker,
                scope.spawn(move || -> Vec<(usize, Result<(BenchRow, String)>)> {
                    slice
                        .into_iter()
                        .map(|(idx, n)| (idx, bench_one(family, n, seed.wrapping_add(idx as u64))))
                        .collect()
                }),
            ));
        }
        for (_, handle) in handles {
            for (idx, row) in handle.join().expect("bench worker panicked") {
                rows[idx] = Some(match row {
                    Ok((mut row, cert_json)) => {
                        if let Some(dir) = out_dir {
                            let name = format!("row-{idx}-certificate.json");
                            if std::fs::create_dir_all(dir).is_ok()
                                && std::fs::write(dir.join(&name), cert_json).is_ok()
                            {
                                row.certificate_path = Some(name);
                            }
                        }
                        row
                    }
                    Err(e) => BenchRow {
                        family: format!("{family:?} (failed: {e})"),
                        n: 0,
                        delta: 0,
                        lambda2_star: f64::NAN,
                        gamma_one: f64::NAN,
                        psi_sweep: f64::NAN,
                        separator: 0,
                        balanced: false,
                        millis: 0,
                        certificate_path: None,
                    },
                });
            }
        }
    });
    let rows: Vec<BenchRow> = rows.into_iter().flatten().collect();
    let separator_slope = log_log_slope(
        &rows
            .iter()
            .map(|r| (r.n as f64, r.separator as f64))
            .collect::<Vec<_>>(),
    );
    let gamma_slope = log_log_slope(
        &rows
            .iter()
            .map(|r| (r.n as f64, r.gamma_one))
            .collect::<Vec<_>>(),
    );
    Ok(BenchReport {
        rows,
        separator_slope,
        gamma_slope,
        spread_slope: f64::NAN,
    })
}

fn bench_one(family: Family, n: usize, seed: u64) -> Result<(BenchRow, String)> {
    let g = instance(family, n, seed)?;
    let start = Instant::now();
    let res = full_pipeline(
        &g,
        &PipelineOptions {
            seed,
            ..Default::default()
        },
    )?;
    let millis = start.elapsed().as_millis();
    let cert_json = serde_json::to_string_pretty(
        &Certificate::Gamma(res.line_certificate.clone()).to_doc(&g),
    )?;
    Ok((
        BenchRow {
            family: format!("{family:?}").to_lowercase(),
            n: g.n(),
            delta: g.max_degree(),
            lambda2_star: res.lambda2_star,
            gamma_one: res.audit.gamma_one_value,
            psi_sweep: res.audit.psi_sweep,
            separator: res.separator.s.len(),
            balanced: res.separator.validate(&g).is_ok(),
            millis,
            certificate_path: None,
        },
        cert_json,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_exact_power_law() {
        let pts: Vec<(f64, f64)> = [64.0, 144.0, 256.0, 576.0]
            .iter()
            .map(|&n: &f64| (n, n.sqrt()))
            .collect();
        assert!((log_log_slope(&pts) - 0.5).abs() < 1e-12);
        let flat: Vec<(f64, f64)> = [10.0, 100.0, 1000.0].iter().map(|&n| (n, 7.0)).collect();
        assert!(log_log_slope(&flat).abs() < 1e-12);
    }

    #[test]
    fn slope_needs_two_points() {
        assert!(log_log_slope(&[(10.0, 1.0)]).is_nan());
    }
}
