//! The certificate algebra: feasible points of the embedding program (f, y),
//! its ball-form variant (f, s), and the embedded-spread program, with
//! verified value computation and the conversions between them.
//!
//! Pair sums over vertices are always over ordered pairs including u = v;
//! one convention rules all modules.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::io::graph_hash;
use serde::{Deserialize, Serialize};

pub const FEAS_TOL: f64 = 1e-9;

fn centroid(f: &[Vec<f64>]) -> Vec<f64> {
    let n = f.len();
    let d = f.first().map_or(0, Vec::len);
    let mut c = vec![0.0; d];
    for row in f {
        for (ci, fi) in c.iter_mut().zip(row) {
            *ci += fi;
        }
    }
    for ci in &mut c {
        *ci /= n.max(1) as f64;
    }
    c
}

fn sum_sq(f: &[Vec<f64>]) -> f64 {
    f.iter().flatten().map(|x| x * x).sum()
}

fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

fn dist_p(a: &[f64], b: &[f64], p: u8) -> f64 {
    match p {
        1 => a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum(),
        2 => dist2(a, b).sqrt(),
        _ => unreachable!("p in {{1,2}}"),
    }
}

/// Feasible point of the embedding program: value sum(y) upper-bounds the
/// d-dimensional dual optimum.
#[derive(Debug, Clone)]
pub struct EmbeddingCertificate {
    pub d: usize,
    /// n rows of length d.
    pub f: Vec<Vec<f64>>,
    pub y: Vec<f64>,
}

/// Ball-form certificate: radii s with first-power distance constraints.
#[derive(Debug, Clone)]
pub struct BallCertificate {
    pub d: usize,
    pub f: Vec<Vec<f64>>,
    pub s: Vec<f64>,
}

/// Feasible point of the embedded-spread program; value lower-bounds the
/// extremal spread.
#[derive(Debug, Clone)]
pub struct SpreadEmbeddingCertificate {
    pub p: u8,
    pub d: usize,
    pub f: Vec<Vec<f64>>,
    pub y: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyReport {
    pub feasible: bool,
    pub worst_slack: f64,
    pub value: f64,
    pub centroid_norm: f64,
    /// Violated constraints as (u, v, slack), slack < 0.
    pub violations: Vec<(u32, u32, f64)>,
}

impl EmbeddingCertificate {
    pub fn value(&self) -> f64 {
        self.y.iter().sum()
    }

    /// Check every invariant: centered f, nonnegative y, and the edge
    /// constraints after normalizing sum ||f||^2 to 1.
    pub fn verify(&self, g: &Graph) -> VerifyReport {
        let n = g.n();
        let mut violations = Vec::new();
        let mut worst: f64 = f64::INFINITY;
        let cnorm = centroid(&self.f).iter().map(|x| x * x).sum::<f64>().sqrt();
        let mut feasible = self.f.len() == n
            && self.y.len() == n
            && self.f.iter().all(|r| r.len() == self.d)
            && cnorm <= FEAS_TOL
            && self.y.iter().all(|&v| v >= -FEAS_TOL);
        let total = sum_sq(&self.f);
        if total <= 0.0 {
            return VerifyReport {
                feasible: false,
                worst_slack: f64::NEG_INFINITY,
                value: self.value(),
                centroid_norm: cnorm,
                violations,
            };
        }
        for (u, v) in g.edges() {
            let c = dist2(&self.f[u as usize], &self.f[v as usize]) / total;
            let slack = self.y[u as usize] + self.y[v as usize] - c;
            worst = worst.min(slack);
            if slack < -FEAS_TOL {
                feasible = false;
                violations.push((u, v, slack));
            }
        }
        VerifyReport {
            feasible,
            worst_slack: if worst.is_finite() { worst } else { 0.0 },
            value: self.value(),
            centroid_norm: cnorm,
            violations,
        }
    }
}

impl BallCertificate {
    pub fn value(&self) -> f64 {
        let total = sum_sq(&self.f);
        self.s.iter().map(|r| r * r).sum::<f64>() / total
    }

    pub fn verify(&self, g: &Graph) -> VerifyReport {
        let n = g.n();
        let mut violations = Vec::new();
        let mut worst: f64 = f64::INFINITY;
        let cnorm = centroid(&self.f).iter().map(|x| x * x).sum::<f64>().sqrt();
        let mut feasible = self.f.len() == n
            && self.s.len() == n
            && cnorm <= FEAS_TOL
            && self.s.iter().all(|&v| v >= -FEAS_TOL);
        let total = sum_sq(&self.f);
        if total <= 0.0 {
            return VerifyReport {
                feasible: false,
                worst_slack: f64::NEG_INFINITY,
                value: 0.0,
                centroid_norm: cnorm,
                violations,
            };
        }
        for (u, v) in g.edges() {
            let c = dist2(&self.f[u as usize], &self.f[v as usize]).sqrt();
            let slack = self.s[u as usize] + self.s[v as usize] - c;
            worst = worst.min(slack);
            if slack < -FEAS_TOL {
                feasible = false;
                violations.push((u, v, slack));
            }
        }
        VerifyReport {
            feasible,
            worst_slack: if worst.is_finite() { worst } else { 0.0 },
            value: self.value(),
            centroid_norm: cnorm,
            violations,
        }
    }
}

impl SpreadEmbeddingCertificate {
    /// Sum over ordered vertex pairs of ||f(u) - f(v)||_p^p.
    pub fn value(&self) -> f64 {
        let n = self.f.len();
        let mut total = 0.0;
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    total += dist_p(&self.f[u], &self.f[v], self.p).powi(self.p as i32);
                }
            }
        }
        total
    }

    pub fn verify(&self, g: &Graph) -> VerifyReport {
        let n = g.n();
        let mut violations = Vec::new();
        let mut worst: f64 = f64::INFINITY;
        let norm1: f64 = self.y.iter().sum();
        let mut feasible = self.f.len() == n
            && self.y.len() == n
            && (self.p == 1 || self.p == 2)
            && norm1 <= 1.0 + FEAS_TOL
            && self.y.iter().all(|&v| v >= -FEAS_TOL);
        for (u, v) in g.edges() {
            let c = dist_p(&self.f[u as usize], &self.f[v as usize], self.p).powi(self.p as i32);
            let slack = self.y[u as usize] + self.y[v as usize] - c;
            worst = worst.min(slack);
            if slack < -FEAS_TOL {
                feasible = false;
                violations.push((u, v, slack));
            }
        }
        VerifyReport {
            feasible,
            worst_slack: if worst.is_finite() { worst } else { 0.0 },
            value: self.value(),
            centroid_norm: 0.0,
            violations,
        }
    }
}

/// The even/odd split certificate showing the 1-dimensional program is O(1):
/// f = +-1 split, y = 2/n (even n); one vertex parked at 0 and y = 2/(n-1)
/// (odd n).
pub fn trivial_gamma1(g: &Graph) -> Result<EmbeddingCertificate> {
    let n = g.n();
    if n < 2 {
        return Err(Error::Precondition("need n >= 2".into()));
    }
    let (f, y) = if n.is_multiple_of(2) {
        let f: Vec<Vec<f64>> = (0..n)
            .map(|v| vec![if v < n / 2 { -1.0 } else { 1.0 }])
            .collect();
        (f, vec![2.0 / n as f64; n])
    } else {
        let f: Vec<Vec<f64>> = (0..n)
            .map(|v| {
                vec![if v == n - 1 {
                    0.0
                } else if v < n / 2 {
                    -1.0
                } else {
                    1.0
                }]
            })
            .collect();
        (f, vec![2.0 / (n - 1) as f64; n])
    };
    Ok(EmbeddingCertificate { d: 1, f, y })
}

/// Ball form with the same value: s(v) = sqrt(y(v) * sum ||f||^2).
pub fn embedding_to_ball(cert: &EmbeddingCertificate, g: &Graph) -> Result<BallCertificate> {
    let report = cert.verify(g);
    if !report.feasible {
        return Err(Error::InfeasibleCertificate(report.worst_slack));
    }
    let total = sum_sq(&cert.f);
    let s = cert
        .y
        .iter()
        .map(|&yv| (yv.max(0.0) * total).sqrt())
        .collect();
    Ok(BallCertificate {
        d: cert.d,
        f: cert.f.clone(),
        s,
    })
}

/// Embedding form with exactly twice the value: y(v) = 2 s(v)^2 / sum ||f||^2.
pub fn ball_to_embedding(cert: &BallCertificate, g: &Graph) -> Result<EmbeddingCertificate> {
    let report = cert.verify(g);
    if !report.feasible {
        return Err(Error::InfeasibleCertificate(report.worst_slack));
    }
    let total = sum_sq(&cert.f);
    let y = cert.s.iter().map(|&sv| 2.0 * sv * sv / total).collect();
    Ok(EmbeddingCertificate {
        d: cert.d,
        f: cert.f.clone(),
        y,
    })
}

/// Convert a p = 2 spread certificate into an embedding certificate with
/// value 2n ||y||_1 / Q, where Q is the spread value of the centered points.
/// Uses the ordered-pair identity 2n sum ||f_c||^2 = sum_{u,v} ||f_c(u)-f_c(v)||^2.
pub fn spread_to_gamma(
    cert: &SpreadEmbeddingCertificate,
    g: &Graph,
) -> Result<EmbeddingCertificate> {
    if cert.p != 2 {
        return Err(Error::Precondition("spread_to_gamma needs p = 2".into()));
    }
    let report = cert.verify(g);
    if !report.feasible {
        return Err(Error::InfeasibleCertificate(report.worst_slack));
    }
    let c = centroid(&cert.f);
    let f: Vec<Vec<f64>> = cert
        .f
        .iter()
        .map(|row| row.iter().zip(&c).map(|(x, m)| x - m).collect())
        .collect();
    let total = sum_sq(&f);
    if total <= 0.0 {
        return Err(Error::Degenerate("constant embedding".into()));
    }
    let y = cert.y.iter().map(|&yv| yv.max(0.0) / total).collect();
    Ok(EmbeddingCertificate { d: cert.d, f, y })
}

/// Cauchy-Schwarz route from p = 1 to p = 2: y' = y^2, f' = f / sqrt(2).
pub fn q1_to_q2(cert: &SpreadEmbeddingCertificate, g: &Graph) -> Result<SpreadEmbeddingCertificate> {
    if cert.p != 1 {
        return Err(Error::Precondition("q1_to_q2 needs p = 1".into()));
    }
    let report = cert.verify(g);
    if !report.feasible {
        return Err(Error::InfeasibleCertificate(report.worst_slack));
    }
    let inv_sqrt2 = 1.0 / std::f64::consts::SQRT_2;
    let f = cert
        .f
        .iter()
        .map(|row| row.iter().map(|x| x * inv_sqrt2).collect())
        .collect();
    let y = cert.y.iter().map(|&yv| yv * yv).collect();
    Ok(SpreadEmbeddingCertificate {
        p: 2,
        d: cert.d,
        f,
        y,
    })
}

// ---------------------------------------------------------------------------
// Documents
// ---------------------------------------------------------------------------

/// On-disk certificate document. Coordinates are stored as decimal strings at
/// 17 significant digits, which round-trips f64 exactly, so independent
/// readers agree bit-for-bit on accept/reject at the declared tolerance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub kind: String, // "gamma" | "gamma-dot" | "spread"
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u8>,
    pub d: usize,
    pub f: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<Vec<String>>,
    pub graph_hash: String,
    pub tolerance: f64,
    pub precision: u8,
}

fn enc(x: f64) -> String {
    format!("{x:.17e}")
}

fn dec(s: &str) -> Result<f64> {
    s.parse::<f64>().map_err(|_| Error::Parse {
        line: 0,
        msg: format!("bad decimal {s:?}"),
    })
}

fn enc_matrix(f: &[Vec<f64>]) -> Vec<Vec<String>> {
    f.iter().map(|r| r.iter().map(|&x| enc(x)).collect()).collect()
}

fn dec_matrix(f: &[Vec<String>]) -> Result<Vec<Vec<f64>>> {
    f.iter()
        .map(|r| r.iter().map(|s| dec(s)).collect())
        .collect()
}

/// Any of the three certificate kinds, as read from or written to disk.
#[derive(Debug, Clone)]
pub enum Certificate {
    Gamma(EmbeddingCertificate),
    GammaDot(BallCertificate),
    Spread(SpreadEmbeddingCertificate),
}

impl Certificate {
    pub fn to_doc(&self, g: &Graph) -> CertificateDoc {
        match self {
            Certificate::Gamma(c) => CertificateDoc {
                kind: "gamma".into(),
                p: None,
                d: c.d,
                f: enc_matrix(&c.f),
                y: Some(c.y.iter().map(|&x| enc(x)).collect()),
                s: None,
                graph_hash: graph_hash(g),
                tolerance: FEAS_TOL,
                precision: 17,
            },
            Certificate::GammaDot(c) => CertificateDoc {
                kind: "gamma-dot".into(),
                p: None,
                d: c.d,
                f: enc_matrix(&c.f),
                y: None,
                s: Some(c.s.iter().map(|&x| enc(x)).collect()),
                graph_hash: graph_hash(g),
                tolerance: FEAS_TOL,
                precision: 17,
            },
            Certificate::Spread(c) => CertificateDoc {
                kind: "spread".into(),
                p: Some(c.p),
                d: c.d,
                f: enc_matrix(&c.f),
                y: Some(c.y.iter().map(|&x| enc(x)).collect()),
                s: None,
                graph_hash: graph_hash(g),
                tolerance: FEAS_TOL,
                precision: 17,
            },
        }
    }

    pub fn from_doc(doc: &CertificateDoc, g: &Graph) -> Result<Certificate> {
        if doc.graph_hash != graph_hash(g) {
            return Err(Error::Precondition(format!(
                "certificate bound to graph {} but instance hashes to {}",
                doc.graph_hash,
                graph_hash(g)
            )));
        }
        let f = dec_matrix(&doc.f)?;
        match doc.kind.as_str() {
            "gamma" => {
                let y = doc
                    .y
                    .as_ref()
                    .ok_or_else(|| Error::Precondition("gamma document without y".into()))?
                    .iter()
                    .map(|s| dec(s))
                    .collect::<Result<Vec<f64>>>()?;
                Ok(Certificate::Gamma(EmbeddingCertificate { d: doc.d, f, y }))
            }
            "gamma-dot" => {
                let s = doc
                    .s
                    .as_ref()
                    .ok_or_else(|| Error::Precondition("gamma-dot document without s".into()))?
                    .iter()
                    .map(|x| dec(x))
                    .collect::<Result<Vec<f64>>>()?;
                Ok(Certificate::GammaDot(BallCertificate { d: doc.d, f, s }))
            }
            "spread" => {
                let y = doc
                    .y
                    .as_ref()
                    .ok_or_else(|| Error::Precondition("spread document without y".into()))?
                    .iter()
                    .map(|s| dec(s))
                    .collect::<Result<Vec<f64>>>()?;
                let p = doc
                    .p
                    .ok_or_else(|| Error::Precondition("spread document without p".into()))?;
                Ok(Certificate::Spread(SpreadEmbeddingCertificate {
                    p,
                    d: doc.d,
                    f,
                    y,
                }))
            }
            other => Err(Error::Precondition(format!("unknown kind {other:?}"))),
        }
    }

    pub fn verify(&self, g: &Graph) -> VerifyReport {
        match self {
            Certificate::Gamma(c) => c.verify(g),
            Certificate::GammaDot(c) => c.verify(g),
            Certificate::Spread(c) => c.verify(g),
        }
    }
}
