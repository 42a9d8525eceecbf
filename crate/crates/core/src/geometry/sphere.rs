//! Sphere-side machinery: inverse stereographic lifting of euclidean ball
//! systems, exact transport of geodesic caps under the Mobius automorphisms
//! of the sphere, and the damped-descent recentering that drives the centroid
//! of the cap centers to the origin. Conformal maps send caps to caps, so the
//! intersection graph never changes.

use super::{BallKind, BallSystem};
use crate::error::{Error, Result};

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Mobius automorphism of the unit sphere moved by a parameter p inside the
/// open unit ball (the identity at p = 0):
/// phi_p(x) = (1 - |p|^2)(x - p)/|x - p|^2 - p.
pub fn mobius_map(p: &[f64], x: &[f64]) -> Vec<f64> {
    let p2 = dot(p, p);
    let diff: Vec<f64> = x.iter().zip(p).map(|(a, b)| a - b).collect();
    let d2 = dot(&diff, &diff).max(1e-300);
    let scale = (1.0 - p2) / d2;
    diff.iter().zip(p).map(|(d, pk)| scale * d - pk).collect()
}

/// An orthonormal basis of the hyperplane orthogonal to the unit vector c.
fn orthobasis(c: &[f64]) -> Vec<Vec<f64>> {
    let dim = c.len();
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(dim - 1);
    for k in 0..dim {
        let mut e = vec![0.0; dim];
        e[k] = 1.0;
        // project out c and previous basis vectors
        let ce = dot(c, &e);
        for (ei, ci) in e.iter_mut().zip(c) {
            *ei -= ce * ci;
        }
        for b in &basis {
            let be = dot(b, &e);
            for (ei, bi) in e.iter_mut().zip(b) {
                *ei -= be * bi;
            }
        }
        let n = norm(&e);
        if n > 1e-8 {
            basis.push(e.iter().map(|x| x / n).collect());
            if basis.len() == dim - 1 {
                break;
            }
        }
    }
    basis
}

/// Kernel vector of the (dim-1) x dim matrix `rows` (one-dimensional null
/// space assumed), by Gaussian elimination with partial pivoting.
fn kernel_vector(rows: &[Vec<f64>]) -> Option<Vec<f64>> {
    let dim = rows.first()?.len();
    let mut m: Vec<Vec<f64>> = rows.to_vec();
    let mut pivot_col = vec![usize::MAX; m.len()];
    let mut used = vec![false; dim];
    let mut r = 0usize;
    for _ in 0..dim {
        if r >= m.len() {
            break;
        }
        // best pivot among unused columns
        let (mut bc, mut bv, mut br) = (usize::MAX, 0.0f64, usize::MAX);
        for (ri, row) in m.iter().enumerate().skip(r) {
            for (ci, &val) in row.iter().enumerate() {
                if !used[ci] && val.abs() > bv {
                    bv = val.abs();
                    bc = ci;
                    br = ri;
                }
            }
        }
        if bc == usize::MAX || bv < 1e-12 {
            break;
        }
        m.swap(r, br);
        used[bc] = true;
        pivot_col[r] = bc;
        let piv = m[r][bc];
        for ri in 0..m.len() {
            if ri != r {
                let factor = m[ri][bc] / piv;
                if factor != 0.0 {
                    for ci in 0..dim {
                        let delta = factor * m[r][ci];
                        m[ri][ci] -= delta;
                    }
                }
            }
        }
        r += 1;
    }
    // free column = any unused one
    let free = (0..dim).find(|&c| !used[c])?;
    let mut v = vec![0.0; dim];
    v[free] = 1.0;
    for ri in (0..r).rev() {
        let pc = pivot_col[ri];
        if pc == usize::MAX {
            continue;
        }
        let mut s = 0.0;
        for ci in 0..dim {
            if ci != pc {
                s += m[ri][ci] * v[ci];
            }
        }
        v[pc] = -s / m[ri][pc];
    }
    let n = norm(&v);
    if n < 1e-12 {
        None
    } else {
        Some(v.iter().map(|x| x / n).collect())
    }
}

/// Transport a geodesic cap (center, geodesic radius) through phi_p exactly:
/// map enough boundary points to refit the cap's plane, orient by the mapped
/// interior witness, and read off the new center and radius.
pub fn transport_cap(p: &[f64], center: &[f64], radius: f64) -> Result<(Vec<f64>, f64)> {
    let dim = center.len();
    if radius <= 1e-15 {
        let c = mobius_map(p, center);
        let n = norm(&c).max(1e-300);
        return Ok((c.iter().map(|x| x / n).collect(), radius));
    }
    let basis = orthobasis(center);
    if basis.len() != dim - 1 {
        return Err(Error::Degenerate("cap center not a unit vector".into()));
    }
    let (cr, sr) = (radius.cos(), radius.sin());
    let mut boundary: Vec<Vec<f64>> = Vec::with_capacity(dim);
    for b in &basis {
        boundary.push(
            center
                .iter()
                .zip(b)
                .map(|(c, u)| cr * c + sr * u)
                .collect(),
        );
    }
    boundary.push(
        center
            .iter()
            .zip(&basis[0])
            .map(|(c, u)| cr * c - sr * u)
            .collect(),
    );
    let mapped: Vec<Vec<f64>> = boundary.iter().map(|x| mobius_map(p, x)).collect();
    let rows: Vec<Vec<f64>> = mapped[1..]
        .iter()
        .map(|y| y.iter().zip(&mapped[0]).map(|(a, b)| a - b).collect())
        .collect();
    let mut normal =
        kernel_vector(&rows).ok_or_else(|| Error::Degenerate("degenerate cap image".into()))?;
    let witness = mobius_map(p, center);
    let mut h = dot(&mapped[0], &normal);
    if dot(&witness, &normal) < h {
        for x in normal.iter_mut() {
            *x = -*x;
        }
        h = -h;
    }
    Ok((normal, h.clamp(-1.0, 1.0).acos()))
}

fn transport_system(p: &[f64], b: &BallSystem) -> Result<BallSystem> {
    let mut centers = Vec::with_capacity(b.n());
    let mut radii = Vec::with_capacity(b.n());
    for (c, &r) in b.centers.iter().zip(&b.radii) {
        let (nc, nr) = transport_cap(p, c, r)?;
        centers.push(nc);
        radii.push(nr);
    }
    Ok(BallSystem {
        d: b.d,
        kind: BallKind::GeodesicOnSphere,
        centers,
        radii,
    })
}

fn centroid_norm2(b: &BallSystem) -> f64 {
    let dim = b.d + 1;
    let mut c = vec![0.0; dim];
    for center in &b.centers {
        for (ci, x) in c.iter_mut().zip(center) {
            *ci += x / b.n() as f64;
        }
    }
    dot(&c, &c)
}

/// Recenter a geodesic system: find a Mobius automorphism under which the
/// centroid of the (transported) cap centers is the origin, by steepest
/// descent on the squared centroid norm with step halving. Requires that no
/// point is covered by ceil(n/2) of the caps, which guarantees a solution.
pub fn sphere_normalize(b: &BallSystem) -> Result<BallSystem> {
    b.validate()?;
    if b.kind != BallKind::GeodesicOnSphere {
        return Err(Error::Precondition("need a geodesic system".into()));
    }
    let n = b.n();
    let half = n.div_ceil(2);
    if n >= 2 {
        // probe candidate deep points: every cap center
        for probe in &b.centers {
            let covered = b
                .centers
                .iter()
                .zip(&b.radii)
                .filter(|(c, &r)| dot(c, probe).clamp(-1.0, 1.0).acos() <= r + 1e-12)
                .count();
            if covered >= half {
                return Err(Error::Precondition(format!(
                    "a point is covered by {covered} >= ceil(n/2) caps"
                )));
            }
        }
    }
    let dim = b.d + 1;
    let mut cur = b.clone();
    let tol2 = 1e-7f64 * 1e-7;
    for _ in 0..4000 {
        let f0 = centroid_norm2(&cur);
        if f0 <= tol2 {
            return Ok(cur);
        }
        // finite-difference gradient in the Mobius parameter at p = 0
        let h = 1e-6;
        let mut grad = vec![0.0; dim];
        for k in 0..dim {
            let mut pp = vec![0.0; dim];
            pp[k] = h;
            let fp = centroid_norm2(&transport_system(&pp, &cur)?);
            pp[k] = -h;
            let fm = centroid_norm2(&transport_system(&pp, &cur)?);
            grad[k] = (fp - fm) / (2.0 * h);
        }
        let gn = norm(&grad);
        if gn < 1e-14 {
            return Err(Error::NoConvergence(
                "vanishing recentering gradient".into(),
            ));
        }
        let mut eta = 0.5 / gn * f0.sqrt().min(1.0);
        let mut accepted = false;
        for _ in 0..60 {
            let p: Vec<f64> = grad.iter().map(|g| -eta * g).collect();
            if norm(&p) < 0.999 {
                if let Ok(next) = transport_system(&p, &cur) {
                    if centroid_norm2(&next) < f0 {
                        cur = next;
                        accepted = true;
                        break;
                    }
                }
            }
            eta /= 2.0;
        }
        if !accepted {
            return Err(Error::NoConvergence(format!(
                "recentering stalled at centroid norm {:.3e}",
                f0.sqrt()
            )));
        }
    }
    let f0 = centroid_norm2(&cur);
    if f0 <= tol2 {
        Ok(cur)
    } else {
        Err(Error::NoConvergence(format!(
            "recentering reached iteration cap at {:.3e}",
            f0.sqrt()
        )))
    }
}

/// Inverse stereographic lift of a euclidean system: every ball boundary maps
/// to a circle on the sphere, recovered exactly from mapped boundary points.
pub fn lift_to_sphere(b: &BallSystem) -> Result<BallSystem> {
    if b.kind != BallKind::Euclidean {
        return Err(Error::Precondition("lift needs a euclidean system".into()));
    }
    let d = b.d;
    // pre-normalize: centroid to origin, RMS norm to 1, so the image spreads
    // over the sphere instead of huddling at a pole
    let n = b.n();
    let mut mean = vec![0.0; d];
    for c in &b.centers {
        for (m, x) in mean.iter_mut().zip(c) {
            *m += x / n as f64;
        }
    }
    let mut rms = 0.0;
    for c in &b.centers {
        rms += c
            .iter()
            .zip(&mean)
            .map(|(x, m)| (x - m) * (x - m))
            .sum::<f64>();
    }
    let scale = if rms > 0.0 { (rms / n as f64).sqrt() } else { 1.0 };
    let lift_point = |x: &[f64]| -> Vec<f64> {
        let q: Vec<f64> = x
            .iter()
            .zip(&mean)
            .map(|(a, m)| (a - m) / scale)
            .collect();
        let q2 = dot(&q, &q);
        let mut out: Vec<f64> = q.iter().map(|a| 2.0 * a / (q2 + 1.0)).collect();
        out.push((q2 - 1.0) / (q2 + 1.0));
        out
    };
    let mut centers = Vec::with_capacity(n);
    let mut radii = Vec::with_capacity(n);
    for (c, &r) in b.centers.iter().zip(&b.radii) {
        // boundary points of the euclidean ball
        let mut boundary: Vec<Vec<f64>> = Vec::with_capacity(d + 1);
        for k in 0..d {
            let mut p = c.clone();
            p[k] += r;
            boundary.push(lift_point(&p));
        }
        let mut p = c.clone();
        p[0] -= r;
        boundary.push(lift_point(&p));
        let witness = lift_point(c);
        if r <= 1e-15 {
            let nw = norm(&witness).max(1e-300);
            centers.push(witness.iter().map(|x| x / nw).collect());
            radii.push(0.0);
            continue;
        }
        let rows: Vec<Vec<f64>> = boundary[1..]
            .iter()
            .map(|y| y.iter().zip(&boundary[0]).map(|(a, b)| a - b).collect())
            .collect();
        let mut normal = kernel_vector(&rows)
            .ok_or_else(|| Error::Degenerate("degenerate lifted ball".into()))?;
        let mut hval = dot(&boundary[0], &normal);
        if dot(&witness, &normal) < hval {
            for x in normal.iter_mut() {
                *x = -*x;
            }
            hval = -hval;
        }
        centers.push(normal);
        radii.push(hval.clamp(-1.0, 1.0).acos());
    }
    Ok(BallSystem {
        d,
        kind: BallKind::GeodesicOnSphere,
        centers,
        radii,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{intersection_graph, intersection_graph_with_tol};
    use rand::Rng;

    fn octahedral_caps() -> BallSystem {
        let r = std::f64::consts::FRAC_PI_4;
        BallSystem {
            d: 2,
            kind: BallKind::GeodesicOnSphere,
            centers: vec![
                vec![1.0, 0.0, 0.0],
                vec![-1.0, 0.0, 0.0],
                vec![0.0, 1.0, 0.0],
                vec![0.0, -1.0, 0.0],
                vec![0.0, 0.0, 1.0],
                vec![0.0, 0.0, -1.0],
            ],
            radii: vec![r; 6],
        }
    }

    #[test]
    fn mobius_keeps_sphere() {
        let mut rng = crate::rng::rng_from(3, "mobius", 0);
        for _ in 0..50 {
            let p: Vec<f64> = (0..3).map(|_| rng.gen_range(-0.4..0.4)).collect();
            let mut x: Vec<f64> = (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let nx = norm(&x);
            for xi in x.iter_mut() {
                *xi /= nx;
            }
            let y = mobius_map(&p, &x);
            assert!((norm(&y) - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn mobius_at_zero_is_identity() {
        let x = vec![0.6, 0.0, 0.8];
        let y = mobius_map(&[0.0, 0.0, 0.0], &x);
        for (a, b) in x.iter().zip(&y) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    /// Transported caps keep exact membership: mapped boundary points stay on
    /// the new boundary and mapped interior points stay inside.
    #[test]
    fn transport_preserves_membership() {
        let mut rng = crate::rng::rng_from(5, "transport", 0);
        for _ in 0..40 {
            let mut c: Vec<f64> = (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let nc = norm(&c);
            for x in c.iter_mut() {
                *x /= nc;
            }
            let r = rng.gen_range(0.05..1.2);
            let p: Vec<f64> = (0..3).map(|_| rng.gen_range(-0.3..0.3)).collect();
            let (c2, r2) = transport_cap(&p, &c, r).unwrap();
            let basis = orthobasis(&c);
            for angle in [0.3f64, 1.1, 2.7, 4.0, 5.5] {
                let dir: Vec<f64> = basis[0]
                    .iter()
                    .zip(&basis[1])
                    .map(|(u, v)| angle.cos() * u + angle.sin() * v)
                    .collect();
                // boundary point
                let x: Vec<f64> = c
                    .iter()
                    .zip(&dir)
                    .map(|(ci, di)| r.cos() * ci + r.sin() * di)
                    .collect();
                let y = mobius_map(&p, &x);
                let ang = dot(&y, &c2).clamp(-1.0, 1.0).acos();
                assert!((ang - r2).abs() < 1e-8, "boundary moved by {:.2e}", (ang - r2).abs());
                // interior point at half the radius
                let x: Vec<f64> = c
                    .iter()
                    .zip(&dir)
                    .map(|(ci, di)| (r / 2.0).cos() * ci + (r / 2.0).sin() * di)
                    .collect();
                let y = mobius_map(&p, &x);
                let ang = dot(&y, &c2).clamp(-1.0, 1.0).acos();
                assert!(ang <= r2 + 1e-8);
            }
        }
    }

    #[test]
    fn normalize_is_identity_on_octahedron() {
        let b = octahedral_caps();
        let out = sphere_normalize(&b).unwrap();
        for (c, c2) in b.centers.iter().zip(&out.centers) {
            for (a, b) in c.iter().zip(c2) {
                assert!((a - b).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn normalize_recovers_translated_octahedron() {
        let b = octahedral_caps();
        let p = vec![0.3, -0.2, 0.25];
        let shifted = transport_system(&p, &b).unwrap();
        assert!(centroid_norm2(&shifted).sqrt() > 0.05);
        let out = sphere_normalize(&shifted).unwrap();
        assert!(centroid_norm2(&out).sqrt() <= 1e-7);
        // intersection graph unchanged through the whole trip
        let g0 = intersection_graph(&b).unwrap();
        let g1 = intersection_graph_with_tol(&out, 1e-9).unwrap();
        assert_eq!(g0.edges(), g1.edges());
    }

    #[test]
    fn normalize_rejects_half_covering() {
        // four identical caps: their shared center is covered by all
        let b = BallSystem {
            d: 2,
            kind: BallKind::GeodesicOnSphere,
            centers: vec![vec![0.0, 0.0, 1.0]; 4],
            radii: vec![0.5; 4],
        };
        assert!(matches!(
            sphere_normalize(&b),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn lift_preserves_tangency() {
        // two tangent unit disks in the plane
        let b = BallSystem {
            d: 2,
            kind: BallKind::Euclidean,
            centers: vec![vec![-1.0, 0.0], vec![1.0, 0.0]],
            radii: vec![1.0, 1.0],
        };
        let lifted = lift_to_sphere(&b).unwrap();
        lifted.validate().unwrap();
        let g = intersection_graph_with_tol(&lifted, 1e-9).unwrap();
        assert_eq!(g.m(), 1);
        // a disjoint third disk stays disjoint
        let b = BallSystem {
            d: 2,
            kind: BallKind::Euclidean,
            centers: vec![vec![-1.0, 0.0], vec![1.0, 0.0], vec![5.0, 5.0]],
            radii: vec![1.0, 1.0, 0.5],
        };
        let lifted = lift_to_sphere(&b).unwrap();
        let g = intersection_graph_with_tol(&lifted, 1e-9).unwrap();
        assert_eq!(g.m(), 1);
    }
}
