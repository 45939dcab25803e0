//! Natural parameters of simplices in dimensions two through four and the
//! determinantal volume formula built from them.
//!
//! For an n-simplex with vertices `P_0..P_n`, the in-sphere touches the facet
//! opposite `P_i` at `T_i`. Replacing `P_k` by `T_i` in that facet gives a
//! contact (n-1)-simplex; the one obtained with `i` and `k` swapped is
//! congruent to it. Entry `(i, k)` of the natural matrix holds `(n-1)!` times
//! their common hyper-area. The formula under test reads
//!
//! `(n! V)^(2(n-1)) = (-1)^n (2 Σ_{i<k} m_ik)^(n-1) det(m)`.

use crate::error::{Error, Result};
use crate::linalg::{det, solve};
use crate::scalar::Scalar;
use twofloat::TwoFloat;

/// Tolerance for the two members of a congruent contact pair, relative to
/// the largest contact volume of the simplex.
pub const PAIR_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq)]
pub struct NSimplexReport {
    pub dim: usize,
    /// `(n! V)^(2(n-1))` from the coordinates.
    pub lhs: f64,
    /// Right-hand side evaluated on the natural matrix.
    pub rhs: f64,
    pub residual: f64,
    /// Hollow symmetric `(n+1) x (n+1)` matrix of natural parameters.
    pub naturals: Vec<Vec<f64>>,
    pub contact_simplices: usize,
    pub pair_failures: usize,
    pub max_pair_mismatch: f64,
}

impl NSimplexReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.pair_failures == 0 && self.residual <= tol
    }
}

/// Right-hand side of the volume formula for a hollow symmetric matrix.
pub fn conjecture_rhs<S: Scalar>(m: &[Vec<S>]) -> S {
    let n = m.len() - 1;
    let mut sum = S::zero();
    for i in 0..=n {
        for k in i + 1..=n {
            sum = sum + m[i][k].clone();
        }
    }
    let base = S::from_i64(2) * sum;
    let mut power = S::one();
    for _ in 0..n - 1 {
        power = power * base.clone();
    }
    let value = power * det(m);
    if n % 2 == 0 {
        value
    } else {
        -value
    }
}

/// `sqrt(det(E E^T))` for the edge vectors from the first point: the
/// k-volume scaled by `k!`. Gram-Schmidt with one re-orthogonalization pass
/// keeps thin simplices accurate where the Gram determinant would cancel.
fn scaled_volume(points: &[Vec<f64>]) -> f64 {
    let p0 = &points[0];
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(points.len());
    let mut vol = 1.0;
    for p in &points[1..] {
        let mut v: Vec<f64> = p.iter().zip(p0).map(|(a, b)| a - b).collect();
        for _ in 0..2 {
            for b in &basis {
                let c = dot(&v, b);
                for (x, y) in v.iter_mut().zip(b) {
                    *x -= c * y;
                }
            }
        }
        let len = dot(&v, &v).sqrt();
        vol *= len;
        if len == 0.0 {
            return 0.0;
        }
        basis.push(v.into_iter().map(|x| x / len).collect());
    }
    vol
}

/// Orthogonal projection of `q` onto the affine hull of `points`.
fn project(q: &[f64], points: &[Vec<f64>]) -> Result<Vec<f64>> {
    let p0 = &points[0];
    let edges: Vec<Vec<f64>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(p0).map(|(a, b)| a - b).collect())
        .collect();
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let rel: Vec<f64> = q.iter().zip(p0).map(|(a, b)| a - b).collect();
    let gram: Vec<Vec<f64>> = edges.iter().map(|a| edges.iter().map(|b| dot(a, b)).collect()).collect();
    let rhs: Vec<f64> = edges.iter().map(|e| dot(e, &rel)).collect();
    let c = solve(&gram, &rhs).ok_or(Error::DegenerateSimplex)?;
    let mut out = p0.clone();
    for (ci, e) in c.iter().zip(&edges) {
        for (o, x) in out.iter_mut().zip(e) {
            *o += ci * x;
        }
    }
    Ok(out)
}

fn without(points: &[Vec<f64>], skip: &[usize]) -> Vec<Vec<f64>> {
    points
        .iter()
        .enumerate()
        .filter(|(j, _)| !skip.contains(j))
        .map(|(_, p)| p.clone())
        .collect()
}

/// Touch points of the in-sphere, indexed by the opposite vertex.
pub fn touch_points(vertices: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let n = validate(vertices)?;
    let facets: Vec<f64> = (0..=n).map(|i| scaled_volume(&without(vertices, &[i]))).collect();
    let total: f64 = facets.iter().sum();
    let incenter: Vec<f64> = (0..n)
        .map(|c| (0..=n).map(|i| facets[i] * vertices[i][c]).sum::<f64>() / total)
        .collect();
    (0..=n).map(|i| project(&incenter, &without(vertices, &[i]))).collect()
}

fn validate(vertices: &[Vec<f64>]) -> Result<usize> {
    let n = vertices.len().saturating_sub(1);
    if !(2..=4).contains(&n) {
        return Err(Error::InvalidArgument(format!("dimension {n} is outside 2..=4")));
    }
    if vertices.iter().any(|p| p.len() != n || p.iter().any(|x| !x.is_finite())) {
        return Err(Error::InvalidArgument(format!("expected {} finite points in R^{n}", n + 1)));
    }
    Ok(n)
}

/// `n!` times the hyper-volume.
pub fn scaled_hypervolume(vertices: &[Vec<f64>]) -> Result<f64> {
    validate(vertices)?;
    Ok(scaled_volume(vertices))
}

pub fn nsimplex_conjecture_check(vertices: &[Vec<f64>]) -> Result<NSimplexReport> {
    let n = validate(vertices)?;
    let vol = scaled_volume(vertices);
    let diameter = vertices
        .iter()
        .flat_map(|a| vertices.iter().map(move |b| a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>()))
        .fold(0.0f64, f64::max)
        .sqrt();
    if !(vol > 1e-12 * diameter.powi(n as i32)) {
        return Err(Error::DegenerateSimplex);
    }
    let touch = touch_points(vertices)?;

    let contact = |i: usize, k: usize| {
        let mut pts = without(vertices, &[i, k]);
        pts.push(touch[i].clone());
        scaled_volume(&pts)
    };
    let mut pairs = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..=n {
        for k in i + 1..=n {
            pairs.push((i, k, contact(i, k), contact(k, i)));
        }
    }
    let largest = pairs.iter().fold(0.0f64, |m, p| m.max(p.2).max(p.3)).max(f64::MIN_POSITIVE);
    let mut naturals = vec![vec![0.0; n + 1]; n + 1];
    let mut pair_failures = 0;
    let mut max_pair_mismatch = 0.0f64;
    for (i, k, a, b) in pairs {
        let mismatch = (a - b).abs() / largest;
        max_pair_mismatch = max_pair_mismatch.max(mismatch);
        if mismatch > PAIR_TOL {
            pair_failures += 2;
        }
        let m = 0.5 * (a + b);
        naturals[i][k] = m;
        naturals[k][i] = m;
    }

    let lhs = vol.powi(2 * (n as i32 - 1));
    // the determinant cancels down to the size of the volume
    let wide: Vec<Vec<TwoFloat>> = naturals.iter().map(|r| r.iter().map(|&x| TwoFloat::from(x)).collect()).collect();
    let rhs = conjecture_rhs(&wide).to_f64();
    Ok(NSimplexReport {
        dim: n,
        lhs,
        rhs,
        residual: (lhs - rhs).abs() / lhs,
        naturals,
        contact_simplices: n * (n + 1),
        pair_failures,
        max_pair_mismatch,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn heron_exact() {
        for (a, b, c) in [(3, 4, 5), (7, 8, 9), (2, 3, 4), (5, 5, 6)] {
            let (a, b, c) = (q(a, 1), q(b, 1), q(c, 1));
            let s = (a.clone() + b.clone() + c.clone()) / q(2, 1);
            let ta = s.clone() - a.clone();
            let tb = s.clone() - b.clone();
            let tc = s.clone() - c.clone();
            let z = q(0, 1);
            // vertex i carries the tangent length ti; entry (i,k) is the remaining one
            let m = vec![
                vec![z.clone(), tc.clone(), tb.clone()],
                vec![tc.clone(), z.clone(), ta.clone()],
                vec![tb, ta, z],
            ];
            let sixteen_area2 = q(2, 1) * (a.clone() * a.clone() * b.clone() * b.clone()
                + b.clone() * b.clone() * c.clone() * c.clone()
                + c.clone() * c.clone() * a.clone() * a.clone())
                - a.clone().pow(4)
                - b.clone().pow(4)
                - c.clone().pow(4);
            assert_eq!(q(4, 1) * conjecture_rhs(&m), sixteen_area2);
        }
    }

    #[test]
    fn right_corner_both_sides_one() {
        let v = vec![vec![0.0, 0.0, 0.0], vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]];
        let r = nsimplex_conjecture_check(&v).unwrap();
        assert!((r.lhs - 1.0).abs() < 1e-12);
        assert!((r.rhs - 1.0).abs() < 1e-12, "{}", r.rhs);
        assert_eq!(r.contact_simplices, 12);
        assert_eq!(r.pair_failures, 0);
    }

    #[test]
    fn four_simplex() {
        let v = vec![
            vec![0.1, -0.3, 0.5, 0.2],
            vec![1.0, 0.2, -0.1, 0.0],
            vec![-0.4, 0.9, 0.3, -0.2],
            vec![0.2, 0.1, 1.1, 0.4],
            vec![-0.3, -0.2, 0.1, 1.3],
        ];
        let r = nsimplex_conjecture_check(&v).unwrap();
        assert_eq!(r.contact_simplices, 20);
        assert!(r.passes(1e-7), "{r:?}");
    }

    #[test]
    fn degenerate_rejected() {
        let v = vec![vec![0.0, 0.0], vec![1.0, 1.0], vec![2.0, 2.0]];
        assert_eq!(nsimplex_conjecture_check(&v), Err(Error::DegenerateSimplex));
        assert!(nsimplex_conjecture_check(&[vec![0.0], vec![1.0]]).is_err());
    }
}
