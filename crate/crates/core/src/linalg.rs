//! Small dense linear algebra: fixed-size vectors as arrays, cofactor
//! determinants generic over [`Scalar`], and a cyclic Jacobi eigensolver for
//! symmetric matrices up to 7×7.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub type Vec2 = [f64; 2];
pub type Vec3 = [f64; 3];
pub type Vec4 = [f64; 4];

pub fn cross<S: Scalar>(a: &[S; 3], b: &[S; 3]) -> [S; 3] {
    [
        a[1].clone() * b[2].clone() - a[2].clone() * b[1].clone(),
        a[2].clone() * b[0].clone() - a[0].clone() * b[2].clone(),
        a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone(),
    ]
}

pub fn dot<S: Scalar, const N: usize>(a: &[S; N], b: &[S; N]) -> S {
    a.iter()
        .zip(b)
        .fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub fn add<S: Scalar, const N: usize>(a: &[S; N], b: &[S; N]) -> [S; N] {
    std::array::from_fn(|i| a[i].clone() + b[i].clone())
}

pub fn sub<S: Scalar, const N: usize>(a: &[S; N], b: &[S; N]) -> [S; N] {
    std::array::from_fn(|i| a[i].clone() - b[i].clone())
}

pub fn scale<S: Scalar, const N: usize>(k: &S, a: &[S; N]) -> [S; N] {
    std::array::from_fn(|i| k.clone() * a[i].clone())
}

pub fn neg<S: Scalar, const N: usize>(a: &[S; N]) -> [S; N] {
    std::array::from_fn(|i| -a[i].clone())
}

pub fn norm2<S: Scalar, const N: usize>(a: &[S; N]) -> S {
    dot(a, a)
}

pub fn norm<const N: usize>(a: &[f64; N]) -> f64 {
    norm2(a).sqrt()
}

/// Scalar triple product `a · (b × c)`.
pub fn triple<S: Scalar>(a: &[S; 3], b: &[S; 3], c: &[S; 3]) -> S {
    dot(a, &cross(b, c))
}

pub fn to_f64_array<S: Scalar, const N: usize>(a: &[S; N]) -> [f64; N] {
    std::array::from_fn(|i| a[i].to_f64())
}

/// Determinant of a square matrix by Laplace expansion along the first row.
pub fn det<S: Scalar>(m: &[Vec<S>]) -> S {
    let n = m.len();
    match n {
        0 => S::one(),
        1 => m[0][0].clone(),
        2 => m[0][0].clone() * m[1][1].clone() - m[0][1].clone() * m[1][0].clone(),
        _ => {
            let mut acc = S::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<S>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(k, _)| *k != j)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let term = m[0][j].clone() * det(&minor);
                acc = if j % 2 == 0 { acc + term } else { acc - term };
            }
            acc
        }
    }
}

fn rows<S: Scalar, const N: usize>(m: &[[S; N]; N]) -> Vec<Vec<S>> {
    m.iter().map(|r| r.to_vec()).collect()
}

pub fn det3<S: Scalar>(m: &[[S; 3]; 3]) -> S {
    det(&rows(m))
}

pub fn det4<S: Scalar>(m: &[[S; 4]; 4]) -> S {
    det(&rows(m))
}

/// Classical adjugate (transposed cofactor matrix).
pub fn adjugate3<S: Scalar>(m: &[[S; 3]; 3]) -> [[S; 3]; 3] {
    let c = |r0: usize, r1: usize, c0: usize, c1: usize| {
        m[r0][c0].clone() * m[r1][c1].clone() - m[r0][c1].clone() * m[r1][c0].clone()
    };
    // adj[i][j] = cofactor[j][i]
    [
        [c(1, 2, 1, 2), -c(0, 2, 1, 2), c(0, 1, 1, 2)],
        [-c(1, 2, 0, 2), c(0, 2, 0, 2), -c(0, 1, 0, 2)],
        [c(1, 2, 0, 1), -c(0, 2, 0, 1), c(0, 1, 0, 1)],
    ]
}

pub fn matmul<S: Scalar, const N: usize, const K: usize, const M: usize>(
    a: &[[S; K]; N],
    b: &[[S; M]; K],
) -> [[S; M]; N] {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| (0..K).fold(S::zero(), |acc, k| acc + a[i][k].clone() * b[k][j].clone()))
    })
}

pub fn transpose<S: Scalar, const N: usize, const M: usize>(a: &[[S; M]; N]) -> [[S; N]; M] {
    std::array::from_fn(|i| std::array::from_fn(|j| a[j][i].clone()))
}

/// Determinant of the matrix of squared distances bordered by a row and a
/// column of ones with a zero corner.
pub fn bordered_det<S: Scalar>(d: &[Vec<S>]) -> S {
    let n = d.len();
    let mut m = vec![vec![S::zero(); n + 1]; n + 1];
    for i in 0..n {
        m[0][i + 1] = S::one();
        m[i + 1][0] = S::one();
        for j in 0..n {
            m[i + 1][j + 1] = d[i][j].clone();
        }
    }
    det(&m)
}

/// Symmetric matrix; symmetry holds by construction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SymMat<const N: usize>([[f64; N]; N]);

impl<const N: usize> SymMat<N> {
    /// Builds the matrix from `f(i, j)` evaluated for `i <= j` only.
    pub fn from_fn(mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut a = [[0.0; N]; N];
        for i in 0..N {
            for j in i..N {
                let v = f(i, j);
                a[i][j] = v;
                a[j][i] = v;
            }
        }
        SymMat(a)
    }

    /// Symmetrizes `m` by averaging it with its transpose.
    pub fn symmetrize(m: &[[f64; N]; N]) -> Self {
        Self::from_fn(|i, j| 0.5 * (m[i][j] + m[j][i]))
    }

    pub fn diag(d: [f64; N]) -> Self {
        Self::from_fn(|i, j| if i == j { d[i] } else { 0.0 })
    }

    pub fn identity() -> Self {
        Self::diag([1.0; N])
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[i][j]
    }

    pub fn as_array(&self) -> &[[f64; N]; N] {
        &self.0
    }

    pub fn frobenius(&self) -> f64 {
        self.0.iter().flatten().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn trace(&self) -> f64 {
        (0..N).map(|i| self.0[i][i]).sum()
    }

    pub fn det(&self) -> f64 {
        det(&rows(&self.0))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|x| x.is_finite())
    }

    pub fn mul_vec(&self, v: &[f64; N]) -> [f64; N] {
        std::array::from_fn(|i| dot(&self.0[i], v))
    }
}

/// Eigen-decomposition `M = U Λ Uᵀ` with eigenvalues in descending order.
#[derive(Clone, Debug)]
pub struct SymEigen<const N: usize> {
    pub values: [f64; N],
    /// Eigenvectors stored as columns: `vectors[i][k]` is component `i` of vector `k`.
    pub vectors: [[f64; N]; N],
}

impl<const N: usize> SymEigen<N> {
    pub fn column(&self, k: usize) -> [f64; N] {
        std::array::from_fn(|i| self.vectors[i][k])
    }

    pub fn reconstruct(&self) -> SymMat<N> {
        SymMat::from_fn(|i, j| {
            (0..N)
                .map(|k| self.vectors[i][k] * self.values[k] * self.vectors[j][k])
                .sum()
        })
    }
}

pub const JACOBI_SWEEPS: usize = 50;

/// Cyclic Jacobi eigensolver.
pub fn sym_eigen<const N: usize>(m: &SymMat<N>) -> Result<SymEigen<N>> {
    if !m.is_finite() {
        return Err(Error::NonFinite("matrix passed to sym_eigen"));
    }
    let mut a = m.0;
    let mut v = SymMat::<N>::identity().0;
    let scale = m.frobenius();
    let mut converged = scale == 0.0;
    for _ in 0..JACOBI_SWEEPS {
        if converged {
            break;
        }
        let off: f64 = (0..N)
            .flat_map(|p| (p + 1..N).map(move |q| (p, q)))
            .map(|(p, q)| a[p][q] * a[p][q])
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * scale {
            converged = true;
            break;
        }
        for p in 0..N {
            for q in p + 1..N {
                if a[p][q] == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let sgn = if theta >= 0.0 { 1.0 } else { -1.0 };
                let t = sgn / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for row in a.iter_mut() {
                    let (akp, akq) = (row[p], row[q]);
                    row[p] = c * akp - s * akq;
                    row[q] = s * akp + c * akq;
                }
                for k in 0..N {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                a[p][q] = 0.0;
                a[q][p] = 0.0;
                for row in v.iter_mut() {
                    let (vkp, vkq) = (row[p], row[q]);
                    row[p] = c * vkp - s * vkq;
                    row[q] = s * vkp + c * vkq;
                }
            }
        }
    }
    if !converged {
        let off: f64 = (0..N)
            .flat_map(|p| (p + 1..N).map(move |q| (p, q)))
            .map(|(p, q)| a[p][q] * a[p][q])
            .sum::<f64>()
            .sqrt();
        if off > 1e-13 * scale {
            return Err(Error::NoConvergence { sweeps: JACOBI_SWEEPS, off_norm: off });
        }
    }
    let mut order: Vec<usize> = (0..N).collect();
    order.sort_by(|&i, &j| a[j][j].total_cmp(&a[i][i]));
    let values = std::array::from_fn(|k| a[order[k]][order[k]]);
    let vectors = std::array::from_fn(|i| std::array::from_fn(|k| v[i][order[k]]));
    Ok(SymEigen { values, vectors })
}

pub const DEFAULT_RANK_TOL: f64 = 1e-10;

/// Number of eigenvalues exceeding `rank_tol` times the largest magnitude.
pub fn numerical_rank<const N: usize>(e: &SymEigen<N>, rank_tol: f64) -> usize {
    let lmax = e.values.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if lmax == 0.0 {
        return 0;
    }
    e.values.iter().filter(|x| x.abs() > rank_tol * lmax).count()
}

/// Moore-Penrose pseudo-inverse via the eigen-decomposition.
pub fn pseudo_inverse<const N: usize>(m: &SymMat<N>, rank_tol: f64) -> Result<SymMat<N>> {
    let e = sym_eigen(m)?;
    let lmax = e.values.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
    let inv: [f64; N] = std::array::from_fn(|k| {
        let l = e.values[k];
        if lmax > 0.0 && l.abs() > rank_tol * lmax {
            1.0 / l
        } else {
            0.0
        }
    });
    Ok(SymMat::from_fn(|i, j| {
        (0..N)
            .map(|k| e.vectors[i][k] * inv[k] * e.vectors[j][k])
            .sum()
    }))
}

/// Solves `A x = b` by Gaussian elimination with partial pivoting.
pub fn solve(a: &[Vec<f64>], b: &[f64]) -> Option<Vec<f64>> {
    let n = b.len();
    let mut m: Vec<Vec<f64>> = a
        .iter()
        .zip(b)
        .map(|(row, &bi)| {
            let mut r = row.clone();
            r.push(bi);
            r
        })
        .collect();
    let scale = a.iter().flatten().fold(0.0f64, |acc, x| acc.max(x.abs()));
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if m[piv][col].abs() <= 1e-300_f64.max(1e-15 * scale) {
            return None;
        }
        m.swap(col, piv);
        for r in 0..n {
            if r != col {
                let factor = m[r][col] / m[col][col];
                for c in col..=n {
                    m[r][c] -= factor * m[col][c];
                }
            }
        }
    }
    Some((0..n).map(|i| m[i][n] / m[i][i]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use rand::{RngExt, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn cross_examples() {
        assert_eq!(cross(&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]), [0.0, 0.0, 1.0]);
        let a = [0.3, -2.0, 5.5];
        assert_eq!(cross(&a, &a), [0.0, 0.0, 0.0]);
        // A=0, B=e1, C=e2, D=e3: AB = e1, CD = e3 - e2
        assert_eq!(cross(&[1.0, 0.0, 0.0], &[0.0, -1.0, 1.0]), [0.0, -1.0, -1.0]);
    }

    #[test]
    fn eigen_of_identity_and_diagonal() {
        let e = sym_eigen(&SymMat::<3>::identity()).unwrap();
        assert_eq!(e.values, [1.0, 1.0, 1.0]);
        let e = sym_eigen(&SymMat::diag([1.0, 3.0, 2.0])).unwrap();
        assert_eq!(e.values, [3.0, 2.0, 1.0]);
        assert_eq!(e.column(0).map(f64::abs), [0.0, 1.0, 0.0]);
    }

    #[test]
    fn eigen_reconstruction_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let m = SymMat::<4>::from_fn(|_, _| rng.random_range(-5.0..5.0));
            let e = sym_eigen(&m).unwrap();
            let r = e.reconstruct();
            let err = SymMat::<4>::from_fn(|i, j| r.get(i, j) - m.get(i, j)).frobenius();
            assert!(err <= 1e-12 * m.frobenius(), "{err}");
            for k in 1..4 {
                assert!(e.values[k - 1] >= e.values[k]);
            }
        }
    }

    #[test]
    fn pseudo_inverse_cases() {
        let p = pseudo_inverse(&SymMat::diag([4.0, 0.0]), DEFAULT_RANK_TOL).unwrap();
        assert_eq!(p, SymMat::diag([0.25, 0.0]));

        let m = SymMat::<3>::from_fn(|i, j| [[4.0, 1.0, 0.5], [1.0, 3.0, 0.2], [0.5, 0.2, 2.0]][i][j]);
        let p = pseudo_inverse(&m, DEFAULT_RANK_TOL).unwrap();
        let adj = adjugate3(m.as_array());
        let d = m.det();
        for i in 0..3 {
            for j in 0..3 {
                assert!((p.get(i, j) - adj[i][j] / d).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn adjugate_identities() {
        let id = [[q(1), q(0), q(0)], [q(0), q(1), q(0)], [q(0), q(0), q(1)]];
        assert_eq!(adjugate3(&id), id);
        let m = [[q(2), q(-3), q(5)], [q(7), q(1), q(-4)], [q(0), q(6), q(9)]];
        let d = det3(&m);
        let prod = matmul(&m, &adjugate3(&m));
        for (i, row) in prod.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                assert_eq!(*x, if i == j { d.clone() } else { q(0) });
            }
        }
        let aa = adjugate3(&adjugate3(&m));
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(aa[i][j], d.clone() * m[i][j].clone());
            }
        }
    }

    #[test]
    fn bordered_three_point() {
        // Equilateral triangle with squared side 12 gives -16 * area^2 = -432.
        let d: Vec<Vec<BigRational>> = vec![
            vec![q(0), q(12), q(12)],
            vec![q(12), q(0), q(12)],
            vec![q(12), q(12), q(0)],
        ];
        assert_eq!(bordered_det(&d), q(-432));
    }

    #[test]
    fn gaussian_solve() {
        let a = vec![vec![2.0, 1.0], vec![1.0, 3.0]];
        let x = solve(&a, &[3.0, 5.0]).unwrap();
        assert!((x[0] - 0.8).abs() < 1e-15 && (x[1] - 1.4).abs() < 1e-15);
        assert!(solve(&[vec![1.0, 2.0], vec![2.0, 4.0]], &[1.0, 2.0]).is_none());
    }
}
