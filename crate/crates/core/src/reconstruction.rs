//! Inverse problems: coordinates from the seven areas, coordinates from
//! squared distances, and the inversion of the quadratic map sending squared
//! distances to squared areas.

use crate::areal::{self, gramian, tau_table, vertex_gram, xi_linear};
use crate::error::{Error, Result};
use crate::linalg::{cross, det, scale, sym_eigen, SymMat, Vec3};
use crate::scalar::Scalar;
use crate::tetra::{FacialAreas, SquaredDistances, Tetrahedron, EDGES, OPPOSITE_EDGE};

/// Relative tolerance on Yetter's identity for input areas: `|Ξ| ≤ tol · ΣF`.
pub const XI_INPUT_TOL: f64 = 1e-8;

#[derive(Clone, Debug)]
pub struct ReconstructionResult {
    pub vertices: Tetrahedron,
    pub achieved_f: FacialAreas,
    /// Largest deviation of `achieved_f` from the request, relative to `max f`.
    pub residual: f64,
    /// Sign of `AB · (AC × AD)` of the output. Areas do not determine it; the
    /// construction always produces the same handedness.
    pub chirality: i8,
}

fn check_yetter(sq: &[f64; 7]) -> Result<()> {
    let xi = xi_linear(sq);
    let tol = XI_INPUT_TOL * sq.iter().map(|x| x.abs()).sum::<f64>();
    if !(xi.abs() <= tol) {
        return Err(Error::YetterViolated { xi, tol });
    }
    Ok(())
}

/// Builds a tetrahedron with the requested facial areas, unique up to isometry.
pub fn reconstruct_from_areas(f: &FacialAreas) -> Result<ReconstructionResult> {
    if f.f.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite("facial areas"));
    }
    let sq = f.squared();
    check_yetter(&sq).map_err(|e| Error::InvalidAreas(e.to_string()))?;
    let s = f.s();
    let min_tau = tau_table(f).min_deviation();
    if min_tau < -areal::TOL_TAU * s {
        return Err(Error::InvalidAreas(format!("tetrahedron inequality violated (min deviation {min_tau:e})")));
    }
    let g = SymMat::symmetrize(&vertex_gram(&sq, 0));
    let gamma = gramian(&sq, 0);
    let eig = sym_eigen(&g)?;
    if !(gamma > 0.0) || !(eig.values[2] > 0.0) {
        return Err(Error::InvalidAreas(format!("Gramian is not positive (Gamma = {gamma:e})")));
    }
    // V = Λ^{1/2} Uᵀ, so VᵀV = G_A; columns are AB×AC, AD×AB, AC×AD.
    let mut v: [[f64; 3]; 3] =
        std::array::from_fn(|i| std::array::from_fn(|j| eig.values[i].sqrt() * eig.vectors[j][i]));
    // genuine vectors satisfy det[p, q, r] = −t²
    if crate::linalg::det3(&v) > 0.0 {
        v = v.map(|row| row.map(|x| -x));
    }
    let col = |k: usize| -> Vec3 { std::array::from_fn(|i| v[i][k]) };
    let (p, q, r) = (col(0), col(1), col(2));
    let t = gamma.sqrt().sqrt();
    let initial = Tetrahedron::new(
        [0.0; 3],
        scale(&(1.0 / t), &cross(&p, &q)),
        scale(&(1.0 / t), &cross(&r, &p)),
        scale(&(1.0 / t), &cross(&q, &r)),
    );
    let vertices = polish(initial, &sq);
    let achieved_f = vertices.facial_areas();
    let residual = f.max_relative_deviation(&achieved_f);
    let chirality = vertices.orientation();
    Ok(ReconstructionResult { vertices, achieved_f, residual, chirality })
}

/// Gauss-Newton steps on `d` toward `p_branch(d) = sq`. The closed forms lose
/// accuracy as the volume shrinks because they pass through a heavily
/// cancelling determinant; a few steps recover it.
pub fn refine_distances(start: &SquaredDistances, sq: &[f64; 7], branch: Branch) -> SquaredDistances {
    let sign = branch.sign() as f64;
    let misfit = |d: &SquaredDistances| {
        let p = area_polynomial_map(d, branch);
        std::array::from_fn::<f64, 7, _>(|k| p[k] - sq[k])
    };
    let size = |r: &[f64; 7]| r.iter().map(|x| x * x).sum::<f64>();
    let mut d = start.clone();
    let mut r = misfit(&d);
    for _ in 0..4 {
        let j = area_map_jacobian(&d).j.map(|row| row.map(|x| sign * x));
        let jtj: Vec<Vec<f64>> =
            (0..6).map(|a| (0..6).map(|b| (0..7).map(|k| j[k][a] * j[k][b]).sum()).collect()).collect();
        let jtr: Vec<f64> = (0..6).map(|a| (0..7).map(|k| j[k][a] * r[k]).sum()).collect();
        let Some(step) = crate::linalg::solve(&jtj, &jtr) else { break };
        let next = SquaredDistances::new(std::array::from_fn(|e| d.d[e] - step[e]));
        let r_next = misfit(&next);
        if !(size(&r_next) < size(&r)) {
            break;
        }
        d = next;
        r = r_next;
    }
    d
}

fn polish(start: Tetrahedron, sq: &[f64; 7]) -> Tetrahedron {
    let d = refine_distances(&start.squared_distances(), sq, Branch::Plus);
    match coords_from_distances(&d, 3) {
        Ok(out) if out.orientation() == start.orientation() => out,
        Ok(out) => out.map_vertices(|v| [v[0], v[1], -v[2]]),
        Err(_) => start,
    }
}

/// Embeds four points with the given squared distances in `dim` dimensions
/// (padded with zeros to 3-D), with `A` at the origin.
pub fn coords_from_distances(d: &SquaredDistances, dim: usize) -> Result<Tetrahedron> {
    if !(1..=3).contains(&dim) {
        return Err(Error::InvalidArgument(format!("dimension {dim} not in 1..=3")));
    }
    if d.d.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite("squared distances"));
    }
    let g = SymMat::<3>::from_fn(|i, j| 0.5 * (d.get(0, i + 1) + d.get(0, j + 1) - d.get(i + 1, j + 1)));
    let eig = sym_eigen(&g)?;
    let lmax = eig.values[0].abs().max(eig.values[2].abs());
    let tol = 1e-9 * lmax;
    if eig.values[2] < -tol {
        return Err(Error::NotRealizable {
            dim,
            reason: format!("negative Gram eigenvalue {:e}", eig.values[2]),
        });
    }
    if dim < 3 && eig.values[dim] > tol {
        return Err(Error::NotRealizable {
            dim,
            reason: format!("Gram eigenvalue {:e} exceeds tolerance", eig.values[dim]),
        });
    }
    let mut vertices = [[0.0; 3]; 4];
    for (k, vert) in vertices.iter_mut().skip(1).enumerate() {
        for j in 0..dim {
            vert[j] = eig.values[j].max(0.0).sqrt() * eig.vectors[k][j];
        }
    }
    Ok(Tetrahedron { vertices })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> i64 {
        match self {
            Branch::Plus => 1,
            Branch::Minus => -1,
        }
    }
}

/// `p±(d)`: the seven distance determinants (squared areas), negated for `Minus`.
pub fn area_polynomial_map<S: Scalar>(d: &SquaredDistances<S>, branch: Branch) -> [S; 7] {
    let sq = areal::cm_determinants(d).squared_areas();
    match branch {
        Branch::Plus => sq,
        Branch::Minus => sq.map(|x| -x),
    }
}

/// Symmetric 6×6 matrices `Q_i` with `p₊(d)_i = dᵀ Q_i d`.
pub fn area_map_quadrics<S: Scalar>() -> [[[S; 6]; 6]; 7] {
    let quarter = || S::one() / S::from_i64(4);
    let mut out: [[[S; 6]; 6]; 7] = std::array::from_fn(|_| std::array::from_fn(|_| std::array::from_fn(|_| S::zero())));
    for (k, tri) in crate::tetra::FACES.iter().enumerate() {
        let edges = [(0, 1), (0, 2), (1, 2)].map(|(i, j)| crate::tetra::edge_index(tri[i], tri[j]));
        for &a in &edges {
            for &b in &edges {
                out[k][a][b] = if a == b { -quarter() } else { quarter() };
            }
        }
    }
    for e in 0..3 {
        let o = OPPOSITE_EDGE[e];
        let (a, b) = EDGES[e];
        let (c, dd) = EDGES[o];
        // v = indicator of D_ad + D_bc − D_ac − D_bd
        let mut v: [i64; 6] = [0; 6];
        v[crate::tetra::edge_index(a, dd)] += 1;
        v[crate::tetra::edge_index(b, c)] += 1;
        v[crate::tetra::edge_index(a, c)] -= 1;
        v[crate::tetra::edge_index(b, dd)] -= 1;
        let q = &mut out[4 + e];
        for i in 0..6 {
            for j in 0..6 {
                q[i][j] = -quarter() * S::from_i64(v[i] * v[j]);
            }
        }
        let half = S::one() / S::from_i64(2);
        q[e][o] = q[e][o].clone() + half.clone();
        q[o][e] = q[o][e].clone() + half;
    }
    out
}

#[derive(Clone, Debug)]
pub struct AreaMapJacobian<S = f64> {
    /// Rows are gradients of the seven components of `p₊`.
    pub j: [[S; 6]; 7],
    pub det_jtj: S,
}

impl<S: Scalar> AreaMapJacobian<S> {
    /// `Jᵀ n` with `n = (1,1,1,1,−1,−1,−1)`; identically zero.
    pub fn left_null_residual(&self) -> [S; 6] {
        std::array::from_fn(|c| {
            (0..7).fold(S::zero(), |acc, r| {
                if r < 4 {
                    acc + self.j[r][c].clone()
                } else {
                    acc - self.j[r][c].clone()
                }
            })
        })
    }
}

/// Analytic Jacobian of `p₊` (negate for `p₋`; `det(JᵀJ)` is unchanged).
pub fn area_map_jacobian<S: Scalar>(d: &SquaredDistances<S>) -> AreaMapJacobian<S> {
    let qs = area_map_quadrics::<S>();
    let two = S::from_i64(2);
    let j: [[S; 6]; 7] = std::array::from_fn(|r| {
        std::array::from_fn(|c| {
            two.clone() * (0..6).fold(S::zero(), |acc, k| acc + qs[r][c][k].clone() * d.d[k].clone())
        })
    });
    let jtj: Vec<Vec<S>> = (0..6)
        .map(|a| {
            (0..6)
                .map(|b| (0..7).fold(S::zero(), |acc, r| acc + j[r][a].clone() * j[r][b].clone()))
                .collect()
        })
        .collect();
    AreaMapJacobian { j, det_jtj: det(&jtj) }
}

#[derive(Clone, Debug)]
pub struct AreaMapWitness {
    pub d_star: SquaredDistances,
    pub branch: Branch,
    pub delta_star: f64,
    /// Largest deviation of `p_branch(d_star)` from the input, relative to `max |F|`.
    pub residual: f64,
}

/// Area-space analogue of the six 3-point determinants: for edge `ab`,
/// `Δ_f[a,b]` built from `F_abc, F_abd, F_ab|cd` as if they were squared distances.
pub fn area_space_minors<S: Scalar>(sq: &[S; 7]) -> [S; 6] {
    std::array::from_fn(|e| {
        let (x, y, z) = areal::edge_triple(sq, e);
        let two = S::from_i64(2);
        (two.clone() * x.clone() * y.clone() + two.clone() * x.clone() * z.clone() + two * y.clone() * z.clone()
            - x.sq()
            - y.sq()
            - z.sq())
            / S::from_i64(4)
    })
}

/// Closed-form preimage `d*` of squared areas `F` under `p₊` or `p₋`.
pub fn invert_area_map(sq: &[f64; 7]) -> Result<AreaMapWitness> {
    if sq.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite("squared areas"));
    }
    check_yetter(sq)?;
    let gamma = gramian(sq, 0);
    let scale = sq.iter().map(|x| x.abs()).sum::<f64>();
    if !(gamma.abs() > 1e-14 * scale.powi(3)) {
        return Err(Error::DegenerateGramian);
    }
    let minors = area_space_minors(sq);
    let delta1 = areal::four_point(&SquaredDistances::new(minors));
    if !(delta1 > 0.0) {
        return Err(Error::DegenerateGramian);
    }
    let delta_star = 1.0 / delta1.sqrt().sqrt();
    let branch = if gamma > 0.0 { Branch::Plus } else { Branch::Minus };
    let d_star = refine_distances(&SquaredDistances::new(minors.map(|m| delta_star * m)), sq, branch);
    let back = area_polynomial_map(&d_star, branch);
    let mag = sq.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let residual = back.iter().zip(sq).map(|(a, b)| (a - b).abs() / mag).fold(0.0, f64::max);
    Ok(AreaMapWitness { d_star, branch, delta_star, residual })
}
