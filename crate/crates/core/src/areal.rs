//! Algebra on the seven facial areas: the deviations Τ, Yetter's Ξ, the areal
//! Gram matrices with their Gramians and minors, and the distance determinants
//! that express squared areas through squared edge lengths.
//!
//! Everything polynomial is generic over [`Scalar`], so the same code is
//! exercised in floating point and in exact arithmetic.

use crate::linalg::{self, bordered_det, det, det3, sym_eigen, SymMat};
use crate::scalar::Scalar;
use crate::tetra::{faces_of_edge, FacialAreas, SquaredDistances, EDGES, INTERIOR_OF_EDGE};

/// `Τ₀..Τ₃` for each edge in canonical order.
#[derive(Clone, Debug, PartialEq)]
pub struct TauTable<S = f64> {
    pub tau: [[S; 4]; 6],
}

impl<S: Scalar> TauTable<S> {
    /// The 18 deviations `Τ₁, Τ₂, Τ₃` of the tetrahedron inequalities.
    pub fn deviations(&self) -> impl Iterator<Item = &S> {
        self.tau.iter().flat_map(|t| t[1..].iter())
    }
}

impl TauTable<f64> {
    pub fn min_deviation(&self) -> f64 {
        self.deviations().copied().fold(f64::INFINITY, f64::min)
    }
}

/// The three areas entering the inequalities for edge `e`: `(f_abc, f_abd, f_ab|cd)`.
pub fn edge_triple<S: Scalar>(v: &[S; 7], e: usize) -> (S, S, S) {
    let (p, q) = faces_of_edge(e);
    (v[p].clone(), v[q].clone(), v[INTERIOR_OF_EDGE[e]].clone())
}

pub fn tau_table<S: Scalar>(f: &FacialAreas<S>) -> TauTable<S> {
    TauTable {
        tau: std::array::from_fn(|e| {
            let (abc, abd, int) = edge_triple(&f.f, e);
            [
                abc.clone() + abd.clone() + int.clone(),
                abc.clone() + abd.clone() - int.clone(),
                int.clone() + abd.clone() - abc.clone(),
                int + abc - abd,
            ]
        }),
    }
}

/// `Ξ(f) = f₁² + f₂² + f₃² + f₄² − f₅² − f₆² − f₇²`.
pub fn yetter_xi<S: Scalar>(f: &FacialAreas<S>) -> S {
    xi_linear(&f.squared())
}

/// The linear form of Ξ in the squared areas.
pub fn xi_linear<S: Scalar>(sq: &[S; 7]) -> S {
    sq[0].clone() + sq[1].clone() + sq[2].clone() + sq[3].clone() - sq[4].clone() - sq[5].clone() - sq[6].clone()
}

/// Interior face index shared by exterior faces `i != j`.
fn shared_interior(i: usize, j: usize) -> usize {
    let common: Vec<usize> = crate::tetra::FACES[i]
        .iter()
        .copied()
        .filter(|v| crate::tetra::FACES[j].contains(v))
        .collect();
    INTERIOR_OF_EDGE[crate::tetra::edge_index(common[0], common[1])]
}

/// Gram matrix of the signed exterior areal vectors
/// `v₁ = AB×AC, v₂ = −AB×AD, v₃ = AC×AD, v₄ = −BC×BD`, written in the squared
/// areas. Every vertex Gram matrix is a principal 3×3 submatrix of it.
pub fn g_ext<S: Scalar>(sq: &[S; 7]) -> [[S; 4]; 4] {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            if i == j {
                sq[i].clone()
            } else {
                (sq[shared_interior(i, j)].clone() - sq[i].clone() - sq[j].clone()).half()
            }
        })
    })
}

/// Exterior faces meeting at each vertex, as rows of [`g_ext`].
pub const VERTEX_FACES: [[usize; 3]; 4] = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];

/// Areal Gram matrix at vertex `v` (0 = A, ..., 3 = D).
pub fn vertex_gram<S: Scalar>(sq: &[S; 7], v: usize) -> [[S; 3]; 3] {
    let g = g_ext(sq);
    let idx = VERTEX_FACES[v];
    std::array::from_fn(|i| std::array::from_fn(|j| g[idx[i]][idx[j]].clone()))
}

/// Gramian `Γ_F[v] = det G_F[v]`.
pub fn gramian<S: Scalar>(sq: &[S; 7], v: usize) -> S {
    det3(&vertex_gram(sq, v))
}

/// Gram matrix of the interior areal vectors `AB×CD, AC×BD, AD×BC`.
pub fn g_int<S: Scalar>(sq: &[S; 7]) -> [[S; 3]; 3] {
    let [f1, f2, f3, f4, f5, f6, f7] = sq.clone();
    let a = (f2.clone() + f3.clone() - f1.clone() - f4.clone()).half();
    let b = (f2.clone() + f4.clone() - f1.clone() - f3.clone()).half();
    let c = (f1 + f2 - f3 - f4).half();
    [[f5, a.clone(), b.clone()], [a, f6, c.clone()], [b, c, f7]]
}

/// 2×2 principal minor of [`g_ext`] for the two exterior faces on edge `e`.
pub fn gram_minor<S: Scalar>(sq: &[S; 7], e: usize) -> S {
    let g = g_ext(sq);
    let (p, q) = faces_of_edge(e);
    g[p][p].clone() * g[q][q].clone() - g[p][q].sq()
}

/// `gram_minor − ¼ Τ₀Τ₁Τ₂Τ₃` for each edge; identically zero.
pub fn minor_factorization_check<S: Scalar>(f: &FacialAreas<S>) -> [S; 6] {
    let sq = f.squared();
    let tau = tau_table(f);
    std::array::from_fn(|e| {
        let [t0, t1, t2, t3] = tau.tau[e].clone();
        gram_minor(&sq, e) - (t0 * t1 * t2 * t3) / S::from_i64(4)
    })
}

#[derive(Clone, Debug)]
pub struct ArealGram {
    /// `G_A, G_B, G_C, G_D`.
    pub vertex: [SymMat<3>; 4],
    pub ext: SymMat<4>,
    pub int: SymMat<3>,
    /// `Γ = det G_A`.
    pub gamma: f64,
    pub gramians: [f64; 4],
    pub xi: f64,
}

pub fn areal_gram(f: &FacialAreas) -> ArealGram {
    let sq = f.squared();
    let ext = g_ext(&sq);
    let int = g_int(&sq);
    let vertex = std::array::from_fn(|v| SymMat::symmetrize(&vertex_gram(&sq, v)));
    let gramians = std::array::from_fn(|v| gramian(&sq, v));
    ArealGram {
        vertex,
        ext: SymMat::symmetrize(&ext),
        int: SymMat::symmetrize(&int),
        gamma: gramians[0],
        gramians,
        xi: xi_linear(&sq),
    }
}

/// All distance determinants of a labeled quadruple.
#[derive(Clone, Debug, PartialEq)]
pub struct CmDeterminants<S = f64> {
    /// `Δ[A,B,C], Δ[A,B,D], Δ[A,C,D], Δ[B,C,D]` (each `4·area²`).
    pub three_point: [S; 4],
    /// Talata determinants `Δ[A,B|C,D], Δ[A,C|B,D], Δ[A,D|B,C]` (each `16·area²`).
    pub talata: [S; 3],
    /// `Δ[A,B,C,D]` (equal to `t²` for Euclidean input).
    pub four_point: S,
    /// `Δ[a,b] = D_ab` in edge order.
    pub two_point: [S; 6],
    /// Non-symmetric `Δ[A,B;C,D], Δ[A,C;B,D], Δ[A,D;B,C]`, i.e. the dot
    /// products of opposite edge vectors.
    pub two_point_asym: [S; 3],
}

impl<S: Scalar> CmDeterminants<S> {
    /// The seven squared areas in face order.
    pub fn squared_areas(&self) -> [S; 7] {
        let [a, b, c, d] = self.three_point.clone();
        let [e, f, g] = self.talata.clone();
        [a, b, c, d, e, f, g]
    }
}

/// `Δ[a,b;c,d] = ½ det [[0,1,1],[1,D_ac,D_ad],[1,D_bc,D_bd]]`.
pub fn two_point_asym<S: Scalar>(d: &SquaredDistances<S>, a: usize, b: usize, c: usize, e: usize) -> S {
    let m = vec![
        vec![S::zero(), S::one(), S::one()],
        vec![S::one(), d.get(a, c), d.get(a, e)],
        vec![S::one(), d.get(b, c), d.get(b, e)],
    ];
    det(&m).half()
}

/// `Δ[a,b,c] = −¼ det(bordered)`.
pub fn three_point<S: Scalar>(d: &SquaredDistances<S>, tri: [usize; 3]) -> S {
    let m: Vec<Vec<S>> = tri.iter().map(|&i| tri.iter().map(|&j| d.get(i, j)).collect()).collect();
    -bordered_det(&m) / S::from_i64(4)
}

/// `Δ[a,b|c,d] = D_ab D_cd − Δ[a,b;c,d]²`.
pub fn talata<S: Scalar>(d: &SquaredDistances<S>, a: usize, b: usize, c: usize, e: usize) -> S {
    d.get(a, b) * d.get(c, e) - two_point_asym(d, a, b, c, e).sq()
}

/// `Δ[A,B,C,D] = det(bordered) / 8`.
pub fn four_point<S: Scalar>(d: &SquaredDistances<S>) -> S {
    bordered_det(&d.matrix()) / S::from_i64(8)
}

pub fn cm_determinants<S: Scalar>(d: &SquaredDistances<S>) -> CmDeterminants<S> {
    CmDeterminants {
        three_point: crate::tetra::FACES.map(|tri| three_point(d, tri)),
        talata: [talata(d, 0, 1, 2, 3), talata(d, 0, 2, 1, 3), talata(d, 0, 3, 1, 2)],
        four_point: four_point(d),
        two_point: EDGES.map(|(a, b)| d.get(a, b)),
        two_point_asym: [
            two_point_asym(d, 0, 1, 2, 3),
            two_point_asym(d, 0, 2, 1, 3),
            two_point_asym(d, 0, 3, 1, 2),
        ],
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InvalidReason {
    YetterViolated,
    TetrahedronInequality,
    NegativeGramian,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Validity {
    NonDegenerate3D,
    Rank2Degenerate,
    Rank1Planar,
    Invalid(InvalidReason),
}

impl Validity {
    pub fn name(&self) -> &'static str {
        match self {
            Validity::NonDegenerate3D => "NonDegenerate3D",
            Validity::Rank2Degenerate => "Rank2Degenerate",
            Validity::Rank1Planar => "Rank1Planar",
            Validity::Invalid(_) => "Invalid",
        }
    }
}

pub const TOL_XI: f64 = 1e-9;
pub const TOL_TAU: f64 = 1e-9;

/// Full validity report behind [`euclidean_area_validity`].
#[derive(Clone, Debug)]
pub struct ValidityReport {
    pub validity: Validity,
    pub xi: f64,
    pub min_tau: f64,
    pub gamma: f64,
    pub eigenvalues: [f64; 3],
    pub rank: usize,
}

pub fn validity_report(f: &FacialAreas) -> ValidityReport {
    let s = f.s();
    let xi = yetter_xi(f);
    let min_tau = tau_table(f).min_deviation();
    let gram = areal_gram(f);
    let (eigenvalues, rank) = match sym_eigen(&gram.vertex[0]) {
        Ok(e) => {
            let lmax = e.values[0].abs().max(e.values[2].abs());
            let tol = linalg::DEFAULT_RANK_TOL * lmax;
            (e.values, e.values.iter().filter(|l| **l > tol).count())
        }
        Err(_) => ([f64::NAN; 3], 0),
    };
    let lmax = eigenvalues[0].abs().max(eigenvalues[2].abs());
    let validity = if !(xi.abs() <= TOL_XI * s * s) {
        Validity::Invalid(InvalidReason::YetterViolated)
    } else if !(min_tau >= -TOL_TAU * s) {
        Validity::Invalid(InvalidReason::TetrahedronInequality)
    } else if !(eigenvalues[2] >= -linalg::DEFAULT_RANK_TOL * lmax) {
        Validity::Invalid(InvalidReason::NegativeGramian)
    } else {
        match rank {
            3 => Validity::NonDegenerate3D,
            2 => Validity::Rank2Degenerate,
            _ => Validity::Rank1Planar,
        }
    };
    ValidityReport { validity, xi, min_tau, gamma: gram.gamma, eigenvalues, rank }
}

pub fn euclidean_area_validity(f: &FacialAreas) -> Validity {
    validity_report(f).validity
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tetra::Tetrahedron;
    use num_rational::BigRational;

    fn invalid_f() -> FacialAreas {
        FacialAreas::new([9.0, 10.0, 17.0, 14.0, 261f64.sqrt(), 76f64.sqrt(), 329f64.sqrt()])
    }

    #[test]
    fn tau_examples() {
        let t = tau_table(&Tetrahedron::right_corner().facial_areas());
        let r2 = 2f64.sqrt();
        assert!((t.tau[0][0] - (2.0 + r2)).abs() < 1e-15);
        assert!((t.tau[0][1] - (2.0 - r2)).abs() < 1e-15);
        let sq = tau_table(&Tetrahedron::unit_square().facial_areas());
        assert_eq!(sq.tau[1][1], 0.0);
        for row in &t.tau {
            assert!((row[0] - row[1] - row[2] - row[3]).abs() < 1e-15);
        }
    }

    #[test]
    fn yetter_examples() {
        assert!(yetter_xi(&invalid_f()).abs() < 1e-12);
        assert!(yetter_xi(&Tetrahedron::right_corner().facial_areas()).abs() < 1e-14);
        assert_eq!(yetter_xi(&FacialAreas::new([0.0; 7])), 0.0);
    }

    #[test]
    fn gramian_examples() {
        let g = areal_gram(&invalid_f());
        assert!(g.gamma < 0.0);
        let g = areal_gram(&Tetrahedron::right_corner().facial_areas());
        assert!((g.gamma - 1.0).abs() < 1e-13);
        let g = areal_gram(&Tetrahedron::unit_square().facial_areas());
        assert_eq!(g.gamma, 0.0);
    }

    #[test]
    fn gram_matches_coordinates() {
        let t = Tetrahedron::new([0.3, -0.1, 0.2], [1.1, 0.4, -0.2], [-0.5, 0.9, 0.1], [0.2, 0.3, 1.3]);
        let v = t.areal_vectors();
        let signed = [v[0], linalg::neg(&v[1]), v[2], linalg::neg(&v[3])];
        let g = g_ext(&t.squared_areas());
        for i in 0..4 {
            for j in 0..4 {
                assert!((g[i][j] - linalg::dot(&signed[i], &signed[j])).abs() < 1e-12);
            }
        }
        let gi = g_int(&t.squared_areas());
        let iv = [v[4], v[5], v[6]];
        for i in 0..3 {
            for j in 0..3 {
                assert!((gi[i][j] - linalg::dot(&iv[i], &iv[j])).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn four_point_determinant_value() {
        let q = |n: i64| BigRational::from_integer(n.into());
        let d = SquaredDistances::new([q(12), q(12), q(4), q(12), q(4), q(3)]);
        let cm = cm_determinants(&d);
        assert_eq!(cm.four_point, q(-39));
        assert_eq!(cm.three_point[0], q(108));
    }

    #[test]
    fn validity_examples() {
        assert_eq!(
            euclidean_area_validity(&invalid_f()),
            Validity::Invalid(InvalidReason::NegativeGramian)
        );
        assert_eq!(
            euclidean_area_validity(&Tetrahedron::right_corner().facial_areas()),
            Validity::NonDegenerate3D
        );
        assert_eq!(
            euclidean_area_validity(&Tetrahedron::unit_square().facial_areas()),
            Validity::Rank1Planar
        );
    }
}
