//! The zero-volume regime: squeeze limits, rank stratification, the
//! correspondence with Plücker coordinates on the Klein quadric, and the
//! collinear quadruples whose squared gaps are the complementary products.

use crate::areal::{g_ext, vertex_gram};
use crate::error::{Error, Result};
use crate::linalg::{self, dot, norm, scale, sub, sym_eigen, SymMat, Vec3, Vec4};
use crate::natural::{
    areas_from_natural, hats, inverse_from_areas, inverse_from_natural, natural_from_areas, omega,
    omega_tolerance, ptolemy_factors, InverseParams, NaturalParams,
};
use crate::tetra::{FacialAreas, Tetrahedron, EDGES};

/// Removes the component along the unit `axis` from every areal vector: the
/// facial areas of the limit of `Diag(σ⁻¹, σ⁻¹, σ)` (in a frame whose third
/// axis is `axis`) as `σ → ∞`.
pub fn squeeze_limit(t: &Tetrahedron, axis: &Vec3) -> Result<FacialAreas> {
    if t.is_degenerate() {
        return Err(Error::DegenerateInput);
    }
    let a = unit(axis)?;
    let f = t.areal_vectors().map(|v| norm(&sub(&v, &scale(&dot(&v, &a), &a))));
    Ok(FacialAreas::new(f))
}

/// Facial areas after applying `σ⁻¹(I − aaᵀ) + σaaᵀ` to the vertices.
pub fn squeeze_finite(t: &Tetrahedron, axis: &Vec3, sigma: f64) -> Result<FacialAreas> {
    let a = unit(axis)?;
    let moved = t.map_vertices(|p| {
        let along = dot(p, &a);
        std::array::from_fn(|i| (p[i] - along * a[i]) / sigma + sigma * along * a[i])
    });
    Ok(moved.facial_areas())
}

fn unit(axis: &Vec3) -> Result<Vec3> {
    let n = norm(axis);
    if !(n > 0.0) || !n.is_finite() {
        return Err(Error::InvalidArgument("squeeze axis must be a non-zero finite vector".into()));
    }
    Ok(scale(&(1.0 / n), axis))
}

/// Relative tolerance for a complementary product `n ñ` to count as zero (× s²).
pub const COMPLEMENTARY_TOL: f64 = 1e-8;

/// Position of a configuration in the lattice of zero strata.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeNode {
    /// Whether `Ω` vanishes within tolerance.
    pub degenerate: bool,
    /// Rank of the areal Gram matrix `G_A`.
    pub rank: usize,
    /// Which of `uũ, vṽ, ww̃, xx̃, yỹ, zz̃` vanish.
    pub vanishing: [bool; 6],
    /// Whether the pattern agrees with the rank (rank 1 iff all six vanish).
    pub consistent: bool,
}

impl LatticeNode {
    pub fn vanishing_count(&self) -> usize {
        self.vanishing.iter().filter(|b| **b).count()
    }
}

pub fn rank_and_lattice(f: &FacialAreas) -> Result<LatticeNode> {
    let n = natural_from_areas(f);
    let inv = inverse_from_areas(f);
    lattice_from_parts(f, &n, &inv)
}

pub fn rank_and_lattice_natural(n: &NaturalParams) -> Result<LatticeNode> {
    let f = areas_from_natural(n)?;
    let inv = inverse_from_natural(n);
    lattice_from_parts(&f, n, &inv)
}

fn lattice_from_parts(f: &FacialAreas, n: &NaturalParams, inv: &InverseParams) -> Result<LatticeNode> {
    let s = f.s();
    let degenerate = omega(n).abs() <= omega_tolerance(n);
    let g = SymMat::symmetrize(&vertex_gram(&f.squared(), 0));
    let e = sym_eigen(&g)?;
    let rank = linalg::numerical_rank(&e, linalg::DEFAULT_RANK_TOL);
    let vanishing = std::array::from_fn(|k| (n.0[k] * inv.0[k]).abs() <= COMPLEMENTARY_TOL * s * s);
    let all = vanishing.iter().all(|b| *b);
    let consistent = (rank <= 1) == all;
    Ok(LatticeNode { degenerate, rank, vanishing, consistent })
}

/// Two orthogonal 4-vectors of equal squared norm `s/2`, indexed by vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct MNPair {
    pub m: Vec4,
    pub n: Vec4,
    /// Set when the input had rank 1, so that the factorization has a single column.
    pub rank_one: bool,
}

impl MNPair {
    /// Worst of `|m·n|`, `|‖m‖² − s/2|`, `|‖n‖² − s/2|`, relative to `s`.
    pub fn invariant_residual(&self, s: f64) -> f64 {
        let a = dot(&self.m, &self.n).abs();
        let b = (norm2(&self.m) - s / 2.0).abs();
        let c = (norm2(&self.n) - s / 2.0).abs();
        a.max(b).max(c) / s.abs().max(f64::MIN_POSITIVE)
    }
}

fn norm2(v: &Vec4) -> f64 {
    dot(v, v)
}

/// Principal square root of `re + i·im`: non-negative real part, and
/// non-negative imaginary part when the real part is zero.
pub fn complex_sqrt(re: f64, im: f64) -> (f64, f64) {
    let r = re.hypot(im);
    let a = ((r + re) / 2.0).max(0.0).sqrt();
    let b = ((r - re) / 2.0).max(0.0).sqrt();
    let b = if im < 0.0 { -b } else { b };
    if a == 0.0 {
        (0.0, b.abs())
    } else {
        (a, b)
    }
}

/// Factors the exterior Gram matrix as `WWᵀ` with two columns, reads each row
/// as a complex number and takes square roots.
pub fn mn_from_degenerate(f: &FacialAreas) -> Result<MNPair> {
    let g = SymMat::symmetrize(&g_ext(&f.squared()));
    let e = sym_eigen(&g)?;
    let rank = linalg::numerical_rank(&e, 1e-8);
    if rank > 2 {
        return Err(Error::WrongRank { expected: 2, found: rank });
    }
    let w = |i: usize, k: usize| e.values[k].max(0.0).sqrt() * e.vectors[i][k];
    let mut m = [0.0; 4];
    let mut n = [0.0; 4];
    for row in 0..4 {
        let im = if rank == 2 { w(row, 1) } else { 0.0 };
        let (a, b) = complex_sqrt(w(row, 0), im);
        // rows are the faces ABC, ABD, ACD, BCD: opposite D, C, B, A
        let vertex = 3 - row;
        m[vertex] = a;
        n[vertex] = b;
    }
    Ok(MNPair { m, n, rank_one: rank < 2 })
}

/// Plücker coordinates `(p_AB, p_AC, p_AD, p_BC, p_BD, p_CD)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PluckerVector(pub [f64; 6]);

impl PluckerVector {
    /// `p_AB p_CD − p_AC p_BD + p_AD p_BC`.
    pub fn identity_value(&self) -> f64 {
        let p = &self.0;
        p[0] * p[5] - p[1] * p[4] + p[2] * p[3]
    }

    /// The Plücker identity relative to `‖p‖²`.
    pub fn identity_residual(&self) -> f64 {
        let n2: f64 = self.0.iter().map(|x| x * x).sum();
        if n2 == 0.0 {
            return 0.0;
        }
        self.identity_value().abs() / n2
    }

    pub fn norm2(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum()
    }
}

pub fn plucker_from_mn(mn: &MNPair) -> PluckerVector {
    PluckerVector(EDGES.map(|(a, b)| mn.m[a] * mn.n[b] - mn.m[b] * mn.n[a]))
}

/// `q_ab = m_a m_b + n_a n_b`.
pub fn inner_from_mn(mn: &MNPair) -> [f64; 6] {
    EDGES.map(|(a, b)| mn.m[a] * mn.m[b] + mn.n[a] * mn.n[b])
}

/// Natural parameters from Plücker coordinates: the parameter of edge `e` is
/// `2 p²/s` of the opposite edge (`u = 2p_CD²/s`, ..., `z = 2p_AB²/s`).
pub fn natural_from_plucker(p: &PluckerVector, s: f64) -> NaturalParams {
    NaturalParams(std::array::from_fn(|e| 2.0 * p.0[5 - e].powi(2) / s))
}

/// Inverse natural parameters from the inner products `q`, same keying.
pub fn inverse_from_inner(q: &[f64; 6], s: f64) -> InverseParams {
    InverseParams(std::array::from_fn(|e| 2.0 * q[5 - e].powi(2) / s))
}

/// Signed sums `Σ_{b≠a} p_ab q_ab` at each vertex (with `p_ba = −p_ab`); all vanish.
pub fn anotherway_residuals(mn: &MNPair) -> [f64; 4] {
    let p = plucker_from_mn(mn).0;
    let q = inner_from_mn(mn);
    std::array::from_fn(|a| {
        (0..6)
            .filter_map(|e| {
                let (i, j) = EDGES[e];
                if i == a {
                    Some(p[e] * q[e])
                } else if j == a {
                    Some(-p[e] * q[e])
                } else {
                    None
                }
            })
            .sum()
    })
}

/// Which Ptolemy factor `Ω₁, Ω₂, Ω₃` is smallest in magnitude (ties → lowest).
pub fn vanishing_factor(n: &NaturalParams) -> Result<(usize, [f64; 4])> {
    let om = ptolemy_factors(n)?;
    let mut k = 1;
    for j in 2..4 {
        if om[j].abs() < om[k].abs() {
            k = j;
        }
    }
    Ok((k, om))
}

fn require_degenerate(n: &NaturalParams) -> Result<()> {
    if !(omega(n).abs() <= omega_tolerance(n)) {
        return Err(Error::NotDegenerate);
    }
    Ok(())
}

/// Plücker coordinates of the orbit representative selected by the vanishing factor.
pub fn plucker_from_natural(n: &NaturalParams) -> Result<PluckerVector> {
    let h = hats(n)?;
    require_degenerate(n)?;
    let (k, _) = vanishing_factor(n)?;
    let sh = (n.s() / 2.0).sqrt();
    let [uh, vh, wh, xh, yh, zh] = h;
    let v = match k {
        1 => [zh, yh, xh, wh, -vh, -uh],
        2 => [zh, yh, xh, wh, vh, uh],
        _ => [zh, yh, xh, -wh, -vh, uh],
    };
    Ok(PluckerVector(v.map(|x| sh * x)))
}

/// Images of `p` under the sign action of `ℤ₂⁴`, duplicates removed.
pub fn z24_orbit(p: &PluckerVector) -> Vec<PluckerVector> {
    let mut out: Vec<PluckerVector> = Vec::with_capacity(16);
    for mask in 0..16u32 {
        let e: [f64; 4] = std::array::from_fn(|i| if mask & (1 << i) != 0 { -1.0 } else { 1.0 });
        let q = &p.0;
        let img = PluckerVector([
            e[0] * e[1] * q[0],
            e[0] * e[2] * q[1],
            e[0] * e[3] * q[2],
            e[3] * q[3],
            e[2] * q[4],
            e[1] * q[5],
        ]);
        if !out.contains(&img) {
            out.push(img);
        }
    }
    out
}

/// Four signed positions on a line whose squared gaps are the complementary products.
#[derive(Clone, Debug, PartialEq)]
pub struct CollinearQuadruple {
    pub positions: [f64; 4],
    /// Ptolemy factor (1, 2 or 3) that selected the signs.
    pub factor: usize,
    /// `|(x_a − x_b)² − n_ab ñ_ab|` per edge.
    pub gap_residuals: [f64; 6],
}

impl CollinearQuadruple {
    pub fn max_gap_residual(&self) -> f64 {
        self.gap_residuals.iter().copied().fold(0.0, f64::max)
    }
}

pub fn collinear_quadruple(n: &NaturalParams) -> Result<CollinearQuadruple> {
    let [uh, vh, wh, xh, yh, zh] = hats(n)?;
    require_degenerate(n)?;
    let (k, _) = vanishing_factor(n)?;
    let sh = (n.s() / 2.0).sqrt();
    let mag = [uh * vh * wh, uh * xh * yh, vh * xh * zh, wh * yh * zh].map(|x| if sh > 0.0 { x / sh } else { 0.0 });
    let signs = match k {
        1 => [1.0, 1.0, -1.0, -1.0],
        2 => [1.0, -1.0, 1.0, -1.0],
        _ => [1.0, -1.0, -1.0, 1.0],
    };
    let positions: [f64; 4] = std::array::from_fn(|i| signs[i] * mag[i]);
    let inv = inverse_from_natural(n);
    let gap_residuals = std::array::from_fn(|e| {
        let (a, b) = EDGES[e];
        ((positions[a] - positions[b]).powi(2) - n.0[e] * inv.0[e]).abs()
    });
    Ok(CollinearQuadruple { positions, factor: k, gap_residuals })
}

/// Interior squared areas recomputed from an `MNPair`, e.g.
/// `F_AB|CD = ((m_B+n_A)² + (m_A−n_B)²)((m_B−n_A)² + (m_A+n_B)²)` up to the
/// vertex relabeling appropriate to each interior face.
pub fn interior_from_mn(mn: &MNPair) -> [f64; 3] {
    let f = |a: usize, b: usize| {
        let (ma, na, mb, nb) = (mn.m[a], mn.n[a], mn.m[b], mn.n[b]);
        ((mb + na).powi(2) + (ma - nb).powi(2)) * ((mb - na).powi(2) + (ma + nb).powi(2))
    };
    [f(0, 1), f(0, 2), f(0, 3)]
}

/// Exterior areas recomputed from an `MNPair`: `f_opp(a) = m_a² + n_a²`.
pub fn exterior_from_mn(mn: &MNPair) -> [f64; 4] {
    std::array::from_fn(|k| {
        let v = 3 - k;
        mn.m[v].powi(2) + mn.n[v].powi(2)
    })
}

/// The four planar areal vectors of a rank-2 configuration as complex numbers `ζ²`.
pub fn planar_areal_vectors(mn: &MNPair) -> [[f64; 2]; 4] {
    std::array::from_fn(|row| {
        let v = 3 - row;
        let (a, b) = (mn.m[v], mn.n[v]);
        [a * a - b * b, 2.0 * a * b]
    })
}
