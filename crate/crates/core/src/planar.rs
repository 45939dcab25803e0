//! Rank-one (planar) configurations: the sixteen saturation classes, the
//! barycentric coordinates they induce, allowable sequences of a planar
//! quadruple, and the minimum-gyration Euclidean realization of given areas.
//!
//! Classes are numbered by the position of `A` against the fixed triangle
//! `BCD`, with barycentric coordinates `(α_B, α_C, α_D)`:
//!
//! * `0`: all positive (`A` inside `BCD`);
//! * `1, 2, 3`: only `α_B`, `α_C`, `α_D` positive (`B`, `C`, `D` inside the other three);
//! * `4..8`, `8..12`, `12..16`: exactly `α_B`, `α_C`, `α_D` negative; within a block
//!   the offset is `[α_first > 1] + 2·[α_second > 1]` over the two positive coordinates in order.

use crate::areal::{cm_determinants, tau_table};
use crate::error::{Error, Result};
use crate::natural::{areas_from_natural, InverseParams, NaturalParams};
use crate::reconstruction::coords_from_distances;
use crate::tetra::{FacialAreas, SquaredDistances, Tetrahedron};

/// Relative tolerance (× s) below which a parameter or a `Τ` is taken as zero.
pub const CLASS_TOL: f64 = 1e-7;

/// For each class, the index `k ∈ {1,2,3}` of the vanishing `Τ_k` at each edge.
pub const CLASS_SIGNATURES: [[usize; 6]; 16] = [
    [1, 1, 1, 3, 3, 3],
    [1, 3, 3, 1, 1, 2],
    [3, 1, 2, 1, 2, 1],
    [2, 2, 1, 2, 1, 1],
    [1, 2, 2, 3, 3, 1],
    [1, 3, 2, 3, 2, 1],
    [1, 2, 3, 2, 3, 1],
    [1, 3, 3, 2, 2, 1],
    [2, 1, 3, 3, 1, 3],
    [3, 1, 3, 3, 1, 2],
    [2, 1, 2, 2, 1, 3],
    [3, 1, 2, 2, 1, 2],
    [3, 3, 1, 1, 3, 3],
    [2, 3, 1, 1, 3, 2],
    [3, 2, 1, 1, 2, 3],
    [2, 2, 1, 1, 2, 2],
];

/// Signs applied to `(f_AB|CD, f_AC|BD, f_AD|BC)` whose half-sum gives each
/// exterior `f` (rows `ABC, ABD, ACD, BCD`).
pub const CLASS_PATTERNS: [[[i8; 3]; 4]; 16] = [
    [[1, 1, -1], [1, -1, 1], [-1, 1, 1], [1, 1, 1]],
    [[1, -1, 1], [1, 1, -1], [1, 1, 1], [-1, 1, 1]],
    [[-1, 1, 1], [1, 1, 1], [1, 1, -1], [1, -1, 1]],
    [[1, 1, 1], [-1, 1, 1], [1, -1, 1], [1, 1, -1]],
    [[1, 1, -1], [1, -1, 1], [1, -1, -1], [1, 1, 1]],
    [[1, -1, -1], [1, 1, 1], [1, 1, -1], [1, -1, 1]],
    [[1, 1, 1], [1, -1, -1], [1, -1, 1], [1, 1, -1]],
    [[1, -1, 1], [1, 1, -1], [1, 1, 1], [1, -1, -1]],
    [[1, 1, -1], [-1, 1, -1], [-1, 1, 1], [1, 1, 1]],
    [[-1, 1, -1], [1, 1, -1], [1, 1, 1], [-1, 1, 1]],
    [[1, 1, 1], [-1, 1, 1], [-1, 1, -1], [1, 1, -1]],
    [[-1, 1, 1], [1, 1, 1], [1, 1, -1], [-1, 1, -1]],
    [[-1, -1, 1], [1, -1, 1], [-1, 1, 1], [1, 1, 1]],
    [[1, -1, 1], [-1, -1, 1], [1, 1, 1], [-1, 1, 1]],
    [[-1, 1, 1], [1, 1, 1], [-1, -1, 1], [1, -1, 1]],
    [[1, 1, 1], [-1, 1, 1], [1, -1, 1], [-1, -1, 1]],
];

/// Signs of `(α_B, α_C, α_D)` per chirotope case.
const CASE_SIGNS: [[i8; 3]; 7] = [
    [1, 1, 1],
    [1, -1, -1],
    [-1, 1, -1],
    [-1, -1, 1],
    [-1, 1, 1],
    [1, -1, 1],
    [1, 1, -1],
];

pub fn chirotope_case(class_id: usize) -> usize {
    if class_id < 4 {
        class_id
    } else {
        4 + (class_id - 4) / 4
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarClass {
    pub class_id: usize,
    pub chirotope_case: usize,
    pub signs: [i8; 3],
    pub signature: [usize; 6],
    pub pattern: [[i8; 3]; 4],
}

impl PlanarClass {
    pub fn new(class_id: usize) -> Result<Self> {
        if class_id >= 16 {
            return Err(Error::InvalidArgument(format!("class id {class_id} out of range 0..16")));
        }
        let case = chirotope_case(class_id);
        Ok(PlanarClass {
            class_id,
            chirotope_case: case,
            signs: CASE_SIGNS[case],
            signature: CLASS_SIGNATURES[class_id],
            pattern: CLASS_PATTERNS[class_id],
        })
    }
}

/// Outcome of classifying a rank-one configuration. On a boundary between
/// regions every adjacent class is listed.
#[derive(Clone, Debug, PartialEq)]
pub struct Classification {
    pub candidates: Vec<PlanarClass>,
    pub vanishing_natural: [bool; 6],
    pub vanishing_inverse: [bool; 6],
}

impl Classification {
    /// The class when it is unambiguous.
    pub fn unique(&self) -> Option<&PlanarClass> {
        match self.candidates.as_slice() {
            [c] => Some(c),
            _ => None,
        }
    }

    pub fn class_ids(&self) -> Vec<usize> {
        self.candidates.iter().map(|c| c.class_id).collect()
    }

    /// The chirotope case, provided all candidates share it.
    pub fn chirotope_case(&self) -> Option<usize> {
        let first = self.candidates.first()?.chirotope_case;
        self.candidates.iter().all(|c| c.chirotope_case == first).then_some(first)
    }
}

/// Class candidates from the seven areas: every class whose signature `Τ`s all vanish.
pub fn classes_from_areas(f: &FacialAreas) -> Vec<PlanarClass> {
    let t = tau_table(f);
    let tol = CLASS_TOL * f.s().abs().max(f64::MIN_POSITIVE);
    (0..16)
        .filter(|&c| (0..6).all(|e| t.tau[e][CLASS_SIGNATURES[c][e]].abs() <= tol))
        .map(|c| PlanarClass::new(c).expect("class id in range"))
        .collect()
}

pub fn classify_planar(n: &NaturalParams, inv: &InverseParams) -> Result<Classification> {
    let s = n.s();
    let tol = CLASS_TOL * s.abs();
    let vanishing_natural = n.0.map(|x| x.abs() <= tol);
    let vanishing_inverse = inv.0.map(|x| x.abs() <= tol);
    if (0..6).any(|k| !vanishing_natural[k] && !vanishing_inverse[k]) {
        return Err(Error::NotRank1);
    }
    let f = areas_from_natural(n)?;
    let candidates = classes_from_areas(&f);
    if candidates.is_empty() {
        return Err(Error::NotRank1);
    }
    Ok(Classification { candidates, vanishing_natural, vanishing_inverse })
}

/// Exterior `f` from the interior ones by the signed half-sums of a class.
pub fn exterior_from_interior(class_id: usize, interior: [f64; 3]) -> Result<[f64; 4]> {
    let class = PlanarClass::new(class_id)?;
    let scale: f64 = interior.iter().map(|x| x.abs()).sum();
    let mut out = [0.0; 4];
    for (k, row) in class.pattern.iter().enumerate() {
        let v = 0.5 * (0..3).map(|i| f64::from(row[i]) * interior[i]).sum::<f64>();
        if v < -1e-12 * scale {
            return Err(Error::InconsistentAreas(format!(
                "class {class_id} gives a negative exterior area {v:e}"
            )));
        }
        out[k] = v.max(0.0);
    }
    Ok(out)
}

/// Barycentric coordinates of `A` with respect to `BCD`.
pub fn barycentric_from_areas(f: &FacialAreas, class: &PlanarClass) -> Result<[f64; 3]> {
    let base = f.f[3];
    if !(base > 0.0) {
        return Err(Error::DegenerateBase);
    }
    let abs = [f.f[2] / base, f.f[1] / base, f.f[0] / base];
    let alpha: [f64; 3] = std::array::from_fn(|i| f64::from(class.signs[i]) * abs[i]);
    let sum: f64 = alpha.iter().sum();
    let scale = abs.iter().sum::<f64>().max(1.0);
    if (sum - 1.0).abs() > 1e-8 * scale {
        return Err(Error::InconsistentAreas(format!(
            "barycentric coordinates sum to {sum} under class {}",
            class.class_id
        )));
    }
    Ok(alpha)
}

/// Weights `(ρ_BC, ρ_BD, ρ_CD)` of the base distances in the gyration sum.
pub fn gyration_weights(alpha: &[f64; 3]) -> [f64; 3] {
    let [b, c, d] = *alpha;
    [
        (2.0 * b * b + 2.0 * c * c + d * d + b * c + 3.0 * b * d + 3.0 * c * d) / 16.0,
        (2.0 * b * b + c * c + 2.0 * d * d + 3.0 * b * c + b * d + 3.0 * c * d) / 16.0,
        (b * b + 2.0 * c * c + 2.0 * d * d + 3.0 * b * c + 3.0 * b * d + c * d) / 16.0,
    ]
}

/// `−½ δᵀ D δ` over the triangle with squared sides `(D_BC, D_BD, D_CD)`.
pub fn schoenberg(base: &[f64; 3], delta: &[f64; 3]) -> f64 {
    let [bc, bd, cd] = *base;
    let [x, y, z] = *delta;
    -(bc * x * y + bd * x * z + cd * y * z)
}

#[derive(Clone, Debug, PartialEq)]
pub struct CanonicalPlanarConfig {
    pub d_star: SquaredDistances,
    pub coordinates: [[f64; 2]; 4],
    /// Squared radius of gyration, `Σ d* / 16`.
    pub gyration: f64,
    pub alpha: [f64; 3],
    pub rho: [f64; 3],
    /// Worst relative mismatch between determinant areas of `d*` and the input.
    pub area_residual: f64,
    /// Worst component of `ρ ∥ ∇Δ` after normalization.
    pub gradient_residual: f64,
}

pub fn canonical_planar(sq: &[f64; 7], class: &PlanarClass) -> Result<CanonicalPlanarConfig> {
    if sq.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite("squared areas"));
    }
    let f = FacialAreas::from_squared(sq);
    let alpha = barycentric_from_areas(&f, class)?;
    let rho = gyration_weights(&alpha);
    let [rbc, rbd, rcd] = rho;
    let q = rbc * rbd + rbc * rcd + rbd * rcd;
    if !(q > 0.0) {
        return Err(Error::InconsistentAreas("gyration weights are degenerate".into()));
    }
    let zeta = f.f[3] / q.sqrt();
    let base = [zeta * (rbd + rcd), zeta * (rbc + rcd), zeta * (rbc + rbd)];
    let [b, c, d] = alpha;
    let ab = schoenberg(&base, &[b - 1.0, c, d]);
    let ac = schoenberg(&base, &[b, c - 1.0, d]);
    let ad = schoenberg(&base, &[b, c, d - 1.0]);
    let d_star = SquaredDistances::new([ab, ac, ad, base[0], base[1], base[2]]);

    let got = cm_determinants(&d_star).squared_areas();
    let scale = sq.iter().map(|x| x.abs()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let area_residual = (0..7).map(|k| (got[k] - sq[k]).abs() / scale).fold(0.0, f64::max);
    if area_residual > 1e-7 {
        return Err(Error::InconsistentAreas(format!(
            "canonical distances miss the areas by {area_residual:e}"
        )));
    }

    let grad = [base[1] + base[2] - base[0], base[2] + base[0] - base[1], base[0] + base[1] - base[2]];
    let gn = grad.iter().map(|x| x * x).sum::<f64>().sqrt();
    let rn = rho.iter().map(|x| x * x).sum::<f64>().sqrt();
    let gradient_residual = if gn > 0.0 && rn > 0.0 {
        (0..3).map(|i| (rho[i] / rn - grad[i] / gn).abs()).fold(0.0, f64::max)
    } else {
        0.0
    };

    let t = coords_from_distances(&d_star, 2)?;
    let coordinates = t.vertices.map(|p| [p[0], p[1]]);
    let gyration = d_star.d.iter().sum::<f64>() / 16.0;
    Ok(CanonicalPlanarConfig { d_star, coordinates, gyration, alpha, rho, area_residual, gradient_residual })
}

/// Canonical configuration for areas whose class is determined from the areas themselves.
pub fn canonical_planar_auto(sq: &[f64; 7]) -> Result<CanonicalPlanarConfig> {
    let f = FacialAreas::from_squared(sq);
    let classes = classes_from_areas(&f);
    let class = classes.first().ok_or(Error::NotRank1)?;
    canonical_planar(sq, class)
}

/// Lifts planar points into the `z = 0` plane.
pub fn planar_tetrahedron(p: &[[f64; 2]; 4]) -> Tetrahedron {
    Tetrahedron { vertices: p.map(|q| [q[0], q[1], 0.0]) }
}

/// A periodic sequence of permutations of the labels `0..4`.
pub type Permutation = [u8; 4];

/// Angular tolerance (radians) for merging simultaneous swaps.
const SWEEP_ANGLE_TOL: f64 = 1e-9;

/// Orders of the four points projected on a rotating directed line, one per
/// arc between consecutive critical directions, starting at direction 0.
pub fn raw_allowable_sequence(points: &[[f64; 2]; 4]) -> Result<Vec<Permutation>> {
    let scale = points.iter().flat_map(|p| p.iter()).fold(0.0f64, |m, x| m.max(x.abs())).max(1.0);
    let mut critical = Vec::with_capacity(12);
    for i in 0..4 {
        for j in i + 1..4 {
            let dx = points[j][0] - points[i][0];
            let dy = points[j][1] - points[i][1];
            if dx.hypot(dy) <= 1e-12 * scale {
                return Err(Error::CoincidentPoints(i, j));
            }
            let perp = dy.atan2(-dx).rem_euclid(std::f64::consts::TAU);
            critical.push(perp);
            critical.push((perp + std::f64::consts::PI).rem_euclid(std::f64::consts::TAU));
        }
    }
    critical.sort_by(|a, b| a.total_cmp(b));
    critical.dedup_by(|a, b| (*a - *b).abs() <= SWEEP_ANGLE_TOL);
    if critical.len() > 1
        && (critical[0] + std::f64::consts::TAU - critical[critical.len() - 1]) <= SWEEP_ANGLE_TOL
    {
        critical.pop();
    }
    let m = critical.len();
    let mut seq = Vec::with_capacity(m);
    for k in 0..m {
        let lo = critical[k];
        let hi = if k + 1 < m { critical[k + 1] } else { critical[0] + std::f64::consts::TAU };
        let theta = 0.5 * (lo + hi);
        let dir = [theta.cos(), theta.sin()];
        let mut idx: [u8; 4] = [0, 1, 2, 3];
        idx.sort_by(|&a, &b| {
            let pa = points[a as usize][0] * dir[0] + points[a as usize][1] * dir[1];
            let pb = points[b as usize][0] * dir[0] + points[b as usize][1] * dir[1];
            pa.total_cmp(&pb)
        });
        seq.push(idx);
    }
    Ok(seq)
}

/// Lexicographically least representative under cyclic rotation, inversion
/// of every permutation, and reversal of the sequence.
pub fn canonical_sequence(seq: &[Permutation]) -> Vec<Permutation> {
    let inverted: Vec<Permutation> = seq.iter().map(|p| [p[3], p[2], p[1], p[0]]).collect();
    let mut best: Option<Vec<Permutation>> = None;
    for base in [seq.to_vec(), inverted] {
        for reversed in [false, true] {
            let mut s = base.clone();
            if reversed {
                s.reverse();
            }
            for r in 0..s.len().max(1) {
                let mut cand = s.clone();
                cand.rotate_left(r.min(s.len().saturating_sub(1)));
                if best.as_ref().is_none_or(|b| cand < *b) {
                    best = Some(cand);
                }
            }
        }
    }
    best.unwrap_or_default()
}

pub fn allowable_sequence(points: &[[f64; 2]; 4]) -> Result<Vec<Permutation>> {
    Ok(canonical_sequence(&raw_allowable_sequence(points)?))
}

/// Region of `A = (a, b)` against `B = (0,0)`, `C = (1,0)`, `D = (0,1)`.
pub fn class_of_barycentric(alpha: &[f64; 3]) -> usize {
    let neg: Vec<usize> = (0..3).filter(|&i| alpha[i] < 0.0).collect();
    match neg.as_slice() {
        [] => 0,
        [j] => {
            let others: Vec<usize> = (0..3).filter(|i| i != j).collect();
            4 + 4 * j + usize::from(alpha[others[0]] > 1.0) + 2 * usize::from(alpha[others[1]] > 1.0)
        }
        _ => 1 + (0..3).find(|i| alpha[*i] >= 0.0).unwrap_or(0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::natural::{inverse_from_areas, natural_from_areas};
    use rand::{RngExt, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const B: [f64; 2] = [0.0, 0.0];
    const C: [f64; 2] = [1.0, 0.0];
    const D: [f64; 2] = [0.0, 1.0];

    fn quad(a: [f64; 2]) -> [[f64; 2]; 4] {
        [a, B, C, D]
    }

    #[test]
    fn sweep_over_regions_matches_membership() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut seen = [false; 16];
        for _ in 0..4000 {
            let a = [rng.random_range(-4.0..4.0), rng.random_range(-4.0..4.0)];
            let alpha = [1.0 - a[0] - a[1], a[0], a[1]];
            let expect = class_of_barycentric(&alpha);
            let f = planar_tetrahedron(&quad(a)).facial_areas();
            let got = classes_from_areas(&f);
            assert_eq!(got.len(), 1, "{a:?}");
            assert_eq!(got[0].class_id, expect);
            seen[expect] = true;
            let bary = barycentric_from_areas(&f, &got[0]).unwrap();
            for i in 0..3 {
                assert!((bary[i] - alpha[i]).abs() < 1e-9);
            }
            let ext = exterior_from_interior(expect, [f.f[4], f.f[5], f.f[6]]).unwrap();
            for k in 0..4 {
                assert!((ext[k] - f.f[k]).abs() < 1e-9 * f.s());
            }
        }
        assert!(seen.iter().all(|b| *b));
    }

    #[test]
    fn class_zero_display() {
        let ext = exterior_from_interior(0, [3.0, 4.0, 5.0]).unwrap();
        assert_eq!(ext, [1.0, 2.0, 3.0, 6.0]);
        assert_eq!(exterior_from_interior(0, [1.0, 1.0, 1.0]).unwrap(), [0.5, 0.5, 0.5, 1.5]);
        assert!(matches!(exterior_from_interior(0, [1.0, 1.0, 5.0]), Err(Error::InconsistentAreas(_))));
        assert_eq!(exterior_from_interior(9, [0.0, 2.0, 0.0]).unwrap(), [1.0; 4]);
    }

    #[test]
    fn square_sits_on_the_corner_of_its_block() {
        let f = Tetrahedron::unit_square().facial_areas();
        let c = classify_planar(&natural_from_areas(&f), &inverse_from_areas(&f)).unwrap();
        assert_eq!(c.class_ids(), vec![8, 9, 10, 11]);
        assert_eq!(c.chirotope_case(), Some(5));
        assert_eq!(c.vanishing_natural, [false, true, false, false, true, false]);
        let bary = barycentric_from_areas(&f, &c.candidates[0]).unwrap();
        assert_eq!(bary, [1.0, -1.0, 1.0]);
    }

    #[test]
    fn inside_is_class_zero() {
        let f = planar_tetrahedron(&quad([0.2, 0.3])).facial_areas();
        let c = classify_planar(&natural_from_areas(&f), &inverse_from_areas(&f)).unwrap();
        assert_eq!(c.class_ids(), vec![0]);
        let v = c.vanishing_natural;
        assert!(v[0] && v[1] && v[2] && !v[3]);
        let r = Tetrahedron::right_corner().facial_areas();
        assert!(matches!(
            classify_planar(&natural_from_areas(&r), &inverse_from_areas(&r)),
            Err(Error::NotRank1)
        ));
    }

    #[test]
    fn centroid_gives_equilateral_base() {
        let rho = gyration_weights(&[1.0 / 3.0; 3]);
        for r in rho {
            assert!((r - 1.0 / 12.0).abs() < 1e-15);
        }
        let f = planar_tetrahedron(&quad([1.0 / 3.0, 1.0 / 3.0])).facial_areas();
        let cfg = canonical_planar(&f.squared(), &PlanarClass::new(0).unwrap()).unwrap();
        let [_, _, _, bc, bd, cd] = cfg.d_star.d;
        assert!((bc - bd).abs() < 1e-12 && (bd - cd).abs() < 1e-12);
    }

    #[test]
    fn canonical_reproduces_areas_and_minimizes_gyration() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for a in [[0.2, 0.3], [-0.7, 0.4], [2.5, 1.7], [0.6, -2.1], [3.0, -0.4]] {
            let f = planar_tetrahedron(&quad(a)).facial_areas();
            let cfg = canonical_planar_auto(&f.squared()).unwrap();
            assert!(cfg.area_residual < 1e-9);
            assert!(cfg.gradient_residual < 1e-8);
            assert!(crate::areal::four_point(&cfg.d_star).abs() < 1e-9 * cfg.gyration.powi(3).max(1e-300));
            for _ in 0..200 {
                let m = [
                    [rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)],
                    [rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)],
                ];
                let det: f64 = m[0][0] * m[1][1] - m[0][1] * m[1][0];
                if det.abs() < 0.05 {
                    continue;
                }
                let k = det.abs().sqrt();
                let sgn = det.signum();
                let p = cfg.coordinates.map(|q| {
                    let x = (m[0][0] * q[0] + m[0][1] * q[1]) / k;
                    let y = sgn * (m[1][0] * q[0] + m[1][1] * q[1]) / k;
                    [x, y]
                });
                let t = planar_tetrahedron(&p);
                assert!(t.facial_areas().max_relative_deviation(&FacialAreas::from_squared(&f.squared())) < 1e-8);
                let sum: f64 = t.squared_distances().d.iter().sum();
                assert!(sum >= 16.0 * cfg.gyration - 1e-9 * sum);
            }
        }
    }

    #[test]
    fn canonical_independent_of_apex() {
        let pts = quad([2.2, -0.6]);
        let base = canonical_planar_auto(&planar_tetrahedron(&pts).facial_areas().squared()).unwrap();
        for apex in 1..4 {
            let mut order = [0usize, 1, 2, 3];
            order.swap(0, apex);
            let p = order.map(|i| pts[i]);
            let cfg = canonical_planar_auto(&planar_tetrahedron(&p).facial_areas().squared()).unwrap();
            for (e, &(i, j)) in crate::tetra::EDGES.iter().enumerate() {
                let orig = base.d_star.get(order[i], order[j]);
                assert!((cfg.d_star.d[e] - orig).abs() < 1e-9 * base.gyration * 16.0);
            }
        }
    }

    #[test]
    fn square_sequence_has_eight_permutations() {
        let sq = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];
        let seq = allowable_sequence(&sq).unwrap();
        assert_eq!(seq.len(), 8);
        for k in 0..4 {
            let p = seq[k];
            assert_eq!(seq[k + 4], [p[3], p[2], p[1], p[0]]);
        }
        let generic = allowable_sequence(&quad([2.5, 1.7])).unwrap();
        assert_eq!(generic.len(), 12);
    }

    #[test]
    fn collinear_sweep_is_constant_between_flips() {
        let pts = [[0.0, 0.0], [1.0, 1.0], [3.0, 3.0], [-2.0, -2.0]];
        let seq = raw_allowable_sequence(&pts).unwrap();
        assert_eq!(seq.len(), 2);
        assert!(matches!(
            raw_allowable_sequence(&[[0.0, 0.0], [0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]),
            Err(Error::CoincidentPoints(0, 1))
        ));
    }

    #[test]
    fn convex_subclasses_have_distinct_sequences() {
        // one sample per class in each convex block
        let samples = [
            [[0.7, 0.6], [1.5, 0.3], [0.3, 1.5], [1.5, 1.5]],
            [[-0.3, 0.6], [-0.8, 0.5], [-0.3, 1.2], [-2.0, 1.5]],
            [[0.6, -0.3], [0.5, -0.8], [1.2, -0.3], [1.5, -2.0]],
        ];
        for (block, s) in samples.iter().enumerate() {
            let mut seqs = Vec::new();
            for (k, &[a, b]) in s.iter().enumerate() {
                let alpha = [1.0 - a - b, a, b];
                assert_eq!(class_of_barycentric(&alpha), 4 + 4 * block + k);
                seqs.push(allowable_sequence(&quad([a, b])).unwrap());
            }
            for i in 0..4 {
                for j in i + 1..4 {
                    assert_ne!(seqs[i], seqs[j], "block {block}: {i} vs {j}");
                }
            }
        }
    }
}
