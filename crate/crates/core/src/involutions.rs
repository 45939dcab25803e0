//! Three involutions: the twin (opposite natural parameters swapped),
//! Fiedler's inverse of a non-degenerate tetrahedron, and the reciprocal of a
//! degenerate one built from pseudo-inverse Gram diagonals. Also an orbit
//! explorer for the two compositions of twin and reciprocal.

use crate::areal::{g_ext, g_int, xi_linear};
use crate::error::{Error, Result};
use crate::linalg::{self, cross, dot, pseudo_inverse, scale, sub, sym_eigen, SymMat, Vec3};
use crate::natural::{
    distances_from_natural, inverse_from_areas, natural_from_areas, omega, omega_tolerance, NaturalParams,
};
use crate::reconstruction::coords_from_distances;
use crate::tetra::{FacialAreas, Tetrahedron};

/// `(u, v, w, x, y, z) ↦ (z, y, x, w, v, u)`.
pub fn twin(n: &NaturalParams) -> NaturalParams {
    let [u, v, w, x, y, z] = n.0;
    NaturalParams([z, y, x, w, v, u])
}

/// Areas of the twin: each exterior face becomes half of the other three minus
/// itself; interior faces are unchanged.
pub fn twin_areas(f: &FacialAreas) -> FacialAreas {
    let total: f64 = f.f[..4].iter().sum();
    let mut out = f.f;
    for k in 0..4 {
        out[k] = 0.5 * (total - 2.0 * f.f[k]);
    }
    FacialAreas::new(out)
}

/// Relative residuals of the quantities the twin must preserve.
#[derive(Clone, Debug, PartialEq)]
pub struct TwinReport {
    pub interior_areas: f64,
    pub surface: f64,
    pub volume: f64,
    pub inradius: f64,
    pub inverse_params: f64,
    pub opposite_distance_products: f64,
    pub opposite_dot_products: f64,
}

impl TwinReport {
    pub fn max(&self) -> f64 {
        [
            self.interior_areas,
            self.surface,
            self.volume,
            self.inradius,
            self.inverse_params,
            self.opposite_distance_products,
            self.opposite_dot_products,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

fn rel_diff(a: &[f64], b: &[f64]) -> f64 {
    let scale = a.iter().chain(b).map(|x| x.abs()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max) / scale
}

/// `AB·CD`, `AC·BD`, `AD·BC`.
pub fn opposite_dot_products(t: &Tetrahedron) -> [f64; 3] {
    let [ab, ac, ad, bc, bd, cd] = t.edge_vectors();
    [dot(&ab, &cd), dot(&ac, &bd), dot(&ad, &bc)]
}

fn opposite_distance_products(t: &Tetrahedron) -> [f64; 3] {
    let d = t.squared_distances().d;
    [(d[0] * d[5]).sqrt(), (d[1] * d[4]).sqrt(), (d[2] * d[3]).sqrt()]
}

/// Coordinates of the twin of a non-degenerate tetrahedron, with the preservation report.
pub fn twin_tetrahedron(t: &Tetrahedron) -> Result<(Tetrahedron, TwinReport)> {
    if t.is_degenerate() {
        return Err(Error::DegenerateTetrahedron { t: t.volume_t(), threshold: t.degeneracy_threshold() });
    }
    let f = t.facial_areas();
    let n = natural_from_areas(&f);
    let tw = twin(&n);
    let d = distances_from_natural(&tw)?;
    let out = coords_from_distances(&d, 3)?;
    let g = out.facial_areas();
    let (s0, s1) = (f.s(), g.s());
    let (t0, t1) = (t.volume_t(), out.volume_t());
    let report = TwinReport {
        interior_areas: rel_diff(&f.f[4..], &g.f[4..]),
        surface: (s0 - s1).abs() / s0,
        volume: (t0 - t1).abs() / t0,
        inradius: (t0 / s0 - t1 / s1).abs() / (t0 / s0),
        inverse_params: rel_diff(&inverse_from_areas(&f).0, &inverse_from_areas(&g).0),
        opposite_distance_products: rel_diff(&opposite_distance_products(t), &opposite_distance_products(&out)),
        opposite_dot_products: {
            let a = opposite_dot_products(t);
            let b = opposite_dot_products(&out);
            let scale = t.squared_distances().d.iter().copied().fold(0.0, f64::max);
            (0..3).map(|k| (a[k] - b[k]).abs()).fold(0.0, f64::max) / scale
        },
    };
    Ok((out, report))
}

/// Fiedler's inverse, with `A'` at the origin and volume `4/t`.
pub fn fiedler_inverse(t: &Tetrahedron) -> Result<Tetrahedron> {
    if t.is_degenerate() {
        return Err(Error::DegenerateTetrahedron { t: t.volume_t(), threshold: t.degeneracy_threshold() });
    }
    let vol = t.volume_t();
    let [ab, ac, ad, bc, bd, cd] = t.edge_vectors();
    let (p, q, r) = (cross(&ab, &cd), cross(&ac, &bd), cross(&ad, &bc));
    let k = 1.0 / vol;
    let b: Vec3 = scale(&k, &sub(&q, &r));
    let c: Vec3 = scale(&-k, &linalg::add(&p, &r));
    let d: Vec3 = scale(&k, &sub(&q, &p));
    Ok(Tetrahedron::new([0.0; 3], b, c, d))
}

/// Inner products of the centroid-to-vertex vectors.
pub fn lineal_gram(t: &Tetrahedron) -> [[f64; 4]; 4] {
    let c: Vec3 = std::array::from_fn(|i| t.vertices.iter().map(|p| p[i]).sum::<f64>() / 4.0);
    let v = t.vertices.map(|p| sub(&p, &c));
    std::array::from_fn(|i| std::array::from_fn(|j| dot(&v[i], &v[j])))
}

/// `G_ext` with rows reordered from faces to their opposite vertices.
pub fn vertex_ordered_g_ext(sq: &[f64; 7]) -> [[f64; 4]; 4] {
    let g = g_ext(sq);
    std::array::from_fn(|i| std::array::from_fn(|j| g[3 - i][3 - j]))
}

#[derive(Clone, Debug, PartialEq)]
pub struct FiedlerReport {
    pub inverse: Tetrahedron,
    /// `|det G_int − 4t⁴| / 4t⁴`.
    pub det_g_int: f64,
    /// `|t·t′ − 4| / 4`.
    pub volume: f64,
    /// `G_ext(input) = t²·L(inverse)`, relative.
    pub areal_lineal: f64,
    /// `t²·G_ext(input)⁺ = L(input)`, relative.
    pub pinv_lineal: f64,
    /// Distances of the double inverse against the input, relative.
    pub round_trip: f64,
}

pub fn fiedler_report(t: &Tetrahedron) -> Result<FiedlerReport> {
    let inverse = fiedler_inverse(t)?;
    let vol = t.volume_t();
    let sq = t.squared_areas();
    let t4 = 4.0 * vol.powi(4);
    let det_g_int = (linalg::det3(&g_int(&sq)) - t4).abs() / t4;
    let volume = (vol * inverse.volume_t() - 4.0).abs() / 4.0;
    let g = vertex_ordered_g_ext(&sq);
    let l_inv = lineal_gram(&inverse);
    let flat = |m: &[[f64; 4]; 4]| m.iter().flatten().copied().collect::<Vec<f64>>();
    let scaled: Vec<f64> = flat(&l_inv).iter().map(|x| x * vol * vol).collect();
    let areal_lineal = rel_diff(&flat(&g), &scaled);
    let pinv = pseudo_inverse(&SymMat::symmetrize(&g), 1e-10)?;
    let pinv_scaled: Vec<f64> = flat(pinv.as_array()).iter().map(|x| x * vol * vol).collect();
    let pinv_lineal = rel_diff(&pinv_scaled, &flat(&lineal_gram(t)));
    let back = fiedler_inverse(&inverse)?;
    let round_trip = rel_diff(&back.squared_distances().d, &t.squared_distances().d);
    Ok(FiedlerReport { inverse, det_g_int, volume, areal_lineal, pinv_lineal, round_trip })
}

/// Rank cutoff used by the reciprocal's pseudo-inverses.
pub const RECIPROCAL_RANK_TOL: f64 = 1e-9;

fn require_degenerate(f: &FacialAreas) -> Result<()> {
    let n = natural_from_areas(f);
    if omega(&n).abs() > omega_tolerance(&n) {
        return Err(Error::NotDegenerate);
    }
    Ok(())
}

/// Areas from the square roots of the diagonals of `G_ext⁺` and `G_int⁺`.
pub fn reciprocal(f: &FacialAreas) -> Result<FacialAreas> {
    require_degenerate(f)?;
    reciprocal_unchecked(f)
}

fn reciprocal_unchecked(f: &FacialAreas) -> Result<FacialAreas> {
    let sq = f.squared();
    let pe = pseudo_inverse(&SymMat::symmetrize(&g_ext(&sq)), RECIPROCAL_RANK_TOL)?;
    let pi = pseudo_inverse(&SymMat::symmetrize(&g_int(&sq)), RECIPROCAL_RANK_TOL)?;
    let mut out = [0.0; 7];
    for k in 0..4 {
        out[k] = pe.get(k, k).max(0.0).sqrt();
    }
    for k in 0..3 {
        out[4 + k] = pi.get(k, k).max(0.0).sqrt();
    }
    Ok(FacialAreas::new(out))
}

/// Numerical rank of `G_ext`.
pub fn areal_rank(f: &FacialAreas) -> Result<usize> {
    let e = sym_eigen(&SymMat::symmetrize(&g_ext(&f.squared())))?;
    Ok(linalg::numerical_rank(&e, 1e-8))
}

/// `‖twin(rec(f)) − rec(twin(f))‖∞` relative to the larger of the two.
pub fn commutator_residual(f: &FacialAreas) -> Result<f64> {
    let a = twin_areas(&reciprocal(f)?);
    let b = reciprocal(&twin_areas(f))?;
    Ok(rel_diff(&a.f, &b.f))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Composition {
    /// Reciprocal first, then twin.
    TwinAfterReciprocal,
    /// Twin first, then reciprocal.
    ReciprocalAfterTwin,
}

impl Composition {
    pub fn apply(self, f: &FacialAreas) -> Result<FacialAreas> {
        match self {
            Composition::TwinAfterReciprocal => Ok(twin_areas(&reciprocal_unchecked(f)?)),
            Composition::ReciprocalAfterTwin => reciprocal_unchecked(&twin_areas(f)),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Composition::TwinAfterReciprocal => "twin∘reciprocal",
            Composition::ReciprocalAfterTwin => "reciprocal∘twin",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum OrbitStatus {
    /// Returned to the start after this many steps.
    Cycle(usize),
    /// No return within the iteration budget.
    Exhausted,
    /// An iterate left the valid domain.
    Failed(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrbitResult {
    pub composition: Composition,
    pub status: OrbitStatus,
    pub iterations: usize,
    /// Smallest relative distance to the start over the orbit, and when it occurred.
    pub closest_return: (f64, usize),
    /// Largest `|Ξ|/s²` seen along the orbit.
    pub max_xi: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrbitReport {
    pub orbits: [OrbitResult; 2],
    pub commutator: f64,
}

pub fn orbit(start: &FacialAreas, composition: Composition, max_iter: usize, tol: f64) -> OrbitResult {
    let mut cur = start.clone();
    let mut closest = (f64::INFINITY, 0);
    let mut max_xi: f64 = 0.0;
    for k in 1..=max_iter {
        cur = match composition.apply(&cur) {
            Ok(next) if next.f.iter().all(|x| x.is_finite()) && next.s() > 0.0 => next,
            Ok(_) => {
                return OrbitResult {
                    composition,
                    status: OrbitStatus::Failed("iterate is not finite or has zero surface".into()),
                    iterations: k,
                    closest_return: closest,
                    max_xi,
                }
            }
            Err(e) => {
                return OrbitResult {
                    composition,
                    status: OrbitStatus::Failed(e.to_string()),
                    iterations: k,
                    closest_return: closest,
                    max_xi,
                }
            }
        };
        let s = cur.s();
        max_xi = max_xi.max(xi_linear(&cur.squared()).abs() / (s * s));
        let d = rel_diff(&cur.f, &start.f);
        if d < closest.0 {
            closest = (d, k);
        }
        if d <= tol {
            return OrbitResult { composition, status: OrbitStatus::Cycle(k), iterations: k, closest_return: closest, max_xi };
        }
    }
    OrbitResult { composition, status: OrbitStatus::Exhausted, iterations: max_iter, closest_return: closest, max_xi }
}

/// Explores both compositions from a degenerate start.
pub fn involution_orbit(start: &FacialAreas, max_iter: usize, tol: f64) -> Result<OrbitReport> {
    require_degenerate(start)?;
    let commutator = commutator_residual(start)?;
    Ok(OrbitReport {
        orbits: [
            orbit(start, Composition::TwinAfterReciprocal, max_iter, tol),
            orbit(start, Composition::ReciprocalAfterTwin, max_iter, tol),
        ],
        commutator,
    })
}

/// Squared edge lengths, sorted, for isometry comparisons.
pub fn sorted_distances(t: &Tetrahedron) -> [f64; 6] {
    let mut d = t.squared_distances().d;
    d.sort_by(|a, b| a.total_cmp(b));
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degeneracy::{rank_and_lattice, rank_and_lattice_natural, squeeze_limit};
    use crate::natural::areas_from_natural;
    use crate::planar::planar_tetrahedron;

    fn generic() -> Tetrahedron {
        Tetrahedron::new([0.1, 0.2, 0.3], [1.0, -0.2, 0.4], [0.3, 0.9, -0.5], [-0.4, 0.1, 0.8])
    }

    #[test]
    fn twin_is_an_involution_and_fixes_equifacial() {
        let n = NaturalParams::new(0.3, 1.1, 2.0, 0.7, 0.2, 5.0);
        assert_eq!(twin(&twin(&n)), n);
        let eq = NaturalParams::new(1.0, 2.0, 3.0, 3.0, 2.0, 1.0);
        assert_eq!(twin(&eq), eq);
    }

    #[test]
    fn twin_of_right_corner() {
        let f = Tetrahedron::right_corner().facial_areas();
        let n = natural_from_areas(&f);
        let tw = twin(&n);
        assert_eq!(tw.0, [n.0[5], n.0[4], n.0[3], n.0[2], n.0[1], n.0[0]]);
        let g = twin_areas(&f);
        // in f units, area doubles: 2|A'B'C'| = (1 + √3)/2
        assert!((g.f[0] - (1.0 + 3f64.sqrt()) / 2.0).abs() < 1e-14);
        let via_n = areas_from_natural(&tw).unwrap();
        assert!(g.max_relative_deviation(&via_n) < 1e-12);
    }

    #[test]
    fn twin_preserves_the_listed_quantities() {
        for t in [generic(), Tetrahedron::right_corner(), Tetrahedron::regular()] {
            let (_, rep) = twin_tetrahedron(&t).unwrap();
            assert!(rep.max() < 1e-9, "{rep:?}");
        }
    }

    #[test]
    fn twin_keeps_orthocentric() {
        let t = Tetrahedron::new([0.0; 3], [2.0, 0.0, 0.0], [0.0, 3.0, 0.0], [0.0, 0.0, 1.5]);
        assert!(opposite_dot_products(&t).iter().all(|x| x.abs() < 1e-14));
        let (tw, _) = twin_tetrahedron(&t).unwrap();
        let scale = tw.max_edge_length().powi(2);
        assert!(opposite_dot_products(&tw).iter().all(|x| x.abs() < 1e-9 * scale));
    }

    #[test]
    fn twin_of_class_zero_is_rank_two() {
        let f = planar_tetrahedron(&[[0.2, 0.3], [0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]).facial_areas();
        assert_eq!(rank_and_lattice(&f).unwrap().rank, 1);
        let node = rank_and_lattice_natural(&twin(&natural_from_areas(&f))).unwrap();
        assert_eq!(node.rank, 2);
        let g = planar_tetrahedron(&[[-0.3, 0.6], [0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]).facial_areas();
        let node = rank_and_lattice_natural(&twin(&natural_from_areas(&g))).unwrap();
        assert_eq!(node.rank, 1);
    }

    #[test]
    fn fiedler_relations() {
        for t in [generic(), Tetrahedron::right_corner(), Tetrahedron::regular()] {
            let r = fiedler_report(&t).unwrap();
            assert!(r.det_g_int < 1e-10);
            assert!(r.volume < 1e-10);
            assert!(r.areal_lineal < 1e-10, "{r:?}");
            assert!(r.pinv_lineal < 1e-8, "{r:?}");
            assert!(r.round_trip < 1e-7);
        }
        let reg = Tetrahedron::new(
            [0.0, 0.0, 0.0],
            [1.0, 0.0, 0.0],
            [0.5, 3f64.sqrt() / 2.0, 0.0],
            [0.5, 3f64.sqrt() / 6.0, (2.0f64 / 3.0).sqrt()],
        );
        assert!((reg.volume_t() - 1.0 / 2f64.sqrt()).abs() < 1e-14);
        let inv = fiedler_inverse(&reg).unwrap();
        assert!((inv.volume_t() - 4.0 * 2f64.sqrt()).abs() < 1e-12);
        assert!(matches!(fiedler_inverse(&Tetrahedron::unit_square()), Err(Error::DegenerateTetrahedron { .. })));
    }

    #[test]
    fn fiedler_keeps_equifacial() {
        // a disphenoid: opposite edges equal
        let t = Tetrahedron::new([1.0, 1.0, 1.0], [1.0, -1.0, -1.0], [-1.0, 1.0, -1.0], [-1.0, -1.0, 1.0])
            .map_vertices(|p| [1.2 * p[0], 0.9 * p[1], 0.7 * p[2]]);
        let f = fiedler_inverse(&t).unwrap().facial_areas();
        for k in 1..4 {
            assert!((f.f[k] - f.f[0]).abs() < 1e-12 * f.f[0]);
        }
    }

    #[test]
    fn reciprocal_preserves_rank() {
        let sq = Tetrahedron::unit_square().facial_areas();
        let r = reciprocal(&sq).unwrap();
        assert_eq!(areal_rank(&r).unwrap(), 1);
        let f = squeeze_limit(&generic(), &[0.3, -0.2, 1.0]).unwrap();
        let r = reciprocal(&f).unwrap();
        assert_eq!(areal_rank(&r).unwrap(), 2);
        assert!(xi_linear(&r.squared()).abs() < 1e-10 * r.s().powi(2));
        assert!(matches!(reciprocal(&generic().facial_areas()), Err(Error::NotDegenerate)));
    }

    #[test]
    fn twin_and_reciprocal_do_not_commute() {
        let f = squeeze_limit(&generic(), &[0.3, -0.2, 1.0]).unwrap();
        assert!(commutator_residual(&f).unwrap() > 1e-3);
        // the square is symmetric enough that the two orders agree
        let sq = Tetrahedron::unit_square().facial_areas();
        assert!(commutator_residual(&sq).unwrap() < 1e-12);
    }

    #[test]
    fn orbit_harness_runs() {
        let f = squeeze_limit(&generic(), &[0.3, -0.2, 1.0]).unwrap();
        let rep = involution_orbit(&f, 200, 1e-6).unwrap();
        for o in &rep.orbits {
            assert!(o.iterations >= 1);
        }
        assert!(rep.commutator > 0.0);
    }
}
