//! Natural and inverse natural parameters, the Heron-type volume formula
//! `t⁴ = s²Ω`, and the identities connecting the parameters with the areas.

use crate::areal::{tau_table, xi_linear};
use crate::error::{Error, Result};
use crate::linalg::{self, det};
use crate::scalar::{Real, Scalar};
use crate::tetra::{faces_of_edge, FacialAreas, SquaredDistances, Tetrahedron, EDGES, FACES, INTERIOR_OF_EDGE, OPPOSITE_EDGE};

pub const PARAM_NAMES: [&str; 6] = ["u", "v", "w", "x", "y", "z"];

/// Natural parameters `(u, v, w, x, y, z)` keyed to `(AB, AC, AD, BC, BD, CD)`.
#[derive(Clone, Debug, PartialEq)]
pub struct NaturalParams<S = f64>(pub [S; 6]);

/// Inverse natural parameters `(ũ, ṽ, w̃, x̃, ỹ, z̃)`, same keying.
#[derive(Clone, Debug, PartialEq)]
pub struct InverseParams<S = f64>(pub [S; 6]);

macro_rules! edge_params {
    ($t:ident) => {
        impl<S: Scalar> $t<S> {
            pub fn from_array(a: [S; 6]) -> Self {
                $t(a)
            }
            pub fn to_array(&self) -> [S; 6] {
                self.0.clone()
            }
            pub fn u(&self) -> S {
                self.0[0].clone()
            }
            pub fn v(&self) -> S {
                self.0[1].clone()
            }
            pub fn w(&self) -> S {
                self.0[2].clone()
            }
            pub fn x(&self) -> S {
                self.0[3].clone()
            }
            pub fn y(&self) -> S {
                self.0[4].clone()
            }
            pub fn z(&self) -> S {
                self.0[5].clone()
            }
            /// Twice the sum of the parameters.
            pub fn s(&self) -> S {
                self.0.iter().fold(S::zero(), |acc, x| acc + x.clone()) * S::from_i64(2)
            }
        }
    };
}
edge_params!(NaturalParams);
edge_params!(InverseParams);

impl NaturalParams<f64> {
    pub fn new(u: f64, v: f64, w: f64, x: f64, y: f64, z: f64) -> Self {
        NaturalParams([u, v, w, x, y, z])
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }

    pub fn map<T>(&self, f: impl Fn(f64) -> T) -> [T; 6] {
        self.0.map(f)
    }
}

/// `u = Τ₀Τ₁/(2s)` and its edge permutations; zero when `s = 0`.
pub fn natural_from_areas<S: Scalar>(f: &FacialAreas<S>) -> NaturalParams<S> {
    let s = f.s();
    if s.is_zero() {
        return NaturalParams(std::array::from_fn(|_| S::zero()));
    }
    let tau = tau_table(f);
    let two_s = s * S::from_i64(2);
    NaturalParams(std::array::from_fn(|e| {
        tau.tau[e][0].clone() * tau.tau[e][1].clone() / two_s.clone()
    }))
}

/// `ũ = Τ₂Τ₃/(2s)` and its edge permutations; zero when `s = 0`.
pub fn inverse_from_areas<S: Scalar>(f: &FacialAreas<S>) -> InverseParams<S> {
    let s = f.s();
    if s.is_zero() {
        return InverseParams(std::array::from_fn(|_| S::zero()));
    }
    let tau = tau_table(f);
    let two_s = s * S::from_i64(2);
    InverseParams(std::array::from_fn(|e| {
        tau.tau[e][2].clone() * tau.tau[e][3].clone() / two_s.clone()
    }))
}

/// `ũ = 2((v + x)(w + y) − uz)/s` and its edge permutations.
pub fn inverse_from_natural<S: Scalar>(n: &NaturalParams<S>) -> InverseParams<S> {
    let s = n.s();
    if s.is_zero() {
        return InverseParams(std::array::from_fn(|_| S::zero()));
    }
    let p = |a: usize, b: usize| n.0[crate::tetra::edge_index(a, b)].clone();
    InverseParams(std::array::from_fn(|e| {
        let (a, b) = EDGES[e];
        let (c, d) = EDGES[OPPOSITE_EDGE[e]];
        let prod = (p(a, c) + p(b, c)) * (p(a, d) + p(b, d)) - n.0[e].clone() * n.0[OPPOSITE_EDGE[e]].clone();
        prod * S::from_i64(2) / s.clone()
    }))
}

/// `Ω = 2vwxy + 2uwxz + 2uvyz − u²z² − v²y² − w²x²`.
pub fn omega<S: Scalar>(n: &NaturalParams<S>) -> S {
    let [u, v, w, x, y, z] = n.0.clone();
    let two = S::from_i64(2);
    two.clone() * v.clone() * w.clone() * x.clone() * y.clone()
        + two.clone() * u.clone() * w.clone() * x.clone() * z.clone()
        + two * u.clone() * v.clone() * y.clone() * z.clone()
        - (u * z).sq()
        - (v * y).sq()
        - (w * x).sq()
}

/// `Ω` as minus the determinant of the hollow symmetric matrix of the parameters.
pub fn omega_det<S: Scalar>(n: &NaturalParams<S>) -> S {
    let [u, v, w, x, y, z] = n.0.clone();
    let o = S::zero();
    let m = vec![
        vec![o.clone(), u.clone(), v.clone(), w.clone()],
        vec![u, o.clone(), x.clone(), y.clone()],
        vec![v, x, o.clone(), z.clone()],
        vec![w, y, z, o],
    ];
    -det(&m)
}

/// `t⁴ = s²Ω`.
pub fn t4_from_natural<S: Scalar>(n: &NaturalParams<S>) -> S {
    n.s().sq() * omega(n)
}

/// `r⁴ = Ω/s²`.
pub fn r4_from_natural(n: &NaturalParams) -> f64 {
    let s = n.s();
    omega(n) / (s * s)
}

/// Non-negative square roots `(û, v̂, ŵ, x̂, ŷ, ẑ)`.
pub fn hats<R: Real>(n: &NaturalParams<R>) -> Result<[R; 6]> {
    for (k, x) in n.0.iter().enumerate() {
        if *x < R::zero() {
            return Err(Error::NegativeParameter { name: PARAM_NAMES[k], value: x.to_f64() });
        }
    }
    Ok(n.0.map(|x| x.sqrt()))
}

/// The four factors `Ω₀..Ω₃` with `Ω₀Ω₁Ω₂Ω₃ = Ω`.
pub fn ptolemy_factors<R: Real>(n: &NaturalParams<R>) -> Result<[R; 4]> {
    let [uh, vh, wh, xh, yh, zh] = hats(n)?;
    let a = uh * zh;
    let b = vh * yh;
    let c = wh * xh;
    Ok([a + b + c, b + c - a, c + a - b, a + b - c])
}

/// `Ω` tolerance: `1e-8 · (s/2)⁴`.
pub fn omega_tolerance(n: &NaturalParams) -> f64 {
    1e-8 * (0.5 * n.s()).powi(4)
}

/// Squared edge lengths `D_ab = n_ab ñ_ab / r²` with `r² = √Ω / s`.
pub fn distances_from_natural(n: &NaturalParams) -> Result<SquaredDistances> {
    let om = omega(n);
    // round-off floor only; classifying near-degenerate input is not done here
    if !(om > 64.0 * f64::EPSILON * (0.5 * n.s()).powi(4)) {
        return Err(Error::DegenerateParameters(format!("Omega = {om:e} is not positive")));
    }
    let s = n.s();
    let r2 = om.sqrt() / s;
    let inv = inverse_from_natural(n);
    Ok(SquaredDistances::new(std::array::from_fn(|e| n.0[e] * inv.0[e] / r2)))
}

/// Squared areas implied by the parameters (exterior sums squared, interior
/// from the `(·)² − 4··` expressions). Satisfies Yetter's identity identically.
pub fn squared_areas_from_natural<S: Scalar>(n: &NaturalParams<S>) -> [S; 7] {
    let p = &n.0;
    let ext = FACES.map(|tri| {
        let e = |i: usize, j: usize| p[crate::tetra::edge_index(tri[i], tri[j])].clone();
        (e(0, 1) + e(0, 2) + e(1, 2)).sq()
    });
    let int = [0usize, 1, 2].map(|e| {
        let o = OPPOSITE_EDGE[e];
        let rest = (0..6)
            .filter(|&k| k != e && k != o)
            .fold(S::zero(), |acc, k| acc + p[k].clone());
        rest.sq() - S::from_i64(4) * p[e].clone() * p[o].clone()
    });
    let [a, b, c, d] = ext;
    let [e, f, g] = int;
    [a, b, c, d, e, f, g]
}

pub fn areas_from_natural(n: &NaturalParams) -> Result<FacialAreas> {
    let sq = squared_areas_from_natural(n);
    let scale = (0.5 * n.s()).powi(2).max(f64::MIN_POSITIVE);
    let mut f = [0.0; 7];
    for (k, v) in sq.iter().enumerate() {
        if *v < -1e-12 * scale {
            return Err(Error::InvalidParameters(format!(
                "squared interior area {} is negative ({v:e})",
                crate::tetra::FACE_NAMES[k]
            )));
        }
        f[k] = v.max(0.0).sqrt();
    }
    Ok(FacialAreas::new(f))
}

/// `s(u − z)(v − y)(w − x)(u+v+w)(u+x+y)(v+x+z)(w+y+z)`.
pub fn x_factor<S: Scalar>(n: &NaturalParams<S>) -> S {
    let [u, v, w, x, y, z] = n.0.clone();
    n.s()
        * (u.clone() - z.clone())
        * (v.clone() - y.clone())
        * (w.clone() - x.clone())
        * (u.clone() + v.clone() + w.clone())
        * (u + x.clone() + y.clone())
        * (v + x + z.clone())
        * (w + y + z)
}

/// Raw residuals of the identities linking parameters and areas; each entry
/// is `lhs − rhs` and vanishes identically for arbitrary (even non-Euclidean) `f`.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityResiduals<S = f64> {
    pub ida: S,
    pub idb: [S; 4],
    pub idc: [S; 4],
    pub idd: [S; 3],
    pub ide: [S; 3],
    pub idf: [S; 6],
    pub idg: [S; 6],
    pub idh: S,
}

impl<S: Scalar> IdentityResiduals<S> {
    pub fn all(&self) -> Vec<S> {
        let mut v = vec![self.ida.clone(), self.idh.clone()];
        v.extend(self.idb.iter().cloned());
        v.extend(self.idc.iter().cloned());
        v.extend(self.idd.iter().cloned());
        v.extend(self.ide.iter().cloned());
        v.extend(self.idf.iter().cloned());
        v.extend(self.idg.iter().cloned());
        v
    }

    pub fn all_zero(&self) -> bool {
        self.all().iter().all(Scalar::is_zero)
    }
}

pub fn identity_residuals<S: Scalar>(
    n: &NaturalParams<S>,
    inv: &InverseParams<S>,
    f: &FacialAreas<S>,
) -> IdentityResiduals<S> {
    let sq = f.squared();
    let s = f.s();
    let xi = xi_linear(&sq);
    let two = S::from_i64(2);
    let xi_s = xi.clone() / s.clone();
    let p = &n.0;
    let q = &inv.0;
    let sum_n = p.iter().fold(S::zero(), |a, x| a + x.clone());
    let sum_q = q.iter().fold(S::zero(), |a, x| a + x.clone());
    let edge_sum = |tri: [usize; 3]| {
        let e = |i: usize, j: usize| p[crate::tetra::edge_index(tri[i], tri[j])].clone();
        e(0, 1) + e(0, 2) + e(1, 2)
    };
    let ff = &f.f;

    let ida = two.clone() * sum_n - s.clone() - two.clone() * xi_s.clone();
    let idb = std::array::from_fn(|k| edge_sum(FACES[k]) - ff[k].clone() - xi_s.half());
    // edges at vertex v against (sum of the three faces at v − opposite face)/2
    let idc = std::array::from_fn(|vtx| {
        let edges: Vec<usize> = (0..6).filter(|&e| EDGES[e].0 == vtx || EDGES[e].1 == vtx).collect();
        let lhs = edges.iter().fold(S::zero(), |a, &e| a + p[e].clone());
        let opp = crate::tetra::OPPOSITE_FACE[vtx];
        let at = (0..4).filter(|&k| k != opp).fold(S::zero(), |a, k| a + ff[k].clone());
        lhs - (at - ff[opp].clone()).half() - xi_s.clone()
    });
    let idd = [0usize, 1, 2].map(|e| {
        let o = OPPOSITE_EDGE[e];
        let (p1, p2) = faces_of_edge(e);
        let (o1, o2) = faces_of_edge(o);
        p[e].clone() - p[o].clone() - (ff[p1].clone() + ff[p2].clone() - ff[o1].clone() - ff[o2].clone()).half()
    });
    let ide = [0usize, 1, 2].map(|e| {
        let o = OPPOSITE_EDGE[e];
        let rest = (0..6)
            .filter(|&k| k != e && k != o)
            .fold(S::zero(), |a, k| a + p[k].clone());
        (rest - xi_s.clone()).sq() - S::from_i64(4) * p[e].clone() * p[o].clone() - sq[4 + e].clone()
    });
    let idf = std::array::from_fn(|e| {
        let (a, b) = faces_of_edge(e);
        (p[e].clone() + q[e].clone()) * s.clone() - two.clone() * ff[a].clone() * ff[b].clone()
    });
    let idg = std::array::from_fn(|e| {
        let (a, b) = faces_of_edge(e);
        (p[e].clone() - q[e].clone()) * s.clone()
            - (sq[a].clone() + sq[b].clone() - sq[INTERIOR_OF_EDGE[e]].clone())
    });
    let idh = s.sq() - two.clone() * sum_q * s
        - two * (sq[4].clone() + sq[5].clone() + sq[6].clone())
        - S::from_i64(4) * xi;
    IdentityResiduals { ida, idb, idc, idd, ide, idf, idg, idh }
}

/// Normalized identity residuals in floating point.
#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub residuals: IdentityResiduals<f64>,
    /// Residuals of the dot-product form against actual coordinates, when given.
    pub dot_products: Option<[f64; 6]>,
    pub max_relative: f64,
}

/// Evaluates every identity and reports the worst residual, normalized by
/// `s` for linear identities and by `s²` for quadratic ones.
pub fn identity_suite(
    n: &NaturalParams,
    inv: &InverseParams,
    f: &FacialAreas,
    tetra: Option<&Tetrahedron>,
) -> IdentityReport {
    let r = identity_residuals(n, inv, f);
    let s = f.s().abs().max(f64::MIN_POSITIVE);
    let lin = r.idb.iter().chain(&r.idc).chain(&r.idd).chain(std::iter::once(&r.ida));
    let quad = r.ide.iter().chain(&r.idf).chain(&r.idg).chain(std::iter::once(&r.idh));
    let mut worst = lin.map(|x| x.abs() / s).chain(quad.map(|x| x.abs() / (s * s))).fold(0.0, f64::max);
    let dot_products = tetra.map(|t| {
        let v = t.areal_vectors();
        // signed vectors whose pairwise dots give (n − ñ)s/2 per edge
        let signed = [v[0], linalg::neg(&v[1]), v[2], linalg::neg(&v[3])];
        std::array::from_fn(|e| {
            let (a, b) = faces_of_edge(e);
            let lhs = -(n.0[e] - inv.0[e]) * f.s() / 2.0;
            (lhs - linalg::dot(&signed[a], &signed[b])).abs() / (s * s)
        })
    });
    if let Some(d) = &dot_products {
        worst = d.iter().copied().fold(worst, f64::max);
    }
    IdentityReport { residuals: r, dot_products, max_relative: worst }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
    }

    fn sample_n() -> NaturalParams {
        NaturalParams::new(2.0, 4.0, 1.0, 10.0, 5.0, 6.0)
    }

    #[test]
    fn right_corner_naturals() {
        let n = natural_from_areas(&Tetrahedron::right_corner().facial_areas());
        let a = 1.0 / (3.0 + 3f64.sqrt());
        let b = (1.0 + 3f64.sqrt()) / (3.0 + 3f64.sqrt());
        for k in 0..6 {
            assert!(close(n.0[k], if k < 3 { a } else { b }, 1e-14));
        }
        assert!(close(t4_from_natural(&n), 1.0, 1e-13));
    }

    #[test]
    fn square_naturals() {
        let f = Tetrahedron::unit_square().facial_areas();
        assert_eq!(natural_from_areas(&f).0, [0.5, 0.0, 0.5, 0.5, 0.0, 0.5]);
        let inv = inverse_from_natural(&natural_from_areas(&f));
        assert_eq!(inv.0[0], 0.0);
        assert_eq!(inv.0[1], 0.5);
        assert_eq!(natural_from_areas(&FacialAreas::new([0.0; 7])).0, [0.0; 6]);
    }

    #[test]
    fn sample_parameters() {
        let n = sample_n();
        assert_eq!(omega(&n), 476.0);
        assert_eq!(n.s(), 56.0);
        assert_eq!(t4_from_natural(&n), 1_492_736.0);
        assert!(close(inverse_from_natural(&n).0[0], 18.0 / 7.0, 1e-15));
        // 56 · (−4)(−1)(−9) · 7 · 17 · 20 · 12
        assert_eq!(x_factor(&n), -57_576_960.0);
        let p = ptolemy_factors(&n).unwrap();
        assert!(close(p.iter().product::<f64>(), 476.0, 1e-12));
        let d = distances_from_natural(&n).unwrap();
        let cm = crate::areal::cm_determinants(&d);
        assert!(close(cm.four_point, 1_492_736f64.sqrt(), 1e-10));
    }

    #[test]
    fn omega_forms_agree_exactly() {
        let q = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        let n = NaturalParams([q(3, 7), q(-2, 5), q(11, 3), q(1, 9), q(5, 2), q(-7, 4)]);
        assert_eq!(omega(&n), omega_det(&n));
        assert_eq!(omega(&NaturalParams([0.0, 0.0, 0.0, 1.0, 1.0, 1.0])), 0.0);
    }

    #[test]
    fn ptolemy_vanish() {
        let p = ptolemy_factors(&NaturalParams::new(1.0, 1.0, 1.0, 0.0, 0.0, 0.0)).unwrap();
        assert_eq!(p, [0.0; 4]);
        assert!(matches!(
            ptolemy_factors(&NaturalParams::new(-1.0, 1.0, 1.0, 0.0, 0.0, 0.0)),
            Err(Error::NegativeParameter { .. })
        ));
    }

    #[test]
    fn distances_and_areas_round_trip() {
        let n = natural_from_areas(&Tetrahedron::right_corner().facial_areas());
        let d = distances_from_natural(&n).unwrap();
        for (k, want) in [1.0, 1.0, 1.0, 2.0, 2.0, 2.0].iter().enumerate() {
            assert!(close(d.d[k], *want, 1e-12));
        }
        let sq = NaturalParams::new(0.5, 0.0, 0.5, 0.5, 0.0, 0.5);
        assert_eq!(areas_from_natural(&sq).unwrap().f, [1.0, 1.0, 1.0, 1.0, 0.0, 2.0, 0.0]);
        assert!(matches!(
            distances_from_natural(&sq),
            Err(Error::DegenerateParameters(_))
        ));
    }

    #[test]
    fn suite_on_square_and_random() {
        let t = Tetrahedron::new([0.2, -0.4, 0.1], [1.3, 0.2, -0.3], [-0.2, 1.1, 0.4], [0.5, 0.1, 0.9]);
        let f = t.facial_areas();
        let n = natural_from_areas(&f);
        let inv = inverse_from_areas(&f);
        assert!(identity_suite(&n, &inv, &f, Some(&t)).max_relative < 1e-13);
        let f = Tetrahedron::unit_square().facial_areas();
        let n = natural_from_areas(&f);
        let inv = inverse_from_areas(&f);
        assert!(identity_suite(&n, &inv, &f, None).max_relative < 1e-14);
    }
}
