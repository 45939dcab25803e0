//! The `(α, β, γ, δ, ς)` parametrization of generic zeros of `Ω`, the cubic
//! `Ψ` whose roots give `u`, and back-substitution to full natural parameters.

use crate::degeneracy::collinear_quadruple;
use crate::error::{Error, Result};
use crate::natural::{omega, omega_tolerance, r4_from_natural, NaturalParams};

/// Four signed "1-D vector" lengths and the surface parameter `ς`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AbgdParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
}

impl AbgdParams {
    pub fn new(alpha: f64, beta: f64, gamma: f64, delta: f64) -> Self {
        AbgdParams { alpha, beta, gamma, delta }
    }

    pub fn to_array(&self) -> [f64; 4] {
        [self.alpha, self.beta, self.gamma, self.delta]
    }

    pub fn negated(&self) -> Self {
        AbgdParams::new(-self.alpha, -self.beta, -self.gamma, -self.delta)
    }

    pub fn scaled(&self, k: f64) -> Self {
        AbgdParams::new(k * self.alpha, k * self.beta, k * self.gamma, k * self.delta)
    }

    /// `αβγδ > 0` and not all of one sign.
    pub fn admissible(&self) -> bool {
        let a = self.to_array();
        let prod: f64 = a.iter().product();
        let abs_sum: f64 = a.iter().map(|x| x.abs()).sum();
        let sum: f64 = a.iter().sum();
        prod > 0.0 && abs_sum > sum.abs() * (1.0 + 1e-12)
    }

    /// Squares non-zero and pairwise distinct, relative to the largest.
    fn check_generic(&self) -> Result<()> {
        let sq = self.to_array().map(|x| x * x);
        let m = sq.iter().copied().fold(0.0, f64::max);
        if !(m > 0.0) || sq.iter().any(|x| !x.is_finite()) {
            return Err(Error::DegenerateParameters("α, β, γ, δ must be finite and non-zero".into()));
        }
        let tol = 1e-12 * m;
        for i in 0..4 {
            if sq[i] <= tol {
                return Err(Error::DegenerateParameters("a squared parameter vanishes".into()));
            }
            for j in i + 1..4 {
                if (sq[i] - sq[j]).abs() <= tol {
                    return Err(Error::DegenerateParameters("two squared parameters coincide".into()));
                }
            }
        }
        Ok(())
    }
}

/// Magnitudes `√(2uvw/s)` etc. for any input, with signs and
/// vertex-to-in-touch distances where they apply.
#[derive(Clone, Debug, PartialEq)]
pub struct AbgdReport {
    pub magnitudes: [f64; 4],
    /// Signed values when `Ω(n) = 0`.
    pub signed: Option<AbgdParams>,
    /// `|α|/r` etc. when the tetrahedron is non-degenerate.
    pub touch_distances: Option<[f64; 4]>,
}

pub fn abgd_magnitudes(n: &NaturalParams) -> [f64; 4] {
    let [u, v, w, x, y, z] = n.0;
    let s = n.s();
    if !(s > 0.0) {
        return [0.0; 4];
    }
    [u * v * w, u * x * y, v * x * z, w * y * z].map(|p| (2.0 * p / s).max(0.0).sqrt())
}

pub fn abgd_from_natural(n: &NaturalParams) -> Result<AbgdReport> {
    if n.0.iter().any(|x| !x.is_finite() || *x < 0.0) {
        return Err(Error::NegativeParameter {
            name: "natural",
            value: n.0.iter().copied().fold(f64::INFINITY, f64::min),
        });
    }
    let magnitudes = abgd_magnitudes(n);
    let om = omega(n);
    let tol = omega_tolerance(n);
    if om.abs() <= tol {
        let q = collinear_quadruple(n)?;
        let [a, b, c, d] = q.positions;
        Ok(AbgdReport { magnitudes, signed: Some(AbgdParams::new(a, b, c, d)), touch_distances: None })
    } else if om > 0.0 {
        let r = r4_from_natural(n).sqrt().sqrt();
        Ok(AbgdReport { magnitudes, signed: None, touch_distances: Some(magnitudes.map(|m| m / r)) })
    } else {
        Ok(AbgdReport { magnitudes, signed: None, touch_distances: None })
    }
}

/// Coefficients `(a, b, c, d)` of `Ψ(u) = a u³ + b u² + c u + d`.
pub fn psi_coefficients(p: &AbgdParams, sigma: f64) -> [f64; 4] {
    let AbgdParams { alpha: a, beta: b, gamma: g, delta: d } = *p;
    let x = (a - g) * (b - d);
    let y = (a - d) * (b - g);
    [
        4.0 * g * d * x * y,
        -2.0 * a * b * g * d * (x + y) * sigma,
        a * a * b * b * g * d * sigma * sigma,
        2.0 * a * a * b * b * (a - b).powi(2) * (g - d).powi(2) * sigma,
    ]
}

pub fn eval_cubic(c: &[f64; 4], u: f64) -> f64 {
    ((c[0] * u + c[1]) * u + c[2]) * u + c[3]
}

/// `18abcd − 4b³d + b²c² − 4ac³ − 27a²d²`.
pub fn cubic_discriminant(c: &[f64; 4]) -> f64 {
    let [a, b, cc, d] = *c;
    18.0 * a * b * cc * d - 4.0 * b.powi(3) * d + b * b * cc * cc - 4.0 * a * cc.powi(3) - 27.0 * a * a * d * d
}

/// Coefficients `(P, Q, R)` with `disc Ψ = ς²(P ς⁴ + Q ς² + R)`, in closed form.
pub fn discriminant_quadratic(p: &AbgdParams) -> [f64; 3] {
    let AbgdParams { alpha: a, beta: b, gamma: g, delta: d } = *p;
    let (ab, gd) = (a - b, g - d);
    let x = (a - g) * (b - d);
    let y = (a - d) * (b - g);
    let p2 = 4.0 * a.powi(6) * b.powi(6) * g.powi(4) * d.powi(4) * ab * ab * gd * gd;
    let p1 = 32.0
        * a.powi(5)
        * b.powi(5)
        * g.powi(3)
        * d.powi(3)
        * (x + y)
        * (ab * gd + x)
        * (ab * gd - y)
        * ab
        * ab
        * gd
        * gd;
    let p0 = -1728.0
        * a.powi(4)
        * b.powi(4)
        * g * g
        * d * d
        * ab.powi(4)
        * (a - g).powi(2)
        * (a - d).powi(2)
        * (b - g).powi(2)
        * (b - d).powi(2)
        * gd.powi(4);
    [p2, p1, p0]
}

/// The positive root `ρ₊` of the discriminant quadratic in `ς²`.
pub fn sigma_bound(p: &AbgdParams) -> Result<f64> {
    p.check_generic()?;
    let [a, b, c] = discriminant_quadratic(p);
    if !(a > 0.0) || !(c < 0.0) {
        return Err(Error::DegenerateParameters("discriminant quadratic lacks a single positive root".into()));
    }
    // c < 0 < a, so the roots have opposite signs; avoid cancellation
    let disc = (b * b - 4.0 * a * c).sqrt();
    let root = if b >= 0.0 { -2.0 * c / (b + disc) } else { (disc - b) / (2.0 * a) };
    Ok(root)
}

/// Real roots of a cubic, ascending, each polished by Newton steps.
pub fn cubic_real_roots(c: &[f64; 4]) -> Vec<f64> {
    let [a, b, cc, d] = *c;
    if a == 0.0 {
        return quadratic_roots(b, cc, d);
    }
    let (p1, p2, p3) = (b / a, cc / a, d / a);
    let q = (3.0 * p2 - p1 * p1) / 9.0;
    let r = (9.0 * p1 * p2 - 27.0 * p3 - 2.0 * p1.powi(3)) / 54.0;
    let disc = q.powi(3) + r * r;
    let shift = p1 / 3.0;
    let mut roots = if disc > 0.0 {
        let sd = disc.sqrt();
        vec![(r + sd).cbrt() + (r - sd).cbrt() - shift]
    } else if q == 0.0 {
        vec![-shift]
    } else {
        let theta = (r / (-q).powi(3).sqrt()).clamp(-1.0, 1.0).acos();
        let m = 2.0 * (-q).sqrt();
        (0..3).map(|k| m * ((theta + 2.0 * std::f64::consts::PI * f64::from(k)) / 3.0).cos() - shift).collect()
    };
    for x in roots.iter_mut() {
        *x = newton_polish(c, *x);
    }
    roots.sort_by(|a, b| a.total_cmp(b));
    roots
}

fn quadratic_roots(a: f64, b: f64, c: f64) -> Vec<f64> {
    if a == 0.0 {
        return if b == 0.0 { vec![] } else { vec![-c / b] };
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return vec![];
    }
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    let mut v = vec![q / a];
    if q != 0.0 {
        v.push(c / q);
    }
    v.sort_by(|a, b| a.total_cmp(b));
    v
}

fn newton_polish(c: &[f64; 4], mut x: f64) -> f64 {
    for _ in 0..3 {
        let f = eval_cubic(c, x);
        let df = (3.0 * c[0] * x + 2.0 * c[1]) * x + c[2];
        if df == 0.0 || !df.is_finite() {
            break;
        }
        let nx = x - f / df;
        if !nx.is_finite() || eval_cubic(c, nx).abs() >= f.abs() {
            break;
        }
        x = nx;
    }
    x
}

#[derive(Clone, Debug, PartialEq)]
pub struct CubicPsi {
    pub coefficients: [f64; 4],
    pub roots: Vec<f64>,
    pub discriminant: f64,
}

pub fn cubic_psi(p: &AbgdParams, sigma: f64) -> Result<CubicPsi> {
    p.check_generic()?;
    let coefficients = psi_coefficients(p, sigma);
    if sigma > 0.0 && !(coefficients[3] > 0.0) {
        return Err(Error::DegenerateParameters("constant term of Ψ is not positive".into()));
    }
    Ok(CubicPsi {
        coefficients,
        roots: cubic_real_roots(&coefficients),
        discriminant: cubic_discriminant(&coefficients),
    })
}

/// `v` and `w` from `u` through the two linear equations.
pub fn back_substitute(p: &AbgdParams, sigma: f64, u: f64) -> NaturalParams {
    let AbgdParams { alpha: a, beta: b, gamma: g, delta: d } = *p;
    let v = (a * b * g * sigma - 2.0 * g * (a - g) * (b - d) * u) / (2.0 * b * (a - b) * (g - d));
    let w = -(g * d * u + b * d * v) / (b * g);
    let x = w * b * g / (a * d);
    let y = v * b * d / (a * g);
    let z = u * g * d / (a * b);
    NaturalParams([u, v, w, x, y, z])
}

/// Raised when the roots of `Ψ` nearly coincide; verification tolerances are widened.
#[derive(Clone, Debug, PartialEq)]
pub struct ConditioningWarning {
    pub root_spread: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TwoToTwo {
    pub solutions: Vec<NaturalParams>,
    pub psi: CubicPsi,
    pub rho_plus: f64,
    pub warning: Option<ConditioningWarning>,
    /// Worst of `|Ω|/tol`, `|s − ς|/ς` and the defining-relation mismatch over solutions.
    pub residual: f64,
    /// `(u/u′ − z/z′, v/v′ − y/y′, w/w′ − x/x′, uvw/u′v′w′ − 1)` when two solutions exist.
    pub pairing: Option<[f64; 4]>,
}

pub const CLUSTER_TOL: f64 = 1e-6;

pub fn solve_2to2(p: &AbgdParams, sigma: f64) -> Result<TwoToTwo> {
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(Error::InvalidArgument("ς must be positive and finite".into()));
    }
    let rho_plus = sigma_bound(p)?;
    if sigma * sigma <= rho_plus {
        return Err(Error::NoSolution(format!("ς² = {} does not exceed ρ₊ = {}", sigma * sigma, rho_plus)));
    }
    let psi = cubic_psi(p, sigma)?;
    let scale = psi.roots.iter().map(|x| x.abs()).fold(0.0, f64::max);
    let spread = psi.roots.windows(2).map(|w| (w[1] - w[0]).abs()).fold(f64::INFINITY, f64::min);
    let warning = (psi.roots.len() > 1 && spread <= CLUSTER_TOL * scale)
        .then_some(ConditioningWarning { root_spread: spread / scale.max(f64::MIN_POSITIVE) });
    let widen = if warning.is_some() { 100.0 } else { 1.0 };

    let target = p.to_array().map(|x| x * x);
    let mut solutions = Vec::new();
    let mut residual: f64 = 0.0;
    for &u in &psi.roots {
        if !(u > 0.0) {
            continue;
        }
        let n = back_substitute(p, sigma, u);
        if n.0.iter().any(|x| !(*x > 0.0)) {
            continue;
        }
        let om = omega(&n).abs() / omega_tolerance(&n);
        let s_err = (n.s() - sigma).abs() / sigma;
        let got = abgd_magnitudes(&n).map(|x| x * x);
        let m = target.iter().copied().fold(0.0, f64::max);
        let def_err = (0..4).map(|i| (got[i] - target[i]).abs() / m).fold(0.0, f64::max);
        let worst = (om * 1e-8).max(s_err).max(def_err);
        if worst > 1e-6 * widen {
            continue;
        }
        residual = residual.max(worst);
        solutions.push(n);
    }
    if solutions.is_empty() {
        return Err(Error::NoSolution("no root of Ψ yields positive natural parameters".into()));
    }
    let pairing = match solutions.as_slice() {
        [a, b] => {
            let (n, m) = (&a.0, &b.0);
            Some([
                n[0] / m[0] - n[5] / m[5],
                n[1] / m[1] - n[4] / m[4],
                n[2] / m[2] - n[3] / m[3],
                n[0] * n[1] * n[2] / (m[0] * m[1] * m[2]) - 1.0,
            ])
        }
        _ => None,
    };
    Ok(TwoToTwo { solutions, psi, rho_plus, warning, residual, pairing })
}
