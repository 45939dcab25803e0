//! Seeded batch experiments. Trial `k` draws from its own ChaCha8 stream
//! (seed, k), so any trial can be replayed on its own.

use std::collections::BTreeMap;

use hedronometry::degeneracy::{mn_from_degenerate, planar_areal_vectors, squeeze_limit};
use hedronometry::involutions::{involution_orbit, OrbitStatus};
use hedronometry::linalg::{cross, det3, norm2, sub, Vec3};
use hedronometry::natural::natural_from_areas;
use hedronometry::nsimplex::nsimplex_conjecture_check;
use hedronometry::param2to2::{abgd_from_natural, solve_2to2};
use hedronometry::sampling::{random_degenerate_areas, random_simplex, seeded};
use hedronometry::tetra::{FacialAreas, Tetrahedron};
use rand::RngExt;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::commands::{error_value, max_rel, orbit_value, CmdResult, Report, Status};
use crate::json::{num, nums};

pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = seeded(seed);
    rng.set_stream(trial as u64);
    rng
}

fn header(name: &str, trials: usize, seed: u64, tol: f64) -> Report {
    let mut r = Report { body: Map::new(), status: Status::Ok };
    r.body.insert("experiment".into(), json!(name));
    r.body.insert("trials".into(), json!(trials));
    r.body.insert("seed".into(), json!(seed));
    r.body.insert("tolerance".into(), num(tol));
    r
}

pub fn nsimplex(dim: usize, trials: usize, seed: u64, tol: f64) -> CmdResult {
    if !(2..=4).contains(&dim) {
        return Err(format!("--dim must be 2, 3 or 4 (got {dim})"));
    }
    let mut r = header("nsimplex", trials, seed, tol);
    r.body.insert("dim".into(), json!(dim));
    let (mut passes, mut worst, mut worst_pair) = (0usize, 0.0f64, 0.0f64);
    let mut failures = Vec::new();
    for k in 0..trials {
        let vertices = random_simplex(&mut trial_rng(seed, k), dim, 1e-2);
        match nsimplex_conjecture_check(&vertices) {
            Ok(rep) => {
                worst = worst.max(rep.residual);
                worst_pair = worst_pair.max(rep.max_pair_mismatch);
                if rep.passes(tol) {
                    passes += 1;
                } else {
                    failures.push(json!({
                        "trial": k,
                        "residual": num(rep.residual),
                        "pair_failures": rep.pair_failures,
                    }));
                }
            }
            Err(e) => failures.push(json!({ "trial": k, "error": error_value(&e) })),
        }
    }
    r.body.insert("passes".into(), json!(passes));
    r.body.insert("max_residual".into(), num(worst));
    r.body.insert("max_pair_mismatch".into(), num(worst_pair));
    if !failures.is_empty() {
        r.status = Status::Tolerance;
    }
    r.body.insert("failures".into(), Value::Array(failures));
    Ok(r)
}

/// Share of forward-generated fixtures that must be recovered.
const MIN_RECOVERY: f64 = 0.95;

pub fn two_to_two(trials: usize, seed: u64, tol: f64) -> CmdResult {
    let mut r = header("two-to-two", trials, seed, tol);
    let (mut passes, mut warned, mut worst) = (0usize, 0usize, 0.0f64);
    let mut failures = Vec::new();
    for k in 0..trials {
        let n = natural_from_areas(&random_degenerate_areas(&mut trial_rng(seed, k)));
        let p = match abgd_from_natural(&n) {
            Ok(rep) => match rep.signed {
                Some(p) => p,
                None => {
                    failures.push(json!({ "trial": k, "reason": "fixture not recognized as degenerate" }));
                    continue;
                }
            },
            Err(e) => {
                failures.push(json!({ "trial": k, "error": error_value(&e) }));
                continue;
            }
        };
        match solve_2to2(&p, n.s()) {
            Ok(sol) => {
                warned += usize::from(sol.warning.is_some());
                let miss = sol.solutions.iter().map(|m| max_rel(&m.0, &n.0)).fold(f64::INFINITY, f64::min);
                let pairing = sol.pairing.map_or(f64::INFINITY, |q| q.iter().fold(0.0f64, |m, x| m.max(x.abs())));
                if miss <= tol && pairing <= tol {
                    passes += 1;
                    worst = worst.max(miss);
                } else {
                    failures.push(json!({ "trial": k, "recovery": num(miss), "pairing": num(pairing) }));
                }
            }
            Err(e) => failures.push(json!({ "trial": k, "error": error_value(&e) })),
        }
    }
    r.body.insert("passes".into(), json!(passes));
    r.body.insert("conditioning_warnings".into(), json!(warned));
    r.body.insert("max_recovery_residual".into(), num(worst));
    r.body.insert("required_rate".into(), num(MIN_RECOVERY));
    if trials > 0 && (passes as f64) < MIN_RECOVERY * trials as f64 {
        r.status = Status::Tolerance;
    }
    r.body.insert("failures".into(), Value::Array(failures));
    Ok(r)
}

pub fn involution_order(trials: usize, seed: u64, tol: f64, max_iter: usize) -> CmdResult {
    let mut r = header("involution-order", trials, seed, tol);
    r.body.insert("max_iter".into(), json!(max_iter));
    let mut tally: [BTreeMap<String, usize>; 2] = Default::default();
    let mut records = Vec::new();
    let mut failures = Vec::new();
    for k in 0..trials {
        let f = random_degenerate_areas(&mut trial_rng(seed, k));
        match involution_orbit(&f, max_iter, tol) {
            Ok(rep) => {
                for (slot, o) in tally.iter_mut().zip(&rep.orbits) {
                    let key = match &o.status {
                        OrbitStatus::Cycle(n) => format!("cycle_{n}"),
                        OrbitStatus::Exhausted => "exhausted".into(),
                        OrbitStatus::Failed(_) => "failed".into(),
                    };
                    *slot.entry(key).or_default() += 1;
                }
                records.push(json!({
                    "trial": k,
                    "commutator": num(rep.commutator),
                    "orbits": rep.orbits.iter().map(orbit_value).collect::<Vec<_>>(),
                }));
            }
            Err(e) => failures.push(json!({ "trial": k, "error": error_value(&e) })),
        }
    }
    let names = ["twin∘reciprocal", "reciprocal∘twin"];
    let mut summary = Map::new();
    for (name, t) in names.iter().zip(tally) {
        summary.insert(name.to_string(), json!(t));
    }
    r.body.insert("summary".into(), Value::Object(summary));
    r.body.insert("records".into(), Value::Array(records));
    r.body.insert("failures".into(), Value::Array(failures));
    Ok(r)
}

/// Signs `ε` with `Σ εₖ wₖ = 0`, first sign fixed to `+1`.
fn closing_signs(w: &[[f64; 2]; 4]) -> ([f64; 4], f64) {
    let mut best = ([1.0; 4], f64::INFINITY);
    for mask in 0..8u32 {
        let bit = |b: u32| if mask & (1 << b) != 0 { -1.0 } else { 1.0 };
        let e = [1.0, bit(0), bit(1), bit(2)];
        let sx: f64 = (0..4).map(|k| e[k] * w[k][0]).sum();
        let sy: f64 = (0..4).map(|k| e[k] * w[k][1]).sum();
        let res = sx.hypot(sy);
        if res < best.1 {
            best = (e, res);
        }
    }
    best
}

/// Tetrahedron with `A` at the origin whose doubled-area normals on the faces
/// `ABC, ABD, ACD` are `(εₖwₖ, cₖ)` up to a common sign. Only the half-space
/// `det > 0` is used; the other half holds the mirror images.
fn preimage(w: &[[f64; 2]; 4], eps: &[f64; 4], c: &[f64; 3]) -> Option<Tetrahedron> {
    let normal = |k: usize| -> Vec3 { [eps[k] * w[k][0], eps[k] * w[k][1], c[k]] };
    let (nd, nc, nb) = (normal(0), normal(1), normal(2));
    let det = det3(&[nb, nc, nd]);
    if !(det > 0.0) {
        return None;
    }
    let t = det.sqrt();
    let edge = |a: &Vec3, b: &Vec3| -> Vec3 { cross(a, b).map(|x| x / t) };
    Some(Tetrahedron::new([0.0; 3], edge(&nc, &nd), edge(&nd, &nb), edge(&nb, &nc)))
}

fn distance_sum(t: &Tetrahedron) -> f64 {
    t.squared_distances().d.iter().sum()
}

/// Nelder-Mead on `R³` with the usual coefficients.
fn nelder_mead(f: &dyn Fn(&[f64; 3]) -> f64, start: [f64; 3], step: f64, max_iter: usize) -> ([f64; 3], f64) {
    let mut pts: Vec<([f64; 3], f64)> = (0..4)
        .map(|i| {
            let mut p = start;
            if i > 0 {
                p[i - 1] += step;
            }
            (p, f(&p))
        })
        .collect();
    let lerp = |a: &[f64; 3], b: &[f64; 3], s: f64| -> [f64; 3] { std::array::from_fn(|i| a[i] + s * (b[i] - a[i])) };
    for _ in 0..max_iter {
        pts.sort_by(|a, b| a.1.total_cmp(&b.1));
        let (lo, hi) = (pts[0].1, pts[3].1);
        let size = pts[1..].iter().map(|p| norm2(&sub(&p.0, &pts[0].0))).fold(0.0, f64::max).sqrt();
        if hi - lo <= 1e-15 * lo.abs() && size <= 1e-9 * step {
            break;
        }
        let centroid: [f64; 3] = std::array::from_fn(|i| (pts[0].0[i] + pts[1].0[i] + pts[2].0[i]) / 3.0);
        let worst = pts[3].0;
        let refl = lerp(&centroid, &worst, -1.0);
        let fr = f(&refl);
        if fr < pts[0].1 {
            let exp = lerp(&centroid, &worst, -2.0);
            let fe = f(&exp);
            pts[3] = if fe < fr { (exp, fe) } else { (refl, fr) };
        } else if fr < pts[2].1 {
            pts[3] = (refl, fr);
        } else {
            let con = lerp(&centroid, &worst, 0.5);
            let fc = f(&con);
            if fc < pts[3].1 {
                pts[3] = (con, fc);
            } else {
                let best = pts[0].0;
                for p in pts.iter_mut().skip(1) {
                    p.0 = lerp(&best, &p.0, 0.5);
                    p.1 = f(&p.0);
                }
            }
        }
    }
    pts.sort_by(|a, b| a.1.total_cmp(&b.1));
    pts[0]
}

/// Spread of minimizer positions, relative to the best one, above which
/// the starts are said to disagree.
const MINIMIZER_SPREAD: f64 = 1e-5;

/// Tetrahedra flattening onto the given degenerate areas form a three-parameter
/// family (the normal components of three face normals). Each trial minimizes
/// the distance sum over that family from several starts and reports whether
/// they agree.
pub fn canmap(trials: usize, seed: u64, tol: f64, starts: usize) -> CmdResult {
    let mut r = header("canmap", trials, seed, tol);
    r.body.insert("starts".into(), json!(starts));
    let (mut agree, mut worst_value, mut worst_position, mut worst_limit) = (0usize, 0.0f64, 0.0f64, 0.0f64);
    let mut records = Vec::new();
    let mut failures = Vec::new();
    for k in 0..trials {
        let mut rng = trial_rng(seed, k);
        let f = random_degenerate_areas(&mut rng);
        let mn = match mn_from_degenerate(&f) {
            Ok(mn) if !mn.rank_one => mn,
            Ok(_) => {
                failures.push(json!({ "trial": k, "reason": "rank one fixture" }));
                continue;
            }
            Err(e) => {
                failures.push(json!({ "trial": k, "error": error_value(&e) }));
                continue;
            }
        };
        let w = planar_areal_vectors(&mn);
        let (eps, closure) = closing_signs(&w);
        let scale = f.s() / 4.0;
        if closure > 1e-8 * f.s() {
            failures.push(json!({ "trial": k, "reason": "planar normals do not close", "closure": num(closure) }));
            continue;
        }
        let objective = |c: &[f64; 3]| preimage(&w, &eps, c).map_or(f64::INFINITY, |t| distance_sum(&t));
        let mut minima = Vec::with_capacity(starts);
        for _ in 0..starts {
            let mut c: [f64; 3];
            loop {
                c = std::array::from_fn(|_| scale * rng.random_range(-1.0..1.0));
                if objective(&c).is_finite() {
                    break;
                }
                let flipped = c.map(|x| -x);
                if objective(&flipped).is_finite() {
                    c = flipped;
                    break;
                }
            }
            let (c1, _) = nelder_mead(&objective, c, 0.1 * scale, 4000);
            minima.push(nelder_mead(&objective, c1, 1e-3 * scale, 4000));
        }
        minima.sort_by(|a, b| a.1.total_cmp(&b.1));
        let (best_c, best) = minima[0];
        let value_spread = (minima[minima.len() - 1].1 - best) / best;
        let position_spread = minima
            .iter()
            .map(|(c, _)| norm2(&sub(c, &best_c)).sqrt())
            .fold(0.0, f64::max)
            / norm2(&best_c).sqrt().max(f64::MIN_POSITIVE);
        let tetra = preimage(&w, &eps, &best_c).expect("minimizer is feasible");
        let limit = squeeze_limit(&tetra, &[0.0, 0.0, 1.0]).unwrap_or_else(|_| FacialAreas::new([f64::NAN; 7]));
        let limit_residual = f.max_relative_deviation(&limit);
        worst_value = worst_value.max(value_spread);
        worst_position = worst_position.max(position_spread);
        worst_limit = worst_limit.max(limit_residual);
        let same = value_spread <= tol && position_spread <= MINIMIZER_SPREAD;
        agree += usize::from(same);
        records.push(json!({
            "trial": k,
            "min_distance_sum": num(best),
            "gyration": num(best / 16.0),
            "normal_components": nums(&best_c),
            "value_spread": num(value_spread),
            "position_spread": num(position_spread),
            "limit_residual": num(limit_residual),
            "starts_agree": same,
        }));
    }
    r.body.insert("starts_agree".into(), json!(agree));
    r.body.insert("max_value_spread".into(), num(worst_value));
    r.body.insert("max_position_spread".into(), num(worst_position));
    r.body.insert("max_limit_residual".into(), num(worst_limit));
    r.body.insert("records".into(), Value::Array(records));
    r.body.insert("failures".into(), Value::Array(failures));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_differ_and_replay() {
        let a = random_simplex(&mut trial_rng(5, 0), 3, 1e-2);
        let b = random_simplex(&mut trial_rng(5, 1), 3, 1e-2);
        assert_ne!(a, b);
        assert_eq!(a, random_simplex(&mut trial_rng(5, 0), 3, 1e-2));
    }

    #[test]
    fn preimage_of_right_corner() {
        let t = Tetrahedron::right_corner();
        let f = squeeze_limit(&t, &[0.0, 0.0, 1.0]).unwrap();
        let w: [[f64; 2]; 4] = std::array::from_fn(|k| {
            let v = t.areal_vectors()[k];
            [v[0], v[1]]
        });
        let (eps, closure) = closing_signs(&w);
        assert!(closure < 1e-12);
        let normals = t.areal_vectors();
        let c = [eps[0] * normals[0][2], eps[1] * normals[1][2], eps[2] * normals[2][2]];
        // either orientation of the normals reproduces the shape
        let back = preimage(&w, &eps, &c).or_else(|| preimage(&w, &eps, &c.map(|x| -x)));
        let back = back.expect("feasible");
        assert!((distance_sum(&back) - distance_sum(&t)).abs() < 1e-12);
        let lim = squeeze_limit(&back, &[0.0, 0.0, 1.0]).unwrap();
        assert!(f.max_relative_deviation(&lim) < 1e-12);
    }

    #[test]
    fn nelder_mead_quadratic() {
        let f = |x: &[f64; 3]| (x[0] - 1.0).powi(2) + 2.0 * (x[1] + 0.5).powi(2) + 3.0 * x[2].powi(2);
        let (x, v) = nelder_mead(&f, [0.0; 3], 0.1, 4000);
        assert!(v < 1e-14, "{v}");
        assert!((x[0] - 1.0).abs() < 1e-7 && (x[1] + 0.5).abs() < 1e-7);
    }
}
