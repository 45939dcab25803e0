//! Seeded random fixtures shared by the tests, the acceptance harness and the
//! command-line conjecture checks.

use num_rational::BigRational;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::degeneracy::squeeze_limit;
use crate::linalg::Vec3;
use crate::natural::{natural_from_areas, NaturalParams};
use crate::tetra::{FacialAreas, Tetrahedron};

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn point_in_cube(rng: &mut ChaCha8Rng) -> Vec3 {
    std::array::from_fn(|_| rng.random_range(-1.0..1.0))
}

/// Tetrahedron with vertices uniform in `[-1, 1]^3` and `|t| > min_t`.
pub fn random_tetrahedron(rng: &mut ChaCha8Rng, min_t: f64) -> Tetrahedron {
    loop {
        let t = Tetrahedron::new(point_in_cube(rng), point_in_cube(rng), point_in_cube(rng), point_in_cube(rng));
        if t.volume_t() > min_t && !t.is_degenerate() {
            return t;
        }
    }
}

/// Tetrahedron with coordinates `k / denom`, `|k| <= denom`, and nonzero volume.
pub fn random_rational_tetrahedron(rng: &mut ChaCha8Rng, denom: i64) -> Tetrahedron<BigRational> {
    loop {
        let mut p = || -> [BigRational; 3] {
            std::array::from_fn(|_| BigRational::new(rng.random_range(-denom..=denom).into(), denom.into()))
        };
        let t = Tetrahedron::new(p(), p(), p(), p());
        if t.signed_t() != BigRational::from_integer(0.into()) {
            return t;
        }
    }
}

/// Vertices of an n-simplex uniform in `[-1, 1]^n` whose volume times `n!`
/// exceeds `min_scaled_volume`.
pub fn random_simplex(rng: &mut ChaCha8Rng, dim: usize, min_scaled_volume: f64) -> Vec<Vec<f64>> {
    loop {
        let v: Vec<Vec<f64>> = (0..=dim).map(|_| (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect()).collect();
        if crate::nsimplex::scaled_hypervolume(&v).is_ok_and(|x| x > min_scaled_volume) {
            return v;
        }
    }
}

/// Zero-volume areas obtained by squeezing a random tetrahedron flat along a
/// random axis.
pub fn random_degenerate_areas(rng: &mut ChaCha8Rng) -> FacialAreas {
    loop {
        let t = random_tetrahedron(rng, 1e-2);
        let axis = point_in_cube(rng);
        if crate::linalg::norm(&axis) < 0.1 {
            continue;
        }
        if let Ok(f) = squeeze_limit(&t, &axis) {
            return f;
        }
    }
}

pub fn random_degenerate_naturals(rng: &mut ChaCha8Rng) -> NaturalParams {
    natural_from_areas(&random_degenerate_areas(rng))
}

/// Planar quadruple with `A` spread over `[-4, 4]^2` and a fixed base
/// `B = (0,0)`, `C = (1,0)`, `D = (0,1)`.
pub fn random_planar_apex(rng: &mut ChaCha8Rng) -> [[f64; 2]; 4] {
    let a = [rng.random_range(-4.0..4.0), rng.random_range(-4.0..4.0)];
    [a, [0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible() {
        let a = random_tetrahedron(&mut seeded(3), 1e-3);
        let b = random_tetrahedron(&mut seeded(3), 1e-3);
        assert_eq!(a, b);
        let f = random_degenerate_areas(&mut seeded(4));
        assert!(crate::areal::gramian(&f.squared(), 0).abs() < 1e-12);
    }
}
