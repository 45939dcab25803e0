use hedronometry::areal::{four_point, gramian, xi_linear};
use hedronometry::involutions::{twin, twin_areas};
use hedronometry::natural::{
    areas_from_natural, inverse_from_areas, natural_from_areas, omega, squared_areas_from_natural, NaturalParams,
};
use hedronometry::reconstruction::{area_polynomial_map, Branch};
use hedronometry::tetra::{SquaredDistances, Tetrahedron};
use num_rational::BigRational;
use proptest::prelude::*;

fn point() -> impl Strategy<Value = [f64; 3]> {
    prop::array::uniform3(-1.0f64..1.0)
}

fn tetra() -> impl Strategy<Value = Tetrahedron> {
    (point(), point(), point(), point())
        .prop_map(|(a, b, c, d)| Tetrahedron::new(a, b, c, d))
        .prop_filter("thin", |t| t.volume_t() > 1e-2)
}

fn int_point() -> impl Strategy<Value = [i64; 3]> {
    prop::array::uniform3(-9i64..=9)
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn gramian_is_t_to_the_fourth(t in tetra()) {
        let t4 = t.volume_t().powi(4);
        let g = gramian(&t.squared_areas(), 0);
        prop_assert!((g - t4).abs() <= 1e-9 * t4.max(1e-3), "{} vs {}", g, t4);
        let n = natural_from_areas(&t.facial_areas());
        let s = n.s();
        let s2om = s * s * omega(&n);
        prop_assert!((s2om - t4).abs() <= 1e-8 * s.powi(4), "{} vs {}", s2om, t4);
    }

    #[test]
    fn naturals_round_trip(t in tetra()) {
        let f = t.facial_areas();
        let back = areas_from_natural(&natural_from_areas(&f)).unwrap();
        prop_assert!(f.max_relative_deviation(&back) < 1e-12);
    }

    #[test]
    fn twin_is_an_involution(n in prop::array::uniform6(0.0f64..10.0)) {
        let n = NaturalParams(n);
        prop_assert_eq!(twin(&twin(&n)), n.clone());
        let sq = squared_areas_from_natural(&twin(&n));
        let scale: f64 = sq.iter().map(|x| x.abs()).sum::<f64>().max(1.0);
        prop_assert!(xi_linear(&sq).abs() <= 1e-12 * scale * scale);
    }

    #[test]
    fn twin_areas_keep_interior(t in tetra()) {
        let f = t.facial_areas();
        let tw = twin_areas(&f);
        prop_assert_eq!(&tw.f[4..], &f.f[4..]);
        let inv = inverse_from_areas(&f);
        let inv_tw = inverse_from_areas(&tw);
        for k in 0..6 {
            prop_assert!((inv.0[k] - inv_tw.0[k]).abs() <= 1e-12 * f.s());
        }
    }

    #[test]
    fn exact_area_map_matches_coordinates(a in int_point(), b in int_point(), c in int_point(), d in int_point()) {
        let t = Tetrahedron::new(a.map(q), b.map(q), c.map(q), d.map(q));
        let sq = t.squared_areas();
        prop_assert_eq!(xi_linear(&sq), q(0));
        let dist: SquaredDistances<BigRational> = t.squared_distances();
        prop_assert_eq!(area_polynomial_map(&dist, Branch::Plus), sq.clone());
        let vol = t.signed_t();
        prop_assert_eq!(four_point(&dist), vol.clone() * vol);
    }
}
