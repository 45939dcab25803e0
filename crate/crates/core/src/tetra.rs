//! Labeled tetrahedra and the quantities computed directly from coordinates.
//!
//! Conventions used everywhere in the crate:
//! * edges are ordered `(AB, AC, AD, BC, BD, CD)`;
//! * the seven faces are ordered `(ABC, ABD, ACD, BCD, AB|CD, AC|BD, AD|BC)`;
//! * `f` stores twice the area of each exterior face and four times the area
//!   of each interior (medial parallelogram) face;
//! * `t` is six times the volume.

use crate::error::{Error, Result};
use crate::linalg::{self, cross, dot, norm, norm2, scale, sub, Vec3};
use crate::natural::NaturalParams;
use crate::scalar::Scalar;

pub const VERTEX_NAMES: [char; 4] = ['A', 'B', 'C', 'D'];
pub const EDGES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
pub const EDGE_NAMES: [&str; 6] = ["AB", "AC", "AD", "BC", "BD", "CD"];
pub const FACE_NAMES: [&str; 7] = ["ABC", "ABD", "ACD", "BCD", "AB|CD", "AC|BD", "AD|BC"];
/// Vertices of each exterior face.
pub const FACES: [[usize; 3]; 4] = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];
/// Exterior face opposite each vertex (A→BCD, B→ACD, C→ABD, D→ABC).
pub const OPPOSITE_FACE: [usize; 4] = [3, 2, 1, 0];
/// Edge opposite each edge (AB↔CD, AC↔BD, AD↔BC).
pub const OPPOSITE_EDGE: [usize; 6] = [5, 4, 3, 2, 1, 0];
/// Interior face (index 4..7) containing each edge together with its opposite.
pub const INTERIOR_OF_EDGE: [usize; 6] = [4, 5, 6, 6, 5, 4];

/// Index of the edge joining two distinct vertices.
pub fn edge_index(a: usize, b: usize) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    EDGES.iter().position(|&e| e == (a, b)).expect("distinct vertices")
}

/// The two exterior faces containing an edge, as face indices.
pub fn faces_of_edge(e: usize) -> (usize, usize) {
    let (a, b) = EDGES[e];
    let mut it = (0..4).filter(|&k| FACES[k].contains(&a) && FACES[k].contains(&b));
    (it.next().unwrap(), it.next().unwrap())
}

#[derive(Clone, Debug, PartialEq)]
pub struct SquaredDistances<S = f64> {
    pub d: [S; 6],
}

impl<S: Scalar> SquaredDistances<S> {
    pub fn new(d: [S; 6]) -> Self {
        SquaredDistances { d }
    }

    pub fn get(&self, a: usize, b: usize) -> S {
        if a == b {
            S::zero()
        } else {
            self.d[edge_index(a, b)].clone()
        }
    }

    /// Full symmetric 4×4 matrix of squared distances.
    pub fn matrix(&self) -> Vec<Vec<S>> {
        (0..4).map(|i| (0..4).map(|j| self.get(i, j)).collect()).collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FacialAreas<S = f64> {
    pub f: [S; 7],
}

impl<S: Scalar> FacialAreas<S> {
    pub fn new(f: [S; 7]) -> Self {
        FacialAreas { f }
    }

    /// `F = f²` componentwise.
    pub fn squared(&self) -> [S; 7] {
        std::array::from_fn(|i| self.f[i].sq())
    }

    /// Twice the total surface area.
    pub fn s(&self) -> S {
        self.f[0].clone() + self.f[1].clone() + self.f[2].clone() + self.f[3].clone()
    }
}

impl FacialAreas<f64> {
    /// Areas from squared areas, clamping tiny negative noise to zero.
    pub fn from_squared(sq: &[f64; 7]) -> Self {
        FacialAreas { f: sq.map(|x| x.max(0.0).sqrt()) }
    }

    pub fn max_relative_deviation(&self, other: &FacialAreas) -> f64 {
        let scale = self.f.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(f64::MIN_POSITIVE);
        self.f
            .iter()
            .zip(&other.f)
            .map(|(a, b)| (a - b).abs() / scale)
            .fold(0.0, f64::max)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Tetrahedron<S = f64> {
    pub vertices: [[S; 3]; 4],
}

impl<S: Scalar> Tetrahedron<S> {
    pub fn new(a: [S; 3], b: [S; 3], c: [S; 3], d: [S; 3]) -> Self {
        Tetrahedron { vertices: [a, b, c, d] }
    }

    /// Vector from vertex `a` to vertex `b`.
    pub fn edge(&self, a: usize, b: usize) -> [S; 3] {
        sub(&self.vertices[b], &self.vertices[a])
    }

    pub fn edge_vectors(&self) -> [[S; 3]; 6] {
        EDGES.map(|(a, b)| self.edge(a, b))
    }

    /// `AB×AC, AB×AD, AC×AD, BC×BD` followed by `AB×CD, AC×BD, AD×BC`.
    pub fn areal_vectors(&self) -> [[S; 3]; 7] {
        let [ab, ac, ad, bc, bd, cd] = self.edge_vectors();
        [
            cross(&ab, &ac),
            cross(&ab, &ad),
            cross(&ac, &ad),
            cross(&bc, &bd),
            cross(&ab, &cd),
            cross(&ac, &bd),
            cross(&ad, &bc),
        ]
    }

    /// Squared facial areas `F` in the crate's scaling.
    pub fn squared_areas(&self) -> [S; 7] {
        self.areal_vectors().map(|v| norm2(&v))
    }

    pub fn squared_distances(&self) -> SquaredDistances<S> {
        SquaredDistances { d: self.edge_vectors().map(|e| norm2(&e)) }
    }

    /// Signed `AB · (AC × AD)`; its absolute value is `t`.
    pub fn signed_t(&self) -> S {
        let [ab, ac, ad, ..] = self.edge_vectors();
        linalg::triple(&ab, &ac, &ad)
    }

    pub fn map_vertices(&self, f: impl Fn(&[S; 3]) -> [S; 3]) -> Self {
        Tetrahedron { vertices: std::array::from_fn(|i| f(&self.vertices[i])) }
    }
}

impl Tetrahedron<f64> {
    pub fn right_corner() -> Self {
        Tetrahedron::new([0.0; 3], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0])
    }

    /// Regular tetrahedron with unit edges.
    pub fn regular() -> Self {
        let h = 0.5 / 2f64.sqrt();
        Tetrahedron::new([h, h, h], [h, -h, -h], [-h, h, -h], [-h, -h, h])
    }

    /// Unit square `A=(0,0,0), B=(1,0,0), C=(1,1,0), D=(0,1,0)`.
    pub fn unit_square() -> Self {
        Tetrahedron::new([0.0; 3], [1.0, 0.0, 0.0], [1.0, 1.0, 0.0], [0.0, 1.0, 0.0])
    }

    pub fn is_finite(&self) -> bool {
        self.vertices.iter().flatten().all(|x| x.is_finite())
    }

    pub fn facial_areas(&self) -> FacialAreas {
        FacialAreas { f: self.areal_vectors().map(|v| norm(&v)) }
    }

    pub fn volume_t(&self) -> f64 {
        self.signed_t().abs()
    }

    /// Sign of `AB · (AC × AD)` as -1, 0 or +1.
    pub fn orientation(&self) -> i8 {
        let t = self.signed_t();
        if t > 0.0 {
            1
        } else if t < 0.0 {
            -1
        } else {
            0
        }
    }

    pub fn max_edge_length(&self) -> f64 {
        self.squared_distances().d.iter().fold(0.0f64, |m, x| m.max(*x)).sqrt()
    }

    /// Threshold below which `t` counts as zero: `1e-9 · L³`.
    pub fn degeneracy_threshold(&self) -> f64 {
        1e-9 * self.max_edge_length().powi(3)
    }

    pub fn is_degenerate(&self) -> bool {
        self.volume_t() <= self.degeneracy_threshold()
    }

    fn require_nondegenerate(&self) -> Result<f64> {
        let t = self.volume_t();
        let threshold = self.degeneracy_threshold();
        if !(t > threshold) {
            return Err(Error::DegenerateTetrahedron { t, threshold });
        }
        Ok(t)
    }

    /// Outward unit normal of exterior face `k`.
    pub fn outward_normal(&self, k: usize) -> Vec3 {
        let [a, b, c] = FACES[k].map(|i| self.vertices[i]);
        let n = cross(&sub(&b, &a), &sub(&c, &a));
        let opp = self.vertices[6 - FACES[k].iter().sum::<usize>()];
        let centroid: Vec3 = std::array::from_fn(|i| (a[i] + b[i] + c[i]) / 3.0);
        let len = norm(&n);
        let sign = if dot(&n, &sub(&centroid, &opp)) >= 0.0 { 1.0 } else { -1.0 };
        scale(&(sign / len), &n)
    }

    /// Signed distance from `p` to the plane of face `k` (positive outside).
    pub fn face_distance(&self, k: usize, p: &Vec3) -> f64 {
        let a = self.vertices[FACES[k][0]];
        dot(&self.outward_normal(k), &sub(p, &a))
    }

    /// Weighted vertex combination `Σ wᵢ Vᵢ / Σ wᵢ`.
    fn barycenter(&self, w: [f64; 4]) -> Vec3 {
        let total: f64 = w.iter().sum();
        std::array::from_fn(|i| (0..4).map(|k| w[k] * self.vertices[k][i]).sum::<f64>() / total)
    }

    pub fn in_touch(&self) -> Result<InTouchData> {
        let t = self.require_nondegenerate()?;
        let f = self.facial_areas();
        let s = f.s();
        let weights: [f64; 4] = std::array::from_fn(|v| f.f[OPPOSITE_FACE[v]]);
        let center = self.barycenter(weights);
        let radius = t / s;
        // touch point on the face opposite J=A, K=B, L=C, N=D
        let touch: [Vec3; 4] = std::array::from_fn(|v| {
            let k = OPPOSITE_FACE[v];
            linalg::add(&center, &scale(&radius, &self.outward_normal(k)))
        });
        Ok(InTouchData { center, radius, touch })
    }

    /// Doubled areas of the twelve contact triangles, grouped in the six
    /// congruent pairs keyed by edge.
    pub fn contact_triangle_pairs(&self) -> Result<[[f64; 2]; 6]> {
        let it = self.in_touch()?;
        Ok(std::array::from_fn(|e| {
            let (a, b) = EDGES[e];
            let (f1, f2) = faces_of_edge(e);
            [f1, f2].map(|k| {
                let p = it.touch[3 - k];
                norm(&cross(&self.edge(a, b), &sub(&p, &self.vertices[a])))
            })
        }))
    }

    /// Natural parameters measured directly as doubled contact-triangle areas.
    pub fn contact_triangle_areas(&self) -> Result<NaturalParams> {
        let pairs = self.contact_triangle_pairs()?;
        let scale = self.facial_areas().s();
        for (e, [p, q]) in pairs.iter().enumerate() {
            if (p - q).abs() > 1e-8 * scale.max(f64::MIN_POSITIVE) {
                return Err(Error::InvalidParameters(format!(
                    "contact triangles on edge {} differ: {p} vs {q}",
                    EDGE_NAMES[e]
                )));
            }
        }
        Ok(NaturalParams::from_array(pairs.map(|[p, q]| 0.5 * (p + q))))
    }

    pub fn ex_spheres(&self) -> Result<[ExSphere; 4]> {
        let t = self.require_nondegenerate()?;
        let f = self.facial_areas();
        let s = f.s();
        let r = t / s;
        let inverse = crate::natural::inverse_from_areas(&f).to_array();
        let mut out = Vec::with_capacity(4);
        for x in 0..4 {
            let opp = OPPOSITE_FACE[x];
            let mut w: [f64; 4] = std::array::from_fn(|v| f.f[OPPOSITE_FACE[v]]);
            w[x] = -w[x];
            let total: f64 = w.iter().sum();
            if total.abs() <= 1e-12 * s {
                return Err(Error::ExSphereUndefined { vertex: VERTEX_NAMES[x] });
            }
            let center = self.barycenter(w);
            let radius = t / total;
            let distance_residual = (0..4)
                .map(|k| (self.face_distance(k, &center).abs() - radius).abs() / radius)
                .fold(0.0, f64::max);
            let n = self.outward_normal(opp);
            let touch = sub(&center, &scale(&self.face_distance(opp, &center), &n));
            let face = FACES[opp];
            let hypothesis = [(face[0], face[1]), (face[0], face[2]), (face[1], face[2])].map(|(a, b)| {
                let e = edge_index(a, b);
                let measured = norm(&cross(&self.edge(a, b), &sub(&touch, &self.vertices[a])));
                let predicted = radius / r * inverse[e];
                ExTouchCheck { edge: e, measured, predicted }
            });
            out.push(ExSphere { vertex: x, center, radius, touch, distance_residual, hypothesis });
        }
        Ok(out.try_into().expect("four ex-spheres"))
    }

    /// Edge midpoints `U=AB, V=AC, W=AD, X=BC, Y=BD, Z=CD` and the octahedron's volume.
    pub fn medial_octahedron(&self) -> MedialOctahedron {
        let midpoints: [Vec3; 6] = EDGES.map(|(a, b)| {
            std::array::from_fn(|i| 0.5 * (self.vertices[a][i] + self.vertices[b][i]))
        });
        let centroid: Vec3 = std::array::from_fn(|i| midpoints.iter().map(|m| m[i]).sum::<f64>() / 6.0);
        // opposite vertex pairs of the octahedron: (U,Z), (V,Y), (W,X)
        let pairs = [(0, 5), (1, 4), (2, 3)];
        let mut volume = 0.0;
        for mask in 0..8 {
            let pick = |k: usize| {
                let (p, q) = pairs[k];
                if mask & (1 << k) == 0 { p } else { q }
            };
            let [a, b, c] = [pick(0), pick(1), pick(2)].map(|i| sub(&midpoints[i], &centroid));
            volume += linalg::triple(&a, &b, &c).abs() / 6.0;
        }
        MedialOctahedron { midpoints, volume }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct InTouchData {
    pub center: Vec3,
    pub radius: f64,
    /// Touch points on the faces opposite A, B, C, D (named J, K, L, N).
    pub touch: [Vec3; 4],
}

/// Comparison of a measured ex-touch triangle against its predicted doubled area.
#[derive(Clone, Debug, PartialEq)]
pub struct ExTouchCheck {
    pub edge: usize,
    pub measured: f64,
    pub predicted: f64,
}

impl ExTouchCheck {
    pub fn relative_residual(&self) -> f64 {
        (self.measured - self.predicted).abs() / self.measured.abs().max(self.predicted.abs()).max(f64::MIN_POSITIVE)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExSphere {
    pub vertex: usize,
    pub center: Vec3,
    pub radius: f64,
    /// Foot of the perpendicular from the ex-center onto the face opposite `vertex`.
    pub touch: Vec3,
    /// Worst relative deviation of the four face distances from `radius`.
    pub distance_residual: f64,
    pub hypothesis: [ExTouchCheck; 3],
}

#[derive(Clone, Debug, PartialEq)]
pub struct MedialOctahedron {
    pub midpoints: [Vec3; 6],
    pub volume: f64,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
    }

    #[test]
    fn right_corner_areas() {
        let f = Tetrahedron::right_corner().facial_areas().f;
        let want = [1.0, 1.0, 1.0, 3f64.sqrt(), 2f64.sqrt(), 2f64.sqrt(), 2f64.sqrt()];
        for (a, b) in f.iter().zip(&want) {
            assert!(close(*a, *b, 1e-15));
        }
        assert_eq!(Tetrahedron::right_corner().areal_vectors()[4], [0.0, -1.0, -1.0]);
    }

    #[test]
    fn square_and_regular_areas() {
        assert_eq!(Tetrahedron::unit_square().facial_areas().f, [1.0, 1.0, 1.0, 1.0, 0.0, 2.0, 0.0]);
        assert_eq!(Tetrahedron::unit_square().volume_t(), 0.0);
        let reg = Tetrahedron::regular();
        let f = reg.facial_areas().f;
        for k in 0..4 {
            assert!(close(f[k], 3f64.sqrt() / 2.0, 1e-14));
        }
        for k in 4..7 {
            assert!(close(f[k], 1.0, 1e-14));
        }
        assert!(close(reg.volume_t(), 1.0 / 2f64.sqrt(), 1e-14));
        for d in reg.squared_distances().d {
            assert!(close(d, 1.0, 1e-14));
        }
    }

    #[test]
    fn in_radius_examples() {
        let it = Tetrahedron::right_corner().in_touch().unwrap();
        assert!(close(it.radius, 1.0 / (3.0 + 3f64.sqrt()), 1e-14));
        let it = Tetrahedron::regular().in_touch().unwrap();
        assert!(close(it.radius, 1.0 / (2.0 * 6f64.sqrt()), 1e-14));
        assert!(matches!(
            Tetrahedron::unit_square().in_touch(),
            Err(Error::DegenerateTetrahedron { .. })
        ));
    }

    #[test]
    fn touch_points_lie_on_faces() {
        let t = Tetrahedron::new([0.1, 0.2, -0.3], [1.2, 0.1, 0.0], [0.3, 1.4, 0.2], [0.2, 0.5, 1.1]);
        let it = t.in_touch().unwrap();
        for v in 0..4 {
            let k = OPPOSITE_FACE[v];
            assert!(t.face_distance(k, &it.touch[v]).abs() < 1e-14);
            assert!(close(t.face_distance(k, &it.center), -it.radius, 1e-12));
        }
    }

    #[test]
    fn contact_triangles_right_corner() {
        let n = Tetrahedron::right_corner().contact_triangle_areas().unwrap().to_array();
        let a = 1.0 / (3.0 + 3f64.sqrt());
        let b = (1.0 + 3f64.sqrt()) / (3.0 + 3f64.sqrt());
        for (k, x) in n.iter().enumerate() {
            assert!(close(*x, if k < 3 { a } else { b }, 1e-13), "{k}: {x}");
        }
    }

    #[test]
    fn ex_radii_regular() {
        let reg = Tetrahedron::regular();
        let r = reg.in_touch().unwrap().radius;
        for ex in reg.ex_spheres().unwrap() {
            assert!(close(ex.radius, 2.0 * r, 1e-13));
            assert!(ex.distance_residual < 1e-12);
        }
    }

    #[test]
    fn octahedron_volume() {
        let o = Tetrahedron::right_corner().medial_octahedron();
        assert!(close(o.volume, 1.0 / 12.0, 1e-15));
        assert_eq!(Tetrahedron::unit_square().medial_octahedron().volume, 0.0);
    }
}
