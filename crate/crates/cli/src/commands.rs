//! Single-input commands. Each returns a document body and a status; the
//! caller adds the schema header and picks the exit code.

use hedronometry::areal::{gramian, tau_table, validity_report, InvalidReason, Validity, ValidityReport};
use hedronometry::degeneracy::{
    collinear_quadruple, mn_from_degenerate, plucker_from_natural, rank_and_lattice, z24_orbit, LatticeNode,
};
use hedronometry::involutions::{
    commutator_residual, fiedler_report, involution_orbit, reciprocal, sorted_distances, twin, twin_areas,
    twin_tetrahedron, OrbitResult, OrbitStatus,
};
use hedronometry::natural::{
    areas_from_natural, distances_from_natural, identity_suite, inverse_from_areas, inverse_from_natural,
    natural_from_areas, omega, NaturalParams, PARAM_NAMES,
};
use hedronometry::param2to2::{abgd_from_natural, solve_2to2, AbgdParams, TwoToTwo};
use hedronometry::planar::{canonical_planar_auto, CLASS_TOL, classify_planar, Classification, PlanarClass};
use hedronometry::reconstruction::{coords_from_distances, invert_area_map, reconstruct_from_areas, Branch};
use hedronometry::tetra::{FacialAreas, SquaredDistances, Tetrahedron, EDGE_NAMES, FACE_NAMES, VERTEX_NAMES};
use hedronometry::Error;
use serde_json::{json, Map, Value};

use crate::input::Input;
use crate::json::{keyed, num, nums, underivable};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Invalid,
    Tolerance,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Invalid => "invalid_geometry",
            Status::Tolerance => "tolerance_failure",
        }
    }

    pub fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Invalid => 3,
            Status::Tolerance => 4,
        }
    }

    fn worst(self, other: Status) -> Status {
        if self.exit_code() >= other.exit_code() {
            self
        } else {
            other
        }
    }
}

pub struct Report {
    pub body: Map<String, Value>,
    pub status: Status,
}

/// `Err` means the input was acceptable JSON but not a form the command takes.
pub type CmdResult = Result<Report, String>;

impl Report {
    fn new() -> Self {
        Report { body: Map::new(), status: Status::Ok }
    }

    fn set(&mut self, key: &str, v: Value) {
        self.body.insert(key.to_string(), v);
    }

    fn flag(&mut self, s: Status) {
        self.status = self.status.worst(s);
    }

    /// Records a library error as a geometric diagnosis.
    fn fail(mut self, e: &Error) -> Self {
        self.set("error", error_value(e));
        self.flag(Status::Invalid);
        self
    }

    fn tolerance(&mut self, name: &str, value: f64, tol: f64) {
        let ok = value <= tol;
        let entry = json!({ "value": num(value), "tolerance": num(tol), "ok": ok });
        match self.body.get_mut("checks") {
            Some(Value::Object(m)) => {
                m.insert(name.to_string(), entry);
            }
            _ => {
                let mut m = Map::new();
                m.insert(name.to_string(), entry);
                self.set("checks", Value::Object(m));
            }
        }
        if !ok {
            self.flag(Status::Tolerance);
        }
    }
}

pub fn error_code(e: &Error) -> &'static str {
    match e {
        Error::NonFinite(_) => "non_finite",
        Error::NoConvergence { .. } => "no_convergence",
        Error::DegenerateTetrahedron { .. } => "degenerate_tetrahedron",
        Error::ExSphereUndefined { .. } => "ex_sphere_undefined",
        Error::NegativeParameter { .. } => "negative_parameter",
        Error::DegenerateParameters(_) => "degenerate_parameters",
        Error::InvalidParameters(_) => "invalid_parameters",
        Error::DegenerateSimplex => "degenerate_simplex",
        Error::InvalidAreas(_) => "invalid_areas",
        Error::NotRealizable { .. } => "not_realizable",
        Error::YetterViolated { .. } => "yetter_violated",
        Error::DegenerateGramian => "degenerate_gramian",
        Error::DegenerateInput => "degenerate_input",
        Error::WrongRank { .. } => "wrong_rank",
        Error::NotDegenerate => "not_degenerate",
        Error::NotRank1 => "not_rank_one",
        Error::InconsistentAreas(_) => "inconsistent_areas",
        Error::DegenerateBase => "degenerate_base",
        Error::CoincidentPoints(..) => "coincident_points",
        Error::NoSolution(_) => "no_solution",
        Error::InvalidArgument(_) => "invalid_argument",
    }
}

pub fn error_value(e: &Error) -> Value {
    json!({ "code": error_code(e), "message": e.to_string() })
}

fn reason_code(r: InvalidReason) -> &'static str {
    match r {
        InvalidReason::YetterViolated => "yetter_violated",
        InvalidReason::TetrahedronInequality => "tetrahedron_inequality",
        InvalidReason::NegativeGramian => "negative_gramian",
    }
}

pub fn vertices_value(t: &Tetrahedron) -> Value {
    let mut m = Map::new();
    for (name, p) in VERTEX_NAMES.iter().zip(&t.vertices) {
        m.insert(name.to_string(), nums(p));
    }
    Value::Object(m)
}

fn distances_value(d: &SquaredDistances) -> Value {
    keyed(&EDGE_NAMES, &d.d)
}

fn areas_value(f: &FacialAreas) -> Value {
    json!({ "f": keyed(&FACE_NAMES, &f.f), "F": keyed(&FACE_NAMES, &f.squared()) })
}

pub fn naturals_value(n: &NaturalParams) -> Value {
    keyed(&PARAM_NAMES, &n.0)
}

fn validity_value(rep: &ValidityReport) -> Value {
    let mut v = json!({
        "class": rep.validity.name(),
        "xi": num(rep.xi),
        "min_tau": num(rep.min_tau),
        "gamma": num(rep.gamma),
        "rank": rep.rank,
    });
    if let Validity::Invalid(r) = rep.validity {
        v["diagnosis"] = json!(reason_code(r));
    }
    v
}

fn lattice_value(node: &LatticeNode) -> Value {
    let mut vanishing = Map::new();
    for (name, b) in PARAM_NAMES.iter().zip(node.vanishing) {
        vanishing.insert(format!("{name}{name}~"), json!(b));
    }
    json!({
        "degenerate": node.degenerate,
        "rank": node.rank,
        "vanishing_products": vanishing,
        "consistent": node.consistent,
    })
}

fn chirotope_value(class: &PlanarClass) -> Value {
    let case = class.chirotope_case;
    if case < 4 {
        json!({ "case": case, "kind": "triangle", "interior_vertex": VERTEX_NAMES[case].to_string() })
    } else {
        let crossing = ["AB|CD", "AC|BD", "AD|BC"][case - 4];
        json!({ "case": case, "kind": "convex", "crossing_pair": crossing })
    }
}

fn class_value(class: &PlanarClass) -> Value {
    json!({
        "class_id": class.class_id,
        "chirotope": chirotope_value(class),
        "barycentric_signs": class.signs.to_vec(),
        "signature": class.signature.to_vec(),
    })
}

fn classification_value(c: &Classification) -> Value {
    let flags = |v: [bool; 6]| -> Value {
        let names: Vec<&str> = PARAM_NAMES.iter().zip(v).filter(|(_, b)| *b).map(|(n, _)| *n).collect();
        json!(names)
    };
    json!({
        "candidates": c.candidates.iter().map(class_value).collect::<Vec<_>>(),
        "unique": c.unique().map(|k| json!(k.class_id)).unwrap_or(Value::Null),
        "chirotope": c.candidates.first().filter(|_| c.chirotope_case().is_some()).map(chirotope_value).unwrap_or(Value::Null),
        "vanishing_naturals": flags(c.vanishing_natural),
        "vanishing_inverse": flags(c.vanishing_inverse),
    })
}

/// Facial areas carried by any geometric form.
fn areas_of(input: &Input) -> Result<FacialAreas, String> {
    match input {
        Input::Areas(f) => Ok(f.clone()),
        Input::Abgd(..) => Err("this command does not accept the abgd form".into()),
        other => Ok(FacialAreas::from_squared(&other.squared_areas().expect("geometric form"))),
    }
}

fn naturals_of(input: &Input, f: &FacialAreas) -> NaturalParams {
    match input {
        Input::Naturals(n) => n.clone(),
        _ => natural_from_areas(f),
    }
}

/// Coordinates when the form pins them down.
fn tetra_of(input: &Input) -> Option<Result<Tetrahedron, Error>> {
    match input {
        Input::Vertices(t) => Some(Ok(t.clone())),
        Input::Distances(d) => Some(coords_from_distances(d, 3)),
        _ => None,
    }
}

pub fn analyze(input: &Input) -> CmdResult {
    let mut r = Report::new();
    r.set("input", input.echo());
    if let Input::Naturals(n) = input {
        if let Some(k) = n.0.iter().position(|x| *x < 0.0) {
            return Ok(r.fail(&Error::NegativeParameter { name: PARAM_NAMES[k], value: n.0[k] }));
        }
    }
    let f = areas_of(input)?;
    let sq = f.squared();
    let n = naturals_of(input, &f);
    let inv = match input {
        Input::Naturals(n) => inverse_from_natural(n),
        _ => inverse_from_areas(&f),
    };
    let s = f.s();
    let rep = validity_report(&f);
    r.set("areas", areas_value(&f));
    let tau = tau_table(&f);
    let mut tau_map = Map::new();
    for (name, row) in EDGE_NAMES.iter().zip(&tau.tau) {
        tau_map.insert(name.to_string(), nums(row));
    }
    r.set("tau", Value::Object(tau_map));
    r.set("validity", validity_value(&rep));
    r.set("gram_eigenvalues", nums(&rep.eigenvalues));
    r.set("naturals", naturals_value(&n));
    r.set("inverse_params", keyed(&PARAM_NAMES, &inv.0));
    let om = omega(&n);
    let t4 = gramian(&sq, 0);
    let mut scalars = json!({
        "s": num(s),
        "omega": num(om),
        "t4": num(t4),
        "s2_omega": num(s * s * om),
    });
    if let Validity::Invalid(_) = rep.validity {
        r.flag(Status::Invalid);
        let why = "areas are not those of a Euclidean tetrahedron";
        r.set("coordinates", underivable("invalid_areas", why));
        r.set("squared_distances", underivable("invalid_areas", why));
        r.set("scalars", scalars);
        return Ok(r);
    }

    // coordinates and distances
    let nondegenerate = rep.validity == Validity::NonDegenerate3D;
    let tetra = match tetra_of(input) {
        Some(Ok(t)) => Some(t),
        Some(Err(e)) => return Ok(r.fail(&e)),
        None if nondegenerate => {
            let t = match input {
                Input::Naturals(n) => distances_from_natural(n).and_then(|d| coords_from_distances(&d, 3)),
                _ => reconstruct_from_areas(&f).map(|x| x.vertices),
            };
            match t {
                Ok(t) => Some(t),
                Err(e) => return Ok(r.fail(&e)),
            }
        }
        None => None,
    };
    match &tetra {
        Some(t) => {
            r.set("coordinates", vertices_value(t));
            r.set("squared_distances", distances_value(&t.squared_distances()));
            let vol = t.volume_t();
            scalars["t"] = num(vol);
            if let Ok(it) = t.in_touch() {
                scalars["r"] = num(it.radius);
                r.set("insphere", json!({ "center": nums(&it.center), "radius": num(it.radius) }));
            } else {
                scalars["r"] = num(0.0);
            }
        }
        None => {
            let (code, why) = if rep.rank == 2 {
                ("rank_two_areas", "flat configurations with rank-two areas do not determine distances")
            } else {
                ("planar_family", "rank-one areas fix a family of planar quadruples; see canonical-planar")
            };
            r.set("coordinates", underivable(code, why));
            r.set("squared_distances", underivable(code, why));
            scalars["t"] = num(t4.max(0.0).sqrt().sqrt());
            scalars["r"] = num(0.0);
        }
    }
    r.set("scalars", scalars);
    r.set(
        "identity_residual",
        num(identity_suite(&n, &inv, &f, tetra.as_ref()).max_relative),
    );

    if !nondegenerate {
        r.set("degenerate", degenerate_section(&f, &n, rep.rank));
    } else {
        r.set("degenerate", underivable("not_degenerate", "the volume is positive"));
    }
    Ok(r)
}

fn degenerate_section(f: &FacialAreas, n: &NaturalParams, rank: usize) -> Value {
    // round-off can leave a vanishing parameter slightly negative
    let floor = CLASS_TOL * n.s().abs();
    let n = &NaturalParams(n.0.map(|x| if x < 0.0 && x >= -floor { 0.0 } else { x }));
    let mut m = Map::new();
    match rank_and_lattice(f) {
        Ok(node) => m.insert("lattice".into(), lattice_value(&node)),
        Err(e) => m.insert("lattice".into(), json!({ "error": error_value(&e) })),
    };
    match plucker_from_natural(n) {
        Ok(p) => {
            let orbit = z24_orbit(&p);
            m.insert(
                "plucker".into(),
                json!({
                    "p": keyed(&EDGE_NAMES, &p.0),
                    "identity_residual": num(p.identity_residual()),
                    "orbit_size": orbit.len(),
                }),
            )
        }
        Err(e) => m.insert("plucker".into(), underivable(error_code(&e), e.to_string())),
    };
    match collinear_quadruple(n) {
        Ok(q) => m.insert(
            "collinear_quadruple".into(),
            json!({
                "positions": nums(&q.positions),
                "ptolemy_factor": q.factor,
                "max_gap_residual": num(q.max_gap_residual()),
            }),
        ),
        Err(e) => m.insert("collinear_quadruple".into(), underivable(error_code(&e), e.to_string())),
    };
    if rank == 2 {
        if let Ok(mn) = mn_from_degenerate(f) {
            m.insert("mn".into(), json!({ "m": nums(&mn.m), "n": nums(&mn.n) }));
        }
        m.insert("planar_class".into(), underivable("rank_two", "planar classes apply to rank one only"));
    } else {
        let inv = inverse_from_natural(n);
        match classify_planar(n, &inv) {
            Ok(c) => m.insert("planar_class".into(), classification_value(&c)),
            Err(e) => m.insert("planar_class".into(), underivable(error_code(&e), e.to_string())),
        };
    }
    Value::Object(m)
}

pub fn reconstruct(input: &Input, tol: f64) -> CmdResult {
    let mut r = Report::new();
    r.set("input", input.echo());
    let f = areas_of(input)?;
    match reconstruct_from_areas(&f) {
        Ok(res) => {
            r.set("vertices", vertices_value(&res.vertices));
            r.set("squared_distances", distances_value(&res.vertices.squared_distances()));
            r.set("sorted_squared_distances", nums(&sorted_distances(&res.vertices)));
            r.set("achieved_areas", areas_value(&res.achieved_f));
            r.set("chirality", json!(res.chirality));
            r.tolerance("area_residual", res.residual, tol);
            Ok(r)
        }
        Err(e) => Ok(r.fail(&e)),
    }
}

pub fn classify(input: &Input) -> CmdResult {
    let mut r = Report::new();
    r.set("input", input.echo());
    let f = areas_of(input)?;
    let rep = validity_report(&f);
    r.set("validity", validity_value(&rep));
    if let Validity::Invalid(_) = rep.validity {
        r.flag(Status::Invalid);
        return Ok(r);
    }
    let n = naturals_of(input, &f);
    r.set("rank", json!(rep.rank));
    match rank_and_lattice(&f) {
        Ok(node) => r.set("lattice", lattice_value(&node)),
        Err(e) => return Ok(r.fail(&e)),
    }
    let inv = inverse_from_natural(&n);
    match rep.rank {
        1 | 0 => match classify_planar(&n, &inv) {
            Ok(c) => r.set("planar_class", classification_value(&c)),
            Err(e) => return Ok(r.fail(&e)),
        },
        2 => r.set("planar_class", underivable("rank_two", "planar classes apply to rank one only")),
        _ => r.set("planar_class", underivable("not_degenerate", "the volume is positive")),
    }
    Ok(r)
}

pub fn canonical_planar(input: &Input, tol: f64) -> CmdResult {
    let mut r = Report::new();
    r.set("input", input.echo());
    let sq = input.squared_areas().ok_or("canonical-planar needs squared areas")?;
    match canonical_planar_auto(&sq) {
        Ok(c) => {
            let mut coords = Map::new();
            for (name, p) in VERTEX_NAMES.iter().zip(&c.coordinates) {
                coords.insert(name.to_string(), nums(p));
            }
            r.set("coordinates", Value::Object(coords));
            r.set("squared_distances", distances_value(&c.d_star));
            r.set("gyration", num(c.gyration));
            r.set("barycentric", nums(&c.alpha));
            r.set("weights", nums(&c.rho));
            r.set("gradient_residual", num(c.gradient_residual));
            r.tolerance("area_residual", c.area_residual, tol);
            Ok(r)
        }
        Err(e) => Ok(r.fail(&e)),
    }
}

pub fn invert_areas(input: &Input, tol: f64) -> CmdResult {
    let mut r = Report::new();
    r.set("input", input.echo());
    let sq = input.squared_areas().ok_or("invert-areas needs squared areas")?;
    match invert_area_map(&sq) {
        Ok(w) => {
            r.set("squared_distances", distances_value(&w.d_star));
            r.set("branch", json!(if w.branch == Branch::Plus { "plus" } else { "minus" }));
            r.set("delta_star", num(w.delta_star));
            r.tolerance("area_residual", w.residual, tol);
            Ok(r)
        }
        Err(e) => Ok(r.fail(&e)),
    }
}

pub fn involution_twin(input: &Input, tol: f64) -> CmdResult {
    let mut r = Report::new();
    r.set("input", input.echo());
    if let Some(t) = tetra_of(input) {
        let t = match t {
            Ok(t) => t,
            Err(e) => return Ok(r.fail(&e)),
        };
        match twin_tetrahedron(&t) {
            Ok((tw, rep)) => {
                r.set("vertices", vertices_value(&tw));
                r.set("squared_distances", distances_value(&tw.squared_distances()));
                r.set("areas", areas_value(&tw.facial_areas()));
                r.set(
                    "preserved",
                    json!({
                        "interior_areas": num(rep.interior_areas),
                        "surface": num(rep.surface),
                        "volume": num(rep.volume),
                        "inradius": num(rep.inradius),
                        "inverse_params": num(rep.inverse_params),
                        "opposite_distance_products": num(rep.opposite_distance_products),
                        "opposite_dot_products": num(rep.opposite_dot_products),
                    }),
                );
                r.tolerance("max_preserved_residual", rep.max(), tol);
                Ok(r)
            }
            Err(e) => Ok(r.fail(&e)),
        }
    } else if let Input::Naturals(n) = input {
        let tw = twin(n);
        r.set("naturals", naturals_value(&tw));
        match areas_from_natural(&tw) {
            Ok(f) => r.set("areas", areas_value(&f)),
            Err(e) => r.set("areas", underivable(error_code(&e), e.to_string())),
        }
        Ok(r)
    } else {
        let f = areas_of(input)?;
        let tw = twin_areas(&f);
        r.set("areas", areas_value(&tw));
        r.set("naturals", naturals_value(&natural_from_areas(&tw)));
        Ok(r)
    }
}

pub fn involution_fiedler(input: &Input, tol: f64) -> CmdResult {
    let mut r = Report::new();
    r.set("input", input.echo());
    let t = match tetra_of(input) {
        Some(Ok(t)) => t,
        Some(Err(e)) => return Ok(r.fail(&e)),
        None => match reconstruct_from_areas(&areas_of(input)?) {
            Ok(res) => res.vertices,
            Err(e) => return Ok(r.fail(&e)),
        },
    };
    match fiedler_report(&t) {
        Ok(rep) => {
            r.set("vertices", vertices_value(&rep.inverse));
            r.set("squared_distances", distances_value(&rep.inverse.squared_distances()));
            r.set(
                "residuals",
                json!({
                    "det_g_int": num(rep.det_g_int),
                    "volume": num(rep.volume),
                    "areal_lineal": num(rep.areal_lineal),
                    "pinv_lineal": num(rep.pinv_lineal),
                }),
            );
            r.tolerance("round_trip", rep.round_trip, tol);
            Ok(r)
        }
        Err(e) => Ok(r.fail(&e)),
    }
}

pub fn involution_reciprocal(input: &Input) -> CmdResult {
    let mut r = Report::new();
    r.set("input", input.echo());
    let f = areas_of(input)?;
    let once = match reciprocal(&f) {
        Ok(x) => x,
        Err(e) => return Ok(r.fail(&e)),
    };
    r.set("areas", areas_value(&once));
    // whether applying it twice returns the input is measured, not assumed
    let twice = match reciprocal(&once) {
        Ok(x) => json!({ "areas": areas_value(&x), "deviation_from_input": num(f.max_relative_deviation(&x)) }),
        Err(e) => underivable(error_code(&e), e.to_string()),
    };
    r.set("applied_twice", twice);
    match commutator_residual(&f) {
        Ok(c) => r.set("commutator_with_twin", num(c)),
        Err(e) => r.set("commutator_with_twin", underivable(error_code(&e), e.to_string())),
    }
    Ok(r)
}

pub fn orbit_value(o: &OrbitResult) -> Value {
    let status = match &o.status {
        OrbitStatus::Cycle(k) => json!({ "kind": "cycle", "length": k }),
        OrbitStatus::Exhausted => json!({ "kind": "exhausted" }),
        OrbitStatus::Failed(why) => json!({ "kind": "failed", "detail": why }),
    };
    json!({
        "composition": o.composition.name(),
        "status": status,
        "iterations": o.iterations,
        "closest_return": { "distance": num(o.closest_return.0), "step": o.closest_return.1 },
        "max_xi": num(o.max_xi),
    })
}

pub fn involution_orbit_cmd(input: &Input, max_iter: usize, tol: f64) -> CmdResult {
    let mut r = Report::new();
    r.set("input", input.echo());
    let f = areas_of(input)?;
    match involution_orbit(&f, max_iter, tol) {
        Ok(rep) => {
            r.set("orbits", Value::Array(rep.orbits.iter().map(orbit_value).collect()));
            r.set("commutator", num(rep.commutator));
            r.set("tolerance", num(tol));
            Ok(r)
        }
        Err(e) => Ok(r.fail(&e)),
    }
}

pub fn two_to_two_value(sol: &TwoToTwo) -> Value {
    json!({
        "rho_plus": num(sol.rho_plus),
        "psi": {
            "coefficients": nums(&sol.psi.coefficients),
            "roots": nums(&sol.psi.roots),
            "discriminant": num(sol.psi.discriminant),
        },
        "solutions": sol.solutions.iter().map(naturals_value).collect::<Vec<_>>(),
        "warning": sol.warning.as_ref().map(|w| json!({ "kind": "conditioning", "root_spread": num(w.root_spread) })).unwrap_or(Value::Null),
        "residual": num(sol.residual),
        "pairing": sol.pairing.map(|p| nums(&p)).unwrap_or(Value::Null),
    })
}

pub fn max_rel(a: &[f64], b: &[f64]) -> f64 {
    let scale = a.iter().chain(b).fold(0.0f64, |m, x| m.max(x.abs())).max(f64::MIN_POSITIVE);
    a.iter().zip(b).map(|(x, y)| (x - y).abs() / scale).fold(0.0, f64::max)
}

pub fn solve_two_to_two(input: &Input, tol: f64) -> CmdResult {
    let mut r = Report::new();
    r.set("input", input.echo());
    let (p, sigma, target): (AbgdParams, f64, Option<&NaturalParams>) = match input {
        Input::Abgd(p, sigma) => (*p, *sigma, None),
        Input::Naturals(n) => match abgd_from_natural(n) {
            Ok(rep) => match rep.signed {
                Some(p) => (p, n.s(), Some(n)),
                None => return Ok(r.fail(&Error::NotDegenerate)),
            },
            Err(e) => return Ok(r.fail(&e)),
        },
        _ => return Err("solve-2to2 takes the abgd or naturals form".into()),
    };
    r.set("abgd", nums(&p.to_array()));
    r.set("sigma", num(sigma));
    match solve_2to2(&p, sigma) {
        Ok(sol) => {
            r.set("solution", two_to_two_value(&sol));
            if let Some(n) = target {
                let best = sol.solutions.iter().map(|m| max_rel(&m.0, &n.0)).fold(f64::INFINITY, f64::min);
                r.tolerance("input_recovered", best, tol);
            }
            Ok(r)
        }
        Err(e) => Ok(r.fail(&e)),
    }
}
