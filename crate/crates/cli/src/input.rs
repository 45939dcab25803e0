//! Input documents. Exactly one geometric form is expected per document.

use std::collections::BTreeMap;

use hedronometry::natural::{NaturalParams, PARAM_NAMES};
use hedronometry::param2to2::AbgdParams;
use hedronometry::tetra::{FacialAreas, SquaredDistances, Tetrahedron, EDGE_NAMES, FACE_NAMES};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::json::{keyed, nums};

const ABGD_NAMES: [&str; 4] = ["alpha", "beta", "gamma", "delta"];

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInput {
    vertices: Option<[[f64; 3]; 4]>,
    squared_distances: Option<BTreeMap<String, f64>>,
    areas_f: Option<BTreeMap<String, f64>>,
    squared_areas: Option<BTreeMap<String, f64>>,
    naturals: Option<BTreeMap<String, f64>>,
    abgd: Option<BTreeMap<String, f64>>,
    sigma: Option<f64>,
}

#[derive(Clone, Debug)]
pub enum Input {
    Vertices(Tetrahedron),
    Distances(SquaredDistances),
    /// Areas in the `f` convention.
    Areas(FacialAreas),
    /// Squared areas `F`, kept as given so that signs survive.
    SquaredAreas([f64; 7]),
    Naturals(NaturalParams),
    Abgd(AbgdParams, f64),
}

fn named<const N: usize>(form: &str, map: &BTreeMap<String, f64>, names: &[&str; N]) -> Result<[f64; N], String> {
    if let Some(extra) = map.keys().find(|k| !names.contains(&k.as_str())) {
        return Err(format!("{form}: unexpected key {extra:?}"));
    }
    let mut out = [0.0; N];
    for (slot, name) in out.iter_mut().zip(names) {
        *slot = *map.get(*name).ok_or_else(|| format!("{form}: missing key {name:?}"))?;
        if !slot.is_finite() {
            return Err(format!("{form}: {name} is not finite"));
        }
    }
    Ok(out)
}

pub fn parse(text: &str) -> Result<Input, String> {
    let raw: RawInput = serde_json::from_str(text).map_err(|e| format!("malformed input: {e}"))?;
    let mut forms = Vec::new();
    if let Some(v) = raw.vertices {
        if v.iter().flatten().any(|x| !x.is_finite()) {
            return Err("vertices: coordinates must be finite".into());
        }
        forms.push(Input::Vertices(Tetrahedron::new(v[0], v[1], v[2], v[3])));
    }
    if let Some(m) = &raw.squared_distances {
        forms.push(Input::Distances(SquaredDistances::new(named("squared_distances", m, &EDGE_NAMES)?)));
    }
    if let Some(m) = &raw.areas_f {
        let f = named("areas_f", m, &FACE_NAMES)?;
        if f.iter().any(|x| *x < 0.0) {
            return Err("areas_f: areas must be non-negative".into());
        }
        forms.push(Input::Areas(FacialAreas::new(f)));
    }
    if let Some(m) = &raw.squared_areas {
        forms.push(Input::SquaredAreas(named("squared_areas", m, &FACE_NAMES)?));
    }
    if let Some(m) = &raw.naturals {
        forms.push(Input::Naturals(NaturalParams(named("naturals", m, &PARAM_NAMES)?)));
    }
    match (&raw.abgd, raw.sigma) {
        (Some(m), Some(sigma)) => {
            let [a, b, g, d] = named("abgd", m, &ABGD_NAMES)?;
            forms.push(Input::Abgd(AbgdParams::new(a, b, g, d), sigma));
        }
        (None, None) => {}
        _ => return Err("abgd and sigma must be given together".into()),
    }
    match forms.len() {
        0 => Err("no input form present".into()),
        1 => Ok(forms.pop().unwrap()),
        _ => Err("more than one input form present".into()),
    }
}

impl Input {
    pub fn form(&self) -> &'static str {
        match self {
            Input::Vertices(_) => "vertices",
            Input::Distances(_) => "squared_distances",
            Input::Areas(_) => "areas_f",
            Input::SquaredAreas(_) => "squared_areas",
            Input::Naturals(_) => "naturals",
            Input::Abgd(..) => "abgd",
        }
    }

    pub fn echo(&self) -> Value {
        let body = match self {
            Input::Vertices(t) => Value::Array(t.vertices.iter().map(|p| nums(p)).collect()),
            Input::Distances(d) => keyed(&EDGE_NAMES, &d.d),
            Input::Areas(f) => keyed(&FACE_NAMES, &f.f),
            Input::SquaredAreas(sq) => keyed(&FACE_NAMES, sq),
            Input::Naturals(n) => keyed(&PARAM_NAMES, &n.0),
            Input::Abgd(p, sigma) => json!({"abgd": keyed(&ABGD_NAMES, &p.to_array()), "sigma": crate::json::num(*sigma)}),
        };
        json!({ "form": self.form(), "value": body })
    }

    /// Squared areas when the form determines them directly.
    pub fn squared_areas(&self) -> Option<[f64; 7]> {
        match self {
            Input::Vertices(t) => Some(t.squared_areas()),
            Input::Distances(d) => Some(hedronometry::areal::cm_determinants(d).squared_areas()),
            Input::Areas(f) => Some(f.squared()),
            Input::SquaredAreas(sq) => Some(*sq),
            Input::Naturals(n) => Some(hedronometry::natural::squared_areas_from_natural(n)),
            Input::Abgd(..) => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_form_only() {
        assert!(parse(r#"{"naturals": {"u":1,"v":1,"w":1,"x":0,"y":0,"z":0}}"#).is_ok());
        assert!(parse(r#"{"naturals": {"u":1,"v":1,"w":1,"x":0,"y":0}}"#).is_err());
        assert!(parse(r#"{}"#).is_err());
        assert!(parse(r#"{"vertices": [[0,0,0],[1,0,0],[0,1,0],[0,0,1]], "sigma": 2}"#).is_err());
        assert!(parse(r#"{"colour": 1}"#).is_err());
    }
}
