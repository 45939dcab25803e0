use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::{json, Value};

fn run(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_hedron"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn hedron");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn run_json(args: &[&str], stdin: &Value) -> (i32, Value) {
    let (code, out, err) = run(args, &stdin.to_string());
    let doc = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out}\n{err}"));
    (code, doc)
}

fn f(v: &Value) -> f64 {
    v.as_f64().unwrap_or_else(|| panic!("not a number: {v}"))
}

fn right_corner() -> Value {
    json!({"vertices": [[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]})
}

#[test]
fn analyze_right_corner() {
    let (code, doc) = run_json(&["analyze"], &right_corner());
    assert_eq!(code, 0);
    assert_eq!(doc["schema"], "hedronometry/1");
    assert!(doc["conventions"]["f_interior"].is_string());
    let sc = &doc["scalars"];
    assert!((f(&sc["t"]) - 1.0).abs() < 1e-12);
    let r = 1.0 / (3.0 + 3f64.sqrt());
    assert!((f(&sc["r"]) - r).abs() < 1e-12);
    assert!((f(&sc["t4"]) - 1.0).abs() < 1e-12);
    // the in-sphere touches ABC at (r, r, 0): the contact triangle on AB has
    // base 1 and height r, the one on BC has base √2 and height (1 - 2r)/√2
    let n = &doc["naturals"];
    for k in ["u", "v", "w"] {
        assert!((f(&n[k]) - r).abs() < 1e-12, "{k}");
    }
    for k in ["x", "y", "z"] {
        assert!((f(&n[k]) - (1.0 - 2.0 * r)).abs() < 1e-12, "{k}");
    }
    assert_eq!(doc["validity"]["class"], "NonDegenerate3D");
    assert!(doc["degenerate"]["underivable"]["reason"].is_string());
}

#[test]
fn analyze_invalid_areas() {
    let areas = json!({"areas_f": {
        "ABC": 9.0, "ABD": 10.0, "ACD": 17.0, "BCD": 14.0,
        "AB|CD": 261f64.sqrt(), "AC|BD": 76f64.sqrt(), "AD|BC": 329f64.sqrt()
    }});
    let (code, doc) = run_json(&["analyze"], &areas);
    assert_eq!(code, 3);
    assert_eq!(doc["status"], "invalid_geometry");
    let v = &doc["validity"];
    assert_eq!(v["class"], "Invalid");
    assert_eq!(v["diagnosis"], "negative_gramian");
    assert!(f(&v["gamma"]) < 0.0);
    assert!(f(&v["xi"]).abs() < 1e-9);
    assert_eq!(doc["coordinates"]["underivable"]["reason"], "invalid_areas");
}

#[test]
fn analyze_naturals() {
    let input = json!({"naturals": {"u": 2, "v": 4, "w": 1, "x": 10, "y": 5, "z": 6}});
    let (code, doc) = run_json(&["analyze"], &input);
    assert_eq!(code, 0);
    let sc = &doc["scalars"];
    assert!((f(&sc["omega"]) - 476.0).abs() < 1e-9);
    assert!((f(&sc["s2_omega"]) - 1_492_736.0).abs() < 1e-6);
    assert!((f(&sc["t4"]) - 1_492_736.0).abs() < 1e-6);
    assert!((f(&sc["t"]).powi(4) - 1_492_736.0).abs() < 1e-6);
    let d = &doc["squared_distances"];
    for e in ["AB", "AC", "AD", "BC", "BD", "CD"] {
        assert!(f(&d[e]) > 0.0);
    }
}

#[test]
fn reconstruct_right_corner() {
    let s2 = 2f64.sqrt();
    let input = json!({"areas_f": {
        "ABC": 1.0, "ABD": 1.0, "ACD": 1.0, "BCD": 3f64.sqrt(), "AB|CD": s2, "AC|BD": s2, "AD|BC": s2
    }});
    let (code, doc) = run_json(&["reconstruct"], &input);
    assert_eq!(code, 0);
    let d: Vec<f64> = doc["sorted_squared_distances"].as_array().unwrap().iter().map(f).collect();
    for (got, want) in d.iter().zip([1.0, 1.0, 1.0, 2.0, 2.0, 2.0]) {
        assert!((got - want).abs() < 1e-9, "{d:?}");
    }
    assert_eq!(doc["checks"]["area_residual"]["ok"], true);
}

#[test]
fn classify_square() {
    let input = json!({"vertices": [[0, 0, 0], [1, 0, 0], [1, 1, 0], [0, 1, 0]]});
    let (code, doc) = run_json(&["classify"], &input);
    assert_eq!(code, 0);
    assert_eq!(doc["rank"], 1);
    let pc = &doc["planar_class"];
    assert_eq!(pc["vanishing_naturals"], json!(["v", "y"]));
    assert_eq!(pc["chirotope"]["kind"], "convex");
    assert!(!pc["candidates"].as_array().unwrap().is_empty());
}

#[test]
fn nsimplex_dim4() {
    let (code, doc) = run_json(&["conjectures", "nsimplex", "--dim", "4", "--trials", "100", "--seed", "7"], &json!({}));
    assert_eq!(code, 0);
    assert_eq!(doc["passes"], 100);
    assert!(f(&doc["max_residual"]) <= 1e-7);
    assert_eq!(doc["failures"], json!([]));
}

#[test]
fn byte_stable() {
    let args = ["conjectures", "two-to-two", "--trials", "40", "--seed", "11"];
    let (c1, a, _) = run(&args, "");
    let (c2, b, _) = run(&args, "");
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    let (_, x, _) = run(&["analyze"], &right_corner().to_string());
    let (_, y, _) = run(&["analyze"], &right_corner().to_string());
    assert_eq!(x, y);
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("hedron-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("out.json");
    let (code, out, _) = run(&["analyze", "--output", path.to_str().unwrap()], &right_corner().to_string());
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let (_, direct, _) = run(&["analyze"], &right_corner().to_string());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), direct);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn numbers_round_trip() {
    let (_, doc) = run_json(&["analyze"], &right_corner());
    let again = json!({"naturals": doc["naturals"].clone()});
    let (code, second) = run_json(&["analyze"], &again);
    assert_eq!(code, 0);
    assert_eq!(second["input"]["value"], doc["naturals"]);
}

#[test]
fn vertices_and_areas_agree() {
    let verts = json!({"vertices": [[0.1, 0.2, 0.3], [1.0, -0.2, 0.4], [0.3, 0.9, -0.5], [-0.4, 0.1, 0.8]]});
    let (_, a) = run_json(&["analyze"], &verts);
    let (code, b) = run_json(&["analyze"], &json!({"areas_f": a["areas"]["f"].clone()}));
    assert_eq!(code, 0);
    for section in ["naturals", "inverse_params", "squared_distances"] {
        for (k, x) in a[section].as_object().unwrap() {
            let y = &b[section][k];
            assert!((f(x) - f(y)).abs() <= 1e-9 * f(x).abs().max(1.0), "{section}.{k}: {x} vs {y}");
        }
    }
    for k in ["s", "omega", "t", "r", "t4"] {
        let (x, y) = (f(&a["scalars"][k]), f(&b["scalars"][k]));
        assert!((x - y).abs() <= 1e-9 * x.abs().max(1.0), "{k}: {x} vs {y}");
    }
}

#[test]
fn parse_errors() {
    assert_eq!(run(&["analyze"], "{not json").0, 2);
    let both = json!({"vertices": [[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]],
                      "naturals": {"u": 1, "v": 1, "w": 1, "x": 1, "y": 1, "z": 1}});
    assert_eq!(run(&["analyze"], &both.to_string()).0, 2);
    assert_eq!(run(&["analyze"], r#"{"naturals": {"u": 1}}"#).0, 2);
    assert_eq!(run(&["no-such-command"], "").0, 2);
    assert_eq!(run(&["conjectures", "nsimplex", "--dim", "7", "--trials", "1"], "").0, 2);
}

#[test]
fn solve_2to2_forms() {
    let far = json!({"abgd": {"alpha": 1.1, "beta": 0.9, "gamma": -1.2, "delta": -0.7}, "sigma": 40.0});
    let (code, doc) = run_json(&["solve-2to2"], &far);
    assert_eq!(code, 0);
    assert!(doc["solution"]["warning"].is_null());
    assert!(!doc["solution"]["solutions"].as_array().unwrap().is_empty());
    let below = json!({"abgd": {"alpha": 1.1, "beta": 0.9, "gamma": -1.2, "delta": -0.7}, "sigma": 0.1});
    let (code, doc) = run_json(&["solve-2to2"], &below);
    assert_eq!(code, 3);
    assert_eq!(doc["error"]["code"], "no_solution");
}

#[test]
fn degenerate_round() {
    // squeeze limit of a generic tetrahedron along (0, 0, 1): the areal
    // vectors lose their z components
    let v = [[0.1, 0.2, 0.3], [1.0, -0.2, 0.4], [0.3, 0.9, -0.5], [-0.4, 0.1, 0.8]];
    let e = |a: usize, b: usize| -> [f64; 3] { std::array::from_fn(|i| v[b][i] - v[a][i]) };
    let cr = |p: [f64; 3], q: [f64; 3]| (p[1] * q[2] - p[2] * q[1]).hypot(p[2] * q[0] - p[0] * q[2]);
    let input = json!({"areas_f": {
        "ABC": cr(e(0, 1), e(0, 2)), "ABD": cr(e(0, 1), e(0, 3)), "ACD": cr(e(0, 2), e(0, 3)),
        "BCD": cr(e(1, 2), e(1, 3)), "AB|CD": cr(e(0, 1), e(2, 3)), "AC|BD": cr(e(0, 2), e(1, 3)),
        "AD|BC": cr(e(0, 3), e(1, 2))
    }});
    let (code, doc) = run_json(&["analyze"], &input);
    assert_eq!(code, 0);
    assert_eq!(doc["validity"]["class"], "Rank2Degenerate");
    assert_eq!(doc["coordinates"]["underivable"]["reason"], "rank_two_areas");
    assert_eq!(doc["degenerate"]["plucker"]["orbit_size"], 16);

    let (code, doc) = run_json(&["involution", "reciprocal"], &input);
    assert_eq!(code, 0);
    assert!(f(&doc["commutator_with_twin"]) > 1e-3);

    let (code, doc) = run_json(&["involution", "orbit", "--max-iter", "50"], &input);
    assert_eq!(code, 0);
    assert_eq!(doc["orbits"].as_array().unwrap().len(), 2);

    let (code, _) = run_json(&["involution", "reciprocal"], &right_corner());
    assert_eq!(code, 3);
}

#[test]
fn twin_and_fiedler() {
    let verts = json!({"vertices": [[0.1, 0.2, 0.3], [1.0, -0.2, 0.4], [0.3, 0.9, -0.5], [-0.4, 0.1, 0.8]]});
    for op in ["twin", "fiedler"] {
        let (code, doc) = run_json(&["involution", op], &verts);
        assert_eq!(code, 0, "{op}");
        assert!(doc["vertices"]["D"].is_array());
    }
}

#[test]
fn tight_tolerance_exit_code() {
    let (code, doc) = run_json(&["involution", "twin", "--tol", "0"], &json!({
        "vertices": [[0.1, 0.2, 0.3], [1.0, -0.2, 0.4], [0.3, 0.9, -0.5], [-0.4, 0.1, 0.8]]
    }));
    assert_eq!(code, 4);
    assert_eq!(doc["status"], "tolerance_failure");
}

#[test]
fn experiments_run() {
    let (code, doc) = run_json(&["conjectures", "canmap", "--trials", "5", "--seed", "2"], &json!({}));
    assert_eq!(code, 0);
    assert_eq!(doc["starts_agree"], 5);
    assert!(f(&doc["max_limit_residual"]) < 1e-9);
    let (code, doc) = run_json(&["conjectures", "involution-order", "--trials", "5", "--max-iter", "50"], &json!({}));
    assert_eq!(code, 0);
    assert_eq!(doc["records"].as_array().unwrap().len() + doc["failures"].as_array().unwrap().len(), 5);
}
