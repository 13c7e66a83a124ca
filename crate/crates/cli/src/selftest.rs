use std::time::Instant;

use hyperdepth::algebra::depth_function;
use hyperdepth::{
    build_certificate, edge_ideal, is_hyperforest, is_hypertree, parse_hypergraph,
    verify_certificate, Field, Hypergraph, InvariantKind, MixedIdealInstance,
};
use serde_json::{json, Value};

const THREE_TRIANGLES: &str = include_str!("../../../fixtures/three-triangles");
const GLUED_TRIANGLES: &str = include_str!("../../../fixtures/glued-triangles");
const TREE_A: &str = include_str!("../../../fixtures/tree-4321");
const TREE_B: &str = include_str!("../../../fixtures/tree-3331");

type Check<'a> = Box<dyn Fn() -> (bool, String) + 'a>;

fn fixture(text: &str) -> Hypergraph {
    parse_hypergraph(text).expect("bundled fixture parses")
}

fn depths(g: &Hypergraph, s_max: u32) -> Vec<usize> {
    depth_function(&edge_ideal(g), s_max, Field::Rationals)
        .map(|f| f.depths)
        .unwrap_or_default()
}

fn certificate_check(g: &Hypergraph) -> (bool, String) {
    let Ok(inst) = MixedIdealInstance::powers(g.clone(), 3) else {
        return (false, "instance rejected".into());
    };
    let mut notes = Vec::new();
    let mut pass = true;
    for kind in [InvariantKind::Epsilon, InvariantKind::Alpha2] {
        match build_certificate(&inst, kind, Field::Rationals) {
            Ok(cert) => {
                let replay = verify_certificate(&cert).is_ok();
                let mut bad = cert.clone();
                bad.root.w_size += 1;
                let rejected = verify_certificate(&bad).is_err();
                pass &= cert.all_ok && replay && rejected;
                notes.push(format!(
                    "{kind}: {} nodes, all_ok {}, replay {replay}, mutation rejected {rejected}",
                    cert.nodes, cert.all_ok
                ));
            }
            Err(e) => {
                pass = false;
                notes.push(format!("{kind}: {e}"));
            }
        }
    }
    (pass, notes.join("; "))
}

pub(crate) fn run(extended: bool) -> (Value, bool) {
    let tree_a = fixture(TREE_A);
    let tree_b = fixture(TREE_B);
    let s_max = if extended { 4 } else { 3 };
    let (want_a, want_b) = ([4, 3, 2, 1], [3, 3, 3, 1]);
    let mut checks: Vec<(String, Check<'_>)> = Vec::new();
    checks.push((
        "triangle forest verdicts".into(),
        Box::new(|| {
            let left = is_hyperforest(&fixture(THREE_TRIANGLES));
            let right = is_hypertree(&fixture(GLUED_TRIANGLES));
            (
                !left && right,
                format!("left forest {left}, right tree {right}"),
            )
        }),
    ));
    for (name, g, want) in [
        ("tree-4321", &tree_a, (2, 4)),
        ("tree-3331", &tree_b, (3, 3)),
    ] {
        checks.push((
            format!("{name} invariants"),
            Box::new(move || {
                let v = crate::invariants(g);
                let got = (
                    v["epsilon"].as_u64().unwrap_or(0),
                    v["alpha2"].as_u64().unwrap_or(0),
                );
                (
                    got == (want.0, want.1),
                    format!("epsilon {}, alpha2 {}", got.0, got.1),
                )
            }),
        ));
    }
    for (name, g, want) in [
        ("tree-4321", &tree_a, &want_a),
        ("tree-3331", &tree_b, &want_b),
    ] {
        checks.push((
            format!("{name} depth function"),
            Box::new(move || {
                let got = depths(g, s_max);
                (got == want[..s_max as usize], format!("{got:?}"))
            }),
        ));
    }
    checks.push((
        "tree-3331 certificates at s = 3".into(),
        Box::new(|| certificate_check(&tree_b)),
    ));

    let mut all_pass = true;
    let mut rows = Vec::new();
    for (name, check) in &checks {
        let start = Instant::now();
        let (pass, detail) = check();
        all_pass &= pass;
        rows.push(json!({"name": name, "pass": pass, "detail": detail, "elapsed_ms": start.elapsed().as_secs_f64() * 1000.0}));
    }
    (
        json!({"extended": extended, "checks": rows, "all_pass": all_pass}),
        all_pass,
    )
}
