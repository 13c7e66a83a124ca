mod common;

use common::fixture;
use hyperdepth::bounds::{verify_generic_invariant, verify_mixed};
use hyperdepth::certificate::{build_certificate_with, CertNode, ReplayError};
use hyperdepth::{
    alpha2, build_certificate, epsilon, random_forest, random_hyperforest, verify_alpha2_bound,
    verify_certificate, verify_epsilon_bound, Field, GenConfig, InvariantKind, LeafChoice,
    MixedIdealInstance,
};
use proptest::prelude::*;

const Q: Field = Field::Rationals;

fn levels(node: &CertNode) -> usize {
    1 + node.children.iter().map(levels).max().unwrap_or(0)
}

#[test]
fn fixture_bounds_up_to_cube() {
    let ga = fixture("tree-4321");
    let r = verify_epsilon_bound(&ga, 3, Q).unwrap();
    assert_eq!((r.depths(), r.bounds()), (vec![4, 3, 2], vec![2, 1, 1]));
    let r = verify_alpha2_bound(&ga, 3, Q).unwrap();
    assert_eq!(r.bounds(), r.depths());
    let gb = fixture("tree-3331");
    let e = verify_epsilon_bound(&gb, 3, Q).unwrap();
    assert_eq!((e.depths(), e.bounds()), (vec![3, 3, 3], vec![3, 2, 1]));
    assert!(e.holds);
    let a = verify_alpha2_bound(&gb, 3, Q).unwrap();
    assert_eq!(a.bounds(), e.bounds());
}

#[test]
fn mixed_reduces_to_powers() {
    let inst = MixedIdealInstance::powers(fixture("tree-4321"), 2).unwrap();
    let r = verify_mixed(&inst, InvariantKind::Epsilon, Q).unwrap();
    assert_eq!((r.depth, r.bound), (3, 1));
    let r = verify_mixed(&inst, InvariantKind::Alpha2, Q).unwrap();
    assert_eq!((r.depth, r.bound), (3, 3));
}

#[test]
fn right_hypertree_certificate() {
    let inst = MixedIdealInstance::powers(fixture("glued-triangles"), 2).unwrap();
    let cert = build_certificate(&inst, InvariantKind::Epsilon, Q).unwrap();
    assert!(cert.all_ok);
    assert_eq!(levels(&cert.root), 4);
    assert_eq!(verify_certificate(&cert), Ok(cert.nodes));
}

#[test]
fn generic_specializations() {
    let g = fixture("glued-triangles");
    let r = verify_generic_invariant(&g, "epsilon", &|h| epsilon(h).0, 3, Q).unwrap();
    let e = verify_epsilon_bound(&g, 3, Q).unwrap();
    assert_eq!(r.bound.depths(), e.depths());
    assert!(r.bound.holds && r.hypotheses_hold);
    let t = random_forest(&GenConfig {
        vertices: 7,
        max_edge_size: 2,
        edges: 6,
        seed: 5,
        connected: true,
    })
    .unwrap();
    let r = verify_generic_invariant(&t, "alpha2", &|h| alpha2(h).0, 3, Q).unwrap();
    let a = verify_alpha2_bound(&t, 3, Q).unwrap();
    assert_eq!(r.bound.depths(), a.depths());
    assert!(r
        .bound
        .rows
        .iter()
        .zip(&a.rows)
        .all(|(x, y)| x.bound <= y.bound));
    assert!(r.hypotheses_hold);
}

#[test]
fn both_packing_centers_in_z_occurs() {
    let mut found = 0;
    for seed in 0..300 {
        let n = 5 + (seed % 6) as usize;
        let t = random_forest(&GenConfig {
            vertices: n,
            max_edge_size: 2,
            edges: n - 1,
            seed,
            connected: true,
        })
        .unwrap();
        let inst = MixedIdealInstance::powers(t, 2).unwrap();
        let cert = build_certificate(&inst, InvariantKind::Alpha2, Q).unwrap();
        cert.root.walk("root", &mut |_, node| {
            if node.z_cap_s == Some(2) {
                assert!(node.inequality_ok);
                found += 1;
            }
        });
        if found > 0 {
            assert!(verify_certificate(&cert).is_ok());
            break;
        }
    }
    assert!(found > 0, "no node with two packing centers in Z");
}

fn mutate_w(node: &mut CertNode, target: usize, seen: &mut usize) -> bool {
    if !node.children.is_empty() {
        if *seen == target {
            node.w_size += 1;
            return true;
        }
        *seen += 1;
    }
    node.children.iter_mut().any(|c| mutate_w(c, target, seen))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn tree_certificates_replay(seed in any::<u64>(), n in 3usize..8, s in 2u32..4, pick in any::<usize>()) {
        let t = random_forest(&GenConfig { vertices: n, max_edge_size: 2, edges: n - 1, seed, connected: true }).unwrap();
        let inst = MixedIdealInstance::powers(t, s).unwrap();
        for kind in [InvariantKind::Epsilon, InvariantKind::Alpha2] {
            let cert = build_certificate(&inst, kind, Q).unwrap();
            prop_assert!(cert.all_ok);
            let mut decompositions = true;
            cert.root.walk("root", &mut |_, node| decompositions &= node.decomposition_ok.unwrap_or(true));
            prop_assert!(decompositions);
            prop_assert_eq!(verify_certificate(&cert), Ok(cert.nodes));
            let splits = {
                let mut k = 0;
                cert.root.walk("root", &mut |_, node| k += usize::from(!node.children.is_empty()));
                k
            };
            let mut bad = cert.clone();
            prop_assert!(mutate_w(&mut bad.root, pick % splits, &mut 0));
            let replay_rejects = matches!(verify_certificate(&bad), Err(ReplayError::Mismatch { field: "W_size", .. }));
            prop_assert!(replay_rejects);
        }
    }

    #[test]
    fn hyperforest_certificates_with_random_leaves(seed in any::<u64>(), edges in 1usize..5) {
        let g = random_hyperforest(&GenConfig { vertices: 3 * edges + 1, max_edge_size: 3, edges, seed, connected: false }).unwrap();
        let inst = MixedIdealInstance::powers(g, 2).unwrap();
        let cert = build_certificate_with(&inst, InvariantKind::Epsilon, Q, LeafChoice::Random(seed)).unwrap();
        prop_assert!(cert.all_ok);
        prop_assert_eq!(verify_certificate(&cert), Ok(cert.nodes));
    }
}
