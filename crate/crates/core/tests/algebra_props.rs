mod common;

use std::collections::BTreeSet;

use common::{arb_hypergraph, arb_ideal, fixture, hochster_pd, k_polynomial, taylor_betti};
use hyperdepth::algebra::{betti, depth_quotient, lcm_lattice, pd, LatticeWalker, DEFAULT_PRIME};
use hyperdepth::forest::good_leaves;
use hyperdepth::{
    edge_ideal, random_forest, random_hyperforest, Field, GenConfig, Monomial, MonomialIdeal,
};
use proptest::prelude::*;

fn engine_table(
    j: &MonomialIdeal,
    field: Field,
) -> std::collections::BTreeMap<(usize, Vec<u16>), usize> {
    betti(j, field)
        .unwrap()
        .entries()
        .map(|(i, a, r)| ((i, a.exponents().to_vec()), r))
        .collect()
}

#[test]
fn fixture_ideal_listing() {
    let g = fixture("tree-4321");
    let i = edge_ideal(&g);
    assert_eq!(i.num_vars(), 12);
    assert_eq!(i.generators().len(), 11);
    assert!(i.generators().iter().all(|m| m.degree() == 2));
}

#[test]
fn rationals_agree_with_prime_on_fixtures() {
    for name in ["tree-4321", "tree-3331"] {
        let i = edge_ideal(&fixture(name));
        for s in 1..=3 {
            let p = i.power(s).unwrap();
            assert_eq!(
                depth_quotient(&p, Field::Rationals).unwrap(),
                depth_quotient(&p, Field::Prime(DEFAULT_PRIME)).unwrap(),
                "{name} s={s}"
            );
        }
        let sq = i.power(2).unwrap();
        assert_eq!(
            engine_table(&sq, Field::Rationals),
            engine_table(&sq, Field::Prime(DEFAULT_PRIME))
        );
    }
}

#[test]
fn worker_count_does_not_change_tables() {
    let j = edge_ideal(&fixture("tree-3331")).power(2).unwrap();
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| betti(&j, Field::Rationals).unwrap())
    };
    let one = run(1);
    assert_eq!(one, run(3));
    assert_eq!(one, run(8));
}

fn hypertree(seed: u64) -> hyperdepth::Hypergraph {
    if seed.is_multiple_of(2) {
        let edges = 1 + (seed / 2 % 6) as usize;
        random_forest(&GenConfig {
            vertices: edges + 1,
            max_edge_size: 2,
            edges,
            seed,
            connected: true,
        })
        .unwrap()
    } else {
        let edges = 1 + (seed / 2 % 6) as usize;
        random_hyperforest(&GenConfig {
            vertices: 4 * edges,
            max_edge_size: 4,
            edges,
            seed,
            connected: true,
        })
        .unwrap()
    }
}

#[test]
fn colon_by_good_leaf_lowers_the_power() {
    for seed in 0..60 {
        let t = hypertree(seed);
        let i = edge_ideal(&t);
        for e in good_leaves(&t) {
            let m = Monomial::of_edge(&e, t.num_vertices());
            for s in 2..=3 {
                assert_eq!(
                    i.power(s).unwrap().colon(&m),
                    i.power(s - 1).unwrap(),
                    "seed {seed} s {s}"
                );
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn operations_stay_minimal(a in arb_ideal(5, 5, 3), b in arb_ideal(5, 5, 3), m in prop::collection::vec(0u16..3, 5)) {
        prop_assume!(a.num_vars() == b.num_vars());
        let n = a.num_vars();
        let mono = Monomial::new(m[..n].to_vec());
        for j in [a.power(2).unwrap(), a.product(&b).unwrap(), a.colon(&mono), a.sum(&b).unwrap()] {
            prop_assert!(j.is_minimally_generated());
        }
    }

    #[test]
    fn powers_multiply(j in arb_ideal(4, 4, 2), a in 1u32..3, b in 1u32..3) {
        let whole = j.power(a + b).unwrap();
        let split = j.power(a).unwrap().product(&j.power(b).unwrap()).unwrap();
        prop_assert_eq!(&whole, &split);
        for g in whole.generators() {
            prop_assert!(split.contains(g));
        }
        prop_assert_eq!(j.power(1).unwrap(), j);
    }

    #[test]
    fn betti_matches_taylor(j in arb_ideal(5, 6, 3)) {
        prop_assert_eq!(engine_table(&j, Field::Rationals), taylor_betti(&j));
    }

    #[test]
    fn euler_characteristic_matches_k_polynomial(j in arb_ideal(5, 6, 3)) {
        let table = betti(&j, Field::Rationals).unwrap();
        let mut chi: std::collections::BTreeMap<Vec<u16>, i64> = std::collections::BTreeMap::new();
        for (i, a, r) in table.entries() {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            *chi.entry(a.exponents().to_vec()).or_default() += sign * r as i64;
        }
        chi.retain(|_, c| *c != 0);
        prop_assert_eq!(chi, k_polynomial(&j));
    }

    #[test]
    fn betti_support(j in arb_ideal(5, 6, 3)) {
        let lattice: BTreeSet<Monomial> = lcm_lattice(&j).into_iter().collect();
        for (i, a, _) in betti(&j, Field::Rationals).unwrap().entries() {
            if i == 0 {
                prop_assert!(a.is_one());
            } else {
                prop_assert!(lattice.contains(a));
            }
        }
    }

    #[test]
    fn walker_enumerates_the_lattice(j in arb_ideal(5, 7, 3)) {
        let walker = LatticeWalker::new(&j);
        let mut seen = Vec::new();
        walker.walk(&mut |a, _| seen.push(Monomial::new(a.to_vec())));
        seen.sort();
        prop_assert_eq!(seen, lcm_lattice(&j));
    }

    #[test]
    fn squarefree_depth_matches_hochster(g in arb_hypergraph(7, 6)) {
        prop_assume!(g.num_edges() > 0);
        let i = edge_ideal(&g);
        prop_assert_eq!(pd(&i, Field::Rationals).unwrap(), hochster_pd(&g));
    }
}
