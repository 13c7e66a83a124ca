//! Independent brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use hyperdepth::{Edge, Hypergraph, Monomial, MonomialIdeal};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Rank over the rationals of a small dense integer matrix, by Bareiss
/// elimination in checked `i128`.
pub fn rank_q(mut m: Vec<Vec<i128>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    let mut prev: i128 = 1;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..rows {
            for k in c + 1..cols {
                let v = m[rank][c]
                    .checked_mul(m[r][k])
                    .and_then(|a| {
                        m[r][c]
                            .checked_mul(m[rank][k])
                            .and_then(|b| a.checked_sub(b))
                    })
                    .expect("oracle overflow");
                m[r][k] = v / prev;
            }
            m[r][c] = 0;
        }
        prev = m[rank][c];
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

fn lcm_of(gens: &[Monomial], subset: usize, n: usize) -> Vec<u16> {
    let mut l = vec![0u16; n];
    for (i, g) in gens.iter().enumerate() {
        if subset >> i & 1 == 1 {
            for (a, &b) in l.iter_mut().zip(g.exponents()) {
                *a = (*a).max(b);
            }
        }
    }
    l
}

/// `β_{i,α}(R/J)` from the Taylor complex tensored with `k`: in degree `α`
/// the chains are generator subsets with lcm `α`, and a face survives in
/// the boundary only if dropping it keeps the lcm.
pub fn taylor_betti(j: &MonomialIdeal) -> BTreeMap<(usize, Vec<u16>), usize> {
    let gens = j.generators();
    let m = gens.len();
    let n = j.num_vars();
    assert!(m <= 10, "Taylor oracle is exponential");
    let mut by_degree: BTreeMap<Vec<u16>, Vec<usize>> = BTreeMap::new();
    for subset in 0..(1usize << m) {
        by_degree
            .entry(lcm_of(gens, subset, n))
            .or_default()
            .push(subset);
    }
    let mut out = BTreeMap::new();
    for (alpha, subsets) in by_degree {
        let mut by_size: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &s in &subsets {
            by_size.entry(s.count_ones() as usize).or_default().push(s);
        }
        let boundary_rank = |i: usize| -> usize {
            // d_i: C_i -> C_{i-1}
            let (Some(hi), Some(lo)) = (
                by_size.get(&i),
                i.checked_sub(1).and_then(|k| by_size.get(&k)),
            ) else {
                return 0;
            };
            let matrix: Vec<Vec<i128>> = hi
                .iter()
                .map(|&s| {
                    lo.iter()
                        .map(|&t| {
                            if t & s != t {
                                return 0;
                            }
                            let dropped = (s & !t).trailing_zeros();

                            if (s & ((1 << dropped) - 1)).count_ones() % 2 == 0 {
                                1
                            } else {
                                -1
                            }
                        })
                        .collect()
                })
                .collect();
            rank_q(matrix)
        };
        for (&i, faces) in &by_size {
            let b = faces.len() - boundary_rank(i) - boundary_rank(i + 1);
            if b > 0 {
                out.insert((i, alpha.clone()), b);
            }
        }
    }
    out
}

pub fn taylor_depth(j: &MonomialIdeal) -> usize {
    let pd = taylor_betti(j).keys().map(|(i, _)| *i).max().unwrap_or(0);
    j.num_vars() - pd
}

/// Coefficients of the K-polynomial `Σ_S (-1)^|S| x^lcm(S)` of `R/J`.
pub fn k_polynomial(j: &MonomialIdeal) -> BTreeMap<Vec<u16>, i64> {
    let gens = j.generators();
    let mut out: BTreeMap<Vec<u16>, i64> = BTreeMap::new();
    for subset in 0..(1usize << gens.len()) {
        let sign = if subset.count_ones() % 2 == 0 { 1 } else { -1 };
        *out.entry(lcm_of(gens, subset, j.num_vars())).or_default() += sign;
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Reduced homology ranks of the complex given by all its faces.
fn reduced_betti_numbers(faces: &[u32]) -> Vec<usize> {
    let dim_of = |f: u32| f.count_ones() as i32 - 1;
    let top = faces.iter().map(|&f| dim_of(f)).max().unwrap_or(-2);
    if top < -1 {
        return Vec::new();
    }
    let by_dim =
        |d: i32| -> Vec<u32> { faces.iter().copied().filter(|&f| dim_of(f) == d).collect() };
    let boundary_rank = |d: i32| -> usize {
        let hi = by_dim(d);
        let lo = by_dim(d - 1);
        if hi.is_empty() || lo.is_empty() {
            return 0;
        }
        let matrix = hi
            .iter()
            .map(|&s| {
                lo.iter()
                    .map(|&t| {
                        if t & s != t || (s & !t).count_ones() != 1 {
                            return 0;
                        }
                        let dropped = (s & !t).trailing_zeros();
                        if (s & ((1 << dropped) - 1)).count_ones() % 2 == 0 {
                            1
                        } else {
                            -1
                        }
                    })
                    .collect()
            })
            .collect();
        rank_q(matrix)
    };
    (-1..=top)
        .map(|d| by_dim(d).len() - boundary_rank(d) - boundary_rank(d + 1))
        .collect()
}

/// `pd R/I(G)` by Hochster's formula over the complex of vertex sets that
/// contain no edge: `β_{i,σ} = dim H̃_{|σ|-i-1}(Δ|σ)`.
pub fn hochster_pd(g: &Hypergraph) -> usize {
    let n = g.num_vertices();
    assert!(n <= 12);
    let edge_masks: Vec<u32> = g
        .edges()
        .iter()
        .map(|e| e.vertices().iter().fold(0, |m, &v| m | 1 << v))
        .collect();
    let independent = |f: u32| edge_masks.iter().all(|&e| e & f != e);
    let mut pd = 0;
    for sigma in 0u32..(1 << n) {
        let faces: Vec<u32> = (0..=sigma)
            .filter(|&f| f & sigma == f && independent(f))
            .collect();
        let ranks = reduced_betti_numbers(&faces);
        let size = sigma.count_ones() as i32;
        for (k, &r) in ranks.iter().enumerate() {
            let d = k as i32 - 1;
            if r > 0 {
                pd = pd.max((size - d - 1) as usize);
            }
        }
    }
    pd
}

fn neighbors(g: &Hypergraph) -> Vec<BTreeSet<usize>> {
    (0..g.num_vertices())
        .map(|v| g.neighborhood(v).unwrap())
        .collect()
}

/// ε by trying every edge subset in order of size, with the definition
/// checked directly.
pub fn exhaustive_epsilon(g: &Hypergraph) -> usize {
    let nb = neighbors(g);
    let m = g.num_edges();
    let targets: Vec<usize> = g
        .active_vertices()
        .into_iter()
        .filter(|&v| !g.edges().iter().any(|e| e.vertices() == [v]))
        .collect();
    (0..(1usize << m))
        .filter(|&subset| {
            let union: BTreeSet<usize> = (0..m)
                .filter(|i| subset >> i & 1 == 1)
                .flat_map(|i| g.edges()[i].vertices().to_vec())
                .collect();
            targets
                .iter()
                .all(|&v| nb[v].iter().any(|u| union.contains(u)))
        })
        .map(|s| s.count_ones() as usize)
        .min()
        .expect("E itself dominates")
}

/// Every star by definition: subsets of `N[b0]` containing `b0` that meet
/// `e \ {b0}` for each edge `e ∋ b0`.
pub fn all_stars(g: &Hypergraph) -> Vec<u32> {
    let mut out = Vec::new();
    for b0 in g.active_vertices() {
        let nb: Vec<usize> = g.neighborhood(b0).unwrap().into_iter().collect();
        for pick in 0u32..(1 << nb.len()) {
            let support: u32 = (0..nb.len())
                .filter(|i| pick >> i & 1 == 1)
                .fold(1 << b0, |m, i| m | 1 << nb[i]);
            let ok = g.edges().iter().filter(|e| e.contains(b0)).all(|e| {
                e.vertices()
                    .iter()
                    .any(|&b| b != b0 && support >> b & 1 == 1)
            });
            if ok {
                out.push(support);
            }
        }
    }
    out
}

/// Largest family of pairwise disjoint stars, by plain backtracking.
pub fn exhaustive_alpha2(g: &Hypergraph) -> usize {
    fn go(stars: &[u32], from: usize, used: u32) -> usize {
        let mut best = 0;
        for i in from..stars.len() {
            if stars[i] & used == 0 {
                best = best.max(1 + go(stars, i + 1, used | stars[i]));
            }
        }
        best
    }
    let mut stars = all_stars(g);
    stars.sort_unstable();
    stars.dedup();
    go(&stars, 0, 0)
}

/// Largest set of active vertices pairwise at distance at least 3.
pub fn two_packing(g: &Hypergraph) -> usize {
    let n = g.num_vertices();
    let nb = neighbors(g);
    let mut dist = vec![vec![usize::MAX; n]; n];
    for s in 0..n {
        dist[s][s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            for &w in &nb[v] {
                if dist[s][w] == usize::MAX {
                    dist[s][w] = dist[s][v] + 1;
                    q.push_back(w);
                }
            }
        }
    }
    let active = g.active_vertices();
    (0u32..(1 << active.len()))
        .filter(|&pick| {
            let chosen: Vec<usize> = (0..active.len())
                .filter(|i| pick >> i & 1 == 1)
                .map(|i| active[i])
                .collect();
            chosen
                .iter()
                .enumerate()
                .all(|(i, &a)| chosen[i + 1..].iter().all(|&b| dist[a][b] >= 3))
        })
        .map(|p| p.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Simple hypergraph on `n` vertices from raw vertex subsets.
pub fn simple_from_masks(n: usize, masks: &[u32]) -> Hypergraph {
    let edges = masks
        .iter()
        .map(|&m| Edge::new((0..n).filter(|v| m >> v & 1 == 1)))
        .filter(|e| !e.is_empty());
    let base = Hypergraph::with_numbered_vertices(n, Vec::<Vec<usize>>::new()).unwrap();
    Hypergraph::minimalized(base.vertices().to_vec(), edges)
}

pub fn arb_hypergraph(max_vertices: usize, max_edges: usize) -> impl Strategy<Value = Hypergraph> {
    (1..=max_vertices).prop_flat_map(move |n| {
        prop::collection::vec(1u32..(1 << n), 0..=max_edges)
            .prop_map(move |masks| simple_from_masks(n, &masks))
    })
}

pub fn arb_graph(max_vertices: usize, max_edges: usize) -> impl Strategy<Value = Hypergraph> {
    (2..=max_vertices).prop_flat_map(move |n| {
        prop::collection::vec((0..n, 0..n), 0..=max_edges).prop_map(move |pairs| {
            let masks: Vec<u32> = pairs
                .into_iter()
                .filter(|(a, b)| a != b)
                .map(|(a, b)| 1 << a | 1 << b)
                .collect();
            simple_from_masks(n, &masks)
        })
    })
}

/// Random monomial ideal with at most `gens` generators in `n` variables.
pub fn random_ideal(rng: &mut ChaCha8Rng, n: usize, gens: usize, max_exp: u16) -> MonomialIdeal {
    let mut out = Vec::new();
    while out.len() < gens {
        let e: Vec<u16> = (0..n).map(|_| rng.random_range(0..=max_exp)).collect();
        if e.iter().any(|&x| x > 0) {
            out.push(Monomial::new(e));
        }
    }
    MonomialIdeal::new(n, out)
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn arb_ideal(
    max_vars: usize,
    max_gens: usize,
    max_exp: u16,
) -> impl Strategy<Value = MonomialIdeal> {
    (1..=max_vars, 1..=max_gens, any::<u64>())
        .prop_map(move |(n, m, seed)| random_ideal(&mut seeded(seed), n, m, max_exp))
}

pub fn fixture(name: &str) -> Hypergraph {
    let path = format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    hyperdepth::parse_hypergraph(&std::fs::read_to_string(&path).expect("fixture exists"))
        .expect("fixture parses")
}
