//! Edgewise domination number and star packing number, with witnesses.
//!
//! Both searches work on `u128` vertex masks, so hypergraphs are limited to
//! 128 ambient vertices. Vertices that lie in no edge are ignored: they are
//! never required to be dominated and never serve as star centers.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::hypergraph::{mask_members, mask_of, Edge, Hypergraph, HypergraphError};

/// An edge set witnessing edgewise domination.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DominatingEdgeSet(pub Vec<Edge>);

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Star {
    pub center: usize,
    /// Sorted, contains `center`.
    pub support: Vec<usize>,
}

impl Star {
    /// The center's edges are all hit by the rest of the support, and the
    /// support stays inside the closed neighborhood.
    pub fn is_valid(&self, g: &Hypergraph) -> bool {
        let Ok(closed) = g.closed_neighborhood(self.center) else {
            return false;
        };
        if !self.support.contains(&self.center) || !self.support.iter().all(|v| closed.contains(v))
        {
            return false;
        }
        g.edges()
            .iter()
            .filter(|e| e.contains(self.center))
            .all(|e| {
                self.support
                    .iter()
                    .any(|&b| b != self.center && e.contains(b))
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarPacking(pub Vec<Star>);

impl StarPacking {
    pub fn centers(&self) -> Vec<usize> {
        self.0.iter().map(|s| s.center).collect()
    }

    /// Pairwise-disjoint supports and every star valid.
    pub fn is_valid(&self, g: &Hypergraph) -> bool {
        let mut used = BTreeSet::new();
        self.0
            .iter()
            .all(|s| s.is_valid(g) && s.support.iter().all(|&v| used.insert(v)))
    }
}

fn check_size(g: &Hypergraph) {
    assert!(
        g.num_vertices() <= 128,
        "invariant searches support at most 128 vertices"
    );
}

fn neighborhood_masks(g: &Hypergraph) -> Vec<u128> {
    let mut nbr = vec![0u128; g.num_vertices()];
    for e in g.edges() {
        let m = mask_of(e.vertices().iter().copied());
        for &v in e.vertices() {
            nbr[v] |= m & !(1u128 << v);
        }
    }
    nbr
}

/// Vertices that must be dominated: active and without a singleton edge.
fn domination_targets(g: &Hypergraph) -> u128 {
    let active = mask_of(g.active_vertices());
    let singletons = mask_of(
        g.edges()
            .iter()
            .filter(|e| e.len() == 1)
            .map(|e| e.vertices()[0]),
    );
    active & !singletons
}

/// Every active vertex has a singleton edge or a neighbor inside `⋃F`.
pub fn is_edgewise_dominant(g: &Hypergraph, f: &[Edge]) -> Result<bool, HypergraphError> {
    check_size(g);
    for e in f {
        g.require_edge(e)?;
    }
    let union = mask_of(f.iter().flat_map(|e| e.vertices().iter().copied()));
    let nbr = neighborhood_masks(g);
    Ok(mask_members(domination_targets(g))
        .into_iter()
        .all(|v| nbr[v] & union != 0))
}

struct CoverSearch {
    covers: Vec<u128>,
    /// For every target vertex, the edges covering it.
    by_vertex: Vec<Vec<usize>>,
    best: Vec<usize>,
}

impl CoverSearch {
    fn run(&mut self, uncovered: u128, chosen: &mut Vec<usize>) {
        if uncovered == 0 {
            if chosen.len() < self.best.len() {
                self.best = chosen.clone();
            }
            return;
        }
        let max_cov = self
            .covers
            .iter()
            .map(|c| (c & uncovered).count_ones())
            .max()
            .unwrap_or(0);
        if max_cov == 0 {
            return;
        }
        let need = uncovered.count_ones().div_ceil(max_cov) as usize;
        if chosen.len() + need >= self.best.len() {
            return;
        }
        // Branch on the uncovered vertex with the fewest covering edges.
        let pivot = mask_members(uncovered)
            .into_iter()
            .min_by_key(|&v| (self.by_vertex[v].len(), v))
            .expect("uncovered is nonempty");
        let mut options = self.by_vertex[pivot].clone();
        options.sort_by_key(|&f| {
            (
                std::cmp::Reverse((self.covers[f] & uncovered).count_ones()),
                f,
            )
        });
        for f in options {
            chosen.push(f);
            self.run(uncovered & !self.covers[f], chosen);
            chosen.pop();
        }
    }
}

/// Exact edgewise domination number by branch and bound.
///
/// Vertex `v` is covered by edge `f` when `N(v) ∩ f ≠ ∅`; vertices carrying
/// a singleton edge start out covered.
pub fn epsilon(g: &Hypergraph) -> (usize, DominatingEdgeSet) {
    check_size(g);
    let nbr = neighborhood_masks(g);
    let targets = domination_targets(g);
    let covers: Vec<u128> = g
        .edges()
        .iter()
        .map(|f| {
            let fm = mask_of(f.vertices().iter().copied());
            mask_members(targets)
                .into_iter()
                .filter(|&v| nbr[v] & fm != 0)
                .fold(0, |m, v| m | 1 << v)
        })
        .collect();
    let mut by_vertex = vec![Vec::new(); g.num_vertices()];
    for (i, c) in covers.iter().enumerate() {
        for v in mask_members(*c) {
            by_vertex[v].push(i);
        }
    }
    let mut search = CoverSearch {
        covers,
        by_vertex,
        best: (0..=g.num_edges()).collect(),
    };
    search.run(targets, &mut Vec::new());
    let mut best = search.best;
    assert!(
        best.len() <= g.num_edges(),
        "every target vertex is coverable"
    );
    best.sort_unstable();
    let witness: Vec<Edge> = best.iter().map(|&i| g.edges()[i].clone()).collect();
    (witness.len(), DominatingEdgeSet(witness))
}

/// Minimal transversals of a family of vertex masks (Berge's algorithm).
fn minimal_transversals(family: &[u128]) -> Vec<u128> {
    let mut tr: Vec<u128> = vec![0];
    for &edge in family {
        let mut next: Vec<u128> = Vec::new();
        for &t in &tr {
            if t & edge != 0 {
                next.push(t);
            } else {
                for v in mask_members(edge) {
                    next.push(t | 1 << v);
                }
            }
        }
        next.sort_unstable();
        next.dedup();
        let all = next.clone();
        next.retain(|&t| !all.iter().any(|&u| u != t && u & t == u));
        tr = next;
    }
    tr.sort_by_key(|&t| mask_members(t));
    tr
}

/// All inclusion-minimal star supports centered at `b0`.
///
/// A support is `{b0} ∪ T` with `T ⊆ N(b0)` meeting `e \ {b0}` for every edge
/// `e ∋ b0`. A singleton edge `{b0}` admits no star; a vertex in no edge gets
/// the vacuous star `{b0}`.
pub fn find_stars(g: &Hypergraph, b0: usize) -> Result<Vec<Vec<usize>>, HypergraphError> {
    check_size(g);
    g.neighborhood(b0)?;
    let mut family = Vec::new();
    for e in g.edges().iter().filter(|e| e.contains(b0)) {
        let rest = mask_of(e.vertices().iter().copied()) & !(1u128 << b0);
        if rest == 0 {
            return Ok(Vec::new());
        }
        family.push(rest);
    }
    Ok(minimal_transversals(&family)
        .into_iter()
        .map(|t| mask_members(t | 1 << b0))
        .collect())
}

struct PackingSearch {
    stars: Vec<(usize, u128)>,
    min_size: u32,
    best: Vec<usize>,
}

impl PackingSearch {
    fn run(&mut self, free: u128, chosen: &mut Vec<usize>) {
        let available: Vec<usize> = (0..self.stars.len())
            .filter(|&i| self.stars[i].1 & !free == 0)
            .collect();
        if available.is_empty() {
            if chosen.len() > self.best.len() {
                self.best = chosen.clone();
            }
            return;
        }
        let coverable = available.iter().fold(0u128, |m, &i| m | self.stars[i].1);
        if chosen.len() + (coverable.count_ones() / self.min_size) as usize <= self.best.len() {
            return;
        }
        // Branch on the lowest vertex some available star uses: either one of
        // the stars through it is taken, or it is left out of every star.
        let v = available
            .iter()
            .map(|&i| self.stars[i].1.trailing_zeros())
            .min()
            .unwrap_or(0);
        let through: Vec<usize> = available
            .into_iter()
            .filter(|&i| self.stars[i].1 >> v & 1 == 1)
            .collect();
        for i in through {
            chosen.push(i);
            self.run(free & !self.stars[i].1, chosen);
            chosen.pop();
        }
        self.run(free & !(1u128 << v), chosen);
    }
}

/// Exact star packing number: the largest family of stars with pairwise
/// disjoint supports, centered at active vertices.
pub fn alpha2(g: &Hypergraph) -> (usize, StarPacking) {
    check_size(g);
    let mut stars = Vec::new();
    for c in g.active_vertices() {
        for s in find_stars(g, c).expect("active vertex") {
            stars.push((c, mask_of(s)));
        }
    }
    let min_size = stars.iter().map(|s| s.1.count_ones()).min().unwrap_or(1);
    let mut search = PackingSearch {
        stars,
        min_size,
        best: Vec::new(),
    };
    search.run(mask_of(g.active_vertices()), &mut Vec::new());
    let mut packing: Vec<Star> = search
        .best
        .iter()
        .map(|&i| Star {
            center: search.stars[i].0,
            support: mask_members(search.stars[i].1),
        })
        .collect();
    packing.sort_by_key(|s| s.center);
    (packing.len(), StarPacking(packing))
}
