//! Seeded random forests and hyperforests.
//!
//! Randomness comes from `ChaCha8Rng`, so a configuration and seed always
//! produce the same hypergraph.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::forest::good_leaf_unchecked;
use crate::hypergraph::{Edge, Hypergraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid generator config: {0}")]
pub struct InvalidConfig(pub String);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenConfig {
    /// Number of vertices for forests; an upper bound for hyperforests.
    pub vertices: usize,
    pub max_edge_size: usize,
    pub edges: usize,
    pub seed: u64,
    pub connected: bool,
}

impl GenConfig {
    fn validate(&self) -> Result<(), InvalidConfig> {
        if self.max_edge_size < 2 {
            return Err(InvalidConfig("max edge size must be at least 2".into()));
        }
        if self.edges == 0 {
            return Err(InvalidConfig("edge count must be at least 1".into()));
        }
        Ok(())
    }
}

/// Random labeled forest on `vertices` vertices with `edges` edges.
///
/// Vertices are shuffled and cut into `vertices - edges` components; each
/// component receives a uniformly random labeled tree from a random Prüfer
/// sequence. `connected` requires `edges = vertices - 1`.
pub fn random_forest(config: &GenConfig) -> Result<Hypergraph, InvalidConfig> {
    config.validate()?;
    let n = config.vertices;
    if config.edges >= n {
        return Err(InvalidConfig(format!(
            "a forest on {n} vertices has at most {} edges",
            n.saturating_sub(1)
        )));
    }
    let parts = n - config.edges;
    if config.connected && parts != 1 {
        return Err(InvalidConfig(
            "a connected forest needs exactly vertices - 1 edges".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    // Component sizes: choose parts - 1 distinct cut points in 1..n.
    let mut cuts: Vec<usize> = (1..n).collect();
    cuts.shuffle(&mut rng);
    let mut cuts: Vec<usize> = cuts.into_iter().take(parts - 1).collect();
    cuts.sort_unstable();
    let mut bounds = vec![0];
    bounds.extend(cuts);
    bounds.push(n);
    let mut edges = Vec::with_capacity(config.edges);
    for w in bounds.windows(2) {
        let comp = &order[w[0]..w[1]];
        edges.extend(prufer_tree(comp, &mut rng));
    }
    Ok(Hypergraph::with_numbered_vertices(n, edges).expect("trees are simple"))
}

fn prufer_tree(labels: &[usize], rng: &mut ChaCha8Rng) -> Vec<Edge> {
    let k = labels.len();
    if k < 2 {
        return Vec::new();
    }
    if k == 2 {
        return vec![Edge::new([labels[0], labels[1]])];
    }
    let code: Vec<usize> = (0..k - 2).map(|_| rng.random_range(0..k)).collect();
    let mut degree = vec![1usize; k];
    for &c in &code {
        degree[c] += 1;
    }
    let mut edges = Vec::with_capacity(k - 1);
    for &c in &code {
        let leaf = (0..k).find(|&v| degree[v] == 1).expect("a leaf exists");
        edges.push(Edge::new([labels[leaf], labels[c]]));
        degree[leaf] -= 1;
        degree[c] -= 1;
    }
    let last: Vec<usize> = (0..k).filter(|&v| degree[v] == 1).collect();
    edges.push(Edge::new([labels[last[0]], labels[last[1]]]));
    edges
}

/// Random hyperforest grown one good leaf at a time.
///
/// Each new edge is `A ∪ F`: `A` a proper subset of one existing edge whose
/// intersections with all current edges form a chain, `F` a nonempty set of
/// fresh vertices. The new edge is then a good leaf of the grown hypergraph,
/// and adding a good leaf to a hyperforest yields a hyperforest. `A = ∅`
/// starts a new component unless `connected` is set. Edge sizes lie in
/// `2..=max_edge_size`; `vertices` caps the number of vertices used.
pub fn random_hyperforest(config: &GenConfig) -> Result<Hypergraph, InvalidConfig> {
    config.validate()?;
    if config.vertices < config.edges + 1 {
        return Err(InvalidConfig(format!(
            "{} edges need at least {} vertices",
            config.edges,
            config.edges + 1
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let k = config.max_edge_size;
    let mut used = 0usize;
    let mut edges: Vec<Edge> = Vec::with_capacity(config.edges);
    for step in 0..config.edges {
        // Fresh vertices left after reserving one per remaining edge.
        let spare = config.vertices - used - (config.edges - step - 1);
        let attach: Vec<usize> = if step == 0 || (!config.connected && rng.random_bool(0.2)) {
            Vec::new()
        } else {
            let host = &edges[rng.random_range(0..edges.len())];
            let mut pool = host.vertices().to_vec();
            pool.shuffle(&mut rng);
            let most = (host.len() - 1).min(k - 1);
            let size = rng.random_range(1..=most.max(1));
            let mut a: Vec<usize> = pool.into_iter().take(size).collect();
            a.sort_unstable();
            let cand = Edge::new(a.iter().copied());
            let chain = {
                let mut probe = edges.clone();
                probe.push(cand.clone());
                good_leaf_unchecked(&probe, &cand)
            };
            if chain {
                a
            } else {
                vec![a[rng.random_range(0..a.len())]]
            }
        };
        let min_fresh = if attach.is_empty() { 2 } else { 1 };
        let max_fresh = (k - attach.len()).min(spare);
        let (attach, fresh_count) = if max_fresh >= min_fresh {
            let f = rng.random_range(min_fresh..=max_fresh);
            (attach, f)
        } else {
            // Not enough spare vertices for a new component; attach instead.
            let host = &edges[rng.random_range(0..edges.len())];
            (vec![host.vertices()[rng.random_range(0..host.len())]], 1)
        };
        let fresh: Vec<usize> = (used..used + fresh_count).collect();
        used += fresh_count;
        edges.push(Edge::new(attach.into_iter().chain(fresh)));
    }
    Ok(Hypergraph::with_numbered_vertices(used, edges).expect("grown edges are simple"))
}
