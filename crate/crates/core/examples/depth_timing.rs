//! Times the depth engine on a hypergraph file:
//! `cargo run --release --example depth_timing -- fixtures/tree-4321 4 [q|p:<prime>]`.

use std::time::Instant;

use hyperdepth::algebra::{depth_quotient, edge_ideal, Field};
use hyperdepth::parse_hypergraph;

fn main() {
    let mut args = std::env::args().skip(1);
    let path = args
        .next()
        .expect("usage: depth_timing <file> [s_max] [field]");
    let s_max: u32 = args.next().and_then(|a| a.parse().ok()).unwrap_or(3);
    let field = match args.next() {
        Some(f) => f.parse().expect("field"),
        None => Field::Rationals,
    };
    let g = parse_hypergraph(&std::fs::read_to_string(&path).expect("readable file"))
        .expect("valid hypergraph");
    let i = edge_ideal(&g);
    for s in 1..=s_max {
        let t = Instant::now();
        let p = i.power(s).unwrap();
        let d = depth_quotient(&p, field).unwrap();
        println!(
            "s={s} gens={} depth={d} in {:?}",
            p.generators().len(),
            t.elapsed()
        );
    }
}
