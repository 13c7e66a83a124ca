use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use hyperdepth::algebra::{betti, depth_function, pd};
use hyperdepth::format::to_text;
use hyperdepth::{
    alpha2, build_certificate_with, edge_ideal, epsilon, good_leaf_order, is_hypertree,
    parse_hypergraph, random_forest, random_hyperforest, verify_alpha2_bound, verify_certificate,
    verify_epsilon_bound, Edge, Field, ForestVerdict, GenConfig, Hypergraph, InvariantKind,
    LeafChoice, MixedIdealInstance,
};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

mod selftest;

#[derive(Parser)]
#[command(
    name = "hyperdepth",
    version,
    about = "Depth of powers of edge ideals of hypergraphs"
)]
struct Cli {
    /// Worker threads for the depth engine (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Seed for `gen` and for random leaf choice in `certificate`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the hypergraph is a simplicial forest.
    ForestCheck { file: PathBuf },
    /// Edgewise domination number and star packing number, with witnesses.
    Invariants { file: PathBuf },
    /// Depth of R/I^s.
    Depth {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        power: u32,
        #[arg(long, default_value = "q")]
        field: Field,
        /// Include the multigraded Betti table.
        #[arg(long)]
        betti: bool,
    },
    /// depth R/I^s for s = 1..=N.
    DepthFunction {
        file: PathBuf,
        #[arg(long)]
        max_power: u32,
        #[arg(long, default_value = "q")]
        field: Field,
        /// Emit "s,depth" rows instead of a JSON report.
        #[arg(long)]
        csv: bool,
        /// Prefix the CSV with a header row.
        #[arg(long, requires = "csv")]
        header: bool,
    },
    /// Check depth R/I^s >= max(inv - s + 1, 1) for s = 1..=N.
    VerifyBound {
        file: PathBuf,
        #[arg(long)]
        invariant: InvariantKind,
        #[arg(long)]
        max_power: u32,
        #[arg(long, default_value = "q")]
        field: Field,
    },
    /// Build the recursive certificate for the mixed ideal I(H) + I(T)^s.
    Certificate {
        file: PathBuf,
        #[arg(long)]
        power: u32,
        #[arg(long)]
        invariant: InvariantKind,
        #[arg(long, default_value = "q")]
        field: Field,
        /// Comma-separated edge moved from T to H; repeatable.
        #[arg(long = "h-edge")]
        h_edges: Vec<String>,
        /// Pick a random good leaf at each split, seeded by --seed.
        #[arg(long)]
        random_leaves: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a random forest or hyperforest in the text format.
    Gen {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        edges: usize,
        #[arg(long, default_value_t = 2)]
        max_edge_size: usize,
        #[arg(long)]
        connected: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the bundled fixture suite.
    Selftest {
        /// Also check s = 4 on the 12-vertex trees.
        #[arg(long)]
        extended: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Forest,
    Hyperforest,
}

pub(crate) struct Outcome {
    payload: Value,
    digest: Option<String>,
    field: Option<Field>,
    violated: bool,
    raw: Option<String>,
}

impl Outcome {
    fn new(payload: Value) -> Self {
        Outcome {
            payload,
            digest: None,
            field: None,
            violated: false,
            raw: None,
        }
    }
}

#[derive(Debug)]
pub(crate) struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn load(path: &Path) -> Result<(Hypergraph, String), InputError> {
    let bytes = fs::read(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    let digest = hex::encode(Sha256::digest(&bytes));
    let text = String::from_utf8(bytes)
        .map_err(|_| InputError(format!("{}: not UTF-8", path.display())))?;
    let g = parse_hypergraph(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    Ok((g, digest))
}

fn names(g: &Hypergraph, edges: &[Edge]) -> Vec<Vec<String>> {
    edges.iter().map(|e| g.edge_names(e)).collect()
}

fn forest_check(g: &Hypergraph) -> Value {
    match good_leaf_order(g) {
        ForestVerdict::Forest(order) => json!({
            "is_forest": true,
            "is_tree": is_hypertree(g),
            "good_leaf_order": names(g, &order.0),
        }),
        ForestVerdict::NotAForest { stuck } => json!({
            "is_forest": false,
            "is_tree": false,
            "stuck": names(g, stuck.edges()),
        }),
    }
}

pub(crate) fn invariants(g: &Hypergraph) -> Value {
    let (eps, dom) = epsilon(g);
    let (a2, packing) = alpha2(g);
    let centers: Vec<&str> = packing
        .centers()
        .into_iter()
        .map(|v| g.vertex_name(v))
        .collect();
    json!({
        "epsilon": eps,
        "epsilon_witness": names(g, &dom.0),
        "alpha2": a2,
        "alpha2_witness_centers": centers,
    })
}

fn parse_h_edges(g: &Hypergraph, specs: &[String]) -> Result<Vec<Edge>, InputError> {
    specs
        .iter()
        .map(|spec| {
            let parts: Vec<&str> = spec
                .split(',')
                .map(str::trim)
                .filter(|p| !p.is_empty())
                .collect();
            let e = g.edge_from_names(&parts)?;
            if g.edges().contains(&e) {
                Ok(e)
            } else {
                Err(InputError(format!(
                    "--h-edge {spec}: not an edge of the hypergraph"
                )))
            }
        })
        .collect()
}

fn run(cmd: Command, seed: u64) -> Result<Outcome, InputError> {
    match cmd {
        Command::ForestCheck { file } => {
            let (g, digest) = load(&file)?;
            Ok(Outcome {
                digest: Some(digest),
                ..Outcome::new(forest_check(&g))
            })
        }
        Command::Invariants { file } => {
            let (g, digest) = load(&file)?;
            Ok(Outcome {
                digest: Some(digest),
                ..Outcome::new(invariants(&g))
            })
        }
        Command::Depth {
            file,
            power,
            field,
            betti: with_betti,
        } => {
            let (g, digest) = load(&file)?;
            if power == 0 {
                return Err(InputError("--power must be at least 1".into()));
            }
            let j = edge_ideal(&g).power(power)?;
            let n = j.num_vars();
            let mut payload = if with_betti {
                let table = betti(&j, field)?;
                let p = table.projective_dimension();
                json!({"n": n, "power": power, "pd": p, "depth": n - p, "betti": table.to_json()["betti"]})
            } else {
                let p = pd(&j, field)?;
                json!({"n": n, "power": power, "pd": p, "depth": n - p})
            };
            payload["field"] = json!(field);
            Ok(Outcome {
                digest: Some(digest),
                field: Some(field),
                ..Outcome::new(payload)
            })
        }
        Command::DepthFunction {
            file,
            max_power,
            field,
            csv,
            header,
        } => {
            let (g, digest) = load(&file)?;
            if max_power == 0 {
                return Err(InputError("--max-power must be at least 1".into()));
            }
            let f = depth_function(&edge_ideal(&g), max_power, field)?;
            let raw = csv.then(|| {
                let mut out = String::from(if header { "s,depth\n" } else { "" });
                for (i, d) in f.depths.iter().enumerate() {
                    out.push_str(&format!("{},{d}\n", i + 1));
                }
                out
            });
            let payload = json!({"n": f.num_vars, "max_power": max_power, "depths": f.depths});
            Ok(Outcome {
                digest: Some(digest),
                field: Some(field),
                raw,
                ..Outcome::new(payload)
            })
        }
        Command::VerifyBound {
            file,
            invariant,
            max_power,
            field,
        } => {
            let (g, digest) = load(&file)?;
            if max_power == 0 {
                return Err(InputError("--max-power must be at least 1".into()));
            }
            let report = match invariant {
                InvariantKind::Epsilon => verify_epsilon_bound(&g, max_power, field)?,
                InvariantKind::Alpha2 => verify_alpha2_bound(&g, max_power, field)?,
            };
            let violated = !report.holds;
            Ok(Outcome {
                digest: Some(digest),
                field: Some(field),
                violated,
                ..Outcome::new(json!(report))
            })
        }
        Command::Certificate {
            file,
            power,
            invariant,
            field,
            h_edges,
            random_leaves,
            out,
        } => {
            let (g, digest) = load(&file)?;
            let h = parse_h_edges(&g, &h_edges)?;
            let t: Vec<Edge> = g
                .edges()
                .iter()
                .filter(|e| !h.contains(e))
                .cloned()
                .collect();
            let inst = MixedIdealInstance::new(g, h, t, power)?;
            let choice = if random_leaves {
                LeafChoice::Random(seed)
            } else {
                LeafChoice::Least
            };
            let cert = build_certificate_with(&inst, invariant, field, choice)?;
            let replay = verify_certificate(&cert);
            let mut payload = json!({
                "invariant": invariant,
                "s": power,
                "nodes": cert.nodes,
                "all_ok": cert.all_ok,
                "replay": match &replay { Ok(_) => "ok".to_string(), Err(e) => e.to_string() },
            });
            match out {
                Some(path) => {
                    let text = serde_json::to_string_pretty(&cert.to_json())?;
                    fs::write(&path, text + "\n")
                        .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
                    payload["out"] = json!(path.display().to_string());
                }
                None => payload["certificate"] = cert.to_json(),
            }
            let violated = !cert.all_ok || replay.is_err();
            Ok(Outcome {
                digest: Some(digest),
                field: Some(field),
                violated,
                ..Outcome::new(payload)
            })
        }
        Command::Gen {
            kind,
            n,
            edges,
            max_edge_size,
            connected,
            out,
        } => {
            let config = GenConfig {
                vertices: n,
                max_edge_size,
                edges,
                seed,
                connected,
            };
            let g = match kind {
                Kind::Forest => random_forest(&GenConfig {
                    max_edge_size: 2,
                    ..config
                })?,
                Kind::Hyperforest => random_hyperforest(&config)?,
            };
            let text = to_text(&g);
            match out {
                Some(path) => {
                    fs::write(&path, &text)
                        .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
                    let payload = json!({
                        "out": path.display().to_string(),
                        "vertices": g.num_vertices(),
                        "edges": g.num_edges(),
                        "seed": seed,
                    });
                    Ok(Outcome {
                        digest: Some(hex::encode(Sha256::digest(text.as_bytes()))),
                        ..Outcome::new(payload)
                    })
                }
                None => Ok(Outcome {
                    raw: Some(text),
                    ..Outcome::new(Value::Null)
                }),
            }
        }
        Command::Selftest { extended } => {
            let (payload, all_pass) = selftest::run(extended);
            Ok(Outcome {
                field: Some(Field::Rationals),
                violated: !all_pass,
                ..Outcome::new(payload)
            })
        }
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let cli = Cli::parse();
    if let Err(e) = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build_global()
    {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let start = Instant::now();
    let outcome = match run(cli.command, cli.seed) {
        Ok(o) => o,
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    match outcome.raw {
        Some(raw) => print!("{raw}"),
        None => {
            let report = json!({
                "command": args[1..],
                "input_digest": outcome.digest,
                "payload": outcome.payload,
                "timing": {"elapsed_ms": start.elapsed().as_secs_f64() * 1000.0},
                "field": outcome.field,
                "version": env!("CARGO_PKG_VERSION"),
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("report serializes")
            );
        }
    }
    ExitCode::from(u8::from(outcome.violated))
}
