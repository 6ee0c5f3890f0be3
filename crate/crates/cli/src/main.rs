//! `topocode` command-line front end. JSON in, JSON out; Topcode-matrices
//! use their three-line text form.
//!
//! Exit codes: 0 success, 1 the input was read but rejected, 2 usage or
//! malformed input.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;
use serde_json::json;
use topocode_core::caterpillar::{
    caterpillar_all_magic, odd_graceful_subdivision, CaterpillarSpec,
};
use topocode_core::counting::{a_leaf_count, partition_a, partition_n};
use topocode_core::graph::LeafPlan;
use topocode_core::lattice::{
    collapse_same_colors, construction_compose, larvc_compose, ColoredBase, CompositionRecipe,
    ConstructionMode,
};
use topocode_core::rla::{color_tree, rla_continuous, rla_single, LeafOrder};
use topocode_core::topcode::{
    emit_string, realize_matrix, realize_merged, to_topcode_matrix, TopcodeMatrix,
};
use topocode_core::transforms::{apply, TransformKind};
use topocode_core::validators::{check_graceful, check_odd_graceful, check_w_magic, ColoringClass};
use topocode_core::vault::{authenticate, vault_decrypt, vault_encrypt, AuthBundle};
use topocode_core::{fixtures, ColoredGraph, Error, Graph, MagicKind, VertexId};

#[derive(Parser)]
#[command(
    name = "topocode",
    version,
    about = "Odd-edge magic colorings, leaf adding, graphic lattices and Topcode-matrices"
)]
struct Cli {
    /// Input file; `-` or absent reads stdin.
    #[arg(long, short, global = true)]
    input: Option<PathBuf>,
    /// Output file; absent writes stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a colored graph against a coloring class.
    Verify {
        /// edge-magic, edge-difference, felicitous-difference,
        /// graceful-difference, odd-graceful or graceful.
        #[arg(long)]
        kind: String,
        #[arg(long)]
        set_ordered: bool,
    },
    /// Apply a set-dual or odd-equivalence transform to a colored graph.
    Transform {
        /// dual, dual-star, set-xy, set-xy-star, set-x, set-x-star, set-y,
        /// set-y-star or odd-<kind>.
        #[arg(long)]
        kind: TransformKind,
    },
    /// Add leaves to a colored graph, keeping it W-magic.
    Rla {
        #[arg(long)]
        kind: MagicKind,
        /// Leaves per vertex, e.g. `3:2,5:1`.
        #[arg(long)]
        leaves: String,
        #[arg(long, value_enum, default_value_t = RlaMode::Continuous)]
        mode: RlaMode,
        #[arg(long, default_value = "ascending")]
        order: String,
        /// Seed for the random leaf order.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Color a tree (JSON graph) with an odd-edge W-magic coloring.
    TreeColor {
        #[arg(long)]
        kind: MagicKind,
    },
    /// Set-ordered odd-graceful caterpillar from per-spine leaf counts.
    Caterpillar {
        /// Leaf counts along the spine, e.g. `2,0,3`.
        #[arg(long, value_delimiter = ',', required = true)]
        spec: Vec<usize>,
        /// Return the W-magic coloring of this kind instead.
        #[arg(long)]
        kind: Option<MagicKind>,
    },
    /// Graphic-lattice operations.
    Lattice {
        #[command(subcommand)]
        op: LatticeOp,
    },
    /// Partition and leaf-adding counts.
    Count {
        #[command(subcommand)]
        what: CountOp,
    },
    /// Topcode-matrix extraction, realization and number strings.
    Topcode {
        #[command(subcommand)]
        op: TopcodeOp,
    },
    /// Twin-pair authentication and the file vault.
    Auth {
        #[command(subcommand)]
        op: AuthOp,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum RlaMode {
    Single,
    Continuous,
}

#[derive(Subcommand)]
enum LatticeOp {
    /// Compose copies of a base (input: JSON list of colored graphs).
    Compose {
        #[arg(long)]
        kind: MagicKind,
        /// Recipe JSON file.
        #[arg(long)]
        recipe: PathBuf,
        #[arg(long, value_enum)]
        mode: Option<Mode>,
    },
    /// Merge non-adjacent vertices sharing a color.
    Collapse,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Linear,
    Nonlinear,
}

#[derive(Subcommand)]
enum CountOp {
    /// Partitions of m into parts of size at most k.
    A { m: usize, k: usize },
    /// Partitions of m whose largest part is k.
    N { m: usize, k: usize },
    /// Ways to add m leaves to p vertices, both closed forms.
    Aleaf { p: usize, m: usize },
}

#[derive(Subcommand)]
enum TopcodeOp {
    /// Colored graph JSON to matrix text.
    Extract,
    /// Matrix text to every realization (JSON list), or the merged one.
    Realize {
        #[arg(long, default_value_t = 12)]
        cap: usize,
        #[arg(long)]
        merged: bool,
    },
    /// Matrix text to a number string.
    Emit {
        /// Permutation index (decimal).
        #[arg(long, default_value = "0")]
        perm_index: BigUint,
    },
}

#[derive(Subcommand)]
enum AuthOp {
    /// Write an authentication bundle; without sides, the built-in twin pair.
    Keygen {
        #[arg(long, requires = "private")]
        public: Option<PathBuf>,
        #[arg(long, requires = "public")]
        private: Option<PathBuf>,
        #[arg(long, default_value = "0")]
        perm_index: BigUint,
        #[arg(long, default_value = "odd-graceful")]
        class: String,
    },
    /// Check a bundle and its own strings.
    Verify,
    /// Seal the input file with a bundle.
    Encrypt {
        #[arg(long)]
        bundle: PathBuf,
    },
    /// Open a vault with a private side (colored graph JSON).
    Decrypt {
        #[arg(long)]
        private: PathBuf,
        #[arg(long, default_value = "odd-graceful")]
        class: String,
    },
}

/// Failure split by exit code.
enum Failure {
    Rejected(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_validation() {
            Failure::Rejected(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Usage(format!("bad JSON: {e}"))
    }
}

type Outcome<T = ()> = Result<T, Failure>;

struct Io {
    input: Option<PathBuf>,
    output: Option<PathBuf>,
}

impl Io {
    fn read_bytes(&self) -> Outcome<Vec<u8>> {
        let mut buf = Vec::new();
        match &self.input {
            Some(p) if p.as_os_str() != "-" => buf = fs::read(p)?,
            _ => {
                io::stdin().read_to_end(&mut buf)?;
            }
        }
        Ok(buf)
    }

    fn read_text(&self) -> Outcome<String> {
        String::from_utf8(self.read_bytes()?)
            .map_err(|_| Failure::Usage("input is not UTF-8".into()))
    }

    fn read_json<T: serde::de::DeserializeOwned>(&self) -> Outcome<T> {
        Ok(serde_json::from_slice(&self.read_bytes()?)?)
    }

    fn write_bytes(&self, bytes: &[u8]) -> Outcome {
        match &self.output {
            Some(p) => fs::write(p, bytes)?,
            None => io::stdout().write_all(bytes)?,
        }
        Ok(())
    }

    fn write_json<T: Serialize>(&self, v: &T) -> Outcome {
        let mut s = serde_json::to_string_pretty(v)?;
        s.push('\n');
        self.write_bytes(s.as_bytes())
    }
}

fn read_json_file<T: serde::de::DeserializeOwned>(p: &PathBuf) -> Outcome<T> {
    Ok(serde_json::from_slice(&fs::read(p)?)?)
}

fn parse_class(s: &str) -> Outcome<ColoringClass> {
    if s == "odd-graceful" {
        return Ok(ColoringClass::OddGraceful);
    }
    s.parse().map(ColoringClass::Magic).map_err(Failure::from)
}

fn parse_leaves(s: &str) -> Outcome<LeafPlan> {
    let mut plan = LeafPlan::default();
    for part in s.split(',').filter(|p| !p.trim().is_empty()) {
        let (v, n) = part
            .split_once(':')
            .ok_or_else(|| Failure::Usage(format!("leaf entry {part:?} is not vertex:count")))?;
        let v: u32 = v
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("bad vertex {v:?}")))?;
        let n: usize = n
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("bad count {n:?}")))?;
        *plan.counts.entry(VertexId(v)).or_insert(0) += n;
    }
    Ok(plan)
}

fn big(v: &BigUint) -> String {
    v.to_string()
}

fn verify(io: &Io, kind: &str, set_ordered: bool) -> Outcome {
    let cg: ColoredGraph = io.read_json()?;
    let (g, c) = (&cg.graph, &cg.coloring);
    let report = match kind {
        "odd-graceful" | "graceful" => {
            let r = if kind == "graceful" {
                check_graceful(g, c, set_ordered)?
            } else {
                check_odd_graceful(g, c, set_ordered)?
            };
            let valid = r.valid;
            io.write_json(&r)?;
            if !valid {
                return Err(Failure::Rejected(
                    r.failure.unwrap_or_else(|| "not set-ordered".into()),
                ));
            }
            return Ok(());
        }
        k => {
            let kind: MagicKind = k.parse()?;
            check_w_magic(g, c, kind)?
        }
    };
    if set_ordered && !report.is_set_ordered {
        io.write_json(&report)?;
        return Err(Failure::Rejected("coloring is not set-ordered".into()));
    }
    io.write_json(&report)
}

fn run(cli: Cli) -> Outcome {
    let io = Io {
        input: cli.input,
        output: cli.output,
    };
    match cli.command {
        Command::Verify { kind, set_ordered } => verify(&io, &kind, set_ordered),
        Command::Transform { kind } => {
            let cg: ColoredGraph = io.read_json()?;
            let out = apply(&cg.graph, &cg.coloring, kind)?;
            io.write_json(&json!({ "graph": cg.graph, "coloring": out.coloring, "transform": out }))
        }
        Command::Rla {
            kind,
            leaves,
            mode,
            order,
            seed,
        } => {
            let cg: ColoredGraph = io.read_json()?;
            let plan = parse_leaves(&leaves)?;
            let r = match mode {
                RlaMode::Single => rla_single(&cg.graph, &cg.coloring, &plan, kind)?,
                RlaMode::Continuous => {
                    let order = LeafOrder::parse(&order, seed)?;
                    rla_continuous(&cg.graph, &cg.coloring, &plan, kind, order)?
                }
            };
            io.write_json(&r)
        }
        Command::TreeColor { kind } => {
            let g: Graph = io.read_json()?;
            let c = color_tree(&g, kind)?;
            io.write_json(&ColoredGraph::new(g, c))
        }
        Command::Caterpillar { spec, kind } => {
            let spec = CaterpillarSpec::new(spec);
            let (g, f) = odd_graceful_subdivision(&spec)?;
            let c = match kind {
                None => f,
                Some(k) => {
                    caterpillar_all_magic(&spec)?
                        .remove(&k)
                        .expect("all kinds present")
                        .0
                }
            };
            io.write_json(&ColoredGraph::new(g, c))
        }
        Command::Lattice { op } => match op {
            LatticeOp::Compose { kind, recipe, mode } => {
                let members: Vec<ColoredGraph> = io.read_json()?;
                let base = ColoredBase::new(members, kind)?;
                let recipe: CompositionRecipe = read_json_file(&recipe)?;
                let out = match mode {
                    None => larvc_compose(&base, &recipe)?,
                    Some(Mode::Linear) => {
                        construction_compose(&base, &recipe, ConstructionMode::Linear)?
                    }
                    Some(Mode::Nonlinear) => {
                        construction_compose(&base, &recipe, ConstructionMode::Nonlinear)?
                    }
                };
                io.write_json(&out)
            }
            LatticeOp::Collapse => {
                let cg: ColoredGraph = io.read_json()?;
                io.write_json(&collapse_same_colors(&cg.graph, &cg.coloring)?)
            }
        },
        Command::Count { what } => match what {
            CountOp::A { m, k } => {
                io.write_json(&json!({ "m": m, "k": k, "count": partition_a(m, k)?.to_string() }))
            }
            CountOp::N { m, k } => {
                io.write_json(&json!({ "m": m, "k": k, "count": partition_n(m, k)?.to_string() }))
            }
            CountOp::Aleaf { p, m } => {
                let r = a_leaf_count(p, m)?;
                let terms: Vec<_> = r
                    .terms
                    .iter()
                    .map(|t| json!({ "k": t.k, "n": t.n_mk.to_string(), "falling": big(&t.falling), "simplified": big(&t.simplified) }))
                    .collect();
                io.write_json(&json!({
                    "p": r.p, "m": r.m,
                    "falling": big(&r.falling), "simplified": big(&r.simplified),
                    "diverges": r.diverges, "k_exceeds_p": r.k_exceeds_p, "terms": terms,
                }))
            }
        },
        Command::Topcode { op } => match op {
            TopcodeOp::Extract => {
                let cg: ColoredGraph = io.read_json()?;
                let m = to_topcode_matrix(&cg.graph, &cg.coloring)?;
                io.write_bytes(format!("{m}\n").as_bytes())
            }
            TopcodeOp::Realize { cap, merged } => {
                let m: TopcodeMatrix = io.read_text()?.parse()?;
                if merged {
                    let (g, c) = realize_merged(&m)?;
                    io.write_json(&ColoredGraph::new(g, c))
                } else {
                    let all: Vec<ColoredGraph> = realize_matrix(&m, cap)?
                        .into_iter()
                        .map(|(g, c)| ColoredGraph::new(g, c))
                        .collect();
                    log::info!("{} realizations", all.len());
                    io.write_json(&all)
                }
            }
            TopcodeOp::Emit { perm_index } => {
                let m: TopcodeMatrix = io.read_text()?.parse()?;
                io.write_json(&emit_string(&m, &perm_index)?)
            }
        },
        Command::Auth { op } => auth(&io, op),
    }
}

fn auth(io: &Io, op: AuthOp) -> Outcome {
    match op {
        AuthOp::Keygen {
            public,
            private,
            perm_index,
            class,
        } => {
            let bundle = match (public, private) {
                (Some(p), Some(s)) => AuthBundle {
                    public: read_json_file(&p)?,
                    private: read_json_file(&s)?,
                    rule: perm_index,
                    class: parse_class(&class)?,
                },
                _ => AuthBundle {
                    rule: perm_index,
                    ..fixtures::auth_bundle()?
                },
            };
            let (s_pub, s_priv) = bundle.strings()?;
            let verdict = authenticate(&bundle, &s_pub, &s_priv);
            if !verdict.accepted {
                return Err(Failure::Rejected(verdict.diagnostic.unwrap_or_default()));
            }
            io.write_json(&bundle)
        }
        AuthOp::Verify => {
            let bundle: AuthBundle = io.read_json()?;
            let (s_pub, s_priv) = bundle.strings()?;
            let verdict = authenticate(&bundle, &s_pub, &s_priv);
            io.write_json(&verdict)?;
            if verdict.accepted {
                Ok(())
            } else {
                Err(Failure::Rejected(verdict.diagnostic.unwrap_or_default()))
            }
        }
        AuthOp::Encrypt { bundle } => {
            let bundle: AuthBundle = read_json_file(&bundle)?;
            let sealed = vault_encrypt(&io.read_bytes()?, &bundle)?;
            io.write_bytes(&sealed)
        }
        AuthOp::Decrypt { private, class } => {
            let private: ColoredGraph = read_json_file(&private)?;
            let data = vault_decrypt(&io.read_bytes()?, &private, parse_class(&class)?)?;
            io.write_bytes(&data)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("TOPOCODE_LOG")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Rejected(why)) => {
            eprintln!("rejected: {why}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(why)) => {
            eprintln!("error: {why}");
            ExitCode::from(2)
        }
    }
}
