//! `fitch` — recognize symmetrized Fitch maps, explain trees, build
//! least-resolved trees for monochromatic maps, and generate instances.
//!
//! Machine-readable JSON goes to stdout, human summaries to stderr. Exit
//! codes: 0 accepted / success, 1 rejected, 2 invalid input, 3 resource
//! limit reached.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use fitch_map::compat::{
    recognize, CompatError, IncompatibilityCertificate, Recognition, RejectionReason, SearchLimits,
};
use fitch_map::io::{
    parse_quartet_lines, quartets_to_text, tree_to_dot, tree_to_newick, FormatError, MapDocument,
    TreeDocument,
};
use fitch_map::mono::{is_restricted_fitch, least_resolved_trees, MonoError, MonoRejection, RestrictedVerdict};
use fitch_map::reduction::{
    random_labeled_tree, random_quartet_set, reduce_quartets_to_map, QuartetSet,
};
use fitch_map::sets::{ColorSet, LeafSet, LeafSubset};
use fitch_map::subsplit::Subsplit;
use fitch_map::tree::LabeledTree;
use fitch_map::SymmetricMap;

#[derive(Parser)]
#[command(name = "fitch", version, about = "symmetrized Fitch map toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a map is a symmetrized Fitch map.
    Recognize {
        /// Map JSON file.
        map: PathBuf,
        #[command(flatten)]
        witness: WitnessArgs,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Compute the map explained by an edge-labeled tree.
    Explain {
        /// Tree JSON file.
        tree: PathBuf,
    },
    /// Monochromatic pipeline: restricted recognition plus the
    /// least-resolved tree family.
    Mono {
        /// Map JSON file.
        map: PathBuf,
        #[command(flatten)]
        witness: WitnessArgs,
    },
    /// Encode a quartet set as a map (colors "1"… per quartet).
    Reduce {
        /// Quartet list file (`a b | c d` per line).
        quartets: PathBuf,
        /// Extra ground-set leaves not mentioned in any quartet
        /// (comma-separated).
        #[arg(long, value_delimiter = ',')]
        leaves: Vec<String>,
    },
    /// Generate instances; all randomness sits behind --seed.
    #[command(subcommand)]
    Gen(GenCommand),
}

#[derive(Subcommand)]
enum GenCommand {
    /// A random edge-labeled tree (uniform binary topology).
    Tree {
        /// Leaf count (2..=64).
        #[arg(long)]
        n: usize,
        /// Number of colors; named "1", "2", ….
        #[arg(long)]
        colors: usize,
        /// Probability that a given color lands on a given edge.
        #[arg(long, value_parser = parse_probability)]
        density: f64,
        #[arg(long)]
        seed: u64,
        /// Output file (stdout when omitted).
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// A random quartet set, sampled without replacement.
    Quartets {
        /// Leaf count (4..=64).
        #[arg(long)]
        n: usize,
        /// Number of quartets.
        #[arg(long)]
        k: usize,
        #[arg(long)]
        seed: u64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct WitnessArgs {
    /// Write the witness / representative tree to this file.
    #[arg(long)]
    witness: Option<PathBuf>,
    /// Witness file format.
    #[arg(long, value_enum, default_value_t = TreeFormat::Json)]
    format: TreeFormat,
    /// Shorthand for --format newick.
    #[arg(long, conflicts_with_all = ["dot", "format"])]
    newick: bool,
    /// Shorthand for --format dot.
    #[arg(long, conflicts_with = "format")]
    dot: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TreeFormat {
    Json,
    Newick,
    Dot,
}

impl WitnessArgs {
    fn format(&self) -> TreeFormat {
        if self.newick {
            TreeFormat::Newick
        } else if self.dot {
            TreeFormat::Dot
        } else {
            self.format
        }
    }
}

#[derive(Args)]
struct LimitArgs {
    /// Exact-search leaf cap; instances over it get the resource verdict.
    #[arg(long = "max-n", default_value_t = 16)]
    max_n: usize,
    /// Wall-clock budget for the search, in milliseconds.
    #[arg(long = "time-budget-ms")]
    time_budget_ms: Option<u64>,
    /// Worker threads for the search (answers do not depend on this).
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

impl LimitArgs {
    fn to_limits(&self) -> SearchLimits {
        SearchLimits {
            max_leaves: self.max_n,
            time_budget: self.time_budget_ms.map(Duration::from_millis),
            jobs: self.jobs,
        }
    }
}

fn parse_probability(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if (0.0..=1.0).contains(&v) {
        Ok(v)
    } else {
        Err("probability must lie in [0, 1]".to_owned())
    }
}

/// Failure that ends the process: carries the exit code and what to print.
struct Failure {
    code: u8,
    detail: String,
    /// Resource limits print a verdict, not an error object.
    resource_limit: bool,
}

impl Failure {
    fn invalid(detail: impl Into<String>) -> Self {
        Self { code: 2, detail: detail.into(), resource_limit: false }
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Failure::invalid(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::invalid(e.to_string())
    }
}

impl From<fitch_map::ModelError> for Failure {
    fn from(e: fitch_map::ModelError) -> Self {
        Failure::invalid(e.to_string())
    }
}

impl From<CompatError> for Failure {
    fn from(e: CompatError) -> Self {
        match e {
            CompatError::LeafCapExceeded { .. } | CompatError::TimeBudgetExhausted { .. } => {
                Failure { code: 3, detail: e.to_string(), resource_limit: true }
            }
            other => Failure::invalid(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            if f.resource_limit {
                print_json(&json!({
                    "decision": "undecided-resource-limit",
                    "detail": f.detail,
                }));
                eprintln!("undecided: {}", f.detail);
            } else {
                print_json(&json!({ "error": { "kind": "invalid-input", "detail": f.detail } }));
                eprintln!("error: {}", f.detail);
            }
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Recognize { map, witness, limits } => cmd_recognize(&map, &witness, &limits),
        Command::Explain { tree } => cmd_explain(&tree),
        Command::Mono { map, witness } => cmd_mono(&map, &witness),
        Command::Reduce { quartets, leaves } => cmd_reduce(&quartets, &leaves),
        Command::Gen(gen) => cmd_gen(gen),
    }
}

fn print_json(value: &Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("verdicts serialize"));
}

fn read_map(path: &Path) -> Result<SymmetricMap, Failure> {
    let text = std::fs::read_to_string(path)?;
    Ok(MapDocument::from_json(&text)?.to_map()?)
}

fn subsplit_json(s: &Subsplit, leaves: &LeafSet) -> Value {
    let (a, b) = s.sides();
    json!({ "sides": [leaves.subset_names(a), leaves.subset_names(b)] })
}

fn names(leaves: &LeafSet, subset: LeafSubset) -> Vec<String> {
    leaves.subset_names(subset)
}

fn write_witness(tree: &LabeledTree, args: &WitnessArgs) -> Result<Option<String>, Failure> {
    let Some(path) = &args.witness else { return Ok(None) };
    let rendered = match args.format() {
        TreeFormat::Json => TreeDocument::from_tree(tree).to_json(),
        TreeFormat::Newick => format!("{}\n", tree_to_newick(tree)),
        TreeFormat::Dot => tree_to_dot(tree),
    };
    std::fs::write(path, rendered)?;
    Ok(Some(path.display().to_string()))
}

fn cmd_recognize(map_path: &Path, witness_args: &WitnessArgs, limits: &LimitArgs) -> Result<u8, Failure> {
    let map = read_map(map_path)?;
    let leaves = map.leaf_set().clone();
    match recognize(&map, &limits.to_limits())? {
        Recognition::Fitch { witness } => {
            let file = write_witness(&witness, witness_args)?;
            let mut verdict = json!({
                "decision": "fitch",
                "witness": serde_json::to_value(TreeDocument::from_tree(&witness)).unwrap(),
            });
            if let Some(file) = file {
                verdict["witness_file"] = Value::String(file);
            }
            print_json(&verdict);
            eprintln!("fitch map: explained by a tree with {} vertices", witness.topology().vertex_count());
            Ok(0)
        }
        Recognition::NotFitch { reason } => {
            let reason_json = match &reason {
                RejectionReason::NonPartition { color, violation } => json!({
                    "kind": "non-partition",
                    "color": color,
                    "first": names(&leaves, violation.first),
                    "second": names(&leaves, violation.second),
                    "shared": leaves.name(violation.shared_leaf),
                }),
                RejectionReason::Incompatible { certificate } => json!({
                    "kind": "incompatible-subsplits",
                    "certificate": match certificate {
                        IncompatibilityCertificate::PairwiseObstruction(s1, s2) => json!({
                            "kind": "pairwise-obstruction",
                            "first": subsplit_json(s1, &leaves),
                            "second": subsplit_json(s2, &leaves),
                        }),
                        IncompatibilityCertificate::SearchExhausted => json!({
                            "kind": "search-exhausted",
                        }),
                    },
                }),
            };
            print_json(&json!({ "decision": "not-fitch", "reason": reason_json }));
            eprintln!("not a fitch map");
            Ok(1)
        }
    }
}

fn cmd_explain(tree_path: &Path) -> Result<u8, Failure> {
    let text = std::fs::read_to_string(tree_path)?;
    let tree = TreeDocument::from_json(&text)?.to_tree()?;
    let map = tree.explain();
    print!("{}", MapDocument::from_map(&map).to_json());
    eprintln!(
        "explained map on {} leaves, {} colors",
        map.leaf_count(),
        map.color_set().len()
    );
    Ok(0)
}

fn cmd_mono(map_path: &Path, witness_args: &WitnessArgs) -> Result<u8, Failure> {
    let map = read_map(map_path)?;
    match is_restricted_fitch(&map).map_err(mono_failure)? {
        RestrictedVerdict::NotFitch(rejection) => {
            let reason = match &rejection {
                MonoRejection::TwoColors { first, second } => json!({
                    "kind": "two-colors", "first": first, "second": second,
                }),
                MonoRejection::InducedK1K2 { isolated, edge } => json!({
                    "kind": "induced-k1-k2", "isolated": isolated, "edge": [edge.0, edge.1],
                }),
            };
            print_json(&json!({ "decision": "not-fitch", "reason": reason }));
            eprintln!("not a monochromatic fitch map: {rejection}");
            Ok(1)
        }
        RestrictedVerdict::Fitch => {
            let family = least_resolved_trees(&map).map_err(mono_failure)?;
            let file = write_witness(&family.representative, witness_args)?;
            let parts = match &family.family {
                fitch_map::mono::LeastResolvedFamily::CompleteStar => Value::Null,
                fitch_map::mono::LeastResolvedFamily::PartitionedParts { parts, .. } => json!(parts
                    .iter()
                    .map(|p| names(map.leaf_set(), *p))
                    .collect::<Vec<_>>()),
            };
            let mut verdict = json!({
                "decision": "fitch",
                "color": family.color,
                "family": match family.family {
                    fitch_map::mono::LeastResolvedFamily::CompleteStar => "complete-star",
                    fitch_map::mono::LeastResolvedFamily::PartitionedParts { .. } => "partitioned-parts",
                },
                "parts": parts,
                "constraints": family.describe(),
                "vertex_count": family.vertex_count,
                "representative": serde_json::to_value(TreeDocument::from_tree(&family.representative)).unwrap(),
            });
            if let Some(file) = file {
                verdict["witness_file"] = Value::String(file);
            }
            print_json(&verdict);
            for line in family.describe() {
                eprintln!("{line}");
            }
            Ok(0)
        }
    }
}

fn mono_failure(e: MonoError) -> Failure {
    Failure::invalid(e.to_string())
}

fn cmd_reduce(quartets_path: &Path, extra_leaves: &[String]) -> Result<u8, Failure> {
    let text = std::fs::read_to_string(quartets_path)?;
    let pairs = parse_quartet_lines(&text)?;
    let mut leaf_names: Vec<String> = pairs
        .iter()
        .flat_map(|((a, b), (c, d))| [a.clone(), b.clone(), c.clone(), d.clone()])
        .chain(extra_leaves.iter().cloned())
        .collect();
    leaf_names.sort();
    leaf_names.dedup();
    let ground = LeafSet::new(leaf_names)?;
    let quartets = QuartetSet::from_name_pairs(ground, &pairs)?;
    if quartets.duplicates_dropped() > 0 {
        eprintln!("warning: dropped {} duplicate quartet(s)", quartets.duplicates_dropped());
    }
    let map = reduce_quartets_to_map(&quartets)?;
    print!("{}", MapDocument::from_map(&map).to_json());
    eprintln!("reduced {} quartets to a map on {} leaves", quartets.len(), map.leaf_count());
    Ok(0)
}

fn cmd_gen(gen: GenCommand) -> Result<u8, Failure> {
    match gen {
        GenCommand::Tree { n, colors, density, seed, out } => {
            let color_set = ColorSet::new((1..=colors).map(|i| i.to_string()))?;
            let tree = random_labeled_tree(n, &color_set, density, seed)?;
            emit(out.as_deref(), &TreeDocument::from_tree(&tree).to_json())?;
            eprintln!("generated tree: {} leaves, seed {}", n, seed);
            Ok(0)
        }
        GenCommand::Quartets { n, k, seed, out } => {
            let quartets = random_quartet_set(n, k, seed).map_err(|e| Failure::invalid(e.to_string()))?;
            emit(out.as_deref(), &quartets_to_text(&quartets))?;
            eprintln!("generated {} quartets on {} leaves, seed {}", k, n, seed);
            Ok(0)
        }
    }
}

fn emit(out: Option<&Path>, content: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}
