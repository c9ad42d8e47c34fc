//! `la`: build level-ancestor indexes, answer query files, generate trees,
//! and benchmark the index against jump-pointer and naive baselines.

mod bench;

use std::fs;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use la_core::baselines::{jump_la, naive_la, JumpTable};
use la_core::{LevelAncestorIndex, SearchLayout, Tree, TreeFamily, TreeGenSpec};

#[derive(Parser)]
#[command(name = "la", version, about = "Level ancestor queries on rooted trees")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a tree file, build the index, and report its shape
    Build {
        /// Tree in parent-array format (line 1: n; line 2: parents, -1 = root)
        tree: PathBuf,
        /// Write an index snapshot to this file
        #[arg(long)]
        out: Option<PathBuf>,
        /// Depth-array search layout
        #[arg(long, value_enum, default_value_t)]
        layout: LayoutArg,
    },
    /// Answer "v d" queries from a file, one result line per query
    Query {
        /// Tree in parent-array format
        tree: PathBuf,
        /// Query file: one "v d" pair per line
        queries: PathBuf,
        /// Implementation to answer with
        #[arg(long, value_enum)]
        method: Method,
        /// Depth-array search layout (paper_index only)
        #[arg(long, value_enum, default_value_t)]
        layout: LayoutArg,
    },
    /// Generate a tree and write it in parent-array format
    Gen {
        /// path | star | caterpillar | balanced_kary[:K] | random_attachment
        family: String,
        /// Node count
        n: usize,
        /// Seed (only random_attachment consumes it)
        seed: u64,
        /// Output file
        out: PathBuf,
    },
    /// Time index builds and queries across tree families, emit CSV
    Bench {
        /// Comma-separated families
        #[arg(long, value_delimiter = ',', default_values_t = bench::default_families())]
        families: Vec<String>,
        /// Comma-separated node counts
        #[arg(long, value_delimiter = ',', default_values_t = bench::DEFAULT_SIZES)]
        sizes: Vec<usize>,
        /// Queries timed per (method, family, n) row
        #[arg(long, default_value_t = 1000)]
        queries: usize,
        /// Seed for tree generation and query sampling
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// CSV output file (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum, Default)]
enum LayoutArg {
    #[default]
    Sorted,
    Eytzinger,
}

impl From<LayoutArg> for SearchLayout {
    fn from(a: LayoutArg) -> SearchLayout {
        match a {
            LayoutArg::Sorted => SearchLayout::Sorted,
            LayoutArg::Eytzinger => SearchLayout::Eytzinger,
        }
    }
}

/// Which implementation answers the queries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Pre-order label index with predecessor search
    #[value(name = "paper_index")]
    PaperIndex,
    /// Binary lifting over a table of 2^j-th ancestors
    #[value(name = "jump_pointer")]
    JumpPointer,
    /// Brute-force parent walking
    #[value(name = "naive")]
    Naive,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::PaperIndex => "paper_index",
            Method::JumpPointer => "jump_pointer",
            Method::Naive => "naive",
        }
    }
}

type CliResult = Result<(), Box<dyn std::error::Error>>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Build { tree, out, layout } => cmd_build(&tree, out.as_deref(), layout.into()),
        Command::Query { tree, queries, method, layout } => {
            cmd_query(&tree, &queries, method, layout.into())
        }
        Command::Gen { family, n, seed, out } => cmd_gen(&family, n, seed, &out),
        Command::Bench { families, sizes, queries, seed, out } => {
            bench::cmd_bench(&families, &sizes, queries, seed, out.as_deref())
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn load_tree(path: &std::path::Path) -> Result<Tree, Box<dyn std::error::Error>> {
    let text = fs::read_to_string(path)?;
    Ok(Tree::from_text(&text)?)
}

fn cmd_build(
    tree_path: &std::path::Path,
    out: Option<&std::path::Path>,
    layout: SearchLayout,
) -> CliResult {
    let tree = load_tree(tree_path)?;
    let start = Instant::now();
    let index = LevelAncestorIndex::with_layout(&tree, layout);
    let build_ns = start.elapsed().as_nanos();
    println!("n={} max_depth={} build_ns={}", index.len(), index.max_depth(), build_ns);
    if let Some(path) = out {
        let mut w = BufWriter::new(fs::File::create(path)?);
        index.write_snapshot(&mut w)?;
        w.flush()?;
    }
    Ok(())
}

fn cmd_query(
    tree_path: &std::path::Path,
    queries_path: &std::path::Path,
    method: Method,
    layout: SearchLayout,
) -> CliResult {
    let tree = load_tree(tree_path)?;
    let queries = parse_queries(&fs::read_to_string(queries_path)?)?;

    // Build whatever the chosen method needs up front.
    let index = match method {
        Method::PaperIndex => Some(LevelAncestorIndex::with_layout(&tree, layout)),
        _ => None,
    };
    let jump = match method {
        Method::JumpPointer => Some(JumpTable::new(&tree)),
        _ => None,
    };

    let stdout = std::io::stdout();
    let mut w = BufWriter::new(stdout.lock());
    for &(v, d) in &queries {
        let answer = answer_one(&tree, index.as_ref(), jump.as_ref(), method, v, d);
        match answer {
            Ok(a) => writeln!(w, "{a}")?,
            Err(code) => writeln!(w, "ERR {code}")?,
        }
    }
    w.flush()?;
    Ok(())
}

/// Runs one query through the selected method, normalizing out-of-range
/// inputs so all methods print byte-identical results.
fn answer_one(
    tree: &Tree,
    index: Option<&LevelAncestorIndex>,
    jump: Option<&JumpTable>,
    method: Method,
    v: u64,
    d: u64,
) -> Result<usize, &'static str> {
    if v >= tree.len() as u64 {
        return Err("NodeOutOfRange");
    }
    let v = v as usize;
    if d > u32::MAX as u64 {
        return Err("DepthBelowNode");
    }
    let d = d as u32;
    let result = match method {
        Method::PaperIndex => index.unwrap().level_ancestor(v, d),
        Method::JumpPointer => jump_la(jump.unwrap(), tree.depths(), v, d),
        Method::Naive => naive_la(tree, v, d),
    };
    result.map_err(|e| e.code())
}

fn parse_queries(text: &str) -> Result<Vec<(u64, u64)>, String> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let (Some(v), Some(d), None) = (it.next(), it.next(), it.next()) else {
            return Err(format!("query line {}: expected \"v d\"", lineno + 1));
        };
        let v: u64 =
            v.parse().map_err(|_| format!("query line {}: bad node id {v:?}", lineno + 1))?;
        let d: u64 =
            d.parse().map_err(|_| format!("query line {}: bad depth {d:?}", lineno + 1))?;
        out.push((v, d));
    }
    Ok(out)
}

fn cmd_gen(family: &str, n: usize, seed: u64, out: &std::path::Path) -> CliResult {
    let family: TreeFamily = family.parse()?;
    let spec = TreeGenSpec::new(family, n, seed);
    let parents = la_core::generate_parents(&spec)?;
    fs::write(out, la_core::tree::parent_array_text(&parents))?;
    Ok(())
}
