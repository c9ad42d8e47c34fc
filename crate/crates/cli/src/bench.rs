//! Benchmark runner: times index builds and query batches for each
//! (method, family, n) combination and emits one CSV row apiece.
//!
//! Query pairs are sampled once per (family, n) and reused for every
//! method: pick `v` uniformly, then `d` uniformly in `[0, depth(v)]`.
//! Both tree generation and sampling draw from ChaCha8 streams seeded
//! with the one `--seed` value, so everything except the timing columns
//! is reproducible.

use std::fs;
use std::hint::black_box;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::time::Instant;

use la_core::baselines::{jump_la, naive_la, JumpTable};
use la_core::{generate, LevelAncestorIndex, Tree, TreeFamily, TreeGenSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::Method;

pub const CSV_HEADER: &str = "method,family,n,build_ns,query_ns_mean,comparisons_mean,queries,seed";

pub const DEFAULT_SIZES: [usize; 5] = [1 << 10, 1 << 11, 1 << 12, 1 << 13, 1 << 14];

pub fn default_families() -> Vec<String> {
    ["path", "star", "caterpillar", "balanced_kary:2", "random_attachment"]
        .map(String::from)
        .to_vec()
}

/// One output row.
pub struct BenchRecord {
    pub method: Method,
    pub family: TreeFamily,
    pub n: usize,
    pub build_ns: u64,
    pub query_ns_mean: f64,
    /// Mean label comparisons per query; only the label index reports it.
    pub comparisons_mean: Option<f64>,
    pub queries: usize,
    pub seed: u64,
}

impl BenchRecord {
    fn csv_row(&self) -> String {
        let comparisons = match self.comparisons_mean {
            Some(c) => format!("{c:.3}"),
            None => String::new(),
        };
        format!(
            "{},{},{},{},{:.1},{},{},{}",
            self.method.name(),
            self.family,
            self.n,
            self.build_ns,
            self.query_ns_mean,
            comparisons,
            self.queries,
            self.seed
        )
    }
}

pub fn cmd_bench(
    families: &[String],
    sizes: &[usize],
    queries: usize,
    seed: u64,
    out: Option<&Path>,
) -> Result<(), Box<dyn std::error::Error>> {
    if sizes.is_empty() || sizes.iter().any(|&n| n < 1) {
        return Err("bench sizes must be >= 1".into());
    }
    if queries < 1 {
        return Err("bench needs at least one query".into());
    }
    let families =
        families.iter().map(|f| f.parse::<TreeFamily>()).collect::<Result<Vec<_>, _>>()?;

    let mut w: BufWriter<Box<dyn Write>> = BufWriter::new(match out {
        Some(path) => Box::new(fs::File::create(path)?),
        None => Box::new(std::io::stdout()),
    });
    writeln!(w, "{CSV_HEADER}")?;
    for &family in &families {
        for &n in sizes {
            let tree = generate(&TreeGenSpec::new(family, n, seed))?;
            let pairs = sample_queries(&tree, queries, seed);
            for method in [Method::PaperIndex, Method::JumpPointer, Method::Naive] {
                let record = run_one(&tree, &pairs, method, family, seed);
                writeln!(w, "{}", record.csv_row())?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

/// Uniform (v, d) pairs over valid queries, deterministic per seed.
pub fn sample_queries(tree: &Tree, count: usize, seed: u64) -> Vec<(usize, u32)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let v = rng.random_range(0..tree.len());
            let d = rng.random_range(0..=tree.depths()[v]);
            (v, d)
        })
        .collect()
}

fn run_one(
    tree: &Tree,
    pairs: &[(usize, u32)],
    method: Method,
    family: TreeFamily,
    seed: u64,
) -> BenchRecord {
    let mut checksum = 0usize;
    let (build_ns, query_ns_mean, comparisons_mean) = match method {
        Method::PaperIndex => {
            let start = Instant::now();
            let index = black_box(LevelAncestorIndex::new(tree));
            let build_ns = start.elapsed().as_nanos() as u64;

            let start = Instant::now();
            for &(v, d) in pairs {
                checksum = checksum.wrapping_add(index.level_ancestor(v, d).unwrap());
            }
            let elapsed = start.elapsed().as_nanos() as f64;

            // Separate untimed pass so instrumentation never skews timing.
            let mut comparisons = 0u64;
            for &(v, d) in pairs {
                let (_, stats) = index.level_ancestor_with_stats(v, d).unwrap();
                comparisons += stats.comparisons as u64;
            }
            (build_ns, elapsed / pairs.len() as f64, Some(comparisons as f64 / pairs.len() as f64))
        }
        Method::JumpPointer => {
            let start = Instant::now();
            let table = black_box(JumpTable::new(tree));
            let build_ns = start.elapsed().as_nanos() as u64;

            let start = Instant::now();
            for &(v, d) in pairs {
                checksum = checksum.wrapping_add(jump_la(&table, tree.depths(), v, d).unwrap());
            }
            (build_ns, start.elapsed().as_nanos() as f64 / pairs.len() as f64, None)
        }
        Method::Naive => {
            // No preprocessing at all.
            let start = Instant::now();
            for &(v, d) in pairs {
                checksum = checksum.wrapping_add(naive_la(tree, v, d).unwrap());
            }
            (0, start.elapsed().as_nanos() as f64 / pairs.len() as f64, None)
        }
    };
    black_box(checksum);
    BenchRecord {
        method,
        family,
        n: tree.len(),
        build_ns,
        query_ns_mean,
        comparisons_mean,
        queries: pairs.len(),
        seed,
    }
}
