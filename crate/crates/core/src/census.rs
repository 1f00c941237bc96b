//! The unicyclic census: classify every connected unicyclic graph of a given
//! order by its number of good vertices, in parallel, with resumable
//! per-(order, cycle-length) checkpoints and deterministic output.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::canon::same_orbit;
use crate::good::{analyze, good_vertices, AnalysisReport, GoodVertexError};
use crate::graph::{Graph, VertexId};
use crate::graph6::encode_graph6;
use crate::unicyclic::{composition_units, tree_table_for, for_each_in_unit, EnumerateError};

#[derive(Debug, Error)]
pub enum CensusError {
    #[error("census needs 3 <= min <= max, got {min}..{max}")]
    InvalidRange { min: usize, max: usize },
    #[error(transparent)]
    Enumerate(#[from] EnumerateError),
    #[error(transparent)]
    Good(#[from] GoodVertexError),
    #[error("checkpoint line {line}: {reason}")]
    BadCheckpoint { line: usize, reason: String },
    #[error("verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Census result for one order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusRow {
    pub n: usize,
    /// Number of isomorphism classes of connected unicyclic graphs.
    pub total: u64,
    /// k -> number of classes with exactly k good vertices; k = 0 included.
    pub counts: BTreeMap<usize, u64>,
    pub elapsed: Duration,
    pub workers: usize,
}

#[derive(Debug, Clone)]
pub struct CensusConfig {
    pub n_min: usize,
    pub n_max: usize,
    /// Worker threads; 0 uses the default pool width.
    pub jobs: usize,
    /// Persist graph6 witnesses for every graph with at least this many good
    /// vertices (such graphs are rare).
    pub witness_threshold: usize,
    /// Optional checkpoint manifest for resumable runs.
    pub checkpoint: Option<PathBuf>,
}

impl CensusConfig {
    pub fn range(n_min: usize, n_max: usize) -> Self {
        CensusConfig { n_min, n_max, jobs: 0, witness_threshold: 3, checkpoint: None }
    }
}

#[derive(Debug, Clone, Default)]
pub struct CensusOutcome {
    pub rows: Vec<CensusRow>,
    /// n -> sorted graph6 strings of the witness graphs.
    pub witnesses: BTreeMap<usize, Vec<String>>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
struct PartitionResult {
    total: u64,
    counts: BTreeMap<usize, u64>,
    witnesses: Vec<String>,
}

impl PartitionResult {
    fn absorb(&mut self, other: PartitionResult) {
        self.total += other.total;
        for (k, c) in other.counts {
            *self.counts.entry(k).or_insert(0) += c;
        }
        self.witnesses.extend(other.witnesses);
    }
}

/// Classifies every graph of one (n, c) partition. Pure; the unit list is
/// split across the worker pool.
fn run_partition(
    n: usize,
    c: usize,
    witness_threshold: usize,
) -> Result<PartitionResult, CensusError> {
    let table = tree_table_for(n);
    let units: Vec<_> =
        composition_units(n)?.into_iter().filter(|u| u.cycle_len == c).collect();
    let merged = units
        .par_iter()
        .map(|unit| {
            let mut local = PartitionResult::default();
            for_each_in_unit(&table, unit, |g| {
                let good = good_vertices(&g).expect("enumerated graphs are connected");
                local.total += 1;
                *local.counts.entry(good.len()).or_insert(0) += 1;
                if good.len() >= witness_threshold {
                    local
                        .witnesses
                        .push(encode_graph6(&g).expect("census orders fit graph6"));
                }
            });
            local
        })
        .reduce(PartitionResult::default, |mut a, b| {
            a.absorb(b);
            a
        });
    Ok(merged)
}

/// Runs the census over the configured order range. Counts are independent
/// of the worker count; witnesses are sorted per order.
pub fn run_census(config: &CensusConfig) -> Result<CensusOutcome, CensusError> {
    if config.n_min < 3 || config.n_min > config.n_max {
        return Err(CensusError::InvalidRange { min: config.n_min, max: config.n_max });
    }
    let mut checkpoint = match &config.checkpoint {
        Some(path) => Checkpoint::load_or_create(path)?,
        None => Checkpoint::in_memory(),
    };

    let body = |checkpoint: &mut Checkpoint| -> Result<CensusOutcome, CensusError> {
        let workers = rayon::current_num_threads();
        let mut outcome = CensusOutcome::default();
        for n in config.n_min..=config.n_max {
            let started = Instant::now();
            let mut row_result = PartitionResult::default();
            for c in 3..=n {
                let part = match checkpoint.get(n, c) {
                    Some(stored) => stored,
                    None => {
                        let fresh = run_partition(n, c, config.witness_threshold)?;
                        checkpoint.record(n, c, &fresh)?;
                        fresh
                    }
                };
                row_result.absorb(part);
            }
            let mut counts = row_result.counts;
            counts.entry(0).or_insert(0);
            let mut witnesses = row_result.witnesses;
            witnesses.sort_unstable();
            if !witnesses.is_empty() {
                outcome.witnesses.insert(n, witnesses);
            }
            outcome.rows.push(CensusRow {
                n,
                total: row_result.total,
                counts,
                elapsed: started.elapsed(),
                workers,
            });
        }
        Ok(outcome)
    };

    if config.jobs > 0 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.jobs)
            .build()
            .expect("worker pool");
        pool.install(|| body(&mut checkpoint))
    } else {
        body(&mut checkpoint)
    }
}

/// Long-format CSV: one (n, k) row per line, zero counts written explicitly
/// up to the largest k observed in the run. Timing deliberately excluded so
/// outputs are byte-identical across worker counts.
pub fn census_csv(rows: &[CensusRow]) -> String {
    let max_k = rows
        .iter()
        .flat_map(|r| r.counts.iter().filter(|&(_, &c)| c > 0).map(|(&k, _)| k))
        .max()
        .unwrap_or(0);
    let mut out = String::from("n,total,k,count\n");
    for row in rows {
        for k in 0..=max_k {
            let count = row.counts.get(&k).copied().unwrap_or(0);
            out.push_str(&format!("{},{},{},{}\n", row.n, row.total, k, count));
        }
    }
    out
}

/// Wide human-readable summary, one line per order, with timing.
pub fn census_summary(rows: &[CensusRow]) -> String {
    let max_k = rows
        .iter()
        .flat_map(|r| r.counts.iter().filter(|&(_, &c)| c > 0).map(|(&k, _)| k))
        .max()
        .unwrap_or(0);
    let mut out = String::from("  n      total");
    for k in 1..=max_k {
        out.push_str(&format!("  k={k:<2}"));
    }
    out.push_str("  elapsed  workers\n");
    for row in rows {
        out.push_str(&format!("{:>3} {:>10}", row.n, row.total));
        for k in 1..=max_k {
            out.push_str(&format!(" {:>5}", row.counts.get(&k).copied().unwrap_or(0)));
        }
        out.push_str(&format!("  {:>6.2}s  {}\n", row.elapsed.as_secs_f64(), row.workers));
    }
    out
}

/// Rough work estimate used to warn before very large runs: classifying one
/// order-n graph costs about n^2 BFS steps over ~3n-step graphs.
pub fn estimated_bfs_steps(n_min: usize, n_max: usize) -> u64 {
    // class counts grow by about x2.9 per order past the tabulated range
    let known: &[(usize, u64)] = &[
        (3, 1),
        (4, 2),
        (5, 5),
        (6, 13),
        (7, 33),
        (8, 89),
        (9, 240),
        (10, 657),
        (11, 1806),
        (12, 5026),
        (13, 13999),
        (14, 39260),
    ];
    let classes = |n: usize| -> u64 {
        match known.iter().find(|&&(kn, _)| kn == n) {
            Some(&(_, c)) => c,
            None => {
                let mut c = known.last().unwrap().1 as f64;
                for _ in known.last().unwrap().0..n {
                    c *= 2.9;
                }
                c as u64
            }
        }
    };
    (n_min..=n_max.max(n_min))
        .map(|n| classes(n).saturating_mul((n * n * 3 * n) as u64))
        .sum()
}

/// The unique order-12 unicyclic graph with exactly 6 good vertices,
/// recovered by exhaustive search, together with its analysis.
pub fn find_g12() -> Result<(Graph, AnalysisReport), CensusError> {
    let mut hits: Vec<(Graph, AnalysisReport)> = Vec::new();
    for g in crate::unicyclic::enumerate_unicyclic(12)? {
        let report = analyze(&g)?;
        if report.good_vertices.len() == 6 {
            hits.push((g, report));
        }
    }
    match hits.len() {
        1 => Ok(hits.pop().expect("just checked")),
        other => Err(CensusError::Verification(format!(
            "expected exactly one 6-good order-12 class, found {other}"
        ))),
    }
}

/// True iff some automorphism maps u to v; orbit test on the canonical-form
/// machinery.
pub fn automorphism_check(g: &Graph, u: VertexId, v: VertexId) -> bool {
    same_orbit(g, u, v)
}

/// Scans orders `n_min..=n_max` for a graph with two good vertices in
/// different automorphism orbits.
pub fn find_nonautomorphic_good_pair(
    n_min: usize,
    n_max: usize,
) -> Result<Option<(Graph, VertexId, VertexId)>, CensusError> {
    for n in n_min..=n_max {
        for g in crate::unicyclic::enumerate_unicyclic(n)? {
            let good = good_vertices(&g)?;
            if good.len() < 2 {
                continue;
            }
            for (i, &u) in good.iter().enumerate() {
                for &v in &good[i + 1..] {
                    if !automorphism_check(&g, u, v) {
                        return Ok(Some((g, u, v)));
                    }
                }
            }
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// checkpoint manifest
// ---------------------------------------------------------------------------

const CHECKPOINT_HEADER: &str = "# unicyclic census checkpoint v1";

struct Checkpoint {
    done: BTreeMap<(usize, usize), PartitionResult>,
    sink: Option<Mutex<File>>,
}

impl Checkpoint {
    fn in_memory() -> Self {
        Checkpoint { done: BTreeMap::new(), sink: None }
    }

    fn load_or_create(path: &Path) -> Result<Self, CensusError> {
        let mut done = BTreeMap::new();
        if path.exists() {
            let reader = BufReader::new(File::open(path)?);
            for (idx, line) in reader.lines().enumerate() {
                let line = line?;
                if line.starts_with('#') || line.trim().is_empty() {
                    continue;
                }
                let (key, value) = parse_manifest_line(&line).map_err(|reason| {
                    CensusError::BadCheckpoint { line: idx + 1, reason }
                })?;
                done.insert(key, value);
            }
        } else {
            let mut f = File::create(path)?;
            writeln!(f, "{CHECKPOINT_HEADER}")?;
        }
        let file = OpenOptions::new().append(true).open(path)?;
        Ok(Checkpoint { done, sink: Some(Mutex::new(file)) })
    }

    fn get(&self, n: usize, c: usize) -> Option<PartitionResult> {
        self.done.get(&(n, c)).cloned()
    }

    fn record(&mut self, n: usize, c: usize, result: &PartitionResult) -> Result<(), CensusError> {
        self.done.insert((n, c), result.clone());
        if let Some(sink) = &self.sink {
            let counts: Vec<String> =
                result.counts.iter().map(|(k, v)| format!("{k}:{v}")).collect();
            let mut file = sink.lock().expect("checkpoint lock");
            writeln!(
                file,
                "partition n={n} c={c} total={} counts={} witnesses={}",
                result.total,
                counts.join(","),
                result.witnesses.join(";")
            )?;
            file.flush()?;
        }
        Ok(())
    }
}

fn parse_manifest_line(line: &str) -> Result<((usize, usize), PartitionResult), String> {
    let mut n = None;
    let mut c = None;
    let mut result = PartitionResult::default();
    let body = line.strip_prefix("partition ").ok_or("expected 'partition' record")?;
    for field in body.split_whitespace() {
        let (key, value) = field.split_once('=').ok_or(format!("malformed field {field}"))?;
        match key {
            "n" => n = Some(value.parse::<usize>().map_err(|e| e.to_string())?),
            "c" => c = Some(value.parse::<usize>().map_err(|e| e.to_string())?),
            "total" => result.total = value.parse().map_err(|e: std::num::ParseIntError| e.to_string())?,
            "counts" => {
                for pair in value.split(',').filter(|p| !p.is_empty()) {
                    let (k, v) = pair.split_once(':').ok_or(format!("malformed count {pair}"))?;
                    result.counts.insert(
                        k.parse().map_err(|e: std::num::ParseIntError| e.to_string())?,
                        v.parse().map_err(|e: std::num::ParseIntError| e.to_string())?,
                    );
                }
            }
            "witnesses" => {
                result.witnesses =
                    value.split(';').filter(|w| !w.is_empty()).map(str::to_owned).collect();
            }
            other => return Err(format!("unknown field {other}")),
        }
    }
    match (n, c) {
        (Some(n), Some(c)) => Ok(((n, c), result)),
        _ => Err("missing n or c".into()),
    }
}

/// True when `path` holds a checkpoint that does not yet cover the whole
/// range (a resumable partial run).
pub fn checkpoint_is_partial(path: &Path, n_min: usize, n_max: usize) -> Result<bool, CensusError> {
    if !path.exists() {
        return Ok(false);
    }
    let probe = Checkpoint::load_or_create(path)?;
    for n in n_min..=n_max {
        for c in 3..=n {
            if !probe.done.contains_key(&(n, c)) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row_for(n: usize) -> CensusRow {
        let outcome = run_census(&CensusConfig::range(n, n)).unwrap();
        outcome.rows.into_iter().next().unwrap()
    }

    #[test]
    fn order_nine_row() {
        let row = row_for(9);
        assert_eq!(row.total, 240);
        assert_eq!(row.counts.get(&1), Some(&1));
        assert_eq!(row.counts.get(&2).copied().unwrap_or(0), 0);
        assert_eq!(row.counts[&0], 239);
    }

    #[test]
    fn small_orders_have_no_good_vertices() {
        for n in 3..=8 {
            let row = row_for(n);
            assert_eq!(row.counts[&0], row.total, "n={n}");
        }
    }

    #[test]
    fn counts_are_independent_of_worker_count() {
        let mut one = CensusConfig::range(9, 10);
        one.jobs = 1;
        let mut four = CensusConfig::range(9, 10);
        four.jobs = 4;
        let a = run_census(&one).unwrap();
        let b = run_census(&four).unwrap();
        assert_eq!(census_csv(&a.rows), census_csv(&b.rows));
        assert_eq!(a.witnesses, b.witnesses);
    }

    #[test]
    fn csv_has_explicit_zeros() {
        let outcome = run_census(&CensusConfig::range(9, 9)).unwrap();
        let csv = census_csv(&outcome.rows);
        assert!(csv.starts_with("n,total,k,count\n"));
        assert!(csv.contains("9,240,0,239\n"));
        assert!(csv.contains("9,240,1,1\n"));
    }

    #[test]
    fn checkpoint_roundtrip_and_resume() {
        let dir = std::env::temp_dir().join(format!("census-ckpt-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("manifest.txt");
        let _ = std::fs::remove_file(&path);

        let mut cfg = CensusConfig::range(9, 9);
        cfg.checkpoint = Some(path.clone());
        let first = run_census(&cfg).unwrap();
        assert!(!checkpoint_is_partial(&path, 9, 9).unwrap());
        assert!(checkpoint_is_partial(&path, 9, 10).unwrap());

        // a resumed run reads every partition from the manifest
        let resumed = run_census(&cfg).unwrap();
        assert_eq!(census_csv(&first.rows), census_csv(&resumed.rows));
        assert_eq!(first.witnesses, resumed.witnesses);
        let _ = std::fs::remove_file(&path);
    }

    #[test]
    fn orbit_check_examples() {
        let c6 = Graph::cycle(6);
        assert!(automorphism_check(&c6, 0, 3));
        let p4 = Graph::path(4);
        assert!(!automorphism_check(&p4, 0, 1));
    }
}
