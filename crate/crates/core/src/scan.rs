//! Parallel deterministic range scans with a resumable journal.
//!
//! A scan partitions [lo, hi] into contiguous chunks of d, evaluates each
//! chunk on a worker pool sharing one immutable sieve, and merges results
//! in ascending chunk order, so the emitted record stream is identical for
//! any chunk size and worker count. When a journal is attached, every
//! emitted record is written as a JSON line followed by a chunk-completion
//! marker; resuming replays the committed prefix and rescans from the first
//! incomplete chunk (a torn trailing line is discarded).

use crate::arith::{self, SpfTable};
use crate::omega::{self, FrVariant, OmegaQuery, Parity, Sign};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::mpsc;
use thiserror::Error;

pub const JOURNAL_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum ScanError {
    #[error("invalid range: lo = {lo}, hi = {hi} (need 1 <= lo <= hi)")]
    BadRange { lo: u64, hi: u64 },
    #[error("chunk size must be at least 1")]
    BadChunkSize,
    #[error("sieve sizing failed: {0}")]
    Sieve(#[from] arith::ArithError),
    #[error("journal I/O failed: {0}")]
    Journal(#[from] std::io::Error),
    #[error("unrecoverable journal: {0}")]
    UnrecoverableJournal(String),
}

/// Which profile a scan evaluates for each d.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanProfile {
    MOdd,
    MEven,
    MEvenReal,
    MAllFromZero,
    Fr(FrVariant),
}

impl ScanProfile {
    fn query(&self, d: u64) -> Option<OmegaQuery> {
        let (sign, parity, x_min) = match self {
            ScanProfile::MOdd => (Sign::Plus, Parity::Odd, 1),
            ScanProfile::MEven => (Sign::Plus, Parity::Even, 2),
            ScanProfile::MEvenReal => (Sign::Minus, Parity::Even, 2),
            ScanProfile::MAllFromZero => (Sign::Plus, Parity::All, 0),
            ScanProfile::Fr(_) => return None,
        };
        Some(OmegaQuery { d, sign, parity, x_min })
    }

    /// Largest value whose factorization the scan can request, for sieve
    /// sizing: d + x² <= 2*hi for the plus sign, d - x² <= hi otherwise.
    pub fn sieve_limit_for(&self, hi: u64) -> Option<u64> {
        match self {
            ScanProfile::MOdd | ScanProfile::MEven | ScanProfile::MAllFromZero => {
                Some((2 * hi).max(2))
            }
            ScanProfile::MEvenReal => Some(hi.max(2)),
            // FR criteria only test primality of quotients; no sieve needed.
            ScanProfile::Fr(_) => None,
        }
    }

    /// Evaluate d against the profile with fail-fast threshold semantics.
    /// `None` means d fails; `Some((max_omega, witness))` means it passes.
    /// For FR profiles, d outside the variant's congruence class fails.
    pub fn evaluate(
        &self,
        d: u64,
        threshold: u32,
        table: Option<&SpfTable>,
    ) -> Option<(u32, Option<u64>)> {
        match self {
            ScanProfile::Fr(variant) => match omega::fr_check(d, *variant) {
                Ok(true) => Some((0, None)),
                _ => None,
            },
            _ => {
                let q = self.query(d).expect("omega profile");
                omega::omega_profile_bounded(&q, threshold, table)
                    .expect("d >= 1")
                    .map(|r| (r.max_omega, r.witness_x))
            }
        }
    }
}

/// Residue condition: d mod modulus lies in `remainders`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueClass {
    pub modulus: u64,
    pub remainders: Vec<u64>,
}

/// Multiplicative shape of d.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    Any,
    Prime,
    TwoDistinctPrimes,
    PrimeOrTwoDistinctPrimes,
    NeitherPrimeNorTwoDistinctPrimes,
}

/// Predicate selecting which d a scan or verification considers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DFilter {
    pub residue: Option<ResidueClass>,
    pub squarefree: Option<bool>,
    pub shape: Shape,
    pub min_d: u64,
}

impl Default for DFilter {
    fn default() -> Self {
        DFilter { residue: None, squarefree: None, shape: Shape::Any, min_d: 1 }
    }
}

impl DFilter {
    pub fn accepts(&self, d: u64, table: Option<&SpfTable>) -> bool {
        if d < self.min_d {
            return false;
        }
        if let Some(r) = &self.residue {
            if !r.remainders.contains(&(d % r.modulus)) {
                return false;
            }
        }
        if self.squarefree.is_none() && self.shape == Shape::Any {
            return true;
        }
        let f = arith::factor(d, table).expect("d >= 1");
        if let Some(want) = self.squarefree {
            if f.is_squarefree() != want {
                return false;
            }
        }
        let prime = f.is_prime();
        let pq = f.is_two_distinct_primes();
        match self.shape {
            Shape::Any => true,
            Shape::Prime => prime,
            Shape::TwoDistinctPrimes => pq,
            Shape::PrimeOrTwoDistinctPrimes => prime || pq,
            Shape::NeitherPrimeNorTwoDistinctPrimes => !prime && !pq,
        }
    }
}

/// A scan over d in [lo, hi].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanJob {
    pub lo: u64,
    pub hi: u64,
    pub profile: ScanProfile,
    pub threshold: u32,
    pub filter: DFilter,
    pub chunk_size: u64,
    #[serde(skip)]
    pub journal_path: Option<PathBuf>,
}

/// One passing d. `pass` is always consistent with
/// `max_omega <= threshold`; only passing records are emitted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub d: u64,
    pub max_omega: u32,
    pub witness_x: Option<u64>,
    pub pass: bool,
}

/// Runtime knobs, orthogonal to the job definition.
#[derive(Debug, Clone, Default)]
pub struct ScanOptions {
    /// Worker threads; 0 means all available cores.
    pub workers: usize,
    /// Override the automatically sized sieve limit.
    pub sieve_limit: Option<u64>,
    /// Stop after this many chunks (used to exercise interruption).
    pub max_chunks: Option<u64>,
}

#[derive(Debug)]
pub struct ScanOutcome {
    /// All passing records in ascending d, including replayed ones.
    pub records: Vec<ResultRecord>,
    /// Chunks committed so far (across all runs of this journal).
    pub chunks_done: u64,
    /// Whether the full range has been scanned.
    pub complete: bool,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "record", rename_all = "snake_case")]
enum JournalLine {
    Header {
        format_version: u32,
        lo: u64,
        hi: u64,
        profile: ScanProfile,
        threshold: u32,
        filter: DFilter,
        chunk_size: u64,
    },
    Result {
        d: u64,
        max_omega: u32,
        witness_x: Option<u64>,
        pass: bool,
    },
    ChunkDone {
        chunk: u64,
        ts_ms: u64,
    },
}

fn now_ms() -> u64 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_millis() as u64)
        .unwrap_or(0)
}

struct JournalWriter {
    out: BufWriter<File>,
}

impl JournalWriter {
    fn create(path: &Path, job: &ScanJob) -> Result<Self, ScanError> {
        let file = File::create(path)?;
        let mut w = JournalWriter { out: BufWriter::new(file) };
        w.write_line(&JournalLine::Header {
            format_version: JOURNAL_FORMAT_VERSION,
            lo: job.lo,
            hi: job.hi,
            profile: job.profile,
            threshold: job.threshold,
            filter: job.filter.clone(),
            chunk_size: job.chunk_size,
        })?;
        w.out.flush()?;
        Ok(w)
    }

    fn append(path: &Path, truncate_to: u64) -> Result<Self, ScanError> {
        let file = OpenOptions::new().write(true).open(path)?;
        file.set_len(truncate_to)?;
        let file = OpenOptions::new().append(true).open(path)?;
        Ok(JournalWriter { out: BufWriter::new(file) })
    }

    fn write_line(&mut self, line: &JournalLine) -> Result<(), ScanError> {
        let s = serde_json::to_string(line).expect("journal lines serialize");
        self.out.write_all(s.as_bytes())?;
        self.out.write_all(b"\n")?;
        Ok(())
    }

    fn write_record(&mut self, r: &ResultRecord) -> Result<(), ScanError> {
        self.write_line(&JournalLine::Result {
            d: r.d,
            max_omega: r.max_omega,
            witness_x: r.witness_x,
            pass: r.pass,
        })
    }

    fn commit_chunk(&mut self, chunk: u64) -> Result<(), ScanError> {
        self.write_line(&JournalLine::ChunkDone { chunk, ts_ms: now_ms() })?;
        self.out.flush()?;
        Ok(())
    }
}

fn n_chunks(job: &ScanJob) -> u64 {
    (job.hi - job.lo) / job.chunk_size + 1
}

fn eval_chunk(job: &ScanJob, chunk: u64, table: Option<&SpfTable>) -> Vec<ResultRecord> {
    let lo = job.lo + chunk * job.chunk_size;
    let hi = job.hi.min(lo.saturating_add(job.chunk_size - 1));
    let mut out = Vec::new();
    for d in lo..=hi {
        if !job.filter.accepts(d, table) {
            continue;
        }
        if let Some((max_omega, witness_x)) = job.profile.evaluate(d, job.threshold, table) {
            out.push(ResultRecord { d, max_omega, witness_x, pass: true });
        }
    }
    out
}

fn resolve_workers(requested: usize) -> usize {
    if requested > 0 {
        requested
    } else {
        std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
    }
}

/// Build the sieve a job needs, honoring an explicit override.
pub fn build_scan_sieve(
    job: &ScanJob,
    opts: &ScanOptions,
) -> Result<Option<SpfTable>, ScanError> {
    let limit = match opts.sieve_limit {
        Some(l) => Some(l),
        None => job.profile.sieve_limit_for(job.hi),
    };
    match limit {
        Some(l) if l >= 2 => Ok(Some(arith::build_spf(l)?)),
        _ => Ok(None),
    }
}

/// Run a scan from scratch. Creates the journal (if any) with a fresh
/// header before scanning.
pub fn scan(job: &ScanJob, opts: &ScanOptions) -> Result<ScanOutcome, ScanError> {
    validate(job)?;
    let journal = match &job.journal_path {
        Some(p) => Some(JournalWriter::create(p, job)?),
        None => None,
    };
    run_chunks(job, opts, 0, Vec::new(), journal)
}

fn validate(job: &ScanJob) -> Result<(), ScanError> {
    if job.lo == 0 || job.lo > job.hi || job.hi > crate::omega::MAX_D {
        return Err(ScanError::BadRange { lo: job.lo, hi: job.hi });
    }
    if job.chunk_size == 0 {
        return Err(ScanError::BadChunkSize);
    }
    Ok(())
}

fn run_chunks(
    job: &ScanJob,
    opts: &ScanOptions,
    start_chunk: u64,
    prior: Vec<ResultRecord>,
    mut journal: Option<JournalWriter>,
) -> Result<ScanOutcome, ScanError> {
    let table = build_scan_sieve(job, opts)?;
    let total = n_chunks(job);
    let end_chunk = match opts.max_chunks {
        Some(m) => total.min(start_chunk + m),
        None => total,
    };
    let workers = resolve_workers(opts.workers);

    let next = AtomicU64::new(start_chunk);
    let (tx, rx) = mpsc::channel::<(u64, Vec<ResultRecord>)>();
    let mut records = prior;
    let mut committed = start_chunk;
    let mut failure: Option<ScanError> = None;

    std::thread::scope(|s| {
        for _ in 0..workers {
            let tx = tx.clone();
            let table = table.as_ref();
            let next = &next;
            s.spawn(move || loop {
                let chunk = next.fetch_add(1, Ordering::Relaxed);
                if chunk >= end_chunk {
                    break;
                }
                let recs = eval_chunk(job, chunk, table);
                if tx.send((chunk, recs)).is_err() {
                    break;
                }
            });
        }
        drop(tx);

        // Single merge point: commit chunks strictly in ascending order.
        let mut buffer: BTreeMap<u64, Vec<ResultRecord>> = BTreeMap::new();
        'merge: for (chunk, recs) in rx.iter() {
            buffer.insert(chunk, recs);
            while let Some(recs) = buffer.remove(&committed) {
                if let Some(w) = journal.as_mut() {
                    for r in &recs {
                        if let Err(e) = w.write_record(r) {
                            failure = Some(e);
                            break 'merge; // dropping rx unblocks the workers
                        }
                    }
                    if let Err(e) = w.commit_chunk(committed) {
                        failure = Some(e);
                        break 'merge;
                    }
                }
                records.extend(recs);
                committed += 1;
            }
        }
    });

    if let Some(e) = failure {
        return Err(e);
    }
    Ok(ScanOutcome {
        records,
        chunks_done: committed,
        complete: committed == total,
    })
}

/// A parsed journal, ready to continue scanning.
#[derive(Debug)]
pub struct ResumedScan {
    pub job: ScanJob,
    pub completed_chunks: u64,
    prior: Vec<ResultRecord>,
    truncate_to: u64,
}

impl ResumedScan {
    /// True when the journaled scan already covered its whole range.
    pub fn is_finished(&self) -> bool {
        self.completed_chunks >= n_chunks(&self.job)
    }

    /// Continue scanning; the outcome contains the full record set of the
    /// job (replayed committed records plus newly scanned ones), identical
    /// to what an uninterrupted run would have produced.
    pub fn run(self, opts: &ScanOptions) -> Result<ScanOutcome, ScanError> {
        let journal_path = self.job.journal_path.clone().expect("resumed from a path");
        let journal = JournalWriter::append(&journal_path, self.truncate_to)?;
        run_chunks(&self.job, opts, self.completed_chunks, self.prior, Some(journal))
    }
}

/// Parse a journal and prepare the continuation. The header must parse;
/// a torn trailing line is tolerated and its chunk rescanned.
pub fn resume(path: &Path) -> Result<ResumedScan, ScanError> {
    let mut raw = Vec::new();
    File::open(path)?.read_to_end(&mut raw)?;
    let mut offset = 0usize;
    let mut lines = Vec::new(); // (line bytes, end offset)
    while offset < raw.len() {
        match raw[offset..].iter().position(|&b| b == b'\n') {
            Some(rel) => {
                lines.push((&raw[offset..offset + rel], offset + rel + 1));
                offset += rel + 1;
            }
            None => {
                lines.push((&raw[offset..], raw.len()));
                break;
            }
        }
    }
    let Some(&(first, header_end)) = lines.first() else {
        return Err(ScanError::UnrecoverableJournal("empty journal".into()));
    };
    let header: JournalLine = serde_json::from_slice(first)
        .map_err(|e| ScanError::UnrecoverableJournal(format!("bad header: {e}")))?;
    let JournalLine::Header {
        format_version,
        lo,
        hi,
        profile,
        threshold,
        filter,
        chunk_size,
    } = header
    else {
        return Err(ScanError::UnrecoverableJournal(
            "first line is not a header".into(),
        ));
    };
    if format_version != JOURNAL_FORMAT_VERSION {
        return Err(ScanError::UnrecoverableJournal(format!(
            "unsupported format version {format_version}"
        )));
    }
    let job = ScanJob {
        lo,
        hi,
        profile,
        threshold,
        filter,
        chunk_size,
        journal_path: Some(path.to_path_buf()),
    };
    validate(&job)?;

    let mut prior = Vec::new();
    let mut pending: Vec<ResultRecord> = Vec::new();
    let mut completed = 0u64;
    let mut truncate_to = header_end as u64;
    for &(line, end) in &lines[1..] {
        let Ok(parsed) = serde_json::from_slice::<JournalLine>(line) else {
            break; // torn or corrupt tail: discard, rescan its chunk
        };
        match parsed {
            JournalLine::Result { d, max_omega, witness_x, pass } => {
                pending.push(ResultRecord { d, max_omega, witness_x, pass });
            }
            JournalLine::ChunkDone { chunk, .. } => {
                if chunk != completed {
                    return Err(ScanError::UnrecoverableJournal(format!(
                        "chunk markers out of order: expected {completed}, found {chunk}"
                    )));
                }
                prior.append(&mut pending);
                completed += 1;
                truncate_to = end as u64;
            }
            JournalLine::Header { .. } => {
                return Err(ScanError::UnrecoverableJournal(
                    "duplicate header line".into(),
                ));
            }
        }
    }
    Ok(ResumedScan { job, completed_chunks: completed, prior, truncate_to })
}
