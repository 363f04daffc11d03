//! Exhaustive and sampled sweeps over colourings of `K_p`.
//!
//! Colourings are bit masks over the edges of `K_p` in lexicographic order,
//! bit set meaning red. The exhaustive sweep fixes edge `(0, 1)` red,
//! counts each mask twice, and splits the counter range into contiguous
//! shards; sample `i` of a sampled sweep is drawn from stream `i` of a
//! seeded ChaCha8 generator. Both are therefore independent of the shard
//! count.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{to_coloring_text, TwoColoring};
use crate::cycles::has_cycle_of_length;
use crate::rational::Rational;

use super::cycth1::{certificate_exists, cycth1_certificate, host_order, verify_ramsey_certificate, CertificateMethod};

/// Largest exhaustive edge count accepted without an override.
pub const EXHAUSTIVE_EDGE_LIMIT: usize = 30;
const EXEMPLAR_CAP: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepMode {
    Exhaustive,
    Sampled { samples: u64, seed: u64 },
}

#[derive(Clone, Debug)]
pub struct SweepOptions {
    pub n: usize,
    pub beta: Rational,
    pub mode: SweepMode,
    pub shards: usize,
    /// Allow exhaustive sweeps above [`EXHAUSTIVE_EDGE_LIMIT`] edges.
    pub allow_large: bool,
    /// Text file rewritten with each shard's progress.
    pub checkpoint: Option<PathBuf>,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SweepError {
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("exhaustive space of 2^{edges} colourings exceeds the limit of 2^{limit} without an override")]
    SpaceTooLarge { edges: usize, limit: usize },
    #[error("shard misconfiguration: {0}")]
    Shards(String),
    #[error("checkpoint: {0}")]
    Checkpoint(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exemplar {
    /// Counter value (exhaustive) or sample index (sampled).
    pub index: u64,
    pub reason: String,
    pub coloring: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub n: usize,
    pub beta: Rational,
    pub p: usize,
    pub mode: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Masks actually evaluated.
    pub examined: u64,
    /// Colourings accounted for; twice `examined` under the halving.
    pub total: u64,
    pub mono_found: u64,
    pub certificate_found: u64,
    pub failures: u64,
    /// Colourings where the constructed certificate and a direct search
    /// for any certificate disagree on existence.
    pub mismatches: u64,
    pub pipeline_certificates: u64,
    pub exhaustive_search_certificates: u64,
    /// `"|U1|/|U2|"` to count.
    pub certificate_sizes: BTreeMap<String, u64>,
    pub failure_exemplars: Vec<Exemplar>,
}

impl SweepReport {
    fn absorb(&mut self, other: SweepReport) {
        self.examined += other.examined;
        self.total += other.total;
        self.mono_found += other.mono_found;
        self.certificate_found += other.certificate_found;
        self.failures += other.failures;
        self.mismatches += other.mismatches;
        self.pipeline_certificates += other.pipeline_certificates;
        self.exhaustive_search_certificates += other.exhaustive_search_certificates;
        for (k, v) in other.certificate_sizes {
            *self.certificate_sizes.entry(k).or_default() += v;
        }
        self.failure_exemplars.extend(other.failure_exemplars);
    }
}

/// A sweep result with the parts that vary between runs kept apart from
/// the deterministic report.
#[derive(Clone, Debug)]
pub struct SweepRun {
    pub report: SweepReport,
    pub elapsed: Duration,
    pub layout: Vec<(u64, u64)>,
}

/// Edges of `K_p` in lexicographic order.
pub fn edge_index(p: usize) -> Vec<(usize, usize)> {
    (0..p).flat_map(|u| (u + 1..p).map(move |v| (u, v))).collect()
}

/// The colouring of `K_p` whose red edges are the set bits of `mask`.
pub fn coloring_from_mask(p: usize, mask: u64) -> TwoColoring {
    let red: Vec<(usize, usize)> = edge_index(p)
        .into_iter()
        .enumerate()
        .filter(|&(i, _)| mask >> i & 1 == 1)
        .map(|(_, e)| e)
        .collect();
    TwoColoring::complete_from_red(p, &red).expect("complete host")
}

/// Uniform colouring mask on `m` edges for sample `index`.
pub fn sampled_mask(seed: u64, index: u64, m: usize) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let word = rng.next_u64();
    if m >= 64 {
        word
    } else {
        word & ((1u64 << m) - 1)
    }
}

/// Red and blue adjacency rows of a mask.
pub(crate) struct RowBuilder {
    edges: Vec<(usize, usize)>,
    full: Vec<u64>,
}

impl RowBuilder {
    pub(crate) fn new(p: usize) -> Self {
        let all = if p == 64 { !0 } else { (1u64 << p) - 1 };
        RowBuilder {
            edges: edge_index(p),
            full: (0..p).map(|v| all & !(1 << v)).collect(),
        }
    }

    pub(crate) fn rows(&self, mask: u64, red: &mut [u64], blue: &mut [u64]) {
        red.fill(0);
        let mut bits = mask;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let (u, v) = self.edges[i];
            red[u] |= 1 << v;
            red[v] |= 1 << u;
        }
        for (b, (r, f)) in blue.iter_mut().zip(red.iter().zip(&self.full)) {
            *b = f & !r;
        }
    }
}

pub(crate) fn shard_ranges(space: u64, shards: usize) -> Result<Vec<(u64, u64)>, SweepError> {
    if shards == 0 {
        return Err(SweepError::Shards("at least one shard is needed".into()));
    }
    if shards as u64 > space.max(1) {
        return Err(SweepError::Shards(format!("{shards} shards for a space of {space}")));
    }
    let s = shards as u128;
    Ok((0..s)
        .map(|i| ((i * space as u128 / s) as u64, ((i + 1) * space as u128 / s) as u64))
        .collect())
}

/// Runs `work` over every index of every range on its own thread and
/// returns the per-shard accumulators in range order. Progress is the next
/// unprocessed index of each shard, written to `checkpoint` while running.
pub(crate) fn run_shards<A, F>(
    ranges: &[(u64, u64)],
    checkpoint: Option<&PathBuf>,
    init: impl Fn() -> A + Sync,
    work: F,
) -> Result<Vec<A>, SweepError>
where
    A: Send,
    F: Fn(&mut A, u64) + Sync,
{
    let progress: Vec<AtomicU64> = ranges.iter().map(|&(s, _)| AtomicU64::new(s)).collect();
    let done = AtomicUsize::new(0);
    let write = |final_pass: bool| -> Result<(), SweepError> {
        let Some(path) = checkpoint else {
            return Ok(());
        };
        let mut text = String::from("# shard start end next\n");
        for (i, (&(s, e), p)) in ranges.iter().zip(&progress).enumerate() {
            let next = if final_pass { e } else { p.load(Ordering::Relaxed) };
            text.push_str(&format!("{i} {s} {e} {next}\n"));
        }
        std::fs::write(path, text).map_err(|e| SweepError::Checkpoint(format!("{}: {e}", path.display())))
    };
    let results = std::thread::scope(|scope| -> Result<Vec<A>, SweepError> {
        let handles: Vec<_> = ranges
            .iter()
            .zip(&progress)
            .map(|(&(start, end), prog)| {
                let (init, work, done) = (&init, &work, &done);
                scope.spawn(move || {
                    let mut acc = init();
                    for i in start..end {
                        work(&mut acc, i);
                        if i & 0xffff == 0xffff {
                            prog.store(i + 1, Ordering::Relaxed);
                        }
                    }
                    prog.store(end, Ordering::Relaxed);
                    done.fetch_add(1, Ordering::Release);
                    acc
                })
            })
            .collect();
        if checkpoint.is_some() {
            let mut last = Instant::now();
            while done.load(Ordering::Acquire) < ranges.len() {
                std::thread::sleep(Duration::from_millis(50));
                if last.elapsed() >= Duration::from_secs(5) {
                    write(false)?;
                    last = Instant::now();
                }
            }
        }
        Ok(handles
            .into_iter()
            .map(|h| h.join().expect("sweep worker panicked"))
            .collect())
    })?;
    write(true)?;
    Ok(results)
}

pub fn ramsey_sweep(opts: &SweepOptions) -> Result<SweepRun, SweepError> {
    let started = Instant::now();
    let n = opts.n;
    let beta = &opts.beta;
    if n < 4 || !beta.is_positive() || *beta > Rational::new((n / 2) as i64, n as i64) {
        return Err(SweepError::BadParameters(format!(
            "need n >= 4 and 0 < beta <= floor(n/2)/n, got n = {n}, beta = {beta}"
        )));
    }
    let p = host_order(n, beta);
    let m = p * (p - 1) / 2;
    if m > 64 {
        return Err(SweepError::BadParameters(format!(
            "K_{p} has {m} edges; masks hold at most 64"
        )));
    }
    let (space, weight, samples, seed, mode) = match opts.mode {
        SweepMode::Exhaustive => {
            if m > EXHAUSTIVE_EDGE_LIMIT && !opts.allow_large {
                return Err(SweepError::SpaceTooLarge {
                    edges: m,
                    limit: EXHAUSTIVE_EDGE_LIMIT,
                });
            }
            if m > 63 {
                return Err(SweepError::BadParameters(format!("2^{m} colourings cannot be counted")));
            }
            (1u64 << (m - 1), 2u64, None, None, "exhaustive")
        }
        SweepMode::Sampled { samples, seed } => (samples, 1, Some(samples), Some(seed), "sampled"),
    };
    let layout = shard_ranges(space, opts.shards)?;
    let builder = RowBuilder::new(p);
    let exhaustive = weight == 2;
    let to_mask = |i: u64| {
        if exhaustive {
            1 | i << 1
        } else {
            sampled_mask(seed.unwrap_or(0), i, m)
        }
    };
    let parts = run_shards(&layout, opts.checkpoint.as_ref(), SweepReport::default, |acc, i| {
        let mask = to_mask(i);
        let mut red = [0u64; 64];
        let mut blue = [0u64; 64];
        let (red, blue) = (&mut red[..p], &mut blue[..p]);
        builder.rows(mask, red, blue);
        acc.examined += 1;
        acc.total += weight;
        let red_first = 2 * mask.count_ones() as usize >= m;
        let (first, second) = if red_first { (&*red, &*blue) } else { (&*blue, &*red) };
        if has_cycle_of_length(first, n) || has_cycle_of_length(second, n) {
            acc.mono_found += weight;
            return;
        }
        classify(acc, p, n, beta, mask, i, weight);
    })?;
    let mut report = SweepReport {
        n,
        beta: beta.clone(),
        p,
        mode: mode.into(),
        samples,
        seed,
        ..SweepReport::default()
    };
    for part in parts {
        report.absorb(part);
    }
    report.failure_exemplars.sort_by_key(|e| e.index);
    report.failure_exemplars.truncate(EXEMPLAR_CAP);
    Ok(SweepRun {
        report,
        elapsed: started.elapsed(),
        layout,
    })
}

/// A colouring with no monochromatic `C_n`: certificate, verification and
/// the existence cross-check.
fn classify(acc: &mut SweepReport, p: usize, n: usize, beta: &Rational, mask: u64, index: u64, weight: u64) {
    let col = coloring_from_mask(p, mask);
    let exists = certificate_exists(&col, n, beta);
    let fail = |acc: &mut SweepReport, reason: String| {
        acc.failures += weight;
        if acc.failure_exemplars.len() < EXEMPLAR_CAP {
            acc.failure_exemplars.push(Exemplar {
                index,
                reason,
                coloring: to_coloring_text(&col),
            });
        }
    };
    match cycth1_certificate(&col, n, beta) {
        Ok(cert) => {
            let rep = verify_ramsey_certificate(&col, &cert, n, beta);
            if !exists {
                acc.mismatches += weight;
            }
            if rep.passed {
                acc.certificate_found += weight;
                match cert.method {
                    CertificateMethod::Pipeline => acc.pipeline_certificates += weight,
                    CertificateMethod::ExhaustiveSearch => acc.exhaustive_search_certificates += weight,
                }
                *acc.certificate_sizes
                    .entry(format!("{}/{}", cert.u1.len(), cert.u2.len()))
                    .or_default() += weight;
            } else {
                fail(acc, format!("certificate rejected: {:?}", rep.failures()));
            }
        }
        Err(e) => {
            if exists {
                acc.mismatches += weight;
            }
            fail(acc, e.to_string());
        }
    }
}
