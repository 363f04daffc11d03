//! Colourings of a host on `2n − 1` vertices: is one colour class
//! pancyclic on `[3, n]`?

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{to_coloring_text, TwoColoring};
use crate::cycles::{cover_range, CycleWitness, Deadline, Timeout};
use crate::graph::Graph;
use crate::rational::{Check, Expr, Rational, Relation};

use super::sweep::{coloring_from_mask, run_shards, sampled_mask, shard_ranges, Exemplar, SweepError};

const EXEMPLAR_CAP: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Red,
    Blue,
    Both,
    Neither,
}

impl Verdict {
    pub fn swapped(self) -> Verdict {
        match self {
            Verdict::Red => Verdict::Blue,
            Verdict::Blue => Verdict::Red,
            v => v,
        }
    }

    pub fn from_flags(red: bool, blue: bool) -> Verdict {
        match (red, blue) {
            (true, true) => Verdict::Both,
            (true, false) => Verdict::Red,
            (false, true) => Verdict::Blue,
            (false, false) => Verdict::Neither,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorSpectrum {
    pub witnesses: Vec<CycleWitness>,
    pub missing: Vec<usize>,
}

impl ColorSpectrum {
    pub fn complete(&self) -> bool {
        self.missing.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrthReport {
    pub n: usize,
    pub p: usize,
    pub verdict: Verdict,
    pub red: ColorSpectrum,
    pub blue: ColorSpectrum,
    pub min_host_degree: usize,
    /// `δ > (2 − 10⁻⁶)n`; reported, never enforced.
    pub degree_condition: Check,
    /// Set for a `neither` verdict: the statement concerns large `n` only,
    /// so this is an observation at small order, not a counterexample.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub observation: Option<String>,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ArrthError {
    #[error("host order {0} is not 2n - 1 for any n >= 3")]
    WrongOrder(usize),
    #[error(transparent)]
    Timeout(#[from] Timeout),
}

pub fn arrth_verdict(col: &TwoColoring) -> Result<ArrthReport, ArrthError> {
    arrth_verdict_within(col, &Deadline::NONE)
}

pub fn arrth_verdict_within(col: &TwoColoring, deadline: &Deadline) -> Result<ArrthReport, ArrthError> {
    let p = col.n();
    if p < 5 || p.is_multiple_of(2) {
        return Err(ArrthError::WrongOrder(p));
    }
    let n = p.div_ceil(2);
    let spectrum = |g: &Graph| -> Result<ColorSpectrum, Timeout> {
        let cov = cover_range(g, n, deadline)?;
        Ok(ColorSpectrum {
            witnesses: cov.witnesses,
            missing: cov.missing,
        })
    };
    let red = spectrum(col.red())?;
    let blue = spectrum(col.blue())?;
    let verdict = Verdict::from_flags(red.complete(), blue.complete());
    let min_host_degree = col.host().min_degree();
    let degree_condition = Check::new(
        "degree-condition",
        Expr::count(min_host_degree),
        Relation::Gt,
        (Rational::integer(2) - Rational::new(1, 1_000_000)) * Rational::from_usize(n),
    );
    let observation = (verdict == Verdict::Neither)
        .then(|| format!("neither colour is pancyclic on [3, {n}] at order {p}; the statement is for large n only"));
    Ok(ArrthReport {
        n,
        p,
        verdict,
        red,
        blue,
        min_host_degree,
        degree_condition,
        observation,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrthSweepReport {
    pub n: usize,
    pub p: usize,
    pub samples: u64,
    pub seed: u64,
    pub red: u64,
    pub blue: u64,
    pub both: u64,
    pub neither: u64,
    /// Serialized `neither` colourings, first ones by sample index.
    pub neither_exemplars: Vec<Exemplar>,
}

/// Verdicts for uniform colourings of `K_{2n−1}`.
pub fn arrth_sweep(n: usize, samples: u64, seed: u64, shards: usize) -> Result<ArrthSweepReport, SweepError> {
    if n < 3 {
        return Err(SweepError::BadParameters(format!("n = {n} is below 3")));
    }
    let p = 2 * n - 1;
    let m = p * (p - 1) / 2;
    if m > 64 {
        return Err(SweepError::BadParameters(format!(
            "K_{p} has {m} edges; masks hold at most 64"
        )));
    }
    let layout = shard_ranges(samples, shards)?;
    let parts = run_shards(&layout, None, ArrthSweepReport::default, |acc, i| {
        let col = coloring_from_mask(p, sampled_mask(seed, i, m));
        let rep = arrth_verdict(&col).expect("order checked, no deadline");
        match rep.verdict {
            Verdict::Red => acc.red += 1,
            Verdict::Blue => acc.blue += 1,
            Verdict::Both => acc.both += 1,
            Verdict::Neither => {
                acc.neither += 1;
                if acc.neither_exemplars.len() < EXEMPLAR_CAP {
                    acc.neither_exemplars.push(Exemplar {
                        index: i,
                        reason: format!("red misses {:?}, blue misses {:?}", rep.red.missing, rep.blue.missing),
                        coloring: to_coloring_text(&col),
                    });
                }
            }
        }
    })?;
    let mut out = ArrthSweepReport {
        n,
        p,
        samples,
        seed,
        ..ArrthSweepReport::default()
    };
    for part in parts {
        out.red += part.red;
        out.blue += part.blue;
        out.both += part.both;
        out.neither += part.neither;
        out.neither_exemplars.extend(part.neither_exemplars);
    }
    out.neither_exemplars.sort_by_key(|e| e.index);
    out.neither_exemplars.truncate(EXEMPLAR_CAP);
    Ok(out)
}
