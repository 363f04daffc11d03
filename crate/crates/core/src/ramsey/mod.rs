//! Two-coloured complete graphs: forced monochromatic even cycles, the
//! spanning-cycle extraction on order `2n`, certificates for colourings of
//! `K_⌊(2−β)n⌋` with no monochromatic `C_n`, the pancyclicity verdict on
//! `K_{2n−1}`, and the colouring sweeps that check these statements.

mod arrth;
mod cycth1;
mod le4;
mod sweep;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{Color, TwoColoring};
use crate::cycles::{cycle_of_length_within, CycleError, Deadline, Timeout};

pub use arrth::{
    arrth_sweep, arrth_verdict, arrth_verdict_within, ArrthError, ArrthReport, ArrthSweepReport, ColorSpectrum, Verdict,
};
pub use cycth1::{
    certificate_exists, cycth1_certificate, cycth1_certificate_within, host_order, thin_checks,
    verify_ramsey_certificate, CertificateMethod, Cycth1Error, RamseyCertificate,
};
pub use le4::{le4_extract, validate_le4, Le4Error, Le4Extraction};
pub use sweep::{
    coloring_from_mask, edge_index, ramsey_sweep, sampled_mask, Exemplar, SweepError, SweepMode, SweepOptions,
    SweepReport, SweepRun,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoCycle {
    pub color: Color,
    pub cycle: Vec<usize>,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum MonoError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// With `counterexample` set the host is exactly `K_{3k−1}` with
    /// `k ≥ 3`, where a monochromatic `C_2k` is forced.
    #[error("no monochromatic C_{len} (host K_{p}){}", if *.counterexample { "; this contradicts the forced-cycle fact" } else { "" })]
    NotFound { len: usize, p: usize, counterexample: bool },
    #[error(transparent)]
    Timeout(#[from] Timeout),
}

/// First monochromatic cycle of length `t` in search order, red first.
pub(crate) fn mono_cycle(col: &TwoColoring, t: usize, deadline: &Deadline) -> Result<Option<MonoCycle>, Timeout> {
    if t < 3 || t > col.n() {
        return Ok(None);
    }
    for color in [Color::Red, Color::Blue] {
        match cycle_of_length_within(col.class(color), t, deadline) {
            Ok(Some(cycle)) => return Ok(Some(MonoCycle { color, cycle })),
            Ok(None) => {}
            Err(CycleError::Timeout(t)) => return Err(t),
            Err(CycleError::LengthOutOfRange { .. }) => unreachable!("length checked"),
        }
    }
    Ok(None)
}

/// A monochromatic `C_2k` in a colouring of a complete graph on at least
/// `3k − 1` vertices.
pub fn mono_even_cycle(col: &TwoColoring, k: usize) -> Result<MonoCycle, MonoError> {
    if k < 2 {
        return Err(MonoError::Precondition(format!("k = {k} is below 2")));
    }
    if !col.is_complete_host() {
        return Err(MonoError::Precondition("host is not complete".into()));
    }
    let p = col.n();
    if p < 3 * k - 1 {
        return Err(MonoError::Precondition(format!(
            "host K_{p} has fewer than 3k - 1 = {} vertices",
            3 * k - 1
        )));
    }
    match mono_cycle(col, 2 * k, &Deadline::NONE)? {
        Some(m) => Ok(m),
        None => Err(MonoError::NotFound {
            len: 2 * k,
            p,
            counterexample: k >= 3 && p == 3 * k - 1,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::validate_cycle;
    use crate::named;

    #[test]
    fn mono_even_cycle_examples() {
        let all_red = TwoColoring::complete_from_red_graph(named::complete(5)).unwrap();
        let m = mono_even_cycle(&all_red, 2).unwrap();
        assert_eq!(m.color, Color::Red);
        assert_eq!(m.cycle.len(), 4);

        let red = named::complete_bipartite(2, 3);
        let col = TwoColoring::complete_from_red_graph(red.clone()).unwrap();
        let m = mono_even_cycle(&col, 2).unwrap();
        assert_eq!(m.color, Color::Red);
        validate_cycle(&red, &m.cycle).unwrap();

        // K5 as two 5-cycles: neither contains C4
        let col = TwoColoring::complete_from_red_graph(named::cycle(5)).unwrap();
        assert_eq!(
            mono_even_cycle(&col, 2),
            Err(MonoError::NotFound {
                len: 4,
                p: 5,
                counterexample: false
            })
        );
        assert!(matches!(mono_even_cycle(&col, 3), Err(MonoError::Precondition(_))));
        assert!(matches!(mono_even_cycle(&col, 1), Err(MonoError::Precondition(_))));
    }
}
