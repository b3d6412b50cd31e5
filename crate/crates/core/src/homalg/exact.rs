use serde::Serialize;

use super::ModuleMap;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactnessFailure {
    /// Index of the offending object in `0 → A_1 → … → A_k → 0`, counting
    /// the leading zero as position 0.
    pub position: usize,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactnessReport {
    pub exact: bool,
    pub failure: Option<ExactnessFailure>,
}

fn fail(position: usize, reason: &str) -> ExactnessReport {
    ExactnessReport {
        exact: false,
        failure: Some(ExactnessFailure {
            position,
            reason: reason.to_string(),
        }),
    }
}

/// Exactness of `0 → A_1 → A_2 → … → A_{k+1} → 0` for the maps `seq`,
/// checked at the two ends first and then left to right; the first failing
/// object is reported.
pub fn exactness_check(seq: &[ModuleMap]) -> Result<ExactnessReport> {
    if seq.is_empty() {
        return Err(Error::Invalid("empty sequence".into()));
    }
    for w in seq.windows(2) {
        if !w[0].target().same_presentation(w[1].source())? {
            return Err(Error::Invalid("maps are not composable".into()));
        }
    }
    if !seq[0].is_injective()? {
        return Ok(fail(1, "first map is not injective"));
    }
    if !seq[seq.len() - 1].is_surjective()? {
        return Ok(fail(seq.len() + 1, "last map is not surjective"));
    }
    for k in 1..seq.len() {
        let (f, g) = (&seq[k - 1], &seq[k]);
        if !f.then(g)?.is_zero()? {
            return Ok(fail(k + 1, "composite is not zero"));
        }
        let im = crate::groebner::Lifter::new(
            f.source().ambient(),
            f.columns(),
            f.target().ngens(),
            f.target().relation_gb()?,
        )?;
        for z in g.kernel_gens()? {
            if !im.contains(&z) {
                return Ok(fail(k + 1, "kernel is larger than image"));
            }
        }
    }
    Ok(ExactnessReport {
        exact: true,
        failure: None,
    })
}
