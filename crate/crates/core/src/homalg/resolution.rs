use std::sync::{Arc, Mutex};

use super::{kernel_over, prune_generators, sort_for_pruning, PresentedModule};
use crate::error::{Error, Result};
use crate::groebner::Vector;

/// `F_0 ← F_1 ← F_2 ← …` with `F_0 = R^ngens`, extended on demand.
///
/// `d_1` is the (pruned) relation list of the module and each later
/// differential is a pruned generating set of the previous kernel over `R`,
/// so every step is a pure function of the presentation.
pub struct FreeResolution {
    module: PresentedModule,
    diffs: Mutex<Vec<Arc<Vec<Vector>>>>,
}

impl FreeResolution {
    pub fn new(module: PresentedModule) -> Self {
        FreeResolution {
            module,
            diffs: Mutex::new(Vec::new()),
        }
    }

    pub fn module(&self) -> &PresentedModule {
        &self.module
    }

    fn ensure(&self, len: usize) -> Result<()> {
        let max = self.module.ambient().limits().max_resolution_length;
        if len > max {
            return Err(Error::Cutoff(format!("resolution length {len} exceeds limit {max}")));
        }
        let ring = self.module.ring();
        let s = self.module.ambient();
        let mut diffs = self.diffs.lock().expect("resolution lock");
        while diffs.len() < len {
            let next = match diffs.last() {
                None => {
                    let rels = self.module.relations().to_vec();
                    prune_generators(s, rels, self.module.ngens(), &ring.ideal_vectors(self.module.ngens()))?
                }
                Some(prev) => {
                    let rank = match diffs.len() {
                        1 => self.module.ngens(),
                        k => diffs[k - 2].len(),
                    };
                    if prev.is_empty() {
                        Vec::new()
                    } else {
                        let mut ker = kernel_over(ring, prev, rank, &[])?;
                        sort_for_pruning(s, &mut ker);
                        prune_generators(s, ker, prev.len(), &ring.ideal_vectors(prev.len()))?
                    }
                }
            };
            diffs.push(Arc::new(next));
        }
        Ok(())
    }

    /// Rank of `F_j`.
    pub fn rank(&self, j: usize) -> Result<usize> {
        if j == 0 {
            return Ok(self.module.ngens());
        }
        Ok(self.differential(j)?.len())
    }

    /// Columns of `d_j : F_j → F_{j-1}` for `j ≥ 1`.
    pub fn differential(&self, j: usize) -> Result<Arc<Vec<Vector>>> {
        assert!(j >= 1, "differentials start at d_1");
        self.ensure(j)?;
        Ok(self.diffs.lock().expect("resolution lock")[j - 1].clone())
    }

    /// Index of the first zero term, searched up to `max`.
    pub fn length(&self, max: usize) -> Result<Option<usize>> {
        for j in 0..=max {
            if self.rank(j)? == 0 {
                return Ok(Some(j.saturating_sub(1)));
            }
        }
        Ok(None)
    }

    /// Number of differentials computed so far.
    pub fn computed(&self) -> usize {
        self.diffs.lock().expect("resolution lock").len()
    }
}

/// `Ω^n M`: `Ω^0 M = M`, otherwise `coker(d_{n+1})` on `F_n`, which is the
/// image of `d_n`.
pub fn syzygy(n: usize, m: &PresentedModule) -> Result<PresentedModule> {
    if n == 0 {
        return Ok(m.clone());
    }
    let res = m.resolution();
    let rank = res.rank(n)?;
    let d = res.differential(n + 1)?;
    PresentedModule::new(m.ring(), rank, d.to_vec())
}
