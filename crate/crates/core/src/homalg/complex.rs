use std::sync::Arc;

use super::{exactness_check, kernel_over, ModuleMap, PresentedModule, QuotientRing};
use crate::error::{Error, Result};
use crate::groebner::{kernel, Vector};
use crate::polyring::{ensure_same, Poly};

/// `X_hi → … → X_lo`, finite free modules with `d_i : X_i → X_{i-1}`.
#[derive(Clone, Debug)]
pub struct BoundedFreeComplex {
    ring: Arc<QuotientRing>,
    lo: i64,
    ranks: Vec<usize>,
    /// `diffs[k]` is `d_{lo+k+1}`, as columns in `S^{rank(lo+k)}`.
    diffs: Vec<Vec<Vector>>,
}

impl BoundedFreeComplex {
    pub fn new(ring: &Arc<QuotientRing>, lo: i64, ranks: Vec<usize>, diffs: Vec<Vec<Vector>>) -> Result<Self> {
        if ranks.is_empty() {
            return Err(Error::Invalid("a complex needs at least one term".into()));
        }
        if diffs.len() + 1 != ranks.len() {
            return Err(Error::Invalid(format!(
                "{} terms need {} differentials, got {}",
                ranks.len(),
                ranks.len() - 1,
                diffs.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.len() != ranks[k + 1] || d.iter().any(|c| c.support_len() > ranks[k]) {
                return Err(Error::Invalid(format!(
                    "differential d_{} has the wrong shape",
                    lo + k as i64 + 1
                )));
            }
        }
        let x = BoundedFreeComplex {
            ring: ring.clone(),
            lo,
            ranks,
            diffs: diffs.into_iter().map(|d| d.iter().map(|c| ring.reduce_vector(c)).collect()).collect(),
        };
        for i in (x.lo + 2)..=x.hi() {
            let (a, b) = (x.differential(i - 1), x.differential(i));
            let target = PresentedModule::free(ring, x.rank(i - 2));
            let f = ModuleMap::new_unchecked(&PresentedModule::free(ring, x.rank(i - 1)), &target, a.to_vec());
            for c in b {
                if !target.element_is_zero(&f.apply(c))? {
                    return Err(Error::Verification(format!("d_{} ∘ d_{} ≠ 0", i - 1, i)));
                }
            }
        }
        Ok(x)
    }

    /// From explicit ranks (degrees `lo, lo+1, …`) and matrices given row by
    /// row, `mats[k]` being `d_{lo+k+1}`.
    pub fn from_matrices(ring: &Arc<QuotientRing>, lo: i64, ranks: Vec<usize>, mats: &[Vec<Vec<Poly>>]) -> Result<Self> {
        if mats.len() + 1 != ranks.len() {
            return Err(Error::Invalid("need one matrix between consecutive terms".into()));
        }
        let mut diffs = Vec::with_capacity(mats.len());
        for (k, m) in mats.iter().enumerate() {
            let (rows, cols) = (ranks[k], ranks[k + 1]);
            let shape_ok = if rows == 0 || cols == 0 {
                m.iter().all(|r| r.is_empty())
            } else {
                m.len() == rows && m.iter().all(|r| r.len() == cols)
            };
            if !shape_ok {
                return Err(Error::Invalid(format!("matrix for d_{} must be {rows}x{cols}", lo + k as i64 + 1)));
            }
            let mut cols_v = Vec::with_capacity(cols);
            for j in 0..cols {
                if rows == 0 {
                    cols_v.push(Vector::zero());
                    continue;
                }
                let entries: Vec<Poly> = m.iter().map(|r| r[j].clone()).collect();
                for e in &entries {
                    ensure_same(ring.ambient(), e.ring())?;
                }
                cols_v.push(Vector::from_polys(&entries));
            }
            diffs.push(cols_v);
        }
        Self::new(ring, lo, ranks, diffs)
    }

    /// The complex with a single free module `R^rank` in degree `deg`.
    pub fn concentrated(ring: &Arc<QuotientRing>, deg: i64, rank: usize) -> Self {
        BoundedFreeComplex {
            ring: ring.clone(),
            lo: deg,
            ranks: vec![rank],
            diffs: Vec::new(),
        }
    }

    /// Presentation complex `F_1 → F_0` of a module, in degrees 1, 0.
    pub fn presentation(m: &PresentedModule) -> Self {
        BoundedFreeComplex {
            ring: m.ring().clone(),
            lo: 0,
            ranks: vec![m.ngens(), m.relations().len()],
            diffs: vec![m.relations().to_vec()],
        }
    }

    /// `F_len → … → F_0` from the module's resolution.
    pub fn truncated_resolution(m: &PresentedModule, len: usize) -> Result<Self> {
        let res = m.resolution();
        let mut ranks = vec![m.ngens()];
        let mut diffs = Vec::new();
        for j in 1..=len {
            diffs.push(res.differential(j)?.to_vec());
            ranks.push(res.rank(j)?);
        }
        Ok(BoundedFreeComplex {
            ring: m.ring().clone(),
            lo: 0,
            ranks,
            diffs,
        })
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.ranks.len() as i64 - 1
    }

    pub fn rank(&self, i: i64) -> usize {
        if i < self.lo || i > self.hi() {
            0
        } else {
            self.ranks[(i - self.lo) as usize]
        }
    }

    /// Columns of `d_i`; empty outside the range.
    pub fn differential(&self, i: i64) -> &[Vector] {
        if i <= self.lo || i > self.hi() {
            &[]
        } else {
            &self.diffs[(i - self.lo - 1) as usize]
        }
    }

    /// Every term is zero.
    pub fn is_zero(&self) -> bool {
        self.ranks.iter().all(|&r| r == 0)
    }

    /// `H_i(X) = ker d_i / im d_{i+1}`.
    pub fn homology(&self, i: i64) -> Result<PresentedModule> {
        if i < self.lo || i > self.hi() {
            return Err(Error::Invalid(format!(
                "degree {i} outside [{}, {}]",
                self.lo,
                self.hi()
            )));
        }
        let s = self.ring.ambient();
        let r = self.rank(i);
        if r == 0 {
            return Ok(PresentedModule::zero(&self.ring));
        }
        let cycles = if i == self.lo || self.rank(i - 1) == 0 {
            (0..r).map(|k| Vector::unit(s, k)).collect()
        } else {
            kernel_over(&self.ring, self.differential(i), self.rank(i - 1), &[])?
        };
        let mut boundaries = self.ring.ideal_vectors(r);
        boundaries.extend(self.differential(i + 1).iter().cloned());
        let rels = kernel(s, &cycles, r, &boundaries)?;
        Ok(PresentedModule::new(&self.ring, cycles.len(), rels)?.prune()?.module)
    }

    /// Subcomplex of the terms in degrees `[a, b]` (clamped).
    pub fn slice(&self, a: i64, b: i64) -> BoundedFreeComplex {
        let a = a.max(self.lo);
        let b = b.min(self.hi());
        if a > b {
            return BoundedFreeComplex::concentrated(&self.ring, a.min(self.hi() + 1), 0);
        }
        let ranks = (a..=b).map(|i| self.rank(i)).collect();
        let diffs = ((a + 1)..=b).map(|i| self.differential(i).to_vec()).collect();
        BoundedFreeComplex {
            ring: self.ring.clone(),
            lo: a,
            ranks,
            diffs,
        }
    }

    /// Largest degree with nonzero homology, if any.
    pub fn homology_sup(&self) -> Result<Option<i64>> {
        for i in (self.lo..=self.hi()).rev() {
            if !self.homology(i)?.is_zero()? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// `X_{<s} → X → X_{≥s}`, with `X_{≥s} ≃ Σ^s coker(d_{s+1})` once
    /// `H_i(X) = 0` for all `i > s`.
    pub fn truncation_split(&self, s: i64) -> Result<TruncationTriangle> {
        for i in (s + 1).max(self.lo)..=self.hi() {
            if !self.homology(i)?.is_zero()? {
                return Err(Error::Precondition(format!(
                    "s too small: H_{i} is nonzero and {i} > {s}"
                )));
            }
        }
        let perfect = self.slice(self.lo, s - 1);
        let quotient = self.slice(s, self.hi());
        let module = if s < self.lo || s > self.hi() {
            PresentedModule::zero(&self.ring)
        } else {
            PresentedModule::new(&self.ring, self.rank(s), self.differential(s + 1).to_vec())?
        };
        Ok(TruncationTriangle {
            source: self.clone(),
            s,
            perfect,
            quotient,
            module,
        })
    }
}

/// The exact triangle `P → X → Σ^s M →` of a truncation.
#[derive(Clone, Debug)]
pub struct TruncationTriangle {
    pub source: BoundedFreeComplex,
    pub s: i64,
    /// `X_{<s}`.
    pub perfect: BoundedFreeComplex,
    /// `X_{≥s}`.
    pub quotient: BoundedFreeComplex,
    /// `H_s(X_{≥s}) = coker(d_{s+1})`.
    pub module: PresentedModule,
}

impl TruncationTriangle {
    /// Checks `0 → P_i → X_i → (X_{≥s})_i → 0` degreewise and that the
    /// quotient has homology only in degree `s`, equal to `module`.
    pub fn verify(&self) -> Result<bool> {
        let x = &self.source;
        let ring = x.ring();
        let sring = ring.ambient();
        for i in x.lo()..=x.hi() {
            let p = PresentedModule::free(ring, self.perfect.rank(i));
            let xi = PresentedModule::free(ring, x.rank(i));
            let q = PresentedModule::free(ring, self.quotient.rank(i));
            let offset = if i < self.s { 0 } else { x.rank(i) };
            let inc = ModuleMap::new_unchecked(&p, &xi, (0..p.ngens()).map(|k| Vector::unit(sring, k)).collect());
            let proj_cols = (0..xi.ngens())
                .map(|k| {
                    if i >= self.s && k < offset {
                        Vector::unit(sring, k)
                    } else {
                        Vector::zero()
                    }
                })
                .collect();
            let proj = ModuleMap::new_unchecked(&xi, &q, proj_cols);
            if !exactness_check(&[inc, proj])?.exact {
                return Ok(false);
            }
        }
        for i in self.quotient.lo()..=self.quotient.hi() {
            if i != self.s && !self.quotient.homology(i)?.is_zero()? {
                return Ok(false);
            }
        }
        if self.quotient.rank(self.s) > 0 {
            let h = PresentedModule::new(
                ring,
                self.quotient.rank(self.s),
                self.quotient.differential(self.s + 1).to_vec(),
            )?;
            return h.same_presentation(&self.module);
        }
        self.module.is_zero()
    }
}
