//! `Hom` and `Ext` through the block matrices of `Hom(F_•, N)`.
//!
//! An element of `N^r` is a vector in `S^{r·n}` (`n = N.ngens`), block `i`
//! holding the image of the `i`-th basis vector; `N^r` is that free module
//! modulo `r` shifted copies of the relation module of `N`.

use super::{ensure_same_ring, syzygy, ModuleMap, PresentedModule};
use crate::error::Result;
use crate::groebner::{kernel, Ideal, SubmoduleOfFree, VTerm, Vector};

/// Matrix of `Hom(D, N) : N^{rows} → N^{cols}`, `φ ↦ φ ∘ D`, for `D` given
/// by columns in `S^rows`.
fn dual_columns(m: &PresentedModule, d: &[Vector], rows: usize, n: usize) -> Vec<Vector> {
    let s = m.ambient();
    let mut cols: Vec<Vec<VTerm>> = vec![Vec::new(); rows * n];
    for (k, col) in d.iter().enumerate() {
        for t in col.terms() {
            let i = t.comp as usize;
            for c in 0..n {
                cols[i * n + c].push(VTerm {
                    comp: (k * n + c) as u32,
                    mono: t.mono.clone(),
                    coeff: t.coeff.clone(),
                });
            }
        }
    }
    cols.into_iter().map(|ts| Vector::from_terms(s, ts)).collect()
}

fn block_relations(n_mod: &PresentedModule, blocks: usize) -> Result<Vec<Vector>> {
    let n = n_mod.ngens();
    let gb = n_mod.relation_gb()?;
    let mut out = Vec::with_capacity(gb.len() * blocks);
    for b in 0..blocks {
        out.extend(gb.iter().map(|v| v.shift(b * n)));
    }
    Ok(out)
}

/// Cycles and boundaries of `Hom(F_•, N)` at position `n`, all inside
/// `S^{r_n · N.ngens}`. Cycles already in the boundary span are dropped.
struct ExtData {
    rank: usize,
    cycles: Vec<Vector>,
    boundaries: Vec<Vector>,
}

fn ext_data(n: usize, m: &PresentedModule, target: &PresentedModule) -> Result<ExtData> {
    ensure_same_ring(m.ring(), target.ring())?;
    let s = m.ambient();
    let res = m.resolution();
    let nn = target.ngens();
    let r_n = res.rank(n)?;
    let rank = r_n * nn;
    let d_next = res.differential(n + 1)?;
    let r_next = d_next.len();
    let cycles = if r_next == 0 {
        (0..rank).map(|i| Vector::unit(s, i)).collect()
    } else {
        let cols = dual_columns(m, &d_next, r_n, nn);
        let modulo = block_relations(target, r_next)?;
        kernel(s, &cols, r_next * nn, &modulo)?
    };
    let mut boundaries = block_relations(target, r_n)?;
    if n >= 1 {
        let d = res.differential(n)?;
        let r_prev = res.rank(n - 1)?;
        boundaries.extend(dual_columns(m, &d, r_prev, nn));
    }
    let span = SubmoduleOfFree::new(s, rank, boundaries.clone())?;
    let mut kept = Vec::new();
    for z in cycles {
        if !span.contains(&z)? {
            kept.push(z);
        }
    }
    Ok(ExtData {
        rank,
        cycles: kept,
        boundaries,
    })
}

/// `Ext^n_R(M, N)` as a presented module.
pub fn ext_module(n: usize, m: &PresentedModule, target: &PresentedModule) -> Result<PresentedModule> {
    let data = ext_data(n, m, target)?;
    let rels = kernel(m.ambient(), &data.cycles, data.rank, &data.boundaries)?;
    let raw = PresentedModule::new(m.ring(), data.cycles.len(), rels)?;
    Ok(raw.prune()?.module)
}

/// Whether `Ext^n_R(M, N) = 0`, without building a presentation.
pub fn ext_is_zero(n: usize, m: &PresentedModule, target: &PresentedModule) -> Result<bool> {
    Ok(ext_data(n, m, target)?.cycles.is_empty())
}

/// `ann Ext^n_R(M, N)` as an ideal of the ambient ring (containing `I`).
pub fn ext_annihilator(n: usize, m: &PresentedModule, target: &PresentedModule) -> Result<Ideal> {
    let s = m.ambient();
    let data = ext_data(n, m, target)?;
    let mut acc = Ideal::unit(s);
    for z in &data.cycles {
        let ker = kernel(s, std::slice::from_ref(z), data.rank, &data.boundaries)?;
        let q = Ideal::new(s, ker.iter().map(|v| v.component(s, 0)).collect())?;
        acc = acc.intersection(&q)?;
    }
    acc.standardized()
}

/// `Hom_R(M, N)` together with the generators that turn its elements back
/// into maps.
pub struct HomModule {
    pub module: PresentedModule,
    source: PresentedModule,
    target: PresentedModule,
    gens: Vec<Vector>,
}

impl HomModule {
    pub fn ngens(&self) -> usize {
        self.gens.len()
    }

    /// The map corresponding to `Σ c_k g_k` for coefficients `c` in `S^ngens`.
    pub fn map_for(&self, c: &Vector) -> ModuleMap {
        let s = self.source.ambient();
        let mut total = Vector::zero();
        for (k, g) in self.gens.iter().enumerate() {
            let ck = c.component(s, k);
            if !ck.is_zero() {
                total = total.add(s, &g.mul_poly(s, &ck));
            }
        }
        self.map_from_flat(&total)
    }

    /// The map of the `k`-th generator.
    pub fn generator(&self, k: usize) -> ModuleMap {
        self.map_from_flat(&self.gens[k])
    }

    fn map_from_flat(&self, v: &Vector) -> ModuleMap {
        let n = self.target.ngens();
        let cols = (0..self.source.ngens()).map(|i| v.slice(i * n, (i + 1) * n)).collect();
        ModuleMap::new_unchecked(&self.source, &self.target, cols)
    }

    pub fn generators(&self) -> Vec<ModuleMap> {
        (0..self.gens.len()).map(|k| self.generator(k)).collect()
    }
}

/// `Hom_R(M, N) = { φ ∈ N^m | φ ∘ relations = 0 }`.
pub fn hom_module(m: &PresentedModule, target: &PresentedModule) -> Result<HomModule> {
    ensure_same_ring(m.ring(), target.ring())?;
    let s = m.ambient();
    let nn = target.ngens();
    let rank = m.ngens() * nn;
    let rels = m.relations();
    let cycles = if rels.is_empty() {
        (0..rank).map(|i| Vector::unit(s, i)).collect()
    } else {
        let cols = dual_columns(m, rels, m.ngens(), nn);
        kernel(s, &cols, rels.len() * nn, &block_relations(target, rels.len())?)?
    };
    let boundaries = block_relations(target, m.ngens())?;
    let span = SubmoduleOfFree::new(s, rank, boundaries.clone())?;
    let mut gens = Vec::new();
    for z in cycles {
        if !span.contains(&z)? {
            gens.push(z);
        }
    }
    let hrels = kernel(s, &gens, rank, &boundaries)?;
    let module = PresentedModule::new(m.ring(), gens.len(), hrels)?;
    Ok(HomModule {
        module,
        source: m.clone(),
        target: target.clone(),
        gens,
    })
}

/// `pd_R M ≤ n`, decided by `Ext^{n+1}(M, Ω^{n+1} M) = 0`.
pub fn is_pd_le(m: &PresentedModule, n: usize) -> Result<bool> {
    let omega = syzygy(n + 1, m)?;
    ext_is_zero(n + 1, m, &omega)
}

/// Least `n ≤ dim R` such that `Ext^{n+1}(M, Ω^{n+1} M)` is killed by a
/// power of `f`; `None` when there is none ("infinite").
pub fn localized_pd(m: &PresentedModule, f: &crate::polyring::Poly) -> Result<Option<usize>> {
    let dim = m.ring().dim().max(0) as usize;
    for n in 0..=dim {
        let omega = syzygy(n + 1, m)?;
        let ann = ext_annihilator(n + 1, m, &omega)?;
        if ann.radical_contains(f)? {
            return Ok(Some(n));
        }
    }
    Ok(None)
}
