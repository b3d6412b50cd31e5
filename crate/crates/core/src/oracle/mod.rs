//! Brute-force cross-checks for the main pipeline, meant for tiny inputs.
//!
//! Nothing here is used by `genesis` or `certcheck`; the test suite compares
//! the two sides.

pub mod linalg;
pub mod probe;
pub mod tamper;

#[cfg(test)]
mod tests;

use std::collections::VecDeque;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{kernel, module_groebner_basis, Lifter, Vector};
use crate::homalg::{ext_module, hom_module, PresentedModule, QuotientRing};
use crate::polyring::{Monomial, Poly, PolyRing};

pub use probe::{artinian_thick_probe, ProbeConfig};
pub use tamper::{single_entry_mutations, step_holds, tamper_suite, Mutation, TamperReport};

/// Result of [`pd_by_resolution`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PdBound {
    Exactly(usize),
    /// No free syzygy up to and including this index.
    Exceeds(usize),
}

impl PdBound {
    pub fn at_most(self, n: usize) -> bool {
        matches!(self, PdBound::Exactly(d) if d <= n)
    }
}

/// Relation columns as dense entry lists, reduced modulo `I`.
fn dense(ring: &QuotientRing, rank: usize, rels: &[Vector]) -> Result<Vec<Vec<Poly>>> {
    let s = ring.ambient();
    let mut out = Vec::new();
    for r in rels {
        let col = r
            .to_polys(s, rank)
            .iter()
            .map(|p| ring.reduce(p))
            .collect::<Result<Vec<_>>>()?;
        if col.iter().any(|p| !p.is_zero()) {
            out.push(col);
        }
    }
    Ok(out)
}

/// Removes generators that a relation with a constant entry expresses in
/// terms of the others.
fn prune_dense(ring: &QuotientRing, rels: &mut Vec<Vec<Poly>>) -> Result<()> {
    let field = *ring.ambient().field();
    loop {
        let pivot = rels
            .iter()
            .enumerate()
            .find_map(|(k, r)| r.iter().position(|p| p.is_constant() && !p.is_zero()).map(|i| (k, i)));
        let Some((k, i)) = pivot else { break };
        let r = rels.remove(k);
        let c = r[i].leading_coeff().expect("nonzero").clone();
        let mut next = Vec::with_capacity(rels.len());
        for mut other in rels.drain(..) {
            if !other[i].is_zero() {
                let factor = other[i].scale(&field.inv(&c));
                for (e, re) in other.iter_mut().zip(&r) {
                    *e = ring.reduce(&(&*e - &(&factor * re)))?;
                }
            }
            other.remove(i);
            if other.iter().any(|p| !p.is_zero()) {
                next.push(other);
            }
        }
        *rels = next;
    }
    Ok(())
}

fn columns(rels: &[Vec<Poly>]) -> Vec<Vector> {
    rels.iter().map(|c| Vector::from_polys(c)).collect()
}

/// Projective dimension by walking the resolution until a syzygy module is
/// visibly free after pruning constant pivots.
///
/// Exact for graded modules over graded rings; for other inputs a free
/// syzygy may go unnoticed and the answer is only an upper bound.
pub fn pd_by_resolution(m: &PresentedModule, bound: usize) -> Result<PdBound> {
    let ring = m.ring();
    let s = ring.ambient();
    let mut rank = m.ngens();
    let mut rels = dense(ring, rank, m.relations())?;
    for k in 0..=bound {
        prune_dense(ring, &mut rels)?;
        let Some(first) = rels.first() else {
            return Ok(PdBound::Exactly(k));
        };
        rank = first.len();
        if k == bound {
            break;
        }
        let ker = kernel(s, &columns(&rels), rank, &ring.ideal_vectors(rank))?;
        rank = rels.len();
        rels = dense(ring, rank, &ker)?;
    }
    Ok(PdBound::Exceeds(bound))
}

/// Per-degree dimensions `dim m^j E / m^{j+1} E` for `j < dims.len()`,
/// `m` the ideal of the origin.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedVectorData {
    pub dims: Vec<usize>,
    /// `dim E` when the last computed piece vanishes.
    pub total: Option<usize>,
}

/// Weights for the generators making every relation homogeneous, if any.
pub fn generator_weights(m: &PresentedModule) -> Option<Vec<i64>> {
    let s = m.ambient();
    let n = m.ngens();
    // Edges i -> j with w_j = w_i + delta.
    let mut edges: Vec<Vec<(usize, i64)>> = vec![Vec::new(); n];
    for r in m.relations() {
        let mut anchor: Option<(usize, i64)> = None;
        for (i, p) in r.to_polys(s, n).iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            if !p.is_homogeneous() {
                return None;
            }
            let d = p.degree();
            match anchor {
                None => anchor = Some((i, d)),
                Some((a, da)) => {
                    edges[a].push((i, da - d));
                    edges[i].push((a, d - da));
                }
            }
        }
    }
    let mut w: Vec<Option<i64>> = vec![None; n];
    for start in 0..n {
        if w[start].is_some() {
            continue;
        }
        w[start] = Some(0);
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            let wi = w[i].expect("visited");
            for &(j, delta) in &edges[i] {
                match w[j] {
                    None => {
                        w[j] = Some(wi + delta);
                        queue.push_back(j);
                    }
                    Some(wj) if wj != wi + delta => return None,
                    Some(_) => {}
                }
            }
        }
    }
    Some(w.into_iter().map(|x| x.expect("all visited")).collect())
}

/// Homogeneous ideal and a module presentation admitting generator weights.
pub fn is_graded(m: &PresentedModule) -> bool {
    m.ring().ideal_gens().iter().all(|g| g.is_homogeneous()) && generator_weights(m).is_some()
}

fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    fn rec(nvars: usize, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == nvars {
            cur.push(left);
            out.push(Monomial::from_slice(cur));
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e);
            rec(nvars, i + 1, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if d == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(nvars, 0, d, &mut Vec::new(), &mut out);
    out
}

/// `dim_k E / m^j E`, by counting standard monomials of the relation module
/// enlarged by `m^j S^n`.
fn colength(s: &Arc<PolyRing>, e: &PresentedModule, j: u32) -> Result<usize> {
    let n = e.ngens();
    let one = s.field().one();
    let mut gens = e.all_relations();
    let top = monomials_of_degree(s.nvars(), j);
    for i in 0..n {
        for mono in &top {
            gens.push(Vector::from_poly(&Poly::monomial(s, mono.clone(), one.clone()), i));
        }
    }
    let gb = module_groebner_basis(s, &gens)?;
    let mut count = 0;
    for i in 0..n {
        let leads: Vec<&Monomial> = gb
            .iter()
            .filter_map(|v| v.lead())
            .filter(|t| t.comp as usize == i)
            .map(|t| &t.mono)
            .collect();
        for d in 0..j {
            for mono in monomials_of_degree(s.nvars(), d) {
                if !leads.iter().any(|l| l.divides(&mono)) {
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

/// `dim m^j E / m^{j+1} E` for `j = 0..=max_degree`.
pub fn graded_dimensions(e: &PresentedModule, max_degree: u32) -> Result<GradedVectorData> {
    let s = e.ambient();
    let mut prev = 0;
    let mut dims = Vec::new();
    for j in 1..=max_degree + 1 {
        let c = colength(s, e, j)?;
        dims.push(c - prev);
        prev = c;
    }
    let total = if dims.last() == Some(&0) { Some(prev) } else { None };
    Ok(GradedVectorData { dims, total })
}

/// Columns of `d_1, d_2, …, d_{len}` built from raw kernels, without the
/// pruning that `FreeResolution` performs.
fn raw_resolution(m: &PresentedModule, len: usize) -> Result<(Vec<usize>, Vec<Vec<Vector>>)> {
    let ring = m.ring();
    let s = ring.ambient();
    let mut ranks = vec![m.ngens()];
    let mut diffs: Vec<Vec<Vector>> = Vec::new();
    let mut current = columns(&dense(ring, m.ngens(), m.relations())?);
    for _ in 0..len {
        let rank = *ranks.last().expect("nonempty");
        ranks.push(current.len());
        let next = if current.is_empty() {
            Vec::new()
        } else {
            let ker = kernel(s, &current, rank, &ring.ideal_vectors(rank))?;
            columns(&dense(ring, current.len(), &ker)?)
        };
        diffs.push(current);
        current = next;
    }
    Ok((ranks, diffs))
}

/// `Ext^n(M, N)` as `Ext^1(Ω^{n-1} M, N) = coker(Hom(F_{n-1}, N) → Hom(Ω^n M, N))`.
pub fn ext_by_dimension_shift_module(n: usize, m: &PresentedModule, target: &PresentedModule) -> Result<PresentedModule> {
    if n == 0 {
        return Err(Error::Invalid("the shift needs n ≥ 1".into()));
    }
    let ring = m.ring();
    let s = ring.ambient();
    let (ranks, diffs) = raw_resolution(m, n + 1)?;
    // Ω^n M ⊆ F_{n-1} on the columns of d_n, with relations d_{n+1}.
    let dn = &diffs[n - 1];
    let omega = PresentedModule::new(ring, dn.len(), diffs[n].clone())?;
    let h = hom_module(&omega, target)?;
    let nt = target.ngens();
    let flat_rank = dn.len() * nt;
    let flatten = |cols: &[Vector]| -> Vector {
        let mut v = Vector::zero();
        for (i, c) in cols.iter().enumerate() {
            v = v.add(s, &c.shift(i * nt));
        }
        v
    };
    let hgens: Vec<Vector> = h.generators().iter().map(|g| flatten(g.columns())).collect();
    let mut blocks = Vec::new();
    for i in 0..dn.len() {
        for r in target.all_relations() {
            blocks.push(r.shift(i * nt));
        }
    }
    let lifter = Lifter::new(s, &hgens, flat_rank, &blocks)?;
    let mut extra = Vec::new();
    for j in 0..ranks[n - 1] {
        for u in 0..nt {
            // e_j ↦ e_u restricted along d_n.
            let cols: Vec<Vector> = dn
                .iter()
                .map(|c| Vector::unit(s, u).mul_poly(s, &c.component(s, j)))
                .collect();
            let c = lifter
                .lift(&flatten(&cols))
                .ok_or_else(|| Error::Verification("restricted map is not a homomorphism".into()))?;
            extra.push(c);
        }
    }
    h.module.with_relations(&extra)
}

/// Dimensions of `Ext^n(M, N)` through the shifted route. Graded input only.
pub fn ext_by_dimension_shift(
    n: usize,
    m: &PresentedModule,
    target: &PresentedModule,
    max_degree: u32,
) -> Result<GradedVectorData> {
    if !is_graded(m) || !is_graded(target) {
        return Err(Error::Precondition("ext_by_dimension_shift needs graded input".into()));
    }
    graded_dimensions(&ext_by_dimension_shift_module(n, m, target)?, max_degree)
}

/// The same data computed from `ext_module`.
pub fn ext_dimensions(n: usize, m: &PresentedModule, target: &PresentedModule, max_degree: u32) -> Result<GradedVectorData> {
    graded_dimensions(&ext_module(n, m, target)?, max_degree)
}
