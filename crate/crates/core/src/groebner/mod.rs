//! Gröbner bases for ideals and submodules of free modules, with the
//! standard toolkit built on top: membership, quotients, radical membership,
//! saturation index, dimension, kernels and lifting.

mod engine;
mod vector;

use std::fmt;
use std::sync::{Arc, OnceLock};

pub use engine::{groebner_basis as module_groebner_basis, normal_form as module_normal_form};
pub use vector::{pot_cmp, VTerm, Vector};

use crate::error::{Error, Result};
use crate::polyring::{ensure_same, Poly, PolyRing};

fn polys_to_vectors(ps: &[Poly]) -> Vec<Vector> {
    ps.iter().map(|p| Vector::from_poly(p, 0)).collect()
}

fn vectors_to_polys(ring: &Arc<PolyRing>, vs: &[Vector]) -> Vec<Poly> {
    vs.iter().map(|v| v.component(ring, 0)).collect()
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn groebner_basis(ring: &Arc<PolyRing>, gens: &[Poly]) -> Result<Vec<Poly>> {
    for g in gens {
        ensure_same(ring, g.ring())?;
    }
    let gb = engine::groebner_basis(ring, &polys_to_vectors(gens))?;
    Ok(vectors_to_polys(ring, &gb))
}

/// Remainder of `f` modulo a Gröbner basis; zero iff `f` lies in the ideal.
pub fn normal_form(f: &Poly, basis: &[Poly]) -> Poly {
    let ring = f.ring();
    let b = polys_to_vectors(basis);
    engine::normal_form(ring, &Vector::from_poly(f, 0), &b).component(ring, 0)
}

/// An ideal of a polynomial ring, with a write-once cached Gröbner basis.
pub struct Ideal {
    ring: Arc<PolyRing>,
    gens: Vec<Poly>,
    gb: OnceLock<Vec<Poly>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(b) = self.gb.get() {
            let _ = gb.set(b.clone());
        }
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            gb,
        }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{self}")
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.gens.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", g.join(", "))
    }
}

impl Ideal {
    pub fn new(ring: &Arc<PolyRing>, gens: Vec<Poly>) -> Result<Ideal> {
        for g in &gens {
            ensure_same(ring, g.ring())?;
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal {
            ring: ring.clone(),
            gens,
            gb: OnceLock::new(),
        })
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Ideal {
        Ideal {
            ring: ring.clone(),
            gens: Vec::new(),
            gb: OnceLock::new(),
        }
    }

    pub fn unit(ring: &Arc<PolyRing>) -> Ideal {
        Ideal::new(ring, vec![Poly::one(ring)]).expect("same ring")
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    /// The reduced Gröbner basis, computed once.
    pub fn groebner_basis(&self) -> Result<&[Poly]> {
        if let Some(gb) = self.gb.get() {
            return Ok(gb);
        }
        let gb = groebner_basis(&self.ring, &self.gens)?;
        let _ = self.gb.set(gb);
        Ok(self.gb.get().expect("just set"))
    }

    /// The ideal re-generated by its reduced Gröbner basis.
    pub fn standardized(&self) -> Result<Ideal> {
        let gb = self.groebner_basis()?.to_vec();
        let out = Ideal::new(&self.ring, gb.clone())?;
        let _ = out.gb.set(gb);
        Ok(out)
    }

    pub fn normal_form(&self, f: &Poly) -> Result<Poly> {
        ensure_same(&self.ring, f.ring())?;
        Ok(normal_form(f, self.groebner_basis()?))
    }

    pub fn contains(&self, f: &Poly) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn same_ideal(&self, other: &Ideal) -> Result<bool> {
        Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.groebner_basis()?.iter().any(|g| g.is_unit_constant()))
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// True when the reduced Gröbner basis consists of monomials.
    pub fn is_monomial(&self) -> Result<bool> {
        Ok(self.groebner_basis()?.iter().all(|g| g.is_monomial()))
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        ensure_same(&self.ring, &other.ring)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn with(&self, extra: &[Poly]) -> Result<Ideal> {
        let mut gens = self.gens.clone();
        gens.extend(extra.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        ensure_same(&self.ring, &other.ring)?;
        let mut gens = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a * b);
            }
        }
        Ideal::new(&self.ring, gens)
    }

    pub fn power(&self, k: u32) -> Result<Ideal> {
        let mut acc = Ideal::unit(&self.ring);
        for _ in 0..k {
            acc = acc.product(self)?.standardized()?;
        }
        Ok(acc)
    }

    /// `I ∩ J`, as the kernel of `S → S/I ⊕ S/J`, `1 ↦ (1, 1)`.
    pub fn intersection(&self, other: &Ideal) -> Result<Ideal> {
        ensure_same(&self.ring, &other.ring)?;
        let ring = &self.ring;
        if self.is_zero() || other.is_zero() {
            return Ok(Ideal::zero(ring));
        }
        let col = Vector::from_polys(&[Poly::one(ring), Poly::one(ring)]);
        let mut modulo: Vec<Vector> = self.gens.iter().map(|g| Vector::from_poly(g, 0)).collect();
        modulo.extend(other.gens.iter().map(|g| Vector::from_poly(g, 1)));
        let ker = kernel(ring, &[col], 2, &modulo)?;
        Ideal::new(ring, vectors_to_polys(ring, &ker))?.standardized()
    }

    /// `(I : f) = { g | g f ∈ I }`.
    pub fn quotient(&self, f: &Poly) -> Result<Ideal> {
        ensure_same(&self.ring, f.ring())?;
        let ring = &self.ring;
        if f.is_zero() {
            return Ok(Ideal::unit(ring));
        }
        let ker = kernel(ring, &[Vector::from_poly(f, 0)], 1, &polys_to_vectors(&self.gens))?;
        Ideal::new(ring, vectors_to_polys(ring, &ker))?.standardized()
    }

    /// `(I : J)`.
    pub fn quotient_ideal(&self, other: &Ideal) -> Result<Ideal> {
        let mut acc = Ideal::unit(&self.ring);
        for g in &other.gens {
            acc = acc.intersection(&self.quotient(g)?)?;
        }
        Ok(acc)
    }

    /// Whether `f ∈ √I`, decided by `1 ∈ (I, 1 - t f)` with a fresh `t`.
    pub fn radical_contains(&self, f: &Poly) -> Result<bool> {
        ensure_same(&self.ring, f.ring())?;
        if self.contains(f)? {
            return Ok(true);
        }
        let ext = self.ring.with_extra_variable("t")?;
        let map: Vec<usize> = (0..self.ring.nvars()).collect();
        let t = Poly::var(&ext, self.ring.nvars());
        let mut gens: Vec<Poly> = self.gens.iter().map(|g| g.embed(&ext, &map)).collect();
        gens.push(&Poly::one(&ext) - &(&t * &f.embed(&ext, &map)));
        let gb = groebner_basis(&ext, &gens)?;
        Ok(gb.iter().any(|g| g.is_unit_constant()))
    }

    /// `V(self) ⊆ V(other)`, i.e. `other ⊆ √self`.
    pub fn radical_contains_ideal(&self, other: &Ideal) -> Result<bool> {
        for g in &other.gens {
            if !self.radical_contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn same_radical(&self, other: &Ideal) -> Result<bool> {
        Ok(self.radical_contains_ideal(other)? && other.radical_contains_ideal(self)?)
    }

    /// Minimal `a ≥ 0` with `f^a ∈ I`; an error when `f ∉ √I`.
    pub fn saturation_index(&self, f: &Poly) -> Result<u32> {
        if !self.radical_contains(f)? {
            return Err(Error::Precondition(format!(
                "no finite index: {f} is not in the radical of {self}"
            )));
        }
        let mut power = Poly::one(&self.ring);
        let mut a = 0u32;
        loop {
            if self.contains(&power)? {
                return Ok(a);
            }
            power = &power * f;
            a += 1;
        }
    }

    /// Krull dimension of `S/I` from the leading-term ideal (largest set of
    /// variables containing no leading monomial's support); -1 for `(1)`.
    pub fn krull_dimension(&self) -> Result<i64> {
        let gb = self.groebner_basis()?;
        if gb.iter().any(|g| g.is_unit_constant()) {
            return Ok(-1);
        }
        let n = self.ring.nvars();
        let supports: Vec<u64> = gb
            .iter()
            .map(|g| {
                g.leading_monomial()
                    .expect("nonzero")
                    .support()
                    .fold(0u64, |acc, i| acc | (1 << i))
            })
            .collect();
        let mut best = 0;
        for set in 0u64..(1u64 << n) {
            let size = set.count_ones() as i64;
            if size > best && supports.iter().all(|&s| s & !set != 0) {
                best = size;
            }
        }
        Ok(best)
    }
}

/// A submodule of `S^rank` with a cached reduced Gröbner basis.
pub struct SubmoduleOfFree {
    ring: Arc<PolyRing>,
    rank: usize,
    gens: Vec<Vector>,
    gb: OnceLock<Vec<Vector>>,
}

impl SubmoduleOfFree {
    pub fn new(ring: &Arc<PolyRing>, rank: usize, gens: Vec<Vector>) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| g.support_len() > rank) {
            return Err(Error::Invalid(format!(
                "vector {} has more than {rank} components",
                g.display(ring, g.support_len())
            )));
        }
        Ok(SubmoduleOfFree {
            ring: ring.clone(),
            rank,
            gens,
            gb: OnceLock::new(),
        })
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gens(&self) -> &[Vector] {
        &self.gens
    }

    pub fn groebner_basis(&self) -> Result<&[Vector]> {
        if let Some(gb) = self.gb.get() {
            return Ok(gb);
        }
        let gb = engine::groebner_basis(&self.ring, &self.gens)?;
        let _ = self.gb.set(gb);
        Ok(self.gb.get().expect("just set"))
    }

    pub fn normal_form(&self, v: &Vector) -> Result<Vector> {
        Ok(engine::normal_form(&self.ring, v, self.groebner_basis()?))
    }

    pub fn contains(&self, v: &Vector) -> Result<bool> {
        Ok(self.normal_form(v)?.is_zero())
    }

    pub fn contains_all(&self, vs: &[Vector]) -> Result<bool> {
        for v in vs {
            if !self.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Generators of `{ c ∈ S^k | Σ c_i cols[i] ∈ span(modulo) }` where the
/// columns and `modulo` live in `S^target_rank`.
///
/// Computed from one module Gröbner basis of the columns augmented by the
/// identity block, under position-over-term with target positions on top:
/// basis elements whose leading position falls in the identity block carry
/// exactly the relations. The output is the reduced basis of the kernel.
pub fn kernel(
    ring: &Arc<PolyRing>,
    cols: &[Vector],
    target_rank: usize,
    modulo: &[Vector],
) -> Result<Vec<Vector>> {
    let k = cols.len();
    let mut gens = Vec::with_capacity(k + modulo.len());
    for (i, c) in cols.iter().enumerate() {
        if c.support_len() > target_rank {
            return Err(Error::Invalid("column exceeds target rank".into()));
        }
        gens.push(c.add(ring, &Vector::unit(ring, target_rank + i)));
    }
    gens.extend(modulo.iter().cloned());
    let gb = engine::groebner_basis(ring, &gens)?;
    Ok(gb
        .iter()
        .filter(|v| v.lead().expect("nonzero").comp as usize >= target_rank)
        .map(|v| v.slice(target_rank, target_rank + k))
        .collect())
}

/// Kernel of the map `S^k → S^rank` given by the columns.
pub fn syzygy_basis(ring: &Arc<PolyRing>, cols: &[Vector], rank: usize) -> Result<Vec<Vector>> {
    kernel(ring, cols, rank, &[])
}

/// Expresses vectors as combinations of fixed generators modulo a fixed
/// submodule; the underlying basis is computed once.
pub struct Lifter {
    ring: Arc<PolyRing>,
    rank: usize,
    ngens: usize,
    gb: Vec<Vector>,
}

impl Lifter {
    pub fn new(ring: &Arc<PolyRing>, gens: &[Vector], rank: usize, modulo: &[Vector]) -> Result<Self> {
        let mut aug = Vec::with_capacity(gens.len() + modulo.len());
        for (i, g) in gens.iter().enumerate() {
            aug.push(g.add(ring, &Vector::unit(ring, rank + i)));
        }
        aug.extend(modulo.iter().cloned());
        let gb = engine::groebner_basis(ring, &aug)?;
        Ok(Lifter {
            ring: ring.clone(),
            rank,
            ngens: gens.len(),
            gb,
        })
    }

    /// Coefficients `c` with `v - Σ c_i gens[i] ∈ span(modulo)`, if any.
    pub fn lift(&self, v: &Vector) -> Option<Vector> {
        let r = engine::normal_form(&self.ring, v, &self.gb);
        match r.lead() {
            Some(t) if (t.comp as usize) < self.rank => None,
            _ => Some(r.slice(self.rank, self.rank + self.ngens).neg(&self.ring)),
        }
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.lift(v).is_some()
    }
}

/// Whether `f ∈ √I`.
pub fn radical_membership(f: &Poly, ideal: &Ideal) -> Result<bool> {
    ideal.radical_contains(f)
}

/// `(I : f)`.
pub fn ideal_quotient(ideal: &Ideal, f: &Poly) -> Result<Ideal> {
    ideal.quotient(f)
}

/// Minimal `a` with `f^a ∈ I`.
pub fn saturation_index(f: &Poly, ideal: &Ideal) -> Result<u32> {
    ideal.saturation_index(f)
}

/// `dim S/I`, or -1 for the unit ideal.
pub fn krull_dimension(ideal: &Ideal) -> Result<i64> {
    ideal.krull_dimension()
}

#[cfg(test)]
mod tests;
