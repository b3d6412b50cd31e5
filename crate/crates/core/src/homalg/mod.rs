//! Finitely presented modules over quotient rings `R = S/I`.
//!
//! A module is the cokernel of a relation matrix over the ambient ring `S`
//! with `I · S^k` folded in, so one Gröbner engine serves every quotient.

mod complex;
mod exact;
mod hom;
mod resolution;
pub mod text;

use std::fmt;
use std::sync::{Arc, OnceLock};

pub use complex::{BoundedFreeComplex, TruncationTriangle};
pub use exact::{exactness_check, ExactnessFailure, ExactnessReport};
pub use hom::{
    ext_annihilator, ext_is_zero, ext_module, hom_module, is_pd_le, localized_pd, HomModule,
};
pub use resolution::{syzygy, FreeResolution};

use crate::error::{Error, Result};
use crate::groebner::{kernel, Ideal, Lifter, SubmoduleOfFree, Vector};
use crate::polyring::{ensure_same, parse::parse_ring, Limits, MonomialOrder, Poly, PolyRing};

/// `S/I` with `I` held by its reduced Gröbner basis.
pub struct QuotientRing {
    ambient: Arc<PolyRing>,
    ideal: Ideal,
    dim: i64,
}

impl fmt::Debug for QuotientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuotientRing({self})")
    }
}

impl fmt::Display for QuotientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ambient)?;
        if !self.ideal.is_zero() {
            write!(f, "/{}", self.ideal)?;
        }
        Ok(())
    }
}

impl QuotientRing {
    pub fn new(ambient: &Arc<PolyRing>, gens: Vec<Poly>) -> Result<Arc<Self>> {
        let ideal = Ideal::new(ambient, gens)?.standardized()?;
        if ideal.is_unit()? {
            return Err(Error::Invalid("defining ideal is the unit ideal".into()));
        }
        let dim = ideal.krull_dimension()?;
        Ok(Arc::new(QuotientRing {
            ambient: ambient.clone(),
            ideal,
            dim,
        }))
    }

    pub fn polynomial(ambient: &Arc<PolyRing>) -> Arc<Self> {
        Arc::new(QuotientRing {
            ambient: ambient.clone(),
            ideal: Ideal::zero(ambient),
            dim: ambient.nvars() as i64,
        })
    }

    /// Parses `K[vars]` or `K[vars]/(gens)` (grevlex).
    pub fn parse(s: &str) -> Result<Arc<Self>> {
        let (ring, gens) = parse_ring(s, MonomialOrder::Grevlex)?;
        Self::new(&ring, gens)
    }

    pub fn parse_with_limits(s: &str, limits: Limits) -> Result<Arc<Self>> {
        let (ring, gens) = crate::polyring::parse::parse_ring_with_limits(s, MonomialOrder::Grevlex, limits)?;
        Self::new(&ring, gens)
    }

    pub fn ambient(&self) -> &Arc<PolyRing> {
        &self.ambient
    }

    /// The defining ideal, generated by its reduced Gröbner basis.
    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn ideal_gens(&self) -> &[Poly] {
        self.ideal.gens()
    }

    pub fn dim(&self) -> i64 {
        self.dim
    }

    pub fn is_polynomial(&self) -> bool {
        self.ideal.is_zero()
    }

    pub fn reduce(&self, f: &Poly) -> Result<Poly> {
        self.ideal.normal_form(f)
    }

    pub fn is_zero(&self, f: &Poly) -> Result<bool> {
        self.ideal.contains(f)
    }

    pub fn parse_poly(&self, s: &str) -> Result<Poly> {
        crate::polyring::parse::parse_poly(&self.ambient, s)
    }

    /// `R/(extra)` as a quotient of the same ambient ring.
    pub fn quotient(&self, extra: &[Poly]) -> Result<Arc<QuotientRing>> {
        let mut gens = self.ideal.gens().to_vec();
        gens.extend(extra.iter().cloned());
        QuotientRing::new(&self.ambient, gens)
    }

    /// Same ambient ring and same defining ideal.
    pub fn same(a: &QuotientRing, b: &QuotientRing) -> bool {
        PolyRing::same(&a.ambient, &b.ambient) && a.ideal.gens() == b.ideal.gens()
    }

    /// `self` is a quotient of `base` (same ambient, larger ideal).
    pub fn is_quotient_of(&self, base: &QuotientRing) -> Result<bool> {
        if !PolyRing::same(&self.ambient, &base.ambient) {
            return Ok(false);
        }
        self.ideal.contains_ideal(&base.ideal)
    }

    /// `g · e_i` for every basis element `g` of `I` and `i < rank`.
    pub fn ideal_vectors(&self, rank: usize) -> Vec<Vector> {
        let mut out = Vec::with_capacity(rank * self.ideal.gens().len());
        for i in 0..rank {
            for g in self.ideal.gens() {
                out.push(Vector::from_poly(g, i));
            }
        }
        out
    }

    /// Reduces every entry modulo `I`.
    pub fn reduce_vector(&self, v: &Vector) -> Vector {
        if self.ideal.is_zero() {
            return v.clone();
        }
        let basis: Vec<Vector> = self.ideal.gens().iter().map(|g| Vector::from_poly(g, 0)).collect();
        let mut out = Vector::zero();
        for c in 0..v.support_len() {
            let nf = crate::groebner::module_normal_form(
                &self.ambient,
                &Vector::from_poly(&v.component(&self.ambient, c), 0),
                &basis,
            );
            out = out.add(&self.ambient, &nf.shift(c));
        }
        out
    }
}

pub(crate) fn ensure_same_ring(a: &QuotientRing, b: &QuotientRing) -> Result<()> {
    if QuotientRing::same(a, b) {
        Ok(())
    } else {
        Err(Error::RingMismatch(format!("{a} vs {b}")))
    }
}

/// Kernel of `S^k → S^p / (I S^p + extra)` given by `cols`, with generators
/// that vanish modulo `I` dropped.
pub fn kernel_over(
    ring: &QuotientRing,
    cols: &[Vector],
    target_rank: usize,
    extra: &[Vector],
) -> Result<Vec<Vector>> {
    let mut modulo = ring.ideal_vectors(target_rank);
    modulo.extend(extra.iter().cloned());
    let ker = kernel(ring.ambient(), cols, target_rank, &modulo)?;
    Ok(ker
        .into_iter()
        .map(|v| ring.reduce_vector(&v))
        .filter(|v| !v.is_zero())
        .collect())
}

/// Greedy pass dropping each generator already in the span of the kept ones
/// plus `modulo`. The input order decides which copies survive.
pub fn prune_generators(
    ring: &Arc<PolyRing>,
    gens: Vec<Vector>,
    rank: usize,
    modulo: &[Vector],
) -> Result<Vec<Vector>> {
    let mut kept: Vec<Vector> = Vec::new();
    let mut span: Option<SubmoduleOfFree> = None;
    for g in gens {
        if g.is_zero() {
            continue;
        }
        if span.is_none() {
            let mut all = modulo.to_vec();
            all.extend(kept.iter().cloned());
            span = Some(SubmoduleOfFree::new(ring, rank, all)?);
        }
        if !span.as_ref().expect("built").contains(&g)? {
            kept.push(g);
            span = None;
        }
    }
    Ok(kept)
}

/// Orders generators by (maximal degree, leading term) before pruning.
pub(crate) fn sort_for_pruning(ring: &PolyRing, gens: &mut [Vector]) {
    gens.sort_by(|a, b| {
        a.max_degree().cmp(&b.max_degree()).then_with(|| {
            let (la, lb) = (a.lead(), b.lead());
            match (la, lb) {
                (Some(x), Some(y)) => crate::groebner::pot_cmp(ring, (x.comp, &x.mono), (y.comp, &y.mono)),
                _ => std::cmp::Ordering::Equal,
            }
        })
    });
}

/// A finitely presented `R`-module `R^ngens / span(relations)`.
#[derive(Clone)]
pub struct PresentedModule {
    ring: Arc<QuotientRing>,
    ngens: usize,
    relations: Vec<Vector>,
    gb: Arc<OnceLock<Vec<Vector>>>,
    resolution: Arc<OnceLock<Arc<FreeResolution>>>,
}

impl fmt::Debug for PresentedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PresentedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "module over {} gens {} relations {}", self.ring, self.ngens, self.relations_string())
    }
}

impl PresentedModule {
    /// Relations are reduced modulo `I`; zero and repeated columns dropped.
    pub fn new(ring: &Arc<QuotientRing>, ngens: usize, relations: Vec<Vector>) -> Result<Self> {
        let mut rels: Vec<Vector> = Vec::with_capacity(relations.len());
        for r in relations {
            if r.support_len() > ngens {
                return Err(Error::Invalid(format!(
                    "relation has {} entries but the module has {ngens} generators",
                    r.support_len()
                )));
            }
            for t in r.terms() {
                if t.mono.nvars() != ring.ambient().nvars() {
                    return Err(Error::RingMismatch("relation entry from another ring".into()));
                }
            }
            let r = ring.reduce_vector(&r);
            if !r.is_zero() && !rels.contains(&r) {
                rels.push(r);
            }
        }
        Ok(PresentedModule {
            ring: ring.clone(),
            ngens,
            relations: rels,
            gb: Arc::new(OnceLock::new()),
            resolution: Arc::new(OnceLock::new()),
        })
    }

    /// From a relation matrix given row by row (`rows.len()` generators).
    pub fn from_rows(ring: &Arc<QuotientRing>, rows: &[Vec<Poly>]) -> Result<Self> {
        let ngens = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Invalid("ragged relation matrix".into()));
        }
        let cols = (0..ncols)
            .map(|j| {
                let entries: Vec<Poly> = rows.iter().map(|r| r[j].clone()).collect();
                for e in &entries {
                    ensure_same(ring.ambient(), e.ring())?;
                }
                Ok(Vector::from_polys(&entries))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, ngens, cols)
    }

    pub fn free(ring: &Arc<QuotientRing>, rank: usize) -> Self {
        Self::new(ring, rank, Vec::new()).expect("no relations")
    }

    pub fn zero(ring: &Arc<QuotientRing>) -> Self {
        Self::free(ring, 0)
    }

    /// `R/J` for an ideal given by generators.
    pub fn cyclic(ring: &Arc<QuotientRing>, gens: &[Poly]) -> Result<Self> {
        for g in gens {
            ensure_same(ring.ambient(), g.ring())?;
        }
        Self::new(ring, 1, gens.iter().map(|g| Vector::from_poly(g, 0)).collect())
    }

    /// The residue field `R/(x_1,...,x_n)`; requires the origin to lie on
    /// `V(I)`.
    pub fn residue_field(ring: &Arc<QuotientRing>) -> Result<Self> {
        let vars: Vec<Poly> = (0..ring.ambient().nvars()).map(|i| Poly::var(ring.ambient(), i)).collect();
        let m = Ideal::new(ring.ambient(), vars.clone())?;
        if !m.contains_ideal(ring.ideal())? {
            return Err(Error::Precondition("the origin is not a point of Spec R".into()));
        }
        Self::cyclic(ring, &vars)
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    pub fn ambient(&self) -> &Arc<PolyRing> {
        self.ring.ambient()
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    /// Explicit relations (without the folded-in `I · e_i`).
    pub fn relations(&self) -> &[Vector] {
        &self.relations
    }

    /// Relations as dense columns.
    pub fn relation_columns(&self) -> Vec<Vec<Poly>> {
        self.relations.iter().map(|r| r.to_polys(self.ambient(), self.ngens)).collect()
    }

    pub fn relations_string(&self) -> String {
        let cols: Vec<String> = self.relations.iter().map(|r| r.display(self.ambient(), self.ngens)).collect();
        format!("[{}]", cols.join(", "))
    }

    /// Explicit relations together with `I · e_i`.
    pub fn all_relations(&self) -> Vec<Vector> {
        let mut out = self.relations.clone();
        out.extend(self.ring.ideal_vectors(self.ngens));
        out
    }

    /// Reduced Gröbner basis of the full relation module.
    pub fn relation_gb(&self) -> Result<&[Vector]> {
        if let Some(gb) = self.gb.get() {
            return Ok(gb);
        }
        let gb = crate::groebner::module_groebner_basis(self.ambient(), &self.all_relations())?;
        let _ = self.gb.set(gb);
        Ok(self.gb.get().expect("just set"))
    }

    /// Canonical representative of an element given in generator coordinates.
    pub fn reduce(&self, v: &Vector) -> Result<Vector> {
        Ok(crate::groebner::module_normal_form(self.ambient(), v, self.relation_gb()?))
    }

    pub fn element_is_zero(&self, v: &Vector) -> Result<bool> {
        Ok(self.reduce(v)?.is_zero())
    }

    pub fn is_zero(&self) -> Result<bool> {
        for i in 0..self.ngens {
            if !self.element_is_zero(&Vector::unit(self.ambient(), i))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// No explicit relations: visibly `R^ngens`.
    pub fn is_visibly_free(&self) -> bool {
        self.relations.is_empty()
    }

    /// Same number of generators and the same relation module.
    pub fn same_presentation(&self, other: &PresentedModule) -> Result<bool> {
        if !QuotientRing::same(&self.ring, &other.ring) || self.ngens != other.ngens {
            return Ok(false);
        }
        Ok(self.relation_gb()? == other.relation_gb()?)
    }

    /// `ann M = ⋂ (L : e_i)`, returned as an ideal of the ambient ring
    /// containing `I`.
    pub fn annihilator(&self) -> Result<Ideal> {
        let s = self.ambient();
        let gb = self.relation_gb()?.to_vec();
        let mut acc = Ideal::unit(s);
        for i in 0..self.ngens {
            let ker = kernel(s, &[Vector::unit(s, i)], self.ngens, &gb)?;
            let q = Ideal::new(s, ker.iter().map(|v| v.component(s, 0)).collect())?;
            acc = acc.intersection(&q)?;
        }
        if self.ngens == 0 {
            return Ok(acc);
        }
        acc.standardized()
    }

    pub fn direct_sum(ring: &Arc<QuotientRing>, parts: &[PresentedModule]) -> Result<Self> {
        let mut rels = Vec::new();
        let mut offset = 0;
        for p in parts {
            ensure_same_ring(ring, &p.ring)?;
            rels.extend(p.relations.iter().map(|r| r.shift(offset)));
            offset += p.ngens;
        }
        Self::new(ring, offset, rels)
    }

    /// The same module with extra relations.
    pub fn with_relations(&self, extra: &[Vector]) -> Result<Self> {
        let mut rels = self.relations.clone();
        rels.extend(extra.iter().cloned());
        Self::new(&self.ring, self.ngens, rels)
    }

    /// Views a module over a quotient `S/J` of the same ambient ring as a
    /// module over `ring` (restriction of scalars along `R → S/J`).
    pub fn restrict_to(&self, ring: &Arc<QuotientRing>) -> Result<Self> {
        if !self.ring.is_quotient_of(ring)? {
            return Err(Error::Invalid(format!("{} is not a quotient of {}", self.ring, ring)));
        }
        let mut rels = self.relations.clone();
        rels.extend(self.ring.ideal_vectors(self.ngens));
        Self::new(ring, self.ngens, rels)
    }

    /// `M/JM` for polynomials `J`.
    pub fn quotient_by_ideal(&self, gens: &[Poly]) -> Result<Self> {
        let mut extra = Vec::new();
        for g in gens {
            for i in 0..self.ngens {
                extra.push(Vector::from_poly(g, i));
            }
        }
        self.with_relations(&extra)
    }

    /// Eliminates generators that some relation expresses through the others
    /// (a relation with a nonzero constant entry). Returns the smaller module
    /// and mutually inverse isomorphisms.
    pub fn prune(&self) -> Result<Pruned> {
        let s = self.ambient().clone();
        let field = *s.field();
        let n = self.ngens;
        let mut alive = vec![true; n];
        let mut rels = self.relations.clone();
        let mut expr: Vec<Vector> = (0..n).map(|j| Vector::unit(&s, j)).collect();
        loop {
            let mut pick = None;
            'outer: for (ri, r) in rels.iter().enumerate() {
                for j in 0..n {
                    if alive[j] && r.component(&s, j).is_unit_constant() {
                        pick = Some((ri, j));
                        break 'outer;
                    }
                }
            }
            let Some((ri, j)) = pick else { break };
            let r = rels.remove(ri);
            let c = r.component(&s, j).leading_coeff().expect("unit").clone();
            let cinv = field.inv(&c);
            let eliminate = |v: &Vector| -> Vector {
                let e = v.component(&s, j);
                if e.is_zero() {
                    return v.clone();
                }
                v.sub(&s, &r.mul_poly(&s, &e.scale(&cinv)))
            };
            rels = rels
                .iter()
                .map(|v| self.ring.reduce_vector(&eliminate(v)))
                .filter(|v| !v.is_zero())
                .collect();
            expr = expr.iter().map(eliminate).collect();
            alive[j] = false;
        }
        let mut new_index = vec![usize::MAX; n];
        let mut kept = Vec::new();
        for j in 0..n {
            if alive[j] {
                new_index[j] = kept.len();
                kept.push(j);
            }
        }
        let remap = |v: &Vector| self.ring.reduce_vector(&v.remap(&s, |c| new_index[c]));
        let module = PresentedModule::new(&self.ring, kept.len(), rels.iter().map(remap).collect())?;
        let to_old = ModuleMap::new_unchecked(
            &module,
            self,
            kept.iter().map(|&j| Vector::unit(&s, j)).collect(),
        );
        let from_old = ModuleMap::new_unchecked(self, &module, expr.iter().map(remap).collect());
        Ok(Pruned {
            module,
            to_old,
            from_old,
        })
    }

    /// Submodule of `self` generated by `gens` (generator coordinates),
    /// presented on those generators, with its inclusion.
    pub fn submodule(&self, gens: Vec<Vector>) -> Result<(PresentedModule, ModuleMap)> {
        let rels = kernel(self.ambient(), &gens, self.ngens, self.relation_gb()?)?;
        let sub = PresentedModule::new(&self.ring, gens.len(), rels)?;
        let inc = ModuleMap::new_unchecked(&sub, self, gens);
        Ok((sub, inc))
    }

    /// The cached Schreyer-style resolution.
    pub fn resolution(&self) -> Arc<FreeResolution> {
        self.resolution
            .get_or_init(|| Arc::new(FreeResolution::new(self.clone())))
            .clone()
    }
}

/// Result of [`PresentedModule::prune`].
#[derive(Clone, Debug)]
pub struct Pruned {
    pub module: PresentedModule,
    pub to_old: ModuleMap,
    pub from_old: ModuleMap,
}

/// A homomorphism of presented modules: column `i` is the image of the
/// `i`-th source generator in target generator coordinates.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    source: PresentedModule,
    target: PresentedModule,
    cols: Vec<Vector>,
}

impl ModuleMap {
    /// Checks that relations of the source land in the target relations.
    pub fn new(source: &PresentedModule, target: &PresentedModule, cols: Vec<Vector>) -> Result<Self> {
        ensure_same_ring(&source.ring, &target.ring)?;
        if cols.len() != source.ngens {
            return Err(Error::Invalid(format!(
                "map has {} columns but the source has {} generators",
                cols.len(),
                source.ngens
            )));
        }
        if cols.iter().any(|c| c.support_len() > target.ngens) {
            return Err(Error::Invalid("map column longer than target rank".into()));
        }
        let m = Self::new_unchecked(source, target, cols);
        if !m.is_well_defined()? {
            return Err(Error::Verification("map does not respect the source relations".into()));
        }
        Ok(m)
    }

    pub(crate) fn new_unchecked(source: &PresentedModule, target: &PresentedModule, cols: Vec<Vector>) -> Self {
        ModuleMap {
            source: source.clone(),
            target: target.clone(),
            cols,
        }
    }

    pub fn identity(m: &PresentedModule) -> Self {
        Self::new_unchecked(m, m, (0..m.ngens).map(|i| Vector::unit(m.ambient(), i)).collect())
    }

    pub fn zero(source: &PresentedModule, target: &PresentedModule) -> Self {
        Self::new_unchecked(source, target, vec![Vector::zero(); source.ngens])
    }

    /// From a matrix given row by row (`target.ngens` rows).
    pub fn from_rows(source: &PresentedModule, target: &PresentedModule, rows: &[Vec<Poly>]) -> Result<Self> {
        if rows.len() != target.ngens || rows.iter().any(|r| r.len() != source.ngens) {
            return Err(Error::Invalid("map matrix has the wrong shape".into()));
        }
        let cols = (0..source.ngens)
            .map(|j| Vector::from_polys(&rows.iter().map(|r| r[j].clone()).collect::<Vec<_>>()))
            .collect();
        Self::new(source, target, cols)
    }

    pub fn source(&self) -> &PresentedModule {
        &self.source
    }

    pub fn target(&self) -> &PresentedModule {
        &self.target
    }

    pub fn columns(&self) -> &[Vector] {
        &self.cols
    }

    pub fn matrix_rows(&self) -> Vec<Vec<Poly>> {
        let s = self.source.ambient();
        (0..self.target.ngens)
            .map(|i| self.cols.iter().map(|c| c.component(s, i)).collect())
            .collect()
    }

    /// Image of an element given in source generator coordinates.
    pub fn apply(&self, v: &Vector) -> Vector {
        let s = self.source.ambient();
        let mut acc = Vector::zero();
        for (i, col) in self.cols.iter().enumerate() {
            let c = v.component(s, i);
            if !c.is_zero() {
                acc = acc.add(s, &col.mul_poly(s, &c));
            }
        }
        acc
    }

    pub fn is_well_defined(&self) -> Result<bool> {
        for r in &self.source.relations {
            if !self.target.element_is_zero(&self.apply(r))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ModuleMap) -> Result<ModuleMap> {
        if !self.target.same_presentation(&other.source)? {
            return Err(Error::Invalid("maps are not composable".into()));
        }
        let cols = self.cols.iter().map(|c| other.apply(c)).collect();
        Ok(Self::new_unchecked(&self.source, &other.target, cols))
    }

    pub fn is_zero(&self) -> Result<bool> {
        for c in &self.cols {
            if !self.target.element_is_zero(c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Same source, target and values.
    pub fn equals(&self, other: &ModuleMap) -> Result<bool> {
        if !self.source.same_presentation(&other.source)? || !self.target.same_presentation(&other.target)? {
            return Ok(false);
        }
        let s = self.source.ambient();
        for (a, b) in self.cols.iter().zip(&other.cols) {
            if !self.target.element_is_zero(&a.sub(s, b))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Generators (source coordinates) of the kernel.
    pub fn kernel_gens(&self) -> Result<Vec<Vector>> {
        kernel(self.source.ambient(), &self.cols, self.target.ngens, self.target.relation_gb()?)
    }

    pub fn kernel(&self) -> Result<(PresentedModule, ModuleMap)> {
        let gens = self.kernel_gens()?;
        let gens: Vec<Vector> = gens
            .into_iter()
            .filter_map(|g| match self.source.reduce(&g) {
                Ok(r) if r.is_zero() => None,
                Ok(_) => Some(Ok(g)),
                Err(e) => Some(Err(e)),
            })
            .collect::<Result<_>>()?;
        self.source.submodule(gens)
    }

    pub fn cokernel(&self) -> Result<(PresentedModule, ModuleMap)> {
        let c = self.target.with_relations(&self.cols)?;
        let proj = ModuleMap::identity(&self.target);
        Ok((c.clone(), Self::new_unchecked(&self.target, &c, proj.cols)))
    }

    pub fn image(&self) -> Result<(PresentedModule, ModuleMap)> {
        self.target.submodule(self.cols.clone())
    }

    pub fn is_injective(&self) -> Result<bool> {
        for g in self.kernel_gens()? {
            if !self.source.element_is_zero(&g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_surjective(&self) -> Result<bool> {
        let s = self.source.ambient();
        let lifter = Lifter::new(s, &self.cols, self.target.ngens, self.target.relation_gb()?)?;
        Ok((0..self.target.ngens).all(|i| lifter.contains(&Vector::unit(s, i))))
    }

    pub fn is_isomorphism(&self) -> Result<bool> {
        Ok(self.is_injective()? && self.is_surjective()?)
    }

    /// Some `x` with `self(x) = y`, if `y` is in the image.
    pub fn preimage(&self, y: &Vector) -> Result<Option<Vector>> {
        let lifter = Lifter::new(self.source.ambient(), &self.cols, self.target.ngens, self.target.relation_gb()?)?;
        Ok(lifter.lift(y))
    }
}

#[cfg(test)]
mod tests;
