use std::sync::Arc;

use super::filtration::prime_filtration;
use super::generator::{GenKind, GenNode, GeneratorResult};
use crate::certcheck::{CertStep, Certificate, GeneratorDecl, ObjId, StepKind};
use crate::error::{Error, Result};
use crate::groebner::{Lifter, Vector};
use crate::homalg::{
    ext_annihilator, hom_module, is_pd_le, kernel_over, localized_pd, syzygy, ModuleMap, PresentedModule,
    QuotientRing,
};
use crate::polyring::Poly;

/// A map `s : N → Y` with `π ∘ s = id_N`, searched in `Hom(N, Y)`.
pub fn find_section(n: &PresentedModule, pi: &ModuleMap) -> Result<Option<ModuleMap>> {
    let y = pi.source();
    let hom = hom_module(n, y)?;
    let s = n.ambient();
    let k = n.ngens();
    let mut flats = Vec::with_capacity(hom.ngens());
    for phi in hom.generators() {
        let comp = phi.then(pi)?;
        let mut flat = Vector::zero();
        for (i, c) in comp.columns().iter().enumerate() {
            flat = flat.add(s, &c.shift(i * k));
        }
        flats.push(flat);
    }
    let mut modulo = Vec::new();
    let gb = n.relation_gb()?;
    for i in 0..k {
        modulo.extend(gb.iter().map(|v| v.shift(i * k)));
    }
    let mut target = Vector::zero();
    for i in 0..k {
        target = target.add(s, &Vector::unit(s, i * k + i));
    }
    let lifter = Lifter::new(s, &flats, k * k, &modulo)?;
    let Some(c) = lifter.lift(&target) else {
        return Ok(None);
    };
    let sec = hom.map_for(&c);
    Ok(Some(ModuleMap::new(n, y, sec.columns().to_vec())?))
}

fn units(s: &Arc<crate::polyring::PolyRing>, k: usize) -> Vec<Vector> {
    (0..k).map(|i| Vector::unit(s, i)).collect()
}

struct Builder {
    ring: Arc<QuotientRing>,
    objects: Vec<(String, PresentedModule)>,
    established: Vec<bool>,
    steps: Vec<CertStep>,
    summands: Vec<ObjId>,
    attestations: Vec<String>,
}

impl Builder {
    fn new(node: &GenNode) -> Result<Self> {
        let mut b = Builder {
            ring: node.ring.clone(),
            objects: Vec::new(),
            established: Vec::new(),
            steps: Vec::new(),
            summands: Vec::new(),
            attestations: Vec::new(),
        };
        for g in &node.summands {
            let id = b.object("G", g)?;
            b.summands.push(id);
        }
        if let GenKind::Components { primes, .. } = &node.kind {
            b.attestations = primes.iter().map(|p| p.to_string()).collect();
        }
        Ok(b)
    }

    /// Registers `m`, reusing an object with the same presentation.
    fn object(&mut self, base: &str, m: &PresentedModule) -> Result<ObjId> {
        for (i, (_, o)) in self.objects.iter().enumerate() {
            if o.ngens() == m.ngens() && o.same_presentation(m)? {
                return Ok(i);
            }
        }
        let mut name = base.to_string();
        let mut k = 1;
        while self.objects.iter().any(|(n, _)| *n == name) {
            k += 1;
            name = format!("{base}_{k}");
        }
        self.objects.push((name, m.clone()));
        self.established.push(false);
        Ok(self.objects.len() - 1)
    }

    fn push(&mut self, object: ObjId, kind: StepKind) {
        debug_assert!(!self.established[object]);
        self.steps.push(CertStep { object, kind });
        self.established[object] = true;
    }

    fn module(&self, id: ObjId) -> &PresentedModule {
        &self.objects[id].1
    }

    /// Establishes `m` directly when it is zero, free (with `R` declared) or
    /// a declared summand.
    fn try_axiom(&mut self, node: &GenNode, id: ObjId) -> Result<bool> {
        if self.established[id] {
            return Ok(true);
        }
        let m = self.module(id).clone();
        let mut ok = m.is_zero()? || (node.includes_ring && m.is_visibly_free());
        if !ok {
            for &g in &self.summands {
                if self.module(g).same_presentation(&m)? {
                    ok = true;
                    break;
                }
            }
        }
        if ok {
            self.push(id, StepKind::Axiom);
        }
        Ok(ok)
    }

    fn free(&mut self, node: &GenNode, rank: usize) -> Result<ObjId> {
        let id = self.object("F", &PresentedModule::free(&self.ring, rank))?;
        if !self.try_axiom(node, id)? {
            return Err(Error::Invalid("free modules need R among the generators".into()));
        }
        Ok(id)
    }

    fn ses(&mut self, new: ObjId, x: ObjId, y: ObjId, z: ObjId, alpha: Vec<Vector>, beta: Vec<Vector>) {
        if !self.established[new] {
            self.push(new, StepKind::Ses { x, y, z, alpha, beta });
        }
    }

    fn finish(self, root: ObjId) -> Certificate {
        Certificate {
            ring: self.ring,
            objects: self.objects,
            generators: GeneratorDecl {
                ring: false,
                summands: self.summands,
            },
            steps: self.steps,
            root,
            attestations: self.attestations,
        }
    }
}

/// A certificate that `m` lies in the thick subcategory generated by the
/// generator of `gen`.
pub fn certify_module(m: &PresentedModule, gen: &GeneratorResult) -> Result<Certificate> {
    if !QuotientRing::same(m.ring(), gen.ring()) {
        return Err(Error::RingMismatch(format!("module over {}, generator over {}", m.ring(), gen.ring())));
    }
    certify_at(&gen.tree, m)
}

fn certify_at(node: &GenNode, m: &PresentedModule) -> Result<Certificate> {
    let mut b = Builder::new(node)?;
    let root = establish(&mut b, node, m)?;
    let mut c = b.finish(root);
    c.generators.ring = node.includes_ring;
    Ok(c)
}

fn establish(b: &mut Builder, node: &GenNode, m: &PresentedModule) -> Result<ObjId> {
    let id = b.object("M", m)?;
    if b.try_axiom(node, id)? {
        return Ok(id);
    }
    match &node.kind {
        GenKind::Regular => via_projective_syzygy(b, node, m, None),
        GenKind::Domain { f, child } => via_projective_syzygy(b, node, m, Some((f, child))),
        GenKind::Components { primes, children } => {
            let ideals: Vec<_> = primes.iter().map(|p| p.prime.clone()).collect();
            via_filtration(b, m, &ideals, children)
        }
    }
}

/// `Ω^n M` from `Ω^{n+1} M` and `F_n`, down to `M`.
fn descend(b: &mut Builder, node: &GenNode, m: &PresentedModule, n: usize, mut upper: ObjId) -> Result<ObjId> {
    let s = m.ambient().clone();
    let res = m.resolution();
    for j in (0..n).rev() {
        let omega_j = syzygy(j, m)?;
        let z = b.object(if j == 0 { "M" } else { "Omega" }, &omega_j)?;
        let f = b.free(node, res.rank(j)?)?;
        let d = res.differential(j + 1)?.to_vec();
        b.ses(z, upper, f, z, d, units(&s, res.rank(j)?));
        upper = z;
    }
    Ok(upper)
}

/// Splits the projective `N = Ω^n M` off `F_n` via `π = id : F_n → N`.
fn summand_of_free(b: &mut Builder, node: &GenNode, n_mod: &PresentedModule) -> Result<ObjId> {
    let id = b.object("N", n_mod)?;
    if b.try_axiom(node, id)? {
        return Ok(id);
    }
    let f = b.free(node, n_mod.ngens())?;
    let s = n_mod.ambient().clone();
    let pi = ModuleMap::new(b.module(f), n_mod, units(&s, n_mod.ngens()))?;
    let sec = find_section(n_mod, &pi)?
        .ok_or_else(|| Error::Verification("no splitting of the projective syzygy was found".into()))?;
    b.push(
        id,
        StepKind::Summand {
            ambient: f,
            section: sec.columns().to_vec(),
            retraction: pi.columns().to_vec(),
        },
    );
    Ok(id)
}

fn via_projective_syzygy(
    b: &mut Builder,
    node: &GenNode,
    m: &PresentedModule,
    domain: Option<(&Poly, &GenNode)>,
) -> Result<ObjId> {
    let ring = node.ring.clone();
    let dim = ring.dim().max(0) as usize;
    let Some((f, child)) = domain else {
        let mut n = 0;
        while n < dim && !syzygy(n, m)?.is_visibly_free() && !is_pd_le(m, n)? {
            n += 1;
        }
        let top = summand_of_free(b, node, &syzygy(n, m)?)?;
        return descend(b, node, m, n, top);
    };
    let d = localized_pd(m, f)?
        .ok_or_else(|| Error::Verification(format!("pd of M is infinite after inverting {f}")))?;
    let n = d.max(1);
    let n_mod = syzygy(n, m)?;
    let n_id = b.object("N", &n_mod)?;
    if b.try_axiom(node, n_id)? {
        return descend(b, node, m, n, n_id);
    }
    let omega = syzygy(n + 1, m)?;
    let a = ext_annihilator(1, &n_mod, &omega)?.saturation_index(f)?;
    if a == 0 {
        let top = summand_of_free(b, node, &n_mod)?;
        return descend(b, node, m, n, top);
    }
    let s = ring.ambient().clone();
    let r = n_mod.ngens();
    let fa = f.pow(a);
    let mult = ModuleMap::new(&n_mod, &n_mod, units(&s, r).iter().map(|u| u.mul_poly(&s, &fa)).collect())?;
    if !mult.is_injective()? {
        return Err(Error::Verification(format!("{fa} is not a nonzerodivisor on the syzygy")));
    }
    // N/fN over R/(f), certified by the child and restricted.
    let q1 = n_mod.quotient_by_ideal(std::slice::from_ref(f))?;
    let q1_child = PresentedModule::new(&child.ring, r, q1.relations().to_vec())?;
    let sub = certify_at(child, &q1_child)?;
    let mut prev = b.object("Q", &q1)?;
    if !b.established[prev] {
        b.push(prev, StepKind::Restrict { certificate: Box::new(sub) });
    }
    let q1_id = prev;
    for i in 2..=a {
        let qi = n_mod.quotient_by_ideal(&[f.pow(i)])?;
        let qi_id = b.object("Q", &qi)?;
        let fi = f.pow(i - 1);
        let alpha = units(&s, r).iter().map(|u| u.mul_poly(&s, &fi)).collect();
        b.ses(qi_id, q1_id, qi_id, prev, alpha, units(&s, r));
        prev = qi_id;
    }
    // K = ker(F_n → N/f^a N) = Ω(N/f^a N), generated by d_{n+1} and f^a F_n.
    let d_next = m.resolution().differential(n + 1)?.to_vec();
    let mut kcols = d_next.clone();
    kcols.extend(units(&s, r).iter().map(|u| u.mul_poly(&s, &fa)));
    let k_mod = PresentedModule::new(&ring, kcols.len(), kernel_over(&ring, &kcols, r, &[])?)?;
    let k_id = b.object("K", &k_mod)?;
    let f_id = b.free(node, r)?;
    b.ses(k_id, k_id, f_id, prev, kcols, units(&s, r));
    // ρ : K → N sends d_{n+1} to 0 and f^a e_i to e_i.
    let mut rho_cols = vec![Vector::zero(); d_next.len()];
    rho_cols.extend(units(&s, r));
    let rho = ModuleMap::new(&k_mod, &n_mod, rho_cols)?;
    let sec = find_section(&n_mod, &rho)?
        .ok_or_else(|| Error::Verification("the extension by the syzygy does not split".into()))?;
    if !b.established[n_id] {
        b.push(
            n_id,
            StepKind::Summand {
                ambient: k_id,
                section: sec.columns().to_vec(),
                retraction: rho.columns().to_vec(),
            },
        );
    }
    descend(b, node, m, n, n_id)
}

fn via_filtration(
    b: &mut Builder,
    m: &PresentedModule,
    primes: &[crate::groebner::Ideal],
    children: &[GenNode],
) -> Result<ObjId> {
    let filt = prime_filtration(m, Some(primes))?;
    let s = m.ambient().clone();
    let t = filt.levels.len();
    let restrict = |b: &mut Builder, base: &str, q: &PresentedModule, child: &GenNode| -> Result<ObjId> {
        let id = b.object(base, q)?;
        if !b.established[id] {
            let over_child = PresentedModule::new(&child.ring, q.ngens(), q.relations().to_vec())?;
            let sub = certify_at(child, &over_child)?;
            b.push(id, StepKind::Restrict { certificate: Box::new(sub) });
        }
        Ok(id)
    };
    let mut lower: Option<ObjId> = None;
    for k in (1..=t).rev() {
        let lvl = &filt.levels[k - 1];
        let child = &children[lvl.prime];
        let upper_mod = filt.submodule(k - 1).clone();
        let base = if k == 1 { "M" } else { "A" };
        if lvl.gens.is_empty() {
            // A_k = 0, so A_{k-1} is its own quotient.
            lower = Some(restrict(b, base, &upper_mod, child)?);
            continue;
        }
        let q_id = restrict(b, "P", &lvl.quotient, child)?;
        let x = lower.expect("levels end with zero");
        let y = b.object(base, &upper_mod)?;
        let q = &primes[lvl.prime];
        let alpha = lvl
            .origins
            .iter()
            .map(|&(j, g)| Vector::unit(&s, j).mul_poly(&s, &q.gens()[g]))
            .collect();
        b.ses(y, x, y, q_id, alpha, units(&s, upper_mod.ngens()));
        lower = Some(y);
    }
    let root = lower.ok_or_else(|| Error::Invalid("empty filtration".into()))?;
    Ok(root)
}
