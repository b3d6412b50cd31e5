//! Certificates of membership in the thick closure of a generator inside
//! `mod R`, and a checker that re-verifies every step.
//!
//! The checker only uses `groebner` and `homalg`; it never calls back into
//! the code that produced the certificate.

pub mod json;

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::Vector;
use crate::homalg::{exactness_check, ModuleMap, PresentedModule, QuotientRing};

pub type ObjId = usize;

/// Current version of the JSON certificate schema.
pub const SCHEMA_VERSION: u32 = 1;

/// The declared generator: `R` (optionally) plus the listed objects.
#[derive(Clone, Debug, Default)]
pub struct GeneratorDecl {
    pub ring: bool,
    pub summands: Vec<ObjId>,
}

/// Matrices are stored as columns: column `i` is the image of source
/// generator `i` in target generator coordinates.
#[derive(Clone, Debug)]
pub enum StepKind {
    Axiom,
    Iso {
        other: ObjId,
        forward: Vec<Vector>,
        backward: Vec<Vector>,
    },
    Ses {
        x: ObjId,
        y: ObjId,
        z: ObjId,
        alpha: Vec<Vector>,
        beta: Vec<Vector>,
    },
    Summand {
        ambient: ObjId,
        section: Vec<Vector>,
        retraction: Vec<Vector>,
    },
    Dsum {
        parts: Vec<ObjId>,
        injections: Vec<Vec<Vector>>,
        projections: Vec<Vec<Vector>>,
    },
    Restrict {
        certificate: Box<Certificate>,
    },
}

impl StepKind {
    pub fn name(&self) -> &'static str {
        match self {
            StepKind::Axiom => "AXIOM",
            StepKind::Iso { .. } => "ISO",
            StepKind::Ses { .. } => "SES",
            StepKind::Summand { .. } => "SUMMAND",
            StepKind::Dsum { .. } => "DSUM",
            StepKind::Restrict { .. } => "RESTRICT",
        }
    }
}

/// One derivation step establishing `object`.
#[derive(Clone, Debug)]
pub struct CertStep {
    pub object: ObjId,
    pub kind: StepKind,
}

#[derive(Clone, Debug)]
pub struct Certificate {
    pub ring: Arc<QuotientRing>,
    pub objects: Vec<(String, PresentedModule)>,
    pub generators: GeneratorDecl,
    pub steps: Vec<CertStep>,
    pub root: ObjId,
    /// Primality attestations the construction relied on.
    pub attestations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub ok: bool,
    /// Index of the first failing top-level step.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fail_step: Option<usize>,
    /// Step indices through nested certificates, outermost first.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub path: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl Verdict {
    fn ok() -> Self {
        Verdict {
            ok: true,
            fail_step: None,
            path: Vec::new(),
            reason: None,
        }
    }

    fn fail(step: usize, reason: impl Into<String>) -> Self {
        Verdict {
            ok: false,
            fail_step: Some(step),
            path: vec![step],
            reason: Some(reason.into()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateStats {
    pub depth: usize,
    pub steps: usize,
    pub triangle_count: usize,
    pub attestations: Vec<String>,
}

impl Certificate {
    pub fn object(&self, id: ObjId) -> &PresentedModule {
        &self.objects[id].1
    }

    pub fn object_name(&self, id: ObjId) -> &str {
        &self.objects[id].0
    }

    pub fn root_module(&self) -> &PresentedModule {
        self.object(self.root)
    }

    /// Declared generator modules, `R` first when declared.
    pub fn generator_modules(&self) -> Vec<PresentedModule> {
        let mut out = Vec::new();
        if self.generators.ring {
            out.push(PresentedModule::free(&self.ring, 1));
        }
        out.extend(self.generators.summands.iter().map(|&i| self.object(i).clone()));
        out
    }
}

fn map(source: &PresentedModule, target: &PresentedModule, cols: &[Vector], label: &str) -> std::result::Result<ModuleMap, String> {
    match ModuleMap::new(source, target, cols.to_vec()) {
        Ok(m) => Ok(m),
        Err(Error::Verification(_)) => Err(format!("{label} is not well defined")),
        Err(e) => Err(format!("{label}: {e}")),
    }
}

fn is_identity(m: &ModuleMap) -> Result<bool> {
    m.equals(&ModuleMap::identity(m.source()))
}

fn check_step(c: &Certificate, established: &[bool], step: &CertStep) -> Result<std::result::Result<(), String>> {
    let new = step.object;
    let obj = c.object(new);
    let known = |id: ObjId| -> std::result::Result<(), String> {
        if id >= c.objects.len() {
            Err(format!("unknown object index {id}"))
        } else if id == new {
            Err(format!("{} refers to itself", c.object_name(id)))
        } else if !established[id] {
            Err(format!("{} is used before it is established", c.object_name(id)))
        } else {
            Ok(())
        }
    };
    macro_rules! tri {
        ($e:expr) => {
            match $e {
                Ok(v) => v,
                Err(msg) => return Ok(Err(msg)),
            }
        };
    }
    match &step.kind {
        StepKind::Axiom => {
            if obj.is_zero()? {
                return Ok(Ok(()));
            }
            if c.generators.ring && obj.is_visibly_free() {
                return Ok(Ok(()));
            }
            for &g in &c.generators.summands {
                if obj.same_presentation(c.object(g))? {
                    return Ok(Ok(()));
                }
            }
            Ok(Err("object is neither zero, free with R declared, nor a declared generator".into()))
        }
        StepKind::Iso {
            other,
            forward,
            backward,
        } => {
            tri!(known(*other));
            let o = c.object(*other);
            let f = tri!(map(obj, o, forward, "forward map"));
            let g = tri!(map(o, obj, backward, "backward map"));
            if !is_identity(&f.then(&g)?)? {
                return Ok(Err("backward ∘ forward ≠ id".into()));
            }
            if !is_identity(&g.then(&f)?)? {
                return Ok(Err("forward ∘ backward ≠ id".into()));
            }
            Ok(Ok(()))
        }
        StepKind::Ses { x, y, z, alpha, beta } => {
            let hits = [x, y, z].iter().filter(|&&&i| i == new).count();
            if hits != 1 {
                return Ok(Err("exactly one of X, Y, Z must be the new object".into()));
            }
            for &i in [x, y, z] {
                if i != new {
                    tri!(known(i));
                }
            }
            let (xm, ym, zm) = (c.object(*x), c.object(*y), c.object(*z));
            let a = tri!(map(xm, ym, alpha, "alpha"));
            let b = tri!(map(ym, zm, beta, "beta"));
            let rep = exactness_check(&[a, b])?;
            if let Some(f) = rep.failure {
                return Ok(Err(format!("not exact at position {}: {}", f.position, f.reason)));
            }
            Ok(Ok(()))
        }
        StepKind::Summand {
            ambient,
            section,
            retraction,
        } => {
            tri!(known(*ambient));
            let a = c.object(*ambient);
            let s = tri!(map(obj, a, section, "section"));
            let r = tri!(map(a, obj, retraction, "retraction"));
            if !is_identity(&s.then(&r)?)? {
                return Ok(Err("retraction ∘ section ≠ id".into()));
            }
            Ok(Ok(()))
        }
        StepKind::Dsum {
            parts,
            injections,
            projections,
        } => {
            if injections.len() != parts.len() || projections.len() != parts.len() {
                return Ok(Err("one injection and one projection per part".into()));
            }
            for &p in parts {
                tri!(known(p));
            }
            let mut inj = Vec::new();
            let mut proj = Vec::new();
            for (k, &p) in parts.iter().enumerate() {
                inj.push(tri!(map(c.object(p), obj, &injections[k], &format!("injection {k}"))));
                proj.push(tri!(map(obj, c.object(p), &projections[k], &format!("projection {k}"))));
            }
            for (j, pj) in proj.iter().enumerate() {
                for (k, ik) in inj.iter().enumerate() {
                    let comp = ik.then(pj)?;
                    let ok = if j == k { is_identity(&comp)? } else { comp.is_zero()? };
                    if !ok {
                        return Ok(Err(format!("projection {j} ∘ injection {k} is wrong")));
                    }
                }
            }
            let s = obj.ambient();
            let mut total = vec![Vector::zero(); obj.ngens()];
            for (ik, pk) in inj.iter().zip(&proj) {
                let comp = pk.then(ik)?;
                for (t, col) in total.iter_mut().zip(comp.columns()) {
                    *t = t.add(s, col);
                }
            }
            let sum = ModuleMap::new(obj, obj, total)?;
            if !is_identity(&sum)? {
                return Ok(Err("Σ injection ∘ projection ≠ id".into()));
            }
            Ok(Ok(()))
        }
        StepKind::Restrict { certificate } => {
            let sub = certificate.as_ref();
            if !sub.ring.is_quotient_of(&c.ring)? {
                return Ok(Err(format!("{} is not a quotient of {}", sub.ring, c.ring)));
            }
            let j_gens = sub.ring.ideal_gens().to_vec();
            for (name, m) in &sub.objects {
                let r = m.restrict_to(&c.ring)?;
                let s = r.ambient();
                for g in &j_gens {
                    for i in 0..r.ngens() {
                        if !r.element_is_zero(&Vector::unit(s, i).mul_poly(s, g))? {
                            return Ok(Err(format!("J does not annihilate {name}")));
                        }
                    }
                }
            }
            for g in sub.generator_modules() {
                let r = g.restrict_to(&c.ring)?;
                let mut found = false;
                for &d in &c.generators.summands {
                    if r.same_presentation(c.object(d))? {
                        found = true;
                        break;
                    }
                }
                if !found {
                    return Ok(Err("a generator of the restricted certificate is not declared here".into()));
                }
            }
            let restricted = sub.root_module().restrict_to(&c.ring)?;
            if !restricted.same_presentation(obj)? {
                return Ok(Err("restricted root differs from the object".into()));
            }
            let v = check_certificate(sub)?;
            if !v.ok {
                return Ok(Err(format!(
                    "restricted certificate fails at step {}: {}",
                    v.fail_step.unwrap_or(0),
                    v.reason.unwrap_or_default()
                )));
            }
            Ok(Ok(()))
        }
    }
}

/// Verifies every step in order; the first failure is reported.
///
/// Errors are reserved for malformed certificates (bad references) and
/// resource cutoffs; a false claim yields a failing verdict.
pub fn check_certificate(c: &Certificate) -> Result<Verdict> {
    let n = c.objects.len();
    for &g in &c.generators.summands {
        if g >= n {
            return Err(Error::Invalid(format!("generator index {g} out of range")));
        }
    }
    if c.root >= n {
        return Err(Error::Invalid("root index out of range".into()));
    }
    for (name, m) in &c.objects {
        if !QuotientRing::same(m.ring(), &c.ring) {
            return Err(Error::RingMismatch(format!("object {name} lives over {}", m.ring())));
        }
    }
    let mut established = vec![false; n];
    for (i, step) in c.steps.iter().enumerate() {
        if step.object >= n {
            return Err(Error::Invalid(format!("step {i} refers to object {}", step.object)));
        }
        if established[step.object] {
            return Ok(Verdict::fail(i, format!("{} is already established", c.object_name(step.object))));
        }
        if let Err(reason) = check_step(c, &established, step)? {
            let mut v = Verdict::fail(i, reason);
            if let StepKind::Restrict { certificate } = &step.kind {
                if let Ok(inner) = check_certificate(certificate) {
                    v.path.extend(inner.path);
                }
            }
            return Ok(v);
        }
        established[step.object] = true;
    }
    match c.steps.last() {
        Some(s) if s.object == c.root => Ok(Verdict::ok()),
        _ => Ok(Verdict::fail(
            c.steps.len().saturating_sub(1),
            "the final step does not establish the root",
        )),
    }
}

/// Depth, step count (nested steps included), number of SES steps and the
/// attestations used.
pub fn certificate_stats(c: &Certificate) -> CertificateStats {
    fn walk(c: &Certificate, steps: &mut usize, triangles: &mut usize, att: &mut Vec<String>) -> usize {
        let mut depth = vec![0usize; c.objects.len()];
        for a in &c.attestations {
            if !att.contains(a) {
                att.push(a.clone());
            }
        }
        for s in &c.steps {
            *steps += 1;
            let d = match &s.kind {
                StepKind::Axiom => 0,
                StepKind::Iso { other, .. } => depth[*other] + 1,
                StepKind::Ses { x, y, z, .. } => {
                    *triangles += 1;
                    [x, y, z].iter().filter(|&&&i| i != s.object).map(|&&i| depth[i]).max().unwrap_or(0) + 1
                }
                StepKind::Summand { ambient, .. } => depth[*ambient] + 1,
                StepKind::Dsum { parts, .. } => parts.iter().map(|&p| depth[p]).max().unwrap_or(0) + 1,
                StepKind::Restrict { certificate } => walk(certificate, steps, triangles, att),
            };
            depth[s.object] = d;
        }
        depth.get(c.root).copied().unwrap_or(0)
    }
    let (mut steps, mut triangles, mut att) = (0, 0, Vec::new());
    let depth = walk(c, &mut steps, &mut triangles, &mut att);
    att.sort();
    CertificateStats {
        depth,
        steps,
        triangle_count: triangles,
        attestations: att,
    }
}

#[cfg(test)]
mod tests;
