use std::sync::Arc;

use serde::Serialize;

use super::primes::{ring_minimal_primes, PrimeAttestation, PrimeHints};
use crate::error::{Error, Result};
use crate::homalg::{PresentedModule, QuotientRing};
use crate::loci::{is_j0, singular_locus};
use crate::polyring::Poly;

/// How the generator of one ring was obtained.
#[derive(Clone, Debug)]
pub enum GenKind {
    /// `Sing R = ∅`; the generator is `R`.
    Regular,
    /// `R` a domain: `R ⊕ G(R/(f))` restricted, `f` inverting the
    /// singular locus.
    Domain { f: Poly, child: Box<GenNode> },
    /// One child per minimal prime; the generator is the sum of the
    /// restricted children.
    Components {
        primes: Vec<PrimeAttestation>,
        children: Vec<GenNode>,
    },
}

#[derive(Clone, Debug)]
pub struct GenNode {
    pub ring: Arc<QuotientRing>,
    pub kind: GenKind,
    pub includes_ring: bool,
    /// Summands other than `R`, pairwise distinct presentations.
    pub summands: Vec<PresentedModule>,
}

impl GenNode {
    /// `R` (when included) followed by the other summands.
    pub fn generator_modules(&self) -> Vec<PresentedModule> {
        let mut out = Vec::new();
        if self.includes_ring {
            out.push(PresentedModule::free(&self.ring, 1));
        }
        out.extend(self.summands.iter().cloned());
        out
    }

    /// Dimension levels on the longest branch; prime splits do not count.
    pub fn depth(&self) -> usize {
        match &self.kind {
            GenKind::Regular => 1,
            GenKind::Domain { child, .. } => 1 + child.depth(),
            GenKind::Components { children, .. } => children.iter().map(|c| c.depth()).max().unwrap_or(0),
        }
    }

    /// Number of inverting-element steps.
    pub fn triangle_count(&self) -> usize {
        match &self.kind {
            GenKind::Regular => 0,
            GenKind::Domain { child, .. } => 1 + child.triangle_count(),
            GenKind::Components { children, .. } => children.iter().map(|c| c.triangle_count()).sum(),
        }
    }

    pub fn attestations(&self, out: &mut Vec<String>) {
        match &self.kind {
            GenKind::Regular => {}
            GenKind::Domain { child, .. } => child.attestations(out),
            GenKind::Components { primes, children } => {
                for p in primes {
                    let s = p.to_string();
                    if !out.contains(&s) {
                        out.push(s);
                    }
                }
                for c in children {
                    c.attestations(out);
                }
            }
        }
    }

    pub fn trace(&self) -> TraceNode {
        let (case, inverting_element, primes, children) = match &self.kind {
            GenKind::Regular => ("regular", None, Vec::new(), Vec::new()),
            GenKind::Domain { f, child } => ("domain", Some(f.to_string()), Vec::new(), vec![child.trace()]),
            GenKind::Components { primes, children } => (
                "components",
                None,
                primes
                    .iter()
                    .map(|p| PrimeTrace {
                        prime: p.prime.to_string(),
                        status: p.status.as_str().to_string(),
                        detail: p.detail.clone(),
                    })
                    .collect(),
                children.iter().map(|c| c.trace()).collect(),
            ),
        };
        TraceNode {
            ring: self.ring.to_string(),
            case: case.to_string(),
            inverting_element,
            primes,
            summands: self.generator_modules().iter().map(|m| m.to_string()).collect(),
            children,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PrimeTrace {
    pub prime: String,
    pub status: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceNode {
    pub ring: String,
    pub case: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inverting_element: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub primes: Vec<PrimeTrace>,
    pub summands: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<TraceNode>,
}

#[derive(Clone, Debug)]
pub struct GeneratorResult {
    pub tree: GenNode,
    /// Direct sum of the generator modules.
    pub generator: PresentedModule,
    pub triangle_count: usize,
    pub depth: usize,
}

impl GeneratorResult {
    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.tree.ring
    }

    pub fn summands(&self) -> Vec<PresentedModule> {
        self.tree.generator_modules()
    }

    pub fn attestations(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.tree.attestations(&mut out);
        out
    }
}

/// `Sing R = ∅`. A mixed-dimensional defining ideal counts as not regular.
pub fn is_regular(ring: &Arc<QuotientRing>) -> Result<bool> {
    match singular_locus(ring) {
        Ok(l) => l.is_empty(),
        Err(Error::Precondition(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

/// The defining ideal equals its only minimal prime.
pub fn is_attested_domain(ring: &QuotientRing, hints: &PrimeHints) -> Result<Option<PrimeAttestation>> {
    let primes = ring_minimal_primes(ring, hints)?;
    if primes.len() == 1 && primes[0].prime.same_ideal(ring.ideal())? {
        return Ok(primes.into_iter().next());
    }
    Ok(None)
}

/// A nonzero `f ∈ R` with `R_f` regular: the least basis element of the
/// singular ideal that is nonzero in `R`.
pub fn find_inverting_element(ring: &Arc<QuotientRing>, hints: &PrimeHints) -> Result<Poly> {
    if is_attested_domain(ring, hints)?.is_none() {
        return Err(Error::Precondition(format!("{ring} is not attested as a domain")));
    }
    if is_regular(ring)? {
        return Err(Error::Precondition("ring is regular; base case applies".into()));
    }
    is_j0(ring, true)?
        .witness_poly
        .ok_or_else(|| Error::Verification("the singular ideal vanishes in R".into()))
}

fn push_distinct(out: &mut Vec<PresentedModule>, m: PresentedModule) -> Result<()> {
    for o in out.iter() {
        if o.same_presentation(&m)? {
            return Ok(());
        }
    }
    out.push(m);
    Ok(())
}

fn restricted_generators(child: &GenNode, ring: &Arc<QuotientRing>, out: &mut Vec<PresentedModule>) -> Result<()> {
    for g in child.generator_modules() {
        push_distinct(out, g.restrict_to(ring)?)?;
    }
    Ok(())
}

fn build(ring: &Arc<QuotientRing>, hints: &PrimeHints, budget: usize) -> Result<GenNode> {
    if budget == 0 {
        return Err(Error::Cutoff("generator recursion too deep".into()));
    }
    if is_regular(ring)? {
        return Ok(GenNode {
            ring: ring.clone(),
            kind: GenKind::Regular,
            includes_ring: true,
            summands: Vec::new(),
        });
    }
    let primes = ring_minimal_primes(ring, hints)?;
    if primes.len() == 1 && primes[0].prime.same_ideal(ring.ideal())? {
        let f = is_j0(ring, true)?
            .witness_poly
            .ok_or_else(|| Error::Verification("the singular ideal vanishes in R".into()))?;
        let child = build(&ring.quotient(std::slice::from_ref(&f))?, hints, budget - 1)?;
        let mut summands = Vec::new();
        restricted_generators(&child, ring, &mut summands)?;
        return Ok(GenNode {
            ring: ring.clone(),
            kind: GenKind::Domain {
                f,
                child: Box::new(child),
            },
            includes_ring: true,
            summands,
        });
    }
    let mut children = Vec::new();
    let mut summands = Vec::new();
    for p in &primes {
        let sub = ring.quotient(p.prime.gens())?;
        let child = build(&sub, hints, budget - 1)?;
        restricted_generators(&child, ring, &mut summands)?;
        children.push(child);
    }
    Ok(GenNode {
        ring: ring.clone(),
        kind: GenKind::Components { primes, children },
        includes_ring: false,
        summands,
    })
}

/// A module `G` with `thick(G) = mod R`, built by recursion on dimension.
pub fn build_generator(ring: &Arc<QuotientRing>, hints: &PrimeHints) -> Result<GeneratorResult> {
    let budget = 2 * (ring.ambient().nvars() + 2);
    let tree = build(ring, hints, budget)?;
    let generator = PresentedModule::direct_sum(ring, &tree.generator_modules())?;
    Ok(GeneratorResult {
        triangle_count: tree.triangle_count(),
        depth: tree.depth(),
        generator,
        tree,
    })
}
