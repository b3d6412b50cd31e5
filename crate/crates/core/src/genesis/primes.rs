use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::factor::{certified_prime_factors, irreducibility_certificate};
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::homalg::QuotientRing;
use crate::loci::monomial_minimal_primes;
use crate::polyring::{Monomial, Poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AttestationStatus {
    /// Generated by variables.
    VerifiedMonomial,
    /// Generated by one polynomial with an irreducibility certificate.
    VerifiedPrincipalFactor,
    /// Supplied by the user; containment and covering checked, primality not.
    UserTrusted,
}

impl AttestationStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            AttestationStatus::VerifiedMonomial => "verified_monomial",
            AttestationStatus::VerifiedPrincipalFactor => "verified_principal_factor",
            AttestationStatus::UserTrusted => "user_trusted",
        }
    }
}

/// A minimal prime of `I` and how its primality is known.
#[derive(Clone, Debug)]
pub struct PrimeAttestation {
    pub prime: Ideal,
    pub status: AttestationStatus,
    pub detail: String,
}

impl fmt::Display for PrimeAttestation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.prime, self.status.as_str())
    }
}

/// Primality evidence for an ideal given by generators, if any.
fn attest(p: &Ideal) -> Result<Option<(AttestationStatus, String)>> {
    let gb = p.groebner_basis()?;
    if gb.iter().all(|g| g.degree() == 1 && g.is_monomial()) {
        return Ok(Some((AttestationStatus::VerifiedMonomial, "generated by variables".into())));
    }
    if gb.len() == 1 {
        let (vars, _) = super::factor::split_monomial_content(&gb[0]);
        if vars.is_empty() {
            if let Some(why) = irreducibility_certificate(&gb[0])? {
                return Ok(Some((AttestationStatus::VerifiedPrincipalFactor, why)));
            }
        }
    }
    Ok(None)
}

/// Minimal primes of `I`.
///
/// Without hints only monomial and principal ideals are handled. Hints must
/// contain `I` and have product inside `√I`; a hint whose primality cannot
/// be verified is marked user-trusted.
pub fn minimal_primes(ideal: &Ideal, hints: Option<&[Vec<Poly>]>) -> Result<Vec<PrimeAttestation>> {
    let s = ideal.ring();
    let n = s.nvars();
    if ideal.is_unit()? {
        return Err(Error::Invalid("the unit ideal has no primes".into()));
    }
    if let Some(hints) = hints {
        if hints.is_empty() {
            return Err(Error::Invalid("empty prime list".into()));
        }
        let mut product = Ideal::unit(s);
        let mut out = Vec::new();
        for h in hints {
            let p = Ideal::new(s, h.clone())?.standardized()?;
            if p.is_unit()? {
                return Err(Error::Verification(format!("hint {p} is the unit ideal")));
            }
            if !p.contains_ideal(ideal)? {
                return Err(Error::Verification(format!("hint {p} does not contain {ideal}")));
            }
            product = product.product(&p)?;
            let (status, detail) =
                attest(&p)?.unwrap_or((AttestationStatus::UserTrusted, "supplied as a hint".into()));
            out.push(PrimeAttestation { prime: p, status, detail });
        }
        if !ideal.radical_contains_ideal(&product)? {
            return Err(Error::Verification("the hinted primes do not cover the minimal primes".into()));
        }
        return Ok(out);
    }
    let gb = ideal.groebner_basis()?.to_vec();
    if gb.is_empty() {
        return Ok(vec![PrimeAttestation {
            prime: Ideal::zero(s),
            status: AttestationStatus::VerifiedMonomial,
            detail: "zero ideal".into(),
        }]);
    }
    if gb.iter().all(|g| g.is_monomial()) {
        return monomial_minimal_primes(ideal)?
            .into_iter()
            .map(|vars| {
                let gens = vars
                    .iter()
                    .map(|&v| Poly::monomial(s, Monomial::var(n, v, 1), s.field().one()))
                    .collect();
                Ok(PrimeAttestation {
                    prime: Ideal::new(s, gens)?,
                    status: AttestationStatus::VerifiedMonomial,
                    detail: "vertex cover of a monomial ideal".into(),
                })
            })
            .collect();
    }
    if gb.len() == 1 {
        return certified_prime_factors(&gb[0])?
            .into_iter()
            .map(|(g, why)| {
                let status = if g.is_monomial() {
                    AttestationStatus::VerifiedMonomial
                } else {
                    AttestationStatus::VerifiedPrincipalFactor
                };
                Ok(PrimeAttestation {
                    prime: Ideal::new(s, vec![g])?,
                    status,
                    detail: why,
                })
            })
            .collect();
    }
    Err(Error::Unsupported(format!(
        "minimal primes of {ideal} are only computed for monomial or principal ideals; supply primes"
    )))
}

/// Hints for the minimal primes of particular rings, consulted by the
/// generator construction before the automatic cases.
#[derive(Clone, Debug, Default)]
pub struct PrimeHints {
    entries: Vec<(Arc<QuotientRing>, Vec<Vec<Poly>>)>,
}

impl PrimeHints {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, ring: &Arc<QuotientRing>, primes: Vec<Vec<Poly>>) -> Self {
        self.entries.push((ring.clone(), primes));
        self
    }

    pub fn get(&self, ring: &QuotientRing) -> Option<&[Vec<Poly>]> {
        self.entries
            .iter()
            .find(|(r, _)| QuotientRing::same(r, ring))
            .map(|(_, p)| p.as_slice())
    }
}

/// Minimal primes of the defining ideal of `ring`.
pub fn ring_minimal_primes(ring: &QuotientRing, hints: &PrimeHints) -> Result<Vec<PrimeAttestation>> {
    minimal_primes(ring.ideal(), hints.get(ring))
}
