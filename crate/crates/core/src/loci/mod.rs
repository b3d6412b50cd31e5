//! Closed and open subsets of `Spec R`: singular and regular loci, perfect
//! loci, and the J-0 / J-1 predicates.
//!
//! A closed set is `V(J)` for an ideal `J ⊇ I` of the ambient ring and is
//! compared only up to radical, by membership tests.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::homalg::{ext_annihilator, syzygy, BoundedFreeComplex, PresentedModule, QuotientRing};
use crate::polyring::{jacobian_matrix, Poly};

/// `V(ideal) ⊆ Spec R`.
#[derive(Clone, Debug)]
pub struct ClosedLocus {
    ring: Arc<QuotientRing>,
    ideal: Ideal,
}

impl fmt::Display for ClosedLocus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "V{}", self.ideal)
    }
}

impl ClosedLocus {
    /// `V(gens)`; `I` is added to the defining ideal.
    pub fn new(ring: &Arc<QuotientRing>, gens: Vec<Poly>) -> Result<Self> {
        let mut all = ring.ideal_gens().to_vec();
        all.extend(gens);
        let ideal = Ideal::new(ring.ambient(), all)?.standardized()?;
        Ok(ClosedLocus {
            ring: ring.clone(),
            ideal,
        })
    }

    pub fn empty(ring: &Arc<QuotientRing>) -> Self {
        ClosedLocus {
            ring: ring.clone(),
            ideal: Ideal::unit(ring.ambient()),
        }
    }

    pub fn everything(ring: &Arc<QuotientRing>) -> Self {
        ClosedLocus {
            ring: ring.clone(),
            ideal: ring.ideal().clone(),
        }
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    /// Defining ideal (ambient ring, containing `I`).
    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn is_empty(&self) -> Result<bool> {
        self.ideal.is_unit()
    }

    /// `V(J) = Spec R`, i.e. `J ⊆ √I`.
    pub fn is_everything(&self) -> Result<bool> {
        self.ring.ideal().radical_contains_ideal(&self.ideal)
    }

    /// `other ⊆ self` as sets.
    pub fn contains(&self, other: &ClosedLocus) -> Result<bool> {
        other.ideal.radical_contains_ideal(&self.ideal)
    }

    pub fn same_as(&self, other: &ClosedLocus) -> Result<bool> {
        Ok(self.contains(other)? && other.contains(self)?)
    }

    pub fn union(&self, other: &ClosedLocus) -> Result<ClosedLocus> {
        Ok(ClosedLocus {
            ring: self.ring.clone(),
            ideal: self.ideal.intersection(&other.ideal)?,
        })
    }

    pub fn intersection(&self, other: &ClosedLocus) -> Result<ClosedLocus> {
        Ok(ClosedLocus {
            ring: self.ring.clone(),
            ideal: self.ideal.sum(&other.ideal)?.standardized()?,
        })
    }

    /// Whether the point with the given coordinates lies in `V(J)`, for a
    /// rational point of `V(I)`.
    pub fn contains_point(&self, point: &[Poly]) -> Result<bool> {
        let vars: Vec<Poly> = (0..self.ring.ambient().nvars())
            .map(|i| &Poly::var(self.ring.ambient(), i) - &point[i])
            .collect();
        let m = Ideal::new(self.ring.ambient(), vars)?;
        m.contains_ideal(&self.ideal)
    }

    pub fn defining_strings(&self) -> Vec<String> {
        self.ideal.gens().iter().map(|g| g.to_string()).collect()
    }

    pub fn complement(&self) -> OpenLocus {
        OpenLocus {
            complement: self.clone(),
        }
    }
}

/// `Spec R ∖ V(J)`.
#[derive(Clone, Debug)]
pub struct OpenLocus {
    pub complement: ClosedLocus,
}

impl fmt::Display for OpenLocus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Spec R \\ {}", self.complement)
    }
}

impl OpenLocus {
    pub fn is_empty(&self) -> Result<bool> {
        self.complement.is_everything()
    }

    pub fn is_everything(&self) -> Result<bool> {
        self.complement.is_empty()
    }

    pub fn same_as(&self, other: &OpenLocus) -> Result<bool> {
        self.complement.same_as(&other.complement)
    }
}

/// How the equidimensionality precondition of the Jacobian criterion was
/// established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Equidimensionality {
    /// Zero, principal, or monomial with equal-size minimal primes.
    Verified,
    /// Attested by the caller (for example a prime ideal).
    Attested,
    /// Not decidable by the built-in checks; taken on trust.
    Assumed,
}

/// Minimal primes of a monomial ideal (minimal vertex covers of the
/// supports), each a sorted list of variable indices.
pub fn monomial_minimal_primes(ideal: &Ideal) -> Result<Vec<Vec<usize>>> {
    let gb = ideal.groebner_basis()?;
    if gb.iter().any(|g| !g.is_monomial()) {
        return Err(Error::Precondition("not a monomial ideal".into()));
    }
    if gb.iter().any(|g| g.is_unit_constant()) {
        return Ok(Vec::new());
    }
    let n = ideal.ring().nvars();
    if n > 24 {
        return Err(Error::Cutoff("too many variables for vertex-cover search".into()));
    }
    let supports: Vec<u32> = gb
        .iter()
        .map(|g| g.leading_monomial().expect("nonzero").support().fold(0u32, |a, i| a | (1 << i)))
        .collect();
    let mut covers: Vec<u32> = Vec::new();
    let mut sets: Vec<u32> = (0u32..(1u32 << n)).collect();
    sets.sort_by_key(|s| (s.count_ones(), *s));
    for s in sets {
        if supports.iter().all(|&g| g & s != 0) && !covers.iter().any(|&c| c & s == c) {
            covers.push(s);
        }
    }
    Ok(covers
        .into_iter()
        .map(|c| (0..n).filter(|i| c & (1 << i) != 0).collect())
        .collect())
}

/// Checks (or records as assumed) that `I` is equidimensional; an error
/// explains a detected mixed-dimension input.
pub fn check_equidimensional(ring: &QuotientRing) -> Result<Equidimensionality> {
    let gb = ring.ideal_gens();
    if gb.len() <= 1 {
        return Ok(Equidimensionality::Verified);
    }
    if gb.iter().all(|g| g.is_monomial()) {
        let primes = monomial_minimal_primes(ring.ideal())?;
        let sizes: Vec<usize> = primes.iter().map(|p| p.len()).collect();
        if sizes.windows(2).any(|w| w[0] != w[1]) {
            let names: Vec<String> = primes
                .iter()
                .map(|p| {
                    let v: Vec<&str> = p.iter().map(|&i| ring.ambient().vars()[i].as_str()).collect();
                    format!("({})", v.join(","))
                })
                .collect();
            return Err(Error::Precondition(format!(
                "defining ideal is not equidimensional: minimal primes {} have different heights; \
                 supply components and treat them separately",
                names.join(", ")
            )));
        }
        return Ok(Equidimensionality::Verified);
    }
    Ok(Equidimensionality::Assumed)
}

/// Determinant by cofactor expansion along the first row.
pub fn determinant(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    match n {
        0 => panic!("empty matrix"),
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        _ => {
            let ring = m[0][0].ring().clone();
            let mut acc = Poly::zero(&ring);
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Poly>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, e)| e.clone()).collect())
                    .collect();
                let term = &m[0][j] * &determinant(&minor);
                acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// All nonzero `c × c` minors, deduplicated.
pub fn minors(m: &[Vec<Poly>], c: usize) -> Vec<Poly> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut out: Vec<Poly> = Vec::new();
    if c == 0 || c > rows || c > cols {
        return out;
    }
    for rs in combinations(rows, c) {
        for cs in combinations(cols, c) {
            let sub: Vec<Vec<Poly>> = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j].clone()).collect()).collect();
            let d = determinant(&sub);
            if !d.is_zero() && !out.contains(&d) {
                out.push(d);
            }
        }
    }
    out
}

/// Jacobian ideal `I + (c×c minors)` with `c = codim I`, without the
/// equidimensionality check.
pub(crate) fn jacobian_locus(ring: &Arc<QuotientRing>) -> Result<ClosedLocus> {
    let n = ring.ambient().nvars() as i64;
    let c = n - ring.dim();
    if c == 0 {
        return Ok(ClosedLocus::empty(ring));
    }
    let jac = jacobian_matrix(ring.ideal_gens())?;
    ClosedLocus::new(ring, minors(&jac, c as usize))
}

/// `Sing R = V(I + c×c minors of the Jacobian)`.
pub fn singular_locus(ring: &Arc<QuotientRing>) -> Result<ClosedLocus> {
    check_equidimensional(ring)?;
    jacobian_locus(ring)
}

/// `Reg R = Spec R ∖ Sing R`.
pub fn regular_locus(ring: &Arc<QuotientRing>) -> Result<OpenLocus> {
    Ok(singular_locus(ring)?.complement())
}

/// `V(ann Ext^n(M, Ω^n M))`.
pub fn ext_support_locus(m: &PresentedModule, n: usize) -> Result<ClosedLocus> {
    let omega = syzygy(n, m)?;
    let ann = ext_annihilator(n, m, &omega)?;
    ClosedLocus::new(m.ring(), ann.gens().to_vec())
}

/// `Spec R ∖ perf M`, computed as `V(ann Ext^{d+1}(M, Ω^{d+1} M))`.
pub fn nonperf_locus(m: &PresentedModule) -> Result<ClosedLocus> {
    let d = m.ring().dim().max(0) as usize;
    ext_support_locus(m, d + 1)
}

/// Inputs accepted by [`perf_locus_complex`].
#[derive(Clone, Debug)]
pub enum ComplexInput {
    Free(BoundedFreeComplex),
    /// A module in degree 0 (its resolution stands in for it).
    Module(PresentedModule),
}

/// `perf X` via the truncation at `s = sup{i | H_i(X) ≠ 0}`.
pub fn perf_locus_complex(x: &ComplexInput) -> Result<OpenLocus> {
    match x {
        ComplexInput::Module(m) => Ok(nonperf_locus(m)?.complement()),
        ComplexInput::Free(x) => {
            let Some(s) = x.homology_sup()? else {
                return Ok(ClosedLocus::empty(x.ring()).complement());
            };
            let t = x.truncation_split(s)?;
            Ok(nonperf_locus(&t.module)?.complement())
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct J0Report {
    pub holds: bool,
    pub witness: Option<String>,
    #[serde(skip)]
    pub witness_poly: Option<Poly>,
}

/// J-0: `Reg R` contains a nonempty open set.
///
/// For an attested domain this holds iff the singular ideal is nonzero in
/// `R`; the witness is the basis element of the singular ideal outside `I`
/// of least degree (ties: smallest in the monomial order).
pub fn is_j0(ring: &Arc<QuotientRing>, domain_attested: bool) -> Result<J0Report> {
    let sing = if domain_attested { jacobian_locus(ring)? } else { singular_locus(ring)? };
    if domain_attested {
        let mut best: Option<Poly> = None;
        for g in sing.ideal().groebner_basis()? {
            if ring.is_zero(g)? {
                continue;
            }
            let better = match &best {
                None => true,
                Some(b) => {
                    g.degree() < b.degree()
                        || (g.degree() == b.degree()
                            && ring.ambient().order().cmp(
                                g.leading_monomial().expect("nonzero"),
                                b.leading_monomial().expect("nonzero"),
                            ) == std::cmp::Ordering::Less)
                }
            };
            if better {
                best = Some(g.clone());
            }
        }
        return Ok(J0Report {
            holds: best.is_some(),
            witness: best.as_ref().map(|p| p.to_string()),
            witness_poly: best,
        });
    }
    Ok(J0Report {
        holds: !sing.is_everything()?,
        witness: None,
        witness_poly: None,
    })
}

/// J-1: `Reg R` is open; always true here, with the locus.
pub fn is_j1(ring: &Arc<QuotientRing>) -> Result<(bool, OpenLocus)> {
    Ok((true, regular_locus(ring)?))
}

#[derive(Clone, Debug, Serialize)]
pub struct PrimeCheck {
    pub prime: Vec<String>,
    pub j0: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug)]
pub struct NagataReport {
    pub primes: Vec<PrimeCheck>,
    pub regular_locus: OpenLocus,
}

/// Checks that the supplied primes contain `I` and cover `Min R` (their
/// product lies in `√I`), that each `R/p` is J-0, and returns `Reg R`.
pub fn nagata_check(ring: &Arc<QuotientRing>, primes: &[Vec<Poly>]) -> Result<NagataReport> {
    let s = ring.ambient();
    let mut product = Ideal::unit(s);
    let mut checks = Vec::new();
    for p in primes {
        let names: Vec<String> = p.iter().map(|g| g.to_string()).collect();
        let label = format!("({})", names.join(", "));
        let pi = Ideal::new(s, p.clone())?;
        if !pi.contains_ideal(ring.ideal())? {
            return Err(Error::Verification(format!("prime {label} does not contain the defining ideal")));
        }
        let sub = ring.quotient(p).map_err(|e| Error::Verification(format!("prime {label}: {e}")))?;
        let rep = is_j0(&sub, true)?;
        if !rep.holds {
            return Err(Error::Verification(format!("R/p is not J-0 for p = {label}")));
        }
        checks.push(PrimeCheck {
            prime: names,
            j0: true,
            witness: rep.witness,
        });
        product = product.product(&pi)?.standardized()?;
    }
    if !ring.ideal().radical_contains_ideal(&product)? {
        return Err(Error::Verification("the supplied primes do not cover the minimal primes".into()));
    }
    Ok(NagataReport {
        primes: checks,
        regular_locus: regular_locus(ring)?,
    })
}
