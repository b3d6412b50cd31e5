//! Sparse vectors in a free module `S^r`, ordered position-over-term.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::polyring::{Coeff, Monomial, Poly, PolyRing};

/// One term `c · x^m · e_comp`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VTerm {
    pub comp: u32,
    pub mono: Monomial,
    pub coeff: Coeff,
}

/// Position-over-term: a smaller component index is larger; inside one
/// component the ring order decides.
pub fn pot_cmp(ring: &PolyRing, a: (u32, &Monomial), b: (u32, &Monomial)) -> Ordering {
    match a.0.cmp(&b.0) {
        Ordering::Less => Ordering::Greater,
        Ordering::Greater => Ordering::Less,
        Ordering::Equal => ring.order().cmp(a.1, b.1),
    }
}

/// A vector of polynomials stored as a sorted term list (largest first).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Vector {
    terms: Vec<VTerm>,
}

impl Vector {
    pub fn zero() -> Self {
        Vector { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[VTerm] {
        &self.terms
    }

    pub fn lead(&self) -> Option<&VTerm> {
        self.terms.first()
    }

    pub(crate) fn from_sorted(terms: Vec<VTerm>) -> Self {
        Vector { terms }
    }

    /// Builds a vector from unsorted terms, combining repeats.
    pub fn from_terms(ring: &PolyRing, mut terms: Vec<VTerm>) -> Self {
        terms.sort_by(|a, b| pot_cmp(ring, (b.comp, &b.mono), (a.comp, &a.mono)));
        let field = *ring.field();
        let mut out: Vec<VTerm> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(l) if l.comp == t.comp && l.mono == t.mono => l.coeff = field.add(&l.coeff, &t.coeff),
                _ => out.push(t),
            }
        }
        out.retain(|t| !t.coeff.is_zero());
        Vector { terms: out }
    }

    /// Single polynomial placed in component `comp`.
    pub fn from_poly(p: &Poly, comp: usize) -> Self {
        Vector {
            terms: p
                .terms()
                .iter()
                .map(|(m, c)| VTerm {
                    comp: comp as u32,
                    mono: m.clone(),
                    coeff: c.clone(),
                })
                .collect(),
        }
    }

    pub fn from_polys(entries: &[Poly]) -> Self {
        let mut terms = Vec::new();
        for (i, p) in entries.iter().enumerate() {
            terms.extend(Self::from_poly(p, i).terms);
        }
        Vector { terms }
    }

    pub fn unit(ring: &Arc<PolyRing>, comp: usize) -> Self {
        Vector {
            terms: vec![VTerm {
                comp: comp as u32,
                mono: Monomial::one(ring.nvars()),
                coeff: ring.field().one(),
            }],
        }
    }

    pub fn component(&self, ring: &Arc<PolyRing>, comp: usize) -> Poly {
        let c = comp as u32;
        let start = self.terms.partition_point(|t| t.comp < c);
        let terms: Vec<_> = self.terms[start..]
            .iter()
            .take_while(|t| t.comp == c)
            .map(|t| (t.mono.clone(), t.coeff.clone()))
            .collect();
        Poly::from_sorted(ring, terms)
    }

    /// Dense list of the first `rank` components.
    pub fn to_polys(&self, ring: &Arc<PolyRing>, rank: usize) -> Vec<Poly> {
        (0..rank).map(|i| self.component(ring, i)).collect()
    }

    /// Largest component index used, plus one.
    pub fn support_len(&self) -> usize {
        self.terms.iter().map(|t| t.comp as usize + 1).max().unwrap_or(0)
    }

    pub fn max_degree(&self) -> u64 {
        self.terms.iter().map(|t| t.mono.degree()).max().unwrap_or(0)
    }

    fn merge(ring: &PolyRing, a: &[VTerm], b: impl Iterator<Item = VTerm>) -> Vector {
        let field = *ring.field();
        let mut out = Vec::with_capacity(a.len() + 4);
        let mut i = 0;
        for t in b {
            while i < a.len() && pot_cmp(ring, (a[i].comp, &a[i].mono), (t.comp, &t.mono)) == Ordering::Greater {
                out.push(a[i].clone());
                i += 1;
            }
            if i < a.len() && a[i].comp == t.comp && a[i].mono == t.mono {
                let c = field.add(&a[i].coeff, &t.coeff);
                if !c.is_zero() {
                    out.push(VTerm {
                        comp: t.comp,
                        mono: t.mono,
                        coeff: c,
                    });
                }
                i += 1;
            } else {
                out.push(t);
            }
        }
        out.extend_from_slice(&a[i..]);
        Vector { terms: out }
    }

    pub(crate) fn add_scaled_slice(ring: &PolyRing, a: &[VTerm], c: &Coeff, m: &Monomial, other: &Vector) -> Vec<VTerm> {
        let field = *ring.field();
        Self::merge(
            ring,
            a,
            other.terms.iter().map(|t| VTerm {
                comp: t.comp,
                mono: t.mono.mul(m),
                coeff: field.mul(&t.coeff, c),
            }),
        )
        .terms
    }

    pub fn add(&self, ring: &PolyRing, other: &Vector) -> Vector {
        Self::merge(ring, &self.terms, other.terms.iter().cloned())
    }

    pub fn sub(&self, ring: &PolyRing, other: &Vector) -> Vector {
        let field = *ring.field();
        Self::merge(
            ring,
            &self.terms,
            other.terms.iter().map(|t| VTerm {
                comp: t.comp,
                mono: t.mono.clone(),
                coeff: field.neg(&t.coeff),
            }),
        )
    }

    /// `self + c · m · other`.
    pub fn add_scaled(&self, ring: &PolyRing, c: &Coeff, m: &Monomial, other: &Vector) -> Vector {
        if c.is_zero() {
            return self.clone();
        }
        let field = *ring.field();
        Self::merge(
            ring,
            &self.terms,
            other.terms.iter().map(|t| VTerm {
                comp: t.comp,
                mono: t.mono.mul(m),
                coeff: field.mul(&t.coeff, c),
            }),
        )
    }

    pub fn mul_term(&self, ring: &PolyRing, c: &Coeff, m: &Monomial) -> Vector {
        if c.is_zero() {
            return Vector::zero();
        }
        let field = *ring.field();
        Vector {
            terms: self
                .terms
                .iter()
                .map(|t| VTerm {
                    comp: t.comp,
                    mono: t.mono.mul(m),
                    coeff: field.mul(&t.coeff, c),
                })
                .collect(),
        }
    }

    pub fn scale(&self, ring: &PolyRing, c: &Coeff) -> Vector {
        self.mul_term(ring, c, &Monomial::one(ring.nvars()))
    }

    pub fn neg(&self, ring: &PolyRing) -> Vector {
        let field = *ring.field();
        Vector {
            terms: self
                .terms
                .iter()
                .map(|t| VTerm {
                    comp: t.comp,
                    mono: t.mono.clone(),
                    coeff: field.neg(&t.coeff),
                })
                .collect(),
        }
    }

    /// `p · self`.
    pub fn mul_poly(&self, ring: &PolyRing, p: &Poly) -> Vector {
        let mut acc = Vector::zero();
        for (m, c) in p.terms() {
            acc = acc.add_scaled(ring, c, m, self);
        }
        acc
    }

    pub fn monic(&self, ring: &PolyRing) -> Vector {
        match self.lead() {
            Some(t) if !t.coeff.is_one() => {
                let inv = ring.field().inv(&t.coeff);
                self.scale(ring, &inv)
            }
            _ => self.clone(),
        }
    }

    /// Renumbers components by adding `offset`.
    pub fn shift(&self, offset: usize) -> Vector {
        Vector {
            terms: self
                .terms
                .iter()
                .map(|t| VTerm {
                    comp: t.comp + offset as u32,
                    ..t.clone()
                })
                .collect(),
        }
    }

    /// Keeps components in `[lo, hi)` and renumbers them from zero.
    pub fn slice(&self, lo: usize, hi: usize) -> Vector {
        Vector {
            terms: self
                .terms
                .iter()
                .filter(|t| (t.comp as usize) >= lo && (t.comp as usize) < hi)
                .map(|t| VTerm {
                    comp: t.comp - lo as u32,
                    ..t.clone()
                })
                .collect(),
        }
    }

    /// Applies an arbitrary component renumbering; the result is re-sorted.
    pub fn remap(&self, ring: &PolyRing, map: impl Fn(usize) -> usize) -> Vector {
        let mut terms: Vec<VTerm> = self
            .terms
            .iter()
            .map(|t| VTerm {
                comp: map(t.comp as usize) as u32,
                ..t.clone()
            })
            .collect();
        terms.sort_by(|a, b| pot_cmp(ring, (b.comp, &b.mono), (a.comp, &a.mono)));
        Vector { terms }
    }

    pub fn display(&self, ring: &Arc<PolyRing>, rank: usize) -> String {
        let entries: Vec<String> = self.to_polys(ring, rank).iter().map(|p| p.to_string()).collect();
        format!("[{}]", entries.join(", "))
    }
}

impl fmt::Display for VTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*{:?}*e{}", self.coeff, self.mono.0.as_slice(), self.comp)
    }
}
