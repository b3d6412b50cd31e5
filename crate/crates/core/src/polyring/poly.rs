use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::{ensure_same, Coeff, Monomial, PolyRing};
use crate::error::Result;

/// A polynomial: terms sorted strictly decreasing in the ring order, no zero
/// coefficients. Equal polynomials have identical term lists.
#[derive(Clone)]
pub struct Poly {
    ring: Arc<PolyRing>,
    terms: Vec<(Monomial, Coeff)>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        PolyRing::same(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Poly {
    pub fn zero(ring: &Arc<PolyRing>) -> Poly {
        Poly {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: Coeff) -> Poly {
        let terms = if c.is_zero() {
            Vec::new()
        } else {
            vec![(Monomial::one(ring.nvars()), c)]
        };
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn one(ring: &Arc<PolyRing>) -> Poly {
        Self::constant(ring, ring.field().one())
    }

    pub fn from_i64(ring: &Arc<PolyRing>, v: i64) -> Poly {
        Self::constant(ring, ring.field().from_i64(v))
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Poly {
        Self::monomial(ring, Monomial::var(ring.nvars(), i, 1), ring.field().one())
    }

    pub fn var_named(ring: &Arc<PolyRing>, name: &str) -> Result<Poly> {
        Ok(Self::var(ring, ring.var_index(name)?))
    }

    pub fn monomial(ring: &Arc<PolyRing>, m: Monomial, c: Coeff) -> Poly {
        debug_assert_eq!(m.nvars(), ring.nvars());
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms(ring: &Arc<PolyRing>, terms: Vec<(Monomial, Coeff)>) -> Poly {
        let field = *ring.field();
        let mut acc: HashMap<Monomial, Coeff> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            assert_eq!(m.nvars(), ring.nvars(), "exponent vector length mismatch");
            match acc.get_mut(&m) {
                Some(e) => *e = field.add(e, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let order = ring.order();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    /// Trusted constructor: terms already sorted and nonzero.
    pub(crate) fn from_sorted(ring: &Arc<PolyRing>, terms: Vec<(Monomial, Coeff)>) -> Poly {
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.order().cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Coeff)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Nonzero constant.
    pub fn is_unit_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn is_one(&self) -> bool {
        self.is_unit_constant() && self.terms[0].1.is_one()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&Coeff> {
        self.terms.first().map(|t| &t.1)
    }

    /// Total degree; -1 for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.terms
            .iter()
            .map(|(m, _)| m.degree() as i64)
            .max()
            .unwrap_or(-1)
    }

    pub fn degree_in(&self, var: usize) -> i64 {
        self.terms
            .iter()
            .map(|(m, _)| m.0[var] as i64)
            .max()
            .unwrap_or(-1)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.iter().map(|(m, _)| m.degree());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// Variables that occur in some term.
    pub fn variables(&self) -> Vec<usize> {
        let mut used = vec![false; self.ring.nvars()];
        for (m, _) in &self.terms {
            for i in m.support() {
                used[i] = true;
            }
        }
        (0..used.len()).filter(|&i| used[i]).collect()
    }

    fn merge(&self, other: &Poly, negate_other: bool) -> Poly {
        let field = *self.ring.field();
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() && j < b.len() {
            match order.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate_other { field.neg(&b[j].1) } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other {
                        field.sub(&a[i].1, &b[j].1)
                    } else {
                        field.add(&a[i].1, &b[j].1)
                    };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if negate_other { field.neg(&t.1) } else { t.1.clone() };
            out.push((t.0.clone(), c));
        }
        Poly::from_sorted(&self.ring, out)
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        ensure_same(&self.ring, &other.ring)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        ensure_same(&self.ring, &other.ring)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        ensure_same(&self.ring, &other.ring)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.ring);
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].1, &other.terms[0].0);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].1, &self.terms[0].0);
        }
        let field = *self.ring.field();
        let mut acc: HashMap<Monomial, Coeff> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = field.mul(ca, cb);
                match acc.get_mut(&m) {
                    Some(e) => *e = field.add(e, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let order = self.ring.order();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Poly::from_sorted(&self.ring, terms)
    }

    /// `c · m · self`.
    pub fn mul_term(&self, c: &Coeff, m: &Monomial) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        let field = *self.ring.field();
        // multiplying by a monomial preserves the order
        let terms = self
            .terms
            .iter()
            .map(|(mm, cc)| (mm.mul(m), field.mul(cc, c)))
            .collect();
        Poly::from_sorted(&self.ring, terms)
    }

    pub fn scale(&self, c: &Coeff) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        let field = *self.ring.field();
        Poly::from_sorted(
            &self.ring,
            self.terms
                .iter()
                .map(|(m, cc)| (m.clone(), field.mul(cc, c)))
                .collect(),
        )
    }

    /// Divides through by the leading coefficient.
    pub fn monic(&self) -> Poly {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => {
                let inv = self.ring.field().inv(lc);
                self.scale(&inv)
            }
        }
    }

    pub fn pow(&self, mut k: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.ring);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// Formal partial derivative with respect to variable index `var`.
    pub fn derivative(&self, var: usize) -> Poly {
        let field = *self.ring.field();
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.0[var] > 0)
            .map(|(m, c)| {
                let e = m.0[var];
                let mut m2 = m.clone();
                m2.0[var] = e - 1;
                (m2, field.mul(c, &field.from_u64(e as u64)))
            })
            .collect();
        Poly::from_terms(&self.ring, terms)
    }

    pub fn partial_derivative(&self, var: &str) -> Result<Poly> {
        Ok(self.derivative(self.ring.var_index(var)?))
    }

    /// Moves this polynomial into `target`, sending variable `i` to
    /// variable `map[i]`.
    pub fn embed(&self, target: &Arc<PolyRing>, map: &[usize]) -> Poly {
        let n = target.nvars();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = Monomial::one(n);
                for (i, &x) in m.0.iter().enumerate() {
                    e.0[map[i]] += x;
                }
                (e, c.clone())
            })
            .collect();
        Poly::from_terms(target, terms)
    }

    /// Substitutes the constant `value` for variable `var`.
    pub fn specialize(&self, var: usize, value: &Coeff) -> Poly {
        let field = *self.ring.field();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut coeff = c.clone();
                for _ in 0..m.0[var] {
                    coeff = field.mul(&coeff, value);
                }
                let mut m2 = m.clone();
                m2.0[var] = 0;
                (m2, coeff)
            })
            .collect();
        Poly::from_terms(&self.ring, terms)
    }

    /// Gcd of all monomials occurring (the monomial content).
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        match it.next() {
            None => Monomial::one(self.ring.nvars()),
            Some((m, _)) => it.fold(m.clone(), |acc, (m2, _)| acc.gcd(m2)),
        }
    }

    /// `self / d` when `d` divides `self` exactly, by leading-term division.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        let (lm, lc) = (d.leading_monomial()?, d.leading_coeff()?);
        let field = *self.ring.field();
        let inv = field.inv(lc);
        let mut r = self.clone();
        let mut q = Vec::new();
        while let Some((m, c)) = r.terms.first() {
            if !lm.divides(m) {
                return None;
            }
            let qm = lm.quotient_of(m);
            let qc = field.mul(c, &inv);
            r = &r - &d.mul_term(&qc, &qm);
            q.push((qm, qc));
        }
        Some(Poly::from_terms(&self.ring, q))
    }

    /// Exact division by a monomial dividing every term.
    pub fn div_monomial(&self, m: &Monomial) -> Poly {
        Poly::from_sorted(
            &self.ring,
            self.terms
                .iter()
                .map(|(mm, c)| (m.quotient_of(mm), c.clone()))
                .collect(),
        )
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let vars = self.ring.vars();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors = Vec::new();
            let abs = c.abs_string();
            if m.is_one() || abs != "1" {
                factors.push(abs);
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(vars[i].clone()),
                    _ => factors.push(format!("{}^{}", vars[i], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("ring mismatch")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("ring mismatch")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("ring mismatch")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let field = *self.ring.field();
        Poly::from_sorted(
            &self.ring,
            self.terms
                .iter()
                .map(|(m, c)| (m.clone(), field.neg(c)))
                .collect(),
        )
    }
}

/// Jacobian matrix: entry `(i, j)` is `∂ gens[i] / ∂ x_j`.
pub fn jacobian_matrix(gens: &[Poly]) -> Result<Vec<Vec<Poly>>> {
    if let Some(first) = gens.first() {
        for g in gens {
            ensure_same(first.ring(), g.ring())?;
        }
    }
    Ok(gens
        .iter()
        .map(|g| (0..g.ring().nvars()).map(|j| g.derivative(j)).collect())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::super::{parse::parse_poly, FieldSpec, PolyRing};
    use super::*;

    fn q(vars: &[&str]) -> Arc<PolyRing> {
        PolyRing::grevlex(FieldSpec::Rationals, vars).unwrap()
    }

    fn p(r: &Arc<PolyRing>, s: &str) -> Poly {
        parse_poly(r, s).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let r = q(&["x", "y"]);
        assert_eq!(&p(&r, "x+y") + &p(&r, "x-y"), p(&r, "2*x"));
        assert_eq!(&p(&r, "x+1") * &p(&r, "x-1"), p(&r, "x^2-1"));
        let f2 = PolyRing::grevlex(FieldSpec::prime(2).unwrap(), &["x"]).unwrap();
        let a = p(&f2, "x+1");
        assert_eq!(&a * &a, p(&f2, "x^2+1"));
    }

    #[test]
    fn derivative_examples() {
        let r = q(&["x", "y"]);
        let f = p(&r, "y^2 - x^3");
        assert_eq!(f.partial_derivative("x").unwrap(), p(&r, "-3*x^2"));
        assert_eq!(f.partial_derivative("y").unwrap(), p(&r, "2*y"));
        assert!(f.partial_derivative("z").is_err());
        let f2 = PolyRing::grevlex(FieldSpec::prime(2).unwrap(), &["x"]).unwrap();
        assert!(p(&f2, "x^2").partial_derivative("x").unwrap().is_zero());
    }

    #[test]
    fn jacobian_examples() {
        let r = q(&["x", "y", "z"]);
        let j = jacobian_matrix(&[p(&r, "x^2-y"), p(&r, "x^3-z")]).unwrap();
        let expect = [["2*x", "-1", "0"], ["3*x^2", "0", "-1"]];
        for i in 0..2 {
            for k in 0..3 {
                assert_eq!(j[i][k], p(&r, expect[i][k]));
            }
        }
        let r2 = q(&["x", "y"]);
        let j = jacobian_matrix(&[p(&r2, "x*y")]).unwrap();
        assert_eq!(j[0], vec![p(&r2, "y"), p(&r2, "x")]);
    }

    #[test]
    fn ring_mismatch_detected() {
        let a = q(&["x", "y"]);
        let b = PolyRing::grevlex(FieldSpec::prime(5).unwrap(), &["x", "y"]).unwrap();
        assert!(p(&a, "x").checked_add(&p(&b, "x")).is_err());
    }

    #[test]
    fn display_round_trip() {
        let r = q(&["x", "y"]);
        for s in ["y^2 - x^3", "-3/2*x*y + 1", "x - 1", "0", "-1"] {
            let f = p(&r, s);
            assert_eq!(p(&r, &f.to_string()), f);
        }
    }
}
