//! Text grammar for polynomials and rings.
//!
//! ```text
//! poly   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (['*'] factor | '/' integer)*
//! factor := atom ['^' integer]
//! atom   := integer | variable | '(' poly ')'
//! ring   := field '[' var (',' var)* ']' ['/' '(' poly (',' poly)* ')']
//! field  := 'Q' | 'F' prime | 'Fp' prime | 'GF(' prime ')'
//! ```
//!
//! Whitespace is ignored everywhere. `*` may be omitted (`2x^2y`), and a run
//! of letters that is not itself a variable is split into single-letter
//! variables when possible (`xy` in `Q[x,y]`).

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{Coeff, FieldSpec, Monomial, MonomialOrder, Poly, PolyRing};
use crate::error::{Error, Result};

/// A cursor over input text that reports line/column positions.
pub struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    pub fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    pub fn position(&self) -> (usize, usize) {
        let before = &self.src[..self.pos];
        let line = before.matches('\n').count() + 1;
        let column = before.rfind('\n').map_or(before.len(), |i| before.len() - i - 1) + 1;
        (line, column)
    }

    pub fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        let (line, column) = self.position();
        Err(Error::parse(line, column, msg))
    }

    pub fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    pub fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    pub fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(found) => self.error(format!("expected `{c}`, found `{found}`")),
                None => self.error(format!("expected `{c}`, found end of input")),
            }
        }
    }

    pub fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    pub fn expect_end(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.error(format!("unexpected `{c}`")),
        }
    }

    pub fn ident(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest
            .char_indices()
            .take_while(|(i, c)| c.is_ascii_alphabetic() || *c == '_' || (*i > 0 && c.is_ascii_digit()))
            .map(|(i, c)| i + c.len_utf8())
            .last()
            .unwrap_or(0);
        if len == 0 {
            return self.error("expected identifier");
        }
        self.pos += len;
        Ok(&rest[..len])
    }

    /// Peeks whether the next identifier equals `word`, consuming it if so.
    pub fn keyword(&mut self, word: &str) -> bool {
        self.skip_ws();
        let save = self.pos;
        match self.ident() {
            Ok(w) if w == word => true,
            _ => {
                self.pos = save;
                false
            }
        }
    }

    pub fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest.chars().take_while(|c| c.is_ascii_digit()).count();
        if len == 0 {
            return self.error("expected integer");
        }
        self.pos += len;
        Ok(rest[..len].parse().expect("digits"))
    }

    pub fn signed_integer(&mut self) -> Result<i64> {
        let neg = self.eat('-');
        let v = self.integer()?;
        let v = v.to_i64().map_or_else(|| self.error("integer out of range"), Ok)?;
        Ok(if neg { -v } else { v })
    }

    fn small_integer(&mut self) -> Result<u32> {
        let v = self.integer()?;
        v.to_u32().map_or_else(|| self.error("exponent out of range"), Ok)
    }

    pub fn poly(&mut self, ring: &Arc<PolyRing>) -> Result<Poly> {
        let mut acc = Poly::zero(ring);
        let mut first = true;
        loop {
            let neg = if self.eat('-') {
                true
            } else if self.eat('+') || first {
                false
            } else {
                break;
            };
            let t = self.term(ring)?;
            acc = if neg { &acc - &t } else { &acc + &t };
            first = false;
        }
        Ok(acc)
    }

    fn starts_factor(&mut self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_' || c == '(')
    }

    fn term(&mut self, ring: &Arc<PolyRing>) -> Result<Poly> {
        let mut acc = self.factor(ring)?;
        loop {
            if self.eat('*') {
                let f = self.factor(ring)?;
                acc = &acc * &f;
            } else if self.eat('/') {
                let d = self.integer()?;
                let c = ring
                    .field()
                    .from_fraction(&BigInt::from(1), &d)
                    .or_else(|e| self.error(e.to_string()))?;
                acc = acc.scale(&c);
            } else if self.starts_factor() {
                let f = self.factor(ring)?;
                acc = &acc * &f;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn factor(&mut self, ring: &Arc<PolyRing>) -> Result<Poly> {
        let base = self.atom(ring)?;
        if self.eat('^') {
            let e = self.small_integer()?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self, ring: &Arc<PolyRing>) -> Result<Poly> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let p = self.poly(ring)?;
                self.expect(')')?;
                Ok(p)
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.integer()?;
                Ok(Poly::constant(ring, ring.field().from_bigint(&v)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let start = self.pos;
                let name = self.ident()?;
                if let Ok(i) = ring.var_index(name) {
                    return Ok(Poly::var(ring, i));
                }
                // split a run like `xy` into single-letter variables, with
                // trailing digits read as an exponent of the last letter
                let mut acc = Poly::one(ring);
                let chars: Vec<char> = name.chars().collect();
                let mut k = 0;
                while k < chars.len() {
                    let letter = chars[k].to_string();
                    let Ok(i) = ring.var_index(&letter) else {
                        self.pos = start;
                        return self.error(format!("unknown variable `{name}`"));
                    };
                    k += 1;
                    let digits: String = chars[k..].iter().take_while(|c| c.is_ascii_digit()).collect();
                    k += digits.len();
                    let e = if digits.is_empty() { 1 } else { digits.parse().unwrap_or(1) };
                    acc = &acc * &Poly::var(ring, i).pow(e);
                }
                Ok(acc)
            }
            Some(c) => self.error(format!("unexpected `{c}`")),
            None => self.error("unexpected end of input"),
        }
    }

    /// `(p1, p2, ...)`; the empty list `()` is allowed.
    pub fn poly_tuple(&mut self, ring: &Arc<PolyRing>) -> Result<Vec<Poly>> {
        self.expect('(')?;
        let mut out = Vec::new();
        if self.eat(')') {
            return Ok(out);
        }
        loop {
            out.push(self.poly(ring)?);
            if self.eat(')') {
                return Ok(out);
            }
            self.expect(',')?;
        }
    }

    /// `[p1, p2, ...]`.
    pub fn poly_list(&mut self, ring: &Arc<PolyRing>) -> Result<Vec<Poly>> {
        self.expect('[')?;
        let mut out = Vec::new();
        if self.eat(']') {
            return Ok(out);
        }
        loop {
            out.push(self.poly(ring)?);
            if self.eat(']') {
                return Ok(out);
            }
            self.expect(',')?;
        }
    }

    /// `[[...],[...]]`: a list of polynomial lists.
    pub fn poly_matrix(&mut self, ring: &Arc<PolyRing>) -> Result<Vec<Vec<Poly>>> {
        self.expect('[')?;
        let mut out = Vec::new();
        if self.eat(']') {
            return Ok(out);
        }
        loop {
            out.push(self.poly_list(ring)?);
            if self.eat(']') {
                return Ok(out);
            }
            self.expect(',')?;
        }
    }

    pub fn field(&mut self) -> Result<FieldSpec> {
        let name = self.ident()?;
        let prime_of = |p: &mut Self, v: BigInt| -> Result<FieldSpec> {
            let v = v.to_u64().map_or_else(|| p.error("prime out of range"), Ok)?;
            FieldSpec::prime(v).or_else(|e| p.error(e.to_string()))
        };
        match name {
            "Q" | "QQ" => Ok(FieldSpec::Rationals),
            "GF" => {
                self.expect('(')?;
                let v = self.integer()?;
                self.expect(')')?;
                prime_of(self, v)
            }
            "F" | "Fp" => {
                let v = self.integer()?;
                prime_of(self, v)
            }
            other => {
                let digits = other.trim_start_matches("Fp").trim_start_matches('F');
                if (other.starts_with('F')) && !digits.is_empty() && digits.chars().all(|c| c.is_ascii_digit()) {
                    prime_of(self, digits.parse().expect("digits"))
                } else {
                    self.error(format!("unknown coefficient field `{other}` (use Q or F<p>)"))
                }
            }
        }
    }

    /// Parses `K[vars]` followed by an optional `/(gens)`.
    pub fn ring(&mut self, order: MonomialOrder, limits: super::Limits) -> Result<(Arc<PolyRing>, Vec<Poly>)> {
        let field = self.field()?;
        self.expect('[')?;
        let mut vars = Vec::new();
        if !self.eat(']') {
            loop {
                vars.push(self.ident()?.to_string());
                if self.eat(']') {
                    break;
                }
                self.expect(',')?;
            }
        }
        let ring = PolyRing::with_limits(field, vars, order, limits).or_else(|e| self.error(e.to_string()))?;
        let gens = if self.eat('/') { self.poly_tuple(&ring)? } else { Vec::new() };
        Ok((ring, gens))
    }
}

pub fn parse_poly(ring: &Arc<PolyRing>, s: &str) -> Result<Poly> {
    let mut p = Parser::new(s);
    let f = p.poly(ring)?;
    p.expect_end()?;
    Ok(f)
}

/// Parses `K[vars]/(g1,...,gk)` with the given order.
pub fn parse_ring(s: &str, order: MonomialOrder) -> Result<(Arc<PolyRing>, Vec<Poly>)> {
    parse_ring_with_limits(s, order, super::Limits::default())
}

pub fn parse_ring_with_limits(
    s: &str,
    order: MonomialOrder,
    limits: super::Limits,
) -> Result<(Arc<PolyRing>, Vec<Poly>)> {
    let mut p = Parser::new(s);
    let r = p.ring(order, limits)?;
    p.expect_end()?;
    Ok(r)
}

/// Parses `(g1,...);(h1,...);...`, one generator list per prime.
pub fn parse_ideal_list(ring: &Arc<PolyRing>, s: &str) -> Result<Vec<Vec<Poly>>> {
    let mut p = Parser::new(s);
    let mut out = Vec::new();
    if p.at_end() {
        return Ok(out);
    }
    loop {
        out.push(p.poly_tuple(ring)?);
        if p.at_end() {
            return Ok(out);
        }
        p.expect(';')?;
    }
}

/// Parses `grevlex`, `lex`, or `elim:a,b,...`.
pub fn parse_order(s: &str) -> Result<MonomialOrder> {
    let s = s.trim();
    match s {
        "grevlex" => Ok(MonomialOrder::Grevlex),
        "lex" => Ok(MonomialOrder::Lex),
        _ => {
            if let Some(rest) = s.strip_prefix("elim:") {
                let blocks: std::result::Result<Vec<usize>, _> =
                    rest.split(',').map(|b| b.trim().parse::<usize>()).collect();
                blocks
                    .map(MonomialOrder::Elimination)
                    .map_err(|_| Error::parse(1, 6, format!("bad block list `{rest}`")))
            } else {
                Err(Error::parse(1, 1, format!("unknown monomial order `{s}`")))
            }
        }
    }
}

/// A monomial with coefficient, used by tests and generators.
pub fn term(ring: &Arc<PolyRing>, c: i64, exps: &[u32]) -> Poly {
    let c: Coeff = ring.field().from_i64(c);
    Poly::monomial(ring, Monomial::from_slice(exps), c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_variants_agree() {
        let (r, _) = parse_ring("Q[x,y]", MonomialOrder::Grevlex).unwrap();
        let a = parse_poly(&r, "y^2 - x^3").unwrap();
        for s in ["  y ^ 2-x^3", "-x*x*x+y*y", "y2 - x3", "-(x)^3 + y^2", "yy - xxx"] {
            assert_eq!(parse_poly(&r, s).unwrap(), a, "{s}");
        }
        let b = parse_poly(&r, "3/2 x y").unwrap();
        assert_eq!(b, parse_poly(&r, "3xy/2").unwrap());
    }

    #[test]
    fn ring_with_ideal() {
        let (r, g) = parse_ring("F101[x,y,z]/(x*y, z^2 - 1)", MonomialOrder::Grevlex).unwrap();
        assert_eq!(r.field(), &FieldSpec::Prime(101));
        assert_eq!(g.len(), 2);
        let (r2, _) = parse_ring("GF(7)[a]", MonomialOrder::Lex).unwrap();
        assert_eq!(r2.field(), &FieldSpec::Prime(7));
    }

    #[test]
    fn errors_have_positions() {
        let (r, _) = parse_ring("Q[x,y]", MonomialOrder::Grevlex).unwrap();
        match parse_poly(&r, "x + \n  z") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("{other:?}"),
        }
        assert!(parse_ring("Q[x,x]", MonomialOrder::Grevlex).is_err());
        assert!(parse_ring("F4[x]", MonomialOrder::Grevlex).is_err());
    }

    #[test]
    fn ideal_lists() {
        let (r, _) = parse_ring("Q[x,y]", MonomialOrder::Grevlex).unwrap();
        let l = parse_ideal_list(&r, "(x);(y); (x, y^2)").unwrap();
        assert_eq!(l.len(), 3);
        assert_eq!(l[2].len(), 2);
    }
}
