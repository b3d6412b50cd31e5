//! Text formats for modules and complexes.
//!
//! ```text
//! module  := 'module' name 'over' ring 'gens' k 'relations' matrix
//! complex := 'complex' name 'over' ring 'lo' int 'ranks' '[' k (',' k)* ']'
//!            'maps' '[' matrix (',' matrix)* ']'
//! matrix  := '[' ( '[' poly (',' poly)* ']' )* ']'
//! ```
//!
//! A module's inner lists are relation columns of length `k`. A complex's
//! matrices are `d_{lo+1}, d_{lo+2}, …`, each given row by row. Several
//! definitions may follow each other; `#` starts a comment line.

use std::sync::Arc;

use super::{BoundedFreeComplex, PresentedModule, QuotientRing};
use crate::error::Result;
use crate::groebner::Vector;
use crate::polyring::parse::Parser;
use crate::polyring::{Limits, MonomialOrder};

#[derive(Clone, Debug)]
pub enum Definition {
    Module(String, PresentedModule),
    Complex(String, BoundedFreeComplex),
}

fn strip_comments(src: &str) -> String {
    src.lines()
        .map(|l| if l.trim_start().starts_with('#') { "" } else { l })
        .collect::<Vec<_>>()
        .join("\n")
}

fn ring(p: &mut Parser<'_>, limits: Limits) -> Result<Arc<QuotientRing>> {
    let start = p.position();
    let (s, gens) = p.ring(MonomialOrder::Grevlex, limits)?;
    QuotientRing::new(&s, gens).map_err(|e| crate::Error::parse(start.0, start.1, e.to_string()))
}

fn usize_value(p: &mut Parser<'_>) -> Result<usize> {
    let v = p.signed_integer()?;
    if v < 0 {
        return p.error("expected a nonnegative integer");
    }
    Ok(v as usize)
}

fn definition(p: &mut Parser<'_>, limits: Limits) -> Result<Definition> {
    if p.keyword("module") {
        let name = p.ident()?.to_string();
        if !p.keyword("over") {
            return p.error("expected `over`");
        }
        let r = ring(p, limits)?;
        if !p.keyword("gens") {
            return p.error("expected `gens`");
        }
        let k = usize_value(p)?;
        if !p.keyword("relations") {
            return p.error("expected `relations`");
        }
        let at = p.position();
        let cols = p.poly_matrix(r.ambient())?;
        if let Some(c) = cols.iter().find(|c| c.len() != k) {
            return Err(crate::Error::parse(
                at.0,
                at.1,
                format!("relation has {} entries, expected {k}", c.len()),
            ));
        }
        let rels = cols.iter().map(|c| Vector::from_polys(c)).collect();
        Ok(Definition::Module(name, PresentedModule::new(&r, k, rels)?))
    } else if p.keyword("complex") {
        let name = p.ident()?.to_string();
        if !p.keyword("over") {
            return p.error("expected `over`");
        }
        let r = ring(p, limits)?;
        if !p.keyword("lo") {
            return p.error("expected `lo`");
        }
        let lo = p.signed_integer()?;
        if !p.keyword("ranks") {
            return p.error("expected `ranks`");
        }
        p.expect('[')?;
        let mut ranks = vec![usize_value(p)?];
        while p.eat(',') {
            ranks.push(usize_value(p)?);
        }
        p.expect(']')?;
        if !p.keyword("maps") {
            return p.error("expected `maps`");
        }
        p.expect('[')?;
        let mut mats = Vec::new();
        if !p.eat(']') {
            loop {
                mats.push(p.poly_matrix(r.ambient())?);
                if p.eat(']') {
                    break;
                }
                p.expect(',')?;
            }
        }
        let at = p.position();
        let x = BoundedFreeComplex::from_matrices(&r, lo, ranks, &mats)
            .map_err(|e| crate::Error::parse(at.0, at.1, e.to_string()))?;
        Ok(Definition::Complex(name, x))
    } else {
        p.error("expected `module` or `complex`")
    }
}

/// Parses every definition in `src`.
pub fn parse_definitions(src: &str, limits: Limits) -> Result<Vec<Definition>> {
    let clean = strip_comments(src);
    let mut p = Parser::new(&clean);
    let mut out = Vec::new();
    while !p.at_end() {
        out.push(definition(&mut p, limits)?);
    }
    Ok(out)
}

/// Parses a single module definition.
pub fn parse_module(src: &str) -> Result<(String, PresentedModule)> {
    match parse_definitions(src, Limits::default())?.as_slice() {
        [Definition::Module(n, m)] => Ok((n.clone(), m.clone())),
        _ => Err(crate::Error::parse(1, 1, "expected exactly one module definition")),
    }
}

pub fn parse_complex(src: &str) -> Result<(String, BoundedFreeComplex)> {
    match parse_definitions(src, Limits::default())?.as_slice() {
        [Definition::Complex(n, x)] => Ok((n.clone(), x.clone())),
        _ => Err(crate::Error::parse(1, 1, "expected exactly one complex definition")),
    }
}

/// Inverse of [`parse_module`].
pub fn format_module(name: &str, m: &PresentedModule) -> String {
    let cols: Vec<String> = m
        .relations()
        .iter()
        .map(|r| {
            let entries: Vec<String> = r.to_polys(m.ambient(), m.ngens()).iter().map(|p| p.to_string()).collect();
            format!("[{}]", entries.join(", "))
        })
        .collect();
    format!("module {name} over {} gens {} relations [{}]", m.ring(), m.ngens(), cols.join(", "))
}
