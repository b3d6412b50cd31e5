//! Splitting a polynomial into pieces whose irreducibility can be certified.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::polyring::{Coeff, FieldSpec, Monomial, Poly};

/// Monic gcd, via `gcd(a, b) · lcm(a, b) = a · b`.
pub fn poly_gcd(a: &Poly, b: &Poly) -> Result<Poly> {
    if a.is_zero() {
        return Ok(b.monic());
    }
    if b.is_zero() {
        return Ok(a.monic());
    }
    if a.is_constant() || b.is_constant() {
        return Ok(Poly::one(a.ring()));
    }
    let s = a.ring();
    let meet = Ideal::new(s, vec![a.clone()])?.intersection(&Ideal::new(s, vec![b.clone()])?)?;
    let gb = meet.groebner_basis()?;
    if gb.len() != 1 {
        return Err(Error::Invalid("intersection of principal ideals is not principal".into()));
    }
    let prod = a * b;
    prod.exact_div(&gb[0])
        .map(|g| g.monic())
        .ok_or_else(|| Error::Invalid("lcm does not divide the product".into()))
}

/// Variables dividing `f`, and `f` with that monomial removed.
pub fn split_monomial_content(f: &Poly) -> (Vec<usize>, Poly) {
    let m = f.monomial_content();
    let vars = m.support().collect();
    (vars, f.div_monomial(&m))
}

/// Squarefree pieces of `f` (characteristic 0): pairwise coprime, each a
/// product of distinct irreducible factors of one multiplicity.
pub fn squarefree_pieces(f: &Poly) -> Result<Vec<Poly>> {
    if f.is_constant() {
        return Ok(Vec::new());
    }
    let mut g = f.clone();
    for v in 0..f.ring().nvars() {
        let d = f.derivative(v);
        if !d.is_zero() {
            g = poly_gcd(&g, &d)?;
        }
    }
    let mut rad = f.exact_div(&g).expect("gcd divides").monic();
    let mut rest = g;
    let mut pieces = Vec::new();
    while !rad.is_constant() {
        let next = poly_gcd(&rad, &rest)?;
        let piece = rad.exact_div(&next).expect("gcd divides");
        if !piece.is_constant() {
            pieces.push(piece.monic());
        }
        rest = rest.exact_div(&next).expect("gcd divides");
        rad = next;
    }
    Ok(pieces)
}

/// Reason `f` is irreducible, when one of the available criteria applies.
/// `f` must not be divisible by a variable.
pub fn irreducibility_certificate(f: &Poly) -> Result<Option<String>> {
    if f.is_constant() {
        return Ok(None);
    }
    if f.degree() == 1 {
        return Ok(Some("linear".into()));
    }
    let s = f.ring();
    let vars = f.variables();
    for &v in &vars {
        if f.degree_in(v) == 1 {
            let (a, b) = split_linear(f, v);
            if !b.is_zero() && poly_gcd(&a, &b)?.is_constant() {
                return Ok(Some(format!("primitive of degree 1 in {}", s.vars()[v])));
            }
        }
    }
    match vars.len() {
        1 => {
            let v = vars[0];
            let d = f.degree_in(v);
            if d <= 3 && !has_root(f, v)? {
                return Ok(Some(format!("degree {d} in {} without roots", s.vars()[v])));
            }
            Ok(None)
        }
        2 => {
            let pts: Vec<(i64, i64)> = f
                .terms()
                .iter()
                .map(|(m, _)| (m.0[vars[0]] as i64, m.0[vars[1]] as i64))
                .collect();
            Ok(newton_polygon_indecomposable(&pts).then(|| "integrally indecomposable Newton polygon".into()))
        }
        _ => Ok(None),
    }
}

/// `f = a · x_v + b` with `a, b` free of `x_v`.
fn split_linear(f: &Poly, v: usize) -> (Poly, Poly) {
    let s = f.ring();
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (m, c) in f.terms() {
        if m.0[v] == 1 {
            let mut e = m.clone();
            e.0[v] = 0;
            a.push((e, c.clone()));
        } else {
            b.push((m.clone(), c.clone()));
        }
    }
    (Poly::from_terms(s, a), Poly::from_terms(s, b))
}

fn eval_univariate(f: &Poly, v: usize, x: &Coeff) -> Coeff {
    let field = *f.ring().field();
    let mut acc = field.zero();
    for (m, c) in f.terms() {
        let mut p = field.one();
        for _ in 0..m.0[v] {
            p = field.mul(&p, x);
        }
        acc = field.add(&acc, &field.mul(c, &p));
    }
    acc
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n > 1_000_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

/// Whether the univariate `f` (in `x_v`) has a root in the field; an error
/// when the search would be too large.
fn has_root(f: &Poly, v: usize) -> Result<bool> {
    let too_big = || Error::Unsupported("root search too large".into());
    match f.ring().field() {
        FieldSpec::Rationals => {
            let mut den = BigInt::one();
            for (_, c) in f.terms() {
                if let Coeff::Q(r) = c {
                    den = den.lcm(r.denom());
                }
            }
            let ints: Vec<(u32, BigInt)> = f
                .terms()
                .iter()
                .map(|(m, c)| match c {
                    Coeff::Q(r) => (m.0[v], (r * BigRational::from_integer(den.clone())).to_integer()),
                    Coeff::P(_) => unreachable!("rational field"),
                })
                .collect();
            let lead = ints.iter().max_by_key(|t| t.0).map(|t| t.1.clone()).unwrap_or_default();
            let constant = ints.iter().find(|t| t.0 == 0).map(|t| t.1.clone()).unwrap_or_default();
            if constant.is_zero() {
                return Ok(true);
            }
            let (Some(ps), Some(qs)) = (divisors(&constant), divisors(&lead)) else {
                return Err(too_big());
            };
            for p in &ps {
                for q in &qs {
                    for sign in [1, -1] {
                        let x = Coeff::Q(BigRational::new(p * sign, q.clone()));
                        if eval_univariate(f, v, &x).is_zero() {
                            return Ok(true);
                        }
                    }
                }
            }
            Ok(false)
        }
        FieldSpec::Prime(p) => {
            if *p > 1_000_000 {
                return Err(too_big());
            }
            let field = *f.ring().field();
            Ok((0..*p as u64).any(|x| eval_univariate(f, v, &field.from_u64(x)).is_zero()))
        }
    }
}

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Edge vectors of the convex hull, counterclockwise.
fn hull_edges(points: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 2 {
        return Vec::new();
    }
    let mut lower: Vec<(i64, i64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    let hull: Vec<(i64, i64)> = lower.into_iter().chain(upper).collect();
    (0..hull.len())
        .map(|i| {
            let (a, b) = (hull[i], hull[(i + 1) % hull.len()]);
            (b.0 - a.0, b.1 - a.1)
        })
        .collect()
}

/// No integral Minkowski decomposition of the Newton polygon into two
/// polygons that are not points.
pub fn newton_polygon_indecomposable(points: &[(i64, i64)]) -> bool {
    let edges = hull_edges(points);
    if edges.is_empty() {
        return false;
    }
    // Edge i is m_i copies of a primitive vector.
    let parts: Vec<(i64, (i64, i64))> = edges
        .iter()
        .map(|&(x, y)| {
            let m = x.gcd(&y);
            (m, (x / m, y / m))
        })
        .collect();
    let total: i64 = parts.iter().map(|p| p.0).sum();
    let space: f64 = parts.iter().map(|p| (p.0 + 1) as f64).product();
    if space > 2e6 {
        return false;
    }
    fn search(parts: &[(i64, (i64, i64))], i: usize, sum: (i64, i64), used: i64, total: i64) -> bool {
        if i == parts.len() {
            return sum == (0, 0) && used > 0 && used < total;
        }
        let (m, (dx, dy)) = parts[i];
        (0..=m).any(|k| search(parts, i + 1, (sum.0 + k * dx, sum.1 + k * dy), used + k, total))
    }
    !search(&parts, 0, (0, 0), 0, total)
}

/// Irreducible factors of `f` as certified primes `(g)`, with the reason
/// for each; an error names the first factor no criterion covers.
pub fn certified_prime_factors(f: &Poly) -> Result<Vec<(Poly, String)>> {
    let s = f.ring();
    let n = s.nvars();
    let (vars, rest) = split_monomial_content(f);
    let mut out: Vec<(Poly, String)> = vars
        .into_iter()
        .map(|v| (Poly::monomial(s, Monomial::var(n, v, 1), s.field().one()), "variable".to_string()))
        .collect();
    let pieces = match s.field() {
        FieldSpec::Rationals => squarefree_pieces(&rest)?,
        FieldSpec::Prime(_) if rest.is_constant() => Vec::new(),
        FieldSpec::Prime(_) => vec![rest.monic()],
    };
    for p in pieces {
        match irreducibility_certificate(&p)? {
            Some(why) => out.push((p, why)),
            None => {
                return Err(Error::Unsupported(format!(
                    "cannot certify that {p} is irreducible; supply primes"
                )))
            }
        }
    }
    Ok(out)
}
