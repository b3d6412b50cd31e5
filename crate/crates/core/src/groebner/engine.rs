//! Buchberger's algorithm for submodules of `S^r`.
//!
//! Pairs are chosen by the normal strategy (smallest lcm degree, then the
//! module order, then indices) so the output never depends on timing.
//! Buchberger's chain criterion is applied always; the coprime criterion
//! only in rank one, where it is valid.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use super::vector::{pot_cmp, VTerm, Vector};
use crate::error::{Error, Result};
use crate::polyring::{Monomial, PolyRing};

/// Divisor lookup for a fixed list of monic basis vectors.
pub(crate) struct Reducer<'a> {
    ring: &'a PolyRing,
    basis: &'a [Vector],
    by_comp: HashMap<u32, Vec<usize>>,
}

impl<'a> Reducer<'a> {
    pub(crate) fn new(ring: &'a PolyRing, basis: &'a [Vector]) -> Self {
        let mut by_comp: HashMap<u32, Vec<usize>> = HashMap::new();
        for (i, b) in basis.iter().enumerate() {
            if let Some(l) = b.lead() {
                by_comp.entry(l.comp).or_default().push(i);
            }
        }
        Reducer { ring, basis, by_comp }
    }

    fn divisor(&self, t: &VTerm) -> Option<usize> {
        self.by_comp
            .get(&t.comp)?
            .iter()
            .copied()
            .find(|&i| self.basis[i].lead().expect("nonzero").mono.divides(&t.mono))
    }

    /// Full normal form.
    pub(crate) fn reduce(&self, v: &Vector) -> Vector {
        let field = *self.ring.field();
        let mut rest: Vec<VTerm> = v.terms().to_vec();
        let mut pos = 0;
        while pos < rest.len() {
            match self.divisor(&rest[pos]) {
                Some(i) => {
                    let t = &rest[pos];
                    let g = &self.basis[i];
                    let gl = g.lead().expect("nonzero");
                    let m = gl.mono.quotient_of(&t.mono);
                    let c = field.neg(&field.div(&t.coeff, &gl.coeff));
                    let tail = Vector::add_scaled_slice(self.ring, &rest[pos..], &c, &m, g);
                    rest.truncate(pos);
                    rest.extend(tail);
                }
                None => pos += 1,
            }
        }
        Vector::from_sorted(rest)
    }
}

fn s_vector(ring: &PolyRing, a: &Vector, b: &Vector) -> Vector {
    let field = *ring.field();
    let la = a.lead().expect("nonzero");
    let lb = b.lead().expect("nonzero");
    let l = la.mono.lcm(&lb.mono);
    let ma = la.mono.quotient_of(&l);
    let mb = lb.mono.quotient_of(&l);
    let ca = field.inv(&la.coeff);
    let cb = field.neg(&field.inv(&lb.coeff));
    a.mul_term(ring, &ca, &ma).add_scaled(ring, &cb, &mb, b)
}

#[derive(Clone, PartialEq, Eq)]
struct Pair {
    degree: u64,
    comp: u32,
    lcm: Monomial,
    i: usize,
    j: usize,
}

/// Sorts a pair queue so that the smallest pair is last (popped first).
fn pair_cmp(ring: &PolyRing, a: &Pair, b: &Pair) -> Ordering {
    a.degree
        .cmp(&b.degree)
        .then_with(|| pot_cmp(ring, (a.comp, &a.lcm), (b.comp, &b.lcm)))
        .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
}

/// Reduced Gröbner basis of the submodule generated by `gens`, sorted by
/// increasing leading term.
pub fn groebner_basis(ring: &Arc<PolyRing>, gens: &[Vector]) -> Result<Vec<Vector>> {
    let limits = ring.limits();
    let rank_one = gens.iter().all(|g| g.terms().iter().all(|t| t.comp == 0));

    // deterministic starting point: monic generators sorted by leading term
    let mut start: Vec<Vector> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.monic(ring)).collect();
    sort_by_lead(ring, &mut start);
    start.dedup();

    let mut basis: Vec<Vector> = Vec::new();
    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut queue: Vec<Pair> = Vec::new();
    let mut reduced_pairs = 0usize;

    let push_elem = |basis: &mut Vec<Vector>,
                         pending: &mut BTreeSet<(usize, usize)>,
                         queue: &mut Vec<Pair>,
                         v: Vector|
     -> Result<()> {
        let j = basis.len();
        let lj = v.lead().expect("nonzero").clone();
        for (i, b) in basis.iter().enumerate() {
            let li = b.lead().expect("nonzero");
            if li.comp != lj.comp {
                continue;
            }
            let lcm = li.mono.lcm(&lj.mono);
            let degree = lcm.degree();
            pending.insert((i, j));
            queue.push(Pair {
                degree,
                comp: lj.comp,
                lcm,
                i,
                j,
            });
        }
        basis.push(v);
        Ok(())
    };

    for g in start {
        let r = Reducer::new(ring, &basis).reduce(&g);
        if !r.is_zero() {
            push_elem(&mut basis, &mut pending, &mut queue, r.monic(ring))?;
        }
    }

    let mut sorted_len = 0;
    loop {
        if queue.is_empty() {
            break;
        }
        if queue.len() != sorted_len {
            queue.sort_by(|a, b| pair_cmp(ring, b, a));
        }
        let pair = queue.pop().expect("nonempty");
        sorted_len = queue.len();
        pending.remove(&(pair.i, pair.j));
        let (a, b) = (&basis[pair.i], &basis[pair.j]);
        let (la, lb) = (a.lead().expect("nonzero"), b.lead().expect("nonzero"));
        if rank_one && la.mono.coprime(&lb.mono) {
            continue;
        }
        // chain criterion
        let chain = basis.iter().enumerate().any(|(k, c)| {
            if k == pair.i || k == pair.j {
                return false;
            }
            let lc = c.lead().expect("nonzero");
            lc.comp == pair.comp
                && lc.mono.divides(&pair.lcm)
                && !pending.contains(&(pair.i.min(k), pair.i.max(k)))
                && !pending.contains(&(pair.j.min(k), pair.j.max(k)))
        });
        if chain {
            continue;
        }
        if pair.degree > limits.max_degree {
            return Err(Error::Cutoff(format!(
                "S-pair of degree {} exceeds max degree {}",
                pair.degree, limits.max_degree
            )));
        }
        reduced_pairs += 1;
        if reduced_pairs > limits.max_pairs {
            return Err(Error::Cutoff(format!(
                "more than {} S-pairs reduced",
                limits.max_pairs
            )));
        }
        let s = s_vector(ring, a, b);
        let r = Reducer::new(ring, &basis).reduce(&s);
        if !r.is_zero() {
            push_elem(&mut basis, &mut pending, &mut queue, r.monic(ring))?;
        }
    }

    Ok(interreduce(ring, basis))
}

pub(crate) fn sort_by_lead(ring: &PolyRing, v: &mut [Vector]) {
    v.sort_by(|a, b| {
        let (la, lb) = (a.lead().expect("nonzero"), b.lead().expect("nonzero"));
        pot_cmp(ring, (la.comp, &la.mono), (lb.comp, &lb.mono)).then_with(|| a.terms().len().cmp(&b.terms().len()))
    });
}

/// Minimal + tail-reduced basis, monic, sorted by increasing leading term.
fn interreduce(ring: &Arc<PolyRing>, basis: Vec<Vector>) -> Vec<Vector> {
    let mut minimal: Vec<Vector> = Vec::new();
    for (i, b) in basis.iter().enumerate() {
        let lb = b.lead().expect("nonzero");
        let redundant = basis.iter().enumerate().any(|(k, c)| {
            if k == i {
                return false;
            }
            let lc = c.lead().expect("nonzero");
            lc.comp == lb.comp
                && lc.mono.divides(&lb.mono)
                // equal leads: keep the earlier one
                && (lc.mono != lb.mono || k < i)
        });
        if !redundant {
            minimal.push(b.clone());
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Vector> = minimal
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, v)| v.clone())
            .collect();
        let head = Vector::from_sorted(minimal[i].terms()[..1].to_vec());
        let tail = Vector::from_sorted(minimal[i].terms()[1..].to_vec());
        let tail = Reducer::new(ring, &others).reduce(&tail);
        out.push(head.add(ring, &tail).monic(ring));
    }
    sort_by_lead(ring, &mut out);
    out
}

/// Normal form of `v` with respect to a Gröbner basis.
pub fn normal_form(ring: &Arc<PolyRing>, v: &Vector, basis: &[Vector]) -> Vector {
    Reducer::new(ring, basis).reduce(v)
}
