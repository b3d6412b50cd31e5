//! Bounded search for a module inside the thick closure of another, over a
//! finite-dimensional algebra, on explicit matrix representations.

use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::linalg::{random_combination, Mat};
use crate::error::{Error, Result};
use crate::groebner::{module_groebner_basis, module_normal_form, Vector};
use crate::homalg::{PresentedModule, QuotientRing};
use crate::polyring::{Coeff, FieldSpec, Monomial, Poly};

/// Search limits. `max_dim` bounds every object ever built.
#[derive(Clone, Copy, Debug)]
pub struct ProbeConfig {
    pub max_dim: usize,
    pub max_rounds: usize,
    pub max_objects: usize,
    /// Random draws per Hom space.
    pub draws: usize,
    pub seed: u64,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig {
            max_dim: 12,
            max_rounds: 4,
            max_objects: 24,
            draws: 4,
            seed: 0x5eed,
        }
    }
}

/// A module as a vector space with one commuting matrix per variable.
#[derive(Clone, Debug)]
pub struct Rep {
    pub dim: usize,
    pub acts: Vec<Mat>,
}

struct Ctx<'a> {
    k: FieldSpec,
    ring: &'a QuotientRing,
    rng: ChaCha8Rng,
    cfg: ProbeConfig,
}

/// Basis of standard monomials of the relation module and the action of
/// each variable on it.
pub fn representation(m: &PresentedModule, max_dim: usize) -> Result<Rep> {
    let s = m.ambient();
    let k = *s.field();
    let nv = s.nvars();
    let gb = module_groebner_basis(s, &m.all_relations())?;
    let is_standard = |comp: usize, mono: &Monomial| {
        !gb.iter()
            .filter_map(|v| v.lead())
            .any(|t| t.comp as usize == comp && t.mono.divides(mono))
    };
    let mut basis: Vec<(usize, Monomial)> = Vec::new();
    for comp in 0..m.ngens() {
        let mut frontier = vec![Monomial::one(nv)];
        while let Some(mono) = frontier.pop() {
            if basis.iter().any(|(c, b)| *c == comp && *b == mono) || !is_standard(comp, &mono) {
                continue;
            }
            basis.push((comp, mono.clone()));
            if basis.len() > max_dim {
                return Err(Error::Cutoff(format!("module dimension exceeds the bound {max_dim}")));
            }
            for v in 0..nv {
                frontier.push(mono.mul(&Monomial::var(nv, v, 1)));
            }
        }
    }
    let index: HashMap<(usize, Monomial), usize> = basis.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
    let dim = basis.len();
    let mut acts = Vec::with_capacity(nv);
    for v in 0..nv {
        let mut a = Mat::zeros(&k, dim, dim);
        for (j, (comp, mono)) in basis.iter().enumerate() {
            let x = Poly::monomial(s, mono.mul(&Monomial::var(nv, v, 1)), k.one());
            let nf = module_normal_form(s, &Vector::from_poly(&x, *comp), &gb);
            for t in nf.terms() {
                let i = index
                    .get(&(t.comp as usize, t.mono.clone()))
                    .ok_or_else(|| Error::Verification("normal form left the standard basis".into()))?;
                a.set(*i, j, t.coeff.clone());
            }
        }
        acts.push(a);
    }
    Ok(Rep { dim, acts })
}

fn eval_poly(k: &FieldSpec, p: &Poly, acts: &[Mat], dim: usize) -> Mat {
    let mut out = Mat::zeros(k, dim, dim);
    for (mono, c) in p.terms() {
        let mut t = Mat::identity(k, dim);
        for (v, &e) in mono.0.iter().enumerate() {
            if e > 0 {
                t = t.mul(k, &acts[v].pow(k, e));
            }
        }
        out = out.add(k, &t.scale(k, c));
    }
    out
}

impl Ctx<'_> {
    /// Basis of `Hom_Λ(A, B)` as `dim B × dim A` matrices.
    fn hom_basis(&self, a: &Rep, b: &Rep) -> Vec<Mat> {
        let k = &self.k;
        let (da, db) = (a.dim, b.dim);
        if da == 0 || db == 0 {
            return Vec::new();
        }
        let unknowns = da * db;
        let nv = a.acts.len();
        let mut eqs = Mat::zeros(k, nv * unknowns, unknowns);
        for v in 0..nv {
            // (T A_v - B_v T)[i][j]; T[i][l] is unknown i * da + l.
            for i in 0..db {
                for j in 0..da {
                    let row = v * unknowns + i * da + j;
                    for l in 0..da {
                        let c = a.acts[v].get(l, j);
                        if !c.is_zero() {
                            let u = i * da + l;
                            let val = k.add(eqs.get(row, u), c);
                            eqs.set(row, u, val);
                        }
                    }
                    for l in 0..db {
                        let c = b.acts[v].get(i, l);
                        if !c.is_zero() {
                            let u = l * da + j;
                            let val = k.sub(eqs.get(row, u), c);
                            eqs.set(row, u, val);
                        }
                    }
                }
            }
        }
        eqs.nullspace(k)
            .into_iter()
            .map(|x| {
                let mut t = Mat::zeros(k, db, da);
                for i in 0..db {
                    for l in 0..da {
                        t.set(i, l, x[i * da + l].clone());
                    }
                }
                t
            })
            .collect()
    }

    fn random_maps(&mut self, a: &Rep, b: &Rep) -> Vec<Mat> {
        let basis = self.hom_basis(a, b);
        if basis.is_empty() {
            return Vec::new();
        }
        let mut out = basis.clone();
        out.truncate(self.cfg.draws);
        for _ in 0..self.cfg.draws {
            out.push(random_combination(&self.k, &basis, b.dim, a.dim, &mut self.rng));
        }
        out
    }

    /// `m` is a direct summand of `x`: some `r ∘ s` is invertible.
    fn is_summand(&mut self, m: &Rep, x: &Rep) -> bool {
        if m.dim == 0 {
            return true;
        }
        if m.dim > x.dim {
            return false;
        }
        let to = self.hom_basis(m, x);
        let back = self.hom_basis(x, m);
        if to.is_empty() || back.is_empty() {
            return false;
        }
        for _ in 0..2 * self.cfg.draws {
            let s = random_combination(&self.k, &to, x.dim, m.dim, &mut self.rng);
            let r = random_combination(&self.k, &back, m.dim, x.dim, &mut self.rng);
            if r.mul(&self.k, &s).is_invertible(&self.k) {
                return true;
            }
        }
        false
    }

    fn isomorphic(&mut self, a: &Rep, b: &Rep) -> bool {
        a.dim == b.dim && self.is_summand(a, b)
    }

    /// The action restricted to an invariant subspace with the given basis.
    fn subrep(&self, x: &Rep, basis: &[Vec<Coeff>]) -> Rep {
        let k = &self.k;
        let b = Mat::from_columns(k, x.dim, basis);
        let acts = x
            .acts
            .iter()
            .map(|a| {
                let img = a.mul(k, &b);
                let cols: Vec<Vec<Coeff>> = (0..basis.len())
                    .map(|j| b.solve(k, &img.column(j)).expect("invariant subspace"))
                    .collect();
                Mat::from_columns(k, basis.len(), &cols)
            })
            .collect();
        Rep { dim: basis.len(), acts }
    }

    /// The action on `x / span(basis)` for an invariant subspace.
    fn quotient(&self, x: &Rep, basis: &[Vec<Coeff>]) -> Rep {
        let k = &self.k;
        let mut cols: Vec<Vec<Coeff>> = basis.to_vec();
        for i in 0..x.dim {
            let mut e = vec![k.zero(); x.dim];
            e[i] = k.one();
            let trial = Mat::from_columns(k, x.dim, &[cols.clone(), vec![e.clone()]].concat());
            if trial.rank(k) > cols.len() {
                cols.push(e);
            }
        }
        let p = Mat::from_columns(k, x.dim, &cols);
        let pinv = p.inverse(k).expect("completed basis");
        let s = basis.len();
        let acts = x
            .acts
            .iter()
            .map(|a| pinv.mul(k, &a.mul(k, &p)).block(s, x.dim, s, x.dim))
            .collect();
        Rep { dim: x.dim - s, acts }
    }

    fn direct_sum(&self, a: &Rep, b: &Rep) -> Rep {
        let k = &self.k;
        let d = a.dim + b.dim;
        let acts = a
            .acts
            .iter()
            .zip(&b.acts)
            .map(|(x, y)| {
                let mut m = Mat::zeros(k, d, d);
                for i in 0..a.dim {
                    for j in 0..a.dim {
                        m.set(i, j, x.get(i, j).clone());
                    }
                }
                for i in 0..b.dim {
                    for j in 0..b.dim {
                        m.set(a.dim + i, a.dim + j, y.get(i, j).clone());
                    }
                }
                m
            })
            .collect();
        Rep { dim: d, acts }
    }

    fn block_acts(&self, a: &Rep, c: &Rep, d: &[Mat]) -> Vec<Mat> {
        let k = &self.k;
        let n = a.dim + c.dim;
        (0..a.acts.len())
            .map(|v| {
                let mut m = Mat::zeros(k, n, n);
                for i in 0..a.dim {
                    for j in 0..a.dim {
                        m.set(i, j, a.acts[v].get(i, j).clone());
                    }
                    for j in 0..c.dim {
                        m.set(i, a.dim + j, d[v].get(i, j).clone());
                    }
                }
                for i in 0..c.dim {
                    for j in 0..c.dim {
                        m.set(a.dim + i, a.dim + j, c.acts[v].get(i, j).clone());
                    }
                }
                m
            })
            .collect()
    }

    /// Off-diagonal blocks `D` for which `[[A, D], [0, C]]` is a module.
    fn cocycles(&self, a: &Rep, c: &Rep) -> Vec<Vec<Mat>> {
        let k = &self.k;
        let nv = a.acts.len();
        let (da, dc) = (a.dim, c.dim);
        let unknowns = nv * da * dc;
        let n = da + dc;
        let unit = |u: usize| -> Vec<Mat> {
            let mut d = vec![Mat::zeros(k, da, dc); nv];
            let (v, rest) = (u / (da * dc), u % (da * dc));
            d[v].set(rest / dc, rest % dc, k.one());
            d
        };
        // Each condition is linear in D with zero constant part.
        let mut conds: Vec<Vec<Coeff>> = Vec::with_capacity(unknowns);
        for u in 0..unknowns {
            let x = self.block_acts(a, c, &unit(u));
            let mut vals = Vec::new();
            for p in 0..nv {
                for q in p + 1..nv {
                    let comm = x[p].mul(k, &x[q]).sub(k, &x[q].mul(k, &x[p]));
                    let blk = comm.block(0, da, da, n);
                    vals.extend((0..da).flat_map(|i| (0..dc).map(move |j| (i, j))).map(|(i, j)| blk.get(i, j).clone()));
                }
            }
            for g in self.ring.ideal_gens() {
                let blk = eval_poly(k, g, &x, n).block(0, da, da, n);
                vals.extend((0..da).flat_map(|i| (0..dc).map(move |j| (i, j))).map(|(i, j)| blk.get(i, j).clone()));
            }
            conds.push(vals);
        }
        let rows = conds.first().map_or(0, |c| c.len());
        let sys = Mat::from_columns(k, rows, &conds);
        sys.nullspace(k)
            .into_iter()
            .map(|sol| {
                let mut d = vec![Mat::zeros(k, da, dc); nv];
                for (u, val) in sol.iter().enumerate() {
                    if !val.is_zero() {
                        let (v, rest) = (u / (da * dc), u % (da * dc));
                        d[v].set(rest / dc, rest % dc, val.clone());
                    }
                }
                d
            })
            .collect()
    }

    fn extensions(&mut self, a: &Rep, c: &Rep) -> Vec<Rep> {
        let basis = self.cocycles(a, c);
        if basis.is_empty() {
            return Vec::new();
        }
        let k = self.k;
        let mut out = Vec::new();
        for _ in 0..self.cfg.draws.min(2) {
            let coeffs: Vec<Coeff> = basis.iter().map(|_| super::linalg::random_coeff(&k, &mut self.rng)).collect();
            let nv = a.acts.len();
            let mut d = vec![Mat::zeros(&k, a.dim, c.dim); nv];
            for (b, cf) in basis.iter().zip(&coeffs) {
                for v in 0..nv {
                    d[v] = d[v].add(&k, &b[v].scale(&k, cf));
                }
            }
            out.push(Rep {
                dim: a.dim + c.dim,
                acts: self.block_acts(a, c, &d),
            });
        }
        out
    }

    /// Fitting decomposition along a random endomorphism.
    fn split(&mut self, x: &Rep) -> Vec<Rep> {
        let k = self.k;
        let ends = self.random_maps(x, x);
        for phi in ends {
            let p = phi.pow(&k, x.dim as u32);
            let r = p.rank(&k);
            if r == 0 || r == x.dim {
                continue;
            }
            let ker = p.nullspace(&k);
            let im = p.column_space(&k);
            return vec![self.subrep(x, &ker), self.subrep(x, &im)];
        }
        vec![x.clone()]
    }
}

/// Whether `M` lies in the thick closure of `G` found by a bounded search:
/// extensions, cokernels of injections, kernels of surjections, direct sums
/// and Fitting summands, over objects of dimension at most `max_dim`.
///
/// `false` means no derivation was found within the bounds.
pub fn artinian_thick_probe(g: &PresentedModule, m: &PresentedModule, cfg: ProbeConfig) -> Result<bool> {
    let ring = g.ring();
    if !QuotientRing::same(ring, m.ring()) {
        return Err(Error::RingMismatch("G and M live over different rings".into()));
    }
    if ring.dim() > 0 {
        return Err(Error::Precondition("the probe needs a zero-dimensional ring".into()));
    }
    let gr = representation(g, cfg.max_dim)?;
    let mr = representation(m, cfg.max_dim)?;
    let mut ctx = Ctx {
        k: *ring.ambient().field(),
        ring,
        rng: ChaCha8Rng::seed_from_u64(cfg.seed),
        cfg,
    };
    if mr.dim == 0 {
        return Ok(true);
    }
    let mut objects: Vec<Rep> = Vec::new();
    let mut pending = vec![gr];
    for round in 0..=cfg.max_rounds {
        let mut fresh = Vec::new();
        while let Some(x) = pending.pop() {
            for piece in ctx.split(&x) {
                if piece.dim == 0 || piece.dim > cfg.max_dim {
                    continue;
                }
                if ctx.is_summand(&mr, &piece) {
                    return Ok(true);
                }
                let mut seen = false;
                for o in objects.iter().chain(&fresh) {
                    if ctx.isomorphic(o, &piece) {
                        seen = true;
                        break;
                    }
                }
                if !seen && objects.len() + fresh.len() < cfg.max_objects {
                    fresh.push(piece);
                }
            }
        }
        if fresh.is_empty() || round == cfg.max_rounds {
            break;
        }
        let old = objects.len();
        objects.extend(fresh);
        for i in 0..objects.len() {
            for j in 0..objects.len() {
                if i < old && j < old {
                    continue;
                }
                let (a, b) = (objects[i].clone(), objects[j].clone());
                if a.dim + b.dim <= cfg.max_dim {
                    pending.push(ctx.direct_sum(&a, &b));
                    pending.extend(ctx.extensions(&a, &b));
                }
                for t in ctx.random_maps(&a, &b) {
                    let r = t.rank(&ctx.k);
                    if r == a.dim && b.dim > a.dim {
                        pending.push(ctx.quotient(&b, &t.column_space(&ctx.k)));
                    } else if r == b.dim && a.dim > b.dim {
                        pending.push(ctx.subrep(&a, &t.nullspace(&ctx.k)));
                    }
                }
            }
        }
    }
    Ok(false)
}
