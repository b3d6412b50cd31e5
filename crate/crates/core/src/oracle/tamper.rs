//! Single-entry mutations of certificate matrices and an evaluator of the
//! step equations that is separate from `certcheck`.

use std::sync::Arc;

use serde::Serialize;

use crate::certcheck::{check_certificate, CertStep, Certificate, StepKind};
use crate::error::Result;
use crate::groebner::{kernel, SubmoduleOfFree, Vector};
use crate::homalg::PresentedModule;
use crate::polyring::{Poly, PolyRing};

/// Replace entry `(row, col)` of matrix `matrix` of the step at `path`.
#[derive(Clone, Debug)]
pub struct Mutation {
    /// Step indices, outermost first, through nested certificates.
    pub path: Vec<usize>,
    pub matrix: usize,
    pub row: usize,
    pub col: usize,
    pub value: Poly,
}

fn matrices(kind: &StepKind) -> Vec<&Vec<Vector>> {
    match kind {
        StepKind::Iso { forward, backward, .. } => vec![forward, backward],
        StepKind::Ses { alpha, beta, .. } => vec![alpha, beta],
        StepKind::Summand { section, retraction, .. } => vec![section, retraction],
        StepKind::Dsum {
            injections, projections, ..
        } => injections.iter().chain(projections.iter()).collect(),
        StepKind::Axiom | StepKind::Restrict { .. } => Vec::new(),
    }
}

fn matrices_mut(kind: &mut StepKind) -> Vec<&mut Vec<Vector>> {
    match kind {
        StepKind::Iso { forward, backward, .. } => vec![forward, backward],
        StepKind::Ses { alpha, beta, .. } => vec![alpha, beta],
        StepKind::Summand { section, retraction, .. } => vec![section, retraction],
        StepKind::Dsum {
            injections, projections, ..
        } => injections.iter_mut().chain(projections.iter_mut()).collect(),
        StepKind::Axiom | StepKind::Restrict { .. } => Vec::new(),
    }
}

/// `(source, target)` object ids of each matrix of a step.
fn shapes(step: &CertStep) -> Vec<(usize, usize)> {
    let o = step.object;
    match &step.kind {
        StepKind::Iso { other, .. } => vec![(o, *other), (*other, o)],
        StepKind::Ses { x, y, z, .. } => vec![(*x, *y), (*y, *z)],
        StepKind::Summand { ambient, .. } => vec![(o, *ambient), (*ambient, o)],
        StepKind::Dsum { parts, .. } => parts.iter().map(|&p| (p, o)).chain(parts.iter().map(|&p| (o, p))).collect(),
        StepKind::Axiom | StepKind::Restrict { .. } => Vec::new(),
    }
}

fn collect(c: &Certificate, prefix: &[usize], per_matrix: usize, out: &mut Vec<Mutation>) {
    let s = c.ring.ambient();
    let nv = s.nvars();
    for (i, step) in c.steps.iter().enumerate() {
        let mut path = prefix.to_vec();
        path.push(i);
        if let StepKind::Restrict { certificate } = &step.kind {
            collect(certificate, &path, per_matrix, out);
            continue;
        }
        for (mi, (mat, (src, tgt))) in matrices(&step.kind).into_iter().zip(shapes(step)).enumerate() {
            let rows = c.object(tgt).ngens();
            let cols = c.object(src).ngens();
            let mut made = 0;
            'entries: for col in 0..cols {
                for row in 0..rows {
                    if made >= per_matrix {
                        break 'entries;
                    }
                    let old = mat.get(col).map_or_else(|| Poly::zero(s), |v| v.component(s, row));
                    let bump = if nv == 0 {
                        Poly::one(s)
                    } else {
                        Poly::var(s, (row + col) % nv)
                    };
                    for delta in [Poly::one(s), bump] {
                        out.push(Mutation {
                            path: path.clone(),
                            matrix: mi,
                            row,
                            col,
                            value: &old + &delta,
                        });
                    }
                    made += 1;
                }
            }
        }
    }
}

/// Two mutations (`+1` and `+x_v`) for up to `per_matrix` entries of every
/// matrix, nested certificates included.
pub fn single_entry_mutations(c: &Certificate, per_matrix: usize) -> Vec<Mutation> {
    let mut out = Vec::new();
    collect(c, &[], per_matrix, &mut out);
    out
}

fn step_at_mut<'a>(c: &'a mut Certificate, path: &[usize]) -> &'a mut CertStep {
    let step = &mut c.steps[path[0]];
    if path.len() == 1 {
        return step;
    }
    match &mut step.kind {
        StepKind::Restrict { certificate } => step_at_mut(certificate, &path[1..]),
        _ => panic!("path continues through a non-RESTRICT step"),
    }
}

fn cert_at<'a>(c: &'a Certificate, path: &[usize]) -> &'a Certificate {
    if path.len() == 1 {
        return c;
    }
    match &c.steps[path[0]].kind {
        StepKind::Restrict { certificate } => cert_at(certificate, &path[1..]),
        _ => panic!("path continues through a non-RESTRICT step"),
    }
}

pub fn apply_mutation(c: &Certificate, m: &Mutation) -> Certificate {
    let mut out = c.clone();
    let s = c.ring.ambient().clone();
    let step = step_at_mut(&mut out, &m.path);
    let mut mats = matrices_mut(&mut step.kind);
    let mat = &mut mats[m.matrix];
    while mat.len() <= m.col {
        mat.push(Vector::zero());
    }
    let old = mat[m.col].component(&s, m.row);
    let diff = &m.value - &old;
    mat[m.col] = mat[m.col].add(&s, &Vector::from_poly(&diff, m.row));
    out
}

struct Eval<'a> {
    s: &'a Arc<PolyRing>,
}

impl Eval<'_> {
    fn span(&self, m: &PresentedModule, extra: &[Vector]) -> Result<SubmoduleOfFree> {
        let mut gens = m.all_relations();
        gens.extend(extra.iter().cloned());
        SubmoduleOfFree::new(self.s, m.ngens(), gens)
    }

    fn apply(&self, cols: &[Vector], v: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (i, c) in cols.iter().enumerate() {
            let p = v.component(self.s, i);
            if !p.is_zero() {
                out = out.add(self.s, &c.mul_poly(self.s, &p));
            }
        }
        out
    }

    /// `g ∘ f` as columns.
    fn compose(&self, f: &[Vector], g: &[Vector]) -> Vec<Vector> {
        f.iter().map(|c| self.apply(g, c)).collect()
    }

    fn shape_ok(&self, src: &PresentedModule, tgt: &PresentedModule, cols: &[Vector]) -> bool {
        cols.len() == src.ngens() && cols.iter().all(|c| c.support_len() <= tgt.ngens())
    }

    fn well_defined(&self, src: &PresentedModule, tgt: &PresentedModule, cols: &[Vector]) -> Result<bool> {
        if !self.shape_ok(src, tgt, cols) {
            return Ok(false);
        }
        let span = self.span(tgt, &[])?;
        for r in src.all_relations() {
            if !span.contains(&self.apply(cols, &r))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn is_identity(&self, m: &PresentedModule, cols: &[Vector]) -> Result<bool> {
        let span = self.span(m, &[])?;
        for (i, c) in cols.iter().enumerate() {
            if !span.contains(&c.sub(self.s, &Vector::unit(self.s, i)))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn is_zero_map(&self, tgt: &PresentedModule, cols: &[Vector]) -> Result<bool> {
        let span = self.span(tgt, &[])?;
        for c in cols {
            if !span.contains(c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn ses(&self, x: &PresentedModule, y: &PresentedModule, z: &PresentedModule, a: &[Vector], b: &[Vector]) -> Result<bool> {
        if !self.well_defined(x, y, a)? || !self.well_defined(y, z, b)? {
            return Ok(false);
        }
        if !self.is_zero_map(z, &self.compose(a, b))? {
            return Ok(false);
        }
        let onto = self.span(z, b)?;
        for j in 0..z.ngens() {
            if !onto.contains(&Vector::unit(self.s, j))? {
                return Ok(false);
            }
        }
        let xspan = self.span(x, &[])?;
        for v in kernel(self.s, a, y.ngens(), &y.all_relations())? {
            if !xspan.contains(&v)? {
                return Ok(false);
            }
        }
        let image = self.span(y, a)?;
        for v in kernel(self.s, b, z.ngens(), &z.all_relations())? {
            if !image.contains(&v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn step(&self, c: &Certificate, step: &CertStep) -> Result<bool> {
        let obj = c.object(step.object);
        match &step.kind {
            StepKind::Axiom | StepKind::Restrict { .. } => Ok(true),
            StepKind::Iso { other, forward, backward } => {
                let o = c.object(*other);
                Ok(self.well_defined(obj, o, forward)?
                    && self.well_defined(o, obj, backward)?
                    && self.is_identity(obj, &self.compose(forward, backward))?
                    && self.is_identity(o, &self.compose(backward, forward))?)
            }
            StepKind::Ses { x, y, z, alpha, beta } => {
                self.ses(c.object(*x), c.object(*y), c.object(*z), alpha, beta)
            }
            StepKind::Summand {
                ambient,
                section,
                retraction,
            } => {
                let a = c.object(*ambient);
                Ok(self.well_defined(obj, a, section)?
                    && self.well_defined(a, obj, retraction)?
                    && self.is_identity(obj, &self.compose(section, retraction))?)
            }
            StepKind::Dsum {
                parts,
                injections,
                projections,
            } => {
                for (k, &p) in parts.iter().enumerate() {
                    let pm = c.object(p);
                    if !self.well_defined(pm, obj, &injections[k])? || !self.well_defined(obj, pm, &projections[k])? {
                        return Ok(false);
                    }
                }
                for (j, &pj) in parts.iter().enumerate() {
                    for k in 0..parts.len() {
                        let comp = self.compose(&injections[k], &projections[j]);
                        let ok = if j == k {
                            self.is_identity(c.object(pj), &comp)?
                        } else {
                            self.is_zero_map(c.object(pj), &comp)?
                        };
                        if !ok {
                            return Ok(false);
                        }
                    }
                }
                let mut total = vec![Vector::zero(); obj.ngens()];
                for k in 0..parts.len() {
                    for (t, col) in total.iter_mut().zip(self.compose(&projections[k], &injections[k])) {
                        *t = t.add(self.s, &col);
                    }
                }
                self.is_identity(obj, &total)
            }
        }
    }
}

/// Whether the equations of the step at `path` hold.
pub fn step_holds(c: &Certificate, path: &[usize]) -> Result<bool> {
    let owner = cert_at(c, path);
    let step = &owner.steps[*path.last().expect("nonempty path")];
    Eval { s: owner.ring.ambient() }.step(owner, step)
}

/// Outcome of running every mutation of one certificate.
#[derive(Clone, Debug, Default, Serialize)]
pub struct TamperReport {
    pub mutations: usize,
    /// Mutations that break an equation of their step.
    pub breaking: usize,
    /// Breaking mutations rejected at the right step.
    pub rejected: usize,
    /// Mutations on which the checker and the evaluator disagree.
    pub mismatches: Vec<String>,
}

/// Mutates entries of every matrix and compares the checker's verdict with
/// [`step_holds`].
pub fn tamper_suite(c: &Certificate, per_matrix: usize) -> Result<TamperReport> {
    let mut rep = TamperReport::default();
    for m in single_entry_mutations(c, per_matrix) {
        rep.mutations += 1;
        let bad = apply_mutation(c, &m);
        let v = check_certificate(&bad)?;
        if step_holds(&bad, &m.path)? {
            if !v.ok {
                rep.mismatches.push(format!("path {:?} matrix {}: equations hold but {v:?}", m.path, m.matrix));
            }
            continue;
        }
        rep.breaking += 1;
        if !v.ok && v.fail_step == Some(m.path[0]) && v.path == m.path {
            rep.rejected += 1;
        } else {
            rep.mismatches.push(format!(
                "path {:?} matrix {} entry ({}, {}) := {}: verdict {:?}",
                m.path, m.matrix, m.row, m.col, m.value, v
            ));
        }
    }
    Ok(rep)
}
