//! JSON form of certificates. Polynomials are strings in the ring's
//! variables; maps are matrices given row by row (rows index target
//! generators), relations are lists of columns.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{certificate_stats, CertStep, Certificate, GeneratorDecl, ObjId, StepKind, SCHEMA_VERSION};
use crate::error::{Error, Result};
use crate::groebner::Vector;
use crate::homalg::{PresentedModule, QuotientRing};
use crate::polyring::{parse::parse_poly, Limits, Poly, PolyRing};

type Matrix = Vec<Vec<String>>;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertJson {
    pub schema_version: u32,
    pub ring: String,
    pub objects: Vec<ObjectJson>,
    pub generators: GeneratorsJson,
    pub steps: Vec<StepJson>,
    pub root: String,
    #[serde(default)]
    pub metadata: MetadataJson,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ObjectJson {
    pub id: String,
    pub gens: usize,
    pub relations: Matrix,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeneratorsJson {
    pub ring: bool,
    pub summands: Vec<String>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct MetadataJson {
    pub depth: usize,
    pub steps: usize,
    pub triangle_count: usize,
    pub attestations: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum StepJson {
    #[serde(rename = "AXIOM")]
    Axiom { object: String },
    #[serde(rename = "ISO")]
    Iso {
        object: String,
        other: String,
        forward: Matrix,
        backward: Matrix,
    },
    #[serde(rename = "SES")]
    Ses {
        object: String,
        x: String,
        y: String,
        z: String,
        alpha: Matrix,
        beta: Matrix,
    },
    #[serde(rename = "SUMMAND")]
    Summand {
        object: String,
        ambient: String,
        section: Matrix,
        retraction: Matrix,
    },
    #[serde(rename = "DSUM")]
    Dsum {
        object: String,
        parts: Vec<String>,
        injections: Vec<Matrix>,
        projections: Vec<Matrix>,
    },
    #[serde(rename = "RESTRICT")]
    Restrict {
        object: String,
        certificate: Box<CertJson>,
    },
}

fn rows_of(s: &Arc<PolyRing>, cols: &[Vector], nrows: usize) -> Matrix {
    (0..nrows)
        .map(|r| cols.iter().map(|c| c.component(s, r).to_string()).collect())
        .collect()
}

fn columns_of(s: &Arc<PolyRing>, cols: &[Vector], len: usize) -> Matrix {
    cols.iter().map(|c| c.to_polys(s, len).iter().map(|p| p.to_string()).collect()).collect()
}

pub fn to_json(c: &Certificate) -> CertJson {
    let s = c.ring.ambient();
    let name = |i: ObjId| c.object_name(i).to_string();
    let mat = |cols: &[Vector], target: ObjId| rows_of(s, cols, c.object(target).ngens());
    let steps = c
        .steps
        .iter()
        .map(|st| {
            let object = name(st.object);
            match &st.kind {
                StepKind::Axiom => StepJson::Axiom { object },
                StepKind::Iso {
                    other,
                    forward,
                    backward,
                } => StepJson::Iso {
                    object,
                    other: name(*other),
                    forward: mat(forward, *other),
                    backward: mat(backward, st.object),
                },
                StepKind::Ses { x, y, z, alpha, beta } => StepJson::Ses {
                    object,
                    x: name(*x),
                    y: name(*y),
                    z: name(*z),
                    alpha: mat(alpha, *y),
                    beta: mat(beta, *z),
                },
                StepKind::Summand {
                    ambient,
                    section,
                    retraction,
                } => StepJson::Summand {
                    object,
                    ambient: name(*ambient),
                    section: mat(section, *ambient),
                    retraction: mat(retraction, st.object),
                },
                StepKind::Dsum {
                    parts,
                    injections,
                    projections,
                } => StepJson::Dsum {
                    object,
                    parts: parts.iter().map(|&p| name(p)).collect(),
                    injections: injections.iter().map(|m| mat(m, st.object)).collect(),
                    projections: projections.iter().zip(parts).map(|(m, &p)| mat(m, p)).collect(),
                },
                StepKind::Restrict { certificate } => StepJson::Restrict {
                    object,
                    certificate: Box::new(to_json(certificate)),
                },
            }
        })
        .collect();
    let stats = certificate_stats(c);
    CertJson {
        schema_version: SCHEMA_VERSION,
        ring: c.ring.to_string(),
        objects: c
            .objects
            .iter()
            .map(|(id, m)| ObjectJson {
                id: id.clone(),
                gens: m.ngens(),
                relations: columns_of(s, m.relations(), m.ngens()),
            })
            .collect(),
        generators: GeneratorsJson {
            ring: c.generators.ring,
            summands: c.generators.summands.iter().map(|&i| name(i)).collect(),
        },
        steps,
        root: name(c.root),
        metadata: MetadataJson {
            depth: stats.depth,
            steps: stats.steps,
            triangle_count: stats.triangle_count,
            attestations: stats.attestations,
        },
    }
}

pub fn to_json_string(c: &Certificate) -> String {
    serde_json::to_string_pretty(&to_json(c)).expect("certificate serializes")
}

fn poly(s: &Arc<PolyRing>, text: &str) -> Result<Poly> {
    parse_poly(s, text)
}

fn parse_matrix(s: &Arc<PolyRing>, rows: &Matrix, nrows: usize, ncols: usize, what: &str) -> Result<Vec<Vector>> {
    let bad = || Error::Invalid(format!("{what} must be a {nrows}x{ncols} matrix"));
    if nrows == 0 {
        if rows.iter().any(|r| !r.is_empty()) {
            return Err(bad());
        }
        return Ok(vec![Vector::zero(); ncols]);
    }
    if rows.len() != nrows || rows.iter().any(|r| r.len() != ncols) {
        return Err(bad());
    }
    let mut cols = Vec::with_capacity(ncols);
    for j in 0..ncols {
        let entries = rows.iter().map(|r| poly(s, &r[j])).collect::<Result<Vec<_>>>()?;
        cols.push(Vector::from_polys(&entries));
    }
    Ok(cols)
}

pub fn from_json(j: &CertJson, limits: Limits) -> Result<Certificate> {
    if j.schema_version != SCHEMA_VERSION {
        return Err(Error::Invalid(format!(
            "unsupported schema_version {} (expected {SCHEMA_VERSION})",
            j.schema_version
        )));
    }
    let ring = QuotientRing::parse_with_limits(&j.ring, limits)?;
    let s = ring.ambient().clone();
    let mut ids: HashMap<&str, ObjId> = HashMap::new();
    let mut objects = Vec::with_capacity(j.objects.len());
    for o in &j.objects {
        if ids.insert(o.id.as_str(), objects.len()).is_some() {
            return Err(Error::Invalid(format!("duplicate object id `{}`", o.id)));
        }
        let mut rels = Vec::with_capacity(o.relations.len());
        for col in &o.relations {
            if col.len() != o.gens {
                return Err(Error::Invalid(format!(
                    "relation of `{}` has {} entries, expected {}",
                    o.id,
                    col.len(),
                    o.gens
                )));
            }
            let entries = col.iter().map(|t| poly(&s, t)).collect::<Result<Vec<_>>>()?;
            rels.push(Vector::from_polys(&entries));
        }
        objects.push((o.id.clone(), PresentedModule::new(&ring, o.gens, rels)?));
    }
    let id = |name: &str| -> Result<ObjId> {
        ids.get(name)
            .copied()
            .ok_or_else(|| Error::Invalid(format!("unknown object `{name}`")))
    };
    let ngens = |i: ObjId| objects[i].1.ngens();
    let mut steps = Vec::with_capacity(j.steps.len());
    for st in &j.steps {
        let step = match st {
            StepJson::Axiom { object } => CertStep {
                object: id(object)?,
                kind: StepKind::Axiom,
            },
            StepJson::Iso {
                object,
                other,
                forward,
                backward,
            } => {
                let (a, b) = (id(object)?, id(other)?);
                CertStep {
                    object: a,
                    kind: StepKind::Iso {
                        other: b,
                        forward: parse_matrix(&s, forward, ngens(b), ngens(a), "forward")?,
                        backward: parse_matrix(&s, backward, ngens(a), ngens(b), "backward")?,
                    },
                }
            }
            StepJson::Ses {
                object,
                x,
                y,
                z,
                alpha,
                beta,
            } => {
                let (x, y, z) = (id(x)?, id(y)?, id(z)?);
                CertStep {
                    object: id(object)?,
                    kind: StepKind::Ses {
                        x,
                        y,
                        z,
                        alpha: parse_matrix(&s, alpha, ngens(y), ngens(x), "alpha")?,
                        beta: parse_matrix(&s, beta, ngens(z), ngens(y), "beta")?,
                    },
                }
            }
            StepJson::Summand {
                object,
                ambient,
                section,
                retraction,
            } => {
                let (a, b) = (id(object)?, id(ambient)?);
                CertStep {
                    object: a,
                    kind: StepKind::Summand {
                        ambient: b,
                        section: parse_matrix(&s, section, ngens(b), ngens(a), "section")?,
                        retraction: parse_matrix(&s, retraction, ngens(a), ngens(b), "retraction")?,
                    },
                }
            }
            StepJson::Dsum {
                object,
                parts,
                injections,
                projections,
            } => {
                let a = id(object)?;
                let parts = parts.iter().map(|p| id(p)).collect::<Result<Vec<_>>>()?;
                if injections.len() != parts.len() || projections.len() != parts.len() {
                    return Err(Error::Invalid("DSUM needs one injection and projection per part".into()));
                }
                let mut inj = Vec::new();
                let mut proj = Vec::new();
                for (k, &p) in parts.iter().enumerate() {
                    inj.push(parse_matrix(&s, &injections[k], ngens(a), ngens(p), "injection")?);
                    proj.push(parse_matrix(&s, &projections[k], ngens(p), ngens(a), "projection")?);
                }
                CertStep {
                    object: a,
                    kind: StepKind::Dsum {
                        parts,
                        injections: inj,
                        projections: proj,
                    },
                }
            }
            StepJson::Restrict { object, certificate } => CertStep {
                object: id(object)?,
                kind: StepKind::Restrict {
                    certificate: Box::new(from_json(certificate, limits)?),
                },
            },
        };
        steps.push(step);
    }
    let summands = j.generators.summands.iter().map(|n| id(n)).collect::<Result<Vec<_>>>()?;
    Ok(Certificate {
        ring,
        generators: GeneratorDecl {
            ring: j.generators.ring,
            summands,
        },
        root: id(&j.root)?,
        objects,
        steps,
        attestations: j.metadata.attestations.clone(),
    })
}

pub fn from_json_str(text: &str, limits: Limits) -> Result<Certificate> {
    let j: CertJson = serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.column(), e.to_string()))?;
    from_json(&j, limits)
}
