//! Exact sparse multivariate polynomials over `Q` and `F_p`.

mod field;
mod monomial;
pub mod parse;
mod poly;

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

pub use field::{Coeff, FieldSpec};
pub use monomial::{Monomial, MonomialOrder};
pub use poly::{jacobian_matrix, Poly};

use crate::error::{Error, Result};

/// Budgets for Gröbner computations. Exceeding one is reported as
/// [`Error::Cutoff`], never as a mathematical answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest total degree an S-pair lcm may have.
    pub max_degree: u64,
    /// Largest number of S-pairs one basis computation may reduce.
    pub max_pairs: usize,
    /// Longest free resolution that will be built.
    pub max_resolution_length: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_degree: 200,
            max_pairs: 2_000_000,
            max_resolution_length: 32,
        }
    }
}

/// A polynomial ring `K[x_1, ..., x_n]` with a fixed monomial order.
#[derive(Clone, Debug)]
pub struct PolyRing {
    field: FieldSpec,
    vars: Vec<String>,
    order: MonomialOrder,
    limits: Limits,
}

impl PartialEq for PolyRing {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.vars == other.vars && self.order == other.order
    }
}

impl Eq for PolyRing {}

fn valid_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl PolyRing {
    pub fn new(field: FieldSpec, vars: Vec<String>, order: MonomialOrder) -> Result<Arc<Self>> {
        Self::with_limits(field, vars, order, Limits::default())
    }

    pub fn with_limits(
        field: FieldSpec,
        vars: Vec<String>,
        order: MonomialOrder,
        limits: Limits,
    ) -> Result<Arc<Self>> {
        let mut seen = HashSet::new();
        for v in &vars {
            if !valid_identifier(v) {
                return Err(Error::Invalid(format!("`{v}` is not a valid variable name")));
            }
            if !seen.insert(v.as_str()) {
                return Err(Error::Invalid(format!("duplicate variable `{v}`")));
            }
        }
        if let MonomialOrder::Elimination(blocks) = &order {
            if blocks.iter().sum::<usize>() != vars.len() || blocks.contains(&0) {
                return Err(Error::Invalid(format!(
                    "elimination blocks {blocks:?} do not partition {} variables",
                    vars.len()
                )));
            }
        }
        if limits.max_degree == 0 || limits.max_pairs == 0 || limits.max_resolution_length == 0 {
            return Err(Error::Invalid("resource cutoffs must be positive".into()));
        }
        Ok(Arc::new(PolyRing {
            field,
            vars,
            order,
            limits,
        }))
    }

    /// Same ring, default grevlex order.
    pub fn grevlex(field: FieldSpec, vars: &[&str]) -> Result<Arc<Self>> {
        Self::new(field, vars.iter().map(|s| s.to_string()).collect(), MonomialOrder::Grevlex)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// A copy of this ring with an extra variable appended, lowest in the order
    /// blocks; used by the Rabinowitsch trick.
    pub fn with_extra_variable(&self, name: &str) -> Result<Arc<Self>> {
        let mut vars = self.vars.clone();
        let mut fresh = name.to_string();
        while vars.contains(&fresh) {
            fresh.push('_');
        }
        vars.push(fresh);
        let order = match &self.order {
            MonomialOrder::Elimination(b) => {
                let mut b = b.clone();
                b.push(1);
                MonomialOrder::Elimination(b)
            }
            o => o.clone(),
        };
        Self::with_limits(self.field, vars, order, self.limits)
    }

    pub fn same(a: &Arc<Self>, b: &Arc<Self>) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }

    /// Compact textual description, e.g. `Q[x,y] grevlex`.
    pub fn describe(&self) -> String {
        format!("{}[{}] {}", self.field, self.vars.join(","), self.order.tag())
    }
}

impl fmt::Display for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.field, self.vars.join(","))
    }
}

/// Checks that two ring handles describe the same ring.
pub fn ensure_same(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> Result<()> {
    if PolyRing::same(a, b) {
        Ok(())
    } else {
        Err(Error::RingMismatch(format!("{} vs {}", a.describe(), b.describe())))
    }
}
