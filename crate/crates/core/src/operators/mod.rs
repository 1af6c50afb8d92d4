//! Concrete matching Rota-Baxter operator families.
//!
//! A family is an index set Ω with a linear operator `P_ω` and a weight
//! `λ_ω` per index, satisfying for all `α, β ∈ Ω`
//!
//! ```text
//! P_α(x) P_β(y) = P_α(x P_β(y)) + P_β(P_α(x) y) + λ_β P_α(xy)
//! ```

mod matrix;
mod poly;
mod seq;
pub mod tensor;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactalg::{Algebra, Rational};

pub use matrix::Matrix;
pub use poly::{kernel_integral, make_kernel_family, Poly};
pub use seq::{running_sum, running_sum_base, Seq};
pub use tensor::{
    aybe_family_search, aybe_search, make_paybe_family, paybe_residual, swap_condition, tensor_embed,
    tensor_operator, MatTensor, SearchSpace, Slot, TripleTensor,
};

/// A linear operator on a carrier.
pub type LinearOp<A> = Arc<dyn Fn(&A) -> A + Send + Sync>;

/// An Ω-indexed family of linear operators with weights on an algebra.
#[derive(Clone)]
pub struct RBFamily<A> {
    carrier: String,
    indices: Vec<String>,
    operators: BTreeMap<String, LinearOp<A>>,
    weights: BTreeMap<String, Rational>,
}

impl<A: Algebra> RBFamily<A> {
    /// Builds a family from `(index, operator, weight)` entries. Duplicate
    /// indices keep the last entry.
    pub fn new(carrier: impl Into<String>, entries: Vec<(String, LinearOp<A>, Rational)>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyIndexSet);
        }
        let mut operators = BTreeMap::new();
        let mut weights = BTreeMap::new();
        for (w, op, lambda) in entries {
            operators.insert(w.clone(), op);
            weights.insert(w, lambda);
        }
        Ok(RBFamily {
            carrier: carrier.into(),
            indices: operators.keys().cloned().collect(),
            operators,
            weights,
        })
    }

    pub fn carrier(&self) -> &str {
        &self.carrier
    }

    pub fn indices(&self) -> &[String] {
        &self.indices
    }

    /// The operator `P_ω`. Panics on an unknown index.
    pub fn operator(&self, w: &str) -> &LinearOp<A> {
        self.operators.get(w).unwrap_or_else(|| panic!("unknown index `{w}`"))
    }

    pub fn apply(&self, w: &str, x: &A) -> A {
        (self.operator(w))(x)
    }

    /// The weight `λ_ω`. Panics on an unknown index.
    pub fn weight(&self, w: &str) -> &Rational {
        self.weights.get(w).unwrap_or_else(|| panic!("unknown index `{w}`"))
    }

    pub fn weights(&self) -> &BTreeMap<String, Rational> {
        &self.weights
    }

    fn check_index(&self, w: &str) -> Result<()> {
        if self.operators.contains_key(w) {
            Ok(())
        } else {
            Err(Error::Unknown(format!("index `{w}` not in the family")))
        }
    }
}

impl<A> fmt::Debug for RBFamily<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RBFamily")
            .field("carrier", &self.carrier)
            .field("indices", &self.indices)
            .field("weights", &self.weights)
            .finish()
    }
}

/// `P_α(x)P_β(y) - P_α(xP_β(y)) - P_β(P_α(x)y) - λ_β P_α(xy)`.
pub fn rb_residual<A: Algebra>(fam: &RBFamily<A>, x: &A, y: &A, alpha: &str, beta: &str) -> A {
    let px = fam.apply(alpha, x);
    let py = fam.apply(beta, y);
    let lhs = px.times(&py);
    let rhs = fam
        .apply(alpha, &x.times(&py))
        .plus(&fam.apply(beta, &px.times(y)))
        .plus(&fam.apply(alpha, &x.times(y)).scaled(fam.weight(beta)));
    lhs.minus(&rhs)
}

/// `P_ω := c_ω P` with weights `λ_ω := c_ω λ₀`, for a single operator `P` of
/// weight `λ₀`.
pub fn scaled_family<A: Algebra>(
    carrier: impl Into<String>,
    base: LinearOp<A>,
    lambda0: &Rational,
    scalars: &BTreeMap<String, Rational>,
) -> Result<RBFamily<A>> {
    let entries = scalars
        .iter()
        .map(|(w, c)| {
            let base = Arc::clone(&base);
            let c2 = c.clone();
            let op: LinearOp<A> = Arc::new(move |x: &A| base(x).scaled(&c2));
            (w.clone(), op, c * lambda0)
        })
        .collect();
    RBFamily::new(carrier, entries)
}

/// Recombines a family: `P_i := Σ_ω a_{i,ω} P_ω` and `λ_i := Σ_ω a_{i,ω} λ_ω`.
pub fn combine_family<A: Algebra>(
    fam: &RBFamily<A>,
    table: &BTreeMap<String, BTreeMap<String, Rational>>,
) -> Result<RBFamily<A>> {
    let mut entries = Vec::new();
    for (i, row) in table {
        let mut parts: Vec<(LinearOp<A>, Rational)> = Vec::new();
        let mut lambda = Rational::zero();
        for (w, a) in row {
            fam.check_index(w)?;
            lambda = lambda + a * fam.weight(w);
            parts.push((Arc::clone(fam.operator(w)), a.clone()));
        }
        let op: LinearOp<A> = Arc::new(move |x: &A| {
            let mut acc: Option<A> = None;
            for (p, a) in &parts {
                let term = p(x).scaled(a);
                acc = Some(match acc {
                    None => term,
                    Some(s) => s.plus(&term),
                });
            }
            acc.unwrap_or_else(|| x.zero_like())
        });
        entries.push((i.clone(), op, lambda));
    }
    RBFamily::new(fam.carrier.clone(), entries)
}
