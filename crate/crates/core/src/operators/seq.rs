use std::sync::Arc;

use serde_json::Value;

use super::poly::{rationals_from_json, rationals_to_json};
use super::{rb_residual, LinearOp, RBFamily};
use crate::error::{Error, Result};
use crate::exactalg::{Algebra, Carrier, Rational};

/// A vector in ℚⁿ (n ≥ 2) with the pointwise product.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Seq(Vec<Rational>);

impl Seq {
    pub fn new(v: Vec<Rational>) -> Result<Self> {
        if v.len() < 2 {
            return Err(Error::DimensionMismatch { expected: 2, found: v.len() });
        }
        Ok(Seq(v))
    }

    pub fn zeros(n: usize) -> Self {
        Seq(vec![Rational::zero(); n])
    }

    /// The standard basis vector `e_i` of ℚⁿ.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![Rational::zero(); n];
        v[i] = Rational::one();
        Seq(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn random<R: rand::Rng + ?Sized>(rng: &mut R, n: usize, bound: i64) -> Seq {
        Seq((0..n).map(|_| Rational::random_small(rng, bound)).collect())
    }

    fn zip(&self, other: &Seq, f: impl Fn(&Rational, &Rational) -> Rational) -> Seq {
        assert_eq!(self.0.len(), other.0.len(), "sequence lengths differ");
        Seq(self.0.iter().zip(&other.0).map(|(a, b)| f(a, b)).collect())
    }
}

impl Carrier for Seq {
    fn zero_like(&self) -> Self {
        Seq::zeros(self.0.len())
    }

    fn plus(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    fn scaled(&self, c: &Rational) -> Self {
        Seq(self.0.iter().map(|a| a * c).collect())
    }

    fn is_zero(&self) -> bool {
        self.0.iter().all(Rational::is_zero)
    }

    fn to_json(&self) -> Value {
        rationals_to_json(&self.0)
    }

    fn from_json(v: &Value) -> Result<Self> {
        Seq::new(rationals_from_json(v)?)
    }
}

impl Algebra for Seq {
    fn times(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a * b)
    }
}

/// `P(a)_i = Σ_{j<i} a_j`
pub fn running_sum(a: &Seq) -> Seq {
    let mut acc = Rational::zero();
    let mut out = Vec::with_capacity(a.len());
    for x in &a.0 {
        out.push(acc.clone());
        acc = acc + x;
    }
    Seq(out)
}

/// The running-sum operator on ℚⁿ together with the weight `λ₀ ∈ {1, -1}`
/// for which it satisfies `P(x)P(y) = P(xP(y) + P(x)y + λ₀xy)`.
///
/// The sign is found by testing both candidates on every pair of standard
/// basis vectors, which decides the bilinear identity.
pub fn running_sum_base(n: usize) -> (LinearOp<Seq>, Rational) {
    assert!(n >= 2, "running sum needs length at least 2");
    let op: LinearOp<Seq> = Arc::new(running_sum);
    for lambda in [Rational::one(), -Rational::one()] {
        let fam = RBFamily::new("seq", vec![("ω".to_string(), Arc::clone(&op), lambda.clone())])
            .expect("nonempty");
        let holds = (0..n).all(|i| {
            (0..n).all(|j| rb_residual(&fam, &Seq::unit(n, i), &Seq::unit(n, j), "ω", "ω").is_zero())
        });
        if holds {
            return (op, lambda);
        }
    }
    panic!("running sum satisfies the Rota-Baxter identity for neither sign");
}
