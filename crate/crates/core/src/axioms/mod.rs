//! Identity systems as data and an exact verification engine.
//!
//! An identity is a function of `(args, α, β)` returning its `LHS - RHS`
//! residual; it holds on an instance when the residual is exactly zero.
//! [`check`] evaluates every identity of an [`AxiomSet`] over all index pairs
//! and either the full cross product of a sample pool or a seeded stream of
//! random samples, and reports the first failing instance in canonical order.

mod registry;
mod sample;

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactalg::{Algebra, Carrier};
use crate::operators::RBFamily;
use crate::structure::{LieFamily, OpName, OpStructure};

pub use registry::*;
pub use sample::{sample_element, sample_element_with};

/// Anything the engine can check identities on.
pub trait Structure: Send + Sync {
    type Elem: Carrier;

    fn indices(&self) -> &[String];
    fn has_op(&self, op: OpName) -> bool;
    fn describe(&self) -> String;
}

impl<C: Carrier> Structure for OpStructure<C> {
    type Elem = C;

    fn indices(&self) -> &[String] {
        OpStructure::indices(self)
    }

    fn has_op(&self, op: OpName) -> bool {
        OpStructure::has_op(self, op)
    }

    fn describe(&self) -> String {
        OpStructure::describe(self)
    }
}

impl<A: Algebra> Structure for RBFamily<A> {
    type Elem = A;

    fn indices(&self) -> &[String] {
        RBFamily::indices(self)
    }

    fn has_op(&self, _: OpName) -> bool {
        false
    }

    fn describe(&self) -> String {
        format!("rb-family:{}[{}]", self.carrier(), self.indices().join(","))
    }
}

impl<C: Carrier> Structure for LieFamily<C> {
    type Elem = C;

    fn indices(&self) -> &[String] {
        LieFamily::indices(self)
    }

    fn has_op(&self, _: OpName) -> bool {
        false
    }

    fn describe(&self) -> String {
        format!("rb-lie-family:{}[{}]", self.carrier(), self.indices().join(","))
    }
}

/// Which index pairs an identity ranges over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Indexing {
    /// All `(α, β) ∈ Ω²`.
    Pairs,
    /// Only `α = β`.
    Diagonal,
}

pub type Eval<S> = fn(&S, &[<S as Structure>::Elem], &str, &str) -> <S as Structure>::Elem;

pub struct Identity<S: Structure> {
    pub id: &'static str,
    pub arity: usize,
    pub indexing: Indexing,
    pub eval: Eval<S>,
}

impl<S: Structure> Clone for Identity<S> {
    fn clone(&self) -> Self {
        Identity { id: self.id, arity: self.arity, indexing: self.indexing, eval: self.eval }
    }
}

/// A named system of identities. `implied` identities are consequences that
/// are confirmed separately once the main identities pass.
pub struct AxiomSet<S: Structure> {
    pub name: &'static str,
    pub required: Vec<OpName>,
    pub identities: Vec<Identity<S>>,
    pub implied: Vec<Identity<S>>,
}

impl<S: Structure> AxiomSet<S> {
    pub fn identity(&self, id: &str) -> Option<&Identity<S>> {
        self.identities.iter().chain(&self.implied).find(|i| i.id == id)
    }
}

pub type Sampler<C> = Arc<dyn Fn(&mut ChaCha8Rng) -> C + Send + Sync>;

/// Where the arguments of identity instances come from.
#[derive(Clone)]
pub enum Sampling<C> {
    /// Every tuple over the pool.
    Exhaustive(Vec<C>),
    /// `trials` seeded random tuples per identity and index pair.
    Random { sampler: Sampler<C>, seed: u64, trials: usize },
}

/// Pools with at most this many triples are checked exhaustively by
/// [`Sampling::auto`].
pub const EXHAUSTIVE_TRIPLE_LIMIT: usize = 500;
/// Random trials per identity and index pair used by [`Sampling::auto`].
pub const DEFAULT_TRIALS: usize = 200;

impl<C: Carrier> Sampling<C> {
    pub fn random(sampler: Sampler<C>, seed: u64, trials: usize) -> Self {
        Sampling::Random { sampler, seed, trials }
    }

    /// Exhaustive when the pool has at most 500 triples, otherwise 200 seeded
    /// random tuples per identity and index pair.
    pub fn auto(pool: Vec<C>, sampler: Sampler<C>, seed: u64) -> Self {
        if pool.len().pow(3) <= EXHAUSTIVE_TRIPLE_LIMIT {
            Sampling::Exhaustive(pool)
        } else {
            Sampling::Random { sampler, seed, trials: DEFAULT_TRIALS }
        }
    }

    pub fn mode(&self) -> Mode {
        match self {
            Sampling::Exhaustive(_) => Mode::Exhaustive,
            Sampling::Random { .. } => Mode::Random,
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            Sampling::Exhaustive(_) => None,
            Sampling::Random { seed, .. } => Some(*seed),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Random,
}

/// A failing identity instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub identity: String,
    pub alpha: String,
    pub beta: String,
    pub args: Vec<Value>,
    pub residual: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ImpliedCheck {
    pub identity: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub passed: bool,
    pub mode: Mode,
    /// Identity instances evaluated, up to and including the witness.
    pub trials: usize,
    pub witness: Option<Witness>,
    pub implied: Vec<ImpliedCheck>,
}

struct Job<'a, C> {
    identity: usize,
    alpha: &'a str,
    beta: &'a str,
    args: Vec<C>,
}

fn index_pairs(indices: &[String], indexing: Indexing) -> Vec<(&str, &str)> {
    match indexing {
        Indexing::Pairs => indices
            .iter()
            .flat_map(|a| indices.iter().map(move |b| (a.as_str(), b.as_str())))
            .collect(),
        Indexing::Diagonal => indices.iter().map(|a| (a.as_str(), a.as_str())).collect(),
    }
}

fn tuples<C: Clone>(pool: &[C], arity: usize) -> Vec<Vec<C>> {
    let mut out: Vec<Vec<C>> = vec![Vec::new()];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                pool.iter().map(move |x| {
                    let mut t = prefix.clone();
                    t.push(x.clone());
                    t
                })
            })
            .collect();
    }
    out
}

fn build_jobs<'a, S: Structure>(
    s: &'a S,
    identities: &[Identity<S>],
    sampling: &Sampling<S::Elem>,
    rng: &mut ChaCha8Rng,
) -> Vec<Job<'a, S::Elem>> {
    let mut jobs = Vec::new();
    for (k, ident) in identities.iter().enumerate() {
        let pairs = match ident.arity {
            // single-variable identities do not involve a second index
            1 => index_pairs(s.indices(), Indexing::Diagonal),
            _ => index_pairs(s.indices(), ident.indexing),
        };
        for (alpha, beta) in pairs {
            match sampling {
                Sampling::Exhaustive(pool) => {
                    for args in tuples(pool, ident.arity) {
                        jobs.push(Job { identity: k, alpha, beta, args });
                    }
                }
                Sampling::Random { sampler, trials, .. } => {
                    for _ in 0..*trials {
                        let args = (0..ident.arity).map(|_| sampler(rng)).collect();
                        jobs.push(Job { identity: k, alpha, beta, args });
                    }
                }
            }
        }
    }
    jobs
}

/// Runs the jobs in parallel; returns the number evaluated and the first
/// failing job in canonical order, if any.
fn run<S: Structure>(s: &S, identities: &[Identity<S>], jobs: &[Job<'_, S::Elem>]) -> (usize, Option<Witness>) {
    let eval = |j: &Job<'_, S::Elem>| (identities[j.identity].eval)(s, &j.args, j.alpha, j.beta);
    match jobs.par_iter().position_first(|j| !eval(j).is_zero()) {
        None => (jobs.len(), None),
        Some(pos) => {
            let j = &jobs[pos];
            let witness = Witness {
                identity: identities[j.identity].id.to_string(),
                alpha: j.alpha.to_string(),
                beta: j.beta.to_string(),
                args: j.args.iter().map(Carrier::to_json).collect(),
                residual: eval(j).to_json(),
            };
            (pos + 1, Some(witness))
        }
    }
}

fn missing_ops<S: Structure>(s: &S, set: &AxiomSet<S>) -> Result<()> {
    match set.required.iter().find(|op| !s.has_op(**op)) {
        Some(op) => Err(Error::MissingOperation(op.to_string())),
        None => Ok(()),
    }
}

/// Checks `set` on `s` with exact residuals.
pub fn check<S: Structure>(s: &S, set: &AxiomSet<S>, sampling: &Sampling<S::Elem>) -> Result<Verdict> {
    missing_ops(s, set)?;
    let mut rng = ChaCha8Rng::seed_from_u64(sampling.seed().unwrap_or(0));
    let jobs = build_jobs(s, &set.identities, sampling, &mut rng);
    let (trials, witness) = run(s, &set.identities, &jobs);
    let mut implied = Vec::new();
    if witness.is_none() {
        for ident in &set.implied {
            let one = std::slice::from_ref(ident);
            let jobs = build_jobs(s, one, sampling, &mut rng);
            let (_, w) = run(s, one, &jobs);
            implied.push(ImpliedCheck { identity: ident.id.to_string(), passed: w.is_none() });
        }
    }
    Ok(Verdict { passed: witness.is_none(), mode: sampling.mode(), trials, witness, implied })
}

/// Exhaustive search over `pool` for the first failing instance.
pub fn find_counterexample<S: Structure>(s: &S, set: &AxiomSet<S>, pool: &[S::Elem]) -> Result<Verdict> {
    check(s, set, &Sampling::Exhaustive(pool.to_vec()))
}

/// Re-evaluates a witness from its serialized arguments.
pub fn replay_witness<S: Structure>(s: &S, set: &AxiomSet<S>, w: &Witness) -> Result<S::Elem> {
    let ident = set
        .identity(&w.identity)
        .ok_or_else(|| Error::Unknown(format!("identity `{}` in `{}`", w.identity, set.name)))?;
    let args = w.args.iter().map(S::Elem::from_json).collect::<Result<Vec<_>>>()?;
    if args.len() != ident.arity {
        return Err(Error::DimensionMismatch { expected: ident.arity, found: args.len() });
    }
    for idx in [&w.alpha, &w.beta] {
        if !s.indices().contains(idx) {
            return Err(Error::Unknown(format!("index `{idx}`")));
        }
    }
    Ok((ident.eval)(s, &args, &w.alpha, &w.beta))
}

/// The machine-readable report of a check.
pub fn report<S: Structure>(s: &S, set: &AxiomSet<S>, sampling: &Sampling<S::Elem>, verdict: &Verdict) -> Value {
    let mut v = json!({
        "structure": s.describe(),
        "axiom_set": set.name,
        "mode": verdict.mode,
        "seed": sampling.seed(),
        "trials": verdict.trials,
        "verdict": if verdict.passed { "pass" } else { "fail" },
        "implied": verdict.implied,
    });
    if let Some(w) = &verdict.witness {
        v["witness"] = serde_json::to_value(w).expect("witness serializes");
    }
    v
}

#[cfg(test)]
mod tests;
