//! Constructions turning one structure into another: Rota-Baxter families
//! into (tri)dendriform and pre-Lie structures, dendriform into pre-Lie and
//! compatible associative, tridendriform into associative PostLie, and
//! antisymmetrization into brackets.

mod pipeline;

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::axioms::{self, check, AxiomSet, Sampler, Sampling};
use crate::error::{Error, Result};
use crate::exactalg::{Algebra, Carrier, Rational};
use crate::operators::RBFamily;
use crate::structure::{BinOp, LieFamily, OpName, OpStructure};

pub use pipeline::{family_step, op_step, run_family_pipeline, run_ops_pipeline, PipelineReport, StageReport, Step};

/// Whether a transform verifies its input before building on it.
#[derive(Clone)]
pub enum Precheck<C> {
    Trusted,
    Checked(Sampling<C>),
}

/// Random samples used by [`Precheck::checked`].
pub const PRECHECK_SAMPLES: usize = 50;

impl<C: Carrier> Precheck<C> {
    /// 50 seeded random samples per identity and index pair.
    pub fn checked(sampler: Sampler<C>, seed: u64) -> Self {
        Precheck::Checked(Sampling::random(sampler, seed, PRECHECK_SAMPLES))
    }

    fn run(&self, s: &OpStructure<C>, set: AxiomSet<OpStructure<C>>) -> Result<()> {
        let Precheck::Checked(sampling) = self else { return Ok(()) };
        let v = check(s, &set, sampling)?;
        match v.witness {
            None => Ok(()),
            Some(w) => Err(Error::PreconditionFailed(format!(
                "input is not {}: identity {} fails at ({}, {})",
                set.name, w.identity, w.alpha, w.beta
            ))),
        }
    }
}

fn require<C: Carrier>(s: &OpStructure<C>, names: &[OpName]) -> Result<()> {
    match names.iter().find(|n| !s.has_op(**n)) {
        Some(n) => Err(Error::MissingOperation(n.to_string())),
        None => Ok(()),
    }
}

fn family_structure<A: Algebra>(fam: &RBFamily<A>, tag: &str) -> OpStructure<A> {
    OpStructure::new(format!("{}:{tag}", fam.carrier()), fam.indices().iter().cloned()).expect("family is nonempty")
}

/// `x ≺_ω y = xP_ω(y) + λ_ω xy`, `x ≻_ω y = P_ω(x)y`.
pub fn rb_to_dendriform<A: Algebra>(fam: &RBFamily<A>) -> OpStructure<A> {
    family_structure(fam, "dend")
        .with_family(OpName::Prec, |w| {
            let p = Arc::clone(fam.operator(w));
            let l = fam.weight(w).clone();
            Arc::new(move |x: &A, y: &A| x.times(&p(y)).plus(&x.times(y).scaled(&l)))
        })
        .with_family(OpName::Succ, |w| {
            let p = Arc::clone(fam.operator(w));
            Arc::new(move |x: &A, y: &A| p(x).times(y))
        })
        .with_provenance("rb_to_dendriform: x≺_ω y = xP_ω(y) + λ_ω xy, x≻_ω y = P_ω(x)y")
}

/// `x ≺_ω y = xP_ω(y)`, `x ≻_ω y = P_ω(x)y`, `x ·_ω y = λ_ω xy`.
pub fn rb_to_tridendriform<A: Algebra>(fam: &RBFamily<A>) -> OpStructure<A> {
    family_structure(fam, "tridend")
        .with_family(OpName::Prec, |w| {
            let p = Arc::clone(fam.operator(w));
            Arc::new(move |x: &A, y: &A| x.times(&p(y)))
        })
        .with_family(OpName::Succ, |w| {
            let p = Arc::clone(fam.operator(w));
            Arc::new(move |x: &A, y: &A| p(x).times(y))
        })
        .with_family(OpName::Dot, |w| {
            let l = fam.weight(w).clone();
            Arc::new(move |x: &A, y: &A| x.times(y).scaled(&l))
        })
        .with_provenance("rb_to_tridendriform: x≺_ω y = xP_ω(y), x≻_ω y = P_ω(x)y, x·_ω y = λ_ω xy")
}

// x ≻_ω y - y ≺_ω x
fn succ_minus_prec<C: Carrier>(s: &OpStructure<C>) -> impl FnMut(&str) -> BinOp<C> + '_ {
    |w| {
        let succ = Arc::clone(s.get(OpName::Succ, w).expect("checked"));
        let prec = Arc::clone(s.get(OpName::Prec, w).expect("checked"));
        Arc::new(move |x: &C, y: &C| succ(x, y).minus(&prec(y, x)))
    }
}

fn derived<C: Carrier>(s: &OpStructure<C>, tag: &str) -> OpStructure<C> {
    OpStructure::new(format!("{}>{tag}", s.carrier()), s.indices().iter().cloned())
        .expect("nonempty")
        .inherit_provenance(s.provenance())
}

/// `x ∗_ω y = x ≻_ω y - y ≺_ω x`
pub fn dendriform_to_prelie<C: Carrier>(s: &OpStructure<C>, pre: &Precheck<C>) -> Result<OpStructure<C>> {
    require(s, &[OpName::Prec, OpName::Succ])?;
    pre.run(&s.restrict(&[OpName::Prec, OpName::Succ]), axioms::matching_dendriform())?;
    Ok(derived(s, "prelie")
        .with_family(OpName::Star, succ_minus_prec(s))
        .with_provenance("dendriform_to_prelie: x∗_ω y = x≻_ω y - y≺_ω x"))
}

/// Which pre-Lie product to build from an operator family on an associative
/// algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RbPreLieForm {
    /// `x ∗_ω y = [P_ω(x), y]`; every weight must be zero.
    Lie,
    /// `x ∗_ω y = P_ω(x)y - yP_ω(x) - λ_ω yx`; any weights.
    Weighted,
}

fn zero_weights<'a>(weights: impl IntoIterator<Item = (&'a String, &'a Rational)>) -> Result<()> {
    match weights.into_iter().find(|(_, l)| !l.is_zero()) {
        Some((w, l)) => Err(Error::NonzeroWeight { index: w.clone(), weight: l.to_string() }),
        None => Ok(()),
    }
}

/// The pre-Lie product of an operator family on an associative algebra.
pub fn rblie_to_prelie<A: Algebra>(fam: &RBFamily<A>, form: RbPreLieForm) -> Result<OpStructure<A>> {
    match form {
        RbPreLieForm::Lie => {
            zero_weights(fam.weights())?;
            Ok(family_structure(fam, "prelie")
                .with_family(OpName::Star, |w| {
                    let p = Arc::clone(fam.operator(w));
                    Arc::new(move |x: &A, y: &A| p(x).commutator(y))
                })
                .with_provenance("rblie_to_prelie: x∗_ω y = [P_ω(x), y]"))
        }
        RbPreLieForm::Weighted => Ok(family_structure(fam, "prelie")
            .with_family(OpName::Star, |w| {
                let p = Arc::clone(fam.operator(w));
                let l = fam.weight(w).clone();
                Arc::new(move |x: &A, y: &A| p(x).commutator(y).minus(&y.times(x).scaled(&l)))
            })
            .with_provenance("rblie_to_prelie: x∗_ω y = P_ω(x)y - yP_ω(x) - λ_ω yx")),
    }
}

/// `x ∗_ω y = [P_ω(x), y]` for an operator family on a Lie algebra; every
/// weight must be zero.
pub fn lie_family_to_prelie<C: Carrier>(fam: &LieFamily<C>) -> Result<OpStructure<C>> {
    let weights: Vec<(String, Rational)> =
        fam.indices().iter().map(|w| (w.clone(), fam.weight(w).clone())).collect();
    zero_weights(weights.iter().map(|(w, l)| (w, l)))?;
    let s = OpStructure::new(format!("{}:prelie", fam.carrier()), fam.indices().iter().cloned())?;
    Ok(s.with_family(OpName::Star, |w| {
        let fam = fam.clone();
        let w = w.to_string();
        Arc::new(move |x: &C, y: &C| fam.bracket(&fam.apply(&w, x), y))
    })
    .with_provenance("lie_family_to_prelie: x∗_ω y = [P_ω(x), y]"))
}

/// `x ⋆_ω y = x ·_ω y`, `x ∘_ω y = x ≻_ω y - y ≺_ω x`.
pub fn tridendriform_to_postlie<C: Carrier>(s: &OpStructure<C>, pre: &Precheck<C>) -> Result<OpStructure<C>> {
    require(s, &[OpName::Prec, OpName::Succ, OpName::Dot])?;
    pre.run(s, axioms::matching_tridendriform())?;
    Ok(derived(s, "postlie")
        .with_family(OpName::AssocStar, |w| Arc::clone(s.get(OpName::Dot, w).expect("checked")))
        .with_family(OpName::Circ, succ_minus_prec(s))
        .with_provenance("tridendriform_to_postlie: x⋆_ω y = x·_ω y, x∘_ω y = x≻_ω y - y≺_ω x"))
}

/// `x ⋆_ω y = λ_ω xy`, `x ∘_ω y = P_ω(x)y - yP_ω(x)`.
pub fn rb_to_postlie<A: Algebra>(fam: &RBFamily<A>) -> OpStructure<A> {
    family_structure(fam, "postlie")
        .with_family(OpName::AssocStar, |w| {
            let l = fam.weight(w).clone();
            Arc::new(move |x: &A, y: &A| x.times(y).scaled(&l))
        })
        .with_family(OpName::Circ, |w| {
            let p = Arc::clone(fam.operator(w));
            Arc::new(move |x: &A, y: &A| p(x).commutator(y))
        })
        .with_provenance("rb_to_postlie: x⋆_ω y = λ_ω xy, x∘_ω y = P_ω(x)y - yP_ω(x)")
}

/// `x •_ω y = x ≻_ω y + x ≺_ω y`, plus `x ·_ω y` when the input has `·`.
pub fn split_to_assoc<C: Carrier>(s: &OpStructure<C>, pre: &Precheck<C>) -> Result<OpStructure<C>> {
    require(s, &[OpName::Prec, OpName::Succ])?;
    let with_dot = s.has_op(OpName::Dot);
    if with_dot {
        pre.run(s, axioms::matching_tridendriform())?;
    } else {
        pre.run(s, axioms::matching_dendriform())?;
    }
    let out = derived(s, "assoc").with_family(OpName::Bullet, |w| {
        let succ = Arc::clone(s.get(OpName::Succ, w).expect("checked"));
        let prec = Arc::clone(s.get(OpName::Prec, w).expect("checked"));
        let dot = if with_dot { s.get(OpName::Dot, w).cloned() } else { None };
        Arc::new(move |x: &C, y: &C| {
            let b = succ(x, y).plus(&prec(x, y));
            match &dot {
                Some(d) => b.plus(&d(x, y)),
                None => b,
            }
        })
    });
    Ok(if with_dot {
        out.with_provenance("split_to_assoc: x•_ω y = x≻_ω y + x≺_ω y + x·_ω y")
    } else {
        out.with_provenance("split_to_assoc: x•_ω y = x≻_ω y + x≺_ω y")
    })
}

/// `[x, y]_ω = x ⊙_ω y - y ⊙_ω x` for `⊙` one of `∗`, `•`, `⋆`. The other
/// operations of the input are kept (so `{⋆, ∘}` becomes `{[,], ∘}`).
pub fn antisymmetrize<C: Carrier>(s: &OpStructure<C>, from: OpName, pre: &Precheck<C>) -> Result<OpStructure<C>> {
    require(s, &[from])?;
    match from {
        OpName::Star => pre.run(&s.restrict(&[from]), axioms::matching_prelie())?,
        OpName::Bullet => pre.run(&s.restrict(&[from]), axioms::compatible_associative())?,
        OpName::AssocStar => {
            require(s, &[OpName::Circ])?;
            pre.run(&s.restrict(&[from, OpName::Circ]), axioms::matching_assoc_postlie())?
        }
        other => {
            return Err(Error::Unknown(format!("antisymmetrization of `{other}`")));
        }
    }
    let mut out = derived(s, "antisym");
    for name in s.op_names() {
        if name != from && name != OpName::Bracket {
            for w in s.indices() {
                out.insert(name, w.clone(), Arc::clone(s.get(name, w).expect("present")));
            }
        }
    }
    Ok(out
        .with_family(OpName::Bracket, |w| {
            let op = Arc::clone(s.get(from, w).expect("checked"));
            Arc::new(move |x: &C, y: &C| op(x, y).minus(&op(y, x)))
        })
        .with_provenance(format!("antisymmetrize: [x,y]_ω = x {from}_ω y - y {from}_ω x")))
}

/// `⊙_i = Σ_ω a_{i,ω} ⊙_ω` for every operation family of `s`.
pub fn combine_ops<C: Carrier>(
    s: &OpStructure<C>,
    table: &BTreeMap<String, BTreeMap<String, Rational>>,
) -> Result<OpStructure<C>> {
    for row in table.values() {
        if let Some(w) = row.keys().find(|w| !s.indices().contains(w)) {
            return Err(Error::Unknown(format!("index `{w}`")));
        }
    }
    let mut out = OpStructure::new(format!("{}>combined", s.carrier()), table.keys().cloned())?
        .inherit_provenance(s.provenance());
    for name in s.op_names() {
        for (i, row) in table {
            let parts: Vec<(BinOp<C>, Rational)> = row
                .iter()
                .map(|(w, a)| (Arc::clone(s.get(name, w).expect("present")), a.clone()))
                .collect();
            out.insert(
                name,
                i.clone(),
                Arc::new(move |x: &C, y: &C| {
                    let mut acc = x.zero_like();
                    for (op, a) in &parts {
                        acc = acc.plus(&op(x, y).scaled(a));
                    }
                    acc
                }),
            );
        }
    }
    Ok(out.with_provenance("combine_ops: ⊙_i = Σ_ω a_{i,ω} ⊙_ω"))
}
