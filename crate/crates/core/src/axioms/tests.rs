use std::sync::Arc;

use super::*;
use crate::exactalg::LinComb;
use crate::freedend::FreeDendriform;
use crate::structure::BinOp;
use crate::trees::{enumerate_pbt, Alphabet, PlanarBinaryTree};

type El = LinComb<PlanarBinaryTree>;

fn zero_structure() -> OpStructure<El> {
    let mut s = OpStructure::new("zero", ["α", "β"]).unwrap();
    for name in OpName::ALL {
        s = s.with_family(name, |_| -> BinOp<El> { Arc::new(|_: &El, _: &El| El::zero()) });
    }
    s
}

fn pool() -> Vec<El> {
    let d = Alphabet::parse_list("a").unwrap();
    let o = Alphabet::parse_list("α,β").unwrap();
    (1..=2).flat_map(|n| enumerate_pbt(n, &d, &o)).map(LinComb::basis).collect()
}

fn free_bullet() -> OpStructure<El> {
    let alg = FreeDendriform::new(Alphabet::parse_list("a").unwrap(), Alphabet::parse_list("α,β").unwrap());
    OpStructure::new("dd", ["α", "β"]).unwrap().with_family(OpName::Bullet, |w| -> BinOp<El> {
        let alg = alg.clone();
        let w = w.to_string();
        Arc::new(move |x: &El, y: &El| alg.bullet(x, y, &w).unwrap())
    })
}

#[test]
fn zero_structure_passes_everything() {
    let s = zero_structure();
    for name in OP_AXIOM_SETS {
        let set = op_axiom_set::<El>(name).unwrap();
        let v = check(&s, &set, &Sampling::Exhaustive(pool())).unwrap();
        assert!(v.passed, "{name}");
        assert!(v.implied.iter().all(|i| i.passed));
    }
}

#[test]
fn missing_operation_is_reported() {
    let s = free_bullet();
    let err = check(&s, &matching_dendriform(), &Sampling::Exhaustive(pool())).unwrap_err();
    assert_eq!(err, Error::MissingOperation("prec".into()));
}

#[test]
fn witness_replays_nonzero() {
    let s = free_bullet();
    let set = matching_associative();
    let v = find_counterexample(&s, &set, &pool()).unwrap();
    assert!(!v.passed);
    let w = v.witness.unwrap();
    let residual = replay_witness(&s, &set, &w).unwrap();
    assert!(!residual.is_zero());
    assert_eq!(residual.to_json(), w.residual);
}

#[test]
fn exhaustive_counts_every_instance() {
    let s = zero_structure();
    // 5 pool elements, 4 index pairs, 3 identities
    let v = check(&s, &matching_dendriform(), &Sampling::Exhaustive(pool())).unwrap();
    assert_eq!(v.trials, 125 * 4 * 3);
    // alternativity ranges over 5 elements and 2 indices
    let v = check(&s, &compatible_lie(), &Sampling::Exhaustive(pool())).unwrap();
    assert_eq!(v.trials, 5 * 2 + 125 * 4);
}

#[test]
fn auto_sampling_policy() {
    let sampler: Sampler<El> = Arc::new(|_| El::zero());
    assert_eq!(Sampling::auto(pool(), Arc::clone(&sampler), 1).mode(), Mode::Exhaustive);
    let big: Vec<El> = (0..8).map(|i| El::basis(PlanarBinaryTree::vertex(format!("d{i}")))).collect();
    assert_eq!(Sampling::auto(big, sampler, 1).mode(), Mode::Random);
}

#[test]
fn reports_are_deterministic() {
    let s = free_bullet();
    let p: Vec<PlanarBinaryTree> = pool().iter().flat_map(|x| x.keys().cloned().collect::<Vec<_>>()).collect();
    let sampler: Sampler<El> = Arc::new(move |rng| sample_element_with(rng, &p, 2, 3));
    let sampling = Sampling::random(sampler, 17, 20);
    let set = compatible_associative();
    let r1 = report(&s, &set, &sampling, &check(&s, &set, &sampling).unwrap());
    let r2 = report(&s, &set, &sampling, &check(&s, &set, &sampling).unwrap());
    assert_eq!(serde_json::to_string(&r1).unwrap(), serde_json::to_string(&r2).unwrap());
    assert_eq!(r1["verdict"], "pass");
    assert_eq!(r1["seed"], 17);
}

#[test]
fn unknown_set_name() {
    assert!(matches!(op_axiom_set::<El>("nope"), Err(Error::Unknown(_))));
}
