//! One test per acceptance criterion. Every check is exact: an identity holds
//! only when its residual is the zero element. Each test prints a
//! `criterion N: pass|fail` line (visible with `--nocapture`).

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use matchbox_core::axioms::{
    check, compatible_associative, compatible_lie, find_counterexample, matching_associative, matching_dendriform,
    matching_lie, matching_prelie, matching_rb, op_axiom_set, replay_witness, report, sample_element_with, Sampler,
    Sampling,
};
use matchbox_core::exactalg::{Algebra, BasisKey, Carrier, LinComb, Rational};
use matchbox_core::freedend::{DDElement, FreeDendriform};
use matchbox_core::operators::{
    aybe_family_search, aybe_search, combine_family, make_kernel_family, make_paybe_family,
    running_sum_base, scaled_family, Matrix, Poly, RBFamily, SearchSpace, Seq,
};
use matchbox_core::prelie_trees::{GraftingPreLie, PreLieElement};
use matchbox_core::structure::{OpName, OpStructure};
use matchbox_core::transforms::{
    antisymmetrize, dendriform_to_prelie, rb_to_dendriform, rb_to_tridendriform, rblie_to_prelie,
    run_family_pipeline, split_to_assoc, tridendriform_to_postlie, Precheck, RbPreLieForm, Step,
};
use matchbox_core::trees::{count_pbt, enumerate_pbt, enumerate_rooted, Alphabet, PlanarBinaryTree, RootedTree};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Wall-clock budget for each search-style criterion.
const TIME_LIMIT: Duration = Duration::from_secs(60);
/// Random samples per identity and index pair.
const RANDOM_TRIPLES: usize = 200;
const RANDOM_PAIRS: usize = 200;
const MATRIX_PAIRS: usize = 100;
const COHERENCE_PAIRS: usize = 100;

fn verdict(n: u32, what: &str, ok: bool) {
    println!("criterion {n}: {} ({what})", if ok { "pass" } else { "fail" });
    assert!(ok, "criterion {n} failed: {what}");
}

fn q(s: &str) -> Rational {
    s.parse().unwrap()
}

fn alpha(s: &str) -> Alphabet {
    Alphabet::parse_list(s).unwrap()
}

fn basis_pool<K: BasisKey>(keys: Vec<K>) -> Vec<LinComb<K>> {
    keys.into_iter().map(LinComb::basis).collect()
}

fn key_sampler<K: BasisKey>(keys: Vec<K>, max_terms: usize) -> Sampler<LinComb<K>> {
    Arc::new(move |rng: &mut ChaCha8Rng| sample_element_with(rng, &keys, max_terms, 4))
}

fn pbt_upto(n: usize, d: &Alphabet, o: &Alphabet) -> Vec<PlanarBinaryTree> {
    (1..=n).flat_map(|k| enumerate_pbt(k, d, o)).collect()
}

fn rooted_upto(n: usize, d: &Alphabet, o: &Alphabet) -> Vec<RootedTree> {
    (1..=n).flat_map(|k| enumerate_rooted(k, d, o)).collect()
}

fn kernel_family() -> RBFamily<Poly> {
    let kernels = BTreeMap::from([("α".to_string(), Poly::one()), ("β".to_string(), Poly::x_pow(1))]);
    make_kernel_family(&kernels).unwrap()
}

fn running_family() -> RBFamily<Seq> {
    let (p, l) = running_sum_base(6);
    let scalars = BTreeMap::from([("α".to_string(), q("1/2")), ("β".to_string(), q("-1/3"))]);
    scaled_family("seq6", p, &l, &scalars).unwrap()
}

/// Two-operator families found by grid search at weight 0.
fn paybe_families() -> Vec<RBFamily<Matrix>> {
    let space = SearchSpace {
        k: 2,
        support: vec![(0, 0, 0, 0), (0, 0, 0, 1), (0, 1, 0, 0), (0, 1, 0, 1), (0, 0, 1, 1), (1, 1, 0, 1)],
        grid: vec![q("-1"), q("0"), q("1")],
    };
    let lambda = Rational::zero();
    let sols = aybe_search(&space, &lambda, 1 << 20).unwrap();
    let pairs = aybe_family_search(&sols, &lambda).unwrap();
    let fams: Vec<_> = pairs
        .into_iter()
        .filter(|(r, s)| !r.terms().is_empty() && !s.terms().is_empty())
        .take(3)
        .map(|(r, s)| {
            let m = BTreeMap::from([("α".to_string(), r), ("β".to_string(), s)]);
            make_paybe_family(&m, &lambda).unwrap()
        })
        .collect();
    assert!(!fams.is_empty(), "search found no two-operator family");
    fams
}

fn polys() -> Sampler<Poly> {
    Arc::new(|rng: &mut ChaCha8Rng| Poly::random(rng, 4, 5))
}

fn seqs() -> Sampler<Seq> {
    Arc::new(|rng: &mut ChaCha8Rng| Seq::random(rng, 6, 5))
}

fn matrices() -> Sampler<Matrix> {
    Arc::new(|rng: &mut ChaCha8Rng| Matrix::random(rng, 2, 3))
}

fn passes<C: Carrier>(s: &OpStructure<C>, set: &str, sampling: &Sampling<C>) -> bool {
    let v = check(s, &op_axiom_set::<C>(set).unwrap(), sampling).unwrap();
    v.passed && v.implied.iter().all(|i| i.passed)
}

#[test]
fn criterion_01_free_dendriform_axioms() {
    let (d, o) = (alpha("a"), alpha("α,β"));
    let dd = FreeDendriform::new(d.clone(), o.clone()).structure();
    let start = Instant::now();
    let pool = basis_pool(pbt_upto(2, &d, &o));
    assert_eq!(pool.len(), 5);
    let ex = check(&dd, &matching_dendriform(), &Sampling::Exhaustive(pool)).unwrap();
    // 5³ triples × 4 index pairs × 3 identities
    let exhaustive_ok = ex.passed && ex.trials == 125 * 4 * 3;
    let random = Sampling::random(key_sampler(pbt_upto(4, &d, &o), 1), 2024, RANDOM_TRIPLES);
    let rv = check(&dd, &matching_dendriform(), &random).unwrap();
    let elapsed = start.elapsed();
    verdict(
        1,
        &format!("{} exhaustive + {} random instances exact in {elapsed:?}", ex.trials, rv.trials),
        exhaustive_ok && rv.passed && elapsed < TIME_LIMIT,
    );
}

#[test]
fn criterion_02_worked_products() {
    let dd = FreeDendriform::new(alpha("a,b"), alpha("α,β"));
    let a: DDElement = PlanarBinaryTree::parse_lincomb("B(a,e,|,e,|)").unwrap();
    let b: DDElement = PlanarBinaryTree::parse_lincomb("B(b,e,|,e,|)").unwrap();
    let prec = dd.prec(&a, &b, "α").unwrap().to_string();
    let succ = dd.succ(&a, &b, "β").unwrap().to_string();

    let pl = GraftingPreLie::new(alpha("a,b,c"), alpha("green,red"));
    let ladder = RootedTree::parse_lincomb("R(a;[red:R(b)])").unwrap();
    let c = RootedTree::parse_lincomb("R(c)").unwrap();
    let red = pl.star(&ladder, &c, "red").unwrap().to_string();
    let green = pl.star(&ladder, &c, "green").unwrap().to_string();

    let ok = prec == "B(a,e,|,α,B(b,e,|,e,|))"
        && succ == "B(b,β,B(a,e,|,e,|),e,|)"
        && red == "R(a;[red:R(b;[]),red:R(c;[])]) + R(a;[red:R(b;[red:R(c;[])])])"
        && green == "R(a;[green:R(c;[]),red:R(b;[])]) + R(a;[red:R(b;[green:R(c;[])])])";
    verdict(2, &format!("{prec}; {succ}; {red}; {green}"), ok);
}

#[test]
fn criterion_03_matching_prelie_on_rooted_trees() {
    let (d, o) = (alpha("a"), alpha("α,β"));
    let s = GraftingPreLie::new(d.clone(), o.clone()).structure();
    let pool: Vec<PreLieElement> = basis_pool(rooted_upto(2, &d, &o));
    let ex = check(&s, &matching_prelie(), &Sampling::Exhaustive(pool.clone())).unwrap();
    let random = Sampling::random(key_sampler(rooted_upto(4, &d, &o), 2), 7, RANDOM_TRIPLES);
    let rv = check(&s, &matching_prelie(), &random).unwrap();
    verdict(
        3,
        &format!("pool of {} trees, {} exhaustive + {} random instances", pool.len(), ex.trials, rv.trials),
        ex.passed && rv.passed && ex.trials == pool.len().pow(3) * 4,
    );
}

/// Independent oracle: the running sum as an explicit strictly lower
/// triangular matrix and the identity expanded with plain loops.
fn running_sum_oracle_residual(c: &[Rational; 2], l0: &Rational, x: &[Rational], y: &[Rational]) -> bool {
    let n = x.len();
    let p = |scale: &Rational, v: &[Rational]| -> Vec<Rational> {
        (0..n)
            .map(|i| (0..i).fold(Rational::zero(), |acc, j| acc + &(scale * &v[j])))
            .collect()
    };
    let mul = |u: &[Rational], v: &[Rational]| -> Vec<Rational> { (0..n).map(|i| &u[i] * &v[i]).collect() };
    let (pa, pb) = (&c[0], &c[1]);
    let px = p(pa, x);
    let py = p(pb, y);
    let lhs = mul(&px, &py);
    let t1 = p(pa, &mul(x, &py));
    let t2 = p(pb, &mul(&px, y));
    let t3 = p(pa, &mul(x, y));
    let lb = pb * l0;
    (0..n).all(|i| lhs[i] == &(&t1[i] + &t2[i]) + &(&lb * &t3[i]))
}

#[test]
fn criterion_04_rota_baxter_families() {
    let kernel = check(&kernel_family(), &matching_rb(), &Sampling::random(polys(), 1, RANDOM_PAIRS)).unwrap();
    let running = check(&running_family(), &matching_rb(), &Sampling::random(seqs(), 2, RANDOM_PAIRS)).unwrap();
    let mut paybe_ok = true;
    let fams = paybe_families();
    for fam in &fams {
        paybe_ok &= check(fam, &matching_rb(), &Sampling::random(matrices(), 3, MATRIX_PAIRS)).unwrap().passed;
    }
    // oracle for the running-sum family, including the sign of its weight
    let (_, l0) = running_sum_base(6);
    let scal = [q("1/2"), q("-1/3")];
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut oracle_ok = true;
    for _ in 0..RANDOM_PAIRS {
        let (x, y) = (Seq::random(&mut rng, 6, 5), Seq::random(&mut rng, 6, 5));
        for (a, b) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            oracle_ok &= running_sum_oracle_residual(&[scal[a].clone(), scal[b].clone()], &l0, x.entries(), y.entries());
        }
    }
    verdict(
        4,
        &format!(
            "kernel {} / running sum {} / {} matrix families, weight of running sum {l0}",
            kernel.trials,
            running.trials,
            fams.len()
        ),
        kernel.passed && running.passed && paybe_ok && oracle_ok && l0 == Rational::one(),
    );
}

fn random_table(rng: &mut ChaCha8Rng) -> BTreeMap<String, BTreeMap<String, Rational>> {
    ["i", "j"]
        .iter()
        .map(|i| {
            let row = ["α", "β"].iter().map(|w| (w.to_string(), Rational::random_small(rng, 3))).collect();
            (i.to_string(), row)
        })
        .collect()
}

fn closure_holds<A: Algebra>(fam: &RBFamily<A>, sampler: Sampler<A>, rng: &mut ChaCha8Rng, pairs: usize) -> bool {
    (0..3).all(|t| {
        let table = random_table(rng);
        let comb = combine_family(fam, &table).unwrap();
        let weights_ok = table.iter().all(|(i, row)| {
            let expected: Rational = row.iter().map(|(w, a)| a * fam.weight(w)).sum();
            comb.weight(i) == &expected
        });
        let v = check(&comb, &matching_rb(), &Sampling::random(Arc::clone(&sampler), 100 + t, pairs)).unwrap();
        weights_ok && v.passed
    })
}

#[test]
fn criterion_05_linear_combination_closure() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let kernel = closure_holds(&kernel_family(), polys(), &mut rng, 50);
    let running = closure_holds(&running_family(), seqs(), &mut rng, 50);
    let paybe = paybe_families().iter().all(|f| closure_holds(f, matrices(), &mut rng, 50));
    verdict(5, "3 random tables per family, weights Σ a λ", kernel && running && paybe);
}

#[test]
fn criterion_06_transform_gauntlet() {
    let start = Instant::now();
    let mut results: Vec<(&str, bool)> = Vec::new();

    let seq = Sampling::random(seqs(), 61, RANDOM_TRIPLES);
    let poly = Sampling::random(polys(), 62, RANDOM_TRIPLES);
    let running = running_family();
    let kernel = kernel_family();

    let dend_rs = rb_to_dendriform(&running);
    results.push(("rb_to_dendriform running sum", passes(&dend_rs, "matching-dendriform", &seq)));
    let dend_k = rb_to_dendriform(&kernel);
    results.push(("rb_to_dendriform kernels", passes(&dend_k, "matching-dendriform", &poly)));
    let tri = rb_to_tridendriform(&running);
    results.push(("rb_to_tridendriform", passes(&tri, "matching-tridendriform", &seq)));
    let pre_k = dendriform_to_prelie(&dend_k, &Precheck::Trusted).unwrap();
    results.push(("dendriform_to_prelie kernels", passes(&pre_k, "matching-prelie", &poly)));
    let pre_rs = dendriform_to_prelie(&dend_rs, &Precheck::Trusted).unwrap();
    results.push(("dendriform_to_prelie running sum", passes(&pre_rs, "matching-prelie", &seq)));
    let post = tridendriform_to_postlie(&tri, &Precheck::Trusted).unwrap();
    results.push(("tridendriform_to_postlie", passes(&post, "matching-assoc-postlie", &seq)));
    let assoc_d = split_to_assoc(&dend_rs, &Precheck::Trusted).unwrap();
    results.push(("split_to_assoc dendriform", passes(&assoc_d, "compatible-associative", &seq)));
    let assoc_t = split_to_assoc(&tri, &Precheck::Trusted).unwrap();
    results.push(("split_to_assoc tridendriform", passes(&assoc_t, "compatible-associative", &seq)));
    let lie_star = antisymmetrize(&pre_k, OpName::Star, &Precheck::Trusted).unwrap();
    results.push(("antisymmetrize ∗", passes(&lie_star, "compatible-lie", &poly)));
    let lie_bullet = antisymmetrize(&assoc_t, OpName::Bullet, &Precheck::Trusted).unwrap();
    results.push(("antisymmetrize •", passes(&lie_bullet, "compatible-lie", &seq)));
    let lie_post = antisymmetrize(&post, OpName::AssocStar, &Precheck::Trusted).unwrap();
    results.push(("antisymmetrize ⋆", passes(&lie_post, "matching-postlie", &seq)));

    // the free dendriform algebra through the same transforms
    let (d, o) = (alpha("a"), alpha("α,β"));
    let dd = FreeDendriform::new(d.clone(), o.clone()).structure();
    let trees = Sampling::random(key_sampler(pbt_upto(3, &d, &o), 1), 63, RANDOM_TRIPLES);
    let dd_pre = dendriform_to_prelie(&dd, &Precheck::Trusted).unwrap();
    results.push(("dendriform_to_prelie free", passes(&dd_pre, "matching-prelie", &trees)));
    let dd_assoc = split_to_assoc(&dd, &Precheck::Trusted).unwrap();
    results.push(("split_to_assoc free", passes(&dd_assoc, "compatible-associative", &trees)));
    let dd_lie = antisymmetrize(&dd_assoc, OpName::Bullet, &Precheck::Trusted).unwrap();
    results.push(("antisymmetrize • free", passes(&dd_lie, "compatible-lie", &trees)));

    let failed: Vec<&str> = results.iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect();
    verdict(
        6,
        &format!("{} transform outputs in {:?}, failing: {failed:?}", results.len(), start.elapsed()),
        failed.is_empty(),
    );
}

#[test]
fn criterion_07_negative_witnesses() {
    let (d, o) = (alpha("a"), alpha("α,β"));

    let start = Instant::now();
    let bullet = split_to_assoc(&FreeDendriform::new(d.clone(), o.clone()).structure(), &Precheck::Trusted).unwrap();
    let pool = basis_pool(pbt_upto(2, &d, &o));
    let not_matching = find_counterexample(&bullet, &matching_associative(), &pool).unwrap();
    let compatible = find_counterexample(&bullet, &compatible_associative(), &pool).unwrap();
    let wa = not_matching.witness.clone().expect("a witness");
    let replay_a = replay_witness(&bullet, &matching_associative(), &wa).unwrap();
    let dd_time = start.elapsed();

    let start = Instant::now();
    let lie = antisymmetrize(&GraftingPreLie::new(d.clone(), o.clone()).structure(), OpName::Star, &Precheck::Trusted)
        .unwrap();
    let pool = basis_pool(rooted_upto(2, &d, &o));
    let not_jacobi = find_counterexample(&lie, &matching_lie(), &pool).unwrap();
    let coupling = find_counterexample(&lie, &compatible_lie(), &pool).unwrap();
    let wb = not_jacobi.witness.clone().expect("a witness");
    let replay_b = replay_witness(&lie, &matching_lie(), &wb).unwrap();
    let tree_time = start.elapsed();

    println!("  (a) {} at ({}, {}) after {} instances", wa.identity, wa.alpha, wa.beta, not_matching.trials);
    println!("  (b) {} at ({}, {}) after {} instances", wb.identity, wb.alpha, wb.beta, not_jacobi.trials);
    verdict(
        7,
        &format!("free • search {dd_time:?}, rooted bracket search {tree_time:?}"),
        !not_matching.passed
            && compatible.passed
            && !replay_a.is_zero()
            && replay_a.to_json() == wa.residual
            && !not_jacobi.passed
            && coupling.passed
            && !replay_b.is_zero()
            && dd_time < TIME_LIMIT
            && tree_time < TIME_LIMIT,
    );
}

fn catalan(n: u64) -> u64 {
    // C(2n, n) / (n + 1), computed incrementally
    (0..n).fold(1u64, |c, k| c * 2 * (2 * k + 1) / (k + 2))
}

#[test]
fn criterion_08_enumeration_counts() {
    let mut ok = true;
    for d in ["a", "a,b"] {
        for o in ["α", "α,β"] {
            let (da, oa) = (alpha(d), alpha(o));
            for n in 1..=5usize {
                let trees = enumerate_pbt(n, &da, &oa);
                let expected = catalan(n as u64) * (da.len() as u64).pow(n as u32) * (oa.len() as u64).pow(n as u32 - 1);
                let distinct: std::collections::BTreeSet<_> = trees.iter().map(ToString::to_string).collect();
                ok &= trees.len() as u64 == expected
                    && distinct.len() == trees.len()
                    && count_pbt(n, da.len(), oa.len()) == expected.into()
                    && trees.iter().all(|t| t.validate(&da, &oa).is_ok() && t.vertex_count() == n);
            }
        }
    }
    let twenty = enumerate_pbt(3, &alpha("a"), &alpha("α,β")).len();
    verdict(8, &format!("n ≤ 5, |D|,|Ω| ≤ 2; n = 3, |D| = 1, |Ω| = 2 gives {twenty}"), ok && twenty == 20);
}

fn coherent<A: Algebra>(fam: &RBFamily<A>, sampler: &Sampler<A>, seed: u64) -> bool {
    let via = dendriform_to_prelie(&rb_to_dendriform(fam), &Precheck::Trusted).unwrap();
    let direct = rblie_to_prelie(fam, RbPreLieForm::Weighted).unwrap();
    let weight_zero = fam.weights().values().all(Rational::is_zero);
    let lie = weight_zero.then(|| rblie_to_prelie(fam, RbPreLieForm::Lie).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..COHERENCE_PAIRS).all(|_| {
        let (x, y) = (sampler(&mut rng), sampler(&mut rng));
        fam.indices().iter().all(|w| {
            let a = via.apply(OpName::Star, w, &x, &y);
            // independent expansion of P(x)y - yP(x) - λ yx
            let p = fam.apply(w, &x);
            let b = p.times(&y).minus(&y.times(&p)).minus(&y.times(&x).scaled(fam.weight(w)));
            let lie_ok = lie.as_ref().is_none_or(|l| l.apply(OpName::Star, w, &x, &y) == a);
            a == b && direct.apply(OpName::Star, w, &x, &y) == a && lie_ok
        })
    })
}

#[test]
fn criterion_09_pipeline_coherence() {
    let ok = coherent(&kernel_family(), &polys(), 91)
        && coherent(&running_family(), &seqs(), 92)
        && paybe_families().iter().all(|f| coherent(f, &matrices(), 93));
    verdict(9, &format!("{COHERENCE_PAIRS} random pairs per family and index"), ok);
}

#[test]
fn criterion_10_determinism() {
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| {
            let steps = Step::parse_list("tridend,postlie,antisym").unwrap();
            let sampling = Sampling::random(seqs(), 10, 40);
            let pipeline = run_family_pipeline(&running_family(), &steps, &sampling).unwrap().to_json();
            let (d, o) = (alpha("a"), alpha("α,β"));
            let bullet = split_to_assoc(&FreeDendriform::new(d.clone(), o.clone()).structure(), &Precheck::Trusted)
                .unwrap();
            let trees = Sampling::random(key_sampler(pbt_upto(3, &d, &o), 2), 10, 40);
            let v = check(&bullet, &matching_associative(), &trees).unwrap();
            let failing = report(&bullet, &matching_associative(), &trees, &v);
            serde_json::to_string(&(pipeline, failing)).unwrap()
        })
    };
    let first = run(1);
    let again = run(1);
    let parallel = run(4);
    verdict(
        10,
        &format!("{} byte report, repeated and with 4 threads", first.len()),
        first == again && first == parallel && first.contains("\"witness\""),
    );
}
