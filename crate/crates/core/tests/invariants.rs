use std::collections::BTreeMap;
use std::sync::Arc;

use matchbox_core::axioms::{check, matching_dendriform, matching_rb, sample_element_with, Sampler, Sampling};
use matchbox_core::exactalg::{LinComb, Rational};
use matchbox_core::freedend::{prec_trees, succ_trees, FreeDendriform};
use matchbox_core::operators::{running_sum_base, scaled_family, Seq};
use matchbox_core::trees::{enumerate_pbt, Alphabet, EdgeType, PlanarBinaryTree};
use proptest::prelude::*;
use rand_chacha::ChaCha8Rng;

fn trees() -> Vec<PlanarBinaryTree> {
    let (d, o) = (Alphabet::parse_list("a,b").unwrap(), Alphabet::parse_list("α,β").unwrap());
    (1..=3).flat_map(|n| enumerate_pbt(n, &d, &o)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn planar_text_and_json_round_trip(i in 0usize..200) {
        let all = trees();
        let t = &all[i % all.len()];
        prop_assert_eq!(&t.to_string().parse::<PlanarBinaryTree>().unwrap(), t);
        prop_assert_eq!(&PlanarBinaryTree::from_json(&t.to_json()).unwrap(), t);
    }

    #[test]
    fn split_products_keep_vertices(i in 0usize..200, j in 0usize..200, alpha in any::<bool>()) {
        let all = trees();
        let (t, u) = (&all[i % all.len()], &all[j % all.len()]);
        let w = EdgeType::typed(if alpha { "α" } else { "β" });
        let n = t.vertex_count() + u.vertex_count();
        for p in [prec_trees(t, u, &w), succ_trees(t, u, &w)] {
            prop_assert!(!p.is_zero());
            prop_assert!(p.iter().all(|(k, c)| k.vertex_count() == n && *c > Rational::zero()));
        }
    }

    #[test]
    fn free_dendriform_random_seeds(seed in any::<u64>()) {
        let dd = FreeDendriform::new(Alphabet::parse_list("a").unwrap(), Alphabet::parse_list("α,β").unwrap())
            .structure();
        let keys = trees().into_iter().filter(|t| t.as_node().is_some_and(|n| n.dec == "a")).collect::<Vec<_>>();
        let sampler: Sampler<LinComb<PlanarBinaryTree>> =
            Arc::new(move |rng: &mut ChaCha8Rng| sample_element_with(rng, &keys, 2, 3));
        prop_assert!(check(&dd, &matching_dendriform(), &Sampling::random(sampler, seed, 2)).unwrap().passed);
    }

    #[test]
    fn scaled_running_sums_are_matching(a in -4i64..=4, b in 1i64..=4, n in 2usize..6, seed in any::<u64>()) {
        let (p, l) = running_sum_base(n);
        let scalars = BTreeMap::from([
            ("α".to_string(), Rational::from_integer(a)),
            ("β".to_string(), Rational::new(1, b).unwrap()),
        ]);
        let fam = scaled_family("seq", p, &l, &scalars).unwrap();
        let sampler: Sampler<Seq> = Arc::new(move |rng: &mut ChaCha8Rng| Seq::random(rng, n, 4));
        prop_assert!(check(&fam, &matching_rb(), &Sampling::random(sampler, seed, 3)).unwrap().passed);
    }
}
