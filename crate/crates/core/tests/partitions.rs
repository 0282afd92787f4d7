mod common;

use std::collections::BTreeSet;

use common::{hook_length_count, rim_hook_removals};
use crg_core::partitions::{
    core_quotient, coset_rep, decompose, from_core_quotient, is_core, recompose, set_tuples, standard_tableaux,
    Multipartition, Partition, Perm,
};
use proptest::prelude::*;
use proptest::sample::Index;

fn partition_strategy(max: usize) -> impl Strategy<Value = Partition> {
    (0..=max, any::<Index>()).prop_map(|(n, i)| {
        let all = Partition::all(n);
        all[i.index(all.len())].clone()
    })
}

fn perm_strategy(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Perm::from_images(v).unwrap())
}

/// Strips p-hooks choosing among all removable hooks by `picks`.
fn random_stripping(lambda: &Partition, p: usize, picks: &[Index]) -> (Partition, usize) {
    let mut cur = lambda.clone();
    let mut legs = 0;
    let mut step = 0;
    loop {
        let moves = rim_hook_removals(&cur, p);
        if moves.is_empty() {
            return (cur, legs);
        }
        let (nu, leg) = moves[picks[step % picks.len()].index(moves.len())].clone();
        step += 1;
        cur = nu;
        legs += leg;
    }
}

proptest! {
    #[test]
    fn core_quotient_round_trip(lambda in partition_strategy(14), p in prop::sample::select(vec![2u32, 3, 5, 7])) {
        let data = core_quotient(&lambda, p);
        prop_assert_eq!(lambda.size(), data.core.size() + p as usize * data.weight);
        prop_assert!(is_core(&data.core, p));
        prop_assert_eq!(data.quotient.len(), p as usize);
        prop_assert_eq!(from_core_quotient(&data, p), lambda);
    }

    #[test]
    fn p_sign_is_order_independent(
        lambda in partition_strategy(11),
        p in prop::sample::select(vec![2usize, 3, 5]),
        picks in prop::collection::vec(any::<Index>(), 1..8),
    ) {
        let data = core_quotient(&lambda, p as u32);
        let (core, legs) = random_stripping(&lambda, p, &picks);
        prop_assert_eq!(core, data.core);
        prop_assert_eq!(if legs % 2 == 0 { 1 } else { -1 }, data.sign);
    }

    #[test]
    fn stacked_sign_is_a_power(
        a in partition_strategy(6),
        b in partition_strategy(6),
        t in 1usize..4,
        p in prop::sample::select(vec![2u32, 3, 5]),
    ) {
        let alpha = Multipartition::new(vec![a, b]);
        let s = alpha.p_sign(p);
        prop_assert_eq!(alpha.stack(t).p_sign(p), s.pow(t as u32));
        prop_assert_eq!(alpha.stack(t).unstack(t), Some(alpha));
    }

    #[test]
    fn decompose_recompose(sigma in perm_strategy(6), split in prop::sample::select(vec![vec![6usize], vec![3, 3], vec![1, 2, 3], vec![2, 0, 4]])) {
        let (x, locals) = decompose(&sigma, &split).unwrap();
        prop_assert_eq!(recompose(&x, &locals), sigma);
    }

    #[test]
    fn conjugation_is_an_involution(lambda in partition_strategy(20)) {
        prop_assert_eq!(lambda.conjugate().conjugate(), lambda.clone());
        prop_assert_eq!(lambda.conjugate().size(), lambda.size());
    }
}

#[test]
fn coset_representatives_are_injective() {
    for c in [vec![2usize, 2], vec![1, 2, 1], vec![3, 0, 2], vec![1, 1, 1, 1]] {
        let reps: BTreeSet<Vec<usize>> = set_tuples(&c).iter().map(|x| coset_rep(x).images().to_vec()).collect();
        assert_eq!(reps.len(), set_tuples(&c).len());
    }
}

#[test]
fn standard_tableaux_match_hook_lengths() {
    for n in 0..=8 {
        let entries: Vec<u32> = (1..=n as u32).collect();
        for lambda in Partition::all(n) {
            let tabs = standard_tableaux(&lambda, &entries).unwrap();
            assert_eq!(tabs.len() as u128, hook_length_count(&lambda), "{lambda:?}");
            assert!(tabs.iter().all(|t| t.is_standard()));
        }
    }
}
