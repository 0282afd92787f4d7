mod common;

use common::{mn_character, part};
use crg_core::cyclotomic::Cyclotomic;
use crg_core::matrix::CycMatrix;
use crg_core::partitions::{Multipartition, Partition, Perm};
use crg_core::wreath::{
    self, centralizer_order, character, class_rep, group_order, mm_isomorphism_check, GroupElement, IrrepModel,
};
use num_bigint::BigInt;
use proptest::prelude::*;

fn mp(parts: &[&[u32]]) -> Multipartition {
    Multipartition::from_parts(parts).unwrap()
}

fn relations_hold(m: &IrrepModel) -> bool {
    let gens = m.generator_matrices();
    let de = m.de() as u64;
    let r = m.rank();
    let t = &gens[0];
    if !t.pow(de).is_identity() {
        return false;
    }
    for i in 1..r {
        let s = &gens[i];
        if !s.mul(s).is_identity() {
            return false;
        }
        if i + 1 < r {
            let s2 = &gens[i + 1];
            if s.mul(s2).mul(s) != s2.mul(s).mul(s2) {
                return false;
            }
        }
        for j in i + 2..r {
            if s.mul(&gens[j]) != gens[j].mul(s) {
                return false;
            }
        }
        if i >= 2 && t.mul(s) != s.mul(t) {
            return false;
        }
    }
    if r >= 2 {
        let s1 = &gens[1];
        if t.mul(s1).mul(t).mul(s1) != s1.mul(t).mul(s1).mul(t) {
            return false;
        }
    }
    true
}

#[test]
fn relations_and_dimensions_small() {
    for de in [2u32, 3] {
        for r in 1..=3 {
            let mut sum: u128 = 0;
            for lam in Multipartition::all(r, de as usize) {
                let m = IrrepModel::new(&lam);
                assert!(relations_hold(&m), "relations fail for {lam:?}");
                sum += (m.dim() as u128).pow(2);
            }
            assert_eq!(sum, group_order(de, r));
        }
    }
}

#[test]
fn homomorphism_on_generator_pairs() {
    for lam in Multipartition::all(3, 2).into_iter().chain(Multipartition::all(4, 2)) {
        let m = IrrepModel::new(&lam);
        let r = lam.size();
        let gens = GroupElement::generators(2, r);
        for g in &gens {
            for h in &gens {
                let gh = g.multiply(h).unwrap();
                assert_eq!(
                    m.rep_matrix(&gh).unwrap(),
                    m.rep_matrix(g).unwrap().mul(&m.rep_matrix(h).unwrap())
                );
            }
        }
    }
}

#[test]
fn identity_and_trivial_representations() {
    let lam = mp(&[&[2, 1], &[1], &[]]);
    let m = IrrepModel::new(&lam);
    assert!(m.rep_matrix(&GroupElement::identity(3, 4)).unwrap().is_identity());
    let triv = mp(&[&[4], &[], &[]]);
    let mt = IrrepModel::new(&triv);
    let g = GroupElement::new(3, vec![1, 2, 0, 1], Perm::from_cycles(4, &[vec![0, 3]])).unwrap();
    assert_eq!(mt.rep_matrix(&g).unwrap(), CycMatrix::identity(1));
}

#[test]
fn symmetric_group_matches_murnaghan_nakayama() {
    for n in 1..=6 {
        for lam in Partition::all(n) {
            for mu in Partition::all(n) {
                let v = character(&Multipartition::new(vec![lam.clone()]), &Multipartition::new(vec![mu.clone()]));
                assert_eq!(v, Cyclotomic::from_int(mn_character(&lam, mu.parts())), "{lam:?} at {mu:?}");
            }
        }
    }
    let row: Vec<Cyclotomic> = [&[1u32, 1, 1][..], &[2, 1], &[3]]
        .iter()
        .map(|mu| character(&mp(&[&[2, 1]]), &Multipartition::new(vec![part(mu)])))
        .collect();
    assert_eq!(row, vec![2.into_cyc(), 0.into_cyc(), (-1).into_cyc()]);
}

trait IntoCyc {
    fn into_cyc(self) -> Cyclotomic;
}
impl IntoCyc for i64 {
    fn into_cyc(self) -> Cyclotomic {
        Cyclotomic::from_int(self)
    }
}

#[test]
fn fast_trace_equals_dense_trace() {
    for (de, r) in [(2u32, 3usize), (3, 3), (4, 2), (6, 2)] {
        for lam in Multipartition::all(r, de as usize) {
            let m = IrrepModel::new(&lam);
            for eta in Multipartition::all(r, de as usize) {
                let g = class_rep(&eta, r).unwrap();
                assert_eq!(m.rep_matrix(&g).unwrap().trace(), character(&lam, &eta));
            }
        }
    }
}

#[test]
fn single_entries_match_the_matrix() {
    for (de, r) in [(2u32, 3usize), (3, 3), (4, 2)] {
        for lam in Multipartition::all(r, de as usize) {
            let m = IrrepModel::new(&lam);
            for eta in Multipartition::all(r, de as usize) {
                let g = class_rep(&eta, r).unwrap();
                let dense = m.rep_matrix(&g).unwrap();
                for row in 0..m.dim() {
                    for b in 0..m.dim() {
                        let v = match m.entry(&g, row, b).unwrap() {
                            Some((k, c)) => Cyclotomic::zeta(de, k as i64).scale(&c),
                            None => Cyclotomic::zero_in(de),
                        };
                        assert_eq!(&v, dense.get(row, b));
                    }
                }
            }
        }
    }
}

#[test]
fn identity_character_is_dimension() {
    for lam in Multipartition::all(4, 3) {
        let eta = Multipartition::single(3, 0, part(&[1, 1, 1, 1]));
        let d = IrrepModel::new(&lam).dim() as i64;
        assert_eq!(character(&lam, &eta), Cyclotomic::from_int(d));
    }
}

fn inner(values_a: &[Cyclotomic], values_b: &[Cyclotomic], cents: &[u128]) -> Cyclotomic {
    values_a
        .iter()
        .zip(values_b)
        .zip(cents)
        .map(|((a, b), c)| (a * &b.conj()).div_int(&BigInt::from(*c)).unwrap())
        .sum()
}

#[test]
fn orthogonality_g312() {
    let t = wreath::character_table(3, 2);
    let cents: Vec<u128> = t.classes.iter().map(|c| c.centralizer_order).collect();
    for (i, a) in t.values.iter().enumerate() {
        for (j, b) in t.values.iter().enumerate() {
            let v = inner(a, b, &cents);
            assert_eq!(v, Cyclotomic::from_int(if i == j { 1 } else { 0 }));
        }
    }
    // second orthogonality at matching columns gives the centralizer order
    for (k, c) in cents.iter().enumerate() {
        let s: Cyclotomic = t.values.iter().map(|row| &row[k] * &row[k].conj()).sum();
        assert_eq!(s, Cyclotomic::from_int(*c as i64));
    }
}

#[test]
fn class_counts_and_class_equation() {
    for (de, r) in [(2u32, 3usize), (3, 3), (4, 3), (2, 5)] {
        let classes = Multipartition::all(r, de as usize);
        let total: u128 = classes.iter().map(|eta| group_order(de, r) / centralizer_order(eta)).sum();
        assert_eq!(total, group_order(de, r));
    }
}

#[test]
fn class_rep_round_trip() {
    for de in 1..=4u32 {
        for r in 0..=4 {
            for eta in Multipartition::all(r, de as usize) {
                assert_eq!(class_rep(&eta, r).unwrap().cycle_structure(), eta);
            }
        }
    }
    let id = Multipartition::single(2, 0, part(&[1, 1, 1]));
    assert!(class_rep(&id, 3).unwrap().is_identity());
    assert!(class_rep(&id, 4).is_err());
}

#[test]
fn marin_michel_models_agree_de2() {
    for lam in Multipartition::all(3, 2) {
        assert!(mm_isomorphism_check(&lam), "{lam:?}");
    }
    assert!(mm_isomorphism_check(&mp(&[&[3], &[], &[]])));
    let lam = mp(&[&[2, 1], &[1]]);
    assert_eq!(wreath::MultiTableauModel::new(&lam).dim(), IrrepModel::new(&lam).dim());
}

fn element_strategy(de: u32, r: usize) -> impl Strategy<Value = GroupElement> {
    (proptest::collection::vec(0..de, r), Just(()).prop_perturb(move |_, mut rng| {
        let mut v: Vec<usize> = (0..r).collect();
        for i in (1..r).rev() {
            let j = rng.random_range(0..=i);
            v.swap(i, j);
        }
        v
    }))
        .prop_map(move |(z, images)| GroupElement::new(de, z, Perm::from_images(images).unwrap()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_axioms(g in element_strategy(4, 4), h in element_strategy(4, 4), k in element_strategy(4, 4)) {
        let lhs = g.multiply(&h).unwrap().multiply(&k).unwrap();
        let rhs = g.multiply(&h.multiply(&k).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert!(g.multiply(&g.inverse()).unwrap().is_identity());
        prop_assert_eq!(GroupElement::conjugate(&h, &g).unwrap().cycle_structure(), g.cycle_structure());
    }

    #[test]
    fn characters_are_class_functions(g in element_strategy(3, 3), x in element_strategy(3, 3), li in 0usize..10) {
        let labels = Multipartition::all(3, 3);
        let lam = &labels[li % labels.len()];
        let conj = GroupElement::conjugate(&x, &g).unwrap();
        let m = IrrepModel::new(lam);
        prop_assert_eq!(m.rep_matrix(&conj).unwrap().trace(), character(lam, &g.cycle_structure()));
    }

    #[test]
    fn representation_is_multiplicative(g in element_strategy(3, 3), h in element_strategy(3, 3), li in 0usize..30) {
        let labels = Multipartition::all(3, 3);
        let lam = &labels[li % labels.len()];
        let m = IrrepModel::new(lam);
        let gh = g.multiply(&h).unwrap();
        prop_assert_eq!(m.rep_matrix(&gh).unwrap(), m.rep_matrix(&g).unwrap().mul(&m.rep_matrix(&h).unwrap()));
    }
}
