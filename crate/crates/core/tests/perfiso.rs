use std::collections::BTreeSet;

use crg_core::blocks::{g_blocks, isometry, n_blocks, psi, BlockDescriptor, IsometryTable};
use crg_core::cyclotomic::Cyclotomic;
use crg_core::geder::{character_table, delta_fast, Geder, NClass};
use crg_core::partitions::Multipartition;
use crg_core::perfiso::central::{central_character_blocks, FiniteField, Reduction};
use crg_core::perfiso::{
    centralizer_p_exponent, i_hat, i_hat_delta, i_hat_table, prepared_table, reduced_class, slice_check,
    slice_multiplicity, slice_value, verify, IsometryContext, SliceVerdict, Verdict, VerifyOptions,
};
use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

fn mp(parts: &[&[u32]]) -> Multipartition {
    Multipartition::from_parts(parts).unwrap()
}

fn block(group: Geder, p: u32, weight: &[u32], core: Multipartition) -> BlockDescriptor {
    n_blocks(&group, p)
        .unwrap()
        .into_iter()
        .find(|b| b.weight == weight && b.core == core)
        .unwrap()
}

/// Blocks of `G(2,2,6)` and `G(2,2,8)` at `p = 3` with weight `(1,1)`, whose
/// members include characters with `|C_λ| = 2`.
fn even_stabilizer_pair() -> (BlockDescriptor, BlockDescriptor) {
    let b = block(Geder::new(2, 2, 6).unwrap(), 3, &[1, 1], mp(&[&[], &[]]));
    let b2 = block(Geder::new(2, 2, 8).unwrap(), 3, &[1, 1], mp(&[&[1], &[1]]));
    assert!(b.members.iter().any(|m| m.stabilizer_order == 2));
    (b, b2)
}

fn sample_pairs() -> Vec<IsometryTable> {
    let mut out = Vec::new();
    let (b, b2) = even_stabilizer_pair();
    out.push(isometry(&b, &b).unwrap());
    out.push(isometry(&b, &b2).unwrap());
    out.push(isometry(&b2, &b).unwrap());
    let n3 = Geder::new(4, 2, 3).unwrap();
    let n5 = Geder::new(4, 2, 5).unwrap();
    let src = n_blocks(&n3, 3).unwrap().into_iter().find(|b| !b.defect_zero).unwrap();
    let tgt = n_blocks(&n5, 3)
        .unwrap()
        .into_iter()
        .filter(|b| !b.defect_zero)
        .find_map(|b| isometry(&src, &b).ok())
        .unwrap();
    out.push(tgt);
    let n = Geder::new(3, 3, 5).unwrap();
    let b = n_blocks(&n, 5).unwrap().into_iter().find(|b| !b.defect_zero).unwrap();
    out.push(isometry(&b, &b).unwrap());
    out
}

#[test]
fn finite_fields() {
    for (p, f) in [(2u32, 3usize), (3, 2), (5, 2), (7, 1), (3, 4)] {
        let k = FiniteField::new(p, f);
        assert_eq!(k.size(), (p as u64).pow(f as u32));
        let n = k.size() - 1;
        let g = k.element_of_order(n);
        let mut seen = BTreeSet::new();
        let mut x = k.one();
        for _ in 0..n {
            assert!(seen.insert(x.clone()));
            x = k.mul(&x, &g);
        }
        assert_eq!(x, k.one());
    }
}

fn cyc_strategy(n: u32) -> impl Strategy<Value = Cyclotomic> {
    prop::collection::vec(-20i64..20, n as usize).prop_map(move |v| {
        let terms: Vec<(i64, BigInt)> = v.iter().enumerate().map(|(i, &c)| (i as i64, BigInt::from(c))).collect();
        Cyclotomic::from_exponents(n, &terms)
    })
}

proptest! {
    #[test]
    fn reduction_is_a_ring_map(a in cyc_strategy(12), b in cyc_strategy(12)) {
        let red = Reduction::new(12, 5);
        let k = &red.field;
        prop_assert_eq!(red.reduce(&(&a + &b)), k.add(&red.reduce(&a), &red.reduce(&b)));
        prop_assert_eq!(red.reduce(&(&a * &b)), k.mul(&red.reduce(&a), &red.reduce(&b)));
    }

    #[test]
    fn reduction_respects_p(a in cyc_strategy(4)) {
        let red = Reduction::new(4, 3);
        prop_assert!(red.reduce(&a.scale_int(&BigInt::from(3))).iter().all(|&c| c == 0));
    }
}

fn partition_of(blocks: &[BlockDescriptor], table: &crg_core::geder::NCharacterTable) -> BTreeSet<BTreeSet<usize>> {
    blocks
        .iter()
        .map(|b| {
            b.members
                .iter()
                .map(|m| table.irreps.iter().position(|l| l == m).unwrap())
                .collect()
        })
        .collect()
}

#[test]
fn central_characters_recover_blocks() {
    for de in 1..=3u32 {
        for e in (1..=de).filter(|e| de % e == 0) {
            for r in 1..=3 {
                for p in [3u32, 5] {
                    if de % p == 0 {
                        continue;
                    }
                    let n = Geder::new(de, e, r).unwrap();
                    let table = character_table(&n);
                    let central: BTreeSet<BTreeSet<usize>> = central_character_blocks(&table, p)
                        .into_iter()
                        .map(|v| v.into_iter().collect())
                        .collect();
                    let blocks = if e == 1 { g_blocks(de, r, p).unwrap() } else { n_blocks(&n, p).unwrap() };
                    assert_eq!(partition_of(&blocks, &table), central, "G({de},{e},{r}) p={p}");
                }
            }
        }
    }
}

fn james_kerber(eta: &Multipartition, de: u32) -> u128 {
    let mut out: u128 = 1;
    for comp in eta.components() {
        for k in 1..=comp.size() as u32 {
            let m = comp.multiplicity(k);
            out *= (1..=m as u128).product::<u128>() * ((k * de) as u128).pow(m as u32);
        }
    }
    out
}

#[test]
fn centralizer_p_parts() {
    for (de, e, r) in [(4u32, 2u32, 5usize), (6, 3, 4), (2, 2, 6), (3, 3, 5)] {
        let n = Geder::new(de, e, r).unwrap();
        for c in prepared_table(&n).classes() {
            assert_eq!(james_kerber(&c.eta, de), c.centralizer_g);
            for p in [5u32, 7, 11] {
                let v = |mut x: u128| {
                    let mut k = 0;
                    while x % p as u128 == 0 {
                        x /= p as u128;
                        k += 1;
                    }
                    k
                };
                assert_eq!(v(c.centralizer_g), centralizer_p_exponent(c, p));
            }
        }
    }
}

#[test]
fn bases_agree_on_every_cell() {
    for iso in sample_pairs() {
        let ctx = IsometryContext::new(iso);
        let n1 = ctx.source.classes().len();
        let n2 = ctx.target.classes().len();
        let fast = i_hat_table(&ctx);
        for x in 0..n1 {
            for x2 in 0..n2 {
                let v = i_hat(&ctx, x, x2);
                assert_eq!(v, i_hat_delta(&ctx, x, x2), "cell ({x},{x2})");
                assert_eq!(v, fast.get(x, x2));
            }
        }
    }
}

fn inner(a: &[Cyclotomic], b: &[Cyclotomic], classes: &[NClass]) -> Cyclotomic {
    a.iter()
        .zip(b)
        .zip(classes)
        .map(|((x, y), c)| (x * &y.conj()).div_int(&BigInt::from(c.centralizer_n)).unwrap())
        .sum()
}

#[test]
fn delta_images_match_the_closed_form() {
    for iso in sample_pairs() {
        let ctx = IsometryContext::new(iso.clone());
        let p = iso.source.p;
        let g1 = iso.source.group;
        let g2 = iso.target.group;
        let classes2 = ctx.target.classes();
        let lams: BTreeSet<_> = iso.entries.iter().map(|e| e.source.lambda.clone()).collect();
        for lam in lams {
            let entries: Vec<_> = iso.entries.iter().filter(|e| e.source.lambda == lam).collect();
            let c = entries[0].source.stabilizer_order;
            let b = entries[0].source.b;
            let target = entries[0].target.lambda.clone();
            let mu = g1
                .orbit(&lam)
                .into_iter()
                .find(|m| crg_core::blocks::core_and_weight(m, p) == (iso.source.core.clone(), iso.source.weight.clone()))
                .unwrap();
            let image = psi(&mu, &iso.source.core, &iso.source.weight, &iso.target_core, &iso.source.weight, p).unwrap();
            for i in 0..c {
                // I(Δ_{λ,i}) = Σ_j ζ^{dbij} I(χ_{λ,j})
                let mut pushed = vec![Cyclotomic::zero_in(g2.de()); classes2.len()];
                for e in &entries {
                    let row = ctx.target.row(&e.target);
                    let phase = Cyclotomic::zeta(g1.de(), (g1.d * b * i * e.source.k) as i64);
                    for (slot, v) in pushed.iter_mut().zip(&row.values) {
                        *slot = &*slot + &(&phase * v).scale_int(&BigInt::from(e.sign));
                    }
                }
                let q = (c / i.gcd(&c)) as usize;
                let sign = mu.unstack(q).unwrap().p_sign(p) * image.unstack(q).unwrap().p_sign(p);
                for (x2, cl) in classes2.iter().enumerate() {
                    let want = delta_fast(&g2, &target, i, cl).scale_int(&BigInt::from(sign));
                    assert_eq!(pushed[x2], want, "λ={lam:?} i={i}");
                }
            }
        }
    }
}

#[test]
fn isometry_preserves_inner_products() {
    for iso in sample_pairs() {
        let ctx = IsometryContext::new(iso.clone());
        let classes2 = ctx.target.classes();
        let rows: Vec<Vec<Cyclotomic>> = iso
            .entries
            .iter()
            .map(|e| {
                ctx.target
                    .row(&e.target)
                    .values
                    .iter()
                    .map(|v| v.scale_int(&BigInt::from(e.sign)))
                    .collect()
            })
            .collect();
        for (i, a) in rows.iter().enumerate() {
            for (j, b) in rows.iter().enumerate() {
                let want = Cyclotomic::from_int(if i == j { 1 } else { 0 });
                assert_eq!(inner(a, b, classes2), want);
            }
        }
    }
}

#[test]
fn ihat_reproduces_source_characters() {
    for iso in sample_pairs().into_iter().take(3) {
        let ctx = IsometryContext::new(iso.clone());
        let t = i_hat_table(&ctx);
        let classes2 = ctx.target.classes();
        for e in &iso.entries {
            let src = ctx.source.row(&e.source);
            let img: Vec<Cyclotomic> = ctx
                .target
                .row(&e.target)
                .values
                .iter()
                .map(|v| v.scale_int(&BigInt::from(e.sign)))
                .collect();
            for x in 0..ctx.source.classes().len() {
                let column: Vec<Cyclotomic> = (0..classes2.len()).map(|x2| t.get(x, x2)).collect();
                assert_eq!(inner(&column, &img, classes2), src.values[x].conj());
            }
        }
    }
}

#[test]
fn identity_isometry_gives_block_sum() {
    let (b, _) = even_stabilizer_pair();
    let ctx = IsometryContext::new(isometry(&b, &b).unwrap());
    let t = i_hat_table(&ctx);
    let rows: Vec<_> = b.members.iter().map(|m| ctx.source.row(m)).collect();
    let n = ctx.source.classes().len();
    for x in 0..n {
        for x2 in 0..n {
            let direct: Cyclotomic = rows.iter().map(|r| r.values[x].conj() * r.values[x2].clone()).sum();
            assert_eq!(t.get(x, x2), direct);
        }
    }
}

#[test]
fn verification_passes_on_sample_pairs() {
    for iso in sample_pairs() {
        let ctx = IsometryContext::new(iso);
        let report = verify(&ctx, VerifyOptions { keep_ihat: true, skip_slices: false });
        assert_eq!(report.condition1.verdict, Verdict::Pass);
        assert_eq!(report.condition2.verdict, Verdict::Pass);
        assert_eq!(report.slice_check, SliceVerdict::Pass);
        assert_eq!(report.verdict(), Verdict::Pass);
        let t = report.ihat_values.as_ref().unwrap();
        for (x, l) in report.source_classes.iter().enumerate() {
            for (x2, l2) in report.target_classes.iter().enumerate() {
                if l.p_regular != l2.p_regular {
                    assert!(t.is_zero(x, x2));
                }
            }
        }
    }
}

#[test]
fn slice_decomposition_and_its_multiplicity() {
    // ε-stable covering block: the multiplicity is e
    let (b, b2) = even_stabilizer_pair();
    assert_eq!(b.covered_by.len(), 1);
    let ctx = IsometryContext::new(isometry(&b, &b2).unwrap());
    assert_eq!(slice_multiplicity(&ctx), 2);
    for x in 0..ctx.source.classes().len() {
        for x2 in 0..ctx.target.classes().len() {
            assert!(slice_check(&ctx, x, x2));
        }
    }
    // a non-stable covering block: e·Î overcounts by the orbit length
    let n = Geder::new(4, 2, 3).unwrap();
    let src = n_blocks(&n, 3).unwrap().into_iter().find(|b| !b.defect_zero).unwrap();
    assert_eq!(src.covered_by.len(), 2);
    let ctx = IsometryContext::new(isometry(&src, &src).unwrap());
    assert_eq!(slice_multiplicity(&ctx), 1);
    let mut nonzero = 0;
    for x in 0..ctx.source.classes().len() {
        for x2 in 0..ctx.source.classes().len() {
            assert!(slice_check(&ctx, x, x2));
            let v = i_hat(&ctx, x, x2);
            let doubled = v.scale_int(&BigInt::from(2));
            if !v.is_zero() {
                nonzero += 1;
                assert_ne!(doubled, slice_value(&ctx, x, x2));
            }
        }
    }
    assert!(nonzero > 0);
}

#[test]
fn slice_with_only_the_trivial_term() {
    // a class that is q-bad for every q > 1 sees only Ĵ_1
    let (b, _) = even_stabilizer_pair();
    let ctx = IsometryContext::new(isometry(&b, &b).unwrap());
    let classes = ctx.source.classes();
    let x = classes.iter().position(|c| reduced_class(&c.eta, 2).is_none()).unwrap();
    for x2 in 0..classes.len() {
        let e_hat = i_hat(&ctx, x, x2).scale_int(&BigInt::from(2));
        assert_eq!(e_hat, slice_value(&ctx, x, x2));
    }
}

#[test]
fn slice_decomposition_on_g636() {
    let n = Geder::new(6, 3, 6).unwrap();
    let pos: Vec<_> = n_blocks(&n, 5).unwrap().into_iter().filter(|b| !b.defect_zero).collect();
    let iso = pos.iter().skip(1).find_map(|b| isometry(&pos[0], b).ok()).unwrap();
    let ctx = IsometryContext::new(iso);
    let report = verify(&ctx, VerifyOptions::default());
    assert_eq!(report.slice_check, SliceVerdict::Pass);
    assert_eq!(report.verdict(), Verdict::Pass);
}

#[test]
fn corrupted_isometry_is_localized() {
    let (b, b2) = even_stabilizer_pair();
    let good = isometry(&b, &b2).unwrap();
    let mut bad = good.clone();
    bad.entries[0].sign = -bad.entries[0].sign;
    let good_ctx = IsometryContext::new(good);
    let bad_ctx = IsometryContext::new(bad);
    let t_good = i_hat_table(&good_ctx);
    let report = verify(&bad_ctx, VerifyOptions { keep_ihat: true, skip_slices: false });
    assert_ne!(report.verdict(), Verdict::Pass);
    let t_bad = report.ihat_values.as_ref().unwrap();
    let witnesses: Vec<_> = report
        .condition1
        .witnesses
        .iter()
        .chain(&report.condition2.witnesses)
        .chain(&report.slice_witnesses)
        .collect();
    assert!(!witnesses.is_empty());
    for w in witnesses {
        assert_ne!(t_good.get(w.x, w.x2), t_bad.get(w.x, w.x2));
    }
    assert_eq!(report.slice_check, SliceVerdict::Fail);
}

#[test]
fn defect_zero_pairs() {
    let n = Geder::new(4, 2, 3).unwrap();
    let n2 = Geder::new(4, 2, 4).unwrap();
    let a: Vec<_> = n_blocks(&n, 3).unwrap().into_iter().filter(|b| b.defect_zero).take(4).collect();
    let b: Vec<_> = n_blocks(&n2, 3).unwrap().into_iter().filter(|b| b.defect_zero).take(4).collect();
    for x in &a {
        for y in &b {
            let ctx = IsometryContext::new(isometry(x, y).unwrap());
            let quick = verify(&ctx, VerifyOptions::default());
            assert!(quick.defect_zero_shortcut);
            assert_eq!(quick.verdict(), Verdict::Pass);
            let full = verify(&ctx, VerifyOptions { keep_ihat: true, skip_slices: false });
            assert!(!full.defect_zero_shortcut);
            assert_eq!(full.verdict(), Verdict::Pass);
            assert_eq!(full.slice_check, SliceVerdict::NotApplicable);
            let t = full.ihat_values.unwrap();
            let r1 = ctx.source.row(&x.members[0]);
            let r2 = ctx.target.row(&y.members[0]);
            for (i, u) in r1.values.iter().enumerate() {
                for (j, v) in r2.values.iter().enumerate() {
                    assert_eq!(t.get(i, j), u.conj() * v.clone());
                }
            }
        }
    }
}

#[test]
fn report_serializes() {
    let (b, _) = even_stabilizer_pair();
    let ctx = IsometryContext::new(isometry(&b, &b).unwrap());
    let report = verify(&ctx, VerifyOptions { keep_ihat: true, skip_slices: false });
    let json = serde_json::to_value(&report).unwrap();
    assert_eq!(json["condition1"]["verdict"], "PASS");
    assert_eq!(json["slice_check"], "PASS");
    let n = report.source_classes.len();
    assert_eq!(json["ihat_values"]["values"].as_array().unwrap().len(), n);
}
