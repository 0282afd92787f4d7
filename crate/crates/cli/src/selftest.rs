//! Invariant checks on small built-in instances. Randomized checks draw
//! from a ChaCha stream seeded by `--seed`.

use std::collections::BTreeSet;

use crg_core::blocks::{g_blocks, isometry, n_blocks};
use crg_core::cyclotomic::Cyclotomic;
use crg_core::geder::{character_table, delta_fast, delta_trace, Geder, NCharacterTable};
use crg_core::partitions::{Multipartition, Perm};
use crg_core::perfiso::central::central_character_blocks;
use crg_core::perfiso::{verify, IsometryContext, Verdict, VerifyOptions};
use crg_core::wreath::{character_at, group_order, GroupElement, IrrepModel};
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::commands::to_json;
use crate::{Context, Failure, SCHEMA_VERSION};

#[derive(Serialize)]
struct Check {
    name: &'static str,
    passed: bool,
    detail: String,
}

#[derive(Serialize)]
struct SelftestOut {
    schema_version: u32,
    kind: &'static str,
    seed: u64,
    passed: bool,
    checks: Vec<Check>,
}

type CheckResult = Result<String, String>;

fn random_element(rng: &mut ChaCha8Rng, de: u32, r: usize) -> GroupElement {
    let z = (0..r).map(|_| rng.random_range(0..de)).collect();
    let mut images: Vec<usize> = (0..r).collect();
    images.shuffle(rng);
    GroupElement::new(de, z, Perm::from_images(images).unwrap()).unwrap()
}

fn relations(de: u32, r: usize) -> CheckResult {
    let mut sum: u128 = 0;
    for lam in Multipartition::all(r, de as usize) {
        let m = IrrepModel::new(&lam);
        let gens = m.generator_matrices();
        let t = &gens[0];
        if !t.pow(de as u64).is_identity() || !(1..r).all(|i| gens[i].mul(&gens[i]).is_identity()) {
            return Err(format!("order relations fail for {lam}"));
        }
        if r >= 2 && t.mul(&gens[1]).mul(t).mul(&gens[1]) != gens[1].mul(t).mul(&gens[1]).mul(t) {
            return Err(format!("t s1 t s1 = s1 t s1 t fails for {lam}"));
        }
        sum += (m.dim() as u128).pow(2);
    }
    if sum != group_order(de, r) {
        return Err(format!("dimension sum {sum}"));
    }
    Ok(format!("G({de},1,{r})"))
}

fn orthogonality(t: &NCharacterTable) -> CheckResult {
    for (i, a) in t.values.iter().enumerate() {
        for (j, b) in t.values.iter().enumerate() {
            let s: Cyclotomic = a
                .iter()
                .zip(b)
                .zip(&t.classes)
                .map(|((x, y), c)| (x * &y.conj()).scale_int(&BigInt::from(c.class_size(&t.group))))
                .sum();
            let want = Cyclotomic::from_int(if i == j { t.group.order() as i64 } else { 0 });
            if s != want {
                return Err(format!("rows {i} and {j}"));
            }
        }
    }
    Ok(format!("{} rows", t.values.len()))
}

fn delta_oracle(n: &Geder) -> CheckResult {
    let classes = crg_core::geder::n_classes(n);
    let mut cells = 0;
    for lam in Multipartition::all(n.r, n.de() as usize) {
        let model = IrrepModel::new(&lam);
        for k in 0..n.stabilizer(&lam).order {
            for c in &classes {
                if delta_fast(n, &lam, k, c) != delta_trace(n, &model, k, &c.rep).map_err(|e| e.to_string())? {
                    return Err(format!("{lam} k={k} at {};{}", c.eta, c.j));
                }
                cells += 1;
            }
        }
    }
    Ok(format!("{cells} cells"))
}

fn block_oracle(de: u32, e: u32, r: usize, p: u32) -> CheckResult {
    let n = Geder::new(de, e, r).map_err(|e| e.to_string())?;
    let table = character_table(&n);
    let blocks = if e == 1 { g_blocks(de, r, p) } else { n_blocks(&n, p) }.map_err(|e| e.to_string())?;
    let ours: BTreeSet<BTreeSet<usize>> = blocks
        .iter()
        .map(|b| b.members.iter().map(|m| table.irreps.iter().position(|l| l == m).unwrap()).collect())
        .collect();
    let central: BTreeSet<BTreeSet<usize>> =
        central_character_blocks(&table, p).into_iter().map(|v| v.into_iter().collect()).collect();
    if ours != central {
        return Err(format!("G({de},{e},{r}) p={p}"));
    }
    Ok(format!("G({de},{e},{r}) p={p}: {} blocks", ours.len()))
}

fn class_functions(rng: &mut ChaCha8Rng) -> CheckResult {
    let labels = Multipartition::all(3, 3);
    for _ in 0..32 {
        let g = random_element(rng, 3, 3);
        let x = random_element(rng, 3, 3);
        let lam = &labels[rng.random_range(0..labels.len())];
        let conj = GroupElement::conjugate(&g, &x).map_err(|e| e.to_string())?;
        if character_at(lam, &conj) != character_at(lam, &x) {
            return Err(format!("{lam} at {x:?}"));
        }
    }
    Ok("32 samples".into())
}

fn conjugation_twist(rng: &mut ChaCha8Rng) -> CheckResult {
    let n = Geder::new(4, 2, 3).unwrap();
    let labels = Multipartition::all(3, 4);
    let mut done = 0;
    while done < 24 {
        let x = random_element(rng, 4, 3);
        if !n.is_member(&x) {
            continue;
        }
        let g = random_element(rng, 4, 3);
        let lam = &labels[rng.random_range(0..labels.len())];
        let st = n.stabilizer(lam);
        let model = IrrepModel::new(lam);
        let conj = GroupElement::conjugate(&g, &x).map_err(|e| e.to_string())?;
        for k in 0..st.order {
            let lhs = delta_trace(&n, &model, k, &conj).map_err(|e| e.to_string())?;
            let rhs = n.epsilon(&g).pow(k * st.b) * delta_trace(&n, &model, k, &x).map_err(|e| e.to_string())?;
            if lhs != rhs {
                return Err(format!("{lam} k={k}"));
            }
        }
        done += 1;
    }
    Ok("24 samples".into())
}

fn isometries() -> CheckResult {
    let mut pairs = 0;
    for (de, e, r, r2, p) in [(2u32, 2u32, 6usize, 6usize, 3u32), (4, 2, 3, 5, 3), (3, 3, 4, 5, 5)] {
        let a = n_blocks(&Geder::new(de, e, r).unwrap(), p).map_err(|e| e.to_string())?;
        let b = n_blocks(&Geder::new(de, e, r2).unwrap(), p).map_err(|e| e.to_string())?;
        for x in a.iter().filter(|x| !x.defect_zero) {
            for y in b.iter().filter(|y| !y.defect_zero) {
                let Ok(iso) = isometry(x, y) else { continue };
                let report = verify(&IsometryContext::new(iso), VerifyOptions::default());
                if report.verdict() != Verdict::Pass {
                    return Err(format!("G({de},{e},{r}) core {} → r'={r2} core {}", x.core, y.core));
                }
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} pairs"))
}

pub fn run(ctx: &Context, seed: u64) -> Result<(), Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    let mut record = |name: &'static str, r: CheckResult| {
        let (passed, detail) = match r {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        checks.push(Check { name, passed, detail });
    };
    record("wreath relations", relations(3, 3).and(relations(4, 2)));
    record("orthogonality", orthogonality(&character_table(&Geder::new(4, 2, 3).unwrap())));
    record("delta oracle", delta_oracle(&Geder::new(4, 2, 2).unwrap()).and(delta_oracle(&Geder::new(3, 3, 3).unwrap())));
    record("block oracle", block_oracle(2, 1, 4, 3).and(block_oracle(4, 2, 3, 3)).and(block_oracle(2, 2, 4, 5)));
    record("class functions", class_functions(&mut rng));
    record("conjugation twist", conjugation_twist(&mut rng));
    record("perfect isometries", isometries());
    let passed = checks.iter().all(|c| c.passed);
    ctx.emit(&to_json(&SelftestOut { schema_version: SCHEMA_VERSION, kind: "selftest", seed, passed, checks }))?;
    if passed {
        Ok(())
    } else {
        Err(Failure::Verdict(1))
    }
}
