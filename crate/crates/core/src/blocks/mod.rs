//! p-blocks of `G(de,1,r)` and `G(de,e,r)` for primes `p ∤ de`, the
//! core-transplant bijection `ψ` between blocks of equal weight, and the
//! signed isometry it induces on characters.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geder::{Geder, NIrrepLabel};
use crate::partitions::{core_quotient, enumerate_block, from_core_quotient, CoreQuotientData, Multipartition, Partition};

/// A p-block. G-blocks of `G(de,1,r)` are described with `e = 1`, so their
/// members all have `k = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDescriptor {
    pub group: Geder,
    pub p: u32,
    /// Componentwise p-core of the covering G-block chosen as representative.
    pub core: Multipartition,
    pub weight: Vec<u32>,
    pub defect_zero: bool,
    pub members: Vec<NIrrepLabel>,
    /// Indices into `g_blocks` of the G-blocks covering this block.
    pub covered_by: Vec<usize>,
}

impl BlockDescriptor {
    /// `E_{γ,w}` for the representative G-block.
    pub fn e_set(&self) -> Vec<Multipartition> {
        enumerate_block(&self.core, &self.weight, self.p).unwrap()
    }
}

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|k| k * k <= p).all(|k| p % k != 0)
}

fn check_prime(p: u32, de: u32) -> Result<()> {
    if !is_prime(p) || de % p == 0 {
        return Err(Error::BadPrime { p, de });
    }
    Ok(())
}

/// Componentwise `(core, weight)` of `λ`.
pub fn core_and_weight(lambda: &Multipartition, p: u32) -> (Multipartition, Vec<u32>) {
    let data: Vec<CoreQuotientData> = lambda.components().iter().map(|c| core_quotient(c, p)).collect();
    (
        Multipartition::new(data.iter().map(|d| d.core.clone()).collect()),
        data.iter().map(|d| d.weight as u32).collect(),
    )
}

/// The p-blocks of `G(de,1,r)`, sorted by `(core, weight)`.
pub fn g_blocks(de: u32, r: usize, p: u32) -> Result<Vec<BlockDescriptor>> {
    check_prime(p, de)?;
    let group = Geder::new(de, 1, r)?;
    let mut by_key: BTreeMap<(Multipartition, Vec<u32>), Vec<NIrrepLabel>> = BTreeMap::new();
    for lam in Multipartition::all(r, de as usize) {
        let key = core_and_weight(&lam, p);
        by_key.entry(key).or_default().push(NIrrepLabel {
            lambda: lam,
            k: 0,
            b: 1,
            stabilizer_order: 1,
        });
    }
    Ok(by_key
        .into_iter()
        .enumerate()
        .map(|(i, ((core, weight), members))| BlockDescriptor {
            group,
            p,
            defect_zero: weight.iter().all(|&w| w == 0),
            core,
            weight,
            members,
            covered_by: vec![i],
        })
        .collect())
}

/// The p-blocks of `N = G(de,e,r)`. Each `⟨ε⟩`-orbit of positive-defect
/// G-blocks covers one N-block containing every constituent of its members;
/// a defect-0 orbit covers one N-block per constituent.
pub fn n_blocks(group: &Geder, p: u32) -> Result<Vec<BlockDescriptor>> {
    let gb = g_blocks(group.de(), group.r, p)?;
    let index: BTreeMap<(Multipartition, Vec<u32>), usize> = gb
        .iter()
        .enumerate()
        .map(|(i, b)| ((b.core.clone(), b.weight.clone()), i))
        .collect();
    let de = group.de() as i64;
    let mut assigned = vec![false; gb.len()];
    let mut out = Vec::new();
    for (i, b) in gb.iter().enumerate() {
        if assigned[i] {
            continue;
        }
        let mut orbit = Vec::new();
        for s in 0..group.e as i64 {
            let core = group.twist(&b.core, s);
            let weight = rotate(&b.weight, group.d as i64 * s, de);
            let j = index[&(core, weight)];
            if !orbit.contains(&j) {
                orbit.push(j);
            }
        }
        orbit.sort_unstable();
        for &j in &orbit {
            assigned[j] = true;
        }
        let mut reps: Vec<Multipartition> = orbit
            .iter()
            .flat_map(|&j| gb[j].members.iter().map(|m| group.orbit_rep(&m.lambda)))
            .collect();
        reps.sort();
        reps.dedup();
        let constituents: Vec<NIrrepLabel> = reps
            .iter()
            .flat_map(|lam| {
                let st = group.stabilizer(lam);
                (0..st.order).map(move |k| NIrrepLabel {
                    lambda: lam.clone(),
                    k,
                    b: st.b,
                    stabilizer_order: st.order,
                })
            })
            .collect();
        let make = |members: Vec<NIrrepLabel>| BlockDescriptor {
            group: *group,
            p,
            core: b.core.clone(),
            weight: b.weight.clone(),
            defect_zero: b.defect_zero,
            members,
            covered_by: orbit.clone(),
        };
        if b.defect_zero {
            out.extend(constituents.into_iter().map(|c| make(vec![c])));
        } else {
            out.push(make(constituents));
        }
    }
    Ok(out)
}

/// `(w_s, w_{s+1}, …)`, cyclically.
fn rotate(w: &[u32], s: i64, n: i64) -> Vec<u32> {
    (0..n).map(|i| w[(i + s).rem_euclid(n) as usize]).collect()
}

/// `ψ(λ)`: replace each component's p-core `γ^{(i)}` by `γ'^{(i)}`, keeping
/// its p-quotient.
pub fn psi(lambda: &Multipartition, core: &Multipartition, weight: &[u32], core2: &Multipartition, weight2: &[u32], p: u32) -> Result<Multipartition> {
    if weight != weight2 {
        return Err(Error::WeightMismatch {
            left: weight.to_vec(),
            right: weight2.to_vec(),
        });
    }
    let (c, w) = core_and_weight(lambda, p);
    if &c != core || w != weight {
        return Err(Error::WeightMismatch {
            left: w,
            right: weight.to_vec(),
        });
    }
    Ok(Multipartition::new(
        lambda
            .components()
            .iter()
            .zip(core2.components())
            .map(|(comp, g2)| {
                let mut data = core_quotient(comp, p);
                data.core = g2.clone();
                from_core_quotient(&data, p)
            })
            .collect(),
    ))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsometryEntry {
    pub source: NIrrepLabel,
    pub sign: i32,
    pub target: NIrrepLabel,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsometryTable {
    pub source: BlockDescriptor,
    pub target: BlockDescriptor,
    /// Core of the G-block covering the target that `ψ` maps into.
    pub target_core: Multipartition,
    pub entries: Vec<IsometryEntry>,
}

impl IsometryTable {
    pub fn is_bijective(&self) -> bool {
        let mut s: Vec<_> = self.entries.iter().map(|e| &e.source).collect();
        let mut t: Vec<_> = self.entries.iter().map(|e| &e.target).collect();
        s.sort();
        t.sort();
        let src_ok = s.windows(2).all(|w| w[0] != w[1]) && s.len() == self.source.members.len();
        let tgt_ok = t.windows(2).all(|w| w[0] != w[1]) && t.len() == self.target.members.len();
        src_ok && tgt_ok
    }
}

/// A member of `[λ]` lying in `E_{γ,w}`.
fn orbit_member_in(group: &Geder, lambda: &Multipartition, core: &Multipartition, weight: &[u32], p: u32) -> Option<Multipartition> {
    group
        .orbit(lambda)
        .into_iter()
        .find(|m| core_and_weight(m, p) == (core.clone(), weight.to_vec()))
}

/// The G-block covering `b2` whose weight equals that of `b`'s representative.
pub fn matching_cover(b: &BlockDescriptor, b2: &BlockDescriptor) -> Result<(Multipartition, Vec<u32>)> {
    let group = &b2.group;
    let de = group.de() as i64;
    for s in 0..group.e as i64 {
        let w = rotate(&b2.weight, group.d as i64 * s, de);
        if w == b.weight {
            return Ok((group.twist(&b2.core, s), w));
        }
    }
    Err(Error::WeightMismatch {
        left: b.weight.clone(),
        right: b2.weight.clone(),
    })
}

/// The isometry `I: C Irr(b) → C Irr(b')`. On positive defect,
/// `χ_{λ,i} ↦ δ_p(λ)δ_p(ψ(λ))·χ_{ψ(λ),i'}` where `i' = i` unless `|C_λ|` is
/// even and `δ_p(λ/|C_λ|)δ_p(ψ(λ)/|C_λ|) = −1`, in which case the eigenvalue
/// labels of `−M` shift `i` by `|C_λ|/2`. Defect-0 blocks are paired directly.
pub fn isometry(b: &BlockDescriptor, b2: &BlockDescriptor) -> Result<IsometryTable> {
    if b.p != b2.p || b.group.d != b2.group.d || b.group.e != b2.group.e {
        return Err(Error::WeightMismatch {
            left: b.weight.clone(),
            right: b2.weight.clone(),
        });
    }
    if b.defect_zero != b2.defect_zero {
        return Err(Error::MixedDefect);
    }
    let p = b.p;
    if b.defect_zero {
        return Ok(IsometryTable {
            source: b.clone(),
            target: b2.clone(),
            target_core: b2.core.clone(),
            entries: vec![IsometryEntry {
                source: b.members[0].clone(),
                sign: 1,
                target: b2.members[0].clone(),
            }],
        });
    }
    let (core2, weight2) = matching_cover(b, b2)?;
    let group = &b.group;
    let group2 = &b2.group;
    let mut entries = Vec::with_capacity(b.members.len());
    for m in &b.members {
        let mu = orbit_member_in(group, &m.lambda, &b.core, &b.weight, p).expect("member outside its block");
        let image = psi(&mu, &b.core, &b.weight, &core2, &weight2, p)?;
        let st = group.stabilizer(&mu);
        let st2 = group2.stabilizer(&image);
        if st.order != st2.order || st.b != st2.b {
            return Err(Error::StabilizerMismatch);
        }
        let c = st.order;
        let sign = mu.p_sign(p) * image.p_sign(p);
        let mut k = m.k;
        if c % 2 == 0 {
            let base = mu.unstack(c as usize).unwrap();
            let base2 = image.unstack(c as usize).unwrap();
            if base.p_sign(p) * base2.p_sign(p) == -1 {
                k = (k + c / 2) % c;
            }
        }
        entries.push(IsometryEntry {
            source: m.clone(),
            sign,
            target: NIrrepLabel {
                lambda: group2.orbit_rep(&image),
                k,
                b: st2.b,
                stabilizer_order: c,
            },
        });
    }
    Ok(IsometryTable {
        source: b.clone(),
        target: b2.clone(),
        target_core: core2,
        entries,
    })
}

/// A member of the positive-defect G-block with core `γ` and weight `w`
/// fixed by no nontrivial power of `ε`, built by placing distinct p-quotients
/// on the components congruent to the first nonzero weight modulo the period
/// of the block. Returns the member and the rotation `t` used to bring a
/// nonzero weight to position 0.
pub fn non_stable_member(group: &Geder, core: &Multipartition, weight: &[u32], p: u32) -> Option<(Multipartition, usize)> {
    let de = group.de() as usize;
    let d = group.d as usize;
    // least k | e with the block ε^k-stable
    let k = (1..=group.e as usize)
        .filter(|k| group.e as usize % k == 0)
        .find(|&k| group.twist(core, k as i64) == *core && rotate(weight, (d * k) as i64, de as i64) == weight)?;
    let period = k * d;
    let t = (0..period).find(|&i| weight[i] != 0)?;
    let rc = core.shift(t as i64);
    let rw = rotate(weight, t as i64, de as i64);
    let with_quotient = |g: &Partition, w: u32, runner: usize| {
        let mut quotient = vec![Partition::empty(); p as usize];
        if w > 0 {
            quotient[runner] = Partition::new(vec![w]).unwrap();
        }
        from_core_quotient(
            &CoreQuotientData {
                core: g.clone(),
                quotient,
                weight: w as usize,
                sign: 1,
            },
            p,
        )
    };
    let first = with_quotient(rc.component(0), rw[0], 0);
    let other = with_quotient(rc.component(0), rw[0], p as usize - 1);
    let mut comps: Vec<Partition> = (0..de)
        .map(|i| {
            let j = i % period;
            with_quotient(rc.component(j), rw[j], 0)
        })
        .collect();
    for (i, c) in comps.iter_mut().enumerate() {
        if i == 0 {
            *c = first.clone();
        } else if i % period == 0 {
            *c = other.clone();
        } else if i < period && i % d == 0 && rw[i] == rw[0] && rc.component(i) == rc.component(0) {
            *c = other.clone();
        }
    }
    let rotated = Multipartition::new(comps);
    Some((rotated.shift(-(t as i64)), t))
}

/// `𝒫_{γ,w,k} = {(λ, i) : λ ∈ E_{γ,w}, 0 ≤ i < |C_λ|, b_λ·i = k}`.
pub fn slice(group: &Geder, core: &Multipartition, weight: &[u32], p: u32, k: u32) -> Result<Vec<(Multipartition, u32)>> {
    let mut out = Vec::new();
    for lam in enumerate_block(core, weight, p)? {
        let st = group.stabilizer(&lam);
        if k % st.b == 0 && k / st.b < st.order {
            out.push((lam, k / st.b));
        }
    }
    Ok(out)
}

/// `α(λ, i) = λ/q`.
pub fn slice_alpha(lambda: &Multipartition, q: u32) -> Option<Multipartition> {
    lambda.unstack(q as usize)
}

/// `β(μ) = (qμ, k/b_μ)`, with `b_μ` taken in `G(de/q, e/q, r/q)`.
pub fn slice_beta(group: &Geder, mu: &Multipartition, q: u32, k: u32) -> Option<(Multipartition, u32)> {
    let small = Geder::new(group.de() / q, group.e / q, mu.size()).ok()?;
    let b = small.stabilizer(mu).b;
    (k % b == 0).then(|| (mu.stack(q as usize), k / b))
}
