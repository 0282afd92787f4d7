//! p-cores, p-quotients and p-signs on the p-abacus.
//!
//! A partition `λ` is encoded by the β-set `{λ_i + (k − i) : 1 ≤ i ≤ k}` where
//! `k` is the least multiple of `p` with `k ≥ ℓ(λ)`. Runner `j` carries the
//! beads congruent to `j` modulo `p`. Adding `p` more beads shifts every runner
//! by one position, so quotients and runner labels do not depend on `k` as long
//! as `p | k`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{Multipartition, Partition};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreQuotientData {
    pub core: Partition,
    pub quotient: Vec<Partition>,
    pub weight: usize,
    pub sign: i32,
}

fn beta_set(lambda: &Partition, k: usize) -> Vec<usize> {
    (0..k).map(|i| lambda.part(i) as usize + (k - 1 - i)).collect()
}

fn from_beta(beta: &BTreeSet<usize>) -> Partition {
    let k = beta.len();
    let parts = beta
        .iter()
        .rev()
        .enumerate()
        .map(|(i, &b)| (b - (k - 1 - i)) as u32)
        .collect();
    Partition::from_unsorted(parts)
}

fn runner_partition(positions: &[usize]) -> Partition {
    // positions sorted decreasingly
    let m = positions.len();
    Partition::from_unsorted(
        positions
            .iter()
            .enumerate()
            .map(|(i, &b)| (b - (m - 1 - i)) as u32)
            .collect(),
    )
}

/// Strips p-hooks from a β-set, always moving the largest movable bead first.
/// Returns the total leg length and the number of hooks removed.
pub(crate) fn strip_hooks(beta: &mut BTreeSet<usize>, p: usize) -> (usize, usize) {
    let mut legs = 0;
    let mut hooks = 0;
    loop {
        let movable = beta
            .iter()
            .rev()
            .copied()
            .find(|&b| b >= p && !beta.contains(&(b - p)));
        let Some(b) = movable else { break };
        legs += beta.range(b - p + 1..b).count();
        hooks += 1;
        beta.remove(&b);
        beta.insert(b - p);
    }
    (legs, hooks)
}

pub fn core_quotient(lambda: &Partition, p: u32) -> CoreQuotientData {
    assert!(p >= 2, "p must be at least 2");
    let p = p as usize;
    let k = lambda.len().div_ceil(p) * p;
    let beta = beta_set(lambda, k);
    let quotient: Vec<Partition> = (0..p)
        .map(|j| {
            let mut pos: Vec<usize> = beta.iter().filter(|&&b| b % p == j).map(|&b| b / p).collect();
            pos.sort_unstable_by(|a, b| b.cmp(a));
            runner_partition(&pos)
        })
        .collect();
    let mut set: BTreeSet<usize> = beta.into_iter().collect();
    let (legs, hooks) = strip_hooks(&mut set, p);
    let core = from_beta(&set);
    let weight: usize = quotient.iter().map(Partition::size).sum();
    debug_assert_eq!(weight, hooks);
    CoreQuotientData {
        core,
        quotient,
        weight,
        sign: if legs % 2 == 0 { 1 } else { -1 },
    }
}

pub fn is_core(lambda: &Partition, p: u32) -> bool {
    core_quotient(lambda, p).weight == 0
}

/// The partition with the given p-core and p-quotient. The weight and sign of
/// `data` are ignored.
pub fn from_core_quotient(data: &CoreQuotientData, p: u32) -> Partition {
    from_core_and_quotient(&data.core, &data.quotient, p)
}

pub(crate) fn from_core_and_quotient(core: &Partition, quotient: &[Partition], p: u32) -> Partition {
    let p = p as usize;
    assert_eq!(quotient.len(), p, "quotient must have p components");
    let longest = quotient.iter().map(Partition::len).max().unwrap_or(0);
    let k = p * (core.len() + longest + 1);
    let beta = beta_set(core, k);
    let mut out = BTreeSet::new();
    for (j, q) in quotient.iter().enumerate() {
        let m = beta.iter().filter(|&&b| b % p == j).count();
        debug_assert!(m >= q.len());
        for i in 0..m {
            let pos = q.part(i) as usize + (m - 1 - i);
            out.insert(j + p * pos);
        }
    }
    from_beta(&out)
}

/// All multipartitions with componentwise p-core `γ^{(i)}` and p-weight `w_i`.
pub fn enumerate_block(gamma: &Multipartition, w: &[u32], p: u32) -> Result<Vec<Multipartition>> {
    if gamma.arity() != w.len() {
        return Err(Error::SizeMismatch {
            expected: gamma.arity(),
            got: w.len(),
        });
    }
    for (i, c) in gamma.components().iter().enumerate() {
        if !is_core(c, p) {
            return Err(Error::NonCoreComponent(i, p));
        }
    }
    let per_component: Vec<Vec<Partition>> = gamma
        .components()
        .iter()
        .zip(w)
        .map(|(c, &wi)| {
            Multipartition::all(wi as usize, p as usize)
                .into_iter()
                .map(|q| from_core_and_quotient(c, q.components(), p))
                .collect()
        })
        .collect();
    let mut out = vec![Vec::new()];
    for options in &per_component {
        let mut next = Vec::with_capacity(out.len() * options.len());
        for prefix in &out {
            for o in options {
                let mut v: Vec<Partition> = prefix.clone();
                v.push(o.clone());
                next.push(v);
            }
        }
        out = next;
    }
    let mut out: Vec<Multipartition> = out.into_iter().map(Multipartition::new).collect();
    out.sort();
    Ok(out)
}
