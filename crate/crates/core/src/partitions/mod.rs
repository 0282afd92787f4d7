//! Partitions, multipartitions, tableaux and compositions.

mod abacus;
mod composition;
mod perm;
mod tableau;

pub use abacus::{core_quotient, enumerate_block, from_core_quotient, is_core, CoreQuotientData};
pub use composition::{coset_rep, decompose, recompose, set_tuples, SetTuple};
pub use perm::Perm;
pub use tableau::{standard_tableaux, Tableau};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A partition stored as its weakly decreasing positive parts.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(parts));
        }
        Ok(Partition(parts))
    }

    /// Sorts and drops zero parts.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().map(|&p| p as usize).sum()
    }

    /// Number of parts, `ℓ(λ)`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part `i` (0-based), zero beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let w = self.part(0);
        Partition((1..=w).map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32).collect())
    }

    /// `q⋆π = (qπ_1, …, qπ_t)`.
    pub fn q_star(&self, q: u32) -> Partition {
        Partition(self.0.iter().map(|&p| p * q).collect())
    }

    pub fn q_unstar(&self, q: u32) -> Result<Partition> {
        if let Some(&bad) = self.0.iter().find(|&&p| p % q != 0) {
            return Err(Error::NotDivisible {
                value: bad.to_string(),
                by: q as u64,
            });
        }
        Ok(Partition(self.0.iter().map(|&p| p / q).collect()))
    }

    /// Multiplicity of the part `k`.
    pub fn multiplicity(&self, k: u32) -> usize {
        self.0.iter().filter(|&&p| p == k).count()
    }

    /// All partitions of `n`, in increasing lexicographic order of parts.
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for k in (1..=max.min(n)).rev() {
                cur.push(k);
                rec(n - k, k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n as u32, n as u32, &mut Vec::new(), &mut out);
        out.sort();
        out
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.0
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "∅");
        }
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A tuple of partitions. Labels irreducible characters as well as
/// conjugacy classes (cycle structures) of `G(de,1,r)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Multipartition(Vec<Partition>);

/// The cycle structure of an element of `G(de,1,r)`: component `u` lists the
/// lengths of the cycles whose cycle product is `ζ^u`.
pub type CycleStructure = Multipartition;

impl Multipartition {
    pub fn new(components: Vec<Partition>) -> Self {
        assert!(!components.is_empty(), "a multipartition has at least one component");
        Multipartition(components)
    }

    pub fn from_parts(components: &[&[u32]]) -> Result<Self> {
        Ok(Multipartition(
            components
                .iter()
                .map(|c| Partition::new(c.to_vec()))
                .collect::<Result<_>>()?,
        ))
    }

    pub fn empty(d: usize) -> Self {
        Multipartition(vec![Partition::empty(); d])
    }

    /// The multipartition with `part` at position `i` and empty elsewhere.
    pub fn single(d: usize, i: usize, part: Partition) -> Self {
        let mut v = vec![Partition::empty(); d];
        v[i] = part;
        Multipartition(v)
    }

    pub fn components(&self) -> &[Partition] {
        &self.0
    }

    pub fn component(&self, i: usize) -> &Partition {
        &self.0[i]
    }

    /// Number of components.
    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn size(&self) -> usize {
        self.0.iter().map(Partition::size).sum()
    }

    /// `ℓ(η) = Σ ℓ(η_u)`.
    pub fn total_len(&self) -> usize {
        self.0.iter().map(Partition::len).sum()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.0.iter().map(Partition::size).collect()
    }

    /// `(λ^{(s)}, λ^{(s+1)}, …)`, indices taken cyclically.
    pub fn shift(&self, s: i64) -> Multipartition {
        let n = self.0.len() as i64;
        Multipartition(
            (0..n)
                .map(|i| self.0[(i + s).rem_euclid(n) as usize].clone())
                .collect(),
        )
    }

    /// `tα = (α, …, α)`.
    pub fn stack(&self, t: usize) -> Multipartition {
        let mut v = Vec::with_capacity(self.0.len() * t);
        for _ in 0..t {
            v.extend(self.0.iter().cloned());
        }
        Multipartition(v)
    }

    /// `β/t`: the first `arity/t` components, defined when `β` is a
    /// `t`-fold stack.
    pub fn unstack(&self, t: usize) -> Option<Multipartition> {
        let n = self.0.len();
        if t == 0 || n % t != 0 {
            return None;
        }
        let m = n / t;
        if (m..n).any(|i| self.0[i] != self.0[i - m]) {
            return None;
        }
        Some(Multipartition(self.0[..m].to_vec()))
    }

    /// All `d`-multipartitions of `n`, sorted.
    pub fn all(n: usize, d: usize) -> Vec<Multipartition> {
        let tables: Vec<Vec<Partition>> = (0..=n).map(Partition::all).collect();
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(d);
        fn rec(
            left: usize,
            d: usize,
            tables: &[Vec<Partition>],
            cur: &mut Vec<Partition>,
            out: &mut Vec<Multipartition>,
        ) {
            if cur.len() + 1 == d {
                for p in &tables[left] {
                    cur.push(p.clone());
                    out.push(Multipartition(cur.clone()));
                    cur.pop();
                }
                return;
            }
            for k in 0..=left {
                for p in &tables[k] {
                    cur.push(p.clone());
                    rec(left - k, d, tables, cur, out);
                    cur.pop();
                }
            }
        }
        rec(n, d, &tables, &mut cur, &mut out);
        out.sort();
        out
    }

    /// Componentwise p-sign `δ_p(λ) = Π δ_p(λ^{(i)})`.
    pub fn p_sign(&self, p: u32) -> i32 {
        self.0.iter().map(|c| core_quotient(c, p).sign).product()
    }
}

impl fmt::Debug for Multipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c:?}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Multipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
