//! The induced model `W_λ = Ind_{G_c}^{G}(V_λ)` of an irreducible
//! representation of `G(de,1,r)`, with basis `t_X ⊗ v_{T_0} ⊗ ⋯ ⊗ v_{T_{de−1}}`.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::element::GroupElement;
use super::specht::{specht, Specht};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::matrix::CycMatrix;
use crate::partitions::{set_tuples, Multipartition, Perm, SetTuple, Tableau};

/// Image of one basis vector: `ζ^{exponent}·Σ coeff·b_target`.
#[derive(Clone, Debug)]
pub struct Column {
    pub exponent: u32,
    pub entries: Vec<(usize, BigRational)>,
}

pub struct IrrepModel {
    de: u32,
    r: usize,
    label: Multipartition,
    comps: Vec<usize>,
    tuples: Vec<SetTuple>,
    tuple_index: HashMap<Vec<usize>, usize>,
    spechts: Vec<Arc<Specht>>,
    strides: Vec<usize>,
    block: usize,
}

impl IrrepModel {
    pub fn new(label: &Multipartition) -> Self {
        let de = label.arity() as u32;
        let comps = label.sizes();
        let r = comps.iter().sum();
        let tuples = set_tuples(&comps);
        let tuple_index = tuples
            .iter()
            .enumerate()
            .map(|(i, x)| (x.assignment(), i))
            .collect();
        let spechts: Vec<Arc<Specht>> = label.components().iter().map(specht).collect();
        let mut strides = vec![0; spechts.len()];
        let mut block = 1;
        for i in (0..spechts.len()).rev() {
            strides[i] = block;
            block *= spechts[i].dim();
        }
        IrrepModel {
            de,
            r,
            label: label.clone(),
            comps,
            tuples,
            tuple_index,
            spechts,
            strides,
            block,
        }
    }

    pub fn label(&self) -> &Multipartition {
        &self.label
    }

    pub fn de(&self) -> u32 {
        self.de
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    pub fn dim(&self) -> usize {
        self.tuples.len() * self.block
    }

    pub fn composition(&self) -> &[usize] {
        &self.comps
    }

    /// Basis element `b` as `(X, (T_0, …, T_{de−1}))`, tableaux filled by
    /// `1, …, c_i`.
    pub fn basis_element(&self, b: usize) -> (SetTuple, Vec<Tableau>) {
        let (x, ts) = self.decode(b);
        let tabs = ts
            .iter()
            .zip(&self.spechts)
            .map(|(&t, s)| s.basis()[t].clone())
            .collect();
        (self.tuples[x].clone(), tabs)
    }

    /// Index of `(X, tableau indices)`.
    pub fn index_of(&self, x: &SetTuple, tabs: &[usize]) -> Option<usize> {
        let xi = *self.tuple_index.get(&x.assignment())?;
        Some(self.encode(xi, tabs))
    }

    pub(crate) fn decode(&self, b: usize) -> (usize, Vec<usize>) {
        let x = b / self.block;
        let mut rest = b % self.block;
        let ts = self
            .strides
            .iter()
            .map(|&s| {
                let t = rest / s;
                rest %= s;
                t
            })
            .collect();
        (x, ts)
    }

    pub(crate) fn encode(&self, x: usize, ts: &[usize]) -> usize {
        x * self.block + ts.iter().zip(&self.strides).map(|(t, s)| t * s).sum::<usize>()
    }

    pub(crate) fn tuple(&self, x: usize) -> &SetTuple {
        &self.tuples[x]
    }

    pub(crate) fn tuple_index(&self, x: &SetTuple) -> usize {
        self.tuple_index[&x.assignment()]
    }

    fn check(&self, g: &GroupElement) -> Result<()> {
        if g.rank() != self.r || g.de() != self.de {
            return Err(Error::RankMismatch {
                expected: self.r,
                got: g.rank(),
            });
        }
        Ok(())
    }

    /// `ρ_λ(g)` applied to basis vector `b`. With `g = zσ` and
    /// `σ t_X = t_{X'} σ̃_0 ⋯ σ̃_{de−1}`, the image is
    /// `α_c(z_{t_{X'}(1)}, …)·t_{X'} ⊗ ψ(σ̃_0)v_{T_0} ⊗ ⋯` where component `i`
    /// contributes the linear character `ζ ↦ ζ^i`.
    pub fn apply(&self, g: &GroupElement, b: usize) -> Result<Column> {
        self.check(g)?;
        let (xi, ts) = self.decode(b);
        let x = &self.tuples[xi];
        let sigma = g.sigma();
        let target = x.permuted(sigma);
        let mut exponent: u64 = 0;
        for (i, blk) in target.blocks().iter().enumerate() {
            let s: u64 = blk.iter().map(|&k| g.z()[k] as u64).sum();
            exponent += i as u64 * s;
        }
        let exponent = (exponent % self.de as u64) as u32;
        let mut entries: Vec<(Vec<usize>, BigRational)> = vec![(Vec::new(), BigRational::one())];
        for (i, blk) in x.blocks().iter().enumerate() {
            let tblk = target.block(i);
            let local: Vec<usize> = blk
                .iter()
                .map(|&p| tblk.binary_search(&sigma.apply(p)).unwrap())
                .collect();
            let local = Perm::from_images(local).unwrap();
            let m = self.spechts[i].matrix(&local);
            let col: Vec<(usize, &BigRational)> = (0..self.spechts[i].dim())
                .filter(|&row| !m[row][ts[i]].is_zero())
                .map(|row| (row, &m[row][ts[i]]))
                .collect();
            let mut next = Vec::with_capacity(entries.len() * col.len());
            for (prefix, c) in &entries {
                for (row, v) in &col {
                    let mut p = prefix.clone();
                    p.push(*row);
                    next.push((p, c * *v));
                }
            }
            entries = next;
        }
        let ti = self.tuple_index(&target);
        Ok(Column {
            exponent,
            entries: entries
                .into_iter()
                .map(|(tabs, c)| (self.encode(ti, &tabs), c))
                .collect(),
        })
    }

    /// The single entry of `ρ_λ(g)` in row `row` and column `b`, as
    /// `(exponent, coefficient)` of `coefficient·ζ^exponent`; `None` if zero.
    pub fn entry(&self, g: &GroupElement, row: usize, b: usize) -> Result<Option<(u32, BigRational)>> {
        self.check(g)?;
        let (xi, ts) = self.decode(b);
        let (yi, tr) = self.decode(row);
        let x = &self.tuples[xi];
        let sigma = g.sigma();
        let target = x.permuted(sigma);
        if self.tuples[yi] != target {
            return Ok(None);
        }
        let mut coeff = BigRational::one();
        for (i, blk) in x.blocks().iter().enumerate() {
            let tblk = target.block(i);
            let local: Vec<usize> = blk
                .iter()
                .map(|&p| tblk.binary_search(&sigma.apply(p)).unwrap())
                .collect();
            let m = self.spechts[i].matrix(&Perm::from_images(local).unwrap());
            let v = &m[tr[i]][ts[i]];
            if v.is_zero() {
                return Ok(None);
            }
            coeff *= v;
        }
        let mut exponent: u64 = 0;
        for (i, blk) in target.blocks().iter().enumerate() {
            let s: u64 = blk.iter().map(|&k| g.z()[k] as u64).sum();
            exponent += i as u64 * s;
        }
        Ok(Some(((exponent % self.de as u64) as u32, coeff)))
    }

    pub fn rep_matrix(&self, g: &GroupElement) -> Result<CycMatrix> {
        self.check(g)?;
        let n = self.dim();
        let mut m = CycMatrix::zero(n);
        for b in 0..n {
            let col = self.apply(g, b)?;
            let z = Cyclotomic::zeta(self.de, col.exponent as i64);
            for (row, c) in col.entries {
                m.set(row, b, z.scale(&c));
            }
        }
        Ok(m)
    }

    /// Matrices of `t, s_1, …, s_{r−1}`.
    pub fn generator_matrices(&self) -> Vec<CycMatrix> {
        GroupElement::generators(self.de, self.r)
            .iter()
            .map(|g| self.rep_matrix(g).unwrap())
            .collect()
    }

    /// Exact trace of `ρ_λ(g)` from the diagonal blocks: the sum runs over the
    /// `X` fixed by `σ`, i.e. over assignments of the cycles of `σ` to
    /// components with the right sizes.
    pub fn trace(&self, g: &GroupElement) -> Result<Cyclotomic> {
        self.check(g)?;
        Ok(trace_by_cycles(&self.label, g))
    }
}

pub(crate) fn trace_by_cycles(label: &Multipartition, g: &GroupElement) -> Cyclotomic {
    let de = label.arity();
    let cycles = g.cycles_with_products();
    let caps = label.sizes();
    let spechts: Vec<Arc<Specht>> = label.components().iter().map(specht).collect();
    let mut acc = vec![BigInt::zero(); de];
    let mut assigned: Vec<Vec<u32>> = vec![Vec::new(); de];
    let mut left = caps.clone();

    #[allow(clippy::too_many_arguments)]
    fn rec(
        k: usize,
        cycles: &[(Vec<usize>, u32)],
        de: usize,
        exp: usize,
        left: &mut [usize],
        assigned: &mut [Vec<u32>],
        spechts: &[Arc<Specht>],
        acc: &mut [BigInt],
    ) {
        if k == cycles.len() {
            let mut v = BigInt::one();
            for (i, s) in spechts.iter().enumerate() {
                let mu = crate::partitions::Partition::from_unsorted(assigned[i].clone());
                v *= s.character(&mu);
                if v.is_zero() {
                    return;
                }
            }
            acc[exp % de] += v;
            return;
        }
        let (c, u) = &cycles[k];
        let len = c.len();
        for i in 0..de {
            if left[i] >= len {
                left[i] -= len;
                assigned[i].push(len as u32);
                rec(k + 1, cycles, de, exp + i * *u as usize, left, assigned, spechts, acc);
                assigned[i].pop();
                left[i] += len;
            }
        }
    }
    rec(0, &cycles, de, 0, &mut left, &mut assigned, &spechts, &mut acc);
    let terms: Vec<(i64, BigInt)> = acc
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k as i64, c))
        .collect();
    Cyclotomic::from_exponents(de as u32, &terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_model() {
        let lam = Multipartition::from_parts(&[&[3], &[]]).unwrap();
        let m = IrrepModel::new(&lam);
        assert_eq!(m.dim(), 1);
        for g in GroupElement::generators(2, 3) {
            assert!(m.rep_matrix(&g).unwrap().is_identity());
        }
    }

    #[test]
    fn dimension_formula() {
        let lam = Multipartition::from_parts(&[&[2, 1], &[1], &[1, 1]]).unwrap();
        let m = IrrepModel::new(&lam);
        // 6!/(3!·1!·2!) · 2 · 1 · 1
        assert_eq!(m.dim(), 120);
    }
}
