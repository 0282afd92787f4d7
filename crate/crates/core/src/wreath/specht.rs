//! Specht modules of the symmetric group in seminormal form.
//!
//! Basis: standard tableaux filled by `1, …, n`. With `a` the difference of
//! contents `c(i+1) − c(i)`, the transposition `s_i = (i, i+1)` acts by
//! `s_i·v_T = (1/a)·v_T + (1 + 1/a)·v_{T'}` where `T'` swaps `i` and `i+1`; the
//! second term is absent when `T'` is not standard (then `a = ±1`).

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::partitions::{standard_tableaux, Partition, Perm, Tableau};

pub type QMatrix = Vec<Vec<BigRational>>;

pub struct Specht {
    shape: Partition,
    basis: Vec<Tableau>,
    index: HashMap<Tableau, usize>,
    /// Sparse columns of `s_i`, `i = 0..n-1` swapping entries `i+1, i+2`.
    gens: Vec<Vec<Vec<(usize, BigRational)>>>,
    matrices: Mutex<HashMap<Perm, Arc<QMatrix>>>,
    characters: Mutex<HashMap<Partition, BigInt>>,
}

impl Specht {
    fn build(shape: &Partition) -> Specht {
        let n = shape.size();
        let entries: Vec<u32> = (1..=n as u32).collect();
        let basis = standard_tableaux(shape, &entries).expect("sizes agree");
        let index: HashMap<Tableau, usize> =
            basis.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        let gens = (1..n.max(1) as u32)
            .map(|i| {
                basis
                    .iter()
                    .map(|t| {
                        let a = t.content(i + 1).unwrap() - t.content(i).unwrap();
                        let a = BigRational::from_integer(BigInt::from(a));
                        let inv = a.recip();
                        let mut col = vec![(index[t], inv.clone())];
                        let sw = t.swapped(i, i + 1);
                        if sw.is_standard() {
                            let c = BigRational::one() + &inv;
                            if !c.is_zero() {
                                col.push((index[&sw], c));
                            }
                        }
                        col
                    })
                    .collect()
            })
            .collect();
        Specht {
            shape: shape.clone(),
            basis,
            index,
            gens,
            matrices: Mutex::new(HashMap::new()),
            characters: Mutex::new(HashMap::new()),
        }
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Tableau] {
        &self.basis
    }

    pub fn index_of(&self, t: &Tableau) -> Option<usize> {
        self.index.get(t).copied()
    }

    /// Sparse column `j` of `s_i` (0-based `i`, swapping entries `i+1, i+2`).
    pub fn generator_column(&self, i: usize, j: usize) -> &[(usize, BigRational)] {
        &self.gens[i][j]
    }

    /// Dense matrix of `ψ_λ(π)`.
    pub fn matrix(&self, pi: &Perm) -> Arc<QMatrix> {
        if let Some(m) = self.matrices.lock().unwrap().get(pi) {
            return m.clone();
        }
        let f = self.dim();
        let mut m: QMatrix = (0..f)
            .map(|i| (0..f).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
            .collect();
        // ψ(s_{w1}⋯s_{wk}): multiply on the right generator by generator
        for &g in &pi.reduced_word() {
            let mut next = vec![vec![BigRational::zero(); f]; f];
            for (col, entries) in self.gens[g].iter().enumerate() {
                for (row, c) in entries {
                    for (k, out) in next.iter_mut().enumerate() {
                        let v = &m[k][*row];
                        if !v.is_zero() {
                            out[col] += v * c;
                        }
                    }
                }
            }
            m = next;
        }
        let m = Arc::new(m);
        self.matrices.lock().unwrap().insert(pi.clone(), m.clone());
        m
    }

    /// `χ_λ` at cycle type `μ`, as the trace of the seminormal matrix.
    pub fn character(&self, mu: &Partition) -> BigInt {
        if let Some(v) = self.characters.lock().unwrap().get(mu) {
            return v.clone();
        }
        let m = self.matrix(&Perm::of_cycle_type(mu));
        let tr: BigRational = (0..self.dim()).map(|i| m[i][i].clone()).sum();
        assert!(tr.is_integer(), "symmetric group characters are integers");
        let v = tr.to_integer();
        self.characters.lock().unwrap().insert(mu.clone(), v.clone());
        v
    }
}

static SPECHT: OnceLock<RwLock<HashMap<Partition, Arc<Specht>>>> = OnceLock::new();

/// The shared Specht module of the given shape.
pub fn specht(shape: &Partition) -> Arc<Specht> {
    let cache = SPECHT.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(s) = cache.read().unwrap().get(shape) {
        return s.clone();
    }
    let s = Arc::new(Specht::build(shape));
    cache.write().unwrap().entry(shape.clone()).or_insert(s).clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn mat_mul(a: &QMatrix, b: &QMatrix) -> QMatrix {
        let n = a.len();
        (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| &a[i][k] * &b[k][j]).sum()).collect())
            .collect()
    }

    #[test]
    fn s3_two_dimensional() {
        let s = specht(&part(&[2, 1]));
        assert_eq!(s.dim(), 2);
        let vals: Vec<BigInt> = [&[1u32, 1, 1][..], &[2, 1], &[3]]
            .iter()
            .map(|mu| s.character(&part(mu)))
            .collect();
        assert_eq!(vals, vec![BigInt::from(2), BigInt::from(0), BigInt::from(-1)]);
    }

    #[test]
    fn homomorphism_s4() {
        for shape in Partition::all(4) {
            let s = specht(&shape);
            for a in Perm::all(4) {
                for b in [Perm::transposition(4, 0, 1), Perm::from_cycles(4, &[vec![0, 1, 2, 3]])] {
                    let lhs = s.matrix(&a.compose(&b));
                    let rhs = mat_mul(&s.matrix(&a), &s.matrix(&b));
                    assert_eq!(*lhs, rhs);
                }
            }
        }
    }
}
