//! Ordered set partitions `X = (X_0, …, X_{d−1})` of `{0, …, r−1}` with
//! prescribed block sizes, and the coset representatives `t_X`.

use serde::{Deserialize, Serialize};

use super::Perm;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SetTuple {
    blocks: Vec<Vec<usize>>,
}

impl SetTuple {
    /// Validates that the blocks are disjoint and cover `{0, …, r−1}`; sorts
    /// each block.
    pub fn new(mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        let r: usize = blocks.iter().map(Vec::len).sum();
        let mut seen = vec![false; r];
        for b in &mut blocks {
            b.sort_unstable();
            for &x in b.iter() {
                if x >= r || seen[x] {
                    return Err(Error::MalformedSetTuple(format!("{b:?}")));
                }
                seen[x] = true;
            }
        }
        Ok(SetTuple { blocks })
    }

    /// The tuple with `X_i = E_i = {C_i, …, C_i + c_i − 1}`.
    pub fn identity(c: &[usize]) -> Self {
        let mut start = 0;
        let blocks = c
            .iter()
            .map(|&ci| {
                let b = (start..start + ci).collect();
                start += ci;
                b
            })
            .collect();
        SetTuple { blocks }
    }

    /// Builds the tuple from the block index of every point.
    pub fn from_assignment(assign: &[usize], d: usize) -> Self {
        let mut blocks = vec![Vec::new(); d];
        for (x, &i) in assign.iter().enumerate() {
            blocks[i].push(x);
        }
        SetTuple { blocks }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &[usize] {
        &self.blocks[i]
    }

    pub fn composition(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    /// Block index of every point.
    pub fn assignment(&self) -> Vec<usize> {
        let mut a = vec![0; self.rank()];
        for (i, b) in self.blocks.iter().enumerate() {
            for &x in b {
                a[x] = i;
            }
        }
        a
    }

    /// `(X_s, X_{s+1}, …)`, indices taken cyclically.
    pub fn shift(&self, s: i64) -> SetTuple {
        let n = self.blocks.len() as i64;
        SetTuple {
            blocks: (0..n)
                .map(|i| self.blocks[(i + s).rem_euclid(n) as usize].clone())
                .collect(),
        }
    }

    /// `σ(X) = (σ(X_0), …, σ(X_{d−1}))`.
    pub fn permuted(&self, sigma: &Perm) -> SetTuple {
        let mut blocks: Vec<Vec<usize>> = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|&x| sigma.apply(x)).collect())
            .collect();
        for b in &mut blocks {
            b.sort_unstable();
        }
        SetTuple { blocks }
    }
}

/// All `X ∈ 𝒳_c`, in lexicographic order of their assignment vectors.
pub fn set_tuples(c: &[usize]) -> Vec<SetTuple> {
    let r: usize = c.iter().sum();
    let d = c.len();
    let mut out = Vec::new();
    let mut left = c.to_vec();
    let mut assign = Vec::with_capacity(r);
    fn rec(r: usize, d: usize, left: &mut [usize], assign: &mut Vec<usize>, out: &mut Vec<SetTuple>) {
        if assign.len() == r {
            out.push(SetTuple::from_assignment(assign, d));
            return;
        }
        for i in 0..d {
            if left[i] > 0 {
                left[i] -= 1;
                assign.push(i);
                rec(r, d, left, assign, out);
                assign.pop();
                left[i] += 1;
            }
        }
    }
    rec(r, d, &mut left, &mut assign, &mut out);
    out
}

/// `t_X`, defined by `t_X(C_i + j) = x_{i,j}` with each block increasing.
pub fn coset_rep(x: &SetTuple) -> Perm {
    Perm::from_images(x.blocks.iter().flatten().copied().collect()).expect("set tuple is a partition")
}

/// The unique factorization `σ = t_X σ̃_0 ⋯ σ̃_{d−1}` with `σ̃_i` supported on
/// `E_i`. Each `σ̃_i` is returned as a permutation of `{0, …, c_i − 1}`.
pub fn decompose(sigma: &Perm, c: &[usize]) -> Result<(SetTuple, Vec<Perm>)> {
    let r: usize = c.iter().sum();
    if sigma.degree() != r {
        return Err(Error::RankMismatch {
            expected: r,
            got: sigma.degree(),
        });
    }
    let x = SetTuple::identity(c).permuted(sigma);
    let mut start = 0;
    let mut locals = Vec::with_capacity(c.len());
    for (i, &ci) in c.iter().enumerate() {
        let block = x.block(i);
        let images = (0..ci)
            .map(|j| block.binary_search(&sigma.apply(start + j)).unwrap())
            .collect();
        locals.push(Perm::from_images(images).unwrap());
        start += ci;
    }
    Ok((x, locals))
}

/// Inverse of [`decompose`].
pub fn recompose(x: &SetTuple, locals: &[Perm]) -> Perm {
    let r = x.rank();
    let mut images: Vec<usize> = (0..r).collect();
    let mut start = 0;
    for l in locals {
        for j in 0..l.degree() {
            images[start + j] = start + l.apply(j);
        }
        start += l.degree();
    }
    coset_rep(x).compose(&Perm::from_images(images).unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_tuple() {
        let c = [2, 0, 3];
        assert!(coset_rep(&SetTuple::identity(&c)).is_identity());
        assert_eq!(set_tuples(&c).len(), 10);
    }

    #[test]
    fn decompose_round_trip() {
        let c = [2, 1];
        for sigma in Perm::all(3) {
            let (x, locals) = decompose(&sigma, &c).unwrap();
            assert_eq!(recompose(&x, &locals), sigma);
        }
        for x in set_tuples(&c) {
            let (y, locals) = decompose(&coset_rep(&x), &c).unwrap();
            assert_eq!(y, x);
            assert!(locals.iter().all(Perm::is_identity));
        }
    }

    #[test]
    fn malformed() {
        assert!(SetTuple::new(vec![vec![0, 1], vec![1]]).is_err());
        assert!(SetTuple::new(vec![vec![0, 3], vec![1]]).is_err());
        assert!(SetTuple::new(vec![vec![2, 0], vec![1]]).is_ok());
    }
}
