//! Dense square matrices over [`Cyclotomic`].

use std::fmt;

use num_traits::Zero;

use crate::cyclotomic::Cyclotomic;

#[derive(Clone, PartialEq, Eq)]
pub struct CycMatrix {
    n: usize,
    data: Vec<Cyclotomic>,
}

impl CycMatrix {
    pub fn zero(n: usize) -> Self {
        CycMatrix {
            n,
            data: vec![Cyclotomic::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CycMatrix::zero(n);
        for i in 0..n {
            m.data[i * n + i] = Cyclotomic::from_int(1);
        }
        m
    }

    /// Permutation matrix sending basis vector `j` to `images[j]`.
    pub fn permutation(images: &[usize]) -> Self {
        let n = images.len();
        let mut m = CycMatrix::zero(n);
        for (j, &i) in images.iter().enumerate() {
            m.data[i * n + j] = Cyclotomic::from_int(1);
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Cyclotomic {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Cyclotomic) {
        self.data[i * self.n + j] = v;
    }

    pub fn mul(&self, other: &CycMatrix) -> CycMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = CycMatrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.data[k * n + j];
                    if !b.is_zero() {
                        out.data[i * n + j] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u64) -> CycMatrix {
        let mut acc = CycMatrix::identity(self.n);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn scale(&self, c: &Cyclotomic) -> CycMatrix {
        CycMatrix {
            n: self.n,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn trace(&self) -> Cyclotomic {
        (0..self.n).map(|i| self.data[i * self.n + i].clone()).sum()
    }

    pub fn is_identity(&self) -> bool {
        *self == CycMatrix::identity(self.n)
    }
}

impl fmt::Debug for CycMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
