use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::{CycleStructure, Multipartition, Partition, Perm};

/// An element `(z; σ)` of `G(de,1,r)`, acting on `C^r` as the monomial matrix
/// `diag(ζ^{z_1}, …, ζ^{z_r})·P_σ` where `P_σ e_i = e_{σ(i)}`. Hence
/// `σ^{−1}(z_1, …, z_r)σ = (z_{σ(1)}, …, z_{σ(r)})`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupElement {
    de: u32,
    z: Vec<u32>,
    sigma: Perm,
}

impl GroupElement {
    pub fn new(de: u32, z: Vec<u32>, sigma: Perm) -> Result<Self> {
        if z.len() != sigma.degree() {
            return Err(Error::RankMismatch {
                expected: sigma.degree(),
                got: z.len(),
            });
        }
        Ok(GroupElement {
            de,
            z: z.into_iter().map(|x| x % de).collect(),
            sigma,
        })
    }

    pub fn identity(de: u32, r: usize) -> Self {
        GroupElement {
            de,
            z: vec![0; r],
            sigma: Perm::identity(r),
        }
    }

    /// `t = (ζ, 1, …, 1)`.
    pub fn t(de: u32, r: usize) -> Self {
        let mut g = GroupElement::identity(de, r);
        g.z[0] = 1 % de;
        g
    }

    /// `s_i = (i, i+1)` for `1 ≤ i < r`.
    pub fn s(de: u32, r: usize, i: usize) -> Self {
        GroupElement {
            de,
            z: vec![0; r],
            sigma: Perm::transposition(r, i - 1, i),
        }
    }

    /// `t, s_1, …, s_{r−1}`.
    pub fn generators(de: u32, r: usize) -> Vec<GroupElement> {
        let mut v = vec![GroupElement::t(de, r)];
        v.extend((1..r).map(|i| GroupElement::s(de, r, i)));
        v
    }

    pub fn diagonal(de: u32, z: Vec<u32>) -> Self {
        let r = z.len();
        GroupElement::new(de, z, Perm::identity(r)).unwrap()
    }

    pub fn permutation(de: u32, sigma: Perm) -> Self {
        GroupElement {
            de,
            z: vec![0; sigma.degree()],
            sigma,
        }
    }

    pub fn de(&self) -> u32 {
        self.de
    }

    pub fn rank(&self) -> usize {
        self.z.len()
    }

    pub fn z(&self) -> &[u32] {
        &self.z
    }

    pub fn sigma(&self) -> &Perm {
        &self.sigma
    }

    /// Sum of the exponents, i.e. the exponent of the determinant of the
    /// diagonal part.
    pub fn z_sum(&self) -> u64 {
        self.z.iter().map(|&x| x as u64).sum()
    }

    pub fn multiply(&self, h: &GroupElement) -> Result<GroupElement> {
        if self.rank() != h.rank() || self.de != h.de {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                got: h.rank(),
            });
        }
        let inv = self.sigma.inverse();
        let z = (0..self.rank())
            .map(|i| (self.z[i] + h.z[inv.apply(i)]) % self.de)
            .collect();
        Ok(GroupElement {
            de: self.de,
            z,
            sigma: self.sigma.compose(&h.sigma),
        })
    }

    pub fn inverse(&self) -> GroupElement {
        let z = (0..self.rank())
            .map(|j| (self.de - self.z[self.sigma.apply(j)]) % self.de)
            .collect();
        GroupElement {
            de: self.de,
            z,
            sigma: self.sigma.inverse(),
        }
    }

    /// `g x g^{−1}`.
    pub fn conjugate(g: &GroupElement, x: &GroupElement) -> Result<GroupElement> {
        g.multiply(x)?.multiply(&g.inverse())
    }

    pub fn pow(&self, k: u64) -> GroupElement {
        let mut acc = GroupElement::identity(self.de, self.rank());
        for _ in 0..k {
            acc = acc.multiply(self).unwrap();
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.z.iter().all(|&x| x == 0) && self.sigma.is_identity()
    }

    pub fn order(&self) -> u64 {
        let mut k = 1;
        let mut acc = self.clone();
        while !acc.is_identity() {
            acc = acc.multiply(self).unwrap();
            k += 1;
        }
        k
    }

    /// The cycles of `σ`, each with its cycle-product exponent.
    pub fn cycles_with_products(&self) -> Vec<(Vec<usize>, u32)> {
        self.sigma
            .cycles()
            .into_iter()
            .map(|c| {
                let u = c.iter().map(|&k| self.z[k]).sum::<u32>() % self.de;
                (c, u)
            })
            .collect()
    }

    pub fn cycle_structure(&self) -> CycleStructure {
        let mut parts = vec![Vec::new(); self.de as usize];
        for (c, u) in self.cycles_with_products() {
            parts[u as usize].push(c.len() as u32);
        }
        Multipartition::new(parts.into_iter().map(Partition::from_unsorted).collect())
    }

    /// Whether the permutation part has no cycle of length divisible by `p`.
    pub fn is_p_regular(&self, p: u32) -> bool {
        self.sigma.cycles().iter().all(|c| c.len() as u32 % p != 0)
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}; {:?})", self.z, self.sigma)
    }
}

/// The representative of the class with cycle structure `η`: cycles
/// `(L_j+1 ⋯ L_j+ℓ_j)` laid out consecutively, components in increasing `u`
/// and parts in decreasing order, with `ζ^u` at position `L_j+1` only.
pub fn class_rep(eta: &CycleStructure, r: usize) -> Result<GroupElement> {
    if eta.size() != r {
        return Err(Error::RankMismatch {
            expected: r,
            got: eta.size(),
        });
    }
    let de = eta.arity() as u32;
    let mut z = vec![0; r];
    let mut cycles = Vec::new();
    let mut start = 0;
    for (u, comp) in eta.components().iter().enumerate() {
        for &l in comp.parts() {
            z[start] = u as u32;
            cycles.push((start..start + l as usize).collect());
            start += l as usize;
        }
    }
    GroupElement::new(de, z, Perm::from_cycles(r, &cycles))
}

/// `|C_G(g_η)| = Π_{u,k} m_{u,k}!·(k·de)^{m_{u,k}}`, where `m_{u,k}` counts
/// the parts of `η_u` equal to `k`.
pub fn centralizer_order(eta: &CycleStructure) -> u128 {
    let de = eta.arity() as u128;
    let mut out: u128 = 1;
    for comp in eta.components() {
        let mut parts: Vec<u32> = comp.parts().to_vec();
        parts.dedup();
        for k in parts {
            let m = comp.multiplicity(k) as u128;
            for i in 1..=m {
                out = out.checked_mul(i * k as u128 * de).expect("centralizer order overflow");
            }
        }
    }
    out
}

/// `|G(de,1,r)| = (de)^r·r!`.
pub fn group_order(de: u32, r: usize) -> u128 {
    let mut o: u128 = 1;
    for i in 1..=r as u128 {
        o = o.checked_mul(i * de as u128).expect("group order overflow");
    }
    o
}
