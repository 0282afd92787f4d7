use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::Geder;
use crate::partitions::{Multipartition, Perm};
use crate::wreath::{centralizer_order, class_rep, GroupElement};

/// A conjugacy class `g_{η,j} = 𝔤^j g_η 𝔤^{−j}` of `N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NClass {
    pub eta: Multipartition,
    pub j: u32,
    /// Number of `N`-classes inside the `G`-class of `g_η`.
    pub split: u32,
    pub rep: GroupElement,
    pub centralizer_g: u128,
    pub centralizer_n: u128,
}

impl NClass {
    pub fn class_size(&self, group: &Geder) -> u128 {
        group.order() / self.centralizer_n
    }

    pub fn is_p_regular(&self, p: u32) -> bool {
        self.rep.is_p_regular(p)
    }
}

/// Generators of `C_G(g_η)`: for each cycle, the scalar `ζ` on its support
/// and the cycle itself; for each pair of consecutive equal cycles, the
/// permutation exchanging them.
pub fn centralizer_generators(g: &GroupElement) -> Vec<GroupElement> {
    let de = g.de();
    let r = g.rank();
    let cycles = g.cycles_with_products();
    let mut gens = Vec::new();
    for (c, _) in &cycles {
        let mut z = vec![0; r];
        for &x in c {
            z[x] = 1;
        }
        gens.push(GroupElement::diagonal(de, z));
        let mut z = vec![0; r];
        let mut images: Vec<usize> = (0..r).collect();
        for &x in c {
            z[x] = g.z()[x];
            images[x] = g.sigma().apply(x);
        }
        gens.push(GroupElement::new(de, z, Perm::from_images(images).unwrap()).unwrap());
    }
    for w in cycles.windows(2) {
        let ((c1, u1), (c2, u2)) = (&w[0], &w[1]);
        if c1.len() != c2.len() || u1 != u2 {
            continue;
        }
        // both cycles start at the point carrying the nonzero exponent
        let mut images: Vec<usize> = (0..r).collect();
        let mut a = c1[0];
        let mut b = c2[0];
        for _ in 0..c1.len() {
            images[a] = b;
            images[b] = a;
            a = g.sigma().apply(a);
            b = g.sigma().apply(b);
        }
        gens.push(GroupElement::permutation(de, Perm::from_images(images).unwrap()));
    }
    gens
}

/// `e/|ε(C_G(g))|`, the number of `N`-classes in the `G`-class of `g ∈ N`.
pub fn split_count(group: &Geder, g: &GroupElement) -> u32 {
    let de = group.de();
    let h = centralizer_generators(g)
        .iter()
        .fold(de, |acc, x| acc.gcd(&group.epsilon_exponent(x)));
    let image = de / h;
    group.e / image
}

/// The conjugacy classes of `N`, ordered by `η` then `j`.
pub fn n_classes(group: &Geder) -> Vec<NClass> {
    let de = group.de();
    let fg = group.frak_g();
    let mut out = Vec::new();
    for eta in Multipartition::all(group.r, de as usize) {
        let g = class_rep(&eta, group.r).unwrap();
        if !group.is_member(&g) {
            continue;
        }
        let split = split_count(group, &g);
        let cg = centralizer_order(&eta);
        let cn = cg * split as u128 / group.e as u128;
        let mut conj = GroupElement::identity(de, group.r);
        for j in 0..split {
            out.push(NClass {
                eta: eta.clone(),
                j,
                split,
                rep: GroupElement::conjugate(&conj, &g).unwrap(),
                centralizer_g: cg,
                centralizer_n: cn,
            });
            conj = conj.multiply(&fg.element).unwrap();
        }
    }
    out
}

/// The labels `(η, j)` of `⊔_{q|e} {g_{η,j} : η ∈ 𝒫_{r,de,q}, 0 ≤ j < q}`,
/// where each `η` is counted once, with the largest `q` for which it lies in
/// `𝒫_{r,de,q}`. Defined when `e | r`.
pub fn classes_by_parameterization(group: &Geder) -> Option<Vec<(Multipartition, u32)>> {
    if group.e == 0 || group.r % group.e as usize != 0 {
        return None;
    }
    let de = group.de() as usize;
    let in_p = |eta: &Multipartition, q: usize| {
        eta.components().iter().enumerate().all(|(u, comp)| {
            comp.is_empty() || (u % q == 0 && comp.parts().iter().all(|&l| l as usize % q == 0))
        })
    };
    let mut out = Vec::new();
    for eta in Multipartition::all(group.r, de) {
        let z_total: usize = eta.components().iter().enumerate().map(|(u, c)| u * c.len()).sum();
        if z_total % group.e as usize != 0 {
            continue;
        }
        let q = (1..=group.e as usize)
            .filter(|q| group.e as usize % q == 0 && in_p(&eta, *q))
            .max()
            .unwrap();
        for j in 0..q as u32 {
            out.push((eta.clone(), j));
        }
    }
    Some(out)
}
