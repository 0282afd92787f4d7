use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use super::{FrakG, Geder, NClass, NIrrepLabel};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::partitions::Multipartition;
use crate::wreath::{character, GroupElement, IrrepModel};

/// `Δ_{λ,k}(g) = Tr(M_λ^k ∘ ρ_λ(g))`, by summing the diagonal of the
/// product of the two matrices entry by entry.
pub fn delta_trace(group: &Geder, model: &IrrepModel, k: u32, g: &GroupElement) -> Result<Cyclotomic> {
    if !group.is_member(g) {
        return Err(Error::NotInSubgroup);
    }
    let m = group.intertwiner(model);
    let mut pk = crate::partitions::Perm::identity(model.dim());
    for _ in 0..k {
        pk = m.compose(&pk);
    }
    let inv = pk.inverse();
    let de = group.de() as usize;
    let mut acc = vec![num_rational::BigRational::from_integer(0.into()); de];
    for b in 0..model.dim() {
        if let Some((exponent, c)) = model.entry(g, inv.apply(b), b)? {
            acc[exponent as usize] += c;
        }
    }
    let mut out = Cyclotomic::zero_in(group.de());
    for (i, c) in acc.into_iter().enumerate() {
        if !num_traits::Zero::is_zero(&c) {
            out = out + Cyclotomic::zeta(group.de(), i as i64).scale(&c);
        }
    }
    Ok(out)
}

/// `Δ_{λ,k}` at a class representative of `N` by the closed formula: with
/// `b' = gcd(k, |C_λ|)` and `q = |C_λ|/b'`, the value is `0` unless every
/// cycle length and every cycle-product exponent of `g_η` is divisible by
/// `q`, and is otherwise `q^{ℓ(η)}·χ̃_μ(g_η^{(q)})` times `ε^{kb}(𝔤^j)`.
pub fn delta_fast(group: &Geder, lambda: &Multipartition, k: u32, class: &NClass) -> Cyclotomic {
    let de = group.de();
    let st = group.stabilizer(lambda);
    let c = st.order;
    let kk = k % c;
    let bp = if kk == 0 { c } else { kk.gcd(&c) };
    let q = (c / bp) as usize;
    let eta = &class.eta;
    let value = if q == 1 {
        character(lambda, eta)
    } else {
        for (u, comp) in eta.components().iter().enumerate() {
            if comp.is_empty() {
                continue;
            }
            if u % q != 0 || comp.parts().iter().any(|&l| l as usize % q != 0) {
                return Cyclotomic::zero_in(de);
            }
        }
        let small = de as usize / q;
        let mu = Multipartition::new(lambda.components()[..small].to_vec());
        let reduced = Multipartition::new(
            (0..small)
                .map(|i| eta.component(i * q).q_unstar(q as u32).unwrap())
                .collect(),
        );
        let factor = BigInt::from(q).pow(eta.total_len() as u32);
        character(&mu, &reduced).scale_int(&factor)
    };
    let phase = (group.d as u64 * k as u64 * st.b as u64 * class.j as u64) % de as u64;
    value.embed(de).unwrap() * Cyclotomic::zeta(de, phase as i64)
}

/// `χ_{λ,k} = (1/|C_λ|)·Σ_j ζ^{−d·b·k·j}·Δ_{λ,j}`.
pub fn chi(group: &Geder, lambda: &Multipartition, k: u32, class: &NClass) -> Cyclotomic {
    let de = group.de();
    let st = group.stabilizer(lambda);
    let c = st.order;
    let mut acc = Cyclotomic::zero_in(de);
    for j in 0..c {
        let phase = -((group.d * st.b * k * j) as i64);
        acc = acc + delta_fast(group, lambda, j, class) * Cyclotomic::zeta(de, phase);
    }
    acc.div_int(&BigInt::from(c)).unwrap()
}

/// The character table of `N`, with rows `(λ, k)` over the orbit transversal
/// and columns the classes of [`super::n_classes`].
#[derive(Clone, Debug, Serialize)]
pub struct NCharacterTable {
    pub group: Geder,
    pub frak_g: FrakG,
    pub classes: Vec<NClass>,
    pub irreps: Vec<NIrrepLabel>,
    pub values: Vec<Vec<Cyclotomic>>,
}

pub fn character_table(group: &Geder) -> NCharacterTable {
    let classes = super::n_classes(group);
    let irreps = group.irreps();
    let values = irreps
        .par_iter()
        .map(|lab| classes.iter().map(|c| chi(group, &lab.lambda, lab.k, c)).collect())
        .collect();
    NCharacterTable {
        group: *group,
        frak_g: (*group.frak_g()).clone(),
        classes,
        irreps,
        values,
    }
}
