//! The normal subgroup `N = G(de,e,r)` of `G = G(de,1,r)`: the linear
//! character `ε` with kernel `N`, stabilizers of irreducible characters under
//! `⟨ε⟩`, the intertwiners `M_λ`, the difference characters `Δ_{λ,k}`, the
//! constituents `χ_{λ,k}` and the conjugacy classes of `N`.

mod characters;
mod classes;

pub use characters::{character_table, chi, delta_fast, delta_trace, NCharacterTable};
pub use classes::{centralizer_generators, classes_by_parameterization, n_classes, split_count, NClass};

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::partitions::{Multipartition, Partition, Perm};
use crate::wreath::{class_rep, group_order, GroupElement, IrrepModel};

/// The group `G(de,e,r)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Geder {
    pub d: u32,
    pub e: u32,
    pub r: usize,
}

impl Geder {
    pub fn new(de: u32, e: u32, r: usize) -> Result<Self> {
        if e == 0 || de == 0 || de % e != 0 {
            return Err(Error::NotDivisible {
                value: de.to_string(),
                by: e as u64,
            });
        }
        Ok(Geder { d: de / e, e, r })
    }

    pub fn de(&self) -> u32 {
        self.d * self.e
    }

    /// `|N| = (de)^r·r!/e`.
    pub fn order(&self) -> u128 {
        group_order(self.de(), self.r) / self.e as u128
    }

    /// The exponent `a` with `ε(g) = ζ_de^a`, namely `d·Σz_i mod de`.
    pub fn epsilon_exponent(&self, g: &GroupElement) -> u32 {
        let de = self.de() as u64;
        ((self.d as u64 * (g.z_sum() % de)) % de) as u32
    }

    pub fn epsilon(&self, g: &GroupElement) -> Cyclotomic {
        Cyclotomic::zeta(self.de(), self.epsilon_exponent(g) as i64)
    }

    pub fn is_member(&self, g: &GroupElement) -> bool {
        g.de() == self.de() && g.rank() == self.r && self.epsilon_exponent(g) == 0
    }

    /// The label of `ε` itself as an irreducible character of `G`:
    /// `(r)` in position `d`, `∅` elsewhere.
    pub fn epsilon_label(&self) -> Multipartition {
        let pos = self.d as usize % self.de() as usize;
        Multipartition::single(self.de() as usize, pos, Partition::new(vec![self.r as u32]).unwrap())
    }

    /// `ε^s(λ)`, the shift of the components by `d·s`.
    pub fn twist(&self, lambda: &Multipartition, s: i64) -> Multipartition {
        lambda.shift(self.d as i64 * s)
    }

    pub fn stabilizer(&self, lambda: &Multipartition) -> StabilizerData {
        let b = (1..=self.e)
            .find(|&b| self.twist(lambda, b as i64) == *lambda)
            .unwrap();
        StabilizerData {
            label: lambda.clone(),
            b,
            order: self.e / b,
        }
    }

    /// The distinct members of `[λ]`, in the order `λ, ε(λ), ε²(λ), …`.
    pub fn orbit(&self, lambda: &Multipartition) -> Vec<Multipartition> {
        let b = self.stabilizer(lambda).b;
        (0..b as i64).map(|s| self.twist(lambda, s)).collect()
    }

    /// The lexicographically least member of `[λ]`.
    pub fn orbit_rep(&self, lambda: &Multipartition) -> Multipartition {
        self.orbit(lambda).into_iter().min().unwrap()
    }

    /// `Irr(N)`: pairs `(λ, k)` over the transversal of least orbit members.
    pub fn irreps(&self) -> Vec<NIrrepLabel> {
        let mut out = Vec::new();
        for lam in Multipartition::all(self.r, self.de() as usize) {
            if self.orbit_rep(&lam) != lam {
                continue;
            }
            let st = self.stabilizer(&lam);
            for k in 0..st.order {
                out.push(NIrrepLabel {
                    lambda: lam.clone(),
                    k,
                    b: st.b,
                    stabilizer_order: st.order,
                });
            }
        }
        out
    }

    /// The element `𝔤` with `ε(𝔤) = ζ^d` used to index split classes.
    pub fn frak_g(&self) -> Arc<FrakG> {
        static CACHE: OnceLock<RwLock<HashMap<Geder, Arc<FrakG>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
        if let Some(v) = cache.read().unwrap().get(self) {
            return v.clone();
        }
        let v = Arc::new(self.search_frak_g());
        cache.write().unwrap().entry(*self).or_insert(v).clone()
    }

    fn search_frak_g(&self) -> FrakG {
        let de = self.de();
        let e = self.e;
        if self.r == 0 {
            return FrakG {
                element: GroupElement::identity(de, 0),
                order: 1,
                kind: FrakGKind::Diagonal,
            };
        }
        // `(z; σ)` has order dividing `e` iff every cycle `(ℓ, u)` has
        // `ℓ·ord(ζ^u) | e`, and `ε = ζ^d` iff `Σu ≡ 1 mod e`.
        let admissible = |eta: &Multipartition| {
            let mut total = 0u64;
            for (u, comp) in eta.components().iter().enumerate() {
                let ord = de / (u as u32).gcd(&de);
                for &l in comp.parts() {
                    if e % (l * ord) != 0 {
                        return false;
                    }
                    total += u as u64;
                }
            }
            total % e as u64 == 1 % e as u64
        };
        let all = Multipartition::all(self.r, de as usize);
        let diagonal = all
            .iter()
            .filter(|eta| eta.components().iter().all(|c| c.parts().iter().all(|&l| l == 1)))
            .find(|eta| admissible(eta));
        if let Some(eta) = diagonal {
            return FrakG {
                element: class_rep(eta, self.r).unwrap(),
                order: e,
                kind: FrakGKind::Diagonal,
            };
        }
        if let Some(eta) = all.iter().find(|eta| admissible(eta)) {
            return FrakG {
                element: class_rep(eta, self.r).unwrap(),
                order: e,
                kind: FrakGKind::Monomial,
            };
        }
        let t = GroupElement::t(de, self.r);
        FrakG {
            order: t.order() as u32,
            element: t,
            kind: FrakGKind::Reflection,
        }
    }

    /// `M_λ` as a permutation of the basis of the induced model:
    /// `t_X ⊗ v_T ↦ t_{ε^b(X)} ⊗ v_{ε^b(T)}`.
    pub fn intertwiner(&self, model: &IrrepModel) -> Perm {
        let st = self.stabilizer(model.label());
        let shift = (self.d * st.b) as i64;
        let n = model.dim();
        let de = self.de() as i64;
        let images = (0..n)
            .map(|b| {
                let (x, ts) = model.decode(b);
                let target = model.tuple(x).shift(shift);
                let ts2: Vec<usize> = (0..de).map(|i| ts[(i + shift).rem_euclid(de) as usize]).collect();
                model.encode(model.tuple_index(&target), &ts2)
            })
            .collect();
        Perm::from_images(images).unwrap()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizerData {
    pub label: Multipartition,
    /// Least `b ≥ 1` with `ε^b(λ) = λ`; `C_λ = ⟨ε^b⟩`.
    pub b: u32,
    /// `|C_λ| = e/b`.
    pub order: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NIrrepLabel {
    pub lambda: Multipartition,
    pub k: u32,
    pub b: u32,
    pub stabilizer_order: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FrakGKind {
    /// A diagonal element of order `e`.
    Diagonal,
    /// An element of order `e` with nontrivial permutation part.
    Monomial,
    /// No element of order `e` has `ε = ζ^d`; `t` is used instead.
    Reflection,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FrakG {
    pub element: GroupElement,
    pub order: u32,
    pub kind: FrakGKind,
}
