//! The wreath product `G(de,1,r) = U_de ≀ S_r`: elements, conjugacy classes,
//! irreducible representations and characters.

mod element;
mod marin_michel;
mod model;
pub mod specht;

pub use element::{centralizer_order, class_rep, group_order, GroupElement};
pub use marin_michel::{mm_isomorphism_check, MultiTableauModel};
pub use model::{Column, IrrepModel};

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use rayon::prelude::*;
use serde::Serialize;

use crate::cyclotomic::Cyclotomic;
use crate::partitions::{CycleStructure, Multipartition};

type CharKey = (Multipartition, CycleStructure);

static CHARACTERS: OnceLock<RwLock<HashMap<CharKey, Cyclotomic>>> = OnceLock::new();

/// `χ̃_λ(g_η)`, the trace of `ρ_λ` at the class representative of `η`.
/// Values are cached per `(λ, η)`.
pub fn character(lambda: &Multipartition, eta: &CycleStructure) -> Cyclotomic {
    assert_eq!(lambda.arity(), eta.arity(), "labels of different groups");
    assert_eq!(lambda.size(), eta.size(), "labels of different ranks");
    let cache = CHARACTERS.get_or_init(|| RwLock::new(HashMap::new()));
    let key = (lambda.clone(), eta.clone());
    if let Some(v) = cache.read().unwrap().get(&key) {
        return v.clone();
    }
    let g = class_rep(eta, eta.size()).unwrap();
    let v = model::trace_by_cycles(lambda, &g);
    cache.write().unwrap().entry(key).or_insert(v).clone()
}

/// `χ̃_λ(g)` at an arbitrary element.
pub fn character_at(lambda: &Multipartition, g: &GroupElement) -> Cyclotomic {
    model::trace_by_cycles(lambda, g)
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassInfo {
    pub eta: CycleStructure,
    pub centralizer_order: u128,
}

/// The character table of `G(de,1,r)`; rows and columns are both indexed by
/// the sorted `de`-multipartitions of `r`.
#[derive(Clone, Debug, Serialize)]
pub struct WreathTable {
    pub de: u32,
    pub r: usize,
    pub classes: Vec<ClassInfo>,
    pub irreps: Vec<Multipartition>,
    pub values: Vec<Vec<Cyclotomic>>,
}

pub fn character_table(de: u32, r: usize) -> WreathTable {
    let labels = Multipartition::all(r, de as usize);
    let classes = labels
        .iter()
        .map(|eta| ClassInfo {
            eta: eta.clone(),
            centralizer_order: centralizer_order(eta),
        })
        .collect();
    let values = labels
        .par_iter()
        .map(|lam| {
            labels
                .iter()
                .map(|eta| character(lam, eta).embed(de).unwrap())
                .collect()
        })
        .collect();
    WreathTable {
        de,
        r,
        classes,
        irreps: labels,
        values,
    }
}
