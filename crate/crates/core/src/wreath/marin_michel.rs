//! The model of `W_λ` on standard multi-tableaux filled by `1, …, r`, and its
//! identification with the induced model.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::element::GroupElement;
use super::model::IrrepModel;
use super::specht::specht;
use crate::cyclotomic::Cyclotomic;
use crate::matrix::CycMatrix;
use crate::partitions::{set_tuples, standard_tableaux, Multipartition, SetTuple, Tableau};

pub struct MultiTableauModel {
    de: u32,
    r: usize,
    basis: Vec<Vec<Tableau>>,
    index: HashMap<Vec<Tableau>, usize>,
}

impl MultiTableauModel {
    pub fn new(label: &Multipartition) -> Self {
        let de = label.arity() as u32;
        let r = label.size();
        let mut basis = Vec::new();
        for x in set_tuples(&label.sizes()) {
            let per: Vec<Vec<Tableau>> = label
                .components()
                .iter()
                .zip(x.blocks())
                .map(|(shape, blk)| {
                    let entries: Vec<u32> = blk.iter().map(|&p| p as u32 + 1).collect();
                    standard_tableaux(shape, &entries).unwrap()
                })
                .collect();
            let mut acc: Vec<Vec<Tableau>> = vec![Vec::new()];
            for options in per {
                acc = acc
                    .into_iter()
                    .flat_map(|prefix| {
                        options.iter().map(move |t| {
                            let mut p = prefix.clone();
                            p.push(t.clone());
                            p
                        })
                    })
                    .collect();
            }
            basis.extend(acc);
        }
        basis.sort();
        let index = basis.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        MultiTableauModel { de, r, basis, index }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Tableau>] {
        &self.basis
    }

    fn component_of(tabs: &[Tableau], v: u32) -> usize {
        tabs.iter().position(|t| t.position(v).is_some()).unwrap()
    }

    /// `ρ'(t)T = ζ^{T(1)}·T` with `T(1)` the component containing 1.
    pub fn t_matrix(&self) -> CycMatrix {
        let mut m = CycMatrix::zero(self.dim());
        for (b, tabs) in self.basis.iter().enumerate() {
            let c = Self::component_of(tabs, 1);
            m.set(b, b, Cyclotomic::zeta(self.de, c as i64));
        }
        m
    }

    /// `ρ'(s_i)`: a plain exchange of `i, i+1` when they lie in different
    /// tableaux, the seminormal formula otherwise.
    pub fn s_matrix(&self, i: usize) -> CycMatrix {
        let (a, b) = (i as u32, i as u32 + 1);
        let mut m = CycMatrix::zero(self.dim());
        for (col, tabs) in self.basis.iter().enumerate() {
            let ca = Self::component_of(tabs, a);
            let cb = Self::component_of(tabs, b);
            let swapped: Vec<Tableau> = tabs.iter().map(|t| t.swapped(a, b)).collect();
            if ca != cb {
                m.set(self.index[&swapped], col, Cyclotomic::from_int(1));
                continue;
            }
            let t = &tabs[ca];
            let axial = t.content(b).unwrap() - t.content(a).unwrap();
            let inv = BigRational::new(1.into(), axial.into());
            m.set(col, col, Cyclotomic::rational_in(1, inv.clone()));
            if swapped[ca].is_standard() {
                let c = BigRational::one() + inv;
                if !c.is_zero() {
                    m.set(self.index[&swapped], col, Cyclotomic::rational_in(1, c));
                }
            }
        }
        m
    }

    pub fn generator_matrices(&self) -> Vec<CycMatrix> {
        let mut v = vec![self.t_matrix()];
        v.extend((1..self.r).map(|i| self.s_matrix(i)));
        v
    }

    /// `f_λ(T) = t_X ⊗ v_{θ(T_0)} ⊗ ⋯` with `X = (E(T_0), …)`, as the list of
    /// target indices in the induced model.
    pub fn identification(&self, jk: &IrrepModel) -> Vec<usize> {
        self.basis
            .iter()
            .map(|tabs| {
                let blocks = tabs
                    .iter()
                    .map(|t| t.entries().iter().map(|&v| v as usize - 1).collect())
                    .collect();
                let x = SetTuple::new(blocks).unwrap();
                let idx: Vec<usize> = tabs
                    .iter()
                    .enumerate()
                    .map(|(i, t)| specht(jk.label().component(i)).index_of(&t.theta()).unwrap())
                    .collect();
                jk.index_of(&x, &idx).unwrap()
            })
            .collect()
    }
}

/// Whether `f_λ ∘ ρ'_λ(g) = ρ_λ(g) ∘ f_λ` for every generator `g`.
pub fn mm_isomorphism_check(label: &Multipartition) -> bool {
    let jk = IrrepModel::new(label);
    let mm = MultiTableauModel::new(label);
    if jk.dim() != mm.dim() {
        return false;
    }
    let images = mm.identification(&jk);
    let mut seen = vec![false; images.len()];
    for &i in &images {
        if seen[i] {
            return false;
        }
        seen[i] = true;
    }
    let f = CycMatrix::permutation(&images);
    let gens = GroupElement::generators(jk.de(), jk.rank());
    mm.generator_matrices()
        .iter()
        .zip(&gens)
        .all(|(m, g)| f.mul(m) == jk.rep_matrix(g).unwrap().mul(&f))
}
