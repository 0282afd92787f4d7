//! Evaluation of `Î(x,x') = Σ_{χ ∈ Irr(b)} conj(χ(x))·I(χ)(x')` on pairs of
//! class representatives and verification of the two perfect-isometry
//! conditions, with the slice decomposition of `e·Î` as a cross-check.

pub mod central;
mod lattice;

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::blocks::{psi, IsometryTable};
use crate::cyclotomic::Cyclotomic;
use crate::geder::{chi, delta_fast, n_classes, Geder, NCharacterTable, NClass, NIrrepLabel};
use crate::partitions::{enumerate_block, Multipartition};
use crate::wreath::character;
use lattice::{to_cyclotomic, IntCyc};

/// Class representatives of a group with its character rows evaluated on
/// demand and cached per label.
pub struct PreparedTable {
    group: Geder,
    classes: Vec<NClass>,
    rows: RwLock<HashMap<NIrrepLabel, Arc<Row>>>,
}

/// Values of one irreducible character on the class representatives.
pub struct Row {
    pub values: Vec<Cyclotomic>,
    ints: Vec<IntCyc>,
}

impl Row {
    fn new(values: Vec<Cyclotomic>, n: u32) -> Self {
        let ints = values
            .iter()
            .map(|v| IntCyc::from_cyclotomic(v, n).expect("character value is not an algebraic integer"))
            .collect();
        Row { values, ints }
    }
}

impl PreparedTable {
    pub fn new(group: Geder) -> Self {
        PreparedTable {
            group,
            classes: n_classes(&group),
            rows: RwLock::new(HashMap::new()),
        }
    }

    pub fn from_table(table: NCharacterTable) -> Self {
        let n = table.group.de();
        let rows = table
            .irreps
            .into_iter()
            .zip(table.values)
            .map(|(l, v)| (l, Arc::new(Row::new(v, n))))
            .collect();
        PreparedTable {
            group: table.group,
            classes: table.classes,
            rows: RwLock::new(rows),
        }
    }

    pub fn group(&self) -> Geder {
        self.group
    }

    pub fn classes(&self) -> &[NClass] {
        &self.classes
    }

    /// Seeds the row cache with externally stored values.
    pub fn insert_row(&self, label: NIrrepLabel, values: Vec<Cyclotomic>) {
        assert_eq!(values.len(), self.classes.len(), "row length does not match the class list");
        let row = Arc::new(Row::new(values, self.group.de()));
        self.rows.write().unwrap().entry(label).or_insert(row);
    }

    pub fn has_row(&self, label: &NIrrepLabel) -> bool {
        self.rows.read().unwrap().contains_key(label)
    }

    pub fn row(&self, label: &NIrrepLabel) -> Arc<Row> {
        if let Some(r) = self.rows.read().unwrap().get(label) {
            return r.clone();
        }
        let values = self
            .classes
            .iter()
            .map(|c| chi(&self.group, &label.lambda, label.k, c))
            .collect();
        let row = Arc::new(Row::new(values, self.group.de()));
        self.rows.write().unwrap().entry(label.clone()).or_insert(row).clone()
    }
}

/// The prepared table of `group`, shared across the process.
pub fn prepared_table(group: &Geder) -> Arc<PreparedTable> {
    static CACHE: OnceLock<RwLock<HashMap<Geder, Arc<PreparedTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(t) = cache.read().unwrap().get(group) {
        return t.clone();
    }
    let t = Arc::new(PreparedTable::new(*group));
    cache.write().unwrap().entry(*group).or_insert(t).clone()
}

fn p_valuation(mut n: u128, p: u32) -> u32 {
    let p = p as u128;
    let mut v = 0;
    while n > 0 && n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// `v_p(|C_N(x)|)`.
pub fn centralizer_p_exponent(class: &NClass, p: u32) -> u32 {
    p_valuation(class.centralizer_n, p)
}

/// An isometry between blocks with both character tables at hand.
pub struct IsometryContext {
    pub iso: IsometryTable,
    pub source: Arc<PreparedTable>,
    pub target: Arc<PreparedTable>,
    /// `(source row, sign, target row)` per entry.
    pairs: Vec<(Arc<Row>, i64, Arc<Row>)>,
}

impl IsometryContext {
    pub fn new(iso: IsometryTable) -> Self {
        let source = prepared_table(&iso.source.group);
        let target = prepared_table(&iso.target.group);
        Self::with_tables(iso, source, target)
    }

    pub fn with_tables(iso: IsometryTable, source: Arc<PreparedTable>, target: Arc<PreparedTable>) -> Self {
        let pairs = iso
            .entries
            .iter()
            .map(|e| (source.row(&e.source), e.sign as i64, target.row(&e.target)))
            .collect();
        IsometryContext {
            iso,
            source,
            target,
            pairs,
        }
    }

    pub fn p(&self) -> u32 {
        self.iso.source.p
    }

    fn de(&self) -> u32 {
        self.source.group().de()
    }

    fn cell_int(&self, x: usize, x2: usize) -> IntCyc {
        let mut acc = IntCyc::zero(self.de() as usize);
        for (r, s, r2) in &self.pairs {
            IntCyc::add_product(&mut acc.0, &r.ints[x].conj(), &r2.ints[x2], *s);
        }
        acc
    }
}

/// `Î(x,x')` in the χ-basis, with `x`, `x'` indices into the class lists.
pub fn i_hat(ctx: &IsometryContext, x: usize, x2: usize) -> Cyclotomic {
    let mut acc = Cyclotomic::zero_in(ctx.de());
    for (r, s, r2) in &ctx.pairs {
        let term = r.values[x].conj() * r2.values[x2].clone();
        acc = acc + term.scale_int(&BigInt::from(*s));
    }
    acc
}

/// `Î(x,x')` in the basis `{Δ_{λ,i}}` with dual basis `Δ_{λ,i}/|C_λ|`,
/// using `I(Δ_{λ,i}) = δ_p(λ/q)δ_p(ψ(λ)/q)·Δ_{ψ(λ),i}`, `q = |C_λ|/gcd(i,|C_λ|)`.
/// Only meaningful for positive defect.
pub fn i_hat_delta(ctx: &IsometryContext, x: usize, x2: usize) -> Cyclotomic {
    let b = &ctx.iso.source;
    let group = b.group;
    let group2 = ctx.iso.target.group;
    let p = b.p;
    let class = &ctx.source.classes()[x];
    let class2 = &ctx.target.classes()[x2];
    let mut acc = Cyclotomic::zero_in(group.de());
    let mut seen = Vec::new();
    for entry in &ctx.iso.entries {
        if seen.contains(&entry.source.lambda) {
            continue;
        }
        seen.push(entry.source.lambda.clone());
        let mu = group
            .orbit(&entry.source.lambda)
            .into_iter()
            .find(|m| crate::blocks::core_and_weight(m, p) == (b.core.clone(), b.weight.clone()))
            .unwrap();
        let image = psi(&mu, &b.core, &b.weight, &ctx.iso.target_core, &b.weight, p).unwrap();
        let c = entry.source.stabilizer_order;
        for i in 0..c {
            let q = (c / i.gcd(&c)) as usize;
            let sign = mu.unstack(q).unwrap().p_sign(p) * image.unstack(q).unwrap().p_sign(p);
            let left = delta_fast(&group, &entry.source.lambda, i, class).conj();
            let right = delta_fast(&group2, &entry.target.lambda, i, class2);
            let term = (left * right).scale_int(&BigInt::from(sign));
            acc = acc + term.div_int(&BigInt::from(c)).unwrap();
        }
    }
    acc
}

/// `Î` on all pairs of class representatives, as power-basis coordinates in
/// `Q(ζ_de)`.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
pub struct IhatTable {
    pub conductor: u32,
    pub coords: Vec<Vec<Vec<i64>>>,
}

impl IhatTable {
    pub fn get(&self, x: usize, x2: usize) -> Cyclotomic {
        to_cyclotomic(self.conductor, &self.coords[x][x2])
    }

    pub fn is_zero(&self, x: usize, x2: usize) -> bool {
        self.coords[x][x2].iter().all(|&c| c == 0)
    }
}

impl Serialize for IhatTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let values: Vec<Vec<Cyclotomic>> = (0..self.coords.len())
            .map(|i| (0..self.coords[i].len()).map(|j| self.get(i, j)).collect())
            .collect();
        let mut st = s.serialize_struct("IhatTable", 2)?;
        st.serialize_field("conductor", &self.conductor)?;
        st.serialize_field("values", &values)?;
        st.end()
    }
}

pub fn i_hat_table(ctx: &IsometryContext) -> IhatTable {
    let n1 = ctx.source.classes().len();
    let n2 = ctx.target.classes().len();
    let coords = (0..n1)
        .into_par_iter()
        .map(|x| (0..n2).map(|x2| ctx.cell_int(x, x2).reduce()).collect())
        .collect();
    IhatTable {
        conductor: ctx.de(),
        coords,
    }
}

/// One term `q` of the slice decomposition: the wreath-level isometry `Ĵ_q`
/// between the blocks of `G(de/q,1,r/q)` and `G(de/q,1,r'/q)` with cores
/// `γ/q`, `γ'/q` and weight `w/q`, evaluated at the reduced classes.
struct SliceTerm {
    q: u32,
    signs: Vec<i64>,
    /// Per source class, `χ̃_μ(g_η^{(q)})` for each `μ`, or `None` if q-bad.
    left: Vec<Option<Vec<IntCyc>>>,
    right: Vec<Option<Vec<IntCyc>>>,
}

/// `(η_0/q, η_q/q, …)` when `g_η` is q-good.
pub fn reduced_class(eta: &Multipartition, q: u32) -> Option<Multipartition> {
    for (u, comp) in eta.components().iter().enumerate() {
        if !comp.is_empty() && (u as u32 % q != 0 || comp.parts().iter().any(|&l| l % q != 0)) {
            return None;
        }
    }
    let small = eta.arity() / q as usize;
    Some(Multipartition::new(
        (0..small)
            .map(|i| eta.component(i * q as usize).q_unstar(q).unwrap())
            .collect(),
    ))
}

fn periodic(w: &[u32], q: usize) -> Option<Vec<u32>> {
    let m = w.len() / q;
    (w.len() % q == 0 && (m..w.len()).all(|i| w[i] == w[i - m])).then(|| w[..m].to_vec())
}

fn values_at(lambdas: &[Multipartition], classes: &[NClass], q: u32, n: u32) -> Vec<Option<Vec<IntCyc>>> {
    classes
        .iter()
        .map(|c| {
            let theta = reduced_class(&c.eta, q)?;
            Some(
                lambdas
                    .iter()
                    .map(|m| IntCyc::from_cyclotomic(&character(m, &theta), n).unwrap())
                    .collect(),
            )
        })
        .collect()
}

fn slice_terms(ctx: &IsometryContext) -> Vec<SliceTerm> {
    let b = &ctx.iso.source;
    let group = b.group;
    let p = b.p;
    let n = group.de();
    let mut out = Vec::new();
    for q in (1..=group.e).filter(|q| group.e % q == 0) {
        let (Some(core), Some(core2), Some(w)) = (
            b.core.unstack(q as usize),
            ctx.iso.target_core.unstack(q as usize),
            periodic(&b.weight, q as usize),
        ) else {
            continue;
        };
        let mus = enumerate_block(&core, &w, p).unwrap();
        let images: Vec<Multipartition> = mus.iter().map(|m| psi(m, &core, &w, &core2, &w, p).unwrap()).collect();
        let signs = mus
            .iter()
            .zip(&images)
            .map(|(m, i)| (m.p_sign(p) * i.p_sign(p)) as i64)
            .collect();
        out.push(SliceTerm {
            q,
            signs,
            left: values_at(&mus, ctx.source.classes(), q, n),
            right: values_at(&images, ctx.target.classes(), q, n),
        });
    }
    out
}

/// `Σ_{s<q, (s,q)=1} ζ_q^{s·m}`.
fn ramanujan_sum(q: u32, m: i64) -> i64 {
    let g = (m.rem_euclid(q as i64) as u32).gcd(&q);
    let mut total = 0i64;
    for d in (1..=g).filter(|d| g % d == 0) {
        total += mobius(q / d) * d as i64;
    }
    total
}

fn mobius(mut n: u32) -> i64 {
    let mut sign = 1;
    let mut k = 2;
    while k * k <= n {
        if n % k == 0 {
            n /= k;
            if n % k == 0 {
                return 0;
            }
            sign = -sign;
        }
        k += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

fn slice_cell(ctx: &IsometryContext, terms: &[SliceTerm], x: usize, x2: usize) -> IntCyc {
    let c = &ctx.source.classes()[x];
    let c2 = &ctx.target.classes()[x2];
    let mut acc = IntCyc::zero(ctx.de() as usize);
    for t in terms {
        let (Some(a), Some(b)) = (&t.left[x], &t.right[x2]) else {
            continue;
        };
        let weight = (t.q as i64).pow((c.eta.total_len() + c2.eta.total_len()) as u32)
            * ramanujan_sum(t.q, c2.j as i64 - c.j as i64);
        if weight == 0 {
            continue;
        }
        for ((s, u), v) in t.signs.iter().zip(a).zip(b) {
            IntCyc::add_product(&mut acc.0, &u.conj(), v, s * weight);
        }
    }
    acc
}

/// `e/k`, where `k` is the number of `G`-blocks covering the source block.
/// Orbits `[λ]` meet `E_{γ,w}` in `b_λ/k` points, so summing the slices over
/// `E_{γ,w}` yields `(e/k)·Î`; this is `e·Î` exactly when the covering block
/// is `ε`-stable.
pub fn slice_multiplicity(ctx: &IsometryContext) -> u32 {
    ctx.iso.source.group.e / ctx.iso.source.covered_by.len() as u32
}

/// The slice decomposition `Σ_q q^{s+s'}·Σ_{ord_e(k)=q} conj(ε^k(g))ε^k(g')·Ĵ_q`.
pub fn slice_value(ctx: &IsometryContext, x: usize, x2: usize) -> Cyclotomic {
    let terms = slice_terms(ctx);
    to_cyclotomic(ctx.de(), &slice_cell(ctx, &terms, x, x2).reduce())
}

/// Whether `(e/k)·Î(x,x')` equals its slice decomposition, `k` as in
/// [`slice_multiplicity`].
pub fn slice_check(ctx: &IsometryContext, x: usize, x2: usize) -> bool {
    let lhs = i_hat(ctx, x, x2).scale_int(&BigInt::from(slice_multiplicity(ctx)));
    lhs == slice_value(ctx, x, x2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    Indeterminate,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassLabel {
    pub eta: Multipartition,
    pub j: u32,
    pub p_regular: bool,
    pub centralizer_p_exponent: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub x: usize,
    pub x2: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub verdict: Verdict,
    pub witnesses: Vec<Cell>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SliceVerdict {
    Pass,
    Fail,
    /// Defect-0 pairs, where the decomposition does not apply.
    NotApplicable,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub source_group: Geder,
    pub target_group: Geder,
    pub p: u32,
    pub source_core: Multipartition,
    pub target_core: Multipartition,
    pub weight: Vec<u32>,
    pub defect_zero: bool,
    pub source_classes: Vec<ClassLabel>,
    pub target_classes: Vec<ClassLabel>,
    pub condition1: ConditionReport,
    pub condition2: ConditionReport,
    pub slice_check: SliceVerdict,
    pub slice_witnesses: Vec<Cell>,
    /// Set when the defect-0 pair was settled from the two characters alone.
    pub defect_zero_shortcut: bool,
    pub ihat_values: Option<IhatTable>,
}

impl VerificationReport {
    pub fn verdict(&self) -> Verdict {
        let slice = match self.slice_check {
            SliceVerdict::Fail => Verdict::Fail,
            _ => Verdict::Pass,
        };
        self.condition1.verdict.max(self.condition2.verdict).max(slice)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOptions {
    /// Keep the full `Î` table in the report.
    pub keep_ihat: bool,
    /// Skip the slice decomposition.
    pub skip_slices: bool,
}

fn labels(classes: &[NClass], p: u32) -> Vec<ClassLabel> {
    classes
        .iter()
        .map(|c| ClassLabel {
            eta: c.eta.clone(),
            j: c.j,
            p_regular: c.is_p_regular(p),
            centralizer_p_exponent: centralizer_p_exponent(c, p),
        })
        .collect()
}

fn min_valuation(coords: &[i64], p: u32) -> u32 {
    coords
        .iter()
        .filter(|&&c| c != 0)
        .map(|&c| p_valuation(c.unsigned_abs() as u128, p))
        .min()
        .unwrap_or(u32::MAX)
}

/// A defect-0 character vanishes on p-singular classes and has values
/// divisible by `|C(x)|_p`; when both characters of the pair do, every cell
/// of `Î = conj(χ) ⊗ χ'` satisfies both conditions.
fn defect_zero_character_ok(row: &Row, labels: &[ClassLabel], p: u32) -> bool {
    row.ints.iter().zip(labels).all(|(v, l)| {
        let coords = v.reduce();
        if l.p_regular {
            min_valuation(&coords, p) >= l.centralizer_p_exponent
        } else {
            coords.iter().all(|&c| c == 0)
        }
    })
}

fn divisible(coords: &[i64], p: u32, a: u32) -> bool {
    let m = (p as i64).pow(a);
    coords.iter().all(|&c| c % m == 0)
}

pub fn verify(ctx: &IsometryContext, opts: VerifyOptions) -> VerificationReport {
    let p = ctx.p();
    let b = &ctx.iso.source;
    let src = labels(ctx.source.classes(), p);
    let tgt = labels(ctx.target.classes(), p);
    let mut report = VerificationReport {
        source_group: b.group,
        target_group: ctx.iso.target.group,
        p,
        source_core: b.core.clone(),
        target_core: ctx.iso.target_core.clone(),
        weight: b.weight.clone(),
        defect_zero: b.defect_zero,
        source_classes: src,
        target_classes: tgt,
        condition1: ConditionReport {
            verdict: Verdict::Pass,
            witnesses: Vec::new(),
        },
        condition2: ConditionReport {
            verdict: Verdict::Pass,
            witnesses: Vec::new(),
        },
        slice_check: SliceVerdict::NotApplicable,
        slice_witnesses: Vec::new(),
        defect_zero_shortcut: false,
        ihat_values: None,
    };
    if b.defect_zero && !opts.keep_ihat {
        let (r, s, r2) = &ctx.pairs[0];
        if s.abs() == 1
            && defect_zero_character_ok(r, &report.source_classes, p)
            && defect_zero_character_ok(r2, &report.target_classes, p)
        {
            report.defect_zero_shortcut = true;
            return report;
        }
    }
    let table = i_hat_table(ctx);
    let e = slice_multiplicity(ctx) as i64;
    let terms = if b.defect_zero || opts.skip_slices {
        Vec::new()
    } else {
        slice_terms(ctx)
    };
    let check_slices = !b.defect_zero && !opts.skip_slices;
    let n2 = report.target_classes.len();
    let rows: Vec<(Vec<Cell>, Vec<Cell>, Vec<Cell>)> = (0..report.source_classes.len())
        .into_par_iter()
        .map(|x| {
            let mut c1 = Vec::new();
            let mut c2 = Vec::new();
            let mut sl = Vec::new();
            let l = &report.source_classes[x];
            for x2 in 0..n2 {
                let l2 = &report.target_classes[x2];
                let v = &table.coords[x][x2];
                let nonzero = v.iter().any(|&c| c != 0);
                if nonzero && l.p_regular != l2.p_regular {
                    c2.push(Cell { x, x2 });
                }
                let a = l.centralizer_p_exponent.max(l2.centralizer_p_exponent);
                if !divisible(v, p, a) {
                    c1.push(Cell { x, x2 });
                }
                if check_slices {
                    let rhs = slice_cell(ctx, &terms, x, x2).reduce();
                    if v.iter().zip(&rhs).any(|(&a, &b)| a * e != b) {
                        sl.push(Cell { x, x2 });
                    }
                }
            }
            (c1, c2, sl)
        })
        .collect();
    for (c1, c2, sl) in rows {
        report.condition1.witnesses.extend(c1);
        report.condition2.witnesses.extend(c2);
        report.slice_witnesses.extend(sl);
    }
    if !report.condition1.witnesses.is_empty() {
        report.condition1.verdict = Verdict::Indeterminate;
    }
    if !report.condition2.witnesses.is_empty() {
        report.condition2.verdict = Verdict::Fail;
    }
    if check_slices {
        report.slice_check = if report.slice_witnesses.is_empty() {
            SliceVerdict::Pass
        } else {
            SliceVerdict::Fail
        };
    }
    if opts.keep_ihat {
        report.ihat_values = Some(table);
    }
    report
}
