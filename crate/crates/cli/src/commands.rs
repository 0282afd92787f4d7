use std::sync::Arc;

use crg_core::blocks::{isometry, n_blocks, BlockDescriptor, IsometryEntry};
use crg_core::cyclotomic::Cyclotomic;
use crg_core::geder::{FrakG, Geder, NIrrepLabel};
use crg_core::partitions::Multipartition;
use crg_core::perfiso::{prepared_table, verify, IsometryContext, PreparedTable, Verdict, VerificationReport, VerifyOptions};
use crg_core::wreath::GroupElement;
use rayon::prelude::*;
use serde::Serialize;

use crate::{Context, Failure, Format, GroupArgs, SCHEMA_VERSION};

fn group(g: GroupArgs) -> Result<Geder, Failure> {
    if g.e == 0 || g.de % g.e != 0 {
        return Err(Failure::Usage(format!("e = {} does not divide de = {}", g.e, g.de)));
    }
    Ok(Geder::new(g.de, g.e, g.r)?)
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    // round-trip through Value so that object keys come out sorted
    let value = serde_json::to_value(v).expect("artifact serializes");
    let mut s = serde_json::to_string_pretty(&value).unwrap();
    s.push('\n');
    s
}

fn csv_string(rows: Vec<Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.write_record(r).unwrap();
    }
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}

fn label_text(l: &NIrrepLabel) -> String {
    format!("{};{}", l.lambda, l.k)
}

/// Loads the rows of `labels` from the cache, computes the rest and writes
/// them back.
fn fill_rows(ctx: &Context, table: &PreparedTable, labels: &[NIrrepLabel]) -> Result<(), Failure> {
    ctx.cache.preload(table, labels);
    let cached: Vec<bool> = labels.iter().map(|l| table.has_row(l)).collect();
    labels.par_iter().for_each(|l| {
        table.row(l);
    });
    ctx.cache.persist(table, labels, &cached)?;
    Ok(())
}

#[derive(Serialize)]
struct ClassOut {
    eta: Multipartition,
    j: u32,
    split: u32,
    rep: GroupElement,
    centralizer_order: u128,
    class_size: u128,
}

#[derive(Serialize)]
struct ChartableOut<'a> {
    schema_version: u32,
    kind: &'static str,
    group: Geder,
    frak_g: Option<&'a FrakG>,
    classes: Vec<ClassOut>,
    irreps: Vec<NIrrepLabel>,
    values: Vec<Vec<Cyclotomic>>,
}

pub fn chartable(ctx: &Context, g: GroupArgs) -> Result<(), Failure> {
    let n = group(g)?;
    let table = prepared_table(&n);
    let labels = n.irreps();
    fill_rows(ctx, &table, &labels)?;
    let values: Vec<Vec<Cyclotomic>> = labels.iter().map(|l| table.row(l).values.clone()).collect();
    let body = match ctx.format {
        Format::Json => {
            let frak = (n.e > 1).then(|| n.frak_g());
            let classes = table
                .classes()
                .iter()
                .map(|c| ClassOut {
                    eta: c.eta.clone(),
                    j: c.j,
                    split: c.split,
                    rep: c.rep.clone(),
                    centralizer_order: c.centralizer_n,
                    class_size: c.class_size(&n),
                })
                .collect();
            to_json(&ChartableOut {
                schema_version: SCHEMA_VERSION,
                kind: "chartable",
                group: n,
                frak_g: frak.as_deref(),
                classes,
                irreps: labels.clone(),
                values,
            })
        }
        Format::Csv => {
            let mut rows = vec![std::iter::once("irrep".to_string())
                .chain(table.classes().iter().map(|c| format!("{};{}", c.eta, c.j)))
                .collect::<Vec<_>>()];
            for (l, vals) in labels.iter().zip(&values) {
                rows.push(std::iter::once(label_text(l)).chain(vals.iter().map(|v| v.to_string())).collect());
            }
            csv_string(rows)
        }
    };
    ctx.emit(&body)
}

#[derive(Serialize)]
struct BlockOut {
    index: usize,
    core: Multipartition,
    weight: Vec<u32>,
    defect_zero: bool,
    members: Vec<NIrrepLabel>,
    covered_by: Vec<usize>,
}

#[derive(Serialize)]
struct BlocksOut {
    schema_version: u32,
    kind: &'static str,
    group: Geder,
    p: u32,
    blocks: Vec<BlockOut>,
}

pub fn blocks(ctx: &Context, g: GroupArgs, p: u32) -> Result<(), Failure> {
    let n = group(g)?;
    let list = n_blocks(&n, p)?;
    let body = match ctx.format {
        Format::Json => to_json(&BlocksOut {
            schema_version: SCHEMA_VERSION,
            kind: "blocks",
            group: n,
            p,
            blocks: list
                .into_iter()
                .enumerate()
                .map(|(index, b)| BlockOut {
                    index,
                    core: b.core,
                    weight: b.weight,
                    defect_zero: b.defect_zero,
                    members: b.members,
                    covered_by: b.covered_by,
                })
                .collect(),
        }),
        Format::Csv => {
            let mut rows = vec![["block", "core", "weight", "defect_zero", "lambda", "k"].map(String::from).to_vec()];
            for (i, b) in list.iter().enumerate() {
                for m in &b.members {
                    rows.push(vec![
                        i.to_string(),
                        b.core.to_string(),
                        format!("{:?}", b.weight),
                        b.defect_zero.to_string(),
                        m.lambda.to_string(),
                        m.k.to_string(),
                    ]);
                }
            }
            csv_string(rows)
        }
    };
    ctx.emit(&body)
}

pub struct PerfisoJob {
    pub group: GroupArgs,
    pub r2: usize,
    pub p: u32,
    pub block: String,
    pub block2: String,
    pub weight: Option<String>,
    pub weight2: Option<String>,
    pub full: bool,
    pub skip_slices: bool,
}

/// A block index, or a core written as JSON arrays of parts, optionally
/// narrowed by a weight vector.
fn select(list: &[BlockDescriptor], sel: &str, weight: Option<&str>) -> Result<usize, Failure> {
    if let Ok(i) = sel.trim().parse::<usize>() {
        return if i < list.len() {
            Ok(i)
        } else {
            Err(Failure::Usage(format!("block index {i} out of range; there are {} blocks", list.len())))
        };
    }
    let parts: Vec<Vec<u32>> =
        serde_json::from_str(sel).map_err(|_| Failure::Usage(format!("cannot read block selector {sel:?}")))?;
    let slices: Vec<&[u32]> = parts.iter().map(|v| v.as_slice()).collect();
    let core = Multipartition::from_parts(&slices)?;
    let weight: Option<Vec<u32>> = weight
        .map(|w| serde_json::from_str(w).map_err(|_| Failure::Usage(format!("cannot read weight {w:?}"))))
        .transpose()?;
    let hits: Vec<usize> = (0..list.len())
        .filter(|&i| list[i].core == core && weight.as_ref().is_none_or(|w| *w == list[i].weight))
        .collect();
    match hits.as_slice() {
        [i] => Ok(*i),
        [] => Err(Failure::Usage(format!("no block has core {core}"))),
        _ => Err(Failure::Usage(format!("core {core} is shared by blocks {hits:?}; add a weight or select by index"))),
    }
}

#[derive(Serialize)]
struct PerfisoOut<'a> {
    schema_version: u32,
    kind: &'static str,
    verdict: Verdict,
    source_block: usize,
    target_block: usize,
    isometry: &'a [IsometryEntry],
    report: &'a VerificationReport,
}

pub fn perfiso(ctx: &Context, job: PerfisoJob) -> Result<(), Failure> {
    let n = group(job.group)?;
    let n2 = group(GroupArgs { r: job.r2, ..job.group })?;
    let list = n_blocks(&n, job.p)?;
    let list2 = n_blocks(&n2, job.p)?;
    let (i, i2) = (select(&list, &job.block, job.weight.as_deref())?,
        select(&list2, &job.block2, job.weight2.as_deref())?,);
    let iso = isometry(&list[i], &list2[i2])?;
    let source: Arc<PreparedTable> = prepared_table(&n);
    let target = prepared_table(&n2);
    let src_labels: Vec<_> = iso.entries.iter().map(|e| e.source.clone()).collect();
    let tgt_labels: Vec<_> = iso.entries.iter().map(|e| e.target.clone()).collect();
    fill_rows(ctx, &source, &src_labels)?;
    fill_rows(ctx, &target, &tgt_labels)?;
    let entries = iso.entries.clone();
    let cx = IsometryContext::with_tables(iso, source, target);
    let keep_ihat = job.full || ctx.format == Format::Csv;
    let report = verify(&cx, VerifyOptions { keep_ihat, skip_slices: job.skip_slices });
    let verdict = report.verdict();
    let body = match ctx.format {
        Format::Json => to_json(&PerfisoOut {
            schema_version: SCHEMA_VERSION,
            kind: "perfiso",
            verdict,
            source_block: i,
            target_block: i2,
            isometry: &entries,
            report: &report,
        }),
        Format::Csv => {
            let t = report.ihat_values.as_ref().expect("kept for csv");
            let mut rows = vec![std::iter::once("x\\x'".to_string())
                .chain(report.target_classes.iter().map(|c| format!("{};{}", c.eta, c.j)))
                .collect::<Vec<_>>()];
            for (x, c) in report.source_classes.iter().enumerate() {
                rows.push(
                    std::iter::once(format!("{};{}", c.eta, c.j))
                        .chain((0..report.target_classes.len()).map(|x2| t.get(x, x2).to_string()))
                        .collect(),
                );
            }
            csv_string(rows)
        }
    };
    ctx.emit(&body)?;
    match verdict {
        Verdict::Pass => Ok(()),
        Verdict::Fail => Err(Failure::Verdict(1)),
        Verdict::Indeterminate => Err(Failure::Verdict(2)),
    }
}
