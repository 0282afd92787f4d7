#![allow(dead_code)]

use crg_core::partitions::Partition;

pub fn part(v: &[u32]) -> Partition {
    Partition::new(v.to_vec()).unwrap()
}

fn contains(big: &Partition, small: &Partition) -> bool {
    (0..small.len()).all(|i| small.part(i) <= big.part(i))
}

/// Rows occupied by the skew shape `λ/ν` if it is a border strip.
fn border_strip_rows(lambda: &Partition, nu: &Partition) -> Option<usize> {
    let cells: Vec<(usize, u32)> = (0..lambda.len())
        .flat_map(|i| (nu.part(i)..lambda.part(i)).map(move |j| (i, j)))
        .collect();
    if cells.is_empty() {
        return None;
    }
    let has = |i: usize, j: u32| nu.part(i) <= j && j < lambda.part(i);
    // no 2x2 square
    for &(i, j) in &cells {
        if has(i + 1, j) && has(i, j + 1) && has(i + 1, j + 1) {
            return None;
        }
    }
    // connected via edge adjacency
    let mut seen = vec![false; cells.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(k) = stack.pop() {
        let (i, j) = cells[k];
        for (l, &(a, b)) in cells.iter().enumerate() {
            let adj = (a == i && (b + 1 == j || j + 1 == b)) || (b == j && (a + 1 == i || i + 1 == a));
            if adj && !seen[l] {
                seen[l] = true;
                stack.push(l);
            }
        }
    }
    if !seen.iter().all(|&s| s) {
        return None;
    }
    let mut rows: Vec<usize> = cells.iter().map(|c| c.0).collect();
    rows.dedup();
    Some(rows.len())
}

/// Murnaghan–Nakayama rule by explicit border-strip removal.
pub fn mn_character(lambda: &Partition, mu: &[u32]) -> i64 {
    if mu.is_empty() {
        return if lambda.size() == 0 { 1 } else { 0 };
    }
    let k = mu[0] as usize;
    let mut total = 0;
    for nu in Partition::all(lambda.size() - k) {
        if !contains(lambda, &nu) {
            continue;
        }
        if let Some(rows) = border_strip_rows(lambda, &nu) {
            let sign = if (rows - 1) % 2 == 0 { 1 } else { -1 };
            total += sign * mn_character(&nu, &mu[1..]);
        }
    }
    total
}

/// All ways to remove one p-rim hook, as (smaller partition, leg length).
pub fn rim_hook_removals(lambda: &Partition, p: usize) -> Vec<(Partition, usize)> {
    if lambda.size() < p {
        return Vec::new();
    }
    Partition::all(lambda.size() - p)
        .into_iter()
        .filter(|nu| contains(lambda, nu))
        .filter_map(|nu| border_strip_rows(lambda, &nu).map(|rows| (nu, rows - 1)))
        .collect()
}

/// Every (core, leg-sum parity) reachable by stripping p-hooks in any order.
pub fn all_strippings(lambda: &Partition, p: usize) -> Vec<(Partition, usize, usize)> {
    let moves = rim_hook_removals(lambda, p);
    if moves.is_empty() {
        return vec![(lambda.clone(), 0, 0)];
    }
    let mut out = Vec::new();
    for (nu, leg) in moves {
        for (core, legs, hooks) in all_strippings(&nu, p) {
            out.push((core, legs + leg, hooks + 1));
        }
    }
    out
}

pub fn hook_length_count(lambda: &Partition) -> u128 {
    let n = lambda.size() as u128;
    let conj = lambda.conjugate();
    let mut num: u128 = (1..=n).product();
    let mut den: u128 = 1;
    for i in 0..lambda.len() {
        for j in 0..lambda.part(i) as usize {
            let h = (lambda.part(i) as usize - j) + (conj.part(j) as usize - i) - 1;
            den *= h as u128;
        }
    }
    num /= den;
    num
}
