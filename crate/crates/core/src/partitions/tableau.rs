use serde::{Deserialize, Serialize};

use super::Partition;
use crate::error::{Error, Result};

/// A filling of a Young diagram, stored row by row.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Tableau {
    rows: Vec<Vec<u32>>,
}

impl Tableau {
    pub fn from_rows(rows: Vec<Vec<u32>>) -> Self {
        Tableau { rows }
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn shape(&self) -> Partition {
        Partition::from_unsorted(self.rows.iter().map(|r| r.len() as u32).collect())
    }

    pub fn is_standard(&self) -> bool {
        let rows_ok = self.rows.iter().all(|r| r.windows(2).all(|w| w[0] < w[1]));
        let cols_ok = self.rows.windows(2).all(|pair| {
            pair[1].len() <= pair[0].len() && pair[1].iter().zip(&pair[0]).all(|(b, a)| a < b)
        });
        rows_ok && cols_ok
    }

    /// The entry set `E(T)`, increasing.
    pub fn entries(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.rows.iter().flatten().copied().collect();
        v.sort_unstable();
        v
    }

    /// `(row, column)` of an entry.
    pub fn position(&self, v: u32) -> Option<(usize, usize)> {
        self.rows
            .iter()
            .enumerate()
            .find_map(|(i, r)| r.iter().position(|&x| x == v).map(|j| (i, j)))
    }

    /// Content `column − row` of an entry.
    pub fn content(&self, v: u32) -> Option<i64> {
        self.position(v).map(|(i, j)| j as i64 - i as i64)
    }

    /// Exchanges two entries.
    pub fn swapped(&self, a: u32, b: u32) -> Tableau {
        Tableau {
            rows: self
                .rows
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|&x| if x == a { b } else if x == b { a } else { x })
                        .collect()
                })
                .collect(),
        }
    }

    /// Renumbers the entries by `1, …, k` preserving their relative order.
    pub fn theta(&self) -> Tableau {
        let sorted = self.entries();
        Tableau {
            rows: self
                .rows
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|x| sorted.binary_search(x).unwrap() as u32 + 1)
                        .collect()
                })
                .collect(),
        }
    }

    /// Replaces entry `i` (1-based rank) with `entries[i-1]`; inverse of
    /// [`Tableau::theta`] on tableaux filled by `1, …, k`.
    pub fn relabel(&self, entries: &[u32]) -> Tableau {
        Tableau {
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|&x| entries[x as usize - 1]).collect())
                .collect(),
        }
    }
}

/// All standard tableaux of shape `λ` filled by the given distinct entries.
pub fn standard_tableaux(lambda: &Partition, entries: &[u32]) -> Result<Vec<Tableau>> {
    if entries.len() != lambda.size() {
        return Err(Error::SizeMismatch {
            expected: lambda.size(),
            got: entries.len(),
        });
    }
    let mut sorted = entries.to_vec();
    sorted.sort_unstable();
    let shape = lambda.parts();
    let mut out = Vec::new();
    let mut rows: Vec<Vec<u32>> = vec![Vec::new(); shape.len()];
    fn rec(k: usize, sorted: &[u32], shape: &[u32], rows: &mut Vec<Vec<u32>>, out: &mut Vec<Tableau>) {
        if k == sorted.len() {
            out.push(Tableau { rows: rows.clone() });
            return;
        }
        for i in 0..shape.len() {
            let len = rows[i].len();
            let fits = len < shape[i] as usize && (i == 0 || rows[i - 1].len() > len);
            if fits {
                rows[i].push(sorted[k]);
                rec(k + 1, sorted, shape, rows, out);
                rows[i].pop();
            }
        }
    }
    rec(0, &sorted, shape, &mut rows, &mut out);
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_shapes() {
        let l = Partition::new(vec![2, 1]).unwrap();
        assert_eq!(standard_tableaux(&l, &[1, 2, 3]).unwrap().len(), 2);
        let row = Partition::new(vec![4]).unwrap();
        assert_eq!(standard_tableaux(&row, &[3, 8, 9, 11]).unwrap().len(), 1);
        assert!(standard_tableaux(&l, &[1, 2]).is_err());
        assert_eq!(standard_tableaux(&Partition::empty(), &[]).unwrap().len(), 1);
    }

    #[test]
    fn theta_renumbers() {
        let t = Tableau::from_rows(vec![vec![2, 7], vec![5]]);
        assert!(t.is_standard());
        let th = t.theta();
        assert_eq!(th, Tableau::from_rows(vec![vec![1, 3], vec![2]]));
        assert_eq!(th.relabel(&[2, 5, 7]), t);
    }
}
