//! Algebraic integers of `Z[ζ_n]` held as exponent vectors in
//! `Z[x]/(x^n − 1)`, for bulk sums of products of character values.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::cyclotomic::{field, Cyclotomic};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct IntCyc(pub Vec<i64>);

impl IntCyc {
    pub fn zero(n: usize) -> Self {
        IntCyc(vec![0; n])
    }

    /// `None` unless `x` is integral.
    pub fn from_cyclotomic(x: &Cyclotomic, n: u32) -> Option<Self> {
        let x = x.embed(n).ok()?;
        let coords = x.integer_coords()?;
        let mut v = vec![0; n as usize];
        for (slot, c) in v.iter_mut().zip(coords) {
            *slot = c.to_i64()?;
        }
        Some(IntCyc(v))
    }

    pub fn conj(&self) -> Self {
        let n = self.0.len();
        let mut v = vec![0; n];
        for (k, &c) in self.0.iter().enumerate() {
            v[(n - k) % n] += c;
        }
        IntCyc(v)
    }

    /// `acc += s·a·b`.
    pub fn add_product(acc: &mut [i64], a: &IntCyc, b: &IntCyc, s: i64) {
        let n = acc.len();
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let sx = s * x;
            for (j, &y) in b.0.iter().enumerate() {
                if y != 0 {
                    acc[(i + j) % n] += sx * y;
                }
            }
        }
    }

    /// Coordinates in the power basis of `Q(ζ_n)`.
    pub fn reduce(&self) -> Vec<i64> {
        let n = self.0.len();
        let f = field(n as u32);
        let mut out = vec![0; f.degree()];
        for (k, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (slot, &r) in out.iter_mut().zip(f.power(k)) {
                *slot += c * r;
            }
        }
        out
    }
}

pub(crate) fn to_cyclotomic(n: u32, coords: &[i64]) -> Cyclotomic {
    let terms: Vec<(i64, BigInt)> = coords
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| (i as i64, BigInt::from(c)))
        .collect();
    Cyclotomic::from_exponents(n, &terms)
}
