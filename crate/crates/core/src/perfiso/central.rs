//! Blocks from central characters: `χ` and `χ'` lie in one p-block iff
//! `ω_χ(K) = |K|χ(g_K)/χ(1)` and `ω_χ'(K)` agree modulo a prime above `p`
//! for every class `K`. The prime is realized by sending `ζ_n` to an element
//! of order `n` in the field with `p^f` elements, `f` the order of `p` mod `n`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::cyclotomic::Cyclotomic;
use crate::geder::NCharacterTable;

/// Arithmetic in `GF(p)[x]/(m)` for a monic irreducible `m` of degree `f`.
#[derive(Clone, Debug)]
pub struct FiniteField {
    p: u64,
    modulus: Vec<u64>,
}

pub type Elem = Vec<u64>;

impl FiniteField {
    /// The field with `p^f` elements, using the least irreducible monic
    /// polynomial of degree `f` in lexicographic order.
    pub fn new(p: u32, f: usize) -> Self {
        let p = p as u64;
        let total = p.pow(f as u32);
        for code in 0..total {
            let mut m = Vec::with_capacity(f + 1);
            let mut c = code;
            for _ in 0..f {
                m.push(c % p);
                c /= p;
            }
            m.push(1);
            if is_irreducible(&m, p) {
                return FiniteField { p, modulus: m };
            }
        }
        unreachable!("an irreducible polynomial of every degree exists")
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn size(&self) -> u64 {
        self.p.pow(self.degree() as u32)
    }

    pub fn zero(&self) -> Elem {
        vec![0; self.degree()]
    }

    pub fn one(&self) -> Elem {
        let mut v = self.zero();
        v[0] = 1;
        v
    }

    pub fn from_int(&self, k: &BigInt) -> Elem {
        let mut v = self.zero();
        v[0] = k.mod_floor(&BigInt::from(self.p)).to_u64().unwrap();
        v
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.p).collect()
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let f = self.degree();
        let mut prod = vec![0u64; 2 * f];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        for k in (f..2 * f).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..f {
                prod[k - f + i] = (prod[k - f + i] + self.p * self.p - c * self.modulus[i] % self.p) % self.p;
            }
        }
        prod.truncate(f);
        prod
    }

    pub fn pow(&self, a: &Elem, mut k: u64) -> Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: &Elem) -> u64 {
        let n = self.size() - 1;
        (1..=n)
            .filter(|d| n % d == 0)
            .find(|&d| self.pow(a, d) == self.one())
            .unwrap()
    }

    /// The least element (in the enumeration order) of multiplicative order
    /// exactly `n`; requires `n | p^f − 1`.
    pub fn element_of_order(&self, n: u64) -> Elem {
        let f = self.degree();
        for code in 1..self.size() {
            let mut c = code;
            let a: Elem = (0..f)
                .map(|_| {
                    let v = c % self.p;
                    c /= self.p;
                    v
                })
                .collect();
            if self.order(&a) == n {
                return a;
            }
        }
        panic!("no element of order {n}")
    }
}

fn poly_mod(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        for (i, &mi) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p * p - c * mi % p) % p;
        }
        r.pop();
    }
    r
}

/// Trial division by every monic polynomial of degree at most `deg/2`.
fn is_irreducible(m: &[u64], p: u64) -> bool {
    let n = m.len() - 1;
    for d in 1..=n / 2 {
        for code in 0..p.pow(d as u32) {
            let mut g = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                g.push(c % p);
                c /= p;
            }
            g.push(1);
            if poly_mod(m, &g, p).iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

/// Reduction of `Z[ζ_n]` onto a residue field of characteristic `p`.
pub struct Reduction {
    pub field: FiniteField,
    n: u32,
    zeta: Elem,
}

impl Reduction {
    pub fn new(n: u32, p: u32) -> Self {
        let f = (1..).find(|&f| (p as u64).pow(f) % n as u64 == 1 % n as u64).unwrap();
        let field = FiniteField::new(p, f as usize);
        let zeta = field.element_of_order(n as u64);
        Reduction { field, n, zeta }
    }

    /// Image of an algebraic integer of `Q(ζ_n)`.
    pub fn reduce(&self, x: &Cyclotomic) -> Elem {
        let x = x.embed(self.n).unwrap();
        let coords = x.integer_coords().expect("not an algebraic integer");
        let mut acc = self.field.zero();
        let mut power = self.field.one();
        for c in coords {
            if !c.is_zero() {
                acc = self.field.add(&acc, &self.field.mul(&power, &self.field.from_int(c)));
            }
            power = self.field.mul(&power, &self.zeta);
        }
        acc
    }
}

/// The partition of the rows of `table` by reduced central characters, as
/// sorted lists of row indices.
pub fn central_character_blocks(table: &NCharacterTable, p: u32) -> Vec<Vec<usize>> {
    let n = table.group.de();
    let red = Reduction::new(n, p);
    let identity = table
        .classes
        .iter()
        .position(|c| c.rep.is_identity())
        .expect("identity class");
    let sizes: Vec<BigInt> = table.classes.iter().map(|c| BigInt::from(c.class_size(&table.group))).collect();
    let keys: Vec<Vec<Elem>> = table
        .values
        .iter()
        .map(|row| {
            let deg = row[identity].to_i64().expect("degree is an integer");
            row.iter()
                .zip(&sizes)
                .map(|(v, k)| {
                    let omega = v.scale_int(k).div_int(&BigInt::from(deg)).unwrap();
                    red.reduce(&omega)
                })
                .collect()
        })
        .collect();
    let mut groups: Vec<(Vec<Elem>, Vec<usize>)> = Vec::new();
    for (i, k) in keys.into_iter().enumerate() {
        match groups.iter_mut().find(|(key, _)| *key == k) {
            Some((_, v)) => v.push(i),
            None => groups.push((k, vec![i])),
        }
    }
    groups.into_iter().map(|(_, v)| v).collect()
}
