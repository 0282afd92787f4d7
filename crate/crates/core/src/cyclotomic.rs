//! Exact arithmetic in cyclotomic fields `Q(ζ_n)`.
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^{φ(n)-1}` reduced modulo
//! the `n`-th cyclotomic polynomial, as integer numerators over one positive
//! common denominator. Operands of different conductors are embedded into the
//! field of the least common multiple.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Reduction data for one conductor.
#[derive(Debug)]
pub struct Field {
    n: u32,
    phi: usize,
    /// Row `k` holds the coordinates of `ζ^k` for `0 ≤ k < n`.
    powers: Vec<Vec<i64>>,
}

impl Field {
    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.phi
    }

    /// Power-basis coordinates of `ζ^k`, `0 ≤ k < n`.
    pub fn power(&self, k: usize) -> &[i64] {
        &self.powers[k]
    }

    fn build(n: u32) -> Field {
        let phi_poly = cyclotomic_polynomial(n);
        let phi = phi_poly.len() - 1;
        let mut powers = Vec::with_capacity(n as usize);
        let mut cur = vec![0i64; phi];
        if phi > 0 {
            cur[0] = 1;
        }
        for _ in 0..n {
            powers.push(cur.clone());
            // multiply by x and reduce by the monic Φ_n
            let top = cur[phi - 1];
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for (i, c) in cur.iter_mut().enumerate() {
                    *c = c
                        .checked_sub(top.checked_mul(phi_poly[i]).expect("overflow"))
                        .expect("overflow");
                }
            }
        }
        Field { n, phi, powers }
    }
}

/// Integer coefficients of Φ_n, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n >= 1, "conductor must be positive");
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            num = poly_div_exact(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn poly_div_exact(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let dq = a.len() - 1 - db;
    let mut q = vec![0i64; dq + 1];
    for i in (0..=dq).rev() {
        let c = rem[i + db];
        q[i] = c;
        for (j, bj) in b.iter().enumerate() {
            rem[i + j] -= c * bj;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    q
}

static FIELDS: OnceLock<RwLock<HashMap<u32, Arc<Field>>>> = OnceLock::new();

pub fn field(n: u32) -> Arc<Field> {
    let cache = FIELDS.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(f) = cache.read().unwrap().get(&n) {
        return f.clone();
    }
    let f = Arc::new(Field::build(n));
    cache.write().unwrap().entry(n).or_insert(f).clone()
}

/// An element of `Q(ζ_n)`.
#[derive(Clone)]
pub struct Cyclotomic {
    field: Arc<Field>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl Cyclotomic {
    pub fn zero_in(n: u32) -> Self {
        let f = field(n);
        let phi = f.phi;
        Cyclotomic {
            field: f,
            num: vec![BigInt::zero(); phi],
            den: BigInt::one(),
        }
    }

    pub fn from_int(v: impl Into<BigInt>) -> Self {
        Cyclotomic::rational_in(1, BigRational::from_integer(v.into()))
    }

    pub fn rational_in(n: u32, v: BigRational) -> Self {
        let mut x = Cyclotomic::zero_in(n);
        x.num[0] = v.numer().clone();
        x.den = v.denom().clone();
        x
    }

    /// `ζ_n^k`.
    pub fn zeta(n: u32, k: i64) -> Self {
        let f = field(n);
        let k = k.rem_euclid(n as i64) as usize;
        let num = f.powers[k].iter().map(|&c| BigInt::from(c)).collect();
        Cyclotomic {
            field: f,
            num,
            den: BigInt::one(),
        }
    }

    /// Builds `Σ_k c_k ζ_n^k` from exponent-indexed integer coefficients
    /// (taken modulo `n`).
    pub fn from_exponents(n: u32, coeffs: &[(i64, BigInt)]) -> Self {
        let f = field(n);
        let mut num = vec![BigInt::zero(); f.phi];
        for (k, c) in coeffs {
            if c.is_zero() {
                continue;
            }
            let row = &f.powers[k.rem_euclid(n as i64) as usize];
            for (slot, &r) in num.iter_mut().zip(row) {
                if r != 0 {
                    *slot += c * r;
                }
            }
        }
        Cyclotomic {
            field: f,
            num,
            den: BigInt::one(),
        }
    }

    /// Coordinates as rationals in the power basis.
    pub fn from_coords(n: u32, coords: &[BigRational]) -> Result<Self> {
        let f = field(n);
        if coords.len() != f.phi {
            return Err(Error::SizeMismatch {
                expected: f.phi,
                got: coords.len(),
            });
        }
        let den = coords
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coords
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Ok(Cyclotomic { field: f, num, den }.normalized())
    }

    pub fn conductor(&self) -> u32 {
        self.field.n
    }

    pub fn coords(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    /// Integer coordinates when the element is an algebraic integer.
    pub fn integer_coords(&self) -> Option<&[BigInt]> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(|c| c.is_zero())
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    /// The rational value if the element lies in `Q`.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.num[1..].iter().all(|c| c.is_zero()) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        let q = self.to_rational()?;
        if q.is_integer() {
            q.to_integer().to_i64()
        } else {
            None
        }
    }

    fn normalized(mut self) -> Self {
        if self.den.is_negative() {
            self.den = -self.den;
            for c in &mut self.num {
                *c = -&*c;
            }
        }
        if self.den.is_one() {
            return self;
        }
        if self.is_zero() {
            self.den = BigInt::one();
            return self;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if !g.is_one() {
            self.den /= &g;
            for c in &mut self.num {
                *c /= &g;
            }
        }
        self
    }

    /// Image in `Q(ζ_m)`; requires `n | m`.
    pub fn embed(&self, m: u32) -> Result<Self> {
        let n = self.field.n;
        if m == 0 || m % n != 0 {
            return Err(Error::NotDivisible {
                value: m.to_string(),
                by: n as u64,
            });
        }
        if m == n {
            return Ok(self.clone());
        }
        let step = (m / n) as i64;
        let terms: Vec<(i64, BigInt)> = self
            .num
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as i64 * step, c.clone()))
            .collect();
        let mut out = Cyclotomic::from_exponents(m, &terms);
        out.den = self.den.clone();
        Ok(out)
    }

    /// Expresses the element in `Q(ζ_m)` for `m | n`, if it lies there.
    pub fn restrict(&self, m: u32) -> Option<Self> {
        let n = self.field.n;
        if m == 0 || n % m != 0 {
            return None;
        }
        if m == n {
            return Some(self.clone());
        }
        let fm = field(m);
        // columns: images of ζ_m^i, i < φ(m)
        let cols: Vec<Vec<BigRational>> = (0..fm.phi)
            .map(|i| Cyclotomic::zeta(m, i as i64).embed(n).unwrap().coords())
            .collect();
        let target = self.coords();
        let sol = solve_rational(&cols, &target)?;
        Cyclotomic::from_coords(m, &sol).ok()
    }

    /// Galois automorphism `ζ ↦ ζ^a` for `a` coprime to the conductor.
    pub fn galois(&self, a: i64) -> Self {
        let n = self.field.n;
        let terms: Vec<(i64, BigInt)> = self
            .num
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as i64 * a, c.clone()))
            .collect();
        let mut out = Cyclotomic::from_exponents(n, &terms);
        out.den = self.den.clone();
        out
    }

    /// Complex conjugation.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.field.n as i64;
        let mut others = Cyclotomic::from_int(1).embed(self.field.n).unwrap();
        for a in 2..n.max(2) {
            if a.gcd(&n) == 1 {
                others = &others * &self.galois(a);
            }
        }
        let norm = (self * &others)
            .to_rational()
            .expect("field norm is rational");
        Ok(others.scale(&norm.recip()))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Cyclotomic {
            field: self.field.clone(),
            num: self.num.iter().map(|c| c * q.numer()).collect(),
            den: &self.den * q.denom(),
        }
        .normalized()
    }

    pub fn scale_int(&self, k: &BigInt) -> Self {
        Cyclotomic {
            field: self.field.clone(),
            num: self.num.iter().map(|c| c * k).collect(),
            den: self.den.clone(),
        }
        .normalized()
    }

    pub fn div_int(&self, k: &BigInt) -> Result<Self> {
        if k.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Cyclotomic {
            field: self.field.clone(),
            num: self.num.clone(),
            den: &self.den * k,
        }
        .normalized())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Cyclotomic::from_int(1).embed(self.field.n).unwrap();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Whether every power-basis coordinate is divisible by `p^a`.
    pub fn divisible_by_p_power(&self, p: u32, a: u32) -> Result<bool> {
        if !self.den.is_one() {
            return Err(Error::NotIntegral(self.to_string()));
        }
        if a == 0 {
            return Ok(true);
        }
        let m = BigInt::from(p).pow(a);
        Ok(self.num.iter().all(|c| (c % &m).is_zero()))
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        let (n, m) = (a.field.n, b.field.n);
        if n == m {
            return (a.clone(), b.clone());
        }
        let l = n.lcm(&m);
        (a.embed(l).unwrap(), b.embed(l).unwrap())
    }

    fn add_same(a: &Self, b: &Self) -> Self {
        if a.den == b.den {
            let num = a.num.iter().zip(&b.num).map(|(x, y)| x + y).collect();
            return Cyclotomic {
                field: a.field.clone(),
                num,
                den: a.den.clone(),
            }
            .normalized();
        }
        let num = a
            .num
            .iter()
            .zip(&b.num)
            .map(|(x, y)| x * &b.den + y * &a.den)
            .collect();
        Cyclotomic {
            field: a.field.clone(),
            num,
            den: &a.den * &b.den,
        }
        .normalized()
    }

    fn mul_same(a: &Self, b: &Self) -> Self {
        let f = &a.field;
        let n = f.n as usize;
        let mut ex = vec![BigInt::zero(); n];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                ex[(i + j) % n] += x * y;
            }
        }
        let mut num = vec![BigInt::zero(); f.phi];
        for (k, c) in ex.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < f.phi {
                num[k] += c;
                continue;
            }
            for (slot, &r) in num.iter_mut().zip(&f.powers[k]) {
                if r != 0 {
                    *slot += c * r;
                }
            }
        }
        Cyclotomic {
            field: f.clone(),
            num,
            den: &a.den * &b.den,
        }
        .normalized()
    }
}

fn solve_rational(cols: &[Vec<BigRational>], target: &[BigRational]) -> Option<Vec<BigRational>> {
    let rows = target.len();
    let ncols = cols.len();
    let mut m: Vec<Vec<BigRational>> = (0..rows)
        .map(|r| {
            let mut row: Vec<BigRational> = cols.iter().map(|c| c[r].clone()).collect();
            row.push(target[r].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = m[r][c].recip();
        for v in &mut m[r] {
            *v = &*v * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in 0..=ncols {
                    let t = &m[r][k] * &f;
                    m[i][k] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[ncols].is_zero()) {
        return None;
    }
    let mut sol = vec![BigRational::zero(); ncols];
    for (i, &c) in pivots.iter().enumerate() {
        sol[c] = m[i][ncols].clone();
    }
    Some(sol)
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.field.n == other.field.n {
            return self.den == other.den && self.num == other.num;
        }
        let (a, b) = Cyclotomic::common(self, other);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for Cyclotomic {}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.field.n == rhs.field.n {
            Cyclotomic::add_same(self, rhs)
        } else {
            let (a, b) = Cyclotomic::common(self, rhs);
            Cyclotomic::add_same(&a, &b)
        }
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Cyclotomic) -> Cyclotomic {
        &self + &rhs
    }
}

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        if rhs.is_zero() {
            return;
        }
        *self = &*self + rhs;
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Cyclotomic) -> Cyclotomic {
        &self - &rhs
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.field.n == rhs.field.n {
            Cyclotomic::mul_same(self, rhs)
        } else {
            let (a, b) = Cyclotomic::common(self, rhs);
            Cyclotomic::mul_same(&a, &b)
        }
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Cyclotomic) -> Cyclotomic {
        &self * &rhs
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl Zero for Cyclotomic {
    fn zero() -> Self {
        Cyclotomic::zero_in(1)
    }
    fn is_zero(&self) -> bool {
        Cyclotomic::is_zero(self)
    }
}

impl One for Cyclotomic {
    fn one() -> Self {
        Cyclotomic::from_int(1)
    }
}

impl std::iter::Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Self {
        let mut acc = Cyclotomic::zero();
        for x in iter {
            acc += &x;
        }
        acc
    }
}

impl fmt::Display for Cyclotomic {
    /// Canonical form, e.g. `1 - 2*E(4)` or `3/2*E(8)^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.field.n;
        let mut first = true;
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let q = BigRational::new(c.clone(), self.den.clone());
            let neg = q.is_negative();
            let a = q.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let coeff = if a.is_integer() {
                a.numer().to_string()
            } else {
                format!("{}/{}", a.numer(), a.denom())
            };
            match i {
                0 => write!(f, "{coeff}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{coeff}*")?;
                    }
                    write!(f, "E({n})")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic[{}]({})", self.field.n, self)
    }
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let coords: Vec<String> = self
            .coords()
            .iter()
            .map(|q| format!("{}/{}", q.numer(), q.denom()))
            .collect();
        let mut st = s.serialize_struct("Cyclotomic", 2)?;
        st.serialize_field("conductor", &self.field.n)?;
        st.serialize_field("coords", &coords)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            conductor: u32,
            coords: Vec<String>,
        }
        let raw = Raw::deserialize(d)?;
        let coords = raw
            .coords
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map_err(de::Error::custom)?;
        Cyclotomic::from_coords(raw.conductor, &coords).map_err(de::Error::custom)
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.trim().parse().map_err(|_| bad())?;
    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn zeta3_sum() {
        let s = &Cyclotomic::zeta(3, 1) + &Cyclotomic::zeta(3, 2);
        assert_eq!(s, Cyclotomic::from_int(-1));
    }

    #[test]
    fn conj_zeta5() {
        assert_eq!(Cyclotomic::zeta(5, 1).conj(), Cyclotomic::zeta(5, 4));
    }

    #[test]
    fn embeddings() {
        assert_eq!(
            Cyclotomic::from_int(-1).embed(4).unwrap(),
            Cyclotomic::from_int(-1)
        );
        let e = Cyclotomic::zeta(3, 1).embed(6).unwrap();
        assert_eq!(e.conductor(), 6);
        assert_eq!(e, Cyclotomic::zeta(6, 2));
        assert_eq!(e.restrict(3).unwrap().conductor(), 3);
        assert_eq!(e.restrict(3).unwrap(), Cyclotomic::zeta(3, 1));
        assert_eq!(Cyclotomic::zeta(6, 1).restrict(3).unwrap(), -Cyclotomic::zeta(3, 2));
        assert!(Cyclotomic::zeta(12, 1).restrict(6).is_none());
        assert!(matches!(
            Cyclotomic::zeta(4, 1).embed(6),
            Err(Error::NotDivisible { .. })
        ));
    }

    #[test]
    fn geometric_sum_vanishes() {
        // ξ primitive 6th root, m = 2: ξ^2 ≠ 1, q = 3 with mq ≡ 0 mod 6
        let xi = Cyclotomic::zeta(6, 1);
        let s: Cyclotomic = (0..3).map(|i| xi.pow(2 * i)).sum();
        assert!(s.is_zero());
    }

    #[test]
    fn p_power_divisibility() {
        let x = &Cyclotomic::from_int(9) + &Cyclotomic::zeta(4, 1).scale_int(&9.into());
        assert!(x.divisible_by_p_power(3, 2).unwrap());
        assert!(!Cyclotomic::from_int(3).divisible_by_p_power(3, 2).unwrap());
        let half = Cyclotomic::from_int(1).div_int(&2.into()).unwrap();
        assert!(matches!(
            half.divisible_by_p_power(3, 0),
            Err(Error::NotIntegral(_))
        ));
    }

    #[test]
    fn inverse_and_zero_division() {
        let x = &Cyclotomic::from_int(2) + &Cyclotomic::zeta(8, 3);
        assert!((&x * &x.inv().unwrap()).is_one());
        assert_eq!(Cyclotomic::zero_in(5).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn display_and_serde() {
        let x = &Cyclotomic::from_int(1) - &Cyclotomic::zeta(4, 1).scale_int(&2.into());
        assert_eq!(x.to_string(), "1 - 2*E(4)");
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, r#"{"conductor":4,"coords":["1/1","-2/1"]}"#);
        let back: Cyclotomic = serde_json::from_str(&json).unwrap();
        assert_eq!(back, x);
    }
}
