//! Finite fields `F_q`, `q = p^a`, polynomials over them, and the enumeration
//! and root-counting primitives everything else is built on.
//!
//! Elements are stored as a packed index: the coordinates `c_0, …, c_{a-1}` of
//! an element in the power basis of the modulus are the base-`p` digits of the
//! index, `c_0` least significant. Arithmetic goes through tables built once
//! per field, so a [`FieldSpec`] is cheap to clone and share between threads.

mod enumerate;
mod poly;
mod text;

pub use enumerate::{distinct_roots_in, enumerate_monic, monic_at, monic_count, MonicIter};
pub use poly::{Degree, Polynomial};
pub use text::{format_element, parse_poly, PolyJson};

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest field size for which arithmetic tables are built.
pub const MAX_Q: u32 = 1024;

/// An element of `F_q`, identified by its packed coordinate index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FqElement(u16);

impl FqElement {
    pub const ZERO: FqElement = FqElement(0);
    pub const ONE: FqElement = FqElement(1);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Tables {
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

/// The field `F_p[y]/(m(y))`.
#[derive(Clone)]
pub struct FieldSpec {
    p: u32,
    a: u32,
    q: u32,
    modulus: Vec<u32>,
    tables: Arc<Tables>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("a", &self.a)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.a == other.a && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// Polynomials over the prime field, coefficient lists in ascending order.
// Only used to pick and verify the modulus and to build tables.

fn fp_trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn fp_inv(x: u32, p: u32) -> u32 {
    // p is prime, so x^(p-2) is the inverse
    let mut base = x as u64 % p as u64;
    let mut exp = p - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    acc as u32
}

fn fp_rem(num: &[u32], den: &[u32], p: u32) -> Vec<u32> {
    let mut r = num.to_vec();
    fp_trim(&mut r);
    let dd = den.len() - 1;
    let lead_inv = fp_inv(den[dd], p);
    while r.len() > dd {
        let top = r.len() - 1;
        let factor = r[top] as u64 * lead_inv as u64 % p as u64;
        let shift = top - dd;
        for (i, &c) in den.iter().enumerate() {
            let sub = factor * c as u64 % p as u64;
            r[shift + i] = ((r[shift + i] as u64 + p as u64 - sub) % p as u64) as u32;
        }
        fp_trim(&mut r);
    }
    r
}

fn digits(mut index: u64, base: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((index % base as u64) as u32);
        index /= base as u64;
    }
    out
}

/// Monic irreducibility over `F_p` by trial division against every monic
/// polynomial of degree `1..=deg/2`.
fn fp_is_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut cand = digits(idx, p, d);
            cand.push(1);
            if fp_rem(m, &cand, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl FieldSpec {
    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, 1)
    }

    /// `F_{p^a}` with the smallest monic irreducible modulus of degree `a`,
    /// ordered by packed coefficient index.
    pub fn new(p: u32, a: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Validation(format!("characteristic {p} is not prime")));
        }
        if a == 0 {
            return Err(Error::Validation("extension degree must be at least 1".into()));
        }
        check_size(p, a)?;
        let count = (p as u64).pow(a);
        for idx in 0..count {
            let mut m = digits(idx, p, a as usize);
            m.push(1);
            if a == 1 || (m[0] != 0 && fp_is_irreducible(&m, p)) {
                return Self::build(p, m);
            }
        }
        unreachable!("an irreducible polynomial of every degree exists over F_p")
    }

    /// `F_p[y]/(modulus)` for an explicit monic modulus given in ascending order.
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Validation(format!("characteristic {p} is not prime")));
        }
        let mut m = modulus;
        fp_trim(&mut m);
        if m.len() < 2 || m.last() != Some(&1) || m.iter().any(|&c| c >= p) {
            return Err(Error::Validation(
                "modulus must be monic of degree >= 1 with coefficients in [0, p)".into(),
            ));
        }
        check_size(p, (m.len() - 1) as u32)?;
        if !fp_is_irreducible(&m, p) {
            return Err(Error::Validation(format!("modulus {m:?} is reducible over F_{p}")));
        }
        Self::build(p, m)
    }

    fn build(p: u32, modulus: Vec<u32>) -> Result<Self> {
        let a = (modulus.len() - 1) as u32;
        let q = p.pow(a);
        let qs = q as usize;
        let coords: Vec<Vec<u32>> = (0..q as u64).map(|i| digits(i, p, a as usize)).collect();
        let pack = |c: &[u32]| -> u16 {
            let mut idx = 0u32;
            for &d in c.iter().rev() {
                idx = idx * p + d;
            }
            idx as u16
        };

        let mut add = vec![0u16; qs * qs];
        let mut mul = vec![0u16; qs * qs];
        for x in 0..qs {
            for y in 0..qs {
                let s: Vec<u32> = coords[x]
                    .iter()
                    .zip(&coords[y])
                    .map(|(u, v)| (u + v) % p)
                    .collect();
                add[x * qs + y] = pack(&s);

                let mut prod = vec![0u32; 2 * a as usize - 1];
                for (i, &u) in coords[x].iter().enumerate() {
                    for (j, &v) in coords[y].iter().enumerate() {
                        prod[i + j] = ((prod[i + j] as u64 + u as u64 * v as u64) % p as u64) as u32;
                    }
                }
                let mut r = fp_rem(&prod, &modulus, p);
                r.resize(a as usize, 0);
                mul[x * qs + y] = pack(&r);
            }
        }
        let mut neg = vec![0u16; qs];
        let mut inv = vec![0u16; qs];
        for x in 0..qs {
            neg[x] = (0..qs).find(|&y| add[x * qs + y] == 0).unwrap() as u16;
            if x != 0 {
                inv[x] = (1..qs).find(|&y| mul[x * qs + y] == 1).unwrap() as u16;
            }
        }
        Ok(FieldSpec {
            p,
            a,
            q,
            modulus,
            tables: Arc::new(Tables { add, mul, neg, inv }),
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients over `F_p`, ascending, monic.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> FqElement {
        FqElement::ZERO
    }

    pub fn one(&self) -> FqElement {
        FqElement::ONE
    }

    /// Element with the given packed index.
    pub fn element(&self, index: u32) -> Result<FqElement> {
        if index >= self.q {
            return Err(Error::Validation(format!(
                "element index {index} out of range for F_{}",
                self.q
            )));
        }
        Ok(FqElement(index as u16))
    }

    /// Element from its power-basis coordinates `c_0..c_{a-1}`.
    pub fn from_coords(&self, coords: &[u32]) -> Result<FqElement> {
        if coords.len() != self.a as usize || coords.iter().any(|&c| c >= self.p) {
            return Err(Error::Validation(format!(
                "expected {} coordinates in [0, {})",
                self.a, self.p
            )));
        }
        let idx = coords.iter().rev().fold(0u32, |acc, &d| acc * self.p + d);
        Ok(FqElement(idx as u16))
    }

    pub fn coords(&self, x: FqElement) -> Vec<u32> {
        digits(x.0 as u64, self.p, self.a as usize)
    }

    /// Image of an integer under `Z -> F_p -> F_q`.
    pub fn from_int(&self, n: i64) -> FqElement {
        FqElement(n.rem_euclid(self.p as i64) as u16)
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FqElement> + '_ {
        (0..self.q).map(|i| FqElement(i as u16))
    }

    #[inline]
    pub fn add(&self, x: FqElement, y: FqElement) -> FqElement {
        FqElement(self.tables.add[x.index() * self.q as usize + y.index()])
    }

    #[inline]
    pub fn neg(&self, x: FqElement) -> FqElement {
        FqElement(self.tables.neg[x.index()])
    }

    #[inline]
    pub fn sub(&self, x: FqElement, y: FqElement) -> FqElement {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn mul(&self, x: FqElement, y: FqElement) -> FqElement {
        FqElement(self.tables.mul[x.index() * self.q as usize + y.index()])
    }

    pub fn inv(&self, x: FqElement) -> Result<FqElement> {
        if x.is_zero() {
            return Err(Error::Domain("inverse of zero".into()));
        }
        Ok(FqElement(self.tables.inv[x.index()]))
    }

    pub fn div(&self, x: FqElement, y: FqElement) -> Result<FqElement> {
        Ok(self.mul(x, self.inv(y)?))
    }

    pub fn pow(&self, x: FqElement, mut e: u64) -> FqElement {
        let mut base = x;
        let mut acc = FqElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Raw additive table row for `x`, indexed by the other operand.
    #[inline]
    pub(crate) fn add_row(&self, x: FqElement) -> &[u16] {
        let qs = self.q as usize;
        &self.tables.add[x.index() * qs..(x.index() + 1) * qs]
    }

    #[inline]
    pub(crate) fn mul_row(&self, x: FqElement) -> &[u16] {
        let qs = self.q as usize;
        &self.tables.mul[x.index() * qs..(x.index() + 1) * qs]
    }
}

fn check_size(p: u32, a: u32) -> Result<()> {
    match (p as u64).checked_pow(a) {
        Some(q) if q <= MAX_Q as u64 => Ok(()),
        _ => Err(Error::budget(
            format!("field F_{p}^{a}"),
            format!("{p}^{a} elements"),
            MAX_Q as u64,
        )),
    }
}
