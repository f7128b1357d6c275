//! Finite fields: the prime field `F_p` and extensions `F_p[x]/(π)`.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::sync::Arc;

use rand::Rng;

use super::poly::{Poly, Polynomial};
use crate::error::{Error, Result};

/// A finite field used as a ring context: elements are plain values and all
/// arithmetic goes through the field.
pub trait Field: Clone + Debug + PartialEq + Eq + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Ord + Send + Sync;

    fn characteristic(&self) -> u64;

    /// Degree over the prime field.
    fn degree(&self) -> u32;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// The element with index `i` in a fixed enumeration of the field
    /// (`0 <= i < q`), base-p digits as coefficients.
    fn element(&self, i: u64) -> Self::Elem;

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    /// Field size `q = p^d`, or `None` if it does not fit in a `u64`.
    fn size(&self) -> Option<u64> {
        self.characteristic().checked_pow(self.degree())
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn frobenius(&self, a: &Self::Elem) -> Self::Elem {
        self.pow(a, self.characteristic())
    }

    /// The unique `b` with `b^p = a`, computed as `a^(p^(d-1))`.
    fn pth_root(&self, a: &Self::Elem) -> Self::Elem {
        let mut b = a.clone();
        for _ in 1..self.degree() {
            b = self.frobenius(&b);
        }
        b
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        let inv = self.inv(b).ok_or(Error::DivisionByZero)?;
        Ok(self.mul(a, &inv))
    }

    fn display_elem(&self, a: &Self::Elem) -> String;
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `F_p` for a prime `p`; elements are residues in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p > u32::MAX as u64 {
            return Err(Error::PrimeTooLarge(p));
        }
        Ok(Self { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn reduce(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    /// Symmetric representative in `(-p/2, p/2]`.
    pub fn signed(&self, a: u64) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn degree(&self) -> u32 {
        1
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.p
    }

    fn from_i64(&self, n: i64) -> u64 {
        self.reduce(n)
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (self.p as i64, *a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Some(self.reduce(t0))
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn element(&self, i: u64) -> u64 {
        i % self.p
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }

    fn pth_root(&self, a: &u64) -> u64 {
        *a
    }

    fn display_elem(&self, a: &u64) -> String {
        a.to_string()
    }
}

/// Element of an extension field: coefficients of a polynomial in the
/// generator `x`, lowest degree first, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElement(Vec<u64>);

impl FieldElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Debug, PartialEq, Eq)]
struct GaloisFieldInner {
    base: PrimeField,
    modulus: Polynomial,
}

/// `F_{p^d} = F_p[x]/(π)` for a monic irreducible `π` of degree `d`.
///
/// Cloning is cheap; the modulus is shared.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisField {
    inner: Arc<GaloisFieldInner>,
}

impl GaloisField {
    /// Builds the field with the given modulus, checking irreducibility.
    pub fn new(modulus: Polynomial) -> Result<Self> {
        let deg = modulus.degree().finite().ok_or(Error::DivisionByZero)?;
        if deg == 0 {
            return Err(Error::ReducibleModulus(modulus.to_string()));
        }
        let modulus = modulus.monic();
        if !modulus.is_irreducible() {
            return Err(Error::ReducibleModulus(modulus.to_string()));
        }
        Ok(Self::new_unchecked(modulus))
    }

    pub(crate) fn new_unchecked(modulus: Polynomial) -> Self {
        let base = *modulus.field();
        Self { inner: Arc::new(GaloisFieldInner { base, modulus }) }
    }

    /// `F_{p^d}` presented by the smallest monic irreducible of degree `d`,
    /// where polynomials are ordered by the integer `c_0 + c_1 p + ... + c_{d-1} p^{d-1}`.
    pub fn with_degree(p: u64, d: u32) -> Result<Self> {
        let base = PrimeField::new(p)?;
        if d == 0 {
            return Err(Error::InvalidArgument("extension degree must be at least 1".into()));
        }
        let count = p.checked_pow(d).ok_or(Error::InvalidArgument("extension too large".into()))?;
        for idx in 0..count {
            let mut coeffs = digits(idx, p, d as usize);
            coeffs.push(1);
            let cand = Poly::new(base, coeffs);
            if cand.is_irreducible() {
                return Ok(Self::new_unchecked(cand));
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    pub fn base(&self) -> PrimeField {
        self.inner.base
    }

    pub fn modulus(&self) -> &Polynomial {
        &self.inner.modulus
    }

    /// The class of `x`.
    pub fn generator(&self) -> FieldElement {
        self.from_poly(&Poly::x(self.base()))
    }

    pub fn from_poly(&self, f: &Polynomial) -> FieldElement {
        let r = f.rem(self.modulus()).expect("modulus is nonzero");
        FieldElement(r.coeffs().to_vec())
    }

    /// The canonical lift: a polynomial of degree `< d`.
    pub fn to_poly(&self, a: &FieldElement) -> Polynomial {
        Poly::new(self.base(), a.0.clone())
    }
}

fn digits(mut n: u64, p: u64, len: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(n % p);
        n /= p;
    }
    out
}

impl Field for GaloisField {
    type Elem = FieldElement;

    fn characteristic(&self) -> u64 {
        self.inner.base.p()
    }

    fn degree(&self) -> u32 {
        self.modulus().degree().finite().unwrap() as u32
    }

    fn zero(&self) -> FieldElement {
        FieldElement(Vec::new())
    }

    fn one(&self) -> FieldElement {
        FieldElement(vec![1])
    }

    fn from_i64(&self, n: i64) -> FieldElement {
        let c = self.base().reduce(n);
        if c == 0 {
            self.zero()
        } else {
            FieldElement(vec![c])
        }
    }

    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let f = self.base();
        let n = a.0.len().max(b.0.len());
        let mut out: Vec<u64> = (0..n)
            .map(|i| f.add(a.0.get(i).unwrap_or(&0), b.0.get(i).unwrap_or(&0)))
            .collect();
        trim(&mut out);
        FieldElement(out)
    }

    fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let f = self.base();
        let n = a.0.len().max(b.0.len());
        let mut out: Vec<u64> = (0..n)
            .map(|i| f.sub(a.0.get(i).unwrap_or(&0), b.0.get(i).unwrap_or(&0)))
            .collect();
        trim(&mut out);
        FieldElement(out)
    }

    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        if a.0.is_empty() || b.0.is_empty() {
            return self.zero();
        }
        let prod = &self.to_poly(a) * &self.to_poly(b);
        self.from_poly(&prod)
    }

    fn neg(&self, a: &FieldElement) -> FieldElement {
        let f = self.base();
        FieldElement(a.0.iter().map(|c| f.neg(c)).collect())
    }

    fn inv(&self, a: &FieldElement) -> Option<FieldElement> {
        if a.0.is_empty() {
            return None;
        }
        let (g, s, _) = self.to_poly(a).xgcd(self.modulus());
        debug_assert!(g.is_one());
        Some(self.from_poly(&s))
    }

    fn is_zero(&self, a: &FieldElement) -> bool {
        a.0.is_empty()
    }

    fn element(&self, i: u64) -> FieldElement {
        let mut c = digits(i, self.characteristic(), self.degree() as usize);
        trim(&mut c);
        FieldElement(c)
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        let p = self.characteristic();
        let mut c: Vec<u64> = (0..self.degree()).map(|_| rng.gen_range(0..p)).collect();
        trim(&mut c);
        FieldElement(c)
    }

    fn display_elem(&self, a: &FieldElement) -> String {
        self.to_poly(a).display_in("x")
    }
}

impl Display for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}[x]/({})", self.characteristic(), self.modulus().display_in("x"))
    }
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}
