//! Dense univariate polynomials over a finite field.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{Field, PrimeField};
use crate::error::{Error, Result};

/// Degree of a polynomial; the zero polynomial has degree `NegInfinity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Polynomial with coefficients in `F`, lowest degree first.
///
/// The leading coefficient is nonzero; the zero polynomial has no
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

/// Polynomials in `F_p[t]`.
pub type Polynomial = Poly<PrimeField>;

impl<F: Field> Poly<F> {
    pub fn new(field: F, coeffs: Vec<F::Elem>) -> Self {
        let mut p = Self { field, coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while let Some(c) = self.coeffs.last() {
            if self.field.is_zero(c) {
                self.coeffs.pop();
            } else {
                break;
            }
        }
    }

    pub fn zero(field: F) -> Self {
        Self { field, coeffs: Vec::new() }
    }

    pub fn one(field: F) -> Self {
        let one = field.one();
        Self::new(field, vec![one])
    }

    pub fn x(field: F) -> Self {
        let (z, o) = (field.zero(), field.one());
        Self::new(field, vec![z, o])
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        Self::new(field, vec![c])
    }

    pub fn monomial(field: F, c: F::Elem, n: usize) -> Self {
        let mut coeffs = vec![field.zero(); n + 1];
        coeffs[n] = c;
        Self::new(field, coeffs)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    /// Degree with the zero polynomial mapped to 0; for sizing loops only.
    pub(crate) fn deg0(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.field.is_one(&self.coeffs[0])
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| self.field.is_one(c))
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(self.field, other.field, "polynomials over different fields");
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.field.mul(a, c)).collect();
        Self::new(self.field.clone(), coeffs)
    }

    /// Multiplies by `x^n`.
    pub fn shift(&self, n: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); n];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { field: self.field.clone(), coeffs }
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lc) => {
                let inv = self.field.inv(lc).expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
        }
    }

    /// Returns `(q, r)` with `self = q * b + r` and `deg r < deg b`.
    pub fn divrem(&self, b: &Self) -> Result<(Self, Self)> {
        self.check_same(b);
        let lc = b.leading().ok_or(Error::DivisionByZero)?;
        let f = &self.field;
        let lc_inv = f.inv(lc).expect("leading coefficient is nonzero");
        let db = b.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return Ok((Self::zero(f.clone()), self.clone()));
        }
        let mut q = vec![f.zero(); r.len() - db];
        for i in (0..q.len()).rev() {
            let c = f.mul(&r[i + db], &lc_inv);
            if f.is_zero(&c) {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                r[i + j] = f.sub(&r[i + j], &f.mul(&c, bj));
            }
            q[i] = c;
        }
        r.truncate(db);
        Ok((Self::new(f.clone(), q), Self::new(f.clone(), r)))
    }

    pub fn rem(&self, b: &Self) -> Result<Self> {
        Ok(self.divrem(b)?.1)
    }

    /// Exact quotient; errors if `b` does not divide `self`.
    pub fn div_exact(&self, b: &Self) -> Result<Self> {
        let (q, r) = self.divrem(b)?;
        if !r.is_zero() {
            return Err(Error::NotDivisible);
        }
        Ok(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        !self.is_zero() && other.rem(self).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, b: &Self) -> Self {
        self.check_same(b);
        let (mut a, mut b) = (self.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("b is nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `g = s*self + t*b` monic (or zero).
    pub fn xgcd(&self, b: &Self) -> (Self, Self, Self) {
        self.check_same(b);
        let f = self.field.clone();
        let (mut r0, mut r1) = (self.clone(), b.clone());
        let (mut s0, mut s1) = (Self::one(f.clone()), Self::zero(f.clone()));
        let (mut t0, mut t1) = (Self::zero(f.clone()), Self::one(f.clone()));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).expect("r1 is nonzero");
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.leading().cloned() {
            None => (r0, s0, t0),
            Some(lc) => {
                let inv = f.inv(&lc).unwrap();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(c, &f.from_i64(i as i64)))
            .collect();
        Self::new(f.clone(), coeffs)
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.field.clone());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn mulmod(&self, b: &Self, m: &Self) -> Self {
        (self * b).rem(m).expect("modulus is nonzero")
    }

    pub fn powmod(&self, mut e: u64, m: &Self) -> Self {
        let mut base = self.rem(m).expect("modulus is nonzero");
        let mut acc = Self::one(self.field.clone()).rem(m).unwrap();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(&base, m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mulmod(&base, m);
            }
        }
        acc
    }

    /// `self^q mod m` where `q` is the field size, as `d` successive p-th powers.
    pub fn frobenius_mod(&self, m: &Self) -> Self {
        let p = self.field.characteristic();
        let mut r = self.rem(m).expect("modulus is nonzero");
        for _ in 0..self.field.degree() {
            r = r.powmod(p, m);
        }
        r
    }

    /// For `self = g(x^p)`, returns the `h` with `h^p = self`.
    pub fn pth_root(&self) -> Option<Self> {
        let p = self.field.characteristic() as usize;
        let mut out = Vec::with_capacity(self.coeffs.len() / p + 1);
        for (i, c) in self.coeffs.iter().enumerate() {
            if i % p == 0 {
                out.push(self.field.pth_root(c));
            } else if !self.field.is_zero(c) {
                return None;
            }
        }
        Some(Self::new(self.field.clone(), out))
    }

    /// Exponent of the largest power of `g` dividing `self`; `None` when `self` is zero.
    pub fn multiplicity(&self, g: &Self) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        assert!(!g.is_constant(), "multiplicity of a constant");
        let mut n = 0;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.divrem(g).unwrap();
            if !r.is_zero() {
                return Some(n);
            }
            cur = q;
            n += 1;
        }
    }

    /// Canonical ordering: by degree, then coefficients from the top down.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }

    /// Renders with the given variable name, highest degree first.
    pub fn display_in(&self, var: &str) -> String {
        self.render(var, " + ")
    }

    /// Renders without spaces, e.g. `t^2+3t+1`.
    pub fn compact(&self) -> String {
        self.render("t", "+")
    }

    fn render(&self, var: &str, plus: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let f = &self.field;
        let atomic = f.degree() == 1;
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if f.is_zero(c) {
                continue;
            }
            let cs = f.display_elem(c);
            let cs = if atomic || i == 0 { cs } else { format!("({cs})") };
            let coeff = if f.is_one(c) && i > 0 { String::new() } else { cs };
            let term = match i {
                0 => coeff,
                1 => format!("{coeff}{var}"),
                _ => format!("{coeff}{var}^{i}"),
            };
            terms.push(term);
        }
        terms.join(plus)
    }
}

impl<F: Field> Add for &Poly<F> {
    type Output = Poly<F>;

    fn add(self, rhs: &Poly<F>) -> Poly<F> {
        self.check_same(rhs);
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => f.add(a, b),
                (Some(a), None) | (None, Some(a)) => a.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Poly::new(f.clone(), coeffs)
    }
}

impl<F: Field> Sub for &Poly<F> {
    type Output = Poly<F>;

    fn sub(self, rhs: &Poly<F>) -> Poly<F> {
        self + &(-rhs)
    }
}

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;

    fn neg(self) -> Poly<F> {
        let coeffs = self.coeffs.iter().map(|c| self.field.neg(c)).collect();
        Poly { field: self.field.clone(), coeffs }
    }
}

impl<F: Field> Mul for &Poly<F> {
    type Output = Poly<F>;

    fn mul(self, rhs: &Poly<F>) -> Poly<F> {
        self.check_same(rhs);
        let f = &self.field;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(f.clone());
        }
        let mut out = vec![f.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        Poly::new(f.clone(), out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<F: Field> $tr for Poly<F> {
            type Output = Poly<F>;
            fn $m(self, rhs: Poly<F>) -> Poly<F> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<F: Field> Neg for Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        -&self
    }
}

impl Polynomial {
    /// Builds a polynomial from signed integer coefficients, reducing mod p.
    pub fn from_i64s(field: PrimeField, coeffs: &[i64]) -> Self {
        Poly::new(field, coeffs.iter().map(|&c| field.reduce(c)).collect())
    }

    pub fn t(field: PrimeField) -> Self {
        Poly::x(field)
    }

    pub fn p(&self) -> u64 {
        self.field().p()
    }

    /// Whether this is a p-th power in `F_p[t]` up to a unit, i.e. lies in `F_p[t^p]`.
    pub fn is_pth_power_up_to_unit(&self) -> bool {
        let p = self.p() as usize;
        self.coeffs().iter().enumerate().all(|(i, c)| *c == 0 || i % p == 0)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("t"))
    }
}
