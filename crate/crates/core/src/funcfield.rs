//! Rational functions in `F_p(t)`, places of `P^1`, valuations and residue
//! maps.
//!
//! The infinite place is handled through the substitution `s = 1/t`; there is
//! no projective-line type.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gfpoly::{Field, FieldElement, GaloisField, Poly, Polynomial, PrimeField};

/// `num / den` with `den` monic and `gcd(num, den) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            return Self::zero(*den.field());
        }
        if den.is_one() {
            return Self { num, den };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        let lc = *den.leading().unwrap();
        if lc != 1 {
            let inv = den.field().inv(&lc).unwrap();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Self { num, den }
    }

    pub fn from_poly(num: Polynomial) -> Self {
        let den = Poly::one(*num.field());
        Self { num, den }
    }

    pub fn zero(field: PrimeField) -> Self {
        Self { num: Poly::zero(field), den: Poly::one(field) }
    }

    pub fn one(field: PrimeField) -> Self {
        Self::from_poly(Poly::one(field))
    }

    pub fn constant(field: PrimeField, c: i64) -> Self {
        Self::from_poly(Polynomial::from_i64s(field, &[c]))
    }

    pub fn t(field: PrimeField) -> Self {
        Self::from_poly(Poly::x(field))
    }

    pub fn field(&self) -> PrimeField {
        *self.num.field()
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_one()
    }

    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(Self { num: base.num.pow(k), den: base.den.pow(k) })
    }

    pub fn scale_int(&self, c: i64) -> Self {
        let c = self.field().reduce(c);
        Self::reduced(self.num.scale(&c), self.den.clone())
    }

    /// Substitutes `t -> 1/s` and multiplies by `s^shift`, returning the
    /// result as a rational function in `s`.
    pub fn invert_variable(&self, shift: i64) -> Self {
        let rev = |f: &Polynomial, n: usize| {
            let mut c = f.coeffs().to_vec();
            c.resize(n + 1, 0);
            c.reverse();
            Poly::new(*f.field(), c)
        };
        if self.is_zero() {
            return self.clone();
        }
        let dn = self.num.deg0();
        let dd = self.den.deg0();
        // f(1/s) = s^(dd - dn) * rev(num) / rev(den)
        let e = shift + dd as i64 - dn as i64;
        let field = self.field();
        let s_pow = |k: i64| Poly::monomial(field, 1, k as usize);
        let (num, den) = if e >= 0 {
            (&rev(&self.num, dn) * &s_pow(e), rev(&self.den, dd))
        } else {
            (rev(&self.num, dn), &rev(&self.den, dd) * &s_pow(-e))
        };
        Self::reduced(num, den)
    }

    pub fn valuation(&self, place: &Place) -> Valuation {
        if self.is_zero() {
            return Valuation::Infinite;
        }
        match place {
            Place::Finite(pi) => {
                let a = self.num.multiplicity(pi).unwrap() as i64;
                let b = self.den.multiplicity(pi).unwrap() as i64;
                Valuation::Finite(a - b)
            }
            Place::Infinite => {
                Valuation::Finite(self.den.deg0() as i64 - self.num.deg0() as i64)
            }
        }
    }

    /// Image in the residue field of `place`.
    pub fn residue(&self, place: &Place) -> Result<FieldElement> {
        let k = place.residue_field(self.field());
        if self.valuation(place) < Valuation::Finite(0) {
            return Err(Error::NegativeValuation(place.to_string()));
        }
        match place {
            Place::Finite(_) => {
                let n = k.from_poly(&self.num);
                let d = k.from_poly(&self.den);
                k.div(&n, &d)
            }
            Place::Infinite => {
                if self.num.deg0() < self.den.deg0() || self.is_zero() {
                    Ok(k.zero())
                } else {
                    let c = self.field().div(self.num.leading().unwrap(), self.den.leading().unwrap())?;
                    Ok(k.from_i64(c as i64))
                }
            }
        }
    }

    pub fn to_string_in(&self, var: &str) -> String {
        let n = self.num.display_in(var);
        if self.den.is_one() {
            n
        } else {
            let wrap = |s: String, f: &Polynomial| {
                if f.coeffs().iter().filter(|c| **c != 0).count() > 1 {
                    format!("({s})")
                } else {
                    s
                }
            };
            format!("{}/{}", wrap(n, &self.num), wrap(self.den.display_in(var), &self.den))
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("t"))
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::reduced(&self.num + &rhs.num, self.den.clone());
        }
        RationalFunction::reduced(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den.is_one() && rhs.den.is_one() {
            return RationalFunction::from_poly(&self.num * &rhs.num);
        }
        RationalFunction::reduced(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

/// Valuation of a rational function; `Infinite` for zero. `Finite` values
/// order below `Infinite`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn at_least(self, k: i64) -> bool {
        self >= Valuation::Finite(k)
    }
}

/// A closed point of `P^1` over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Place {
    /// Zero locus of a monic irreducible polynomial.
    Finite(Polynomial),
    /// The degree valuation, uniformizer `1/t`.
    Infinite,
}

impl Place {
    pub fn finite(pi: Polynomial) -> Result<Self> {
        if !pi.is_irreducible() {
            return Err(Error::InvalidArgument(format!("{pi} is not irreducible")));
        }
        Ok(Place::Finite(pi.monic()))
    }

    /// The place `(t)`.
    pub fn t(field: PrimeField) -> Self {
        Place::Finite(Poly::x(field))
    }

    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(pi) => pi.deg0(),
            Place::Infinite => 1,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Place::Infinite)
    }

    /// `F_p[t]/(π)`, or `F_p` (presented as `F_p[x]/(x)`) at infinity.
    pub fn residue_field(&self, field: PrimeField) -> GaloisField {
        match self {
            Place::Finite(pi) => GaloisField::new_unchecked(pi.clone()),
            Place::Infinite => GaloisField::new_unchecked(Poly::x(field)),
        }
    }

    /// Canonical order: finite places by degree then coefficients, infinity last.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Place::Finite(a), Place::Finite(b)) => a.canonical_cmp(b).then_with(|| {
                a.coeffs().iter().cmp(b.coeffs().iter())
            }),
            (Place::Finite(_), Place::Infinite) => Ordering::Less,
            (Place::Infinite, Place::Finite(_)) => Ordering::Greater,
            (Place::Infinite, Place::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(pi) => write!(f, "({})", pi.compact()),
            Place::Infinite => write!(f, "(1/t)"),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// The valuation ring at a finite place, as seen by Tate's algorithm:
/// valuations, the residue map and its polynomial section.
#[derive(Clone, Debug)]
pub struct LocalRing {
    place: Place,
    uniformizer: RationalFunction,
    residue_field: GaloisField,
}

impl LocalRing {
    pub fn new(pi: &Polynomial) -> Self {
        let place = Place::Finite(pi.clone());
        let residue_field = place.residue_field(*pi.field());
        Self { place, uniformizer: RationalFunction::from_poly(pi.clone()), residue_field }
    }

    pub fn place(&self) -> &Place {
        &self.place
    }

    pub fn uniformizer(&self) -> &RationalFunction {
        &self.uniformizer
    }

    pub fn residue_field(&self) -> &GaloisField {
        &self.residue_field
    }

    pub fn val(&self, f: &RationalFunction) -> Valuation {
        f.valuation(&self.place)
    }

    /// Whether `f` lies in the maximal ideal.
    pub fn in_maximal(&self, f: &RationalFunction) -> bool {
        self.val(f).at_least(1)
    }

    pub fn residue(&self, f: &RationalFunction) -> Result<FieldElement> {
        f.residue(&self.place)
    }

    pub fn lift(&self, a: &FieldElement) -> RationalFunction {
        RationalFunction::from_poly(self.residue_field.to_poly(a))
    }

    /// Lift of the residue of `f`.
    pub fn reduce(&self, f: &RationalFunction) -> Result<RationalFunction> {
        Ok(self.lift(&self.residue(f)?))
    }

    /// Lift of the inverse of the residue of `f`.
    pub fn inv_mod(&self, f: &RationalFunction) -> Result<RationalFunction> {
        let r = self.residue(f)?;
        let inv = self.residue_field.inv(&r).ok_or(Error::DivisionByZero)?;
        Ok(self.lift(&inv))
    }

    /// `f / π^k`.
    pub fn divide_pi(&self, f: &RationalFunction, k: u32) -> RationalFunction {
        let pk = self.uniformizer.pow(k as i64).unwrap();
        f.checked_div(&pk).unwrap()
    }

    pub fn pi_pow(&self, k: u32) -> RationalFunction {
        self.uniformizer.pow(k as i64).unwrap()
    }
}
