//! The formal group of a Weierstrass model in the parameter `z = -x/y`.
//!
//! Series are truncated mod `X^(N+1)` and carry exact coefficients in
//! `F_p(t)`, so no precision is lost in the coefficient ring. The chord
//! slope is taken as a divided difference `sum A_n h_{n-1}(z1, z2)`, which
//! needs no division and works for doubling as well.

use std::fmt;

use super::WeierstrassModel;
use crate::error::{Error, Result};
use crate::funcfield::{Place, RationalFunction};
use crate::gfpoly::PrimeField;

/// Power series `sum c_i X^i` truncated after `X^precision`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    field: PrimeField,
    coeffs: Vec<RationalFunction>,
}

impl PowerSeries {
    pub fn zero(field: PrimeField, precision: usize) -> Self {
        Self { field, coeffs: vec![RationalFunction::zero(field); precision + 1] }
    }

    pub fn monomial(field: PrimeField, precision: usize, c: RationalFunction, n: usize) -> Self {
        let mut s = Self::zero(field, precision);
        if n <= precision {
            s.coeffs[n] = c;
        }
        s
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Re-truncates (or zero-extends) to a new precision.
    pub fn with_precision(&self, precision: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(precision + 1, RationalFunction::zero(self.field));
        Self { field: self.field, coeffs }
    }

    pub fn coeff(&self, i: usize) -> &RationalFunction {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[RationalFunction] {
        &self.coeffs
    }

    /// Exponents with nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, _)| i).collect()
    }

    /// Index of the first nonzero coefficient.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect();
        Self { field: self.field, coeffs }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect();
        Self { field: self.field, coeffs }
    }

    pub fn neg(&self) -> Self {
        Self { field: self.field, coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, c: &RationalFunction) -> Self {
        if c.is_zero() {
            return Self::zero(self.field, self.precision());
        }
        Self { field: self.field, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.precision();
        let mut out = Self::zero(self.field, n);
        let lo_a = self.order().unwrap_or(n + 1);
        let lo_b = o.order().unwrap_or(n + 1);
        for i in lo_a..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in lo_b..=(n - i) {
                if o.coeffs[j].is_zero() {
                    continue;
                }
                let prod = &self.coeffs[i] * &o.coeffs[j];
                out.coeffs[i + j] = &out.coeffs[i + j] + &prod;
            }
        }
        out
    }

    /// Multiplicative inverse; the constant term must be a unit.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.precision();
        let c0 = self.coeffs[0].inv()?;
        let mut out = Self::zero(self.field, n);
        out.coeffs[0] = c0.clone();
        for k in 1..=n {
            let mut acc = RationalFunction::zero(self.field);
            for i in 1..=k {
                if !self.coeffs[i].is_zero() && !out.coeffs[k - i].is_zero() {
                    acc = &acc + &(&self.coeffs[i] * &out.coeffs[k - i]);
                }
            }
            out.coeffs[k] = -&(&acc * &c0);
        }
        Ok(out)
    }

    /// `sum_n c_n s^n` for a series `s` without constant term.
    pub fn compose(&self, s: &Self) -> Self {
        debug_assert!(s.coeffs[0].is_zero());
        let n = self.precision();
        let mut out = Self::zero(self.field, n);
        out.coeffs[0] = self.coeffs[0].clone();
        let mut pw = s.clone();
        for k in 1..=n {
            if !self.coeffs[k].is_zero() {
                out = out.add(&pw.scale(&self.coeffs[k]));
            }
            if k < n {
                pw = pw.mul(s);
            }
        }
        out
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .support()
            .into_iter()
            .map(|i| format!("({})X^{i}", self.coeffs[i]))
            .collect();
        if terms.is_empty() {
            write!(f, "0")?;
        } else {
            write!(f, "{}", terms.join(" + "))?;
        }
        write!(f, " + O(X^{})", self.precision() + 1)
    }
}

/// Formal group law of a Weierstrass model, truncated at `X^precision`.
///
/// The chord slope at order `N` needs `A_(N+1)`, so everything is computed
/// one order further and truncated on the way out.
#[derive(Clone, Debug)]
pub struct FormalGroup {
    field: PrimeField,
    a: [RationalFunction; 5],
    precision: usize,
    work: usize,
    /// `w(z) = -1/y` as a series in `z`, to the working precision.
    w: PowerSeries,
}

impl FormalGroup {
    pub fn new(model: &WeierstrassModel, precision: usize) -> Self {
        let field = model.field();
        let a = model.coefficients().clone();
        let work = precision + 1;
        let z = PowerSeries::monomial(field, work, RationalFunction::one(field), 1);
        let z2 = z.mul(&z);
        let z3 = z2.mul(&z);
        let [a1, a2, a3, a4, a6] = &a;
        // w = z^3 + a1 z w + a2 z^2 w + a3 w^2 + a4 z w^2 + a6 w^3; each pass
        // fixes at least one more coefficient
        let mut w = PowerSeries::zero(field, work);
        for _ in 0..work {
            let w2 = w.mul(&w);
            let w3 = w2.mul(&w);
            let next = z3
                .add(&z.mul(&w).scale(a1))
                .add(&z2.mul(&w).scale(a2))
                .add(&w2.scale(a3))
                .add(&z.mul(&w2).scale(a4))
                .add(&w3.scale(a6));
            if next == w {
                break;
            }
            w = next;
        }
        Self { field, a, precision, work, w }
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    /// `w(z)` truncated at the group's precision.
    pub fn w(&self) -> PowerSeries {
        self.w.with_precision(self.precision)
    }

    /// The parameter `z` itself, i.e. `[1](X) = X`.
    pub fn identity_series(&self) -> PowerSeries {
        PowerSeries::monomial(self.field, self.precision, RationalFunction::one(self.field), 1)
    }

    /// Formal inverse `i(z) = z / (-1 + a1 z + a3 w(z))`.
    pub fn negate(&self, z: &PowerSeries) -> PowerSeries {
        self.negate_work(&z.with_precision(self.work)).with_precision(self.precision)
    }

    fn negate_work(&self, z: &PowerSeries) -> PowerSeries {
        let one = PowerSeries::monomial(self.field, self.work, RationalFunction::one(self.field), 0);
        let wz = self.w.compose(z);
        let den = one.neg().add(&z.scale(&self.a[0])).add(&wz.scale(&self.a[2]));
        z.mul(&den.inverse().expect("constant term is -1"))
    }

    /// `F(z1, z2)` for series `z1, z2` without constant term.
    pub fn add(&self, z1: &PowerSeries, z2: &PowerSeries) -> PowerSeries {
        self.add_work(&z1.with_precision(self.work), &z2.with_precision(self.work))
            .with_precision(self.precision)
    }

    fn add_work(&self, z1: &PowerSeries, z2: &PowerSeries) -> PowerSeries {
        let n = self.work;
        let field = self.field;
        let [a1, a2, a3, a4, a6] = &self.a;
        let one = PowerSeries::monomial(field, n, RationalFunction::one(field), 0);

        // lambda = sum_{k>=3} A_k h_{k-1}(z1, z2), h_m = z1 h_{m-1} + z2^m
        let mut lambda = PowerSeries::zero(field, n);
        let mut h = one.clone();
        let mut z2_pow = one.clone();
        for k in 1..n {
            z2_pow = z2_pow.mul(z2);
            h = z1.mul(&h).add(&z2_pow);
            let ak = self.w.coeff(k + 1);
            if !ak.is_zero() {
                lambda = lambda.add(&h.scale(ak));
            }
        }
        let nu = self.w.compose(z1).sub(&lambda.mul(z1));
        let l2 = lambda.mul(&lambda);
        let l3 = l2.mul(&lambda);
        let ln = lambda.mul(&nu);
        let l2n = l2.mul(&nu);
        // third intersection of the line w = lambda z + nu with the curve
        let quad = lambda
            .scale(a1)
            .add(&nu.scale(a2))
            .add(&l2.scale(a3))
            .add(&ln.scale(&a4.scale_int(2)))
            .add(&l2n.scale(&a6.scale_int(3)));
        let cubic = one.add(&lambda.scale(a2)).add(&l2.scale(a4)).add(&l3.scale(a6));
        let z3 = z1
            .add(z2)
            .add(&quad.mul(&cubic.inverse().expect("constant term is 1")))
            .neg();
        self.negate_work(&z3)
    }

    /// `[m](X)` by repeated formal addition.
    pub fn mult_by(&self, m: u64) -> PowerSeries {
        if m == 0 {
            return PowerSeries::zero(self.field, self.precision);
        }
        let x = PowerSeries::monomial(self.field, self.work, RationalFunction::one(self.field), 1);
        let mut acc = x.clone();
        for _ in 1..m {
            acc = self.add_work(&acc, &x);
        }
        acc.with_precision(self.precision)
    }
}

/// `[p](X) mod X^(N+1)` for a model integral at `place`.
pub fn formal_group_mult_by_p(model: &WeierstrassModel, place: &Place, precision: usize) -> Result<PowerSeries> {
    let p = model.p();
    if (precision as u64) < p {
        return Err(Error::PrecisionTooSmall { precision, p });
    }
    if !model.is_integral_at(place) {
        return Err(Error::NonIntegral(place.to_string()));
    }
    Ok(FormalGroup::new(model, precision).mult_by(p))
}

impl WeierstrassModel {
    pub fn formal_group(&self, precision: usize) -> FormalGroup {
        FormalGroup::new(self, precision)
    }

    pub fn formal_group_mult_by_p(&self, place: &Place, precision: usize) -> Result<PowerSeries> {
        formal_group_mult_by_p(self, place, precision)
    }
}
