//! Weierstrass models over `F_p(t)`.

mod formal;

pub use formal::{FormalGroup, PowerSeries};

use std::fmt;

use crate::error::{Error, Result};
use crate::funcfield::{Place, RationalFunction};
use crate::gfpoly::{parse_polynomial, Poly, Polynomial, PrimeField};

/// `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6` with `a_i` in `F_p(t)`
/// and nonzero discriminant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeierstrassModel {
    field: PrimeField,
    a: [RationalFunction; 5],
}

/// Standard invariants; all formulas are the characteristic-free ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelInvariants {
    pub b2: RationalFunction,
    pub b4: RationalFunction,
    pub b6: RationalFunction,
    pub b8: RationalFunction,
    pub c4: RationalFunction,
    pub c6: RationalFunction,
    pub delta: RationalFunction,
    pub j: RationalFunction,
}

fn b_invariants(a: &[RationalFunction; 5]) -> [RationalFunction; 4] {
    let [a1, a2, a3, a4, a6] = a;
    let b2 = &(a1 * a1) + &a2.scale_int(4);
    let b4 = &(a1 * a3) + &a4.scale_int(2);
    let b6 = &(a3 * a3) + &a6.scale_int(4);
    let b8 = &(&(&(&(&(a1 * a1) * a6) + &(a2 * a6).scale_int(4)) - &(&(a1 * a3) * a4))
        + &(&(a2 * a3) * a3))
        - &(a4 * a4);
    [b2, b4, b6, b8]
}

fn discriminant_from_b(b: &[RationalFunction; 4]) -> RationalFunction {
    let [b2, b4, b6, b8] = b;
    let t1 = -&(&(b2 * b2) * b8);
    let t2 = (&(b4 * b4) * b4).scale_int(8);
    let t3 = (b6 * b6).scale_int(27);
    let t4 = (&(b2 * b4) * b6).scale_int(9);
    &(&(&t1 - &t2) - &t3) + &t4
}

impl WeierstrassModel {
    pub fn new(a1: RationalFunction, a2: RationalFunction, a3: RationalFunction, a4: RationalFunction, a6: RationalFunction) -> Result<Self> {
        Self::from_array([a1, a2, a3, a4, a6])
    }

    pub fn from_array(a: [RationalFunction; 5]) -> Result<Self> {
        let field = a[0].field();
        if a.iter().any(|x| x.field() != field) {
            return Err(Error::InvalidArgument("coefficients over different fields".into()));
        }
        let b = b_invariants(&a);
        if discriminant_from_b(&b).is_zero() {
            return Err(Error::SingularModel);
        }
        Ok(Self { field, a })
    }

    pub fn from_polys(a: [Polynomial; 5]) -> Result<Self> {
        Self::from_array(a.map(RationalFunction::from_poly))
    }

    /// Parses five polynomial strings `a1, a2, a3, a4, a6`.
    pub fn parse(p: u64, a: [&str; 5]) -> Result<Self> {
        let field = PrimeField::new(p)?;
        let polys: Vec<Polynomial> = a.iter().map(|s| parse_polynomial(field, s)).collect::<Result<_>>()?;
        Self::from_polys(polys.try_into().unwrap())
    }

    /// `y^2 + txy + t^3y = x^3 + t^2x^2 + t^4x + t^5`.
    pub fn reference_curve(p: u64) -> Result<Self> {
        let field = PrimeField::new(p)?;
        let mono = |k: usize| Poly::monomial(field, 1, k);
        Self::from_polys([mono(1), mono(2), mono(3), mono(4), mono(5)])
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn p(&self) -> u64 {
        self.field.p()
    }

    pub fn coefficients(&self) -> &[RationalFunction; 5] {
        &self.a
    }

    pub fn a1(&self) -> &RationalFunction {
        &self.a[0]
    }
    pub fn a2(&self) -> &RationalFunction {
        &self.a[1]
    }
    pub fn a3(&self) -> &RationalFunction {
        &self.a[2]
    }
    pub fn a4(&self) -> &RationalFunction {
        &self.a[3]
    }
    pub fn a6(&self) -> &RationalFunction {
        &self.a[4]
    }

    pub fn b_invariants(&self) -> [RationalFunction; 4] {
        b_invariants(&self.a)
    }

    pub fn discriminant(&self) -> RationalFunction {
        discriminant_from_b(&self.b_invariants())
    }

    pub fn c4(&self) -> RationalFunction {
        let [b2, b4, _, _] = self.b_invariants();
        &(&b2 * &b2) - &b4.scale_int(24)
    }

    pub fn invariants(&self) -> ModelInvariants {
        let [b2, b4, b6, b8] = self.b_invariants();
        let c4 = &(&b2 * &b2) - &b4.scale_int(24);
        let c6 = &(&(-&(&(&b2 * &b2) * &b2)) + &(&b2 * &b4).scale_int(36)) - &b6.scale_int(216);
        let delta = discriminant_from_b(&[b2.clone(), b4.clone(), b6.clone(), b8.clone()]);
        let j = (&(&c4 * &c4) * &c4).checked_div(&delta).expect("model is nonsingular");
        ModelInvariants { b2, b4, b6, b8, c4, c6, delta, j }
    }

    pub fn j_invariant(&self) -> RationalFunction {
        self.invariants().j
    }

    /// Change of coordinates `x = u^2 x' + r`, `y = u^3 y' + u^2 s x' + w`.
    pub fn transform(&self, u: &RationalFunction, r: &RationalFunction, s: &RationalFunction, w: &RationalFunction) -> Result<Self> {
        if u.is_zero() {
            return Err(Error::InvalidArgument("u must be nonzero".into()));
        }
        let m = self.rst(r, s, w);
        if u.is_one() {
            return Ok(m);
        }
        let ui = u.inv()?;
        let ui2 = &ui * &ui;
        let ui3 = &ui2 * &ui;
        let ui4 = &ui2 * &ui2;
        let ui6 = &ui3 * &ui3;
        let [a1, a2, a3, a4, a6] = &m.a;
        Ok(Self { field: self.field, a: [a1 * &ui, a2 * &ui2, a3 * &ui3, a4 * &ui4, a6 * &ui6] })
    }

    /// The `u = 1` case of [`transform`](Self::transform).
    pub fn rst(&self, r: &RationalFunction, s: &RationalFunction, w: &RationalFunction) -> Self {
        let [a1, a2, a3, a4, a6] = &self.a;
        let n1 = a1 + &s.scale_int(2);
        let n2 = &(&(a2 - &(s * a1)) + &r.scale_int(3)) - &(s * s);
        let n3 = &(a3 + &(r * a1)) + &w.scale_int(2);
        let n4 = &(&(&(&(a4 - &(s * a3)) + &(r * a2).scale_int(2)) - &(&(w + &(r * s)) * a1))
            + &(r * r).scale_int(3))
            - &(s * w).scale_int(2);
        let n6 = &(&(&(&(&(a6 + &(r * a4)) + &(&(r * r) * a2)) + &(&(r * r) * r)) - &(w * a3)) - &(w * w))
            - &(&(r * w) * a1);
        Self { field: self.field, a: [n1, n2, n3, n4, n6] }
    }

    /// Divides `a_i` by `π^i` (the `u = π` transform with `r = s = w = 0`).
    pub(crate) fn scale_down(&self, pi: &RationalFunction) -> Self {
        let ex = [1i64, 2, 3, 4, 6];
        let a = std::array::from_fn(|i| self.a[i].checked_div(&pi.pow(ex[i]).unwrap()).unwrap());
        Self { field: self.field, a }
    }

    pub fn is_polynomial(&self) -> bool {
        self.a.iter().all(|x| x.is_polynomial())
    }

    pub fn is_integral_at(&self, place: &Place) -> bool {
        self.a.iter().all(|x| x.valuation(place).at_least(0))
    }

    /// Least `n` with `deg a_i <= n i`; the zero coefficient imposes nothing.
    pub fn height(&self) -> Result<u32> {
        let mut n = 0u32;
        for (x, i) in self.a.iter().zip([1usize, 2, 3, 4, 6]) {
            let poly = x
                .as_polynomial()
                .ok_or_else(|| Error::HeightPrecondition("coefficients must be polynomials".into()))?;
            if let Some(d) = poly.degree().finite() {
                n = n.max(d.div_ceil(i) as u32);
            }
        }
        Ok(n)
    }

    /// Polynomial model at infinity: `a_i'(s) = s^(n i) a_i(1/s)`.
    pub fn model_at_infinity(&self, n: u32) -> Result<Self> {
        let mut a = self.a.clone();
        for (x, i) in a.iter_mut().zip([1i64, 2, 3, 4, 6]) {
            let poly = x
                .as_polynomial()
                .ok_or_else(|| Error::HeightPrecondition("coefficients must be polynomials".into()))?;
            if let Some(d) = poly.degree().finite() {
                if d as i64 > n as i64 * i {
                    return Err(Error::HeightPrecondition(format!("deg a{i} = {d} exceeds {}", n as i64 * i)));
                }
            }
            *x = x.invert_variable(n as i64 * i);
            debug_assert!(x.is_polynomial());
        }
        Ok(Self { field: self.field, a })
    }

    /// Clears denominators with `u = 1/D` where `D` is the least product of
    /// powers of denominator primes making every `D^i a_i` a polynomial.
    pub fn clear_denominators(&self) -> Result<Self> {
        if self.is_polynomial() {
            return Ok(self.clone());
        }
        let mut primes: Vec<Polynomial> = Vec::new();
        for x in &self.a {
            if !x.den().is_one() {
                for (g, _) in x.den().factorize()?.factors {
                    if !primes.contains(&g) {
                        primes.push(g);
                    }
                }
            }
        }
        let mut d = Poly::one(self.field);
        for pi in &primes {
            let place = Place::Finite(pi.clone());
            let mut e = 0i64;
            for (x, i) in self.a.iter().zip([1i64, 2, 3, 4, 6]) {
                if let Some(v) = x.valuation(&place).finite() {
                    if v < 0 {
                        e = e.max((-v + i - 1) / i);
                    }
                }
            }
            d = &d * &pi.pow(e as u64);
        }
        let u = RationalFunction::from_poly(d).inv()?;
        let zero = RationalFunction::zero(self.field);
        let out = self.transform(&u, &zero, &zero, &zero)?;
        debug_assert!(out.is_polynomial());
        Ok(out)
    }

    /// `j` is constant.
    pub fn is_isotrivial(&self) -> bool {
        self.j_invariant().is_constant()
    }

    /// `j` lies in `F_p(t)^p = F_p(t^p)`.
    pub fn is_pth_power_j(&self) -> bool {
        let j = self.j_invariant();
        j.num().is_pth_power_up_to_unit() && j.den().is_pth_power_up_to_unit()
    }
}

impl fmt::Display for WeierstrassModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["a1", "a2", "a3", "a4", "a6"];
        let parts: Vec<String> = names.iter().zip(&self.a).map(|(n, x)| format!("{n} = {x}")).collect();
        write!(f, "[{}] over F_{}", parts.join(", "), self.p())
    }
}
