//! Local reduction data via Tate's algorithm.
//!
//! The case analysis never goes through `c4`/`c6` shortcuts that fail in
//! residue characteristic 2 or 3; every root extraction happens in the
//! residue field `F_p[t]/(π)`, and translations use the polynomial lifts of
//! residues (degree below `deg π`) so that reported models are deterministic.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::funcfield::{LocalRing, Place, RationalFunction, Valuation};
use crate::gfpoly::{Field, FieldElement, GaloisField, Poly, Polynomial, PrimeField};
use crate::weierstrass::WeierstrassModel;

/// Kodaira symbol of a special fiber.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kodaira {
    /// `I_n`; `I_0` is good reduction.
    I(u32),
    II,
    III,
    IV,
    /// `I_n*`.
    IStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

impl Kodaira {
    /// Irreducible components of the geometric special fiber, without
    /// multiplicity.
    pub fn components(self) -> u32 {
        match self {
            Kodaira::I(0) => 1,
            Kodaira::I(n) => n,
            Kodaira::II => 1,
            Kodaira::III => 2,
            Kodaira::IV => 3,
            Kodaira::IStar(n) => n + 5,
            Kodaira::IVStar => 7,
            Kodaira::IIIStar => 8,
            Kodaira::IIStar => 9,
        }
    }

    pub fn is_good(self) -> bool {
        self == Kodaira::I(0)
    }

    pub fn is_multiplicative(self) -> bool {
        matches!(self, Kodaira::I(n) if n > 0)
    }

    pub fn is_additive(self) -> bool {
        !matches!(self, Kodaira::I(_))
    }
}

impl fmt::Display for Kodaira {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kodaira::I(n) => write!(f, "I{n}"),
            Kodaira::II => write!(f, "II"),
            Kodaira::III => write!(f, "III"),
            Kodaira::IV => write!(f, "IV"),
            Kodaira::IStar(n) => write!(f, "I{n}*"),
            Kodaira::IVStar => write!(f, "IV*"),
            Kodaira::IIIStar => write!(f, "III*"),
            Kodaira::IIStar => write!(f, "II*"),
        }
    }
}

impl FromStr for Kodaira {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown Kodaira symbol {s:?}"));
        Ok(match s {
            "II" => Kodaira::II,
            "III" => Kodaira::III,
            "IV" => Kodaira::IV,
            "IV*" => Kodaira::IVStar,
            "III*" => Kodaira::IIIStar,
            "II*" => Kodaira::IIStar,
            _ => {
                let rest = s.strip_prefix('I').ok_or_else(bad)?;
                let (digits, star) = match rest.strip_suffix('*') {
                    Some(d) => (d, true),
                    None => (rest, false),
                };
                if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(bad());
                }
                let n: u32 = digits.parse().map_err(|_| bad())?;
                if star {
                    Kodaira::IStar(n)
                } else {
                    Kodaira::I(n)
                }
            }
        })
    }
}

impl Serialize for Kodaira {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Output of Tate's algorithm at one place.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalReduction {
    pub place: Place,
    pub kodaira: Kodaira,
    /// Valuation of the minimal discriminant.
    pub v_delta_min: u32,
    /// Geometric component count.
    pub m_geom: u32,
    /// Arithmetic Tamagawa number.
    pub tamagawa: u32,
    /// Conductor exponent.
    pub f_cond: u32,
    /// Split or non-split, for multiplicative reduction only.
    pub split: Option<bool>,
    /// Model after all restarts; local coordinate `s = 1/t` at infinity.
    pub minimal_model: WeierstrassModel,
    /// Number of `u = π` rescalings performed.
    pub restarts: u32,
}

struct Local {
    ring: LocalRing,
    gf: GaloisField,
    pi: RationalFunction,
    p: u64,
}

impl Local {
    fn v(&self, f: &RationalFunction) -> Valuation {
        self.ring.val(f)
    }

    fn vi(&self, f: &RationalFunction) -> i64 {
        self.v(f).finite().unwrap_or(i64::MAX)
    }

    fn pdiv(&self, f: &RationalFunction) -> bool {
        self.v(f).at_least(1)
    }

    fn res(&self, f: &RationalFunction) -> Result<FieldElement> {
        self.ring
            .residue(f)
            .map_err(|_| Error::Inconsistency(format!("{f} is not integral at {}", self.ring.place())))
    }

    fn preduce(&self, f: &RationalFunction) -> Result<RationalFunction> {
        Ok(self.ring.lift(&self.res(f)?))
    }

    fn pinv(&self, f: &RationalFunction) -> Result<RationalFunction> {
        let r = self.res(f)?;
        let inv = self
            .gf
            .inv(&r)
            .ok_or_else(|| Error::Inconsistency(format!("{f} is not a unit at {}", self.ring.place())))?;
        Ok(self.ring.lift(&inv))
    }

    /// Lift of the `p`-th root of the residue.
    fn proot(&self, f: &RationalFunction) -> Result<RationalFunction> {
        Ok(self.ring.lift(&self.gf.pth_root(&self.res(f)?)))
    }

    fn pk(&self, k: u32) -> RationalFunction {
        self.ring.pi_pow(k)
    }

    fn over(&self, f: &RationalFunction, d: &RationalFunction) -> RationalFunction {
        f.checked_div(d).expect("division by a power of π")
    }

    fn konst(&self, c: i64) -> RationalFunction {
        RationalFunction::constant(self.pi.field(), c)
    }

    /// Whether `a X^2 + b X + c` has a root in the residue field.
    fn quad_roots(&self, a: &RationalFunction, b: &RationalFunction, c: &RationalFunction) -> Result<bool> {
        let (a, b, c) = (self.res(a)?, self.res(b)?, self.res(c)?);
        if a.is_zero() {
            return Ok(!b.is_zero() || c.is_zero());
        }
        Ok(Poly::new(self.gf.clone(), vec![c, b, a]).has_root())
    }

    /// Number of distinct residue-field roots of `X^3 + b X^2 + c X + d`.
    fn cubic_roots(&self, b: &RationalFunction, c: &RationalFunction, d: &RationalFunction) -> Result<u32> {
        let coeffs = vec![self.res(d)?, self.res(c)?, self.res(b)?, self.gf.one()];
        Ok(Poly::new(self.gf.clone(), coeffs).roots()?.len() as u32)
    }
}

fn zero(field: PrimeField) -> RationalFunction {
    RationalFunction::zero(field)
}

/// Tate's algorithm at the finite place `(π)`.
pub fn tate_algorithm(model: &WeierstrassModel, place: &Place) -> Result<LocalReduction> {
    let pi = match place {
        Place::Finite(pi) => pi.clone(),
        Place::Infinite => {
            return Err(Error::InvalidArgument(
                "use local_at_infinity for the infinite place".into(),
            ))
        }
    };
    if !model.is_integral_at(place) {
        return Err(Error::NonIntegral(place.to_string()));
    }
    let field = model.field();
    let ring = LocalRing::new(&pi);
    let gf = ring.residue_field().clone();
    let lc = Local { pi: ring.uniformizer().clone(), ring, gf, p: field.p() };
    let mut restarts = 0u32;
    let mut start = model.clone();
    loop {
        match tate_pass(&lc, &start)? {
            Pass::Done { kodaira, tamagawa, split } => {
                let v_delta = lc.vi(&start.discriminant());
                let v_delta_min = u32::try_from(v_delta)
                    .map_err(|_| Error::Inconsistency("negative discriminant valuation".into()))?;
                let m_geom = kodaira.components();
                let f = v_delta + 1 - m_geom as i64;
                if f < 0 || (kodaira.is_good() != (v_delta_min == 0)) {
                    return Err(Error::Inconsistency(format!(
                        "{kodaira} with v(Δ) = {v_delta_min} at {place}"
                    )));
                }
                let f_cond = if kodaira.is_good() { 0 } else { f as u32 };
                return Ok(LocalReduction {
                    place: place.clone(),
                    kodaira,
                    v_delta_min,
                    m_geom,
                    tamagawa,
                    f_cond,
                    split,
                    minimal_model: start,
                    restarts,
                });
            }
            Pass::Restart(next) => {
                restarts += 1;
                start = *next;
            }
        }
    }
}

/// Tate's algorithm at infinity, run on the model in `s = 1/t`.
pub fn local_at_infinity(model: &WeierstrassModel, height: u32) -> Result<LocalReduction> {
    let at_inf = model.model_at_infinity(height)?;
    let mut red = tate_algorithm(&at_inf, &Place::t(model.field()))?;
    red.place = Place::Infinite;
    Ok(red)
}

enum Pass {
    Done { kodaira: Kodaira, tamagawa: u32, split: Option<bool> },
    Restart(Box<WeierstrassModel>),
}

fn tate_pass(lc: &Local, model: &WeierstrassModel) -> Result<Pass> {
    let field = model.field();
    let p = lc.p;
    let pi = &lc.pi;
    let z = zero(field);
    let half = if p == 2 { z.clone() } else { lc.pinv(&lc.konst(2))? };
    let done = |kodaira, tamagawa| Ok(Pass::Done { kodaira, tamagawa, split: None });

    let inv = model.invariants();
    let v_delta = lc.vi(&inv.delta);
    if v_delta == 0 {
        return done(Kodaira::I(0), 1);
    }
    let [a1, a2, _, _, _] = model.coefficients().clone();

    if lc.vi(&inv.c4) == 0 {
        let split = lc.quad_roots(&lc.konst(1), &a1, &-&a2)?;
        let n = v_delta as u32;
        let tamagawa = if split { n } else if n.is_multiple_of(2) { 2 } else { 1 };
        return Ok(Pass::Done { kodaira: Kodaira::I(n), tamagawa, split: Some(split) });
    }

    // additive: move the singular point to (0, 0)
    let [a1, a2, a3, a4, a6] = model.coefficients().clone();
    let (b2, b4, b6) = (&inv.b2, &inv.b4, &inv.b6);
    let (r, t) = if p == 2 {
        if lc.pdiv(b2) {
            let r = lc.proot(&a4)?;
            let t = lc.proot(&(&(&(&(&(&r + &a2) * &r) + &a4) * &r) + &a6))?;
            (r, t)
        } else {
            let a1inv = lc.pinv(&a1)?;
            let r = &a1inv * &a3;
            let t = &a1inv * &(&a4 + &(&r * &r));
            (r, t)
        }
    } else if p == 3 {
        let r = if lc.pdiv(b2) { lc.proot(&-b6)? } else { -&(&lc.pinv(b2)? * b4) };
        let t = &(&a1 * &r) + &a3;
        (r, t)
    } else {
        let r = if lc.pdiv(&inv.c4) {
            -&(&lc.pinv(&lc.konst(12))? * b2)
        } else {
            -&(&lc.pinv(&inv.c4.scale_int(12))? * &(&inv.c6 + &(b2 * &inv.c4)))
        };
        let t = -&(&half * &(&(&a1 * &r) + &a3));
        (r, t)
    };
    let r = lc.preduce(&r)?;
    let t = lc.preduce(&t)?;
    let mut c = model.rst(&r, &z, &t);
    {
        let [_, _, a3, a4, a6] = c.coefficients();
        if !(lc.pdiv(a3) && lc.pdiv(a4) && lc.pdiv(a6)) {
            return Err(Error::Inconsistency("singular point not moved to the origin".into()));
        }
    }
    let [_, b4, b6, b8] = c.b_invariants();
    let _ = b4;
    let [_, _, a3, _, a6] = c.coefficients().clone();

    if lc.vi(&a6) < 2 {
        return done(Kodaira::II, 1);
    }
    if lc.vi(&b8) < 3 {
        return done(Kodaira::III, 2);
    }
    if lc.vi(&b6) < 3 {
        let a3t = lc.over(&a3, pi);
        let a6t = lc.over(&a6, &lc.pk(2));
        let cp = if lc.quad_roots(&lc.konst(1), &a3t, &-&a6t)? { 3 } else { 1 };
        return done(Kodaira::IV, cp);
    }

    // make π | a1, a2; π^2 | a3, a4; π^3 | a6
    let [a1, a2, a3, _, a6] = c.coefficients().clone();
    let (s, t) = if p == 2 {
        (lc.proot(&a2)?, pi * &lc.proot(&lc.over(&a6, &lc.pk(2)))?)
    } else if p == 3 {
        (a1.clone(), a3.clone())
    } else {
        (-&(&a1 * &half), -&(&a3 * &half))
    };
    c = c.rst(&z, &s, &t);
    let [_, a2, _, a4, a6] = c.coefficients().clone();

    // cubic T^3 + b T^2 + c T + d
    let b = lc.preduce(&lc.over(&a2, pi))?;
    let cc = lc.preduce(&lc.over(&a4, &lc.pk(2)))?;
    let d = lc.preduce(&lc.over(&a6, &lc.pk(3)))?;
    let bb = &b * &b;
    let ccc = &cc * &cc;
    let bc = &b * &cc;
    let w = &(&(&(&(&d * &d).scale_int(27) - &(&bb * &ccc)) + &(&(&b * &bb) * &d).scale_int(4))
        - &(&bc * &d).scale_int(18))
        + &(&cc * &ccc).scale_int(4);
    let x = &cc.scale_int(3) - &bb;
    let sw = if lc.pdiv(&w) {
        if lc.pdiv(&x) {
            3
        } else {
            2
        }
    } else {
        1
    };

    if sw == 1 {
        return done(Kodaira::IStar(0), 1 + lc.cubic_roots(&b, &cc, &d)?);
    }

    if sw == 2 {
        // double root to T = 0
        let r = if p == 2 {
            lc.proot(&cc)?
        } else if p == 3 {
            &cc * &lc.pinv(&b)?
        } else {
            &(&bc - &d.scale_int(9)) * &lc.pinv(&x.scale_int(2))?
        };
        let r = pi * &lc.preduce(&r)?;
        c = c.rst(&r, &z, &z);
        let (mut ix, mut iy) = (3u32, 3u32);
        let mut mx = lc.pk(2);
        let mut my = mx.clone();
        let cp;
        loop {
            let [_, a2, a3, a4, a6] = c.coefficients().clone();
            let a3t = lc.preduce(&lc.over(&a3, &my))?;
            let a6t = lc.preduce(&lc.over(&a6, &(&mx * &my)))?;
            if lc.pdiv(&(&(&a3t * &a3t) + &a6t.scale_int(4))) {
                let _ = (a2, a4);
                let t = if p == 2 {
                    &my * &lc.proot(&a6t)?
                } else {
                    &my * &lc.preduce(&-&(&a3t * &half))?
                };
                c = c.rst(&z, &z, &t);
                my = &my * pi;
                iy += 1;
                let [_, a2, _, a4, a6] = c.coefficients().clone();
                let a2t = lc.preduce(&lc.over(&a2, pi))?;
                let a4t = lc.preduce(&lc.over(&a4, &(pi * &mx)))?;
                let a6t = lc.preduce(&lc.over(&a6, &(&mx * &my)))?;
                if lc.pdiv(&(&(&a4t * &a4t) - &(&a6t * &a2t).scale_int(4))) {
                    let r = if p == 2 {
                        &mx * &lc.proot(&(&a6t * &lc.pinv(&a2t)?))?
                    } else {
                        &mx * &lc.preduce(&-&(&a4t * &lc.pinv(&a2t.scale_int(2))?))?
                    };
                    c = c.rst(&r, &z, &z);
                    mx = &mx * pi;
                    ix += 1;
                } else {
                    cp = if lc.quad_roots(&a2t, &a4t, &a6t)? { 4 } else { 2 };
                    break;
                }
            } else {
                cp = if lc.quad_roots(&lc.konst(1), &a3t, &-&a6t)? { 4 } else { 2 };
                break;
            }
        }
        return done(Kodaira::IStar(ix + iy - 5), cp);
    }

    // triple root to T = 0
    let r = if p == 2 {
        b.clone()
    } else if p == 3 {
        lc.proot(&-&d)?
    } else {
        -&(&b * &lc.pinv(&lc.konst(3))?)
    };
    let r = pi * &lc.preduce(&r)?;
    c = c.rst(&r, &z, &z);
    let [_, _, a3, _, a6] = c.coefficients().clone();
    let x3t = lc.preduce(&lc.over(&a3, &lc.pk(2)))?;
    let x6t = lc.preduce(&lc.over(&a6, &lc.pk(4)))?;
    if !lc.pdiv(&(&(&x3t * &x3t) + &x6t.scale_int(4))) {
        let cp = if lc.quad_roots(&lc.konst(1), &x3t, &-&x6t)? { 3 } else { 1 };
        return done(Kodaira::IVStar, cp);
    }
    let t = if p == 2 {
        &lc.pk(2) * &lc.proot(&x6t)?
    } else {
        &lc.pk(2) * &lc.preduce(&-&(&x3t * &half))?
    };
    c = c.rst(&z, &z, &t);
    let [_, _, _, a4, a6] = c.coefficients().clone();
    if lc.vi(&a4) < 4 {
        return done(Kodaira::IIIStar, 2);
    }
    if lc.vi(&a6) < 6 {
        return done(Kodaira::IIStar, 1);
    }
    Ok(Pass::Restart(Box::new(c.scale_down(pi))))
}

/// Finite places dividing a nonzero polynomial, as `(place, multiplicity)`.
pub fn places_dividing(f: &Polynomial) -> Result<Vec<(Place, u32)>> {
    let mut out: Vec<(Place, u32)> = f
        .factorize()?
        .factors
        .into_iter()
        .map(|(g, e)| (Place::Finite(g), e))
        .collect();
    out.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn place(p: u64, c: &[i64]) -> Place {
        Place::finite(Polynomial::from_i64s(fp(p), c)).unwrap()
    }

    #[test]
    fn kodaira_round_trip() {
        for s in ["I0", "I1", "I12", "II", "III", "IV", "I0*", "I3*", "IV*", "III*", "II*"] {
            assert_eq!(s.parse::<Kodaira>().unwrap().to_string(), s);
        }
        for s in ["", "I", "I*", "V", "Ix", "II**"] {
            assert!(s.parse::<Kodaira>().is_err(), "{s}");
        }
    }

    #[test]
    fn reference_curve_at_t() {
        for (p, vd, f) in [(5, 10, 2), (2, 11, 3), (3, 11, 3), (7, 10, 2)] {
            let m = WeierstrassModel::reference_curve(p).unwrap();
            let red = tate_algorithm(&m, &Place::t(fp(p))).unwrap();
            assert_eq!(red.kodaira, Kodaira::IIStar, "p={p}");
            assert_eq!((red.v_delta_min, red.m_geom, red.tamagawa, red.f_cond), (vd, 9, 1, f), "p={p}");
            assert_eq!(red.restarts, 0);
        }
    }

    #[test]
    fn reference_curve_multiplicative_places() {
        let m = WeierstrassModel::reference_curve(83).unwrap();
        let red = tate_algorithm(&m, &place(83, &[2, 1])).unwrap();
        assert_eq!(red.kodaira, Kodaira::I(1));
        assert_eq!((red.f_cond, red.tamagawa), (1, 1));
        assert!(red.split.is_some());
        let inf = local_at_infinity(&m, 1).unwrap();
        assert_eq!(inf.kodaira, Kodaira::I(1));
        assert_eq!(inf.place, Place::Infinite);

        let m = WeierstrassModel::reference_curve(2).unwrap();
        let red = tate_algorithm(&m, &place(2, &[1, 1])).unwrap();
        assert_eq!(red.kodaira, Kodaira::I(1));
        for p in [2, 5] {
            let m = WeierstrassModel::reference_curve(p).unwrap();
            assert_eq!(local_at_infinity(&m, 1).unwrap().kodaira, Kodaira::I(0), "p={p}");
        }
    }

    #[test]
    fn quadratic_place_has_extension_residue_field() {
        let m = WeierstrassModel::reference_curve(5).unwrap();
        let red = tate_algorithm(&m, &place(5, &[4, 2, 1])).unwrap();
        assert_eq!(red.kodaira, Kodaira::I(1));
        assert_eq!(red.place.degree(), 2);
    }

    #[test]
    fn good_place() {
        let m = WeierstrassModel::reference_curve(5).unwrap();
        let red = tate_algorithm(&m, &place(5, &[1, 1])).unwrap();
        assert_eq!(red.kodaira, Kodaira::I(0));
        assert_eq!((red.v_delta_min, red.m_geom, red.tamagawa, red.f_cond), (0, 1, 1, 0));
    }

    #[test]
    fn non_integral_rejected() {
        let m = WeierstrassModel::parse(5, ["0", "0", "0", "1", "1"]).unwrap();
        let u = RationalFunction::t(fp(5));
        let z = RationalFunction::zero(fp(5));
        let scaled = m.transform(&u, &z, &z, &z).unwrap();
        assert!(matches!(tate_algorithm(&scaled, &Place::t(fp(5))), Err(Error::NonIntegral(_))));
    }

    /// Standard forms `y^2 = x^3 + a x + b` (and char 2/3 analogues) with
    /// known reduction types at `(t)`.
    #[test]
    fn standard_forms() {
        let cases: &[(u64, [&str; 5], &str, u32)] = &[
            (5, ["0", "0", "0", "0", "t"], "II", 1),
            (5, ["0", "0", "0", "t", "0"], "III", 2),
            (5, ["0", "0", "0", "0", "t^2"], "IV", 3),
            (7, ["0", "0", "0", "0", "3t^2"], "IV", 1),
            (5, ["0", "0", "0", "t^2", "t^3"], "I0*", 1),
            (5, ["0", "t", "0", "t^3", "0"], "I2*", 4),
            (5, ["0", "t", "0", "0", "t^4"], "I1*", 4),
            (5, ["0", "t", "0", "0", "2t^4"], "I1*", 2),
            (5, ["0", "0", "0", "0", "t^4"], "IV*", 3),
            (7, ["0", "0", "0", "0", "3t^4"], "IV*", 1),
            (5, ["0", "0", "0", "t^3", "0"], "III*", 2),
            (5, ["0", "0", "0", "0", "t^5"], "II*", 1),
            (5, ["1", "0", "0", "0", "t"], "I1", 1),
            (5, ["1", "0", "0", "0", "t^3"], "I3", 3),
            (2, ["0", "0", "t", "0", "0"], "IV", 3),
            (2, ["1", "0", "0", "0", "t"], "I1", 1),
            (3, ["0", "0", "0", "-t", "t"], "II", 1),
        ];
        for (p, a, ks, cp) in cases {
            let m = WeierstrassModel::parse(*p, *a).unwrap();
            let red = tate_algorithm(&m, &Place::t(fp(*p))).unwrap();
            assert_eq!(red.kodaira.to_string(), *ks, "p={p} {a:?}");
            assert_eq!(red.tamagawa, *cp, "p={p} {a:?}");
            assert_eq!(red.f_cond as i64, red.v_delta_min as i64 - red.m_geom as i64 + 1);
        }
    }

    #[test]
    fn restart_recovers_minimal_model() {
        // y^2 = x^3 + t^4 x + t^6 + t^7 is t^{1}-scaled from a model with good reduction
        let m = WeierstrassModel::parse(7, ["0", "0", "0", "t^4", "t^6+t^7"]).unwrap();
        let red = tate_algorithm(&m, &Place::t(fp(7))).unwrap();
        assert_eq!(red.restarts, 1);
        assert_eq!(red.kodaira, Kodaira::I(0));
        let again = tate_algorithm(&red.minimal_model, &Place::t(fp(7))).unwrap();
        assert_eq!(again.restarts, 0);
        assert_eq!(again.minimal_model, red.minimal_model);
    }
}
