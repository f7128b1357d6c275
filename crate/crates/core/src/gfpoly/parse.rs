//! Text format for polynomials in `F_p[t]`: a sum of terms `c*t^k`, e.g.
//! `t^3 + 2t + 1` or `83t^2 - 199*t + 432`. Coefficients are reduced mod p.

use super::field::PrimeField;
use super::poly::Polynomial;
use crate::error::{Error, Result};

pub fn parse_polynomial(field: PrimeField, text: &str) -> Result<Polynomial> {
    let err = |msg: &str| Error::Parse(format!("{msg} in polynomial {text:?}"));
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(err("empty input"));
    }
    let mut coeffs: Vec<i64> = Vec::new();
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let mut sign = 1i64;
        let mut saw_sign = false;
        while i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
            if bytes[i] == b'-' {
                sign = -sign;
            }
            saw_sign = true;
            i += 1;
        }
        if i > 0 && !saw_sign {
            return Err(err("missing operator"));
        }
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let coeff = if i > start {
            s[start..i]
                .parse::<u64>()
                .map_err(|_| err("coefficient out of range"))?
        } else {
            1
        };
        let has_coeff = i > start;
        if i < bytes.len() && bytes[i] == b'*' {
            if !has_coeff {
                return Err(err("dangling '*'"));
            }
            i += 1;
            if i >= bytes.len() || bytes[i] != b't' {
                return Err(err("expected 't' after '*'"));
            }
        }
        let exp = if i < bytes.len() && bytes[i] == b't' {
            i += 1;
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                let es = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if es == i {
                    return Err(err("missing exponent"));
                }
                s[es..i].parse::<usize>().map_err(|_| err("exponent out of range"))?
            } else {
                1
            }
        } else {
            if !has_coeff {
                return Err(err("expected a term"));
            }
            0
        };
        if exp > 100_000 {
            return Err(err("exponent out of range"));
        }
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, 0);
        }
        let c = field.reduce((coeff % field.p()) as i64) as i64 * sign;
        coeffs[exp] = (coeffs[exp] + c).rem_euclid(field.p() as i64);
        if i < bytes.len() && bytes[i] != b'+' && bytes[i] != b'-' {
            return Err(err(&format!("unexpected character {:?}", bytes[i] as char)));
        }
    }
    Ok(Polynomial::from_i64s(field, &coeffs))
}
