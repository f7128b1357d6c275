//! Independent oracles: plain integer-vector arithmetic, never the crate's own.
#![allow(dead_code)]

use ffec_core::{Polynomial, PrimeField};

pub fn primes_upto(n: u64) -> Vec<u64> {
    (2..=n).filter(|&k| (2..k).take_while(|d| d * d <= k).all(|d| k % d != 0)).collect()
}

pub fn fp(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

// ---- Z[t] with i128 coefficients, lowest degree first ----

pub type ZPoly = Vec<i128>;

pub fn ztrim(mut a: ZPoly) -> ZPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn zadd(a: &[i128], b: &[i128]) -> ZPoly {
    let n = a.len().max(b.len());
    ztrim((0..n).map(|i| a.get(i).unwrap_or(&0) + b.get(i).unwrap_or(&0)).collect())
}

pub fn zscale(a: &[i128], c: i128) -> ZPoly {
    ztrim(a.iter().map(|x| x * c).collect())
}

pub fn zsub(a: &[i128], b: &[i128]) -> ZPoly {
    zadd(a, &zscale(b, -1))
}

pub fn zmul(a: &[i128], b: &[i128]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    ztrim(out)
}

pub fn zmono(c: i128, k: usize) -> ZPoly {
    let mut v = vec![0; k + 1];
    v[k] = c;
    ztrim(v)
}

/// `a1..a6` of the curve over `Z[t]`.
pub fn reference_a() -> [ZPoly; 5] {
    [zmono(1, 1), zmono(1, 2), zmono(1, 3), zmono(1, 4), zmono(1, 5)]
}

/// `(c4, Δ)` over `Z[t]` from the textbook b-invariant formulas.
pub fn c4_delta_z(a: &[ZPoly; 5]) -> (ZPoly, ZPoly) {
    let [a1, a2, a3, a4, a6] = a;
    let b2 = zadd(&zmul(a1, a1), &zscale(a2, 4));
    let b4 = zadd(&zmul(a1, a3), &zscale(a4, 2));
    let b6 = zadd(&zmul(a3, a3), &zscale(a6, 4));
    let b8 = zsub(
        &zadd(&zadd(&zmul(&zmul(a1, a1), a6), &zscale(&zmul(a2, a6), 4)), &zmul(&zmul(a2, a3), a3)),
        &zadd(&zmul(&zmul(a1, a3), a4), &zmul(a4, a4)),
    );
    let c4 = zsub(&zmul(&b2, &b2), &zscale(&b4, 24));
    let delta = zadd(
        &zsub(
            &zsub(&zscale(&zmul(&zmul(&b2, &b2), &b8), -1), &zscale(&zmul(&zmul(&b4, &b4), &b4), 8)),
            &zscale(&zmul(&b6, &b6), 27),
        ),
        &zscale(&zmul(&zmul(&b2, &b4), &b6), 9),
    );
    (c4, delta)
}

pub fn reduce_z(p: u64, a: &[i128]) -> Polynomial {
    let c: Vec<i64> = a.iter().map(|x| x.rem_euclid(p as i128) as i64).collect();
    Polynomial::from_i64s(fp(p), &c)
}

// ---- F_p[t] as raw u64 vectors, lowest degree first ----

pub fn rtrim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn pinv(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Remainder of `a` by a monic or general nonzero `b`.
pub fn rrem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let b = rtrim(b.to_vec());
    let mut r = rtrim(a.to_vec());
    let db = b.len() - 1;
    let li = pinv(b[db], p);
    while r.len() > db {
        let k = r.len() - 1;
        let c = r[k] * li % p;
        for i in 0..=db {
            let idx = k - db + i;
            r[idx] = (r[idx] + p - c * b[i] % p) % p;
        }
        r = rtrim(r);
    }
    r
}

pub fn rmulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    rrem(&out, m, p)
}

pub fn rgcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (rtrim(a.to_vec()), rtrim(b.to_vec()));
    while !b.is_empty() {
        let r = rrem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Exhaustive trial division by every monic polynomial of degree
/// `1..=deg/2`; `None` when that exceeds `budget` candidates.
pub fn irreducible_by_trial_division(f: &[u64], p: u64, budget: u64) -> Option<bool> {
    let f = rtrim(f.to_vec());
    let n = f.len() - 1;
    if n == 0 {
        return Some(false);
    }
    let mut count = 0u64;
    for d in 1..=n / 2 {
        count = count.saturating_add(p.saturating_pow(d as u32));
    }
    if count > budget {
        return None;
    }
    for d in 1..=n / 2 {
        let total = p.pow(d as u32);
        let mut g = vec![0u64; d + 1];
        g[d] = 1;
        for idx in 0..total {
            let mut k = idx;
            for c in g.iter_mut().take(d) {
                *c = k % p;
                k /= p;
            }
            if rrem(&f, &g, p).is_empty() {
                return Some(false);
            }
        }
    }
    Some(true)
}

/// Berlekamp's criterion: `f` is irreducible iff it is squarefree and the
/// Frobenius matrix minus identity has nullity one.
pub fn irreducible_by_berlekamp(f: &[u64], p: u64) -> bool {
    let f = rtrim(f.to_vec());
    let n = f.len() - 1;
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let df: Vec<u64> = rtrim((1..f.len()).map(|i| f[i] * (i as u64 % p) % p).collect());
    if df.is_empty() || rgcd(&f, &df, p).len() > 1 {
        return false;
    }
    // rows: x^(ip) mod f
    let mut xp = vec![1u64];
    let mut base = rrem(&[0, 1], &f, p);
    let mut e = p;
    while e > 0 {
        if e & 1 == 1 {
            xp = rmulmod(&xp, &base, &f, p);
        }
        base = rmulmod(&base, &base, &f, p);
        e >>= 1;
    }
    let mut m = vec![vec![0u64; n]; n];
    let mut row = vec![1u64];
    for (i, mrow) in m.iter_mut().enumerate() {
        for (j, c) in row.iter().enumerate() {
            mrow[j] = *c;
        }
        mrow[i] = (mrow[i] + p - 1) % p;
        row = rmulmod(&row, &xp, &f, p);
    }
    let mut rank = 0;
    for col in 0..n {
        let Some(piv) = (rank..n).find(|&r| m[r][col] != 0) else { continue };
        m.swap(rank, piv);
        let inv = pinv(m[rank][col], p);
        for j in 0..n {
            m[rank][j] = m[rank][j] * inv % p;
        }
        for r in 0..n {
            if r != rank && m[r][col] != 0 {
                let c = m[r][col];
                for j in 0..n {
                    m[r][j] = (m[r][j] + p - c * m[rank][j] % p) % p;
                }
            }
        }
        rank += 1;
    }
    n - rank == 1
}

/// Order by repeated addition.
pub fn brute_order(factors: &[u64], g: &[u64]) -> u64 {
    let mut x = g.to_vec();
    let mut k = 1;
    while x.iter().any(|&c| c != 0) {
        for (c, (y, d)) in x.iter_mut().zip(g.iter().zip(factors)) {
            *c = (*c + y) % d;
        }
        k += 1;
    }
    k
}
