//! Factorization over finite fields.
//!
//! Squarefree decomposition (with p-th root extraction when the derivative
//! vanishes), distinct-degree splitting, then Cantor-Zassenhaus equal-degree
//! splitting driven by a fixed-seed RNG. When the randomized split stalls and
//! the search space is small, a deterministic exhaustive search finishes the
//! job.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::Field;
use super::poly::Poly;
use crate::error::{Error, Result};

/// Bound on `q^d` below which exhaustive searches are used.
pub const EXHAUSTIVE_LIMIT: u64 = 10_000;

const SPLIT_SEED: u64 = 0x5eed_f00d;
const MAX_SPLIT_ATTEMPTS: usize = 200;

/// `unit * prod(factor^multiplicity)` with monic irreducible factors in
/// canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization<F: Field> {
    pub unit: F::Elem,
    pub factors: Vec<(Poly<F>, u32)>,
}

impl<F: Field> Factorization<F> {
    pub fn expand(&self, field: &F) -> Poly<F> {
        let mut acc = Poly::constant(field.clone(), self.unit.clone());
        for (g, m) in &self.factors {
            acc = &acc * &g.pow(*m as u64);
        }
        acc
    }
}

impl<F: Field> Poly<F> {
    /// Rabin's test: `x^(q^n) = x mod f` and `gcd(x^(q^(n/r)) - x, f) = 1`
    /// for every prime `r | n`.
    pub fn is_irreducible(&self) -> bool {
        let n = match self.degree().finite() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(n) => n,
        };
        let f = self.monic();
        let x = Poly::x(self.field().clone());
        let mut powers = Vec::with_capacity(n + 1);
        let mut h = x.clone();
        powers.push(h.clone());
        for _ in 0..n {
            h = h.frobenius_mod(&f);
            powers.push(h.clone());
        }
        if powers[n] != x.rem(&f).unwrap() {
            return false;
        }
        prime_divisors(n)
            .into_iter()
            .all(|r| (&powers[n / r] - &x).gcd(&f).is_one())
    }

    /// Squarefree decomposition of a monic polynomial: pairs `(g_i, i)` with
    /// the `g_i` squarefree, pairwise coprime and `f = prod g_i^i`.
    pub fn squarefree_decomposition(&self) -> Vec<(Poly<F>, u32)> {
        let f = self.monic();
        let mut out = Vec::new();
        squarefree_into(&f, 1, &mut out);
        out
    }

    /// Distinct-degree factorization of a monic squarefree polynomial:
    /// pairs `(g, d)` where `g` is the product of all degree-`d` factors.
    pub fn distinct_degree(&self) -> Vec<(Poly<F>, usize)> {
        let x = Poly::x(self.field().clone());
        let mut rest = self.monic();
        let mut h = x.clone();
        let mut out = Vec::new();
        let mut d = 1;
        while rest.deg0() >= 2 * d {
            h = h.frobenius_mod(&rest);
            let g = (&h - &x).gcd(&rest);
            if !g.is_one() {
                rest = rest.div_exact(&g).unwrap();
                h = h.rem(&rest).unwrap();
                out.push((g, d));
            }
            d += 1;
        }
        if rest.deg0() > 0 {
            let dd = rest.deg0();
            out.push((rest, dd));
        }
        out
    }

    /// Splits a monic squarefree product of irreducibles of degree `d`.
    pub fn equal_degree(&self, d: usize) -> Vec<Poly<F>> {
        let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
        let mut out = Vec::new();
        let mut stack = vec![self.monic()];
        while let Some(g) = stack.pop() {
            if g.deg0() == d {
                out.push(g);
                continue;
            }
            match split_once(&g, d, &mut rng) {
                Some(h) => {
                    let other = g.div_exact(&h).unwrap();
                    stack.push(h);
                    stack.push(other);
                }
                None => out.extend(exhaustive_split(&g, d)),
            }
        }
        out.sort_by(|a, b| a.canonical_cmp(b));
        out
    }

    /// Full factorization into monic irreducibles with multiplicities.
    pub fn factorize(&self) -> Result<Factorization<F>> {
        let unit = self.leading().cloned().ok_or(Error::ZeroPolynomial)?;
        let mut factors = Vec::new();
        for (sq, mult) in self.squarefree_decomposition() {
            for (part, d) in sq.distinct_degree() {
                for g in part.equal_degree(d) {
                    factors.push((g, mult));
                }
            }
        }
        factors.sort_by(|a, b| a.0.canonical_cmp(&b.0));
        Ok(Factorization { unit, factors })
    }

    /// Distinct roots in the coefficient field with their multiplicities,
    /// sorted by element.
    pub fn roots(&self) -> Result<Vec<(F::Elem, u32)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let field = self.field().clone();
        let candidates: Vec<F::Elem> = match field.size() {
            Some(q) if q <= EXHAUSTIVE_LIMIT => (0..q)
                .map(|i| field.element(i))
                .filter(|a| field.is_zero(&self.eval(a)))
                .collect(),
            _ => {
                let x = Poly::x(field.clone());
                let f = self.monic();
                let split = (&x.frobenius_mod(&f) - &x).gcd(&f);
                if split.deg0() == 0 {
                    Vec::new()
                } else {
                    split
                        .equal_degree(1)
                        .into_iter()
                        .map(|lin| field.neg(&lin.coeff(0)))
                        .collect()
                }
            }
        };
        let mut out: Vec<(F::Elem, u32)> = candidates
            .into_iter()
            .map(|r| {
                let lin = Poly::new(field.clone(), vec![field.neg(&r), field.one()]);
                let m = self.multiplicity(&lin).unwrap();
                (r, m)
            })
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(out)
    }

    pub fn has_root(&self) -> bool {
        self.roots().map(|r| !r.is_empty()).unwrap_or(true)
    }
}

fn squarefree_into<F: Field>(f: &Poly<F>, scale: u32, out: &mut Vec<(Poly<F>, u32)>) {
    if f.deg0() == 0 {
        return;
    }
    let p = f.field().characteristic() as u32;
    let df = f.derivative();
    if df.is_zero() {
        let root = f.pth_root().expect("zero derivative means f is in F[x^p]");
        squarefree_into(&root, scale * p, out);
        return;
    }
    let mut c = f.gcd(&df);
    let mut w = f.div_exact(&c).unwrap();
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.div_exact(&y).unwrap();
        if z.deg0() > 0 {
            out.push((z, i * scale));
        }
        i += 1;
        c = c.div_exact(&y).unwrap();
        w = y;
    }
    if c.deg0() > 0 {
        let root = c.pth_root().expect("remaining cofactor is a p-th power");
        squarefree_into(&root, scale * p, out);
    }
}

fn split_once<F: Field, R: rand::Rng>(g: &Poly<F>, d: usize, rng: &mut R) -> Option<Poly<F>> {
    let field = g.field().clone();
    let n = g.deg0();
    let p = field.characteristic();
    // total degree of F_{q^d} over F_p
    let big_d = field.degree() as usize * d;
    for _ in 0..MAX_SPLIT_ATTEMPTS {
        let a = Poly::new(field.clone(), (0..n).map(|_| field.random(rng)).collect());
        if a.deg0() == 0 {
            continue;
        }
        let cand = if p == 2 {
            // trace to F_2: a + a^2 + ... + a^(2^(D-1))
            let mut acc = a.clone();
            let mut cur = a.clone();
            for _ in 1..big_d {
                cur = cur.mulmod(&cur, g);
                acc = &acc + &cur;
            }
            acc
        } else {
            // a^((p^D - 1)/2) as a product of Frobenius conjugates of a^((p-1)/2)
            let base = a.powmod((p - 1) / 2, g);
            let mut acc = base.clone();
            let mut cur = base;
            for _ in 1..big_d {
                cur = cur.powmod(p, g);
                acc = acc.mulmod(&cur, g);
            }
            &acc - &Poly::one(field.clone())
        };
        let h = cand.gcd(g);
        if h.deg0() > 0 && h.deg0() < n {
            return Some(h);
        }
    }
    None
}

/// Trial division by every monic polynomial of degree `d`, in index order.
fn exhaustive_split<F: Field>(g: &Poly<F>, d: usize) -> Vec<Poly<F>> {
    let field = g.field().clone();
    let q = field.size().expect("exhaustive split on a huge field");
    let count = q
        .checked_pow(d as u32)
        .filter(|&c| c <= EXHAUSTIVE_LIMIT)
        .expect("equal-degree split failed outside the exhaustive range");
    let mut rest = g.clone();
    let mut out = Vec::new();
    for idx in 0..count {
        if rest.deg0() == d {
            break;
        }
        let mut coeffs = Vec::with_capacity(d + 1);
        let mut k = idx;
        for _ in 0..d {
            coeffs.push(field.element(k % q));
            k /= q;
        }
        coeffs.push(field.one());
        let cand = Poly::new(field.clone(), coeffs);
        if cand.divides(&rest) {
            rest = rest.div_exact(&cand).unwrap();
            out.push(cand);
        }
    }
    out.push(rest);
    out
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
