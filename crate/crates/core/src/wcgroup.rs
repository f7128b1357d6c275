//! Small finite abelian groups, periods of sums, and linear independence
//! over `Z/nZ`.

use std::collections::HashSet;

use crate::error::{Error, Result};

/// Element of a [`FiniteAbelianGroup`]: one residue per invariant factor.
pub type Element = Vec<u64>;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Number of distinct prime divisors.
pub fn omega(mut n: u64) -> u32 {
    let mut k = 0;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            k += 1;
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    k + u32::from(n > 1)
}

/// `Z/d_1 ⊕ … ⊕ Z/d_k` with `d_1 | d_2 | … | d_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    factors: Vec<u64>,
}

impl FiniteAbelianGroup {
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        if factors.contains(&0) {
            return Err(Error::InvalidArgument("invariant factors must be positive".into()));
        }
        if factors.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::InvalidArgument(format!("{factors:?} is not a divisibility chain")));
        }
        Ok(Self { factors })
    }

    /// `(Z/n)^k`.
    pub fn homocyclic(n: u64, k: usize) -> Result<Self> {
        Self::new(vec![n; k])
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    /// Exponent `d_k` (1 for the trivial group).
    pub fn exponent(&self) -> u64 {
        self.factors.last().copied().unwrap_or(1)
    }

    pub fn zero(&self) -> Element {
        vec![0; self.factors.len()]
    }

    /// Reduces arbitrary integers into an element.
    pub fn element(&self, coords: &[i64]) -> Result<Element> {
        if coords.len() != self.factors.len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} coordinates, got {}",
                self.factors.len(),
                coords.len()
            )));
        }
        Ok(coords.iter().zip(&self.factors).map(|(&c, &d)| c.rem_euclid(d as i64) as u64).collect())
    }

    pub fn contains(&self, g: &[u64]) -> bool {
        g.len() == self.factors.len() && g.iter().zip(&self.factors).all(|(x, d)| x < d)
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Element {
        a.iter().zip(b).zip(&self.factors).map(|((x, y), d)| (x + y) % d).collect()
    }

    pub fn neg(&self, a: &[u64]) -> Element {
        a.iter().zip(&self.factors).map(|(x, d)| (d - x) % d).collect()
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> Element {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &[u64], k: u64) -> Element {
        a.iter()
            .zip(&self.factors)
            .map(|(x, d)| ((*x as u128 * (k % d) as u128) % *d as u128) as u64)
            .collect()
    }

    pub fn is_zero(&self, a: &[u64]) -> bool {
        a.iter().all(|&x| x == 0)
    }

    /// Order of `g`: the lcm of the orders of its coordinates.
    pub fn element_order(&self, g: &[u64]) -> u64 {
        g.iter().zip(&self.factors).fold(1, |acc, (x, d)| lcm(acc, d / gcd(*x, *d)))
    }

    /// Order of a sum of elements with pairwise coprime orders, which is the
    /// product of the orders.
    pub fn period_of_sum(&self, elems: &[Element]) -> Result<u64> {
        let orders: Vec<u64> = elems.iter().map(|g| self.element_order(g)).collect();
        for i in 0..orders.len() {
            for j in i + 1..orders.len() {
                if gcd(orders[i], orders[j]) != 1 {
                    return Err(Error::Precondition(format!(
                        "orders {} and {} are not coprime",
                        orders[i], orders[j]
                    )));
                }
            }
        }
        let sum = elems.iter().fold(self.zero(), |acc, g| self.add(&acc, g));
        let prod: u64 = orders.iter().product();
        let ord = self.element_order(&sum);
        if ord != prod {
            return Err(Error::Inconsistency(format!("order of sum {ord} != {prod}")));
        }
        Ok(ord)
    }

    /// All elements in mixed-radix order.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        let n = self.order();
        (0..n).map(move |mut i| {
            self.factors
                .iter()
                .map(|d| {
                    let x = i % d;
                    i /= d;
                    x
                })
                .collect()
        })
    }

    /// Subgroup generated by `gens`, as a set of elements.
    pub fn span(&self, gens: &[Element]) -> HashSet<Element> {
        let mut set: HashSet<Element> = HashSet::from([self.zero()]);
        for g in gens {
            set = self.sum_with_cyclic(&set, g);
        }
        set
    }

    fn cyclic(&self, g: &[u64]) -> Vec<Element> {
        let mut out = vec![self.zero()];
        let mut x = g.to_vec();
        while !self.is_zero(&x) {
            out.push(x.clone());
            x = self.add(&x, g);
        }
        out
    }

    fn sum_with_cyclic(&self, h: &HashSet<Element>, g: &[u64]) -> HashSet<Element> {
        let c = self.cyclic(g);
        let mut out = HashSet::with_capacity(h.len() * c.len());
        for a in h {
            for b in &c {
                out.insert(self.add(a, b));
            }
        }
        out
    }

    fn check_killed(&self, s: &[Element], n: u64) -> Result<()> {
        for g in s {
            if !self.contains(g) {
                return Err(Error::InvalidArgument(format!("{g:?} is not an element")));
            }
            if !self.is_zero(&self.scale(g, n)) {
                return Err(Error::Precondition(format!("{g:?} is not killed by {n}")));
            }
        }
        Ok(())
    }

    /// Whether `gens` (each killed by `n`) is linearly independent over
    /// `Z/n`. Each new generator must have order `n` and meet the span of
    /// the previous ones trivially.
    pub fn is_independent(&self, gens: &[Element], n: u64) -> Result<bool> {
        self.check_killed(gens, n)?;
        let mut h: HashSet<Element> = HashSet::from([self.zero()]);
        for g in gens {
            if self.element_order(g) != n {
                return Ok(false);
            }
            let c = self.cyclic(g);
            if c.iter().skip(1).any(|x| h.contains(x)) {
                return Ok(false);
            }
            h = self.sum_with_cyclic(&h, g);
        }
        Ok(true)
    }

    /// Every `r`-element subset of `s` is linearly independent over `Z/n`.
    /// Subsets of independent sets are independent, so when `|s| < r` this
    /// asks for `s` itself to be independent.
    pub fn is_r_li(&self, s: &[Element], n: u64, r: usize) -> Result<bool> {
        self.check_killed(s, n)?;
        if r == 0 {
            return Ok(true);
        }
        if r > s.len() {
            return self.is_independent(s, n);
        }
        let mut idx: Vec<usize> = (0..r).collect();
        loop {
            let subset: Vec<Element> = idx.iter().map(|&i| s[i].clone()).collect();
            if !self.is_independent(&subset, n)? {
                return Ok(false);
            }
            let mut i = r;
            while i > 0 && idx[i - 1] == s.len() - r + i - 1 {
                i -= 1;
            }
            if i == 0 {
                return Ok(true);
            }
            idx[i - 1] += 1;
            for k in i..r {
                idx[k] = idx[k - 1] + 1;
            }
        }
    }
}

/// `R: A -> B` given by the images of the standard generators of `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homomorphism {
    source: FiniteAbelianGroup,
    target: FiniteAbelianGroup,
    images: Vec<Element>,
}

impl Homomorphism {
    /// Fails unless `d_i` kills the image of the `i`-th generator.
    pub fn new(source: FiniteAbelianGroup, target: FiniteAbelianGroup, images: Vec<Element>) -> Result<Self> {
        if images.len() != source.rank() {
            return Err(Error::InvalidArgument("one image per source generator".into()));
        }
        for (img, d) in images.iter().zip(source.factors()) {
            if !target.contains(img) {
                return Err(Error::InvalidArgument(format!("{img:?} is not in the target")));
            }
            if !target.is_zero(&target.scale(img, *d)) {
                return Err(Error::InvalidArgument(format!(
                    "image {img:?} of a generator of order {d} is not killed by {d}"
                )));
            }
        }
        Ok(Self { source, target, images })
    }

    /// Quotient map `A -> A / <d_i/m e_i>` onto `⊕ Z/(d_i/m_i)`; `m_i`
    /// must divide `d_i`.
    pub fn coordinate_quotient(source: &FiniteAbelianGroup, m: &[u64]) -> Result<Self> {
        if m.len() != source.rank() || m.iter().zip(source.factors()).any(|(mi, d)| *mi == 0 || d % mi != 0) {
            return Err(Error::InvalidArgument("quotient orders must divide the factors".into()));
        }
        let tf: Vec<u64> = source.factors().iter().zip(m).map(|(d, mi)| d / mi).collect();
        let target = FiniteAbelianGroup::new(tf.clone())?;
        let images = (0..source.rank())
            .map(|i| {
                let mut e = target.zero();
                e[i] = 1 % tf[i];
                e
            })
            .collect();
        Self::new(source.clone(), target, images)
    }

    pub fn source(&self) -> &FiniteAbelianGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteAbelianGroup {
        &self.target
    }

    pub fn apply(&self, g: &[u64]) -> Element {
        let mut acc = self.target.zero();
        for (x, img) in g.iter().zip(&self.images) {
            acc = self.target.add(&acc, &self.target.scale(img, *x));
        }
        acc
    }

    pub fn kernel(&self) -> Vec<Element> {
        self.source.elements().filter(|g| self.target.is_zero(&self.apply(g))).collect()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().len() == 1
    }
}

/// Extraction step for a 2-LI family: keeps the elements of `s` whose image
/// under `r` still has order `n`.
///
/// If the image of `s` has smaller order, then `(n/q) s` lies in the kernel
/// for some prime `q | n`; for a fixed `q` these kernel elements are
/// distinct and nonzero, so at most `ω(n) (|ker R| - 1)` elements are lost.
pub fn lilemma_extract(r: &Homomorphism, s: &[Element], n: u64) -> Result<Vec<Element>> {
    let a = r.source();
    if !a.is_r_li(s, n, 2)? {
        return Err(Error::Precondition("S is not 2-LI over Z/n".into()));
    }
    let kernel = r.kernel().len() as u64;
    let out: Vec<Element> =
        s.iter().filter(|g| r.target().element_order(&r.apply(g)) == n).cloned().collect();
    let lost = (s.len() - out.len()) as u64;
    if lost > omega(n) as u64 * (kernel - 1) {
        return Err(Error::Inconsistency(format!(
            "lost {lost} elements with |ker R| = {kernel}"
        )));
    }
    Ok(out)
}
