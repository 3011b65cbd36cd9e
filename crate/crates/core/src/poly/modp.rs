//! Dense polynomial arithmetic over GF(p) for word-sized odd primes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

/// Polynomial over GF(p), constant term first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyP {
    pub p: u64,
    pub c: Vec<u64>,
}

fn addm(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

fn subm(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powm(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, a, p);
        }
        a = mulm(a, a, p);
        e >>= 1;
    }
    r
}

fn invm(a: u64, p: u64) -> u64 {
    powm(a, p - 2, p)
}

impl PolyP {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        for x in c.iter_mut() {
            *x %= p;
        }
        let mut out = PolyP { p, c };
        out.trim();
        out
    }

    pub fn zero(p: u64) -> Self {
        PolyP { p, c: vec![] }
    }

    pub fn one(p: u64) -> Self {
        PolyP { p, c: vec![1] }
    }

    pub fn x(p: u64) -> Self {
        PolyP { p, c: vec![0, 1] }
    }

    fn trim(&mut self) {
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lc(&self) -> u64 {
        *self.c.last().unwrap_or(&0)
    }

    pub fn from_bigint_poly(p: u64, coeffs: &[BigInt]) -> Self {
        let bp = BigInt::from(p);
        let c = coeffs
            .iter()
            .map(|x| {
                let mut r = x.mod_floor(&bp);
                if r.is_negative() {
                    r += &bp;
                }
                r.to_u64().unwrap()
            })
            .collect();
        PolyP::new(p, c)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let mut c = vec![0u64; n];
        for i in 0..n {
            let a = self.c.get(i).copied().unwrap_or(0);
            let b = o.c.get(i).copied().unwrap_or(0);
            c[i] = addm(a, b, self.p);
        }
        PolyP::new(self.p, c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let mut c = vec![0u64; n];
        for i in 0..n {
            let a = self.c.get(i).copied().unwrap_or(0);
            let b = o.c.get(i).copied().unwrap_or(0);
            c[i] = subm(a, b, self.p);
        }
        PolyP::new(self.p, c)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return PolyP::zero(self.p);
        }
        let mut c = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] = addm(c[i + j], mulm(a, b, self.p), self.p);
            }
        }
        PolyP::new(self.p, c)
    }

    pub fn scale(&self, k: u64) -> Self {
        PolyP::new(self.p, self.c.iter().map(|&a| mulm(a, k, self.p)).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(invm(self.lc(), self.p))
    }

    /// Division with remainder; divisor must be nonzero.
    pub fn divmod(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero());
        let p = self.p;
        if self.degree() < d.degree() || self.is_zero() {
            return (PolyP::zero(p), self.clone());
        }
        let dinv = invm(d.lc(), p);
        let mut r = self.c.clone();
        let dd = d.degree();
        let mut q = vec![0u64; self.degree() - dd + 1];
        for i in (dd..r.len()).rev() {
            if r[i] == 0 {
                continue;
            }
            let f = mulm(r[i], dinv, p);
            q[i - dd] = f;
            for (j, &dc) in d.c.iter().enumerate() {
                r[i - dd + j] = subm(r[i - dd + j], mulm(f, dc, p), p);
            }
        }
        (PolyP::new(p, q), PolyP::new(p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divmod(d).1
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        if self.c.len() <= 1 {
            return PolyP::zero(self.p);
        }
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| mulm(a, (i as u64) % self.p, self.p))
            .collect();
        PolyP::new(self.p, c)
    }

    /// `self^e mod m`
    pub fn powmod(&self, mut e: u128, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = PolyP::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// `self^e mod m` for exponents beyond u128 (Cantor–Zassenhaus at large
    /// degree needs p^d which overflows machine words).
    pub fn powmod_big(&self, e: &num_bigint::BigUint, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = PolyP::one(self.p);
        for i in 0..e.bits() {
            if e.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == 0
    }
}

/// Distinct-degree factorization: returns `(product-of-irreducibles, degree)`
/// pairs for a monic squarefree input.
pub fn distinct_degree(f: &PolyP) -> Vec<(PolyP, usize)> {
    let p = f.p;
    let mut out = Vec::new();
    let mut h = PolyP::x(p);
    let mut v = f.monic();
    let mut d = 0usize;
    while v.degree() >= 1 {
        d += 1;
        if 2 * d > v.degree() {
            out.push((v.clone(), v.degree()));
            break;
        }
        h = h.powmod(p as u128, &v);
        let g = h.sub(&PolyP::x(p)).gcd(&v);
        if g.degree() > 0 {
            out.push((g.clone(), d));
            v = v.divmod(&g).0;
            h = h.rem(&v);
        }
    }
    out
}

/// Splits a monic squarefree product of degree-`d` irreducibles into its
/// irreducible factors (Cantor–Zassenhaus, deterministic LCG randomness).
pub fn equal_degree(f: &PolyP, d: usize, seed: &mut u64) -> Vec<PolyP> {
    use num_bigint::BigUint;
    use num_traits::One;
    let p = f.p;
    if f.degree() == d {
        return vec![f.monic()];
    }
    // (p^d - 1) / 2 for odd p
    let exp = (BigUint::from(p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
    loop {
        // deterministic pseudo-random polynomial of degree < deg f
        let mut c = vec![0u64; f.degree()];
        for x in c.iter_mut() {
            *seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            *x = (*seed >> 16) % p;
        }
        let a = PolyP::new(p, c);
        if a.degree() == 0 || a.is_zero() {
            continue;
        }
        let g0 = a.gcd(f);
        if g0.degree() > 0 && g0.degree() < f.degree() {
            let mut l = equal_degree(&g0, d, seed);
            l.extend(equal_degree(&f.divmod(&g0).0, d, seed));
            return l;
        }
        let b = a.powmod_big(&exp, f);
        let g = b.sub(&PolyP::one(p)).gcd(f);
        if g.degree() > 0 && g.degree() < f.degree() {
            let mut l = equal_degree(&g, d, seed);
            l.extend(equal_degree(&f.divmod(&g).0, d, seed));
            return l;
        }
    }
}

/// Full factorization of a monic squarefree polynomial mod an odd prime.
pub fn factor_mod_p(f: &PolyP) -> Vec<PolyP> {
    let mut seed: u64 = 0x5eed ^ (f.p << 8) ^ f.degree() as u64;
    let mut out = Vec::new();
    for (prod, d) in distinct_degree(f) {
        out.extend(equal_degree(&prod, d, &mut seed));
    }
    out.sort_by(|a, b| (a.degree(), &a.c).cmp(&(b.degree(), &b.c)));
    out
}

/// Multiset of irreducible-factor degrees of `f` mod `p`. Requires `f`
/// squarefree mod `p`; the Frobenius certificate scan only calls this at
/// primes not dividing the discriminant.
pub fn factor_degrees_mod_p(f: &PolyP) -> Vec<usize> {
    let mut degs = Vec::new();
    for (prod, d) in distinct_degree(&f.monic()) {
        let k = prod.degree() / d;
        for _ in 0..k {
            degs.push(d);
        }
    }
    degs.sort_unstable();
    degs
}

/// Odd primes below `bound` in increasing order.
pub fn primes_below(bound: u64) -> Vec<u64> {
    let n = bound as usize;
    if n < 3 {
        return vec![];
    }
    let mut sieve = vec![true; n];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i < n {
        if sieve[i] {
            let mut j = i * i;
            while j < n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    (3..n).filter(|&k| sieve[k]).map(|k| k as u64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modp_divmod_roundtrip() {
        let p = 101;
        let a = PolyP::new(p, vec![3, 1, 4, 1, 5]);
        let d = PolyP::new(p, vec![2, 7, 1]);
        let (q, r) = a.divmod(&d);
        assert_eq!(q.mul(&d).add(&r), a);
        assert!(r.degree() < d.degree() || r.is_zero());
    }

    #[test]
    fn factor_x2_minus_1_mod_5() {
        let p = 5;
        let f = PolyP::new(p, vec![4, 0, 1]); // x^2 - 1
        let fs = factor_mod_p(&f);
        assert_eq!(fs.len(), 2);
        assert_eq!(fs[0].mul(&fs[1]), f);
    }

    #[test]
    fn degrees_of_x3_minus_x_minus_1_mod_5() {
        // x^3 - x - 1 = (x-2)(x^2+2x+3) mod 5
        let f = PolyP::from_bigint_poly(
            5,
            &[BigInt::from(-1), BigInt::from(-1), BigInt::from(0), BigInt::from(1)],
        );
        assert_eq!(factor_degrees_mod_p(&f), vec![1, 2]);
    }

    #[test]
    fn prime_sieve() {
        let ps = primes_below(30);
        assert_eq!(ps, vec![3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }
}
