//! Factorization of integer polynomials: squarefree split, modular
//! factorization, Hensel lifting to a coefficient bound, and subset
//! recombination.

use super::intpoly::IntPoly;
use super::modp::{factor_mod_p, primes_below, PolyP};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Degrees past this need an explicit opt-in; recombination cost explodes and
/// nothing at desk scale comes close.
pub const DEFAULT_DEGREE_CAP: usize = 64;

#[derive(Debug, Error)]
pub enum FactorError {
    #[error("degree {0} exceeds the factorization cap {1}")]
    DegreeCap(usize, usize),
    #[error("cannot factor the zero polynomial")]
    ZeroPolynomial,
}

/// Complete factorization over the integers:
/// `p = sign * content * prod factors[i].0 ^ factors[i].1`
/// with primitive irreducible factors of positive leading coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub sign: i32,
    pub content: BigInt,
    pub factors: Vec<(IntPoly, u32)>,
}

impl Factorization {
    /// Multiplies the factorization back together.
    pub fn expand(&self) -> IntPoly {
        let mut acc = IntPoly::constant(&BigInt::from(self.sign) * &self.content);
        for (f, m) in &self.factors {
            for _ in 0..*m {
                acc = acc.mul(f);
            }
        }
        acc
    }
}

pub fn factor_over_integers(p: &IntPoly) -> Result<Factorization, FactorError> {
    factor_over_integers_capped(p, DEFAULT_DEGREE_CAP)
}

pub fn factor_over_integers_capped(
    p: &IntPoly,
    degree_cap: usize,
) -> Result<Factorization, FactorError> {
    if p.is_zero() {
        return Err(FactorError::ZeroPolynomial);
    }
    if p.degree() > degree_cap {
        return Err(FactorError::DegreeCap(p.degree(), degree_cap));
    }
    let content = p.content();
    let sign = if p.leading_coeff().is_negative() { -1 } else { 1 };
    let prim = p.primitive_part();
    let mut factors: Vec<(IntPoly, u32)> = Vec::new();

    // strip powers of x first so the squarefree machinery sees a nonzero
    // constant term
    let mut base = prim;
    let mut xpow = 0u32;
    while base.degree() > 0 && base.coeff(0).is_zero() {
        base = base.div_exact(&IntPoly::x());
        xpow += 1;
    }
    if xpow > 0 {
        factors.push((IntPoly::x(), xpow));
    }
    if base.degree() >= 1 {
        for (g, mult) in base.squarefree_decomposition() {
            for irr in factor_squarefree_primitive(&g) {
                factors.push((irr, mult));
            }
        }
    }
    factors.sort_by(|a, b| {
        (a.0.degree(), a.0.coeffs(), a.1).cmp(&(b.0.degree(), b.0.coeffs(), b.1))
    });
    Ok(Factorization { sign, content, factors })
}

pub fn is_irreducible(p: &IntPoly) -> Result<bool, FactorError> {
    if p.is_zero() || p.degree() == 0 {
        return Ok(false);
    }
    let f = factor_over_integers(p)?;
    Ok(f.factors.len() == 1 && f.factors[0].1 == 1)
}

/// Factors a primitive squarefree polynomial of degree >= 1 into primitive
/// irreducibles with positive leading coefficients.
fn factor_squarefree_primitive(f: &IntPoly) -> Vec<IntPoly> {
    debug_assert!(f.degree() >= 1);
    if f.degree() == 1 {
        return vec![f.primitive_part()];
    }
    let lc = f.leading_coeff();
    if lc.is_one() {
        factor_monic_squarefree(f)
    } else {
        // classical monic reduction: F(y) = lc^(n-1) f(y/lc) is monic; factors
        // of f are recovered as primitive parts of g(lc*x)
        let n = f.degree();
        let mut coeffs = Vec::with_capacity(n + 1);
        // coefficient of y^i is a_i * lc^(n-1-i); the top one is 1
        for i in 0..n {
            coeffs.push(f.coeff(i) * lc.pow((n - 1 - i) as u32));
        }
        coeffs.push(BigInt::one());
        let monic = IntPoly::new(coeffs);
        factor_monic_squarefree(&monic)
            .into_iter()
            .map(|g| {
                // g(lc * x)
                let mut out = Vec::with_capacity(g.degree() + 1);
                let mut p = BigInt::one();
                for i in 0..=g.degree() {
                    out.push(g.coeff(i) * &p);
                    p *= &lc;
                }
                IntPoly::new(out).primitive_part()
            })
            .collect()
    }
}

fn norm2_sq(f: &IntPoly) -> BigInt {
    f.coeffs().iter().map(|c| c * c).sum()
}

fn isqrt_ceil(n: &BigInt) -> BigInt {
    let r = n.sqrt();
    if &(&r * &r) < n {
        r + 1
    } else {
        r
    }
}

fn factor_monic_squarefree(f: &IntPoly) -> Vec<IntPoly> {
    debug_assert!(f.is_monic() && f.degree() >= 2);
    let n = f.degree();

    // choose a prime keeping f squarefree, preferring few modular factors
    let mut best: Option<(u64, Vec<PolyP>)> = None;
    let mut tried = 0;
    for &p in primes_below(10_000).iter() {
        let fp = PolyP::from_bigint_poly(p, f.coeffs());
        if fp.degree() != n || !fp.is_squarefree() {
            continue;
        }
        let fs = factor_mod_p(&fp.monic());
        if best.as_ref().map_or(true, |(_, b)| fs.len() < b.len()) {
            best = Some((p, fs));
        }
        tried += 1;
        let best_len = best.as_ref().map(|(_, b)| b.len()).unwrap_or(usize::MAX);
        if best_len <= 3 || tried >= 10 {
            break;
        }
    }
    let (p, modular) = best.expect("some small prime keeps a squarefree poly squarefree");
    if modular.len() == 1 {
        return vec![f.clone()];
    }

    // Mignotte-style bound: any factor's coefficients are below
    // 2^n * ||f||_2; lift until p^k exceeds twice that.
    let bound: BigInt = (BigInt::one() << n) * isqrt_ceil(&norm2_sq(f));
    let target: BigInt = &bound * 2 + 1;
    let mut modulus = BigInt::from(p);
    while modulus < target {
        modulus = &modulus * &modulus;
    }
    let lifted = hensel_tree(f, &modular, p, &modulus);

    recombine(f, lifted, &modulus)
}

/// Symmetric representative in (-m/2, m/2].
fn symmetric(c: &BigInt, m: &BigInt) -> BigInt {
    let mut r = c.mod_floor(m);
    if &(&r * 2) > m {
        r -= m;
    }
    r
}

fn symmetric_poly(f: &[BigInt], m: &BigInt) -> IntPoly {
    IntPoly::new(f.iter().map(|c| symmetric(c, m)).collect())
}

// --- arithmetic on polynomials mod m (BigInt modulus), constant term first ---

fn mp_trim(v: &mut Vec<BigInt>) {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
}

fn mp_reduce(v: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = v.iter().map(|c| c.mod_floor(m)).collect();
    mp_trim(&mut out);
    out
}

fn mp_mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    mp_reduce(&out, m)
}

fn mp_add(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(BigInt::zero);
        let y = b.get(i).cloned().unwrap_or_else(BigInt::zero);
        out.push((x + y).mod_floor(m));
    }
    mp_trim(&mut out);
    out
}

fn mp_sub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(BigInt::zero);
        let y = b.get(i).cloned().unwrap_or_else(BigInt::zero);
        out.push((x - y).mod_floor(m));
    }
    mp_trim(&mut out);
    out
}

/// Division with remainder by a monic divisor, mod m.
fn mp_divmod_monic(a: &[BigInt], d: &[BigInt], m: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    debug_assert!(d.last().map_or(false, |c| c.is_one()));
    let dd = d.len() - 1;
    if a.len() <= dd {
        return (vec![], a.to_vec());
    }
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - dd];
    for i in (dd..r.len()).rev() {
        let c = r[i].mod_floor(m);
        if c.is_zero() {
            r[i] = BigInt::zero();
            continue;
        }
        q[i - dd] = c.clone();
        for (j, dc) in d.iter().enumerate() {
            let t = (&r[i - dd + j] - &c * dc).mod_floor(m);
            r[i - dd + j] = t;
        }
    }
    r.truncate(dd);
    mp_trim(&mut r);
    mp_trim(&mut q);
    (q, r)
}

/// Lifts `f = g*h (mod p)` with Bezout data `s*g + t*h = 1 (mod p)` to the
/// same statements mod `target` (both g and h monic). Quadratic steps.
#[allow(clippy::too_many_arguments)]
fn hensel_lift_pair(
    f: &IntPoly,
    g0: &PolyP,
    h0: &PolyP,
    s0: &PolyP,
    t0: &PolyP,
    p: u64,
    target: &BigInt,
) -> (Vec<BigInt>, Vec<BigInt>) {
    let to_big = |q: &PolyP| -> Vec<BigInt> { q.c.iter().map(|&c| BigInt::from(c)).collect() };
    let mut m = BigInt::from(p);
    let mut g = to_big(g0);
    let mut h = to_big(h0);
    let mut s = to_big(s0);
    let mut t = to_big(t0);
    let fbig: Vec<BigInt> = f.coeffs().to_vec();
    while &m < target {
        let m2 = &m * &m;
        // e = f - g h (mod m^2)
        let gh = mp_mul(&g, &h, &m2);
        let e = mp_sub(&mp_reduce(&fbig, &m2), &gh, &m2);
        // se = q h + r  ->  g += t e + q g ; h += r
        let se = mp_mul(&s, &e, &m2);
        let (q, r) = mp_divmod_monic(&se, &h, &m2);
        let te = mp_mul(&t, &e, &m2);
        let qg = mp_mul(&q, &g, &m2);
        g = mp_add(&g, &mp_add(&te, &qg, &m2), &m2);
        h = mp_add(&h, &r, &m2);
        // refresh the Bezout pair: b = s g + t h - 1 (mod m^2)
        let sg = mp_mul(&s, &g, &m2);
        let th = mp_mul(&t, &h, &m2);
        let mut b = mp_add(&sg, &th, &m2);
        b = mp_sub(&b, &[BigInt::one()], &m2);
        let sb = mp_mul(&s, &b, &m2);
        let (c, d) = mp_divmod_monic(&sb, &h, &m2);
        s = mp_sub(&s, &d, &m2);
        let tb = mp_mul(&t, &b, &m2);
        let cg = mp_mul(&c, &g, &m2);
        t = mp_sub(&t, &mp_add(&tb, &cg, &m2), &m2);
        m = m2;
    }
    (mp_reduce(&g, target), mp_reduce(&h, target))
}

/// Lifts the modular factorization up the factor tree, returning all factors
/// mod `target` (monic, reduced representatives in [0, target)).
fn hensel_tree(f: &IntPoly, factors: &[PolyP], p: u64, target: &BigInt) -> Vec<Vec<BigInt>> {
    if factors.len() == 1 {
        return vec![mp_reduce(f.coeffs(), target)];
    }
    let mid = factors.len() / 2;
    let (left, right) = factors.split_at(mid);
    let prod = |fs: &[PolyP]| -> PolyP {
        let mut acc = PolyP::one(p);
        for q in fs {
            acc = acc.mul(q);
        }
        acc
    };
    let g0 = prod(left);
    let h0 = prod(right);
    // extended Euclid over GF(p) for the Bezout pair
    let (s0, t0) = bezout_mod_p(&g0, &h0);
    let (g, h) = hensel_lift_pair(f, &g0, &h0, &s0, &t0, p, target);
    let gpoly = IntPoly::new(g.clone());
    let hpoly = IntPoly::new(h.clone());
    let mut out = hensel_tree(&gpoly, left, p, target);
    out.extend(hensel_tree(&hpoly, right, p, target));
    out
}

/// Returns (s, t) with s*g + t*h = 1 mod p; g, h coprime mod p.
fn bezout_mod_p(g: &PolyP, h: &PolyP) -> (PolyP, PolyP) {
    let p = g.p;
    let mut r0 = g.clone();
    let mut r1 = h.clone();
    let mut s0 = PolyP::one(p);
    let mut s1 = PolyP::zero(p);
    let mut t0 = PolyP::zero(p);
    let mut t1 = PolyP::one(p);
    while !r1.is_zero() {
        let (q, r) = r0.divmod(&r1);
        let ns = s0.sub(&q.mul(&s1));
        let nt = t0.sub(&q.mul(&t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = ns;
        t0 = t1;
        t1 = nt;
    }
    assert_eq!(r0.degree(), 0, "factors must be coprime mod p");
    let c = r0.lc();
    let cinv = {
        // scalar inverse mod p via Fermat
        let mut r = 1u64;
        let mut a = c % p;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = ((r as u128 * a as u128) % p as u128) as u64;
            }
            a = ((a as u128 * a as u128) % p as u128) as u64;
            e >>= 1;
        }
        r
    };
    (s0.scale(cinv), t0.scale(cinv))
}

/// Zassenhaus subset recombination for a monic input.
fn recombine(f: &IntPoly, lifted: Vec<Vec<BigInt>>, modulus: &BigInt) -> Vec<IntPoly> {
    let mut remaining: Vec<Vec<BigInt>> = lifted;
    let mut current = f.clone();
    let mut out = Vec::new();
    let mut size = 1usize;
    'outer: while 2 * size <= remaining.len() {
        // all index subsets of the given cardinality
        let idxs: Vec<usize> = (0..remaining.len()).collect();
        let mut chooser = SubsetIter::new(idxs.len(), size);
        while let Some(sel) = chooser.next() {
            let mut prod = vec![BigInt::one()];
            for &i in &sel {
                prod = mp_mul(&prod, &remaining[i], modulus);
            }
            let cand = symmetric_poly(&prod, modulus);
            if cand.degree() == 0 {
                continue;
            }
            if IntPoly::divides(&cand, &current) {
                out.push(cand.clone());
                current = current.div_exact(&cand);
                let keep: Vec<Vec<BigInt>> = remaining
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !sel.contains(i))
                    .map(|(_, v)| v.clone())
                    .collect();
                remaining = keep;
                continue 'outer;
            }
        }
        size += 1;
    }
    if current.degree() > 0 {
        out.push(current);
    }
    out.sort_by(|a, b| (a.degree(), a.coeffs()).cmp(&(b.degree(), b.coeffs())));
    out
}

/// Iterates k-subsets of 0..n in lexicographic order.
struct SubsetIter {
    n: usize,
    k: usize,
    state: Option<Vec<usize>>,
}

impl SubsetIter {
    fn new(n: usize, k: usize) -> Self {
        let state = if k <= n { Some((0..k).collect()) } else { None };
        SubsetIter { n, k, state }
    }

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.state.clone()?;
        // advance
        let mut next = cur.clone();
        let mut i = self.k;
        loop {
            if i == 0 {
                self.state = None;
                break;
            }
            i -= 1;
            if next[i] < self.n - (self.k - i) {
                next[i] += 1;
                for j in i + 1..self.k {
                    next[j] = next[j - 1] + 1;
                }
                self.state = Some(next);
                break;
            }
        }
        Some(cur)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> IntPoly {
        IntPoly::from_i64(v)
    }

    #[test]
    fn factors_x2_minus_1() {
        let f = factor_over_integers(&p(&[-1, 0, 1])).unwrap();
        assert_eq!(f.sign, 1);
        assert_eq!(f.content, BigInt::one());
        assert_eq!(
            f.factors,
            vec![(p(&[-1, 1]), 1), (p(&[1, 1]), 1)]
        );
    }

    #[test]
    fn factors_x4_minus_4() {
        let f = factor_over_integers(&p(&[-4, 0, 0, 0, 1])).unwrap();
        assert_eq!(f.factors, vec![(p(&[-2, 0, 1]), 1), (p(&[2, 0, 1]), 1)]);
    }

    #[test]
    fn e10_quintic_is_irreducible() {
        let q = p(&[-1, 12, -31, 27, -9, 1]);
        assert!(is_irreducible(&q).unwrap());
    }

    #[test]
    fn cyclotomic_like_products() {
        // (x^2+x+1)(x^2-x+1)(x-1)^2 * 6
        let f = p(&[1, 1, 1])
            .mul(&p(&[1, -1, 1]))
            .mul(&p(&[-1, 1]))
            .mul(&p(&[-1, 1]))
            .scale(&BigInt::from(6));
        let fac = factor_over_integers(&f).unwrap();
        assert_eq!(fac.content, BigInt::from(6));
        assert_eq!(fac.expand(), f);
        assert_eq!(fac.factors.len(), 3);
    }

    #[test]
    fn strips_x_powers() {
        let f = p(&[0, 0, -2, 0, 1]); // x^2 (x^2 - 2)
        let fac = factor_over_integers(&f).unwrap();
        assert_eq!(fac.expand(), f);
        assert!(fac.factors.contains(&(IntPoly::x(), 2)));
        assert!(fac.factors.contains(&(p(&[-2, 0, 1]), 1)));
    }

    #[test]
    fn non_monic_inputs() {
        let f = p(&[3, 2]).mul(&p(&[-1, 5])); // (2x+3)(5x-1)
        let fac = factor_over_integers(&f).unwrap();
        assert_eq!(fac.expand(), f);
        assert_eq!(fac.factors.len(), 2);
    }

    #[test]
    fn degree_cap_raises() {
        let mut coeffs = vec![0i64; 66];
        coeffs[0] = -1;
        coeffs[65] = 1;
        match factor_over_integers(&p(&coeffs)) {
            Err(FactorError::DegreeCap(65, 64)) => {}
            other => panic!("expected cap error, got {:?}", other),
        }
    }

    #[test]
    fn swinnerton_dyer_small() {
        // minimal polynomial of sqrt2 + sqrt3: x^4 - 10x^2 + 1, irreducible
        assert!(is_irreducible(&p(&[1, 0, -10, 0, 1])).unwrap());
    }
}
