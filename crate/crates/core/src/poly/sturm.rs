//! Sturm sequences and certified real-root isolation over the rationals.

use super::intpoly::IntPoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A Sturm chain for a squarefree polynomial. Root counts on half-open
/// intervals `(a, b]` come from sign-variation differences.
pub struct SturmChain {
    chain: Vec<IntPoly>,
}

impl SturmChain {
    /// Builds the chain for the squarefree part of `p`.
    pub fn new(p: &IntPoly) -> Self {
        let f = p.squarefree_part();
        let mut chain = vec![f.clone()];
        if f.degree() >= 1 {
            chain.push(f.derivative());
            loop {
                let n = chain.len();
                let a = &chain[n - 2];
                let b = &chain[n - 1];
                if b.is_zero() {
                    break;
                }
                let mut r = a.pseudo_rem(b);
                if r.is_zero() {
                    break;
                }
                // pseudo_rem scales by lc(b)^e; force the scale positive so
                // the Sturm sign pattern is preserved, then negate.
                let e = a.degree() + 1 - b.degree();
                if b.leading_coeff().is_negative() && e % 2 == 1 {
                    r = r.neg();
                }
                r = r.neg();
                // content stripping keeps coefficients small; positive factor
                // only, so signs survive
                let c = r.content();
                if c > BigInt::one() {
                    r = r.div_exact_int(&c);
                }
                chain.push(r);
            }
        }
        SturmChain { chain }
    }

    pub fn polynomial(&self) -> &IntPoly {
        &self.chain[0]
    }

    /// Number of sign variations of the chain at `x`.
    fn variations_at(&self, x: &BigRational) -> usize {
        let mut count = 0;
        let mut last = 0i32;
        for p in &self.chain {
            let s = p.sign_at_rational(x);
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Number of distinct real roots in `(a, b]`; requires `a <= b`.
    pub fn count_roots_in(&self, a: &BigRational, b: &BigRational) -> usize {
        assert!(a <= b);
        let va = self.variations_at(a);
        let vb = self.variations_at(b);
        va.saturating_sub(vb)
    }

    /// Total number of distinct real roots.
    pub fn count_real_roots(&self) -> usize {
        let b = self.root_bound();
        self.count_roots_in(&-b.clone(), &b)
    }

    /// Cauchy-style bound: all real roots lie in `[-B, B]`.
    pub fn root_bound(&self) -> BigRational {
        let f = &self.chain[0];
        let lc = f.leading_coeff().abs();
        let mut m = BigInt::zero();
        for c in f.coeffs() {
            let a = c.abs();
            if a > m {
                m = a;
            }
        }
        BigRational::new(m + &lc, lc)
    }
}

/// A certified enclosure `(lo, hi]`-style of a single real root: the interval
/// contains exactly one root of the defining squarefree polynomial and the
/// endpoints are not roots.
#[derive(Clone, Debug)]
pub struct RootInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RootInterval {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from(BigInt::from(2))
    }
}

/// Isolates the largest real root of `p` (which must have at least one real
/// root) and refines the enclosure below `width`.
pub fn isolate_largest_root(p: &IntPoly, width: &BigRational) -> RootInterval {
    let chain = SturmChain::new(p);
    let f = chain.polynomial().clone();
    let bound = chain.root_bound();
    let total = chain.count_roots_in(&-bound.clone(), &bound);
    assert!(total >= 1, "polynomial has no real root");
    // push lo up until exactly one root remains in (lo, bound]
    let mut lo = -bound.clone();
    let mut hi = bound.clone();
    while chain.count_roots_in(&lo, &bound) > 1 {
        let mid = (&lo + &hi) / BigRational::from(BigInt::from(2));
        if chain.count_roots_in(&mid, &bound) >= 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut iv = RootInterval { lo, hi: bound };
    refine_root(&f, &chain, &mut iv, width);
    iv
}

/// Bisects `iv` until the width drops below `width`, ending with
/// `f(lo) * f(hi) < 0`. Requires exactly one root of `f` in `(lo, hi]` and
/// `f(hi) != 0`; `f(lo) = 0` is tolerated (a lower root sitting exactly on
/// the boundary) and resolved first.
pub fn refine_root(f: &IntPoly, chain: &SturmChain, iv: &mut RootInterval, width: &BigRational) {
    let tight = |mid: &BigRational| {
        let quarter = width / BigRational::from(BigInt::from(4));
        RootInterval { lo: mid - &quarter, hi: mid + &quarter }
    };
    while f.sign_at_rational(&iv.lo) == 0 {
        let m = iv.midpoint();
        if chain.count_roots_in(&m, &iv.hi) == 1 {
            iv.lo = m;
        } else if f.sign_at_rational(&m) == 0 {
            // the isolated root itself is rational
            *iv = tight(&m);
            debug_assert!(f.sign_at_rational(&iv.lo) * f.sign_at_rational(&iv.hi) < 0);
            return;
        } else {
            iv.hi = m;
        }
    }
    let slo = f.sign_at_rational(&iv.lo);
    debug_assert!(slo != 0 && f.sign_at_rational(&iv.hi) != 0);
    debug_assert!(slo * f.sign_at_rational(&iv.hi) < 0);
    while &iv.width() >= width {
        let mid = iv.midpoint();
        let sm = f.sign_at_rational(&mid);
        if sm == 0 {
            *iv = tight(&mid);
            debug_assert!(f.sign_at_rational(&iv.lo) * f.sign_at_rational(&iv.hi) < 0);
            return;
        }
        if sm == slo {
            iv.lo = mid;
        } else {
            iv.hi = mid;
        }
    }
}

/// Counts distinct real roots of `p` in the closed interval `[a, b]`.
pub fn count_roots_closed(p: &IntPoly, a: &BigRational, b: &BigRational) -> usize {
    let chain = SturmChain::new(p);
    let f = chain.polynomial();
    let mut n = chain.count_roots_in(a, b);
    if f.sign_at_rational(a) == 0 {
        n += 1;
    }
    n
}

/// True iff every root of `p` is real and lies in `[-2, 2]`.
pub fn all_roots_in_minus2_2(p: &IntPoly) -> bool {
    let f = p.squarefree_part();
    if f.degree() == 0 {
        return true;
    }
    let a = BigRational::from(BigInt::from(-2));
    let b = BigRational::from(BigInt::from(2));
    count_roots_closed(&f, &a, &b) == f.degree()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn counts_simple_quadratic() {
        let p = IntPoly::from_i64(&[-2, 0, 1]); // x^2 - 2
        let chain = SturmChain::new(&p);
        assert_eq!(chain.count_real_roots(), 2);
        assert_eq!(chain.count_roots_in(&rat(0, 1), &rat(2, 1)), 1);
        assert_eq!(chain.count_roots_in(&rat(-2, 1), &rat(0, 1)), 1);
        assert_eq!(chain.count_roots_in(&rat(3, 2), &rat(2, 1)), 0);
    }

    #[test]
    fn isolates_sqrt2() {
        let p = IntPoly::from_i64(&[-2, 0, 1]);
        let iv = isolate_largest_root(&p, &rat(1, 1 << 20));
        let mid = iv.midpoint();
        let err = (mid - rat(141421356, 100000000)).abs();
        assert!(err < rat(1, 100000));
    }

    #[test]
    fn rational_root_exact_hit() {
        let p = IntPoly::from_i64(&[-1, 0, 1]); // roots +-1
        let iv = isolate_largest_root(&p, &rat(1, 1 << 30));
        assert!(iv.lo < rat(1, 1) && rat(1, 1) <= iv.hi || iv.lo < rat(1, 1) && iv.hi > rat(1, 1));
        // bracketing signs
        assert!(p.sign_at_rational(&iv.lo) * p.sign_at_rational(&iv.hi) < 0);
    }

    #[test]
    fn kronecker_interval_check() {
        assert!(all_roots_in_minus2_2(&IntPoly::from_i64(&[-1, 1]))); // x-1
        assert!(all_roots_in_minus2_2(&IntPoly::from_i64(&[-3, 0, 1]))); // x^2-3
        assert!(!all_roots_in_minus2_2(&IntPoly::from_i64(&[-5, 0, 1]))); // x^2-5
        assert!(all_roots_in_minus2_2(&IntPoly::from_i64(&[-4, 0, 1]))); // roots +-2 inclusive
        assert!(!all_roots_in_minus2_2(&IntPoly::from_i64(&[1, 0, 1]))); // complex roots
    }

    #[test]
    fn multiple_roots_counted_once() {
        let f = IntPoly::from_i64(&[-1, 1]);
        let sq = f.mul(&f);
        let chain = SturmChain::new(&sq);
        assert_eq!(chain.count_real_roots(), 1);
    }
}
