//! Coefficient domains for diagram algebra: polynomials and rational
//! functions in the loop parameter, exact algebraic reals, and floats.

use crate::poly::numfield::NfElem;
use crate::poly::IntPoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Ring operations the diagram algebra needs; every operation takes `self`
/// so contextful domains (number fields) work.
pub trait TlScalar: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn is_zero(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
}

/// Scalars that additionally divide; needed to evaluate Jones-Wenzl
/// coefficients in a concrete domain.
pub trait TlField: TlScalar {
    fn div(&self, o: &Self) -> Self;
}

impl TlScalar for IntPoly {
    fn is_zero(&self) -> bool {
        IntPoly::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        IntPoly::zero()
    }
    fn one_like(&self) -> Self {
        IntPoly::one()
    }
    fn add(&self, o: &Self) -> Self {
        IntPoly::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        IntPoly::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        IntPoly::mul(self, o)
    }
    fn neg(&self) -> Self {
        IntPoly::neg(self)
    }
}

impl TlScalar for BigRational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl TlField for BigRational {
    fn div(&self, o: &Self) -> Self {
        self / o
    }
}

impl TlScalar for f64 {
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn zero_like(&self) -> Self {
        0.0
    }
    fn one_like(&self) -> Self {
        1.0
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl TlField for f64 {
    fn div(&self, o: &Self) -> Self {
        self / o
    }
}

impl TlScalar for NfElem {
    fn is_zero(&self) -> bool {
        NfElem::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        self.field().zero()
    }
    fn one_like(&self) -> Self {
        self.field().one()
    }
    fn add(&self, o: &Self) -> Self {
        NfElem::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        NfElem::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        NfElem::mul(self, o)
    }
    fn neg(&self) -> Self {
        NfElem::neg(self)
    }
}

impl TlField for NfElem {
    fn div(&self, o: &Self) -> Self {
        NfElem::div(self, o)
    }
}

/// Rational function in the loop parameter: a reduced fraction of integer
/// polynomials, denominator primitive with positive leading coefficient.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    pub num: IntPoly,
    pub den: IntPoly,
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl RatFunc {
    pub fn new(num: IntPoly, den: IntPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut r = RatFunc { num, den };
        r.reduce();
        r
    }

    pub fn from_poly(p: IntPoly) -> Self {
        RatFunc { num: p, den: IntPoly::one() }
    }

    pub fn zero() -> Self {
        RatFunc { num: IntPoly::zero(), den: IntPoly::one() }
    }

    pub fn one() -> Self {
        RatFunc { num: IntPoly::one(), den: IntPoly::one() }
    }

    /// The loop parameter itself.
    pub fn delta() -> Self {
        RatFunc::from_poly(IntPoly::x())
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = IntPoly::one();
            return;
        }
        let g = self.num.gcd(&self.den);
        if !g.is_one() {
            self.num = self.num.div_exact(&g);
            self.den = self.den.div_exact(&g);
        }
        // normalize denominator sign and content against the numerator
        let cn = self.num.content();
        let cd = self.den.content();
        let g = num_integer::gcd(cn, cd);
        if !g.is_one() {
            self.num = self.num.div_exact_int(&g);
            self.den = self.den.div_exact_int(&g);
        }
        if self.den.leading_coeff().is_negative() {
            self.num = self.num.neg();
            self.den = self.den.neg();
        }
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.num.eval_f64(x) / self.den.eval_f64(x)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.num.eval_rational(x) / self.den.eval_rational(x)
    }
}

impl TlScalar for RatFunc {
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn zero_like(&self) -> Self {
        RatFunc::zero()
    }
    fn one_like(&self) -> Self {
        RatFunc::one()
    }
    fn add(&self, o: &Self) -> Self {
        RatFunc::new(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        RatFunc::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }
    fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }
}

impl TlField for RatFunc {
    fn div(&self, o: &Self) -> Self {
        assert!(!o.is_zero(), "division by zero rational function");
        RatFunc::new(self.num.mul(&o.den), self.den.mul(&o.num))
    }
}

/// Integer scalar embedded in any domain by repeated addition of prototypes;
/// cheap for the small constants the recursions need.
pub fn scalar_from_int<S: TlScalar>(proto: &S, k: &BigInt) -> S {
    let one = proto.one_like();
    let mut acc = proto.zero_like();
    let mag = k.magnitude();
    // double-and-add
    let mut bit = mag.bits();
    while bit > 0 {
        bit -= 1;
        acc = acc.add(&acc);
        if mag.bit(bit) {
            acc = acc.add(&one);
        }
    }
    if k.is_negative() {
        acc.neg()
    } else {
        acc
    }
}

/// Evaluates an integer polynomial at a scalar.
pub fn eval_intpoly<S: TlScalar>(p: &IntPoly, x: &S) -> S {
    let mut acc = x.zero_like();
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(x).add(&scalar_from_int(x, c));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratfunc_reduces() {
        let a = RatFunc::new(IntPoly::from_i64(&[-1, 0, 1]), IntPoly::from_i64(&[1, 1]));
        assert_eq!(a.num, IntPoly::from_i64(&[-1, 1]));
        assert!(a.den.is_one());
        let b = RatFunc::new(IntPoly::from_i64(&[2, 2]), IntPoly::from_i64(&[4]));
        assert_eq!(b.num, IntPoly::from_i64(&[1, 1]));
        assert_eq!(b.den, IntPoly::from_i64(&[2]));
    }

    #[test]
    fn ratfunc_field_ops() {
        let d = RatFunc::delta();
        let inv = RatFunc::one().div(&d);
        assert_eq!(d.mul(&inv), RatFunc::one());
        let s = d.add(&inv); // (x^2+1)/x
        assert_eq!(s.num, IntPoly::from_i64(&[1, 0, 1]));
        assert_eq!(s.den, IntPoly::from_i64(&[0, 1]));
    }

    #[test]
    fn int_embedding() {
        let p = RatFunc::one();
        assert_eq!(scalar_from_int(&p, &BigInt::from(7)).num, IntPoly::from_i64(&[7]));
        assert_eq!(scalar_from_int(&p, &BigInt::from(-3)).num, IntPoly::from_i64(&[-3]));
        assert!(scalar_from_int(&p, &BigInt::from(0)).is_zero());
        let x: f64 = 1.0;
        assert_eq!(scalar_from_int(&x, &BigInt::from(12)), 12.0);
    }
}
