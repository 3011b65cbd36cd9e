//! Univariate polynomials with arbitrary-precision integer coefficients.
//!
//! Coefficients are stored constant term first with no trailing zeros; the
//! zero polynomial has an empty coefficient vector. All arithmetic is exact.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({})", self)
    }
}

impl fmt::Display for IntPoly {
    /// Renders like `x^3 - 2*x + 1`, highest degree first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if i == 0 {
                write!(f, "{}", mag)?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}*", mag)?;
                }
                if i == 1 {
                    write!(f, "x")?;
                } else {
                    write!(f, "x^{}", i)?;
                }
            }
        }
        Ok(())
    }
}

impl IntPoly {
    /// Builds a polynomial from coefficients, constant term first.
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly { coeffs };
        p.normalize();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::new(vec![c])
    }

    pub fn x() -> Self {
        IntPoly::new(vec![BigInt::zero(), BigInt::one()])
    }

    /// `x - c`
    pub fn x_minus(c: i64) -> Self {
        IntPoly::new(vec![BigInt::from(-c), BigInt::one()])
    }

    fn normalize(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; the zero polynomial reports degree 0 by convention.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_one()
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from(c.clone());
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + bigint_to_f64(c);
        }
        acc
    }

    /// Sign of `p(a/b)` computed with integer arithmetic only: evaluates the
    /// homogenization `sum c_i a^i b^(n-i)` and takes its sign.
    pub fn sign_at_rational(&self, x: &BigRational) -> i32 {
        if self.is_zero() {
            return 0;
        }
        let a = x.numer();
        let b = x.denom();
        let n = self.degree();
        let mut bpows = Vec::with_capacity(n + 1);
        let mut bp = BigInt::one();
        for _ in 0..=n {
            bpows.push(bp.clone());
            bp *= b;
        }
        let mut apow = BigInt::one();
        let mut total = BigInt::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            total += c * &apow * &bpows[n - i];
            apow *= a;
        }
        match total.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn neg(&self) -> Self {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        IntPoly::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - other.coeff(i));
        }
        IntPoly::new(out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        IntPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Divides every coefficient by `k`, which must divide exactly.
    pub fn div_exact_int(&self, k: &BigInt) -> Self {
        assert!(!k.is_zero());
        IntPoly::new(
            self.coeffs
                .iter()
                .map(|c| {
                    let (q, r) = c.div_rem(k);
                    debug_assert!(r.is_zero(), "non-exact integer division in div_exact_int");
                    q
                })
                .collect(),
        )
    }

    /// `self * x^k`
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); k];
        out.extend(self.coeffs.iter().cloned());
        IntPoly::new(out)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// GCD of all coefficients, nonnegative; 0 for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Content-free version with positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut g = self.content();
        if self.leading_coeff().is_negative() {
            g = -g;
        }
        self.div_exact_int(&g)
    }

    /// Exact division; panics in debug / returns garbage in release when the
    /// division has a remainder. Callers check divisibility separately via
    /// [`IntPoly::divides`] when it is not structurally guaranteed.
    pub fn div_exact(&self, d: &Self) -> Self {
        let (q, r) = self
            .div_rem_rational(d)
            .expect("division by zero polynomial");
        assert!(r.is_zero(), "non-exact polynomial division");
        q
    }

    /// Rational-coefficient division `self = q d + r`; `None` if `d` is zero
    /// or the integer conversion of `q`/`r` is non-exact.
    fn div_rem_rational(&self, d: &Self) -> Option<(IntPoly, IntPoly)> {
        if d.is_zero() {
            return None;
        }
        let dd = d.degree();
        if self.degree() < dd || self.is_zero() {
            return Some((IntPoly::zero(), self.clone()));
        }
        let mut rem: Vec<BigRational> = self
            .coeffs
            .iter()
            .map(|c| BigRational::from(c.clone()))
            .collect();
        let dlc = BigRational::from(d.leading_coeff());
        let mut q = vec![BigRational::zero(); self.degree() - dd + 1];
        for i in (dd..rem.len()).rev() {
            let c = rem[i].clone();
            if c.is_zero() {
                continue;
            }
            let f = c / &dlc;
            q[i - dd] = f.clone();
            for (j, dc) in d.coeffs.iter().enumerate() {
                let t = &f * BigRational::from(dc.clone());
                rem[i - dd + j] -= t;
            }
        }
        let to_int = |v: &[BigRational]| -> Option<Vec<BigInt>> {
            v.iter()
                .map(|c| if c.is_integer() { Some(c.to_integer()) } else { None })
                .collect()
        };
        Some((IntPoly::new(to_int(&q)?), IntPoly::new(to_int(&rem)?)))
    }

    /// True iff `d` divides `p` exactly over the integers.
    pub fn divides(d: &Self, p: &Self) -> bool {
        if d.is_zero() {
            return p.is_zero();
        }
        if p.is_zero() {
            return true;
        }
        if p.degree() < d.degree() {
            return false;
        }
        match p.div_rem_rational(d) {
            Some((q, r)) => r.is_zero() && q.mul(d) == *p,
            None => false,
        }
    }

    /// Pseudo-remainder: returns `prem(self, d)` where
    /// `lc(d)^(deg self - deg d + 1) * self = q*d + prem`.
    pub fn pseudo_rem(&self, d: &Self) -> Self {
        assert!(!d.is_zero());
        let mut r = self.clone();
        let dd = d.degree();
        let dlc = d.leading_coeff();
        if r.degree() < dd || r.is_zero() {
            // scale anyway so the contract holds
            let e = 0;
            let _ = e;
            return r;
        }
        let mut e = r.degree() + 1 - dd;
        while !r.is_zero() && r.degree() >= dd {
            let k = r.degree() - dd;
            let rlc = r.leading_coeff();
            // r = lc(d)*r - rlc * x^k * d
            let mut t = r.scale(&dlc);
            let sub = d.shift_up(k).scale(&rlc);
            t = t.sub(&sub);
            r = t;
            e -= 1;
        }
        if e > 0 {
            let mut f = BigInt::one();
            for _ in 0..e {
                f *= &dlc;
            }
            r = r.scale(&f);
        }
        r
    }

    /// Primitive GCD via a pseudo-remainder sequence with content stripping.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive_part();
        }
        if other.is_zero() {
            return self.primitive_part();
        }
        let c = self.content().gcd(&other.content());
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a.primitive_part().scale(&c)
    }

    /// `p / gcd(p, p')`, primitive with positive leading coefficient.
    pub fn squarefree_part(&self) -> Self {
        assert!(!self.is_zero(), "squarefree part of the zero polynomial");
        if self.degree() == 0 {
            return IntPoly::one();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == 0 {
            return self.primitive_part();
        }
        self.primitive_part().div_exact(&g).primitive_part()
    }

    /// Yun's algorithm: returns `(g_i, m_i)` with `self = content * prod g_i^(m_i)`,
    /// each `g_i` squarefree, primitive, pairwise coprime.
    pub fn squarefree_decomposition(&self) -> Vec<(IntPoly, u32)> {
        assert!(!self.is_zero());
        let p = self.primitive_part();
        if p.degree() == 0 {
            return vec![];
        }
        let dp = p.derivative();
        let a = p.gcd(&dp);
        // exact cofactors; scaling must stay aligned between b and c, so no
        // content stripping here
        let mut b = p.div_exact(&a);
        let mut c = dp.div_exact(&a);
        let mut out = Vec::new();
        let mut mult = 1u32;
        while b.degree() > 0 {
            let d = c.sub(&b.derivative());
            let g = b.gcd(&d);
            if g.degree() > 0 {
                out.push((g.clone(), mult));
            }
            b = b.div_exact(&g);
            c = d.div_exact(&g);
            mult += 1;
        }
        out
    }

    /// Resultant via the subresultant pseudo-remainder sequence, which keeps
    /// intermediate coefficients polynomially bounded.
    pub fn resultant(&self, other: &Self) -> BigInt {
        if self.is_zero() || other.is_zero() {
            return BigInt::zero();
        }
        if self.degree() == 0 {
            return self.leading_coeff().pow(other.degree() as u32);
        }
        if other.degree() == 0 {
            return other.leading_coeff().pow(self.degree() as u32);
        }
        let ca = self.content();
        let cb = other.content();
        let mut a = self.div_exact_int(&ca);
        let mut b = other.div_exact_int(&cb);
        let mut sign = BigInt::one();
        // content contribution: res(ca*A, cb*B) = ca^degB cb^degA res(A, B)
        let t = ca.pow(other.degree() as u32) * cb.pow(self.degree() as u32);
        if a.degree() < b.degree() {
            if (a.degree() * b.degree()) % 2 == 1 {
                sign = -sign;
            }
            std::mem::swap(&mut a, &mut b);
        }
        let exact = |n: &BigInt, d: &BigInt| -> BigInt {
            let (q, r) = n.div_rem(d);
            debug_assert!(r.is_zero(), "subresultant divisions are exact");
            q
        };
        let mut g = BigInt::one();
        let mut h = BigInt::one();
        loop {
            let d = a.degree();
            let e = b.degree();
            let delta = d - e;
            if d % 2 == 1 && e % 2 == 1 {
                sign = -sign;
            }
            let r = a.pseudo_rem(&b);
            a = b;
            // B <- R / (g * h^delta)
            let div = &g * h.pow(delta as u32);
            b = if r.is_zero() { IntPoly::zero() } else { r.div_exact_int(&div) };
            g = a.leading_coeff();
            h = if delta == 0 {
                h
            } else {
                // h <- g^delta / h^(delta-1)
                exact(&g.pow(delta as u32), &h.pow((delta - 1) as u32))
            };
            if b.is_zero() {
                return BigInt::zero();
            }
            if b.degree() == 0 {
                let da = a.degree() as u32;
                // h <- lc(B)^degA / h^(degA - 1)
                let hfin = exact(&b.leading_coeff().pow(da), &h.pow(da.saturating_sub(1)));
                return sign * t * hfin;
            }
        }
    }

    /// Discriminant via `res(p, p') / lc(p)` with the usual sign.
    pub fn discriminant(&self) -> BigInt {
        let n = self.degree();
        if n == 0 {
            return BigInt::one();
        }
        let r = self.resultant(&self.derivative());
        let lc = self.leading_coeff();
        let (q, rem) = r.div_rem(&lc);
        debug_assert!(rem.is_zero());
        let s = (n * (n - 1) / 2) % 2;
        if s == 1 {
            -q
        } else {
            q
        }
    }

    /// Reflects odd/even structure: substitutes `x^2 -> y` assuming only even
    /// powers occur; panics otherwise.
    pub fn even_part_in_squares(&self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len() / 2 + 1);
        for (i, c) in self.coeffs.iter().enumerate() {
            if i % 2 == 0 {
                out.push(c.clone());
            } else {
                assert!(c.is_zero(), "polynomial has an odd-degree term");
            }
        }
        IntPoly::new(out)
    }

    /// Serializes as comma-separated coefficients, constant term first.
    pub fn to_coeff_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn from_coeff_string(s: &str) -> Option<Self> {
        let coeffs: Option<Vec<BigInt>> =
            s.split(',').map(|t| t.trim().parse::<BigInt>().ok()).collect();
        Some(IntPoly::new(coeffs?))
    }
}

pub fn bigint_to_f64(x: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn rational_to_f64(x: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or_else(|| {
        bigint_to_f64(x.numer()) / bigint_to_f64(x.denom())
    })
}

/// Exact conversion from a finite f64.
pub fn rational_from_f64(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite float required")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> IntPoly {
        IntPoly::from_i64(v)
    }

    #[test]
    fn arithmetic_basics() {
        let a = p(&[1, 2, 1]); // (x+1)^2
        let b = p(&[1, 1]);
        assert_eq!(b.mul(&b), a);
        assert_eq!(a.sub(&a), IntPoly::zero());
        assert_eq!(a.degree(), 2);
        assert_eq!(a.eval_int(&BigInt::from(3)), BigInt::from(16));
    }

    #[test]
    fn gcd_and_squarefree() {
        let a = p(&[-1, 1]); // x-1
        let sq = a.mul(&a);
        assert_eq!(sq.squarefree_part(), a);
        let b = p(&[0, -2, 0, 1]); // x^3 - 2x
        assert_eq!(b.squarefree_part(), b);
        let g = sq.mul(&b).gcd(&sq);
        assert_eq!(g, sq);
    }

    #[test]
    fn division_and_divisibility() {
        let a = p(&[-1, 0, 1]); // x^2-1
        let b = p(&[1, 1]);
        assert!(IntPoly::divides(&b, &a));
        assert_eq!(a.div_exact(&b), p(&[-1, 1]));
        assert!(!IntPoly::divides(&p(&[1, 0, 1]), &a));
        assert!(!IntPoly::divides(&p(&[3, 2]), &a));
    }

    #[test]
    fn resultant_discriminant() {
        // disc(x^2 - 5x + 3) = 13
        assert_eq!(p(&[3, -5, 1]).discriminant(), BigInt::from(13));
        // disc(x^3 - 8x^2 + 17x - 5) = 169
        assert_eq!(p(&[-5, 17, -8, 1]).discriminant(), BigInt::from(169));
        // disc(x^3 - x - 1) = -23
        assert_eq!(p(&[-1, -1, 0, 1]).discriminant(), BigInt::from(-23));
    }

    #[test]
    fn yun_decomposition() {
        let f = p(&[-1, 1]); // x-1
        let g = p(&[2, 1]); // x+2
        let prod = f.mul(&f).mul(&f).mul(&g).mul(&g);
        let dec = prod.squarefree_decomposition();
        assert_eq!(dec, vec![(g.clone(), 2), (f.clone(), 3)]);
    }

    #[test]
    fn display_round_trip() {
        let f = p(&[1, 0, -2, 1]);
        assert_eq!(format!("{}", f), "x^3 - 2*x^2 + 1");
        let s = f.to_coeff_string();
        assert_eq!(IntPoly::from_coeff_string(&s).unwrap(), f);
    }
}
