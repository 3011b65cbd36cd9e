//! Division-free characteristic polynomials (Berkowitz's algorithm).
//!
//! Returns `det(xI - M)` exactly. The algorithm only adds and multiplies, so
//! it works verbatim over the integers and the rationals.

use super::intpoly::IntPoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

macro_rules! berkowitz_impl {
    ($name:ident, $t:ty) => {
        /// Characteristic polynomial coefficients of an `n x n` matrix given
        /// in row-major order, constant term first, leading coefficient 1.
        fn $name(m: &[Vec<$t>], n: usize) -> Vec<$t> {
            if n == 0 {
                return vec![<$t>::one()];
            }
            // vectors store coefficients of det(xI - M_r) for leading
            // principal minors, highest degree first
            let mut c: Vec<$t> = vec![<$t>::one(), -m[0][0].clone()];
            for r in 1..n {
                // row R = M[r][0..r], column S = M[0..r][r], corner a = M[r][r]
                let a = m[r][r].clone();
                // powers(k) = R * A^k * S  where A is the leading r x r block
                let mut powers: Vec<$t> = Vec::with_capacity(r + 1);
                let mut v: Vec<$t> = (0..r).map(|i| m[i][r].clone()).collect();
                let dot = |v: &[$t]| -> $t {
                    let mut s = <$t>::zero();
                    for i in 0..r {
                        s += m[r][i].clone() * v[i].clone();
                    }
                    s
                };
                powers.push(dot(&v));
                for _ in 1..r {
                    let mut nv: Vec<$t> = Vec::with_capacity(r);
                    for i in 0..r {
                        let mut s = <$t>::zero();
                        for j in 0..r {
                            s += m[i][j].clone() * v[j].clone();
                        }
                        nv.push(s);
                    }
                    v = nv;
                    powers.push(dot(&v));
                }
                // Toeplitz multiply: new(i) = c(i) - a*c(i-1) - sum_k powers(k)*c(i-2-k)
                let mut nc: Vec<$t> = Vec::with_capacity(c.len() + 1);
                for i in 0..=c.len() {
                    let mut s = if i < c.len() { c[i].clone() } else { <$t>::zero() };
                    if i >= 1 {
                        s -= a.clone() * c[i - 1].clone();
                    }
                    for (k, pw) in powers.iter().enumerate() {
                        if i >= 2 + k {
                            s -= pw.clone() * c[i - 2 - k].clone();
                        }
                    }
                    nc.push(s);
                }
                c = nc;
            }
            c.reverse(); // constant term first
            c
        }
    };
}

berkowitz_impl!(berkowitz_bigint, BigInt);
berkowitz_impl!(berkowitz_bigrational, BigRational);

/// Characteristic polynomial of an integer matrix (row-major square).
pub fn char_poly_int(m: &[Vec<BigInt>]) -> IntPoly {
    let n = m.len();
    IntPoly::new(berkowitz_bigint(m, n))
}

/// Characteristic polynomial of a rational matrix, returned as the primitive
/// integer polynomial with the same roots.
pub fn char_poly_rational(m: &[Vec<BigRational>]) -> IntPoly {
    let n = m.len();
    let coeffs = berkowitz_bigrational(m, n);
    let mut den = BigInt::one();
    for c in &coeffs {
        den = num_integer::lcm(den, c.denom().clone());
    }
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| c.numer() * (&den / c.denom()))
        .collect();
    IntPoly::new(ints).primitive_part()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_matrix(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn two_by_two() {
        // [[0,1],[1,0]] -> x^2 - 1
        let m = int_matrix(&[&[0, 1], &[1, 0]]);
        assert_eq!(char_poly_int(&m), IntPoly::from_i64(&[-1, 0, 1]));
    }

    #[test]
    fn path_of_two_edges() {
        let m = int_matrix(&[&[0, 1, 0], &[1, 0, 1], &[0, 1, 0]]);
        assert_eq!(char_poly_int(&m), IntPoly::from_i64(&[0, -2, 0, 1]));
    }

    #[test]
    fn known_4x4_determinant() {
        // char poly constant term = det(-M) = (-1)^n det M
        let m = int_matrix(&[
            &[2, 0, 1, 0],
            &[1, 3, 0, 0],
            &[0, 1, 1, 2],
            &[1, 0, 0, 1],
        ]);
        let cp = char_poly_int(&m);
        // determinant by permutation expansion: 13; n = 4 so det(xI-M) has
        // constant term +13
        assert_eq!(cp.coeff(0), BigInt::from(13));
        // trace appears with sign in the x^3 coefficient
        assert_eq!(cp.coeff(3), BigInt::from(-7));
        assert!(cp.is_monic());
    }

    #[test]
    fn rational_matrix() {
        use num_rational::BigRational;
        let h = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        // [[1/2, 0], [0, 1/3]] -> (x-1/2)(x-1/3) ~ 6x^2 - 5x + 1
        let m = vec![vec![h(1, 2), h(0, 1)], vec![h(0, 1), h(1, 3)]];
        assert_eq!(char_poly_rational(&m), IntPoly::from_i64(&[1, -5, 6]));
    }
}
