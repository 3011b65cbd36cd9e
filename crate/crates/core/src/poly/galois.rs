//! Number-theoretic eliminations: Kronecker's criterion, non-abelian Galois
//! certificates from Frobenius factorization patterns, and the d-number
//! divisibility test.

use super::factor::{is_irreducible, FactorError};
use super::intpoly::IntPoly;
use super::modp::{factor_degrees_mod_p, primes_below, PolyP};
use super::sturm::all_roots_in_minus2_2;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const DEFAULT_PRIME_BOUND: u64 = 10_000;

/// Witness that the splitting field of a polynomial has non-abelian Galois
/// group: an unramified prime whose Frobenius factor degrees are mixed. An
/// abelian group acting transitively acts regularly, which forces all factor
/// degrees equal; mixed degrees therefore certify non-abelianness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonAbelianCertificate {
    pub prime: u64,
    pub factor_degrees: Vec<usize>,
}

#[derive(Debug, Error)]
pub enum GaloisError {
    #[error("polynomial must be irreducible for the certificate scan")]
    Reducible,
    #[error(transparent)]
    Factor(#[from] FactorError),
}

/// Scans odd primes up to `prime_bound`, skipping those dividing the
/// discriminant, for a Frobenius factorization with mixed degrees. Returns
/// the smallest certifying prime; `None` means the scan was inconclusive
/// (never "the field is abelian").
pub fn nonabelian_certificate(
    p: &IntPoly,
    prime_bound: u64,
) -> Result<Option<NonAbelianCertificate>, GaloisError> {
    if !is_irreducible(p)? {
        return Err(GaloisError::Reducible);
    }
    Ok(nonabelian_certificate_presumed_irreducible(p, prime_bound))
}

/// The certificate scan without the irreducibility precheck, for callers
/// whose input is an already-extracted irreducible factor.
pub fn nonabelian_certificate_presumed_irreducible(
    p: &IntPoly,
    prime_bound: u64,
) -> Option<NonAbelianCertificate> {
    // quadratic (and linear) fields are abelian; nothing to scan for
    if p.degree() <= 2 {
        return None;
    }
    let disc = p.discriminant();
    let lc = p.leading_coeff();
    for q in primes_below(prime_bound + 1) {
        let qb = BigInt::from(q);
        if (&disc % &qb).is_zero() || (&lc % &qb).is_zero() {
            continue;
        }
        let fp = PolyP::from_bigint_poly(q, p.coeffs());
        let degs = factor_degrees_mod_p(&fp);
        let first = degs[0];
        if degs.iter().any(|&d| d != first) {
            return Some(NonAbelianCertificate { prime: q, factor_degrees: degs });
        }
    }
    None
}

/// True iff all roots of the monic integer polynomial are real and lie in
/// `[-2, 2]`; by Kronecker's theorem each root is then `2 cos(pi q)` for some
/// rational `q`.
pub fn kronecker_test(p: &IntPoly) -> bool {
    assert!(p.is_monic(), "Kronecker test expects a monic polynomial");
    all_roots_in_minus2_2(p)
}

/// Ostrik's d-number criterion for a monic polynomial
/// `x^n + a_1 x^(n-1) + ... + a_n`: the root generates a Galois-stable ideal
/// iff `a_n^i` divides `a_i^n` for every `i`. A vanishing constant term makes
/// zero a root, whose ideal is trivially stable.
pub fn dnumber_test(p: &IntPoly) -> bool {
    assert!(p.is_monic(), "d-number test expects a monic polynomial");
    let n = p.degree();
    if n == 0 {
        return true;
    }
    let an = p.coeff(0);
    if an.is_zero() {
        return true;
    }
    for i in 1..=n {
        let ai = p.coeff(n - i); // a_i multiplies x^(n-i)
        let num = ai.pow(n as u32);
        let den = an.pow(i as u32);
        if !(num % den).is_zero() {
            return false;
        }
    }
    true
}

/// A cubic with square discriminant has cyclic (hence abelian) Galois group.
pub fn abelian_by_structure(p: &IntPoly) -> bool {
    match p.degree() {
        0 | 1 | 2 => true,
        3 => {
            let d = p.discriminant();
            !d.is_negative() && {
                let r = d.sqrt();
                &r * &r == d
            }
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> IntPoly {
        IntPoly::from_i64(v)
    }

    #[test]
    fn quadratics_never_certify() {
        assert_eq!(nonabelian_certificate(&p(&[3, -5, 1]), 10_000).unwrap(), None);
    }

    #[test]
    fn x3_minus_x_minus_1_certificate() {
        let cert = nonabelian_certificate(&p(&[-1, -1, 0, 1]), 10_000)
            .unwrap()
            .expect("non-abelian cubic certifies");
        assert_eq!(cert.prime, 5);
        assert_eq!(cert.factor_degrees, vec![1, 2]);
    }

    #[test]
    fn reducible_input_rejected() {
        assert!(matches!(
            nonabelian_certificate(&p(&[-1, 0, 1]), 100),
            Err(GaloisError::Reducible)
        ));
    }

    #[test]
    fn abelian_cubics_do_not_certify() {
        // x^3 - 3x - 1: discriminant 81, cyclic Galois group
        let f = p(&[-1, -3, 0, 1]);
        assert!(abelian_by_structure(&f));
        assert_eq!(nonabelian_certificate(&f, 10_000).unwrap(), None);
        // extended-Haagerup index cubic: discriminant 169
        assert!(abelian_by_structure(&p(&[-5, 17, -8, 1])));
        // x^3 - x - 1 has discriminant -23
        assert!(!abelian_by_structure(&p(&[-1, -1, 0, 1])));
    }

    #[test]
    fn kronecker_examples() {
        assert!(kronecker_test(&p(&[-1, 1])));
        assert!(kronecker_test(&p(&[-3, 0, 1])));
        assert!(!kronecker_test(&p(&[-5, 0, 1])));
    }

    #[test]
    fn dnumber_examples() {
        assert!(dnumber_test(&p(&[-5, 1]))); // x - 5
        assert!(dnumber_test(&p(&[5, -5, 1]))); // x^2 - 5x + 5
        assert!(!dnumber_test(&p(&[3, -5, 1]))); // x^2 - 5x + 3
        assert!(dnumber_test(&p(&[0, 7, 1]))); // constant term zero
        assert!(dnumber_test(&p(&[117, -39, 1]))); // x^2 - 39x + 117
    }
}
