//! Exact integer polynomial arithmetic and the number-theoretic elimination
//! toolkit built on it.

pub mod berkowitz;
pub mod factor;
pub mod galois;
pub mod intpoly;
pub mod modp;
pub mod numfield;
pub mod sturm;

pub use berkowitz::{char_poly_int, char_poly_rational};
pub use factor::{
    factor_over_integers, factor_over_integers_capped, is_irreducible, FactorError, Factorization,
    DEFAULT_DEGREE_CAP,
};
pub use galois::{
    abelian_by_structure, dnumber_test, kronecker_test, nonabelian_certificate,
    nonabelian_certificate_presumed_irreducible, GaloisError, NonAbelianCertificate,
    DEFAULT_PRIME_BOUND,
};
pub use intpoly::IntPoly;
pub use numfield::{AlgebraicReal, NfElem, NumberField};
pub use sturm::SturmChain;

use crate::bigraph::Bigraph;
use num_rational::BigRational;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MinPolyError {
    #[error("could not isolate the top eigenvalue below width 10^-60")]
    IsolationFailed,
    #[error(transparent)]
    Factor(#[from] FactorError),
}

/// Minimal polynomial of the squared graph norm: the unique irreducible
/// factor of the characteristic polynomial of the even part of the squared
/// adjacency matrix whose root count inside the certified enclosure of
/// `norm^2` is one.
pub fn minimal_poly_of_norm_squared(g: &Bigraph) -> Result<IntPoly, MinPolyError> {
    let even_block = g.squared_adjacency_even_block();
    let charpoly = char_poly_int(&even_block);
    select_factor_at_top_root(g, &charpoly, true)
}

/// Minimal polynomial of the graph norm itself (the top root of the
/// characteristic polynomial of the adjacency matrix).
pub fn minimal_poly_of_norm(g: &Bigraph) -> Result<IntPoly, MinPolyError> {
    let charpoly = crate::spectral::char_poly(g);
    select_factor_at_top_root(g, &charpoly, false)
}

fn select_factor_at_top_root(
    g: &Bigraph,
    charpoly: &IntPoly,
    squared: bool,
) -> Result<IntPoly, MinPolyError> {
    let fac = factor_over_integers(charpoly)?;
    for exp in [12u32, 24, 48, 60] {
        let width = BigRational::new(1.into(), num_bigint::BigInt::from(10u8).pow(exp));
        let (lo, hi) = if squared {
            // the squared norm is itself the largest root of the even-block
            // polynomial, so isolate it there directly
            let iv = crate::poly::sturm::isolate_largest_root(charpoly, &width);
            (iv.lo, iv.hi)
        } else {
            let enc = crate::spectral::graph_norm_exact(g, &width);
            (enc.lo.clone(), enc.hi.clone())
        };
        let mut hits: Vec<&IntPoly> = Vec::new();
        let mut too_wide = false;
        for (f, _) in &fac.factors {
            let chain = SturmChain::new(f);
            let n = chain.count_roots_in(&lo, &hi);
            if n > 1 {
                too_wide = true;
                break;
            }
            if n == 1 {
                hits.push(f);
            }
        }
        if !too_wide && hits.len() == 1 {
            return Ok(hits[0].clone());
        }
    }
    Err(MinPolyError::IsolationFailed)
}
