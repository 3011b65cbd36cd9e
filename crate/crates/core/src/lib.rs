//! Computational machinery for classifying principal graph pairs of
//! small-index subfactors: exact graph norms, candidate enumeration with
//! obstruction pruning, number-theoretic vine elimination, Temperley-Lieb
//! calculations, and biunitary connection verification.
//!
//! Everything that feeds an elimination argument is exact: integer and
//! rational arithmetic, certified rational enclosures for spectral data, and
//! algebraic numbers carried as minimal polynomial plus isolating interval.
//! Floating point appears only in power-iteration warm starts and in the
//! tolerance-checked connection verifier.

pub mod atlas;
pub mod bigraph;
pub mod connections;
pub mod obstructions;
pub mod odometer;
pub mod poly;
pub mod spectral;
pub mod tl;
