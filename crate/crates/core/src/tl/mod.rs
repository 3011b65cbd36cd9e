//! Exact Temperley-Lieb diagram algebra: bases, multiplication with a loop
//! parameter, Jones-Wenzl idempotents via the inductive recursion, the
//! diagrammatic (unnormalized closure) trace, quantum integers, and exact
//! positivity reports.
//!
//! The trace here closes all strands around the outside, so the identity on
//! `n` strands traces to `delta^n`; the normalization with `tr(1) = 1`
//! differs from this by a factor `delta^-n`.

pub mod diagram;
pub mod scalar;

pub use diagram::{tl_basis, TLDiagram};
pub use scalar::{eval_intpoly, scalar_from_int, RatFunc, TlField, TlScalar};

use crate::poly::numfield::NfElem;
use crate::poly::{AlgebraicReal, IntPoly, NumberField};
use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TlError {
    #[error("strand counts differ: {0} vs {1}")]
    StrandMismatch(usize, usize),
    #[error("quantum integer [{0}] vanishes at this loop value")]
    VanishingQuantumInteger(usize),
}

/// A formal linear combination of diagrams on a common strand count with
/// scalars in `S`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Debug)]
pub struct TLElement<S: TlScalar> {
    n: usize,
    terms: BTreeMap<TLDiagram, S>,
}

impl<S: TlScalar> TLElement<S> {
    pub fn zero(n: usize) -> Self {
        TLElement { n, terms: BTreeMap::new() }
    }

    pub fn from_diagram(d: TLDiagram, coeff: S) -> Self {
        let mut terms = BTreeMap::new();
        let n = d.strands();
        if !coeff.is_zero() {
            terms.insert(d, coeff);
        }
        TLElement { n, terms }
    }

    pub fn identity(n: usize, one: S) -> Self {
        TLElement::from_diagram(TLDiagram::identity(n), one)
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<TLDiagram, S> {
        &self.terms
    }

    pub fn coeff(&self, d: &TLDiagram) -> Option<&S> {
        self.terms.get(d)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, d: TLDiagram, c: S) {
        debug_assert_eq!(d.strands(), self.n);
        match self.terms.get_mut(&d) {
            Some(existing) => {
                let s = existing.add(&c);
                if s.is_zero() {
                    self.terms.remove(&d);
                } else {
                    *existing = s;
                }
            }
            None => {
                if !c.is_zero() {
                    self.terms.insert(d, c);
                }
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (d, c) in &o.terms {
            out.add_term(d.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (d, c) in &o.terms {
            out.add_term(d.clone(), c.neg());
        }
        out
    }

    pub fn scale(&self, k: &S) -> Self {
        let mut out = TLElement::zero(self.n);
        if k.is_zero() {
            return out;
        }
        for (d, c) in &self.terms {
            out.add_term(d.clone(), c.mul(k));
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = TLElement::zero(self.n);
        for (d, c) in &self.terms {
            out.terms.insert(d.clone(), c.neg());
        }
        out
    }

    /// Embeds with an extra through-strand on the right.
    pub fn with_free_strand(&self) -> Self {
        let mut out = TLElement::zero(self.n + 1);
        for (d, c) in &self.terms {
            out.terms.insert(d.with_free_strand(), c.clone());
        }
        out
    }
}

/// Diagrammatic product: stacks `a` over `b`, each closed loop contributing a
/// factor `delta`, extended bilinearly. Runs in parallel over left terms for
/// large elements.
pub fn multiply<S: TlScalar>(a: &TLElement<S>, b: &TLElement<S>, delta: &S) -> Result<TLElement<S>, TlError> {
    if a.n != b.n {
        return Err(TlError::StrandMismatch(a.n, b.n));
    }
    let mut delta_pows: Vec<S> = vec![delta.one_like()];
    for k in 1..=(2 * a.n + 1) {
        delta_pows.push(delta_pows[k - 1].mul(delta));
    }
    let pairs: Vec<(&TLDiagram, &S)> = a.terms.iter().collect();
    let chunks: Vec<BTreeMap<TLDiagram, S>> = pairs
        .par_iter()
        .map(|(da, ca)| {
            let mut local: BTreeMap<TLDiagram, S> = BTreeMap::new();
            for (db, cb) in &b.terms {
                let (d, loops) = da.stack(db);
                let c = ca.mul(cb).mul(&delta_pows[loops]);
                match local.get_mut(&d) {
                    Some(e) => *e = e.add(&c),
                    None => {
                        local.insert(d, c);
                    }
                }
            }
            local
        })
        .collect();
    let mut out = TLElement::zero(a.n);
    for chunk in chunks {
        for (d, c) in chunk {
            out.add_term(d, c);
        }
    }
    Ok(out)
}

/// Unnormalized Markov trace: closes every strand around the outside; the
/// identity on `n` strands traces to `delta^n`.
pub fn markov_trace<S: TlScalar>(a: &TLElement<S>, delta: &S) -> S {
    let mut acc = delta.zero_like();
    for (d, c) in &a.terms {
        let loops = d.closure_loops();
        let mut t = c.clone();
        for _ in 0..loops {
            t = t.mul(delta);
        }
        acc = acc.add(&t);
    }
    acc
}

/// Quantum integer `[n]` as an integer polynomial in the loop parameter:
/// `[0] = 0`, `[1] = 1`, `[k+1] = delta [k] - [k-1]`.
pub fn quantum_int(n: usize) -> IntPoly {
    let mut a = IntPoly::zero();
    let mut b = IntPoly::one();
    if n == 0 {
        return a;
    }
    let x = IntPoly::x();
    for _ in 1..n {
        let c = x.mul(&b).sub(&a);
        a = b;
        b = c;
    }
    b
}

/// Quantum integer evaluated in a scalar domain at a given loop value.
pub fn quantum_int_at<S: TlScalar>(n: usize, delta: &S) -> S {
    eval_intpoly(&quantum_int(n), delta)
}

/// Jones-Wenzl idempotent carried in cleared-denominator form: the
/// idempotent is `coeffs / den` with integer-polynomial entries in the loop
/// parameter. This keeps the recursion free of per-term gcd churn.
#[derive(Clone, Debug)]
pub struct JonesWenzlSym {
    pub n: usize,
    pub coeffs: BTreeMap<TLDiagram, IntPoly>,
    pub den: IntPoly,
}

impl JonesWenzlSym {
    /// The idempotent as an element over rational functions.
    pub fn to_ratfunc(&self) -> TLElement<RatFunc> {
        let mut out = TLElement::zero(self.n);
        for (d, c) in &self.coeffs {
            out.add_term(d.clone(), RatFunc::new(c.clone(), self.den.clone()));
        }
        out
    }

    /// Evaluation in a field at a concrete loop value; fails when a quantum
    /// integer `[k]`, `k <= n`, vanishes there.
    pub fn eval_at<S: TlField>(&self, delta: &S) -> Result<TLElement<S>, TlError> {
        for k in 2..=self.n {
            if quantum_int_at(k, delta).is_zero() {
                return Err(TlError::VanishingQuantumInteger(k));
            }
        }
        let den = eval_intpoly(&self.den, delta);
        let mut out = TLElement::zero(self.n);
        for (d, c) in &self.coeffs {
            out.add_term(d.clone(), eval_intpoly(c, delta).div(&den));
        }
        Ok(out)
    }

    /// Element with the denominator cleared (coefficients `IntPoly`).
    pub fn numerator_element(&self) -> TLElement<IntPoly> {
        let mut out = TLElement::zero(self.n);
        for (d, c) in &self.coeffs {
            out.add_term(d.clone(), c.clone());
        }
        out
    }
}

/// Computes the Jones-Wenzl idempotent by the inductive formula
/// `f(k+1) = f(k) - ([k]/[k+1]) f(k) e_k f(k)` with `f(k)` embedded by a free
/// strand, working over cleared denominators throughout.
pub fn jones_wenzl_sym(n: usize) -> JonesWenzlSym {
    assert!(n >= 1);
    let mut coeffs = BTreeMap::new();
    coeffs.insert(TLDiagram::identity(1), IntPoly::one());
    let mut f = JonesWenzlSym { n: 1, coeffs, den: IntPoly::one() };
    let delta = IntPoly::x();
    for k in 1..n {
        // embed with a free strand
        let mut emb: BTreeMap<TLDiagram, IntPoly> = BTreeMap::new();
        for (d, c) in &f.coeffs {
            emb.insert(d.with_free_strand(), c.clone());
        }
        let nk = TLElement { n: k + 1, terms: emb };
        let qk = quantum_int(k);
        let qk1 = quantum_int(k + 1);
        // t = e_k * N; then N * t
        let ek = TLElement::from_diagram(TLDiagram::e(k + 1, k), IntPoly::one());
        let t = multiply(&ek, &nk, &delta).unwrap();
        let ntn = multiply(&nk, &t, &delta).unwrap();
        // f(k+1) = (N * D * [k+1] - [k] * N e_k N) / (D^2 [k+1])
        let scale_a = f.den.mul(&qk1);
        let mut num: BTreeMap<TLDiagram, IntPoly> = BTreeMap::new();
        for (d, c) in nk.terms() {
            num.insert(d.clone(), c.mul(&scale_a));
        }
        for (d, c) in ntn.terms() {
            let t = c.mul(&qk);
            match num.get_mut(d) {
                Some(e) => {
                    let s = e.sub(&t);
                    if s.is_zero() {
                        num.remove(d);
                    } else {
                        *e = s;
                    }
                }
                None => {
                    num.insert(d.clone(), t.neg());
                }
            }
        }
        let mut den = f.den.mul(&f.den).mul(&qk1);
        // strip the common polynomial factor so degrees stay small
        let mut g = den.clone();
        for c in num.values() {
            g = g.gcd(c);
            if g.degree() == 0 && g.content().is_one() {
                break;
            }
        }
        if !g.is_one() {
            den = den.div_exact(&g);
            for c in num.values_mut() {
                *c = c.div_exact(&g);
            }
        }
        // normalize the denominator's sign
        if den.leading_coeff() < BigInt::from(0) {
            den = den.neg();
            for c in num.values_mut() {
                *c = c.neg();
            }
        }
        f = JonesWenzlSym { n: k + 1, coeffs: num, den };
    }
    f
}

/// Jones-Wenzl idempotent over rational functions in the loop parameter.
pub fn jones_wenzl(n: usize) -> TLElement<RatFunc> {
    jones_wenzl_sym(n).to_ratfunc()
}

/// Signs of the traces of the Jones-Wenzl idempotents at an exact loop
/// value: entry `k` (from 0) is the sign of `[k+2](delta)`, the trace of
/// `f(k+1)`.
pub fn positivity_report(delta: &AlgebraicReal, nmax: usize) -> Vec<i8> {
    let field = NumberField::new(delta.clone());
    let mut out = Vec::with_capacity(nmax);
    for n in 1..=nmax {
        let q = quantum_int(n + 1);
        let elem: NfElem = field.from_intpoly(&q);
        out.push(elem.sign() as i8);
    }
    out
}
