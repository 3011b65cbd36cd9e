//! Certified spectral data for bigraphs: exact characteristic polynomials,
//! graph-norm enclosures (fast Collatz–Wielandt bounds and Sturm-refined
//! exact ones), index-limit comparisons, Frobenius–Perron eigenvectors, and
//! the exact global index.

use crate::bigraph::Bigraph;
use crate::poly::numfield::interval_eval;
use crate::poly::sturm::{isolate_largest_root, SturmChain};
use crate::poly::{char_poly_int, AlgebraicReal, IntPoly, NfElem, NumberField};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpectralError {
    #[error("decimal limit within its own tolerance of the norm; comparison undecidable")]
    Undecidable,
    #[error("exact eigenvector solve is singular; minimal polynomial inconsistent with graph")]
    SingularSolve,
}

/// Certified rational enclosure of a graph norm: `lo <= norm <= hi`.
#[derive(Debug, Clone, PartialEq)]
pub struct NormEnclosure {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl NormEnclosure {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from(BigInt::from(2))
    }

    /// Enclosure of `norm^2` (both endpoints nonnegative in practice; guards
    /// against a slightly negative lower endpoint anyway).
    pub fn squared(&self) -> (BigRational, BigRational) {
        let lo = if self.lo.is_negative() {
            BigRational::zero()
        } else {
            &self.lo * &self.lo
        };
        (lo, &self.hi * &self.hi)
    }

    pub fn to_f64(&self) -> f64 {
        crate::poly::intpoly::rational_to_f64(&self.midpoint())
    }
}

/// Exact characteristic polynomial of the full adjacency matrix,
/// division-free.
pub fn char_poly(g: &Bigraph) -> IntPoly {
    char_poly_int(&g.adjacency_matrix())
}

fn f64_matrix(g: &Bigraph) -> Vec<Vec<f64>> {
    g.adjacency_matrix()
        .iter()
        .map(|row| row.iter().map(|x| x.to_f64().unwrap()).collect())
        .collect()
}

fn matvec(m: &[Vec<f64>], v: &[f64]) -> Vec<f64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// Collatz–Wielandt bounds: for any positive vector `v`,
/// `min_i (Mv)_i / v_i <= norm <= max_i (Mv)_i / v_i`. The vector comes from
/// float power iteration (on the squared matrix, which converges on bipartite
/// graphs); the final ratio evaluation is exact rational arithmetic, so the
/// bounds are certified regardless of float error.
pub fn norm_bounds(g: &Bigraph, iterations: usize) -> NormEnclosure {
    let m = f64_matrix(g);
    let n = m.len();
    let mut v = vec![1.0f64; n];
    let mut lam2_est = 1.0f64;
    for _ in 0..iterations {
        let w = matvec(&m, &matvec(&m, &v));
        let top = w.iter().cloned().fold(0.0, f64::max);
        if top <= 0.0 {
            break;
        }
        lam2_est = top;
        v = w.iter().map(|x| x / top).collect();
    }
    // mix parities: u = Mv + lambda v has all entries positive and is an
    // eigenvector of M when v is one of M^2
    let mv = matvec(&m, &v);
    let lam_est = lam2_est.sqrt().max(1e-6);
    let u: Vec<f64> = mv.iter().zip(&v).map(|(a, b)| a + lam_est * b).collect();
    let floor = 1e-300;
    let exact: Vec<BigRational> = u
        .iter()
        .map(|&x| BigRational::from_float(x.max(floor)).unwrap())
        .collect();
    let madj = g.adjacency_matrix();
    let mut lo: Option<BigRational> = None;
    let mut hi: Option<BigRational> = None;
    for i in 0..n {
        let mut s = BigRational::zero();
        for j in 0..n {
            if !madj[i][j].is_zero() {
                s += BigRational::from(madj[i][j].clone()) * &exact[j];
            }
        }
        let ratio = s / &exact[i];
        if lo.as_ref().map_or(true, |l| &ratio < l) {
            lo = Some(ratio.clone());
        }
        if hi.as_ref().map_or(true, |h| &ratio > h) {
            hi = Some(ratio);
        }
    }
    NormEnclosure { lo: lo.unwrap(), hi: hi.unwrap() }
}

/// Exact enclosure of the graph norm by Sturm bisection on the
/// characteristic polynomial, refined below `width`. Exactly one root of the
/// characteristic polynomial lies in the returned interval, above all others.
pub fn graph_norm_exact(g: &Bigraph, width: &BigRational) -> NormEnclosure {
    let cp = char_poly(g);
    let iv = isolate_largest_root(&cp, width);
    NormEnclosure { lo: iv.lo, hi: iv.hi }
}

/// An exact index threshold: a quadratic surd `(a + b sqrt c) / d` or a
/// decimal with explicit tolerance.
#[derive(Debug, Clone)]
pub enum ExactLimit {
    Surd { a: i64, b: i64, c: i64, d: i64 },
    Decimal { value: BigRational, tol: BigRational },
}

impl ExactLimit {
    pub fn surd(a: i64, b: i64, c: i64, d: i64) -> Self {
        ExactLimit::Surd { a, b, c, d }
    }

    pub fn integer(n: i64) -> Self {
        ExactLimit::Surd { a: n, b: 0, c: 0, d: 1 }
    }

    pub fn to_algebraic(&self) -> Option<AlgebraicReal> {
        match self {
            ExactLimit::Surd { a, b, c, d } => Some(AlgebraicReal::from_surd(*a, *b, *c, *d)),
            ExactLimit::Decimal { .. } => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExactLimit::Surd { a, b, c, d } => {
                (*a as f64 + *b as f64 * (*c as f64).sqrt()) / *d as f64
            }
            ExactLimit::Decimal { value, .. } => crate::poly::intpoly::rational_to_f64(value),
        }
    }

    /// Parses `5`, `7/2`, `3+sqrt(2)`, `(5+sqrt(13))/2`, `2*sqrt(3)`,
    /// `4.41+-0.01`.
    pub fn parse(s: &str) -> Option<ExactLimit> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some((v, tol)) = t.split_once("+-") {
            return Some(ExactLimit::Decimal {
                value: parse_decimal(v)?,
                tol: parse_decimal(tol)?,
            });
        }
        // optional outer (...)/d
        let (body, d) = if let Some(rest) = t.strip_prefix('(') {
            let close = rest.rfind(')')?;
            let inner = &rest[..close];
            let tail = &rest[close + 1..];
            let d = tail.strip_prefix('/')?.parse::<i64>().ok()?;
            (inner.to_string(), d)
        } else {
            (t.clone(), 1)
        };
        // body = a | a+Bsqrt | Bsqrt where Bsqrt = [k*]sqrt(c)
        let parse_sqrt_term = |u: &str| -> Option<(i64, i64)> {
            // returns (b, c) for b*sqrt(c)
            let (bs, cs) = if let Some(rest) = u.strip_prefix("sqrt(") {
                ("1", rest.strip_suffix(')')?)
            } else if let Some((b, rest)) = u.split_once("*sqrt(") {
                (b, rest.strip_suffix(')')?)
            } else {
                return None;
            };
            Some((bs.parse().ok()?, cs.parse().ok()?))
        };
        if let Some((b, c)) = parse_sqrt_term(&body) {
            return Some(ExactLimit::Surd { a: 0, b, c, d });
        }
        if let Some((astr, rest)) = body.split_once('+') {
            let a = astr.parse::<i64>().ok()?;
            let (b, c) = parse_sqrt_term(rest)?;
            return Some(ExactLimit::Surd { a, b, c, d });
        }
        if let Some((astr, rest)) = body[1..].split_once('-').map(|(x, y)| {
            (format!("{}{}", &body[..1], x), y.to_string())
        }) {
            if let Some((b, c)) = parse_sqrt_term(&rest) {
                let a = astr.parse::<i64>().ok()?;
                return Some(ExactLimit::Surd { a, b: -b, c, d });
            }
        }
        if let Some((n, dd)) = body.split_once('/') {
            let gcd_d = d * dd.parse::<i64>().ok()?;
            return Some(ExactLimit::Surd { a: n.parse().ok()?, b: 0, c: 0, d: gcd_d });
        }
        if body.contains('.') {
            // bare decimal: interpreted with zero tolerance
            return Some(ExactLimit::Decimal { value: parse_decimal(&body)?, tol: BigRational::zero() });
        }
        Some(ExactLimit::Surd { a: body.parse().ok()?, b: 0, c: 0, d })
    }
}

fn parse_decimal(s: &str) -> Option<BigRational> {
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.starts_with('-');
        let ip: BigInt = if int == "-" || int.is_empty() {
            BigInt::zero()
        } else {
            int.parse().ok()?
        };
        let fp: BigInt = if frac.is_empty() { BigInt::zero() } else { frac.parse().ok()? };
        let den = BigInt::from(10u8).pow(frac.len() as u32);
        let mag = ip.abs() * &den + fp;
        let num = if neg { -mag } else { mag };
        Some(BigRational::new(num, den))
    } else {
        Some(BigRational::from(s.parse::<BigInt>().ok()?))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitVerdict {
    Below,
    Above,
    Boundary,
}

/// Compares the squared norm of a single graph against an exact limit.
pub fn graph_vs_limit(g: &Bigraph, limit: &ExactLimit) -> Result<LimitVerdict, SpectralError> {
    // fast pass with Collatz-Wielandt bounds
    let quick = norm_bounds(g, 40);
    let (qlo, qhi) = quick.squared();
    if let Some(v) = decide_against_limit(&qlo, &qhi, limit)? {
        return Ok(v);
    }
    // exact refinement
    let mut width = BigRational::new(BigInt::one(), BigInt::from(10u8).pow(8));
    for _ in 0..6 {
        let enc = graph_norm_exact(g, &width);
        let (lo, hi) = enc.squared();
        if let Some(v) = decide_against_limit(&lo, &hi, limit)? {
            return Ok(v);
        }
        width = BigRational::new(BigInt::one(), width.denom() * BigInt::from(10u8).pow(8));
    }
    // refinement never separated the values: decide exactly by minimal
    // polynomials (surd limits only; decimals have already errored out)
    let theta = AlgebraicReal::new_norm_squared(g);
    match limit.to_algebraic() {
        Some(lim) => {
            if theta.eq_algebraic(&lim) {
                Ok(LimitVerdict::Boundary)
            } else if theta.to_f64() < lim.to_f64() {
                Ok(LimitVerdict::Below)
            } else {
                Ok(LimitVerdict::Above)
            }
        }
        None => Err(SpectralError::Undecidable),
    }
}

fn decide_against_limit(
    lo: &BigRational,
    hi: &BigRational,
    limit: &ExactLimit,
) -> Result<Option<LimitVerdict>, SpectralError> {
    match limit {
        ExactLimit::Surd { a, b, c, d } => {
            let lim = AlgebraicReal::from_surd(*a, *b, *c, *d);
            // strictly below: hi < lim; strictly above: lo > lim
            if lim.cmp_rational(hi) == std::cmp::Ordering::Greater {
                return Ok(Some(LimitVerdict::Below));
            }
            if lim.cmp_rational(lo) == std::cmp::Ordering::Less {
                return Ok(Some(LimitVerdict::Above));
            }
            Ok(None)
        }
        ExactLimit::Decimal { value, tol } => {
            let vlo = value - tol;
            let vhi = value + tol;
            if hi < &vlo {
                return Ok(Some(LimitVerdict::Below));
            }
            if lo > &vhi {
                return Ok(Some(LimitVerdict::Above));
            }
            // enclosure overlaps the tolerance band
            Err(SpectralError::Undecidable)
        }
    }
}

impl AlgebraicReal {
    /// The squared norm of a graph as an algebraic real: minimal polynomial
    /// and isolating interval both from the even block of the squared
    /// adjacency matrix (its largest root is the squared norm).
    pub fn new_norm_squared(g: &Bigraph) -> AlgebraicReal {
        let minpoly = crate::poly::minimal_poly_of_norm_squared(g)
            .expect("norm-squared minimal polynomial");
        let width = BigRational::new(BigInt::one(), BigInt::from(10u8).pow(12));
        let even = char_poly_int(&g.squared_adjacency_even_block());
        let iv = crate::poly::sturm::isolate_largest_root(&even, &width);
        AlgebraicReal::new(minpoly, iv.lo, iv.hi)
    }
}

/// Compares both graphs of a pair against an exact index limit. `Below`
/// means both squared norms are strictly under the limit; `Above` means at
/// least one is strictly over; `Boundary` means the larger one hits the limit
/// exactly.
pub fn index_limit_test(
    p: &crate::bigraph::BigraphPair,
    limit: &ExactLimit,
) -> Result<LimitVerdict, SpectralError> {
    let a = graph_vs_limit(&p.gamma, limit)?;
    let b = graph_vs_limit(&p.gamma_prime, limit)?;
    Ok(match (a, b) {
        (LimitVerdict::Above, _) | (_, LimitVerdict::Above) => LimitVerdict::Above,
        (LimitVerdict::Boundary, _) | (_, LimitVerdict::Boundary) => LimitVerdict::Boundary,
        _ => LimitVerdict::Below,
    })
}

/// Frobenius–Perron eigenvector data. Entries are indexed like the full
/// adjacency matrix (star first, then depth by depth).
#[derive(Debug, Clone)]
pub struct FPVector {
    /// Floating entries, star entry normalized to 1.
    pub entries: Vec<f64>,
    /// Floating eigenvalue estimate.
    pub lambda: f64,
    /// Exact data, when requested: entries of even-depth vertices in
    /// Q(theta), theta = norm^2, and odd-depth entries divided by the norm
    /// (odd Perron entries are `norm * w` with `w` in Q(theta); the division
    /// keeps everything inside the field).
    pub exact: Option<ExactFPData>,
}

#[derive(Debug, Clone)]
pub struct ExactFPData {
    pub field: Arc<NumberField>,
    /// One entry per even vertex, in the flat even enumeration order.
    pub even: Vec<NfElem>,
    /// One entry per odd vertex divided by the norm.
    pub odd_over_norm: Vec<NfElem>,
}

/// Numeric Frobenius–Perron vector via power iteration; residual under
/// 1e-10 by construction (iterates until converged).
pub fn fp_vector_numeric(g: &Bigraph) -> FPVector {
    let m = f64_matrix(g);
    let n = m.len();
    let mut v = vec![1.0f64; n];
    let mut lam2 = 1.0f64;
    for _ in 0..100_000 {
        let w = matvec(&m, &matvec(&m, &v));
        let top = w.iter().cloned().fold(0.0, f64::max);
        let nv: Vec<f64> = w.iter().map(|x| x / top).collect();
        let delta: f64 = nv
            .iter()
            .zip(&v)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        v = nv;
        lam2 = top;
        if delta < 1e-15 {
            break;
        }
    }
    let lam = lam2.sqrt();
    // fold the two parities together and normalize at the star
    let mv = matvec(&m, &v);
    let u: Vec<f64> = mv.iter().zip(&v).map(|(a, b)| a + lam * b).collect();
    let star = u[0];
    FPVector {
        entries: u.iter().map(|x| x / star).collect(),
        lambda: lam,
        exact: None,
    }
}

/// Exact Frobenius–Perron vector over Q(theta). Solves the blocked
/// eigen-equations `A w = v_even`, `A^T v_even = theta w` exactly, where `A`
/// is the even-odd incidence and `w` is the odd part divided by the norm.
pub fn fp_vector_exact(g: &Bigraph) -> Result<FPVector, SpectralError> {
    let theta = AlgebraicReal::new_norm_squared(g);
    let field = NumberField::new(theta);
    let a = g.even_odd_incidence();
    let ne = a.len();
    let no = if ne > 0 { a[0].len() } else { 0 };
    // unknowns: even entries (star fixed to 1) and odd-over-norm entries
    let nvars = ne + no;
    let mut rows: Vec<Vec<NfElem>> = Vec::new();
    let mut rhs: Vec<NfElem> = Vec::new();
    let zero = field.zero();
    let theta_el = field.gen();
    // equations: for each even e: sum_o A[e,o] w_o - v_e = 0
    for e in 0..ne {
        let mut row = vec![zero.clone(); nvars];
        for o in 0..no {
            if !a[e][o].is_zero() {
                row[ne + o] = field.constant(BigRational::from(a[e][o].clone()));
            }
        }
        row[e] = field.constant(BigRational::from(BigInt::from(-1)));
        rows.push(row);
        rhs.push(zero.clone());
    }
    // for each odd o: sum_e A[e,o] v_e - theta w_o = 0
    for o in 0..no {
        let mut row = vec![zero.clone(); nvars];
        for e in 0..ne {
            if !a[e][o].is_zero() {
                row[e] = field.constant(BigRational::from(a[e][o].clone()));
            }
        }
        row[ne + o] = theta_el.neg();
        rows.push(row);
        rhs.push(zero.clone());
    }
    // normalization: v_star = 1 (star is the first even vertex)
    {
        let mut row = vec![zero.clone(); nvars];
        row[0] = field.one();
        rows.push(row);
        rhs.push(field.one());
    }
    let sol = solve_field_system(&field, rows, rhs).ok_or(SpectralError::SingularSolve)?;
    let even: Vec<NfElem> = sol[..ne].to_vec();
    let odd_over_norm: Vec<NfElem> = sol[ne..].to_vec();

    // fill the numeric view from the exact one
    let lam = field.theta().to_f64().sqrt();
    let evens = g.even_vertices();
    let odds = g.odd_vertices();
    let n = g.vertex_count();
    let mut entries = vec![0.0f64; n];
    let flat = |dv: (usize, usize)| -> usize {
        // star first, then depth blocks in order
        let (d, i) = dv;
        let mut idx = 0usize;
        for dd in 0..d {
            idx += g.width(dd);
        }
        idx + i
    };
    for (k, &dv) in evens.iter().enumerate() {
        entries[flat(dv)] = even[k].to_f64();
    }
    for (k, &dv) in odds.iter().enumerate() {
        entries[flat(dv)] = odd_over_norm[k].to_f64() * lam;
    }
    Ok(FPVector {
        entries,
        lambda: lam,
        exact: Some(ExactFPData { field, even, odd_over_norm }),
    })
}

/// Gaussian elimination over a number field. Returns `None` when the system
/// is singular or inconsistent.
fn solve_field_system(
    field: &Arc<NumberField>,
    mut rows: Vec<Vec<NfElem>>,
    mut rhs: Vec<NfElem>,
) -> Option<Vec<NfElem>> {
    let m = rows.len();
    let n = if m > 0 { rows[0].len() } else { 0 };
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0usize;
    for c in 0..n {
        let piv = (r..m).find(|&i| !rows[i][c].is_zero())?;
        let piv = Some(piv)?;
        rows.swap(r, piv);
        rhs.swap(r, piv);
        let inv = rows[r][c].inverse()?;
        for j in c..n {
            rows[r][j] = rows[r][j].mul(&inv);
        }
        rhs[r] = rhs[r].mul(&inv);
        for i in 0..m {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in c..n {
                    let t = f.mul(&rows[r][j]);
                    rows[i][j] = rows[i][j].sub(&t);
                }
                let t = f.mul(&rhs[r]);
                rhs[i] = rhs[i].sub(&t);
            }
        }
        pivots.push((r, c));
        r += 1;
        if r == m {
            break;
        }
    }
    // consistency of the left-over equations
    for i in r..m {
        if rows[i].iter().all(|x| x.is_zero()) && !rhs[i].is_zero() {
            return None;
        }
    }
    if pivots.len() < n {
        return None;
    }
    let mut sol = vec![field.zero(); n];
    for &(ri, c) in &pivots {
        sol[c] = rhs[ri].clone();
    }
    Some(sol)
}

/// Exact global index: the sum over even-depth vertices of the squared
/// Frobenius–Perron dimension, as an element of Q(theta) with its minimal
/// polynomial.
pub struct GlobalIndex {
    pub value: NfElem,
    pub minpoly: IntPoly,
}

pub fn global_index_exact(p: &crate::bigraph::BigraphPair) -> Result<GlobalIndex, SpectralError> {
    let fp = fp_vector_exact(&p.gamma)?;
    let data = fp.exact.expect("exact mode");
    let mut acc = data.field.zero();
    for v in &data.even {
        acc = acc.add(&v.mul(v));
    }
    let minpoly = acc.minimal_polynomial();
    Ok(GlobalIndex { value: acc, minpoly })
}

/// Evaluates an integer polynomial on a rational interval.
pub fn eval_intpoly_interval(
    p: &IntPoly,
    lo: &BigRational,
    hi: &BigRational,
) -> (BigRational, BigRational) {
    let coeffs: Vec<BigRational> = p
        .coeffs()
        .iter()
        .map(|c| BigRational::from(c.clone()))
        .collect();
    interval_eval(&coeffs, lo, hi)
}

/// Verifies that the top-root enclosure brackets by sign and isolates a
/// single root; used by tests and kept here so callers can assert the
/// `NormEnclosure` invariants cheaply.
pub fn enclosure_is_certified(g: &Bigraph, enc: &NormEnclosure) -> bool {
    let cp = char_poly(g);
    let chain = SturmChain::new(&cp);
    let signs = cp.sign_at_rational(&enc.lo) * cp.sign_at_rational(&enc.hi);
    signs < 0 && chain.count_roots_in(&enc.lo, &enc.hi) == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigraph::BigraphPair;

    const HAAGERUP_G: &str = "bwd1v1v1v1p1v1x0p0x1v1x0p0x1duals1v1v1x2v2x1";
    const HAAGERUP_GP: &str = "bwd1v1v1v1p1v1x0p1x0duals1v1v1x2";
    const E10: &str = "bwd1v1v1v1v1v1v1p1v1x0duals1v1v1v1v1";
    const GHJ_3311: &str = "bwd1v1v1v1p1p1v1x0x0v1duals1v1v1x2x3v1";

    fn g(s: &str) -> Bigraph {
        Bigraph::parse_bwd(s).unwrap()
    }

    fn chain(edges: usize) -> Bigraph {
        let mut s = String::from("bwd1");
        for _ in 1..edges {
            s.push_str("v1");
        }
        s.push_str("duals1");
        for _ in 0..(edges / 2) {
            s.push_str("v1");
        }
        g(&s)
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn char_poly_examples() {
        assert_eq!(char_poly(&g("bwd1duals1")), IntPoly::from_i64(&[-1, 0, 1]));
        assert_eq!(char_poly(&chain(2)), IntPoly::from_i64(&[0, -2, 0, 1]));
        let e10 = g(E10);
        let cp = char_poly(&e10);
        assert_eq!(cp.degree(), 10);
        // the squared norm satisfies the known quintic, which divides the
        // even-block characteristic polynomial
        let quintic = IntPoly::from_i64(&[-1, 12, -31, 27, -9, 1]);
        let even = crate::poly::char_poly_int(&e10.squared_adjacency_even_block());
        assert!(IntPoly::divides(&quintic, &even));
    }

    #[test]
    fn norm_bounds_examples() {
        let enc = norm_bounds(&g("bwd1duals1"), 5);
        assert!(enc.lo <= rat(1, 1) && rat(1, 1) <= enc.hi);
        assert!(enc.width() < rat(1, 1000));

        let enc = norm_bounds(&chain(2), 30);
        let sqrt2 = 1.4142135623730951f64;
        assert!(enc.to_f64() - sqrt2 < 1e-9 && sqrt2 - enc.to_f64() < 1e-9);

        let enc = norm_bounds(&g(HAAGERUP_G), 50);
        assert!(enc.width() < rat(1, 100_000_000), "width {}", enc.width());
        let target = ((5.0 + 13.0f64.sqrt()) / 2.0).sqrt();
        assert!((enc.to_f64() - target).abs() < 1e-8);
    }

    #[test]
    fn graph_norm_exact_paths() {
        // A_n has norm 2cos(pi/(n+1)); n-1 edges
        for n in 3..=12usize {
            let p = chain(n - 1);
            let enc = graph_norm_exact(&p, &rat(1, 1_000_000_000));
            let expect = 2.0 * (std::f64::consts::PI / (n as f64 + 1.0)).cos();
            assert!(
                (enc.to_f64() - expect).abs() < 1e-8,
                "A_{} norm {} vs {}",
                n,
                enc.to_f64(),
                expect
            );
            assert!(enclosure_is_certified(&p, &enc));
        }
    }

    #[test]
    fn graph_norm_exact_landmarks() {
        let enc = graph_norm_exact(&g(E10), &rat(1, 1_000_000_000));
        let n2 = enc.to_f64().powi(2);
        assert!((n2 - 4.02642).abs() < 1e-4, "E10 norm^2 = {}", n2);

        let enc = graph_norm_exact(&g(GHJ_3311), &rat(1, 10_000_000_000));
        let n2 = enc.to_f64().powi(2);
        assert!((n2 - (3.0 + 3.0f64.sqrt())).abs() < 1e-6, "3311 norm^2 = {}", n2);
    }

    #[test]
    fn norms_of_pair_agree() {
        let w = rat(1, BigInt::from(10u8).pow(12).try_into().unwrap_or(1_000_000_000_000i64));
        let a = graph_norm_exact(&g(HAAGERUP_G), &w);
        let b = graph_norm_exact(&g(HAAGERUP_GP), &w);
        assert!((a.to_f64() - b.to_f64()).abs() < 1e-9);
    }

    #[test]
    fn cross_method_agreement() {
        for s in [HAAGERUP_G, HAAGERUP_GP, E10, GHJ_3311] {
            let gr = g(s);
            let cw = norm_bounds(&gr, 60);
            let exact = graph_norm_exact(&gr, &rat(1, 1_000_000_000_000));
            // both enclose the norm, so they overlap and midpoints agree to
            // the sum of the widths
            assert!(cw.lo <= exact.hi && exact.lo <= cw.hi);
            let gap = (cw.midpoint() - exact.midpoint()).abs();
            assert!(gap <= cw.width() + exact.width());
        }
    }

    #[test]
    fn limit_comparisons() {
        let h = BigraphPair::parse_pair(&format!("{},{}", HAAGERUP_G, HAAGERUP_GP)).unwrap();
        assert_eq!(index_limit_test(&h, &ExactLimit::integer(5)).unwrap(), LimitVerdict::Below);

        let e10pair = BigraphPair::new(g(E10), g(E10)).unwrap();
        assert_eq!(
            index_limit_test(&e10pair, &ExactLimit::integer(4)).unwrap(),
            LimitVerdict::Above
        );

        let a4 = BigraphPair::new(chain(3), chain(3)).unwrap();
        assert_eq!(index_limit_test(&a4, &ExactLimit::integer(4)).unwrap(), LimitVerdict::Below);

        // boundary: 3311 against exactly 3 + sqrt 3
        let ghj = BigraphPair::new(g(GHJ_3311), g(GHJ_3311)).unwrap();
        assert_eq!(
            index_limit_test(&ghj, &ExactLimit::surd(3, 1, 3, 1)).unwrap(),
            LimitVerdict::Boundary
        );
        assert_eq!(
            index_limit_test(&ghj, &ExactLimit::surd(3, 1, 2, 1)).unwrap(),
            LimitVerdict::Above
        );
    }

    #[test]
    fn decimal_limits() {
        let a4 = BigraphPair::new(chain(3), chain(3)).unwrap();
        let lim = ExactLimit::Decimal { value: rat(4, 1), tol: rat(1, 100) };
        assert_eq!(index_limit_test(&a4, &lim).unwrap(), LimitVerdict::Below);
        // norm^2 of the single edge is exactly 1; a decimal 1 +- tol is
        // undecidable and must be reported
        let one = BigraphPair::parse_pair("bwd1duals1,bwd1duals1").unwrap();
        let lim = ExactLimit::Decimal { value: rat(1, 1), tol: rat(1, 1000) };
        assert!(matches!(index_limit_test(&one, &lim), Err(SpectralError::Undecidable)));
    }

    #[test]
    fn limit_parser() {
        assert!(matches!(
            ExactLimit::parse("3+sqrt(2)"),
            Some(ExactLimit::Surd { a: 3, b: 1, c: 2, d: 1 })
        ));
        assert!(matches!(
            ExactLimit::parse("(5+sqrt(13))/2"),
            Some(ExactLimit::Surd { a: 5, b: 1, c: 13, d: 2 })
        ));
        assert!(matches!(
            ExactLimit::parse("5"),
            Some(ExactLimit::Surd { a: 5, b: 0, c: 0, d: 1 })
        ));
        assert!(matches!(
            ExactLimit::parse("2*sqrt(5)"),
            Some(ExactLimit::Surd { a: 0, b: 2, c: 5, d: 1 })
        ));
        match ExactLimit::parse("4.41+-0.01") {
            Some(ExactLimit::Decimal { value, tol }) => {
                assert_eq!(value, rat(441, 100));
                assert_eq!(tol, rat(1, 100));
            }
            other => panic!("bad parse: {:?}", other),
        }
    }

    #[test]
    fn fp_vector_small() {
        let fp = fp_vector_numeric(&g("bwd1duals1"));
        assert!((fp.entries[0] - 1.0).abs() < 1e-10);
        assert!((fp.entries[1] - 1.0).abs() < 1e-10);

        let fp = fp_vector_numeric(&chain(2));
        assert!((fp.entries[0] - 1.0).abs() < 1e-10);
        assert!((fp.entries[1] - 2.0f64.sqrt()).abs() < 1e-9);
        assert!((fp.entries[2] - 1.0).abs() < 1e-9);

        // residual check
        let gr = g(HAAGERUP_G);
        let fp = fp_vector_numeric(&gr);
        let m = gr.adjacency_matrix();
        for i in 0..fp.entries.len() {
            let mut s = 0.0;
            for j in 0..fp.entries.len() {
                s += m[i][j].to_f64().unwrap() * fp.entries[j];
            }
            assert!((s - fp.lambda * fp.entries[i]).abs() < 1e-10);
        }
        // all Haagerup dimensions are at least 1
        for e in &fp.entries {
            assert!(*e >= 1.0 - 1e-9);
        }
    }

    #[test]
    fn fp_vector_exact_matches_numeric() {
        for s in [HAAGERUP_G, HAAGERUP_GP, GHJ_3311] {
            let gr = g(s);
            let exact = fp_vector_exact(&gr).unwrap();
            let numeric = fp_vector_numeric(&gr);
            for (a, b) in exact.entries.iter().zip(&numeric.entries) {
                assert!((a - b).abs() < 1e-9, "{}: {} vs {}", s, a, b);
            }
            // exact verification of the eigen-equations
            let data = exact.exact.as_ref().unwrap();
            let inc = gr.even_odd_incidence();
            let field = &data.field;
            let theta = field.gen();
            for (e, row) in inc.iter().enumerate() {
                let mut s = field.zero();
                for (o, mult) in row.iter().enumerate() {
                    if !mult.is_zero() {
                        s = s.add(&data.odd_over_norm[o].scale(&BigRational::from(mult.clone())));
                    }
                }
                assert!(s.sub(&data.even[e]).is_zero());
            }
            for o in 0..data.odd_over_norm.len() {
                let mut s = field.zero();
                for (e, row) in inc.iter().enumerate() {
                    if !row[o].is_zero() {
                        s = s.add(&data.even[e].scale(&BigRational::from(row[o].clone())));
                    }
                }
                assert!(s.sub(&theta.mul(&data.odd_over_norm[o])).is_zero());
            }
        }
    }

    #[test]
    fn global_index_examples() {
        let one = BigraphPair::parse_pair("bwd1duals1,bwd1duals1").unwrap();
        let gi = global_index_exact(&one).unwrap();
        assert!((gi.value.to_f64() - 1.0).abs() < 1e-12);
        assert_eq!(gi.minpoly, IntPoly::from_i64(&[-1, 1]));

        let p2 = BigraphPair::new(chain(2), chain(2)).unwrap();
        let gi = global_index_exact(&p2).unwrap();
        assert!((gi.value.to_f64() - 2.0).abs() < 1e-12);
        assert_eq!(gi.minpoly, IntPoly::from_i64(&[-2, 1]));

        let h = BigraphPair::parse_pair(&format!("{},{}", HAAGERUP_G, HAAGERUP_GP)).unwrap();
        let gi = global_index_exact(&h).unwrap();
        // numeric cross-check against the float Perron vector
        let fp = fp_vector_numeric(&h.gamma);
        let mut sum = 0.0;
        let mut idx = 0usize;
        for d in 0..=h.gamma.max_depth() {
            for _ in 0..h.gamma.width(d) {
                if d % 2 == 0 {
                    sum += fp.entries[idx] * fp.entries[idx];
                }
                idx += 1;
            }
        }
        assert!((gi.value.to_f64() - sum).abs() < 1e-8, "{} vs {}", gi.value.to_f64(), sum);
        // exact value (39 + 9 sqrt 13)/2 has minimal polynomial x^2 - 39x + 117
        assert_eq!(gi.minpoly, IntPoly::from_i64(&[117, -39, 1]));
    }
}
