//! Based bipartite graphs with duality data ("bigraphs") and pairs of them,
//! stored depth by depth, plus the combinatorial queries the enumeration and
//! pruning machinery is built on.
//!
//! The text encoding is positional and bit-exact:
//!
//! ```text
//! bigraph   := "bwd" depth ("v" depth)* "duals" dualblk ("v" dualblk)*
//! depth     := vertex ("p" vertex)*
//! vertex    := digit ("x" digit)*     one digit per previous-depth vertex
//! dualblk   := index ("x" index)*     1-based involution images
//! ```
//!
//! A pair is two encodings joined by a comma. Odd-depth vertices of the two
//! graphs are dual in matching positions, so serializations must list odd
//! vertices in dual order.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("encoding must start with 'bwd': {0}")]
    MissingPrefix(String),
    #[error("encoding must contain a 'duals' section: {0}")]
    MissingDuals(String),
    #[error("bad digit {0:?} in depth block")]
    BadDigit(char),
    #[error("bad dual index {0:?}")]
    BadDualIndex(String),
    #[error("row at depth {depth} has {got} entries, previous depth has {want} vertices")]
    RowLength { depth: usize, got: usize, want: usize },
    #[error("vertex {vertex} at depth {depth} has no edge to the previous depth")]
    Disconnected { depth: usize, vertex: usize },
    #[error("expected {want} dual blocks (one per even depth), got {got}")]
    DualCount { want: usize, got: usize },
    #[error("dual block {block} is not an involution on {width} vertices")]
    NotInvolution { block: usize, width: usize },
    #[error("pair must be two encodings joined by one comma: {0}")]
    PairShape(String),
    #[error("odd depth {depth} has {left} vertices in one graph, {right} in the other")]
    OddCountMismatch { depth: usize, left: usize, right: usize },
    #[error("graph depths {0} and {1} differ by more than one")]
    DepthGap(usize, usize),
    #[error("multiplicity {0} exceeds 9 and cannot be encoded")]
    MultiplicityRange(u32),
}

/// A based bipartite graph with duality tags on even-depth vertices.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bigraph {
    /// `blocks[d-1][i][j]` = edge multiplicity between vertex `i` at depth
    /// `d` and vertex `j` at depth `d-1`; depth 0 is the single star vertex.
    blocks: Vec<Vec<Vec<u8>>>,
    /// `duals[k]` = 0-based involution on the vertices at depth `2k`.
    duals: Vec<Vec<usize>>,
}

impl fmt::Debug for Bigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bigraph({})", self.to_string_bwd())
    }
}

impl Bigraph {
    pub fn new(blocks: Vec<Vec<Vec<u8>>>, duals: Vec<Vec<usize>>) -> Result<Self, ParseError> {
        let g = Bigraph { blocks, duals };
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> Result<(), ParseError> {
        let mut prev = 1usize;
        for (bi, block) in self.blocks.iter().enumerate() {
            let depth = bi + 1;
            for (vi, row) in block.iter().enumerate() {
                if row.len() != prev {
                    return Err(ParseError::RowLength { depth, got: row.len(), want: prev });
                }
                if row.iter().all(|&m| m == 0) {
                    return Err(ParseError::Disconnected { depth, vertex: vi + 1 });
                }
                for &m in row {
                    if m > 9 {
                        return Err(ParseError::MultiplicityRange(m as u32));
                    }
                }
            }
            prev = block.len();
        }
        let want = self.max_depth() / 2 + 1;
        if self.duals.len() != want {
            return Err(ParseError::DualCount { want, got: self.duals.len() });
        }
        for (k, inv) in self.duals.iter().enumerate() {
            let w = self.width(2 * k);
            let ok = inv.len() == w
                && inv.iter().all(|&i| i < w)
                && inv.iter().enumerate().all(|(i, &j)| inv[j] == i);
            if !ok {
                return Err(ParseError::NotInvolution { block: k, width: w });
            }
        }
        Ok(())
    }

    /// Maximal depth (the star alone is depth 0).
    pub fn max_depth(&self) -> usize {
        self.blocks.len()
    }

    /// Number of vertices at a given depth.
    pub fn width(&self, depth: usize) -> usize {
        if depth == 0 {
            1
        } else {
            self.blocks.get(depth - 1).map_or(0, |b| b.len())
        }
    }

    pub fn vertex_count(&self) -> usize {
        1 + self.blocks.iter().map(|b| b.len()).sum::<usize>()
    }

    /// Edge multiplicities between depth `d` and depth `d-1`.
    pub fn block(&self, depth: usize) -> &[Vec<u8>] {
        &self.blocks[depth - 1]
    }

    pub fn blocks(&self) -> &[Vec<Vec<u8>>] {
        &self.blocks
    }

    /// Involution on the vertices at even depth `2k`.
    pub fn dual_block(&self, k: usize) -> &[usize] {
        &self.duals[k]
    }

    pub fn duals(&self) -> &[Vec<usize>] {
        &self.duals
    }

    /// Image of even-depth vertex `(depth, i)` under duality.
    pub fn dual_of(&self, depth: usize, i: usize) -> usize {
        debug_assert!(depth % 2 == 0);
        self.duals[depth / 2][i]
    }

    // ----- encoding -----

    pub fn parse_bwd(text: &str) -> Result<Self, ParseError> {
        let rest = text
            .strip_prefix("bwd")
            .ok_or_else(|| ParseError::MissingPrefix(text.to_string()))?;
        let (graph, gdual) = rest
            .split_once("duals")
            .ok_or_else(|| ParseError::MissingDuals(text.to_string()))?;
        let mut blocks = Vec::new();
        for dstr in graph.split('v') {
            let mut block = Vec::new();
            for vstr in dstr.split('p') {
                let mut row = Vec::new();
                for part in vstr.split('x') {
                    let mut chars = part.chars();
                    match (chars.next(), chars.next()) {
                        (Some(c), None) if c.is_ascii_digit() => {
                            row.push(c.to_digit(10).unwrap() as u8)
                        }
                        (Some(c), _) => return Err(ParseError::BadDigit(c)),
                        (None, _) => return Err(ParseError::BadDigit(' ')),
                    }
                }
                block.push(row);
            }
            blocks.push(block);
        }
        let mut duals = Vec::new();
        for dstr in gdual.split('v') {
            let mut inv = Vec::new();
            for part in dstr.split('x') {
                let idx: usize = part
                    .parse()
                    .map_err(|_| ParseError::BadDualIndex(part.to_string()))?;
                if idx == 0 {
                    return Err(ParseError::BadDualIndex(part.to_string()));
                }
                inv.push(idx - 1);
            }
            duals.push(inv);
        }
        Bigraph::new(blocks, duals)
    }

    pub fn to_string_bwd(&self) -> String {
        let mut s = String::from("bwd");
        let bs: Vec<String> = self
            .blocks
            .iter()
            .map(|block| {
                block
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|m| m.to_string())
                            .collect::<Vec<_>>()
                            .join("x")
                    })
                    .collect::<Vec<_>>()
                    .join("p")
            })
            .collect();
        s.push_str(&bs.join("v"));
        s.push_str("duals");
        let ds: Vec<String> = self
            .duals
            .iter()
            .map(|inv| {
                inv.iter()
                    .map(|i| (i + 1).to_string())
                    .collect::<Vec<_>>()
                    .join("x")
            })
            .collect();
        s.push_str(&ds.join("v"));
        s
    }

    // ----- combinatorics -----

    /// Length of the initial simple chain: the largest `n <= max_depth` such
    /// that the ball of radius `n` around the star is a path with unit
    /// multiplicities.
    pub fn chain_prefix(&self) -> usize {
        for (bi, block) in self.blocks.iter().enumerate() {
            if block.len() != 1 || block[0].iter().map(|&m| m as u32).sum::<u32>() != 1 {
                return bi;
            }
        }
        self.max_depth()
    }

    /// True when the whole graph is a simple chain.
    pub fn is_chain(&self) -> bool {
        self.chain_prefix() == self.max_depth()
    }

    /// Full symmetric adjacency matrix over all vertices, star first, then
    /// depth 1 vertices in order, and so on.
    pub fn adjacency_matrix(&self) -> Vec<Vec<BigInt>> {
        let n = self.vertex_count();
        let mut m = vec![vec![BigInt::zero(); n]; n];
        let mut offset = 1usize; // index of first vertex at current depth
        let mut prev_offset = 0usize;
        for block in &self.blocks {
            for (i, row) in block.iter().enumerate() {
                for (j, &mult) in row.iter().enumerate() {
                    if mult > 0 {
                        let a = offset + i;
                        let b = prev_offset + j;
                        m[a][b] += BigInt::from(mult);
                        m[b][a] += BigInt::from(mult);
                    }
                }
            }
            prev_offset = offset;
            offset += block.len();
        }
        m
    }

    /// Flat indices of even-depth vertices as `(depth, index_within_depth)`.
    pub fn even_vertices(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for d in (0..=self.max_depth()).step_by(2) {
            for i in 0..self.width(d) {
                out.push((d, i));
            }
        }
        out
    }

    pub fn odd_vertices(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for d in (1..=self.max_depth()).step_by(2) {
            for i in 0..self.width(d) {
                out.push((d, i));
            }
        }
        out
    }

    /// Even-to-odd incidence: entry `(e, o)` is the edge multiplicity between
    /// the e-th even vertex and the o-th odd vertex (flat enumeration order).
    pub fn even_odd_incidence(&self) -> Vec<Vec<BigInt>> {
        let evens = self.even_vertices();
        let odds = self.odd_vertices();
        let mut m = vec![vec![BigInt::zero(); odds.len()]; evens.len()];
        for (oi, &(od, ov)) in odds.iter().enumerate() {
            for (ei, &(ed, ev)) in evens.iter().enumerate() {
                let mult = if ed + 1 == od {
                    self.blocks[od - 1][ov][ev]
                } else if od + 1 == ed {
                    self.blocks[ed - 1][ev][ov]
                } else {
                    0
                };
                if mult > 0 {
                    m[ei][oi] = BigInt::from(mult);
                }
            }
        }
        m
    }

    /// The even-even block of the squared adjacency matrix.
    pub fn squared_adjacency_even_block(&self) -> Vec<Vec<BigInt>> {
        let a = self.even_odd_incidence();
        let ne = a.len();
        let no = if ne > 0 { a[0].len() } else { 0 };
        let mut m = vec![vec![BigInt::zero(); ne]; ne];
        for i in 0..ne {
            for j in 0..ne {
                let mut s = BigInt::zero();
                for k in 0..no {
                    s += &a[i][k] * &a[j][k];
                }
                m[i][j] = s;
            }
        }
        m
    }
}

/// Closed-walk counts at the star: `omega[n]` counts walks of length `2n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkCounts {
    pub omega: Vec<BigInt>,
}

/// Counts closed walks at the star by direct propagation along the depth
/// blocks, edge multiplicities included.
pub fn loop_counts(g: &Bigraph, nmax: usize) -> WalkCounts {
    let n = g.vertex_count();
    let m = g.adjacency_matrix();
    let mut v = vec![BigInt::zero(); n];
    v[0] = BigInt::one();
    let mut omega = vec![BigInt::one()];
    for step in 1..=(2 * nmax) {
        let mut nv = vec![BigInt::zero(); n];
        for (i, row) in m.iter().enumerate() {
            let mut s = BigInt::zero();
            for (j, mij) in row.iter().enumerate() {
                if !mij.is_zero() {
                    s += mij * &v[j];
                }
            }
            nv[i] = s;
        }
        v = nv;
        if step % 2 == 0 {
            omega.push(v[0].clone());
        }
    }
    WalkCounts { omega }
}

/// Annular multiplicities from walk counts.
///
/// The binomial-basis inversion
/// `c_n = sum_r (-1)^(n-r) (2n/(n+r)) C(n+r, n-r) omega_r`
/// recovers coefficients against box-space dimensions `C(2m, m-n)`. The
/// weight-zero tower present in any based graph contributes Catalan numbers
/// `C(2m,m) - C(2m,m-1)` instead of a plain binomial column, so the true
/// weight-one multiplicity is `c_1 + omega_0`; all other weights are
/// unaffected. By convention `a_0 = omega_0`.
pub fn annular_multiplicities(w: &WalkCounts) -> Vec<BigInt> {
    let nmax = w.omega.len().saturating_sub(1);
    let mut out = Vec::with_capacity(nmax + 1);
    out.push(w.omega[0].clone());
    for n in 1..=nmax {
        let mut acc = BigInt::zero();
        for r in 0..=n {
            // 2n/(n+r) * C(n+r, n-r), always integral
            let num = BigInt::from(2 * n as u64) * binomial((n + r) as u64, (n - r) as u64);
            let (coef, rem) = num_integer::Integer::div_rem(&num, &BigInt::from((n + r) as u64));
            debug_assert!(rem.is_zero());
            let term = coef * &w.omega[r];
            if (n - r) % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        if n == 1 {
            acc += &w.omega[0];
        }
        out.push(acc);
    }
    out
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// A principal / dual-principal graph pair with positional odd duality.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BigraphPair {
    pub gamma: Bigraph,
    pub gamma_prime: Bigraph,
}

impl fmt::Debug for BigraphPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigraphPair({})", self.to_string_pair())
    }
}

impl BigraphPair {
    pub fn new(gamma: Bigraph, gamma_prime: Bigraph) -> Result<Self, ParseError> {
        let d1 = gamma.max_depth();
        let d2 = gamma_prime.max_depth();
        if d1.abs_diff(d2) > 1 {
            return Err(ParseError::DepthGap(d1, d2));
        }
        let mut d = 1;
        while d <= d1.max(d2) {
            let l = gamma.width(d);
            let r = gamma_prime.width(d);
            if l != r {
                return Err(ParseError::OddCountMismatch { depth: d, left: l, right: r });
            }
            d += 2;
        }
        Ok(BigraphPair { gamma, gamma_prime })
    }

    pub fn parse_pair(text: &str) -> Result<Self, ParseError> {
        let (a, b) = text
            .split_once(',')
            .ok_or_else(|| ParseError::PairShape(text.to_string()))?;
        if b.contains(',') {
            return Err(ParseError::PairShape(text.to_string()));
        }
        BigraphPair::new(Bigraph::parse_bwd(a.trim())?, Bigraph::parse_bwd(b.trim())?)
    }

    pub fn to_string_pair(&self) -> String {
        format!("{},{}", self.gamma.to_string_bwd(), self.gamma_prime.to_string_bwd())
    }

    /// Supertransitivity of the pair: the largest `n` such that both graphs
    /// restricted to distance `n` are simple chains. Two full chains report
    /// the larger depth.
    pub fn supertransitivity(&self) -> usize {
        let a = self.gamma.chain_prefix();
        let b = self.gamma_prime.chain_prefix();
        if self.gamma.is_chain() && self.gamma_prime.is_chain() {
            self.gamma.max_depth().max(self.gamma_prime.max_depth())
        } else {
            a.min(b)
        }
    }

    /// Inserts `k` (even) extra chain edges at the star of both graphs; new
    /// even chain vertices are self-dual.
    pub fn translate(&self, k: usize) -> Result<BigraphPair, ParseError> {
        if k % 2 != 0 {
            return Err(ParseError::PairShape(format!("translation step {} is odd", k)));
        }
        Ok(BigraphPair {
            gamma: translate_graph(&self.gamma, k),
            gamma_prime: translate_graph(&self.gamma_prime, k),
        })
    }

    /// Removes `k` (even) chain edges at the star; inverse of [`translate`]
    /// when the initial segment is a chain of length at least `k`.
    pub fn detranslate(&self, k: usize) -> Option<BigraphPair> {
        if k % 2 != 0 {
            return None;
        }
        Some(BigraphPair {
            gamma: detranslate_graph(&self.gamma, k)?,
            gamma_prime: detranslate_graph(&self.gamma_prime, k)?,
        })
    }
}

fn translate_graph(g: &Bigraph, k: usize) -> Bigraph {
    if k == 0 {
        return g.clone();
    }
    let mut blocks: Vec<Vec<Vec<u8>>> = Vec::with_capacity(g.max_depth() + k);
    for _ in 0..k {
        blocks.push(vec![vec![1]]);
    }
    blocks.extend(g.blocks.iter().cloned());
    let mut duals: Vec<Vec<usize>> = Vec::with_capacity(g.duals.len() + k / 2);
    for _ in 0..k / 2 {
        duals.push(vec![0]);
    }
    duals.extend(g.duals.iter().cloned());
    Bigraph { blocks, duals }
}

fn detranslate_graph(g: &Bigraph, k: usize) -> Option<Bigraph> {
    if k == 0 {
        return Some(g.clone());
    }
    if g.chain_prefix() < k || g.max_depth() < k + 1 {
        return None;
    }
    let blocks: Vec<Vec<Vec<u8>>> = g.blocks[k..].to_vec();
    let duals: Vec<Vec<usize>> = g.duals[k / 2..].to_vec();
    Bigraph::new(blocks, duals).ok()
}

// ----- canonical form -----

/// Applies within-depth permutations to a pair: `perms_g[d]` relabels the
/// depth-`d` vertices of gamma (for odd `d` the same permutation acts on
/// gamma_prime, keeping the positional duality), `perms_gp[d]` relabels even
/// depths of gamma_prime. `perm[i]` = new position of old vertex `i`.
pub fn relabel_pair(
    p: &BigraphPair,
    perms_g: &[Vec<usize>],
    perms_gp: &[Vec<usize>],
) -> BigraphPair {
    let gamma = relabel_graph(&p.gamma, |d| &perms_g[d]);
    let gamma_prime = relabel_graph(&p.gamma_prime, |d| {
        if d % 2 == 1 {
            &perms_g[d]
        } else {
            &perms_gp[d]
        }
    });
    BigraphPair { gamma, gamma_prime }
}

fn relabel_graph<'a, F>(g: &Bigraph, perm_at: F) -> Bigraph
where
    F: Fn(usize) -> &'a Vec<usize>,
{
    let mut blocks = Vec::with_capacity(g.max_depth());
    for d in 1..=g.max_depth() {
        let old = g.block(d);
        let pd = perm_at(d);
        let pprev = perm_at(d - 1);
        let w = old.len();
        let wprev = if d == 1 { 1 } else { g.width(d - 1) };
        let mut nb = vec![vec![0u8; wprev]; w];
        for (i, row) in old.iter().enumerate() {
            for (j, &m) in row.iter().enumerate() {
                nb[pd[i]][pprev[j]] = m;
            }
        }
        blocks.push(nb);
    }
    let mut duals = Vec::with_capacity(g.duals.len());
    for (k, inv) in g.duals.iter().enumerate() {
        let pd = perm_at(2 * k);
        let mut ni = vec![0usize; inv.len()];
        for (i, &j) in inv.iter().enumerate() {
            ni[pd[i]] = pd[j];
        }
        duals.push(ni);
    }
    Bigraph { blocks, duals }
}

fn identity_perm(n: usize) -> Vec<usize> {
    (0..n).collect()
}

fn all_perms(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = identity_perm(n);
    heaps(&mut cur, n, &mut out);
    out.sort();
    out
}

fn heaps(a: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(a.clone());
        return;
    }
    for i in 0..k {
        heaps(a, k - 1, out);
        if k % 2 == 0 {
            a.swap(i, k - 1);
        } else {
            a.swap(0, k - 1);
        }
    }
}

/// Canonical serialization of a pair: the lexicographically least
/// `gamma,gamma_prime` encoding over all within-depth relabelings that
/// transport the dual data. Isomorphic pairs map to equal strings.
pub fn canonical_key(p: &BigraphPair) -> String {
    canonical_pair(p).to_string_pair()
}

/// The relabeled pair realizing [`canonical_key`].
pub fn canonical_pair(p: &BigraphPair) -> BigraphPair {
    let dg = p.gamma.max_depth();
    let dgp = p.gamma_prime.max_depth();
    let mut search = CanonSearch {
        pair: p,
        dg,
        dgp,
        perms_g: (0..=dg).map(|d| identity_perm(p.gamma.width(d))).collect(),
        perms_gp: (0..=dgp).map(|d| identity_perm(p.gamma_prime.width(d))).collect(),
        best: None,
    };
    search.go_gamma(1, String::from("bwd"));
    let (_, bg, bgp) = search.best.expect("canonical search always finds a labeling");
    relabel_pair(p, &bg, &bgp)
}

struct CanonSearch<'a> {
    pair: &'a BigraphPair,
    dg: usize,
    dgp: usize,
    perms_g: Vec<Vec<usize>>,
    perms_gp: Vec<Vec<usize>>,
    best: Option<(String, Vec<Vec<usize>>, Vec<Vec<usize>>)>,
}

impl<'a> CanonSearch<'a> {
    /// Lexicographic pruning: a partial serialization can still win iff it is
    /// no greater than the matching prefix of the best complete key.
    fn beats_best(&self, partial: &str) -> bool {
        match &self.best {
            None => true,
            Some((best, _, _)) => {
                let pfx = &best[..partial.len().min(best.len())];
                partial.as_bytes() <= pfx.as_bytes()
            }
        }
    }

    fn go_gamma(&mut self, depth: usize, prefix: String) {
        if depth > self.dg {
            // gamma blocks fixed; the dual section is now determined
            let gstr = relabel_graph(&self.pair.gamma, |d| &self.perms_g[d]).to_string_bwd();
            debug_assert!(gstr.starts_with(prefix.split("duals").next().unwrap_or("")));
            let full = format!("{},bwd", gstr);
            if self.beats_best(&full) {
                self.go_gamma_prime(1, full);
            }
            return;
        }
        let w = self.pair.gamma.width(depth);
        for perm in all_perms(w) {
            self.perms_g[depth] = perm;
            let block = block_string(&self.pair.gamma, depth, &self.perms_g[depth], &self.perms_g[depth - 1]);
            let mut next = prefix.clone();
            if depth > 1 {
                next.push('v');
            }
            next.push_str(&block);
            if self.beats_best(&next) {
                self.go_gamma(depth + 1, next);
            }
        }
    }

    fn gp_perm(&self, d: usize) -> &Vec<usize> {
        if d % 2 == 1 {
            &self.perms_g[d]
        } else {
            &self.perms_gp[d]
        }
    }

    fn go_gamma_prime(&mut self, depth: usize, prefix: String) {
        if depth > self.dgp {
            let gpstr = relabel_graph(&self.pair.gamma_prime, |d| self.gp_perm(d)).to_string_bwd();
            let comma = prefix.rfind(',').unwrap();
            let full = format!("{}{}", &prefix[..=comma], gpstr);
            if self.beats_best(&full) {
                let better = match &self.best {
                    Some((best, _, _)) => full < *best,
                    None => true,
                };
                if better {
                    self.best = Some((full, self.perms_g.clone(), self.perms_gp.clone()));
                }
            }
            return;
        }
        if depth % 2 == 1 {
            // odd depths inherit gamma's permutation (positional duality)
            let block = block_string(
                &self.pair.gamma_prime,
                depth,
                self.gp_perm(depth),
                self.gp_perm(depth - 1),
            );
            let mut next = prefix;
            if depth > 1 {
                next.push('v');
            }
            next.push_str(&block);
            if self.beats_best(&next) {
                self.go_gamma_prime(depth + 1, next);
            }
            return;
        }
        let w = self.pair.gamma_prime.width(depth);
        for perm in all_perms(w) {
            self.perms_gp[depth] = perm;
            let block = block_string(
                &self.pair.gamma_prime,
                depth,
                self.gp_perm(depth),
                self.gp_perm(depth - 1),
            );
            let mut next = prefix.clone();
            if depth > 1 {
                next.push('v');
            }
            next.push_str(&block);
            if self.beats_best(&next) {
                self.go_gamma_prime(depth + 1, next);
            }
        }
    }
}

fn block_string(g: &Bigraph, depth: usize, pd: &[usize], pprev: &[usize]) -> String {
    let old = g.block(depth);
    let w = old.len();
    let wprev = if depth == 1 { 1 } else { g.width(depth - 1) };
    let mut nb = vec![vec![0u8; wprev]; w];
    for (i, row) in old.iter().enumerate() {
        for (j, &m) in row.iter().enumerate() {
            nb[pd[i]][pprev[j]] = m;
        }
    }
    nb.iter()
        .map(|row| row.iter().map(|m| m.to_string()).collect::<Vec<_>>().join("x"))
        .collect::<Vec<_>>()
        .join("p")
}
