//! The enumeration engine: grow candidate pairs depth by depth under an
//! exact index limit, prune with the obstruction battery, accumulate vines,
//! and eliminate vine translates by number theory.
//!
//! Weeds and vines are tracked as canonical pair strings, so set semantics
//! (and therefore run results) are independent of work scheduling. Chain
//! pairs deeper than the root by two or more are never re-enqueued: they are
//! translates of pairs already covered, and the classification statement is
//! closed under translation.

use crate::bigraph::{canonical_key, Bigraph, BigraphPair};
use crate::obstructions::{run_suite, suite_passes, SuiteOptions, TestKind, Verdict};
use crate::poly::{
    abelian_by_structure, dnumber_test, kronecker_test, minimal_poly_of_norm, AlgebraicReal,
};
use crate::spectral::{graph_vs_limit, ExactLimit, LimitVerdict};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OdometerError {
    #[error("weed has unequal graph depths and cannot be extended two-sided")]
    UnevenWeed,
    #[error("checkpoint is malformed: {0}")]
    BadCheckpoint(String),
    #[error("limit expression failed to parse: {0}")]
    BadLimit(String),
}

/// Generation caps: candidates hitting a cap are reported so the caller can
/// raise it; at index limits below 5 the caps are never active.
#[derive(Debug, Clone, Copy)]
pub struct GenerationCaps {
    pub width_cap: usize,
    pub mult_cap: u8,
}

impl Default for GenerationCaps {
    fn default() -> Self {
        GenerationCaps { width_cap: 6, mult_cap: 3 }
    }
}

/// The quadruple driving the odometer.
#[derive(Debug, Clone)]
pub struct ClassificationStatement {
    pub root: BigraphPair,
    pub limit_expr: String,
    pub limit: ExactLimit,
    pub vines: BTreeSet<String>,
    pub weeds: BTreeSet<String>,
}

impl ClassificationStatement {
    /// The trivial statement: everything is a translated extension of the
    /// root.
    pub fn trivial(root: BigraphPair, limit_expr: &str) -> Result<Self, OdometerError> {
        let limit = ExactLimit::parse(limit_expr)
            .ok_or_else(|| OdometerError::BadLimit(limit_expr.to_string()))?;
        let mut weeds = BTreeSet::new();
        weeds.insert(canonical_key(&root));
        Ok(ClassificationStatement {
            root,
            limit_expr: limit_expr.to_string(),
            limit,
            vines: BTreeSet::new(),
            weeds,
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TraceEvent {
    pub event: String,
    pub pair: [String; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<serde_json::Value>,
}

impl TraceEvent {
    fn new(event: &str, p: &BigraphPair) -> Self {
        TraceEvent {
            event: event.to_string(),
            pair: [p.gamma.to_string_bwd(), p.gamma_prime.to_string_bwd()],
            reason: None,
            data: None,
        }
    }
}

fn is_chain_pair(p: &BigraphPair) -> bool {
    p.gamma.is_chain() && p.gamma_prime.is_chain()
}

/// Enumerates the candidate edge blocks for one new depth on one graph:
/// `count` new vertices, each row a nonzero multiplicity vector over the
/// frontier. `sorted` restricts to non-increasing row order (for sides whose
/// new-vertex order is a pure relabeling); rows are pruned by a certified
/// norm bound as they are added.
struct BlockGen<'a> {
    base: &'a Bigraph,
    frontier_width: usize,
    caps: GenerationCaps,
    limit: &'a ExactLimit,
    sorted: bool,
}

impl<'a> BlockGen<'a> {
    fn run(&self, count: usize) -> Vec<Vec<Vec<u8>>> {
        let rows = self.candidate_rows();
        let mut out = Vec::new();
        let mut acc: Vec<Vec<u8>> = Vec::new();
        self.rec(count, &rows, &mut acc, &mut out);
        out
    }

    fn candidate_rows(&self) -> Vec<Vec<u8>> {
        // all nonzero rows with entries up to the cap; the row sum is capped
        // by the limit since a degree-m vertex forces norm^2 >= m
        let cap = self.caps.mult_cap;
        let max_sum = {
            let l = self.limit.to_f64();
            (l.ceil() as u32).max(1)
        };
        let mut rows = Vec::new();
        let w = self.frontier_width;
        let mut cur = vec![0u8; w];
        loop {
            let sum: u32 = cur.iter().map(|&m| m as u32).sum();
            if sum >= 1 && sum <= max_sum {
                rows.push(cur.clone());
            }
            // increment base-(cap+1)
            let mut i = 0;
            loop {
                if i == w {
                    rows.sort();
                    rows.reverse();
                    return rows;
                }
                if cur[i] < cap {
                    cur[i] += 1;
                    break;
                }
                cur[i] = 0;
                i += 1;
            }
        }
    }

    fn rec(
        &self,
        remaining: usize,
        rows: &[Vec<u8>],
        acc: &mut Vec<Vec<u8>>,
        out: &mut Vec<Vec<Vec<u8>>>,
    ) {
        if remaining == 0 {
            out.push(acc.clone());
            return;
        }
        for (i, row) in rows.iter().enumerate() {
            if self.sorted && !acc.is_empty() && row > acc.last().unwrap() {
                continue;
            }
            acc.push(row.clone());
            if self.partial_survives(acc) {
                // sorted mode restricts successors to rows at most this one
                let next_rows = if self.sorted { &rows[i..] } else { rows };
                self.rec(remaining - 1, next_rows, acc, out);
            }
            acc.pop();
        }
    }

    /// Certified check that the base graph extended by the partial block can
    /// still sit strictly under the limit (extensions only raise the norm).
    fn partial_survives(&self, block: &[Vec<u8>]) -> bool {
        let mut blocks = self.base.blocks().to_vec();
        blocks.push(block.to_vec());
        let mut duals = self.base.duals().to_vec();
        if blocks.len() % 2 == 0 {
            duals.push((0..block.len()).collect());
        }
        let g = match Bigraph::new(blocks, duals) {
            Ok(g) => g,
            Err(_) => return false,
        };
        match graph_vs_limit(&g, self.limit) {
            Ok(LimitVerdict::Below) => true,
            _ => false,
        }
    }
}

fn involutions(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![usize::MAX; k];
    fn rec(cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let k = cur.len();
        let first = match cur.iter().position(|&x| x == usize::MAX) {
            None => {
                out.push(cur.clone());
                return;
            }
            Some(p) => p,
        };
        cur[first] = first;
        rec(cur, out);
        cur[first] = usize::MAX;
        for j in first + 1..k {
            if cur[j] == usize::MAX {
                cur[first] = j;
                cur[j] = first;
                rec(cur, out);
                cur[first] = usize::MAX;
                cur[j] = usize::MAX;
            }
        }
    }
    rec(&mut cur, &mut out);
    out.sort();
    out
}

fn extend_graph(g: &Bigraph, block: Vec<Vec<u8>>, dual: Option<Vec<usize>>) -> Option<Bigraph> {
    let mut blocks = g.blocks().to_vec();
    blocks.push(block);
    let mut duals = g.duals().to_vec();
    if let Some(inv) = dual {
        duals.push(inv);
    }
    Bigraph::new(blocks, duals).ok()
}

/// All ways to append one depth to both graphs, staying strictly under the
/// index limit, deduplicated canonically.
pub fn extend_one_depth(
    w: &BigraphPair,
    limit: &ExactLimit,
    caps: GenerationCaps,
) -> Result<Vec<BigraphPair>, OdometerError> {
    let d = w.gamma.max_depth();
    if d != w.gamma_prime.max_depth() {
        return Err(OdometerError::UnevenWeed);
    }
    let new_depth = d + 1;
    let odd = new_depth % 2 == 1;
    let mut out: BTreeSet<String> = BTreeSet::new();
    let mut pairs = Vec::new();

    let gen_g = BlockGen {
        base: &w.gamma,
        frontier_width: w.gamma.width(d),
        caps,
        limit,
        sorted: true,
    };
    let gen_gp_sorted = BlockGen {
        base: &w.gamma_prime,
        frontier_width: w.gamma_prime.width(d),
        caps,
        limit,
        sorted: !odd,
    };
    for count_g in 1..=caps.width_cap {
        let blocks_g = gen_g.run(count_g);
        if blocks_g.is_empty() {
            continue;
        }
        // odd new depth: counts must match for positional duality
        let counts_gp: Vec<usize> = if odd {
            vec![count_g]
        } else {
            (1..=caps.width_cap).collect()
        };
        for &count_gp in &counts_gp {
            let blocks_gp = gen_gp_sorted.run(count_gp);
            for bg in &blocks_g {
                for bgp in &blocks_gp {
                    let duals_g: Vec<Option<Vec<usize>>> = if odd {
                        vec![None]
                    } else {
                        involutions(count_g).into_iter().map(Some).collect()
                    };
                    let duals_gp: Vec<Option<Vec<usize>>> = if odd {
                        vec![None]
                    } else {
                        involutions(count_gp).into_iter().map(Some).collect()
                    };
                    for dg in &duals_g {
                        let gamma = match extend_graph(&w.gamma, bg.clone(), dg.clone()) {
                            Some(g) => g,
                            None => continue,
                        };
                        for dgp in &duals_gp {
                            let gamma_prime =
                                match extend_graph(&w.gamma_prime, bgp.clone(), dgp.clone()) {
                                    Some(g) => g,
                                    None => continue,
                                };
                            let cand = match BigraphPair::new(gamma.clone(), gamma_prime) {
                                Ok(p) => p,
                                Err(_) => continue,
                            };
                            let key = canonical_key(&cand);
                            if out.insert(key) {
                                pairs.push(crate::bigraph::canonical_pair(&cand));
                            }
                        }
                    }
                }
            }
        }
    }
    pairs.sort_by_key(|p| p.to_string_pair());
    Ok(pairs)
}

/// All ways to extend exactly one graph of the pair by one depth (the other
/// is final). Only even new depths are possible: an odd extension on one side
/// breaks the positional odd duality.
pub fn one_sided_extensions(
    w: &BigraphPair,
    limit: &ExactLimit,
    caps: GenerationCaps,
) -> Result<Vec<BigraphPair>, OdometerError> {
    let d = w.gamma.max_depth();
    if d != w.gamma_prime.max_depth() {
        return Err(OdometerError::UnevenWeed);
    }
    let new_depth = d + 1;
    if new_depth % 2 == 1 {
        return Ok(vec![]);
    }
    let mut out: BTreeSet<String> = BTreeSet::new();
    let mut pairs = Vec::new();
    for side in 0..2 {
        let base = if side == 0 { &w.gamma } else { &w.gamma_prime };
        let gen = BlockGen {
            base,
            frontier_width: base.width(d),
            caps,
            limit,
            sorted: true,
        };
        for count in 1..=caps.width_cap {
            for block in gen.run(count) {
                for inv in involutions(count) {
                    let extended = match extend_graph(base, block.clone(), Some(inv)) {
                        Some(g) => g,
                        None => continue,
                    };
                    let cand = if side == 0 {
                        BigraphPair::new(extended, w.gamma_prime.clone())
                    } else {
                        BigraphPair::new(w.gamma.clone(), extended)
                    };
                    let cand = match cand {
                        Ok(p) => p,
                        Err(_) => continue,
                    };
                    let key = canonical_key(&cand);
                    if out.insert(key) {
                        pairs.push(crate::bigraph::canonical_pair(&cand));
                    }
                }
            }
        }
    }
    pairs.sort_by_key(|p| p.to_string_pair());
    Ok(pairs)
}

// Only translation-robust tests may reject weeds or vines outright: both
// stand for their whole translate families. The tail bound and the dimension
// bound are translate-sensitive and run per translate instead.
const WEED_TESTS: [TestKind; 5] = [
    TestKind::DepthCompatibility,
    TestKind::Associativity,
    TestKind::AnnularNonneg,
    TestKind::Ocneanu,
    TestKind::Stability,
];

const VINE_TESTS: [TestKind; 5] = [
    TestKind::DepthCompatibility,
    TestKind::Associativity,
    TestKind::AnnularNonneg,
    TestKind::Ocneanu,
    TestKind::Stability,
];

/// Highest translate examined before a family is conservatively kept.
const TRANSLATE_SCAN_CAP: usize = 64;

/// Translate-robust tail elimination for a weed: the family dies when every
/// translate either violates the tail-length dimension bound or is already
/// at/above the index limit (norms only grow with translation, so one
/// norm-kill covers all higher translates).
fn weed_family_dead(w: &BigraphPair, limit: &ExactLimit) -> Option<serde_json::Value> {
    let mut k = 0usize;
    while k <= TRANSLATE_SCAN_CAP {
        let t = if k == 0 { w.clone() } else { w.translate(k).ok()? };
        if k > 0 {
            let mut normed_out = true;
            for side in [&t.gamma, &t.gamma_prime] {
                match graph_vs_limit(side, limit) {
                    Ok(LimitVerdict::Below) => {
                        normed_out = false;
                    }
                    _ => {
                        normed_out = true;
                        break;
                    }
                }
            }
            if normed_out {
                return Some(json!({
                    "test": "tail_bound",
                    "family": "all translates dead",
                    "norm_kill_from_translate": k,
                }));
            }
        }
        let v = crate::obstructions::tail_bound(&t, limit);
        if !v.failed() {
            return None; // this translate is viable; keep the weed
        }
        k += 2;
    }
    None
}

fn first_failure(verdicts: &[Verdict]) -> Option<serde_json::Value> {
    verdicts
        .iter()
        .find(|v| v.failed())
        .map(|v| json!({ "test": v.test, "witness": v.witness }))
}

/// Outcome of screening one candidate.
enum Screen {
    Keep(BigraphPair),
    Eliminated(BigraphPair, serde_json::Value),
}

fn screen_candidate(cand: BigraphPair, limit: &ExactLimit, weed_mode: bool) -> Screen {
    // certified norm check on both graphs first
    for side in 0..2 {
        let g = if side == 0 { &cand.gamma } else { &cand.gamma_prime };
        let bad = match graph_vs_limit(g, limit) {
            Ok(LimitVerdict::Below) => None,
            Ok(v) => Some(json!({ "test": "norm_limit", "verdict": format!("{:?}", v) })),
            Err(e) => Some(json!({ "test": "norm_limit", "error": e.to_string() })),
        };
        if let Some(why) = bad {
            return Screen::Eliminated(cand, why);
        }
    }
    let tests: &[TestKind] = if weed_mode { &WEED_TESTS } else { &VINE_TESTS };
    let verdicts = run_suite(
        &cand,
        tests,
        SuiteOptions { weed_mode, exhaustive: false, limit: Some(limit) },
    );
    if !suite_passes(&verdicts) {
        let why = first_failure(&verdicts).unwrap_or(json!(null));
        return Screen::Eliminated(cand, why);
    }
    if weed_mode {
        if let Some(why) = weed_family_dead(&cand, limit) {
            return Screen::Eliminated(cand, why);
        }
    }
    Screen::Keep(cand)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RunStatus {
    Complete,
    BudgetExhausted,
}

#[derive(Debug, Clone, Copy)]
pub struct OdometerBudget {
    pub max_steps: usize,
    pub max_weeds: usize,
    pub max_depth: usize,
}

impl Default for OdometerBudget {
    fn default() -> Self {
        OdometerBudget { max_steps: 10_000, max_weeds: 100_000, max_depth: 24 }
    }
}

pub struct RunResult {
    pub statement: ClassificationStatement,
    pub status: RunStatus,
    pub steps: usize,
    pub trace: Vec<TraceEvent>,
}

/// One odometer step: pops the lexicographically least weed, moves it (and
/// its surviving one-sided extensions) into the vines, and enqueues its
/// surviving two-sided extensions as new weeds.
pub fn step(
    s: &mut ClassificationStatement,
    caps: GenerationCaps,
    trace: &mut Vec<TraceEvent>,
) -> Result<(), OdometerError> {
    let key = match s.weeds.iter().next() {
        Some(k) => k.clone(),
        None => return Ok(()),
    };
    s.weeds.remove(&key);
    let weed = BigraphPair::parse_pair(&key)
        .map_err(|e| OdometerError::BadCheckpoint(format!("stored weed: {}", e)))?;

    // the weed itself becomes a vine candidate (its frontier is now final)
    let mut vine_cands = vec![weed.clone()];
    vine_cands.extend(one_sided_extensions(&weed, &s.limit, caps)?);
    // a chain extension of a chain weed is a translate of a shallower chain
    // statement and is never re-enqueued; the other supertransitivity parity
    // is a separate root statement (seed the odometer with the
    // one-deeper chain root to explore it)
    let two_sided: Vec<BigraphPair> = extend_one_depth(&weed, &s.limit, caps)?
        .into_iter()
        .filter(|cand| !(is_chain_pair(&weed) && is_chain_pair(cand)))
        .collect();

    let screened_vines: Vec<Screen> = vine_cands
        .into_par_iter()
        .map(|c| screen_candidate(c, &s.limit, false))
        .collect();
    let screened_weeds: Vec<Screen> = two_sided
        .into_par_iter()
        .map(|c| screen_candidate(c, &s.limit, true))
        .collect();

    let mut events = Vec::new();
    for sc in screened_vines {
        match sc {
            Screen::Keep(p) => {
                let k = canonical_key(&p);
                if s.vines.insert(k) {
                    events.push(TraceEvent::new("vine-added", &p));
                }
            }
            Screen::Eliminated(p, why) => {
                let mut ev = TraceEvent::new("eliminated", &p);
                ev.reason = Some(why);
                ev.data = Some(json!({ "while": "vine-screening" }));
                events.push(ev);
            }
        }
    }
    for sc in screened_weeds {
        match sc {
            Screen::Keep(p) => {
                let k = canonical_key(&p);
                if s.weeds.insert(k) {
                    let mut ev = TraceEvent::new("weed-extended", &p);
                    ev.data = Some(json!({ "from": key }));
                    events.push(ev);
                }
            }
            Screen::Eliminated(p, why) => {
                let mut ev = TraceEvent::new("eliminated", &p);
                ev.reason = Some(why);
                ev.data = Some(json!({ "while": "weed-screening" }));
                events.push(ev);
            }
        }
    }
    events.sort_by(|a, b| (&a.event, &a.pair).cmp(&(&b.event, &b.pair)));
    trace.extend(events);
    Ok(())
}

/// Repeats [`step`] until the weeds are exhausted or a budget trips. Weeds
/// at the depth cap are parked (left in the weed set, reported as budget
/// exhaustion) while the rest of the queue keeps processing, so partial
/// results stay as complete as the budget allows.
pub fn run(
    mut s: ClassificationStatement,
    budget: OdometerBudget,
    caps: GenerationCaps,
) -> Result<RunResult, OdometerError> {
    let mut trace = Vec::new();
    let mut steps = 0usize;
    let mut parked: BTreeSet<String> = BTreeSet::new();
    let status = loop {
        // pick the least weed that is still under the depth cap
        let next = s
            .weeds
            .iter()
            .find(|key| {
                BigraphPair::parse_pair(key)
                    .map(|p| p.gamma.max_depth() < budget.max_depth)
                    .unwrap_or(false)
            })
            .cloned();
        let key = match next {
            Some(k) => k,
            None => {
                break if s.weeds.is_empty() {
                    RunStatus::Complete
                } else {
                    RunStatus::BudgetExhausted
                };
            }
        };
        if steps >= budget.max_steps || s.weeds.len() + parked.len() > budget.max_weeds {
            break RunStatus::BudgetExhausted;
        }
        // park everything lexicographically before the chosen weed
        let before: Vec<String> = s.weeds.range(..key.clone()).cloned().collect();
        for b in before {
            s.weeds.remove(&b);
            parked.insert(b);
        }
        step(&mut s, caps, &mut trace)?;
        steps += 1;
    };
    s.weeds.extend(parked);
    Ok(RunResult { statement: s, status, steps, trace })
}

// ----- vine elimination -----

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TranslateVerdict {
    Eliminated { method: String, data: serde_json::Value },
    Survives { reason: String },
    Inconclusive { reason: String },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TranslateRecord {
    pub supertransitivity: usize,
    pub minpoly: Option<String>,
    pub verdict: TranslateVerdict,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VineReport {
    pub vine: String,
    pub records: Vec<TranslateRecord>,
}

#[derive(Debug, Clone, Copy)]
pub struct VineOptions {
    pub prime_bound: u64,
    pub use_dnumber: bool,
}

impl Default for VineOptions {
    fn default() -> Self {
        VineOptions { prime_bound: crate::poly::DEFAULT_PRIME_BOUND, use_dnumber: false }
    }
}

fn eliminate_translate(
    t: &BigraphPair,
    limit: Option<&ExactLimit>,
    opts: VineOptions,
) -> TranslateRecord {
    let st = t.supertransitivity();
    // norm cut against the statement's limit
    if let Some(lim) = limit {
        match crate::spectral::index_limit_test(t, lim) {
            Ok(LimitVerdict::Below) => {}
            Ok(v) => {
                return TranslateRecord {
                    supertransitivity: st,
                    minpoly: None,
                    verdict: TranslateVerdict::Eliminated {
                        method: "norm-limit".into(),
                        data: json!({ "verdict": format!("{:?}", v) }),
                    },
                };
            }
            Err(e) => {
                return TranslateRecord {
                    supertransitivity: st,
                    minpoly: None,
                    verdict: TranslateVerdict::Inconclusive { reason: e.to_string() },
                };
            }
        }
    }
    // norms of the two graphs must agree exactly
    let theta_g = AlgebraicReal::new_norm_squared(&t.gamma);
    let theta_gp = AlgebraicReal::new_norm_squared(&t.gamma_prime);
    if !theta_g.eq_algebraic(&theta_gp) {
        return TranslateRecord {
            supertransitivity: st,
            minpoly: Some(theta_g.minpoly().to_coeff_string()),
            verdict: TranslateVerdict::Eliminated {
                method: "norm-mismatch".into(),
                data: json!({
                    "gamma": theta_g.minpoly().to_coeff_string(),
                    "gamma_prime": theta_gp.minpoly().to_coeff_string(),
                }),
            },
        };
    }
    let minpoly = theta_g.minpoly().clone();
    let mp_str = minpoly.to_coeff_string();

    // every bimodule dimension is at least 1
    let dims = crate::obstructions::dimension_bound(t);
    if dims.failed() {
        return TranslateRecord {
            supertransitivity: st,
            minpoly: Some(mp_str),
            verdict: TranslateVerdict::Eliminated {
                method: "dimension".into(),
                data: dims.witness.unwrap_or(json!(null)),
            },
        };
    }

    // norms at most 2 with totally real interlacing roots are cyclotomic;
    // skip the factorization when the norm is certified above 2
    let quick = crate::spectral::norm_bounds(&t.gamma, 40);
    if quick.lo <= num_rational::BigRational::from_integer(2.into()) {
        if let Ok(lam_poly) = minimal_poly_of_norm(&t.gamma) {
            if lam_poly.is_monic() && kronecker_test(&lam_poly) {
                return TranslateRecord {
                    supertransitivity: st,
                    minpoly: Some(mp_str),
                    verdict: TranslateVerdict::Survives { reason: "kronecker".into() },
                };
            }
        }
    }
    if abelian_by_structure(&minpoly) {
        // quadratic fields and square-discriminant cubics are abelian, so
        // the cyclotomicity obstruction cannot apply
        let mut verdict = TranslateVerdict::Survives { reason: "abelian-field".into() };
        if opts.use_dnumber {
            if let Some(v) = dnumber_cut(t) {
                verdict = v;
            }
        }
        return TranslateRecord { supertransitivity: st, minpoly: Some(mp_str), verdict };
    }
    // the minimal polynomial is an extracted irreducible factor, so the
    // certificate scan can skip the irreducibility recheck
    match crate::poly::nonabelian_certificate_presumed_irreducible(&minpoly, opts.prime_bound) {
        Some(cert) => TranslateRecord {
            supertransitivity: st,
            minpoly: Some(mp_str),
            verdict: TranslateVerdict::Eliminated {
                method: "nonabelian-certificate".into(),
                data: serde_json::to_value(&cert).unwrap(),
            },
        },
        None => {
            if opts.use_dnumber {
                if let Some(v) = dnumber_cut(t) {
                    return TranslateRecord {
                        supertransitivity: st,
                        minpoly: Some(mp_str),
                        verdict: v,
                    };
                }
            }
            TranslateRecord {
                supertransitivity: st,
                minpoly: Some(mp_str),
                verdict: TranslateVerdict::Inconclusive {
                    reason: format!("no certificate below {}", opts.prime_bound),
                },
            }
        }
    }
}

/// The d-number test applied to the minimal polynomial of the global index.
fn dnumber_cut(t: &BigraphPair) -> Option<TranslateVerdict> {
    let gi = crate::spectral::global_index_exact(t).ok()?;
    if !gi.minpoly.is_monic() {
        return None;
    }
    if dnumber_test(&gi.minpoly) {
        None
    } else {
        Some(TranslateVerdict::Eliminated {
            method: "d-number".into(),
            data: json!({ "global_index_minpoly": gi.minpoly.to_coeff_string() }),
        })
    }
}

/// Analyzes every translate of a vine up to supertransitivity `n_max`.
/// Survivors are candidates only; nothing here asserts existence.
pub fn vine_elimination(
    v: &BigraphPair,
    n_max: usize,
    limit: Option<&ExactLimit>,
    opts: VineOptions,
) -> VineReport {
    let st0 = v.supertransitivity();
    let mut translates = Vec::new();
    let mut k = 0usize;
    while st0 + k <= n_max {
        if let Ok(t) = v.translate(k) {
            translates.push(t);
        }
        k += 2;
    }
    let records: Vec<TranslateRecord> = translates
        .par_iter()
        .map(|t| eliminate_translate(t, limit, opts))
        .collect();
    VineReport { vine: v.to_string_pair(), records }
}

// ----- checkpoints -----

#[derive(Debug, Serialize, Deserialize)]
struct CheckpointFile {
    version: u32,
    root: String,
    limit: String,
    steps_done: usize,
    status: Option<RunStatus>,
    vines: Vec<String>,
    weeds: Vec<String>,
}

pub fn checkpoint_to_json(s: &ClassificationStatement, steps: usize, status: Option<RunStatus>) -> String {
    let cp = CheckpointFile {
        version: 1,
        root: s.root.to_string_pair(),
        limit: s.limit_expr.clone(),
        steps_done: steps,
        status,
        vines: s.vines.iter().cloned().collect(),
        weeds: s.weeds.iter().cloned().collect(),
    };
    serde_json::to_string_pretty(&cp).unwrap()
}

pub fn checkpoint_from_json(text: &str) -> Result<(ClassificationStatement, usize), OdometerError> {
    let cp: CheckpointFile =
        serde_json::from_str(text).map_err(|e| OdometerError::BadCheckpoint(e.to_string()))?;
    if cp.version != 1 {
        return Err(OdometerError::BadCheckpoint(format!("unknown version {}", cp.version)));
    }
    let root = BigraphPair::parse_pair(&cp.root)
        .map_err(|e| OdometerError::BadCheckpoint(e.to_string()))?;
    let limit =
        ExactLimit::parse(&cp.limit).ok_or_else(|| OdometerError::BadLimit(cp.limit.clone()))?;
    Ok((
        ClassificationStatement {
            root,
            limit_expr: cp.limit,
            limit,
            vines: cp.vines.into_iter().collect(),
            weeds: cp.weeds.into_iter().collect(),
        },
        cp.steps_done,
    ))
}


// ----- vine relevance and family comparison -----

/// Smallest translate (up to `cap`, even steps) whose two graphs both sit
/// certified strictly above index 4 and strictly below the limit. `None`
/// when no translate reaches the window; such a vine is vacuous for a
/// classification over indexes in `(4, limit)`.
pub fn first_relevant_translate(
    p: &BigraphPair,
    limit: &ExactLimit,
    cap: usize,
) -> Option<usize> {
    let four = ExactLimit::integer(4);
    let mut k = 0usize;
    while k <= cap {
        let t = if k == 0 { p.clone() } else { p.translate(k).ok()? };
        let above4 = [&t.gamma, &t.gamma_prime].iter().all(|g| {
            matches!(graph_vs_limit(g, &four), Ok(LimitVerdict::Above))
        });
        if above4 {
            let below = [&t.gamma, &t.gamma_prime]
                .iter()
                .all(|g| matches!(graph_vs_limit(g, limit), Ok(LimitVerdict::Below)));
            return if below { Some(k) } else { None };
        }
        k += 2;
    }
    None
}

/// Canonical key of the underlying graph shapes with all duality data reset
/// to the identity; equal keys mean isomorphic graph pairs regardless of red
/// tags.
pub fn shape_key(p: &BigraphPair) -> String {
    let strip = |g: &Bigraph| -> Bigraph {
        let duals: Vec<Vec<usize>> = (0..=g.max_depth() / 2)
            .map(|k| (0..g.width(2 * k)).collect())
            .collect();
        Bigraph::new(g.blocks().to_vec(), duals).expect("identity duals are involutions")
    };
    let stripped = BigraphPair::new(strip(&p.gamma), strip(&p.gamma_prime))
        .expect("stripping duals keeps the pair valid");
    canonical_key(&stripped)
}

/// True when `p` and `q` agree after aligning supertransitivities by
/// translation; `shapes_only` compares underlying graphs, ignoring duals.
pub fn same_translation_family(p: &BigraphPair, q: &BigraphPair, shapes_only: bool) -> bool {
    let sp = p.supertransitivity();
    let sq = q.supertransitivity();
    if sp.abs_diff(sq) % 2 != 0 {
        return false;
    }
    let (a, b) = if sp <= sq {
        match p.translate(sq - sp) {
            Ok(t) => (t, q.clone()),
            Err(_) => return false,
        }
    } else {
        match q.translate(sp - sq) {
            Ok(t) => (p.clone(), t),
            Err(_) => return false,
        }
    };
    if shapes_only {
        shape_key(&a) == shape_key(&b)
    } else {
        canonical_key(&a) == canonical_key(&b)
    }
}
