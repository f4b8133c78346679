//! Randomized local search for the small base objects the lifts consume:
//! 3-uniform colorings with bounded red density and no blue clique, and
//! clique-free (k-1)-graphs with small k-independence.
//!
//! Nothing stochastic is ever trusted: every witness that leaves this module
//! has been re-checked by the exhaustive verifiers. Searches are seeded and
//! bit-reproducible; restarts are independent and the first success in seed
//! order wins regardless of how the parallel schedule interleaved them.

use crate::combin::{all_msubsets, binomial, for_each_ksubset};
use crate::coloring::{verify_base_phi, ColorTable, Color, ColoringError};
use crate::hypergraph::{alpha_s, find_clique, AlphaRequest, AlphaResult, EdgeSet, Hypergraph, HypergraphError, MAX_EXACT_ALPHA_GROUND};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("coloring search needs ground size >= 4, got {0}")]
    GroundTooSmall(u64),
    #[error("blue-clique bound must be at least 4, got {0}")]
    CliqueBoundTooSmall(usize),
    #[error("hypergraph search needs lift target k >= 3, got {0}")]
    TargetTooSmall(usize),
    #[error("hypergraph search needs ground size >= k-1 = {need}, got {got}")]
    GroundBelowUniformity { got: u64, need: usize },
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
}

/// Step budget for a seeded search run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    /// Total local-search steps across all restarts.
    pub steps: u64,
    /// Steps per restart before reseeding from scratch.
    pub restart_len: u64,
    pub seed: u64,
}

impl SearchBudget {
    pub fn new(steps: u64, seed: u64) -> Self {
        SearchBudget {
            steps,
            restart_len: 5_000,
            seed,
        }
    }

    fn restarts(&self) -> u64 {
        self.steps.div_ceil(self.restart_len.max(1)).max(1)
    }

    fn restart_seed(&self, r: u64) -> u64 {
        self.seed.wrapping_add(r).wrapping_mul(0x9E37_79B9_7F4A_7C15)
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget::new(200_000, 1)
    }
}

/// One line of the search log: where a restart stood after a given step.
/// Records are emitted on score improvements and at restart end.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LogRecord {
    pub seed: u64,
    pub step: u64,
    pub score: u64,
}

impl std::fmt::Display for LogRecord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "seed={} step={} score={}", self.seed, self.step, self.score)
    }
}

pub fn log_text(log: &[LogRecord]) -> String {
    let mut out = String::new();
    for r in log {
        out.push_str(&r.to_string());
        out.push('\n');
    }
    out
}

/// Outcome of the coloring search. `phi` is present only if it passed the
/// exhaustive validity scan. `exhausted_space` means all colorings of the
/// ground were enumerated and none passes, which at N <= 6 is a proof of
/// nonexistence rather than a budget statement.
#[derive(Debug, Clone)]
pub struct ColoringSearch {
    pub phi: Option<ColorTable>,
    pub best_score: u64,
    pub exhausted_space: bool,
    pub log: Vec<LogRecord>,
}

/// Violating 4-sets plus blue n-cliques, the quantity driven to zero.
fn phi_score(t: &ColorTable, n: usize) -> u64 {
    let v = t.ground_size();
    let mut probe = [0u64; 3];
    let mut score = 0u64;
    for_each_ksubset(v, 4, |s| {
        let mut reds = 0u32;
        all_msubsets(s, &mut probe, &mut |tri| {
            if t.color_unchecked(tri) == Color::Red {
                reds += 1;
            }
            true
        });
        if reds > 2 {
            score += 1;
        }
    });
    let mut probe3 = [0u64; 3];
    for_each_ksubset(v, n, |s| {
        if all_msubsets(s, &mut probe3, &mut |tri| t.color_unchecked(tri) == Color::Blue) {
            score += 1;
        }
    });
    score
}

fn coloring_restart(v: u64, n: usize, steps: u64, seed: u64) -> (ColorTable, u64, Vec<LogRecord>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let slots = binomial(v, 3);
    let mut cur = ColorTable::all_blue(3, v).expect("small ground");
    for rank in 0..slots {
        if rng.random_bool(0.3) {
            cur.set_rank(rank, Color::Red);
        }
    }
    let mut cur_score = phi_score(&cur, n);
    let mut best = cur.clone();
    let mut best_score = cur_score;
    let mut log = vec![LogRecord { seed, step: 0, score: cur_score }];
    for step in 1..=steps {
        if best_score == 0 {
            break;
        }
        let rank = rng.random_range(0..slots);
        let flipped = if cur.color_rank(rank) == Color::Red { Color::Blue } else { Color::Red };
        cur.set_rank(rank, flipped);
        let score = phi_score(&cur, n);
        // Downhill and sideways moves are kept; uphill only as a rare kick.
        if score <= cur_score || rng.random_bool(0.02) {
            cur_score = score;
            if score < best_score {
                best = cur.clone();
                best_score = score;
                log.push(LogRecord { seed, step, score });
            }
        } else {
            let restored = if flipped == Color::Red { Color::Blue } else { Color::Red };
            cur.set_rank(rank, restored);
        }
    }
    (best, best_score, log)
}

/// Every coloring of the ground, smallest red set first. Returns a passing
/// table or None once the whole space is ruled out.
fn coloring_sweep(v: u64, n: usize) -> Option<ColorTable> {
    let slots = binomial(v, 3);
    debug_assert!(slots <= 20, "sweep is for tiny grounds only");
    for mask in 0u64..1 << slots {
        let mut t = ColorTable::all_blue(3, v).expect("small ground");
        for rank in 0..slots {
            if mask >> rank & 1 == 1 {
                t.set_rank(rank, Color::Red);
            }
        }
        if phi_score(&t, n) == 0 {
            return Some(t);
        }
    }
    None
}

/// Searches for a 3-uniform base coloring on [0, v) with at most 2 red
/// triples in every 4-set and no blue n-clique. Restarts run in parallel;
/// the reported result is the one the same seeds produce sequentially. If
/// the budget runs out and the ground is small enough (C(v,3) <= 20 slots),
/// the full space is enumerated so failure is definitive.
pub fn search_base_coloring(v: u64, n: usize, budget: SearchBudget) -> Result<ColoringSearch, SearchError> {
    if v < 4 {
        return Err(SearchError::GroundTooSmall(v));
    }
    if n < 4 {
        return Err(SearchError::CliqueBoundTooSmall(n));
    }
    // Guard the score scans, not just the table.
    ColorTable::all_blue(3, v)?;
    let restarts = budget.restarts();
    let runs: Vec<(ColorTable, u64, Vec<LogRecord>)> = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let steps = budget.restart_len.min(budget.steps - (r * budget.restart_len).min(budget.steps));
            coloring_restart(v, n, steps, budget.restart_seed(r))
        })
        .collect();
    let mut log = Vec::new();
    let mut best_score = u64::MAX;
    let mut winner: Option<ColorTable> = None;
    for (table, score, run_log) in runs {
        log.extend(run_log);
        if score < best_score {
            best_score = score;
            if score == 0 && winner.is_none() {
                winner = Some(table);
            }
        }
    }
    if let Some(phi) = winner {
        let report = verify_base_phi(&phi, n)?;
        assert!(report.passed(), "zero-score coloring failed re-verification: {report:?}");
        return Ok(ColoringSearch { phi: Some(phi), best_score: 0, exhausted_space: false, log });
    }
    if binomial(v, 3) <= 20 {
        if let Some(phi) = coloring_sweep(v, n) {
            let report = verify_base_phi(&phi, n)?;
            assert!(report.passed(), "swept coloring failed re-verification: {report:?}");
            return Ok(ColoringSearch { phi: Some(phi), best_score: 0, exhausted_space: false, log });
        }
        return Ok(ColoringSearch { phi: None, best_score, exhausted_space: true, log });
    }
    Ok(ColoringSearch { phi: None, best_score, exhausted_space: false, log })
}

/// Outcome of the hypergraph search: the best clique-free graph found and
/// its exact k-independence. The empty graph is always feasible, so there is
/// always a witness; only its quality depends on the budget.
#[derive(Debug, Clone)]
pub struct HypergraphSearch {
    pub graph: EdgeSet,
    pub alpha: AlphaResult,
    pub log: Vec<LogRecord>,
}

/// True if switching on `edge` closes a complete (k+1)-clique. Only cliques
/// through the new edge need checking; `g` already holds the edge.
fn edge_closes_clique(g: &EdgeSet, edge: &[u64], k: usize) -> bool {
    let v = g.ground_size();
    let outside: Vec<u64> = (0..v).filter(|x| !edge.contains(x)).collect();
    let mut probe = vec![0u64; k - 1];
    let mut set = vec![0u64; k + 1];
    for (i, &x) in outside.iter().enumerate() {
        for &y in &outside[i + 1..] {
            set.clear();
            set.extend_from_slice(edge);
            set.push(x);
            set.push(y);
            set.sort_unstable();
            let complete = all_msubsets(&set, &mut probe, &mut |e| g.contains_unchecked(e));
            if complete {
                return true;
            }
        }
    }
    false
}

fn exact_alpha(g: &EdgeSet, k: usize) -> AlphaResult {
    let h = Hypergraph::Explicit(g.clone());
    alpha_s(&h, k, AlphaRequest::Exact).expect("ground size guarded at entry")
}

fn hypergraph_restart(v: u64, k: usize, steps: u64, seed: u64) -> (EdgeSet, usize, Vec<LogRecord>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let slots = binomial(v, k as u64 - 1);
    let mut cur = EdgeSet::empty(k - 1, v).expect("small ground");
    // Greedy random fill: keep any edge that keeps the graph clique-free.
    let mut ranks: Vec<u64> = (0..slots).collect();
    ranks.shuffle(&mut rng);
    for &rank in &ranks {
        cur.set_rank(rank, true);
        let edge = crate::combin::colex_unrank(rank, k - 1);
        if edge_closes_clique(&cur, &edge, k) {
            cur.set_rank(rank, false);
        }
    }
    let mut cur_alpha = exact_alpha(&cur, k).value;
    let mut best = cur.clone();
    let mut best_alpha = cur_alpha;
    let mut log = vec![LogRecord { seed, step: 0, score: cur_alpha as u64 }];
    for step in 1..=steps {
        let rank = rng.random_range(0..slots);
        let adding = !cur.contains_rank(rank);
        cur.set_rank(rank, adding);
        if adding {
            let edge = crate::combin::colex_unrank(rank, k - 1);
            if edge_closes_clique(&cur, &edge, k) {
                cur.set_rank(rank, false);
                continue;
            }
        }
        let alpha = exact_alpha(&cur, k).value;
        if alpha <= cur_alpha || rng.random_bool(0.02) {
            cur_alpha = alpha;
            if alpha < best_alpha {
                best = cur.clone();
                best_alpha = alpha;
                log.push(LogRecord { seed, step, score: alpha as u64 });
            }
        } else {
            cur.set_rank(rank, !adding);
        }
    }
    (best, best_alpha, log)
}

/// Searches for a (k-1)-uniform graph on [0, v) with no complete clique on
/// k+1 vertices, minimizing the exact k-independence number. The returned
/// graph is re-verified: clique-freeness by the exhaustive clique search and
/// the reported alpha by the exact solver.
pub fn search_base_hypergraph(v: u64, k: usize, budget: SearchBudget) -> Result<HypergraphSearch, SearchError> {
    if k < 3 {
        return Err(SearchError::TargetTooSmall(k));
    }
    if v < k as u64 - 1 {
        return Err(SearchError::GroundBelowUniformity { got: v, need: k - 1 });
    }
    if v > MAX_EXACT_ALPHA_GROUND {
        return Err(SearchError::Hypergraph(HypergraphError::ExactTooLarge {
            got: v,
            limit: MAX_EXACT_ALPHA_GROUND,
        }));
    }
    EdgeSet::empty(k - 1, v)?;
    let restarts = budget.restarts();
    let runs: Vec<(EdgeSet, usize, Vec<LogRecord>)> = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let steps = budget.restart_len.min(budget.steps - (r * budget.restart_len).min(budget.steps));
            hypergraph_restart(v, k, steps, budget.restart_seed(r))
        })
        .collect();
    let mut log = Vec::new();
    let mut best: Option<(EdgeSet, usize)> = None;
    for (graph, alpha, run_log) in runs {
        log.extend(run_log);
        let better = match &best {
            None => true,
            Some((_, a)) => alpha < *a,
        };
        if better {
            best = Some((graph, alpha));
        }
    }
    let (graph, _) = best.expect("at least one restart ran");
    let h = Hypergraph::Explicit(graph.clone());
    assert!(
        find_clique(&h, k + 1).is_none(),
        "search produced a graph with a complete clique on {} vertices",
        k + 1
    );
    let alpha = exact_alpha(&graph, k);
    Ok(HypergraphSearch { graph, alpha, log })
}
