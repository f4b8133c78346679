//! k-uniform hypergraphs: explicit colex-indexed edge sets, lift-backed
//! membership, clique search, and s-clique-free independence numbers.

use crate::combin::{binomial, colex_rank, colex_unrank, for_each_ksubset, Bits};
use crate::files::{content_lines, parse_header, parse_subset_line, ParseError};
use crate::lift::LiftRule;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

/// Explicit tables above this many subset slots are refused; rule-backed
/// membership stays lazy instead.
pub const MAX_EXPLICIT_BITS: u64 = 1 << 28;

/// Exact independence search is limited to mask-sized grounds.
pub const MAX_EXACT_ALPHA_GROUND: u64 = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HypergraphError {
    #[error("edge {edge:?} is not a strictly increasing {k}-subset of [0, {v})")]
    BadEdge { edge: Vec<u64>, k: usize, v: u64 },
    #[error("explicit table needs {needed} slots, over the {limit} limit")]
    ExplicitTooLarge { needed: u64, limit: u64 },
    #[error("exact independence search needs ground <= {limit}, got {got} (pass forced to override)")]
    ExactTooLarge { got: u64, limit: u64 },
    #[error("uniformity must be at least 2, got {0}")]
    BadUniformity(usize),
}

/// Explicit k-uniform edge set over [0, v), one bit per colex rank.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EdgeSet {
    k: usize,
    v: u64,
    bits: Bits,
}

impl EdgeSet {
    pub fn empty(k: usize, v: u64) -> Result<Self, HypergraphError> {
        if k < 2 {
            return Err(HypergraphError::BadUniformity(k));
        }
        let slots = binomial(v, k as u64);
        if slots > MAX_EXPLICIT_BITS {
            return Err(HypergraphError::ExplicitTooLarge {
                needed: slots,
                limit: MAX_EXPLICIT_BITS,
            });
        }
        Ok(EdgeSet { k, v, bits: Bits::new(slots) })
    }

    pub fn complete(k: usize, v: u64) -> Result<Self, HypergraphError> {
        let mut e = EdgeSet::empty(k, v)?;
        for rank in 0..e.bits.len() {
            e.bits.set(rank, true);
        }
        Ok(e)
    }

    pub fn from_edges<'a, I: IntoIterator<Item = &'a [u64]>>(k: usize, v: u64, edges: I) -> Result<Self, HypergraphError> {
        let mut e = EdgeSet::empty(k, v)?;
        for edge in edges {
            e.set_edge(edge, true)?;
        }
        Ok(e)
    }

    pub fn uniformity(&self) -> usize {
        self.k
    }

    pub fn ground_size(&self) -> u64 {
        self.v
    }

    pub fn edge_count(&self) -> u64 {
        self.bits.count_ones()
    }

    fn check_edge(&self, edge: &[u64]) -> Result<(), HypergraphError> {
        let ok = edge.len() == self.k
            && edge.windows(2).all(|w| w[0] < w[1])
            && edge.last().is_none_or(|&x| x < self.v);
        if ok {
            Ok(())
        } else {
            Err(HypergraphError::BadEdge {
                edge: edge.to_vec(),
                k: self.k,
                v: self.v,
            })
        }
    }

    pub fn contains_edge(&self, edge: &[u64]) -> Result<bool, HypergraphError> {
        self.check_edge(edge)?;
        Ok(self.contains_unchecked(edge))
    }

    #[inline]
    pub fn contains_unchecked(&self, edge: &[u64]) -> bool {
        debug_assert!(self.check_edge(edge).is_ok());
        self.bits.get(colex_rank(edge))
    }

    #[inline]
    pub fn contains_rank(&self, rank: u64) -> bool {
        self.bits.get(rank)
    }

    pub fn set_edge(&mut self, edge: &[u64], present: bool) -> Result<(), HypergraphError> {
        self.check_edge(edge)?;
        self.bits.set(colex_rank(edge), present);
        Ok(())
    }

    pub fn set_rank(&mut self, rank: u64, present: bool) {
        self.bits.set(rank, present);
    }

    /// Edges in ascending colex order.
    pub fn edges(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        self.bits.ones().map(move |rank| colex_unrank(rank, self.k))
    }

    /// Canonical text form: `hypergraph k v` then one edge per line.
    pub fn write(&self) -> String {
        let mut out = format!("hypergraph {} {}\n", self.k, self.v);
        for edge in self.edges() {
            let words: Vec<String> = edge.iter().map(u64::to_string).collect();
            out.push_str(&words.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut lines = content_lines(text);
        let (line_no, header) = lines.next().ok_or_else(|| ParseError::new(1, "empty input"))?;
        let (k, v) = parse_header(line_no, header, "hypergraph")?;
        let mut es = EdgeSet::empty(k, v).map_err(|e| ParseError::new(line_no, e.to_string()))?;
        for (no, line) in lines {
            let edge = parse_subset_line(no, line, k, v)?;
            es.set_edge(&edge, true).map_err(|e| ParseError::new(no, e.to_string()))?;
        }
        Ok(es)
    }
}

/// Membership-queryable hypergraph: explicit table or lazy lift rule.
/// Both backings answer identically wherever both exist.
#[derive(Clone, Debug)]
pub enum Hypergraph {
    Explicit(EdgeSet),
    Lifted(LiftRule),
}

impl Hypergraph {
    pub fn uniformity(&self) -> usize {
        match self {
            Hypergraph::Explicit(e) => e.uniformity(),
            Hypergraph::Lifted(r) => r.target_uniformity(),
        }
    }

    pub fn ground_size(&self) -> u64 {
        match self {
            Hypergraph::Explicit(e) => e.ground_size(),
            Hypergraph::Lifted(r) => r.target_ground(),
        }
    }

    pub fn contains(&self, edge: &[u64]) -> Result<bool, HypergraphError> {
        match self {
            Hypergraph::Explicit(e) => e.contains_edge(edge),
            Hypergraph::Lifted(r) => r.contains(edge).map_err(|_| HypergraphError::BadEdge {
                edge: edge.to_vec(),
                k: self.uniformity(),
                v: self.ground_size(),
            }),
        }
    }

    #[inline]
    pub fn contains_unchecked(&self, edge: &[u64]) -> bool {
        match self {
            Hypergraph::Explicit(e) => e.contains_unchecked(edge),
            Hypergraph::Lifted(r) => r.contains_unchecked(edge),
        }
    }

    /// Non-edges as a lazy view; never materialized.
    pub fn complement(&self) -> Complement<'_> {
        Complement { inner: self }
    }
}

pub struct Complement<'a> {
    inner: &'a Hypergraph,
}

impl Complement<'_> {
    pub fn contains(&self, edge: &[u64]) -> Result<bool, HypergraphError> {
        Ok(!self.inner.contains(edge)?)
    }
}

/// Searches for a complete t-clique, scanning first vertices in ascending
/// order (parallel over roots, leftmost hit wins). Returns the first clique
/// in depth-first lexicographic order, or None after exhausting the window.
pub fn find_clique(h: &Hypergraph, t: usize) -> Option<Vec<u64>> {
    find_clique_in(h, t, 0, h.ground_size())
}

/// [`find_clique`] restricted to vertices in [lo, hi).
pub fn find_clique_in(h: &Hypergraph, t: usize, lo: u64, hi: u64) -> Option<Vec<u64>> {
    let hi = hi.min(h.ground_size());
    if t == 0 {
        return Some(Vec::new());
    }
    if lo >= hi || (hi - lo) < t as u64 {
        return None;
    }
    (lo..=hi - t as u64).into_par_iter().find_map_first(|root| {
        let mut cur = vec![root];
        let cand: Vec<u64> = (root + 1..hi).collect();
        extend_clique(h, t, &mut cur, &cand)
    })
}

fn extend_clique(h: &Hypergraph, t: usize, cur: &mut Vec<u64>, cand: &[u64]) -> Option<Vec<u64>> {
    if cur.len() == t {
        return Some(cur.clone());
    }
    let k = h.uniformity();
    for (i, &u) in cand.iter().enumerate() {
        if cur.len() + (cand.len() - i) < t {
            return None;
        }
        if joins_clique(h, k, cur, u) {
            cur.push(u);
            // Only candidates past u keep the ascending discipline; deeper
            // levels re-test against the grown prefix.
            if let Some(hit) = extend_clique(h, t, cur, &cand[i + 1..]) {
                return Some(hit);
            }
            cur.pop();
        }
    }
    None
}

/// True when every k-subset of `cur + {u}` that contains `u` is an edge.
#[inline]
fn joins_clique(h: &Hypergraph, k: usize, cur: &[u64], u: u64) -> bool {
    if cur.len() + 1 < k {
        return true;
    }
    let mut probe = vec![0u64; k];
    probe[k - 1] = u;
    for_each_subset_holds(cur, k - 1, &mut probe, &mut |edge| h.contains_unchecked(edge))
}

/// Fills probe[..m] with each m-subset of `pool` (ascending) and tests `f`;
/// probe[m..] is fixed payload already larger than everything in `pool`.
fn for_each_subset_holds(pool: &[u64], m: usize, probe: &mut [u64], f: &mut impl FnMut(&[u64]) -> bool) -> bool {
    fn rec(pool: &[u64], m: usize, from: usize, depth: usize, probe: &mut [u64], f: &mut impl FnMut(&[u64]) -> bool) -> bool {
        if depth == m {
            return f(probe);
        }
        // Leave room for the remaining m - depth - 1 picks.
        for i in from..=pool.len() - (m - depth) {
            probe[depth] = pool[i];
            if !rec(pool, m, i + 1, depth + 1, probe, f) {
                return false;
            }
        }
        true
    }
    if m > pool.len() {
        return true;
    }
    rec(pool, m, 0, 0, probe, f)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlphaRequest {
    /// Branch-and-bound over bitmasks; refused above [`MAX_EXACT_ALPHA_GROUND`].
    Exact,
    /// Exact search regardless of ground size; may be infeasibly slow.
    ExactForced,
    /// Greedy passes over seeded vertex orders; a lower bound, not a proof.
    Heuristic { seed: u64, restarts: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaResult {
    pub value: usize,
    pub witness: Vec<u64>,
    /// What the number means: proven maximum or best found.
    pub exact: bool,
}

/// Largest subset of the ground containing no complete s-clique of `h`.
pub fn alpha_s(h: &Hypergraph, s: usize, mode: AlphaRequest) -> Result<AlphaResult, HypergraphError> {
    let v = h.ground_size();
    match mode {
        AlphaRequest::Exact if v > MAX_EXACT_ALPHA_GROUND => Err(HypergraphError::ExactTooLarge {
            got: v,
            limit: MAX_EXACT_ALPHA_GROUND,
        }),
        AlphaRequest::Exact | AlphaRequest::ExactForced => Ok(alpha_exact(h, s)),
        AlphaRequest::Heuristic { seed, restarts } => Ok(alpha_greedy(h, s, seed, restarts)),
    }
}

fn alpha_exact(h: &Hypergraph, s: usize) -> AlphaResult {
    let v = h.ground_size();
    if s == 0 {
        return AlphaResult { value: 0, witness: Vec::new(), exact: true };
    }
    // Every s-clique, as a bitmask, grouped by its top vertex; vertices are
    // added in ascending order so each new vertex closes only its own group.
    let mut cliques_by_top: Vec<Vec<u64>> = vec![Vec::new(); v as usize];
    if (s as u64) <= v {
        for_each_ksubset(v, s, |sub| {
            if is_complete(h, sub) {
                let mask = sub.iter().fold(0u64, |m, &x| m | 1 << x);
                let top = *sub.last().expect("s >= 1") as usize;
                cliques_by_top[top].push(mask & !(1 << top));
            }
        });
    }
    let mut best: Vec<u64> = Vec::new();
    let mut cur: Vec<u64> = Vec::new();
    fn dfs(v: u64, next: u64, mask: u64, cliques_by_top: &[Vec<u64>], cur: &mut Vec<u64>, best: &mut Vec<u64>) {
        if cur.len() > best.len() {
            *best = cur.clone();
        }
        if next >= v || cur.len() + (v - next) as usize <= best.len() {
            return;
        }
        let blocked = cliques_by_top[next as usize].iter().any(|&m| m & mask == m);
        if !blocked {
            cur.push(next);
            dfs(v, next + 1, mask | 1 << next, cliques_by_top, cur, best);
            cur.pop();
        }
        dfs(v, next + 1, mask, cliques_by_top, cur, best);
    }
    dfs(v, 0, 0, &cliques_by_top, &mut cur, &mut best);
    AlphaResult { value: best.len(), witness: best, exact: true }
}

fn alpha_greedy(h: &Hypergraph, s: usize, seed: u64, restarts: u32) -> AlphaResult {
    let v = h.ground_size();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<u64> = (0..v).collect();
    let mut best: Vec<u64> = Vec::new();
    for round in 0..restarts.max(1) {
        if round > 0 {
            order.shuffle(&mut rng);
        }
        let mut picked: Vec<u64> = Vec::new();
        for &u in &order {
            picked.push(u);
            picked.sort_unstable();
            let pos = picked.iter().position(|&x| x == u).expect("just inserted");
            if completes_s_clique(h, s, &picked, pos) {
                picked.remove(pos);
            }
        }
        if picked.len() > best.len() {
            best = picked;
        }
    }
    best.sort_unstable();
    AlphaResult { value: best.len(), witness: best, exact: false }
}

fn is_complete(h: &Hypergraph, set: &[u64]) -> bool {
    let k = h.uniformity();
    if set.len() < k {
        return true;
    }
    let mut probe = vec![0u64; k];
    for_each_subset_in(set, k, &mut probe, &mut |e| h.contains_unchecked(e))
}

/// True when some s-subset of `set` through set[pos] is a complete clique.
fn completes_s_clique(h: &Hypergraph, s: usize, set: &[u64], pos: usize) -> bool {
    if set.len() < s || s == 0 {
        return false;
    }
    let u = set[pos];
    let rest: Vec<u64> = set.iter().copied().filter(|&x| x != u).collect();
    let mut probe = vec![0u64; s];
    !for_each_subset_in_with(&rest, s - 1, u, &mut probe, &mut |sub| !is_complete(h, sub))
}

fn for_each_subset_in(set: &[u64], m: usize, probe: &mut [u64], f: &mut impl FnMut(&[u64]) -> bool) -> bool {
    fn rec(set: &[u64], m: usize, from: usize, depth: usize, probe: &mut [u64], f: &mut impl FnMut(&[u64]) -> bool) -> bool {
        if depth == m {
            return f(&probe[..m]);
        }
        for i in from..=set.len() - (m - depth) {
            probe[depth] = set[i];
            if !rec(set, m, i + 1, depth + 1, probe, f) {
                return false;
            }
        }
        true
    }
    if m > set.len() {
        return true;
    }
    rec(set, m, 0, 0, probe, f)
}

/// Enumerates (m)-subsets of `set` merged with the single vertex `u`, sorted.
fn for_each_subset_in_with(set: &[u64], m: usize, u: u64, probe: &mut [u64], f: &mut impl FnMut(&[u64]) -> bool) -> bool {
    fn rec(
        set: &[u64],
        m: usize,
        u: u64,
        from: usize,
        depth: usize,
        probe: &mut [u64],
        f: &mut impl FnMut(&[u64]) -> bool,
    ) -> bool {
        if depth == m {
            let mut merged: Vec<u64> = probe[..m].to_vec();
            merged.push(u);
            merged.sort_unstable();
            return f(&merged);
        }
        for i in from..=set.len() - (m - depth) {
            probe[depth] = set[i];
            if !rec(set, m, u, i + 1, depth + 1, probe, f) {
                return false;
            }
        }
        true
    }
    if m > set.len() {
        return true;
    }
    rec(set, m, u, 0, 0, probe, f)
}
