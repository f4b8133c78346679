//! Naive reference implementations and instance generators shared by the
//! integration suites. Everything here favors obviousness over speed, so a
//! disagreement with the library points at the library.

// Each integration target compiles its own copy and uses a subset.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stepup_core::combin::for_each_ksubset;
use stepup_core::{consecutive_deltas, extrema_count, Color, ColorTable, EdgeSet, Hypergraph, TwoColoring};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// All m-subsets of `set`, materialized.
pub fn ksubsets(set: &[u64], m: usize) -> Vec<Vec<u64>> {
    fn rec(set: &[u64], m: usize, from: usize, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in from..set.len() {
            cur.push(set[i]);
            rec(set, m, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(set, m, 0, &mut Vec::new(), &mut out);
    out.retain(|s| s.len() == m);
    out
}

pub fn is_clique(h: &Hypergraph, set: &[u64]) -> bool {
    ksubsets(set, h.uniformity())
        .iter()
        .all(|e| h.contains_unchecked(e))
}

pub fn naive_find_clique(h: &Hypergraph, t: usize) -> Option<Vec<u64>> {
    let v = h.ground_size();
    if t as u64 > v {
        return None;
    }
    if t < h.uniformity() {
        return Some((0..t as u64).collect());
    }
    let mut found = None;
    for_each_ksubset(v, t, |s| {
        if found.is_none() && is_clique(h, s) {
            found = Some(s.to_vec());
        }
    });
    found
}

/// Largest subset with no complete s-clique, by scanning all 2^v subsets.
pub fn naive_alpha(h: &Hypergraph, s: usize) -> usize {
    let v = h.ground_size() as u32;
    assert!(v <= 16, "mask scan oracle only works on tiny grounds");
    let mut best = 0usize;
    for mask in 0u32..1 << v {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let set: Vec<u64> = (0..v as u64).filter(|&x| mask >> x & 1 == 1).collect();
        let has_clique = ksubsets(&set, s).iter().any(|c| is_clique(h, c));
        if !has_clique {
            best = size;
        }
    }
    best
}

pub fn naive_max_red(chi: &TwoColoring, p: usize) -> u64 {
    let v = chi.ground_size();
    let k = chi.uniformity();
    let mut best = 0u64;
    for_each_ksubset(v, p, |s| {
        let reds = ksubsets(s, k)
            .iter()
            .filter(|e| chi.color_unchecked(e) == Color::Red)
            .count() as u64;
        best = best.max(reds);
    });
    best
}

/// Size of the largest subset all of whose k-subsets have `color`.
pub fn naive_max_mono(chi: &TwoColoring, color: Color) -> usize {
    let v = chi.ground_size() as u32;
    assert!(v <= 16, "mask scan oracle only works on tiny grounds");
    let k = chi.uniformity();
    let mut best = 0usize;
    for mask in 0u32..1 << v {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let set: Vec<u64> = (0..v as u64).filter(|&x| mask >> x & 1 == 1).collect();
        if ksubsets(&set, k).iter().all(|e| chi.color_unchecked(e) == color) {
            best = size;
        }
    }
    best
}

pub fn random_edges(rng: &mut ChaCha8Rng, k: usize, v: u64, density: f64) -> EdgeSet {
    let mut e = EdgeSet::empty(k, v).expect("oracle grounds are tiny");
    let slots = stepup_core::combin::binomial(v, k as u64);
    for rank in 0..slots {
        if rng.random_bool(density) {
            e.set_rank(rank, true);
        }
    }
    e
}

pub fn random_coloring(rng: &mut ChaCha8Rng, k: usize, v: u64, red_density: f64) -> ColorTable {
    let mut t = ColorTable::all_blue(k, v).expect("oracle grounds are tiny");
    let slots = stepup_core::combin::binomial(v, k as u64);
    for rank in 0..slots {
        if rng.random_bool(red_density) {
            t.set_rank(rank, Color::Red);
        }
    }
    t
}

/// Random strictly increasing tuple of `arity` vertices below 2^bits.
pub fn random_tuple(rng: &mut ChaCha8Rng, arity: usize, bits: u32) -> Vec<u64> {
    let bound = 1u64 << bits;
    assert!(arity as u64 <= bound);
    let mut picked = std::collections::BTreeSet::new();
    while picked.len() < arity {
        picked.insert(rng.random_range(0..bound));
    }
    picked.into_iter().collect()
}

/// Random tuple with at least `min_extrema` interior extrema, by retry.
pub fn tuple_with_extrema(rng: &mut ChaCha8Rng, arity: usize, bits: u32, min_extrema: usize) -> Vec<u64> {
    loop {
        let t = random_tuple(rng, arity, bits);
        let deltas = consecutive_deltas(&t).expect("tuple is sorted");
        if extrema_count(&deltas) >= min_extrema {
            return t;
        }
    }
}
