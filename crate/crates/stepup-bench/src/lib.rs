//! Shared input builders for the criterion benchmarks.

use stepup_core::{ColorTable, Color, EdgeSet};

/// Deterministic pseudo-random ascending tuple of `len` distinct vertices
/// below 2^bits, from a splitmix-style walk so benches need no rng crate.
pub fn tuple(len: usize, bits: u32, salt: u64) -> Vec<u64> {
    let bound = 1u64 << bits;
    let mut out = std::collections::BTreeSet::new();
    let mut x = salt.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(1);
    while out.len() < len {
        x ^= x >> 30;
        x = x.wrapping_mul(0xBF58_476D_1CE4_E5B9);
        x ^= x >> 27;
        x = x.wrapping_mul(0x94D0_49BB_1331_11EB);
        x ^= x >> 31;
        out.insert(x % bound);
    }
    out.into_iter().collect()
}

/// Base coloring on [0, n) with every third triple red; valid enough to
/// exercise the lifted color path.
pub fn striped_base(n: u64) -> ColorTable {
    let mut t = ColorTable::all_blue(3, n).expect("small ground");
    let slots = stepup_core::combin::binomial(n, 3);
    for rank in (0..slots).step_by(3) {
        t.set_rank(rank, Color::Red);
    }
    t
}

/// (k-1)-uniform edge set on [0, n) holding every other possible edge.
pub fn striped_edges(k: usize, n: u64) -> EdgeSet {
    let mut e = EdgeSet::empty(k - 1, n).expect("small ground");
    let slots = stepup_core::combin::binomial(n, k as u64 - 1);
    for rank in (0..slots).step_by(2) {
        e.set_rank(rank, true);
    }
    e
}
