//! Binomial coefficients, colex ranking of k-subsets, and a plain bitset.
//!
//! Colex order is the canonical subset order everywhere in this crate: the
//! rank of `{c_1 < c_2 < ... < c_k}` is `sum C(c_i, i)`, so ranks are dense
//! in `[0, C(v, k))` and enumeration by rank never needs the ground size.

/// C(n, k) as u64, saturating at u64::MAX. Saturation lets size guards
/// compare against their limits without a separate overflow path; every
/// table the crate actually builds is far below the cap.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc only grows while i < k <= n/2, so an early cap is final.
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Colex rank of a strictly increasing subset. {0,...,k-1} ranks 0.
pub fn colex_rank(subset: &[u64]) -> u64 {
    let mut rank = 0u64;
    for (i, &c) in subset.iter().enumerate() {
        rank += binomial(c, i as u64 + 1);
    }
    rank
}

/// Inverse of [`colex_rank`] for subsets of size k.
pub fn colex_unrank(mut rank: u64, k: usize) -> Vec<u64> {
    let mut out = vec![0u64; k];
    for i in (1..=k as u64).rev() {
        // Largest c with C(c, i) <= rank; c >= i-1 always works since C(i-1, i) = 0.
        let mut c = i - 1;
        while binomial(c + 1, i) <= rank {
            c += 1;
        }
        rank -= binomial(c, i);
        out[i as usize - 1] = c;
    }
    out
}

/// Advances `subset` to its colex successor among k-subsets of [0, v).
/// Returns false (leaving the subset arbitrary) once the last subset is passed.
pub fn colex_next(subset: &mut [u64], v: u64) -> bool {
    let k = subset.len();
    for i in 0..k {
        let cap = if i + 1 < k { subset[i + 1] } else { v };
        if subset[i] + 1 < cap {
            subset[i] += 1;
            for (j, slot) in subset.iter_mut().enumerate().take(i) {
                *slot = j as u64;
            }
            return true;
        }
    }
    false
}

/// Calls `f` for every k-subset of [0, v) whose colex rank lies in
/// [rank_lo, rank_hi). The slice passed to `f` is strictly increasing.
pub fn for_each_ksubset_ranked<F: FnMut(&[u64])>(v: u64, k: usize, rank_lo: u64, rank_hi: u64, mut f: F) {
    if rank_lo >= rank_hi {
        return;
    }
    let mut cur = colex_unrank(rank_lo, k);
    let mut rank = rank_lo;
    loop {
        f(&cur);
        rank += 1;
        if rank == rank_hi || !colex_next(&mut cur, v) {
            return;
        }
    }
}

/// Calls `f` for every k-subset of [0, v) in colex order.
pub fn for_each_ksubset<F: FnMut(&[u64])>(v: u64, k: usize, f: F) {
    if k as u64 > v {
        return;
    }
    for_each_ksubset_ranked(v, k, 0, binomial(v, k as u64), f);
}

/// Visits every `probe.len()`-subset of `set` (assumed strictly increasing)
/// through `probe`, aborting as soon as the visitor returns false. The return
/// value is the conjunction of all visits, so `true` means "held everywhere".
pub(crate) fn all_msubsets<F: FnMut(&[u64]) -> bool>(set: &[u64], probe: &mut [u64], f: &mut F) -> bool {
    fn rec<F: FnMut(&[u64]) -> bool>(set: &[u64], from: usize, depth: usize, probe: &mut [u64], f: &mut F) -> bool {
        if depth == probe.len() {
            return f(probe);
        }
        let need = probe.len() - depth;
        let mut i = from;
        while set.len() - i >= need {
            probe[depth] = set[i];
            if !rec(set, i + 1, depth + 1, probe, f) {
                return false;
            }
            i += 1;
        }
        true
    }
    rec(set, 0, 0, probe, f)
}

/// Fixed-length bitset backing explicit edge sets and red tables.
#[derive(Clone, PartialEq, Eq)]
pub struct Bits {
    words: Vec<u64>,
    len: u64,
}

impl Bits {
    pub fn new(len: u64) -> Self {
        let words = vec![0u64; usize::try_from(len.div_ceil(64)).expect("bitset too large")];
        Bits { words, len }
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: u64) -> bool {
        debug_assert!(i < self.len);
        self.words[(i / 64) as usize] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: u64, value: bool) {
        debug_assert!(i < self.len);
        let w = &mut self.words[(i / 64) as usize];
        if value {
            *w |= 1 << (i % 64);
        } else {
            *w &= !(1 << (i % 64));
        }
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// Indices of set bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as u64;
                rest &= rest - 1;
                Some(wi as u64 * 64 + b)
            })
        })
    }
}

impl std::fmt::Debug for Bits {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Bits[{}/{}]", self.count_ones(), self.len)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_small_table() {
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(binomial(64, 5), 7_624_512);
        assert_eq!(binomial(4, 7), 0);
    }

    #[test]
    fn colex_rank_examples() {
        assert_eq!(colex_rank(&[0, 1, 2]), 0);
        assert_eq!(colex_rank(&[1, 3, 4]), 8);
        assert_eq!(colex_unrank(8, 3), vec![1, 3, 4]);
    }

    #[test]
    fn colex_enumeration_is_rank_order() {
        let v = 7;
        let k = 3;
        let mut seen = Vec::new();
        for_each_ksubset(v, k, |s| seen.push(s.to_vec()));
        assert_eq!(seen.len() as u64, binomial(v, k as u64));
        for (rank, s) in seen.iter().enumerate() {
            assert_eq!(colex_rank(s), rank as u64);
            assert_eq!(colex_unrank(rank as u64, k), *s);
        }
    }

    #[test]
    fn ranked_range_matches_full_enumeration() {
        let mut full = Vec::new();
        for_each_ksubset(9, 4, |s| full.push(s.to_vec()));
        let mut split = Vec::new();
        for_each_ksubset_ranked(9, 4, 0, 50, |s| split.push(s.to_vec()));
        for_each_ksubset_ranked(9, 4, 50, binomial(9, 4), |s| split.push(s.to_vec()));
        assert_eq!(full, split);
    }

    #[test]
    fn msubset_visits_and_aborts() {
        let set: Vec<u64> = vec![2, 3, 5, 7, 11];
        let mut probe = [0u64; 3];
        let mut seen = Vec::new();
        assert!(all_msubsets(&set, &mut probe, &mut |s| {
            seen.push(s.to_vec());
            true
        }));
        assert_eq!(seen.len() as u64, binomial(5, 3));
        assert_eq!(seen[0], vec![2, 3, 5]);
        let mut visits = 0;
        assert!(!all_msubsets(&set, &mut probe, &mut |s| {
            visits += 1;
            s[0] != 2
        }));
        assert_eq!(visits, 1);
        // Zero-size probe visits the empty subset exactly once.
        let mut empty: [u64; 0] = [];
        let mut count = 0;
        assert!(all_msubsets(&set, &mut empty, &mut |_| {
            count += 1;
            true
        }));
        assert_eq!(count, 1);
    }

    #[test]
    fn bits_roundtrip() {
        let mut b = Bits::new(130);
        for i in [0u64, 1, 63, 64, 129] {
            b.set(i, true);
        }
        b.set(1, false);
        assert!(b.get(0) && !b.get(1) && b.get(63) && b.get(64) && b.get(129));
        assert_eq!(b.count_ones(), 4);
        assert_eq!(b.ones().collect::<Vec<_>>(), vec![0, 63, 64, 129]);
    }
}
