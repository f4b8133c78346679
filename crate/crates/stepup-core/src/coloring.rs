//! Red/blue colorings of complete k-graphs.
//!
//! Two backings share one interface: explicit colex-indexed color tables, and
//! the rule-backed 4-uniform coloring lifted from a 3-uniform base on [0, N)
//! to the ground set [0, 2^N). A lifted 4-subset whose consecutive deltas are
//! strictly monotone takes the base color of its delta set; every other delta
//! pattern is blue, which makes the lift total without any table.
//!
//! The verifiers here back certificates: base validity (red density in
//! 4-sets, no blue clique), max red count over p-subsets under an explicit
//! scan scope, exact monochromatic clique search, and the transfer check
//! along monotone tuples.

use crate::cert::Scope;
use crate::combin::{all_msubsets, binomial, colex_rank, colex_unrank, for_each_ksubset, for_each_ksubset_ranked, Bits};
use crate::delta::{delta_unchecked, deltas_unchecked, validate_sorted, DeltaError};
use crate::files::{content_lines, parse_header, parse_subset_line, ParseError};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

/// Explicit color tables above this many subset slots are refused.
pub const MAX_COLOR_TABLE_SLOTS: u64 = 1 << 28;

/// Materializing a lifted coloring is capped here; larger grounds must be
/// scanned through the lazy rule under an explicit scope.
pub const MAX_LIFT_TABLE_SLOTS: u64 = 1 << 16;

/// Exact clique search keeps per-candidate masks in single words.
pub const MAX_CLIQUE_GROUND: u64 = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ColoringError {
    #[error("uniformity must be at least 2, got {0}")]
    BadUniformity(usize),
    #[error("base uniformity must be 3, got {0}")]
    BaseUniformity(usize),
    #[error("lift needs a base ground of at most 63 bit positions, got {0}")]
    GroundTooWide(u64),
    #[error("subset {subset:?} is not a strictly increasing {k}-subset of [0, {v})")]
    BadSubset { subset: Vec<u64>, k: usize, v: u64 },
    #[error("p = {p} is smaller than the coloring uniformity {k}")]
    SubsetTooSmall { p: usize, k: usize },
    #[error("scope: p = {p} exceeds the scanned ground of {v} vertices")]
    Scope { p: usize, v: u64 },
    #[error("scope window {lo}:{hi} does not fit in [0, {v})")]
    ScopeWindow { lo: u64, hi: u64, v: u64 },
    #[error("explicit color table needs {needed} slots, over the {limit} limit")]
    ExplicitTooLarge { needed: u64, limit: u64 },
    #[error("exact clique search needs ground <= {limit}, got {got}")]
    ExactTooLarge { got: u64, limit: u64 },
    #[error("vertex tuple {0:?} does not have strictly monotone deltas")]
    NotMonotone(Vec<u64>),
    #[error(transparent)]
    Delta(#[from] DeltaError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub fn parse(s: &str) -> Option<Color> {
        match s {
            "red" => Some(Color::Red),
            "blue" => Some(Color::Blue),
            _ => None,
        }
    }
}

impl std::fmt::Display for Color {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Color::Red => "red",
            Color::Blue => "blue",
        })
    }
}

/// Explicit two-coloring of all k-subsets of [0, v): a red bit per colex rank,
/// everything else blue.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ColorTable {
    k: usize,
    v: u64,
    red: Bits,
}

impl ColorTable {
    pub fn all_blue(k: usize, v: u64) -> Result<Self, ColoringError> {
        if k < 2 {
            return Err(ColoringError::BadUniformity(k));
        }
        let slots = binomial(v, k as u64);
        if slots > MAX_COLOR_TABLE_SLOTS {
            return Err(ColoringError::ExplicitTooLarge {
                needed: slots,
                limit: MAX_COLOR_TABLE_SLOTS,
            });
        }
        Ok(ColorTable { k, v, red: Bits::new(slots) })
    }

    pub fn all_red(k: usize, v: u64) -> Result<Self, ColoringError> {
        let mut t = ColorTable::all_blue(k, v)?;
        for rank in 0..t.red.len() {
            t.red.set(rank, true);
        }
        Ok(t)
    }

    pub fn from_red<'a, I: IntoIterator<Item = &'a [u64]>>(k: usize, v: u64, red: I) -> Result<Self, ColoringError> {
        let mut t = ColorTable::all_blue(k, v)?;
        for subset in red {
            t.set_color(subset, Color::Red)?;
        }
        Ok(t)
    }

    pub fn uniformity(&self) -> usize {
        self.k
    }

    pub fn ground_size(&self) -> u64 {
        self.v
    }

    pub fn red_count(&self) -> u64 {
        self.red.count_ones()
    }

    fn check_subset(&self, s: &[u64]) -> Result<(), ColoringError> {
        let ok = s.len() == self.k
            && s.windows(2).all(|w| w[0] < w[1])
            && s.last().is_none_or(|&x| x < self.v);
        if ok {
            Ok(())
        } else {
            Err(ColoringError::BadSubset {
                subset: s.to_vec(),
                k: self.k,
                v: self.v,
            })
        }
    }

    pub fn color(&self, s: &[u64]) -> Result<Color, ColoringError> {
        self.check_subset(s)?;
        Ok(self.color_unchecked(s))
    }

    #[inline]
    pub fn color_unchecked(&self, s: &[u64]) -> Color {
        debug_assert!(self.check_subset(s).is_ok());
        if self.red.get(colex_rank(s)) {
            Color::Red
        } else {
            Color::Blue
        }
    }

    #[inline]
    pub fn color_rank(&self, rank: u64) -> Color {
        if self.red.get(rank) {
            Color::Red
        } else {
            Color::Blue
        }
    }

    pub fn set_color(&mut self, s: &[u64], c: Color) -> Result<(), ColoringError> {
        self.check_subset(s)?;
        self.red.set(colex_rank(s), c == Color::Red);
        Ok(())
    }

    pub fn set_rank(&mut self, rank: u64, c: Color) {
        self.red.set(rank, c == Color::Red);
    }

    /// Red subsets in ascending colex order.
    pub fn red_subsets(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        self.red.ones().map(move |rank| colex_unrank(rank, self.k))
    }

    /// Canonical text form: `coloring k N` then one red subset per line.
    pub fn write(&self) -> String {
        let mut out = format!("coloring {} {}\n", self.k, self.v);
        for s in self.red_subsets() {
            let words: Vec<String> = s.iter().map(u64::to_string).collect();
            out.push_str(&words.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut lines = content_lines(text);
        let (line_no, header) = lines.next().ok_or_else(|| ParseError::new(1, "empty input"))?;
        let (k, v) = parse_header(line_no, header, "coloring")?;
        let mut t = ColorTable::all_blue(k, v).map_err(|e| ParseError::new(line_no, e.to_string()))?;
        for (no, line) in lines {
            let s = parse_subset_line(no, line, k, v)?;
            t.set_color(&s, Color::Red).map_err(|e| ParseError::new(no, e.to_string()))?;
        }
        Ok(t)
    }
}

/// Rule-backed 4-uniform coloring of [0, 2^N) over a 3-uniform base on [0, N).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedColoring {
    base: ColorTable,
}

/// Wraps a 3-uniform base into the lazy 4-uniform coloring. No table of the
/// 2^N ground set is built; every query runs the delta rule directly.
pub fn lift_coloring(phi: ColorTable) -> Result<LiftedColoring, ColoringError> {
    if phi.uniformity() != 3 {
        return Err(ColoringError::BaseUniformity(phi.uniformity()));
    }
    if phi.ground_size() > 63 {
        return Err(ColoringError::GroundTooWide(phi.ground_size()));
    }
    Ok(LiftedColoring { base: phi })
}

impl LiftedColoring {
    pub fn base(&self) -> &ColorTable {
        &self.base
    }

    pub fn ground_size(&self) -> u64 {
        1u64 << self.base.ground_size()
    }

    fn check_subset(&self, s: &[u64]) -> Result<(), ColoringError> {
        let ok = s.len() == 4
            && s.windows(2).all(|w| w[0] < w[1])
            && s.last().is_none_or(|&x| x < self.ground_size());
        if ok {
            Ok(())
        } else {
            Err(ColoringError::BadSubset {
                subset: s.to_vec(),
                k: 4,
                v: self.ground_size(),
            })
        }
    }

    pub fn color(&self, s: &[u64]) -> Result<Color, ColoringError> {
        self.check_subset(s)?;
        Ok(self.color_unchecked(s))
    }

    /// Monotonicity is strict in both directions; any tie among the three
    /// deltas reads as non-monotone and therefore blue.
    #[inline]
    pub fn color_unchecked(&self, s: &[u64]) -> Color {
        debug_assert!(self.check_subset(s).is_ok());
        let d = [
            delta_unchecked(s[0], s[1]),
            delta_unchecked(s[1], s[2]),
            delta_unchecked(s[2], s[3]),
        ];
        let inc = d[0] < d[1] && d[1] < d[2];
        let dec = d[0] > d[1] && d[1] > d[2];
        if !inc && !dec {
            return Color::Blue;
        }
        let mut t = [d[0] as u64, d[1] as u64, d[2] as u64];
        if dec {
            t.swap(0, 2);
        }
        self.base.color_unchecked(&t)
    }
}

/// Color-queryable two-coloring: explicit table or lazy lift.
#[derive(Clone, Debug)]
pub enum TwoColoring {
    Explicit(ColorTable),
    Lifted(LiftedColoring),
}

impl TwoColoring {
    pub fn uniformity(&self) -> usize {
        match self {
            TwoColoring::Explicit(t) => t.uniformity(),
            TwoColoring::Lifted(_) => 4,
        }
    }

    pub fn ground_size(&self) -> u64 {
        match self {
            TwoColoring::Explicit(t) => t.ground_size(),
            TwoColoring::Lifted(l) => l.ground_size(),
        }
    }

    pub fn color(&self, s: &[u64]) -> Result<Color, ColoringError> {
        match self {
            TwoColoring::Explicit(t) => t.color(s),
            TwoColoring::Lifted(l) => l.color(s),
        }
    }

    #[inline]
    pub fn color_unchecked(&self, s: &[u64]) -> Color {
        match self {
            TwoColoring::Explicit(t) => t.color_unchecked(s),
            TwoColoring::Lifted(l) => l.color_unchecked(s),
        }
    }

    /// Explicit table with identical colors. Guarded so no one accidentally
    /// materializes a 2^N ground set that only works lazily.
    pub fn to_explicit(&self) -> Result<ColorTable, ColoringError> {
        match self {
            TwoColoring::Explicit(t) => Ok(t.clone()),
            TwoColoring::Lifted(l) => {
                let v = l.ground_size();
                let slots = binomial(v, 4);
                if slots > MAX_LIFT_TABLE_SLOTS {
                    return Err(ColoringError::ExplicitTooLarge {
                        needed: slots,
                        limit: MAX_LIFT_TABLE_SLOTS,
                    });
                }
                let mut t = ColorTable::all_blue(4, v)?;
                let mut rank = 0u64;
                for_each_ksubset(v, 4, |s| {
                    t.set_rank(rank, l.color_unchecked(s));
                    rank += 1;
                });
                Ok(t)
            }
        }
    }
}

/// First k-subset of [0, v) in colex order satisfying `f`, if any.
fn first_ksubset_where<F: FnMut(&[u64]) -> bool>(v: u64, k: usize, mut f: F) -> Option<Vec<u64>> {
    if k as u64 > v {
        return None;
    }
    let mut cur: Vec<u64> = (0..k as u64).collect();
    loop {
        if f(&cur) {
            return Some(cur);
        }
        if !crate::combin::colex_next(&mut cur, v) {
            return None;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PhiViolation {
    /// A 4-subset spanning three or more red triples.
    RedHeavyFourSet { vertices: Vec<u64>, red_triples: usize },
    /// An n-subset all of whose triples are blue.
    BlueClique { vertices: Vec<u64> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiReport {
    pub n: usize,
    pub violation: Option<PhiViolation>,
}

impl PhiReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Exhaustive base validity scan: every 4-subset of the ground set spans at
/// most 2 red triples, and no n-subset is entirely blue.
pub fn verify_base_phi(phi: &ColorTable, n: usize) -> Result<PhiReport, ColoringError> {
    if phi.uniformity() != 3 {
        return Err(ColoringError::BaseUniformity(phi.uniformity()));
    }
    let v = phi.ground_size();
    let red_triples_in = |s: &[u64]| {
        let mut reds = 0usize;
        let mut probe = [0u64; 3];
        all_msubsets(s, &mut probe, &mut |t| {
            if phi.color_unchecked(t) == Color::Red {
                reds += 1;
            }
            true
        });
        reds
    };
    if let Some(four) = first_ksubset_where(v, 4, |s| red_triples_in(s) > 2) {
        let red_triples = red_triples_in(&four);
        return Ok(PhiReport {
            n,
            violation: Some(PhiViolation::RedHeavyFourSet { vertices: four, red_triples }),
        });
    }
    // A blue clique needs n distinct vertices, so n > v passes vacuously.
    if let Some(blue) = first_ksubset_where(v, n, |s| red_triples_in(s) == 0) {
        return Ok(PhiReport {
            n,
            violation: Some(PhiViolation::BlueClique { vertices: blue }),
        });
    }
    Ok(PhiReport { n, violation: None })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityReport {
    pub max_red: u64,
    /// Subset attaining `max_red`; among ties, the smallest colex rank for
    /// window scans and the earliest draw for sampled scans.
    pub witness: Vec<u64>,
    pub scanned: u64,
    pub scope: Scope,
}

fn red_inside(chi: &TwoColoring, set: &[u64], probe: &mut [u64]) -> u64 {
    let mut reds = 0;
    all_msubsets(set, probe, &mut |s| {
        if chi.color_unchecked(s) == Color::Red {
            reds += 1;
        }
        true
    });
    reds
}

/// Maximum number of red k-subsets inside any p-subset, over the given scope.
/// Full and window scopes enumerate exhaustively in parallel rank chunks; the
/// sample scope draws `count` p-subsets from a seeded generator.
pub fn max_red_in_p_sets(chi: &TwoColoring, p: usize, scope: Scope) -> Result<DensityReport, ColoringError> {
    let k = chi.uniformity();
    let v = chi.ground_size();
    if p < k {
        return Err(ColoringError::SubsetTooSmall { p, k });
    }
    if p as u64 > v {
        return Err(ColoringError::Scope { p, v });
    }
    match scope {
        Scope::Full => window_scan(chi, p, 0, v, scope),
        Scope::Window { lo, hi } => {
            if lo >= hi || hi > v {
                return Err(ColoringError::ScopeWindow { lo, hi, v });
            }
            if hi - lo < p as u64 {
                return Err(ColoringError::Scope { p, v: hi - lo });
            }
            window_scan(chi, p, lo, hi, scope)
        }
        Scope::Sample { seed, count } => sample_scan(chi, p, seed, count, scope),
    }
}

fn window_scan(chi: &TwoColoring, p: usize, lo: u64, hi: u64, scope: Scope) -> Result<DensityReport, ColoringError> {
    let width = hi - lo;
    let total = binomial(width, p as u64);
    const CHUNK: u64 = 1 << 14;
    let chunks = total.div_ceil(CHUNK);
    let (max_red, best_rank) = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let r_lo = c * CHUNK;
            let r_hi = (r_lo + CHUNK).min(total);
            let mut probe = vec![0u64; chi.uniformity()];
            let mut shifted = vec![0u64; p];
            let mut best = (0u64, u64::MAX);
            let mut rank = r_lo;
            for_each_ksubset_ranked(width, p, r_lo, r_hi, |s| {
                for (d, &x) in shifted.iter_mut().zip(s) {
                    *d = x + lo;
                }
                let reds = red_inside(chi, &shifted, &mut probe);
                if reds > best.0 || best.1 == u64::MAX {
                    best = (reds, rank);
                }
                rank += 1;
            });
            best
        })
        .reduce(
            || (0, u64::MAX),
            |a, b| {
                if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a }
            },
        );
    // width >= p, so at least one subset was scanned and the rank is real.
    let witness: Vec<u64> = colex_unrank(best_rank, p).into_iter().map(|x| x + lo).collect();
    Ok(DensityReport { max_red, witness, scanned: total, scope })
}

fn sample_scan(chi: &TwoColoring, p: usize, seed: u64, count: u64, scope: Scope) -> Result<DensityReport, ColoringError> {
    let v = chi.ground_size();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut probe = vec![0u64; chi.uniformity()];
    let mut max_red = 0;
    let mut witness: Option<Vec<u64>> = None;
    for _ in 0..count {
        let mut s: Vec<u64> = rand::seq::index::sample(&mut rng, v as usize, p)
            .into_iter()
            .map(|i| i as u64)
            .collect();
        s.sort_unstable();
        let reds = red_inside(chi, &s, &mut probe);
        if reds > max_red || witness.is_none() {
            max_red = reds;
            witness = Some(s);
        }
    }
    Ok(DensityReport {
        max_red,
        witness: witness.unwrap_or_default(),
        scanned: count,
        scope,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueReport {
    pub color: Color,
    pub size: usize,
    pub witness: Vec<u64>,
}

struct Scratch {
    t: Vec<u64>,
    k: Vec<u64>,
}

/// Whether u and w can coexist on top of `cur`: every k-subset drawn from
/// cur plus both of them must have the target color. Pair checks against the
/// growing clique are exactly the constraints a new k-subset can introduce,
/// since subsets needing three or more future vertices get checked when their
/// own second-to-last vertex joins.
fn pair_ok(chi: &TwoColoring, color: Color, cur: &[u64], u: u64, w: u64, s: &mut Scratch) -> bool {
    let m = s.t.len();
    let mut t = std::mem::take(&mut s.t);
    let ok = all_msubsets(cur, &mut t, &mut |sub| {
        s.k[..m].copy_from_slice(sub);
        s.k[m] = u;
        s.k[m + 1] = w;
        s.k.sort_unstable();
        chi.color_unchecked(&s.k) == color
    });
    s.t = t;
    ok
}

/// Upper bound on how many candidates can join `cur` together: greedy proper
/// coloring of the pairwise-compatibility graph. Any valid extension is a
/// clique there, so it meets each color class at most once.
fn compat_bound(chi: &TwoColoring, color: Color, cur: &[u64], cand: &[u64], s: &mut Scratch) -> usize {
    let n = cand.len();
    debug_assert!(n <= 64);
    let mut adj = vec![0u64; n];
    for i in 0..n {
        for j in i + 1..n {
            if pair_ok(chi, color, cur, cand[i], cand[j], s) {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
    }
    let mut classes: Vec<u64> = Vec::new();
    'vertex: for (i, &a) in adj.iter().enumerate() {
        for class in classes.iter_mut() {
            if a & *class == 0 {
                *class |= 1 << i;
                continue 'vertex;
            }
        }
        classes.push(1 << i);
    }
    classes.len()
}

fn extend_mono(
    chi: &TwoColoring,
    color: Color,
    k: usize,
    cur: &mut Vec<u64>,
    cand: &[u64],
    best: &mut Vec<u64>,
    s: &mut Scratch,
) {
    if cur.len() > best.len() {
        best.clear();
        best.extend_from_slice(cur);
    }
    if cur.len() + cand.len() <= best.len() {
        return;
    }
    // One structural bound right where the k-ary constraints first bite.
    if cur.len() + 2 == k && cand.len() > 1 && cur.len() + compat_bound(chi, color, cur, cand, s) <= best.len() {
        return;
    }
    for i in 0..cand.len() {
        if cur.len() + (cand.len() - i) <= best.len() {
            return;
        }
        let u = cand[i];
        let rest = &cand[i + 1..];
        let next: Vec<u64> = if cur.len() + 2 >= k {
            rest.iter().copied().filter(|&w| pair_ok(chi, color, cur, u, w, s)).collect()
        } else {
            rest.to_vec()
        };
        cur.push(u);
        extend_mono(chi, color, k, cur, &next, best, s);
        cur.pop();
    }
}

/// Exact maximum monochromatic clique: the largest subset all of whose
/// k-subsets have the given color. Branch and bound over vertices in
/// descending color-degree order; deterministic, so the witness is stable.
pub fn max_mono_clique(chi: &TwoColoring, color: Color) -> Result<CliqueReport, ColoringError> {
    let v = chi.ground_size();
    if v > MAX_CLIQUE_GROUND {
        return Err(ColoringError::ExactTooLarge { got: v, limit: MAX_CLIQUE_GROUND });
    }
    let k = chi.uniformity();
    if v < k as u64 {
        // No k-subsets exist, so the whole ground set is vacuously a clique.
        return Ok(CliqueReport { color, size: v as usize, witness: (0..v).collect() });
    }
    let mut deg = vec![0u64; v as usize];
    for_each_ksubset(v, k, |sub| {
        if chi.color_unchecked(sub) == color {
            for &x in sub {
                deg[x as usize] += 1;
            }
        }
    });
    let mut order: Vec<u64> = (0..v).collect();
    order.sort_by(|&a, &b| deg[b as usize].cmp(&deg[a as usize]).then(a.cmp(&b)));
    // Any k-1 vertices form a clique vacuously.
    let mut best: Vec<u64> = (0..k as u64 - 1).collect();
    let mut cur = Vec::new();
    let mut scratch = Scratch { t: vec![0; k - 2], k: vec![0; k] };
    extend_mono(chi, color, k, &mut cur, &order, &mut best, &mut scratch);
    best.sort_unstable();
    Ok(CliqueReport { color, size: best.len(), witness: best })
}

fn grow_mono(
    chi: &TwoColoring,
    color: Color,
    k: usize,
    t: usize,
    cur: &mut Vec<u64>,
    cand: &[u64],
    s: &mut Scratch,
) -> Option<Vec<u64>> {
    if cur.len() == t {
        let mut found = cur.clone();
        found.sort_unstable();
        return Some(found);
    }
    if cur.len() + cand.len() < t {
        return None;
    }
    if cur.len() + 2 == k && cand.len() > 1 && cur.len() + compat_bound(chi, color, cur, cand, s) < t {
        return None;
    }
    for i in 0..cand.len() {
        if cur.len() + (cand.len() - i) < t {
            return None;
        }
        let u = cand[i];
        let rest = &cand[i + 1..];
        let next: Vec<u64> = if cur.len() + 2 >= k {
            rest.iter().copied().filter(|&w| pair_ok(chi, color, cur, u, w, s)).collect()
        } else {
            rest.to_vec()
        };
        cur.push(u);
        let found = grow_mono(chi, color, k, t, cur, &next, s);
        cur.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Bounded existence search: some t-subset all of whose k-subsets have the
/// given color, or None. A greedy pass answers most positive queries
/// immediately; refuting t just past the true maximum still costs a full
/// branch-and-bound, which grows steeply with the ground size.
pub fn find_mono_clique(chi: &TwoColoring, color: Color, t: usize) -> Result<Option<Vec<u64>>, ColoringError> {
    let v = chi.ground_size();
    if v > MAX_CLIQUE_GROUND {
        return Err(ColoringError::ExactTooLarge { got: v, limit: MAX_CLIQUE_GROUND });
    }
    if (t as u64) > v {
        return Ok(None);
    }
    let k = chi.uniformity();
    if t < k {
        // Too few vertices to contain any k-subset.
        return Ok(Some((0..t as u64).collect()));
    }
    if let Some(big) = maximal_mono_cliques(chi, color)?.into_iter().find(|c| c.len() >= t) {
        // Any subset of a monochromatic clique is one too.
        return Ok(Some(big[..t].to_vec()));
    }
    let mut deg = vec![0u64; v as usize];
    for_each_ksubset(v, k, |sub| {
        if chi.color_unchecked(sub) == color {
            for &x in sub {
                deg[x as usize] += 1;
            }
        }
    });
    let mut order: Vec<u64> = (0..v).collect();
    order.sort_by(|&a, &b| deg[b as usize].cmp(&deg[a as usize]).then(a.cmp(&b)));
    let mut cur = Vec::new();
    let mut scratch = Scratch { t: vec![0; k - 2], k: vec![0; k] };
    Ok(grow_mono(chi, color, k, t, &mut cur, &order, &mut scratch))
}

/// One greedily grown maximal clique per seed vertex, deduplicated and sorted
/// largest first. A bounded deterministic family, not full enumeration: a
/// maximal clique that no seed grows into is not reported.
pub fn maximal_mono_cliques(chi: &TwoColoring, color: Color) -> Result<Vec<Vec<u64>>, ColoringError> {
    let v = chi.ground_size();
    if v > MAX_CLIQUE_GROUND {
        return Err(ColoringError::ExactTooLarge { got: v, limit: MAX_CLIQUE_GROUND });
    }
    let k = chi.uniformity();
    let mut scratch = Scratch { t: vec![0; k.saturating_sub(2)], k: vec![0; k] };
    let mut seen = std::collections::BTreeSet::new();
    for seed in 0..v {
        let mut cur = vec![seed];
        let mut cand: Vec<u64> = (0..v).filter(|&x| x != seed).collect();
        while let Some(&u) = cand.first() {
            let rest: Vec<u64> = if cur.len() + 2 >= k {
                cand[1..]
                    .iter()
                    .copied()
                    .filter(|&w| pair_ok(chi, color, &cur, u, w, &mut scratch))
                    .collect()
            } else {
                cand[1..].to_vec()
            };
            cur.push(u);
            cand = rest;
        }
        cur.sort_unstable();
        seen.insert(cur);
    }
    let mut family: Vec<Vec<u64>> = seen.into_iter().collect();
    family.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    Ok(family)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TransferOutcome {
    /// The hypothesis fails: some 4-subset of the tuple is not the expected
    /// color, so the tuple transfers nothing.
    NotMonochromatic { four_subset: Vec<u64> },
    /// Every triple of the delta set has the expected base color.
    Holds { triples_checked: u64 },
    /// A delta triple with the wrong base color; should be unreachable for a
    /// correct lift, which is exactly why it is worth checking.
    Violated { delta_triple: Vec<u64> },
}

/// Transfer along a monotone tuple: if all 4-subsets of a strictly
/// monotone-delta tuple have color c under the lift, then all 3-subsets of
/// its delta set must have color c under the base. Both halves are checked
/// directly against the given expected color.
pub fn check_monotone_transfer(chi: &LiftedColoring, tuple: &[u64], color: Color) -> Result<TransferOutcome, ColoringError> {
    validate_sorted(tuple)?;
    let v = chi.ground_size();
    if tuple.last().is_none_or(|&x| x >= v) {
        return Err(ColoringError::BadSubset {
            subset: tuple.to_vec(),
            k: tuple.len(),
            v,
        });
    }
    let deltas = deltas_unchecked(tuple);
    let inc = deltas.windows(2).all(|w| w[0] < w[1]);
    let dec = deltas.windows(2).all(|w| w[0] > w[1]);
    if !inc && !dec {
        return Err(ColoringError::NotMonotone(tuple.to_vec()));
    }
    if tuple.len() >= 4 {
        let mut probe = [0u64; 4];
        let mut bad = None;
        all_msubsets(tuple, &mut probe, &mut |s| {
            if chi.color_unchecked(s) != color {
                bad = Some(s.to_vec());
                false
            } else {
                true
            }
        });
        if let Some(four_subset) = bad {
            return Ok(TransferOutcome::NotMonochromatic { four_subset });
        }
    }
    let mut dset: Vec<u64> = deltas.iter().map(|&d| d as u64).collect();
    dset.sort_unstable();
    let mut probe = [0u64; 3];
    let mut checked = 0u64;
    let mut bad = None;
    all_msubsets(&dset, &mut probe, &mut |t| {
        if chi.base().color_unchecked(t) != color {
            bad = Some(t.to_vec());
            false
        } else {
            checked += 1;
            true
        }
    });
    match bad {
        Some(delta_triple) => Ok(TransferOutcome::Violated { delta_triple }),
        None => Ok(TransferOutcome::Holds { triples_checked: checked }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// 3-uniform base on 6 vertices; every 4-subset spans 1 or 2 red triples,
    /// so it passes the n = 4 validity scan (checked by hand, then here).
    fn phi6() -> ColorTable {
        let red: [&[u64]; 7] = [
            &[0, 1, 2],
            &[0, 3, 4],
            &[1, 3, 5],
            &[2, 4, 5],
            &[1, 2, 3],
            &[0, 3, 5],
            &[0, 1, 4],
        ];
        ColorTable::from_red(3, 6, red).unwrap()
    }

    fn one_red_triple() -> TwoColoring {
        let red: [&[u64]; 1] = [&[0, 1, 2]];
        TwoColoring::Explicit(ColorTable::from_red(3, 6, red).unwrap())
    }

    #[test]
    fn table_roundtrip() {
        let t = phi6();
        let text = t.write();
        assert!(text.starts_with("coloring 3 6\n"));
        let back = ColorTable::parse(&text).unwrap();
        assert_eq!(back, t);
        assert_eq!(back.red_count(), 7);
    }

    #[test]
    fn lift_rule_cases() {
        let all_red = lift_coloring(ColorTable::all_red(3, 4).unwrap()).unwrap();
        // Non-monotone delta pattern (0, 2, 0) is blue under any base.
        assert_eq!(all_red.color(&[0, 1, 4, 5]).unwrap(), Color::Blue);
        // Monotone increasing (0, 1, 2) and decreasing (2, 1, 0) defer to it.
        assert_eq!(all_red.color(&[0, 1, 2, 4]).unwrap(), Color::Red);
        assert_eq!(all_red.color(&[0, 4, 6, 7]).unwrap(), Color::Red);

        let red: [&[u64]; 1] = [&[0, 1, 2]];
        let phi = ColorTable::from_red(3, 4, red).unwrap();
        let chi = lift_coloring(phi).unwrap();
        assert_eq!(chi.ground_size(), 16);
        assert_eq!(chi.color(&[0, 1, 2, 4]).unwrap(), Color::Red);
        // Delta set (0, 1, 3) is monotone but not the red triple.
        assert_eq!(chi.color(&[0, 1, 2, 8]).unwrap(), Color::Blue);

        let err = lift_coloring(ColorTable::all_blue(2, 4).unwrap()).unwrap_err();
        assert_eq!(err, ColoringError::BaseUniformity(2));
    }

    #[test]
    fn lift_matches_materialized_table() {
        let red: [&[u64]; 2] = [&[0, 1, 3], &[1, 2, 3]];
        let chi = TwoColoring::Lifted(lift_coloring(ColorTable::from_red(3, 4, red).unwrap()).unwrap());
        let table = chi.to_explicit().unwrap();
        let mut checked = 0u64;
        for_each_ksubset(16, 4, |s| {
            assert_eq!(table.color_unchecked(s), chi.color_unchecked(s), "at {s:?}");
            checked += 1;
        });
        assert_eq!(checked, binomial(16, 4));
        // 64-bit grounds stay lazy.
        let wide = TwoColoring::Lifted(lift_coloring(phi6()).unwrap());
        assert!(matches!(wide.to_explicit(), Err(ColoringError::ExplicitTooLarge { .. })));
    }

    #[test]
    fn base_validity_scan() {
        let blue = ColorTable::all_blue(3, 5).unwrap();
        assert!(verify_base_phi(&blue, 6).unwrap().passed());
        let r = verify_base_phi(&blue, 3).unwrap();
        assert_eq!(
            r.violation,
            Some(PhiViolation::BlueClique { vertices: vec![0, 1, 2] })
        );

        let red = ColorTable::all_red(3, 5).unwrap();
        let r = verify_base_phi(&red, 6).unwrap();
        assert_eq!(
            r.violation,
            Some(PhiViolation::RedHeavyFourSet { vertices: vec![0, 1, 2, 3], red_triples: 4 })
        );

        assert!(verify_base_phi(&phi6(), 4).unwrap().passed());
        // With n = 3 the first blue triple in colex order is the witness.
        let r = verify_base_phi(&phi6(), 3).unwrap();
        assert_eq!(
            r.violation,
            Some(PhiViolation::BlueClique { vertices: vec![0, 1, 3] })
        );
    }

    #[test]
    fn density_scan_window_and_witness() {
        let red: [&[u64]; 3] = [&[0, 1], &[0, 2], &[1, 2]];
        let chi = TwoColoring::Explicit(ColorTable::from_red(2, 5, red).unwrap());
        let full = max_red_in_p_sets(&chi, 3, Scope::Full).unwrap();
        assert_eq!((full.max_red, full.witness.as_slice()), (3, &[0, 1, 2][..]));
        assert_eq!(full.scanned, binomial(5, 3));

        let win = max_red_in_p_sets(&chi, 3, Scope::Window { lo: 1, hi: 5 }).unwrap();
        assert_eq!((win.max_red, win.witness.as_slice()), (1, &[1, 2, 3][..]));

        let blue = TwoColoring::Explicit(ColorTable::all_blue(3, 7).unwrap());
        assert_eq!(max_red_in_p_sets(&blue, 5, Scope::Full).unwrap().max_red, 0);

        assert!(matches!(
            max_red_in_p_sets(&chi, 2, Scope::Window { lo: 0, hi: 9 }),
            Err(ColoringError::ScopeWindow { .. })
        ));
        assert!(matches!(
            max_red_in_p_sets(&chi, 6, Scope::Full),
            Err(ColoringError::Scope { .. })
        ));
        assert!(matches!(
            max_red_in_p_sets(&chi, 1, Scope::Full),
            Err(ColoringError::SubsetTooSmall { .. })
        ));
    }

    #[test]
    fn density_scan_sampled_is_reproducible() {
        let chi = TwoColoring::Lifted(lift_coloring(phi6()).unwrap());
        let scope = Scope::Sample { seed: 9, count: 200 };
        let a = max_red_in_p_sets(&chi, 5, scope).unwrap();
        let b = max_red_in_p_sets(&chi, 5, scope).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.scanned, 200);
        assert!(a.max_red <= 3);
    }

    #[test]
    fn lifted_density_in_window_respects_bound() {
        let chi = TwoColoring::Lifted(lift_coloring(phi6()).unwrap());
        let r = max_red_in_p_sets(&chi, 5, Scope::Window { lo: 0, hi: 16 }).unwrap();
        assert!(r.max_red <= 3, "red bound broken: {r:?}");
        assert_eq!(r.scanned, binomial(16, 5));
    }

    #[test]
    fn mono_clique_exact_cases() {
        let blue = TwoColoring::Explicit(ColorTable::all_blue(3, 6).unwrap());
        let r = max_mono_clique(&blue, Color::Blue).unwrap();
        assert_eq!((r.size, r.witness.as_slice()), (6, &[0, 1, 2, 3, 4, 5][..]));
        // No red triples at all: only vacuous 2-sets qualify.
        assert_eq!(max_mono_clique(&blue, Color::Red).unwrap().size, 2);

        let one = one_red_triple();
        let r = max_mono_clique(&one, Color::Blue).unwrap();
        assert_eq!(r.size, 5);
        let w = &r.witness;
        assert!(!(w.contains(&0) && w.contains(&1) && w.contains(&2)));
        let r = max_mono_clique(&one, Color::Red).unwrap();
        assert_eq!((r.size, r.witness.as_slice()), (3, &[0, 1, 2][..]));
    }

    #[test]
    fn bounded_existence_agrees_with_exact_maximum() {
        let one = one_red_triple();
        for color in [Color::Blue, Color::Red] {
            let max = max_mono_clique(&one, color).unwrap().size;
            for t in 0..=7 {
                let found = find_mono_clique(&one, color, t).unwrap();
                assert_eq!(found.is_some(), t <= max, "color {color} t {t} max {max}");
                if let Some(c) = found {
                    assert_eq!(c.len(), t);
                    if t >= 3 {
                        let mut probe = [0u64; 3];
                        assert!(all_msubsets(&c, &mut probe, &mut |s| one.color_unchecked(s) == color));
                    }
                }
            }
        }
    }

    #[test]
    fn maximal_family_is_deterministic_and_maximal() {
        let one = one_red_triple();
        let fam = maximal_mono_cliques(&one, Color::Blue).unwrap();
        // The greedy family: every seed grabs vertex 0 (or 1) early, so the
        // maximal clique {1,2,3,4,5} is never grown; that is by design.
        assert_eq!(fam, vec![vec![0, 1, 3, 4, 5], vec![0, 2, 3, 4, 5]]);
        for c in &fam {
            let mut probe = [0u64; 3];
            assert!(all_msubsets(c, &mut probe, &mut |t| one.color_unchecked(t) == Color::Blue));
        }
    }

    #[test]
    fn transfer_holds_and_fails_properly() {
        let blue = lift_coloring(ColorTable::all_blue(3, 6).unwrap()).unwrap();
        let tuple = [0u64, 1, 3, 7, 15];
        let r = check_monotone_transfer(&blue, &tuple, Color::Blue).unwrap();
        assert_eq!(r, TransferOutcome::Holds { triples_checked: 4 });

        let red: [&[u64]; 1] = [&[0, 1, 2]];
        let chi = lift_coloring(ColorTable::from_red(3, 6, red).unwrap()).unwrap();
        let r = check_monotone_transfer(&chi, &[0, 1, 3, 7], Color::Blue).unwrap();
        assert_eq!(
            r,
            TransferOutcome::NotMonochromatic { four_subset: vec![0, 1, 3, 7] }
        );
        let r = check_monotone_transfer(&chi, &[0, 1, 3, 7], Color::Red).unwrap();
        assert_eq!(r, TransferOutcome::Holds { triples_checked: 1 });

        assert!(matches!(
            check_monotone_transfer(&chi, &[0, 1, 4, 5], Color::Blue),
            Err(ColoringError::NotMonotone(_))
        ));
        assert!(matches!(
            check_monotone_transfer(&chi, &[0, 1, 99], Color::Blue),
            Err(ColoringError::BadSubset { .. })
        ));
    }
}
