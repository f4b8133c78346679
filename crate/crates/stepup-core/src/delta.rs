//! Vertices as binary integers and the difference-position calculus on them.
//!
//! For distinct `a`, `b`, `delta(a, b)` is the most significant bit position
//! where their binary expansions differ. A strictly increasing tuple induces
//! the sequence of consecutive deltas; interior positions of that sequence are
//! classified as local minima, local maxima, or local monotones. Everything
//! downstream (lifted colorings, lift membership rules, the extraction of
//! monotone subsequences) is built on the five structural facts checked by
//! [`check_property`].

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DeltaError {
    #[error("delta undefined on equal vertices ({0})")]
    EqualVertices(u64),
    #[error("not a sorted set: position {pos} holds {a}, then {b}")]
    NotSorted { pos: usize, a: u64, b: u64 },
    #[error("tuple of arity {arity} too short for property {property:?} (needs {needed})")]
    TupleTooShort {
        property: StepProperty,
        arity: usize,
        needed: usize,
    },
    #[error("insufficient ground set: {got} vertices, need {need} for {target} monotone deltas")]
    InsufficientGroundSet { got: usize, need: usize, target: usize },
    #[error("monotone extraction target must be at least 1")]
    ZeroTarget,
}

/// Most significant differing bit position of two distinct vertices.
pub fn delta(a: u64, b: u64) -> Result<u32, DeltaError> {
    if a == b {
        return Err(DeltaError::EqualVertices(a));
    }
    Ok(delta_unchecked(a, b))
}

/// [`delta`] without the equality check; callers guarantee `a != b`.
#[inline]
pub fn delta_unchecked(a: u64, b: u64) -> u32 {
    debug_assert_ne!(a, b);
    63 - (a ^ b).leading_zeros()
}

pub(crate) fn validate_sorted(vertices: &[u64]) -> Result<(), DeltaError> {
    for (pos, w) in vertices.windows(2).enumerate() {
        if w[0] >= w[1] {
            return Err(DeltaError::NotSorted { pos, a: w[0], b: w[1] });
        }
    }
    Ok(())
}

/// Consecutive deltas of a strictly increasing tuple.
pub fn consecutive_deltas(vertices: &[u64]) -> Result<Vec<u32>, DeltaError> {
    validate_sorted(vertices)?;
    Ok(deltas_unchecked(vertices))
}

pub(crate) fn deltas_unchecked(vertices: &[u64]) -> Vec<u32> {
    vertices.windows(2).map(|w| delta_unchecked(w[0], w[1])).collect()
}

/// Writes consecutive deltas into `out` without allocating; hot-loop variant.
#[inline]
pub(crate) fn deltas_into(vertices: &[u64], out: &mut [u32]) {
    debug_assert_eq!(out.len() + 1, vertices.len());
    for (i, w) in vertices.windows(2).enumerate() {
        out[i] = delta_unchecked(w[0], w[1]);
    }
}

/// Role of one position in a consecutive-delta sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PositionLabel {
    /// First or last position; no two-sided neighborhood.
    Boundary,
    LocalMin,
    LocalMax,
    LocalMonotone,
}

/// Labels every delta position. Interior positions (both neighbors present)
/// are a strict extremum or strictly between their neighbors; adjacent equal
/// deltas cannot arise from a real tuple.
pub fn classify_deltas(deltas: &[u32]) -> Vec<PositionLabel> {
    let len = deltas.len();
    let mut labels = vec![PositionLabel::Boundary; len];
    for i in 1..len.saturating_sub(1) {
        let (p, c, n) = (deltas[i - 1], deltas[i], deltas[i + 1]);
        debug_assert!(p != c && c != n, "adjacent deltas equal: not a delta sequence");
        labels[i] = if p > c && c < n {
            PositionLabel::LocalMin
        } else if p < c && c > n {
            PositionLabel::LocalMax
        } else {
            PositionLabel::LocalMonotone
        };
    }
    labels
}

/// Number of interior strict extrema of a delta sequence; the `m` statistic.
#[inline]
pub fn extrema_count(deltas: &[u32]) -> usize {
    let mut m = 0;
    for i in 1..deltas.len().saturating_sub(1) {
        let (p, c, n) = (deltas[i - 1], deltas[i], deltas[i + 1]);
        if (p > c && c < n) || (p < c && c > n) {
            m += 1;
        }
    }
    m
}

/// Immutable view of a tuple with its deltas and position labels.
///
/// `extrema_count() + monotone_count() == arity - 3` whenever arity >= 4;
/// shorter tuples have no interior positions and both counts are zero.
#[derive(Debug, Clone)]
pub struct DeltaProfile {
    vertices: Vec<u64>,
    deltas: Vec<u32>,
    labels: Vec<PositionLabel>,
    m: usize,
    n: usize,
}

impl DeltaProfile {
    /// Profiles a strictly increasing tuple of at least two vertices.
    pub fn new(vertices: &[u64]) -> Result<Self, DeltaError> {
        validate_sorted(vertices)?;
        if vertices.len() < 2 {
            return Err(DeltaError::InsufficientGroundSet {
                got: vertices.len(),
                need: 2,
                target: 0,
            });
        }
        let deltas = deltas_unchecked(vertices);
        let labels = classify_deltas(&deltas);
        let m = labels
            .iter()
            .filter(|l| matches!(l, PositionLabel::LocalMin | PositionLabel::LocalMax))
            .count();
        let n = labels.iter().filter(|l| matches!(l, PositionLabel::LocalMonotone)).count();
        Ok(DeltaProfile {
            vertices: vertices.to_vec(),
            deltas,
            labels,
            m,
            n,
        })
    }

    pub fn arity(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[u64] {
        &self.vertices
    }

    pub fn deltas(&self) -> &[u32] {
        &self.deltas
    }

    pub fn labels(&self) -> &[PositionLabel] {
        &self.labels
    }

    /// `m`: interior local extrema.
    pub fn extrema_count(&self) -> usize {
        self.m
    }

    /// `n`: interior local monotones.
    pub fn monotone_count(&self) -> usize {
        self.n
    }

    /// Delta positions (0-based) holding local extrema, ascending.
    pub fn extrema_positions(&self) -> Vec<usize> {
        self.labels
            .iter()
            .enumerate()
            .filter(|(_, l)| matches!(l, PositionLabel::LocalMin | PositionLabel::LocalMax))
            .map(|(i, _)| i)
            .collect()
    }
}

/// The five structural facts about delta sequences this crate relies on.
///
/// * `A`: for vertices a < b < c, delta(a, b) != delta(b, c).
/// * `B`: over any contiguous window, the endpoint delta equals the maximum
///   consecutive delta of the window.
/// * `C`: over any contiguous window, the maximum consecutive delta is
///   attained exactly once.
/// * `D`: in any 4-subset with deltas d1, d2, d3: d1 > d2 implies d1 != d3.
/// * `G`: consecutive local maxima of a delta sequence have distinct values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepProperty {
    A,
    B,
    C,
    D,
    G,
}

impl StepProperty {
    pub fn min_arity(self) -> usize {
        match self {
            StepProperty::A | StepProperty::C => 3,
            StepProperty::B => 2,
            StepProperty::D => 4,
            StepProperty::G => 6,
        }
    }
}

/// A concrete violation; these properties are theorems, so any counterexample
/// is an implementation bug in the checker or the delta kernel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub vertices: Vec<u64>,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PropertyVerdict {
    Holds,
    Violated(Counterexample),
}

impl PropertyVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, PropertyVerdict::Holds)
    }
}

/// Checks one property exhaustively over the given tuple (all sub-triples,
/// sub-4-tuples, or contiguous windows, as the property dictates).
pub fn check_property(vertices: &[u64], which: StepProperty) -> Result<PropertyVerdict, DeltaError> {
    validate_sorted(vertices)?;
    let r = vertices.len();
    if r < which.min_arity() {
        return Err(DeltaError::TupleTooShort {
            property: which,
            arity: r,
            needed: which.min_arity(),
        });
    }
    let deltas = deltas_unchecked(vertices);
    let fail = |vs: Vec<u64>, note: String| Ok(PropertyVerdict::Violated(Counterexample { vertices: vs, note }));
    match which {
        StepProperty::A => {
            for i in 0..r {
                for j in i + 1..r {
                    let dij = delta_unchecked(vertices[i], vertices[j]);
                    for l in j + 1..r {
                        if dij == delta_unchecked(vertices[j], vertices[l]) {
                            return fail(
                                vec![vertices[i], vertices[j], vertices[l]],
                                format!("delta(a,b) = delta(b,c) = {dij}"),
                            );
                        }
                    }
                }
            }
            Ok(PropertyVerdict::Holds)
        }
        StepProperty::B => {
            for i in 0..r {
                for j in i + 1..r {
                    let end = delta_unchecked(vertices[i], vertices[j]);
                    let max = *deltas[i..j].iter().max().expect("window nonempty");
                    if end != max {
                        return fail(
                            vertices[i..=j].to_vec(),
                            format!("endpoint delta {end} != window max {max}"),
                        );
                    }
                }
            }
            Ok(PropertyVerdict::Holds)
        }
        StepProperty::C => {
            for i in 0..r - 2 {
                for j in i + 2..r {
                    let window = &deltas[i..j];
                    let max = *window.iter().max().expect("window nonempty");
                    if window.iter().filter(|&&d| d == max).count() != 1 {
                        return fail(
                            vertices[i..=j].to_vec(),
                            format!("window max {max} attained more than once"),
                        );
                    }
                }
            }
            Ok(PropertyVerdict::Holds)
        }
        StepProperty::D => {
            for a in 0..r {
                for b in a + 1..r {
                    let d1 = delta_unchecked(vertices[a], vertices[b]);
                    for c in b + 1..r {
                        let d2 = delta_unchecked(vertices[b], vertices[c]);
                        if d1 <= d2 {
                            continue;
                        }
                        for d in c + 1..r {
                            let d3 = delta_unchecked(vertices[c], vertices[d]);
                            if d1 == d3 {
                                return fail(
                                    vec![vertices[a], vertices[b], vertices[c], vertices[d]],
                                    format!("d1 = d3 = {d1} with d1 > d2 = {d2}"),
                                );
                            }
                        }
                    }
                }
            }
            Ok(PropertyVerdict::Holds)
        }
        StepProperty::G => {
            let labels = classify_deltas(&deltas);
            let maxima: Vec<usize> = labels
                .iter()
                .enumerate()
                .filter(|(_, l)| matches!(l, PositionLabel::LocalMax))
                .map(|(i, _)| i)
                .collect();
            for w in maxima.windows(2) {
                if deltas[w[0]] == deltas[w[1]] {
                    return fail(
                        vertices.to_vec(),
                        format!("consecutive local maxima at positions {} and {} share value {}", w[0], w[1], deltas[w[0]]),
                    );
                }
            }
            Ok(PropertyVerdict::Holds)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Increasing,
    Decreasing,
}

/// Result of [`extract_monotone`]: `witness` has `deltas.len() + 1` vertices
/// drawn from the input tuple, consecutive witnesses realize `deltas`, and
/// `deltas` is strictly monotone in `direction`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneExtraction {
    pub witness: Vec<u64>,
    pub deltas: Vec<u32>,
    pub direction: Direction,
}

#[derive(Clone, Copy)]
struct SplitStep {
    pos: usize,
    val: u32,
    went_right: bool,
}

/// Extracts `target` strictly monotone deltas from any tuple of at least
/// `2^(2*target)` vertices by repeated halving at the unique maximum delta.
///
/// Each of the `2*target` halving steps recurses into the larger half (ties
/// go left). Steps that recursed right lie left of the final split and carry
/// decreasing values in position order; steps that recursed left lie right of
/// it and carry increasing values. One side has at least `target` entries;
/// the decreasing side is preferred when both do.
pub fn extract_monotone(vertices: &[u64], target: usize) -> Result<MonotoneExtraction, DeltaError> {
    validate_sorted(vertices)?;
    if target == 0 {
        return Err(DeltaError::ZeroTarget);
    }
    let r = vertices.len();
    let need = 2usize
        .checked_pow(u32::try_from(2 * target).unwrap_or(u32::MAX))
        .unwrap_or(usize::MAX);
    if r < need {
        return Err(DeltaError::InsufficientGroundSet { got: r, need, target });
    }
    let deltas = deltas_unchecked(vertices);

    // Vertex index window [lo, hi], inclusive.
    let (mut lo, mut hi) = (0usize, r - 1);
    let steps_total = 2 * target;
    let mut steps: Vec<SplitStep> = Vec::with_capacity(steps_total);
    for step in 0..steps_total {
        debug_assert!(hi > lo, "window degenerated; arity precondition violated");
        let mut pos = lo;
        for i in lo..hi {
            if deltas[i] > deltas[pos] {
                pos = i;
            }
        }
        debug_assert_eq!(
            deltas[lo..hi].iter().filter(|&&d| d == deltas[pos]).count(),
            1,
            "window max not unique"
        );
        let val = deltas[pos];
        let mut went_right = false;
        if step + 1 < steps_total {
            let left_size = pos - lo + 1;
            let right_size = hi - pos;
            if left_size >= right_size {
                hi = pos;
            } else {
                lo = pos + 1;
                went_right = true;
            }
        }
        steps.push(SplitStep { pos, val, went_right });
    }

    let last = steps[steps_total - 1];
    // Right-recursions precede the final split position with decreasing
    // values; left-recursions follow it with increasing values (reading
    // positions in ascending order). The final split can join either side.
    let mut decreasing: Vec<SplitStep> = steps[..steps_total - 1]
        .iter()
        .filter(|s| s.went_right)
        .copied()
        .collect();
    decreasing.push(last);
    let mut increasing: Vec<SplitStep> = vec![last];
    increasing.extend(steps[..steps_total - 1].iter().rev().filter(|s| !s.went_right));

    let (chosen, direction): (&[SplitStep], Direction) = if decreasing.len() >= target {
        (&decreasing[..target], Direction::Decreasing)
    } else {
        (&increasing[increasing.len() - target..], Direction::Increasing)
    };

    let mut witness: Vec<u64> = chosen.iter().map(|s| vertices[s.pos]).collect();
    witness.push(vertices[chosen.last().expect("target >= 1").pos + 1]);
    let out: Vec<u32> = chosen.iter().map(|s| s.val).collect();

    for (l, w) in witness.windows(2).enumerate() {
        assert_eq!(
            delta_unchecked(w[0], w[1]),
            out[l],
            "halving extraction produced a non-realizing witness"
        );
    }
    for w in out.windows(2) {
        match direction {
            Direction::Increasing => assert!(w[0] < w[1], "extracted deltas not increasing"),
            Direction::Decreasing => assert!(w[0] > w[1], "extracted deltas not decreasing"),
        }
    }
    Ok(MonotoneExtraction { witness, deltas: out, direction })
}

/// True when `pattern` occurs as the consecutive-delta sequence of some
/// strictly increasing tuple: between any two equal values there must be a
/// strictly larger one (equivalently, every window maximum is unique).
pub fn delta_pattern_realizable(pattern: &[u32]) -> bool {
    for j in 1..pattern.len() {
        let d = pattern[j];
        for i in (0..j).rev() {
            if pattern[i] > d {
                break;
            }
            if pattern[i] == d {
                return false;
            }
        }
    }
    true
}

/// Builds the canonical tuple realizing `pattern` exactly, or None if the
/// pattern is not realizable. Vertices stay below `2^(max value + 1)`.
pub fn realize_delta_pattern(pattern: &[u32]) -> Option<Vec<u64>> {
    if !delta_pattern_realizable(pattern) {
        return None;
    }
    fn build(pattern: &[u32]) -> Vec<u64> {
        if pattern.is_empty() {
            return vec![0];
        }
        let mut pos = 0;
        for i in 1..pattern.len() {
            if pattern[i] > pattern[pos] {
                pos = i;
            }
        }
        let mut left = build(&pattern[..pos]);
        let right = build(&pattern[pos + 1..]);
        let bump = 1u64 << pattern[pos];
        left.extend(right.into_iter().map(|x| x + bump));
        left
    }
    let tuple = build(pattern);
    debug_assert_eq!(deltas_unchecked(&tuple), pattern);
    Some(tuple)
}

/// Visits every realizable delta pattern of the given length with values in
/// [0, len). Every realizable tuple's delta sequence is order-isomorphic to
/// at least one visited pattern, so comparison-determined statements can be
/// verified exhaustively by sweeping these patterns.
pub fn for_each_realizable_pattern<F: FnMut(&[u32])>(len: usize, mut f: F) {
    fn extend_ok(prefix: &[u32], d: u32) -> bool {
        for &p in prefix.iter().rev() {
            if p > d {
                return true;
            }
            if p == d {
                return false;
            }
        }
        true
    }
    fn dfs<F: FnMut(&[u32])>(len: usize, cur: &mut Vec<u32>, f: &mut F) {
        if cur.len() == len {
            f(cur);
            return;
        }
        for d in 0..len as u32 {
            if extend_ok(cur, d) {
                cur.push(d);
                dfs(len, cur, f);
                cur.pop();
            }
        }
    }
    if len == 0 {
        return;
    }
    dfs(len, &mut Vec::with_capacity(len), &mut f);
}
