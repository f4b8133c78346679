//! Membership rules lifting a (k-1)-uniform base on [0, N) to a k-uniform
//! hypergraph on [0, 2^N), plus the structural claims those rules satisfy
//! and a builder for (k+1)-sets whose k-subsets are all members.
//!
//! Membership of a k-subset depends only on its consecutive-delta sequence:
//! on `m`, the number of interior local extrema, on a few comparisons among
//! the deltas, and (only when the sequence is monotone) on whether the delta
//! set is an edge of the base. The clause lists for each arity partition all
//! realizable delta patterns; `clause_flags` exposes the clauses as
//! independent predicates so that partition can be tested directly.

use crate::combin::{binomial, colex_rank, for_each_ksubset};
use crate::delta::{
    deltas_into, extrema_count, validate_sorted, Counterexample, DeltaError, DeltaProfile,
    PositionLabel,
};
use crate::files::{content_lines, ParseError};
use crate::hypergraph::EdgeSet;
use thiserror::Error;

/// Explicit materialization of a lifted hypergraph is only for tiny grounds.
pub const MAX_MATERIALIZE_SLOTS: u64 = 1 << 12;

/// Largest supported lift arity; delta buffers are stack-allocated below it.
pub const MAX_LIFT_ARITY: usize = 32;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LiftError {
    #[error("base uniformity {got} does not fit a {k}-lift (need {need})")]
    BaseUniformity { got: usize, k: usize, need: usize },
    #[error("arity {k} has a dedicated rule; the general rule needs k >= 7")]
    DedicatedRule { k: usize },
    #[error("lift arity {k} unsupported (need 5 <= k <= {max})", max = MAX_LIFT_ARITY)]
    UnsupportedArity { k: usize },
    #[error("base ground {n} too wide; lifted vertices would overflow (need n <= 63)")]
    GroundTooWide { n: u64 },
    #[error("edge {edge:?} is not a strictly increasing {k}-subset of [0, {ground})")]
    BadEdge { edge: Vec<u64>, k: usize, ground: u64 },
    #[error("insufficient extrema: found {found}, need {need}")]
    InsufficientExtrema { found: usize, need: usize },
    #[error("no peak among the first {count} local maxima")]
    PeakNotFound { count: usize },
    #[error("materializing {slots} subset slots exceeds the {limit} limit")]
    MaterializeTooLarge { slots: u64, limit: u64 },
    #[error("claim needs arity {need}, got {got}")]
    ClaimArity { got: usize, need: usize },
    #[error(transparent)]
    Delta(#[from] DeltaError),
}

/// How a clause decides membership once its predicate matches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClauseRole {
    /// Monotone deltas; membership defers to the base edge set.
    BaseLookup,
    Member,
    NonMember,
}

/// Clauses holding for a delta sequence under the arity-k rule, as 1-based
/// clause numbers. Exactly one holds for every realizable sequence; the
/// predicates are evaluated independently so tests can confirm that.
///
/// Arity 5: 1 m=0; 2 m=2; 3 m=1.
/// Arity 6: 1 m=0; 2 m in {2,3} and d1<d2; 3 m=3, d1>d2, and (d1>d3 or
/// d3<d5); 4 m=1; 5 m=2 and d1>d2; 6 m=3, d1>d2, d1<d3, d3>d5.
/// Arity k >= 7: 1 m=0; 2 m=k-3; 3 m=k-4 and d1<d2; 4 m=k-4 and d1>d2;
/// 5 1 <= m <= k-5.
pub fn clause_flags(k: usize, deltas: &[u32]) -> Vec<u8> {
    debug_assert_eq!(deltas.len() + 1, k);
    let m = extrema_count(deltas);
    let d = deltas;
    let mut out = Vec::with_capacity(1);
    match k {
        5 => {
            if m == 0 {
                out.push(1);
            }
            if m == 2 {
                out.push(2);
            }
            if m == 1 {
                out.push(3);
            }
        }
        6 => {
            if m == 0 {
                out.push(1);
            }
            if (m == 2 || m == 3) && d[0] < d[1] {
                out.push(2);
            }
            if m == 3 && d[0] > d[1] && (d[0] > d[2] || d[2] < d[4]) {
                out.push(3);
            }
            if m == 1 {
                out.push(4);
            }
            if m == 2 && d[0] > d[1] {
                out.push(5);
            }
            if m == 3 && d[0] > d[1] && d[0] < d[2] && d[2] > d[4] {
                out.push(6);
            }
        }
        _ => {
            if m == 0 {
                out.push(1);
            }
            if m == k - 3 {
                out.push(2);
            }
            if m == k - 4 && d[0] < d[1] {
                out.push(3);
            }
            if m == k - 4 && d[0] > d[1] {
                out.push(4);
            }
            if (1..=k.saturating_sub(5)).contains(&m) {
                out.push(5);
            }
        }
    }
    out
}

pub fn clause_role(k: usize, clause: u8) -> ClauseRole {
    let member: &[u8] = match k {
        5 => &[2],
        6 => &[2, 3],
        _ => &[2, 3],
    };
    if clause == 1 {
        ClauseRole::BaseLookup
    } else if member.contains(&clause) {
        ClauseRole::Member
    } else {
        ClauseRole::NonMember
    }
}

#[inline]
fn member_from_deltas(k: usize, base: &EdgeSet, d: &[u32]) -> bool {
    let m = extrema_count(d);
    match k {
        5 => match m {
            0 => base_lookup(base, d),
            2 => true,
            _ => false,
        },
        6 => {
            if m == 0 {
                base_lookup(base, d)
            } else {
                ((m == 2 || m == 3) && d[0] < d[1])
                    || (m == 3 && d[0] > d[1] && (d[0] > d[2] || d[2] < d[4]))
            }
        }
        _ => {
            if m == 0 {
                base_lookup(base, d)
            } else {
                m == k - 3 || (m == k - 4 && d[0] < d[1])
            }
        }
    }
}

/// Membership under a complete base: clause 1 always hits an edge.
#[inline]
fn member_complete_base(k: usize, d: &[u32]) -> bool {
    let m = extrema_count(d);
    match k {
        5 => m == 0 || m == 2,
        6 => {
            m == 0
                || ((m == 2 || m == 3) && d[0] < d[1])
                || (m == 3 && d[0] > d[1] && (d[0] > d[2] || d[2] < d[4]))
        }
        _ => m == 0 || m == k - 3 || (m == k - 4 && d[0] < d[1]),
    }
}

/// Monotone deltas form a set; rank it ascending for the base lookup.
#[inline]
fn base_lookup(base: &EdgeSet, d: &[u32]) -> bool {
    let mut set = [0u64; MAX_LIFT_ARITY];
    let len = d.len();
    let ascending = d[0] < d[len - 1];
    for (i, slot) in set[..len].iter_mut().enumerate() {
        *slot = if ascending { d[i] as u64 } else { d[len - 1 - i] as u64 };
    }
    base.contains_rank(colex_rank(&set[..len]))
}

/// A k-uniform hypergraph on [0, 2^N) defined by the arity-k rule over a
/// (k-1)-uniform base on [0, N). Membership is always evaluated lazily.
#[derive(Clone, Debug)]
pub struct LiftRule {
    k: usize,
    base: EdgeSet,
}

impl LiftRule {
    pub fn new(k: usize, base: EdgeSet) -> Result<Self, LiftError> {
        if !(5..=MAX_LIFT_ARITY).contains(&k) {
            return Err(LiftError::UnsupportedArity { k });
        }
        if base.uniformity() != k - 1 {
            return Err(LiftError::BaseUniformity {
                got: base.uniformity(),
                k,
                need: k - 1,
            });
        }
        if base.ground_size() > 63 {
            return Err(LiftError::GroundTooWide { n: base.ground_size() });
        }
        Ok(LiftRule { k, base })
    }

    pub fn target_uniformity(&self) -> usize {
        self.k
    }

    /// Ground size of the lifted hypergraph: 2^N for a base on [0, N).
    pub fn target_ground(&self) -> u64 {
        1u64 << self.base.ground_size()
    }

    pub fn base(&self) -> &EdgeSet {
        &self.base
    }

    fn check_edge(&self, e: &[u64]) -> Result<(), LiftError> {
        let ok = e.len() == self.k
            && e.windows(2).all(|w| w[0] < w[1])
            && e.last().is_none_or(|&x| x < self.target_ground());
        if ok {
            Ok(())
        } else {
            Err(LiftError::BadEdge {
                edge: e.to_vec(),
                k: self.k,
                ground: self.target_ground(),
            })
        }
    }

    pub fn contains(&self, e: &[u64]) -> Result<bool, LiftError> {
        self.check_edge(e)?;
        Ok(self.contains_unchecked(e))
    }

    #[inline]
    pub fn contains_unchecked(&self, e: &[u64]) -> bool {
        debug_assert!(self.check_edge(e).is_ok());
        let mut buf = [0u32; MAX_LIFT_ARITY];
        let d = &mut buf[..self.k - 1];
        deltas_into(e, d);
        member_from_deltas(self.k, &self.base, d)
    }

    /// Explicit edge table of the lift; guarded, tiny grounds only.
    pub fn to_explicit(&self) -> Result<EdgeSet, LiftError> {
        let slots = binomial(self.target_ground(), self.k as u64);
        if slots > MAX_MATERIALIZE_SLOTS {
            return Err(LiftError::MaterializeTooLarge {
                slots,
                limit: MAX_MATERIALIZE_SLOTS,
            });
        }
        let mut es = EdgeSet::empty(self.k, self.target_ground())
            .expect("slot guard keeps the table small");
        let mut rank = 0u64;
        for_each_ksubset(self.target_ground(), self.k, |sub| {
            if self.contains_unchecked(sub) {
                es.set_rank(rank, true);
            }
            rank += 1;
        });
        Ok(es)
    }
}

/// Arity-5 rule membership; base must be 4-uniform.
pub fn member_k5(base: &EdgeSet, e: &[u64]) -> Result<bool, LiftError> {
    rule_for(5, base, e)
}

/// Arity-6 rule membership; base must be 5-uniform.
pub fn member_k6(base: &EdgeSet, e: &[u64]) -> Result<bool, LiftError> {
    rule_for(6, base, e)
}

/// General rule for arity >= 7, inferred from the edge length.
pub fn member_general(base: &EdgeSet, e: &[u64]) -> Result<bool, LiftError> {
    if e.len() < 7 {
        return Err(LiftError::DedicatedRule { k: e.len() });
    }
    rule_for(e.len(), base, e)
}

fn rule_for(k: usize, base: &EdgeSet, e: &[u64]) -> Result<bool, LiftError> {
    LiftRule::new(k, base.clone())?.contains(e)
}

/// One-line pointer to a lift: target arity, base ground width, base path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftDescriptor {
    pub k: usize,
    pub n: u64,
    pub base_path: String,
}

impl LiftDescriptor {
    /// Canonical form: `lift k N base=<path>`.
    pub fn write(&self) -> String {
        format!("lift {} {} base={}\n", self.k, self.n, self.base_path)
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut lines = content_lines(text);
        let (no, line) = lines.next().ok_or_else(|| ParseError::new(1, "empty input"))?;
        let mut it = line.split_whitespace();
        if it.next() != Some("lift") {
            return Err(ParseError::new(no, "expected `lift` header"));
        }
        let k = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| ParseError::new(no, "missing lift arity"))?;
        let n = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| ParseError::new(no, "missing base ground width"))?;
        let base_path = it
            .next()
            .and_then(|t| t.strip_prefix("base="))
            .ok_or_else(|| ParseError::new(no, "missing base=<path>"))?
            .to_string();
        if base_path.is_empty() {
            return Err(ParseError::new(no, "empty base path"));
        }
        if let Some(extra) = it.next() {
            return Err(ParseError::new(no, format!("unexpected token `{extra}`")));
        }
        if let Some((no, _)) = lines.next() {
            return Err(ParseError::new(no, "descriptor must be a single line"));
        }
        Ok(LiftDescriptor { k, n, base_path })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClaimId {
    /// Arity 6, m=3 with the second delta a local max: both single-deletion
    /// tuples f\a3, f\a4 have exactly one local monotone.
    Mono,
    /// A (k+2)-clique of any lift (k >= 6) with non-monotone deltas has no
    /// four consecutive strictly monotone deltas.
    Four,
    /// Arity 5, the two stated shapes: the dominated middle delta survives
    /// deletion of the middle vertex as a local monotone.
    Mono2,
}

impl ClaimId {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "mono" => Some(ClaimId::Mono),
            "four" => Some(ClaimId::Four),
            "mono2" => Some(ClaimId::Mono2),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ClaimId::Mono => "mono",
            ClaimId::Four => "four",
            ClaimId::Mono2 => "mono2",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClaimVerdict {
    Holds,
    /// Hypothesis unsatisfied; distinct from a violation.
    NotApplicable,
    Violated(Counterexample),
}

/// Checks one claim on a concrete tuple. `Four` infers k from the arity
/// (arity = k+2) and takes cliqueness under the complete base, which covers
/// membership under every base.
pub fn claim_check(which: ClaimId, vertices: &[u64]) -> Result<ClaimVerdict, LiftError> {
    validate_sorted(vertices)?;
    match which {
        ClaimId::Mono => claim_mono(vertices),
        ClaimId::Four => claim_four(vertices),
        ClaimId::Mono2 => claim_mono2(vertices),
    }
}

fn claim_mono(f: &[u64]) -> Result<ClaimVerdict, LiftError> {
    if f.len() != 6 {
        return Err(LiftError::ClaimArity { got: f.len(), need: 6 });
    }
    let p = DeltaProfile::new(f)?;
    let applicable = p.extrema_count() == 3 && p.labels()[1] == PositionLabel::LocalMax;
    if !applicable {
        return Ok(ClaimVerdict::NotApplicable);
    }
    for drop in [2usize, 3] {
        let mut sub = f.to_vec();
        sub.remove(drop);
        let q = DeltaProfile::new(&sub)?;
        if q.monotone_count() != 1 {
            return Ok(ClaimVerdict::Violated(Counterexample {
                vertices: f.to_vec(),
                note: format!(
                    "dropping vertex index {drop} leaves {} local monotones, expected 1",
                    q.monotone_count()
                ),
            }));
        }
    }
    Ok(ClaimVerdict::Holds)
}

fn claim_four(a: &[u64]) -> Result<ClaimVerdict, LiftError> {
    if a.len() < 8 {
        return Err(LiftError::ClaimArity { got: a.len(), need: 8 });
    }
    let k = a.len() - 2;
    let deltas: Vec<u32> = DeltaProfile::new(a)?.deltas().to_vec();
    let monotone = deltas.windows(2).all(|w| w[0] < w[1]) || deltas.windows(2).all(|w| w[0] > w[1]);
    if monotone {
        return Ok(ClaimVerdict::NotApplicable);
    }
    // Cliqueness under the complete base.
    let mut buf = vec![0u64; k];
    let clique = all_ksubsets_hold(a, k, &mut buf, &mut |sub| {
        let mut d = [0u32; MAX_LIFT_ARITY];
        deltas_into(sub, &mut d[..k - 1]);
        member_complete_base(k, &d[..k - 1])
    });
    if !clique {
        return Ok(ClaimVerdict::NotApplicable);
    }
    for (i, w) in deltas.windows(4).enumerate() {
        if w.windows(2).all(|p| p[0] < p[1]) || w.windows(2).all(|p| p[0] > p[1]) {
            return Ok(ClaimVerdict::Violated(Counterexample {
                vertices: a.to_vec(),
                note: format!("deltas {}..{} form a monotone run of length 4", i, i + 3),
            }));
        }
    }
    Ok(ClaimVerdict::Holds)
}

fn claim_mono2(f: &[u64]) -> Result<ClaimVerdict, LiftError> {
    if f.len() != 5 {
        return Err(LiftError::ClaimArity { got: f.len(), need: 5 });
    }
    let d: Vec<u32> = DeltaProfile::new(f)?.deltas().to_vec();
    let peak_case = d[0] < d[1] && d[1] > d[2] && d[2] < d[3] && d[1] < d[3];
    let valley_case = d[0] > d[1] && d[1] < d[2] && d[2] > d[3] && d[0] > d[2];
    let expected = if peak_case {
        d[1]
    } else if valley_case {
        d[2]
    } else {
        return Ok(ClaimVerdict::NotApplicable);
    };
    let mut sub = f.to_vec();
    sub.remove(2);
    let q = DeltaProfile::new(&sub)?;
    let ok = q.labels()[1] == PositionLabel::LocalMonotone && q.deltas()[1] == expected;
    if ok {
        Ok(ClaimVerdict::Holds)
    } else {
        Ok(ClaimVerdict::Violated(Counterexample {
            vertices: f.to_vec(),
            note: format!(
                "expected delta {expected} to survive as a local monotone, found {:?} {}",
                q.labels()[1],
                q.deltas()[1]
            ),
        }))
    }
}

fn all_ksubsets_hold(set: &[u64], k: usize, buf: &mut [u64], f: &mut impl FnMut(&[u64]) -> bool) -> bool {
    fn rec(set: &[u64], k: usize, from: usize, depth: usize, buf: &mut [u64], f: &mut impl FnMut(&[u64]) -> bool) -> bool {
        if depth == k {
            return f(&buf[..k]);
        }
        for i in from..=set.len() - (k - depth) {
            buf[depth] = set[i];
            if !rec(set, k, i + 1, depth + 1, buf, f) {
                return false;
            }
        }
        true
    }
    if k > set.len() {
        return true;
    }
    rec(set, k, 0, 0, buf, f)
}

/// Which shape the three chosen maxima formed in the arity-6 build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaximaShape {
    MonotoneIncreasing,
    MonotoneDecreasing,
    Valley,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum XKind {
    /// Needs 4t local extrema and a peak among the first 2t local maxima.
    K5 { t: usize },
    K6,
    /// k >= 7.
    General { k: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XWitness {
    pub vertices: Vec<u64>,
    /// Recorded for the arity-6 build; None otherwise.
    pub shape: Option<MaximaShape>,
}

/// Assembles a (k+1)-subset of `a` every one of whose k-subsets is a member
/// under the arity-k rule, regardless of the base. Extrema positions are
/// consumed in increasing delta-position order; failures are loud and carry
/// the counts found.
pub fn build_x(kind: XKind, a: &[u64]) -> Result<XWitness, LiftError> {
    let profile = DeltaProfile::new(a)?;
    let deltas = profile.deltas();
    let labels = profile.labels();
    let extrema = profile.extrema_positions();
    let minima: Vec<usize> = extrema
        .iter()
        .copied()
        .filter(|&i| labels[i] == PositionLabel::LocalMin)
        .collect();
    let maxima: Vec<usize> = extrema
        .iter()
        .copied()
        .filter(|&i| labels[i] == PositionLabel::LocalMax)
        .collect();

    let witness = match kind {
        XKind::K5 { t } => {
            let need = 4 * t;
            if extrema.len() < need {
                return Err(LiftError::InsufficientExtrema {
                    found: extrema.len(),
                    need,
                });
            }
            let peaks = &maxima[..(2 * t).min(maxima.len())];
            debug_assert_eq!(peaks.len(), 2 * t, "4t alternating extrema hold 2t maxima");
            let mut chosen = None;
            for l in 1..peaks.len().saturating_sub(1) {
                if deltas[peaks[l - 1]] < deltas[peaks[l]] && deltas[peaks[l]] > deltas[peaks[l + 1]] {
                    chosen = Some(l);
                    break;
                }
            }
            let l = chosen.ok_or(LiftError::PeakNotFound { count: 2 * t })?;
            let (jp, jc, jn) = (peaks[l - 1], peaks[l], peaks[l + 1]);
            let ip = min_between(&minima, jp, jc);
            let iq = min_between(&minima, jc, jn);
            XWitness {
                vertices: vec![a[jp], a[ip], a[ip + 1], a[iq], a[iq + 1], a[jn + 1]],
                shape: None,
            }
        }
        XKind::K6 => {
            if extrema.len() < 8 {
                return Err(LiftError::InsufficientExtrema {
                    found: extrema.len(),
                    need: 8,
                });
            }
            debug_assert!(maxima.len() >= 4, "8 alternating extrema hold 4 maxima");
            let m4 = &maxima[..4];
            // Two adjacent peak-shaped triples would need d[k2] both above and
            // below d[k3]; the first or the second triple is usable.
            let start = if !is_peak(deltas, m4[0], m4[1], m4[2]) { 0 } else { 1 };
            let (k1, k2, k3) = (m4[start], m4[start + 1], m4[start + 2]);
            debug_assert!(!is_peak(deltas, k1, k2, k3));
            let shape = if deltas[k1] < deltas[k2] && deltas[k2] < deltas[k3] {
                MaximaShape::MonotoneIncreasing
            } else if deltas[k1] > deltas[k2] && deltas[k2] > deltas[k3] {
                MaximaShape::MonotoneDecreasing
            } else {
                MaximaShape::Valley
            };
            let l2 = min_between(&minima, k1, k2);
            let l3 = min_between(&minima, k2, k3);
            XWitness {
                vertices: vec![a[k1 - 1], a[k1], a[l2], a[l2 + 1], a[l3], a[l3 + 1], a[k3 + 1]],
                shape: Some(shape),
            }
        }
        XKind::General { k } => {
            if k < 7 {
                return Err(LiftError::DedicatedRule { k });
            }
            if extrema.len() < k + 2 {
                return Err(LiftError::InsufficientExtrema {
                    found: extrema.len(),
                    need: k + 2,
                });
            }
            let window = &extrema[..k + 2];
            let mut verts = Vec::with_capacity(k + 1);
            for &i in window.iter().filter(|&&i| labels[i] == PositionLabel::LocalMin) {
                verts.push(a[i]);
                verts.push(a[i + 1]);
                if verts.len() >= k + 1 {
                    break;
                }
            }
            verts.truncate(k + 1);
            debug_assert_eq!(verts.len(), k + 1, "k+2 alternating extrema hold enough minima");
            XWitness { vertices: verts, shape: None }
        }
    };
    debug_assert!(witness.vertices.windows(2).all(|w| w[0] < w[1]));
    Ok(witness)
}

fn is_peak(deltas: &[u32], a: usize, b: usize, c: usize) -> bool {
    deltas[a] < deltas[b] && deltas[b] > deltas[c]
}

/// The unique local minimum position strictly between two consecutive maxima.
fn min_between(minima: &[usize], lo: usize, hi: usize) -> usize {
    let hits: Vec<usize> = minima.iter().copied().filter(|&i| lo < i && i < hi).collect();
    debug_assert_eq!(hits.len(), 1, "consecutive maxima bracket exactly one minimum");
    hits[0]
}
