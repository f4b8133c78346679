//! Stepping-up machinery over binary vertex labels.
//!
//! Vertices are integers; `delta(a, b)` is the most significant bit where two
//! labels differ. That single function induces surprisingly rigid structure
//! on consecutive-delta sequences (module [`delta`]), supports a 4-uniform
//! red/blue coloring lifted from a 3-uniform base (module [`coloring`]), and
//! drives membership rules that lift (k-1)-uniform hypergraphs on [0, N) to
//! k-uniform ones on [0, 2^N) (module [`lift`]). Around those sit exact
//! verifiers (clique search, independence numbers, density scans), seeded
//! local search for the small base objects the lifts consume, and JSON
//! certificates recording what was checked over which scope.
//!
//! Everything is deterministic for fixed seeds, including parallel scans:
//! merges are associative and tie-break by rank or seed order, never by
//! thread schedule.

pub mod cert;
pub mod combin;
pub mod coloring;
pub mod delta;
pub mod files;
pub mod hypergraph;
pub mod lift;
pub mod search;

pub use cert::{sha256_hex, Certificate, Construction, Scope, Verdict, TOOL_VERSION};
pub use coloring::{
    check_monotone_transfer, find_mono_clique, lift_coloring, max_mono_clique, max_red_in_p_sets, maximal_mono_cliques,
    verify_base_phi, CliqueReport, Color, ColorTable, ColoringError, DensityReport, LiftedColoring,
    PhiReport, PhiViolation, TransferOutcome, TwoColoring,
};
pub use delta::{
    check_property, classify_deltas, consecutive_deltas, delta, delta_pattern_realizable,
    extract_monotone, extrema_count, for_each_realizable_pattern, realize_delta_pattern,
    Counterexample, DeltaError, DeltaProfile, Direction, MonotoneExtraction, PositionLabel,
    PropertyVerdict, StepProperty,
};
pub use files::ParseError;
pub use hypergraph::{
    alpha_s, find_clique, find_clique_in, AlphaRequest, AlphaResult, EdgeSet, Hypergraph,
    HypergraphError,
};
pub use lift::{
    build_x, claim_check, clause_flags, clause_role, ClaimId, ClaimVerdict, ClauseRole,
    LiftDescriptor, LiftError, LiftRule, MaximaShape, XKind, XWitness,
};
pub use search::{
    log_text, search_base_coloring, search_base_hypergraph, ColoringSearch, HypergraphSearch,
    LogRecord, SearchBudget, SearchError,
};
