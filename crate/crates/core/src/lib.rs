//! Sharp two-sided bounds for the spectral radius of nonnegative
//! irreducible matrices of the form `B = A + diag(t)`, with exact
//! diagnosis of when a bound is attained, applied to the adjacency,
//! signless Laplacian, distance, and distance signless Laplacian
//! matrices of graphs and digraphs.
//!
//! * [`matcore`] — dense nonnegative matrices, irreducibility, and the
//!   power iteration oracle every bound is validated against.
//! * [`bounds`] — the pair-bound engine: `f(i,j)` over supported pairs,
//!   the two equality conditions, scale recovery, and synthesis of
//!   systems that attain the bound exactly.
//! * [`graphs`] — graphs and digraphs, edge-list I/O, degree and
//!   distance statistics, family generators.
//! * [`spectra`] — the eight spectrum families, equality labels, the
//!   baseline bound catalog, comparison tables, and the bipartite
//!   degree-chain search.

pub mod bounds;
mod connectivity;
pub mod graphs;
pub mod matcore;
mod ser;
pub mod spectra;

pub use bounds::{
    check_condition_i, check_condition_ii, corollary_bounds, diagnose_equality, f_value,
    prior_equality_condition, synthesize_condition_ii, theorem_bounds, AttainedSide, BoundResult,
    BoundsError, ConditionTwo, EqualityDiagnosis, PairValue, ShiftedSystem,
};
pub use graphs::{
    build_system, classify, generate, parse_graph, AnyGraph, Classification, DegreeStats, Digraph,
    DistanceStats, Family, Graph, GraphError,
};
pub use matcore::{
    is_irreducible, row_sum_bounds, row_sums, spectral_radius, spectral_radius_default,
    weighted_row_sums, MatError, NonnegMatrix, RowSumBounds, SpectralResult,
};
pub use spectra::{
    baseline_catalog, bounds_for, bounds_for_with, compare_report, search_p34, BaselineValue,
    CompareRow, CompareTable, EqualityLabels, MatrixKind, SearchSummary, SearchWitness,
    SpectraError, SpectrumKind, SpectrumReport, Tolerances,
};
