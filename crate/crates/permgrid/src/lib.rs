//! Computing with permutation classes: pattern containment, merges of
//! classes, grid classes and griddings, staircase constructions, exact
//! enumeration, minimal-basis discovery, and spectral growth-rate formulas.
//!
//! The `permgrid` binary exposes every operation on the command line; see
//! the crate README for the expression DSL and the reproduction suite.

pub mod class;
pub mod enumerate;
pub mod grid;
pub mod merge;
pub mod oracle;
pub mod parse;
pub mod perm;
pub mod reproduce;
pub mod spectral;

pub use class::{sort_perms, ClassError, ClassExpr};
pub use enumerate::{
    binomial, check_supermultiplicative, compare_classes, enumerate_class, enumerate_compiled,
    find_basis, growth_estimates, max_intersection_length, rational_series, ClassComparison,
    CountSequence, EnumError, Enumeration, GrowthEstimate, MaxIntersection, SeriesError,
};
pub use grid::{
    build_increasing_staircase, build_spiral_staircase, gridding_exists, staircase_counts,
    staircase_proxy_counts, validate_staircase, GridMatrix, Gridding, StaircaseKind,
    StaircaseReport, StaircaseSpec,
};
pub use merge::{
    inequality_check, merge_member, merge_upper_bound, BoundError, Color, Coloring, InequalityRow,
};
pub use oracle::{Budget, BudgetExceeded, CompiledClass, Oracle, DEFAULT_NODE_BUDGET};
pub use parse::{parse_class_expr, ParseError};
pub use perm::{all_permutations, PermError, Permutation, Symmetry};
pub use spectral::{
    format_real, merge_gr_bound, t_step_staircase_gr, toeplitz_eigenvalues, top_eigenvalue,
    GammaMatrix, SpectralError, ToeplitzSpec,
};
