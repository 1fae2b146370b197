//! Edmundson–Lah–Ribarič differences, their n-convexity bounds, and
//! generalized Csiszár f-divergences.
//!
//! The numerical core is the confluent divided difference
//! ([`divided_diff`]); the bound statements in [`bounds`] are sums of
//! such differences against moments of a discrete functional
//! ([`functional`]). [`oracle`] checks all of it by brute force.

pub mod bounds;
pub mod divergence;
pub mod divided_diff;
pub mod error;
pub mod function;
pub mod functional;
pub mod generators;
pub mod oracle;
pub mod par;
pub mod poly;
pub mod zipf;

pub use bounds::{
    bound, bound_tm21, bound_tm22, bracket_cor21, bracket_tm23, bracket_tm24, decompose_lemma21,
    decompose_lemma22, dispatch, BoundReport, Convexity, Decomposition, ParityCase, Theorem,
};
pub use divergence::{divergence_bounds, f_divergence, ratio_range, DivergenceReport, ProbabilityVector, RatioRange};
pub use divided_diff::{divided_difference, hermite_mn, newton_interpolant, NewtonForm, NodeMultiset};
pub use error::{Error, Result};
pub use function::{FunctionModel, Interval, Limits};
pub use functional::{DiscreteFunctional, FunctionalSpec};
pub use generators::{classify, make_generator, GeneratorKind, GeneratorSpec};
pub use oracle::{certify_convexity, ConvexityCertificate};
pub use par::Execution;
pub use zipf::{ratio_extrema, zm_divergence_bounds, ZipfMandelbrot};
