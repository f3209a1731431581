//! Fixed points of map pairs on convex metric spaces with a binary relation.
//!
//! The crate is generic over the scalar type ([`Scalar`], implemented for
//! `f32`, `f64` and, with the default `twofloat` feature, the double-double
//! [`TwoFloat`]); the `*64` aliases below fix it to `f64`.
//!
//! * [`spaces`]: metrics, convex structures `W`, relations and sampled axiom checks.
//! * [`maps`]: pairs `(T, S)`, the averaged operator `T_λx = W(x, Tx; λ)`,
//!   contraction inequalities.
//! * [`solver`]: the alternating averaged iteration with a-priori bounds.
//! * [`stability`]: well-posedness, limit shadowing and Ulam-Hyers probes.
//! * [`expr`]: the expression grammar for user-defined maps.

// `!(x >= 0)` style guards are used on purpose: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod expr;
pub mod maps;
pub mod point;
pub mod report;
pub mod sampling;
pub mod scalar;
pub mod solver;
pub mod spaces;
pub mod stability;

pub use error::{Error, Result};
pub use maps::{
    averaged_map, b_to_lambda, check_contraction, condition_residual, estimate_min_coefficient,
    ContractionSpec, ExprMap, Family, MapPair, PairSampler, Residual, SelfMap,
};
pub use point::Point;
pub use report::{CheckReport, Status, Witness};
pub use sampling::DomainBox;
pub use scalar::Scalar;
pub use solver::{
    a_priori_bound, iterate_pair, stop_index, uniqueness_probe, verify_hypotheses, IterationTrace,
    SolveOptions,
};
pub use spaces::{
    check_convexity_inequality, check_metric_axioms, check_relation_chain, SpaceSpec,
};
pub use stability::{
    limit_shadowing_probe, make_asymptotic_sequence, ulam_hyers_probe, well_posedness_probe, Decay,
    Perturbation, PerturbedSequence,
};

pub type Point64 = Point<f64>;
pub type SpaceSpec64 = SpaceSpec<f64>;
pub type MapPair64 = MapPair<f64>;
pub type ContractionSpec64 = ContractionSpec<f64>;
pub type CheckReport64 = CheckReport<f64>;
pub type SolveOptions64 = SolveOptions<f64>;
pub type IterationTrace64 = IterationTrace<f64>;
pub type PerturbedSequence64 = PerturbedSequence<f64>;

pub type Point32 = Point<f32>;
pub type SpaceSpec32 = SpaceSpec<f32>;
pub type MapPair32 = MapPair<f32>;

/// Double-double (about 106-bit) scalar.
#[cfg(feature = "twofloat")]
pub use twofloat::TwoFloat;
#[cfg(feature = "twofloat")]
pub type SpaceSpecDd = SpaceSpec<TwoFloat>;
#[cfg(feature = "twofloat")]
pub type MapPairDd = MapPair<TwoFloat>;

/// Crate version, embedded in emitted artifacts.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
