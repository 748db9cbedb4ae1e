//! Exact Luthar-Passi (HeLP) machinery for torsion units of integral group
//! rings: cyclotomic arithmetic, character-table ingestion, constraint
//! generation, integer enumeration and the order-by-order pipeline with the
//! prime-graph verdict.

pub mod arith;
pub mod cyclo;
pub mod lp;
pub mod pipeline;
pub mod solver;
pub mod tables;

/// Arbitrary-precision integer used throughout.
pub type Int = num_bigint::BigInt;
/// Exact rational with arbitrary-precision components.
pub type Rat = num_rational::BigRational;

pub use cyclo::Cyclotomic;
pub use lp::{AffineForm, ConstraintSystem, PartialAugmentation, PowerProfile};
pub use pipeline::{OrderStatus, OrderVerdict, Pipeline, PipelineConfig};
pub use solver::SolutionSet;
pub use tables::{CharacterTable, TableBundle};
