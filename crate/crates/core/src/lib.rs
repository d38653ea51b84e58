//! Exact arithmetic for compact simple Lie groups: root data, weight systems,
//! centers, centralizers of maximal regular subgroups and branching rules
//! labelled by relative congruence classes.

pub mod branching;
pub mod error;
pub mod fixture;
pub mod golden;
pub mod lie_core;
pub mod linalg;
pub mod snf;
pub mod subalgebra;
pub mod torus;
pub mod weyl_weights;

pub use branching::{BranchTarget, BranchingResult, LabeledSummand};
pub use error::{Error, Result};
pub use lie_core::{AlgebraType, ExtendedDiagram, Series, SimpleAlgebra};
pub use subalgebra::{CentralizerDescription, Embedding, SemisimpleAlgebra};
pub use torus::{CongruenceForm, CoweightVector, FiniteAbelianGroup, TorusElement};
pub use weyl_weights::{Orbit, Weight, WeightSystem};
