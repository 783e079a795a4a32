//! Concept learning from ostensive definitions over boolean perceptual
//! symbols, and an agent built on it.
//!
//! * [`pss`]: vocabularies of sensor/actuator bits and decision states.
//! * [`concept`]: concepts as disjunctions of implicants, with extension,
//!   counting, weakness ordering and conjunction.
//! * [`induction`] and [`oracle`]: the weakest necessary-and-sufficient
//!   concept for a labelled example set, and an exhaustive reference.
//! * [`agency`]: abduction, goal-constrained decisions with explanations,
//!   counterfactuals, learning from an objective function.
//! * [`semiosis`]: sign/interpretant/referent triads, interpretation,
//!   conveyance, vocabulary bootstrapping, mirror activation, empathy.
//! * [`norms`]: majority aggregation of labellers into an ethics concept.
//! * [`formats`], [`scenario`], [`harness`]: files, environments, runs.
//!
//! Heavy inner loops go through [`exec`], which uses rayon when the
//! `parallel` feature is on (the default) and runs inline otherwise.

pub mod agency;
pub mod bits;
pub mod concept;
pub mod error;
pub mod exec;
pub mod formats;
pub mod harness;
pub mod induction;
pub mod norms;
pub mod oracle;
pub mod pss;
pub mod rng;
pub mod scenario;
pub mod semiosis;
pub mod testkit;

pub use bits::Bits;
pub use concept::{Concept, Implicant, Literal};
pub use error::{Error, Result};
pub use induction::OstensiveDefinition;
pub use pss::{Channel, DecisionState, Vocabulary};
