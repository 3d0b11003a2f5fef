//! Menu preferences under multiple information structures.
//!
//! A decision maker evaluates menus of acts by the value of choosing from
//! them after learning. With several candidate information structures the
//! comparison can be unanimous ([`criteria::bml_compare`]), justified by any
//! one structure ([`criteria::jml_compare`]) or hierarchical
//! ([`criteria::hml_compare`]). The crate evaluates these criteria exactly
//! over rationals, audits their axioms on generated corpora, checks
//! comparative statics between credal sets, and builds complete transitive
//! rankings from them.

pub mod audit;
pub mod comparative;
pub mod criteria;
pub mod evaluation;
pub mod generate;
pub mod hull;
pub mod model;
pub mod rational;
pub mod rationalize;

pub use criteria::{Criterion, Preference};
pub use model::{
    constant_act, mean_posterior, validate_instance, Act, Collection, CredalSet, InfoStructure,
    Instance, Lottery, Menu, ModelError, Posterior, Verdict,
};
pub use rational::Rational;
