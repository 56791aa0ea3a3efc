//! Splicing rules, systems, single splicing steps and a bounded brute-force
//! closure.

mod oracle;
mod rule;
mod system;

pub use oracle::{bounded_closure, sigma_step};
pub use rule::{splice_classic, splice_pixton, ClassicRule, PixtonRule, Rule, Variant};
pub use system::{Axioms, SplicingSystem};
