//! # splicekit
//!
//! Finite splicing systems (classic quadruple rules and Pixton triple rules),
//! closure automata for the languages they generate, and an exact decision
//! procedure for whether a regular language is a splicing language.
//!
//! The pieces build on each other:
//!
//! * [`regular`]: alphabets, a tiny regex dialect, NFAs, complete DFAs and the
//!   usual boolean algebra, equivalence with length-lexicographically least
//!   witnesses, bounded enumeration.
//! * [`syntactic`]: syntactic monoids (as transition monoids of minimal DFAs)
//!   and the pumping factorization/normalization on top of them.
//! * [`splicing`]: rules, systems, single splicing steps and a bounded
//!   brute-force closure used as an oracle.
//! * [`closure`]: a saturation construction producing an automaton for the
//!   generated language of any finite system.
//! * [`respect`]: the monoid test deciding whether a rule respects a regular
//!   language, plus rule extension utilities.
//! * [`decider`]: canonical systems and the final yes/no verdict.
//!
//! ```
//! use splicekit::regular::{Alphabet, parse_regex};
//! use splicekit::splicing::{ClassicRule, SplicingSystem};
//! use splicekit::closure::closure_language;
//!
//! let sigma = Alphabet::new("ab").unwrap();
//! let system = SplicingSystem::classic(
//!     sigma.clone(),
//!     vec!["ab".into()],
//!     vec![ClassicRule::new("a", "b", "", "ab"), ClassicRule::new("ab", "", "a", "b")],
//! )
//! .unwrap();
//! let generated = closure_language(&system).unwrap();
//! let target = parse_regex("a+b+", &sigma).unwrap().to_min_dfa();
//! assert!(generated.equivalent(&target).unwrap().0);
//! ```

pub mod closure;
pub mod decider;
mod error;
pub mod regular;
pub mod respect;
pub mod splicing;
pub mod syntactic;

pub use error::{Error, Result};
