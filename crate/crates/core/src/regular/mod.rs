//! Regular-language plumbing: alphabets, regexes, NFAs and complete DFAs.

mod alphabet;
mod dfa;
mod nfa;
mod regex;

pub use alphabet::{length_lex_cmp, Alphabet};
pub use dfa::Dfa;
pub use nfa::{AutomatonJson, Nfa};
pub use regex::{parse_regex, Regex};
