#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::rngs::StdRng;
use rand::Rng;
use splicekit::regular::{Alphabet, Dfa};
use splicekit::splicing::{bounded_closure, ClassicRule, PixtonRule, Rule, SplicingSystem, Variant};

pub fn sigma(symbols: &str) -> Alphabet {
    Alphabet::new(symbols).unwrap()
}

/// A complete DFA with `1..=max_states` states and random transitions.
pub fn random_dfa(rng: &mut StdRng, sigma: &Alphabet, max_states: usize) -> Dfa {
    let n = rng.gen_range(1..=max_states);
    let accepting = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    let transitions = (0..n * sigma.len()).map(|_| rng.gen_range(0..n)).collect();
    Dfa::new(sigma.clone(), 0, accepting, transitions).unwrap()
}

/// Random language whose minimal DFA has at most `max_states` states.
pub fn random_language(rng: &mut StdRng, sigma: &Alphabet, max_states: usize) -> Dfa {
    random_dfa(rng, sigma, max_states).minimize()
}

pub fn random_word(rng: &mut StdRng, sigma: &Alphabet, max_len: usize) -> String {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| sigma.symbol(rng.gen_range(0..sigma.len()))).collect()
}

pub fn random_rule(rng: &mut StdRng, sigma: &Alphabet, variant: Variant, max_len: usize) -> Rule {
    let mut w = || random_word(rng, sigma, max_len);
    match variant {
        Variant::Classic => ClassicRule::new(&w(), &w(), &w(), &w()).into(),
        Variant::Pixton => PixtonRule::new(&w(), &w(), &w()).into(),
    }
}

pub fn random_system(
    rng: &mut StdRng,
    sigma: &Alphabet,
    variant: Variant,
    max_axioms: usize,
    axiom_len: usize,
    max_rules: usize,
    component_len: usize,
) -> SplicingSystem {
    let axioms = (0..rng.gen_range(1..=max_axioms))
        .map(|_| random_word(rng, sigma, axiom_len))
        .collect();
    let rules = (0..rng.gen_range(0..=max_rules))
        .map(|_| random_rule(rng, sigma, variant, component_len))
        .collect();
    SplicingSystem::new(variant, sigma.clone(), splicekit::splicing::Axioms::Words(axioms), rules).unwrap()
}

/// Words of length ≤ n of L(I,R) by the bounded oracle, raising the cap
/// from the default until two consecutive caps agree.
pub fn stabilized_oracle(sys: &SplicingSystem, n: usize) -> BTreeSet<String> {
    let mut cap = sys.default_cap_len(n).unwrap();
    let mut prev = bounded_closure(sys, n, cap).unwrap();
    loop {
        cap += 1;
        let next = bounded_closure(sys, n, cap).unwrap();
        if next == prev {
            return next;
        }
        prev = next;
    }
}

/// Syntactic congruence by brute force over contexts (x, y) with
/// |x|, |y| ≤ `context_len`, for a membership test given as a DFA.
///
/// For each word u the signature lists, for every context prefix x, which
/// suffixes y make xuy accepted; two words are congruent iff their
/// signatures coincide.
pub struct BruteCongruence {
    dfa: Dfa,
    contexts: Vec<Vec<usize>>,
    /// Per DFA state, an id of the set of suffixes y it accepts.
    suffix_class: Vec<usize>,
}

impl BruteCongruence {
    pub fn new(dfa: &Dfa, context_len: usize) -> BruteCongruence {
        let sigma = dfa.alphabet();
        let contexts: Vec<Vec<usize>> = sigma
            .words_shorter_than(context_len + 1)
            .iter()
            .map(|w| sigma.encode(w).unwrap())
            .collect();
        let mut ids: Vec<Vec<bool>> = Vec::new();
        let suffix_class = (0..dfa.state_count())
            .map(|q| {
                let accepted: Vec<bool> = contexts
                    .iter()
                    .map(|y| dfa.is_accepting(dfa.run_from(q, y)))
                    .collect();
                match ids.iter().position(|s| *s == accepted) {
                    Some(i) => i,
                    None => {
                        ids.push(accepted);
                        ids.len() - 1
                    }
                }
            })
            .collect();
        BruteCongruence { dfa: dfa.clone(), contexts, suffix_class }
    }

    pub fn signature(&self, u: &str) -> Vec<usize> {
        let u = self.dfa.alphabet().encode(u).unwrap();
        self.contexts
            .iter()
            .map(|x| {
                let p = self.dfa.run_from(self.dfa.initial(), x);
                self.suffix_class[self.dfa.run_from(p, &u)]
            })
            .collect()
    }

    /// Number of classes met by words of length ≤ max_len.
    pub fn classes_up_to(&self, max_len: usize) -> usize {
        let words = self.dfa.alphabet().words_shorter_than(max_len + 1);
        words.iter().map(|w| self.signature(w)).collect::<BTreeSet<_>>().len()
    }
}

/// Brute-force congruence for a membership predicate: every context word
/// pair up to `context_len` is tried literally.
pub fn predicate_classes(
    sigma: &Alphabet,
    member: impl Fn(&str) -> bool,
    word_len: usize,
    context_len: usize,
) -> usize {
    let contexts = sigma.words_shorter_than(context_len + 1);
    let words = sigma.words_shorter_than(word_len + 1);
    let sig = |u: &str| -> Vec<bool> {
        let mut s = Vec::with_capacity(contexts.len() * contexts.len());
        for x in &contexts {
            for y in &contexts {
                s.push(member(&format!("{x}{u}{y}")));
            }
        }
        s
    };
    words.iter().map(|w| sig(w)).collect::<BTreeSet<_>>().len()
}

pub fn occurrences(word: &str, pattern: &str) -> Vec<usize> {
    if pattern.len() > word.len() {
        return Vec::new();
    }
    (0..=word.len() - pattern.len()).filter(|&i| word[i..].starts_with(pattern)).collect()
}
