use std::collections::{HashMap, VecDeque};

use super::{Alphabet, Nfa};
use crate::{Error, Result};

/// Complete deterministic automaton; `transitions[state * |Σ| + symbol]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    initial: usize,
    accepting: Vec<bool>,
    transitions: Vec<usize>,
}

impl Dfa {
    pub fn new(
        alphabet: Alphabet,
        initial: usize,
        accepting: Vec<bool>,
        transitions: Vec<usize>,
    ) -> Result<Dfa> {
        let n = accepting.len();
        if n == 0 || initial >= n {
            return Err(Error::InvalidAutomaton("initial state out of range".into()));
        }
        if transitions.len() != n * alphabet.len() {
            return Err(Error::InvalidAutomaton("transition table is not complete".into()));
        }
        if transitions.iter().any(|&t| t >= n) {
            return Err(Error::InvalidAutomaton("transition target out of range".into()));
        }
        Ok(Self::from_parts_unchecked(alphabet, initial, accepting, transitions))
    }

    pub(crate) fn from_parts_unchecked(
        alphabet: Alphabet,
        initial: usize,
        accepting: Vec<bool>,
        transitions: Vec<usize>,
    ) -> Dfa {
        Dfa {
            alphabet,
            initial,
            accepting,
            transitions,
        }
    }

    /// Accepts nothing.
    pub fn empty(alphabet: &Alphabet) -> Dfa {
        Self::from_parts_unchecked(alphabet.clone(), 0, vec![false], vec![0; alphabet.len()])
    }

    /// Accepts Σ*.
    pub fn universal(alphabet: &Alphabet) -> Dfa {
        Self::from_parts_unchecked(alphabet.clone(), 0, vec![true], vec![0; alphabet.len()])
    }

    /// Accepts Σ^{<bound}: a length counter with a sink.
    pub fn shorter_than(alphabet: &Alphabet, bound: usize) -> Dfa {
        let k = alphabet.len();
        let sink = bound;
        let mut transitions = Vec::with_capacity((bound + 1) * k);
        for s in 0..=bound {
            let next = if s + 1 >= bound { sink } else { s + 1 };
            transitions.extend(std::iter::repeat(next).take(k));
        }
        let accepting = (0..=bound).map(|s| s < bound).collect();
        Self::from_parts_unchecked(alphabet.clone(), 0, accepting, transitions)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.accepting.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        self.accepting[state]
    }

    pub fn next(&self, state: usize, symbol: usize) -> usize {
        self.transitions[state * self.alphabet.len() + symbol]
    }

    /// State reached from `state` by reading `word` (symbol indices).
    pub fn run_from(&self, state: usize, word: &[usize]) -> usize {
        word.iter().fold(state, |s, &a| self.next(s, a))
    }

    pub fn accepts(&self, word: &str) -> Result<bool> {
        let w = self.alphabet.encode(word)?;
        Ok(self.accepting[self.run_from(self.initial, &w)])
    }

    pub fn to_nfa(&self) -> Nfa {
        let k = self.alphabet.len();
        let edges = (0..self.state_count())
            .flat_map(|s| (0..k).map(move |a| (s, a)))
            .map(|(s, a)| (s, a, self.next(s, a)))
            .collect();
        let accepting = (0..self.state_count()).filter(|&s| self.accepting[s]).collect();
        Nfa::from_parts_unchecked(
            self.alphabet.clone(),
            self.state_count(),
            [self.initial].into(),
            accepting,
            edges,
            Default::default(),
        )
    }

    pub fn to_json(&self) -> String {
        self.to_nfa().to_json()
    }

    /// Renumbers reachable states in BFS order from the initial state,
    /// following symbols in alphabet order. Unreachable states are dropped.
    pub fn canonical(&self) -> Dfa {
        let k = self.alphabet.len();
        let mut id = vec![usize::MAX; self.state_count()];
        let mut order = vec![self.initial];
        id[self.initial] = 0;
        let mut i = 0;
        while i < order.len() {
            let s = order[i];
            for a in 0..k {
                let t = self.next(s, a);
                if id[t] == usize::MAX {
                    id[t] = order.len();
                    order.push(t);
                }
            }
            i += 1;
        }
        let transitions = order
            .iter()
            .flat_map(|&s| (0..k).map(move |a| (s, a)))
            .map(|(s, a)| id[self.next(s, a)])
            .collect();
        let accepting = order.iter().map(|&s| self.accepting[s]).collect();
        Self::from_parts_unchecked(self.alphabet.clone(), 0, accepting, transitions)
    }

    /// Minimal complete DFA with canonical numbering.
    pub fn minimize(&self) -> Dfa {
        let d = self.canonical();
        let n = d.state_count();
        let k = d.alphabet.len();
        // Moore refinement: classes are numbered by first occurrence so the
        // loop can stop as soon as the class count is stable.
        let mut class: Vec<usize> = d.accepting.iter().map(|&acc| usize::from(acc)).collect();
        let mut class_count = 0;
        loop {
            let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
            let mut next = Vec::with_capacity(n);
            for s in 0..n {
                let mut sig = Vec::with_capacity(k + 1);
                sig.push(class[s]);
                sig.extend((0..k).map(|a| class[d.next(s, a)]));
                let fresh = ids.len();
                next.push(*ids.entry(sig).or_insert(fresh));
            }
            let count = ids.len();
            class = next;
            if count == class_count {
                break;
            }
            class_count = count;
        }
        let mut transitions = vec![0; class_count * k];
        let mut accepting = vec![false; class_count];
        for s in 0..n {
            accepting[class[s]] = d.accepting[s];
            for a in 0..k {
                transitions[class[s] * k + a] = class[d.next(s, a)];
            }
        }
        Self::from_parts_unchecked(d.alphabet.clone(), class[d.initial], accepting, transitions)
            .canonical()
    }

    pub fn complement(&self) -> Dfa {
        let mut d = self.clone();
        d.accepting.iter_mut().for_each(|a| *a = !*a);
        d
    }

    fn check_alphabet(&self, other: &Dfa) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch {
                left: self.alphabet.to_string(),
                right: other.alphabet.to_string(),
            });
        }
        Ok(())
    }

    /// Reachable product automaton, BFS-numbered.
    pub fn product(&self, other: &Dfa, accept: impl Fn(bool, bool) -> bool) -> Result<Dfa> {
        self.check_alphabet(other)?;
        let k = self.alphabet.len();
        let mut ids: HashMap<(usize, usize), usize> = HashMap::new();
        let mut pairs = vec![(self.initial, other.initial)];
        ids.insert(pairs[0], 0);
        let mut transitions = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            for a in 0..k {
                let t = (self.next(p, a), other.next(q, a));
                let id = *ids.entry(t).or_insert_with(|| {
                    pairs.push(t);
                    pairs.len() - 1
                });
                transitions.push(id);
            }
            i += 1;
        }
        let accepting = pairs
            .iter()
            .map(|&(p, q)| accept(self.accepting[p], other.accepting[q]))
            .collect();
        Ok(Self::from_parts_unchecked(self.alphabet.clone(), 0, accepting, transitions))
    }

    pub fn intersect(&self, other: &Dfa) -> Result<Dfa> {
        self.product(other, |a, b| a && b)
    }

    pub fn union(&self, other: &Dfa) -> Result<Dfa> {
        self.product(other, |a, b| a || b)
    }

    pub fn difference(&self, other: &Dfa) -> Result<Dfa> {
        self.product(other, |a, b| a && !b)
    }

    /// The length-lexicographically least accepted word, if any.
    pub fn least_word(&self) -> Option<String> {
        // BFS with alphabet-ordered expansion discovers each state by its
        // least word; the first accepting discovery is the global least.
        let k = self.alphabet.len();
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; self.state_count()];
        let mut seen = vec![false; self.state_count()];
        let mut queue = VecDeque::from([self.initial]);
        seen[self.initial] = true;
        while let Some(s) = queue.pop_front() {
            if self.accepting[s] {
                let mut word = Vec::new();
                let mut cur = s;
                while let Some((prev, a)) = parent[cur] {
                    word.push(a);
                    cur = prev;
                }
                word.reverse();
                return Some(self.alphabet.decode(&word));
            }
            for a in 0..k {
                let t = self.next(s, a);
                if !seen[t] {
                    seen[t] = true;
                    parent[t] = Some((s, a));
                    queue.push_back(t);
                }
            }
        }
        None
    }

    pub fn is_empty(&self) -> bool {
        self.least_word().is_none()
    }

    /// Language equality; on inequality also returns the least word of the
    /// symmetric difference.
    pub fn equivalent(&self, other: &Dfa) -> Result<(bool, Option<String>)> {
        let witness = self.product(other, |a, b| a != b)?.least_word();
        Ok((witness.is_none(), witness))
    }

    /// Inclusion L(self) ⊆ L(other); on failure returns the least word of
    /// L(self) \ L(other).
    pub fn is_subset_of(&self, other: &Dfa) -> Result<(bool, Option<String>)> {
        let witness = self.difference(other)?.least_word();
        Ok((witness.is_none(), witness))
    }

    /// Accepted words of length at most `max_len`, length-lexicographically sorted.
    pub fn enumerate_words(&self, max_len: usize) -> Vec<String> {
        let n = self.state_count();
        let k = self.alphabet.len();
        // distance to acceptance, for pruning
        let mut dist = vec![usize::MAX; n];
        let mut rev = vec![Vec::new(); n];
        for s in 0..n {
            for a in 0..k {
                rev[self.next(s, a)].push(s);
            }
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&s| self.accepting[s]).collect();
        for &s in &queue {
            dist[s] = 0;
        }
        while let Some(s) = queue.pop_front() {
            for &p in &rev[s] {
                if dist[p] == usize::MAX {
                    dist[p] = dist[s] + 1;
                    queue.push_back(p);
                }
            }
        }
        let mut out = Vec::new();
        let mut layer: Vec<(String, usize)> = Vec::new();
        if dist[self.initial] <= max_len {
            layer.push((String::new(), self.initial));
        }
        for len in 0..=max_len {
            out.extend(
                layer
                    .iter()
                    .filter(|(_, s)| self.accepting[*s])
                    .map(|(w, _)| w.clone()),
            );
            if len == max_len {
                break;
            }
            let remaining = max_len - len - 1;
            let mut next = Vec::new();
            for (w, s) in &layer {
                for a in 0..k {
                    let t = self.next(*s, a);
                    if dist[t] <= remaining {
                        let mut x = w.clone();
                        x.push(self.alphabet.symbol(a));
                        next.push((x, t));
                    }
                }
            }
            layer = next;
        }
        out
    }

    /// True iff the accepted language is finite.
    pub fn is_finite_language(&self) -> bool {
        self.to_nfa().is_finite_language()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regular::parse_regex;
    use std::collections::BTreeSet;

    fn lang(re: &str, sigma: &str) -> Dfa {
        let s = Alphabet::new(sigma).unwrap();
        parse_regex(re, &s).unwrap().to_min_dfa()
    }

    #[test]
    fn determinize_examples() {
        let a = Alphabet::new("a").unwrap();
        let eps = parse_regex("()", &a).unwrap().determinize();
        assert_eq!(eps.state_count(), 2);
        assert!(eps.accepts("").unwrap() && !eps.accepts("a").unwrap());

        // two-state parity NFA for (aa)*
        let parity = Nfa::new(
            a.clone(),
            2,
            [0].into(),
            [0].into(),
            [(0, 0, 1), (1, 0, 0)].into(),
            BTreeSet::new(),
        )
        .unwrap();
        assert_eq!(parity.determinize().state_count(), 2);

        let none = Nfa::empty(&a).determinize();
        assert!(none.is_empty());
    }

    #[test]
    fn minimize_examples() {
        assert_eq!(lang("(aa)*", "a").state_count(), 2);
        let apbp = lang("a+b+", "ab");
        assert_eq!(apbp.state_count(), 4);
        // canonical numbering: 0 start, 1 after a, 2 sink (after b), 3 accepting
        assert_eq!(apbp.next(0, 0), 1);
        assert_eq!(apbp.next(0, 1), 2);
        assert!(apbp.is_accepting(3));
        assert_eq!(lang("(a|b)*", "ab").state_count(), 1);
    }

    #[test]
    fn minimize_is_idempotent() {
        let d = lang("(a|b)*abb(a|())", "ab");
        assert_eq!(d.minimize(), d);
    }

    #[test]
    fn boolean_examples() {
        let l = lang("a+b+", "ab");
        assert!(l.intersect(&l.complement()).unwrap().is_empty());
        let even = lang("(aa)*", "a");
        let all = lang("a*", "a");
        assert!(even.intersect(&all).unwrap().equivalent(&even).unwrap().0);
        let odd = all.difference(&even).unwrap();
        assert_eq!(odd.enumerate_words(6), vec!["a", "aaa", "aaaaa"]);
        assert!(odd.equivalent(&lang("a(aa)*", "a")).unwrap().0);
        let both = even.union(&odd).unwrap();
        assert!(both.equivalent(&all).unwrap().0);
    }

    #[test]
    fn alphabet_mismatch() {
        let x = lang("a", "a");
        let y = lang("a", "ab");
        assert!(matches!(x.intersect(&y), Err(Error::AlphabetMismatch { .. })));
        assert!(x.equivalent(&y).is_err());
    }

    #[test]
    fn equivalence_witness() {
        let (eq, w) = lang("a*", "a").equivalent(&lang("(aa)*", "a")).unwrap();
        assert!(!eq);
        assert_eq!(w.as_deref(), Some("a"));
        let l = lang("a+b+", "ab");
        assert_eq!(l.equivalent(&l.minimize()).unwrap(), (true, None));
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(lang("a+b+", "ab").enumerate_words(3), vec!["ab", "aab", "abb"]);
        assert_eq!(lang("(a|b)*", "ab").enumerate_words(0), vec![""]);
        assert_eq!(lang("(aa)*", "a").enumerate_words(5), vec!["", "aa", "aaaa"]);
    }

    #[test]
    fn length_counter() {
        let s = Alphabet::new("ab").unwrap();
        let d = Dfa::shorter_than(&s, 2);
        assert_eq!(d.enumerate_words(4), vec!["", "a", "b"]);
        assert!(Dfa::shorter_than(&s, 0).is_empty());
    }

    #[test]
    fn constructor_validates() {
        let s = Alphabet::new("ab").unwrap();
        assert!(Dfa::new(s.clone(), 0, vec![true], vec![0]).is_err());
        assert!(Dfa::new(s.clone(), 1, vec![true], vec![0, 0]).is_err());
        assert!(Dfa::new(s, 0, vec![true], vec![0, 0]).is_ok());
    }
}
