use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::{Alphabet, Dfa};
use crate::{Error, Result};

/// Nondeterministic automaton with ε-edges.
///
/// Labeled edges are `(from, symbol index, to)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nfa {
    alphabet: Alphabet,
    state_count: usize,
    initial: BTreeSet<usize>,
    accepting: BTreeSet<usize>,
    edges: BTreeSet<(usize, usize, usize)>,
    epsilon: BTreeSet<(usize, usize)>,
}

/// Wire form of an automaton; key order is part of the format.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct AutomatonJson {
    pub alphabet: Vec<String>,
    pub states: usize,
    pub initial: Vec<usize>,
    pub accepting: Vec<usize>,
    pub edges: Vec<(usize, String, usize)>,
    pub epsilon: Vec<(usize, usize)>,
}

impl Nfa {
    /// Validating constructor.
    pub fn new(
        alphabet: Alphabet,
        state_count: usize,
        initial: BTreeSet<usize>,
        accepting: BTreeSet<usize>,
        edges: BTreeSet<(usize, usize, usize)>,
        epsilon: BTreeSet<(usize, usize)>,
    ) -> Result<Nfa> {
        let bad_state = |s: usize| s >= state_count;
        if let Some(s) = initial.iter().chain(&accepting).copied().find(|&s| bad_state(s)) {
            return Err(Error::InvalidAutomaton(format!("state {s} out of range")));
        }
        for &(p, a, q) in &edges {
            if bad_state(p) || bad_state(q) {
                return Err(Error::InvalidAutomaton(format!("edge ({p},{a},{q}) out of range")));
            }
            if a >= alphabet.len() {
                return Err(Error::InvalidAutomaton(format!("symbol index {a} out of range")));
            }
        }
        if let Some(&(p, q)) = epsilon.iter().find(|(p, q)| bad_state(*p) || bad_state(*q)) {
            return Err(Error::InvalidAutomaton(format!("epsilon edge ({p},{q}) out of range")));
        }
        Ok(Self::from_parts_unchecked(alphabet, state_count, initial, accepting, edges, epsilon))
    }

    pub(crate) fn from_parts_unchecked(
        alphabet: Alphabet,
        state_count: usize,
        initial: BTreeSet<usize>,
        accepting: BTreeSet<usize>,
        edges: BTreeSet<(usize, usize, usize)>,
        epsilon: BTreeSet<(usize, usize)>,
    ) -> Nfa {
        Nfa {
            alphabet,
            state_count,
            initial,
            accepting,
            edges,
            epsilon,
        }
    }

    /// The empty language.
    pub fn empty(alphabet: &Alphabet) -> Nfa {
        Self::from_parts_unchecked(
            alphabet.clone(),
            1,
            [0].into(),
            BTreeSet::new(),
            BTreeSet::new(),
            BTreeSet::new(),
        )
    }

    /// Prefix-tree automaton accepting exactly `words`.
    pub fn from_words<S: AsRef<str>>(alphabet: &Alphabet, words: &[S]) -> Result<Nfa> {
        let mut children: HashMap<(usize, usize), usize> = HashMap::new();
        let mut edges = BTreeSet::new();
        let mut accepting = BTreeSet::new();
        let mut count = 1;
        for w in words {
            let mut s = 0;
            for a in alphabet.encode(w.as_ref())? {
                s = *children.entry((s, a)).or_insert_with(|| {
                    count += 1;
                    edges.insert((s, a, count - 1));
                    count - 1
                });
            }
            accepting.insert(s);
        }
        Ok(Self::from_parts_unchecked(
            alphabet.clone(),
            count,
            [0].into(),
            accepting,
            edges,
            BTreeSet::new(),
        ))
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.state_count
    }

    pub fn initial(&self) -> &BTreeSet<usize> {
        &self.initial
    }

    pub fn accepting(&self) -> &BTreeSet<usize> {
        &self.accepting
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize, usize)> {
        &self.edges
    }

    pub fn epsilon_edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.epsilon
    }

    fn adjacency(&self) -> Adjacency {
        Adjacency::new(self)
    }

    pub fn accepts(&self, word: &str) -> Result<bool> {
        let word = self.alphabet.encode(word)?;
        let adj = self.adjacency();
        let mut current = adj.closure(self.initial.iter().copied());
        for a in word {
            let next: Vec<usize> = current
                .iter()
                .flat_map(|&s| adj.step(s, a).iter().copied())
                .collect();
            current = adj.closure(next);
        }
        Ok(current.iter().any(|s| self.accepting.contains(s)))
    }

    /// Subset construction; the result is complete, numbered in BFS order.
    pub fn determinize(&self) -> Dfa {
        let adj = self.adjacency();
        let k = self.alphabet.len();
        let start: Vec<usize> = adj.closure(self.initial.iter().copied()).into_iter().collect();
        let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut sets = vec![start.clone()];
        ids.insert(start, 0);
        let mut transitions = Vec::new();
        let mut i = 0;
        while i < sets.len() {
            for a in 0..k {
                let next: Vec<usize> = adj
                    .closure(sets[i].iter().flat_map(|&s| adj.step(s, a).iter().copied()))
                    .into_iter()
                    .collect();
                let id = match ids.get(&next) {
                    Some(&id) => id,
                    None => {
                        ids.insert(next.clone(), sets.len());
                        sets.push(next);
                        sets.len() - 1
                    }
                };
                transitions.push(id);
            }
            i += 1;
        }
        let accepting = sets
            .iter()
            .map(|set| set.iter().any(|s| self.accepting.contains(s)))
            .collect();
        Dfa::from_parts_unchecked(self.alphabet.clone(), 0, accepting, transitions)
    }

    /// Determinize then minimize.
    pub fn to_min_dfa(&self) -> Dfa {
        self.determinize().minimize()
    }

    /// States reachable from an initial state.
    pub fn reachable(&self) -> BTreeSet<usize> {
        self.adjacency().closure_all(self.initial.iter().copied(), false)
    }

    /// States from which an accepting state is reachable.
    pub fn coreachable(&self) -> BTreeSet<usize> {
        self.adjacency().closure_all(self.accepting.iter().copied(), true)
    }

    /// Restricts to useful (reachable and co-reachable) states, renumbered in
    /// increasing order of the original ids.
    pub fn trim(&self) -> Nfa {
        let reach = self.reachable();
        let co = self.coreachable();
        let keep: Vec<usize> = reach.intersection(&co).copied().collect();
        let map: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let rename = |s: &usize| map.get(s).copied();
        let initial = self.initial.iter().filter_map(rename).collect();
        let accepting = self.accepting.iter().filter_map(rename).collect();
        let edges = self
            .edges
            .iter()
            .filter_map(|(p, a, q)| Some((rename(p)?, *a, rename(q)?)))
            .collect();
        let epsilon = self
            .epsilon
            .iter()
            .filter_map(|(p, q)| Some((rename(p)?, rename(q)?)))
            .collect();
        if keep.is_empty() {
            return Nfa::empty(&self.alphabet);
        }
        Self::from_parts_unchecked(self.alphabet.clone(), keep.len(), initial, accepting, edges, epsilon)
    }

    /// True iff the accepted language is finite, i.e. no cycle passes through
    /// a useful state.
    pub fn is_finite_language(&self) -> bool {
        let t = self.trim();
        let n = t.state_count;
        let mut out = vec![Vec::new(); n];
        let mut indegree = vec![0usize; n];
        for &(p, _, q) in &t.edges {
            out[p].push(q);
            indegree[q] += 1;
        }
        for &(p, q) in &t.epsilon {
            out[p].push(q);
            indegree[q] += 1;
        }
        // Kahn's algorithm; leftover states lie on a cycle.
        let mut queue: VecDeque<usize> = (0..n).filter(|&s| indegree[s] == 0).collect();
        let mut seen = 0;
        while let Some(s) = queue.pop_front() {
            seen += 1;
            for &q in &out[s] {
                indegree[q] -= 1;
                if indegree[q] == 0 {
                    queue.push_back(q);
                }
            }
        }
        seen == n
    }

    pub fn to_json_value(&self) -> AutomatonJson {
        let sym = |a: usize| self.alphabet.symbol(a).to_string();
        let mut edges: Vec<(usize, String, usize)> =
            self.edges.iter().map(|&(p, a, q)| (p, sym(a), q)).collect();
        edges.sort();
        AutomatonJson {
            alphabet: self.alphabet.symbols().iter().map(|c| c.to_string()).collect(),
            states: self.state_count,
            initial: self.initial.iter().copied().collect(),
            accepting: self.accepting.iter().copied().collect(),
            edges,
            epsilon: self.epsilon.iter().copied().collect(),
        }
    }

    /// Compact JSON in the fixed key order.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("automaton serializes")
    }

    pub fn from_json_value(value: &AutomatonJson) -> Result<Nfa> {
        let mut symbols = Vec::with_capacity(value.alphabet.len());
        for s in &value.alphabet {
            let mut chars = s.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) => symbols.push(c),
                _ => {
                    return Err(Error::InvalidAutomaton(format!(
                        "alphabet entry {s:?} is not a single symbol"
                    )))
                }
            }
        }
        let alphabet = Alphabet::from_symbols(symbols)?;
        let mut edges = BTreeSet::new();
        for (p, s, q) in &value.edges {
            let mut chars = s.chars();
            let a = match (chars.next(), chars.next()) {
                (Some(c), None) => alphabet.index_of(c),
                _ => None,
            }
            .ok_or_else(|| Error::InvalidAutomaton(format!("edge label {s:?} not in alphabet")))?;
            if !edges.insert((*p, a, *q)) {
                return Err(Error::InvalidAutomaton(format!("duplicate edge ({p},{s:?},{q})")));
            }
        }
        let set = |v: &[usize], what: &str| -> Result<BTreeSet<usize>> {
            let out: BTreeSet<usize> = v.iter().copied().collect();
            if out.len() != v.len() {
                return Err(Error::InvalidAutomaton(format!("duplicate {what} state")));
            }
            Ok(out)
        };
        let epsilon: BTreeSet<(usize, usize)> = value.epsilon.iter().copied().collect();
        if epsilon.len() != value.epsilon.len() {
            return Err(Error::InvalidAutomaton("duplicate epsilon edge".into()));
        }
        Nfa::new(
            alphabet,
            value.states,
            set(&value.initial, "initial")?,
            set(&value.accepting, "accepting")?,
            edges,
            epsilon,
        )
    }

    pub fn from_json(text: &str) -> Result<Nfa> {
        let value: AutomatonJson = serde_json::from_str(text)?;
        Self::from_json_value(&value)
    }

    /// Graphviz rendering.
    pub fn to_dot(&self) -> String {
        self.to_dot_with(|_, _| None)
    }

    /// Graphviz rendering with an optional color per ε-edge.
    pub fn to_dot_with(&self, epsilon_color: impl Fn(usize, usize) -> Option<String>) -> String {
        let mut out = String::from("digraph automaton {\n  rankdir=LR;\n  node [shape=circle];\n");
        for &s in &self.accepting {
            out.push_str(&format!("  {s} [shape=doublecircle];\n"));
        }
        for &s in &self.initial {
            out.push_str(&format!("  init{s} [shape=point];\n  init{s} -> {s};\n"));
        }
        for &(p, a, q) in &self.edges {
            out.push_str(&format!("  {p} -> {q} [label=\"{}\"];\n", self.alphabet.symbol(a)));
        }
        for &(p, q) in &self.epsilon {
            match epsilon_color(p, q) {
                Some(c) => out.push_str(&format!(
                    "  {p} -> {q} [label=\"ε\", style=dashed, color=\"{c}\"];\n"
                )),
                None => out.push_str(&format!("  {p} -> {q} [label=\"ε\", style=dashed];\n")),
            }
        }
        out.push_str("}\n");
        out
    }
}

struct Adjacency {
    k: usize,
    labeled: Vec<Vec<usize>>,
    eps: Vec<Vec<usize>>,
    rev_labeled: Vec<Vec<usize>>,
    rev_eps: Vec<Vec<usize>>,
}

impl Adjacency {
    fn new(n: &Nfa) -> Adjacency {
        let k = n.alphabet.len();
        let mut labeled = vec![Vec::new(); n.state_count * k];
        let mut rev_labeled = vec![Vec::new(); n.state_count * k];
        let mut eps = vec![Vec::new(); n.state_count];
        let mut rev_eps = vec![Vec::new(); n.state_count];
        for &(p, a, q) in &n.edges {
            labeled[p * k + a].push(q);
            rev_labeled[q * k + a].push(p);
        }
        for &(p, q) in &n.epsilon {
            eps[p].push(q);
            rev_eps[q].push(p);
        }
        Adjacency {
            k,
            labeled,
            eps,
            rev_labeled,
            rev_eps,
        }
    }

    fn step(&self, s: usize, a: usize) -> &[usize] {
        &self.labeled[s * self.k + a]
    }

    fn closure(&self, seeds: impl IntoIterator<Item = usize>) -> BTreeSet<usize> {
        let mut seen = BTreeSet::new();
        let mut stack: Vec<usize> = seeds.into_iter().collect();
        while let Some(s) = stack.pop() {
            if seen.insert(s) {
                stack.extend(self.eps[s].iter().copied());
            }
        }
        seen
    }

    /// Reachability over all edges, forward or backward.
    fn closure_all(&self, seeds: impl IntoIterator<Item = usize>, backward: bool) -> BTreeSet<usize> {
        let (lab, eps) = if backward {
            (&self.rev_labeled, &self.rev_eps)
        } else {
            (&self.labeled, &self.eps)
        };
        let mut seen = BTreeSet::new();
        let mut stack: Vec<usize> = seeds.into_iter().collect();
        while let Some(s) = stack.pop() {
            if seen.insert(s) {
                stack.extend(eps[s].iter().copied());
                for a in 0..self.k {
                    stack.extend(lab[s * self.k + a].iter().copied());
                }
            }
        }
        seen
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regular::parse_regex;

    #[test]
    fn json_format_is_fixed() {
        let sigma = Alphabet::new("ab").unwrap();
        let n = Nfa::new(
            sigma,
            3,
            [0].into(),
            [2].into(),
            [(1, 1, 2), (0, 0, 1)].into(),
            [(0, 2)].into(),
        )
        .unwrap();
        assert_eq!(
            n.to_json(),
            r#"{"alphabet":["a","b"],"states":3,"initial":[0],"accepting":[2],"edges":[[0,"a",1],[1,"b",2]],"epsilon":[[0,2]]}"#
        );
        assert_eq!(Nfa::from_json(&n.to_json()).unwrap(), n);
    }

    #[test]
    fn json_rejects_bad_input() {
        for text in [
            r#"{"alphabet":["ab"],"states":1,"initial":[0],"accepting":[],"edges":[],"epsilon":[]}"#,
            r#"{"alphabet":["a"],"states":1,"initial":[1],"accepting":[],"edges":[],"epsilon":[]}"#,
            r#"{"alphabet":["a"],"states":2,"initial":[0],"accepting":[],"edges":[[0,"b",1]],"epsilon":[]}"#,
            r#"{"alphabet":["a"],"states":2,"initial":[0],"accepting":[],"edges":[[0,"a",1],[0,"a",1]],"epsilon":[]}"#,
            r#"{"alphabet":["a"],"states":1,"initial":[0],"accepting":[]}"#,
            r#"{"alphabet":["a","a"],"states":1,"initial":[0],"accepting":[],"edges":[],"epsilon":[]}"#,
        ] {
            assert!(Nfa::from_json(text).is_err(), "{text}");
        }
    }

    #[test]
    fn finiteness() {
        let sigma = Alphabet::new("ab").unwrap();
        assert!(Nfa::from_words(&sigma, &["ab", "a", ""]).unwrap().is_finite_language());
        assert!(!parse_regex("a*b", &sigma).unwrap().is_finite_language());
        // a cycle on a useless state does not make the language infinite
        assert!(parse_regex("b|a*()", &sigma).unwrap().trim().state_count() > 0);
        let dead_loop = Nfa::new(
            sigma.clone(),
            3,
            [0].into(),
            [1].into(),
            [(0, 0, 1), (0, 1, 2), (2, 1, 2)].into(),
            BTreeSet::new(),
        )
        .unwrap();
        assert!(dead_loop.is_finite_language());
    }

    #[test]
    fn trie_accepts_exactly_its_words() {
        let sigma = Alphabet::new("ab").unwrap();
        let n = Nfa::from_words(&sigma, &["b", "baa"]).unwrap();
        assert!(n.accepts("b").unwrap() && n.accepts("baa").unwrap());
        assert!(!n.accepts("ba").unwrap() && !n.accepts("").unwrap());
    }

    #[test]
    fn dot_mentions_every_edge() {
        let sigma = Alphabet::new("ab").unwrap();
        let dot = parse_regex("a|b", &sigma).unwrap().to_dot();
        assert!(dot.starts_with("digraph"));
        assert!(dot.contains("label=\"a\"") && dot.contains("label=\"b\""));
    }
}
