//! Automata for the languages generated by splicing systems.
//!
//! The automaton starts from the trimmed axiom automaton plus, for every
//! rule, one fresh path of states spelling the word the rule inserts (the
//! bridge v of a triple, u1v2 of a quadruple). Saturation then only adds
//! ε-edges: from every state where a left splice point sits into the entry
//! of a rule path, and from the exit of the path to every state where a
//! right splice point sits. The state set never grows, so the fixpoint is
//! reached after at most |states|² rounds.

use std::collections::{BTreeMap, HashMap};

use fixedbitset::FixedBitSet;

use crate::regular::{Dfa, Nfa};
use crate::splicing::{Rule, SplicingSystem};
use crate::{Error, Result};

/// Which end of a rule path an added ε-edge attaches to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    IntoEntry,
    OutOfExit,
}

/// Why an ε-edge was added.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Provenance {
    /// Index into the system's rule list.
    pub rule: usize,
    pub side: Side,
    /// 1-based saturation round.
    pub round: usize,
}

/// The fresh states spelling one rule's insert word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RulePath {
    pub entry: usize,
    pub exit: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AddedEdge {
    pub from: usize,
    pub to: usize,
    pub provenance: Provenance,
}

/// Saturated automaton for L(I, R).
#[derive(Debug, Clone)]
pub struct ClosureAutomaton {
    base: Nfa,
    axiom_states: usize,
    paths: Vec<RulePath>,
    added: BTreeMap<(usize, usize), Provenance>,
    trace: Vec<Vec<AddedEdge>>,
}

impl ClosureAutomaton {
    /// Axiom states followed by the rule paths, without saturation edges.
    pub fn base(&self) -> &Nfa {
        &self.base
    }

    /// Number of leading base states that come from the axiom automaton.
    pub fn axiom_state_count(&self) -> usize {
        self.axiom_states
    }

    pub fn rule_paths(&self) -> &[RulePath] {
        &self.paths
    }

    pub fn added_epsilon(&self) -> &BTreeMap<(usize, usize), Provenance> {
        &self.added
    }

    /// Rounds that added at least one edge.
    pub fn rounds(&self) -> usize {
        self.trace.len()
    }

    /// Edges added per round, in insertion order.
    pub fn trace(&self) -> &[Vec<AddedEdge>] {
        &self.trace
    }

    pub fn state_count(&self) -> usize {
        self.base.state_count()
    }

    /// The saturated automaton as a plain NFA.
    pub fn to_nfa(&self) -> Nfa {
        let mut epsilon = self.base.epsilon_edges().clone();
        epsilon.extend(self.added.keys().copied());
        Nfa::from_parts_unchecked(
            self.base.alphabet().clone(),
            self.base.state_count(),
            self.base.initial().clone(),
            self.base.accepting().clone(),
            self.base.edges().clone(),
            epsilon,
        )
    }

    pub fn accepts(&self, word: &str) -> Result<bool> {
        self.to_nfa().accepts(word)
    }

    /// Minimal DFA of the generated language.
    pub fn language(&self) -> Dfa {
        self.to_nfa().to_min_dfa()
    }

    /// Graphviz rendering with saturation edges colored per rule.
    pub fn to_dot(&self) -> String {
        const PALETTE: [&str; 8] = [
            "red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "teal",
        ];
        self.to_nfa().to_dot_with(|p, q| {
            self.added
                .get(&(p, q))
                .map(|prov| PALETTE[prov.rule % PALETTE.len()].to_string())
        })
    }
}

/// Saturation state: adjacency of the growing automaton.
struct Graph {
    n: usize,
    k: usize,
    labeled: Vec<Vec<usize>>,
    rev_labeled: Vec<Vec<usize>>,
    eps: Vec<Vec<usize>>,
    rev_eps: Vec<Vec<usize>>,
}

impl Graph {
    fn new(base: &Nfa) -> Graph {
        let n = base.state_count();
        let k = base.alphabet().len();
        let mut g = Graph {
            n,
            k,
            labeled: vec![Vec::new(); n * k],
            rev_labeled: vec![Vec::new(); n * k],
            eps: vec![Vec::new(); n],
            rev_eps: vec![Vec::new(); n],
        };
        for &(p, a, q) in base.edges() {
            g.labeled[p * k + a].push(q);
            g.rev_labeled[q * k + a].push(p);
        }
        for &(p, q) in base.epsilon_edges() {
            g.add_epsilon(p, q);
        }
        g
    }

    fn add_epsilon(&mut self, p: usize, q: usize) {
        self.eps[p].push(q);
        self.rev_eps[q].push(p);
    }

    fn close(&self, mut set: FixedBitSet, backward: bool) -> FixedBitSet {
        let adj = if backward { &self.rev_eps } else { &self.eps };
        let mut stack: Vec<usize> = set.ones().collect();
        while let Some(s) = stack.pop() {
            for &t in &adj[s] {
                if !set.put(t) {
                    stack.push(t);
                }
            }
        }
        set
    }

    /// Every state reachable from `set` (or co-reachable, if `backward`).
    fn reach(&self, mut set: FixedBitSet, backward: bool) -> FixedBitSet {
        let (eps, lab) = if backward {
            (&self.rev_eps, &self.rev_labeled)
        } else {
            (&self.eps, &self.labeled)
        };
        let mut stack: Vec<usize> = set.ones().collect();
        while let Some(s) = stack.pop() {
            let succ = eps[s].iter().chain(lab[s * self.k..(s + 1) * self.k].iter().flatten());
            for &t in succ {
                if !set.put(t) {
                    stack.push(t);
                }
            }
        }
        set
    }

    fn set_of(&self, states: impl IntoIterator<Item = usize>) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(self.n);
        set.extend(states);
        set
    }

    /// States reachable from the ε-closed `set` by a path spelling `word`.
    fn post(&self, set: &FixedBitSet, word: &[usize]) -> FixedBitSet {
        let mut cur = set.clone();
        for &a in word {
            let mut next = FixedBitSet::with_capacity(self.n);
            for s in cur.ones() {
                next.extend(self.labeled[s * self.k + a].iter().copied());
            }
            cur = self.close(next, false);
        }
        cur
    }

    /// States with a path spelling `word` into the backward-ε-closed `set`.
    fn pre(&self, set: &FixedBitSet, word: &[usize]) -> FixedBitSet {
        let mut cur = set.clone();
        for &a in word.iter().rev() {
            let mut prev = FixedBitSet::with_capacity(self.n);
            for s in cur.ones() {
                prev.extend(self.rev_labeled[s * self.k + a].iter().copied());
            }
            cur = self.close(prev, true);
        }
        cur
    }
}

/// Per-rule words, encoded once. A quadruple (u1,v1;u2,v2) is handled as
/// the triple (u1v1, u2v2; u1v2): a left point must be a state every prefix
/// into which may serve as x1, which a state sitting after u1 cannot promise
/// once different prefixes share it.
struct Sites {
    left: Vec<usize>,
    right: Vec<usize>,
    path: Vec<usize>,
}

fn sites(sys: &SplicingSystem, r: &Rule) -> Result<Sites> {
    let enc = |w: String| sys.alphabet().encode(&w);
    Ok(match r {
        Rule::Pixton(p) => Sites {
            left: enc(p.u1.clone())?,
            right: enc(p.u2.clone())?,
            path: enc(p.v.clone())?,
        },
        Rule::Classic(c) => Sites {
            left: enc(format!("{}{}", c.u1, c.v1))?,
            right: enc(format!("{}{}", c.u2, c.v2))?,
            path: enc(format!("{}{}", c.u1, c.v2))?,
        },
    })
}

/// Builds the saturated closure automaton of `sys`.
pub fn build_closure(sys: &SplicingSystem) -> Result<ClosureAutomaton> {
    let axioms = sys.axiom_automaton()?;
    if !axioms.is_finite_language() {
        return Err(Error::InfiniteAxioms);
    }
    let axioms = axioms.trim();
    let alphabet = sys.alphabet().clone();
    let axiom_states = axioms.state_count();

    let rule_sites = sys
        .rules()
        .iter()
        .map(|r| sites(sys, r))
        .collect::<Result<Vec<_>>>()?;

    let mut state_count = axiom_states;
    let mut edges = axioms.edges().clone();
    let mut paths = Vec::with_capacity(sys.rules().len());
    for s in &rule_sites {
        let word = &s.path;
        let entry = state_count;
        for (i, &a) in word.iter().enumerate() {
            edges.insert((entry + i, a, entry + i + 1));
        }
        state_count += word.len() + 1;
        paths.push(RulePath {
            entry,
            exit: entry + word.len(),
        });
    }
    let base = Nfa::from_parts_unchecked(
        alphabet,
        state_count,
        axioms.initial().clone(),
        axioms.accepting().clone(),
        edges,
        axioms.epsilon_edges().clone(),
    );

    let mut graph = Graph::new(&base);
    let mut added: BTreeMap<(usize, usize), Provenance> = BTreeMap::new();
    let mut trace = Vec::new();
    let round_limit = state_count * state_count;
    loop {
        let round = trace.len() + 1;
        assert!(round <= round_limit + 1, "saturation exceeded |states|² rounds");
        let reach = graph.reach(graph.set_of(base.initial().iter().copied()), false);
        let coreach = graph.reach(graph.set_of(base.accepting().iter().copied()), true);
        let mut post_memo: HashMap<&[usize], FixedBitSet> = HashMap::new();
        let mut pre_memo: HashMap<&[usize], FixedBitSet> = HashMap::new();

        let mut new_edges = Vec::new();
        for (i, s) in rule_sites.iter().enumerate() {
            let path = paths[i];
            let mut left = reach.clone();
            left.intersect_with(
                pre_memo
                    .entry(&s.left)
                    .or_insert_with(|| graph.pre(&coreach, &s.left)),
            );
            let mut right = post_memo
                .entry(&s.right)
                .or_insert_with(|| graph.post(&reach, &s.right))
                .clone();
            right.intersect_with(&coreach);

            for p in left.ones() {
                new_edges.push((p, path.entry, i, Side::IntoEntry));
            }
            for q in right.ones() {
                new_edges.push((path.exit, q, i, Side::OutOfExit));
            }
        }

        let mut this_round = Vec::new();
        for (from, to, rule, side) in new_edges {
            if from == to || base.epsilon_edges().contains(&(from, to)) || added.contains_key(&(from, to)) {
                continue;
            }
            let provenance = Provenance { rule, side, round };
            added.insert((from, to), provenance);
            graph.add_epsilon(from, to);
            this_round.push(AddedEdge { from, to, provenance });
        }
        if this_round.is_empty() {
            break;
        }
        trace.push(this_round);
    }

    Ok(ClosureAutomaton {
        base,
        axiom_states,
        paths,
        added,
        trace,
    })
}

/// Minimal DFA of L(I, R).
pub fn closure_language(sys: &SplicingSystem) -> Result<Dfa> {
    Ok(build_closure(sys)?.language())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regular::{parse_regex, Alphabet};
    use crate::splicing::{Axioms, ClassicRule, PixtonRule, Variant};

    fn example_one() -> SplicingSystem {
        SplicingSystem::classic(
            Alphabet::new("ab").unwrap(),
            vec!["ab".into()],
            vec![ClassicRule::new("a", "b", "", "ab"), ClassicRule::new("ab", "", "a", "b")],
        )
        .unwrap()
    }

    fn lang(re: &str, sigma: &Alphabet) -> Dfa {
        parse_regex(re, sigma).unwrap().to_min_dfa()
    }

    #[test]
    fn example_one_generates_running_language() {
        let sys = example_one();
        let d = closure_language(&sys).unwrap();
        assert!(d.equivalent(&lang("a+b+", sys.alphabet())).unwrap().0);
        assert_eq!(d.state_count(), 4);
    }

    #[test]
    fn marker_system() {
        let sigma = Alphabet::new("ab").unwrap();
        let sys = SplicingSystem::classic(
            sigma.clone(),
            vec!["b".into(), "baa".into()],
            vec![ClassicRule::new("baa", "", "b", "")],
        )
        .unwrap();
        let d = closure_language(&sys).unwrap();
        assert_eq!(d.equivalent(&lang("b(aa)*", &sigma)).unwrap(), (true, None));
    }

    #[test]
    fn no_rules_means_axioms() {
        let sigma = Alphabet::new("ab").unwrap();
        let sys = SplicingSystem::classic(sigma.clone(), vec!["ab".into(), "b".into()], vec![]).unwrap();
        let c = build_closure(&sys).unwrap();
        assert_eq!(c.rounds(), 0);
        assert!(c.language().equivalent(&lang("ab|b", &sigma)).unwrap().0);

        let eps = SplicingSystem::classic(sigma.clone(), vec!["".into()], vec![]).unwrap();
        assert!(closure_language(&eps).unwrap().equivalent(&lang("()", &sigma)).unwrap().0);
    }

    #[test]
    fn pixton_doubling_bridge() {
        let sigma = Alphabet::new("c").unwrap();
        let sys = SplicingSystem::pixton(sigma.clone(), vec!["c".into()], vec![PixtonRule::new("c", "c", "cc")]).unwrap();
        assert!(closure_language(&sys).unwrap().equivalent(&lang("c+", &sigma)).unwrap().0);
    }

    #[test]
    fn state_set_is_fixed_and_edges_attach_to_paths() {
        let sys = example_one();
        let c = build_closure(&sys).unwrap();
        assert_eq!(c.state_count(), c.axiom_state_count() + 4 + 4);
        for (&(p, q), prov) in c.added_epsilon() {
            let path = c.rule_paths()[prov.rule];
            match prov.side {
                Side::IntoEntry => assert_eq!(q, path.entry),
                Side::OutOfExit => assert_eq!(p, path.exit),
            }
        }
        assert!(c.accepts("ab").unwrap());
        let total: usize = c.trace().iter().map(Vec::len).sum();
        assert_eq!(total, c.added_epsilon().len());
        assert!(c.to_dot().contains("color="));
    }

    #[test]
    fn automaton_axioms_are_consumed_directly() {
        let sigma = Alphabet::new("ab").unwrap();
        let axioms = Nfa::from_words(&sigma, &["ab"]).unwrap();
        let sys = SplicingSystem::new(
            Variant::Classic,
            sigma.clone(),
            Axioms::Automaton(axioms),
            example_one().rules().to_vec(),
        )
        .unwrap();
        assert!(closure_language(&sys).unwrap().equivalent(&lang("a+b+", &sigma)).unwrap().0);
    }

    #[test]
    fn shared_states_do_not_leak_prefixes() {
        // 0 -a,b-> 1 -c-> 2 and 0 -a-> 3 -d-> 2: state 1 is entered by both a and b
        let sigma = Alphabet::new("abcd").unwrap();
        let axioms = Nfa::new(
            sigma.clone(),
            4,
            [0].into(),
            [2].into(),
            [(0, 0, 1), (0, 1, 1), (1, 2, 2), (0, 0, 3), (3, 3, 2)].into(),
            Default::default(),
        )
        .unwrap();
        let sys = SplicingSystem::new(
            Variant::Classic,
            sigma.clone(),
            Axioms::Automaton(axioms),
            vec![ClassicRule::new("a", "c", "a", "d").into()],
        )
        .unwrap();
        let c = build_closure(&sys).unwrap();
        assert!(!c.accepts("bd").unwrap());
        assert!(c.language().equivalent(&lang("ac|bc|ad", &sigma)).unwrap().0);
    }

    #[test]
    fn empty_axiom_set() {
        let sigma = Alphabet::new("a").unwrap();
        let sys = SplicingSystem::pixton(sigma, vec![], vec![PixtonRule::new("", "", "a")]).unwrap();
        assert!(closure_language(&sys).unwrap().is_empty());
    }
}
