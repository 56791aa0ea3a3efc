//! Deciding whether splicing rules respect a regular language.
//!
//! A rule respects L when splicing two words of L never leaves L. For a
//! triple (u1,u2;v) this reduces to a finite check in the syntactic monoid:
//! with S1 the left contexts X of h(u1) and S2 the right contexts Y of
//! h(u2) inside the accepting set, the rule respects L iff X·h(v)·Y is
//! accepting for every X ∈ S1, Y ∈ S2. Answers depend only on the class of
//! each component, so they are cached by class tuple.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::RwLock;

use crate::regular::{Alphabet, Dfa};
use crate::splicing::{ClassicRule, PixtonRule, Rule, Variant};
use crate::syntactic::{Element, SyntacticMonoid};
use crate::{Error, Result};

/// Cache key: the variant tag plus the class of each component.
type ClassTuple = (Variant, [Element; 4]);

pub struct RespectContext {
    monoid: SyntacticMonoid,
    cache: RwLock<HashMap<ClassTuple, bool>>,
}

impl RespectContext {
    pub fn new(monoid: SyntacticMonoid) -> RespectContext {
        RespectContext {
            monoid,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn from_dfa(dfa: &Dfa) -> RespectContext {
        RespectContext::new(SyntacticMonoid::from_dfa(dfa))
    }

    pub fn monoid(&self) -> &SyntacticMonoid {
        &self.monoid
    }

    pub fn cache_len(&self) -> usize {
        self.cache.read().unwrap().len()
    }

    fn class(&self, w: &str) -> Element {
        self.monoid.class_of(w).expect("rule symbol outside the monoid alphabet")
    }

    fn cached(&self, key: ClassTuple, compute: impl FnOnce() -> bool) -> bool {
        if let Some(&hit) = self.cache.read().unwrap().get(&key) {
            return hit;
        }
        let answer = compute();
        self.cache.write().unwrap().insert(key, answer);
        answer
    }

    /// X ranges over left contexts of `left`, Y over right contexts of
    /// `right`; checks X·middle·Y ∈ accepting for all such pairs.
    fn check(&self, left: Element, right: Element, middle: Element) -> bool {
        let m = &self.monoid;
        let n = m.size();
        let mut s1 = Vec::new();
        let mut s2 = vec![false; n];
        for x in 0..n {
            let xl = m.multiply(x, left);
            if (0..n).any(|y| m.is_accepting(m.multiply(xl, y))) {
                s1.push(x);
            }
        }
        for (y, in_s2) in s2.iter_mut().enumerate() {
            *in_s2 = (0..n).any(|x| m.is_accepting(m.multiply(m.multiply(x, right), y)));
        }
        s1.iter().all(|&x| {
            let xm = m.multiply(x, middle);
            (0..n).filter(|&y| s2[y]).all(|y| m.is_accepting(m.multiply(xm, y)))
        })
    }

    pub fn respects_pixton(&self, r: &PixtonRule) -> bool {
        let c = [self.class(&r.u1), self.class(&r.u2), self.class(&r.v)];
        self.respects_classes(Variant::Pixton, &c)
    }

    pub fn respects_classic(&self, r: &ClassicRule) -> bool {
        let c = [self.class(&r.u1), self.class(&r.v1), self.class(&r.u2), self.class(&r.v2)];
        self.respects_classes(Variant::Classic, &c)
    }

    /// Respect test on component classes, in rule component order.
    pub fn respects_classes(&self, variant: Variant, c: &[Element]) -> bool {
        let m = &self.monoid;
        match variant {
            Variant::Pixton => {
                self.cached((variant, [c[0], c[1], c[2], 0]), || self.check(c[0], c[1], c[2]))
            }
            Variant::Classic => self.cached((variant, [c[0], c[1], c[2], c[3]]), || {
                self.check(m.multiply(c[0], c[1]), m.multiply(c[2], c[3]), m.multiply(c[0], c[3]))
            }),
        }
    }

    pub fn respects(&self, r: &Rule) -> bool {
        match r {
            Rule::Classic(c) => self.respects_classic(c),
            Rule::Pixton(p) => self.respects_pixton(p),
        }
    }
}

/// A splice of two words of L that leaves L.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpliceWitness {
    pub w1: String,
    pub w2: String,
    pub z: String,
}

/// Searches words of L up to `word_bound` for a splice leaving L. Finding
/// none proves nothing about longer words.
pub fn brute_respect_witness(lang: &Dfa, rule: &Rule, word_bound: usize) -> Option<SpliceWitness> {
    let sigma = lang.alphabet();
    let words = lang.enumerate_words(word_bound);
    // as a triple: z = x1·bridge·y2, and z only depends on x1 through its state
    let (site1, site2, bridge) = match rule {
        Rule::Pixton(p) => (p.u1.clone(), p.u2.clone(), p.v.clone()),
        Rule::Classic(c) => (
            format!("{}{}", c.u1, c.v1),
            format!("{}{}", c.u2, c.v2),
            format!("{}{}", c.u1, c.v2),
        ),
    };
    let occurrences = |w: &str, site: &str| -> Vec<usize> {
        (0..=w.len().saturating_sub(site.len()))
            .filter(|&i| w.len() >= site.len() && w[i..].starts_with(site))
            .collect()
    };

    let mut lefts: HashMap<usize, (String, &str)> = HashMap::new();
    let mut rights: Vec<(&str, &str)> = Vec::new();
    let mut seen_right = HashSet::new();
    for w in &words {
        for i in occurrences(w, &site1) {
            let x1 = &w[..i];
            let state = lang.run_from(lang.initial(), &sigma.encode(x1).unwrap());
            lefts.entry(state).or_insert_with(|| (x1.to_string(), w.as_str()));
        }
        for i in occurrences(w, &site2) {
            let y2 = &w[i + site2.len()..];
            if seen_right.insert(y2) {
                rights.push((y2, w.as_str()));
            }
        }
    }
    let bridge_idx = sigma.encode(&bridge).unwrap();
    let mut states: Vec<_> = lefts.into_iter().collect();
    states.sort_by(|a, b| sigma.cmp_length_lex(&a.1 .0, &b.1 .0));
    for (state, (x1, w1)) in states {
        let mid = lang.run_from(state, &bridge_idx);
        for &(y2, w2) in &rights {
            if !lang.is_accepting(lang.run_from(mid, &sigma.encode(y2).unwrap())) {
                return Some(SpliceWitness {
                    w1: w1.to_string(),
                    w2: w2.to_string(),
                    z: format!("{x1}{bridge}{y2}"),
                });
            }
        }
    }
    None
}

pub fn brute_respect(lang: &Dfa, rule: &Rule, word_bound: usize) -> bool {
    brute_respect_witness(lang, rule, word_bound).is_none()
}

/// Where an extension adds its word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extension {
    /// (xu1,v1;u2,v2)
    PrependU1,
    /// (u1,v1x;u2,v2)
    AppendV1,
    /// (u1,v1;xu2,v2)
    PrependU2,
    /// (u1,v1;u2,v2x)
    AppendV2,
    /// (xu1,u2;xv)
    LeftBridge,
    /// (u1x,u2;v)
    LeftSite,
    /// (u1,xu2;v)
    RightSite,
    /// (u1,u2x;vx)
    RightBridge,
}

impl Extension {
    pub fn variant(self) -> Variant {
        match self {
            Extension::PrependU1 | Extension::AppendV1 | Extension::PrependU2 | Extension::AppendV2 => {
                Variant::Classic
            }
            _ => Variant::Pixton,
        }
    }

    pub fn all(variant: Variant) -> [Extension; 4] {
        match variant {
            Variant::Classic => [
                Extension::PrependU1,
                Extension::AppendV1,
                Extension::PrependU2,
                Extension::AppendV2,
            ],
            Variant::Pixton => [
                Extension::LeftBridge,
                Extension::LeftSite,
                Extension::RightSite,
                Extension::RightBridge,
            ],
        }
    }
}

pub fn extend_rule(r: &Rule, with: Extension, x: &str) -> Result<Rule> {
    let cat = |a: &str, b: &str| format!("{a}{b}");
    match (r, with) {
        (Rule::Classic(c), e) if e.variant() == Variant::Classic => {
            let mut out = c.clone();
            match e {
                Extension::PrependU1 => out.u1 = cat(x, &c.u1),
                Extension::AppendV1 => out.v1 = cat(&c.v1, x),
                Extension::PrependU2 => out.u2 = cat(x, &c.u2),
                _ => out.v2 = cat(&c.v2, x),
            }
            Ok(Rule::Classic(out))
        }
        (Rule::Pixton(p), e) if e.variant() == Variant::Pixton => {
            let mut out = p.clone();
            match e {
                Extension::LeftBridge => {
                    out.u1 = cat(x, &p.u1);
                    out.v = cat(x, &p.v);
                }
                Extension::LeftSite => out.u1 = cat(&p.u1, x),
                Extension::RightSite => out.u2 = cat(x, &p.u2),
                _ => {
                    out.u2 = cat(&p.u2, x);
                    out.v = cat(&p.v, x);
                }
            }
            Ok(Rule::Pixton(out))
        }
        _ => Err(Error::IllegalExtension(format!(
            "{with:?} does not apply to a {} rule",
            r.variant()
        ))),
    }
}

/// Whether `s` arises from `r` by a sequence of extensions.
pub fn is_extension_of(s: &Rule, r: &Rule) -> Result<bool> {
    match (s, r) {
        (Rule::Classic(s), Rule::Classic(r)) => Ok(s.u1.ends_with(&r.u1)
            && s.v1.starts_with(&r.v1)
            && s.u2.ends_with(&r.u2)
            && s.v2.starts_with(&r.v2)),
        // s = (x·u1·y, x'·u2·z, x·v·z)
        (Rule::Pixton(s), Rule::Pixton(r)) => Ok((0..=s.u1.len().min(s.v.len())).any(|i| {
            let (x, rest_u1) = s.u1.split_at(i);
            let Some(rest_v) = s.v.strip_prefix(x) else {
                return false;
            };
            let Some(z) = rest_v.strip_prefix(r.v.as_str()) else {
                return false;
            };
            rest_u1.starts_with(&r.u1)
                && s.u2
                    .strip_suffix(z)
                    .is_some_and(|head| head.ends_with(&r.u2))
        })),
        _ => Err(Error::VariantMismatch {
            expected: r.variant().name(),
            found: s.variant().name(),
        }),
    }
}

fn rule_cmp(sigma: &Alphabet, a: &Rule, b: &Rule) -> std::cmp::Ordering {
    let (ca, cb) = (a.components(), b.components());
    let total = |c: &[&str]| c.iter().map(|w| w.len()).sum::<usize>();
    total(&ca).cmp(&total(&cb)).then_with(|| {
        ca.iter()
            .zip(&cb)
            .map(|(x, y)| sigma.cmp_length_lex(x, y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    })
}

/// Drops every rule that is a proper extension of another rule in the list.
/// A splice by an extension is also a splice by the rule it extends, so the
/// generated language is unchanged. Output keeps input order.
pub fn prune_minimal(rules: &[Rule], ctx: &RespectContext) -> Vec<Rule> {
    let sigma = ctx.monoid().alphabet();
    let mut seen = BTreeSet::new();
    let distinct: Vec<&Rule> = rules.iter().filter(|r| seen.insert(r.to_string())).collect();
    // Ordering by size means a restriction of r always comes before r.
    let mut by_size = distinct.clone();
    by_size.sort_by(|a, b| rule_cmp(sigma, a, b));
    let mut kept: Vec<&Rule> = Vec::new();
    for r in by_size {
        if !kept
            .iter()
            .any(|k| is_extension_of(r, k).unwrap_or(false))
        {
            kept.push(r);
        }
    }
    let keep: HashSet<String> = kept.iter().map(|r| r.to_string()).collect();
    distinct
        .into_iter()
        .filter(|r| keep.contains(&r.to_string()))
        .cloned()
        .collect()
}
