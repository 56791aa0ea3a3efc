//! Canonical splicing systems and the splicing-language decision.
//!
//! For m = |M_L|, a regular language L is a (classic or Pixton) splicing
//! language iff it is generated by its canonical system: the axioms are the
//! words of L shorter than m²+6m and the rules are all rules within the size
//! bounds below that respect L. Deciding amounts to building that system,
//! saturating its closure automaton and comparing it with L.

use rayon::prelude::*;
use serde::Serialize;

use crate::closure::{build_closure, ClosureAutomaton};
use crate::regular::{Alphabet, Dfa, Nfa};
use crate::respect::{prune_minimal, RespectContext};
use crate::splicing::{Axioms, Rule, SplicingSystem, Variant};
use crate::syntactic::SyntacticMonoid;
use crate::{Error, Result};

pub const DEFAULT_CANDIDATE_LIMIT: u128 = 10_000_000;

/// Candidate limit from `SPLICEKIT_CANDIDATE_LIMIT`, else the default.
pub fn default_candidate_limit() -> u128 {
    std::env::var("SPLICEKIT_CANDIDATE_LIMIT")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_CANDIDATE_LIMIT)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundsSource {
    Theorem,
    Custom,
}

/// Strict upper bounds on component lengths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "variant", rename_all = "lowercase")]
pub enum SiteBounds {
    Classic { u1: usize, v1: usize, u2: usize, v2: usize },
    Pixton { u1: usize, u2: usize, v: usize },
}

impl SiteBounds {
    pub fn variant(&self) -> Variant {
        match self {
            SiteBounds::Classic { .. } => Variant::Classic,
            SiteBounds::Pixton { .. } => Variant::Pixton,
        }
    }

    /// Bounds in rule component order.
    pub fn as_vec(&self) -> Vec<usize> {
        match *self {
            SiteBounds::Classic { u1, v1, u2, v2 } => vec![u1, v1, u2, v2],
            SiteBounds::Pixton { u1, u2, v } => vec![u1, u2, v],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoundsProfile {
    pub axiom_len_lt: usize,
    pub sites: SiteBounds,
    pub source: BoundsSource,
}

impl BoundsProfile {
    pub fn theorem(m: usize, variant: Variant) -> BoundsProfile {
        assert!(m >= 1, "a monoid has at least one element");
        let (inner, outer) = (2 * m, m * m + 10 * m);
        BoundsProfile {
            axiom_len_lt: m * m + 6 * m,
            sites: Self::shape(variant, inner, outer),
            source: BoundsSource::Theorem,
        }
    }

    /// Inner bounds apply to v1, u2 (classic) or both sites (Pixton); outer
    /// bounds to u1, v2 (classic) or the bridge (Pixton).
    pub fn custom(variant: Variant, axiom_len_lt: usize, inner: usize, outer: usize) -> Result<BoundsProfile> {
        if axiom_len_lt == 0 || inner == 0 || outer == 0 {
            return Err(Error::InvalidBounds("every bound must be at least 1".into()));
        }
        Ok(BoundsProfile {
            axiom_len_lt,
            sites: Self::shape(variant, inner, outer),
            source: BoundsSource::Custom,
        })
    }

    fn shape(variant: Variant, inner: usize, outer: usize) -> SiteBounds {
        match variant {
            Variant::Classic => SiteBounds::Classic { u1: outer, v1: inner, u2: inner, v2: outer },
            Variant::Pixton => SiteBounds::Pixton { u1: inner, u2: inner, v: outer },
        }
    }

    pub fn variant(&self) -> Variant {
        self.sites.variant()
    }
}

pub fn theorem_bounds(m: usize, variant: Variant) -> BoundsProfile {
    BoundsProfile::theorem(m, variant)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CanonicalOptions {
    pub prune: bool,
    pub candidate_limit: u128,
}

impl Default for CanonicalOptions {
    fn default() -> Self {
        CanonicalOptions {
            prune: false,
            candidate_limit: default_candidate_limit(),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Stats {
    pub monoid_size: usize,
    pub candidate_rules: u128,
    pub respecting_rules: usize,
    pub system_rules: usize,
    pub closure_states: usize,
    pub rounds: usize,
}

#[derive(Debug, Clone)]
pub struct CanonicalSystem {
    pub system: SplicingSystem,
    pub stats: Stats,
}

/// Number of rules within `bounds`, saturating.
pub fn candidate_count(sigma: &Alphabet, bounds: &BoundsProfile) -> u128 {
    bounds
        .sites
        .as_vec()
        .into_iter()
        .fold(1u128, |acc, b| acc.saturating_mul(sigma.count_words_shorter_than(b)))
}

/// The canonical system of `lang` within `bounds`.
pub fn canonical_system(lang: &Dfa, bounds: &BoundsProfile, options: CanonicalOptions) -> Result<CanonicalSystem> {
    let ctx = RespectContext::from_dfa(lang);
    canonical_system_with(&ctx, bounds, options)
}

pub fn canonical_system_with(
    ctx: &RespectContext,
    bounds: &BoundsProfile,
    options: CanonicalOptions,
) -> Result<CanonicalSystem> {
    let monoid = ctx.monoid();
    let sigma = monoid.alphabet().clone();
    let lang = monoid.dfa();
    let variant = bounds.variant();

    let count = candidate_count(&sigma, bounds);
    if count > options.candidate_limit {
        return Err(Error::CandidateLimit { count, limit: options.candidate_limit });
    }

    let axioms = Dfa::shorter_than(&sigma, bounds.axiom_len_lt).intersect(lang)?.minimize();
    let axioms = axiom_nfa(&axioms);

    let lists: Vec<Vec<(String, usize)>> = bounds
        .sites
        .as_vec()
        .into_iter()
        .map(|b| {
            sigma
                .words_shorter_than(b)
                .into_iter()
                .map(|w| {
                    let class = monoid.class_of(&w).expect("words over the monoid alphabet");
                    (w, class)
                })
                .collect()
        })
        .collect();

    let rules: Vec<Rule> = lists[0]
        .par_iter()
        .flat_map_iter(|first| {
            let mut out = Vec::new();
            let mut picked: Vec<&(String, usize)> = vec![first];
            collect_respecting(ctx, variant, &lists, &mut picked, &mut out);
            out
        })
        .collect();
    let respecting = rules.len();
    let rules = if options.prune { prune_minimal(&rules, ctx) } else { rules };

    let stats = Stats {
        monoid_size: monoid.size(),
        candidate_rules: count,
        respecting_rules: respecting,
        system_rules: rules.len(),
        ..Stats::default()
    };
    let system = SplicingSystem::new(variant, sigma, Axioms::Automaton(axioms), rules)?;
    Ok(CanonicalSystem { system, stats })
}

fn collect_respecting<'a>(
    ctx: &RespectContext,
    variant: Variant,
    lists: &'a [Vec<(String, usize)>],
    picked: &mut Vec<&'a (String, usize)>,
    out: &mut Vec<Rule>,
) {
    let depth = picked.len();
    if depth == lists.len() {
        let classes: Vec<usize> = picked.iter().map(|c| c.1).collect();
        if ctx.respects_classes(variant, &classes) {
            let parts: Vec<&str> = picked.iter().map(|c| c.0.as_str()).collect();
            out.push(Rule::from_components(variant, &parts).expect("component count matches variant"));
        }
        return;
    }
    for item in &lists[depth] {
        picked.push(item);
        collect_respecting(ctx, variant, lists, picked, out);
        picked.pop();
    }
}

/// Trimmed automaton of a finite language given as a DFA.
fn axiom_nfa(finite: &Dfa) -> Nfa {
    finite.to_nfa().trim()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Inconclusive,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone)]
pub enum Certificate {
    /// A system generating L.
    System(SplicingSystem),
    /// The least word of L the canonical system cannot generate.
    Witness(String),
    Reason(String),
}

#[derive(Debug, Clone)]
pub struct Decision {
    pub verdict: Verdict,
    pub certificate: Certificate,
    /// The canonical system, whatever the verdict.
    pub system: SplicingSystem,
    pub closure: ClosureAutomaton,
    pub bounds: BoundsProfile,
    pub stats: Stats,
}

/// Decides whether `lang` is generated by its canonical system under `bounds`.
pub fn decide_splicing(lang: &Dfa, bounds: &BoundsProfile, options: CanonicalOptions) -> Result<Decision> {
    let ctx = RespectContext::new(SyntacticMonoid::from_dfa(lang));
    let CanonicalSystem { system, mut stats } = canonical_system_with(&ctx, bounds, options)?;
    let closure = build_closure(&system)?;
    stats.closure_states = closure.state_count();
    stats.rounds = closure.rounds();
    let generated = closure.language();
    let lang = ctx.monoid().dfa();

    let (inside, escaped) = generated.is_subset_of(lang)?;
    assert!(inside, "respecting rules generated {escaped:?} outside the language");

    let (verdict, certificate) = match lang.difference(&generated)?.least_word() {
        None => (Verdict::Yes, Certificate::System(system.clone())),
        Some(w) if bounds.source == BoundsSource::Theorem => (Verdict::No, Certificate::Witness(w)),
        Some(w) => (
            Verdict::Inconclusive,
            Certificate::Reason(format!(
                "bounds below theorem guarantee; {} is not generated",
                if w.is_empty() { "the empty word".to_string() } else { w }
            )),
        ),
    };
    Ok(Decision {
        verdict,
        certificate,
        system,
        closure,
        bounds: *bounds,
        stats,
    })
}

/// Decision under the complete bounds for |M_L|.
pub fn decide_with_theorem_bounds(lang: &Dfa, variant: Variant, options: CanonicalOptions) -> Result<Decision> {
    let m = SyntacticMonoid::from_dfa(lang).size();
    decide_splicing(lang, &theorem_bounds(m, variant), options)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::closure_language;
    use crate::regular::parse_regex;

    fn lang(re: &str, sigma: &str) -> Dfa {
        parse_regex(re, &Alphabet::new(sigma).unwrap()).unwrap().to_min_dfa()
    }

    fn opts(prune: bool) -> CanonicalOptions {
        CanonicalOptions { prune, candidate_limit: DEFAULT_CANDIDATE_LIMIT }
    }

    #[test]
    fn theorem_bound_arithmetic() {
        let b = theorem_bounds(2, Variant::Classic);
        assert_eq!(b.axiom_len_lt, 16);
        assert_eq!(b.sites, SiteBounds::Classic { u1: 24, v1: 4, u2: 4, v2: 24 });
        assert_eq!(theorem_bounds(2, Variant::Pixton).sites, SiteBounds::Pixton { u1: 4, u2: 4, v: 24 });
        let one = theorem_bounds(1, Variant::Classic);
        assert_eq!(one.axiom_len_lt, 7);
        assert_eq!(one.sites, SiteBounds::Classic { u1: 11, v1: 2, u2: 2, v2: 11 });
        let a = Alphabet::new("a").unwrap();
        assert_eq!(candidate_count(&a, &b), 24 * 4 * 4 * 24);
        assert_eq!(candidate_count(&a, &theorem_bounds(2, Variant::Pixton)), 4 * 4 * 24);
        assert!(BoundsProfile::custom(Variant::Classic, 0, 1, 1).is_err());
    }

    #[test]
    fn even_length_is_not_classic_splicing() {
        let even = lang("(aa)*", "a");
        let d = decide_with_theorem_bounds(&even, Variant::Classic, opts(false)).unwrap();
        assert_eq!(d.verdict, Verdict::No);
        assert!(matches!(&d.certificate, Certificate::Witness(w) if w == &"a".repeat(16)));
        assert!(d.system.rules().is_empty());
        assert_eq!(d.stats.candidate_rules, 9216);
        let axioms = d.system.axiom_words().unwrap();
        let expect: Vec<String> = (0..8).map(|i| "a".repeat(2 * i)).collect();
        assert_eq!(axioms, expect);
    }

    #[test]
    fn running_example_with_small_bounds() {
        let l = lang("a+b+", "ab");
        let b = BoundsProfile::custom(Variant::Classic, 3, 3, 3).unwrap();
        assert_eq!(candidate_count(l.alphabet(), &b), 2401);
        let d = decide_splicing(&l, &b, opts(false)).unwrap();
        assert_eq!(d.verdict, Verdict::Yes);
        let Certificate::System(sys) = &d.certificate else { panic!() };
        let shown: Vec<String> = sys.rules().iter().map(|r| r.to_string()).collect();
        assert!(shown.contains(&"a,b;,ab".to_string()), "{shown:?}");
        assert!(shown.contains(&"ab,;a,b".to_string()));
        assert!(sys.axiom_words().unwrap().contains(&"ab".to_string()));
        assert!(closure_language(sys).unwrap().equivalent(&l).unwrap().0);

        let pruned = decide_splicing(&l, &b, opts(true)).unwrap();
        assert_eq!(pruned.verdict, Verdict::Yes);
        assert!(pruned.stats.system_rules <= d.stats.system_rules);
    }

    #[test]
    fn everything_over_one_letter() {
        let all = lang("a*", "a");
        let d = decide_with_theorem_bounds(&all, Variant::Pixton, opts(false)).unwrap();
        assert_eq!(d.verdict, Verdict::Yes);
        assert_eq!(d.stats.candidate_rules, 44);
        assert_eq!(d.stats.respecting_rules, 44);
        assert!(d.system.rules().iter().any(|r| r.to_string() == ",;"));
        assert_eq!(d.system.axiom_words().unwrap().len(), 7);
    }

    #[test]
    fn custom_bounds_give_inconclusive() {
        let even = lang("(aa)*", "a");
        let b = BoundsProfile::custom(Variant::Classic, 3, 2, 2).unwrap();
        let d = decide_splicing(&even, &b, opts(false)).unwrap();
        assert_eq!(d.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn candidate_guard() {
        let l = lang("a+b+", "ab");
        let err = decide_with_theorem_bounds(&l, Variant::Classic, opts(false)).unwrap_err();
        assert!(matches!(err, Error::CandidateLimit { limit: DEFAULT_CANDIDATE_LIMIT, .. }));
        let tight = CanonicalOptions { prune: false, candidate_limit: 10 };
        let b = BoundsProfile::custom(Variant::Pixton, 2, 2, 2).unwrap();
        assert!(matches!(
            canonical_system(&l, &b, tight),
            Err(Error::CandidateLimit { count: 27, limit: 10 })
        ));
    }
}
