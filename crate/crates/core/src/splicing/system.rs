use serde::{Deserialize, Serialize};

use super::{ClassicRule, PixtonRule, Rule, Variant};
use crate::regular::{Alphabet, AutomatonJson, Nfa};
use crate::{Error, Result};

/// The axiom set of a system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Axioms {
    Words(Vec<String>),
    /// A finite language given symbolically.
    Automaton(Nfa),
}

/// A finite splicing system (I, R) of one variant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplicingSystem {
    variant: Variant,
    alphabet: Alphabet,
    axioms: Axioms,
    rules: Vec<Rule>,
}

impl SplicingSystem {
    /// Validates rule variants, symbols and axiom finiteness.
    pub fn new(variant: Variant, alphabet: Alphabet, axioms: Axioms, rules: Vec<Rule>) -> Result<Self> {
        for r in &rules {
            if r.variant() != variant {
                return Err(Error::VariantMismatch {
                    expected: variant.name(),
                    found: r.variant().name(),
                });
            }
            for c in r.components() {
                alphabet.check_word(c)?;
            }
        }
        match &axioms {
            Axioms::Words(words) => {
                for w in words {
                    alphabet.check_word(w)?;
                }
            }
            Axioms::Automaton(n) => {
                if n.alphabet() != &alphabet {
                    return Err(Error::AlphabetMismatch {
                        left: alphabet.to_string(),
                        right: n.alphabet().to_string(),
                    });
                }
                if !n.is_finite_language() {
                    return Err(Error::InfiniteAxioms);
                }
            }
        }
        Ok(SplicingSystem {
            variant,
            alphabet,
            axioms,
            rules,
        })
    }

    pub fn classic(alphabet: Alphabet, axioms: Vec<String>, rules: Vec<ClassicRule>) -> Result<Self> {
        Self::new(
            Variant::Classic,
            alphabet,
            Axioms::Words(axioms),
            rules.into_iter().map(Rule::Classic).collect(),
        )
    }

    pub fn pixton(alphabet: Alphabet, axioms: Vec<String>, rules: Vec<PixtonRule>) -> Result<Self> {
        Self::new(
            Variant::Pixton,
            alphabet,
            Axioms::Words(axioms),
            rules.into_iter().map(Rule::Pixton).collect(),
        )
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn axioms(&self) -> &Axioms {
        &self.axioms
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// Same axioms, different rules.
    pub fn with_rules(&self, rules: Vec<Rule>) -> Result<Self> {
        Self::new(self.variant, self.alphabet.clone(), self.axioms.clone(), rules)
    }

    /// The axioms as an automaton.
    pub fn axiom_automaton(&self) -> Result<Nfa> {
        match &self.axioms {
            Axioms::Words(w) => Nfa::from_words(&self.alphabet, w),
            Axioms::Automaton(n) => Ok(n.clone()),
        }
    }

    /// Every axiom, length-lexicographically sorted.
    pub fn axiom_words(&self) -> Result<Vec<String>> {
        let mut words = match &self.axioms {
            Axioms::Words(w) => w.clone(),
            Axioms::Automaton(n) => {
                if !n.is_finite_language() {
                    return Err(Error::InfiniteAxioms);
                }
                // the longest accepted word is shorter than the number of useful states
                let bound = n.trim().state_count();
                n.to_min_dfa().enumerate_words(bound)
            }
        };
        words.sort_by(|u, v| self.alphabet.cmp_length_lex(u, v));
        words.dedup();
        Ok(words)
    }

    /// Converts quadruple rules to their triple equivalents; Pixton systems
    /// are returned unchanged.
    pub fn to_pixton(&self) -> SplicingSystem {
        let rules = self
            .rules
            .iter()
            .map(|r| match r {
                Rule::Classic(c) => Rule::Pixton(c.to_pixton()),
                p => p.clone(),
            })
            .collect();
        SplicingSystem {
            variant: Variant::Pixton,
            alphabet: self.alphabet.clone(),
            axioms: self.axioms.clone(),
            rules,
        }
    }

    /// Heuristic oracle cap: report_len + 2 · (longest axiom + longest rule component).
    pub fn default_cap_len(&self, report_len: usize) -> Result<usize> {
        let longest_axiom = self.axiom_words()?.iter().map(String::len).max().unwrap_or(0);
        let longest_component = self
            .rules
            .iter()
            .flat_map(|r| r.components().into_iter().map(str::len))
            .max()
            .unwrap_or(0);
        Ok(report_len + 2 * (longest_axiom + longest_component))
    }

    fn to_json_value(&self) -> SystemJson {
        SystemJson {
            variant: self.variant.name().to_string(),
            alphabet: self.alphabet.symbols().iter().map(|c| c.to_string()).collect(),
            axioms: match &self.axioms {
                Axioms::Words(w) => AxiomsJson::Words(w.clone()),
                Axioms::Automaton(n) => AxiomsJson::Automaton(n.to_json_value()),
            },
            rules: self
                .rules
                .iter()
                .map(|r| r.components().into_iter().map(String::from).collect())
                .collect(),
        }
    }

    /// Compact JSON: `{"variant":…,"alphabet":[…],"axioms":…,"rules":[[…],…]}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("system serializes")
    }

    pub fn from_json(text: &str) -> Result<SplicingSystem> {
        let value: SystemJson = serde_json::from_str(text)?;
        let variant = Variant::parse(&value.variant)?;
        let mut symbols = Vec::new();
        for s in &value.alphabet {
            let mut it = s.chars();
            match (it.next(), it.next()) {
                (Some(c), None) => symbols.push(c),
                _ => return Err(Error::InvalidAlphabet(format!("{s:?} is not a single symbol"))),
            }
        }
        let alphabet = Alphabet::from_symbols(symbols)?;
        let axioms = match value.axioms {
            AxiomsJson::Words(w) => Axioms::Words(w),
            AxiomsJson::Automaton(a) => Axioms::Automaton(Nfa::from_json_value(&a)?),
        };
        let rules = value
            .rules
            .iter()
            .map(|parts| {
                let parts: Vec<&str> = parts.iter().map(String::as_str).collect();
                Rule::from_components(variant, &parts)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(variant, alphabet, axioms, rules)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SystemJson {
    variant: String,
    alphabet: Vec<String>,
    axioms: AxiomsJson,
    rules: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum AxiomsJson {
    Words(Vec<String>),
    Automaton(AutomatonJson),
}
