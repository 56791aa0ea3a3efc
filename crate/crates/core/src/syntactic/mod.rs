//! Syntactic monoids of regular languages.
//!
//! The monoid is computed as the transition monoid of the minimal DFA: each
//! element is a state transformation, and two words are syntactically
//! congruent exactly when they induce the same transformation.

mod pumping;

use std::collections::HashMap;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::regular::{Alphabet, Dfa};
use crate::{Error, Result};

pub use pumping::{PumpNormalization, PumpingFactorization};

/// Monoid element id. The identity is always `0`.
pub type Element = usize;

/// Largest monoid for which associativity is checked exhaustively at
/// construction; above it only generator triples are checked.
const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 64;

#[derive(Debug, Clone)]
pub struct SyntacticMonoid {
    alphabet: Alphabet,
    dfa: Dfa,
    transforms: Vec<Vec<u32>>,
    table: Vec<Element>,
    generators: Vec<Element>,
    representatives: Vec<String>,
    accepting: Vec<bool>,
}

impl SyntacticMonoid {
    /// Builds the syntactic monoid of L(`dfa`). Elements are numbered in BFS
    /// order of generation from the identity by alphabet-ordered generators,
    /// so each element's representative is its length-lexicographically least word.
    pub fn from_dfa(dfa: &Dfa) -> SyntacticMonoid {
        let dfa = dfa.minimize();
        let alphabet = dfa.alphabet().clone();
        let n = dfa.state_count();
        let k = alphabet.len();

        let identity: Vec<u32> = (0..n as u32).collect();
        let mut ids: HashMap<Vec<u32>, Element> = HashMap::new();
        ids.insert(identity.clone(), 0);
        let mut transforms = vec![identity];
        let mut representatives = vec![String::new()];
        // right multiplication by generators, recorded as we go
        let mut right: Vec<Vec<Element>> = Vec::new();
        let mut i = 0;
        while i < transforms.len() {
            let mut row = Vec::with_capacity(k);
            for a in 0..k {
                let t: Vec<u32> = transforms[i]
                    .iter()
                    .map(|&q| dfa.next(q as usize, a) as u32)
                    .collect();
                let id = match ids.get(&t) {
                    Some(&id) => id,
                    None => {
                        let id = transforms.len();
                        ids.insert(t.clone(), id);
                        transforms.push(t);
                        let mut rep = representatives[i].clone();
                        rep.push(alphabet.symbol(a));
                        representatives.push(rep);
                        id
                    }
                };
                row.push(id);
            }
            right.push(row);
            i += 1;
        }

        let m = transforms.len();
        let mut table = vec![0; m * m];
        for x in 0..m {
            for y in 0..m {
                // x then y
                let t: Vec<u32> = transforms[x]
                    .iter()
                    .map(|&q| transforms[y][q as usize])
                    .collect();
                table[x * m + y] = ids[&t];
            }
        }
        let generators = (0..k).map(|a| right[0][a]).collect();
        let accepting = transforms
            .iter()
            .map(|t| dfa.is_accepting(t[dfa.initial()] as usize))
            .collect();
        let monoid = SyntacticMonoid {
            alphabet,
            dfa,
            transforms,
            table,
            generators,
            representatives,
            accepting,
        };
        monoid.check_associativity();
        monoid
    }

    fn check_associativity(&self) {
        let m = self.size();
        let left: Vec<Element> = if m <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
            (0..m).collect()
        } else {
            self.generators.clone()
        };
        for &x in &left {
            for y in 0..m {
                let xy = self.multiply(x, y);
                for z in 0..m {
                    assert_eq!(
                        self.multiply(xy, z),
                        self.multiply(x, self.multiply(y, z)),
                        "multiplication table is not associative"
                    );
                }
            }
        }
        for x in 0..m {
            assert_eq!(self.multiply(0, x), x);
            assert_eq!(self.multiply(x, 0), x);
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// The minimal DFA the monoid was computed from.
    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    /// m = |M_L|.
    pub fn size(&self) -> usize {
        self.transforms.len()
    }

    pub fn identity(&self) -> Element {
        0
    }

    pub fn multiply(&self, x: Element, y: Element) -> Element {
        self.table[x * self.size() + y]
    }

    pub fn generator(&self, symbol: usize) -> Element {
        self.generators[symbol]
    }

    /// Whether the class `e` is contained in L.
    pub fn is_accepting(&self, e: Element) -> bool {
        self.accepting[e]
    }

    pub fn accepting(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.size()).filter(|&e| self.accepting[e])
    }

    /// h(w) for a word given as symbol indices.
    pub fn class_of_indices(&self, word: &[usize]) -> Element {
        word.iter()
            .fold(0, |e, &a| self.multiply(e, self.generators[a]))
    }

    /// h(w): the syntactic class of `word`.
    pub fn class_of(&self, word: &str) -> Result<Element> {
        Ok(self.class_of_indices(&self.alphabet.encode(word)?))
    }

    /// The length-lexicographically least word of class `e`.
    pub fn shortest_representative(&self, e: Element) -> Result<&str> {
        self.representatives
            .get(e)
            .map(String::as_str)
            .ok_or(Error::InvalidElement(e))
    }

    pub fn representatives(&self) -> &[String] {
        &self.representatives
    }

    /// Row-major multiplication table.
    pub fn table_rows(&self) -> Vec<Vec<Element>> {
        self.table.chunks(self.size()).map(<[_]>::to_vec).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&MonoidJson::from(self)).expect("monoid serializes")
    }
}

#[derive(Serialize)]
struct MonoidJson {
    size: usize,
    identity: Element,
    table: Vec<Vec<Element>>,
    #[serde(serialize_with = "ordered_map")]
    generators: Vec<(String, Element)>,
    representatives: Vec<String>,
    accepting: Vec<Element>,
}

fn ordered_map<S: Serializer>(entries: &[(String, Element)], s: S) -> std::result::Result<S::Ok, S::Error> {
    let mut map = s.serialize_map(Some(entries.len()))?;
    for (k, v) in entries {
        map.serialize_entry(k, v)?;
    }
    map.end()
}

impl From<&SyntacticMonoid> for MonoidJson {
    fn from(m: &SyntacticMonoid) -> Self {
        MonoidJson {
            size: m.size(),
            identity: m.identity(),
            table: m.table_rows(),
            generators: m
                .alphabet
                .symbols()
                .iter()
                .zip(&m.generators)
                .map(|(c, &e)| (c.to_string(), e))
                .collect(),
            representatives: m.representatives.clone(),
            accepting: m.accepting().collect(),
        }
    }
}
