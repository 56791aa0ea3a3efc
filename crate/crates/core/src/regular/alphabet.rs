use std::cmp::Ordering;
use std::fmt;

use crate::{Error, Result};

/// An ordered alphabet of single-character symbols.
///
/// Symbols are ASCII alphanumerics; the regex and rule syntaxes reserve the
/// remaining printable characters. The order in which the symbols are given
/// is the order used by the length-lexicographic order on words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<char>,
    index: [u8; 128],
}

const NONE: u8 = u8::MAX;

impl Alphabet {
    /// Builds an alphabet from the characters of `symbols`, in order.
    pub fn new(symbols: &str) -> Result<Self> {
        Self::from_symbols(symbols.chars())
    }

    pub fn from_symbols(symbols: impl IntoIterator<Item = char>) -> Result<Self> {
        let mut index = [NONE; 128];
        let mut list = Vec::new();
        for c in symbols {
            if !c.is_ascii_alphanumeric() {
                return Err(Error::InvalidAlphabet(format!(
                    "symbol {c:?} is not an ASCII letter or digit"
                )));
            }
            if index[c as usize] != NONE {
                return Err(Error::InvalidAlphabet(format!("duplicate symbol {c:?}")));
            }
            index[c as usize] = list.len() as u8;
            list.push(c);
        }
        Ok(Alphabet {
            symbols: list,
            index,
        })
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbol(&self, index: usize) -> char {
        self.symbols[index]
    }

    pub fn index_of(&self, c: char) -> Option<usize> {
        if c.is_ascii() {
            match self.index[c as usize] {
                NONE => None,
                i => Some(i as usize),
            }
        } else {
            None
        }
    }

    pub fn contains(&self, c: char) -> bool {
        self.index_of(c).is_some()
    }

    /// Translates a word into symbol indices.
    pub fn encode(&self, word: &str) -> Result<Vec<usize>> {
        word.chars()
            .map(|c| self.index_of(c).ok_or(Error::UnknownSymbol { symbol: c }))
            .collect()
    }

    pub fn decode(&self, indices: &[usize]) -> String {
        indices.iter().map(|&i| self.symbols[i]).collect()
    }

    /// Fails with [`Error::UnknownSymbol`] if `word` uses a foreign symbol.
    pub fn check_word(&self, word: &str) -> Result<()> {
        match word.chars().find(|&c| !self.contains(c)) {
            Some(symbol) => Err(Error::UnknownSymbol { symbol }),
            None => Ok(()),
        }
    }

    /// Length-lexicographic comparison: shorter words first, then
    /// lexicographic by symbol order. Foreign symbols sort after all symbols.
    pub fn cmp_length_lex(&self, u: &str, v: &str) -> Ordering {
        u.len().cmp(&v.len()).then_with(|| {
            let rank = |c: char| self.index_of(c).unwrap_or(usize::MAX);
            u.chars().map(rank).cmp(v.chars().map(rank))
        })
    }

    /// All words of length strictly below `bound`, in length-lexicographic order.
    pub fn words_shorter_than(&self, bound: usize) -> Vec<String> {
        let mut out = Vec::new();
        if bound == 0 {
            return out;
        }
        let mut layer = vec![String::new()];
        for len in 0..bound {
            out.extend(layer.iter().cloned());
            if len + 1 == bound {
                break;
            }
            let mut next = Vec::with_capacity(layer.len() * self.len());
            for w in &layer {
                for &c in &self.symbols {
                    let mut x = w.clone();
                    x.push(c);
                    next.push(x);
                }
            }
            layer = next;
        }
        out
    }

    /// Number of words of length strictly below `bound`, saturating.
    pub fn count_words_shorter_than(&self, bound: usize) -> u128 {
        let k = self.len() as u128;
        let mut total: u128 = 0;
        let mut layer: u128 = 1;
        for _ in 0..bound {
            total = total.saturating_add(layer);
            layer = layer.saturating_mul(k);
        }
        total
    }
}

/// Length-lexicographic comparison of two words over `alphabet`.
pub fn length_lex_cmp(alphabet: &Alphabet, u: &str, v: &str) -> Ordering {
    alphabet.cmp_length_lex(u, v)
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Alphabet({:?})", self.to_string())
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.symbols {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}
