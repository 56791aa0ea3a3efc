//! A deliberately small regex dialect: literals, concatenation, `|`, `*`,
//! `+`, grouping with `()`, and the empty group `()` for the empty word.

use super::{Alphabet, Nfa};
use crate::{Error, Result};

/// Parsed regular expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Regex {
    Epsilon,
    /// Symbol index into the alphabet.
    Symbol(usize),
    Concat(Vec<Regex>),
    Alt(Vec<Regex>),
    Star(Box<Regex>),
    Plus(Box<Regex>),
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    alphabet: &'a Alphabet,
}

impl Parser<'_> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::RegexSyntax {
            position: self.pos,
            message: message.into(),
        })
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn alt(&mut self, in_group: bool) -> Result<Regex> {
        let mut branches = vec![self.concat(in_group)?];
        while self.peek() == Some('|') {
            self.pos += 1;
            branches.push(self.concat(in_group)?);
        }
        Ok(if branches.len() == 1 {
            branches.pop().unwrap()
        } else {
            Regex::Alt(branches)
        })
    }

    fn concat(&mut self, in_group: bool) -> Result<Regex> {
        let mut items = Vec::new();
        while let Some(c) = self.peek() {
            if c == '|' || c == ')' {
                break;
            }
            items.push(self.repeat()?);
        }
        match items.len() {
            0 => match self.peek() {
                Some(')') if in_group => self.err("empty alternative (use `()` for the empty word)"),
                Some(')') => self.err("unbalanced `)`"),
                Some(_) => self.err("empty alternative (use `()` for the empty word)"),
                None => self.err("unexpected end of input"),
            },
            1 => Ok(items.pop().unwrap()),
            _ => Ok(Regex::Concat(items)),
        }
    }

    fn repeat(&mut self) -> Result<Regex> {
        let mut atom = self.atom()?;
        while let Some(c) = self.peek() {
            atom = match c {
                '*' => Regex::Star(Box::new(atom)),
                '+' => Regex::Plus(Box::new(atom)),
                _ => break,
            };
            self.pos += 1;
        }
        Ok(atom)
    }

    fn atom(&mut self) -> Result<Regex> {
        let c = match self.peek() {
            Some(c) => c,
            None => return self.err("unexpected end of input"),
        };
        match c {
            '(' => {
                self.pos += 1;
                if self.peek() == Some(')') {
                    self.pos += 1;
                    return Ok(Regex::Epsilon);
                }
                let inner = self.alt(true)?;
                if self.peek() != Some(')') {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(inner)
            }
            '*' | '+' => self.err(format!("nothing to repeat before `{c}`")),
            c => match self.alphabet.index_of(c) {
                Some(i) => {
                    self.pos += 1;
                    Ok(Regex::Symbol(i))
                }
                None => Err(Error::UnknownSymbol { symbol: c }),
            },
        }
    }
}

impl Regex {
    /// Parses `text` over `alphabet`.
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Regex> {
        let mut p = Parser {
            chars: text.chars().collect(),
            pos: 0,
            alphabet,
        };
        let re = p.alt(false)?;
        if p.pos != p.chars.len() {
            return p.err("unbalanced `)`");
        }
        Ok(re)
    }

    /// Thompson construction.
    pub fn to_nfa(&self, alphabet: &Alphabet) -> Nfa {
        let mut b = Builder::default();
        let (start, end) = b.build(self);
        Nfa::from_parts_unchecked(
            alphabet.clone(),
            b.states,
            [start].into(),
            [end].into(),
            b.edges.into_iter().collect(),
            b.epsilon.into_iter().collect(),
        )
    }
}

#[derive(Default)]
struct Builder {
    states: usize,
    edges: Vec<(usize, usize, usize)>,
    epsilon: Vec<(usize, usize)>,
}

impl Builder {
    fn fresh(&mut self) -> usize {
        self.states += 1;
        self.states - 1
    }

    fn build(&mut self, re: &Regex) -> (usize, usize) {
        match re {
            Regex::Epsilon => {
                let s = self.fresh();
                (s, s)
            }
            Regex::Symbol(a) => {
                let s = self.fresh();
                let t = self.fresh();
                self.edges.push((s, *a, t));
                (s, t)
            }
            Regex::Concat(items) => {
                let (start, mut end) = self.build(&items[0]);
                for item in &items[1..] {
                    let (s, t) = self.build(item);
                    self.epsilon.push((end, s));
                    end = t;
                }
                (start, end)
            }
            Regex::Alt(branches) => {
                let start = self.fresh();
                let end = self.fresh();
                for br in branches {
                    let (s, t) = self.build(br);
                    self.epsilon.push((start, s));
                    self.epsilon.push((t, end));
                }
                (start, end)
            }
            Regex::Star(inner) | Regex::Plus(inner) => {
                let start = self.fresh();
                let end = self.fresh();
                let (s, t) = self.build(inner);
                self.epsilon.push((start, s));
                self.epsilon.push((t, end));
                self.epsilon.push((t, s));
                if matches!(re, Regex::Star(_)) {
                    self.epsilon.push((start, end));
                }
                (start, end)
            }
        }
    }
}

/// Parses `text` as a regex over `alphabet` and returns its Thompson NFA.
pub fn parse_regex(text: &str, alphabet: &Alphabet) -> Result<Nfa> {
    Ok(Regex::parse(text, alphabet)?.to_nfa(alphabet))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::new("ab").unwrap()
    }

    #[test]
    fn running_language() {
        let sigma = ab();
        let n = parse_regex("a+b+", &sigma).unwrap();
        for (w, want) in [("ab", true), ("aabbb", true), ("a", false), ("ba", false), ("", false)] {
            assert_eq!(n.accepts(w).unwrap(), want, "{w}");
        }
    }

    #[test]
    fn empty_group_is_epsilon() {
        let n = parse_regex("()", &ab()).unwrap();
        assert!(n.accepts("").unwrap());
        assert!(!n.accepts("a").unwrap());
    }

    #[test]
    fn marker_language() {
        let n = parse_regex("b(aa)*", &ab()).unwrap();
        for w in ["b", "baa", "baaaa"] {
            assert!(n.accepts(w).unwrap());
        }
        for w in ["", "ba", "bab", "aa"] {
            assert!(!n.accepts(w).unwrap());
        }
    }

    #[test]
    fn syntax_errors_report_position() {
        let sigma = ab();
        assert_eq!(
            Regex::parse("a(b", &sigma),
            Err(Error::RegexSyntax { position: 3, message: "expected `)`".into() })
        );
        assert!(matches!(Regex::parse("ab)", &sigma), Err(Error::RegexSyntax { position: 2, .. })));
        assert!(matches!(Regex::parse("*a", &sigma), Err(Error::RegexSyntax { position: 0, .. })));
        assert!(matches!(Regex::parse("a|", &sigma), Err(Error::RegexSyntax { position: 2, .. })));
        assert!(matches!(Regex::parse("", &sigma), Err(Error::RegexSyntax { position: 0, .. })));
        assert_eq!(Regex::parse("ac", &sigma), Err(Error::UnknownSymbol { symbol: 'c' }));
    }

    #[test]
    fn nested_repeats_and_alternation() {
        let n = parse_regex("(a|b)*a(()|b)+", &ab()).unwrap();
        assert!(n.accepts("a").unwrap());
        assert!(n.accepts("bbab").unwrap());
        assert!(!n.accepts("bb").unwrap());
    }
}
