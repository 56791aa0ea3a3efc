use std::collections::BTreeSet;
use std::fmt;

use crate::{Error, Result};

/// Which splicing operation rules use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    Classic,
    Pixton,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Classic => "classic",
            Variant::Pixton => "pixton",
        }
    }

    pub fn parse(text: &str) -> Result<Variant> {
        match text {
            "classic" => Ok(Variant::Classic),
            "pixton" => Ok(Variant::Pixton),
            other => Err(Error::InvalidSystem(format!("unknown variant {other:?}"))),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Quadruple rule (u1, v1; u2, v2): splices x1u1v1y1 and x2u2v2y2 into x1u1v2y2.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassicRule {
    pub u1: String,
    pub v1: String,
    pub u2: String,
    pub v2: String,
}

/// Triple rule (u1, u2; v): splices x1u1y1 and x2u2y2 into x1vy2.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PixtonRule {
    pub u1: String,
    pub u2: String,
    pub v: String,
}

/// A rule of either variant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    Classic(ClassicRule),
    Pixton(PixtonRule),
}

impl ClassicRule {
    pub fn new(u1: &str, v1: &str, u2: &str, v2: &str) -> ClassicRule {
        ClassicRule {
            u1: u1.into(),
            v1: v1.into(),
            u2: u2.into(),
            v2: v2.into(),
        }
    }

    /// Every splice result together with its splicing position |x1u1|.
    pub fn splice(&self, w1: &str, w2: &str) -> BTreeSet<(String, usize)> {
        let mut out = BTreeSet::new();
        let lefts: Vec<&str> = self.left_parts(w1).collect();
        if lefts.is_empty() {
            return out;
        }
        for right in self.right_parts(w2) {
            for left in &lefts {
                out.insert((format!("{left}{right}"), left.len()));
            }
        }
        out
    }

    /// Prefixes x1u1 of `w` that are followed by v1.
    pub(crate) fn left_parts<'w>(&'w self, w: &'w str) -> impl Iterator<Item = &'w str> + 'w {
        let site = self.u1.len() + self.v1.len();
        occurrences(w, site, move |k| {
            w[k..].starts_with(&self.u1) && w[k + self.u1.len()..].starts_with(&self.v1)
        })
        .map(move |k| &w[..k + self.u1.len()])
    }

    /// Suffixes v2y2 of `w` that are preceded by u2.
    pub(crate) fn right_parts<'w>(&'w self, w: &'w str) -> impl Iterator<Item = &'w str> + 'w {
        let site = self.u2.len() + self.v2.len();
        occurrences(w, site, move |k| {
            w[k..].starts_with(&self.u2) && w[k + self.u2.len()..].starts_with(&self.v2)
        })
        .map(move |k| &w[k + self.u2.len()..])
    }

    /// The equivalent triple (u1v1, u2v2; u1v2).
    pub fn to_pixton(&self) -> PixtonRule {
        PixtonRule {
            u1: format!("{}{}", self.u1, self.v1),
            u2: format!("{}{}", self.u2, self.v2),
            v: format!("{}{}", self.u1, self.v2),
        }
    }
}

impl PixtonRule {
    pub fn new(u1: &str, u2: &str, v: &str) -> PixtonRule {
        PixtonRule {
            u1: u1.into(),
            u2: u2.into(),
            v: v.into(),
        }
    }

    pub fn splice(&self, w1: &str, w2: &str) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        let lefts: Vec<&str> = self.left_parts(w1).collect();
        if lefts.is_empty() {
            return out;
        }
        for right in self.right_parts(w2) {
            for left in &lefts {
                out.insert(format!("{left}{}{right}", self.v));
            }
        }
        out
    }

    /// Prefixes x1 of `w` that are followed by u1.
    pub(crate) fn left_parts<'w>(&'w self, w: &'w str) -> impl Iterator<Item = &'w str> + 'w {
        occurrences(w, self.u1.len(), move |k| w[k..].starts_with(&self.u1)).map(move |k| &w[..k])
    }

    /// Suffixes y2 of `w` that are preceded by u2.
    pub(crate) fn right_parts<'w>(&'w self, w: &'w str) -> impl Iterator<Item = &'w str> + 'w {
        occurrences(w, self.u2.len(), move |k| w[k..].starts_with(&self.u2))
            .map(move |k| &w[k + self.u2.len()..])
    }
}

/// Start positions k of length-`site` windows of `w` satisfying `matches`.
fn occurrences<'w>(
    w: &'w str,
    site: usize,
    matches: impl Fn(usize) -> bool + 'w,
) -> impl Iterator<Item = usize> + 'w {
    let last = w.len().checked_sub(site);
    (0..last.map_or(0, |l| l + 1)).filter(move |&k| matches(k))
}

/// Splices `w1` and `w2` with a quadruple rule.
pub fn splice_classic(w1: &str, w2: &str, r: &ClassicRule) -> BTreeSet<(String, usize)> {
    r.splice(w1, w2)
}

/// Splices `w1` and `w2` with a triple rule.
pub fn splice_pixton(w1: &str, w2: &str, r: &PixtonRule) -> BTreeSet<String> {
    r.splice(w1, w2)
}

impl Rule {
    pub fn variant(&self) -> Variant {
        match self {
            Rule::Classic(_) => Variant::Classic,
            Rule::Pixton(_) => Variant::Pixton,
        }
    }

    /// Components in rule order: (u1, v1, u2, v2) or (u1, u2, v).
    pub fn components(&self) -> Vec<&str> {
        match self {
            Rule::Classic(r) => vec![&r.u1, &r.v1, &r.u2, &r.v2],
            Rule::Pixton(r) => vec![&r.u1, &r.u2, &r.v],
        }
    }

    pub fn from_components(variant: Variant, parts: &[&str]) -> Result<Rule> {
        match (variant, parts) {
            (Variant::Classic, [u1, v1, u2, v2]) => Ok(Rule::Classic(ClassicRule::new(u1, v1, u2, v2))),
            (Variant::Pixton, [u1, u2, v]) => Ok(Rule::Pixton(PixtonRule::new(u1, u2, v))),
            _ => Err(Error::RuleSyntax(format!(
                "a {variant} rule has {} components, got {}",
                if variant == Variant::Classic { 4 } else { 3 },
                parts.len()
            ))),
        }
    }

    /// The word spelled between the kept prefix and kept suffix by the
    /// closure construction: the bridge v, or v2 for quadruples.
    pub fn insert_word(&self) -> &str {
        match self {
            Rule::Classic(r) => &r.v2,
            Rule::Pixton(r) => &r.v,
        }
    }

    pub fn splice(&self, w1: &str, w2: &str) -> BTreeSet<String> {
        match self {
            Rule::Classic(r) => r.splice(w1, w2).into_iter().map(|(z, _)| z).collect(),
            Rule::Pixton(r) => r.splice(w1, w2),
        }
    }

    /// Parses `u1,v1;u2,v2` (classic) or `u1,u2;v` (Pixton). Components may
    /// be empty.
    pub fn parse(text: &str, variant: Variant) -> Result<Rule> {
        let (left, right) = text
            .split_once(';')
            .ok_or_else(|| Error::RuleSyntax(format!("missing `;` in {text:?}")))?;
        let left: Vec<&str> = left.split(',').collect();
        let right: Vec<&str> = right.split(',').collect();
        let shape_ok = match variant {
            Variant::Classic => left.len() == 2 && right.len() == 2,
            Variant::Pixton => left.len() == 2 && right.len() == 1,
        };
        if !shape_ok {
            let expected = match variant {
                Variant::Classic => "u1,v1;u2,v2",
                Variant::Pixton => "u1,u2;v",
            };
            return Err(Error::RuleSyntax(format!("{text:?} does not have the form {expected}")));
        }
        let parts: Vec<&str> = left.into_iter().chain(right).collect();
        if let Some(c) = parts.iter().flat_map(|p| p.chars()).find(|c| !c.is_ascii_alphanumeric()) {
            return Err(Error::RuleSyntax(format!("unexpected character {c:?} in {text:?}")));
        }
        Rule::from_components(variant, &parts)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::Classic(r) => write!(f, "{},{};{},{}", r.u1, r.v1, r.u2, r.v2),
            Rule::Pixton(r) => write!(f, "{},{};{}", r.u1, r.u2, r.v),
        }
    }
}

impl From<ClassicRule> for Rule {
    fn from(r: ClassicRule) -> Self {
        Rule::Classic(r)
    }
}

impl From<PixtonRule> for Rule {
    fn from(r: PixtonRule) -> Self {
        Rule::Pixton(r)
    }
}
