use std::collections::{BTreeSet, HashSet};
use std::hash::Hash;

use rayon::prelude::*;

use super::{Rule, SplicingSystem};
use crate::regular::Alphabet;
use crate::Result;

/// σ_R(words) = ⋃_r σ_r(words).
pub fn sigma_step(words: &BTreeSet<String>, rules: &[Rule]) -> BTreeSet<String> {
    rules
        .par_iter()
        .map(|r| {
            let mut parts = Parts::new(&Plain, r);
            let (mut new_l, mut new_r) = (Vec::new(), Vec::new());
            for w in words {
                parts.absorb(&Plain, r, w, &mut new_l, &mut new_r);
            }
            let mut out = BTreeSet::new();
            parts.extend(&Plain, new_l, new_r, usize::MAX, &mut |z| {
                out.insert(z);
            });
            out
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        })
}

/// Word representation used while saturating.
trait Codec: Sync {
    type W: Clone + Eq + Hash + Send + Sync;
    fn encode(&self, w: &str) -> Self::W;
    fn decode(&self, w: &Self::W) -> String;
    fn len(&self, w: &Self::W) -> usize;
    fn join(&self, left: &Self::W, bridge: &Self::W, right: &Self::W) -> Self::W;
}

struct Plain;

impl Codec for Plain {
    type W = String;

    fn encode(&self, w: &str) -> String {
        w.to_string()
    }

    fn decode(&self, w: &String) -> String {
        w.clone()
    }

    fn len(&self, w: &String) -> usize {
        w.len()
    }

    fn join(&self, left: &String, bridge: &String, right: &String) -> String {
        let mut z = String::with_capacity(left.len() + bridge.len() + right.len());
        z.push_str(left);
        z.push_str(bridge);
        z.push_str(right);
        z
    }
}

/// Symbol indices packed behind a leading sentinel bit.
struct Packed {
    sigma: Alphabet,
    bits: u32,
}

impl Packed {
    /// None when words of length `max_len` would not fit.
    fn new(sigma: &Alphabet, max_len: usize) -> Option<Packed> {
        let bits = usize::BITS - sigma.len().saturating_sub(1).leading_zeros();
        let bits = bits.max(1);
        (max_len.checked_mul(bits as usize)? < 128).then(|| Packed { sigma: sigma.clone(), bits })
    }
}

impl Codec for Packed {
    type W = u128;

    fn encode(&self, w: &str) -> u128 {
        w.chars().fold(1, |v, c| (v << self.bits) | self.sigma.index_of(c).expect("checked word") as u128)
    }

    fn decode(&self, w: &u128) -> String {
        let n = self.len(w);
        let mask = (1u128 << self.bits) - 1;
        (0..n)
            .rev()
            .map(|i| self.sigma.symbol(((w >> (i as u32 * self.bits)) & mask) as usize))
            .collect()
    }

    fn len(&self, w: &u128) -> usize {
        ((127 - w.leading_zeros()) / self.bits) as usize
    }

    fn join(&self, left: &u128, bridge: &u128, right: &u128) -> u128 {
        let append = |v: u128, w: u128| {
            let shift = self.len(&w) as u32 * self.bits;
            (v << shift) | (w ^ (1u128 << shift))
        };
        append(append(*left, *bridge), *right)
    }
}

/// Kept prefixes and suffixes of every word seen so far, for one rule.
///
/// A splice result depends on w1 only through the kept prefix and on w2
/// only through the kept suffix, so σ_r(W) = lefts(W) · bridge · rights(W).
/// Both sides are bucketed by length so products under a cap only touch
/// pairs that fit.
struct Parts<W> {
    bridge: W,
    bridge_len: usize,
    lefts: HashSet<W>,
    rights: HashSet<W>,
    lefts_by_len: Vec<Vec<W>>,
    rights_by_len: Vec<Vec<W>>,
}

fn bucket<W>(buckets: &mut Vec<Vec<W>>, len: usize, w: W) {
    if buckets.len() <= len {
        buckets.resize_with(len + 1, Vec::new);
    }
    buckets[len].push(w);
}

impl<W: Clone + Eq + Hash> Parts<W> {
    fn new<C: Codec<W = W>>(codec: &C, r: &Rule) -> Parts<W> {
        let bridge = match r {
            Rule::Classic(_) => "",
            Rule::Pixton(p) => p.v.as_str(),
        };
        Parts {
            bridge: codec.encode(bridge),
            bridge_len: bridge.len(),
            lefts: HashSet::new(),
            rights: HashSet::new(),
            lefts_by_len: Vec::new(),
            rights_by_len: Vec::new(),
        }
    }

    /// Records parts of `w`, pushing the newly seen ones.
    fn absorb<C: Codec<W = W>>(&mut self, codec: &C, r: &Rule, w: &str, new_l: &mut Vec<W>, new_r: &mut Vec<W>) {
        let (ls, rs): (Vec<&str>, Vec<&str>) = match r {
            Rule::Classic(c) => (c.left_parts(w).collect(), c.right_parts(w).collect()),
            Rule::Pixton(p) => (p.left_parts(w).collect(), p.right_parts(w).collect()),
        };
        for l in ls {
            let l = codec.encode(l);
            if self.lefts.insert(l.clone()) {
                new_l.push(l);
            }
        }
        for x in rs {
            let x = codec.encode(x);
            if self.rights.insert(x.clone()) {
                new_r.push(x);
            }
        }
    }

    /// Files new parts and emits every product of length ≤ cap that uses at
    /// least one of them.
    fn extend<C: Codec<W = W>>(&mut self, codec: &C, new_l: Vec<W>, new_r: Vec<W>, cap: usize, emit: &mut impl FnMut(W)) {
        let cap = cap.checked_sub(self.bridge_len);
        // new rights × old lefts
        for x in &new_r {
            let Some(budget) = cap.and_then(|c| c.checked_sub(codec.len(x))) else { continue };
            for bucket in self.lefts_by_len.iter().take(budget.saturating_add(1)) {
                for l in bucket {
                    emit(codec.join(l, &self.bridge, x));
                }
            }
        }
        for x in new_r {
            bucket(&mut self.rights_by_len, codec.len(&x), x);
        }
        // new lefts × all rights
        for l in &new_l {
            let Some(budget) = cap.and_then(|c| c.checked_sub(codec.len(l))) else { continue };
            for bucket in self.rights_by_len.iter().take(budget.saturating_add(1)) {
                for x in bucket {
                    emit(codec.join(l, &self.bridge, x));
                }
            }
        }
        for l in new_l {
            bucket(&mut self.lefts_by_len, codec.len(&l), l);
        }
    }
}

/// Brute-force closure truncated at `cap_len`: generated words longer than
/// the cap are discarded every round, so the result is a subset of
/// σ_R^*(I) ∩ Σ^{≤report_len}. Axioms are always kept.
pub fn bounded_closure(sys: &SplicingSystem, report_len: usize, cap_len: usize) -> Result<BTreeSet<String>> {
    let cap_len = cap_len.max(report_len);
    let axioms = sys.axiom_words()?;
    let longest = axioms.iter().map(String::len).max().unwrap_or(0);
    let bridge = sys.rules().iter().map(|r| match r {
        Rule::Classic(_) => 0,
        Rule::Pixton(p) => p.v.len(),
    });
    let widest = bridge.max().unwrap_or(0).max(longest).max(cap_len);
    Ok(match Packed::new(sys.alphabet(), widest) {
        Some(codec) => saturate(&codec, sys, &axioms, report_len, cap_len),
        None => saturate(&Plain, sys, &axioms, report_len, cap_len),
    })
}

fn saturate<C: Codec>(
    codec: &C,
    sys: &SplicingSystem,
    axioms: &[String],
    report_len: usize,
    cap_len: usize,
) -> BTreeSet<String> {
    let rules = sys.rules();
    let mut known: HashSet<C::W> = axioms.iter().map(|w| codec.encode(w)).collect();
    let mut parts: Vec<Parts<C::W>> = rules.iter().map(|r| Parts::new(codec, r)).collect();
    let mut frontier: Vec<String> = axioms.to_vec();
    while !frontier.is_empty() {
        // semi-naive: only products involving a part first seen this round
        let produced: Vec<HashSet<C::W>> = rules
            .par_iter()
            .zip(parts.par_iter_mut())
            .map(|(r, p)| {
                let (mut new_l, mut new_r) = (Vec::new(), Vec::new());
                for w in &frontier {
                    p.absorb(codec, r, w, &mut new_l, &mut new_r);
                }
                let mut out = HashSet::new();
                p.extend(codec, new_l, new_r, cap_len, &mut |z| {
                    if !known.contains(&z) {
                        out.insert(z);
                    }
                });
                out
            })
            .collect();
        frontier.clear();
        for z in produced.into_iter().flatten() {
            if known.insert(z.clone()) {
                frontier.push(codec.decode(&z));
            }
        }
    }
    known
        .iter()
        .filter(|w| codec.len(w) <= report_len)
        .map(|w| codec.decode(w))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regular::Alphabet;
    use crate::splicing::{ClassicRule, PixtonRule};

    fn set(words: &[&str]) -> BTreeSet<String> {
        words.iter().map(|w| w.to_string()).collect()
    }

    fn example_one() -> SplicingSystem {
        SplicingSystem::classic(
            Alphabet::new("ab").unwrap(),
            vec!["ab".into()],
            vec![ClassicRule::new("a", "b", "", "ab"), ClassicRule::new("ab", "", "a", "b")],
        )
        .unwrap()
    }

    #[test]
    fn sigma_step_examples() {
        let sys = example_one();
        assert_eq!(sigma_step(&set(&["ab"]), sys.rules()), set(&["aab", "abb"]));
        assert!(sigma_step(&set(&["ab"]), &[]).is_empty());
        assert!(sigma_step(&BTreeSet::new(), sys.rules()).is_empty());
    }

    #[test]
    fn sigma_step_matches_pairwise_splicing() {
        let rules = vec![
            Rule::Pixton(PixtonRule::new("a", "b", "c")),
            Rule::Classic(ClassicRule::new("", "a", "b", "")),
        ];
        let words = set(&["aab", "ba", "cab", ""]);
        let mut pairwise = BTreeSet::new();
        for r in &rules {
            for w1 in &words {
                for w2 in &words {
                    pairwise.extend(r.splice(w1, w2));
                }
            }
        }
        assert_eq!(sigma_step(&words, &rules), pairwise);
    }

    #[test]
    fn closure_example_one() {
        let got = bounded_closure(&example_one(), 4, 8).unwrap();
        assert_eq!(got, set(&["ab", "aab", "abb", "aaab", "aabb", "abbb"]));
    }

    #[test]
    fn closure_without_rules() {
        let sys = SplicingSystem::classic(
            Alphabet::new("ab").unwrap(),
            vec!["ab".into(), "abab".into(), "b".into()],
            vec![],
        )
        .unwrap();
        assert_eq!(bounded_closure(&sys, 3, 3).unwrap(), set(&["ab", "b"]));
    }

    #[test]
    fn closure_marker_system() {
        let sys = SplicingSystem::classic(
            Alphabet::new("ab").unwrap(),
            vec!["b".into(), "baa".into()],
            vec![ClassicRule::new("baa", "", "b", "")],
        )
        .unwrap();
        assert_eq!(
            bounded_closure(&sys, 7, 9).unwrap(),
            set(&["b", "baa", "baaaa", "baaaaaa"])
        );
    }
}
