use super::SyntacticMonoid;
use crate::{Error, Result};

/// A factorization w = αβγ with β ≠ ε, α ∼ αβ and γ ∼ βγ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PumpingFactorization {
    pub alpha: String,
    pub beta: String,
    pub gamma: String,
}

impl PumpingFactorization {
    /// αβγ
    pub fn word(&self) -> String {
        format!("{}{}{}", self.alpha, self.beta, self.gamma)
    }

    /// αβ^jγ
    pub fn pumped(&self, j: usize) -> String {
        format!("{}{}{}", self.alpha, self.beta.repeat(j), self.gamma)
    }
}

/// Output of [`SyntacticMonoid::pump_normalize`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PumpNormalization {
    pub word: String,
    /// Number of αβγ ↦ αβ^jγ replacements performed.
    pub steps: usize,
}

impl SyntacticMonoid {
    /// Splits `w` at the first pair of positions i < j (in lexicographic order
    /// of (i, j)) whose prefix classes and suffix classes both coincide.
    ///
    /// Requires |w| ≥ m², which makes such a pair exist by pigeonhole.
    pub fn pumping_factorization(&self, w: &str) -> Result<PumpingFactorization> {
        let m = self.size();
        let required = m * m;
        let word = self.alphabet().encode(w)?;
        let n = word.len();
        if n < required {
            return Err(Error::WordTooShort { length: n, required });
        }
        let mut prefix = Vec::with_capacity(n + 1);
        prefix.push(self.identity());
        for &a in &word {
            prefix.push(self.multiply(*prefix.last().unwrap(), self.generator(a)));
        }
        let mut suffix = vec![self.identity(); n + 1];
        for i in (0..n).rev() {
            suffix[i] = self.multiply(self.generator(word[i]), suffix[i + 1]);
        }
        for i in 0..n {
            for j in i + 1..=n {
                if prefix[i] == prefix[j] && suffix[i] == suffix[j] {
                    return Ok(PumpingFactorization {
                        alpha: w[..i].to_string(),
                        beta: w[i..j].to_string(),
                        gamma: w[j..].to_string(),
                    });
                }
            }
        }
        unreachable!("pigeonhole guarantees a repeated (prefix, suffix) class pair")
    }

    /// Repeatedly replaces the leftmost occurrence of αβγ in `z` that neither
    /// starts a factor αβ^{j/2} nor ends a factor β^{j/2}γ by αβ^jγ, until no
    /// such occurrence remains. The class of the word is unchanged.
    pub fn pump_normalize(
        &self,
        z: &str,
        f: &PumpingFactorization,
        j: usize,
    ) -> Result<PumpNormalization> {
        self.alphabet().check_word(z)?;
        if f.beta.is_empty() {
            return Err(Error::InvalidFactorization("β is empty".into()));
        }
        let h = |w: &str| self.class_of(w);
        if h(&f.alpha)? != h(&format!("{}{}", f.alpha, f.beta))?
            || h(&f.gamma)? != h(&format!("{}{}", f.beta, f.gamma))?
        {
            return Err(Error::InvalidFactorization(
                "requires α ∼ αβ and γ ∼ βγ".into(),
            ));
        }
        let pattern = f.word();
        let min_exclusive = z.len() + pattern.len();
        if j % 2 != 0 || j <= min_exclusive {
            return Err(Error::InvalidPumpCount { j, min_exclusive });
        }

        let half = j / 2;
        let lead = format!("{}{}", f.alpha, f.beta.repeat(half));
        let trail = format!("{}{}", f.beta.repeat(half), f.gamma);
        let pumped = f.pumped(j);

        let mut word = z.to_string();
        let mut steps = 0;
        while let Some(k) = first_violation(&word, &pattern, &lead, &trail) {
            word.replace_range(k..k + pattern.len(), &pumped);
            steps += 1;
        }
        Ok(PumpNormalization { word, steps })
    }
}

/// Leftmost occurrence of `pattern` in `word` that is neither followed by
/// `lead` from its start nor preceded by `trail` at its end.
pub(crate) fn first_violation(word: &str, pattern: &str, lead: &str, trail: &str) -> Option<usize> {
    let l = pattern.len();
    if l > word.len() {
        return None;
    }
    (0..=word.len() - l).find(|&k| {
        word[k..].starts_with(pattern)
            && !word[k..].starts_with(lead)
            && !word[..k + l].ends_with(trail)
    })
}
