use std::fmt;

use serde::{Deserialize, Serialize};

use crate::word::{TwoGenWord, Word};

/// A finite presentation. Relator letters index into `generators`, so every
/// relator has modulus `generators.len()`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Self {
        let g = generators.len();
        assert!(relators.iter().all(|r| r.modulus() == g), "relator modulus must equal generator count");
        Presentation { generators, relators }
    }

    /// Generators named `x1..xn`.
    pub fn indexed(n: usize, relators: Vec<Word>) -> Self {
        Presentation::new((1..=n).map(|i| format!("x{i}")).collect(), relators)
    }

    /// `<a, c | relators>` with `a -> x1`, `c -> x2`.
    pub fn two_generator(relators: &[TwoGenWord]) -> Self {
        Presentation::new(
            vec!["a".into(), "c".into()],
            relators.iter().map(TwoGenWord::to_word).collect(),
        )
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    /// Deficiency: generators minus relators.
    pub fn deficiency(&self) -> i64 {
        self.generators.len() as i64 - self.relators.len() as i64
    }

    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".into();
        }
        let mut parts = Vec::new();
        let letters = w.letters();
        let mut i = 0;
        while i < letters.len() {
            let mut j = i;
            while j < letters.len() && letters[j] == letters[i] {
                j += 1;
            }
            let pow = (j - i) as i64 * letters[i].exponent();
            let name = &self.generators[letters[i].index];
            parts.push(if pow == 1 { name.clone() } else { format!("{name}^{pow}") });
            i = j;
        }
        parts.join(" ")
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| self.format_word(r)).collect();
        write!(f, "< {} | {} >", self.generators.join(", "), rels.join(", "))
    }
}
