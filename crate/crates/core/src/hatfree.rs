//! Exact arithmetic in `<a, c | [a, c^n]>`, which is `F_n x| Z` with `Z`
//! acting by the shift. Elements are kept in the normal form `u c^e` with `u`
//! a freely reduced word over `x_1..x_n` and `x_{d+1} = c^d a c^-d`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::word::{symmetric_shifts, Letter, TwoGen, TwoGenWord, Word};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HatElement {
    pub u: Word,
    pub e: i64,
}

impl HatElement {
    pub fn identity(n: usize) -> Self {
        HatElement {
            u: Word::identity(n),
            e: 0,
        }
    }

    /// `u c^e`; `u` is freely reduced on entry.
    pub fn new(u: Word, e: i64) -> Self {
        HatElement {
            u: u.free_reduce(),
            e,
        }
    }

    pub fn c_power(n: usize, e: i64) -> Self {
        HatElement::new(Word::identity(n), e)
    }

    pub fn n(&self) -> usize {
        self.u.modulus()
    }

    pub fn is_identity(&self) -> bool {
        self.u.is_empty() && self.e == 0
    }

    /// `(u1, e1)(u2, e2) = (u1 shift(u2, e1), e1 + e2)`.
    pub fn mul(&self, other: &HatElement) -> HatElement {
        HatElement {
            u: self.u.mul(&other.u.shift(self.e)),
            e: self.e + other.e,
        }
    }

    pub fn inverse(&self) -> HatElement {
        HatElement {
            u: self.u.inverse().shift(-self.e),
            e: -self.e,
        }
    }

    /// `w self w^-1`.
    pub fn conjugate_by(&self, w: &HatElement) -> HatElement {
        w.mul(self).mul(&w.inverse())
    }
}

impl fmt::Display for HatElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, c^{})", self.u, self.e)
    }
}

/// Normal form of a word in `a, c`.
pub fn hat_rewrite(w: &TwoGenWord, n: usize) -> HatElement {
    assert!(n >= 1, "n must be positive");
    let mut d: i64 = 0;
    let mut letters = Vec::with_capacity(w.len());
    for l in w.letters() {
        match l.gen {
            TwoGen::A => letters.push(Letter::new(d.rem_euclid(n as i64) as usize, l.inverse)),
            TwoGen::C => d += if l.inverse { -1 } else { 1 },
        }
    }
    HatElement::new(Word::from_letters(n, letters), d)
}

/// Inverse of [`hat_rewrite`] up to equality in the group: `u c^e` as an
/// `{a, c}`-word.
pub fn hat_to_word(h: &HatElement) -> TwoGenWord {
    let mut runs = Vec::new();
    let mut d = 0i64;
    for l in h.u.letters() {
        let target = l.index as i64;
        runs.push((TwoGen::C, target - d));
        runs.push((TwoGen::A, l.exponent()));
        d = target;
    }
    runs.push((TwoGen::C, h.e - d));
    TwoGenWord::from_runs(runs)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HatConjugacy {
    /// `w` with `w g w^-1 = h`, verified.
    Witness(HatElement),
    /// Nothing found within the bound; this is not a proof of non-conjugacy.
    Unknown,
}

impl HatConjugacy {
    pub fn witness(&self) -> Option<&HatElement> {
        match self {
            HatConjugacy::Witness(w) => Some(w),
            HatConjugacy::Unknown => None,
        }
    }
}

/// Look for `w` with `w g w^-1 = h`.
///
/// A supplied witness is verified exactly. Otherwise, or if it fails, the
/// candidates `c^j p` and `c^j p^-1` are tried for every prefix `p` of the
/// free part of `g` and `|j| <= bound`.
pub fn hat_conjugate(
    g: &HatElement,
    h: &HatElement,
    bound: usize,
    witness: Option<&HatElement>,
) -> HatConjugacy {
    assert_eq!(g.n(), h.n(), "modulus mismatch");
    if let Some(w) = witness {
        if g.conjugate_by(w) == *h {
            return HatConjugacy::Witness(w.clone());
        }
    }
    if g.e != h.e {
        return HatConjugacy::Unknown;
    }
    let n = g.n();
    let letters = g.u.letters();
    let prefixes: Vec<HatElement> = (0..=letters.len())
        .map(|i| HatElement::new(Word::from_letters(n, letters[..i].iter().copied()), 0))
        .collect();
    for j in symmetric_shifts(2 * bound as i64 + 1) {
        let cj = HatElement::c_power(n, j);
        for p in &prefixes {
            for q in [p.clone(), p.inverse()] {
                let w = cj.mul(&q);
                if g.conjugate_by(&w) == *h {
                    return HatConjugacy::Witness(w);
                }
            }
        }
    }
    HatConjugacy::Unknown
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use TwoGen::{A, C};

    fn tw(runs: &[(TwoGen, i64)]) -> TwoGenWord {
        TwoGenWord::from_runs(runs.iter().copied())
    }

    fn w(n: usize, p: &[(i64, i64)]) -> Word {
        Word::from_powers(n, p.iter().copied())
    }

    #[test]
    fn rewrite_examples() {
        for n in 1..8 {
            assert!(hat_rewrite(&TwoGenWord::commutator_a_cn(n), n).is_identity());
            let conj = tw(&[(C, -(n as i64)), (A, 1), (C, n as i64)]);
            assert_eq!(hat_rewrite(&conj, n), hat_rewrite(&TwoGenWord::a(), n));
        }
        assert_eq!(
            hat_rewrite(&tw(&[(A, 1), (C, 1), (A, 1), (C, -1)]), 3),
            HatElement::new(w(3, &[(1, 1), (2, 1)]), 0)
        );
        assert_eq!(
            hat_rewrite(&tw(&[(A, 1), (C, 2), (A, 1), (C, -2), (A, -1), (C, -1)]), 5),
            HatElement::new(w(5, &[(1, 1), (3, 1), (1, -1)]), -1)
        );
    }

    #[test]
    fn conjugacy_examples() {
        let g = HatElement::new(w(5, &[(1, 1), (3, -1)]), 2);
        let id = HatElement::identity(5);
        assert_eq!(hat_conjugate(&g, &g, 0, Some(&id)), HatConjugacy::Witness(id.clone()));

        let x1 = HatElement::new(w(4, &[(1, 1)]), 0);
        let x2 = HatElement::new(w(4, &[(2, 1)]), 0);
        assert_eq!(hat_conjugate(&x1, &x2, 0, None), HatConjugacy::Unknown);
        assert_eq!(
            hat_conjugate(&x1, &x2, 1, None),
            HatConjugacy::Witness(HatElement::c_power(4, 1))
        );
        // A wrong witness falls back to the search.
        assert_eq!(hat_conjugate(&x1, &x2, 0, Some(&x1)), HatConjugacy::Unknown);
    }

    #[test]
    fn twisted_rotation_is_found() {
        // (x1 x2, 1) conjugated by x1^-1 gives (x2 x2, 1).
        let g = HatElement::new(w(5, &[(1, 1), (2, 1)]), 1);
        let h = g.conjugate_by(&HatElement::new(w(5, &[(1, -1)]), 0));
        assert_eq!(h, HatElement::new(w(5, &[(2, 2)]), 1));
        let found = hat_conjugate(&g, &h, 0, None);
        assert_eq!(g.conjugate_by(found.witness().unwrap()), h);
    }

    #[test]
    fn to_word_round_trip() {
        let h = HatElement::new(w(6, &[(3, 1), (1, -2), (6, 1)]), -4);
        assert_eq!(hat_rewrite(&hat_to_word(&h), 6), h);
    }

    fn two_gen_word() -> impl Strategy<Value = TwoGenWord> {
        proptest::collection::vec((prop::bool::ANY, prop::bool::ANY), 0..30).prop_map(|v| {
            TwoGenWord::from_runs(
                v.into_iter()
                    .map(|(is_a, inv)| (if is_a { A } else { C }, if inv { -1 } else { 1 })),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn rewrite_is_a_homomorphism(u in two_gen_word(), v in two_gen_word(), n in 1usize..8) {
            let lhs = hat_rewrite(&u.mul(&v), n);
            let rhs = hat_rewrite(&u, n).mul(&hat_rewrite(&v, n));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn inverse_is_two_sided(u in two_gen_word(), n in 1usize..8) {
            let h = hat_rewrite(&u, n);
            prop_assert!(h.mul(&h.inverse()).is_identity());
            prop_assert!(h.inverse().mul(&h).is_identity());
            prop_assert_eq!(hat_rewrite(&u.inverse(), n), h.inverse());
        }
    }
}
