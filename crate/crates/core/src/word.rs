//! Words in the free group on `x_1, ..., x_n` with subscripts read mod `n`,
//! and words over the two-letter alphabet `{a, c}`.
//!
//! Subscripts are stored as 0-based residues and displayed 1-based. Words are
//! kept letter by letter so that rotations and star-graph scans are positional;
//! exponent notation only exists at the parse/print boundary.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Something that has a formal inverse letter.
pub trait Invertible: Copy + Eq {
    fn inv(self) -> Self;
}

/// Push `l` onto a freely reduced stack, cancelling against the top.
pub(crate) fn push_reduced<L: Invertible>(stack: &mut Vec<L>, l: L) {
    if stack.last().is_some_and(|&top| top == l.inv()) {
        stack.pop();
    } else {
        stack.push(l);
    }
}

pub(crate) fn reduce_letters<L: Invertible>(letters: impl IntoIterator<Item = L>) -> Vec<L> {
    let mut out = Vec::new();
    for l in letters {
        push_reduced(&mut out, l);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    /// 0-based residue; `x_{index + 1}` in display.
    pub index: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(index: usize, inverse: bool) -> Self {
        Letter { index, inverse }
    }

    pub fn exponent(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

impl Invertible for Letter {
    fn inv(self) -> Self {
        Letter {
            index: self.index,
            inverse: !self.inverse,
        }
    }
}

/// Residue of a 1-based (possibly negative or oversized) subscript.
pub fn subscript_residue(subscript: i64, n: usize) -> usize {
    (subscript - 1).rem_euclid(n as i64) as usize
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word {
    modulus: usize,
    letters: Vec<Letter>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentData {
    /// Exponent sum of `x_{j+1}` at position `j`.
    pub per_generator: Vec<i64>,
    pub total: i64,
    pub admissible: bool,
}

/// `w2 == rotate_left(shift(w1 or w1^-1, shift), rotation)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicWitness {
    pub shift: i64,
    pub inverted: bool,
    pub rotation: usize,
}

impl Word {
    pub fn identity(modulus: usize) -> Self {
        assert!(modulus >= 1, "modulus must be positive");
        Word {
            modulus,
            letters: Vec::new(),
        }
    }

    /// Build from letters as given (no reduction). Indices are taken mod `modulus`.
    pub fn from_letters(modulus: usize, letters: impl IntoIterator<Item = Letter>) -> Self {
        assert!(modulus >= 1, "modulus must be positive");
        Word {
            modulus,
            letters: letters
                .into_iter()
                .map(|l| Letter::new(l.index % modulus, l.inverse))
                .collect(),
        }
    }

    /// Build from `(subscript, power)` pairs in 1-based paper notation,
    /// e.g. `[(1, 1), (1 + m, 1), (1 + k, -1)]`. Powers are expanded, nothing
    /// is reduced.
    pub fn from_powers(modulus: usize, powers: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut letters = Vec::new();
        for (sub, pow) in powers {
            let l = Letter::new(subscript_residue(sub, modulus), pow < 0);
            letters.extend(std::iter::repeat_n(l, pow.unsigned_abs() as usize));
        }
        Word::from_letters(modulus, letters)
    }

    pub fn generator(modulus: usize, index: usize) -> Self {
        Word::from_letters(modulus, [Letter::new(index, false)])
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.letters.windows(2).all(|p| p[0] != p[1].inv())
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.is_freely_reduced()
            && match (self.letters.first(), self.letters.last()) {
                (Some(&f), Some(&l)) if self.letters.len() > 1 => f != l.inv(),
                _ => true,
            }
    }

    pub fn free_reduce(&self) -> Word {
        Word {
            modulus: self.modulus,
            letters: reduce_letters(self.letters.iter().copied()),
        }
    }

    /// Returns `(core, conjugator)` with `conjugator * core * conjugator^-1`
    /// freely equal to `self` and `core` cyclically reduced.
    pub fn cyclically_reduce(&self) -> (Word, Word) {
        let reduced = self.free_reduce().letters;
        let mut lo = 0;
        let mut hi = reduced.len();
        while hi - lo >= 2 && reduced[lo] == reduced[hi - 1].inv() {
            lo += 1;
            hi -= 1;
        }
        (
            Word::from_letters(self.modulus, reduced[lo..hi].iter().copied()),
            Word::from_letters(self.modulus, reduced[..lo].iter().copied()),
        )
    }

    /// Concatenation followed by free reduction.
    pub fn mul(&self, other: &Word) -> Word {
        assert_eq!(self.modulus, other.modulus, "modulus mismatch");
        let mut letters = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut letters, l);
        }
        Word {
            modulus: self.modulus,
            letters,
        }
    }

    /// Concatenation without reduction.
    pub fn concat(&self, other: &Word) -> Word {
        assert_eq!(self.modulus, other.modulus, "modulus mismatch");
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word {
            modulus: self.modulus,
            letters,
        }
    }

    pub fn inverse(&self) -> Word {
        Word {
            modulus: self.modulus,
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    pub fn exponent_data(&self) -> ExponentData {
        let mut per_generator = vec![0i64; self.modulus];
        for l in &self.letters {
            per_generator[l.index] += l.exponent();
        }
        let total = per_generator.iter().sum();
        ExponentData {
            per_generator,
            total,
            admissible: total == 1 || total == -1,
        }
    }

    /// The shift automorphism `x_i -> x_{i+s}`.
    pub fn shift(&self, s: i64) -> Word {
        let n = self.modulus as i64;
        Word {
            modulus: self.modulus,
            letters: self
                .letters
                .iter()
                .map(|l| Letter::new((l.index as i64 + s).rem_euclid(n) as usize, l.inverse))
                .collect(),
        }
    }

    pub fn rotate_left(&self, r: usize) -> Word {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            let len = letters.len();
            letters.rotate_left(r % len);
        }
        Word {
            modulus: self.modulus,
            letters,
        }
    }

    /// All rotations, in order `0..len`. The empty word yields itself once.
    pub fn rotations(&self) -> impl Iterator<Item = Word> + '_ {
        (0..self.letters.len().max(1)).map(move |r| self.rotate_left(r))
    }

    /// Homomorphic image under `x_{i+1} -> images[i]`.
    pub fn substitute<T: WordImage>(&self, images: &[T]) -> Result<T> {
        if images.len() != self.modulus {
            return Err(Error::ImageCountMismatch {
                expected: self.modulus,
                found: images.len(),
            });
        }
        let inverses: Vec<T> = images.iter().map(WordImage::inverse).collect();
        let mut acc = images[0].identity_like();
        for l in &self.letters {
            let img = if l.inverse {
                &inverses[l.index]
            } else {
                &images[l.index]
            };
            acc = acc.product(img);
        }
        Ok(acc)
    }

    /// Is `other` a rotation of a shift of `self` or of `self^-1`?
    ///
    /// Shifts are tried in the order `0, 1, -1, 2, -2, ...` so the witness
    /// carries the smallest shift in absolute value.
    pub fn cyclic_equivalent(&self, other: &Word) -> Result<Option<CyclicWitness>> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.modulus, other.modulus));
        }
        if self.len() != other.len() {
            return Ok(None);
        }
        let n = self.modulus as i64;
        let inverse = self.inverse();
        for s in symmetric_shifts(n) {
            for (inverted, base) in [(false, self), (true, &inverse)] {
                let shifted = base.shift(s);
                for rotation in 0..self.len().max(1) {
                    if shifted.rotate_left(rotation) == *other {
                        return Ok(Some(CyclicWitness {
                            shift: s,
                            inverted,
                            rotation,
                        }));
                    }
                }
            }
        }
        Ok(None)
    }

    pub fn apply_witness(&self, w: CyclicWitness) -> Word {
        let base = if w.inverted {
            self.inverse()
        } else {
            self.clone()
        };
        base.shift(w.shift).rotate_left(w.rotation)
    }

    /// Reinterpret the letters over a different modulus. Indices must fit.
    pub fn with_modulus(&self, modulus: usize) -> Word {
        assert!(self.letters.iter().all(|l| l.index < modulus));
        Word {
            modulus,
            letters: self.letters.clone(),
        }
    }
}

/// `0, 1, -1, 2, -2, ...` covering each residue mod `n` exactly once.
pub(crate) fn symmetric_shifts(n: i64) -> impl Iterator<Item = i64> {
    (0..n).map(|i| if i % 2 == 1 { i / 2 + 1 } else { -(i / 2) })
}

/// Format `(symbol, power)` runs as `x1^2 x4 x2^-1`.
pub(crate) fn write_runs<T: PartialEq + Copy>(
    f: &mut fmt::Formatter<'_>,
    items: &[(T, bool)],
    name: impl Fn(T) -> String,
) -> fmt::Result {
    if items.is_empty() {
        return f.write_str("1");
    }
    let mut i = 0;
    let mut first = true;
    while i < items.len() {
        let (g, inv) = items[i];
        let mut j = i;
        while j < items.len() && items[j] == (g, inv) {
            j += 1;
        }
        let pow = (j - i) as i64 * if inv { -1 } else { 1 };
        if !first {
            f.write_str(" ")?;
        }
        first = false;
        if pow == 1 {
            write!(f, "{}", name(g))?;
        } else {
            write!(f, "{}^{}", name(g), pow)?;
        }
        i = j;
    }
    Ok(())
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<(usize, bool)> = self.letters.iter().map(|l| (l.index, l.inverse)).collect();
        write_runs(f, &items, |i| format!("x{}", i + 1))
    }
}

/// Group-like values that substitution can target.
pub trait WordImage: Clone {
    fn identity_like(&self) -> Self;
    /// Product, freely reduced.
    fn product(&self, other: &Self) -> Self;
    fn inverse(&self) -> Self;
}

impl WordImage for Word {
    fn identity_like(&self) -> Self {
        Word::identity(self.modulus)
    }
    fn product(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn inverse(&self) -> Self {
        Word::inverse(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TwoGen {
    A,
    C,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TwoLetter {
    pub gen: TwoGen,
    pub inverse: bool,
}

impl Invertible for TwoLetter {
    fn inv(self) -> Self {
        TwoLetter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }
}

/// One syllable `a^alpha c^gamma` of a two-generator word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Syllable {
    pub alpha: i64,
    pub gamma: i64,
}

/// A word over `{a, c}`, interpreted in `<a, c | [a, c^n]>` by its consumers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwoGenWord {
    letters: Vec<TwoLetter>,
}

impl TwoGenWord {
    pub fn identity() -> Self {
        TwoGenWord::default()
    }

    pub fn from_letters(letters: impl IntoIterator<Item = TwoLetter>) -> Self {
        TwoGenWord {
            letters: letters.into_iter().collect(),
        }
    }

    pub fn power(gen: TwoGen, pow: i64) -> Self {
        let l = TwoLetter {
            gen,
            inverse: pow < 0,
        };
        TwoGenWord {
            letters: vec![l; pow.unsigned_abs() as usize],
        }
    }

    pub fn a() -> Self {
        Self::power(TwoGen::A, 1)
    }

    pub fn c(pow: i64) -> Self {
        Self::power(TwoGen::C, pow)
    }

    /// Product of `(gen, power)` runs, freely reduced.
    pub fn from_runs(runs: impl IntoIterator<Item = (TwoGen, i64)>) -> Self {
        runs.into_iter()
            .fold(TwoGenWord::identity(), |acc, (g, p)| acc.mul(&Self::power(g, p)))
    }

    pub fn letters(&self) -> &[TwoLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mul(&self, other: &TwoGenWord) -> TwoGenWord {
        let mut letters = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut letters, l);
        }
        TwoGenWord { letters }
    }

    pub fn inverse(&self) -> TwoGenWord {
        TwoGenWord {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    pub fn free_reduce(&self) -> TwoGenWord {
        TwoGenWord {
            letters: reduce_letters(self.letters.iter().copied()),
        }
    }

    fn exponent_sum(&self, gen: TwoGen) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.gen == gen)
            .map(|l| if l.inverse { -1 } else { 1 })
            .sum()
    }

    pub fn asum(&self) -> i64 {
        self.exponent_sum(TwoGen::A)
    }

    pub fn csum(&self) -> i64 {
        self.exponent_sum(TwoGen::C)
    }

    /// Maximal runs of one generator, as signed powers.
    pub fn runs(&self) -> Vec<(TwoGen, i64)> {
        let mut runs: Vec<(TwoGen, i64)> = Vec::new();
        for l in &self.letters {
            let e = if l.inverse { -1 } else { 1 };
            match runs.last_mut() {
                Some((g, p)) if *g == l.gen => *p += e,
                _ => runs.push((l.gen, e)),
            }
        }
        runs.retain(|&(_, p)| p != 0);
        runs
    }

    /// Decompose a freely reduced word as `a^{alpha_1} c^{gamma_1} ... a^{alpha_k} c^{gamma_k}`
    /// after moving a leading `c`-run to the end (a cyclic permutation).
    /// Returns `None` when the word contains no `a`.
    pub fn syllables(&self) -> Option<Vec<Syllable>> {
        let mut runs = self.free_reduce().runs();
        if !runs.iter().any(|&(g, _)| g == TwoGen::A) {
            return None;
        }
        if runs[0].0 == TwoGen::C {
            let lead = runs.remove(0);
            match runs.last_mut() {
                Some((TwoGen::C, p)) => *p += lead.1,
                _ => runs.push(lead),
            }
        }
        let mut out: Vec<Syllable> = Vec::new();
        for (g, p) in runs {
            match g {
                TwoGen::A => out.push(Syllable { alpha: p, gamma: 0 }),
                TwoGen::C => out.last_mut().expect("starts with a").gamma += p,
            }
        }
        Some(out)
    }

    /// Replace every `a` by the given word (and `a^-1` by its inverse),
    /// keeping `c`. Result freely reduced.
    pub fn replace_a(&self, image: &TwoGenWord) -> TwoGenWord {
        let inv = image.inverse();
        let mut acc = TwoGenWord::identity();
        for l in &self.letters {
            let piece = match (l.gen, l.inverse) {
                (TwoGen::A, false) => image.clone(),
                (TwoGen::A, true) => inv.clone(),
                (TwoGen::C, _) => TwoGenWord::from_letters([*l]),
            };
            acc = acc.mul(&piece);
        }
        acc
    }

    /// As a word over two generators: `a -> x1`, `c -> x2`.
    pub fn to_word(&self) -> Word {
        Word::from_letters(
            2,
            self.letters.iter().map(|l| {
                Letter::new(
                    match l.gen {
                        TwoGen::A => 0,
                        TwoGen::C => 1,
                    },
                    l.inverse,
                )
            }),
        )
    }

    /// `[a, c^n] = a^-1 c^-n a c^n`.
    pub fn commutator_a_cn(n: usize) -> TwoGenWord {
        let n = n as i64;
        TwoGenWord::from_runs([(TwoGen::A, -1), (TwoGen::C, -n), (TwoGen::A, 1), (TwoGen::C, n)])
    }
}

impl WordImage for TwoGenWord {
    fn identity_like(&self) -> Self {
        TwoGenWord::identity()
    }
    fn product(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn inverse(&self) -> Self {
        TwoGenWord::inverse(self)
    }
}

impl fmt::Display for TwoGenWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<(TwoGen, bool)> = self.letters.iter().map(|l| (l.gen, l.inverse)).collect();
        write_runs(f, &items, |g| {
            match g {
                TwoGen::A => "a",
                TwoGen::C => "c",
            }
            .to_string()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize, p: &[(i64, i64)]) -> Word {
        Word::from_powers(n, p.iter().copied())
    }

    #[test]
    fn free_reduce_examples() {
        assert!(w(3, &[(1, 1), (1, -1)]).free_reduce().is_empty());
        assert_eq!(
            w(3, &[(1, 1), (2, 1), (2, -1), (1, 1)]).free_reduce(),
            w(3, &[(1, 2)])
        );
        let u = w(5, &[(1, 1), (4, 1), (2, -1)]);
        assert_eq!(u.free_reduce(), u);
    }

    #[test]
    fn cyclically_reduce_examples() {
        let (core, conj) = w(3, &[(2, -1), (1, 1), (2, 1)]).cyclically_reduce();
        assert_eq!(core, w(3, &[(1, 1)]));
        assert_eq!(conj, w(3, &[(2, -1)]));
        let (core, conj) = w(3, &[(1, 1), (2, 1)]).cyclically_reduce();
        assert_eq!(core, w(3, &[(1, 1), (2, 1)]));
        assert!(conj.is_empty());
        let (core, conj) = Word::identity(3).cyclically_reduce();
        assert!(core.is_empty() && conj.is_empty());
    }

    #[test]
    fn exponent_data_examples() {
        let (n, m, k) = (7, 2, 4);
        let d = w(n, &[(1, 1), (1 + m, 1), (1 + k, -1)]).exponent_data();
        assert_eq!((d.total, d.admissible), (1, true));
        let d = w(3, &[(1, 1), (2, 1), (1, -1), (2, -1)]).exponent_data();
        assert_eq!((d.total, d.admissible), (0, false));
        let d = w(3, &[(1, 1)]).exponent_data();
        assert_eq!((d.total, d.admissible), (1, true));
    }

    #[test]
    fn shift_examples() {
        assert_eq!(
            w(3, &[(1, 1), (2, 1), (3, -1)]).shift(1),
            w(3, &[(2, 1), (3, 1), (1, -1)])
        );
        assert_eq!(w(5, &[(1, 1)]).shift(-1), w(5, &[(5, 1)]));
        let u = w(5, &[(1, 1), (4, -2), (2, 1)]);
        assert_eq!(u.shift(5), u);
    }

    #[test]
    fn substitute_examples() {
        let a = TwoGenWord::a();
        assert_eq!(
            w(2, &[(1, 1), (2, 1)]).substitute(&[a.clone(), a.clone()]).unwrap(),
            TwoGenWord::from_runs([(TwoGen::A, 2)])
        );
        let ac = TwoGenWord::from_runs([(TwoGen::A, 1), (TwoGen::C, -1)]);
        assert_eq!(
            w(2, &[(1, 1)]).substitute(&[ac.clone(), a.clone()]).unwrap(),
            ac
        );
        // x_i -> c^{i-1} a c^{-i}
        let images: Vec<TwoGenWord> = (1..=5)
            .map(|i| TwoGenWord::from_runs([(TwoGen::C, i - 1), (TwoGen::A, 1), (TwoGen::C, -i)]))
            .collect();
        let got = w(5, &[(1, 1), (4, 1), (2, -1)]).substitute(&images).unwrap();
        let want = TwoGenWord::from_runs([
            (TwoGen::A, 1),
            (TwoGen::C, 2),
            (TwoGen::A, 1),
            (TwoGen::C, -2),
            (TwoGen::A, -1),
            (TwoGen::C, -1),
        ]);
        assert_eq!(got, want);
        assert_eq!(
            w(3, &[(1, 1)]).substitute(&[a]).unwrap_err(),
            Error::ImageCountMismatch {
                expected: 3,
                found: 1
            }
        );
    }

    #[test]
    fn cyclic_equivalence_examples() {
        let n = 7i64;
        let g1a = w(7, &[(1, -1), (2, 1), (1, -1), (2, 1), (n, 1), (1, -1), (n, 1)]);
        let g1b = w(
            7,
            &[(1, -1), (n, 1), (1, -1), (n, 1), (n - 1, -1), (n, 1), (n - 1, -1)],
        );
        let wit = g1a.cyclic_equivalent(&g1b).unwrap().unwrap();
        assert_eq!((wit.shift, wit.inverted), (-1, true));
        assert_eq!(g1a.apply_witness(wit), g1b);

        assert_eq!(
            g1a.cyclic_equivalent(&g1a).unwrap(),
            Some(CyclicWitness {
                shift: 0,
                inverted: false,
                rotation: 0
            })
        );
        assert_eq!(
            w(5, &[(1, 1)]).cyclic_equivalent(&w(5, &[(2, -1)])).unwrap(),
            Some(CyclicWitness {
                shift: 1,
                inverted: true,
                rotation: 0
            })
        );
        assert_eq!(
            w(5, &[(1, 1), (2, 1)]).cyclic_equivalent(&w(5, &[(1, 1), (3, 1)])).unwrap(),
            None
        );
    }

    #[test]
    fn syllables_rotate_leading_c() {
        let u = TwoGenWord::from_runs([(TwoGen::C, 2), (TwoGen::A, 1), (TwoGen::C, -1)]);
        assert_eq!(u.syllables().unwrap(), vec![Syllable { alpha: 1, gamma: 1 }]);
        assert_eq!(TwoGenWord::c(3).syllables(), None);
    }

    #[test]
    fn display_compresses_runs() {
        assert_eq!(w(5, &[(1, 2), (4, 1), (2, -1)]).to_string(), "x1^2 x4 x2^-1");
        assert_eq!(Word::identity(2).to_string(), "1");
        assert_eq!(TwoGenWord::commutator_a_cn(3).to_string(), "a^-1 c^-3 a c^3");
    }
}
