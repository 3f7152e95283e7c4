//! Cyclic presentations, the presentation families built on them, and the
//! exact transformations between a cyclic word and the two-generator
//! presentation `<a, c | W(a, c), [a, c^n]>` of its natural HNN extension.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::word::{CyclicWitness, Letter, TwoGen, TwoGenWord, Word};

/// `G_n(w)`: relators are the `n` shifts of `word`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclicWord {
    pub n: usize,
    pub word: Word,
}

impl CyclicWord {
    pub fn new(word: Word) -> Self {
        CyclicWord {
            n: word.modulus(),
            word,
        }
    }

    pub fn presentation(&self) -> Result<Presentation> {
        if self.word.is_empty() {
            return Err(Error::EmptyWord);
        }
        let relators = (0..self.n as i64)
            .map(|i| self.word.shift(i).free_reduce())
            .collect();
        Ok(Presentation::indexed(self.n, relators))
    }

    pub fn is_admissible(&self) -> bool {
        self.word.exponent_data().admissible
    }
}

/// Parameters of `H_n(m, k)`, defining word `x_1 x_{1+m} x_{1+k}^-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HnkParams {
    pub n: usize,
    pub m: usize,
    pub k: usize,
}

impl HnkParams {
    pub fn new(n: usize, m: usize, k: usize) -> Result<Self> {
        if n < 2 || !(1..=n).contains(&m) || !(1..=n).contains(&k) {
            return Err(Error::InvalidParameters(format!(
                "H_n(m,k) needs n >= 2 and 1 <= m, k <= n; got n={n}, m={m}, k={k}"
            )));
        }
        Ok(HnkParams { n, m, k })
    }
}

pub fn family_hnk(p: HnkParams) -> CyclicWord {
    let (m, k) = (p.m as i64, p.k as i64);
    CyclicWord::new(Word::from_powers(p.n, [(1, 1), (1 + m, 1), (1 + k, -1)]).free_reduce())
}

/// Parameters of `G^r_{n,k}(q_1..q_r; eps_0..eps_r)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SvParams {
    pub n: usize,
    pub k: i64,
    /// `q_1..q_r`.
    pub q: Vec<i64>,
    /// `eps_0..eps_r`.
    pub eps: Vec<i64>,
}

impl SvParams {
    pub fn new(n: usize, k: i64, q: Vec<i64>, eps: Vec<i64>) -> Result<Self> {
        if n < 1 || q.is_empty() || eps.len() != q.len() + 1 {
            return Err(Error::InvalidParameters(format!(
                "SV parameters need n >= 1, r = |q| >= 1 and |eps| = r + 1; got n={n}, |q|={}, |eps|={}",
                q.len(),
                eps.len()
            )));
        }
        Ok(SvParams { n, k, q, eps })
    }

    pub fn r(&self) -> usize {
        self.q.len()
    }

    /// `q_j` with `q_0 = 0`.
    fn q_at(&self, j: usize) -> i64 {
        if j == 0 {
            0
        } else {
            self.q[j - 1]
        }
    }

    pub fn is_admissible(&self) -> bool {
        self.eps[self.r()].abs() == 1
    }

    /// Inside the subfamily `G^r_{n,1}(q; 1,...,1)` that coincides with `L_n`.
    pub fn is_ln_subfamily(&self) -> bool {
        self.k == 1 && self.eps.iter().all(|&e| e == 1)
    }

    pub fn to_ln(&self) -> Result<LnParams> {
        if !self.is_ln_subfamily() {
            return Err(Error::Precondition(
                "conversion to L_n needs k = 1 and all eps = 1".into(),
            ));
        }
        let r = self.r() as i64;
        let qr = self.q_at(self.r());
        let p = (0..self.r())
            .map(|j| self.q_at(j) - j as i64 + (r - 1) - qr)
            .collect();
        Ok(LnParams { n: self.n, p })
    }
}

pub fn family_sv(p: &SvParams) -> CyclicWord {
    let r = p.r();
    let head = (0..=r).map(|j| (1 + p.q_at(j), p.eps[j]));
    let tail = Word::from_powers(p.n, (0..r).map(|j| (1 + p.k + p.q_at(j), p.eps[j])));
    let word = Word::from_powers(p.n, head).concat(&tail.inverse()).free_reduce();
    CyclicWord::new(word)
}

/// Parameters of `L_n(p_0, ..., p_{r-1})`; `p_r = -1` is implicit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LnParams {
    pub n: usize,
    pub p: Vec<i64>,
}

impl LnParams {
    pub fn new(n: usize, p: Vec<i64>) -> Result<Self> {
        if n < 1 || p.is_empty() {
            return Err(Error::InvalidParameters("L_n needs n >= 1 and r >= 1".into()));
        }
        Ok(LnParams { n, p })
    }

    pub fn r(&self) -> usize {
        self.p.len()
    }

    /// `p_j` for `0 <= j <= r`, with `p_r = -1`.
    pub fn p_at(&self, j: usize) -> i64 {
        if j == self.r() {
            -1
        } else {
            self.p[j]
        }
    }

    /// `q_j = j + p_j - p_0` (`1 <= j <= r`), `k = 1`, all `eps = 1`.
    pub fn to_sv(&self) -> SvParams {
        let r = self.r();
        let p0 = self.p[0];
        SvParams {
            n: self.n,
            k: 1,
            q: (1..=r).map(|j| j as i64 + self.p_at(j) - p0).collect(),
            eps: vec![1; r + 1],
        }
    }
}

pub fn family_ln(p: &LnParams) -> CyclicWord {
    let r = p.r();
    let head = (0..=r).map(|j| (p.p_at(j) + j as i64, 1));
    let tail = Word::from_powers(p.n, (0..r).map(|j| (p.p_at(j) + j as i64 + 1, 1)));
    let word = Word::from_powers(p.n, head).concat(&tail.inverse()).free_reduce();
    CyclicWord::new(word)
}

/// Images `x_i -> c^{i-1} a c^{-i}` used for the HNN presentation.
pub fn hnn_images(n: usize) -> Vec<TwoGenWord> {
    (1..=n as i64)
        .map(|i| TwoGenWord::from_runs([(TwoGen::C, i - 1), (TwoGen::A, 1), (TwoGen::C, -i)]))
        .collect()
}

/// `W(a, c) = w(a c^-1, c a c^-2, ..., c^{n-1} a c^-n)`, freely reduced.
/// The second relator of the HNN presentation is `[a, c^n]`.
pub fn hnn_two_generator(cw: &CyclicWord) -> TwoGenWord {
    cw.word
        .substitute(&hnn_images(cw.n))
        .expect("image count equals modulus")
}

/// Both relators of `<a, c | W, [a, c^n]>`.
pub fn hnn_presentation(cw: &CyclicWord) -> Presentation {
    Presentation::two_generator(&[hnn_two_generator(cw), TwoGenWord::commutator_a_cn(cw.n)])
}

/// Apply `a -> a c^gamma` with `gamma = -csum(W)`; needs `asum(W) = 1`.
/// Returns the new word and `gamma`.
pub fn normalize_c_sum(w: &TwoGenWord) -> Result<(TwoGenWord, i64)> {
    if w.asum() != 1 {
        return Err(Error::Precondition(format!(
            "a has exponent sum {} (need 1) in {w}",
            w.asum()
        )));
    }
    let gamma = -w.csum();
    let image = TwoGenWord::from_runs([(TwoGen::A, 1), (TwoGen::C, gamma)]);
    Ok((w.replace_a(&image), gamma))
}

/// Read the cyclic word `x_1^{alpha_1} x_{1+gamma_1}^{alpha_2} ...` off the
/// syllables of `U = a^{alpha_1} c^{gamma_1} ... a^{alpha_k} c^{gamma_k}`.
/// A leading `c`-run is first moved to the end (a cyclic permutation).
pub fn derive_cyclic_word(u: &TwoGenWord, n: usize) -> Result<CyclicWord> {
    if u.asum() != 1 || u.csum() != 0 {
        return Err(Error::Precondition(format!(
            "need exponent sums a = 1, c = 0; got a = {}, c = {}",
            u.asum(),
            u.csum()
        )));
    }
    let syllables = u.syllables().expect("asum = 1 implies an a-letter");
    let mut offset = 0i64;
    let mut powers = Vec::with_capacity(syllables.len());
    for s in &syllables {
        powers.push((1 + offset, s.alpha));
        offset += s.gamma;
    }
    Ok(CyclicWord::new(Word::from_powers(n, powers)))
}

/// `hnn_two_generator`, inverted if needed so that `a` has exponent sum 1,
/// then `normalize_c_sum` and `derive_cyclic_word`.
pub fn hnn_round_trip(cw: &CyclicWord) -> Result<CyclicWord> {
    let mut w = hnn_two_generator(cw);
    if w.asum() == -1 {
        w = w.inverse();
    }
    let (u, _) = normalize_c_sum(&w)?;
    derive_cyclic_word(&u, cw.n)
}

/// The y-generator cyclic word
/// `(y_1^-1 y_{1+k})^{eps_0} (y_{1+q_1}^-1 y_{1+q_1+k})^{eps_1} ... y_{1+q_r}^-1`,
/// written over `x_1..x_n`. Needs `eps_r = 1`.
pub fn sv_to_y(p: &SvParams) -> Result<CyclicWord> {
    if p.eps[p.r()] != 1 {
        return Err(Error::Precondition(format!(
            "eps_r must be 1, got {}",
            p.eps[p.r()]
        )));
    }
    let n = p.n;
    let mut word = Word::identity(n);
    for j in 0..p.r() {
        let block = Word::from_powers(n, [(1 + p.q_at(j), -1), (1 + p.q_at(j) + p.k, 1)]);
        let e = p.eps[j];
        let base = if e < 0 { block.inverse() } else { block };
        for _ in 0..e.unsigned_abs() {
            word = word.concat(&base);
        }
    }
    word = word.concat(&Word::from_powers(n, [(1 + p.q_at(p.r()), -1)]));
    Ok(CyclicWord::new(word.free_reduce()))
}

/// A word of the form `y_1^-1 y_{1+l_1} y_{1+l_2}^-1 ... y_{1+l_{s-1}} y_{1+l_s}^-1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlternatingForm {
    /// Rotation applied to the input before matching.
    pub rotation: usize,
    /// `l_1..l_s`, each in `1..=n`.
    pub l: Vec<usize>,
}

/// Match the alternating-sign form, allowing one cyclic rotation and reading
/// subscripts relative to the first letter.
pub fn recognize_alternating(w: &Word) -> Option<AlternatingForm> {
    let len = w.len();
    if len < 3 || len.is_multiple_of(2) {
        return None;
    }
    let n = w.modulus();
    (0..len).find_map(|rotation| {
        let v = w.rotate_left(rotation);
        let letters = v.letters();
        let alternating = letters
            .iter()
            .enumerate()
            .all(|(j, l)| l.inverse == (j % 2 == 0));
        if !alternating {
            return None;
        }
        let base = letters[0].index;
        let l = letters[1..]
            .iter()
            .map(|x| match (x.index + n - base) % n {
                0 => n,
                d => d,
            })
            .collect();
        Some(AlternatingForm { rotation, l })
    })
}

/// Which of the two printed forms of a catalog group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Form {
    A,
    B,
}

/// Named cyclic presentations with two printed forms each (the generalised
/// Sieradski word has one).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CatalogEntry {
    G1 { n: usize },
    H1 { n: usize },
    Gl { l: usize, n: usize },
    Sieradski { r: usize, n: usize },
}

impl CatalogEntry {
    pub fn from_name(name: &str, n: usize, param: Option<usize>) -> Result<Self> {
        let need = |what: &str| {
            param.ok_or_else(|| Error::InvalidParameters(format!("{name} needs parameter {what}")))
        };
        let entry = match name.to_ascii_lowercase().as_str() {
            "g1" => CatalogEntry::G1 { n },
            "h1" => CatalogEntry::H1 { n },
            "gl" | "g" => CatalogEntry::Gl { l: need("l")?, n },
            "sieradski" | "s" => CatalogEntry::Sieradski { r: need("r")?, n },
            _ => return Err(Error::UnknownCatalog(name.to_string())),
        };
        entry.validate()?;
        Ok(entry)
    }

    fn validate(&self) -> Result<()> {
        let ok = match *self {
            CatalogEntry::G1 { n } | CatalogEntry::H1 { n } => n >= 2,
            CatalogEntry::Gl { l, n } => l >= 2 && n >= 2,
            CatalogEntry::Sieradski { r, n } => r >= 2 && n >= 2,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameters(format!("{self:?}")))
        }
    }

    pub fn n(&self) -> usize {
        match *self {
            CatalogEntry::G1 { n }
            | CatalogEntry::H1 { n }
            | CatalogEntry::Gl { n, .. }
            | CatalogEntry::Sieradski { n, .. } => n,
        }
    }
}

fn alternating_pairs(a: (i64, i64), b: (i64, i64), times: usize) -> Vec<(i64, i64)> {
    (0..times).flat_map(|_| [a, b]).collect()
}

/// The printed defining word, freely reduced but never cyclically reduced.
pub fn family_catalog(entry: CatalogEntry, form: Form) -> Result<CyclicWord> {
    entry.validate()?;
    let n = entry.n();
    let ni = n as i64;
    let powers: Vec<(i64, i64)> = match (entry, form) {
        (CatalogEntry::G1 { .. }, Form::A) => {
            vec![(1, -1), (2, 1), (1, -1), (2, 1), (ni, 1), (1, -1), (ni, 1)]
        }
        (CatalogEntry::G1 { .. }, Form::B) => vec![
            (1, -1),
            (ni, 1),
            (1, -1),
            (ni, 1),
            (ni - 1, -1),
            (ni, 1),
            (ni - 1, -1),
        ],
        (CatalogEntry::H1 { .. }, Form::A) => vec![
            (1, -1),
            (2, 1),
            (1, -1),
            (2, 1),
            (1, -2),
            (ni, 1),
            (1, -1),
            (ni, 1),
        ],
        (CatalogEntry::H1 { .. }, Form::B) => vec![
            (1, -1),
            (ni, 1),
            (1, -1),
            (ni, 1),
            (1, -1),
            (2, 1),
            (1, -1),
            (2, 1),
            (1, -1),
        ],
        (CatalogEntry::Gl { l, .. }, form) if l % 2 == 0 => {
            let h = (l - 2) / 2;
            match form {
                Form::A => {
                    let mut v = vec![(1, -1)];
                    v.extend(alternating_pairs((2, 1), (1, -1), h));
                    v.push((2, 1));
                    v.extend(alternating_pairs((ni, 1), (1, -1), h));
                    v.push((ni, 1));
                    v
                }
                Form::B => {
                    let mut v = alternating_pairs((1, -1), (2, 1), h);
                    v.extend([(1, -1), (2, 1)]);
                    v.extend(alternating_pairs((3, -1), (2, 1), h));
                    v.push((3, -1));
                    v
                }
            }
        }
        (CatalogEntry::Gl { l, .. }, form) => {
            let h = (l - 1) / 2;
            match form {
                Form::A => {
                    let mut v = vec![(1, 1)];
                    v.extend(alternating_pairs((2, -1), (1, 1), h));
                    v.extend(alternating_pairs((ni, -1), (1, 1), h));
                    v
                }
                Form::B => {
                    let mut v = alternating_pairs((1, -1), (ni, 1), h);
                    v.extend(alternating_pairs((1, -1), (2, 1), h));
                    v.push((1, -1));
                    v
                }
            }
        }
        (CatalogEntry::Sieradski { r, .. }, _) => {
            let r = r as i64;
            let mut v: Vec<(i64, i64)> = (1..=r).map(|j| (2 * j - 1, 1)).collect();
            v.extend((1..r).rev().map(|j| (2 * j, -1)));
            v
        }
    };
    Ok(CyclicWord::new(Word::from_powers(n, powers).free_reduce()))
}

/// The index reflection `x_i -> x_{2-i}`, an automorphism of `F_n` that maps
/// cyclic relator sets to cyclic relator sets.
pub fn reflect(w: &Word) -> Word {
    let n = w.modulus();
    Word::from_letters(
        n,
        w.letters()
            .iter()
            .map(|l| Letter::new((n - l.index) % n, l.inverse)),
    )
}

/// How the two printed forms of a catalog entry are related.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FormRelation {
    /// Form B is a rotation of a shift of form A or of its inverse.
    Cyclic(CyclicWitness),
    /// Only after composing form A with [`reflect`].
    Reflected(CyclicWitness),
    Unrelated,
}

pub fn relate_forms(entry: CatalogEntry) -> Result<FormRelation> {
    let a = family_catalog(entry, Form::A)?.word;
    let b = family_catalog(entry, Form::B)?.word;
    if let Some(w) = a.cyclic_equivalent(&b)? {
        return Ok(FormRelation::Cyclic(w));
    }
    Ok(match reflect(&a).cyclic_equivalent(&b)? {
        Some(w) => FormRelation::Reflected(w),
        None => FormRelation::Unrelated,
    })
}
