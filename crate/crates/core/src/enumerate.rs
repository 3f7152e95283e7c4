//! Todd-Coxeter coset enumeration (HLT with lookahead) and finite group
//! tables carrying the shift automorphism.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::cycpres::CyclicWord;
use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::word::{Letter, Word};

const NONE: u32 = u32::MAX;

/// Environment variable overriding [`DEFAULT_MAX_COSETS`].
pub const MAX_COSETS_ENV: &str = "CYCGROUPS_MAX_COSETS";
pub const DEFAULT_MAX_COSETS: usize = 5_000_000;

pub fn default_max_cosets() -> usize {
    std::env::var(MAX_COSETS_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .filter(|&c| c >= 1)
        .unwrap_or(DEFAULT_MAX_COSETS)
}

/// Column of a letter: `2 i` for `x_{i+1}`, `2 i + 1` for its inverse.
fn column(l: Letter) -> usize {
    2 * l.index + usize::from(l.inverse)
}

/// A completed coset table. Coset 0 is the subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetTable {
    generators: usize,
    rows: Vec<u32>,
    /// Cosets defined in total, dead ones included.
    pub total_defined: usize,
}

impl CosetTable {
    pub fn index(&self) -> usize {
        self.rows.len() / (2 * self.generators).max(1)
    }

    pub fn generator_count(&self) -> usize {
        self.generators
    }

    pub fn image(&self, coset: usize, l: Letter) -> usize {
        self.rows[coset * 2 * self.generators + column(l)] as usize
    }

    pub fn trace(&self, coset: usize, w: &Word) -> usize {
        w.letters().iter().fold(coset, |c, &l| self.image(c, l))
    }

    /// Every entry defined, inverse columns consistent and every relator a
    /// loop at every coset.
    pub fn verify(&self, p: &Presentation) -> bool {
        let cols = 2 * self.generators;
        let idx = self.index();
        let consistent = (0..idx).all(|c| {
            (0..cols).all(|x| {
                let d = self.rows[c * cols + x];
                d != NONE && (d as usize) < idx && self.rows[d as usize * cols + (x ^ 1)] as usize == c
            })
        });
        consistent
            && (0..idx).all(|c| p.relators.iter().all(|r| self.trace(c, r) == c))
    }

    /// One line per coset: the 1-based coset number, then its images under
    /// `x1, x1^-1, x2, x2^-1, ...`.
    pub fn dump(&self) -> String {
        let cols = 2 * self.generators;
        let mut out = String::new();
        let _ = write!(out, "coset");
        for g in 1..=self.generators {
            let _ = write!(out, " x{g} x{g}^-1");
        }
        out.push('\n');
        for c in 0..self.index() {
            let _ = write!(out, "{}", c + 1);
            for x in 0..cols {
                let _ = write!(out, " {}", self.rows[c * cols + x] + 1);
            }
            out.push('\n');
        }
        out
    }

    /// Shortest-word representative of each coset in breadth-first order.
    pub fn representatives(&self) -> Vec<Word> {
        let idx = self.index();
        let mut reps: Vec<Option<Word>> = vec![None; idx];
        reps[0] = Some(Word::identity(self.generators));
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(c) = queue.pop_front() {
            let w = reps[c].clone().expect("visited");
            for x in 0..2 * self.generators {
                let l = Letter::new(x / 2, x % 2 == 1);
                let d = self.image(c, l);
                if reps[d].is_none() {
                    let mut letters = w.letters().to_vec();
                    letters.push(l);
                    reps[d] = Some(Word::from_letters(self.generators, letters));
                    queue.push_back(d);
                }
            }
        }
        reps.into_iter().map(|r| r.expect("table is connected")).collect()
    }
}

struct Enumerator<'a> {
    cols: usize,
    rels: Vec<Vec<usize>>,
    table: Vec<u32>,
    parent: Vec<u32>,
    live: usize,
    cap: usize,
    total_defined: usize,
    queue: Vec<u32>,
    p: &'a Presentation,
}

enum Full {
    Yes,
}

impl<'a> Enumerator<'a> {
    fn new(p: &'a Presentation, cap: usize) -> Self {
        let cols = 2 * p.generator_count();
        let mut rels: Vec<Vec<usize>> = p
            .relators
            .iter()
            .map(|r| r.cyclically_reduce().0.letters().iter().map(|&l| column(l)).collect())
            .filter(|r: &Vec<usize>| !r.is_empty())
            .collect();
        rels.sort_by_key(Vec::len);
        Enumerator {
            cols,
            rels,
            table: vec![NONE; cols],
            parent: vec![0],
            live: 1,
            cap,
            total_defined: 1,
            queue: Vec::new(),
            p,
        }
    }

    fn rows(&self) -> usize {
        self.parent.len()
    }

    fn get(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.cols + x]
    }

    fn set(&mut self, c: u32, x: usize, d: u32) {
        self.table[c as usize * self.cols + x] = d;
    }

    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut c = c;
        while self.parent[c as usize] != r {
            let next = self.parent[c as usize];
            self.parent[c as usize] = r;
            c = next;
        }
        r
    }

    fn define(&mut self, c: u32, x: usize) -> std::result::Result<u32, Full> {
        if self.rows() >= self.cap {
            return Err(Full::Yes);
        }
        let d = self.rows() as u32;
        self.table.extend(std::iter::repeat_n(NONE, self.cols));
        self.parent.push(d);
        self.live += 1;
        self.total_defined += 1;
        self.set(c, x, d);
        self.set(d, x ^ 1, c);
        Ok(d)
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        self.parent[hi as usize] = lo;
        self.live -= 1;
        self.queue.push(hi);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i];
            i += 1;
            for x in 0..self.cols {
                let d = self.get(g, x);
                if d == NONE {
                    continue;
                }
                self.set(d, x ^ 1, NONE);
                let mu = self.rep(g);
                let nu = self.rep(d);
                let m_img = self.get(mu, x);
                if m_img != NONE {
                    self.merge(nu, m_img);
                } else {
                    let n_img = self.get(nu, x ^ 1);
                    if n_img != NONE {
                        self.merge(mu, n_img);
                    } else {
                        self.set(mu, x, nu);
                        self.set(nu, x ^ 1, mu);
                    }
                }
            }
        }
        self.queue.clear();
    }

    /// Scan `rel` at `c`, filling gaps when `fill` is set.
    fn scan(&mut self, c: u32, rel: usize, fill: bool) -> std::result::Result<(), Full> {
        let len = self.rels[rel].len();
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, len as isize - 1);
        loop {
            while (i as isize) <= j {
                let x = self.rels[rel][i];
                let next = self.get(f, x);
                if next == NONE {
                    break;
                }
                f = next;
                i += 1;
            }
            if (i as isize) > j {
                if f != c {
                    self.coincidence(f, c);
                }
                return Ok(());
            }
            while j >= i as isize {
                let x = self.rels[rel][j as usize] ^ 1;
                let next = self.get(b, x);
                if next == NONE {
                    break;
                }
                b = next;
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                let x = self.rels[rel][i];
                self.set(f, x, b);
                self.set(b, x ^ 1, f);
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            let x = self.rels[rel][i];
            self.define(f, x)?;
        }
    }

    fn scan_word(&mut self, c: u32, w: &[usize]) -> std::result::Result<(), Full> {
        self.rels.push(w.to_vec());
        let last = self.rels.len() - 1;
        let out = self.scan(c, last, true);
        self.rels.pop();
        out
    }

    /// Scan every relator at every live coset without defining.
    fn lookahead(&mut self) {
        let mut c = 0;
        while c < self.rows() {
            for r in 0..self.rels.len() {
                if !self.is_live(c as u32) {
                    break;
                }
                let _ = self.scan(c as u32, r, false);
            }
            c += 1;
        }
    }

    /// Renumber live cosets in order; returns the new number of `c`, or of
    /// the next live coset after it.
    fn compact(&mut self, c: usize) -> usize {
        let rows = self.rows();
        let mut map = vec![NONE; rows];
        let mut next = 0u32;
        for (old, slot) in map.iter_mut().enumerate() {
            if self.parent[old] == old as u32 {
                *slot = next;
                next += 1;
            }
        }
        let new_c = (0..c).filter(|&o| map[o] != NONE).count();
        let mut table = Vec::with_capacity(next as usize * self.cols);
        for old in 0..rows {
            if map[old] == NONE {
                continue;
            }
            for x in 0..self.cols {
                let d = self.table[old * self.cols + x];
                table.push(if d == NONE { NONE } else { map[d as usize] });
            }
        }
        self.table = table;
        self.parent = (0..next).collect();
        new_c
    }

    fn run(mut self, subgroup: &[Word]) -> Result<CosetTable> {
        let cap_error = Error::Exhausted { cap: self.cap };
        for h in subgroup {
            let w: Vec<usize> = h.free_reduce().letters().iter().map(|&l| column(l)).collect();
            if !w.is_empty() && self.scan_word(0, &w).is_err() {
                return Err(cap_error);
            }
        }
        let mut c = 0usize;
        while c < self.rows() {
            if 2 * self.live < self.rows() && self.rows() > 4096 {
                c = self.compact(c);
                continue;
            }
            if !self.is_live(c as u32) {
                c += 1;
                continue;
            }
            let mut stuck = false;
            for r in 0..self.rels.len() {
                if !self.is_live(c as u32) {
                    break;
                }
                if self.scan(c as u32, r, true).is_err() {
                    stuck = true;
                    break;
                }
            }
            for x in 0..self.cols {
                if stuck || !self.is_live(c as u32) {
                    break;
                }
                if self.get(c as u32, x) == NONE && self.define(c as u32, x).is_err() {
                    stuck = true;
                }
            }
            if stuck {
                self.lookahead();
                let before = self.rows();
                c = self.compact(c);
                if self.rows() == before {
                    return Err(cap_error);
                }
                continue;
            }
            c += 1;
        }
        self.compact(0);
        let table = CosetTable {
            generators: self.cols / 2,
            rows: self.table,
            total_defined: self.total_defined,
        };
        if !table.verify(self.p) {
            return Err(Error::IncompleteTable);
        }
        Ok(table)
    }
}

/// Enumerate the cosets of the subgroup generated by `subgroup`.
/// Exceeding `max_cosets` simultaneous cosets gives [`Error::Exhausted`],
/// which says nothing about finiteness.
pub fn todd_coxeter(p: &Presentation, subgroup: &[Word], max_cosets: usize) -> Result<CosetTable> {
    if max_cosets == 0 {
        return Err(Error::InvalidParameters("max_cosets must be at least 1".into()));
    }
    if p.generator_count() == 0 {
        return Ok(CosetTable {
            generators: 0,
            rows: Vec::new(),
            total_defined: 1,
        });
    }
    Enumerator::new(p, max_cosets).run(subgroup)
}

/// Order of the group, by enumeration over the trivial subgroup.
pub fn group_order(p: &Presentation, max_cosets: usize) -> Result<usize> {
    Ok(todd_coxeter(p, &[], max_cosets)?.index().max(1))
}

/// Largest group for which a full multiplication table is stored.
pub const MAX_TABLE_ORDER: usize = 4096;

/// A finite group `G_n(w)` as a Cayley table, with the shift automorphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteGroupTable {
    pub n: usize,
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    /// Element of `x_{i+1}`.
    pub generators: Vec<u32>,
    /// `phi(g)` for each element `g`.
    pub phi: Vec<u32>,
    /// Shortest words for the elements, element 0 is the identity.
    pub words: Vec<Word>,
    /// `phi^k` as a table, for `k` in `0..ord(phi)`.
    phi_powers: Vec<Vec<u32>>,
}

/// Stops after `bound` powers if `phi` has not returned to the identity.
fn phi_powers(phi: &[u32], bound: usize) -> Vec<Vec<u32>> {
    let mut powers = vec![(0..phi.len() as u32).collect::<Vec<_>>()];
    while powers.len() < bound {
        let next: Vec<u32> = powers.last().unwrap().iter().map(|&h| phi[h as usize]).collect();
        if next == powers[0] {
            return powers;
        }
        powers.push(next);
    }
    powers
}

impl FiniteGroupTable {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> u32 {
        0
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.order + b as usize]
    }

    pub fn inverse(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    pub fn phi_pow(&self, g: u32, k: i64) -> u32 {
        let k = k.rem_euclid(self.phi_powers.len() as i64) as usize;
        self.phi_powers[k][g as usize]
    }

    /// Least `k >= 1` with `phi^k = id`.
    pub fn phi_order(&self) -> usize {
        self.phi_powers.len()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order as u32).all(|a| (0..self.order as u32).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Element of a word over `x_1..x_n`.
    pub fn evaluate(&self, w: &Word) -> u32 {
        w.letters().iter().fold(0, |g, l| {
            let x = self.generators[l.index];
            self.mul(g, if l.inverse { self.inverse(x) } else { x })
        })
    }

    fn phi_is_automorphism(&self, exhaustive: bool) -> bool {
        let mut seen = vec![false; self.order];
        for &p in &self.phi {
            if std::mem::replace(&mut seen[p as usize], true) {
                return false;
            }
        }
        let hom = |a: u32, b: u32| {
            self.phi[self.mul(a, b) as usize] == self.mul(self.phi[a as usize], self.phi[b as usize])
        };
        let gens_ok = (0..self.order as u32).all(|a| self.generators.iter().all(|&x| hom(a, x)));
        gens_ok
            && (!exhaustive
                || (0..self.order as u32).all(|a| (0..self.order as u32).all(|b| hom(a, b))))
    }
}

/// Multiplication table and shift automorphism of `G_n(w)` from a table
/// over the trivial subgroup of its cyclic presentation.
pub fn regular_representation(t: &CosetTable, cw: &CyclicWord) -> Result<FiniteGroupTable> {
    let pres = cw.presentation()?;
    if t.generator_count() != cw.n || !t.verify(&pres) {
        return Err(Error::IncompleteTable);
    }
    let order = t.index();
    if order > MAX_TABLE_ORDER {
        return Err(Error::InvalidParameters(format!(
            "group of order {order} is above the table limit {MAX_TABLE_ORDER}"
        )));
    }
    let words = t.representatives();
    let mut mul = vec![0u32; order * order];
    for a in 0..order {
        for (b, w) in words.iter().enumerate() {
            mul[a * order + b] = t.trace(a, w) as u32;
        }
    }
    let mut inv = vec![0u32; order];
    for a in 0..order {
        inv[a] = (0..order).find(|&b| mul[a * order + b] == 0).expect("group") as u32;
    }
    let generators = (0..cw.n)
        .map(|i| t.image(0, Letter::new(i, false)) as u32)
        .collect();
    let phi: Vec<u32> = words.iter().map(|w| t.trace(0, &w.shift(1)) as u32).collect();
    let g = FiniteGroupTable {
        n: cw.n,
        order,
        mul,
        inv,
        generators,
        phi_powers: phi_powers(&phi, cw.n),
        phi,
        words,
    };
    let cyclic_images = (0..cw.n).all(|i| g.phi[g.generators[i] as usize] == g.generators[(i + 1) % cw.n]);
    let period = (0..cw.n).fold((0..order as u32).collect::<Vec<_>>(), |acc, _| {
        acc.iter().map(|&h| g.phi[h as usize]).collect()
    });
    let identity_after_n = period.iter().enumerate().all(|(i, &p)| p as usize == i);
    if !cyclic_images || !identity_after_n || !g.phi_is_automorphism(order <= 1000) {
        return Err(Error::Precondition("shift does not induce an automorphism".into()));
    }
    Ok(g)
}

/// Enumerate `G_n(w)` and build its table.
pub fn finite_group(cw: &CyclicWord, max_cosets: usize) -> Result<FiniteGroupTable> {
    let t = todd_coxeter(&cw.presentation()?, &[], max_cosets)?;
    regular_representation(&t, cw)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::{ab_order_circulant, GroupOrder};
    use crate::cycpres::{family_hnk, HnkParams};
    use num_bigint::BigInt;

    fn hnk(n: usize, m: usize, k: usize) -> CyclicWord {
        family_hnk(HnkParams { n, m, k })
    }

    fn order(cw: &CyclicWord) -> usize {
        group_order(&cw.presentation().unwrap(), 100_000).unwrap()
    }

    #[test]
    fn known_orders() {
        assert_eq!(order(&hnk(4, 3, 1)), 5);
        assert_eq!(order(&hnk(5, 3, 1)), 11);
        assert_eq!(order(&hnk(6, 1, 3)), 7);
        assert_eq!(order(&hnk(6, 2, 3)), 9);
        assert_eq!(order(&hnk(6, 3, 4)), 56);
    }

    #[test]
    fn small_presentations() {
        let cube = Presentation::indexed(1, vec![Word::from_powers(1, [(1, 3)])]);
        assert_eq!(group_order(&cube, 10).unwrap(), 3);
        // S3 = <x, y | x^2, y^3, (xy)^2>
        let s3 = Presentation::indexed(
            2,
            vec![
                Word::from_powers(2, [(1, 2)]),
                Word::from_powers(2, [(2, 3)]),
                Word::from_powers(2, [(1, 1), (2, 1), (1, 1), (2, 1)]),
            ],
        );
        assert_eq!(group_order(&s3, 100).unwrap(), 6);
        let x = Word::from_powers(2, [(1, 1)]);
        assert_eq!(todd_coxeter(&s3, &[x], 100).unwrap().index(), 3);
        let trivial = Presentation::indexed(2, vec![Word::from_powers(2, [(1, 1)]), Word::from_powers(2, [(2, 1)])]);
        assert_eq!(group_order(&trivial, 10).unwrap(), 1);
    }

    #[test]
    fn cap_is_a_hard_limit() {
        let z2 = Presentation::indexed(1, vec![Word::from_powers(1, [(1, 2)])]);
        let free = Presentation::indexed(2, vec![Word::from_powers(2, [(1, 2)])]);
        assert_eq!(group_order(&z2, 2).unwrap(), 2);
        assert_eq!(group_order(&free, 50), Err(Error::Exhausted { cap: 50 }));
        let p = hnk(6, 3, 4).presentation().unwrap();
        assert!(matches!(group_order(&p, 20), Err(Error::Exhausted { cap: 20 })));
        for cap in [200, 1000, 100_000] {
            assert_eq!(group_order(&p, cap).unwrap(), 56);
        }
    }

    #[test]
    fn orders_agree_with_abelianization_on_abelian_groups() {
        for (n, m, k) in [(4, 3, 1), (5, 3, 1), (6, 1, 3), (6, 2, 3)] {
            let cw = hnk(n, m, k);
            let g = finite_group(&cw, 100_000).unwrap();
            assert!(g.is_abelian());
            assert_eq!(ab_order_circulant(&cw), GroupOrder::Finite(BigInt::from(g.order())));
        }
    }

    #[test]
    fn regular_representation_examples() {
        let g = finite_group(&hnk(6, 1, 3), 1000).unwrap();
        assert_eq!(g.order(), 7);
        assert_eq!(6 % g.phi_order(), 0);
        let g = finite_group(&hnk(5, 3, 1), 1000).unwrap();
        assert_eq!((g.order(), g.phi_order()), (11, 5));
        let g = finite_group(&hnk(4, 1, 4), 1000).unwrap();
        assert_eq!((g.order(), g.phi_order()), (1, 1));
        let g = finite_group(&hnk(6, 3, 4), 1000).unwrap();
        assert_eq!(g.order(), 56);
        assert!(!g.is_abelian());
        for w in &g.words {
            assert_eq!(g.evaluate(w), g.evaluate(&w.free_reduce()));
        }
        for r in hnk(6, 3, 4).presentation().unwrap().relators {
            assert_eq!(g.evaluate(&r), 0);
        }
    }

    #[test]
    fn table_dump_and_representatives() {
        let t = todd_coxeter(&hnk(4, 3, 1).presentation().unwrap(), &[], 100).unwrap();
        let dump = t.dump();
        assert_eq!(dump.lines().count(), 6);
        assert!(dump.starts_with("coset x1 x1^-1"));
        let reps = t.representatives();
        for (c, w) in reps.iter().enumerate() {
            assert_eq!(t.trace(0, w), c);
        }
    }
}
