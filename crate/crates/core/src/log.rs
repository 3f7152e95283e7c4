//! Labelled oriented graphs (LOGs), tadpole LOGs `Gamma(n; v)` and their
//! collapse to the two-generator form `<a, c | U(a, c), [a, c^n]>`.

use serde::{Deserialize, Serialize};

use crate::cycpres::{HnkParams, LnParams};
use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::word::{Invertible, Letter, TwoGen, TwoGenWord, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LogEdge {
    pub from: usize,
    pub to: usize,
    pub label: usize,
    /// `+1` or `-1`; the edge relator uses `label^sign`.
    pub sign: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneralLog {
    pub vertices: Vec<String>,
    pub edges: Vec<LogEdge>,
}

impl GeneralLog {
    pub fn new(vertices: Vec<String>, edges: Vec<LogEdge>) -> Result<Self> {
        let v = vertices.len();
        if v == 0 {
            return Err(Error::InvalidParameters("a LOG needs a vertex".into()));
        }
        for (i, e) in edges.iter().enumerate() {
            if e.from >= v || e.to >= v || e.label >= v {
                return Err(Error::InvalidParameters(format!(
                    "edge {i} refers to a vertex outside 0..{v}"
                )));
            }
            if e.sign.abs() != 1 {
                return Err(Error::InvalidParameters(format!(
                    "edge {i} has sign {}, expected +1 or -1",
                    e.sign
                )));
            }
        }
        Ok(GeneralLog { vertices, edges })
    }

    pub fn is_connected(&self) -> bool {
        let v = self.vertices.len();
        let mut adj = vec![Vec::new(); v];
        for e in &self.edges {
            adj[e.from].push(e.to);
            adj[e.to].push(e.from);
        }
        let mut seen = vec![false; v];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// One generator per vertex and the relator `tau^-1 lambda^-s iota lambda^s`
/// per edge, freely reduced.
pub fn log_presentation(g: &GeneralLog) -> Result<Presentation> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let v = g.vertices.len();
    let relators = g
        .edges
        .iter()
        .map(|e| {
            let lam = Letter::new(e.label, e.sign < 0);
            Word::from_letters(
                v,
                [
                    Letter::new(e.to, true),
                    lam.inv(),
                    Letter::new(e.from, false),
                    lam,
                ],
            )
            .free_reduce()
        })
        .collect();
    Ok(Presentation::new(g.vertices.clone(), relators))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TailEdge {
    /// The edge is labelled `a_{n-p}`.
    pub p: i64,
    pub delta: i64,
}

/// `Gamma(n; v)` with `v = a_{n-p_0}^{delta_0} ... a_{n-p_{r-1}}^{delta_{r-1}}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TadpoleLog {
    pub n: usize,
    pub tail: Vec<TailEdge>,
}

impl TadpoleLog {
    /// Reduces each `p` mod `n`; rejects `v` that is not freely reduced.
    pub fn new(n: usize, tail: Vec<TailEdge>) -> Result<Self> {
        if n == 0 || tail.is_empty() {
            return Err(Error::InvalidParameters(
                "a tadpole needs n >= 1 and at least one tail edge".into(),
            ));
        }
        let tail: Vec<TailEdge> = tail
            .into_iter()
            .map(|t| TailEdge {
                p: t.p.rem_euclid(n as i64),
                delta: t.delta,
            })
            .collect();
        if let Some(t) = tail.iter().find(|t| t.delta.abs() != 1) {
            return Err(Error::InvalidParameters(format!(
                "tail exponent {} is not +1 or -1",
                t.delta
            )));
        }
        if let Some(j) = tail
            .windows(2)
            .position(|w| w[0].p == w[1].p && w[0].delta == -w[1].delta)
        {
            return Err(Error::InvalidParameters(format!(
                "tail word is not freely reduced at edges {j} and {}",
                j + 1
            )));
        }
        Ok(TadpoleLog { n, tail })
    }

    /// All exponents `+1`.
    pub fn positive(n: usize, p: &[i64]) -> Result<Self> {
        TadpoleLog::new(n, p.iter().map(|&p| TailEdge { p, delta: 1 }).collect())
    }

    pub fn r(&self) -> usize {
        self.tail.len()
    }

    pub fn is_positive(&self) -> bool {
        self.tail.iter().all(|t| t.delta == 1)
    }

    /// 0-based index of the label `a_{n-p}` of tail edge `j`.
    fn label_index(&self, j: usize) -> usize {
        (self.n as i64 - self.tail[j].p - 1).rem_euclid(self.n as i64) as usize
    }

    /// `v` as a word over `a_1..a_n`.
    pub fn tail_word(&self) -> Word {
        Word::from_letters(
            self.n,
            (0..self.r()).map(|j| Letter::new(self.label_index(j), self.tail[j].delta < 0)),
        )
    }

    /// The `L_n(p_0, ..., p_{r-1})` parameters of a positive tail.
    pub fn ln_params(&self) -> Result<LnParams> {
        if !self.is_positive() {
            return Err(Error::Precondition("tail has a negative exponent".into()));
        }
        LnParams::new(self.n, self.tail.iter().map(|t| t.p).collect())
    }
}

/// Vertices `a_1..a_n, t_0..t_{r-1}`. Tail `t_j -> t_{j+1}` (with `t_r = a_1`)
/// labelled `a_{n-p_j}^{delta_j}`; circuit `a_i -> a_{i+1}` labelled `t_0`.
pub fn tadpole_to_log(t: &TadpoleLog) -> GeneralLog {
    let (n, r) = (t.n, t.r());
    let vertices = (1..=n)
        .map(|i| format!("a{i}"))
        .chain((0..r).map(|j| format!("t{j}")))
        .collect();
    let tail = (0..r).map(|j| LogEdge {
        from: n + j,
        to: if j + 1 < r { n + j + 1 } else { 0 },
        label: t.label_index(j),
        sign: t.tail[j].delta,
    });
    let circuit = (0..n).map(|i| LogEdge {
        from: i,
        to: (i + 1) % n,
        label: n,
        sign: 1,
    });
    GeneralLog {
        vertices,
        edges: tail.chain(circuit).collect(),
    }
}

/// Images `a_i -> c^{-(i-1)} a c^{i-1}` used by the tadpole collapse.
pub fn collapse_images(n: usize) -> Vec<TwoGenWord> {
    (0..n as i64)
        .map(|i| TwoGenWord::from_runs([(TwoGen::C, -i), (TwoGen::A, 1), (TwoGen::C, i)]))
        .collect()
}

/// `U = V^-1 c V a^-1` with `V = v(a, c^-1 a c, c^-2 a c^2, ...)`, freely reduced.
pub fn collapse_tadpole(t: &TadpoleLog) -> TwoGenWord {
    let v = t
        .tail_word()
        .substitute(&collapse_images(t.n))
        .expect("image count equals n");
    v.inverse()
        .mul(&TwoGenWord::c(1))
        .mul(&v)
        .mul(&TwoGenWord::a().inverse())
}

/// Tietze elimination of generator `gen` using relator `rel`, in which `gen`
/// must occur exactly once. The generator is removed and later indices move
/// down by one.
pub fn eliminate_generator(p: &Presentation, gen: usize, rel: usize) -> Result<Presentation> {
    let g = p.generator_count();
    if gen >= g || rel >= p.relators.len() {
        return Err(Error::InvalidParameters(format!(
            "no generator {gen} or relator {rel}"
        )));
    }
    let r = &p.relators[rel];
    let hits: Vec<usize> = (0..r.len()).filter(|&i| r.letters()[i].index == gen).collect();
    if hits.len() != 1 {
        return Err(Error::Precondition(format!(
            "generator {} occurs {} times in relator {rel}",
            p.generators[gen],
            hits.len()
        )));
    }
    // r rotated to gen^eps s, so gen = s^-1 (eps = 1) or s (eps = -1).
    let rotated = r.rotate_left(hits[0]);
    let eps_inverse = rotated.letters()[0].inverse;
    let rest = Word::from_letters(g, rotated.letters()[1..].iter().copied());
    let value = if eps_inverse { rest } else { rest.inverse() };

    let renumber = |w: &Word| {
        Word::from_letters(
            g - 1,
            w.letters()
                .iter()
                .map(|l| Letter::new(if l.index > gen { l.index - 1 } else { l.index }, l.inverse)),
        )
    };
    let images: Vec<Word> = (0..g)
        .map(|i| {
            if i == gen {
                renumber(&value)
            } else {
                renumber(&Word::generator(g, i))
            }
        })
        .collect();
    let relators = p
        .relators
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != rel)
        .map(|(_, w)| w.substitute(&images).expect("image count").free_reduce())
        .collect();
    let mut generators = p.generators.clone();
    generators.remove(gen);
    Ok(Presentation::new(generators, relators))
}

/// Eliminate `t_1..t_{r-1}` (each through the tail edge that defines it)
/// and then `a_2..a_n` (each through its circuit edge) from the LOG
/// presentation of `t`. Returns the two remaining relators with `a_1 -> a`,
/// `t_0 -> c`: the tail relator `a^-1 V^-1 c V` and the circuit relator
/// `[a, c^n]`.
pub fn eliminate_tadpole(t: &TadpoleLog) -> Result<(TwoGenWord, TwoGenWord)> {
    let (n, r) = (t.n, t.r());
    let mut pres = log_presentation(&tadpole_to_log(t))?;
    // Relators are ordered tail edges 0..r, then circuit edges 0..n. Removing
    // relator j at step j leaves the next defining relator at index 0.
    for j in 1..r {
        let gen = pres
            .generators
            .iter()
            .position(|s| *s == format!("t{j}"))
            .expect("tail vertex");
        pres = eliminate_generator(&pres, gen, 0)?;
    }
    // Remaining relators: [tail, circuit a1->a2, ..., a_n->a_1].
    for i in 2..=n {
        let gen = pres
            .generators
            .iter()
            .position(|s| *s == format!("a{i}"))
            .expect("circuit vertex");
        pres = eliminate_generator(&pres, gen, 1)?;
    }
    debug_assert_eq!(pres.generators, vec!["a1".to_string(), "t0".to_string()]);
    let to_two_gen = |w: &Word| {
        TwoGenWord::from_runs(w.letters().iter().map(|l| {
            (
                if l.index == 0 { TwoGen::A } else { TwoGen::C },
                l.exponent(),
            )
        }))
    };
    Ok((to_two_gen(&pres.relators[0]), to_two_gen(&pres.relators[1])))
}

/// `prod_{i=0}^{r-1} a c^{p_{i+1} - p_i}` with `p_r = -1`.
pub fn positive_product(p: &LnParams) -> TwoGenWord {
    TwoGenWord::from_runs(
        (0..p.r()).flat_map(|i| [(TwoGen::A, 1), (TwoGen::C, p.p_at(i + 1) - p.p_at(i))]),
    )
}

/// `Pi^-1 c Pi a^-1` for `Pi` the [`positive_product`].
pub fn two_gen_positive(p: &LnParams) -> TwoGenWord {
    let pi = positive_product(p);
    pi.inverse()
        .mul(&TwoGenWord::c(1))
        .mul(&pi)
        .mul(&TwoGenWord::a().inverse())
}

/// `x = Pi^-1 c^{1-p_0}`. In `<a, c | [a, c^n]>` the relator from
/// [`two_gen_positive`] equals `x W^-1 x^-1`, where `W` is the
/// [`hnn_two_generator`](crate::cycpres::hnn_two_generator) relator of
/// `family_ln(p)`.
pub fn positive_conjugator(p: &LnParams) -> TwoGenWord {
    positive_product(p)
        .inverse()
        .mul(&TwoGenWord::c(1 - p.p[0]))
}

/// The tadpole of `H_n(m, k)`: `tail_len` edges (default `k`, any value
/// `>= 1` congruent to `k` mod `n`), all labelled `a_{m-k+1}`.
pub fn tadpole_hnk(p: HnkParams, tail_len: Option<usize>) -> Result<TadpoleLog> {
    let len = tail_len.unwrap_or(p.k);
    if len == 0 || len % p.n != p.k % p.n {
        return Err(Error::InvalidParameters(format!(
            "tail length {len} must be positive and congruent to k = {} mod {}",
            p.k, p.n
        )));
    }
    let pj = p.k as i64 - p.m as i64 - 1;
    TadpoleLog::positive(p.n, &vec![pj; len])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycpres::{family_hnk, family_ln, hnn_two_generator};
    use crate::hatfree::{hat_conjugate, hat_rewrite, HatConjugacy};
    use TwoGen::{A, C};

    fn tw(runs: &[(TwoGen, i64)]) -> TwoGenWord {
        TwoGenWord::from_runs(runs.iter().copied())
    }

    #[test]
    fn small_log_presentation() {
        // Gamma(2; a_2)
        let t = TadpoleLog::positive(2, &[0]).unwrap();
        let log = tadpole_to_log(&t);
        assert_eq!(log.vertices, ["a1", "a2", "t0"]);
        let p = log_presentation(&log).unwrap();
        assert_eq!((p.generator_count(), p.relators.len()), (3, 3));
        assert_eq!(p.deficiency(), 0);
        assert_eq!(p.format_word(&p.relators[0]), "a1^-1 a2^-1 t0 a2");
        assert_eq!(p.format_word(&p.relators[1]), "a2^-1 t0^-1 a1 t0");
        assert_eq!(p.format_word(&p.relators[2]), "a1^-1 t0^-1 a2 t0");
    }

    #[test]
    fn self_loop_relator_vanishes() {
        let log = GeneralLog::new(
            vec!["x".into()],
            vec![LogEdge {
                from: 0,
                to: 0,
                label: 0,
                sign: 1,
            }],
        )
        .unwrap();
        let p = log_presentation(&log).unwrap();
        assert!(p.relators[0].is_empty());
    }

    #[test]
    fn disconnected_log_is_rejected() {
        let e = |a, b| LogEdge {
            from: a,
            to: b,
            label: a,
            sign: 1,
        };
        let log = GeneralLog::new(
            vec!["x".into(), "y".into(), "z".into()],
            vec![e(0, 1)],
        )
        .unwrap();
        assert_eq!(log_presentation(&log).unwrap_err(), Error::Disconnected);
    }

    #[test]
    fn hnk_tadpole_relators() {
        let (n, m, k) = (7, 2, 3);
        let t = tadpole_hnk(HnkParams { n, m, k }, None).unwrap();
        assert_eq!(t.r(), k);
        let p = log_presentation(&tadpole_to_log(&t)).unwrap();
        // label a_{m-k+1} = a_0 = a_7
        for j in 0..k {
            let next = if j + 1 < k { format!("t{}", j + 1) } else { "a1".into() };
            assert_eq!(p.format_word(&p.relators[j]), format!("{next}^-1 a7^-1 t{j} a7"));
        }
        for i in 1..=n {
            let next = i % n + 1;
            assert_eq!(p.format_word(&p.relators[k + i - 1]), format!("a{next}^-1 t0^-1 a{i} t0"));
        }
        assert!(tadpole_hnk(HnkParams { n, m, k }, Some(k + n)).is_ok());
        assert!(tadpole_hnk(HnkParams { n, m, k }, Some(k + 1)).is_err());
    }

    #[test]
    fn hnk_tadpole_labels() {
        for n in 3..9 {
            for m in 1..=n {
                let t = tadpole_hnk(HnkParams { n, m, k: 1 }, None).unwrap();
                // single tail edge labelled a_m
                assert_eq!(t.tail_word(), Word::from_powers(n, [(m as i64, 1)]));
            }
            let t = tadpole_hnk(HnkParams { n, m: 1, k: 2 }, None).unwrap();
            assert_eq!(t.tail_word(), Word::from_powers(n, [(n as i64, 2)]));
        }
    }

    #[test]
    fn collapse_single_letter() {
        for n in 2..8i64 {
            for m in 0..n {
                let t = TadpoleLog::positive(n as usize, &[m]).unwrap();
                let s = n - m - 1;
                let want = tw(&[(C, -s), (A, -1), (C, s), (C, 1), (C, -s), (A, 1), (C, s), (A, -1)]);
                assert_eq!(collapse_tadpole(&t), want);
                assert_eq!((want.asum(), want.csum()), (-1, 1));
            }
        }
        let t = TadpoleLog::positive(1, &[0]).unwrap();
        assert_eq!(collapse_tadpole(&t), tw(&[(A, -1), (C, 1), (A, 1), (A, -1)]));
        assert_eq!(collapse_tadpole(&t), tw(&[(A, -1), (C, 1)]));
    }

    #[test]
    fn elimination_matches_collapse() {
        let cases: Vec<TadpoleLog> = vec![
            TadpoleLog::positive(1, &[0]).unwrap(),
            TadpoleLog::positive(5, &[2, 0, 4]).unwrap(),
            TadpoleLog::new(
                6,
                vec![
                    TailEdge { p: 1, delta: -1 },
                    TailEdge { p: 1, delta: -1 },
                    TailEdge { p: 3, delta: 1 },
                ],
            )
            .unwrap(),
        ];
        for t in cases {
            let (tail, circuit) = eliminate_tadpole(&t).unwrap();
            let a = TwoGenWord::a();
            assert_eq!(a.mul(&tail).mul(&a.inverse()), collapse_tadpole(&t));
            assert_eq!(circuit, TwoGenWord::commutator_a_cn(t.n));
        }
    }

    #[test]
    fn positive_relator_examples() {
        let sieradski = LnParams::new(9, vec![-2]).unwrap();
        let ac = tw(&[(A, 1), (C, 1)]);
        assert_eq!(
            two_gen_positive(&sieradski),
            ac.inverse().mul(&TwoGenWord::c(1)).mul(&ac).mul(&TwoGenWord::a().inverse())
        );
        let l = LnParams::new(7, vec![0, 0]).unwrap();
        let pi = tw(&[(A, 2), (C, -1)]);
        assert_eq!(
            two_gen_positive(&l),
            pi.inverse().mul(&TwoGenWord::c(1)).mul(&pi).mul(&TwoGenWord::a().inverse())
        );
        // p_0 = n - 1 wraps around: a c^-n is a modulo [a, c^n].
        let n = 6;
        let wrap = LnParams::new(n, vec![n as i64 - 1]).unwrap();
        assert_eq!(positive_product(&wrap), tw(&[(A, 1), (C, -(n as i64))]));
        assert_eq!(
            hat_rewrite(&two_gen_positive(&wrap), n),
            hat_rewrite(&two_gen_positive(&LnParams::new(n, vec![-1]).unwrap()), n)
        );
    }

    #[test]
    fn positive_relator_equals_collapse_modulo_commutator() {
        let t = TadpoleLog::positive(7, &[0, 0]).unwrap();
        let l = t.ln_params().unwrap();
        assert_eq!(hat_rewrite(&collapse_tadpole(&t), 7), hat_rewrite(&two_gen_positive(&l), 7));
    }

    #[test]
    fn positive_relator_is_conjugate_to_hnn_relator() {
        let l = LnParams::new(7, vec![0, 0]).unwrap();
        let n = 7;
        let p = hat_rewrite(&two_gen_positive(&l), n);
        let w_inv = hat_rewrite(&hnn_two_generator(&family_ln(&l)), n).inverse();
        let x = hat_rewrite(&positive_conjugator(&l), n);
        assert_eq!(hat_conjugate(&w_inv, &p, 0, Some(&x)), HatConjugacy::Witness(x));
    }

    #[test]
    fn hnk_tadpole_gives_ln_word() {
        for n in 3..8 {
            for m in 1..=n {
                for k in 1..=n {
                    let t = tadpole_hnk(HnkParams { n, m, k }, None).unwrap();
                    let l = t.ln_params().unwrap();
                    assert_eq!(l.p, vec![(k as i64 - m as i64 - 1).rem_euclid(n as i64); k]);
                    if k == 1 {
                        let h = family_hnk(HnkParams { n, m, k });
                        assert!(h.word.cyclic_equivalent(&family_ln(&l).word).unwrap().is_some());
                    }
                }
            }
        }
    }
}
