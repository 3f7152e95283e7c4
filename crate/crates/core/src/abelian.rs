//! Abelianization: relation matrices, Smith normal form and the resultant
//! shortcut for cyclic presentations.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{
    CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero,
};

use crate::cycpres::CyclicWord;
use crate::presentation::Presentation;

/// Rows are relators, columns generators, entries exponent sums.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationMatrix {
    pub cols: usize,
    pub rows: Vec<Vec<BigInt>>,
}

pub fn relation_matrix(p: &Presentation) -> RelationMatrix {
    RelationMatrix {
        cols: p.generator_count(),
        rows: p
            .relators
            .iter()
            .map(|r| {
                r.exponent_data()
                    .per_generator
                    .into_iter()
                    .map(BigInt::from)
                    .collect()
            })
            .collect(),
    }
}

/// `Z^free_rank + Z/d_1 + ... + Z/d_s` with `1 < d_1 | d_2 | ... | d_s`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianInvariants {
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupOrder {
    Finite(BigInt),
    Infinite,
}

impl GroupOrder {
    pub fn finite(&self) -> Option<&BigInt> {
        match self {
            GroupOrder::Finite(n) => Some(n),
            GroupOrder::Infinite => None,
        }
    }
}

impl fmt::Display for GroupOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupOrder::Finite(n) => write!(f, "{n}"),
            GroupOrder::Infinite => write!(f, "infinite"),
        }
    }
}

impl AbelianInvariants {
    pub fn order(&self) -> GroupOrder {
        if self.free_rank > 0 {
            GroupOrder::Infinite
        } else {
            GroupOrder::Finite(self.torsion.iter().product())
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

trait SnfEntry:
    Clone + Ord + Zero + One + CheckedAdd + CheckedSub + CheckedMul + CheckedDiv
{
}
impl SnfEntry for i64 {}
impl SnfEntry for BigInt {}

fn checked_divides<T: SnfEntry>(d: &T, x: &T) -> Option<bool> {
    Some(x.checked_div(d)?.checked_mul(d)? == *x)
}

fn checked_abs<T: SnfEntry>(x: &T) -> Option<T> {
    if *x < T::zero() {
        T::zero().checked_sub(x)
    } else {
        Some(x.clone())
    }
}

/// Diagonal entries of the Smith form, or `None` on overflow.
#[allow(clippy::needless_range_loop)]
fn snf_diagonal<T: SnfEntry>(mut a: Vec<Vec<T>>, cols: usize) -> Option<Vec<T>> {
    let rows = a.len();
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            // smallest |entry|, ties to the lowest row then column
            let mut best: Option<(T, usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(t) {
                for (j, x) in row.iter().enumerate().skip(t) {
                    if x.is_zero() {
                        continue;
                    }
                    let ax = checked_abs(x)?;
                    if best.as_ref().is_none_or(|(b, _, _)| ax.cmp(b) == Ordering::Less) {
                        best = Some((ax, i, j));
                    }
                }
            }
            let Some((_, pi, pj)) = best else {
                return Some(diag);
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let pivot = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].checked_div(&pivot)?;
                for j in t..cols {
                    let v = a[i][j].checked_sub(&q.checked_mul(&a[t][j])?)?;
                    a[i][j] = v;
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].checked_div(&pivot)?;
                for row in a.iter_mut().skip(t) {
                    let v = row[j].checked_sub(&q.checked_mul(&row[t])?)?;
                    row[j] = v;
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let mut offender = None;
            'scan: for (i, row) in a.iter().enumerate().skip(t + 1) {
                for x in &row[t + 1..] {
                    if !checked_divides(&pivot, x)? {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    for j in t..cols {
                        let v = a[t][j].checked_add(&a[i][j])?;
                        a[t][j] = v;
                    }
                }
                None => {
                    diag.push(checked_abs(&pivot)?);
                    break;
                }
            }
        }
    }
    Some(diag)
}

fn invariants_from_diagonal(diag: Vec<BigInt>, cols: usize) -> AbelianInvariants {
    AbelianInvariants {
        free_rank: cols - diag.len(),
        torsion: diag.into_iter().filter(|d| !d.is_one()).collect(),
    }
}

/// Smith normal form over the integers. Runs in `i64` and restarts with big
/// integers if an intermediate value overflows.
pub fn smith_normal_form(m: &RelationMatrix) -> AbelianInvariants {
    let small: Option<Vec<Vec<i64>>> = m
        .rows
        .iter()
        .map(|r| r.iter().map(ToPrimitive::to_i64).collect())
        .collect();
    if let Some(diag) = small.and_then(|a| snf_diagonal(a, m.cols)) {
        return invariants_from_diagonal(diag.into_iter().map(BigInt::from).collect(), m.cols);
    }
    let diag = snf_diagonal(m.rows.clone(), m.cols).expect("big integers do not overflow");
    invariants_from_diagonal(diag, m.cols)
}

pub fn abelian_invariants(p: &Presentation) -> AbelianInvariants {
    smith_normal_form(&relation_matrix(p))
}

/// `f(t) = sum_j e_j t^j` with `e_j` the exponent sum of `x_{j+1}`.
pub fn representer_polynomial(cw: &CyclicWord) -> Vec<BigInt> {
    cw.word
        .exponent_data()
        .per_generator
        .into_iter()
        .map(BigInt::from)
        .collect()
}

/// Coefficients low to high. The zero polynomial is the empty vector.
type Poly = Vec<BigInt>;

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn degree(p: &Poly) -> usize {
    p.len() - 1
}

fn lead(p: &Poly) -> &BigInt {
    p.last().expect("nonzero polynomial")
}

fn content(p: &Poly) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn scale_div(p: &Poly, d: &BigInt) -> Poly {
    p.iter()
        .map(|c| {
            debug_assert!((c % d).is_zero());
            c / d
        })
        .collect()
}

/// `lc(b)^{deg a - deg b + 1} a mod b`.
fn pseudo_remainder(a: &Poly, b: &Poly) -> Poly {
    let mut r = a.clone();
    let db = degree(b);
    let lb = lead(b).clone();
    let steps = degree(a) + 1 - db;
    for _ in 0..steps {
        if r.len() <= db {
            for c in r.iter_mut() {
                *c *= &lb;
            }
            continue;
        }
        let shift = r.len() - 1 - db;
        let lr = lead(&r).clone();
        for c in r.iter_mut() {
            *c *= &lb;
        }
        for (j, c) in b.iter().enumerate() {
            r[shift + j] -= &lr * c;
        }
        r.pop();
    }
    trim(r)
}

/// Resultant of two integer polynomials by the subresultant remainder
/// sequence. Zero when either is zero.
pub fn resultant(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    if a.is_empty() || b.is_empty() {
        return BigInt::zero();
    }
    let (ca, cb) = (content(&a), content(&b));
    a = scale_div(&a, &ca);
    b = scale_div(&b, &cb);
    let t = ca.pow(degree(&b) as u32) * cb.pow(degree(&a) as u32);
    let mut s = BigInt::one();
    if degree(&a) < degree(&b) {
        std::mem::swap(&mut a, &mut b);
        if degree(&a) % 2 == 1 && degree(&b) % 2 == 1 {
            s = -s;
        }
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    while degree(&b) > 0 {
        let delta = degree(&a) - degree(&b);
        if degree(&a) % 2 == 1 && degree(&b) % 2 == 1 {
            s = -s;
        }
        let r = pseudo_remainder(&a, &b);
        if r.is_empty() {
            return BigInt::zero();
        }
        a = b;
        b = scale_div(&r, &(&g * h.pow(delta as u32)));
        g = lead(&a).clone();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta as u32) / h.pow(delta as u32 - 1)
        };
    }
    let da = degree(&a) as u32;
    let hb = if da == 0 {
        BigInt::one()
    } else {
        lead(&b).pow(da) / h.pow(da - 1)
    };
    s * t * hb
}

/// `|Res(t^n - 1, f)|`, the order of the abelianization of `G_n(w)`.
pub fn ab_order_circulant(cw: &CyclicWord) -> GroupOrder {
    let mut tn1 = vec![BigInt::zero(); cw.n + 1];
    tn1[0] = BigInt::from(-1);
    tn1[cw.n] = BigInt::one();
    let r = resultant(&tn1, &representer_polynomial(cw));
    if r.is_zero() {
        GroupOrder::Infinite
    } else {
        GroupOrder::Finite(r.abs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycpres::{family_hnk, HnkParams};
    use crate::word::Word;
    use proptest::prelude::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn hnk(n: usize, m: usize, k: usize) -> CyclicWord {
        family_hnk(HnkParams { n, m, k })
    }

    fn inv(cw: &CyclicWord) -> AbelianInvariants {
        abelian_invariants(&cw.presentation().unwrap())
    }

    /// Determinant by fraction-free elimination.
    fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
        let n = m.len();
        if n == 0 {
            return BigInt::one();
        }
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        sign * m[n - 1][n - 1].clone()
    }

    fn sylvester_resultant(a: &[BigInt], b: &[BigInt]) -> BigInt {
        let a = trim(a.to_vec());
        let b = trim(b.to_vec());
        if a.is_empty() || b.is_empty() {
            return BigInt::zero();
        }
        let (da, db) = (degree(&a), degree(&b));
        let size = da + db;
        if size == 0 {
            return BigInt::one();
        }
        let mut m = vec![vec![BigInt::zero(); size]; size];
        for i in 0..db {
            for (j, c) in a.iter().rev().enumerate() {
                m[i][i + j] = c.clone();
            }
        }
        for i in 0..da {
            for (j, c) in b.iter().rev().enumerate() {
                m[db + i][i + j] = c.clone();
            }
        }
        bareiss_det(m)
    }

    #[test]
    fn matrix_examples() {
        let n = 7;
        let m = relation_matrix(&hnk(n, 2, 5).presentation().unwrap());
        let mut f = vec![0i64; n];
        f[0] += 1;
        f[2] += 1;
        f[5] -= 1;
        for (i, row) in m.rows.iter().enumerate() {
            let mut rotated = f.clone();
            rotated.rotate_right(i);
            assert_eq!(row, &big(&rotated));
        }
        let comm = Presentation::indexed(2, vec![Word::from_powers(2, [(1, 1), (2, 1), (1, -1), (2, -1)])]);
        assert_eq!(relation_matrix(&comm).rows, vec![big(&[0, 0])]);
        let free = Presentation::indexed(3, vec![]);
        let inv = abelian_invariants(&free);
        assert_eq!((inv.free_rank, inv.torsion.len()), (3, 0));
    }

    #[test]
    fn snf_examples() {
        let id = RelationMatrix {
            cols: 3,
            rows: vec![big(&[1, 0, 0]), big(&[0, 1, 0]), big(&[0, 0, 1])],
        };
        assert!(smith_normal_form(&id).is_trivial());
        assert_eq!(inv(&hnk(5, 3, 1)).torsion, big(&[11]));
        assert_eq!(inv(&hnk(6, 1, 3)).torsion, big(&[7]));
        assert_eq!(inv(&hnk(6, 2, 3)).torsion, big(&[9]));
        let m = RelationMatrix {
            cols: 3,
            rows: vec![big(&[2, 4, 4]), big(&[-6, 6, 12]), big(&[10, -4, -16])],
        };
        // classic textbook example: diag(2, 6, 12)
        assert_eq!(smith_normal_form(&m).torsion, big(&[2, 6, 12]));
        let m = RelationMatrix {
            cols: 2,
            rows: vec![big(&[4, 0]), big(&[0, 6])],
        };
        assert_eq!(smith_normal_form(&m).torsion, big(&[2, 12]));
    }

    #[test]
    fn snf_overflow_falls_back() {
        let huge = i64::MAX / 2;
        let m = RelationMatrix {
            cols: 2,
            rows: vec![big(&[huge, huge - 1]), big(&[huge - 1, huge - 2])],
        };
        // determinant -1
        assert!(smith_normal_form(&m).is_trivial());
        let m = RelationMatrix {
            cols: 1,
            rows: vec![vec![BigInt::from(3).pow(100)]],
        };
        assert_eq!(smith_normal_form(&m).torsion, vec![BigInt::from(3).pow(100)]);
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(ab_order_circulant(&hnk(5, 3, 1)), GroupOrder::Finite(11.into()));
        assert_eq!(ab_order_circulant(&hnk(6, 2, 3)), GroupOrder::Finite(9.into()));
        assert_eq!(ab_order_circulant(&hnk(6, 1, 3)), GroupOrder::Finite(7.into()));
        for n in 2..=12usize {
            assert_eq!(ab_order_circulant(&hnk(n, n, n)), GroupOrder::Finite(1.into()));
            for k in 1..n {
                // d disjoint blocks x_{i+k} = x_i^2, each Z/(2^{n/d} - 1)
                let d = n.gcd(&k);
                let base: BigInt = BigInt::from(2).pow((n / d) as u32) - 1;
                let want = base.pow(d as u32);
                assert_eq!(ab_order_circulant(&hnk(n, n, k)), GroupOrder::Finite(want), "n={n} k={k}");
            }
        }
        // x1 x2^-1 has f(1) = 0
        let cw = CyclicWord::new(Word::from_powers(4, [(1, 1), (2, -1)]));
        assert_eq!(ab_order_circulant(&cw), GroupOrder::Infinite);
        assert_eq!(inv(&cw).order(), GroupOrder::Infinite);
    }

    #[test]
    fn resultant_matches_sylvester_on_families() {
        for n in 2..=12 {
            for m in 1..=n {
                for k in 1..=n {
                    let cw = hnk(n, m, k);
                    let mut tn1 = vec![BigInt::zero(); n + 1];
                    tn1[0] = BigInt::from(-1);
                    tn1[n] = BigInt::one();
                    let f = representer_polynomial(&cw);
                    assert_eq!(resultant(&tn1, &f), sylvester_resultant(&tn1, &f));
                }
            }
        }
    }

    fn small_poly() -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::vec(-4i64..=4, 0..7)
    }

    fn divisor_chain(t: &[BigInt]) -> bool {
        t.iter().all(|d| *d > BigInt::one()) && t.windows(2).all(|w| (&w[1] % &w[0]).is_zero())
    }

    proptest! {
        #[test]
        fn resultant_agrees_with_sylvester(a in small_poly(), b in small_poly()) {
            prop_assert_eq!(resultant(&big(&a), &big(&b)), sylvester_resultant(&big(&a), &big(&b)));
        }

        #[test]
        fn snf_is_a_divisor_chain_with_matching_determinant(
            rows in proptest::collection::vec(proptest::collection::vec(-9i64..=9, 4), 4)
        ) {
            let m = RelationMatrix { cols: 4, rows: rows.iter().map(|r| big(r)).collect() };
            let inv = smith_normal_form(&m);
            prop_assert!(divisor_chain(&inv.torsion));
            let det = bareiss_det(m.rows.clone()).abs();
            match inv.order() {
                GroupOrder::Finite(o) => prop_assert_eq!(o, det),
                GroupOrder::Infinite => prop_assert!(det.is_zero()),
            }
        }

        #[test]
        fn snf_order_matches_resultant(
            powers in proptest::collection::vec((1i64..=9, -2i64..=2), 1..7),
            n in 2usize..10,
        ) {
            let cw = CyclicWord::new(Word::from_powers(n, powers).free_reduce());
            prop_assume!(!cw.word.is_empty());
            prop_assert_eq!(inv(&cw).order(), ab_order_circulant(&cw));
        }
    }
}
