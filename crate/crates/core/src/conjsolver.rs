//! Twisted conjugacy in a finite `G` and conjugacy in `G x|_phi Z`.

use serde::{Deserialize, Serialize};

use crate::enumerate::FiniteGroupTable;

/// `g t^p` in `G x|_phi Z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SemidirectElement {
    pub g: u32,
    pub p: i64,
}

impl SemidirectElement {
    pub fn new(g: u32, p: i64) -> Self {
        SemidirectElement { g, p }
    }

    /// `(g t^p)(h t^l) = g phi^p(h) t^(p+l)`.
    pub fn mul(self, other: SemidirectElement, group: &FiniteGroupTable) -> SemidirectElement {
        SemidirectElement {
            g: group.mul(self.g, group.phi_pow(other.g, self.p)),
            p: self.p + other.p,
        }
    }

    pub fn inverse(self, group: &FiniteGroupTable) -> SemidirectElement {
        SemidirectElement {
            g: group.phi_pow(group.inverse(self.g), -self.p),
            p: -self.p,
        }
    }
}

/// Some `g` with `g^-1 u phi^k(g) = v`. `None` is a proof that there is none.
pub fn twisted_conjugate(group: &FiniteGroupTable, phi_pow: i64, u: u32, v: u32) -> Option<u32> {
    (0..group.order() as u32).find(|&g| {
        let lhs = group.mul(group.mul(group.inverse(g), u), group.phi_pow(g, phi_pow));
        lhs == v
    })
}

/// `phi^k`-twisted conjugacy classes, each sorted, ordered by least element.
pub fn twisted_classes(group: &FiniteGroupTable, phi_pow: i64) -> Vec<Vec<u32>> {
    let order = group.order();
    let mut class_of = vec![usize::MAX; order];
    let mut classes: Vec<Vec<u32>> = Vec::new();
    for u in 0..order as u32 {
        if class_of[u as usize] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut members: Vec<u32> = (0..order as u32)
            .map(|g| group.mul(group.mul(group.inverse(g), u), group.phi_pow(g, phi_pow)))
            .collect();
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            class_of[m as usize] = id;
        }
        classes.push(members);
    }
    classes
}

/// Outcome of a conjugacy query in `G x|_phi Z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemidirectAnswer {
    pub conjugate: bool,
    /// `w` with `x w = w y`; `w.p` lies in `0..ord(phi)`.
    pub witness: Option<SemidirectElement>,
}

/// Decide whether `x` and `y` are conjugate in `G x|_phi Z`: the powers of
/// `t` must agree and `x.g` must be `phi^(x.p)`-twisted conjugate to some
/// `phi^m(y.g)`.
pub fn semidirect_conjugate(
    group: &FiniteGroupTable,
    x: SemidirectElement,
    y: SemidirectElement,
) -> SemidirectAnswer {
    let no = SemidirectAnswer {
        conjugate: false,
        witness: None,
    };
    if x.p != y.p {
        return no;
    }
    for m in 0..group.phi_order() as i64 {
        let target = group.phi_pow(y.g, m);
        if let Some(g) = twisted_conjugate(group, x.p, x.g, target) {
            let w = SemidirectElement::new(g, m);
            debug_assert_eq!(x.mul(w, group), w.mul(y, group));
            return SemidirectAnswer {
                conjugate: true,
                witness: Some(w),
            };
        }
    }
    no
}

/// Search conjugators `(g, m)` with `|m| <= window` directly in the
/// semidirect product.
pub fn direct_conjugate(
    group: &FiniteGroupTable,
    x: SemidirectElement,
    y: SemidirectElement,
    window: i64,
) -> Option<SemidirectElement> {
    (-window..=window).find_map(|m| {
        (0..group.order() as u32)
            .map(|g| SemidirectElement::new(g, m))
            .find(|&w| x.mul(w, group) == w.mul(y, group))
    })
}

/// Check the decided relation on `{(g, p)}` for a fixed `p`: it must be
/// reflexive, symmetric and transitive. Returns the number of classes.
pub fn check_equivalence(group: &FiniteGroupTable, p: i64) -> Option<usize> {
    let order = group.order();
    let rel: Vec<bool> = (0..order * order)
        .map(|i| {
            let (u, v) = ((i / order) as u32, (i % order) as u32);
            semidirect_conjugate(group, SemidirectElement::new(u, p), SemidirectElement::new(v, p))
                .conjugate
        })
        .collect();
    let r = |u: usize, v: usize| rel[u * order + v];
    let reflexive = (0..order).all(|u| r(u, u));
    let symmetric = (0..order).all(|u| (0..order).all(|v| r(u, v) == r(v, u)));
    let transitive = (0..order).all(|u| {
        (0..order).all(|v| !r(u, v) || (0..order).all(|w| !r(v, w) || r(u, w)))
    });
    if !(reflexive && symmetric && transitive) {
        return None;
    }
    Some((0..order).filter(|&u| (0..u).all(|v| !r(v, u))).count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycpres::{family_hnk, HnkParams};
    use crate::enumerate::finite_group;

    fn group(n: usize, m: usize, k: usize) -> FiniteGroupTable {
        finite_group(&family_hnk(HnkParams { n, m, k }), 10_000).unwrap()
    }

    #[test]
    fn identity_twist_on_abelian_group_is_equality() {
        let g = group(5, 3, 1);
        let ord = g.phi_order() as i64;
        for u in 0..11 {
            for v in 0..11 {
                assert_eq!(twisted_conjugate(&g, ord, u, v).is_some(), u == v);
                assert_eq!(twisted_conjugate(&g, 0, u, v).is_some(), u == v);
            }
        }
    }

    #[test]
    fn twisted_class_count_matches_image_size() {
        let g = group(6, 1, 3);
        assert_eq!(g.order(), 7);
        for k in 0..6 {
            let classes = twisted_classes(&g, k);
            let mut image: Vec<u32> =
                (0..7).map(|x| g.mul(g.inverse(x), g.phi_pow(x, k))).collect();
            image.sort_unstable();
            image.dedup();
            assert_eq!(classes.len(), 7 / image.len());
            for u in 0..7 {
                for v in 0..7 {
                    let same = classes.iter().any(|c| c.contains(&u) && c.contains(&v));
                    let w = twisted_conjugate(&g, k, u, v);
                    assert_eq!(w.is_some(), same);
                    if let Some(w) = w {
                        assert_eq!(g.mul(g.mul(g.inverse(w), u), g.phi_pow(w, k)), v);
                    }
                }
            }
        }
    }

    #[test]
    fn different_t_powers_are_not_conjugate() {
        let g = group(5, 3, 1);
        let a = semidirect_conjugate(&g, SemidirectElement::new(3, 1), SemidirectElement::new(3, 2));
        assert!(!a.conjugate && a.witness.is_none());
    }

    #[test]
    fn zero_power_reduces_to_orbits_of_ordinary_classes() {
        let g = group(6, 3, 4);
        for u in 0..56 {
            for v in 0..56 {
                let expected = (0..g.phi_order() as i64).any(|m| {
                    let t = g.phi_pow(v, m);
                    (0..56).any(|h| g.mul(g.mul(g.inverse(h), u), h) == t)
                });
                let a = semidirect_conjugate(&g, SemidirectElement::new(u, 0), SemidirectElement::new(v, 0));
                assert_eq!(a.conjugate, expected);
            }
        }
    }

    #[test]
    fn reduction_agrees_with_direct_search() {
        let g = group(5, 3, 1);
        let window = 2 * g.n as i64;
        for p in -3..=3 {
            for q in -3..=3 {
                for u in 0..11 {
                    for v in 0..11 {
                        let (x, y) = (SemidirectElement::new(u, p), SemidirectElement::new(v, q));
                        let a = semidirect_conjugate(&g, x, y);
                        assert_eq!(a.conjugate, direct_conjugate(&g, x, y, window).is_some());
                        if let Some(w) = a.witness {
                            assert_eq!(x.mul(w, &g), w.mul(y, &g));
                            assert!((0..g.phi_order() as i64).contains(&w.p));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn semidirect_inverse() {
        let g = group(6, 3, 4);
        for a in 0..56 {
            for p in -3..=3 {
                let x = SemidirectElement::new(a, p);
                assert_eq!(x.mul(x.inverse(&g), &g), SemidirectElement::new(0, 0));
                assert_eq!(x.inverse(&g).mul(x, &g), SemidirectElement::new(0, 0));
            }
        }
    }

    #[test]
    fn decided_relation_is_an_equivalence() {
        let g = group(5, 3, 1);
        for p in -2..=2 {
            assert!(check_equivalence(&g, p).is_some());
        }
        let g = group(6, 3, 4);
        assert!(check_equivalence(&g, 0).is_some());
    }
}
