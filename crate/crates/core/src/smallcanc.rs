//! Star graphs, pieces and the C(3)-T(q) conditions for `H_n(m, k)`.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::io::{self, Write};

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cycpres::{family_hnk, HnkParams};
use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::word::{Letter, Word};

/// Edge families of the `H_n(m, k)` star graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EdgeKind {
    X,
    Y,
    Z,
    Untyped,
}

impl EdgeKind {
    pub fn symbol(self) -> char {
        match self {
            EdgeKind::X => 'X',
            EdgeKind::Y => 'Y',
            EdgeKind::Z => 'Z',
            EdgeKind::Untyped => '-',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StarEdge {
    pub u: usize,
    pub v: usize,
    pub kind: EdgeKind,
}

/// Vertex `2 i` is `x_{i+1}`, vertex `2 i + 1` is `x_{i+1}^-1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarGraph {
    pub generators: usize,
    pub edges: Vec<StarEdge>,
    /// Every vertex is carried to `x_1` or `x_1^-1` by an automorphism.
    pub shift_invariant: bool,
}

pub fn vertex(letter: Letter) -> usize {
    2 * letter.index + usize::from(letter.inverse)
}

pub fn vertex_name(v: usize) -> String {
    let i = v / 2 + 1;
    if v.is_multiple_of(2) {
        format!("x{i}")
    } else {
        format!("x{i}^-1")
    }
}

impl StarGraph {
    pub fn from_edges(generators: usize, edges: Vec<StarEdge>) -> Self {
        assert!(edges.iter().all(|e| e.u < 2 * generators && e.v < 2 * generators));
        StarGraph {
            generators,
            edges,
            shift_invariant: false,
        }
    }

    pub fn vertex_count(&self) -> usize {
        2 * self.generators
    }

    /// `(neighbour, edge id)` per vertex.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertex_count()];
        for (id, e) in self.edges.iter().enumerate() {
            adj[e.u].push((e.v, id));
            adj[e.v].push((e.u, id));
        }
        adj
    }

    fn roots(&self) -> Vec<usize> {
        if self.shift_invariant {
            vec![0, 1]
        } else {
            (0..self.vertex_count()).collect()
        }
    }

    /// Length of a shortest cycle, if there is one of length at most `cap`.
    /// Parallel edges form 2-cycles.
    pub fn girth_within(&self, cap: usize) -> Option<usize> {
        let adj = self.adjacency();
        let mut best = usize::MAX;
        let nv = self.vertex_count();
        let mut dist = vec![usize::MAX; nv];
        let mut parent = vec![usize::MAX; nv];
        let mut queue = VecDeque::new();
        for root in self.roots() {
            dist.fill(usize::MAX);
            parent.fill(usize::MAX);
            queue.clear();
            dist[root] = 0;
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                if 2 * dist[u] + 1 >= best.min(cap + 1) {
                    break;
                }
                for &(w, e) in &adj[u] {
                    if e == parent[u] {
                        continue;
                    }
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = e;
                        queue.push_back(w);
                    } else {
                        best = best.min(dist[u] + dist[w] + 1);
                    }
                }
            }
        }
        (best <= cap).then_some(best)
    }

    /// Exact girth; `None` for a forest.
    pub fn girth(&self) -> Option<usize> {
        self.girth_within(usize::MAX / 4)
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertex_count()];
        for e in &self.edges {
            d[e.u] += 1;
            d[e.v] += 1;
        }
        d
    }

    /// Eccentricities by BFS, `None` if disconnected.
    fn diameter(&self) -> Option<usize> {
        let adj = self.adjacency();
        let nv = self.vertex_count();
        let mut diam = 0;
        for root in 0..nv {
            let mut dist = vec![usize::MAX; nv];
            dist[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for &(w, _) in &adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        queue.push_back(w);
                    }
                }
            }
            diam = diam.max(*dist.iter().max()?);
            if dist.contains(&usize::MAX) {
                return None;
            }
        }
        Some(diam)
    }

    fn is_bipartite(&self) -> bool {
        let adj = self.adjacency();
        let mut colour = vec![u8::MAX; self.vertex_count()];
        for s in 0..self.vertex_count() {
            if colour[s] != u8::MAX {
                continue;
            }
            colour[s] = 0;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &(w, _) in &adj[u] {
                    if colour[w] == u8::MAX {
                        colour[w] = 1 - colour[u];
                        stack.push(w);
                    } else if colour[w] == colour[u] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Sorted edge list after `v -> v^-1` on every vertex.
    fn inverted_edge_multiset(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|e| {
                let (a, b) = (e.u ^ 1, e.v ^ 1);
                (a.min(b), a.max(b))
            })
            .collect();
        out.sort_unstable();
        out
    }

    fn edge_multiset(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> =
            self.edges.iter().map(|e| (e.u.min(e.v), e.u.max(e.v))).collect();
        out.sort_unstable();
        out
    }

    /// Same edges once every vertex of `self` is replaced by its inverse.
    pub fn equals_under_inversion(&self, other: &StarGraph) -> bool {
        self.generators == other.generators
            && self.inverted_edge_multiset() == other.edge_multiset()
    }
}

/// Distinct cyclic permutations of the cyclically reduced relators and
/// their inverses.
pub fn symmetrized_relators(p: &Presentation) -> Vec<Word> {
    let mut words: Vec<Word> = p
        .relators
        .iter()
        .map(|r| r.cyclically_reduce().0)
        .filter(|r| !r.is_empty())
        .flat_map(|r| {
            let inv = r.inverse();
            let rots: Vec<Word> = r.rotations().chain(inv.rotations()).collect();
            rots
        })
        .collect();
    words.sort_unstable();
    words.dedup();
    words
}

/// One undirected edge `{x, y}` per distinct word `x^-1 y u`.
pub fn star_graph(p: &Presentation) -> StarGraph {
    let mut edges = Vec::new();
    for z in symmetrized_relators(p) {
        let len = z.len();
        if len < 2 {
            continue;
        }
        // z = x^-1 y u and its partner y^-1 x u^-1 give the same edge
        let partner = z.inverse().rotate_left(len - 2);
        if z > partner {
            continue;
        }
        let x = z.letters()[0].inv_index();
        let y = vertex(z.letters()[1]);
        if x != y {
            edges.push(StarEdge {
                u: x.min(y),
                v: x.max(y),
                kind: EdgeKind::Untyped,
            });
        }
    }
    StarGraph::from_edges(p.generator_count(), edges)
}

trait InvIndex {
    fn inv_index(self) -> usize;
}

impl InvIndex for Letter {
    fn inv_index(self) -> usize {
        2 * self.index + usize::from(!self.inverse)
    }
}

/// The star graph of a cyclic presentation, marked shift invariant.
pub fn star_graph_cyclic(p: &Presentation) -> StarGraph {
    let mut g = star_graph(p);
    g.shift_invariant = true;
    g
}

/// `X = {x_i, x_{i+m}^-1}`, `Y = {x_i, x_{i+B}}`, `Z = {x_i^-1, x_{i+A}^-1}`
/// with `A = k`, `B = k - m`. Loops are dropped.
pub fn star_hnk(n: usize, m: usize, k: usize) -> StarGraph {
    let (a, b) = residues(n, m, k);
    let pos = |i: usize| 2 * (i % n);
    let neg = |i: usize| 2 * (i % n) + 1;
    let mut edges = Vec::with_capacity(3 * n);
    let mut push = |u: usize, v: usize, kind| {
        if u != v {
            edges.push(StarEdge {
                u: u.min(v),
                v: u.max(v),
                kind,
            });
        }
    };
    for i in 0..n {
        push(pos(i), neg(i + m), EdgeKind::X);
    }
    for i in 0..n {
        push(pos(i), pos(i + b), EdgeKind::Y);
    }
    for i in 0..n {
        push(neg(i), neg(i + a), EdgeKind::Z);
    }
    StarGraph {
        generators: n,
        edges,
        shift_invariant: true,
    }
}

fn residues(n: usize, m: usize, k: usize) -> (usize, usize) {
    let n = n as i64;
    let a = (k as i64).rem_euclid(n);
    let b = (k as i64 - m as i64).rem_euclid(n);
    (a as usize, b as usize)
}

/// A simple cycle: vertices in order, the edge leaving each vertex, and the
/// edge kinds along the way.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cycle {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    pub kinds: String,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Least rotation or reflection of the kind string.
    pub fn canonical_kinds(&self) -> String {
        canonical_necklace(&self.kinds)
    }

    pub fn describe(&self) -> String {
        let mut parts: Vec<String> = self.vertices.iter().map(|&v| vertex_name(v)).collect();
        parts.push(vertex_name(self.vertices[0]));
        parts.join(" - ")
    }
}

fn canonical_necklace(s: &str) -> String {
    let chars: Vec<char> = s.chars().collect();
    let len = chars.len();
    let mut best: Option<String> = None;
    for reflected in [false, true] {
        let seq: Vec<char> = if reflected {
            chars.iter().rev().copied().collect()
        } else {
            chars.clone()
        };
        for r in 0..len.max(1) {
            let cand: String = seq[r..].iter().chain(&seq[..r]).collect();
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap_or_default()
}

/// Girth and every simple cycle of length `<= max_len`, each listed once.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Spectrum {
    pub girth: Option<usize>,
    pub counts: BTreeMap<usize, usize>,
    pub cycles: Vec<Cycle>,
}

impl Spectrum {
    /// `(length, canonical kind string) -> count`.
    pub fn kind_counts(&self) -> BTreeMap<(usize, String), usize> {
        let mut out = BTreeMap::new();
        for c in &self.cycles {
            *out.entry((c.len(), c.canonical_kinds())).or_insert(0) += 1;
        }
        out
    }
}

pub fn girth_and_spectrum(g: &StarGraph, max_len: usize) -> Spectrum {
    assert!(max_len >= 2, "cycle length bound must be at least 2");
    let adj = g.adjacency();
    let mut cycles = Vec::new();
    let mut on_path = vec![false; g.vertex_count()];
    for s in 0..g.vertex_count() {
        let mut verts = vec![s];
        let mut edges = Vec::new();
        on_path[s] = true;
        extend_paths(g, &adj, s, max_len, &mut verts, &mut edges, &mut on_path, &mut cycles);
        on_path[s] = false;
    }
    cycles.sort();
    let mut counts = BTreeMap::new();
    for c in &cycles {
        *counts.entry(c.len()).or_insert(0) += 1;
    }
    Spectrum {
        girth: g.girth(),
        counts,
        cycles,
    }
}

#[allow(clippy::too_many_arguments)]
fn extend_paths(
    g: &StarGraph,
    adj: &[Vec<(usize, usize)>],
    s: usize,
    max_len: usize,
    verts: &mut Vec<usize>,
    edges: &mut Vec<usize>,
    on_path: &mut [bool],
    out: &mut Vec<Cycle>,
) {
    let u = *verts.last().expect("nonempty path");
    for &(w, e) in &adj[u] {
        if edges.last() == Some(&e) {
            continue;
        }
        if w == s && !edges.is_empty() {
            // each cycle is met in both directions; keep one
            if edges[0] < e {
                let mut cyc_edges = edges.clone();
                cyc_edges.push(e);
                let kinds = cyc_edges.iter().map(|&id| g.edges[id].kind.symbol()).collect();
                out.push(Cycle {
                    vertices: verts.clone(),
                    edges: cyc_edges,
                    kinds,
                });
            }
            continue;
        }
        if w <= s || on_path[w] || verts.len() >= max_len {
            continue;
        }
        on_path[w] = true;
        verts.push(w);
        edges.push(e);
        extend_paths(g, adj, s, max_len, verts, edges, on_path, out);
        edges.pop();
        verts.pop();
        on_path[w] = false;
    }
}

/// Pieces and the strongest C(p) condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceReport {
    /// Longest piece.
    pub max_piece_length: usize,
    /// Fewest pieces any symmetrized relator splits into; `None` when some
    /// letter of every symmetrized relator is not a piece, so C(p) holds
    /// for all p.
    pub min_pieces: Option<usize>,
}

impl PieceReport {
    pub fn satisfies_c(&self, p: usize) -> bool {
        self.min_pieces.is_none_or(|m| m >= p)
    }
}

fn common_prefix(a: &Word, b: &Word) -> usize {
    a.letters()
        .iter()
        .zip(b.letters())
        .take_while(|(x, y)| x == y)
        .count()
}

/// Pieces are common prefixes of two distinct words of the symmetrized set.
/// Repeated relators contribute one copy.
pub fn pieces_and_c(p: &Presentation) -> PieceReport {
    let words = symmetrized_relators(p);
    let mut max_piece_length = 0;
    let mut min_pieces: Option<usize> = None;
    for (zi, z) in words.iter().enumerate() {
        let len = z.len();
        // longest piece starting at each position of z
        let reach: Vec<usize> = (0..len)
            .map(|i| {
                let rot = z.rotate_left(i);
                words
                    .iter()
                    .filter(|w| **w != rot)
                    .map(|w| common_prefix(&rot, w))
                    .max()
                    .unwrap_or(0)
                    .min(len - i)
            })
            .collect();
        if zi == 0 || reach.iter().any(|&r| r > max_piece_length) {
            max_piece_length = max_piece_length.max(reach.iter().copied().max().unwrap_or(0));
        }
        // fewest consecutive pieces covering z
        let mut best = vec![usize::MAX; len + 1];
        best[0] = 0;
        for i in 0..len {
            if best[i] == usize::MAX {
                continue;
            }
            for j in i + 1..=i + reach[i] {
                best[j] = best[j].min(best[i] + 1);
            }
        }
        if best[len] != usize::MAX {
            min_pieces = Some(min_pieces.map_or(best[len], |m| m.min(best[len])));
        }
    }
    PieceReport {
        max_piece_length,
        min_pieces,
    }
}

/// Strongest `T(q)` with `q > 4` implied by the star graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TClass {
    /// `T(q)` for every `q`: the star graph is a forest.
    All,
    /// `T(q)` with `q` the girth, at least 5.
    UpTo(usize),
    /// Girth at most 4.
    BelowT5 { girth: usize },
}

impl fmt::Display for TClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TClass::All => write!(f, "T(q) for all q"),
            TClass::UpTo(q) => write!(f, "T({q})"),
            TClass::BelowT5 { girth } => write!(f, "below T(5) (girth {girth})"),
        }
    }
}

/// Needs every cyclically reduced relator to have length at least 3.
pub fn classify_t(g: &StarGraph, p: &Presentation) -> Result<TClass> {
    for (index, r) in p.relators.iter().enumerate() {
        let length = r.cyclically_reduce().0.len();
        if length < 3 {
            return Err(Error::ShortRelator { index, length });
        }
    }
    Ok(match g.girth() {
        None => TClass::All,
        Some(q) if q >= 5 => TClass::UpTo(q),
        Some(girth) => TClass::BelowT5 { girth },
    })
}

/// Verdict of the residue conditions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueClassification {
    pub a: usize,
    pub b: usize,
    pub c3t6: bool,
    pub c3t7: bool,
    /// Congruences that hold and rule out T(6).
    pub t6_obstructions: Vec<String>,
    /// Congruences that hold and rule out T(7).
    pub t7_obstructions: Vec<String>,
}

fn congruence_checks(n: i64, a: i64, b: i64, tmax: i64, pairs: &[(&str, i64, i64)]) -> Vec<String> {
    let zero = |x: i64| x.rem_euclid(n) == 0;
    let mut out = Vec::new();
    for t in 1..=tmax {
        if zero(t * a) {
            out.push(format!("{t}A = 0"));
        }
        if zero(t * b) {
            out.push(format!("{t}B = 0"));
        }
    }
    for &(name, x, y) in pairs {
        for (sign, s) in [("+", 1), ("-", -1)] {
            let _ = (a, b);
            if zero(x - s * y) {
                out.push(format!("{name} = {sign}"));
            }
        }
    }
    out
}

/// The residue conditions for C(3)-T(6) and C(3)-T(7) with `A = k`, `B = k - m`.
pub fn residue_classify(n: usize, m: usize, k: usize) -> ResidueClassification {
    let (a, b) = residues(n, m, k);
    let (ni, ai, bi) = (n as i64, a as i64, b as i64);
    let t6 = congruence_checks(
        ni,
        ai,
        bi,
        5,
        &[("A vs B", ai, bi), ("A vs 2B", ai, 2 * bi), ("B vs 2A", bi, 2 * ai)],
    );
    let t7 = congruence_checks(
        ni,
        ai,
        bi,
        6,
        &[
            ("A vs 2B", ai, 2 * bi),
            ("A vs 3B", ai, 3 * bi),
            ("B vs 2A", bi, 2 * ai),
            ("B vs 3A", bi, 3 * ai),
            ("2A vs 2B", 2 * ai, 2 * bi),
        ],
    );
    ResidueClassification {
        a,
        b,
        c3t6: t6.is_empty(),
        c3t7: t7.is_empty(),
        t6_obstructions: t6.into_iter().map(pretty_congruence).collect(),
        t7_obstructions: t7.into_iter().map(pretty_congruence).collect(),
    }
}

/// `"A vs 2B = -"` becomes `"A = -2B"`.
fn pretty_congruence(s: String) -> String {
    match s.split_once(" vs ") {
        Some((lhs, rest)) => {
            let (rhs, sign) = rest.split_once(" = ").expect("formatted above");
            let sign = if sign == "+" { "" } else { "-" };
            format!("{lhs} = {sign}{rhs} mod n")
        }
        None => format!("{s} mod n"),
    }
}

/// Verdict read off the actual presentation: relator lengths and girth.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Oracle {
    pub all_length_three: bool,
    /// Exact girth, `None` for a forest.
    pub girth: Option<usize>,
    pub c3t6: bool,
    pub c3t7: bool,
}

pub fn oracle_classify(n: usize, m: usize, k: usize) -> Oracle {
    let pres = family_hnk(HnkParams { n, m, k })
        .presentation()
        .expect("defining word is nonempty");
    let all_length_three = pres
        .relators
        .iter()
        .all(|r| r.cyclically_reduce().0.len() == 3);
    let girth = star_graph_cyclic(&pres).girth();
    let at_least = |q| girth.is_none_or(|g| g >= q);
    Oracle {
        all_length_three,
        girth,
        c3t6: all_length_three && at_least(6),
        c3t7: all_length_three && at_least(7),
    }
}

/// Parameters at which `H_n(m, k)` is a known group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExcludedCase {
    Trivial,
    /// Free product of copies of `Z_{2^{n/d} - 1}`.
    CyclicFreeProduct { copies: usize },
    SieradskiFreeProduct { copies: usize },
    FibonacciFreeProduct { copies: usize },
    H31FreeProduct { copies: usize },
}

impl ExcludedCase {
    pub fn tag(&self) -> String {
        match *self {
            ExcludedCase::Trivial => "trivial".into(),
            ExcludedCase::CyclicFreeProduct { copies } => format!("{copies} x Z_(2^n-1)"),
            ExcludedCase::SieradskiFreeProduct { copies } => format!("{copies} x S(2,n)"),
            ExcludedCase::FibonacciFreeProduct { copies } => format!("{copies} x F(2,n)"),
            ExcludedCase::H31FreeProduct { copies } => format!("{copies} x H_n(3,1)"),
        }
    }
}

/// First matching case in the order trivial, `A = B`, `A = -B`, `A = 2B`,
/// `B = 2A`, `A = -2B`, `B = -2A` (mod `n`).
pub fn identify_excluded_case(n: usize, m: usize, k: usize) -> Option<ExcludedCase> {
    let (a, b) = residues(n, m, k);
    let ni = n as i64;
    let (ai, bi) = (a as i64, b as i64);
    let eq = |x: i64, y: i64| (x - y).rem_euclid(ni) == 0;
    let g = |x: i64| (x.rem_euclid(ni) as usize).gcd(&n);
    let (mi, ki) = (m as i64, k as i64);
    if a == 0 || b == 0 {
        Some(ExcludedCase::Trivial)
    } else if eq(ai, bi) {
        Some(ExcludedCase::CyclicFreeProduct { copies: g(ki) })
    } else if eq(ai, -bi) {
        Some(ExcludedCase::SieradskiFreeProduct { copies: g(ki) })
    } else if eq(ai, 2 * bi) {
        Some(ExcludedCase::FibonacciFreeProduct { copies: g(mi) })
    } else if eq(bi, 2 * ai) {
        Some(ExcludedCase::FibonacciFreeProduct { copies: g(ki) })
    } else if eq(ai, -2 * bi) {
        Some(ExcludedCase::H31FreeProduct { copies: g(mi) })
    } else if eq(bi, -2 * ai) {
        Some(ExcludedCase::H31FreeProduct { copies: g(ki - mi) })
    } else {
        None
    }
}

/// Incidence graph of a finite projective plane: connected, bipartite,
/// diameter 3, girth 6 and every degree at least 3.
pub fn is_special_c3t6(g: &StarGraph) -> bool {
    g.vertex_count() > 0
        && g.degrees().iter().all(|&d| d >= 3)
        && g.girth() == Some(6)
        && g.is_bipartite()
        && g.diameter() == Some(3)
}

fn is_odd_prime(p: usize) -> bool {
    p >= 3 && !p.is_multiple_of(2) && (3..).step_by(2).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// The closed-form C(3)-T(7) test for `H_p(1, k)`, `p` an odd prime and
/// `3 <= k <= (p-1)/2`.
pub fn prime_closed_form(p: usize, k: usize) -> Result<bool> {
    if !is_odd_prime(p) || k < 3 || 2 * k > p - 1 {
        return Err(Error::InvalidParameters(format!(
            "need an odd prime p and 3 <= k <= (p-1)/2; got p={p}, k={k}"
        )));
    }
    Ok(match p % 3 {
        2 => k != (p + 1) / 3,
        1 => k != p.div_ceil(3),
        _ => unreachable!("p = 3 has no admissible k"),
    })
}

pub const T6_ANNOTATION: &str = "C(3)-T(6): solvable word and conjugacy problems, automatic, \
SQ-universal, torsion-free, CAT(0) (consequences, not computed)";
pub const T7_ANNOTATION: &str = "C(3)-T(7): non-elementary hyperbolic, Hopfian, CAT(-1), \
HNN extension has solvable conjugacy problem (consequences, not computed)";

/// Everything known about `H_n(m, k)` from residues and from the star graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub residues: ResidueClassification,
    pub oracle: Oracle,
    pub special: bool,
    pub excluded_case: Option<ExcludedCase>,
    /// `Some` when `n` is an odd prime, `m = 1` and `3 <= k <= (n-1)/2`.
    pub closed_form: Option<bool>,
    pub annotations: Vec<String>,
}

impl Classification {
    pub fn discrepancies(&self) -> Vec<&'static str> {
        let mut flags = Vec::new();
        if self.residues.c3t6 != self.oracle.c3t6 {
            flags.push("residue_t6_vs_oracle");
        }
        if self.residues.c3t7 != self.oracle.c3t7 {
            flags.push("residue_t7_vs_oracle");
        }
        if let Some(c) = self.closed_form {
            if c != self.residues.c3t7 {
                flags.push("closed_form_vs_residue_t7");
            }
            if c != self.oracle.c3t7 {
                flags.push("closed_form_vs_oracle");
            }
        }
        flags
    }

    pub fn summary(&self) -> String {
        let head = match (self.oracle.c3t7, self.oracle.c3t6) {
            (true, _) => "C(3)-T(7)".to_string(),
            (false, true) => "C(3)-T(6), not T(7)".to_string(),
            _ => "not C(3)-T(6)".to_string(),
        };
        let girth = match self.oracle.girth {
            None => "girth=inf".to_string(),
            Some(g) if g >= 7 => "girth>=7".to_string(),
            Some(g) => format!("girth={g}"),
        };
        let agree = if self.residues.c3t6 == self.oracle.c3t6 && self.residues.c3t7 == self.oracle.c3t7 {
            "oracle agrees"
        } else {
            "ORACLE DISAGREES"
        };
        format!("{head}; {girth}; {agree}")
    }
}

pub fn classify(n: usize, m: usize, k: usize) -> Classification {
    let residues = residue_classify(n, m, k);
    let oracle = oracle_classify(n, m, k);
    let special = oracle.girth == Some(6) && oracle.all_length_three && {
        let pres = family_hnk(HnkParams { n, m, k }).presentation().expect("nonempty");
        is_special_c3t6(&star_graph_cyclic(&pres))
    };
    let closed_form = (m == 1).then(|| prime_closed_form(n, k).ok()).flatten();
    let mut annotations = Vec::new();
    if oracle.c3t6 {
        annotations.push(T6_ANNOTATION.to_string());
    }
    if oracle.c3t7 {
        annotations.push(T7_ANNOTATION.to_string());
    }
    Classification {
        n,
        m,
        k,
        residues,
        oracle,
        special,
        excluded_case: identify_excluded_case(n, m, k),
        closed_form,
        annotations,
    }
}

/// Every `2 <= n <= nmax`, `1 <= m, k <= n`, in lexicographic order.
pub fn survey(nmax: usize) -> Vec<Classification> {
    let triples: Vec<(usize, usize, usize)> = (2..=nmax)
        .flat_map(|n| (1..=n).flat_map(move |m| (1..=n).map(move |k| (n, m, k))))
        .collect();
    triples
        .par_iter()
        .map(|&(n, m, k)| classify(n, m, k))
        .collect()
}

pub const SURVEY_HEADER: &str = "n,m,k,A,B,residue_c3t6,oracle_c3t6,residue_c3t7,oracle_c3t7,girth,special,excluded_case,closed_form,discrepancy_flags";

pub fn survey_csv_row(c: &Classification) -> String {
    let girth = c.oracle.girth.map_or("inf".to_string(), |g| g.to_string());
    let excluded = c.excluded_case.map(|e| e.tag()).unwrap_or_default();
    let closed_form = c.closed_form.map(|b| b.to_string()).unwrap_or_default();
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
        c.n,
        c.m,
        c.k,
        c.residues.a,
        c.residues.b,
        c.residues.c3t6,
        c.oracle.c3t6,
        c.residues.c3t7,
        c.oracle.c3t7,
        girth,
        c.special,
        excluded,
        closed_form,
        c.discrepancies().join(";")
    )
}

pub fn write_survey_csv<W: Write>(rows: &[Classification], mut out: W) -> io::Result<()> {
    writeln!(out, "{SURVEY_HEADER}")?;
    for c in rows {
        writeln!(out, "{}", survey_csv_row(c))?;
    }
    Ok(())
}

/// Named 5- and 8-cycles of the `H(n, 3)` star graph, as `(offset, inverse)`
/// relative to `x_i`.
pub const FORM_I: &[(i64, bool)] = &[(0, false), (3, true), (2, true), (1, true), (-2, false)];
pub const FORM_II: &[(i64, bool)] = &[
    (0, false),
    (2, false),
    (4, false),
    (6, false),
    (8, false),
    (10, false),
    (12, false),
    (14, false),
];
pub const FORM_III: &[(i64, bool)] = &[
    (0, false),
    (3, true),
    (4, true),
    (1, false),
    (3, false),
    (6, true),
    (5, true),
    (2, false),
];
pub const FORM_IV: &[(i64, bool)] = &[
    (0, true),
    (-3, false),
    (-1, false),
    (1, false),
    (4, true),
    (3, true),
    (2, true),
    (1, true),
];

/// Does the cycle read as `pattern` for some base index, rotation and
/// direction?
pub fn matches_form(cycle: &Cycle, pattern: &[(i64, bool)], n: usize) -> bool {
    let len = cycle.len();
    if len != pattern.len() {
        return false;
    }
    let ni = n as i64;
    for reflected in [false, true] {
        let seq: Vec<usize> = if reflected {
            cycle.vertices.iter().rev().copied().collect()
        } else {
            cycle.vertices.clone()
        };
        for r in 0..len {
            let base = (seq[r] / 2) as i64 - pattern[0].0;
            let ok = (0..len).all(|j| {
                let v = seq[(r + j) % len];
                let (off, inv) = pattern[j];
                v % 2 == usize::from(inv) && (v / 2) as i64 == (base + off).rem_euclid(ni)
            });
            if ok {
                return true;
            }
        }
    }
    false
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Taxonomy {
    pub n: usize,
    pub girth: Option<usize>,
    /// Cycle counts by length, up to 8.
    pub counts: BTreeMap<usize, usize>,
    /// `"length:kinds" -> count`, kinds canonical up to rotation and reflection.
    pub kinds: BTreeMap<String, usize>,
    pub five_cycles_all_form_i: bool,
    pub has_6_cycle: bool,
    pub has_7_cycle: bool,
    pub has_all_y_8_cycle: bool,
    pub form_ii_8_cycles: usize,
    pub form_iii_8_cycles: usize,
    pub form_iv_8_cycles: usize,
    pub other_8_cycles: usize,
    /// The claim for this `n`: no 6- or 7-cycles and only form (i) 5-cycles
    /// for `n >= 11` outside `{12, 14}`; a 6-cycle for 12; a 7-cycle for 14;
    /// an all-Y 8-cycle for 16.
    pub claim_holds: bool,
}

pub fn h_n3_taxonomy(n: usize) -> Result<Taxonomy> {
    if n < 4 {
        return Err(Error::InvalidParameters(format!("need n >= 4, got {n}")));
    }
    let g = star_hnk(n, 3, 1);
    let spectrum = girth_and_spectrum(&g, 8);
    let count = |l| spectrum.counts.get(&l).copied().unwrap_or(0);
    let five: Vec<&Cycle> = spectrum.cycles.iter().filter(|c| c.len() == 5).collect();
    let eight: Vec<&Cycle> = spectrum.cycles.iter().filter(|c| c.len() == 8).collect();
    let five_cycles_all_form_i = five.iter().all(|c| matches_form(c, FORM_I, n));
    let form_count = |f: &[(i64, bool)]| eight.iter().filter(|c| matches_form(c, f, n)).count();
    let (f2, f3, f4) = (form_count(FORM_II), form_count(FORM_III), form_count(FORM_IV));
    let other = eight
        .iter()
        .filter(|c| ![FORM_II, FORM_III, FORM_IV].iter().any(|f| matches_form(c, f, n)))
        .count();
    let has_all_y_8_cycle = eight.iter().any(|c| c.kinds == "YYYYYYYY");
    let only_five_below_eight = (2..8).all(|l| l == 5 || count(l) == 0);
    let claim_holds = match n {
        12 => count(6) > 0,
        14 => count(7) > 0,
        16 => has_all_y_8_cycle && f2 > 0 && only_five_below_eight && five_cycles_all_form_i,
        n if n >= 11 => count(5) > 0 && only_five_below_eight && five_cycles_all_form_i,
        _ => false,
    };
    let kinds = spectrum
        .kind_counts()
        .into_iter()
        .map(|((l, s), c)| (format!("{l}:{s}"), c))
        .collect();
    Ok(Taxonomy {
        n,
        girth: spectrum.girth,
        counts: spectrum.counts.clone(),
        kinds,
        five_cycles_all_form_i,
        has_6_cycle: count(6) > 0,
        has_7_cycle: count(7) > 0,
        has_all_y_8_cycle,
        form_ii_8_cycles: f2,
        form_iii_8_cycles: f3,
        form_iv_8_cycles: f4,
        other_8_cycles: other,
        claim_holds,
    })
}
