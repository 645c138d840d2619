//! Directed two-coloured labelled graphs with ordered edges.
//!
//! A graph is a monomial in odd edge variables: reordering edges costs the
//! sign of the permutation and a repeated directed edge makes the monomial
//! vanish. Every stored graph is in canonical edge order.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::{q, Q};

/// Output colour of a graph (or colour of an operad input).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Color {
    C,
    O,
}

impl Color {
    pub fn as_str(self) -> &'static str {
        match self {
            Color::C => "c",
            Color::O => "o",
        }
    }
}

/// A vertex reference. Labels are 1-based. The derived order puts every
/// black endpoint before every white one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Endpoint {
    Black(u8),
    White(u8),
}

impl Endpoint {
    pub fn label(self) -> usize {
        match self {
            Endpoint::Black(l) | Endpoint::White(l) => l as usize,
        }
    }

    pub fn is_black(self) -> bool {
        matches!(self, Endpoint::Black(_))
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endpoint::Black(l) => write!(f, "b{l}"),
            Endpoint::White(l) => write!(f, "w{l}"),
        }
    }
}

pub type Edge = (Endpoint, Endpoint);

/// Numbers of black and white vertices plus output colour.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Signature {
    pub n_black: usize,
    pub n_white: usize,
    pub out: Color,
}

impl Signature {
    pub fn new(n_black: usize, n_white: usize, out: Color) -> Self {
        Signature { n_black, n_white, out }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DirGraph {
    pub n_black: usize,
    pub n_white: usize,
    pub out: Color,
    pub edges: Vec<Edge>,
}

/// A graph in canonical edge order together with the sign picked up while
/// sorting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedGraph {
    pub graph: DirGraph,
    pub sign: i8,
}

impl DirGraph {
    pub fn new(n_black: usize, n_white: usize, out: Color, edges: Vec<Edge>) -> Self {
        DirGraph { n_black, n_white, out, edges }
    }

    /// Black-only graph from 1-based label pairs.
    pub fn black(n: usize, edges: &[(usize, usize)]) -> Self {
        let edges = edges
            .iter()
            .map(|&(a, b)| (Endpoint::Black(a as u8), Endpoint::Black(b as u8)))
            .collect();
        DirGraph::new(n, 0, Color::C, edges)
    }

    pub fn signature(&self) -> Signature {
        Signature::new(self.n_black, self.n_white, self.out)
    }

    pub fn n_vertices(&self) -> usize {
        self.n_black + self.n_white
    }

    pub fn validate(&self) -> Result<()> {
        if self.out == Color::C && self.n_white != 0 {
            return Err(Error::Structure(
                "c-coloured graph with white vertices".into(),
            ));
        }
        if self.n_black > 64 || self.n_white > 64 {
            return Err(Error::Structure("too many vertices".into()));
        }
        for &(s, t) in &self.edges {
            if !s.is_black() {
                return Err(Error::Structure(format!("edge leaves white vertex {s}")));
            }
            for v in [s, t] {
                let bound = if v.is_black() { self.n_black } else { self.n_white };
                if v.label() == 0 || v.label() > bound {
                    return Err(Error::Structure(format!("vertex {v} out of range")));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for DirGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "graph n={} k={} out={} edges=[",
            self.n_black,
            self.n_white,
            self.out.as_str()
        )?;
        for (i, (s, t)) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{s}>{t}")?;
        }
        write!(f, "]")
    }
}

/// Sort `edges` in place. Returns the sign of the sorting permutation, or
/// `None` when a directed edge repeats.
pub(crate) fn sort_edges(edges: &mut [Edge]) -> Option<i8> {
    let mut sign = 1i8;
    // insertion sort: edge lists are short and we need the parity anyway
    for i in 1..edges.len() {
        let mut j = i;
        while j > 0 && edges[j - 1] > edges[j] {
            edges.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if edges.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

/// Canonical form of `g`, or `Ok(None)` when `g` is zero.
pub fn canonicalize(g: &DirGraph) -> Result<Option<SignedGraph>> {
    g.validate()?;
    let mut graph = g.clone();
    Ok(sort_edges(&mut graph.edges).map(|sign| SignedGraph { graph, sign }))
}

pub fn graph_degree(g: &DirGraph) -> i64 {
    -(g.edges.len() as i64)
}

/// Relabel black vertex `j` to `sb[j-1]` and white vertex `j` to `sw[j-1]`.
/// Empty slices stand for identities.
pub fn relabel(
    g: &DirGraph,
    sb: &[usize],
    sw: &[usize],
    white_sign: bool,
) -> Result<Option<SignedGraph>> {
    if (!sb.is_empty() && sb.len() != g.n_black) || (!sw.is_empty() && sw.len() != g.n_white) {
        return Err(Error::Structure("permutation size mismatch".into()));
    }
    let mut out = relabel_raw(g, sb, sw);
    Ok(sort_edges(&mut out.edges).map(|mut sign| {
        if white_sign && !sw.is_empty() && perm_sign(sw) < 0 {
            sign = -sign;
        }
        SignedGraph { graph: out, sign }
    }))
}

/// Relabel without sorting. The caller re-canonicalizes.
pub(crate) fn relabel_raw(g: &DirGraph, sb: &[usize], sw: &[usize]) -> DirGraph {
    let map = |v: Endpoint| match v {
        Endpoint::Black(l) if !sb.is_empty() => Endpoint::Black(sb[l as usize - 1] as u8),
        Endpoint::White(l) if !sw.is_empty() => Endpoint::White(sw[l as usize - 1] as u8),
        v => v,
    };
    DirGraph {
        n_black: g.n_black,
        n_white: g.n_white,
        out: g.out,
        edges: g.edges.iter().map(|&(s, t)| (map(s), map(t))).collect(),
    }
}

/// Sign of a permutation given by 1-based images.
pub fn perm_sign(p: &[usize]) -> i8 {
    let mut seen = vec![false; p.len()];
    let mut sign = 1i8;
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            j = p[j] - 1;
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

fn valencies(g: &DirGraph) -> (Vec<usize>, Vec<usize>) {
    let mut b = vec![0; g.n_black];
    let mut w = vec![0; g.n_white];
    for &(s, t) in &g.edges {
        for v in [s, t] {
            match v {
                Endpoint::Black(l) => b[l as usize - 1] += 1,
                Endpoint::White(l) => w[l as usize - 1] += 1,
            }
        }
    }
    (b, w)
}

pub fn black_valencies(g: &DirGraph) -> Vec<usize> {
    valencies(g).0
}

pub fn white_valencies(g: &DirGraph) -> Vec<usize> {
    valencies(g).1
}

pub fn has_loop(g: &DirGraph) -> bool {
    g.edges.iter().any(|(s, t)| s == t)
}

/// Is black vertex `label` a pike: valency one, edge pointing at it.
pub fn is_pike(g: &DirGraph, label: usize) -> bool {
    let v = Endpoint::Black(label as u8);
    let incident: Vec<&Edge> = g.edges.iter().filter(|(s, t)| *s == v || *t == v).collect();
    incident.len() == 1 && incident[0].1 == v && incident[0].0 != v
}

pub fn count_pikes(g: &DirGraph) -> usize {
    (1..=g.n_black).filter(|&l| is_pike(g, l)).count()
}

/// All possible edges for the given vertex counts, in canonical order.
pub fn possible_edges(n: usize, k: usize, loopless: bool) -> Vec<Edge> {
    let mut out = Vec::new();
    for s in 1..=n {
        for t in 1..=n {
            if !(loopless && s == t) {
                out.push((Endpoint::Black(s as u8), Endpoint::Black(t as u8)));
            }
        }
        for t in 1..=k {
            out.push((Endpoint::Black(s as u8), Endpoint::White(t as u8)));
        }
    }
    out
}

/// Every canonical graph with `e` edges in the given signature, in
/// lexicographic order of edge lists.
pub fn enumerate_basis(n: usize, k: usize, e: usize, out: Color, loopless: bool) -> Vec<DirGraph> {
    if out == Color::C && k > 0 {
        return Vec::new();
    }
    possible_edges(n, k, loopless)
        .into_iter()
        .combinations(e)
        .map(|edges| DirGraph::new(n, k, out, edges))
        .collect()
}

/// Finite rational combination of canonical graphs sharing one signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphSum {
    pub sig: Signature,
    pub terms: BTreeMap<DirGraph, Q>,
}

impl GraphSum {
    pub fn zero(sig: Signature) -> Self {
        GraphSum { sig, terms: BTreeMap::new() }
    }

    /// The sum consisting of `g` alone (after canonicalization).
    pub fn from_graph(g: &DirGraph) -> Result<Self> {
        let mut s = GraphSum::zero(g.signature());
        s.add_graph(g, &Q::one())?;
        Ok(s)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&DirGraph, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, g: &DirGraph) -> Q {
        self.terms.get(g).cloned().unwrap_or_else(Q::zero)
    }

    /// Add `c * g` where `g` may be in any edge order.
    pub fn add_graph(&mut self, g: &DirGraph, c: &Q) -> Result<()> {
        if g.signature() != self.sig {
            return Err(Error::Signature);
        }
        if let Some(sg) = canonicalize(g)? {
            self.add_canonical(sg.graph, &(c * q(sg.sign as i64)));
        }
        Ok(())
    }

    /// Add `c * g` for an already canonical `g`.
    pub(crate) fn add_canonical(&mut self, g: DirGraph, c: &Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(g);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Add `c * g` for raw edges: sorts and drops vanishing monomials.
    pub(crate) fn add_raw(&mut self, mut g: DirGraph, c: &Q) {
        if let Some(s) = sort_edges(&mut g.edges) {
            if s > 0 {
                self.add_canonical(g, c);
            } else {
                self.add_canonical(g, &-c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &GraphSum, c: &Q) -> Result<()> {
        if other.sig != self.sig {
            return Err(Error::Signature);
        }
        if c.is_zero() {
            return Ok(());
        }
        for (g, v) in &other.terms {
            self.add_canonical(g.clone(), &(v * c));
        }
        Ok(())
    }

    pub fn add(&self, other: &GraphSum) -> Result<GraphSum> {
        let mut out = self.clone();
        out.add_scaled(other, &Q::one())?;
        Ok(out)
    }

    pub fn sub(&self, other: &GraphSum) -> Result<GraphSum> {
        let mut out = self.clone();
        out.add_scaled(other, &-Q::one())?;
        Ok(out)
    }

    pub fn scale(&self, c: &Q) -> GraphSum {
        if c.is_zero() {
            return GraphSum::zero(self.sig);
        }
        GraphSum {
            sig: self.sig,
            terms: self.terms.iter().map(|(g, v)| (g.clone(), v * c)).collect(),
        }
    }

    pub fn neg(&self) -> GraphSum {
        self.scale(&-Q::one())
    }

    pub fn relabel(&self, sb: &[usize], sw: &[usize], white_sign: bool) -> Result<GraphSum> {
        let mut out = GraphSum::zero(self.sig);
        for (g, c) in &self.terms {
            if let Some(sg) = relabel(g, sb, sw, white_sign)? {
                out.add_canonical(sg.graph, &(c * q(sg.sign as i64)));
            }
        }
        Ok(out)
    }

    /// Restrict to terms satisfying `keep`.
    pub fn filter(&self, keep: impl Fn(&DirGraph) -> bool) -> GraphSum {
        GraphSum {
            sig: self.sig,
            terms: self
                .terms
                .iter()
                .filter(|(g, _)| keep(g))
                .map(|(g, c)| (g.clone(), c.clone()))
                .collect(),
        }
    }

    /// Edge counts occurring in the sum.
    pub fn edge_counts(&self) -> Vec<usize> {
        self.terms.keys().map(|g| g.edges.len()).sorted().dedup().collect()
    }

    /// Common edge count if the sum is homogeneous and nonzero.
    pub fn edge_count(&self) -> Option<usize> {
        match self.edge_counts().as_slice() {
            [e] => Some(*e),
            _ => None,
        }
    }

    pub fn max_abs_coeff(&self) -> Q {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_else(Q::zero)
    }
}

impl fmt::Display for GraphSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return writeln!(f, "0");
        }
        for (g, c) in &self.terms {
            writeln!(f, "{} * {}", crate::rat::fmt_q(c), g)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(l: u8) -> Endpoint {
        Endpoint::Black(l)
    }

    #[test]
    fn doubled_edge_vanishes() {
        let g = DirGraph::black(3, &[(3, 2), (3, 2)]);
        assert!(canonicalize(&g).unwrap().is_none());
    }

    #[test]
    fn swapped_pair_is_odd() {
        let g = DirGraph::black(2, &[(2, 1), (1, 2)]);
        let sg = canonicalize(&g).unwrap().unwrap();
        assert_eq!(sg.sign, -1);
        assert_eq!(sg.graph.edges, vec![(b(1), b(2)), (b(2), b(1))]);
    }

    #[test]
    fn degree_is_minus_edges() {
        let g = DirGraph::black(5, &[(3, 1), (3, 2), (2, 3), (2, 2)]);
        assert_eq!(graph_degree(&g), -4);
        assert_eq!(graph_degree(&DirGraph::black(2, &[])), 0);
    }

    #[test]
    fn white_source_rejected() {
        let g = DirGraph::new(1, 1, Color::O, vec![(Endpoint::White(1), b(1))]);
        assert!(canonicalize(&g).is_err());
    }

    #[test]
    fn basis_counts() {
        assert_eq!(enumerate_basis(1, 0, 1, Color::C, false).len(), 1);
        assert_eq!(enumerate_basis(2, 0, 1, Color::C, false).len(), 4);
        assert!(enumerate_basis(1, 0, 1, Color::C, true).is_empty());
    }

    #[test]
    fn pikes_and_loops() {
        let broom = DirGraph::new(
            1,
            2,
            Color::O,
            vec![(b(1), Endpoint::White(1)), (b(1), Endpoint::White(2))],
        );
        assert_eq!(count_pikes(&broom), 0);
        assert_eq!(white_valencies(&broom), vec![1, 1]);
        assert!(has_loop(&DirGraph::black(1, &[(1, 1)])));
        assert_eq!(count_pikes(&DirGraph::black(2, &[(1, 2)])), 1);
        assert_eq!(count_pikes(&DirGraph::black(2, &[])), 0);
    }

    #[test]
    fn perm_signs() {
        assert_eq!(perm_sign(&[1, 2, 3]), 1);
        assert_eq!(perm_sign(&[2, 1, 3]), -1);
        assert_eq!(perm_sign(&[2, 3, 1]), 1);
    }
}
