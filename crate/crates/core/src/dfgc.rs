//! The full directed graph complex: S_n-invariant sums of black graphs,
//! the pre-Lie product along shuffles, the bracket and `∂ = [Γ_edge, -]`.
//!
//! Degree of a graph with `n` vertices and `e` edges is `2n - 2 - e`.

use std::collections::BTreeMap;

use num_traits::One;

use crate::error::{Error, Result};
use crate::graphs::{enumerate_basis, Color, DirGraph, GraphSum, Signature};
use crate::linalg::{RatMatrix, SparseVec};
use crate::operads::{insert_c, shuffles};
use crate::orbits::{projected_rep_coords, Group, InvariantBasis, WhiteAction};
use crate::rat::{frac, q, sign_q, Q};

#[derive(Clone, Debug)]
pub struct DfgcElement {
    pub comps: BTreeMap<usize, GraphSum>,
    pub cutoff: usize,
}

// the cutoff is truncation bookkeeping, not part of the value
impl PartialEq for DfgcElement {
    fn eq(&self, other: &Self) -> bool {
        self.comps == other.comps
    }
}

impl Eq for DfgcElement {}

pub fn dfgc_degree(n: usize, e: usize) -> i64 {
    2 * n as i64 - 2 - e as i64
}

impl DfgcElement {
    pub fn zero(cutoff: usize) -> Self {
        DfgcElement { comps: BTreeMap::new(), cutoff }
    }

    pub fn from_sum(s: GraphSum, cutoff: usize) -> Self {
        let mut out = DfgcElement::zero(cutoff);
        out.add_sum(&s, &Q::one());
        out
    }

    pub fn component(&self, n: usize) -> GraphSum {
        self.comps
            .get(&n)
            .cloned()
            .unwrap_or_else(|| GraphSum::zero(Signature::new(n, 0, Color::C)))
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    fn add_sum(&mut self, s: &GraphSum, c: &Q) {
        let n = s.sig.n_black;
        if n > self.cutoff || s.is_zero() {
            return;
        }
        let e = self.comps.entry(n).or_insert_with(|| GraphSum::zero(s.sig));
        e.add_scaled(s, c).expect("c-coloured black sums");
        if e.is_zero() {
            self.comps.remove(&n);
        }
    }

    pub fn add_scaled(&mut self, other: &DfgcElement, c: &Q) {
        for s in other.comps.values() {
            self.add_sum(s, c);
        }
    }

    pub fn add(&self, other: &DfgcElement) -> DfgcElement {
        let mut out = self.clone();
        out.cutoff = self.cutoff.min(other.cutoff);
        out.comps.retain(|&n, _| n <= out.cutoff);
        out.add_scaled(other, &Q::one());
        out
    }

    pub fn scale(&self, c: &Q) -> DfgcElement {
        let mut out = DfgcElement::zero(self.cutoff);
        out.add_scaled(self, c);
        out
    }

    /// Split into homogeneous pieces keyed by degree.
    pub fn by_degree(&self) -> BTreeMap<i64, DfgcElement> {
        let mut out: BTreeMap<i64, DfgcElement> = BTreeMap::new();
        for (&n, s) in &self.comps {
            for (g, c) in s.iter() {
                let d = dfgc_degree(n, g.edges.len());
                let piece = out.entry(d).or_insert_with(|| DfgcElement::zero(self.cutoff));
                let mut one = GraphSum::zero(s.sig);
                one.add_canonical(g.clone(), c);
                piece.add_sum(&one, &Q::one());
            }
        }
        out
    }

    /// Degree of a nonzero homogeneous element.
    pub fn degree(&self) -> Option<i64> {
        let d = self.by_degree();
        if d.len() == 1 {
            d.keys().next().copied()
        } else {
            None
        }
    }
}

impl std::fmt::Display for DfgcElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.comps.is_empty() {
            return writeln!(f, "0");
        }
        for s in self.comps.values() {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

fn black_sum(n: usize, graphs: &[(i64, Vec<(usize, usize)>)]) -> GraphSum {
    let mut s = GraphSum::zero(Signature::new(n, 0, Color::C));
    for (c, es) in graphs {
        s.add_graph(&DirGraph::black(n, es), &q(*c)).expect("valid graph");
    }
    s
}

/// `(1→2) + (2→1)`.
pub fn gamma_edge() -> GraphSum {
    black_sum(2, &[(1, vec![(1, 2)]), (1, vec![(2, 1)])])
}

/// A single vertex without edges.
pub fn gamma_bullet() -> GraphSum {
    black_sum(1, &[(1, vec![])])
}

/// Two vertices without edges.
pub fn gamma_bullet_bullet() -> GraphSum {
    black_sum(2, &[(1, vec![])])
}

/// One vertex with one loop.
pub fn gamma_loop() -> GraphSum {
    black_sum(1, &[(1, vec![(1, 1)])])
}

/// The complete graph on four vertices with edges ordered by vertex pairs,
/// summed over all orientations.
pub fn tetrahedron() -> GraphSum {
    let pairs = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];
    let mut s = GraphSum::zero(Signature::new(4, 0, Color::C));
    for mask in 0u32..64 {
        let es: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .map(|(i, &(a, b))| if mask >> i & 1 == 1 { (b, a) } else { (a, b) })
            .collect();
        s.add_graph(&DirGraph::black(4, &es), &Q::one()).expect("valid graph");
    }
    s
}

/// Projector onto S_n-invariants.
pub fn symmetrize(g: &GraphSum) -> GraphSum {
    Group::new(g.sig.n_black, 0, WhiteAction::Fixed).project(g)
}

/// `(f•g)_n = Σ_p Σ_{τ ∈ Sh(p, n-p)} τ(f_{n-p+1} ∘_1 g_p)`.
pub fn pre_lie(f: &DfgcElement, g: &DfgcElement) -> DfgcElement {
    let cutoff = f.cutoff.min(g.cutoff);
    let mut out = DfgcElement::zero(cutoff);
    for (&a, fa) in &f.comps {
        for (&b, gb) in &g.comps {
            let n = a + b - 1;
            if n > cutoff {
                continue;
            }
            let x = insert_c(fa, 1, gb).expect("black insertion");
            for sh in shuffles(b, n - b) {
                out.add_sum(&x.relabel(&sh.perm, &[], false).expect("sizes match"), &Q::one());
            }
        }
    }
    out
}

/// `[f, g] = f•g - (-1)^{|f||g|} g•f`, extended bilinearly over degrees.
pub fn bracket(f: &DfgcElement, g: &DfgcElement) -> DfgcElement {
    let cutoff = f.cutoff.min(g.cutoff);
    let mut out = DfgcElement::zero(cutoff);
    for (df, fp) in f.by_degree() {
        for (dg, gp) in g.by_degree() {
            out.add_scaled(&pre_lie(&fp, &gp), &Q::one());
            out.add_scaled(&pre_lie(&gp, &fp), &-sign_q(df * dg));
        }
    }
    out
}

pub fn differential(f: &DfgcElement) -> DfgcElement {
    let edge = DfgcElement::from_sum(gamma_edge(), f.cutoff + 1);
    let mut g = f.clone();
    g.cutoff = f.cutoff + 1;
    bracket(&edge, &g)
}

/// Returns whether `∂f = 0` together with `∂f`.
pub fn is_cocycle(f: &DfgcElement) -> (bool, DfgcElement) {
    let d = differential(f);
    (d.is_zero(), d)
}

/// Invariant basis at `(n, e)`.
pub fn invariant_basis(n: usize, e: usize, loopless: bool) -> InvariantBasis {
    InvariantBasis::from_graphs(
        Signature::new(n, 0, Color::C),
        enumerate_basis(n, 0, e, Color::C, loopless),
        Group::new(n, 0, WhiteAction::Fixed),
    )
}

/// `∂` of the normalized orbit vector of `rep`, in orbit coordinates keyed
/// by representative.
///
/// For `f = Sym(G)` one has `Γ_edge•f = Sym(Γ_edge ∘_1 G)` and
/// `f•Γ_edge = ½ Sym(Σ_i G ∘_i Γ_edge)`, so `∂` can be evaluated on a single
/// graph and projected afterwards.
pub fn d_orbit(rep: &DirGraph) -> BTreeMap<DirGraph, Q> {
    let n = rep.n_black;
    let deg = dfgc_degree(n, rep.edges.len());
    let g = GraphSum::from_graph(rep).expect("valid graph");
    let edge = gamma_edge();
    let mut x = insert_c(&edge, 1, &g).expect("black insertion");
    let half = -sign_q(deg) * frac(1, 2);
    for i in 1..=n {
        x.add_scaled(&insert_c(&g, i, &edge).expect("black insertion"), &half)
            .expect("same signature");
    }
    let group = Group::new(n + 1, 0, WhiteAction::Fixed);
    let orbit = Group::new(n, 0, WhiteAction::Fixed).orbit_rep(rep).orbit_size;
    let factor = q(((n + 1) * orbit) as i64);
    projected_rep_coords(&group, &x)
        .into_iter()
        .map(|(k, v)| (k, v * &factor))
        .collect()
}

/// Matrix of `∂ : (n, e) → (n+1, e+1)` on invariant bases. Rows are indexed
/// by the target representatives, listed in the returned vector.
pub fn d_matrix(source: &InvariantBasis) -> (RatMatrix, Vec<DirGraph>) {
    let mut rows: BTreeMap<DirGraph, usize> = BTreeMap::new();
    let mut cols: Vec<BTreeMap<DirGraph, Q>> = Vec::new();
    for rep in &source.reps {
        let col = d_orbit(rep);
        for k in col.keys() {
            let next = rows.len();
            rows.entry(k.clone()).or_insert(next);
        }
        cols.push(col);
    }
    let sparse: Vec<SparseVec> = cols
        .into_iter()
        .map(|c| c.into_iter().map(|(k, v)| (rows[&k], v)).collect())
        .collect();
    let mut order: Vec<(DirGraph, usize)> = rows.into_iter().collect();
    order.sort_by_key(|(_, i)| *i);
    (
        RatMatrix::from_columns(order.len(), &sparse),
        order.into_iter().map(|(g, _)| g).collect(),
    )
}

/// Some invariant `ψ` at `(n-1, e-1)` with `∂ψ = f`, or `None` when `f` is
/// not exact. `f` must be homogeneous at `(n, e)`.
pub fn exactness_witness(f: &GraphSum, loopless: bool) -> Result<Option<DfgcElement>> {
    let n = f.sig.n_black;
    if f.is_zero() {
        return Ok(Some(DfgcElement::zero(n)));
    }
    let e = f
        .edge_count()
        .ok_or_else(|| Error::Precondition("input must have one edge count".into()))?;
    if n < 2 || e == 0 {
        return Ok(None);
    }
    let source = invariant_basis(n - 1, e - 1, loopless);
    let (m, reps) = d_matrix(&source);
    let target = projected_rep_coords(&Group::new(n, 0, WhiteAction::Fixed), f);
    let index: BTreeMap<&DirGraph, usize> = reps.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let mut b = SparseVec::new();
    for (g, c) in &target {
        match index.get(g) {
            Some(&i) => {
                b.insert(i, c.clone());
            }
            None => return Ok(None),
        }
    }
    Ok(m.solve(&b)?.map(|x| {
        let coords: BTreeMap<usize, Q> = x.into_iter().collect();
        DfgcElement::from_sum(source.from_coords(&coords), n)
    }))
}

/// `dim ker(∂ at (n,e)) - rank(∂ into (n,e))` on invariant bases.
pub fn cohomology_dim(n: usize, e: usize, loopless: bool) -> Result<usize> {
    cohomology_dim_with(n, e, loopless, None)
}

pub fn cohomology_dim_with(
    n: usize,
    e: usize,
    loopless: bool,
    max_cells: Option<usize>,
) -> Result<usize> {
    if n > 5 || e > 8 {
        return Err(Error::Resource(format!("bidegree ({n},{e}) beyond n<=5, e<=8")));
    }
    if n == 0 {
        return Ok(0);
    }
    let here = invariant_basis(n, e, loopless);
    let (d_out, rows) = d_matrix(&here);
    guard(rows.len(), here.dim(), max_cells)?;
    let rank_out = d_out.rank();
    let rank_in = if n >= 2 && e >= 1 {
        let below = invariant_basis(n - 1, e - 1, loopless);
        let (d_in, rows_in) = d_matrix(&below);
        guard(rows_in.len(), below.dim(), max_cells)?;
        d_in.rank()
    } else {
        0
    };
    Ok(here.dim() - rank_out - rank_in)
}

pub(crate) fn guard(rows: usize, cols: usize, max_cells: Option<usize>) -> Result<()> {
    match max_cells {
        Some(cap) if rows.saturating_mul(cols) > cap => Err(Error::Resource(format!(
            "matrix {rows}x{cols} exceeds {cap} cells"
        ))),
        _ => Ok(()),
    }
}

/// True if some edge of some term is a loop.
pub fn has_loops(f: &DfgcElement) -> bool {
    f.comps
        .values()
        .any(|s| s.iter().any(|(g, _)| g.edges.iter().any(|(a, b)| a == b)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(s: GraphSum) -> DfgcElement {
        DfgcElement::from_sum(s, 6)
    }

    #[test]
    fn calibration() {
        let e = el(gamma_edge());
        assert!(bracket(&e, &e).is_zero());
        assert_eq!(bracket(&e, &el(gamma_bullet())), e);
        assert!(differential(&el(gamma_loop())).is_zero());
    }

    #[test]
    fn tetrahedron_is_invariant_cocycle() {
        let t = tetrahedron();
        assert_eq!(symmetrize(&t), t);
        assert!(is_cocycle(&el(t)).0);
    }

    #[test]
    fn fast_differential_matches_bracket() {
        for (n, e) in [(1, 0), (1, 1), (2, 1), (2, 2), (2, 3), (3, 3)] {
            let basis = invariant_basis(n, e, false);
            let target = Group::new(n + 1, 0, WhiteAction::Fixed);
            for i in 0..basis.dim() {
                let v = el(basis.vector(i));
                let slow = differential(&v).component(n + 1);
                let fast = d_orbit(&basis.reps[i]);
                assert_eq!(projected_rep_coords(&target, &slow), fast, "({n},{e}) #{i}");
            }
        }
    }

    #[test]
    fn edge_is_exact_loop_is_not() {
        let w = exactness_witness(&gamma_edge(), false).unwrap().unwrap();
        assert_eq!(differential(&w).component(2), gamma_edge());
        assert!(exactness_witness(&gamma_loop(), false).unwrap().is_none());
    }

    #[test]
    fn loop_class() {
        assert_eq!(cohomology_dim(1, 1, false).unwrap(), 1);
    }
}
