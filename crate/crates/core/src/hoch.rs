//! The Hochschild-type complex of black-invariant graphs with `k` white
//! vertices, its differential, the valency-one antisymmetric cocycles and
//! small cohomology.

use std::collections::BTreeMap;

use num_traits::One;

use crate::dfgc::guard;
use crate::error::{Error, Result};
use crate::graphs::{enumerate_basis, white_valencies, Color, DirGraph, GraphSum, Signature};
use crate::linalg::{RatMatrix, SparseVec};
use crate::operads::insert_o;
use crate::orbits::{Group, InvariantBasis, WhiteAction};
use crate::rat::{sign_q, Q};

/// A cochain: a black-invariant sum of graphs with `n` black and `k` white
/// vertices and white output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HochElement {
    pub value: GraphSum,
    pub n: usize,
    pub k: usize,
}

impl HochElement {
    pub fn new(value: GraphSum) -> Result<Self> {
        if value.sig.out != Color::O {
            return Err(Error::Signature);
        }
        let (n, k) = (value.sig.n_black, value.sig.n_white);
        Ok(HochElement { value, n, k })
    }

    pub fn is_invariant(&self) -> bool {
        Group::new(self.n, self.k, WhiteAction::Fixed).project(&self.value) == self.value
    }

    /// Degree in the complex: `2n - 2 + k - e` for a homogeneous element.
    pub fn degree(&self) -> Option<i64> {
        let e = self.value.edge_count()?;
        Some(2 * self.n as i64 - 2 + self.k as i64 - e as i64)
    }
}

/// The product `Γ_∘∘` on two white vertices.
fn gamma_oo() -> GraphSum {
    GraphSum::from_graph(&DirGraph::new(0, 2, Color::O, vec![])).expect("valid")
}

/// `Γ_∘∘ ∘_2 γ + Σ_i (-1)^i γ ∘_i Γ_∘∘ + (-1)^{k+1} Γ_∘∘ ∘_1 γ`.
pub fn pa_hoch(gamma: &GraphSum) -> Result<GraphSum> {
    if gamma.sig.out != Color::O {
        return Err(Error::Signature);
    }
    let k = gamma.sig.n_white;
    let m = gamma_oo();
    let mut out = insert_o(&m, 2, gamma)?;
    for i in 1..=k {
        out.add_scaled(&insert_o(gamma, i, &m)?, &sign_q(i as i64))?;
    }
    out.add_scaled(&insert_o(&m, 1, gamma)?, &sign_q(k as i64 + 1))?;
    Ok(out)
}

/// Every white vertex has valency one and whites transform by the sign
/// representation.
pub fn is_p1p2(gamma: &GraphSum) -> bool {
    if gamma.iter().any(|(g, _)| white_valencies(g).iter().any(|&v| v != 1)) {
        return false;
    }
    let k = gamma.sig.n_white;
    (1..k).all(|i| {
        let mut t: Vec<usize> = (1..=k).collect();
        t.swap(i - 1, i);
        gamma.relabel(&[], &t, false).expect("sizes") == gamma.neg()
    })
}

/// Black-invariant basis at `(n, k)` with `e` edges.
pub fn cochain_basis(n: usize, k: usize, e: usize) -> InvariantBasis {
    InvariantBasis::from_graphs(
        Signature::new(n, k, Color::O),
        enumerate_basis(n, k, e, Color::O, false),
        Group::new(n, k, WhiteAction::Fixed),
    )
}

/// Basis of the valency-one, white-antisymmetric, black-invariant vectors.
pub fn p1p2_basis(n: usize, k: usize, e: usize) -> Vec<GraphSum> {
    let group = Group::new(n, k, WhiteAction::Signed);
    let graphs = enumerate_basis(n, k, e, Color::O, false)
        .into_iter()
        .filter(|g| white_valencies(g).iter().all(|&v| v == 1));
    InvariantBasis::from_graphs(Signature::new(n, k, Color::O), graphs, group)
        .reps
        .iter()
        .map(|r| Group::new(n, k, WhiteAction::Signed).orbit_vector(r).expect("surviving orbit"))
        .collect()
}

pub fn p1p2_dim(n: usize, k: usize, e: usize) -> usize {
    p1p2_basis(n, k, e).len()
}

/// Matrix of `∂` from `source` into `target`, in representative coordinates.
pub fn hoch_matrix(source: &InvariantBasis, target: &InvariantBasis) -> RatMatrix {
    let cols: Vec<SparseVec> = (0..source.dim())
        .map(|j| {
            let d = pa_hoch(&source.vector(j)).expect("white output");
            target.projected_coords(&d)
        })
        .collect();
    RatMatrix::from_columns(target.dim(), &cols)
}

/// `dim ker - dim im` at `(n, k)` with `e` edges.
pub fn hoch_cohomology_dim(n: usize, k: usize, e: usize, max_cells: Option<usize>) -> Result<usize> {
    if n > 4 || k > 4 || e > 7 {
        return Err(Error::Resource(format!("bidegree ({n},{k}) with {e} edges beyond n,k<=4, e<=7")));
    }
    let here = cochain_basis(n, k, e);
    let up = cochain_basis(n, k + 1, e);
    guard(up.dim(), here.dim(), max_cells)?;
    let rank_out = hoch_matrix(&here, &up).rank();
    let rank_in = if k >= 1 {
        let down = cochain_basis(n, k - 1, e);
        guard(here.dim(), down.dim(), max_cells)?;
        hoch_matrix(&down, &here).rank()
    } else {
        0
    };
    Ok(here.dim() - rank_out - rank_in)
}

/// Split a closed cochain as `c + ∂γ₁` with `c` valency-one and
/// white-antisymmetric. Returns `(c, γ₁)`.
pub fn harmonic_decompose(gamma: &GraphSum) -> Result<(GraphSum, GraphSum)> {
    let (n, k) = (gamma.sig.n_black, gamma.sig.n_white);
    if gamma.sig.out != Color::O || k == 0 {
        return Err(Error::Precondition("need white output and k >= 1".into()));
    }
    if !pa_hoch(gamma)?.is_zero() {
        return Err(Error::Precondition("input is not closed".into()));
    }
    let lower_sig = Signature::new(n, k - 1, Color::O);
    let mut c = GraphSum::zero(gamma.sig);
    let mut g1 = GraphSum::zero(lower_sig);
    for (e, part) in by_edges(gamma) {
        let here = cochain_basis(n, k, e);
        let down = cochain_basis(n, k - 1, e);
        let harm = p1p2_basis(n, k, e);
        let mut cols: Vec<SparseVec> = (0..down.dim())
            .map(|j| here.projected_coords(&pa_hoch(&down.vector(j)).expect("white output")))
            .collect();
        cols.extend(harm.iter().map(|h| here.projected_coords(h)));
        let m = RatMatrix::from_columns(here.dim(), &cols);
        let rhs = here.projected_coords(&part);
        if here.from_coords(&rhs) != part {
            return Err(Error::Precondition("input is not black-invariant".into()));
        }
        let x = m
            .solve(&rhs)?
            .ok_or_else(|| Error::Precondition(format!("no decomposition with {e} edges")))?;
        for (&j, v) in &x {
            if j < down.dim() {
                g1.add_scaled(&down.vector(j), v)?;
            } else {
                c.add_scaled(&harm[j - down.dim()], v)?;
            }
        }
    }
    // re-substitute
    let mut check = c.clone();
    check.add_scaled(&pa_hoch(&g1)?, &Q::one())?;
    if check != *gamma {
        return Err(Error::Precondition("decomposition failed to reproduce the input".into()));
    }
    Ok((c, g1))
}

fn by_edges(x: &GraphSum) -> BTreeMap<usize, GraphSum> {
    let mut out: BTreeMap<usize, GraphSum> = BTreeMap::new();
    for (g, c) in x.iter() {
        out.entry(g.edges.len())
            .or_insert_with(|| GraphSum::zero(x.sig))
            .add_graph(g, c)
            .expect("same signature");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conv::broom;

    #[test]
    fn k_zero_is_closed() {
        use crate::graphs::Endpoint::Black;
        let g = GraphSum::from_graph(&DirGraph::new(2, 0, Color::O, vec![(Black(1), Black(2))])).unwrap();
        assert!(pa_hoch(&g).unwrap().is_zero());
    }

    #[test]
    fn brooms_are_closed_and_harmonic() {
        for k in 0..4 {
            assert!(pa_hoch(&broom(k)).unwrap().is_zero());
            assert!(is_p1p2(&broom(k)));
        }
    }
}
