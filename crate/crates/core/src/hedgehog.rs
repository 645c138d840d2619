//! The complex of hedgehogs: black-invariant sums whose white vertices all
//! have valency one and which are antisymmetric in white labels, with the
//! differential `𝔡`, its partner `𝔡*` and the pike decomposition.

use std::collections::BTreeMap;

use num_traits::One;

use crate::error::{Error, Result};
use crate::graphs::{count_pikes, is_pike, Color, DirGraph, Endpoint, GraphSum, Signature};
use crate::hoch::{is_p1p2, p1p2_basis};
use crate::operads::{expand_perm, insert_o, FamilyKind, PermFamily};
use crate::orbits::{Group, WhiteAction};
use crate::rat::{frac, q, sign_q, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HgElement {
    pub value: GraphSum,
    pub m: usize,
    pub k: usize,
}

impl HgElement {
    /// Wrap a sum after checking membership.
    pub fn new(value: GraphSum) -> Result<Self> {
        if !in_hg(&value) {
            return Err(Error::Precondition("not a hedgehog vector".into()));
        }
        let (m, k) = (value.sig.n_black, value.sig.n_white);
        Ok(HgElement { value, m, k })
    }
}

/// White output, black-invariant, valency one and antisymmetric on whites.
pub fn in_hg(x: &GraphSum) -> bool {
    x.sig.out == Color::O
        && is_p1p2(x)
        && Group::new(x.sig.n_black, x.sig.n_white, WhiteAction::Fixed).project(x) == *x
}

/// Basis of the hedgehog space at `(m, k)` with `e` edges.
pub fn hg_basis(m: usize, k: usize, e: usize) -> Vec<GraphSum> {
    p1p2_basis(m, k, e)
}

fn single_black() -> GraphSum {
    GraphSum::from_graph(&DirGraph::new(1, 0, Color::O, vec![])).expect("valid")
}

/// `𝔡(γ) = k Σ_i (τ_{m+1,i}, id)(γ ∘_{1,o} Γ^br_0)`.
pub fn md(gamma: &GraphSum) -> Result<GraphSum> {
    if gamma.sig.out != Color::O {
        return Err(Error::Signature);
    }
    let (m, k) = (gamma.sig.n_black, gamma.sig.n_white);
    if k == 0 {
        return Ok(GraphSum::zero(Signature::new(m + 1, 0, Color::O)));
    }
    let base = insert_o(gamma, 1, &single_black())?;
    let mut out = GraphSum::zero(base.sig);
    for i in 1..=m + 1 {
        let tau = expand_perm(PermFamily { kind: FamilyKind::Tau, size: m + 1, index: i })?;
        out.add_scaled(&base.relabel(&tau, &[], false)?, &q(k as i64))?;
    }
    Ok(out)
}

/// Turn black vertex 1 into white vertex 1, shifting the other labels.
fn pike_to_white(g: &DirGraph) -> DirGraph {
    let map = |v: Endpoint| match v {
        Endpoint::Black(1) => Endpoint::White(1),
        Endpoint::Black(l) => Endpoint::Black(l - 1),
        Endpoint::White(l) => Endpoint::White(l + 1),
    };
    DirGraph::new(
        g.n_black - 1,
        g.n_white + 1,
        g.out,
        g.edges.iter().map(|&(s, t)| (map(s), map(t))).collect(),
    )
}

/// `𝔡*`: keep graphs where black 1 is a pike, make it white 1, then
/// average against the cycles `σ_{k+1,i}` with alternating signs.
pub fn md_star(gamma: &GraphSum) -> Result<GraphSum> {
    let (m, k) = (gamma.sig.n_black, gamma.sig.n_white);
    if gamma.sig.out != Color::O || m == 0 {
        return Err(Error::Precondition("𝔡* needs white output and m >= 1".into()));
    }
    let sig = Signature::new(m - 1, k + 1, Color::O);
    let mut second = GraphSum::zero(sig);
    for (g, c) in gamma.iter() {
        if is_pike(g, 1) {
            second.add_graph(&pike_to_white(g), c)?;
        }
    }
    let mut out = GraphSum::zero(sig);
    for i in 1..=k + 1 {
        let s = expand_perm(PermFamily { kind: FamilyKind::Sigma, size: k + 1, index: i })?;
        out.add_scaled(&second.relabel(&[], &s, false)?, &(sign_q(i as i64 - 1) * frac(1, k as i64 + 1)))?;
    }
    Ok(out)
}

/// Terms grouped by their number of pikes.
pub fn pike_split(gamma: &GraphSum) -> BTreeMap<usize, GraphSum> {
    let mut out: BTreeMap<usize, GraphSum> = BTreeMap::new();
    for (g, c) in gamma.iter() {
        out.entry(count_pikes(g))
            .or_insert_with(|| GraphSum::zero(gamma.sig))
            .add_graph(g, c)
            .expect("same signature");
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeReport {
    pub lhs: GraphSum,
    pub rhs: GraphSum,
}

impl HodgeReport {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Both sides of `𝔡𝔡*γ + 𝔡*𝔡γ = kγ + Σ_r r γ_r`.
pub fn hodge_check(gamma: &GraphSum) -> Result<HodgeReport> {
    let k = gamma.sig.n_white;
    let mut lhs = if gamma.sig.n_black > 0 {
        md(&md_star(gamma)?)?
    } else {
        GraphSum::zero(gamma.sig)
    };
    // 𝔡 vanishes at k = 0
    if k > 0 {
        lhs.add_scaled(&md_star(&md(gamma)?)?, &Q::one())?;
    }
    let mut rhs = gamma.scale(&q(k as i64));
    for (r, part) in pike_split(gamma) {
        if r > 0 {
            rhs.add_scaled(&part, &q(r as i64))?;
        }
    }
    Ok(HodgeReport { lhs, rhs })
}

/// For `𝔡γ = 0` with `k >= 1`, a hedgehog `γ̃` with `𝔡γ̃ = γ`, namely
/// `Σ_{r>=1} 𝔡*(γ_r) / (k + r)`.
pub fn md_exactness_witness(gamma: &GraphSum) -> Result<GraphSum> {
    let (m, k) = (gamma.sig.n_black, gamma.sig.n_white);
    if k == 0 || m == 0 {
        return Err(Error::Precondition("witness needs k >= 1 and m >= 1".into()));
    }
    if !md(gamma)?.is_zero() {
        return Err(Error::Precondition("input is not 𝔡-closed".into()));
    }
    let parts = pike_split(gamma);
    if parts.get(&0).is_some_and(|p| !p.is_zero()) {
        return Err(Error::Precondition("closed input cannot have pike-free graphs".into()));
    }
    let mut out = GraphSum::zero(Signature::new(m - 1, k + 1, Color::O));
    for (r, part) in parts {
        let w = Q::one() / q((k + r) as i64);
        out.add_scaled(&md_star(&part)?, &w)?;
    }
    if md(&out)? != *gamma {
        return Err(Error::Precondition("witness failed re-substitution".into()));
    }
    Ok(out)
}
