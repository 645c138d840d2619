//! The convolution Lie algebra `Conv(oc∨, KGra)` truncated to a rectangle of
//! arities, with MC residuals, boundary and homotopy conditions, the
//! embedding of dfGC, gauge actions, Campbell-Hausdorff and the Picard flow.
//!
//! An element of degree `g` has `e` edges at a corolla `t` where
//! `-e = |t| - 1 + g`. For two-vertex summands `c·τ(t1 ∘ t2)` of `D(t)` the
//! pre-Lie product is
//! `(f•g)(t) = (-1)^{|g|} Σ c (-1)^{(|g|-1)|t1|} τ(f(t1) ∘ g(t2))`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dfgc::{gamma_edge, is_cocycle, DfgcElement};
use crate::error::{Error, Result};
use crate::graphs::{enumerate_basis, Color, DirGraph, Endpoint, GraphSum, Signature};
use crate::ocgen::{corolla_degree, oc_diff, CorollaSig};
use crate::operads::insert;
use crate::orbits::{Group, WhiteAction};
use crate::rat::{factorial, q, sign_q, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvElement {
    pub values: BTreeMap<CorollaSig, GraphSum>,
    pub degree: i64,
    pub cutoff: (usize, usize),
}

pub fn value_signature(s: CorollaSig) -> Signature {
    Signature::new(s.n, s.k, s.out)
}

/// Edge count of a degree-`g` element at `s`, if nonnegative.
pub fn edges_at(s: CorollaSig, g: i64) -> Option<usize> {
    let e = 1 - g - corolla_degree(s).ok()?;
    usize::try_from(e).ok()
}

/// Every generator in the stored region of a cutoff `(N, K)`: `n <= N` and
/// `n + k <= N + K`. Two-vertex summands of `D(t)` can carry one more white
/// input than `t` while losing a black one, so the bare rectangle `k <= K` is
/// not closed under the bracket; this region is the smallest one containing
/// the rectangle that is.
pub fn all_sigs(cutoff: (usize, usize)) -> Vec<CorollaSig> {
    let (nn, kk) = cutoff;
    let mut out = Vec::new();
    for n in 2..=nn {
        out.push(CorollaSig::mc(n));
    }
    for n in 0..=nn {
        for k in 0..=kk + nn - n {
            let s = CorollaSig::mo_nk(n, k);
            if s.is_valid() {
                out.push(s);
            }
        }
    }
    out
}

pub fn in_cutoff(s: CorollaSig, cutoff: (usize, usize)) -> bool {
    s.n <= cutoff.0 && s.n + s.k <= cutoff.0 + cutoff.1
}

/// Whether `s` lies in the rectangle `n <= N`, `k <= K` itself.
pub fn in_rectangle(s: CorollaSig, cutoff: (usize, usize)) -> bool {
    s.n <= cutoff.0 && s.k <= cutoff.1
}

impl ConvElement {
    pub fn zero(degree: i64, cutoff: (usize, usize)) -> Self {
        ConvElement { values: BTreeMap::new(), degree, cutoff }
    }

    pub fn get(&self, s: CorollaSig) -> GraphSum {
        self.values
            .get(&s)
            .cloned()
            .unwrap_or_else(|| GraphSum::zero(value_signature(s)))
    }

    /// Set the value at `s`, checking signature, cutoff and edge count.
    pub fn set(&mut self, s: CorollaSig, v: GraphSum) -> Result<()> {
        if !s.is_valid() {
            return Err(Error::Structure(format!("no generator {s}")));
        }
        if v.sig != value_signature(s) {
            return Err(Error::Signature);
        }
        if !in_cutoff(s, self.cutoff) {
            return Err(Error::Structure(format!("{s} outside cutoff")));
        }
        let want = edges_at(s, self.degree);
        if v.iter().any(|(g, _)| Some(g.edges.len()) != want) {
            return Err(Error::Structure(format!(
                "value at {s} must have {want:?} edges for degree {}",
                self.degree
            )));
        }
        if Group::new(s.n, s.k, WhiteAction::Fixed).project(&v) != v {
            return Err(Error::Structure(format!("value at {s} is not invariant under black relabelling")));
        }
        if v.is_zero() {
            self.values.remove(&s);
        } else {
            self.values.insert(s, v);
        }
        Ok(())
    }

    fn add_at(&mut self, s: CorollaSig, v: &GraphSum, c: &Q) {
        if v.is_zero() || !in_cutoff(s, self.cutoff) {
            return;
        }
        let e = self
            .values
            .entry(s)
            .or_insert_with(|| GraphSum::zero(value_signature(s)));
        e.add_scaled(v, c).expect("matching signature");
        if e.is_zero() {
            self.values.remove(&s);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn add_scaled(&mut self, other: &ConvElement, c: &Q) {
        for (s, v) in &other.values {
            self.add_at(*s, v, c);
        }
    }

    pub fn add(&self, other: &ConvElement) -> ConvElement {
        let mut out = self.clone();
        out.add_scaled(other, &Q::one());
        out
    }

    pub fn sub(&self, other: &ConvElement) -> ConvElement {
        let mut out = self.clone();
        out.add_scaled(other, &-Q::one());
        out
    }

    pub fn scale(&self, c: &Q) -> ConvElement {
        let mut out = ConvElement::zero(self.degree, self.cutoff);
        out.add_scaled(self, c);
        out
    }

    /// Drop components outside a smaller rectangle.
    pub fn truncate(&self, cutoff: (usize, usize)) -> ConvElement {
        let mut out = ConvElement::zero(self.degree, cutoff);
        for (s, v) in &self.values {
            out.add_at(*s, v, &Q::one());
        }
        out
    }
}

impl fmt::Display for ConvElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "conv degree={} cutoff={},{}", self.degree, self.cutoff.0, self.cutoff.1)?;
        for (s, v) in &self.values {
            match s.out {
                Color::C => writeln!(f, "at c n={}:", s.n)?,
                Color::O => writeln!(f, "at o n={} k={}:", s.n, s.k)?,
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Components of `f` that lie outside the region of `cutoff` and would be
/// ignored by an operation at that cutoff.
pub fn dropped_components(f: &ConvElement, cutoff: (usize, usize)) -> Vec<CorollaSig> {
    f.values.keys().copied().filter(|s| !in_cutoff(*s, cutoff)).collect()
}

/// Seeded random element with black-invariant values. Signatures needing
/// more than `max_edges` edges, or rejected by `keep`, stay zero.
pub fn random_element(
    seed: u64,
    degree: i64,
    cutoff: (usize, usize),
    max_edges: usize,
    density: f64,
    keep: impl Fn(CorollaSig) -> bool,
) -> ConvElement {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut f = ConvElement::zero(degree, cutoff);
    for s in all_sigs(cutoff) {
        let Some(e) = edges_at(s, degree) else { continue };
        if e > max_edges || !keep(s) {
            continue;
        }
        let mut v = GraphSum::zero(value_signature(s));
        for g in enumerate_basis(s.n, s.k, e, s.out, false) {
            if rng.random_bool(density) {
                v.add_graph(&g, &q(rng.random_range(-2..=2))).expect("same signature");
            }
        }
        let v = Group::new(s.n, s.k, WhiteAction::Fixed).project(&v);
        f.set(s, v).expect("projected value is admissible");
    }
    f
}

/// Random degree-zero element satisfying the homotopy conditions.
pub fn random_admissible(seed: u64, cutoff: (usize, usize), max_edges: usize, density: f64) -> ConvElement {
    random_element(seed, 0, cutoff, max_edges, density, |s| s.out == Color::O && s.n >= 2)
}

/// One-sided product `f•g`.
pub fn pre_lie(f: &ConvElement, g: &ConvElement) -> ConvElement {
    let cutoff = (f.cutoff.0.min(g.cutoff.0), f.cutoff.1.min(g.cutoff.1));
    let mut out = ConvElement::zero(f.degree + g.degree, cutoff);
    if f.is_zero() || g.is_zero() {
        return out;
    }
    let gd = g.degree;
    for s in all_sigs(cutoff) {
        // terms differing only in τ share one insertion
        let mut cache: BTreeMap<(CorollaSig, CorollaSig, usize, Color), GraphSum> = BTreeMap::new();
        for t in oc_diff(s).expect("valid generator") {
            let (Some(fv), Some(gv)) = (f.values.get(&t.outer), g.values.get(&t.inner)) else {
                continue;
            };
            let t1 = corolla_degree(t.outer).expect("valid");
            let sign = sign_q(gd) * sign_q((gd - 1) * t1) * q(t.coef);
            let x = cache
                .entry((t.outer, t.inner, t.slot, t.slot_color))
                .or_insert_with(|| insert(fv, t.slot, t.slot_color, gv).expect("compatible corollas"));
            if t.tau.is_empty() {
                out.add_at(s, x, &sign);
            } else {
                out.add_at(s, &x.relabel(&t.tau, &[], false).expect("sizes"), &sign);
            }
        }
    }
    out
}

/// `[f, g] = f•g - (-1)^{|f||g|} g•f`.
pub fn conv_bracket(f: &ConvElement, g: &ConvElement) -> ConvElement {
    let mut out = pre_lie(f, g);
    out.add_scaled(&pre_lie(g, f), &-sign_q(f.degree * g.degree));
    out
}

fn level(f: &ConvElement, size: impl Fn(CorollaSig) -> usize, top: usize) -> usize {
    f.values.keys().map(|s| size(*s) - 1).min().unwrap_or(top)
}

/// Largest `m` with `f` vanishing on every corolla of total arity `<= m`.
/// The zero element reports the total cutoff.
pub fn filtration_level(f: &ConvElement) -> usize {
    level(f, |s| s.n + s.k, f.cutoff.0 + f.cutoff.1)
}

/// Largest `m` with `f` vanishing on every corolla with at most `m` black
/// inputs.
pub fn filtration_level_c(f: &ConvElement) -> usize {
    f.values.keys().map(|s| s.n).min().map(|n| n.saturating_sub(1)).unwrap_or(f.cutoff.0)
}

pub fn gamma_white_white() -> GraphSum {
    GraphSum::from_graph(&DirGraph::new(0, 2, Color::O, vec![])).expect("valid")
}

/// One black hub joined to `k` white vertices, edges in white order.
pub fn broom(k: usize) -> GraphSum {
    let edges = (1..=k)
        .map(|j| (Endpoint::Black(1), Endpoint::White(j as u8)))
        .collect();
    GraphSum::from_graph(&DirGraph::new(1, k, Color::O, edges)).expect("valid")
}

/// The degree-one element carrying only the boundary data.
pub fn skeleton_alpha(cutoff: (usize, usize)) -> ConvElement {
    let mut a = ConvElement::zero(1, cutoff);
    if cutoff.0 >= 2 {
        a.add_at(CorollaSig::mc(2), &gamma_edge(), &Q::one());
    }
    if in_cutoff(CorollaSig::mo(2), cutoff) {
        a.add_at(CorollaSig::mo(2), &gamma_white_white(), &Q::one());
    }
    if cutoff.0 >= 1 {
        for k in 0..cutoff.0 + cutoff.1 {
            a.add_at(CorollaSig::mo_nk(1, k), &broom(k), &(Q::one() / factorial(k)));
        }
    }
    a
}

/// Violations of the boundary conditions, one line each.
pub fn boundary_check(a: &ConvElement) -> Vec<String> {
    let mut out = Vec::new();
    if a.degree != 1 {
        out.push(format!("degree {} instead of 1", a.degree));
    }
    let mut expect = |s: CorollaSig, v: GraphSum| {
        if in_cutoff(s, a.cutoff) && a.get(s) != v {
            out.push(format!("value at {s} differs from the boundary value"));
        }
    };
    expect(CorollaSig::mc(2), gamma_edge());
    for n in 3..=a.cutoff.0 {
        expect(CorollaSig::mc(n), GraphSum::zero(value_signature(CorollaSig::mc(n))));
    }
    expect(CorollaSig::mo(2), gamma_white_white());
    for k in 0..a.cutoff.0 + a.cutoff.1 {
        expect(CorollaSig::mo_nk(1, k), broom(k).scale(&(Q::one() / factorial(k))));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyReport {
    pub admissible: bool,
    pub violations: Vec<String>,
    /// Values at `t^o_k` vanish for degree-zero elements.
    pub vanishes_on_mo: bool,
}

pub fn homotopy_conditions(xi: &ConvElement) -> HomotopyReport {
    let mut violations = Vec::new();
    if xi.degree != 0 && !xi.is_zero() {
        violations.push(format!("degree {} instead of 0", xi.degree));
    }
    for s in xi.values.keys() {
        if s.out == Color::C || (s.out == Color::O && s.n == 1) {
            violations.push(format!("nonzero value at {s}"));
        }
    }
    let vanishes_on_mo = xi.values.keys().all(|s| !(s.out == Color::O && s.n == 0));
    HomotopyReport { admissible: violations.is_empty(), violations, vanishes_on_mo }
}

/// `exp(ad_x) a`, terminating by the arity filtration.
fn exp_ad(x: &ConvElement, a: &ConvElement) -> ConvElement {
    let mut out = a.clone();
    let mut term = a.clone();
    let mut j = 1i64;
    loop {
        term = conv_bracket(x, &term).scale(&(Q::one() / q(j)));
        if term.is_zero() {
            return out;
        }
        out.add_scaled(&term, &Q::one());
        j += 1;
    }
}

fn require_f1_degree0(x: &ConvElement, what: &str) -> Result<()> {
    if !x.is_zero() && x.degree != 0 {
        return Err(Error::Precondition(format!("{what} must have degree 0")));
    }
    if x.values.keys().any(|s| s.n + s.k <= 1) {
        return Err(Error::Precondition(format!("{what} must vanish in total arity <= 1")));
    }
    Ok(())
}

/// `exp(ad_ξ) α`.
pub fn gauge(xi: &ConvElement, alpha: &ConvElement) -> Result<ConvElement> {
    require_f1_degree0(xi, "gauge parameter")?;
    Ok(exp_ad(xi, alpha))
}

/// Campbell-Hausdorff series `log(e^x e^y)` by Dynkin's formula, truncated
/// by the arity filtration.
pub fn ch(x: &ConvElement, y: &ConvElement) -> Result<ConvElement> {
    require_f1_degree0(x, "x")?;
    require_f1_degree0(y, "y")?;
    let cutoff = (x.cutoff.0.min(y.cutoff.0), x.cutoff.1.min(y.cutoff.1));
    // words of length L land in arity >= L + 1
    let max_len = cutoff.0 + cutoff.1;
    let letters = [x.truncate(cutoff), y.truncate(cutoff)];
    let mut nested: BTreeMap<Vec<u8>, ConvElement> = BTreeMap::new();
    let mut out = ConvElement::zero(0, cutoff);
    for len in 1..=max_len {
        let mut any = false;
        for w in words(len) {
            let v = if len == 1 {
                letters[w[0] as usize].clone()
            } else {
                match nested.get(&w[1..]) {
                    Some(rest) => conv_bracket(&letters[w[0] as usize], rest),
                    None => continue,
                }
            };
            if v.is_zero() {
                continue;
            }
            any = true;
            let c = dynkin_coefficient(&w);
            if !c.is_zero() {
                out.add_scaled(&v, &c);
            }
            nested.insert(w, v);
        }
        if !any {
            break;
        }
    }
    Ok(out)
}

fn words(len: usize) -> Vec<Vec<u8>> {
    (0..1usize << len)
        .map(|bits| (0..len).map(|i| ((bits >> (len - 1 - i)) & 1) as u8).collect())
        .collect()
}

/// Coefficient of the right-nested bracket of `w` in Dynkin's formula:
/// sum over splittings of `w` into blocks `x^r y^s` with `r + s > 0`.
fn dynkin_coefficient(w: &[u8]) -> Q {
    let len = w.len();
    let mut total = Q::zero();
    // a splitting is a set of cut points; every block must be x* y*
    for cuts in 0..1usize << (len - 1) {
        let mut blocks = Vec::new();
        let mut start = 0;
        for i in 0..len - 1 {
            if cuts >> i & 1 == 1 {
                blocks.push(&w[start..=i]);
                start = i + 1;
            }
        }
        blocks.push(&w[start..]);
        let mut denom = Q::one();
        let mut ok = true;
        for b in &blocks {
            let r = b.iter().take_while(|&&c| c == 0).count();
            if b[r..].iter().any(|&c| c == 0) {
                ok = false;
                break;
            }
            denom *= factorial(r) * factorial(b.len() - r);
        }
        if !ok {
            continue;
        }
        let n = blocks.len() as i64;
        total += sign_q(n - 1) / (q(n) * q(len as i64) * denom);
    }
    total
}

/// `J(γ)`: γ on the c-corollas with at least two inputs, zero elsewhere.
pub fn j_embed(gamma: &DfgcElement, cutoff: (usize, usize)) -> Result<ConvElement> {
    let degree = match gamma.degree() {
        Some(d) => d,
        None if gamma.is_zero() => 0,
        None => return Err(Error::Precondition("J needs a homogeneous element".into())),
    };
    let mut out = ConvElement::zero(degree, cutoff);
    for (&n, v) in &gamma.comps {
        if n >= 2 {
            out.add_at(CorollaSig::mc(n), v, &Q::one());
        }
    }
    Ok(out)
}

/// `exp(ad_{J(γ)}) α` for a degree-zero cocycle γ.
pub fn dfgc_action(gamma: &DfgcElement, alpha: &ConvElement) -> Result<ConvElement> {
    if gamma.is_zero() {
        return Ok(alpha.clone());
    }
    if gamma.degree() != Some(0) {
        return Err(Error::Precondition("γ must be homogeneous of degree 0".into()));
    }
    if !is_cocycle(gamma).0 {
        return Err(Error::Precondition("γ is not a cocycle".into()));
    }
    let j = j_embed(gamma, alpha.cutoff)?;
    Ok(exp_ad(&j, alpha))
}

/// `½[α, α]` per corolla; empty exactly when α is MC inside the cutoff.
pub fn mc_residual(a: &ConvElement) -> BTreeMap<CorollaSig, GraphSum> {
    conv_bracket(a, a).scale(&crate::rat::frac(1, 2)).values
}

/// Polynomial in `t` with coefficients in Conv: `coeffs[i]` multiplies `t^i`.
pub type ConvPoly = Vec<ConvElement>;

/// Solve `dα/dt = [ξ(t), α(t)]`, `α(0) = α` by Picard iteration and return
/// `α(1)`. The iteration stabilizes because each step gains one unit of
/// arity filtration.
pub fn mc_flow(xi: &ConvPoly, alpha: &ConvElement, max_iter: usize) -> Result<ConvElement> {
    for x in xi {
        require_f1_degree0(x, "ξ(t) coefficient")?;
    }
    let mut cur: ConvPoly = vec![alpha.clone()];
    for _ in 0..max_iter {
        // integrand [ξ(t), α(t)] as a polynomial
        let mut integrand: ConvPoly = Vec::new();
        for (i, x) in xi.iter().enumerate() {
            for (j, a) in cur.iter().enumerate() {
                let b = conv_bracket(x, a);
                if b.is_zero() {
                    continue;
                }
                while integrand.len() <= i + j {
                    integrand.push(ConvElement::zero(alpha.degree, alpha.cutoff));
                }
                integrand[i + j].add_scaled(&b, &Q::one());
            }
        }
        let mut next: ConvPoly = vec![alpha.clone()];
        for (i, c) in integrand.into_iter().enumerate() {
            next.push(c.scale(&(Q::one() / q(i as i64 + 1))));
        }
        while next.len() > 1 && next.last().is_some_and(|c| c.is_zero()) {
            next.pop();
        }
        if next == cur {
            let mut out = ConvElement::zero(alpha.degree, alpha.cutoff);
            for c in &cur {
                out.add_scaled(c, &Q::one());
            }
            return Ok(out);
        }
        cur = next;
    }
    Err(Error::Precondition(format!("Picard iteration did not settle in {max_iter} steps")))
}
