//! Graphs acting on polyvector fields and functions on a graded affine
//! space, with closed-form Schouten and HKR formulas for comparison.
//!
//! Generators are ordered `x^1 < … < x^d < θ_1 < … < θ_d`; monomials are
//! stored as exponent vectors in this order. All derivatives act from the
//! left.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graphs::{Color, DirGraph, Endpoint, GraphSum};
use crate::rat::{factorial, fmt_q, q, sign_q, Q};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GenSpec {
    pub d: usize,
    /// `|x^c|`; `θ_c` has degree `|x^c| + 1`.
    pub degrees: Vec<i64>,
}

impl GenSpec {
    /// Ordinary affine space: every `x^c` in degree zero.
    pub fn flat(d: usize) -> Self {
        GenSpec { d, degrees: vec![0; d] }
    }

    pub fn with_degrees(degrees: Vec<i64>) -> Self {
        GenSpec { d: degrees.len(), degrees }
    }

    fn gen_degree(&self, g: usize) -> i64 {
        if g < self.d {
            self.degrees[g]
        } else {
            self.degrees[g - self.d] + 1
        }
    }

    fn is_odd(&self, g: usize) -> bool {
        self.gen_degree(g).rem_euclid(2) == 1
    }

    pub fn is_flat(&self) -> bool {
        self.degrees.iter().all(|&x| x == 0)
    }
}

pub type Monomial = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPoly {
    pub spec: GenSpec,
    pub terms: BTreeMap<Monomial, Q>,
}

impl GradedPoly {
    pub fn zero(spec: &GenSpec) -> Self {
        GradedPoly { spec: spec.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(spec: &GenSpec, c: Q) -> Self {
        let mut p = GradedPoly::zero(spec);
        p.add_term(vec![0; 2 * spec.d], c);
        p
    }

    fn generator(spec: &GenSpec, g: usize) -> Self {
        let mut m = vec![0; 2 * spec.d];
        m[g] = 1;
        let mut p = GradedPoly::zero(spec);
        p.add_term(m, Q::one());
        p
    }

    /// `x^c`, with `c` counted from one.
    pub fn x(spec: &GenSpec, c: usize) -> Self {
        GradedPoly::generator(spec, c - 1)
    }

    /// `θ_c`, with `c` counted from one.
    pub fn theta(spec: &GenSpec, c: usize) -> Self {
        GradedPoly::generator(spec, spec.d + c - 1)
    }

    /// Insert a monomial, dropping it when an odd generator repeats.
    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() || (0..m.len()).any(|g| m[g] > 1 && self.spec.is_odd(g)) {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &GradedPoly) -> GradedPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Q) -> GradedPoly {
        let mut out = GradedPoly::zero(&self.spec);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, other: &GradedPoly) -> GradedPoly {
        let mut out = GradedPoly::zero(&self.spec);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if let Some((m, s)) = mono_mul(&self.spec, m1, m2) {
                    out.add_term(m, c1 * c2 * q(s));
                }
            }
        }
        out
    }

    pub fn mono_degree(&self, m: &Monomial) -> i64 {
        mono_degree(&self.spec, m)
    }

    /// The common degree of all terms, if there is one.
    pub fn degree(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(|m| self.mono_degree(m));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Split into homogeneous pieces keyed by degree.
    pub fn by_degree(&self) -> BTreeMap<i64, GradedPoly> {
        let mut out: BTreeMap<i64, GradedPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(self.mono_degree(m))
                .or_insert_with(|| GradedPoly::zero(&self.spec))
                .add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn has_theta(&self) -> bool {
        self.terms.keys().any(|m| m[self.spec.d..].iter().any(|&e| e > 0))
    }

    pub fn theta_to_zero(&self) -> GradedPoly {
        let mut out = GradedPoly::zero(&self.spec);
        for (m, c) in &self.terms {
            if m[self.spec.d..].iter().all(|&e| e == 0) {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// Left derivative by `x^c`.
    pub fn d_x(&self, c: usize) -> GradedPoly {
        self.deriv(c - 1)
    }

    /// Left derivative by `θ_c`.
    pub fn d_theta(&self, c: usize) -> GradedPoly {
        self.deriv(self.spec.d + c - 1)
    }

    fn deriv(&self, g: usize) -> GradedPoly {
        let mut out = GradedPoly::zero(&self.spec);
        for (m, c) in &self.terms {
            if let Some((m2, k)) = mono_deriv(&self.spec, m, g) {
                out.add_term(m2, c * k);
            }
        }
        out
    }
}

fn mono_degree(spec: &GenSpec, m: &Monomial) -> i64 {
    m.iter().enumerate().map(|(g, &e)| e as i64 * spec.gen_degree(g)).sum()
}

/// Product of two ordered monomials with the Koszul sign of merging them.
fn mono_mul(spec: &GenSpec, a: &Monomial, b: &Monomial) -> Option<(Monomial, i64)> {
    let mut parity = 0i64;
    for (g2, &e2) in b.iter().enumerate() {
        if e2 == 0 || !spec.is_odd(g2) {
            continue;
        }
        for (g1, &e1) in a.iter().enumerate().skip(g2 + 1) {
            if spec.is_odd(g1) {
                parity += (e1 * e2) as i64;
            }
        }
    }
    let m: Monomial = a.iter().zip(b).map(|(x, y)| x + y).collect();
    if (0..m.len()).any(|g| m[g] > 1 && spec.is_odd(g)) {
        return None;
    }
    Some((m, if parity % 2 == 0 { 1 } else { -1 }))
}

/// Left derivative of a monomial by generator `g`, as a monomial and
/// coefficient.
fn mono_deriv(spec: &GenSpec, m: &Monomial, g: usize) -> Option<(Monomial, Q)> {
    if m[g] == 0 {
        return None;
    }
    let mut coef = q(m[g] as i64);
    if spec.is_odd(g) {
        let before: i64 = (0..g).filter(|&h| spec.is_odd(h)).map(|h| m[h] as i64).sum();
        coef *= sign_q(before);
    }
    let mut out = m.clone();
    out[g] -= 1;
    Some((out, coef))
}

impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let d = self.spec.d;
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", fmt_q(c))?;
            for (g, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = if g < d { format!("x{}", g + 1) } else { format!("t{}", g - d + 1) };
                if e == 1 {
                    write!(f, "*{name}")?;
                } else {
                    write!(f, "*{name}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

/// A pure tensor of monomials with a coefficient.
type PureTensor = (Q, Vec<Monomial>);

fn expand(args: &[&GradedPoly]) -> Vec<PureTensor> {
    let mut out: Vec<PureTensor> = vec![(Q::one(), Vec::new())];
    for a in args {
        let mut next = Vec::new();
        for (c, ms) in &out {
            for (m, v) in &a.terms {
                let mut ms = ms.clone();
                ms.push(m.clone());
                next.push((c * v, ms));
            }
        }
        out = next;
    }
    out
}

/// Apply one slotwise operator list `(slot, generator sequence)` to a pure
/// tensor. Each slot's generators are differentiated right to left.
fn apply_ops(spec: &GenSpec, t: &PureTensor, ops: &[(usize, Vec<usize>)]) -> Option<PureTensor> {
    let (mut c, mut ms) = (t.0.clone(), t.1.clone());
    // Koszul sign from each operator passing the earlier factors
    let degs: Vec<i64> = ms.iter().map(|m| mono_degree(spec, m)).collect();
    for (slot, gens) in ops {
        let op_deg: i64 = gens.iter().map(|&g| spec.gen_degree(g)).sum();
        let before: i64 = degs[..*slot].iter().sum();
        c *= sign_q(op_deg * before);
        for &g in gens.iter().rev() {
            let (m2, k) = mono_deriv(spec, &ms[*slot], g)?;
            ms[*slot] = m2;
            c *= k;
        }
    }
    Some((c, ms))
}

fn slot_of(v: Endpoint, n: usize) -> usize {
    match v {
        Endpoint::Black(l) => l as usize - 1,
        Endpoint::White(l) => n + l as usize - 1,
    }
}

fn act_graph(spec: &GenSpec, g: &DirGraph, args: &[&GradedPoly]) -> GradedPoly {
    let d = spec.d;
    let mut tensors = expand(args);
    // the last edge acts first
    for &(s, t) in g.edges.iter().rev() {
        let (i, j) = (slot_of(s, g.n_black), slot_of(t, g.n_black));
        let mut next = Vec::new();
        for tensor in &tensors {
            for c in 0..d {
                let ops = if i == j {
                    vec![(i, vec![d + c, c])]
                } else {
                    let mut ops = vec![(i, vec![d + c]), (j, vec![c])];
                    ops.sort_by_key(|o| o.0);
                    ops
                };
                if let Some(t) = apply_ops(spec, tensor, &ops) {
                    next.push(t);
                }
            }
        }
        tensors = next;
    }
    let mut out = GradedPoly::zero(spec);
    for (c, ms) in tensors {
        let mut acc: Option<(Monomial, i64)> = Some((vec![0; 2 * d], 1));
        for m in &ms {
            acc = acc.and_then(|(a, s)| mono_mul(spec, &a, m).map(|(p, s2)| (p, s * s2)));
        }
        if let Some((m, s)) = acc {
            out.add_term(m, c * q(s));
        }
    }
    out
}

fn check_spec(args: &[&GradedPoly], spec: &GenSpec) -> Result<()> {
    if args.iter().any(|a| a.spec != *spec) {
        return Err(Error::Structure("arguments use different generator specs".into()));
    }
    Ok(())
}

/// `Γ(v_1, …, v_n)` for a graph with black output.
pub fn act_c(g: &DirGraph, vs: &[GradedPoly], spec: &GenSpec) -> Result<GradedPoly> {
    if g.out != Color::C || g.n_white != 0 {
        return Err(Error::Signature);
    }
    if vs.len() != g.n_black {
        return Err(Error::Structure(format!("expected {} arguments, got {}", g.n_black, vs.len())));
    }
    let args: Vec<&GradedPoly> = vs.iter().collect();
    check_spec(&args, spec)?;
    Ok(act_graph(spec, g, &args))
}

/// `Γ(v_1, …, v_n; a_1, …, a_k)` for a graph with white output, with every
/// `θ` set to zero at the end.
pub fn act_o(g: &DirGraph, vs: &[GradedPoly], as_: &[GradedPoly], spec: &GenSpec) -> Result<GradedPoly> {
    if g.out != Color::O {
        return Err(Error::Signature);
    }
    if vs.len() != g.n_black || as_.len() != g.n_white {
        return Err(Error::Structure(format!(
            "expected {}+{} arguments, got {}+{}",
            g.n_black,
            g.n_white,
            vs.len(),
            as_.len()
        )));
    }
    if as_.iter().any(|a| a.has_theta()) {
        return Err(Error::Precondition("function arguments may not contain θ".into()));
    }
    let args: Vec<&GradedPoly> = vs.iter().chain(as_.iter()).collect();
    check_spec(&args, spec)?;
    Ok(act_graph(spec, g, &args).theta_to_zero())
}

/// Linear extension of [`act_c`] / [`act_o`] to a sum of graphs.
pub fn act_sum(x: &GraphSum, vs: &[GradedPoly], as_: &[GradedPoly], spec: &GenSpec) -> Result<GradedPoly> {
    let mut out = GradedPoly::zero(spec);
    for (g, c) in x.iter() {
        let v = match g.out {
            Color::C => act_c(g, vs, spec)?,
            Color::O => act_o(g, vs, as_, spec)?,
        };
        out = out.add(&v.scale(c));
    }
    Ok(out)
}

/// `Σ_c (-1)^{|x^c||v_1|} ∂_{θ_c}v_1 ∂_{x^c}v_2
///  + (-1)^{(|x^c|+1)|v_1|} ∂_{x^c}v_1 ∂_{θ_c}v_2`.
pub fn schouten_oracle(v1: &GradedPoly, v2: &GradedPoly) -> GradedPoly {
    let spec = &v1.spec;
    let mut out = GradedPoly::zero(spec);
    for (deg1, p1) in v1.by_degree() {
        for c in 1..=spec.d {
            let xc = spec.degrees[c - 1];
            let a = p1.d_theta(c).mul(&v2.d_x(c)).scale(&sign_q(xc * deg1));
            let b = p1.d_x(c).mul(&v2.d_theta(c)).scale(&sign_q((xc + 1) * deg1));
            out = out.add(&a).add(&b);
        }
    }
    out
}

/// `(1/k!) Σ_{c_1..c_k} ∂_{θ_{c_1}} ⋯ ∂_{θ_{c_k}} v · ∂_{x^{c_1}}a_1 ⋯ ∂_{x^{c_k}}a_k`
/// at `θ = 0`, on ordinary affine space.
pub fn hkr_oracle(v: &GradedPoly, as_: &[GradedPoly]) -> Result<GradedPoly> {
    let spec = &v.spec;
    if !spec.is_flat() {
        return Err(Error::Precondition("HKR formula implemented for degree-zero coordinates".into()));
    }
    let k = as_.len();
    let mut out = GradedPoly::zero(spec);
    let mut idx = vec![1usize; k];
    if spec.d == 0 && k > 0 {
        return Ok(out);
    }
    loop {
        let mut term = v.clone();
        for &c in idx.iter().rev() {
            term = term.d_theta(c);
        }
        for (a, &c) in as_.iter().zip(&idx) {
            term = term.mul(&a.d_x(c));
        }
        out = out.add(&term);
        // next assignment
        let mut pos = 0;
        loop {
            if pos == k {
                return Ok(out.theta_to_zero().scale(&(Q::one() / factorial(k))));
            }
            idx[pos] += 1;
            if idx[pos] <= spec.d {
                break;
            }
            idx[pos] = 1;
            pos += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conv::broom;
    use crate::graphs::Endpoint::Black;

    #[test]
    fn odd_squares_vanish() {
        let s = GenSpec::flat(2);
        let t = GradedPoly::theta(&s, 1);
        assert!(t.mul(&t).is_zero());
        let t2 = GradedPoly::theta(&s, 2);
        assert_eq!(t.mul(&t2), t2.mul(&t).scale(&q(-1)));
    }

    #[test]
    fn broom_two_on_theta_pair() {
        let s = GenSpec::flat(2);
        let v = GradedPoly::theta(&s, 1).mul(&GradedPoly::theta(&s, 2));
        let a = [GradedPoly::x(&s, 1), GradedPoly::x(&s, 2)];
        let g = broom(2).iter().next().unwrap().0.clone();
        let r = act_o(&g, &[v.clone()], &a, &s).unwrap();
        assert_eq!(r, GradedPoly::constant(&s, q(-1)));
        assert_eq!(hkr_oracle(&v, &a).unwrap(), GradedPoly::constant(&s, crate::rat::frac(-1, 2)));
    }

    #[test]
    fn theta_x_bracket_is_one() {
        let s = GenSpec::flat(1);
        let (t, x) = (GradedPoly::theta(&s, 1), GradedPoly::x(&s, 1));
        assert_eq!(schouten_oracle(&t, &x), GradedPoly::constant(&s, q(1)));
        let both = [DirGraph::black(2, &[(1, 2)]), DirGraph::black(2, &[(2, 1)])];
        let mut sum = GradedPoly::zero(&s);
        for g in &both {
            sum = sum.add(&act_c(g, &[t.clone(), x.clone()], &s).unwrap());
        }
        assert_eq!(sum, GradedPoly::constant(&s, q(1)));
        let lp = DirGraph::new(1, 0, Color::C, vec![(Black(1), Black(1))]);
        let v = t.mul(&x);
        assert_eq!(act_c(&lp, &[v], &s).unwrap(), GradedPoly::constant(&s, q(1)));
    }
}
