//! Insertions in dGra and KGra, permutation bookkeeping and operad-axiom
//! checks.

use itertools::Itertools;
use num_traits::One;

use crate::error::{Error, Result};
use crate::graphs::{Color, DirGraph, Edge, Endpoint, GraphSum, Signature};
use crate::rat::{sign_q, Q};

/// A permutation of `1..=n` stored as 1-based images: `p[j-1] = σ(j)`.
pub type Perm = Vec<usize>;

pub fn identity(n: usize) -> Perm {
    (1..=n).collect()
}

/// `(a ∘ b)(j) = a(b(j))`.
pub fn compose(a: &[usize], b: &[usize]) -> Perm {
    b.iter().map(|&j| a[j - 1]).collect()
}

pub fn inverse(p: &[usize]) -> Perm {
    let mut out = vec![0; p.len()];
    for (j, &pj) in p.iter().enumerate() {
        out[pj - 1] = j + 1;
    }
    out
}

pub fn all_perms(n: usize) -> Vec<Perm> {
    (1..=n).permutations(n).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    Tau,
    Sigma,
    Varsigma,
}

/// One member of the cycle families τ_{m,i}, σ_{k,i}, ς_{k,i}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PermFamily {
    pub kind: FamilyKind,
    pub size: usize,
    pub index: usize,
}

pub fn expand_perm(f: PermFamily) -> Result<Perm> {
    let (m, i) = (f.size, f.index);
    if i == 0 || i > m {
        return Err(Error::Index(i));
    }
    let p = (1..=m)
        .map(|j| match f.kind {
            // j < i fixed, i <= j < m shifts up, m lands on i
            FamilyKind::Tau => {
                if j == m {
                    i
                } else if j >= i {
                    j + 1
                } else {
                    j
                }
            }
            // 1 goes to i, 2..=i shift down
            FamilyKind::Sigma => {
                if j == 1 {
                    i
                } else if j <= i {
                    j - 1
                } else {
                    j
                }
            }
            // j < i shift up, i goes to 1
            FamilyKind::Varsigma => {
                if j < i {
                    j + 1
                } else if j == i {
                    1
                } else {
                    j
                }
            }
        })
        .collect();
    Ok(p)
}

/// A (p,q)-shuffle: increasing on `1..=p` and on `p+1..=p+q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shuffle {
    pub p: usize,
    pub q: usize,
    pub perm: Perm,
}

pub fn shuffles(p: usize, q: usize) -> Vec<Shuffle> {
    let n = p + q;
    (1..=n)
        .combinations(p)
        .map(|first| {
            let rest = (1..=n).filter(|j| !first.contains(j));
            let perm = first.iter().copied().chain(rest).collect();
            Shuffle { p, q, perm }
        })
        .collect()
}

/// Reattach every endpoint of `edges` equal to `v` to each of `targets`,
/// in all ways, mapping all other endpoints with `map`.
fn reattach(
    edges: &[Edge],
    v: Endpoint,
    targets: &[Endpoint],
    map: impl Fn(Endpoint) -> Endpoint,
) -> Vec<Vec<Edge>> {
    let slots: Vec<(usize, bool)> = edges
        .iter()
        .enumerate()
        .flat_map(|(ix, &(s, t))| {
            let mut hits = Vec::new();
            if s == v {
                hits.push((ix, true));
            }
            if t == v {
                hits.push((ix, false));
            }
            hits
        })
        .collect();
    let base: Vec<Edge> = edges.iter().map(|&(s, t)| (map(s), map(t))).collect();
    if slots.is_empty() {
        return vec![base];
    }
    slots
        .iter()
        .map(|_| targets.iter().copied())
        .multi_cartesian_product()
        .map(|choice| {
            let mut es = base.clone();
            for (&(ix, src), w) in slots.iter().zip(choice) {
                if src {
                    es[ix].0 = w;
                } else {
                    es[ix].1 = w;
                }
            }
            es
        })
        .collect()
}

/// `outer ∘_i inner` at the level of single graphs, before sorting.
pub(crate) fn insert_c_raw(outer: &DirGraph, i: usize, inner: &DirGraph) -> Vec<DirGraph> {
    let n = inner.n_black;
    let shift_outer = |v: Endpoint| match v {
        Endpoint::Black(l) if (l as usize) > i => Endpoint::Black((l as usize + n - 1) as u8),
        v => v,
    };
    let targets: Vec<Endpoint> = (1..=n).map(|j| Endpoint::Black((j + i - 1) as u8)).collect();
    let inner_edges: Vec<Edge> = inner
        .edges
        .iter()
        .map(|&(s, t)| {
            let sh = |v: Endpoint| Endpoint::Black((v.label() + i - 1) as u8);
            (sh(s), sh(t))
        })
        .collect();
    reattach(&outer.edges, Endpoint::Black(i as u8), &targets, shift_outer)
        .into_iter()
        .map(|mut es| {
            es.extend_from_slice(&inner_edges);
            DirGraph::new(outer.n_black + n - 1, outer.n_white, outer.out, es)
        })
        .collect()
}

/// `outer ∘_{i,o} inner` at the level of single graphs, before sorting.
pub(crate) fn insert_o_raw(outer: &DirGraph, i: usize, inner: &DirGraph) -> Vec<DirGraph> {
    let (m, n, q) = (outer.n_black, inner.n_black, inner.n_white);
    let shift_outer = |v: Endpoint| match v {
        Endpoint::White(l) if (l as usize) > i => Endpoint::White((l as usize + q - 1) as u8),
        v => v,
    };
    let shift_inner = |v: Endpoint| match v {
        Endpoint::Black(l) => Endpoint::Black((l as usize + m) as u8),
        Endpoint::White(l) => Endpoint::White((l as usize + i - 1) as u8),
    };
    let targets: Vec<Endpoint> = (1..=n)
        .map(|j| Endpoint::Black(j as u8))
        .chain((1..=q).map(|j| Endpoint::White(j as u8)))
        .map(shift_inner)
        .collect();
    let inner_edges: Vec<Edge> = inner
        .edges
        .iter()
        .map(|&(s, t)| (shift_inner(s), shift_inner(t)))
        .collect();
    reattach(&outer.edges, Endpoint::White(i as u8), &targets, shift_outer)
        .into_iter()
        .map(|mut es| {
            es.extend_from_slice(&inner_edges);
            DirGraph::new(m + n, outer.n_white + q - 1, Color::O, es)
        })
        .collect()
}

/// Insert the c-coloured `inner` into black vertex `i` of `outer`.
pub fn insert_c(outer: &GraphSum, i: usize, inner: &GraphSum) -> Result<GraphSum> {
    if inner.sig.out != Color::C {
        return Err(Error::Structure("inner graph of a black insertion must be c-coloured".into()));
    }
    if i == 0 || i > outer.sig.n_black {
        return Err(Error::Index(i));
    }
    let sig = Signature::new(
        outer.sig.n_black + inner.sig.n_black - 1,
        outer.sig.n_white,
        outer.sig.out,
    );
    let mut out = GraphSum::zero(sig);
    for (a, ca) in outer.iter() {
        for (b, cb) in inner.iter() {
            let c = ca * cb;
            for g in insert_c_raw(a, i, b) {
                out.add_raw(g, &c);
            }
        }
    }
    Ok(out)
}

/// Insert the o-coloured `inner` into white vertex `i` of `outer`.
pub fn insert_o(outer: &GraphSum, i: usize, inner: &GraphSum) -> Result<GraphSum> {
    if outer.sig.out != Color::O || inner.sig.out != Color::O {
        return Err(Error::Structure("white insertion needs o-coloured graphs".into()));
    }
    if i == 0 || i > outer.sig.n_white {
        return Err(Error::Index(i));
    }
    let sig = Signature::new(
        outer.sig.n_black + inner.sig.n_black,
        outer.sig.n_white + inner.sig.n_white - 1,
        Color::O,
    );
    let mut out = GraphSum::zero(sig);
    for (a, ca) in outer.iter() {
        for (b, cb) in inner.iter() {
            let c = ca * cb;
            for g in insert_o_raw(a, i, b) {
                out.add_raw(g, &c);
            }
        }
    }
    Ok(out)
}

/// Insert at a slot of the given colour.
pub fn insert(outer: &GraphSum, i: usize, color: Color, inner: &GraphSum) -> Result<GraphSum> {
    match color {
        Color::C => insert_c(outer, i, inner),
        Color::O => insert_o(outer, i, inner),
    }
}

pub fn unit_c() -> GraphSum {
    GraphSum::from_graph(&DirGraph::new(1, 0, Color::C, vec![])).expect("unit")
}

pub fn unit_o() -> GraphSum {
    GraphSum::from_graph(&DirGraph::new(0, 1, Color::O, vec![])).expect("unit")
}

/// Parity sign `(-1)^{e_b e_c}` for homogeneous sums.
fn koszul(b: &GraphSum, c: &GraphSum) -> Q {
    match (b.edge_count(), c.edge_count()) {
        (Some(x), Some(y)) => sign_q((x * y) as i64),
        _ => Q::one(),
    }
}

/// Block permutation exchanging two consecutive label ranges.
fn swap_blocks(start: usize, len_a: usize, len_b: usize, total: usize) -> Perm {
    // labels start..start+len_a move behind the following len_b labels
    (1..=total)
        .map(|j| {
            if j >= start && j < start + len_a {
                j + len_b
            } else if j >= start + len_a && j < start + len_a + len_b {
                j - len_a
            } else {
                j
            }
        })
        .collect()
}

fn check(report: &mut Vec<String>, what: &str, lhs: Result<GraphSum>, rhs: Result<GraphSum>) {
    match (lhs, rhs) {
        (Ok(l), Ok(r)) => {
            if l != r {
                report.push(what.to_string());
            }
        }
        (Err(e), _) | (_, Err(e)) => report.push(format!("{what}: {e}")),
    }
}

/// Verify associativity and equivariance on every admissible combination of
/// an outer graph from `outers` with inner graphs from `inners`. Each
/// violation is described by one string.
pub fn check_operad_axioms_on(outers: &[GraphSum], inners: &[GraphSum]) -> Vec<String> {
    let mut report = Vec::new();
    for (ai, a) in outers.iter().enumerate() {
        for (bi, b) in inners.iter().enumerate() {
            check_equivariance(a, b, &mut report, ai, bi);
            for (ci, c) in inners.iter().enumerate() {
                let tag = format!("outer #{ai}, inner #{bi}, inner #{ci}");
                check_triple(a, b, c, &tag, &mut report);
            }
        }
    }
    report
}

/// All axioms on all triples drawn from one sample.
pub fn check_operad_axioms(sample: &[GraphSum]) -> Vec<String> {
    check_operad_axioms_on(sample, sample)
}

fn check_triple(a: &GraphSum, b: &GraphSum, c: &GraphSum, tag: &str, report: &mut Vec<String>) {
    let (m, p) = (a.sig.n_black, a.sig.n_white);
    let sign = koszul(b, c);
    if b.sig.out == Color::C {
        let nb = b.sig.n_black;
        for i in 1..=m {
            let ab = insert_c(a, i, b);
            if c.sig.out == Color::C {
                let nc = c.sig.n_black;
                for j in 1..=m + nb - 1 {
                    let lhs = ab.as_ref().map_err(clone_err).and_then(|x| insert_c(x, j, c));
                    if j >= i && j < i + nb {
                        let rhs = insert_c(b, j - i + 1, c).and_then(|bc| insert_c(a, i, &bc));
                        check(report, &format!("sequential c∘c ({tag}, i={i}, j={j})"), lhs, rhs);
                    } else {
                        let rhs = if j < i {
                            insert_c(a, j, c).and_then(|x| insert_c(&x, i + nc - 1, b))
                        } else {
                            insert_c(a, j - nb + 1, c).and_then(|x| insert_c(&x, i, b))
                        }
                        .map(|x| x.scale(&sign));
                        check(report, &format!("parallel c,c ({tag}, i={i}, j={j})"), lhs, rhs);
                    }
                }
            } else if a.sig.out == Color::O {
                for j in 1..=p {
                    let lhs = ab.as_ref().map_err(clone_err).and_then(|x| insert_o(x, j, c));
                    let rhs = insert_o(a, j, c)
                        .and_then(|x| insert_c(&x, i, b))
                        .map(|x| x.scale(&sign));
                    check(report, &format!("parallel c,o ({tag}, i={i}, j={j})"), lhs, rhs);
                }
            }
        }
    } else if a.sig.out == Color::O {
        let (nb, qb) = (b.sig.n_black, b.sig.n_white);
        for i in 1..=p {
            let ab = insert_o(a, i, b);
            if c.sig.out == Color::O && c.sig.n_white > 0 {
                for j in i..i + qb {
                    let lhs = ab.as_ref().map_err(clone_err).and_then(|x| insert_o(x, j, c));
                    let rhs = insert_o(b, j - i + 1, c).and_then(|bc| insert_o(a, i, &bc));
                    check(report, &format!("sequential o∘o ({tag}, i={i}, j={j})"), lhs, rhs);
                }
                // parallel white slots: the black blocks of b and c trade places
                let (nc, qc) = (c.sig.n_black, c.sig.n_white);
                for j in (1..i).chain(i + qb..=p + qb - 1) {
                    let lhs = ab.as_ref().map_err(clone_err).and_then(|x| insert_o(x, j, c));
                    let (jj, ii) = if j < i { (j, i + qc - 1) } else { (j - qb + 1, i) };
                    let swap = swap_blocks(m + 1, nc, nb, m + nb + nc);
                    let rhs = insert_o(a, jj, c)
                        .and_then(|x| insert_o(&x, ii, b))
                        .and_then(|x| x.relabel(&swap, &[], false))
                        .map(|x| x.scale(&sign));
                    check(report, &format!("parallel o,o ({tag}, i={i}, j={j})"), lhs, rhs);
                }
            }
            if c.sig.out == Color::C {
                for j in m + 1..=m + nb {
                    let lhs = ab.as_ref().map_err(clone_err).and_then(|x| insert_c(x, j, c));
                    let rhs = insert_c(b, j - m, c).and_then(|bc| insert_o(a, i, &bc));
                    check(report, &format!("sequential o∘c ({tag}, i={i}, j={j})"), lhs, rhs);
                }
            }
        }
    }
}

fn clone_err(e: &Error) -> Error {
    Error::Structure(e.to_string())
}

/// Relabel-then-insert against insert-then-relabel.
fn check_equivariance(a: &GraphSum, b: &GraphSum, report: &mut Vec<String>, ai: usize, bi: usize) {
    let m = a.sig.n_black;
    if b.sig.out == Color::C {
        let n = b.sig.n_black;
        for sigma in all_perms(m) {
            for i in 1..=m {
                let lhs = a
                    .relabel(&sigma, &[], false)
                    .and_then(|sa| insert_c(&sa, sigma[i - 1], b));
                // induced permutation on the m+n-1 labels of a ∘_i b
                let si = sigma[i - 1];
                let lift = |l: usize| if l > si { l + n - 1 } else { l };
                let induced: Perm = (1..=m + n - 1)
                    .map(|j| {
                        if j >= i && j < i + n {
                            si + (j - i)
                        } else {
                            let orig = if j < i { j } else { j - n + 1 };
                            lift(sigma[orig - 1])
                        }
                    })
                    .collect();
                let rhs = insert_c(a, i, b).and_then(|x| x.relabel(&induced, &[], false));
                check(report, &format!("equivariance outer (#{ai}, #{bi}, i={i})"), lhs, rhs);
            }
        }
        for rho in all_perms(n) {
            for i in 1..=m {
                let lhs = b.relabel(&rho, &[], false).and_then(|rb| insert_c(a, i, &rb));
                let induced: Perm = (1..=m + n - 1)
                    .map(|j| if j >= i && j < i + n { rho[j - i] + i - 1 } else { j })
                    .collect();
                let rhs = insert_c(a, i, b).and_then(|x| x.relabel(&induced, &[], false));
                check(report, &format!("equivariance inner (#{ai}, #{bi}, i={i})"), lhs, rhs);
            }
        }
    }
}
