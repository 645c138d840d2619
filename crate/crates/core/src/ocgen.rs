//! Generator corollas of the two-coloured operad OC and the quadratic
//! differential `D = D_Lie + D_As + D' + D''` on them.
//!
//! Every summand of `D(t)` is a two-vertex tree `τ(t_outer ∘_slot t_inner)`
//! whose vertex labels follow the insertion rules of KGra. White blocks are
//! always contiguous, so only black relabellings occur.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graphs::{Color, Endpoint};
use crate::operads::{identity, shuffles, Perm};
use crate::rat::{q, Q};

/// A generator corolla: `t^c_n` is `(n, 0, C)`, `t^o_k` is `(0, k, O)` and
/// `t^o_{n,k}` is `(n, k, O)` with `n >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CorollaSig {
    pub out: Color,
    pub n: usize,
    pub k: usize,
}

impl CorollaSig {
    pub fn mc(n: usize) -> Self {
        CorollaSig { out: Color::C, n, k: 0 }
    }

    pub fn mo(k: usize) -> Self {
        CorollaSig { out: Color::O, n: 0, k }
    }

    pub fn mo_nk(n: usize, k: usize) -> Self {
        CorollaSig { out: Color::O, n, k }
    }

    pub fn is_valid(&self) -> bool {
        match self.out {
            Color::C => self.n >= 2 && self.k == 0,
            Color::O => self.n >= 1 || self.k >= 2,
        }
    }

    pub fn arity(&self) -> usize {
        self.n + self.k
    }
}

impl fmt::Display for CorollaSig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.out, self.n) {
            (Color::C, n) => write!(f, "t^c_{n}"),
            (Color::O, 0) => write!(f, "t^o_{}", self.k),
            (Color::O, n) => write!(f, "t^o_{{{n},{}}}", self.k),
        }
    }
}

pub fn corolla_degree(s: CorollaSig) -> Result<i64> {
    if !s.is_valid() {
        return Err(Error::Structure(format!("no generator {s}")));
    }
    let (n, k) = (s.n as i64, s.k as i64);
    Ok(match (s.out, s.n) {
        (Color::C, _) => 3 - 2 * n,
        (Color::O, 0) => 2 - k,
        (Color::O, _) => 2 - 2 * n - k,
    })
}

fn deg(s: CorollaSig) -> i64 {
    corolla_degree(s).expect("valid generator")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Part {
    Lie,
    As,
    Prime,
    PrimePrime,
}

/// `coef * τ(outer ∘_{slot} inner)` with `τ` acting on black labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoVertexTerm {
    pub coef: i64,
    pub part: Part,
    pub outer: CorollaSig,
    pub inner: CorollaSig,
    pub slot: usize,
    pub slot_color: Color,
    pub tau: Perm,
}

fn as_sign(p: usize, q: usize, k: usize) -> i64 {
    // -(-1)^{p + (k-q)(q-p)}
    if (p + (k - q) * (q - p)) % 2 == 0 {
        -1
    } else {
        1
    }
}

fn alt(k: usize) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// All summands of `D(s)`.
pub fn oc_diff(s: CorollaSig) -> Result<Vec<TwoVertexTerm>> {
    if !s.is_valid() {
        return Err(Error::Structure(format!("no generator {s}")));
    }
    let mut out = Vec::new();
    let (n, k) = (s.n, s.k);
    let term = |coef, part, outer, inner, slot, slot_color, tau| TwoVertexTerm {
        coef,
        part,
        outer,
        inner,
        slot,
        slot_color,
        tau,
    };
    match (s.out, n) {
        (Color::C, _) => {
            for p in 2..n {
                for sh in shuffles(p, n - p) {
                    out.push(term(-1, Part::Lie, CorollaSig::mc(n - p + 1), CorollaSig::mc(p), 1, Color::C, sh.perm));
                }
            }
        }
        (Color::O, 0) => {
            for p in 0..=k {
                for qq in p + 2..=k {
                    let outer = CorollaSig::mo(k - qq + p + 1);
                    if outer.is_valid() {
                        out.push(term(as_sign(p, qq, k), Part::As, outer, CorollaSig::mo(qq - p), p + 1, Color::O, vec![]));
                    }
                }
            }
        }
        (Color::O, _) => {
            for p in 2..n {
                for sh in shuffles(p, n - p) {
                    out.push(term(alt(k), Part::Lie, CorollaSig::mo_nk(n - p + 1, k), CorollaSig::mc(p), 1, Color::C, sh.perm));
                }
            }
            for p in 0..=k {
                for qq in p + 2..=k {
                    out.push(term(
                        as_sign(p, qq, k),
                        Part::As,
                        CorollaSig::mo_nk(n, k - qq + p + 1),
                        CorollaSig::mo(qq - p),
                        p + 1,
                        Color::O,
                        identity(n),
                    ));
                }
            }
            for p in 0..=k {
                for qq in p..=k {
                    if qq - p + 1 > k {
                        continue;
                    }
                    out.push(term(
                        as_sign(p, qq, k),
                        Part::As,
                        CorollaSig::mo(k - qq + p + 1),
                        CorollaSig::mo_nk(n, qq - p),
                        p + 1,
                        Color::O,
                        identity(n),
                    ));
                }
            }
            if n >= 2 {
                out.push(term(alt(k), Part::Prime, CorollaSig::mo_nk(1, k), CorollaSig::mc(n), 1, Color::C, identity(n)));
                for r in 1..n {
                    for sh in shuffles(r, n - r) {
                        for p in 0..=k {
                            for qq in p..=k {
                                out.push(term(
                                    as_sign(p, qq, k),
                                    Part::PrimePrime,
                                    CorollaSig::mo_nk(r, k - qq + p + 1),
                                    CorollaSig::mo_nk(n - r, qq - p),
                                    p + 1,
                                    Color::O,
                                    sh.perm.clone(),
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Every valid generator with `n + k <= max_total_arity`.
pub fn generators(max_total_arity: usize) -> Vec<CorollaSig> {
    let mut out = Vec::new();
    for total in 1..=max_total_arity {
        for n in 0..=total {
            let k = total - n;
            for s in [CorollaSig::mc(n), CorollaSig::mo_nk(n, k)] {
                if s.is_valid() && s.arity() == total && !out.contains(&s) {
                    out.push(s);
                }
            }
        }
    }
    out
}

/// Trees in the free operad on the generators, used to extend `D` by the
/// Leibniz rule. Vertices carry ids so that Koszul signs can be tracked.
mod tree {
    use super::*;

    #[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
    pub enum Tree {
        Leaf(Endpoint),
        Node { id: usize, sig: CorollaSig, black: Vec<Tree>, white: Vec<Tree> },
    }

    impl Tree {
        pub fn corolla(sig: CorollaSig) -> Tree {
            Tree::Node {
                id: 0,
                sig,
                black: (1..=sig.n).map(|l| Tree::Leaf(Endpoint::Black(l as u8))).collect(),
                white: (1..=sig.k).map(|l| Tree::Leaf(Endpoint::White(l as u8))).collect(),
            }
        }

        fn min_black(&self) -> usize {
            match self {
                Tree::Leaf(Endpoint::Black(l)) => *l as usize,
                Tree::Leaf(Endpoint::White(_)) => usize::MAX,
                Tree::Node { black, white, .. } => black
                    .iter()
                    .chain(white.iter())
                    .map(Tree::min_black)
                    .min()
                    .unwrap_or(usize::MAX),
            }
        }

        /// Sort black children by smallest black leaf below them.
        pub fn canon(&mut self) {
            if let Tree::Node { black, white, .. } = self {
                for c in black.iter_mut().chain(white.iter_mut()) {
                    c.canon();
                }
                black.sort_by_key(Tree::min_black);
            }
        }

        pub fn preorder(&self, out: &mut Vec<(usize, i64)>) {
            if let Tree::Node { id, sig, black, white } = self {
                out.push((*id, deg(*sig)));
                for c in black.iter().chain(white.iter()) {
                    c.preorder(out);
                }
            }
        }

        /// Renumber vertex ids in preorder.
        pub fn renumber(&mut self, next: &mut usize) {
            if let Tree::Node { id, black, white, .. } = self {
                *id = *next;
                *next += 1;
                for c in black.iter_mut().chain(white.iter_mut()) {
                    c.renumber(next);
                }
            }
        }

        pub fn strip(&mut self) {
            let mut z = 0;
            self.renumber(&mut z);
            self.zero_ids();
        }

        fn zero_ids(&mut self) {
            if let Tree::Node { id, black, white, .. } = self {
                *id = 0;
                for c in black.iter_mut().chain(white.iter_mut()) {
                    c.zero_ids();
                }
            }
        }

        fn map_black(&mut self, tau: &[usize]) {
            match self {
                Tree::Leaf(Endpoint::Black(l)) => *l = tau[*l as usize - 1] as u8,
                Tree::Leaf(_) => {}
                Tree::Node { black, white, .. } => {
                    for c in black.iter_mut().chain(white.iter_mut()) {
                        c.map_black(tau);
                    }
                }
            }
        }

        /// Replace leaves by the given subtrees.
        fn substitute(self, bl: &[Tree], wh: &[Tree]) -> Tree {
            match self {
                Tree::Leaf(Endpoint::Black(l)) => bl[l as usize - 1].clone(),
                Tree::Leaf(Endpoint::White(l)) => wh[l as usize - 1].clone(),
                Tree::Node { id, sig, black, white } => Tree::Node {
                    id,
                    sig,
                    black: black.into_iter().map(|c| c.substitute(bl, wh)).collect(),
                    white: white.into_iter().map(|c| c.substitute(bl, wh)).collect(),
                },
            }
        }

        /// Replace the vertex with id `v` using `f`.
        fn replace(self, v: usize, f: &dyn Fn(&Tree) -> Tree) -> Tree {
            match self {
                Tree::Node { id, .. } if id == v => f(&self),
                Tree::Node { id, sig, black, white } => Tree::Node {
                    id,
                    sig,
                    black: black.into_iter().map(|c| c.replace(v, f)).collect(),
                    white: white.into_iter().map(|c| c.replace(v, f)).collect(),
                },
                leaf => leaf,
            }
        }
    }

    /// The tree of a two-vertex term with vertex ids `o` and `i`.
    pub fn two_vertex(t: &TwoVertexTerm, o: usize, i: usize) -> Tree {
        let (no, ko, ni, ki) = (t.outer.n, t.outer.k, t.inner.n, t.inner.k);
        let b = |l: usize| Tree::Leaf(Endpoint::Black(l as u8));
        let w = |l: usize| Tree::Leaf(Endpoint::White(l as u8));
        let s = t.slot;
        let mut tree = match t.slot_color {
            Color::C => {
                let inner = Tree::Node { id: i, sig: t.inner, black: (s..s + ni).map(b).collect(), white: vec![] };
                let mut black: Vec<Tree> = (1..=no)
                    .map(|j| if j < s { b(j) } else { b(j + ni - 1) })
                    .collect();
                black[s - 1] = inner;
                Tree::Node { id: o, sig: t.outer, black, white: (1..=ko).map(w).collect() }
            }
            Color::O => {
                let inner = Tree::Node {
                    id: i,
                    sig: t.inner,
                    black: (no + 1..=no + ni).map(b).collect(),
                    white: (s..s + ki).map(w).collect(),
                };
                let mut white: Vec<Tree> = (1..=ko)
                    .map(|j| if j < s { w(j) } else { w(j + ki - 1) })
                    .collect();
                white[s - 1] = inner;
                Tree::Node { id: o, sig: t.outer, black: (1..=no).map(b).collect(), white }
            }
        };
        if !t.tau.is_empty() {
            tree.map_black(&t.tau);
        }
        tree
    }

    fn koszul(reference: &[(usize, i64)], target: &[(usize, i64)]) -> i64 {
        let pos: BTreeMap<usize, usize> = target.iter().enumerate().map(|(p, (id, _))| (*id, p)).collect();
        let odd: Vec<usize> = reference
            .iter()
            .filter(|(_, d)| d.rem_euclid(2) == 1)
            .map(|(id, _)| pos[id])
            .collect();
        let mut inv = 0;
        for a in 0..odd.len() {
            for b in a + 1..odd.len() {
                if odd[a] > odd[b] {
                    inv += 1;
                }
            }
        }
        if inv % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub type TreeSum = BTreeMap<Tree, Q>;

    /// Apply the parts of `D` in `parts` to every vertex of every tree.
    pub fn apply(parts: &[Part], x: &TreeSum) -> TreeSum {
        let mut out = TreeSum::new();
        for (t0, c) in x {
            let mut t = t0.clone();
            let mut next = 0;
            t.renumber(&mut next);
            let mut factors = Vec::new();
            t.preorder(&mut factors);
            let (o_id, i_id) = (next, next + 1);
            let mut before = 0i64;
            for (pos, &(v, dv)) in factors.iter().enumerate() {
                let leibniz = if before.rem_euclid(2) == 0 { 1 } else { -1 };
                before += dv;
                let sig = find_sig(&t, v);
                for term in oc_diff(sig).expect("valid generator") {
                    if !parts.contains(&term.part) {
                        continue;
                    }
                    let two = two_vertex(&term, o_id, i_id);
                    let mut new = t.clone().replace(v, &|node| match node {
                        Tree::Node { black, white, .. } => two.clone().substitute(black, white),
                        leaf => leaf.clone(),
                    });
                    new.canon();
                    let mut reference: Vec<(usize, i64)> = factors[..pos].to_vec();
                    reference.push((o_id, deg(term.outer)));
                    reference.push((i_id, deg(term.inner)));
                    reference.extend_from_slice(&factors[pos + 1..]);
                    let mut target = Vec::new();
                    new.preorder(&mut target);
                    let sign = leibniz * koszul(&reference, &target) * term.coef;
                    new.strip();
                    let e = out.entry(new).or_insert_with(Q::zero);
                    *e += c * q(sign);
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    fn find_sig(t: &Tree, v: usize) -> CorollaSig {
        fn go(t: &Tree, v: usize) -> Option<CorollaSig> {
            match t {
                Tree::Node { id, sig, .. } if *id == v => Some(*sig),
                Tree::Node { black, white, .. } => black.iter().chain(white.iter()).find_map(|c| go(c, v)),
                Tree::Leaf(_) => None,
            }
        }
        go(t, v).expect("vertex present")
    }
}

pub use tree::Tree;

fn generator_sum(s: CorollaSig) -> tree::TreeSum {
    let mut m = tree::TreeSum::new();
    m.insert(Tree::corolla(s), q(1));
    m
}

fn add_into(acc: &mut tree::TreeSum, x: tree::TreeSum) {
    for (t, c) in x {
        let e = acc.entry(t).or_insert_with(Q::zero);
        *e += c;
    }
    acc.retain(|_, v| !v.is_zero());
}

/// `Σ_i A_i ∘ B_i` applied to the generator `s`.
fn composite(s: CorollaSig, pairs: &[(&[Part], &[Part])]) -> tree::TreeSum {
    let gen = generator_sum(s);
    let mut acc = tree::TreeSum::new();
    for (a, b) in pairs {
        let inner = tree::apply(b, &gen);
        add_into(&mut acc, tree::apply(a, &inner));
    }
    acc
}

/// Number of three-vertex trees in `D(D(s))` that fail to cancel, per
/// identity. An empty report means every identity holds.
pub fn check_d_squared(max_total_arity: usize) -> Vec<String> {
    const AS: &[Part] = &[Part::As];
    const LP: &[Part] = &[Part::Lie, Part::Prime];
    const PP: &[Part] = &[Part::PrimePrime];
    const ALL: &[Part] = &[Part::Lie, Part::As, Part::Prime, Part::PrimePrime];
    let identities: [(&str, Vec<(&[Part], &[Part])>); 6] = [
        ("(D_As)^2", vec![(AS, AS)]),
        ("(D_Lie + D')^2", vec![(LP, LP)]),
        ("D_As (D_Lie + D') + (D_Lie + D') D_As", vec![(AS, LP), (LP, AS)]),
        ("(D_Lie + D') D'' + D'' (D_Lie + D')", vec![(LP, PP), (PP, LP)]),
        ("D_As D'' + D'' D_As + D'' D''", vec![(AS, PP), (PP, AS), (PP, PP)]),
        ("D^2", vec![(ALL, ALL)]),
    ];
    let mut report = Vec::new();
    for s in generators(max_total_arity) {
        for (name, pairs) in &identities {
            let r = composite(s, pairs);
            if !r.is_empty() {
                report.push(format!("{name} on {s}: {} surviving trees", r.len()));
            }
        }
    }
    report
}

/// `D(s)` restricted to `parts`, as a map from trees to coefficients.
pub fn d_trees(s: CorollaSig, parts: &[Part]) -> BTreeMap<Tree, Q> {
    tree::apply(parts, &generator_sum(s))
}
