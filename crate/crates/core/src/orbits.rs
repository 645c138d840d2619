//! Orbits of labelled graphs under relabelling, and the invariant bases built
//! from them.
//!
//! The group is S_n on black labels, optionally times S_k on white labels.
//! White permutations may act through the sign character.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::{One, Zero};

use crate::graphs::{perm_sign, relabel_raw, sort_edges, DirGraph, Endpoint, GraphSum, Signature};
use crate::operads::{all_perms, Perm};
use crate::rat::{q, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WhiteAction {
    /// White labels are fixed.
    Fixed,
    /// White permutations act and contribute their sign.
    Signed,
}

/// Relabelling group for one signature, with every element precomputed.
#[derive(Clone, Debug)]
pub struct Group {
    pub elems: Vec<(Perm, Perm, i8)>,
    white: WhiteAction,
}

impl Group {
    pub fn new(n: usize, k: usize, white: WhiteAction) -> Group {
        let whites: Vec<(Perm, i8)> = match white {
            WhiteAction::Fixed => vec![(Vec::new(), 1)],
            WhiteAction::Signed => all_perms(k).into_iter().map(|p| {
                let s = perm_sign(&p);
                (p, s)
            }).collect(),
        };
        let mut elems = Vec::new();
        for sb in all_perms(n) {
            for (sw, s) in &whites {
                elems.push((sb.clone(), sw.clone(), *s));
            }
        }
        Group { elems, white }
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    /// `g` acted on by one element: graph in canonical order with sign.
    fn act(&self, g: &DirGraph, ix: usize) -> Option<(DirGraph, i8)> {
        let (sb, sw, ws) = &self.elems[ix];
        let mut h = relabel_raw(g, sb, sw);
        sort_edges(&mut h.edges).map(|s| (h, s * ws))
    }

    /// Canonical element of the orbit of `g` with the sign relating them:
    /// some group element `h` has `h·g = sign * rep`. Also reports whether
    /// the orbit sum survives (no stabilizer element acts by -1).
    ///
    /// Vertices are first sorted by local invariants; only relabellings
    /// that keep the sorted blocks are then searched, which is enough since
    /// the stabilizer of the sorted graph lies in that subgroup.
    pub fn orbit_rep(&self, g: &DirGraph) -> OrbitInfo {
        let signed = self.white == WhiteAction::Signed;
        let (pb, blocks_b) = sort_by_invariants(black_invariants(g));
        let (pw, blocks_w) = if signed {
            sort_by_invariants(white_invariants(g))
        } else {
            (Vec::new(), Vec::new())
        };
        let mut h0 = relabel_raw(g, &pb, &pw);
        let Some(mut s0) = sort_edges(&mut h0.edges) else {
            unreachable!("relabelling keeps edges distinct")
        };
        if signed {
            s0 *= perm_sign(&pw);
        }
        let whites = if signed { block_perms(&blocks_w) } else { vec![Vec::new()] };
        let mut best: Option<(DirGraph, i8)> = None;
        let mut stab = 0;
        let mut alive = true;
        let mut h = h0.clone();
        for sb in block_perms(&blocks_b) {
            for sw in &whites {
                relabel_into(&h0, &sb, sw, &mut h);
                let Some(mut s) = sort_edges(&mut h.edges) else { continue };
                if signed {
                    s *= perm_sign(sw);
                }
                if h.edges == h0.edges {
                    stab += 1;
                    alive &= s == 1;
                }
                match &best {
                    Some((b, _)) if h.edges >= b.edges => {}
                    _ => best = Some((h.clone(), s * s0)),
                }
            }
        }
        let (rep, sign) = best.expect("identity keeps a canonical graph");
        OrbitInfo { rep, sign, alive, orbit_size: self.order() / stab }
    }

    /// Normalized orbit vector: coefficient one on the representative.
    pub fn orbit_vector(&self, rep: &DirGraph) -> Option<GraphSum> {
        let mut images: BTreeMap<DirGraph, i8> = BTreeMap::new();
        for ix in 0..self.elems.len() {
            if let Some((h, s)) = self.act(rep, ix) {
                if let Some(&s0) = images.get(&h) {
                    if s0 != s {
                        return None;
                    }
                } else {
                    images.insert(h, s);
                }
            }
        }
        let mut out = GraphSum::zero(rep.signature());
        for (h, s) in images {
            out.add_canonical(h, &q(s as i64));
        }
        Some(out)
    }

    /// `(1/|G|) Σ_g g·x`.
    pub fn project(&self, x: &GraphSum) -> GraphSum {
        let mut out = GraphSum::zero(x.sig);
        let w = Q::one() / q(self.order() as i64);
        for (g, c) in x.iter() {
            let cw = c * &w;
            for ix in 0..self.elems.len() {
                if let Some((h, s)) = self.act(g, ix) {
                    out.add_canonical(h, &(&cw * q(s as i64)));
                }
            }
        }
        out
    }

    /// Stabilizer order of a canonical graph.
    pub fn stabilizer(&self, g: &DirGraph) -> usize {
        (0..self.elems.len())
            .filter(|&ix| self.act(g, ix).is_some_and(|(h, _)| h == *g))
            .count()
    }
}

fn black_invariants(g: &DirGraph) -> Vec<[usize; 4]> {
    let mut inv = vec![[0; 4]; g.n_black];
    for &(s, t) in &g.edges {
        let a = s.label() - 1;
        match t {
            Endpoint::Black(b) if b as usize - 1 == a => inv[a][3] += 1,
            Endpoint::Black(b) => {
                inv[a][0] += 1;
                inv[b as usize - 1][2] += 1;
            }
            Endpoint::White(_) => inv[a][1] += 1,
        }
    }
    inv
}

fn white_invariants(g: &DirGraph) -> Vec<[usize; 4]> {
    let mut inv = vec![[0; 4]; g.n_white];
    for &(_, t) in &g.edges {
        if let Endpoint::White(w) = t {
            inv[w as usize - 1][0] += 1;
        }
    }
    inv
}

/// Relabelling that sorts vertices by invariant (stable), and the blocks of
/// equal invariants as `(start, len)` in the new positions.
fn sort_by_invariants(inv: Vec<[usize; 4]>) -> (Perm, Vec<(usize, usize)>) {
    let order: Vec<usize> = (0..inv.len()).sorted_by_key(|&v| inv[v]).collect();
    let mut perm = vec![0; inv.len()];
    for (pos, &v) in order.iter().enumerate() {
        perm[v] = pos + 1;
    }
    let blocks = order
        .iter()
        .map(|&v| inv[v])
        .dedup_with_count()
        .scan(0, |start, (len, _)| {
            let b = (*start, len);
            *start += len;
            Some(b)
        })
        .collect();
    (perm, blocks)
}

/// Every permutation preserving the blocks, as 1-based images.
fn block_perms(blocks: &[(usize, usize)]) -> Vec<Perm> {
    let mut out = vec![Vec::new()];
    for &(start, len) in blocks {
        let local: Vec<Perm> = all_perms(len);
        out = out
            .into_iter()
            .flat_map(|p| local.iter().map(move |l| {
                let mut q = p.clone();
                q.extend(l.iter().map(|&x| x + start));
                q
            }))
            .collect();
    }
    out
}

fn relabel_into(g: &DirGraph, sb: &[usize], sw: &[usize], out: &mut DirGraph) {
    use crate::graphs::Endpoint;
    let map = |v: Endpoint| match v {
        Endpoint::Black(l) if !sb.is_empty() => Endpoint::Black(sb[l as usize - 1] as u8),
        Endpoint::White(l) if !sw.is_empty() => Endpoint::White(sw[l as usize - 1] as u8),
        v => v,
    };
    out.edges.clear();
    out.edges.extend(g.edges.iter().map(|&(s, t)| (map(s), map(t))));
}

/// Coordinates of the projection of `x`, keyed by orbit representative.
/// With `g = sign * h·rep` the projection of `g` is `sign / |orbit|` times
/// the normalized orbit vector of `rep`.
pub fn projected_rep_coords(group: &Group, x: &GraphSum) -> BTreeMap<DirGraph, Q> {
    let mut out: BTreeMap<DirGraph, Q> = BTreeMap::new();
    for (g, c) in x.iter() {
        let info = group.orbit_rep(g);
        if !info.alive {
            continue;
        }
        let v = c * q(info.sign as i64) / q(info.orbit_size as i64);
        *out.entry(info.rep).or_insert_with(Q::zero) += v;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

#[derive(Clone, Debug)]
pub struct OrbitInfo {
    pub rep: DirGraph,
    pub sign: i8,
    pub alive: bool,
    pub orbit_size: usize,
}

/// Basis of the invariant subspace spanned by `graphs`: one normalized orbit
/// vector per surviving orbit, keyed by its representative.
#[derive(Clone, Debug)]
pub struct InvariantBasis {
    pub sig: Signature,
    pub reps: Vec<DirGraph>,
    pub index: BTreeMap<DirGraph, usize>,
    pub group: Group,
}

impl InvariantBasis {
    pub fn from_graphs(sig: Signature, graphs: impl IntoIterator<Item = DirGraph>, group: Group) -> Self {
        let mut reps = Vec::new();
        for g in graphs {
            let info = group.orbit_rep(&g);
            if info.rep == g && info.alive {
                reps.push(g);
            }
        }
        let index = reps.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
        InvariantBasis { sig, reps, index, group }
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn vector(&self, i: usize) -> GraphSum {
        self.group.orbit_vector(&self.reps[i]).expect("surviving orbit")
    }

    /// Coordinates of an invariant sum: the coefficient of each
    /// representative.
    pub fn coords(&self, x: &GraphSum) -> BTreeMap<usize, Q> {
        x.iter()
            .filter_map(|(g, c)| self.index.get(g).map(|&i| (i, c.clone())))
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }

    /// Coordinates of the projection of an arbitrary sum.
    pub fn projected_coords(&self, x: &GraphSum) -> BTreeMap<usize, Q> {
        projected_rep_coords(&self.group, x)
            .into_iter()
            .filter_map(|(g, c)| self.index.get(&g).map(|&i| (i, c)))
            .collect()
    }

    pub fn from_coords(&self, coords: &BTreeMap<usize, Q>) -> GraphSum {
        let mut out = GraphSum::zero(self.sig);
        for (&i, c) in coords {
            out.add_scaled(&self.vector(i), c).expect("same signature");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{enumerate_basis, Color};

    #[test]
    fn edge_orbit() {
        let grp = Group::new(2, 0, WhiteAction::Fixed);
        let b = InvariantBasis::from_graphs(
            Signature::new(2, 0, Color::C),
            enumerate_basis(2, 0, 1, Color::C, false),
            grp,
        );
        // {1->2, 2->1} and {1->1, 2->2}
        assert_eq!(b.dim(), 2);
    }

    #[test]
    fn projected_coords_match_projection() {
        let grp = Group::new(3, 0, WhiteAction::Fixed);
        let basis = InvariantBasis::from_graphs(
            Signature::new(3, 0, Color::C),
            enumerate_basis(3, 0, 2, Color::C, false),
            grp.clone(),
        );
        for g in enumerate_basis(3, 0, 2, Color::C, false) {
            let x = GraphSum::from_graph(&g).unwrap();
            let p = grp.project(&x);
            assert_eq!(basis.coords(&p), basis.projected_coords(&x));
        }
    }
}
