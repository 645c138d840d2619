use std::collections::BTreeSet;

use graphcx::graphs::*;
use graphcx::operads::{all_perms, compose};
use graphcx::rat::q;
use itertools::Itertools;
use proptest::prelude::*;

/// Endpoint pairs with a black source, listed without reference to the
/// crate's own edge pool.
fn pairs(n: u8, k: u8) -> Vec<Edge> {
    let targets: Vec<Endpoint> = (1..=n).map(Endpoint::Black).chain((1..=k).map(Endpoint::White)).collect();
    (1..=n)
        .flat_map(|s| targets.iter().map(move |&t| (Endpoint::Black(s), t)))
        .collect()
}

fn arb_graph() -> impl Strategy<Value = DirGraph> {
    (1u8..=4, 0u8..=2, any::<bool>())
        .prop_flat_map(|(n, k, c)| {
            let pool = pairs(n, k);
            let len = pool.len().min(6);
            (Just((n, k, c)), proptest::sample::subsequence(pool, 0..=len).prop_shuffle())
        })
        .prop_map(|((n, k, c), edges)| {
            let out = if k == 0 && c { Color::C } else { Color::O };
            DirGraph::new(n as usize, k as usize, out, edges)
        })
}

proptest! {
    #[test]
    fn canonical_form_is_idempotent(g in arb_graph()) {
        let c = canonicalize(&g).unwrap().unwrap();
        let again = canonicalize(&c.graph).unwrap().unwrap();
        prop_assert_eq!(again.sign, 1);
        prop_assert_eq!(again.graph, c.graph);
    }

    #[test]
    fn edge_permutation_multiplies_by_parity(g in arb_graph(), seed in any::<u64>()) {
        let e = g.edges.len();
        let perms = all_perms(e);
        let p = &perms[(seed as usize) % perms.len()];
        let h = DirGraph::new(g.n_black, g.n_white, g.out, p.iter().map(|&i| g.edges[i - 1]).collect());
        let a = canonicalize(&g).unwrap().unwrap();
        let b = canonicalize(&h).unwrap().unwrap();
        prop_assert_eq!(&a.graph, &b.graph);
        prop_assert_eq!(b.sign, a.sign * perm_sign(p));
    }

    #[test]
    fn relabelling_is_a_group_action(g in arb_graph(), s1 in any::<u64>(), s2 in any::<u64>()) {
        let bp = all_perms(g.n_black);
        let wp = all_perms(g.n_white);
        let (sb, tb) = (&bp[s1 as usize % bp.len()], &bp[s2 as usize % bp.len()]);
        let (sw, tw) = (&wp[s2 as usize % wp.len()], &wp[s1 as usize % wp.len()]);
        let x = GraphSum::from_graph(&g).unwrap();
        for white_sign in [false, true] {
            let two_steps = x.relabel(sb, sw, white_sign).unwrap().relabel(tb, tw, white_sign).unwrap();
            let one_step = x.relabel(&compose(tb, sb), &compose(tw, sw), white_sign).unwrap();
            prop_assert_eq!(two_steps, one_step);
        }
    }

    #[test]
    fn sum_minus_itself_is_empty(g in arb_graph()) {
        let x = GraphSum::from_graph(&g).unwrap().scale(&q(3));
        prop_assert!(x.add(&x.scale(&q(-1))).unwrap().is_empty());
    }
}

#[test]
fn basis_matches_brute_force() {
    for n in 0..=3u8 {
        for k in 0..=3 - n {
            for e in 0..=3 {
                for out in [Color::C, Color::O] {
                    if (out == Color::C && (k > 0 || n == 0)) || (n == 0 && e > 0) {
                        continue;
                    }
                    let oracle: BTreeSet<Vec<Edge>> = pairs(n, k)
                        .into_iter()
                        .combinations(e)
                        .map(|mut es| {
                            es.sort();
                            es
                        })
                        .collect();
                    let got: BTreeSet<Vec<Edge>> = enumerate_basis(n as usize, k as usize, e, out, false)
                        .into_iter()
                        .map(|g| g.edges)
                        .collect();
                    assert_eq!(got, oracle, "n={n} k={k} e={e}");
                }
            }
        }
    }
}

#[test]
fn two_vertex_one_edge_basis() {
    assert_eq!(enumerate_basis(2, 0, 1, Color::C, false).len(), 4);
    assert_eq!(enumerate_basis(1, 0, 1, Color::C, false), vec![DirGraph::black(1, &[(1, 1)])]);
    assert!(enumerate_basis(1, 0, 1, Color::C, true).is_empty());
}

#[test]
fn swap_matches_direct_rewrite() {
    // edges 1->2, 2->3, 3->1 with the first two labels swapped by hand
    let g = DirGraph::black(3, &[(1, 2), (2, 3), (3, 1)]);
    let by_hand = canonicalize(&DirGraph::black(3, &[(2, 1), (1, 3), (3, 2)])).unwrap().unwrap();
    let r = relabel(&canonicalize(&g).unwrap().unwrap().graph, &[2, 1, 3], &[], false).unwrap().unwrap();
    assert_eq!(r, by_hand);
}

#[test]
fn white_sign_flips_transpositions() {
    use Endpoint::{Black as B, White as W};
    let g = DirGraph::new(1, 2, Color::O, vec![(B(1), W(1))]);
    let plain = relabel(&g, &[], &[2, 1], false).unwrap().unwrap();
    let signed = relabel(&g, &[], &[2, 1], true).unwrap().unwrap();
    assert_eq!(plain.graph, signed.graph);
    assert_eq!(plain.sign, -signed.sign);
}

#[test]
fn pikes_and_valencies_of_brooms() {
    use Endpoint::{Black as B, White as W};
    for k in 1..=4u8 {
        let broom = DirGraph::new(1, k as usize, Color::O, (1..=k).map(|j| (B(1), W(j))).collect());
        assert_eq!(count_pikes(&broom), 0);
        assert_eq!(white_valencies(&broom), vec![1; k as usize]);
    }
    // the broom with white 1 blackened: black 2 is the new pike
    let g = DirGraph::new(2, 1, Color::O, vec![(B(1), B(2)), (B(1), W(1))]);
    assert_eq!(count_pikes(&g), 1);
    assert_eq!(count_pikes(&DirGraph::black(2, &[])), 0);
    assert!(has_loop(&DirGraph::black(1, &[(1, 1)])));
}

#[test]
fn malformed_graphs_are_rejected() {
    use Endpoint::{Black as B, White as W};
    assert!(canonicalize(&DirGraph::new(1, 1, Color::O, vec![(W(1), B(1))])).is_err());
    assert!(canonicalize(&DirGraph::black(2, &[(1, 3)])).is_err());
    assert!(canonicalize(&DirGraph::new(1, 1, Color::C, vec![])).is_err());
}
