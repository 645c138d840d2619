use graphcx::dfgc::*;
use graphcx::graphs::{enumerate_basis, GraphSum};
use graphcx::rat::q;
use graphcx::{Color, DirGraph, Error};
use proptest::prelude::*;

fn el(s: GraphSum) -> DfgcElement {
    DfgcElement::from_sum(s, 5)
}

fn arb_invariant(max_n: usize, max_e: usize) -> impl Strategy<Value = GraphSum> {
    (1..=max_n)
        .prop_flat_map(move |n| (Just(n), 0..=max_e.min(n * n)))
        .prop_flat_map(|(n, e)| proptest::sample::select(enumerate_basis(n, 0, e, Color::C, false)))
        .prop_map(|g| symmetrize(&GraphSum::from_graph(&g).unwrap()))
        .prop_filter("orbit sum vanishes", |x| !x.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn symmetrize_is_idempotent(x in arb_invariant(4, 4)) {
        prop_assert_eq!(symmetrize(&x), x);
    }

    #[test]
    fn differential_raises_degree(x in arb_invariant(3, 4)) {
        let f = el(x);
        let d = differential(&f);
        prop_assume!(!d.is_zero());
        prop_assert_eq!(d.degree().unwrap(), f.degree().unwrap() + 1);
    }

    #[test]
    fn differential_squares_to_zero(x in arb_invariant(3, 4)) {
        prop_assert!(differential(&differential(&el(x))).is_zero());
    }

    #[test]
    fn jacobi(a in arb_invariant(2, 3), b in arb_invariant(2, 3), c in arb_invariant(2, 2)) {
        let (f, g, h) = (el(a), el(b), el(c));
        let (df, dg) = (f.degree().unwrap(), g.degree().unwrap());
        let lhs = bracket(&f, &bracket(&g, &h));
        let rhs = bracket(&bracket(&f, &g), &h)
            .add(&bracket(&g, &bracket(&f, &h)).scale(&q(if (df * dg) % 2 == 0 { 1 } else { -1 })));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn antisymmetry(a in arb_invariant(3, 3), b in arb_invariant(3, 3)) {
        let (f, g) = (el(a), el(b));
        let s = if (f.degree().unwrap() * g.degree().unwrap()) % 2 == 0 { -1 } else { 1 };
        prop_assert_eq!(bracket(&f, &g), bracket(&g, &f).scale(&q(s)));
    }
}

#[test]
fn calibration_identities() {
    let e = el(gamma_edge());
    assert!(bracket(&e, &e).is_zero());
    assert_eq!(bracket(&e, &el(gamma_bullet())), e);
    assert_eq!(differential(&el(gamma_bullet())), e);
    assert!(bracket(&e, &el(gamma_loop())).is_zero());
    assert!(differential(&el(tetrahedron())).is_zero());
    assert!(bracket(&e, &DfgcElement::zero(5)).is_zero());
}

#[test]
fn tetrahedron_is_invariant() {
    assert_eq!(symmetrize(&tetrahedron()), tetrahedron());
    assert_eq!(el(tetrahedron()).degree(), Some(0));
}

#[test]
fn exactness_examples() {
    let w = exactness_witness(&gamma_edge(), false).unwrap().expect("edge is exact");
    assert_eq!(differential(&w), el(gamma_edge()));
    assert!(exactness_witness(&gamma_loop(), false).unwrap().is_none());
    assert!(exactness_witness(&tetrahedron(), false).unwrap().is_none());
    // the edge graph is a boundary in the loopless complex too
    assert!(exactness_witness(&gamma_edge(), true).unwrap().is_some());
}

#[test]
fn witnesses_for_constructed_boundaries() {
    for (n, e) in [(2, 1), (2, 2), (3, 2), (3, 3)] {
        for g in enumerate_basis(n, 0, e, Color::C, false) {
            let psi = el(symmetrize(&GraphSum::from_graph(&g).unwrap()));
            let d = differential(&psi);
            let Some(comp) = d.comps.get(&(n + 1)) else { continue };
            let w = exactness_witness(comp, false).unwrap().expect("boundary has a witness");
            assert_eq!(differential(&w), d);
        }
    }
}

#[test]
fn small_cohomology() {
    assert_eq!(cohomology_dim(1, 1, false).unwrap(), 1);
    assert_eq!(cohomology_dim(2, 3, false).unwrap(), 0);
    assert_eq!(cohomology_dim(1, 1, true).unwrap(), 0);
    assert_eq!(cohomology_dim(0, 0, false).unwrap(), 0);
    assert!(matches!(cohomology_dim(6, 2, false), Err(Error::Resource(_))));
    assert!(matches!(cohomology_dim_with(3, 4, false, Some(1)), Err(Error::Resource(_))));
}

#[test]
fn loop_detection() {
    assert!(has_loops(&el(gamma_loop())));
    assert!(!has_loops(&el(tetrahedron())));
    let _ = DirGraph::black(1, &[]);
}
