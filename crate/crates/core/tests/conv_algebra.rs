use graphcx::conv::*;
use graphcx::dfgc::{bracket, symmetrize, tetrahedron, DfgcElement};
use graphcx::graphs::GraphSum;
use graphcx::ocgen::CorollaSig;
use graphcx::rat::{frac, q, sign_q};
use graphcx::Color;
use proptest::prelude::*;

const CUT: (usize, usize) = (4, 3);

fn any_element(seed: u64, degree: i64) -> ConvElement {
    random_element(seed, degree, CUT, 4, 0.12, |_| true)
}

fn admissible(seed: u64) -> ConvElement {
    random_admissible(seed, CUT, 4, 0.12)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn pre_lie_identity(seed in any::<u64>(), a in -1i64..=1, b in -1i64..=1, c in -1i64..=1) {
        let f = any_element(seed, a);
        let g = any_element(seed ^ 1, b);
        let h = any_element(seed ^ 2, c);
        let lhs = pre_lie(&pre_lie(&f, &g), &h).sub(&pre_lie(&f, &pre_lie(&g, &h)));
        let rhs = pre_lie(&pre_lie(&f, &h), &g).sub(&pre_lie(&f, &pre_lie(&h, &g)));
        prop_assert_eq!(lhs, rhs.scale(&sign_q(b * c)));
    }

    #[test]
    fn jacobi(seed in any::<u64>(), a in -1i64..=1, b in -1i64..=1, c in -1i64..=1) {
        let f = any_element(seed, a);
        let g = any_element(seed ^ 1, b);
        let h = any_element(seed ^ 2, c);
        let lhs = conv_bracket(&f, &conv_bracket(&g, &h));
        let rhs = conv_bracket(&conv_bracket(&f, &g), &h)
            .add(&conv_bracket(&g, &conv_bracket(&f, &h)).scale(&sign_q(a * b)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn graded_antisymmetry(seed in any::<u64>(), a in -1i64..=1, b in -1i64..=1) {
        let f = any_element(seed, a);
        let g = any_element(seed ^ 1, b);
        prop_assert_eq!(conv_bracket(&f, &g), conv_bracket(&g, &f).scale(&-sign_q(a * b)));
    }

    #[test]
    fn filtration_is_compatible(seed in any::<u64>(), a in -1i64..=1, b in -1i64..=1) {
        let f = any_element(seed, a);
        let g = any_element(seed ^ 1, b);
        let fg = conv_bracket(&f, &g);
        if !fg.is_zero() {
            prop_assert!(filtration_level(&fg) >= filtration_level(&f) + filtration_level(&g));
        }
    }

    #[test]
    fn admissible_form_a_subalgebra(seed in any::<u64>()) {
        let x = admissible(seed);
        let y = admissible(seed ^ 5);
        prop_assert!(homotopy_conditions(&x).admissible);
        prop_assert!(homotopy_conditions(&conv_bracket(&x, &y)).admissible);
    }

    #[test]
    fn gauge_keeps_boundary_and_conjugates_residual(seed in any::<u64>()) {
        let a = skeleton_alpha(CUT);
        let x = admissible(seed);
        let b = gauge(&x, &a).unwrap();
        prop_assert!(boundary_check(&b).is_empty());
        // exp(ad_ξ) is a Lie automorphism, so residuals are conjugated
        let mut r = ConvElement::zero(2, CUT);
        r.values = mc_residual(&a);
        prop_assert_eq!(mc_residual(&b), gauge(&x, &r).unwrap().values);
    }
}

#[test]
fn skeleton_residual_examples() {
    let r = mc_residual(&skeleton_alpha(CUT));
    for k in 0..=3 {
        assert!(!r.contains_key(&CorollaSig::mo_nk(0, k)), "t^o_{k}");
    }
    for n in 2..=4 {
        assert!(!r.contains_key(&CorollaSig::mc(n)));
    }
    assert!(!r.contains_key(&CorollaSig::mo_nk(1, 1)));
    assert!(r.keys().any(|s| s.out == Color::O && s.n == 2));
}

#[test]
fn filtration_examples() {
    assert_eq!(filtration_level(&skeleton_alpha(CUT)), 0);
    assert_eq!(filtration_level(&ConvElement::zero(0, CUT)), 7);
    let t = j_embed(&DfgcElement::from_sum(tetrahedron(), 4), CUT).unwrap();
    assert_eq!(filtration_level_c(&t), 3);
}

#[test]
fn j_respects_brackets() {
    let path = graphcx::graphs::DirGraph::black(3, &[(1, 2), (2, 3)]);
    let x = symmetrize(&GraphSum::from_graph(&path).unwrap());
    let x = DfgcElement::from_sum(x, 4);
    let e = DfgcElement::from_sum(graphcx::dfgc::gamma_edge(), 4);
    let lhs = j_embed(&bracket(&e, &x), CUT).unwrap();
    let rhs = conv_bracket(&j_embed(&e, CUT).unwrap(), &j_embed(&x, CUT).unwrap());
    assert!(!lhs.is_zero());
    assert_eq!(lhs, rhs);
}

#[test]
fn ch_low_order_and_group_law() {
    let x = admissible(11);
    let y = admissible(12);
    assert_eq!(ch(&x, &ConvElement::zero(0, CUT)).unwrap(), x);
    assert!(ch(&x, &x.scale(&q(-1))).unwrap().is_zero());
    let xy = conv_bracket(&x, &y);
    let second = x.add(&y).add(&xy.scale(&frac(1, 2)));
    let third = conv_bracket(&x, &xy).sub(&conv_bracket(&y, &xy)).scale(&frac(1, 12));
    let full = ch(&x, &y).unwrap();
    // every bracket of length four or more sits in arity >= 5
    let expected = second.add(&third);
    let tail = full.sub(&expected);
    assert!(tail.is_zero() || filtration_level(&tail) >= 4);
    let a = skeleton_alpha(CUT);
    assert_eq!(
        gauge(&x, &gauge(&y, &a).unwrap()).unwrap(),
        gauge(&ch(&x, &y).unwrap(), &a).unwrap()
    );
}

#[test]
fn flow_with_constant_xi_is_gauge() {
    let a = skeleton_alpha(CUT);
    let x = admissible(21);
    assert_eq!(mc_flow(&vec![x.clone()], &a, 64).unwrap(), gauge(&x, &a).unwrap());
    assert_eq!(mc_flow(&vec![], &a, 4).unwrap(), a);
}

#[test]
fn tetrahedron_acts_through_the_tadpole_term() {
    let a = skeleton_alpha((4, 1));
    let t = DfgcElement::from_sum(tetrahedron(), 4);
    let b = dfgc_action(&t, &a).unwrap();
    assert_eq!(boundary_check(&b), Vec::<String>::new());
    // at t^o_{4,0} only Γ^br_0 ∘_{1,c} tetra reaches, with sign -1
    let expect = graphcx::operads::insert(&broom(0), 1, Color::C, &tetrahedron()).unwrap();
    assert_eq!(b.get(CorollaSig::mo_nk(4, 0)), expect.scale(&q(-1)));
}
