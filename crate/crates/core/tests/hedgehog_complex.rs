use graphcx::graphs::{count_pikes, GraphSum};
use graphcx::hedgehog::*;
use graphcx::rat::q;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Edge counts kept small enough for exhaustive checks: the `k` white
/// edges plus up to `extra` black-black edges.
fn bases(m: usize, k: usize, extra: usize) -> Vec<GraphSum> {
    (k..=k + extra).flat_map(|e| hg_basis(m, k, e)).collect()
}

fn extra_for(m: usize) -> usize {
    if m >= 4 { 3 } else { 4 }
}

#[test]
fn hodge_identity_on_bases() {
    for m in 1..=4 {
        for k in 0..=3 {
            for v in bases(m, k, extra_for(m)) {
                let r = hodge_check(&v).unwrap();
                assert!(r.holds(), "(m,k)=({m},{k}) on {v}");
            }
        }
    }
}

#[test]
fn hodge_identity_random_at_five() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for k in 0..=2 {
        let basis = hg_basis(5, k, k + 3);
        for _ in 0..3 {
            let mut v = GraphSum::zero(basis[0].sig);
            for b in &basis {
                if rng.random_bool(0.05) {
                    v.add_scaled(b, &q(rng.random_range(-3..=3))).unwrap();
                }
            }
            if v.is_zero() {
                v = basis[0].clone();
            }
            assert!(hodge_check(&v).unwrap().holds());
        }
    }
}

#[test]
fn md_squares_to_zero_and_preserves_membership() {
    for m in 0..=3 {
        for k in 0..=3 {
            for v in bases(m, k, 3) {
                let d = md(&v).unwrap();
                assert!(in_hg(&d), "(m,k)=({m},{k})");
                assert!(md(&d).unwrap().is_zero());
                if m >= 1 {
                    assert!(in_hg(&md_star(&v).unwrap()));
                }
            }
        }
    }
}

#[test]
fn image_of_md_has_pikes() {
    for v in bases(2, 2, 3) {
        for (g, _) in md(&v).unwrap().iter() {
            assert!(count_pikes(g) >= 1);
        }
    }
}

#[test]
fn pike_free_inputs() {
    for v in bases(3, 2, 3) {
        if v.iter().all(|(g, _)| count_pikes(g) == 0) {
            assert!(md_star(&v).unwrap().is_zero());
            assert_eq!(md_star(&md(&v).unwrap()).unwrap(), v.scale(&q(2)));
            assert_eq!(pike_split(&v).keys().copied().collect::<Vec<_>>(), vec![0]);
        }
    }
    assert!(pike_split(&GraphSum::zero(graphcx::Signature::new(2, 1, graphcx::Color::O))).is_empty());
}

#[test]
fn witness_for_exact_inputs() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for (m, k, e) in [(1, 2, 2), (2, 2, 3), (2, 3, 4), (3, 2, 4)] {
        let basis = hg_basis(m, k, e);
        let mut psi = GraphSum::zero(graphcx::Signature::new(m, k, graphcx::Color::O));
        for b in &basis {
            psi.add_scaled(b, &q(rng.random_range(-2..=2))).unwrap();
        }
        let gamma = md(&psi).unwrap();
        if gamma.is_zero() {
            continue;
        }
        let w = md_exactness_witness(&gamma).unwrap();
        assert!(in_hg(&w));
        assert_eq!(md(&w).unwrap(), gamma);
    }
}

#[test]
fn witness_rejects_open_and_pike_free() {
    let v = bases(2, 1, 2).into_iter().find(|v| !md(v).unwrap().is_zero()).unwrap();
    assert!(md_exactness_witness(&v).is_err());
}
