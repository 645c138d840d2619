use graphcx::linalg::{RatMatrix, SparseVec};
use graphcx::rat::{frac, Q};
use num_traits::Zero;
use proptest::prelude::*;

/// Textbook dense Gaussian elimination, kept separate from the sparse
/// engine.
fn dense_rank(mut a: Vec<Vec<Q>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, p);
        for r in 0..rows {
            if r != rank && !a[r][c].is_zero() {
                let f = &a[r][c] / &a[rank][c];
                for j in c..cols {
                    let v = &f * &a[rank][j];
                    a[r][j] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn arb_dense(max: usize) -> impl Strategy<Value = Vec<Vec<Q>>> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        proptest::collection::vec(
            proptest::collection::vec((-3i64..=3, 1i64..=3).prop_map(|(p, q)| if p.abs() < 2 { Q::zero() } else { frac(p, q) }), c),
            r,
        )
    })
}

fn to_sparse(v: &[Q]) -> SparseVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

proptest! {
    #[test]
    fn rank_matches_dense_oracle(a in arb_dense(6)) {
        prop_assert_eq!(RatMatrix::from_dense(&a).rank(), dense_rank(a));
    }

    #[test]
    fn rank_nullity(a in arb_dense(6)) {
        let m = RatMatrix::from_dense(&a);
        let ker = m.kernel_basis();
        prop_assert_eq!(m.rank() + ker.len(), m.cols);
        for v in &ker {
            prop_assert!(m.mul_vec(v).unwrap().is_empty());
        }
    }

    #[test]
    fn solve_agrees_with_image(a in arb_dense(5), x in proptest::collection::vec(-2i64..=2, 5), hit in any::<bool>()) {
        let m = RatMatrix::from_dense(&a);
        let b = if hit {
            let xs: Vec<Q> = x.iter().take(m.cols).map(|&v| Q::from_integer(v.into())).collect();
            m.mul_vec(&to_sparse(&xs)).unwrap()
        } else {
            to_sparse(&x.iter().take(m.rows).map(|&v| Q::from_integer(v.into())).collect::<Vec<_>>())
        };
        let sol = m.solve(&b).unwrap();
        prop_assert_eq!(sol.is_some(), m.in_image(&b).unwrap());
        if hit {
            prop_assert!(sol.is_some());
        }
        if let Some(s) = sol {
            prop_assert_eq!(m.mul_vec(&s).unwrap(), b);
        }
    }
}

#[test]
fn identity_and_zero() {
    let i = RatMatrix::identity(3);
    assert_eq!(i.rank(), 3);
    assert!(i.kernel_basis().is_empty());
    let z = RatMatrix::zeros(2, 4);
    assert_eq!(z.rank(), 0);
    assert_eq!(z.kernel_basis().len(), 4);
}

#[test]
fn oversized_right_hand_side_is_an_error() {
    let mut b = SparseVec::new();
    b.insert(5, frac(1, 1));
    assert!(RatMatrix::identity(2).solve(&b).is_err());
}
