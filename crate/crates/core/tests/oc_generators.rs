use graphcx::ocgen::*;
use graphcx::Color;

#[test]
fn every_term_has_degree_one_less() {
    for s in generators(6) {
        let d = corolla_degree(s).unwrap();
        for t in oc_diff(s).unwrap() {
            assert_eq!(corolla_degree(t.outer).unwrap() + corolla_degree(t.inner).unwrap(), d + 1, "{s}");
        }
    }
}

#[test]
fn grafted_arities_are_consistent() {
    for s in generators(6) {
        for t in oc_diff(s).unwrap() {
            let (o, i) = (t.outer, t.inner);
            match t.slot_color {
                Color::C => {
                    assert!(t.slot <= o.n);
                    assert_eq!((o.n + i.n - 1, o.k + i.k), (s.n, s.k));
                }
                Color::O => {
                    assert!(t.slot <= o.k);
                    assert_eq!((o.n + i.n, o.k + i.k - 1), (s.n, s.k));
                }
            }
            assert!(t.tau.is_empty() || t.tau.len() == s.n);
        }
    }
}

#[test]
fn degrees_of_small_corollas() {
    assert_eq!(corolla_degree(CorollaSig::mc(2)).unwrap(), -1);
    assert_eq!(corolla_degree(CorollaSig::mo(2)).unwrap(), 0);
    assert_eq!(corolla_degree(CorollaSig::mo_nk(1, 0)).unwrap(), 0);
    assert!(corolla_degree(CorollaSig::mo(1)).is_err());
    assert!(corolla_degree(CorollaSig::mc(1)).is_err());
}

#[test]
fn brooms_only_see_the_associative_part() {
    for k in 0..=5 {
        let d = oc_diff(CorollaSig::mo_nk(1, k)).unwrap();
        assert!(d.iter().all(|t| t.part == Part::As), "k = {k}");
    }
    assert!(oc_diff(CorollaSig::mc(2)).unwrap().is_empty());
}

/// Pairs `0 <= p`, `p + 2 <= q <= k` whose outer corolla keeps at least two
/// white inputs, counted by hand.
#[test]
fn associative_term_count() {
    for k in 2..=7usize {
        let mut want = 0;
        for p in 0..=k {
            for q in p + 2..=k {
                if k + p + 1 - q >= 2 {
                    want += 1;
                }
            }
        }
        assert_eq!(oc_diff(CorollaSig::mo(k)).unwrap().len(), want, "k = {k}");
    }
    assert!(oc_diff(CorollaSig::mo(2)).unwrap().is_empty());
}

#[test]
fn black_term_counts() {
    // D_Lie on t^c_n: one term per (p, n-p)-shuffle with 2 <= p <= n-1
    let binom = |n: usize, r: usize| (0..r).fold(1usize, |a, i| a * (n - i) / (i + 1));
    for n in 2..=6 {
        let want: usize = (2..n).map(|p| binom(n, p)).sum();
        assert_eq!(oc_diff(CorollaSig::mc(n)).unwrap().len(), want);
    }
}

#[test]
fn squares_vanish() {
    assert!(check_d_squared(5).is_empty());
}
