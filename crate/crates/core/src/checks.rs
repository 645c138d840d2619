//! The acceptance suite: one check per criterion, each returning a short
//! report. Shared by the `acceptance` test target and `graphcx selftest`.

use std::collections::BTreeMap;
use std::time::Instant;

use num_traits::{One, Zero};
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::conv::{
    boundary_check, broom, ch, conv_bracket, dfgc_action, gauge, mc_flow, pre_lie, random_admissible,
    random_element, skeleton_alpha, ConvElement,
};
use crate::dfgc::{
    bracket, cohomology_dim, d_orbit, differential, exactness_witness, gamma_bullet, gamma_edge, gamma_loop,
    invariant_basis, tetrahedron, DfgcElement,
};
use crate::graphs::{canonicalize, enumerate_basis, possible_edges, Color, DirGraph, Endpoint, GraphSum, Signature};
use crate::hedgehog::{hg_basis, hodge_check, md, md_exactness_witness, md_star};
use crate::hoch::{cochain_basis, harmonic_decompose, hoch_cohomology_dim, is_p1p2, p1p2_basis, p1p2_dim, pa_hoch};
use crate::ocgen::check_d_squared;
use crate::operads::{check_operad_axioms_on, insert_c, insert_o};
use crate::polyvec::{act_c, act_o, hkr_oracle, schouten_oracle, GenSpec, GradedPoly};
use crate::rat::{factorial, q, sign_q, Q};

#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

type Check = fn(u64) -> std::result::Result<String, String>;

pub const CRITERIA: [(&str, Check); 13] = [
    ("sign model", sign_model),
    ("insertion fixtures", insertion_fixtures),
    ("operad axioms", operad_axioms),
    ("dfGC calibration", dfgc_calibration),
    ("d squared on dfGC bases", dfgc_d_squared),
    ("tetrahedron is not exact", tetrahedron_not_exact),
    ("degree -1 cohomology", degree_minus_one),
    ("OC differential squares to zero", oc_d_squared),
    ("convolution pre-Lie and Jacobi", conv_identities),
    ("Hochschild complex", hochschild),
    ("hedgehog complex", hedgehogs),
    ("polyvector action", polyvector_action),
    ("MC and gauge suite", mc_gauge),
];

/// Run one criterion (numbered from one).
pub fn run(id: usize, seed: u64) -> Outcome {
    let (title, f) = CRITERIA[id - 1];
    let t = Instant::now();
    let r = f(seed);
    let seconds = t.elapsed().as_secs_f64();
    match r {
        Ok(detail) => Outcome { id, title, passed: true, detail, seconds },
        Err(detail) => Outcome { id, title, passed: false, detail, seconds },
    }
}

pub fn run_all(seed: u64) -> Vec<Outcome> {
    (1..=CRITERIA.len()).map(|i| run(i, seed)).collect()
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[{}] {:>2}. {} ({:.2}s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.seconds,
            self.detail
        )
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn sign_model(seed: u64) -> std::result::Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut killed = 0;
    for trial in 0..200 {
        let n = rng.random_range(1..=4);
        let k = rng.random_range(0..=2);
        let out = if k == 0 && rng.random_bool(0.5) { Color::C } else { Color::O };
        let pool = possible_edges(n, k, false);
        let e = rng.random_range(1..=pool.len().min(5));
        let mut edges: Vec<_> = pool.choose_multiple(&mut rng, e).copied().collect();
        let g = DirGraph::new(n, k, out, edges.clone());
        let base = canonicalize(&g).map_err(err)?.ok_or("distinct edges were killed")?;
        // permuting the edge list multiplies by the parity
        let mut perm: Vec<usize> = (0..e).collect();
        perm.shuffle(&mut rng);
        let shuffled: Vec<_> = perm.iter().map(|&i| edges[i]).collect();
        let parity = crate::graphs::perm_sign(&perm.iter().map(|i| i + 1).collect::<Vec<_>>());
        let h = canonicalize(&DirGraph::new(n, k, out, shuffled)).map_err(err)?.ok_or("shuffle killed")?;
        ensure(h.graph == base.graph && h.sign == base.sign * parity, || {
            format!("trial {trial}: edge permutation sign mismatch on {g}")
        })?;
        // a repeated edge kills the graph
        let dup = edges[rng.random_range(0..e)];
        edges.insert(rng.random_range(0..=e), dup);
        ensure(canonicalize(&DirGraph::new(n, k, out, edges)).map_err(err)?.is_none(), || {
            format!("trial {trial}: double edge survived")
        })?;
        killed += 1;
    }
    // opposite directions are different edges
    let two_way = DirGraph::black(2, &[(1, 2), (2, 1)]);
    ensure(canonicalize(&two_way).map_err(err)?.is_some(), || "opposite edges were killed".into())?;
    Ok(format!("200 random graphs, {killed} doubled copies killed"))
}

/// Edge lists of the worked insertions, written out by hand.
pub fn fixture_gra_ins() -> (GraphSum, GraphSum, GraphSum) {
    let outer = GraphSum::from_graph(&DirGraph::black(3, &[(1, 2), (1, 3), (3, 2)])).expect("valid");
    let inner = GraphSum::from_graph(&DirGraph::black(2, &[(1, 2)])).expect("valid");
    let mut expected = GraphSum::zero(Signature::new(4, 0, Color::C));
    for a in [2, 3] {
        for b in [2, 3] {
            let g = DirGraph::black(4, &[(1, a), (1, 4), (4, b), (2, 3)]);
            expected.add_graph(&g, &Q::one()).expect("same signature");
        }
    }
    (outer, inner, expected)
}

pub fn fixture_ins_mo_mo() -> (GraphSum, GraphSum, GraphSum) {
    use Endpoint::{Black as B, White as W};
    let outer = DirGraph::new(2, 3, Color::O, vec![(B(1), B(2)), (B(1), W(1)), (B(2), W(1)), (B(2), W(3))]);
    let inner = DirGraph::new(1, 1, Color::O, vec![(B(1), W(1))]);
    let mut expected = GraphSum::zero(Signature::new(3, 3, Color::O));
    for last in [W(3), B(3)] {
        let g = DirGraph::new(
            3,
            3,
            Color::O,
            vec![(B(1), B(2)), (B(1), W(1)), (B(2), W(1)), (B(2), last), (B(3), W(3))],
        );
        expected.add_graph(&g, &Q::one()).expect("same signature");
    }
    (
        GraphSum::from_graph(&outer).expect("valid"),
        GraphSum::from_graph(&inner).expect("valid"),
        expected,
    )
}

fn insertion_fixtures(_: u64) -> std::result::Result<String, String> {
    let (a, b, want) = fixture_gra_ins();
    let got = insert_c(&a, 2, &b).map_err(err)?;
    ensure(got == want && got.len() == 4, || format!("black insertion gave\n{got}"))?;
    let (a, b, want) = fixture_ins_mo_mo();
    let got = insert_o(&a, 3, &b).map_err(err)?;
    ensure(got == want && got.len() == 2, || format!("white insertion gave\n{got}"))?;
    Ok("4-term and 2-term sums reproduced".into())
}

fn all_graphs(max_vertices: usize, max_edges: usize) -> Vec<GraphSum> {
    let mut out = Vec::new();
    for n in 0..=max_vertices {
        for k in 0..=max_vertices - n {
            for color in [Color::C, Color::O] {
                if color == Color::C && (k > 0 || n == 0) {
                    continue;
                }
                for e in 0..=max_edges {
                    for g in enumerate_basis(n, k, e, color, false) {
                        out.push(GraphSum::from_graph(&g).expect("valid"));
                    }
                }
            }
        }
    }
    out
}

fn operad_axioms(seed: u64) -> std::result::Result<String, String> {
    let outers = all_graphs(3, 2);
    let inners = all_graphs(2, 1);
    let mut report = check_operad_axioms_on(&outers, &inners);
    // sampled four-vertex outers
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let four: Vec<GraphSum> = all_graphs(4, 2).into_iter().filter(|g| g.sig.n_black + g.sig.n_white == 4).collect();
    let sample: Vec<GraphSum> = four.choose_multiple(&mut rng, 40).cloned().collect();
    report.extend(check_operad_axioms_on(&sample, &inners));
    ensure(report.is_empty(), || format!("{} violations, first: {}", report.len(), report[0]))?;
    Ok(format!("{} outers and 40 sampled four-vertex outers against {} inners", outers.len(), inners.len()))
}

fn dfgc_calibration(_: u64) -> std::result::Result<String, String> {
    let el = |s: GraphSum| DfgcElement::from_sum(s, 5);
    let e = el(gamma_edge());
    ensure(bracket(&e, &e).is_zero(), || "[Γ_edge, Γ_edge] != 0".into())?;
    let b = el(gamma_bullet());
    ensure(bracket(&e, &b) == e, || format!("[Γ_edge, Γ_•] = {}", bracket(&e, &b)))?;
    ensure(differential(&el(gamma_loop())).is_zero(), || "∂ of the loop is nonzero".into())?;
    ensure(differential(&el(tetrahedron())).is_zero(), || "∂ of the tetrahedron is nonzero".into())?;
    Ok("four identities hold".into())
}

/// `∂∂` on every orbit vector with `n <= max_n`, `e <= max_e`.
pub fn dfgc_d_squared_on(max_n: usize, max_e: usize) -> std::result::Result<usize, String> {
    let mut memo: BTreeMap<DirGraph, BTreeMap<DirGraph, Q>> = BTreeMap::new();
    let mut checked = 0;
    for n in 1..=max_n {
        for e in 0..=max_e {
            for rep in &invariant_basis(n, e, false).reps {
                let mut acc: BTreeMap<DirGraph, Q> = BTreeMap::new();
                for (r, c) in d_orbit(rep) {
                    let dd = memo.entry(r.clone()).or_insert_with(|| d_orbit(&r));
                    for (s, v) in dd.iter() {
                        *acc.entry(s.clone()).or_insert_with(Q::zero) += &c * v;
                    }
                }
                acc.retain(|_, v| !v.is_zero());
                ensure(acc.is_empty(), || format!("∂∂ != 0 on {rep}"))?;
                checked += 1;
            }
        }
    }
    Ok(checked)
}

fn dfgc_d_squared(_: u64) -> std::result::Result<String, String> {
    let n = dfgc_d_squared_on(4, 6)?;
    Ok(format!("{n} orbit vectors"))
}

fn tetrahedron_not_exact(_: u64) -> std::result::Result<String, String> {
    let w = exactness_witness(&tetrahedron(), false).map_err(err)?;
    ensure(w.is_none(), || "found a primitive".into())?;
    let src = invariant_basis(3, 5, false);
    Ok(format!("not in the image of {} invariant (3,5) vectors", src.dim()))
}

fn degree_minus_one(_: u64) -> std::result::Result<String, String> {
    let dims: Vec<usize> = [(1, 1), (2, 3), (3, 5)]
        .iter()
        .map(|&(n, e)| cohomology_dim(n, e, false))
        .collect::<crate::Result<_>>()
        .map_err(err)?;
    ensure(dims == [1, 0, 0], || format!("dims {dims:?}"))?;
    Ok("dims 1, 0, 0 at (1,1), (2,3), (3,5)".into())
}

fn oc_d_squared(_: u64) -> std::result::Result<String, String> {
    let bad = check_d_squared(5);
    ensure(bad.is_empty(), || bad.join("; "))?;
    Ok("six identities on every generator with n + k <= 5".into())
}

pub const CONV_CUTOFF: (usize, usize) = (4, 3);

fn conv_identities(seed: u64) -> std::result::Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 0..20 {
        let degs: Vec<i64> = (0..3).map(|_| rng.random_range(-1..=1)).collect();
        let s: u64 = rng.random();
        let el = |i: u64, d: i64| random_element(s.wrapping_add(i), d, CONV_CUTOFF, 4, 0.1, |_| true);
        let (f, g, h) = (el(0, degs[0]), el(1, degs[1]), el(2, degs[2]));
        let lhs = pre_lie(&pre_lie(&f, &g), &h).sub(&pre_lie(&f, &pre_lie(&g, &h)));
        let rhs = pre_lie(&pre_lie(&f, &h), &g).sub(&pre_lie(&f, &pre_lie(&h, &g)));
        ensure(lhs == rhs.scale(&sign_q(degs[1] * degs[2])), || format!("pre-Lie fails on triple {t}"))?;
        let lhs = conv_bracket(&f, &conv_bracket(&g, &h));
        let rhs = conv_bracket(&conv_bracket(&f, &g), &h)
            .add(&conv_bracket(&g, &conv_bracket(&f, &h)).scale(&sign_q(degs[0] * degs[1])));
        ensure(lhs == rhs, || format!("Jacobi fails on triple {t}"))?;
    }
    Ok("20 random triples".into())
}

fn random_combination(rng: &mut ChaCha8Rng, basis: &[GraphSum], sig: Signature) -> GraphSum {
    let mut out = GraphSum::zero(sig);
    for b in basis {
        out.add_scaled(b, &q(rng.random_range(-2..=2))).expect("same signature");
    }
    out
}

fn hochschild(seed: u64) -> std::result::Result<String, String> {
    for n in 0..=3 {
        for k in 0..=3 {
            for e in 0..=5 {
                let b = cochain_basis(n, k, e);
                for j in 0..b.dim() {
                    let dd = pa_hoch(&pa_hoch(&b.vector(j)).map_err(err)?).map_err(err)?;
                    ensure(dd.is_zero(), || format!("∂∂ != 0 at ({n},{k}) with {e} edges"))?;
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shapes = [(1, 1, 1), (1, 2, 2), (2, 1, 2), (2, 2, 2), (2, 2, 3), (3, 1, 3), (3, 2, 3), (2, 3, 4), (3, 2, 4), (1, 3, 3)];
    let mut done = 0;
    for t in 0..20 {
        let (n, k, e) = shapes[t % shapes.len()];
        let down = cochain_basis(n, k - 1, e);
        let vecs: Vec<GraphSum> = (0..down.dim()).map(|j| down.vector(j)).collect();
        let eta = random_combination(&mut rng, &vecs, Signature::new(n, k - 1, Color::O));
        let harm = p1p2_basis(n, k, e);
        let c0 = random_combination(&mut rng, &harm, Signature::new(n, k, Color::O));
        let gamma = c0.add(&pa_hoch(&eta).map_err(err)?).map_err(err)?;
        let (c, g1) = harmonic_decompose(&gamma).map_err(err)?;
        ensure(c == c0 && is_p1p2(&c), || format!("harmonic part differs at ({n},{k},{e})"))?;
        ensure(c.add(&pa_hoch(&g1).map_err(err)?).map_err(err)? == gamma, || "round trip failed".into())?;
        done += 1;
    }
    for n in 1..=3 {
        for k in 0..=3 {
            for e in 0..=(2 * n + k).min(6) {
                let h = hoch_cohomology_dim(n, k, e, None).map_err(err)?;
                let p = p1p2_dim(n, k, e);
                ensure(h == p, || format!("H = {h} but harmonic dim {p} at ({n},{k},{e})"))?;
            }
        }
    }
    let (g, want) = fixture_pa_hoch();
    let got = pa_hoch(&g).map_err(err)?;
    ensure(got == want && got.len() == 6, || format!("six-term example gave\n{got}"))?;
    Ok(format!("∂∂ = 0, {done} round trips, cohomology = harmonic dims, six-term example"))
}

/// The three-black, one-white input and its six-term differential.
pub fn fixture_pa_hoch() -> (GraphSum, GraphSum) {
    use Endpoint::{Black as B, White as W};
    let g = DirGraph::new(3, 1, Color::O, vec![(B(1), B(3)), (B(1), W(1)), (B(2), W(1)), (B(3), W(1))]);
    let mut want = GraphSum::zero(Signature::new(3, 2, Color::O));
    for a in 1..=2u8 {
        for b in 1..=2u8 {
            for c in 1..=2u8 {
                if a == b && b == c {
                    continue;
                }
                let h = DirGraph::new(3, 2, Color::O, vec![(B(1), B(3)), (B(1), W(a)), (B(2), W(b)), (B(3), W(c))]);
                want.add_graph(&h, &q(-1)).expect("same signature");
            }
        }
    }
    (GraphSum::from_graph(&g).expect("valid"), want)
}

/// `Γ_k + (σ_{12}, id)Γ_k`.
pub fn fixture_gamma_k(k: usize) -> GraphSum {
    use Endpoint::{Black as B, White as W};
    let mut edges = vec![(B(2), B(1))];
    edges.extend((1..=k).map(|j| (B(2), W(j as u8))));
    let g = GraphSum::from_graph(&DirGraph::new(2, k, Color::O, edges)).expect("valid");
    g.add(&g.relabel(&[2, 1], &[], false).expect("sizes")).expect("same signature")
}

fn hedgehogs(seed: u64) -> std::result::Result<String, String> {
    let mut count = 0;
    for m in 0..=4usize {
        for k in 0..=3usize {
            let extra = if m >= 4 { 3 } else { 4 };
            for e in k..=k + extra {
                for v in hg_basis(m, k, e) {
                    ensure(md(&md(&v).map_err(err)?).map_err(err)?.is_zero(), || format!("𝔡𝔡 != 0 on {v}"))?;
                    if m >= 1 {
                        let r = hodge_check(&v).map_err(err)?;
                        ensure(r.holds(), || format!("Hodge identity fails at ({m},{k})"))?;
                        count += 1;
                    }
                }
            }
        }
    }
    for k in 0..=3 {
        let got = md_star(&fixture_gamma_k(k)).map_err(err)?;
        ensure(got == broom(k + 1), || format!("𝔡* of the two-black example at k = {k} gave {got}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shapes = [(1, 2, 2), (1, 2, 3), (2, 2, 3), (2, 3, 4), (1, 3, 3), (3, 2, 4), (2, 2, 4), (1, 3, 4)];
    let mut done = 0;
    let mut attempts = 0;
    while done < 20 && attempts < 200 {
        let (m, k, e) = shapes[attempts % shapes.len()];
        attempts += 1;
        let basis = hg_basis(m, k, e);
        let psi = random_combination(&mut rng, &basis, Signature::new(m, k, Color::O));
        let gamma = md(&psi).map_err(err)?;
        if gamma.is_zero() {
            continue;
        }
        let w = md_exactness_witness(&gamma).map_err(err)?;
        ensure(md(&w).map_err(err)? == gamma, || "witness does not map back".into())?;
        done += 1;
    }
    ensure(done == 20, || format!("only {done} exact inputs constructed"))?;
    Ok(format!("Hodge identity on {count} basis vectors, example k <= 3, {done} witnesses"))
}

fn monomials(spec: &GenSpec, max: u32) -> Vec<GradedPoly> {
    let n = 2 * spec.d;
    let mut out = Vec::new();
    let mut m = vec![0u32; n];
    loop {
        if m.iter().sum::<u32>() <= max && m[spec.d..].iter().all(|&e| e <= 1) {
            let mut p = GradedPoly::zero(spec);
            p.add_term(m.clone(), Q::one());
            out.push(p);
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            m[i] += 1;
            if m[i] <= max {
                break;
            }
            m[i] = 0;
            i += 1;
        }
    }
}

fn poly_total(p: &GradedPoly) -> u32 {
    p.terms.keys().next().map_or(0, |m| m.iter().sum())
}

fn polyvector_action(seed: u64) -> std::result::Result<String, String> {
    let mut pairs = 0;
    for d in 1..=2 {
        let spec = GenSpec::flat(d);
        let ms = monomials(&spec, 3);
        let both = [DirGraph::black(2, &[(1, 2)]), DirGraph::black(2, &[(2, 1)])];
        for a in &ms {
            for b in &ms {
                if poly_total(a) + poly_total(b) > 3 {
                    continue;
                }
                let mut s = GradedPoly::zero(&spec);
                for g in &both {
                    s = s.add(&act_c(g, &[a.clone(), b.clone()], &spec).map_err(err)?);
                }
                ensure(s == schouten_oracle(a, b), || format!("edge action differs from Schouten on {a}, {b}"))?;
                pairs += 1;
            }
        }
        let fs: Vec<GradedPoly> = ms.iter().filter(|p| !p.has_theta() && poly_total(p) <= 2).cloned().collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed + d as u64);
        for k in 0..=3usize {
            let g = broom(k).iter().next().expect("one graph").0.clone();
            for v in &ms {
                let args: Vec<GradedPoly> = (0..k).map(|_| fs[rng.random_range(0..fs.len())].clone()).collect();
                let lhs = act_o(&g, &[v.clone()], &args, &spec).map_err(err)?.scale(&(Q::one() / factorial(k)));
                ensure(lhs == hkr_oracle(v, &args).map_err(err)?, || format!("broom {k} differs from HKR on {v}"))?;
            }
        }
    }
    let sampled = action_compatibility(seed)?;
    Ok(format!("{pairs} Schouten pairs, brooms k <= 3, {sampled} sampled insertions"))
}

fn action_compatibility(seed: u64) -> std::result::Result<usize, String> {
    let spec = GenSpec::flat(2);
    let pool = monomials(&spec, 2);
    let fpool: Vec<GradedPoly> = pool.iter().filter(|p| !p.has_theta()).cloned().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let deg = |p: &GradedPoly| p.degree().unwrap_or(0);
    let pick = |rng: &mut ChaCha8Rng, from: &[GradedPoly], n: usize| -> Vec<GradedPoly> {
        (0..n).map(|_| from[rng.random_range(0..from.len())].clone()).collect()
    };
    let graphs = |n: usize, k: usize, out: Color| -> Vec<GraphSum> {
        (0..=2)
            .flat_map(|e| enumerate_basis(n, k, e, out, false))
            .map(|g| GraphSum::from_graph(&g).expect("valid"))
            .collect()
    };
    let act = |x: &GraphSum, vs: &[GradedPoly], fs: &[GradedPoly]| crate::polyvec::act_sum(x, vs, fs, &spec);
    let mut count = 0;
    for (n1, k1, n2) in [(2, 0, 1), (1, 0, 2), (2, 0, 2), (1, 1, 2), (2, 1, 1)] {
        let outer_color = if k1 == 0 && n1 + n2 <= 3 && count % 2 == 0 { Color::C } else { Color::O };
        for outer in graphs(n1, k1, outer_color) {
            for inner in graphs(n2, 0, Color::C) {
                for i in 1..=n1 {
                    let vs = pick(&mut rng, &pool, n1 + n2 - 1);
                    let fs = pick(&mut rng, &fpool, k1);
                    let lhs = act(&insert_c(&outer, i, &inner).map_err(err)?, &vs, &fs).map_err(err)?;
                    let mid = act(&inner, &vs[i - 1..i - 1 + n2], &[]).map_err(err)?;
                    let mut args = vs[..i - 1].to_vec();
                    args.push(mid);
                    args.extend_from_slice(&vs[i - 1 + n2..]);
                    let e = inner.edge_count().unwrap_or(0) as i64;
                    let before: i64 = vs[..i - 1].iter().map(deg).sum();
                    let rhs = act(&outer, &args, &fs).map_err(err)?.scale(&sign_q(e * before));
                    ensure(lhs == rhs, || format!("black insertion at slot {i} breaks the action"))?;
                    count += 1;
                }
            }
        }
    }
    for (n1, k1, n2, k2) in [(1, 1, 1, 1), (0, 2, 1, 0), (1, 2, 0, 1), (0, 1, 1, 1)] {
        for outer in graphs(n1, k1, Color::O) {
            for inner in graphs(n2, k2, Color::O) {
                for i in 1..=k1 {
                    let vs = pick(&mut rng, &pool, n1 + n2);
                    let fs = pick(&mut rng, &fpool, k1 + k2 - 1);
                    let lhs = act(&insert_o(&outer, i, &inner).map_err(err)?, &vs, &fs).map_err(err)?;
                    let mid = act(&inner, &vs[n1..], &fs[i - 1..i - 1 + k2]).map_err(err)?;
                    let mut args = fs[..i - 1].to_vec();
                    args.push(mid);
                    args.extend_from_slice(&fs[i - 1 + k2..]);
                    let e = inner.edge_count().unwrap_or(0) as i64;
                    let fdeg: i64 = fs[..i - 1].iter().map(deg).sum();
                    let before: i64 = vs[..n1].iter().map(deg).sum::<i64>() + fdeg;
                    let moved: i64 = vs[n1..].iter().map(deg).sum::<i64>() * fdeg;
                    let rhs = act(&outer, &vs[..n1], &args).map_err(err)?.scale(&sign_q(e * before + moved));
                    ensure(lhs == rhs, || format!("white insertion at slot {i} breaks the action"))?;
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

pub const MC_CUTOFF: (usize, usize) = (5, 3);

fn mc_gauge(seed: u64) -> std::result::Result<String, String> {
    let a = skeleton_alpha(MC_CUTOFF);
    let bad = boundary_check(&a);
    ensure(bad.is_empty(), || bad.join("; "))?;
    let x = random_admissible(seed, MC_CUTOFF, 3, 0.3);
    let y = random_admissible(seed.wrapping_add(1), MC_CUTOFF, 3, 0.3);
    let gx = gauge(&x, &a).map_err(err)?;
    let bad = boundary_check(&gx);
    ensure(bad.is_empty(), || format!("after gauge: {}", bad.join("; ")))?;
    let t = DfgcElement::from_sum(tetrahedron(), MC_CUTOFF.0);
    let ta = dfgc_action(&t, &a).map_err(err)?;
    let bad = boundary_check(&ta);
    ensure(bad.is_empty(), || format!("after the tetrahedron: {}", bad.join("; ")))?;
    ensure(ta != a, || "tetrahedron acted trivially".into())?;
    let lhs = gauge(&x, &gauge(&y, &a).map_err(err)?).map_err(err)?;
    let rhs = gauge(&ch(&x, &y).map_err(err)?, &a).map_err(err)?;
    ensure(lhs == rhs, || "gauge(x, gauge(y, α)) != gauge(ch(x, y), α)".into())?;
    let flow = mc_flow(&vec![x.clone()], &a, 64).map_err(err)?;
    ensure(flow == gx, || "flow with constant ξ differs from gauge".into())?;
    let zero: ConvElement = ConvElement::zero(0, MC_CUTOFF);
    ensure(gauge(&zero, &a).map_err(err)? == a, || "gauge by zero moved α".into())?;
    Ok("boundary kept by gauge and the tetrahedron, group law, flow = gauge".into())
}
