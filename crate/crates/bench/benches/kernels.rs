use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use graphcx::conv::{conv_bracket, random_admissible, random_element, skeleton_alpha};
use graphcx::dfgc::{cohomology_dim, differential, tetrahedron, DfgcElement};
use graphcx::graphs::{canonicalize, enumerate_basis};
use graphcx::operads::insert_c;
use graphcx::{Color, DirGraph, GraphSum};

fn canonical_forms(c: &mut Criterion) {
    let graphs = enumerate_basis(3, 1, 4, Color::O, false);
    c.bench_function("canonicalize basis (3,1,4)", |b| {
        b.iter(|| {
            for g in &graphs {
                let mut h = g.clone();
                h.edges.reverse();
                black_box(canonicalize(&h).unwrap());
            }
        })
    });
}

fn insertion(c: &mut Criterion) {
    let tri = GraphSum::from_graph(&DirGraph::black(3, &[(1, 2), (2, 3), (3, 1)])).unwrap();
    c.bench_function("insert triangle into triangle", |b| b.iter(|| insert_c(black_box(&tri), 2, &tri).unwrap()));
}

fn dfgc(c: &mut Criterion) {
    let t = DfgcElement::from_sum(tetrahedron(), 4);
    c.bench_function("differential of tetrahedron", |b| b.iter(|| differential(black_box(&t))));
    let mut g = c.benchmark_group("cohomology");
    g.sample_size(10);
    g.bench_function("H at (4,5)", |b| b.iter(|| cohomology_dim(4, 5, false).unwrap()));
    g.finish();
}

fn convolution(c: &mut Criterion) {
    let cut = (3, 2);
    let a = skeleton_alpha(cut);
    let x = random_admissible(7, cut, 4, 0.1);
    let y = random_element(11, 1, cut, 4, 0.1, |_| true);
    let mut g = c.benchmark_group("conv");
    g.sample_size(10);
    g.bench_function("bracket skeleton with itself", |b| b.iter(|| conv_bracket(black_box(&a), &a)));
    g.bench_function("bracket random elements", |b| b.iter(|| conv_bracket(black_box(&x), &y)));
    g.finish();
}

criterion_group!(benches, canonical_forms, insertion, dfgc, convolution);
criterion_main!(benches);
