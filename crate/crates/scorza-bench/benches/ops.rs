//! Criterion benchmarks for the hot exact-arithmetic paths.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use scorza_core::compalg::{alg_mul, sample_elem, AlgebraTag};
use scorza_core::jordan::{herm_with_upper, herm_zero, LinForm};
use scorza_core::pencils::{classify, normal_forms, sample_invertible, PencilMap};
use scorza_core::scalar::FieldSpec;
use scorza_core::scorza::{
    cone_point_e, flop_e61, tangent_cone, ConePoint, CotangentRep, ScorzaSpace,
};
use scorza_core::spinor::{FiberAlgebra, Side, SpinorPair};

fn q() -> FieldSpec {
    FieldSpec::Rationals
}

fn bench_octonion_mul(c: &mut Criterion) {
    let tag = AlgebraTag::new(8, q()).unwrap();
    let x = sample_elem(tag, 1);
    let y = sample_elem(tag, 2);
    c.bench_function("octonion multiplication (Q)", |b| {
        b.iter(|| alg_mul(black_box(&x), black_box(&y)).unwrap())
    });
}

fn bench_rref(c: &mut Criterion) {
    let rows: Vec<Vec<scorza_core::Scalar>> = (0..27)
        .map(|k| scorza_core::sample::sample_vector(q(), 27, k))
        .collect();
    c.bench_function("27x27 reduced row echelon (Q)", |b| {
        b.iter(|| scorza_core::Subspace::from_rows(q(), 27, black_box(rows.clone())).unwrap())
    });
}

fn bench_classify(c: &mut Criterion) {
    let (w1, w2) = normal_forms(q());
    let f = PencilMap::new(w1, w2).unwrap();
    let p = sample_invertible(q(), 5, 3);
    let g = f.transport(&p);
    c.bench_function("pencil classification (Q)", |b| {
        b.iter(|| classify(black_box(&g)))
    });
}

fn bench_tangent_cone(c: &mut Criterion) {
    let sp = ScorzaSpace::new(3, 8, q()).unwrap();
    let tag = sp.tag();
    let one = scorza_core::compalg::basis_elem(tag, 0).one_like();
    let x =
        ConePoint::from_preimage(sp, vec![one, sample_elem(tag, 5), sample_elem(tag, 6)]).unwrap();
    c.bench_function("tangent cone at a seeded point (Q)", |b| {
        b.iter(|| tangent_cone(black_box(&x)).unwrap())
    });
}

fn bench_flop_first_kind(c: &mut Criterion) {
    let sp = ScorzaSpace::new(3, 8, q()).unwrap();
    let tag = sp.tag();
    let x = cone_point_e(sp, 0).unwrap();
    let mut frep = herm_zero(q(), 3, 8);
    frep = herm_with_upper(
        &frep,
        0,
        2,
        scorza_core::compalg::basis_elem(tag, 0).one_like(),
    );
    let f = CotangentRep::new(x.clone(), LinForm::from_rep(frep)).unwrap();
    c.bench_function("first-kind flop at the model point (Q)", |b| {
        b.iter(|| flop_e61(black_box(&x), black_box(&f), 0).unwrap())
    });
}

fn bench_fiber_product(c: &mut Criterion) {
    let tag = AlgebraTag::new(8, q()).unwrap();
    let one = scorza_core::compalg::basis_elem(tag, 0).one_like();
    let zero = one.zero_like();
    let s = SpinorPair::new(one.clone(), zero.clone(), Side::Plus).unwrap();
    let t = SpinorPair::new(zero.clone(), one, Side::Plus).unwrap();
    let alg = FiberAlgebra::new(&s, &t).unwrap();
    let u = SpinorPair::new(sample_elem(tag, 7), zero.clone(), Side::Plus).unwrap();
    let v = SpinorPair::new(sample_elem(tag, 8), zero, Side::Plus).unwrap();
    c.bench_function("fiber composition-algebra product (Q)", |b| {
        b.iter(|| alg.multiply(black_box(&u), black_box(&v)).unwrap())
    });
}

criterion_group!(
    benches,
    bench_octonion_mul,
    bench_rref,
    bench_classify,
    bench_tangent_cone,
    bench_flop_first_kind,
    bench_fiber_product
);
criterion_main!(benches);
