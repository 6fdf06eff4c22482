//! Microbenchmarks for the kernels the certification pipeline leans on:
//! subset-sum and deletion-contraction oracles, symbolic effective
//! weights, Sturm root isolation, the exponent search, and certificate
//! verification.

use criterion::{black_box, criterion_group, criterion_main, Criterion};

use tutte_zeros::graph::leaves::petersen_minus_edge;
use tutte_zeros::tutte::delcon::z_del_con;
use tutte_zeros::tutte::subset::z_poly_q;
use tutte_zeros::zero::{find_st, Parity, EXPONENT_CAP};
use tutte_zeros::{
    effective_weight, find_zero, rat, rat_i, verify_certificate, Bracket, GadgetTerm, RatFn,
    SearchBudget, UniPoly,
};

fn bench_subset_oracle(c: &mut Criterion) {
    let (g, _) = petersen_minus_edge(rat_i(-3)).realize();
    c.bench_function("z_poly_q petersen minus edge", |b| {
        b.iter(|| z_poly_q(black_box(&g)).unwrap())
    });
}

fn bench_delcon_oracle(c: &mut Criterion) {
    let (g, _) = petersen_minus_edge(rat_i(-3)).realize();
    let q = rat(5, 2);
    c.bench_function("z_del_con petersen minus edge", |b| {
        b.iter(|| z_del_con(black_box(&g), black_box(&q)))
    });
}

fn bench_effective_weight(c: &mut Criterion) {
    // Five series blocks of triple parallel edges: 15 edges, and the
    // symbolic walk multiplies polynomial numerators at every level.
    let block = GadgetTerm::parallel_copies(&GadgetTerm::edge(rat_i(-3)), 3);
    let term = GadgetTerm::series_copies(&block, 5);
    c.bench_function("effective_weight nested sp term", |b| {
        b.iter(|| effective_weight(black_box(&term)).unwrap())
    });
}

fn bench_root_isolation(c: &mut Criterion) {
    // prod_{k=1..6} (x^2 - k): twelve simple roots inside [-3, 3].
    let mut p = UniPoly::one();
    for k in 1..=6 {
        p = &p * &UniPoly::new(vec![rat_i(-k), rat_i(0), rat_i(1)]);
    }
    let lo = rat_i(-3);
    let hi = rat_i(3);
    c.bench_function("isolate_real_roots degree 12", |b| {
        b.iter(|| tutte_zeros::algebra::roots::isolate_real_roots(black_box(&p), &lo, &hi))
    });
}

fn bench_exponent_search(c: &mut Criterion) {
    let a = RatFn::var();
    let b_fn = RatFn::constant(rat(1, 2));
    let c_fn = RatFn::constant(rat_i(3));
    let window = Bracket::new(rat_i(2), rat(5, 2));
    c.bench_function("find_st crossing at 12^(1/3)", |b| {
        b.iter(|| {
            find_st(
                black_box(&a),
                black_box(&b_fn),
                black_box(&c_fn),
                &window,
                Parity::Odd,
                Parity::Even,
                EXPONENT_CAP,
            )
            .unwrap()
        })
    });
}

fn bench_verify(c: &mut Criterion) {
    let cert = find_zero(&rat_i(-1), &rat_i(-3), &rat(1, 10), &SearchBudget::default())
        .expect("region I certifies");
    c.bench_function("verify_certificate region I", |b| {
        b.iter(|| assert!(verify_certificate(black_box(&cert), false)))
    });
}

criterion_group!(
    kernels,
    bench_subset_oracle,
    bench_delcon_oracle,
    bench_effective_weight,
    bench_root_isolation,
    bench_exponent_search,
    bench_verify
);
criterion_main!(kernels);
