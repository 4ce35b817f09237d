use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use num_bigint::BigInt;

use d4quad_core::bigmath::{isqrt, CReal, PrecisionPolicy};
use d4quad_core::pell::PairFamily;
use d4quad_core::prover::{brute_quadruple_search, certify_single_case, family_classes, family_triple, Family, RunConfig};
use d4quad_core::reduction::{bd_step, ReductionCase};

fn bench_isqrt(c: &mut Criterion) {
    let n = BigInt::from(7) << 2048u32;
    c.bench_function("isqrt_2k_bits", |b| b.iter(|| isqrt(&n).unwrap()));
}

fn bench_ln(c: &mut Criterion) {
    c.bench_function("ln_sqrt7_300_digits", |b| {
        b.iter_batched(
            || CReal::sqrt_int(&BigInt::from(7)).ln(),
            |x| x.eval_digits(300).unwrap(),
            BatchSize::SmallInput,
        )
    });
}

fn bench_pair_family(c: &mut Criterion) {
    let fam = PairFamily::new(12).unwrap();
    c.bench_function("pair_family_k12_p156", |b| b.iter(|| fam.element(156)));
}

fn bench_reduction_step(c: &mut Criterion) {
    let policy = PrecisionPolicy::default();
    let case = ReductionCase {
        kappa: CReal::sqrt_int(&BigInt::from(3)).ln().div(&CReal::sqrt_int(&BigInt::from(2)).ln()),
        mu: CReal::ratio_i64(1, 3),
        a_coeff: CReal::one(),
        b_base: CReal::from_i64(7),
        m_bound: BigInt::from(100_000u32),
        q_floor: BigInt::from(1u32),
    };
    c.bench_function("bd_step_synthetic", |b| b.iter(|| bd_step(&case, &policy).unwrap()));
}

fn bench_brute_search(c: &mut Criterion) {
    let (a, b, cc) = (BigInt::from(6), BigInt::from(42), BigInt::from(16));
    let dmax = BigInt::from(10_000_000_000i64);
    c.bench_function("brute_quadruple_search_1e10", |b| {
        b.iter(|| brute_quadruple_search(&a, &b, &cc, &dmax).unwrap())
    });
}

fn bench_full_case(c: &mut Criterion) {
    let cfg = RunConfig::default();
    let triple = family_triple(7, 4, Family::C1Minus).unwrap();
    let classes = family_classes(&triple, Family::C1Minus).unwrap();
    let (class, kind) = classes[0].clone();
    c.bench_function("certify_case_k7_p4_inner", |b| {
        b.iter(|| certify_single_case(7, 4, Family::C1Minus, &triple, &class, kind, &cfg).unwrap())
    });
}

criterion_group! {
    name = kernels;
    config = Criterion::default().sample_size(10);
    targets = bench_isqrt, bench_ln, bench_pair_family, bench_reduction_step, bench_brute_search, bench_full_case
}
criterion_main!(kernels);
