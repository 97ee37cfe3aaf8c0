use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use unitsum::symsum::closed_form::{partition_sum_dp, partition_sum_enumerated};
use unitsum::symsum::oracle::brute_force_p_with;
use unitsum::{closed_form_p, Execution, ExponentMultiset, Hypothesis, ModRing, UnitSubgroup};

fn units(m: u64) -> UnitSubgroup {
    UnitSubgroup::full_unit_group(ModRing::new(m).unwrap())
}

/// Sequences of length k over the units mod 299 with sum divisible by 132.
fn cases() -> Vec<(usize, ExponentMultiset)> {
    vec![
        (1, ExponentMultiset::from_i64s(&[1])),
        (2, ExponentMultiset::from_i64s(&[1, 131])),
        (3, ExponentMultiset::from_i64s(&[86, 75, 103])),
    ]
}

fn oracle(c: &mut Criterion) {
    let group = units(299);
    let mut g = c.benchmark_group("oracle");
    g.sample_size(10);
    for (k, a) in cases() {
        g.bench_with_input(BenchmarkId::new("sequential", k), &a, |b, a| {
            b.iter(|| brute_force_p_with(&group, black_box(a), Execution::Sequential))
        });
        g.bench_with_input(BenchmarkId::new("parallel", k), &a, |b, a| {
            b.iter(|| brute_force_p_with(&group, black_box(a), Execution::Parallel))
        });
        g.bench_with_input(BenchmarkId::new("closed_form", k), &a, |b, a| {
            b.iter(|| closed_form_p(&group, black_box(a), Hypothesis::Verify))
        });
    }
    g.finish();
}

fn partition_sums(c: &mut Criterion) {
    let mut g = c.benchmark_group("partition_sum");
    for k in [4usize, 6, 8, 10] {
        let a = ExponentMultiset::from_i64s(&vec![3; k]);
        g.bench_with_input(BenchmarkId::new("subset_dp", k), &a, |b, a| {
            b.iter(|| partition_sum_dp(black_box(a), 6, 6))
        });
        g.bench_with_input(BenchmarkId::new("enumerated", k), &a, |b, a| {
            b.iter(|| partition_sum_enumerated(black_box(a), 6, 6))
        });
    }
    g.finish();
}

criterion_group!(benches, oracle, partition_sums);
criterion_main!(benches);
