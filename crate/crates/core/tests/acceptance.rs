//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the report is always printed; exits non-zero on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use unitsum::arith;
use unitsum::demos::divide_by_factorial;
use unitsum::nicety::{
    example1_condition, example2_condition, is_a_nice, max_ratio_fast, max_ratio_scan,
    regularity_witness,
};
use unitsum::symsum::closed_form::partition_sum_dp;
use unitsum::symsum::oracle::{check_inclusion_exclusion, check_n_p_sharp};
use unitsum::symsum::partitions::{naive_valid_partitions, valid_partitions};
use unitsum::{
    brute_force_p, closed_form_p, evaluate, ExponentMultiset, Hypothesis, Method, ModRing,
    UnitSubgroup,
};

const RINGS: [u64; 7] = [5, 7, 9, 13, 15, 25, 27];
const RANDOM_SUBGROUPS: usize = 20;
const SEQUENCES_PER_SUBGROUP: usize = 200;

struct Suite {
    label: String,
    group: UnitSubgroup,
    sequences: Vec<ExponentMultiset>,
}

/// Units, n-th residues for n = 2, 3, 4 and random generated subgroups of
/// every ring, each with random exponent sequences of length at most 4,
/// entries bounded by 2 lambda and none divisible by lambda.
fn build_suites() -> Vec<Suite> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let mut suites = Vec::new();
    for m in RINGS {
        let ring = ModRing::new(m).unwrap();
        let units = UnitSubgroup::full_unit_group(ring);
        let mut groups = vec![("units".to_string(), units.clone())];
        for n in [2, 3, 4] {
            groups.push((
                format!("nth:{n}"),
                UnitSubgroup::nth_residue_subgroup(ring, n).unwrap(),
            ));
        }
        for _ in 0..RANDOM_SUBGROUPS {
            let count = rng.gen_range(1..=2);
            let gens: Vec<_> = (0..count)
                .map(|_| {
                    units
                        .elements()
                        .nth(rng.gen_range(0..units.order() as usize))
                        .unwrap()
                })
                .collect();
            let label = format!(
                "gen:{}",
                gens.iter()
                    .map(|g| g.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            );
            groups.push((
                label,
                UnitSubgroup::generated_subgroup(ring, &gens).unwrap(),
            ));
        }
        for (label, group) in groups {
            let lambda = group.exponent() as i64;
            // no exponent avoids divisibility by 1
            if lambda < 2 {
                continue;
            }
            let kmax = group.order().min(4) as usize;
            let sequences = (0..SEQUENCES_PER_SUBGROUP)
                .map(|_| {
                    let k = rng.gen_range(1..=kmax);
                    (0..k)
                        .map(|_| loop {
                            let a = rng.gen_range(-2 * lambda..=2 * lambda);
                            if a % lambda != 0 {
                                break BigInt::from(a);
                            }
                        })
                        .collect()
                })
                .collect();
            suites.push(Suite {
                label: format!("Z/{m} {label}"),
                group,
                sequences,
            });
        }
    }
    suites
}

type Criterion<'a> = Box<dyn Fn() -> Outcome + 'a>;

struct Outcome {
    passed: bool,
    detail: String,
}

fn pass(detail: String) -> Outcome {
    Outcome {
        passed: true,
        detail,
    }
}

fn fail(detail: String) -> Outcome {
    Outcome {
        passed: false,
        detail,
    }
}

fn ac1_oracle_equivalence(suites: &[Suite]) -> Outcome {
    let start = Instant::now();
    let (mut checked, mut total) = (0usize, 0usize);
    for suite in suites {
        for a in &suite.sequences {
            total += 1;
            if !is_a_nice(&suite.group, a).nice {
                continue;
            }
            checked += 1;
            let closed = closed_form_p(&suite.group, a, Hypothesis::Verify).unwrap();
            let brute = brute_force_p(&suite.group, a);
            if closed != brute {
                return fail(format!(
                    "{} A=({a}): closed {closed} vs brute {brute}",
                    suite.label
                ));
            }
        }
    }
    let elapsed = start.elapsed();
    if checked == 0 {
        return fail("no nice instances exercised".into());
    }
    if elapsed > Duration::from_secs(60) {
        return fail(format!("took {elapsed:?}, limit 60 s"));
    }
    pass(format!(
        "{} subgroups, {total} sequences, {checked} nice and equal, {elapsed:.2?}",
        suites.len()
    ))
}

/// Admissible sequences for the prime-power condition: multisets (sorted
/// sequences) by increasing length, the range shrinking as the length grows.
fn admissible(p: u64, m: u32, q: u64, lambda: i64, per_length: usize) -> Vec<ExponentMultiset> {
    let mut found = Vec::new();
    for (k, radius) in [
        (1usize, 20 * lambda),
        (2, 4 * lambda),
        (3, lambda),
        (4, lambda),
    ] {
        let mut taken = 0;
        let mut current = vec![-radius; k];
        'outer: loop {
            let a = ExponentMultiset::from_i64s(&current);
            if example1_condition(p, m, q, &a).unwrap() {
                found.push(a);
                taken += 1;
                if taken == per_length {
                    break;
                }
            }
            // next non-decreasing sequence
            let mut i = k;
            loop {
                if i == 0 {
                    break 'outer;
                }
                i -= 1;
                if current[i] < radius {
                    current[i] += 1;
                    let v = current[i];
                    for c in &mut current[i + 1..] {
                        *c = v;
                    }
                    break;
                }
            }
        }
    }
    found
}

fn ac2_abstract_congruence() -> Outcome {
    let mut lines = Vec::new();
    for (p, m, q) in [
        (3u64, 2u32, 1u64),
        (3, 3, 1),
        (3, 3, 2),
        (13, 1, 3),
        (5, 2, 2),
    ] {
        let start = Instant::now();
        let modulus = p.pow(m);
        let ring = ModRing::new(modulus).unwrap();
        let group = UnitSubgroup::nth_residue_subgroup(ring, q).unwrap();
        let phi = arith::totient(modulus);
        let lambda = phi / num_integer::gcd(q, phi);
        if group.exponent() != lambda || group.order() != lambda {
            return fail(format!(
                "Z/{modulus} nth:{q}: lambda {} vs {lambda}",
                group.exponent()
            ));
        }
        let cases = admissible(p, m, q, lambda as i64, 25);
        if cases.len() < 20 {
            return fail(format!(
                "Z/{modulus} nth:{q}: only {} admissible sequences",
                cases.len()
            ));
        }
        for a in &cases {
            let k = a.len() as u64;
            let magnitude = BigInt::from(lambda) * arith::factorial(k - 1);
            let formula = if k % 2 == 1 { magnitude } else { -magnitude };
            let expected = ring.from_bigint(&formula);
            if !is_a_nice(&group, a).nice {
                return fail(format!(
                    "Z/{modulus} nth:{q} A=({a}): condition holds but not nice"
                ));
            }
            let got = evaluate(&group, a).unwrap().value;
            if got != expected {
                return fail(format!(
                    "Z/{modulus} nth:{q} A=({a}): {got} vs formula {expected}"
                ));
            }
        }
        let elapsed = start.elapsed();
        if elapsed > Duration::from_secs(5) {
            return fail(format!("Z/{modulus} nth:{q} took {elapsed:?}, limit 5 s"));
        }
        lines.push(format!("{modulus}/q={q}: {} cases", cases.len()));
    }
    pass(lines.join("; "))
}

fn ac3_residue_subgroup_sums() -> Outcome {
    let mut notes = Vec::new();
    for (m, n, a, expected) in [(5u64, 2u64, vec![2i64], 2u64), (13, 3, vec![2, 2], 11)] {
        let ring = ModRing::new(m).unwrap();
        let group = UnitSubgroup::nth_residue_subgroup(ring, n).unwrap();
        if group.order() != 2 * a.len() as u64 {
            return fail(format!(
                "mod {m}: subgroup order {} is not 2k",
                group.order()
            ));
        }
        let a = ExponentMultiset::from_i64s(&a);
        let k = a.len();
        let brute = divide_by_factorial(ring, brute_force_p(&group, &a), k).unwrap();
        let evaluation = evaluate(&group, &a).unwrap();
        let closed = divide_by_factorial(ring, evaluation.value, k).unwrap();
        if evaluation.method != Method::ClosedForm {
            return fail(format!("mod {m}: evaluated by {}", evaluation.method));
        }
        let expected = ring.element(expected);
        if brute != expected || closed != expected {
            return fail(format!(
                "mod {m}: brute {brute}, closed {closed}, expected {expected}"
            ));
        }
        notes.push(format!("mod {m}: {expected}"));
    }
    // the k = 2 case also directly through the partition formula
    let ring = ModRing::new(13).unwrap();
    let cubes = UnitSubgroup::nth_residue_subgroup(ring, 3).unwrap();
    let direct = closed_form_p(
        &cubes,
        &ExponentMultiset::from_i64s(&[2, 2]),
        Hypothesis::Verify,
    )
    .unwrap();
    if divide_by_factorial(ring, direct, 2).unwrap().value() != 11 {
        return fail("mod 13 closed_form_p / 2! differs".into());
    }
    pass(notes.join(", "))
}

fn ac4_semiprime() -> Outcome {
    let start = Instant::now();
    let a = ExponentMultiset::from_i64s(&[1, 131]);
    let group = UnitSubgroup::full_unit_group(ModRing::new(299).unwrap());
    let condition = example2_condition(13, 23, &a).unwrap();
    let report = is_a_nice(&group, &a);
    let evaluation = evaluate(&group, &a).unwrap();
    let brute = brute_force_p(&group, &a);
    let elapsed = start.elapsed();
    let ok = condition
        && report.nice
        && evaluation.value.value() == 35
        && brute.value() == 35
        && elapsed < Duration::from_secs(10);
    let detail = format!(
        "condition {condition}, nice {} (minimax {:?} >= {}), evaluate {}, brute {brute}, {elapsed:.2?}",
        report.nice, report.worst_value, report.threshold, evaluation.value
    );
    if ok {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn ac5_wilson() -> Outcome {
    for p in [5u64, 7, 11] {
        let ring = ModRing::new(p).unwrap();
        let group = UnitSubgroup::full_unit_group(ring);
        for k in 1..p as usize - 1 {
            let value = brute_force_p(&group, &ExponentMultiset::from_i64s(&vec![1; k]));
            if value.value() != 0 {
                return fail(format!("mod {p}, k = {k}: {value}"));
            }
        }
        let k = p as usize - 1;
        let full = brute_force_p(&group, &ExponentMultiset::from_i64s(&vec![1; k]));
        let unordered = divide_by_factorial(ring, full, k).unwrap();
        if unordered.value() != p - 1 {
            return fail(format!("mod {p}: product of units {unordered}"));
        }
    }
    pass("mod 5, 7, 11: vanishing below p-1, product of units -1".into())
}

fn ac6_identities(suites: &[Suite]) -> Outcome {
    let mut extra = vec![(
        "Z/299 units".to_string(),
        UnitSubgroup::full_unit_group(ModRing::new(299).unwrap()),
        vec![ExponentMultiset::from_i64s(&[1, 131])],
    )];
    for (p, m, q) in [(3u64, 2u32, 1u64), (3, 3, 1), (13, 1, 3), (5, 2, 2)] {
        let ring = ModRing::new(p.pow(m)).unwrap();
        let group = UnitSubgroup::nth_residue_subgroup(ring, q).unwrap();
        let cases = admissible(p, m, q, group.exponent() as i64, 5);
        extra.push((format!("Z/{} nth:{q}", p.pow(m)), group, cases));
    }
    let all = suites
        .iter()
        .map(|s| (s.label.as_str(), &s.group, &s.sequences))
        .chain(extra.iter().map(|(l, g, c)| (l.as_str(), g, c)));
    let (mut ie, mut np) = (0usize, 0usize);
    for (label, group, sequences) in all {
        let lambda = BigInt::from(group.exponent());
        for a in sequences {
            let check = check_inclusion_exclusion(group, a).unwrap();
            if !check.holds {
                return fail(format!(
                    "{label} A=({a}): inclusion-exclusion {} vs {}",
                    check.lhs, check.rhs
                ));
            }
            ie += 1;
            if num_integer::Integer::is_multiple_of(&a.total(), &lambda) {
                for (i, c) in check_n_p_sharp(group, a).unwrap().iter().enumerate() {
                    if !c.holds {
                        return fail(format!(
                            "{label} A=({a}) removing {}: {} vs {}",
                            i + 1,
                            c.lhs,
                            c.rhs
                        ));
                    }
                    np += 1;
                }
            }
        }
    }
    pass(format!("{ie} inclusion-exclusion checks, {np} n*p# checks"))
}

fn ac7_partition_enumerator() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    let mut nonempty = 0;
    for case in 0..500 {
        let k = rng.gen_range(1..=8);
        let lambda = rng.gen_range(1..=12u64);
        let a: ExponentMultiset = (0..k)
            .map(|_| BigInt::from(rng.gen_range(-30..=30)))
            .collect();
        let recursive = valid_partitions(&a, lambda).unwrap();
        let naive = naive_valid_partitions(&a, lambda).unwrap();
        if recursive != naive {
            return fail(format!(
                "case {case}: A=({a}) lambda={lambda}: {} vs {}",
                recursive.len(),
                naive.len()
            ));
        }
        let n = rng.gen_range(1..=50u64);
        if partition_sum_dp(&a, lambda, n).unwrap() != naive.total_weight(n) {
            return fail(format!("case {case}: DP total differs"));
        }
        nonempty += usize::from(!naive.is_empty());
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(30) {
        return fail(format!("took {elapsed:?}, limit 30 s"));
    }
    pass(format!(
        "500 cases ({nonempty} non-empty families), {elapsed:.2?}"
    ))
}

fn ac8_vanishing(suites: &[Suite]) -> Outcome {
    let (mut vanished, mut skipped) = (0usize, 0usize);
    for suite in suites {
        let lambda = suite.group.exponent();
        for t in (1..=2 * lambda).filter(|t| t % lambda != 0) {
            if regularity_witness(&suite.group, t).is_none() {
                skipped += 1;
                continue;
            }
            let sum = brute_force_p(&suite.group, &ExponentMultiset::from_i64s(&[t as i64]));
            if sum.value() != 0 {
                return fail(format!("{} t={t}: power sum {sum}", suite.label));
            }
            vanished += 1;
        }
    }
    pass(format!(
        "{vanished} power sums vanish, {skipped} degrees without a witness"
    ))
}

fn ac9_fast_path(suites: &[Suite]) -> Outcome {
    let mut checks = 0;
    for suite in suites {
        for s in 0..suite.group.exponent() {
            let (fast, scan) = (
                max_ratio_fast(&suite.group, s),
                max_ratio_scan(&suite.group, s),
            );
            if fast != scan {
                return fail(format!("{} s={s}: {fast} vs {scan}", suite.label));
            }
            checks += 1;
        }
    }
    pass(format!("{checks} residues"))
}

fn ac10_benchmark() -> Outcome {
    let group = UnitSubgroup::full_unit_group(ModRing::new(299).unwrap());
    let lambda = group.exponent() as i64;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0010);
    let a = loop {
        let mut a: Vec<i64> = (0..2).map(|_| rng.gen_range(1..lambda)).collect();
        let last = (-a.iter().sum::<i64>()).rem_euclid(lambda);
        if last == 0 {
            continue;
        }
        a.push(last);
        let a = ExponentMultiset::from_i64s(&a);
        if is_a_nice(&group, &a).nice {
            break a;
        }
    };
    let start = Instant::now();
    let brute = brute_force_p(&group, &a);
    let oracle_time = start.elapsed();

    const REPS: u32 = 100;
    let start = Instant::now();
    let mut closed = None;
    for _ in 0..REPS {
        closed = Some(closed_form_p(&group, &a, Hypothesis::Verify).unwrap());
    }
    let dp_time = start.elapsed() / REPS;
    let closed = closed.unwrap();
    let ratio = oracle_time.as_secs_f64() / dp_time.as_secs_f64().max(1e-9);
    let detail = format!(
        "A=({a}): oracle {oracle_time:.2?}, closed form {dp_time:.2?}, speedup {ratio:.0}x, values {brute}/{closed}"
    );
    if brute == closed && ratio >= 100.0 {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn main() -> ExitCode {
    let suites = build_suites();
    let criteria: Vec<(&str, Criterion)> = vec![
        (
            "AC1 closed form equals oracle on nice instances",
            Box::new(|| ac1_oracle_equivalence(&suites)),
        ),
        (
            "AC2 prime-power closed value",
            Box::new(ac2_abstract_congruence),
        ),
        (
            "AC3 residue subgroup sums mod 5 and 13",
            Box::new(ac3_residue_subgroup_sums),
        ),
        ("AC4 semiprime instance mod 299", Box::new(ac4_semiprime)),
        ("AC5 Wilson lineage", Box::new(ac5_wilson)),
        (
            "AC6 inclusion-exclusion and n*p# identities",
            Box::new(|| ac6_identities(&suites)),
        ),
        (
            "AC7 partition recursion equals naive filter",
            Box::new(ac7_partition_enumerator),
        ),
        (
            "AC8 power sums vanish given a witness",
            Box::new(|| ac8_vanishing(&suites)),
        ),
        (
            "AC9 niceness fast path equals element scan",
            Box::new(|| ac9_fast_path(&suites)),
        ),
        (
            "AC10 closed form at least 100x faster than oracle",
            Box::new(ac10_benchmark),
        ),
    ];
    let mut failures = 0;
    for (name, run) in &criteria {
        let outcome = run();
        let tag = if outcome.passed { "PASS" } else { "FAIL" };
        println!("[{tag}] {name}: {}", outcome.detail);
        failures += usize::from(!outcome.passed);
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
