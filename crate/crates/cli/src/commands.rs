use std::time::Instant;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use unitsum::demos;
use unitsum::nicety::NicenessReport;
use unitsum::polyparse;
use unitsum::symsum::oracle::{check_inclusion_exclusion, check_n_p_sharp};
use unitsum::{
    brute_force_p, brute_force_p_sharp, closed_form_p, evaluate_with, EvalOptions,
    ExponentMultiset, Hypothesis, ModRing, SubgroupSpec, UnitSubgroup,
};

use crate::output::{precondition, CliError, RunResult};
use crate::{Check, GroupArgs};

/// A finished command: what to print, and a reason to exit 1 if any.
pub struct Run {
    pub result: RunResult,
    pub mismatch: Option<String>,
}

impl From<RunResult> for Run {
    fn from(result: RunResult) -> Self {
        Self {
            result,
            mismatch: None,
        }
    }
}

fn build(modulus: u64, spec: &SubgroupSpec) -> Result<UnitSubgroup, CliError> {
    let ring = ModRing::new(modulus).map_err(precondition)?;
    spec.build(ring).map_err(precondition)
}

fn header(command: &str, args: &GroupArgs) -> RunResult {
    let mut r = RunResult::new(command);
    r.modulus = Some(args.modulus.to_string());
    r.subgroup = Some(args.subgroup.to_string());
    r
}

fn exponent_strings(a: &ExponentMultiset) -> Vec<String> {
    a.iter().map(BigInt::to_string).collect()
}

fn ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn check_length(group: &UnitSubgroup, k: usize) -> Result<(), CliError> {
    if k as u64 > group.order() {
        return Err(CliError::Precondition(format!(
            "{k} exponents but the subgroup has only {} elements",
            group.order()
        )));
    }
    Ok(())
}

fn apply_report(r: &mut RunResult, report: &NicenessReport) {
    r.nice = Some(report.nice);
    r.threshold = Some(report.threshold.to_string());
    r.worst_subset = report
        .worst_subset
        .as_ref()
        .map(|s| s.iter().map(|i| i + 1).collect());
}

pub fn eval(
    args: &GroupArgs,
    exponents: Option<ExponentMultiset>,
    poly: Option<(String, usize)>,
    force_closed_form: bool,
) -> Result<Run, CliError> {
    let group = build(args.modulus, &args.subgroup)?;
    let options = EvalOptions { force_closed_form };
    let mut r = header("eval", args);
    let start = Instant::now();
    match (exponents, poly) {
        (Some(a), _) => {
            check_length(&group, a.len())?;
            let ev = evaluate_with(&group, &a, options).map_err(precondition)?;
            r.timing_ms = ms(start);
            r.exponents = Some(exponent_strings(&a));
            r.value = Some(ev.value.value().to_string());
            r.method = Some(ev.method.as_str().to_string());
            r.nice = Some(ev.nice);
            if let Some(report) = &ev.report {
                apply_report(&mut r, report);
            }
            r = r
                .with("reduced", exponent_strings(&ev.reduced))
                .with("prefactor", ev.prefactor.to_string());
        }
        (None, Some((text, arity))) => {
            let f = polyparse::parse(&text, arity).map_err(|e| CliError::Usage(e.to_string()))?;
            check_length(&group, arity)?;
            let ev = polyparse::eval_sum_with(&group, &f, options).map_err(precondition)?;
            r.timing_ms = ms(start);
            r.poly = Some(f.to_string());
            r.value = Some(ev.value.value().to_string());
            let mut methods: Vec<&str> = ev
                .per_term
                .iter()
                .map(|t| t.evaluation.method.as_str())
                .collect();
            methods.dedup();
            r.method = Some(match methods.as_slice() {
                [] => "closed_form".to_string(),
                [one] => one.to_string(),
                _ => "mixed".to_string(),
            });
            r.nice = Some(ev.per_term.iter().all(|t| t.evaluation.nice));
            let terms: Vec<Value> = ev
                .per_term
                .iter()
                .zip(f.terms())
                .map(|(t, term)| {
                    json!({
                        "coefficient": t.coefficient.to_string(),
                        "exponents": exponent_strings(&term.exponents).join(","),
                        "reduced": exponent_strings(&t.evaluation.reduced).join(","),
                        "sum": t.evaluation.value.value().to_string(),
                        "method": t.evaluation.method.as_str(),
                        "contribution": t.contribution.value().to_string(),
                    })
                })
                .collect();
            r = r.with("arity", arity.to_string()).with("per_term", terms);
        }
        (None, None) => {
            return Err(CliError::Usage(
                "one of --exponents or --poly is required".into(),
            ))
        }
    }
    Ok(r.into())
}

pub fn nice(args: &GroupArgs, a: &ExponentMultiset) -> Result<Run, CliError> {
    let group = build(args.modulus, &args.subgroup)?;
    let start = Instant::now();
    let report = unitsum::is_a_nice(&group, a);
    let mut r = header("nice", args);
    r.timing_ms = ms(start);
    r.exponents = Some(exponent_strings(a));
    apply_report(&mut r, &report);
    r = r
        .with("lambda", group.exponent().to_string())
        .with("order", group.order().to_string())
        .with("worst_value", report.worst_value.map(|v| v.to_string()))
        .with("family_size", report.family_size.to_string())
        .with("vacuous", report.vacuous)
        .with("field_shortcut", report.field_shortcut);
    if let Some(w) = &report.witness {
        r = r.with(
            "witness",
            json!({
                "element": w.element.value().to_string(),
                "power": w.power.value().to_string(),
                "regular": w.regular,
            }),
        );
    }
    Ok(r.into())
}

pub fn partitions(
    a: &ExponentMultiset,
    lambda: Option<u64>,
    order: Option<u64>,
    modulus: Option<u64>,
    spec: &SubgroupSpec,
) -> Result<Run, CliError> {
    let group = modulus.map(|m| build(m, spec)).transpose()?;
    let lambda = match (&group, lambda) {
        (Some(g), Some(l)) if l != g.exponent() => {
            return Err(CliError::Usage(format!(
                "--lambda {l} disagrees with the subgroup exponent {}",
                g.exponent()
            )))
        }
        (Some(g), _) => g.exponent(),
        (None, Some(l)) => l,
        (None, None) => return Err(CliError::Usage("--lambda or --modulus is required".into())),
    };
    let n = order
        .or(group.as_ref().map(UnitSubgroup::order))
        .unwrap_or(lambda);

    let start = Instant::now();
    let family = unitsum::valid_partitions(a, lambda).map_err(precondition)?;
    let total = family.total_weight(n);
    let elapsed = ms(start);

    let rows: Vec<Value> = family
        .partitions()
        .iter()
        .map(|p| {
            let sums: Vec<String> = p
                .blocks()
                .iter()
                .map(|b| a.subset_sum(b).map(|s| s.to_string()).unwrap_or_default())
                .collect();
            let chis: Vec<String> = p
                .blocks()
                .iter()
                .map(|b| unitsum::chi(b.len(), n).to_string())
                .collect();
            json!({
                "blocks": p.to_string(),
                "block_sums": sums.join(","),
                "chi": chis.join(","),
                "weight": p.weight(n).to_string(),
            })
        })
        .collect();

    let mut r = RunResult::new("partitions");
    if let Some(g) = &group {
        r.modulus = Some(g.modulus().to_string());
        r.subgroup = Some(spec.to_string());
        r.value = Some(g.ring().from_bigint(&total).value().to_string());
    }
    r.exponents = Some(exponent_strings(a));
    r.timing_ms = elapsed;
    r = r
        .with("lambda", lambda.to_string())
        .with("order", n.to_string())
        .with("count", family.len().to_string())
        .with("total", total.to_string())
        .with("partitions", rows);
    Ok(r.into())
}

pub fn oracle(args: &GroupArgs, a: &ExponentMultiset, check: Check) -> Result<Run, CliError> {
    let group = build(args.modulus, &args.subgroup)?;
    let mut r = header("oracle", args);
    r.exponents = Some(exponent_strings(a));
    r.method = Some("brute_force".into());
    let start = Instant::now();
    let mut failures = Vec::new();
    match check {
        Check::P => r.value = Some(brute_force_p(&group, a).value().to_string()),
        Check::Psharp => r.value = Some(brute_force_p_sharp(&group, a).value().to_string()),
        Check::Eq4 => {
            let c = check_inclusion_exclusion(&group, a).map_err(precondition)?;
            if !c.holds {
                failures.push(format!(
                    "inclusion-exclusion: {} != {}",
                    c.lhs.value(),
                    c.rhs.value()
                ));
            }
            r.value = Some(c.lhs.value().to_string());
            r = r.with(
                "checks",
                vec![json!({"lhs": c.lhs.value().to_string(), "rhs": c.rhs.value().to_string(), "holds": c.holds})],
            );
        }
        Check::Npsharp => {
            let checks = check_n_p_sharp(&group, a).map_err(precondition)?;
            let rows: Vec<Value> = checks
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    if !c.holds {
                        failures.push(format!(
                            "position {}: {} != {}",
                            i + 1,
                            c.lhs.value(),
                            c.rhs.value()
                        ));
                    }
                    json!({
                        "position": (i + 1).to_string(),
                        "lhs": c.lhs.value().to_string(),
                        "rhs": c.rhs.value().to_string(),
                        "holds": c.holds,
                    })
                })
                .collect();
            r.value = checks.first().map(|c| c.lhs.value().to_string());
            r = r.with("checks", rows);
        }
    }
    r.timing_ms = ms(start);
    r = r.with("passed", failures.is_empty());
    let mismatch = (!failures.is_empty()).then(|| failures.join("; "));
    Ok(Run {
        result: r,
        mismatch,
    })
}

pub fn demo(name: Option<&str>) -> Result<Run, CliError> {
    let selected = match name {
        Some(n) => vec![demos::find(n).ok_or_else(|| {
            let known: Vec<&str> = demos::demos().iter().map(|d| d.name).collect();
            CliError::Usage(format!("unknown demo {n:?}; known: {}", known.join(", ")))
        })?],
        None => demos::demos(),
    };
    let start = Instant::now();
    let mut rows = Vec::new();
    let mut failed = Vec::new();
    for d in &selected {
        let out = d.run().map_err(precondition)?;
        if !out.passed {
            failed.push(d.name);
        }
        rows.push(json!({
            "name": d.name,
            "modulus": d.modulus.to_string(),
            "subgroup": d.subgroup.to_string(),
            "exponents": d.exponents.iter().map(i64::to_string).collect::<Vec<_>>().join(","),
            "expected": d.expected.to_string(),
            "brute_force": out.brute_force.value().to_string(),
            "evaluated": out.evaluated.value().to_string(),
            "method": out.method.as_str(),
            "passed": out.passed,
        }));
    }
    let mut r = RunResult::new("demo");
    r.timing_ms = ms(start);
    r = r.with("passed", failed.is_empty()).with("demos", rows);
    let mismatch = (!failed.is_empty()).then(|| format!("demo mismatch: {}", failed.join(", ")));
    Ok(Run {
        result: r,
        mismatch,
    })
}

/// Draws exponents with no entry divisible by lambda. For `k >= 2` the sum is
/// closed to a multiple of lambda so the partition formula has work to do,
/// and draws that fail the niceness check are retried a bounded number of
/// times.
fn bench_sequence(
    group: &UnitSubgroup,
    k: usize,
    rng: &mut ChaCha8Rng,
) -> (ExponentMultiset, bool) {
    let lambda = group.exponent() as i64;
    let draw = |rng: &mut ChaCha8Rng| loop {
        let a: i64 = rng.gen_range(1..lambda);
        if a % lambda != 0 {
            return a;
        }
    };
    let mut last = None;
    for _ in 0..200 {
        let mut a: Vec<i64> = (0..k).map(|_| draw(rng)).collect();
        if k >= 2 {
            let head: i64 = a[..k - 1].iter().sum();
            let closing = (-head).rem_euclid(lambda);
            if closing == 0 {
                continue;
            }
            a[k - 1] = closing;
        }
        let a = ExponentMultiset::from_i64s(&a);
        if unitsum::is_a_nice(group, &a).nice {
            return (a, true);
        }
        last = Some(a);
    }
    (
        last.unwrap_or_else(|| ExponentMultiset::from_i64s(&vec![1; k])),
        false,
    )
}

pub fn bench(args: &GroupArgs, kmax: usize, seed: u64) -> Result<Run, CliError> {
    let group = build(args.modulus, &args.subgroup)?;
    if group.exponent() < 2 {
        return Err(CliError::Precondition(
            "the subgroup is trivial; every exponent is divisible by lambda".into(),
        ));
    }
    check_length(&group, kmax)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = Instant::now();
    let mut rows = Vec::new();
    let mut disagreements = Vec::new();
    for k in 1..=kmax {
        let (a, nice) = bench_sequence(&group, k, &mut rng);
        let t = Instant::now();
        let oracle = brute_force_p(&group, &a);
        let oracle_ms = ms(t);
        let t = Instant::now();
        let closed = closed_form_p(&group, &a, Hypothesis::Assume).map_err(precondition)?;
        let closed_ms = ms(t);
        let agree = oracle == closed;
        if nice && !agree {
            disagreements.push(k.to_string());
        }
        rows.push(json!({
            "k": k.to_string(),
            "exponents": exponent_strings(&a).join(","),
            "nice": nice,
            "oracle": oracle.value().to_string(),
            "closed_form": closed.value().to_string(),
            "oracle_ms": format!("{oracle_ms:.3}"),
            "closed_form_ms": format!("{closed_ms:.3}"),
            "agree": agree,
        }));
    }
    let mut r = header("bench", args);
    r.timing_ms = ms(start);
    r = r.with("rows", rows);
    let mismatch = (!disagreements.is_empty()).then(|| {
        format!(
            "closed form disagrees with the oracle at k = {}",
            disagreements.join(", ")
        )
    });
    Ok(Run {
        result: r,
        mismatch,
    })
}
