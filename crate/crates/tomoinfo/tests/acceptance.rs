//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tomoinfo::commands::{self, AnalyzeSource, ReportJson};
use tomoinfo_core::gram::{det_gamma0, gram_from_coords, gram_matrix};
use tomoinfo_core::lindley::{average_info, marginal, DiscreteExperiment, LogBase};
use tomoinfo_core::optimize::max_info;
use tomoinfo_core::report::{check_two_value_spectrum, info_report};
use tomoinfo_core::tomography::{forward_probabilities, random_density_matrix, reconstruct_state};
use tomoinfo_core::{haar_random_design, mub_prime, optimize_design, perturb_design, transition_table};

type Outcome = Result<String, String>;
/// (name, check, runtime budget in seconds)
type Criterion = (&'static str, fn() -> Outcome, u64);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn mub_gram_determinant() -> Outcome {
    let mut worst = 0.0f64;
    for n in [2, 3, 5, 7] {
        let det = gram_matrix(&transition_table(&mub_prime(n).unwrap()).unwrap()).determinant();
        let want = (n as f64).powi(-(n as i32 + 1));
        let rel = (det - want).abs() / want;
        ensure(rel <= 1e-9, || format!("n={n}: det {det:e} vs {want:e}"))?;
        worst = worst.max(rel);
    }
    let det2 = gram_matrix(&transition_table(&mub_prime(2).unwrap()).unwrap()).determinant();
    ensure((det2 - 0.125).abs() <= 1e-9 * 0.125, || format!("n=2: det {det2}"))?;
    Ok(format!("max relative error {worst:.1e}"))
}

fn optimality_and_fischer_hadamard() -> Outcome {
    for n in [2, 3, 5, 7] {
        let r = info_report(&transition_table(&mub_prime(n).unwrap()).unwrap()).unwrap();
        ensure((r.vd - 1.0).abs() <= 1e-10, || format!("n={n}: MUB vd {}", r.vd))?;
    }
    let mut violations = 0;
    let mut closest = f64::INFINITY;
    for n in [2, 3] {
        let bound = det_gamma0(n);
        for seed in 0..1000 {
            let det = gram_matrix(&transition_table(&haar_random_design(n, seed).unwrap()).unwrap()).determinant();
            if det > bound + 1e-12 {
                violations += 1;
            }
            closest = closest.min((bound - det) / bound);
        }
    }
    ensure(violations == 0, || format!("{violations} Fischer-Hadamard violations"))?;
    Ok(format!("2000 random designs, 0 violations, min relative slack {closest:.1e}"))
}

fn krsw_singularity() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_tomoinfo");
    let mut worst = 0.0f64;
    for n in 2..=7usize {
        let r = commands::analyze(AnalyzeSource::TwoValue { n, c: None }, None).map_err(|e| e.to_string())?;
        ensure(r.vd.abs() <= 1e-10 && r.singular, || format!("n={n}: det reduced {:e}", r.vd))?;
        worst = worst.max(r.vd.abs());

        let out = Command::new(bin)
            .args(["analyze", "--two-value", "auto", "--n", &n.to_string()])
            .output()
            .map_err(|e| e.to_string())?;
        ensure(out.status.code() == Some(3), || format!("n={n}: analyze exit {:?}", out.status.code()))?;
        let report: ReportJson = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
        ensure(report.vd.abs() <= 1e-10 && report.singular, || format!("n={n}: CLI vd {:e}", report.vd))?;
    }
    Ok(format!("n=2..7 singular, max |det reduced| {worst:.1e}"))
}

fn closed_form_spectrum() -> Outcome {
    let mut worst_eig = 0.0f64;
    let mut worst_det = 0.0f64;
    for n in 2..=7usize {
        let nf = n as f64;
        for c in [0.0, 1.0 / (2.0 * nf * nf), 1.0 / (nf * nf), 1.0 / (2.0 * nf * (nf - 1.0))] {
            let check = check_two_value_spectrum(n, c).map_err(|e| format!("n={n} c={c}: {e}"))?;
            ensure(check.max_eig_error <= 1e-10, || format!("n={n} c={c}: eig error {:e}", check.max_eig_error))?;
            let closed = check.spectrum.closed_det;
            let diff = (check.numeric_det - closed).abs();
            // relative agreement, with an absolute floor where the closed form vanishes
            let vanishing = closed.abs() <= 1e-10;
            let tol = if vanishing { 1e-10 } else { 1e-9 * closed.abs() };
            ensure(diff <= tol, || format!("n={n} c={c}: det {:e} vs {closed:e}", check.numeric_det))?;
            worst_eig = worst_eig.max(check.max_eig_error);
            worst_det = worst_det.max(if vanishing { diff } else { diff / closed.abs() });
        }
    }
    Ok(format!("24 cases, max eig error {worst_eig:.1e}, max det error {worst_det:.1e}"))
}

fn lower_bound() -> Outcome {
    let mut findings = Vec::new();
    let mut cases = 0;
    let mut min_margin = f64::INFINITY;
    for n in [2, 3, 5] {
        let mub = mub_prime(n).unwrap();
        for eps in [1e-4, 1e-3, 1e-2] {
            for seed in 0..20 {
                let r = info_report(&transition_table(&perturb_design(&mub, eps, seed).unwrap()).unwrap()).unwrap();
                cases += 1;
                match (r.lower_bound, r.bound_holds) {
                    (Some(lb), Some(true)) => min_margin = min_margin.min(r.vd - lb),
                    (lb, _) => findings.push(format!(
                        "{{\"n\":{n},\"eps\":{eps:e},\"seed\":{seed},\"vd\":{:e},\"lowerBound\":{},\"lambdaMin\":{:e},\"epsilon\":{:e}}}",
                        r.vd,
                        lb.map_or("null".into(), |x| format!("{x:e}")),
                        r.lambda_min,
                        r.epsilon
                    )),
                }
            }
        }
    }
    for f in &findings {
        println!("FINDING lower-bound {f}");
    }
    ensure(findings.is_empty(), || format!("{} of {cases} cases violate the bound", findings.len()))?;
    Ok(format!("{cases} cases, 0 violations, min vd - bound {min_margin:.1e}"))
}

fn mutual_information(e: &DiscreteExperiment) -> f64 {
    let px = marginal(e);
    let mut total = 0.0;
    for (x, row) in e.conditional().iter().enumerate() {
        for (t, &c) in row.iter().enumerate() {
            let joint = e.prior()[t] * c;
            if joint > 0.0 {
                total += joint * (joint / (e.prior()[t] * px[x])).log2();
            }
        }
    }
    total
}

fn random_distribution(rng: &mut ChaCha8Rng, len: usize) -> Vec<f64> {
    let mut w: Vec<f64> = (0..len)
        .map(|_| if rng.random_bool(0.2) { 0.0 } else { rng.random::<f64>() })
        .collect();
    w[rng.random_range(0..len)] += 0.5;
    let s: f64 = w.iter().sum();
    w.iter().map(|x| x / s).collect()
}

fn lindley_examples() -> Outcome {
    let m1 = DiscreteExperiment::new(vec![0.5, 0.5], vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
    let m2 = DiscreteExperiment::new(vec![0.5, 0.5], vec![vec![0.5, 0.5], vec![0.5, 0.5]]).unwrap();
    let (i1, i2) = (average_info(&m1, LogBase::Two), average_info(&m2, LogBase::Two));
    ensure(i1 == 1.0, || format!("M1 average {i1}"))?;
    ensure(i2 == 0.0, || format!("M2 average {i2}"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst = 0.0f64;
    for trial in 0..1000 {
        let params = rng.random_range(1..7);
        let outcomes = rng.random_range(1..7);
        let prior = random_distribution(&mut rng, params);
        let columns: Vec<Vec<f64>> = (0..params).map(|_| random_distribution(&mut rng, outcomes)).collect();
        let conditional = (0..outcomes).map(|x| columns.iter().map(|c| c[x]).collect()).collect();
        let e = DiscreteExperiment::new(prior, conditional).unwrap();
        let avg = average_info(&e, LogBase::Two);
        ensure(avg >= -1e-12, || format!("trial {trial}: negative information {avg:e}"))?;
        let diff = (avg - mutual_information(&e)).abs();
        ensure(diff <= 1e-10, || format!("trial {trial}: oracle differs by {diff:e}"))?;
        worst = worst.max(diff);
    }
    Ok(format!("M1 = 1, M2 = 0 exactly; 1000 random experiments, max oracle gap {worst:.1e}"))
}

fn tomography_round_trip() -> Outcome {
    let mut worst = 0.0f64;
    for n in [2, 3, 5] {
        for design in [mub_prime(n).unwrap(), haar_random_design(n, 70 + n as u64).unwrap()] {
            for seed in 0..100 {
                let rho = random_density_matrix(n, 1000 * n as u64 + seed);
                let back = reconstruct_state(&forward_probabilities(&rho, &design).unwrap(), &design)
                    .map_err(|e| format!("n={n}: {e}"))?;
                let err = back.matrix().max_abs_diff(rho.matrix());
                ensure(err <= 1e-9, || format!("n={n} seed={seed}: error {err:e}"))?;
                worst = worst.max(err);
            }
        }
    }
    Ok(format!("600 states over 6 designs, max entry error {worst:.1e}"))
}

fn optimizer_reaches_maximum() -> Outcome {
    let target = 0.5 * (1.0f64 / 8.0).ln();
    ensure((max_info(2) - target).abs() < 1e-15, || "max_info(2) mismatch".into())?;
    let mub = mub_prime(2).unwrap();
    let mut worst = 0.0f64;
    for seed in 0..10 {
        let start = perturb_design(&mub, 0.05, seed).unwrap();
        let out = optimize_design(&start, 4000, 0.05, seed).unwrap();
        ensure(out.trace.windows(2).all(|w| w[1] >= w[0]), || format!("seed {seed}: trace not monotone"))?;
        let gap = target - out.final_info();
        ensure(gap.abs() <= 1e-6, || format!("seed {seed}: gap {gap:e}"))?;
        worst = worst.max(gap.abs());
    }
    Ok(format!("10 starts, max gap {worst:.1e} nats"))
}

fn cross_route_gram() -> Outcome {
    let mut worst = 0.0f64;
    for n in [2, 3] {
        for seed in 0..100 {
            let d = haar_random_design(n, 9000 + seed).unwrap();
            let diff = gram_matrix(&transition_table(&d).unwrap())
                .matrix()
                .max_abs_diff(gram_from_coords(&d).unwrap().matrix());
            ensure(diff <= 1e-10, || format!("n={n} seed={seed}: routes differ by {diff:e}"))?;
            worst = worst.max(diff);
        }
    }
    Ok(format!("200 designs, max entry difference {worst:.1e}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("unbiased-basis Gram determinant", mub_gram_determinant, 1),
        ("MUB optimality and Fischer-Hadamard bound", optimality_and_fischer_hadamard, 30),
        ("KRSW table singularity", krsw_singularity, 5),
        ("two-value closed-form spectrum", closed_form_spectrum, 10),
        ("perturbation lower bound (symmetrized reading)", lower_bound, 120),
        ("Lindley examples and mutual-information oracle", lindley_examples, 10),
        ("tomography round trip", tomography_round_trip, 30),
        ("optimizer reaches the maximum", optimizer_reaches_maximum, 60),
        ("cross-route Gram equality", cross_route_gram, 10),
    ];
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let result = match result {
            Ok(detail) if elapsed > Duration::from_secs(*limit) => {
                Err(format!("{detail}; exceeded the {limit} s budget"))
            }
            other => other,
        };
        let (status, detail) = match &result {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!("criterion {} [{name}]: {status} ({detail}) in {:.3} s (limit {limit} s)", i + 1, elapsed.as_secs_f64());
        if result.is_err() {
            failed += 1;
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
