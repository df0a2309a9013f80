//! End-to-end acceptance run: ten numbered criteria, one PASS/FAIL line each.
//!
//! Runs as a plain binary (`harness = false`) so the criteria execute in
//! order with their own timing. Pass criterion numbers as arguments to run a
//! subset, e.g. `cargo test -p srk-cli --test acceptance -- 4 9`.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use ndarray::Array2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use srk_core::convergence::{builtin_problem, estimate_strong_order, estimate_weak_order, EstimateOptions, OrderEstimate};
use srk_core::ito_integrals::{
    double_cross_with, double_same, levy_area, sample_step_integrals, SeriesConfig, SeriesDraws, SeriesForm,
};
use srk_core::montecarlo::{run_trials, trial_stream, McConfig};
use srk_core::schemes::{
    em_step, integrate, integrate_steps, sample_weak_randoms, vector_weak_step, EulerMaruyama, FnSystem, GaussianNoise,
    NoiseKind, SdeSystem, StepNoise, Stepper, TableStepper, WeakNoise,
};
use srk_core::tables::{bundled, parse_table, to_float, validate, CoefficientTable, Rational, TableKind};
use srk_core::wiener::TimeGrid;
use srk_generated::{GeneratedStepper, ENTRIES};

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Option<Duration>,
    run: fn() -> Outcome,
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rel_close(a: f64, b: f64, tol: f64, floor: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(floor)
}

fn hs(from: i32, to: i32) -> Vec<f64> {
    (from..=to).map(|k| 0.5f64.powi(k)).collect()
}

fn describe(est: &OrderEstimate) -> String {
    let errs: Vec<String> = est.errors.iter().map(|e| format!("{e:.2e}")).collect();
    format!("slope {:.3}, errors [{}]", est.slope, errs.join(", "))
}

fn strong_slope(method: &str, problem: &str, hs: &[f64], paths: usize, band: (f64, f64)) -> Outcome {
    let stepper = srk_core::schemes::stepper_by_name(method).map_err(|e| e.to_string())?;
    let problem = builtin_problem(problem).map_err(|e| e.to_string())?;
    let est = estimate_strong_order(&*stepper, &problem, hs, paths, &EstimateOptions::new(7)).map_err(|e| e.to_string())?;
    let text = format!("{method} on {}: {}", problem.name, describe(&est));
    ensure(!est.degenerate, || format!("{text} (degenerate)"))?;
    ensure((band.0..=band.1).contains(&est.slope), || format!("{text} outside [{}, {}]", band.0, band.1))?;
    Ok(text)
}

// 1
fn em_strong() -> Outcome {
    strong_slope("EM", "gbm", &hs(4, 10), 200, (0.35, 0.65))
}

// 2
fn vector_strong() -> Outcome {
    let a = strong_slope("SRK1Wm", "diag-gbm", &hs(4, 10), 200, (0.85, 1.15))?;
    let b = strong_slope("SRK2Wm", "diag-gbm", &hs(4, 10), 200, (0.85, 1.15))?;
    Ok(format!("{a}; {b}"))
}

// 3
fn scalar_strong() -> Outcome {
    strong_slope("SRK1W1", "gbm", &hs(4, 9), 500, (1.3, 1.7))
}

// 4
fn em_weak() -> Outcome {
    let problem = builtin_problem("gbm").map_err(|e| e.to_string())?;
    let mut opts = EstimateOptions::new(7);
    opts.workers = 4;
    let est = estimate_weak_order(&EulerMaruyama, &problem, "identity", &hs(3, 6), 1_000_000, &opts)
        .map_err(|e| e.to_string())?;
    let se: Vec<String> = est.mc_stderr.iter().map(|e| format!("{e:.1e}")).collect();
    let text = format!("{} (stderr [{}])", describe(&est), se.join(", "));
    for (e, s) in est.errors.iter().zip(&est.mc_stderr) {
        ensure(s < e, || format!("{text}: standard error {s:.2e} not below bias {e:.2e}"))?;
    }
    ensure(est.reliable, || format!("{text}: estimate flagged unreliable"))?;
    ensure((0.7..=1.3).contains(&est.slope), || format!("{text} outside [0.7, 1.3]"))?;
    Ok(text)
}

// 5
fn fine_cross_integral<R: Rng>(rng: &mut R, h: f64, substeps: usize) -> f64 {
    let s = (h / substeps as f64).sqrt();
    let (mut w1, mut acc) = (0.0, 0.0);
    for _ in 0..substeps {
        let d1: f64 = s * rng.sample::<f64, _>(StandardNormal);
        let d2: f64 = s * rng.sample::<f64, _>(StandardNormal);
        acc += w1 * d2;
        w1 += d1;
    }
    acc
}

fn integral_invariants() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let draws_n = 100_000;
    for i in 0..draws_n {
        let m = rng.random_range(1..=4usize);
        let h: f64 = 10f64.powf(rng.random_range(-4.0..0.0));
        let n_terms = rng.random_range(1..=40usize);
        let dw: Vec<f64> = (0..m).map(|_| h.sqrt() * rng.sample::<f64, _>(StandardNormal)).collect();
        let cfg = SeriesConfig::new(n_terms).map_err(|e| e.to_string())?;
        let seed: u64 = rng.random();
        let set = sample_step_integrals(&dw, h, cfg, &mut ChaCha8Rng::seed_from_u64(seed)).map_err(|e| e.to_string())?;
        let draws = SeriesDraws::sample(&mut ChaCha8Rng::seed_from_u64(seed), m, cfg);
        let scalar = double_cross_with(&dw, h, &draws, SeriesForm::Scalar).map_err(|e| e.to_string())?;
        let matrix = double_cross_with(&dw, h, &draws, SeriesForm::Matrix).map_err(|e| e.to_string())?;
        for a in 0..m {
            let exact = double_same(dw[a], h);
            ensure(set.double[[a, a]] == exact && scalar[[a, a]] == exact && matrix[[a, a]] == exact, || {
                format!("draw {i}: diagonal {a} not bit-exact")
            })?;
            let split = set.time_left[a] + set.time_right[a];
            let scale = set.time_left[a].abs().max(set.time_right[a].abs());
            ensure(rel_close(split, h * dw[a], 1e-12, scale), || {
                format!("draw {i}: time split {split} vs {}", h * dw[a])
            })?;
            for b in 0..m {
                if a == b {
                    continue;
                }
                let sum = set.double[[a, b]] + set.double[[b, a]];
                let scale = set.double[[a, b]].abs().max(set.double[[b, a]].abs());
                ensure(rel_close(sum, dw[a] * dw[b], 1e-12, scale), || {
                    format!("draw {i}: I^{a}{b} + I^{b}{a} = {sum} vs {}", dw[a] * dw[b])
                })?;
            }
        }
        // Series part summed both ways, compared in the max norm of the matrix.
        let area_s = levy_area(&dw, h, &draws, SeriesForm::Scalar).map_err(|e| e.to_string())?;
        let area_m = levy_area(&dw, h, &draws, SeriesForm::Matrix).map_err(|e| e.to_string())?;
        let norm = area_s.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
        let diff = area_s.iter().zip(area_m.iter()).fold(0.0f64, |acc, (p, q)| acc.max((p - q).abs()));
        ensure(diff <= 1e-12 * norm, || format!("draw {i}: scalar and matrix series differ by {diff:e} (norm {norm:e})"))?;
        ensure(scalar.iter().zip(matrix.iter()).all(|(p, q)| (p - q).abs() <= 1e-12 * norm.max(f64::MIN_POSITIVE) || p == q), || {
            format!("draw {i}: scalar and matrix double integrals differ")
        })?;
        // The sampled set must replay the same draws after its ζ values.
        let mut replay = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..m {
            let _: f64 = replay.sample(StandardNormal);
        }
        if m > 1 {
            let again = double_cross_with(&dw, h, &SeriesDraws::sample(&mut replay, m, cfg), SeriesForm::Scalar)
                .map_err(|e| e.to_string())?;
            ensure(again == set.double, || format!("draw {i}: series draws not replayable"))?;
        }
    }

    let h: f64 = 0.01;
    let cfg = SeriesConfig::new(100).map_err(|e| e.to_string())?;
    let n = 100_000;
    let mut second = 0.0;
    for _ in 0..n {
        let dw: Vec<f64> = (0..2).map(|_| h.sqrt() * rng.sample::<f64, _>(StandardNormal)).collect();
        let draws = SeriesDraws::sample(&mut rng, 2, cfg);
        let v = double_cross_with(&dw, h, &draws, SeriesForm::Scalar).map_err(|e| e.to_string())?[[0, 1]];
        second += v * v / n as f64;
    }
    let oracle_n = 10_000;
    let mut orng = ChaCha8Rng::seed_from_u64(55);
    let oracle = (0..oracle_n).map(|_| fine_cross_integral(&mut orng, h, 10_000).powi(2)).sum::<f64>() / oracle_n as f64;
    let target = h * h / 2.0;
    let text = format!(
        "{draws_n} draws clean; E[(I^12)^2] series {second:.4e}, fine oracle {oracle:.4e}, h^2/2 {target:.4e}"
    );
    ensure(rel_close(oracle, target, 0.05, 0.0), || format!("{text}: oracle off h^2/2"))?;
    ensure(rel_close(second, oracle, 0.05, 0.0), || format!("{text}: series off oracle"))?;
    ensure(rel_close(second, target, 0.05, 0.0), || format!("{text}: series off h^2/2"))?;
    Ok(text)
}

// 6
const D: usize = 3;

fn test_system(m: usize) -> impl SdeSystem {
    FnSystem::new(
        D,
        m,
        |t: f64, x: &[f64], out: &mut [f64]| {
            out[0] = -x[0] + x[1].sin() + 0.3 * t;
            out[1] = x[0] * x[2] - 0.5 * x[1];
            out[2] = (0.2 * t).cos() - x[2] * x[2] * 0.1;
        },
        move |t: f64, x: &[f64], out: &mut [f64]| {
            for i in 0..D {
                for k in 0..m {
                    let s = (k + 1) as f64;
                    out[i * m + k] = 0.2 * s * x[(i + k) % D].cos() + 0.05 * x[(i + k + 1) % D] * (t + s).sin();
                }
            }
        },
    )
}

fn generated_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../generated/src/generated")
}

fn codegen_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut pairs = 0;
    let mut worst = 0.0f64;
    for table in bundled() {
        let interp = TableStepper::new(&table);
        // Scalar-noise tables exist only for m = 1.
        let ms = if table.kind == TableKind::ScalarStrong { 1..=1 } else { 1..=4 };
        for m in ms {
            let generated = GeneratedStepper::for_table(&table.name, m)
                .ok_or_else(|| format!("no generated stepper for {} m={m}", table.name))?;
            let sys = test_system(m);
            for _ in 0..100 {
                let h: f64 = rng.random_range(1e-3..0.2);
                let t = rng.random_range(0.0..2.0);
                let x: Vec<f64> = (0..D).map(|_| rng.random_range(-2.0..2.0)).collect();
                let (mut a, mut b) = (vec![0.0; D], vec![0.0; D]);
                match interp.noise_kind() {
                    NoiseKind::Strong(_) => {
                        let dw: Vec<f64> = (0..m).map(|_| h.sqrt() * rng.sample::<f64, _>(StandardNormal)).collect();
                        let ints = sample_step_integrals(&dw, h, SeriesConfig::for_step(h), &mut rng)
                            .map_err(|e| e.to_string())?;
                        interp.step(&sys, t, &x, h, StepNoise::Strong(&ints), &mut a).map_err(|e| e.to_string())?;
                        generated.step(&sys, t, &x, h, StepNoise::Strong(&ints), &mut b).map_err(|e| e.to_string())?;
                    }
                    NoiseKind::Weak => {
                        let w = sample_weak_randoms(&mut rng, m, h);
                        interp.step(&sys, t, &x, h, StepNoise::Weak(&w), &mut a).map_err(|e| e.to_string())?;
                        generated.step(&sys, t, &x, h, StepNoise::Weak(&w), &mut b).map_err(|e| e.to_string())?;
                    }
                }
                for r in 0..D {
                    let rel = (a[r] - b[r]).abs() / a[r].abs().max(b[r].abs()).max(1.0);
                    worst = worst.max(rel);
                    ensure(rel <= 1e-12, || format!("{} m={m}: {} vs {}", table.name, a[r], b[r]))?;
                }
            }
            pairs += 1;
        }
    }

    let mut files = 0;
    for entry in ENTRIES.iter() {
        let path = generated_dir().join(format!("{}.rs", entry.function));
        let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
        for line in text.lines() {
            if let Some(rest) = line.strip_prefix("const ") {
                let value = rest.split_once(": f64 = ").and_then(|(_, v)| v.split(';').next());
                let value: f64 = value.and_then(|v| v.parse().ok()).ok_or_else(|| format!("unreadable constant `{line}`"))?;
                ensure(value != 0.0, || format!("{}: zero constant `{line}`", path.display()))?;
            }
            ensure(!line.contains("0.0 *") && !line.contains("* 0.0"), || {
                format!("{}: zero-coefficient term `{line}`", path.display())
            })?;
        }
        files += 1;
    }
    Ok(format!(
        "{pairs} table/m pairs x 100 steps, worst relative difference {worst:.1e}; {files} emitted sources free of zero terms"
    ))
}

// 7
/// Explicit Runge-Kutta for the tableau `(A, c, b)`, written without
/// reference to the stochastic steppers.
fn plain_rk(a: &[Vec<f64>], c: &[f64], b: &[f64], f: &dyn Fn(f64, &[f64]) -> Vec<f64>, t: f64, x: &[f64], h: f64) -> Vec<f64> {
    let mut k: Vec<Vec<f64>> = Vec::with_capacity(b.len());
    for i in 0..b.len() {
        let mut y = x.to_vec();
        for (j, kj) in k.iter().enumerate() {
            for r in 0..y.len() {
                y[r] += h * a[i][j] * kj[r];
            }
        }
        k.push(f(t + c[i] * h, &y));
    }
    let mut out = x.to_vec();
    for (bi, ki) in b.iter().zip(&k) {
        for r in 0..out.len() {
            out[r] += h * bi * ki[r];
        }
    }
    out
}

fn forced_pendulum(t: f64, x: &[f64]) -> Vec<f64> {
    vec![x[1], -x[0].sin() + 0.3 * t.cos()]
}

fn deterministic_degeneration() -> Outcome {
    let h = 0.05;
    type Method = (String, usize, Box<dyn Stepper>, Vec<Vec<f64>>, Vec<f64>, Vec<f64>);
    let mut methods: Vec<Method> = vec![("EM".into(), 2, Box::new(EulerMaruyama), vec![vec![0.0]], vec![0.0], vec![1.0])];
    for t in bundled() {
        let f = |v: &[Rational]| v.iter().map(Rational::to_f64).collect::<Vec<f64>>();
        let a: Vec<Vec<f64>> = t.a0.iter().map(|row| f(row)).collect();
        let m = if t.kind == TableKind::ScalarStrong { 1 } else { 2 };
        methods.push((t.name.clone(), m, Box::new(TableStepper::new(&t)), a, f(&t.c0), f(&t.alpha)));
    }
    let mut worst = 0.0f64;
    for (name, m, stepper, a, c, b) in &methods {
        let m = *m;
        let sys = FnSystem::new(
            2,
            m,
            |t, x: &[f64], f: &mut [f64]| f.copy_from_slice(&forced_pendulum(t, x)),
            |_, _: &[f64], g: &mut [f64]| g.fill(0.0),
        );
        let grid = TimeGrid::new(0.0, 100.0 * h, 100).map_err(|e| e.to_string())?;
        let x0 = [1.0, 0.0];
        let traj = match stepper.noise_kind() {
            NoiseKind::Strong(_) => integrate(&**stepper, &sys, &x0, &grid, &mut GaussianNoise::new(ChaCha8Rng::seed_from_u64(7))),
            NoiseKind::Weak => integrate(&**stepper, &sys, &x0, &grid, &mut WeakNoise::new(ChaCha8Rng::seed_from_u64(7))),
        }
        .map_err(|e| format!("{name}: {e}"))?;
        let mut y = x0.to_vec();
        for n in 0..100 {
            y = plain_rk(a, c, b, &forced_pendulum, n as f64 * h, &y, h);
            for r in 0..2 {
                let diff = (traj[[n + 1, r]] - y[r]).abs();
                worst = worst.max(diff);
                ensure(diff <= 1e-12, || format!("{name} step {}: {} vs {}", n + 1, traj[[n + 1, r]], y[r]))?;
            }
        }
    }
    Ok(format!("{} methods, worst absolute difference {worst:.1e} over 100 steps", methods.len()))
}

// 8
fn monte_carlo() -> Outcome {
    let sys = FnSystem::new(
        1,
        1,
        |_t: f64, x: &[f64], o: &mut [f64]| o[0] = 0.5 * x[0],
        |_t: f64, x: &[f64], o: &mut [f64]| o[0] = 0.3 * x[0],
    );
    let x0 = [1.0];

    let ri1 = TableStepper::new(&srk_core::tables::bundled_table("RI1").map_err(|e| e.to_string())?);
    let grid = TimeGrid::new(0.0, 1.0, 16).map_err(|e| e.to_string())?;
    for stepper in [&EulerMaruyama as &dyn Stepper, &ri1] {
        let cfg = McConfig::new(stepper, grid, &x0, 4000, 8).workers(3).with_variance();
        let a = run_trials(&sys, &cfg).map_err(|e| e.to_string())?;
        let b = run_trials(&sys, &cfg).map_err(|e| e.to_string())?;
        let bits = |r: &srk_core::montecarlo::McResult| -> Vec<u64> {
            let mut v: Vec<u64> = r.stats.mean().iter().map(|x| x.to_bits()).collect();
            v.extend(r.stats.variance().unwrap().iter().map(|x| x.to_bits()));
            v
        };
        ensure(bits(&a) == bits(&b) && a.assignment == b.assignment, || {
            format!("{}: reruns differ", stepper.name())
        })?;
    }

    let trials = 10_000;
    let cfg = McConfig::new(&EulerMaruyama, grid, &x0, trials, 77).workers(4);
    let result = run_trials(&sys, &cfg).map_err(|e| e.to_string())?;
    let mut sum = Array2::<f64>::zeros((17, 1));
    for (w, &count) in result.assignment.iter().enumerate() {
        for local in 0..count {
            let mut noise = GaussianNoise::new(trial_stream(77, w, local));
            sum += &integrate(&EulerMaruyama, &sys, &x0, &grid, &mut noise).map_err(|e| e.to_string())?;
        }
    }
    let batch = sum / trials as f64;
    let mut worst = 0.0f64;
    for (a, b) in result.mean().iter().zip(batch.iter()) {
        worst = worst.max((a - b).abs() / a.abs().max(b.abs()));
    }
    ensure(worst <= 1e-12, || format!("online vs batch relative difference {worst:e}"))?;

    // Combined error: Monte Carlo standard error plus EM bias, the latter
    // measured by halving the step.
    let exact = 0.5f64.exp();
    let run = |steps: usize| -> Result<(f64, f64), String> {
        let grid = TimeGrid::new(0.0, 1.0, steps).map_err(|e| e.to_string())?;
        let cfg = McConfig::new(&EulerMaruyama, grid, &x0, 100_000, 2024).workers(4).with_variance();
        let r = run_trials(&sys, &cfg).map_err(|e| e.to_string())?;
        Ok((r.mean()[[steps, 0]], r.stats.std_error().unwrap()[[steps, 0]]))
    };
    let (mean, se) = run(128)?;
    let (half, _) = run(256)?;
    let combined = se + (mean - half).abs();
    let text = format!(
        "reruns bitwise identical; online vs batch {worst:.1e}; E[x(1)] {mean:.5} vs {exact:.5} (combined stderr {combined:.1e})"
    );
    ensure((mean - exact).abs() <= 3.0 * combined, || format!("{text}: mean outside 3 combined stderr"))?;
    Ok(text)
}

// 9
fn weak_randoms() -> Outcome {
    let h: f64 = 0.25;
    let n = 100_000;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut counts = [0usize; 3];
    let (mut m2, mut m4) = (0.0, 0.0);
    let s3h = (3.0 * h).sqrt();
    for _ in 0..n {
        let v = sample_weak_randoms(&mut rng, 1, h).ihat[0];
        match v {
            x if x == -s3h => counts[0] += 1,
            0.0 => counts[1] += 1,
            x if x == s3h => counts[2] += 1,
            other => return Err(format!("value {other} outside the three-point support")),
        }
        m2 += v * v / n as f64;
        m4 += v.powi(4) / n as f64;
    }
    let law: Vec<f64> = counts.iter().map(|&c| c as f64 / n as f64).collect();
    for (p, q) in law.iter().zip([1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0]) {
        ensure((p - q).abs() <= 0.01, || format!("law {law:?}"))?;
    }
    ensure(rel_close(m2, h, 0.02, 0.0), || format!("E[I^2] = {m2} vs {h}"))?;
    ensure(rel_close(m4, 3.0 * h * h, 0.05, 0.0), || format!("E[I^4] = {m4} vs {}", 3.0 * h * h))?;

    let mut trivial = CoefficientTable::zeros("trivial", TableKind::VectorWeak, 1);
    trivial.alpha = vec![Rational::ONE];
    trivial.beta1 = vec![Rational::ONE];
    let table = to_float(&trivial, 17);
    let sys = FnSystem::new(
        2,
        3,
        |t, x: &[f64], f: &mut [f64]| {
            f[0] = x[1] * t;
            f[1] = -x[0].sin();
        },
        |_, x: &[f64], g: &mut [f64]| {
            for (i, v) in g.iter_mut().enumerate() {
                *v = (i as f64 + 1.0) * 0.1 * x[i / 3].cos();
            }
        },
    );
    let mut x = vec![1.0, 0.5];
    let mut worst = 0.0f64;
    for n in 0..200 {
        let t = n as f64 * 0.01;
        let w = sample_weak_randoms(&mut rng, 3, 0.01);
        let (mut a, mut b) = (vec![0.0; 2], vec![0.0; 2]);
        vector_weak_step(&table, &sys, t, &x, 0.01, &w, &mut a).map_err(|e| e.to_string())?;
        em_step(&sys, t, &x, 0.01, w.ihat.as_slice().unwrap(), &mut b).map_err(|e| e.to_string())?;
        for r in 0..2 {
            let rel = (a[r] - b[r]).abs() / a[r].abs().max(b[r].abs()).max(1.0);
            worst = worst.max(rel);
            ensure(rel <= 1e-14, || format!("step {n}: trivial table {} vs EM {}", a[r], b[r]))?;
        }
        x = a;
    }
    // The whole-trajectory driver path gives the same answer.
    let stepper = TableStepper::from_float(table);
    let x0 = [1.0, 0.5];
    let via_driver =
        integrate_steps(&stepper, &sys, &x0, 0.0, 0.01, 50, &mut WeakNoise::new(ChaCha8Rng::seed_from_u64(3)))
            .map_err(|e| e.to_string())?;
    ensure(via_driver.iter().all(|v| v.is_finite()), || "non-finite trajectory".into())?;
    Ok(format!(
        "law [{:.4}, {:.4}, {:.4}], E[I^2]/h {:.4}, E[I^4]/(3h^2) {:.4}; trivial table vs EM {worst:.1e}",
        law[0],
        law[1],
        law[2],
        m2 / h,
        m4 / (3.0 * h * h)
    ))
}

// 10
fn table_round_trip() -> Outcome {
    let tables = bundled();
    for t in &tables {
        let back = parse_table(&t.to_json()).map_err(|e| format!("{}: {e}", t.name))?;
        ensure(&back == t, || format!("{}: round trip changed the table", t.name))?;
        let sum_a: Rational = t.alpha.iter().copied().sum();
        let sum_b1: Rational = t.beta1.iter().copied().sum();
        ensure(sum_a == Rational::ONE, || format!("{}: sum a = {sum_a}", t.name))?;
        ensure(sum_b1 == Rational::ONE, || format!("{}: sum b1 = {sum_b1}", t.name))?;
        ensure(validate(t).passed(), || format!("{}: validation report fails", t.name))?;
    }
    let names: Vec<&str> = tables.iter().map(|t| t.name.as_str()).collect();
    Ok(format!("{} tables: {}", tables.len(), names.join(", ")))
}

fn criteria() -> Vec<Criterion> {
    let min = |m: u64| Some(Duration::from_secs(60 * m));
    vec![
        Criterion { id: 1, name: "EM strong order on GBM", budget: Some(Duration::from_secs(30)), run: em_strong },
        Criterion { id: 2, name: "SRK1Wm/SRK2Wm strong order on diagonal GBM", budget: min(2), run: vector_strong },
        Criterion { id: 3, name: "SRK1W1 strong order on scalar GBM", budget: min(2), run: scalar_strong },
        Criterion { id: 4, name: "EM weak order on GBM", budget: min(10), run: em_weak },
        Criterion { id: 5, name: "Iterated-integral invariants", budget: min(1), run: integral_invariants },
        Criterion { id: 6, name: "Generated vs interpreted steppers", budget: min(1), run: codegen_equivalence },
        Criterion { id: 7, name: "Deterministic degeneration", budget: None, run: deterministic_degeneration },
        Criterion { id: 8, name: "Monte Carlo reproducibility and mean", budget: None, run: monte_carlo },
        Criterion { id: 9, name: "Weak random variables", budget: None, run: weak_randoms },
        Criterion { id: 10, name: "Table round trip and weight sums", budget: None, run: table_round_trip },
    ]
}

fn main() -> ExitCode {
    let wanted: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    let mut ran = 0;
    for c in criteria().into_iter().filter(|c| wanted.is_empty() || wanted.contains(&c.id)) {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.budget) {
            (Ok(text), Some(b)) if elapsed > b => Err(format!("{text}; took {elapsed:.1?}, budget {b:?}")),
            (o, _) => o,
        };
        ran += 1;
        match outcome {
            Ok(text) => println!("PASS [{:>2}] {} ({:.1?}): {text}", c.id, c.name, elapsed),
            Err(text) => {
                failed += 1;
                println!("FAIL [{:>2}] {} ({:.1?}): {text}", c.id, c.name, elapsed);
            }
        }
    }
    println!("acceptance: {} of {ran} criteria passed", ran - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
