use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use srk_core::ito_integrals::{sample_step_integrals, SeriesConfig};
use srk_core::schemes::{
    integrate_steps, sample_weak_randoms, FnSystem, GaussianNoise, NoiseKind, SdeSystem, StepNoise, Stepper,
    TableStepper, WeakNoise,
};
use srk_core::tables::{bundled, bundled_table};
use srk_generated::{GeneratedStepper, ENTRIES};

const D: usize = 3;

// Nonlinear, time-dependent and non-commutative in every noise column.
fn system(m: usize) -> impl SdeSystem {
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

fn rel_close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0)
}

#[test]
fn every_bundled_table_has_generated_functions() {
    for table in bundled() {
        let max = if table.kind.as_str() == "scalar_strong" { 1 } else { 6 };
        for m in 1..=max {
            assert!(srk_generated::lookup(&table.name, m).is_some(), "{} m={m}", table.name);
        }
    }
}

#[test]
fn generated_steps_agree_with_the_interpreter() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for entry in ENTRIES.iter().filter(|e| e.m <= 4) {
        let table = bundled_table(entry.table).unwrap();
        let interp = TableStepper::new(&table);
        let generated = GeneratedStepper::new(entry);
        let sys = system(entry.m);
        match (interp.noise_kind(), generated.noise_kind()) {
            // With one noise component there are no off-diagonal integrals to draw.
            (NoiseKind::Strong(p), NoiseKind::Strong(q)) => {
                assert_eq!(p.time_mixed, q.time_mixed, "{}", entry.function);
                assert_eq!(p.cross && entry.m > 1, q.cross, "{}", entry.function);
            }
            (p, q) => assert_eq!(p, q, "{}", entry.function),
        }
        for _ in 0..100 {
            let h: f64 = rng.random_range(1e-3..0.2);
            let t = rng.random_range(0.0..2.0);
            let x: Vec<f64> = (0..D).map(|_| rng.random_range(-2.0..2.0)).collect();
            let mut a = vec![0.0; D];
            let mut b = vec![0.0; D];
            match interp.noise_kind() {
                NoiseKind::Strong(_) => {
                    let dw: Vec<f64> = (0..entry.m).map(|_| rng.random_range(-1.0..1.0) * h.sqrt()).collect();
                    let ints = sample_step_integrals(&dw, h, SeriesConfig::new(20).unwrap(), &mut rng).unwrap();
                    interp.step(&sys, t, &x, h, StepNoise::Strong(&ints), &mut a).unwrap();
                    generated.step(&sys, t, &x, h, StepNoise::Strong(&ints), &mut b).unwrap();
                }
                NoiseKind::Weak => {
                    let w = sample_weak_randoms(&mut rng, entry.m, h);
                    interp.step(&sys, t, &x, h, StepNoise::Weak(&w), &mut a).unwrap();
                    generated.step(&sys, t, &x, h, StepNoise::Weak(&w), &mut b).unwrap();
                }
            }
            for r in 0..D {
                assert!(rel_close(a[r], b[r]), "{}: {} vs {}", entry.function, a[r], b[r]);
            }
        }
    }
}

#[test]
fn generated_trajectories_agree_with_the_interpreter() {
    for entry in ENTRIES.iter().filter(|e| e.m <= 4) {
        let interp = TableStepper::new(&bundled_table(entry.table).unwrap());
        let generated = GeneratedStepper::new(entry);
        let sys = system(entry.m);
        let x0 = [0.5, -0.2, 1.0];
        let run = |stepper: &dyn Stepper| match stepper.noise_kind() {
            NoiseKind::Strong(_) => {
                let mut src = GaussianNoise::new(ChaCha8Rng::seed_from_u64(5));
                integrate_steps(stepper, &sys, &x0, 0.0, 0.01, 100, &mut src).unwrap()
            }
            NoiseKind::Weak => {
                let mut src = WeakNoise::new(ChaCha8Rng::seed_from_u64(5));
                integrate_steps(stepper, &sys, &x0, 0.0, 0.01, 100, &mut src).unwrap()
            }
        };
        let a = run(&interp);
        let b = run(&generated);
        for (p, q) in a.iter().zip(b.iter()) {
            assert!(rel_close(*p, *q), "{}: {p} vs {q}", entry.function);
        }
    }
}

#[test]
fn generated_stepper_rejects_mismatched_dimensions() {
    let entry = srk_generated::lookup("SRK1Wm", 2).unwrap();
    let stepper = GeneratedStepper::new(entry);
    let sys = system(3);
    let ints = sample_step_integrals(&[0.1, 0.2], 0.01, SeriesConfig::new(5).unwrap(), &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
    let mut out = vec![0.0; D];
    assert!(stepper.step(&sys, 0.0, &[0.0; D], 0.01, StepNoise::Strong(&ints), &mut out).is_err());
    let w = sample_weak_randoms(&mut ChaCha8Rng::seed_from_u64(1), 2, 0.01);
    let sys2 = system(2);
    assert!(stepper.step(&sys2, 0.0, &[0.0; D], 0.01, StepNoise::Weak(&w), &mut out).is_err());
}
