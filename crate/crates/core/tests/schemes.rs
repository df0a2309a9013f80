use ndarray::{array, Array1};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use srk_core::ito_integrals::{sample_step_integrals, SeriesConfig};
use srk_core::schemes::*;
use srk_core::tables::{bundled, bundled_table, to_float, CoefficientTable, Rational, TableKind};

/// Plain explicit Runge–Kutta with tableau (A, c, b), written without
/// reference to the stochastic steppers.
fn deterministic_rk(a: &[Vec<f64>], c: &[f64], b: &[f64], f: &dyn Fn(f64, &[f64]) -> Vec<f64>, t: f64, x: &[f64], h: f64) -> Vec<f64> {
    let s = b.len();
    let mut k: Vec<Vec<f64>> = Vec::with_capacity(s);
    for i in 0..s {
        let mut y = x.to_vec();
        for (j, kj) in k.iter().enumerate() {
            for r in 0..y.len() {
                y[r] += h * a[i][j] * kj[r];
            }
        }
        k.push(f(t + c[i] * h, &y));
    }
    let mut out = x.to_vec();
    for i in 0..s {
        for r in 0..out.len() {
            out[r] += h * b[i] * k[i][r];
        }
    }
    out
}

fn pendulum(t: f64, x: &[f64]) -> Vec<f64> {
    vec![x[1], -x[0].sin() + 0.3 * t.cos()]
}

fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol * x.abs().max(y.abs()).max(1.0))
}

#[test]
fn zero_diffusion_reduces_to_deterministic_rk() {
    let h = 0.05;
    for table in bundled() {
        let m = if table.kind == TableKind::ScalarStrong { 1 } else { 2 };
        let sys = FnSystem::new(
            2,
            m,
            |t, x: &[f64], f: &mut [f64]| f.copy_from_slice(&pendulum(t, x)),
            |_, _: &[f64], g: &mut [f64]| g.fill(0.0),
        );
        let stepper = TableStepper::new(&table);
        let ft = stepper.table().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut x = vec![1.0, 0.0];
        let mut y = x.clone();
        for n in 0..100 {
            let t = n as f64 * h;
            let dw: Vec<f64> = (0..m).map(|k| 0.1 * (k as f64 + 1.0)).collect();
            let ints = sample_step_integrals(&dw, h, SeriesConfig::new(4).unwrap(), &mut rng).unwrap();
            let w = sample_weak_randoms(&mut rng, m, h);
            let noise = match stepper.noise_kind() {
                NoiseKind::Weak => StepNoise::Weak(&w),
                NoiseKind::Strong(_) => StepNoise::Strong(&ints),
            };
            let mut next = vec![0.0; 2];
            stepper.step(&sys, t, &x, h, noise, &mut next).unwrap();
            x = next;
            y = deterministic_rk(&ft.a0, &ft.c0, &ft.alpha, &pendulum, t, &y, h);
        }
        assert!(close(&x, &y, 1e-12), "{}: {x:?} vs {y:?}", table.name);
    }
}

#[test]
fn srk1w1_on_decay_matches_deterministic_rk() {
    let table = to_float(&bundled_table("SRK1W1").unwrap(), 17);
    let sys = FnSystem::new(1, 1, |_, x: &[f64], f: &mut [f64]| f[0] = -x[0], |_, _: &[f64], g: &mut [f64]| g[0] = 0.0);
    let decay = |_: f64, x: &[f64]| vec![-x[0]];
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut x, mut y) = (vec![1.0], vec![1.0]);
    for n in 0..20 {
        let t = n as f64 * 0.05;
        let ints = sample_step_integrals(&[0.2], 0.05, SeriesConfig::for_step(0.05), &mut rng).unwrap();
        let mut next = [0.0];
        scalar_strong_step(&table, &sys, t, &x, 0.05, &ints, &mut next).unwrap();
        x = next.to_vec();
        y = deterministic_rk(&table.a0, &table.c0, &table.alpha, &decay, t, &y, 0.05);
    }
    assert!((x[0] - y[0]).abs() < 1e-12);
}

#[test]
fn constant_drift_gives_forward_euler() {
    let sys = FnSystem::new(1, 1, |_, _: &[f64], f: &mut [f64]| f[0] = 2.5, |_, _: &[f64], g: &mut [f64]| g[0] = 0.0);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let ints = sample_step_integrals(&[0.3], 0.1, SeriesConfig::for_step(0.1), &mut rng).unwrap();
    for name in ["SRK1W1", "SRK2W1", "K1P1", "SRK1Wm", "SRK2Wm"] {
        let s = stepper_by_name(name).unwrap();
        let mut out = [0.0];
        s.step(&sys, 0.0, &[1.0], 0.1, StepNoise::Strong(&ints), &mut out).unwrap();
        assert!((out[0] - 1.25).abs() < 1e-14, "{name}: {}", out[0]);
    }
}

#[test]
fn srk1wm_scalar_noise_matches_hand_expansion() {
    let table = to_float(&bundled_table("SRK1Wm").unwrap(), 17);
    let f = |x: f64| 0.4 * x - 0.1 * x * x;
    let g = |x: f64| 0.3 * x + 0.2 * x.sin();
    let sys = FnSystem::new(1, 1, move |_, x: &[f64], o: &mut [f64]| o[0] = f(x[0]), move |_, x: &[f64], o: &mut [f64]| o[0] = g(x[0]));
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let h = 0.01;
    let mut x = 1.0;
    for _ in 0..50 {
        let dw = 0.1 * (rand::Rng::random::<f64>(&mut rng) - 0.5);
        let ints = sample_step_integrals(&[dw], h, SeriesConfig::for_step(h), &mut rng).unwrap();
        let mut out = [0.0];
        vector_strong_step(&table, &sys, 0.0, &[x], h, &ints, &mut out).unwrap();
        let i11 = (dw * dw - h) / 2.0;
        let g1 = g(x);
        let x2 = x + g1 * i11 / h.sqrt();
        let x3 = x - g1 * i11 / h.sqrt();
        let expected = x + f(x) * h + g1 * dw + 0.5 * h.sqrt() * (g(x2) - g(x3));
        assert!((out[0] - expected).abs() <= 1e-12 * expected.abs().max(1.0));
        x = out[0];
    }
}

#[test]
fn srk1w1_hand_expansion() {
    // SRK1W1 written out stage by stage for a scalar autonomous equation.
    let table = to_float(&bundled_table("SRK1W1").unwrap(), 17);
    let f = |x: f64| -0.5 * x + x.cos();
    let g = |x: f64| 0.2 * x + 0.1;
    let sys = FnSystem::new(1, 1, move |_, x: &[f64], o: &mut [f64]| o[0] = f(x[0]), move |_, x: &[f64], o: &mut [f64]| o[0] = g(x[0]));
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let h: f64 = 0.02;
    let sh = h.sqrt();
    let x = 0.7;
    for _ in 0..20 {
        let dw = sh * (rand::Rng::random::<f64>(&mut rng) - 0.5) * 3.0;
        let ints = sample_step_integrals(&[dw], h, SeriesConfig::for_step(h), &mut rng).unwrap();
        let (i1, i10, i11, i111) = (ints.single[0], ints.time_right[0], ints.double[[0, 0]], ints.triple_diag[0]);
        let x01 = x;
        let x11 = x;
        let x02 = x + 0.75 * f(x01) * h + 1.5 * g(x11) * i10 / h;
        let x12 = x + 0.25 * f(x01) * h + 0.5 * g(x11) * sh;
        let x13 = x + f(x01) * h - g(x11) * sh;
        let x14 = x + 0.25 * f(x01) * h + (-5.0 * g(x11) + 3.0 * g(x12) + 0.5 * g(x13)) * sh;
        let gs = [g(x11), g(x12), g(x13), g(x14)];
        let b1 = [-1.0, 4.0 / 3.0, 2.0 / 3.0, 0.0];
        let b2 = [-1.0, 4.0 / 3.0, -1.0 / 3.0, 0.0];
        let b3 = [2.0, -4.0 / 3.0, -2.0 / 3.0, 0.0];
        let b4 = [-2.0, 5.0 / 3.0, -2.0 / 3.0, 1.0];
        let mut expected = x + (f(x01) / 3.0 + 2.0 / 3.0 * f(x02)) * h;
        for i in 0..4 {
            expected += (b1[i] * i1 + b2[i] * i11 / sh + b3[i] * i10 / h + b4[i] * i111 / h) * gs[i];
        }
        let mut out = [0.0];
        scalar_strong_step(&table, &sys, 0.0, &[x], h, &ints, &mut out).unwrap();
        assert!((out[0] - expected).abs() < 1e-12, "{} vs {expected}", out[0]);
    }
}

fn trivial_weak_table() -> CoefficientTable {
    let mut t = CoefficientTable::zeros("trivial", TableKind::VectorWeak, 1);
    t.alpha = vec![Rational::ONE];
    t.beta1 = vec![Rational::ONE];
    t
}

#[test]
fn trivial_weak_table_is_em_driven_by_three_point_variables() {
    let table = to_float(&trivial_weak_table(), 17);
    let sys = FnSystem::new(
        2,
        3,
        |t, x: &[f64], f: &mut [f64]| {
            f[0] = x[1] * t;
            f[1] = -x[0];
        },
        |_, x: &[f64], g: &mut [f64]| {
            for (i, v) in g.iter_mut().enumerate() {
                *v = (i as f64 + 1.0) * 0.1 * x[i / 3];
            }
        },
    );
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut x = vec![1.0, 0.5];
    for n in 0..200 {
        let t = n as f64 * 0.01;
        let w = sample_weak_randoms(&mut rng, 3, 0.01);
        let mut a = vec![0.0; 2];
        let mut b = vec![0.0; 2];
        vector_weak_step(&table, &sys, t, &x, 0.01, &w, &mut a).unwrap();
        em_step(&sys, t, &x, 0.01, w.ihat.as_slice().unwrap(), &mut b).unwrap();
        assert!(close(&a, &b, 1e-14), "{a:?} {b:?}");
        x = a;
    }
}

#[test]
fn trivial_weak_table_increment_moments() {
    let table = to_float(&trivial_weak_table(), 17);
    let gm = [[1.0, 0.5], [-0.3, 2.0]];
    let sys = FnSystem::new(
        2,
        2,
        |_, _: &[f64], f: &mut [f64]| f.fill(0.0),
        move |_, _: &[f64], g: &mut [f64]| {
            g.copy_from_slice(&[gm[0][0], gm[0][1], gm[1][0], gm[1][1]]);
        },
    );
    let h = 0.1;
    let n = 100_000;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut mean = [0.0; 2];
    let mut cov = [[0.0; 2]; 2];
    for _ in 0..n {
        let w = sample_weak_randoms(&mut rng, 2, h);
        let mut out = [0.0; 2];
        vector_weak_step(&table, &sys, 0.0, &[0.0, 0.0], h, &w, &mut out).unwrap();
        for r in 0..2 {
            mean[r] += out[r] / n as f64;
            for c in 0..2 {
                cov[r][c] += out[r] * out[c] / n as f64;
            }
        }
    }
    for r in 0..2 {
        assert!(mean[r].abs() < 0.01, "{mean:?}");
        for c in 0..2 {
            let exact: f64 = h * (gm[r][0] * gm[c][0] + gm[r][1] * gm[c][1]);
            let tol = 0.05 * exact.abs().max(h * 0.5);
            assert!((cov[r][c] - exact).abs() < tol, "cov[{r}][{c}] = {} vs {exact}", cov[r][c]);
        }
    }
}

#[test]
fn three_point_law_and_moments() {
    let h = 0.25;
    let n = 100_000;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (mut zero, mut m2, mut m4, mut plus_two) = (0usize, 0.0, 0.0, 0usize);
    for _ in 0..n {
        let w = sample_weak_randoms(&mut rng, 1, h);
        let v = w.ihat[0];
        assert!(v == 0.0 || (v.abs() - (3.0 * h).sqrt()).abs() < 1e-15);
        assert!((w.itil[0].abs() - h.sqrt()).abs() < 1e-15);
        if v == 0.0 {
            zero += 1;
        }
        if w.itil[0] > 0.0 {
            plus_two += 1;
        }
        m2 += v * v / n as f64;
        m4 += v.powi(4) / n as f64;
    }
    let p0 = zero as f64 / n as f64;
    assert!((p0 - 2.0 / 3.0).abs() < 0.01 * 2.0 / 3.0, "{p0}");
    assert!((plus_two as f64 / n as f64 - 0.5).abs() < 0.01);
    assert!((m2 - h).abs() < 0.02 * h);
    assert!((m4 - 3.0 * h * h).abs() < 0.05 * 3.0 * h * h);
}

// Exact weak-error oracle for linear systems dx = A x dt + Σ_k B_k x dW^k.
// One step of any scheme is x' = R x with R a function of the discrete
// variables, so E[x_N] = E[R]^N x0 and E[x_N ⊗ x_N] = E[R ⊗ R]^N (x0 ⊗ x0)
// are computed exactly by enumerating the finitely many outcomes.

type Mat = Vec<Vec<f64>>;

fn matmul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let p = b[0].len();
    (0..n).map(|i| (0..p).map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

fn matvec(a: &Mat, v: &[f64]) -> Vec<f64> {
    a.iter().map(|r| r.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

fn matpow(a: &Mat, mut n: usize) -> Mat {
    let d = a.len();
    let mut result: Mat = (0..d).map(|i| (0..d).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
    let mut base = a.clone();
    while n > 0 {
        if n & 1 == 1 {
            result = matmul(&result, &base);
        }
        base = matmul(&base, &base);
        n >>= 1;
    }
    result
}

/// Scaling and squaring with a long Taylor series.
fn expm(a: &Mat) -> Mat {
    let d = a.len();
    let scale = 20;
    let factor = 2f64.powi(-scale);
    let small: Mat = a.iter().map(|r| r.iter().map(|v| v * factor).collect()).collect();
    let mut term: Mat = (0..d).map(|i| (0..d).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
    let mut sum = term.clone();
    for k in 1..20 {
        term = matmul(&term, &small);
        for r in term.iter_mut() {
            for v in r.iter_mut() {
                *v /= k as f64;
            }
        }
        for i in 0..d {
            for j in 0..d {
                sum[i][j] += term[i][j];
            }
        }
    }
    matpow(&sum, 1 << scale)
}

fn kron(a: &Mat, b: &Mat) -> Mat {
    let (n, p) = (a.len(), b.len());
    let mut out = vec![vec![0.0; n * p]; n * p];
    for i in 0..n {
        for j in 0..n {
            for k in 0..p {
                for l in 0..p {
                    out[i * p + k][j * p + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

struct Linear {
    a: Mat,
    b: Vec<Mat>,
}

impl SdeSystem for Linear {
    fn dim(&self) -> usize {
        self.a.len()
    }
    fn noise_dim(&self) -> usize {
        self.b.len()
    }
    fn drift(&self, _t: f64, x: &[f64], out: &mut [f64]) {
        out.copy_from_slice(&matvec(&self.a, x));
    }
    fn diffusion(&self, _t: f64, x: &[f64], out: &mut [f64]) {
        let m = self.b.len();
        for (k, bk) in self.b.iter().enumerate() {
            for (r, v) in matvec(bk, x).into_iter().enumerate() {
                out[r * m + k] = v;
            }
        }
    }
}

/// Returns (E[R], E[R⊗R]) for one step of `stepper`.
fn one_step_moments(stepper: &dyn Stepper, sys: &Linear, h: f64) -> (Mat, Mat) {
    let d = sys.dim();
    let m = sys.noise_dim();
    let s3h = (3.0 * h).sqrt();
    let ihat_vals = [(-s3h, 1.0 / 6.0), (0.0, 2.0 / 3.0), (s3h, 1.0 / 6.0)];
    let itil_vals = [(-h.sqrt(), 0.5), (h.sqrt(), 0.5)];
    let mut mean = vec![vec![0.0; d]; d];
    let mut second = vec![vec![0.0; d * d]; d * d];
    let outcomes = 6usize.pow(m as u32);
    for code in 0..outcomes {
        let mut c = code;
        let mut ihat = Array1::zeros(m);
        let mut itil = Array1::zeros(m);
        let mut p = 1.0;
        for k in 0..m {
            let (iv, ip) = ihat_vals[c % 3];
            c /= 3;
            let (tv, tp) = itil_vals[c % 2];
            c /= 2;
            ihat[k] = iv;
            itil[k] = tv;
            p *= ip * tp;
        }
        let w = WeakRandomSet::from_values(h, ihat, itil).unwrap();
        let mut r = vec![vec![0.0; d]; d];
        for j in 0..d {
            let mut e = vec![0.0; d];
            e[j] = 1.0;
            let mut out = vec![0.0; d];
            stepper.step(sys, 0.0, &e, h, StepNoise::Weak(&w), &mut out).unwrap();
            for i in 0..d {
                r[i][j] = out[i];
            }
        }
        let rr = kron(&r, &r);
        for i in 0..d {
            for j in 0..d {
                mean[i][j] += p * r[i][j];
            }
        }
        for i in 0..d * d {
            for j in 0..d * d {
                second[i][j] += p * rr[i][j];
            }
        }
    }
    (mean, second)
}

fn weak_errors(stepper: &dyn Stepper, sys: &Linear, x0: &[f64], t_end: f64, steps: &[usize]) -> Vec<(f64, f64, f64)> {
    let d = sys.dim();
    let at: Mat = sys.a.iter().map(|r| r.iter().map(|v| v * t_end).collect()).collect();
    let exact_mean = matvec(&expm(&at), x0);
    let id: Mat = (0..d).map(|i| (0..d).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
    let mut gen = kron(&sys.a, &id);
    let right = kron(&id, &sys.a);
    for i in 0..d * d {
        for j in 0..d * d {
            gen[i][j] += right[i][j];
        }
    }
    for b in &sys.b {
        let bb = kron(b, b);
        for i in 0..d * d {
            for j in 0..d * d {
                gen[i][j] += bb[i][j];
            }
        }
    }
    let gt: Mat = gen.iter().map(|r| r.iter().map(|v| v * t_end).collect()).collect();
    let x0x0: Vec<f64> = kron(&vec![x0.to_vec()], &vec![x0.to_vec()])[0].clone();
    let exact_second = matvec(&expm(&gt), &x0x0);

    steps
        .iter()
        .map(|&n| {
            let h = t_end / n as f64;
            let (mean, second) = one_step_moments(stepper, sys, h);
            let em = matvec(&matpow(&mean, n), x0);
            let es = matvec(&matpow(&second, n), &x0x0);
            let e1 = em.iter().zip(&exact_mean).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            let e2 = es.iter().zip(&exact_second).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            (h, e1, e2)
        })
        .collect()
}

fn slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let num: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    num / den
}

fn noncommutative_system() -> Linear {
    Linear {
        a: vec![vec![-0.5, 0.3], vec![0.2, -0.4]],
        b: vec![vec![vec![0.3, 0.1], vec![0.0, 0.2]], vec![vec![0.0, -0.2], vec![0.25, 0.1]]],
    }
}

#[test]
fn ri1_has_weak_order_two_on_noncommutative_linear_system() {
    let sys = noncommutative_system();
    let stepper = stepper_by_name("RI1").unwrap();
    let errs = weak_errors(stepper.as_ref(), &sys, &[1.0, 0.5], 1.0, &[4, 8, 16, 32, 64]);
    let p1 = slope(&errs.iter().map(|e| (e.0, e.1)).collect::<Vec<_>>());
    let p2 = slope(&errs.iter().map(|e| (e.0, e.2)).collect::<Vec<_>>());
    // the mean of a linear system solves a linear ODE, where the drift
    // tableau's deterministic order 3 shows through
    assert!(p1 > 1.8, "first moment slope {p1}: {errs:?}");
    assert!((p2 - 2.0).abs() < 0.2, "second moment slope {p2}: {errs:?}");
}

#[test]
fn weak_em_has_weak_order_one_on_noncommutative_linear_system() {
    let sys = noncommutative_system();
    let errs = weak_errors(&EulerMaruyama, &sys, &[1.0, 0.5], 1.0, &[8, 16, 32, 64, 128]);
    let p2 = slope(&errs.iter().map(|e| (e.0, e.2)).collect::<Vec<_>>());
    assert!((p2 - 1.0).abs() < 0.15, "{p2}: {errs:?}");
}

#[test]
fn expm_oracle_sanity() {
    let e = expm(&vec![vec![0.0, 1.0], vec![-1.0, 0.0]]);
    assert!((e[0][0] - 1f64.cos()).abs() < 1e-13 && (e[0][1] - 1f64.sin()).abs() < 1e-13);
    let _ = array![1.0];
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn shifting_the_state_shifts_the_step(
        c0 in -3.0f64..3.0, c1 in -3.0f64..3.0, x0 in -1.0f64..1.0, x1 in -1.0f64..1.0,
        seed in 0u64..1000, table_index in 0usize..6,
    ) {
        let table = &bundled()[table_index];
        let m = if table.kind == TableKind::ScalarStrong { 1 } else { 2 };
        let f = |t: f64, x: &[f64], o: &mut [f64]| { o[0] = x[1].sin() - 0.2 * x[0] + t; o[1] = -x[0] * x[1]; };
        let g = move |_: f64, x: &[f64], o: &mut [f64]| {
            for (i, v) in o.iter_mut().enumerate() { *v = 0.1 * (i as f64 + 1.0) * (x[i % 2] + 0.3 * x[(i + 1) % 2].cos()); }
        };
        let base = FnSystem::new(2, m, f, g);
        let shifted = FnSystem::new(2, m,
            move |t, y: &[f64], o: &mut [f64]| f(t, &[y[0] - c0, y[1] - c1], o),
            move |t, y: &[f64], o: &mut [f64]| g(t, &[y[0] - c0, y[1] - c1], o));
        let stepper = TableStepper::new(table);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = 0.05;
        let dw: Vec<f64> = (0..m).map(|k| 0.2 * (k as f64) - 0.1).collect();
        let ints = sample_step_integrals(&dw, h, SeriesConfig::new(3).unwrap(), &mut rng).unwrap();
        let w = sample_weak_randoms(&mut rng, m, h);
        let noise = match stepper.noise_kind() { NoiseKind::Weak => StepNoise::Weak(&w), _ => StepNoise::Strong(&ints) };
        let mut a = [0.0; 2];
        let mut b = [0.0; 2];
        stepper.step(&base, 0.3, &[x0, x1], h, noise, &mut a).unwrap();
        stepper.step(&shifted, 0.3, &[x0 + c0, x1 + c1], h, noise, &mut b).unwrap();
        prop_assert!((b[0] - c0 - a[0]).abs() < 1e-12 * (1.0 + c0.abs()));
        prop_assert!((b[1] - c1 - a[1]).abs() < 1e-12 * (1.0 + c1.abs()));
    }
}
