//! Empirical strong and weak order estimates on problems with known
//! solutions.
//!
//! Strong errors compare each method against the exact solution driven by
//! the same Brownian path: one fine master path is drawn per sample and every
//! coarser grid sums its increments. Auxiliary method randomness (ζ, Lévy-area
//! series) is drawn fresh for every `(path, h)`. Orders are least-squares
//! slopes of `ln error` against `ln h`.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;
use std::sync::Arc;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::montecarlo::{run_functional, seed_worker, McConfig};
use crate::schemes::{integrate, FnSystem, NoiseKind, PathNoise, SdeSystem, Stepper};
use crate::wiener::{csv_err, generate_path, TimeGrid, WienerPath};
use crate::{Error, Result};

/// Largest master grid the strong estimator will build.
pub const MAX_FINE_STEPS: usize = 1 << 22;

/// Errors below this multiple of the solution scale count as rounding noise.
const ROUNDING_LEVEL: f64 = 1e-11;

pub type ExactFn = dyn Fn(&WienerPath, usize) -> Vec<f64> + Send + Sync;

/// An SDE with a pathwise exact solution and analytic expectations.
#[derive(Clone)]
pub struct TestProblem {
    pub name: String,
    pub description: String,
    pub sys: Arc<dyn SdeSystem + Send + Sync>,
    pub x0: Vec<f64>,
    pub t0: f64,
    pub t_end: f64,
    exact_strong: Arc<ExactFn>,
    /// `E[F(x(T))]` by functional name (see [`functional`]).
    pub exact_weak: BTreeMap<String, f64>,
}

impl std::fmt::Debug for TestProblem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TestProblem")
            .field("name", &self.name)
            .field("x0", &self.x0)
            .field("t_end", &self.t_end)
            .field("exact_weak", &self.exact_weak)
            .finish()
    }
}

impl TestProblem {
    pub fn dim(&self) -> usize {
        self.sys.dim()
    }

    pub fn noise_dim(&self) -> usize {
        self.sys.noise_dim()
    }

    /// Exact state at node `n` of `path`'s grid, which must start at `t0`.
    pub fn exact(&self, path: &WienerPath, n: usize) -> Vec<f64> {
        (self.exact_strong)(path, n)
    }

    /// `dx = μx dt + σx dW`.
    pub fn gbm(mu: f64, sigma: f64, x0: f64, t_end: f64) -> Self {
        let sys = FnSystem::new(
            1,
            1,
            move |_t: f64, x: &[f64], out: &mut [f64]| out[0] = mu * x[0],
            move |_t: f64, x: &[f64], out: &mut [f64]| out[0] = sigma * x[0],
        );
        let exact = move |path: &WienerPath, n: usize| {
            let t = path.grid().time(n) - path.grid().t0();
            let w: f64 = path.increments().column(0).iter().take(n).sum();
            vec![x0 * ((mu - 0.5 * sigma * sigma) * t + sigma * w).exp()]
        };
        let weak = BTreeMap::from([
            ("identity".to_string(), x0 * (mu * t_end).exp()),
            ("square".to_string(), x0 * x0 * ((2.0 * mu + sigma * sigma) * t_end).exp()),
            ("sum".to_string(), x0 * (mu * t_end).exp()),
        ]);
        Self {
            name: "gbm".into(),
            description: format!("geometric Brownian motion, mu = {mu}, sigma = {sigma}, x0 = {x0}"),
            sys: Arc::new(sys),
            x0: vec![x0],
            t0: 0.0,
            t_end,
            exact_strong: Arc::new(exact),
            exact_weak: weak,
        }
    }

    /// `dx = −θx dt + σ dW`. The pathwise solution needs
    /// `∫ e^{θs} dW = e^{θt}W(t) − θ∫ e^{θs}W(s) ds`; the time integral is
    /// taken by the trapezoid rule on the supplied path, so the reference is
    /// exact only up to `O(h)` of that path's own grid (exact when `θ = 0`).
    pub fn ou(theta: f64, sigma: f64, x0: f64, t_end: f64) -> Self {
        let sys = FnSystem::new(
            1,
            1,
            move |_t: f64, x: &[f64], out: &mut [f64]| out[0] = -theta * x[0],
            move |_t: f64, _x: &[f64], out: &mut [f64]| out[0] = sigma,
        );
        let exact = move |path: &WienerPath, n: usize| {
            let grid = path.grid();
            let h = grid.h();
            let dw = path.increments();
            let mut w = 0.0;
            let mut quad = 0.0;
            for k in 0..n {
                let s0 = k as f64 * h;
                let w_next = w + dw[[k, 0]];
                quad += 0.5 * h * ((theta * s0).exp() * w + (theta * (s0 + h)).exp() * w_next);
                w = w_next;
            }
            let t = n as f64 * h;
            let stoch = (theta * t).exp() * w - theta * quad;
            vec![(-theta * t).exp() * (x0 + sigma * stoch)]
        };
        let mean = x0 * (-theta * t_end).exp();
        let var = if theta == 0.0 {
            sigma * sigma * t_end
        } else {
            sigma * sigma * (1.0 - (-2.0 * theta * t_end).exp()) / (2.0 * theta)
        };
        let weak = BTreeMap::from([
            ("identity".to_string(), mean),
            ("square".to_string(), mean * mean + var),
            ("sum".to_string(), mean),
        ]);
        Self {
            name: "ou".into(),
            description: format!("Ornstein-Uhlenbeck, theta = {theta}, sigma = {sigma}, x0 = {x0}"),
            sys: Arc::new(sys),
            x0: vec![x0],
            t0: 0.0,
            t_end,
            exact_strong: Arc::new(exact),
            exact_weak: weak,
        }
    }

    /// Two independent GBM components, component `i` driven by `W^i` only.
    pub fn diagonal_gbm(mu: [f64; 2], sigma: [f64; 2], x0: [f64; 2], t_end: f64) -> Self {
        let sys = FnSystem::new(
            2,
            2,
            move |_t: f64, x: &[f64], out: &mut [f64]| {
                out[0] = mu[0] * x[0];
                out[1] = mu[1] * x[1];
            },
            move |_t: f64, x: &[f64], out: &mut [f64]| {
                out[0] = sigma[0] * x[0];
                out[1] = 0.0;
                out[2] = 0.0;
                out[3] = sigma[1] * x[1];
            },
        );
        let exact = move |path: &WienerPath, n: usize| {
            let t = path.grid().time(n) - path.grid().t0();
            (0..2)
                .map(|i| {
                    let w: f64 = path.increments().column(i).iter().take(n).sum();
                    x0[i] * ((mu[i] - 0.5 * sigma[i] * sigma[i]) * t + sigma[i] * w).exp()
                })
                .collect()
        };
        let m0 = x0[0] * (mu[0] * t_end).exp();
        let weak = BTreeMap::from([
            ("identity".to_string(), m0),
            (
                "square".to_string(),
                x0[0] * x0[0] * ((2.0 * mu[0] + sigma[0] * sigma[0]) * t_end).exp(),
            ),
            ("sum".to_string(), m0 + x0[1] * (mu[1] * t_end).exp()),
        ]);
        Self {
            name: "diag-gbm".into(),
            description: format!("two-dimensional diagonal-noise GBM, mu = {mu:?}, sigma = {sigma:?}"),
            sys: Arc::new(sys),
            x0: x0.to_vec(),
            t0: 0.0,
            t_end,
            exact_strong: Arc::new(exact),
            exact_weak: weak,
        }
    }

    /// `dx = 0`.
    pub fn zero(x0: f64, t_end: f64) -> Self {
        let sys = FnSystem::new(
            1,
            1,
            |_t: f64, _x: &[f64], out: &mut [f64]| out[0] = 0.0,
            |_t: f64, _x: &[f64], out: &mut [f64]| out[0] = 0.0,
        );
        let weak = BTreeMap::from([
            ("identity".to_string(), x0),
            ("square".to_string(), x0 * x0),
            ("sum".to_string(), x0),
        ]);
        Self {
            name: "zero".into(),
            description: "no drift, no diffusion".into(),
            sys: Arc::new(sys),
            x0: vec![x0],
            t0: 0.0,
            t_end,
            exact_strong: Arc::new(move |_: &WienerPath, _| vec![x0]),
            exact_weak: weak,
        }
    }

    fn renamed(mut self, name: &str) -> Self {
        self.name = name.into();
        self
    }
}

/// `gbm` (μ=0.5, σ=0.3), `gbm-det` (σ=0), `ou` (θ=1, σ=0.5), `bm` (OU with
/// θ=0, σ=1), `diag-gbm` and `zero`; all start at 1 and end at T = 1.
pub fn builtin_problems() -> Vec<TestProblem> {
    vec![
        TestProblem::gbm(0.5, 0.3, 1.0, 1.0),
        TestProblem::gbm(0.5, 0.0, 1.0, 1.0).renamed("gbm-det"),
        TestProblem::ou(1.0, 0.5, 1.0, 1.0),
        TestProblem::ou(0.0, 1.0, 1.0, 1.0).renamed("bm"),
        TestProblem::diagonal_gbm([0.5, 0.2], [0.3, 0.4], [1.0, 1.0], 1.0),
        TestProblem::zero(1.0, 1.0),
    ]
}

pub fn builtin_problem(name: &str) -> Result<TestProblem> {
    builtin_problems()
        .into_iter()
        .find(|p| p.name.eq_ignore_ascii_case(name))
        .ok_or_else(|| {
            let known: Vec<_> = builtin_problems().into_iter().map(|p| p.name).collect();
            Error::InvalidArgument(format!("unknown problem `{name}` (known: {})", known.join(", ")))
        })
}

/// Scalar functionals of the final state: `identity` and `square` act on the
/// first component, `sum` adds all components.
pub fn functional(name: &str) -> Option<fn(&[f64]) -> f64> {
    match name {
        "identity" => Some(|x| x[0]),
        "square" => Some(|x| x[0] * x[0]),
        "sum" => Some(|x| x.iter().sum()),
        _ => None,
    }
}

/// Step sizes `2^-from ..= 2^-to`.
pub fn dyadic_steps(from: u32, to: u32) -> Vec<f64> {
    (from..=to).map(|k| 0.5f64.powi(k as i32)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StrongNorm {
    /// Euclidean error at the final time.
    Terminal,
    /// Largest Euclidean error over the grid nodes.
    Sup,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrderEstimate {
    pub hs: Vec<f64>,
    pub errors: Vec<f64>,
    /// Standard error of each entry of `errors`.
    pub mc_stderr: Vec<f64>,
    /// Samples dropped at each `h` for blowing up.
    pub excluded: Vec<u64>,
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual of the log-log fit.
    pub residual: f64,
    /// Number of leading (largest) step sizes left out of the fit.
    pub skipped: usize,
    /// Errors are at rounding level (or zero); the slope means nothing.
    pub degenerate: bool,
    /// Every error exceeds twice its standard error.
    pub reliable: bool,
}

/// Least-squares slope, intercept and RMS residual of `y` on `x`.
pub fn fit_line(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss: f64 = x.iter().zip(y).map(|(a, b)| (b - intercept - slope * a).powi(2)).sum();
    (slope, intercept, (ss / n).sqrt())
}

fn finish(hs: &[f64], errors: Vec<f64>, mc_stderr: Vec<f64>, excluded: Vec<u64>, skip: usize, scale: f64) -> OrderEstimate {
    let used = skip..hs.len();
    let degenerate = errors[used.clone()]
        .iter()
        .any(|&e| !(e > ROUNDING_LEVEL * scale.max(1.0)));
    let (slope, intercept, residual) = if errors[used.clone()].iter().all(|&e| e > 0.0 && e.is_finite()) {
        let lx: Vec<f64> = hs[used.clone()].iter().map(|h| h.ln()).collect();
        let ly: Vec<f64> = errors[used.clone()].iter().map(|e| e.ln()).collect();
        fit_line(&lx, &ly)
    } else {
        (f64::NAN, f64::NAN, f64::NAN)
    };
    let reliable = errors
        .iter()
        .zip(&mc_stderr)
        .skip(skip)
        .all(|(&e, &s)| e > 2.0 * s);
    OrderEstimate {
        hs: hs.to_vec(),
        errors,
        mc_stderr,
        excluded,
        slope,
        intercept,
        residual,
        skipped: skip,
        degenerate,
        reliable,
    }
}

/// Settings shared by both estimators.
#[derive(Debug, Clone, Copy)]
pub struct EstimateOptions {
    pub seed: u64,
    /// Leave the two largest step sizes out of the fit.
    pub drop_coarsest: bool,
    pub norm: StrongNorm,
    /// Parallel Monte Carlo workers for weak estimates.
    pub workers: usize,
}

impl EstimateOptions {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            drop_coarsest: false,
            norm: StrongNorm::Terminal,
            workers: 1,
        }
    }

    fn skip(&self, n: usize) -> Result<usize> {
        let skip = if self.drop_coarsest { 2 } else { 0 };
        if n < skip + 3 {
            return Err(Error::InvalidArgument(format!(
                "an order fit needs at least 3 step sizes, {} remain",
                n.saturating_sub(skip)
            )));
        }
        Ok(skip)
    }
}

/// Step counts for each `h` over `[t0, T]`, and the finest grid they all divide.
fn step_counts(problem: &TestProblem, hs: &[f64]) -> Result<(Vec<usize>, usize)> {
    let span = problem.t_end - problem.t0;
    let mut counts = Vec::with_capacity(hs.len());
    for &h in hs {
        if !(h > 0.0) {
            return Err(Error::InvalidArgument(format!("step size {h} must be positive")));
        }
        let n = (span / h).round();
        if n < 1.0 || ((n * h) - span).abs() > 1e-9 * span {
            return Err(Error::InvalidArgument(format!(
                "step size {h} does not divide the interval [{}, {}]",
                problem.t0, problem.t_end
            )));
        }
        counts.push(n as usize);
    }
    let fine = counts.iter().try_fold(1usize, |acc, &n| {
        let l = acc.lcm(&n);
        (l <= MAX_FINE_STEPS).then_some(l)
    });
    let fine = fine.ok_or_else(|| {
        Error::InvalidArgument(format!(
            "step sizes need a master grid of more than {MAX_FINE_STEPS} steps"
        ))
    })?;
    Ok((counts, fine))
}

fn check_problem(problem: &TestProblem) -> Result<()> {
    if problem.x0.len() != problem.dim() {
        return Err(Error::shape("problem initial state", problem.dim(), problem.x0.len()));
    }
    Ok(())
}

fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| (p - q) * (p - q)).sum::<f64>().sqrt()
}

/// `E‖x(T) − x_N‖` for each `h`, estimated over `paths` coupled samples.
pub fn estimate_strong_order(
    stepper: &dyn Stepper,
    problem: &TestProblem,
    hs: &[f64],
    paths: usize,
    opts: &EstimateOptions,
) -> Result<OrderEstimate> {
    check_problem(problem)?;
    if matches!(stepper.noise_kind(), NoiseKind::Weak) {
        return Err(Error::InvalidArgument(format!(
            "{} is a weak method; strong errors need path-driven noise",
            stepper.name()
        )));
    }
    if paths == 0 {
        return Err(Error::InvalidArgument("at least one path is required".into()));
    }
    let skip = opts.skip(hs.len())?;
    let (counts, fine_steps) = step_counts(problem, hs)?;
    let fine_grid = TimeGrid::new(problem.t0, problem.t_end, fine_steps)?;
    let m = problem.noise_dim();
    let sys: &(dyn SdeSystem + Sync) = &*problem.sys;

    // Per path: (error or None when blown up) for each h, plus the size of x(T).
    let per_path: Vec<Result<(Vec<Option<f64>>, f64)>> = (0..paths)
        .into_par_iter()
        .map(|p| {
            let mut rng = seed_worker(opts.seed, p);
            let fine = generate_path(&mut rng, fine_grid, m)?;
            let exact_end = problem.exact(&fine, fine_steps);
            let mut errs = Vec::with_capacity(counts.len());
            for &n in &counts {
                let factor = fine_steps / n;
                let coarse = fine.coarsen(factor)?;
                let mut noise = PathNoise::new(&coarse, &mut rng);
                let traj = match integrate(stepper, sys, &problem.x0, coarse.grid(), &mut noise) {
                    Ok(t) => t,
                    Err(Error::NonFinite { .. }) => {
                        errs.push(None);
                        continue;
                    }
                    Err(e) => return Err(e),
                };
                let err = match opts.norm {
                    StrongNorm::Terminal => distance(traj.row(n).as_slice().unwrap(), &exact_end),
                    StrongNorm::Sup => (0..=n)
                        .map(|k| distance(traj.row(k).as_slice().unwrap(), &problem.exact(&fine, k * factor)))
                        .fold(0.0, f64::max),
                };
                errs.push(Some(err));
            }
            Ok((errs, distance(&exact_end, &vec![0.0; exact_end.len()])))
        })
        .collect();

    let k = hs.len();
    let mut sum = vec![0.0; k];
    let mut sum_sq = vec![0.0; k];
    let mut used = vec![0u64; k];
    let mut excluded = vec![0u64; k];
    let mut scale = 0.0;
    for r in per_path {
        let (errs, size) = r?;
        scale += size / paths as f64;
        for (i, e) in errs.into_iter().enumerate() {
            match e {
                Some(e) => {
                    sum[i] += e;
                    sum_sq[i] += e * e;
                    used[i] += 1;
                }
                None => excluded[i] += 1,
            }
        }
    }
    if let Some(i) = used.iter().position(|&u| u == 0) {
        return Err(Error::NoAcceptedTrajectories { rejected: excluded[i] });
    }
    let errors: Vec<f64> = (0..k).map(|i| sum[i] / used[i] as f64).collect();
    let stderr: Vec<f64> = (0..k)
        .map(|i| {
            let n = used[i] as f64;
            if used[i] < 2 {
                return 0.0;
            }
            let var = (sum_sq[i] - n * errors[i] * errors[i]).max(0.0) / (n - 1.0);
            (var / n).sqrt()
        })
        .collect();
    Ok(finish(hs, errors, stderr, excluded, skip, scale))
}

/// `|E F(x_N) − E F(x(T))|` for each `h`, each from `trials` independent
/// samples driven by Gaussian increments (strong-kind methods) or discrete
/// weak variables (weak-kind methods).
pub fn estimate_weak_order(
    stepper: &dyn Stepper,
    problem: &TestProblem,
    functional_name: &str,
    hs: &[f64],
    trials: usize,
    opts: &EstimateOptions,
) -> Result<OrderEstimate> {
    check_problem(problem)?;
    let f = functional(functional_name)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown functional `{functional_name}`")))?;
    let exact = *problem.exact_weak.get(functional_name).ok_or_else(|| {
        Error::InvalidArgument(format!(
            "problem `{}` has no analytic value for `{functional_name}`",
            problem.name
        ))
    })?;
    let skip = opts.skip(hs.len())?;
    let (counts, _) = step_counts(problem, hs)?;
    let sys: &(dyn SdeSystem + Sync) = &*problem.sys;
    let mut errors = Vec::new();
    let mut stderr = Vec::new();
    let mut excluded = Vec::new();
    for &n in &counts {
        let grid = TimeGrid::new(problem.t0, problem.t_end, n)?;
        let cfg = McConfig::new(stepper, grid, &problem.x0, trials, opts.seed).workers(opts.workers);
        let stats = run_functional(sys, &cfg, &f)?;
        errors.push((stats.mean - exact).abs());
        stderr.push(stats.std_error());
        excluded.push(stats.rejected);
    }
    Ok(finish(hs, errors, stderr, excluded, skip, exact.abs()))
}

/// What produced an [`OrderEstimate`], written above the data rows.
#[derive(Debug, Clone, Serialize)]
pub struct ReportMeta {
    pub mode: String,
    pub method: String,
    pub problem: String,
    pub functional: Option<String>,
    pub seed: u64,
    pub samples: usize,
}

/// `# key: value` metadata lines, then CSV rows `h,error,mc_stderr`.
pub fn write_report<W: Write>(mut writer: W, meta: &ReportMeta, est: &OrderEstimate) -> Result<()> {
    let io = |e| Error::io("<output>", e);
    let mut head = vec![
        ("mode", meta.mode.clone()),
        ("method", meta.method.clone()),
        ("problem", meta.problem.clone()),
    ];
    if let Some(f) = &meta.functional {
        head.push(("functional", f.clone()));
    }
    head.extend([
        ("seed", meta.seed.to_string()),
        ("samples", meta.samples.to_string()),
        ("slope", format!("{:?}", est.slope)),
        ("intercept", format!("{:?}", est.intercept)),
        ("residual", format!("{:?}", est.residual)),
        ("skipped", est.skipped.to_string()),
        ("degenerate", est.degenerate.to_string()),
        ("reliable", est.reliable.to_string()),
    ]);
    for (k, v) in head {
        writeln!(writer, "# {k}: {v}").map_err(io)?;
    }
    let mut wtr = csv::Writer::from_writer(writer);
    wtr.write_record(["h", "error", "mc_stderr", "excluded"]).map_err(csv_err)?;
    for i in 0..est.hs.len() {
        wtr.write_record([
            format!("{:?}", est.hs[i]),
            format!("{:?}", est.errors[i]),
            format!("{:?}", est.mc_stderr[i]),
            est.excluded[i].to_string(),
        ])
        .map_err(csv_err)?;
    }
    wtr.flush().map_err(io)?;
    Ok(())
}

pub fn save_report(path: &Path, meta: &ReportMeta, est: &OrderEstimate) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    write_report(std::io::BufWriter::new(file), meta, est).map_err(|e| crate::wiener::attach_path(e, path))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_fit_recovers_slope() {
        let x = [0.0, 1.0, 2.0, 3.0];
        let y: Vec<f64> = x.iter().map(|v| 2.0 * v - 1.0).collect();
        let (s, c, r) = fit_line(&x, &y);
        assert!((s - 2.0).abs() < 1e-14 && (c + 1.0).abs() < 1e-14 && r < 1e-14);
    }

    #[test]
    fn step_counts_need_divisors() {
        let p = TestProblem::gbm(0.5, 0.3, 1.0, 1.0);
        let (counts, fine) = step_counts(&p, &[0.5, 0.25, 1.0 / 3.0]).unwrap();
        assert_eq!(counts, vec![2, 4, 3]);
        assert_eq!(fine, 12);
        assert!(step_counts(&p, &[0.3]).is_err());
        assert!(step_counts(&p, &[0.0]).is_err());
    }

    #[test]
    fn gbm_with_zero_path_is_deterministic_exponential() {
        let p = TestProblem::gbm(0.5, 0.3, 2.0, 1.0);
        let grid = TimeGrid::new(0.0, 1.0, 4).unwrap();
        let path = WienerPath::from_increments(grid, ndarray::Array2::zeros((4, 1))).unwrap();
        let x = p.exact(&path, 4)[0];
        assert!((x - 2.0 * (0.5f64 - 0.045).exp()).abs() < 1e-14);
        assert_eq!(p.exact(&path, 0), vec![2.0]);
    }

    #[test]
    fn unknown_names() {
        assert!(builtin_problem("nope").is_err());
        assert!(builtin_problem("GBM").is_ok());
        assert!(functional("cube").is_none());
    }
}
