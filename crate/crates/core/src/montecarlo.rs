//! Parallel ensembles of independent integrations with online statistics.
//!
//! Trials are split into `workers` contiguous blocks (the last block takes
//! the remainder). Worker `w` draws from [`seed_worker`]`(master_seed, w)` and
//! jumps to a fresh substream for each of its trials, so a run is
//! reproducible for a fixed worker count whatever the thread scheduling.

use std::io::Write;
use std::path::Path;

use ndarray::{Array2, ArrayView2, Zip};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::schemes::{integrate, GaussianNoise, NoiseKind, SdeSystem, Stepper, WeakNoise};
use crate::wiener::{attach_path, write_table_csv, TimeGrid};
use crate::{Error, Result};

/// Distance between the substreams of consecutive trials, in 32-bit words.
const TRIAL_JUMP_BITS: u32 = 48;

/// Independent stream for `worker_index`: ChaCha8 keyed by `master_seed`,
/// with the worker index as stream id.
pub fn seed_worker(master_seed: u64, worker_index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(worker_index as u64);
    rng
}

/// Stream for the `local`-th trial handled by a worker.
pub fn trial_stream(master_seed: u64, worker_index: usize, local: usize) -> ChaCha8Rng {
    let mut rng = seed_worker(master_seed, worker_index);
    rng.set_word_pos((local as u128) << TRIAL_JUMP_BITS);
    rng
}

/// Number of trials each worker runs.
pub fn partition(trials: usize, workers: usize) -> Vec<usize> {
    let base = trials / workers;
    let mut counts = vec![base; workers];
    if let Some(last) = counts.last_mut() {
        *last += trials - base * workers;
    }
    counts
}

pub type Adequacy = dyn Fn(ArrayView2<'_, f64>) -> bool + Send + Sync;

/// Everything a run depends on besides the system itself.
#[derive(Clone, Copy)]
pub struct McConfig<'a> {
    pub trials: usize,
    pub workers: usize,
    pub master_seed: u64,
    pub grid: TimeGrid,
    pub x0: &'a [f64],
    pub stepper: &'a dyn Stepper,
    /// Extra acceptance test on a finished trajectory. Trajectories with a
    /// non-finite value are always rejected.
    pub adequacy: Option<&'a Adequacy>,
    /// Also accumulate the per-point sample variance.
    pub track_variance: bool,
}

impl<'a> McConfig<'a> {
    pub fn new(stepper: &'a dyn Stepper, grid: TimeGrid, x0: &'a [f64], trials: usize, master_seed: u64) -> Self {
        Self {
            trials,
            workers: 1,
            master_seed,
            grid,
            x0,
            stepper,
            adequacy: None,
            track_variance: false,
        }
    }

    pub fn workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn with_variance(mut self) -> Self {
        self.track_variance = true;
        self
    }

    pub fn adequacy(mut self, predicate: &'a Adequacy) -> Self {
        self.adequacy = Some(predicate);
        self
    }

    fn check(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidArgument("trials must be at least 1".into()));
        }
        if self.workers == 0 {
            return Err(Error::InvalidArgument("workers must be at least 1".into()));
        }
        Ok(())
    }
}

/// Running mean (and optionally the sum of squared deviations) over
/// equally shaped arrays.
#[derive(Debug, Clone, PartialEq)]
pub struct McAccumulator {
    n: u64,
    mean: Array2<f64>,
    m2: Option<Array2<f64>>,
}

impl McAccumulator {
    pub fn new(rows: usize, cols: usize, track_variance: bool) -> Self {
        Self {
            n: 0,
            mean: Array2::zeros((rows, cols)),
            m2: track_variance.then(|| Array2::zeros((rows, cols))),
        }
    }

    pub fn count(&self) -> u64 {
        self.n
    }

    pub fn mean(&self) -> &Array2<f64> {
        &self.mean
    }

    /// Unbiased sample variance; `None` when not tracked or with fewer than two inputs.
    pub fn variance(&self) -> Option<Array2<f64>> {
        let m2 = self.m2.as_ref()?;
        (self.n >= 2).then(|| m2 / (self.n - 1) as f64)
    }

    /// Standard error of the mean, elementwise.
    pub fn std_error(&self) -> Option<Array2<f64>> {
        self.variance().map(|v| v.mapv(|s| (s / self.n as f64).sqrt()))
    }

    /// `x̄ₙ = x̄ₙ₋₁ + (xₙ − x̄ₙ₋₁)/n`, plus Welford's update of the squared deviations.
    pub fn push(&mut self, x: ArrayView2<'_, f64>) -> Result<()> {
        if x.dim() != self.mean.dim() {
            return Err(Error::shape("accumulated trajectory", format!("{:?}", self.mean.dim()), format!("{:?}", x.dim())));
        }
        self.n += 1;
        let inv = 1.0 / self.n as f64;
        match self.m2.as_mut() {
            Some(m2) => Zip::from(&mut self.mean).and(m2).and(&x).for_each(|mean, m2, &v| {
                let delta = v - *mean;
                *mean += delta * inv;
                *m2 += delta * (v - *mean);
            }),
            None => Zip::from(&mut self.mean).and(&x).for_each(|mean, &v| *mean += (v - *mean) * inv),
        }
        Ok(())
    }

    /// Combines two accumulators as if all inputs had gone through one.
    pub fn merge(&self, other: &Self) -> Result<Self> {
        if self.mean.dim() != other.mean.dim() {
            return Err(Error::shape("merged accumulator", format!("{:?}", self.mean.dim()), format!("{:?}", other.mean.dim())));
        }
        if other.n == 0 {
            return Ok(self.clone());
        }
        if self.n == 0 {
            return Ok(other.clone());
        }
        let n = self.n + other.n;
        let (wa, wb) = (self.n as f64 / n as f64, other.n as f64 / n as f64);
        let mean = Zip::from(&self.mean).and(&other.mean).map_collect(|&a, &b| wa * a + wb * b);
        let m2 = match (&self.m2, &other.m2) {
            (Some(a2), Some(b2)) => {
                let w = self.n as f64 * other.n as f64 / n as f64;
                let mut m2 = a2 + b2;
                Zip::from(&mut m2)
                    .and(&self.mean)
                    .and(&other.mean)
                    .for_each(|s, &a, &b| *s += (b - a) * (b - a) * w);
                Some(m2)
            }
            _ => None,
        };
        Ok(Self { n, mean, m2 })
    }
}

/// Free-function form of [`McAccumulator::push`].
pub fn online_mean_update(acc: &mut McAccumulator, traj: ArrayView2<'_, f64>) -> Result<()> {
    acc.push(traj)
}

pub fn merge(a: &McAccumulator, b: &McAccumulator) -> Result<McAccumulator> {
    a.merge(b)
}

/// Outcome of [`run_trials`].
#[derive(Debug, Clone)]
pub struct McResult {
    pub grid: TimeGrid,
    pub stats: McAccumulator,
    pub rejected: u64,
    /// Trials assigned to each worker.
    pub assignment: Vec<usize>,
}

impl McResult {
    pub fn accepted(&self) -> u64 {
        self.stats.count()
    }

    pub fn mean(&self) -> &Array2<f64> {
        self.stats.mean()
    }

    /// CSV with header `t,mean_x1,...,mean_xd`.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut header = vec!["t".to_string()];
        header.extend((1..=self.mean().ncols()).map(|i| format!("mean_x{i}")));
        write_table_csv(writer, &header, self.grid.times(), self.mean().view())
    }

    pub fn save_csv(&self, path: &Path) -> Result<()> {
        let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
        self.write_csv(std::io::BufWriter::new(file)).map_err(|e| attach_path(e, path))
    }

    pub fn metadata(&self, cfg: &McConfig<'_>) -> McMetadata {
        McMetadata {
            seed: cfg.master_seed,
            trials: cfg.trials,
            workers: cfg.workers,
            method: cfg.stepper.name().to_string(),
            h: self.grid.h(),
            t0: self.grid.t0(),
            t_end: self.grid.t_end(),
            steps: self.grid.steps(),
            accepted: self.accepted(),
            rejected: self.rejected,
            assignment: self.assignment.clone(),
        }
    }
}

/// Run description written next to the results.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McMetadata {
    pub seed: u64,
    pub trials: usize,
    pub workers: usize,
    pub method: String,
    pub h: f64,
    pub t0: f64,
    pub t_end: f64,
    pub steps: usize,
    pub accepted: u64,
    pub rejected: u64,
    pub assignment: Vec<usize>,
}

impl McMetadata {
    pub fn save(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self).expect("metadata serialises") + "\n";
        std::fs::write(path, text).map_err(|e| Error::io(path, e))
    }
}

/// Integrates one trial with the stream of `(worker, local)`. `Ok(None)` means
/// the trajectory blew up and is to be rejected.
fn one_trial(sys: &dyn SdeSystem, cfg: &McConfig<'_>, worker: usize, local: usize) -> Result<Option<Array2<f64>>> {
    let rng = trial_stream(cfg.master_seed, worker, local);
    let traj = match cfg.stepper.noise_kind() {
        NoiseKind::Strong(_) => integrate(cfg.stepper, sys, cfg.x0, &cfg.grid, &mut GaussianNoise::new(rng)),
        NoiseKind::Weak => integrate(cfg.stepper, sys, cfg.x0, &cfg.grid, &mut WeakNoise::new(rng)),
    };
    match traj {
        Ok(t) => Ok(Some(t)),
        Err(Error::NonFinite { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Shared driver: every worker folds its accepted trajectories through
/// `observe` into its own accumulator; results merge in worker order.
fn run_with<F>(sys: &(dyn SdeSystem + Sync), cfg: &McConfig<'_>, shape: (usize, usize), observe: F) -> Result<(McAccumulator, u64, Vec<usize>)>
where
    F: Fn(&Array2<f64>, &mut McAccumulator) -> Result<()> + Sync,
{
    cfg.check()?;
    let assignment = partition(cfg.trials, cfg.workers);
    let per_worker: Vec<Result<(McAccumulator, u64)>> = assignment
        .par_iter()
        .enumerate()
        .map(|(w, &count)| {
            let mut acc = McAccumulator::new(shape.0, shape.1, cfg.track_variance);
            let mut rejected = 0;
            for local in 0..count {
                match one_trial(sys, cfg, w, local)? {
                    Some(traj) if cfg.adequacy.is_none_or(|p| p(traj.view())) => observe(&traj, &mut acc)?,
                    _ => rejected += 1,
                }
            }
            Ok((acc, rejected))
        })
        .collect();
    let mut total = McAccumulator::new(shape.0, shape.1, cfg.track_variance);
    let mut rejected = 0;
    for (index, r) in per_worker.into_iter().enumerate() {
        let (acc, rej) = r.map_err(|e| Error::Worker {
            index,
            source: Box::new(e),
        })?;
        total = total.merge(&acc)?;
        rejected += rej;
    }
    if total.count() == 0 {
        return Err(Error::NoAcceptedTrajectories { rejected });
    }
    Ok((total, rejected, assignment))
}

/// Runs `cfg.trials` integrations of `sys` and returns the mean trajectory.
pub fn run_trials(sys: &(dyn SdeSystem + Sync), cfg: &McConfig<'_>) -> Result<McResult> {
    let shape = (cfg.grid.steps() + 1, sys.dim());
    let (stats, rejected, assignment) = run_with(sys, cfg, shape, |traj, acc| acc.push(traj.view()))?;
    Ok(McResult {
        grid: cfg.grid,
        stats,
        rejected,
        assignment,
    })
}

/// Mean and variance of a scalar functional of the state at the final time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FunctionalStats {
    pub n: u64,
    pub mean: f64,
    pub variance: f64,
    pub rejected: u64,
}

impl FunctionalStats {
    pub fn std_error(&self) -> f64 {
        (self.variance / self.n as f64).sqrt()
    }
}

/// Like [`run_trials`] but accumulates `functional(x(T))` only; variance is
/// always tracked.
pub fn run_functional(
    sys: &(dyn SdeSystem + Sync),
    cfg: &McConfig<'_>,
    functional: &(dyn Fn(&[f64]) -> f64 + Sync),
) -> Result<FunctionalStats> {
    let cfg = McConfig {
        track_variance: true,
        ..*cfg
    };
    let (acc, rejected, _) = run_with(sys, &cfg, (1, 1), |traj, acc| {
        let last = traj.row(traj.nrows() - 1);
        let v = functional(last.as_slice().expect("trajectory rows are contiguous"));
        acc.push(ndarray::aview2(&[[v]]))
    })?;
    Ok(FunctionalStats {
        n: acc.count(),
        mean: acc.mean()[[0, 0]],
        variance: acc.variance().map_or(0.0, |v| v[[0, 0]]),
        rejected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn running_means_of_one_two_three() {
        let mut acc = McAccumulator::new(1, 1, false);
        let mut means = Vec::new();
        for v in [1.0, 2.0, 3.0] {
            acc.push(ndarray::aview2(&[[v]])).unwrap();
            means.push(acc.mean()[[0, 0]]);
        }
        assert_eq!(means, vec![1.0, 1.5, 2.0]);
    }

    #[test]
    fn partition_gives_remainder_to_last() {
        assert_eq!(partition(10, 3), vec![3, 3, 4]);
        assert_eq!(partition(2, 4), vec![0, 0, 0, 2]);
        assert_eq!(partition(8, 1), vec![8]);
    }

    #[test]
    fn worker_streams() {
        let draws = |mut r: ChaCha8Rng| (0..100).map(|_| r.random::<u64>()).collect::<Vec<_>>();
        assert_eq!(draws(seed_worker(42, 0)), draws(seed_worker(42, 0)));
        assert_ne!(draws(seed_worker(42, 0)), draws(seed_worker(42, 1)));
        assert_ne!(draws(seed_worker(42, 0)), draws(seed_worker(43, 0)));
        assert_ne!(draws(trial_stream(42, 0, 0)), draws(trial_stream(42, 0, 1)));
    }

    #[test]
    fn merge_rules() {
        let mut a = McAccumulator::new(1, 1, true);
        a.push(ndarray::aview2(&[[1.0]])).unwrap();
        a.push(ndarray::aview2(&[[2.0]])).unwrap();
        let mut b = McAccumulator::new(1, 1, true);
        b.push(ndarray::aview2(&[[3.0]])).unwrap();
        let ab = a.merge(&b).unwrap();
        assert_eq!(ab.count(), 3);
        assert!((ab.mean()[[0, 0]] - 2.0).abs() < 1e-15);
        assert!((ab.variance().unwrap()[[0, 0]] - 1.0).abs() < 1e-15);
        let empty = McAccumulator::new(1, 1, true);
        assert_eq!(a.merge(&empty).unwrap(), a);
        assert_eq!(empty.merge(&a).unwrap(), a);
        assert!(a.merge(&McAccumulator::new(2, 1, true)).is_err());
    }
}
