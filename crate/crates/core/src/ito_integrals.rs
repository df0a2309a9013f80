//! Single, double and triple Itô integrals over one grid step.
//!
//! Index `0` stands for integration against time. With `ΔW` the step's Wiener
//! increment:
//!
//! ```text
//! I^0 = h              I^a   = ΔW^a
//! I^00 = h²/2          I^aa  = ((ΔW^a)² - h) / 2
//! I^0a = h/2 (ΔW^a - ζ^a/√3)      I^a0 = h/2 (ΔW^a + ζ^a/√3),  ζ^a ~ N(0, h)
//! I^aaa = ((ΔW^a)³ - 3 h ΔW^a) / 6
//! ```
//!
//! The off-diagonal double integrals have no closed form in the increments and
//! are approximated by the truncated Fourier series
//!
//! ```text
//! I^ab = (ΔW^a ΔW^b - h δ^ab)/2 + A^ab
//! A^ab = h/(2π) Σ_{k=1..n} 1/k [ V_k^a (U_k^b + √(2/h) ΔW^b) - V_k^b (U_k^a + √(2/h) ΔW^a) ]
//! ```
//!
//! whose mean-square truncation error is `O(h²/n)`.

use std::f64::consts::PI;

use ndarray::{Array1, Array2};
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// Truncation length of the Lévy-area series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeriesConfig {
    n_terms: usize,
}

impl SeriesConfig {
    pub fn new(n_terms: usize) -> Result<Self> {
        if n_terms == 0 {
            return Err(Error::InvalidArgument("series needs at least one term".into()));
        }
        Ok(Self { n_terms })
    }

    /// `max(1, ceil(1/h))` terms, which keeps the `O(h²/n)` truncation error
    /// below the local error of the strong order 1.0 schemes.
    pub fn for_step(h: f64) -> Self {
        let n = (1.0 / h).ceil();
        let n_terms = if n.is_finite() && n >= 1.0 { n as usize } else { 1 };
        Self { n_terms }
    }

    pub fn n_terms(&self) -> usize {
        self.n_terms
    }
}

/// Every iterated integral a stepper may consume on one step.
#[derive(Debug, Clone, PartialEq)]
pub struct ItoIntegralSet {
    pub h: f64,
    /// `I^a`
    pub single: Array1<f64>,
    /// `I^0a`
    pub time_left: Array1<f64>,
    /// `I^a0`
    pub time_right: Array1<f64>,
    /// `I^ab`, row `a` column `b`
    pub double: Array2<f64>,
    /// `I^aaa`
    pub triple_diag: Array1<f64>,
}

impl ItoIntegralSet {
    pub fn noise_dim(&self) -> usize {
        self.single.len()
    }
}

/// Which auxiliary random quantities a stepper actually reads.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct IntegralNeeds {
    /// `I^0a`/`I^a0` (draws ζ).
    pub time_mixed: bool,
    /// Off-diagonal `I^ab` (draws the Lévy-area series when `m > 1`).
    pub cross: bool,
}

impl IntegralNeeds {
    pub const ALL: Self = Self {
        time_mixed: true,
        cross: true,
    };
    pub const NONE: Self = Self {
        time_mixed: false,
        cross: false,
    };
}

/// Returns `(I^0, [I^1..I^m])`.
pub fn single_integrals(dw: &[f64], h: f64) -> (f64, Vec<f64>) {
    (h, dw.to_vec())
}

/// `I^00 = h²/2`.
pub fn double_time(h: f64) -> f64 {
    0.5 * h * h
}

/// `I^aa = ((ΔW)² - h) / 2`.
pub fn double_same(dw: f64, h: f64) -> f64 {
    0.5 * (dw * dw - h)
}

/// Returns `(I^0a, I^a0)` from `I^a` and an independent `ζ ~ N(0, h)`.
pub fn mixed_time(single: f64, zeta: f64, h: f64) -> (f64, f64) {
    let shift = zeta / 3f64.sqrt();
    (0.5 * h * (single - shift), 0.5 * h * (single + shift))
}

/// `I^aaa = ((ΔW)³ - 3 h ΔW) / 6`.
pub fn triple_diag(dw: f64, h: f64) -> f64 {
    (dw * dw * dw - 3.0 * h * dw) / 6.0
}

/// Standard normal draws feeding the Lévy-area series.
///
/// Consumption order is `k`-major, `V_k` before `U_k`, component-minor:
/// `V_1^1..V_1^m, U_1^1..U_1^m, V_2^1, ...`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesDraws {
    /// `n × m`, row `k-1` holding `V_k`.
    pub v: Array2<f64>,
    /// `n × m`, row `k-1` holding `U_k`.
    pub u: Array2<f64>,
}

impl SeriesDraws {
    pub fn sample<R: Rng + ?Sized>(rng: &mut R, m: usize, cfg: SeriesConfig) -> Self {
        let n = cfg.n_terms();
        let mut v = Array2::zeros((n, m));
        let mut u = Array2::zeros((n, m));
        for k in 0..n {
            for a in 0..m {
                v[[k, a]] = rng.sample(StandardNormal);
            }
            for a in 0..m {
                u[[k, a]] = rng.sample(StandardNormal);
            }
        }
        Self { v, u }
    }

    pub fn n_terms(&self) -> usize {
        self.v.nrows()
    }

    /// The first `n` terms of the same sequence.
    pub fn truncated(&self, n: usize) -> Self {
        let n = n.min(self.n_terms());
        Self {
            v: self.v.slice(ndarray::s![..n, ..]).to_owned(),
            u: self.u.slice(ndarray::s![..n, ..]).to_owned(),
        }
    }
}

/// How the truncated series is summed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesForm {
    /// Entry-by-entry summation for `a < b`, mirrored for `a > b`.
    Scalar,
    /// Sum of outer products `V_k (U_k + c ΔW)ᵀ - (U_k + c ΔW) V_kᵀ`.
    Matrix,
}

/// The antisymmetric series part `A` of the double integrals.
pub fn levy_area(dw: &[f64], h: f64, draws: &SeriesDraws, form: SeriesForm) -> Result<Array2<f64>> {
    let m = dw.len();
    if draws.v.ncols() != m || draws.u.ncols() != m {
        return Err(Error::shape("series draws", m, draws.v.ncols()));
    }
    let scale = (2.0 / h).sqrt();
    let prefactor = h / (2.0 * PI);
    let mut area = Array2::zeros((m, m));
    match form {
        SeriesForm::Scalar => {
            for a in 0..m {
                for b in a + 1..m {
                    let mut sum = 0.0;
                    for k in 0..draws.n_terms() {
                        let (va, vb) = (draws.v[[k, a]], draws.v[[k, b]]);
                        let (ua, ub) = (draws.u[[k, a]], draws.u[[k, b]]);
                        sum += (va * (ub + scale * dw[b]) - vb * (ua + scale * dw[a])) / (k + 1) as f64;
                    }
                    area[[a, b]] = prefactor * sum;
                    area[[b, a]] = -prefactor * sum;
                }
            }
        }
        SeriesForm::Matrix => {
            let dw = Array1::from(dw.to_vec());
            for k in 0..draws.n_terms() {
                let v = draws.v.row(k);
                let shifted = &draws.u.row(k) + &(&dw * scale);
                // Divide rather than scale by 1/k so each entry rounds exactly
                // as the scalar form does.
                let k1 = (k + 1) as f64;
                for a in 0..m {
                    for b in 0..m {
                        area[[a, b]] += (v[a] * shifted[b] - shifted[a] * v[b]) / k1;
                    }
                }
            }
            area *= prefactor;
        }
    }
    Ok(area)
}

/// Double integrals `I^ab` from explicit series draws. The diagonal is set
/// from [`double_same`] so it is exact.
pub fn double_cross_with(dw: &[f64], h: f64, draws: &SeriesDraws, form: SeriesForm) -> Result<Array2<f64>> {
    let m = dw.len();
    let mut out = levy_area(dw, h, draws, form)?;
    for a in 0..m {
        for b in 0..m {
            out[[a, b]] = if a == b {
                double_same(dw[a], h)
            } else {
                0.5 * dw[a] * dw[b] + out[[a, b]]
            };
        }
    }
    Ok(out)
}

/// Double integrals for one step, drawing `n_terms × 2m` auxiliary normals
/// when `m > 1`.
pub fn double_cross<R: Rng + ?Sized>(dw: &[f64], h: f64, cfg: SeriesConfig, rng: &mut R) -> Result<Array2<f64>> {
    let m = dw.len();
    if m == 0 {
        return Err(Error::InvalidArgument("noise dimension must be positive".into()));
    }
    if m == 1 {
        return Ok(Array2::from_elem((1, 1), double_same(dw[0], h)));
    }
    let draws = SeriesDraws::sample(rng, m, cfg);
    double_cross_with(dw, h, &draws, SeriesForm::Scalar)
}

/// Full integral set for a step: ζ draws first (`m` normals), then the series.
pub fn sample_step_integrals<R: Rng + ?Sized>(
    dw: &[f64],
    h: f64,
    cfg: SeriesConfig,
    rng: &mut R,
) -> Result<ItoIntegralSet> {
    sample_step_integrals_for(dw, h, cfg, IntegralNeeds::ALL, rng)
}

/// Like [`sample_step_integrals`], skipping draws the stepper will not read.
/// Without `time_mixed`, ζ is taken as 0; without `cross`, off-diagonal
/// entries carry only the symmetric part `ΔW^a ΔW^b / 2`.
pub fn sample_step_integrals_for<R: Rng + ?Sized>(
    dw: &[f64],
    h: f64,
    cfg: SeriesConfig,
    needs: IntegralNeeds,
    rng: &mut R,
) -> Result<ItoIntegralSet> {
    if !(h > 0.0) {
        return Err(Error::InvalidArgument(format!("step size {h} must be positive")));
    }
    let m = dw.len();
    if m == 0 {
        return Err(Error::InvalidArgument("noise dimension must be positive".into()));
    }
    let sqrt_h = h.sqrt();
    let mut time_left = Array1::zeros(m);
    let mut time_right = Array1::zeros(m);
    for a in 0..m {
        let zeta = if needs.time_mixed {
            sqrt_h * rng.sample::<f64, _>(StandardNormal)
        } else {
            0.0
        };
        let (left, right) = mixed_time(dw[a], zeta, h);
        time_left[a] = left;
        time_right[a] = right;
    }
    let double = if needs.cross {
        double_cross(dw, h, cfg, rng)?
    } else {
        Array2::from_shape_fn((m, m), |(a, b)| {
            if a == b {
                double_same(dw[a], h)
            } else {
                0.5 * dw[a] * dw[b]
            }
        })
    };
    Ok(ItoIntegralSet {
        h,
        single: Array1::from(dw.to_vec()),
        time_left,
        time_right,
        double,
        triple_diag: dw.iter().map(|&w| triple_diag(w, h)).collect(),
    })
}
