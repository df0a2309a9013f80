//! Table-driven stochastic Runge–Kutta steppers for `dx = f(t,x) dt + G(t,x) dW`.
//!
//! Four families are interpreted directly from a [`FloatTable`]:
//! Euler–Maruyama, the scalar-noise strong order 1.5 scheme, the strong order
//! 1.0 scheme for `m`-dimensional noise and the weak order 2.0 scheme driven
//! by discrete random variables. Stages are computed in a single loop
//! `i = 1..s` over all stage families; each drift and diffusion evaluation is
//! done at most once per step, and only when some nonzero coefficient reads it.

use std::io::Write;
use std::path::Path;

use ndarray::{Array1, Array2};
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::ito_integrals::{sample_step_integrals_for, IntegralNeeds, ItoIntegralSet, SeriesConfig};
use crate::tables::{self, to_float, CoefficientTable, FloatTable, TableKind};
use crate::wiener::{attach_path, write_table_csv, TimeGrid, WienerPath};

/// An Itô SDE system with state dimension `d` and noise dimension `m`.
pub trait SdeSystem {
    fn dim(&self) -> usize;
    fn noise_dim(&self) -> usize;
    /// Writes `f(t, x)` into `out` (length `d`).
    fn drift(&self, t: f64, x: &[f64], out: &mut [f64]);
    /// Writes `G(t, x)` into `out`, row-major `d × m`: `out[i * m + k] = G^i_k`.
    fn diffusion(&self, t: f64, x: &[f64], out: &mut [f64]);
}

/// [`SdeSystem`] backed by two closures.
#[derive(Clone)]
pub struct FnSystem<F, G> {
    d: usize,
    m: usize,
    drift: F,
    diffusion: G,
}

impl<F, G> FnSystem<F, G>
where
    F: Fn(f64, &[f64], &mut [f64]),
    G: Fn(f64, &[f64], &mut [f64]),
{
    pub fn new(d: usize, m: usize, drift: F, diffusion: G) -> Self {
        Self { d, m, drift, diffusion }
    }
}

impl<F, G> SdeSystem for FnSystem<F, G>
where
    F: Fn(f64, &[f64], &mut [f64]),
    G: Fn(f64, &[f64], &mut [f64]),
{
    fn dim(&self) -> usize {
        self.d
    }
    fn noise_dim(&self) -> usize {
        self.m
    }
    fn drift(&self, t: f64, x: &[f64], out: &mut [f64]) {
        (self.drift)(t, x, out)
    }
    fn diffusion(&self, t: f64, x: &[f64], out: &mut [f64]) {
        (self.diffusion)(t, x, out)
    }
}

/// Discrete random variables for one step of a weak scheme.
#[derive(Debug, Clone, PartialEq)]
pub struct WeakRandomSet {
    pub h: f64,
    /// Three-point `Î^k ∈ {−√(3h), 0, √(3h)}`.
    pub ihat: Array1<f64>,
    /// Two-point `Ĩ^k ∈ {−√h, √h}`.
    pub itil: Array1<f64>,
    /// `Î^{kl}`
    pub ihat2: Array2<f64>,
}

impl WeakRandomSet {
    /// Assembles `Î^{kl}` from given three- and two-point values.
    pub fn from_values(h: f64, ihat: Array1<f64>, itil: Array1<f64>) -> Result<Self> {
        if ihat.len() != itil.len() {
            return Err(Error::shape("weak random set", ihat.len(), itil.len()));
        }
        let m = ihat.len();
        let sqrt_h = h.sqrt();
        let ihat2 = Array2::from_shape_fn((m, m), |(k, l)| {
            if k == l {
                0.5 * (ihat[k] * ihat[k] - h)
            } else if k < l {
                0.5 * (ihat[k] * ihat[l] - sqrt_h * itil[k])
            } else {
                0.5 * (ihat[k] * ihat[l] + sqrt_h * itil[l])
            }
        });
        Ok(Self { h, ihat, itil, ihat2 })
    }

    pub fn noise_dim(&self) -> usize {
        self.ihat.len()
    }
}

/// Draws `Î^k` (−√(3h), 0, √(3h) with probabilities 1/6, 2/3, 1/6) for every
/// component, then `Ĩ^k` (±√h, equally likely).
pub fn sample_weak_randoms<R: Rng + ?Sized>(rng: &mut R, m: usize, h: f64) -> WeakRandomSet {
    let s3h = (3.0 * h).sqrt();
    let sqrt_h = h.sqrt();
    let ihat = Array1::from_shape_fn(m, |_| match rng.random_range(0..6u8) {
        0 => -s3h,
        5 => s3h,
        _ => 0.0,
    });
    let itil = Array1::from_shape_fn(m, |_| if rng.random::<bool>() { sqrt_h } else { -sqrt_h });
    WeakRandomSet::from_values(h, ihat, itil).expect("lengths agree")
}

fn check_state(sys: &dyn SdeSystem, x: &[f64], out: &[f64]) -> Result<(usize, usize)> {
    let d = sys.dim();
    if x.len() != d {
        return Err(Error::shape("state", d, x.len()));
    }
    if out.len() != d {
        return Err(Error::shape("output state", d, out.len()));
    }
    Ok((d, sys.noise_dim()))
}

fn check_table(table: &FloatTable, kind: TableKind, method: &'static str) -> Result<()> {
    if table.kind != kind {
        return Err(Error::WrongKind {
            method,
            expected: kind.as_str(),
            found: table.kind.as_str(),
        });
    }
    let s = table.stages;
    let blocks = [
        ("A0", &table.a0),
        ("A1", &table.a1),
        ("A2", &table.a2),
        ("B0", &table.b0),
        ("B1", &table.b1),
        ("B2", &table.b2),
    ];
    for (key, m) in blocks {
        if m.len() != s || m.iter().any(|r| r.len() != s) {
            return Err(Error::shape("coefficient block", format!("{key} {s}x{s}"), format!("{} rows", m.len())));
        }
        for (i, row) in m.iter().enumerate() {
            if let Some(j) = (i..s).find(|&j| row[j] != 0.0) {
                return Err(tables::TableError::NotExplicit {
                    key: key.to_string(),
                    row: i + 1,
                    col: j + 1,
                }
                .into());
            }
        }
    }
    let vectors = [
        &table.c0,
        &table.c1,
        &table.c2,
        &table.alpha,
        &table.beta1,
        &table.beta2,
        &table.beta3,
        &table.beta4,
    ];
    if vectors.iter().any(|v| v.len() != s) {
        return Err(Error::shape("coefficient vector", s, "other length"));
    }
    Ok(())
}

/// `out += c * v`, skipped entirely for a zero coefficient so that zero
/// weights never touch (possibly non-finite) values.
#[inline]
fn axpy(out: &mut [f64], c: f64, v: &[f64]) {
    if c != 0.0 {
        for (o, x) in out.iter_mut().zip(v) {
            *o += c * x;
        }
    }
}

/// `out += c * G[:, col]` for row-major `G` with `m` columns.
#[inline]
fn axpy_col(out: &mut [f64], c: f64, g: &[f64], m: usize, col: usize) {
    if c != 0.0 {
        for (r, o) in out.iter_mut().enumerate() {
            *o += c * g[r * m + col];
        }
    }
}

/// Column `j` of a lower-triangular block is read by some later stage.
fn column_used(block: &[Vec<f64>], j: usize) -> bool {
    block.iter().skip(j + 1).any(|row| row[j] != 0.0)
}

/// `x' = x + f(t,x) h + G(t,x) ΔW`.
pub fn em_step(sys: &dyn SdeSystem, t: f64, x: &[f64], h: f64, dw: &[f64], out: &mut [f64]) -> Result<()> {
    let (d, m) = check_state(sys, x, out)?;
    if dw.len() != m {
        return Err(Error::shape("Wiener increment", m, dw.len()));
    }
    let mut f = vec![0.0; d];
    let mut g = vec![0.0; d * m];
    sys.drift(t, x, &mut f);
    sys.diffusion(t, x, &mut g);
    for r in 0..d {
        let mut acc = x[r] + f[r] * h;
        for k in 0..m {
            acc += g[r * m + k] * dw[k];
        }
        out[r] = acc;
    }
    Ok(())
}

/// One step of the scalar-noise strong scheme (`m = 1`, any `d`).
///
/// ```text
/// X0_i = x + Σ A0_ij f(t + c0_j h, X0_j) h + Σ B0_ij g(t + c1_j h, X1_j) I10/h
/// X1_i = x + Σ A1_ij f(t + c0_j h, X0_j) h + Σ B1_ij g(t + c1_j h, X1_j) √h
/// x'   = x + Σ a_i f(X0_i) h + Σ (b1_i I1 + b2_i I11/√h + b3_i I10/h + b4_i I111/h) g(X1_i)
/// ```
pub fn scalar_strong_step(
    table: &FloatTable,
    sys: &dyn SdeSystem,
    t: f64,
    x: &[f64],
    h: f64,
    ints: &ItoIntegralSet,
    out: &mut [f64],
) -> Result<()> {
    check_table(table, TableKind::ScalarStrong, "scalar_strong_step")?;
    let (d, m) = check_state(sys, x, out)?;
    if m != 1 {
        return Err(Error::shape("scalar-noise scheme noise dimension", 1, m));
    }
    if ints.noise_dim() != 1 {
        return Err(Error::shape("iterated integrals", 1, ints.noise_dim()));
    }
    let s = table.stages;
    let sqrt_h = h.sqrt();
    let i1 = ints.single[0];
    let i10_h = ints.time_right[0] / h;
    let i11_sqrt_h = ints.double[[0, 0]] / sqrt_h;
    let i111_h = ints.triple_diag[0] / h;

    let need_f: Vec<bool> =
        (0..s).map(|j| table.alpha[j] != 0.0 || column_used(&table.a0, j) || column_used(&table.a1, j)).collect();
    let need_g: Vec<bool> = (0..s)
        .map(|j| {
            [&table.beta1, &table.beta2, &table.beta3, &table.beta4].iter().any(|b| b[j] != 0.0)
                || column_used(&table.b0, j)
                || column_used(&table.b1, j)
        })
        .collect();

    let mut fv = vec![vec![0.0; d]; s];
    let mut gv = vec![vec![0.0; d]; s];
    let mut stage = vec![0.0; d];
    for i in 0..s {
        if need_f[i] {
            stage.copy_from_slice(x);
            for j in 0..i {
                axpy(&mut stage, table.a0[i][j] * h, &fv[j]);
            }
            for j in 0..i {
                axpy(&mut stage, table.b0[i][j] * i10_h, &gv[j]);
            }
            sys.drift(t + table.c0[i] * h, &stage, &mut fv[i]);
        }
        if need_g[i] {
            stage.copy_from_slice(x);
            for j in 0..i {
                axpy(&mut stage, table.a1[i][j] * h, &fv[j]);
            }
            for j in 0..i {
                axpy(&mut stage, table.b1[i][j] * sqrt_h, &gv[j]);
            }
            sys.diffusion(t + table.c1[i] * h, &stage, &mut gv[i]);
        }
    }

    out.copy_from_slice(x);
    for i in 0..s {
        axpy(out, table.alpha[i] * h, &fv[i]);
    }
    for i in 0..s {
        axpy(out, table.beta1[i] * i1, &gv[i]);
        axpy(out, table.beta2[i] * i11_sqrt_h, &gv[i]);
        axpy(out, table.beta3[i] * i10_h, &gv[i]);
        axpy(out, table.beta4[i] * i111_h, &gv[i]);
    }
    Ok(())
}

/// One step of the strong order 1.0 scheme for `m`-dimensional noise.
///
/// ```text
/// X0_i  = x + Σ_j A0_ij f(t + c0_j h, X0_j) h + Σ_l Σ_j B0_ij G_l(t + c1_j h, Xl_j) I^l
/// Xk_i  = x + Σ_j A1_ij f(t + c0_j h, X0_j) h + Σ_l Σ_j B1_ij G_l(t + c1_j h, Xl_j) I^{lk}/√h
/// x'    = x + Σ_i a_i f(X0_i) h + Σ_k Σ_i (b1_i I^k + b2_i √h) G_k(Xk_i)
/// ```
///
/// `G_l` is column `l` of the diffusion matrix. With
/// `transpose_cross` the stage coupling reads `I^{kl}` instead of `I^{lk}`.
pub fn vector_strong_step(
    table: &FloatTable,
    sys: &dyn SdeSystem,
    t: f64,
    x: &[f64],
    h: f64,
    ints: &ItoIntegralSet,
    out: &mut [f64],
) -> Result<()> {
    check_table(table, TableKind::VectorStrong, "vector_strong_step")?;
    let (d, m) = check_state(sys, x, out)?;
    if ints.noise_dim() != m {
        return Err(Error::shape("iterated integrals", m, ints.noise_dim()));
    }
    let s = table.stages;
    let sqrt_h = h.sqrt();
    let cross = |l: usize, k: usize| {
        if table.transpose_cross {
            ints.double[[k, l]] / sqrt_h
        } else {
            ints.double[[l, k]] / sqrt_h
        }
    };

    let need_f: Vec<bool> =
        (0..s).map(|j| table.alpha[j] != 0.0 || column_used(&table.a0, j) || column_used(&table.a1, j)).collect();
    let need_g: Vec<bool> = (0..s)
        .map(|j| {
            table.beta1[j] != 0.0 || table.beta2[j] != 0.0 || column_used(&table.b0, j) || column_used(&table.b1, j)
        })
        .collect();

    let mut fv = vec![vec![0.0; d]; s];
    // gv[k][j]: full diffusion matrix at stage X^k_j
    let mut gv = vec![vec![vec![0.0; d * m]; s]; m];
    let mut stage = vec![0.0; d];
    for i in 0..s {
        if need_f[i] {
            stage.copy_from_slice(x);
            for j in 0..i {
                axpy(&mut stage, table.a0[i][j] * h, &fv[j]);
            }
            for j in 0..i {
                for l in 0..m {
                    axpy_col(&mut stage, table.b0[i][j] * ints.single[l], &gv[l][j], m, l);
                }
            }
            sys.drift(t + table.c0[i] * h, &stage, &mut fv[i]);
        }
        if need_g[i] {
            for k in 0..m {
                stage.copy_from_slice(x);
                for j in 0..i {
                    axpy(&mut stage, table.a1[i][j] * h, &fv[j]);
                }
                for j in 0..i {
                    for l in 0..m {
                        axpy_col(&mut stage, table.b1[i][j] * cross(l, k), &gv[l][j], m, l);
                    }
                }
                sys.diffusion(t + table.c1[i] * h, &stage, &mut gv[k][i]);
            }
        }
    }

    out.copy_from_slice(x);
    for i in 0..s {
        axpy(out, table.alpha[i] * h, &fv[i]);
    }
    for k in 0..m {
        for i in 0..s {
            axpy_col(out, table.beta1[i] * ints.single[k], &gv[k][i], m, k);
            axpy_col(out, table.beta2[i] * sqrt_h, &gv[k][i], m, k);
        }
    }
    Ok(())
}

/// One step of the weak order 2.0 scheme.
///
/// ```text
/// X0_i  = x + Σ_j A0_ij f(t + c0_j h, X0_j) h + Σ_l Σ_j B0_ij G_l(t + c1_j h, Xl_j) Î^l
/// Xk_i  = x + Σ_j A1_ij f(t + c0_j h, X0_j) h + Σ_j B1_ij G_k(t + c1_j h, Xk_j) √h
/// X̂k_i  = x + Σ_j A2_ij f(t + c0_j h, X0_j) h + Σ_{l≠k} Σ_j B2_ij G_l(t + c1_j h, Xl_j) Î^{kl}/√h
/// x'    = x + Σ_i a_i f(X0_i) h
///           + Σ_k Σ_i (b1_i Î^k + b2_i Î^{kk}/√h) G_k(t + c1_i h, Xk_i)
///           + Σ_k Σ_i (b3_i Î^k + b4_i √h) G_k(t + c2_i h, X̂k_i)
/// ```
pub fn vector_weak_step(
    table: &FloatTable,
    sys: &dyn SdeSystem,
    t: f64,
    x: &[f64],
    h: f64,
    w: &WeakRandomSet,
    out: &mut [f64],
) -> Result<()> {
    check_table(table, TableKind::VectorWeak, "vector_weak_step")?;
    let (d, m) = check_state(sys, x, out)?;
    if w.noise_dim() != m {
        return Err(Error::shape("weak random set", m, w.noise_dim()));
    }
    let s = table.stages;
    let sqrt_h = h.sqrt();

    let need_f: Vec<bool> = (0..s)
        .map(|j| {
            table.alpha[j] != 0.0
                || column_used(&table.a0, j)
                || column_used(&table.a1, j)
                || column_used(&table.a2, j)
        })
        .collect();
    let need_g: Vec<bool> = (0..s)
        .map(|j| {
            table.beta1[j] != 0.0
                || table.beta2[j] != 0.0
                || column_used(&table.b0, j)
                || column_used(&table.b1, j)
                || (m > 1 && column_used(&table.b2, j))
        })
        .collect();
    let need_gh: Vec<bool> = (0..s).map(|j| table.beta3[j] != 0.0 || table.beta4[j] != 0.0).collect();

    let mut fv = vec![vec![0.0; d]; s];
    let mut gv = vec![vec![vec![0.0; d * m]; s]; m];
    let mut ghv = vec![vec![vec![0.0; d * m]; s]; m];
    let mut stage = vec![0.0; d];
    for i in 0..s {
        if need_f[i] {
            stage.copy_from_slice(x);
            for j in 0..i {
                axpy(&mut stage, table.a0[i][j] * h, &fv[j]);
            }
            for j in 0..i {
                for l in 0..m {
                    axpy_col(&mut stage, table.b0[i][j] * w.ihat[l], &gv[l][j], m, l);
                }
            }
            sys.drift(t + table.c0[i] * h, &stage, &mut fv[i]);
        }
        if need_g[i] {
            for k in 0..m {
                stage.copy_from_slice(x);
                for j in 0..i {
                    axpy(&mut stage, table.a1[i][j] * h, &fv[j]);
                }
                for j in 0..i {
                    axpy_col(&mut stage, table.b1[i][j] * sqrt_h, &gv[k][j], m, k);
                }
                sys.diffusion(t + table.c1[i] * h, &stage, &mut gv[k][i]);
            }
        }
        if need_gh[i] {
            for k in 0..m {
                stage.copy_from_slice(x);
                for j in 0..i {
                    axpy(&mut stage, table.a2[i][j] * h, &fv[j]);
                }
                for j in 0..i {
                    for l in (0..m).filter(|&l| l != k) {
                        axpy_col(&mut stage, table.b2[i][j] * (w.ihat2[[k, l]] / sqrt_h), &gv[l][j], m, l);
                    }
                }
                sys.diffusion(t + table.c2[i] * h, &stage, &mut ghv[k][i]);
            }
        }
    }

    out.copy_from_slice(x);
    for i in 0..s {
        axpy(out, table.alpha[i] * h, &fv[i]);
    }
    for k in 0..m {
        for i in 0..s {
            axpy_col(out, table.beta1[i] * w.ihat[k], &gv[k][i], m, k);
            axpy_col(out, table.beta2[i] * (w.ihat2[[k, k]] / sqrt_h), &gv[k][i], m, k);
        }
        for i in 0..s {
            axpy_col(out, table.beta3[i] * w.ihat[k], &ghv[k][i], m, k);
            axpy_col(out, table.beta4[i] * sqrt_h, &ghv[k][i], m, k);
        }
    }
    Ok(())
}

/// What randomness a stepper consumes per step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoiseKind {
    /// Gaussian increments plus the listed auxiliary integrals.
    Strong(IntegralNeeds),
    /// Three- and two-point variables.
    Weak,
}

/// Randomness for a single step.
#[derive(Debug, Clone, Copy)]
pub enum StepNoise<'a> {
    Strong(&'a ItoIntegralSet),
    Weak(&'a WeakRandomSet),
}

/// A one-step map `x_n → x_{n+1}`.
pub trait Stepper: Send + Sync {
    fn name(&self) -> &str;
    fn noise_kind(&self) -> NoiseKind;
    fn step(&self, sys: &dyn SdeSystem, t: f64, x: &[f64], h: f64, noise: StepNoise<'_>, out: &mut [f64]) -> Result<()>;
}

/// Euler–Maruyama. Weak noise drives it with `Î^k` in place of `ΔW^k`.
#[derive(Debug, Clone, Copy, Default)]
pub struct EulerMaruyama;

impl Stepper for EulerMaruyama {
    fn name(&self) -> &str {
        "EM"
    }
    fn noise_kind(&self) -> NoiseKind {
        NoiseKind::Strong(IntegralNeeds::NONE)
    }
    fn step(&self, sys: &dyn SdeSystem, t: f64, x: &[f64], h: f64, noise: StepNoise<'_>, out: &mut [f64]) -> Result<()> {
        match noise {
            StepNoise::Strong(ints) => em_step(sys, t, x, h, ints.single.as_slice().expect("contiguous"), out),
            StepNoise::Weak(w) => em_step(sys, t, x, h, w.ihat.as_slice().expect("contiguous"), out),
        }
    }
}

/// Interpreted stepper for any coefficient table.
#[derive(Debug, Clone)]
pub struct TableStepper {
    table: FloatTable,
    noise: NoiseKind,
}

impl TableStepper {
    pub fn new(table: &CoefficientTable) -> Self {
        Self::from_float(to_float(table, 17))
    }

    pub fn from_float(table: FloatTable) -> Self {
        let nonzero_mat = |m: &[Vec<f64>]| m.iter().flatten().any(|&c| c != 0.0);
        let noise = match table.kind {
            TableKind::ScalarStrong => NoiseKind::Strong(IntegralNeeds {
                time_mixed: nonzero_mat(&table.b0) || table.beta3.iter().any(|&c| c != 0.0),
                cross: false,
            }),
            TableKind::VectorStrong => NoiseKind::Strong(IntegralNeeds {
                time_mixed: false,
                cross: nonzero_mat(&table.b1),
            }),
            TableKind::VectorWeak => NoiseKind::Weak,
        };
        Self { table, noise }
    }

    pub fn table(&self) -> &FloatTable {
        &self.table
    }
}

impl Stepper for TableStepper {
    fn name(&self) -> &str {
        &self.table.name
    }
    fn noise_kind(&self) -> NoiseKind {
        self.noise
    }
    fn step(&self, sys: &dyn SdeSystem, t: f64, x: &[f64], h: f64, noise: StepNoise<'_>, out: &mut [f64]) -> Result<()> {
        let t_ = &self.table;
        match (t_.kind, noise) {
            (TableKind::ScalarStrong, StepNoise::Strong(ints)) => scalar_strong_step(t_, sys, t, x, h, ints, out),
            (TableKind::VectorStrong, StepNoise::Strong(ints)) => vector_strong_step(t_, sys, t, x, h, ints, out),
            (TableKind::VectorWeak, StepNoise::Weak(w)) => vector_weak_step(t_, sys, t, x, h, w, out),
            (kind, _) => Err(Error::InvalidArgument(format!(
                "{} ({kind}) received the wrong kind of step randomness",
                t_.name
            ))),
        }
    }
}

/// `"EM"` (also `"euler"`) or the name of a bundled table, case-insensitively.
pub fn stepper_by_name(name: &str) -> Result<Box<dyn Stepper>> {
    if name.eq_ignore_ascii_case("em") || name.eq_ignore_ascii_case("euler") {
        return Ok(Box::new(EulerMaruyama));
    }
    let table = tables::bundled_table(name)?;
    Ok(Box::new(TableStepper::new(&table)))
}

/// Supplies per-step randomness to [`integrate`].
pub trait NoiseSource {
    /// Iterated integrals for step `n` of size `h` over `m` noise components.
    fn strong(&mut self, n: usize, h: f64, m: usize, needs: IntegralNeeds) -> Result<ItoIntegralSet>;
    /// Weak random variables for step `n`.
    fn weak(&mut self, n: usize, h: f64, m: usize) -> Result<WeakRandomSet>;
}

/// Increments from a stored path; ζ and Lévy-area series are drawn from
/// `rng` as the stepper asks for them.
pub struct PathNoise<'p, R> {
    path: &'p WienerPath,
    rng: R,
    series: Option<SeriesConfig>,
}

impl<'p, R: Rng> PathNoise<'p, R> {
    /// Uses `n_terms = ceil(1/h)` series terms.
    pub fn new(path: &'p WienerPath, rng: R) -> Self {
        Self { path, rng, series: None }
    }

    pub fn with_series(path: &'p WienerPath, rng: R, series: SeriesConfig) -> Self {
        Self {
            path,
            rng,
            series: Some(series),
        }
    }
}

impl<R: Rng> NoiseSource for PathNoise<'_, R> {
    fn strong(&mut self, n: usize, h: f64, m: usize, needs: IntegralNeeds) -> Result<ItoIntegralSet> {
        if self.path.noise_dim() != m {
            return Err(Error::shape("Wiener path noise dimension", m, self.path.noise_dim()));
        }
        if n >= self.path.grid().steps() {
            return Err(Error::InvalidArgument(format!(
                "step {n} is beyond the {}-step path",
                self.path.grid().steps()
            )));
        }
        let cfg = self.series.unwrap_or_else(|| SeriesConfig::for_step(h));
        sample_step_integrals_for(self.path.increment(n), h, cfg, needs, &mut self.rng)
    }

    fn weak(&mut self, _n: usize, _h: f64, _m: usize) -> Result<WeakRandomSet> {
        Err(Error::InvalidArgument(
            "a stored Wiener path cannot drive a weak scheme".into(),
        ))
    }
}

/// Fresh Gaussian increments each step (`m` normals, then the auxiliary draws).
pub struct GaussianNoise<R> {
    rng: R,
    series: Option<SeriesConfig>,
}

impl<R: Rng> GaussianNoise<R> {
    pub fn new(rng: R) -> Self {
        Self { rng, series: None }
    }

    pub fn with_series(rng: R, series: SeriesConfig) -> Self {
        Self {
            rng,
            series: Some(series),
        }
    }
}

impl<R: Rng> NoiseSource for GaussianNoise<R> {
    fn strong(&mut self, _n: usize, h: f64, m: usize, needs: IntegralNeeds) -> Result<ItoIntegralSet> {
        let sqrt_h = h.sqrt();
        let dw: Vec<f64> = (0..m)
            .map(|_| sqrt_h * self.rng.sample::<f64, _>(StandardNormal))
            .collect();
        let cfg = self.series.unwrap_or_else(|| SeriesConfig::for_step(h));
        sample_step_integrals_for(&dw, h, cfg, needs, &mut self.rng)
    }

    fn weak(&mut self, _n: usize, h: f64, m: usize) -> Result<WeakRandomSet> {
        Err(Error::InvalidArgument(format!(
            "Gaussian noise cannot drive a weak scheme (h = {h}, m = {m})"
        )))
    }
}

/// Three-point/two-point variables each step.
pub struct WeakNoise<R> {
    rng: R,
}

impl<R: Rng> WeakNoise<R> {
    pub fn new(rng: R) -> Self {
        Self { rng }
    }
}

impl<R: Rng> NoiseSource for WeakNoise<R> {
    fn strong(&mut self, _n: usize, _h: f64, _m: usize, _needs: IntegralNeeds) -> Result<ItoIntegralSet> {
        Err(Error::InvalidArgument(
            "discrete weak variables cannot drive a strong scheme".into(),
        ))
    }

    fn weak(&mut self, _n: usize, h: f64, m: usize) -> Result<WeakRandomSet> {
        Ok(sample_weak_randoms(&mut self.rng, m, h))
    }
}

/// Integrates `steps` steps of size `h` from `(t0, x0)`; returns the
/// `(steps + 1) × d` trajectory. A non-finite state aborts with the number of
/// the step that produced it (1-based) and its end time.
pub fn integrate_steps(
    stepper: &dyn Stepper,
    sys: &dyn SdeSystem,
    x0: &[f64],
    t0: f64,
    h: f64,
    steps: usize,
    source: &mut dyn NoiseSource,
) -> Result<Array2<f64>> {
    let d = sys.dim();
    let m = sys.noise_dim();
    if x0.len() != d {
        return Err(Error::shape("initial state", d, x0.len()));
    }
    let mut traj = Array2::zeros((steps + 1, d));
    traj.row_mut(0).assign(&ndarray::aview1(x0));
    let mut x = x0.to_vec();
    let mut next = vec![0.0; d];
    for n in 0..steps {
        let t = t0 + n as f64 * h;
        match stepper.noise_kind() {
            NoiseKind::Strong(needs) => {
                let ints = source.strong(n, h, m, needs)?;
                stepper.step(sys, t, &x, h, StepNoise::Strong(&ints), &mut next)?;
            }
            NoiseKind::Weak => {
                let w = source.weak(n, h, m)?;
                stepper.step(sys, t, &x, h, StepNoise::Weak(&w), &mut next)?;
            }
        }
        if next.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                step: n + 1,
                t: t0 + (n + 1) as f64 * h,
            });
        }
        std::mem::swap(&mut x, &mut next);
        traj.row_mut(n + 1).assign(&ndarray::aview1(&x));
    }
    Ok(traj)
}

/// [`integrate_steps`] over a grid.
pub fn integrate(
    stepper: &dyn Stepper,
    sys: &dyn SdeSystem,
    x0: &[f64],
    grid: &TimeGrid,
    source: &mut dyn NoiseSource,
) -> Result<Array2<f64>> {
    integrate_steps(stepper, sys, x0, grid.t0(), grid.h(), grid.steps(), source)
}

/// Trajectory as CSV with header `t,x1,...,xd`.
pub fn write_trajectory_csv<W: Write>(writer: W, grid: &TimeGrid, traj: &Array2<f64>) -> Result<()> {
    if traj.nrows() != grid.steps() + 1 {
        return Err(Error::shape("trajectory rows", grid.steps() + 1, traj.nrows()));
    }
    let mut header = vec!["t".to_string()];
    header.extend((1..=traj.ncols()).map(|i| format!("x{i}")));
    write_table_csv(writer, &header, grid.times(), traj.view())
}

pub fn save_trajectory_csv(path: &Path, grid: &TimeGrid, traj: &Array2<f64>) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    write_trajectory_csv(std::io::BufWriter::new(file), grid, traj).map_err(|e| attach_path(e, path))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ito_integrals::sample_step_integrals;
    use crate::tables::bundled_table;
    use crate::wiener::generate_path;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gbm(mu: f64, sigma: f64) -> impl SdeSystem {
        FnSystem::new(
            1,
            1,
            move |_, x: &[f64], f: &mut [f64]| f[0] = mu * x[0],
            move |_, x: &[f64], g: &mut [f64]| g[0] = sigma * x[0],
        )
    }

    fn float(name: &str) -> FloatTable {
        to_float(&bundled_table(name).unwrap(), 17)
    }

    #[test]
    fn em_substitution() {
        let sys = gbm(0.1, 0.2);
        let mut out = [0.0];
        em_step(&sys, 0.0, &[1.0], 0.01, &[0.05], &mut out).unwrap();
        assert!((out[0] - 1.011).abs() < 1e-15);
        assert!(em_step(&sys, 0.0, &[1.0], 0.01, &[0.05, 0.1], &mut out).is_err());
    }

    #[test]
    fn weak_pair_sum_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let w = sample_weak_randoms(&mut rng, 4, 0.1);
            for k in 0..4 {
                assert_eq!(w.ihat2[[k, k]], 0.5 * (w.ihat[k] * w.ihat[k] - 0.1));
                for l in 0..4 {
                    if k != l {
                        let sum = w.ihat2[[k, l]] + w.ihat2[[l, k]];
                        assert!((sum - w.ihat[k] * w.ihat[l]).abs() <= 1e-15);
                    }
                }
            }
        }
    }

    #[test]
    fn wrong_kind_is_rejected() {
        let sys = gbm(0.1, 0.2);
        let ints = sample_step_integrals(&[0.1], 0.01, SeriesConfig::for_step(0.01), &mut ChaCha8Rng::seed_from_u64(0)).unwrap();
        let mut out = [0.0];
        let err = vector_strong_step(&float("SRK1W1"), &sys, 0.0, &[1.0], 0.01, &ints, &mut out).unwrap_err();
        assert!(matches!(err, Error::WrongKind { .. }));
    }

    #[test]
    fn upper_entry_is_rejected() {
        let sys = gbm(0.1, 0.2);
        let mut t = float("SRK2Wm");
        t.b1[0][1] = 1.0;
        let ints = sample_step_integrals(&[0.1], 0.01, SeriesConfig::for_step(0.01), &mut ChaCha8Rng::seed_from_u64(0)).unwrap();
        let mut out = [0.0];
        assert!(vector_strong_step(&t, &sys, 0.0, &[1.0], 0.01, &ints, &mut out).is_err());
    }

    #[test]
    fn zero_fields_are_fixed_points() {
        let sys = FnSystem::new(2, 2, |_, _: &[f64], f: &mut [f64]| f.fill(0.0), |_, _: &[f64], g: &mut [f64]| g.fill(0.0));
        let x = [0.3, -1.7];
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for name in tables::bundled_names() {
            let stepper = TableStepper::new(&bundled_table(name).unwrap());
            if stepper.table().kind == TableKind::ScalarStrong {
                continue;
            }
            let mut out = [0.0; 2];
            let ints = sample_step_integrals(&[0.1, -0.2], 0.01, SeriesConfig::new(5).unwrap(), &mut rng).unwrap();
            let w = sample_weak_randoms(&mut rng, 2, 0.01);
            let noise = match stepper.noise_kind() {
                NoiseKind::Weak => StepNoise::Weak(&w),
                NoiseKind::Strong(_) => StepNoise::Strong(&ints),
            };
            stepper.step(&sys, 0.0, &x, 0.01, noise, &mut out).unwrap();
            assert_eq!(out, x, "{name}");
        }
    }

    #[test]
    fn integrate_zero_steps_and_brownian_motion() {
        let sys = FnSystem::new(1, 1, |_, _: &[f64], f: &mut [f64]| f[0] = 0.0, |_, _: &[f64], g: &mut [f64]| g[0] = 1.0);
        let mut src = GaussianNoise::new(ChaCha8Rng::seed_from_u64(1));
        let traj = integrate_steps(&EulerMaruyama, &sys, &[2.0], 0.0, 0.1, 0, &mut src).unwrap();
        assert_eq!(traj.shape(), &[1, 1]);
        assert_eq!(traj[[0, 0]], 2.0);

        let grid = TimeGrid::new(0.0, 1.0, 50).unwrap();
        let path = generate_path(&mut ChaCha8Rng::seed_from_u64(2), grid, 1).unwrap();
        let mut src = PathNoise::new(&path, ChaCha8Rng::seed_from_u64(3));
        let traj = integrate(&EulerMaruyama, &sys, &[0.0], &grid, &mut src).unwrap();
        assert_eq!(traj.column(0), path.cumulative().column(0));
    }

    #[test]
    fn blow_up_names_the_step() {
        let sys = FnSystem::new(1, 1, |_, x: &[f64], f: &mut [f64]| f[0] = x[0] * x[0], |_, _: &[f64], g: &mut [f64]| g[0] = 0.0);
        let mut src = GaussianNoise::new(ChaCha8Rng::seed_from_u64(1));
        let err = integrate_steps(&EulerMaruyama, &sys, &[10.0], 0.0, 1.0, 50, &mut src).unwrap_err();
        match err {
            Error::NonFinite { step, .. } => assert!(step > 1 && step < 50),
            other => panic!("{other}"),
        }
    }

    #[test]
    fn weak_noise_cannot_drive_strong_tables() {
        let sys = gbm(0.1, 0.2);
        let mut src = WeakNoise::new(ChaCha8Rng::seed_from_u64(1));
        let s = stepper_by_name("srk1w1").unwrap();
        assert!(integrate_steps(s.as_ref(), &sys, &[1.0], 0.0, 0.1, 3, &mut src).is_err());
        assert!(stepper_by_name("nope").is_err());
    }

    #[test]
    fn needs_follow_the_table() {
        let needs = |n: &str| stepper_by_name(n).unwrap().noise_kind();
        assert_eq!(needs("EM"), NoiseKind::Strong(IntegralNeeds::NONE));
        assert_eq!(needs("SRK1W1"), NoiseKind::Strong(IntegralNeeds { time_mixed: true, cross: false }));
        assert_eq!(needs("K1P1"), NoiseKind::Strong(IntegralNeeds::NONE));
        assert_eq!(needs("SRK1Wm"), NoiseKind::Strong(IntegralNeeds { time_mixed: false, cross: true }));
        assert_eq!(needs("RI1"), NoiseKind::Weak);
    }

    #[test]
    fn trajectory_csv_header() {
        let grid = TimeGrid::new(0.0, 1.0, 2).unwrap();
        let traj = Array2::from_shape_vec((3, 2), vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0]).unwrap();
        let mut buf = Vec::new();
        write_trajectory_csv(&mut buf, &grid, &traj).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("t,x1,x2\n0.0,1.0,2.0\n0.5,3.0,4.0\n1.0,5.0,6.0"));
    }
}
