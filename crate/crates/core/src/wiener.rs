//! Discretised Wiener processes on uniform grids.
//!
//! A path stores the per-step increments `ΔW_n^k`; the values `W(t_n)` are
//! recovered by cumulative summation with `W(t_0) = 0`.

use std::io::{Read, Write};
use std::path::Path;

use ndarray::{Array2, ArrayView2, Axis};
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// Uniform grid `t_0 < t_1 < ... < t_N = T`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    t0: f64,
    t_end: f64,
    steps: usize,
}

impl TimeGrid {
    pub fn new(t0: f64, t_end: f64, steps: usize) -> Result<Self> {
        if steps == 0 {
            return Err(Error::InvalidGrid("number of steps must be positive".into()));
        }
        if !t0.is_finite() || !t_end.is_finite() {
            return Err(Error::InvalidGrid(format!("non-finite interval [{t0}, {t_end}]")));
        }
        if t_end <= t0 {
            return Err(Error::InvalidGrid(format!(
                "end time {t_end} must exceed start time {t0}"
            )));
        }
        Ok(Self { t0, t_end, steps })
    }

    /// Grid with step `h`; `(t_end - t0) / h` must be an integer up to rounding.
    pub fn with_step(t0: f64, t_end: f64, h: f64) -> Result<Self> {
        if !(h > 0.0) || !h.is_finite() {
            return Err(Error::InvalidGrid(format!("step size {h} must be positive")));
        }
        let ratio = (t_end - t0) / h;
        let steps = ratio.round();
        if steps < 1.0 || (ratio - steps).abs() > 1e-9 * ratio.max(1.0) {
            return Err(Error::InvalidGrid(format!(
                "step {h} does not divide the interval [{t0}, {t_end}]"
            )));
        }
        Self::new(t0, t_end, steps as usize)
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn h(&self) -> f64 {
        (self.t_end - self.t0) / self.steps as f64
    }

    /// `t_n = t_0 + n h`, with the last node pinned to `T`.
    pub fn time(&self, n: usize) -> f64 {
        if n == self.steps {
            self.t_end
        } else {
            self.t0 + n as f64 * self.h()
        }
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..=self.steps).map(|n| self.time(n))
    }
}

/// Increments of an `m`-dimensional Wiener process over a [`TimeGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct WienerPath {
    grid: TimeGrid,
    increments: Array2<f64>,
}

impl WienerPath {
    pub fn from_increments(grid: TimeGrid, increments: Array2<f64>) -> Result<Self> {
        if increments.nrows() != grid.steps() {
            return Err(Error::shape(
                "wiener path rows",
                grid.steps(),
                increments.nrows(),
            ));
        }
        if increments.ncols() == 0 {
            return Err(Error::InvalidArgument("noise dimension must be positive".into()));
        }
        Ok(Self { grid, increments })
    }

    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    pub fn noise_dim(&self) -> usize {
        self.increments.ncols()
    }

    /// `N × m` increments, row `n` holding `ΔW_n`.
    pub fn increments(&self) -> ArrayView2<'_, f64> {
        self.increments.view()
    }

    pub fn increment(&self, n: usize) -> &[f64] {
        self.increments
            .row(n)
            .to_slice()
            .expect("increments are stored in standard layout")
    }

    /// `(N+1) × m` values `W(t_n)`.
    pub fn cumulative(&self) -> Array2<f64> {
        cumulative(self.increments.view())
    }

    /// Path on a grid `factor` times coarser, each coarse increment being the
    /// exact sum of the fine increments it covers.
    pub fn coarsen(&self, factor: usize) -> Result<Self> {
        if factor == 0 || !self.grid.steps().is_multiple_of(factor) {
            return Err(Error::InvalidArgument(format!(
                "coarsening factor {factor} does not divide {} steps",
                self.grid.steps()
            )));
        }
        let coarse_steps = self.grid.steps() / factor;
        let grid = TimeGrid::new(self.grid.t0(), self.grid.t_end(), coarse_steps)?;
        let mut increments = Array2::zeros((coarse_steps, self.noise_dim()));
        for n in 0..coarse_steps {
            for fine in n * factor..(n + 1) * factor {
                for k in 0..self.noise_dim() {
                    increments[[n, k]] += self.increments[[fine, k]];
                }
            }
        }
        Ok(Self { grid, increments })
    }

    /// Writes `t,W1,...,Wm` with one row per grid node.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut header = vec!["t".to_string()];
        header.extend((1..=self.noise_dim()).map(|k| format!("W{k}")));
        let values = self.cumulative();
        write_table_csv(writer, &header, self.grid.times(), values.view())
    }

    pub fn save_csv(&self, path: &Path) -> Result<()> {
        let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
        self.write_csv(file).map_err(|e| attach_path(e, path))
    }

    /// Reads the format produced by [`WienerPath::write_csv`]. The grid must
    /// be uniform.
    pub fn read_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::Reader::from_reader(reader);
        let headers = rdr.headers().map_err(csv_err)?.clone();
        if headers.get(0) != Some("t") || headers.len() < 2 {
            return Err(Error::Csv {
                path: "<input>".into(),
                message: "expected header `t,W1,...,Wm`".into(),
            });
        }
        let m = headers.len() - 1;
        let mut times = Vec::new();
        let mut values = Vec::new();
        for record in rdr.records() {
            let record = record.map_err(csv_err)?;
            if record.len() != m + 1 {
                return Err(Error::shape("wiener csv row", m + 1, record.len()));
            }
            for (i, field) in record.iter().enumerate() {
                let v: f64 = field.trim().parse().map_err(|_| Error::Csv {
                    path: "<input>".into(),
                    message: format!("not a number: `{field}`"),
                })?;
                if i == 0 {
                    times.push(v);
                } else {
                    values.push(v);
                }
            }
        }
        if times.len() < 2 {
            return Err(Error::InvalidGrid("a path needs at least two nodes".into()));
        }
        let steps = times.len() - 1;
        let grid = TimeGrid::new(times[0], times[steps], steps)?;
        for (n, t) in times.iter().enumerate() {
            if (t - grid.time(n)).abs() > 1e-9 * grid.h().max(t.abs()) {
                return Err(Error::InvalidGrid(format!("node {n} at t = {t} is off the uniform grid")));
            }
        }
        let w = Array2::from_shape_vec((steps + 1, m), values)
            .map_err(|e| Error::InvalidArgument(e.to_string()))?;
        let increments = &w.slice(ndarray::s![1.., ..]) - &w.slice(ndarray::s![..-1, ..]);
        Self::from_increments(grid, increments)
    }

    pub fn load_csv(path: &Path) -> Result<Self> {
        let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
        Self::read_csv(file).map_err(|e| attach_path(e, path))
    }
}

/// Draws an `m`-dimensional path; every increment is `N(0, h)`, generated
/// step-major then component-minor.
pub fn generate_path<R: Rng + ?Sized>(rng: &mut R, grid: TimeGrid, m: usize) -> Result<WienerPath> {
    if m == 0 {
        return Err(Error::InvalidArgument("noise dimension must be positive".into()));
    }
    let sqrt_h = grid.h().sqrt();
    let mut increments = Array2::zeros((grid.steps(), m));
    for v in increments.iter_mut() {
        let z: f64 = rng.sample(StandardNormal);
        *v = sqrt_h * z;
    }
    WienerPath::from_increments(grid, increments)
}

/// Cumulative sums with a leading zero row: `(N+1) × m`.
pub fn cumulative(increments: ArrayView2<'_, f64>) -> Array2<f64> {
    let (rows, m) = increments.dim();
    let mut out = Array2::zeros((rows + 1, m));
    for n in 0..rows {
        for k in 0..m {
            out[[n + 1, k]] = out[[n, k]] + increments[[n, k]];
        }
    }
    out
}

pub(crate) fn write_table_csv<W: Write>(
    writer: W,
    header: &[String],
    times: impl Iterator<Item = f64>,
    values: ArrayView2<'_, f64>,
) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(writer);
    wtr.write_record(header).map_err(csv_err)?;
    for (t, row) in times.zip(values.axis_iter(Axis(0))) {
        let mut record = Vec::with_capacity(row.len() + 1);
        record.push(format!("{t:?}"));
        record.extend(row.iter().map(|v| format!("{v:?}")));
        wtr.write_record(&record).map_err(csv_err)?;
    }
    wtr.flush().map_err(|e| Error::io("<output>", e))?;
    Ok(())
}

pub(crate) fn csv_err(e: csv::Error) -> Error {
    Error::Csv {
        path: "<stream>".into(),
        message: e.to_string(),
    }
}

pub(crate) fn attach_path(e: Error, path: &Path) -> Error {
    match e {
        Error::Csv { message, .. } => Error::Csv {
            path: path.to_path_buf(),
            message,
        },
        Error::Io { source, .. } => Error::io(path, source),
        other => other,
    }
}
