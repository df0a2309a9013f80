//! Specialised steppers emitted by the `rust` dialect for every bundled
//! coefficient table, at noise dimensions 1 through 6 (scalar-noise tables
//! at 1 only).
//!
//! The sources under `src/generated/` are produced by `srk gen` and checked
//! in. `cargo test -p srk-generated` fails if they drift from what the
//! generator emits; run it with `SRK_REGENERATE=1` to rewrite them.

use srk_core::ito_integrals::{IntegralNeeds, ItoIntegralSet};
use srk_core::schemes::{NoiseKind, SdeSystem, StepNoise, Stepper, WeakRandomSet};
use srk_core::{Error, Result};

mod generated;

pub use generated::ENTRIES;

pub type StrongStepFn = fn(&dyn SdeSystem, f64, &[f64], f64, &ItoIntegralSet, &mut [f64]);
pub type WeakStepFn = fn(&dyn SdeSystem, f64, &[f64], f64, &WeakRandomSet, &mut [f64]);

#[derive(Clone, Copy)]
pub enum StepFn {
    Strong(StrongStepFn),
    Weak(WeakStepFn),
}

/// One generated function and what it was generated from.
#[derive(Clone, Copy)]
pub struct Entry {
    pub function: &'static str,
    pub table: &'static str,
    pub m: usize,
    pub time_mixed: bool,
    pub cross: bool,
    pub step: StepFn,
}

impl std::fmt::Debug for Entry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Entry")
            .field("function", &self.function)
            .field("table", &self.table)
            .field("m", &self.m)
            .finish()
    }
}

/// Generated stepper for `table` (case-insensitive) at noise dimension `m`.
pub fn lookup(table: &str, m: usize) -> Option<&'static Entry> {
    ENTRIES.iter().find(|e| e.m == m && e.table.eq_ignore_ascii_case(table))
}

pub fn by_function(name: &str) -> Option<&'static Entry> {
    ENTRIES.iter().find(|e| e.function == name)
}

/// Adapts a generated function to the [`Stepper`] interface, checking
/// dimensions before every call.
#[derive(Debug, Clone, Copy)]
pub struct GeneratedStepper {
    entry: &'static Entry,
}

impl GeneratedStepper {
    pub fn new(entry: &'static Entry) -> Self {
        Self { entry }
    }

    pub fn for_table(table: &str, m: usize) -> Option<Self> {
        lookup(table, m).map(Self::new)
    }

    pub fn entry(&self) -> &'static Entry {
        self.entry
    }

    fn check(&self, sys: &dyn SdeSystem, x: &[f64], out: &[f64], noise_dim: usize) -> Result<()> {
        let m = self.entry.m;
        let shape = |what: &str, expected: usize, found: usize| {
            Error::InvalidArgument(format!(
                "{}: {what} is {found}, expected {expected}",
                self.entry.function
            ))
        };
        if sys.noise_dim() != m {
            return Err(shape("system noise dimension", m, sys.noise_dim()));
        }
        if noise_dim != m {
            return Err(shape("step randomness dimension", m, noise_dim));
        }
        if x.len() != sys.dim() || out.len() != sys.dim() {
            return Err(shape("state length", sys.dim(), x.len().min(out.len())));
        }
        Ok(())
    }
}

impl Stepper for GeneratedStepper {
    fn name(&self) -> &str {
        self.entry.function
    }

    fn noise_kind(&self) -> NoiseKind {
        match self.entry.step {
            StepFn::Strong(_) => NoiseKind::Strong(IntegralNeeds {
                time_mixed: self.entry.time_mixed,
                cross: self.entry.cross,
            }),
            StepFn::Weak(_) => NoiseKind::Weak,
        }
    }

    fn step(&self, sys: &dyn SdeSystem, t: f64, x: &[f64], h: f64, noise: StepNoise<'_>, out: &mut [f64]) -> Result<()> {
        match (self.entry.step, noise) {
            (StepFn::Strong(f), StepNoise::Strong(ints)) => {
                self.check(sys, x, out, ints.noise_dim())?;
                f(sys, t, x, h, ints, out);
                Ok(())
            }
            (StepFn::Weak(f), StepNoise::Weak(w)) => {
                self.check(sys, x, out, w.noise_dim())?;
                f(sys, t, x, h, w, out);
                Ok(())
            }
            _ => Err(Error::InvalidArgument(format!(
                "{} received the wrong kind of step randomness",
                self.entry.function
            ))),
        }
    }
}
