// Generated from coefficient table K1P1 (scalar_strong, m = 1). Do not edit.
// Evaluations per step: 1 drift, 2 diffusion.

use srk_core::ito_integrals::ItoIntegralSet;
use srk_core::schemes::SdeSystem;

const A1_2_1: f64 = 1.0; // 1
const B1_2_1: f64 = 1.0; // 1
const ALPHA_1: f64 = 1.0; // 1
const BETA1_1: f64 = 1.0; // 1
const BETA2_1: f64 = -1.0; // -1
const BETA2_2: f64 = 1.0; // 1

/// One `K1P1` step for 1-dimensional noise; writes `x_{n+1}` into `out`.
pub fn scalar_k1p1_w1(
    sys: &dyn SdeSystem,
    t: f64,
    x: &[f64],
    h: f64,
    ints: &ItoIntegralSet,
    out: &mut [f64],
) {
    let d = x.len();
    let sqrt_h = h.sqrt();
    let i_1 = ints.single[0];
    let i_1_1_sqrt_h = ints.double[[0, 0]] / sqrt_h;
    let mut f_1 = vec![0.0; d];
    sys.drift(t, x, &mut f_1);
    let mut g_1 = vec![0.0; d];
    sys.diffusion(t, x, &mut g_1);
    let x1_2: Vec<f64> = (0..d)
        .map(|r| {
            x[r]
                + (A1_2_1 * h) * f_1[r]
                + (B1_2_1 * sqrt_h) * g_1[r]
        })
        .collect();
    let mut g_2 = vec![0.0; d];
    sys.diffusion(t, &x1_2, &mut g_2);
    for (r, o) in out.iter_mut().enumerate() {
        *o = x[r]
            + (ALPHA_1 * h) * f_1[r]
            + (BETA1_1 * i_1) * g_1[r]
            + (BETA2_1 * i_1_1_sqrt_h) * g_1[r]
            + (BETA2_2 * i_1_1_sqrt_h) * g_2[r];
    }
}
