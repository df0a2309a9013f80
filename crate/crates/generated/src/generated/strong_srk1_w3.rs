// Generated from coefficient table SRK1Wm (vector_strong, m = 3). Do not edit.
// Evaluations per step: 1 drift, 7 diffusion.

use srk_core::ito_integrals::ItoIntegralSet;
use srk_core::schemes::SdeSystem;

const B1_2_1: f64 = 1.0; // 1
const B1_3_1: f64 = -1.0; // -1
const ALPHA_1: f64 = 1.0; // 1
const BETA1_1: f64 = 1.0; // 1
const BETA2_2: f64 = 0.5; // 1/2
const BETA2_3: f64 = -0.5; // -1/2

/// One `SRK1Wm` step for 3-dimensional noise; writes `x_{n+1}` into `out`.
pub fn strong_srk1_w3(
    sys: &dyn SdeSystem,
    t: f64,
    x: &[f64],
    h: f64,
    ints: &ItoIntegralSet,
    out: &mut [f64],
) {
    let d = x.len();
    let sqrt_h = h.sqrt();
    let i_1_1_sqrt_h = ints.double[[0, 0]] / sqrt_h;
    let i_2_1_sqrt_h = ints.double[[1, 0]] / sqrt_h;
    let i_3_1_sqrt_h = ints.double[[2, 0]] / sqrt_h;
    let i_1_2_sqrt_h = ints.double[[0, 1]] / sqrt_h;
    let i_2_2_sqrt_h = ints.double[[1, 1]] / sqrt_h;
    let i_3_2_sqrt_h = ints.double[[2, 1]] / sqrt_h;
    let i_1_3_sqrt_h = ints.double[[0, 2]] / sqrt_h;
    let i_2_3_sqrt_h = ints.double[[1, 2]] / sqrt_h;
    let i_3_3_sqrt_h = ints.double[[2, 2]] / sqrt_h;
    let i_1 = ints.single[0];
    let i_2 = ints.single[1];
    let i_3 = ints.single[2];
    let mut f_1 = vec![0.0; d];
    sys.drift(t, x, &mut f_1);
    let mut g_1 = vec![0.0; d * 3];
    sys.diffusion(t, x, &mut g_1);
    let x1_2: Vec<f64> = (0..d)
        .map(|r| {
            x[r]
                + (B1_2_1 * i_1_1_sqrt_h) * g_1[r * 3]
                + (B1_2_1 * i_2_1_sqrt_h) * g_1[r * 3 + 1]
                + (B1_2_1 * i_3_1_sqrt_h) * g_1[r * 3 + 2]
        })
        .collect();
    let mut g_2 = vec![0.0; d * 3];
    sys.diffusion(t, &x1_2, &mut g_2);
    let x2_2: Vec<f64> = (0..d)
        .map(|r| {
            x[r]
                + (B1_2_1 * i_1_2_sqrt_h) * g_1[r * 3]
                + (B1_2_1 * i_2_2_sqrt_h) * g_1[r * 3 + 1]
                + (B1_2_1 * i_3_2_sqrt_h) * g_1[r * 3 + 2]
        })
        .collect();
    let mut g_3 = vec![0.0; d * 3];
    sys.diffusion(t, &x2_2, &mut g_3);
    let x3_2: Vec<f64> = (0..d)
        .map(|r| {
            x[r]
                + (B1_2_1 * i_1_3_sqrt_h) * g_1[r * 3]
                + (B1_2_1 * i_2_3_sqrt_h) * g_1[r * 3 + 1]
                + (B1_2_1 * i_3_3_sqrt_h) * g_1[r * 3 + 2]
        })
        .collect();
    let mut g_4 = vec![0.0; d * 3];
    sys.diffusion(t, &x3_2, &mut g_4);
    let x1_3: Vec<f64> = (0..d)
        .map(|r| {
            x[r]
                + (B1_3_1 * i_1_1_sqrt_h) * g_1[r * 3]
                + (B1_3_1 * i_2_1_sqrt_h) * g_1[r * 3 + 1]
                + (B1_3_1 * i_3_1_sqrt_h) * g_1[r * 3 + 2]
        })
        .collect();
    let mut g_5 = vec![0.0; d * 3];
    sys.diffusion(t, &x1_3, &mut g_5);
    let x2_3: Vec<f64> = (0..d)
        .map(|r| {
            x[r]
                + (B1_3_1 * i_1_2_sqrt_h) * g_1[r * 3]
                + (B1_3_1 * i_2_2_sqrt_h) * g_1[r * 3 + 1]
                + (B1_3_1 * i_3_2_sqrt_h) * g_1[r * 3 + 2]
        })
        .collect();
    let mut g_6 = vec![0.0; d * 3];
    sys.diffusion(t, &x2_3, &mut g_6);
    let x3_3: Vec<f64> = (0..d)
        .map(|r| {
            x[r]
                + (B1_3_1 * i_1_3_sqrt_h) * g_1[r * 3]
                + (B1_3_1 * i_2_3_sqrt_h) * g_1[r * 3 + 1]
                + (B1_3_1 * i_3_3_sqrt_h) * g_1[r * 3 + 2]
        })
        .collect();
    let mut g_7 = vec![0.0; d * 3];
    sys.diffusion(t, &x3_3, &mut g_7);
    for (r, o) in out.iter_mut().enumerate() {
        *o = x[r]
            + (ALPHA_1 * h) * f_1[r]
            + (BETA1_1 * i_1) * g_1[r * 3]
            + (BETA2_2 * sqrt_h) * g_2[r * 3]
            + (BETA2_3 * sqrt_h) * g_5[r * 3]
            + (BETA1_1 * i_2) * g_1[r * 3 + 1]
            + (BETA2_2 * sqrt_h) * g_3[r * 3 + 1]
            + (BETA2_3 * sqrt_h) * g_6[r * 3 + 1]
            + (BETA1_1 * i_3) * g_1[r * 3 + 2]
            + (BETA2_2 * sqrt_h) * g_4[r * 3 + 2]
            + (BETA2_3 * sqrt_h) * g_7[r * 3 + 2];
    }
}
