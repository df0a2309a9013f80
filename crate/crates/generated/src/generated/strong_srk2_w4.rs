// Generated from coefficient table SRK2Wm (vector_strong, m = 4). Do not edit.
// Evaluations per step: 2 drift, 9 diffusion.

use srk_core::ito_integrals::ItoIntegralSet;
use srk_core::schemes::SdeSystem;

const A0_2_1: f64 = 1.0; // 1
const C0_2: f64 = 1.0; // 1
const A1_2_1: f64 = 1.0; // 1
const B1_2_1: f64 = 1.0; // 1
const C1_2: f64 = 1.0; // 1
const A1_3_1: f64 = 1.0; // 1
const B1_3_1: f64 = -1.0; // -1
const C1_3: f64 = 1.0; // 1
const ALPHA_1: f64 = 0.5; // 1/2
const ALPHA_2: f64 = 0.5; // 1/2
const BETA1_1: f64 = 1.0; // 1
const BETA2_2: f64 = 0.5; // 1/2
const BETA2_3: f64 = -0.5; // -1/2

/// One `SRK2Wm` step for 4-dimensional noise; writes `x_{n+1}` into `out`.
pub fn strong_srk2_w4(
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
    let i_4_1_sqrt_h = ints.double[[3, 0]] / sqrt_h;
    let i_1_2_sqrt_h = ints.double[[0, 1]] / sqrt_h;
    let i_2_2_sqrt_h = ints.double[[1, 1]] / sqrt_h;
    let i_3_2_sqrt_h = ints.double[[2, 1]] / sqrt_h;
    let i_4_2_sqrt_h = ints.double[[3, 1]] / sqrt_h;
    let i_1_3_sqrt_h = ints.double[[0, 2]] / sqrt_h;
    let i_2_3_sqrt_h = ints.double[[1, 2]] / sqrt_h;
    let i_3_3_sqrt_h = ints.double[[2, 2]] / sqrt_h;
    let i_4_3_sqrt_h = ints.double[[3, 2]] / sqrt_h;
    let i_1_4_sqrt_h = ints.double[[0, 3]] / sqrt_h;
    let i_2_4_sqrt_h = ints.double[[1, 3]] / sqrt_h;
    let i_3_4_sqrt_h = ints.double[[2, 3]] / sqrt_h;
    let i_4_4_sqrt_h = ints.double[[3, 3]] / sqrt_h;
    let i_1 = ints.single[0];
    let i_2 = ints.single[1];
    let i_3 = ints.single[2];
    let i_4 = ints.single[3];
    let mut f_1 = vec![0.0; d];
    sys.drift(t, x, &mut f_1);
    let mut g_1 = vec![0.0; d * 4];
    sys.diffusion(t, x, &mut g_1);
    let x0_2: Vec<f64> = (0..d)
        .map(|r| {
            x[r]
                + (A0_2_1 * h) * f_1[r]
        })
        .collect();
    let mut f_2 = vec![0.0; d];
    sys.drift(t + C0_2 * h, &x0_2, &mut f_2);
    let x1_2: Vec<f64> = (0..d)
        .map(|r| {
            x[r]
                + (A1_2_1 * h) * f_1[r]
                + (B1_2_1 * i_1_1_sqrt_h) * g_1[r * 4]
                + (B1_2_1 * i_2_1_sqrt_h) * g_1[r * 4 + 1]
                + (B1_2_1 * i_3_1_sqrt_h) * g_1[r * 4 + 2]
                + (B1_2_1 * i_4_1_sqrt_h) * g_1[r * 4 + 3]
        })
        .collect();
    let mut g_2 = vec![0.0; d * 4];
    sys.diffusion(t + C1_2 * h, &x1_2, &mut g_2);
    let x2_2: Vec<f64> = (0..d)
        .map(|r| {
            x[r]
                + (A1_2_1 * h) * f_1[r]
                + (B1_2_1 * i_1_2_sqrt_h) * g_1[r * 4]
                + (B1_2_1 * i_2_2_sqrt_h) * g_1[r * 4 + 1]
                + (B1_2_1 * i_3_2_sqrt_h) * g_1[r * 4 + 2]
                + (B1_2_1 * i_4_2_sqrt_h) * g_1[r * 4 + 3]
        })
        .collect();
    let mut g_3 = vec![0.0; d * 4];
    sys.diffusion(t + C1_2 * h, &x2_2, &mut g_3);
    let x3_2: Vec<f64> = (0..d)
        .map(|r| {
            x[r]
                + (A1_2_1 * h) * f_1[r]
                + (B1_2_1 * i_1_3_sqrt_h) * g_1[r * 4]
                + (B1_2_1 * i_2_3_sqrt_h) * g_1[r * 4 + 1]
                + (B1_2_1 * i_3_3_sqrt_h) * g_1[r * 4 + 2]
                + (B1_2_1 * i_4_3_sqrt_h) * g_1[r * 4 + 3]
        })
        .collect();
    let mut g_4 = vec![0.0; d * 4];
    sys.diffusion(t + C1_2 * h, &x3_2, &mut g_4);
    let x4_2: Vec<f64> = (0..d)
        .map(|r| {
            x[r]
                + (A1_2_1 * h) * f_1[r]
                + (B1_2_1 * i_1_4_sqrt_h) * g_1[r * 4]
                + (B1_2_1 * i_2_4_sqrt_h) * g_1[r * 4 + 1]
                + (B1_2_1 * i_3_4_sqrt_h) * g_1[r * 4 + 2]
                + (B1_2_1 * i_4_4_sqrt_h) * g_1[r * 4 + 3]
        })
        .collect();
    let mut g_5 = vec![0.0; d * 4];
    sys.diffusion(t + C1_2 * h, &x4_2, &mut g_5);
    let x1_3: Vec<f64> = (0..d)
        .map(|r| {
            x[r]
                + (A1_3_1 * h) * f_1[r]
                + (B1_3_1 * i_1_1_sqrt_h) * g_1[r * 4]
                + (B1_3_1 * i_2_1_sqrt_h) * g_1[r * 4 + 1]
                + (B1_3_1 * i_3_1_sqrt_h) * g_1[r * 4 + 2]
                + (B1_3_1 * i_4_1_sqrt_h) * g_1[r * 4 + 3]
        })
        .collect();
    let mut g_6 = vec![0.0; d * 4];
    sys.diffusion(t + C1_3 * h, &x1_3, &mut g_6);
    let x2_3: Vec<f64> = (0..d)
        .map(|r| {
            x[r]
                + (A1_3_1 * h) * f_1[r]
                + (B1_3_1 * i_1_2_sqrt_h) * g_1[r * 4]
                + (B1_3_1 * i_2_2_sqrt_h) * g_1[r * 4 + 1]
                + (B1_3_1 * i_3_2_sqrt_h) * g_1[r * 4 + 2]
                + (B1_3_1 * i_4_2_sqrt_h) * g_1[r * 4 + 3]
        })
        .collect();
    let mut g_7 = vec![0.0; d * 4];
    sys.diffusion(t + C1_3 * h, &x2_3, &mut g_7);
    let x3_3: Vec<f64> = (0..d)
        .map(|r| {
            x[r]
                + (A1_3_1 * h) * f_1[r]
                + (B1_3_1 * i_1_3_sqrt_h) * g_1[r * 4]
                + (B1_3_1 * i_2_3_sqrt_h) * g_1[r * 4 + 1]
                + (B1_3_1 * i_3_3_sqrt_h) * g_1[r * 4 + 2]
                + (B1_3_1 * i_4_3_sqrt_h) * g_1[r * 4 + 3]
        })
        .collect();
    let mut g_8 = vec![0.0; d * 4];
    sys.diffusion(t + C1_3 * h, &x3_3, &mut g_8);
    let x4_3: Vec<f64> = (0..d)
        .map(|r| {
            x[r]
                + (A1_3_1 * h) * f_1[r]
                + (B1_3_1 * i_1_4_sqrt_h) * g_1[r * 4]
                + (B1_3_1 * i_2_4_sqrt_h) * g_1[r * 4 + 1]
                + (B1_3_1 * i_3_4_sqrt_h) * g_1[r * 4 + 2]
                + (B1_3_1 * i_4_4_sqrt_h) * g_1[r * 4 + 3]
        })
        .collect();
    let mut g_9 = vec![0.0; d * 4];
    sys.diffusion(t + C1_3 * h, &x4_3, &mut g_9);
    for (r, o) in out.iter_mut().enumerate() {
        *o = x[r]
            + (ALPHA_1 * h) * f_1[r]
            + (ALPHA_2 * h) * f_2[r]
            + (BETA1_1 * i_1) * g_1[r * 4]
            + (BETA2_2 * sqrt_h) * g_2[r * 4]
            + (BETA2_3 * sqrt_h) * g_6[r * 4]
            + (BETA1_1 * i_2) * g_1[r * 4 + 1]
            + (BETA2_2 * sqrt_h) * g_3[r * 4 + 1]
            + (BETA2_3 * sqrt_h) * g_7[r * 4 + 1]
            + (BETA1_1 * i_3) * g_1[r * 4 + 2]
            + (BETA2_2 * sqrt_h) * g_4[r * 4 + 2]
            + (BETA2_3 * sqrt_h) * g_8[r * 4 + 2]
            + (BETA1_1 * i_4) * g_1[r * 4 + 3]
            + (BETA2_2 * sqrt_h) * g_5[r * 4 + 3]
            + (BETA2_3 * sqrt_h) * g_9[r * 4 + 3];
    }
}
