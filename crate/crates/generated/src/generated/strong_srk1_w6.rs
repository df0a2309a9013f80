// Generated from coefficient table SRK1Wm (vector_strong, m = 6). Do not edit.
// Evaluations per step: 1 drift, 13 diffusion.

use srk_core::ito_integrals::ItoIntegralSet;
use srk_core::schemes::SdeSystem;

const B1_2_1: f64 = 1.0; // 1
const B1_3_1: f64 = -1.0; // -1
const ALPHA_1: f64 = 1.0; // 1
const BETA1_1: f64 = 1.0; // 1
const BETA2_2: f64 = 0.5; // 1/2
const BETA2_3: f64 = -0.5; // -1/2

/// One `SRK1Wm` step for 6-dimensional noise; writes `x_{n+1}` into `out`.
pub fn strong_srk1_w6(
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
    let i_5_1_sqrt_h = ints.double[[4, 0]] / sqrt_h;
    let i_6_1_sqrt_h = ints.double[[5, 0]] / sqrt_h;
    let i_1_2_sqrt_h = ints.double[[0, 1]] / sqrt_h;
    let i_2_2_sqrt_h = ints.double[[1, 1]] / sqrt_h;
    let i_3_2_sqrt_h = ints.double[[2, 1]] / sqrt_h;
    let i_4_2_sqrt_h = ints.double[[3, 1]] / sqrt_h;
    let i_5_2_sqrt_h = ints.double[[4, 1]] / sqrt_h;
    let i_6_2_sqrt_h = ints.double[[5, 1]] / sqrt_h;
    let i_1_3_sqrt_h = ints.double[[0, 2]] / sqrt_h;
    let i_2_3_sqrt_h = ints.double[[1, 2]] / sqrt_h;
    let i_3_3_sqrt_h = ints.double[[2, 2]] / sqrt_h;
    let i_4_3_sqrt_h = ints.double[[3, 2]] / sqrt_h;
    let i_5_3_sqrt_h = ints.double[[4, 2]] / sqrt_h;
    let i_6_3_sqrt_h = ints.double[[5, 2]] / sqrt_h;
    let i_1_4_sqrt_h = ints.double[[0, 3]] / sqrt_h;
    let i_2_4_sqrt_h = ints.double[[1, 3]] / sqrt_h;
    let i_3_4_sqrt_h = ints.double[[2, 3]] / sqrt_h;
    let i_4_4_sqrt_h = ints.double[[3, 3]] / sqrt_h;
    let i_5_4_sqrt_h = ints.double[[4, 3]] / sqrt_h;
    let i_6_4_sqrt_h = ints.double[[5, 3]] / sqrt_h;
    let i_1_5_sqrt_h = ints.double[[0, 4]] / sqrt_h;
    let i_2_5_sqrt_h = ints.double[[1, 4]] / sqrt_h;
    let i_3_5_sqrt_h = ints.double[[2, 4]] / sqrt_h;
    let i_4_5_sqrt_h = ints.double[[3, 4]] / sqrt_h;
    let i_5_5_sqrt_h = ints.double[[4, 4]] / sqrt_h;
    let i_6_5_sqrt_h = ints.double[[5, 4]] / sqrt_h;
    let i_1_6_sqrt_h = ints.double[[0, 5]] / sqrt_h;
    let i_2_6_sqrt_h = ints.double[[1, 5]] / sqrt_h;
    let i_3_6_sqrt_h = ints.double[[2, 5]] / sqrt_h;
    let i_4_6_sqrt_h = ints.double[[3, 5]] / sqrt_h;
    let i_5_6_sqrt_h = ints.double[[4, 5]] / sqrt_h;
    let i_6_6_sqrt_h = ints.double[[5, 5]] / sqrt_h;
    let i_1 = ints.single[0];
    let i_2 = ints.single[1];
    let i_3 = ints.single[2];
    let i_4 = ints.single[3];
    let i_5 = ints.single[4];
    let i_6 = ints.single[5];
    let mut f_1 = vec![0.0; d];
    sys.drift(t, x, &mut f_1);
    let mut g_1 = vec![0.0; d * 6];
    sys.diffusion(t, x, &mut g_1);
    let x1_2: Vec<f64> = (0..d)
        .map(|r| {
            x[r]
                + (B1_2_1 * i_1_1_sqrt_h) * g_1[r * 6]
                + (B1_2_1 * i_2_1_sqrt_h) * g_1[r * 6 + 1]
                + (B1_2_1 * i_3_1_sqrt_h) * g_1[r * 6 + 2]
                + (B1_2_1 * i_4_1_sqrt_h) * g_1[r * 6 + 3]
                + (B1_2_1 * i_5_1_sqrt_h) * g_1[r * 6 + 4]
                + (B1_2_1 * i_6_1_sqrt_h) * g_1[r * 6 + 5]
        })
        .collect();
    let mut g_2 = vec![0.0; d * 6];
    sys.diffusion(t, &x1_2, &mut g_2);
    let x2_2: Vec<f64> = (0..d)
        .map(|r| {
            x[r]
                + (B1_2_1 * i_1_2_sqrt_h) * g_1[r * 6]
                + (B1_2_1 * i_2_2_sqrt_h) * g_1[r * 6 + 1]
                + (B1_2_1 * i_3_2_sqrt_h) * g_1[r * 6 + 2]
                + (B1_2_1 * i_4_2_sqrt_h) * g_1[r * 6 + 3]
                + (B1_2_1 * i_5_2_sqrt_h) * g_1[r * 6 + 4]
                + (B1_2_1 * i_6_2_sqrt_h) * g_1[r * 6 + 5]
        })
        .collect();
    let mut g_3 = vec![0.0; d * 6];
    sys.diffusion(t, &x2_2, &mut g_3);
    let x3_2: Vec<f64> = (0..d)
        .map(|r| {
            x[r]
                + (B1_2_1 * i_1_3_sqrt_h) * g_1[r * 6]
                + (B1_2_1 * i_2_3_sqrt_h) * g_1[r * 6 + 1]
                + (B1_2_1 * i_3_3_sqrt_h) * g_1[r * 6 + 2]
                + (B1_2_1 * i_4_3_sqrt_h) * g_1[r * 6 + 3]
                + (B1_2_1 * i_5_3_sqrt_h) * g_1[r * 6 + 4]
                + (B1_2_1 * i_6_3_sqrt_h) * g_1[r * 6 + 5]
        })
        .collect();
    let mut g_4 = vec![0.0; d * 6];
    sys.diffusion(t, &x3_2, &mut g_4);
    let x4_2: Vec<f64> = (0..d)
        .map(|r| {
            x[r]
                + (B1_2_1 * i_1_4_sqrt_h) * g_1[r * 6]
                + (B1_2_1 * i_2_4_sqrt_h) * g_1[r * 6 + 1]
                + (B1_2_1 * i_3_4_sqrt_h) * g_1[r * 6 + 2]
                + (B1_2_1 * i_4_4_sqrt_h) * g_1[r * 6 + 3]
                + (B1_2_1 * i_5_4_sqrt_h) * g_1[r * 6 + 4]
                + (B1_2_1 * i_6_4_sqrt_h) * g_1[r * 6 + 5]
        })
        .collect();
    let mut g_5 = vec![0.0; d * 6];
    sys.diffusion(t, &x4_2, &mut g_5);
    let x5_2: Vec<f64> = (0..d)
        .map(|r| {
            x[r]
                + (B1_2_1 * i_1_5_sqrt_h) * g_1[r * 6]
                + (B1_2_1 * i_2_5_sqrt_h) * g_1[r * 6 + 1]
                + (B1_2_1 * i_3_5_sqrt_h) * g_1[r * 6 + 2]
                + (B1_2_1 * i_4_5_sqrt_h) * g_1[r * 6 + 3]
                + (B1_2_1 * i_5_5_sqrt_h) * g_1[r * 6 + 4]
                + (B1_2_1 * i_6_5_sqrt_h) * g_1[r * 6 + 5]
        })
        .collect();
    let mut g_6 = vec![0.0; d * 6];
    sys.diffusion(t, &x5_2, &mut g_6);
    let x6_2: Vec<f64> = (0..d)
        .map(|r| {
            x[r]
                + (B1_2_1 * i_1_6_sqrt_h) * g_1[r * 6]
                + (B1_2_1 * i_2_6_sqrt_h) * g_1[r * 6 + 1]
                + (B1_2_1 * i_3_6_sqrt_h) * g_1[r * 6 + 2]
                + (B1_2_1 * i_4_6_sqrt_h) * g_1[r * 6 + 3]
                + (B1_2_1 * i_5_6_sqrt_h) * g_1[r * 6 + 4]
                + (B1_2_1 * i_6_6_sqrt_h) * g_1[r * 6 + 5]
        })
        .collect();
    let mut g_7 = vec![0.0; d * 6];
    sys.diffusion(t, &x6_2, &mut g_7);
    let x1_3: Vec<f64> = (0..d)
        .map(|r| {
            x[r]
                + (B1_3_1 * i_1_1_sqrt_h) * g_1[r * 6]
                + (B1_3_1 * i_2_1_sqrt_h) * g_1[r * 6 + 1]
                + (B1_3_1 * i_3_1_sqrt_h) * g_1[r * 6 + 2]
                + (B1_3_1 * i_4_1_sqrt_h) * g_1[r * 6 + 3]
                + (B1_3_1 * i_5_1_sqrt_h) * g_1[r * 6 + 4]
                + (B1_3_1 * i_6_1_sqrt_h) * g_1[r * 6 + 5]
        })
        .collect();
    let mut g_8 = vec![0.0; d * 6];
    sys.diffusion(t, &x1_3, &mut g_8);
    let x2_3: Vec<f64> = (0..d)
        .map(|r| {
            x[r]
                + (B1_3_1 * i_1_2_sqrt_h) * g_1[r * 6]
                + (B1_3_1 * i_2_2_sqrt_h) * g_1[r * 6 + 1]
                + (B1_3_1 * i_3_2_sqrt_h) * g_1[r * 6 + 2]
                + (B1_3_1 * i_4_2_sqrt_h) * g_1[r * 6 + 3]
                + (B1_3_1 * i_5_2_sqrt_h) * g_1[r * 6 + 4]
                + (B1_3_1 * i_6_2_sqrt_h) * g_1[r * 6 + 5]
        })
        .collect();
    let mut g_9 = vec![0.0; d * 6];
    sys.diffusion(t, &x2_3, &mut g_9);
    let x3_3: Vec<f64> = (0..d)
        .map(|r| {
            x[r]
                + (B1_3_1 * i_1_3_sqrt_h) * g_1[r * 6]
                + (B1_3_1 * i_2_3_sqrt_h) * g_1[r * 6 + 1]
                + (B1_3_1 * i_3_3_sqrt_h) * g_1[r * 6 + 2]
                + (B1_3_1 * i_4_3_sqrt_h) * g_1[r * 6 + 3]
                + (B1_3_1 * i_5_3_sqrt_h) * g_1[r * 6 + 4]
                + (B1_3_1 * i_6_3_sqrt_h) * g_1[r * 6 + 5]
        })
        .collect();
    let mut g_10 = vec![0.0; d * 6];
    sys.diffusion(t, &x3_3, &mut g_10);
    let x4_3: Vec<f64> = (0..d)
        .map(|r| {
            x[r]
                + (B1_3_1 * i_1_4_sqrt_h) * g_1[r * 6]
                + (B1_3_1 * i_2_4_sqrt_h) * g_1[r * 6 + 1]
                + (B1_3_1 * i_3_4_sqrt_h) * g_1[r * 6 + 2]
                + (B1_3_1 * i_4_4_sqrt_h) * g_1[r * 6 + 3]
                + (B1_3_1 * i_5_4_sqrt_h) * g_1[r * 6 + 4]
                + (B1_3_1 * i_6_4_sqrt_h) * g_1[r * 6 + 5]
        })
        .collect();
    let mut g_11 = vec![0.0; d * 6];
    sys.diffusion(t, &x4_3, &mut g_11);
    let x5_3: Vec<f64> = (0..d)
        .map(|r| {
            x[r]
                + (B1_3_1 * i_1_5_sqrt_h) * g_1[r * 6]
                + (B1_3_1 * i_2_5_sqrt_h) * g_1[r * 6 + 1]
                + (B1_3_1 * i_3_5_sqrt_h) * g_1[r * 6 + 2]
                + (B1_3_1 * i_4_5_sqrt_h) * g_1[r * 6 + 3]
                + (B1_3_1 * i_5_5_sqrt_h) * g_1[r * 6 + 4]
                + (B1_3_1 * i_6_5_sqrt_h) * g_1[r * 6 + 5]
        })
        .collect();
    let mut g_12 = vec![0.0; d * 6];
    sys.diffusion(t, &x5_3, &mut g_12);
    let x6_3: Vec<f64> = (0..d)
        .map(|r| {
            x[r]
                + (B1_3_1 * i_1_6_sqrt_h) * g_1[r * 6]
                + (B1_3_1 * i_2_6_sqrt_h) * g_1[r * 6 + 1]
                + (B1_3_1 * i_3_6_sqrt_h) * g_1[r * 6 + 2]
                + (B1_3_1 * i_4_6_sqrt_h) * g_1[r * 6 + 3]
                + (B1_3_1 * i_5_6_sqrt_h) * g_1[r * 6 + 4]
                + (B1_3_1 * i_6_6_sqrt_h) * g_1[r * 6 + 5]
        })
        .collect();
    let mut g_13 = vec![0.0; d * 6];
    sys.diffusion(t, &x6_3, &mut g_13);
    for (r, o) in out.iter_mut().enumerate() {
        *o = x[r]
            + (ALPHA_1 * h) * f_1[r]
            + (BETA1_1 * i_1) * g_1[r * 6]
            + (BETA2_2 * sqrt_h) * g_2[r * 6]
            + (BETA2_3 * sqrt_h) * g_8[r * 6]
            + (BETA1_1 * i_2) * g_1[r * 6 + 1]
            + (BETA2_2 * sqrt_h) * g_3[r * 6 + 1]
            + (BETA2_3 * sqrt_h) * g_9[r * 6 + 1]
            + (BETA1_1 * i_3) * g_1[r * 6 + 2]
            + (BETA2_2 * sqrt_h) * g_4[r * 6 + 2]
            + (BETA2_3 * sqrt_h) * g_10[r * 6 + 2]
            + (BETA1_1 * i_4) * g_1[r * 6 + 3]
            + (BETA2_2 * sqrt_h) * g_5[r * 6 + 3]
            + (BETA2_3 * sqrt_h) * g_11[r * 6 + 3]
            + (BETA1_1 * i_5) * g_1[r * 6 + 4]
            + (BETA2_2 * sqrt_h) * g_6[r * 6 + 4]
            + (BETA2_3 * sqrt_h) * g_12[r * 6 + 4]
            + (BETA1_1 * i_6) * g_1[r * 6 + 5]
            + (BETA2_2 * sqrt_h) * g_7[r * 6 + 5]
            + (BETA2_3 * sqrt_h) * g_13[r * 6 + 5];
    }
}
