// Generated from coefficient table RI1 (vector_weak, m = 4). Do not edit.
// Evaluations per step: 3 drift, 17 diffusion.

use srk_core::schemes::{SdeSystem, WeakRandomSet};

const A0_2_1: f64 = 0.6666666666666666; // 2/3
const B0_2_1: f64 = 1.0; // 1
const C0_2: f64 = 0.6666666666666666; // 2/3
const A1_2_1: f64 = 1.0; // 1
const B1_2_1: f64 = 1.0; // 1
const C1_2: f64 = 1.0; // 1
const B2_2_1: f64 = 1.0; // 1
const A0_3_1: f64 = -0.3333333333333333; // -1/3
const A0_3_2: f64 = 1.0; // 1
const C0_3: f64 = 0.6666666666666666; // 2/3
const A1_3_1: f64 = 1.0; // 1
const B1_3_1: f64 = -1.0; // -1
const C1_3: f64 = 1.0; // 1
const B2_3_1: f64 = -1.0; // -1
const ALPHA_1: f64 = 0.25; // 1/4
const ALPHA_2: f64 = 0.5; // 1/2
const ALPHA_3: f64 = 0.25; // 1/4
const BETA1_1: f64 = 0.5; // 1/2
const BETA1_2: f64 = 0.25; // 1/4
const BETA2_2: f64 = 0.5; // 1/2
const BETA1_3: f64 = 0.25; // 1/4
const BETA2_3: f64 = -0.5; // -1/2
const BETA3_1: f64 = -0.5; // -1/2
const BETA3_2: f64 = 0.25; // 1/4
const BETA4_2: f64 = 0.5; // 1/2
const BETA3_3: f64 = 0.25; // 1/4
const BETA4_3: f64 = -0.5; // -1/2

/// One `RI1` step for 4-dimensional noise; writes `x_{n+1}` into `out`.
pub fn weak_ri1_w4(
    sys: &dyn SdeSystem,
    t: f64,
    x: &[f64],
    h: f64,
    w: &WeakRandomSet,
    out: &mut [f64],
) {
    let d = x.len();
    let sqrt_h = h.sqrt();
    let ihat_1 = w.ihat[0];
    let ihat_2 = w.ihat[1];
    let ihat_3 = w.ihat[2];
    let ihat_4 = w.ihat[3];
    let ihat_1_2_sqrt_h = w.ihat2[[0, 1]] / sqrt_h;
    let ihat_1_3_sqrt_h = w.ihat2[[0, 2]] / sqrt_h;
    let ihat_1_4_sqrt_h = w.ihat2[[0, 3]] / sqrt_h;
    let ihat_2_1_sqrt_h = w.ihat2[[1, 0]] / sqrt_h;
    let ihat_2_3_sqrt_h = w.ihat2[[1, 2]] / sqrt_h;
    let ihat_2_4_sqrt_h = w.ihat2[[1, 3]] / sqrt_h;
    let ihat_3_1_sqrt_h = w.ihat2[[2, 0]] / sqrt_h;
    let ihat_3_2_sqrt_h = w.ihat2[[2, 1]] / sqrt_h;
    let ihat_3_4_sqrt_h = w.ihat2[[2, 3]] / sqrt_h;
    let ihat_4_1_sqrt_h = w.ihat2[[3, 0]] / sqrt_h;
    let ihat_4_2_sqrt_h = w.ihat2[[3, 1]] / sqrt_h;
    let ihat_4_3_sqrt_h = w.ihat2[[3, 2]] / sqrt_h;
    let ihat_1_1_sqrt_h = w.ihat2[[0, 0]] / sqrt_h;
    let ihat_2_2_sqrt_h = w.ihat2[[1, 1]] / sqrt_h;
    let ihat_3_3_sqrt_h = w.ihat2[[2, 2]] / sqrt_h;
    let ihat_4_4_sqrt_h = w.ihat2[[3, 3]] / sqrt_h;
    let mut f_1 = vec![0.0; d];
    sys.drift(t, x, &mut f_1);
    let mut g_1 = vec![0.0; d * 4];
    sys.diffusion(t, x, &mut g_1);
    let x0_2: Vec<f64> = (0..d)
        .map(|r| {
            x[r]
                + (A0_2_1 * h) * f_1[r]
                + (B0_2_1 * ihat_1) * g_1[r * 4]
                + (B0_2_1 * ihat_2) * g_1[r * 4 + 1]
                + (B0_2_1 * ihat_3) * g_1[r * 4 + 2]
                + (B0_2_1 * ihat_4) * g_1[r * 4 + 3]
        })
        .collect();
    let mut f_2 = vec![0.0; d];
    sys.drift(t + C0_2 * h, &x0_2, &mut f_2);
    let x1_2: Vec<f64> = (0..d)
        .map(|r| {
            x[r]
                + (A1_2_1 * h) * f_1[r]
                + (B1_2_1 * sqrt_h) * g_1[r * 4]
        })
        .collect();
    let mut g_2 = vec![0.0; d * 4];
    sys.diffusion(t + C1_2 * h, &x1_2, &mut g_2);
    let x2_2: Vec<f64> = (0..d)
        .map(|r| {
            x[r]
                + (A1_2_1 * h) * f_1[r]
                + (B1_2_1 * sqrt_h) * g_1[r * 4 + 1]
        })
        .collect();
    let mut g_3 = vec![0.0; d * 4];
    sys.diffusion(t + C1_2 * h, &x2_2, &mut g_3);
    let x3_2: Vec<f64> = (0..d)
        .map(|r| {
            x[r]
                + (A1_2_1 * h) * f_1[r]
                + (B1_2_1 * sqrt_h) * g_1[r * 4 + 2]
        })
        .collect();
    let mut g_4 = vec![0.0; d * 4];
    sys.diffusion(t + C1_2 * h, &x3_2, &mut g_4);
    let x4_2: Vec<f64> = (0..d)
        .map(|r| {
            x[r]
                + (A1_2_1 * h) * f_1[r]
                + (B1_2_1 * sqrt_h) * g_1[r * 4 + 3]
        })
        .collect();
    let mut g_5 = vec![0.0; d * 4];
    sys.diffusion(t + C1_2 * h, &x4_2, &mut g_5);
    let xh1_2: Vec<f64> = (0..d)
        .map(|r| {
            x[r]
                + (B2_2_1 * ihat_1_2_sqrt_h) * g_1[r * 4 + 1]
                + (B2_2_1 * ihat_1_3_sqrt_h) * g_1[r * 4 + 2]
                + (B2_2_1 * ihat_1_4_sqrt_h) * g_1[r * 4 + 3]
        })
        .collect();
    let mut g_6 = vec![0.0; d * 4];
    sys.diffusion(t, &xh1_2, &mut g_6);
    let xh2_2: Vec<f64> = (0..d)
        .map(|r| {
            x[r]
                + (B2_2_1 * ihat_2_1_sqrt_h) * g_1[r * 4]
                + (B2_2_1 * ihat_2_3_sqrt_h) * g_1[r * 4 + 2]
                + (B2_2_1 * ihat_2_4_sqrt_h) * g_1[r * 4 + 3]
        })
        .collect();
    let mut g_7 = vec![0.0; d * 4];
    sys.diffusion(t, &xh2_2, &mut g_7);
    let xh3_2: Vec<f64> = (0..d)
        .map(|r| {
            x[r]
                + (B2_2_1 * ihat_3_1_sqrt_h) * g_1[r * 4]
                + (B2_2_1 * ihat_3_2_sqrt_h) * g_1[r * 4 + 1]
                + (B2_2_1 * ihat_3_4_sqrt_h) * g_1[r * 4 + 3]
        })
        .collect();
    let mut g_8 = vec![0.0; d * 4];
    sys.diffusion(t, &xh3_2, &mut g_8);
    let xh4_2: Vec<f64> = (0..d)
        .map(|r| {
            x[r]
                + (B2_2_1 * ihat_4_1_sqrt_h) * g_1[r * 4]
                + (B2_2_1 * ihat_4_2_sqrt_h) * g_1[r * 4 + 1]
                + (B2_2_1 * ihat_4_3_sqrt_h) * g_1[r * 4 + 2]
        })
        .collect();
    let mut g_9 = vec![0.0; d * 4];
    sys.diffusion(t, &xh4_2, &mut g_9);
    let x0_3: Vec<f64> = (0..d)
        .map(|r| {
            x[r]
                + (A0_3_1 * h) * f_1[r]
                + (A0_3_2 * h) * f_2[r]
        })
        .collect();
    let mut f_3 = vec![0.0; d];
    sys.drift(t + C0_3 * h, &x0_3, &mut f_3);
    let x1_3: Vec<f64> = (0..d)
        .map(|r| {
            x[r]
                + (A1_3_1 * h) * f_1[r]
                + (B1_3_1 * sqrt_h) * g_1[r * 4]
        })
        .collect();
    let mut g_10 = vec![0.0; d * 4];
    sys.diffusion(t + C1_3 * h, &x1_3, &mut g_10);
    let x2_3: Vec<f64> = (0..d)
        .map(|r| {
            x[r]
                + (A1_3_1 * h) * f_1[r]
                + (B1_3_1 * sqrt_h) * g_1[r * 4 + 1]
        })
        .collect();
    let mut g_11 = vec![0.0; d * 4];
    sys.diffusion(t + C1_3 * h, &x2_3, &mut g_11);
    let x3_3: Vec<f64> = (0..d)
        .map(|r| {
            x[r]
                + (A1_3_1 * h) * f_1[r]
                + (B1_3_1 * sqrt_h) * g_1[r * 4 + 2]
        })
        .collect();
    let mut g_12 = vec![0.0; d * 4];
    sys.diffusion(t + C1_3 * h, &x3_3, &mut g_12);
    let x4_3: Vec<f64> = (0..d)
        .map(|r| {
            x[r]
                + (A1_3_1 * h) * f_1[r]
                + (B1_3_1 * sqrt_h) * g_1[r * 4 + 3]
        })
        .collect();
    let mut g_13 = vec![0.0; d * 4];
    sys.diffusion(t + C1_3 * h, &x4_3, &mut g_13);
    let xh1_3: Vec<f64> = (0..d)
        .map(|r| {
            x[r]
                + (B2_3_1 * ihat_1_2_sqrt_h) * g_1[r * 4 + 1]
                + (B2_3_1 * ihat_1_3_sqrt_h) * g_1[r * 4 + 2]
                + (B2_3_1 * ihat_1_4_sqrt_h) * g_1[r * 4 + 3]
        })
        .collect();
    let mut g_14 = vec![0.0; d * 4];
    sys.diffusion(t, &xh1_3, &mut g_14);
    let xh2_3: Vec<f64> = (0..d)
        .map(|r| {
            x[r]
                + (B2_3_1 * ihat_2_1_sqrt_h) * g_1[r * 4]
                + (B2_3_1 * ihat_2_3_sqrt_h) * g_1[r * 4 + 2]
                + (B2_3_1 * ihat_2_4_sqrt_h) * g_1[r * 4 + 3]
        })
        .collect();
    let mut g_15 = vec![0.0; d * 4];
    sys.diffusion(t, &xh2_3, &mut g_15);
    let xh3_3: Vec<f64> = (0..d)
        .map(|r| {
            x[r]
                + (B2_3_1 * ihat_3_1_sqrt_h) * g_1[r * 4]
                + (B2_3_1 * ihat_3_2_sqrt_h) * g_1[r * 4 + 1]
                + (B2_3_1 * ihat_3_4_sqrt_h) * g_1[r * 4 + 3]
        })
        .collect();
    let mut g_16 = vec![0.0; d * 4];
    sys.diffusion(t, &xh3_3, &mut g_16);
    let xh4_3: Vec<f64> = (0..d)
        .map(|r| {
            x[r]
                + (B2_3_1 * ihat_4_1_sqrt_h) * g_1[r * 4]
                + (B2_3_1 * ihat_4_2_sqrt_h) * g_1[r * 4 + 1]
                + (B2_3_1 * ihat_4_3_sqrt_h) * g_1[r * 4 + 2]
        })
        .collect();
    let mut g_17 = vec![0.0; d * 4];
    sys.diffusion(t, &xh4_3, &mut g_17);
    for (r, o) in out.iter_mut().enumerate() {
        *o = x[r]
            + (ALPHA_1 * h) * f_1[r]
            + (ALPHA_2 * h) * f_2[r]
            + (ALPHA_3 * h) * f_3[r]
            + (BETA1_1 * ihat_1) * g_1[r * 4]
            + (BETA1_2 * ihat_1) * g_2[r * 4]
            + (BETA2_2 * ihat_1_1_sqrt_h) * g_2[r * 4]
            + (BETA1_3 * ihat_1) * g_10[r * 4]
            + (BETA2_3 * ihat_1_1_sqrt_h) * g_10[r * 4]
            + (BETA3_1 * ihat_1) * g_1[r * 4]
            + (BETA3_2 * ihat_1) * g_6[r * 4]
            + (BETA4_2 * sqrt_h) * g_6[r * 4]
            + (BETA3_3 * ihat_1) * g_14[r * 4]
            + (BETA4_3 * sqrt_h) * g_14[r * 4]
            + (BETA1_1 * ihat_2) * g_1[r * 4 + 1]
            + (BETA1_2 * ihat_2) * g_3[r * 4 + 1]
            + (BETA2_2 * ihat_2_2_sqrt_h) * g_3[r * 4 + 1]
            + (BETA1_3 * ihat_2) * g_11[r * 4 + 1]
            + (BETA2_3 * ihat_2_2_sqrt_h) * g_11[r * 4 + 1]
            + (BETA3_1 * ihat_2) * g_1[r * 4 + 1]
            + (BETA3_2 * ihat_2) * g_7[r * 4 + 1]
            + (BETA4_2 * sqrt_h) * g_7[r * 4 + 1]
            + (BETA3_3 * ihat_2) * g_15[r * 4 + 1]
            + (BETA4_3 * sqrt_h) * g_15[r * 4 + 1]
            + (BETA1_1 * ihat_3) * g_1[r * 4 + 2]
            + (BETA1_2 * ihat_3) * g_4[r * 4 + 2]
            + (BETA2_2 * ihat_3_3_sqrt_h) * g_4[r * 4 + 2]
            + (BETA1_3 * ihat_3) * g_12[r * 4 + 2]
            + (BETA2_3 * ihat_3_3_sqrt_h) * g_12[r * 4 + 2]
            + (BETA3_1 * ihat_3) * g_1[r * 4 + 2]
            + (BETA3_2 * ihat_3) * g_8[r * 4 + 2]
            + (BETA4_2 * sqrt_h) * g_8[r * 4 + 2]
            + (BETA3_3 * ihat_3) * g_16[r * 4 + 2]
            + (BETA4_3 * sqrt_h) * g_16[r * 4 + 2]
            + (BETA1_1 * ihat_4) * g_1[r * 4 + 3]
            + (BETA1_2 * ihat_4) * g_5[r * 4 + 3]
            + (BETA2_2 * ihat_4_4_sqrt_h) * g_5[r * 4 + 3]
            + (BETA1_3 * ihat_4) * g_13[r * 4 + 3]
            + (BETA2_3 * ihat_4_4_sqrt_h) * g_13[r * 4 + 3]
            + (BETA3_1 * ihat_4) * g_1[r * 4 + 3]
            + (BETA3_2 * ihat_4) * g_9[r * 4 + 3]
            + (BETA4_2 * sqrt_h) * g_9[r * 4 + 3]
            + (BETA3_3 * ihat_4) * g_17[r * 4 + 3]
            + (BETA4_3 * sqrt_h) * g_17[r * 4 + 3];
    }
}
