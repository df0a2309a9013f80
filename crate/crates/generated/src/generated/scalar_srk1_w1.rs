// Generated from coefficient table SRK1W1 (scalar_strong, m = 1). Do not edit.
// Evaluations per step: 2 drift, 4 diffusion.

use srk_core::ito_integrals::ItoIntegralSet;
use srk_core::schemes::SdeSystem;

const A0_2_1: f64 = 0.75; // 3/4
const B0_2_1: f64 = 1.5; // 3/2
const C0_2: f64 = 0.75; // 3/4
const A1_2_1: f64 = 0.25; // 1/4
const B1_2_1: f64 = 0.5; // 1/2
const C1_2: f64 = 0.25; // 1/4
const A1_3_1: f64 = 1.0; // 1
const B1_3_1: f64 = -1.0; // -1
const C1_3: f64 = 1.0; // 1
const A1_4_3: f64 = 0.25; // 1/4
const B1_4_1: f64 = -5.0; // -5
const B1_4_2: f64 = 3.0; // 3
const B1_4_3: f64 = 0.5; // 1/2
const C1_4: f64 = 0.25; // 1/4
const ALPHA_1: f64 = 0.3333333333333333; // 1/3
const ALPHA_2: f64 = 0.6666666666666666; // 2/3
const BETA1_1: f64 = -1.0; // -1
const BETA2_1: f64 = -1.0; // -1
const BETA3_1: f64 = 2.0; // 2
const BETA4_1: f64 = -2.0; // -2
const BETA1_2: f64 = 1.3333333333333333; // 4/3
const BETA2_2: f64 = 1.3333333333333333; // 4/3
const BETA3_2: f64 = -1.3333333333333333; // -4/3
const BETA4_2: f64 = 1.6666666666666667; // 5/3
const BETA1_3: f64 = 0.6666666666666666; // 2/3
const BETA2_3: f64 = -0.3333333333333333; // -1/3
const BETA3_3: f64 = -0.6666666666666666; // -2/3
const BETA4_3: f64 = -0.6666666666666666; // -2/3
const BETA4_4: f64 = 1.0; // 1

/// One `SRK1W1` step for 1-dimensional noise; writes `x_{n+1}` into `out`.
pub fn scalar_srk1_w1(
    sys: &dyn SdeSystem,
    t: f64,
    x: &[f64],
    h: f64,
    ints: &ItoIntegralSet,
    out: &mut [f64],
) {
    let d = x.len();
    let sqrt_h = h.sqrt();
    let i_1_0_h = ints.time_right[0] / h;
    let i_1 = ints.single[0];
    let i_1_1_sqrt_h = ints.double[[0, 0]] / sqrt_h;
    let i_1_1_1_h = ints.triple_diag[0] / h;
    let mut f_1 = vec![0.0; d];
    sys.drift(t, x, &mut f_1);
    let mut g_1 = vec![0.0; d];
    sys.diffusion(t, x, &mut g_1);
    let x0_2: Vec<f64> = (0..d)
        .map(|r| {
            x[r]
                + (A0_2_1 * h) * f_1[r]
                + (B0_2_1 * i_1_0_h) * g_1[r]
        })
        .collect();
    let mut f_2 = vec![0.0; d];
    sys.drift(t + C0_2 * h, &x0_2, &mut f_2);
    let x1_2: Vec<f64> = (0..d)
        .map(|r| {
            x[r]
                + (A1_2_1 * h) * f_1[r]
                + (B1_2_1 * sqrt_h) * g_1[r]
        })
        .collect();
    let mut g_2 = vec![0.0; d];
    sys.diffusion(t + C1_2 * h, &x1_2, &mut g_2);
    let x1_3: Vec<f64> = (0..d)
        .map(|r| {
            x[r]
                + (A1_3_1 * h) * f_1[r]
                + (B1_3_1 * sqrt_h) * g_1[r]
        })
        .collect();
    let mut g_3 = vec![0.0; d];
    sys.diffusion(t + C1_3 * h, &x1_3, &mut g_3);
    let x1_4: Vec<f64> = (0..d)
        .map(|r| {
            x[r]
                + (A1_4_3 * h) * f_1[r]
                + (B1_4_1 * sqrt_h) * g_1[r]
                + (B1_4_2 * sqrt_h) * g_2[r]
                + (B1_4_3 * sqrt_h) * g_3[r]
        })
        .collect();
    let mut g_4 = vec![0.0; d];
    sys.diffusion(t + C1_4 * h, &x1_4, &mut g_4);
    for (r, o) in out.iter_mut().enumerate() {
        *o = x[r]
            + (ALPHA_1 * h) * f_1[r]
            + (ALPHA_2 * h) * f_2[r]
            + (BETA1_1 * i_1) * g_1[r]
            + (BETA2_1 * i_1_1_sqrt_h) * g_1[r]
            + (BETA3_1 * i_1_0_h) * g_1[r]
            + (BETA4_1 * i_1_1_1_h) * g_1[r]
            + (BETA1_2 * i_1) * g_2[r]
            + (BETA2_2 * i_1_1_sqrt_h) * g_2[r]
            + (BETA3_2 * i_1_0_h) * g_2[r]
            + (BETA4_2 * i_1_1_1_h) * g_2[r]
            + (BETA1_3 * i_1) * g_3[r]
            + (BETA2_3 * i_1_1_sqrt_h) * g_3[r]
            + (BETA3_3 * i_1_0_h) * g_3[r]
            + (BETA4_3 * i_1_1_1_h) * g_3[r]
            + (BETA4_4 * i_1_1_1_h) * g_4[r];
    }
}
