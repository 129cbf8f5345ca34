// Copyright 2026 Dephasim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Adaptive Gauss-Kronrod quadrature for vector-valued integrands.
//!
//! Several integrals over the same variable often share expensive
//! sub-expressions, so the integrand returns `[T; N]` and every component
//! is integrated on the same panels. A panel is bisected while any
//! component's error budget is exceeded.

use crate::scalar::Real;

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// Result of a single 21-point Gauss-Kronrod panel.
#[derive(Debug, Clone, Copy)]
pub struct Panel<T, const N: usize> {
    pub a: T,
    pub b: T,
    pub value: [T; N],
    pub error: [T; N],
    /// Kronrod estimate of the integral of `|f|`.
    pub abs: [T; N],
}

/// Integrate `f` over `[a, b]` with the 21-point Kronrod rule, estimating
/// the error from the embedded 10-point Gauss rule (QUADPACK scaling).
pub fn gk21<T, F, const N: usize>(f: &F, a: T, b: T) -> Panel<T, N>
where
    T: Real,
    F: Fn(T) -> [T; N],
{
    let half = T::lit(0.5);
    let center = half * (a + b);
    let half_len = half * (b - a);
    let abs_half = half_len.abs();

    let fc = f(center);
    let mut res_k = [T::zero(); N];
    let mut res_g = [T::zero(); N];
    let mut res_abs = [T::zero(); N];
    for i in 0..N {
        res_k[i] = fc[i] * T::lit(WGK[10]);
        res_abs[i] = fc[i].abs() * T::lit(WGK[10]);
    }
    let mut samples = [([T::zero(); N], [T::zero(); N]); 10];
    for j in 0..10 {
        let dx = half_len * T::lit(XGK[j]);
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        let wk = T::lit(WGK[j]);
        for i in 0..N {
            res_k[i] = res_k[i] + wk * (f1[i] + f2[i]);
            res_abs[i] = res_abs[i] + wk * (f1[i].abs() + f2[i].abs());
            if j % 2 == 1 {
                res_g[i] = res_g[i] + T::lit(WG[j / 2]) * (f1[i] + f2[i]);
            }
        }
        samples[j] = (f1, f2);
    }

    let mut value = [T::zero(); N];
    let mut error = [T::zero(); N];
    let mut abs = [T::zero(); N];
    for i in 0..N {
        let mean = res_k[i] * half;
        let mut asc = T::lit(WGK[10]) * (fc[i] - mean).abs();
        for (j, (f1, f2)) in samples.iter().enumerate() {
            asc = asc + T::lit(WGK[j]) * ((f1[i] - mean).abs() + (f2[i] - mean).abs());
        }
        value[i] = res_k[i] * half_len;
        abs[i] = res_abs[i] * abs_half;
        error[i] = rescale_error((res_k[i] - res_g[i]) * half_len, abs[i], asc * abs_half);
    }
    Panel { a, b, value, error, abs }
}

fn rescale_error<T: Real>(err: T, res_abs: T, res_asc: T) -> T {
    let mut err = err.abs();
    if res_asc != T::zero() && err != T::zero() {
        let scale = (T::lit(200.0) * err / res_asc).powf(T::lit(1.5));
        err = if scale < T::one() { res_asc * scale } else { res_asc };
    }
    if res_abs > T::min_positive_value() / (T::lit(50.0) * T::epsilon()) {
        err = err.max(T::lit(50.0) * T::epsilon() * res_abs);
    }
    err
}

/// Converged (or budget-exhausted) adaptive integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate<T, const N: usize> {
    pub value: [T; N],
    pub error: [T; N],
    pub abs: [T; N],
    pub panels: usize,
    pub converged: bool,
}

/// Integrate over the union of `breaks` (a sorted list of panel edges),
/// refining until every component satisfies
/// `error <= max(rel_tol * |value|, 100 eps * integral of |f|)` or
/// `max_panels` is reached.
///
/// Each round bisects every panel whose error exceeds an equal share of
/// some component's budget. Panels stay in order and are summed in order,
/// so the result is a deterministic function of the inputs.
pub fn integrate<T, F, const N: usize>(f: &F, breaks: &[T], rel_tol: T, max_panels: usize) -> Estimate<T, N>
where
    T: Real,
    F: Fn(T) -> [T; N],
{
    assert!(breaks.len() >= 2, "need at least one panel");
    let mut panels: Vec<Panel<T, N>> = breaks.windows(2).map(|w| gk21(f, w[0], w[1])).collect();
    let floor = T::lit(100.0) * T::epsilon();

    loop {
        let (value, error, abs) = totals(&panels);
        let budget: [T; N] = std::array::from_fn(|i| (rel_tol * value[i].abs()).max(floor * abs[i]));
        let done = (0..N).all(|i| error[i] <= budget[i]);
        if done || panels.len() >= max_panels {
            return Estimate { value, error, abs, panels: panels.len(), converged: done };
        }
        let share = T::one() / T::lit(panels.len() as f64);
        let over = |p: &Panel<T, N>| (0..N).any(|i| error[i] > budget[i] && p.error[i] > share * budget[i]);

        let mut next = Vec::with_capacity(panels.len() + panels.len() / 4 + 1);
        let mut split_any = false;
        for p in &panels {
            let mid = T::lit(0.5) * (p.a + p.b);
            if next.len() + 2 <= max_panels + 1 && over(p) && mid > p.a && mid < p.b {
                next.push(gk21(f, p.a, mid));
                next.push(gk21(f, mid, p.b));
                split_any = true;
            } else {
                next.push(*p);
            }
        }
        if !split_any {
            // Nothing left that can be split at this precision.
            return Estimate { value, error, abs, panels: panels.len(), converged: false };
        }
        panels = next;
    }
}

fn totals<T: Real, const N: usize>(panels: &[Panel<T, N>]) -> ([T; N], [T; N], [T; N]) {
    let mut value = [T::zero(); N];
    let mut error = [T::zero(); N];
    let mut abs = [T::zero(); N];
    for p in panels {
        for i in 0..N {
            value[i] = value[i] + p.value[i];
            error[i] = error[i] + p.error[i];
            abs[i] = abs[i] + p.abs[i];
        }
    }
    (value, error, abs)
}

/// Composite Simpson rule on `n` (rounded up to even) uniform subintervals.
pub fn simpson<T: Real, F: Fn(T) -> T>(f: F, a: T, b: T, n: usize) -> T {
    let n = if n % 2 == 1 { n + 1 } else { n.max(2) };
    let h = (b - a) / T::lit(n as f64);
    let mut sum = f(a) + f(b);
    for k in 1..n {
        let w = if k % 2 == 1 { T::lit(4.0) } else { T::lit(2.0) };
        sum = sum + w * f(a + h * T::lit(k as f64));
    }
    sum * h / T::lit(3.0)
}
