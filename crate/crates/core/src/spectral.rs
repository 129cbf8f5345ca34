// Copyright 2026 Dephasim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Decay rates and decoherence functions of two impurity qubits in a
//! homogeneous three-dimensional Bogoliubov gas.
//!
//! All quantities are in the reduced units of [`crate::params`]. With the
//! spectral weight
//!
//! ```text
//! w(kappa) = c kappa^2 exp(-kappa^2 s^2 / 2) / (kappa^2 / 2 + 2 g)
//! ```
//!
//! the rates and their time integrals are
//!
//! ```text
//! gamma_1(tau) =   Int w B_self  sin(e tau / 2) cos(e tau / 2)
//! gamma_2(tau) = 1/2 Int w B_cross sin(e tau / 2) cos(e tau / 2)
//! Gamma_0(tau) = 2 Int_0^tau gamma_1 = 2 Int w B_self  sin^2(e tau / 2) / e
//! delta(tau)   = 4 Int_0^tau gamma_2 = 2 Int w B_cross sin^2(e tau / 2) / e
//! ```
//!
//! where the time integral has been done analytically under the
//! `kappa` integral.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::params::ReducedParams;
use crate::quadrature;
use crate::scalar::Real;

/// Default relative tolerance for the `kappa` quadrature.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Default number of time steps of a [`DecoherenceTable`].
pub const DEFAULT_STEPS: usize = 2048;
/// Default decay fraction used by [`auto_horizon`].
pub const DEFAULT_HORIZON_ETA: f64 = 1e-3;
/// Default cap on the horizon search, in reduced time.
pub const DEFAULT_HORIZON_CAP: f64 = 4000.0;
/// Upper integration limit in units of `1 / s`; `exp(-32)` is below `1.3e-14`.
const CUTOFF_SIGMAS: f64 = 8.0;
/// Oscillation periods per initial quadrature panel.
const PERIODS_PER_PANEL: f64 = 1.0;

/// `sin(x) / x` with a series branch near zero.
pub fn sinc<T: Real>(x: T) -> T {
    if x.abs() < T::lit(1e-4) {
        let x2 = x * x;
        T::one() - x2 / T::lit(6.0) + x2 * x2 / T::lit(120.0)
    } else {
        x.sin() / x
    }
}

/// `1 - sin(x) / x` without cancellation for small `x`.
pub fn one_minus_sinc<T: Real>(x: T) -> T {
    if x.abs() < T::lit(0.1) {
        let x2 = x * x;
        // x^2/6 - x^4/120 + x^6/5040 - x^8/362880 + x^10/39916800
        x2 * (T::lit(1.0 / 6.0)
            - x2 * (T::lit(1.0 / 120.0)
                - x2 * (T::lit(1.0 / 5040.0) - x2 * (T::lit(1.0 / 362_880.0) - x2 * T::lit(1.0 / 39_916_800.0)))))
    } else {
        T::one() - x.sin() / x
    }
}

/// Single-qubit form factor `1 - sinc(2 kappa)`.
pub fn self_bracket<T: Real>(kappa: T) -> T {
    one_minus_sinc(T::lit(2.0) * kappa)
}

/// Cross-talk form factor
/// `sinc(2 kappa (d + 1)) + sinc(2 kappa (d - 1)) - 2 sinc(2 kappa d)`.
///
/// For small `kappa (d + 1)` the three terms cancel to `O(kappa^2)`, so the
/// power series of the second difference is summed instead, with the
/// coefficients `(d+1)^2n + (d-1)^2n - 2 d^2n = 2 sum_j C(2n, 2j) d^(2n-2j)`
/// expanded so that they carry no cancellation either.
pub fn cross_bracket<T: Real>(kappa: T, d: T) -> T {
    let two = T::lit(2.0);
    if two * kappa * (d + T::one()) < T::lit(0.5) {
        let x2 = T::lit(4.0) * kappa * kappa;
        let d2 = d * d;
        let mut sum = T::zero();
        let mut xn = T::one();
        let mut fact = T::one();
        for n in 1..=12usize {
            xn = xn * x2;
            let k = T::lit((2 * n) as f64);
            fact = fact * k * (k + T::one());
            // Horner in d^2 over j = n..1 with binomials C(2n, 2j).
            let mut coeff = T::zero();
            for j in 1..=n {
                coeff = coeff * d2 + T::lit(binomial(2 * n, 2 * j));
            }
            let term = two * coeff * xn / fact;
            sum = if n % 2 == 1 { sum - term } else { sum + term };
        }
        sum
    } else {
        let (s1, c1) = (two * kappa).sin_cos();
        let (sd, cd) = (two * kappa * d).sin_cos();
        let plus = (sd * c1 + cd * s1) / (two * kappa * (d + T::one()));
        let minus = (sd * c1 - cd * s1) / (two * kappa * (d - T::one()));
        plus + minus - two * sd / (two * kappa * d)
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Rates and decoherence functions at one reduced time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateSample<T> {
    pub tau: T,
    pub gamma1: T,
    pub gamma2: T,
    /// Single-qubit decoherence function `Gamma_0`.
    pub gamma0: T,
    /// Cross-talk correction `delta`.
    pub delta: T,
}

/// Spectral data for one parameter point.
#[derive(Debug, Clone, Copy)]
pub struct SpectralModel<T> {
    pub params: ReducedParams<T>,
    pub kappa_max: T,
}

impl<T: Real> SpectralModel<T> {
    pub fn new(params: ReducedParams<T>) -> Result<Self> {
        params.validate()?;
        Ok(Self { params, kappa_max: T::lit(CUTOFF_SIGMAS) / params.s })
    }

    /// Bogoliubov energy `e(kappa) = kappa sqrt(g + kappa^2 / 4)`.
    #[inline]
    pub fn energy(&self, kappa: T) -> T {
        kappa * (self.params.g_tilde + kappa * kappa * T::lit(0.25)).sqrt()
    }

    /// `de / dkappa`.
    #[inline]
    pub fn group_velocity(&self, kappa: T) -> T {
        let g = self.params.g_tilde;
        let k2 = kappa * kappa;
        (g + k2 * T::lit(0.5)) / (g + k2 * T::lit(0.25)).sqrt()
    }

    /// `c kappa^2 exp(-kappa^2 s^2 / 2) / (kappa^2 / 2 + 2 g)`.
    #[inline]
    pub fn weight(&self, kappa: T) -> T {
        let p = &self.params;
        let k2 = kappa * kappa;
        p.c_rate * k2 * (-k2 * p.s * p.s * T::lit(0.5)).exp() / (k2 * T::lit(0.5) + T::lit(2.0) * p.g_tilde)
    }

    /// Panel edges on `[0, kappa_max]` such that the phase of
    /// `sin(e tau)` and of the form factor advances by about one period
    /// per panel.
    pub fn breaks(&self, tau: T, with_cross: bool) -> Vec<T> {
        let two_pi = T::lit(2.0) * T::PI() * T::lit(PERIODS_PER_PANEL);
        let form_freq = if with_cross { T::lit(2.0) * (self.params.d + T::one()) } else { T::lit(2.0) };
        let rate = |k: T| tau.abs() * self.group_velocity(k) + form_freq;
        let max_width = T::lit(0.5) / self.params.s;
        let crossover = T::lit(2.0) * self.params.g_tilde.sqrt();

        let mut edges = vec![T::zero()];
        let mut k = T::zero();
        let mut crossover_pending = crossover > T::zero() && crossover < self.kappa_max;
        while k < self.kappa_max {
            let w0 = two_pi / rate(k);
            let w = (two_pi / rate(k + w0)).min(max_width);
            let mut next = k + w;
            if crossover_pending && next >= crossover {
                next = crossover;
                crossover_pending = false;
            }
            if next >= self.kappa_max || self.kappa_max - next < T::lit(1e-3) * w {
                next = self.kappa_max;
            }
            edges.push(next);
            k = next;
        }
        edges
    }

    fn integrate<F, const N: usize>(&self, f: &F, tau: T, with_cross: bool, tol: T) -> Result<[T; N]>
    where
        F: Fn(T) -> [T; N],
    {
        let breaks = self.breaks(tau, with_cross);
        let budget = 4 * breaks.len() + 4000;
        let est = quadrature::integrate(f, &breaks, tol, budget);
        if est.converged {
            Ok(est.value)
        } else {
            let worst = (0..N).fold(0.0f64, |m, i| m.max(est.error[i].as_f64()));
            Err(Error::QuadratureFailure { tau: tau.as_f64(), tol: tol.as_f64(), err: worst })
        }
    }

    /// `gamma_1(tau)`; independent of the qubit separation.
    pub fn gamma1(&self, tau: T, tol: T) -> Result<T> {
        check_time(tau, tol)?;
        let f = |k: T| {
            let (sh, ch) = (self.energy(k) * tau * T::lit(0.5)).sin_cos();
            [self.weight(k) * self_bracket(k) * sh * ch]
        };
        Ok(self.integrate(&f, tau, false, tol)?[0])
    }

    /// `gamma_2(tau)`, the cross-talk rate.
    pub fn gamma2(&self, tau: T, tol: T) -> Result<T> {
        check_time(tau, tol)?;
        let d = self.params.d;
        let f = |k: T| {
            let (sh, ch) = (self.energy(k) * tau * T::lit(0.5)).sin_cos();
            [T::lit(0.5) * self.weight(k) * cross_bracket(k, d) * sh * ch]
        };
        Ok(self.integrate(&f, tau, true, tol)?[0])
    }

    /// `(gamma_1, gamma_2)` sharing one pass over `kappa`.
    pub fn rates(&self, tau: T, tol: T) -> Result<(T, T)> {
        check_time(tau, tol)?;
        let d = self.params.d;
        let f = |k: T| {
            let (sh, ch) = (self.energy(k) * tau * T::lit(0.5)).sin_cos();
            let a = self.weight(k) * sh * ch;
            [a * self_bracket(k), T::lit(0.5) * a * cross_bracket(k, d)]
        };
        let [g1, g2] = self.integrate(&f, tau, true, tol)?;
        Ok((g1, g2))
    }

    /// Rates together with `Gamma_0` and `delta` at one time.
    pub fn sample(&self, tau: T, tol: T) -> Result<RateSample<T>> {
        check_time(tau, tol)?;
        if tau == T::zero() {
            return Ok(RateSample { tau, gamma1: T::zero(), gamma2: T::zero(), gamma0: T::zero(), delta: T::zero() });
        }
        let d = self.params.d;
        let half = T::lit(0.5);
        let two = T::lit(2.0);
        let f = |k: T| {
            let e = self.energy(k);
            let (sh, ch) = (e * tau * half).sin_cos();
            let w = self.weight(k);
            let bs = self_bracket(k);
            let bc = cross_bracket(k, d);
            let rate = w * sh * ch;
            let accum = two * w * sh * sh / e;
            [rate * bs, half * rate * bc, accum * bs, accum * bc]
        };
        let [gamma1, gamma2, gamma0, delta] = self.integrate(&f, tau, true, tol)?;
        Ok(RateSample { tau, gamma1, gamma2, gamma0, delta })
    }
}

fn check_time<T: Real>(tau: T, tol: T) -> Result<()> {
    if !(tau >= T::zero() && tau.is_finite()) {
        return Err(Error::InvalidParams(format!("time must be finite and >= 0, got {tau}")));
    }
    if !(tol > T::zero()) {
        return Err(Error::InvalidParams(format!("tolerance must be > 0, got {tol}")));
    }
    Ok(())
}

/// `gamma_1(tau)` for reduced parameters `rp`.
pub fn gamma1<T: Real>(tau: T, rp: &ReducedParams<T>, tol: T) -> Result<T> {
    SpectralModel::new(*rp)?.gamma1(tau, tol)
}

/// `gamma_2(tau)` for reduced parameters `rp`.
pub fn gamma2<T: Real>(tau: T, rp: &ReducedParams<T>, tol: T) -> Result<T> {
    SpectralModel::new(*rp)?.gamma2(tau, tol)
}

/// Where the values of a table come from when they are needed between
/// grid points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RateSource<T> {
    /// Re-evaluate the spectral integrals.
    Spectral { params: ReducedParams<T>, tol: T },
    /// Piecewise cubic Hermite interpolation of the tabulated data.
    Interpolated,
}

/// Rates and decoherence functions sampled on a uniform time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct DecoherenceTable<T> {
    pub tau: Vec<T>,
    pub gamma1: Vec<T>,
    pub gamma2: Vec<T>,
    pub gamma0: Vec<T>,
    pub delta: Vec<T>,
    pub source: RateSource<T>,
    /// Largest gap between the analytic `Gamma_0`, `delta` and a cumulative
    /// trapezoid of the sampled rates.
    pub trapezoid_gap: [T; 2],
}

impl<T: Real> DecoherenceTable<T> {
    /// Assemble a table from columns, checking the grid and finiteness.
    pub fn from_columns(
        tau: Vec<T>,
        gamma1: Vec<T>,
        gamma2: Vec<T>,
        gamma0: Vec<T>,
        delta: Vec<T>,
        source: RateSource<T>,
    ) -> Result<Self> {
        let n = tau.len();
        if n < 2 {
            return Err(Error::InvalidTable("need at least two grid points".into()));
        }
        if [gamma1.len(), gamma2.len(), gamma0.len(), delta.len()].iter().any(|&m| m != n) {
            return Err(Error::InvalidTable("column lengths differ".into()));
        }
        if tau[0] != T::zero() || tau.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidTable("grid must start at 0 and increase strictly".into()));
        }
        let finite = |v: &[T]| v.iter().all(|x| x.is_finite());
        if !(finite(&tau) && finite(&gamma1) && finite(&gamma2) && finite(&gamma0) && finite(&delta)) {
            return Err(Error::InvalidTable("non-finite entry".into()));
        }
        if gamma0[0] != T::zero() || delta[0] != T::zero() {
            return Err(Error::InvalidTable("decoherence functions must vanish at tau = 0".into()));
        }
        let mut table = Self { tau, gamma1, gamma2, gamma0, delta, source, trapezoid_gap: [T::zero(); 2] };
        table.trapezoid_gap = table.trapezoid_discrepancy();
        Ok(table)
    }

    pub fn len(&self) -> usize {
        self.tau.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tau.is_empty()
    }

    pub fn tau_max(&self) -> T {
        *self.tau.last().expect("non-empty grid")
    }

    /// Largest grid spacing.
    pub fn step(&self) -> T {
        self.tau.windows(2).fold(T::zero(), |m, w| m.max(w[1] - w[0]))
    }

    pub fn sample(&self, i: usize) -> RateSample<T> {
        RateSample {
            tau: self.tau[i],
            gamma1: self.gamma1[i],
            gamma2: self.gamma2[i],
            gamma0: self.gamma0[i],
            delta: self.delta[i],
        }
    }

    /// Cumulative trapezoid integrals `2 Int gamma_1` and `4 Int gamma_2`.
    pub fn cumulative_trapezoid(&self) -> (Vec<T>, Vec<T>) {
        let half = T::lit(0.5);
        let mut g0 = vec![T::zero(); self.len()];
        let mut dl = vec![T::zero(); self.len()];
        for i in 1..self.len() {
            let h = self.tau[i] - self.tau[i - 1];
            g0[i] = g0[i - 1] + T::lit(2.0) * half * h * (self.gamma1[i] + self.gamma1[i - 1]);
            dl[i] = dl[i - 1] + T::lit(4.0) * half * h * (self.gamma2[i] + self.gamma2[i - 1]);
        }
        (g0, dl)
    }

    fn trapezoid_discrepancy(&self) -> [T; 2] {
        let (g0, dl) = self.cumulative_trapezoid();
        let gap = |a: &[T], b: &[T]| a.iter().zip(b).fold(T::zero(), |m, (x, y)| m.max((*x - *y).abs()));
        [gap(&self.gamma0, &g0), gap(&self.delta, &dl)]
    }

    /// Index `i` with `tau[i] <= t <= tau[i + 1]`, clamped to the grid.
    pub fn locate(&self, t: T) -> usize {
        let n = self.len();
        match self.tau.binary_search_by(|x| x.partial_cmp(&t).unwrap_or(std::cmp::Ordering::Less)) {
            Ok(i) => i.min(n - 2),
            Err(i) => i.saturating_sub(1).min(n - 2),
        }
    }

    /// Rates by linear interpolation between grid points.
    pub fn rates_linear(&self, t: T) -> (T, T) {
        let i = self.locate(t);
        let (t0, t1) = (self.tau[i], self.tau[i + 1]);
        let u = ((t - t0) / (t1 - t0)).max(T::zero()).min(T::one());
        let lerp = |v: &[T]| v[i] + (v[i + 1] - v[i]) * u;
        (lerp(&self.gamma1), lerp(&self.gamma2))
    }

    /// `Gamma_0`, `delta` and their time derivatives from cubic Hermite
    /// interpolation; the tabulated rates provide the slopes
    /// (`Gamma_0' = 2 gamma_1`, `delta' = 4 gamma_2`).
    pub fn hermite(&self, t: T) -> RateSample<T> {
        let i = self.locate(t);
        let (t0, t1) = (self.tau[i], self.tau[i + 1]);
        let h = t1 - t0;
        let u = ((t - t0) / h).max(T::zero()).min(T::one());
        let two = T::lit(2.0);
        let three = T::lit(3.0);
        let six = T::lit(6.0);
        let (u2, u3) = (u * u, u * u * u);
        let h00 = two * u3 - three * u2 + T::one();
        let h10 = u3 - two * u2 + u;
        let h01 = -two * u3 + three * u2;
        let h11 = u3 - u2;
        let d00 = (six * u2 - six * u) / h;
        let d10 = three * u2 - T::lit(4.0) * u + T::one();
        let d01 = (-six * u2 + six * u) / h;
        let d11 = three * u2 - two * u;
        let interp = |y: &[T], slope: &dyn Fn(usize) -> T| {
            let (y0, y1, m0, m1) = (y[i], y[i + 1], slope(i), slope(i + 1));
            (h00 * y0 + h10 * h * m0 + h01 * y1 + h11 * h * m1, d00 * y0 + d10 * m0 + d01 * y1 + d11 * m1)
        };
        let (g0, dg0) = interp(&self.gamma0, &|k| two * self.gamma1[k]);
        let (dl, ddl) = interp(&self.delta, &|k| T::lit(4.0) * self.gamma2[k]);
        RateSample { tau: t, gamma1: dg0 * T::lit(0.5), gamma2: ddl * T::lit(0.25), gamma0: g0, delta: dl }
    }

    /// Best available values at an arbitrary time inside the grid.
    pub fn exact(&self, t: T) -> Result<RateSample<T>> {
        match self.source {
            RateSource::Spectral { params, tol } => SpectralModel::new(params)?.sample(t, tol),
            RateSource::Interpolated => Ok(self.hermite(t)),
        }
    }
}

/// Sample the rates on `n_steps + 1` uniform points of `[0, tau_max]`.
///
/// `Gamma_0` and `delta` come from the analytic time integration; grid
/// points are evaluated concurrently and collected in index order.
pub fn build_table<T: Real>(rp: &ReducedParams<T>, tau_max: T, n_steps: usize, tol: T) -> Result<DecoherenceTable<T>> {
    if !(tau_max > T::zero() && tau_max.is_finite()) {
        return Err(Error::InvalidParams(format!("tau_max must be > 0, got {tau_max}")));
    }
    if n_steps < 64 {
        return Err(Error::InvalidParams(format!("n_steps must be >= 64, got {n_steps}")));
    }
    let model = SpectralModel::new(*rp)?;
    let dt = tau_max / T::lit(n_steps as f64);
    let samples: Vec<RateSample<T>> = (0..=n_steps)
        .into_par_iter()
        .map(|i| {
            let tau = if i == n_steps { tau_max } else { dt * T::lit(i as f64) };
            model.sample(tau, tol)
        })
        .collect::<Result<_>>()?;
    DecoherenceTable::from_columns(
        samples.iter().map(|s| s.tau).collect(),
        samples.iter().map(|s| s.gamma1).collect(),
        samples.iter().map(|s| s.gamma2).collect(),
        samples.iter().map(|s| s.gamma0).collect(),
        samples.iter().map(|s| s.delta).collect(),
        RateSource::Spectral { params: *rp, tol },
    )
}

/// Settings for [`auto_horizon`].
#[derive(Debug, Clone, Copy)]
pub struct HorizonOptions<T> {
    /// Hard cap on the search (reduced time).
    pub cap: T,
    /// Length of the quiet window as a fraction of the candidate horizon.
    pub window: T,
    /// Quadrature tolerance of the probe evaluations.
    pub tol: T,
}

impl<T: Real> Default for HorizonOptions<T> {
    fn default() -> Self {
        Self { cap: T::lit(DEFAULT_HORIZON_CAP), window: T::lit(0.25), tol: T::lit(1e-8) }
    }
}

/// Probe grid of the horizon search: uniform steps of `h0` that grow to
/// 1% of the current time.
fn probe_time<T: Real>(prev: T, h0: T) -> T {
    prev + h0.max(prev * T::lit(0.01))
}

/// Smallest probe time `T` such that `max(|gamma_1|, |gamma_2|)` stays below
/// `eta` times its running peak on `[T, (1 + window) T]`.
pub fn auto_horizon<T: Real>(rp: &ReducedParams<T>, eta: T, opts: HorizonOptions<T>) -> Result<T> {
    let model = SpectralModel::new(*rp)?;
    let h0 = rp.s * rp.s / T::lit(16.0);
    auto_horizon_with(
        |tau| {
            let (g1, g2) = model.rates(tau, opts.tol)?;
            Ok(g1.abs().max(g2.abs()))
        },
        h0,
        eta,
        opts,
    )
}

/// [`auto_horizon`] for an arbitrary magnitude function.
pub fn auto_horizon_with<T, F>(magnitude: F, h0: T, eta: T, opts: HorizonOptions<T>) -> Result<T>
where
    T: Real,
    F: Fn(T) -> Result<T> + Sync,
{
    if !(eta > T::zero() && eta < T::one()) {
        return Err(Error::InvalidParams(format!("eta must lie in (0, 1), got {eta}")));
    }
    if !(h0 > T::zero()) || !(opts.window > T::zero()) {
        return Err(Error::InvalidParams("horizon step and window must be > 0".into()));
    }
    let not_found = || Error::HorizonNotFound { cap: opts.cap.as_f64(), eta: eta.as_f64() };

    let mut times = vec![T::zero()];
    let mut values = vec![T::zero()];
    let mut peaks = vec![T::zero()];
    let extend = |times: &mut Vec<T>, values: &mut Vec<T>, peaks: &mut Vec<T>, upto: T| -> Result<()> {
        const BLOCK: usize = 32;
        while *times.last().unwrap() < upto {
            let mut block = Vec::with_capacity(BLOCK);
            let mut t = *times.last().unwrap();
            for _ in 0..BLOCK {
                t = probe_time(t, h0);
                block.push(t);
            }
            let vals: Vec<T> = block.par_iter().map(|&t| magnitude(t)).collect::<Result<_>>()?;
            for (t, v) in block.into_iter().zip(vals) {
                let p = peaks.last().unwrap().max(v);
                times.push(t);
                values.push(v);
                peaks.push(p);
            }
        }
        Ok(())
    };

    let mut k = 1;
    loop {
        if times.len() <= k {
            extend(&mut times, &mut values, &mut peaks, h0)?;
        }
        let t = times[k];
        let end = t * (T::one() + opts.window);
        if end > opts.cap {
            return Err(not_found());
        }
        extend(&mut times, &mut values, &mut peaks, end)?;
        let last = times.partition_point(|&x| x <= end);
        let peak = peaks[last - 1];
        if peak == T::zero() {
            return Ok(t);
        }
        let threshold = eta * peak;
        if values[k..last].iter().all(|&v| v < threshold) {
            return Ok(t);
        }
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{default_params, reduce};

    fn rp(a_b: f64, d: f64) -> ReducedParams<f64> {
        reduce(&default_params().with_a_b_over_a_rb(a_b).with_d_over_l(d)).unwrap()
    }

    #[test]
    fn sinc_branches_agree() {
        for x in [1e-5, 9.9e-5, 1e-4, 1.01e-4, 0.05, 0.0999, 0.1, 0.1001] {
            let direct = f64::sin(x) / x;
            assert!((sinc(x) - direct).abs() < 1e-15);
            assert!((one_minus_sinc(x) - (1.0 - direct)).abs() < 1e-15 * 10.0);
        }
        assert_eq!(sinc(0.0f64), 1.0);
        assert_eq!(one_minus_sinc(0.0f64), 0.0);
    }

    #[test]
    fn cross_bracket_branches_agree() {
        for d in [4.0f64, 20.0, 200.0] {
            // Just below and above the series switch.
            let k_switch = 0.25 / (d + 1.0);
            for k in [k_switch * 0.999, k_switch * 1.001] {
                let direct = sinc(2.0 * k * (d + 1.0)) + sinc(2.0 * k * (d - 1.0)) - 2.0 * sinc(2.0 * k * d);
                let b = cross_bracket(k, d);
                assert!((b - direct).abs() < 1e-12, "d={d} k={k}: {b} vs {direct}");
            }
        }
    }

    #[test]
    fn cross_bracket_small_kappa_series() {
        // Second derivative at 0 by central differences of the direct formula.
        for d in [4.0f64, 50.0] {
            let h = 1e-3 / d;
            let direct = |k: f64| sinc(2.0 * k * (d + 1.0)) + sinc(2.0 * k * (d - 1.0)) - 2.0 * sinc(2.0 * k * d);
            let second = (direct(h) - 2.0 * direct(0.0) + direct(-h)) / (h * h);
            // -(4/3) kappa^2 has second derivative -8/3.
            assert!((second + 8.0 / 3.0).abs() < 1e-3, "d={d}: {second}");
            let k = 1e-4;
            assert!((cross_bracket(k, d) / (k * k) + 4.0 / 3.0).abs() < 1e-4 * d * d);
        }
    }

    #[test]
    fn rates_vanish_at_zero() {
        let rp = rp(0.02, 4.0);
        assert_eq!(gamma1(0.0, &rp, 1e-10).unwrap(), 0.0);
        assert_eq!(gamma2(0.0, &rp, 1e-10).unwrap(), 0.0);
    }

    #[test]
    fn gamma1_independent_of_separation() {
        let a = rp(0.02, 4.0);
        let b = rp(0.02, 200.0);
        for tau in [0.3, 2.0, 7.5] {
            assert_eq!(gamma1(tau, &a, 1e-10).unwrap(), gamma1(tau, &b, 1e-10).unwrap());
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let rp = rp(0.02, 4.0);
        assert!(gamma1(-1.0, &rp, 1e-10).is_err());
        assert!(gamma1(1.0, &rp, 0.0).is_err());
    }

    #[test]
    fn sample_matches_separate_rates() {
        let model = SpectralModel::new(rp(0.5, 4.0)).unwrap();
        let s = model.sample(3.0, 1e-11).unwrap();
        assert!((s.gamma1 - model.gamma1(3.0, 1e-11).unwrap()).abs() < 1e-13);
        assert!((s.gamma2 - model.gamma2(3.0, 1e-11).unwrap()).abs() < 1e-13);
    }

    #[test]
    fn horizon_for_zero_magnitude_is_minimal() {
        let h = auto_horizon_with(|_| Ok(0.0f64), 0.01, 1e-4, HorizonOptions::default()).unwrap();
        assert_eq!(h, 0.01);
    }

    #[test]
    fn horizon_of_decaying_bump() {
        let f = |t: f64| Ok(t * (-t).exp());
        let h = auto_horizon_with(f, 0.01, 1e-3, HorizonOptions::default()).unwrap();
        // t e^{-t} < 1e-3 / e first holds near t = 10.9
        assert!(h > 10.0 && h < 11.5, "{h}");
        let err = auto_horizon_with(f, 0.01, 1e-3, HorizonOptions { cap: 5.0, ..Default::default() });
        assert!(matches!(err, Err(Error::HorizonNotFound { .. })));
    }

    #[test]
    fn interpolated_table_reproduces_cubic() {
        // Gamma_0 = t^3 exactly representable by cubic Hermite.
        let tau: Vec<f64> = (0..=64).map(|i| i as f64 * 0.1).collect();
        let g0: Vec<f64> = tau.iter().map(|t| t.powi(3)).collect();
        let g1: Vec<f64> = tau.iter().map(|t| 1.5 * t * t).collect();
        let zeros = vec![0.0; tau.len()];
        let table =
            DecoherenceTable::from_columns(tau, g1, zeros.clone(), g0, zeros, RateSource::Interpolated).unwrap();
        let s = table.hermite(2.345);
        assert!((s.gamma0 - 2.345f64.powi(3)).abs() < 1e-12);
        assert!((s.gamma1 - 1.5 * 2.345f64.powi(2)).abs() < 1e-12);
    }

    #[test]
    fn table_validation() {
        let z = vec![0.0; 3];
        assert!(DecoherenceTable::from_columns(vec![0.0, 1.0, 1.0], z.clone(), z.clone(), z.clone(), z.clone(), RateSource::Interpolated).is_err());
        assert!(DecoherenceTable::from_columns(vec![0.0, 1.0], z.clone(), z.clone(), z.clone(), z.clone(), RateSource::Interpolated).is_err());
        assert!(DecoherenceTable::from_columns(vec![0.0, 1.0, 2.0], z.clone(), z.clone(), vec![1.0, 0.0, 0.0], z.clone(), RateSource::Interpolated).is_err());
        assert!(build_table(&rp(0.02, 4.0), 1.0, 10, 1e-10).is_err());
    }
}
