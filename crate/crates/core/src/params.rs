// Copyright 2026 Dephasim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Physical configuration of the impurity-in-condensate setup and its
//! reduction to dimensionless form.
//!
//! Reduced units: lengths in `L = lambda / 4`, energies in
//! `E0 = hbar^2 / (m_E L^2)`, times in `t0 = hbar / E0`, `hbar = 1`.
//! With `kappa = k L` the decay rates become
//!
//! ```text
//! gamma_1 t0 = c_rate * Int dkappa kappa^2 exp(-kappa^2 s^2 / 2) sin(e tau / 2) cos(e tau / 2)
//!              / (kappa^2 / 2 + 2 g) * (1 - sinc(2 kappa))
//! e(kappa)   = sqrt(kappa^2 g + kappa^4 / 4)
//! c_rate     = 4 (a_SE / L)^2 (m_E / m_SE)^2 n0 L^3
//! g          = 4 pi (a_E / L) n0 L^3
//! ```

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Reduced Planck constant (J s).
pub const HBAR: f64 = 1.054_571_817e-34;
/// Bohr radius (m).
pub const BOHR_RADIUS: f64 = 5.291_772_109_03e-11;
/// Atomic mass unit (kg).
pub const AMU: f64 = 1.660_539_066_60e-27;
/// Mass of rubidium-87 in atomic mass units.
pub const RB87_AMU: f64 = 86.909_180_527;
/// Mass of sodium-23 in atomic mass units.
pub const NA23_AMU: f64 = 22.989_769_282_0;
/// Natural rubidium scattering length, 99 Bohr radii (m).
pub const A_RB: f64 = 99.0 * BOHR_RADIUS;

/// SI-unit experimental configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    /// Environment boson mass (kg).
    pub env_mass: f64,
    /// Impurity mass (kg).
    pub sys_mass: f64,
    /// Boson-boson scattering length `a_B` (m).
    pub env_scattering_length: f64,
    /// Impurity-boson scattering length (m).
    pub sys_env_scattering_length: f64,
    /// Condensate density (m^-3).
    pub density: f64,
    /// Superlattice wavelength (m).
    pub lattice_wavelength: f64,
    /// Gaussian width parameter of a lattice site (m).
    pub site_width: f64,
    /// Half of the qubit separation (m).
    pub half_separation: f64,
}

/// Sodium impurities in a rubidium condensate, 600 nm superlattice, `D = 200 L`.
pub fn default_params() -> PhysicalParams {
    let lambda = 600e-9;
    PhysicalParams {
        env_mass: RB87_AMU * AMU,
        sys_mass: NA23_AMU * AMU,
        env_scattering_length: A_RB,
        sys_env_scattering_length: 55.0 * BOHR_RADIUS,
        density: 1e20,
        lattice_wavelength: lambda,
        site_width: 45e-9,
        half_separation: 200.0 * lambda / 4.0,
    }
}

impl Default for PhysicalParams {
    fn default() -> Self {
        default_params()
    }
}

impl PhysicalParams {
    /// Lattice spacing `L = lambda / 4`, the size of one qubit.
    pub fn lattice_spacing(&self) -> f64 {
        self.lattice_wavelength / 4.0
    }

    /// Impurity-boson reduced mass.
    pub fn reduced_mass(&self) -> f64 {
        self.sys_mass * self.env_mass / (self.sys_mass + self.env_mass)
    }

    /// Boson-boson coupling `g_E = 4 pi hbar^2 a_E / m_E` (J m^3).
    pub fn env_coupling(&self) -> f64 {
        4.0 * std::f64::consts::PI * HBAR * HBAR * self.env_scattering_length / self.env_mass
    }

    /// Impurity-boson coupling `g_SE = 2 pi hbar^2 a_SE / m_SE` (J m^3).
    pub fn sys_env_coupling(&self) -> f64 {
        2.0 * std::f64::consts::PI * HBAR * HBAR * self.sys_env_scattering_length / self.reduced_mass()
    }

    pub fn a_b_over_a_rb(&self) -> f64 {
        self.env_scattering_length / A_RB
    }

    pub fn d_over_l(&self) -> f64 {
        self.half_separation / self.lattice_spacing()
    }

    pub fn with_a_b_over_a_rb(mut self, ratio: f64) -> Self {
        self.env_scattering_length = ratio * A_RB;
        self
    }

    pub fn with_d_over_l(mut self, ratio: f64) -> Self {
        self.half_separation = ratio * self.lattice_spacing();
        self
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("m_E", self.env_mass),
            ("m_S", self.sys_mass),
            ("a_E", self.env_scattering_length),
            ("a_SE", self.sys_env_scattering_length),
            ("n0", self.density),
            ("lambda", self.lattice_wavelength),
            ("sigma", self.site_width),
            ("D", self.half_separation),
        ];
        for (name, v) in fields {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidParams(format!("{name} must be finite and > 0, got {v}")));
            }
        }
        // 2 D_min = 8 L; the relative slack absorbs round-off from D/L conversions.
        if self.d_over_l() < 4.0 * (1.0 - 1e-12) {
            return Err(Error::InvalidParams(format!(
                "D must be at least 4L, got D/L = {}",
                self.d_over_l()
            )));
        }
        Ok(())
    }
}

/// Dimensionless parameters consumed by every spectral integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedParams<T> {
    /// Half-separation `D / L`.
    pub d: T,
    /// Site width `sigma / L`.
    pub s: T,
    /// Mean-field energy `g_E n0 / E0`.
    pub g_tilde: T,
    /// Overall rate prefactor in units of `1 / t0`.
    pub c_rate: T,
    /// Time unit `hbar / E0` (s).
    pub t0: T,
}

impl<T: Real> ReducedParams<T> {
    pub fn cast<U: Real>(&self) -> ReducedParams<U> {
        ReducedParams {
            d: U::lit(self.d.as_f64()),
            s: U::lit(self.s.as_f64()),
            g_tilde: U::lit(self.g_tilde.as_f64()),
            c_rate: U::lit(self.c_rate.as_f64()),
            t0: U::lit(self.t0.as_f64()),
        }
    }

    pub fn with_d(mut self, d: T) -> Self {
        self.d = d;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let four = T::lit(4.0) * (T::one() - T::tol(1e-12, 4.0));
        let ok = self.d >= four
            && self.s > T::zero()
            && self.g_tilde >= T::zero()
            && self.c_rate > T::zero()
            && self.t0 > T::zero()
            && [self.d, self.s, self.g_tilde, self.c_rate, self.t0].iter().all(|v| v.is_finite());
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParams(format!("reduced parameters out of range: {self:?}")))
        }
    }
}

/// Nondimensionalize a physical configuration.
pub fn reduce(p: &PhysicalParams) -> Result<ReducedParams<f64>> {
    p.validate()?;
    let l = p.lattice_spacing();
    let n0_l3 = p.density * l * l * l;
    let mass_ratio = p.env_mass / p.reduced_mass();
    let rp = ReducedParams {
        d: p.half_separation / l,
        s: p.site_width / l,
        g_tilde: 4.0 * std::f64::consts::PI * (p.env_scattering_length / l) * n0_l3,
        c_rate: 4.0 * (p.sys_env_scattering_length / l).powi(2) * mass_ratio * mass_ratio * n0_l3,
        t0: p.env_mass * l * l / HBAR,
    };
    rp.validate()?;
    Ok(rp)
}

/// Keys accepted by the flat configuration format, in canonical order.
pub const CONFIG_KEYS: [&str; 8] = [
    "m_E_amu",
    "m_S_amu",
    "a_B_over_aRb",
    "a_SE_over_a0",
    "n0_per_m3",
    "lambda_nm",
    "sigma_nm",
    "D_over_L",
];

/// Parameters in the units of the configuration file.
///
/// This is the canonical textual form: rendering with
/// [`ParamConfig::to_config_string`] and parsing back is bit-exact, which
/// SI values cannot guarantee after unit conversion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamConfig {
    pub m_e_amu: f64,
    pub m_s_amu: f64,
    pub a_b_over_a_rb: f64,
    pub a_se_over_a0: f64,
    pub n0_per_m3: f64,
    pub lambda_nm: f64,
    pub sigma_nm: f64,
    pub d_over_l: f64,
}

impl Default for ParamConfig {
    fn default() -> Self {
        Self {
            m_e_amu: RB87_AMU,
            m_s_amu: NA23_AMU,
            a_b_over_a_rb: 1.0,
            a_se_over_a0: 55.0,
            n0_per_m3: 1e20,
            lambda_nm: 600.0,
            sigma_nm: 45.0,
            d_over_l: 200.0,
        }
    }
}

impl ParamConfig {
    fn slot(&mut self, key: &str) -> Option<&mut f64> {
        Some(match key {
            "m_E_amu" => &mut self.m_e_amu,
            "m_S_amu" => &mut self.m_s_amu,
            "a_B_over_aRb" => &mut self.a_b_over_a_rb,
            "a_SE_over_a0" => &mut self.a_se_over_a0,
            "n0_per_m3" => &mut self.n0_per_m3,
            "lambda_nm" => &mut self.lambda_nm,
            "sigma_nm" => &mut self.sigma_nm,
            "D_over_L" => &mut self.d_over_l,
            _ => return None,
        })
    }

    /// Value of one key.
    pub fn get(&self, key: &str) -> Option<f64> {
        let mut copy = *self;
        copy.slot(key).map(|v| *v)
    }

    /// Set one key; unknown keys and non-finite values are rejected.
    pub fn set(&mut self, key: &str, value: f64) -> std::result::Result<(), String> {
        if !value.is_finite() {
            return Err(format!("value for `{key}` is not finite"));
        }
        *self.slot(key).ok_or_else(|| format!("unknown key `{key}`"))? = value;
        Ok(())
    }

    /// Parse `key = value` text on top of the defaults.
    ///
    /// One assignment per line; `#` starts a comment; blank lines are
    /// ignored. Keys are those in [`CONFIG_KEYS`]; unknown or repeated keys
    /// are errors. The result is validated.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        let mut seen: Vec<&str> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Config { line: line_no, msg };
            let (k, v) = line.split_once('=').ok_or_else(|| err(format!("expected `key = value`, got `{line}`")))?;
            let k = k.trim();
            if !CONFIG_KEYS.contains(&k) {
                return Err(err(format!("unknown key `{k}`")));
            }
            if seen.contains(&k) {
                return Err(err(format!("duplicate key `{k}`")));
            }
            seen.push(k);
            let v = f64::from_str(v.trim()).map_err(|e| err(format!("bad number for `{k}`: {e}")))?;
            cfg.set(k, v).map_err(err)?;
        }
        cfg.to_physical()?;
        Ok(cfg)
    }

    /// Render with 17 significant digits, one key per line in
    /// [`CONFIG_KEYS`] order.
    pub fn to_config_string(&self) -> String {
        let mut out = String::new();
        for key in CONFIG_KEYS {
            let v = self.get(key).expect("known key");
            let _ = writeln!(out, "{key} = {v:.16e}");
        }
        out
    }

    /// SI parameters; validated.
    pub fn to_physical(&self) -> Result<PhysicalParams> {
        let lambda = self.lambda_nm * 1e-9;
        let p = PhysicalParams {
            env_mass: self.m_e_amu * AMU,
            sys_mass: self.m_s_amu * AMU,
            env_scattering_length: self.a_b_over_a_rb * A_RB,
            sys_env_scattering_length: self.a_se_over_a0 * BOHR_RADIUS,
            density: self.n0_per_m3,
            lattice_wavelength: lambda,
            site_width: self.sigma_nm * 1e-9,
            half_separation: self.d_over_l * lambda / 4.0,
        };
        p.validate()?;
        Ok(p)
    }

    /// Reduced parameters of this configuration.
    pub fn reduce(&self) -> Result<ReducedParams<f64>> {
        reduce(&self.to_physical()?)
    }
}

impl PhysicalParams {
    /// Parse the flat configuration format into SI parameters.
    pub fn from_config_str(text: &str) -> Result<Self> {
        ParamConfig::parse(text)?.to_physical()
    }
}
