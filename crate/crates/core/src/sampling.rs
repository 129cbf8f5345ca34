// Copyright 2026 Dephasim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Seeded random pairs of two-qubit states and categorized backflow scans.
//!
//! Randomness comes from ChaCha8 (`rand_chacha`), seeded with
//! `seed_from_u64(seed)`; pair `i` draws from stream `i`, so every pair is
//! reproducible on its own and independent of evaluation order. Standard
//! normal variates use the Marsaglia polar method on uniform `f64` draws
//! from `[0, 1)`: with `u, v` uniform on `(-1, 1)` and `s = u^2 + v^2` in
//! `(0, 1)`, both `u sqrt(-2 ln s / s)` and `v sqrt(-2 ln s / s)` are kept.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma};
use rayon::prelude::*;

use crate::channel::{Bell, DensityMatrix, DensityMatrix2, DensityMatrix4};
use crate::error::{Error, Result};
use crate::linalg::{self, Mat};
use crate::measures::blp_pair;
use crate::scalar::Real;
use crate::spectral::DecoherenceTable;

/// Pair categories, listed in the order pairs are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PairCategory {
    Separable,
    Mixed,
    PureAndMixed,
    Pure,
    MaximallyEntangled,
}

impl PairCategory {
    pub const ALL: [PairCategory; 5] =
        [Self::Separable, Self::Mixed, Self::PureAndMixed, Self::Pure, Self::MaximallyEntangled];

    pub fn label(self) -> &'static str {
        match self {
            Self::Separable => "separable",
            Self::Mixed => "mixed",
            Self::PureAndMixed => "pure_and_mixed",
            Self::Pure => "pure",
            Self::MaximallyEntangled => "maximally_entangled",
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.label() == s)
    }
}

/// Mixture used for separable states: `K` random pure product states with
/// Dirichlet(`alpha`, ..., `alpha`) weights.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeparableRecipe {
    pub terms: usize,
    pub alpha: f64,
}

impl Default for SeparableRecipe {
    fn default() -> Self {
        Self { terms: 4, alpha: 1.0 }
    }
}

/// Counter-based source of independent random streams.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeededSampler {
    pub seed: u64,
}

impl SeededSampler {
    pub fn new(seed: u64) -> Self {
        Self { seed }
    }

    /// Generator for stream `index`.
    pub fn stream(&self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        rng
    }
}

/// Standard normal variate (Marsaglia polar method). One of the pair is
/// cached in `spare`.
pub fn standard_normal<R: Rng>(rng: &mut R, spare: &mut Option<f64>) -> f64 {
    if let Some(z) = spare.take() {
        return z;
    }
    loop {
        let u = 2.0 * rng.random::<f64>() - 1.0;
        let v = 2.0 * rng.random::<f64>() - 1.0;
        let s = u * u + v * v;
        if s > 0.0 && s < 1.0 {
            let f = (-2.0 * s.ln() / s).sqrt();
            *spare = Some(v * f);
            return u * f;
        }
    }
}

/// Draws states from one stream.
pub struct StateGenerator<R> {
    rng: R,
    spare: Option<f64>,
}

impl<R: Rng> StateGenerator<R> {
    pub fn new(rng: R) -> Self {
        Self { rng, spare: None }
    }

    fn normal(&mut self) -> f64 {
        standard_normal(&mut self.rng, &mut self.spare)
    }

    /// Complex Gaussian with independent standard normal parts.
    pub fn complex_normal<T: Real>(&mut self) -> Complex<T> {
        let re = self.normal();
        let im = self.normal();
        Complex::new(T::lit(re), T::lit(im))
    }

    /// Haar-random unit vector.
    pub fn haar_vector<T: Real, const N: usize>(&mut self) -> [Complex<T>; N] {
        loop {
            let v: [Complex<T>; N] = std::array::from_fn(|_| self.complex_normal());
            let n = v.iter().fold(T::zero(), |a, z| a + z.norm_sqr()).sqrt();
            if n > T::zero() {
                return v.map(|z| z / n);
            }
        }
    }

    /// Haar-random element of SU(2), `[[a, -conj(b)], [b, conj(a)]]`.
    pub fn haar_su2<T: Real>(&mut self) -> Mat<T, 2> {
        let [a, b] = self.haar_vector::<T, 2>();
        [[a, -b.conj()], [b, a.conj()]]
    }

    pub fn pure<T: Real, const N: usize>(&mut self) -> DensityMatrix<T, N> {
        DensityMatrix::from_trusted(linalg::outer(&self.haar_vector::<T, N>()))
    }

    /// Ginibre state `G G^† / Tr(G G^†)`.
    pub fn ginibre<T: Real, const N: usize>(&mut self) -> DensityMatrix<T, N> {
        let g: Mat<T, N> = std::array::from_fn(|_| std::array::from_fn(|_| self.complex_normal()));
        let w = linalg::matmul(&g, &linalg::adjoint(&g));
        let tr = linalg::trace(&w).re;
        DensityMatrix::from_trusted(linalg::scale(&w, T::one() / tr))
    }

    /// Dirichlet mixture of `recipe.terms` pure product states.
    pub fn separable<T: Real>(&mut self, recipe: &SeparableRecipe) -> Result<DensityMatrix4<T>> {
        let gamma = Gamma::new(recipe.alpha, 1.0)
            .map_err(|e| Error::InvalidParams(format!("separable weight law: {e}")))?;
        if recipe.terms == 0 {
            return Err(Error::InvalidParams("separable recipe needs at least one term".into()));
        }
        let weights: Vec<f64> = (0..recipe.terms).map(|_| gamma.sample(&mut self.rng)).collect();
        let total: f64 = weights.iter().sum();
        let mut m = linalg::zeros::<T, 4>();
        for w in weights {
            let a: DensityMatrix2<T> = self.pure();
            let b: DensityMatrix2<T> = self.pure();
            let prod = DensityMatrix4::product(&a, &b);
            m = linalg::add(&m, &linalg::scale(prod.entries(), T::lit(w / total)));
        }
        Ok(DensityMatrix::from_trusted(m))
    }

    /// `(U_A ⊗ U_B) |Φ+>` with independent Haar local unitaries.
    pub fn maximally_entangled<T: Real>(&mut self) -> DensityMatrix4<T> {
        let u = linalg::kron2(&self.haar_su2::<T>(), &self.haar_su2::<T>());
        DensityMatrix4::bell(Bell::PhiPlus).conjugate_by(&u)
    }

    /// Pair number `k` within `category`. The first two maximally entangled
    /// pairs are the Bell pairs `(Φ+, Φ-)` and `(Ψ+, Ψ-)`.
    pub fn pair<T: Real>(
        &mut self,
        category: PairCategory,
        k: u64,
        recipe: &SeparableRecipe,
    ) -> Result<(DensityMatrix4<T>, DensityMatrix4<T>)> {
        Ok(match category {
            PairCategory::Separable => (self.separable(recipe)?, self.separable(recipe)?),
            PairCategory::Mixed => (self.ginibre(), self.ginibre()),
            PairCategory::PureAndMixed => (self.pure(), self.ginibre()),
            PairCategory::Pure => (self.pure(), self.pure()),
            PairCategory::MaximallyEntangled => match k {
                0 => (DensityMatrix4::bell(Bell::PhiPlus), DensityMatrix4::bell(Bell::PhiMinus)),
                1 => (DensityMatrix4::bell(Bell::PsiPlus), DensityMatrix4::bell(Bell::PsiMinus)),
                _ => (self.maximally_entangled(), self.maximally_entangled()),
            },
        })
    }
}

/// Category of the pair with global index `index` (round robin).
pub fn category_of(index: u64) -> PairCategory {
    PairCategory::ALL[(index % PairCategory::ALL.len() as u64) as usize]
}

/// Pair with global index `index`, drawn from its own stream.
pub fn sample_pair<T: Real>(
    sampler: &SeededSampler,
    index: u64,
    recipe: &SeparableRecipe,
) -> Result<(PairCategory, DensityMatrix4<T>, DensityMatrix4<T>)> {
    let category = category_of(index);
    let k = index / PairCategory::ALL.len() as u64;
    let (a, b) = StateGenerator::new(sampler.stream(index)).pair(category, k, recipe)?;
    Ok((category, a, b))
}

/// One evaluated pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairResult<T> {
    pub index: u64,
    pub category: PairCategory,
    pub n: T,
}

/// Outcome of a sampling scan.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledScan<T: Real> {
    pub pairs: Vec<PairResult<T>>,
    /// Maximum backflow per category, for categories that were drawn.
    pub max_by_category: Vec<(PairCategory, T)>,
    /// Index of the first pair attaining the global maximum.
    pub argmax: u64,
    pub argmax_pair: (DensityMatrix4<T>, DensityMatrix4<T>),
}

impl<T: Real> SampledScan<T> {
    pub fn global_max(&self) -> T {
        self.max_by_category.iter().fold(T::zero(), |m, (_, v)| m.max(*v))
    }

    pub fn argmax_category(&self) -> PairCategory {
        category_of(self.argmax)
    }
}

/// Evaluate `n_pairs` pairs, drawn round robin over the categories.
pub fn sampled_scan<T: Real>(
    n_pairs: usize,
    table: &DecoherenceTable<T>,
    sampler: &SeededSampler,
    recipe: &SeparableRecipe,
) -> Result<SampledScan<T>> {
    if n_pairs == 0 {
        return Err(Error::InvalidParams("n_pairs must be >= 1".into()));
    }
    let pairs: Vec<PairResult<T>> = (0..n_pairs as u64)
        .into_par_iter()
        .map(|index| {
            let (category, a, b) = sample_pair::<T>(sampler, index, recipe)?;
            Ok(PairResult { index, category, n: blp_pair(&a, &b, table)?.n })
        })
        .collect::<Result<_>>()?;

    let mut max_by_category = Vec::new();
    for cat in PairCategory::ALL {
        let best = pairs.iter().filter(|p| p.category == cat).map(|p| p.n).fold(None, |m: Option<T>, v| {
            Some(m.map_or(v, |m| m.max(v)))
        });
        if let Some(b) = best {
            max_by_category.push((cat, b));
        }
    }
    let argmax = pairs.iter().fold(&pairs[0], |best, p| if p.n > best.n { p } else { best }).index;
    let (_, a, b) = sample_pair::<T>(sampler, argmax, recipe)?;
    Ok(SampledScan { pairs, max_by_category, argmax, argmax_pair: (a, b) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let s = SeededSampler::new(7);
        let (c0, a0, _) = sample_pair::<f64>(&s, 3, &SeparableRecipe::default()).unwrap();
        let (c1, a1, _) = sample_pair::<f64>(&s, 3, &SeparableRecipe::default()).unwrap();
        assert_eq!(c0, PairCategory::Pure);
        assert_eq!(c0, c1);
        assert_eq!(a0, a1);
        let (_, a2, _) = sample_pair::<f64>(&s, 8, &SeparableRecipe::default()).unwrap();
        assert_ne!(a0, a2);
    }

    #[test]
    fn first_entangled_pairs_are_bell_pairs() {
        let s = SeededSampler::new(1);
        let (_, a, b) = sample_pair::<f64>(&s, 4, &SeparableRecipe::default()).unwrap();
        assert_eq!(a, DensityMatrix4::bell(Bell::PhiPlus));
        assert_eq!(b, DensityMatrix4::bell(Bell::PhiMinus));
        let (_, a, _) = sample_pair::<f64>(&s, 9, &SeparableRecipe::default()).unwrap();
        assert_eq!(a, DensityMatrix4::bell(Bell::PsiPlus));
    }

    #[test]
    fn generated_states_are_valid() {
        let s = SeededSampler::new(42);
        for index in 0..50 {
            let (cat, a, b) = sample_pair::<f64>(&s, index, &SeparableRecipe::default()).unwrap();
            for r in [a, b] {
                assert!(DensityMatrix::new(*r.entries()).is_ok(), "{cat:?}");
            }
            if matches!(cat, PairCategory::Pure | PairCategory::MaximallyEntangled) {
                assert!((a.purity() - 1.0).abs() < 1e-12);
                assert!((b.purity() - 1.0).abs() < 1e-12);
            }
            if cat == PairCategory::MaximallyEntangled {
                assert!((a.reduced_a().purity() - 0.5).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn polar_normals_have_unit_variance() {
        let mut rng = SeededSampler::new(3).stream(0);
        let mut spare = None;
        let n = 100_000;
        let xs: Vec<f64> = (0..n).map(|_| standard_normal(&mut rng, &mut spare)).collect();
        let mean = xs.iter().sum::<f64>() / n as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n as f64;
        assert!(mean.abs() < 0.01);
        assert!((var - 1.0).abs() < 0.02);
    }

    #[test]
    fn bad_recipe_is_rejected() {
        let mut g = StateGenerator::new(SeededSampler::new(0).stream(0));
        assert!(g.separable::<f64>(&SeparableRecipe { terms: 0, alpha: 1.0 }).is_err());
        assert!(g.separable::<f64>(&SeparableRecipe { terms: 2, alpha: -1.0 }).is_err());
    }
}
