// Copyright 2026 Dephasim Contributors
// SPDX-License-Identifier: Apache-2.0

use crate::channel::DensityMatrix;
use crate::error::Result;
use crate::linalg;
use crate::scalar::Real;

/// `D(r1, r2) = Tr|r1 - r2| / 2`, from the eigenvalues of the difference.
///
/// The arguments are put in a canonical order first, so the result is
/// bit-for-bit symmetric.
pub fn trace_distance<T: Real, const N: usize>(r1: &DensityMatrix<T, N>, r2: &DensityMatrix<T, N>) -> Result<T> {
    let (r1, r2) = if precedes(r2, r1) { (r2, r1) } else { (r1, r2) };
    let diff = linalg::sub(r1.entries(), r2.entries());
    let eig = linalg::hermitian_eigen(&diff)?;
    let sum = eig.values.iter().fold(T::zero(), |acc, v| acc + v.abs());
    Ok((sum * T::lit(0.5)).min(T::one()))
}

fn precedes<T: Real, const N: usize>(a: &DensityMatrix<T, N>, b: &DensityMatrix<T, N>) -> bool {
    let key = |m: &DensityMatrix<T, N>| -> Vec<T> { m.entries().iter().flatten().flat_map(|z| [z.re, z.im]).collect() };
    key(a).partial_cmp(&key(b)) == Some(std::cmp::Ordering::Less)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{Bell, DensityMatrix4};

    #[test]
    fn basic_values() {
        let a = DensityMatrix4::<f64>::basis(0);
        let b = DensityMatrix4::<f64>::basis(3);
        assert_eq!(trace_distance(&a, &a).unwrap(), 0.0);
        assert!((trace_distance(&a, &b).unwrap() - 1.0).abs() < 1e-15);
        let p = DensityMatrix4::<f64>::bell(Bell::PhiPlus);
        let m = DensityMatrix4::<f64>::bell(Bell::PhiMinus);
        assert!((trace_distance(&p, &m).unwrap() - 1.0).abs() < 1e-14);
    }
}
