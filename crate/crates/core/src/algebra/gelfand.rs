//! Gelfand transform of the doubled algebra.
//!
//! The characters are `χ_{z,j}(f, A) = F_σ f(z) + (−1)^j F_W A(z)`, so the
//! spectrum is two copies of phase space. A doubled index is `j·d² + z`.

use std::collections::BTreeSet;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::algebra::pair::QhaPair;
use crate::error::{QhaError, Result};
use crate::function::PhaseFunction;
use crate::model::{ModelParams, PhasePoint};
use crate::operator::Operator;
use crate::scalar::{creal, modulus, Real, C};
use crate::transform::{fourier_weyl, inv_fourier_weyl};

/// A character label `(z, j)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DoubledPoint {
    pub z: PhasePoint,
    pub j: u8,
}

impl DoubledPoint {
    pub fn index(&self, p: &ModelParams) -> Result<usize> {
        if self.j > 1 {
            return Err(QhaError::Parse {
                location: "doubled point".into(),
                message: format!("sheet {} is not 0 or 1", self.j),
            });
        }
        Ok(self.j as usize * p.phase_len() + self.z.index(p)?)
    }

    pub fn from_index(p: &ModelParams, k: usize) -> Self {
        DoubledPoint { z: p.point(k % p.phase_len()), j: (k / p.phase_len()) as u8 }
    }
}

/// Flip the sheet of a doubled index.
pub fn flip_index(p: &ModelParams, k: usize) -> usize {
    let n = p.phase_len();
    (k + n) % (2 * n)
}

/// Values on `Λ × {0, 1}`, sheet-major.
#[derive(Clone, Debug, PartialEq)]
pub struct DoubledFunction<T: Real> {
    params: ModelParams,
    values: Vec<C<T>>,
}

impl<T: Real> DoubledFunction<T> {
    pub fn new(params: ModelParams, values: Vec<C<T>>) -> Result<Self> {
        let n = 2 * params.phase_len();
        if values.len() != n {
            return Err(QhaError::DimensionMismatch { expected: n, got: values.len() });
        }
        Ok(DoubledFunction { params, values })
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn values(&self) -> &[C<T>] {
        &self.values
    }

    pub fn at(&self, z: usize, j: u8) -> C<T> {
        self.values[j as usize * self.params.phase_len() + z]
    }

    pub fn sheet(&self, j: u8) -> PhaseFunction<T> {
        let n = self.params.phase_len();
        PhaseFunction::from_fn(self.params, |z| self.values[j as usize * n + z])
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.values.iter().zip(&other.values).fold(T::zero(), |m, (&a, &b)| m.max(modulus(a - b)))
    }
}

/// `Γ(f, A)(z, j) = F_σ f(z) + (−1)^j F_W A(z)`.
pub fn gelfand_transform<T: Real>(pair: &QhaPair<T>) -> DoubledFunction<T> {
    let fh = pair.f.symplectic_fourier();
    let ah = fourier_weyl(&pair.a);
    let mut values = Vec::with_capacity(2 * fh.values().len());
    values.extend(fh.values().iter().zip(ah.values()).map(|(&a, &b)| a + b));
    values.extend(fh.values().iter().zip(ah.values()).map(|(&a, &b)| a - b));
    DoubledFunction { params: *pair.params(), values }
}

/// Inverse of [`gelfand_transform`]: `F_σ f = (Γ₀ + Γ₁)/2`, `F_W A = (Γ₀ − Γ₁)/2`.
pub fn inverse_gelfand<T: Real>(g: &DoubledFunction<T>) -> QhaPair<T> {
    let p = g.params;
    let n = p.phase_len();
    let half = T::lit(0.5);
    let fh = PhaseFunction::from_fn(p, |z| (g.values[z] + g.values[n + z]).scale(half));
    let ah = PhaseFunction::from_fn(p, |z| (g.values[z] - g.values[n + z]).scale(half));
    QhaPair { f: fh.symplectic_fourier(), a: inv_fourier_weyl(&ah) }
}

pub fn character_eval<T: Real>(x: &DoubledPoint, pair: &QhaPair<T>) -> Result<C<T>> {
    let k = x.index(pair.params())?;
    let z = k % pair.params().phase_len();
    let fh = pair.f.symplectic_fourier().at(z);
    let ah = fourier_weyl(&pair.a).at(z);
    Ok(if x.j == 0 { fh + ah } else { fh - ah })
}

/// `{(z, j) : |Γ(p)(z, j)| ≤ tol}` as doubled indices.
pub fn zero_set<T: Real>(pair: &QhaPair<T>, tol: T) -> BTreeSet<usize> {
    gelfand_transform(pair).values.iter().enumerate().filter(|(_, &v)| modulus(v) <= tol).map(|(k, _)| k).collect()
}

/// Default zero-set threshold: `1e−10 · ‖p‖`.
pub fn default_zero_tol<T: Real>(pair: &QhaPair<T>) -> T {
    T::lit(1e-10) * pair.norm()
}

/// The `2d² × 2d²` matrix of `Γ` in primal coordinates (function values,
/// then row-major matrix entries).
pub fn gelfand_matrix<T: Real>(p: ModelParams) -> DMatrix<C<T>> {
    let n = p.phase_len();
    let d = p.dim();
    let mut m = DMatrix::from_element(2 * n, 2 * n, creal(T::zero()));
    for col in 0..2 * n {
        let pair = if col < n {
            QhaPair::from_function(PhaseFunction::point_mass(p, col, creal(T::one())))
        } else {
            let e = col - n;
            QhaPair::from_operator(Operator::from_fn(p, |s, t| {
                creal(if s * d + t == e { T::one() } else { T::zero() })
            }))
        };
        let g = gelfand_transform(&pair);
        m.set_column(col, &DVector::from_column_slice(g.values()));
    }
    m
}

/// Smallest and largest singular value of the Gelfand matrix.
pub fn gelfand_singular_range<T: Real>(p: ModelParams) -> (T, T) {
    let sv = gelfand_matrix::<T>(p).singular_values();
    let lo = sv.iter().copied().fold(T::max_value().unwrap_or_else(T::one), |a, b| a.min(b));
    let hi = sv.iter().copied().fold(T::zero(), |a, b| a.max(b));
    (lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{random_function, random_operator};
    use crate::scalar::cone;

    fn random_pair(p: ModelParams, seed: u64) -> QhaPair<f64> {
        QhaPair::new(random_function(p, seed), random_operator(p, seed + 77)).unwrap()
    }

    #[test]
    fn transform_of_simple_pairs() {
        let p = ModelParams::new(1, 9).unwrap();
        let f = random_function::<f64>(p, 1);
        let g = gelfand_transform(&QhaPair::from_function(f));
        assert!(g.sheet(0).max_abs_diff(&g.sheet(1)) < 1e-15);
        let unit = gelfand_transform(&QhaPair::<f64>::unit(p));
        assert!(unit.values().iter().all(|&v| (v - cone::<f64>()).norm() < 1e-12));
        let id = gelfand_transform(&QhaPair::from_operator(Operator::<f64>::identity(p)));
        for z in 0..p.phase_len() {
            let e = if z == 0 { 9.0 } else { 0.0 };
            assert!((id.at(z, 0) - creal(e)).norm() < 1e-12);
            assert!((id.at(z, 1) - creal(-e)).norm() < 1e-12);
        }
    }

    #[test]
    fn inverse_round_trip() {
        let p = ModelParams::new(1, 5).unwrap();
        let a = random_pair(p, 2);
        assert!(inverse_gelfand(&gelfand_transform(&a)).max_abs_diff(&a) < 1e-12);
    }

    #[test]
    fn characters_are_multiplicative() {
        let p = ModelParams::new(1, 5).unwrap();
        let a = random_pair(p, 3);
        let b = random_pair(p, 4);
        let ab = gelfand_transform(&a.product(&b).unwrap());
        let (ga, gb) = (gelfand_transform(&a), gelfand_transform(&b));
        for k in 0..2 * p.phase_len() {
            assert!((ab.values()[k] - ga.values()[k] * gb.values()[k]).norm() < 1e-10);
        }
        let x = DoubledPoint::from_index(&p, 31);
        assert_eq!(x.index(&p).unwrap(), 31);
        assert!((character_eval(&x, &a).unwrap() - ga.values()[31]).norm() < 1e-13);
        let op = QhaPair::from_operator(random_operator::<f64>(p, 5));
        let x0 = DoubledPoint { z: p.point(7), j: 0 };
        let x1 = DoubledPoint { z: p.point(7), j: 1 };
        assert!((character_eval(&x0, &op).unwrap() + character_eval(&x1, &op).unwrap()).norm() < 1e-13);
    }

    #[test]
    fn zero_sets_of_extremes() {
        let p = ModelParams::new(1, 3).unwrap();
        assert_eq!(zero_set(&QhaPair::<f64>::zero(p), 0.0).len(), 2 * p.phase_len());
        assert!(zero_set(&QhaPair::<f64>::unit(p), 1e-10).is_empty());
    }

    #[test]
    fn gelfand_matrix_is_invertible() {
        for m in [3, 5] {
            let p = ModelParams::new(1, m).unwrap();
            let (lo, _) = gelfand_singular_range::<f64>(p);
            assert!(lo > 1e-8);
        }
    }
}
