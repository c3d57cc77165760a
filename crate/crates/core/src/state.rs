//! Vectors in the Hilbert space `ℓ²((Z_N)^n)`.

use nalgebra::ComplexField;

use crate::error::{QhaError, Result};
use crate::model::ModelParams;
use crate::scalar::{czero, modulus, Real, C};

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector<T: Real> {
    params: ModelParams,
    values: Vec<C<T>>,
}

impl<T: Real> StateVector<T> {
    pub fn new(params: ModelParams, values: Vec<C<T>>) -> Result<Self> {
        if values.len() != params.dim() {
            return Err(QhaError::DimensionMismatch { expected: params.dim(), got: values.len() });
        }
        if let Some(i) = values.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(QhaError::NonFinite(i));
        }
        Ok(StateVector { params, values })
    }

    pub fn from_fn(params: ModelParams, f: impl FnMut(usize) -> C<T>) -> Self {
        StateVector { params, values: (0..params.dim()).map(f).collect() }
    }

    pub fn zeros(params: ModelParams) -> Self {
        StateVector { params, values: vec![czero(); params.dim()] }
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn values(&self) -> &[C<T>] {
        &self.values
    }

    pub fn at(&self, s: usize) -> C<T> {
        self.values[s]
    }

    /// `⟨φ, ψ⟩ = Σ φ(s) conj ψ(s)`, linear in the first slot.
    pub fn inner(&self, other: &Self) -> Result<C<T>> {
        self.params.ensure_same(&other.params)?;
        Ok(self.values.iter().zip(&other.values).fold(czero(), |acc, (&a, &b)| acc + a * b.conj()))
    }

    pub fn norm(&self) -> T {
        self.values.iter().fold(T::zero(), |s, &v| s + v.modulus_squared()).sqrt()
    }

    /// Unit vector in the same direction; errors on the zero vector.
    pub fn normalized(&self) -> Result<Self> {
        let nrm = self.norm();
        if nrm == T::zero() {
            return Err(QhaError::ZeroWindow);
        }
        Ok(StateVector { params: self.params, values: self.values.iter().map(|v| v.unscale(nrm)).collect() })
    }

    /// `(Pφ)(s) = φ(−s)`.
    pub fn parity(&self) -> Self {
        let p = self.params;
        Self::from_fn(p, |s| self.values[p.pos_neg(s)])
    }

    pub fn scale(&self, k: C<T>) -> Self {
        StateVector { params: self.params, values: self.values.iter().map(|&v| v * k).collect() }
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.values.iter().zip(&other.values).fold(T::zero(), |m, (&a, &b)| m.max(modulus(a - b)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{c, creal};

    #[test]
    fn inner_product_and_norm() {
        let p = ModelParams::new(1, 3).unwrap();
        let a = StateVector::new(p, vec![c(1.0, 0.0), c(0.0, 1.0), czero()]).unwrap();
        let b = StateVector::new(p, vec![c(0.0, 1.0), creal(1.0), creal(2.0)]).unwrap();
        assert_eq!(a.inner(&b).unwrap(), c(0.0, 0.0));
        assert!((a.norm() - 2f64.sqrt()).abs() < 1e-15);
        assert!((a.normalized().unwrap().norm() - 1.0).abs() < 1e-15);
        assert!(StateVector::<f64>::zeros(p).normalized().is_err());
        assert!(StateVector::<f64>::new(p, vec![czero(); 2]).is_err());
    }

    #[test]
    fn parity_reflects_positions() {
        let p = ModelParams::new(2, 3).unwrap();
        let v = StateVector::<f64>::from_fn(p, |s| creal(s as f64));
        let w = v.parity();
        for s in 0..p.dim() {
            assert_eq!(w.at(s), v.at(p.pos_neg(s)));
        }
        assert_eq!(w.parity(), v);
    }
}
