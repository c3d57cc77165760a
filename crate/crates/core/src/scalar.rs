//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};

use nalgebra::{Complex, ComplexField, RealField};
use num_traits::{FromPrimitive, ToPrimitive};

/// Real scalar the whole engine is generic over: `f32` or `f64`.
pub trait Real: RealField + Copy + FromPrimitive + ToPrimitive + Display + Debug + Send + Sync + 'static {
    /// Lossless for `f32`/`f64` sources.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal fits the scalar type")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar converts to f64")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Complex scalar over [`Real`].
pub type C<T> = Complex<T>;

#[inline]
pub fn c<T: Real>(re: T, im: T) -> C<T> {
    Complex::new(re, im)
}

#[inline]
pub fn czero<T: Real>() -> C<T> {
    Complex::new(T::zero(), T::zero())
}

#[inline]
pub fn cone<T: Real>() -> C<T> {
    Complex::new(T::one(), T::zero())
}

#[inline]
pub fn creal<T: Real>(x: T) -> C<T> {
    Complex::new(x, T::zero())
}

#[inline]
pub fn modulus<T: Real>(z: C<T>) -> T {
    ComplexField::modulus(z)
}

/// Table of the `N`-th roots of unity `exp(2πik/N)`, `k = 0..N`.
///
/// Each entry is evaluated from the reduced residue, so `roots[k]` is as
/// accurate as a single `sin`/`cos` call regardless of how large the
/// exponent was before reduction.
#[derive(Clone, Debug)]
pub struct RootsOfUnity<T: Real> {
    modulus: u32,
    table: Vec<C<T>>,
}

impl<T: Real> RootsOfUnity<T> {
    pub fn new(modulus: u32) -> Self {
        let n = modulus as usize;
        let two_pi = T::two_pi();
        let table = (0..n)
            .map(|k| {
                let theta = two_pi * T::lit(k as f64) / T::lit(n as f64);
                c(theta.cos(), theta.sin())
            })
            .collect();
        RootsOfUnity { modulus, table }
    }

    /// `ω^k` for an arbitrary (possibly negative) exponent.
    #[inline]
    pub fn pow(&self, k: i64) -> C<T> {
        self.table[k.rem_euclid(self.modulus as i64) as usize]
    }

    /// `ω^k` for an already reduced exponent.
    #[inline]
    pub fn at(&self, k: u32) -> C<T> {
        self.table[k as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_are_unit_and_periodic() {
        let w = RootsOfUnity::<f64>::new(9);
        for k in -20..20 {
            assert!((modulus(w.pow(k)) - 1.0).abs() < 1e-15);
            assert_eq!(w.pow(k), w.pow(k + 9));
        }
        let prod = w.pow(4) * w.pow(7);
        assert!((prod - w.pow(11)).norm() < 1e-15);
    }
}
