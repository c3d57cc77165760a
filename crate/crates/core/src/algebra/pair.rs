//! Elements `(f, A)` of the doubled algebra `L¹ ⊕ T¹`.

use crate::convolution::{conv_fn_op, conv_op_op};
use crate::error::Result;
use crate::function::PhaseFunction;
use crate::model::{ModelParams, PhasePoint};
use crate::operator::Operator;
use crate::scalar::{creal, Real, C};

#[derive(Clone, Debug, PartialEq)]
pub struct QhaPair<T: Real> {
    pub f: PhaseFunction<T>,
    pub a: Operator<T>,
}

impl<T: Real> QhaPair<T> {
    pub fn new(f: PhaseFunction<T>, a: Operator<T>) -> Result<Self> {
        f.params().ensure_same(a.params())?;
        Ok(QhaPair { f, a })
    }

    pub fn zero(p: ModelParams) -> Self {
        QhaPair { f: PhaseFunction::zeros(p), a: Operator::zeros(p) }
    }

    /// `(d·δ₀, 0)`, the unit of the finite algebra.
    pub fn unit(p: ModelParams) -> Self {
        QhaPair { f: PhaseFunction::unit(p), a: Operator::zeros(p) }
    }

    pub fn from_function(f: PhaseFunction<T>) -> Self {
        let p = *f.params();
        QhaPair { f, a: Operator::zeros(p) }
    }

    pub fn from_operator(a: Operator<T>) -> Self {
        let p = *a.params();
        QhaPair { f: PhaseFunction::zeros(p), a }
    }

    pub fn params(&self) -> &ModelParams {
        self.f.params()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(QhaPair { f: self.f.add(&other.f)?, a: self.a.add(&other.a)? })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        Ok(QhaPair { f: self.f.sub(&other.f)?, a: self.a.sub(&other.a)? })
    }

    pub fn scale(&self, k: C<T>) -> Self {
        QhaPair { f: self.f.scale(k), a: self.a.scale(k) }
    }

    /// `(f, A) ∗ (g, B) = (f∗g + A∗B, f∗B + g∗A)`.
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.f.ensure_compatible(&other.f)?;
        let f = self.f.convolve(&other.f)?.add(&conv_op_op(&self.a, &other.a)?)?;
        let a = conv_fn_op(&self.f, &other.a)?.add(&conv_fn_op(&other.f, &self.a)?)?;
        Ok(QhaPair { f, a })
    }

    /// `(f*, A^{∗QHA})`.
    pub fn involute(&self) -> Self {
        QhaPair { f: self.f.involute(), a: self.a.involute() }
    }

    pub fn shift(&self, z: usize) -> Self {
        QhaPair { f: self.f.shift(z), a: self.a.shift(z) }
    }

    pub fn modulate(&self, z: usize) -> Self {
        QhaPair { f: self.f.modulate(z), a: self.a.modulate(z) }
    }

    /// `J(f, A) = (f, −A)`.
    pub fn j_map(&self) -> Self {
        QhaPair { f: self.f.clone(), a: self.a.scale(creal(-T::one())) }
    }

    /// `‖f‖₁ + ‖A‖_{T¹}`.
    pub fn norm(&self) -> T {
        self.f.lp_norm(1.0).expect("p = 1 is valid") + self.a.schatten_norm(1.0).expect("p = 1 is valid")
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.f.max_abs_diff(&other.f).max(self.a.max_abs_diff(&other.a))
    }

    /// Flat coordinates: the `d²` function values followed by the `d²` matrix
    /// entries in row-major order.
    pub fn to_coordinates(&self) -> Vec<C<T>> {
        let d = self.params().dim();
        let mut v = self.f.values().to_vec();
        v.extend((0..d * d).map(|i| self.a.at(i / d, i % d)));
        v
    }

    pub fn from_coordinates(p: ModelParams, v: &[C<T>]) -> Self {
        let n = p.phase_len();
        let d = p.dim();
        QhaPair { f: PhaseFunction::from_fn(p, |z| v[z]), a: Operator::from_fn(p, |s, t| v[n + s * d + t]) }
    }
}

pub fn pair_product<T: Real>(p: &QhaPair<T>, q: &QhaPair<T>) -> Result<QhaPair<T>> {
    p.product(q)
}

pub fn pair_involution<T: Real>(p: &QhaPair<T>) -> QhaPair<T> {
    p.involute()
}

pub fn pair_shift<T: Real>(p: &QhaPair<T>, z: &PhasePoint) -> Result<QhaPair<T>> {
    Ok(p.shift(z.index(p.params())?))
}

pub fn pair_modulate<T: Real>(p: &QhaPair<T>, z: &PhasePoint) -> Result<QhaPair<T>> {
    Ok(p.modulate(z.index(p.params())?))
}

pub fn j_map<T: Real>(p: &QhaPair<T>) -> QhaPair<T> {
    p.j_map()
}

/// `g ∗ (f, A) = (g∗f, g∗A)`.
pub fn module_action<T: Real>(g: &PhaseFunction<T>, p: &QhaPair<T>) -> Result<QhaPair<T>> {
    Ok(QhaPair { f: g.convolve(&p.f)?, a: conv_fn_op(g, &p.a)? })
}
