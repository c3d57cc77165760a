//! Complex functions on the phase lattice and their harmonic analysis.
//!
//! All integrals carry the Haar weight `1/d` per phase point, so that
//! `F_σ` is an involution and `d·δ₀` is the convolution unit.

use nalgebra::ComplexField;

use crate::error::{QhaError, Result};
use crate::model::{ModelParams, PhasePoint};
use crate::scalar::{c, cone, creal, czero, modulus, Real, RootsOfUnity, C};

#[derive(Clone, Debug, PartialEq)]
pub struct PhaseFunction<T: Real> {
    params: ModelParams,
    values: Vec<C<T>>,
}

impl<T: Real> PhaseFunction<T> {
    pub fn new(params: ModelParams, values: Vec<C<T>>) -> Result<Self> {
        if values.len() != params.phase_len() {
            return Err(QhaError::DimensionMismatch { expected: params.phase_len(), got: values.len() });
        }
        if let Some(i) = values.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(QhaError::NonFinite(i));
        }
        Ok(PhaseFunction { params, values })
    }

    pub fn from_fn(params: ModelParams, mut f: impl FnMut(usize) -> C<T>) -> Self {
        let values = (0..params.phase_len()).map(&mut f).collect();
        PhaseFunction { params, values }
    }

    pub fn zeros(params: ModelParams) -> Self {
        Self::constant(params, czero())
    }

    pub fn constant(params: ModelParams, v: C<T>) -> Self {
        PhaseFunction { params, values: vec![v; params.phase_len()] }
    }

    /// The constant function `𝟙`.
    pub fn ones(params: ModelParams) -> Self {
        Self::constant(params, cone())
    }

    /// `scale · δ_z`.
    pub fn point_mass(params: ModelParams, z: usize, scale: C<T>) -> Self {
        let mut f = Self::zeros(params);
        f.values[z] = scale;
        f
    }

    /// `d·δ₀`, the unit of normalized convolution.
    pub fn unit(params: ModelParams) -> Self {
        Self::point_mass(params, 0, creal(T::lit(params.dim() as f64)))
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn values(&self) -> &[C<T>] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [C<T>] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<C<T>> {
        self.values
    }

    pub fn at(&self, z: usize) -> C<T> {
        self.values[z]
    }

    pub fn at_point(&self, z: &PhasePoint) -> Result<C<T>> {
        Ok(self.values[z.index(&self.params)?])
    }

    pub fn ensure_compatible(&self, other: &Self) -> Result<()> {
        self.params.ensure_same(&other.params)
    }

    pub fn map(&self, f: impl Fn(C<T>) -> C<T>) -> Self {
        PhaseFunction { params: self.params, values: self.values.iter().map(|&v| f(v)).collect() }
    }

    pub fn zip_with(&self, other: &Self, f: impl Fn(C<T>, C<T>) -> C<T>) -> Result<Self> {
        self.ensure_compatible(other)?;
        Ok(PhaseFunction {
            params: self.params,
            values: self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn scale(&self, s: C<T>) -> Self {
        self.map(|v| v * s)
    }

    pub fn conj(&self) -> Self {
        self.map(|v| v.conj())
    }

    /// Largest pointwise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!(self.params, other.params, "max_abs_diff across different models");
        self.values.iter().zip(&other.values).fold(T::zero(), |m, (&a, &b)| m.max(modulus(a - b)))
    }

    pub fn max_abs(&self) -> T {
        self.values.iter().fold(T::zero(), |m, &a| m.max(modulus(a)))
    }

    /// `(α_z f)(w) = f(w − z)`.
    pub fn shift(&self, z: usize) -> Self {
        let p = self.params;
        Self::from_fn(p, |w| self.values[p.phase_sub(w, z)])
    }

    /// `(γ_z f)(w) = ω^{−σ(w, z)} f(w)`.
    pub fn modulate(&self, z: usize) -> Self {
        let p = self.params;
        let roots = RootsOfUnity::<T>::new(p.modulus());
        Self::from_fn(p, |w| roots.pow(-(p.symplectic_index(w, z) as i64)) * self.values[w])
    }

    /// `f̃(w) = f(−w)`.
    pub fn reflect(&self) -> Self {
        let p = self.params;
        Self::from_fn(p, |w| self.values[p.phase_neg(w)])
    }

    /// `f*(w) = conj f(−w)`.
    pub fn involute(&self) -> Self {
        let p = self.params;
        Self::from_fn(p, |w| self.values[p.phase_neg(w)].conj())
    }

    /// `(f∗g)(w) = (1/d) Σ_z f(z) g(w − z)`.
    pub fn convolve(&self, g: &Self) -> Result<Self> {
        self.ensure_compatible(g)?;
        let p = self.params;
        let weight = T::one() / T::lit(p.dim() as f64);
        let mut out = vec![czero::<T>(); p.phase_len()];
        for (z, &fz) in self.values.iter().enumerate() {
            if fz == czero() {
                continue;
            }
            for (u, slot) in out.iter_mut().enumerate() {
                *slot += fz * g.values[p.phase_sub(u, z)];
            }
        }
        for v in &mut out {
            *v = v.scale(weight);
        }
        Ok(PhaseFunction { params: p, values: out })
    }

    /// Symplectic Fourier transform
    /// `(F_σ f)(w) = (1/d) Σ_z f(z) ω^{−σ(w, z)}`.
    ///
    /// Evaluated as a separable DFT: one `N`-point pass per phase axis,
    /// `O(d² · 2nN)` instead of the `O(d⁴)` double sum.
    pub fn symplectic_fourier(&self) -> Self {
        symplectic_fourier_separable(self)
    }

    /// Normalized `L^p` norm `((1/d) Σ |f|^p)^{1/p}`; `p = ∞` gives `max |f|`.
    pub fn lp_norm(&self, p: f64) -> Result<T> {
        lp_norm_values(&self.values, self.params.dim(), p)
    }

    /// `⟨f, g⟩ = (1/d) Σ f conj(g)`.
    pub fn inner(&self, g: &Self) -> Result<C<T>> {
        self.ensure_compatible(g)?;
        let s = self.values.iter().zip(&g.values).fold(czero::<T>(), |acc, (&a, &b)| acc + a * b.conj());
        Ok(s.unscale(T::lit(self.params.dim() as f64)))
    }

    /// `Σ_z f(z)` with no Haar weight.
    pub fn sum(&self) -> C<T> {
        self.values.iter().fold(czero(), |acc, &v| acc + v)
    }
}

pub(crate) fn lp_norm_values<T: Real>(values: &[C<T>], dim: usize, p: f64) -> Result<T> {
    if p.is_nan() || p < 1.0 {
        return Err(QhaError::InvalidExponent(p));
    }
    if p.is_infinite() {
        return Ok(values.iter().fold(T::zero(), |m, &v| m.max(modulus(v))));
    }
    let weight = T::one() / T::lit(dim as f64);
    if p == 1.0 {
        return Ok(values.iter().fold(T::zero(), |s, &v| s + modulus(v)) * weight);
    }
    // Scale by the max modulus so large p does not overflow.
    let top = values.iter().fold(T::zero(), |m, &v| m.max(modulus(v)));
    if top == T::zero() {
        return Ok(T::zero());
    }
    let pt = T::lit(p);
    let s = values.iter().fold(T::zero(), |s, &v| s + (modulus(v) / top).powf(pt));
    Ok(top * (s * weight).powf(T::one() / pt))
}

/// In-place `N`-point DFT along each of the given axes of a `[N; 2n]` array,
/// `out[k] = Σ_j in[j] ω^{sign·jk}`.
fn dft_axes<T: Real>(data: &mut [C<T>], p: &ModelParams, axes: std::ops::Range<usize>, sign: i64) {
    let m = p.modulus() as usize;
    let rank = 2 * p.n() as usize;
    let roots = RootsOfUnity::<T>::new(p.modulus());
    let mut line = vec![czero::<T>(); m];
    let mut buf = vec![czero::<T>(); m];
    for axis in axes {
        let stride = m.pow((rank - 1 - axis) as u32);
        let block = stride * m;
        for base in (0..data.len()).step_by(block) {
            for off in 0..stride {
                let start = base + off;
                for (j, slot) in line.iter_mut().enumerate() {
                    *slot = data[start + j * stride];
                }
                for (k, out) in buf.iter_mut().enumerate() {
                    let mut acc = czero::<T>();
                    for (j, &v) in line.iter().enumerate() {
                        acc += v * roots.pow(sign * ((j * k) % m) as i64);
                    }
                    *out = acc;
                }
                for (j, &v) in buf.iter().enumerate() {
                    data[start + j * stride] = v;
                }
            }
        }
    }
}

fn symplectic_fourier_separable<T: Real>(f: &PhaseFunction<T>) -> PhaseFunction<T> {
    let p = *f.params();
    let n = p.n() as usize;
    let d = p.dim();
    let mut data = f.values.clone();
    // Σ_ξ f(x, ξ) ω^{−a·ξ}: ξ axes produce the output position a.
    dft_axes(&mut data, &p, n..2 * n, -1);
    // Σ_x (...) ω^{+b·x}: x axes produce the output frequency b.
    dft_axes(&mut data, &p, 0..n, 1);
    // data is now indexed (b, a); the result lives at (x_w, ξ_w) = (a, b).
    let weight = T::one() / T::lit(d as f64);
    let mut out = vec![czero::<T>(); p.phase_len()];
    for b in 0..d {
        for a in 0..d {
            out[a * d + b] = data[b * d + a].scale(weight);
        }
    }
    PhaseFunction { params: p, values: out }
}

pub fn shift_function<T: Real>(f: &PhaseFunction<T>, z: &PhasePoint) -> Result<PhaseFunction<T>> {
    Ok(f.shift(z.index(f.params())?))
}

pub fn modulate_function<T: Real>(f: &PhaseFunction<T>, z: &PhasePoint) -> Result<PhaseFunction<T>> {
    Ok(f.modulate(z.index(f.params())?))
}

pub fn reflect_function<T: Real>(f: &PhaseFunction<T>) -> PhaseFunction<T> {
    f.reflect()
}

pub fn involute_function<T: Real>(f: &PhaseFunction<T>) -> PhaseFunction<T> {
    f.involute()
}

pub fn convolve_functions<T: Real>(f: &PhaseFunction<T>, g: &PhaseFunction<T>) -> Result<PhaseFunction<T>> {
    f.convolve(g)
}

pub fn symplectic_fourier<T: Real>(f: &PhaseFunction<T>) -> PhaseFunction<T> {
    f.symplectic_fourier()
}

pub fn lp_norm<T: Real>(f: &PhaseFunction<T>, p: f64) -> Result<T> {
    f.lp_norm(p)
}

/// Unit-modulus helper: `exp(iθ)`.
pub fn cis<T: Real>(theta: T) -> C<T> {
    c(theta.cos(), theta.sin())
}
