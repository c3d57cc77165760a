//! Dense operators on `ℓ²((Z_N)^n)` and the phase-space actions on them.
//!
//! Rows index the output position and columns the input position, so the
//! matrix is also the integral kernel `K_A(s, t)`.

use nalgebra::{ComplexField, DMatrix};

use crate::error::{QhaError, Result};
use crate::model::{ModelParams, PhasePoint};
use crate::scalar::{cone, czero, modulus, Real, RootsOfUnity, C};
use crate::state::StateVector;

#[derive(Clone, Debug, PartialEq)]
pub struct Operator<T: Real> {
    params: ModelParams,
    matrix: DMatrix<C<T>>,
}

impl<T: Real> Operator<T> {
    pub fn new(params: ModelParams, matrix: DMatrix<C<T>>) -> Result<Self> {
        let d = params.dim();
        if matrix.nrows() != d || matrix.ncols() != d {
            return Err(QhaError::DimensionMismatch { expected: d, got: matrix.nrows().max(matrix.ncols()) });
        }
        if let Some(i) = matrix.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(QhaError::NonFinite(i));
        }
        Ok(Operator { params, matrix })
    }

    pub(crate) fn from_matrix_unchecked(params: ModelParams, matrix: DMatrix<C<T>>) -> Self {
        Operator { params, matrix }
    }

    pub fn from_fn(params: ModelParams, f: impl FnMut(usize, usize) -> C<T>) -> Self {
        let d = params.dim();
        Operator { params, matrix: DMatrix::from_fn(d, d, f) }
    }

    pub fn zeros(params: ModelParams) -> Self {
        let d = params.dim();
        Operator { params, matrix: DMatrix::from_element(d, d, czero()) }
    }

    pub fn identity(params: ModelParams) -> Self {
        let d = params.dim();
        Operator { params, matrix: DMatrix::from_fn(d, d, |s, t| if s == t { cone() } else { czero() }) }
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn matrix(&self) -> &DMatrix<C<T>> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<C<T>> {
        self.matrix
    }

    pub fn at(&self, s: usize, t: usize) -> C<T> {
        self.matrix[(s, t)]
    }

    pub fn ensure_compatible(&self, other: &Self) -> Result<()> {
        self.params.ensure_same(&other.params)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.ensure_compatible(other)?;
        Ok(Operator { params: self.params, matrix: &self.matrix + &other.matrix })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.ensure_compatible(other)?;
        Ok(Operator { params: self.params, matrix: &self.matrix - &other.matrix })
    }

    /// Matrix product `self · other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.ensure_compatible(other)?;
        Ok(Operator { params: self.params, matrix: &self.matrix * &other.matrix })
    }

    pub fn scale(&self, k: C<T>) -> Self {
        Operator { params: self.params, matrix: self.matrix.map(|v| v * k) }
    }

    pub fn conj(&self) -> Self {
        Operator { params: self.params, matrix: self.matrix.map(|v| v.conj()) }
    }

    pub fn adjoint(&self) -> Self {
        Operator { params: self.params, matrix: self.matrix.adjoint() }
    }

    pub fn trace(&self) -> C<T> {
        self.matrix.trace()
    }

    pub fn apply(&self, v: &StateVector<T>) -> Result<StateVector<T>> {
        self.params.ensure_same(v.params())?;
        let d = self.params.dim();
        Ok(StateVector::from_fn(self.params, |s| (0..d).fold(czero(), |acc, t| acc + self.matrix[(s, t)] * v.at(t))))
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!(self.params, other.params, "max_abs_diff across different models");
        self.matrix.iter().zip(other.matrix.iter()).fold(T::zero(), |m, (&a, &b)| m.max(modulus(a - b)))
    }

    pub fn max_abs(&self) -> T {
        self.matrix.iter().fold(T::zero(), |m, &a| m.max(modulus(a)))
    }

    /// Singular values in descending order.
    pub fn singular_values(&self) -> Vec<T> {
        let mut sv: Vec<T> = self.matrix.clone().singular_values().iter().copied().collect();
        sv.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
        sv
    }

    /// `ℓ^p` norm of the singular values; `p = ∞` is the operator norm.
    pub fn schatten_norm(&self, p: f64) -> Result<T> {
        if p.is_nan() || p < 1.0 {
            return Err(QhaError::InvalidExponent(p));
        }
        if p == 2.0 {
            return Ok(self.frobenius());
        }
        let sv = self.singular_values();
        let top = sv.first().copied().unwrap_or_else(T::zero);
        if p.is_infinite() || top == T::zero() {
            return Ok(top);
        }
        if p == 1.0 {
            return Ok(sv.iter().fold(T::zero(), |s, &v| s + v));
        }
        let pt = T::lit(p);
        let s = sv.iter().fold(T::zero(), |s, &v| s + (v / top).powf(pt));
        Ok(top * s.powf(T::one() / pt))
    }

    pub fn frobenius(&self) -> T {
        self.matrix.iter().fold(T::zero(), |s, v| s + v.modulus_squared()).sqrt()
    }

    /// `W_a · A · W_b` in `O(d²)`, using that each Weyl operator is monomial:
    /// `(W_a A W_b)(s, t) = ω^{a_ξ·s − a_x·a_ξ/2 + b_ξ·(t+b_x) − b_x·b_ξ/2} A(s − a_x, t + b_x)`.
    pub fn sandwich(&self, a: usize, b: usize) -> Self {
        let p = self.params;
        let roots = RootsOfUnity::<T>::new(p.modulus());
        let m = p.modulus() as i64;
        let h = p.two_inv() as i64;
        let (ax, ak) = p.split(a);
        let (bx, bk) = p.split(b);
        let base = -h * (p.pos_dot(ax, ak) as i64 + p.pos_dot(bx, bk) as i64);
        let d = p.dim();
        let row_phase: Vec<i64> = (0..d).map(|s| p.pos_dot(ak, s) as i64).collect();
        let col_phase: Vec<i64> = (0..d).map(|t| p.pos_dot(bk, p.pos_add(t, bx)) as i64).collect();
        let rows: Vec<usize> = (0..d).map(|s| p.pos_sub(s, ax)).collect();
        let cols: Vec<usize> = (0..d).map(|t| p.pos_add(t, bx)).collect();
        let matrix = DMatrix::from_fn(d, d, |s, t| {
            let e = (base + row_phase[s] + col_phase[t]).rem_euclid(m);
            roots.pow(e) * self.matrix[(rows[s], cols[t])]
        });
        Operator { params: p, matrix }
    }

    /// `α_z(A) = W_z A W_{−z}`.
    pub fn shift(&self, z: usize) -> Self {
        self.sandwich(z, self.params.phase_neg(z))
    }

    /// `γ_z(A) = W_{−z/2} A W_{−z/2}`.
    pub fn modulate(&self, z: usize) -> Self {
        let h = self.params.phase_neg(self.params.phase_half(z));
        self.sandwich(h, h)
    }

    /// `P A P`.
    pub fn parity_conjugate(&self) -> Self {
        let p = self.params;
        let d = p.dim();
        let neg: Vec<usize> = (0..d).map(|s| p.pos_neg(s)).collect();
        Operator { params: p, matrix: DMatrix::from_fn(d, d, |s, t| self.matrix[(neg[s], neg[t])]) }
    }

    /// `A^{∗QHA} = P A* P`.
    pub fn involute(&self) -> Self {
        self.adjoint().parity_conjugate()
    }
}

pub fn shift_operator<T: Real>(a: &Operator<T>, z: &PhasePoint) -> Result<Operator<T>> {
    Ok(a.shift(z.index(a.params())?))
}

pub fn modulate_operator<T: Real>(a: &Operator<T>, z: &PhasePoint) -> Result<Operator<T>> {
    Ok(a.modulate(z.index(a.params())?))
}

pub fn involute_operator<T: Real>(a: &Operator<T>) -> Operator<T> {
    a.involute()
}

pub fn schatten_norm<T: Real>(a: &Operator<T>, p: f64) -> Result<T> {
    a.schatten_norm(p)
}

/// `φ ⊗ ψ`, the matrix `(s, t) ↦ φ(s) conj ψ(t)`.
pub fn rank_one<T: Real>(phi: &StateVector<T>, psi: &StateVector<T>) -> Result<Operator<T>> {
    phi.params().ensure_same(psi.params())?;
    Ok(Operator::from_fn(*phi.params(), |s, t| phi.at(s) * psi.at(t).conj()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{random_operator, random_state};
    use crate::weyl::{parity, WeylTable};

    fn p9() -> ModelParams {
        ModelParams::new(1, 9).unwrap()
    }

    #[test]
    fn sandwich_matches_dense_products() {
        for (n, m) in [(1, 9), (2, 3)] {
            let p = ModelParams::new(n, m).unwrap();
            let table = WeylTable::<f64>::new(p);
            let a = random_operator::<f64>(p, 3);
            for (za, zb) in [(0, 0), (5, 17), (p.phase_len() - 1, 30), (44, 44)] {
                let dense = table.get(za).compose(&a).unwrap().compose(table.get(zb)).unwrap();
                assert!(a.sandwich(za, zb).max_abs_diff(&dense) < 1e-12, "n={n} N={m}");
            }
        }
    }

    #[test]
    fn shifts_compose_and_invert() {
        let p = p9();
        let a = random_operator::<f64>(p, 1);
        assert!(a.shift(0).max_abs_diff(&a) < 1e-15);
        assert!(a.modulate(0).max_abs_diff(&a) < 1e-15);
        for z in [1usize, 13, 40, 80] {
            assert!(a.shift(p.phase_neg(z)).shift(z).max_abs_diff(&a) < 1e-12);
            let w = (z * 7 + 3) % p.phase_len();
            let lhs = a.shift(w).shift(z);
            assert!(lhs.max_abs_diff(&a.shift(p.phase_add(z, w))) < 1e-12);
        }
    }

    #[test]
    fn unitary_actions_preserve_schatten_norms() {
        let p = p9();
        let a = random_operator::<f64>(p, 2);
        for q in [1.0, 2.0, 3.0, f64::INFINITY] {
            let base = a.schatten_norm(q).unwrap();
            for z in [4usize, 31, 77] {
                assert!((a.shift(z).schatten_norm(q).unwrap() - base).abs() < 1e-10 * base.max(1.0));
                assert!((a.modulate(z).schatten_norm(q).unwrap() - base).abs() < 1e-10 * base.max(1.0));
            }
        }
    }

    #[test]
    fn involution_properties() {
        let p = p9();
        let a = random_operator::<f64>(p, 4);
        assert!(a.involute().involute().max_abs_diff(&a) < 1e-15);
        let par = parity::<f64>(p);
        assert!(par.involute().max_abs_diff(&par) < 1e-15);
    }

    #[test]
    fn schatten_basics() {
        let p = p9();
        let id = Operator::<f64>::identity(p);
        assert!((id.schatten_norm(1.0).unwrap() - 9.0).abs() < 1e-12);
        assert!((id.schatten_norm(f64::INFINITY).unwrap() - 1.0).abs() < 1e-12);
        assert!((id.schatten_norm(2.0).unwrap() - 3.0).abs() < 1e-12);
        assert!(id.schatten_norm(0.9).is_err());
        assert_eq!(Operator::<f64>::zeros(p).schatten_norm(1.5).unwrap(), 0.0);
    }

    #[test]
    fn rank_one_properties() {
        let p = p9();
        let phi = random_state::<f64>(p, 1);
        let psi = random_state::<f64>(p, 2);
        let proj = rank_one(&phi, &phi).unwrap();
        assert!(proj.compose(&proj).unwrap().max_abs_diff(&proj) < 1e-12);
        let r = rank_one(&phi.scale(C::new(2.0, 0.0)), &psi).unwrap();
        assert!((r.trace() - phi.scale(C::new(2.0, 0.0)).inner(&psi).unwrap()).norm() < 1e-14);
        let sv = r.singular_values();
        assert!((sv[0] - 2.0).abs() < 1e-12);
        assert!(sv[1..].iter().all(|&s| s < 1e-12));
        assert!((r.schatten_norm(1.0).unwrap() - 2.0).abs() < 1e-12);
    }
}
