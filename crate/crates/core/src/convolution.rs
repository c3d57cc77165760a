//! The three convolutions of quantum harmonic analysis and localization operators.

use nalgebra::{ComplexField, DMatrix};

use crate::error::Result;
use crate::function::PhaseFunction;
use crate::model::{ModelParams, PhasePoint};
use crate::operator::Operator;
use crate::scalar::{czero, Real, RootsOfUnity, C};
use crate::state::StateVector;

/// `(1/d) Σ_z w_z α_z(A)` over an arbitrary weight table `w`, in `O(d³)`.
///
/// `α_z(A)(s, t) = ω^{ξ·(s−t)} A(s−x, t−x)`, so for each `x` the sum over `ξ`
/// collapses to a Fourier coefficient of `w(x, ·)` at `s − t`.
fn weighted_shift_sum<T: Real>(p: ModelParams, weights: &[C<T>], a: &Operator<T>) -> Operator<T> {
    let d = p.dim();
    let roots = RootsOfUnity::<T>::new(p.modulus());
    let mut out = DMatrix::from_element(d, d, czero::<T>());
    // hat[x][u] = Σ_ξ w(x, ξ) ω^{ξ·u}
    let mut hat = vec![czero::<T>(); d];
    for x in 0..d {
        let row = &weights[x * d..(x + 1) * d];
        if row.iter().all(|&v| v == czero()) {
            continue;
        }
        for (u, slot) in hat.iter_mut().enumerate() {
            *slot = row.iter().enumerate().fold(czero(), |acc, (k, &w)| acc + w * roots.pow(p.pos_dot(k, u) as i64));
        }
        for s in 0..d {
            let sx = p.pos_sub(s, x);
            for t in 0..d {
                out[(s, t)] += hat[p.pos_sub(s, t)] * a.at(sx, p.pos_sub(t, x));
            }
        }
    }
    let w = T::one() / T::lit(d as f64);
    Operator::from_matrix_unchecked(p, out.map(|v| v.scale(w)))
}

/// `f ∗ A = (1/d) Σ_z f(z) α_z(A)`.
pub fn conv_fn_op<T: Real>(f: &PhaseFunction<T>, a: &Operator<T>) -> Result<Operator<T>> {
    f.params().ensure_same(a.params())?;
    Ok(weighted_shift_sum(*f.params(), f.values(), a))
}

/// `(A ∗ B)(z) = tr(A α_z(P B P))`.
pub fn conv_op_op<T: Real>(a: &Operator<T>, b: &Operator<T>) -> Result<PhaseFunction<T>> {
    a.ensure_compatible(b)?;
    let p = *a.params();
    let d = p.dim();
    let roots = RootsOfUnity::<T>::new(p.modulus());
    let q = b.parity_conjugate();
    // diff[s][t] = t − s
    let diff: Vec<Vec<usize>> = (0..d).map(|s| (0..d).map(|t| p.pos_sub(t, s)).collect()).collect();
    Ok(PhaseFunction::from_fn(p, |z| {
        let (x, k) = p.split(z);
        // tr(A M) = Σ_{s,t} A(s,t) M(t,s) with M = α_z(Q).
        let mut acc = czero::<T>();
        for (s, row) in diff.iter().enumerate() {
            let sx = p.pos_sub(s, x);
            for (t, &ts) in row.iter().enumerate() {
                let m = roots.pow(p.pos_dot(k, ts) as i64) * q.at(p.pos_sub(t, x), sx);
                acc += a.at(s, t) * m;
            }
        }
        acc
    }))
}

/// A finitely supported complex measure `Σ_k w_k δ_{z_k}`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct WeightedPointMass<T: Real> {
    pub points: Vec<(PhasePoint, C<T>)>,
}

impl<T: Real> WeightedPointMass<T> {
    pub fn new(points: Vec<(PhasePoint, C<T>)>) -> Self {
        WeightedPointMass { points }
    }

    /// The measure with density `f` against counting measure.
    pub fn from_density(f: &PhaseFunction<T>) -> Self {
        let p = *f.params();
        WeightedPointMass { points: (0..p.phase_len()).map(|z| (p.point(z), f.at(z))).collect() }
    }
}

/// `μ ∗ A = (1/d) Σ_k w_k α_{z_k}(A)`. An empty measure gives the zero operator.
pub fn conv_measure_op<T: Real>(mu: &WeightedPointMass<T>, a: &Operator<T>) -> Result<Operator<T>> {
    let p = *a.params();
    let mut weights = vec![czero::<T>(); p.phase_len()];
    for (z, w) in &mu.points {
        weights[z.index(&p)?] += *w;
    }
    Ok(weighted_shift_sum(p, &weights, a))
}

/// `𝒜_g^{φ,ψ} η = (1/d) Σ_z g(z) ⟨η, W_z ψ⟩ W_z φ`, summed directly.
pub fn localization_operator<T: Real>(
    g: &PhaseFunction<T>,
    phi: &StateVector<T>,
    psi: &StateVector<T>,
) -> Result<Operator<T>> {
    g.params().ensure_same(phi.params())?;
    g.params().ensure_same(psi.params())?;
    let p = *g.params();
    let d = p.dim();
    let roots = RootsOfUnity::<T>::new(p.modulus());
    let h = p.two_inv() as i64;
    let mut out = DMatrix::from_element(d, d, czero::<T>());
    let mut wphi = vec![czero::<T>(); d];
    let mut wpsi = vec![czero::<T>(); d];
    for z in 0..p.phase_len() {
        let gz = g.at(z);
        if gz == czero() {
            continue;
        }
        let (x, k) = p.split(z);
        let half = h * p.pos_dot(x, k) as i64;
        for y in 0..d {
            let ph = roots.pow(p.pos_dot(k, y) as i64 - half);
            let src = p.pos_sub(y, x);
            wphi[y] = ph * phi.at(src);
            wpsi[y] = ph * psi.at(src);
        }
        for s in 0..d {
            let left = gz * wphi[s];
            for t in 0..d {
                out[(s, t)] += left * wpsi[t].conj();
            }
        }
    }
    let w = T::one() / T::lit(d as f64);
    Ok(Operator::from_matrix_unchecked(p, out.map(|v| v.scale(w))))
}
