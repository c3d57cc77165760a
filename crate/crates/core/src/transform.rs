//! Fourier–Weyl transform, Weyl quantization and the short-time Fourier transform.

use nalgebra::{ComplexField, DMatrix};

use crate::error::Result;
use crate::function::PhaseFunction;
use crate::operator::Operator;
use crate::scalar::{czero, modulus, Real, RootsOfUnity};
use crate::state::StateVector;

/// `F_W(A)(z) = tr(A W_z) = Σ_s A(s, s+x) ω^{ξ·(s+x) − x·ξ/2}`.
pub fn fourier_weyl<T: Real>(a: &Operator<T>) -> PhaseFunction<T> {
    let p = *a.params();
    let d = p.dim();
    let roots = RootsOfUnity::<T>::new(p.modulus());
    let h = p.two_inv() as i64;
    let m = a.matrix();
    PhaseFunction::from_fn(p, |z| {
        let (x, k) = p.split(z);
        let half = h * p.pos_dot(x, k) as i64;
        (0..d).fold(czero(), |acc, s| {
            let t = p.pos_add(s, x);
            acc + m[(s, t)] * roots.pow(p.pos_dot(k, t) as i64 - half)
        })
    })
}

/// `F_W⁻¹ f = (1/d) Σ_z f(z) W_{−z}`, the exact inverse of [`fourier_weyl`].
pub fn inv_fourier_weyl<T: Real>(f: &PhaseFunction<T>) -> Operator<T> {
    let p = *f.params();
    let d = p.dim();
    let roots = RootsOfUnity::<T>::new(p.modulus());
    let h = p.two_inv() as i64;
    let mut out = DMatrix::from_element(d, d, czero::<T>());
    // W_{−z} has entry ω^{−ξ·y − x·ξ/2} at (y, y + x).
    for z in 0..p.phase_len() {
        let fz = f.at(z);
        if fz == czero() {
            continue;
        }
        let (x, k) = p.split(z);
        let half = h * p.pos_dot(x, k) as i64;
        for y in 0..d {
            out[(y, p.pos_add(y, x))] += fz * roots.pow(-(p.pos_dot(k, y) as i64) - half);
        }
    }
    let w = T::one() / T::lit(d as f64);
    Operator::from_matrix_unchecked(p, out.map(|v| v.scale(w)))
}

/// `A_f = P F_W⁻¹(F_σ f) P`.
pub fn weyl_quantize<T: Real>(f: &PhaseFunction<T>) -> Operator<T> {
    inv_fourier_weyl(&f.symplectic_fourier()).parity_conjugate()
}

/// Inverse of [`weyl_quantize`]: `F_σ(F_W(P A P))`.
pub fn weyl_symbol<T: Real>(a: &Operator<T>) -> PhaseFunction<T> {
    fourier_weyl(&a.parity_conjugate()).symplectic_fourier()
}

/// `V_g f(x, ξ) = Σ_t f(t) conj g(t − x) ω^{−ξ·t}`.
pub fn stft<T: Real>(f: &StateVector<T>, g: &StateVector<T>) -> Result<PhaseFunction<T>> {
    f.params().ensure_same(g.params())?;
    let p = *f.params();
    let d = p.dim();
    let roots = RootsOfUnity::<T>::new(p.modulus());
    Ok(PhaseFunction::from_fn(p, |z| {
        let (x, k) = p.split(z);
        (0..d)
            .fold(czero(), |acc, t| acc + f.at(t) * g.at(p.pos_sub(t, x)).conj() * roots.pow(-(p.pos_dot(k, t) as i64)))
    }))
}

/// Whether `F_W(A)` stays away from zero, with its smallest modulus.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Regularity<T> {
    pub regular: bool,
    pub min_modulus: T,
}

pub fn is_regular<T: Real>(a: &Operator<T>, tol: T) -> Regularity<T> {
    let fw = fourier_weyl(a);
    let min_modulus = fw.values().iter().fold(T::max_value().unwrap_or_else(T::one), |m, &v| m.min(modulus(v)));
    Regularity { regular: min_modulus > tol, min_modulus }
}

/// Kernel of an operator as a function on `(Z_N)^{2n}`: `(s, t) ↦ K_A(s, t)`.
pub fn kernel_function<T: Real>(a: &Operator<T>) -> PhaseFunction<T> {
    let p = *a.params();
    PhaseFunction::from_fn(p, |z| {
        let (s, t) = p.split(z);
        a.at(s, t)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{chirp_state, discrete_gaussian_operator, random_function, random_operator, random_state};
    use crate::model::ModelParams;
    use crate::operator::rank_one;
    use crate::scalar::creal;
    use crate::weyl::{parity, WeylTable};

    fn p9() -> ModelParams {
        ModelParams::new(1, 9).unwrap()
    }

    fn trace_oracle(a: &Operator<f64>, table: &WeylTable<f64>) -> PhaseFunction<f64> {
        PhaseFunction::from_fn(*a.params(), |z| a.compose(table.get(z)).unwrap().trace())
    }

    #[test]
    fn fourier_weyl_matches_trace_oracle() {
        for (n, m) in [(1, 9), (2, 3)] {
            let p = ModelParams::new(n, m).unwrap();
            let table = WeylTable::new(p);
            let a = random_operator::<f64>(p, 8);
            assert!(fourier_weyl(&a).max_abs_diff(&trace_oracle(&a, &table)) < 1e-12);
        }
    }

    #[test]
    fn fourier_weyl_constants() {
        let p = p9();
        let a = random_operator::<f64>(p, 1);
        assert!((fourier_weyl(&a).at(0) - a.trace()).norm() < 1e-14);
        let id = fourier_weyl(&Operator::<f64>::identity(p));
        assert!(id.max_abs_diff(&PhaseFunction::unit(p)) < 1e-12);
    }

    #[test]
    fn inverse_round_trip_and_constants() {
        let p = p9();
        for seed in 0..10 {
            let a = random_operator::<f64>(p, seed);
            assert!(inv_fourier_weyl(&fourier_weyl(&a)).max_abs_diff(&a) < 1e-12);
        }
        let unit = inv_fourier_weyl(&PhaseFunction::<f64>::unit(p));
        assert!(unit.max_abs_diff(&Operator::identity(p)) < 1e-13);
        let ones = inv_fourier_weyl(&PhaseFunction::<f64>::ones(p));
        assert!(ones.max_abs_diff(&parity(p)) < 1e-12);
    }

    #[test]
    fn quantization_constants_and_round_trip() {
        let p = p9();
        assert!(weyl_quantize(&PhaseFunction::<f64>::ones(p)).max_abs_diff(&Operator::identity(p)) < 1e-12);
        assert!(weyl_quantize(&PhaseFunction::<f64>::unit(p)).max_abs_diff(&parity(p)) < 1e-12);
        let f = random_function::<f64>(p, 2);
        assert!(weyl_symbol(&weyl_quantize(&f)).max_abs_diff(&f) < 1e-12);
        let a = random_operator::<f64>(p, 3);
        assert!(weyl_quantize(&weyl_symbol(&a)).max_abs_diff(&a) < 1e-12);
    }

    #[test]
    fn stft_basics_and_rank_one_relation() {
        let p = p9();
        let g = random_state::<f64>(p, 4);
        let phi = random_state::<f64>(p, 5);
        assert!((stft(&g, &g).unwrap().at(0) - creal(1.0)).norm() < 1e-14);
        let v = stft(&phi, &g).unwrap();
        let fw = fourier_weyl(&rank_one(&phi, &g).unwrap());
        let roots = RootsOfUnity::<f64>::new(9);
        for z in 0..p.phase_len() {
            let (x, k) = p.split(z);
            let phase = roots.pow(p.two_inv() as i64 * p.pos_dot(x, k) as i64);
            assert!((fw.at(z) - phase * v.at(p.phase_neg(z))).norm() < 1e-12);
        }
        let energy: f64 = v.values().iter().map(|c| c.norm_sqr()).sum();
        assert!((energy - 9.0).abs() < 1e-11);
    }

    #[test]
    fn regularity_of_fixtures() {
        let p = p9();
        assert!(is_regular(&discrete_gaussian_operator::<f64>(p), 1e-8).regular);
        let chirp = chirp_state::<f64>(p);
        let r = is_regular(&rank_one(&chirp, &chirp).unwrap(), 1e-8);
        assert!(!r.regular);
        let zero = is_regular(&Operator::<f64>::zeros(p), 0.0);
        assert!(!zero.regular && zero.min_modulus == 0.0);
    }

    #[test]
    fn kernel_matches_entries() {
        let p = p9();
        let a = random_operator::<f64>(p, 9);
        let k = kernel_function(&a);
        assert_eq!(k.at(p.join(2, 5)), a.at(2, 5));
    }
}
