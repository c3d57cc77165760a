//! Brute-force oracles shared by unit tests.

use crate::function::PhaseFunction;
use crate::scalar::{czero, Real, RootsOfUnity};

pub use crate::fixtures::random_function;

/// `(1/d) Σ_z f(z) ω^{−σ(w,z)}` as a literal double sum.
pub fn naive_symplectic_fourier<T: Real>(f: &PhaseFunction<T>) -> PhaseFunction<T> {
    let p = *f.params();
    let roots = RootsOfUnity::<T>::new(p.modulus());
    let w = T::one() / T::lit(p.dim() as f64);
    PhaseFunction::from_fn(p, |u| {
        let s = (0..p.phase_len())
            .fold(czero::<T>(), |acc, z| acc + f.at(z) * roots.pow(-(p.symplectic_index(u, z) as i64)));
        s.scale(w)
    })
}
