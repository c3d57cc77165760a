//! Poisson summation for Weyl quantization on sublattices of phase space.

use serde::{Deserialize, Serialize};

use crate::error::{QhaError, Result};
use crate::function::PhaseFunction;
use crate::model::ModelParams;
use crate::scalar::{modulus, C};
use crate::transform::{fourier_weyl, weyl_quantize};
use crate::Real;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PoissonCheck {
    pub k: u32,
    pub lhs: [f64; 2],
    pub rhs: [f64; 2],
    pub defect: f64,
    pub c_k: f64,
}

fn ensure_divisor(p: &ModelParams, k: u32) -> Result<()> {
    if k == 0 || !p.modulus().is_multiple_of(k) {
        Err(QhaError::NotADivisor { k, modulus: p.modulus() })
    } else {
        Ok(())
    }
}

/// Phase indices whose every coordinate is a multiple of `step`.
pub fn sublattice(p: &ModelParams, step: u32) -> Result<Vec<usize>> {
    ensure_divisor(p, step)?;
    Ok((0..p.phase_len())
        .filter(|&z| {
            let pt = p.point(z);
            pt.x.iter().chain(&pt.xi).all(|&v| v % step == 0)
        })
        .collect())
}

/// `c_K = d / K^{2n}`, the covolume ratio between the lattice and its dual.
pub fn poisson_constant(p: &ModelParams, k: u32) -> Result<f64> {
    ensure_divisor(p, k)?;
    Ok(p.dim() as f64 / (k as f64).powi(2 * p.n() as i32))
}

/// `Σ_{k∈KΛ} F_W(A_g)(k)` against `c_K Σ_{k∈(N/K)Λ} g(k)`.
pub fn poisson_sum_check<T: Real>(g: &PhaseFunction<T>, k: u32) -> Result<PoissonCheck> {
    let p = *g.params();
    let c_k = poisson_constant(&p, k)?;
    let fw = fourier_weyl(&weyl_quantize(g));
    let lhs = sublattice(&p, k)?.into_iter().fold(C::<T>::new(T::zero(), T::zero()), |s, z| s + fw.at(z));
    let dual = sublattice(&p, p.modulus() / k)?.into_iter().fold(C::<T>::new(T::zero(), T::zero()), |s, z| s + g.at(z));
    let rhs = dual.scale(T::lit(c_k));
    Ok(PoissonCheck {
        k,
        lhs: [lhs.re.as_f64(), lhs.im.as_f64()],
        rhs: [rhs.re.as_f64(), rhs.im.as_f64()],
        defect: modulus(lhs - rhs).as_f64(),
        c_k,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::random_function;

    #[test]
    fn sublattice_sizes() {
        let p = ModelParams::new(1, 9).unwrap();
        assert_eq!(sublattice(&p, 1).unwrap().len(), 81);
        assert_eq!(sublattice(&p, 3).unwrap().len(), 9);
        assert_eq!(sublattice(&p, 9).unwrap(), vec![0]);
        assert!(matches!(sublattice(&p, 2), Err(QhaError::NotADivisor { .. })));
    }

    #[test]
    fn random_symbols_satisfy_poisson() {
        let p = ModelParams::new(1, 9).unwrap();
        for seed in 0..3 {
            let g = random_function::<f64>(p, seed);
            for k in [1, 3, 9] {
                assert!(poisson_sum_check(&g, k).unwrap().defect < 1e-9);
            }
        }
    }
}
