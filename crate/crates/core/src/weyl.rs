//! Weyl operators, parity and the canonical commutation relations.

use nalgebra::DMatrix;

use crate::error::Result;
use crate::model::{ModelParams, PhasePoint};
use crate::operator::Operator;
use crate::scalar::{cone, czero, Real, RootsOfUnity, C};

/// Dense `W_z` for a flat phase index:
/// `(W_z φ)(y) = ω^{ξ·y − x·ξ/2} φ(y − x)`.
pub fn weyl_at<T: Real>(p: ModelParams, z: usize) -> Operator<T> {
    let roots = RootsOfUnity::<T>::new(p.modulus());
    weyl_with(&roots, p, z)
}

fn weyl_with<T: Real>(roots: &RootsOfUnity<T>, p: ModelParams, z: usize) -> Operator<T> {
    let d = p.dim();
    let (x, k) = p.split(z);
    let half = p.two_inv() as i64 * p.pos_dot(x, k) as i64;
    let mut m = DMatrix::from_element(d, d, czero::<T>());
    for y in 0..d {
        m[(y, p.pos_sub(y, x))] = roots.pow(p.pos_dot(k, y) as i64 - half);
    }
    Operator::from_matrix_unchecked(p, m)
}

pub fn weyl_operator<T: Real>(z: &PhasePoint, p: &ModelParams) -> Result<Operator<T>> {
    Ok(weyl_at(*p, z.index(p)?))
}

/// `(Pφ)(s) = φ(−s)`.
pub fn parity<T: Real>(p: ModelParams) -> Operator<T> {
    let d = p.dim();
    let mut m = DMatrix::from_element(d, d, czero::<T>());
    for s in 0..d {
        m[(s, p.pos_neg(s))] = cone();
    }
    Operator::from_matrix_unchecked(p, m)
}

/// Phase in `W_z W_w = c · W_{z+w}`, namely `c = ω^{−σ(z,w)/2}`.
pub fn ccr_phase<T: Real>(p: &ModelParams, z: usize, w: usize) -> C<T> {
    let roots = RootsOfUnity::<T>::new(p.modulus());
    roots.pow(-(p.two_inv() as i64 * p.symplectic_index(z, w) as i64))
}

/// All `d²` Weyl matrices, built once and read-only afterwards.
#[derive(Clone, Debug)]
pub struct WeylTable<T: Real> {
    params: ModelParams,
    ops: Vec<Operator<T>>,
}

impl<T: Real> WeylTable<T> {
    pub fn new(p: ModelParams) -> Self {
        let roots = RootsOfUnity::<T>::new(p.modulus());
        let ops = (0..p.phase_len()).map(|z| weyl_with(&roots, p, z)).collect();
        WeylTable { params: p, ops }
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn get(&self, z: usize) -> &Operator<T> {
        &self.ops[z]
    }

    pub fn iter(&self) -> impl Iterator<Item = &Operator<T>> {
        self.ops.iter()
    }

    /// Largest entrywise defect of the CCR over all ordered pairs `(z, w)`.
    pub fn ccr_defect(&self) -> T {
        let p = self.params;
        let roots = RootsOfUnity::<T>::new(p.modulus());
        let h = p.two_inv() as i64;
        let mut worst = T::zero();
        for z in 0..p.phase_len() {
            for w in 0..p.phase_len() {
                let prod = self.ops[z].matrix() * self.ops[w].matrix();
                let phase = roots.pow(-h * p.symplectic_index(z, w) as i64);
                let target = self.ops[p.phase_add(z, w)].matrix();
                let defect = prod
                    .iter()
                    .zip(target.iter())
                    .fold(T::zero(), |m, (&a, &b)| m.max(crate::scalar::modulus(a - b * phase)));
                worst = worst.max(defect);
            }
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::gaussian_state;

    #[test]
    fn origin_is_identity_and_weyl_is_unitary() {
        let p = ModelParams::new(1, 9).unwrap();
        let id = Operator::<f64>::identity(p);
        assert!(weyl_at::<f64>(p, 0).max_abs_diff(&id) < 1e-15);
        for z in 0..p.phase_len() {
            let w = weyl_at::<f64>(p, z);
            assert!(w.compose(&w.adjoint()).unwrap().max_abs_diff(&id) < 1e-12);
            assert!(w.adjoint().max_abs_diff(&weyl_at(p, p.phase_neg(z))) < 1e-12);
            assert!((w.schatten_norm(f64::INFINITY).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn ccr_holds_for_small_models() {
        for (n, m) in [(1, 3), (1, 5), (2, 3)] {
            let p = ModelParams::new(n, m).unwrap();
            assert!(WeylTable::<f64>::new(p).ccr_defect() < 1e-12, "n={n} N={m}");
        }
    }

    #[test]
    fn parity_properties() {
        let p = ModelParams::new(1, 9).unwrap();
        let par = parity::<f64>(p);
        let id = Operator::<f64>::identity(p);
        assert!(par.compose(&par).unwrap().max_abs_diff(&id) < 1e-15);
        for z in 0..p.phase_len() {
            let lhs = par.compose(&weyl_at(p, z)).unwrap().compose(&par).unwrap();
            assert!(lhs.max_abs_diff(&weyl_at(p, p.phase_neg(z))) < 1e-12);
        }
        let g = gaussian_state::<f64>(p);
        assert!(par.apply(&g).unwrap().max_abs_diff(&g) < 1e-12);
    }

    #[test]
    fn point_api_matches_index_api() {
        let p = ModelParams::new(1, 5).unwrap();
        let z = PhasePoint::new(&p, &[2], &[-1]).unwrap();
        let a = weyl_operator::<f64>(&z, &p).unwrap();
        assert_eq!(a, weyl_at(p, z.index(&p).unwrap()));
        let bad = PhasePoint { x: vec![1, 2], xi: vec![0, 0] };
        assert!(weyl_operator::<f64>(&bad, &p).is_err());
    }
}
