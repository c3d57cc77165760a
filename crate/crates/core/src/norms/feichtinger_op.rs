//! Feichtinger-algebra norms on operators and their mutual equivalence.

use serde::{Deserialize, Serialize};

use crate::convolution::conv_op_op;
use crate::error::{QhaError, Result};
use crate::fixtures::random_operator;
use crate::function::PhaseFunction;
use crate::model::ModelParams;
use crate::norms::segal::feichtinger_norm;
use crate::operator::Operator;
use crate::scalar::{czero, modulus, Real, C};
use crate::state::StateVector;
use crate::transform::{fourier_weyl, kernel_function, stft};

fn ensure_window<T: Real>(a: &Operator<T>, b: &Operator<T>) -> Result<()> {
    a.ensure_compatible(b)?;
    if b.max_abs() == T::zero() {
        return Err(QhaError::ZeroWindow);
    }
    Ok(())
}

/// `‖A‖_{B,γ} = (1/d) Σ_z ‖(γ_z A) ∗ B‖₁`.
pub fn feichtinger_op_norm_gamma<T: Real>(a: &Operator<T>, b: &Operator<T>) -> Result<T> {
    ensure_window(a, b)?;
    let p = *a.params();
    let mut total = T::zero();
    for z in 0..p.phase_len() {
        total += conv_op_op(&a.modulate(z), b)?.lp_norm(1.0)?;
    }
    Ok(total / T::lit(p.dim() as f64))
}

/// The operator STFT `V_B A(z, z′) = tr(A (γ_{z′} α_z B)*)`, indexed `z·d² + z′`.
pub fn operator_stft<T: Real>(a: &Operator<T>, b: &Operator<T>) -> Result<Vec<C<T>>> {
    a.ensure_compatible(b)?;
    let p = *a.params();
    let n = p.phase_len();
    let mut grid = Vec::with_capacity(n * n);
    for z in 0..n {
        let shifted = b.shift(z);
        for w in 0..n {
            let m = shifted.modulate(w);
            let tr = a.matrix().iter().zip(m.matrix().iter()).fold(czero::<T>(), |acc, (&x, &y)| acc + x * y.conj());
            grid.push(tr);
        }
    }
    Ok(grid)
}

/// `‖A‖_{B,αγ} = (1/d²) Σ_{z,z′} |V_B A(z, z′)|`.
pub fn feichtinger_op_norm_alphagamma<T: Real>(a: &Operator<T>, b: &Operator<T>) -> Result<T> {
    ensure_window(a, b)?;
    let d = T::lit(a.params().dim() as f64);
    let sum = operator_stft(a, b)?.iter().fold(T::zero(), |s, &v| s + modulus(v));
    Ok(sum / (d * d))
}

/// Feichtinger norm of `F_W(A)` with window `F_W(G)`.
pub fn feichtinger_op_norm_fw<T: Real>(a: &Operator<T>, g: &Operator<T>) -> Result<T> {
    ensure_window(a, g)?;
    feichtinger_norm(&fourier_weyl(a), &fourier_weyl(g))
}

/// Feichtinger norm of the kernel of `A` with the kernel of `G` as window.
pub fn feichtinger_op_norm_kernel<T: Real>(a: &Operator<T>, g: &Operator<T>) -> Result<T> {
    ensure_window(a, g)?;
    feichtinger_norm(&kernel_function(a), &kernel_function(g))
}

/// Feichtinger norm of a state: `(1/d) Σ_z |V_g φ(z)| / ‖g‖`. Never below `‖φ‖`.
pub fn state_feichtinger_norm<T: Real>(phi: &StateVector<T>, g: &StateVector<T>) -> Result<T> {
    let gn = g.norm();
    if gn == T::zero() {
        return Err(QhaError::ZeroWindow);
    }
    let v: PhaseFunction<T> = stft(phi, g)?;
    let d = T::lit(phi.params().dim() as f64);
    Ok(v.values().iter().fold(T::zero(), |s, &x| s + modulus(x)) / (d * gn))
}

/// `Σᵢ sᵢ s0(uᵢ) s0(vᵢ)` over the singular value decomposition `A = Σ sᵢ uᵢ ⊗ vᵢ`.
///
/// The cost of one particular decomposition, hence an upper bound for the
/// infimum over all of them.
pub fn svd_fin_bound<T: Real>(a: &Operator<T>, s0: impl Fn(&StateVector<T>) -> T) -> T {
    let p = *a.params();
    let svd = a.matrix().clone().svd(true, true);
    let u = svd.u.expect("requested");
    let vt = svd.v_t.expect("requested");
    let mut total = T::zero();
    for (i, &s) in svd.singular_values.iter().enumerate() {
        if s == T::zero() {
            continue;
        }
        let ui = StateVector::from_fn(p, |k| u[(k, i)]);
        let vi = StateVector::from_fn(p, |k| vt[(i, k)].conj());
        total += s * s0(&ui) * s0(&vi);
    }
    total
}

/// Ratio bounds `‖A‖_a / ‖A‖_b` over an operator family.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub norm_a: String,
    pub norm_b: String,
    pub ratio_min: f64,
    pub ratio_max: f64,
    pub family_size: usize,
    pub seed: u64,
}

impl EquivalenceReport {
    /// `ratio_max / ratio_min`; finite iff the norms are equivalent on the family.
    pub fn spread(&self) -> f64 {
        self.ratio_max / self.ratio_min
    }

    pub fn bounded(&self) -> bool {
        self.ratio_min > 0.0 && self.ratio_max.is_finite() && self.ratio_min <= self.ratio_max
    }
}

/// `size` random operators drawn from `seed`.
pub fn operator_family<T: Real>(p: ModelParams, size: usize, seed: u64) -> Vec<Operator<T>> {
    (0..size as u64).map(|i| random_operator(p, seed.wrapping_mul(1_000_003).wrapping_add(i))).collect()
}

pub type OperatorNorm<'a, T> = (&'a str, &'a dyn Fn(&Operator<T>) -> Result<T>);

pub fn equivalence_report<T: Real>(
    a: OperatorNorm<'_, T>,
    b: OperatorNorm<'_, T>,
    family: &[Operator<T>],
    seed: u64,
) -> Result<EquivalenceReport> {
    let mut lo = f64::INFINITY;
    let mut hi = 0.0f64;
    for op in family {
        let r = (a.1)(op)?.as_f64() / (b.1)(op)?.as_f64();
        lo = lo.min(r);
        hi = hi.max(r);
    }
    Ok(EquivalenceReport {
        norm_a: a.0.into(),
        norm_b: b.0.into(),
        ratio_min: lo,
        ratio_max: hi,
        family_size: family.len(),
        seed,
    })
}

/// The four operator norms with a common window, evaluated on each family member.
/// Rows follow `FEICHTINGER_OP_NORMS`.
pub const FEICHTINGER_OP_NORMS: [&str; 4] = ["fourier_weyl", "gamma", "alphagamma", "kernel"];

pub fn feichtinger_op_values<T: Real>(a: &Operator<T>, window: &Operator<T>) -> Result<[T; 4]> {
    Ok([
        feichtinger_op_norm_fw(a, window)?,
        feichtinger_op_norm_gamma(a, window)?,
        feichtinger_op_norm_alphagamma(a, window)?,
        feichtinger_op_norm_kernel(a, window)?,
    ])
}

/// All pairwise equivalence reports among [`FEICHTINGER_OP_NORMS`] on one family.
pub fn feichtinger_op_equivalences<T: Real>(
    family: &[Operator<T>],
    window: &Operator<T>,
    seed: u64,
) -> Result<Vec<EquivalenceReport>> {
    let values = family.iter().map(|a| feichtinger_op_values(a, window)).collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            let mut lo = f64::INFINITY;
            let mut hi = 0.0f64;
            for v in &values {
                let r = v[i].as_f64() / v[j].as_f64();
                lo = lo.min(r);
                hi = hi.max(r);
            }
            out.push(EquivalenceReport {
                norm_a: FEICHTINGER_OP_NORMS[i].into(),
                norm_b: FEICHTINGER_OP_NORMS[j].into(),
                ratio_min: lo,
                ratio_max: hi,
                family_size: family.len(),
                seed,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{discrete_gaussian_operator, gaussian_state, random_state};
    use crate::operator::rank_one;
    use crate::scalar::creal;

    fn p5() -> ModelParams {
        ModelParams::new(1, 5).unwrap()
    }

    #[test]
    fn zero_operator_and_zero_window() {
        let p = p5();
        let b = discrete_gaussian_operator::<f64>(p);
        let z = Operator::zeros(p);
        assert_eq!(feichtinger_op_norm_gamma(&z, &b).unwrap(), 0.0);
        assert!(matches!(feichtinger_op_norm_gamma(&b, &z), Err(QhaError::ZeroWindow)));
        assert!(matches!(feichtinger_op_norm_alphagamma(&b, &z), Err(QhaError::ZeroWindow)));
    }

    #[test]
    fn gamma_norm_is_shift_invariant() {
        let p = p5();
        let a = random_operator::<f64>(p, 3);
        let b = discrete_gaussian_operator::<f64>(p);
        let base = feichtinger_op_norm_gamma(&a, &b).unwrap();
        for w in [1, 7, 18] {
            assert!((feichtinger_op_norm_gamma(&a.shift(w), &b).unwrap() - base).abs() < 1e-10);
        }
    }

    #[test]
    fn operator_stft_origin_term() {
        let p = p5();
        let b = random_operator::<f64>(p, 4);
        let grid = operator_stft(&b, &b).unwrap();
        assert!((grid[0] - creal(b.frobenius().powi(2))).norm() < 1e-12);
    }

    #[test]
    fn alphagamma_matches_fourier_side() {
        // |tr(A C*)| = |⟨F_W A, F_W C⟩| and the Weyl sandwiches act on F_W by
        // shifts and modulations, so the two grids agree up to relabeling.
        let p = p5();
        let a = random_operator::<f64>(p, 5);
        let b = random_operator::<f64>(p, 6);
        let lhs = feichtinger_op_norm_alphagamma(&a, &b).unwrap();
        let rhs = feichtinger_op_norm_fw(&a, &b).unwrap();
        assert!((lhs - rhs).abs() < 1e-10 * rhs);
    }

    #[test]
    fn svd_bound_bounds_trace_norm_from_above() {
        let p = ModelParams::new(1, 3).unwrap();
        let g = gaussian_state::<f64>(p);
        let s0 = |v: &StateVector<f64>| state_feichtinger_norm(v, &g).unwrap();
        for seed in 0..10 {
            let a = random_operator::<f64>(p, seed);
            assert!(svd_fin_bound(&a, s0) >= a.schatten_norm(1.0).unwrap() * (1.0 - 1e-12));
        }
        let phi = random_state::<f64>(p, 11);
        let psi = random_state::<f64>(p, 12);
        let r1 = rank_one(&phi, &psi).unwrap();
        assert!((svd_fin_bound(&r1, s0) - s0(&phi) * s0(&psi)).abs() < 1e-10);
    }

    #[test]
    fn equivalences_are_bounded() {
        let p = p5();
        let fam = operator_family::<f64>(p, 6, 1);
        let w = discrete_gaussian_operator::<f64>(p);
        let reps = feichtinger_op_equivalences(&fam, &w, 1).unwrap();
        assert_eq!(reps.len(), 6);
        for r in &reps {
            assert!(r.bounded(), "{r:?}");
        }
        let fw = |a: &Operator<f64>| feichtinger_op_norm_fw(a, &w);
        let k = |a: &Operator<f64>| feichtinger_op_norm_kernel(a, &w);
        let r = equivalence_report(("fw", &fw), ("kernel", &k), &fam, 1).unwrap();
        assert!((r.ratio_min - reps[2].ratio_min).abs() < 1e-12);
    }
}
