//! Quantum Segal algebra norms built from function-level Segal norms.

use crate::algebra::pair::QhaPair;
use crate::convolution::conv_fn_op;
use crate::error::{QhaError, Result};
use crate::function::PhaseFunction;
use crate::norms::segal::{NormFunctional, NormKind};
use crate::operator::Operator;
use crate::scalar::{modulus, Real};
use crate::transform::{fourier_weyl, is_regular, weyl_quantize, weyl_symbol};

/// Smallest `|F_W A|` accepted for a reference operator.
pub const DEFAULT_REGULAR_TOL: f64 = 1e-8;

fn ensure_function_norm<T: Real>(n: &NormFunctional<T>) -> Result<()> {
    if n.kind() == NormKind::Function {
        Ok(())
    } else {
        Err(QhaError::Parse { location: n.name().into(), message: "expected a function-level norm".into() })
    }
}

fn ensure_regular<T: Real>(a: &Operator<T>) -> Result<()> {
    let r = is_regular(a, T::lit(DEFAULT_REGULAR_TOL));
    if r.regular {
        Ok(())
    } else {
        Err(QhaError::NotRegular { min_modulus: r.min_modulus.as_f64(), tol: DEFAULT_REGULAR_TOL })
    }
}

/// Recovers `g` from `B = g ∗ A` through `F_σ g = F_W B / F_W A`.
pub fn recover_symbol<T: Real>(b: &Operator<T>, a: &Operator<T>) -> Result<PhaseFunction<T>> {
    b.ensure_compatible(a)?;
    ensure_regular(a)?;
    let fa = fourier_weyl(a);
    let fb = fourier_weyl(b);
    let ratio = fb.zip_with(&fa, |x, y| x / y)?;
    Ok(ratio.symplectic_fourier())
}

/// `‖(f, g∗A)‖ = ‖f‖_S + ‖A‖_{T¹} ‖g‖_S`.
pub fn induced_qsa_norm<T: Real>(
    f: &PhaseFunction<T>,
    g: &PhaseFunction<T>,
    a: &Operator<T>,
    base: &NormFunctional<T>,
) -> Result<T> {
    ensure_function_norm(base)?;
    ensure_regular(a)?;
    Ok(base.eval_function(f)? + a.schatten_norm(1.0)? * base.eval_function(g)?)
}

/// The element `(f, g ∗ A)` of `S^A`.
pub fn induced_pair<T: Real>(f: &PhaseFunction<T>, g: &PhaseFunction<T>, a: &Operator<T>) -> Result<QhaPair<T>> {
    QhaPair::new(f.clone(), conv_fn_op(g, a)?)
}

/// Pair-level version of [`induced_qsa_norm`]; `g` is recovered from the operator part.
pub fn induced_norm_functional<T: Real>(a: Operator<T>, base: NormFunctional<T>) -> Result<NormFunctional<T>> {
    ensure_function_norm(&base)?;
    ensure_regular(&a)?;
    let a1 = a.schatten_norm(1.0)?;
    let name = format!("induced[{}]", base.name());
    Ok(NormFunctional::pair(name, move |q: &QhaPair<T>| {
        let g = recover_symbol(&q.a, &a).expect("reference operator checked regular");
        base.eval_function(&q.f).expect("function norm") + a1 * base.eval_function(&g).expect("function norm")
    }))
}

/// `‖(f, A_{g̃})‖ = ‖f + g‖_{S₁} + ‖f − g‖_{S₂}`.
pub fn twisted_qsa_norm<T: Real>(
    f: &PhaseFunction<T>,
    g: &PhaseFunction<T>,
    s1: &NormFunctional<T>,
    s2: &NormFunctional<T>,
) -> Result<T> {
    ensure_function_norm(s1)?;
    ensure_function_norm(s2)?;
    Ok(s1.eval_function(&f.add(g)?)? + s2.eval_function(&f.sub(g)?)?)
}

/// The element `(f, A_{g̃})`.
pub fn twisted_pair<T: Real>(f: &PhaseFunction<T>, g: &PhaseFunction<T>) -> Result<QhaPair<T>> {
    QhaPair::new(f.clone(), weyl_quantize(&g.reflect()))
}

/// Inverse of the operator slot of [`twisted_pair`].
pub fn twisted_symbol<T: Real>(a: &Operator<T>) -> PhaseFunction<T> {
    weyl_symbol(a).reflect()
}

pub fn twisted_norm_functional<T: Real>(s1: NormFunctional<T>, s2: NormFunctional<T>) -> NormFunctional<T> {
    let name = format!("twisted[{},{}]", s1.name(), s2.name());
    NormFunctional::pair(name, move |q: &QhaPair<T>| {
        let g = twisted_symbol(&q.a);
        twisted_qsa_norm(&q.f, &g, &s1, &s2).expect("function-level norms")
    })
}

/// Largest `|F_W A|⁻¹`; the conditioning of symbol recovery.
pub fn recovery_condition<T: Real>(a: &Operator<T>) -> T {
    let fa = fourier_weyl(a);
    fa.values().iter().fold(T::zero(), |m, &v| m.max(T::one() / modulus(v)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{chirp_state, discrete_gaussian_operator, random_function};
    use crate::model::ModelParams;
    use crate::norms::segal::s_p_norm;
    use crate::operator::rank_one;

    fn s(p: f64) -> NormFunctional<f64> {
        NormFunctional::function(format!("s_{p}"), move |f: &PhaseFunction<f64>| s_p_norm(f, p).unwrap())
    }

    #[test]
    fn recovery_round_trip() {
        let p = ModelParams::new(1, 9).unwrap();
        let a = discrete_gaussian_operator::<f64>(p);
        let g = random_function::<f64>(p, 1);
        let b = conv_fn_op(&g, &a).unwrap();
        assert!(recover_symbol(&b, &a).unwrap().max_abs_diff(&g) < 1e-9);
        let chirp = chirp_state::<f64>(p);
        let singular = rank_one(&chirp, &chirp).unwrap();
        assert!(matches!(recover_symbol(&b, &singular), Err(QhaError::NotRegular { .. })));
    }

    #[test]
    fn induced_norm_values() {
        let p = ModelParams::new(1, 9).unwrap();
        let a = discrete_gaussian_operator::<f64>(p);
        let g = random_function::<f64>(p, 2);
        let zero = PhaseFunction::zeros(p);
        let v = induced_qsa_norm(&zero, &g, &a, &s(2.0)).unwrap();
        assert!((v - a.schatten_norm(1.0).unwrap() * s_p_norm(&g, 2.0).unwrap()).abs() < 1e-12);
        let nf = induced_norm_functional(a.clone(), s(2.0)).unwrap();
        let f = random_function::<f64>(p, 3);
        let direct = induced_qsa_norm(&f, &g, &a, &s(2.0)).unwrap();
        let via_pair = nf.eval_pair(&induced_pair(&f, &g, &a).unwrap()).unwrap();
        assert!((direct - via_pair).abs() < 1e-8 * direct);
    }

    #[test]
    fn twisted_norm_special_cases_and_product() {
        let p = ModelParams::new(1, 5).unwrap();
        let f = random_function::<f64>(p, 4);
        let zero = PhaseFunction::zeros(p);
        let t = twisted_qsa_norm(&f, &zero, &s(2.0), &s(4.0)).unwrap();
        assert!((t - s_p_norm(&f, 2.0).unwrap() - s_p_norm(&f, 4.0).unwrap()).abs() < 1e-12);
        let same = twisted_qsa_norm(&f, &f, &s(2.0), &s(4.0)).unwrap();
        assert!((same - 2.0 * s_p_norm(&f, 2.0).unwrap()).abs() < 1e-12);

        let g = random_function::<f64>(p, 5);
        let h = random_function::<f64>(p, 6);
        let j = random_function::<f64>(p, 7);
        let prod = twisted_pair(&f, &g).unwrap().product(&twisted_pair(&h, &j).unwrap()).unwrap();
        let ef = f.convolve(&h).unwrap().add(&g.convolve(&j).unwrap()).unwrap();
        let eg = f.convolve(&j).unwrap().add(&g.convolve(&h).unwrap()).unwrap();
        assert!(prod.f.max_abs_diff(&ef) < 1e-10);
        assert!(twisted_symbol(&prod.a).max_abs_diff(&eg) < 1e-10);
    }
}
