//! Segal-algebra norms on phase-space functions and the basic pair norms.

use std::fmt;
use std::sync::Arc;

use crate::algebra::pair::QhaPair;
use crate::error::{QhaError, Result};
use crate::function::{lp_norm_values, PhaseFunction};
use crate::operator::Operator;
use crate::scalar::{creal, modulus, Real};
use crate::transform::{fourier_weyl, weyl_quantize};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormKind {
    Function,
    Pair,
}

type FnEval<T> = Arc<dyn Fn(&PhaseFunction<T>) -> T + Send + Sync>;
type PairEval<T> = Arc<dyn Fn(&QhaPair<T>) -> T + Send + Sync>;

#[derive(Clone)]
enum Eval<T: Real> {
    Function(FnEval<T>),
    Pair(PairEval<T>),
}

/// A named norm on functions or on pairs.
#[derive(Clone)]
pub struct NormFunctional<T: Real> {
    name: String,
    eval: Eval<T>,
    star_symmetric: bool,
}

impl<T: Real> fmt::Debug for NormFunctional<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NormFunctional").field("name", &self.name).field("kind", &self.kind()).finish()
    }
}

impl<T: Real> NormFunctional<T> {
    pub fn function(name: impl Into<String>, eval: impl Fn(&PhaseFunction<T>) -> T + Send + Sync + 'static) -> Self {
        NormFunctional { name: name.into(), eval: Eval::Function(Arc::new(eval)), star_symmetric: false }
    }

    pub fn pair(name: impl Into<String>, eval: impl Fn(&QhaPair<T>) -> T + Send + Sync + 'static) -> Self {
        NormFunctional { name: name.into(), eval: Eval::Pair(Arc::new(eval)), star_symmetric: false }
    }

    /// Marks the norm as invariant under the involution, so the axiom checker tests it.
    pub fn star_symmetric(mut self) -> Self {
        self.star_symmetric = true;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> NormKind {
        match self.eval {
            Eval::Function(_) => NormKind::Function,
            Eval::Pair(_) => NormKind::Pair,
        }
    }

    pub fn is_star_symmetric(&self) -> bool {
        self.star_symmetric
    }

    pub fn eval_function(&self, f: &PhaseFunction<T>) -> Result<T> {
        match &self.eval {
            Eval::Function(e) => Ok(e(f)),
            Eval::Pair(_) => Err(QhaError::Parse {
                location: self.name.clone(),
                message: "pair-level norm applied to a function".into(),
            }),
        }
    }

    pub fn eval_pair(&self, p: &QhaPair<T>) -> Result<T> {
        match &self.eval {
            Eval::Pair(e) => Ok(e(p)),
            Eval::Function(_) => Err(QhaError::Parse {
                location: self.name.clone(),
                message: "function-level norm applied to a pair".into(),
            }),
        }
    }
}

fn lp<T: Real>(f: &PhaseFunction<T>, p: f64) -> T {
    f.lp_norm(p).expect("exponent validated by the caller")
}

fn check_exponent(p: f64) -> Result<()> {
    if p.is_nan() || p < 1.0 {
        Err(QhaError::InvalidExponent(p))
    } else {
        Ok(())
    }
}

/// `‖f‖₁ + ‖f‖_p`.
pub fn s_p_norm<T: Real>(f: &PhaseFunction<T>, p: f64) -> Result<T> {
    check_exponent(p)?;
    Ok(lp(f, 1.0) + lp(f, p))
}

/// `‖h‖_{L^p(μ)} = ((1/d) Σ μ |h|^p)^{1/p}`, `p = ∞` giving the `μ`-essential sup.
pub fn weighted_lp_norm<T: Real>(h: &PhaseFunction<T>, p: f64, mu: &PhaseFunction<T>) -> Result<T> {
    check_exponent(p)?;
    check_weights(mu)?;
    h.ensure_compatible(mu)?;
    if p.is_infinite() {
        return Ok(h
            .values()
            .iter()
            .zip(mu.values())
            .filter(|(_, w)| w.re > T::zero())
            .fold(T::zero(), |m, (&v, _)| m.max(modulus(v))));
    }
    let weighted: Vec<_> =
        h.values().iter().zip(mu.values()).map(|(&v, w)| creal(modulus(v) * w.re.powf(T::one() / T::lit(p)))).collect();
    lp_norm_values(&weighted, h.params().dim(), p)
}

fn check_weights<T: Real>(mu: &PhaseFunction<T>) -> Result<()> {
    let ok = mu.values().iter().all(|w| w.im == T::zero() && w.re >= T::zero() && w.re.is_finite());
    if ok {
        Ok(())
    } else {
        Err(QhaError::NegativeWeights)
    }
}

/// `‖f‖₁ + ‖F_σ f‖_{L^p(μ)}`.
pub fn s_p_mu_norm<T: Real>(f: &PhaseFunction<T>, p: f64, mu: &PhaseFunction<T>) -> Result<T> {
    Ok(lp(f, 1.0) + weighted_lp_norm(&f.symplectic_fourier(), p, mu)?)
}

/// `‖f‖₁ + ‖F_σ f‖_{L^p(μ)} + ‖A‖_{T¹} + ‖F_W A‖_{L^p(μ)}`.
pub fn qsa_sp_mu_norm<T: Real>(pair: &QhaPair<T>, p: f64, mu: &PhaseFunction<T>) -> Result<T> {
    Ok(s_p_mu_norm(&pair.f, p, mu)? + pair.a.schatten_norm(1.0)? + weighted_lp_norm(&fourier_weyl(&pair.a), p, mu)?)
}

/// `‖f‖₁ + ‖A_f‖_{T¹}`.
pub fn t_norm<T: Real>(f: &PhaseFunction<T>) -> T {
    lp(f, 1.0) + weyl_quantize(f).schatten_norm(1.0).expect("p = 1 is valid")
}

/// `‖f‖₁ + ‖A‖_{T¹}`, the norm of the ambient algebra.
pub fn pair_norm<T: Real>(pair: &QhaPair<T>) -> T {
    pair.norm()
}

/// Rescales a window so that `‖g‖₂² = ‖g‖₁`, which makes the Feichtinger
/// norm built from it submultiplicative.
pub fn balanced_window<T: Real>(g: &PhaseFunction<T>) -> Result<PhaseFunction<T>> {
    let l1 = lp(g, 1.0);
    if l1 == T::zero() {
        return Err(QhaError::ZeroWindow);
    }
    let l2 = lp(g, 2.0);
    Ok(g.scale(creal(l1 / (l2 * l2))))
}

/// `(1/d²) Σ_{z,w} |⟨f, γ_w α_z g⟩|` with `⟨u, v⟩ = (1/d) Σ u conj v`.
pub fn feichtinger_norm<T: Real>(f: &PhaseFunction<T>, window: &PhaseFunction<T>) -> Result<T> {
    f.ensure_compatible(window)?;
    if window.max_abs() == T::zero() {
        return Err(QhaError::ZeroWindow);
    }
    Ok(phase_space_stft_l1(f, window))
}

/// For fixed `z`, `⟨f, γ_w α_z g⟩ = (1/d) Σ_u f(u) conj g(u−z) ω^{σ(u,w)}` is
/// `F_σ(f · conj α_z g)(w)`, so the whole grid costs `d²` transforms.
fn phase_space_stft_l1<T: Real>(f: &PhaseFunction<T>, g: &PhaseFunction<T>) -> T {
    let p = *f.params();
    let d = T::lit(p.dim() as f64);
    let mut total = T::zero();
    for z in 0..p.phase_len() {
        let gz = g.shift(z);
        let prod = PhaseFunction::from_fn(p, |u| f.at(u) * gz.at(u).conj());
        let ft = prod.symplectic_fourier();
        total += ft.values().iter().fold(T::zero(), |s, &v| s + modulus(v));
    }
    total / (d * d)
}

/// Registry of the shipped norms with their default parameters.
pub fn registry<T: Real>(p: crate::model::ModelParams) -> Vec<NormFunctional<T>> {
    let mu = default_weights::<T>(p);
    let mu_pair = mu.clone();
    let window = balanced_window(&gaussian_window::<T>(p)).expect("nonzero window");
    let regular = crate::fixtures::discrete_gaussian_operator::<T>(p);
    let base = NormFunctional::function("s_2", |f: &PhaseFunction<T>| lp(f, 1.0) + lp(f, 2.0));
    vec![
        NormFunctional::function("s_2", |f: &PhaseFunction<T>| lp(f, 1.0) + lp(f, 2.0)).star_symmetric(),
        NormFunctional::function("s_inf", |f: &PhaseFunction<T>| lp(f, 1.0) + lp(f, f64::INFINITY)).star_symmetric(),
        NormFunctional::function("s_2_mu", move |f: &PhaseFunction<T>| {
            s_p_mu_norm(f, 2.0, &mu).expect("validated weights")
        })
        .star_symmetric(),
        NormFunctional::function("t_norm", |f: &PhaseFunction<T>| t_norm(f)).star_symmetric(),
        NormFunctional::function("feichtinger", move |f: &PhaseFunction<T>| {
            feichtinger_norm(f, &window).expect("nonzero window")
        }),
        NormFunctional::pair("pair", |q: &QhaPair<T>| pair_norm(q)).star_symmetric(),
        NormFunctional::pair("qsa_s_2_mu", move |q: &QhaPair<T>| {
            qsa_sp_mu_norm(q, 2.0, &mu_pair).expect("validated weights")
        })
        .star_symmetric(),
        crate::norms::qsa::induced_norm_functional(regular, base).expect("regular Gaussian operator"),
        crate::norms::qsa::twisted_norm_functional(
            NormFunctional::function("s_2", |f: &PhaseFunction<T>| lp(f, 1.0) + lp(f, 2.0)),
            NormFunctional::function("s_4", |f: &PhaseFunction<T>| lp(f, 1.0) + lp(f, 4.0)),
        ),
    ]
}

/// `μ(z) = 1 + |z_c|²` on centered representatives: positive and growing.
pub fn default_weights<T: Real>(p: crate::model::ModelParams) -> PhaseFunction<T> {
    PhaseFunction::from_fn(p, |z| {
        let pt = p.point(z);
        let r2: i64 = pt.x.iter().chain(&pt.xi).map(|&v| p.centered(v).pow(2)).sum();
        creal(T::lit(1.0 + r2 as f64))
    })
}

/// Product Gaussian on phase space built from centered representatives.
pub fn gaussian_window<T: Real>(p: crate::model::ModelParams) -> PhaseFunction<T> {
    let m = p.modulus() as f64;
    PhaseFunction::from_fn(p, |z| {
        let pt = p.point(z);
        let r2: i64 = pt.x.iter().chain(&pt.xi).map(|&v| p.centered(v).pow(2)).sum();
        creal(T::lit((-std::f64::consts::PI * r2 as f64 / m).exp()))
    })
}

/// `‖A‖_{T¹}`; convenience for callers that build norms from closures.
pub fn trace_norm<T: Real>(a: &Operator<T>) -> T {
    a.schatten_norm(1.0).expect("p = 1 is valid")
}
