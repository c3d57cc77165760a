//! Randomized checks of the Segal and quantum Segal algebra axioms.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::algebra::pair::QhaPair;
use crate::error::Result;
use crate::fixtures::{random_function, random_operator};
use crate::function::PhaseFunction;
use crate::model::ModelParams;
use crate::norms::segal::{NormFunctional, NormKind};
use crate::operator::Operator;
use crate::report::{Check, VerificationReport};
use crate::scalar::{c, modulus, Real, C};

const FINITE_MODEL: &str = "not applicable: finite model";

/// Sample counts and the relative tolerance for the inequality checks.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AxiomConfig {
    pub homogeneity: usize,
    pub triangle: usize,
    pub submultiplicativity: usize,
    pub shifts: usize,
    pub tol: f64,
}

impl Default for AxiomConfig {
    fn default() -> Self {
        AxiomConfig { homogeneity: 100, triangle: 100, submultiplicativity: 200, shifts: 50, tol: 1e-10 }
    }
}

#[derive(Clone, Debug)]
enum Element<T: Real> {
    F(PhaseFunction<T>),
    P(QhaPair<T>),
}

impl<T: Real> Element<T> {
    fn add(&self, o: &Self) -> Self {
        match (self, o) {
            (Element::F(a), Element::F(b)) => Element::F(a.add(b).expect("same model")),
            (Element::P(a), Element::P(b)) => Element::P(a.add(b).expect("same model")),
            _ => unreachable!("samples share a kind"),
        }
    }

    fn product(&self, o: &Self) -> Self {
        match (self, o) {
            (Element::F(a), Element::F(b)) => Element::F(a.convolve(b).expect("same model")),
            (Element::P(a), Element::P(b)) => Element::P(a.product(b).expect("same model")),
            _ => unreachable!("samples share a kind"),
        }
    }

    fn scale(&self, k: C<T>) -> Self {
        match self {
            Element::F(a) => Element::F(a.scale(k)),
            Element::P(a) => Element::P(a.scale(k)),
        }
    }

    fn shift(&self, z: usize) -> Self {
        match self {
            Element::F(a) => Element::F(a.shift(z)),
            Element::P(a) => Element::P(a.shift(z)),
        }
    }

    fn involute(&self) -> Self {
        match self {
            Element::F(a) => Element::F(a.involute()),
            Element::P(a) => Element::P(a.involute()),
        }
    }

    /// `‖f‖₁` or `‖f‖₁ + ‖A‖_{T¹}`.
    fn ambient_norm(&self) -> T {
        match self {
            Element::F(a) => a.lp_norm(1.0).expect("p = 1"),
            Element::P(a) => a.norm(),
        }
    }

    fn eval(&self, norm: &NormFunctional<T>) -> Result<T> {
        match self {
            Element::F(a) => norm.eval_function(a),
            Element::P(a) => norm.eval_pair(a),
        }
    }
}

struct Sampler {
    rng: ChaCha8Rng,
    p: ModelParams,
    kind: NormKind,
}

impl Sampler {
    fn scalar<T: Real>(&mut self) -> C<T> {
        let mag = self.rng.sample::<f64, _>(StandardNormal).exp();
        let phase = self.rng.random::<f64>() * std::f64::consts::TAU;
        c(T::lit(mag * phase.cos()), T::lit(mag * phase.sin()))
    }

    fn function<T: Real>(&mut self) -> PhaseFunction<T> {
        let f = random_function::<T>(self.p, self.rng.random());
        if self.rng.random_bool(0.2) {
            // Sparse samples exercise the extremes of the norms.
            let keep: Vec<bool> = (0..self.p.phase_len()).map(|_| self.rng.random_bool(0.1)).collect();
            let k0 = self.rng.random_range(0..self.p.phase_len());
            return PhaseFunction::from_fn(
                self.p,
                |z| if keep[z] || z == k0 { f.at(z) } else { f.at(z).scale(T::zero()) },
            );
        }
        f
    }

    fn operator<T: Real>(&mut self) -> Operator<T> {
        random_operator::<T>(self.p, self.rng.random())
    }

    fn element<T: Real>(&mut self) -> Element<T> {
        let k = self.scalar::<T>();
        match self.kind {
            NormKind::Function => Element::F(self.function::<T>().scale(k)),
            NormKind::Pair => {
                let f = self.function::<T>().scale(k);
                let a = self.operator::<T>().scale(self.scalar::<T>());
                match self.rng.random_range(0..5) {
                    0 => Element::P(QhaPair::from_function(f)),
                    1 => Element::P(QhaPair::from_operator(a)),
                    _ => Element::P(QhaPair::new(f, a).expect("same model")),
                }
            }
        }
    }
}

fn rel_excess(lhs: f64, rhs: f64) -> f64 {
    if rhs > 0.0 {
        (lhs / rhs - 1.0).max(0.0)
    } else if lhs > 0.0 {
        f64::INFINITY
    } else {
        0.0
    }
}

fn rel_diff(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

pub fn axiom_check<T: Real>(norm: &NormFunctional<T>, p: ModelParams, seed: u64) -> Result<VerificationReport> {
    axiom_check_with(norm, p, seed, &AxiomConfig::default())
}

/// Runs every axiom check on seeded samples. Failures land in the report.
pub fn axiom_check_with<T: Real>(
    norm: &NormFunctional<T>,
    p: ModelParams,
    seed: u64,
    cfg: &AxiomConfig,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let kind = norm.kind();
    let pre = if kind == NormKind::Function { "S" } else { "QS" };
    let mut s = Sampler { rng: ChaCha8Rng::seed_from_u64(seed), p, kind };
    let mut rep = VerificationReport::new(format!("axioms:{}", norm.name()), p, seed);
    let ev = |x: &Element<T>| -> Result<f64> { Ok(x.eval(norm)?.as_f64()) };

    rep.push(Check::not_applicable(format!("{pre}1_density"), "finite model: the algebra is the whole space"));

    let zero = match kind {
        NormKind::Function => Element::F(PhaseFunction::zeros(p)),
        NormKind::Pair => Element::P(QhaPair::zero(p)),
    };
    let mut positive = ev(&zero)? == 0.0;
    let mut homog = 0.0f64;
    let mut emb = 0.0f64;
    for _ in 0..cfg.homogeneity {
        let x = s.element::<T>();
        let k = s.scalar::<T>();
        let nx = ev(&x)?;
        positive &= nx > 0.0 && nx.is_finite();
        homog = homog.max(rel_diff(ev(&x.scale(k))?, modulus(k).as_f64() * nx));
        emb = emb.max(x.ambient_norm().as_f64() / nx);
    }
    rep.push(Check::holds("norm_positivity", positive));
    rep.push(Check::within("norm_homogeneity", homog, cfg.tol));

    let mut tri = 0.0f64;
    for _ in 0..cfg.triangle {
        let (x, y) = (s.element::<T>(), s.element::<T>());
        tri = tri.max(rel_excess(ev(&x.add(&y))?, ev(&x)? + ev(&y)?));
    }
    rep.push(Check::within("norm_triangle", tri, cfg.tol));

    let mut sub = 0.0f64;
    for _ in 0..cfg.submultiplicativity {
        let (x, y) = (s.element::<T>(), s.element::<T>());
        sub = sub.max(rel_excess(ev(&x.product(&y))?, ev(&x)? * ev(&y)?));
    }
    rep.push(Check::within(format!("{pre}2_submultiplicativity"), sub, cfg.tol));

    let mut shift = 0.0f64;
    let mut conv = 0.0f64;
    for _ in 0..cfg.shifts {
        let x = s.element::<T>();
        let z = s.rng.random_range(0..p.phase_len());
        shift = shift.max(rel_diff(ev(&x.shift(z))?, ev(&x)?));
        if let Element::F(f) = &x {
            let g = s.function::<T>();
            let lhs = norm.eval_function(&g.convolve(f)?)?.as_f64();
            let rhs = g.lp_norm(1.0)?.as_f64() * ev(&x)?;
            conv = conv.max(rel_excess(lhs, rhs));
        }
    }
    rep.push(Check::within(format!("{pre}3_shift_isometry"), shift, cfg.tol));
    rep.push(Check::not_applicable(format!("{pre}4_continuity"), FINITE_MODEL));
    if kind == NormKind::Function {
        rep.push(Check::within("l1_module_bound", conv, cfg.tol).with_note("‖g ∗ f‖_S ≤ ‖g‖₁‖f‖_S"));
    }

    if norm.is_star_symmetric() {
        let mut star = 0.0f64;
        for _ in 0..cfg.shifts {
            let x = s.element::<T>();
            star = star.max(rel_diff(ev(&x.involute())?, ev(&x)?));
        }
        rep.push(Check::within("star_symmetry", star, cfg.tol));
    }

    let ambient = if kind == NormKind::Function { "‖·‖₁" } else { "‖·‖_{L¹⊕T¹}" };
    rep.push(Check::within("embedding_bound", emb, 1e12).with_note(format!("max {ambient} / ‖·‖ over the samples")));

    rep.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norms::segal::{pair_norm, registry, s_p_norm};
    use crate::report::Status;

    #[test]
    fn s2_passes() {
        let p = ModelParams::new(1, 5).unwrap();
        let n = NormFunctional::function("s_2", |f: &PhaseFunction<f64>| s_p_norm(f, 2.0).unwrap()).star_symmetric();
        let r = axiom_check(&n, p, 1).unwrap();
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
        assert_eq!(r.check("S4_continuity").unwrap().status, Status::NotApplicable);
        assert!(r.check("star_symmetry").is_some());
    }

    #[test]
    fn pair_norm_passes() {
        let p = ModelParams::new(1, 3).unwrap();
        let n = NormFunctional::pair("pair", |q: &QhaPair<f64>| pair_norm(q));
        let r = axiom_check(&n, p, 2).unwrap();
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
        assert!(r.check("embedding_bound").unwrap().max_abs_error <= 1.0 + 1e-12);
    }

    #[test]
    fn broken_norm_fails_shift_isometry() {
        let p = ModelParams::new(1, 5).unwrap();
        let n = NormFunctional::function("broken", |f: &PhaseFunction<f64>| f.lp_norm(1.0).unwrap() + f.at(0).norm());
        let r = axiom_check(&n, p, 3).unwrap();
        assert_eq!(r.check("S3_shift_isometry").unwrap().status, Status::Fail);
        assert!(!r.passed());
    }

    #[test]
    fn registry_passes_at_three() {
        let p = ModelParams::new(1, 3).unwrap();
        for n in registry::<f64>(p) {
            let r = axiom_check(&n, p, 4).unwrap();
            assert!(r.passed(), "{}: {:?}", n.name(), r.failures().collect::<Vec<_>>());
        }
    }
}
