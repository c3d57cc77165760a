//! Named verification suites over the finite model.

use std::time::Instant;

use crate::algebra::gelfand::{gelfand_singular_range, gelfand_transform};
use crate::algebra::ideal::{
    flip_set, half_plane_zero_set, ideal_from_zero_set, intersection_dim, is_j_symmetric, random_zero_set,
};
use crate::algebra::pair::QhaPair;
use crate::convolution::{conv_fn_op, conv_measure_op, conv_op_op, localization_operator, WeightedPointMass};
use crate::error::{QhaError, Result};
use crate::fixtures::{discrete_gaussian_operator, random_function, random_operator, random_state};
use crate::function::PhaseFunction;
use crate::model::ModelParams;
use crate::norms::axioms::axiom_check;
use crate::norms::feichtinger_op::{feichtinger_op_equivalences, operator_family};
use crate::norms::poisson::{poisson_sum_check, sublattice};
use crate::norms::qsa::recover_symbol;
use crate::norms::segal::registry;
use crate::operator::{rank_one, Operator};
use crate::report::{Check, VerificationReport};
use crate::scalar::{creal, modulus, Real};
use crate::transform::{fourier_weyl, inv_fourier_weyl, weyl_quantize, weyl_symbol};
use crate::weyl::{parity, WeylTable};

pub const KNOWN_SUITES: [&str; 10] = [
    "ccr",
    "fourier",
    "convolution",
    "involution",
    "quantization",
    "gelfand",
    "ideals",
    "norms",
    "poisson",
    "hausdorff-young",
];

/// Tolerance of each check, optionally replaced wholesale by an override.
#[derive(Clone, Copy, Debug)]
struct Tol(Option<f64>);

impl Tol {
    fn or(&self, default: f64) -> f64 {
        self.0.unwrap_or(default)
    }
}

fn seed_for(seed: u64, salt: u64, i: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(salt.wrapping_mul(1_000_003)).wrapping_add(i as u64)
}

fn f64_of<T: Real>(x: T) -> f64 {
    x.as_f64()
}

/// Runs one suite. `tol` replaces every default tolerance when given.
pub fn run_suite<T: Real>(name: &str, p: ModelParams, seed: u64, tol: Option<f64>) -> Result<VerificationReport> {
    let start = Instant::now();
    let t = Tol(tol);
    let mut rep = VerificationReport::new(name, p, seed);
    match name {
        "ccr" => ccr::<T>(&mut rep, p, t),
        "fourier" => fourier::<T>(&mut rep, p, seed, t)?,
        "convolution" => convolution::<T>(&mut rep, p, seed, t)?,
        "involution" => involution::<T>(&mut rep, p, seed, t)?,
        "quantization" => quantization::<T>(&mut rep, p, seed, t)?,
        "gelfand" => gelfand::<T>(&mut rep, p, seed, t)?,
        "ideals" => ideals::<T>(&mut rep, p, seed, t)?,
        "norms" => norms::<T>(&mut rep, p, seed, t)?,
        "poisson" => poisson::<T>(&mut rep, p, seed, t)?,
        "hausdorff-young" => hausdorff_young::<T>(&mut rep, p, seed, t)?,
        other => return Err(QhaError::UnknownSuite { name: other.into(), known: KNOWN_SUITES.join(", ") }),
    }
    rep.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(rep)
}

fn ccr<T: Real>(rep: &mut VerificationReport, p: ModelParams, t: Tol) {
    let table = WeylTable::<T>::new(p);
    rep.push(Check::within("ccr_all_pairs", f64_of(table.ccr_defect()), t.or(1e-12)));
    let id = Operator::<T>::identity(p);
    let mut unitary = 0.0f64;
    let mut inverse = 0.0f64;
    for z in 0..p.phase_len() {
        let w = table.get(z);
        unitary = unitary.max(f64_of(w.compose(&w.adjoint()).expect("same model").max_abs_diff(&id)));
        inverse = inverse.max(f64_of(w.adjoint().max_abs_diff(table.get(p.phase_neg(z)))));
    }
    rep.push(Check::within("weyl_unitary", unitary, t.or(1e-12)));
    rep.push(Check::within("weyl_adjoint_is_negation", inverse, t.or(1e-12)));
}

fn fourier<T: Real>(rep: &mut VerificationReport, p: ModelParams, seed: u64, t: Tol) -> Result<()> {
    let (mut fs, mut fw, mut wf, mut planch) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for i in 0..50 {
        let f = random_function::<T>(p, seed_for(seed, 1, i));
        let a = random_operator::<T>(p, seed_for(seed, 2, i));
        fs = fs.max(f64_of(f.symplectic_fourier().symplectic_fourier().max_abs_diff(&f)));
        let fa = fourier_weyl(&a);
        fw = fw.max(f64_of(inv_fourier_weyl(&fa).max_abs_diff(&a)));
        wf = wf.max(f64_of(fourier_weyl(&inv_fourier_weyl(&f)).max_abs_diff(&f)));
        let hs = f64_of(a.frobenius());
        planch = planch.max((f64_of(fa.lp_norm(2.0)?) - hs).abs() / hs);
    }
    rep.push(Check::within("symplectic_fourier_involutive", fs, t.or(1e-10)));
    rep.push(Check::within("fourier_weyl_left_inverse", fw, t.or(1e-10)));
    rep.push(Check::within("fourier_weyl_right_inverse", wf, t.or(1e-10)));
    rep.push(Check::within("plancherel_relative", planch, t.or(1e-10)));
    Ok(())
}

fn convolution<T: Real>(rep: &mut VerificationReport, p: ModelParams, seed: u64, t: Tol) -> Result<()> {
    let (mut oo, mut fo) = (0.0f64, 0.0f64);
    for i in 0..100 {
        let a = random_operator::<T>(p, seed_for(seed, 3, i));
        let b = random_operator::<T>(p, seed_for(seed, 4, i));
        let f = random_function::<T>(p, seed_for(seed, 5, i));
        let lhs = conv_op_op(&a, &b)?.symplectic_fourier();
        oo = oo.max(f64_of(lhs.max_abs_diff(&fourier_weyl(&a).mul(&fourier_weyl(&b))?)));
        let lhs = fourier_weyl(&conv_fn_op(&f, &a)?);
        fo = fo.max(f64_of(lhs.max_abs_diff(&f.symplectic_fourier().mul(&fourier_weyl(&a))?)));
    }
    rep.push(Check::within("fourier_of_operator_convolution", oo, t.or(1e-9)));
    rep.push(Check::within("fourier_weyl_of_function_convolution", fo, t.or(1e-9)));

    let d = T::lit(p.dim() as f64);
    let mut trace = 0.0f64;
    for i in 0..50 {
        let a = random_operator::<T>(p, seed_for(seed, 6, i));
        let b = random_operator::<T>(p, seed_for(seed, 7, i));
        let mean = conv_op_op(&a, &b)?.sum().unscale(d);
        trace = trace.max(f64_of(modulus(mean - a.trace() * b.trace())));
    }
    rep.push(Check::within("trace_identity", trace, t.or(1e-9)));

    let a = random_operator::<T>(p, seed_for(seed, 8, 0));
    let ones = conv_fn_op(&PhaseFunction::ones(p), &a)?;
    rep.push(Check::within(
        "constant_convolution_is_trace",
        f64_of(ones.max_abs_diff(&Operator::identity(p).scale(a.trace()))),
        t.or(1e-10),
    ));
    let f = random_function::<T>(p, seed_for(seed, 9, 0));
    let measure = conv_measure_op(&WeightedPointMass::from_density(&f), &a)?;
    rep.push(Check::within(
        "measure_convolution_matches_density",
        f64_of(measure.max_abs_diff(&conv_fn_op(&f, &a)?)),
        t.or(1e-10),
    ));
    let phi = random_state::<T>(p, seed_for(seed, 10, 0));
    let psi = random_state::<T>(p, seed_for(seed, 11, 0));
    let loc = localization_operator(&f, &phi, &psi)?;
    rep.push(Check::within(
        "localization_is_convolution",
        f64_of(loc.max_abs_diff(&conv_fn_op(&f, &rank_one(&phi, &psi)?)?)),
        t.or(1e-10),
    ));
    Ok(())
}

fn involution<T: Real>(rep: &mut VerificationReport, p: ModelParams, seed: u64, t: Tol) -> Result<()> {
    let (mut oo, mut fo, mut assoc1, mut assoc2, mut fw) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for i in 0..20 {
        let a = random_operator::<T>(p, seed_for(seed, 12, i));
        let b = random_operator::<T>(p, seed_for(seed, 13, i));
        let f = random_function::<T>(p, seed_for(seed, 14, i));
        let g = random_function::<T>(p, seed_for(seed, 15, i));
        let lhs = conv_op_op(&a, &b)?.involute();
        oo = oo.max(f64_of(lhs.max_abs_diff(&conv_op_op(&a.involute(), &b.involute())?)));
        let lhs = conv_fn_op(&f, &a)?.involute();
        fo = fo.max(f64_of(lhs.max_abs_diff(&conv_fn_op(&f.involute(), &a.involute())?)));
        let lhs = f.convolve(&conv_op_op(&a, &b)?)?;
        assoc1 = assoc1.max(f64_of(lhs.max_abs_diff(&conv_op_op(&conv_fn_op(&f, &a)?, &b)?)));
        let lhs = conv_fn_op(&f, &conv_fn_op(&g, &a)?)?;
        assoc2 = assoc2.max(f64_of(lhs.max_abs_diff(&conv_fn_op(&f.convolve(&g)?, &a)?)));
        fw = fw.max(f64_of(fourier_weyl(&a.involute()).max_abs_diff(&fourier_weyl(&a).conj())));
    }
    rep.push(Check::within("involution_operator_convolution", oo, t.or(1e-10)));
    rep.push(Check::within("involution_function_operator_convolution", fo, t.or(1e-10)));
    rep.push(Check::within("associativity_function_operator_operator", assoc1, t.or(1e-10)));
    rep.push(Check::within("associativity_function_function_operator", assoc2, t.or(1e-10)));
    rep.push(Check::within("fourier_weyl_of_involution", fw, t.or(1e-10)));
    Ok(())
}

fn quantization<T: Real>(rep: &mut VerificationReport, p: ModelParams, seed: u64, t: Tol) -> Result<()> {
    let (mut fa, mut aa, mut rt) = (0.0f64, 0.0f64, 0.0f64);
    for i in 0..30 {
        let f = random_function::<T>(p, seed_for(seed, 16, i));
        let g = random_function::<T>(p, seed_for(seed, 17, i));
        let ag = weyl_quantize(&g);
        let lhs = conv_fn_op(&f, &ag)?;
        fa = fa.max(f64_of(lhs.max_abs_diff(&weyl_quantize(&f.reflect().convolve(&g)?))));
        let lhs = conv_op_op(&weyl_quantize(&f), &ag)?;
        aa = aa.max(f64_of(lhs.max_abs_diff(&f.convolve(&g)?.reflect())));
        rt = rt.max(f64_of(weyl_symbol(&weyl_quantize(&f)).max_abs_diff(&f)));
    }
    rep.push(Check::within("function_convolution_of_quantization", fa, t.or(1e-9)));
    rep.push(Check::within("operator_convolution_of_quantizations", aa, t.or(1e-9)));
    rep.push(Check::within("symbol_quantize_round_trip", rt, t.or(1e-10)));
    let delta = PhaseFunction::<T>::point_mass(p, 0, creal(T::lit(p.dim() as f64)));
    rep.push(Check::within(
        "quantized_delta_is_parity",
        f64_of(weyl_quantize(&delta).max_abs_diff(&parity(p))),
        t.or(1e-12),
    ));
    rep.push(Check::within(
        "quantized_one_is_identity",
        f64_of(weyl_quantize(&PhaseFunction::<T>::ones(p)).max_abs_diff(&Operator::identity(p))),
        t.or(1e-12),
    ));
    Ok(())
}

fn random_pair<T: Real>(p: ModelParams, seed: u64, salt: u64, i: usize) -> QhaPair<T> {
    QhaPair::new(random_function(p, seed_for(seed, salt, i)), random_operator(p, seed_for(seed, salt + 1, i)))
        .expect("same model")
}

fn gelfand<T: Real>(rep: &mut VerificationReport, p: ModelParams, seed: u64, t: Tol) -> Result<()> {
    let (mut mult, mut star) = (0.0f64, 0.0f64);
    for i in 0..20 {
        let a = random_pair::<T>(p, seed, 18, i);
        let b = random_pair::<T>(p, seed, 20, i);
        let (ga, gb) = (gelfand_transform(&a), gelfand_transform(&b));
        let gab = gelfand_transform(&a.product(&b)?);
        for k in 0..2 * p.phase_len() {
            mult = mult.max(f64_of(modulus(gab.values()[k] - ga.values()[k] * gb.values()[k])));
        }
        let gs = gelfand_transform(&a.involute());
        for k in 0..2 * p.phase_len() {
            star = star.max(f64_of(modulus(gs.values()[k] - ga.values()[k].conj())));
        }
    }
    rep.push(Check::within("characters_multiplicative", mult, t.or(1e-9)));
    rep.push(Check::within("gelfand_of_involution_is_conjugate", star, t.or(1e-10)));
    let (lo, hi) = gelfand_singular_range::<T>(p);
    let lo = f64_of(lo);
    rep.push(
        Check::holds("gelfand_matrix_injective", lo > 1e-8)
            .with_note(format!("singular values in [{lo:.6e}, {:.6e}]", f64_of(hi))),
    );
    let unit = gelfand_transform(&QhaPair::<T>::unit(p));
    let ones = unit.values().iter().fold(0.0f64, |m, &v| m.max(f64_of(modulus(v - creal(T::one())))));
    rep.push(Check::within("unit_transforms_to_one", ones, t.or(1e-12)));
    Ok(())
}

fn ideals<T: Real>(rep: &mut VerificationReport, p: ModelParams, seed: u64, t: Tol) -> Result<()> {
    let zt = T::lit(1e-9);
    let (mut closure, mut graded_ok, mut flip_ok, mut zero_ok) = (0.0f64, true, true, true);
    for i in 0..20 {
        let density = [0.1, 0.3, 0.5, 0.7][i % 4];
        let mut s = random_zero_set(&p, density, seed_for(seed, 22, i));
        if i % 5 == 4 {
            // Symmetrize some sets so both sides of the grading criterion occur.
            s = s.union(&flip_set(&p, &s)).copied().collect();
        }
        let ideal = ideal_from_zero_set::<T>(p, &s);
        closure = closure.max(f64_of(ideal.product_closure_defect(10, seed_for(seed, 23, i))?));
        graded_ok &= ideal.is_graded(zt) == is_j_symmetric(&p, &s);
        flip_ok &= ideal.j_image(zt).zero_set() == &flip_set(&p, &s);
        zero_ok &= ideal.computed_zero_set(zt) == s;
    }
    rep.push(Check::within("ideal_product_closure", closure, t.or(1e-10)));
    rep.push(Check::holds("graded_iff_j_symmetric", graded_ok));
    rep.push(Check::holds("zero_set_of_j_image_is_flip", flip_ok));
    rep.push(Check::holds("zero_set_recovered", zero_ok));
    if p.n() == 1 {
        let s = half_plane_zero_set(&p);
        let ideal = ideal_from_zero_set::<T>(p, &s);
        let j = ideal.j_image(zt);
        let got = intersection_dim(ideal.basis(), j.basis());
        let union = s.union(&flip_set(&p, &s)).count();
        let expected = 2 * p.phase_len() - union;
        rep.push(
            Check::holds("half_plane_intersection_dim", got == expected)
                .with_note(format!("dim = {got}, expected {expected}")),
        );
    } else {
        rep.push(Check::not_applicable("half_plane_intersection_dim", "half-plane pattern is defined for n = 1"));
    }
    Ok(())
}

fn norms<T: Real>(rep: &mut VerificationReport, p: ModelParams, seed: u64, t: Tol) -> Result<()> {
    for n in registry::<T>(p) {
        let r = axiom_check(&n, p, seed)?;
        for c in r.checks {
            rep.push(Check { id: format!("{}/{}", n.name(), c.id), ..c });
        }
    }
    let a = discrete_gaussian_operator::<T>(p);
    let mut rt = 0.0f64;
    for i in 0..10 {
        let g = random_function::<T>(p, seed_for(seed, 24, i));
        rt = rt.max(f64_of(recover_symbol(&conv_fn_op(&g, &a)?, &a)?.max_abs_diff(&g)));
    }
    rep.push(Check::within("induced_symbol_recovery", rt, t.or(1e-9)));
    let family = operator_family::<T>(p, 30, seed);
    for r in feichtinger_op_equivalences(&family, &a, seed)? {
        rep.push(Check::holds(format!("equivalence/{}~{}", r.norm_a, r.norm_b), r.bounded()).with_note(format!(
            "ratio in [{:.6e}, {:.6e}], spread {:.6}",
            r.ratio_min,
            r.ratio_max,
            r.spread()
        )));
    }
    Ok(())
}

fn poisson<T: Real>(rep: &mut VerificationReport, p: ModelParams, seed: u64, t: Tol) -> Result<()> {
    let m = p.modulus();
    let ones = PhaseFunction::<T>::ones(p);
    for k in (1..=m).filter(|k| m.is_multiple_of(*k)) {
        // The constant symbol pins c_K: the left side is d and the dual lattice has K^{2n} points.
        let probe = poisson_sum_check(&ones, k)?;
        let oracle = probe.lhs[0] / sublattice(&p, m / k)?.len() as f64;
        rep.push(
            Check::within(format!("poisson_constant/K={k}"), (oracle - probe.c_k).abs(), t.or(1e-9))
                .with_note(format!("c_K = {}", probe.c_k)),
        );
        let mut defect: f64 = probe.defect;
        for i in 0..5 {
            let g = random_function::<T>(p, seed_for(seed, 25, i));
            defect = defect.max(poisson_sum_check(&g, k)?.defect);
        }
        rep.push(Check::within(format!("poisson_sum/K={k}"), defect, t.or(1e-9)));
    }
    Ok(())
}

fn hausdorff_young<T: Real>(rep: &mut VerificationReport, p: ModelParams, seed: u64, t: Tol) -> Result<()> {
    for (label, e) in [("1", 1.0), ("4/3", 4.0 / 3.0), ("3/2", 1.5), ("2", 2.0)] {
        let q = if e == 1.0 { f64::INFINITY } else { e / (e - 1.0) };
        let mut worst = 0.0f64;
        for i in 0..200 {
            let f = random_function::<T>(p, seed_for(seed, 26, i));
            let lhs = f64_of(inv_fourier_weyl(&f).schatten_norm(q)?);
            let rhs = f64_of(f.lp_norm(e)?);
            worst = worst.max((lhs / rhs - 1.0).max(0.0));
        }
        rep.push(Check::within(format!("hausdorff_young/p={label}"), worst, t.or(1e-10)));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes_at_three() {
        let p = ModelParams::new(1, 3).unwrap();
        for s in KNOWN_SUITES {
            let r = run_suite::<f64>(s, p, 7, None).unwrap();
            assert!(r.passed(), "{s}: {:?}", r.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn unknown_suite_lists_known_ones() {
        let p = ModelParams::new(1, 3).unwrap();
        match run_suite::<f64>("nope", p, 0, None) {
            Err(QhaError::UnknownSuite { known, .. }) => assert!(KNOWN_SUITES.iter().all(|s| known.contains(s))),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn tolerance_override_can_force_failure() {
        let p = ModelParams::new(1, 3).unwrap();
        let r = run_suite::<f64>("fourier", p, 1, Some(0.0)).unwrap();
        assert!(!r.passed());
    }
}
