//! Deterministic test inputs.
//!
//! Random kinds use `ChaCha8Rng::seed_from_u64(seed)` and draw each complex
//! entry as two standard normals (real part first), in storage order.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{QhaError, Result};
use crate::function::PhaseFunction;
use crate::model::ModelParams;
use crate::operator::{rank_one, Operator};
use crate::scalar::{c, creal, Real, RootsOfUnity, C};
use crate::state::StateVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FixtureKind {
    GaussianState,
    ChirpState,
    RandomState,
    RandomOperator,
    RandomPsd,
    DiscreteGaussianOperator,
    RandomFunction,
}

impl FixtureKind {
    pub const ALL: [FixtureKind; 7] = [
        FixtureKind::GaussianState,
        FixtureKind::ChirpState,
        FixtureKind::RandomState,
        FixtureKind::RandomOperator,
        FixtureKind::RandomPsd,
        FixtureKind::DiscreteGaussianOperator,
        FixtureKind::RandomFunction,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FixtureKind::GaussianState => "gaussian_state",
            FixtureKind::ChirpState => "chirp_state",
            FixtureKind::RandomState => "random_state",
            FixtureKind::RandomOperator => "random_operator",
            FixtureKind::RandomPsd => "random_psd",
            FixtureKind::DiscreteGaussianOperator => "discrete_gaussian_operator",
            FixtureKind::RandomFunction => "random_function",
        }
    }
}

impl fmt::Display for FixtureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FixtureKind {
    type Err = QhaError;
    fn from_str(s: &str) -> Result<Self> {
        FixtureKind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| QhaError::UnknownFixture(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Fixture<T: Real> {
    State(StateVector<T>),
    Operator(Operator<T>),
    Function(PhaseFunction<T>),
}

pub fn fixture<T: Real>(kind: FixtureKind, seed: u64, p: ModelParams) -> Fixture<T> {
    match kind {
        FixtureKind::GaussianState => Fixture::State(gaussian_state(p)),
        FixtureKind::ChirpState => Fixture::State(chirp_state(p)),
        FixtureKind::RandomState => Fixture::State(random_state(p, seed)),
        FixtureKind::RandomOperator => Fixture::Operator(random_operator(p, seed)),
        FixtureKind::RandomPsd => Fixture::Operator(random_psd(p, seed)),
        FixtureKind::DiscreteGaussianOperator => Fixture::Operator(discrete_gaussian_operator(p)),
        FixtureKind::RandomFunction => Fixture::Function(random_function(p, seed)),
    }
}

fn gaussian_values(seed: u64, len: usize) -> Vec<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..len)
        .map(|_| {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            (re, im)
        })
        .collect()
}

fn to_complex<T: Real>(v: (f64, f64), scale: f64) -> C<T> {
    c(T::lit(v.0 * scale), T::lit(v.1 * scale))
}

/// Periodized Gaussian `Σ_{k∈{−1,0,1}} exp(−π(x_c + kN)²/N)` per coordinate,
/// unit-normalized. Parity-even by construction.
pub fn gaussian_state<T: Real>(p: ModelParams) -> StateVector<T> {
    let m = p.modulus() as f64;
    let profile: Vec<f64> = (0..p.modulus())
        .map(|r| {
            let xc = p.centered(r) as f64;
            (-1..=1).map(|k| (-std::f64::consts::PI * (xc + k as f64 * m).powi(2) / m).exp()).sum()
        })
        .collect();
    let raw: Vec<f64> = (0..p.dim()).map(|s| p.pos_digits(s).iter().map(|&r| profile[r as usize]).product()).collect();
    let nrm = raw.iter().map(|v| v * v).sum::<f64>().sqrt();
    StateVector::from_fn(p, |s| creal(T::lit(raw[s] / nrm)))
}

/// `ω^{Σ x²/2} / √d`: a unit chirp whose ambiguity function has zeros.
pub fn chirp_state<T: Real>(p: ModelParams) -> StateVector<T> {
    let roots = RootsOfUnity::<T>::new(p.modulus());
    let scale = T::one() / T::lit(p.dim() as f64).sqrt();
    StateVector::from_fn(p, |s| {
        let q = p.pos_dot(s, s) as i64 * p.two_inv() as i64;
        roots.pow(q).scale(scale)
    })
}

/// Unit vector with i.i.d. complex Gaussian entries.
pub fn random_state<T: Real>(p: ModelParams, seed: u64) -> StateVector<T> {
    let vals = gaussian_values(seed, p.dim());
    let nrm = vals.iter().map(|(a, b)| a * a + b * b).sum::<f64>().sqrt();
    StateVector::from_fn(p, |s| to_complex(vals[s], 1.0 / nrm))
}

/// Complex Gaussian matrix scaled to unit Hilbert–Schmidt norm.
pub fn random_operator<T: Real>(p: ModelParams, seed: u64) -> Operator<T> {
    let d = p.dim();
    let vals = gaussian_values(seed, d * d);
    let nrm = vals.iter().map(|(a, b)| a * a + b * b).sum::<f64>().sqrt();
    Operator::from_fn(p, |s, t| to_complex(vals[s * d + t], 1.0 / nrm))
}

/// `G G* / tr(G G*)` for a complex Gaussian `G`: positive semidefinite, trace one.
pub fn random_psd<T: Real>(p: ModelParams, seed: u64) -> Operator<T> {
    let g = random_operator::<T>(p, seed);
    let m = g.matrix() * g.matrix().adjoint();
    let tr = m.trace().re;
    Operator::from_matrix_unchecked(p, m.map(|v| v.unscale(tr)))
}

/// `g ⊗ g` for the Gaussian state `g`.
pub fn discrete_gaussian_operator<T: Real>(p: ModelParams) -> Operator<T> {
    let g = gaussian_state::<T>(p);
    rank_one(&g, &g).expect("same model")
}

/// Complex Gaussian phase-space function with unit normalized `L²` norm.
pub fn random_function<T: Real>(p: ModelParams, seed: u64) -> PhaseFunction<T> {
    let vals = gaussian_values(seed, p.phase_len());
    let mean_sq = vals.iter().map(|(a, b)| a * a + b * b).sum::<f64>() / p.dim() as f64;
    let scale = 1.0 / mean_sq.sqrt();
    PhaseFunction::from_fn(p, |z| to_complex(vals[z], scale))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        let p = ModelParams::new(1, 9).unwrap();
        assert_eq!(random_operator::<f64>(p, 42), random_operator::<f64>(p, 42));
        assert_ne!(random_operator::<f64>(p, 42), random_operator::<f64>(p, 43));
        assert_eq!(random_function::<f64>(p, 7), random_function::<f64>(p, 7));
    }

    #[test]
    fn normalizations() {
        let p = ModelParams::new(2, 3).unwrap();
        assert!((random_state::<f64>(p, 1).norm() - 1.0).abs() < 1e-14);
        assert!((random_operator::<f64>(p, 1).frobenius() - 1.0).abs() < 1e-14);
        assert!((random_function::<f64>(p, 1).lp_norm(2.0).unwrap() - 1.0).abs() < 1e-13);
        assert!((gaussian_state::<f64>(p).norm() - 1.0).abs() < 1e-14);
        assert!((chirp_state::<f64>(p).norm() - 1.0).abs() < 1e-14);
        let psd = random_psd::<f64>(p, 3);
        assert!((psd.trace().re - 1.0).abs() < 1e-14);
        assert!(psd.max_abs_diff(&psd.adjoint()) < 1e-15);
    }

    #[test]
    fn gaussian_is_parity_even() {
        for (n, m) in [(1, 9), (2, 5)] {
            let p = ModelParams::new(n, m).unwrap();
            let g = gaussian_state::<f64>(p);
            assert!(g.parity().max_abs_diff(&g) < 1e-12);
        }
    }

    #[test]
    fn kind_names_round_trip() {
        for k in FixtureKind::ALL {
            assert_eq!(k.name().parse::<FixtureKind>().unwrap(), k);
        }
        assert!(matches!("mystery".parse::<FixtureKind>(), Err(QhaError::UnknownFixture(_))));
    }
}
