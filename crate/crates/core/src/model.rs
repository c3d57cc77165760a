//! The finite model: positions in `(Z_N)^n`, phase points in `(Z_N)^{2n}`,
//! the symplectic form and the flat index layout everything else uses.
//!
//! Positions are stored as a single `usize` in row-major mixed radix
//! (first coordinate most significant). A phase point `(x, ξ)` lives at
//! `index(x) * d + index(ξ)`, i.e. x-major, ξ-minor.

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{QhaError, Result};

/// Degrees of freedom `n` and odd modulus `N`; the Hilbert dimension is `d = N^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct ModelParams {
    n: u32,
    modulus: u32,
    dim: usize,
    two_inv: u32,
}

#[derive(Serialize, Deserialize)]
struct RawParams {
    n: u32,
    #[serde(rename = "N")]
    modulus: u32,
}

impl TryFrom<RawParams> for ModelParams {
    type Error = QhaError;
    fn try_from(raw: RawParams) -> Result<Self> {
        ModelParams::new(raw.n, raw.modulus)
    }
}

impl From<ModelParams> for RawParams {
    fn from(p: ModelParams) -> Self {
        RawParams { n: p.n, modulus: p.modulus }
    }
}

impl fmt::Display for ModelParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, N={})", self.n, self.modulus)
    }
}

// Dense operators are d x d and some sweeps are O(d^6); keep d modest.
const MAX_DIM: usize = 1 << 12;

impl ModelParams {
    pub fn new(n: u32, modulus: u32) -> Result<Self> {
        if n == 0 {
            return Err(QhaError::ZeroDegrees);
        }
        if modulus < 3 || modulus.is_multiple_of(2) {
            return Err(QhaError::EvenOrSmallModulus(modulus));
        }
        let dim =
            (modulus as usize).checked_pow(n).filter(|&d| d <= MAX_DIM).ok_or(QhaError::ModelTooLarge(modulus, n))?;
        let two_inv = modulus.div_ceil(2);
        Ok(ModelParams { n, modulus, dim, two_inv })
    }

    /// Degrees of freedom.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// The odd modulus `N`.
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Hilbert dimension `d = N^n`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of phase points, `d²`.
    pub fn phase_len(&self) -> usize {
        self.dim * self.dim
    }

    /// Inverse of 2 modulo `N`.
    pub fn two_inv(&self) -> u32 {
        self.two_inv
    }

    /// Haar weight per phase point, `1/d`, as an exact rational.
    pub fn haar_weight(&self) -> Ratio<u64> {
        Ratio::new(1, self.dim as u64)
    }

    pub fn ensure_same(&self, other: &ModelParams) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(QhaError::ParamsMismatch { left: self.to_string(), right: other.to_string() })
        }
    }

    // ----- positions in (Z_N)^n -----

    pub fn pos_digits(&self, mut idx: usize) -> Vec<u32> {
        let m = self.modulus as usize;
        let mut digits = vec![0u32; self.n as usize];
        for slot in digits.iter_mut().rev() {
            *slot = (idx % m) as u32;
            idx /= m;
        }
        digits
    }

    pub fn pos_index(&self, digits: &[u32]) -> usize {
        let m = self.modulus as usize;
        digits.iter().fold(0usize, |acc, &v| acc * m + (v as usize % m))
    }

    #[inline]
    fn zip_digits(&self, a: usize, b: usize, op: impl Fn(usize, usize) -> usize) -> usize {
        let m = self.modulus as usize;
        if self.n == 1 {
            return op(a, b) % m;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0usize;
        let mut place = 1usize;
        for _ in 0..self.n {
            out += (op(a % m, b % m) % m) * place;
            a /= m;
            b /= m;
            place *= m;
        }
        out
    }

    #[inline]
    pub fn pos_add(&self, a: usize, b: usize) -> usize {
        self.zip_digits(a, b, |x, y| x + y)
    }

    #[inline]
    pub fn pos_sub(&self, a: usize, b: usize) -> usize {
        let m = self.modulus as usize;
        self.zip_digits(a, b, move |x, y| x + m - y)
    }

    #[inline]
    pub fn pos_neg(&self, a: usize) -> usize {
        self.pos_sub(0, a)
    }

    /// Componentwise multiplication by an integer scalar.
    #[inline]
    pub fn pos_scale(&self, a: usize, k: u32) -> usize {
        let k = k as usize % self.modulus as usize;
        self.zip_digits(a, 0, move |x, _| x * k)
    }

    /// Dot product of two positions, reduced mod `N`.
    #[inline]
    pub fn pos_dot(&self, a: usize, b: usize) -> u32 {
        let m = self.modulus as usize;
        if self.n == 1 {
            return ((a * b) % m) as u32;
        }
        let (mut a, mut b) = (a, b);
        let mut acc = 0usize;
        for _ in 0..self.n {
            acc = (acc + (a % m) * (b % m)) % m;
            a /= m;
            b /= m;
        }
        acc as u32
    }

    // ----- phase points in (Z_N)^{2n} -----

    #[inline]
    pub fn split(&self, z: usize) -> (usize, usize) {
        (z / self.dim, z % self.dim)
    }

    #[inline]
    pub fn join(&self, x: usize, xi: usize) -> usize {
        x * self.dim + xi
    }

    #[inline]
    pub fn phase_add(&self, z: usize, w: usize) -> usize {
        let (zx, zk) = self.split(z);
        let (wx, wk) = self.split(w);
        self.join(self.pos_add(zx, wx), self.pos_add(zk, wk))
    }

    #[inline]
    pub fn phase_sub(&self, z: usize, w: usize) -> usize {
        let (zx, zk) = self.split(z);
        let (wx, wk) = self.split(w);
        self.join(self.pos_sub(zx, wx), self.pos_sub(zk, wk))
    }

    #[inline]
    pub fn phase_neg(&self, z: usize) -> usize {
        let (x, k) = self.split(z);
        self.join(self.pos_neg(x), self.pos_neg(k))
    }

    /// `z/2`, exact because `N` is odd.
    #[inline]
    pub fn phase_half(&self, z: usize) -> usize {
        let (x, k) = self.split(z);
        self.join(self.pos_scale(x, self.two_inv), self.pos_scale(k, self.two_inv))
    }

    /// Symplectic form on flat phase indices, reduced mod `N`.
    ///
    /// `σ((x, ξ), (x', ξ')) = x·ξ' − ξ·x'`. This orientation is the one under
    /// which the Weyl operators below obey
    /// `W_z W_w = ω^{−σ(z,w)/2} W_{z+w}` and `F_W(f∗A) = F_σ(f) F_W(A)`.
    #[inline]
    pub fn symplectic_index(&self, z: usize, w: usize) -> u32 {
        let (zx, zk) = self.split(z);
        let (wx, wk) = self.split(w);
        let m = self.modulus;
        (self.pos_dot(zx, wk) + m - self.pos_dot(zk, wx)) % m
    }

    pub fn point(&self, z: usize) -> PhasePoint {
        let (x, xi) = self.split(z);
        PhasePoint { x: self.pos_digits(x), xi: self.pos_digits(xi) }
    }

    pub fn points(&self) -> impl Iterator<Item = PhasePoint> + '_ {
        (0..self.phase_len()).map(move |z| self.point(z))
    }

    /// Centered representative of a residue, in `−(N−1)/2 ..= (N−1)/2`.
    pub fn centered(&self, r: u32) -> i64 {
        let m = self.modulus as i64;
        let r = r as i64 % m;
        if r > m / 2 {
            r - m
        } else {
            r
        }
    }
}

/// A point `(x, ξ)` of the phase lattice, components as canonical residues.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PhasePoint {
    pub x: Vec<u32>,
    pub xi: Vec<u32>,
}

impl PhasePoint {
    /// Builds a point from arbitrary integers, reducing them mod `N`.
    pub fn new(params: &ModelParams, x: &[i64], xi: &[i64]) -> Result<Self> {
        let n = params.n() as usize;
        if x.len() != n || xi.len() != n {
            return Err(QhaError::DimensionMismatch { expected: n, got: x.len().max(xi.len()) });
        }
        let m = params.modulus() as i64;
        let red = |v: &[i64]| v.iter().map(|&a| a.rem_euclid(m) as u32).collect();
        Ok(PhasePoint { x: red(x), xi: red(xi) })
    }

    pub fn origin(params: &ModelParams) -> Self {
        let n = params.n() as usize;
        PhasePoint { x: vec![0; n], xi: vec![0; n] }
    }

    pub fn validate(&self, params: &ModelParams) -> Result<()> {
        let n = params.n() as usize;
        for part in [&self.x, &self.xi] {
            if part.len() != n {
                return Err(QhaError::DimensionMismatch { expected: n, got: part.len() });
            }
        }
        if self.x.iter().chain(&self.xi).any(|&v| v >= params.modulus()) {
            return Err(QhaError::Parse {
                location: "phase point".into(),
                message: format!("component out of range for N={}", params.modulus()),
            });
        }
        Ok(())
    }

    pub fn index(&self, params: &ModelParams) -> Result<usize> {
        self.validate(params)?;
        Ok(params.join(params.pos_index(&self.x), params.pos_index(&self.xi)))
    }

    pub fn neg(&self, params: &ModelParams) -> Self {
        let m = params.modulus();
        let f = |v: &Vec<u32>| v.iter().map(|&a| (m - a) % m).collect();
        PhasePoint { x: f(&self.x), xi: f(&self.xi) }
    }
}

/// `σ(z, w) = x·ξ' − ξ·x'  (mod N)`.
pub fn symplectic_form(z: &PhasePoint, w: &PhasePoint, p: &ModelParams) -> Result<u32> {
    let zi = z.index(p)?;
    let wi = w.index(p)?;
    Ok(p.symplectic_index(zi, wi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn rejects_even_and_small_moduli() {
        assert!(matches!(ModelParams::new(1, 8), Err(QhaError::EvenOrSmallModulus(8))));
        assert!(ModelParams::new(1, 1).is_err());
        assert!(ModelParams::new(0, 9).is_err());
        let p = ModelParams::new(2, 5).unwrap();
        assert_eq!(p.dim(), 25);
        assert_eq!(p.phase_len(), 625);
        assert_eq!((p.two_inv() * 2) % 5, 1);
        assert_eq!(p.haar_weight(), Ratio::new(1, 25));
    }

    #[test]
    fn symplectic_form_examples() {
        let p = ModelParams::new(1, 9).unwrap();
        let origin = PhasePoint::origin(&p);
        for z in p.points() {
            assert_eq!(symplectic_form(&origin, &z, &p).unwrap(), 0);
        }
        let z = PhasePoint::new(&p, &[2], &[3]).unwrap();
        let w = PhasePoint::new(&p, &[4], &[5]).unwrap();
        // x·ξ' − ξ·x' = 2·5 − 3·4 = −2 ≡ 7 (mod 9)
        assert_eq!(symplectic_form(&z, &w, &p).unwrap(), 7);
        assert_eq!(symplectic_form(&w, &z, &p).unwrap(), 2);
    }

    #[test]
    fn symplectic_form_is_antisymmetric() {
        let p = ModelParams::new(2, 5).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let z = rng.random_range(0..p.phase_len());
            let w = rng.random_range(0..p.phase_len());
            let s = p.symplectic_index(z, w) + p.symplectic_index(w, z);
            assert_eq!(s % 5, 0);
        }
    }

    #[test]
    fn symplectic_form_rejects_wrong_dimension() {
        let p = ModelParams::new(2, 5).unwrap();
        let z = PhasePoint { x: vec![1], xi: vec![2] };
        assert!(symplectic_form(&z, &z, &p).is_err());
    }

    #[test]
    fn index_round_trip_and_arithmetic() {
        let p = ModelParams::new(2, 3).unwrap();
        for z in 0..p.phase_len() {
            assert_eq!(p.point(z).index(&p).unwrap(), z);
            assert_eq!(p.phase_add(z, p.phase_neg(z)), 0);
            let h = p.phase_half(z);
            assert_eq!(p.phase_add(h, h), z);
        }
        assert_eq!(p.pos_digits(p.pos_index(&[2, 1])), vec![2, 1]);
        assert_eq!(p.centered(2), -1);
    }

    #[test]
    fn params_serialize_with_capital_n() {
        let p = ModelParams::new(1, 9).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"n":1,"N":9}"#);
        let back: ModelParams = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<ModelParams>(r#"{"n":1,"N":8}"#).is_err());
    }
}
