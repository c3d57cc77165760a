//! Ideals and shift-invariant subspaces of the doubled algebra.
//!
//! Since `Γ` is a linear bijection at finite scale, every ideal is exactly
//! the set of pairs whose Gelfand transform vanishes on its zero set.
//! Ideal bases are `Γ⁻¹(e_k)` for `k` outside the zero set, hence
//! orthonormal in Gelfand coordinates.

use std::collections::BTreeSet;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::gelfand::{flip_index, gelfand_transform, inverse_gelfand, DoubledFunction};
use crate::algebra::pair::QhaPair;
use crate::error::Result;
use crate::model::ModelParams;
use crate::operator::Operator;
use crate::scalar::{c, cone, creal, czero, modulus, Real, C};

/// A set of doubled indices `j·d² + z`.
pub type ZeroSet = BTreeSet<usize>;

/// Singular values below this fraction of the largest count as zero.
pub const RANK_TOL: f64 = 1e-12;

pub fn flip_set(p: &ModelParams, s: &ZeroSet) -> ZeroSet {
    s.iter().map(|&k| flip_index(p, k)).collect()
}

pub fn is_j_symmetric(p: &ModelParams, s: &ZeroSet) -> bool {
    s.iter().all(|&k| s.contains(&flip_index(p, k)))
}

/// Half-plane pattern for `n = 1`: sheet `j` vanishes where `(−1)^j ξ ≥ 0`
/// on centered representatives.
pub fn half_plane_zero_set(p: &ModelParams) -> ZeroSet {
    let n = p.phase_len();
    let mut s = ZeroSet::new();
    for z in 0..n {
        let (_, k) = p.split(z);
        let xi = p.centered(p.pos_digits(k)[0]);
        if xi >= 0 {
            s.insert(z);
        }
        if xi <= 0 {
            s.insert(n + z);
        }
    }
    s
}

/// Random subset of the doubled spectrum; each index kept with probability `density`.
pub fn random_zero_set(p: &ModelParams, density: f64, seed: u64) -> ZeroSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..2 * p.phase_len()).filter(|_| rng.random_bool(density)).collect()
}

/// A pair with `Γ` equal to zero on `s` and one elsewhere.
pub fn pair_vanishing_on<T: Real>(p: ModelParams, s: &ZeroSet) -> QhaPair<T> {
    let values = (0..2 * p.phase_len()).map(|k| if s.contains(&k) { czero() } else { cone() }).collect();
    inverse_gelfand(&DoubledFunction::new(p, values).expect("length 2d²"))
}

fn basis_vector<T: Real>(p: ModelParams, k: usize) -> QhaPair<T> {
    let mut values = vec![czero(); 2 * p.phase_len()];
    values[k] = cone();
    inverse_gelfand(&DoubledFunction::new(p, values).expect("length 2d²"))
}

#[derive(Clone, Debug)]
pub struct IdealBasis<T: Real> {
    params: ModelParams,
    zero_set: ZeroSet,
    basis: Vec<QhaPair<T>>,
}

/// `{p : Γ(p) = 0 on S}` with basis `Γ⁻¹(e_k)`, `k ∉ S`.
pub fn ideal_from_zero_set<T: Real>(p: ModelParams, s: &ZeroSet) -> IdealBasis<T> {
    let basis = (0..2 * p.phase_len()).filter(|k| !s.contains(k)).map(|k| basis_vector(p, k)).collect();
    IdealBasis { params: p, zero_set: s.clone(), basis }
}

/// The regular maximal ideal `I_{(z, j)}`.
pub fn regular_maximal_ideal<T: Real>(p: ModelParams, k: usize) -> IdealBasis<T> {
    ideal_from_zero_set(p, &ZeroSet::from([k]))
}

impl<T: Real> IdealBasis<T> {
    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn zero_set(&self) -> &ZeroSet {
        &self.zero_set
    }

    pub fn basis(&self) -> &[QhaPair<T>] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Largest `|Γ(p)|` on the zero set, relative to `max(1, ‖p‖)`.
    pub fn membership_defect(&self, pair: &QhaPair<T>) -> T {
        let g = gelfand_transform(pair);
        let worst = self.zero_set.iter().fold(T::zero(), |m, &k| m.max(modulus(g.values()[k])));
        worst / pair.norm().max(T::one())
    }

    pub fn contains(&self, pair: &QhaPair<T>, tol: T) -> bool {
        self.membership_defect(pair) <= tol
    }

    /// Common zeros of the basis, computed from the basis itself.
    pub fn computed_zero_set(&self, tol: T) -> ZeroSet {
        let n = 2 * self.params.phase_len();
        let mut worst = vec![T::zero(); n];
        for b in &self.basis {
            for (k, &v) in gelfand_transform(b).values().iter().enumerate() {
                worst[k] = worst[k].max(modulus(v));
            }
        }
        (0..n).filter(|&k| worst[k] <= tol).collect()
    }

    /// `J(I)`, built by applying `J` to every basis element.
    pub fn j_image(&self, tol: T) -> IdealBasis<T> {
        let basis: Vec<QhaPair<T>> = self.basis.iter().map(|b| b.j_map()).collect();
        let probe = IdealBasis { params: self.params, zero_set: ZeroSet::new(), basis };
        let zero_set = probe.computed_zero_set(tol);
        IdealBasis { zero_set, ..probe }
    }

    /// Whether `J(I) ⊆ I`, checked on every basis element.
    pub fn is_graded(&self, tol: T) -> bool {
        self.basis.iter().all(|b| self.contains(&b.j_map(), tol))
    }

    /// Worst membership defect of `b_i ∗ b_k` over `samples` random basis
    /// pairs plus `samples` products of random combinations.
    pub fn product_closure_defect(&self, samples: usize, seed: u64) -> Result<T> {
        if self.basis.is_empty() {
            return Ok(T::zero());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = self.basis.len();
        let mut worst = T::zero();
        for _ in 0..samples {
            let a = &self.basis[rng.random_range(0..m)];
            let b = &self.basis[rng.random_range(0..m)];
            worst = worst.max(self.membership_defect(&a.product(b)?));
        }
        for _ in 0..samples {
            let a = self.random_element(&mut rng)?;
            let b = self.random_element(&mut rng)?;
            worst = worst.max(self.membership_defect(&a.product(&b)?));
        }
        Ok(worst)
    }

    fn random_element(&self, rng: &mut ChaCha8Rng) -> Result<QhaPair<T>> {
        let mut acc = QhaPair::zero(self.params);
        for b in &self.basis {
            let w = c(T::lit(rng.random_range(-1.0..1.0)), T::lit(rng.random_range(-1.0..1.0)));
            acc = acc.add(&b.scale(w))?;
        }
        Ok(acc)
    }
}

/// Rank of a family of pairs in primal coordinates.
pub fn span_rank<T: Real>(pairs: &[QhaPair<T>]) -> usize {
    if pairs.is_empty() {
        return 0;
    }
    let sv = coordinate_matrix(pairs).singular_values();
    let top = sv.iter().copied().fold(T::zero(), |a, b| a.max(b));
    if top == T::zero() {
        return 0;
    }
    let cut = top * T::lit(RANK_TOL);
    sv.iter().filter(|&&s| s > cut).count()
}

/// `dim(U ∩ V) = dim U + dim V − dim(U + V)`.
pub fn intersection_dim<T: Real>(u: &[QhaPair<T>], v: &[QhaPair<T>]) -> usize {
    let both: Vec<QhaPair<T>> = u.iter().chain(v).cloned().collect();
    span_rank(u) + span_rank(v) - span_rank(&both)
}

fn coordinate_matrix<T: Real>(pairs: &[QhaPair<T>]) -> DMatrix<C<T>> {
    let rows = 2 * pairs[0].params().phase_len();
    let mut m = DMatrix::from_element(rows, pairs.len(), czero());
    for (j, pr) in pairs.iter().enumerate() {
        m.set_column(j, &DVector::from_vec(pr.to_coordinates()));
    }
    m
}

/// A subspace of the doubled algebra, stored by an orthonormal basis in
/// primal coordinates.
#[derive(Clone, Debug)]
pub struct PairSpan<T: Real> {
    params: ModelParams,
    basis: Vec<QhaPair<T>>,
}

impl<T: Real> PairSpan<T> {
    pub fn from_pairs(p: ModelParams, pairs: &[QhaPair<T>]) -> Self {
        if pairs.is_empty() {
            return PairSpan { params: p, basis: Vec::new() };
        }
        let svd = coordinate_matrix(pairs).svd(true, false);
        let u = svd.u.expect("left singular vectors requested");
        let top = svd.singular_values.iter().copied().fold(T::zero(), |a, b| a.max(b));
        let cut = top * T::lit(RANK_TOL);
        let basis = (0..svd.singular_values.len())
            .filter(|&i| top > T::zero() && svd.singular_values[i] > cut)
            .map(|i| {
                let col: Vec<C<T>> = u.column(i).iter().copied().collect();
                QhaPair::from_coordinates(p, &col)
            })
            .collect();
        PairSpan { params: p, basis }
    }

    pub fn basis(&self) -> &[QhaPair<T>] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Distance from `pair` to the span, relative to `max(1, |pair|₂)`.
    pub fn residual(&self, pair: &QhaPair<T>) -> T {
        let mut v = pair.to_coordinates();
        let scale = v.iter().fold(T::zero(), |s, x| s + x.norm_sqr()).sqrt().max(T::one());
        for b in &self.basis {
            let u = b.to_coordinates();
            let coef = u.iter().zip(&v).fold(czero::<T>(), |acc, (&a, &x)| acc + a.conj() * x);
            for (x, &a) in v.iter_mut().zip(&u) {
                *x -= a * coef;
            }
        }
        v.iter().fold(T::zero(), |s, x| s + x.norm_sqr()).sqrt() / scale
    }

    pub fn contains(&self, pair: &QhaPair<T>, tol: T) -> bool {
        self.residual(pair) <= tol
    }

    pub fn contains_span(&self, other: &PairSpan<T>, tol: T) -> bool {
        other.basis.iter().all(|b| self.contains(b, tol))
    }

    pub fn same_as(&self, other: &PairSpan<T>, tol: T) -> bool {
        self.dim() == other.dim() && self.contains_span(other, tol)
    }

    pub fn sum(&self, other: &PairSpan<T>) -> PairSpan<T> {
        let all: Vec<QhaPair<T>> = self.basis.iter().chain(&other.basis).cloned().collect();
        PairSpan::from_pairs(self.params, &all)
    }

    /// Indices where every element of the span has vanishing `Γ`.
    pub fn zero_set(&self, tol: T) -> ZeroSet {
        IdealBasis { params: self.params, zero_set: ZeroSet::new(), basis: self.basis.clone() }.computed_zero_set(tol)
    }
}

/// `V′ = span{(0, B) ∗ v : B a matrix unit, v ∈ V}`.
pub fn saturate_with_operators<T: Real>(p: ModelParams, v: &[QhaPair<T>]) -> Result<PairSpan<T>> {
    let d = p.dim();
    let basis = PairSpan::from_pairs(p, v);
    let mut products = Vec::with_capacity(basis.dim() * d * d);
    for e in 0..d * d {
        let unit = QhaPair::from_operator(Operator::from_fn(p, |s, t| if s * d + t == e { cone() } else { czero() }));
        for b in basis.basis() {
            products.push(unit.product(b)?);
        }
    }
    Ok(PairSpan::from_pairs(p, &products))
}

/// Per-phase-point fiber of a shift-invariant subspace inside `C²`, the
/// coordinates being the two Gelfand sheets at that point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Fiber<T: Real> {
    Zero,
    Full,
    Line(C<T>, C<T>),
}

/// The shift-invariant subspace with the given fibers (one per phase point).
pub fn shift_invariant_subspace<T: Real>(p: ModelParams, fibers: &[Fiber<T>]) -> Vec<QhaPair<T>> {
    let n = p.phase_len();
    let mut out = Vec::new();
    let mut push = |z: usize, a: C<T>, b: C<T>| {
        let mut values = vec![czero(); 2 * n];
        values[z] = a;
        values[n + z] = b;
        out.push(inverse_gelfand(&DoubledFunction::new(p, values).expect("length 2d²")));
    };
    for (z, fib) in fibers.iter().enumerate().take(n) {
        match *fib {
            Fiber::Zero => {}
            Fiber::Full => {
                push(z, cone(), czero());
                push(z, czero(), cone());
            }
            Fiber::Line(a, b) => push(z, a, b),
        }
    }
    out
}

/// Random fibers: zero, full, a coordinate line or a generic line.
pub fn random_fibers<T: Real>(p: &ModelParams, seed: u64) -> Vec<Fiber<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..p.phase_len())
        .map(|_| match rng.random_range(0..5) {
            0 => Fiber::Zero,
            1 => Fiber::Full,
            2 => Fiber::Line(cone(), czero()),
            3 => Fiber::Line(czero(), cone()),
            _ => Fiber::Line(
                c(T::lit(rng.random_range(0.5..1.5)), T::lit(rng.random_range(-1.0..1.0))),
                creal(T::lit(rng.random_range(0.5..1.5))),
            ),
        })
        .collect()
}
