//! Brute-force oracles for one degree of freedom, written from the
//! definitions with dense matrices and no shortcuts.

#![allow(dead_code)]

use nalgebra::{Complex, DMatrix};
use qha_core::{ModelParams, Operator, PhaseFunction};

pub type Cx = Complex<f64>;
pub type Mat = DMatrix<Cx>;

pub struct Oracle {
    pub n_mod: usize,
    pub weyl: Vec<Mat>,
    pub parity: Mat,
}

fn omega(m: usize, k: i64) -> Cx {
    let r = k.rem_euclid(m as i64) as f64;
    Cx::from_polar(1.0, 2.0 * std::f64::consts::PI * r / m as f64)
}

impl Oracle {
    /// `W_{(x,ξ)} = ω^{−xξ/2} M_ξ T_x` from explicit clock and shift matrices.
    pub fn new(m: usize) -> Self {
        let h = (m as i64 + 1) / 2;
        let shift =
            |x: usize| Mat::from_fn(m, m, |r, c| if r == (c + x) % m { Cx::new(1.0, 0.0) } else { Cx::new(0.0, 0.0) });
        let clock =
            |k: usize| Mat::from_fn(m, m, |r, c| if r == c { omega(m, (k * r) as i64) } else { Cx::new(0.0, 0.0) });
        let mut weyl = Vec::with_capacity(m * m);
        for x in 0..m {
            for k in 0..m {
                weyl.push((clock(k) * shift(x)).map(|v| v * omega(m, -h * (x * k) as i64)));
            }
        }
        let parity = Mat::from_fn(m, m, |r, c| if (r + c) % m == 0 { Cx::new(1.0, 0.0) } else { Cx::new(0.0, 0.0) });
        Oracle { n_mod: m, weyl, parity }
    }

    pub fn params(&self) -> ModelParams {
        ModelParams::new(1, self.n_mod as u32).unwrap()
    }

    pub fn d(&self) -> f64 {
        self.n_mod as f64
    }

    pub fn len(&self) -> usize {
        self.n_mod * self.n_mod
    }

    pub fn split(&self, z: usize) -> (usize, usize) {
        (z / self.n_mod, z % self.n_mod)
    }

    pub fn add(&self, z: usize, w: usize) -> usize {
        let m = self.n_mod;
        let (a, b) = self.split(z);
        let (c, e) = self.split(w);
        ((a + c) % m) * m + (b + e) % m
    }

    pub fn neg(&self, z: usize) -> usize {
        let m = self.n_mod;
        let (a, b) = self.split(z);
        ((m - a) % m) * m + (m - b) % m
    }

    /// `σ(z, w) = x ξ′ − ξ x′`.
    pub fn sigma(&self, z: usize, w: usize) -> i64 {
        let (x, k) = self.split(z);
        let (y, l) = self.split(w);
        (x * l) as i64 - (k * y) as i64
    }

    pub fn omega(&self, k: i64) -> Cx {
        omega(self.n_mod, k)
    }

    pub fn half(&self) -> i64 {
        (self.n_mod as i64 + 1) / 2
    }

    pub fn tr(m: &Mat) -> Cx {
        m.trace()
    }

    pub fn fw(&self, a: &Mat) -> Vec<Cx> {
        self.weyl.iter().map(|w| (a * w).trace()).collect()
    }

    pub fn fw_inv(&self, f: &[Cx]) -> Mat {
        let mut out = Mat::zeros(self.n_mod, self.n_mod);
        for (z, &v) in f.iter().enumerate() {
            out += self.weyl[z].adjoint() * v;
        }
        out / Cx::new(self.d(), 0.0)
    }

    /// `F_σ f(w) = (1/d) Σ_z f(z) ω^{−σ(w,z)}`.
    pub fn fs(&self, f: &[Cx]) -> Vec<Cx> {
        (0..self.len())
            .map(|w| (0..self.len()).map(|z| f[z] * self.omega(-self.sigma(w, z))).sum::<Cx>() / self.d())
            .collect()
    }

    pub fn conv(&self, f: &[Cx], g: &[Cx]) -> Vec<Cx> {
        (0..self.len())
            .map(|w| (0..self.len()).map(|z| f[z] * g[self.add(w, self.neg(z))]).sum::<Cx>() / self.d())
            .collect()
    }

    pub fn alpha(&self, z: usize, a: &Mat) -> Mat {
        &self.weyl[z] * a * self.weyl[z].adjoint()
    }

    /// `(1/d) Σ_z f(z) W_z A W_z*`.
    pub fn conv_fn_op(&self, f: &[Cx], a: &Mat) -> Mat {
        let mut out = Mat::zeros(self.n_mod, self.n_mod);
        for (z, &v) in f.iter().enumerate() {
            out += self.alpha(z, a) * v;
        }
        out / Cx::new(self.d(), 0.0)
    }

    /// `tr(A W_z P B P W_z*)`.
    pub fn conv_op_op(&self, a: &Mat, b: &Mat) -> Vec<Cx> {
        let pbp = &self.parity * b * &self.parity;
        (0..self.len()).map(|z| (a * self.alpha(z, &pbp)).trace()).collect()
    }

    pub fn quantize(&self, f: &[Cx]) -> Mat {
        &self.parity * self.fw_inv(&self.fs(f)) * &self.parity
    }

    pub fn reflect(&self, f: &[Cx]) -> Vec<Cx> {
        (0..self.len()).map(|z| f[self.neg(z)]).collect()
    }

    pub fn star(&self, f: &[Cx]) -> Vec<Cx> {
        (0..self.len()).map(|z| f[self.neg(z)].conj()).collect()
    }

    pub fn op_star(&self, a: &Mat) -> Mat {
        &self.parity * a.adjoint() * &self.parity
    }

    /// `Γ(f, A)(z, j) = F_σ f(z) + (−1)^j F_W A(z)`, sheet-major.
    pub fn gelfand(&self, f: &[Cx], a: &Mat) -> Vec<Cx> {
        let fs = self.fs(f);
        let fw = self.fw(a);
        fs.iter().zip(&fw).map(|(x, y)| x + y).chain(fs.iter().zip(&fw).map(|(x, y)| x - y)).collect()
    }

    /// `(f, A)(g, B) = (f∗g + A∗B, f∗B + g∗A)`.
    pub fn product(&self, f: &[Cx], a: &Mat, g: &[Cx], b: &Mat) -> (Vec<Cx>, Mat) {
        let fg = self.conv(f, g);
        let ab = self.conv_op_op(a, b);
        let func = fg.iter().zip(&ab).map(|(x, y)| x + y).collect();
        (func, self.conv_fn_op(f, b) + self.conv_fn_op(g, a))
    }

    /// Normalized `(1/d Σ |f|^p)^{1/p}`.
    pub fn lp(&self, f: &[Cx], p: f64) -> f64 {
        if p.is_infinite() {
            return f.iter().map(|v| v.norm()).fold(0.0, f64::max);
        }
        (f.iter().map(|v| v.norm().powf(p)).sum::<f64>() / self.d()).powf(1.0 / p)
    }

    pub fn schatten(a: &Mat, p: f64) -> f64 {
        let sv = a.singular_values();
        if p.is_infinite() {
            return sv.iter().copied().fold(0.0, f64::max);
        }
        sv.iter().map(|s| s.powf(p)).sum::<f64>().powf(1.0 / p)
    }
}

pub fn vals(f: &PhaseFunction<f64>) -> Vec<Cx> {
    f.values().to_vec()
}

pub fn mat(a: &Operator<f64>) -> Mat {
    a.matrix().clone()
}

pub fn max_diff(a: &[Cx], b: &[Cx]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn max_diff_mat(a: &Mat, b: &Mat) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}
