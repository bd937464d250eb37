//! Seeded random generators for tests and the verification harness.
//!
//! Every trial draws from its own ChaCha stream selected by `(suite, trial)`,
//! so any single trial can be replayed from the seed alone.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::block2::{cayley_conjugate, exp_chart, Block2, FormTag, LieElem};
use crate::cmat::{CMat, Tolerance, C64, I};
use crate::error::Result;
use crate::geometry::GeodesicFamilyParams;
use crate::models::{section_delta, section_psi, DPoint, HPoint, KPair};

/// Stream id for `(suite, trial)`.
pub fn stream_id(suite: u32, trial: u64) -> u64 {
    (u64::from(suite) << 40) | (trial & ((1 << 40) - 1))
}

#[derive(Debug, Clone)]
pub struct RandSuite {
    rng: ChaCha8Rng,
    n: usize,
}

impl RandSuite {
    pub fn new(seed: u64, n: usize) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed), n: n.max(1) }
    }

    /// Independent generator for one trial of one suite.
    pub fn for_trial(seed: u64, suite: u32, trial: u64, n: usize) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream_id(suite, trial));
        Self { rng, n: n.max(1) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.random_range(lo..hi)
    }

    /// Hermitian matrix with real and imaginary parts of every entry in `[-1, 1]`.
    pub fn random_hermitian(&mut self) -> CMat {
        let n = self.n;
        let mut data = vec![C64::new(0.0, 0.0); n * n];
        for i in 0..n {
            data[i * n + i] = C64::new(self.rng.random_range(-1.0..=1.0), 0.0);
            for j in (i + 1)..n {
                let z = C64::new(self.rng.random_range(-1.0..=1.0), self.rng.random_range(-1.0..=1.0));
                data[i * n + j] = z;
                data[j * n + i] = z.conj();
            }
        }
        CMat::from_row_major(n, &data).expect("square data")
    }

    /// `exp(h)` for a random Hermitian `h`.
    pub fn random_pd(&mut self) -> CMat {
        self.random_hermitian().exp_herm().expect("finite Hermitian input")
    }

    /// General complex matrix with entries in the unit square.
    pub fn random_general(&mut self) -> CMat {
        let n = self.n;
        let data: Vec<C64> = (0..n * n)
            .map(|_| C64::new(self.rng.random_range(-1.0..=1.0), self.rng.random_range(-1.0..=1.0)))
            .collect();
        CMat::from_row_major(n, &data).expect("square data")
    }

    /// General matrix rescaled to a spectral norm drawn uniformly from `[0.1, 0.9]`.
    pub fn random_strict_contraction(&mut self) -> CMat {
        loop {
            let a = self.random_general();
            let norm = a.spec_norm();
            if norm > 1e-6 {
                let target = self.rng.random_range(0.1..=0.9);
                return a.scale_real(target / norm);
            }
        }
    }

    /// `x + i y` with `x` random Hermitian and `y` random positive definite.
    pub fn random_halfspace_point(&mut self) -> CMat {
        let x = self.random_hermitian();
        let y = self.random_pd();
        &x + &y.scale(I)
    }

    pub fn random_hpoint(&mut self) -> HPoint {
        HPoint::new(self.random_halfspace_point()).expect("positive imaginary part")
    }

    pub fn random_dpoint(&mut self) -> DPoint {
        DPoint::new(self.random_strict_contraction()).expect("strict contraction")
    }

    pub fn random_unitary(&mut self) -> CMat {
        self.random_hermitian()
            .scale_real(std::f64::consts::PI)
            .exp_i_herm(&Tolerance::default())
            .expect("finite Hermitian input")
    }

    /// Lie-algebra element with horizontal part scaled by `h_scale` and
    /// vertical part by `v_scale`.
    pub fn random_lie(&mut self, h_scale: f64, v_scale: f64) -> LieElem {
        let tol = Tolerance::default();
        let alpha = self.random_hermitian().scale_real(h_scale);
        let beta = self.random_hermitian().scale_real(h_scale);
        let a = self.random_hermitian().scale(I).scale_real(v_scale);
        let b = self.random_hermitian().scale_real(v_scale);
        let h = LieElem::horizontal(&alpha, &beta, &tol).expect("Hermitian blocks");
        let v = LieElem::vertical(&a, &b, &tol).expect("vertical blocks");
        h.sum(&v)
    }

    /// Horizontal generator `[[alpha, beta], [beta, -alpha]]` scaled by `scale`.
    pub fn random_horizontal(&mut self, scale: f64) -> LieElem {
        let alpha = self.random_hermitian().scale_real(scale);
        let beta = self.random_hermitian().scale_real(scale);
        LieElem::horizontal(&alpha, &beta, &Tolerance::default()).expect("Hermitian blocks")
    }

    /// Element of `U(theta_H)` from the exponential chart.
    pub fn random_group_h(&mut self) -> Block2 {
        let x = self.random_lie(0.5, 1.0);
        exp_chart(&x, &Tolerance::default()).expect("Lie algebra element")
    }

    /// Element of `U(theta_D)`, conjugated from `U(theta_H)`.
    pub fn random_group_d(&mut self) -> Block2 {
        cayley_conjugate(&self.random_group_h())
    }

    pub fn random_group(&mut self, tag: FormTag) -> Block2 {
        match tag {
            FormTag::H => self.random_group_h(),
            FormTag::D => self.random_group_d(),
        }
    }

    /// Sphere point over a random base, twisted by a random unitary in the fiber.
    pub fn random_kpair(&mut self, tag: FormTag) -> Result<KPair> {
        let base = match tag {
            FormTag::H => section_psi(&self.random_hpoint())?,
            FormTag::D => section_delta(&self.random_dpoint())?,
        };
        let u = self.random_unitary();
        base.right_mul(&u, &Tolerance::default())
    }
}

impl RandSuite {
    fn diag_in_basis(&mut self, w: &CMat, lo: f64, hi: f64) -> CMat {
        let d: Vec<f64> = (0..self.n).map(|_| self.rng.random_range(lo..=hi)).collect();
        (&(w * &CMat::from_real_diag(&d)) * &w.adjoint()).re_part()
    }

    /// Commuting family: `gamma` with spectrum in `[0, 1]` and angles in
    /// `[0.2, pi - 0.2]`, diagonal in a shared random basis.
    pub fn random_commuting_family(&mut self) -> Result<GeodesicFamilyParams> {
        let w = self.random_unitary();
        let gamma = self.diag_in_basis(&w, 0.0, 1.0);
        let chi = self.diag_in_basis(&w, 0.2, std::f64::consts::PI - 0.2);
        GeodesicFamilyParams::commuting(&gamma, &chi)
    }

    /// Anti-commuting family built from `sigma_z (x) a` and `sigma_x (x) b` with
    /// commuting `a`, `b`, plus a trailing block with `alpha = 0` when `n` is odd,
    /// conjugated by a random unitary.
    pub fn random_anticommuting_family(&mut self) -> Result<GeodesicFamilyParams> {
        let n = self.n;
        let m = n / 2;
        let mut alpha = vec![C64::new(0.0, 0.0); n * n];
        let mut beta = vec![C64::new(0.0, 0.0); n * n];
        if m > 0 {
            let mut sub = RandSuite { rng: self.rng.clone(), n: m };
            let w = sub.random_unitary();
            let a = sub.diag_in_basis(&w, -1.0, 1.0);
            let b = sub.diag_in_basis(&w, -1.0, 1.0);
            self.rng = sub.rng;
            for i in 0..m {
                for j in 0..m {
                    alpha[i * n + j] = a.get(i, j);
                    alpha[(i + m) * n + (j + m)] = -a.get(i, j);
                    beta[i * n + (j + m)] = b.get(i, j);
                    beta[(i + m) * n + j] = b.get(i, j);
                }
            }
        }
        if n % 2 == 1 {
            beta[n * n - 1] = C64::new(self.rng.random_range(-1.0..=1.0), 0.0);
        }
        let v = self.random_unitary();
        let conj = |x: &CMat| (&(&v * x) * &v.adjoint()).re_part();
        let alpha = conj(&CMat::from_row_major(n, &alpha)?);
        let beta = conj(&CMat::from_row_major(n, &beta)?);
        GeodesicFamilyParams::anticommuting(&alpha, &beta)
    }
}
