//! Dense complex matrices over `M_n(C)` with Hermitian functional calculus.
//!
//! Every matrix function goes through a Hermitian eigendecomposition. Skew-
//! Hermitian exponentials are handled as `exp(i * H)` with `H` Hermitian.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{GeomError, Result};

pub type C64 = Complex64;

pub const I: C64 = C64 { re: 0.0, im: 1.0 };

/// Thresholds for structural predicates and positivity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    /// Relative threshold for structural identities (Hermitian, group membership, ...).
    pub eps_struct: f64,
    /// Absolute minimum-eigenvalue (or singular-value) threshold.
    pub eps_pos: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { eps_struct: 1e-10, eps_pos: 1e-10 }
    }
}

impl Tolerance {
    pub fn new(eps_struct: f64, eps_pos: f64) -> Result<Self> {
        if !(eps_struct > 0.0 && eps_struct.is_finite()) {
            return Err(GeomError::InvalidTolerance(format!("eps_struct = {eps_struct}")));
        }
        if !(eps_pos > 0.0 && eps_pos.is_finite()) {
            return Err(GeomError::InvalidTolerance(format!("eps_pos = {eps_pos}")));
        }
        Ok(Self { eps_struct, eps_pos })
    }
}

/// A dense complex `n x n` matrix with finite entries.
#[derive(Clone, PartialEq)]
pub struct CMat(DMatrix<C64>);

impl fmt::Debug for CMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CMat(n={}) [", self.n())?;
        for i in 0..self.n() {
            write!(f, "[")?;
            for j in 0..self.n() {
                let z = self.0[(i, j)];
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{:.6}{:+.6}i", z.re, z.im)?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Eigendecomposition `a = V diag(values) V*` of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermEig {
    /// Ascending.
    pub values: Vec<f64>,
    /// Unitary, columns are eigenvectors.
    pub vectors: CMat,
}

/// Real scalar functions accepted by [`CMat::fun_calc`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScalarFn {
    SqrtPd,
    LogPd,
    Pow(f64),
    Exp,
    Cos,
    Sin,
    Cosh,
    Sinh,
    InvCosh,
}

impl ScalarFn {
    fn needs_positive(self) -> bool {
        matches!(self, ScalarFn::SqrtPd | ScalarFn::LogPd | ScalarFn::Pow(_))
    }

    fn eval(self, x: f64) -> f64 {
        match self {
            ScalarFn::SqrtPd => x.sqrt(),
            ScalarFn::LogPd => x.ln(),
            ScalarFn::Pow(t) => x.powf(t),
            ScalarFn::Exp => x.exp(),
            ScalarFn::Cos => x.cos(),
            ScalarFn::Sin => x.sin(),
            ScalarFn::Cosh => x.cosh(),
            ScalarFn::Sinh => x.sinh(),
            ScalarFn::InvCosh => 1.0 / x.cosh(),
        }
    }
}

impl CMat {
    /// Builds from row-major entries.
    pub fn from_row_major(n: usize, data: &[C64]) -> Result<Self> {
        if n == 0 {
            return Err(GeomError::DimensionMismatch("n must be at least 1".into()));
        }
        if data.len() != n * n {
            return Err(GeomError::DimensionMismatch(format!(
                "expected {} entries, got {}",
                n * n,
                data.len()
            )));
        }
        Self::from_matrix(DMatrix::from_row_slice(n, n, data))
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(GeomError::DimensionMismatch("rows must form a square array".into()));
        }
        let flat: Vec<C64> = rows.iter().flatten().copied().collect();
        Self::from_row_major(n, &flat)
    }

    /// Convenience for real-valued literals in tests and examples.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let rows: Vec<Vec<C64>> =
            rows.iter().map(|r| r.iter().map(|&x| C64::new(x, 0.0)).collect()).collect();
        Self::from_rows(&rows)
    }

    pub fn from_matrix(m: DMatrix<C64>) -> Result<Self> {
        if m.nrows() != m.ncols() || m.nrows() == 0 {
            return Err(GeomError::DimensionMismatch(format!(
                "matrix must be square and non-empty, got {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(GeomError::NonFinite);
        }
        Ok(Self(m))
    }

    /// Wraps without the finiteness scan. Internal arithmetic only.
    pub(crate) fn wrap(m: DMatrix<C64>) -> Self {
        debug_assert!(m.nrows() == m.ncols());
        Self(m)
    }

    pub fn zeros(n: usize) -> Self {
        Self(DMatrix::zeros(n, n))
    }

    pub fn identity(n: usize) -> Self {
        Self(DMatrix::identity(n, n))
    }

    pub fn scalar(n: usize, c: C64) -> Self {
        Self(DMatrix::identity(n, n) * c)
    }

    pub fn real_scalar(n: usize, x: f64) -> Self {
        Self::scalar(n, C64::new(x, 0.0))
    }

    pub fn from_real_diag(d: &[f64]) -> Self {
        let n = d.len();
        let mut m = DMatrix::zeros(n, n);
        for (i, &x) in d.iter().enumerate() {
            m[(i, i)] = C64::new(x, 0.0);
        }
        Self(m)
    }

    pub fn from_diag(d: &[C64]) -> Self {
        let n = d.len();
        let mut m = DMatrix::zeros(n, n);
        for (i, &x) in d.iter().enumerate() {
            m[(i, i)] = x;
        }
        Self(m)
    }

    pub fn n(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.0
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.0
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.0[(i, j)]
    }

    /// Row-major copy of the entries.
    pub fn to_row_major(&self) -> Vec<C64> {
        let n = self.n();
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                out.push(self.0[(i, j)]);
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn scale(&self, c: C64) -> Self {
        Self(&self.0 * c)
    }

    pub fn scale_real(&self, x: f64) -> Self {
        self.scale(C64::new(x, 0.0))
    }

    pub fn trace(&self) -> C64 {
        self.0.trace()
    }

    pub fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.n() != other.n() {
            return Err(GeomError::DimensionMismatch(format!("{} vs {}", self.n(), other.n())));
        }
        Ok(())
    }

    /// `(a + a*) / 2`.
    pub fn re_part(&self) -> Self {
        Self((&self.0 + self.0.adjoint()) * C64::new(0.5, 0.0))
    }

    /// `(a - a*) / (2i)`.
    pub fn im_part(&self) -> Self {
        Self((&self.0 - self.0.adjoint()) * C64::new(0.0, -0.5))
    }

    pub fn commutator(&self, other: &Self) -> Self {
        Self(&self.0 * &other.0 - &other.0 * &self.0)
    }

    pub fn anticommutator(&self, other: &Self) -> Self {
        Self(&self.0 * &other.0 + &other.0 * &self.0)
    }

    /// Largest singular value.
    pub fn spec_norm(&self) -> f64 {
        self.singular_values().into_iter().fold(0.0, f64::max)
    }

    pub fn singular_values(&self) -> Vec<f64> {
        self.0.clone().singular_values().iter().copied().collect()
    }

    pub fn min_singular_value(&self) -> f64 {
        self.singular_values().into_iter().fold(f64::INFINITY, f64::min)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.norm()
    }

    /// Spectral norm of `self - other`.
    pub fn dist(&self, other: &Self) -> f64 {
        (self - other).spec_norm()
    }

    pub fn hermitian_residual(&self) -> f64 {
        Self(&self.0 - self.0.adjoint()).spec_norm()
    }

    pub fn is_hermitian(&self, tol: &Tolerance) -> bool {
        self.hermitian_residual() <= tol.eps_struct * self.spec_norm().max(1.0)
    }

    pub fn require_hermitian(&self, tol: &Tolerance) -> Result<()> {
        let residual = self.hermitian_residual();
        if residual <= tol.eps_struct * self.spec_norm().max(1.0) {
            Ok(())
        } else {
            Err(GeomError::NotHermitian { residual })
        }
    }

    pub fn is_invertible(&self, tol: &Tolerance) -> bool {
        self.min_singular_value() > tol.eps_pos
    }

    pub fn is_positive_definite(&self, tol: &Tolerance) -> bool {
        self.is_hermitian(tol)
            && self.herm_eig_unchecked().values.first().is_some_and(|&l| l > tol.eps_pos)
    }

    pub fn is_contraction_strict(&self, tol: &Tolerance) -> bool {
        self.spec_norm() < 1.0 - tol.eps_pos
    }

    pub fn is_unitary(&self, tol: &Tolerance) -> bool {
        let n = self.n();
        (&self.adjoint() * self).dist(&Self::identity(n)) <= tol.eps_struct * n as f64
    }

    /// Smallest eigenvalue of the Hermitian part.
    pub fn min_eigenvalue(&self) -> f64 {
        self.herm_eig_unchecked().values[0]
    }

    /// Eigendecomposition; fails with `NotHermitian` if `a` is not Hermitian.
    pub fn herm_eig(&self, tol: &Tolerance) -> Result<HermEig> {
        self.require_hermitian(tol)?;
        Ok(self.herm_eig_unchecked())
    }

    /// Eigendecomposition of the Hermitian part `(a + a*)/2`.
    pub(crate) fn herm_eig_unchecked(&self) -> HermEig {
        let sym = self.re_part().0;
        let eig = sym.symmetric_eigen();
        let n = self.n();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
        let mut vectors = DMatrix::zeros(n, n);
        for (col, &k) in order.iter().enumerate() {
            vectors.set_column(col, &eig.eigenvectors.column(k));
        }
        HermEig { values, vectors: Self(vectors) }
    }

    /// `V f(diag) V*` for a complex-valued scalar map applied to the eigenvalues.
    fn spectral_map<F: Fn(f64) -> C64>(eig: &HermEig, f: F) -> Self {
        let v = &eig.vectors.0;
        let mut scaled = v.clone();
        for (j, &l) in eig.values.iter().enumerate() {
            let fl = f(l);
            for i in 0..v.nrows() {
                scaled[(i, j)] *= fl;
            }
        }
        Self(scaled * v.adjoint())
    }

    /// Hermitian functional calculus.
    pub fn fun_calc(&self, f: ScalarFn, tol: &Tolerance) -> Result<Self> {
        let eig = self.herm_eig(tol)?;
        if f.needs_positive() && eig.values[0] <= tol.eps_pos {
            return Err(GeomError::NotPositiveDefinite { min_eig: eig.values[0] });
        }
        let out = Self::spectral_map(&eig, |x| C64::new(f.eval(x), 0.0));
        Ok(out.re_part())
    }

    /// Applies an arbitrary real function to a Hermitian matrix.
    pub fn map_hermitian<F: Fn(f64) -> f64>(&self, f: F, tol: &Tolerance) -> Result<Self> {
        let eig = self.herm_eig(tol)?;
        Ok(Self::spectral_map(&eig, |x| C64::new(f(x), 0.0)).re_part())
    }

    pub fn sqrt_pd(&self) -> Result<Self> {
        self.fun_calc(ScalarFn::SqrtPd, &Tolerance::default())
    }

    pub fn inv_sqrt_pd(&self) -> Result<Self> {
        self.fun_calc(ScalarFn::Pow(-0.5), &Tolerance::default())
    }

    pub fn log_pd(&self) -> Result<Self> {
        self.fun_calc(ScalarFn::LogPd, &Tolerance::default())
    }

    pub fn pow_pd(&self, t: f64) -> Result<Self> {
        self.fun_calc(ScalarFn::Pow(t), &Tolerance::default())
    }

    pub fn exp_herm(&self) -> Result<Self> {
        self.fun_calc(ScalarFn::Exp, &Tolerance::default())
    }

    /// `exp(i h)` for Hermitian `h`; the result is unitary.
    pub fn exp_i_herm(&self, tol: &Tolerance) -> Result<Self> {
        let eig = self.herm_eig(tol)?;
        Ok(Self::spectral_map(&eig, |x| C64::new(x.cos(), x.sin())))
    }

    /// Exponential of a skew-Hermitian matrix `s`, computed as `exp(i * (-i s))`.
    pub fn exp_skew(&self, tol: &Tolerance) -> Result<Self> {
        let h = self.scale(-I);
        h.exp_i_herm(tol)
    }

    /// Polar decomposition `a = u p` with `u` unitary and `p = (a*a)^{1/2}`.
    pub fn polar(&self, tol: &Tolerance) -> Result<(Self, Self)> {
        let svd = self.0.clone().svd(true, true);
        let sigma_min = svd.singular_values.iter().copied().fold(f64::INFINITY, f64::min);
        if sigma_min <= tol.eps_pos {
            return Err(GeomError::Singular { sigma_min });
        }
        let w = svd.u.expect("svd u requested");
        let v_t = svd.v_t.expect("svd v_t requested");
        let v = v_t.adjoint();
        let sigma = DMatrix::from_diagonal(&svd.singular_values.map(|s| C64::new(s, 0.0)));
        let u = &w * &v_t;
        let p = &v * sigma * &v_t;
        Ok((Self(u), Self(p).re_part()))
    }

    /// Inverse, failing when the smallest singular value is at or below `eps_pos`.
    pub fn inverse(&self) -> Result<Self> {
        self.inverse_with(&Tolerance::default())
    }

    pub fn inverse_with(&self, tol: &Tolerance) -> Result<Self> {
        let sigma_min = self.min_singular_value();
        if sigma_min <= tol.eps_pos {
            return Err(GeomError::Singular { sigma_min });
        }
        self.0
            .clone()
            .try_inverse()
            .map(Self)
            .ok_or(GeomError::Singular { sigma_min })
    }

    /// Solves `x * self = b`, i.e. returns `b * self^{-1}`.
    pub fn right_divide(&self, b: &Self) -> Result<Self> {
        Ok(b * &self.inverse()?)
    }
}

macro_rules! bin_op {
    ($tr:ident, $method:ident, $op:tt) => {
        impl $tr<&CMat> for &CMat {
            type Output = CMat;
            fn $method(self, rhs: &CMat) -> CMat {
                CMat(&self.0 $op &rhs.0)
            }
        }
        impl $tr<CMat> for CMat {
            type Output = CMat;
            fn $method(self, rhs: CMat) -> CMat {
                CMat(self.0 $op rhs.0)
            }
        }
        impl $tr<&CMat> for CMat {
            type Output = CMat;
            fn $method(self, rhs: &CMat) -> CMat {
                CMat(self.0 $op &rhs.0)
            }
        }
        impl $tr<CMat> for &CMat {
            type Output = CMat;
            fn $method(self, rhs: CMat) -> CMat {
                CMat(&self.0 $op rhs.0)
            }
        }
    };
}

bin_op!(Add, add, +);
bin_op!(Sub, sub, -);
bin_op!(Mul, mul, *);

impl Neg for &CMat {
    type Output = CMat;
    fn neg(self) -> CMat {
        CMat(-&self.0)
    }
}

impl Neg for CMat {
    type Output = CMat;
    fn neg(self) -> CMat {
        CMat(-self.0)
    }
}
