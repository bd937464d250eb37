//! Finsler geometry of the positive cone and of the models `H` and `D`.
//!
//! The cone carries the norm field `||X||_a = ||a^{-1/2} X a^{-1/2}||`, its
//! geodesics `a^{1/2} (a^{-1/2} b a^{-1/2})^t a^{1/2}` and distance
//! `||log(a^{-1/2} b a^{-1/2})||`. The models inherit these through the
//! embedding `eps -> rho eps` of the reflection space.

mod covariant;
mod families;
mod model;

pub use covariant::{
    covariant_h, covariant_h_along, d_pi_i, kappa_i, HTangent,
};
pub use families::{
    geodesic_anticommuting, geodesic_commuting, geodesic_from_i, FamilyVariant,
    GeodesicFamilyParams,
};
pub use model::{
    dist_d, dist_d_origin, dist_h, dist_h_direct, dist_model, geodesic_model, geodesic_model_samples,
    ModelGeodesic, DRIFT_TOL,
};

use crate::block2::Block2;
use crate::cmat::{CMat, Tolerance};
use crate::error::{GeomError, Result};

/// A positive definite matrix, either over `A` or over `M_2(A)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PosPoint {
    a: CMat,
}

impl PosPoint {
    pub fn new(a: CMat) -> Result<Self> {
        Self::with_tol(a, &Tolerance::default())
    }

    pub fn with_tol(a: CMat, tol: &Tolerance) -> Result<Self> {
        a.require_hermitian(tol)?;
        let a = a.re_part();
        let min_eig = a.min_eigenvalue();
        if min_eig <= tol.eps_pos {
            return Err(GeomError::NotPositiveDefinite { min_eig });
        }
        Ok(Self { a })
    }

    pub fn from_block(b: &Block2) -> Result<Self> {
        Self::new(b.as_cmat().clone())
    }

    pub fn identity(n: usize) -> Self {
        Self { a: CMat::identity(n) }
    }

    pub fn matrix(&self) -> &CMat {
        &self.a
    }

    pub fn into_matrix(self) -> CMat {
        self.a
    }

    pub fn n(&self) -> usize {
        self.a.n()
    }

    pub fn dist(&self, other: &Self) -> f64 {
        self.a.dist(&other.a)
    }

    /// Congruence action `g . a = (g*)^{-1} a g^{-1}`.
    pub fn congruence(&self, g: &CMat) -> Result<Self> {
        let g_inv = g.inverse()?;
        Self::new((&(&g_inv.adjoint() * &self.a) * &g_inv).re_part())
    }
}

fn require_tangent(x: &CMat, a: &PosPoint) -> Result<()> {
    a.matrix().check_same_dim(x)?;
    x.require_hermitian(&Tolerance::default())
}

/// `a^{-1/2} X a^{-1/2}`.
fn whiten(a: &PosPoint, x: &CMat) -> Result<CMat> {
    let s = a.matrix().inv_sqrt_pd()?;
    Ok((&(&s * x) * &s).re_part())
}

/// `||X||_a = ||a^{-1/2} X a^{-1/2}||`.
pub fn finsler_norm(a: &PosPoint, x: &CMat) -> Result<f64> {
    require_tangent(x, a)?;
    Ok(whiten(a, x)?.spec_norm())
}

/// The unique geodesic `a^{1/2} (a^{-1/2} b a^{-1/2})^t a^{1/2}`.
pub fn geodesic_pos(a: &PosPoint, b: &PosPoint, t: f64) -> Result<PosPoint> {
    a.matrix().check_same_dim(b.matrix())?;
    let r = a.matrix().sqrt_pd()?;
    let inner = whiten(a, b.matrix())?;
    let powered = inner.pow_pd(t)?;
    PosPoint::new((&(&r * &powered) * &r).re_part())
}

/// Geodesic through `a` with velocity `X`: `a^{1/2} exp(a^{-1/2} X a^{-1/2}) a^{1/2}`,
/// an algebraic rearrangement of `e^{X a^{-1}/2} a e^{X a^{-1}/2}`.
pub fn exp_pos(a: &PosPoint, x: &CMat) -> Result<PosPoint> {
    require_tangent(x, a)?;
    let r = a.matrix().sqrt_pd()?;
    let e = whiten(a, x)?.exp_herm()?;
    PosPoint::new((&(&r * &e) * &r).re_part())
}

/// Inverse of [`exp_pos`]: `a^{1/2} log(a^{-1/2} b a^{-1/2}) a^{1/2}`.
pub fn log_pos(a: &PosPoint, b: &PosPoint) -> Result<CMat> {
    a.matrix().check_same_dim(b.matrix())?;
    let r = a.matrix().sqrt_pd()?;
    let l = whiten(a, b.matrix())?.log_pd()?;
    Ok((&(&r * &l) * &r).re_part())
}

/// `||log(a^{-1/2} b a^{-1/2})||`.
pub fn dist_pos(a: &PosPoint, b: &PosPoint) -> Result<f64> {
    a.matrix().check_same_dim(b.matrix())?;
    let inner = whiten(a, b.matrix())?;
    let ev = inner.herm_eig(&Tolerance::default())?.values;
    let lo = ev[0];
    let hi = ev[ev.len() - 1];
    if lo <= 0.0 {
        return Err(GeomError::NotPositiveDefinite { min_eig: lo });
    }
    Ok(lo.ln().abs().max(hi.ln().abs()))
}

/// `DY/dt = Y' - (a' a^{-1} Y + Y a^{-1} a') / 2`.
pub fn covariant_ambient(a: &PosPoint, adot: &CMat, y: &CMat, ydot: &CMat) -> Result<CMat> {
    for m in [adot, y, ydot] {
        require_tangent(m, a)?;
    }
    let a_inv = a.matrix().inverse()?;
    let sym = &(&(adot * &a_inv) * y) + &(&(y * &a_inv) * adot);
    Ok(ydot - &sym.scale_real(0.5))
}

/// Central first difference of a matrix-valued curve.
pub fn central_first<F>(f: &F, t: f64, step: f64) -> Result<CMat>
where
    F: Fn(f64) -> Result<CMat>,
{
    Ok((f(t + step)? - f(t - step)?).scale_real(0.5 / step))
}

/// Central second difference of a matrix-valued curve.
pub fn central_second<F>(f: &F, t: f64, step: f64) -> Result<CMat>
where
    F: Fn(f64) -> Result<CMat>,
{
    let mid = f(t)?.scale_real(2.0);
    Ok((f(t + step)? - mid + f(t - step)?).scale_real(1.0 / (step * step)))
}

/// Central first difference extrapolated from steps `h` and `h/2`; error `O(h^4)`.
pub fn richardson_first<F>(f: &F, t: f64, step: f64) -> Result<CMat>
where
    F: Fn(f64) -> Result<CMat>,
{
    let coarse = central_first(f, t, step)?;
    let fine = central_first(f, t, 0.5 * step)?;
    Ok((fine.scale_real(4.0) - coarse).scale_real(1.0 / 3.0))
}

/// Central second difference extrapolated from steps `h` and `h/2`; error `O(h^4)`.
pub fn richardson_second<F>(f: &F, t: f64, step: f64) -> Result<CMat>
where
    F: Fn(f64) -> Result<CMat>,
{
    let coarse = central_second(f, t, step)?;
    let fine = central_second(f, t, 0.5 * step)?;
    Ok((fine.scale_real(4.0) - coarse).scale_real(1.0 / 3.0))
}

/// `||D gamma' / dt||` at `t` for a cone curve, with Richardson-extrapolated
/// central differences.
pub fn covariant_ambient_along<F>(curve: &F, t: f64, step: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<PosPoint>,
{
    let as_mat = |s: f64| curve(s).map(PosPoint::into_matrix);
    let a = curve(t)?;
    let v = richardson_first(&as_mat, t, step)?.re_part();
    let acc = richardson_second(&as_mat, t, step)?.re_part();
    Ok(covariant_ambient(&a, &v, &v, &acc)?.spec_norm())
}
