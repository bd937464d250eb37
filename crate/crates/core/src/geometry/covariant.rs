use crate::block2::Block2;
use crate::cmat::{CMat, Tolerance, I};
use crate::error::Result;
use crate::models::HPoint;

use super::{central_first, central_second};

/// A tangent vector `zeta = chi + i ups` at a point of `H`.
#[derive(Debug, Clone, PartialEq)]
pub struct HTangent {
    pub base: HPoint,
    pub chi: CMat,
    pub ups: CMat,
}

impl HTangent {
    pub fn new(base: HPoint, chi: CMat, ups: CMat) -> Result<Self> {
        let tol = Tolerance::default();
        base.h().check_same_dim(&chi)?;
        chi.check_same_dim(&ups)?;
        chi.require_hermitian(&tol)?;
        ups.require_hermitian(&tol)?;
        Ok(Self { base, chi: chi.re_part(), ups: ups.re_part() })
    }

    /// Splits a complex tangent `zeta` into `chi = Re zeta`, `ups = Im zeta`.
    pub fn from_complex(base: HPoint, zeta: &CMat) -> Result<Self> {
        Self::new(base, zeta.re_part(), zeta.im_part())
    }

    pub fn value(&self) -> CMat {
        &self.chi + &self.ups.scale(I)
    }

    pub fn norm(&self) -> f64 {
        self.value().spec_norm()
    }
}

/// Covariant derivative of the reductive connection on `H` at `h0 = x0 + i y0`:
///
/// `D zeta/dt = zeta' - Re(x' y0^{-1} ups + y' y0^{-1} chi) + i Re(x' y0^{-1} chi - y' y0^{-1} ups)`
///
/// where `(x', y')` is the curve velocity, `zeta = chi + i ups` the field value and
/// `(chi', ups')` its derivative along the curve.
pub fn covariant_h(
    zeta: &HTangent,
    xdot: &CMat,
    ydot: &CMat,
    chi_dot: &CMat,
    ups_dot: &CMat,
) -> Result<HTangent> {
    let tol = Tolerance::default();
    for m in [xdot, ydot, chi_dot, ups_dot] {
        zeta.chi.check_same_dim(m)?;
        m.require_hermitian(&tol)?;
    }
    let y_inv = zeta.base.im().inverse()?;
    let xy = xdot * &y_inv;
    let yy = ydot * &y_inv;
    let re_corr = (&(&xy * &zeta.ups) + &(&yy * &zeta.chi)).re_part();
    let im_corr = (&(&xy * &zeta.chi) - &(&yy * &zeta.ups)).re_part();
    HTangent::new(zeta.base.clone(), (chi_dot - &re_corr).re_part(), (ups_dot + &im_corr).re_part())
}

/// `||D delta'/dt||` at `t` for a curve in `H` with `zeta = delta'`, by central differences.
pub fn covariant_h_along<F>(curve: &F, t: f64, step: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<HPoint>,
{
    let as_mat = |s: f64| curve(s).map(|p| p.h().clone());
    let base = curve(t)?;
    let vel = central_first(&as_mat, t, step)?;
    let acc = central_second(&as_mat, t, step)?;
    let zeta = HTangent::from_complex(base, &vel)?;
    let out = covariant_h(&zeta, &zeta.chi, &zeta.ups, &acc.re_part(), &acc.im_part())?;
    Ok(out.norm())
}

/// Connection 1-form at `i`: `kappa_i(chi + i ups) = (1/2) [[-ups, chi], [chi, ups]]`.
pub fn kappa_i(chi: &CMat, ups: &CMat) -> Result<Block2> {
    let tol = Tolerance::default();
    chi.check_same_dim(ups)?;
    chi.require_hermitian(&tol)?;
    ups.require_hermitian(&tol)?;
    let c = chi.re_part().scale_real(0.5);
    let u = ups.re_part().scale_real(0.5);
    Block2::from_blocks(&-&u, &c, &c, &u)
}

/// Differential at the identity of `g -> g . i`:
/// `gamma21 + gamma12 + i (gamma22 - gamma11)`.
pub fn d_pi_i(g: &Block2) -> CMat {
    &(&g.a21() + &g.a12()) + &(&g.a22() - &g.a11()).scale(I)
}
