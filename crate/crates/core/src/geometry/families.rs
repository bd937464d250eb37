use crate::block2::{exp_chart, LieElem};
use crate::cmat::{CMat, ScalarFn, Tolerance, I};
use crate::error::{GeomError, Result};
use crate::models::{moebius_h, HPoint};

/// Geodesic through `i`: `delta(t) = e^{t X_h} . i` for horizontal `X_h`.
pub fn geodesic_from_i(x: &LieElem, t: f64) -> Result<HPoint> {
    let tol = Tolerance::default();
    let residual = x.vertical.spec_norm();
    if residual > tol.eps_struct * x.value.spec_norm().max(1.0) {
        return Err(GeomError::NotHorizontal { residual });
    }
    let g = exp_chart(&x.scaled(t), &tol)?;
    moebius_h(&g, &HPoint::i_unit(x.n()), &tol)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyVariant {
    Commuting,
    Anticommuting,
}

/// Parameters for the closed-form geodesic families through `i` generated by
/// `X_h = [[alpha, beta], [beta, -alpha]]`.
#[derive(Debug, Clone)]
pub struct GeodesicFamilyParams {
    pub variant: FamilyVariant,
    pub alpha: CMat,
    pub beta: CMat,
    /// `(alpha^2 + beta^2)^{1/2}`; commuting variant only.
    pub gamma: Option<CMat>,
    /// Angle with `alpha = cos(chi) gamma`, `beta = sin(chi) gamma`; commuting variant only.
    pub chi_angle: Option<CMat>,
}

impl GeodesicFamilyParams {
    /// Commuting family from `gamma >= 0` and an angle `chi` sharing its eigenbasis.
    pub fn commuting(gamma: &CMat, chi_angle: &CMat) -> Result<Self> {
        let tol = Tolerance::default();
        gamma.check_same_dim(chi_angle)?;
        gamma.require_hermitian(&tol).map_err(|e| GeomError::InvalidParams(e.to_string()))?;
        chi_angle.require_hermitian(&tol).map_err(|e| GeomError::InvalidParams(e.to_string()))?;
        let gamma = gamma.re_part();
        let chi_angle = chi_angle.re_part();
        let min_eig = gamma.min_eigenvalue();
        if min_eig < -tol.eps_pos {
            return Err(GeomError::InvalidParams(format!("gamma has negative eigenvalue {min_eig:.3e}")));
        }
        let comm = gamma.commutator(&chi_angle).spec_norm();
        if comm > tol.eps_struct * (gamma.spec_norm() * chi_angle.spec_norm()).max(1.0) {
            return Err(GeomError::InvalidParams(format!("gamma and chi do not commute ({comm:.3e})")));
        }
        let alpha = (&chi_angle.fun_calc(ScalarFn::Cos, &tol)? * &gamma).re_part();
        let beta = (&chi_angle.fun_calc(ScalarFn::Sin, &tol)? * &gamma).re_part();
        let params =
            Self { variant: FamilyVariant::Commuting, alpha, beta, gamma: Some(gamma), chi_angle: Some(chi_angle) };
        params.validate()?;
        Ok(params)
    }

    /// Anti-commuting family: `alpha beta + beta alpha = 0`.
    pub fn anticommuting(alpha: &CMat, beta: &CMat) -> Result<Self> {
        let params = Self {
            variant: FamilyVariant::Anticommuting,
            alpha: alpha.clone(),
            beta: beta.clone(),
            gamma: None,
            chi_angle: None,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        let tol = Tolerance::default();
        self.alpha.check_same_dim(&self.beta)?;
        for m in [&self.alpha, &self.beta] {
            m.require_hermitian(&tol).map_err(|e| GeomError::InvalidParams(e.to_string()))?;
        }
        let scale = (self.alpha.spec_norm() * self.beta.spec_norm()).max(1.0);
        match self.variant {
            FamilyVariant::Commuting => {
                let comm = self.alpha.commutator(&self.beta).spec_norm();
                if comm > tol.eps_struct * scale {
                    return Err(GeomError::InvalidParams(format!("alpha and beta do not commute ({comm:.3e})")));
                }
                let (gamma, chi) = match (&self.gamma, &self.chi_angle) {
                    (Some(g), Some(c)) => (g, c),
                    _ => return Err(GeomError::InvalidParams("commuting family needs gamma and chi".into())),
                };
                let a = &chi.fun_calc(ScalarFn::Cos, &tol)? * gamma;
                let b = &chi.fun_calc(ScalarFn::Sin, &tol)? * gamma;
                let err = a.dist(&self.alpha).max(b.dist(&self.beta));
                if err > 1e-10 * gamma.spec_norm().max(1.0) {
                    return Err(GeomError::InvalidParams(format!(
                        "cos/sin factorization does not reproduce alpha, beta ({err:.3e})"
                    )));
                }
            }
            FamilyVariant::Anticommuting => {
                let anti = self.alpha.anticommutator(&self.beta).spec_norm();
                if anti > tol.eps_struct * scale {
                    return Err(GeomError::InvalidParams(format!(
                        "alpha and beta do not anti-commute ({anti:.3e})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.alpha.n()
    }

    /// `X_h = [[alpha, beta], [beta, -alpha]]`.
    pub fn generator(&self) -> Result<LieElem> {
        LieElem::horizontal(&self.alpha, &self.beta, &Tolerance::default())
    }

    /// Circle center `mu = -cos(chi) sin(chi)^{-1}`, solving `mu beta = -alpha`;
    /// `None` unless `sin(chi)` is invertible.
    pub fn circle_center(&self) -> Result<Option<CMat>> {
        let tol = Tolerance::default();
        let chi = match (&self.variant, &self.chi_angle) {
            (FamilyVariant::Commuting, Some(c)) => c,
            _ => return Ok(None),
        };
        let s = chi.fun_calc(ScalarFn::Sin, &tol)?;
        if s.min_singular_value() <= 1e-8 {
            return Ok(None);
        }
        let c = chi.fun_calc(ScalarFn::Cos, &tol)?;
        Ok(Some((-(&c * &s.inverse()?)).re_part()))
    }

    /// `||(Re delta - mu)^2 + (Im delta)^2 - (mu^2 + 1)||` at `t`, when the center exists.
    pub fn circle_residual(&self, t: f64) -> Result<Option<f64>> {
        let Some(mu) = self.circle_center()? else {
            return Ok(None);
        };
        let d = geodesic_commuting(self, t)?;
        let shifted = &d.re() - &mu;
        let im = d.im();
        let lhs = &(&shifted * &shifted) + &(&im * &im);
        let rhs = &(&mu * &mu) + &CMat::identity(self.n());
        Ok(Some(lhs.dist(&rhs)))
    }
}

/// `delta(t) = (sin(chi) sinh(2 t gamma) + i)(cosh(2 t gamma) + cos(chi) sinh(2 t gamma))^{-1}`.
pub fn geodesic_commuting(params: &GeodesicFamilyParams, t: f64) -> Result<HPoint> {
    if params.variant != FamilyVariant::Commuting {
        return Err(GeomError::InvalidParams("expected the commuting variant".into()));
    }
    let (Some(gamma), Some(chi)) = (&params.gamma, &params.chi_angle) else {
        return Err(GeomError::InvalidParams("commuting family needs gamma and chi".into()));
    };
    let tol = Tolerance::default();
    let n = params.n();
    let arg = gamma.scale_real(2.0 * t);
    let sh = arg.fun_calc(ScalarFn::Sinh, &tol)?;
    let ch = arg.fun_calc(ScalarFn::Cosh, &tol)?;
    let sin = chi.fun_calc(ScalarFn::Sin, &tol)?;
    let cos = chi.fun_calc(ScalarFn::Cos, &tol)?;
    let denom = (&ch + &(&cos * &sh)).re_part();
    let denom_inv = denom.inverse()?;
    let re = (&(&sin * &sh) * &denom_inv).re_part();
    let im = denom_inv.re_part();
    let _ = n;
    HPoint::new(&re + &im.scale(I))
}

/// `delta(t) = sinh(2 t beta) cosh^{-1}(2 t beta) + i cosh^{-1}(2 t beta) e^{-2 t alpha}`.
pub fn geodesic_anticommuting(params: &GeodesicFamilyParams, t: f64) -> Result<HPoint> {
    if params.variant != FamilyVariant::Anticommuting {
        return Err(GeomError::InvalidParams("expected the anti-commuting variant".into()));
    }
    let tol = Tolerance::default();
    let arg = params.beta.scale_real(2.0 * t);
    let sech = arg.fun_calc(ScalarFn::InvCosh, &tol)?;
    let re = arg.map_hermitian(f64::tanh, &tol)?;
    let decay = params.alpha.scale_real(-2.0 * t).exp_herm()?;
    let im = (&sech * &decay).re_part();
    HPoint::new(&re + &im.scale(I))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn sigma_x() -> CMat {
        CMat::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap()
    }

    fn sigma_z() -> CMat {
        CMat::from_real_diag(&[1.0, -1.0])
    }

    #[test]
    fn zero_generator_is_constant() {
        let x = LieElem::zero(2);
        for t in [0.0, 0.5, 2.0] {
            assert!(geodesic_from_i(&x, t).unwrap().dist(&HPoint::i_unit(2)) < 1e-15);
        }
    }

    #[test]
    fn scalar_orbit_closed_form() {
        let beta = 0.7;
        let x = LieElem::horizontal(&CMat::zeros(1), &CMat::real_scalar(1, beta), &Tolerance::default())
            .unwrap();
        for t in [0.1, 0.5, 1.0] {
            let d = geodesic_from_i(&x, t).unwrap();
            let s = 2.0 * t * beta;
            let expected = CMat::scalar(1, crate::cmat::C64::new(s.tanh(), 1.0 / s.cosh()));
            assert!(d.h().dist(&expected) < 1e-13);
        }
    }

    #[test]
    fn vertical_generator_rejected() {
        let v = LieElem::vertical(&sigma_z().scale(I), &CMat::zeros(2), &Tolerance::default()).unwrap();
        assert!(matches!(geodesic_from_i(&v, 0.5), Err(GeomError::NotHorizontal { .. })));
    }

    #[test]
    fn commuting_examples() {
        let p = GeodesicFamilyParams::commuting(&CMat::zeros(2), &CMat::real_scalar(2, 0.3)).unwrap();
        for t in [0.0, 0.4, 1.0] {
            assert!(geodesic_commuting(&p, t).unwrap().dist(&HPoint::i_unit(2)) < 1e-15);
        }

        let p = GeodesicFamilyParams::commuting(&CMat::identity(1), &CMat::real_scalar(1, FRAC_PI_2)).unwrap();
        for t in [0.2, 0.9] {
            let d = geodesic_commuting(&p, t).unwrap();
            let expected = CMat::scalar(1, crate::cmat::C64::new((2.0 * t).tanh(), 1.0 / (2.0 * t).cosh()));
            assert!(d.h().dist(&expected) < 1e-14);
            let r = d.re().get(0, 0).re;
            let m = d.im().get(0, 0).re;
            assert!((r * r + m * m - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn commuting_params_validation() {
        assert!(matches!(
            GeodesicFamilyParams::commuting(&sigma_x(), &sigma_z()),
            Err(GeomError::InvalidParams(_))
        ));
        assert!(matches!(
            GeodesicFamilyParams::commuting(&CMat::real_scalar(2, -1.0), &sigma_z()),
            Err(GeomError::InvalidParams(_))
        ));
        let p = GeodesicFamilyParams::anticommuting(&sigma_z(), &sigma_x()).unwrap();
        assert!(matches!(geodesic_commuting(&p, 0.3), Err(GeomError::InvalidParams(_))));
    }

    #[test]
    fn anticommuting_examples() {
        let p = GeodesicFamilyParams::anticommuting(&CMat::zeros(1), &CMat::real_scalar(1, 1.0)).unwrap();
        let q = GeodesicFamilyParams::commuting(&CMat::identity(1), &CMat::real_scalar(1, FRAC_PI_2)).unwrap();
        for t in [0.1, 0.6] {
            let a = geodesic_anticommuting(&p, t).unwrap();
            let b = geodesic_commuting(&q, t).unwrap();
            assert!(a.dist(&b) < 1e-14);
        }

        let p = GeodesicFamilyParams::anticommuting(&sigma_z(), &sigma_x()).unwrap();
        let x = p.generator().unwrap();
        for k in 0..=10 {
            let t = k as f64 / 10.0;
            let closed = geodesic_anticommuting(&p, t).unwrap();
            let orbit = geodesic_from_i(&x, t).unwrap();
            assert!(closed.dist(&orbit) < 1e-12, "t = {t}");
            assert!(closed.im().is_positive_definite(&Tolerance::default()));
        }
        assert!(matches!(
            GeodesicFamilyParams::anticommuting(&sigma_z(), &sigma_z()),
            Err(GeomError::InvalidParams(_))
        ));
    }

    #[test]
    fn circle_center_requires_invertible_sine() {
        let p = GeodesicFamilyParams::commuting(&CMat::identity(2), &CMat::zeros(2)).unwrap();
        assert!(p.circle_center().unwrap().is_none());
        let p = GeodesicFamilyParams::commuting(&CMat::from_real_diag(&[0.5, 1.2]), &CMat::from_real_diag(&[0.4, 2.0]))
            .unwrap();
        let mu = p.circle_center().unwrap().unwrap();
        assert!((&mu * &p.beta).dist(&-&p.alpha) < 1e-13);
        assert!(p.circle_residual(0.7).unwrap().unwrap() < 1e-12);
    }
}
