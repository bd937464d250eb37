use crate::block2::{Block2, FormTag};
use crate::cmat::Tolerance;
use crate::error::{GeomError, Result};
use crate::models::{DPoint, HPoint, ModelPoint};
use crate::reflections::{embed_q, phi_d, phi_d_inv, phi_h, phi_h_inv, Reflection, ReflectionDiagnostics};

use super::{dist_pos, geodesic_pos, PosPoint};

/// Largest reflection defect tolerated at interior geodesic samples.
pub const DRIFT_TOL: f64 = 1e-7;

/// `d_g(a, b)` for `a`, `b` in the image of `Q_rho`. There `rho eps` is similar to
/// its inverse `eps rho`, so the spectrum of `a^{-1/2} b a^{-1/2}` is closed under
/// `lambda -> 1/lambda` and the distance is `log lambda_max`, the end of the
/// spectrum computed with full relative accuracy.
fn dist_q(a: &PosPoint, b: &PosPoint) -> Result<f64> {
    let s = a.matrix().inv_sqrt_pd()?;
    let inner = (&(&s * b.matrix()) * &s).re_part();
    let ev = inner.herm_eig(&Tolerance::default())?.values;
    let hi = ev[ev.len() - 1];
    if ev[0] <= 0.0 {
        return Err(GeomError::NotPositiveDefinite { min_eig: ev[0] });
    }
    Ok(hi.ln().max(0.0))
}

fn cone_image(p: &ModelPoint) -> Result<PosPoint> {
    let e = match p {
        ModelPoint::H(h) => phi_h(h)?,
        ModelPoint::D(z) => phi_d(z)?,
    };
    PosPoint::from_block(&embed_q(&e)?)
}

/// `d_H(h1, h2) = d_g(rho_H Phi_H(h1), rho_H Phi_H(h2))`.
///
/// Evaluated as `d_g(1, rho_H Phi_H(w^{-1} . h2))`, where the Borel element
/// `w` carries `i` to `h1` and `rho_H Phi_H(i) = 1`. This avoids whitening by
/// `(rho_H Phi_H(h1))^{-1/2}`, whose condition number grows like `||Im h1^{-1}||^2`.
pub fn dist_h(p: &HPoint, q: &HPoint) -> Result<f64> {
    p.h().check_same_dim(q.h())?;
    let s = p.im().inv_sqrt_pd()?;
    let moved = (&s * &(q.h() - &p.re())) * &s;
    let moved = HPoint::new(moved)?;
    dist_q(&PosPoint::identity(2 * p.n()), &cone_image(&ModelPoint::H(moved))?)
}

/// Direct evaluation of `d_g(rho_H Phi_H(h1), rho_H Phi_H(h2))` without the
/// reduction to `i`.
pub fn dist_h_direct(p: &HPoint, q: &HPoint) -> Result<f64> {
    dist_pos(&cone_image(&ModelPoint::H(p.clone()))?, &cone_image(&ModelPoint::H(q.clone()))?)
}

/// `d_D(z1, z2) = d_g(rho_D Phi_D(z1), rho_D Phi_D(z2))`.
pub fn dist_d(p: &DPoint, q: &DPoint) -> Result<f64> {
    dist_q(&cone_image(&ModelPoint::D(p.clone()))?, &cone_image(&ModelPoint::D(q.clone()))?)
}

pub fn dist_model(p: &ModelPoint, q: &ModelPoint) -> Result<f64> {
    if p.tag() != q.tag() {
        return Err(GeomError::DimensionMismatch("points come from different models".into()));
    }
    match (p, q) {
        (ModelPoint::H(a), ModelPoint::H(b)) => dist_h(a, b),
        (ModelPoint::D(a), ModelPoint::D(b)) => dist_d(a, b),
        _ => unreachable!("tags checked above"),
    }
}

/// Closed form `log((1 + ||z||) / (1 - ||z||))`.
pub fn dist_d_origin(z: &DPoint) -> f64 {
    let r = z.z().spec_norm();
    ((1.0 + r) / (1.0 - r)).ln()
}

/// Precomputed model geodesic: both endpoints lifted to the cone once.
#[derive(Debug, Clone)]
pub struct ModelGeodesic {
    tag: FormTag,
    start: PosPoint,
    end: PosPoint,
}

impl ModelGeodesic {
    pub fn new(p: &ModelPoint, q: &ModelPoint) -> Result<Self> {
        if p.tag() != q.tag() {
            return Err(GeomError::DimensionMismatch("points come from different models".into()));
        }
        p.matrix().check_same_dim(q.matrix())?;
        Ok(Self { tag: p.tag(), start: cone_image(p)?, end: cone_image(q)? })
    }

    pub fn tag(&self) -> FormTag {
        self.tag
    }

    fn eps_at(&self, t: f64) -> Result<Block2> {
        let gamma = geodesic_pos(&self.start, &self.end, t)?;
        let n = gamma.n() / 2;
        Ok(&self.tag.rho(n) * &Block2::from_cmat(gamma.into_matrix())?)
    }

    /// Defects of `rho * gamma(t)` as a reflection, with no threshold applied.
    pub fn diagnostics_at(&self, t: f64) -> Result<ReflectionDiagnostics> {
        Ok(ReflectionDiagnostics::measure(self.tag, &self.eps_at(t)?))
    }

    /// Reflection `rho * gamma(t)` together with its measured defects.
    pub fn reflection_at(&self, t: f64) -> Result<(Reflection, ReflectionDiagnostics)> {
        let eps = self.eps_at(t)?;
        let diag = ReflectionDiagnostics::measure(self.tag, &eps);
        if !diag.passes(DRIFT_TOL, &Tolerance::default()) {
            return Err(GeomError::ReflectionDrift {
                t,
                reason: format!(
                    "eps^2 residual {:.3e}, hermitian residual {:.3e}, min eigenvalue {:.3e}",
                    diag.square_residual, diag.hermitian_residual, diag.min_eig
                ),
            });
        }
        let refl = Reflection::with_tol(self.tag, eps, DRIFT_TOL, &Tolerance::default())
            .map_err(|e| GeomError::ReflectionDrift { t, reason: e.to_string() })?;
        Ok((refl, diag))
    }

    pub fn at(&self, t: f64) -> Result<ModelPoint> {
        Ok(self.at_with_diagnostics(t)?.0)
    }

    pub fn at_with_diagnostics(&self, t: f64) -> Result<(ModelPoint, ReflectionDiagnostics)> {
        let (refl, diag) = self.reflection_at(t)?;
        let point = match self.tag {
            FormTag::H => ModelPoint::H(phi_h_inv(&refl)?),
            FormTag::D => ModelPoint::D(phi_d_inv(&refl)?),
        };
        Ok((point, diag))
    }

    /// Like [`Self::at_with_diagnostics`], but a structural defect above
    /// [`DRIFT_TOL`] is returned for the caller to report and does not fail.
    /// Positivity of `rho eps` is still required.
    pub fn sample(&self, t: f64) -> Result<(ModelPoint, ReflectionDiagnostics)> {
        let eps = self.eps_at(t)?;
        let diag = ReflectionDiagnostics::measure(self.tag, &eps);
        let refl = Reflection::with_tol(self.tag, eps, f64::INFINITY, &Tolerance::default())
            .map_err(|e| GeomError::ReflectionDrift { t, reason: e.to_string() })?;
        let point = match self.tag {
            FormTag::H => ModelPoint::H(phi_h_inv(&refl)?),
            FormTag::D => ModelPoint::D(phi_d_inv(&refl)?),
        };
        Ok((point, diag))
    }

    /// Length of the whole segment.
    pub fn length(&self) -> Result<f64> {
        dist_pos(&self.start, &self.end)
    }
}

/// Geodesic of the model through the positive cone: lift both points with
/// `rho Phi`, follow the cone geodesic, and map back with `Phi^{-1}`.
pub fn geodesic_model(p: &ModelPoint, q: &ModelPoint, t: f64) -> Result<ModelPoint> {
    ModelGeodesic::new(p, q)?.at(t)
}

/// Samples at each `t` in `ts`, sharing the endpoint lifts.
pub fn geodesic_model_samples(p: &ModelPoint, q: &ModelPoint, ts: &[f64]) -> Result<Vec<ModelPoint>> {
    let g = ModelGeodesic::new(p, q)?;
    ts.iter().map(|&t| g.at(t)).collect()
}
