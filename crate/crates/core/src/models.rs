//! The half-space `H = {h : Im(h) > 0}`, the disk `D = {z : ||z|| < 1}`, the
//! spheres `K_H` / `K_D` that fiber over them, and the Moebius actions.

use crate::block2::{
    borel, cayley_conjugate, require_in_group, theta, u_mat, Block2, FormTag, Pair,
};
use crate::cmat::{CMat, Tolerance, C64, I};
use crate::error::{GeomError, Result};

/// Sphere membership threshold, scaled by `max(1, ||x1||^2 + ||x2||^2)`.
pub const SPHERE_TOL: f64 = 1e-10;

/// A point of the half-space; stores `h` whole.
#[derive(Debug, Clone, PartialEq)]
pub struct HPoint {
    h: CMat,
}

impl HPoint {
    pub fn new(h: CMat) -> Result<Self> {
        Self::with_tol(h, &Tolerance::default())
    }

    pub fn with_tol(h: CMat, tol: &Tolerance) -> Result<Self> {
        let y = h.im_part();
        let min_eig = y.min_eigenvalue();
        if min_eig > tol.eps_pos {
            Ok(Self { h })
        } else {
            Err(GeomError::NotInHalfspace(format!("min eigenvalue of Im(h) is {min_eig:.3e}")))
        }
    }

    /// `x + i y`.
    pub fn from_parts(x: &CMat, y: &CMat) -> Result<Self> {
        x.check_same_dim(y)?;
        let tol = Tolerance::default();
        x.require_hermitian(&tol)?;
        y.require_hermitian(&tol)?;
        Self::new(x + &y.scale(I))
    }

    /// `i * 1`.
    pub fn i_unit(n: usize) -> Self {
        Self { h: CMat::scalar(n, I) }
    }

    pub fn h(&self) -> &CMat {
        &self.h
    }

    pub fn n(&self) -> usize {
        self.h.n()
    }

    pub fn re(&self) -> CMat {
        self.h.re_part()
    }

    pub fn im(&self) -> CMat {
        self.h.im_part()
    }

    pub fn dist(&self, other: &Self) -> f64 {
        self.h.dist(&other.h)
    }
}

/// A point of the disk.
#[derive(Debug, Clone, PartialEq)]
pub struct DPoint {
    z: CMat,
}

impl DPoint {
    pub fn new(z: CMat) -> Result<Self> {
        Self::with_tol(z, &Tolerance::default())
    }

    pub fn with_tol(z: CMat, tol: &Tolerance) -> Result<Self> {
        let norm = z.spec_norm();
        if norm < 1.0 - tol.eps_pos {
            Ok(Self { z })
        } else {
            Err(GeomError::NotInDisk { norm })
        }
    }

    pub fn origin(n: usize) -> Self {
        Self { z: CMat::zeros(n) }
    }

    pub fn z(&self) -> &CMat {
        &self.z
    }

    pub fn n(&self) -> usize {
        self.z.n()
    }

    pub fn dist(&self, other: &Self) -> f64 {
        self.z.dist(&other.z)
    }
}

/// A point of either model.
#[derive(Debug, Clone, PartialEq)]
pub enum ModelPoint {
    H(HPoint),
    D(DPoint),
}

impl ModelPoint {
    pub fn tag(&self) -> FormTag {
        match self {
            ModelPoint::H(_) => FormTag::H,
            ModelPoint::D(_) => FormTag::D,
        }
    }

    pub fn matrix(&self) -> &CMat {
        match self {
            ModelPoint::H(p) => p.h(),
            ModelPoint::D(p) => p.z(),
        }
    }

    pub fn n(&self) -> usize {
        self.matrix().n()
    }

    /// Validates `m` against the invariant of the `tag` model.
    pub fn new(tag: FormTag, m: CMat, tol: &Tolerance) -> Result<Self> {
        Ok(match tag {
            FormTag::H => ModelPoint::H(HPoint::with_tol(m, tol)?),
            FormTag::D => ModelPoint::D(DPoint::with_tol(m, tol)?),
        })
    }
}

impl From<HPoint> for ModelPoint {
    fn from(p: HPoint) -> Self {
        ModelPoint::H(p)
    }
}

impl From<DPoint> for ModelPoint {
    fn from(p: DPoint) -> Self {
        ModelPoint::D(p)
    }
}

/// A pair on the sphere `K_tag`: `theta_tag(x, x) = 1` and `x1` invertible.
#[derive(Debug, Clone, PartialEq)]
pub struct KPair {
    pair: Pair,
    tag: FormTag,
}

/// `|| theta_tag(x, x) - 1 ||`.
pub fn sphere_residual(tag: FormTag, x: &Pair) -> Result<f64> {
    let t = theta(tag, x, x)?;
    Ok(t.dist(&CMat::identity(x.n())))
}

impl KPair {
    pub fn new(tag: FormTag, x1: CMat, x2: CMat) -> Result<Self> {
        Self::with_tol(tag, x1, x2, &Tolerance::default())
    }

    pub fn with_tol(tag: FormTag, x1: CMat, x2: CMat, tol: &Tolerance) -> Result<Self> {
        let pair = Pair::new(x1, x2)?;
        Self::from_pair(tag, pair, tol)
    }

    pub fn from_pair(tag: FormTag, pair: Pair, tol: &Tolerance) -> Result<Self> {
        let sigma_min = pair.x1.min_singular_value();
        if sigma_min <= tol.eps_pos {
            return Err(GeomError::NotOnSphere {
                tag: tag.letter(),
                reason: format!("x1 is singular (smallest singular value {sigma_min:.3e})"),
            });
        }
        let residual = sphere_residual(tag, &pair)?;
        let scale = (pair.x1.spec_norm().powi(2) + pair.x2.spec_norm().powi(2)).max(1.0);
        if residual > SPHERE_TOL * scale {
            return Err(GeomError::NotOnSphere {
                tag: tag.letter(),
                reason: format!("theta(x, x) - 1 has norm {residual:.3e}"),
            });
        }
        Ok(Self { pair, tag })
    }

    pub fn tag(&self) -> FormTag {
        self.tag
    }

    pub fn pair(&self) -> &Pair {
        &self.pair
    }

    pub fn x1(&self) -> &CMat {
        &self.pair.x1
    }

    pub fn x2(&self) -> &CMat {
        &self.pair.x2
    }

    pub fn n(&self) -> usize {
        self.pair.n()
    }

    /// Left multiplication by a group element; stays on the sphere.
    pub fn act(&self, g: &Block2, tol: &Tolerance) -> Result<Self> {
        require_in_group(self.tag, g, tol)?;
        Self::from_pair(self.tag, g.apply(&self.pair)?, tol)
    }

    /// Right multiplication by `u`; a unitary `u` keeps the pair in its fiber.
    pub fn right_mul(&self, u: &CMat, tol: &Tolerance) -> Result<Self> {
        Self::from_pair(self.tag, self.pair.right_mul(u), tol)
    }
}

/// `x2 x1^{-1}`.
pub fn fibration(k: &KPair) -> Result<ModelPoint> {
    let w = k.x1().right_divide(k.x2())?;
    ModelPoint::new(k.tag(), w, &Tolerance::default())
}

pub fn fibration_h(k: &KPair) -> Result<HPoint> {
    match fibration(k)? {
        ModelPoint::H(p) => Ok(p),
        ModelPoint::D(_) => Err(GeomError::NotOnSphere { tag: 'H', reason: "pair lies on K_D".into() }),
    }
}

pub fn fibration_d(k: &KPair) -> Result<DPoint> {
    match fibration(k)? {
        ModelPoint::D(p) => Ok(p),
        ModelPoint::H(_) => Err(GeomError::NotOnSphere { tag: 'D', reason: "pair lies on K_H".into() }),
    }
}

/// `psi(h) = (1/sqrt 2) (1, h) Im(h)^{-1/2}`.
pub fn section_psi(h: &HPoint) -> Result<KPair> {
    let s = h.im().inv_sqrt_pd()?.scale_real(std::f64::consts::FRAC_1_SQRT_2);
    let x2 = h.h() * &s;
    KPair::new(FormTag::H, s, x2)
}

/// `delta(z) = (1, z) (1 - z* z)^{-1/2}`; the fiber element with `x1 > 0`.
pub fn section_delta(z: &DPoint) -> Result<KPair> {
    let n = z.n();
    let defect = CMat::identity(n) - &z.z().adjoint() * z.z();
    let s = defect.inv_sqrt_pd()?;
    let x2 = z.z() * &s;
    KPair::new(FormTag::D, s, x2)
}

/// `U (x1, x2) = ((x1 + x2)/sqrt 2, i (x1 - x2)/sqrt 2)`; maps `K_D` onto `K_H`.
pub fn sphere_cayley(k: &KPair) -> Result<KPair> {
    if k.tag() != FormTag::D {
        return Err(GeomError::NotOnSphere { tag: 'D', reason: "expected a pair on K_D".into() });
    }
    let image = u_mat(k.n()).apply(k.pair())?;
    KPair::from_pair(FormTag::H, image, &Tolerance::default())
}

/// `U* (x1, x2)`; maps `K_H` onto `K_D`.
pub fn sphere_cayley_inv(k: &KPair) -> Result<KPair> {
    if k.tag() != FormTag::H {
        return Err(GeomError::NotOnSphere { tag: 'H', reason: "expected a pair on K_H".into() });
    }
    let image = u_mat(k.n()).adjoint().apply(k.pair())?;
    KPair::from_pair(FormTag::D, image, &Tolerance::default())
}

/// `(a21 + a22 w)(a11 + a12 w)^{-1}`.
fn linear_fractional(g: &Block2, w: &CMat, tol: &Tolerance) -> Result<CMat> {
    if g.n() != w.n() {
        return Err(GeomError::DimensionMismatch(format!("group {} vs point {}", g.n(), w.n())));
    }
    let denom = &g.a11() + &(&g.a12() * w);
    let sigma_min = denom.min_singular_value();
    if sigma_min <= tol.eps_pos {
        return Err(GeomError::NumericalBreakdown(format!(
            "a11 + a12 w is not invertible (smallest singular value {sigma_min:.3e})"
        )));
    }
    let numer = &g.a21() + &(&g.a22() * w);
    denom.right_divide(&numer)
}

pub fn moebius_h(g: &Block2, p: &HPoint, tol: &Tolerance) -> Result<HPoint> {
    require_in_group(FormTag::H, g, tol)?;
    HPoint::with_tol(linear_fractional(g, p.h(), tol)?, tol)
}

pub fn moebius_d(g: &Block2, p: &DPoint, tol: &Tolerance) -> Result<DPoint> {
    require_in_group(FormTag::D, g, tol)?;
    DPoint::with_tol(linear_fractional(g, p.z(), tol)?, tol)
}

/// Moebius action of `U(theta_tag)` on the matching model.
pub fn moebius(tag: FormTag, g: &Block2, p: &ModelPoint, tol: &Tolerance) -> Result<ModelPoint> {
    match (tag, p) {
        (FormTag::H, ModelPoint::H(h)) => Ok(ModelPoint::H(moebius_h(g, h, tol)?)),
        (FormTag::D, ModelPoint::D(z)) => Ok(ModelPoint::D(moebius_d(g, z, tol)?)),
        (tag, p) => Err(GeomError::DimensionMismatch(format!(
            "group of form {} cannot act on a point of model {}",
            tag.letter(),
            p.tag().letter()
        ))),
    }
}

/// The same action routed through a sphere lift: `phi(g * section(p))`.
pub fn moebius_via_lift(tag: FormTag, g: &Block2, p: &ModelPoint, tol: &Tolerance) -> Result<ModelPoint> {
    let lift = match p {
        ModelPoint::H(h) => section_psi(h)?,
        ModelPoint::D(z) => section_delta(z)?,
    };
    if lift.tag() != tag {
        return Err(GeomError::DimensionMismatch("form tag does not match point model".into()));
    }
    fibration(&lift.act(g, tol)?)
}

/// `Gamma(h) = (1 + i h)(1 - i h)^{-1}`.
pub fn cayley(h: &HPoint) -> Result<DPoint> {
    let n = h.n();
    let ih = h.h().scale(I);
    let numer = CMat::identity(n) + &ih;
    let denom = CMat::identity(n) - &ih;
    DPoint::new(denom.right_divide(&numer)?)
}

/// `Gamma^{-1}(z) = i (1 - z)(1 + z)^{-1}`.
pub fn cayley_inv(z: &DPoint) -> Result<HPoint> {
    let n = z.n();
    let numer = (CMat::identity(n) - z.z()).scale(I);
    let denom = CMat::identity(n) + z.z();
    HPoint::new(denom.right_divide(&numer)?)
}

/// The Borel element `[[y^{-1/2}, 0], [x y^{-1/2}, y^{1/2}]]` carrying `i` to `h = x + i y`.
pub fn transitivity_witness(h: &HPoint) -> Result<Block2> {
    let tol = Tolerance::default();
    let y = h.im();
    let x = h.re();
    let y_inv_half = y.inv_sqrt_pd()?;
    borel(&y_inv_half, &(&x * &y_inv_half), &tol)
}

/// `w(to) w(from)^{-1}`, a Borel element mapping `from` to `to`.
pub fn transport(from: &HPoint, to: &HPoint) -> Result<Block2> {
    Ok(&transitivity_witness(to)? * &transitivity_witness(from)?.inverse()?)
}

/// The unique Borel element `b` with `b psi(i) = k`. With `(y1, y2) = sqrt 2 (x1, x2)`
/// it is `[[y1, 0], [y2 - i (y1*)^{-1}, (y1*)^{-1}]]`.
pub fn borel_from_sphere(k: &KPair) -> Result<Block2> {
    if k.tag() != FormTag::H {
        return Err(GeomError::NotOnSphere { tag: 'H', reason: "expected a pair on K_H".into() });
    }
    let s = std::f64::consts::SQRT_2;
    let y1 = k.x1().scale_real(s);
    let y2 = k.x2().scale_real(s);
    let y1_adj_inv = y1.adjoint().inverse()?;
    let x = &y2 - &y1_adj_inv.scale(I);
    borel(&y1, &x, &Tolerance::new(1e-9, Tolerance::default().eps_pos)?)
}

/// The base point `psi(i) = (1, i) / sqrt 2` of `K_H`, on which the Borel subgroup acts freely.
pub fn base_pair_h(n: usize) -> Pair {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    Pair { x1: CMat::real_scalar(n, s), x2: CMat::scalar(n, I * s) }
}

/// `d/dt (g . h)` for a curve through `h` with velocity `zeta`:
/// `(a22 - w a12) zeta (a11 + a12 h)^{-1}` where `w = g . h`.
pub fn action_differential(g: &Block2, h: &HPoint, zeta: &CMat, tol: &Tolerance) -> Result<CMat> {
    let w = linear_fractional(g, h.h(), tol)?;
    let denom = &g.a11() + &(&g.a12() * h.h());
    let left = &g.a22() - &(&w * &g.a12());
    denom.right_divide(&(&left * zeta))
}

/// `(re + i im) 1_n`.
pub fn scalar_point(n: usize, re: f64, im: f64) -> CMat {
    CMat::scalar(n, C64::new(re, im))
}

/// `U* g U`-transported action on `D`: `Gamma(g . h) = (U* g U) . Gamma(h)`.
pub fn transported_action(g: &Block2, h: &HPoint, tol: &Tolerance) -> Result<DPoint> {
    let gd = cayley_conjugate(g);
    moebius_d(&gd, &cayley(h)?, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::block2::{embed_invertible, in_group, Block2};
    use std::f64::consts::FRAC_1_SQRT_2;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn sigma_x() -> CMat {
        CMat::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap()
    }

    #[test]
    fn point_constructors_reject_boundary() {
        assert!(matches!(HPoint::new(CMat::identity(2)), Err(GeomError::NotInHalfspace(_))));
        assert!(HPoint::new(CMat::scalar(2, I)).is_ok());
        assert!(matches!(DPoint::new(CMat::identity(2)), Err(GeomError::NotInDisk { .. })));
        assert!(DPoint::new(CMat::real_scalar(2, 0.999)).is_ok());
        let h = HPoint::new(scalar_point(2, 1.0, 2.0)).unwrap();
        assert!(h.re().dist(&CMat::identity(2)) < 1e-15);
        assert!(h.im().dist(&CMat::real_scalar(2, 2.0)) < 1e-15);
    }

    #[test]
    fn fibration_examples() {
        let k = KPair::new(FormTag::D, CMat::identity(2), CMat::zeros(2)).unwrap();
        assert_eq!(fibration(&k).unwrap().matrix(), &CMat::zeros(2));

        let k = KPair::new(
            FormTag::H,
            CMat::real_scalar(2, FRAC_1_SQRT_2),
            CMat::scalar(2, C64::new(0.0, FRAC_1_SQRT_2)),
        )
        .unwrap();
        assert!(fibration(&k).unwrap().matrix().dist(&CMat::scalar(2, I)) < 1e-15);

        let z = DPoint::new(CMat::real_scalar(2, 0.5)).unwrap();
        let k = section_delta(&z).unwrap();
        assert!(fibration(&k).unwrap().matrix().dist(z.z()) < 1e-14);
    }

    #[test]
    fn kpair_rejects_off_sphere() {
        assert!(matches!(
            KPair::new(FormTag::D, CMat::real_scalar(2, 2.0), CMat::zeros(2)),
            Err(GeomError::NotOnSphere { .. })
        ));
        assert!(matches!(
            KPair::new(FormTag::H, CMat::zeros(2), CMat::identity(2)),
            Err(GeomError::NotOnSphere { .. })
        ));
    }

    #[test]
    fn section_psi_examples() {
        let k = section_psi(&HPoint::i_unit(2)).unwrap();
        assert!(k.x1().dist(&CMat::real_scalar(2, FRAC_1_SQRT_2)) < 1e-15);
        assert!(k.x2().dist(&CMat::scalar(2, C64::new(0.0, FRAC_1_SQRT_2))) < 1e-15);

        let h = HPoint::new(scalar_point(2, 1.0, 1.0)).unwrap();
        let k = section_psi(&h).unwrap();
        assert!(k.x2().dist(&CMat::scalar(2, C64::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2))) < 1e-15);
        assert!(sphere_residual(FormTag::H, k.pair()).unwrap() < 1e-14);

        let h = HPoint::new(CMat::from_real_diag(&[1.0, 4.0]).scale(I)).unwrap();
        let k = section_psi(&h).unwrap();
        let expected = CMat::from_real_diag(&[1.0, 0.5]).scale_real(FRAC_1_SQRT_2);
        assert!(k.x1().dist(&expected) < 1e-15);
        assert!(fibration(&k).unwrap().matrix().dist(h.h()) < 1e-14);
    }

    #[test]
    fn section_delta_examples() {
        let k = section_delta(&DPoint::origin(2)).unwrap();
        assert_eq!(k.x1(), &CMat::identity(2));
        assert_eq!(k.x2(), &CMat::zeros(2));

        let k = section_delta(&DPoint::new(CMat::real_scalar(1, 0.5)).unwrap()).unwrap();
        let s = 1.0 / 0.75f64.sqrt();
        assert!((k.x1().get(0, 0).re - s).abs() < 1e-15);
        assert!((k.x2().get(0, 0).re - 0.5 * s).abs() < 1e-15);

        let z = DPoint::new(sigma_x().scale_real(0.5)).unwrap();
        let k = section_delta(&z).unwrap();
        assert!(k.x1().dist(&CMat::real_scalar(2, s)) < 1e-14);
        assert!(k.x1().is_positive_definite(&tol()));
    }

    #[test]
    fn sphere_cayley_examples() {
        let k = KPair::new(FormTag::D, CMat::identity(2), CMat::zeros(2)).unwrap();
        let kh = sphere_cayley(&k).unwrap();
        assert!(kh.x1().dist(&CMat::real_scalar(2, FRAC_1_SQRT_2)) < 1e-15);
        assert!(kh.x2().dist(&CMat::scalar(2, C64::new(0.0, FRAC_1_SQRT_2))) < 1e-15);
        assert!(fibration(&kh).unwrap().matrix().dist(&CMat::scalar(2, I)) < 1e-15);

        let z = DPoint::new(CMat::from_rows(&[
            vec![C64::new(0.1, 0.2), C64::new(0.3, 0.0)],
            vec![C64::new(-0.2, 0.1), C64::new(0.0, -0.4)],
        ])
        .unwrap())
        .unwrap();
        let kh = sphere_cayley(&section_delta(&z).unwrap()).unwrap();
        let h = fibration_h(&kh).unwrap();
        assert!(h.dist(&cayley_inv(&z).unwrap()) < 1e-10);
        assert!(sphere_cayley_inv(&kh).unwrap().pair().dist(section_delta(&z).unwrap().pair()) < 1e-12);
    }

    #[test]
    fn moebius_examples() {
        let n = 2;
        let g = borel(&CMat::identity(n), &CMat::identity(n), &tol()).unwrap();
        let out = moebius_h(&g, &HPoint::i_unit(n), &tol()).unwrap();
        assert!(out.h().dist(&scalar_point(n, 1.0, 1.0)) < 1e-15);

        let g0 = CMat::from_real_rows(&[&[2.0, 1.0], &[0.0, 1.0]]).unwrap();
        let a = CMat::from_real_rows(&[&[2.0, 0.5], &[0.5, 1.0]]).unwrap();
        let p = HPoint::new(a.scale(I)).unwrap();
        let out = moebius_h(&embed_invertible(&g0, &tol()).unwrap(), &p, &tol()).unwrap();
        let ginv = g0.inverse().unwrap();
        let expected = (&(&ginv.adjoint() * &a) * &ginv).scale(I);
        assert!(out.h().dist(&expected) < 1e-13);

        let u = sigma_x().exp_i_herm(&tol()).unwrap();
        let g = Block2::diag(&u, &u).unwrap();
        let z = DPoint::new(CMat::from_real_rows(&[&[0.2, 0.3], &[0.0, -0.4]]).unwrap()).unwrap();
        let out = moebius_d(&g, &z, &tol()).unwrap();
        let expected = &(&u * z.z()) * &u.adjoint();
        assert!(out.z().dist(&expected) < 1e-14);
        assert!((out.z().spec_norm() - z.z().spec_norm()).abs() < 1e-14);
        assert!(moebius_d(&g, &DPoint::origin(2), &tol()).unwrap().z().spec_norm() < 1e-15);
    }

    #[test]
    fn moebius_rejects_non_members() {
        let g = Block2::identity(2).scale_real(2.0);
        assert!(matches!(
            moebius_h(&g, &HPoint::i_unit(2), &tol()),
            Err(GeomError::NotInGroup { .. })
        ));
        let p = ModelPoint::H(HPoint::i_unit(2));
        assert!(moebius(FormTag::D, &Block2::identity(2), &p, &tol()).is_err());
    }

    #[test]
    fn cayley_examples() {
        assert!(cayley(&HPoint::i_unit(2)).unwrap().z().spec_norm() < 1e-15);
        let z = cayley(&HPoint::new(CMat::scalar(2, C64::new(0.0, 2.0))).unwrap()).unwrap();
        assert!(z.z().dist(&CMat::real_scalar(2, -1.0 / 3.0)) < 1e-15);
        assert!(cayley_inv(&DPoint::origin(2)).unwrap().h().dist(&CMat::scalar(2, I)) < 1e-15);
    }

    #[test]
    fn transitivity_witness_examples() {
        let w = transitivity_witness(&HPoint::i_unit(2)).unwrap();
        assert!(w.dist(&Block2::identity(2)) < 1e-15);

        let w = transitivity_witness(&HPoint::new(scalar_point(2, 1.0, 1.0)).unwrap()).unwrap();
        let expected =
            Block2::from_blocks(&CMat::identity(2), &CMat::zeros(2), &CMat::identity(2), &CMat::identity(2))
                .unwrap();
        assert!(w.dist(&expected) < 1e-15);

        let h = HPoint::new(CMat::from_real_diag(&[4.0, 1.0]).scale(I)).unwrap();
        let w = transitivity_witness(&h).unwrap();
        let expected =
            Block2::diag(&CMat::from_real_diag(&[0.5, 1.0]), &CMat::from_real_diag(&[2.0, 1.0])).unwrap();
        assert!(w.dist(&expected) < 1e-15);
        assert!(in_group(FormTag::H, &w, &tol()));
        assert!(moebius_h(&w, &HPoint::i_unit(2), &tol()).unwrap().dist(&h) < 1e-14);
    }

    #[test]
    fn borel_from_sphere_recovers_pair() {
        let h = HPoint::new(CMat::from_rows(&[
            vec![C64::new(0.3, 1.5), C64::new(0.2, 0.1)],
            vec![C64::new(0.2, 0.1), C64::new(-0.4, 0.8)],
        ])
        .unwrap())
        .unwrap();
        let k = section_psi(&h).unwrap();
        let b = borel_from_sphere(&k).unwrap();
        let image = b.apply(&base_pair_h(2)).unwrap();
        assert!(image.dist(k.pair()) < 1e-12);
    }
}
