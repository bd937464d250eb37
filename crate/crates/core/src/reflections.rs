//! Reflections `eps` with `eps^2 = 1` and `rho * eps` positive definite: the
//! space `Q_rho`, diffeomorphic to `D` (and `H`) through `Phi_D` (`Phi_H`).

use crate::block2::{rho_d, u_mat, Block2, FormTag};
use crate::cmat::{CMat, Tolerance};
use crate::error::{GeomError, Result};
use crate::models::{cayley, cayley_inv, section_delta, DPoint, HPoint, KPair};

/// Threshold on `||eps^2 - 1||` and on the Hermitian defect of `rho eps`,
/// relative to `max(1, ||eps||^2)`.
pub const REFLECTION_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct Reflection {
    eps: Block2,
    tag: FormTag,
}

/// Measured defects of a candidate reflection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReflectionDiagnostics {
    /// `||eps^2 - 1|| / max(1, ||eps||^2)`.
    pub square_residual: f64,
    /// `||rho eps - (rho eps)*|| / max(1, ||eps||)`.
    pub hermitian_residual: f64,
    /// Smallest eigenvalue of the Hermitian part of `rho eps`.
    pub min_eig: f64,
}

impl ReflectionDiagnostics {
    pub fn measure(tag: FormTag, eps: &Block2) -> Self {
        let n = eps.n();
        let norm = eps.spec_norm();
        let square_residual = (eps * eps).dist(&Block2::identity(n)) / norm.powi(2).max(1.0);
        let pos = &tag.rho(n) * eps;
        let hermitian_residual = pos.as_cmat().hermitian_residual() / norm.max(1.0);
        let min_eig = pos.as_cmat().min_eigenvalue();
        Self { square_residual, hermitian_residual, min_eig }
    }

    pub fn passes(&self, threshold: f64, tol: &Tolerance) -> bool {
        self.square_residual <= threshold && self.hermitian_residual <= threshold && self.min_eig > tol.eps_pos
    }
}

impl Reflection {
    pub fn new(tag: FormTag, eps: Block2) -> Result<Self> {
        Self::with_tol(tag, eps, REFLECTION_TOL, &Tolerance::default())
    }

    /// Validates with an explicit threshold on the structural residuals.
    pub fn with_tol(tag: FormTag, eps: Block2, threshold: f64, tol: &Tolerance) -> Result<Self> {
        let d = ReflectionDiagnostics::measure(tag, &eps);
        if d.square_residual > threshold {
            return Err(GeomError::NotReflection(format!(
                "eps^2 - 1 has relative norm {:.3e}",
                d.square_residual
            )));
        }
        if d.hermitian_residual > threshold {
            return Err(GeomError::NotReflection(format!(
                "rho eps is not Hermitian (residual {:.3e})",
                d.hermitian_residual
            )));
        }
        if d.min_eig <= tol.eps_pos {
            return Err(GeomError::NotReflection(format!(
                "rho eps is not positive definite (min eigenvalue {:.3e})",
                d.min_eig
            )));
        }
        Ok(Self { eps, tag })
    }

    pub fn eps(&self) -> &Block2 {
        &self.eps
    }

    pub fn tag(&self) -> FormTag {
        self.tag
    }

    pub fn n(&self) -> usize {
        self.eps.n()
    }

    pub fn diagnostics(&self) -> ReflectionDiagnostics {
        ReflectionDiagnostics::measure(self.tag, &self.eps)
    }

    /// `g eps g^{-1}`; the transitive action of the form's group on `Q_rho`.
    pub fn conjugate(&self, g: &Block2) -> Result<Self> {
        let e = &(g * &self.eps) * &g.inverse()?;
        Self::new(self.tag, e)
    }
}

/// `p_x = x x* rho_D = [[x1 x1*, -x1 x2*], [x2 x1*, -x2 x2*]]` for `x` on `K_D`.
pub fn proj_p(k: &KPair) -> Result<Block2> {
    if k.tag() != FormTag::D {
        return Err(GeomError::NotOnSphere { tag: 'D', reason: "expected a pair on K_D".into() });
    }
    let (x1, x2) = (k.x1(), k.x2());
    Block2::from_blocks(
        &(x1 * &x1.adjoint()),
        &-(x1 * &x2.adjoint()),
        &(x2 * &x1.adjoint()),
        &-(x2 * &x2.adjoint()),
    )
}

/// `2 p_x - 1` for any pair on `K_D`.
pub fn phi_d_from_pair(k: &KPair) -> Result<Reflection> {
    let p = proj_p(k)?;
    let eps = &p.scale_real(2.0) - &Block2::identity(k.n());
    Reflection::new(FormTag::D, eps)
}

/// `Phi_D(z)` from the closed form in `z`:
/// `[[2(1-z*z)^{-1} - 1, -2(1-z*z)^{-1} z*], [2z(1-z*z)^{-1}, -2z(1-z*z)^{-1}z* - 1]]`.
pub fn phi_d(z: &DPoint) -> Result<Reflection> {
    let n = z.n();
    let one = CMat::identity(n);
    let zm = z.z();
    let za = zm.adjoint();
    let r = (&one - &(&za * zm)).inverse()?;
    let two_r = r.scale_real(2.0);
    let e11 = &two_r - &one;
    let e12 = -(&two_r * &za);
    let e21 = zm * &two_r;
    let e22 = -(&(&e21 * &za)) - &one;
    Reflection::new(FormTag::D, Block2::from_blocks(&e11, &e12, &e21, &e22)?)
}

/// `Phi_D^{-1}(eps) = -eps12* (1 + eps11)^{-1}`.
pub fn phi_d_inv(e: &Reflection) -> Result<DPoint> {
    if e.tag() != FormTag::D {
        return Err(GeomError::NotReflection("expected a reflection of Q_rho_D".into()));
    }
    let eps = e.eps();
    let one = CMat::identity(e.n());
    let denom = &one + &eps.a11();
    let numer = -eps.a12().adjoint();
    DPoint::new(denom.right_divide(&numer)?)
}

/// Canonical lift `Q_rho_D -> K_D` with positive first coordinate:
/// `(1/sqrt 2) ((1 + eps11)^{1/2}, -eps12* (1 + eps11)^{-1/2})`.
pub fn canonical_lift(e: &Reflection) -> Result<KPair> {
    if e.tag() != FormTag::D {
        return Err(GeomError::NotReflection("expected a reflection of Q_rho_D".into()));
    }
    let eps = e.eps();
    let one_plus = (&CMat::identity(e.n()) + &eps.a11()).re_part();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let x1 = one_plus.sqrt_pd()?.scale_real(s);
    let x2 = (&-eps.a12().adjoint() * &one_plus.inv_sqrt_pd()?).scale_real(s);
    KPair::new(FormTag::D, x1, x2)
}

/// `Phi_H(h) = U Phi_D(Gamma(h)) U*`.
pub fn phi_h(h: &HPoint) -> Result<Reflection> {
    let inner = phi_d(&cayley(h)?)?;
    let u = u_mat(h.n());
    let eps = &(&u * inner.eps()) * &u.adjoint();
    Reflection::new(FormTag::H, eps)
}

/// `Phi_H^{-1}(eps) = Gamma^{-1}(Phi_D^{-1}(U* eps U))`.
pub fn phi_h_inv(e: &Reflection) -> Result<HPoint> {
    if e.tag() != FormTag::H {
        return Err(GeomError::NotReflection("expected a reflection of Q_rho_H".into()));
    }
    let u = u_mat(e.n());
    let eps_d = Reflection::new(FormTag::D, &(&u.adjoint() * e.eps()) * &u)?;
    cayley_inv(&phi_d_inv(&eps_d)?)
}

/// `eps -> rho eps`, the embedding into the positive cone of `M_2(A)`.
pub fn embed_q(e: &Reflection) -> Result<Block2> {
    let pos = &e.tag().rho(e.n()) * e.eps();
    let pos = Block2::from_cmat(pos.as_cmat().re_part())?;
    let min_eig = pos.as_cmat().min_eigenvalue();
    if min_eig <= Tolerance::default().eps_pos {
        return Err(GeomError::NotReflection(format!(
            "rho eps is not positive definite (min eigenvalue {min_eig:.3e})"
        )));
    }
    Ok(pos)
}

/// `(1 + m^2)^{1/2} + m` with `m = [[0, g], [g*, 0]]`, `g = 2 x1 x2*`; equals
/// `(2 p_x - 1) rho_D` on `K_D`.
pub fn positivity_witness(k: &KPair) -> Result<Block2> {
    let n = k.n();
    let g = (k.x1() * &k.x2().adjoint()).scale_real(2.0);
    let m = Block2::from_blocks(&CMat::zeros(n), &g, &g.adjoint(), &CMat::zeros(n))?;
    let one_plus_sq = (&Block2::identity(n) + &(&m * &m)).into_cmat().re_part();
    let root = Block2::from_cmat(one_plus_sq.sqrt_pd()?)?;
    Ok(&root + &m)
}

/// `rho_D` as a reflection of `Q_rho_D` (the image of the origin).
pub fn rho_d_reflection(n: usize) -> Reflection {
    Reflection { eps: rho_d(n), tag: FormTag::D }
}

/// The fiber representative used by `Phi_D`: the section with `x1 > 0`.
pub fn fiber_representative(z: &DPoint) -> Result<KPair> {
    section_delta(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::block2::rho_h;
    use crate::cmat::C64;
    use crate::models::{moebius_h, transitivity_witness};

    fn sigma_x() -> CMat {
        CMat::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap()
    }

    fn scalar_block(rows: [[f64; 2]; 2]) -> Block2 {
        Block2::block_scalar(
            1,
            [
                [C64::new(rows[0][0], 0.0), C64::new(rows[0][1], 0.0)],
                [C64::new(rows[1][0], 0.0), C64::new(rows[1][1], 0.0)],
            ],
        )
    }

    #[test]
    fn proj_p_examples() {
        let k = KPair::new(FormTag::D, CMat::identity(1), CMat::zeros(1)).unwrap();
        assert!(proj_p(&k).unwrap().dist(&scalar_block([[1.0, 0.0], [0.0, 0.0]])) < 1e-15);

        let k = section_delta(&DPoint::new(CMat::real_scalar(1, 0.5)).unwrap()).unwrap();
        let p = proj_p(&k).unwrap();
        let expected = scalar_block([[4.0 / 3.0, -2.0 / 3.0], [2.0 / 3.0, -1.0 / 3.0]]);
        assert!(p.dist(&expected) < 1e-14);
        assert!((&p * &p).dist(&p) < 1e-14);
        let col = crate::block2::Pair::new(k.x1().clone(), k.x2().clone()).unwrap();
        assert!(p.apply(&col).unwrap().dist(&col) < 1e-14);
    }

    #[test]
    fn phi_d_examples() {
        let e = phi_d(&DPoint::origin(2)).unwrap();
        assert!(e.eps().dist(&rho_d(2)) < 1e-15);

        let e = phi_d(&DPoint::new(CMat::real_scalar(1, 0.5)).unwrap()).unwrap();
        let expected = scalar_block([[5.0 / 3.0, -4.0 / 3.0], [4.0 / 3.0, -5.0 / 3.0]]);
        assert!(e.eps().dist(&expected) < 1e-14);

        let e = phi_d(&DPoint::new(sigma_x().scale_real(0.5)).unwrap()).unwrap();
        assert!(e.eps().a11().is_hermitian(&Tolerance::default()));
        assert!(e.eps().a22().is_hermitian(&Tolerance::default()));
        assert!((e.eps() * e.eps()).dist(&Block2::identity(2)) < 1e-10);
    }

    #[test]
    fn phi_d_inv_examples() {
        let z = phi_d_inv(&rho_d_reflection(2)).unwrap();
        assert!(z.z().spec_norm() < 1e-15);
        let e = Reflection::new(FormTag::D, scalar_block([[5.0 / 3.0, -4.0 / 3.0], [4.0 / 3.0, -5.0 / 3.0]]))
            .unwrap();
        assert!((phi_d_inv(&e).unwrap().z().get(0, 0).re - 0.5).abs() < 1e-15);
    }

    #[test]
    fn phi_h_examples() {
        let e = phi_h(&HPoint::i_unit(2)).unwrap();
        assert!(e.eps().dist(&rho_h(2)) < 1e-15);

        let h = HPoint::new(CMat::scalar(2, C64::new(1.0, 1.0))).unwrap();
        let e = phi_h(&h).unwrap();
        assert!((e.eps() * e.eps()).dist(&Block2::identity(2)) < 1e-10);
        assert!(phi_h_inv(&e).unwrap().dist(&h) < 1e-12);

        // Equivariance spot value with b = [[1, 0], [1, 1]].
        let b = transitivity_witness(&h).unwrap();
        let lhs = phi_h(&moebius_h(&b, &HPoint::i_unit(2), &Tolerance::default()).unwrap()).unwrap();
        let rhs = &(&b * &rho_h(2)) * &b.inverse().unwrap();
        assert!(lhs.eps().dist(&rhs) < 1e-12);
    }

    #[test]
    fn embed_q_examples() {
        assert!(embed_q(&rho_d_reflection(2)).unwrap().dist(&Block2::identity(2)) < 1e-15);
        let e = phi_d(&DPoint::new(CMat::real_scalar(1, 0.5)).unwrap()).unwrap();
        let pos = embed_q(&e).unwrap();
        assert!(pos.dist(&scalar_block([[5.0 / 3.0, -4.0 / 3.0], [-4.0 / 3.0, 5.0 / 3.0]])) < 1e-14);
        assert!((pos.as_cmat().min_eigenvalue() - 1.0 / 3.0).abs() < 1e-14);
        let eh = Reflection::new(FormTag::H, rho_h(2)).unwrap();
        assert!(embed_q(&eh).unwrap().dist(&Block2::identity(2)) < 1e-15);
    }

    #[test]
    fn reflection_rejects() {
        assert!(matches!(
            Reflection::new(FormTag::D, Block2::identity(2).scale_real(2.0)),
            Err(GeomError::NotReflection(_))
        ));
        // eps = -rho_D squares to 1 but rho eps = -1 is negative.
        assert!(matches!(
            Reflection::new(FormTag::D, -&rho_d(2)),
            Err(GeomError::NotReflection(_))
        ));
        let bad = Reflection::new(FormTag::H, rho_h(1)).unwrap();
        assert!(phi_d_inv(&bad).is_err());
    }

    #[test]
    fn canonical_lift_round_trip() {
        let z = DPoint::new(CMat::from_rows(&[
            vec![C64::new(0.1, 0.2), C64::new(0.3, 0.0)],
            vec![C64::new(-0.2, 0.1), C64::new(0.0, -0.4)],
        ])
        .unwrap())
        .unwrap();
        let e = phi_d(&z).unwrap();
        let k = canonical_lift(&e).unwrap();
        assert!(k.x1().is_positive_definite(&Tolerance::default()));
        assert!(phi_d_from_pair(&k).unwrap().eps().dist(e.eps()) < 1e-12);
        assert!(k.pair().dist(section_delta(&z).unwrap().pair()) < 1e-12);
    }

    #[test]
    fn well_defined_on_fibers() {
        let z = DPoint::new(sigma_x().scale_real(0.4)).unwrap();
        let k = section_delta(&z).unwrap();
        let u = CMat::from_real_rows(&[&[0.2, 0.7], &[0.7, -0.1]]).unwrap().exp_i_herm(&Tolerance::default()).unwrap();
        let ku = k.right_mul(&u, &Tolerance::default()).unwrap();
        let a = phi_d_from_pair(&k).unwrap();
        let b = phi_d_from_pair(&ku).unwrap();
        assert!(a.eps().dist(b.eps()) < 1e-12);
        assert!(a.eps().dist(phi_d(&z).unwrap().eps()) < 1e-12);
    }

    #[test]
    fn positivity_witness_matches() {
        let z = DPoint::new(sigma_x().scale_real(0.6)).unwrap();
        let k = section_delta(&z).unwrap();
        let lhs = phi_d_from_pair(&k).unwrap().eps() * &rho_d(2);
        assert!(positivity_witness(&k).unwrap().dist(&lhs) < 1e-12);
    }
}
