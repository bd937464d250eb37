//! 2x2 block matrices over `A = M_n(C)`, the forms `theta_H` / `theta_D`, and the
//! groups that preserve them.
//!
//! A [`Block2`] is stored as a single `2n x 2n` matrix; blocks are extracted by
//! index range, so group multiplication is plain matrix multiplication.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;

use crate::cmat::{CMat, Tolerance, C64, I};
use crate::error::{GeomError, Result};

/// Selects the reflection `rho_H = [[0, -i], [i, 0]]` or `rho_D = [[1, 0], [0, -1]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormTag {
    H,
    D,
}

impl FormTag {
    pub fn rho(self, n: usize) -> Block2 {
        match self {
            FormTag::H => rho_h(n),
            FormTag::D => rho_d(n),
        }
    }

    pub fn letter(self) -> char {
        match self {
            FormTag::H => 'H',
            FormTag::D => 'D',
        }
    }
}

/// A column `(x1, x2)` in `A^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct Pair {
    pub x1: CMat,
    pub x2: CMat,
}

impl Pair {
    pub fn new(x1: CMat, x2: CMat) -> Result<Self> {
        x1.check_same_dim(&x2)?;
        Ok(Self { x1, x2 })
    }

    pub fn n(&self) -> usize {
        self.x1.n()
    }

    /// Right multiplication by an element of `A`.
    pub fn right_mul(&self, g: &CMat) -> Self {
        Self { x1: &self.x1 * g, x2: &self.x2 * g }
    }

    pub fn dist(&self, other: &Self) -> f64 {
        self.x1.dist(&other.x1).max(self.x2.dist(&other.x2))
    }
}

/// `<a, b> = a1* b1 + a2* b2`.
pub fn inner(a: &Pair, b: &Pair) -> Result<CMat> {
    a.x1.check_same_dim(&b.x1)?;
    Ok(&a.x1.adjoint() * &b.x1 + &a.x2.adjoint() * &b.x2)
}

/// Symplectic form `omega(a, b) = a2* b1 - a1* b2`.
pub fn omega(a: &Pair, b: &Pair) -> Result<CMat> {
    a.x1.check_same_dim(&b.x1)?;
    Ok(&a.x2.adjoint() * &b.x1 - &a.x1.adjoint() * &b.x2)
}

/// The `A`-valued forms: `theta_H(x, y) = (1/i)(x1* y2 - x2* y1)`,
/// `theta_D(x, y) = x1* y1 - x2* y2`.
pub fn theta(tag: FormTag, x: &Pair, y: &Pair) -> Result<CMat> {
    x.x1.check_same_dim(&x.x2)?;
    x.x1.check_same_dim(&y.x1)?;
    y.x1.check_same_dim(&y.x2)?;
    Ok(match tag {
        FormTag::H => (&x.x1.adjoint() * &y.x2 - &x.x2.adjoint() * &y.x1).scale(-I),
        FormTag::D => &x.x1.adjoint() * &y.x1 - &x.x2.adjoint() * &y.x2,
    })
}

/// An element of `M_2(A)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Block2 {
    n: usize,
    m: CMat,
}

impl Block2 {
    pub fn from_blocks(a11: &CMat, a12: &CMat, a21: &CMat, a22: &CMat) -> Result<Self> {
        let n = a11.n();
        for b in [a12, a21, a22] {
            a11.check_same_dim(b)?;
        }
        let mut m = DMatrix::zeros(2 * n, 2 * n);
        m.view_mut((0, 0), (n, n)).copy_from(a11.matrix());
        m.view_mut((0, n), (n, n)).copy_from(a12.matrix());
        m.view_mut((n, 0), (n, n)).copy_from(a21.matrix());
        m.view_mut((n, n), (n, n)).copy_from(a22.matrix());
        Ok(Self { n, m: CMat::wrap(m) })
    }

    /// Views a `2n x 2n` matrix as a block matrix.
    pub fn from_cmat(m: CMat) -> Result<Self> {
        if !m.n().is_multiple_of(2) {
            return Err(GeomError::DimensionMismatch(format!(
                "block matrix needs even dimension, got {}",
                m.n()
            )));
        }
        Ok(Self { n: m.n() / 2, m })
    }

    /// `[[c11, c12], [c21, c22]] (x) 1_n`.
    pub fn block_scalar(n: usize, c: [[C64; 2]; 2]) -> Self {
        let id = CMat::identity(n);
        Self::from_blocks(&id.scale(c[0][0]), &id.scale(c[0][1]), &id.scale(c[1][0]), &id.scale(c[1][1]))
            .expect("same dimension")
    }

    pub fn diag(a: &CMat, b: &CMat) -> Result<Self> {
        let z = CMat::zeros(a.n());
        Self::from_blocks(a, &z, &z, b)
    }

    pub fn identity(n: usize) -> Self {
        Self { n, m: CMat::identity(2 * n) }
    }

    pub fn zeros(n: usize) -> Self {
        Self { n, m: CMat::zeros(2 * n) }
    }

    /// Block dimension.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn as_cmat(&self) -> &CMat {
        &self.m
    }

    pub fn into_cmat(self) -> CMat {
        self.m
    }

    fn block(&self, r: usize, c: usize) -> CMat {
        let n = self.n;
        CMat::wrap(self.m.matrix().view((r * n, c * n), (n, n)).into_owned())
    }

    pub fn a11(&self) -> CMat {
        self.block(0, 0)
    }

    pub fn a12(&self) -> CMat {
        self.block(0, 1)
    }

    pub fn a21(&self) -> CMat {
        self.block(1, 0)
    }

    pub fn a22(&self) -> CMat {
        self.block(1, 1)
    }

    pub fn adjoint(&self) -> Self {
        Self { n: self.n, m: self.m.adjoint() }
    }

    pub fn inverse(&self) -> Result<Self> {
        Ok(Self { n: self.n, m: self.m.inverse()? })
    }

    pub fn scale(&self, c: C64) -> Self {
        Self { n: self.n, m: self.m.scale(c) }
    }

    pub fn scale_real(&self, x: f64) -> Self {
        self.scale(C64::new(x, 0.0))
    }

    pub fn spec_norm(&self) -> f64 {
        self.m.spec_norm()
    }

    pub fn dist(&self, other: &Self) -> f64 {
        self.m.dist(&other.m)
    }

    pub fn apply(&self, x: &Pair) -> Result<Pair> {
        if x.n() != self.n {
            return Err(GeomError::DimensionMismatch(format!(
                "block dimension {} vs pair dimension {}",
                self.n,
                x.n()
            )));
        }
        Ok(Pair {
            x1: &self.a11() * &x.x1 + &self.a12() * &x.x2,
            x2: &self.a21() * &x.x1 + &self.a22() * &x.x2,
        })
    }

    pub fn commutator(&self, other: &Self) -> Self {
        Self { n: self.n, m: self.m.commutator(&other.m) }
    }

    pub fn anticommutator(&self, other: &Self) -> Self {
        Self { n: self.n, m: self.m.anticommutator(&other.m) }
    }

    pub fn is_hermitian(&self, tol: &Tolerance) -> bool {
        self.m.is_hermitian(tol)
    }

    pub fn is_positive_definite(&self, tol: &Tolerance) -> bool {
        self.m.is_positive_definite(tol)
    }

    pub fn is_unitary(&self, tol: &Tolerance) -> bool {
        self.m.is_unitary(tol)
    }

    pub fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(GeomError::DimensionMismatch(format!("{} vs {}", self.n, other.n)));
        }
        Ok(())
    }
}

macro_rules! block_op {
    ($tr:ident, $method:ident, $op:tt) => {
        impl $tr<&Block2> for &Block2 {
            type Output = Block2;
            fn $method(self, rhs: &Block2) -> Block2 {
                assert_eq!(self.n, rhs.n, "block dimension mismatch");
                Block2 { n: self.n, m: &self.m $op &rhs.m }
            }
        }
        impl $tr<Block2> for Block2 {
            type Output = Block2;
            fn $method(self, rhs: Block2) -> Block2 {
                &self $op &rhs
            }
        }
        impl $tr<&Block2> for Block2 {
            type Output = Block2;
            fn $method(self, rhs: &Block2) -> Block2 {
                &self $op rhs
            }
        }
        impl $tr<Block2> for &Block2 {
            type Output = Block2;
            fn $method(self, rhs: Block2) -> Block2 {
                self $op &rhs
            }
        }
    };
}

block_op!(Add, add, +);
block_op!(Sub, sub, -);
block_op!(Mul, mul, *);

impl Neg for &Block2 {
    type Output = Block2;
    fn neg(self) -> Block2 {
        Block2 { n: self.n, m: -&self.m }
    }
}

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
const ONE: C64 = C64 { re: 1.0, im: 0.0 };

pub fn rho_h(n: usize) -> Block2 {
    Block2::block_scalar(n, [[ZERO, -I], [I, ZERO]])
}

pub fn rho_d(n: usize) -> Block2 {
    Block2::block_scalar(n, [[ONE, ZERO], [ZERO, -ONE]])
}

pub fn j_mat(n: usize) -> Block2 {
    Block2::block_scalar(n, [[ZERO, ONE], [-ONE, ZERO]])
}

/// `U = (1/sqrt 2) [[1, 1], [i, -i]]`, with `U rho_D U* = rho_H`.
pub fn u_mat(n: usize) -> Block2 {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    Block2::block_scalar(n, [[C64::new(s, 0.0), C64::new(s, 0.0)], [C64::new(0.0, s), C64::new(0.0, -s)]])
}

/// `|| rho g* rho g - 1 || / max(1, ||g||^2)`.
pub fn group_residual(tag: FormTag, g: &Block2) -> f64 {
    let rho = tag.rho(g.n());
    let lhs = &(&(&rho * &g.adjoint()) * &rho) * g;
    let norm = g.spec_norm();
    lhs.dist(&Block2::identity(g.n())) / norm.powi(2).max(1.0)
}

/// Membership in `U(theta_tag)`: invertible and `rho g* rho = g^{-1}`.
pub fn in_group(tag: FormTag, g: &Block2, tol: &Tolerance) -> bool {
    g.as_cmat().is_invertible(tol) && group_residual(tag, g) <= tol.eps_struct
}

pub fn require_in_group(tag: FormTag, g: &Block2, tol: &Tolerance) -> Result<()> {
    let residual = group_residual(tag, g);
    if g.as_cmat().is_invertible(tol) && residual <= tol.eps_struct {
        Ok(())
    } else {
        Err(GeomError::NotInGroup { tag: tag.letter(), residual })
    }
}

/// Borel element `[[b, 0], [x, (b*)^{-1}]]`; requires `b*x` Hermitian.
pub fn borel(b: &CMat, x: &CMat, tol: &Tolerance) -> Result<Block2> {
    b.check_same_dim(x)?;
    let b_adj_inv = b.adjoint().inverse_with(tol)?;
    let bx = &b.adjoint() * x;
    let residual = bx.hermitian_residual();
    if residual > tol.eps_struct * bx.spec_norm().max(1.0) {
        return Err(GeomError::NotSymmetricPair { residual });
    }
    Block2::from_blocks(b, &CMat::zeros(b.n()), x, &b_adj_inv)
}

/// Elements of `T`: `[[1, tau], [0, 1]]` with `tau` Hermitian.
pub fn t_elem(tau: &CMat, tol: &Tolerance) -> Result<Block2> {
    tau.require_hermitian(tol)?;
    let n = tau.n();
    Block2::from_blocks(&CMat::identity(n), tau, &CMat::zeros(n), &CMat::identity(n))
}

/// `g -> diag(g, (g*)^{-1})`, an injective homomorphism `G -> U(theta_H)`.
pub fn embed_invertible(g: &CMat, tol: &Tolerance) -> Result<Block2> {
    let inv = g.adjoint().inverse_with(tol)?;
    Block2::diag(g, &inv)
}

/// `|| rho_H X* rho_H + X ||`.
pub fn lie_residual(x: &Block2) -> f64 {
    let rho = rho_h(x.n());
    (&(&(&rho * &x.adjoint()) * &rho) + x).spec_norm()
}

/// An element of the Lie algebra of `U(theta_H)` with its vertical (anti-
/// Hermitian, commuting with `J`) and horizontal (Hermitian, anti-commuting
/// with `J`) parts.
#[derive(Debug, Clone, PartialEq)]
pub struct LieElem {
    pub value: Block2,
    pub vertical: Block2,
    pub horizontal: Block2,
}

impl LieElem {
    /// Horizontal element `[[alpha, beta], [beta, -alpha]]`, `alpha`, `beta` Hermitian.
    pub fn horizontal(alpha: &CMat, beta: &CMat, tol: &Tolerance) -> Result<Self> {
        alpha.require_hermitian(tol)?;
        beta.require_hermitian(tol)?;
        lie_split(&Block2::from_blocks(alpha, beta, beta, &-alpha)?, tol)
    }

    /// Vertical element `[[a, b], [-b, a]]`, `a` anti-Hermitian, `b` Hermitian.
    pub fn vertical(a: &CMat, b: &CMat, tol: &Tolerance) -> Result<Self> {
        a.scale(I).require_hermitian(tol)?;
        b.require_hermitian(tol)?;
        lie_split(&Block2::from_blocks(a, b, &-b, a)?, tol)
    }

    pub fn zero(n: usize) -> Self {
        Self { value: Block2::zeros(n), vertical: Block2::zeros(n), horizontal: Block2::zeros(n) }
    }

    pub fn n(&self) -> usize {
        self.value.n()
    }

    pub fn scaled(&self, t: f64) -> Self {
        Self {
            value: self.value.scale_real(t),
            vertical: self.vertical.scale_real(t),
            horizontal: self.horizontal.scale_real(t),
        }
    }

    pub fn sum(&self, other: &Self) -> Self {
        Self {
            value: &self.value + &other.value,
            vertical: &self.vertical + &other.vertical,
            horizontal: &self.horizontal + &other.horizontal,
        }
    }
}

/// Splits a Lie-algebra element by `J`-conjugation averaging:
/// vertical `= (X + J X J^{-1}) / 2`, horizontal `= (X - J X J^{-1}) / 2`.
pub fn lie_split(x: &Block2, tol: &Tolerance) -> Result<LieElem> {
    let residual = lie_residual(x);
    if residual > tol.eps_struct * x.spec_norm().max(1.0) {
        return Err(GeomError::NotInLieAlgebra { residual });
    }
    let j = j_mat(x.n());
    let j_inv = -&j;
    let conj = &(&j * x) * &j_inv;
    let half = C64::new(0.5, 0.0);
    let vertical = (x + &conj).scale(half);
    let horizontal = (x - &conj).scale(half);
    // Symmetrize so that the parts carry their exact structure.
    let vertical = (&vertical - &vertical.adjoint()).scale(half);
    let horizontal = (&horizontal + &horizontal.adjoint()).scale(half);
    Ok(LieElem { value: x.clone(), vertical, horizontal })
}

/// Local chart at the identity: `E(beta + gamma) = e^beta e^gamma`.
pub fn exp_chart(e: &LieElem, tol: &Tolerance) -> Result<Block2> {
    let n = e.n();
    let residual = lie_residual(&e.value);
    if residual > tol.eps_struct * e.value.spec_norm().max(1.0) {
        return Err(GeomError::NotInLieAlgebra { residual });
    }
    let unitary = Block2::from_cmat(e.vertical.as_cmat().exp_skew(tol)?)?;
    let positive = Block2::from_cmat(e.horizontal.as_cmat().exp_herm()?)?;
    debug_assert_eq!(unitary.n(), n);
    Ok(&unitary * &positive)
}

/// Inverse of the chart on its domain (`|| u - 1 || < 2` for the unitary factor):
/// `log(u) + log(|g|)`.
///
/// The unitary logarithm goes through the Cayley transform `h = i(1-u)(1+u)^{-1}`,
/// which is Hermitian with eigenvalues `tan(theta/2)`, so `log u = 2i atan(h)`.
pub fn chart_log(g: &Block2, tol: &Tolerance) -> Result<LieElem> {
    let (u, p) = polar_in_group(FormTag::H, g, tol)?;
    let one = Block2::identity(g.n());
    let denom = (&one + &u).inverse()?;
    let cay = (&(&one - &u) * &denom).scale(I);
    let cay = cay.as_cmat().re_part();
    let angle = cay.map_hermitian(|x| 2.0 * x.atan(), tol)?;
    let vertical = Block2::from_cmat(angle.scale(I))?;
    let horizontal = Block2::from_cmat(p.as_cmat().log_pd()?)?;
    Ok(LieElem { value: &vertical + &horizontal, vertical, horizontal })
}

/// Polar decomposition `g = u p` of a group element; both factors stay in the group.
pub fn polar_in_group(tag: FormTag, g: &Block2, tol: &Tolerance) -> Result<(Block2, Block2)> {
    require_in_group(tag, g, tol)?;
    let (u, p) = g.as_cmat().polar(tol)?;
    Ok((Block2::from_cmat(u)?, Block2::from_cmat(p)?))
}

/// Splits a unitary of `U(theta_D)` as `diag(u1, u2)`.
pub fn unitary_split(u: &Block2, tol: &Tolerance) -> Result<(CMat, CMat)> {
    if !u.is_unitary(tol) {
        let residual = (&u.adjoint() * u).dist(&Block2::identity(u.n()));
        return Err(GeomError::NotDiagonalUnitary { residual });
    }
    let off = u.a12().spec_norm().max(u.a21().spec_norm());
    if off > tol.eps_struct {
        return Err(GeomError::NotDiagonalUnitary { residual: off });
    }
    Ok((u.a11(), u.a22()))
}

/// `U* g U`; maps `U(theta_H)` onto `U(theta_D)`.
pub fn cayley_conjugate(g: &Block2) -> Block2 {
    let u = u_mat(g.n());
    &(&u.adjoint() * g) * &u
}

/// `U g U*`; maps `U(theta_D)` onto `U(theta_H)`.
pub fn cayley_conjugate_inv(g: &Block2) -> Block2 {
    let u = u_mat(g.n());
    &(&u * g) * &u.adjoint()
}
