//! Linear maps on an algebra: dense coordinate matrices plus structure tags
//! for the families that admit closed-form analysis (Lyapunov, quadratic
//! representation, Schur product, congruence, sums, compositions, inverses).

mod classify;

pub use classify::{classify_stochastic, falsify_positivity, ClassificationReport, Positivity};
pub(crate) use classify::random_primitive_idempotent;

use crate::algebra::{peirce_components, Algebra, Element, JordanFrame};
use crate::error::{Error, Result};
use crate::linalg::{self, CMat, Mat};

/// Condition-number ceiling for `invert`.
const INVERT_COND_LIMIT: f64 = 1e12;

/// Structural information about how an operator was built. Drives positivity
/// certificates and structured eta bounds; `Generic` means "dense matrix,
/// nothing known".
#[derive(Debug, Clone)]
pub enum StructureTag {
    Generic,
    /// `x ↦ a ∘ x`
    Lyapunov { a: Element },
    /// `x ↦ 2 a ∘ (a ∘ x) - a² ∘ x`
    Quad { a: Element },
    /// `x ↦ a ∘ (b ∘ x) + b ∘ (a ∘ x) - (a ∘ b) ∘ x`
    QuadPair { a: Element, b: Element },
    /// `x ↦ sum_{i<=j} A_ij x_ij` over Peirce components of `frame`
    Schur { a: Mat, frame: JordanFrame },
    /// `X ↦ M X M*`
    Congruence { m: CMat },
    /// `X ↦ M X + X M*`
    LyapunovMatrix { m: CMat },
    Scale { alpha: f64, inner: Box<LinearOperator> },
    Sum { parts: Vec<LinearOperator> },
    /// Applied right to left: `parts[0] ∘ parts[1] ∘ ...`
    Compose { parts: Vec<LinearOperator> },
    Inverse { inner: Box<LinearOperator> },
}

/// A linear map on algebra coordinates. The adjoint with respect to the
/// trace inner product is the coordinate transpose because the basis is
/// orthonormal.
#[derive(Debug, Clone)]
pub struct LinearOperator {
    algebra: Algebra,
    matrix: Mat,
    tag: StructureTag,
}

/// Dense matrix of a coordinate action, built column by column.
fn matrix_from_action(alg: &Algebra, action: impl Fn(&Element) -> Element) -> Mat {
    let dim = alg.dim();
    let mut m = Mat::zeros(dim, dim);
    for k in 0..dim {
        let img = action(&Element::basis(alg, k));
        for r in 0..dim {
            m.set(r, k, img.coords()[r]);
        }
    }
    m
}

impl LinearOperator {
    pub fn from_matrix(algebra: Algebra, matrix: Mat) -> Result<Self> {
        algebra.validate()?;
        let dim = algebra.dim();
        if matrix.rows() != dim || matrix.cols() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: matrix.rows() });
        }
        Ok(LinearOperator { algebra, matrix, tag: StructureTag::Generic })
    }

    /// Identity, tagged as the quadratic representation of the unit so the
    /// positivity certificate is structural.
    pub fn identity(algebra: &Algebra) -> Self {
        LinearOperator::quad(&Element::unit(algebra))
    }

    pub fn zero(algebra: &Algebra) -> Self {
        LinearOperator {
            algebra: algebra.clone(),
            matrix: Mat::zeros(algebra.dim(), algebra.dim()),
            tag: StructureTag::Generic,
        }
    }

    /// Lyapunov transformation `L_a(x) = a ∘ x`.
    pub fn lyapunov(a: &Element) -> Self {
        let alg = a.algebra().clone();
        let matrix = matrix_from_action(&alg, |x| a.jordan_mul(x).expect("same algebra"));
        LinearOperator { algebra: alg, matrix, tag: StructureTag::Lyapunov { a: a.clone() } }
    }

    /// Quadratic representation `P_a(x) = 2 a ∘ (a ∘ x) - a² ∘ x`.
    pub fn quad(a: &Element) -> Self {
        let alg = a.algebra().clone();
        let a2 = a.square();
        let matrix = matrix_from_action(&alg, |x| {
            let ax = a.jordan_mul(x).expect("same algebra");
            let aax = a.jordan_mul(&ax).expect("same algebra");
            &(&aax * 2.0) - &a2.jordan_mul(x).expect("same algebra")
        });
        LinearOperator { algebra: alg, matrix, tag: StructureTag::Quad { a: a.clone() } }
    }

    /// `P_{a,b} = L_a L_b + L_b L_a - L_{a∘b}`; symmetric in `a`, `b` and
    /// self-adjoint. `P_{a,a} = P_a`.
    pub fn quad_pair(a: &Element, b: &Element) -> Result<Self> {
        if a.algebra() != b.algebra() {
            return Err(Error::AlgebraMismatch);
        }
        let alg = a.algebra().clone();
        let ab = a.jordan_mul(b).expect("same algebra");
        let matrix = matrix_from_action(&alg, |x| {
            let bx = b.jordan_mul(x).expect("same algebra");
            let ax = a.jordan_mul(x).expect("same algebra");
            let abx = a.jordan_mul(&bx).expect("same algebra");
            let bax = b.jordan_mul(&ax).expect("same algebra");
            &(&abx + &bax) - &ab.jordan_mul(x).expect("same algebra")
        });
        Ok(LinearOperator {
            algebra: alg,
            matrix,
            tag: StructureTag::QuadPair { a: a.clone(), b: b.clone() },
        })
    }

    /// Schur product map `D_A(x) = sum_{i<=j} A_ij x_ij` for a fixed frame.
    pub fn schur(a: &Mat, frame: &JordanFrame) -> Result<Self> {
        let alg = frame.algebra().clone();
        let n = alg.rank();
        if a.rows() != n || a.cols() != n {
            return Err(Error::DimensionMismatch { expected: n, got: a.rows() });
        }
        if !a.is_symmetric(1e-10 * a.max_abs().max(1.0)) {
            return Err(Error::NotSymmetric);
        }
        frame.validate(1e-8)?;
        let matrix = matrix_from_action(&alg, |x| {
            peirce_components(x, frame, f64::INFINITY)
                .expect("frame validated above")
                .weighted_sum(|i, j| a.get(i, j))
        });
        Ok(LinearOperator {
            algebra: alg,
            matrix,
            tag: StructureTag::Schur { a: a.clone(), frame: frame.clone() },
        })
    }

    /// Congruence `X ↦ M X M*` on a matrix-kind algebra.
    pub fn congruence(algebra: &Algebra, m: &CMat) -> Result<Self> {
        match algebra {
            Algebra::ComplexHermitian { m: size } => {
                if m.rows() != *size || m.cols() != *size {
                    return Err(Error::DimensionMismatch { expected: *size, got: m.rows() });
                }
                let madj = m.adjoint();
                let matrix = matrix_from_action(algebra, |x| {
                    let xm = x.to_herm_matrix().expect("kind checked");
                    Element::from_herm_matrix(&m.matmul(&xm).matmul(&madj))
                        .expect("congruence preserves Hermitian")
                });
                Ok(LinearOperator {
                    algebra: algebra.clone(),
                    matrix,
                    tag: StructureTag::Congruence { m: m.clone() },
                })
            }
            Algebra::RealSymmetric { m: size } => {
                if m.rows() != *size || m.cols() != *size {
                    return Err(Error::DimensionMismatch { expected: *size, got: m.rows() });
                }
                let mut real = Mat::zeros(*size, *size);
                for r in 0..*size {
                    for c in 0..*size {
                        let z = m.get(r, c);
                        if z.im.abs() > 1e-12 * m.frobenius_norm().max(1.0) {
                            return Err(Error::InvalidInput(
                                "congruence on a real-symmetric algebra needs a real matrix"
                                    .into(),
                            ));
                        }
                        real.set(r, c, z.re);
                    }
                }
                let rt = real.transpose();
                let matrix = matrix_from_action(algebra, |x| {
                    let xm = x.to_sym_matrix().expect("kind checked");
                    Element::from_sym_matrix(&real.matmul(&xm).matmul(&rt))
                        .expect("congruence preserves symmetry")
                });
                Ok(LinearOperator {
                    algebra: algebra.clone(),
                    matrix,
                    tag: StructureTag::Congruence { m: m.clone() },
                })
            }
            _ => Err(Error::WrongAlgebraKind { expected: "real-symmetric or complex-hermitian" }),
        }
    }

    /// Matrix Lyapunov map `X ↦ M X + X M*` on a matrix-kind algebra.
    pub fn lyapunov_matrix(algebra: &Algebra, m: &CMat) -> Result<Self> {
        match algebra {
            Algebra::ComplexHermitian { m: size } => {
                if m.rows() != *size || m.cols() != *size {
                    return Err(Error::DimensionMismatch { expected: *size, got: m.rows() });
                }
                let madj = m.adjoint();
                let matrix = matrix_from_action(algebra, |x| {
                    let xm = x.to_herm_matrix().expect("kind checked");
                    Element::from_herm_matrix(&m.matmul(&xm).add(&xm.matmul(&madj)))
                        .expect("MX + XM* is Hermitian")
                });
                Ok(LinearOperator {
                    algebra: algebra.clone(),
                    matrix,
                    tag: StructureTag::LyapunovMatrix { m: m.clone() },
                })
            }
            Algebra::RealSymmetric { m: size } => {
                if m.rows() != *size || m.cols() != *size {
                    return Err(Error::DimensionMismatch { expected: *size, got: m.rows() });
                }
                let mut real = Mat::zeros(*size, *size);
                for r in 0..*size {
                    for c in 0..*size {
                        let z = m.get(r, c);
                        if z.im.abs() > 1e-12 * m.frobenius_norm().max(1.0) {
                            return Err(Error::InvalidInput(
                                "matrix Lyapunov map on a real-symmetric algebra needs a real \
                                 matrix"
                                    .into(),
                            ));
                        }
                        real.set(r, c, z.re);
                    }
                }
                let rt = real.transpose();
                let matrix = matrix_from_action(algebra, |x| {
                    let xm = x.to_sym_matrix().expect("kind checked");
                    Element::from_sym_matrix(&real.matmul(&xm).add(&xm.matmul(&rt)))
                        .expect("MX + XMᵀ is symmetric")
                });
                Ok(LinearOperator {
                    algebra: algebra.clone(),
                    matrix,
                    tag: StructureTag::LyapunovMatrix { m: m.clone() },
                })
            }
            _ => Err(Error::WrongAlgebraKind { expected: "real-symmetric or complex-hermitian" }),
        }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn tag(&self) -> &StructureTag {
        &self.tag
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        if x.algebra() != &self.algebra {
            return Err(Error::AlgebraMismatch);
        }
        let coords = self.matrix.matvec(x.coords());
        Ok(Element::from_coords_unchecked(self.algebra.clone(), coords))
    }

    /// Trace-inner-product adjoint: the coordinate transpose, with the tag
    /// rewritten accordingly.
    pub fn adjoint(&self) -> LinearOperator {
        LinearOperator {
            algebra: self.algebra.clone(),
            matrix: self.matrix.transpose(),
            tag: adjoint_tag(&self.tag),
        }
    }

    pub fn add(&self, other: &LinearOperator) -> Result<LinearOperator> {
        if self.algebra != other.algebra {
            return Err(Error::AlgebraMismatch);
        }
        Ok(LinearOperator {
            algebra: self.algebra.clone(),
            matrix: self.matrix.add(&other.matrix),
            tag: StructureTag::Sum { parts: vec![self.clone(), other.clone()] },
        })
    }

    pub fn sum(parts: Vec<LinearOperator>) -> Result<LinearOperator> {
        let first = parts.first().ok_or(Error::EmptySet)?;
        let algebra = first.algebra.clone();
        let mut matrix = Mat::zeros(algebra.dim(), algebra.dim());
        for p in &parts {
            if p.algebra != algebra {
                return Err(Error::AlgebraMismatch);
            }
            matrix = matrix.add(&p.matrix);
        }
        Ok(LinearOperator { algebra, matrix, tag: StructureTag::Sum { parts } })
    }

    /// `self ∘ other`: applies `other` first.
    pub fn compose(&self, other: &LinearOperator) -> Result<LinearOperator> {
        if self.algebra != other.algebra {
            return Err(Error::AlgebraMismatch);
        }
        Ok(LinearOperator {
            algebra: self.algebra.clone(),
            matrix: self.matrix.matmul(&other.matrix),
            tag: StructureTag::Compose { parts: vec![self.clone(), other.clone()] },
        })
    }

    pub fn scale(&self, alpha: f64) -> LinearOperator {
        LinearOperator {
            algebra: self.algebra.clone(),
            matrix: self.matrix.scale(alpha),
            tag: StructureTag::Scale { alpha, inner: Box::new(self.clone()) },
        }
    }

    /// Dense inverse; fails on singular or ill-conditioned matrices.
    pub fn invert(&self) -> Result<LinearOperator> {
        let matrix = linalg::invert(&self.matrix, INVERT_COND_LIMIT)?;
        Ok(LinearOperator {
            algebra: self.algebra.clone(),
            matrix,
            tag: StructureTag::Inverse { inner: Box::new(self.clone()) },
        })
    }

    pub fn unit_image(&self) -> Element {
        self.apply(&Element::unit(&self.algebra)).expect("same algebra")
    }

    pub fn adjoint_unit_image(&self) -> Element {
        let coords = transpose_matvec(&self.matrix, Element::unit(&self.algebra).coords());
        Element::from_coords_unchecked(self.algebra.clone(), coords)
    }

    /// Largest singular value of the coordinate matrix (the operator 2-norm
    /// with respect to the trace norm).
    pub fn coordinate_norm_2(&self) -> f64 {
        linalg::spectral_norm_2(&self.matrix)
    }
}

pub(crate) fn transpose_matvec(m: &Mat, v: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; m.cols()];
    for r in 0..m.rows() {
        let x = v[r];
        if x == 0.0 {
            continue;
        }
        for c in 0..m.cols() {
            out[c] += m.get(r, c) * x;
        }
    }
    out
}

fn adjoint_tag(tag: &StructureTag) -> StructureTag {
    match tag {
        StructureTag::Generic => StructureTag::Generic,
        // L_a, P_a, P_{a,b}, and D_A are self-adjoint.
        StructureTag::Lyapunov { a } => StructureTag::Lyapunov { a: a.clone() },
        StructureTag::Quad { a } => StructureTag::Quad { a: a.clone() },
        StructureTag::QuadPair { a, b } => StructureTag::QuadPair { a: a.clone(), b: b.clone() },
        StructureTag::Schur { a, frame } => {
            StructureTag::Schur { a: a.clone(), frame: frame.clone() }
        }
        StructureTag::Congruence { m } => StructureTag::Congruence { m: m.adjoint() },
        StructureTag::LyapunovMatrix { m } => StructureTag::LyapunovMatrix { m: m.adjoint() },
        StructureTag::Scale { alpha, inner } => {
            StructureTag::Scale { alpha: *alpha, inner: Box::new(inner.adjoint()) }
        }
        StructureTag::Sum { parts } => {
            StructureTag::Sum { parts: parts.iter().map(LinearOperator::adjoint).collect() }
        }
        StructureTag::Compose { parts } => StructureTag::Compose {
            parts: parts.iter().rev().map(LinearOperator::adjoint).collect(),
        },
        StructureTag::Inverse { inner } => {
            StructureTag::Inverse { inner: Box::new(inner.adjoint()) }
        }
    }
}

/// Eigenvalues of `M M*` in decreasing order (squared singular values).
pub fn singular_values_squared(m: &CMat) -> Vec<f64> {
    let prod = m.matmul(&m.adjoint());
    let (vals, _) = linalg::jacobi_hermitian(&prod);
    vals
}
