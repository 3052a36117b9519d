//! Spectral decompositions, Jordan frames, and Löwner maps.

use crate::error::{Error, Result};
use crate::linalg::{jacobi_hermitian, jacobi_symmetric, CMat, Mat};

use super::{Algebra, Element};

/// A complete system of pairwise-orthogonal primitive idempotents summing to
/// the unit element.
#[derive(Debug, Clone, PartialEq)]
pub struct JordanFrame {
    algebra: Algebra,
    idempotents: Vec<Element>,
}

impl JordanFrame {
    pub fn new(algebra: Algebra, idempotents: Vec<Element>) -> Result<Self> {
        if idempotents.len() != algebra.rank() {
            return Err(Error::InvalidFrame {
                detail: format!(
                    "expected {} idempotents, got {}",
                    algebra.rank(),
                    idempotents.len()
                ),
            });
        }
        for e in &idempotents {
            if e.algebra() != &algebra {
                return Err(Error::InvalidFrame { detail: "algebra mismatch".into() });
            }
        }
        Ok(JordanFrame { algebra, idempotents })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn idempotents(&self) -> &[Element] {
        &self.idempotents
    }

    pub fn len(&self) -> usize {
        self.idempotents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.idempotents.is_empty()
    }

    /// Checks primitivity, orthogonality, and completeness within `tol`.
    pub fn validate(&self, tol: f64) -> Result<()> {
        let n = self.idempotents.len();
        for i in 0..n {
            let ei = &self.idempotents[i];
            let sq = ei.square();
            if (&sq - ei).norm() > tol {
                return Err(Error::InvalidFrame {
                    detail: format!("member {i} is not idempotent"),
                });
            }
            if (ei.inner(ei).expect("same algebra") - 1.0).abs() > tol {
                return Err(Error::InvalidFrame {
                    detail: format!("member {i} is not primitive (norm != 1)"),
                });
            }
            for j in (i + 1)..n {
                let prod = ei.jordan_mul(&self.idempotents[j]).expect("same algebra");
                if prod.norm() > tol {
                    return Err(Error::InvalidFrame {
                        detail: format!("members {i} and {j} are not orthogonal"),
                    });
                }
            }
        }
        let mut sum = Element::zero(&self.algebra);
        for e in &self.idempotents {
            sum = &sum + e;
        }
        if (&sum - &Element::unit(&self.algebra)).norm() > tol {
            return Err(Error::InvalidFrame { detail: "members do not sum to e".into() });
        }
        Ok(())
    }

    /// Sum of the first `k` members: an idempotent of rank `k`.
    pub fn rank_idempotent(&self, k: usize) -> Result<Element> {
        if k == 0 || k > self.idempotents.len() {
            return Err(Error::IndexOutOfRange { index: k, len: self.idempotents.len() });
        }
        let mut sum = Element::zero(&self.algebra);
        for e in &self.idempotents[..k] {
            sum = &sum + e;
        }
        Ok(sum)
    }

    /// `sum_i s_i e_i` with `s_i = ±1`: a sign element (square equals `e`).
    pub fn sign_element(&self, signs: &[bool]) -> Result<Element> {
        if signs.len() != self.idempotents.len() {
            return Err(Error::LengthMismatch {
                left: signs.len(),
                right: self.idempotents.len(),
            });
        }
        let mut sum = Element::zero(&self.algebra);
        for (e, &s) in self.idempotents.iter().zip(signs) {
            sum = if s { &sum + e } else { &sum - e };
        }
        Ok(sum)
    }

    /// Linear combination `sum_i values[i] * e_i`.
    pub fn combine(&self, values: &[f64]) -> Result<Element> {
        if values.len() != self.idempotents.len() {
            return Err(Error::LengthMismatch {
                left: values.len(),
                right: self.idempotents.len(),
            });
        }
        let mut sum = Element::zero(&self.algebra);
        for (e, &v) in self.idempotents.iter().zip(values) {
            sum = &sum + &(e * v);
        }
        Ok(sum)
    }
}

/// Eigenvalues in decreasing order together with a matching Jordan frame.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<f64>,
    frame: JordanFrame,
}

impl SpectralDecomposition {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn frame(&self) -> &JordanFrame {
        &self.frame
    }

    pub fn into_parts(self) -> (Vec<f64>, JordanFrame) {
        (self.eigenvalues, self.frame)
    }

    pub fn reconstruct(&self) -> Element {
        self.frame.combine(&self.eigenvalues).expect("lengths match by construction")
    }
}

impl Element {
    /// Spectral decomposition `x = sum_i lambda_i e_i` with decreasing
    /// eigenvalues. Ties are broken stably, so frames under ties are
    /// non-unique but deterministic.
    pub fn spectral(&self) -> SpectralDecomposition {
        let alg = self.algebra().clone();
        match &alg {
            Algebra::RealSymmetric { m } => {
                let mat = self.to_sym_matrix().expect("kind checked");
                let (vals, vecs) = jacobi_symmetric(&mat);
                let mut frame = Vec::with_capacity(*m);
                for c in 0..*m {
                    let mut outer = Mat::zeros(*m, *m);
                    for r1 in 0..*m {
                        for r2 in 0..*m {
                            outer.set(r1, r2, vecs.get(r1, c) * vecs.get(r2, c));
                        }
                    }
                    frame.push(Element::from_sym_matrix(&outer).expect("outer is symmetric"));
                }
                SpectralDecomposition {
                    eigenvalues: vals,
                    frame: JordanFrame { algebra: alg, idempotents: frame },
                }
            }
            Algebra::ComplexHermitian { m } => {
                let mat = self.to_herm_matrix().expect("kind checked");
                let (vals, vecs) = jacobi_hermitian(&mat);
                let mut frame = Vec::with_capacity(*m);
                for c in 0..*m {
                    let mut outer = CMat::zeros(*m, *m);
                    for r1 in 0..*m {
                        for r2 in 0..*m {
                            outer.set(r1, r2, vecs.get(r1, c) * vecs.get(r2, c).conj());
                        }
                    }
                    frame.push(Element::from_herm_matrix(&outer).expect("outer is Hermitian"));
                }
                SpectralDecomposition {
                    eigenvalues: vals,
                    frame: JordanFrame { algebra: alg, idempotents: frame },
                }
            }
            Algebra::Spin { .. } => {
                let (x0, xbar) = self.spin_parts().expect("kind checked");
                let norm = xbar.iter().map(|v| v * v).sum::<f64>().sqrt();
                // Degenerate direction pinned to the first axis for determinism.
                let u: Vec<f64> = if norm < 1e-300 {
                    let mut u = vec![0.0; xbar.len()];
                    u[0] = 1.0;
                    u
                } else {
                    xbar.iter().map(|v| v / norm).collect()
                };
                let neg_u: Vec<f64> = u.iter().map(|v| -v).collect();
                let e1 = Element::from_spin_parts(0.5, &u.iter().map(|v| 0.5 * v).collect::<Vec<_>>())
                    .expect("dims match");
                let e2 =
                    Element::from_spin_parts(0.5, &neg_u.iter().map(|v| 0.5 * v).collect::<Vec<_>>())
                        .expect("dims match");
                SpectralDecomposition {
                    eigenvalues: vec![x0 + norm, x0 - norm],
                    frame: JordanFrame { algebra: alg, idempotents: vec![e1, e2] },
                }
            }
            Algebra::Product { .. } => {
                let mut pairs: Vec<(f64, Element)> = Vec::with_capacity(alg.rank());
                for (idx, part) in self.factor_elements().into_iter().enumerate() {
                    let dec = part.spectral();
                    for (v, idem) in
                        dec.eigenvalues.iter().zip(dec.frame.idempotents)
                    {
                        let embedded =
                            Element::embed_factor(&alg, idx, &idem).expect("factor matches");
                        pairs.push((*v, embedded));
                    }
                }
                pairs.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
                let (eigenvalues, idempotents): (Vec<f64>, Vec<Element>) =
                    pairs.into_iter().unzip();
                SpectralDecomposition {
                    eigenvalues,
                    frame: JordanFrame { algebra: alg, idempotents },
                }
            }
        }
    }

    /// Eigenvalue vector in decreasing order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        match &self.algebra() {
            Algebra::Spin { .. } => {
                let (x0, xbar) = self.spin_parts().expect("kind checked");
                let norm = xbar.iter().map(|v| v * v).sum::<f64>().sqrt();
                vec![x0 + norm, x0 - norm]
            }
            _ => self.spectral().eigenvalues().to_vec(),
        }
    }

    pub fn lambda_max(&self) -> f64 {
        self.eigenvalues()[0]
    }

    pub fn lambda_min(&self) -> f64 {
        *self.eigenvalues().last().expect("rank >= 1")
    }

    /// Löwner map: applies `phi` to the eigenvalues over a spectral frame.
    pub fn lowner(&self, phi: impl Fn(f64) -> f64) -> Element {
        let dec = self.spectral();
        let values: Vec<f64> = dec.eigenvalues().iter().map(|&v| phi(v)).collect();
        dec.frame().combine(&values).expect("lengths match")
    }

    /// `|x|`: absolute values of the eigenvalues on the same frame.
    pub fn abs_element(&self) -> Element {
        self.lowner(f64::abs)
    }

    /// `x⁺`: positive parts of the eigenvalues on the same frame.
    pub fn plus_part(&self) -> Element {
        self.lowner(|t| t.max(0.0))
    }

    /// Eigenvalues of `|x|`, i.e. `|λ(x)|` sorted decreasingly.
    pub fn abs_eigenvalues(&self) -> Vec<f64> {
        let mut vals: Vec<f64> = self.eigenvalues().into_iter().map(f64::abs).collect();
        vals.sort_by(|a, b| b.partial_cmp(a).unwrap());
        vals
    }

    /// Membership in the symmetric cone: smallest eigenvalue at least `-tol`.
    pub fn in_cone(&self, tol: f64) -> bool {
        self.lambda_min() >= -tol
    }
}
