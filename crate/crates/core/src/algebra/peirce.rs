//! Peirce decomposition of an element with respect to a Jordan frame.

use crate::error::{Error, Result};

use super::{Element, JordanFrame};

/// Components `x_ij` (`i <= j`) of an element with respect to a frame:
/// `x_ii = P_{e_i}(x)` and `x_ij = 4 e_i ∘ (e_j ∘ x)` for `i < j`.
#[derive(Debug, Clone)]
pub struct PeirceComponents {
    rank: usize,
    parts: Vec<Element>,
}

impl PeirceComponents {
    fn flat_index(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        i * self.rank - i * (i + 1) / 2 + j
    }

    /// Component for the unordered pair `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> &Element {
        &self.parts[self.flat_index(i, j)]
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn reconstruct(&self) -> Element {
        let mut sum = Element::zero(self.parts[0].algebra());
        for p in &self.parts {
            sum = &sum + p;
        }
        sum
    }

    /// Weighted sum `sum_{i<=j} a[i][j] x_ij` (used by Schur product maps).
    pub fn weighted_sum(&self, weight: impl Fn(usize, usize) -> f64) -> Element {
        let mut sum = Element::zero(self.parts[0].algebra());
        for i in 0..self.rank {
            for j in i..self.rank {
                sum = &sum + &(self.get(i, j) * weight(i, j));
            }
        }
        sum
    }
}

/// Peirce components of `x` with respect to `frame`, which is validated at
/// tolerance `frame_tol` first.
pub fn peirce_components(
    x: &Element,
    frame: &JordanFrame,
    frame_tol: f64,
) -> Result<PeirceComponents> {
    if frame.algebra() != x.algebra() {
        return Err(Error::AlgebraMismatch);
    }
    frame.validate(frame_tol)?;
    let n = frame.len();
    let mut parts = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..n {
        let ei = &frame.idempotents()[i];
        for j in i..n {
            if i == j {
                // P_{e_i}(x) = 2 e_i ∘ (e_i ∘ x) - e_i ∘ x  (since e_i² = e_i)
                let eix = ei.jordan_mul(x).expect("same algebra");
                let part = &(&ei.jordan_mul(&eix).expect("same algebra") * 2.0) - &eix;
                parts.push(part);
            } else {
                let ej = &frame.idempotents()[j];
                let inner = ej.jordan_mul(x).expect("same algebra");
                let part = &ei.jordan_mul(&inner).expect("same algebra") * 4.0;
                parts.push(part);
            }
        }
    }
    Ok(PeirceComponents { rank: n, parts })
}
