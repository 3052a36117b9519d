//! Seeded random elements, frames, idempotents, and sign elements.
//!
//! All generators take an explicit RNG; there is no hidden global state.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::{orthonormalize_complex, orthonormalize_real, CMat, Mat};

use super::{Algebra, Element, JordanFrame};

/// Element with iid standard Gaussian coordinates.
pub fn random_element<R: Rng>(alg: &Algebra, rng: &mut R) -> Element {
    let coords: Vec<f64> = (0..alg.dim()).map(|_| rng.sample(StandardNormal)).collect();
    Element::from_coords_unchecked(alg.clone(), coords)
}

/// Random Jordan frame: orthonormalized Gaussian eigenvectors for the matrix
/// kinds, a random axis pair for spin, independent frames per product factor.
pub fn random_jordan_frame<R: Rng>(alg: &Algebra, rng: &mut R) -> JordanFrame {
    match alg {
        Algebra::RealSymmetric { m } => {
            let mut q = Mat::zeros(*m, *m);
            for r in 0..*m {
                for c in 0..*m {
                    q.set(r, c, rng.sample(StandardNormal));
                }
            }
            orthonormalize_real(&mut q);
            let mut idempotents = Vec::with_capacity(*m);
            for c in 0..*m {
                let mut outer = Mat::zeros(*m, *m);
                for r1 in 0..*m {
                    for r2 in 0..*m {
                        outer.set(r1, r2, q.get(r1, c) * q.get(r2, c));
                    }
                }
                idempotents.push(Element::from_sym_matrix(&outer).expect("symmetric"));
            }
            JordanFrame::new(alg.clone(), idempotents).expect("constructed to size")
        }
        Algebra::ComplexHermitian { m } => {
            let mut q = CMat::zeros(*m, *m);
            for r in 0..*m {
                for c in 0..*m {
                    let re: f64 = rng.sample(StandardNormal);
                    let im: f64 = rng.sample(StandardNormal);
                    q.set(r, c, Complex64::new(re, im));
                }
            }
            orthonormalize_complex(&mut q);
            let mut idempotents = Vec::with_capacity(*m);
            for c in 0..*m {
                let mut outer = CMat::zeros(*m, *m);
                for r1 in 0..*m {
                    for r2 in 0..*m {
                        outer.set(r1, r2, q.get(r1, c) * q.get(r2, c).conj());
                    }
                }
                idempotents.push(Element::from_herm_matrix(&outer).expect("Hermitian"));
            }
            JordanFrame::new(alg.clone(), idempotents).expect("constructed to size")
        }
        Algebra::Spin { dim } => {
            let mut u: Vec<f64> = (0..dim - 1).map(|_| rng.sample(StandardNormal)).collect();
            let norm = u.iter().map(|v| v * v).sum::<f64>().sqrt();
            if norm < 1e-12 {
                u = vec![0.0; dim - 1];
                u[0] = 1.0;
            } else {
                for v in u.iter_mut() {
                    *v /= norm;
                }
            }
            let half_u: Vec<f64> = u.iter().map(|v| 0.5 * v).collect();
            let neg_half_u: Vec<f64> = u.iter().map(|v| -0.5 * v).collect();
            let e1 = Element::from_spin_parts(0.5, &half_u).expect("dims");
            let e2 = Element::from_spin_parts(0.5, &neg_half_u).expect("dims");
            JordanFrame::new(alg.clone(), vec![e1, e2]).expect("constructed to size")
        }
        Algebra::Product { factors } => {
            let mut idempotents = Vec::with_capacity(alg.rank());
            for (idx, f) in factors.iter().enumerate() {
                let sub = random_jordan_frame(f, rng);
                for idem in sub.idempotents() {
                    idempotents
                        .push(Element::embed_factor(alg, idx, idem).expect("factor matches"));
                }
            }
            JordanFrame::new(alg.clone(), idempotents).expect("constructed to size")
        }
    }
}

/// Random idempotent of rank `k`: the sum of `k` members of a random frame.
pub fn random_idempotent<R: Rng>(alg: &Algebra, k: usize, rng: &mut R) -> Result<Element> {
    if k == 0 || k > alg.rank() {
        return Err(Error::IndexOutOfRange { index: k, len: alg.rank() });
    }
    random_jordan_frame(alg, rng).rank_idempotent(k)
}

/// Random sign element: uniform ±1 coefficients on a random frame.
pub fn random_sign_element<R: Rng>(alg: &Algebra, rng: &mut R) -> Element {
    let frame = random_jordan_frame(alg, rng);
    let signs: Vec<bool> = (0..alg.rank()).map(|_| rng.gen::<bool>()).collect();
    frame.sign_element(&signs).expect("lengths match")
}

/// Random element of the symmetric cone (a Jordan square).
pub fn random_cone_element<R: Rng>(alg: &Algebra, rng: &mut R) -> Element {
    random_element(alg, rng).square()
}

/// Frame drawn from a fresh seeded generator; convenience for file formats
/// that carry a seed instead of explicit idempotents.
pub fn seeded_jordan_frame(alg: &Algebra, seed: u64) -> JordanFrame {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    random_jordan_frame(alg, &mut rng)
}

/// Random positive-definite element with eigenvalues uniform in `[lo, hi]`.
pub fn random_positive_element<R: Rng>(
    alg: &Algebra,
    lo: f64,
    hi: f64,
    rng: &mut R,
) -> Element {
    let frame = random_jordan_frame(alg, rng);
    let values: Vec<f64> = (0..alg.rank()).map(|_| rng.gen_range(lo..hi)).collect();
    frame.combine(&values).expect("lengths match")
}
