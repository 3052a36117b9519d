//! Generators for structured operators used across tests, the self-test
//! suite, and the CLI: Haar-ish unitaries, doubly stochastic maps, certified
//! positive maps, and the power-pair family.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::algebra::{random_element, random_sign_element, Algebra, Element};
use crate::error::{Error, Result};
use crate::linalg::{orthonormalize_complex, orthonormalize_real, CMat, Mat};
use crate::operators::LinearOperator;

/// Random unitary matrix (orthonormalized complex Gaussian).
pub fn random_unitary<R: Rng>(m: usize, rng: &mut R) -> CMat {
    let mut q = CMat::zeros(m, m);
    for r in 0..m {
        for c in 0..m {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            q.set(r, c, Complex64::new(re, im));
        }
    }
    orthonormalize_complex(&mut q);
    q
}

/// Random orthogonal matrix (orthonormalized real Gaussian).
pub fn random_orthogonal<R: Rng>(m: usize, rng: &mut R) -> Mat {
    let mut q = Mat::zeros(m, m);
    for r in 0..m {
        for c in 0..m {
            q.set(r, c, rng.sample(StandardNormal));
        }
    }
    orthonormalize_real(&mut q);
    q
}

/// Random complex square matrix with iid Gaussian entries.
pub fn random_complex_matrix<R: Rng>(m: usize, rng: &mut R) -> CMat {
    let mut q = CMat::zeros(m, m);
    for r in 0..m {
        for c in 0..m {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            q.set(r, c, Complex64::new(re, im));
        }
    }
    q
}

/// Random real symmetric matrix with Gaussian entries.
pub fn random_symmetric_matrix<R: Rng>(n: usize, rng: &mut R) -> Mat {
    let mut a = Mat::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v: f64 = rng.sample(StandardNormal);
            a.set(i, j, v);
            a.set(j, i, v);
        }
    }
    a
}

/// Random PSD matrix `G Gᵀ / n`.
pub fn random_psd_matrix<R: Rng>(n: usize, rng: &mut R) -> Mat {
    let mut g = Mat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            g.set(i, j, rng.sample(StandardNormal));
        }
    }
    g.matmul(&g.transpose()).scale(1.0 / n as f64)
}

/// A single algebra automorphism with a structural positivity certificate:
/// a unitary/orthogonal congruence on the matrix kinds, the quadratic
/// representation of a sign element elsewhere.
pub fn random_automorphism<R: Rng>(alg: &Algebra, rng: &mut R) -> LinearOperator {
    match alg {
        Algebra::ComplexHermitian { m } => {
            LinearOperator::congruence(alg, &random_unitary(*m, rng)).expect("kind matches")
        }
        Algebra::RealSymmetric { m } => {
            LinearOperator::congruence(alg, &CMat::from_real(&random_orthogonal(*m, rng)))
                .expect("kind matches")
        }
        _ => LinearOperator::quad(&random_sign_element(alg, rng)),
    }
}

/// Mean of `count` random automorphisms: a doubly stochastic map whose
/// positivity is structurally certified.
pub fn random_ds_map<R: Rng>(alg: &Algebra, count: usize, rng: &mut R) -> LinearOperator {
    let parts: Vec<LinearOperator> =
        (0..count.max(1)).map(|_| random_automorphism(alg, rng)).collect();
    let k = parts.len() as f64;
    LinearOperator::sum(parts).expect("same algebra").scale(1.0 / k)
}

/// Random certified-positive map: a nonnegative mix of quadratic
/// representations and (on matrix kinds) congruences.
pub fn random_positive_map<R: Rng>(alg: &Algebra, rng: &mut R) -> LinearOperator {
    let mut parts: Vec<LinearOperator> = Vec::new();
    parts.push(LinearOperator::quad(&random_element(alg, rng)).scale(rng.gen_range(0.1..1.0)));
    match alg {
        Algebra::ComplexHermitian { m } => {
            parts.push(
                LinearOperator::congruence(alg, &random_complex_matrix(*m, rng))
                    .expect("kind matches")
                    .scale(rng.gen_range(0.1..1.0)),
            );
        }
        Algebra::RealSymmetric { m } => {
            let mut g = Mat::zeros(*m, *m);
            for r in 0..*m {
                for c in 0..*m {
                    g.set(r, c, rng.sample(StandardNormal));
                }
            }
            parts.push(
                LinearOperator::congruence(alg, &CMat::from_real(&g))
                    .expect("kind matches")
                    .scale(rng.gen_range(0.1..1.0)),
            );
        }
        _ => {
            parts.push(
                LinearOperator::quad(&random_element(alg, rng)).scale(rng.gen_range(0.1..1.0)),
            );
        }
    }
    LinearOperator::sum(parts).expect("same algebra")
}

/// Dense operator with iid Gaussian coordinate matrix (tagged generic);
/// almost surely not a positive map.
pub fn random_dense_operator<R: Rng>(alg: &Algebra, rng: &mut R) -> LinearOperator {
    let dim = alg.dim();
    let mut m = Mat::zeros(dim, dim);
    for r in 0..dim {
        for c in 0..dim {
            m.set(r, c, rng.sample(StandardNormal));
        }
    }
    LinearOperator::from_matrix(alg.clone(), m).expect("square by construction")
}

/// `P_{a^t, a^{1-t}}` for `a > 0` via Löwner powers.
pub fn power_pair_map(a: &Element, t: f64) -> Result<LinearOperator> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::InvalidInput(format!("power-pair exponent t={t} outside [0, 1]")));
    }
    let vals = a.eigenvalues();
    if vals.last().copied().unwrap_or(0.0) <= 0.0 {
        return Err(Error::InvalidInput("power-pair base must be positive definite".into()));
    }
    let at = a.lowner(|v| v.powf(t));
    let a1mt = a.lowner(|v| v.powf(1.0 - t));
    LinearOperator::quad_pair(&at, &a1mt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn unitaries_are_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let u = random_unitary(4, &mut rng);
        let id = u.adjoint().matmul(&u);
        for i in 0..4 {
            for j in 0..4 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((id.get(i, j) - Complex64::new(expect, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn ds_maps_fix_the_unit() {
        for alg in [
            Algebra::ComplexHermitian { m: 3 },
            Algebra::RealSymmetric { m: 3 },
            Algebra::Spin { dim: 5 },
            Algebra::Product {
                factors: vec![Algebra::ComplexHermitian { m: 2 }, Algebra::Spin { dim: 3 }],
            },
        ] {
            let mut rng = ChaCha8Rng::seed_from_u64(2);
            let t = random_ds_map(&alg, 3, &mut rng);
            let e = Element::unit(&alg);
            assert!((&t.apply(&e).unwrap() - &e).norm() < 1e-10);
            assert!((&t.adjoint().apply(&e).unwrap() - &e).norm() < 1e-10);
            assert!(t.certified_positive().is_some());
        }
    }

    #[test]
    fn positive_maps_certified() {
        for alg in [Algebra::ComplexHermitian { m: 3 }, Algebra::Spin { dim: 4 }] {
            let mut rng = ChaCha8Rng::seed_from_u64(3);
            let t = random_positive_map(&alg, &mut rng);
            assert!(t.certified_positive().is_some());
        }
    }

    #[test]
    fn power_pair_validation() {
        let alg = Algebra::RealSymmetric { m: 2 };
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let a = crate::algebra::random_positive_element(&alg, 0.5, 2.0, &mut rng);
        assert!(power_pair_map(&a, 0.5).is_ok());
        assert!(power_pair_map(&a, 1.5).is_err());
        let indef = crate::algebra::random_element(&alg, &mut rng);
        // generic Gaussian element is indefinite with overwhelming probability
        if indef.lambda_min() < 0.0 {
            assert!(power_pair_map(&indef, 0.5).is_err());
        }
    }
}
