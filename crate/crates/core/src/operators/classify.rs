//! Positivity certificates, sampling-based falsification, and the doubly
//! (sub)stochastic / scalar-multiple-of-doubly-stochastic classification.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{Algebra, Element};
use crate::error::Result;
use crate::linalg::jacobi_symmetric;

use super::{LinearOperator, StructureTag};

/// Verdict on `T(V₊) ⊆ V₊`.
///
/// Exact positivity of a general map is not decidable by sampling, so the
/// verdict is three-valued: `Certified` comes only from structure (or a
/// solve-and-check certificate for inverse maps), `Falsified` carries a cone
/// element whose image leaves the cone, and everything else stays
/// `Undetermined`.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Positivity {
    Certified { reason: String },
    Falsified { witness: Element, violation: f64 },
    Undetermined { samples: usize },
}

impl Positivity {
    pub fn is_certified(&self) -> bool {
        matches!(self, Positivity::Certified { .. })
    }

    pub fn is_falsified(&self) -> bool {
        matches!(self, Positivity::Falsified { .. })
    }
}

/// Sign-tracked structural certificate: `Positive` means the map provably
/// preserves the cone, `Negative` that its negation does, `Zero` that it is
/// the zero map.
enum SignedCert {
    Positive(String),
    Negative(String),
    Zero,
}

impl SignedCert {
    fn flip(self) -> SignedCert {
        match self {
            SignedCert::Positive(r) => SignedCert::Negative(r),
            SignedCert::Negative(r) => SignedCert::Positive(r),
            SignedCert::Zero => SignedCert::Zero,
        }
    }
}

fn psd_check(a: &crate::linalg::Mat) -> bool {
    let (vals, _) = jacobi_symmetric(a);
    let scale = vals.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    vals.last().is_none_or(|v| *v >= -1e-12 * scale)
}

fn structural_cert(op: &LinearOperator) -> Option<SignedCert> {
    match op.tag() {
        StructureTag::Generic => {
            if op.matrix().max_abs() == 0.0 {
                Some(SignedCert::Zero)
            } else {
                None
            }
        }
        StructureTag::Quad { .. } => {
            Some(SignedCert::Positive("quadratic representation".into()))
        }
        StructureTag::Congruence { .. } => Some(SignedCert::Positive("congruence".into())),
        StructureTag::Schur { a, .. } => {
            if psd_check(a) {
                Some(SignedCert::Positive("Schur map with PSD parameter".into()))
            } else {
                None
            }
        }
        StructureTag::Scale { alpha, inner } => {
            let inner_cert = structural_cert(inner)?;
            if *alpha == 0.0 {
                return Some(SignedCert::Zero);
            }
            if *alpha > 0.0 {
                Some(inner_cert)
            } else {
                Some(inner_cert.flip())
            }
        }
        StructureTag::Sum { parts } => {
            let mut positives = 0usize;
            let mut negatives = 0usize;
            for p in parts {
                match structural_cert(p)? {
                    SignedCert::Positive(_) => positives += 1,
                    SignedCert::Negative(_) => negatives += 1,
                    SignedCert::Zero => {}
                }
            }
            match (positives, negatives) {
                (0, 0) => Some(SignedCert::Zero),
                (_, 0) => Some(SignedCert::Positive("sum of positive maps".into())),
                (0, _) => Some(SignedCert::Negative("sum of negated positive maps".into())),
                _ => None,
            }
        }
        StructureTag::Compose { parts } => {
            let mut negatives = 0usize;
            for p in parts {
                match structural_cert(p)? {
                    SignedCert::Positive(_) => {}
                    SignedCert::Negative(_) => negatives += 1,
                    SignedCert::Zero => return Some(SignedCert::Zero),
                }
            }
            let reason = "composition of positive maps".to_string();
            if negatives.is_multiple_of(2) {
                Some(SignedCert::Positive(reason))
            } else {
                Some(SignedCert::Negative(reason))
            }
        }
        StructureTag::Inverse { inner } => inverse_cert(op, inner),
        StructureTag::Lyapunov { .. }
        | StructureTag::QuadPair { .. }
        | StructureTag::LyapunovMatrix { .. } => None,
    }
}

/// Certificates for inverse maps.
///
/// - `P_a⁻¹ = P_{a⁻¹}` and congruence inverses are congruences, so those
///   are positive outright.
/// - `L_a` with `a > 0` is Lyapunov-like with positive spectrum, hence its
///   inverse is positive.
/// - For `X ↦ MX + XM*`, positive stability of `M` is equivalent to the
///   solution `H` of `MH + HM* = I` being positive definite; `H` is exactly
///   the inverse applied to the unit, so solve-and-check certifies the
///   inverse without locating eigenvalues of `M`.
fn inverse_cert(op: &LinearOperator, inner: &LinearOperator) -> Option<SignedCert> {
    match inner.tag() {
        StructureTag::Quad { a } => {
            let invertible = a.eigenvalues().iter().all(|v| v.abs() > 1e-10);
            invertible.then(|| {
                SignedCert::Positive("inverse of quadratic representation".into())
            })
        }
        StructureTag::Congruence { .. } => {
            Some(SignedCert::Positive("inverse of congruence".into()))
        }
        StructureTag::Lyapunov { a } => {
            let vals = a.eigenvalues();
            let scale = vals.iter().fold(1.0f64, |m, v| m.max(v.abs()));
            (vals.last().copied().unwrap_or(0.0) > 1e-10 * scale).then(|| {
                SignedCert::Positive(
                    "inverse of a Lyapunov transformation with positive spectrum".into(),
                )
            })
        }
        StructureTag::LyapunovMatrix { .. } => {
            let e = Element::unit(op.algebra());
            let h = op.apply(&e).ok()?;
            let residual = (&inner.apply(&h).ok()? - &e).norm();
            if residual > 1e-8 * (1.0 + h.norm()) {
                return None;
            }
            let vals = h.eigenvalues();
            let scale = vals.iter().fold(1.0f64, |m, v| m.max(v.abs()));
            (vals.last().copied().unwrap_or(0.0) > 1e-9 * scale).then(|| {
                SignedCert::Positive(
                    "inverse of a positive-stable matrix Lyapunov map (solve-and-check)".into(),
                )
            })
        }
        _ => None,
    }
}

impl LinearOperator {
    /// Structural positivity certificate, if one exists. Never samples.
    pub fn certified_positive(&self) -> Option<String> {
        match structural_cert(self)? {
            SignedCert::Positive(reason) => Some(reason),
            SignedCert::Zero => Some("zero map".into()),
            SignedCert::Negative(_) => None,
        }
    }
}

/// Random primitive (rank-one) idempotent; cheaper than drawing a full frame.
pub(crate) fn random_primitive_idempotent<R: Rng>(alg: &Algebra, rng: &mut R) -> Element {
    use rand_distr::StandardNormal;
    match alg {
        Algebra::RealSymmetric { m } => {
            let mut v: Vec<f64> = (0..*m).map(|_| rng.sample(StandardNormal)).collect();
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-300);
            for x in v.iter_mut() {
                *x /= norm;
            }
            let mut outer = crate::linalg::Mat::zeros(*m, *m);
            for i in 0..*m {
                for j in 0..*m {
                    outer.set(i, j, v[i] * v[j]);
                }
            }
            Element::from_sym_matrix(&outer).expect("vv^T is symmetric")
        }
        Algebra::ComplexHermitian { m } => {
            let mut v: Vec<num_complex::Complex64> = (0..*m)
                .map(|_| {
                    let re: f64 = rng.sample(StandardNormal);
                    let im: f64 = rng.sample(StandardNormal);
                    num_complex::Complex64::new(re, im)
                })
                .collect();
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt().max(1e-300);
            for z in v.iter_mut() {
                *z /= norm;
            }
            let mut outer = crate::linalg::CMat::zeros(*m, *m);
            for i in 0..*m {
                for j in 0..*m {
                    outer.set(i, j, v[i] * v[j].conj());
                }
            }
            Element::from_herm_matrix(&outer).expect("vv* is Hermitian")
        }
        Algebra::Spin { dim } => {
            let mut u: Vec<f64> = (0..dim - 1).map(|_| rng.sample(StandardNormal)).collect();
            let norm = u.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm < 1e-12 {
                u = vec![0.0; dim - 1];
                u[0] = 1.0;
            } else {
                for x in u.iter_mut() {
                    *x /= norm;
                }
            }
            let half: Vec<f64> = u.iter().map(|x| 0.5 * x).collect();
            Element::from_spin_parts(0.5, &half).expect("dims")
        }
        Algebra::Product { factors } => {
            let idx = rng.gen_range(0..factors.len());
            let part = random_primitive_idempotent(&factors[idx], rng);
            Element::embed_factor(alg, idx, &part).expect("factor matches")
        }
    }
}

/// Positivity verdict: structural certificate first, then a witness search
/// over rank-one idempotents (the extreme rays of the cone).
pub fn falsify_positivity(
    op: &LinearOperator,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Positivity {
    if let Some(reason) = op.certified_positive() {
        return Positivity::Certified { reason };
    }
    let alg = op.algebra().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(0x705);

    // Deterministic probes: the unit and the standard frame atoms.
    let mut probes: Vec<Element> = vec![Element::unit(&alg)];
    probes.extend(Element::unit(&alg).spectral().into_parts().1.idempotents().to_vec());

    let mut tested = 0usize;
    let check = |c: &Element, tested: &mut usize| -> Option<Positivity> {
        *tested += 1;
        let image = op.apply(c).expect("same algebra");
        let lmin = image.lambda_min();
        if lmin < -tol {
            return Some(Positivity::Falsified { witness: c.clone(), violation: lmin });
        }
        None
    };
    for c in &probes {
        if let Some(v) = check(c, &mut tested) {
            return v;
        }
    }
    while tested < samples {
        let c = random_primitive_idempotent(&alg, &mut rng);
        if let Some(v) = check(&c, &mut tested) {
            return v;
        }
    }
    Positivity::Undetermined { samples: tested }
}

/// Outcome of the doubly (sub)stochastic classification.
#[derive(Debug, Clone, Serialize)]
pub struct ClassificationReport {
    pub positivity: Positivity,
    /// Positivity evidence plus `T(e) = e` and `T*(e) = e`.
    pub is_ds: bool,
    /// Positivity evidence plus `T(e) <= e` and `T*(e) <= e`.
    pub is_dss: bool,
    /// `t` such that `T = t D` with `D` doubly stochastic, when detected.
    pub scalar_ds: Option<f64>,
}

/// Classifies `T` as doubly stochastic / substochastic / a scalar multiple of
/// a doubly stochastic map. `tol` is absolute on unit-image residuals.
pub fn classify_stochastic(
    op: &LinearOperator,
    tol: f64,
    samples: usize,
    seed: u64,
) -> Result<ClassificationReport> {
    let n = op.algebra().rank() as f64;
    let e = Element::unit(op.algebra());
    let te = op.apply(&e)?;
    let tse = op.adjoint_unit_image();
    let positivity = falsify_positivity(op, samples, seed, tol);
    let evidence = !positivity.is_falsified();

    let is_ds = evidence && (&te - &e).norm() <= tol && (&tse - &e).norm() <= tol;
    let is_dss = evidence && (&e - &te).in_cone(tol) && (&e - &tse).in_cone(tol);

    // T = tD forces T(e) = te and T*(e) = te with t = tr(T(e))/n.
    let t = te.trace() / n;
    let scalar_ds = if op.matrix().max_abs() <= tol {
        Some(0.0)
    } else if t.abs() > tol
        && (&te - &(&e * t)).norm() <= tol
        && (&tse - &(&e * t)).norm() <= tol
    {
        let d = op.scale(1.0 / t);
        let d_pos = falsify_positivity(&d, samples, seed ^ 0x5ca1ab1e, tol);
        if d_pos.is_falsified() {
            None
        } else {
            Some(t)
        }
    } else {
        None
    };

    Ok(ClassificationReport { positivity, is_ds, is_dss, scalar_ds })
}
