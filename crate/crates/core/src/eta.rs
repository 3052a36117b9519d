//! The least weak-majorization envelope of a linear map.
//!
//! For a linear map `T` on a rank-`n` algebra, `eta(T)` is the unique
//! nonnegative decreasing vector such that
//! `lambda(|T(x)|) ≺_w eta(T) * lambda(|x|)` for every `x`, and `eta(T) ≺_w q`
//! for every other `q` satisfying the same inequality. It equals the
//! w-sup of `lambda(|T(c ∘ eps)|)` and `lambda(|T*(c ∘ eps)|)` over all
//! nonzero idempotents `c` and sign elements `eps`.
//!
//! Positive maps admit the closed form
//! `eta(T) = lambda(T(e)) ∨ lambda(T*(e))`; everything else is bracketed by
//! a sampled lower bound and certified upper bounds.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{random_element, random_jordan_frame, Algebra, Element};
use crate::error::{Error, Result};
use crate::linalg::jacobi_symmetric;
use crate::majorization::{
    hadamard, majorizes, w_inf, w_sup, weak_majorizes, DecVector, WSupAccumulator,
};
use crate::operators::{LinearOperator, StructureTag};

/// Sampling budget for the finite surrogate of the idempotent/sign-element
/// family and the random probe points.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SampleConfig {
    /// Number of random frame batches.
    pub n_frames: usize,
    /// Idempotent ranks to sample; `None` means all of `1..=n`.
    pub ranks: Option<Vec<usize>>,
    /// Sign elements drawn per frame batch and rank.
    pub signs_per_frame: usize,
    /// Random Gaussian probe points for inequality checks.
    pub n_random_x: usize,
    pub seed: u64,
    pub tol: f64,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig {
            n_frames: 200,
            ranks: None,
            signs_per_frame: 8,
            n_random_x: 1000,
            seed: 0,
            tol: 1e-8,
        }
    }
}

impl SampleConfig {
    /// Reduced budget for smoke runs.
    pub fn quick() -> Self {
        SampleConfig { n_frames: 25, signs_per_frame: 4, n_random_x: 200, ..Self::default() }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    fn ranks_for(&self, n: usize) -> Vec<usize> {
        match &self.ranks {
            Some(r) => r.iter().copied().filter(|k| *k >= 1 && *k <= n).collect(),
            None => (1..=n).collect(),
        }
    }
}

/// Certified bracket for `eta(T)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EtaEstimate {
    pub lower: DecVector,
    pub upper: DecVector,
    pub exact: bool,
    pub method: String,
    pub samples: usize,
    pub seed: u64,
}

/// A structured upper bound; `exact` marks the families where the bound is
/// the exact envelope.
#[derive(Debug, Clone)]
pub struct StructuredBound {
    pub value: DecVector,
    pub exact: bool,
    pub label: &'static str,
}

/// Outcome of a pointwise inequality check.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum CheckOutcome {
    Pass { samples: usize },
    Witness { x: Element, k: usize, lhs: f64, rhs: f64 },
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, CheckOutcome::Pass { .. })
    }
}

/// Clamps solver round-off on spectra that are nonnegative by construction.
fn nonneg_spectrum(mut vals: Vec<f64>) -> Vec<f64> {
    let scale = vals.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    for v in vals.iter_mut() {
        debug_assert!(*v >= -1e-7 * scale, "spectrum unexpectedly negative: {v}");
        if *v < 0.0 {
            *v = 0.0;
        }
    }
    vals
}

/// Closed form for certified-positive maps:
/// `lambda(T(e)) ∨ lambda(T*(e))`.
pub(crate) fn closed_form_positive(op: &LinearOperator) -> DecVector {
    let te = nonneg_spectrum(op.unit_image().eigenvalues());
    let tse = nonneg_spectrum(op.adjoint_unit_image().eigenvalues());
    w_sup(&[te, tse]).expect("nonnegative spectra")
}

/// The sampled `c ∘ eps` family: the unit is always included, then each
/// frame batch contributes idempotents of every requested rank paired with
/// sign elements from both the same frame and an independent one.
fn ce_samples(alg: &Algebra, config: &SampleConfig) -> Vec<Element> {
    let n = alg.rank();
    let ranks = config.ranks_for(n);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(0xce);
    let mut out = Vec::with_capacity(1 + config.n_frames * ranks.len() * config.signs_per_frame * 2);
    out.push(Element::unit(alg));
    for _ in 0..config.n_frames {
        let frame = random_jordan_frame(alg, &mut rng);
        let other = random_jordan_frame(alg, &mut rng);
        for &k in &ranks {
            let c = frame.rank_idempotent(k).expect("rank validated");
            for _ in 0..config.signs_per_frame {
                let signs: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
                let shared = frame.sign_element(&signs).expect("lengths match");
                out.push(c.jordan_mul(&shared).expect("same algebra"));
                let signs: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
                let indep = other.sign_element(&signs).expect("lengths match");
                out.push(c.jordan_mul(&indep).expect("same algebra"));
            }
        }
    }
    out
}

/// Sampled lower bound: the w-sup of `lambda(|T(x)|)` and `lambda(|T*(x)|)`
/// over the `c ∘ eps` sample family. Always weakly majorized by the true
/// envelope, and exact for positive maps because the unit is in the family.
pub fn eta_lower_sampled(op: &LinearOperator, config: &SampleConfig) -> DecVector {
    let adjoint = op.adjoint();
    let mut acc = WSupAccumulator::new(op.algebra().rank());
    for x in ce_samples(op.algebra(), config) {
        acc.push(&op.apply(&x).expect("same algebra").abs_eigenvalues());
        acc.push(&adjoint.apply(&x).expect("same algebra").abs_eigenvalues());
    }
    acc.finish()
}

/// Crude certified upper bound `sqrt(n) * sigma * 1`, where `sigma` is the
/// largest singular value of the coordinate matrix.
///
/// Membership: for `c` of rank `k`,
/// `S_l(|T(c∘eps)|) <= sqrt(l) ||T(c∘eps)||_2 <= sqrt(l) sigma sqrt(k)
///  <= sqrt(n) sigma min(l, k) = S_l(sqrt(n) sigma 1 * 1_k)`.
pub fn eta_upper_crude(op: &LinearOperator) -> DecVector {
    let n = op.algebra().rank();
    let sigma = op.coordinate_norm_2();
    DecVector::constant(n, (n as f64).sqrt() * sigma).expect("constant vector")
}

/// Structured upper bound from the tag, when one is known.
pub fn eta_upper_structured(op: &LinearOperator) -> Option<StructuredBound> {
    // Positive maps have the exact closed form regardless of tag.
    if op.certified_positive().is_some() {
        return Some(StructuredBound {
            value: closed_form_positive(op),
            exact: true,
            label: "positive closed form",
        });
    }
    let n = op.algebra().rank();
    match op.tag() {
        StructureTag::Lyapunov { a } => Some(StructuredBound {
            value: DecVector::new(a.abs_eigenvalues()).expect("abs spectrum decreasing"),
            exact: true,
            label: "lyapunov |a| spectrum",
        }),
        StructureTag::Quad { a } => Some(StructuredBound {
            value: DecVector::new(nonneg_spectrum(a.square().eigenvalues()))
                .expect("square spectrum nonnegative"),
            exact: true,
            label: "quad a^2 spectrum",
        }),
        StructureTag::QuadPair { a, b } => quad_pair_power_value(a, b).map(|value| {
            StructuredBound { value, exact: true, label: "commuting power pair" }
        }),
        StructureTag::Schur { a, .. } => {
            // A = A⁺ - A⁻ (spectral parts): bound (diag A⁺)↓ + (diag A⁻)↓.
            let (vals, vecs) = jacobi_symmetric(a);
            let mut diag_plus = vec![0.0; n];
            let mut diag_minus = vec![0.0; n];
            for (idx, v) in vals.iter().enumerate() {
                for i in 0..n {
                    let w = vecs.get(i, idx) * vecs.get(i, idx);
                    if *v >= 0.0 {
                        diag_plus[i] += v * w;
                    } else {
                        diag_minus[i] -= v * w;
                    }
                }
            }
            let plus = DecVector::from_unsorted(&diag_plus).ok()?;
            let minus = DecVector::from_unsorted(&diag_minus).ok()?;
            Some(StructuredBound {
                value: plus.add(&minus).expect("same rank"),
                exact: false,
                label: "schur diagonal split",
            })
        }
        StructureTag::LyapunovMatrix { m } => {
            // Hermitian parameter: X ↦ MX + XM = 2 M ∘ X, a Lyapunov
            // transformation with element 2M.
            if !m.is_hermitian(1e-10 * m.frobenius_norm().max(1.0)) {
                return None;
            }
            let elem = match op.algebra() {
                Algebra::ComplexHermitian { .. } => Element::from_herm_matrix(m).ok()?,
                Algebra::RealSymmetric { .. } => {
                    let mut real = crate::linalg::Mat::zeros(m.rows(), m.cols());
                    for r in 0..m.rows() {
                        for c in 0..m.cols() {
                            real.set(r, c, m.get(r, c).re);
                        }
                    }
                    Element::from_sym_matrix(&real).ok()?
                }
                _ => return None,
            };
            let vals: Vec<f64> = elem.abs_eigenvalues().iter().map(|v| 2.0 * v).collect();
            Some(StructuredBound {
                value: DecVector::new(vals).expect("scaled abs spectrum"),
                exact: true,
                label: "hermitian matrix-lyapunov",
            })
        }
        StructureTag::Scale { alpha, inner } => {
            let inner_bound = eta_upper_structured(inner)?;
            Some(StructuredBound {
                value: inner_bound.value.scale(alpha.abs()).expect("nonnegative scale"),
                exact: inner_bound.exact,
                label: inner_bound.label,
            })
        }
        StructureTag::Sum { parts } => {
            let mut acc = DecVector::zero(n);
            for p in parts {
                acc = acc.add(&eta_upper_structured(p)?.value).ok()?;
            }
            Some(StructuredBound { value: acc, exact: false, label: "sum of part bounds" })
        }
        StructureTag::Compose { parts } => {
            let mut acc = DecVector::ones(n);
            for p in parts {
                acc = acc.hadamard(&eta_upper_structured(p)?.value).ok()?;
            }
            Some(StructuredBound {
                value: acc,
                exact: false,
                label: "product of part bounds",
            })
        }
        // Congruences are always certified positive, so they were already
        // handled by the closed form above.
        StructureTag::Generic
        | StructureTag::Inverse { .. }
        | StructureTag::Congruence { .. } => None,
    }
}

/// Detects the commuting power pattern `(a, b) = (d^t, d^(1-t))` with
/// `d > 0`, for which the envelope of `P_{a,b}` is exactly
/// `lambda(a ∘ b) = lambda(d)`.
fn quad_pair_power_value(a: &Element, b: &Element) -> Option<DecVector> {
    let scale_a = a.norm().max(1e-300);
    let scale_b = b.norm().max(1e-300);
    if a.lambda_min() <= 1e-12 * scale_a || b.lambda_min() <= 1e-12 * scale_b {
        return None;
    }
    // Operator commutation: L_a L_b = L_b L_a.
    let la = LinearOperator::lyapunov(a);
    let lb = LinearOperator::lyapunov(b);
    let comm = la
        .compose(&lb)
        .expect("same algebra")
        .matrix()
        .add(&lb.compose(&la).expect("same algebra").matrix().scale(-1.0));
    if comm.max_abs() > 1e-9 * (1.0 + scale_a * scale_b) {
        return None;
    }
    // Joint frame from a generic combination; ties in a are broken by b.
    for gamma in [0.6180339887498949, 1.0, 1.8477590650225735] {
        let z = a + &(b * gamma);
        let frame = z.spectral().into_parts().1;
        let alphas: Vec<f64> =
            frame.idempotents().iter().map(|e| a.inner(e).expect("same algebra")).collect();
        let betas: Vec<f64> =
            frame.idempotents().iter().map(|e| b.inner(e).expect("same algebra")).collect();
        let a_rec = frame.combine(&alphas).expect("lengths match");
        let b_rec = frame.combine(&betas).expect("lengths match");
        if (&a_rec - a).norm() > 1e-8 * scale_a || (&b_rec - b).norm() > 1e-8 * scale_b {
            continue;
        }
        if alphas.iter().any(|v| *v <= 0.0) || betas.iter().any(|v| *v <= 0.0) {
            continue;
        }
        // t log(d_i) = log(alpha_i) with d_i = alpha_i beta_i, t in [0, 1].
        let logs_d: Vec<f64> = alphas.iter().zip(&betas).map(|(x, y)| (x * y).ln()).collect();
        let logs_a: Vec<f64> = alphas.iter().map(|x| x.ln()).collect();
        let den: f64 = logs_d.iter().map(|v| v * v).sum();
        let consistent = if den < 1e-18 {
            // every d_i = 1: need alpha_i = beta_i = 1
            logs_a.iter().all(|v| v.abs() <= 1e-8)
        } else {
            let t: f64 = logs_a.iter().zip(&logs_d).map(|(x, y)| x * y).sum::<f64>() / den;
            (-1e-9..=1.0 + 1e-9).contains(&t)
                && logs_a
                    .iter()
                    .zip(&logs_d)
                    .all(|(x, y)| (t * y - x).abs() <= 1e-7 * (1.0 + x.abs()))
        };
        if consistent {
            let prod = a.jordan_mul(b).expect("same algebra");
            return DecVector::new(nonneg_spectrum(prod.eigenvalues())).ok();
        }
        return None;
    }
    None
}

/// Exact envelope for a certified-positive map; refuses anything else so the
/// caller can fall back to the bracket.
pub fn eta_exact_positive(op: &LinearOperator) -> Result<EtaEstimate> {
    let reason = op.certified_positive().ok_or(Error::PositivityNotCertified)?;
    let value = closed_form_positive(op);
    let self_adjoint = op
        .matrix()
        .add(&op.matrix().transpose().scale(-1.0))
        .max_abs()
        <= 1e-10 * op.matrix().max_abs().max(1.0);
    let method = if self_adjoint {
        format!("positive closed form, self-adjoint: lambda(T(e)) ({reason})")
    } else {
        format!("positive closed form: join of lambda(T(e)), lambda(T*(e)) ({reason})")
    };
    Ok(EtaEstimate {
        lower: value.clone(),
        upper: value,
        exact: true,
        method,
        samples: 0,
        seed: 0,
    })
}

/// Full estimate: closed form when positivity is certified, otherwise the
/// sampled lower bound against the w-minimum of the available upper bounds.
pub fn eta_estimate(op: &LinearOperator, config: &SampleConfig) -> EtaEstimate {
    if let Ok(mut exact) = eta_exact_positive(op) {
        exact.seed = config.seed;
        return exact;
    }
    let structured = eta_upper_structured(op);
    if let Some(StructuredBound { value, exact: true, label }) = &structured {
        return EtaEstimate {
            lower: value.clone(),
            upper: value.clone(),
            exact: true,
            method: format!("structured exact envelope ({label})"),
            samples: 0,
            seed: config.seed,
        };
    }
    let lower = eta_lower_sampled(op, config);
    let samples = 2 * (1
        + config.n_frames
            * config.ranks_for(op.algebra().rank()).len()
            * config.signs_per_frame
            * 2);
    let crude = eta_upper_crude(op);
    let mut uppers: Vec<Vec<f64>> = vec![crude.entries().to_vec()];
    let mut method = String::from("sampled lower vs crude upper");
    if let Some(StructuredBound { value, label, .. }) = &structured {
        uppers.push(value.entries().to_vec());
        method = format!("sampled lower vs w-inf of crude and structured uppers ({label})");
    }
    let upper = w_inf(&uppers).expect("nonempty nonnegative uppers");
    debug_assert!(
        weak_majorizes(lower.entries(), upper.entries(), 1e-9).unwrap_or(false),
        "bracket soundness violated"
    );
    let exact = lower.max_abs_diff(&upper) <= config.tol;
    EtaEstimate { lower, upper, exact, method, samples, seed: config.seed }
}

/// Probe points for the inequality checks: the `c ∘ eps` family, `±e`,
/// frame atoms of `T(e)` and `T*(e)`, random Gaussians, and random rank-one
/// elements.
pub(crate) fn probe_points(op: &LinearOperator, config: &SampleConfig) -> Vec<Element> {
    let alg = op.algebra().clone();
    let mut points = ce_samples(&alg, config);
    let e = Element::unit(&alg);
    points.push(e.clone());
    points.push(-&e);
    for atom in op.unit_image().spectral().into_parts().1.idempotents() {
        points.push(atom.clone());
    }
    for atom in op.adjoint_unit_image().spectral().into_parts().1.idempotents() {
        points.push(atom.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(0xcafe);
    for _ in 0..config.n_random_x {
        points.push(random_element(&alg, &mut rng));
    }
    for _ in 0..config.n_random_x / 4 + 1 {
        let scale: f64 = rng.gen_range(-2.0..2.0);
        let c = crate::operators::random_primitive_idempotent(&alg, &mut rng);
        points.push(&c * scale);
    }
    points
}

/// Verifies `lambda(|T(x)|) ≺_w q * lambda(|x|)` over the probe set and
/// returns the first violating point otherwise.
pub fn check_inequality(
    op: &LinearOperator,
    q: &DecVector,
    config: &SampleConfig,
) -> CheckOutcome {
    let points = probe_points(op, config);
    let total = points.len();
    for x in points {
        let lhs = op.apply(&x).expect("same algebra").abs_eigenvalues();
        let rhs = hadamard(q.entries(), &x.abs_eigenvalues()).expect("equal rank");
        if !weak_majorizes(&lhs, &rhs, config.tol).expect("equal rank") {
            let (k, l, r) = first_partial_sum_violation(&lhs, &rhs);
            return CheckOutcome::Witness { x, k, lhs: l, rhs: r };
        }
    }
    CheckOutcome::Pass { samples: total }
}

/// Verifies the majorization variant `lambda(T(x)) ≺ q * lambda(x)` (signed
/// spectra, equal totals) over the probe set. `q` must be decreasing but may
/// have negative entries.
pub fn check_majorization_pointwise(
    op: &LinearOperator,
    q: &[f64],
    config: &SampleConfig,
) -> Result<CheckOutcome> {
    if q.len() != op.algebra().rank() {
        return Err(Error::LengthMismatch { left: q.len(), right: op.algebra().rank() });
    }
    for w in q.windows(2) {
        if w[1] > w[0] + 1e-12 {
            return Err(Error::NotDecreasing { index: 1 });
        }
    }
    let points = probe_points(op, config);
    let total = points.len();
    for x in points {
        let lhs = op.apply(&x).expect("same algebra").eigenvalues();
        let rhs = hadamard(q, &x.eigenvalues()).expect("equal rank");
        if !majorizes(&lhs, &rhs, config.tol).expect("equal rank") {
            let (k, l, r) = first_partial_sum_violation(
                &crate::majorization::decreasing_rearrangement(&lhs),
                &crate::majorization::decreasing_rearrangement(&rhs),
            );
            return Ok(CheckOutcome::Witness { x, k, lhs: l, rhs: r });
        }
    }
    Ok(CheckOutcome::Pass { samples: total })
}

fn first_partial_sum_violation(lhs: &[f64], rhs: &[f64]) -> (usize, f64, f64) {
    let mut sl = 0.0;
    let mut sr = 0.0;
    let mut worst = (lhs.len(), 0.0, 0.0);
    let mut worst_gap = f64::NEG_INFINITY;
    for k in 0..lhs.len() {
        sl += lhs[k];
        sr += rhs[k];
        if sl - sr > worst_gap {
            worst_gap = sl - sr;
            worst = (k + 1, sl, sr);
        }
    }
    worst
}

/// A scalar sublinear nonnegative function, validated by probing.
pub struct SublinearFn {
    f: Box<dyn Fn(f64) -> f64>,
}

impl SublinearFn {
    /// Probes homogeneity (`phi(mu t) = mu phi(t)` for `mu >= 0`),
    /// nonnegativity, and `phi(0) = 0`; together these pin down the form
    /// `alpha t` on `t >= 0` / `beta t` on `t <= 0` with `beta <= 0 <= alpha`.
    pub fn new(f: impl Fn(f64) -> f64 + 'static) -> Result<Self> {
        let fail = |detail: &str| Error::NotSublinear { detail: detail.into() };
        if f(0.0).abs() > 1e-12 {
            return Err(fail("phi(0) != 0"));
        }
        let alpha = f(1.0);
        let beta = -f(-1.0);
        if alpha < 0.0 || -beta < 0.0 {
            return Err(fail("phi takes negative values"));
        }
        for mu in [0.5, 2.0, 3.5] {
            if (f(mu) - mu * alpha).abs() > 1e-10 * (1.0 + alpha.abs()) {
                return Err(fail("phi is not positively homogeneous on t > 0"));
            }
            if (f(-mu) + mu * beta).abs() > 1e-10 * (1.0 + beta.abs()) {
                return Err(fail("phi is not positively homogeneous on t < 0"));
            }
        }
        Ok(SublinearFn { f: Box::new(f) })
    }

    pub fn eval(&self, t: f64) -> f64 {
        (self.f)(t)
    }
}

/// For certified-positive `T`, verifies
/// `lambda(phi(T(x))) ≺_w eta(T) * lambda(phi(x))` over the probe set.
pub fn sublinear_check(
    op: &LinearOperator,
    phi: &SublinearFn,
    config: &SampleConfig,
) -> Result<CheckOutcome> {
    op.certified_positive().ok_or(Error::PositivityNotCertified)?;
    let eta = closed_form_positive(op);
    let points = probe_points(op, config);
    let total = points.len();
    for x in points {
        let lhs =
            nonneg_spectrum(op.apply(&x).expect("same algebra").lowner(|t| phi.eval(t)).eigenvalues());
        let phix = nonneg_spectrum(x.lowner(|t| phi.eval(t)).eigenvalues());
        let rhs = hadamard(eta.entries(), &phix).expect("equal rank");
        if !weak_majorizes(&lhs, &rhs, config.tol).expect("equal rank") {
            let (k, l, r) = first_partial_sum_violation(&lhs, &rhs);
            return Ok(CheckOutcome::Witness { x, k, lhs: l, rhs: r });
        }
    }
    Ok(CheckOutcome::Pass { samples: total })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{random_positive_element, random_sign_element};
    use crate::fixtures;

    fn herm3() -> Algebra {
        Algebra::ComplexHermitian { m: 3 }
    }

    fn cfg() -> SampleConfig {
        SampleConfig { n_frames: 20, signs_per_frame: 4, n_random_x: 100, ..Default::default() }
    }

    #[test]
    fn lyapunov_lower_attains_envelope() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = random_element(&herm3(), &mut rng);
        let la = LinearOperator::lyapunov(&a);
        let lower = eta_lower_sampled(&la, &cfg());
        let expect = a.abs_eigenvalues();
        // x = e puts lambda(|a|) in the sample family; the envelope equals it.
        for (l, e) in lower.entries().iter().zip(&expect) {
            assert!((l - e).abs() < 1e-9, "lower {l} vs lambda(|a|) {e}");
        }
        let est = eta_estimate(&la, &cfg());
        assert!(est.exact);
        for (l, e) in est.upper.entries().iter().zip(&expect) {
            assert!((l - e).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_and_identity() {
        let alg = herm3();
        let zero = LinearOperator::zero(&alg);
        assert!(eta_lower_sampled(&zero, &cfg()).sum() < 1e-12);
        assert!(eta_upper_crude(&zero).sum() < 1e-12);
        let est = eta_estimate(&zero, &cfg());
        assert!(est.exact);

        let id = LinearOperator::identity(&alg);
        let est = eta_estimate(&id, &cfg());
        assert!(est.exact);
        for v in est.upper.entries() {
            assert!((v - 1.0).abs() < 1e-10);
        }
        // the sampled lower alone already reaches 1 through x = e
        let lower = eta_lower_sampled(&id, &cfg());
        for v in lower.entries() {
            assert!((v - 1.0).abs() < 1e-9);
        }
        // crude bound on the identity is sqrt(n), a valid loose member of Q
        let dense_id =
            LinearOperator::from_matrix(alg.clone(), crate::linalg::Mat::identity(alg.dim()))
                .unwrap();
        let crude = eta_upper_crude(&dense_id);
        assert!((crude.get(0) - 3.0f64.sqrt()).abs() < 1e-6);
    }

    #[test]
    fn quad_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a = random_element(&herm3(), &mut rng);
        let pa = LinearOperator::quad(&a);
        let est = eta_estimate(&pa, &cfg());
        assert!(est.exact);
        let expect = a.square().eigenvalues();
        for (u, e) in est.upper.entries().iter().zip(&expect) {
            assert!((u - e).abs() < 1e-9);
        }
    }

    #[test]
    fn ds_envelope_is_ones() {
        let alg = herm3();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let ds = fixtures::random_ds_map(&alg, 2, &mut rng);
        let est = eta_estimate(&ds, &cfg());
        assert!(est.exact);
        for v in est.upper.entries() {
            assert!((v - 1.0).abs() < 1e-9);
        }
        assert!(check_inequality(&ds, &DecVector::ones(3), &cfg()).passed());
    }

    #[test]
    fn congruence_envelope() {
        let alg = herm3();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let m = fixtures::random_complex_matrix(3, &mut rng);
        let t = LinearOperator::congruence(&alg, &m).unwrap();
        let est = eta_estimate(&t, &cfg());
        assert!(est.exact);
        let expect = nonneg_spectrum(crate::operators::singular_values_squared(&m));
        for (u, e) in est.upper.entries().iter().zip(&expect) {
            assert!((u - e).abs() < 1e-8);
        }
    }

    #[test]
    fn power_pair_envelope() {
        let alg = herm3();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = random_positive_element(&alg, 0.3, 2.5, &mut rng);
        for t in [0.0, 0.25, 0.5, 1.0] {
            let op = fixtures::power_pair_map(&a, t).unwrap();
            let est = eta_estimate(&op, &cfg());
            assert!(est.exact, "power pair t={t} must be exact");
            let expect = a.eigenvalues();
            for (u, e) in est.upper.entries().iter().zip(&expect) {
                assert!((u - e).abs() < 1e-8, "t={t}: {u} vs {e}");
            }
        }
        // a generic non-commuting pair has no structured value
        let b = random_positive_element(&alg, 0.3, 2.5, &mut rng);
        let op = LinearOperator::quad_pair(&a, &b).unwrap();
        assert!(quad_pair_power_value(&a, &b).is_none());
        let est = eta_estimate(&op, &cfg());
        assert!(weak_majorizes(est.lower.entries(), est.upper.entries(), 1e-9).unwrap());
    }

    #[test]
    fn bracket_sound_on_dense_maps() {
        let alg = herm3();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..25 {
            let t = fixtures::random_dense_operator(&alg, &mut rng);
            let est = eta_estimate(&t, &cfg());
            assert!(weak_majorizes(est.lower.entries(), est.upper.entries(), 1e-8).unwrap());
            assert!(check_inequality(&t, &est.upper, &cfg()).passed());
        }
    }

    #[test]
    fn scaling_equality_under_fixed_seed() {
        let alg = herm3();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let t = fixtures::random_dense_operator(&alg, &mut rng);
        let alpha = -2.5;
        let e1 = eta_estimate(&t.scale(alpha), &cfg());
        let e0 = eta_estimate(&t, &cfg());
        for (a, b) in e1.lower.entries().iter().zip(e0.lower.entries()) {
            assert!((a - alpha.abs() * b).abs() < 1e-10);
        }
    }

    #[test]
    fn check_detects_undersized_q() {
        let alg = herm3();
        let id = LinearOperator::identity(&alg);
        let q = DecVector::constant(3, 0.5).unwrap();
        match check_inequality(&id, &q, &cfg()) {
            CheckOutcome::Witness { lhs, rhs, .. } => assert!(lhs > rhs),
            CheckOutcome::Pass { .. } => panic!("0.5 * 1 must fail for the identity"),
        }
    }

    #[test]
    fn majorization_check_ds() {
        let alg = herm3();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let ds = fixtures::random_ds_map(&alg, 3, &mut rng);
        assert!(check_majorization_pointwise(&ds, &[1.0, 1.0, 1.0], &cfg()).unwrap().passed());
        // scalar multiple: q = t 1 with t = -2
        let t = ds.scale(-2.0);
        assert!(check_majorization_pointwise(&t, &[-2.0, -2.0, -2.0], &cfg())
            .unwrap()
            .passed());
        // q must be decreasing
        assert!(check_majorization_pointwise(&ds, &[0.0, 1.0, 1.0], &cfg()).is_err());
    }

    #[test]
    fn quad_with_nonscalar_square_has_majorization_witness() {
        let alg = herm3();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let a = random_positive_element(&alg, 0.2, 3.0, &mut rng);
        let pa = LinearOperator::quad(&a);
        let q = pa.unit_image().eigenvalues();
        let outcome = check_majorization_pointwise(&pa, &q, &cfg()).unwrap();
        assert!(!outcome.passed(), "non-scalar P_a admits no pointwise majorization bound");
    }

    #[test]
    fn sublinear_checks() {
        let alg = herm3();
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let a = random_element(&alg, &mut rng);
        let pa = LinearOperator::quad(&a);
        let abs = SublinearFn::new(f64::abs).unwrap();
        let plus = SublinearFn::new(|t: f64| t.max(0.0)).unwrap();
        let minus = SublinearFn::new(|t: f64| (-t).max(0.0)).unwrap();
        assert!(sublinear_check(&pa, &abs, &cfg()).unwrap().passed());
        assert!(sublinear_check(&pa, &plus, &cfg()).unwrap().passed());
        let mut rng2 = ChaCha8Rng::seed_from_u64(11);
        let ds = fixtures::random_ds_map(&alg, 2, &mut rng2);
        assert!(sublinear_check(&ds, &minus, &cfg()).unwrap().passed());
        // invalid phi rejected
        assert!(SublinearFn::new(|t: f64| t).is_err()); // negative values
        assert!(SublinearFn::new(|t: f64| t * t).is_err()); // not homogeneous
        assert!(SublinearFn::new(|t: f64| t.abs() + 1.0).is_err()); // phi(0) != 0
        // non-positive map refused
        let la = LinearOperator::lyapunov(&a);
        assert!(matches!(
            sublinear_check(&la, &abs, &cfg()),
            Err(Error::PositivityNotCertified)
        ));
    }

    #[test]
    fn envelope_is_adjoint_invariant() {
        // T and T* admit exactly the same pointwise inequality, so the
        // brackets must coincide.
        let alg = herm3();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..10 {
            let t = fixtures::random_dense_operator(&alg, &mut rng);
            let et = eta_estimate(&t, &cfg());
            let eadj = eta_estimate(&t.adjoint(), &cfg());
            assert!(et.lower.max_abs_diff(&eadj.lower) < 1e-10);
            assert!(et.upper.max_abs_diff(&eadj.upper) < 1e-9);
        }
    }

    #[test]
    fn exact_positive_refuses_uncertified() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let a = random_element(&herm3(), &mut rng);
        assert!(matches!(
            eta_exact_positive(&LinearOperator::lyapunov(&a)),
            Err(Error::PositivityNotCertified)
        ));
    }

    #[test]
    fn product_algebra_bracket() {
        let alg = Algebra::Product {
            factors: vec![Algebra::RealSymmetric { m: 2 }, Algebra::Spin { dim: 3 }],
        };
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        // exact envelope for a quadratic representation on the product
        let a = random_element(&alg, &mut rng);
        let est = eta_estimate(&LinearOperator::quad(&a), &cfg());
        assert!(est.exact);
        let expect = a.square().eigenvalues();
        for (u, e) in est.upper.entries().iter().zip(&expect) {
            assert!((u - e).abs() < 1e-9);
        }
        // sound bracket for a dense map
        let t = fixtures::random_dense_operator(&alg, &mut rng);
        let est = eta_estimate(&t, &cfg());
        assert!(weak_majorizes(est.lower.entries(), est.upper.entries(), 1e-8).unwrap());
        assert!(check_inequality(&t, &est.upper, &cfg()).passed());
    }

    #[test]
    fn inverse_lyapunov_matrix_closed_form() {
        // L_M(X) = MX + XM* with positive-stable M: the inverse is positive
        // and its envelope is the join of the spectra of L⁻¹(I) and (L*)⁻¹(I).
        use num_complex::Complex64;
        let alg = Algebra::ComplexHermitian { m: 2 };
        let mut m = crate::linalg::CMat::zeros(2, 2);
        m.set(0, 0, Complex64::new(1.5, 0.0));
        m.set(0, 1, Complex64::new(0.4, 0.7));
        m.set(1, 1, Complex64::new(2.0, 0.0));
        let lm = LinearOperator::lyapunov_matrix(&alg, &m).unwrap();
        let inv = lm.invert().unwrap();
        let est = eta_estimate(&inv, &cfg());
        assert!(est.exact, "solve-and-check certificate applies: {}", est.method);
        let c = inv.unit_image().eigenvalues();
        let d = inv.adjoint_unit_image().eigenvalues();
        let expect = w_sup(&[c, d]).unwrap();
        assert!(est.upper.max_abs_diff(&expect) < 1e-10);
    }

    #[test]
    fn hermitian_lyapunov_matrix_bound_is_exact() {
        use num_complex::Complex64;
        let alg = Algebra::ComplexHermitian { m: 2 };
        let mut m = crate::linalg::CMat::zeros(2, 2);
        m.set(0, 0, Complex64::new(1.0, 0.0));
        m.set(0, 1, Complex64::new(0.3, 0.6));
        m.set(1, 0, Complex64::new(0.3, -0.6));
        m.set(1, 1, Complex64::new(-0.8, 0.0));
        let lm = LinearOperator::lyapunov_matrix(&alg, &m).unwrap();
        let est = eta_estimate(&lm, &cfg());
        assert!(est.exact);
        let elem = Element::from_herm_matrix(&m).unwrap();
        let expect: Vec<f64> = elem.abs_eigenvalues().iter().map(|v| 2.0 * v).collect();
        for (u, e) in est.upper.entries().iter().zip(&expect) {
            assert!((u - e).abs() < 1e-10);
        }
        // and the sampled lower agrees (L_M = L_{2m} as a Jordan map)
        let lower = eta_lower_sampled(&lm, &cfg());
        for (l, e) in lower.entries().iter().zip(&expect) {
            assert!((l - e).abs() < 1e-8);
        }
    }

    #[test]
    fn sign_element_samples_respect_envelope() {
        // lambda(|x ∘ eps|) ≺_w lambda(|x|) * lambda(|eps|)
        let alg = herm3();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..200 {
            let x = random_element(&alg, &mut rng);
            let eps = random_sign_element(&alg, &mut rng);
            let lhs = x.jordan_mul(&eps).unwrap().abs_eigenvalues();
            let rhs = x.abs_eigenvalues(); // lambda(|eps|) = 1
            assert!(weak_majorizes(&lhs, &rhs, 1e-9).unwrap());
        }
    }
}
