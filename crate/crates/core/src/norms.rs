//! Spectral r-norms of elements and (r -> s) operator-norm bounds derived
//! from the weak-majorization envelope.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::algebra::Element;
use crate::error::{Error, Result};
use crate::eta::{self, CheckOutcome, SampleConfig};
use crate::majorization::{hadamard, weak_majorizes, DecVector};
use crate::operators::LinearOperator;

/// Norm order in `[1, ∞]`; infinity is a distinguished value, not a large
/// float.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NormOrder {
    Finite(f64),
    Infinity,
}

impl NormOrder {
    pub fn new(r: f64) -> Result<Self> {
        if r.is_infinite() && r > 0.0 {
            return Ok(NormOrder::Infinity);
        }
        if !r.is_finite() || r < 1.0 {
            return Err(Error::InvalidNormOrder { r });
        }
        Ok(NormOrder::Finite(r))
    }

    pub const INF: NormOrder = NormOrder::Infinity;

    /// `1/r`, with `1/∞ = 0`.
    pub fn reciprocal(self) -> f64 {
        match self {
            NormOrder::Finite(r) => 1.0 / r,
            NormOrder::Infinity => 0.0,
        }
    }

    pub fn leq(self, other: NormOrder) -> bool {
        match (self, other) {
            (_, NormOrder::Infinity) => true,
            (NormOrder::Infinity, NormOrder::Finite(_)) => false,
            (NormOrder::Finite(a), NormOrder::Finite(b)) => a <= b,
        }
    }
}

impl std::fmt::Display for NormOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NormOrder::Finite(r) => write!(f, "{r}"),
            NormOrder::Infinity => write!(f, "inf"),
        }
    }
}

/// `||v||_r` on plain vectors.
pub fn vector_norm(v: &[f64], r: NormOrder) -> f64 {
    match r {
        NormOrder::Infinity => v.iter().fold(0.0f64, |m, x| m.max(x.abs())),
        NormOrder::Finite(1.0) => v.iter().map(|x| x.abs()).sum(),
        NormOrder::Finite(2.0) => v.iter().map(|x| x * x).sum::<f64>().sqrt(),
        NormOrder::Finite(r) => v.iter().map(|x| x.abs().powf(r)).sum::<f64>().powf(1.0 / r),
    }
}

/// Spectral norm `||x||_r = ||lambda(x)||_r`; the infinity case is
/// `lambda_1(|x|)`.
pub fn spectral_norm(x: &Element, r: NormOrder) -> f64 {
    vector_norm(&x.eigenvalues(), r)
}

/// Sampled lower bound on `||T||_{r -> s}`: the best ratio over the probe
/// family followed by a randomized coordinate hill climb (50 steps,
/// multiplicative step decay 0.9, accept-if-improves).
pub fn op_norm_lower(
    op: &LinearOperator,
    r: NormOrder,
    s: NormOrder,
    config: &SampleConfig,
) -> f64 {
    let ratio = |x: &Element| -> Option<f64> {
        let xr = spectral_norm(x, r);
        if xr < 1e-12 {
            return None;
        }
        Some(spectral_norm(&op.apply(x).expect("same algebra"), s) / xr)
    };
    let mut best = 0.0f64;
    let mut best_x: Option<Element> = None;
    for x in eta::probe_points(op, config) {
        if let Some(v) = ratio(&x) {
            if v > best {
                best = v;
                best_x = Some(x);
            }
        }
    }
    if let Some(x0) = best_x {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        rng.set_stream(0x411);
        let dim = op.algebra().dim();
        let mut x = x0.coords().to_vec();
        let mut step = 0.5 * x.iter().map(|v| v * v).sum::<f64>().sqrt().max(1e-6);
        for _ in 0..50 {
            let j = rng.gen_range(0..dim);
            let bump: f64 = rng.sample(StandardNormal);
            let mut cand = x.clone();
            cand[j] += step * bump;
            let cand_el =
                Element::new(op.algebra().clone(), cand.clone()).expect("dims match");
            if let Some(v) = ratio(&cand_el) {
                if v > best {
                    best = v;
                    x = cand;
                }
            }
            step *= 0.9;
        }
    }
    best
}

/// Upper bound on `||T||_{r -> s}` from an envelope upper bound `q`:
/// `||q||_∞` when `r <= s`, `||q||_{rs/(r-s)}` when `s < r` (which becomes
/// `||q||_s` at `r = ∞`).
pub fn op_norm_upper_from_eta(eta_upper: &DecVector, r: NormOrder, s: NormOrder) -> f64 {
    if r.leq(s) {
        vector_norm(eta_upper.entries(), NormOrder::Infinity)
    } else {
        let order = match (r, s) {
            (NormOrder::Infinity, s) => s,
            (NormOrder::Finite(rf), NormOrder::Finite(sf)) => {
                NormOrder::Finite(rf * sf / (rf - sf))
            }
            (NormOrder::Finite(_), NormOrder::Infinity) => unreachable!("s < r excluded"),
        };
        vector_norm(eta_upper.entries(), order)
    }
}

/// Same bound computed from the operator itself (closed form or certified
/// upper bracket; never samples).
pub fn op_norm_upper(op: &LinearOperator, r: NormOrder, s: NormOrder) -> f64 {
    op_norm_upper_from_eta(&upper_envelope(op), r, s)
}

/// Cheapest available certified upper bound on the envelope.
pub(crate) fn upper_envelope(op: &LinearOperator) -> DecVector {
    if let Some(sb) = eta::eta_upper_structured(op) {
        if sb.exact {
            return sb.value;
        }
        let crude = eta::eta_upper_crude(op);
        return crate::majorization::w_inf(&[sb.value.entries(), crude.entries()])
            .expect("nonnegative uppers");
    }
    eta::eta_upper_crude(op)
}

/// Validates `1/p = 1/r + 1/s` to 1e-12.
pub fn holder_exponents_valid(p: NormOrder, r: NormOrder, s: NormOrder) -> bool {
    (p.reciprocal() - r.reciprocal() - s.reciprocal()).abs() <= 1e-12
}

/// Verifies `||T(x)||_p <= ||eta_upper||_r ||x||_s` over the probe family.
pub fn holder_bound_check(
    op: &LinearOperator,
    p: NormOrder,
    r: NormOrder,
    s: NormOrder,
    config: &SampleConfig,
) -> Result<CheckOutcome> {
    if !holder_exponents_valid(p, r, s) {
        return Err(Error::ExponentMismatch);
    }
    let eta_r = vector_norm(upper_envelope(op).entries(), r);
    let points = eta::probe_points(op, config);
    let total = points.len();
    for x in points {
        let lhs = spectral_norm(&op.apply(&x).expect("same algebra"), p);
        let rhs = eta_r * spectral_norm(&x, s);
        if lhs > rhs + config.tol * rhs.max(1.0) {
            return Ok(CheckOutcome::Witness { x, k: 0, lhs, rhs });
        }
    }
    Ok(CheckOutcome::Pass { samples: total })
}

/// One-sided Hölder-style consequence used by tests: the envelope's
/// pointwise inequality itself at a given `q`.
pub fn envelope_pointwise_holds(
    op: &LinearOperator,
    q: &DecVector,
    x: &Element,
    tol: f64,
) -> bool {
    let lhs = op.apply(x).expect("same algebra").abs_eigenvalues();
    let rhs = hadamard(q.entries(), &x.abs_eigenvalues()).expect("equal rank");
    weak_majorizes(&lhs, &rhs, tol).expect("equal rank")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{random_element, random_positive_element, Algebra};
    use crate::fixtures;

    fn herm3() -> Algebra {
        Algebra::ComplexHermitian { m: 3 }
    }

    fn cfg() -> SampleConfig {
        SampleConfig { n_frames: 10, signs_per_frame: 2, n_random_x: 60, ..Default::default() }
    }

    #[test]
    fn norm_order_validation() {
        assert!(NormOrder::new(1.0).is_ok());
        assert!(NormOrder::new(f64::INFINITY).is_ok());
        assert!(NormOrder::new(0.5).is_err());
        assert!(NormOrder::new(f64::NAN).is_err());
    }

    #[test]
    fn spectral_norm_basics() {
        let alg = herm3();
        let e = Element::unit(&alg);
        assert!((spectral_norm(&e, NormOrder::Finite(2.0)) - 3.0f64.sqrt()).abs() < 1e-12);
        assert!((spectral_norm(&e, NormOrder::Finite(1.0)) - 3.0).abs() < 1e-12);
        assert!((spectral_norm(&e, NormOrder::INF) - 1.0).abs() < 1e-12);
        // ||x||_2^2 = <x, x>
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let x = random_element(&alg, &mut rng);
        let n2 = spectral_norm(&x, NormOrder::Finite(2.0));
        assert!((n2 * n2 - x.inner(&x).unwrap()).abs() < 1e-9);
        // ||diag(3, -4)||_1 = 7
        let d = Element::from_sym_matrix(
            &crate::linalg::Mat::from_rows(&[vec![3.0, 0.0], vec![0.0, -4.0]]).unwrap(),
        )
        .unwrap();
        assert!((spectral_norm(&d, NormOrder::Finite(1.0)) - 7.0).abs() < 1e-12);
    }

    #[test]
    fn norms_nest_in_r() {
        let alg = herm3();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..50 {
            let x = random_element(&alg, &mut rng);
            let orders =
                [NormOrder::Finite(1.0), NormOrder::Finite(2.0), NormOrder::Finite(4.0), NormOrder::INF];
            let mut prev = f64::INFINITY;
            for r in orders {
                let v = spectral_norm(&x, r);
                assert!(v <= prev + 1e-10, "norm must be nonincreasing in r");
                prev = v;
            }
        }
    }

    #[test]
    fn lower_bounds_simple_operators() {
        let alg = herm3();
        let id = LinearOperator::identity(&alg);
        for r in [NormOrder::Finite(1.0), NormOrder::Finite(2.0), NormOrder::INF] {
            let lo = op_norm_lower(&id, r, r, &cfg());
            assert!(lo >= 1.0 - 1e-9);
            assert!(lo <= 1.0 + 1e-9, "identity ratio cannot exceed 1");
        }
        let two = id.scale(2.0);
        assert!(op_norm_lower(&two, NormOrder::INF, NormOrder::INF, &cfg()) >= 2.0 - 1e-9);
    }

    #[test]
    fn quad_infinity_norm_attained_at_unit() {
        let alg = herm3();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_element(&alg, &mut rng);
        let pa = LinearOperator::quad(&a);
        let lo = op_norm_lower(&pa, NormOrder::INF, NormOrder::INF, &cfg());
        let expect = spectral_norm(&a.square(), NormOrder::INF);
        assert!(lo >= expect - 1e-8, "x = e attains ||a^2||_inf");
        let up = op_norm_upper(&pa, NormOrder::INF, NormOrder::INF);
        assert!(lo <= up + 1e-8);
    }

    #[test]
    fn upper_formula_cases() {
        let q = DecVector::new(vec![2.0, 1.0, 0.5]).unwrap();
        // r <= s: sup norm
        assert!((op_norm_upper_from_eta(&q, NormOrder::Finite(1.0), NormOrder::INF) - 2.0).abs() < 1e-12);
        assert!((op_norm_upper_from_eta(&q, NormOrder::Finite(2.0), NormOrder::Finite(2.0)) - 2.0).abs() < 1e-12);
        // s < r: rs/(r-s); r = inf gives order s
        let v = op_norm_upper_from_eta(&q, NormOrder::INF, NormOrder::Finite(2.0));
        let expect = (4.0f64 + 1.0 + 0.25).sqrt();
        assert!((v - expect).abs() < 1e-12);
        // finite pair: r=4, s=2 -> order 4
        let v = op_norm_upper_from_eta(&q, NormOrder::Finite(4.0), NormOrder::Finite(2.0));
        let expect = (2.0f64.powi(4) + 1.0 + 0.5f64.powi(4)).powf(0.25);
        assert!((v - expect).abs() < 1e-12);
    }

    #[test]
    fn holder_checks() {
        let alg = herm3();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let a = random_positive_element(&alg, 0.3, 2.0, &mut rng);
        let pa = LinearOperator::quad(&a);
        // (p, r, s) = (1, 2, 2)
        let out = holder_bound_check(
            &pa,
            NormOrder::Finite(1.0),
            NormOrder::Finite(2.0),
            NormOrder::Finite(2.0),
            &cfg(),
        )
        .unwrap();
        assert!(out.passed());
        // (2, inf, 2)
        let out = holder_bound_check(
            &pa,
            NormOrder::Finite(2.0),
            NormOrder::INF,
            NormOrder::Finite(2.0),
            &cfg(),
        )
        .unwrap();
        assert!(out.passed());
        // zero map passes everything
        let zero = LinearOperator::zero(&alg);
        let out = holder_bound_check(
            &zero,
            NormOrder::Finite(1.0),
            NormOrder::Finite(2.0),
            NormOrder::Finite(2.0),
            &cfg(),
        )
        .unwrap();
        assert!(out.passed());
        // exponent mismatch rejected
        assert!(matches!(
            holder_bound_check(
                &zero,
                NormOrder::Finite(1.0),
                NormOrder::Finite(3.0),
                NormOrder::Finite(2.0),
                &cfg()
            ),
            Err(Error::ExponentMismatch)
        ));
    }

    #[test]
    fn lower_below_upper_on_positive_maps() {
        let alg = herm3();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let t = fixtures::random_positive_map(&alg, &mut rng);
            for (r, s) in [
                (NormOrder::Finite(1.0), NormOrder::Finite(1.0)),
                (NormOrder::Finite(2.0), NormOrder::Finite(2.0)),
                (NormOrder::INF, NormOrder::INF),
                (NormOrder::INF, NormOrder::Finite(2.0)),
                (NormOrder::Finite(1.0), NormOrder::INF),
            ] {
                let lo = op_norm_lower(&t, r, s, &cfg());
                let up = op_norm_upper(&t, r, s);
                assert!(lo <= up + 1e-8 * up.max(1.0), "({r}, {s}): {lo} > {up}");
            }
        }
    }
}
