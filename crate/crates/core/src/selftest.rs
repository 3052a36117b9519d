//! Property suites over random instances: the eigenvalue inequalities the
//! whole library rests on, plus bracket soundness and envelope-map laws.
//! Each suite reports its instance count and any violations; the CLI
//! `selftest` subcommand and the acceptance tests both drive these.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{
    random_cone_element, random_element, random_idempotent, random_jordan_frame,
    random_sign_element, Algebra, Element,
};
use crate::eta::{self, SampleConfig};
use crate::fixtures;
use crate::majorization::{
    decreasing_rearrangement, hadamard, majorizes, weak_majorizes,
};
use crate::norms::{op_norm_lower, spectral_norm, NormOrder};
use crate::operators::LinearOperator;

#[derive(Debug, Clone)]
pub struct SelfTestResult {
    pub name: &'static str,
    pub passed: bool,
    pub instances: usize,
    pub violations: usize,
    pub detail: String,
}

impl SelfTestResult {
    fn from_violations(name: &'static str, instances: usize, violations: usize) -> Self {
        SelfTestResult {
            name,
            passed: violations == 0,
            instances,
            violations,
            detail: if violations == 0 {
                format!("{instances} instances, no violations")
            } else {
                format!("{violations} violations out of {instances} instances")
            },
        }
    }
}

fn test_kinds() -> Vec<Algebra> {
    vec![
        Algebra::RealSymmetric { m: 3 },
        Algebra::ComplexHermitian { m: 3 },
        Algebra::Spin { dim: 5 },
    ]
}

fn per_kind(count: usize) -> usize {
    count.div_ceil(3)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `<x, y> <= <lambda(x), lambda(y)>`.
pub fn suite_ftvn(count: usize, seed: u64) -> SelfTestResult {
    let mut violations = 0;
    let mut total = 0;
    for alg in test_kinds() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xf7);
        for _ in 0..per_kind(count) {
            let x = random_element(&alg, &mut rng);
            let y = random_element(&alg, &mut rng);
            let lhs = x.inner(&y).expect("same algebra");
            let rhs = dot(&x.eigenvalues(), &y.eigenvalues());
            let scale = 1.0 + lhs.abs().max(rhs.abs());
            total += 1;
            if lhs > rhs + 1e-9 * scale {
                violations += 1;
            }
        }
    }
    SelfTestResult::from_violations("ftvn-inequality", total, violations)
}

/// `<x, y> <= <lambda(|x|), lambda(|y|)>`.
pub fn suite_abs_ftvn(count: usize, seed: u64) -> SelfTestResult {
    let mut violations = 0;
    let mut total = 0;
    for alg in test_kinds() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xab5);
        for _ in 0..per_kind(count) {
            let x = random_element(&alg, &mut rng);
            let y = random_element(&alg, &mut rng);
            let lhs = x.inner(&y).expect("same algebra");
            let rhs = dot(&x.abs_eigenvalues(), &y.abs_eigenvalues());
            let scale = 1.0 + lhs.abs().max(rhs.abs());
            total += 1;
            if lhs > rhs + 1e-9 * scale {
                violations += 1;
            }
        }
    }
    SelfTestResult::from_violations("abs-ftvn-inequality", total, violations)
}

/// Testable direction of the variational principle: `<x, c> <= S_k(lambda(x))`
/// for rank-k idempotents, with equality attained on x's own top-k frame.
pub fn suite_variational_principle(count: usize, seed: u64) -> SelfTestResult {
    let mut violations = 0;
    let mut total = 0;
    for alg in test_kinds() {
        let n = alg.rank();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7a);
        for _ in 0..per_kind(count) {
            let x = random_element(&alg, &mut rng);
            let k = rng.gen_range(1..=n);
            let c = random_idempotent(&alg, k, &mut rng).expect("valid rank");
            let dec = x.spectral();
            let sk: f64 = dec.eigenvalues()[..k].iter().sum();
            let lhs = x.inner(&c).expect("same algebra");
            let scale = 1.0 + sk.abs();
            total += 1;
            if lhs > sk + 1e-9 * scale {
                violations += 1;
                continue;
            }
            // equality at the idempotent built from x's own top-k frame
            let own = dec.frame().rank_idempotent(k).expect("valid rank");
            let attained = x.inner(&own).expect("same algebra");
            if (attained - sk).abs() > 1e-8 * scale {
                violations += 1;
            }
        }
    }
    SelfTestResult::from_violations("variational-principle", total, violations)
}

/// `lambda(|x ∘ eps|) ≺_w lambda(|x|) * lambda(|eps|)` for sign elements.
pub fn suite_sign_product(count: usize, seed: u64) -> SelfTestResult {
    let mut violations = 0;
    let mut total = 0;
    for alg in test_kinds() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x51);
        for _ in 0..per_kind(count) {
            let x = random_element(&alg, &mut rng);
            let eps = random_sign_element(&alg, &mut rng);
            let lhs = x.jordan_mul(&eps).expect("same algebra").abs_eigenvalues();
            let rhs = x.abs_eigenvalues();
            total += 1;
            if !weak_majorizes(&lhs, &rhs, 1e-9).expect("equal rank") {
                violations += 1;
            }
        }
    }
    SelfTestResult::from_violations("sign-product-weak-majorization", total, violations)
}

/// Vector inequality `<p, q> <= <|p|, |q|> <= <|p|↓, |q|↓>`.
pub fn suite_rearrangement(count: usize, seed: u64) -> SelfTestResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xea);
    let mut violations = 0;
    for _ in 0..count {
        let n = rng.gen_range(2..=6);
        let p: Vec<f64> = (0..n).map(|_| rng.gen_range(-5.0..5.0)).collect();
        let q: Vec<f64> = (0..n).map(|_| rng.gen_range(-5.0..5.0)).collect();
        let pa: Vec<f64> = p.iter().map(|v| v.abs()).collect();
        let qa: Vec<f64> = q.iter().map(|v| v.abs()).collect();
        let a = dot(&p, &q);
        let b = dot(&pa, &qa);
        let c = dot(&decreasing_rearrangement(&pa), &decreasing_rearrangement(&qa));
        if a > b + 1e-9 || b > c + 1e-9 {
            violations += 1;
        }
    }
    SelfTestResult::from_violations("rearrangement-inequality", count, violations)
}

/// `r >= 0`, `p ≺_w q` imply `r↓ * p↓ ≺_w r↓ * q↓` and `<r↓, p↓> <= <r↓, q↓>`.
pub fn suite_hadamard_monotone(count: usize, seed: u64) -> SelfTestResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6ad);
    let mut violations = 0;
    for _ in 0..count {
        let n = rng.gen_range(2..=6);
        let q: Vec<f64> =
            decreasing_rearrangement(&(0..n).map(|_| rng.gen_range(0.0..4.0)).collect::<Vec<_>>());
        let p: Vec<f64> = decreasing_rearrangement(
            &q.iter().map(|v| v * rng.gen_range(0.0..1.0)).collect::<Vec<_>>(),
        );
        let r: Vec<f64> =
            decreasing_rearrangement(&(0..n).map(|_| rng.gen_range(0.0..3.0)).collect::<Vec<_>>());
        let rp = hadamard(&r, &p).expect("equal length");
        let rq = hadamard(&r, &q).expect("equal length");
        let ok = weak_majorizes(&rp, &rq, 1e-9).expect("equal length")
            && dot(&r, &p) <= dot(&r, &q) + 1e-9;
        if !ok {
            violations += 1;
        }
    }
    SelfTestResult::from_violations("hadamard-monotonicity", count, violations)
}

/// Lidskii-type inequality `lambda(x + y) ≺ lambda(x) + lambda(y)`.
pub fn suite_lidskii(count: usize, seed: u64) -> SelfTestResult {
    let mut violations = 0;
    let mut total = 0;
    for alg in test_kinds() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x11d);
        for _ in 0..per_kind(count) {
            let x = random_element(&alg, &mut rng);
            let y = random_element(&alg, &mut rng);
            let lhs = (&x + &y).eigenvalues();
            let rhs: Vec<f64> =
                x.eigenvalues().iter().zip(y.eigenvalues()).map(|(a, b)| a + b).collect();
            total += 1;
            if !majorizes(&lhs, &rhs, 1e-9).expect("equal rank") {
                violations += 1;
            }
        }
    }
    SelfTestResult::from_violations("lidskii-majorization", total, violations)
}

/// Order consequence: `x <= y` implies `lambda(x) <= lambda(y)` componentwise.
pub fn suite_hirzebruch(count: usize, seed: u64) -> SelfTestResult {
    let mut violations = 0;
    let mut total = 0;
    for alg in test_kinds() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x41);
        for _ in 0..per_kind(count) {
            let x = random_element(&alg, &mut rng);
            let y = &x + &random_cone_element(&alg, &mut rng);
            let lx = x.eigenvalues();
            let ly = y.eigenvalues();
            total += 1;
            if lx.iter().zip(&ly).any(|(a, b)| *a > b + 1e-9) {
                violations += 1;
            }
        }
    }
    SelfTestResult::from_violations("order-monotone-eigenvalues", total, violations)
}

/// Non-scalar elements fail strong operator commutation with some probe:
/// there is `y` with `<x, y> < <lambda(x), lambda(y)> - 1e-9`.
pub fn suite_strong_commutation_probe(count: usize, seed: u64) -> SelfTestResult {
    let mut violations = 0;
    let mut total = 0;
    for alg in test_kinds() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5c);
        for _ in 0..per_kind(count) {
            let x = random_element(&alg, &mut rng);
            let vals = x.eigenvalues();
            let spread = vals[0] - vals[vals.len() - 1];
            if spread < 1e-3 {
                continue;
            }
            total += 1;
            // y = -x gives gap sum(l_i^2) - sum(l_i l_rev_i) > 0 for
            // non-scalar x; a rotated copy is probed as well.
            let mut found = false;
            let mut probes = vec![-&x];
            let frame = random_jordan_frame(&alg, &mut rng);
            probes.push(-&frame.combine(&vals).expect("lengths match"));
            for y in probes {
                let lhs = x.inner(&y).expect("same algebra");
                let rhs = dot(&x.eigenvalues(), &y.eigenvalues());
                if lhs < rhs - 1e-9 {
                    found = true;
                    break;
                }
            }
            if !found {
                violations += 1;
            }
        }
    }
    SelfTestResult::from_violations("strong-commutation-probe", total, violations)
}

/// Bracket soundness on random dense operators.
pub fn suite_bracket_soundness(count: usize, seed: u64) -> SelfTestResult {
    let cfg = SampleConfig {
        n_frames: 12,
        signs_per_frame: 3,
        n_random_x: 60,
        seed,
        ..Default::default()
    };
    let mut violations = 0;
    let mut total = 0;
    for alg in test_kinds() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xb4);
        for _ in 0..per_kind(count) {
            let t = fixtures::random_dense_operator(&alg, &mut rng);
            let est = eta::eta_estimate(&t, &cfg);
            total += 1;
            let sound =
                weak_majorizes(est.lower.entries(), est.upper.entries(), 1e-8).expect("rank")
                    && eta::check_inequality(&t, &est.upper, &cfg).passed();
            if !sound {
                violations += 1;
            }
        }
    }
    SelfTestResult::from_violations("eta-bracket-soundness", total, violations)
}

/// Envelope laws: absolute homogeneity under fixed seed, subadditivity and
/// submultiplicativity probes through the brackets.
pub fn suite_envelope_laws(count: usize, seed: u64) -> SelfTestResult {
    let cfg = SampleConfig {
        n_frames: 10,
        signs_per_frame: 3,
        n_random_x: 40,
        seed,
        ..Default::default()
    };
    let mut violations = 0;
    let mut total = 0;
    for alg in test_kinds() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xe0);
        for _ in 0..per_kind(count) {
            let t1 = fixtures::random_dense_operator(&alg, &mut rng);
            let t2 = fixtures::random_dense_operator(&alg, &mut rng);
            let alpha: f64 = rng.gen_range(-3.0..3.0);
            total += 1;
            let est1 = eta::eta_estimate(&t1, &cfg);
            let est2 = eta::eta_estimate(&t2, &cfg);
            // homogeneity at matched seeds
            let est_scaled = eta::eta_estimate(&t1.scale(alpha), &cfg);
            let homo = est_scaled
                .lower
                .entries()
                .iter()
                .zip(est1.lower.entries())
                .all(|(a, b)| (a - alpha.abs() * b).abs() <= 1e-10 * (1.0 + b.abs()));
            // subadditivity probe
            let sum = t1.add(&t2).expect("same algebra");
            let est_sum = eta::eta_estimate(&sum, &cfg);
            let sub = weak_majorizes(
                est_sum.lower.entries(),
                &est1
                    .upper
                    .entries()
                    .iter()
                    .zip(est2.upper.entries())
                    .map(|(a, b)| a + b)
                    .collect::<Vec<_>>(),
                1e-8,
            )
            .expect("rank");
            // submultiplicativity probe
            let prod = t1.compose(&t2).expect("same algebra");
            let est_prod = eta::eta_estimate(&prod, &cfg);
            let mul = weak_majorizes(
                est_prod.lower.entries(),
                &hadamard(est1.upper.entries(), est2.upper.entries()).expect("rank"),
                1e-8,
            )
            .expect("rank");
            if !(homo && sub && mul) {
                violations += 1;
            }
        }
    }
    SelfTestResult::from_violations("envelope-laws", total, violations)
}

/// Doubly stochastic maps majorize; substochastic ones weakly majorize on
/// the cone.
pub fn suite_stochastic_maps(count: usize, seed: u64) -> SelfTestResult {
    let mut violations = 0;
    let mut total = 0;
    for alg in test_kinds() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xd5);
        let ds = fixtures::random_ds_map(&alg, 3, &mut rng);
        let dss = ds.scale(rng.gen_range(0.2..0.95));
        for _ in 0..per_kind(count) {
            let x = random_element(&alg, &mut rng);
            total += 1;
            let lx = x.eigenvalues();
            let ltx = ds.apply(&x).expect("same algebra").eigenvalues();
            if !majorizes(&ltx, &lx, 1e-8).expect("rank") {
                violations += 1;
                continue;
            }
            let c = random_cone_element(&alg, &mut rng);
            let lc = c.eigenvalues();
            let ltc = dss.apply(&c).expect("same algebra").eigenvalues();
            if !weak_majorizes(&ltc, &lc, 1e-8).expect("rank") {
                violations += 1;
            }
        }
    }
    SelfTestResult::from_violations("stochastic-map-majorization", total, violations)
}

/// For positive maps, the restricted (cone-only) and unrestricted pointwise
/// checks agree in outcome: both pass at the envelope, both produce a
/// witness below it.
pub fn suite_cone_restriction_equivalence(count: usize, seed: u64) -> SelfTestResult {
    let cfg = SampleConfig {
        n_frames: 8,
        signs_per_frame: 2,
        n_random_x: 50,
        seed,
        ..Default::default()
    };
    let mut violations = 0;
    let mut total = 0;
    for alg in test_kinds() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xc0e);
        for _ in 0..per_kind(count).min(60) {
            let t = fixtures::random_positive_map(&alg, &mut rng);
            let est = eta::eta_exact_positive(&t).expect("fixture is certified");
            total += 1;
            // at the envelope both checks pass
            let unrestricted = eta::check_inequality(&t, &est.upper, &cfg).passed();
            let restricted = cone_restricted_check(&t, est.upper.entries(), &cfg, &mut rng);
            if !(unrestricted && restricted) {
                violations += 1;
                continue;
            }
            // 10% below the envelope both find a witness
            let reduced: Vec<f64> = est.upper.entries().iter().map(|v| 0.9 * v).collect();
            if let Ok(q) = crate::majorization::DecVector::new(reduced.clone()) {
                if est.upper.get(0) < 1e-6 {
                    continue;
                }
                let unrestricted = eta::check_inequality(&t, &q, &cfg).passed();
                let restricted = cone_restricted_check(&t, &reduced, &cfg, &mut rng);
                if unrestricted != restricted {
                    violations += 1;
                }
            }
        }
    }
    SelfTestResult::from_violations("cone-restriction-equivalence", total, violations)
}

fn cone_restricted_check(
    t: &LinearOperator,
    q: &[f64],
    cfg: &SampleConfig,
    rng: &mut ChaCha8Rng,
) -> bool {
    let alg = t.algebra().clone();
    let mut points = vec![Element::unit(&alg)];
    points.extend(t.unit_image().spectral().into_parts().1.idempotents().to_vec());
    for _ in 0..cfg.n_random_x {
        points.push(random_cone_element(&alg, rng));
    }
    points.iter().all(|x| {
        let lhs = t.apply(x).expect("same algebra").eigenvalues();
        let rhs = hadamard(q, &x.eigenvalues()).expect("rank");
        weak_majorizes(&lhs, &rhs, cfg.tol).expect("rank")
    })
}

/// Envelope continuity on perturbed doubly stochastic fixtures.
pub fn suite_continuity(count: usize, seed: u64) -> SelfTestResult {
    let mut violations = 0;
    let mut total = 0;
    for alg in test_kinds() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xc1);
        for _ in 0..per_kind(count).min(50) {
            let ds = fixtures::random_ds_map(&alg, 2, &mut rng);
            let bump = fixtures::random_positive_map(&alg, &mut rng);
            let norm = bump.coordinate_norm_2();
            let perturbed = ds
                .add(&bump.scale(1e-6 / norm.max(1e-12)))
                .expect("same algebra");
            let e0 = eta::eta_exact_positive(&ds).expect("certified");
            let e1 = eta::eta_exact_positive(&perturbed).expect("certified");
            total += 1;
            if e0.upper.max_abs_diff(&e1.upper) > 1e-4 {
                violations += 1;
            }
        }
    }
    SelfTestResult::from_violations("envelope-continuity", total, violations)
}

/// Sampled sup-norm ratios never exceed the envelope head; positive
/// self-adjoint maps attain it at the unit.
pub fn suite_norm_identity_direction(count: usize, seed: u64) -> SelfTestResult {
    let cfg = SampleConfig {
        n_frames: 8,
        signs_per_frame: 2,
        n_random_x: 50,
        seed,
        ..Default::default()
    };
    let mut violations = 0;
    let mut total = 0;
    for alg in test_kinds() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x0d);
        for _ in 0..per_kind(count).min(40) {
            let t = fixtures::random_positive_map(&alg, &mut rng);
            let est = eta::eta_exact_positive(&t).expect("certified");
            total += 1;
            let head = est.upper.get(0);
            let lo = op_norm_lower(&t, NormOrder::INF, NormOrder::INF, &cfg);
            let lo_adj = op_norm_lower(&t.adjoint(), NormOrder::INF, NormOrder::INF, &cfg);
            if lo > head + 1e-8 * head.max(1.0) || lo_adj > head + 1e-8 * head.max(1.0) {
                violations += 1;
                continue;
            }
            // attainment at e for self-adjoint positive maps with T(e) >= 0
            let sym = t
                .matrix()
                .add(&t.matrix().transpose().scale(-1.0))
                .max_abs()
                <= 1e-9 * t.matrix().max_abs().max(1.0);
            if sym {
                let at_e = spectral_norm(&t.unit_image(), NormOrder::INF);
                if (at_e - head).abs() > 1e-8 * head.max(1.0) {
                    violations += 1;
                }
            }
        }
    }
    SelfTestResult::from_violations("sup-norm-identity-direction", total, violations)
}

/// Pointwise majorization chain of the power-pair family and isotonicity of
/// the envelope along it.
pub fn suite_isotonic_chain(count: usize, seed: u64) -> SelfTestResult {
    let cfg = SampleConfig {
        n_frames: 8,
        signs_per_frame: 2,
        n_random_x: 40,
        seed,
        ..Default::default()
    };
    let mut violations = 0;
    let mut total = 0;
    for alg in test_kinds() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x150);
        for _ in 0..per_kind(count).min(40) {
            let a = crate::algebra::random_positive_element(&alg, 0.2, 3.0, &mut rng);
            let t: f64 = rng.gen_range(0.0..=1.0);
            let sqrt_a = a.lowner(f64::sqrt);
            let p_sqrt = LinearOperator::quad(&sqrt_a);
            let p_pair = fixtures::power_pair_map(&a, t).expect("a > 0");
            let l_a = LinearOperator::lyapunov(&a);
            total += 1;
            // pointwise chain on a few probes
            let mut chain_ok = true;
            for _ in 0..10 {
                let x = random_element(&alg, &mut rng);
                let v1 = p_sqrt.apply(&x).expect("same algebra").eigenvalues();
                let v2 = p_pair.apply(&x).expect("same algebra").eigenvalues();
                let v3 = l_a.apply(&x).expect("same algebra").eigenvalues();
                if !(majorizes(&v1, &v2, 1e-8).expect("rank")
                    && majorizes(&v2, &v3, 1e-8).expect("rank"))
                {
                    chain_ok = false;
                    break;
                }
            }
            // envelope isotonicity through the brackets
            let e1 = eta::eta_estimate(&p_sqrt, &cfg);
            let e2 = eta::eta_estimate(&p_pair, &cfg);
            let e3 = eta::eta_estimate(&l_a, &cfg);
            let iso = weak_majorizes(e1.lower.entries(), e2.upper.entries(), 1e-8)
                .expect("rank")
                && weak_majorizes(e2.lower.entries(), e3.upper.entries(), 1e-8).expect("rank");
            if !(chain_ok && iso) {
                violations += 1;
            }
        }
    }
    SelfTestResult::from_violations("isotonic-power-chain", total, violations)
}

/// Runs every suite. `full` uses acceptance-grade instance counts.
pub fn run_selftest(full: bool, seed: u64) -> Vec<SelfTestResult> {
    let big = if full { 10_000 } else { 300 };
    let small = if full { 200 } else { 30 };
    vec![
        suite_ftvn(big, seed),
        suite_abs_ftvn(big, seed),
        suite_variational_principle(big, seed),
        suite_sign_product(big, seed),
        suite_rearrangement(big, seed),
        suite_hadamard_monotone(big, seed),
        suite_lidskii(big, seed),
        suite_hirzebruch(big, seed),
        suite_strong_commutation_probe(big, seed),
        suite_bracket_soundness(small.min(150), seed),
        suite_envelope_laws(small.min(90), seed),
        suite_stochastic_maps(big.min(3000), seed),
        suite_cone_restriction_equivalence(small, seed),
        suite_continuity(small, seed),
        suite_norm_identity_direction(small, seed),
        suite_isotonic_chain(small, seed),
    ]
}
