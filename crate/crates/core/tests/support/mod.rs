//! Independent oracles for the acceptance suite. Everything here recomputes
//! lattice values by brute force (subset enumeration, chord maxima, grid
//! search) without touching the library's sorting/hull code paths.

/// `S_k` by enumerating all k-element subsets (no sorting).
pub fn brute_partial_sum(v: &[f64], k: usize) -> f64 {
    fn rec(v: &[f64], start: usize, k: usize) -> f64 {
        if k == 0 {
            return 0.0;
        }
        let mut best = f64::NEG_INFINITY;
        for i in start..=v.len() - k {
            let s = v[i] + rec(v, i + 1, k - 1);
            if s > best {
                best = s;
            }
        }
        best
    }
    rec(v, 0, k)
}

/// w-inf by the beta-difference construction with brute-force partial sums.
pub fn oracle_w_inf(set: &[Vec<f64>]) -> Vec<f64> {
    let n = set[0].len();
    let mut beta = vec![f64::INFINITY; n + 1];
    beta[0] = 0.0;
    for k in 1..=n {
        for q in set {
            let s = brute_partial_sum(q, k);
            if s < beta[k] {
                beta[k] = s;
            }
        }
    }
    (1..=n).map(|k| beta[k] - beta[k - 1]).collect()
}

/// w-sup as the difference sequence of the least concave majorant of the
/// max partial sums, computed as an explicit maximum over all chords
/// (the linear-programming dual of "minimize S_k over upper bounds").
pub fn oracle_w_sup(set: &[Vec<f64>]) -> Vec<f64> {
    let n = set[0].len();
    let mut m = vec![0.0f64; n + 1];
    for k in 1..=n {
        m[k] = set.iter().map(|q| brute_partial_sum(q, k)).fold(f64::NEG_INFINITY, f64::max);
    }
    let mut hull = vec![0.0f64; n + 1];
    for k in 0..=n {
        let mut best = m[k];
        for j1 in 0..=k {
            for j2 in k..=n {
                if j1 == j2 {
                    continue;
                }
                let v = m[j1]
                    + (m[j2] - m[j1]) * (k as f64 - j1 as f64) / (j2 as f64 - j1 as f64);
                if v > best {
                    best = v;
                }
            }
        }
        hull[k] = best;
    }
    (1..=n).map(|k| hull[k] - hull[k - 1]).collect()
}

fn weak_maj(p: &[f64], q: &[f64], tol: f64) -> bool {
    let sort = |v: &[f64]| {
        let mut s = v.to_vec();
        s.sort_by(|a, b| b.partial_cmp(a).unwrap());
        s
    };
    let ps = sort(p);
    let qs = sort(q);
    let mut sp = 0.0;
    let mut sq = 0.0;
    for k in 0..p.len() {
        sp += ps[k];
        sq += qs[k];
        if sp > sq + tol {
            return false;
        }
    }
    true
}

/// Exhaustive grid search: is there a decreasing grid vector `p != wsup`
/// that still upper-bounds every member while `p ≺_w wsup`? Returns the
/// counterexample if one exists.
pub fn grid_leastness_counterexample(
    set: &[Vec<f64>],
    wsup: &[f64],
    grid_step: f64,
) -> Option<Vec<f64>> {
    let n = wsup.len();
    let max_entry = (wsup[0] / grid_step).ceil() as i64;
    let mut candidate = vec![0i64; n];
    fn rec(
        set: &[Vec<f64>],
        wsup: &[f64],
        grid_step: f64,
        candidate: &mut Vec<i64>,
        pos: usize,
        cap: i64,
    ) -> Option<Vec<f64>> {
        if pos == candidate.len() {
            let p: Vec<f64> = candidate.iter().map(|v| *v as f64 * grid_step).collect();
            let upper_bound = set.iter().all(|s| weak_maj(s, &p, 1e-9));
            if !upper_bound {
                return None;
            }
            if !weak_maj(&p, wsup, 1e-9) {
                return None;
            }
            let equal = p.iter().zip(wsup).all(|(a, b)| (a - b).abs() <= 1e-9);
            if equal {
                return None;
            }
            return Some(p);
        }
        for v in (0..=cap).rev() {
            candidate[pos] = v;
            if let Some(hit) = rec(set, wsup, grid_step, candidate, pos + 1, v) {
                return Some(hit);
            }
        }
        None
    }
    rec(set, wsup, grid_step, &mut candidate, 0, max_entry)
}
