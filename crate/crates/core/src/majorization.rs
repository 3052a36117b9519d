//! The weak-majorization preorder on R^n and its lattice structure on
//! nonnegative decreasing vectors.
//!
//! `p` is weakly majorized by `q` (written `p ≺_w q`) when every partial sum
//! of the decreasing rearrangement of `p` is dominated by the corresponding
//! partial sum of `q`. On nonnegative decreasing vectors this preorder is a
//! partial order with a greatest lower bound ([`w_inf`]) for every nonempty
//! set and a least upper bound ([`w_sup`], [`join`]) for every bounded one.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Base additive tolerance for floating-point majorization comparisons.
/// Comparisons scale it by `max(1, ||q||_inf)` internally.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Round-off slack accepted (and repaired) when constructing a `DecVector`
/// from computed data.
const FP_SLACK: f64 = 1e-12;

fn effective_tol(tol: f64, q: &[f64]) -> f64 {
    let qmax = q.iter().fold(0.0f64, |m, &v| m.max(v.abs()));
    tol * qmax.max(1.0)
}

/// Entries of `v` sorted in decreasing order.
pub fn decreasing_rearrangement(v: &[f64]) -> Vec<f64> {
    let mut out = v.to_vec();
    out.sort_by(|a, b| b.partial_cmp(a).unwrap());
    out
}

/// `S_k(v)`: the sum of the `k` largest entries of `v` (`1 <= k <= n`).
pub fn partial_sum(v: &[f64], k: usize) -> Result<f64> {
    if k == 0 || k > v.len() {
        return Err(Error::IndexOutOfRange { index: k, len: v.len() });
    }
    Ok(decreasing_rearrangement(v)[..k].iter().sum())
}

/// All partial sums `S_1(v), ..., S_n(v)` of the decreasing rearrangement.
pub fn partial_sums(v: &[f64]) -> Vec<f64> {
    let sorted = decreasing_rearrangement(v);
    sorted
        .iter()
        .scan(0.0, |acc, &x| {
            *acc += x;
            Some(*acc)
        })
        .collect()
}

/// `p ≺_w q`: every partial sum of `p↓` is at most the matching partial sum
/// of `q↓`, within `tol` scaled by `max(1, ||q||_inf)`.
pub fn weak_majorizes(p: &[f64], q: &[f64], tol: f64) -> Result<bool> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch { left: p.len(), right: q.len() });
    }
    let eps = effective_tol(tol, q);
    let sp = partial_sums(p);
    let sq = partial_sums(q);
    Ok(sp.iter().zip(&sq).all(|(a, b)| *a <= *b + eps))
}

/// `p ≺ q`: weak majorization plus equality of total sums.
pub fn majorizes(p: &[f64], q: &[f64], tol: f64) -> Result<bool> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch { left: p.len(), right: q.len() });
    }
    let eps = effective_tol(tol, q);
    let total_p: f64 = p.iter().sum();
    let total_q: f64 = q.iter().sum();
    Ok(weak_majorizes(p, q, tol)? && (total_p - total_q).abs() <= eps)
}

/// Componentwise product.
pub fn hadamard(p: &[f64], q: &[f64]) -> Result<Vec<f64>> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch { left: p.len(), right: q.len() });
    }
    Ok(p.iter().zip(q).map(|(a, b)| a * b).collect())
}

/// A nonnegative vector with decreasing components: the carrier of the
/// weak-majorization lattice and the codomain of the eta map.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct DecVector(Vec<f64>);

impl DecVector {
    /// Validates that `entries` is nonnegative and decreasing. Violations up
    /// to round-off slack are repaired; anything larger is an error.
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptySet);
        }
        let scale = entries.iter().fold(1.0f64, |m, &v| m.max(v.abs()));
        let slack = FP_SLACK * scale;
        let mut out = entries;
        for i in 0..out.len() {
            if out[i] < -slack {
                return Err(Error::NegativeEntry { index: i, value: out[i] });
            }
            if i > 0 && out[i] > out[i - 1] + slack {
                return Err(Error::NotDecreasing { index: i });
            }
            if i > 0 && out[i] > out[i - 1] {
                out[i] = out[i - 1];
            }
            if out[i] < 0.0 {
                out[i] = 0.0;
            }
        }
        Ok(DecVector(out))
    }

    /// Sorts `entries` in decreasing order; all entries must be nonnegative.
    pub fn from_unsorted(entries: &[f64]) -> Result<Self> {
        if let Some((i, &v)) = entries.iter().enumerate().find(|(_, v)| **v < 0.0) {
            return Err(Error::NegativeEntry { index: i, value: v });
        }
        DecVector::new(decreasing_rearrangement(entries))
    }

    pub fn constant(n: usize, value: f64) -> Result<Self> {
        DecVector::new(vec![value; n])
    }

    pub fn zero(n: usize) -> Self {
        DecVector(vec![0.0; n])
    }

    pub fn ones(n: usize) -> Self {
        DecVector(vec![1.0; n])
    }

    pub fn entries(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> f64 {
        self.0[i]
    }

    /// Partial sums without re-sorting (entries are already decreasing).
    pub fn partial_sums(&self) -> Vec<f64> {
        self.0
            .iter()
            .scan(0.0, |acc, &x| {
                *acc += x;
                Some(*acc)
            })
            .collect()
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    pub fn max_abs_diff(&self, other: &DecVector) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()))
    }

    pub fn scale(&self, alpha: f64) -> Result<DecVector> {
        if alpha < 0.0 {
            return Err(Error::NegativeEntry { index: 0, value: alpha });
        }
        Ok(DecVector(self.0.iter().map(|v| v * alpha).collect()))
    }

    /// Entrywise sum (both decreasing, so the sum is decreasing).
    pub fn add(&self, other: &DecVector) -> Result<DecVector> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch { left: self.len(), right: other.len() });
        }
        Ok(DecVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    /// Entrywise product (both decreasing nonnegative, so is the product).
    pub fn hadamard(&self, other: &DecVector) -> Result<DecVector> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch { left: self.len(), right: other.len() });
        }
        Ok(DecVector(self.0.iter().zip(&other.0).map(|(a, b)| a * b).collect()))
    }
}

impl TryFrom<Vec<f64>> for DecVector {
    type Error = Error;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        DecVector::new(v)
    }
}

impl From<DecVector> for Vec<f64> {
    fn from(v: DecVector) -> Vec<f64> {
        v.0
    }
}

fn check_nonneg_equal_len<V: AsRef<[f64]>>(vectors: &[V]) -> Result<usize> {
    if vectors.is_empty() {
        return Err(Error::EmptySet);
    }
    let n = vectors[0].as_ref().len();
    for v in vectors {
        let v = v.as_ref();
        if v.len() != n {
            return Err(Error::LengthMismatch { left: n, right: v.len() });
        }
        if let Some((i, &x)) = v.iter().enumerate().find(|(_, x)| **x < 0.0) {
            return Err(Error::NegativeEntry { index: i, value: x });
        }
    }
    if n == 0 {
        return Err(Error::EmptySet);
    }
    Ok(n)
}

/// Greatest lower bound of a finite set of nonnegative vectors in the
/// weak-majorization order: differences of `beta_k = min over the set of
/// S_k`, which is concave and nondecreasing in `k`.
pub fn w_inf<V: AsRef<[f64]>>(vectors: &[V]) -> Result<DecVector> {
    let n = check_nonneg_equal_len(vectors)?;
    let mut beta = vec![f64::INFINITY; n];
    for v in vectors {
        let sums = partial_sums(v.as_ref());
        for k in 0..n {
            beta[k] = beta[k].min(sums[k]);
        }
    }
    let mut out = Vec::with_capacity(n);
    let mut prev = 0.0;
    for b in beta {
        out.push(b - prev);
        prev = b;
    }
    DecVector::new(out)
}

/// Least concave majorant of the points `(k, m_k)`, `k = 0..n`, evaluated at
/// the integers. Computed as the upper convex hull by a monotone chain.
fn upper_concave_majorant(m: &[f64]) -> Vec<f64> {
    // points: (0, 0), (1, m[0]), ..., (n, m[n-1])
    let n = m.len();
    let mut hull: Vec<(f64, f64)> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let p = (k as f64, if k == 0 { 0.0 } else { m[k - 1] });
        while hull.len() >= 2 {
            let o = hull[hull.len() - 2];
            let a = hull[hull.len() - 1];
            // Pop `a` while it lies on or below the chord from `o` to `p`.
            let cross = (a.0 - o.0) * (p.1 - o.1) - (a.1 - o.1) * (p.0 - o.0);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    // The first point (0, 0) and the last point (n, m_n) are always hull
    // vertices, so every integer k lies in some segment.
    let mut out = vec![0.0; n + 1];
    let mut seg = 0;
    for k in 0..=n {
        let x = k as f64;
        while hull[seg + 1].0 < x {
            seg += 1;
        }
        let (x0, y0) = hull[seg];
        let (x1, y1) = hull[seg + 1];
        out[k] = y0 + (y1 - y0) * (x - x0) / (x1 - x0);
    }
    out
}

/// Least upper bound of a finite set of nonnegative vectors in the
/// weak-majorization order: the running maxima of partial sums are replaced
/// by their least concave nondecreasing majorant, whose differences form the
/// answer.
pub fn w_sup<V: AsRef<[f64]>>(vectors: &[V]) -> Result<DecVector> {
    let n = check_nonneg_equal_len(vectors)?;
    let mut m = vec![f64::NEG_INFINITY; n];
    for v in vectors {
        let sums = partial_sums(v.as_ref());
        for k in 0..n {
            m[k] = m[k].max(sums[k]);
        }
    }
    let hull = upper_concave_majorant(&m);
    let mut out = Vec::with_capacity(n);
    for k in 1..=n {
        out.push(hull[k] - hull[k - 1]);
    }
    DecVector::new(out)
}

/// `w_sup` of a pair: commutative, associative, idempotent.
pub fn join(r: &DecVector, s: &DecVector) -> Result<DecVector> {
    if r.len() != s.len() {
        return Err(Error::LengthMismatch { left: r.len(), right: s.len() });
    }
    w_sup(&[r.entries(), s.entries()])
}

/// Running accumulator for `w_sup` over a stream of vectors: keeps the
/// componentwise maximum of partial sums and takes the concave majorant once
/// at the end. The result is exactly `w_sup` of everything fed in,
/// independent of order.
#[derive(Debug, Clone)]
pub struct WSupAccumulator {
    max_sums: Vec<f64>,
    count: usize,
}

impl WSupAccumulator {
    pub fn new(n: usize) -> Self {
        WSupAccumulator { max_sums: vec![0.0; n], count: 0 }
    }

    /// Feed one nonnegative vector (callers guarantee nonnegativity; eigenvalue
    /// vectors of `|x|` always are).
    pub fn push(&mut self, v: &[f64]) {
        debug_assert_eq!(v.len(), self.max_sums.len());
        let sums = partial_sums(v);
        for k in 0..self.max_sums.len() {
            self.max_sums[k] = self.max_sums[k].max(sums[k]);
        }
        self.count += 1;
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn finish(&self) -> DecVector {
        let hull = upper_concave_majorant(&self.max_sums);
        let mut out = Vec::with_capacity(self.max_sums.len());
        for k in 1..=self.max_sums.len() {
            out.push(hull[k] - hull[k - 1]);
        }
        DecVector::new(out).expect("concave majorant differences are decreasing")
    }
}
