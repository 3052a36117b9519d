//! Concrete Euclidean Jordan algebras with the trace inner product.
//!
//! Supported kinds: real symmetric matrices, complex Hermitian matrices, the
//! spin (second-order cone) algebra, and finite products of those. Elements
//! are stored as real coordinates in a fixed orthonormal basis, so the inner
//! product is the plain coordinate dot product and operator adjoints are
//! coordinate transposes.
//!
//! Basis conventions (fixed once per kind):
//! - real symmetric m x m: `E_ii`, then `(E_ij + E_ji)/sqrt(2)` for `i < j`
//!   in lexicographic order;
//! - complex Hermitian m x m: `E_ii`, then interleaved
//!   `(E_ij + E_ji)/sqrt(2)`, `i(E_ij - E_ji)/sqrt(2)` for `i < j`;
//! - spin(d): natural coordinates `(x0, xbar)` scaled by `sqrt(2)`;
//! - products: factor coordinates concatenated in order.

mod peirce;
mod random;
mod spectral;

pub use peirce::{peirce_components, PeirceComponents};
pub use random::{
    random_cone_element, random_element, random_idempotent, random_jordan_frame,
    random_positive_element, random_sign_element, seeded_jordan_frame,
};
pub use spectral::{JordanFrame, SpectralDecomposition};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{CMat, Mat};

pub(crate) const SQRT2: f64 = std::f64::consts::SQRT_2;

/// Descriptor of a Euclidean Jordan algebra.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Algebra {
    /// m x m real symmetric matrices; rank m, dimension m(m+1)/2.
    RealSymmetric { m: usize },
    /// m x m complex Hermitian matrices; rank m, dimension m^2.
    ComplexHermitian { m: usize },
    /// Spin algebra on R^dim: elements (x0, xbar), xbar in R^(dim-1); rank 2.
    Spin { dim: usize },
    /// Direct product of factor algebras.
    Product { factors: Vec<Algebra> },
}

impl Algebra {
    pub fn rank(&self) -> usize {
        match self {
            Algebra::RealSymmetric { m } | Algebra::ComplexHermitian { m } => *m,
            Algebra::Spin { .. } => 2,
            Algebra::Product { factors } => factors.iter().map(Algebra::rank).sum(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Algebra::RealSymmetric { m } => m * (m + 1) / 2,
            Algebra::ComplexHermitian { m } => m * m,
            Algebra::Spin { dim } => *dim,
            Algebra::Product { factors } => factors.iter().map(Algebra::dim).sum(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Algebra::RealSymmetric { m } | Algebra::ComplexHermitian { m } => {
                if *m == 0 {
                    return Err(Error::InvalidInput("matrix algebra needs m >= 1".into()));
                }
            }
            Algebra::Spin { dim } => {
                if *dim < 2 {
                    return Err(Error::InvalidInput("spin algebra needs dim >= 2".into()));
                }
            }
            Algebra::Product { factors } => {
                if factors.is_empty() {
                    return Err(Error::InvalidInput("product algebra needs factors".into()));
                }
                for f in factors {
                    f.validate()?;
                }
            }
        }
        Ok(())
    }

    /// Coordinate offsets of each top-level factor block.
    pub(crate) fn factor_offsets(&self) -> Vec<(usize, &Algebra)> {
        match self {
            Algebra::Product { factors } => {
                let mut out = Vec::with_capacity(factors.len());
                let mut off = 0;
                for f in factors {
                    out.push((off, f));
                    off += f.dim();
                }
                out
            }
            _ => vec![(0, self)],
        }
    }

    /// Coordinate offsets of every simple (non-product) factor, with nested
    /// products flattened.
    pub(crate) fn simple_factor_offsets(&self) -> Vec<(usize, &Algebra)> {
        fn walk<'a>(alg: &'a Algebra, off: &mut usize, out: &mut Vec<(usize, &'a Algebra)>) {
            match alg {
                Algebra::Product { factors } => {
                    for f in factors {
                        walk(f, off, out);
                    }
                }
                _ => {
                    out.push((*off, alg));
                    *off += alg.dim();
                }
            }
        }
        let mut out = Vec::new();
        let mut off = 0;
        walk(self, &mut off, &mut out);
        out
    }
}

/// Coordinate index of the off-diagonal slot for the pair `(i, j)`, `i < j`,
/// counting pairs lexicographically.
fn pair_offset(i: usize, j: usize, m: usize) -> usize {
    debug_assert!(i < j && j < m);
    i * m - i * (i + 1) / 2 + (j - i - 1)
}

/// A point of a Euclidean Jordan algebra, stored as real coordinates in the
/// fixed orthonormal basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ElementRepr", into = "ElementRepr")]
pub struct Element {
    algebra: Algebra,
    coords: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct ElementRepr {
    algebra: Algebra,
    coords: Vec<f64>,
}

impl TryFrom<ElementRepr> for Element {
    type Error = Error;
    fn try_from(r: ElementRepr) -> Result<Self> {
        Element::new(r.algebra, r.coords)
    }
}

impl From<Element> for ElementRepr {
    fn from(e: Element) -> ElementRepr {
        ElementRepr { algebra: e.algebra, coords: e.coords }
    }
}

impl Element {
    pub fn new(algebra: Algebra, coords: Vec<f64>) -> Result<Self> {
        algebra.validate()?;
        if coords.len() != algebra.dim() {
            return Err(Error::DimensionMismatch { expected: algebra.dim(), got: coords.len() });
        }
        Ok(Element { algebra, coords })
    }

    pub fn zero(algebra: &Algebra) -> Self {
        Element { algebra: algebra.clone(), coords: vec![0.0; algebra.dim()] }
    }

    /// The unit element `e` (identity matrices; `(1, 0)` for spin).
    pub fn unit(algebra: &Algebra) -> Self {
        let mut coords = vec![0.0; algebra.dim()];
        for (off, f) in algebra.simple_factor_offsets() {
            match f {
                Algebra::RealSymmetric { m } | Algebra::ComplexHermitian { m } => {
                    for i in 0..*m {
                        coords[off + i] = 1.0;
                    }
                }
                Algebra::Spin { .. } => coords[off] = SQRT2,
                Algebra::Product { .. } => unreachable!("simple factors only"),
            }
        }
        Element { algebra: algebra.clone(), coords }
    }

    /// The k-th orthonormal basis element.
    pub fn basis(algebra: &Algebra, k: usize) -> Self {
        let mut coords = vec![0.0; algebra.dim()];
        coords[k] = 1.0;
        Element { algebra: algebra.clone(), coords }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    fn check_same(&self, other: &Element) -> Result<()> {
        if self.algebra != other.algebra {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }

    /// Trace inner product; equals the coordinate dot product because the
    /// basis is orthonormal.
    pub fn inner(&self, other: &Element) -> Result<f64> {
        self.check_same(other)?;
        Ok(self.coords.iter().zip(&other.coords).map(|(a, b)| a * b).sum())
    }

    pub fn norm(&self) -> f64 {
        self.coords.iter().map(|a| a * a).sum::<f64>().sqrt()
    }

    pub fn trace(&self) -> f64 {
        self.inner(&Element::unit(&self.algebra)).expect("same algebra")
    }

    /// Jordan product `x ∘ y`.
    pub fn jordan_mul(&self, other: &Element) -> Result<Element> {
        self.check_same(other)?;
        let mut coords = vec![0.0; self.algebra.dim()];
        for (off, f) in self.algebra.simple_factor_offsets() {
            let xs = &self.coords[off..off + f.dim()];
            let ys = &other.coords[off..off + f.dim()];
            let zs = jordan_mul_simple(f, xs, ys);
            coords[off..off + f.dim()].copy_from_slice(&zs);
        }
        Ok(Element { algebra: self.algebra.clone(), coords })
    }

    pub fn square(&self) -> Element {
        self.jordan_mul(self).expect("same algebra")
    }

    /// Matrix form of a real-symmetric element.
    pub fn to_sym_matrix(&self) -> Result<Mat> {
        match &self.algebra {
            Algebra::RealSymmetric { m } => Ok(sym_matrix_from_coords(*m, &self.coords)),
            _ => Err(Error::WrongAlgebraKind { expected: "real-symmetric" }),
        }
    }

    pub fn from_sym_matrix(mat: &Mat) -> Result<Element> {
        if mat.rows() != mat.cols() {
            return Err(Error::NotSymmetric);
        }
        let m = mat.rows();
        if !mat.is_symmetric(1e-10 * mat.max_abs().max(1.0)) {
            return Err(Error::NotSymmetric);
        }
        let mut coords = vec![0.0; m * (m + 1) / 2];
        for i in 0..m {
            coords[i] = mat.get(i, i);
        }
        for i in 0..m {
            for j in (i + 1)..m {
                coords[m + pair_offset(i, j, m)] =
                    SQRT2 * 0.5 * (mat.get(i, j) + mat.get(j, i));
            }
        }
        Element::new(Algebra::RealSymmetric { m }, coords)
    }

    /// Matrix form of a complex-Hermitian element.
    pub fn to_herm_matrix(&self) -> Result<CMat> {
        match &self.algebra {
            Algebra::ComplexHermitian { m } => Ok(herm_matrix_from_coords(*m, &self.coords)),
            _ => Err(Error::WrongAlgebraKind { expected: "complex-hermitian" }),
        }
    }

    pub fn from_herm_matrix(mat: &CMat) -> Result<Element> {
        if mat.rows() != mat.cols() {
            return Err(Error::NotSymmetric);
        }
        let m = mat.rows();
        if !mat.is_hermitian(1e-10 * mat.frobenius_norm().max(1.0)) {
            return Err(Error::NotSymmetric);
        }
        let mut coords = vec![0.0; m * m];
        for i in 0..m {
            coords[i] = mat.get(i, i).re;
        }
        for i in 0..m {
            for j in (i + 1)..m {
                let z = 0.5 * (mat.get(i, j) + mat.get(j, i).conj());
                let p = pair_offset(i, j, m);
                coords[m + 2 * p] = SQRT2 * z.re;
                coords[m + 2 * p + 1] = SQRT2 * z.im;
            }
        }
        Element::new(Algebra::ComplexHermitian { m }, coords)
    }

    /// Natural spin coordinates `(x0, xbar)`.
    pub fn spin_parts(&self) -> Result<(f64, Vec<f64>)> {
        match &self.algebra {
            Algebra::Spin { .. } => {
                let x0 = self.coords[0] / SQRT2;
                let xbar = self.coords[1..].iter().map(|v| v / SQRT2).collect();
                Ok((x0, xbar))
            }
            _ => Err(Error::WrongAlgebraKind { expected: "spin" }),
        }
    }

    pub fn from_spin_parts(x0: f64, xbar: &[f64]) -> Result<Element> {
        let dim = xbar.len() + 1;
        let mut coords = Vec::with_capacity(dim);
        coords.push(SQRT2 * x0);
        coords.extend(xbar.iter().map(|v| SQRT2 * v));
        Element::new(Algebra::Spin { dim }, coords)
    }

    /// Splits a product-algebra element into its factor elements.
    pub fn factor_elements(&self) -> Vec<Element> {
        self.algebra
            .factor_offsets()
            .into_iter()
            .map(|(off, f)| Element {
                algebra: f.clone(),
                coords: self.coords[off..off + f.dim()].to_vec(),
            })
            .collect()
    }

    /// Embeds `part` into the `index`-th factor slot of `product`, padding
    /// the other factors with zero.
    pub fn embed_factor(product: &Algebra, index: usize, part: &Element) -> Result<Element> {
        let offsets = product.factor_offsets();
        let (off, f) = offsets
            .get(index)
            .ok_or(Error::IndexOutOfRange { index, len: offsets.len() })?;
        if *f != &part.algebra {
            return Err(Error::AlgebraMismatch);
        }
        let mut coords = vec![0.0; product.dim()];
        coords[*off..*off + f.dim()].copy_from_slice(&part.coords);
        Ok(Element { algebra: product.clone(), coords })
    }

    pub(crate) fn from_coords_unchecked(algebra: Algebra, coords: Vec<f64>) -> Element {
        debug_assert_eq!(coords.len(), algebra.dim());
        Element { algebra, coords }
    }
}

fn sym_matrix_from_coords(m: usize, coords: &[f64]) -> Mat {
    let mut mat = Mat::zeros(m, m);
    for i in 0..m {
        mat.set(i, i, coords[i]);
    }
    for i in 0..m {
        for j in (i + 1)..m {
            let v = coords[m + pair_offset(i, j, m)] / SQRT2;
            mat.set(i, j, v);
            mat.set(j, i, v);
        }
    }
    mat
}

fn herm_matrix_from_coords(m: usize, coords: &[f64]) -> CMat {
    let mut mat = CMat::zeros(m, m);
    for i in 0..m {
        mat.set(i, i, Complex64::new(coords[i], 0.0));
    }
    for i in 0..m {
        for j in (i + 1)..m {
            let p = pair_offset(i, j, m);
            let z = Complex64::new(coords[m + 2 * p], coords[m + 2 * p + 1]) / SQRT2;
            mat.set(i, j, z);
            mat.set(j, i, z.conj());
        }
    }
    mat
}

/// Jordan product on a simple (non-product) factor, in coordinates.
fn jordan_mul_simple(alg: &Algebra, xs: &[f64], ys: &[f64]) -> Vec<f64> {
    match alg {
        Algebra::RealSymmetric { m } => {
            let x = sym_matrix_from_coords(*m, xs);
            let y = sym_matrix_from_coords(*m, ys);
            let xy = x.matmul(&y);
            let yx = y.matmul(&x);
            let prod = xy.add(&yx).scale(0.5);
            let mut coords = vec![0.0; xs.len()];
            for i in 0..*m {
                coords[i] = prod.get(i, i);
            }
            for i in 0..*m {
                for j in (i + 1)..*m {
                    coords[m + pair_offset(i, j, *m)] = SQRT2 * prod.get(i, j);
                }
            }
            coords
        }
        Algebra::ComplexHermitian { m } => {
            let x = herm_matrix_from_coords(*m, xs);
            let y = herm_matrix_from_coords(*m, ys);
            let xy = x.matmul(&y);
            let yx = y.matmul(&x);
            let mut coords = vec![0.0; xs.len()];
            for i in 0..*m {
                coords[i] = 0.5 * (xy.get(i, i) + yx.get(i, i)).re;
            }
            for i in 0..*m {
                for j in (i + 1)..*m {
                    let z = 0.5 * (xy.get(i, j) + yx.get(i, j));
                    let p = pair_offset(i, j, *m);
                    coords[m + 2 * p] = SQRT2 * z.re;
                    coords[m + 2 * p + 1] = SQRT2 * z.im;
                }
            }
            coords
        }
        Algebra::Spin { dim } => {
            // Natural coordinates are the stored ones over sqrt(2); the
            // product (x.y, x0*ybar + y0*xbar) picks up one 1/sqrt(2).
            let d = *dim;
            let mut out = vec![0.0; d];
            let dot: f64 = xs.iter().zip(ys).map(|(a, b)| a * b).sum();
            out[0] = dot / SQRT2;
            for k in 1..d {
                out[k] = (xs[0] * ys[k] + ys[0] * xs[k]) / SQRT2;
            }
            out
        }
        Algebra::Product { .. } => unreachable!("products are split by the caller"),
    }
}

impl std::ops::Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        assert_eq!(self.algebra, rhs.algebra, "algebra mismatch in +");
        Element {
            algebra: self.algebra.clone(),
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl std::ops::Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        assert_eq!(self.algebra, rhs.algebra, "algebra mismatch in -");
        Element {
            algebra: self.algebra.clone(),
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect(),
        }
    }
}

impl std::ops::Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element {
            algebra: self.algebra.clone(),
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }
}

impl std::ops::Mul<f64> for &Element {
    type Output = Element;
    fn mul(self, rhs: f64) -> Element {
        Element {
            algebra: self.algebra.clone(),
            coords: self.coords.iter().map(|a| a * rhs).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn herm(m: usize) -> Algebra {
        Algebra::ComplexHermitian { m }
    }

    fn sym(m: usize) -> Algebra {
        Algebra::RealSymmetric { m }
    }

    #[test]
    fn ranks_and_dims() {
        assert_eq!(sym(3).rank(), 3);
        assert_eq!(sym(3).dim(), 6);
        assert_eq!(herm(3).rank(), 3);
        assert_eq!(herm(3).dim(), 9);
        let s = Algebra::Spin { dim: 5 };
        assert_eq!(s.rank(), 2);
        assert_eq!(s.dim(), 5);
        let p = Algebra::Product { factors: vec![sym(2), s] };
        assert_eq!(p.rank(), 4);
        assert_eq!(p.dim(), 8);
    }

    #[test]
    fn unit_is_neutral() {
        for alg in [
            sym(3),
            herm(2),
            Algebra::Spin { dim: 4 },
            Algebra::Product { factors: vec![herm(2), Algebra::Spin { dim: 3 }] },
        ] {
            let e = Element::unit(&alg);
            for k in 0..alg.dim() {
                let x = Element::basis(&alg, k);
                let ex = e.jordan_mul(&x).unwrap();
                let diff: f64 = ex
                    .coords()
                    .iter()
                    .zip(x.coords())
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max);
                assert!(diff < 1e-14, "e ∘ x != x on {alg:?} basis {k}");
            }
            // tr(e) = rank
            assert!((e.trace() - alg.rank() as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn commuting_diagonals_multiply() {
        // diag(1,2) ∘ diag(3,4) = diag(3,8)
        let x = Element::from_sym_matrix(
            &Mat::from_rows(&[vec![1.0, 0.0], vec![0.0, 2.0]]).unwrap(),
        )
        .unwrap();
        let y = Element::from_sym_matrix(
            &Mat::from_rows(&[vec![3.0, 0.0], vec![0.0, 4.0]]).unwrap(),
        )
        .unwrap();
        let z = x.jordan_mul(&y).unwrap().to_sym_matrix().unwrap();
        assert!((z.get(0, 0) - 3.0).abs() < 1e-14);
        assert!((z.get(1, 1) - 8.0).abs() < 1e-14);
        assert!(z.get(0, 1).abs() < 1e-14);
    }

    #[test]
    fn spin_product_frozen() {
        // (0; (1,0)) ∘ (0; (0,1)) = 0
        let x = Element::from_spin_parts(0.0, &[1.0, 0.0]).unwrap();
        let y = Element::from_spin_parts(0.0, &[0.0, 1.0]).unwrap();
        let z = x.jordan_mul(&y).unwrap();
        assert!(z.norm() < 1e-15);
    }

    #[test]
    fn spin_inner_frozen() {
        // <(1;(1,0)), (1;(1,0))> = 2(1 + 1) = 4
        let x = Element::from_spin_parts(1.0, &[1.0, 0.0]).unwrap();
        assert!((x.inner(&x).unwrap() - 4.0).abs() < 1e-14);
    }

    #[test]
    fn inner_matches_matrix_trace() {
        // Hermitian: <x, y> = Re tr(XY)
        let mut xm = CMat::zeros(2, 2);
        xm.set(0, 0, Complex64::new(1.0, 0.0));
        xm.set(0, 1, Complex64::new(0.5, -1.5));
        xm.set(1, 0, Complex64::new(0.5, 1.5));
        xm.set(1, 1, Complex64::new(-2.0, 0.0));
        let mut ym = CMat::zeros(2, 2);
        ym.set(0, 0, Complex64::new(0.25, 0.0));
        ym.set(0, 1, Complex64::new(-1.0, 0.5));
        ym.set(1, 0, Complex64::new(-1.0, -0.5));
        ym.set(1, 1, Complex64::new(3.0, 0.0));
        let x = Element::from_herm_matrix(&xm).unwrap();
        let y = Element::from_herm_matrix(&ym).unwrap();
        let prod = xm.matmul(&ym);
        let tr = (prod.get(0, 0) + prod.get(1, 1)).re;
        assert!((x.inner(&y).unwrap() - tr).abs() < 1e-12);
    }

    #[test]
    fn associativity_identity_of_inner_product() {
        // <x ∘ y, z> = <x, y ∘ z> on random-ish coordinates
        for alg in [sym(3), herm(3), Algebra::Spin { dim: 5 }] {
            let dim = alg.dim();
            let mk = |salt: f64| {
                let coords: Vec<f64> =
                    (0..dim).map(|i| ((i as f64 + salt) * 1.37).sin()).collect();
                Element::new(alg.clone(), coords).unwrap()
            };
            let (x, y, z) = (mk(0.1), mk(5.2), mk(9.7));
            let lhs = x.jordan_mul(&y).unwrap().inner(&z).unwrap();
            let rhs = x.inner(&y.jordan_mul(&z).unwrap()).unwrap();
            assert!((lhs - rhs).abs() < 1e-12, "failed on {alg:?}");
        }
    }

    #[test]
    fn matrix_roundtrip() {
        let coords: Vec<f64> = (0..9).map(|i| (i as f64 * 0.731).cos()).collect();
        let x = Element::new(herm(3), coords.clone()).unwrap();
        let back = Element::from_herm_matrix(&x.to_herm_matrix().unwrap()).unwrap();
        for (a, b) in x.coords().iter().zip(back.coords()) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn nested_products_flatten() {
        let inner = Algebra::Product { factors: vec![sym(2), Algebra::Spin { dim: 3 }] };
        let alg = Algebra::Product { factors: vec![herm(2), inner] };
        assert_eq!(alg.rank(), 2 + 2 + 2);
        assert_eq!(alg.dim(), 4 + 3 + 3);
        let e = Element::unit(&alg);
        assert!((e.trace() - 6.0).abs() < 1e-12);
        // e ∘ x = x through the nested layout
        for k in 0..alg.dim() {
            let x = Element::basis(&alg, k);
            assert!((&e.jordan_mul(&x).unwrap() - &x).norm() < 1e-14);
        }
        let dec = e.spectral();
        dec.frame().validate(1e-10).unwrap();
    }

    #[test]
    fn algebra_mismatch_errors() {
        let x = Element::unit(&sym(2));
        let y = Element::unit(&sym(3));
        assert!(matches!(x.jordan_mul(&y), Err(Error::AlgebraMismatch)));
        assert!(matches!(x.inner(&y), Err(Error::AlgebraMismatch)));
    }
}
