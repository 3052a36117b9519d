//! JSON job specifications: algebra + operator + sampling config.
//!
//! Matrices are row-major arrays; complex entries are `[re, im]` pairs and
//! plain numbers are accepted as reals. Elements can be given as coordinate
//! arrays in the documented basis, as Hermitian/symmetric matrix literals,
//! or as natural spin coordinates.

use num_complex::Complex64;
use serde::Deserialize;

use etabound::algebra::{seeded_jordan_frame, Algebra, Element, JordanFrame};
use etabound::fixtures;
use etabound::linalg::{CMat, Mat};
use etabound::operators::LinearOperator;
use etabound::SampleConfig;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub algebra: Algebra,
    pub operator: OperatorSpec,
    #[serde(default)]
    pub config: ConfigSpec,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigSpec {
    pub n_frames: Option<usize>,
    pub ranks: Option<Vec<usize>>,
    pub signs_per_frame: Option<usize>,
    pub n_random_x: Option<usize>,
    pub seed: Option<u64>,
    pub tol: Option<f64>,
}

impl ConfigSpec {
    pub fn build(&self) -> SampleConfig {
        let mut cfg = SampleConfig::default();
        if let Some(v) = self.n_frames {
            cfg.n_frames = v;
        }
        if let Some(v) = &self.ranks {
            cfg.ranks = Some(v.clone());
        }
        if let Some(v) = self.signs_per_frame {
            cfg.signs_per_frame = v;
        }
        if let Some(v) = self.n_random_x {
            cfg.n_random_x = v;
        }
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        if let Some(v) = self.tol {
            cfg.tol = v;
        }
        cfg
    }
}

/// A real number or a `[re, im]` pair.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(untagged)]
pub enum NumberSpec {
    Real(f64),
    Complex([f64; 2]),
}

impl NumberSpec {
    fn to_complex(self) -> Complex64 {
        match self {
            NumberSpec::Real(r) => Complex64::new(r, 0.0),
            NumberSpec::Complex([re, im]) => Complex64::new(re, im),
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub enum FrameSpec {
    #[default]
    #[serde(rename = "standard")]
    Standard,
    #[serde(rename = "random_seed")]
    RandomSeed(u64),
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum ElementSpec {
    Coords { coords: Vec<f64> },
    Matrix { matrix: Vec<Vec<NumberSpec>> },
    Spin { spin: Vec<f64> },
}

// Unknown-field rejection does not apply inside internally tagged enums;
// operator objects are parsed leniently, unknown `type` values still error.
#[derive(Debug, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum OperatorSpec {
    Identity,
    Dense { matrix: Vec<Vec<f64>> },
    Lyapunov { a: ElementSpec },
    Quad { a: ElementSpec },
    QuadPair { a: ElementSpec, b: ElementSpec },
    PowerPair { a: ElementSpec, t: f64 },
    Schur { a: Vec<Vec<f64>>, #[serde(default)] frame: FrameSpec },
    Congruence { m: Vec<Vec<NumberSpec>> },
    LyapunovMatrix { m: Vec<Vec<NumberSpec>> },
    Scale { alpha: f64, inner: Box<OperatorSpec> },
    Sum { parts: Vec<OperatorSpec> },
    Compose { parts: Vec<OperatorSpec> },
    Inverse { inner: Box<OperatorSpec> },
}

pub fn parse_element(alg: &Algebra, spec: &ElementSpec) -> Result<Element, String> {
    match spec {
        ElementSpec::Coords { coords } => {
            Element::new(alg.clone(), coords.clone()).map_err(|e| e.to_string())
        }
        ElementSpec::Matrix { matrix } => {
            let cm = complex_matrix(matrix)?;
            match alg {
                Algebra::ComplexHermitian { m } => {
                    if cm.rows() != *m {
                        return Err(format!("element matrix must be {m}x{m}"));
                    }
                    Element::from_herm_matrix(&cm).map_err(|e| e.to_string())
                }
                Algebra::RealSymmetric { m } => {
                    if cm.rows() != *m {
                        return Err(format!("element matrix must be {m}x{m}"));
                    }
                    let mut real = Mat::zeros(*m, *m);
                    for r in 0..*m {
                        for c in 0..*m {
                            let z = cm.get(r, c);
                            if z.im.abs() > 1e-12 {
                                return Err(
                                    "real-symmetric elements need real matrix entries".into()
                                );
                            }
                            real.set(r, c, z.re);
                        }
                    }
                    Element::from_sym_matrix(&real).map_err(|e| e.to_string())
                }
                _ => Err("matrix element literals need a matrix-kind algebra".into()),
            }
        }
        ElementSpec::Spin { spin } => {
            if spin.is_empty() {
                return Err("spin element needs at least (x0, x1)".into());
            }
            match alg {
                Algebra::Spin { dim } => {
                    if spin.len() != *dim {
                        return Err(format!("spin element needs {dim} natural coordinates"));
                    }
                    Element::from_spin_parts(spin[0], &spin[1..]).map_err(|e| e.to_string())
                }
                _ => Err("spin element literals need a spin algebra".into()),
            }
        }
    }
}

fn complex_matrix(rows: &[Vec<NumberSpec>]) -> Result<CMat, String> {
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err("matrix must be square and nonempty".into());
    }
    let mut m = CMat::zeros(n, n);
    for (i, row) in rows.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            m.set(i, j, v.to_complex());
        }
    }
    Ok(m)
}

fn real_matrix(rows: &[Vec<f64>]) -> Result<Mat, String> {
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err("matrix must be square and nonempty".into());
    }
    Mat::from_rows(rows).map_err(|e| e.to_string())
}

fn parse_frame(alg: &Algebra, spec: &FrameSpec) -> JordanFrame {
    match spec {
        FrameSpec::Standard => Element::unit(alg).spectral().into_parts().1,
        FrameSpec::RandomSeed(seed) => seeded_jordan_frame(alg, *seed),
    }
}

pub fn build_operator(alg: &Algebra, spec: &OperatorSpec) -> Result<LinearOperator, String> {
    match spec {
        OperatorSpec::Identity => Ok(LinearOperator::identity(alg)),
        OperatorSpec::Dense { matrix } => {
            let m = real_matrix(matrix)?;
            LinearOperator::from_matrix(alg.clone(), m).map_err(|e| e.to_string())
        }
        OperatorSpec::Lyapunov { a } => Ok(LinearOperator::lyapunov(&parse_element(alg, a)?)),
        OperatorSpec::Quad { a } => Ok(LinearOperator::quad(&parse_element(alg, a)?)),
        OperatorSpec::QuadPair { a, b } => {
            LinearOperator::quad_pair(&parse_element(alg, a)?, &parse_element(alg, b)?)
                .map_err(|e| e.to_string())
        }
        OperatorSpec::PowerPair { a, t } => {
            fixtures::power_pair_map(&parse_element(alg, a)?, *t).map_err(|e| e.to_string())
        }
        OperatorSpec::Schur { a, frame } => {
            let m = real_matrix(a)?;
            LinearOperator::schur(&m, &parse_frame(alg, frame)).map_err(|e| e.to_string())
        }
        OperatorSpec::Congruence { m } => {
            LinearOperator::congruence(alg, &complex_matrix(m)?).map_err(|e| e.to_string())
        }
        OperatorSpec::LyapunovMatrix { m } => {
            LinearOperator::lyapunov_matrix(alg, &complex_matrix(m)?).map_err(|e| e.to_string())
        }
        OperatorSpec::Scale { alpha, inner } => {
            Ok(build_operator(alg, inner)?.scale(*alpha))
        }
        OperatorSpec::Sum { parts } => {
            let ops = parts
                .iter()
                .map(|p| build_operator(alg, p))
                .collect::<Result<Vec<_>, _>>()?;
            LinearOperator::sum(ops).map_err(|e| e.to_string())
        }
        OperatorSpec::Compose { parts } => {
            let mut ops = parts.iter().map(|p| build_operator(alg, p));
            let first = ops.next().ok_or("compose needs at least one part")??;
            let mut acc = first;
            for op in ops {
                acc = acc.compose(&op?).map_err(|e| e.to_string())?;
            }
            Ok(acc)
        }
        OperatorSpec::Inverse { inner } => {
            build_operator(alg, inner)?.invert().map_err(|e| e.to_string())
        }
    }
}
