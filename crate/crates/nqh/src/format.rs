//! JSON input files: presentations, double Ore data and twisting systems.
//!
//! Elements are written either as an expression string (see [`crate::expr`]) or as an object
//! mapping words to scalars, e.g. `{"x1 x2": "1", "x2 x1": "1"}` with `""` for the empty word.

use std::collections::BTreeMap;
use std::path::Path;

use nqh_core::algebra::{xi_automorphism, GradedAlgebra, MatrixHom};
use nqh_core::deform::{build_clifford, CliffordData, DoubleOreData};
use nqh_core::exactlin::{Matrix, Scalar, TensorElement, Word};
use nqh_core::quadratic::{CentralElement, QuadraticPresentation};
use nqh_core::twist::{GradedBasisM2, TwistingSystemM2};
use serde::Deserialize;

use crate::expr::{parse_element, ParseError};

/// An element of a free algebra.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum ElementSpec {
    Text(String),
    Terms(BTreeMap<String, String>),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationFile {
    pub generators: Vec<String>,
    pub relations: Vec<ElementSpec>,
    /// Degree-2 lift of a central element.
    #[serde(default)]
    pub central: Option<ElementSpec>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DoubleOreFile {
    pub base: PresentationFile,
    /// The central element `z` of the base; `z + y1^2 + y2^2` is used on the extension.
    #[serde(default)]
    pub central: Option<ElementSpec>,
    pub p12: String,
    pub p11: String,
    /// `sigma[i][j]` maps each base generator to a linear combination of base generators.
    pub sigma: [[BTreeMap<String, String>; 2]; 2],
}

/// A square matrix over an algebra basis: explicit rows or one of `id`, `0`, `xi`
/// (the parity automorphism `a -> (-1)^|a| a`).
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum MapSpec {
    Named(String),
    Rows(Vec<Vec<String>>),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum BasisSpec {
    Named(String),
    Matrices([[[[String; 2]; 2]; 2]; 2]),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwistFile {
    /// A presentation with a central element; the twisting system acts on its Clifford deformation.
    pub algebra: PresentationFile,
    #[serde(default)]
    pub basis: Option<BasisSpec>,
    pub theta: [[[MapSpec; 2]; 2]; 2],
}

/// Input failures, reported with exit code 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

impl From<ParseError> for InputError {
    fn from(e: ParseError) -> Self {
        InputError(e.0)
    }
}

impl From<nqh_core::Error> for InputError {
    fn from(e: nqh_core::Error) -> Self {
        InputError(e.to_string())
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, InputError> {
    let text = std::fs::read_to_string(path).map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

/// Whether a JSON file holds double Ore data rather than a bare presentation.
pub fn is_double_ore(path: &Path) -> Result<bool, InputError> {
    let v: serde_json::Value = read_json(path)?;
    Ok(v.get("base").is_some())
}

pub fn scalar(s: &str) -> Result<Scalar, InputError> {
    s.parse().map_err(|e: nqh_core::Error| InputError(e.to_string()))
}

pub fn element(spec: &ElementSpec, names: &[String]) -> Result<TensorElement, InputError> {
    match spec {
        ElementSpec::Text(s) => Ok(parse_element(s, names)?),
        ElementSpec::Terms(terms) => {
            let mut t = TensorElement::zero();
            for (word, coeff) in terms {
                let letters = word
                    .split(|c: char| c.is_whitespace() || c == '.')
                    .filter(|s| !s.is_empty())
                    .map(|s| names.iter().position(|n| n == s).ok_or_else(|| InputError(format!("unknown generator {s:?}"))))
                    .collect::<Result<Vec<_>, _>>()?;
                t.add_term(Word(letters), &scalar(coeff)?);
            }
            Ok(t)
        }
    }
}

impl PresentationFile {
    pub fn presentation(&self) -> Result<QuadraticPresentation, InputError> {
        let rels = self.relations.iter().map(|r| element(r, &self.generators)).collect::<Result<Vec<_>, _>>()?;
        Ok(QuadraticPresentation::new(self.generators.clone(), &rels)?)
    }

    pub fn central_element(&self) -> Result<Option<CentralElement>, InputError> {
        self.central.as_ref().map(|c| Ok(CentralElement::new(element(c, &self.generators)?)?)).transpose()
    }

    pub fn require_central(&self) -> Result<CentralElement, InputError> {
        self.central_element()?.ok_or_else(|| InputError(String::from("the file has no \"central\" field")))
    }
}

impl DoubleOreFile {
    pub fn data(&self) -> Result<DoubleOreData, InputError> {
        let base = self.base.presentation()?;
        let names = base.generators().to_vec();
        let n = names.len();
        let table = |t: &BTreeMap<String, String>| -> Result<Matrix, InputError> {
            let mut m = Matrix::zero(n, n);
            for (g, img) in t {
                let col = names.iter().position(|x| x == g).ok_or_else(|| InputError(format!("unknown generator {g:?} in sigma")))?;
                let e = parse_element(img, &names)?;
                for (w, c) in e.terms() {
                    if w.len() != 1 {
                        return Err(InputError(format!("sigma image {img:?} is not linear")));
                    }
                    m[(w.letters()[0], col)] = c.clone();
                }
            }
            Ok(m)
        };
        let s = &self.sigma;
        let sigma = [[table(&s[0][0])?, table(&s[0][1])?], [table(&s[1][0])?, table(&s[1][1])?]];
        Ok(DoubleOreData::new(base, scalar(&self.p12)?, scalar(&self.p11)?, sigma)?)
    }

    /// The central element, falling back to the one given on the base presentation.
    pub fn require_central(&self) -> Result<CentralElement, InputError> {
        match &self.central {
            Some(c) => Ok(CentralElement::new(element(c, &self.base.generators)?)?),
            None => self.base.require_central(),
        }
    }
}

fn map_matrix(spec: &MapSpec, a: &GradedAlgebra) -> Result<Matrix, InputError> {
    let n = a.dim();
    match spec {
        MapSpec::Named(s) => match s.as_str() {
            "id" => Ok(Matrix::identity(n)),
            "0" => Ok(Matrix::zero(n, n)),
            "xi" => Ok(xi_automorphism(a, &Scalar::int(-1))?.matrix),
            other => Err(InputError(format!("unknown map name {other:?}; expected id, 0, xi or explicit rows"))),
        },
        MapSpec::Rows(rows) => {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(InputError(format!("map matrices must be {n}x{n}")));
            }
            let parsed = rows.iter().map(|r| r.iter().map(|s| scalar(s)).collect::<Result<Vec<_>, _>>()).collect::<Result<Vec<_>, _>>()?;
            Ok(Matrix::from_rows(&parsed, n)?)
        }
    }
}

impl TwistFile {
    /// The Clifford deformation carrying the twisting system, and the system itself.
    pub fn load(&self) -> Result<(CliffordData, TwistingSystemM2), InputError> {
        let p = self.algebra.presentation()?;
        let z = self.algebra.require_central()?;
        let c = build_clifford(&p, &z).map_err(|e| InputError(format!("cannot build the algebra: {e}")))?;
        let basis = match &self.basis {
            None => GradedBasisM2::canonical(),
            Some(BasisSpec::Named(s)) if s == "canonical" => GradedBasisM2::canonical(),
            Some(BasisSpec::Named(s)) if s == "real" => GradedBasisM2::real(),
            Some(BasisSpec::Named(s)) => return Err(InputError(format!("unknown basis {s:?}; expected canonical or real"))),
            Some(BasisSpec::Matrices(m)) => {
                let mat = |e: &[[String; 2]; 2]| -> Result<Matrix, InputError> {
                    let rows = e.iter().map(|r| r.iter().map(|s| scalar(s)).collect::<Result<Vec<_>, _>>()).collect::<Result<Vec<_>, _>>()?;
                    Ok(Matrix::from_rows(&rows, 2)?)
                };
                GradedBasisM2::new([[mat(&m[0][0])?, mat(&m[0][1])?], [mat(&m[1][0])?, mat(&m[1][1])?]])?
            }
        };
        let a = c.algebra();
        let hom = |t: &[[MapSpec; 2]; 2]| -> Result<MatrixHom, InputError> {
            Ok(MatrixHom::new([[map_matrix(&t[0][0], a)?, map_matrix(&t[0][1], a)?], [map_matrix(&t[1][0], a)?, map_matrix(&t[1][1], a)?]])?)
        };
        let theta = [hom(&self.theta[0])?, hom(&self.theta[1])?];
        Ok((c.clone(), TwistingSystemM2::new(basis, theta)?))
    }
}
