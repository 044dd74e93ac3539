use num::rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::epw::nodes::SearchConfig;
use crate::epw::operators::{SelfAdjointOp, SymmetricPhi};
use crate::error::{Error, Result};
use crate::exalg::MultiVectorRecord;
use crate::linalg::Matrix;
use crate::scalar;

type Q = BigRational;

pub const REFERENCE_TOML: &str = include_str!("../../fixtures/reference.toml");

/// EPW instance file: `u` by spectral data or matrix, `φ` by a frame `P`
/// (`B = Pᵀ diag(1,-1,1,-1) P`) or the matrix `B`.
#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceConfig {
    pub name: String,
    pub u: OperatorSpec,
    pub phi: PhiSpec,
    #[serde(default)]
    pub search: SearchSpec,
    #[serde(default)]
    pub checks: CheckSpec,
}

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorSpec {
    pub eigenvalues: Option<Vec<String>>,
    pub eigenvectors: Option<Vec<MultiVectorRecord>>,
    pub matrix: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct PhiSpec {
    pub frame: Option<Vec<Vec<String>>>,
    pub b: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, Default, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SearchSpec {
    pub starts: Option<usize>,
    pub residual_tol: Option<f64>,
    pub dedupe_tol: Option<f64>,
    pub seed: Option<u64>,
    pub max_charts: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields, default)]
pub struct CheckSpec {
    pub decomposable_budget: usize,
    pub sigma_samples: usize,
    pub curve_lines: usize,
}

impl Default for CheckSpec {
    fn default() -> Self {
        CheckSpec { decomposable_budget: 1000, sigma_samples: 100, curve_lines: 10 }
    }
}

fn parse_rational(s: &str) -> Result<Q> {
    scalar::parse_rational(s).ok_or_else(|| Error::Parse(format!("not a rational number: {s:?}")))
}

fn parse_matrix(rows: &[Vec<String>]) -> Result<Matrix<Q>> {
    let parsed: Vec<Vec<Q>> =
        rows.iter().map(|r| r.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
    if parsed.iter().any(|r| r.len() != parsed.len()) {
        return Err(Error::Parse("matrix must be square".into()));
    }
    Ok(Matrix::from_rows(parsed))
}

impl InstanceConfig {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn reference() -> Self {
        Self::parse(REFERENCE_TOML).expect("shipped fixture parses")
    }

    pub fn operator(&self) -> Result<SelfAdjointOp> {
        match (&self.u.eigenvalues, &self.u.eigenvectors, &self.u.matrix) {
            (Some(ev), Some(vecs), None) => {
                let ev: Vec<Q> = ev.iter().map(|s| parse_rational(s)).collect::<Result<_>>()?;
                let vecs = vecs.iter().map(|r| r.to_multivector(6)).collect::<Result<Vec<_>>>()?;
                SelfAdjointOp::from_spectral(&vecs, &ev)
            }
            (None, None, Some(m)) => SelfAdjointOp::from_matrix(parse_matrix(m)?),
            _ => Err(Error::Parse("u needs either eigenvalues + eigenvectors or matrix".into())),
        }
    }

    pub fn phi(&self) -> Result<SymmetricPhi> {
        match (&self.phi.frame, &self.phi.b) {
            (Some(p), None) => SymmetricPhi::split_from_frame(parse_matrix(p)?),
            (None, Some(b)) => SymmetricPhi::new(parse_matrix(b)?),
            _ => Err(Error::Parse("phi needs exactly one of frame or b".into())),
        }
    }

    pub fn search_config(&self) -> SearchConfig {
        let d = SearchConfig::default();
        let s = &self.search;
        SearchConfig {
            starts: s.starts.unwrap_or(d.starts),
            residual_tol: s.residual_tol.unwrap_or(d.residual_tol),
            dedupe_tol: s.dedupe_tol.unwrap_or(d.dedupe_tol),
            seed: s.seed.unwrap_or(d.seed),
            max_charts: s.max_charts.unwrap_or(d.max_charts),
            ..d
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_fixture_matches_builtin() {
        let cfg = InstanceConfig::reference();
        assert_eq!(cfg.operator().unwrap(), SelfAdjointOp::reference());
        assert_eq!(cfg.phi().unwrap(), SymmetricPhi::reference());
        assert_eq!(cfg.search_config(), SearchConfig::default());
    }

    #[test]
    fn matrix_form() {
        let text = r#"
name = "m"
[u]
matrix = [["1","0","0","0","0","0"],["0","2","0","0","0","0"],["0","0","3","0","0","0"],["0","0","0","3","0","0"],["0","0","0","0","2","0"],["0","0","0","0","0","1"]]
[phi]
b = [["1","0","0","0"],["0","1","0","0"],["0","0","1","0"],["0","0","0","1"]]
"#;
        let cfg = InstanceConfig::parse(text).unwrap();
        assert!(cfg.operator().is_ok());
        assert!(cfg.phi().unwrap().frame().is_none());
    }

    #[test]
    fn bad_configs() {
        assert!(InstanceConfig::parse("name = 1").is_err());
        let text = "name = \"x\"\n[u]\n[phi]\nb = [[\"1\"]]\n";
        let cfg = InstanceConfig::parse(text).unwrap();
        assert!(cfg.operator().is_err());
        assert!(cfg.phi().is_err());
    }
}
