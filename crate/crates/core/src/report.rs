use num::rational::BigRational;
use serde::{Serialize, Serializer};

use crate::linalg::Matrix;

/// Rationals serialize as `"p/q"` (or `"p"` when integral).
pub fn ser_rational<S: Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub fn ser_rationals<S: Serializer>(xs: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|x| x.to_string()))
}

pub fn ser_matrix<S: Serializer>(m: &Matrix<BigRational>, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(m.row_vecs().iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentKind {
    IsolatedPoint,
    K3Surface,
    AbelianSurface,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProvenanceItem {
    pub kind: ComponentKind,
    pub count: u64,
    /// Operation that produced the count.
    pub source: String,
    pub detail: String,
}

impl ProvenanceItem {
    pub fn new(kind: ComponentKind, count: u64, source: &str, detail: impl Into<String>) -> Self {
        ProvenanceItem { kind, count, source: source.into(), detail: detail.into() }
    }
}

/// Fixed-locus census: isolated points, K3 surfaces and abelian surfaces.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CensusReport {
    pub n: u64,
    pub k: u64,
    pub abelian: u64,
    pub items: Vec<ProvenanceItem>,
}

impl CensusReport {
    pub fn from_items(items: Vec<ProvenanceItem>) -> Self {
        let total = |kind| items.iter().filter(|i| i.kind == kind).map(|i| i.count).sum();
        CensusReport {
            n: total(ComponentKind::IsolatedPoint),
            k: total(ComponentKind::K3Surface),
            abelian: total(ComponentKind::AbelianSurface),
            items,
        }
    }

    /// Every counted component is accounted for by some provenance item.
    pub fn provenance_complete(&self) -> bool {
        let rebuilt = Self::from_items(self.items.clone());
        rebuilt.n == self.n && rebuilt.k == self.k && rebuilt.abelian == self.abelian
    }

    pub fn pair(&self) -> (u64, u64) {
        (self.n, self.k)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificate {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Certificate {
    pub fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Certificate { name: name.into(), passed, detail: detail.into() }
    }
}

pub fn first_failure(certs: &[Certificate]) -> Option<&Certificate> {
    certs.iter().find(|c| !c.passed)
}
