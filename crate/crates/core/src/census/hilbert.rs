use serde::Serialize;

use crate::error::{Error, Result};
use crate::exalg::binomial;
use crate::report::{CensusReport, ComponentKind, ProvenanceItem};

/// `h^{1,1}` of a K3 surface.
pub const K3_H11: i64 = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertCensusInput {
    /// Isolated fixed points of the involution on the K3.
    pub k: u64,
    /// Trace on `H^{1,1}` of the K3.
    pub tau_s: i64,
}

impl Default for HilbertCensusInput {
    fn default() -> Self {
        HilbertCensusInput { k: 8, tau_s: 4 }
    }
}

/// Fixed locus of the natural involution on the Hilbert square of a K3.
pub fn hilbert_census(inp: &HilbertCensusInput) -> Result<CensusReport> {
    if inp.k < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 fixed points, got {}", inp.k)));
    }
    let pairs = binomial(inp.k as usize, 2) as u64;
    Ok(CensusReport::from_items(vec![
        ProvenanceItem::new(
            ComponentKind::IsolatedPoint,
            pairs,
            "hilbert_census",
            format!("subschemes {{p_i, p_j}} of distinct fixed points, C({}, 2)", inp.k),
        ),
        ProvenanceItem::new(
            ComponentKind::K3Surface,
            1,
            "hilbert_census",
            "closure of the locus {p, σ(p)} with p not fixed",
        ),
    ]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantDims {
    pub surface: i64,
    pub fourfold: i64,
    pub tau_x: i64,
}

pub fn hilbert_invariant_dims(inp: &HilbertCensusInput) -> Result<InvariantDims> {
    let t = inp.tau_s;
    if t.abs() > K3_H11 || (K3_H11 - t).rem_euclid(2) != 0 {
        return Err(Error::InvalidArgument(format!("trace {t} impossible on H^{{1,1}} of a K3")));
    }
    let surface = (K3_H11 + t) / 2;
    // the exceptional class is invariant
    let fourfold = surface + 1;
    let tau_x = t + 1;
    debug_assert_eq!(2 * fourfold - (K3_H11 + 1), tau_x);
    Ok(InvariantDims { surface, fourfold, tau_x })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_census() {
        let r = hilbert_census(&HilbertCensusInput::default()).unwrap();
        assert_eq!((r.n, r.k, r.abelian), (28, 1, 0));
        assert!(r.provenance_complete());
        assert_eq!(hilbert_census(&HilbertCensusInput { k: 2, tau_s: 4 }).unwrap().n, 1);
        assert!(hilbert_census(&HilbertCensusInput { k: 1, tau_s: 4 }).is_err());
    }

    #[test]
    fn dims() {
        let d = hilbert_invariant_dims(&HilbertCensusInput::default()).unwrap();
        assert_eq!((d.surface, d.fourfold, d.tau_x), (12, 13, 5));
        let id = hilbert_invariant_dims(&HilbertCensusInput { k: 0, tau_s: 20 }).unwrap();
        assert_eq!((id.surface, id.fourfold, id.tau_x), (20, 21, 21));
        assert!(hilbert_invariant_dims(&HilbertCensusInput { k: 8, tau_s: 5 }).is_err());
        assert!(hilbert_invariant_dims(&HilbertCensusInput { k: 8, tau_s: 22 }).is_err());
    }
}
