use serde::Serialize;

use crate::epw::fixed::EigenPoint;
use crate::epw::nodes::{CurveSpotCheck, NodeCensus};
use crate::epw::operators::QuadricReport;
use crate::error::{Error, Result};
use crate::report::{CensusReport, ComponentKind, ProvenanceItem};

/// Fixed locus of the involution on `Y_A`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FixedLocusDownstairs {
    pub eigen_points: Vec<EigenPoint>,
    pub quadric: QuadricReport,
    pub kummer_degree: usize,
    pub kummer_nodes: NodeCensus,
    pub quadric_kummer: Option<CurveSpotCheck>,
}

/// The lift to the double cover that fixes the surface over `Q`.
pub const LIFT_CONVENTION: &str =
    "the symplectic lift is the one fixing the surface over Q; the other lift is antisymplectic";

/// Counting rule on the double cover: two points over each eigen point off
/// the branch locus, one over each node, a K3 over the quadric.
pub fn census_upstairs(fl: &FixedLocusDownstairs) -> Result<CensusReport> {
    let missing = |s: &str| Err(Error::MissingCertificate(s.into()));
    if fl.eigen_points.len() != 6 {
        return missing("six eigen fixed points");
    }
    if fl.eigen_points.iter().any(|p| p.fiber.total != 1) {
        return missing("eigen points off W_A (fiber_dim = 1)");
    }
    if !fl.quadric.smooth {
        return missing("quadric smooth");
    }
    if !fl.kummer_nodes.count_ok() || !fl.kummer_nodes.all_rank_two() {
        return missing("16 nodes at rank 2");
    }
    Ok(CensusReport::from_items(vec![
        ProvenanceItem::new(
            ComponentKind::IsolatedPoint,
            2 * fl.eigen_points.len() as u64,
            "eigen_fixed_points",
            "two preimages of each point f1 + λ f2, which lies off the branch locus",
        ),
        ProvenanceItem::new(
            ComponentKind::IsolatedPoint,
            fl.kummer_nodes.nodes.len() as u64,
            "node_census",
            "the single preimage of each node of the Kummer surface S",
        ),
        ProvenanceItem::new(
            ComponentKind::K3Surface,
            1,
            "quadric_of_phi",
            format!("double cover of the smooth quadric Q branched along the quartic curve Q ∩ S ({LIFT_CONVENTION})"),
        ),
    ]))
}

/// The surface over `S` is not fixed by the symplectic lift: its canonical
/// class is not trivial. Encoded, not computed.
pub const SURFACE_OVER_KUMMER_VERDICT: &str = "surface over S not fixed (canonical class not trivial)";
