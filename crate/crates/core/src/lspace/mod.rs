//! Dehn-filling slopes, Turaev-torsion supports and the interval test that
//! certifies L-spaces through drilling-filling trees.

mod census;
mod cert;
mod group;
mod interval;
mod log;
mod slope;
mod verify;


use thiserror::Error;

pub use census::{parse_census, CensusTable};
pub use cert::{parse_certificate, Certificate, Payload, QhsNode, QhtNode};
pub use group::{d_tau_positive, longitude, AbGroup, Elem, IotaMap, TorsionData, MAX_TORSION};
pub use interval::candidate_intervals;
pub use log::{parse_log, Identified, LogKind, LogNode, StructuralCertificate};
pub use slope::{slope_in_interval, strictly_between, Slope, SlopeInterval};
pub use verify::{verify_certificate, NodeVerdict, QhtReport, Reason, Verdict, VerdictTree};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LspaceError {
    #[error("(0, 0) is not a slope")]
    ZeroSlope,
    #[error("the boundary map has a kernel of rank 2")]
    KernelRank,
    #[error("{0}")]
    Group(String),
    #[error("torsion: {0}")]
    Torsion(String),
    #[error("target {0} is the longitude")]
    TargetIsLongitude(Slope),
    #[error("slope coordinates overflow")]
    Overflow,
    #[error("no root")]
    NoRoot,
    #[error("malformed tree: {0}")]
    Malformed(String),
    #[error("census contradiction for {0}")]
    Contradiction(String),
    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
}
