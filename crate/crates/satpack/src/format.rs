//! Textual file formats: arrangements, clusters, and result records.
//!
//! Files are JSON with struct-ordered keys and shortest round-trip decimal
//! floats, so `parse(serialize(x)) == x` holds bit-for-bit and files diff
//! cleanly. Parsing validates shapes and finiteness before anything
//! geometric touches the data.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::checker::{ReplacementWitness, VerdictStatus};
use crate::diskunion::Cluster;
use crate::engine::AuditEntry;
use crate::geom::{Lattice, Point};
use crate::periodic::{CoverStatus, PeriodicArrangement, PeriodicError};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("dim must be at least 2, got {dim}")]
    BadDim { dim: usize },
    #[error("basis must be a dim x dim matrix of finite numbers")]
    BadBasis,
    #[error("motif must be nonempty rows of dim finite coordinates")]
    BadMotif,
    #[error("radius must be positive and finite, got {radius}")]
    BadRadius { radius: f64 },
    #[error("cluster must contain at least one center with finite coordinates")]
    BadCluster,
    #[error("planar checks require dim = 2, this file has dim {dim}")]
    NotPlanar { dim: usize },
    #[error(transparent)]
    Periodic(#[from] PeriodicError),
    #[error(transparent)]
    Cluster(#[from] crate::diskunion::DiskUnionError),
}

/// On-disk arrangement: `dim`, row-major `basis` generators, `motif`
/// coordinate rows, common `radius`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArrangementFile {
    pub dim: usize,
    pub basis: Vec<Vec<f64>>,
    pub motif: Vec<Vec<f64>>,
    pub radius: f64,
}

impl ArrangementFile {
    pub fn validate(&self) -> Result<(), FormatError> {
        if self.dim < 2 {
            return Err(FormatError::BadDim { dim: self.dim });
        }
        if self.basis.len() != self.dim
            || self
                .basis
                .iter()
                .any(|row| row.len() != self.dim || row.iter().any(|v| !v.is_finite()))
        {
            return Err(FormatError::BadBasis);
        }
        if self.motif.is_empty()
            || self
                .motif
                .iter()
                .any(|row| row.len() != self.dim || row.iter().any(|v| !v.is_finite()))
        {
            return Err(FormatError::BadMotif);
        }
        if !(self.radius > 0.0) || !self.radius.is_finite() {
            return Err(FormatError::BadRadius {
                radius: self.radius,
            });
        }
        Ok(())
    }

    pub fn from_arrangement(a: &PeriodicArrangement) -> ArrangementFile {
        ArrangementFile {
            dim: 2,
            basis: a.lattice().basis().to_vec(),
            motif: a.motif().iter().map(|p| vec![p.x, p.y]).collect(),
            radius: a.radius(),
        }
    }

    /// Planar arrangement for the checking machinery; errors on dim > 2.
    pub fn to_arrangement(&self) -> Result<PeriodicArrangement, FormatError> {
        self.validate()?;
        if self.dim != 2 {
            return Err(FormatError::NotPlanar { dim: self.dim });
        }
        let lattice = Lattice::new(self.basis.clone()).map_err(PeriodicError::from)?;
        let motif = self
            .motif
            .iter()
            .map(|row| Point::new(row[0], row[1]))
            .collect();
        Ok(PeriodicArrangement::new(lattice, motif, self.radius)?)
    }
}

pub fn parse_arrangement(text: &str) -> Result<ArrangementFile, FormatError> {
    let file: ArrangementFile = serde_json::from_str(text)?;
    file.validate()?;
    Ok(file)
}

pub fn serialize_arrangement(file: &ArrangementFile) -> String {
    let mut s = serde_json::to_string_pretty(file).expect("arrangement serializes");
    s.push('\n');
    s
}

/// On-disk cluster: unit-disk centers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterFile {
    pub centers: Vec<[f64; 2]>,
}

impl ClusterFile {
    pub fn validate(&self) -> Result<(), FormatError> {
        if self.centers.is_empty()
            || self
                .centers
                .iter()
                .any(|c| !c[0].is_finite() || !c[1].is_finite())
        {
            return Err(FormatError::BadCluster);
        }
        Ok(())
    }

    pub fn from_cluster(c: &Cluster) -> ClusterFile {
        ClusterFile {
            centers: c.centers().iter().map(|p| [p.x, p.y]).collect(),
        }
    }

    pub fn to_cluster(&self) -> Result<Cluster, FormatError> {
        self.validate()?;
        Ok(Cluster::new(
            self.centers.iter().map(|c| Point::new(c[0], c[1])).collect(),
        )?)
    }
}

pub fn parse_cluster(text: &str) -> Result<ClusterFile, FormatError> {
    let file: ClusterFile = serde_json::from_str(text)?;
    file.validate()?;
    Ok(file)
}

pub fn serialize_cluster(file: &ClusterFile) -> String {
    let mut s = serde_json::to_string_pretty(file).expect("cluster serializes");
    s.push('\n');
    s
}

/// What a command produced, in machine-readable form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Outcome {
    Verdict {
        status: VerdictStatus,
        witness: Option<ReplacementWitness>,
        resolution: f64,
    },
    Cover {
        status: CoverStatus,
        witness: Option<(f64, f64)>,
        margin: f64,
        resolution: f64,
    },
    Packing {
        certified: bool,
        dist: Option<f64>,
    },
    Bound {
        n: usize,
        side: String,
        bound: f64,
        area_lower: f64,
        area_upper: f64,
        scale: Option<f64>,
        paper_value: Option<f64>,
        abs_err: Option<f64>,
    },
    Value {
        value: f64,
    },
    Audit {
        final_density: f64,
        motif_len: usize,
        entries: Vec<AuditEntry>,
    },
}

/// A reproducible record of one CLI invocation: re-running the recorded
/// command reproduces the record bit-for-bit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub command: String,
    pub inputs: serde_json::Value,
    pub outcome: Outcome,
    pub tool_version: String,
    pub seed: Option<u64>,
}

pub fn parse_result(text: &str) -> Result<ResultRecord, FormatError> {
    Ok(serde_json::from_str(text)?)
}

pub fn serialize_result(record: &ResultRecord) -> String {
    let mut s = serde_json::to_string_pretty(record).expect("record serializes");
    s.push('\n');
    s
}
