//! Ready-made generators for the arrangements and clusters studied by the
//! rest of the crate: the hexagonal packing and covering, the sheared
//! high-density covering family, the split packing, and the economical
//! packing/covering clusters.

use std::f64::consts::TAU;
use std::str::FromStr;

use thiserror::Error;

use crate::diskunion::{Cluster, DiskUnionError};
use crate::geom::{Lattice, Point, Rect};
use crate::periodic::{PeriodicArrangement, PeriodicError};

pub const SQRT3: f64 = 1.732_050_807_568_877_2;

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error(transparent)]
    Periodic(#[from] PeriodicError),
    #[error(transparent)]
    Cluster(#[from] DiskUnionError),
    #[error(transparent)]
    Geom(#[from] crate::geom::GeomError),
    #[error("parameter a = {a} outside (0, {max}) for dimension {d}")]
    SheardCoveringParam { a: f64, d: usize, max: f64 },
    #[error("dimension must be at least 2, got {d}")]
    BadDimension { d: usize },
    #[error("slide must lie in [0, 1), got {slide}")]
    BadSlide { slide: f64 },
    #[error("inflation must be nonnegative, got {inflation}")]
    BadInflation { inflation: f64 },
    #[error("packing clusters are tangent configurations; scale must be 2, got {scale}")]
    PackingScaleFixed { scale: f64 },
    #[error("cluster scale must be positive, got {scale}")]
    BadScale { scale: f64 },
    #[error("unknown cluster kind `{0}`")]
    UnknownClusterKind(String),
}

/// The densest lattice packing with unit circles: basis `[[2,0],[1,sqrt3]]`,
/// one disk per cell.
pub fn hex_packing() -> PeriodicArrangement {
    let l = Lattice::new(vec![vec![2.0, 0.0], vec![1.0, SQRT3]]).expect("hex basis");
    PeriodicArrangement::new(l, vec![Point::ORIGIN], 1.0).expect("hex packing")
}

/// The thinnest covering with unit circles (Kershner), optionally inflated:
/// basis `[[sqrt3,0],[sqrt3/2,3/2]]`, radius `1 + inflation`.
pub fn hex_covering(inflation: f64) -> Result<PeriodicArrangement, ConstructionError> {
    if !(inflation >= 0.0) || !inflation.is_finite() {
        return Err(ConstructionError::BadInflation { inflation });
    }
    let l = Lattice::new(vec![vec![SQRT3, 0.0], vec![SQRT3 / 2.0, 1.5]])?;
    Ok(PeriodicArrangement::new(
        l,
        vec![Point::ORIGIN],
        1.0 + inflation,
    )?)
}

/// Basis of the sheared covering lattice in dimension `d`: generators
/// `v_i = a e_i` for `i < d` and
/// `v_d = (1 + sqrt(1 - a^2 (d-1) / 4)) e_d + (a/2) sum e_i`,
/// valid for `0 < a < 2 / sqrt(d-1)`. Unit balls at the lattice points form
/// a 2-reduced covering whose density grows without bound as `a` shrinks.
pub fn sheared_covering_basis(d: usize, a: f64) -> Result<Vec<Vec<f64>>, ConstructionError> {
    if d < 2 {
        return Err(ConstructionError::BadDimension { d });
    }
    let max = 2.0 / ((d - 1) as f64).sqrt();
    if !(a > 0.0 && a < max) || !a.is_finite() {
        return Err(ConstructionError::SheardCoveringParam { a, d, max });
    }
    let mut basis = vec![vec![0.0; d]; d];
    for (i, row) in basis.iter_mut().enumerate().take(d - 1) {
        row[i] = a;
    }
    let height = 1.0 + (1.0 - a * a * (d - 1) as f64 / 4.0).sqrt();
    for entry in basis[d - 1].iter_mut().take(d - 1) {
        *entry = a / 2.0;
    }
    basis[d - 1][d - 1] = height;
    Ok(basis)
}

/// Planar instance of the sheared covering (the one all checks run on):
/// basis `[[a, 0], [a/2, 1 + sqrt(1 - a^2/4)]]`, unit disks at the lattice
/// points.
pub fn sheared_covering(a: f64) -> Result<PeriodicArrangement, ConstructionError> {
    let basis = sheared_covering_basis(2, a)?;
    Ok(PeriodicArrangement::new(
        Lattice::new(basis)?,
        vec![Point::ORIGIN],
        1.0,
    )?)
}

/// The hexagonal packing split into two half-plane parts along a pair of
/// adjacent rows, the upper part slid sideways while the two boundary rows
/// keep contact: horizontal offset `1 - slide`, vertical distance
/// `sqrt(4 - (1-slide)^2)`, so adjacent cross-boundary centers stay at
/// distance exactly 2.
#[derive(Debug, Clone, Copy)]
pub struct SplitPacking {
    slide: f64,
}

impl SplitPacking {
    pub fn new(slide: f64) -> Result<SplitPacking, ConstructionError> {
        if !(0.0..1.0).contains(&slide) {
            return Err(ConstructionError::BadSlide { slide });
        }
        Ok(SplitPacking { slide })
    }

    pub fn slide(&self) -> f64 {
        self.slide
    }

    /// Offset applied to every row above the split.
    pub fn upper_shift(&self) -> Point {
        let off = 1.0 - self.slide;
        Point::new(-self.slide, (4.0 - off * off).sqrt() - SQRT3)
    }

    /// Distance between nearest centers of the two boundary rows.
    pub fn boundary_contact_distance(&self) -> f64 {
        let off = 1.0 - self.slide;
        (off * off + (SQRT3 + self.upper_shift().y).powi(2)).sqrt()
    }

    /// All centers whose unit disks intersect the window. Rows `j <= 0` of
    /// the hexagonal packing stay fixed; rows `j >= 1` are shifted.
    pub fn centers_in_window(&self, window: Rect) -> Vec<Point> {
        let shift = self.upper_shift();
        let mut out = Vec::new();
        let pad = 1.0;
        let j_min = ((window.y0 - pad - shift.y.min(0.0)) / SQRT3).floor() as i64 - 1;
        let j_max = ((window.y1 + pad + shift.y.max(0.0).abs()) / SQRT3).ceil() as i64 + 1;
        for j in j_min..=j_max {
            let (dx, dy) = if j >= 1 { (shift.x, shift.y) } else { (0.0, 0.0) };
            let y = j as f64 * SQRT3 + dy;
            if y < window.y0 - pad || y > window.y1 + pad {
                continue;
            }
            let parity = (j.rem_euclid(2)) as f64;
            let i_min = ((window.x0 - pad - parity - dx) / 2.0).floor() as i64 - 1;
            let i_max = ((window.x1 + pad - parity - dx) / 2.0).ceil() as i64 + 1;
            for i in i_min..=i_max {
                let x = 2.0 * i as f64 + parity + dx;
                if x >= window.x0 - pad && x <= window.x1 + pad {
                    out.push(Point::new(x, y));
                }
            }
        }
        out.sort_by(|a, b| a.lex_cmp(b));
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum ClusterKind {
    Pack2,
    Pack3,
    Pack7,
    Cover3,
    Cover4,
    Cover7,
}

impl ClusterKind {
    pub fn is_packing(&self) -> bool {
        matches!(self, ClusterKind::Pack2 | ClusterKind::Pack3 | ClusterKind::Pack7)
    }

    pub fn size(&self) -> usize {
        match self {
            ClusterKind::Pack2 => 2,
            ClusterKind::Pack3 | ClusterKind::Cover3 => 3,
            ClusterKind::Cover4 => 4,
            ClusterKind::Pack7 | ClusterKind::Cover7 => 7,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ClusterKind::Pack2 => "pack2",
            ClusterKind::Pack3 => "pack3",
            ClusterKind::Pack7 => "pack7",
            ClusterKind::Cover3 => "cover3",
            ClusterKind::Cover4 => "cover4",
            ClusterKind::Cover7 => "cover7",
        }
    }
}

impl FromStr for ClusterKind {
    type Err = ConstructionError;

    fn from_str(s: &str) -> Result<ClusterKind, ConstructionError> {
        match s {
            "pack2" => Ok(ClusterKind::Pack2),
            "pack3" => Ok(ClusterKind::Pack3),
            "pack7" => Ok(ClusterKind::Pack7),
            "cover3" => Ok(ClusterKind::Cover3),
            "cover4" => Ok(ClusterKind::Cover4),
            "cover7" => Ok(ClusterKind::Cover7),
            other => Err(ConstructionError::UnknownClusterKind(other.to_string())),
        }
    }
}

/// Economical clusters of unit circles. Packing clusters are tangent
/// configurations (scale fixed at 2); covering clusters take a free scale.
pub fn cluster(kind: ClusterKind, scale: f64) -> Result<Cluster, ConstructionError> {
    if !(scale > 0.0) || !scale.is_finite() {
        return Err(ConstructionError::BadScale { scale });
    }
    if kind.is_packing() && scale != 2.0 {
        return Err(ConstructionError::PackingScaleFixed { scale });
    }
    let pts = match kind {
        ClusterKind::Pack2 => vec![Point::ORIGIN, Point::new(2.0, 0.0)],
        ClusterKind::Pack3 => vec![Point::ORIGIN, Point::new(2.0, 0.0), Point::new(1.0, SQRT3)],
        ClusterKind::Pack7 => flower(2.0),
        ClusterKind::Cover3 => vec![
            Point::ORIGIN,
            Point::new(scale, 0.0),
            Point::new(scale / 2.0, scale * SQRT3 / 2.0),
        ],
        ClusterKind::Cover4 => vec![
            Point::ORIGIN,
            Point::new(scale, 0.0),
            Point::new(0.0, scale),
            Point::new(scale, scale),
        ],
        ClusterKind::Cover7 => flower(scale),
    };
    Ok(Cluster::new(pts)?)
}

fn flower(radius: f64) -> Vec<Point> {
    let mut pts = vec![Point::ORIGIN];
    for k in 0..6 {
        let t = TAU * k as f64 / 6.0;
        pts.push(Point::new(radius * t.cos(), radius * t.sin()));
    }
    pts
}
