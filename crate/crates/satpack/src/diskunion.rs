//! Areas of unions of congruent disks, outer parallel domains (dilations),
//! and inner parallel domains (erosions).
//!
//! Union areas come from a boundary-arc decomposition: for each circle we
//! keep the arcs not covered by any other disk and integrate them with
//! Green's theorem. This stays well conditioned where inclusion-exclusion
//! degenerates (seven-disk clusters).
//!
//! Erosion membership asks whether the whole unit ball at `p` sits inside
//! the union. The kernel is an angular arc cover (direction `u` is covered
//! by center `c` at distance `d` iff `d <= 2 cos(angle(u, c - p))`), plus an
//! interior check at circumcenters of center triples: a covered boundary
//! circle can still enclose an uncovered hole of the union, and every such
//! hole contains a local maximum of the nearest-center distance.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::geom::{circumcircle, AngularArcSet, Point, Rect};

/// Max cluster size accepted by the exact-arcs area routines.
pub const MAX_CLUSTER: usize = 64;

#[derive(Debug, Error)]
pub enum DiskUnionError {
    #[error("cluster must be nonempty")]
    EmptyCluster,
    #[error("cluster centers must be finite")]
    NonFiniteCenters,
    #[error("cluster has {n} disks, limit is {MAX_CLUSTER}")]
    TooManyDisks { n: usize },
    #[error("centers {i} and {j} are nearly identical (distance {d:e})")]
    NearIdenticalCenters { i: usize, j: usize, d: f64 },
    #[error("radius must be positive and finite, got {r}")]
    BadRadius { r: f64 },
    #[error("dilation amount must be nonnegative and finite, got {t}")]
    BadDilation { t: f64 },
    #[error("sampling box is degenerate")]
    DegenerateBox,
    #[error("monte carlo oracle needs at least 10^4 samples, got {samples}")]
    TooFewSamples { samples: u64 },
    #[error("erosion grid hit the resolution floor; widest bracket [{lower}, {upper}]")]
    InconclusiveErosion { lower: f64, upper: f64 },
    #[error("grid resolution must be positive and finite, got {h}")]
    BadResolution { h: f64 },
}

/// A finite cluster of unit-disk centers (common radius 1 implied).
#[derive(Debug, Clone, PartialEq)]
pub struct Cluster {
    centers: Vec<Point>,
}

impl Cluster {
    pub fn new(centers: Vec<Point>) -> Result<Cluster, DiskUnionError> {
        if centers.is_empty() {
            return Err(DiskUnionError::EmptyCluster);
        }
        if centers.iter().any(|c| !c.is_finite()) {
            return Err(DiskUnionError::NonFiniteCenters);
        }
        for i in 0..centers.len() {
            for j in i + 1..centers.len() {
                let d = centers[i].dist(centers[j]);
                if d < 1e-12 {
                    return Err(DiskUnionError::NearIdenticalCenters { i, j, d });
                }
            }
        }
        Ok(Cluster { centers })
    }

    pub fn centers(&self) -> &[Point] {
        &self.centers
    }

    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    pub fn min_pairwise_distance(&self) -> f64 {
        let mut best = f64::INFINITY;
        for i in 0..self.centers.len() {
            for j in i + 1..self.centers.len() {
                best = best.min(self.centers[i].dist(self.centers[j]));
            }
        }
        best
    }

    /// Applies `p -> rot(p) + shift` to every center.
    pub fn transformed(&self, angle: f64, shift: Point) -> Cluster {
        Cluster {
            centers: self
                .centers
                .iter()
                .map(|c| c.rotate(angle).add(shift))
                .collect(),
        }
    }

    pub fn bounding_box(&self, pad: f64) -> Rect {
        let mut r = Rect::new(
            f64::INFINITY,
            f64::INFINITY,
            f64::NEG_INFINITY,
            f64::NEG_INFINITY,
        );
        for c in &self.centers {
            r.x0 = r.x0.min(c.x);
            r.y0 = r.y0.min(c.y);
            r.x1 = r.x1.max(c.x);
            r.y1 = r.y1.max(c.y);
        }
        Rect::new(r.x0 - pad, r.y0 - pad, r.x1 + pad, r.y1 + pad)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AreaMethod {
    ExactArcs,
    CertifiedGrid,
    MonteCarlo,
}

/// A two-sided area estimate. For `ExactArcs` the width is at most `1e-9`
/// relative; `CertifiedGrid` brackets are sound by construction; for
/// `MonteCarlo` the bracket is the 3-sigma confidence interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AreaBracket {
    pub lower: f64,
    pub upper: f64,
    pub method: AreaMethod,
    /// Sample count (Monte Carlo) or final grid step (certified grid) or
    /// relative slack (exact arcs).
    pub samples_or_resolution: f64,
}

impl AreaBracket {
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lower <= v && v <= self.upper
    }
}

const EXACT_REL_SLACK: f64 = 4.5e-10;

/// Area of the union of disks of radius `r` at the cluster centers, by
/// boundary-arc decomposition and Green's theorem.
pub fn union_area_exact(cluster: &Cluster, r: f64) -> Result<AreaBracket, DiskUnionError> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(DiskUnionError::BadRadius { r });
    }
    let n = cluster.len();
    if n > MAX_CLUSTER {
        return Err(DiskUnionError::TooManyDisks { n });
    }
    let centers = cluster.centers();
    let mut area = 0.0;
    for (i, &ci) in centers.iter().enumerate() {
        // Directions of this circle covered by the other disks. Equal radii:
        // the covered arc is centered on the neighbor direction with
        // half-width acos(d / 2r), always < pi/2, so no disk swallows another.
        let mut covered: Vec<(f64, f64)> = Vec::new();
        for (j, &cj) in centers.iter().enumerate() {
            if i == j {
                continue;
            }
            let d = ci.dist(cj);
            if d < 1e-12 {
                return Err(DiskUnionError::NearIdenticalCenters { i, j, d });
            }
            if d >= 2.0 * r {
                continue; // disjoint or tangent: no boundary coverage
            }
            let half = (d / (2.0 * r)).clamp(-1.0, 1.0).acos();
            if half <= 0.0 {
                continue;
            }
            let mid = (cj.y - ci.y).atan2(cj.x - ci.x);
            covered.push((mid - half, 2.0 * half));
        }
        let arcs = AngularArcSet::from_arcs(covered);
        for (start, width) in arcs.gaps() {
            area += green_arc_term(ci, r, start, start + width);
        }
    }
    let slack = area.abs() * EXACT_REL_SLACK;
    Ok(AreaBracket {
        lower: area - slack,
        upper: area + slack,
        method: AreaMethod::ExactArcs,
        samples_or_resolution: EXACT_REL_SLACK,
    })
}

/// Green's-theorem contribution of the ccw arc of the circle at `c` with
/// radius `r` from angle `t1` to `t2`.
fn green_arc_term(c: Point, r: f64, t1: f64, t2: f64) -> f64 {
    0.5 * (r * r * (t2 - t1) + r * c.x * (t2.sin() - t1.sin()) - r * c.y * (t2.cos() - t1.cos()))
}

/// Area of the outer parallel domain of radius `t` of the unit-disk union:
/// for congruent disks this is the union of radius `1 + t` disks at the
/// same centers.
pub fn dilated_union_area(cluster: &Cluster, t: f64) -> Result<AreaBracket, DiskUnionError> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(DiskUnionError::BadDilation { t });
    }
    union_area_exact(cluster, 1.0 + t)
}

/// Exact evaluator for the "uncovered depth" of a unit ball at `p`:
///
/// `depth(p) = max over x in B(1,p) of (min_i |x - c_i|) - 1`.
///
/// Nonpositive iff `B(1,p)` is contained in the union of unit disks at the
/// cluster centers; 1-Lipschitz in `p`, which is what certifies grid cells.
///
/// The maximum of a min-of-distances over a closed disk is attained either
/// at a local max in the interior (a circumcenter of three centers) or on
/// the boundary circle (at a bisector crossing or at the antipode of a
/// center), so evaluating that finite candidate set is exact.
#[derive(Debug, Clone)]
pub struct ErosionOracle {
    centers: Vec<Point>,
    /// circumcenters of center triples with their nearest-center distance
    vertices: Vec<(Point, f64)>,
}

impl ErosionOracle {
    pub fn new(cluster: &Cluster) -> ErosionOracle {
        ErosionOracle::from_centers(cluster.centers().to_vec())
    }

    /// Oracle over a raw center list (duplicates tolerated; collinear
    /// triples contribute no circumcenter).
    pub fn from_centers(centers: Vec<Point>) -> ErosionOracle {
        let n = centers.len();
        let mut vertices = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    if let Some(c) = circumcircle(centers[i], centers[j], centers[k]) {
                        let f = min_dist(c.center, &centers);
                        vertices.push((c.center, f));
                    }
                }
            }
        }
        ErosionOracle { centers, vertices }
    }

    /// `max over x in B(1,p) of min_i |x - c_i|, minus 1`.
    pub fn depth(&self, p: Point) -> f64 {
        self.ball_max_min_dist(p, 1.0) - 1.0
    }

    /// Exact `max over x in B(R,p) of min_i |x - c_i|` via the finite
    /// candidate set (interior circumcenters, boundary bisector crossings,
    /// boundary antipodes).
    pub fn ball_max_min_dist(&self, p: Point, radius: f64) -> f64 {
        let mut best = f64::NEG_INFINITY;
        for &(v, f) in &self.vertices {
            if f > best && v.dist(p) <= radius {
                best = f;
            }
        }
        let n = self.centers.len();
        let mut evaluated_any = false;
        for i in 0..n {
            let ci = self.centers[i];
            let d = p.dist(ci);
            if d > 0.0 {
                let u = p.sub(ci).scale(1.0 / d);
                let x = p.add(u.scale(radius));
                best = best.max(min_dist(x, &self.centers));
                evaluated_any = true;
            }
            for j in i + 1..n {
                let cj = self.centers[j];
                // bisector of (ci, cj) intersected with the circle of the ball
                let dir = cj.sub(ci);
                let nn = dir.norm();
                if nn < 1e-300 {
                    continue;
                }
                let nhat = dir.scale(1.0 / nn);
                let mid = Point::new((ci.x + cj.x) / 2.0, (ci.y + cj.y) / 2.0);
                let t0 = mid.sub(p).dot(nhat);
                if t0.abs() > radius {
                    continue;
                }
                let s = (radius * radius - t0 * t0).max(0.0).sqrt();
                let perp = Point::new(-nhat.y, nhat.x);
                for sign in [-1.0, 1.0] {
                    let x = p.add(nhat.scale(t0)).add(perp.scale(sign * s));
                    best = best.max(min_dist(x, &self.centers));
                    evaluated_any = true;
                }
            }
        }
        if !evaluated_any {
            // single center coinciding with p: min-dist on the boundary is
            // exactly the ball radius
            best = best.max(radius);
        }
        best
    }
}

pub fn min_dist(x: Point, centers: &[Point]) -> f64 {
    let mut best = f64::INFINITY;
    for &c in centers {
        best = best.min(x.dist(c));
    }
    best
}

/// True iff the unit ball at `p` is contained in the union of unit disks at
/// the cluster centers.
pub fn erosion_contains(cluster: &Cluster, p: Point) -> bool {
    ErosionOracle::new(cluster).depth(p) <= 1e-12
}

/// Certified bracket on the area of the inner parallel domain of radius 1
/// of the unit-disk union. `h` is the initial grid step; cells refine until
/// `upper - lower <= 1e-3 * max(upper, 0.01)`. The step floor sits at
/// 2.5e-5: small clusters (three-disk covering shapes) genuinely need steps
/// below 1e-4 before the boundary band is thin enough for that tolerance.
pub fn erosion_area(cluster: &Cluster, h: f64) -> Result<AreaBracket, DiskUnionError> {
    erosion_area_with(cluster, h, 1e-3, 2.5e-5)
}

/// Same certified grid with caller-chosen relative tolerance and floor.
/// Exposed for scale sweeps that only need a coarse bracket.
pub fn erosion_area_with(
    cluster: &Cluster,
    h: f64,
    rel_tol: f64,
    floor: f64,
) -> Result<AreaBracket, DiskUnionError> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(DiskUnionError::BadResolution { h });
    }
    let oracle = ErosionOracle::new(cluster);
    // The erosion is contained in the union, so a 1-padded bounding box of
    // the centers suffices.
    let bbox = cluster.bounding_box(1.0 + h);
    let mut cells: Vec<(Point, f64)> = Vec::new();
    let nx = (bbox.width() / h).ceil() as usize;
    let ny = (bbox.height() / h).ceil() as usize;
    for i in 0..nx {
        for j in 0..ny {
            let cx = bbox.x0 + (i as f64 + 0.5) * h;
            let cy = bbox.y0 + (j as f64 + 0.5) * h;
            cells.push((Point::new(cx, cy), h));
        }
    }
    let mut inside = 0.0;
    let mut step = h;
    loop {
        let mut pending_area = 0.0;
        let mut next: Vec<(Point, f64)> = Vec::new();
        let rho = step * std::f64::consts::FRAC_1_SQRT_2;
        for (c, s) in cells {
            // Inside: every q in the cell has B(1,q) inside B(1+rho,c), so
            // covering the enlarged ball certifies the whole cell. The
            // closed test tolerates the tangency-critical clusters where
            // the nearest-center distance is exactly 1 on interior holes.
            if oracle.ball_max_min_dist(c, 1.0 + rho) <= 1.0 + 1e-12 {
                inside += s * s;
                continue;
            }
            // Outside: an uncovered point within 1 - rho of the cell center
            // lies in B(1,q) for every q in the cell.
            let certified_outside = (rho < 1.0
                && oracle.ball_max_min_dist(c, 1.0 - rho) > 1.0 + 1e-12)
                || oracle.depth(c) >= rho;
            if certified_outside {
                continue;
            }
            pending_area += s * s;
            next.push((c, s));
        }
        let lower = inside;
        let upper = inside + pending_area;
        if upper - lower <= rel_tol * upper.max(0.01) {
            return Ok(AreaBracket {
                lower,
                upper,
                method: AreaMethod::CertifiedGrid,
                samples_or_resolution: step,
            });
        }
        if step / 2.0 < floor {
            return Err(DiskUnionError::InconclusiveErosion { lower, upper });
        }
        step /= 2.0;
        cells = Vec::with_capacity(next.len() * 4);
        for (c, s) in next {
            let q = s / 4.0;
            for (dx, dy) in [(-q, -q), (q, -q), (-q, q), (q, q)] {
                cells.push((Point::new(c.x + dx, c.y + dy), s / 2.0));
            }
        }
    }
}

const MC_BATCH: u64 = 1 << 16;

/// Unbiased Monte-Carlo area estimate of `{p in box : predicate(p)}` with a
/// reported 3-sigma bracket. Deterministic given the seed: samples are drawn
/// in fixed-size batches on counter-derived ChaCha streams, so the result
/// does not depend on evaluation order.
pub fn mc_area_oracle(
    predicate: impl Fn(Point) -> bool,
    sample_box: Rect,
    samples: u64,
    seed: u64,
) -> Result<AreaBracket, DiskUnionError> {
    if samples < 10_000 {
        return Err(DiskUnionError::TooFewSamples { samples });
    }
    if sample_box.is_degenerate() {
        return Err(DiskUnionError::DegenerateBox);
    }
    let mut hits: u64 = 0;
    let mut remaining = samples;
    let mut batch_idx: u64 = 0;
    while remaining > 0 {
        let count = remaining.min(MC_BATCH);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(batch_idx);
        for _ in 0..count {
            let x = sample_box.x0 + rng.random::<f64>() * sample_box.width();
            let y = sample_box.y0 + rng.random::<f64>() * sample_box.height();
            if predicate(Point::new(x, y)) {
                hits += 1;
            }
        }
        remaining -= count;
        batch_idx += 1;
    }
    let box_area = sample_box.area();
    let p_hat = hits as f64 / samples as f64;
    let est = p_hat * box_area;
    let sigma = box_area * (p_hat * (1.0 - p_hat) / samples as f64).sqrt();
    Ok(AreaBracket {
        lower: (est - 3.0 * sigma).max(0.0),
        upper: est + 3.0 * sigma,
        method: AreaMethod::MonteCarlo,
        samples_or_resolution: samples as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{PI, TAU};

    const SQRT3: f64 = 1.732_050_807_568_877_2;

    fn cluster(pts: &[(f64, f64)]) -> Cluster {
        Cluster::new(pts.iter().map(|&(x, y)| Point::new(x, y)).collect()).unwrap()
    }

    #[test]
    fn one_disk_area() {
        let c = cluster(&[(0.0, 0.0)]);
        let a = union_area_exact(&c, 1.0).unwrap();
        assert!(a.contains(PI));
        assert!(a.width() <= 1e-9 * a.upper);
    }

    #[test]
    fn two_disjoint_disks() {
        let c = cluster(&[(0.0, 0.0), (3.0, 0.0)]);
        let a = union_area_exact(&c, 1.0).unwrap();
        assert!((a.midpoint() - 2.0 * PI).abs() < 1e-9);
    }

    #[test]
    fn two_overlapping_disks_closed_form() {
        // two disks distance 2, radius 2: union = 2*pi*r^2 - lens
        let c = cluster(&[(0.0, 0.0), (2.0, 0.0)]);
        let a = union_area_exact(&c, 2.0).unwrap();
        let expect = 16.0 * PI / 3.0 + 2.0 * SQRT3;
        assert!((a.midpoint() - expect).abs() < 1e-9, "{}", a.midpoint());
    }

    #[test]
    fn two_overlapping_disks_vs_monte_carlo() {
        let c = cluster(&[(0.0, 0.0), (2.0, 0.0)]);
        let exact = union_area_exact(&c, 2.0).unwrap();
        let mc = mc_area_oracle(
            |p| p.dist(Point::new(0.0, 0.0)) <= 2.0 || p.dist(Point::new(2.0, 0.0)) <= 2.0,
            Rect::new(-2.0, -2.0, 4.0, 2.0),
            10_000_000,
            7,
        )
        .unwrap();
        assert!(mc.contains(exact.midpoint()));
        assert!((mc.midpoint() - 20.219).abs() < 0.02);
    }

    #[test]
    fn dilation_matches_enlarged_radius() {
        let single = cluster(&[(0.0, 0.0)]);
        let a = dilated_union_area(&single, 1.0).unwrap();
        assert!((a.midpoint() - 4.0 * PI).abs() < 1e-9);

        let pair = cluster(&[(0.0, 0.0), (2.0, 0.0)]);
        let a = dilated_union_area(&pair, 1.0).unwrap();
        assert!((a.midpoint() - (16.0 * PI / 3.0 + 2.0 * SQRT3)).abs() < 1e-9);

        let a0 = dilated_union_area(&pair, 0.0).unwrap();
        let u1 = union_area_exact(&pair, 1.0).unwrap();
        assert_eq!(a0.midpoint(), u1.midpoint());
    }

    #[test]
    fn dilated_tangent_triple_matches_paper_denominator() {
        let c = cluster(&[(0.0, 0.0), (2.0, 0.0), (1.0, SQRT3)]);
        let a = dilated_union_area(&c, 1.0).unwrap();
        let expect = 4.0 * SQRT3 + 6.0 * PI;
        assert!((a.midpoint() - expect).abs() < 1e-9, "{}", a.midpoint());
        let mc = mc_area_oracle(
            |p| c.centers().iter().any(|&q| p.dist(q) <= 2.0),
            Rect::new(-2.0, -2.0, 4.0, SQRT3 + 2.0),
            2_000_000,
            11,
        )
        .unwrap();
        assert!(mc.contains(expect));
    }

    #[test]
    fn union_monotone_in_disks() {
        let small = cluster(&[(0.0, 0.0), (1.5, 0.2)]);
        let big = cluster(&[(0.0, 0.0), (1.5, 0.2), (0.4, 1.1)]);
        let a = union_area_exact(&small, 1.0).unwrap();
        let b = union_area_exact(&big, 1.0).unwrap();
        assert!(b.lower >= a.lower - 1e-12);
    }

    #[test]
    fn near_identical_centers_rejected() {
        let err = Cluster::new(vec![Point::new(0.0, 0.0), Point::new(0.0, 5e-13)]);
        assert!(err.is_err());
    }

    #[test]
    fn erosion_contains_center() {
        let c = cluster(&[(0.0, 0.0), (1.5, 0.0)]);
        assert!(erosion_contains(&c, Point::new(0.0, 0.0)));
        assert!(erosion_contains(&c, Point::new(1.5, 0.0)));
    }

    #[test]
    fn erosion_of_single_disk_is_its_center() {
        let c = cluster(&[(0.0, 0.0)]);
        assert!(erosion_contains(&c, Point::new(0.0, 0.0)));
        assert!(!erosion_contains(&c, Point::new(0.05, 0.0)));
        assert!(!erosion_contains(&c, Point::new(0.0, 1e-3)));
    }

    #[test]
    fn erosion_triangle_centroid() {
        // equilateral triangle side 1: centroid at distance 1/sqrt(3) < 1
        let c = cluster(&[(0.0, 0.0), (1.0, 0.0), (0.5, SQRT3 / 2.0)]);
        let centroid = Point::new(0.5, SQRT3 / 6.0);
        assert!(erosion_contains(&c, centroid));
        // dense direction sampling oracle
        let dirs = 100_000;
        let all_covered = (0..dirs).all(|k| {
            let t = TAU * k as f64 / dirs as f64;
            let x = centroid.add(Point::new(t.cos(), t.sin()));
            min_dist(x, c.centers()) <= 1.0 + 1e-9
        });
        assert!(all_covered);
    }

    #[test]
    fn erosion_respects_interior_holes() {
        // ring of six disks at distance 1.5: the boundary arcs at the ring
        // center are covered, but the middle of the ring is a hole of the
        // union, so the ball at the center is not contained.
        let centers: Vec<Point> = (0..6)
            .map(|k| {
                let t = TAU * k as f64 / 6.0;
                Point::new(1.5 * t.cos(), 1.5 * t.sin())
            })
            .collect();
        let c = Cluster::new(centers).unwrap();
        assert!(!erosion_contains(&c, Point::ORIGIN));
        // boundary sampling confirms the circle itself is covered
        let covered = (0..1000).all(|k| {
            let t = TAU * k as f64 / 1000.0;
            min_dist(Point::new(t.cos(), t.sin()), c.centers()) <= 1.0 + 1e-9
        });
        assert!(covered);
        // and the erosion invariant would otherwise be violated:
        assert!(min_dist(Point::ORIGIN, c.centers()) > 1.0);
    }

    #[test]
    fn erosion_member_implies_in_union() {
        let c = cluster(&[(0.0, 0.0), (1.2, 0.4), (0.3, 1.3)]);
        for &(x, y) in &[(0.2, 0.2), (0.5, 0.5), (0.9, 0.1), (1.0, 1.0)] {
            let p = Point::new(x, y);
            if erosion_contains(&c, p) {
                assert!(min_dist(p, c.centers()) <= 1.0 + 1e-9);
            }
        }
    }

    #[test]
    fn erosion_area_single_disk_is_tiny() {
        let c = cluster(&[(0.0, 0.0)]);
        let a = erosion_area(&c, 0.25).unwrap();
        assert_eq!(a.lower, 0.0);
        assert!(a.upper <= 1e-3);
    }

    #[test]
    fn erosion_area_two_disks_is_tiny() {
        let c = cluster(&[(0.0, 0.0), (1.1, 0.0)]);
        let a = erosion_area(&c, 0.25).unwrap();
        assert_eq!(a.lower, 0.0);
        assert!(a.upper <= 1e-3);
    }

    #[test]
    fn erosion_area_hex_flower_matches_closed_form() {
        // seven disks of the hexagonal covering: center plus six at sqrt(3)
        let mut pts = vec![(0.0, 0.0)];
        for k in 0..6 {
            let t = TAU * k as f64 / 6.0;
            pts.push((SQRT3 * t.cos(), SQRT3 * t.sin()));
        }
        let c = cluster(&pts);
        let a = erosion_area(&c, 0.5).unwrap();
        let expect = 6.0 * SQRT3 - 2.0 * PI;
        assert!(
            a.lower <= expect && expect <= a.upper,
            "[{}, {}] vs {}",
            a.lower,
            a.upper,
            expect
        );
        assert!(a.width() <= 1e-3 * a.upper);
    }

    #[test]
    fn mc_oracle_unit_disk() {
        let a = mc_area_oracle(
            |p| p.norm() <= 1.0,
            Rect::new(-1.0, -1.0, 1.0, 1.0),
            1_000_000,
            42,
        )
        .unwrap();
        assert!(a.contains(PI));
    }

    #[test]
    fn mc_oracle_empty_predicate() {
        let a = mc_area_oracle(|_| false, Rect::new(0.0, 0.0, 1.0, 1.0), 10_000, 3).unwrap();
        assert_eq!(a.lower, 0.0);
        assert_eq!(a.upper, 0.0);
    }

    #[test]
    fn mc_oracle_deterministic() {
        let f = |p: Point| p.norm() <= 1.0;
        let a = mc_area_oracle(f, Rect::new(-1.0, -1.0, 1.0, 1.0), 50_000, 9).unwrap();
        let b = mc_area_oracle(f, Rect::new(-1.0, -1.0, 1.0, 1.0), 50_000, 9).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn mc_oracle_rejects_bad_input() {
        assert!(mc_area_oracle(|_| true, Rect::new(0.0, 0.0, 1.0, 1.0), 100, 0).is_err());
        assert!(mc_area_oracle(|_| true, Rect::new(1.0, 0.0, 1.0, 1.0), 10_000, 0).is_err());
    }

    #[test]
    fn rigid_motion_invariance() {
        let c = cluster(&[(0.0, 0.0), (2.0, 0.0), (1.0, SQRT3)]);
        let moved = c.transformed(0.7, Point::new(-3.2, 5.1));
        let a = dilated_union_area(&c, 1.0).unwrap();
        let b = dilated_union_area(&moved, 1.0).unwrap();
        assert!((a.midpoint() - b.midpoint()).abs() < 1e-9 * a.midpoint());
    }
}
