//! Periodic arrangements of congruent disks on a translation lattice:
//! density, packing and covering certification, deep holes, uniquely
//! covered regions, and relative densities.
//!
//! Covering checks run on a quadtree over the fundamental cell. Coarse
//! cells are classified with the 1-Lipschitz bound `dist(center) <= target
//! - h/sqrt(2)`; small undecided cells switch to an exact evaluation of the
//! maximum nearest-center distance over the cell (candidates: corners,
//! bisector-edge crossings, circumcenters), which is what lets the
//! tangency-critical constructions certify at a 1e-6 inflation while the
//! exact-radius case honestly stays `unknown`.

use thiserror::Error;

use crate::geom::{
    circumcircle, lens_area, GeomError, Lattice, Point, Rect, DEFAULT_TOLERANCE,
    WITNESS_MARGIN_FACTOR,
};

#[derive(Debug, Error)]
pub enum PeriodicError {
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error("radius must be positive and finite, got {r}")]
    BadRadius { r: f64 },
    #[error("motif must be nonempty")]
    EmptyMotif,
    #[error("motif points {i} and {j} coincide modulo the lattice (distance {d:e})")]
    DuplicateMotif { i: usize, j: usize, d: f64 },
    #[error("periodic checks require a planar lattice, got dim {dim}")]
    NotPlanar { dim: usize },
    #[error("motif index {index} out of range ({len} motif points)")]
    MotifIndexOutOfRange { index: usize, len: usize },
    #[error("window radius must be positive")]
    ZeroRadiusWindow,
    #[error("arrangement is not a certified covering at radius {required}")]
    NotACovering { required: f64 },
}

/// Identifies one disk copy: a motif index plus integer coefficients in the
/// reduced lattice basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct CopyId {
    pub motif: usize,
    pub cell: [i64; 2],
}

impl CopyId {
    pub fn new(motif: usize, cell: [i64; 2]) -> CopyId {
        CopyId { motif, cell }
    }
}

/// A periodic arrangement: lattice, motif of disk centers (canonicalized
/// into the fundamental parallelogram of the reduced basis), and a common
/// radius. Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicArrangement {
    lattice: Lattice,
    motif: Vec<Point>,
    radius: f64,
}

impl PeriodicArrangement {
    pub fn new(
        lattice: Lattice,
        motif: Vec<Point>,
        radius: f64,
    ) -> Result<PeriodicArrangement, PeriodicError> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(PeriodicError::BadRadius { r: radius });
        }
        if motif.is_empty() {
            return Err(PeriodicError::EmptyMotif);
        }
        if lattice.dim() != 2 {
            return Err(PeriodicError::NotPlanar { dim: lattice.dim() });
        }
        let canonical: Vec<Point> = motif
            .iter()
            .map(|&p| lattice.canonicalize(p))
            .collect::<Result<_, _>>()?;
        if canonical.iter().any(|p| !p.is_finite()) {
            return Err(PeriodicError::Geom(GeomError::NonFiniteCoordinates));
        }
        for i in 0..canonical.len() {
            for j in i + 1..canonical.len() {
                let d = lattice.periodic_delta(canonical[i], canonical[j])?;
                if d <= 1e-9 {
                    return Err(PeriodicError::DuplicateMotif { i, j, d });
                }
            }
        }
        Ok(PeriodicArrangement {
            lattice,
            motif: canonical,
            radius,
        })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn motif(&self) -> &[Point] {
        &self.motif
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Total disk area per unit cell area; counts multiplicity, so
    /// overlapping coverings score above 1.
    pub fn density(&self) -> f64 {
        self.motif.len() as f64 * std::f64::consts::PI * self.radius * self.radius
            / self.lattice.cell_area()
    }

    pub fn copy_position(&self, id: CopyId) -> Result<Point, PeriodicError> {
        if id.motif >= self.motif.len() {
            return Err(PeriodicError::MotifIndexOutOfRange {
                index: id.motif,
                len: self.motif.len(),
            });
        }
        Ok(self.motif[id.motif].add(self.lattice.vector(id.cell[0], id.cell[1])?))
    }

    /// All disk copies whose centers lie within `radius` of `center`.
    pub fn copies_within(
        &self,
        center: Point,
        radius: f64,
    ) -> Result<Vec<(CopyId, Point)>, PeriodicError> {
        let mut out = Vec::new();
        for (mi, &m) in self.motif.iter().enumerate() {
            for (cell, w) in self.lattice.points_within(center.sub(m), radius)? {
                out.push((CopyId::new(mi, cell), m.add(w)));
            }
        }
        Ok(out)
    }

    /// Minimum periodic distance from `p` to the motif centers.
    pub fn torus_dist(&self, p: Point) -> Result<f64, PeriodicError> {
        let mut best = f64::INFINITY;
        for &m in &self.motif {
            best = best.min(self.lattice.periodic_delta(p, m)?);
        }
        Ok(best)
    }

    /// Applies one rotation + translation to the whole arrangement.
    pub fn transformed(
        &self,
        angle: f64,
        shift: Point,
    ) -> Result<PeriodicArrangement, PeriodicError> {
        let (b1, b2) = self.lattice.reduced_basis()?;
        let lattice = Lattice::planar(b1.rotate(angle), b2.rotate(angle))?;
        let motif = self
            .motif
            .iter()
            .map(|&p| p.rotate(angle).add(shift))
            .collect();
        PeriodicArrangement::new(lattice, motif, self.radius)
    }

    /// Scales coordinates and radius by `lambda > 0`.
    pub fn scaled(&self, lambda: f64) -> Result<PeriodicArrangement, PeriodicError> {
        let basis: Vec<Vec<f64>> = self
            .lattice
            .basis()
            .iter()
            .map(|row| row.iter().map(|v| v * lambda).collect())
            .collect();
        PeriodicArrangement::new(
            Lattice::new(basis)?,
            self.motif.iter().map(|&p| p.scale(lambda)).collect(),
            self.radius * lambda,
        )
    }

    /// Replaces the motif (re-canonicalizing and re-checking invariants).
    pub fn with_motif(&self, motif: Vec<Point>) -> Result<PeriodicArrangement, PeriodicError> {
        PeriodicArrangement::new(self.lattice.clone(), motif, self.radius)
    }

    pub fn is_packing(&self) -> Result<PackingVerdict, PeriodicError> {
        let r2 = 2.0 * self.radius;
        // copies of the same motif point: shortest lattice vector
        let sv = self.lattice.shortest_vector()?;
        if sv < r2 - 1e-9 {
            return Ok(PackingVerdict::CertifiedNo {
                a: CopyId::new(0, [0, 0]),
                b: CopyId::new(0, [1, 0]),
                dist: sv,
            });
        }
        let mut min_slack = sv - r2;
        for i in 0..self.motif.len() {
            for j in i + 1..self.motif.len() {
                let t = self.motif[i].sub(self.motif[j]);
                let (cell, w) = nearest_with_coeffs(&self.lattice, t)?;
                let d = w.norm();
                if d < r2 - 1e-9 {
                    return Ok(PackingVerdict::CertifiedNo {
                        a: CopyId::new(i, [0, 0]),
                        b: CopyId::new(j, cell),
                        dist: d,
                    });
                }
                min_slack = min_slack.min(d - r2);
            }
        }
        Ok(PackingVerdict::CertifiedYes { min_slack })
    }

    /// Certified covering check at `target_radius`, starting from grid step
    /// `h0`. Tangency-critical arrangements (deep hole exactly at the
    /// target) come back `Unknown` by design.
    pub fn covering_check(
        &self,
        target_radius: f64,
        h0: f64,
    ) -> Result<CoverVerdict, PeriodicError> {
        self.covering_check_tol(target_radius, h0, DEFAULT_TOLERANCE)
    }

    pub fn covering_check_tol(
        &self,
        target_radius: f64,
        h0: f64,
        tol: f64,
    ) -> Result<CoverVerdict, PeriodicError> {
        if !(target_radius > 0.0) || !target_radius.is_finite() {
            return Err(PeriodicError::BadRadius { r: target_radius });
        }
        let field = DistField::new(self, target_radius)?;
        let cert_eps = WITNESS_MARGIN_FACTOR * tol;
        let (b1, b2) = self.lattice.reduced_basis()?;
        let bbox = cell_bbox(b1, b2);
        let h0 = h0.clamp(1e-6 * target_radius, bbox.width().max(bbox.height()));
        let mut cells = seed_cells(bbox, h0);
        let mut step = h0;
        let floor = 1e-4 * target_radius;
        let exact_threshold = 0.02 * target_radius;
        let mut min_slack = f64::INFINITY;
        loop {
            let rho = step * std::f64::consts::FRAC_1_SQRT_2;
            let mut next = Vec::new();
            for (c, s) in cells {
                let d = field.dist(c);
                if d <= target_radius - rho {
                    min_slack = min_slack.min(target_radius - d - rho);
                    continue;
                }
                if d > target_radius + cert_eps {
                    // climb to a locally deepest witness before reporting
                    let (w, dw) = field.polish_max(c, s);
                    return Ok(CoverVerdict {
                        status: CoverStatus::CertifiedNo,
                        witness: Some(w),
                        margin: dw - target_radius - tol,
                        resolution: step,
                    });
                }
                if s <= exact_threshold {
                    let (fmax, argmax) = field.max_over_square(c, s / 2.0);
                    if fmax <= target_radius - cert_eps {
                        min_slack = min_slack.min(target_radius - fmax);
                        continue;
                    }
                    if fmax > target_radius + cert_eps {
                        let (w, dw) = field.polish_max(argmax, s);
                        return Ok(CoverVerdict {
                            status: CoverStatus::CertifiedNo,
                            witness: Some(w),
                            margin: dw - target_radius - tol,
                            resolution: step,
                        });
                    }
                }
                next.push((c, s));
            }
            if next.is_empty() {
                return Ok(CoverVerdict {
                    status: CoverStatus::CertifiedYes,
                    witness: None,
                    margin: if min_slack.is_finite() {
                        min_slack.max(0.0)
                    } else {
                        0.0
                    },
                    resolution: step,
                });
            }
            if step / 2.0 < floor {
                return Ok(CoverVerdict {
                    status: CoverStatus::Unknown,
                    witness: None,
                    margin: 0.0,
                    resolution: step,
                });
            }
            step /= 2.0;
            cells = split_cells(next);
        }
    }

    /// Bracket on the covering radius of the center set (the deepest hole),
    /// with the deepest point found. Branch-and-bound on the quadtree.
    pub fn deepest_hole(&self, tol: f64) -> Result<DeepHole, PeriodicError> {
        let (b1, b2) = self.lattice.reduced_basis()?;
        let bbox = cell_bbox(b1, b2);
        let field = DistField::new(self, 0.0)?;
        let h0 = (bbox.width().max(bbox.height()) / 8.0).max(tol);
        let mut cells = seed_cells(bbox, h0);
        let mut step = h0;
        let mut best_d = f64::NEG_INFINITY;
        let mut best_p = Point::ORIGIN;
        loop {
            let rho = step * std::f64::consts::FRAC_1_SQRT_2;
            let mut scored = Vec::with_capacity(cells.len());
            for (c, s) in cells {
                let d = field.dist(c);
                if d > best_d + 1e-15 || ((d - best_d).abs() <= 1e-15 && c.lex_cmp(&best_p).is_lt())
                {
                    best_d = d.max(best_d);
                    best_p = c;
                }
                scored.push((c, s, d));
            }
            let mut upper = best_d;
            let mut keep = Vec::new();
            for (c, s, d) in scored {
                if d + rho > best_d {
                    upper = upper.max(d + rho);
                    keep.push((c, s));
                }
            }
            if upper - best_d <= tol || keep.is_empty() {
                return Ok(DeepHole {
                    lower: best_d,
                    upper,
                    point: best_p,
                });
            }
            step /= 2.0;
            cells = split_cells(keep);
        }
    }

    /// Bracket with `upper - lower <= 1e-3`.
    pub fn deepest_hole_bracket(&self) -> Result<(f64, f64), PeriodicError> {
        let h = self.deepest_hole(1e-3)?;
        Ok((h.lower, h.upper))
    }

    /// Grid samples (step `h`) inside the indexed disk that no other disk
    /// copy covers. Requires the arrangement to be a certified covering at
    /// `radius * (1 + 1e-6)`.
    pub fn uniquely_covered_samples(
        &self,
        disk_index: usize,
        h: f64,
    ) -> Result<Vec<Point>, PeriodicError> {
        if disk_index >= self.motif.len() {
            return Err(PeriodicError::MotifIndexOutOfRange {
                index: disk_index,
                len: self.motif.len(),
            });
        }
        let inflated = self.radius * (1.0 + 1e-6);
        let check = self.covering_check(inflated, self.radius / 2.0)?;
        if check.status != CoverStatus::CertifiedYes {
            return Err(PeriodicError::NotACovering { required: inflated });
        }
        let center = self.motif[disk_index];
        let me = CopyId::new(disk_index, [0, 0]);
        let others: Vec<Point> = self
            .copies_within(center, 2.0 * self.radius + h + DEFAULT_TOLERANCE)?
            .into_iter()
            .filter(|(id, _)| *id != me)
            .map(|(_, p)| p)
            .collect();
        let mut out = Vec::new();
        let n = (2.0 * self.radius / h).ceil() as i64;
        for i in 0..=n {
            for j in 0..=n {
                let p = Point::new(
                    center.x - self.radius + i as f64 * h,
                    center.y - self.radius + j as f64 * h,
                );
                if p.dist(center) > self.radius {
                    continue;
                }
                let covered_by_other = others
                    .iter()
                    .any(|&q| p.dist(q) <= self.radius + DEFAULT_TOLERANCE);
                if !covered_by_other {
                    out.push(p);
                }
            }
        }
        Ok(out)
    }

    /// Density of the arrangement relative to a disk window `G`:
    /// `sum_i V(D_i inter G) / V(G)`.
    pub fn relative_density(&self, window: crate::geom::Disk) -> Result<f64, PeriodicError> {
        if !(window.radius > 0.0) {
            return Err(PeriodicError::ZeroRadiusWindow);
        }
        let copies = self.copies_within(window.center, window.radius + self.radius)?;
        let mut total = 0.0;
        for (_, q) in copies {
            total += lens_area(self.radius, window.radius, q.dist(window.center));
        }
        Ok(total / window.area())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PackingVerdict {
    CertifiedYes { min_slack: f64 },
    CertifiedNo { a: CopyId, b: CopyId, dist: f64 },
}

impl PackingVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, PackingVerdict::CertifiedYes { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum CoverStatus {
    CertifiedYes,
    CertifiedNo,
    Unknown,
}

/// Three-valued covering verdict. `CertifiedNo` carries a witness point
/// whose clearance exceeds `margin > 0`; `CertifiedYes` means every cell of
/// the fundamental domain certified with positive slack.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverVerdict {
    pub status: CoverStatus,
    pub witness: Option<Point>,
    pub margin: f64,
    pub resolution: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeepHole {
    pub lower: f64,
    pub upper: f64,
    pub point: Point,
}

fn cell_bbox(b1: Point, b2: Point) -> Rect {
    let corners = [Point::ORIGIN, b1, b2, b1.add(b2)];
    let mut r = Rect::new(
        f64::INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::NEG_INFINITY,
    );
    for c in corners {
        r.x0 = r.x0.min(c.x);
        r.y0 = r.y0.min(c.y);
        r.x1 = r.x1.max(c.x);
        r.y1 = r.y1.max(c.y);
    }
    r
}

fn seed_cells(bbox: Rect, h: f64) -> Vec<(Point, f64)> {
    let nx = (bbox.width() / h).ceil().max(1.0) as usize;
    let ny = (bbox.height() / h).ceil().max(1.0) as usize;
    let mut cells = Vec::with_capacity(nx * ny);
    for i in 0..nx {
        for j in 0..ny {
            cells.push((
                Point::new(
                    bbox.x0 + (i as f64 + 0.5) * h,
                    bbox.y0 + (j as f64 + 0.5) * h,
                ),
                h,
            ));
        }
    }
    cells
}

fn split_cells(cells: Vec<(Point, f64)>) -> Vec<(Point, f64)> {
    let mut out = Vec::with_capacity(cells.len() * 4);
    for (c, s) in cells {
        let q = s / 4.0;
        for (dx, dy) in [(-q, -q), (q, -q), (-q, q), (q, q)] {
            out.push((Point::new(c.x + dx, c.y + dy), s / 2.0));
        }
    }
    out
}

fn nearest_with_coeffs(lattice: &Lattice, t: Point) -> Result<([i64; 2], Point), GeomError> {
    let (s0, t0) = lattice.coords(t)?;
    let (alpha, beta) = (s0.round() as i64, t0.round() as i64);
    let mut best_cell = [0i64, 0];
    let mut best = t;
    let mut best_n = f64::INFINITY;
    for i in -3..=3i64 {
        for j in -3..=3i64 {
            let m = alpha + i;
            let n = beta + j;
            let cand = t.sub(lattice.vector(m, n)?);
            if cand.norm_sq() < best_n {
                best_n = cand.norm_sq();
                best = cand;
                best_cell = [-m, -n];
            }
        }
    }
    Ok((best_cell, best))
}

/// Finite list of disk-copy centers sufficient to answer nearest-center
/// queries over the fundamental-cell bounding box.
pub(crate) struct DistField {
    copies: Vec<Point>,
    /// region where `dist` equals the true periodic distance
    valid: Rect,
}

impl DistField {
    fn new(a: &PeriodicArrangement, target: f64) -> Result<DistField, PeriodicError> {
        let (b1, b2) = a.lattice.reduced_basis()?;
        let bbox = cell_bbox(b1, b2);
        let center = Point::new((bbox.x0 + bbox.x1) / 2.0, (bbox.y0 + bbox.y1) / 2.0);
        let circum = 0.5 * bbox.width().hypot(bbox.height());
        // any query point in the box has its nearest copy no farther than
        // the lattice covering radius <= (|b1| + |b2|) / 2
        let pad = 0.5 * (b1.norm() + b2.norm()) + target;
        let copies = a
            .copies_within(center, circum + pad + 1.0)?
            .into_iter()
            .map(|(_, p)| p)
            .collect();
        Ok(DistField {
            copies,
            valid: bbox,
        })
    }

    fn dist(&self, p: Point) -> f64 {
        let mut best = f64::INFINITY;
        for &c in &self.copies {
            let d = (p.x - c.x) * (p.x - c.x) + (p.y - c.y) * (p.y - c.y);
            if d < best {
                best = d;
            }
        }
        best.sqrt()
    }

    /// Pattern-search ascent of the nearest-copy distance from `start`,
    /// clamped to the region where the field is exact.
    fn polish_max(&self, start: Point, step0: f64) -> (Point, f64) {
        let mut p = start;
        let mut best = self.dist(p);
        let mut step = step0;
        let mut guard = 0;
        while step > 1e-12 && guard < 20_000 {
            guard += 1;
            let mut improved = false;
            for (dx, dy) in [
                (step, 0.0),
                (-step, 0.0),
                (0.0, step),
                (0.0, -step),
                (step, step),
                (step, -step),
                (-step, step),
                (-step, -step),
            ] {
                let q = Point::new(p.x + dx, p.y + dy);
                if !self.valid.contains(q) {
                    continue;
                }
                let d = self.dist(q);
                if d > best {
                    best = d;
                    p = q;
                    improved = true;
                }
            }
            if !improved {
                step *= 0.5;
            }
        }
        (p, best)
    }

    /// Exact maximum of the nearest-copy distance over an axis-aligned
    /// square cell (center, half side). Candidates: the corners, bisector
    /// crossings with the edges, and circumcenters of copy triples inside
    /// the cell; distances to copies are convex along edges, so no other
    /// local maxima exist.
    fn max_over_square(&self, c: Point, half: f64) -> (f64, Point) {
        let mut best = (f64::NEG_INFINITY, c);
        let mut consider = |p: Point, v: f64| {
            if v > best.0 {
                best = (v, p);
            }
        };
        let corners = [
            Point::new(c.x - half, c.y - half),
            Point::new(c.x + half, c.y - half),
            Point::new(c.x - half, c.y + half),
            Point::new(c.x + half, c.y + half),
        ];
        for p in corners {
            consider(p, self.dist(p));
        }
        // only copies that can realize the minimum somewhere in the cell
        let d_center = self.dist(c);
        let local: Vec<Point> = self
            .copies
            .iter()
            .copied()
            .filter(|q| q.dist(c) <= d_center + 4.0 * half + 1e-9)
            .collect();
        let n = local.len();
        for i in 0..n {
            for j in i + 1..n {
                let mid = Point::new(
                    (local[i].x + local[j].x) / 2.0,
                    (local[i].y + local[j].y) / 2.0,
                );
                let dir = local[j].sub(local[i]);
                let nrm = dir.norm();
                if nrm < 1e-300 {
                    continue;
                }
                let nhat = dir.scale(1.0 / nrm);
                for edge in edges_of(c, half) {
                    if let Some(p) = line_segment_crossing(mid, nhat, edge) {
                        consider(p, self.dist(p));
                    }
                }
                for k in j + 1..n {
                    if let Some(cc) = circumcircle(local[i], local[j], local[k]) {
                        let v = cc.center;
                        if (v.x - c.x).abs() <= half && (v.y - c.y).abs() <= half {
                            consider(v, self.dist(v));
                        }
                    }
                }
            }
        }
        best
    }
}

fn edges_of(c: Point, half: f64) -> [(Point, Point); 4] {
    let a = Point::new(c.x - half, c.y - half);
    let b = Point::new(c.x + half, c.y - half);
    let d = Point::new(c.x + half, c.y + half);
    let e = Point::new(c.x - half, c.y + half);
    [(a, b), (b, d), (d, e), (e, a)]
}

/// Crossing of the line `{x : (x - mid) . nhat = 0}` with a segment.
fn line_segment_crossing(mid: Point, nhat: Point, (a, b): (Point, Point)) -> Option<Point> {
    let fa = a.sub(mid).dot(nhat);
    let fb = b.sub(mid).dot(nhat);
    if (fa > 0.0 && fb > 0.0) || (fa < 0.0 && fb < 0.0) {
        return None;
    }
    let denom = fa - fb;
    if denom == 0.0 {
        return Some(a);
    }
    let t = fa / denom;
    Some(Point::new(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Disk;

    const SQRT3: f64 = 1.732_050_807_568_877_2;
    const PI: f64 = std::f64::consts::PI;

    fn hex_packing() -> PeriodicArrangement {
        let l = Lattice::new(vec![vec![2.0, 0.0], vec![1.0, SQRT3]]).unwrap();
        PeriodicArrangement::new(l, vec![Point::ORIGIN], 1.0).unwrap()
    }

    fn hex_covering(inflation: f64) -> PeriodicArrangement {
        let l = Lattice::new(vec![vec![SQRT3, 0.0], vec![SQRT3 / 2.0, 1.5]]).unwrap();
        PeriodicArrangement::new(l, vec![Point::ORIGIN], 1.0 + inflation).unwrap()
    }

    #[test]
    fn density_hex_packing() {
        let a = hex_packing();
        assert!((a.density() - PI / (2.0 * SQRT3)).abs() < 1e-12);
        assert!((a.density() - 0.906_899_7).abs() < 1e-6);
    }

    #[test]
    fn density_hex_covering() {
        let a = hex_covering(0.0);
        assert!((a.density() - 2.0 * PI / 27f64.sqrt()).abs() < 1e-12);
        assert!((a.density() - 1.209_199_6).abs() < 1e-6);
    }

    #[test]
    fn density_sect5() {
        let a_param = 0.5f64;
        let s = (1.0 - a_param * a_param / 4.0).sqrt();
        let l = Lattice::new(vec![vec![a_param, 0.0], vec![a_param / 2.0, 1.0 + s]]).unwrap();
        let arr = PeriodicArrangement::new(l, vec![Point::ORIGIN], 1.0).unwrap();
        let det = a_param * (1.0 + s);
        assert!((arr.density() - PI / det).abs() < 1e-12);
    }

    #[test]
    fn packing_verdicts() {
        assert!(hex_packing().is_packing().unwrap().is_yes());

        let l = Lattice::new(vec![vec![2.0, 0.0], vec![1.0, SQRT3]]).unwrap();
        let tight = PeriodicArrangement::new(l, vec![Point::ORIGIN], 1.01).unwrap();
        match tight.is_packing().unwrap() {
            PackingVerdict::CertifiedNo { dist, .. } => {
                assert!((dist - 2.0).abs() < 1e-9);
            }
            _ => panic!("expected a violation witness"),
        }

        // tangency allowed: interiors disjoint at distance exactly 2r
        let l = Lattice::new(vec![vec![2.0, 0.0], vec![0.0, 2.0]]).unwrap();
        let touching = PeriodicArrangement::new(l, vec![Point::ORIGIN], 1.0).unwrap();
        assert!(touching.is_packing().unwrap().is_yes());
    }

    #[test]
    fn duplicate_motif_rejected() {
        let l = Lattice::new(vec![vec![4.0, 0.0], vec![0.0, 4.0]]).unwrap();
        let err = PeriodicArrangement::new(
            l,
            vec![Point::ORIGIN, Point::new(4.0, 4.0)], // same point mod lattice
            1.0,
        );
        assert!(err.is_err());
    }

    #[test]
    fn covering_check_hex() {
        let a = hex_covering(0.0);
        // deep hole at distance exactly 1: 1.01 clears, 0.99 fails, 1.0 unknown
        let yes = a.covering_check(1.01, 0.25).unwrap();
        assert_eq!(yes.status, CoverStatus::CertifiedYes);

        let no = a.covering_check(0.99, 0.25).unwrap();
        assert_eq!(no.status, CoverStatus::CertifiedNo);
        let w = no.witness.unwrap();
        assert!(a.torus_dist(w).unwrap() > 0.99 + no.margin);
        assert!(no.margin > 0.0);

        let unk = a.covering_check(1.0, 0.25).unwrap();
        assert_eq!(unk.status, CoverStatus::Unknown);
    }

    #[test]
    fn covering_check_certifies_tiny_inflation() {
        let a = hex_covering(0.0);
        let v = a.covering_check(1.0 + 1e-6, 0.25).unwrap();
        assert_eq!(v.status, CoverStatus::CertifiedYes);
    }

    #[test]
    fn covering_monotone_in_target() {
        let a = hex_covering(0.0);
        for t in [1.01, 1.1, 1.5, 2.0] {
            assert_eq!(
                a.covering_check(t, 0.25).unwrap().status,
                CoverStatus::CertifiedYes
            );
        }
    }

    #[test]
    fn deepest_hole_square_lattice() {
        let l = Lattice::new(vec![vec![4.0, 0.0], vec![0.0, 4.0]]).unwrap();
        let a = PeriodicArrangement::new(l, vec![Point::ORIGIN], 1.0).unwrap();
        let h = a.deepest_hole(1e-3).unwrap();
        let expect = 8f64.sqrt();
        assert!(h.lower <= expect + 1e-9 && expect <= h.upper + 1e-9);
        assert!(h.upper - h.lower <= 1e-3);
    }

    #[test]
    fn deepest_hole_hex_packing() {
        let h = hex_packing().deepest_hole(1e-3).unwrap();
        let expect = 2.0 / SQRT3;
        assert!(h.lower <= expect && expect <= h.upper);
        assert!(h.upper - h.lower <= 1e-3);
    }

    #[test]
    fn deepest_hole_dense_grid() {
        let l = Lattice::new(vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let mut motif = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                motif.push(Point::new(0.1 * i as f64, 0.1 * j as f64));
            }
        }
        let a = PeriodicArrangement::new(l, motif, 0.05).unwrap();
        let h = a.deepest_hole(1e-3).unwrap();
        // the 0.8 x 0.8 empty corner of the cell dominates; just check the
        // bracket is consistent and the spacing bound inside the grid part
        assert!(h.lower > 0.0 && h.upper - h.lower <= 1e-3);
        let inner = a.torus_dist(Point::new(0.15, 0.15)).unwrap();
        assert!(inner <= 0.08);
    }

    #[test]
    fn uniquely_covered_hex() {
        let a = hex_covering(1e-6);
        let pts = a.uniquely_covered_samples(0, 0.05).unwrap();
        assert!(!pts.is_empty());
    }

    #[test]
    fn uniquely_covered_index_error() {
        let a = hex_covering(1e-6);
        assert!(a.uniquely_covered_samples(3, 0.05).is_err());
    }

    #[test]
    fn uniquely_covered_sheared_pair_spans_nearly_diameter() {
        // in the sheared covering each disk covers point pairs no other
        // disk reaches, nearly a diameter apart: > 1.9 at a = 0.5
        let a_param = 0.5f64;
        let s = (1.0 - a_param * a_param / 4.0).sqrt();
        let l = Lattice::new(vec![vec![a_param, 0.0], vec![a_param / 2.0, 1.0 + s]]).unwrap();
        let arr = PeriodicArrangement::new(l, vec![Point::ORIGIN], 1.0).unwrap();
        let pts = arr.uniquely_covered_samples(0, 0.02).unwrap();
        assert!(!pts.is_empty());
        let mut max_dist = 0.0f64;
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                max_dist = max_dist.max(pts[i].dist(pts[j]));
            }
        }
        assert!(max_dist > 1.9, "max pair distance {max_dist}");
    }

    #[test]
    fn uniquely_covered_near_duplicate_is_empty() {
        // a disk sitting almost on top of another covers nothing of its own
        // at grid resolution
        let l = Lattice::new(vec![vec![SQRT3, 0.0], vec![SQRT3 / 2.0, 1.5]]).unwrap();
        let a = PeriodicArrangement::new(
            l,
            vec![Point::ORIGIN, Point::new(5e-4, 0.0)],
            1.001,
        )
        .unwrap();
        let pts = a.uniquely_covered_samples(1, 0.05).unwrap();
        assert!(pts.is_empty(), "{} stray samples", pts.len());
    }

    #[test]
    fn relative_density_converges() {
        let a = hex_packing();
        let d = a
            .relative_density(Disk::new(Point::new(0.3, 0.7), 50.0))
            .unwrap();
        assert!((d - a.density()).abs() < 0.01);
    }

    #[test]
    fn relative_density_window_inside_disk() {
        let a = hex_packing();
        let d = a
            .relative_density(Disk::new(Point::new(0.0, 0.0), 0.5))
            .unwrap();
        assert!((d - 1.0).abs() < 1e-9);
    }

    #[test]
    fn relative_density_empty_window() {
        let l = Lattice::new(vec![vec![1000.0, 0.0], vec![0.0, 1000.0]]).unwrap();
        let a = PeriodicArrangement::new(l, vec![Point::ORIGIN], 1.0).unwrap();
        let d = a
            .relative_density(Disk::new(Point::new(500.0, 500.0), 5.0))
            .unwrap();
        assert_eq!(d, 0.0);
    }

    #[test]
    fn relative_density_zero_window_errors() {
        let a = hex_packing();
        assert!(a
            .relative_density(Disk::new(Point::new(0.0, 0.0), 0.0))
            .is_err());
    }

    #[test]
    fn density_invariance() {
        let a = hex_packing();
        let b = a.transformed(0.6, Point::new(3.1, -2.2)).unwrap();
        assert!((a.density() - b.density()).abs() < 1e-12);
        let c = a.scaled(2.5).unwrap();
        assert!((a.density() - c.density()).abs() < 1e-12);
    }

    #[test]
    fn scaling_preserves_verdicts() {
        let a = hex_packing();
        let s = a.scaled(0.5).unwrap();
        assert!(s.is_packing().unwrap().is_yes());
        let h_a = a.deepest_hole(1e-4).unwrap();
        let h_s = s.deepest_hole(1e-4).unwrap();
        assert!((h_s.lower - 0.5 * h_a.lower).abs() < 1e-3);
    }
}
