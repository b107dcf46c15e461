//! Planar primitives: points, 2-d lattices, disks, angular arc sets, and
//! smallest enclosing circles.
//!
//! Everything here is tolerance-aware double arithmetic. Predicates take an
//! explicit tolerance (default [`DEFAULT_TOLERANCE`]); anything reported as a
//! witness elsewhere in the crate must clear ten times that.

use std::f64::consts::TAU;

use thiserror::Error;

/// Default length tolerance for geometric predicates.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Witnesses must hold with margin at least this multiple of the tolerance.
pub const WITNESS_MARGIN_FACTOR: f64 = 10.0;

/// Angular tolerance for arc-coverage tests.
pub const ANGLE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum GeomError {
    #[error("lattice basis is singular or non-finite (det = {det})")]
    SingularBasis { det: f64 },
    #[error("lattice operation requires dim = 2, got {dim}")]
    NotPlanar { dim: usize },
    #[error("basis must be {dim}x{dim}, got a {rows}x{cols} matrix")]
    BadBasisShape { dim: usize, rows: usize, cols: usize },
    #[error("smallest enclosing circle of an empty point set")]
    EmptyPointSet,
    #[error("coordinates must be finite")]
    NonFiniteCoordinates,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Point {
        Point { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn add(&self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }

    pub fn sub(&self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }

    pub fn scale(&self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }

    pub fn dot(&self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the cross product.
    pub fn cross(&self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm_sq(&self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    pub fn dist(&self, o: Point) -> f64 {
        (self.x - o.x).hypot(self.y - o.y)
    }

    pub fn rotate(&self, angle: f64) -> Point {
        let (s, c) = angle.sin_cos();
        Point::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    /// Lexicographic (x, y) ordering, used for deterministic tie-breaking.
    pub fn lex_cmp(&self, o: &Point) -> std::cmp::Ordering {
        self.x
            .partial_cmp(&o.x)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(self.y.partial_cmp(&o.y).unwrap_or(std::cmp::Ordering::Equal))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Disk {
    pub center: Point,
    pub radius: f64,
}

impl Disk {
    pub fn new(center: Point, radius: f64) -> Disk {
        Disk { center, radius }
    }

    pub fn contains(&self, p: Point, tol: f64) -> bool {
        self.center.dist(p) <= self.radius + tol
    }

    pub fn area(&self) -> f64 {
        std::f64::consts::PI * self.radius * self.radius
    }
}

/// Axis-aligned rectangle, used as a sampling box and render window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

impl Rect {
    pub fn new(x0: f64, y0: f64, x1: f64, y1: f64) -> Rect {
        Rect { x0, y0, x1, y1 }
    }

    pub fn width(&self) -> f64 {
        self.x1 - self.x0
    }

    pub fn height(&self) -> f64 {
        self.y1 - self.y0
    }

    pub fn area(&self) -> f64 {
        self.width() * self.height()
    }

    pub fn is_degenerate(&self) -> bool {
        !(self.width() > 0.0 && self.height() > 0.0)
            || !self.x0.is_finite()
            || !self.y0.is_finite()
            || !self.x1.is_finite()
            || !self.y1.is_finite()
    }

    pub fn contains(&self, p: Point) -> bool {
        p.x >= self.x0 && p.x <= self.x1 && p.y >= self.y0 && p.y <= self.y1
    }
}

/// A lattice of translations given by a square basis matrix whose rows are
/// the generator vectors. Planar operations (reduction, shortest vector,
/// torus distance) require `dim == 2`; higher dimensions are carried only so
/// that the lattice can be emitted symbolically.
#[derive(Debug, Clone, PartialEq)]
pub struct Lattice {
    dim: usize,
    basis: Vec<Vec<f64>>,
    det: f64,
    /// Lagrange-reduced basis, cached for dim = 2.
    reduced: Option<[Point; 2]>,
}

impl Lattice {
    pub fn new(basis: Vec<Vec<f64>>) -> Result<Lattice, GeomError> {
        let dim = basis.len();
        if dim == 0 {
            return Err(GeomError::BadBasisShape {
                dim: 1,
                rows: 0,
                cols: 0,
            });
        }
        for row in &basis {
            if row.len() != dim {
                return Err(GeomError::BadBasisShape {
                    dim,
                    rows: basis.len(),
                    cols: row.len(),
                });
            }
            if row.iter().any(|v| !v.is_finite()) {
                return Err(GeomError::NonFiniteCoordinates);
            }
            // squared norms must stay representable for the reduction
            let norm_sq: f64 = row.iter().map(|v| v * v).sum();
            if !norm_sq.is_finite() {
                return Err(GeomError::NonFiniteCoordinates);
            }
        }
        let det = determinant(&basis);
        if !det.is_finite() || det.abs() <= 0.0 {
            return Err(GeomError::SingularBasis { det });
        }
        let reduced = if dim == 2 {
            let b1 = Point::new(basis[0][0], basis[0][1]);
            let b2 = Point::new(basis[1][0], basis[1][1]);
            Some(lagrange_reduce(b1, b2))
        } else {
            None
        };
        Ok(Lattice {
            dim,
            basis,
            det,
            reduced,
        })
    }

    pub fn planar(b1: Point, b2: Point) -> Result<Lattice, GeomError> {
        Lattice::new(vec![vec![b1.x, b1.y], vec![b2.x, b2.y]])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &[Vec<f64>] {
        &self.basis
    }

    pub fn det(&self) -> f64 {
        self.det
    }

    pub fn cell_area(&self) -> f64 {
        self.det.abs()
    }

    fn reduced_pair(&self) -> Result<[Point; 2], GeomError> {
        self.reduced.ok_or(GeomError::NotPlanar { dim: self.dim })
    }

    /// Lagrange-reduced basis generating the same lattice:
    /// `|b1| <= |b2|` and `|b1 . b2| <= |b1|^2 / 2`.
    pub fn reduce(&self) -> Result<Lattice, GeomError> {
        let [a, b] = self.reduced_pair()?;
        Lattice::planar(a, b)
    }

    /// The reduced generators, shortest first.
    pub fn reduced_basis(&self) -> Result<(Point, Point), GeomError> {
        let [a, b] = self.reduced_pair()?;
        Ok((a, b))
    }

    /// Length of the shortest nonzero lattice vector (the girth of the
    /// translation group).
    pub fn shortest_vector(&self) -> Result<f64, GeomError> {
        let [a, _] = self.reduced_pair()?;
        Ok(a.norm())
    }

    /// Coordinates of `p` in the reduced basis.
    pub fn coords(&self, p: Point) -> Result<(f64, f64), GeomError> {
        let [a, b] = self.reduced_pair()?;
        let det = a.cross(b);
        Ok((p.cross(b) / det, a.cross(p) / det))
    }

    /// The lattice vector `m*b1 + n*b2` in the reduced basis.
    pub fn vector(&self, m: i64, n: i64) -> Result<Point, GeomError> {
        let [a, b] = self.reduced_pair()?;
        Ok(a.scale(m as f64).add(b.scale(n as f64)))
    }

    /// Minimum distance between `u` and `v` on the quotient torus:
    /// `min_w |u - v + w|` over lattice vectors `w`.
    pub fn periodic_delta(&self, u: Point, v: Point) -> Result<f64, GeomError> {
        Ok(self.nearest_displacement(u.sub(v))?.norm())
    }

    /// Shortest representative of `t` modulo the lattice.
    pub fn nearest_displacement(&self, t: Point) -> Result<Point, GeomError> {
        let [a, b] = self.reduced_pair()?;
        let det = a.cross(b);
        let alpha = (t.cross(b) / det).round() as i64;
        let beta = (a.cross(t) / det).round() as i64;
        let mut best = t;
        let mut best_n = f64::INFINITY;
        for i in -3..=3i64 {
            for j in -3..=3i64 {
                let w = a
                    .scale((alpha + i) as f64)
                    .add(b.scale((beta + j) as f64));
                let cand = t.sub(w);
                let n = cand.norm_sq();
                if n < best_n {
                    best_n = n;
                    best = cand;
                }
            }
        }
        Ok(best)
    }

    /// Maps `p` into the fundamental parallelogram of the reduced basis
    /// (fractional coordinates in `[0, 1)`).
    pub fn canonicalize(&self, p: Point) -> Result<Point, GeomError> {
        let [a, b] = self.reduced_pair()?;
        let (mut s, mut t) = self.coords(p)?;
        s -= s.floor();
        t -= t.floor();
        // floor can leave exactly 1.0 behind for values just below an integer
        if s >= 1.0 {
            s -= 1.0;
        }
        if t >= 1.0 {
            t -= 1.0;
        }
        Ok(a.scale(s).add(b.scale(t)))
    }

    /// All lattice points within `radius` of `center`, as `(coeffs, point)`.
    pub fn points_within(
        &self,
        center: Point,
        radius: f64,
    ) -> Result<Vec<([i64; 2], Point)>, GeomError> {
        let [a, b] = self.reduced_pair()?;
        let det = a.cross(b).abs();
        let (ca, cb) = self.coords(center)?;
        let ra = radius * b.norm() / det + 1.0;
        let rb = radius * a.norm() / det + 1.0;
        let mut out = Vec::new();
        let m0 = (ca - ra).floor() as i64;
        let m1 = (ca + ra).ceil() as i64;
        let n0 = (cb - rb).floor() as i64;
        let n1 = (cb + rb).ceil() as i64;
        for m in m0..=m1 {
            for n in n0..=n1 {
                let p = a.scale(m as f64).add(b.scale(n as f64));
                if p.dist(center) <= radius {
                    out.push(([m, n], p));
                }
            }
        }
        Ok(out)
    }
}

fn determinant(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    if n == 1 {
        return m[0][0];
    }
    if n == 2 {
        return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    }
    // Gaussian elimination with partial pivoting.
    let mut a: Vec<Vec<f64>> = m.to_vec();
    let mut det = 1.0;
    for col in 0..n {
        let mut pivot = col;
        for row in col + 1..n {
            if a[row][col].abs() > a[pivot][col].abs() {
                pivot = row;
            }
        }
        if a[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        det *= a[col][col];
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            let (top, rest) = a.split_at_mut(row);
            let pivot_row = &top[col];
            for (k, entry) in rest[0].iter_mut().enumerate().skip(col) {
                *entry -= f * pivot_row[k];
            }
        }
    }
    det
}

/// Lagrange (Gauss) reduction of a planar basis. Returns generators with
/// `|b1| <= |b2|` and `|b1 . b2| <= |b1|^2 / 2`; exact minimality in 2-d.
fn lagrange_reduce(b1: Point, b2: Point) -> [Point; 2] {
    let mut a = b1;
    let mut b = b2;
    if a.norm_sq() > b.norm_sq() {
        std::mem::swap(&mut a, &mut b);
    }
    // Gauss reduction halves norms geometrically; the guard only protects
    // against non-finite degeneracies.
    for _ in 0..256 {
        let m = (b.dot(a) / a.norm_sq()).round();
        if !m.is_finite() {
            break;
        }
        b = b.sub(a.scale(m));
        if b.norm_sq() >= a.norm_sq() {
            break;
        }
        std::mem::swap(&mut a, &mut b);
    }
    [a, b]
}

/// A normalized union of angular intervals on the circle of directions.
/// Arcs are kept disjoint, sorted by start, with starts in `[0, 2pi)`; an
/// arc crossing zero is split on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct AngularArcSet {
    arcs: Vec<(f64, f64)>, // (start, end) with 0 <= start < end <= 2*pi
    full: bool,
}

impl AngularArcSet {
    pub fn empty() -> AngularArcSet {
        AngularArcSet {
            arcs: Vec::new(),
            full: false,
        }
    }

    pub fn full_circle() -> AngularArcSet {
        AngularArcSet {
            arcs: vec![(0.0, TAU)],
            full: true,
        }
    }

    /// Builds a normalized arc set from `(start, width)` pairs. Widths are
    /// clamped to `(0, 2pi]`; zero or negative widths are dropped.
    pub fn from_arcs(arcs: impl IntoIterator<Item = (f64, f64)>) -> AngularArcSet {
        let mut segs: Vec<(f64, f64)> = Vec::new();
        let mut full = false;
        for (start, width) in arcs {
            if !(width > 0.0) || !start.is_finite() || !width.is_finite() {
                continue;
            }
            if width >= TAU {
                full = true;
                break;
            }
            let s = start.rem_euclid(TAU);
            let e = s + width;
            if e <= TAU {
                segs.push((s, e));
            } else {
                segs.push((s, TAU));
                segs.push((0.0, e - TAU));
            }
        }
        if full {
            return AngularArcSet::full_circle();
        }
        segs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut merged: Vec<(f64, f64)> = Vec::new();
        for (s, e) in segs {
            match merged.last_mut() {
                Some(last) if s <= last.1 => last.1 = last.1.max(e),
                _ => merged.push((s, e)),
            }
        }
        if merged.len() == 1 && merged[0].0 == 0.0 && merged[0].1 >= TAU {
            return AngularArcSet::full_circle();
        }
        AngularArcSet {
            arcs: merged,
            full: false,
        }
    }

    /// The arcs as `(start, width)` pairs in normalized form.
    pub fn arcs(&self) -> Vec<(f64, f64)> {
        self.arcs.iter().map(|&(s, e)| (s, e - s)).collect()
    }

    pub fn total_width(&self) -> f64 {
        self.arcs.iter().map(|&(s, e)| e - s).sum()
    }

    /// True iff the arcs cover all of `[0, 2pi)` up to `ANGLE_TOLERANCE`,
    /// treating the circle as wrapping at `2pi`.
    pub fn covers_full_circle(&self) -> bool {
        self.covers_full_circle_tol(ANGLE_TOLERANCE)
    }

    pub fn covers_full_circle_tol(&self, tol: f64) -> bool {
        if self.full {
            return true;
        }
        if self.arcs.is_empty() {
            return false;
        }
        if self.arcs[0].0 > tol {
            return false;
        }
        let mut reach = self.arcs[0].1;
        for &(s, e) in &self.arcs[1..] {
            if s > reach + tol {
                return false;
            }
            reach = reach.max(e);
        }
        reach >= TAU - tol
    }

    /// Complement gaps as `(start, width)`, in sweep order. Empty when the
    /// circle is covered; a wrap-around gap is reported starting at the last
    /// arc's end.
    pub fn gaps(&self) -> Vec<(f64, f64)> {
        if self.full {
            return Vec::new();
        }
        if self.arcs.is_empty() {
            return vec![(0.0, TAU)];
        }
        let mut out = Vec::new();
        let mut reach = self.arcs[0].1;
        for &(s, e) in &self.arcs[1..] {
            if s > reach {
                out.push((reach, s - reach));
            }
            reach = reach.max(e);
        }
        // wrap-around gap joins [reach, 2pi) with [0, first start)
        let head = self.arcs[0].0;
        let tail = TAU - reach;
        if tail + head > 0.0 {
            out.push((reach, tail + head));
        }
        out
    }
}

/// Smallest circle enclosing all points (Welzl-style incremental algorithm,
/// deterministic shuffle so results do not depend on input order quirks).
pub fn smallest_enclosing_circle(points: &[Point]) -> Result<Disk, GeomError> {
    if points.is_empty() {
        return Err(GeomError::EmptyPointSet);
    }
    if points.iter().any(|p| !p.is_finite()) {
        return Err(GeomError::NonFiniteCoordinates);
    }
    let mut pts = points.to_vec();
    deterministic_shuffle(&mut pts);

    let mut c = Disk::new(pts[0], 0.0);
    for i in 1..pts.len() {
        if !sec_contains(&c, pts[i]) {
            c = circle_with_point(&pts[..i], pts[i]);
        }
    }
    Ok(c)
}

fn sec_contains(c: &Disk, p: Point) -> bool {
    c.center.dist(p) <= c.radius * (1.0 + 1e-12) + 1e-14
}

fn circle_with_point(pts: &[Point], p: Point) -> Disk {
    let mut c = Disk::new(p, 0.0);
    for (i, &q) in pts.iter().enumerate() {
        if !sec_contains(&c, q) {
            c = if c.radius == 0.0 {
                diameter_circle(p, q)
            } else {
                circle_with_two_points(&pts[..i], p, q)
            };
        }
    }
    c
}

fn circle_with_two_points(pts: &[Point], p: Point, q: Point) -> Disk {
    let base = diameter_circle(p, q);
    let pq = q.sub(p);
    let mut left: Option<Disk> = None;
    let mut right: Option<Disk> = None;
    for &r in pts {
        if sec_contains(&base, r) {
            continue;
        }
        let side = pq.cross(r.sub(p));
        let Some(c) = circumcircle(p, q, r) else {
            continue;
        };
        let cd = pq.cross(c.center.sub(p));
        if side > 0.0 {
            if left.is_none_or(|l| cd > pq.cross(l.center.sub(p))) {
                left = Some(c);
            }
        } else if side < 0.0 && right.is_none_or(|l| cd < pq.cross(l.center.sub(p))) {
            right = Some(c);
        }
    }
    match (left, right) {
        (None, None) => base,
        (Some(l), None) => l,
        (None, Some(r)) => r,
        (Some(l), Some(r)) => {
            if l.radius <= r.radius {
                l
            } else {
                r
            }
        }
    }
}

fn diameter_circle(a: Point, b: Point) -> Disk {
    let c = Point::new((a.x + b.x) / 2.0, (a.y + b.y) / 2.0);
    Disk::new(c, c.dist(a).max(c.dist(b)))
}

/// Circumcircle of three points, `None` for (near-)collinear triples.
pub fn circumcircle(a: Point, b: Point, c: Point) -> Option<Disk> {
    // Shift to a local frame for numerical stability.
    let ox = (a.x.min(b.x).min(c.x) + a.x.max(b.x).max(c.x)) / 2.0;
    let oy = (a.y.min(b.y).min(c.y) + a.y.max(b.y).max(c.y)) / 2.0;
    let (ax, ay) = (a.x - ox, a.y - oy);
    let (bx, by) = (b.x - ox, b.y - oy);
    let (cx, cy) = (c.x - ox, c.y - oy);
    let d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
    if d == 0.0 {
        return None;
    }
    let a2 = ax * ax + ay * ay;
    let b2 = bx * bx + by * by;
    let c2 = cx * cx + cy * cy;
    let ux = (a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / d;
    let uy = (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / d;
    let center = Point::new(ox + ux, oy + uy);
    let r = center.dist(a).max(center.dist(b)).max(center.dist(c));
    if !center.is_finite() || !r.is_finite() {
        return None;
    }
    Some(Disk::new(center, r))
}

// Small deterministic xorshift shuffle; keeps the enclosing-circle search
// independent of adversarial input order without pulling in an RNG seed.
fn deterministic_shuffle(pts: &mut [Point]) {
    let mut state: u64 = 0x9e37_79b9_7f4a_7c15 ^ (pts.len() as u64);
    let mut next = || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    for i in (1..pts.len()).rev() {
        let j = (next() % (i as u64 + 1)) as usize;
        pts.swap(i, j);
    }
}

/// Area of the intersection of two disks with radii `r1`, `r2` and center
/// distance `d` (the two-circle lens).
pub fn lens_area(r1: f64, r2: f64, d: f64) -> f64 {
    if d >= r1 + r2 {
        return 0.0;
    }
    let rmin = r1.min(r2);
    if d <= (r1 - r2).abs() {
        return std::f64::consts::PI * rmin * rmin;
    }
    let t1 = ((d * d + r1 * r1 - r2 * r2) / (2.0 * d * r1)).clamp(-1.0, 1.0);
    let t2 = ((d * d + r2 * r2 - r1 * r1) / (2.0 * d * r2)).clamp(-1.0, 1.0);
    let s = (-d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) * (d + r1 + r2);
    r1 * r1 * t1.acos() + r2 * r2 * t2.acos() - 0.5 * s.max(0.0).sqrt()
}
