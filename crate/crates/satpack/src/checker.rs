//! Saturation and reduction checks for periodic disk arrangements.
//!
//! A packing is n-saturated when no n-1 of its members can be replaced by n
//! replicas; a covering is n-reduced when no n of its members can be
//! replaced by n-1 without uncovering part of the plane. Violations are
//! searched, not decided: the checker reports `Violated` with an exactly
//! re-verifiable witness, `CertifiedHolds` when a complete certificate
//! exists (n = 1 saturation via the covering radius), and otherwise
//! `NoViolationFound` at the search resolution.
//!
//! Locality: a minimal violating replacement is connected, so it fits in a
//! window of radius (2n+1) times the disk diameter around one removed
//! member; subsets are enumerated per anchor motif disk, which covers all
//! patterns up to lattice translation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::diskunion::ErosionOracle;
use crate::geom::{
    smallest_enclosing_circle, Disk, GeomError, Point, DEFAULT_TOLERANCE, WITNESS_MARGIN_FACTOR,
};
use crate::periodic::{CopyId, CoverStatus, PeriodicArrangement, PeriodicError};

#[derive(Debug, Error)]
pub enum CheckerError {
    #[error(transparent)]
    Periodic(#[from] PeriodicError),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error("saturation check requires a certified packing")]
    NotAPacking,
    #[error("reduction check requires a covering certified at radius {required}")]
    NotACovering { required: f64 },
    #[error("n must be at least 1")]
    BadN,
    #[error("malformed witness: {0}")]
    MalformedWitness(String),
}

/// Search configuration. `window_radius` defaults to `(2n+1) * 2 * radius`,
/// the connectivity bound for a minimal violating replacement.
#[derive(Debug, Clone)]
pub struct CheckConfig {
    pub n: usize,
    pub window_radius: Option<f64>,
    pub placement_grid: f64,
    pub refinement_iters: usize,
    pub seed: u64,
}

impl CheckConfig {
    pub fn new(n: usize) -> CheckConfig {
        CheckConfig {
            n,
            window_radius: None,
            placement_grid: 0.02,
            refinement_iters: 40,
            seed: 0,
        }
    }

    pub fn with_grid(mut self, grid: f64) -> CheckConfig {
        self.placement_grid = grid;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> CheckConfig {
        self.seed = seed;
        self
    }

    pub fn with_window(mut self, w: f64) -> CheckConfig {
        self.window_radius = Some(w);
        self
    }

    pub fn window_for(&self, radius: f64) -> f64 {
        self.window_radius
            .unwrap_or((2 * self.n + 1) as f64 * 2.0 * radius)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum VerdictStatus {
    Violated,
    CertifiedHolds,
    NoViolationFound,
}

/// Replacement data proving a violation: remove the listed copies, add
/// disks at the listed centers. For saturation `|added| = |removed| + 1`,
/// for reduction `|added| = |removed| - 1`; the margin is the slack the
/// replacement holds with.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ReplacementWitness {
    pub removed: Vec<CopyId>,
    pub added: Vec<(f64, f64)>,
    pub margin: f64,
}

impl ReplacementWitness {
    pub fn added_points(&self) -> Vec<Point> {
        self.added.iter().map(|&(x, y)| Point::new(x, y)).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub status: VerdictStatus,
    pub witness: Option<ReplacementWitness>,
    pub resolution: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReplacementMode {
    Saturation,
    Reduction,
}

/// Checks n-saturation: no n-1 members replaceable by n replicas. The n=1
/// case is decided exactly through the covering radius (a packing of unit
/// disks is 1-saturated iff doubling the radius yields a covering); n >= 2
/// enumerates anchored removal subsets and searches for placements.
pub fn check_saturation(
    a: &PeriodicArrangement,
    cfg: &CheckConfig,
) -> Result<Verdict, CheckerError> {
    if cfg.n == 0 {
        return Err(CheckerError::BadN);
    }
    if !a.is_packing()?.is_yes() {
        return Err(CheckerError::NotAPacking);
    }
    saturation_scan(a, cfg, 1, cfg.n)
}

/// Violation scan over replacement sizes `m_lo..=m_hi` (m = number added,
/// m-1 removed). Exposed within the crate for the engine's replacement
/// moves; `check_saturation` always scans from m = 1.
pub(crate) fn saturation_scan(
    a: &PeriodicArrangement,
    cfg: &CheckConfig,
    m_lo: usize,
    m_hi: usize,
) -> Result<Verdict, CheckerError> {
    let r = a.radius();
    let r2 = 2.0 * r;
    let mut resolution = cfg.placement_grid;
    let mut certified = true;

    if m_lo <= 1 {
        // insertion of a single disk: exact via the covering radius
        let cover = a.covering_check(r2, (cfg.placement_grid * 4.0).min(r))?;
        resolution = cover.resolution;
        match cover.status {
            CoverStatus::CertifiedNo => {
                let w = cover.witness.expect("certified-no carries a witness");
                return Ok(Verdict {
                    status: VerdictStatus::Violated,
                    witness: Some(ReplacementWitness {
                        removed: Vec::new(),
                        added: vec![(w.x, w.y)],
                        margin: cover.margin,
                    }),
                    resolution,
                });
            }
            CoverStatus::CertifiedYes => {}
            CoverStatus::Unknown => certified = false,
        }
        if m_hi == 1 {
            return Ok(Verdict {
                status: if certified {
                    VerdictStatus::CertifiedHolds
                } else {
                    VerdictStatus::NoViolationFound
                },
                witness: None,
                resolution,
            });
        }
    }

    let window = cfg.window_for(r);
    let deep = a.deepest_hole((cfg.placement_grid / 4.0).max(1e-6))?;
    for m in m_lo.max(2)..=m_hi {
        for anchor_motif in 0..a.motif().len() {
            let anchor = CopyId::new(anchor_motif, [0, 0]);
            let anchor_pos = a.copy_position(anchor)?;
            let mut in_window = a.copies_within(anchor_pos, window)?;
            in_window.sort_by(sort_copies);
            let others: Vec<(CopyId, Point)> = in_window
                .iter()
                .copied()
                .filter(|(id, _)| *id != anchor)
                .collect();
            let all_near: Vec<(CopyId, Point)> = a.copies_within(anchor_pos, window + 3.0 * r2)?;

            let mut combo = Combinations::new(others.len(), m - 2);
            while let Some(pick) = combo.next() {
                let mut removed: Vec<(CopyId, Point)> = vec![(anchor, anchor_pos)];
                removed.extend(pick.iter().map(|&i| others[i]));
                removed.sort_by(sort_copies);

                let fixed: Vec<Point> = all_near
                    .iter()
                    .filter(|(id, _)| !removed.iter().any(|(rid, _)| rid == id))
                    .map(|&(_, p)| p)
                    .collect();

                // candidate placements cluster around the removed sites (a
                // placement far from every removal would already have been a
                // single-disk insertion) and around the deepest hole
                let mut seeds: Vec<Disk> = removed
                    .iter()
                    .map(|&(_, p)| Disk::new(p, r2 + 2.0 * cfg.placement_grid))
                    .collect();
                seeds.push(Disk::new(deep.point, r2 + 2.0 * cfg.placement_grid));

                let found = search_placements(
                    &fixed,
                    &seeds,
                    Disk::new(anchor_pos, window),
                    m,
                    r,
                    cfg.placement_grid,
                    cfg.refinement_iters,
                    cfg.seed ^ hash_subset(&removed),
                );
                if let Some((points, margin)) = found {
                    return Ok(Verdict {
                        status: VerdictStatus::Violated,
                        witness: Some(ReplacementWitness {
                            removed: removed.into_iter().map(|(id, _)| id).collect(),
                            added: points.iter().map(|p| (p.x, p.y)).collect(),
                            margin,
                        }),
                        resolution,
                    });
                }
            }
        }
    }

    Ok(Verdict {
        status: VerdictStatus::NoViolationFound,
        witness: None,
        resolution: resolution.max(cfg.placement_grid),
    })
}

/// Checks n-reducedness: no n members replaceable by n-1 replicas without
/// uncovering part of the plane. Requires the covering to certify at a
/// 1e-6-inflated radius so that the tangency-critical constructions are
/// checkable at all.
pub fn check_reduction(
    a: &PeriodicArrangement,
    cfg: &CheckConfig,
) -> Result<Verdict, CheckerError> {
    if cfg.n == 0 {
        return Err(CheckerError::BadN);
    }
    let r = a.radius();
    let inflated = r * (1.0 + 1e-6);
    let pre = a.covering_check(inflated, r / 2.0)?;
    if pre.status != CoverStatus::CertifiedYes {
        return Err(CheckerError::NotACovering { required: inflated });
    }
    let tol = DEFAULT_TOLERANCE;
    let cert_eps = WITNESS_MARGIN_FACTOR * tol;
    let window = cfg.window_for(r);

    for m in 1..=cfg.n {
        for anchor_motif in 0..a.motif().len() {
            let anchor = CopyId::new(anchor_motif, [0, 0]);
            let anchor_pos = a.copy_position(anchor)?;
            let mut in_window = a.copies_within(anchor_pos, window)?;
            in_window.sort_by(sort_copies);
            let others: Vec<(CopyId, Point)> = in_window
                .iter()
                .copied()
                .filter(|(id, _)| *id != anchor)
                .collect();

            let mut combo = Combinations::new(others.len(), m - 1);
            while let Some(pick) = combo.next() {
                let mut removed: Vec<(CopyId, Point)> = vec![(anchor, anchor_pos)];
                removed.extend(pick.iter().map(|&i| others[i]));
                removed.sort_by(sort_copies);

                if let Some(witness) = try_reduction_subset(a, &removed, cfg, tol, cert_eps)? {
                    return Ok(Verdict {
                        status: VerdictStatus::Violated,
                        witness: Some(witness),
                        resolution: cfg.placement_grid,
                    });
                }
            }
        }
    }
    Ok(Verdict {
        status: VerdictStatus::NoViolationFound,
        witness: None,
        resolution: cfg.placement_grid,
    })
}

fn try_reduction_subset(
    a: &PeriodicArrangement,
    removed: &[(CopyId, Point)],
    cfg: &CheckConfig,
    tol: f64,
    cert_eps: f64,
) -> Result<Option<ReplacementWitness>, CheckerError> {
    let r = a.radius();
    let m = removed.len();

    // sampled uncovered region of the removed disks
    let mut uncovered: Vec<Point> = Vec::new();
    for &(_, pos) in removed {
        let near: Vec<Point> = a
            .copies_within(pos, 2.0 * r + 2.0 * tol + cfg.placement_grid)?
            .into_iter()
            .filter(|(id, _)| !removed.iter().any(|(rid, _)| rid == id))
            .map(|(_, p)| p)
            .collect();
        let steps = (2.0 * r / cfg.placement_grid).ceil() as i64;
        for i in 0..=steps {
            for j in 0..=steps {
                let p = Point::new(
                    pos.x - r + i as f64 * cfg.placement_grid,
                    pos.y - r + j as f64 * cfg.placement_grid,
                );
                if p.dist(pos) > r {
                    continue;
                }
                let c = near.iter().map(|&q| p.dist(q)).fold(f64::INFINITY, f64::min);
                if c > r + tol {
                    uncovered.push(p);
                }
            }
        }
    }

    let candidates: Vec<Point> = if uncovered.is_empty() {
        // jointly redundant at resolution: replace with m-1 of themselves
        removed.iter().take(m - 1).map(|&(_, p)| p).collect()
    } else {
        if m == 1 {
            return Ok(None);
        }
        let k = m - 1;
        if k == 1 {
            let sec = smallest_enclosing_circle(&uncovered)?;
            if sec.radius > r + tol {
                return Ok(None);
            }
            vec![sec.center]
        } else {
            match cover_points_with_k_disks(&uncovered, k, r, tol) {
                Some(centers) => centers,
                None => return Ok(None),
            }
        }
    };
    if !uncovered.is_empty() && candidates.is_empty() {
        return Ok(None);
    }

    // certified re-verification: every point of every removed disk must be
    // within r of the remaining copies plus the candidate centers
    let mut worst: f64 = 0.0;
    for &(_, pos) in removed {
        let mut centers: Vec<Point> = a
            .copies_within(pos, 4.0 * r + 1.0)?
            .into_iter()
            .filter(|(id, _)| !removed.iter().any(|(rid, _)| rid == id))
            .map(|(_, p)| p)
            .collect();
        centers.extend(candidates.iter().copied());
        let oracle = ErosionOracle::from_centers(centers);
        let fmax = oracle.ball_max_min_dist(pos, r);
        worst = worst.max(fmax);
        if fmax > r - cert_eps {
            return Ok(None);
        }
    }
    let mut added: Vec<Point> = candidates;
    added.sort_by(|p, q| p.lex_cmp(q));
    Ok(Some(ReplacementWitness {
        removed: removed.iter().map(|&(id, _)| id).collect(),
        added: added.iter().map(|p| (p.x, p.y)).collect(),
        margin: r - worst,
    }))
}

/// Farthest-point seeding, per-group enclosing circles, and a few rounds of
/// reassignment. Returns k centers whose disks of radius `r` cover all the
/// points, or None.
fn cover_points_with_k_disks(points: &[Point], k: usize, r: f64, tol: f64) -> Option<Vec<Point>> {
    if points.is_empty() {
        return None;
    }
    let mut seeds: Vec<Point> = Vec::with_capacity(k);
    let first = points
        .iter()
        .copied()
        .min_by(|a, b| a.lex_cmp(b))
        .expect("nonempty");
    seeds.push(first);
    while seeds.len() < k {
        let far = points
            .iter()
            .copied()
            .max_by(|a, b| {
                let da = seeds.iter().map(|s| s.dist(*a)).fold(f64::INFINITY, f64::min);
                let db = seeds.iter().map(|s| s.dist(*b)).fold(f64::INFINITY, f64::min);
                da.partial_cmp(&db)
                    .unwrap_or(std::cmp::Ordering::Equal)
                    .then(b.lex_cmp(a))
            })
            .expect("nonempty");
        seeds.push(far);
    }
    let mut centers = seeds;
    for _ in 0..10 {
        let mut groups: Vec<Vec<Point>> = vec![Vec::new(); k];
        for &p in points {
            let gi = (0..k)
                .min_by(|&i, &j| {
                    centers[i]
                        .dist(p)
                        .partial_cmp(&centers[j].dist(p))
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
                .unwrap();
            groups[gi].push(p);
        }
        let mut next = Vec::with_capacity(k);
        for (gi, g) in groups.iter().enumerate() {
            if g.is_empty() {
                next.push(centers[gi]);
            } else {
                next.push(smallest_enclosing_circle(g).ok()?.center);
            }
        }
        if next == centers {
            break;
        }
        centers = next;
    }
    let covered = points.iter().all(|&p| {
        centers
            .iter()
            .any(|&c| c.dist(p) <= r + tol)
    });
    if covered {
        Some(centers)
    } else {
        None
    }
}

/// Re-verifies a replacement witness from scratch. Saturation: every added
/// center keeps distance >= 2r (with the witness margin, up to tolerance)
/// from all non-removed copies and from the other added centers. Reduction:
/// the removed disks are certifiably covered by the remaining copies plus
/// the added centers.
pub fn verify_witness(
    a: &PeriodicArrangement,
    w: &ReplacementWitness,
    mode: ReplacementMode,
) -> Result<bool, CheckerError> {
    for id in &w.removed {
        if id.motif >= a.motif().len() {
            return Err(CheckerError::MalformedWitness(format!(
                "motif index {} out of range",
                id.motif
            )));
        }
    }
    let tol = DEFAULT_TOLERANCE;
    let r = a.radius();
    let added = w.added_points();
    match mode {
        ReplacementMode::Saturation => {
            if added.len() != w.removed.len() + 1 {
                return Err(CheckerError::MalformedWitness(format!(
                    "saturation witness needs |added| = |removed| + 1, got {} and {}",
                    added.len(),
                    w.removed.len()
                )));
            }
            let required = (w.margin - tol).max(0.0);
            let mut slack = f64::INFINITY;
            for (i, &x) in added.iter().enumerate() {
                for &y in added.iter().skip(i + 1) {
                    slack = slack.min(x.dist(y) - 2.0 * r);
                }
                for (id, q) in a.copies_within(x, 2.0 * r + w.margin + 1.0)? {
                    if !w.removed.contains(&id) {
                        slack = slack.min(x.dist(q) - 2.0 * r);
                    }
                }
            }
            Ok(slack > 0.0 && slack >= required)
        }
        ReplacementMode::Reduction => {
            if added.len() + 1 != w.removed.len() {
                return Err(CheckerError::MalformedWitness(format!(
                    "reduction witness needs |added| = |removed| - 1, got {} and {}",
                    added.len(),
                    w.removed.len()
                )));
            }
            let removed_ids = &w.removed;
            let required = (w.margin - tol).max(0.0);
            for &id in removed_ids {
                let pos = a.copy_position(id)?;
                let mut centers: Vec<Point> = a
                    .copies_within(pos, 4.0 * r + 1.0)?
                    .into_iter()
                    .filter(|(cid, _)| !removed_ids.contains(cid))
                    .map(|(_, p)| p)
                    .collect();
                centers.extend(added.iter().copied());
                let oracle = ErosionOracle::from_centers(centers);
                let fmax = oracle.ball_max_min_dist(pos, r);
                if fmax > r - required || fmax > r {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

/// Places `k` disks of the given radius wholly inside `region`, pairwise
/// compatible and clear of `fixed_centers`, by grid seeding at maximal
/// clearance plus pattern-search refinement. Deterministic given the seed;
/// None when nothing is found at the grid resolution.
pub fn free_placement_search(
    fixed_centers: &[Point],
    region: Disk,
    k: usize,
    radius: f64,
    grid: f64,
    iters: usize,
    seed: u64,
) -> Option<Vec<Point>> {
    if k == 0 {
        return None;
    }
    let effective = region.radius - radius;
    if effective < 0.0 {
        return None;
    }
    let inner = Disk::new(region.center, effective);
    search_placements(
        fixed_centers,
        &[inner],
        inner,
        k,
        radius,
        grid,
        iters,
        seed,
    )
    .map(|(pts, _)| pts)
}

/// Shared placement core: candidate points come from grids over the seed
/// disks (clipped to the container), the best-clearance candidates seed a
/// greedy pick of k points, and pattern search maximizes the minimum slack.
#[allow(clippy::too_many_arguments)]
fn search_placements(
    fixed: &[Point],
    seed_regions: &[Disk],
    container: Disk,
    k: usize,
    radius: f64,
    grid: f64,
    iters: usize,
    seed: u64,
) -> Option<(Vec<Point>, f64)> {
    let r2 = 2.0 * radius;
    let accept = WITNESS_MARGIN_FACTOR * DEFAULT_TOLERANCE;
    let clearance = |p: Point| -> f64 {
        let mut c = f64::INFINITY;
        for &q in fixed {
            c = c.min(p.dist(q));
        }
        c
    };
    let inside = |p: Point| container.center.dist(p) <= container.radius + 1e-12;

    let mut candidates: Vec<Point> = Vec::new();
    for region in seed_regions {
        candidates.push(region.center);
        let steps = (2.0 * region.radius / grid).ceil() as i64;
        for i in 0..=steps {
            for j in 0..=steps {
                let p = Point::new(
                    region.center.x - region.radius + i as f64 * grid,
                    region.center.y - region.radius + j as f64 * grid,
                );
                if p.dist(region.center) <= region.radius && inside(p) {
                    candidates.push(p);
                }
            }
        }
    }
    if candidates.is_empty() {
        return None;
    }
    // rank by clearance, break ties toward the container center then lex
    let mut scored: Vec<(Point, f64)> = candidates
        .into_iter()
        .map(|p| (p, clearance(p)))
        .filter(|&(_, c)| c >= r2 - 2.0 * grid)
        .collect();
    scored.sort_by(|a, b| {
        b.1.partial_cmp(&a.1)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(
                container
                    .center
                    .dist(a.0)
                    .partial_cmp(&container.center.dist(b.0))
                    .unwrap_or(std::cmp::Ordering::Equal),
            )
            .then(a.0.lex_cmp(&b.0))
    });
    if scored.is_empty() {
        return None;
    }
    scored.truncate(4000);

    let objective = |pts: &[Point]| -> f64 {
        let mut slack = f64::INFINITY;
        for (i, &p) in pts.iter().enumerate() {
            slack = slack.min(clearance(p) - r2);
            for &q in pts.iter().skip(i + 1) {
                slack = slack.min(p.dist(q) - r2);
            }
        }
        slack
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(Vec<Point>, f64)> = None;
    for start in 0..3 {
        // greedy seed: first point from the ranked list (jittered after the
        // first start), then repeatedly the candidate with the best slack
        let mut pts: Vec<Point> = Vec::with_capacity(k);
        let first = if start == 0 {
            scored[0].0
        } else {
            let base = scored[(start * 7) % scored.len()].0;
            let jx = (rng.random::<f64>() - 0.5) * grid;
            let jy = (rng.random::<f64>() - 0.5) * grid;
            let p = Point::new(base.x + jx, base.y + jy);
            if inside(p) {
                p
            } else {
                base
            }
        };
        pts.push(first);
        while pts.len() < k {
            let next = scored
                .iter()
                .map(|&(p, c)| {
                    let d = pts.iter().map(|&q| p.dist(q)).fold(f64::INFINITY, f64::min);
                    (p, c.min(d))
                })
                .max_by(|a, b| {
                    a.1.partial_cmp(&b.1)
                        .unwrap_or(std::cmp::Ordering::Equal)
                        .then(b.0.lex_cmp(&a.0))
                });
            match next {
                Some((p, _)) => pts.push(p),
                None => break,
            }
        }
        if pts.len() < k {
            return None;
        }

        // pattern search on all points jointly
        let mut step = grid;
        let mut value = objective(&pts);
        for _ in 0..iters {
            let mut improved = false;
            for i in 0..pts.len() {
                let orig = pts[i];
                let mut local_best = value;
                let mut local_pt = orig;
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
                    let cand = Point::new(orig.x + dx, orig.y + dy);
                    if !inside(cand) {
                        continue;
                    }
                    pts[i] = cand;
                    let v = objective(&pts);
                    if v > local_best {
                        local_best = v;
                        local_pt = cand;
                    }
                }
                pts[i] = local_pt;
                if local_best > value {
                    value = local_best;
                    improved = true;
                }
            }
            if !improved {
                step *= 0.5;
                if step < DEFAULT_TOLERANCE {
                    break;
                }
            }
        }
        if value > accept && best.as_ref().is_none_or(|(_, v)| value > *v) {
            let mut sorted = pts;
            sorted.sort_by(|a, b| a.lex_cmp(b));
            best = Some((sorted, value));
        }
    }
    best
}

fn sort_copies(a: &(CopyId, Point), b: &(CopyId, Point)) -> std::cmp::Ordering {
    (a.0.motif, a.0.cell).cmp(&(b.0.motif, b.0.cell))
}

fn hash_subset(removed: &[(CopyId, Point)]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for (id, _) in removed {
        for v in [id.motif as u64, id.cell[0] as u64, id.cell[1] as u64] {
            h ^= v;
            h = h.wrapping_mul(0x1000_0000_01b3);
        }
    }
    h
}

/// Lexicographic k-subsets of 0..n.
struct Combinations {
    n: usize,
    k: usize,
    state: Option<Vec<usize>>,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Combinations {
        let state = if k == 0 {
            Some(Vec::new())
        } else if k <= n {
            Some((0..k).collect())
        } else {
            None
        };
        Combinations { n, k, state }
    }

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.state.clone()?;
        // advance
        if self.k == 0 {
            self.state = None;
        } else {
            let mut s = current.clone();
            let mut i = self.k;
            loop {
                if i == 0 {
                    self.state = None;
                    break;
                }
                i -= 1;
                if s[i] != i + self.n - self.k {
                    s[i] += 1;
                    for j in i + 1..self.k {
                        s[j] = s[j - 1] + 1;
                    }
                    self.state = Some(s);
                    break;
                }
            }
        }
        Some(current)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{hex_covering, hex_packing, sheared_covering, SQRT3};
    use crate::geom::Lattice;

    fn square4() -> PeriodicArrangement {
        let l = Lattice::new(vec![vec![4.0, 0.0], vec![0.0, 4.0]]).unwrap();
        PeriodicArrangement::new(l, vec![Point::ORIGIN], 1.0).unwrap()
    }

    #[test]
    fn hex_packing_is_1_saturated() {
        let v = check_saturation(&hex_packing(), &CheckConfig::new(1)).unwrap();
        assert_eq!(v.status, VerdictStatus::CertifiedHolds);
    }

    #[test]
    fn sparse_square_lattice_violates_1_saturation() {
        let v = check_saturation(&square4(), &CheckConfig::new(1)).unwrap();
        assert_eq!(v.status, VerdictStatus::Violated);
        let w = v.witness.unwrap();
        assert!(w.removed.is_empty());
        assert_eq!(w.added.len(), 1);
        // the corner hole sits at distance 2*sqrt(2) from the centers
        let expect_margin = 8f64.sqrt() - 2.0;
        assert!((w.margin - expect_margin).abs() < 0.05, "margin {}", w.margin);
        assert!(verify_witness(&square4(), &w, ReplacementMode::Saturation).unwrap());
    }

    #[test]
    fn perturbed_witness_fails_verification() {
        let v = check_saturation(&square4(), &CheckConfig::new(1)).unwrap();
        let mut w = v.witness.unwrap();
        w.added[0].0 += 0.5; // slide toward a neighbor
        assert!(!verify_witness(&square4(), &w, ReplacementMode::Saturation).unwrap());
    }

    #[test]
    fn hex_packing_no_2_violation() {
        let cfg = CheckConfig::new(2).with_grid(0.05);
        let v = check_saturation(&hex_packing(), &cfg).unwrap();
        assert_eq!(v.status, VerdictStatus::NoViolationFound);
    }

    #[test]
    fn saturation_requires_packing() {
        let l = Lattice::new(vec![vec![2.0, 0.0], vec![1.0, SQRT3]]).unwrap();
        let overlapping = PeriodicArrangement::new(l, vec![Point::ORIGIN], 1.2).unwrap();
        assert!(matches!(
            check_saturation(&overlapping, &CheckConfig::new(1)),
            Err(CheckerError::NotAPacking)
        ));
    }

    #[test]
    fn duplicated_covering_disk_is_redundant() {
        // hexagonal covering with an extra disk close to an existing one:
        // removing the near-duplicate leaves everything covered
        let l = Lattice::new(vec![vec![SQRT3, 0.0], vec![SQRT3 / 2.0, 1.5]]).unwrap();
        let a = PeriodicArrangement::new(
            l,
            vec![Point::ORIGIN, Point::new(0.05, 0.0)],
            1.0 + 1e-3,
        )
        .unwrap();
        let v = check_reduction(&a, &CheckConfig::new(1).with_grid(0.05)).unwrap();
        assert_eq!(v.status, VerdictStatus::Violated);
        let w = v.witness.unwrap();
        assert_eq!(w.removed.len(), 1);
        assert!(w.added.is_empty());
        assert!(verify_witness(&a, &w, ReplacementMode::Reduction).unwrap());
    }

    #[test]
    fn hex_covering_not_1_reducible() {
        let a = hex_covering(1e-6).unwrap();
        let v = check_reduction(&a, &CheckConfig::new(1).with_grid(0.05)).unwrap();
        assert_eq!(v.status, VerdictStatus::NoViolationFound);
    }

    #[test]
    fn reduction_requires_covering() {
        let a = hex_packing();
        assert!(matches!(
            check_reduction(&a, &CheckConfig::new(1)),
            Err(CheckerError::NotACovering { .. })
        ));
    }

    #[test]
    fn sheared_covering_with_near_duplicate_violates() {
        // the sheared covering is tangency-critical at radius 1, so a
        // redundancy certificate needs a little slack in the radius
        let a = sheared_covering(0.5).unwrap();
        let base = a.lattice().basis().to_vec();
        let l = Lattice::new(base).unwrap();
        let doubled =
            PeriodicArrangement::new(l, vec![Point::ORIGIN, Point::new(0.02, 0.0)], 1.001).unwrap();
        let v = check_reduction(&doubled, &CheckConfig::new(1).with_grid(0.05)).unwrap();
        assert_eq!(v.status, VerdictStatus::Violated);
    }

    #[test]
    fn pair_replaceable_by_single_disk() {
        // 4x4 block of a square covering grid (spacing 1.4, radius 1.05,
        // covering radius 0.99) with one site replaced by a pair straddling
        // it: neither pair member is redundant alone, but together they
        // collapse to one disk back at the site
        let spacing = 1.4;
        let l = Lattice::new(vec![vec![4.0 * spacing, 0.0], vec![0.0, 4.0 * spacing]]).unwrap();
        let mut motif = Vec::new();
        for i in 0..4 {
            for j in 0..4 {
                if i == 0 && j == 0 {
                    continue; // replaced by the pair
                }
                motif.push(Point::new(spacing * i as f64, spacing * j as f64));
            }
        }
        motif.push(Point::new(0.75, 0.0));
        motif.push(Point::new(-0.75, 0.0));
        let a = PeriodicArrangement::new(l, motif, 1.05).unwrap();

        let none = check_reduction(&a, &CheckConfig::new(1).with_grid(0.05)).unwrap();
        assert_eq!(none.status, VerdictStatus::NoViolationFound);

        let v = check_reduction(&a, &CheckConfig::new(2).with_grid(0.05)).unwrap();
        assert_eq!(v.status, VerdictStatus::Violated);
        let w = v.witness.unwrap();
        assert_eq!(w.removed.len(), 2);
        assert_eq!(w.added.len(), 1);
        assert!(w.margin > 0.01, "margin {}", w.margin);
        assert!(verify_witness(&a, &w, ReplacementMode::Reduction).unwrap());
    }

    #[test]
    fn k_disk_cover_of_two_blobs() {
        let mut pts = Vec::new();
        for i in 0..5 {
            pts.push(Point::new(0.1 * i as f64, 0.0));
            pts.push(Point::new(6.0 + 0.1 * i as f64, 0.3));
        }
        let two = cover_points_with_k_disks(&pts, 2, 1.0, 1e-9);
        assert!(two.is_some());
        let centers = two.unwrap();
        assert!(pts
            .iter()
            .all(|&p| centers.iter().any(|&c| c.dist(p) <= 1.0 + 1e-9)));
        // one unit disk cannot span both blobs
        assert!(cover_points_with_k_disks(&pts, 1, 1.0, 1e-9).is_none());
    }

    #[test]
    fn free_placement_center_of_empty_region() {
        let region = Disk::new(Point::new(3.0, -1.0), 1.01);
        let got = free_placement_search(&[], region, 1, 1.0, 0.05, 20, 1).unwrap();
        assert_eq!(got.len(), 1);
        assert!(got[0].dist(region.center) <= 0.02);
    }

    #[test]
    fn free_placement_square_cell_hole() {
        // fixed centers on a 4-spaced grid; one cell window admits the cell center
        let mut fixed = Vec::new();
        for i in -2..=2 {
            for j in -2..=2 {
                fixed.push(Point::new(4.0 * i as f64, 4.0 * j as f64));
            }
        }
        let region = Disk::new(Point::new(2.0, 2.0), 2.8);
        let got = free_placement_search(&fixed, region, 1, 1.0, 0.05, 40, 1).unwrap();
        assert_eq!(got.len(), 1);
        assert!(got[0].dist(Point::new(2.0, 2.0)) < 0.05, "{:?}", got);
    }

    #[test]
    fn free_placement_two_disks_do_not_fit() {
        let region = Disk::new(Point::ORIGIN, 1.9);
        // disks of radius 1 contained in a 1.9 region: centers within 0.9,
        // max separation 1.8 < 2
        assert!(free_placement_search(&[], region, 2, 1.0, 0.05, 30, 1).is_none());
    }

    #[test]
    fn combinations_enumerate() {
        let mut c = Combinations::new(4, 2);
        let mut all = Vec::new();
        while let Some(s) = c.next() {
            all.push(s);
        }
        assert_eq!(
            all,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        let mut c0 = Combinations::new(5, 0);
        assert_eq!(c0.next(), Some(vec![]));
        assert_eq!(c0.next(), None);
    }

    #[test]
    fn malformed_witness_errors() {
        let w = ReplacementWitness {
            removed: vec![CopyId::new(7, [0, 0])],
            added: vec![(0.0, 0.0), (3.0, 0.0)],
            margin: 0.1,
        };
        assert!(verify_witness(&hex_packing(), &w, ReplacementMode::Saturation).is_err());
    }
}
