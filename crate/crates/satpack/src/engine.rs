//! Stochastic construction and improvement of periodic arrangements:
//! greedy saturation of a torus, replacement moves, and simulated-annealing
//! density optimization under saturation/reduction constraints.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::checker::{
    check_reduction, check_saturation, saturation_scan, verify_witness, CheckConfig, CheckerError,
    ReplacementMode, VerdictStatus,
};
use crate::geom::{Lattice, Point};
use crate::periodic::{CoverStatus, PeriodicArrangement, PeriodicError};

#[derive(Debug, Error)]
pub enum EngineError {
    #[error(transparent)]
    Periodic(#[from] PeriodicError),
    #[error(transparent)]
    Checker(#[from] CheckerError),
    #[error(transparent)]
    Geom(#[from] crate::geom::GeomError),
    #[error("lattice too small: shortest vector {shortest} < 2 * radius {radius}")]
    LatticeTooSmall { shortest: f64, radius: f64 },
    #[error("invalid initial state: {0}")]
    InvalidInitialState(String),
    #[error("at least one move weight must be positive")]
    NoMoves,
    #[error("cooling factor must lie in (0, 1), got {0}")]
    BadCooling(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoveWeights {
    pub insert: f64,
    pub remove: f64,
    pub jiggle: f64,
    pub replace: f64,
    pub deform: f64,
}

impl Default for MoveWeights {
    fn default() -> MoveWeights {
        MoveWeights {
            insert: 0.5,
            remove: 1.0,
            jiggle: 3.0,
            replace: 0.0,
            deform: 2.0,
        }
    }
}

impl MoveWeights {
    fn total(&self) -> f64 {
        self.insert + self.remove + self.jiggle + self.replace + self.deform
    }
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub seed: u64,
    pub iterations: usize,
    pub move_weights: MoveWeights,
    pub cooling: f64,
    pub constraint_n: usize,
    pub resolution: f64,
}

impl SearchConfig {
    pub fn new(seed: u64, iterations: usize) -> SearchConfig {
        SearchConfig {
            seed,
            iterations,
            move_weights: MoveWeights::default(),
            cooling: 0.97,
            constraint_n: 1,
            resolution: 0.05,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Objective {
    MinDensityPacking,
    MinCountCovering,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum MoveKind {
    Insert,
    Remove,
    Jiggle,
    ReplaceKForKPlus1,
    DeformLattice,
    Repair,
}

/// One accepted move.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct AuditEntry {
    pub iteration: usize,
    pub kind: MoveKind,
    pub density: f64,
    pub motif_len: usize,
}

/// Fills the torus greedily: starting from a single disk, repeatedly insert
/// at the deepest hole while a unit of clearance remains. The result is
/// 1-saturated (insertion ties broken lexicographically by hole
/// coordinates; the procedure is deterministic, `seed` is recorded but not
/// consumed).
pub fn greedy_saturate(
    lattice: &Lattice,
    radius: f64,
    _seed: u64,
) -> Result<PeriodicArrangement, EngineError> {
    let shortest = lattice.shortest_vector()?;
    if shortest < 2.0 * radius {
        return Err(EngineError::LatticeTooSmall { shortest, radius });
    }
    let mut arrangement =
        PeriodicArrangement::new(lattice.clone(), vec![Point::ORIGIN], radius)?;
    loop {
        let hole = arrangement.deepest_hole(1e-4 * radius.max(1.0))?;
        let polished = polish_hole(&arrangement, hole.point, 1e-4)?;
        let clearance = arrangement.torus_dist(polished)?;
        if clearance < 2.0 * radius - 1e-9 {
            break;
        }
        let mut motif = arrangement.motif().to_vec();
        motif.push(polished);
        arrangement = arrangement.with_motif(motif)?;
    }
    Ok(arrangement)
}

/// Pattern-search refinement of a deep-hole candidate.
fn polish_hole(
    a: &PeriodicArrangement,
    start: Point,
    step0: f64,
) -> Result<Point, PeriodicError> {
    let mut p = start;
    let mut best = a.torus_dist(p)?;
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
            let d = a.torus_dist(q)?;
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
    Ok(p)
}

/// Applies one (k -> k+1) replacement if the checker finds one: k removed
/// disks and k+1 added ones, periodized over the torus. Returns the denser
/// arrangement, or None when no replacement is found at the resolution (or
/// when the found witness does not periodize cleanly).
pub fn replace_k_for_k_plus_1(
    a: &PeriodicArrangement,
    k: usize,
    cfg: &CheckConfig,
) -> Result<Option<PeriodicArrangement>, EngineError> {
    if !a.is_packing()?.is_yes() {
        return Err(EngineError::InvalidInitialState(
            "replacement move requires a certified packing".into(),
        ));
    }
    let verdict = saturation_scan(a, cfg, k + 1, k + 1)?;
    let Some(witness) = verdict.witness else {
        return Ok(None);
    };
    // periodization requires distinct motif indices among the removals
    let mut indices: Vec<usize> = witness.removed.iter().map(|id| id.motif).collect();
    indices.sort_unstable();
    indices.dedup();
    if indices.len() != witness.removed.len() {
        return Ok(None);
    }
    let mut motif: Vec<Point> = a
        .motif()
        .iter()
        .enumerate()
        .filter(|(i, _)| !indices.contains(i))
        .map(|(_, &p)| p)
        .collect();
    // translate added points by the anchor's cell so they sit near the kept
    // fundamental cell; canonicalization does the rest
    motif.extend(witness.added_points());
    let Ok(candidate) = a.with_motif(motif) else {
        return Ok(None);
    };
    if !candidate.is_packing()?.is_yes() {
        return Ok(None);
    }
    if !verify_witness(a, &witness, ReplacementMode::Saturation)? {
        return Ok(None);
    }
    Ok(Some(candidate))
}

/// Simulated annealing over {jiggle, remove, insert, replace, deform}
/// moves. Every accepted state keeps its constraint: packings must not
/// violate n-saturation, coverings must stay certified coverings without an
/// n-reduction violation. Constraint checks in the loop run at the coarse
/// `resolution`; the returned best state is re-validated (and greedily
/// repaired if needed) at full resolution.
pub fn optimize(
    a0: &PeriodicArrangement,
    objective: Objective,
    cfg: &SearchConfig,
) -> Result<(PeriodicArrangement, Vec<AuditEntry>), EngineError> {
    if cfg.move_weights.total() <= 0.0 {
        return Err(EngineError::NoMoves);
    }
    if !(cfg.cooling > 0.0 && cfg.cooling < 1.0) {
        return Err(EngineError::BadCooling(cfg.cooling));
    }
    let coarse = CheckConfig::new(cfg.constraint_n.max(1))
        .with_grid(cfg.resolution)
        .with_seed(cfg.seed);
    if !state_valid(a0, objective, &coarse)? {
        return Err(EngineError::InvalidInitialState(format!(
            "initial arrangement fails the {objective:?} constraint"
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut current = a0.clone();
    let mut best = a0.clone();
    let mut audit: Vec<AuditEntry> = Vec::new();
    let t0 = 0.05;
    for iteration in 0..cfg.iterations {
        let temp = t0 * cfg.cooling.powi(iteration as i32);
        let progress = iteration as f64 / cfg.iterations.max(1) as f64;
        let kind = pick_move(&cfg.move_weights, &mut rng);
        let Some(proposal) = propose(&current, kind, &coarse, progress, &mut rng)? else {
            continue;
        };
        if !state_valid(&proposal, objective, &coarse)? {
            continue;
        }
        let delta = proposal.density() - current.density();
        let accept = delta <= 0.0 || rng.random::<f64>() < (-delta / temp).exp();
        if !accept {
            continue;
        }
        current = proposal;
        audit.push(AuditEntry {
            iteration,
            kind,
            density: current.density(),
            motif_len: current.motif().len(),
        });
        if current.density() < best.density() {
            best = current.clone();
        }
    }

    // full-resolution validation of the best state only; greedy repair when
    // the coarse in-loop checks let something through
    let full = CheckConfig::new(cfg.constraint_n.max(1)).with_seed(cfg.seed);
    match objective {
        Objective::MinDensityPacking => {
            let r = best.radius();
            let mut guard = 0;
            loop {
                let v = check_saturation(&best, &full)?;
                let done = if cfg.constraint_n <= 1 {
                    v.status == VerdictStatus::CertifiedHolds
                } else {
                    v.status != VerdictStatus::Violated
                };
                if done {
                    break;
                }
                // repair by filling the deepest hole; falls back to the
                // witness when the hole itself is not legally insertable
                let hole = best.deepest_hole(1e-4)?;
                let polished = polish_hole(&best, hole.point, 1e-4)?;
                let clearance = best.torus_dist(polished)?;
                let new_motif = if clearance >= 2.0 * r - 1e-9 {
                    let mut motif = best.motif().to_vec();
                    motif.push(polished);
                    motif
                } else if let Some(w) = &v.witness {
                    let mut indices: Vec<usize> = w.removed.iter().map(|id| id.motif).collect();
                    indices.sort_unstable();
                    indices.dedup();
                    let mut motif: Vec<Point> = best
                        .motif()
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| !indices.contains(i))
                        .map(|(_, &p)| p)
                        .collect();
                    motif.extend(w.added_points());
                    motif
                } else {
                    break; // tangency band: no legal repair, report as-is
                };
                best = best.with_motif(new_motif)?;
                audit.push(AuditEntry {
                    iteration: cfg.iterations,
                    kind: MoveKind::Repair,
                    density: best.density(),
                    motif_len: best.motif().len(),
                });
                guard += 1;
                if guard > 4 * best.motif().len() + 16 {
                    return Err(EngineError::InvalidInitialState(
                        "repair loop failed to reach a saturated state".into(),
                    ));
                }
            }
        }
        Objective::MinCountCovering => {
            let r = best.radius();
            let cover = best.covering_check(r * (1.0 + 1e-6), r / 2.0)?;
            if cover.status != CoverStatus::CertifiedYes {
                return Err(EngineError::InvalidInitialState(
                    "best state lost coverage at full resolution".into(),
                ));
            }
        }
    }
    Ok((best, audit))
}

fn state_valid(
    a: &PeriodicArrangement,
    objective: Objective,
    cfg: &CheckConfig,
) -> Result<bool, EngineError> {
    match objective {
        Objective::MinDensityPacking => {
            if !a.is_packing()?.is_yes() {
                return Ok(false);
            }
            let v = check_saturation(a, cfg)?;
            Ok(v.status != VerdictStatus::Violated)
        }
        Objective::MinCountCovering => {
            let r = a.radius();
            let cover = a.covering_check(r * (1.0 + 1e-6), cfg.placement_grid.max(r / 4.0))?;
            if cover.status != CoverStatus::CertifiedYes {
                return Ok(false);
            }
            let v = check_reduction(a, cfg)?;
            Ok(v.status != VerdictStatus::Violated)
        }
    }
}

fn pick_move(w: &MoveWeights, rng: &mut ChaCha8Rng) -> MoveKind {
    let total = w.total();
    let mut x = rng.random::<f64>() * total;
    for (kind, weight) in [
        (MoveKind::Insert, w.insert),
        (MoveKind::Remove, w.remove),
        (MoveKind::Jiggle, w.jiggle),
        (MoveKind::ReplaceKForKPlus1, w.replace),
        (MoveKind::DeformLattice, w.deform),
    ] {
        if x < weight {
            return kind;
        }
        x -= weight;
    }
    MoveKind::Jiggle
}

fn propose(
    current: &PeriodicArrangement,
    kind: MoveKind,
    coarse: &CheckConfig,
    progress: f64,
    rng: &mut ChaCha8Rng,
) -> Result<Option<PeriodicArrangement>, EngineError> {
    let r = current.radius();
    match kind {
        MoveKind::Insert => {
            let hole = current.deepest_hole(1e-3)?;
            if hole.lower < 2.0 * r - 1e-9 {
                return Ok(None);
            }
            let mut motif = current.motif().to_vec();
            motif.push(hole.point);
            Ok(current.with_motif(motif).ok())
        }
        MoveKind::Remove => {
            if current.motif().len() <= 1 {
                return Ok(None);
            }
            let idx = rng.random_range(0..current.motif().len());
            let motif: Vec<Point> = current
                .motif()
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != idx)
                .map(|(_, &p)| p)
                .collect();
            Ok(current.with_motif(motif).ok())
        }
        MoveKind::Jiggle => {
            let idx = rng.random_range(0..current.motif().len());
            // amplitude anneals down so late moves settle the arrangement
            let amp = r * (0.08 + 0.4 * (1.0 - progress));
            let dx = (rng.random::<f64>() - 0.5) * 2.0 * amp;
            let dy = (rng.random::<f64>() - 0.5) * 2.0 * amp;
            let mut motif = current.motif().to_vec();
            motif[idx] = motif[idx].add(Point::new(dx, dy));
            Ok(current.with_motif(motif).ok())
        }
        MoveKind::ReplaceKForKPlus1 => {
            let k = if coarse.n >= 2 { 1 } else { 0 };
            replace_k_for_k_plus_1(current, k, coarse)
        }
        MoveKind::Repair => Ok(None),
        MoveKind::DeformLattice => {
            let (b1, b2) = current.lattice().reduced_basis()?;
            // half the deformations are pure homothety (the move that
            // actually thins the torus); the rest jitter the basis shape
            let (nb1, nb2) = if rng.random::<f64>() < 0.5 {
                let u = 1.0 + 0.03 * rng.random::<f64>() - 0.005;
                (b1.scale(u), b2.scale(u))
            } else {
                let scale = 0.03 * b1.norm().max(b2.norm());
                let jitter = |rng: &mut ChaCha8Rng| (rng.random::<f64>() - 0.5) * 2.0 * scale;
                (
                    Point::new(b1.x + jitter(rng), b1.y + jitter(rng)),
                    Point::new(b2.x + jitter(rng), b2.y + jitter(rng)),
                )
            };
            let Ok(new_lattice) = Lattice::planar(nb1, nb2) else {
                return Ok(None);
            };
            if new_lattice.shortest_vector()? < 2.0 * r * 0.9 {
                return Ok(None);
            }
            // carry motif through fractional coordinates of the old basis
            let (nb1r, nb2r) = new_lattice.reduced_basis()?;
            let mut motif = Vec::with_capacity(current.motif().len());
            for &p in current.motif() {
                let (s, t) = current.lattice().coords(p)?;
                motif.push(nb1r.scale(s).add(nb2r.scale(t)));
            }
            // repair: grow the cell (keeping the disk radius) until the
            // shortest vector admits the packing again
            let sv = new_lattice.shortest_vector()?;
            let factor = if sv < 2.0 * r {
                2.0 * r / sv * (1.0 + 1e-12)
            } else {
                1.0
            };
            let basis: Vec<Vec<f64>> = new_lattice
                .basis()
                .iter()
                .map(|row| row.iter().map(|v| v * factor).collect())
                .collect();
            let motif: Vec<Point> = motif.iter().map(|p| p.scale(factor)).collect();
            let Ok(lattice) = Lattice::new(basis) else {
                return Ok(None);
            };
            Ok(PeriodicArrangement::new(lattice, motif, r).ok())
        }
    }
}
