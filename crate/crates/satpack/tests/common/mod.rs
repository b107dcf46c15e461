//! Shared test support: a brute-force saturation oracle (exhaustive
//! placement grid with margin filtering, fully independent of the checker's
//! seeded search) and a deterministic corpus of random packed tori.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use satpack::engine::greedy_saturate;
use satpack::geom::{Lattice, Point};
use satpack::periodic::{CopyId, PeriodicArrangement};

pub const ORACLE_STEP: f64 = 0.02;
/// A violation counts as robust when its margin clears this.
pub const THETA_HI: f64 = 0.05;
/// No-violation counts as robust when the best grid margin is below minus
/// this (covers the grid's Lipschitz gap of 1.5 * step).
pub const THETA_LO: f64 = 0.035;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleVerdict {
    Violated,
    NotViolated,
    Ambiguous,
}

/// Exhaustive-grid n-saturation oracle for n <= 2.
pub fn oracle_saturation(a: &PeriodicArrangement, n: usize) -> OracleVerdict {
    assert!((1..=2).contains(&n));
    let r = a.radius();
    let r2 = 2.0 * r;

    // m = 1: single insertion anywhere on the torus
    let m1 = {
        let (b1, b2) = a.lattice().reduced_basis().unwrap();
        let xs = [0.0, b1.x, b2.x, b1.x + b2.x];
        let ys = [0.0, b1.y, b2.y, b1.y + b2.y];
        let (x0, x1) = (
            xs.iter().cloned().fold(f64::INFINITY, f64::min),
            xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
        );
        let (y0, y1) = (
            ys.iter().cloned().fold(f64::INFINITY, f64::min),
            ys.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
        );
        let mut best = f64::NEG_INFINITY;
        let nx = ((x1 - x0) / ORACLE_STEP).ceil() as i64;
        let ny = ((y1 - y0) / ORACLE_STEP).ceil() as i64;
        for i in 0..=nx {
            for j in 0..=ny {
                let p = Point::new(x0 + i as f64 * ORACLE_STEP, y0 + j as f64 * ORACLE_STEP);
                best = best.max(a.torus_dist(p).unwrap());
            }
        }
        classify(best - r2)
    };
    if m1 == OracleVerdict::Violated || n == 1 {
        return m1;
    }

    // m = 2: remove one copy (each motif index, anchored at the origin
    // cell), place two disks in its window
    let window = 5.0 * r2; // (2n+1) * 2r with n = 2
    let mut all_robust_no = m1 == OracleVerdict::NotViolated;
    for anchor_motif in 0..a.motif().len() {
        let anchor = CopyId::new(anchor_motif, [0, 0]);
        let anchor_pos = a.copy_position(anchor).unwrap();
        let fixed: Vec<Point> = a
            .copies_within(anchor_pos, window + 4.0 * r)
            .unwrap()
            .into_iter()
            .filter(|(id, _)| *id != anchor)
            .map(|(_, p)| p)
            .collect();
        let clearance_floor = r2 - 3.0 * ORACLE_STEP;
        let mut candidates: Vec<(Point, f64)> = Vec::new();
        let steps = (2.0 * window / ORACLE_STEP).ceil() as i64;
        for i in 0..=steps {
            for j in 0..=steps {
                let p = Point::new(
                    anchor_pos.x - window + i as f64 * ORACLE_STEP,
                    anchor_pos.y - window + j as f64 * ORACLE_STEP,
                );
                if p.dist(anchor_pos) > window {
                    continue;
                }
                let mut c = f64::INFINITY;
                for &q in &fixed {
                    let d = p.dist(q);
                    if d < c {
                        c = d;
                        if c < clearance_floor {
                            break;
                        }
                    }
                }
                if c >= clearance_floor {
                    candidates.push((p, c));
                }
            }
        }
        let mut best_pair = f64::NEG_INFINITY;
        for i in 0..candidates.len() {
            for j in i + 1..candidates.len() {
                let (p, cp) = candidates[i];
                let (q, cq) = candidates[j];
                let obj = cp.min(cq).min(p.dist(q)) - r2;
                if obj > best_pair {
                    best_pair = obj;
                }
            }
        }
        match classify(best_pair) {
            OracleVerdict::Violated => return OracleVerdict::Violated,
            OracleVerdict::Ambiguous => all_robust_no = false,
            OracleVerdict::NotViolated => {}
        }
    }
    if all_robust_no {
        OracleVerdict::NotViolated
    } else {
        OracleVerdict::Ambiguous
    }
}

fn classify(margin: f64) -> OracleVerdict {
    if margin > THETA_HI {
        OracleVerdict::Violated
    } else if margin < -THETA_LO {
        OracleVerdict::NotViolated
    } else {
        OracleVerdict::Ambiguous
    }
}

/// Deterministic random packed torus: a roomy lattice saturated greedily,
/// then thinned and jiggled. Returns None when the instance fails its
/// packing invariant (caller moves to the next seed).
pub fn random_torus(seed: u64) -> Option<PeriodicArrangement> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let l1 = 4.2 + 0.5 * rng.random::<f64>();
    let theta = (75.0 + 30.0 * rng.random::<f64>()).to_radians();
    let l2 = l1 + 0.5 * rng.random::<f64>();
    let lattice = Lattice::new(vec![
        vec![l1, 0.0],
        vec![l2 * theta.cos(), l2 * theta.sin()],
    ])
    .ok()?;
    let saturated = greedy_saturate(&lattice, 1.0, seed).ok()?;
    let mut motif = saturated.motif().to_vec();
    if motif.len() > 6 {
        return None;
    }
    // thin 0-2 disks
    let drop = rng.random_range(0..=2usize).min(motif.len() - 1);
    for _ in 0..drop {
        let idx = rng.random_range(0..motif.len());
        motif.remove(idx);
    }
    // jiggle, keeping the packing certified
    let jiggled: Vec<Point> = motif
        .iter()
        .map(|p| {
            Point::new(
                p.x + (rng.random::<f64>() - 0.5) * 0.08,
                p.y + (rng.random::<f64>() - 0.5) * 0.08,
            )
        })
        .collect();
    let candidate = saturated.with_motif(jiggled).ok()?;
    if candidate.is_packing().ok()?.is_yes() {
        Some(candidate)
    } else {
        saturated.with_motif(motif).ok().filter(|a| {
            a.is_packing().map(|v| v.is_yes()).unwrap_or(false)
        })
    }
}
