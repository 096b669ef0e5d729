//! The three-case lower bound on the radio number of a tree product and the
//! checkers for orderings that attain it.
//!
//! All fractional thresholds are compared with denominators cleared, so every
//! test is exact integer arithmetic.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ordering::{is_feasible_pair, VertexOrdering};
use crate::product::{ProductGraph, SectorRelation};

/// Largest ordering the condition checkers accept.
pub const MAX_CHECK_ORDER: usize = 10_000;

/// Which case of the bound applies, by `|W(T1)| * |W(T2)|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CenterCase {
    OneCenter,
    TwoCenters,
    FourCenters,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub value: i64,
    pub case: CenterCase,
    pub xi: u32,
    pub p: usize,
    pub d: u32,
}

/// The lower bound
///
/// * `(p-1)(d+1) - 2n L(T1) - 2m L(T2) + 1` with one weight center,
/// * `(p-1)d - 2n L(T1) - 2m L(T2)` with two,
/// * `(p-1)(d-1) - 2n L(T1) - 2m L(T2) + 1` with four.
pub fn lower_bound(g: &ProductGraph) -> BoundReport {
    let (m, n) = (g.t1().order() as i64, g.t2().order() as i64);
    let p = m * n;
    let d = g.diameter() as i64;
    let levels = 2 * n * g.t1().total_level() as i64 + 2 * m * g.t2().total_level() as i64;
    let (case, value) = match g.center_count() {
        1 => (CenterCase::OneCenter, (p - 1) * (d + 1) - levels + 1),
        2 => (CenterCase::TwoCenters, (p - 1) * d - levels),
        _ => (CenterCase::FourCenters, (p - 1) * (d - 1) - levels + 1),
    };
    BoundReport {
        value,
        case,
        xi: g.xi(),
        p: p as usize,
        d: g.diameter(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    /// Pairwise distance condition along the ordering.
    Distance,
    /// Level caps and the phi inequality.
    LevelPhi,
    /// Small minimum over consecutive distances in every window of three.
    MinStep,
    /// Every consecutive distance capped.
    MaxStep,
    /// Level caps plus sector separation of nearby positions.
    LevelSector,
}

/// The failed inequality `lhs <= rhs` (or `lhs >= rhs` for [`Condition::Distance`])
/// at positions `a <= b` of the ordering. Both sides are scaled by two where
/// the original threshold is a half-integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub a: usize,
    pub b: usize,
    pub lhs: i64,
    pub rhs: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionVerdict {
    pub condition: Condition,
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl ConditionVerdict {
    fn from_witness(condition: Condition, witness: Option<Witness>) -> Self {
        Self {
            condition,
            holds: witness.is_none(),
            witness,
        }
    }
}

/// Whether the bound can possibly be attained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Attainability {
    Open,
    NotAttainableUnlessP2P2,
}

/// With two weight centers in both factors the bound is attained only by
/// `P2 x P2`.
pub fn attainability_gate(g: &ProductGraph) -> Attainability {
    let two = |t: &crate::tree::Tree| t.weight_centers().len() == 2;
    let is_p2 = |t: &crate::tree::Tree| t.order() == 2;
    if two(g.t1()) && two(g.t2()) && !(is_p2(g.t1()) && is_p2(g.t2())) {
        Attainability::NotAttainableUnlessP2P2
    } else {
        Attainability::Open
    }
}

fn require_attaining_shape(ord: &VertexOrdering<'_>) -> Result<()> {
    if ord.len() > MAX_CHECK_ORDER {
        return Err(Error::SizeGuard {
            what: "ordering length",
            actual: ord.len(),
            limit: MAX_CHECK_ORDER,
        });
    }
    let feas = ord.feasibility();
    if let Some(t) = feas.first_violation {
        return Err(Error::NotFeasible(format!(
            "consecutive pair at position {t} breaks the sector rule"
        )));
    }
    if !ord.satisfies_endpoint_condition() {
        return Err(Error::NotFeasible(
            "endpoint levels do not satisfy the end condition".into(),
        ));
    }
    Ok(())
}

/// Prefix sums `C[k] = sum_{t<k} [L(z_t) + L(z_{t+1}) + delta(z_t, z_{t+1})]`.
fn step_prefix(ord: &VertexOrdering<'_>) -> Vec<i64> {
    let g = ord.graph();
    let mut prefix = Vec::with_capacity(ord.len());
    prefix.push(0i64);
    for w in ord.sequence().windows(2) {
        let step = (g.level(w[0]) + g.level(w[1]) + g.delta(w[0], w[1])) as i64;
        debug_assert!(step <= g.diameter() as i64);
        prefix.push(prefix.last().unwrap() + step);
    }
    prefix
}

/// For all `a < b`:
/// `d(z_a, z_b) >= sum_{t=a}^{b-1} [L(z_t) + L(z_{t+1}) + delta] - (b-a-1)(d+1)`.
pub fn check_distance_condition(ord: &VertexOrdering<'_>) -> Result<ConditionVerdict> {
    require_attaining_shape(ord)?;
    let g = ord.graph();
    let seq = ord.sequence();
    let d1 = g.diameter() as i64 + 1;
    let prefix = step_prefix(ord);
    let p = seq.len();
    for a in 0..p {
        for b in a + 1..p {
            let rhs = prefix[b] - prefix[a] - (b - a - 1) as i64 * d1;
            // Consecutive pairs of a feasible ordering have phi = 0, so each
            // step is a distance of at most d and every further b lowers the
            // right side by at least one. Distinct vertices are at distance >= 1.
            if rhs <= 1 {
                break;
            }
            let lhs = g.distance(seq[a], seq[b]) as i64;
            if lhs < rhs {
                return Ok(ConditionVerdict::from_witness(
                    Condition::Distance,
                    Some(Witness { a, b, lhs, rhs }),
                ));
            }
        }
    }
    Ok(ConditionVerdict::from_witness(Condition::Distance, None))
}

/// Level caps and the phi inequality; needs both factor diameters at least 2.
pub fn check_level_condition(ord: &VertexOrdering<'_>) -> Result<ConditionVerdict> {
    let g = ord.graph();
    if g.t1().diameter() < 2 || g.t2().diameter() < 2 {
        return Err(Error::HypothesisViolated(format!(
            "factor diameters {} and {} must both be at least 2",
            g.t1().diameter(),
            g.t2().diameter()
        )));
    }
    require_attaining_shape(ord)?;
    let seq = ord.sequence();
    let p = seq.len();
    let d = g.diameter() as i64;
    let xi = g.xi() as i64;
    let four = g.center_count() == 4;
    let levels: Vec<i64> = seq.iter().map(|&z| g.level(z) as i64).collect();

    for (s, &l) in levels.iter().enumerate() {
        let cap = if four && (s + 1 == p / 2 || s == p / 2) {
            d + 3 - 2 * xi
        } else {
            d + 1 - 2 * xi
        };
        if 2 * l > cap {
            return Ok(ConditionVerdict::from_witness(
                Condition::LevelPhi,
                Some(Witness { a: s, b: s, lhs: 2 * l, rhs: cap }),
            ));
        }
    }

    let mut level_prefix = vec![0i64; p + 1];
    for (s, &l) in levels.iter().enumerate() {
        level_prefix[s + 1] = level_prefix[s] + l;
    }
    for a in 0..p {
        for b in a + 1..p {
            let (za, zb) = (seq[a], seq[b]);
            if is_feasible_pair(g, za, zb) {
                continue;
            }
            let interior = level_prefix[b] - level_prefix[a + 1];
            let spans_middle = four && a + 1 <= p / 2 && b >= p / 2;
            let correction = xi - g.delta(za, zb) as i64 - i64::from(spans_middle);
            let rhs = (b - a - 1) as i64 * (d + 1 - xi) - 2 * interior - correction;
            let lhs = 2 * g.phi(za, zb) as i64;
            if lhs > rhs {
                return Ok(ConditionVerdict::from_witness(
                    Condition::LevelPhi,
                    Some(Witness { a, b, lhs, rhs }),
                ));
            }
        }
    }
    Ok(ConditionVerdict::from_witness(Condition::LevelPhi, None))
}

/// The three sufficient conditions, in order (i), (ii), (iii). Needs at most
/// two weight centers in the product.
pub fn check_sufficient_conditions(ord: &VertexOrdering<'_>) -> Result<[ConditionVerdict; 3]> {
    let g = ord.graph();
    if g.center_count() > 2 {
        return Err(Error::HypothesisViolated(
            "both factors have two weight centers".into(),
        ));
    }
    require_attaining_shape(ord)?;
    let seq = ord.sequence();
    let p = seq.len();
    let d = g.diameter() as i64;
    let xi = g.xi() as i64;
    let steps: Vec<i64> = seq
        .windows(2)
        .map(|w| g.distance(w[0], w[1]) as i64)
        .collect();

    let first = steps.windows(2).enumerate().find_map(|(t, w)| {
        let lhs = 2 * w[0].min(w[1]);
        (lhs > d + xi).then_some(Witness { a: t, b: t + 2, lhs, rhs: d + xi })
    });

    let second = steps.iter().enumerate().find_map(|(t, &s)| {
        (2 * s > d + xi + 2).then_some(Witness { a: t, b: t + 1, lhs: 2 * s, rhs: d + xi + 2 })
    });

    let third = seq
        .iter()
        .enumerate()
        .find_map(|(s, &z)| {
            let lhs = 2 * g.level(z) as i64;
            (lhs > d + 1 - xi).then_some(Witness { a: s, b: s, lhs, rhs: d + 1 - xi })
        })
        .or_else(|| {
            (0..p).find_map(|a| {
                (a + 1..p.min(a + d.max(0) as usize)).find_map(|b| {
                    let rel = g.sector_relation(seq[a], seq[b]);
                    let ok = matches!(rel, SectorRelation::Different | SectorRelation::Opposite);
                    // lhs/rhs record the index gap against the diameter
                    (!ok).then_some(Witness { a, b, lhs: (b - a) as i64, rhs: d })
                })
            })
        });

    Ok([
        ConditionVerdict::from_witness(Condition::MinStep, first),
        ConditionVerdict::from_witness(Condition::MaxStep, second),
        ConditionVerdict::from_witness(Condition::LevelSector, third),
    ])
}
