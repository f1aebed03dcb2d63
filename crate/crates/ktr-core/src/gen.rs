//! Seeded generator of proper circular-arc instances.
//!
//! An instance is shaped by one reach value per arc: arc r ends in the gap
//! right after the start of arc (r + d_r) mod n. Sampling the reaches as a
//! cyclic chain with d_{r+1} >= d_r - 1 keeps the clockwise order of ends
//! aligned with the order of starts, which rules out containment. The
//! circle has exactly 2n positions; ends sharing a gap sit in clockwise
//! window order, so the layout degenerates to starts on even positions and
//! one end per odd position whenever the reach vector is constant.

use crate::error::{Error, Result};
use crate::geometry::{Arc, ArcFamily};
use crate::model::{Family, ReliabilityInstance};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CHAIN_ATTEMPTS: usize = 64;

/// Assemble the arc family described by one reach value per arc.
///
/// Reach 0 is allowed (the arc ends in its own gap and touches no start);
/// reach may be at most n - 1. The result is labeled by construction. It is
/// proper whenever the reaches satisfy the cyclic chain constraint
/// d_{r+1} >= d_r - 1; other reach vectors may come out improper.
pub fn family_from_reaches(reaches: &[u32]) -> Result<ArcFamily> {
    let n = reaches.len();
    if n == 0 {
        return Err(Error::Generation("need at least one arc".into()));
    }
    let nu = n as u32;
    for &d in reaches {
        if d >= nu {
            return Err(Error::Generation(format!(
                "reach {d} out of range for {n} arcs"
            )));
        }
    }
    // ends grouped by gap, in clockwise window order
    let mut by_gap: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (r, &d) in reaches.iter().enumerate() {
        by_gap[((r as u32 + d) % nu) as usize].push(r as u32);
    }
    for (j, group) in by_gap.iter_mut().enumerate() {
        group.sort_by_key(|&r| (r + nu - (j as u32 + 1)) % nu);
    }
    let mut starts = vec![0u32; n];
    let mut ends = vec![0u32; n];
    let mut cursor = 0u32;
    for j in 0..n {
        starts[j] = cursor;
        cursor += 1;
        for &r in &by_gap[j] {
            ends[r as usize] = cursor;
            cursor += 1;
        }
    }
    debug_assert_eq!(cursor as usize, 2 * n);
    let arcs: Vec<Arc> = (0..n)
        .map(|r| Arc {
            start: starts[r],
            end: ends[r],
        })
        .collect();
    ArcFamily::new(cursor, arcs)
}

/// Sample the cyclic reach chain in [min_reach, dmax].
fn sample_reaches<R: Rng>(
    rng: &mut R,
    n: usize,
    min_reach: u32,
    dmax: u32,
) -> Result<Vec<u32>> {
    for _ in 0..CHAIN_ATTEMPTS {
        let mut d = Vec::with_capacity(n);
        d.push(rng.random_range(min_reach..=dmax));
        for r in 1..n {
            let lo = min_reach.max(d[r - 1].saturating_sub(1));
            d.push(rng.random_range(lo..=dmax));
        }
        // cyclic wrap of the chain constraint
        if d[0] + 1 >= d[n - 1] {
            return Ok(d);
        }
    }
    Err(Error::Generation(format!(
        "could not satisfy the cyclic reach constraint after {CHAIN_ATTEMPTS} attempts"
    )))
}

/// Generate a proper circular-arc instance with n arcs, k targets, reaches
/// in [1, min(reach_bound, n-1)], and uniform failure probabilities on
/// non-targets. Deterministic per seed.
pub fn generate_instance(n: u32, k: u32, reach_bound: u32, seed: u64) -> Result<ReliabilityInstance> {
    if n == 0 || k < 2 || k > n {
        return Err(Error::Validation(format!(
            "need 2 <= k <= n, got n = {n}, k = {k}"
        )));
    }
    if reach_bound == 0 {
        return Err(Error::Validation("reach bound must be at least 1".into()));
    }
    let dmax = reach_bound.min(n - 1).max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let reaches = sample_reaches(&mut rng, n as usize, 1, dmax)?;
    let family = family_from_reaches(&reaches)?;
    if !family.is_proper() {
        return Err(Error::Generation(
            "generated family failed the properness re-check".into(),
        ));
    }
    let mut targets: Vec<u32> = rand::seq::index::sample(&mut rng, n as usize, k as usize)
        .iter()
        .map(|i| i as u32)
        .collect();
    targets.sort_unstable();
    let mut q = vec![0.0; n as usize];
    let mut next_target = 0usize;
    for (r, slot) in q.iter_mut().enumerate() {
        if next_target < targets.len() && targets[next_target] == r as u32 {
            next_target += 1;
        } else {
            *slot = rng.random::<f64>();
        }
    }
    ReliabilityInstance::new(Family::Arcs(family), q, targets)
}
