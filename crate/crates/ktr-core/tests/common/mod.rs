//! Shared helpers for the integration suites.

use ktr_core::gen::family_from_reaches;
use ktr_core::geometry::ArcFamily;
use ktr_core::model::{Family, ReliabilityInstance};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Sample a cyclic reach chain in [min_reach, dmax] (d_{r+1} >= d_r - 1,
/// wrapping). min_reach 0 admits arcs that touch no later start, which is
/// how disconnected regions arise.
pub fn sample_reach_chain(
    rng: &mut ChaCha8Rng,
    n: usize,
    min_reach: u32,
    dmax: u32,
) -> Vec<u32> {
    loop {
        let mut d = Vec::with_capacity(n);
        d.push(rng.random_range(min_reach..=dmax));
        for r in 1..n {
            let lo = min_reach.max(d[r - 1].saturating_sub(1));
            d.push(rng.random_range(lo..=dmax));
        }
        if d[0] + 1 >= d[n - 1] {
            return d;
        }
    }
}

/// Attach random targets and probabilities to a labeled proper family.
pub fn instance_over(family: ArcFamily, k: usize, rng: &mut ChaCha8Rng) -> ReliabilityInstance {
    let n = family.len();
    let mut targets: Vec<u32> = rand::seq::index::sample(rng, n, k)
        .iter()
        .map(|i| i as u32)
        .collect();
    targets.sort_unstable();
    let mut q = vec![0.0; n];
    for (r, slot) in q.iter_mut().enumerate() {
        if targets.binary_search(&(r as u32)).is_err() {
            *slot = rng.random::<f64>();
        }
    }
    ReliabilityInstance::new(Family::Arcs(family), q, targets).unwrap()
}

/// A proper instance whose reaches may drop to zero, so regions can contain
/// hard cuts. Deterministic per seed.
pub fn free_reach_instance(n: usize, k: usize, dmax: u32, seed: u64) -> ReliabilityInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = sample_reach_chain(&mut rng, n, 0, dmax.min(n as u32 - 1));
    let family = family_from_reaches(&d).unwrap();
    assert!(family.is_proper());
    instance_over(family, k, &mut rng)
}

/// A proper instance that never wraps past the top of the circle, rebuilt
/// with two spare positions after the last used one. The spare positions are
/// covered by no arc, so an isolated arc can be appended there.
pub fn padded_line_instance(
    n: usize,
    k: usize,
    dmax: u32,
    seed: u64,
) -> ReliabilityInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut d = sample_reach_chain(&mut rng, n, 0, dmax.min(n as u32 - 1));
    // clamp so no arc reaches past the last gap; the clamp schedule drops by
    // one per label, so the chain constraint survives it
    for (r, slot) in d.iter_mut().enumerate() {
        *slot = (*slot).min((n - 1 - r) as u32);
    }
    debug_assert!((1..n).all(|r| d[r] + 1 >= d[r - 1]));
    let family = family_from_reaches(&d).unwrap();
    let padded = ArcFamily::new(family.circumference() + 2, family.arcs().to_vec()).unwrap();
    assert!(padded.is_proper());
    instance_over(padded, k, &mut rng)
}

/// Append one arc on `inst`'s two top spare positions. The new arc gets the
/// highest start position, so existing labels are untouched.
pub fn append_isolated_arc(inst: &ReliabilityInstance, q_new: f64) -> ReliabilityInstance {
    let fam = inst.arc_family().expect("arc instance");
    let p = fam.circumference();
    let mut arcs = fam.arcs().to_vec();
    for a in &arcs {
        assert!(a.start < p - 2 && a.end < p - 2, "top positions must be free");
        assert!(a.start < a.end, "no arc may wrap past the spare positions");
    }
    arcs.push(ktr_core::geometry::Arc {
        start: p - 2,
        end: p - 1,
    });
    let family = ArcFamily::new(p, arcs).unwrap();
    let mut q = inst.q().to_vec();
    q.push(q_new);
    ReliabilityInstance::new(Family::Arcs(family), q, inst.targets().to_vec()).unwrap()
}
