//! Exact KTR of proper circular-arc instances in O(n + m).
//!
//! With targets x_0 < x_1 < ... < x_{k-1} in clockwise label order, the
//! circle splits into k regions, each spanning the labels between one target
//! and the next. Within a region the induced structure behaves like a proper
//! interval graph, so the probability that its two boundary targets are
//! disconnected inside it — the gap probability Q — comes from a single
//! left-to-right sweep. The k gap events are independent because regions
//! share only perfect targets, and overall disconnection is equivalent to at
//! least two gap events occurring, so KTR = 1 - f(k, 2) where f(j, h) is the
//! probability that at least h of the first j gap events occur.

use crate::error::{Error, Result};
use crate::geometry::Neighborhoods;
use crate::model::ReliabilityInstance;

/// One region between consecutive targets: the labels from `start` (= x_i)
/// clockwise through `end` (= x_{i+1 mod k}), both targets included.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    pub index: usize,
    /// Left boundary target s.
    pub start: u32,
    /// Right boundary target t.
    pub end: u32,
    /// Whether the boundary arcs intersect; such a gap can never disconnect.
    pub targets_adjacent: bool,
    n: u32,
}

impl Region {
    /// Offset of `label` in clockwise label order from `start`.
    pub fn rel(&self, label: u32) -> u32 {
        (label + self.n - self.start) % self.n
    }

    /// Offset of the right boundary; member count is `span() + 1`.
    pub fn span(&self) -> u32 {
        self.rel(self.end)
    }

    /// Label at clockwise offset `rel` from `start`.
    pub fn label_at(&self, rel: u32) -> u32 {
        (self.start + rel) % self.n
    }

    /// Member labels in clockwise order from `start` to `end`.
    pub fn members(&self) -> impl Iterator<Item = u32> + '_ {
        (0..=self.span()).map(move |d| self.label_at(d))
    }

    pub fn member_count(&self) -> usize {
        self.span() as usize + 1
    }
}

/// Per-member reach within one region: for each swept member r (everything
/// except the right boundary), the first and last member of N[r] in clockwise
/// order from the region start, both clamped to the region and defaulting to
/// r itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachTable {
    pub first: Vec<u32>,
    pub last: Vec<u32>,
}

/// f(j, h) for 0 <= j <= k and h in {0, 1, 2}: the probability that at least
/// h of the first j gap events occur.
#[derive(Debug, Clone, PartialEq)]
pub struct AtLeastTable {
    rows: Vec<[f64; 3]>,
}

impl AtLeastTable {
    pub fn at_least(&self, j: usize, h: usize) -> f64 {
        self.rows[j][h]
    }

    pub fn event_count(&self) -> usize {
        self.rows.len() - 1
    }
}

/// Solver result with the instrumentation counter: the number of inner-loop
/// steps spent on neighborhood scans and tail products across all regions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactReport {
    pub value: f64,
    pub steps: u64,
}

/// Split a validated proper arc instance with k >= 2 targets into its k
/// regions, in clockwise target order.
pub fn build_regions(inst: &ReliabilityInstance) -> Result<Vec<Region>> {
    let fam = inst.arc_family().ok_or_else(|| {
        Error::Unsupported("region decomposition requires a circular-arc instance".into())
    })?;
    let targets = inst.targets();
    let k = targets.len();
    if k < 2 {
        return Err(Error::Validation(
            "region decomposition needs at least two targets".into(),
        ));
    }
    let n = fam.len() as u32;
    Ok((0..k)
        .map(|i| {
            let s = targets[i];
            let t = targets[(i + 1) % k];
            Region {
                index: i,
                start: s,
                end: t,
                targets_adjacent: fam.arc(s).intersects(&fam.arc(t)),
                n,
            }
        })
        .collect())
}

/// First/last reach of every swept member of `region`.
///
/// Neighbors beyond the right boundary (clockwise offset past the region)
/// never qualify; a member with no qualifying neighbor keeps itself.
pub fn compute_reach(region: &Region, nbrs: &Neighborhoods) -> ReachTable {
    let span = region.span();
    let mut first = Vec::with_capacity(span as usize);
    let mut last = Vec::with_capacity(span as usize);
    for d in 0..span {
        let r = region.label_at(d);
        let mut first_rel = d;
        let mut last_rel = d;
        for &nb in nbrs.of(r) {
            let rel = region.rel(nb);
            if rel < first_rel {
                first_rel = rel;
            }
            if rel > last_rel && rel <= span {
                last_rel = rel;
            }
        }
        first.push(region.label_at(first_rel));
        last.push(region.label_at(last_rel));
    }
    ReachTable { first, last }
}

/// Probability that the region's boundary targets are disconnected within it.
///
/// Sweeps members left to right maintaining PrF[r], the probability that no
/// operating path joins the region start to any member in (r, last(r)]:
///
///   PrF[r] = PrF[r-1] + (1 - PrF[first(r)-1]) * (1 - q_r) * prod q over (r, last(r)]
///
/// with PrF[start-1] = 0. The product over an empty range is 1, which makes
/// the sweep settle at 1 once a member cannot reach anything ahead of it.
/// Returns PrF[end-1]; 0 immediately when the boundary targets intersect.
pub fn gap_disconnect_prob(region: &Region, reach: &ReachTable, q: &[f64]) -> f64 {
    let mut scratch = vec![0.0; q.len()];
    gap_disconnect_prob_into(region, reach, q, &mut scratch)
}

/// Scratch-reusing form of [`gap_disconnect_prob`]; `scratch` must have one
/// slot per label and needs no re-initialization between regions.
pub fn gap_disconnect_prob_into(
    region: &Region,
    reach: &ReachTable,
    q: &[f64],
    scratch: &mut [f64],
) -> f64 {
    if region.targets_adjacent {
        return 0.0;
    }
    let n = region.n;
    let prev = |label: u32| ((label + n - 1) % n) as usize;
    scratch[prev(region.start)] = 0.0;
    let span = region.span();
    for d in 0..span {
        let r = region.label_at(d);
        let last_rel = region.rel(reach.last[d as usize]);
        let mut tail = 1.0;
        for step in (d + 1)..=last_rel {
            tail *= q[region.label_at(step) as usize];
        }
        let first = reach.first[d as usize];
        scratch[r as usize] = scratch[prev(r)]
            + (1.0 - scratch[prev(first)]) * (1.0 - q[r as usize]) * tail;
    }
    scratch[prev(region.end)]
}

/// Fill the at-least table from gap probabilities:
/// f(j, 0) = 1, f(0, 1) = f(0, 2) = 0, and
/// f(j, h) = Q_j * f(j-1, h-1) + (1 - Q_j) * f(j-1, h).
pub fn at_least_prob(gaps: &[f64]) -> AtLeastTable {
    let k = gaps.len();
    let mut rows = Vec::with_capacity(k + 1);
    rows.push([1.0, 0.0, 0.0]);
    for (j, &qj) in gaps.iter().enumerate() {
        let prev = rows[j];
        rows.push([
            1.0,
            qj * prev[0] + (1.0 - qj) * prev[1],
            qj * prev[1] + (1.0 - qj) * prev[2],
        ]);
    }
    AtLeastTable { rows }
}

/// Exact KTR of a proper circular-arc instance. Instances with fewer than
/// two targets are trivially connected. Chord instances are unsupported.
pub fn ktr_exact(inst: &ReliabilityInstance) -> Result<f64> {
    Ok(ktr_exact_report(inst)?.value)
}

/// The gap probabilities Q_1..Q_k of a validated proper instance with
/// k >= 2 targets, in region order.
pub fn gap_probabilities(inst: &ReliabilityInstance) -> Result<Vec<f64>> {
    Ok(gaps_with_steps(inst)?.0)
}

fn gaps_with_steps(inst: &ReliabilityInstance) -> Result<(Vec<f64>, u64)> {
    let fam = inst.arc_family().ok_or_else(|| {
        Error::Unsupported("exact solver requires a circular-arc instance".into())
    })?;
    let nbrs = fam.closed_neighborhoods();
    let regions = build_regions(inst)?;
    let q = inst.q();
    let mut scratch = vec![0.0; fam.len()];
    let mut gaps = Vec::with_capacity(regions.len());
    let mut steps = 0u64;
    for region in &regions {
        if region.targets_adjacent {
            gaps.push(0.0);
            continue;
        }
        let reach = compute_reach(region, &nbrs);
        for d in 0..region.span() {
            let r = region.label_at(d);
            steps += nbrs.of(r).len() as u64;
            steps += (region.rel(reach.last[d as usize]) - d) as u64;
        }
        gaps.push(gap_disconnect_prob_into(region, &reach, q, &mut scratch));
    }
    Ok((gaps, steps))
}

/// Like [`ktr_exact`], also reporting the inner-loop step counter.
pub fn ktr_exact_report(inst: &ReliabilityInstance) -> Result<ExactReport> {
    if inst.arc_family().is_none() {
        return Err(Error::Unsupported(
            "exact solver requires a circular-arc instance".into(),
        ));
    }
    inst.require_proper()?;
    let k = inst.target_count();
    if k <= 1 {
        return Ok(ExactReport {
            value: 1.0,
            steps: 0,
        });
    }
    let (gaps, steps) = gaps_with_steps(inst)?;
    let table = at_least_prob(&gaps);
    Ok(ExactReport {
        value: 1.0 - table.at_least(k, 2),
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Arc, ArcFamily, Chord, ChordFamily};
    use crate::model::Family;

    fn arc(s: u32, e: u32) -> Arc {
        Arc { start: s, end: e }
    }

    fn arcs_instance(
        p: u32,
        arcs: Vec<Arc>,
        q: Vec<f64>,
        targets: Vec<u32>,
    ) -> ReliabilityInstance {
        let fam = ArcFamily::new(p, arcs).unwrap();
        ReliabilityInstance::new(Family::Arcs(fam), q, targets).unwrap()
    }

    fn c4_instance() -> ReliabilityInstance {
        arcs_instance(
            8,
            vec![arc(0, 3), arc(2, 5), arc(4, 7), arc(6, 1)],
            vec![0.0, 0.5, 0.0, 0.5],
            vec![0, 2],
        )
    }

    /// Chain s - r - t on three arcs: r meets both boundary arcs, s and t
    /// stay apart.
    fn chain_instance(q_mid: f64) -> ReliabilityInstance {
        arcs_instance(
            8,
            vec![arc(0, 2), arc(1, 5), arc(4, 6)],
            vec![0.0, q_mid, 0.0],
            vec![0, 2],
        )
    }

    #[test]
    fn regions_of_six_arcs() {
        let inst = arcs_instance(
            12,
            vec![
                arc(0, 3),
                arc(2, 5),
                arc(4, 7),
                arc(6, 9),
                arc(8, 11),
                arc(10, 1),
            ],
            vec![0.1, 0.0, 0.2, 0.0, 0.3, 0.0],
            vec![1, 3, 5],
        );
        let regions = build_regions(&inst).unwrap();
        assert_eq!(regions.len(), 3);
        assert_eq!(regions[0].members().collect::<Vec<_>>(), vec![1, 2, 3]);
        assert_eq!(regions[1].members().collect::<Vec<_>>(), vec![3, 4, 5]);
        assert_eq!(regions[2].members().collect::<Vec<_>>(), vec![5, 0, 1]);
    }

    #[test]
    fn regions_of_c4() {
        let regions = build_regions(&c4_instance()).unwrap();
        assert_eq!(regions[0].members().collect::<Vec<_>>(), vec![0, 1, 2]);
        assert_eq!(regions[1].members().collect::<Vec<_>>(), vec![2, 3, 0]);
    }

    #[test]
    fn regions_when_every_vertex_is_a_target() {
        let inst = arcs_instance(
            8,
            vec![arc(0, 3), arc(2, 5), arc(4, 7), arc(6, 1)],
            vec![0.0; 4],
            vec![0, 1, 2, 3],
        );
        let regions = build_regions(&inst).unwrap();
        assert_eq!(regions.len(), 4);
        for r in &regions {
            assert_eq!(r.member_count(), 2);
            assert!(r.targets_adjacent);
        }
    }

    #[test]
    fn reach_on_c4_first_region() {
        let inst = c4_instance();
        let nbrs = inst.arc_family().unwrap().closed_neighborhoods();
        let regions = build_regions(&inst).unwrap();
        let reach = compute_reach(&regions[0], &nbrs);
        // members 0, 1 swept; N[0] = {0,1,3}, N[1] = {0,1,2}
        assert_eq!(reach.first, vec![0, 0]);
        assert_eq!(reach.last, vec![1, 2]);
    }

    #[test]
    fn reach_of_two_member_region_with_intersecting_targets() {
        let inst = arcs_instance(
            8,
            vec![arc(0, 3), arc(2, 5)],
            vec![0.0, 0.0],
            vec![0, 1],
        );
        let nbrs = inst.arc_family().unwrap().closed_neighborhoods();
        let regions = build_regions(&inst).unwrap();
        assert!(regions[0].targets_adjacent);
        let reach = compute_reach(&regions[0], &nbrs);
        // only s is swept; it keeps itself on the left and reaches t
        assert_eq!(reach.first, vec![0]);
        assert_eq!(reach.last, vec![1]);
    }

    #[test]
    fn reach_defaults_for_isolated_interior_arc() {
        let inst = arcs_instance(
            8,
            vec![arc(0, 1), arc(2, 3), arc(4, 5)],
            vec![0.0, 0.4, 0.0],
            vec![0, 2],
        );
        let nbrs = inst.arc_family().unwrap().closed_neighborhoods();
        let regions = build_regions(&inst).unwrap();
        let reach = compute_reach(&regions[0], &nbrs);
        assert_eq!(reach.first, vec![0, 1]);
        assert_eq!(reach.last, vec![0, 1]);
    }

    #[test]
    fn gap_zero_when_targets_intersect() {
        // two boundary arcs that overlap directly
        let inst = arcs_instance(
            8,
            vec![arc(0, 3), arc(2, 5)],
            vec![0.0, 0.0],
            vec![0, 1],
        );
        let nbrs = inst.arc_family().unwrap().closed_neighborhoods();
        let regions = build_regions(&inst).unwrap();
        for region in &regions {
            let reach = compute_reach(region, &nbrs);
            assert_eq!(gap_disconnect_prob(region, &reach, inst.q()), 0.0);
        }
    }

    #[test]
    fn gap_of_chain_equals_bridge_failure() {
        let inst = chain_instance(0.3);
        let nbrs = inst.arc_family().unwrap().closed_neighborhoods();
        let regions = build_regions(&inst).unwrap();
        let reach = compute_reach(&regions[0], &nbrs);
        let q1 = gap_disconnect_prob(&regions[0], &reach, inst.q());
        assert_eq!(q1, 0.3);
    }

    #[test]
    fn gap_of_c4_region_is_half() {
        let inst = c4_instance();
        let nbrs = inst.arc_family().unwrap().closed_neighborhoods();
        let regions = build_regions(&inst).unwrap();
        let reach = compute_reach(&regions[0], &nbrs);
        assert_eq!(gap_disconnect_prob(&regions[0], &reach, inst.q()), 0.5);
    }

    #[test]
    fn gap_reaches_one_at_interior_cut() {
        // region 0 holds an interior arc that reaches nothing ahead of it
        let inst = arcs_instance(
            8,
            vec![arc(0, 1), arc(2, 3), arc(4, 5)],
            vec![0.0, 0.4, 0.0],
            vec![0, 2],
        );
        let nbrs = inst.arc_family().unwrap().closed_neighborhoods();
        let regions = build_regions(&inst).unwrap();
        let reach = compute_reach(&regions[0], &nbrs);
        assert_eq!(gap_disconnect_prob(&regions[0], &reach, inst.q()), 1.0);
    }

    #[test]
    fn sweep_state_is_nondecreasing_and_in_range() {
        for (arcs, q, targets) in [
            (
                vec![arc(0, 3), arc(2, 5), arc(4, 7), arc(6, 1)],
                vec![0.0, 0.5, 0.0, 0.5],
                vec![0u32, 2],
            ),
            (
                vec![arc(0, 2), arc(1, 5), arc(4, 6)],
                vec![0.0, 0.3, 0.0],
                vec![0, 2],
            ),
            (
                vec![arc(0, 1), arc(2, 3), arc(4, 5)],
                vec![0.0, 0.4, 0.0],
                vec![0, 2],
            ),
        ] {
            let inst = arcs_instance(8, arcs, q, targets);
            let nbrs = inst.arc_family().unwrap().closed_neighborhoods();
            for region in build_regions(&inst).unwrap() {
                if region.targets_adjacent {
                    continue;
                }
                let reach = compute_reach(&region, &nbrs);
                let mut scratch = vec![0.0; inst.vertex_count()];
                let gap = gap_disconnect_prob_into(&region, &reach, inst.q(), &mut scratch);
                assert!((0.0..=1.0).contains(&gap));
                let swept: Vec<f64> = (0..region.span())
                    .map(|d| scratch[region.label_at(d) as usize])
                    .collect();
                assert!(
                    swept.windows(2).all(|w| w[0] <= w[1]),
                    "sweep state decreased: {swept:?}"
                );
            }
        }
    }

    #[test]
    fn at_least_table_boundaries_and_values() {
        let table = at_least_prob(&[0.5, 0.5]);
        for j in 0..=2 {
            assert_eq!(table.at_least(j, 0), 1.0);
        }
        assert_eq!(table.at_least(0, 1), 0.0);
        assert_eq!(table.at_least(0, 2), 0.0);
        assert_eq!(table.at_least(2, 1), 0.75);
        assert_eq!(table.at_least(2, 2), 0.25);

        let sparse = at_least_prob(&[0.7, 0.0, 0.0]);
        assert_eq!(sparse.at_least(3, 2), 0.0);
    }

    #[test]
    fn c4_reliability() {
        assert!((ktr_exact(&c4_instance()).unwrap() - 0.75).abs() < 1e-15);
    }

    #[test]
    fn c4_gap_vector() {
        assert_eq!(gap_probabilities(&c4_instance()).unwrap(), vec![0.5, 0.5]);
    }

    #[test]
    fn chain_reliability_is_bridge_survival() {
        let got = ktr_exact(&chain_instance(0.3)).unwrap();
        assert_eq!(got, 1.0 - 0.3);
    }

    #[test]
    fn pairwise_intersecting_triple_is_certain() {
        let inst = arcs_instance(
            8,
            vec![arc(0, 4), arc(2, 6), arc(5, 1)],
            vec![0.0, 0.0, 0.9],
            vec![0, 1],
        );
        assert_eq!(ktr_exact(&inst).unwrap(), 1.0);
    }

    #[test]
    fn all_targets_connected_family() {
        let inst = arcs_instance(
            8,
            vec![arc(0, 3), arc(2, 5), arc(4, 7), arc(6, 1)],
            vec![0.0; 4],
            vec![0, 1, 2, 3],
        );
        assert_eq!(ktr_exact(&inst).unwrap(), 1.0);
    }

    #[test]
    fn doubly_cut_instance_is_zero() {
        let inst = arcs_instance(
            8,
            vec![arc(0, 1), arc(2, 3), arc(4, 5), arc(6, 7)],
            vec![0.0, 0.4, 0.0, 0.6],
            vec![0, 2],
        );
        assert_eq!(ktr_exact(&inst).unwrap(), 0.0);
    }

    #[test]
    fn single_target_is_trivially_connected() {
        let inst = arcs_instance(8, vec![arc(0, 1), arc(2, 3)], vec![0.0, 0.8], vec![0]);
        assert_eq!(ktr_exact(&inst).unwrap(), 1.0);
        let none = arcs_instance(8, vec![arc(0, 1), arc(2, 3)], vec![0.7, 0.8], vec![]);
        assert_eq!(ktr_exact(&none).unwrap(), 1.0);
    }

    #[test]
    fn chord_instances_are_unsupported() {
        let fam = ChordFamily::new(
            4,
            vec![Chord { p1: 0, p2: 2 }, Chord { p1: 1, p2: 3 }],
        )
        .unwrap();
        let inst =
            ReliabilityInstance::new(Family::Chords(fam), vec![0.0, 0.0], vec![0, 1]).unwrap();
        assert!(matches!(ktr_exact(&inst), Err(Error::Unsupported(_))));
    }

    #[test]
    fn improper_instance_is_rejected() {
        let fam = ArcFamily::new(8, vec![arc(0, 5), arc(1, 3)]).unwrap();
        let inst =
            ReliabilityInstance::new(Family::Arcs(fam), vec![0.0, 0.0], vec![0, 1]).unwrap();
        assert!(matches!(ktr_exact(&inst), Err(Error::Validation(_))));
    }

    #[test]
    fn report_counts_steps() {
        let report = ktr_exact_report(&c4_instance()).unwrap();
        assert!(report.steps > 0);
        assert!((report.value - 0.75).abs() < 1e-15);
    }
}
