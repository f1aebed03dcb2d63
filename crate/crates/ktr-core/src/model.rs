//! Reliability instances: an intersection model bound to per-vertex failure
//! probabilities and a target set.

use crate::error::{Error, Result};
use crate::geometry::{label_arcs, Arc, ArcFamily, Chord, ChordFamily, Neighborhoods};

/// The geometric side of an instance.
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    Arcs(ArcFamily),
    Chords(ChordFamily),
}

impl Family {
    pub fn len(&self) -> usize {
        match self {
            Family::Arcs(f) => f.len(),
            Family::Chords(f) => f.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn circumference(&self) -> u32 {
        match self {
            Family::Arcs(f) => f.circumference(),
            Family::Chords(f) => f.circumference(),
        }
    }

    pub fn closed_neighborhoods(&self) -> Neighborhoods {
        match self {
            Family::Arcs(f) => f.closed_neighborhoods(),
            Family::Chords(f) => f.closed_neighborhoods(),
        }
    }
}

/// An intersection model, one failure probability per element, and the
/// sorted target set K. Targets are perfectly reliable: their q must be 0.
#[derive(Debug, Clone, PartialEq)]
pub struct ReliabilityInstance {
    family: Family,
    q: Vec<f64>,
    targets: Vec<u32>,
}

impl ReliabilityInstance {
    /// Validate and build an instance. Arc families must already be labeled.
    /// Targets may arrive in any order; duplicates are rejected.
    pub fn new(family: Family, q: Vec<f64>, mut targets: Vec<u32>) -> Result<Self> {
        targets.sort_unstable();
        if targets.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Validation("duplicate target label".into()));
        }
        let inst = ReliabilityInstance { family, q, targets };
        inst.validate()?;
        Ok(inst)
    }

    /// Like [`new`](Self::new), but zeroes nonzero failure probabilities on
    /// targets instead of rejecting them. Returns how many were coerced.
    pub fn new_coercing_targets(
        family: Family,
        mut q: Vec<f64>,
        targets: Vec<u32>,
    ) -> Result<(Self, usize)> {
        let mut coerced = 0;
        for &t in &targets {
            if let Some(slot) = q.get_mut(t as usize) {
                if *slot != 0.0 {
                    *slot = 0.0;
                    coerced += 1;
                }
            }
        }
        Ok((Self::new(family, q, targets)?, coerced))
    }

    fn validate(&self) -> Result<()> {
        let n = self.family.len();
        if let Family::Arcs(f) = &self.family {
            if !f.is_labeled() {
                return Err(Error::Validation(
                    "arc family must be labeled in clockwise start order".into(),
                ));
            }
        }
        if self.q.len() != n {
            return Err(Error::Validation(format!(
                "expected {} failure probabilities, got {}",
                n,
                self.q.len()
            )));
        }
        for (r, &p) in self.q.iter().enumerate() {
            if !(p.is_finite() && (0.0..=1.0).contains(&p)) {
                return Err(Error::Validation(format!(
                    "failure probability of element {r} out of range"
                )));
            }
        }
        for &t in &self.targets {
            if t as usize >= n {
                return Err(Error::Validation(format!("target label {t} out of range")));
            }
            if self.q[t as usize] != 0.0 {
                return Err(Error::Validation(format!(
                    "target {t} must be perfect (q = 0)"
                )));
            }
        }
        Ok(())
    }

    /// Properness gate for the exact solver: arc families must contain no
    /// nested pair. Chord families pass vacuously.
    pub fn require_proper(&self) -> Result<()> {
        if let Family::Arcs(f) = &self.family {
            if !f.is_proper() {
                return Err(Error::Validation(
                    "arc family is not proper (some arc contains another)".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn arc_family(&self) -> Option<&ArcFamily> {
        match &self.family {
            Family::Arcs(f) => Some(f),
            Family::Chords(_) => None,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.family.len()
    }

    pub fn q(&self) -> &[f64] {
        &self.q
    }

    pub fn targets(&self) -> &[u32] {
        &self.targets
    }

    pub fn target_count(&self) -> usize {
        self.targets.len()
    }

    pub fn is_target(&self, v: u32) -> bool {
        self.targets.binary_search(&v).is_ok()
    }

    /// Intersection-graph adjacency of the instance.
    pub fn adjacency(&self) -> Adjacency {
        Adjacency::from_closed(&self.family.closed_neighborhoods())
    }

    /// The same instance with every circle position shifted clockwise by
    /// `shift`. Arc labels are reassigned to keep clockwise start order;
    /// probabilities and targets follow the relabeling.
    pub fn rotated(&self, shift: u32) -> Self {
        let p = self.family.circumference() as u64;
        let mv = |x: u32| ((x as u64 + shift as u64) % p) as u32;
        match &self.family {
            Family::Arcs(f) => {
                let moved: Vec<Arc> = f
                    .arcs()
                    .iter()
                    .map(|a| Arc {
                        start: mv(a.start),
                        end: mv(a.end),
                    })
                    .collect();
                let unlabeled = ArcFamily::new(f.circumference(), moved)
                    .expect("rotation preserves family validity");
                let (labeled, perm) = label_arcs(&unlabeled);
                let mut q = vec![0.0; self.q.len()];
                for (old, &label) in perm.iter().enumerate() {
                    q[label as usize] = self.q[old];
                }
                let mut targets: Vec<u32> =
                    self.targets.iter().map(|&t| perm[t as usize]).collect();
                targets.sort_unstable();
                ReliabilityInstance {
                    family: Family::Arcs(labeled),
                    q,
                    targets,
                }
            }
            Family::Chords(f) => {
                let moved: Vec<Chord> = f
                    .chords()
                    .iter()
                    .map(|c| Chord {
                        p1: mv(c.p1),
                        p2: mv(c.p2),
                    })
                    .collect();
                let family = ChordFamily::new(f.circumference(), moved)
                    .expect("rotation preserves family validity");
                ReliabilityInstance {
                    family: Family::Chords(family),
                    q: self.q.clone(),
                    targets: self.targets.clone(),
                }
            }
        }
    }
}

/// Open adjacency lists of the intersection graph (no self-loops).
#[derive(Debug, Clone, PartialEq)]
pub struct Adjacency {
    offsets: Vec<usize>,
    flat: Vec<u32>,
    edges: usize,
}

impl Adjacency {
    pub fn from_closed(nbrs: &Neighborhoods) -> Self {
        let n = nbrs.element_count();
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0usize);
        let mut flat = Vec::with_capacity(nbrs.total_size().saturating_sub(n));
        for r in 0..n as u32 {
            flat.extend(nbrs.of(r).iter().copied().filter(|&x| x != r));
            offsets.push(flat.len());
        }
        Adjacency {
            offsets,
            flat,
            edges: nbrs.edge_count(),
        }
    }

    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Self {
        Self::from_closed(&Neighborhoods::from_edges(n, edges))
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.flat[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.neighbors(v).len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(s: u32, e: u32) -> Arc {
        Arc { start: s, end: e }
    }

    fn c4_family() -> ArcFamily {
        ArcFamily::new(8, vec![arc(0, 3), arc(2, 5), arc(4, 7), arc(6, 1)]).unwrap()
    }

    #[test]
    fn c4_instance_is_accepted() {
        let inst = ReliabilityInstance::new(
            Family::Arcs(c4_family()),
            vec![0.0, 0.5, 0.0, 0.5],
            vec![0, 2],
        )
        .unwrap();
        inst.require_proper().unwrap();
        assert_eq!(inst.targets(), &[0, 2]);
    }

    #[test]
    fn nested_family_fails_properness() {
        let fam = ArcFamily::new(8, vec![arc(0, 5), arc(1, 3)]).unwrap();
        let inst =
            ReliabilityInstance::new(Family::Arcs(fam), vec![0.0, 0.0], vec![0, 1]).unwrap();
        assert!(matches!(inst.require_proper(), Err(Error::Validation(_))));
    }

    #[test]
    fn imperfect_target_is_rejected() {
        let err = ReliabilityInstance::new(
            Family::Arcs(c4_family()),
            vec![0.0, 0.5, 0.3, 0.5],
            vec![0, 2],
        )
        .unwrap_err();
        assert!(matches!(err, Error::Validation(_)));
    }

    #[test]
    fn target_coercion_zeroes_q() {
        let (inst, coerced) = ReliabilityInstance::new_coercing_targets(
            Family::Arcs(c4_family()),
            vec![0.0, 0.5, 0.3, 0.5],
            vec![0, 2],
        )
        .unwrap();
        assert_eq!(coerced, 1);
        assert_eq!(inst.q()[2], 0.0);
    }

    #[test]
    fn q_out_of_range_is_rejected() {
        let err = ReliabilityInstance::new(
            Family::Arcs(c4_family()),
            vec![0.0, 1.5, 0.0, 0.5],
            vec![0, 2],
        )
        .unwrap_err();
        assert!(matches!(err, Error::Validation(_)));
    }

    #[test]
    fn adjacency_of_c4_is_a_cycle() {
        let inst = ReliabilityInstance::new(
            Family::Arcs(c4_family()),
            vec![0.0, 0.5, 0.0, 0.5],
            vec![0, 2],
        )
        .unwrap();
        let adj = inst.adjacency();
        assert_eq!(adj.edge_count(), 4);
        assert_eq!(adj.neighbors(0), &[1, 3]);
        assert_eq!(adj.neighbors(1), &[0, 2]);
        assert_eq!(adj.neighbors(2), &[1, 3]);
        assert_eq!(adj.neighbors(3), &[0, 2]);
    }

    #[test]
    fn adjacency_of_disjoint_arcs_is_empty() {
        let fam = ArcFamily::new(8, vec![arc(0, 1), arc(2, 3), arc(4, 5)]).unwrap();
        let inst =
            ReliabilityInstance::new(Family::Arcs(fam), vec![0.0, 0.2, 0.0], vec![0, 2]).unwrap();
        assert_eq!(inst.adjacency().edge_count(), 0);
    }

    #[test]
    fn adjacency_of_crossing_chords() {
        let fam = ChordFamily::new(
            4,
            vec![Chord { p1: 0, p2: 2 }, Chord { p1: 1, p2: 3 }],
        )
        .unwrap();
        let inst =
            ReliabilityInstance::new(Family::Chords(fam), vec![0.0, 0.0], vec![0, 1]).unwrap();
        assert_eq!(inst.adjacency().edge_count(), 1);
    }

    #[test]
    fn rotation_preserves_adjacency() {
        let inst = ReliabilityInstance::new(
            Family::Arcs(c4_family()),
            vec![0.0, 0.5, 0.0, 0.5],
            vec![0, 2],
        )
        .unwrap();
        for shift in [1, 3, 5, 7] {
            let rot = inst.rotated(shift);
            assert_eq!(rot.adjacency(), inst.adjacency());
            assert_eq!(rot.targets().len(), 2);
        }
    }
}
