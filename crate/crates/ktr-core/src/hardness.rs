//! Edge-cover counting reduced to KTR on circle graphs.
//!
//! A bipartite graph B compiles into a chord family: one chord per left
//! vertex on the left semicircle, one per right vertex on the right
//! semicircle, one chord per edge crossing exactly its two endpoint chords,
//! and a hub chord separating the semicircles that crosses every edge chord.
//! With the vertex and hub chords as perfect targets and every edge chord
//! failing with probability 1/2, the operating edge-chord subsets that keep
//! the targets connected are exactly the edge covers of B, which pins the
//! identity |EC(B)| = R * 2^|E(B)|.

use crate::error::{Error, Result};
use crate::geometry::{Chord, ChordFamily};
use crate::model::{Family, ReliabilityInstance};
use crate::oracle::{connected_targets, ktr_brute};

/// Guard for the subset enumerations below.
pub const COUNT_MAX_EDGES: usize = 25;
/// Tighter guard for the three-way identity check.
pub const IDENTITY_MAX_EDGES: usize = 20;

/// A bipartite graph with parts U (left) and V (right).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    left: u32,
    right: u32,
    edges: Vec<(u32, u32)>,
}

impl BipartiteGraph {
    pub fn new(left: u32, right: u32, edges: Vec<(u32, u32)>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for &(u, v) in &edges {
            if u >= left || v >= right {
                return Err(Error::Validation(format!(
                    "edge ({u}, {v}) references a missing vertex"
                )));
            }
            if !seen.insert((u, v)) {
                return Err(Error::Validation(format!("duplicate edge ({u}, {v})")));
            }
        }
        Ok(BipartiteGraph { left, right, edges })
    }

    pub fn left_count(&self) -> u32 {
        self.left
    }

    pub fn right_count(&self) -> u32 {
        self.right
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }
}

/// What each chord of the reduction stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChordRole {
    /// Target chord of left vertex u_i.
    Left(u32),
    /// Target chord of right vertex v_j.
    Right(u32),
    /// The hub target chord between the semicircles.
    Hub,
    /// Non-target chord of edge (u_i, v_j).
    Edge(u32, u32),
}

impl std::fmt::Display for ChordRole {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ChordRole::Left(i) => write!(f, "x{i}"),
            ChordRole::Right(j) => write!(f, "y{j}"),
            ChordRole::Hub => write!(f, "z"),
            ChordRole::Edge(i, j) => write!(f, "w{i}-{j}"),
        }
    }
}

/// The compiled chord family plus role map, target set, failure
/// probabilities, and the edge-to-chord bijection.
#[derive(Debug, Clone, PartialEq)]
pub struct ReductionOutput {
    pub chords: ChordFamily,
    pub roles: Vec<ChordRole>,
    pub targets: Vec<u32>,
    pub q: Vec<f64>,
    /// Chord label of each input edge, in input edge order.
    pub edge_chords: Vec<u32>,
}

impl ReductionOutput {
    /// The reduction as a solvable reliability instance.
    pub fn to_instance(&self) -> ReliabilityInstance {
        ReliabilityInstance::new(
            Family::Chords(self.chords.clone()),
            self.q.clone(),
            self.targets.clone(),
        )
        .expect("reduction output is a valid instance")
    }

    /// Labels of the non-target edge chords.
    pub fn edge_chord_labels(&self) -> &[u32] {
        &self.edge_chords
    }
}

/// Compile `b` into its circle representation.
///
/// Layout, clockwise: the hub's first endpoint, then one block per left
/// vertex (vertex chord endpoint, its incident edge-chord endpoints in edge
/// order, vertex chord endpoint), then the hub's second endpoint, then the
/// right-vertex blocks. Chords inside one semicircle are nested, never
/// crossing; every edge chord runs from the left block of its left vertex to
/// the right block of its right vertex, crossing exactly those two vertex
/// chords plus the hub.
///
/// The required crossing pattern is re-verified before returning; a failure
/// is reported as a construction error, never accepted silently.
pub fn build_circle_rep(b: &BipartiteGraph) -> Result<ReductionOutput> {
    let nu = b.left as usize;
    let nv = b.right as usize;
    let ne = b.edges.len();
    let chord_count = nu + nv + ne + 1;

    let mut left_ends = vec![(0u32, 0u32); nu];
    let mut right_ends = vec![(0u32, 0u32); nv];
    let mut edge_left = vec![0u32; ne];
    let mut edge_right = vec![0u32; ne];

    let mut cursor = 0u32;
    let hub_top = cursor;
    cursor += 1;
    for i in 0..nu {
        let open = cursor;
        cursor += 1;
        for (e, &(u, _)) in b.edges.iter().enumerate() {
            if u as usize == i {
                edge_left[e] = cursor;
                cursor += 1;
            }
        }
        left_ends[i] = (open, cursor);
        cursor += 1;
    }
    let hub_bottom = cursor;
    cursor += 1;
    for j in 0..nv {
        let open = cursor;
        cursor += 1;
        for (e, &(_, v)) in b.edges.iter().enumerate() {
            if v as usize == j {
                edge_right[e] = cursor;
                cursor += 1;
            }
        }
        right_ends[j] = (open, cursor);
        cursor += 1;
    }
    let circumference = cursor;
    debug_assert_eq!(circumference as usize, 2 * chord_count);

    let mut chords = Vec::with_capacity(chord_count);
    let mut roles = Vec::with_capacity(chord_count);
    for (i, &(a, z)) in left_ends.iter().enumerate() {
        chords.push(Chord { p1: a, p2: z });
        roles.push(ChordRole::Left(i as u32));
    }
    for (j, &(a, z)) in right_ends.iter().enumerate() {
        chords.push(Chord { p1: a, p2: z });
        roles.push(ChordRole::Right(j as u32));
    }
    chords.push(Chord {
        p1: hub_top,
        p2: hub_bottom,
    });
    roles.push(ChordRole::Hub);
    let hub_label = (nu + nv) as u32;
    let mut edge_chords = Vec::with_capacity(ne);
    for e in 0..ne {
        edge_chords.push(chords.len() as u32);
        chords.push(Chord {
            p1: edge_left[e],
            p2: edge_right[e],
        });
        let (u, v) = b.edges[e];
        roles.push(ChordRole::Edge(u, v));
    }

    let family = ChordFamily::new(circumference, chords)
        .map_err(|e| Error::Construction(format!("invalid chord layout: {e}")))?;

    verify_construction(b, &family, hub_label, &edge_chords)?;

    let targets: Vec<u32> = (0..=hub_label).collect();
    let mut q = vec![0.0; chord_count];
    for &w in &edge_chords {
        q[w as usize] = 0.5;
    }
    Ok(ReductionOutput {
        chords: family,
        roles,
        targets,
        q,
        edge_chords,
    })
}

fn verify_construction(
    b: &BipartiteGraph,
    fam: &ChordFamily,
    hub_label: u32,
    edge_chords: &[u32],
) -> Result<()> {
    let nu = b.left;
    let nv = b.right;
    let fail = |msg: String| Err(Error::Construction(msg));
    let crosses = |a: u32, c: u32| fam.chord(a).crosses(&fam.chord(c));

    for i in 0..nu {
        for i2 in 0..nu {
            if i != i2 && crosses(i, i2) {
                return fail(format!("left chords {i} and {i2} cross"));
            }
        }
        for j in 0..nv {
            if crosses(i, nu + j) {
                return fail(format!("left chord {i} crosses right chord {j}"));
            }
        }
        if crosses(i, hub_label) {
            return fail(format!("left chord {i} crosses the hub"));
        }
    }
    for j in 0..nv {
        for j2 in 0..nv {
            if j != j2 && crosses(nu + j, nu + j2) {
                return fail(format!("right chords {j} and {j2} cross"));
            }
        }
        if crosses(nu + j, hub_label) {
            return fail(format!("right chord {j} crosses the hub"));
        }
    }
    for (e, &w) in edge_chords.iter().enumerate() {
        let (u, v) = b.edges()[e];
        if !crosses(w, hub_label) {
            return fail(format!("edge chord {e} misses the hub"));
        }
        for i in 0..nu {
            if crosses(w, i) != (i == u) {
                return fail(format!("edge chord {e} has a wrong left crossing at {i}"));
            }
        }
        for j in 0..nv {
            if crosses(w, nu + j) != (j == v) {
                return fail(format!("edge chord {e} has a wrong right crossing at {j}"));
            }
        }
    }
    Ok(())
}

/// Exact number of edge covers of `b`: subsets D of E(B) touching every
/// vertex, counted by subset enumeration.
pub fn count_edge_covers(b: &BipartiteGraph) -> Result<u64> {
    let ne = b.edges.len();
    if ne > COUNT_MAX_EDGES {
        return Err(Error::TooLarge(format!(
            "edge-cover enumeration over {ne} edges exceeds the guard of {COUNT_MAX_EDGES}"
        )));
    }
    let mut count = 0u64;
    let mut left_hit = vec![false; b.left as usize];
    let mut right_hit = vec![false; b.right as usize];
    for mask in 0u64..(1u64 << ne) {
        left_hit.fill(false);
        right_hit.fill(false);
        for (e, &(u, v)) in b.edges.iter().enumerate() {
            if mask & (1 << e) != 0 {
                left_hit[u as usize] = true;
                right_hit[v as usize] = true;
            }
        }
        if left_hit.iter().all(|&h| h) && right_hit.iter().all(|&h| h) {
            count += 1;
        }
    }
    Ok(count)
}

/// Exact number of success sets of a reduction: subsets S of the edge chords
/// whose operation keeps all target chords connected.
pub fn count_success_sets(red: &ReductionOutput) -> Result<u64> {
    let w = red.edge_chords.len();
    if w > COUNT_MAX_EDGES {
        return Err(Error::TooLarge(format!(
            "success-set enumeration over {w} chords exceeds the guard of {COUNT_MAX_EDGES}"
        )));
    }
    let inst = red.to_instance();
    let adj = inst.adjacency();
    let n = inst.vertex_count();
    let mut alive = vec![false; n];
    for &t in &red.targets {
        alive[t as usize] = true;
    }
    let mut count = 0u64;
    for mask in 0u64..(1u64 << w) {
        for (e, &chord) in red.edge_chords.iter().enumerate() {
            alive[chord as usize] = mask & (1 << e) != 0;
        }
        if connected_targets(&adj, &alive, &red.targets) {
            count += 1;
        }
    }
    Ok(count)
}

/// The three-way certificate for one bipartite graph.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityReport {
    pub edge_covers: u64,
    pub success_sets: u64,
    pub reliability: f64,
    pub pass: bool,
}

/// Check |EC(B)| = |SS(C)| exactly and |EC(B)| = R * 2^|E(B)| within 1e-6,
/// where R is the brute-force KTR of the reduction with every edge chord at
/// q = 1/2.
pub fn verify_identity(b: &BipartiteGraph) -> Result<IdentityReport> {
    let ne = b.edges.len();
    if ne > IDENTITY_MAX_EDGES {
        return Err(Error::TooLarge(format!(
            "identity check over {ne} edges exceeds the guard of {IDENTITY_MAX_EDGES}"
        )));
    }
    let edge_covers = count_edge_covers(b)?;
    let red = build_circle_rep(b)?;
    let success_sets = count_success_sets(&red)?;
    let reliability = ktr_brute(&red.to_instance())?;
    let scaled = reliability * (1u64 << ne) as f64;
    let pass = edge_covers == success_sets && (edge_covers as f64 - scaled).abs() <= 1e-6;
    Ok(IdentityReport {
        edge_covers,
        success_sets,
        reliability,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k22() -> BipartiteGraph {
        BipartiteGraph::new(2, 2, vec![(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap()
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(matches!(
            BipartiteGraph::new(2, 2, vec![(0, 0), (0, 0)]),
            Err(Error::Validation(_))
        ));
        assert!(matches!(
            BipartiteGraph::new(2, 2, vec![(2, 0)]),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn single_edge_reduction_shape() {
        let b = BipartiteGraph::new(1, 1, vec![(0, 0)]).unwrap();
        let red = build_circle_rep(&b).unwrap();
        assert_eq!(red.chords.len(), 4);
        let inst = red.to_instance();
        let adj = inst.adjacency();
        // w is the only chord with neighbors x0, y0, z
        let w = red.edge_chords[0];
        assert_eq!(adj.neighbors(w), &[0, 1, 2]);
        assert_eq!(adj.edge_count(), 3);
    }

    #[test]
    fn k22_reduction_has_nine_chords() {
        let red = build_circle_rep(&k22()).unwrap();
        assert_eq!(red.chords.len(), 9);
        assert_eq!(red.targets.len(), 5);
        assert_eq!(red.q.iter().filter(|&&x| x == 0.5).count(), 4);
    }

    #[test]
    fn isolated_vertex_keeps_degree_zero() {
        let b = BipartiteGraph::new(2, 1, vec![(0, 0)]).unwrap();
        let red = build_circle_rep(&b).unwrap();
        assert_eq!(red.chords.len(), 5);
        let adj = red.to_instance().adjacency();
        // x1 is the isolated left vertex's chord
        assert_eq!(adj.degree(1), 0);
    }

    #[test]
    fn edge_cover_counts() {
        let single = BipartiteGraph::new(1, 1, vec![(0, 0)]).unwrap();
        assert_eq!(count_edge_covers(&single).unwrap(), 1);

        let star = BipartiteGraph::new(1, 2, vec![(0, 0), (0, 1)]).unwrap();
        assert_eq!(count_edge_covers(&star).unwrap(), 1);

        assert_eq!(count_edge_covers(&k22()).unwrap(), 7);

        let isolated = BipartiteGraph::new(2, 1, vec![(0, 0)]).unwrap();
        assert_eq!(count_edge_covers(&isolated).unwrap(), 0);
    }

    #[test]
    fn success_set_counts() {
        let single = BipartiteGraph::new(1, 1, vec![(0, 0)]).unwrap();
        assert_eq!(
            count_success_sets(&build_circle_rep(&single).unwrap()).unwrap(),
            1
        );

        assert_eq!(
            count_success_sets(&build_circle_rep(&k22()).unwrap()).unwrap(),
            7
        );

        let isolated = BipartiteGraph::new(2, 1, vec![(0, 0)]).unwrap();
        assert_eq!(
            count_success_sets(&build_circle_rep(&isolated).unwrap()).unwrap(),
            0
        );
    }

    #[test]
    fn enumeration_guards_trip() {
        let edges: Vec<(u32, u32)> = (0..6u32)
            .flat_map(|u| (0..5u32).map(move |v| (u, v)))
            .take(26)
            .collect();
        let big = BipartiteGraph::new(6, 5, edges).unwrap();
        assert!(matches!(count_edge_covers(&big), Err(Error::TooLarge(_))));
        let red = build_circle_rep(&big).unwrap();
        assert!(matches!(count_success_sets(&red), Err(Error::TooLarge(_))));
        assert!(matches!(verify_identity(&big), Err(Error::TooLarge(_))));
    }

    #[test]
    fn identity_on_small_graphs() {
        let report = verify_identity(&k22()).unwrap();
        assert!(report.pass);
        assert_eq!(report.edge_covers, 7);
        assert_eq!(report.success_sets, 7);
        assert!((report.reliability - 7.0 / 16.0).abs() < 1e-12);

        let single = BipartiteGraph::new(1, 1, vec![(0, 0)]).unwrap();
        let report = verify_identity(&single).unwrap();
        assert!(report.pass);
        assert_eq!(report.edge_covers, 1);
        assert!((report.reliability - 0.5).abs() < 1e-12);

        let empty = BipartiteGraph::new(1, 0, vec![]).unwrap();
        let report = verify_identity(&empty).unwrap();
        assert!(report.pass);
        assert_eq!(report.edge_covers, 0);
        assert_eq!(report.success_sets, 0);
        assert_eq!(report.reliability, 0.0);
    }

    #[test]
    fn empty_graph_identity_is_one() {
        let b = BipartiteGraph::new(0, 0, vec![]).unwrap();
        let report = verify_identity(&b).unwrap();
        assert!(report.pass);
        assert_eq!(report.edge_covers, 1);
        assert_eq!(report.success_sets, 1);
        assert_eq!(report.reliability, 1.0);
    }
}
