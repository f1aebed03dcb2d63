//! Arcs and chords on a circle of integer positions.
//!
//! Positions run clockwise from 0 to P-1 and wrap. All endpoint positions in
//! a family are pairwise distinct, so tangency never arises and every
//! predicate below is exact integer arithmetic.

use crate::error::{Error, Result};

/// Arc covering the clockwise range `start..=end`, endpoints inclusive,
/// wrapping past the top slot when `end < start`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Arc {
    pub start: u32,
    pub end: u32,
}

impl Arc {
    /// True iff `p` lies on the clockwise traversal from `start` to `end`.
    pub fn covers(&self, p: u32) -> bool {
        if self.start <= self.end {
            self.start <= p && p <= self.end
        } else {
            p >= self.start || p <= self.end
        }
    }

    /// Arcs intersect iff either one covers the other's start.
    pub fn intersects(&self, other: &Arc) -> bool {
        self.covers(other.start) || other.covers(self.start)
    }

    /// Strict containment of `other` inside `self`. Two arcs that jointly
    /// wrap the whole circle cover each other's endpoints from both sides;
    /// that crossing shape does not count as containment.
    pub fn contains(&self, other: &Arc) -> bool {
        self.covers(other.start)
            && self.covers(other.end)
            && !(other.covers(self.start) && other.covers(self.end))
    }

    /// Clockwise extent in positions, in `1..P`.
    fn extent(&self, circumference: u32) -> u64 {
        (self.end as u64 + circumference as u64 - self.start as u64) % circumference as u64
    }
}

/// True iff `p` lies strictly inside the clockwise open arc from `from` to `to`.
fn in_open_cw(p: u32, from: u32, to: u32) -> bool {
    if from < to {
        from < p && p < to
    } else {
        p > from || p < to
    }
}

/// Chord of a circle: an unordered pair of endpoint positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Chord {
    pub p1: u32,
    pub p2: u32,
}

impl Chord {
    /// Chords cross iff their endpoints interleave: exactly one endpoint of
    /// `other` lies on the open clockwise arc from `p1` to `p2`.
    pub fn crosses(&self, other: &Chord) -> bool {
        in_open_cw(other.p1, self.p1, self.p2) != in_open_cw(other.p2, self.p1, self.p2)
    }
}

/// Closed neighborhood lists N[r] = {r} ∪ {r' : r' intersects r} in CSR form.
#[derive(Debug, Clone, PartialEq)]
pub struct Neighborhoods {
    offsets: Vec<usize>,
    flat: Vec<u32>,
    edges: usize,
}

impl Neighborhoods {
    /// Assemble closed neighborhoods from an undirected edge list without
    /// duplicates. Self-entries are added for every element.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Self {
        let mut deg = vec![1usize; n];
        for &(u, v) in edges {
            deg[u as usize] += 1;
            deg[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0usize);
        for r in 0..n {
            offsets.push(offsets[r] + deg[r]);
        }
        let mut flat = vec![0u32; offsets[n]];
        let mut cursor: Vec<usize> = offsets[..n].to_vec();
        for (r, slot) in cursor.iter_mut().enumerate() {
            flat[*slot] = r as u32;
            *slot += 1;
        }
        for &(u, v) in edges {
            flat[cursor[u as usize]] = v;
            cursor[u as usize] += 1;
            flat[cursor[v as usize]] = u;
            cursor[v as usize] += 1;
        }
        for r in 0..n {
            flat[offsets[r]..offsets[r + 1]].sort_unstable();
        }
        Neighborhoods {
            offsets,
            flat,
            edges: edges.len(),
        }
    }

    pub fn element_count(&self) -> usize {
        self.offsets.len() - 1
    }

    /// N[r], sorted ascending, including r itself.
    pub fn of(&self, r: u32) -> &[u32] {
        &self.flat[self.offsets[r as usize]..self.offsets[r as usize + 1]]
    }

    /// Number of intersecting pairs m; total list size is n + 2m.
    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn total_size(&self) -> usize {
        self.flat.len()
    }
}

fn check_endpoints_distinct(mut endpoints: Vec<u32>) -> Result<()> {
    endpoints.sort_unstable();
    if endpoints.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Validation("duplicate endpoint position".into()));
    }
    Ok(())
}

/// A family of arcs on one circle. Labels are list indices; a labeled family
/// stores its arcs in clockwise order of start position.
#[derive(Debug, Clone, PartialEq)]
pub struct ArcFamily {
    circumference: u32,
    arcs: Vec<Arc>,
}

impl ArcFamily {
    pub fn new(circumference: u32, arcs: Vec<Arc>) -> Result<Self> {
        if circumference == 0 {
            return Err(Error::Validation("circumference must be positive".into()));
        }
        if 2 * arcs.len() as u64 > circumference as u64 {
            return Err(Error::Validation(format!(
                "circumference {} cannot host {} arcs with distinct endpoints",
                circumference,
                arcs.len()
            )));
        }
        let mut endpoints = Vec::with_capacity(2 * arcs.len());
        for a in &arcs {
            if a.start == a.end {
                return Err(Error::Validation("arc start equals end".into()));
            }
            if a.start >= circumference || a.end >= circumference {
                return Err(Error::Validation("arc endpoint out of range".into()));
            }
            endpoints.push(a.start);
            endpoints.push(a.end);
        }
        check_endpoints_distinct(endpoints)?;
        Ok(ArcFamily {
            circumference,
            arcs,
        })
    }

    pub fn circumference(&self) -> u32 {
        self.circumference
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn arc(&self, label: u32) -> Arc {
        self.arcs[label as usize]
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    /// True iff arcs are stored in clockwise label order of starts.
    pub fn is_labeled(&self) -> bool {
        self.arcs.windows(2).all(|w| w[0].start < w[1].start)
    }

    /// True iff no arc contains another.
    ///
    /// Runs an O(n log n) sweep over the doubled line: arc r becomes the
    /// interval [s_r, s_r + extent_r] plus its copy shifted by P. Containment
    /// of b in a is exactly "some interval starts at or before b's and ends
    /// strictly past b's right end" (ties are impossible because endpoints
    /// are distinct).
    pub fn is_proper(&self) -> bool {
        let n = self.arcs.len();
        if n <= 1 {
            return true;
        }
        let p = self.circumference as u64;
        let mut events: Vec<(u64, u64)> = Vec::with_capacity(2 * n);
        for a in &self.arcs {
            let s = a.start as u64;
            let e = s + a.extent(self.circumference);
            events.push((s, e));
            events.push((s + p, e + p));
        }
        events.sort_unstable();
        let mut max_end = 0u64;
        for &(_, e) in &events {
            if max_end > e {
                return false;
            }
            max_end = max_end.max(e);
        }
        true
    }

    /// Closed neighborhoods of a labeled family in O(n log n + m).
    ///
    /// For each arc r, the arcs whose start lies inside r form the contiguous
    /// cyclic label range (r, r + fwd_r]; the remaining incidences are the
    /// reverse direction of some other arc's range. Pairs visible from both
    /// sides are deduplicated.
    ///
    /// Panics if the family is not labeled.
    pub fn closed_neighborhoods(&self) -> Neighborhoods {
        assert!(
            self.is_labeled(),
            "closed_neighborhoods requires a labeled family"
        );
        let n = self.arcs.len();
        if n == 0 {
            return Neighborhoods::from_edges(0, &[]);
        }
        let nu = n as u32;
        let starts: Vec<u32> = self.arcs.iter().map(|a| a.start).collect();
        let count_le = |x: u32| starts.partition_point(|&s| s <= x) as u32;
        let mut fwd = Vec::with_capacity(n);
        for (r, a) in self.arcs.iter().enumerate() {
            let c = if a.start < a.end {
                count_le(a.end) - (r as u32 + 1)
            } else {
                nu - (r as u32 + 1) + count_le(a.end)
            };
            fwd.push(c);
        }
        let in_fwd = |r: u32, x: u32| {
            let d = (x + nu - r) % nu;
            d != 0 && d <= fwd[r as usize]
        };
        let mut edges = Vec::with_capacity(fwd.iter().map(|&c| c as usize).sum());
        for r in 0..nu {
            for step in 1..=fwd[r as usize] {
                let other = (r + step) % nu;
                if !in_fwd(other, r) || r < other {
                    edges.push((r, other));
                }
            }
        }
        Neighborhoods::from_edges(n, &edges)
    }
}

/// Relabel a family into clockwise order of start positions. Returns the
/// labeled family and the permutation mapping input index to label.
pub fn label_arcs(family: &ArcFamily) -> (ArcFamily, Vec<u32>) {
    let mut order: Vec<u32> = (0..family.len() as u32).collect();
    order.sort_by_key(|&i| family.arc(i).start);
    let arcs: Vec<Arc> = order.iter().map(|&i| family.arc(i)).collect();
    let mut perm = vec![0u32; family.len()];
    for (label, &input_idx) in order.iter().enumerate() {
        perm[input_idx as usize] = label as u32;
    }
    (
        ArcFamily {
            circumference: family.circumference,
            arcs,
        },
        perm,
    )
}

/// A family of chords on one circle. Labels are list indices in input order.
#[derive(Debug, Clone, PartialEq)]
pub struct ChordFamily {
    circumference: u32,
    chords: Vec<Chord>,
}

impl ChordFamily {
    pub fn new(circumference: u32, chords: Vec<Chord>) -> Result<Self> {
        if circumference == 0 {
            return Err(Error::Validation("circumference must be positive".into()));
        }
        if 2 * chords.len() as u64 > circumference as u64 {
            return Err(Error::Validation(format!(
                "circumference {} cannot host {} chords with distinct endpoints",
                circumference,
                chords.len()
            )));
        }
        let mut endpoints = Vec::with_capacity(2 * chords.len());
        for c in &chords {
            if c.p1 == c.p2 {
                return Err(Error::Validation("chord endpoints coincide".into()));
            }
            if c.p1 >= circumference || c.p2 >= circumference {
                return Err(Error::Validation("chord endpoint out of range".into()));
            }
            endpoints.push(c.p1);
            endpoints.push(c.p2);
        }
        check_endpoints_distinct(endpoints)?;
        Ok(ChordFamily {
            circumference,
            chords,
        })
    }

    pub fn circumference(&self) -> u32 {
        self.circumference
    }

    pub fn len(&self) -> usize {
        self.chords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chords.is_empty()
    }

    pub fn chord(&self, label: u32) -> Chord {
        self.chords[label as usize]
    }

    pub fn chords(&self) -> &[Chord] {
        &self.chords
    }

    /// Closed neighborhoods by pairwise crossing tests. Chord families in
    /// this crate stay small; quadratic is fine.
    pub fn closed_neighborhoods(&self) -> Neighborhoods {
        let n = self.chords.len();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if self.chords[i].crosses(&self.chords[j]) {
                    edges.push((i as u32, j as u32));
                }
            }
        }
        Neighborhoods::from_edges(n, &edges)
    }
}
