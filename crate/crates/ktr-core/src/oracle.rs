//! Ground-truth solvers: exhaustive enumeration over all failure subsets and
//! a seeded Monte Carlo estimator. Both work on arc and chord instances.

use crate::error::{Error, Result};
use crate::model::{Adjacency, ReliabilityInstance};

/// Enumeration guard for [`ktr_brute`]: at most this many free (non-target)
/// vertices.
pub const BRUTE_MAX_FREE: usize = 25;

/// Identifier of the Monte Carlo random stream, reported in output headers.
/// Draws are a pure function of (seed, sample index, vertex label), so adding
/// vertices never perturbs the stream of existing ones.
pub const MC_PRNG: &str = "splitmix64";

struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, x: u32) -> u32 {
        let mut root = x;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut cur = x;
        while self.parent[cur as usize] != root {
            let next = self.parent[cur as usize];
            self.parent[cur as usize] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: u32, b: u32) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return;
        }
        if self.size[ra as usize] < self.size[rb as usize] {
            self.parent[ra as usize] = rb;
            self.size[rb as usize] += self.size[ra as usize];
        } else {
            self.parent[rb as usize] = ra;
            self.size[ra as usize] += self.size[rb as usize];
        }
    }
}

/// True iff every target lies in one connected component of the subgraph
/// induced by `alive`. Targets must be alive.
pub fn connected_targets(adj: &Adjacency, alive: &[bool], targets: &[u32]) -> bool {
    if targets.len() <= 1 {
        return true;
    }
    debug_assert!(targets.iter().all(|&t| alive[t as usize]));
    let mut uf = UnionFind::new(adj.vertex_count());
    for v in 0..adj.vertex_count() as u32 {
        if !alive[v as usize] {
            continue;
        }
        for &w in adj.neighbors(v) {
            if w > v && alive[w as usize] {
                uf.union(v, w);
            }
        }
    }
    let root = uf.find(targets[0]);
    targets[1..].iter().all(|&t| uf.find(t) == root)
}

/// Exact KTR by summing over all 2^(n-k) subsets of operating non-targets.
///
/// Subsets are enumerated as an increasing binary counter over non-target
/// labels in ascending order, and the sum accumulates in that fixed order, so
/// repeated runs produce bit-identical results.
pub fn ktr_brute(inst: &ReliabilityInstance) -> Result<f64> {
    let n = inst.vertex_count();
    let free: Vec<u32> = (0..n as u32).filter(|&v| !inst.is_target(v)).collect();
    if free.len() > BRUTE_MAX_FREE {
        return Err(Error::TooLarge(format!(
            "brute-force enumeration over {} non-targets exceeds the guard of {}",
            free.len(),
            BRUTE_MAX_FREE
        )));
    }
    let adj = inst.adjacency();
    let q = inst.q();
    let mut alive = vec![false; n];
    for &t in inst.targets() {
        alive[t as usize] = true;
    }
    let mut total = 0.0;
    for mask in 0u64..(1u64 << free.len()) {
        let mut p = 1.0;
        for (i, &v) in free.iter().enumerate() {
            if mask & (1 << i) != 0 {
                alive[v as usize] = true;
                p *= 1.0 - q[v as usize];
            } else {
                alive[v as usize] = false;
                p *= q[v as usize];
            }
        }
        if p > 0.0 && connected_targets(&adj, &alive, inst.targets()) {
            total += p;
        }
    }
    Ok(total)
}

/// Monte Carlo estimate of KTR with its binomial standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloEstimate {
    pub estimate: f64,
    pub std_error: f64,
    pub samples: u64,
    pub seed: u64,
}

fn splitmix_mix(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Uniform draw in [0, 1) keyed by (seed, sample, label).
fn unit_draw(seed: u64, sample: u64, label: u32) -> f64 {
    let bits = splitmix_mix(splitmix_mix(splitmix_mix(seed) ^ sample) ^ label as u64);
    (bits >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Estimate KTR from `samples` independent failure draws. Identical
/// (instance, samples, seed) always reproduces the identical estimate.
pub fn ktr_monte_carlo(
    inst: &ReliabilityInstance,
    samples: u64,
    seed: u64,
) -> Result<MonteCarloEstimate> {
    if samples == 0 {
        return Err(Error::Validation("sample count must be positive".into()));
    }
    let n = inst.vertex_count();
    let adj = inst.adjacency();
    let q = inst.q();
    let free: Vec<u32> = (0..n as u32).filter(|&v| !inst.is_target(v)).collect();
    let mut alive = vec![false; n];
    for &t in inst.targets() {
        alive[t as usize] = true;
    }
    let mut hits = 0u64;
    for sample in 0..samples {
        for &v in &free {
            alive[v as usize] = unit_draw(seed, sample, v) >= q[v as usize];
        }
        if connected_targets(&adj, &alive, inst.targets()) {
            hits += 1;
        }
    }
    let estimate = hits as f64 / samples as f64;
    let std_error = (estimate * (1.0 - estimate) / samples as f64).sqrt();
    Ok(MonteCarloEstimate {
        estimate,
        std_error,
        samples,
        seed,
    })
}
