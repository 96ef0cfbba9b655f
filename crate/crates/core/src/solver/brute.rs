//! Reference oracle: plain enumeration of b-subset assignments in vertex
//! order, no symmetry reduction, no lookahead — only the validity check
//! against already-assigned neighbors. Deliberately dumb so that agreement
//! with the real solver means something.

use std::collections::BTreeMap;
use std::time::Instant;

use thiserror::Error;

use crate::color::{Color, ListAssignment, MultiColoring};
use crate::graph::Graph;

use super::{PruneStats, SolveOutcome, SolveStats, Verdict};

/// Hard cap on the assignment-space estimate.
pub const BRUTE_CAP: u64 = 100_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BruteError {
    #[error("assignment space ~{estimate} exceeds the brute-force cap {cap}")]
    CapExceeded { estimate: u128, cap: u64 },
    #[error("{0}")]
    Instance(#[from] super::InstanceError),
}

#[derive(Debug)]
struct BruteInstance {
    b: u32,
    adj: Vec<Vec<u32>>,
    /// per vertex, all b-subsets of its list in lexicographic order
    candidates: Vec<Vec<u128>>,
    colors: Vec<Color>,
    vertex_ids: Vec<crate::graph::VertexId>,
}

fn build(
    g: &Graph,
    lists: &ListAssignment,
    b: u32,
    cap: u64,
) -> Result<BruteInstance, BruteError> {
    if b == 0 {
        return Err(super::InstanceError::ZeroB.into());
    }
    let mut union: Vec<Color> = Vec::new();
    for &v in g.vertex_ids() {
        let list = lists
            .get(v)
            .ok_or_else(|| super::InstanceError::MissingList(g.vertex_name(v)))?;
        union.extend(list.iter().copied());
    }
    union.sort_unstable();
    union.dedup();
    if union.len() > 128 {
        return Err(super::InstanceError::TooManyColors(union.len() as u64).into());
    }
    let dense: BTreeMap<Color, u8> = union
        .iter()
        .enumerate()
        .map(|(i, &c)| (c, i as u8))
        .collect();

    let mut candidates = Vec::with_capacity(g.n());
    let mut estimate: u128 = 1;
    for &v in g.vertex_ids() {
        let bits: Vec<u8> = lists.get(v).unwrap().iter().map(|c| dense[c]).collect();
        let subs = combinations(&bits, b as usize);
        estimate = estimate.saturating_mul(subs.len().max(1) as u128);
        candidates.push(subs);
    }
    if estimate > cap as u128 {
        return Err(BruteError::CapExceeded { estimate, cap });
    }
    Ok(BruteInstance {
        b,
        adj: (0..g.n()).map(|i| g.neighbors_ix(i).to_vec()).collect(),
        candidates,
        colors: union,
        vertex_ids: g.vertex_ids().to_vec(),
    })
}

/// All size-k subsets of the given bit positions, lexicographic by
/// position sequence.
fn combinations(bits: &[u8], k: usize) -> Vec<u128> {
    let mut out = Vec::new();
    let mut stack: Vec<(usize, u128, usize)> = vec![(0, 0, 0)]; // (next index, mask, chosen)
    while let Some((i, mask, chosen)) = stack.pop() {
        if chosen == k {
            out.push(mask);
            continue;
        }
        if bits.len() - i < k - chosen {
            continue;
        }
        // pushed in reverse so the skip branch pops after the take branch
        stack.push((i + 1, mask, chosen));
        stack.push((i + 1, mask | (1u128 << bits[i]), chosen + 1));
    }
    out.sort_unstable();
    out
}

fn dfs(
    inst: &BruteInstance,
    v: usize,
    chosen: &mut Vec<u128>,
    nodes: &mut u64,
    collect: &mut Option<&mut Vec<MultiColoring>>,
) -> bool {
    if v == inst.candidates.len() {
        if let Some(sink) = collect {
            sink.push(coloring_from(inst, chosen));
            return false; // keep enumerating
        }
        return true;
    }
    for &s in &inst.candidates[v] {
        *nodes += 1;
        let clash = inst.adj[v]
            .iter()
            .any(|&u| (u as usize) < v && chosen[u as usize] & s != 0);
        if clash {
            continue;
        }
        chosen[v] = s;
        if dfs(inst, v + 1, chosen, nodes, collect) {
            return true;
        }
        chosen[v] = 0;
    }
    false
}

fn coloring_from(inst: &BruteInstance, chosen: &[u128]) -> MultiColoring {
    let mut phi = MultiColoring::new(inst.b);
    for (ix, &mask) in chosen.iter().enumerate() {
        let mut set = std::collections::BTreeSet::new();
        let mut m = mask;
        while m != 0 {
            set.insert(inst.colors[m.trailing_zeros() as usize]);
            m &= m - 1;
        }
        phi.phi.insert(inst.vertex_ids[ix], set);
    }
    phi
}

/// Same verdict contract as `solve`, by exhaustive enumeration. Refuses to
/// run when the assignment-space estimate exceeds [`BRUTE_CAP`].
pub fn brute_force_solve(
    g: &Graph,
    lists: &ListAssignment,
    b: u32,
) -> Result<SolveOutcome, BruteError> {
    let start = Instant::now();
    let inst = build(g, lists, b, BRUTE_CAP)?;
    let mut chosen = vec![0u128; inst.candidates.len()];
    let mut nodes = 0;
    let found = dfs(&inst, 0, &mut chosen, &mut nodes, &mut None);
    let verdict = if found {
        Verdict::Sat(coloring_from(&inst, &chosen))
    } else {
        Verdict::Unsat
    };
    Ok(SolveOutcome {
        verdict,
        stats: SolveStats {
            nodes,
            prunes: PruneStats::default(),
            wall: start.elapsed(),
        },
    })
}

/// Every valid b-fold coloring, in deterministic enumeration order.
pub fn enumerate_colorings(
    g: &Graph,
    lists: &ListAssignment,
    b: u32,
    cap: u64,
) -> Result<Vec<MultiColoring>, BruteError> {
    let inst = build(g, lists, b, cap)?;
    let mut chosen = vec![0u128; inst.candidates.len()];
    let mut nodes = 0;
    let mut all = Vec::new();
    dfs(&inst, 0, &mut chosen, &mut nodes, &mut Some(&mut all));
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::color::{ColorSet, ColorUniverse};
    use crate::graph::{complete, Graph};

    fn uniform_instance(g: &Graph, a: u32) -> ListAssignment {
        let u = ColorUniverse::build(&[("K", a)]).unwrap();
        let full: ColorSet = u.colors().collect();
        let mut lists = ListAssignment::new(u);
        for &v in g.vertex_ids() {
            lists.insert(v, full.clone()).unwrap();
        }
        lists
    }

    #[test]
    fn edge_two_colors_sat() {
        let g = Graph::build(vec![(0, None), (1, None)], vec![(0, 1)]).unwrap();
        let lists = uniform_instance(&g, 2);
        let out = brute_force_solve(&g, &lists, 1).unwrap();
        assert!(out.verdict.is_sat());
    }

    #[test]
    fn triangle_two_colors_unsat() {
        let g = complete(3);
        let lists = uniform_instance(&g, 2);
        let out = brute_force_solve(&g, &lists, 1).unwrap();
        assert_eq!(out.verdict, Verdict::Unsat);
    }

    #[test]
    fn enumerate_counts_proper_colorings() {
        // K3 with 3 colors has 3! = 6 proper colorings
        let g = complete(3);
        let lists = uniform_instance(&g, 3);
        let all = enumerate_colorings(&g, &lists, 1, 1_000_000).unwrap();
        assert_eq!(all.len(), 6);
    }

    #[test]
    fn cap_refusal() {
        let g = complete(8);
        let lists = uniform_instance(&g, 20);
        // C(20,2)^8 = 190^8 ≈ 1.7e18 — way past any sensible cap
        let err = build(&g, &lists, 2, 1_000_000).unwrap_err();
        assert!(matches!(err, BruteError::CapExceeded { .. }));
    }
}
