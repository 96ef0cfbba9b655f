//! The backtracking engine behind `solve`.
//!
//! Instances are densified to u128 color bitmasks (the 128-color cap is a
//! deliberate desk-scale bound; every instance this lab builds fits). The
//! search assigns whole b-subsets, picks the vertex with the fewest
//! remaining choices (ties by vertex index, which for the gadget is the
//! fixed role order), forward-checks neighbor availability, and applies the
//! optional odd-cycle counting cuts.
//!
//! Symmetry reduction: at an assignment, colors of one orbit that no
//! assigned vertex uses yet are interchangeable — any completion using a
//! non-canonical choice maps to one using the lexicographic prefix of the
//! orbit's unused colors, by a list-preserving permutation that fixes all
//! earlier assignments. So candidate subsets draw fresh colors only as
//! such prefixes, while previously used colors are combined freely.

use std::collections::BTreeMap;
use std::time::Instant;

use crate::color::{Color, ListAssignment, MultiColoring};
use crate::exec::{self, Parallelism};
use crate::graph::Graph;

use super::{
    CycleCut, InstanceError, PruneStats, SolveOutcome, SolveStats, SolverConfig, Verdict,
};

const MAX_COLORS: usize = 128;

pub(crate) struct DenseInstance {
    b: u32,
    adj: Vec<Vec<u32>>,
    masks: Vec<u128>,
    colors: Vec<Color>,
    /// orbit -> member dense colors, ascending; orbits in first-member order
    orbits: Vec<Vec<u8>>,
    cuts: Vec<DenseCut>,
    vertex_ids: Vec<crate::graph::VertexId>,
}

struct DenseCut {
    members: Vec<u32>,
    cap: u32,
}

impl DenseInstance {
    fn build(
        g: &Graph,
        lists: &ListAssignment,
        b: u32,
        cuts: &[CycleCut],
    ) -> Result<DenseInstance, InstanceError> {
        if b == 0 {
            return Err(InstanceError::ZeroB);
        }
        for &v in g.vertex_ids() {
            if lists.get(v).is_none() {
                return Err(InstanceError::MissingList(g.vertex_name(v)));
            }
        }

        // dense color table: union of all lists, block-major order
        let mut union: Vec<Color> = Vec::new();
        for &v in g.vertex_ids() {
            union.extend(lists.get(v).unwrap().iter().copied());
        }
        union.sort_unstable();
        union.dedup();
        if union.len() > MAX_COLORS {
            return Err(InstanceError::TooManyColors(union.len() as u64));
        }
        let dense_of: BTreeMap<Color, u8> = union
            .iter()
            .enumerate()
            .map(|(i, &c)| (c, i as u8))
            .collect();

        let n = g.n();
        let mut masks = vec![0u128; n];
        for (ix, &v) in g.vertex_ids().iter().enumerate() {
            for &c in lists.get(v).unwrap() {
                masks[ix] |= 1u128 << dense_of[&c];
            }
        }

        // orbit = identical membership signature across vertex lists
        let mut by_signature: BTreeMap<Vec<u32>, Vec<u8>> = BTreeMap::new();
        for (i, _) in union.iter().enumerate() {
            let bit = 1u128 << i;
            let signature: Vec<u32> = (0..n as u32)
                .filter(|&ix| masks[ix as usize] & bit != 0)
                .collect();
            by_signature.entry(signature).or_default().push(i as u8);
        }
        let mut orbits: Vec<Vec<u8>> = by_signature.into_values().collect();
        orbits.sort_by_key(|members| members[0]);

        let mut dense_cuts = Vec::with_capacity(cuts.len());
        for cut in cuts {
            let mut members = Vec::with_capacity(cut.vertices.len());
            for &v in &cut.vertices {
                let ix = g.index_of(v).ok_or(InstanceError::BadCut(v))? as u32;
                members.push(ix);
            }
            dense_cuts.push(DenseCut {
                members,
                cap: cut.cap,
            });
        }

        let adj = (0..n).map(|i| g.neighbors_ix(i).to_vec()).collect();
        Ok(DenseInstance {
            b,
            adj,
            masks,
            colors: union,
            orbits,
            cuts: dense_cuts,
            vertex_ids: g.vertex_ids().to_vec(),
        })
    }

    fn n(&self) -> usize {
        self.masks.len()
    }

    fn coloring_from(&self, chosen: &[u128]) -> MultiColoring {
        let mut phi = MultiColoring::new(self.b);
        for (ix, &mask) in chosen.iter().enumerate() {
            let mut set = std::collections::BTreeSet::new();
            let mut m = mask;
            while m != 0 {
                let c = m.trailing_zeros() as usize;
                set.insert(self.colors[c]);
                m &= m - 1;
            }
            phi.phi.insert(self.vertex_ids[ix], set);
        }
        phi
    }
}

enum SearchStatus {
    Found,
    Exhausted,
    OutOfBudget,
}

struct Ctx<'a> {
    inst: &'a DenseInstance,
    assigned: Vec<bool>,
    chosen: Vec<u128>,
    avail: Vec<u128>,
    use_count: Vec<u32>,
    unassigned: usize,
    nodes: u64,
    prunes: PruneStats,
    max_nodes: Option<u64>,
    deadline: Option<Instant>,
}

impl<'a> Ctx<'a> {
    fn new(inst: &'a DenseInstance, max_nodes: Option<u64>, deadline: Option<Instant>) -> Ctx<'a> {
        Ctx {
            inst,
            assigned: vec![false; inst.n()],
            chosen: vec![0; inst.n()],
            avail: inst.masks.clone(),
            use_count: vec![0; inst.colors.len()],
            unassigned: inst.n(),
            nodes: 0,
            prunes: PruneStats::default(),
            max_nodes,
            deadline,
        }
    }

    fn over_budget(&self) -> bool {
        if self.max_nodes.is_some_and(|mn| self.nodes > mn) {
            return true;
        }
        self.deadline.is_some_and(|d| Instant::now() > d)
    }

    /// Minimum remaining choices; C(popcount, b) is monotone in popcount
    /// for fixed b, so comparing popcounts gives the same order.
    fn pick_vertex(&self) -> Option<usize> {
        (0..self.inst.n())
            .filter(|&v| !self.assigned[v])
            .min_by_key(|&v| (self.avail[v].count_ones(), v))
    }

    /// Candidate b-subsets of `avail[v]`, symmetry-reduced and sorted
    /// ascending as bitmasks.
    fn canonical_subsets(&self, v: usize) -> Vec<u128> {
        let avail = self.avail[v];
        let b = self.inst.b;
        // options per orbit: (mask, color count)
        let mut per_orbit: Vec<Vec<(u128, u32)>> = Vec::new();
        for orbit in &self.inst.orbits {
            let mut used: Vec<u8> = Vec::new();
            let mut fresh_mask_prefixes: Vec<u128> = vec![0]; // prefix of length k at index k
            let mut fresh_len = 0u32;
            for &c in orbit {
                if avail & (1u128 << c) == 0 {
                    continue;
                }
                if self.use_count[c as usize] > 0 {
                    used.push(c);
                } else {
                    fresh_len += 1;
                    let last = *fresh_mask_prefixes.last().unwrap();
                    fresh_mask_prefixes.push(last | (1u128 << c));
                }
            }
            if used.is_empty() && fresh_len == 0 {
                continue;
            }
            let mut opts = Vec::new();
            for (umask, ucount) in subsets_up_to(&used, b) {
                for k in 0..=fresh_len.min(b - ucount) {
                    opts.push((umask | fresh_mask_prefixes[k as usize], ucount + k));
                }
            }
            per_orbit.push(opts);
        }

        // suffix capacity for pruning the cross product
        let mut suffix_cap = vec![0u32; per_orbit.len() + 1];
        for i in (0..per_orbit.len()).rev() {
            let max_here = per_orbit[i].iter().map(|&(_, c)| c).max().unwrap_or(0);
            suffix_cap[i] = suffix_cap[i + 1] + max_here;
        }

        let mut out = Vec::new();
        fn rec(
            per_orbit: &[Vec<(u128, u32)>],
            suffix_cap: &[u32],
            i: usize,
            mask: u128,
            remaining: u32,
            out: &mut Vec<u128>,
        ) {
            if remaining == 0 {
                out.push(mask);
                return;
            }
            if i == per_orbit.len() || suffix_cap[i] < remaining {
                return;
            }
            for &(omask, ocount) in &per_orbit[i] {
                if ocount <= remaining {
                    rec(per_orbit, suffix_cap, i + 1, mask | omask, remaining - ocount, out);
                }
            }
        }
        rec(&per_orbit, &suffix_cap, 0, 0, b, &mut out);
        out.sort_unstable();
        out
    }

    fn apply(&mut self, v: usize, s: u128) -> Vec<(u32, u128)> {
        self.assigned[v] = true;
        self.chosen[v] = s;
        self.unassigned -= 1;
        let mut m = s;
        while m != 0 {
            self.use_count[m.trailing_zeros() as usize] += 1;
            m &= m - 1;
        }
        let mut removed = Vec::new();
        for &u in &self.inst.adj[v] {
            let u = u as usize;
            if !self.assigned[u] {
                let r = self.avail[u] & s;
                if r != 0 {
                    self.avail[u] &= !s;
                    removed.push((u as u32, r));
                }
            }
        }
        removed
    }

    fn undo(&mut self, v: usize, removed: &[(u32, u128)]) {
        for &(u, r) in removed {
            self.avail[u as usize] |= r;
        }
        let mut m = self.chosen[v];
        while m != 0 {
            self.use_count[m.trailing_zeros() as usize] -= 1;
            m &= m - 1;
        }
        self.assigned[v] = false;
        self.chosen[v] = 0;
        self.unassigned += 1;
    }

    fn forward_ok(&self, v: usize) -> bool {
        let b = self.inst.b;
        self.inst.adj[v]
            .iter()
            .all(|&u| self.assigned[u as usize] || self.avail[u as usize].count_ones() >= b)
    }

    /// For each cut: remaining demand is b colors per unassigned cut
    /// vertex; a color can supply at most (cap − already used in the cut)
    /// slots and at most its availability count. Infeasible supply prunes.
    fn cuts_ok(&self) -> bool {
        'cuts: for cut in &self.inst.cuts {
            let mut used_in = [0u16; MAX_COLORS];
            let mut avail_in = [0u16; MAX_COLORS];
            let mut demand: u64 = 0;
            for &cv in &cut.members {
                let cv = cv as usize;
                let mut m = if self.assigned[cv] {
                    self.chosen[cv]
                } else {
                    demand += self.inst.b as u64;
                    self.avail[cv]
                };
                let tally = if self.assigned[cv] {
                    &mut used_in
                } else {
                    &mut avail_in
                };
                while m != 0 {
                    tally[m.trailing_zeros() as usize] += 1;
                    m &= m - 1;
                }
            }
            if demand == 0 {
                continue 'cuts;
            }
            let mut supply: u64 = 0;
            for c in 0..self.inst.colors.len() {
                let cap_left = cut.cap.saturating_sub(used_in[c] as u32);
                supply += cap_left.min(avail_in[c] as u32) as u64;
                if supply >= demand {
                    continue 'cuts;
                }
            }
            return false;
        }
        true
    }

    fn dfs(&mut self) -> SearchStatus {
        let v = match self.pick_vertex() {
            Some(v) => v,
            None => return SearchStatus::Found,
        };
        for s in self.canonical_subsets(v) {
            self.nodes += 1;
            if self.over_budget() {
                return SearchStatus::OutOfBudget;
            }
            let removed = self.apply(v, s);
            let ok = if !self.forward_ok(v) {
                self.prunes.forward += 1;
                false
            } else if !self.cuts_ok() {
                self.prunes.cycle += 1;
                false
            } else {
                true
            };
            if ok {
                match self.dfs() {
                    SearchStatus::Found => return SearchStatus::Found,
                    SearchStatus::OutOfBudget => return SearchStatus::OutOfBudget,
                    SearchStatus::Exhausted => {}
                }
            }
            self.undo(v, &removed);
        }
        SearchStatus::Exhausted
    }

    fn stats(&self) -> SolveStats {
        SolveStats {
            nodes: self.nodes,
            prunes: self.prunes,
            wall: Default::default(),
        }
    }
}

pub(crate) fn run(
    g: &Graph,
    lists: &ListAssignment,
    b: u32,
    config: &SolverConfig,
    start: Instant,
) -> Result<SolveOutcome, InstanceError> {
    let inst = DenseInstance::build(g, lists, b, &config.cuts)?;
    let deadline = config.budget.deadline(start);
    let max_nodes = config.budget.max_nodes;

    // a vertex without b available colors refutes the instance outright
    for v in 0..inst.n() {
        if inst.masks[v].count_ones() < b {
            return Ok(SolveOutcome {
                verdict: Verdict::Unsat,
                stats: SolveStats {
                    nodes: 0,
                    prunes: PruneStats {
                        shortfall: 1,
                        ..PruneStats::default()
                    },
                    wall: Default::default(),
                },
            });
        }
    }

    let parallel = config
        .parallel
        .unwrap_or(Parallelism::Sequential)
        .effective();
    if parallel == Parallelism::Parallel {
        if let Some(outcome) = try_root_split(&inst, max_nodes, deadline) {
            return Ok(outcome);
        }
    }

    let mut ctx = Ctx::new(&inst, max_nodes, deadline);
    let status = ctx.dfs();
    let verdict = match status {
        SearchStatus::Found => Verdict::Sat(inst.coloring_from(&ctx.chosen)),
        SearchStatus::Exhausted => Verdict::Unsat,
        SearchStatus::OutOfBudget => Verdict::Timeout,
    };
    Ok(SolveOutcome {
        verdict,
        stats: ctx.stats(),
    })
}

/// Split the root vertex's candidate subsets across workers. Every subtree
/// runs to completion (no cancellation), so stats are deterministic; the
/// reduce keeps the first SAT witness in subtree order. Returns None when
/// splitting is pointless (fewer than two root candidates).
fn try_root_split(
    inst: &DenseInstance,
    max_nodes: Option<u64>,
    deadline: Option<Instant>,
) -> Option<SolveOutcome> {
    let probe = Ctx::new(inst, max_nodes, deadline);
    let root = probe.pick_vertex()?;
    let subsets = probe.canonical_subsets(root);
    if subsets.len() < 2 {
        return None;
    }
    let results = exec::map_indexed(Parallelism::Parallel, &subsets, |_, &s| {
        let mut ctx = Ctx::new(inst, max_nodes, deadline);
        ctx.nodes = 1;
        if ctx.over_budget() {
            return (SubtreeVerdict::OutOfBudget, ctx.stats(), None);
        }
        let _removed = ctx.apply(root, s);
        let ok = if !ctx.forward_ok(root) {
            ctx.prunes.forward += 1;
            false
        } else if !ctx.cuts_ok() {
            ctx.prunes.cycle += 1;
            false
        } else {
            true
        };
        let status = if ok { ctx.dfs() } else { SearchStatus::Exhausted };
        match status {
            SearchStatus::Found => {
                let phi = inst.coloring_from(&ctx.chosen);
                (SubtreeVerdict::Found, ctx.stats(), Some(phi))
            }
            SearchStatus::Exhausted => (SubtreeVerdict::Exhausted, ctx.stats(), None),
            SearchStatus::OutOfBudget => (SubtreeVerdict::OutOfBudget, ctx.stats(), None),
        }
    });

    let mut stats = SolveStats::default();
    let mut verdict = Verdict::Unsat;
    let mut timed_out = false;
    for (sub, sub_stats, witness) in results {
        stats.nodes += sub_stats.nodes;
        stats.prunes.add(&sub_stats.prunes);
        match sub {
            SubtreeVerdict::Found => {
                if !verdict.is_sat() {
                    verdict = Verdict::Sat(witness.expect("found subtree carries witness"));
                }
            }
            SubtreeVerdict::OutOfBudget => timed_out = true,
            SubtreeVerdict::Exhausted => {}
        }
    }
    if !verdict.is_sat() && timed_out {
        verdict = Verdict::Timeout;
    }
    Some(SolveOutcome { verdict, stats })
}

#[derive(Clone, Copy)]
enum SubtreeVerdict {
    Found,
    Exhausted,
    OutOfBudget,
}

/// All subsets of `items` with at most `max_size` elements, as (mask,
/// size) pairs in deterministic order.
fn subsets_up_to(items: &[u8], max_size: u32) -> Vec<(u128, u32)> {
    let mut out = vec![(0u128, 0u32)];
    for &c in items {
        let bit = 1u128 << c;
        let prior = out.len();
        for i in 0..prior {
            let (mask, size) = out[i];
            if size < max_size {
                out.push((mask | bit, size + 1));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_enumeration_counts() {
        let items = [0u8, 1, 2, 3];
        assert_eq!(subsets_up_to(&items, 4).len(), 16);
        assert_eq!(subsets_up_to(&items, 1).len(), 5);
        // C(4,0) + C(4,1) + C(4,2) = 1 + 4 + 6
        assert_eq!(subsets_up_to(&items, 2).len(), 11);
        assert_eq!(subsets_up_to(&[], 3), vec![(0, 0)]);
    }
}
