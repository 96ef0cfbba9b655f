//! Composition: p² copies of the gadget glued on a shared anchor pair,
//! where p counts the m-subsets of a (3m+εm)-set. Each copy owns fresh
//! C/D/E blocks; its A and B blocks are replaced by one candidate pair of
//! anchor color sets. If every copy blocks its pair, no b-fold choice at
//! the anchors survives.
//!
//! Two verification modes: `Exhaustive` materializes and solves every pair
//! (only feasible for small p²); `Representative` solves the canonical
//! pair once and records the order-preserving color relabelings that carry
//! it onto every other pair.

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::color::{Color, ColorSet, ColorUniverse, FoldParams, ListAssignment, ROLE_BLOCKS};
use crate::color::{BLOCK_A, BLOCK_B, BLOCK_C, BLOCK_D, BLOCK_E};
use crate::exec::{self, Parallelism};
use crate::graph::{Graph, VertexId};
use crate::solver::{solve, SolveOutcome, SolverConfig, Verdict};

use super::{build_h, GadgetError, GadgetH, ROLES};

/// Exact binomial coefficient.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut c = BigUint::one();
    for i in 0..k {
        c = c * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    c
}

/// The rank-th k-subset of {0, …, n−1} in lexicographic order, matching
/// the order `Itertools::combinations` produces.
pub fn nth_subset(n: u32, k: u32, rank: &BigUint) -> Vec<u32> {
    let mut out = Vec::with_capacity(k as usize);
    let mut r = rank.clone();
    let mut next = 0u32;
    let mut left = k;
    while left > 0 {
        for c in next..n {
            let with_c = binomial((n - c - 1) as u64, (left - 1) as u64);
            if r < with_c {
                out.push(c);
                next = c + 1;
                left -= 1;
                break;
            }
            r -= with_c;
        }
    }
    out
}

/// Universe for a single composed copy: anchor pools X and Y of size
/// 3m + εm each, plus that copy's fresh C/D/E blocks.
pub fn xy_universe(params: FoldParams) -> ColorUniverse {
    let pool = params.list_size();
    ColorUniverse::build(&[
        ("X", pool),
        ("Y", pool),
        ("C", params.m),
        ("D", 2 * params.m),
        ("E", params.e_size),
    ])
    .expect("static block table")
}

fn anchor_set(block: u16, indices: &[u32]) -> ColorSet {
    indices.iter().map(|&i| Color { block, index: i }).collect()
}

fn full_block(universe: &ColorUniverse, block: u16) -> ColorSet {
    universe.block_colors(block).collect()
}

fn check_anchor(indices: &[u32], limit: u32, want: u32) -> Result<(), GadgetError> {
    let distinct: std::collections::BTreeSet<u32> = indices.iter().copied().collect();
    if indices.len() as u32 != want
        || distinct.len() != indices.len()
        || indices.iter().any(|&i| i >= limit)
    {
        return Err(GadgetError::BadAnchorSet { limit, want });
    }
    Ok(())
}

/// Lists for one copy of the gadget under a fixed anchor pair: A becomes
/// φu ⊆ X, B becomes φv ⊆ Y, and C/D/E stay private to the copy.
pub fn instantiate_copy_lists(
    h: &GadgetH,
    phi_u: &[u32],
    phi_v: &[u32],
) -> Result<ListAssignment, GadgetError> {
    let params = h.params;
    let pool = params.list_size();
    check_anchor(phi_u, pool, params.m)?;
    check_anchor(phi_v, pool, params.m)?;

    let universe = xy_universe(params);
    let ux = anchor_set(0, phi_u);
    let vy = anchor_set(1, phi_v);
    let c = full_block(&universe, 2);
    let d = full_block(&universe, 3);
    let e = full_block(&universe, 4);

    let mut lists = ListAssignment::new(universe);
    for (role, blocks) in ROLE_BLOCKS {
        let vx = h.graph.vertex_by_role(role).expect("validated role");
        let mut set = ColorSet::new();
        for &b in blocks.iter() {
            let part = match b {
                BLOCK_A => &ux,
                BLOCK_B => &vy,
                BLOCK_C => &c,
                BLOCK_D => &d,
                BLOCK_E => &e,
                _ => unreachable!("role table only names the five blocks"),
            };
            set.extend(part.iter().copied());
        }
        lists.insert(vx, set)?;
    }
    Ok(lists)
}

/// One fully materialized composed graph: every copy spelled out, with a
/// shared universe carrying per-copy C/D/E blocks.
#[derive(Debug, Clone)]
pub struct ExplicitComposition {
    pub graph: Graph,
    pub lists: ListAssignment,
    /// For copy k, the anchor pair (φu indices into X, φv indices into Y).
    pub pairs: Vec<(Vec<u32>, Vec<u32>)>,
}

/// The composed construction at fold m. `p` and the copy count p² are
/// exact; the explicit graph is only materialized below the cap.
#[derive(Debug, Clone)]
pub struct ComposedGadget {
    pub params: FoldParams,
    pub p: BigUint,
    pub copy_count: BigUint,
    pub explicit: Option<ExplicitComposition>,
}

impl ComposedGadget {
    /// Materialize the anchor pair of copy (rank_u, rank_v) without
    /// building the graph.
    pub fn pair_at(&self, rank_u: &BigUint, rank_v: &BigUint) -> (Vec<u32>, Vec<u32>) {
        let pool = self.params.list_size();
        let m = self.params.m;
        (nth_subset(pool, m, rank_u), nth_subset(pool, m, rank_v))
    }
}

/// Build the composition. With `explicit` set the full graph is
/// constructed, refusing (rather than thrashing) when p² exceeds `cap`.
pub fn build_g(m: u32, explicit: bool, cap: u64) -> Result<ComposedGadget, GadgetError> {
    let h = build_h(m, None)?;
    let params = h.params;
    let pool = params.list_size();
    let p = binomial(pool as u64, m as u64);
    let copy_count = &p * &p;

    let explicit_part = if explicit {
        if copy_count > BigUint::from(cap) {
            return Err(GadgetError::CapExceeded {
                needed: copy_count,
                cap,
            });
        }
        Some(materialize(&h, &copy_count)?)
    } else {
        None
    };

    Ok(ComposedGadget {
        params,
        p,
        copy_count,
        explicit: explicit_part,
    })
}

fn materialize(h: &GadgetH, copy_count: &BigUint) -> Result<ExplicitComposition, GadgetError> {
    let params = h.params;
    let pool = params.list_size();
    let m = params.m;
    let copies: usize = copy_count
        .try_into()
        .map_err(|_| GadgetError::CapExceeded {
            needed: copy_count.clone(),
            cap: usize::MAX as u64,
        })?;
    let subsets: Vec<Vec<u32>> = (0..pool).combinations(m as usize).collect();
    let p = subsets.len();

    // Universe: shared anchor pools, then per-copy private blocks.
    let mut names: Vec<(String, u32)> =
        vec![("X".to_string(), pool), ("Y".to_string(), pool)];
    for k in 0..copies {
        names.push((format!("C{k}"), m));
        names.push((format!("D{k}"), 2 * m));
        names.push((format!("E{k}"), params.e_size));
    }
    let name_refs: Vec<(&str, u32)> = names.iter().map(|(n, s)| (n.as_str(), *s)).collect();
    let universe = ColorUniverse::build(&name_refs)?;

    // Vertices: shared anchors, then 14 internal vertices per copy with
    // roles "c{k}.{role}" so lists and witnesses stay readable.
    let internal: Vec<&str> = ROLES
        .iter()
        .copied()
        .filter(|r| *r != "u" && *r != "v")
        .collect();
    let mut vertices: Vec<(VertexId, Option<String>)> =
        vec![(0, Some("u".to_string())), (1, Some("v".to_string()))];
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    let (hu, hv) = (
        h.graph.vertex_by_role("u").unwrap(),
        h.graph.vertex_by_role("v").unwrap(),
    );
    // id translation relies on the transcription convention u=0, v=1,
    // internals 2..=15
    assert_eq!((hu, hv), (0, 1), "transcription anchor ids");
    let base = |k: usize| 2 + 14 * k as VertexId;
    for k in 0..copies {
        for (i, role) in internal.iter().enumerate() {
            vertices.push((base(k) + i as VertexId, Some(format!("c{k}.{role}"))));
        }
        for &(a, b) in h.graph.edges() {
            let map = |x: VertexId| if x <= 1 { x } else { base(k) + (x - 2) };
            edges.push((map(a), map(b)));
        }
    }
    let graph = Graph::build(vertices, edges)?;

    // Lists: anchors get their full pools; copy k gets its pair's lists.
    let mut lists = ListAssignment::new(universe.clone());
    lists.insert(0, full_block(&universe, 0))?;
    lists.insert(1, full_block(&universe, 1))?;

    let mut pairs = Vec::with_capacity(copies);
    for k in 0..copies {
        let (i, j) = (k / p, k % p);
        let phi_u = &subsets[i];
        let phi_v = &subsets[j];
        pairs.push((phi_u.clone(), phi_v.clone()));
        let cb = (2 + 3 * k) as u16;
        let (db, eb) = (cb + 1, cb + 2);
        let ux = anchor_set(0, phi_u);
        let vy = anchor_set(1, phi_v);
        let c = full_block(&universe, cb);
        let d = full_block(&universe, db);
        let e = full_block(&universe, eb);
        for (role, blocks) in ROLE_BLOCKS {
            if role == "u" || role == "v" {
                continue;
            }
            let hid = h.graph.vertex_by_role(role).unwrap();
            let gid = base(k) + (hid - 2);
            let mut set = ColorSet::new();
            for &b in blocks.iter() {
                let part = match b {
                    BLOCK_A => &ux,
                    BLOCK_B => &vy,
                    BLOCK_C => &c,
                    BLOCK_D => &d,
                    BLOCK_E => &e,
                    _ => unreachable!(),
                };
                set.extend(part.iter().copied());
            }
            lists.insert(gid, set)?;
        }
    }

    Ok(ExplicitComposition {
        graph,
        lists,
        pairs,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompositionMode {
    Exhaustive,
    Representative,
}

impl CompositionMode {
    pub fn name(&self) -> &'static str {
        match self {
            CompositionMode::Exhaustive => "exhaustive",
            CompositionMode::Representative => "representative",
        }
    }
}

/// One solved anchor pair.
#[derive(Debug, Clone)]
pub struct PairRecord {
    pub phi_u: Vec<u32>,
    pub phi_v: Vec<u32>,
    pub outcome: SolveOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CompositionVerdict {
    /// Every checked pair is UNSAT: no anchor choice survives.
    Blocked,
    /// Some pair admits a coloring; its index into `pairs`.
    Refuted { pair: usize },
    Inconclusive,
}

impl CompositionVerdict {
    pub fn name(&self) -> &'static str {
        match self {
            CompositionVerdict::Blocked => "blocked",
            CompositionVerdict::Refuted { .. } => "refuted",
            CompositionVerdict::Inconclusive => "inconclusive",
        }
    }
}

/// Order-preserving relabeling carrying the representative pair onto a
/// target pair: a bijection on the X pool mapping the representative φu
/// onto the target φu (complement onto complement, order kept), and the
/// same on Y. Lists transport exactly under these maps, so one UNSAT
/// representative settles every pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelabelRecord {
    pub phi_u: Vec<u32>,
    pub phi_v: Vec<u32>,
    pub x_map: Vec<(u32, u32)>,
    pub y_map: Vec<(u32, u32)>,
}

/// The order-preserving bijection on {0, …, size−1} sending `from` onto
/// `to` (both sorted, same length) and the complement of `from` onto the
/// complement of `to`.
pub fn anchor_bijection(size: u32, from: &[u32], to: &[u32]) -> Vec<(u32, u32)> {
    debug_assert_eq!(from.len(), to.len());
    let mut map = vec![0u32; size as usize];
    for (a, b) in from.iter().zip(to.iter()) {
        map[*a as usize] = *b;
    }
    let in_from: std::collections::BTreeSet<u32> = from.iter().copied().collect();
    let in_to: std::collections::BTreeSet<u32> = to.iter().copied().collect();
    let co_from: Vec<u32> = (0..size).filter(|i| !in_from.contains(i)).collect();
    let co_to: Vec<u32> = (0..size).filter(|i| !in_to.contains(i)).collect();
    for (a, b) in co_from.iter().zip(co_to.iter()) {
        map[*a as usize] = *b;
    }
    map.into_iter()
        .enumerate()
        .map(|(i, j)| (i as u32, j))
        .collect()
}

/// Certificate for the composed construction at fold m.
#[derive(Debug, Clone)]
pub struct CompositionCertificate {
    pub m: u32,
    pub e_size: u32,
    pub list_size: u32,
    pub p: BigUint,
    pub pair_total: BigUint,
    pub mode: CompositionMode,
    pub pairs: Vec<PairRecord>,
    /// Representative mode only, and only when the pair total fits the
    /// cap; empty otherwise (the schema still defines the maps).
    pub relabelings: Vec<RelabelRecord>,
    pub verdict: CompositionVerdict,
}

/// Verify the composition claim at fold m.
///
/// Exhaustive mode solves all p² pairs (each with the full budget) and
/// refuses when p² exceeds `cap`. Representative mode solves the
/// lexicographically first pair and, when p² fits the cap, materializes
/// the relabeling records for every other pair.
pub fn check_composition(
    m: u32,
    mode: CompositionMode,
    cap: u64,
    config: &SolverConfig,
) -> Result<CompositionCertificate, GadgetError> {
    let h = build_h(m, None)?;
    let params = h.params;
    let pool = params.list_size();
    let p = binomial(pool as u64, m as u64);
    let pair_total = &p * &p;
    let fits_cap = pair_total <= BigUint::from(cap);

    match mode {
        CompositionMode::Exhaustive => {
            if !fits_cap {
                return Err(GadgetError::CapExceeded {
                    needed: pair_total,
                    cap,
                });
            }
            let subsets: Vec<Vec<u32>> = (0..pool).combinations(m as usize).collect();
            let mut pair_inputs: Vec<(Vec<u32>, Vec<u32>)> = Vec::new();
            for phi_u in &subsets {
                for phi_v in &subsets {
                    pair_inputs.push((phi_u.clone(), phi_v.clone()));
                }
            }
            let par = config.parallel.unwrap_or(Parallelism::Parallel).effective();
            let budget = config.budget;
            let cuts = h.cycle_cuts();
            let outcomes: Vec<Result<SolveOutcome, GadgetError>> =
                exec::map_indexed(par, &pair_inputs, |_, (phi_u, phi_v)| {
                    let lists = instantiate_copy_lists(&h, phi_u, phi_v)?;
                    let cfg = SolverConfig {
                        budget,
                        cuts: cuts.clone(),
                        parallel: None, // parallelism lives at the pair fan-out
                    };
                    Ok(solve(&h.graph, &lists, m, &cfg)?)
                });
            let mut pairs = Vec::with_capacity(pair_inputs.len());
            for ((phi_u, phi_v), outcome) in pair_inputs.into_iter().zip(outcomes) {
                pairs.push(PairRecord {
                    phi_u,
                    phi_v,
                    outcome: outcome?,
                });
            }
            let verdict = composition_verdict(&pairs);
            Ok(CompositionCertificate {
                m,
                e_size: params.e_size,
                list_size: pool,
                p,
                pair_total,
                mode,
                pairs,
                relabelings: Vec::new(),
                verdict,
            })
        }
        CompositionMode::Representative => {
            let rep: Vec<u32> = (0..m).collect();
            let lists = instantiate_copy_lists(&h, &rep, &rep)?;
            let cfg = SolverConfig {
                budget: config.budget,
                cuts: h.cycle_cuts(),
                parallel: config.parallel,
            };
            let outcome = solve(&h.graph, &lists, m, &cfg)?;
            let verdict = match &outcome.verdict {
                Verdict::Sat(_) => CompositionVerdict::Refuted { pair: 0 },
                Verdict::Unsat => CompositionVerdict::Blocked,
                Verdict::Timeout => CompositionVerdict::Inconclusive,
            };
            let pairs = vec![PairRecord {
                phi_u: rep.clone(),
                phi_v: rep.clone(),
                outcome,
            }];
            let relabelings = if fits_cap {
                let subsets: Vec<Vec<u32>> = (0..pool).combinations(m as usize).collect();
                let mut out = Vec::new();
                for phi_u in &subsets {
                    for phi_v in &subsets {
                        if *phi_u == rep && *phi_v == rep {
                            continue;
                        }
                        out.push(RelabelRecord {
                            phi_u: phi_u.clone(),
                            phi_v: phi_v.clone(),
                            x_map: anchor_bijection(pool, &rep, phi_u),
                            y_map: anchor_bijection(pool, &rep, phi_v),
                        });
                    }
                }
                out
            } else {
                Vec::new()
            };
            Ok(CompositionCertificate {
                m,
                e_size: params.e_size,
                list_size: pool,
                p,
                pair_total,
                mode,
                pairs,
                relabelings,
                verdict,
            })
        }
    }
}

fn composition_verdict(pairs: &[PairRecord]) -> CompositionVerdict {
    for (i, rec) in pairs.iter().enumerate() {
        if rec.outcome.verdict.is_sat() {
            return CompositionVerdict::Refuted { pair: i };
        }
    }
    if pairs
        .iter()
        .any(|r| matches!(r.outcome.verdict, Verdict::Timeout))
    {
        return CompositionVerdict::Inconclusive;
    }
    CompositionVerdict::Blocked
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_matches_pascal_triangle() {
        let mut row = vec![BigUint::one()];
        for n in 0..=60u64 {
            for (k, want) in row.iter().enumerate() {
                assert_eq!(&binomial(n, k as u64), want, "C({n},{k})");
            }
            let mut next = vec![BigUint::one()];
            for k in 1..row.len() {
                next.push(&row[k - 1] + &row[k]);
            }
            next.push(BigUint::one());
            row = next;
        }
        assert_eq!(binomial(3, 5), BigUint::zero());
    }

    #[test]
    fn nth_subset_matches_lex_enumeration() {
        let all: Vec<Vec<u32>> = (0..6u32).combinations(3).collect();
        for (i, want) in all.iter().enumerate() {
            let got = nth_subset(6, 3, &BigUint::from(i));
            assert_eq!(&got, want, "rank {i}");
        }
    }

    #[test]
    fn anchor_bijection_preserves_order() {
        let map = anchor_bijection(5, &[0, 1], &[2, 4]);
        // 0→2, 1→4; complement 2,3,4 → 0,1,3 in order
        assert_eq!(map, vec![(0, 2), (1, 4), (2, 0), (3, 1), (4, 3)]);
    }

    #[test]
    fn explicit_composition_m1_shape() {
        let g = build_g(1, true, 100).unwrap();
        assert_eq!(g.p, BigUint::from(3u32));
        assert_eq!(g.copy_count, BigUint::from(9u32));
        let ex = g.explicit.unwrap();
        assert_eq!(ex.graph.n(), 2 + 9 * 14);
        assert_eq!(ex.graph.edge_count(), 9 * 27);
        assert_eq!(ex.graph.girth(), Some(4));
        assert!(ex.graph.triangles().is_empty());
        assert_eq!(ex.pairs.len(), 9);
        // anchors keep their full pools
        assert_eq!(ex.lists.get(0).unwrap().len(), 3);
        assert_eq!(ex.lists.get(1).unwrap().len(), 3);
    }

    #[test]
    fn explicit_cap_refusal() {
        let err = build_g(2, true, 10).unwrap_err();
        assert!(matches!(err, GadgetError::CapExceeded { .. }));
    }

    #[test]
    fn pair_at_round_trips_ranks() {
        let g = build_g(2, false, 0).unwrap();
        // p = C(6,2) = 15
        assert_eq!(g.p, BigUint::from(15u32));
        assert_eq!(
            g.pair_at(&BigUint::from(0u32), &BigUint::from(14u32)),
            (vec![0, 1], vec![4, 5])
        );
    }

    #[test]
    fn copy_lists_reject_bad_anchors() {
        let h = build_h(2, None).unwrap();
        assert!(instantiate_copy_lists(&h, &[0, 1], &[2, 3]).is_ok());
        assert!(instantiate_copy_lists(&h, &[0], &[2, 3]).is_err());
        assert!(instantiate_copy_lists(&h, &[0, 0], &[2, 3]).is_err());
        assert!(instantiate_copy_lists(&h, &[0, 99], &[2, 3]).is_err());
    }
}
