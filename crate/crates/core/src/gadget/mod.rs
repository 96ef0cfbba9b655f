//! The 16-vertex gadget: built from a checked-in transcription (graph +
//! rotation system), validated structurally on every construction, and
//! paired with the adversarial block lists. Also the "blocking" claim
//! harness: the standard-E instance must be UNSAT while the one-extra-E
//! instance must be SAT.

pub mod certify;
pub mod compose;

pub use certify::{
    blocking_json, blocking_markdown, blocking_timing_json, check_certificate, composition_json,
    composition_markdown, composition_timing_json, CertError, CertReport, CheckLine,
};
pub use compose::{
    anchor_bijection, binomial, build_g, check_composition, instantiate_copy_lists, nth_subset,
    xy_universe, ComposedGadget, CompositionCertificate, CompositionMode, CompositionVerdict,
    ExplicitComposition, PairRecord, RelabelRecord,
};

use num_bigint::BigUint;
use thiserror::Error;

use crate::color::{block_lists, ColorError, ColorUniverse, FoldParams, ListAssignment};
use crate::embed::{EmbedError, EmbeddingCertificate};
use crate::graph::{Graph, GraphError, VertexId};
use crate::solver::{solve, CycleCut, InstanceError, SolveOutcome, SolverConfig, Verdict};

const GADGET_DATA: &str = include_str!("../../data/gadget_h.json");

/// The sixteen role names in vertex-id order.
pub const ROLES: [&str; 16] = [
    "u", "v", "x1", "x2", "x3", "w", "y1", "y2", "y3", "y4", "y5", "z1", "z2", "z3", "z4", "z5",
];

#[derive(Debug, Error)]
pub enum GadgetError {
    #[error("parameters: {0}")]
    Color(#[from] ColorError),
    #[error("transcription graph: {0}")]
    Graph(#[from] GraphError),
    #[error("embedding certificate: {0}")]
    Embed(#[from] EmbedError),
    #[error("structural check failed: {0}")]
    Structure(String),
    #[error("solver rejected the instance: {0}")]
    Instance(#[from] InstanceError),
    #[error("{needed} copies exceed the materialization cap {cap}")]
    CapExceeded { needed: BigUint, cap: u64 },
    #[error("anchor set must hold exactly {want} distinct indices below {limit}")]
    BadAnchorSet { limit: u32, want: u32 },
}

/// Parse the embedded transcription: the graph plus its rotation-system
/// certificate.
pub fn load_transcription() -> Result<(Graph, EmbeddingCertificate), GadgetError> {
    let graph = Graph::from_json(GADGET_DATA)?;
    let doc: serde_json::Value = serde_json::from_str(GADGET_DATA)
        .map_err(|e| GadgetError::Structure(format!("data file: {e}")))?;
    let embedding: EmbeddingCertificate = serde_json::from_value(doc["embedding"].clone())
        .map_err(|e| GadgetError::Structure(format!("embedding block: {e}")))?;
    Ok((graph, embedding))
}

/// The gadget with parameters applied: validated graph, embedding, and the
/// block-union lists.
#[derive(Debug, Clone)]
pub struct GadgetH {
    pub graph: Graph,
    pub params: FoldParams,
    pub lists: ListAssignment,
    pub embedding: EmbeddingCertificate,
    pub face_count: usize,
}

impl GadgetH {
    pub fn role_vertex(&self, role: &str) -> VertexId {
        self.graph
            .vertex_by_role(role)
            .expect("roles validated at construction")
    }

    pub fn universe(&self) -> &ColorUniverse {
        self.lists.universe()
    }

    /// The two induced 5-cycles as counting cuts: on an odd cycle C_{2k+1}
    /// a color class has at most k vertices, here k = 2.
    pub fn cycle_cuts(&self) -> Vec<CycleCut> {
        let cut = |roles: [&str; 5]| CycleCut {
            vertices: roles.iter().map(|r| self.role_vertex(r)).collect(),
            cap: 2,
        };
        vec![
            cut(["y1", "y2", "y3", "y4", "y5"]),
            cut(["z1", "z2", "z3", "z4", "z5"]),
        ]
    }
}

/// Build the gadget at fold m. `e_override` replaces the default E-block
/// size ⌈m/17⌉ − 1 (the satisfiable variant uses ⌈m/17⌉).
///
/// Every structural invariant is revalidated: all roles present, girth at
/// least 4, the planarity edge bound E ≤ 2V − 4, and the rotation-system
/// certificate. A failure means the checked-in transcription is wrong and
/// surfaces as an error, never as a silently odd gadget.
pub fn build_h(m: u32, e_override: Option<u32>) -> Result<GadgetH, GadgetError> {
    let params = match e_override {
        None => FoldParams::standard(m)?,
        Some(e) => FoldParams::with_e(m, e)?,
    };
    let (graph, embedding) = load_transcription()?;

    for role in ROLES {
        if graph.vertex_by_role(role).is_none() {
            return Err(GadgetError::Structure(format!("missing role {role:?}")));
        }
    }
    if graph.n() != 16 {
        return Err(GadgetError::Structure(format!(
            "expected 16 vertices, transcription has {}",
            graph.n()
        )));
    }
    match graph.girth() {
        Some(g) if g >= 4 => {}
        other => {
            return Err(GadgetError::Structure(format!(
                "girth must be at least 4, got {other:?}"
            )))
        }
    }
    if graph.edge_count() > 2 * graph.n() - 4 {
        return Err(GadgetError::Structure(format!(
            "edge bound violated: {} > 2·{} − 4",
            graph.edge_count(),
            graph.n()
        )));
    }
    let trace = embedding.check(&graph)?;

    let lists = block_lists(&graph, params)?;
    // size sanity straight from the construction contract
    for role in ROLES {
        let v = graph.vertex_by_role(role).unwrap();
        let want = if role == "u" || role == "v" {
            params.m
        } else {
            params.list_size()
        };
        let got = lists.get(v).map_or(0, |s| s.len() as u32);
        if got != want {
            return Err(GadgetError::Structure(format!(
                "list size at {role}: got {got}, want {want}"
            )));
        }
    }

    Ok(GadgetH {
        graph,
        params,
        lists,
        embedding,
        face_count: trace.face_count(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClaimVerdict {
    Upheld,
    Refuted,
    Inconclusive,
}

impl ClaimVerdict {
    pub fn name(&self) -> &'static str {
        match self {
            ClaimVerdict::Upheld => "upheld",
            ClaimVerdict::Refuted => "refuted",
            ClaimVerdict::Inconclusive => "inconclusive",
        }
    }
}

/// Both legs of the blocking claim at fold m.
#[derive(Debug, Clone)]
pub struct BlockingCheck {
    pub m: u32,
    /// E-size of the leg expected UNSAT: ⌈m/17⌉ − 1.
    pub blocked_e: u32,
    /// E-size of the leg expected SAT: ⌈m/17⌉.
    pub open_e: u32,
    pub blocked_outcome: SolveOutcome,
    pub open_outcome: SolveOutcome,
    pub verdict: ClaimVerdict,
}

/// Run both legs: the standard-E instance (expect UNSAT) and the
/// one-extra-E instance (expect SAT). A timeout on either leg makes the
/// check inconclusive; it is never counted as a pass.
pub fn check_blocking(m: u32, config: &SolverConfig) -> Result<BlockingCheck, GadgetError> {
    let blocked = build_h(m, None)?;
    let open_e = FoldParams::satisfiable_e(m);
    let open = build_h(m, Some(open_e))?;

    let run = |h: &GadgetH| -> Result<SolveOutcome, GadgetError> {
        let cfg = SolverConfig {
            budget: config.budget,
            cuts: h.cycle_cuts(),
            parallel: config.parallel,
        };
        Ok(solve(&h.graph, &h.lists, m, &cfg)?)
    };
    let blocked_outcome = run(&blocked)?;
    let open_outcome = run(&open)?;

    let verdict = match (&blocked_outcome.verdict, &open_outcome.verdict) {
        (Verdict::Unsat, Verdict::Sat(_)) => ClaimVerdict::Upheld,
        (Verdict::Sat(_), _) => ClaimVerdict::Refuted,
        (_, Verdict::Unsat) => ClaimVerdict::Refuted,
        _ => ClaimVerdict::Inconclusive,
    };
    Ok(BlockingCheck {
        m,
        blocked_e: blocked.params.e_size,
        open_e,
        blocked_outcome,
        open_outcome,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transcription_loads_and_validates() {
        let h = build_h(1, None).unwrap();
        assert_eq!(h.graph.n(), 16);
        assert_eq!(h.graph.edge_count(), 27);
        assert_eq!(h.face_count, 13);
        assert_eq!(h.graph.girth(), Some(4));
        assert!(h.graph.triangles().is_empty());
    }

    #[test]
    fn wheel_of_roles_is_complete() {
        let h = build_h(1, None).unwrap();
        for role in ROLES {
            assert!(h.graph.vertex_by_role(role).is_some(), "role {role}");
        }
        // anchors see each other's blockers: the expected 4-cycle
        let (u, v) = (h.role_vertex("u"), h.role_vertex("v"));
        let (x1, x3) = (h.role_vertex("x1"), h.role_vertex("x3"));
        assert!(h.graph.has_edge(u, x1));
        assert!(h.graph.has_edge(x1, v));
        assert!(h.graph.has_edge(v, x3));
        assert!(h.graph.has_edge(x3, u));
    }

    #[test]
    fn list_sizes_match_contract() {
        for (m, e, size) in [(1, None, 3), (1, Some(1), 4), (2, None, 6), (18, None, 55)] {
            let h = build_h(m, e).unwrap();
            assert_eq!(h.params.list_size(), size);
            let x1 = h.role_vertex("x1");
            assert_eq!(h.lists.get(x1).unwrap().len() as u32, size);
            let u = h.role_vertex("u");
            assert_eq!(h.lists.get(u).unwrap().len() as u32, m);
        }
    }

    #[test]
    fn degeneracy_is_three() {
        let h = build_h(1, None).unwrap();
        let (d, _) = h.graph.degeneracy_order();
        assert_eq!(d, 3);
    }

    #[test]
    fn cuts_reference_the_two_pentagons() {
        let h = build_h(1, None).unwrap();
        let cuts = h.cycle_cuts();
        assert_eq!(cuts.len(), 2);
        for cut in &cuts {
            assert_eq!(cut.vertices.len(), 5);
            assert_eq!(cut.cap, 2);
            // consecutive members really are a cycle in the graph
            for i in 0..5 {
                assert!(h.graph.has_edge(cut.vertices[i], cut.vertices[(i + 1) % 5]));
            }
        }
    }
}
