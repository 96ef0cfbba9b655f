//! The degeneracy greedy: color in reverse peeling order, so each vertex
//! faces at most d already-colored neighbors and |L(v)| ≥ b·(d+1)
//! guarantees success. A failure here proves nothing (the outcome says
//! "stuck", not UNSAT).

use crate::color::{ColorSet, ListAssignment, MultiColoring};
use crate::graph::{Graph, VertexId};

use super::InstanceError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GreedyOutcome {
    Sat(MultiColoring),
    /// Ran out of free colors at `vertex`; no conclusion about the
    /// instance.
    Stuck { vertex: VertexId, available: usize },
}

impl GreedyOutcome {
    pub fn is_sat(&self) -> bool {
        matches!(self, GreedyOutcome::Sat(_))
    }
}

/// Color vertices in reverse degeneracy order, taking the b smallest free
/// colors each time.
pub fn greedy_degenerate_solve(
    g: &Graph,
    lists: &ListAssignment,
    b: u32,
) -> Result<GreedyOutcome, InstanceError> {
    if b == 0 {
        return Err(InstanceError::ZeroB);
    }
    for &v in g.vertex_ids() {
        if lists.get(v).is_none() {
            return Err(InstanceError::MissingList(g.vertex_name(v)));
        }
    }
    let (_, order) = g.degeneracy_order();
    let mut phi = MultiColoring::new(b);
    for &v in order.iter().rev() {
        let mut free: ColorSet = lists.get(v).unwrap().clone();
        for u in g.neighbors(v) {
            if let Some(set) = phi.get(u) {
                for c in set {
                    free.remove(c);
                }
            }
        }
        if free.len() < b as usize {
            return Ok(GreedyOutcome::Stuck {
                vertex: v,
                available: free.len(),
            });
        }
        phi.phi.insert(v, free.into_iter().take(b as usize).collect());
    }
    Ok(GreedyOutcome::Sat(phi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::color::{verify_coloring, ColorUniverse};
    use crate::graph::Graph;

    #[test]
    fn path_with_two_lists_succeeds() {
        // P3 has degeneracy 1, so size-2 lists suffice at b=1
        let g = Graph::build(
            vec![(0, None), (1, None), (2, None)],
            vec![(0, 1), (1, 2)],
        )
        .unwrap();
        let u = ColorUniverse::build(&[("K", 2)]).unwrap();
        let full: ColorSet = u.colors().collect();
        let mut lists = ListAssignment::new(u);
        for v in 0..3 {
            lists.insert(v, full.clone()).unwrap();
        }
        match greedy_degenerate_solve(&g, &lists, 1).unwrap() {
            GreedyOutcome::Sat(phi) => verify_coloring(&g, &lists, &phi).unwrap(),
            GreedyOutcome::Stuck { .. } => panic!("greedy must succeed on P3"),
        }
    }
}
