//! Color orbits: colors appearing in exactly the same vertex lists are
//! interchangeable in any solution, so the search only ever needs one
//! representative choice among the currently unused colors of an orbit.

use std::collections::BTreeMap;

use crate::color::{Color, ListAssignment};
use crate::graph::{Graph, VertexId};

/// A maximal set of colors with identical list membership.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorOrbit {
    /// The vertices whose lists contain every member, ascending.
    pub signature: Vec<VertexId>,
    /// Member colors in block-major order.
    pub members: Vec<Color>,
}

/// Partition the colors appearing in `lists` (restricted to vertices of
/// `g`) by list-membership signature. Orbits are ordered by their first
/// member color, so the output is deterministic.
pub fn color_orbits(g: &Graph, lists: &ListAssignment) -> Vec<ColorOrbit> {
    let mut by_signature: BTreeMap<Vec<VertexId>, Vec<Color>> = BTreeMap::new();
    for color in lists.universe().colors() {
        let signature: Vec<VertexId> = g
            .vertex_ids()
            .iter()
            .copied()
            .filter(|&v| lists.get(v).is_some_and(|set| set.contains(&color)))
            .collect();
        if signature.is_empty() {
            continue; // color appears in no list
        }
        by_signature.entry(signature).or_default().push(color);
    }
    let mut orbits: Vec<ColorOrbit> = by_signature
        .into_iter()
        .map(|(signature, members)| ColorOrbit { signature, members })
        .collect();
    orbits.sort_by_key(|o| o.members[0]);
    orbits
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::color::{ColorSet, ColorUniverse};
    use crate::graph::cycle;

    #[test]
    fn identical_lists_form_one_orbit() {
        let g = cycle(5);
        let u = ColorUniverse::build(&[("K", 4)]).unwrap();
        let full: ColorSet = u.colors().collect();
        let mut lists = ListAssignment::new(u);
        for v in 0..5 {
            lists.insert(v, full.clone()).unwrap();
        }
        let orbits = color_orbits(&g, &lists);
        assert_eq!(orbits.len(), 1);
        assert_eq!(orbits[0].members.len(), 4);
        assert_eq!(orbits[0].signature, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn disjoint_lists_form_two_orbits() {
        let g = crate::graph::Graph::build(vec![(0, None), (1, None)], vec![(0, 1)]).unwrap();
        let u = ColorUniverse::build(&[("K", 4)]).unwrap();
        let colors: Vec<_> = u.colors().collect();
        let mut lists = ListAssignment::new(u);
        lists.insert(0, colors[..2].iter().copied().collect()).unwrap();
        lists.insert(1, colors[2..].iter().copied().collect()).unwrap();
        let orbits = color_orbits(&g, &lists);
        assert_eq!(orbits.len(), 2);
        assert_eq!(orbits[0].signature, vec![0]);
        assert_eq!(orbits[1].signature, vec![1]);
    }
}
