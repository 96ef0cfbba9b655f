//! Immutable simple graphs with optional role labels, plus the structural
//! checks the lab relies on: girth, degeneracy, triangle enumeration, and
//! deterministic JSON/DOT serialization.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type VertexId = u32;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(VertexId),
    #[error("duplicate role {role:?} on vertices {first} and {second}")]
    DuplicateRole {
        role: String,
        first: VertexId,
        second: VertexId,
    },
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(VertexId, VertexId),
    #[error("edge endpoint {0} is not a declared vertex")]
    UnknownEndpoint(VertexId),
    #[error("malformed graph JSON: {0}")]
    BadJson(String),
}

/// Simple undirected graph. Construction validates; afterwards the value is
/// immutable and cheap to clone or share across threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    ids: Vec<VertexId>,
    roles: Vec<Option<String>>,
    edges: Vec<(VertexId, VertexId)>,
    adj: Vec<Vec<u32>>, // internal indices, sorted
}

impl Graph {
    pub fn build(
        vertices: Vec<(VertexId, Option<String>)>,
        edge_list: Vec<(VertexId, VertexId)>,
    ) -> Result<Graph, GraphError> {
        let mut verts = vertices;
        verts.sort_by_key(|(id, _)| *id);
        for pair in verts.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(GraphError::DuplicateVertex(pair[0].0));
            }
        }
        let mut role_seen: BTreeMap<&str, VertexId> = BTreeMap::new();
        for (id, role) in &verts {
            if let Some(r) = role {
                if let Some(&first) = role_seen.get(r.as_str()) {
                    return Err(GraphError::DuplicateRole {
                        role: r.clone(),
                        first,
                        second: *id,
                    });
                }
                role_seen.insert(r, *id);
            }
        }
        let ids: Vec<VertexId> = verts.iter().map(|(id, _)| *id).collect();
        let roles: Vec<Option<String>> = verts.into_iter().map(|(_, r)| r).collect();

        let index_of = |id: VertexId| ids.binary_search(&id).ok();
        let mut edges: Vec<(VertexId, VertexId)> = Vec::with_capacity(edge_list.len());
        for (a, b) in edge_list {
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            if index_of(a).is_none() {
                return Err(GraphError::UnknownEndpoint(a));
            }
            if index_of(b).is_none() {
                return Err(GraphError::UnknownEndpoint(b));
            }
            edges.push((a.min(b), a.max(b)));
        }
        edges.sort();
        for pair in edges.windows(2) {
            if pair[0] == pair[1] {
                return Err(GraphError::DuplicateEdge(pair[0].0, pair[0].1));
            }
        }

        let mut adj = vec![Vec::new(); ids.len()];
        for &(a, b) in &edges {
            let ia = index_of(a).unwrap() as u32;
            let ib = index_of(b).unwrap() as u32;
            adj[ia as usize].push(ib);
            adj[ib as usize].push(ia);
        }
        for nbrs in &mut adj {
            nbrs.sort_unstable();
        }
        Ok(Graph {
            ids,
            roles,
            edges,
            adj,
        })
    }

    pub fn n(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Vertex ids in ascending order.
    pub fn vertex_ids(&self) -> &[VertexId] {
        &self.ids
    }

    /// Normalized (a < b) edges in ascending order.
    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn index_of(&self, id: VertexId) -> Option<usize> {
        self.ids.binary_search(&id).ok()
    }

    pub fn id_at(&self, index: usize) -> VertexId {
        self.ids[index]
    }

    pub fn role(&self, id: VertexId) -> Option<&str> {
        self.index_of(id).and_then(|i| self.roles[i].as_deref())
    }

    pub fn vertex_by_role(&self, role: &str) -> Option<VertexId> {
        self.roles
            .iter()
            .position(|r| r.as_deref() == Some(role))
            .map(|i| self.ids[i])
    }

    /// Human-readable vertex name: the role when present, the id otherwise.
    pub fn vertex_name(&self, id: VertexId) -> String {
        match self.role(id) {
            Some(r) => r.to_string(),
            None => id.to_string(),
        }
    }

    /// Neighbor indices (internal, sorted) of the vertex at `index`.
    pub fn neighbors_ix(&self, index: usize) -> &[u32] {
        &self.adj[index]
    }

    pub fn neighbors(&self, id: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        let ix = self.index_of(id).expect("unknown vertex id");
        self.adj[ix].iter().map(move |&j| self.ids[j as usize])
    }

    pub fn degree(&self, id: VertexId) -> usize {
        self.adj[self.index_of(id).expect("unknown vertex id")].len()
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.edges.binary_search(&(a.min(b), a.max(b))).is_ok()
    }

    pub fn is_connected(&self) -> bool {
        if self.ids.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.n()];
        let mut queue = VecDeque::from([0u32]);
        seen[0] = true;
        let mut count = 1;
        while let Some(i) = queue.pop_front() {
            for &j in &self.adj[i as usize] {
                if !seen[j as usize] {
                    seen[j as usize] = true;
                    count += 1;
                    queue.push_back(j);
                }
            }
        }
        count == self.n()
    }

    /// Length of a shortest cycle; `None` for forests.
    ///
    /// BFS from every root: the first non-tree edge seen closes a candidate
    /// cycle of length `dist[a] + dist[b] + 1`, and the minimum over all
    /// roots is exact for unweighted graphs.
    pub fn girth(&self) -> Option<u32> {
        let n = self.n();
        let mut best: Option<u32> = None;
        let mut dist = vec![u32::MAX; n];
        let mut parent = vec![u32::MAX; n];
        for root in 0..n {
            dist.fill(u32::MAX);
            parent.fill(u32::MAX);
            dist[root] = 0;
            let mut queue = VecDeque::from([root as u32]);
            while let Some(i) = queue.pop_front() {
                if let Some(b) = best {
                    // No shorter cycle can be found once the frontier is
                    // deeper than half the best length.
                    if dist[i as usize] * 2 >= b {
                        break;
                    }
                }
                for &j in &self.adj[i as usize] {
                    if dist[j as usize] == u32::MAX {
                        dist[j as usize] = dist[i as usize] + 1;
                        parent[j as usize] = i;
                        queue.push_back(j);
                    } else if parent[i as usize] != j {
                        let len = dist[i as usize] + dist[j as usize] + 1;
                        if best.map_or(true, |b| len < b) {
                            best = Some(len);
                        }
                    }
                }
            }
        }
        best
    }

    /// All triangles as sorted id triples; independent oracle for the
    /// girth-based triangle-freeness check.
    pub fn triangles(&self) -> Vec<(VertexId, VertexId, VertexId)> {
        let mut out = Vec::new();
        for &(a, b) in &self.edges {
            let ia = self.index_of(a).unwrap();
            let ib = self.index_of(b).unwrap();
            let (na, nb) = (&self.adj[ia], &self.adj[ib]);
            // sorted-list intersection
            let (mut p, mut q) = (0, 0);
            while p < na.len() && q < nb.len() {
                match na[p].cmp(&nb[q]) {
                    std::cmp::Ordering::Less => p += 1,
                    std::cmp::Ordering::Greater => q += 1,
                    std::cmp::Ordering::Equal => {
                        let c = self.ids[na[p] as usize];
                        if c > b {
                            out.push((a, b, c));
                        }
                        p += 1;
                        q += 1;
                    }
                }
            }
        }
        out
    }

    pub fn is_triangle_free(&self) -> bool {
        self.girth().map_or(true, |g| g >= 4)
    }

    /// Greedy min-degree peeling. Returns `(d, order)` where `order` is the
    /// removal sequence and every vertex has at most `d` neighbors later in
    /// it. Ties peel the smallest id first, so the order is deterministic.
    pub fn degeneracy_order(&self) -> (u32, Vec<VertexId>) {
        let n = self.n();
        let mut deg: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        let mut removed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut d = 0;
        for _ in 0..n {
            let i = (0..n)
                .filter(|&i| !removed[i])
                .min_by_key(|&i| (deg[i], self.ids[i]))
                .unwrap();
            d = d.max(deg[i] as u32);
            removed[i] = true;
            order.push(self.ids[i]);
            for &j in &self.adj[i] {
                if !removed[j as usize] {
                    deg[j as usize] -= 1;
                }
            }
        }
        (d, order)
    }

    /// Induced subgraph on the given vertex set (ids keep their values and
    /// roles).
    pub fn induced(&self, keep: &BTreeSet<VertexId>) -> Graph {
        let vertices = self
            .ids
            .iter()
            .zip(&self.roles)
            .filter(|(id, _)| keep.contains(id))
            .map(|(id, role)| (*id, role.clone()))
            .collect();
        let edges = self
            .edges
            .iter()
            .filter(|(a, b)| keep.contains(a) && keep.contains(b))
            .copied()
            .collect();
        Graph::build(vertices, edges).expect("induced subgraph of a valid graph is valid")
    }

    pub fn to_json(&self) -> String {
        let doc = GraphDoc {
            vertices: self
                .ids
                .iter()
                .zip(&self.roles)
                .map(|(id, role)| VertexDoc {
                    id: *id,
                    role: role.clone(),
                })
                .collect(),
            edges: self.edges.clone(),
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("graph serialization");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Graph, GraphError> {
        let doc: GraphDoc =
            serde_json::from_str(text).map_err(|e| GraphError::BadJson(e.to_string()))?;
        Graph::build(
            doc.vertices.into_iter().map(|v| (v.id, v.role)).collect(),
            doc.edges,
        )
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph g {\n");
        for (id, role) in self.ids.iter().zip(&self.roles) {
            match role {
                Some(r) => out.push_str(&format!("  {} [label=\"{}\"];\n", id, r)),
                None => out.push_str(&format!("  {};\n", id)),
            }
        }
        for (a, b) in &self.edges {
            out.push_str(&format!("  {} -- {};\n", a, b));
        }
        out.push_str("}\n");
        out
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "graph({} vertices, {} edges)", self.n(), self.edge_count())
    }
}

#[derive(Serialize, Deserialize)]
struct GraphDoc {
    vertices: Vec<VertexDoc>,
    edges: Vec<(VertexId, VertexId)>,
}

#[derive(Serialize, Deserialize)]
struct VertexDoc {
    id: VertexId,
    #[serde(skip_serializing_if = "Option::is_none")]
    role: Option<String>,
}

/// Convenience constructor: the cycle C_n on ids `0..n`.
pub fn cycle(n: u32) -> Graph {
    let vertices = (0..n).map(|i| (i, None)).collect();
    let edges = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::build(vertices, edges).expect("cycle is a valid graph")
}

/// Convenience constructor: the complete graph K_n on ids `0..n`.
pub fn complete(n: u32) -> Graph {
    let vertices = (0..n).map(|i| (i, None)).collect();
    let mut edges = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            edges.push((a, b));
        }
    }
    Graph::build(vertices, edges).expect("complete graph is a valid graph")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_rejects_bad_input() {
        let err = Graph::build(vec![(0, None), (0, None)], vec![]).unwrap_err();
        assert_eq!(err, GraphError::DuplicateVertex(0));

        let err = Graph::build(vec![(0, None)], vec![(0, 0)]).unwrap_err();
        assert_eq!(err, GraphError::SelfLoop(0));

        let err = Graph::build(vec![(0, None), (1, None)], vec![(0, 1), (1, 0)]).unwrap_err();
        assert_eq!(err, GraphError::DuplicateEdge(0, 1));

        let err = Graph::build(vec![(0, None)], vec![(0, 7)]).unwrap_err();
        assert_eq!(err, GraphError::UnknownEndpoint(7));

        let err = Graph::build(
            vec![(0, Some("u".into())), (1, Some("u".into()))],
            vec![],
        )
        .unwrap_err();
        assert!(matches!(err, GraphError::DuplicateRole { .. }));
    }

    #[test]
    fn single_vertex_graph() {
        let g = Graph::build(vec![(3, None)], vec![]).unwrap();
        assert_eq!(g.n(), 1);
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.girth(), None);
    }

    #[test]
    fn c5_basics() {
        let g = cycle(5);
        assert_eq!(g.n(), 5);
        assert_eq!(g.edge_count(), 5);
        assert!(g.vertex_ids().iter().all(|&v| g.degree(v) == 2));
        assert_eq!(g.girth(), Some(5));
        let (d, _) = g.degeneracy_order();
        assert_eq!(d, 2);
    }

    #[test]
    fn single_edge_is_acyclic() {
        let g = Graph::build(vec![(0, None), (1, None)], vec![(0, 1)]).unwrap();
        assert_eq!(g.girth(), None);
    }

    #[test]
    fn star_degeneracy_is_one() {
        let g = Graph::build(
            (0..5).map(|i| (i, None)).collect(),
            (1..5).map(|i| (0, i)).collect(),
        )
        .unwrap();
        let (d, order) = g.degeneracy_order();
        assert_eq!(d, 1);
        // replay: no vertex may see more than d later neighbors
        for (pos, &v) in order.iter().enumerate() {
            let later = g
                .neighbors(v)
                .filter(|u| order[pos..].contains(u))
                .count();
            assert!(later <= d as usize);
        }
    }

    #[test]
    fn triangle_detection_agrees_with_girth() {
        let k4 = complete(4);
        assert_eq!(k4.girth(), Some(3));
        assert_eq!(k4.triangles().len(), 4);
        assert!(!k4.is_triangle_free());

        let c4 = cycle(4);
        assert_eq!(c4.girth(), Some(4));
        assert!(c4.triangles().is_empty());
        assert!(c4.is_triangle_free());
    }

    #[test]
    fn json_round_trip_identity() {
        let g = Graph::build(
            vec![(0, Some("u".into())), (1, None), (5, Some("w".into()))],
            vec![(0, 1), (1, 5)],
        )
        .unwrap();
        let text = g.to_json();
        let back = Graph::from_json(&text).unwrap();
        assert_eq!(g, back);
        // canonical form is a fixed point
        assert_eq!(text, back.to_json());
    }

    #[test]
    fn one_vertex_json_shape() {
        let g = Graph::build(vec![(0, None)], vec![]).unwrap();
        let text = g.to_json();
        assert!(text.contains("\"vertices\""));
        assert!(text.contains("\"edges\": []"));
    }

    #[test]
    fn dot_export_c5() {
        let dot = cycle(5).to_dot();
        assert_eq!(dot.matches(" -- ").count(), 5);
        assert!(dot.starts_with("graph g {"));
    }

    #[test]
    fn induced_subgraph_drops_edges() {
        let g = cycle(5);
        let keep: BTreeSet<VertexId> = [0, 1, 2, 3].into_iter().collect();
        let sub = g.induced(&keep);
        assert_eq!(sub.n(), 4);
        assert_eq!(sub.edge_count(), 3); // path 0-1-2-3
    }
}
