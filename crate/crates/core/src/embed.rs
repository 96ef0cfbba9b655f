//! Combinatorial embedding certificates: a rotation system per vertex plus a
//! declared face count. Checking one traces every face and applies Euler's
//! formula, which certifies planarity for the shipped gadget without a
//! general planarity algorithm.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, VertexId};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EmbedError {
    #[error("graph is not connected; face tracing undefined")]
    Disconnected,
    #[error("no rotation given for vertex {0}")]
    MissingRotation(VertexId),
    #[error("rotation names vertex {0} which is not in the graph")]
    UnknownVertex(VertexId),
    #[error("rotation at vertex {vertex} does not list its neighbors exactly once")]
    RotationMismatch { vertex: VertexId },
    #[error("Euler check failed: V={v}, E={e}, traced F={f}, V-E+F={chi}")]
    EulerMismatch { v: usize, e: usize, f: usize, chi: i64 },
    #[error("declared {declared} faces but traced {traced}")]
    FaceCountMismatch { declared: usize, traced: usize },
    #[error("malformed embedding JSON: {0}")]
    BadJson(String),
}

/// Per-vertex cyclic neighbor order plus the face count the embedding is
/// claimed to produce.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingCertificate {
    pub declared_faces: usize,
    pub rotation: BTreeMap<VertexId, Vec<VertexId>>,
}

/// Successful check: the traced faces, each a closed walk of vertex ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceTrace {
    pub faces: Vec<Vec<VertexId>>,
}

impl FaceTrace {
    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Face lengths in ascending order.
    pub fn face_lengths(&self) -> Vec<usize> {
        let mut lens: Vec<usize> = self.faces.iter().map(Vec::len).collect();
        lens.sort_unstable();
        lens
    }
}

impl EmbeddingCertificate {
    pub fn from_json(text: &str) -> Result<Self, EmbedError> {
        serde_json::from_str(text).map_err(|e| EmbedError::BadJson(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("embedding serialization");
        s.push('\n');
        s
    }

    /// Trace all faces of the embedding and verify Euler's formula.
    ///
    /// Walk rule: arriving at `b` along the dart `a -> b`, leave along the
    /// dart `b -> c` where `c` follows `a` in the rotation at `b`. Every
    /// dart lies on exactly one face orbit (the successor map is a
    /// permutation of darts), and the check asserts that bookkeeping
    /// explicitly. Accepts iff `V - E + F = 2` and the declared face count
    /// matches the trace.
    pub fn check(&self, g: &Graph) -> Result<FaceTrace, EmbedError> {
        if !g.is_connected() {
            return Err(EmbedError::Disconnected);
        }
        for &v in self.rotation.keys() {
            if g.index_of(v).is_none() {
                return Err(EmbedError::UnknownVertex(v));
            }
        }
        // Each rotation must list exactly the neighbors, each once.
        for &v in g.vertex_ids() {
            let rot = self
                .rotation
                .get(&v)
                .ok_or(EmbedError::MissingRotation(v))?;
            let mut listed: Vec<VertexId> = rot.clone();
            listed.sort_unstable();
            listed.dedup();
            let neighbors: Vec<VertexId> = g.neighbors(v).collect();
            if listed.len() != rot.len() || listed != neighbors {
                return Err(EmbedError::RotationMismatch { vertex: v });
            }
        }

        // successor position lookup: at vertex v, where does neighbor a sit?
        let pos: BTreeMap<(VertexId, VertexId), usize> = self
            .rotation
            .iter()
            .flat_map(|(&v, rot)| rot.iter().enumerate().map(move |(i, &a)| ((v, a), i)))
            .collect();

        let mut darts: Vec<(VertexId, VertexId)> = Vec::with_capacity(2 * g.edge_count());
        for &(a, b) in g.edges() {
            darts.push((a, b));
            darts.push((b, a));
        }
        darts.sort_unstable();
        let dart_index: BTreeMap<(VertexId, VertexId), usize> =
            darts.iter().enumerate().map(|(i, &d)| (d, i)).collect();

        let mut visited = vec![false; darts.len()];
        let mut faces = Vec::new();
        for start in 0..darts.len() {
            if visited[start] {
                continue;
            }
            let mut face = Vec::new();
            let mut cur = darts[start];
            loop {
                let ix = dart_index[&cur];
                // The successor map is a permutation, so an orbit can only
                // re-enter at its start; anything else is a logic error.
                assert!(!visited[ix] || cur == darts[start], "dart visited twice");
                if visited[ix] {
                    break;
                }
                visited[ix] = true;
                let (a, b) = cur;
                face.push(a);
                let rot = &self.rotation[&b];
                let next = rot[(pos[&(b, a)] + 1) % rot.len()];
                cur = (b, next);
            }
            faces.push(face);
        }
        assert!(visited.iter().all(|&x| x), "dart not consumed by any face");

        let (v, e, f) = (g.n(), g.edge_count(), faces.len());
        let chi = v as i64 - e as i64 + f as i64;
        if chi != 2 {
            return Err(EmbedError::EulerMismatch { v, e, f, chi });
        }
        if f != self.declared_faces {
            return Err(EmbedError::FaceCountMismatch {
                declared: self.declared_faces,
                traced: f,
            });
        }
        Ok(FaceTrace { faces })
    }
}

/// The natural certificate for a cycle graph: rotation order is the sorted
/// neighbor list, which is the only cyclic order up to reflection.
pub fn cycle_certificate(g: &Graph) -> EmbeddingCertificate {
    EmbeddingCertificate {
        declared_faces: 2,
        rotation: g
            .vertex_ids()
            .iter()
            .map(|&v| (v, g.neighbors(v).collect()))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::cycle;

    #[test]
    fn c5_natural_rotation_accepts() {
        let g = cycle(5);
        let cert = cycle_certificate(&g);
        let trace = cert.check(&g).unwrap();
        assert_eq!(trace.face_count(), 2);
        assert_eq!(trace.face_lengths(), vec![5, 5]);
    }

    #[test]
    fn c5_swapped_rotation_still_accepts() {
        // Degree-2 vertices have a unique cyclic order, so reversing one
        // rotation list changes nothing.
        let g = cycle(5);
        let mut cert = cycle_certificate(&g);
        cert.rotation.get_mut(&2).unwrap().reverse();
        assert_eq!(cert.check(&g).unwrap().face_count(), 2);
    }

    #[test]
    fn rotation_mismatch_names_vertex() {
        let g = cycle(5);
        let mut cert = cycle_certificate(&g);
        cert.rotation.insert(3, vec![2, 2]);
        assert_eq!(
            cert.check(&g).unwrap_err(),
            EmbedError::RotationMismatch { vertex: 3 }
        );
    }

    #[test]
    fn missing_rotation_rejected() {
        let g = cycle(5);
        let mut cert = cycle_certificate(&g);
        cert.rotation.remove(&4);
        assert_eq!(cert.check(&g).unwrap_err(), EmbedError::MissingRotation(4));
    }

    #[test]
    fn wrong_declared_count_rejected() {
        let g = cycle(5);
        let mut cert = cycle_certificate(&g);
        cert.declared_faces = 3;
        assert_eq!(
            cert.check(&g).unwrap_err(),
            EmbedError::FaceCountMismatch {
                declared: 3,
                traced: 2
            }
        );
    }

    #[test]
    fn nonplanar_rotation_of_k4_minus_fails_euler() {
        // K4 is planar, but this deliberately bad rotation system traces a
        // genus-1 embedding: V - E + F = 4 - 6 + 2 - 2g with g = 1.
        let g = crate::graph::complete(4);
        let cert = EmbeddingCertificate {
            declared_faces: 4,
            rotation: [
                (0, vec![1, 2, 3]),
                (1, vec![0, 2, 3]),
                (2, vec![0, 1, 3]),
                (3, vec![0, 1, 2]),
            ]
            .into_iter()
            .collect(),
        };
        match cert.check(&g) {
            Err(EmbedError::EulerMismatch { .. }) | Err(EmbedError::FaceCountMismatch { .. }) => {}
            other => panic!("expected Euler failure, got {:?}", other),
        }
    }

    #[test]
    fn disconnected_graph_rejected() {
        let g = Graph::build(vec![(0, None), (1, None)], vec![]).unwrap();
        let cert = EmbeddingCertificate {
            declared_faces: 1,
            rotation: [(0, vec![]), (1, vec![])].into_iter().collect(),
        };
        assert_eq!(cert.check(&g).unwrap_err(), EmbedError::Disconnected);
    }

    #[test]
    fn json_round_trip() {
        let g = cycle(4);
        let cert = cycle_certificate(&g);
        let back = EmbeddingCertificate::from_json(&cert.to_json()).unwrap();
        assert_eq!(cert, back);
    }
}
