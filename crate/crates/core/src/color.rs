//! Block-structured color universes, the adversarial block-union list
//! assignment on the gadget roles, and an independent coloring checker that
//! doubles as the oracle for every solver witness.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::Ratio;
use serde_json::{json, Value};
use thiserror::Error;

use crate::graph::{Graph, VertexId};

pub type Rat = Ratio<i64>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ColorError {
    #[error("duplicate block name {0:?}")]
    DuplicateBlock(String),
    #[error("bad block name {0:?} (must be nonempty, without ':')")]
    BadBlockName(String),
    #[error("m must be >= 1")]
    ZeroM,
    #[error("color {0:?} is not in the universe")]
    UnknownColor(String),
    #[error("cannot parse color {0:?} (expected BLOCK:index)")]
    BadColorSyntax(String),
    #[error("vertex {0} has no list")]
    MissingList(String),
    #[error("list key {0:?} does not name a vertex of the graph")]
    UnknownVertexKey(String),
    #[error("graph is missing role {0:?}")]
    MissingRole(String),
    #[error("malformed list-assignment JSON: {0}")]
    BadJson(String),
}

/// A color is an index into one of the universe's named blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Color {
    pub block: u16,
    pub index: u32,
}

pub type ColorSet = BTreeSet<Color>;

#[derive(Debug, Clone, PartialEq, Eq)]
struct Block {
    name: String,
    size: u32,
}

/// Disjoint named color blocks; all colors of an instance live in one
/// universe and render as `"NAME:index"`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorUniverse {
    blocks: Vec<Block>,
}

impl ColorUniverse {
    pub fn build(spec: &[(&str, u32)]) -> Result<ColorUniverse, ColorError> {
        let mut seen = BTreeSet::new();
        let mut blocks = Vec::with_capacity(spec.len());
        for (name, size) in spec {
            if name.is_empty() || name.contains(':') {
                return Err(ColorError::BadBlockName(name.to_string()));
            }
            if !seen.insert(*name) {
                return Err(ColorError::DuplicateBlock(name.to_string()));
            }
            blocks.push(Block {
                name: name.to_string(),
                size: *size,
            });
        }
        Ok(ColorUniverse { blocks })
    }

    pub fn block_count(&self) -> u16 {
        self.blocks.len() as u16
    }

    pub fn block_name(&self, block: u16) -> &str {
        &self.blocks[block as usize].name
    }

    pub fn block_size(&self, block: u16) -> u32 {
        self.blocks[block as usize].size
    }

    pub fn block_by_name(&self, name: &str) -> Option<u16> {
        self.blocks
            .iter()
            .position(|b| b.name == name)
            .map(|i| i as u16)
    }

    pub fn total_colors(&self) -> u64 {
        self.blocks.iter().map(|b| b.size as u64).sum()
    }

    pub fn contains(&self, c: Color) -> bool {
        (c.block as usize) < self.blocks.len() && c.index < self.blocks[c.block as usize].size
    }

    /// All colors of one block, ascending index.
    pub fn block_colors(&self, block: u16) -> impl Iterator<Item = Color> + '_ {
        (0..self.block_size(block)).map(move |index| Color { block, index })
    }

    /// All colors, block-major order.
    pub fn colors(&self) -> impl Iterator<Item = Color> + '_ {
        (0..self.block_count()).flat_map(move |b| self.block_colors(b))
    }

    pub fn color_str(&self, c: Color) -> String {
        format!("{}:{}", self.block_name(c.block), c.index)
    }

    pub fn parse_color(&self, text: &str) -> Result<Color, ColorError> {
        let (name, idx) = text
            .rsplit_once(':')
            .ok_or_else(|| ColorError::BadColorSyntax(text.to_string()))?;
        let index: u32 = idx
            .parse()
            .map_err(|_| ColorError::BadColorSyntax(text.to_string()))?;
        let block = self
            .block_by_name(name)
            .ok_or_else(|| ColorError::UnknownColor(text.to_string()))?;
        let c = Color { block, index };
        if !self.contains(c) {
            return Err(ColorError::UnknownColor(text.to_string()));
        }
        Ok(c)
    }

    fn to_json_value(&self) -> Value {
        Value::Array(
            self.blocks
                .iter()
                .map(|b| json!({"name": b.name, "size": b.size}))
                .collect(),
        )
    }

    fn from_json_value(v: &Value) -> Result<ColorUniverse, ColorError> {
        let arr = v
            .as_array()
            .ok_or_else(|| ColorError::BadJson("universe must be an array".into()))?;
        let mut spec = Vec::new();
        for item in arr {
            let name = item["name"]
                .as_str()
                .ok_or_else(|| ColorError::BadJson("block name must be a string".into()))?;
            let size = item["size"]
                .as_u64()
                .ok_or_else(|| ColorError::BadJson("block size must be an integer".into()))?;
            spec.push((name.to_string(), size as u32));
        }
        let borrowed: Vec<(&str, u32)> = spec.iter().map(|(n, s)| (n.as_str(), *s)).collect();
        ColorUniverse::build(&borrowed)
    }
}

/// The (m, ε) parameter pair. `e_size` is the exact integer εm; epsilon is
/// only ever materialized as a rational, never a float.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FoldParams {
    pub m: u32,
    pub e_size: u32,
}

impl FoldParams {
    /// Default law: e = ⌈m/17⌉ − 1, which always satisfies 17e < m.
    pub fn standard(m: u32) -> Result<FoldParams, ColorError> {
        if m == 0 {
            return Err(ColorError::ZeroM);
        }
        let e_size = m.div_ceil(17) - 1;
        debug_assert!(17 * e_size < m);
        Ok(FoldParams { m, e_size })
    }

    /// Override the E-block size (used for the ⌈m/17⌉ satisfiable variant).
    pub fn with_e(m: u32, e_size: u32) -> Result<FoldParams, ColorError> {
        if m == 0 {
            return Err(ColorError::ZeroM);
        }
        Ok(FoldParams { m, e_size })
    }

    /// The E-size that flips the instance satisfiable: ⌈m/17⌉.
    pub fn satisfiable_e(m: u32) -> u32 {
        m.div_ceil(17)
    }

    pub fn epsilon(&self) -> Rat {
        Ratio::new(self.e_size as i64, self.m as i64)
    }

    /// List size off the two anchor vertices: 3m + e.
    pub fn list_size(&self) -> u32 {
        3 * self.m + self.e_size
    }
}

pub const BLOCK_A: u16 = 0;
pub const BLOCK_B: u16 = 1;
pub const BLOCK_C: u16 = 2;
pub const BLOCK_D: u16 = 3;
pub const BLOCK_E: u16 = 4;

/// The five-block universe |A|=|B|=|C|=m, |D|=2m, |E|=e.
pub fn block_universe(params: FoldParams) -> ColorUniverse {
    let m = params.m;
    ColorUniverse::build(&[
        ("A", m),
        ("B", m),
        ("C", m),
        ("D", 2 * m),
        ("E", params.e_size),
    ])
    .expect("fixed block names are valid")
}

/// Which blocks each gadget role draws from, in role-id order.
pub const ROLE_BLOCKS: [(&str, &[u16]); 16] = [
    ("u", &[BLOCK_A]),
    ("v", &[BLOCK_B]),
    ("x1", &[BLOCK_A, BLOCK_B, BLOCK_C, BLOCK_E]),
    ("x2", &[BLOCK_A, BLOCK_B, BLOCK_C, BLOCK_E]),
    ("x3", &[BLOCK_A, BLOCK_B, BLOCK_C, BLOCK_E]),
    ("w", &[BLOCK_A, BLOCK_B, BLOCK_C, BLOCK_E]),
    ("y1", &[BLOCK_A, BLOCK_D, BLOCK_E]),
    ("y2", &[BLOCK_C, BLOCK_D, BLOCK_E]),
    ("y3", &[BLOCK_A, BLOCK_D, BLOCK_E]),
    ("y4", &[BLOCK_B, BLOCK_D, BLOCK_E]),
    ("y5", &[BLOCK_C, BLOCK_D, BLOCK_E]),
    ("z1", &[BLOCK_B, BLOCK_D, BLOCK_E]),
    ("z2", &[BLOCK_C, BLOCK_D, BLOCK_E]),
    ("z3", &[BLOCK_B, BLOCK_D, BLOCK_E]),
    ("z4", &[BLOCK_C, BLOCK_D, BLOCK_E]),
    ("z5", &[BLOCK_A, BLOCK_D, BLOCK_E]),
];

/// The adversarial block-union lists on the 16 gadget roles. The anchor
/// lists are single blocks (`u` from A, `v` from B); every other list has
/// size 3m + e.
pub fn block_lists(g: &Graph, params: FoldParams) -> Result<ListAssignment, ColorError> {
    let universe = block_universe(params);
    let mut assignment = ListAssignment::new(universe);
    for (role, blocks) in ROLE_BLOCKS {
        let v = g
            .vertex_by_role(role)
            .ok_or_else(|| ColorError::MissingRole(role.to_string()))?;
        let set: ColorSet = blocks
            .iter()
            .flat_map(|&b| assignment.universe.block_colors(b))
            .collect();
        assignment.insert(v, set)?;
    }
    Ok(assignment)
}

/// Per-vertex permissible color sets over one universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ListAssignment {
    universe: ColorUniverse,
    lists: BTreeMap<VertexId, ColorSet>,
}

impl ListAssignment {
    pub fn new(universe: ColorUniverse) -> ListAssignment {
        ListAssignment {
            universe,
            lists: BTreeMap::new(),
        }
    }

    pub fn universe(&self) -> &ColorUniverse {
        &self.universe
    }

    pub fn insert(&mut self, v: VertexId, set: ColorSet) -> Result<(), ColorError> {
        for &c in &set {
            if !self.universe.contains(c) {
                return Err(ColorError::UnknownColor(format!(
                    "(block {}, index {})",
                    c.block, c.index
                )));
            }
        }
        self.lists.insert(v, set);
        Ok(())
    }

    pub fn get(&self, v: VertexId) -> Option<&ColorSet> {
        self.lists.get(&v)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.lists.keys().copied()
    }

    /// Every vertex of `g` must have a list.
    pub fn complete_for(&self, g: &Graph) -> Result<(), ColorError> {
        for &v in g.vertex_ids() {
            if !self.lists.contains_key(&v) {
                return Err(ColorError::MissingList(g.vertex_name(v)));
            }
        }
        Ok(())
    }

    /// Apply a color bijection to every list (assignment-level relabeling).
    pub fn map_colors(&self, f: impl Fn(Color) -> Color) -> ListAssignment {
        ListAssignment {
            universe: self.universe.clone(),
            lists: self
                .lists
                .iter()
                .map(|(&v, set)| (v, set.iter().map(|&c| f(c)).collect()))
                .collect(),
        }
    }

    /// Restriction to a vertex subset.
    pub fn restricted(&self, keep: &BTreeSet<VertexId>) -> ListAssignment {
        ListAssignment {
            universe: self.universe.clone(),
            lists: self
                .lists
                .iter()
                .filter(|(v, _)| keep.contains(v))
                .map(|(&v, set)| (v, set.clone()))
                .collect(),
        }
    }

    /// Schema: `{"universe": [{"name","size"}...], "lists": {key: ["A:0",...]}}`
    /// where `key` is the vertex role when the graph has one, else the id.
    pub fn to_json(&self, g: &Graph) -> String {
        let mut lists = serde_json::Map::new();
        for (&v, set) in &self.lists {
            let key = g.vertex_name(v);
            let vals: Vec<Value> = set
                .iter()
                .map(|&c| Value::String(self.universe.color_str(c)))
                .collect();
            lists.insert(key, Value::Array(vals));
        }
        let doc = json!({
            "universe": self.universe.to_json_value(),
            "lists": Value::Object(lists),
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("list serialization");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str, g: &Graph) -> Result<ListAssignment, ColorError> {
        let doc: Value =
            serde_json::from_str(text).map_err(|e| ColorError::BadJson(e.to_string()))?;
        let universe = ColorUniverse::from_json_value(&doc["universe"])?;
        let mut out = ListAssignment::new(universe);
        let lists = doc["lists"]
            .as_object()
            .ok_or_else(|| ColorError::BadJson("lists must be an object".into()))?;
        for (key, arr) in lists {
            let v = resolve_vertex_key(g, key)?;
            let arr = arr
                .as_array()
                .ok_or_else(|| ColorError::BadJson("each list must be an array".into()))?;
            let mut set = ColorSet::new();
            for item in arr {
                let s = item
                    .as_str()
                    .ok_or_else(|| ColorError::BadJson("colors must be strings".into()))?;
                set.insert(out.universe.parse_color(s)?);
            }
            out.lists.insert(v, set);
        }
        Ok(out)
    }
}

fn resolve_vertex_key(g: &Graph, key: &str) -> Result<VertexId, ColorError> {
    if let Some(v) = g.vertex_by_role(key) {
        return Ok(v);
    }
    if let Ok(id) = key.parse::<VertexId>() {
        if g.index_of(id).is_some() {
            return Ok(id);
        }
    }
    Err(ColorError::UnknownVertexKey(key.to_string()))
}

/// A b-fold coloring candidate: each covered vertex carries a set of
/// exactly b colors (validity is `verify_coloring`'s business).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiColoring {
    pub b: u32,
    pub phi: BTreeMap<VertexId, ColorSet>,
}

impl MultiColoring {
    pub fn new(b: u32) -> MultiColoring {
        MultiColoring {
            b,
            phi: BTreeMap::new(),
        }
    }

    pub fn get(&self, v: VertexId) -> Option<&ColorSet> {
        self.phi.get(&v)
    }

    pub fn domain(&self) -> BTreeSet<VertexId> {
        self.phi.keys().copied().collect()
    }

    pub fn map_colors(&self, f: impl Fn(Color) -> Color) -> MultiColoring {
        MultiColoring {
            b: self.b,
            phi: self
                .phi
                .iter()
                .map(|(&v, set)| (v, set.iter().map(|&c| f(c)).collect()))
                .collect(),
        }
    }

    pub fn to_json_value(&self, g: &Graph, universe: &ColorUniverse) -> Value {
        let mut phi = serde_json::Map::new();
        for (&v, set) in &self.phi {
            let vals: Vec<Value> = set
                .iter()
                .map(|&c| Value::String(universe.color_str(c)))
                .collect();
            phi.insert(g.vertex_name(v), Value::Array(vals));
        }
        json!({"b": self.b, "phi": Value::Object(phi)})
    }

    pub fn from_json_value(
        v: &Value,
        g: &Graph,
        universe: &ColorUniverse,
    ) -> Result<MultiColoring, ColorError> {
        let b = v["b"]
            .as_u64()
            .ok_or_else(|| ColorError::BadJson("b must be an integer".into()))? as u32;
        let mut out = MultiColoring::new(b);
        let phi = v["phi"]
            .as_object()
            .ok_or_else(|| ColorError::BadJson("phi must be an object".into()))?;
        for (key, arr) in phi {
            let vid = resolve_vertex_key(g, key)?;
            let arr = arr
                .as_array()
                .ok_or_else(|| ColorError::BadJson("phi values must be arrays".into()))?;
            let mut set = ColorSet::new();
            for item in arr {
                let s = item
                    .as_str()
                    .ok_or_else(|| ColorError::BadJson("colors must be strings".into()))?;
                set.insert(universe.parse_color(s)?);
            }
            out.phi.insert(vid, set);
        }
        Ok(out)
    }
}

/// Why a candidate coloring was rejected. Rejection is a value, not an
/// error: the checker itself never fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    MissingVertex { vertex: String },
    WrongSetSize { vertex: String, got: usize, want: u32 },
    ColorOutsideList { vertex: String, color: String },
    AdjacentShare { a: String, b: String, color: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MissingVertex { vertex } => {
                write!(f, "vertex {vertex} has no color set")
            }
            Violation::WrongSetSize { vertex, got, want } => {
                write!(f, "vertex {vertex} has {got} colors, expected {want}")
            }
            Violation::ColorOutsideList { vertex, color } => {
                write!(f, "vertex {vertex} uses {color} outside its list")
            }
            Violation::AdjacentShare { a, b, color } => {
                write!(f, "adjacent vertices {a} and {b} share {color}")
            }
        }
    }
}

/// Accepts iff every vertex of `g` carries exactly b colors from its list
/// and adjacent sets are disjoint. Reports the first violated constraint in
/// a fixed scan order (vertices ascending, then edges ascending).
pub fn verify_coloring(
    g: &Graph,
    lists: &ListAssignment,
    phi: &MultiColoring,
) -> Result<(), Violation> {
    let all: BTreeSet<VertexId> = g.vertex_ids().iter().copied().collect();
    verify_coloring_on(g, lists, phi, &all)
}

/// Same checks restricted to a vertex subset; edges with an endpoint
/// outside the domain are ignored. Used for partial-coloring audits.
pub fn verify_coloring_on(
    g: &Graph,
    lists: &ListAssignment,
    phi: &MultiColoring,
    domain: &BTreeSet<VertexId>,
) -> Result<(), Violation> {
    for &v in domain {
        let name = g.vertex_name(v);
        let set = phi.get(v).ok_or(Violation::MissingVertex {
            vertex: name.clone(),
        })?;
        if set.len() != phi.b as usize {
            return Err(Violation::WrongSetSize {
                vertex: name,
                got: set.len(),
                want: phi.b,
            });
        }
        let list = lists.get(v).unwrap_or(&EMPTY_SET);
        for &c in set {
            if !list.contains(&c) {
                return Err(Violation::ColorOutsideList {
                    vertex: name,
                    color: lists.universe().color_str(c),
                });
            }
        }
    }
    for &(a, b) in g.edges() {
        if !domain.contains(&a) || !domain.contains(&b) {
            continue;
        }
        let (sa, sb) = (&phi.phi[&a], &phi.phi[&b]);
        if let Some(&shared) = sa.intersection(sb).next() {
            return Err(Violation::AdjacentShare {
                a: g.vertex_name(a),
                b: g.vertex_name(b),
                color: lists.universe().color_str(shared),
            });
        }
    }
    Ok(())
}

static EMPTY_SET: ColorSet = ColorSet::new();

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn two_color_universe() -> ColorUniverse {
        ColorUniverse::build(&[("K", 2)]).unwrap()
    }

    #[test]
    fn universe_construction() {
        let u = ColorUniverse::build(&[("A", 1), ("B", 1), ("C", 1), ("D", 2), ("E", 0)]).unwrap();
        assert_eq!(u.total_colors(), 5);
        assert_eq!(u.block_by_name("D"), Some(3));
        assert_eq!(u.colors().count(), 5);

        let u2 = ColorUniverse::build(&[]).unwrap();
        assert_eq!(u2.total_colors(), 0);

        let u3 = ColorUniverse::build(&[("A", 2), ("B", 2), ("C", 2), ("D", 4), ("E", 0)]).unwrap();
        assert_eq!(u3.total_colors(), 10);

        assert_eq!(
            ColorUniverse::build(&[("A", 1), ("A", 2)]).unwrap_err(),
            ColorError::DuplicateBlock("A".into())
        );
        assert!(ColorUniverse::build(&[("A:B", 1)]).is_err());
    }

    #[test]
    fn color_string_round_trip() {
        let u = ColorUniverse::build(&[("A", 3), ("D", 2)]).unwrap();
        for c in u.colors() {
            assert_eq!(u.parse_color(&u.color_str(c)).unwrap(), c);
        }
        assert!(u.parse_color("A:9").is_err());
        assert!(u.parse_color("Q:0").is_err());
        assert!(u.parse_color("A").is_err());
    }

    #[test]
    fn fold_params_law() {
        assert_eq!(FoldParams::standard(1).unwrap().e_size, 0);
        assert_eq!(FoldParams::standard(17).unwrap().e_size, 0);
        assert_eq!(FoldParams::standard(18).unwrap().e_size, 1);
        assert_eq!(FoldParams::standard(34).unwrap().e_size, 1);
        assert_eq!(FoldParams::standard(35).unwrap().e_size, 2);
        assert_eq!(FoldParams::standard(0).unwrap_err(), ColorError::ZeroM);
        assert_eq!(FoldParams::satisfiable_e(1), 1);
        assert_eq!(FoldParams::satisfiable_e(17), 1);
        assert_eq!(FoldParams::satisfiable_e(18), 2);

        let p = FoldParams::standard(18).unwrap();
        assert_eq!(p.epsilon(), Ratio::new(1, 18));
        assert_eq!(p.list_size(), 55);
    }

    fn mini_graph() -> Graph {
        Graph::build(vec![(0, None), (1, None)], vec![(0, 1)]).unwrap()
    }

    #[test]
    fn verify_accepts_and_rejects() {
        let g = mini_graph();
        let u = two_color_universe();
        let c0 = Color { block: 0, index: 0 };
        let c1 = Color { block: 0, index: 1 };
        let mut lists = ListAssignment::new(u);
        lists.insert(0, [c0, c1].into()).unwrap();
        lists.insert(1, [c0, c1].into()).unwrap();

        let mut phi = MultiColoring::new(1);
        phi.phi.insert(0, [c0].into());
        phi.phi.insert(1, [c1].into());
        assert_eq!(verify_coloring(&g, &lists, &phi), Ok(()));

        // same color on both endpoints
        phi.phi.insert(1, [c0].into());
        assert!(matches!(
            verify_coloring(&g, &lists, &phi),
            Err(Violation::AdjacentShare { .. })
        ));

        // wrong set size
        phi.phi.insert(1, [c0, c1].into());
        assert!(matches!(
            verify_coloring(&g, &lists, &phi),
            Err(Violation::WrongSetSize { .. })
        ));

        // missing vertex
        phi.phi.remove(&1);
        assert!(matches!(
            verify_coloring(&g, &lists, &phi),
            Err(Violation::MissingVertex { .. })
        ));
    }

    #[test]
    fn single_vertex_b2_accepts() {
        let g = Graph::build(vec![(0, None)], vec![]).unwrap();
        let u = two_color_universe();
        let c0 = Color { block: 0, index: 0 };
        let c1 = Color { block: 0, index: 1 };
        let mut lists = ListAssignment::new(u);
        lists.insert(0, [c0, c1].into()).unwrap();
        let mut phi = MultiColoring::new(2);
        phi.phi.insert(0, [c0, c1].into());
        assert_eq!(verify_coloring(&g, &lists, &phi), Ok(()));
    }

    #[test]
    fn out_of_list_color_rejected() {
        let g = mini_graph();
        let u = ColorUniverse::build(&[("K", 3)]).unwrap();
        let mut lists = ListAssignment::new(u);
        lists.insert(0, [Color { block: 0, index: 0 }].into()).unwrap();
        lists.insert(1, [Color { block: 0, index: 1 }].into()).unwrap();
        let mut phi = MultiColoring::new(1);
        phi.phi.insert(0, [Color { block: 0, index: 2 }].into());
        phi.phi.insert(1, [Color { block: 0, index: 1 }].into());
        assert!(matches!(
            verify_coloring(&g, &lists, &phi),
            Err(Violation::ColorOutsideList { .. })
        ));
    }

    #[test]
    fn list_json_round_trip() {
        let g = Graph::build(
            vec![(0, Some("u".into())), (1, None)],
            vec![(0, 1)],
        )
        .unwrap();
        let u = ColorUniverse::build(&[("A", 2), ("B", 1)]).unwrap();
        let mut lists = ListAssignment::new(u);
        lists
            .insert(0, [Color { block: 0, index: 0 }, Color { block: 1, index: 0 }].into())
            .unwrap();
        lists.insert(1, [Color { block: 0, index: 1 }].into()).unwrap();
        let text = lists.to_json(&g);
        assert!(text.contains("\"u\""));
        assert!(text.contains("\"1\""));
        let back = ListAssignment::from_json(&text, &g).unwrap();
        assert_eq!(lists, back);
        assert_eq!(text, back.to_json(&g));
    }

    #[test]
    fn coloring_json_round_trip() {
        let g = mini_graph();
        let u = two_color_universe();
        let mut phi = MultiColoring::new(1);
        phi.phi.insert(0, [Color { block: 0, index: 0 }].into());
        phi.phi.insert(1, [Color { block: 0, index: 1 }].into());
        let v = phi.to_json_value(&g, &u);
        let back = MultiColoring::from_json_value(&v, &g, &u).unwrap();
        assert_eq!(phi, back);
    }
}
