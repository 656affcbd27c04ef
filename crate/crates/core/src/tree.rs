//! Finite rooted non-planar trees with named edges.
//!
//! A tree is a root edge together with, on top of each edge, either nothing
//! (a leaf) or a vertex carrying a finite unordered collection of input
//! edges. A vertex with no inputs (written `e()` in the literal grammar) is
//! distinct from a leaf (written `e`).
//!
//! The literal grammar is
//!
//! ```text
//! tree := edge [ "(" tree ("," tree)* ")" ]
//! ```
//!
//! so `"r"` is the one-edge tree, `"r(a,b)"` the 2-corolla and `"r(a(x),b())"`
//! a three-vertex tree with a nullary vertex on `b`.
//!
//! Children are stored in parse order but carry no meaning: all structural
//! comparisons go through canonical codes or explicit edge bijections.

use std::collections::BTreeMap;
use std::fmt;

use crate::{Error, Result};

/// Index of an edge within a fixed [`Tree`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub(crate) usize);

/// Index of a vertex within a fixed [`Tree`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub(crate) usize);

impl EdgeId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct VertexData {
    output: EdgeId,
    inputs: Vec<EdgeId>,
}

/// A finite rooted non-planar tree with pairwise distinct edge names.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tree {
    edge_names: Vec<String>,
    root: EdgeId,
    vertices: Vec<VertexData>,
    /// Vertex whose output is this edge (`None` for a leaf).
    edge_top: Vec<Option<VertexId>>,
    /// Vertex having this edge among its inputs (`None` for the root).
    edge_bottom: Vec<Option<VertexId>>,
}

/// Recursive builder node used by the parser and the enumerators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct RawNode {
    pub name: String,
    /// `None` = leaf; `Some(children)` = vertex (possibly nullary).
    pub children: Option<Vec<RawNode>>,
}

impl Tree {
    pub(crate) fn from_raw(raw: &RawNode) -> Result<Tree> {
        let mut tree = Tree {
            edge_names: Vec::new(),
            root: EdgeId(0),
            vertices: Vec::new(),
            edge_top: Vec::new(),
            edge_bottom: Vec::new(),
        };
        let mut seen = BTreeMap::new();
        tree.root = tree.add_raw(raw, None, &mut seen)?;
        Ok(tree)
    }

    fn add_raw(
        &mut self,
        raw: &RawNode,
        below: Option<VertexId>,
        seen: &mut BTreeMap<String, ()>,
    ) -> Result<EdgeId> {
        if seen.insert(raw.name.clone(), ()).is_some() {
            return Err(Error::DuplicateEdge(raw.name.clone()));
        }
        let edge = EdgeId(self.edge_names.len());
        self.edge_names.push(raw.name.clone());
        self.edge_top.push(None);
        self.edge_bottom.push(below);
        if let Some(children) = &raw.children {
            let vertex = VertexId(self.vertices.len());
            self.vertices.push(VertexData {
                output: edge,
                inputs: Vec::new(),
            });
            self.edge_top[edge.0] = Some(vertex);
            for child in children {
                let input = self.add_raw(child, Some(vertex), seen)?;
                self.vertices[vertex.0].inputs.push(input);
            }
        }
        Ok(edge)
    }

    /// Parses a tree literal. Reports the byte position of syntax errors.
    pub fn parse(literal: &str) -> Result<Tree> {
        let mut parser = Parser {
            input: literal.as_bytes(),
            pos: 0,
        };
        let raw = parser.tree()?;
        parser.skip_ws();
        if parser.pos != parser.input.len() {
            return Err(Error::Parse {
                position: parser.pos,
                message: "trailing input after tree".into(),
            });
        }
        Tree::from_raw(&raw)
    }

    /// The one-edge tree η, root edge named `"0"`.
    pub fn eta() -> Tree {
        Tree::parse("0").expect("eta literal")
    }

    /// The corolla with one vertex and `n` leaves; root `"0"`, leaves `"1"..="n"`.
    pub fn corolla(n: usize) -> Tree {
        let children = (1..=n)
            .map(|i| RawNode {
                name: i.to_string(),
                children: None,
            })
            .collect();
        Tree::from_raw(&RawNode {
            name: "0".into(),
            children: Some(children),
        })
        .expect("corolla")
    }

    /// The linear tree with `n` vertices and `n + 1` edges, input edge named
    /// `"0"` and root edge named `"n"`.
    pub fn linear(n: usize) -> Tree {
        let mut node = RawNode {
            name: "0".into(),
            children: None,
        };
        for i in 1..=n {
            node = RawNode {
                name: i.to_string(),
                children: Some(vec![node]),
            };
        }
        Tree::from_raw(&node).expect("linear")
    }

    pub fn edge_count(&self) -> usize {
        self.edge_names.len()
    }

    /// Number of vertices, written |T|.
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn root(&self) -> EdgeId {
        self.root
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edge_names.len()).map(EdgeId)
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edge_names[e.0]
    }

    pub fn edge_by_name(&self, name: &str) -> Result<EdgeId> {
        self.edge_names
            .iter()
            .position(|n| n == name)
            .map(EdgeId)
            .ok_or_else(|| Error::UnknownEdge(name.into()))
    }

    /// Vertex on top of the edge, if any.
    pub fn top(&self, e: EdgeId) -> Option<VertexId> {
        self.edge_top[e.0]
    }

    /// Vertex below the edge (having it as an input), if any.
    pub fn bottom(&self, e: EdgeId) -> Option<VertexId> {
        self.edge_bottom[e.0]
    }

    pub fn output(&self, v: VertexId) -> EdgeId {
        self.vertices[v.0].output
    }

    pub fn inputs(&self, v: VertexId) -> &[EdgeId] {
        &self.vertices[v.0].inputs
    }

    /// Arity n(v): the number of input edges of the vertex.
    pub fn arity(&self, v: VertexId) -> usize {
        self.vertices[v.0].inputs.len()
    }

    /// Largest vertex arity in the tree (0 for η).
    pub fn max_arity(&self) -> usize {
        self.vertex_ids().map(|v| self.arity(v)).max().unwrap_or(0)
    }

    pub fn is_leaf(&self, e: EdgeId) -> bool {
        self.edge_top[e.0].is_none()
    }

    /// An edge is inner when it joins two vertices.
    pub fn is_inner(&self, e: EdgeId) -> bool {
        self.edge_top[e.0].is_some() && self.edge_bottom[e.0].is_some()
    }

    pub fn inner_edges(&self) -> Vec<EdgeId> {
        self.edges().filter(|&e| self.is_inner(e)).collect()
    }

    pub fn leaf_edges(&self) -> Vec<EdgeId> {
        self.edges().filter(|&e| self.is_leaf(e)).collect()
    }

    /// Vertices are named by their output edge (which determines them).
    pub fn vertex_name(&self, v: VertexId) -> &str {
        self.edge_name(self.output(v))
    }

    pub fn vertex_by_name(&self, name: &str) -> Result<VertexId> {
        let e = self.edge_by_name(name)?;
        self.top(e)
            .ok_or_else(|| Error::InvalidFace(format!("edge `{name}` carries no vertex")))
    }

    /// Renders the tree in the literal grammar, children in stored order.
    pub fn literal(&self) -> String {
        let mut out = String::new();
        self.write_edge(self.root, &mut out);
        out
    }

    fn write_edge(&self, e: EdgeId, out: &mut String) {
        out.push_str(&self.edge_names[e.0]);
        if let Some(v) = self.edge_top[e.0] {
            out.push('(');
            for (i, &input) in self.vertices[v.0].inputs.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                self.write_edge(input, out);
            }
            out.push(')');
        }
    }

    /// Isomorphism-invariant code of the subtree above each edge.
    pub(crate) fn edge_codes(&self) -> Vec<String> {
        let mut codes = vec![String::new(); self.edge_count()];
        self.fill_code(self.root, &mut codes);
        codes
    }

    fn fill_code(&self, e: EdgeId, codes: &mut Vec<String>) {
        match self.edge_top[e.0] {
            None => codes[e.0].push('l'),
            Some(v) => {
                let mut children: Vec<String> = self.vertices[v.0]
                    .inputs
                    .iter()
                    .map(|&c| {
                        self.fill_code(c, codes);
                        codes[c.0].clone()
                    })
                    .collect();
                children.sort();
                codes[e.0] = format!("({})", children.concat());
            }
        }
    }

    /// Canonicalizes the tree: children sorted by code, edges renamed
    /// breadth-first starting from `"0"` at the root.
    pub fn canonicalize(&self) -> CanonicalKey {
        let codes = self.edge_codes();
        // Breadth-first walk with children in sorted code order.
        let mut order: Vec<EdgeId> = Vec::with_capacity(self.edge_count());
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(self.root);
        while let Some(e) = queue.pop_front() {
            order.push(e);
            if let Some(v) = self.edge_top[e.0] {
                let mut children = self.vertices[v.0].inputs.clone();
                children.sort_by(|a, b| codes[a.0].cmp(&codes[b.0]));
                for c in children {
                    queue.push_back(c);
                }
            }
        }
        let mut canonical_name = vec![String::new(); self.edge_count()];
        for (i, e) in order.iter().enumerate() {
            canonical_name[e.0] = i.to_string();
        }
        let raw = self.canonical_raw(self.root, &codes, &canonical_name);
        let canonical = Tree::from_raw(&raw).expect("canonical names are distinct");
        let relabel = self
            .edges()
            .map(|e| (self.edge_names[e.0].clone(), canonical_name[e.0].clone()))
            .collect();
        CanonicalKey { canonical, relabel }
    }

    fn canonical_raw(&self, e: EdgeId, codes: &[String], names: &[String]) -> RawNode {
        let children = self.edge_top[e.0].map(|v| {
            let mut inputs = self.vertices[v.0].inputs.clone();
            inputs.sort_by(|a, b| codes[a.0].cmp(&codes[b.0]));
            inputs
                .iter()
                .map(|&c| self.canonical_raw(c, codes, names))
                .collect()
        });
        RawNode {
            name: names[e.0].clone(),
            children,
        }
    }

    /// All isomorphisms from `self` to `other`, as edge maps indexed by this
    /// tree's edge ids. Empty iff the trees are not isomorphic.
    pub fn isomorphisms_to(&self, other: &Tree) -> Vec<Vec<EdgeId>> {
        if self.edge_count() != other.edge_count() || self.vertex_count() != other.vertex_count() {
            return Vec::new();
        }
        let cs = self.edge_codes();
        let ct = other.edge_codes();
        let pairings = self.pair_edges(other, self.root, other.root, &cs, &ct);
        pairings
            .into_iter()
            .map(|pairs| {
                let mut map = vec![EdgeId(usize::MAX); self.edge_count()];
                for (a, b) in pairs {
                    map[a.0] = b;
                }
                map
            })
            .collect()
    }

    fn pair_edges(
        &self,
        other: &Tree,
        es: EdgeId,
        et: EdgeId,
        cs: &[String],
        ct: &[String],
    ) -> Vec<Vec<(EdgeId, EdgeId)>> {
        if cs[es.0] != ct[et.0] {
            return Vec::new();
        }
        match (self.edge_top[es.0], other.edge_top[et.0]) {
            (None, None) => vec![vec![(es, et)]],
            (Some(vs), Some(vt)) => {
                let s_children = &self.vertices[vs.0].inputs;
                let t_children = &other.vertices[vt.0].inputs;
                let mut results = Vec::new();
                let mut used = vec![false; t_children.len()];
                self.match_children(
                    other,
                    s_children,
                    t_children,
                    0,
                    &mut used,
                    &mut vec![(es, et)],
                    cs,
                    ct,
                    &mut results,
                );
                results
            }
            _ => Vec::new(),
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn match_children(
        &self,
        other: &Tree,
        s_children: &[EdgeId],
        t_children: &[EdgeId],
        k: usize,
        used: &mut Vec<bool>,
        acc: &mut Vec<(EdgeId, EdgeId)>,
        cs: &[String],
        ct: &[String],
        results: &mut Vec<Vec<(EdgeId, EdgeId)>>,
    ) {
        if k == s_children.len() {
            results.push(acc.clone());
            return;
        }
        let sc = s_children[k];
        for (j, &tc) in t_children.iter().enumerate() {
            if used[j] || cs[sc.0] != ct[tc.0] {
                continue;
            }
            for sub in self.pair_edges(other, sc, tc, cs, ct) {
                used[j] = true;
                let checkpoint = acc.len();
                acc.extend(sub);
                self.match_children(
                    other,
                    s_children,
                    t_children,
                    k + 1,
                    used,
                    acc,
                    cs,
                    ct,
                    results,
                );
                acc.truncate(checkpoint);
                used[j] = false;
            }
        }
    }

    /// The automorphism group as explicit edge bijections (contains the
    /// identity, closed under composition and inverse).
    pub fn automorphisms(&self) -> Vec<Vec<EdgeId>> {
        self.isomorphisms_to(self)
    }

    /// Renders an edge map out of this tree as a name → name table.
    pub fn render_edge_map(&self, other: &Tree, map: &[EdgeId]) -> BTreeMap<String, String> {
        self.edges()
            .map(|e| {
                (
                    self.edge_name(e).to_string(),
                    other.edge_name(map[e.0]).to_string(),
                )
            })
            .collect()
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.literal())
    }
}

/// Canonical representative of an isomorphism class, plus the relabeling that
/// carries the original tree onto it.
#[derive(Debug, Clone)]
pub struct CanonicalKey {
    canonical: Tree,
    relabel: BTreeMap<String, String>,
}

impl CanonicalKey {
    /// Stable text encoding: the literal of the canonical representative.
    pub fn key(&self) -> String {
        self.canonical.literal()
    }

    pub fn canonical_tree(&self) -> &Tree {
        &self.canonical
    }

    /// Original edge name → canonical edge name.
    pub fn relabel(&self) -> &BTreeMap<String, String> {
        &self.relabel
    }
}

impl PartialEq for CanonicalKey {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for CanonicalKey {}

impl PartialOrd for CanonicalKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CanonicalKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

struct Parser<'a> {
    input: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn tree(&mut self) -> Result<RawNode> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.input.len()
            && (self.input[self.pos].is_ascii_alphanumeric() || self.input[self.pos] == b'_')
        {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(Error::Parse {
                position: self.pos,
                message: "expected an edge name".into(),
            });
        }
        let name = std::str::from_utf8(&self.input[start..self.pos])
            .expect("ascii")
            .to_string();
        self.skip_ws();
        if self.pos < self.input.len() && self.input[self.pos] == b'(' {
            self.pos += 1;
            let mut children = Vec::new();
            self.skip_ws();
            if self.pos < self.input.len() && self.input[self.pos] == b')' {
                self.pos += 1;
            } else {
                loop {
                    children.push(self.tree()?);
                    self.skip_ws();
                    match self.input.get(self.pos) {
                        Some(b',') => {
                            self.pos += 1;
                        }
                        Some(b')') => {
                            self.pos += 1;
                            break;
                        }
                        _ => {
                            return Err(Error::Parse {
                                position: self.pos,
                                message: "expected `,` or `)`".into(),
                            })
                        }
                    }
                }
            }
            Ok(RawNode {
                name,
                children: Some(children),
            })
        } else {
            Ok(RawNode {
                name,
                children: None,
            })
        }
    }
}

/// Shape of a tree without edge names, children kept sorted by code.
#[derive(Clone)]
struct Shape {
    children: Option<Vec<Shape>>,
    code: String,
    vertex_count: usize,
}

impl Shape {
    fn leaf() -> Shape {
        Shape {
            children: None,
            code: "l".into(),
            vertex_count: 0,
        }
    }

    fn vertex(children: Vec<Shape>) -> Shape {
        let code = format!(
            "({})",
            children.iter().map(|c| c.code.as_str()).collect::<String>()
        );
        let vertex_count = 1 + children.iter().map(|c| c.vertex_count).sum::<usize>();
        Shape {
            children: Some(children),
            code,
            vertex_count,
        }
    }

    fn to_tree(&self) -> Tree {
        // Breadth-first canonical naming, matching Tree::canonicalize
        // (children are already stored in sorted code order).
        let mut lookup: BTreeMap<*const Shape, String> = BTreeMap::new();
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(self);
        let mut counter = 0usize;
        while let Some(shape) = queue.pop_front() {
            lookup.insert(shape as *const Shape, counter.to_string());
            counter += 1;
            if let Some(children) = &shape.children {
                for c in children {
                    queue.push_back(c);
                }
            }
        }
        fn rebuild(shape: &Shape, lookup: &BTreeMap<*const Shape, String>) -> RawNode {
            RawNode {
                name: lookup[&(shape as *const Shape)].clone(),
                children: shape
                    .children
                    .as_ref()
                    .map(|cs| cs.iter().map(|c| rebuild(c, lookup)).collect()),
            }
        }
        Tree::from_raw(&rebuild(self, &lookup)).expect("canonical names are distinct")
    }
}

/// Enumerates one canonical representative per isomorphism class of trees
/// with at most `max_vertices` vertices and every vertex arity at most
/// `max_arity`, in a deterministic order (vertex count, then code).
pub fn enumerate_trees(max_vertices: usize, max_arity: usize) -> Vec<Tree> {
    // Pool of shapes with exactly n vertices, built up by n.
    let mut by_count: Vec<Vec<Shape>> = vec![vec![Shape::leaf()]];
    for n in 1..=max_vertices {
        // Pool of all shapes with < n vertices, sorted by (count, code) —
        // the chooser below picks non-decreasing index sequences, which
        // enumerates each multiset of children exactly once.
        let pool: Vec<Shape> = by_count.iter().flatten().cloned().collect();
        let mut shapes = Vec::new();
        for arity in 0..=max_arity {
            let mut chosen: Vec<Shape> = Vec::new();
            choose_children(&pool, 0, arity, n - 1, &mut chosen, &mut shapes);
        }
        shapes.sort_by(|a, b| a.code.cmp(&b.code));
        shapes.dedup_by(|a, b| a.code == b.code);
        by_count.push(shapes);
    }
    let mut out = Vec::new();
    for shapes in &by_count {
        let mut sorted: Vec<&Shape> = shapes.iter().collect();
        sorted.sort_by(|a, b| a.code.cmp(&b.code));
        for s in sorted {
            out.push(s.to_tree());
        }
    }
    out
}

fn choose_children(
    pool: &[Shape],
    min_index: usize,
    slots: usize,
    budget: usize,
    chosen: &mut Vec<Shape>,
    out: &mut Vec<Shape>,
) {
    if slots == 0 {
        if budget == 0 {
            let mut children = chosen.clone();
            children.sort_by(|a, b| a.code.cmp(&b.code));
            out.push(Shape::vertex(children));
        }
        return;
    }
    for (i, shape) in pool.iter().enumerate().skip(min_index) {
        if shape.vertex_count > budget {
            continue;
        }
        chosen.push(shape.clone());
        choose_children(pool, i, slots - 1, budget - shape.vertex_count, chosen, out);
        chosen.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_eta() {
        let t = Tree::parse("r").unwrap();
        assert_eq!(t.vertex_count(), 0);
        assert_eq!(t.edge_count(), 1);
        assert_eq!(t.literal(), "r");
    }

    #[test]
    fn parse_corolla() {
        let t = Tree::parse("r(a,b)").unwrap();
        assert_eq!(t.vertex_count(), 1);
        assert_eq!(t.edge_count(), 3);
        assert_eq!(
            t.canonicalize().key(),
            Tree::corolla(2).canonicalize().key()
        );
    }

    #[test]
    fn parse_counts_nullary_vertices() {
        let t = Tree::parse("r(a(x,y),b())").unwrap();
        assert_eq!(t.vertex_count(), 3);
        assert_eq!(t.edge_count(), 5);
        let b = t.edge_by_name("b").unwrap();
        assert!(t.top(b).is_some());
        assert_eq!(t.arity(t.top(b).unwrap()), 0);
    }

    #[test]
    fn nullary_vertex_is_not_a_leaf() {
        let stump = Tree::parse("r()").unwrap();
        let leaf = Tree::parse("r").unwrap();
        assert_ne!(stump.canonicalize().key(), leaf.canonicalize().key());
        assert_eq!(stump.literal(), "r()");
        assert_eq!(Tree::parse(&stump.literal()).unwrap(), stump);
    }

    #[test]
    fn parse_errors_report_position() {
        match Tree::parse("r(a,") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 4),
            other => panic!("expected parse error, got {other:?}"),
        }
        match Tree::parse("r(a,a)") {
            Err(Error::DuplicateEdge(name)) => assert_eq!(name, "a"),
            other => panic!("expected duplicate edge, got {other:?}"),
        }
    }

    #[test]
    fn print_parse_round_trip() {
        for lit in ["r", "r()", "r(a,b)", "r(a(x,y),b())", "e2(e1(e0))"] {
            let t = Tree::parse(lit).unwrap();
            assert_eq!(Tree::parse(&t.literal()).unwrap(), t);
        }
    }

    #[test]
    fn canonicalize_ignores_child_order() {
        let a = Tree::parse("r(a,b(x))").unwrap();
        let b = Tree::parse("r(b(x),a)").unwrap();
        assert_eq!(a.canonicalize().key(), b.canonicalize().key());
    }

    #[test]
    fn canonicalize_is_idempotent() {
        let t = Tree::linear(3);
        let once = t.canonicalize();
        let twice = once.canonical_tree().canonicalize();
        assert_eq!(once.key(), twice.key());
        assert_eq!(once.canonical_tree(), twice.canonical_tree());
    }

    #[test]
    fn isomorphic_trees_share_keys() {
        let a = Tree::parse("r(a(x),b)").unwrap();
        let b = Tree::parse("r(a,b(x))").unwrap();
        assert_eq!(a.canonicalize().key(), b.canonicalize().key());
        // Oracle: exhibit an explicit edge bijection.
        let isos = a.isomorphisms_to(&b);
        assert!(!isos.is_empty());
        let map = &isos[0];
        // Structure preservation: roots correspond, leaves map to leaves.
        assert_eq!(map[a.root().index()], b.root());
        for e in a.edges() {
            assert_eq!(a.is_leaf(e), b.is_leaf(map[e.index()]));
        }
    }

    #[test]
    fn linear_trees_are_rigid() {
        for n in 0..=4 {
            assert_eq!(Tree::linear(n).automorphisms().len(), 1);
        }
    }

    #[test]
    fn corolla_automorphism_counts_are_factorials() {
        let mut factorial = 1;
        for n in 0..=4 {
            if n > 0 {
                factorial *= n;
            }
            assert_eq!(Tree::corolla(n).automorphisms().len(), factorial);
        }
    }

    #[test]
    fn two_level_binary_tree_has_eight_automorphisms() {
        let t = Tree::parse("r(a(x,y),b(u,v))").unwrap();
        assert_eq!(t.automorphisms().len(), 8);
    }

    #[test]
    fn automorphisms_form_a_group() {
        for t in enumerate_trees(4, 3) {
            let autos = t.automorphisms();
            let identity: Vec<EdgeId> = t.edges().collect();
            assert!(autos.contains(&identity));
            for a in &autos {
                // Inverse present.
                let mut inverse = vec![EdgeId(usize::MAX); a.len()];
                for (i, &img) in a.iter().enumerate() {
                    inverse[img.index()] = EdgeId(i);
                }
                assert!(autos.contains(&inverse));
                for b in &autos {
                    // Closure under composition.
                    let composite: Vec<EdgeId> = (0..a.len()).map(|i| b[a[i].index()]).collect();
                    assert!(autos.contains(&composite));
                }
            }
        }
    }

    #[test]
    fn enumerate_base_cases() {
        let only_eta = enumerate_trees(0, 3);
        assert_eq!(only_eta.len(), 1);
        assert_eq!(only_eta[0].vertex_count(), 0);

        let one_vertex = enumerate_trees(1, 2);
        assert_eq!(one_vertex.len(), 4); // η, C0, C1, C2
        for (t, expected) in one_vertex.iter().zip([0usize, 1, 1, 1]) {
            assert_eq!(t.vertex_count(), expected.min(1));
        }
    }

    #[test]
    fn enumerate_matches_generate_and_canonicalize_oracle() {
        // Independent oracle: generate all *ordered* trees by recursion,
        // canonicalize, dedup.
        fn ordered(max_vertices: usize, max_arity: usize) -> Vec<RawNode> {
            let mut out = vec![RawNode {
                name: String::new(),
                children: None,
            }];
            if max_vertices == 0 {
                return out;
            }
            for arity in 0..=max_arity {
                let mut partial: Vec<Vec<RawNode>> = vec![Vec::new()];
                for _ in 0..arity {
                    let mut next = Vec::new();
                    for prefix in &partial {
                        let used: usize = prefix.iter().map(count_vertices).sum();
                        for child in ordered(max_vertices - 1 - used, max_arity) {
                            if used + count_vertices(&child) < max_vertices {
                                let mut extended = prefix.clone();
                                extended.push(child);
                                next.push(extended);
                            }
                        }
                    }
                    partial = next;
                }
                for children in partial {
                    out.push(RawNode {
                        name: String::new(),
                        children: Some(children),
                    });
                }
            }
            out
        }
        fn count_vertices(raw: &RawNode) -> usize {
            match &raw.children {
                None => 0,
                Some(cs) => 1 + cs.iter().map(count_vertices).sum::<usize>(),
            }
        }
        fn assign_names(raw: &mut RawNode, next: &mut usize) {
            raw.name = format!("e{next}");
            *next += 1;
            if let Some(cs) = &mut raw.children {
                for c in cs {
                    assign_names(c, next);
                }
            }
        }

        for (max_v, max_a) in [(3, 2), (4, 3)] {
            let mut keys = std::collections::BTreeSet::new();
            for mut raw in ordered(max_v, max_a) {
                let mut counter = 0;
                assign_names(&mut raw, &mut counter);
                let tree = Tree::from_raw(&raw).unwrap();
                keys.insert(tree.canonicalize().key());
            }
            let enumerated = enumerate_trees(max_v, max_a);
            let enum_keys: std::collections::BTreeSet<String> =
                enumerated.iter().map(|t| t.canonicalize().key()).collect();
            assert_eq!(enum_keys.len(), enumerated.len(), "no duplicates");
            assert_eq!(enum_keys, keys);
        }
        assert_eq!(enumerate_trees(3, 2).len(), 28);
    }

    #[test]
    fn enumerated_trees_respect_bounds_and_are_canonical() {
        for t in enumerate_trees(4, 3) {
            assert!(t.vertex_count() <= 4);
            assert!(t.max_arity() <= 3);
            assert_eq!(t.canonicalize().key(), t.literal());
        }
    }
}
