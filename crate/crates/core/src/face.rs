//! Faces: monomorphisms into a fixed tree.
//!
//! A face of `T` is a pair `(subtree, contraction set)`: a subtree `F` of `T`
//! together with a set `D` of inner edges of `F` to contract. The pair stands
//! for the monomorphism `F/D → T`, taken up to precomposition with an
//! isomorphism of the domain. The domain `F/D` keeps the ambient edge names
//! of the surviving edges, which lets compositions be computed on names with
//! no isomorphism bookkeeping.
//!
//! A face factors through the internal face `∂_e` exactly when `e` is absent
//! from its subtree or contained in its contraction set; this closed form is
//! what the sieve constructors in [`crate::subobject`] rely on.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::tree::{EdgeId, RawNode, Tree, VertexId};
use crate::{Error, Result};

/// The subtree half of a face: a single edge (an η-subtree) or a nonempty
/// connected set of vertices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SubtreePart {
    Edge(EdgeId),
    Vertices(BTreeSet<VertexId>),
}

/// A face `(subtree, contracted inner edges)` of an ambient tree.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Face {
    part: SubtreePart,
    contracted: BTreeSet<EdgeId>,
}

impl Face {
    pub fn edge(e: EdgeId) -> Face {
        Face {
            part: SubtreePart::Edge(e),
            contracted: BTreeSet::new(),
        }
    }

    pub fn vertices(vs: BTreeSet<VertexId>, contracted: BTreeSet<EdgeId>) -> Face {
        Face {
            part: SubtreePart::Vertices(vs),
            contracted,
        }
    }

    /// A face with the given subtree part and no contractions.
    pub fn vertices_or_edge(part: SubtreePart) -> Face {
        Face {
            part,
            contracted: BTreeSet::new(),
        }
    }

    /// The identity face of a tree: all vertices (the root edge for η).
    pub fn identity(tree: &Tree) -> Face {
        if tree.vertex_count() == 0 {
            Face::edge(tree.root())
        } else {
            Face::vertices(tree.vertex_ids().collect(), BTreeSet::new())
        }
    }

    pub fn part(&self) -> &SubtreePart {
        &self.part
    }

    pub fn contracted(&self) -> &BTreeSet<EdgeId> {
        &self.contracted
    }

    pub fn is_identity(&self, tree: &Tree) -> bool {
        *self == Face::identity(tree)
    }

    /// Number of vertices of the subtree part.
    pub fn subtree_vertex_count(&self) -> usize {
        match &self.part {
            SubtreePart::Edge(_) => 0,
            SubtreePart::Vertices(vs) => vs.len(),
        }
    }

    /// Codimension: |T| − |F| + |D|, the number of elementary faces any
    /// decomposition of this face is made of.
    pub fn codimension(&self, tree: &Tree) -> usize {
        tree.vertex_count() - self.subtree_vertex_count() + self.contracted.len()
    }

    /// True iff the face factors through `∂_e`, i.e. misses the inner edge
    /// `e`: either `e` is not an edge of the subtree, or it is contracted.
    pub fn factors_through_internal(&self, tree: &Tree, e: EdgeId) -> bool {
        !subtree_edges(tree, &self.part).contains(&e) || self.contracted.contains(&e)
    }
}

/// Edge set of a subtree: the edge itself for an η-subtree, otherwise all
/// edges incident to one of its vertices.
pub fn subtree_edges(tree: &Tree, part: &SubtreePart) -> BTreeSet<EdgeId> {
    match part {
        SubtreePart::Edge(e) => std::iter::once(*e).collect(),
        SubtreePart::Vertices(vs) => {
            let mut edges = BTreeSet::new();
            for &v in vs {
                edges.insert(tree.output(v));
                edges.extend(tree.inputs(v).iter().copied());
            }
            edges
        }
    }
}

/// Root edge of a subtree: the output of its lowest vertex.
pub fn subtree_root(tree: &Tree, part: &SubtreePart) -> EdgeId {
    match part {
        SubtreePart::Edge(e) => *e,
        SubtreePart::Vertices(vs) => {
            for &v in vs {
                let out = tree.output(v);
                let below = tree.bottom(out);
                if below.is_none() || !vs.contains(&below.unwrap()) {
                    return out;
                }
            }
            unreachable!("a nonempty connected vertex set has a lowest vertex")
        }
    }
}

/// Leaves of a subtree: edges whose top vertex is absent or outside it.
pub fn subtree_leaves(tree: &Tree, part: &SubtreePart) -> BTreeSet<EdgeId> {
    match part {
        SubtreePart::Edge(e) => std::iter::once(*e).collect(),
        SubtreePart::Vertices(vs) => subtree_edges(tree, part)
            .into_iter()
            .filter(|&e| match tree.top(e) {
                None => true,
                Some(v) => !vs.contains(&v),
            })
            .collect(),
    }
}

/// Inner edges of a subtree: edges joining two of its vertices.
pub fn subtree_inner_edges(tree: &Tree, part: &SubtreePart) -> BTreeSet<EdgeId> {
    match part {
        SubtreePart::Edge(_) => BTreeSet::new(),
        SubtreePart::Vertices(vs) => subtree_edges(tree, part)
            .into_iter()
            .filter(|&e| {
                matches!(tree.top(e), Some(v) if vs.contains(&v))
                    && matches!(tree.bottom(e), Some(v) if vs.contains(&v))
            })
            .collect(),
    }
}

/// Whether a set of vertices induces a connected subgraph (two vertices are
/// adjacent iff they share an edge). The empty set is not connected.
pub fn is_connected(tree: &Tree, vs: &BTreeSet<VertexId>) -> bool {
    let Some(&start) = vs.iter().next() else {
        return false;
    };
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start);
    queue.push_back(start);
    while let Some(v) = queue.pop_front() {
        let mut neighbours = Vec::new();
        if let Some(below) = tree.bottom(tree.output(v)) {
            neighbours.push(below);
        }
        for &input in tree.inputs(v) {
            if let Some(above) = tree.top(input) {
                neighbours.push(above);
            }
        }
        for n in neighbours {
            if vs.contains(&n) && seen.insert(n) {
                queue.push_back(n);
            }
        }
    }
    seen.len() == vs.len()
}

/// All subtrees: every single edge, plus every connected vertex set.
/// Deterministic order: η-subtrees by edge id, then vertex sets by
/// (size, contents).
pub fn subtrees(tree: &Tree) -> Vec<SubtreePart> {
    let mut out: Vec<SubtreePart> = tree.edges().map(SubtreePart::Edge).collect();
    let v = tree.vertex_count();
    let mut vertex_parts = Vec::new();
    for mask in 1u64..(1u64 << v) {
        let set: BTreeSet<VertexId> = tree
            .vertex_ids()
            .filter(|v| mask & (1 << v.index()) != 0)
            .collect();
        if is_connected(tree, &set) {
            vertex_parts.push(set);
        }
    }
    vertex_parts.sort_by_key(|s| (s.len(), s.clone()));
    out.extend(vertex_parts.into_iter().map(SubtreePart::Vertices));
    out
}

/// A witness that the subtree arises by successively pruning top vertices or
/// root vertices with a single attached inner edge: the names of the pruned
/// vertices, in order. `None` if the part is not a valid subtree.
pub fn pruning_sequence(tree: &Tree, part: &SubtreePart) -> Option<Vec<String>> {
    let target: BTreeSet<VertexId> = match part {
        SubtreePart::Edge(e) => {
            if !tree.edges().any(|x| x == *e) {
                return None;
            }
            if tree.vertex_count() == 0 {
                return Some(Vec::new());
            }
            // Prune down to a one-vertex subtree containing the edge; the
            // final step to the bare edge is the corolla edge face.
            let stop = tree.top(*e).or_else(|| tree.bottom(*e))?;
            let mut seq = prune_to(tree, &std::iter::once(stop).collect())?;
            seq.push(tree.vertex_name(stop).to_string());
            return Some(seq);
        }
        SubtreePart::Vertices(vs) => vs.clone(),
    };
    if target.is_empty() || !is_connected(tree, &target) {
        return None;
    }
    prune_to(tree, &target)
}

fn prune_to(tree: &Tree, target: &BTreeSet<VertexId>) -> Option<Vec<String>> {
    let mut current: BTreeSet<VertexId> = tree.vertex_ids().collect();
    let mut seq = Vec::new();
    while &current != target {
        let mut pruned = None;
        for &v in current.difference(target) {
            let mut smaller = current.clone();
            smaller.remove(&v);
            if is_connected(tree, &smaller) {
                pruned = Some(v);
                break;
            }
        }
        let v = pruned?;
        current.remove(&v);
        seq.push(tree.vertex_name(v).to_string());
    }
    Some(seq)
}

/// All faces of the tree: every (subtree, contraction subset) pair,
/// including the identity.
pub fn faces(tree: &Tree) -> Vec<Face> {
    let mut out = Vec::new();
    for part in subtrees(tree) {
        let inner: Vec<EdgeId> = subtree_inner_edges(tree, &part).into_iter().collect();
        for mask in 0u64..(1u64 << inner.len()) {
            let contracted: BTreeSet<EdgeId> = inner
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &e)| e)
                .collect();
            out.push(Face {
                part: part.clone(),
                contracted,
            });
        }
    }
    out.sort();
    out
}

/// Checks that a face is well-formed over the given tree.
pub fn validate_face(tree: &Tree, face: &Face) -> Result<()> {
    match &face.part {
        SubtreePart::Edge(e) => {
            if e.index() >= tree.edge_count() {
                return Err(Error::InvalidFace("edge out of range".into()));
            }
            if !face.contracted.is_empty() {
                return Err(Error::InvalidFace(
                    "an η-subtree has no inner edges to contract".into(),
                ));
            }
        }
        SubtreePart::Vertices(vs) => {
            if vs.is_empty() {
                return Err(Error::InvalidFace("empty vertex set".into()));
            }
            if vs.iter().any(|v| v.index() >= tree.vertex_count()) {
                return Err(Error::InvalidFace("vertex out of range".into()));
            }
            if !is_connected(tree, vs) {
                return Err(Error::InvalidFace("vertex set is not connected".into()));
            }
            let inner = subtree_inner_edges(tree, &face.part);
            if !face.contracted.is_subset(&inner) {
                return Err(Error::InvalidFace(
                    "contraction set contains a non-inner edge of the subtree".into(),
                ));
            }
        }
    }
    Ok(())
}

/// The canonical domain `F/D` of a face, edges named by their surviving
/// ambient representatives, plus the maps back to the ambient tree.
#[derive(Debug, Clone)]
pub struct FaceDomain {
    pub tree: Tree,
    /// Domain edge → ambient edge.
    pub edge_to_ambient: Vec<EdgeId>,
    /// Domain vertex → its contraction class of ambient vertices.
    pub vertex_class: Vec<Vec<VertexId>>,
}

/// Builds the canonical domain of a face. Inputs of a merged vertex are
/// spliced in place of each contracted edge, preserving stored order.
pub fn face_domain(tree: &Tree, face: &Face) -> Result<FaceDomain> {
    validate_face(tree, face)?;
    let raw = match &face.part {
        SubtreePart::Edge(e) => RawNode {
            name: tree.edge_name(*e).to_string(),
            children: None,
        },
        SubtreePart::Vertices(vs) => {
            domain_node(tree, vs, &face.contracted, subtree_root(tree, &face.part))
        }
    };
    let domain = Tree::from_raw(&raw).expect("domain inherits distinct ambient names");
    let edge_to_ambient: Vec<EdgeId> = domain
        .edges()
        .map(|e| {
            tree.edge_by_name(domain.edge_name(e))
                .expect("inherited name")
        })
        .collect();
    let vertex_class = domain
        .vertex_ids()
        .map(|v| {
            let ambient_edge = edge_to_ambient[domain.output(v).index()];
            let seed = tree.top(ambient_edge).expect("class has a top vertex");
            contraction_class(tree, seed, &face.contracted)
        })
        .collect();
    Ok(FaceDomain {
        tree: domain,
        edge_to_ambient,
        vertex_class,
    })
}

fn domain_node(
    tree: &Tree,
    vs: &BTreeSet<VertexId>,
    contracted: &BTreeSet<EdgeId>,
    edge: EdgeId,
) -> RawNode {
    match tree.top(edge) {
        Some(v) if vs.contains(&v) => {
            let mut spliced = Vec::new();
            splice_inputs(tree, v, contracted, &mut spliced);
            RawNode {
                name: tree.edge_name(edge).to_string(),
                children: Some(
                    spliced
                        .into_iter()
                        .map(|e| domain_node(tree, vs, contracted, e))
                        .collect(),
                ),
            }
        }
        _ => RawNode {
            name: tree.edge_name(edge).to_string(),
            children: None,
        },
    }
}

fn splice_inputs(tree: &Tree, v: VertexId, contracted: &BTreeSet<EdgeId>, out: &mut Vec<EdgeId>) {
    for &input in tree.inputs(v) {
        if contracted.contains(&input) {
            splice_inputs(
                tree,
                tree.top(input).expect("contracted edges are inner"),
                contracted,
                out,
            );
        } else {
            out.push(input);
        }
    }
}

/// The set of ambient vertices merged with `seed` by the contraction edges.
fn contraction_class(tree: &Tree, seed: VertexId, contracted: &BTreeSet<EdgeId>) -> Vec<VertexId> {
    let mut class = BTreeSet::new();
    let mut queue = VecDeque::new();
    class.insert(seed);
    queue.push_back(seed);
    while let Some(v) = queue.pop_front() {
        let mut adjacent = Vec::new();
        if contracted.contains(&tree.output(v)) {
            if let Some(below) = tree.bottom(tree.output(v)) {
                adjacent.push(below);
            }
        }
        for &input in tree.inputs(v) {
            if contracted.contains(&input) {
                if let Some(above) = tree.top(input) {
                    adjacent.push(above);
                }
            }
        }
        for a in adjacent {
            if class.insert(a) {
                queue.push_back(a);
            }
        }
    }
    class.into_iter().collect()
}

/// Codimension-1 faces, classified.
#[derive(Debug, Clone)]
pub struct Codim1 {
    /// One per inner edge: (full vertex set, {e}).
    pub internal: Vec<Face>,
    /// Prunings of one vertex; for a one-vertex tree, the single-edge faces.
    pub external: Vec<Face>,
}

pub fn classify_codim1(tree: &Tree) -> Codim1 {
    let internal = tree
        .inner_edges()
        .into_iter()
        .map(|e| Face::vertices(tree.vertex_ids().collect(), std::iter::once(e).collect()))
        .collect();
    let external = match tree.vertex_count() {
        0 => Vec::new(),
        1 => tree.edges().map(Face::edge).collect(),
        _ => {
            let all: BTreeSet<VertexId> = tree.vertex_ids().collect();
            tree.vertex_ids()
                .filter_map(|v| {
                    let mut rest = all.clone();
                    rest.remove(&v);
                    is_connected(tree, &rest).then(|| Face::vertices(rest, BTreeSet::new()))
                })
                .collect()
        }
    };
    Codim1 { internal, external }
}

/// Composes `outer : F/D → T` with a face `inner` of its canonical domain,
/// producing a face of `T`. `inner` must be expressed over
/// `face_domain(tree, outer).tree`.
pub fn compose_faces(tree: &Tree, outer: &Face, inner: &Face) -> Result<Face> {
    let domain = face_domain(tree, outer)?;
    validate_face(&domain.tree, inner).map_err(|e| Error::DomainMismatch(e.to_string()))?;
    match inner.part() {
        SubtreePart::Edge(e) => Ok(Face::edge(domain.edge_to_ambient[e.index()])),
        SubtreePart::Vertices(ws) => {
            let mut vertices = BTreeSet::new();
            let mut contracted: BTreeSet<EdgeId> = inner
                .contracted
                .iter()
                .map(|e| domain.edge_to_ambient[e.index()])
                .collect();
            for &w in ws {
                for &v in &domain.vertex_class[w.index()] {
                    vertices.insert(v);
                }
            }
            // Contractions of the outer face internal to a selected class.
            for &d in &outer.contracted {
                let above = tree.top(d).expect("contracted edges are inner");
                if vertices.contains(&above) {
                    contracted.insert(d);
                }
            }
            Ok(Face::vertices(vertices, contracted))
        }
    }
}

/// All faces of `T` that factor through the given face: the composites of
/// `face` with every face of its domain.
pub fn embedded_faces(tree: &Tree, face: &Face) -> Result<Vec<Face>> {
    let domain = face_domain(tree, face)?;
    faces(&domain.tree)
        .iter()
        .map(|g| compose_faces(tree, face, g))
        .collect()
}

/// Transports a face along an isomorphism of ambient trees
/// (`map`: source edge id → target edge id).
pub fn transport_face(src: &Tree, dst: &Tree, map: &[EdgeId], face: &Face) -> Face {
    let part = match face.part() {
        SubtreePart::Edge(e) => SubtreePart::Edge(map[e.index()]),
        SubtreePart::Vertices(vs) => SubtreePart::Vertices(
            vs.iter()
                .map(|&v| {
                    dst.top(map[src.output(v).index()])
                        .expect("isomorphisms preserve vertices")
                })
                .collect(),
        ),
    };
    Face {
        part,
        contracted: face.contracted.iter().map(|&e| map[e.index()]).collect(),
    }
}

/// Decomposes a face into a chain of codimension-1 faces: entry `i` is a
/// codimension-1 face of the domain reached after `i` steps. The chain has
/// length equal to the face's codimension and composes back to the face.
pub fn elementary_decomposition(tree: &Tree, face: &Face) -> Result<Vec<(Tree, Face)>> {
    validate_face(tree, face)?;
    let prune_order = pruning_sequence(tree, face.part())
        .ok_or_else(|| Error::InvalidFace("no pruning sequence".into()))?;
    let mut chain: Vec<(Tree, Face)> = Vec::new();
    let mut current = tree.clone();
    let edge_target = match face.part() {
        SubtreePart::Edge(e) => Some(tree.edge_name(*e).to_string()),
        SubtreePart::Vertices(_) => None,
    };
    for name in &prune_order {
        let v = current.vertex_by_name(name)?;
        let step = if current.vertex_count() == 1 {
            // Last vertex of an η-target: the corolla edge face.
            let e = current.edge_by_name(edge_target.as_ref().expect("edge target"))?;
            Face::edge(e)
        } else {
            let mut rest: BTreeSet<VertexId> = current.vertex_ids().collect();
            rest.remove(&v);
            Face::vertices(rest, BTreeSet::new())
        };
        let next = face_domain(&current, &step)?.tree;
        chain.push((current, step));
        current = next;
    }
    let mut contractions: Vec<String> = face
        .contracted
        .iter()
        .map(|&e| tree.edge_name(e).to_string())
        .collect();
    while !contractions.is_empty() {
        // Contract edges with the smallest top-vertex arity first: merging a
        // nullary vertex never raises an arity, so intermediate trees stay
        // within the arity range spanned by the endpoints.
        contractions.sort_by_key(|name| {
            let e = current
                .edge_by_name(name)
                .expect("contraction edge survives");
            let top = current.top(e).expect("contracted edges are inner");
            (current.arity(top), name.clone())
        });
        let name = contractions.remove(0);
        let e = current.edge_by_name(&name)?;
        let step = Face::vertices(current.vertex_ids().collect(), std::iter::once(e).collect());
        let next = face_domain(&current, &step)?.tree;
        chain.push((current, step));
        current = next;
    }
    Ok(chain)
}

/// Wire form of a face: edge and vertex names relative to the ambient tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SubtreeWire {
    Edge { edge: String },
    Vertices { vertices: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceWire {
    pub subtree: SubtreeWire,
    pub contract: Vec<String>,
}

impl Face {
    pub fn to_wire(&self, tree: &Tree) -> FaceWire {
        let subtree = match &self.part {
            SubtreePart::Edge(e) => SubtreeWire::Edge {
                edge: tree.edge_name(*e).to_string(),
            },
            SubtreePart::Vertices(vs) => {
                let mut names: Vec<String> = vs
                    .iter()
                    .map(|&v| tree.vertex_name(v).to_string())
                    .collect();
                names.sort();
                SubtreeWire::Vertices { vertices: names }
            }
        };
        let mut contract: Vec<String> = self
            .contracted
            .iter()
            .map(|&e| tree.edge_name(e).to_string())
            .collect();
        contract.sort();
        FaceWire { subtree, contract }
    }

    pub fn from_wire(wire: &FaceWire, tree: &Tree) -> Result<Face> {
        let part = match &wire.subtree {
            SubtreeWire::Edge { edge } => SubtreePart::Edge(tree.edge_by_name(edge)?),
            SubtreeWire::Vertices { vertices } => SubtreePart::Vertices(
                vertices
                    .iter()
                    .map(|n| tree.vertex_by_name(n))
                    .collect::<Result<_>>()?,
            ),
        };
        let contracted = wire
            .contract
            .iter()
            .map(|n| tree.edge_by_name(n))
            .collect::<Result<_>>()?;
        let face = Face { part, contracted };
        validate_face(tree, &face)?;
        Ok(face)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        let mut result = 1usize;
        for i in 0..k {
            result = result * (n - i) / (i + 1);
        }
        result
    }

    #[test]
    fn subtree_counts() {
        assert_eq!(subtrees(&Tree::eta()).len(), 1);
        for n in 0..=3 {
            assert_eq!(subtrees(&Tree::corolla(n)).len(), n + 2);
        }
        assert_eq!(subtrees(&Tree::linear(2)).len(), 6);
    }

    #[test]
    fn face_counts() {
        assert_eq!(faces(&Tree::eta()).len(), 1);
        assert_eq!(faces(&Tree::corolla(2)).len(), 4);
        assert_eq!(faces(&Tree::linear(2)).len(), 7);
    }

    #[test]
    fn linear_face_counts_match_binomial_oracle() {
        // Nondegenerate simplices of the n-simplex: Σ_k C(n+1, k+1).
        for n in 0..=4 {
            let expected: usize = (0..=n).map(|k| binom(n + 1, k + 1)).sum();
            assert_eq!(faces(&Tree::linear(n)).len(), expected, "n = {n}");
        }
    }

    #[test]
    fn classify_linear_2() {
        let t = Tree::linear(2);
        let c = classify_codim1(&t);
        assert_eq!(c.internal.len(), 1);
        assert_eq!(c.external.len(), 2);
        let e = t.edge_by_name("1").unwrap();
        assert_eq!(
            c.internal[0],
            Face::vertices(t.vertex_ids().collect(), [e].into())
        );
    }

    #[test]
    fn classify_corollas() {
        for n in 0..=3 {
            let t = Tree::corolla(n);
            let c = classify_codim1(&t);
            assert_eq!(c.internal.len(), 0);
            assert_eq!(c.external.len(), n + 1);
        }
        let eta = Tree::eta();
        let c = classify_codim1(&eta);
        assert!(c.internal.is_empty() && c.external.is_empty());
    }

    #[test]
    fn internal_face_count_equals_inner_edge_count() {
        for t in crate::tree::enumerate_trees(4, 3) {
            let c = classify_codim1(&t);
            assert_eq!(c.internal.len(), t.inner_edges().len());
            // Distinct contractions are distinct faces.
            let set: BTreeSet<&Face> = c.internal.iter().collect();
            assert_eq!(set.len(), c.internal.len());
        }
    }

    #[test]
    fn domain_keeps_surviving_names() {
        let t = Tree::linear(3);
        let e1 = t.edge_by_name("1").unwrap();
        let outer = Face::vertices(t.vertex_ids().collect(), [e1].into());
        let domain = face_domain(&t, &outer).unwrap();
        assert_eq!(domain.tree.literal(), "3(2(0))");
        // Composing with the internal face of the domain contracts both.
        let e2 = domain.tree.edge_by_name("2").unwrap();
        let inner = Face::vertices(domain.tree.vertex_ids().collect(), [e2].into());
        let composite = compose_faces(&t, &outer, &inner).unwrap();
        let wire = composite.to_wire(&t);
        assert_eq!(wire.contract, vec!["1", "2"]);
        assert_eq!(composite.subtree_vertex_count(), 3);
    }

    #[test]
    fn compose_with_identity() {
        let t = Tree::parse("r(a(x,y),b)").unwrap();
        for f in faces(&t) {
            let domain = face_domain(&t, &f).unwrap();
            let id_inner = Face::identity(&domain.tree);
            assert_eq!(compose_faces(&t, &f, &id_inner).unwrap(), f);
            let id_outer = Face::identity(&t);
            // The face re-expressed over the ambient tree (the identity's
            // domain is the tree itself, with the same names).
            let id_domain = face_domain(&t, &id_outer).unwrap();
            let transported = rename_face(&t, &f, &id_domain.tree);
            assert_eq!(compose_faces(&t, &id_outer, &transported).unwrap(), f);
        }
    }

    /// Re-express a face of `src` over `dst`, matching edges by name.
    fn rename_face(src: &Tree, face: &Face, dst: &Tree) -> Face {
        Face::from_wire(&face.to_wire(src), dst).unwrap()
    }

    #[test]
    fn faces_are_downward_closed() {
        for t in crate::tree::enumerate_trees(3, 3) {
            let all: BTreeSet<Face> = faces(&t).into_iter().collect();
            for f in &all {
                for g in embedded_faces(&t, f).unwrap() {
                    assert!(all.contains(&g));
                }
            }
        }
    }

    #[test]
    fn elementary_decompositions_have_codimension_length() {
        for t in crate::tree::enumerate_trees(4, 3) {
            for f in faces(&t) {
                let chain = elementary_decomposition(&t, &f).unwrap();
                assert_eq!(chain.len(), f.codimension(&t), "face {:?} of {}", f, t);
                for (tree_i, step) in &chain {
                    assert_eq!(step.codimension(tree_i), 1);
                }
                // The chain composes back to the face.
                let mut acc = Face::identity(&t);
                let mut current = t.clone();
                for (tree_i, step) in &chain {
                    assert_eq!(tree_i, &current);
                    let renamed = rename_face(tree_i, step, &current);
                    acc = compose_faces(&t, &acc, &renamed).unwrap();
                    current = face_domain(&current, &renamed).unwrap().tree;
                }
                assert_eq!(&acc, &f);
            }
        }
    }

    #[test]
    fn pruning_witness_exists_for_all_subtrees() {
        for t in crate::tree::enumerate_trees(4, 3) {
            for part in subtrees(&t) {
                assert!(pruning_sequence(&t, &part).is_some());
            }
        }
    }

    #[test]
    fn face_wire_round_trip() {
        let t = Tree::parse("r(a(x,y),b)").unwrap();
        for f in faces(&t) {
            let wire = f.to_wire(&t);
            assert_eq!(Face::from_wire(&wire, &t).unwrap(), f);
        }
    }
}
