//! Arrows between trees as edge maps.
//!
//! An arrow `A → B` is determined by where it sends edges: a map
//! `E(A) → E(B)` is an arrow exactly when, at every vertex of `A`, the images
//! of the input edges are pairwise distinct and form the full leaf set of a
//! cut of `B` rooted at the image of the output edge (the single-edge cut
//! `{a}` accounts for unary collapses). Faces, degeneracies and isomorphisms
//! are all of this shape, and composition is just map composition, so
//! functoriality holds on the nose.
//!
//! Presheaves act contravariantly: an arrow `α : A → B` restricts dendrices
//! at `B` to dendrices at `A`.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;

use crate::face::{subtree_leaves, subtrees, Face, SubtreePart};
use crate::tree::{EdgeId, Tree, VertexId};
use crate::{Error, Result};

/// An arrow of the tree category, stored as a validated edge map.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Arrow {
    dom: Tree,
    cod: Tree,
    map: Vec<EdgeId>,
}

impl Arrow {
    pub fn new(dom: Tree, cod: Tree, map: Vec<EdgeId>) -> Result<Arrow> {
        if map.len() != dom.edge_count() {
            return Err(Error::InvalidArrow(format!(
                "map covers {} edges, domain has {}",
                map.len(),
                dom.edge_count()
            )));
        }
        if let Some(e) = map.iter().find(|e| e.index() >= cod.edge_count()) {
            return Err(Error::InvalidArrow(format!(
                "image edge index {} out of range",
                e.index()
            )));
        }
        for v in dom.vertex_ids() {
            let out_image = map[dom.output(v).index()];
            let images: Vec<EdgeId> = dom.inputs(v).iter().map(|e| map[e.index()]).collect();
            let distinct: BTreeSet<EdgeId> = images.iter().copied().collect();
            if distinct.len() != images.len() {
                return Err(Error::InvalidArrow(format!(
                    "vertex `{}` maps two inputs to the same edge",
                    dom.vertex_name(v)
                )));
            }
            if !cut_matches(&cod, out_image, &distinct) {
                return Err(Error::InvalidArrow(format!(
                    "vertex `{}` does not map onto an operation of the target tree",
                    dom.vertex_name(v)
                )));
            }
        }
        Ok(Arrow { dom, cod, map })
    }

    pub fn identity(tree: &Tree) -> Arrow {
        Arrow {
            dom: tree.clone(),
            cod: tree.clone(),
            map: tree.edges().collect(),
        }
    }

    pub fn dom(&self) -> &Tree {
        &self.dom
    }

    pub fn cod(&self) -> &Tree {
        &self.cod
    }

    pub fn map(&self) -> &[EdgeId] {
        &self.map
    }

    pub fn apply(&self, e: EdgeId) -> EdgeId {
        self.map[e.index()]
    }

    /// Diagrammatic composition: `self : A → B` then `g : B → C`.
    pub fn then(&self, g: &Arrow) -> Result<Arrow> {
        if self.cod != g.dom {
            return Err(Error::InvalidArrow(
                "codomain does not match the next arrow's domain".into(),
            ));
        }
        Ok(Arrow {
            dom: self.dom.clone(),
            cod: g.cod.clone(),
            map: self.map.iter().map(|e| g.map[e.index()]).collect(),
        })
    }

    /// The face `(F, D)` of `tree` as an arrow from its canonical domain.
    pub fn from_face(tree: &Tree, face: &Face) -> Result<Arrow> {
        let domain = crate::face::face_domain(tree, face)?;
        Ok(Arrow {
            dom: domain.tree,
            cod: tree.clone(),
            map: domain.edge_to_ambient,
        })
    }

    /// The degeneracy collapsing a unary vertex: an arrow from `tree` to the
    /// smaller tree in which the vertex's two edges are merged (the merged
    /// edge keeps the output edge's name).
    pub fn degeneracy(tree: &Tree, v: VertexId) -> Result<Arrow> {
        if tree.arity(v) != 1 {
            return Err(Error::InvalidArrow(format!(
                "vertex `{}` is not unary",
                tree.vertex_name(v)
            )));
        }
        let out = tree.output(v);
        let input = tree.inputs(v)[0];
        let raw = collapse_node(tree, tree.root(), v);
        let cod = Tree::from_raw(&raw).expect("collapse keeps names distinct");
        let map = tree
            .edges()
            .map(|e| {
                let name = if e == input {
                    tree.edge_name(out)
                } else {
                    tree.edge_name(e)
                };
                cod.edge_by_name(name).expect("surviving name")
            })
            .collect();
        Arrow::new(tree.clone(), cod, map)
    }

    /// An isomorphism given by an explicit edge bijection.
    pub fn iso(dom: &Tree, cod: &Tree, map: Vec<EdgeId>) -> Result<Arrow> {
        let distinct: BTreeSet<EdgeId> = map.iter().copied().collect();
        if distinct.len() != map.len() || map.len() != cod.edge_count() {
            return Err(Error::InvalidArrow("edge map is not a bijection".into()));
        }
        Arrow::new(dom.clone(), cod.clone(), map)
    }

    pub fn is_injective(&self) -> bool {
        let distinct: BTreeSet<EdgeId> = self.map.iter().copied().collect();
        distinct.len() == self.map.len()
    }

    /// The face of the codomain through which this arrow's image factors:
    /// the union of the per-vertex cuts, with the unseen cut interiors
    /// contracted. For an injective arrow this is its epi-mono image; in
    /// general it is the image of the monic part.
    pub fn image_face(&self) -> Face {
        let image: BTreeSet<EdgeId> = self.map.iter().copied().collect();
        let mut span_vertices: BTreeSet<VertexId> = BTreeSet::new();
        for v in self.dom.vertex_ids() {
            let out_image = self.map[self.dom.output(v).index()];
            let targets: BTreeSet<EdgeId> = self
                .dom
                .inputs(v)
                .iter()
                .map(|e| self.map[e.index()])
                .collect();
            if let Some(cut) = cut_vertices(&self.cod, out_image, &targets) {
                span_vertices.extend(cut);
            }
        }
        if span_vertices.is_empty() {
            return Face::edge(self.map[self.dom.root().index()]);
        }
        let part = SubtreePart::Vertices(span_vertices);
        let contracted = crate::face::subtree_edges(&self.cod, &part)
            .into_iter()
            .filter(|e| !image.contains(e))
            .collect();
        match part {
            SubtreePart::Vertices(vs) => Face::vertices(vs, contracted),
            SubtreePart::Edge(_) => unreachable!(),
        }
    }

    /// Renders the arrow as a name → name table.
    pub fn name_map(&self) -> BTreeMap<String, String> {
        self.dom.render_edge_map(&self.cod, &self.map)
    }
}

fn collapse_node(tree: &Tree, edge: EdgeId, skip: VertexId) -> crate::tree::RawNode {
    let name = tree.edge_name(edge).to_string();
    match tree.top(edge) {
        Some(v) if v == skip => {
            // Merge: keep this edge's name, adopt the structure above the
            // unary vertex's input.
            let input = tree.inputs(v)[0];
            let mut node = collapse_node(tree, input, skip);
            node.name = name;
            node
        }
        Some(v) => crate::tree::RawNode {
            name,
            children: Some(
                tree.inputs(v)
                    .iter()
                    .map(|&c| collapse_node(tree, c, skip))
                    .collect(),
            ),
        },
        None => crate::tree::RawNode {
            name,
            children: None,
        },
    }
}

/// Vertices of the cut of `tree` rooted at `root` whose leaf set is exactly
/// `targets`; `None` if there is no such cut. The single-edge cut `{root}`
/// is represented by the empty vertex set. A cut with the given output and
/// leaf set is unique when it exists: grow upward from the root's vertex,
/// stopping at target edges, and check the leaf set afterwards.
fn cut_vertices(
    tree: &Tree,
    root: EdgeId,
    targets: &BTreeSet<EdgeId>,
) -> Option<BTreeSet<VertexId>> {
    if targets.len() == 1 && targets.contains(&root) {
        return Some(BTreeSet::new());
    }
    if targets.contains(&root) {
        return None; // the root is never a leaf of a vertex cut
    }
    let base = tree.top(root)?;
    let mut vertices = BTreeSet::new();
    let mut stack = vec![base];
    vertices.insert(base);
    while let Some(v) = stack.pop() {
        for &e in tree.inputs(v) {
            if targets.contains(&e) {
                continue;
            }
            let above = tree.top(e)?; // a non-target leaf edge would stay a leaf of the cut
            if vertices.insert(above) {
                stack.push(above);
            }
        }
    }
    let part = SubtreePart::Vertices(vertices.clone());
    (&subtree_leaves(tree, &part) == targets).then_some(vertices)
}

fn cut_matches(tree: &Tree, root: EdgeId, targets: &BTreeSet<EdgeId>) -> bool {
    cut_vertices(tree, root, targets).is_some()
}

/// All arrows `dom → cod`, enumerated in a deterministic order.
pub fn enumerate_arrows(dom: &Tree, cod: &Tree) -> Vec<Arrow> {
    // Cuts of the codomain grouped by root edge: (leaf set, arity).
    let mut cuts_by_root: BTreeMap<EdgeId, Vec<BTreeSet<EdgeId>>> = BTreeMap::new();
    for e in cod.edges() {
        cuts_by_root.insert(e, vec![std::iter::once(e).collect()]);
    }
    for part in subtrees(cod) {
        if let SubtreePart::Vertices(_) = &part {
            let root = crate::face::subtree_root(cod, &part);
            cuts_by_root
                .get_mut(&root)
                .expect("root edge exists")
                .push(subtree_leaves(cod, &part));
        }
    }
    // Vertices in root-down order so every output image is known in turn.
    let mut vertex_order: Vec<VertexId> = Vec::new();
    let mut stack = vec![dom.root()];
    while let Some(e) = stack.pop() {
        if let Some(v) = dom.top(e) {
            vertex_order.push(v);
            for &i in dom.inputs(v) {
                stack.push(i);
            }
        }
    }
    let mut out = Vec::new();
    let mut map = vec![EdgeId(0); dom.edge_count()];
    for root_image in cod.edges() {
        map[dom.root().index()] = root_image;
        assign_vertices(
            dom,
            cod,
            &cuts_by_root,
            &vertex_order,
            0,
            &mut map,
            &mut out,
        );
    }
    out.sort_by(|a, b| a.map.cmp(&b.map));
    out
}

fn assign_vertices(
    dom: &Tree,
    cod: &Tree,
    cuts_by_root: &BTreeMap<EdgeId, Vec<BTreeSet<EdgeId>>>,
    order: &[VertexId],
    k: usize,
    map: &mut Vec<EdgeId>,
    out: &mut Vec<Arrow>,
) {
    if k == order.len() {
        out.push(Arrow {
            dom: dom.clone(),
            cod: cod.clone(),
            map: map.clone(),
        });
        return;
    }
    let v = order[k];
    let inputs = dom.inputs(v);
    let root_image = map[dom.output(v).index()];
    for cut in &cuts_by_root[&root_image] {
        if cut.len() != inputs.len() {
            continue;
        }
        let leaves: Vec<EdgeId> = cut.iter().copied().collect();
        for assignment in leaves.iter().permutations(leaves.len()) {
            for (&input, &&leaf) in inputs.iter().zip(assignment.iter()) {
                map[input.index()] = leaf;
            }
            assign_vertices(dom, cod, cuts_by_root, order, k + 1, map, out);
        }
    }
}

/// The simplicial face `δ_i : linear(n−1) → linear(n)` (edges named by the
/// objects 0..n, the root being n): skips object `i`.
pub fn simplicial_face(n: usize, i: usize) -> Arrow {
    assert!(n >= 1 && i <= n);
    let dom = Tree::linear(n - 1);
    let cod = Tree::linear(n);
    let map = dom
        .edges()
        .map(|e| {
            let j: usize = dom.edge_name(e).parse().expect("numeric");
            let name = if j < i { j } else { j + 1 };
            cod.edge_by_name(&name.to_string()).expect("edge")
        })
        .collect();
    Arrow::new(dom, cod, map).expect("simplicial face is valid")
}

/// The simplicial degeneracy `σ_i : linear(n+1) → linear(n)`: repeats
/// object `i`.
pub fn simplicial_degeneracy(n: usize, i: usize) -> Arrow {
    assert!(i <= n);
    let dom = Tree::linear(n + 1);
    let cod = Tree::linear(n);
    let map = dom
        .edges()
        .map(|e| {
            let j: usize = dom.edge_name(e).parse().expect("numeric");
            let name = if j <= i { j } else { j - 1 };
            cod.edge_by_name(&name.to_string()).expect("edge")
        })
        .collect();
    Arrow::new(dom, cod, map).expect("simplicial degeneracy is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::face::faces;
    use crate::tree::enumerate_trees;

    #[test]
    fn face_arrows_round_trip_through_image() {
        for t in enumerate_trees(3, 3) {
            for f in faces(&t) {
                let arrow = Arrow::from_face(&t, &f).unwrap();
                assert!(arrow.is_injective());
                assert_eq!(arrow.image_face(), f);
            }
        }
    }

    #[test]
    fn degeneracy_arrows_are_valid_surjections() {
        let t = Tree::parse("r(a(x,y))").unwrap(); // unary root vertex
        let v = t.vertex_by_name("r").unwrap();
        let sigma = Arrow::degeneracy(&t, v).unwrap();
        assert!(!sigma.is_injective());
        assert_eq!(sigma.cod().literal(), "r(x,y)");
        assert_eq!(sigma.image_face(), Face::identity(sigma.cod()));
        // Non-unary vertices are rejected.
        let w = t.vertex_by_name("a").unwrap();
        assert!(Arrow::degeneracy(&t, w).is_err());
    }

    #[test]
    fn composition_is_map_composition() {
        let t = Tree::linear(3);
        let f = faces(&t)
            .into_iter()
            .find(|f| f.codimension(&t) == 1 && !f.contracted().is_empty())
            .unwrap();
        let a = Arrow::from_face(&t, &f).unwrap();
        let auto = Arrow::identity(&t);
        let both = a.then(&auto).unwrap();
        assert_eq!(both.map(), a.map());
    }

    #[test]
    fn hom_set_sizes() {
        // Arrows linear(n) → η: everything collapses, one arrow.
        for n in 0..=3 {
            assert_eq!(enumerate_arrows(&Tree::linear(n), &Tree::eta()).len(), 1);
        }
        // Arrows η → T: one per edge.
        let t = Tree::parse("r(a(x,y),b)").unwrap();
        assert_eq!(enumerate_arrows(&Tree::eta(), &t).len(), t.edge_count());
        // Endo-arrows of the 2-corolla: exactly the two isomorphisms.
        assert_eq!(
            enumerate_arrows(&Tree::corolla(2), &Tree::corolla(2)).len(),
            2
        );
        // Δ-homs: monotone maps [1] → [2], six of them.
        assert_eq!(
            enumerate_arrows(&Tree::linear(1), &Tree::linear(2)).len(),
            6
        );
    }

    #[test]
    fn corolla_has_no_map_to_eta() {
        // A binary vertex cannot collapse: its inputs would collide.
        assert!(enumerate_arrows(&Tree::corolla(2), &Tree::eta()).is_empty());
    }

    #[test]
    fn enumerated_arrows_compose_with_faces() {
        let t = Tree::linear(2);
        for arrow in enumerate_arrows(&Tree::linear(1), &t) {
            for g in enumerate_arrows(&Tree::eta(), &Tree::linear(1)) {
                let composite = g.then(&arrow).unwrap();
                assert_eq!(composite.dom(), &Tree::eta());
                assert_eq!(composite.cod(), &t);
            }
        }
    }

    #[test]
    fn simplicial_identities_on_arrows() {
        // δ_j ∘ δ_i = δ_i ∘ δ_{j−1} for i < j (composition in diagram order:
        // the left map is applied first).
        let n = 3;
        for j in 0..=n {
            for i in 0..j {
                let left = simplicial_face(n - 1, i)
                    .then(&simplicial_face(n, j))
                    .unwrap();
                let right = simplicial_face(n - 1, j - 1)
                    .then(&simplicial_face(n, i))
                    .unwrap();
                assert_eq!(left, right, "i={i} j={j}");
            }
        }
        // σ_i ∘ δ_i = id = σ_i ∘ δ_{i+1} (δ into linear(n), σ back down).
        let id_small = Arrow::identity(&Tree::linear(n - 1));
        for i in 0..n {
            let first = simplicial_face(n, i)
                .then(&simplicial_degeneracy(n - 1, i))
                .unwrap();
            assert_eq!(first, id_small);
            let second = simplicial_face(n, i + 1)
                .then(&simplicial_degeneracy(n - 1, i))
                .unwrap();
            assert_eq!(second, id_small);
        }
    }
}
