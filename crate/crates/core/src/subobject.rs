//! Subobjects (sieves) of a representable: downward-closed sets of faces.
//!
//! Each constructor has a closed-form membership predicate next to it; the
//! two descriptions are cross-checked in tests, so a bug in the face calculus
//! has to fool both routes to go unnoticed.
//!
//! For a tree with at least two vertices and an inner edge `e` the chain
//!
//! ```text
//! Sc[T] ⊆ ∂ext Ω[T] ⊆ Λe[T] ⊊ Ω[T]
//! ```
//!
//! holds membership-wise; the inner horn misses exactly the identity and the
//! internal face at `e`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::face::{
    compose_faces, face_domain, faces, subtree_inner_edges, validate_face, Face, FaceWire,
    SubtreePart,
};
use crate::tree::{EdgeId, Tree};
use crate::{Error, Result};

/// A downward-closed set of faces of a fixed ambient tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subobject {
    tree: Tree,
    members: BTreeSet<Face>,
}

impl Subobject {
    pub fn empty(tree: &Tree) -> Subobject {
        Subobject {
            tree: tree.clone(),
            members: BTreeSet::new(),
        }
    }

    /// Builds a subobject from explicit faces, validating each against the
    /// ambient tree. Downward closure is the caller's concern (re-check with
    /// [`Subobject::is_downward_closed`]).
    pub fn from_faces(tree: &Tree, faces: impl IntoIterator<Item = Face>) -> Result<Subobject> {
        let mut members = BTreeSet::new();
        for f in faces {
            validate_face(tree, &f)?;
            members.insert(f);
        }
        Ok(Subobject {
            tree: tree.clone(),
            members,
        })
    }

    /// The whole representable: every face.
    pub fn full(tree: &Tree) -> Subobject {
        Subobject {
            tree: tree.clone(),
            members: faces(tree).into_iter().collect(),
        }
    }

    /// The boundary: every face except the identity.
    pub fn boundary(tree: &Tree) -> Subobject {
        let identity = Face::identity(tree);
        Subobject {
            tree: tree.clone(),
            members: faces(tree).into_iter().filter(|f| *f != identity).collect(),
        }
    }

    /// The external boundary: every face with a proper subtree part.
    pub fn external_boundary(tree: &Tree) -> Subobject {
        Subobject {
            tree: tree.clone(),
            members: faces(tree)
                .into_iter()
                .filter(|f| is_external_boundary_member(tree, f))
                .collect(),
        }
    }

    /// The inner horn at `e`: every face except the identity and `∂_e`.
    pub fn inner_horn(tree: &Tree, e: EdgeId) -> Result<Subobject> {
        if !tree.is_inner(e) {
            return Err(Error::NotInnerEdge(tree.edge_name(e).to_string()));
        }
        Ok(Subobject {
            tree: tree.clone(),
            members: faces(tree)
                .into_iter()
                .filter(|f| is_inner_horn_member(tree, f, e))
                .collect(),
        })
    }

    /// The Segal core: single-edge faces and single-vertex corolla faces.
    /// For η this is the identity face, i.e. the whole of the representable.
    pub fn segal_core(tree: &Tree) -> Subobject {
        Subobject {
            tree: tree.clone(),
            members: faces(tree)
                .into_iter()
                .filter(is_segal_core_member)
                .collect(),
        }
    }

    /// Stage `n` of the filtration by subtree vertex count: all faces whose
    /// subtree has at most `n` vertices. Stage 1 is the Segal core, stage
    /// |T|−1 the external boundary, stage |T| everything.
    pub fn filtration_stage(tree: &Tree, n: usize) -> Result<Subobject> {
        if tree.vertex_count() == 0 || n < 1 || n > tree.vertex_count() {
            return Err(Error::StageOutOfRange {
                stage: n,
                max: tree.vertex_count(),
            });
        }
        Ok(Subobject {
            tree: tree.clone(),
            members: faces(tree)
                .into_iter()
                .filter(|f| f.subtree_vertex_count() <= n)
                .collect(),
        })
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> impl Iterator<Item = &Face> {
        self.members.iter()
    }

    pub fn is_member(&self, face: &Face) -> bool {
        self.members.contains(face)
    }

    pub fn contains_identity(&self) -> bool {
        self.members.contains(&Face::identity(&self.tree))
    }

    fn check_ambient(&self, other: &Subobject) -> Result<()> {
        if self.tree != other.tree {
            return Err(Error::AmbientMismatch(
                self.tree.literal(),
                other.tree.literal(),
            ));
        }
        Ok(())
    }

    pub fn union(&self, other: &Subobject) -> Result<Subobject> {
        self.check_ambient(other)?;
        Ok(Subobject {
            tree: self.tree.clone(),
            members: self.members.union(&other.members).cloned().collect(),
        })
    }

    pub fn intersect(&self, other: &Subobject) -> Result<Subobject> {
        self.check_ambient(other)?;
        Ok(Subobject {
            tree: self.tree.clone(),
            members: self.members.intersection(&other.members).cloned().collect(),
        })
    }

    /// Is `other` contained in `self`?
    pub fn contains(&self, other: &Subobject) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(other.members.is_subset(&self.members))
    }

    /// Inserts a face without any closure bookkeeping. The caller is
    /// responsible for restoring downward closure (the anodyne engine adds
    /// faces whose proper sub-faces are already present).
    pub(crate) fn insert_raw(&mut self, face: Face) -> bool {
        self.members.insert(face)
    }

    /// Re-verifies downward closure by exhaustive composition.
    pub fn is_downward_closed(&self) -> Result<bool> {
        for f in &self.members {
            let domain = face_domain(&self.tree, f)?;
            for g in faces(&domain.tree) {
                let composite = compose_faces(&self.tree, f, &g)?;
                if !self.members.contains(&composite) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn to_wire(&self) -> SubobjectWire {
        SubobjectWire {
            tree: self.tree.literal(),
            members: self.members.iter().map(|f| f.to_wire(&self.tree)).collect(),
        }
    }

    pub fn from_wire(wire: &SubobjectWire) -> Result<Subobject> {
        let tree = Tree::parse(&wire.tree)?;
        let mut members = BTreeSet::new();
        for fw in &wire.members {
            members.insert(Face::from_wire(fw, &tree)?);
        }
        Ok(Subobject { tree, members })
    }
}

/// Closed-form membership predicates, kept separate from the constructors so
/// tests can cross-check the two routes.
pub fn is_boundary_member(tree: &Tree, face: &Face) -> bool {
    !face.is_identity(tree)
}

pub fn is_external_boundary_member(tree: &Tree, face: &Face) -> bool {
    match face.part() {
        SubtreePart::Edge(_) => tree.vertex_count() > 0,
        SubtreePart::Vertices(vs) => vs.len() < tree.vertex_count(),
    }
}

pub fn is_inner_horn_member(tree: &Tree, face: &Face, e: EdgeId) -> bool {
    if face.is_identity(tree) {
        return false;
    }
    let internal = Face::vertices(tree.vertex_ids().collect(), std::iter::once(e).collect());
    *face != internal
}

pub fn is_segal_core_member(face: &Face) -> bool {
    face.contracted().is_empty() && face.subtree_vertex_count() <= 1
}

/// Wire form: ambient tree literal plus the member faces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubobjectWire {
    pub tree: String,
    pub members: Vec<FaceWire>,
}

/// Faces of the subobject maximal for the factorization order (no other
/// member face factors through them strictly).
pub fn maximal_faces(sub: &Subobject) -> Result<Vec<Face>> {
    let tree = sub.tree();
    let mut dominated: BTreeSet<Face> = BTreeSet::new();
    for f in sub.members() {
        let domain = face_domain(tree, f)?;
        for g in faces(&domain.tree) {
            if g.is_identity(&domain.tree) {
                continue;
            }
            dominated.insert(compose_faces(tree, f, &g)?);
        }
    }
    Ok(sub
        .members()
        .filter(|f| !dominated.contains(f))
        .cloned()
        .collect())
}

/// Validates that a face belongs to the ambient tree of the subobject.
pub fn validate_member(sub: &Subobject, face: &Face) -> Result<()> {
    validate_face(sub.tree(), face)
}

/// Inner edges of the domain of a face: the subtree's inner edges minus the
/// contracted ones (contraction never creates new inner edges).
pub fn domain_inner_edges(tree: &Tree, face: &Face) -> BTreeSet<EdgeId> {
    subtree_inner_edges(tree, face.part())
        .into_iter()
        .filter(|e| !face.contracted().contains(e))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::face::embedded_faces;
    use crate::tree::enumerate_trees;

    #[test]
    fn boundary_of_eta_is_empty() {
        assert_eq!(Subobject::boundary(&Tree::eta()).size(), 0);
    }

    #[test]
    fn boundary_of_corolla_is_the_edges() {
        for n in 0..=4 {
            let t = Tree::corolla(n);
            let b = Subobject::boundary(&t);
            assert_eq!(b.size(), n + 1);
            assert!(b
                .members()
                .all(|f| matches!(f.part(), SubtreePart::Edge(_))));
        }
    }

    #[test]
    fn boundary_of_linear_2() {
        assert_eq!(Subobject::boundary(&Tree::linear(2)).size(), 6);
    }

    #[test]
    fn external_boundary_examples() {
        let c2 = Tree::corolla(2);
        assert_eq!(Subobject::external_boundary(&c2), Subobject::boundary(&c2));
        let l2 = Tree::linear(2);
        let ext = Subobject::external_boundary(&l2);
        assert_eq!(ext.size(), 5);
        let e = l2.edge_by_name("1").unwrap();
        let internal = Face::vertices(l2.vertex_ids().collect(), [e].into());
        assert!(!ext.is_member(&internal));
        assert!(Subobject::boundary(&l2).is_member(&internal));
    }

    #[test]
    fn external_boundary_is_union_of_proper_subtree_images() {
        // Brute-force oracle: the union of Ω[F] over proper subtrees F.
        for t in enumerate_trees(4, 2)
            .into_iter()
            .filter(|t| t.vertex_count() >= 1)
        {
            let mut union: BTreeSet<Face> = BTreeSet::new();
            for part in crate::face::subtrees(&t) {
                let proper = match &part {
                    SubtreePart::Edge(_) => t.vertex_count() > 0,
                    SubtreePart::Vertices(vs) => vs.len() < t.vertex_count(),
                };
                if proper {
                    let f = Face::vertices_or_edge(part);
                    union.extend(embedded_faces(&t, &f).unwrap());
                }
            }
            let ext: BTreeSet<Face> = Subobject::external_boundary(&t)
                .members()
                .cloned()
                .collect();
            assert_eq!(union, ext, "tree {t}");
        }
    }

    #[test]
    fn horn_misses_exactly_two_faces() {
        for t in enumerate_trees(4, 3) {
            for e in t.inner_edges() {
                let horn = Subobject::inner_horn(&t, e).unwrap();
                let full = Subobject::full(&t);
                assert_eq!(full.size() - horn.size(), 2);
                assert!(!horn.contains_identity());
            }
        }
    }

    #[test]
    fn horn_on_corolla_is_an_error() {
        let t = Tree::corolla(2);
        let leaf = t.edge_by_name("1").unwrap();
        assert!(matches!(
            Subobject::inner_horn(&t, leaf),
            Err(Error::NotInnerEdge(_))
        ));
    }

    #[test]
    fn segal_core_sizes() {
        for n in 0..=3 {
            let t = Tree::corolla(n);
            assert_eq!(Subobject::segal_core(&t), Subobject::full(&t));
        }
        for n in 1..=4 {
            let t = Tree::linear(n);
            assert_eq!(Subobject::segal_core(&t).size(), 2 * n + 1);
        }
        let t = Tree::parse("r(a(x,y),b(u,v))").unwrap();
        assert_eq!(Subobject::segal_core(&t).size(), 10);
        // η: the core is the whole representable.
        let eta = Tree::eta();
        assert_eq!(Subobject::segal_core(&eta), Subobject::full(&eta));
    }

    #[test]
    fn horn_of_linear_2_is_its_segal_core() {
        let t = Tree::linear(2);
        let e = t.edge_by_name("1").unwrap();
        assert_eq!(
            Subobject::inner_horn(&t, e).unwrap(),
            Subobject::segal_core(&t)
        );
        assert_eq!(Subobject::segal_core(&t).size(), 5);
    }

    #[test]
    fn filtration_endpoints() {
        for t in enumerate_trees(4, 3)
            .into_iter()
            .filter(|t| t.vertex_count() >= 1)
        {
            let n = t.vertex_count();
            assert_eq!(
                Subobject::filtration_stage(&t, 1).unwrap(),
                Subobject::segal_core(&t)
            );
            assert_eq!(
                Subobject::filtration_stage(&t, n).unwrap(),
                Subobject::full(&t)
            );
            if n >= 2 {
                assert_eq!(
                    Subobject::filtration_stage(&t, n - 1).unwrap(),
                    Subobject::external_boundary(&t)
                );
            }
            for stage in 2..=n {
                let smaller = Subobject::filtration_stage(&t, stage - 1).unwrap();
                let larger = Subobject::filtration_stage(&t, stage).unwrap();
                assert!(larger.contains(&smaller).unwrap());
            }
        }
        assert!(Subobject::filtration_stage(&Tree::linear(2), 0).is_err());
        assert!(Subobject::filtration_stage(&Tree::linear(2), 3).is_err());
        assert!(Subobject::filtration_stage(&Tree::eta(), 1).is_err());
    }

    #[test]
    fn filtration_stages_match_the_union_oracle() {
        // Independent route: the union of Ω[F] over subtrees F with at most
        // n vertices, built through embedded faces.
        for t in enumerate_trees(3, 3).into_iter().filter(|t| t.vertex_count() >= 1) {
            for n in 1..=t.vertex_count() {
                let mut union: BTreeSet<Face> = BTreeSet::new();
                for part in crate::face::subtrees(&t) {
                    let size = match &part {
                        SubtreePart::Edge(_) => 0,
                        SubtreePart::Vertices(vs) => vs.len(),
                    };
                    if size <= n {
                        let f = Face::vertices_or_edge(part);
                        union.extend(embedded_faces(&t, &f).unwrap());
                    }
                }
                let stage: BTreeSet<Face> = Subobject::filtration_stage(&t, n)
                    .unwrap()
                    .members()
                    .cloned()
                    .collect();
                assert_eq!(union, stage, "tree {t}, stage {n}");
            }
        }
    }

    #[test]
    fn inclusion_chain() {
        for t in enumerate_trees(4, 3)
            .into_iter()
            .filter(|t| t.vertex_count() >= 2)
        {
            let core = Subobject::segal_core(&t);
            let ext = Subobject::external_boundary(&t);
            let full = Subobject::full(&t);
            assert!(ext.contains(&core).unwrap());
            for e in t.inner_edges() {
                let horn = Subobject::inner_horn(&t, e).unwrap();
                assert!(horn.contains(&ext).unwrap());
                assert!(full.contains(&horn).unwrap());
                assert_ne!(horn, full);
            }
        }
    }

    #[test]
    fn constructors_are_downward_closed() {
        for t in enumerate_trees(3, 3) {
            assert!(Subobject::boundary(&t).is_downward_closed().unwrap());
            assert!(Subobject::segal_core(&t).is_downward_closed().unwrap());
            assert!(Subobject::external_boundary(&t)
                .is_downward_closed()
                .unwrap());
            for e in t.inner_edges() {
                assert!(Subobject::inner_horn(&t, e)
                    .unwrap()
                    .is_downward_closed()
                    .unwrap());
            }
        }
    }

    #[test]
    fn predicates_match_constructors() {
        for t in enumerate_trees(3, 3) {
            let all = faces(&t);
            let b = Subobject::boundary(&t);
            let ext = Subobject::external_boundary(&t);
            let core = Subobject::segal_core(&t);
            for f in &all {
                assert_eq!(b.is_member(f), is_boundary_member(&t, f));
                assert_eq!(ext.is_member(f), is_external_boundary_member(&t, f));
                assert_eq!(core.is_member(f), is_segal_core_member(f));
            }
            for e in t.inner_edges() {
                let horn = Subobject::inner_horn(&t, e).unwrap();
                for f in &all {
                    assert_eq!(horn.is_member(f), is_inner_horn_member(&t, f, e));
                }
            }
        }
    }

    #[test]
    fn corolla_faces_of_the_core_meet_in_at_most_an_eta() {
        for t in enumerate_trees(4, 3)
            .into_iter()
            .filter(|t| t.vertex_count() >= 2)
        {
            let corolla_faces: Vec<Face> = Subobject::segal_core(&t)
                .members()
                .filter(|f| f.subtree_vertex_count() == 1)
                .cloned()
                .collect();
            for (i, f) in corolla_faces.iter().enumerate() {
                for g in &corolla_faces[i + 1..] {
                    let fa: BTreeSet<Face> = embedded_faces(&t, f).unwrap().into_iter().collect();
                    let ga: BTreeSet<Face> = embedded_faces(&t, g).unwrap().into_iter().collect();
                    let meet: Vec<&Face> = fa.intersection(&ga).collect();
                    // Empty, or a single η-face.
                    assert!(meet.len() <= 1);
                    if let Some(only) = meet.first() {
                        assert!(matches!(only.part(), SubtreePart::Edge(_)));
                    }
                }
            }
        }
    }

    #[test]
    fn union_of_core_and_boundary_is_boundary() {
        for t in enumerate_trees(3, 3)
            .into_iter()
            .filter(|t| t.vertex_count() >= 2)
        {
            let core = Subobject::segal_core(&t);
            let boundary = Subobject::boundary(&t);
            assert_eq!(core.union(&boundary).unwrap(), boundary);
        }
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let a = Subobject::boundary(&Tree::linear(2));
        let b = Subobject::boundary(&Tree::corolla(2));
        assert!(matches!(a.union(&b), Err(Error::AmbientMismatch(..))));
    }

    #[test]
    fn constructors_commute_with_isomorphisms() {
        let t = Tree::parse("r(a(x,y),b)").unwrap();
        let s = Tree::parse("w(q,p(m,n))").unwrap();
        let isos = t.isomorphisms_to(&s);
        assert!(!isos.is_empty());
        for iso in &isos {
            let transported: BTreeSet<Face> = Subobject::segal_core(&t)
                .members()
                .map(|f| crate::face::transport_face(&t, &s, iso, f))
                .collect();
            let direct: BTreeSet<Face> = Subobject::segal_core(&s).members().cloned().collect();
            assert_eq!(transported, direct);
            let transported_b: BTreeSet<Face> = Subobject::boundary(&t)
                .members()
                .map(|f| crate::face::transport_face(&t, &s, iso, f))
                .collect();
            let direct_b: BTreeSet<Face> = Subobject::boundary(&s).members().cloned().collect();
            assert_eq!(transported_b, direct_b);
        }
    }

    #[test]
    fn wire_round_trip() {
        let t = Tree::parse("r(a(x,y),b)").unwrap();
        for sub in [
            Subobject::boundary(&t),
            Subobject::segal_core(&t),
            Subobject::external_boundary(&t),
        ] {
            let wire = sub.to_wire();
            assert_eq!(Subobject::from_wire(&wire).unwrap(), sub);
            let json = serde_json::to_string(&wire).unwrap();
            let back: SubobjectWire = serde_json::from_str(&json).unwrap();
            assert_eq!(back, wire);
        }
    }
}
