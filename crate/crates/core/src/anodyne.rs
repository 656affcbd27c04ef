//! Inner-anodyne certificates.
//!
//! A certificate witnesses that an inclusion of subobjects `A ⟶ B` of a
//! representable is a finite composition of pushouts of inner-horn
//! inclusions. Each [`ExpansionStep`] names a face `(F, D)` and an inner
//! edge `e` of its domain; applying it to `A` requires every face of the
//! horn `Λᵉ[F/D]`, composed into the ambient tree, to be present already,
//! and adds exactly the two faces `(F, D)` and `(F, D ∪ {e})`.
//!
//! The searcher processes missing faces by increasing subtree vertex count
//! (the vertex-count filtration of the representable) and, within a subtree,
//! by decreasing contraction-set size, with bounded backtracking behind the
//! greedy order. A `NotFound` outcome only means no pure pushout-composition
//! certificate was found within the budget — retract closure is not
//! searched, so it is not a proof of non-anodyneness.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::face::{compose_faces, face_domain, faces, Face, FaceDomain, FaceWire};
use crate::subobject::{domain_inner_edges, Subobject, SubobjectWire};
use crate::tree::{EdgeId, Tree};
use crate::{Error, Result};

/// One inner-horn pushout: expand along the inner edge `inner_edge` of the
/// domain of `face`. The edge is identified by its ambient name (domains
/// keep surviving ambient names).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ExpansionStep {
    pub face: Face,
    pub inner_edge: EdgeId,
}

impl ExpansionStep {
    /// The partner face added together with `face`: same subtree, the inner
    /// edge joined to the contraction set.
    pub fn partner(&self) -> Face {
        match self.face.part() {
            crate::face::SubtreePart::Edge(_) => unreachable!("η-faces admit no steps"),
            crate::face::SubtreePart::Vertices(vs) => {
                let mut contracted = self.face.contracted().clone();
                contracted.insert(self.inner_edge);
                Face::vertices(vs.clone(), contracted)
            }
        }
    }
}

/// An ordered list of expansion steps from `start` to `end`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub tree: Tree,
    pub start: Subobject,
    pub steps: Vec<ExpansionStep>,
    pub end: Subobject,
}

impl Certificate {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn to_wire(&self) -> CertificateWire {
        CertificateWire {
            tree: self.tree.literal(),
            start: self.start.to_wire(),
            steps: self
                .steps
                .iter()
                .map(|s| StepWire {
                    face: s.face.to_wire(&self.tree),
                    inner_edge: self.tree.edge_name(s.inner_edge).to_string(),
                })
                .collect(),
            end: self.end.to_wire(),
        }
    }

    pub fn from_wire(wire: &CertificateWire) -> Result<Certificate> {
        let tree = Tree::parse(&wire.tree)?;
        let start = Subobject::from_wire(&wire.start)?;
        let end = Subobject::from_wire(&wire.end)?;
        let steps = wire
            .steps
            .iter()
            .map(|s| {
                Ok(ExpansionStep {
                    face: Face::from_wire(&s.face, &tree)?,
                    inner_edge: tree.edge_by_name(&s.inner_edge)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Certificate {
            tree,
            start,
            steps,
            end,
        })
    }
}

/// Wire format: stable field order, replayable bit-exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateWire {
    pub tree: String,
    pub start: SubobjectWire,
    pub steps: Vec<StepWire>,
    pub end: SubobjectWire,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepWire {
    pub face: FaceWire,
    pub inner_edge: String,
}

/// Checks the step preconditions against `a` and returns the expanded
/// subobject. Errors name the offending face.
pub fn apply_step(a: &Subobject, step: &ExpansionStep) -> Result<Subobject> {
    let tree = a.tree();
    crate::face::validate_face(tree, &step.face)?;
    let inner = domain_inner_edges(tree, &step.face);
    if !inner.contains(&step.inner_edge) {
        return Err(Error::InvalidStep(format!(
            "edge `{}` is not an inner edge of the step's domain",
            tree.edge_name(step.inner_edge)
        )));
    }
    let partner = step.partner();
    if a.is_member(&step.face) {
        return Err(Error::InvalidStep(format!(
            "face {} is already present",
            wire_string(tree, &step.face)
        )));
    }
    if a.is_member(&partner) {
        return Err(Error::InvalidStep(format!(
            "face {} is already present",
            wire_string(tree, &partner)
        )));
    }
    let domain = face_domain(tree, &step.face)?;
    let missing = first_missing_horn_face(a, &step.face, &domain, step.inner_edge)?;
    if let Some(face) = missing {
        return Err(Error::InvalidStep(format!(
            "horn face {} is missing",
            wire_string(tree, &face)
        )));
    }
    let mut expanded = a.clone();
    expanded.insert_raw(step.face.clone());
    expanded.insert_raw(partner);
    Ok(expanded)
}

fn wire_string(tree: &Tree, face: &Face) -> String {
    serde_json::to_string(&face.to_wire(tree)).expect("face wire serializes")
}

/// First face of `Λᵉ[F/D]` (composed into the ambient tree) missing from
/// `a`, if any.
fn first_missing_horn_face(
    a: &Subobject,
    face: &Face,
    domain: &FaceDomain,
    inner_edge: EdgeId,
) -> Result<Option<Face>> {
    let tree = a.tree();
    let domain_edge = domain
        .tree
        .edge_by_name(tree.edge_name(inner_edge))
        .expect("inner edge survives in the domain");
    let internal = Face::vertices(
        domain.tree.vertex_ids().collect(),
        std::iter::once(domain_edge).collect(),
    );
    let identity = Face::identity(&domain.tree);
    for g in faces(&domain.tree) {
        if g == identity || g == internal {
            continue;
        }
        let composite = compose_faces(tree, face, &g)?;
        if !a.is_member(&composite) {
            return Ok(Some(composite));
        }
    }
    Ok(None)
}

/// Search outcome: a certificate, or an honest failure report.
#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
pub enum CertifyOutcome {
    Found(Certificate),
    /// No pure pushout-composition certificate found. When `exhausted` is
    /// true the whole (memoized) search space was visited; either way this
    /// does not rule out certificates using retracts.
    NotFound {
        nodes: usize,
        exhausted: bool,
    },
}

/// Search budget for [`certify_inner_anodyne_with_budget`].
pub const DEFAULT_SEARCH_BUDGET: usize = 100_000;

pub fn certify_inner_anodyne(a: &Subobject, b: &Subobject) -> Result<CertifyOutcome> {
    certify_inner_anodyne_with_budget(a, b, DEFAULT_SEARCH_BUDGET)
}

pub fn certify_inner_anodyne_with_budget(
    a: &Subobject,
    b: &Subobject,
    budget: usize,
) -> Result<CertifyOutcome> {
    if a.tree() != b.tree() {
        return Err(Error::AmbientMismatch(
            a.tree().literal(),
            b.tree().literal(),
        ));
    }
    if !b.contains(a)? {
        return Err(Error::Certify("start is not contained in end".into()));
    }
    if !a.is_downward_closed()? {
        return Err(Error::Certify("start is not downward closed".into()));
    }
    if !b.is_downward_closed()? {
        return Err(Error::Certify("end is not downward closed".into()));
    }
    let tree = a.tree().clone();
    let target: BTreeSet<Face> = b.members().cloned().collect();
    let mut searcher = Searcher {
        tree: &tree,
        target: &target,
        domains: BTreeMap::new(),
        visited: BTreeSet::new(),
        nodes: 0,
        budget,
        exhausted: true,
    };
    let mut current: BTreeSet<Face> = a.members().cloned().collect();
    let mut steps = Vec::new();
    let found = searcher.search(&mut current, &mut steps)?;
    if found {
        let certificate = Certificate {
            tree,
            start: a.clone(),
            steps,
            end: b.clone(),
        };
        Ok(CertifyOutcome::Found(certificate))
    } else {
        Ok(CertifyOutcome::NotFound {
            nodes: searcher.nodes,
            exhausted: searcher.exhausted,
        })
    }
}

struct Searcher<'t> {
    tree: &'t Tree,
    target: &'t BTreeSet<Face>,
    domains: BTreeMap<Face, (FaceDomain, Vec<Face>)>,
    visited: BTreeSet<BTreeSet<Face>>,
    nodes: usize,
    budget: usize,
    exhausted: bool,
}

impl<'t> Searcher<'t> {
    fn domain_data(&mut self, face: &Face) -> Result<&(FaceDomain, Vec<Face>)> {
        if !self.domains.contains_key(face) {
            let domain = face_domain(self.tree, face)?;
            let domain_faces = faces(&domain.tree);
            self.domains.insert(face.clone(), (domain, domain_faces));
        }
        Ok(&self.domains[face])
    }

    fn search(
        &mut self,
        current: &mut BTreeSet<Face>,
        steps: &mut Vec<ExpansionStep>,
    ) -> Result<bool> {
        if current == self.target {
            return Ok(true);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = false;
            return Ok(false);
        }
        if !self.visited.insert(current.clone()) {
            return Ok(false);
        }
        // Candidate faces in filtration order: increasing subtree vertex
        // count, then decreasing contraction-set size.
        let mut missing: Vec<&Face> = self.target.difference(current).collect();
        missing.sort_by_key(|f| {
            (
                f.subtree_vertex_count(),
                std::cmp::Reverse(f.contracted().len()),
                (*f).clone(),
            )
        });
        let candidates: Vec<Face> = missing.into_iter().cloned().collect();
        for face in candidates {
            if face.subtree_vertex_count() < 2 {
                continue; // too small to have an inner edge
            }
            let inner: Vec<EdgeId> = domain_inner_edges(self.tree, &face).into_iter().collect();
            for e in inner {
                let step = ExpansionStep {
                    face: face.clone(),
                    inner_edge: e,
                };
                let partner = step.partner();
                if current.contains(&face) || current.contains(&partner) {
                    continue;
                }
                if !self.target.contains(&partner) {
                    continue;
                }
                if !self.horn_filled(current, &face, e)? {
                    continue;
                }
                current.insert(face.clone());
                current.insert(partner.clone());
                steps.push(step);
                if self.search(current, steps)? {
                    return Ok(true);
                }
                steps.pop();
                current.remove(&face);
                current.remove(&partner);
            }
        }
        Ok(false)
    }

    fn horn_filled(&mut self, current: &BTreeSet<Face>, face: &Face, e: EdgeId) -> Result<bool> {
        let tree = self.tree;
        let edge_name = tree.edge_name(e).to_string();
        let (domain, domain_faces) = self.domain_data(face)?;
        let domain_edge = domain
            .tree
            .edge_by_name(&edge_name)
            .expect("inner edge survives in the domain");
        let internal = Face::vertices(
            domain.tree.vertex_ids().collect(),
            std::iter::once(domain_edge).collect(),
        );
        let identity = Face::identity(&domain.tree);
        let checks: Vec<Face> = domain_faces
            .iter()
            .filter(|g| **g != identity && **g != internal)
            .cloned()
            .collect();
        for g in checks {
            let composite = compose_faces(tree, face, &g)?;
            if !current.contains(&composite) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Replay report: where verification failed, if it did.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub ok: bool,
    pub steps_checked: usize,
    pub failure: Option<VerifyFailure>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyFailure {
    /// `"start"`, `"step"` or `"end"`.
    pub stage: String,
    pub step_index: Option<usize>,
    pub reason: String,
}

/// Independent replay: checks that the start set is downward closed, every
/// step's preconditions hold in order, and the final set equals `end`.
/// Failures are reported, never thrown.
pub fn verify_certificate(certificate: &Certificate) -> VerifyReport {
    let fail = |stage: &str, index: Option<usize>, reason: String| VerifyReport {
        ok: false,
        steps_checked: index.unwrap_or(0),
        failure: Some(VerifyFailure {
            stage: stage.into(),
            step_index: index,
            reason,
        }),
    };
    if certificate.start.tree() != &certificate.tree || certificate.end.tree() != &certificate.tree
    {
        return fail(
            "start",
            None,
            "subobjects are not over the certificate's tree".into(),
        );
    }
    match certificate.start.is_downward_closed() {
        Ok(true) => {}
        Ok(false) => return fail("start", None, "start is not downward closed".into()),
        Err(e) => return fail("start", None, e.to_string()),
    }
    let mut current = certificate.start.clone();
    for (i, step) in certificate.steps.iter().enumerate() {
        match apply_step(&current, step) {
            Ok(next) => current = next,
            Err(e) => return fail("step", Some(i), e.to_string()),
        }
    }
    if current != certificate.end {
        return fail(
            "end",
            None,
            format!(
                "replay ends with {} faces, expected {}",
                current.size(),
                certificate.end.size()
            ),
        );
    }
    VerifyReport {
        ok: true,
        steps_checked: certificate.steps.len(),
        failure: None,
    }
}
