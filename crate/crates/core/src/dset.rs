//! Evaluatable dendroidal sets and the checks built on them.
//!
//! A [`DendroidalSetView`] exposes a presheaf through two operations:
//! `evaluate` lists the dendrices at a tree, `act` restricts a dendrex along
//! an [`Arrow`]. Three implementations are provided: [`NerveView`] for
//! operad nerves, [`SubobjectView`] for representables and their sieves
//! (dendrices are arrows into the ambient tree landing in the sieve), and
//! [`tabulated::TabulatedView`] for presheaves loaded from action tables.
//!
//! Maps out of a sieve ([`SieveMap`]) are stored on the monic part only:
//! an assignment of a dendrex to every face, natural for face composition.
//! Values on degenerate dendrices are forced because degeneracies are split
//! surjections; a regression test guards this convention on nerves.

pub mod tabulated;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Debug;

use crate::arrow::{simplicial_degeneracy, simplicial_face, Arrow};
use crate::face::{compose_faces, face_domain, faces, Face};
use crate::operad::{nerve_act, nerve_evaluate, ColouredOperad, Labeling};
use crate::report::{
    FixedPoint, HornWitness, KanEntry, KanReport, NormalityEntry, NormalityReport,
    RestrictionLevel, RestrictionReport, SegalReport, SegalTreeReport, SegalWitness,
};
use crate::subobject::{maximal_faces, Subobject};
use crate::tree::{enumerate_trees, Tree};
use crate::{Error, Result};

/// Evaluation contract for a finite dendroidal set.
pub trait DendroidalSetView {
    type Dendrex: Clone + Ord + Debug;

    fn view_name(&self) -> String;

    /// Largest vertex arity at which evaluation is meaningful.
    fn max_arity(&self) -> usize;

    /// The dendrices at a tree, in a deterministic order.
    fn evaluate(&self, tree: &Tree) -> Result<Vec<Self::Dendrex>>;

    /// Contravariant action: restricts a dendrex at the arrow's codomain to
    /// one at its domain.
    fn act(&self, arrow: &Arrow, dendrex: &Self::Dendrex) -> Result<Self::Dendrex>;

    /// Human-readable witness label.
    fn label(&self, tree: &Tree, dendrex: &Self::Dendrex) -> String;
}

/// The dendroidal nerve of a finite coloured operad.
pub struct NerveView<'a> {
    pub operad: &'a ColouredOperad,
}

impl<'a> NerveView<'a> {
    pub fn new(operad: &'a ColouredOperad) -> Self {
        NerveView { operad }
    }
}

impl DendroidalSetView for NerveView<'_> {
    type Dendrex = Labeling;

    fn view_name(&self) -> String {
        format!("nerve({})", self.operad.name)
    }

    fn max_arity(&self) -> usize {
        self.operad.max_arity
    }

    fn evaluate(&self, tree: &Tree) -> Result<Vec<Labeling>> {
        nerve_evaluate(self.operad, tree)
    }

    fn act(&self, arrow: &Arrow, dendrex: &Labeling) -> Result<Labeling> {
        nerve_act(self.operad, arrow, dendrex)
    }

    fn label(&self, tree: &Tree, dendrex: &Labeling) -> String {
        dendrex.render(tree, self.operad)
    }
}

/// A subobject of a representable, viewed as a dendroidal set: the dendrices
/// at `S` are the arrows `S → T` whose monic image lies in the sieve. This
/// keeps degenerate dendrices (collapsing arrows) so that degeneracy actions
/// and normality are meaningful, and automorphisms act freely on arrows
/// exactly when they should.
pub struct SubobjectView {
    sub: Subobject,
    arity_bound: usize,
}

impl SubobjectView {
    pub fn new(sub: Subobject) -> Result<SubobjectView> {
        let tree = sub.tree().clone();
        let mut arity_bound = 1;
        for f in faces(&tree) {
            arity_bound = arity_bound.max(face_domain(&tree, &f)?.tree.max_arity());
        }
        Ok(SubobjectView { sub, arity_bound })
    }

    pub fn representable(tree: &Tree) -> Result<SubobjectView> {
        SubobjectView::new(Subobject::full(tree))
    }

    pub fn subobject(&self) -> &Subobject {
        &self.sub
    }
}

impl DendroidalSetView for SubobjectView {
    type Dendrex = Arrow;

    fn view_name(&self) -> String {
        format!(
            "subobject({}, {} faces)",
            self.sub.tree().literal(),
            self.sub.size()
        )
    }

    fn max_arity(&self) -> usize {
        self.arity_bound
    }

    fn evaluate(&self, tree: &Tree) -> Result<Vec<Arrow>> {
        Ok(crate::arrow::enumerate_arrows(tree, self.sub.tree())
            .into_iter()
            .filter(|arrow| self.sub.is_member(&arrow.image_face()))
            .collect())
    }

    fn act(&self, arrow: &Arrow, dendrex: &Arrow) -> Result<Arrow> {
        arrow.then(dendrex)
    }

    fn label(&self, _tree: &Tree, dendrex: &Arrow) -> String {
        dendrex
            .name_map()
            .into_iter()
            .map(|(a, b)| format!("{a}→{b}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// A natural assignment of dendrices to the faces of a sieve.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SieveMap<D> {
    pub assignments: BTreeMap<Face, D>,
}

impl<D> SieveMap<D> {
    pub fn render<V>(&self, view: &V, tree: &Tree) -> BTreeMap<String, String>
    where
        V: DendroidalSetView<Dendrex = D>,
    {
        self.assignments
            .iter()
            .map(|(face, d)| {
                let key = serde_json::to_string(&face.to_wire(tree)).expect("face serializes");
                let dom = face_domain(tree, face).expect("valid face").tree;
                (key, view.label(&dom, d))
            })
            .collect()
    }
}

/// All maps from a sieve into a view: choose dendrices on the maximal faces,
/// prune on conflicts while forcing all composites downward.
pub fn hom_from_subobject<V: DendroidalSetView>(
    a: &Subobject,
    view: &V,
) -> Result<Vec<SieveMap<V::Dendrex>>> {
    let tree = a.tree();
    let maximal = maximal_faces(a)?;
    let mut results = Vec::new();
    let mut assigned: BTreeMap<Face, V::Dendrex> = BTreeMap::new();
    extend_hom(tree, a, view, &maximal, 0, &mut assigned, &mut results)?;
    results.sort();
    Ok(results)
}

fn extend_hom<V: DendroidalSetView>(
    tree: &Tree,
    a: &Subobject,
    view: &V,
    maximal: &[Face],
    k: usize,
    assigned: &mut BTreeMap<Face, V::Dendrex>,
    results: &mut Vec<SieveMap<V::Dendrex>>,
) -> Result<()> {
    if k == maximal.len() {
        debug_assert!(a.members().all(|f| assigned.contains_key(f)));
        results.push(SieveMap {
            assignments: assigned.clone(),
        });
        return Ok(());
    }
    let m = &maximal[k];
    let domain = face_domain(tree, m)?;
    for d in view.evaluate(&domain.tree)? {
        let mut additions: Vec<Face> = Vec::new();
        let mut consistent = true;
        for g in faces(&domain.tree) {
            let composite = compose_faces(tree, m, &g)?;
            let value = view.act(&Arrow::from_face(&domain.tree, &g)?, &d)?;
            match assigned.get(&composite) {
                Some(existing) if *existing != value => {
                    consistent = false;
                    break;
                }
                Some(_) => {}
                None => {
                    assigned.insert(composite.clone(), value);
                    additions.push(composite);
                }
            }
        }
        if consistent {
            extend_hom(tree, a, view, maximal, k + 1, assigned, results)?;
        }
        for f in additions {
            assigned.remove(&f);
        }
    }
    Ok(())
}

/// Restriction of a dendrex at `tree` to a sieve map over `a`.
pub fn restrict_to_subobject<V: DendroidalSetView>(
    a: &Subobject,
    view: &V,
    dendrex: &V::Dendrex,
) -> Result<SieveMap<V::Dendrex>> {
    let tree = a.tree();
    let mut assignments = BTreeMap::new();
    for f in a.members() {
        let arrow = Arrow::from_face(tree, f)?;
        assignments.insert(f.clone(), view.act(&arrow, dendrex)?);
    }
    Ok(SieveMap { assignments })
}

/// The Segal map `X(T) → Hom(Sc[T], X)` with its bijectivity verdict.
pub fn segal_map<V: DendroidalSetView>(view: &V, tree: &Tree) -> Result<SegalTreeReport> {
    if tree.vertex_count() == 0 {
        return Err(Error::Evaluation(
            "the Segal map is defined for trees with at least one vertex".into(),
        ));
    }
    let core = Subobject::segal_core(tree);
    let homs = hom_from_subobject(&core, view)?;
    let dendrices = view.evaluate(tree)?;
    let mut by_restriction: BTreeMap<SieveMap<V::Dendrex>, Vec<usize>> = BTreeMap::new();
    for (i, d) in dendrices.iter().enumerate() {
        by_restriction
            .entry(restrict_to_subobject(&core, view, d)?)
            .or_default()
            .push(i);
    }
    let mut witnesses = Vec::new();
    let mut injective = true;
    for hits in by_restriction.values() {
        for pair in hits.windows(2) {
            injective = false;
            witnesses.push(SegalWitness::EqualRestrictions {
                first: view.label(tree, &dendrices[pair[0]]),
                second: view.label(tree, &dendrices[pair[1]]),
            });
        }
    }
    let mut surjective = true;
    for h in &homs {
        if !by_restriction.contains_key(h) {
            surjective = false;
            witnesses.push(SegalWitness::UnreachedFamily {
                assignment: h.render(view, tree),
            });
        }
    }
    Ok(SegalTreeReport {
        tree: tree.literal(),
        dendrex_count: dendrices.len(),
        hom_count: homs.len(),
        injective,
        surjective,
        bijective: injective && surjective,
        witnesses,
    })
}

/// Is the view the nerve of an operad, as seen through Segal maps at every
/// tree in the bounded corpus?
pub fn segal_char_check<V: DendroidalSetView>(
    view: &V,
    max_vertices: usize,
    max_arity: usize,
) -> Result<SegalReport> {
    let arity = max_arity.min(view.max_arity());
    let mut trees = Vec::new();
    for t in enumerate_trees(max_vertices, arity) {
        if t.vertex_count() == 0 {
            continue;
        }
        trees.push(segal_map(view, &t)?);
    }
    Ok(SegalReport {
        view: view.view_name(),
        max_vertices,
        max_arity: arity,
        all_bijective: trees.iter().all(|t| t.bijective),
        trees,
    })
}

/// Does every face of the tree have a domain the view can evaluate?
pub fn supports_all_face_domains(view_arity: usize, tree: &Tree) -> Result<bool> {
    for f in faces(tree) {
        if face_domain(tree, &f)?.tree.max_arity() > view_arity {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Inner-horn filling over the bounded corpus: for every inner edge, every
/// map out of the horn, count the fillers.
pub fn inner_kan_check<V: DendroidalSetView>(
    view: &V,
    max_vertices: usize,
    max_arity: usize,
) -> Result<KanReport> {
    let arity = max_arity.min(view.max_arity());
    let mut entries = Vec::new();
    let mut skipped = Vec::new();
    for t in enumerate_trees(max_vertices, arity) {
        if t.vertex_count() < 2 {
            continue;
        }
        if !supports_all_face_domains(view.max_arity(), &t)? {
            skipped.push(t.literal());
            continue;
        }
        let dendrices = view.evaluate(&t)?;
        for e in t.inner_edges() {
            let horn = Subobject::inner_horn(&t, e)?;
            let homs = hom_from_subobject(&horn, view)?;
            let maximal = maximal_faces(&horn)?;
            let arrows: Vec<Arrow> = maximal
                .iter()
                .map(|m| Arrow::from_face(&t, m))
                .collect::<Result<_>>()?;
            // Index dendrices by their restriction to the maximal horn
            // faces; a horn map's fillers all share its key.
            let mut by_restriction: BTreeMap<Vec<V::Dendrex>, usize> = BTreeMap::new();
            for d in &dendrices {
                let key = arrows
                    .iter()
                    .map(|a| view.act(a, d))
                    .collect::<Result<Vec<_>>>()?;
                *by_restriction.entry(key).or_default() += 1;
            }
            let mut fillable = 0;
            let mut unique = true;
            let mut unfillable = Vec::new();
            for h in &homs {
                let key: Vec<V::Dendrex> =
                    maximal.iter().map(|m| h.assignments[m].clone()).collect();
                let fillers = by_restriction.get(&key).copied().unwrap_or(0);
                if fillers >= 1 {
                    fillable += 1;
                } else {
                    unfillable.push(HornWitness {
                        assignment: h.render(view, &t),
                    });
                }
                if fillers > 1 {
                    unique = false;
                }
            }
            entries.push(KanEntry {
                tree: t.literal(),
                edge: t.edge_name(e).to_string(),
                horn_maps: homs.len(),
                fillable,
                unique_fillers: unique,
                unfillable,
            });
        }
    }
    Ok(KanReport {
        view: view.view_name(),
        max_vertices,
        max_arity: arity,
        all_fill: entries.iter().all(|e| e.unfillable.is_empty()),
        all_unique: entries.iter().all(|e| e.unique_fillers),
        skipped_trees: skipped,
        entries,
    })
}

/// Does every tree's automorphism group act freely on the nondegenerate
/// dendrices?
pub fn normality_check<V: DendroidalSetView>(
    view: &V,
    max_vertices: usize,
    max_arity: usize,
) -> Result<NormalityReport> {
    let arity = max_arity.min(view.max_arity());
    let mut entries = Vec::new();
    for t in enumerate_trees(max_vertices, arity) {
        let all = view.evaluate(&t)?;
        let mut degenerate: BTreeSet<V::Dendrex> = BTreeSet::new();
        for v in t.vertex_ids() {
            if t.arity(v) != 1 {
                continue;
            }
            let sigma = Arrow::degeneracy(&t, v)?;
            for y in view.evaluate(sigma.cod())? {
                degenerate.insert(view.act(&sigma, &y)?);
            }
        }
        let nondegenerate: Vec<&V::Dendrex> =
            all.iter().filter(|d| !degenerate.contains(d)).collect();
        let mut fixed_points = Vec::new();
        let identity: Vec<crate::tree::EdgeId> = t.edges().collect();
        for auto in t.automorphisms() {
            if auto == identity {
                continue;
            }
            let arrow = Arrow::iso(&t, &t, auto.clone())?;
            for d in &nondegenerate {
                if view.act(&arrow, d)? == **d {
                    fixed_points.push(FixedPoint {
                        automorphism: t.render_edge_map(&t, &auto),
                        dendrex: view.label(&t, d),
                    });
                }
            }
        }
        entries.push(NormalityEntry {
            tree: t.literal(),
            nondegenerate: nondegenerate.len(),
            free: fixed_points.is_empty(),
            fixed_points,
        });
    }
    Ok(NormalityReport {
        view: view.view_name(),
        max_vertices,
        max_arity: arity,
        normal: entries.iter().all(|e| e.free),
        entries,
    })
}

/// The underlying simplicial set: levels are the values on linear trees,
/// with face and degeneracy actions restricted from the tree category. The
/// simplicial identities are verified on the tabulated actions: any two
/// generator composites with the same underlying edge map must act
/// identically.
pub fn simplicial_restriction<V: DendroidalSetView>(
    view: &V,
    max_n: usize,
) -> Result<RestrictionReport> {
    let mut levels = Vec::new();
    let mut values: Vec<Vec<V::Dendrex>> = Vec::new();
    for n in 0..=max_n {
        values.push(view.evaluate(&Tree::linear(n))?);
    }
    for (n, value) in values.iter().enumerate() {
        let mut degenerate: BTreeSet<V::Dendrex> = BTreeSet::new();
        if n >= 1 {
            for i in 0..n {
                let sigma = simplicial_degeneracy(n - 1, i);
                for y in &values[n - 1] {
                    degenerate.insert(view.act(&sigma, y)?);
                }
            }
        }
        let tree = Tree::linear(n);
        levels.push(RestrictionLevel {
            n,
            total: value.len(),
            nondegenerate: value.iter().filter(|d| !degenerate.contains(d)).count(),
            dendrices: value.iter().map(|d| view.label(&tree, d)).collect(),
        });
    }
    // Generators within the window, with the level they act on.
    let mut generators: Vec<(String, Arrow)> = Vec::new();
    for n in 1..=max_n {
        for i in 0..=n {
            generators.push((format!("d{i}@{n}"), simplicial_face(n, i)));
        }
    }
    for n in 0..max_n {
        for i in 0..=n {
            generators.push((format!("s{i}@{n}"), simplicial_degeneracy(n, i)));
        }
    }
    // Group length-2 composites by their underlying edge map and demand
    // equal actions within each group.
    type CompositeKey = (String, String, Vec<(String, String)>);
    let mut groups: BTreeMap<CompositeKey, Vec<(String, Arrow)>> = BTreeMap::new();
    for (name1, g1) in &generators {
        for (name2, g2) in &generators {
            if g1.cod() != g2.dom() {
                continue;
            }
            let composite = g1.then(g2)?;
            if composite.cod().vertex_count() > max_n {
                continue;
            }
            let key = (
                composite.dom().literal(),
                composite.cod().literal(),
                composite
                    .name_map()
                    .into_iter()
                    .collect::<Vec<(String, String)>>(),
            );
            groups
                .entry(key)
                .or_default()
                .push((format!("{name1};{name2}"), composite));
        }
    }
    let mut failures = Vec::new();
    for ((_, cod_literal, _), group) in &groups {
        if group.len() < 2 {
            continue;
        }
        let cod_tree = Tree::parse(cod_literal)?;
        let level = cod_tree.vertex_count();
        let (first_name, first) = &group[0];
        for (other_name, other) in &group[1..] {
            for x in &values[level] {
                if view.act(first, x)? != view.act(other, x)? {
                    failures.push(format!(
                        "{first_name} and {other_name} disagree at level {level}"
                    ));
                    break;
                }
            }
        }
    }
    Ok(RestrictionReport {
        view: view.view_name(),
        max_n,
        identities_ok: failures.is_empty(),
        identity_failures: failures,
        levels,
    })
}
