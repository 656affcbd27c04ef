//! Finite coloured symmetric operads with extensional structure tables.
//!
//! Operations are stored up to a maximum arity; partial composites whose
//! arity would exceed the bound are simply absent from the table, and every
//! axiom is checked on the instances whose intermediate composites all stay
//! within range. Permutations are written `σ` with `(p·σ).inputs[k] =
//! p.inputs[σ[k]]` (new slot `k` reads old slot `σ[k]`), which makes `·` a
//! right action under `(σ·τ)[k] = σ[τ[k]]`.
//!
//! A [`Labeling`] of a tree colours every edge and assigns every vertex an
//! operation whose signature matches in stored input order; comparing
//! labelings this way quotients the per-vertex input matchings by the
//! symmetric action. [`nerve_evaluate`] lists all labelings,
//! and [`nerve_act`] restricts a labeling along any arrow by evaluating the
//! labeled cut over each vertex image.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::arrow::Arrow;
use crate::tree::{EdgeId, Tree};
use crate::{Error, Result};

pub use crate::dset::segal_char_check;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColourId(pub(crate) usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OpId(pub(crate) usize);

impl ColourId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl OpId {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Operation {
    pub name: String,
    pub inputs: Vec<ColourId>,
    pub output: ColourId,
}

/// A permutation as a lookup table: new slot → old slot.
pub type Perm = Vec<usize>;

/// Right-action composition: `(p·σ)·τ = p·(σ∘τ)` with `(σ∘τ)[k] = σ[τ[k]]`.
pub fn compose_perms(sigma: &Perm, tau: &Perm) -> Perm {
    tau.iter().map(|&k| sigma[k]).collect()
}

pub fn identity_perm(n: usize) -> Perm {
    (0..n).collect()
}

/// All permutations of `n` slots, lexicographically.
pub fn all_perms(n: usize) -> Vec<Perm> {
    (0..n)
        .permutations(n)
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

/// The permutation of `n+m−1` slots induced on `(p·σ) ∘_i q` so that it
/// equals `(p ∘_{σ[i]} q) · outer_induced(σ, i, m)`.
pub fn outer_induced(sigma: &Perm, i: usize, m: usize) -> Perm {
    let n = sigma.len();
    let pivot = sigma[i];
    let adjust = |t: usize| if t < pivot { t } else { t + m - 1 };
    let mut out = Vec::with_capacity(n + m - 1);
    out.extend(sigma[..i].iter().map(|&t| adjust(t)));
    out.extend((0..m).map(|t| pivot + t));
    out.extend(sigma[i + 1..].iter().map(|&t| adjust(t)));
    out
}

/// The permutation of `n+m−1` slots induced on `p ∘_i (q·τ)` so that it
/// equals `(p ∘_i q) · inner_induced(n, i, τ)`.
pub fn inner_induced(n: usize, i: usize, tau: &Perm) -> Perm {
    let m = tau.len();
    let mut out = Vec::with_capacity(n + m - 1);
    for k in 0..(n + m - 1) {
        if k < i || k >= i + m {
            out.push(k);
        } else {
            out.push(i + tau[k - i]);
        }
    }
    out
}

/// A finite coloured symmetric operad, all structure tabulated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColouredOperad {
    pub name: String,
    pub max_arity: usize,
    colours: Vec<String>,
    operations: Vec<Operation>,
    /// Identity operation per colour.
    identities: Vec<OpId>,
    /// (p, slot, q) → p ∘_slot q, slots 0-based.
    composition: BTreeMap<(OpId, usize, OpId), OpId>,
    /// (p, σ) → p·σ.
    symmetries: BTreeMap<(OpId, Perm), OpId>,
}

impl ColouredOperad {
    pub fn new(
        name: String,
        max_arity: usize,
        colours: Vec<String>,
        operations: Vec<Operation>,
        identities: Vec<OpId>,
        composition: BTreeMap<(OpId, usize, OpId), OpId>,
        symmetries: BTreeMap<(OpId, Perm), OpId>,
    ) -> Result<ColouredOperad> {
        let distinct: BTreeSet<&String> = colours.iter().collect();
        if distinct.len() != colours.len() {
            return Err(Error::Schema("duplicate colour names".into()));
        }
        let distinct_ops: BTreeSet<&String> = operations.iter().map(|o| &o.name).collect();
        if distinct_ops.len() != operations.len() {
            return Err(Error::Schema("duplicate operation names".into()));
        }
        if identities.len() != colours.len() {
            return Err(Error::Schema("one identity per colour is required".into()));
        }
        let in_range = |op: OpId| op.0 < operations.len();
        let colour_in_range = |c: ColourId| c.0 < colours.len();
        for op in &operations {
            if !colour_in_range(op.output) || !op.inputs.iter().all(|&c| colour_in_range(c)) {
                return Err(Error::Schema(format!(
                    "operation `{}` uses unknown colours",
                    op.name
                )));
            }
        }
        if !identities.iter().all(|&op| in_range(op))
            || !composition
                .iter()
                .all(|(&(p, _, q), &r)| in_range(p) && in_range(q) && in_range(r))
            || !symmetries
                .iter()
                .all(|(&(p, _), &r)| in_range(p) && in_range(r))
        {
            return Err(Error::Schema(
                "table entry references an unknown operation".into(),
            ));
        }
        Ok(ColouredOperad {
            name,
            max_arity,
            colours,
            operations,
            identities,
            composition,
            symmetries,
        })
    }

    pub fn colour_count(&self) -> usize {
        self.colours.len()
    }

    pub fn colours(&self) -> impl Iterator<Item = ColourId> {
        (0..self.colours.len()).map(ColourId)
    }

    pub fn colour_name(&self, c: ColourId) -> &str {
        &self.colours[c.0]
    }

    pub fn colour_by_name(&self, name: &str) -> Result<ColourId> {
        self.colours
            .iter()
            .position(|n| n == name)
            .map(ColourId)
            .ok_or_else(|| Error::Schema(format!("unknown colour `{name}`")))
    }

    pub fn ops(&self) -> impl Iterator<Item = OpId> {
        (0..self.operations.len()).map(OpId)
    }

    pub fn op(&self, id: OpId) -> &Operation {
        &self.operations[id.0]
    }

    pub fn op_by_name(&self, name: &str) -> Result<OpId> {
        self.operations
            .iter()
            .position(|o| o.name == name)
            .map(OpId)
            .ok_or_else(|| Error::Schema(format!("unknown operation `{name}`")))
    }

    pub fn arity(&self, id: OpId) -> usize {
        self.operations[id.0].inputs.len()
    }

    pub fn identity(&self, c: ColourId) -> OpId {
        self.identities[c.0]
    }

    pub fn compose(&self, p: OpId, slot: usize, q: OpId) -> Option<OpId> {
        self.composition.get(&(p, slot, q)).copied()
    }

    pub fn act(&self, p: OpId, sigma: &Perm) -> Option<OpId> {
        self.symmetries.get(&(p, sigma.clone())).copied()
    }

    /// Operations with the exact ordered signature.
    pub fn ops_with_signature(&self, inputs: &[ColourId], output: ColourId) -> Vec<OpId> {
        self.ops()
            .filter(|&id| {
                let op = self.op(id);
                op.output == output && op.inputs == inputs
            })
            .collect()
    }
}

/// One violated axiom instance.
#[derive(Debug, Clone, Serialize)]
pub struct Violation {
    pub law: String,
    pub detail: String,
}

/// Validation report: empty iff the operad satisfies every axiom instance
/// expressible within the arity bound.
#[derive(Debug, Clone, Serialize)]
pub struct OperadReport {
    pub operad: String,
    pub violations: Vec<Violation>,
}

impl OperadReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn validate_operad(p: &ColouredOperad) -> OperadReport {
    let mut violations = Vec::new();
    let mut violate = |law: &str, detail: String| {
        violations.push(Violation {
            law: law.into(),
            detail,
        })
    };

    for id in p.ops() {
        if p.arity(id) > p.max_arity {
            violate(
                "arity-bound",
                format!("operation `{}` exceeds the arity bound", p.op(id).name),
            );
        }
    }

    // Identities: unary with signature (c; c).
    for c in p.colours() {
        let id = p.identity(c);
        let op = p.op(id);
        if op.inputs != vec![c] || op.output != c {
            violate(
                "identity-signature",
                format!(
                    "identity of colour `{}` has signature {:?} → {}",
                    p.colour_name(c),
                    op.inputs
                        .iter()
                        .map(|&x| p.colour_name(x))
                        .collect::<Vec<_>>(),
                    p.colour_name(op.output)
                ),
            );
        }
    }

    // Symmetric action: total, identity-fixing, compatible with composition
    // of permutations, and signature-correct.
    for id in p.ops() {
        let n = p.arity(id);
        for sigma in all_perms(n) {
            match p.act(id, &sigma) {
                None => violate(
                    "symmetry-totality",
                    format!("missing action of {:?} on `{}`", sigma, p.op(id).name),
                ),
                Some(r) => {
                    let expected: Vec<ColourId> =
                        sigma.iter().map(|&k| p.op(id).inputs[k]).collect();
                    if p.op(r).inputs != expected || p.op(r).output != p.op(id).output {
                        violate(
                            "symmetry-signature",
                            format!(
                                "`{}`·{:?} = `{}` has the wrong signature",
                                p.op(id).name,
                                sigma,
                                p.op(r).name
                            ),
                        );
                    }
                }
            }
        }
        if p.act(id, &identity_perm(n)) != Some(id) {
            violate(
                "symmetry-identity",
                format!("identity permutation moves `{}`", p.op(id).name),
            );
        }
        for sigma in all_perms(n) {
            for tau in all_perms(n) {
                let Some(first) = p.act(id, &sigma) else {
                    continue;
                };
                let step = p.act(first, &tau);
                let combined = p.act(id, &compose_perms(&sigma, &tau));
                if let (Some(a), Some(b)) = (step, combined) {
                    if a != b {
                        violate(
                            "symmetry-action",
                            format!(
                                "(`{}`·{:?})·{:?} = `{}` ≠ `{}`",
                                p.op(id).name,
                                sigma,
                                tau,
                                p.op(a).name,
                                p.op(b).name
                            ),
                        );
                    }
                }
            }
        }
    }

    // Composition: defined exactly on colour-matching pairs within the arity
    // bound, with the substitution signature.
    for a in p.ops() {
        for i in 0..p.arity(a) {
            for b in p.ops() {
                let matches = p.op(a).inputs[i] == p.op(b).output;
                let result_arity = p.arity(a) + p.arity(b) - 1;
                let expected_defined = matches && result_arity <= p.max_arity;
                match p.compose(a, i, b) {
                    None if expected_defined => violate(
                        "composition-totality",
                        format!(
                            "`{}` ∘_{} `{}` is missing",
                            p.op(a).name,
                            i + 1,
                            p.op(b).name
                        ),
                    ),
                    Some(_) if !expected_defined => violate(
                        "composition-colour",
                        format!(
                            "`{}` ∘_{} `{}` is defined but colours mismatch or arity overflows",
                            p.op(a).name,
                            i + 1,
                            p.op(b).name
                        ),
                    ),
                    Some(r) => {
                        let mut inputs = p.op(a).inputs.clone();
                        inputs.splice(i..=i, p.op(b).inputs.iter().copied());
                        if p.op(r).inputs != inputs || p.op(r).output != p.op(a).output {
                            violate(
                                "composition-signature",
                                format!(
                                    "`{}` ∘_{} `{}` = `{}` has the wrong signature",
                                    p.op(a).name,
                                    i + 1,
                                    p.op(b).name,
                                    p.op(r).name
                                ),
                            );
                        }
                    }
                    None => {}
                }
            }
        }
    }

    // Unit laws.
    for a in p.ops() {
        for i in 0..p.arity(a) {
            let id = p.identity(p.op(a).inputs[i]);
            if let Some(r) = p.compose(a, i, id) {
                if r != a {
                    violate(
                        "unit-right",
                        format!(
                            "`{}` ∘_{} identity = `{}`",
                            p.op(a).name,
                            i + 1,
                            p.op(r).name
                        ),
                    );
                }
            }
        }
        let id = p.identity(p.op(a).output);
        if let Some(r) = p.compose(id, 0, a) {
            if r != a {
                violate(
                    "unit-left",
                    format!("identity ∘_1 `{}` = `{}`", p.op(a).name, p.op(r).name),
                );
            }
        }
    }

    // Associativity, nested and parallel, on instances whose intermediate
    // composites all exist within the arity bound.
    for a in p.ops() {
        for i in 0..p.arity(a) {
            for b in p.ops() {
                let Some(ab) = p.compose(a, i, b) else {
                    continue;
                };
                let m = p.arity(b);
                for j in 0..p.arity(ab) {
                    for c in p.ops() {
                        let Some(abc) = p.compose(ab, j, c) else {
                            continue;
                        };
                        if j >= i && j < i + m {
                            // Nested: land inside b's block.
                            let Some(bc) = p.compose(b, j - i, c) else {
                                continue;
                            };
                            let Some(other) = p.compose(a, i, bc) else {
                                continue;
                            };
                            if abc != other {
                                violate(
                                    "assoc-nested",
                                    format!(
                                        "(`{}` ∘_{} `{}`) ∘_{} `{}`: `{}` ≠ `{}`",
                                        p.op(a).name,
                                        i + 1,
                                        p.op(b).name,
                                        j + 1,
                                        p.op(c).name,
                                        p.op(abc).name,
                                        p.op(other).name
                                    ),
                                );
                            }
                        } else {
                            // Parallel: j in a's remaining slots.
                            let a_slot = if j < i { j } else { j - m + 1 };
                            let Some(ac) = p.compose(a, a_slot, c) else {
                                continue;
                            };
                            let k = p.arity(c);
                            let b_slot = if j < i { i + k - 1 } else { i };
                            let Some(other) = p.compose(ac, b_slot, b) else {
                                continue;
                            };
                            if abc != other {
                                violate(
                                    "assoc-parallel",
                                    format!(
                                        "(`{}` ∘_{} `{}`) ∘_{} `{}`: `{}` ≠ `{}`",
                                        p.op(a).name,
                                        i + 1,
                                        p.op(b).name,
                                        j + 1,
                                        p.op(c).name,
                                        p.op(abc).name,
                                        p.op(other).name
                                    ),
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    // Equivariance in the outer and inner operation.
    for a in p.ops() {
        let n = p.arity(a);
        for sigma in all_perms(n) {
            let Some(a_sigma) = p.act(a, &sigma) else {
                continue;
            };
            for i in 0..n {
                for b in p.ops() {
                    let m = p.arity(b);
                    let Some(lhs) = p.compose(a_sigma, i, b) else {
                        continue;
                    };
                    let Some(base) = p.compose(a, sigma[i], b) else {
                        continue;
                    };
                    let Some(rhs) = p.act(base, &outer_induced(&sigma, i, m)) else {
                        continue;
                    };
                    if lhs != rhs {
                        violate(
                            "equivariance-outer",
                            format!(
                                "(`{}`·{:?}) ∘_{} `{}`: `{}` ≠ `{}`",
                                p.op(a).name,
                                sigma,
                                i + 1,
                                p.op(b).name,
                                p.op(lhs).name,
                                p.op(rhs).name
                            ),
                        );
                    }
                }
            }
        }
        for i in 0..n {
            for b in p.ops() {
                let m = p.arity(b);
                for tau in all_perms(m) {
                    let Some(b_tau) = p.act(b, &tau) else {
                        continue;
                    };
                    let Some(lhs) = p.compose(a, i, b_tau) else {
                        continue;
                    };
                    let Some(base) = p.compose(a, i, b) else {
                        continue;
                    };
                    let Some(rhs) = p.act(base, &inner_induced(n, i, &tau)) else {
                        continue;
                    };
                    if lhs != rhs {
                        violate(
                            "equivariance-inner",
                            format!(
                                "`{}` ∘_{} (`{}`·{:?}): `{}` ≠ `{}`",
                                p.op(a).name,
                                i + 1,
                                p.op(b).name,
                                tau,
                                p.op(lhs).name,
                                p.op(rhs).name
                            ),
                        );
                    }
                }
            }
        }
    }

    OperadReport {
        operad: p.name.clone(),
        violations,
    }
}

/// A labeling of a tree by an operad: an edge colouring plus one operation
/// per vertex, signatures matching in the tree's stored input order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Labeling {
    pub edge_colours: Vec<ColourId>,
    pub vertex_ops: Vec<OpId>,
}

impl Labeling {
    pub fn render(&self, tree: &Tree, operad: &ColouredOperad) -> String {
        let mut parts: Vec<String> = tree
            .edges()
            .map(|e| {
                format!(
                    "{}:{}",
                    tree.edge_name(e),
                    operad.colour_name(self.edge_colours[e.index()])
                )
            })
            .collect();
        for v in tree.vertex_ids() {
            parts.push(format!(
                "{}={}",
                tree.vertex_name(v),
                operad.op(self.vertex_ops[v.index()]).name
            ));
        }
        parts.join(" ")
    }
}

/// All labelings of `tree` by `operad`, sorted.
pub fn nerve_evaluate(operad: &ColouredOperad, tree: &Tree) -> Result<Vec<Labeling>> {
    if tree.max_arity() > operad.max_arity {
        return Err(Error::ArityUnsupported {
            arity: tree.max_arity(),
            max: operad.max_arity,
        });
    }
    // Vertices in root-down order so output colours are known in turn.
    let mut vertex_order = Vec::new();
    let mut stack = vec![tree.root()];
    while let Some(e) = stack.pop() {
        if let Some(v) = tree.top(e) {
            vertex_order.push(v);
            for &i in tree.inputs(v) {
                stack.push(i);
            }
        }
    }
    let mut out = Vec::new();
    let mut labeling = Labeling {
        edge_colours: vec![ColourId(0); tree.edge_count()],
        vertex_ops: vec![OpId(0); tree.vertex_count()],
    };
    for c in operad.colours() {
        labeling.edge_colours[tree.root().index()] = c;
        assign_vertex_ops(operad, tree, &vertex_order, 0, &mut labeling, &mut out);
    }
    out.sort();
    Ok(out)
}

fn assign_vertex_ops(
    operad: &ColouredOperad,
    tree: &Tree,
    order: &[crate::tree::VertexId],
    k: usize,
    labeling: &mut Labeling,
    out: &mut Vec<Labeling>,
) {
    if k == order.len() {
        out.push(labeling.clone());
        return;
    }
    let v = order[k];
    let output = labeling.edge_colours[tree.output(v).index()];
    for id in operad.ops() {
        let op = operad.op(id);
        if op.output != output || op.inputs.len() != tree.arity(v) {
            continue;
        }
        labeling.vertex_ops[v.index()] = id;
        for (&input, &colour) in tree.inputs(v).iter().zip(op.inputs.iter()) {
            labeling.edge_colours[input.index()] = colour;
        }
        assign_vertex_ops(operad, tree, order, k + 1, labeling, out);
    }
}

/// Restricts a labeling of the arrow's codomain to one of its domain, by
/// evaluating the labeled cut over each vertex image. Errors when a needed
/// composite or permutation falls outside the operad's tables.
pub fn nerve_act(operad: &ColouredOperad, arrow: &Arrow, labeling: &Labeling) -> Result<Labeling> {
    let dom = arrow.dom();
    let cod = arrow.cod();
    let edge_colours: Vec<ColourId> = dom
        .edges()
        .map(|e| labeling.edge_colours[arrow.apply(e).index()])
        .collect();
    let mut vertex_ops = Vec::with_capacity(dom.vertex_count());
    for v in dom.vertex_ids() {
        let out_image = arrow.apply(dom.output(v));
        let images_in_order: Vec<EdgeId> = dom.inputs(v).iter().map(|&e| arrow.apply(e)).collect();
        let targets: BTreeSet<EdgeId> = images_in_order.iter().copied().collect();
        let (op, leaf_order) = if targets.len() == 1 && targets.contains(&out_image) {
            // Unary collapse: the identity at the edge's colour.
            let colour = labeling.edge_colours[out_image.index()];
            (operad.identity(colour), vec![out_image])
        } else {
            evaluate_cut(operad, cod, labeling, out_image, &targets)?
        };
        // Reorder the evaluated slots to this vertex's stored input order.
        let perm: Perm = images_in_order
            .iter()
            .map(|e| {
                leaf_order
                    .iter()
                    .position(|x| x == e)
                    .expect("leaf of the cut")
            })
            .collect();
        let final_op = operad.act(op, &perm).ok_or_else(|| {
            Error::Evaluation(format!(
                "missing symmetry entry for `{}`",
                operad.op(op).name
            ))
        })?;
        vertex_ops.push(final_op);
    }
    Ok(Labeling {
        edge_colours,
        vertex_ops,
    })
}

/// Composes the labeled operations of the cut rooted at `root` with leaf set
/// `targets`, returning the composite and its slots' leaf edges in order.
fn evaluate_cut(
    operad: &ColouredOperad,
    tree: &Tree,
    labeling: &Labeling,
    root: EdgeId,
    targets: &BTreeSet<EdgeId>,
) -> Result<(OpId, Vec<EdgeId>)> {
    let v = tree
        .top(root)
        .ok_or_else(|| Error::Evaluation("cut reaches past a leaf".into()))?;
    let mut op = labeling.vertex_ops[v.index()];
    let mut leaf_order: Vec<Vec<EdgeId>> = tree.inputs(v).iter().map(|&e| vec![e]).collect();
    for k in (0..tree.arity(v)).rev() {
        let e = tree.inputs(v)[k];
        if targets.contains(&e) {
            continue;
        }
        let (sub_op, sub_leaves) = evaluate_cut(operad, tree, labeling, e, targets)?;
        op = operad.compose(op, k, sub_op).ok_or_else(|| {
            Error::Evaluation(format!(
                "composite of `{}` and `{}` falls outside the arity bound",
                operad.op(op).name,
                operad.op(sub_op).name
            ))
        })?;
        leaf_order[k] = sub_leaves;
    }
    Ok((op, leaf_order.into_iter().flatten().collect()))
}

/// Wire format of an operad description file. Slots and permutation entries
/// are 1-based in the file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OperadWire {
    pub name: String,
    pub max_arity: usize,
    pub colours: Vec<String>,
    pub operations: Vec<OperationWire>,
    pub identities: BTreeMap<String, String>,
    pub composition: Vec<CompositionWire>,
    pub symmetries: Vec<SymmetryWire>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OperationWire {
    pub name: String,
    pub inputs: Vec<String>,
    pub output: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CompositionWire {
    pub op: String,
    pub slot: usize,
    pub arg: String,
    pub result: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SymmetryWire {
    pub op: String,
    pub perm: Vec<usize>,
    pub result: String,
}

impl ColouredOperad {
    pub fn to_wire(&self) -> OperadWire {
        OperadWire {
            name: self.name.clone(),
            max_arity: self.max_arity,
            colours: self.colours.clone(),
            operations: self
                .operations
                .iter()
                .map(|o| OperationWire {
                    name: o.name.clone(),
                    inputs: o
                        .inputs
                        .iter()
                        .map(|&c| self.colours[c.0].clone())
                        .collect(),
                    output: self.colours[o.output.0].clone(),
                })
                .collect(),
            identities: self
                .colours
                .iter()
                .zip(self.identities.iter())
                .map(|(c, &op)| (c.clone(), self.operations[op.0].name.clone()))
                .collect(),
            composition: self
                .composition
                .iter()
                .map(|(&(p, slot, q), &r)| CompositionWire {
                    op: self.operations[p.0].name.clone(),
                    slot: slot + 1,
                    arg: self.operations[q.0].name.clone(),
                    result: self.operations[r.0].name.clone(),
                })
                .collect(),
            symmetries: self
                .symmetries
                .iter()
                .map(|((p, perm), r)| SymmetryWire {
                    op: self.operations[p.0].name.clone(),
                    perm: perm.iter().map(|k| k + 1).collect(),
                    result: self.operations[r.0].name.clone(),
                })
                .collect(),
        }
    }

    pub fn from_wire(wire: &OperadWire) -> Result<ColouredOperad> {
        let colour_id = |name: &str| -> Result<ColourId> {
            wire.colours
                .iter()
                .position(|c| c == name)
                .map(ColourId)
                .ok_or_else(|| Error::Schema(format!("unknown colour `{name}`")))
        };
        let operations: Vec<Operation> = wire
            .operations
            .iter()
            .map(|o| {
                Ok(Operation {
                    name: o.name.clone(),
                    inputs: o
                        .inputs
                        .iter()
                        .map(|c| colour_id(c))
                        .collect::<Result<_>>()?,
                    output: colour_id(&o.output)?,
                })
            })
            .collect::<Result<_>>()?;
        let op_id = |name: &str| -> Result<OpId> {
            operations
                .iter()
                .position(|o| o.name == name)
                .map(OpId)
                .ok_or_else(|| Error::Schema(format!("unknown operation `{name}`")))
        };
        let identities =
            wire.colours
                .iter()
                .map(|c| {
                    let op = wire.identities.get(c).ok_or_else(|| {
                        Error::Schema(format!("missing identity for colour `{c}`"))
                    })?;
                    op_id(op)
                })
                .collect::<Result<Vec<_>>>()?;
        let mut composition = BTreeMap::new();
        for row in &wire.composition {
            if row.slot == 0 {
                return Err(Error::Schema("composition slots are 1-based".into()));
            }
            let key = (op_id(&row.op)?, row.slot - 1, op_id(&row.arg)?);
            if composition.insert(key, op_id(&row.result)?).is_some() {
                return Err(Error::Schema(format!(
                    "duplicate composition row for `{}` slot {} `{}`",
                    row.op, row.slot, row.arg
                )));
            }
        }
        let mut symmetries = BTreeMap::new();
        for row in &wire.symmetries {
            if row.perm.contains(&0) {
                return Err(Error::Schema("permutations are 1-based".into()));
            }
            let perm: Perm = row.perm.iter().map(|&k| k - 1).collect();
            let key = (op_id(&row.op)?, perm);
            if symmetries.insert(key, op_id(&row.result)?).is_some() {
                return Err(Error::Schema(format!(
                    "duplicate symmetry row for `{}` {:?}",
                    row.op, row.perm
                )));
            }
        }
        ColouredOperad::new(
            wire.name.clone(),
            wire.max_arity,
            wire.colours.clone(),
            operations,
            identities,
            composition,
            symmetries,
        )
    }
}

/// Ready-made finite operads used as fixtures and CLI examples.
pub mod fixtures {
    use super::*;

    /// The terminal operad truncated at `max_arity`: one colour, one
    /// operation per arity.
    pub fn com(max_arity: usize) -> ColouredOperad {
        let colours = vec!["c".to_string()];
        let operations: Vec<Operation> = (0..=max_arity)
            .map(|n| Operation {
                name: format!("com{n}"),
                inputs: vec![ColourId(0); n],
                output: ColourId(0),
            })
            .collect();
        let identities = vec![OpId(1)];
        let mut composition = BTreeMap::new();
        for n in 0..=max_arity {
            for i in 0..n {
                for m in 0..=max_arity {
                    if n + m - 1 <= max_arity {
                        composition.insert((OpId(n), i, OpId(m)), OpId(n + m - 1));
                    }
                }
            }
        }
        let mut symmetries = BTreeMap::new();
        for n in 0..=max_arity {
            for perm in all_perms(n) {
                symmetries.insert((OpId(n), perm), OpId(n));
            }
        }
        ColouredOperad::new(
            "com".into(),
            max_arity,
            colours,
            operations,
            identities,
            composition,
            symmetries,
        )
        .expect("com is well-formed")
    }

    /// The associative operad truncated at `max_arity`: operations of arity
    /// n are the orderings of n inputs, composition is word substitution.
    pub fn ass(max_arity: usize) -> ColouredOperad {
        // Words (multiplication orders) by arity.
        let mut words: Vec<Vec<usize>> = Vec::new();
        for n in 0..=max_arity {
            for w in all_perms(n) {
                words.push(w);
            }
        }
        let name_of = |w: &[usize]| {
            if w.is_empty() {
                "w".to_string()
            } else {
                format!("w{}", w.iter().map(|k| k.to_string()).collect::<String>())
            }
        };
        let index_of = |w: &[usize], words: &[Vec<usize>]| -> OpId {
            OpId(words.iter().position(|x| x == w).expect("word exists"))
        };
        let operations: Vec<Operation> = words
            .iter()
            .map(|w| Operation {
                name: name_of(w),
                inputs: vec![ColourId(0); w.len()],
                output: ColourId(0),
            })
            .collect();
        let identities = vec![index_of(&[0], &words)];
        // Substitution of words: replace letter i of p by q's block.
        let substitute = |p: &[usize], i: usize, q: &[usize]| -> Vec<usize> {
            let m = q.len();
            let mut out = Vec::with_capacity(p.len() + m - 1);
            for &letter in p {
                if letter < i {
                    out.push(letter);
                } else if letter == i {
                    out.extend(q.iter().map(|&t| i + t));
                } else {
                    out.push(letter + m - 1);
                }
            }
            out
        };
        let mut composition = BTreeMap::new();
        for p in &words {
            for i in 0..p.len() {
                for q in &words {
                    if p.len() + q.len() - 1 <= max_arity {
                        let result = substitute(p, i, q);
                        composition.insert(
                            (index_of(p, &words), i, index_of(q, &words)),
                            index_of(&result, &words),
                        );
                    }
                }
            }
        }
        // (p·σ): new slot k is old slot σ[k], so letters are renamed by σ⁻¹.
        let mut symmetries = BTreeMap::new();
        for p in &words {
            let n = p.len();
            for sigma in all_perms(n) {
                let mut inverse = vec![0usize; n];
                for (k, &old) in sigma.iter().enumerate() {
                    inverse[old] = k;
                }
                let word: Vec<usize> = p.iter().map(|&s| inverse[s]).collect();
                symmetries.insert((index_of(p, &words), sigma), index_of(&word, &words));
            }
        }
        ColouredOperad::new(
            "ass".into(),
            max_arity,
            vec!["x".into()],
            operations,
            identities,
            composition,
            symmetries,
        )
        .expect("ass is well-formed")
    }

    /// A two-object category with three parallel non-identity arrows
    /// `f, g, h : x → y`, seen as a unary-only operad.
    pub fn category2() -> ColouredOperad {
        let colours = vec!["x".to_string(), "y".to_string()];
        let operations = vec![
            Operation {
                name: "id_x".into(),
                inputs: vec![ColourId(0)],
                output: ColourId(0),
            },
            Operation {
                name: "id_y".into(),
                inputs: vec![ColourId(1)],
                output: ColourId(1),
            },
            Operation {
                name: "f".into(),
                inputs: vec![ColourId(0)],
                output: ColourId(1),
            },
            Operation {
                name: "g".into(),
                inputs: vec![ColourId(0)],
                output: ColourId(1),
            },
            Operation {
                name: "h".into(),
                inputs: vec![ColourId(0)],
                output: ColourId(1),
            },
        ];
        let identities = vec![OpId(0), OpId(1)];
        let mut composition = BTreeMap::new();
        let table: &[(usize, usize, usize)] = &[
            (0, 0, 0), // id_x ∘ id_x
            (1, 1, 1), // id_y ∘ id_y
            (2, 0, 2), // f ∘ id_x
            (3, 0, 3), // g ∘ id_x
            (4, 0, 4), // h ∘ id_x
        ];
        for &(p, q, r) in table {
            composition.insert((OpId(p), 0, OpId(q)), OpId(r));
        }
        for arrow in [2usize, 3, 4] {
            composition.insert((OpId(1), 0, OpId(arrow)), OpId(arrow)); // id_y ∘ arrow
        }
        let mut symmetries = BTreeMap::new();
        for op in 0..5 {
            symmetries.insert((OpId(op), vec![0]), OpId(op));
        }
        ColouredOperad::new(
            "cat2".into(),
            1,
            colours,
            operations,
            identities,
            composition,
            symmetries,
        )
        .expect("cat2 is well-formed")
    }

    /// A two-colour operad with a single binary mixed-colour operation
    /// `m : (a, b) → a` (and its swap), truncated at arity 2.
    pub fn mixed2() -> ColouredOperad {
        let colours = vec!["a".to_string(), "b".to_string()];
        let operations = vec![
            Operation {
                name: "id_a".into(),
                inputs: vec![ColourId(0)],
                output: ColourId(0),
            },
            Operation {
                name: "id_b".into(),
                inputs: vec![ColourId(1)],
                output: ColourId(1),
            },
            Operation {
                name: "m".into(),
                inputs: vec![ColourId(0), ColourId(1)],
                output: ColourId(0),
            },
            Operation {
                name: "m_swap".into(),
                inputs: vec![ColourId(1), ColourId(0)],
                output: ColourId(0),
            },
        ];
        let identities = vec![OpId(0), OpId(1)];
        let mut composition = BTreeMap::new();
        composition.insert((OpId(0), 0, OpId(0)), OpId(0)); // id_a ∘ id_a
        composition.insert((OpId(1), 0, OpId(1)), OpId(1)); // id_b ∘ id_b
        composition.insert((OpId(0), 0, OpId(2)), OpId(2)); // id_a ∘ m
        composition.insert((OpId(0), 0, OpId(3)), OpId(3)); // id_a ∘ m_swap
        composition.insert((OpId(2), 0, OpId(0)), OpId(2)); // m ∘₁ id_a
        composition.insert((OpId(2), 1, OpId(1)), OpId(2)); // m ∘₂ id_b
        composition.insert((OpId(3), 0, OpId(1)), OpId(3)); // m_swap ∘₁ id_b
        composition.insert((OpId(3), 1, OpId(0)), OpId(3)); // m_swap ∘₂ id_a
        let mut symmetries = BTreeMap::new();
        for op in 0..2 {
            symmetries.insert((OpId(op), vec![0]), OpId(op));
        }
        symmetries.insert((OpId(2), vec![0, 1]), OpId(2));
        symmetries.insert((OpId(2), vec![1, 0]), OpId(3));
        symmetries.insert((OpId(3), vec![0, 1]), OpId(3));
        symmetries.insert((OpId(3), vec![1, 0]), OpId(2));
        ColouredOperad::new(
            "mixed2".into(),
            2,
            colours,
            operations,
            identities,
            composition,
            symmetries,
        )
        .expect("mixed2 is well-formed")
    }

    /// All four fixture operads.
    pub fn all() -> Vec<ColouredOperad> {
        vec![com(3), ass(3), category2(), mixed2()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_operads_validate() {
        for operad in fixtures::all() {
            let report = validate_operad(&operad);
            assert!(
                report.is_valid(),
                "{}: {:?}",
                operad.name,
                report.violations
            );
        }
    }

    #[test]
    fn corrupt_composition_is_pinpointed() {
        // Com: redirect the binary∘unary composite. Every op has a forced
        // signature, so the corruption surfaces as signature and unit
        // violations naming the corrupted entry.
        let mut com = fixtures::com(3);
        let com2 = com.op_by_name("com2").unwrap();
        let com1 = com.op_by_name("com1").unwrap();
        let com3 = com.op_by_name("com3").unwrap();
        com.composition.insert((com2, 0, com1), com3);
        let report = validate_operad(&com);
        assert!(!report.is_valid());
        assert!(report
            .violations
            .iter()
            .all(|v| v.detail.contains("com2") || v.detail.contains("com3")));

        // cat2: redirect id_y ∘ f to g. The only failing instance is the
        // left unit law for f.
        let mut cat = fixtures::category2();
        let id_y = cat.op_by_name("id_y").unwrap();
        let f = cat.op_by_name("f").unwrap();
        let g = cat.op_by_name("g").unwrap();
        cat.composition.insert((id_y, 0, f), g);
        let report = validate_operad(&cat);
        assert_eq!(report.violations.len(), 1, "{:?}", report.violations);
        assert_eq!(report.violations[0].law, "unit-left");

        // ass: corrupting an interior composite breaks associativity.
        let mut ass = fixtures::ass(3);
        let w01 = ass.op_by_name("w01").unwrap();
        let w012 = ass.op_by_name("w012").unwrap();
        let w021 = ass.op_by_name("w021").unwrap();
        assert_eq!(ass.compose(w01, 0, w01), Some(w012));
        ass.composition.insert((w01, 0, w01), w021);
        let report = validate_operad(&ass);
        assert!(report.violations.iter().any(|v| v.law.starts_with("assoc")));
    }

    #[test]
    fn nerve_of_com_is_a_point() {
        let com = fixtures::com(3);
        for t in crate::tree::enumerate_trees(3, 3) {
            assert_eq!(nerve_evaluate(&com, &t).unwrap().len(), 1, "{t}");
        }
    }

    #[test]
    fn nerve_at_eta_is_the_colour_set() {
        for operad in fixtures::all() {
            let labelings = nerve_evaluate(&operad, &Tree::eta()).unwrap();
            assert_eq!(labelings.len(), operad.colour_count());
        }
    }

    #[test]
    fn nerve_of_ass_at_the_binary_corolla() {
        let ass = fixtures::ass(3);
        assert_eq!(nerve_evaluate(&ass, &Tree::corolla(2)).unwrap().len(), 2);
    }

    #[test]
    fn arity_overflow_is_an_error() {
        let mixed = fixtures::mixed2();
        assert!(matches!(
            nerve_evaluate(&mixed, &Tree::corolla(3)),
            Err(Error::ArityUnsupported { .. })
        ));
    }

    #[test]
    fn identity_arrow_acts_as_identity() {
        let ass = fixtures::ass(3);
        let t = Tree::parse("r(a(x,y),b)").unwrap();
        let id = Arrow::identity(&t);
        for labeling in nerve_evaluate(&ass, &t).unwrap() {
            assert_eq!(nerve_act(&ass, &id, &labeling).unwrap(), labeling);
        }
    }

    #[test]
    fn inner_face_acts_by_partial_composition() {
        let ass = fixtures::ass(3);
        let t = Tree::parse("r(a(x,y))").unwrap();
        let a = t.edge_by_name("a").unwrap();
        let face = crate::face::Face::vertices(t.vertex_ids().collect(), [a].into());
        let arrow = Arrow::from_face(&t, &face).unwrap();
        for labeling in nerve_evaluate(&ass, &t).unwrap() {
            let restricted = nerve_act(&ass, &arrow, &labeling).unwrap();
            let vr = t.vertex_by_name("r").unwrap();
            let va = t.vertex_by_name("a").unwrap();
            let expected = ass
                .compose(
                    labeling.vertex_ops[vr.index()],
                    0,
                    labeling.vertex_ops[va.index()],
                )
                .unwrap();
            assert_eq!(restricted.vertex_ops, vec![expected]);
        }
    }

    #[test]
    fn degeneracy_then_section_face_is_the_identity() {
        for operad in [fixtures::com(3), fixtures::ass(3)] {
            let t = Tree::parse("r(a(x,y))").unwrap(); // unary vertex at r
            let v = t.vertex_by_name("r").unwrap();
            let sigma = Arrow::degeneracy(&t, v).unwrap();
            let small = sigma.cod().clone();
            // Section: the external face of t spanned by the binary vertex.
            let va = t.vertex_by_name("a").unwrap();
            let section = Arrow::from_face(
                &t,
                &crate::face::Face::vertices([va].into(), Default::default()),
            )
            .unwrap();
            // The section's domain is a(x,y) while `small` is r(x,y); match
            // them by the canonical relabeling before comparing.
            let composite = section.then(&sigma).unwrap();
            assert!(composite.is_injective());
            for labeling in nerve_evaluate(&operad, &small).unwrap() {
                let degenerate = nerve_act(&operad, &sigma, &labeling).unwrap();
                let back = nerve_act(&operad, &section, &degenerate).unwrap();
                let direct = nerve_act(&operad, &composite, &labeling).unwrap();
                assert_eq!(back, direct);
            }
        }
    }

    #[test]
    fn nerve_act_is_functorial_on_sample_arrows() {
        let ass = fixtures::ass(3);
        let t = Tree::parse("r(a(x,y),b)").unwrap();
        for f in crate::face::faces(&t) {
            let first = Arrow::from_face(&t, &f).unwrap();
            for g in crate::face::faces(first.dom()) {
                let second = Arrow::from_face(first.dom(), &g).unwrap();
                let composite = second.then(&first).unwrap();
                for labeling in nerve_evaluate(&ass, &t).unwrap() {
                    let two_steps =
                        nerve_act(&ass, &second, &nerve_act(&ass, &first, &labeling).unwrap())
                            .unwrap();
                    let one_step = nerve_act(&ass, &composite, &labeling).unwrap();
                    assert_eq!(two_steps, one_step);
                }
            }
        }
    }

    #[test]
    fn evaluation_commutes_with_tree_isomorphisms() {
        let ass = fixtures::ass(3);
        let s = Tree::parse("r(a(x,y),b)").unwrap();
        let t = Tree::parse("w(q,p(m,n))").unwrap();
        for iso in s.isomorphisms_to(&t) {
            let arrow = Arrow::iso(&s, &t, iso).unwrap();
            let at_t = nerve_evaluate(&ass, &t).unwrap();
            let mut transported: Vec<Labeling> = at_t
                .iter()
                .map(|l| nerve_act(&ass, &arrow, l).unwrap())
                .collect();
            transported.sort();
            transported.dedup();
            assert_eq!(transported, nerve_evaluate(&ass, &s).unwrap());
        }
    }

    #[test]
    fn wire_round_trip() {
        for operad in fixtures::all() {
            let wire = operad.to_wire();
            let json = serde_json::to_string_pretty(&wire).unwrap();
            let parsed: OperadWire = serde_json::from_str(&json).unwrap();
            let back = ColouredOperad::from_wire(&parsed).unwrap();
            assert_eq!(back, operad);
        }
    }
}
