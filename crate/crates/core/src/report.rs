//! Structured check reports with machine-readable witness sections.

use serde::Serialize;
use std::collections::BTreeMap;

/// Verdict of one Segal map `X(T) → Hom(Sc[T], X)`.
#[derive(Debug, Clone, Serialize)]
pub struct SegalTreeReport {
    pub tree: String,
    pub dendrex_count: usize,
    pub hom_count: usize,
    pub injective: bool,
    pub surjective: bool,
    pub bijective: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<SegalWitness>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind")]
pub enum SegalWitness {
    /// Two distinct dendrices with the same restriction to the core.
    EqualRestrictions { first: String, second: String },
    /// A family over the core hit by no dendrex.
    UnreachedFamily {
        assignment: BTreeMap<String, String>,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct SegalReport {
    pub view: String,
    pub max_vertices: usize,
    pub max_arity: usize,
    pub all_bijective: bool,
    pub trees: Vec<SegalTreeReport>,
}

impl SegalReport {
    pub fn summary(&self) -> String {
        if self.all_bijective {
            format!(
                "segal: bijective at every tree ({} trees checked)",
                self.trees.len()
            )
        } else {
            let failing: Vec<&str> = self
                .trees
                .iter()
                .filter(|t| !t.bijective)
                .map(|t| t.tree.as_str())
                .collect();
            format!("segal: FAILED at {}", failing.join(", "))
        }
    }
}

/// Horn-filling outcome for one `(tree, inner edge)` pair.
#[derive(Debug, Clone, Serialize)]
pub struct KanEntry {
    pub tree: String,
    pub edge: String,
    pub horn_maps: usize,
    pub fillable: usize,
    pub unique_fillers: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub unfillable: Vec<HornWitness>,
}

#[derive(Debug, Clone, Serialize)]
pub struct HornWitness {
    pub assignment: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct KanReport {
    pub view: String,
    pub max_vertices: usize,
    pub max_arity: usize,
    pub all_fill: bool,
    pub all_unique: bool,
    /// Trees whose horns were not checked because some face domain falls
    /// outside the view's arity support.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub skipped_trees: Vec<String>,
    pub entries: Vec<KanEntry>,
}

impl KanReport {
    pub fn summary(&self) -> String {
        let horns = self.entries.len();
        if self.all_fill && self.all_unique {
            format!("inner-kan: all {horns} horns fill uniquely")
        } else if self.all_fill {
            format!("inner-kan: all {horns} horns fill, fillers not all unique")
        } else {
            let failing = self
                .entries
                .iter()
                .filter(|e| !e.unfillable.is_empty())
                .count();
            format!("inner-kan: {failing} of {horns} horns have unfillable maps")
        }
    }
}

/// Automorphism-freeness outcome for one tree.
#[derive(Debug, Clone, Serialize)]
pub struct NormalityEntry {
    pub tree: String,
    pub nondegenerate: usize,
    pub free: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub fixed_points: Vec<FixedPoint>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FixedPoint {
    pub automorphism: BTreeMap<String, String>,
    pub dendrex: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct NormalityReport {
    pub view: String,
    pub max_vertices: usize,
    pub max_arity: usize,
    pub normal: bool,
    pub entries: Vec<NormalityEntry>,
}

impl NormalityReport {
    pub fn summary(&self) -> String {
        if self.normal {
            format!(
                "normality: automorphisms act freely at all {} trees",
                self.entries.len()
            )
        } else {
            let failing: Vec<&str> = self
                .entries
                .iter()
                .filter(|e| !e.free)
                .map(|e| e.tree.as_str())
                .collect();
            format!("normality: FAILED at {}", failing.join(", "))
        }
    }
}

/// One level of the underlying simplicial set.
#[derive(Debug, Clone, Serialize)]
pub struct RestrictionLevel {
    pub n: usize,
    pub total: usize,
    pub nondegenerate: usize,
    pub dendrices: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RestrictionReport {
    pub view: String,
    pub max_n: usize,
    pub identities_ok: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub identity_failures: Vec<String>,
    pub levels: Vec<RestrictionLevel>,
}

impl RestrictionReport {
    pub fn summary(&self) -> String {
        let counts: Vec<String> = self.levels.iter().map(|l| l.total.to_string()).collect();
        format!(
            "restriction: levels [{}], simplicial identities {}",
            counts.join(", "),
            if self.identities_ok { "hold" } else { "FAIL" }
        )
    }
}
