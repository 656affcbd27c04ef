//! Command-line interface: tree enumeration, face calculus, sieve
//! constructions, anodyne certificates and the presheaf checks.
//!
//! Every command is deterministic: identical invocations print identical
//! bytes. `--json` selects the machine-readable format. Exit codes: 0 on
//! success, 1 when a check fails (witnesses are printed), 2 on usage errors,
//! 3 on invalid input.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use dendro::anodyne::{
    certify_inner_anodyne, verify_certificate, Certificate, CertificateWire, CertifyOutcome,
};
use dendro::dset::tabulated::{TabulatedDset, TabulatedView, TabulatedWire};
use dendro::dset::{
    inner_kan_check, normality_check, segal_char_check, simplicial_restriction, DendroidalSetView,
    NerveView,
};
use dendro::face::{face_domain, faces, FaceWire};
use dendro::operad::{nerve_evaluate, validate_operad, ColouredOperad, OperadWire};
use dendro::subobject::{Subobject, SubobjectWire};
use dendro::tree::{enumerate_trees, Tree};
use dendro::{Error, Result};

#[derive(Parser)]
#[command(
    name = "dendro",
    version,
    about = "Combinatorics of trees, dendroidal sieves and operad nerves"
)]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate canonical trees within the given bounds.
    Trees {
        #[arg(long)]
        max_vertices: usize,
        #[arg(long, default_value_t = 3)]
        max_arity: usize,
    },
    /// List every face of a tree.
    Faces { tree: String },
    /// The Segal core of a tree.
    Core { tree: String },
    /// The boundary of a tree.
    Boundary { tree: String },
    /// The external boundary of a tree.
    ExtBoundary { tree: String },
    /// The inner horn of a tree at an inner edge.
    Horn {
        tree: String,
        #[arg(long)]
        edge: String,
    },
    /// Search for an inner-anodyne certificate from a starting subobject to
    /// the full representable.
    Certify {
        tree: String,
        /// Starting subobject: `core` or `horn:EDGE`.
        #[arg(long, default_value = "core")]
        from: String,
        /// Write the certificate to a file (relative paths resolve against
        /// $DENDRO_OUT_DIR when set) instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replay a certificate file and check every step.
    Verify { file: PathBuf },
    /// Evaluate the nerve of an operad at a tree.
    Nerve {
        operad: PathBuf,
        #[arg(long)]
        tree: String,
    },
    /// Check that Segal maps are bijective at every tree in range.
    CheckSegal {
        #[arg(long, conflicts_with = "dset")]
        operad: Option<PathBuf>,
        #[arg(long)]
        dset: Option<PathBuf>,
        #[arg(long)]
        max_vertices: usize,
        #[arg(long)]
        max_arity: Option<usize>,
    },
    /// Check that every inner horn fills.
    CheckInnerKan {
        #[arg(long, conflicts_with = "dset")]
        operad: Option<PathBuf>,
        #[arg(long)]
        dset: Option<PathBuf>,
        #[arg(long)]
        max_vertices: usize,
        #[arg(long)]
        max_arity: Option<usize>,
    },
    /// Check that automorphisms act freely on nondegenerate dendrices.
    CheckNormal {
        #[arg(long, conflicts_with = "dset")]
        operad: Option<PathBuf>,
        #[arg(long)]
        dset: Option<PathBuf>,
        #[arg(long)]
        max_vertices: usize,
        #[arg(long)]
        max_arity: Option<usize>,
    },
    /// The underlying simplicial set of a tabulated dendroidal set.
    Restrict {
        #[arg(long)]
        dset: PathBuf,
        #[arg(long)]
        max_n: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}

fn emit<T: Serialize>(json: bool, value: &T, human: impl FnOnce() -> String) -> Result<()> {
    if json {
        println!("{}", serde_json::to_string_pretty(value)?);
    } else {
        println!("{}", human());
    }
    Ok(())
}

fn subobject_lines(wire: &SubobjectWire) -> String {
    let mut lines = vec![format!("tree {} ({} faces)", wire.tree, wire.members.len())];
    for f in &wire.members {
        lines.push(format!("  {}", face_line(f)));
    }
    lines.join("\n")
}

fn face_line(wire: &FaceWire) -> String {
    let subtree = match &wire.subtree {
        dendro::face::SubtreeWire::Edge { edge } => format!("edge={edge}"),
        dendro::face::SubtreeWire::Vertices { vertices } => {
            format!("vertices={}", vertices.join(","))
        }
    };
    if wire.contract.is_empty() {
        subtree
    } else {
        format!("{subtree} contract={}", wire.contract.join(","))
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::Trees {
            max_vertices,
            max_arity,
        } => {
            #[derive(Serialize)]
            struct TreesOut {
                max_vertices: usize,
                max_arity: usize,
                count: usize,
                trees: Vec<String>,
            }
            let trees: Vec<String> = enumerate_trees(*max_vertices, *max_arity)
                .iter()
                .map(Tree::literal)
                .collect();
            let out = TreesOut {
                max_vertices: *max_vertices,
                max_arity: *max_arity,
                count: trees.len(),
                trees,
            };
            emit(cli.json, &out, || out.trees.join("\n"))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Faces { tree } => {
            #[derive(Serialize)]
            struct FaceOut {
                #[serde(flatten)]
                face: FaceWire,
                domain: String,
                codimension: usize,
            }
            #[derive(Serialize)]
            struct FacesOut {
                tree: String,
                count: usize,
                faces: Vec<FaceOut>,
            }
            let t = Tree::parse(tree)?;
            let list = faces(&t);
            let faces_out: Vec<FaceOut> = list
                .iter()
                .map(|f| {
                    Ok(FaceOut {
                        face: f.to_wire(&t),
                        domain: face_domain(&t, f)?.tree.literal(),
                        codimension: f.codimension(&t),
                    })
                })
                .collect::<Result<_>>()?;
            let out = FacesOut {
                tree: t.literal(),
                count: faces_out.len(),
                faces: faces_out,
            };
            emit(cli.json, &out, || {
                let mut lines = vec![format!("tree {} ({} faces)", out.tree, out.count)];
                for f in &out.faces {
                    lines.push(format!(
                        "  {} domain={} codim={}",
                        face_line(&f.face),
                        f.domain,
                        f.codimension
                    ));
                }
                lines.join("\n")
            })?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Core { tree } => {
            let t = Tree::parse(tree)?;
            let wire = Subobject::segal_core(&t).to_wire();
            emit(cli.json, &wire, || subobject_lines(&wire))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Boundary { tree } => {
            let t = Tree::parse(tree)?;
            let wire = Subobject::boundary(&t).to_wire();
            emit(cli.json, &wire, || subobject_lines(&wire))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::ExtBoundary { tree } => {
            let t = Tree::parse(tree)?;
            let wire = Subobject::external_boundary(&t).to_wire();
            emit(cli.json, &wire, || subobject_lines(&wire))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Horn { tree, edge } => {
            let t = Tree::parse(tree)?;
            let e = t.edge_by_name(edge)?;
            let wire = Subobject::inner_horn(&t, e)?.to_wire();
            emit(cli.json, &wire, || subobject_lines(&wire))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Certify { tree, from, out } => {
            let t = Tree::parse(tree)?;
            let start = match from.as_str() {
                "core" => Subobject::segal_core(&t),
                other => match other.strip_prefix("horn:") {
                    Some(edge) => Subobject::inner_horn(&t, t.edge_by_name(edge)?)?,
                    None => {
                        return Err(Error::Schema(format!(
                            "unknown --from `{other}` (expected `core` or `horn:EDGE`)"
                        )))
                    }
                },
            };
            let full = Subobject::full(&t);
            match certify_inner_anodyne(&start, &full)? {
                CertifyOutcome::Found(certificate) => {
                    let wire = certificate.to_wire();
                    let rendered = serde_json::to_string_pretty(&wire)?;
                    match out {
                        Some(path) => {
                            let path = resolve_out(path);
                            std::fs::write(&path, format!("{rendered}\n"))?;
                            if cli.json {
                                #[derive(Serialize)]
                                struct Written {
                                    steps: usize,
                                    out: String,
                                }
                                println!(
                                    "{}",
                                    serde_json::to_string_pretty(&Written {
                                        steps: certificate.len(),
                                        out: path.display().to_string(),
                                    })?
                                );
                            } else {
                                println!(
                                    "certificate with {} steps written to {}",
                                    certificate.len(),
                                    path.display()
                                );
                            }
                        }
                        None => println!("{rendered}"),
                    }
                    Ok(ExitCode::SUCCESS)
                }
                CertifyOutcome::NotFound { nodes, exhausted } => {
                    #[derive(Serialize)]
                    struct NotFound {
                        found: bool,
                        nodes: usize,
                        exhausted: bool,
                        note: &'static str,
                    }
                    let out = NotFound {
                        found: false,
                        nodes,
                        exhausted,
                        note: "no pushout-composition certificate found; retracts are not \
                               searched, so this does not prove the inclusion is not inner \
                               anodyne",
                    };
                    emit(cli.json, &out, || {
                        format!(
                            "no certificate found ({} search nodes, {}); {}",
                            out.nodes,
                            if out.exhausted {
                                "search exhausted"
                            } else {
                                "budget hit"
                            },
                            out.note
                        )
                    })?;
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Verify { file } => {
            let text = std::fs::read_to_string(file)?;
            let wire: CertificateWire = serde_json::from_str(&text)?;
            let certificate = Certificate::from_wire(&wire)?;
            let report = verify_certificate(&certificate);
            emit(cli.json, &report, || {
                if report.ok {
                    format!("certificate ok ({} steps replayed)", report.steps_checked)
                } else {
                    let failure = report.failure.as_ref().expect("failure recorded");
                    format!(
                        "certificate INVALID at {} {}: {}",
                        failure.stage,
                        failure
                            .step_index
                            .map(|i| i.to_string())
                            .unwrap_or_else(|| "-".into()),
                        failure.reason
                    )
                }
            })?;
            Ok(if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Nerve { operad, tree } => {
            let p = load_operad(operad)?;
            let t = Tree::parse(tree)?;
            let labelings = nerve_evaluate(&p, &t)?;
            #[derive(Serialize)]
            struct LabelingOut {
                edges: BTreeMap<String, String>,
                vertices: BTreeMap<String, String>,
            }
            #[derive(Serialize)]
            struct NerveOut {
                operad: String,
                tree: String,
                count: usize,
                labelings: Vec<LabelingOut>,
            }
            let out = NerveOut {
                operad: p.name.clone(),
                tree: t.literal(),
                count: labelings.len(),
                labelings: labelings
                    .iter()
                    .map(|l| LabelingOut {
                        edges: t
                            .edges()
                            .map(|e| {
                                (
                                    t.edge_name(e).to_string(),
                                    p.colour_name(l.edge_colours[e.index()]).to_string(),
                                )
                            })
                            .collect(),
                        vertices: t
                            .vertex_ids()
                            .map(|v| {
                                (
                                    t.vertex_name(v).to_string(),
                                    p.op(l.vertex_ops[v.index()]).name.clone(),
                                )
                            })
                            .collect(),
                    })
                    .collect(),
            };
            emit(cli.json, &out, || {
                let mut lines = vec![format!(
                    "nerve({}) at {}: {} dendrices",
                    out.operad, out.tree, out.count
                )];
                for l in &labelings {
                    lines.push(format!("  {}", l.render(&t, &p)));
                }
                lines.join("\n")
            })?;
            Ok(ExitCode::SUCCESS)
        }
        Command::CheckSegal {
            operad,
            dset,
            max_vertices,
            max_arity,
        } => with_view(operad, dset, |view| {
            let report = view.segal(*max_vertices, max_arity.unwrap_or(view.max_arity()))?;
            emit(cli.json, &report, || report.summary())?;
            Ok(pass_fail(report.all_bijective))
        }),
        Command::CheckInnerKan {
            operad,
            dset,
            max_vertices,
            max_arity,
        } => with_view(operad, dset, |view| {
            let report = view.kan(*max_vertices, max_arity.unwrap_or(view.max_arity()))?;
            emit(cli.json, &report, || report.summary())?;
            Ok(pass_fail(report.all_fill))
        }),
        Command::CheckNormal {
            operad,
            dset,
            max_vertices,
            max_arity,
        } => with_view(operad, dset, |view| {
            let report = view.normal(*max_vertices, max_arity.unwrap_or(view.max_arity()))?;
            emit(cli.json, &report, || report.summary())?;
            Ok(pass_fail(report.normal))
        }),
        Command::Restrict { dset, max_n } => {
            let view = load_dset(dset)?;
            let report = simplicial_restriction(&view, *max_n)?;
            emit(cli.json, &report, || report.summary())?;
            Ok(pass_fail(report.identities_ok))
        }
    }
}

fn pass_fail(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn resolve_out(path: &Path) -> PathBuf {
    if path.is_relative() {
        if let Ok(dir) = std::env::var("DENDRO_OUT_DIR") {
            return PathBuf::from(dir).join(path);
        }
    }
    path.to_path_buf()
}

fn load_operad(path: &Path) -> Result<ColouredOperad> {
    let text = std::fs::read_to_string(path)?;
    let wire: OperadWire = serde_json::from_str(&text)?;
    let operad = ColouredOperad::from_wire(&wire)?;
    let report = validate_operad(&operad);
    if !report.is_valid() {
        return Err(Error::Schema(format!(
            "operad `{}` violates {} axiom instance(s); first: {}",
            operad.name,
            report.violations.len(),
            report.violations[0].detail
        )));
    }
    Ok(operad)
}

fn load_dset(path: &Path) -> Result<TabulatedView> {
    let text = std::fs::read_to_string(path)?;
    let wire: TabulatedWire = serde_json::from_str(&text)?;
    TabulatedView::new(TabulatedDset::from_wire(&wire)?)
}

/// Runs a check against either an operad nerve or a tabulated file.
fn with_view<F>(operad: &Option<PathBuf>, dset: &Option<PathBuf>, f: F) -> Result<ExitCode>
where
    F: FnOnce(&dyn ErasedView) -> Result<ExitCode>,
{
    match (operad, dset) {
        (Some(path), None) => {
            let p = load_operad(path)?;
            let view = NerveView::new(&p);
            f(&ErasedNerve { view })
        }
        (None, Some(path)) => {
            let view = load_dset(path)?;
            f(&ErasedTabulated { view })
        }
        _ => Err(Error::Schema(
            "exactly one of --operad or --dset is required".into(),
        )),
    }
}

/// Object-safe adapter so the CLI can treat both view kinds uniformly.
trait ErasedView {
    fn max_arity(&self) -> usize;
    fn segal(&self, max_vertices: usize, max_arity: usize) -> Result<dendro::report::SegalReport>;
    fn kan(&self, max_vertices: usize, max_arity: usize) -> Result<dendro::report::KanReport>;
    fn normal(
        &self,
        max_vertices: usize,
        max_arity: usize,
    ) -> Result<dendro::report::NormalityReport>;
}

struct ErasedNerve<'a> {
    view: NerveView<'a>,
}

struct ErasedTabulated {
    view: TabulatedView,
}

impl ErasedView for ErasedNerve<'_> {
    fn max_arity(&self) -> usize {
        self.view.max_arity()
    }
    fn segal(&self, max_vertices: usize, max_arity: usize) -> Result<dendro::report::SegalReport> {
        segal_char_check(&self.view, max_vertices, max_arity)
    }
    fn kan(&self, max_vertices: usize, max_arity: usize) -> Result<dendro::report::KanReport> {
        inner_kan_check(&self.view, max_vertices, max_arity)
    }
    fn normal(
        &self,
        max_vertices: usize,
        max_arity: usize,
    ) -> Result<dendro::report::NormalityReport> {
        normality_check(&self.view, max_vertices, max_arity)
    }
}

impl ErasedView for ErasedTabulated {
    fn max_arity(&self) -> usize {
        self.view.max_arity()
    }
    fn segal(&self, max_vertices: usize, max_arity: usize) -> Result<dendro::report::SegalReport> {
        segal_char_check(&self.view, max_vertices, max_arity)
    }
    fn kan(&self, max_vertices: usize, max_arity: usize) -> Result<dendro::report::KanReport> {
        inner_kan_check(&self.view, max_vertices, max_arity)
    }
    fn normal(
        &self,
        max_vertices: usize,
        max_arity: usize,
    ) -> Result<dendro::report::NormalityReport> {
        normality_check(&self.view, max_vertices, max_arity)
    }
}
