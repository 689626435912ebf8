//! Batch-oriented command line: generate instances, compute homology and
//! bound reports, verify the canonical maps.
//!
//! Exit codes: 0 all checks pass, 1 a mathematical verdict failed, 2 a
//! resource limit or precondition stopped part of the computation.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use serde::Serialize;

use crate::bounds::{hierarchy_report, BoundsReport, ReportConfig};
use crate::boxes::{
    box_complex, c4free_retraction, canonical_map, box_functor_map, kneser_box_complex,
    lovasz_complex, neighborhood_complex, BoxVariant, MapId,
};
use crate::complex::{SimplicialComplex, Z2Complex, DEFAULT_FACE_CAP};
use crate::graph::{
    complete_graph, cycle_graph, degree_order, greedy_coloring, parse_dimacs, random_graph,
    to_dimacs, Graph, VertexMap,
};
use crate::homology::{acyclicity, betti_gf2, index_interval};
use crate::set_system::{k_subsets, kneser_graph_of, stable_k_subsets, SetSystem};

#[derive(Parser)]
#[command(name = "topobox", version, about = "Topological lower bounds for graph coloring")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write an instance to a DIMACS or set-system file.
    Gen {
        /// Instance: `complete M | cycle N | kneser N K | schrijver N K |
        /// random N P [SEED] | file PATH`.
        #[arg(num_args = 1.., allow_negative_numbers = true)]
        instance: Vec<String>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Compute the full lower-bound hierarchy report for an instance.
    Bounds {
        #[arg(num_args = 1..)]
        instance: Vec<String>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Build and verify canonical maps on an instance.
    #[command(name = "verify-maps")]
    VerifyMaps {
        /// Instance tokens followed by map names:
        /// `M1`..`M9`, `functor`, `c4free`, or `all`.
        #[arg(num_args = 1..)]
        instance_and_maps: Vec<String>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Reduced mod-2 Betti numbers, acyclicity, and index interval of a
    /// complex variant of the instance.
    Homology {
        #[arg(num_args = 1..)]
        instance: Vec<String>,
        /// Complex variant: B, B0, B1, Bedge, Bsark, Bchain, N, L.
        #[arg(long)]
        variant: BoxVariantArg,
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Clone)]
struct BoxVariantArg(BoxVariant);

impl std::str::FromStr for BoxVariantArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        s.parse().map(BoxVariantArg)
    }
}

#[derive(Args)]
struct CommonArgs {
    /// Face cap for complex constructions.
    #[arg(long, default_value_t = DEFAULT_FACE_CAP)]
    cap: usize,
    /// Node budget for the exact coloring solver.
    #[arg(long, default_value_t = 200_000_000)]
    budget: u64,
    /// Output format (gen defaults to dimacs, reports to json).
    #[arg(long, value_parser = ["json", "csv", "dimacs"])]
    format: Option<String>,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed for random instances.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// Exit status per the command contract.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass = 0,
    VerdictFailed = 1,
    ResourceLimited = 2,
}

pub fn run<I, T>(args: I) -> Result<Outcome, String>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| e.to_string())?;
    match cli.command {
        Command::Gen { instance, common } => cmd_gen(&instance, &common),
        Command::Bounds { instance, common } => cmd_bounds(&instance, &common),
        Command::VerifyMaps {
            instance_and_maps,
            common,
        } => cmd_verify_maps(&instance_and_maps, &common),
        Command::Homology {
            instance,
            variant,
            common,
        } => cmd_homology(&instance, variant.0, &common),
    }
}

// ---------------------------------------------------------------------------
// Instance parsing
// ---------------------------------------------------------------------------

/// A loaded instance: the graph, an optional natural set-system
/// presentation, and a display name.
struct Instance {
    name: String,
    graph: Graph,
    system: Option<SetSystem>,
}

/// Parses the leading instance tokens; returns the instance and how many
/// tokens were consumed.
fn parse_instance(tokens: &[String], seed: u64) -> Result<(Instance, usize), String> {
    let family = tokens.first().ok_or("missing instance")?;
    let num = |i: usize, what: &str| -> Result<usize, String> {
        tokens
            .get(i)
            .and_then(|t| t.parse().ok())
            .ok_or(format!("{family}: missing or invalid {what}"))
    };
    match family.as_str() {
        "complete" => {
            let m = num(1, "size")?;
            Ok((
                Instance {
                    name: format!("complete({m})"),
                    graph: complete_graph(m).map_err(|e| e.to_string())?,
                    system: None,
                },
                2,
            ))
        }
        "cycle" => {
            let n = num(1, "length")?;
            Ok((
                Instance {
                    name: format!("cycle({n})"),
                    graph: cycle_graph(n).map_err(|e| e.to_string())?,
                    system: None,
                },
                2,
            ))
        }
        "kneser" => {
            let (n, k) = (num(1, "n")?, num(2, "k")?);
            let f = k_subsets(n, k).map_err(|e| e.to_string())?;
            Ok((
                Instance {
                    name: format!("kneser({n},{k})"),
                    graph: kneser_graph_of(&f),
                    system: Some(f),
                },
                3,
            ))
        }
        "schrijver" => {
            let (n, k) = (num(1, "n")?, num(2, "k")?);
            let f = stable_k_subsets(n, k).map_err(|e| e.to_string())?;
            Ok((
                Instance {
                    name: format!("schrijver({n},{k})"),
                    graph: kneser_graph_of(&f),
                    system: Some(f),
                },
                3,
            ))
        }
        "random" => {
            let n = num(1, "vertex count")?;
            let p: f64 = tokens
                .get(2)
                .and_then(|t| t.parse().ok())
                .ok_or("random: missing or invalid edge probability")?;
            let (s, used) = match tokens.get(3).and_then(|t| t.parse::<u64>().ok()) {
                Some(s) => (s, 4),
                None => (seed, 3),
            };
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(s);
            Ok((
                Instance {
                    name: format!("random({n},{p},{s})"),
                    graph: random_graph(n, p, &mut rng).map_err(|e| e.to_string())?,
                    system: None,
                },
                used,
            ))
        }
        "file" => {
            let path = tokens.get(1).ok_or("file: missing path")?;
            let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
            let (graph, system) = if path.ends_with(".json") {
                let f = SetSystem::from_json(&text).map_err(|e| e.to_string())?;
                (kneser_graph_of(&f), Some(f))
            } else {
                (parse_dimacs(&text).map_err(|e| e.to_string())?, None)
            };
            Ok((
                Instance {
                    name: format!("file({path})"),
                    graph,
                    system,
                },
                2,
            ))
        }
        other => Err(format!("unknown instance family `{other}`")),
    }
}

fn emit(common: &CommonArgs, text: &str) -> Result<(), String> {
    match &common.out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

fn cmd_gen(tokens: &[String], common: &CommonArgs) -> Result<Outcome, String> {
    let (instance, used) = parse_instance(tokens, common.seed)?;
    if used != tokens.len() {
        return Err(format!("unexpected trailing tokens: {:?}", &tokens[used..]));
    }
    let text = match common.format.as_deref() {
        Some("json") => match &instance.system {
            Some(f) => f.to_json() + "\n",
            None => return Err("json output needs a set-system instance (kneser/schrijver/file.json)".into()),
        },
        _ => to_dimacs(&instance.graph),
    };
    emit(common, &text)?;
    Ok(Outcome::Pass)
}

fn cmd_bounds(tokens: &[String], common: &CommonArgs) -> Result<Outcome, String> {
    let (instance, used) = parse_instance(tokens, common.seed)?;
    if used != tokens.len() {
        return Err(format!("unexpected trailing tokens: {:?}", &tokens[used..]));
    }
    let cfg = ReportConfig {
        face_cap: common.cap,
        solver_budget: common.budget,
    };
    let report = hierarchy_report(
        &instance.name,
        &instance.graph,
        instance.system.as_ref(),
        &cfg,
    )
    .map_err(|e| e.to_string())?;
    let text = match common.format.as_deref() {
        Some("csv") => format!("{}\n{}\n", BoundsReport::csv_header(), report.to_csv_row()),
        _ => report.to_json() + "\n",
    };
    emit(common, &text)?;
    if !report.all_verdicts_pass() {
        Ok(Outcome::VerdictFailed)
    } else if !report.is_complete() {
        Ok(Outcome::ResourceLimited)
    } else {
        Ok(Outcome::Pass)
    }
}

#[derive(Serialize)]
struct MapRow {
    map: String,
    status: String, // pass | fail | skipped | error
    built: bool,
    simplicial: bool,
    equivariant: bool,
    detail: String,
}

fn cmd_verify_maps(tokens: &[String], common: &CommonArgs) -> Result<Outcome, String> {
    let (instance, used) = parse_instance(tokens, common.seed)?;
    let mut requested: Vec<String> = tokens[used..].to_vec();
    if requested.is_empty() || requested.iter().any(|t| t == "all") {
        requested = MapId::all().iter().map(|m| m.to_string()).collect();
        requested.push("functor".into());
        requested.push("c4free".into());
    }
    // Maps relating the Kneser presentation need one; derive the clique
    // cover representation when the instance has no natural system.
    let derived;
    let system = match &instance.system {
        Some(f) => f,
        None => {
            derived = crate::graph::kneser_representation(
                &instance.graph,
                crate::graph::RepresentationMode::CliqueCover,
            );
            &derived
        }
    };

    let mut rows: Vec<MapRow> = Vec::new();
    for token in &requested {
        let row = match token.as_str() {
            "functor" => functor_row(&instance.graph, common.cap),
            "c4free" => c4free_row(&instance.graph, common.cap),
            name => map_row(&instance.graph, system, name.parse::<MapId>()?, common.cap),
        };
        rows.push(row);
    }

    let mut text = serde_json::to_string_pretty(&rows).expect("rows serialize") + "\n";
    let mut table = String::new();
    let _ = writeln!(table, "{:<8} {:<8} built simplicial equivariant  detail", "map", "status");
    for r in &rows {
        let _ = writeln!(
            table,
            "{:<8} {:<8} {:<5} {:<10} {:<12} {}",
            r.map, r.status, r.built, r.simplicial, r.equivariant, r.detail
        );
    }
    if common.out.is_some() {
        emit(common, &text)?;
        print!("{table}");
    } else {
        text.push_str(&table);
        print!("{text}");
    }

    if rows.iter().any(|r| r.status == "fail") {
        Ok(Outcome::VerdictFailed)
    } else if rows.iter().any(|r| r.status == "skipped" || r.status == "error") {
        Ok(Outcome::ResourceLimited)
    } else {
        Ok(Outcome::Pass)
    }
}

fn map_row(g: &Graph, f: &SetSystem, id: MapId, cap: usize) -> MapRow {
    match canonical_map(g, Some(f), id, cap) {
        Ok(report) => {
            let pass = report.verdict();
            let (simplicial, equivariant) = report.aspect_verdicts();
            MapRow {
                map: id.to_string(),
                status: if pass { "pass" } else { "fail" }.into(),
                built: true,
                simplicial,
                equivariant,
                detail: report
                    .first_violation()
                    .unwrap_or_else(|| describe(&report)),
            }
        }
        Err(crate::boxes::BoxError::Complex(
            e @ crate::complex::ComplexError::FaceCapExceeded(_),
        )) => MapRow {
            map: id.to_string(),
            status: "skipped".into(),
            built: false,
            simplicial: false,
            equivariant: false,
            detail: e.to_string(),
        },
        Err(e) => MapRow {
            map: id.to_string(),
            status: "error".into(),
            built: false,
            simplicial: false,
            equivariant: false,
            detail: e.to_string(),
        },
    }
}

fn describe(report: &crate::boxes::CanonicalMapReport) -> String {
    report
        .directions
        .iter()
        .map(|d| format!("{} ({} domain elements)", d.description, d.domain_size))
        .collect::<Vec<_>>()
        .join("; ")
}

fn functor_row(g: &Graph, cap: usize) -> MapRow {
    // Verify the induced map of the homomorphism given by a greedy coloring.
    let coloring = match greedy_coloring(g, &degree_order(g)) {
        Ok(c) => c,
        Err(e) => return error_row("functor", e.to_string()),
    };
    let m = coloring.colors_used();
    let f = match VertexMap::from_coloring(g, &coloring, m) {
        Ok(f) => f,
        Err(e) => return error_row("functor", e.to_string()),
    };
    match box_functor_map(&f, cap) {
        Ok(report) => {
            let (simplicial, equivariant) = aspects(&report.check);
            MapRow {
                map: "functor".into(),
                status: if report.check.verdict { "pass" } else { "fail" }.into(),
                built: true,
                simplicial,
                equivariant,
                detail: format!("induced by a greedy {m}-coloring"),
            }
        }
        Err(e) => error_row("functor", e.to_string()),
    }
}

fn c4free_row(g: &Graph, cap: usize) -> MapRow {
    match c4free_retraction(g, cap) {
        Ok(report) => {
            let pass = report.check.verdict && report.image_dimension <= 1;
            let (simplicial, equivariant) = aspects(&report.check);
            MapRow {
                map: "c4free".into(),
                status: if pass { "pass" } else { "fail" }.into(),
                built: true,
                simplicial,
                equivariant,
                detail: format!("image dimension {}", report.image_dimension),
            }
        }
        Err(e) => error_row("c4free", e.to_string()),
    }
}

/// Face conditions are verified before equivariance, so an equivariance
/// violation still certifies simpliciality.
fn aspects(check: &crate::complex::SimplicialMapCheck) -> (bool, bool) {
    match &check.first_violation {
        None => (true, true),
        Some(crate::complex::MapViolation::NotEquivariant { .. }) => (true, false),
        Some(_) => (false, false),
    }
}

fn error_row(map: &str, detail: String) -> MapRow {
    MapRow {
        map: map.into(),
        status: "error".into(),
        built: false,
        simplicial: false,
        equivariant: false,
        detail,
    }
}

#[derive(Serialize)]
struct HomologyOutput {
    instance: String,
    variant: String,
    n_vertices: usize,
    faces: usize,
    dim: i64,
    betti: Vec<usize>,
    acyc: i64,
    free: Option<bool>,
    index_interval: Option<crate::homology::IndexInterval>,
}

fn cmd_homology(
    tokens: &[String],
    variant: BoxVariant,
    common: &CommonArgs,
) -> Result<Outcome, String> {
    let (instance, used) = parse_instance(tokens, common.seed)?;
    if used != tokens.len() {
        return Err(format!("unexpected trailing tokens: {:?}", &tokens[used..]));
    }
    enum Built {
        Plain(SimplicialComplex),
        WithAction(Z2Complex),
    }
    let built = match variant {
        BoxVariant::N => neighborhood_complex(&instance.graph, common.cap).map(Built::Plain),
        BoxVariant::L => lovasz_complex(&instance.graph, common.cap).map(Built::WithAction),
        BoxVariant::BSark | BoxVariant::BChain => {
            let derived;
            let system = match &instance.system {
                Some(f) => f,
                None => {
                    derived = crate::graph::kneser_representation(
                        &instance.graph,
                        crate::graph::RepresentationMode::CliqueCover,
                    );
                    &derived
                }
            };
            kneser_box_complex(system, variant, common.cap).map(Built::WithAction)
        }
        v => box_complex(&instance.graph, v, common.cap).map(Built::WithAction),
    };
    let built = match built {
        Ok(b) => b,
        Err(crate::boxes::BoxError::Complex(e @ crate::complex::ComplexError::FaceCapExceeded(_))) => {
            return Err(format!("incomplete: {e}"));
        }
        Err(e) => return Err(e.to_string()),
    };
    let output = match built {
        Built::Plain(k) => HomologyOutput {
            instance: instance.name,
            variant: format!("{variant:?}"),
            n_vertices: k.n_vertices(),
            faces: k.face_count(),
            dim: k.dim(),
            betti: betti_gf2(&k).0,
            acyc: acyclicity(&k),
            free: None,
            index_interval: None,
        },
        Built::WithAction(z) => HomologyOutput {
            instance: instance.name,
            variant: format!("{variant:?}"),
            n_vertices: z.complex.n_vertices(),
            faces: z.complex.face_count(),
            dim: z.complex.dim(),
            betti: betti_gf2(&z.complex).0,
            acyc: acyclicity(&z.complex),
            free: Some(z.free()),
            index_interval: Some(index_interval(&z)),
        },
    };
    emit(
        common,
        &(serde_json::to_string_pretty(&output).expect("output serializes") + "\n"),
    )?;
    Ok(Outcome::Pass)
}
