//! `enrich`: enriched structures, fans, moduli cells and toric equations from
//! the command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 unreadable or rejected
//! input, 3 size guard exceeded.

use std::io::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use enrich_core::enriched::{self, EnrichedGraph};
use enrich_core::fan::{self, Fan};
use enrich_core::{cone, corpus, graph, io, moduli, toric, verify};
use enrich_core::{Error, MultiGraph, Preorder, WeightedGraph};

/// Environment variable that, when set, replaces the `--seed` value.
const SEED_ENV: &str = "ENRICH_SEED";

#[derive(Parser, Debug)]
#[command(name = "enrich", version, about = "Enriched structures on graphs and their fans")]
struct Cli {
    /// Graph file (text form or JSON).
    #[arg(long, global = true, conflicts_with_all = ["inline", "corpus"])]
    input: Option<std::path::PathBuf>,
    /// Graph given inline, lines separated by `;`.
    #[arg(long, global = true, conflicts_with = "corpus")]
    inline: Option<String>,
    /// Built-in corpus graph by name.
    #[arg(long, global = true)]
    corpus: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for randomized checks; the ENRICH_SEED environment variable overrides it.
    #[arg(long, global = true, default_value_t = verify::DEFAULT_SEED)]
    seed: u64,
    /// Largest edge count accepted by enumeration.
    #[arg(long, global = true, default_value_t = enriched::DEFAULT_EDGE_GUARD)]
    max_edges: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Inspect a graph.
    Graph {
        #[command(subcommand)]
        action: GraphCmd,
    },
    /// Enumerate or check enriched structures.
    Enriched {
        #[command(subcommand)]
        action: EnrichedCmd,
    },
    /// Build or verify the fan of a graph.
    Fan {
        #[command(subcommand)]
        action: FanCmd,
    },
    /// Cells of the moduli space of enriched tropical curves.
    Moduli {
        #[command(subcommand)]
        action: ModuliCmd,
    },
    /// Equations and blowup schedule of the variety of enriched structures.
    Toric {
        #[command(subcommand)]
        action: ToricCmd,
    },
    /// Run invariant suites.
    Verify {
        #[command(subcommand)]
        action: VerifyCmd,
    },
}

#[derive(Subcommand, Debug)]
enum GraphCmd {
    /// Vertices, edges, genus, blocks, bonds and automorphisms.
    Info,
}

#[derive(Subcommand, Debug)]
enum EnrichedCmd {
    /// Every enriched structure.
    List {
        /// Only partial orders.
        #[arg(long)]
        generic: bool,
    },
    /// Whether a preorder, e.g. "e1 < e2, e1 < e3~e4", is enriched.
    Check {
        #[arg(long)]
        preorder: String,
    },
}

#[derive(Subcommand, Debug)]
enum FanCmd {
    /// The fan of the graph.
    Build {
        /// Build by star subdivisions along a good sequence.
        #[arg(long)]
        via_star: bool,
        /// Also build directly and report whether both agree.
        #[arg(long)]
        check_equal: bool,
        /// Pass to the quotient by the block diagonals.
        #[arg(long)]
        quotient: bool,
    },
    /// Cover, ray, smoothness, pipeline and completeness checks.
    Verify {
        /// Random points for the cover check.
        #[arg(long, default_value_t = 200)]
        points: usize,
    },
}

#[derive(Subcommand, Debug)]
enum ModuliCmd {
    /// List cells of genus g.
    Cells {
        #[arg(short = 'g', long, default_value_t = 2)]
        genus: usize,
    },
}

#[derive(Subcommand, Debug)]
enum ToricCmd {
    /// Bonds and relations.
    Equations {
        /// Print the generators as plain polynomial text.
        #[arg(long)]
        ideal: bool,
    },
    /// Blowup centers stage by stage.
    Schedule,
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    /// The full suite on the built-in corpus.
    All,
}

struct Output {
    text: String,
    code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

fn exit_code(e: &Error) -> u8 {
    if e.is_guard() {
        3
    } else {
        2
    }
}

fn seed(cli: &Cli) -> std::result::Result<u64, Error> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("{SEED_ENV}={v} is not an unsigned integer"))),
        Err(_) => Ok(cli.seed),
    }
}

fn load_graph(cli: &Cli) -> std::result::Result<WeightedGraph, Error> {
    if let Some(path) = &cli.input {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        io::parse_graph(&text)
    } else if let Some(s) = &cli.inline {
        io::parse_graph(s)
    } else if let Some(name) = &cli.corpus {
        corpus::weighted_by_name(name).ok_or_else(|| {
            Error::Parse(format!(
                "unknown corpus graph `{name}`; known: {}",
                corpus::names().join(", ")
            ))
        })
    } else {
        Err(Error::Parse("no graph given: use --input, --inline or --corpus".into()))
    }
}

fn guard_edges(cli: &Cli, g: &MultiGraph) -> std::result::Result<(), Error> {
    if g.num_edges() > cli.max_edges {
        return Err(Error::GuardExceeded {
            what: "edges".into(),
            actual: g.num_edges(),
            limit: cli.max_edges,
        });
    }
    Ok(())
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn run(cli: &Cli) -> std::result::Result<Output, Error> {
    match &cli.command {
        Command::Graph { action: GraphCmd::Info } => graph_info(cli),
        Command::Enriched { action } => match action {
            EnrichedCmd::List { generic } => enriched_list(cli, *generic),
            EnrichedCmd::Check { preorder } => enriched_check(cli, preorder),
        },
        Command::Fan { action } => match action {
            FanCmd::Build {
                via_star,
                check_equal,
                quotient,
            } => fan_build(cli, *via_star, *check_equal, *quotient),
            FanCmd::Verify { points } => fan_verify(cli, *points),
        },
        Command::Moduli { action: ModuliCmd::Cells { genus } } => moduli_cells(cli, *genus),
        Command::Toric { action } => match action {
            ToricCmd::Equations { ideal } => toric_equations(cli, *ideal),
            ToricCmd::Schedule => toric_schedule(cli),
        },
        Command::Verify { action: VerifyCmd::All } => verify_all(cli),
    }
}

fn graph_info(cli: &Cli) -> std::result::Result<Output, Error> {
    let wg = load_graph(cli)?;
    let g = wg.graph();
    if cli.format == Format::Dot {
        return Ok(Output::ok(io::to_dot(&wg)));
    }
    let blocks: Vec<Vec<String>> = g
        .edge_blocks()
        .iter()
        .map(|b| b.edge_list().iter().map(|e| e.to_string()).collect())
        .collect();
    let bonds: Vec<String> = if g.is_connected() {
        g.bonds()?.iter().map(|b| b.name()).collect()
    } else {
        Vec::new()
    };
    let auts = graph::automorphisms(&wg)?.len();
    let genus = wg.genus().ok();
    if cli.format == Format::Text {
        let mut s = String::new();
        s.push_str(&format!("vertices: {}\n", g.num_vertices()));
        s.push_str(&format!("edges: {}\n", g.num_edges()));
        s.push_str(&format!("connected: {}\n", g.is_connected()));
        if let Some(genus) = genus {
            s.push_str(&format!("genus: {genus}\n"));
            s.push_str(&format!("stable: {}\n", wg.is_stable()));
        }
        s.push_str(&format!("biconnected: {}\n", g.is_biconnected()));
        let names: Vec<String> = blocks.iter().map(|b| format!("{{{}}}", b.join(","))).collect();
        s.push_str(&format!("blocks: {}\n", names.join(" ")));
        s.push_str(&format!("bonds: {}\n", bonds.join(" ")));
        s.push_str(&format!("automorphisms: {auts}\n"));
        return Ok(Output::ok(s));
    }
    Ok(Output::ok(pretty(&json!({
        "graph": wg,
        "vertices": g.num_vertices(),
        "edges": g.num_edges(),
        "connected": g.is_connected(),
        "genus": genus,
        "stable": genus.map(|_| wg.is_stable()),
        "biconnected": g.is_biconnected(),
        "blocks": blocks,
        "bonds": bonds,
        "automorphisms": auts,
    }))))
}

fn structure_json(eg: &EnrichedGraph) -> Value {
    json!({
        "preorder": eg.preorder().describe(),
        "pairs": eg.preorder().relation_pairs(),
        "rank": eg.rank(),
        "generic": eg.is_generic(),
    })
}

fn enriched_list(cli: &Cli, generic: bool) -> std::result::Result<Output, Error> {
    let g = load_graph(cli)?.graph().clone();
    guard_edges(cli, &g)?;
    if cli.format == Format::Dot {
        return Ok(Output::ok(enriched::specialization_dot(&g)?));
    }
    let all = enriched::enumerate_enriched_with_guard(&g, cli.max_edges)?;
    let total = all.len();
    let generic_count = all.iter().filter(|eg| eg.is_generic()).count();
    let shown: Vec<&EnrichedGraph> = all.iter().filter(|eg| !generic || eg.is_generic()).collect();
    if cli.format == Format::Text {
        let mut s = format!("{total} enriched structures, {generic_count} generic\n");
        for eg in &shown {
            s.push_str(&format!("rank {}: {}\n", eg.rank(), eg.preorder().describe()));
        }
        return Ok(Output::ok(s));
    }
    Ok(Output::ok(pretty(&json!({
        "count": total,
        "generic": generic_count,
        "structures": shown.iter().map(|eg| structure_json(eg)).collect::<Vec<_>>(),
    }))))
}

fn enriched_check(cli: &Cli, text: &str) -> std::result::Result<Output, Error> {
    let g = load_graph(cli)?.graph().clone();
    let p = Preorder::parse(g.edge_list(), text)?;
    let ok = enriched::is_enriched(&g, &p)?;
    let code = if ok { 0 } else { 1 };
    let text = match cli.format {
        Format::Json => pretty(&json!({
            "preorder": p.describe(),
            "enriched": ok,
            "rank": p.rank(),
            "generic": p.is_partial_order(),
        })),
        Format::Dot => p.to_dot(),
        Format::Text => format!("enriched: {ok}\nrank: {}\n", p.rank()),
    };
    Ok(Output { text, code })
}

fn fan_build(
    cli: &Cli,
    via_star: bool,
    check_equal: bool,
    quotient: bool,
) -> std::result::Result<Output, Error> {
    let g = load_graph(cli)?.graph().clone();
    guard_edges(cli, &g)?;
    let direct = || fan::fan_sigma(&g);
    let built: Fan = if via_star { fan::fan_via_star(&g)? } else { direct()? };
    let equal = if check_equal {
        let other = if via_star { direct()? } else { fan::fan_via_star(&g)? };
        Some(fan::fan_equal(&built, &other))
    } else {
        None
    };
    let shown = if quotient {
        fan::quotient_fan(&built, &fan::LatticeQuotient::of_blocks(&g))?
    } else {
        built
    };
    let code = if equal == Some(false) { 1 } else { 0 };
    let text = match cli.format {
        Format::Json => {
            let mut v = shown.to_json();
            v["maximal_cone_count"] = json!(shown.maximal().len());
            v["complete"] = json!(shown.is_complete());
            if let Some(e) = equal {
                v["equal"] = json!(e);
            }
            pretty(&v)
        }
        Format::Text | Format::Dot => {
            let mut s = String::new();
            if let Some(e) = equal {
                s.push_str(&format!("equal: {e}\n"));
            }
            s.push_str(&format!("lattice rank: {}\n", shown.ambient()));
            s.push_str(&format!("rays: {}\n", shown.rays().len()));
            s.push_str(&format!("maximal cones: {}\n", shown.maximal().len()));
            s.push_str(&format!("complete: {}\n", shown.is_complete()));
            s
        }
    };
    Ok(Output { text, code })
}

fn fan_verify(cli: &Cli, points: usize) -> std::result::Result<Output, Error> {
    let g = load_graph(cli)?.graph().clone();
    guard_edges(cli, &g)?;
    let seed = seed(cli)?;
    let mut checks: Vec<(&str, bool)> = Vec::new();
    let structures = enriched::enumerate_enriched_with_guard(&g, cli.max_edges)?;
    let cones: Vec<(&EnrichedGraph, cone::RationalCone)> =
        structures.iter().map(|eg| (eg, cone::cone_k(eg))).collect();
    let mut cover_ok = true;
    for x in moduli::random_points(seed, g.num_edges(), points) {
        let hits: Vec<&EnrichedGraph> = cones
            .iter()
            .filter(|(_, c)| c.satisfies_halfspaces(&x, false))
            .map(|(eg, _)| *eg)
            .collect();
        let found = fan::locate(&g, &x)?;
        cover_ok &= hits.len() == 1 && hits[0].preorder() == found.preorder();
    }
    checks.push(("cover", cover_ok));
    let rays_ok = structures.iter().all(|eg| {
        let c = cone::cone_k(eg);
        c.rays().len() == eg.rank() && c.is_smooth()
    });
    checks.push(("rays and smoothness", rays_ok));
    let faces_ok = structures.iter().all(|eg| {
        enriched::specializations_of(eg).ok().map(|s| s.len()) == Some(1usize << eg.rank())
    });
    checks.push(("faces match specializations", faces_ok));
    checks.push((
        "star pipeline",
        fan::fan_equal(&fan::fan_via_star(&g)?, &fan::fan_sigma(&g)?),
    ));
    let y = fan::sigma_y(&g)?;
    checks.push(("quotient complete", y.is_complete() && y.ambient() == toric::dim_ey(&g)));
    let all = checks.iter().all(|(_, ok)| *ok);
    let text = match cli.format {
        Format::Json => pretty(&json!({
            "seed": seed,
            "points": points,
            "checks": checks.iter().map(|(n, ok)| json!({"name": n, "passed": ok})).collect::<Vec<_>>(),
            "passed": all,
        })),
        _ => checks
            .iter()
            .map(|(n, ok)| format!("{} {n}\n", if *ok { "PASS" } else { "FAIL" }))
            .collect(),
    };
    Ok(Output {
        text,
        code: if all { 0 } else { 1 },
    })
}

fn moduli_cells(cli: &Cli, genus: usize) -> std::result::Result<Output, Error> {
    let space = moduli::enumerate_cells(genus)?;
    let class = moduli::classify_cells(&space);
    let text = match cli.format {
        Format::Dot => space.to_dot(),
        Format::Json => pretty(&json!({
            "genus": genus,
            "graphs": space.graphs.len(),
            "cell_count": space.cells.len(),
            "maximal": class.maximal,
            "codim_one": class.codim_one,
            "cells": space.cells_json(),
        })),
        Format::Text => {
            let mut s = format!(
                "genus {genus}: {} stable graphs, {} cells, {} maximal\n",
                space.graphs.len(),
                space.cells.len(),
                class.maximal.len()
            );
            for c in &space.cells {
                s.push_str(&format!(
                    "#{} dim {} |Aut| {} edges {} : {}\n",
                    c.id,
                    c.dim,
                    c.aut_order,
                    c.representative.graph.graph().num_edges(),
                    c.representative.preorder.describe()
                ));
            }
            s
        }
    };
    Ok(Output::ok(text))
}

fn toric_equations(cli: &Cli, ideal: bool) -> std::result::Result<Output, Error> {
    let g = load_graph(cli)?.graph().clone();
    guard_edges(cli, &g)?;
    let eqs = toric::equations(&g)?;
    if ideal {
        return Ok(Output::ok(eqs.ideal_text()));
    }
    let text = match cli.format {
        Format::Json => pretty(&eqs.to_json()),
        _ => {
            let mut s = String::new();
            for (i, b) in eqs.bonds.iter().enumerate() {
                s.push_str(&format!("bond {i}: {}\n", b.name()));
            }
            for r in eqs.rendered() {
                s.push_str(&r);
                s.push('\n');
            }
            s
        }
    };
    Ok(Output::ok(text))
}

fn toric_schedule(cli: &Cli) -> std::result::Result<Output, Error> {
    let g = load_graph(cli)?.graph().clone();
    guard_edges(cli, &g)?;
    let stages = toric::blowup_schedule(&g)?;
    let text = match cli.format {
        Format::Json => pretty(&json!({
            "dimension": toric::dim_ey(&g),
            "stages": stages,
        })),
        _ => {
            let mut s = format!("P^{}\n", g.num_edges().saturating_sub(1));
            for st in &stages {
                s.push_str(&format!("stage {} ({}-dimensional centers):\n", st.size, st.size - 1));
                for c in &st.centers {
                    let eqs: Vec<String> = c.vanishing.iter().map(|e| format!("x_{e} = 0")).collect();
                    s.push_str(&format!("  {}\n", eqs.join(", ")));
                }
            }
            s
        }
    };
    Ok(Output::ok(text))
}

fn verify_all(cli: &Cli) -> std::result::Result<Output, Error> {
    let report = verify::verify_all(seed(cli)?);
    let text = match cli.format {
        Format::Json => pretty(&serde_json::to_value(&report).expect("serializable")),
        _ => report.to_text(),
    };
    Ok(Output {
        text,
        code: if report.passed() { 0 } else { 1 },
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.text.as_bytes());
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
