//! Command line front end.
//!
//! Every command reads one JSON input, builds the requested structure,
//! and emits a deterministic report (sorted keys, sorted witnesses).
//! Exit codes: 0 when every checked property holds, 1 when a property
//! is violated (the report carries the witnesses), 2 for usage and
//! parse problems, 3 when a resource cap is hit.

use clap::{Args, Parser, Subcommand, ValueEnum};
use cubestar::coxeter::parse_coxeter;
use cubestar::deligne::{
    formal_property_star, DeligneBall, DeligneError, FreeOracle, FundamentalDomain,
};
use cubestar::graphprod::{parse_graph_product, DavisBall, DavisError};
use cubestar::stabposet::{
    check_chains, check_disjoint_star, check_fix_lemma, check_property_star, fixed_set_poset,
    parse_explicit_action, stabiliser_poset, DavisAction, GroupAction,
};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "cubestar",
    version,
    about = "Build cube complexes carrying group actions and check their stabiliser properties"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Print only the one-line verdict.
    #[arg(long, global = true)]
    quiet: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a labelled generator system.
    #[command(subcommand)]
    Coxeter(CoxeterCmd),
    /// Build coset balls of graph products of finite groups.
    #[command(subcommand)]
    Davis(DavisCmd),
    /// Check stabiliser properties of a group action.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Coset complexes with symbolic stabilisers.
    #[command(subcommand)]
    Deligne(DeligneCmd),
}

#[derive(Subcommand)]
enum CoxeterCmd {
    /// Sphericality and FC analysis of the system and its subsets.
    Check { input: PathBuf },
}

#[derive(Subcommand)]
enum DavisCmd {
    /// Build the coset ball and report its shape.
    Build {
        input: PathBuf,
        #[command(flatten)]
        build: BuildArgs,
    },
}

#[derive(Args)]
struct BuildArgs {
    /// Ball radius in canonical syllable length.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
    radius: u32,
    /// Abort once this many vertices exist.
    #[arg(long = "cap-vertices", default_value_t = 200_000)]
    cap_vertices: usize,
}

#[derive(Args)]
struct VerifyArgs {
    input: PathBuf,
    #[command(flatten)]
    build: BuildArgs,
    /// Cubes this far from the boundary count as interior.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
    margin: u32,
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Star extensions for meeting cube pairs.
    Star(VerifyArgs),
    /// Star extensions for disjoint pairs, via normal cube paths.
    DisjointStar(VerifyArgs),
    /// Stabiliser-poset and fixed-set-poset heights against dim + 1.
    Heights(VerifyArgs),
    /// Fixed sets of subgroups against their surrounding parabolics.
    FixLemma(VerifyArgs),
    /// Chain conditions: monotone stabilisers, bounded maximal chains.
    Chains(VerifyArgs),
}

#[derive(Subcommand)]
enum DeligneCmd {
    /// The fundamental domain's cube poset.
    Domain { input: PathBuf },
    /// The explicit coset tree of a free system.
    FreeBall {
        input: PathBuf,
        #[command(flatten)]
        build: BuildArgs,
    },
    /// The star property with symbolic stabilisers on the coset tree.
    FormalStar {
        input: PathBuf,
        #[command(flatten)]
        build: BuildArgs,
    },
}

/// A finished command: verdict, full report, text lines, optional graph.
struct Outcome {
    holds: bool,
    command: &'static str,
    report: Value,
    summary: Vec<String>,
    dot: Option<String>,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure { code: 2, message: message.into() }
    }

    fn cap(message: impl Into<String>) -> Failure {
        Failure { code: 3, message: message.into() }
    }
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(run(cli));
}

fn run(cli: Cli) -> i32 {
    let outcome = match &cli.command {
        Command::Coxeter(CoxeterCmd::Check { input }) => coxeter_check(input),
        Command::Davis(DavisCmd::Build { input, build }) => davis_build(input, build),
        Command::Verify(cmd) => verify(cmd),
        Command::Deligne(DeligneCmd::Domain { input }) => deligne_domain(input),
        Command::Deligne(DeligneCmd::FreeBall { input, build }) => deligne_free_ball(input, build),
        Command::Deligne(DeligneCmd::FormalStar { input, build }) => {
            deligne_formal_star(input, build)
        }
    };
    match outcome {
        Ok(outcome) => emit(&cli, outcome),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            failure.code as i32
        }
    }
}

fn emit(cli: &Cli, outcome: Outcome) -> i32 {
    let body = if cli.quiet {
        format!("{}\n", outcome.summary[0])
    } else {
        match cli.format {
            Format::Json => {
                let full = json!({
                    "command": outcome.command,
                    "holds": outcome.holds,
                    "report": outcome.report,
                });
                let mut s = serde_json::to_string_pretty(&full).expect("report serialises");
                s.push('\n');
                s
            }
            Format::Text => format!("{}\n", outcome.summary.join("\n")),
            Format::Dot => match outcome.dot {
                Some(dot) => dot,
                None => {
                    eprintln!("error: `{}` has no graph output", outcome.command);
                    return 2;
                }
            },
        }
    };
    match &cli.output {
        None => print!("{body}"),
        Some(path) => {
            if let Err(e) = std::fs::write(path, body) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return 2;
            }
        }
    }
    if outcome.holds {
        0
    } else {
        1
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

fn coxeter_check(input: &Path) -> Result<Outcome, Failure> {
    let sys = parse_coxeter(&read_input(input)?).map_err(|e| Failure::usage(e.to_string()))?;
    let (fc, witness) = sys.is_fc();
    let witness = witness.map(|w| sys.render_subset(w));
    let poset = sys.spherical_subsets();
    let largest = poset.subsets.iter().map(|s| s.card()).max().unwrap_or(0);
    let spherical = sys.is_spherical(sys.full_set());
    let mut summary = vec![format!(
        "{}: rank {}, {}, {}",
        input.display(),
        sys.rank(),
        if spherical { "spherical" } else { "not spherical" },
        if fc { "FC".to_string() } else { format!("not FC (witness {})", witness.as_deref().unwrap_or("?")) },
    )];
    summary.push(format!(
        "spherical subsets: {} (largest size {largest})",
        poset.subsets.len()
    ));
    let report = json!({
        "generators": sys.generators(),
        "rank": sys.rank(),
        "whole_set_spherical": spherical,
        "fc": fc,
        "fc_witness": witness,
        "spherical_subsets": poset.subsets.len(),
        "largest_spherical": largest,
        "subsets": poset.subsets.iter().map(|&s| sys.render_subset(s)).collect::<Vec<_>>(),
    });
    Ok(Outcome {
        holds: true,
        command: "coxeter check",
        report,
        summary,
        dot: None,
    })
}

fn build_ball(input: &Path, build: &BuildArgs) -> Result<DavisBall, Failure> {
    let product =
        parse_graph_product(&read_input(input)?).map_err(|e| Failure::usage(e.to_string()))?;
    DavisBall::build(product, build.radius, build.cap_vertices).map_err(|e| match e {
        DavisError::TooLarge { cap } => Failure::cap(format!("ball exceeds {cap} vertices")),
        other => Failure::usage(other.to_string()),
    })
}

fn davis_build(input: &Path, build: &BuildArgs) -> Result<Outcome, Failure> {
    let ball = build_ball(input, build)?;
    let complex = ball.complex();
    let star_complete = (0..complex.vertex_count())
        .filter(|&v| ball.is_star_complete(v))
        .count();
    let flags = complex.flag_violations();
    let summary = vec![
        format!(
            "ball of radius {}: {} group elements, {} vertices, {} edges, dim {}",
            ball.radius(),
            ball.elements().len(),
            complex.vertex_count(),
            complex.edges().len(),
            complex.dim()
        ),
        format!(
            "star-complete vertices: {star_complete}/{}; hyperplanes: {}; flag violations: {}",
            complex.vertex_count(),
            complex.hyperplane_count(),
            flags.len()
        ),
    ];
    let vertex_labels: Vec<String> = (0..complex.vertex_count())
        .map(|v| ball.render_vertex(v))
        .collect();
    let product = ball.product();
    let cube_data: Vec<Value> = (0..complex.cubes().len())
        .map(|c| {
            let (bottom, lower) = ball.cube_bottom(c);
            let corners = complex.cube(c).vertices();
            let upper = corners
                .iter()
                .map(|&v| ball.vertices()[v as usize].clique)
                .max_by_key(|cl| cl.card())
                .expect("cube has corners");
            json!({
                "vertices": corners,
                "conjugator": product.render(&ball.vertices()[bottom as usize].rep),
                "lower_clique": product.render_clique(lower),
                "upper_clique": product.render_clique(upper),
            })
        })
        .collect();
    let report = json!({
        "radius": ball.radius(),
        "elements": ball.elements().len(),
        "complex": complex.summary(),
        "star_complete_vertices": star_complete,
        "flag_violations": flags,
        "vertex_labels": vertex_labels,
        "cube_data": cube_data,
    });
    Ok(Outcome {
        holds: flags.is_empty(),
        command: "davis build",
        report,
        summary,
        dot: Some(complex.to_dot()),
    })
}

fn verify(cmd: &VerifyCmd) -> Result<Outcome, Failure> {
    let (args, which) = match cmd {
        VerifyCmd::Star(a) => (a, "star"),
        VerifyCmd::DisjointStar(a) => (a, "disjoint-star"),
        VerifyCmd::Heights(a) => (a, "heights"),
        VerifyCmd::FixLemma(a) => (a, "fix-lemma"),
        VerifyCmd::Chains(a) => (a, "chains"),
    };
    let text = read_input(&args.input)?;
    let root: Value = serde_json::from_str(&text)
        .map_err(|e| Failure::usage(format!("malformed JSON: {e}")))?;
    let keys: Vec<&str> = root
        .as_object()
        .map(|o| o.keys().map(String::as_str).collect())
        .unwrap_or_default();
    if keys.contains(&"complex") {
        let action = parse_explicit_action(&text).map_err(|e| Failure::usage(e.to_string()))?;
        run_verify(&action, which)
    } else if keys.contains(&"vertices") {
        let ball = build_ball(&args.input, &args.build)?;
        let action = DavisAction::new(&ball, args.margin);
        run_verify(&action, which)
    } else {
        Err(Failure::usage(
            "input is neither a graph product ({vertices, ...}) nor an explicit action ({complex, ...})",
        ))
    }
}

fn run_verify<A: GroupAction>(action: &A, which: &'static str) -> Result<Outcome, Failure> {
    match which {
        "star" => {
            let report = check_property_star(action);
            let holds = report.holds();
            let summary = vec![
                format!(
                    "star extension {}: {} ordered pairs over {} interior cubes, {} violations",
                    verdict(holds),
                    report.pairs_checked,
                    report.interior_cubes,
                    report.violations.len()
                ),
            ];
            Ok(Outcome {
                holds,
                command: "verify star",
                report: to_value(&report),
                summary,
                dot: None,
            })
        }
        "disjoint-star" => {
            let report = check_disjoint_star(action, 1_000_000);
            let holds = report.holds();
            let summary = vec![format!(
                "disjoint star extension {}: {} pairs walked ({} skipped at the boundary), longest path {}, {} failures",
                verdict(holds),
                report.pairs_checked,
                report.pairs_skipped,
                report.max_path_len,
                report.failures.len()
            )];
            Ok(Outcome {
                holds,
                command: "verify disjoint-star",
                report: to_value(&report),
                summary,
                dot: None,
            })
        }
        "heights" => {
            let stab = stabiliser_poset(action);
            let fixed = fixed_set_poset(action);
            let holds = stab.within_bound && fixed.within_bound;
            let summary = vec![
                format!(
                    "poset heights {}: stabilisers {} of bound {}, fixed sets {} of bound {}",
                    verdict(holds),
                    stab.height,
                    stab.bound,
                    fixed.height,
                    fixed.bound
                ),
                format!(
                    "{} distinct stabilisers over {} interior cubes, {} distinct fixed sets",
                    stab.distinct_stabilisers, stab.interior_cubes, fixed.distinct_fixed_sets
                ),
            ];
            let report = json!({
                "stabiliser_poset": to_value(&stab),
                "fixed_set_poset": to_value(&fixed),
            });
            Ok(Outcome {
                holds,
                command: "verify heights",
                report,
                summary,
                dot: None,
            })
        }
        "fix-lemma" => {
            let report = check_fix_lemma(action);
            let holds = report.holds();
            let summary = vec![format!(
                "fixed-set test {}: {} subgroups checked, {} mismatches",
                verdict(holds),
                report.subgroups_checked,
                report.mismatches.len()
            )];
            Ok(Outcome {
                holds,
                command: "verify fix-lemma",
                report: to_value(&report),
                summary,
                dot: None,
            })
        }
        "chains" => {
            let report = check_chains(action);
            let holds = report.within_bound && report.face_monotone_violations == 0;
            let summary = vec![format!(
                "chain conditions {}: {} maximal chains, longest {} of bound {}, {} monotonicity violations",
                verdict(holds),
                report.maximal_chains,
                report.max_chain_length,
                report.bound,
                report.face_monotone_violations
            )];
            Ok(Outcome {
                holds,
                command: "verify chains",
                report: to_value(&report),
                summary,
                dot: None,
            })
        }
        _ => unreachable!("verify subcommands are fixed"),
    }
}

fn deligne_error(e: DeligneError) -> Failure {
    match e {
        DeligneError::TooLarge { cap } => Failure::cap(format!("ball exceeds {cap} vertices")),
        other => Failure::usage(other.to_string()),
    }
}

fn deligne_domain(input: &Path) -> Result<Outcome, Failure> {
    let sys = parse_coxeter(&read_input(input)?).map_err(|e| Failure::usage(e.to_string()))?;
    let dom = FundamentalDomain::build(&sys).map_err(deligne_error)?;
    let summary_data = dom.summary();
    let holds = summary_data.standard_height <= summary_data.height_bound;
    let summary = vec![
        format!(
            "fundamental domain {}: dim {}, {} cubes, standard-label height {} of bound {}",
            verdict(holds),
            summary_data.dim,
            dom.cubes().len(),
            summary_data.standard_height,
            summary_data.height_bound
        ),
        format!("cubes by dimension: {:?}", summary_data.cubes_by_dim),
    ];
    Ok(Outcome {
        holds,
        command: "deligne domain",
        report: to_value(&summary_data),
        summary,
        dot: None,
    })
}

fn build_free_ball(input: &Path, build: &BuildArgs) -> Result<(DeligneBall, FreeOracle, FundamentalDomain), Failure> {
    let sys = parse_coxeter(&read_input(input)?).map_err(|e| Failure::usage(e.to_string()))?;
    let ball = DeligneBall::build(&sys, build.radius, build.cap_vertices).map_err(deligne_error)?;
    let oracle = FreeOracle::new(&sys).map_err(deligne_error)?;
    let dom = FundamentalDomain::build(&sys).map_err(deligne_error)?;
    Ok((ball, oracle, dom))
}

fn deligne_free_ball(input: &Path, build: &BuildArgs) -> Result<Outcome, Failure> {
    let (ball, _, _) = build_free_ball(input, build)?;
    let complex = ball.complex();
    let flags = complex.flag_violations();
    let is_tree = complex.edges().len() + 1 == complex.vertex_count() as usize;
    let holds = flags.is_empty() && is_tree;
    let summary = vec![format!(
        "coset tree {}: radius {}, {} vertices, {} edges, {} flag violations",
        verdict(holds),
        ball.radius(),
        complex.vertex_count(),
        complex.edges().len(),
        flags.len()
    )];
    let report = json!({
        "radius": ball.radius(),
        "complex": complex.summary(),
        "tree": is_tree,
        "flag_violations": flags,
    });
    Ok(Outcome {
        holds,
        command: "deligne free-ball",
        report,
        summary,
        dot: Some(ball.to_dot()),
    })
}

fn deligne_formal_star(input: &Path, build: &BuildArgs) -> Result<Outcome, Failure> {
    let (ball, oracle, dom) = build_free_ball(input, build)?;
    let samples = ball.formal_samples();
    let formal = formal_property_star(&dom, &oracle, &samples).map_err(deligne_error)?;
    let ball_star = ball.check_star(&oracle).map_err(deligne_error)?;
    let holds = formal.holds() && ball_star.holds();
    let summary = vec![
        format!(
            "symbolic star extension {}: {} samples through the oracle, {} contract violations",
            verdict(holds),
            formal.samples_checked,
            formal.violations.len()
        ),
        format!(
            "ball witnesses: {} meeting pairs, {} without a star witness",
            ball_star.pairs_checked,
            ball_star.violations.len()
        ),
    ];
    let report = json!({
        "formal": to_value(&formal),
        "ball": to_value(&ball_star),
    });
    Ok(Outcome {
        holds,
        command: "deligne formal-star",
        report,
        summary,
        dot: None,
    })
}

fn verdict(holds: bool) -> &'static str {
    if holds {
        "holds"
    } else {
        "VIOLATED"
    }
}

fn to_value<T: serde::Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("reports serialise")
}
