use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use picard::config::Config;
use picard::congruence::{torsion_free_certificate, Ideal};
use picard::ford::{candidate_spheres, cusp_overlaps, omega_status, realizable_depths, reduce_to_domain, spheres_containing};
use picard::gens::generator_table;
use picard::heisenberg::{overlap_torsion, CuspElt};
use picard::hermitian::{parse_point_json, Point};
use picard::mirror::{search_orthogonal_mirrors, verify_mirror_l, verify_mirror_r, MirrorContext};
use picard::presentation::{coverage, verify_relators, verify_tables_7_8};
use picard::tables::{check_printed, reflection_identities, reflection_identity_variants};
use picard::torsion::{enumerate_torsion, projective_order, stabilizer, torsion_report};
use picard::{Error, Result};

/// Exact computations in PU(2,1,O₇). Every command prints JSON on stdout.
#[derive(Parser)]
#[command(name = "picard", version)]
struct Cli {
    #[command(flatten)]
    config: ConfigArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ConfigArgs {
    #[arg(long, global = true, env = "PICARD_MAX_REDUCE_ITERS", default_value_t = 1000)]
    max_reduce_iters: usize,
    #[arg(long, global = true, env = "PICARD_PRECISION_BITS", default_value_t = 128)]
    precision_bits: u32,
    #[arg(long, global = true, env = "PICARD_PRECISION_CAP", default_value_t = 4096)]
    precision_cap: u32,
    #[arg(long, global = true, env = "PICARD_CLOSURE_CAP", default_value_t = 10_000)]
    closure_cap: usize,
    #[arg(long, global = true, env = "PICARD_WORD_SEARCH_LEN", default_value_t = 12)]
    word_search_len: usize,
    #[arg(long, global = true, env = "PICARD_HEIGHT_BOUND", default_value_t = 20)]
    height_bound: i64,
}

impl ConfigArgs {
    fn config(&self) -> Result<Config> {
        let cfg = Config {
            max_reduce_iters: self.max_reduce_iters,
            precision_bits: self.precision_bits,
            precision_cap: self.precision_cap,
            closure_cap: self.closure_cap,
            word_search_len: self.word_search_len,
            height_bound: self.height_bound,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Ford domain reduction and isometric spheres.
    #[command(subcommand)]
    Ford(FordCmd),
    /// The cusp group Γ∞ and the prism P.
    #[command(subcommand)]
    Cusp(CuspCmd),
    /// Torsion classes and stabilizers of points of Ω.
    #[command(subcommand)]
    Torsion(TorsionCmd),
    /// Stabilizers of complex reflection mirrors.
    #[command(subcommand)]
    Mirror(MirrorCmd),
    /// Relators and table rows of the two-generator presentation.
    #[command(subcommand)]
    Presentation(PresentationCmd),
    /// Reduction modulo a prime of O₇.
    #[command(subcommand)]
    Congruence(CongruenceCmd),
    /// Everything in one document.
    #[command(subcommand)]
    Report(ReportCmd),
}

#[derive(Subcommand)]
enum FordCmd {
    /// Move a point of H²_C into Ω.
    Reduce {
        #[arg(long)]
        point: String,
    },
    /// Candidate spheres, or those whose closed ball contains a point.
    Spheres {
        #[arg(long)]
        point: Option<String>,
    },
}

#[derive(Subcommand)]
enum CuspCmd {
    Overlaps,
    Torsion,
}

#[derive(Subcommand)]
enum TorsionCmd {
    Enumerate {
        /// Accepted for compatibility; output is always JSON.
        #[arg(long)]
        json: bool,
    },
    Stabilizer {
        #[arg(long)]
        point: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    #[value(name = "R")]
    R,
    #[value(name = "L")]
    L,
}

#[derive(Subcommand)]
enum MirrorCmd {
    Verify {
        #[arg(long, value_enum)]
        which: Which,
    },
    /// Mirrors of the given square norm orthogonal to a mirror.
    Search {
        #[arg(long)]
        norm: i128,
        #[arg(long)]
        height: i64,
        #[arg(long, value_enum, default_value = "L")]
        which: Which,
    },
}

#[derive(Subcommand)]
enum PresentationCmd {
    Verify,
}

#[derive(Subcommand)]
enum CongruenceCmd {
    Check {
        #[arg(long, value_parser = parse_ideal)]
        ideal: Ideal,
    },
}

#[derive(Subcommand)]
enum ReportCmd {
    All,
}

fn parse_ideal(s: &str) -> std::result::Result<Ideal, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn to_json<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn point_arg(s: &str) -> Result<Point> {
    Ok(Point::from_kvec(&parse_point_json(s)?))
}

fn ford_reduce(point: &str, cfg: &Config) -> Result<Value> {
    let x = point_arg(point)?;
    let (g, y) = reduce_to_domain(&x, cfg)?;
    Ok(json!({
        "input": x.to_strings(),
        "element": to_json(&g),
        "cusp_normal_form": CuspElt::from_matrix(&g).map(|c| c.to_string()),
        "identity": g.is_identity(),
        "point": y.to_strings(),
        "omega": to_json(&omega_status(&y)?),
    }))
}

fn ford_spheres(point: Option<&str>) -> Result<Value> {
    let row = |s: &picard::ford::IsomSphere| {
        json!({
            "label": s.label(),
            "j": s.j,
            "alpha": s.alpha.to_string(),
            "a31_norm": s.a31norm,
            "matrix": to_json(&s.elt),
        })
    };
    match point {
        None => Ok(json!({ "spheres": candidate_spheres().iter().map(row).collect::<Vec<_>>() })),
        Some(p) => {
            let x = point_arg(p)?;
            let hits = spheres_containing(&x)?
                .iter()
                .map(|(s, side)| {
                    let mut r = row(s);
                    r["side"] = to_json(side);
                    r
                })
                .collect::<Vec<_>>();
            Ok(json!({ "point": x.to_strings(), "spheres": hits }))
        }
    }
}

fn cusp_overlaps_json() -> Value {
    let rows: Vec<Value> = cusp_overlaps()
        .iter()
        .map(|o| json!({ "normal_form": o.elt.to_string(), "elt": to_json(&o.elt), "matrix": to_json(&o.elt.to_matrix()), "witness": to_json(&o.witness) }))
        .collect();
    json!({ "count": rows.len(), "overlaps": rows })
}

fn cusp_torsion_json() -> Value {
    let rows: Vec<Value> = overlap_torsion(cusp_overlaps())
        .iter()
        .map(|o| {
            let g = o.elt.to_matrix();
            json!({ "normal_form": o.elt.to_string(), "matrix": to_json(&g), "order": projective_order(&g) })
        })
        .collect();
    json!({ "paper_table": "4.1", "count": rows.len(), "elements": rows })
}

fn torsion_enumerate(cfg: &Config) -> Result<Value> {
    let classes = enumerate_torsion(cfg)?;
    let report = torsion_report(&classes, cfg)?;
    let printed = check_printed(&classes, &report, cfg)?;
    let printed: Vec<Value> = printed
        .iter()
        .map(|p| {
            let mut v = to_json(p);
            v["paper_table"] = json!(p.paper_table.to_string());
            v["pass"] = json!(p.pass());
            v
        })
        .collect();
    Ok(json!({
        "report": to_json(&report),
        "printed": printed,
        "identities": to_json(&reflection_identities()?),
        "identity_variants": to_json(&reflection_identity_variants()?),
    }))
}

fn torsion_stabilizer(point: &str, cfg: &Config) -> Result<Value> {
    let (_, st) = stabilizer(&point_arg(point)?, cfg)?;
    Ok(to_json(&st))
}

fn mirror_verify(which: Which, cfg: &Config) -> Result<Value> {
    let r = match which {
        Which::R => verify_mirror_r(cfg)?,
        Which::L => verify_mirror_l(cfg)?,
    };
    let mut v = to_json(&r);
    v["pass"] = json!(r.pass());
    Ok(v)
}

fn mirror_search(norm: i128, height: i64, which: Which) -> Result<Value> {
    let ctx = match which {
        Which::R => MirrorContext::of_r(),
        Which::L => MirrorContext::of_l(),
    };
    let found = search_orthogonal_mirrors(&ctx, norm, height)?;
    let rows: Vec<Vec<String>> = found.iter().map(|v| v.iter().map(|x| x.to_string()).collect()).collect();
    Ok(json!({ "mirror": ctx.name, "norm": norm, "height": height, "count": rows.len(), "polars": rows }))
}

fn presentation_verify(cfg: &Config) -> Result<Value> {
    let relators = verify_relators()?;
    let rows = verify_tables_7_8(cfg)?;
    let classes = enumerate_torsion(cfg)?;
    let cov = coverage(&classes, cfg)?;
    let rows: Vec<Value> = rows
        .iter()
        .map(|r| {
            let mut v = to_json(r);
            v["paper_table"] = json!(r.paper_table.to_string());
            v["pass"] = json!(r.pass());
            v
        })
        .collect();
    Ok(json!({
        "relators": to_json(&relators),
        "relators_pass": relators.iter().all(|r| r.trivial),
        "rows": rows,
        "coverage": to_json(&cov),
        "coverage_pass": cov.iter().all(|c| c.verified),
    }))
}

fn congruence_check(ideal: Ideal, cfg: &Config) -> Result<Value> {
    let classes = enumerate_torsion(cfg)?;
    Ok(to_json(&torsion_free_certificate(ideal, &classes, cfg.closure_cap)?))
}

fn report_all(cfg: &Config) -> Result<Value> {
    let classes = enumerate_torsion(cfg)?;
    let depths: Vec<Value> = generator_table()
        .iter()
        .enumerate()
        .map(|(i, g)| json!({ "generator": format!("A{}", i + 1), "depth": g.entry(2, 0).norm() }))
        .collect();
    let congruence = [Ideal::Isqrt7, Ideal::Tau]
        .iter()
        .map(|&r| torsion_free_certificate(r, &classes, cfg.closure_cap).map(|c| to_json(&c)))
        .collect::<Result<Vec<_>>>()?;
    Ok(json!({
        "config": to_json(cfg),
        "cusp_overlaps": cusp_overlaps_json(),
        "cusp_torsion": cusp_torsion_json(),
        "torsion": torsion_enumerate(cfg)?,
        "mirror_r": mirror_verify(Which::R, cfg)?,
        "mirror_l": mirror_verify(Which::L, cfg)?,
        "presentation": presentation_verify(cfg)?,
        "congruence": congruence,
        "generator_depths": depths,
        "realizable_depths": realizable_depths(11),
    }))
}

fn run(cli: &Cli) -> Result<Value> {
    let cfg = cli.config.config()?;
    match &cli.command {
        Command::Ford(FordCmd::Reduce { point }) => ford_reduce(point, &cfg),
        Command::Ford(FordCmd::Spheres { point }) => ford_spheres(point.as_deref()),
        Command::Cusp(CuspCmd::Overlaps) => Ok(cusp_overlaps_json()),
        Command::Cusp(CuspCmd::Torsion) => Ok(cusp_torsion_json()),
        Command::Torsion(TorsionCmd::Enumerate { .. }) => torsion_enumerate(&cfg),
        Command::Torsion(TorsionCmd::Stabilizer { point }) => torsion_stabilizer(point, &cfg),
        Command::Mirror(MirrorCmd::Verify { which }) => mirror_verify(*which, &cfg),
        Command::Mirror(MirrorCmd::Search { norm, height, which }) => mirror_search(*norm, *height, *which),
        Command::Presentation(PresentationCmd::Verify) => presentation_verify(&cfg),
        Command::Congruence(CongruenceCmd::Check { ideal }) => congruence_check(*ideal, &cfg),
        Command::Report(ReportCmd::All) => report_all(&cfg),
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Precision { .. } => "precision",
        Error::IterationLimit(_) | Error::ClosureCap(_) => "cap",
        Error::Parse(_) => "parse",
        _ => "invalid",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(v) => {
            println!("{}", serde_json::to_string_pretty(&v).expect("json"));
            ExitCode::SUCCESS
        }
        Err(e) => {
            let v = json!({ "error": error_kind(&e), "message": e.to_string() });
            println!("{}", serde_json::to_string_pretty(&v).expect("json"));
            ExitCode::from(2)
        }
    }
}
