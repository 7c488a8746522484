//! `valtree`: scenario-driven diagnostics for finitely generated special
//! linear groups acting on products of lattice trees.
//!
//! Every subcommand reads one JSON scenario file and writes machine-readable
//! results into `--out` (always `report.json`; `profile` also writes
//! `profile.csv`). Exit codes: 0 on success, 2 when the word ball exceeds
//! the element cap, 3 on scenario parse/validation errors.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use valtree_core::alperin_shalen::{integrality_filter, isotropy_certificate, synthesize_valuations};
use valtree_core::error::{Error, Result};
use valtree_core::extint::ExtInt;
use valtree_core::matrix::EMat;
use valtree_core::probe::{
    displacement_profile, profile_csv, stability_flags, stabilizer_census, ultrametric_cover,
};
use valtree_core::scalar::rational_string;
use valtree_core::scenario::GroupScenario;
use valtree_core::tracerep::{alpha, burnside_basis};
use valtree_core::unipotent::composition_rank_bounds;
use valtree_core::wordball::{word_ball_capped, word_label};

#[derive(Parser)]
#[command(
    name = "valtree",
    about = "Valuation, length, and lattice-tree diagnostics for matrix groups",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate the configured valuations on the scenario's element literals.
    Valuate(RunArgs),
    /// Enumerate the word ball and report per-radius growth.
    Ball(RunArgs),
    /// Displacement profile: counts per radius and threshold (CSV + JSON).
    Profile(RunArgs),
    /// Word-ball elements fixing every configured base vertex.
    Census(RunArgs),
    /// Partition the scenario's points into d-balls and certify the cover.
    Cover(RunArgs),
    /// Lower/upper bounds for the composition-subgroup rank of unipotent groups.
    Rank(RunArgs),
    /// Trace-coordinate representation: basis words, Gram determinant, α images.
    #[command(name = "trace-rep")]
    TraceRep(RunArgs),
    /// Synthesized valuations, integrality verdicts, and isotropy certificates.
    #[command(name = "alperin-shalen")]
    AlperinShalen(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Scenario description (JSON).
    #[arg(long)]
    scenario: PathBuf,
    /// Output directory for report.json (and profile.csv).
    #[arg(long)]
    out: PathBuf,
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(run(cli));
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BallTooLarge { .. } => 2,
        Error::Parse(_)
        | Error::Validation(_)
        | Error::NotSpecialLinear(_)
        | Error::NotPrime(_)
        | Error::NotUnipotentForm
        | Error::IncompatibleValuation { .. }
        | Error::UnsupportedDimension { .. } => 3,
        _ => 1,
    }
}

fn run(cli: Cli) -> i32 {
    let (name, args): (&str, &RunArgs) = match &cli.cmd {
        Cmd::Valuate(a) => ("valuate", a),
        Cmd::Ball(a) => ("ball", a),
        Cmd::Profile(a) => ("profile", a),
        Cmd::Census(a) => ("census", a),
        Cmd::Cover(a) => ("cover", a),
        Cmd::Rank(a) => ("rank", a),
        Cmd::TraceRep(a) => ("trace-rep", a),
        Cmd::AlperinShalen(a) => ("alperin-shalen", a),
    };

    let text = match fs::read_to_string(&args.scenario) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.scenario.display());
            return 3;
        }
    };
    let sc = match GroupScenario::from_json(&text) {
        Ok(sc) => sc,
        Err(e) => {
            eprintln!("error: {e}");
            return 3;
        }
    };
    if let Err(e) = fs::create_dir_all(&args.out) {
        eprintln!("error: cannot create {}: {e}", args.out.display());
        return 1;
    }

    let result = match &cli.cmd {
        Cmd::Valuate(_) => cmd_valuate(&sc),
        Cmd::Ball(_) => cmd_ball(&sc),
        Cmd::Profile(_) => cmd_profile(&sc, args),
        Cmd::Census(_) => cmd_census(&sc),
        Cmd::Cover(_) => cmd_cover(&sc),
        Cmd::Rank(_) => cmd_rank(&sc),
        Cmd::TraceRep(_) => cmd_trace_rep(&sc),
        Cmd::AlperinShalen(_) => cmd_alperin_shalen(&sc),
    };

    match result {
        Ok(report) => {
            let path = args.out.join("report.json");
            let pretty = serde_json::to_string_pretty(&report).expect("report serializes");
            if let Err(e) = fs::write(&path, pretty + "\n") {
                eprintln!("error: cannot write {}: {e}", path.display());
                return 1;
            }
            println!("{name}: {} -> {}", sc.name, path.display());
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn extint_json(v: &ExtInt) -> Value {
    match v {
        ExtInt::Finite(k) => json!(k),
        ExtInt::Infinity => json!("infinity"),
    }
}

fn matrix_rows(g: &EMat) -> Value {
    let rows: Vec<Vec<String>> = (0..g.n())
        .map(|i| (0..g.n()).map(|j| g.get(i, j).to_string()).collect())
        .collect();
    json!(rows)
}

fn cmd_valuate(sc: &GroupScenario) -> Result<Value> {
    let mut elements = Vec::new();
    for x in &sc.elements {
        let mut values = Vec::new();
        for v in &sc.valuations {
            let xv = x.promoted_like(&v.uniformizer())?;
            values.push(json!({
                "valuation": v.to_string(),
                "value": extint_json(&v.valuate(&xv)?),
                "integral": v.is_integral(&xv)?,
            }));
        }
        elements.push(json!({ "element": x.to_string(), "values": values }));
    }
    Ok(json!({
        "scenario": sc.name,
        "valuations": sc.valuations.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        "elements": elements,
    }))
}

fn cmd_ball(sc: &GroupScenario) -> Result<Value> {
    const LISTING_LIMIT: usize = 10_000;
    let ball = word_ball_capped(&sc.generators, sc.r_max, sc.element_cap)?;
    let mut sizes = Vec::new();
    for r in sc.r_min..=sc.r_max {
        let count = ball.iter_discovery().filter(|e| e.len <= r).count();
        sizes.push(json!({ "R": r, "count": count }));
    }
    let elements: Vec<Value> = ball
        .iter()
        .take(LISTING_LIMIT)
        .map(|e| {
            json!({
                "word": word_label(&sc.generators, &e.word),
                "len": e.len,
                "matrix": matrix_rows(&e.mat),
            })
        })
        .collect();
    Ok(json!({
        "scenario": sc.name,
        "generators": sc.generators.labels(),
        "element_cap": sc.element_cap,
        "sizes": sizes,
        "elements_listed": elements.len(),
        "elements": elements,
    }))
}

fn cmd_profile(sc: &GroupScenario, args: &RunArgs) -> Result<Value> {
    let rows = displacement_profile(sc)?;
    let csv = profile_csv(&rows);
    let path = args.out.join("profile.csv");
    fs::write(&path, csv)
        .map_err(|e| Error::Validation(format!("cannot write {}: {e}", path.display())))?;
    let stability = stability_flags(&rows);
    Ok(json!({
        "scenario": sc.name,
        "n": sc.n,
        "valuations": sc.valuations.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        "sym_proxy": sc.sym.as_ref().map(|s| json!({
            "label": s.label(),
            "t0": rational_string(&s.t0),
            "bound": rational_string(&s.bound),
        })),
        "rows": rows,
        "stability": stability,
    }))
}

fn cmd_census(sc: &GroupScenario) -> Result<Value> {
    let census = stabilizer_census(sc, sc.r_max)?;
    let vs = &sc.valuations;
    let mut elements = Vec::new();
    for e in &census {
        elements.push(json!({
            "word": word_label(&sc.generators, &e.word),
            "len": e.len,
            "matrix": matrix_rows(&e.mat),
            "integral_characteristic": isotropy_certificate(&e.mat, vs)?,
        }));
    }
    Ok(json!({
        "scenario": sc.name,
        "radius": sc.r_max,
        "valuations": vs.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        "count": census.len(),
        "elements": elements,
    }))
}

fn cmd_cover(sc: &GroupScenario) -> Result<Value> {
    let spec = sc.cover.as_ref().ok_or_else(|| {
        Error::Validation("scenario has no cover section (points, valuation, d)".into())
    })?;
    let cover = ultrametric_cover(&spec.points, &spec.valuation, &spec.d)?;
    let printed: Vec<Vec<String>> = cover
        .parts
        .iter()
        .map(|p| p.iter().map(|&i| spec.points[i].to_string()).collect())
        .collect();
    Ok(json!({
        "scenario": sc.name,
        "valuation": spec.valuation.to_string(),
        "d": rational_string(&spec.d),
        "points": spec.points.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "parts": cover.parts,
        "parts_printed": printed,
        "certificate": cover.certificate,
        "certificate_holds": cover.certificate.holds(),
    }))
}

fn cmd_rank(sc: &GroupScenario) -> Result<Value> {
    let cap_len = sc.rank_max_word_len.unwrap_or(6);
    let bounds = composition_rank_bounds(&sc.generators, cap_len)?;
    let layers: Vec<Value> = bounds
        .per_layer
        .iter()
        .map(|(layer, lo, hi)| {
            json!({
                "k": layer.k,
                "residual": layer.residual,
                "positions": layer.positions,
                "lower": lo,
                "upper": hi,
            })
        })
        .collect();
    Ok(json!({
        "scenario": sc.name,
        "max_word_len": cap_len,
        "lower": bounds.lower,
        "upper": bounds.upper,
        "saturation_length": bounds.saturation_length,
        "layers": layers,
    }))
}

fn cmd_trace_rep(sc: &GroupScenario) -> Result<Value> {
    let cap_len = sc.trace_max_word_len.unwrap_or(8);
    let tb = match burnside_basis(&sc.generators, cap_len) {
        Ok(tb) => tb,
        // Mathematical verdicts are reported, not treated as failures.
        Err(Error::NotIrreducible(detail)) => {
            return Ok(json!({
                "scenario": sc.name,
                "status": "not-irreducible",
                "detail": detail,
            }))
        }
        Err(Error::Unsupported(detail)) => {
            return Ok(json!({
                "scenario": sc.name,
                "status": "undecided",
                "detail": detail,
                "max_word_len": cap_len,
            }))
        }
        Err(e) => return Err(e),
    };
    let words: Vec<String> = tb
        .words()
        .iter()
        .map(|w| word_label(&sc.generators, w))
        .collect();
    let mut images = Vec::new();
    for (label, g) in sc.generators.labels().iter().zip(sc.generators.gens()) {
        images.push(json!({
            "generator": label,
            "alpha": matrix_rows(&alpha(g, &tb)?),
        }));
    }
    Ok(json!({
        "scenario": sc.name,
        "status": "ok",
        "dimension": tb.basis().len(),
        "basis_words": words,
        "gram_determinant": tb.gram().det_field().to_string(),
        "images": images,
    }))
}

fn cmd_alperin_shalen(sc: &GroupScenario) -> Result<Value> {
    let ring = sc.ring.as_ref().ok_or_else(|| {
        Error::Validation("scenario has no ring section (kind z-inv-s or laurent)".into())
    })?;
    let vs = synthesize_valuations(ring);
    let mut elements = Vec::new();
    for x in &sc.elements {
        elements.push(json!({
            "element": x.to_string(),
            "integral": integrality_filter(x, &vs)?,
        }));
    }
    let mut generators = Vec::new();
    for (label, g) in sc.generators.labels().iter().zip(sc.generators.gens()) {
        generators.push(json!({
            "generator": label,
            "integral_characteristic": isotropy_certificate(g, &vs)?,
        }));
    }
    Ok(json!({
        "scenario": sc.name,
        "ring": ring.to_string(),
        "valuations": vs.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        "elements": elements,
        "generators": generators,
    }))
}
