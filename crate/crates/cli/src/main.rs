//! Command-line surface for the SU(2)-abelian decision engine: exact
//! decisions and classification, interval inspection, set emptiness reports,
//! witness construction, the numerical search, SVG plots, grid sweeps, and
//! the bundled reproduction suite.

mod report;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::json;

use su2abel::decide::{
    check_congruences, classify, condition_a, condition_b, condition_c, decide, grid_manifolds,
};
use su2abel::gluing::{build_gluing, GraphManifold};
use su2abel::intervals::{j_set, supporting_angle, FiberSign};
use su2abel::oracle::{
    assemble_witness, build_presentation, solve_numeric, verify_witness, SolveOptions,
};
use su2abel::repsets::{
    a1h2_empty, h1a2_empty, h1h2_empty, h1h2_empty_beta_zero, p1p2_empty, plot_bundle, s_sets,
};
use su2abel::seifert::{torus_knot_exterior, SeifertPiece};

#[derive(Parser)]
#[command(
    name = "su2abel",
    about = "Decide SU(2)-abelianness of graph manifolds glued from two small Seifert pieces",
    version
)]
struct Cli {
    /// Configuration file (JSON); defaults to $SU2ABEL_CONFIG when set.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output format for decide/classify.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the manifold in FILE is SU(2)-abelian.
    Decide { file: PathBuf },
    /// Decide and report the classification row of the manifold in FILE.
    Classify { file: PathBuf },
    /// Print the achievable meridian-trace set for fiber orders P1, P2.
    Intervals {
        p1: i64,
        p2: i64,
        #[arg(long, value_enum, default_value = "zero")]
        parity: Parity,
    },
    /// Report boundary-set emptiness verdicts for the manifold in FILE.
    Sets { file: PathBuf },
    /// Construct and verify an explicit representation witness for FILE.
    Witness { file: PathBuf },
    /// Run the seeded numerical representation search on FILE.
    Oracle {
        file: PathBuf,
        #[arg(long)]
        restarts: Option<u32>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Render the boundary representation picture of FILE (piece or manifold) as SVG.
    Plot {
        file: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Construct a gluing of the two pieces in FILE realizing Δ(λ₁,h₂) = N, Δ(λ₂,h₁) = M.
    BuildGluing { file: PathBuf, n: i64, m: i64 },
    /// Print the exterior of the (P, Q) torus knot in the knot-meridian presentation.
    TorusKnot { p: i64, q: i64 },
    /// Sweep the manifold grid and print one CSV row per manifold.
    Sweep {
        #[arg(long)]
        max_p: Option<i64>,
        #[arg(long)]
        max_entry: Option<i64>,
    },
    /// Run the bundled reproduction suite and print one line per check.
    VerifyPaper,
}

#[derive(Clone, Copy, ValueEnum)]
enum Parity {
    Zero,
    Pi,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct Config {
    #[serde(default)]
    tol: Option<f64>,
    #[serde(default)]
    restarts: Option<u32>,
    #[serde(default)]
    seed: Option<u64>,
    #[serde(default)]
    max_p: Option<i64>,
    #[serde(default)]
    max_entry: Option<i64>,
    #[serde(default)]
    format: Option<Format>,
}

#[derive(Deserialize)]
struct PiecePairFile {
    m1: SeifertPiece,
    m2: SeifertPiece,
}

fn load_config(path: Option<&PathBuf>) -> anyhow::Result<Config> {
    let path = match path {
        Some(p) => Some(p.clone()),
        None => std::env::var_os("SU2ABEL_CONFIG").map(PathBuf::from),
    };
    match path {
        None => Ok(Config::default()),
        Some(p) => {
            let text = std::fs::read_to_string(&p)
                .with_context(|| format!("reading config {}", p.display()))?;
            serde_json::from_str(&text).with_context(|| format!("parsing config {}", p.display()))
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf, what: &str) -> anyhow::Result<T> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| anyhow!("{}: invalid {what}: {e}", path.display()))
}

fn verdict_json(m: &GraphManifold) -> anyhow::Result<(serde_json::Value, bool)> {
    let v = decide(m)?;
    let class = classify(m)?.map(|c| c.class);
    Ok((
        json!({
            "manifold": m,
            "su2_abelian": v.su2_abelian,
            "reason": v.reason,
            "class": class,
            "deltas": v.deltas,
            "witness": v.witness,
        }),
        v.su2_abelian,
    ))
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let config = load_config(cli.config.as_ref())?;
    let format = cli.format.or(config.format).unwrap_or(Format::Json);
    match cli.command {
        Command::Decide { file } | Command::Classify { file } => {
            let m: GraphManifold = read_json(&file, "manifold")?;
            let (out, abelian) = verdict_json(&m)?;
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&out)?),
                Format::Text => {
                    println!(
                        "{m:?}: {}{}",
                        if abelian {
                            "SU(2)-abelian"
                        } else {
                            "not SU(2)-abelian"
                        },
                        match out["class"].as_u64() {
                            Some(c) => format!(" (class {c})"),
                            None => format!(" ({})", out["reason"].as_str().unwrap_or("?")),
                        }
                    );
                }
            }
            Ok(if abelian {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Intervals { p1, p2, parity } => {
            if p1 < 2 || p2 < 2 {
                return Err(anyhow!("fiber orders must be at least 2"));
            }
            let sign = match parity {
                Parity::Zero => FiberSign::Plus,
                Parity::Pi => FiberSign::Minus,
            };
            let set = j_set(p1, p2, sign);
            println!("{set}");
            if let Ok(angle) = supporting_angle(&set) {
                println!(
                    "supporting angle: {} turn ({} rad)",
                    angle,
                    angle.as_f64() * std::f64::consts::TAU
                );
            }
            for iv in set.intervals().iter() {
                println!("  ≈ ({:.6}, {:.6})", iv.lo().approx(), iv.hi().approx());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Sets { file } => {
            let m: GraphManifold = read_json(&file, "manifold")?;
            let beta = m.phi.beta();
            let hh = if beta == 0 {
                h1h2_empty_beta_zero(&m)?
            } else {
                h1h2_empty(&m)?
            };
            let ha = h1a2_empty(&m)?;
            let ah = a1h2_empty(&m)?;
            let pp = p1p2_empty(&m)?;
            let ss = if beta.abs() >= 3 {
                let s = s_sets(&m)?;
                Some(json!({
                    "s1_meets_s2": s.s1_meets_s2(),
                    "s3_meets_s4": s.s3_meets_s4(),
                    "s5_meets_s6": s.s5_meets_s6(),
                }))
            } else {
                None
            };
            let entry =
                |e: &su2abel::repsets::Emptiness| json!({ "empty": e.empty, "witness": e.witness });
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "manifold": m,
                    "h1_h2": entry(&hh),
                    "h1_a2": entry(&ha),
                    "a1_h2": entry(&ah),
                    "p1_p2": entry(&pp),
                    "trace_sets": ss,
                    "congruences": check_congruences(&m),
                }))?
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Witness { file } => {
            let m: GraphManifold = read_json(&file, "manifold")?;
            let v = decide(&m)?;
            match &v.witness {
                None => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&json!({
                            "su2_abelian": true,
                            "witness": null,
                        }))?
                    );
                    Ok(ExitCode::SUCCESS)
                }
                Some(iw) => {
                    let w = assemble_witness(&m, iw)?;
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&json!({
                            "su2_abelian": false,
                            "sets": iw.sets,
                            "point": iw.point,
                            "images": w.images,
                            "residual": w.residual,
                            "irreducibility": w.irreducibility,
                        }))?
                    );
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Oracle {
            file,
            restarts,
            tol,
            seed,
        } => {
            let m: GraphManifold = read_json(&file, "manifold")?;
            let defaults = SolveOptions::default();
            let opts = SolveOptions {
                restarts: restarts.or(config.restarts).unwrap_or(defaults.restarts),
                tol: tol.or(config.tol).unwrap_or(defaults.tol),
                seed: seed.or(config.seed).unwrap_or(defaults.seed),
                ..defaults
            };
            let pres = build_presentation(&m);
            match solve_numeric(&pres, &opts) {
                Some(w) => {
                    let (res, irr) = verify_witness(&pres, &w);
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&json!({
                            "found": true,
                            "images": w.images,
                            "residual": res,
                            "irreducibility": irr,
                        }))?
                    );
                    Ok(ExitCode::from(1))
                }
                None => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&json!({
                            "found": false,
                            "restarts": opts.restarts,
                            "note": "absence of a numerical witness is not a proof of abelianness",
                        }))?
                    );
                    Ok(ExitCode::SUCCESS)
                }
            }
        }
        Command::Plot { file, out } => {
            // accept either a manifold (with overlay) or a bare piece
            let text = std::fs::read_to_string(&file)
                .with_context(|| format!("reading {}", file.display()))?;
            let bundle = match serde_json::from_str::<GraphManifold>(&text) {
                Ok(m) => plot_bundle(&m.m1, Some(&m)),
                Err(_) => {
                    let piece: SeifertPiece = serde_json::from_str(&text).map_err(|e| {
                        anyhow!("{}: neither manifold nor piece: {e}", file.display())
                    })?;
                    plot_bundle(&piece, None)
                }
            };
            std::fs::write(&out, svg::render(&bundle)).context("writing SVG")?;
            let sidecar = out.with_extension("json");
            std::fs::write(&sidecar, serde_json::to_string_pretty(&bundle)?)
                .context("writing JSON sidecar")?;
            println!("wrote {} and {}", out.display(), sidecar.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::BuildGluing { file, n, m } => {
            let pair: PiecePairFile = read_json(&file, "piece pair")?;
            let phi = build_gluing(&pair.m1, &pair.m2, n, m)?;
            let manifold = GraphManifold::new(pair.m1, pair.m2, phi);
            let (out, _) = verdict_json(&manifold)?;
            println!("{}", serde_json::to_string_pretty(&out)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::TorusKnot { p, q } => {
            let piece = torus_knot_exterior(p, q)?;
            println!("{}", serde_json::to_string_pretty(&piece)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Sweep { max_p, max_entry } => {
            let max_p = max_p.or(config.max_p).unwrap_or(4);
            let max_entry = max_entry.or(config.max_entry).unwrap_or(2);
            println!(
                "p1,q1,p2,q2,p3,q3,p4,q4,alpha,beta,gamma,delta,\
                 d_h1h2,d_l1h2,d_l2h1,d_l1l2,d_l2mu1,d_l1mu2,\
                 cond_a,cond_b,cond_c,su2_abelian,reason,class"
            );
            for m in grid_manifolds(max_p, max_entry) {
                let v = decide(&m)?;
                let class = classify(&m)?.map(|c| c.class);
                let (sorted, _) = m.with_g_sorted();
                let kd = v.deltas;
                println!(
                    "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{:?},{}",
                    m.m1.p1(),
                    m.m1.q1(),
                    m.m1.p2(),
                    m.m1.q2(),
                    m.m2.p1(),
                    m.m2.q1(),
                    m.m2.p2(),
                    m.m2.q2(),
                    m.phi.alpha(),
                    m.phi.beta(),
                    m.phi.gamma(),
                    m.phi.delta(),
                    kd.h1_h2,
                    kd.lambda1_h2,
                    kd.lambda2_h1,
                    kd.lambda1_lambda2,
                    kd.lambda2_mu1,
                    kd.lambda1_mu2,
                    condition_a(&sorted),
                    condition_b(&sorted),
                    condition_c(&sorted),
                    v.su2_abelian,
                    v.reason,
                    class.map_or(String::new(), |c| c.to_string()),
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyPaper => report::verify_paper(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
