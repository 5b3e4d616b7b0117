//! `maghom`: compute magnitude-type homology of small digraphs and run the
//! reproduction suite.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use maghom_core::complex::ChainKind;
use maghom_core::graph::{parse_family, parse_graph};
use maghom_core::homology::magnitude_homology;
use maghom_core::invariants::{
    classify_diagonality, delta_distance, gamma, magnitude_series, regular_magnitude, Polynomial,
};
use maghom_core::nerve::{injective_words, reduced_ranks, simplicial_homology};
use maghom_core::path::path_homology_over;
use maghom_core::scalar::Ring;
use maghom_core::spectral::{mpss_json, rmpss_report};
use maghom_core::verify::run_suite;
use maghom_core::{DirectedGraph, Error};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "maghom", version, about = "Magnitude homology, path homology and magnitude-path spectral sequences of digraphs")]
struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true, env = "MAGHOM_JOBS")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute one invariant of a graph.
    Compute(ComputeArgs),
    /// Run the reproduction suite.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum What {
    Emh,
    Mh,
    Dmh,
    Ph,
    Rph,
    Inj,
    Rmpss,
    Mpss,
    Magnitude,
    Rmagnitude,
    Diag,
    Delta,
    Gamma,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Md,
}

#[derive(Args)]
struct ComputeArgs {
    what: What,
    /// Standard family as `name:params`, e.g. `complete:4`.
    #[arg(long, conflicts_with = "input")]
    family: Option<String>,
    /// Edge-list file.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Second graph for `delta`, as a family spec.
    #[arg(long)]
    against: Option<String>,
    /// Coefficients: Z, Q or Fp:<p>.
    #[arg(long, default_value = "Z")]
    ring: String,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    lmax: Option<u32>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    kmax: Option<u64>,
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    rmax: u64,
    /// For `gamma`: number of vertices.
    #[arg(long)]
    n: Option<usize>,
    /// For `gamma`: number of removed edges.
    #[arg(long)]
    s: Option<usize>,
    /// Include page differentials in spectral sequence dumps.
    #[arg(long)]
    differentials: bool,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// Run only these checks (repeatable).
    #[arg(long)]
    only: Vec<String>,
    #[arg(long, value_enum, default_value = "md")]
    format: Format,
}

enum Failure {
    Usage(String),
    Cap(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ResourceCap(m) => Failure::Cap(m),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type Outcome = std::result::Result<String, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn load_graph(a: &ComputeArgs) -> std::result::Result<(DirectedGraph, String), Failure> {
    match (&a.family, &a.input) {
        (Some(f), None) => Ok((parse_family(f)?, f.clone())),
        (None, Some(p)) => {
            let text = std::fs::read_to_string(p).map_err(|e| usage(format!("cannot read {}: {e}", p.display())))?;
            Ok((parse_graph(&text)?, p.display().to_string()))
        }
        _ => Err(usage("give exactly one of --family or --input")),
    }
}

fn json_out(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

fn json_only(a: &ComputeArgs, v: Value) -> Outcome {
    match a.format {
        Format::Json => Ok(json_out(v)),
        _ => Err(usage("this computation only supports --format json")),
    }
}

fn polynomial_out(a: &ComputeArgs, name: &str, p: &Polynomial, label: &str, cap: Option<u32>) -> Outcome {
    match a.format {
        Format::Json => Ok(json_out(json!({
            "graph": name,
            "label": label,
            "degree_cap": cap,
            "coefficients": p.to_json(),
            "polynomial": p.to_string(),
        }))),
        Format::Csv => {
            let mut s = String::from("degree,coefficient\n");
            for (d, c) in &p.coefficients {
                s.push_str(&format!("{d},{c}\n"));
            }
            Ok(s)
        }
        Format::Md => Ok(format!("{name} ({label}): {p}\n")),
    }
}

fn ranks_out(a: &ComputeArgs, header: &str, v: Value, ranks: &[(usize, String)]) -> Outcome {
    match a.format {
        Format::Json => Ok(json_out(v)),
        Format::Csv => {
            let mut s = String::from("degree,group\n");
            for (d, g) in ranks {
                s.push_str(&format!("{d},{g}\n"));
            }
            Ok(s)
        }
        Format::Md => {
            let mut s = format!("{header}\n\n| degree | group |\n|---|---|\n");
            for (d, g) in ranks {
                s.push_str(&format!("| {d} | {g} |\n"));
            }
            Ok(s)
        }
    }
}

fn compute(a: &ComputeArgs) -> Outcome {
    let ring: Ring = a.ring.parse()?;
    match a.what {
        What::Gamma => {
            let (Some(n), Some(s)) = (a.n, a.s) else {
                return Err(usage("gamma needs --n and --s"));
            };
            let value = gamma(n, s)?;
            return json_only(a, json!({"n": n, "s": s, "gamma": value}));
        }
        What::Delta => {
            let (g, gname) = load_graph(a)?;
            let other = a.against.as_deref().ok_or_else(|| usage("delta needs --against"))?;
            let h = parse_family(other)?;
            let d = delta_distance(&g, &h)?;
            return json_only(a, json!({"graph": gname, "against": other, "delta": d}));
        }
        _ => {}
    }
    let (g, name) = load_graph(a)?;
    match a.what {
        What::Emh | What::Mh | What::Dmh => {
            let kind = match a.what {
                What::Emh => ChainKind::Eulerian,
                What::Mh => ChainKind::Magnitude,
                _ => ChainKind::Discriminant,
            };
            if kind != ChainKind::Eulerian && a.lmax.is_none() {
                return Err(usage("mh and dmh need --lmax"));
            }
            let t = magnitude_homology(&g, kind, ring, a.lmax, &name)?;
            Ok(match a.format {
                Format::Json => json_out(t.to_json()),
                Format::Csv => t.to_csv(),
                Format::Md => t.to_markdown(),
            })
        }
        What::Ph | What::Rph => {
            let strong = a.what == What::Rph;
            let top = a.kmax.map(|k| k as usize);
            if !strong && top.is_none() {
                return Err(usage("ph needs --kmax"));
            }
            let h = path_homology_over(&g, strong, ring, top)?;
            let mut v = h.to_json();
            v["graph"] = json!(name);
            let ranks: Vec<(usize, String)> = h.ranks.iter().enumerate().map(|(d, r)| (d, r.to_string())).collect();
            let label = if h.certified { "certified" } else { "truncated" };
            ranks_out(a, &format!("path homology of {name} over {ring} ({label})"), v, &ranks)
        }
        What::Inj => {
            let k = injective_words(&g);
            let h = simplicial_homology(&k, ring)?;
            let groups: Vec<(usize, String)> = h.iter().enumerate().map(|(d, x)| (d, x.to_string())).collect();
            let v = json!({
                "graph": name,
                "ring": ring.to_string(),
                "f_vector": k.f_vector(),
                "euler_characteristic": k.euler_characteristic(),
                "homology": h,
                "reduced_ranks": reduced_ranks(&h),
            });
            ranks_out(a, &format!("homology of Inj({name}) over {ring}"), v, &groups)
        }
        What::Rmpss => {
            let field = if ring.is_field() { ring } else { Ring::Rationals };
            let report = rmpss_report(&g, field)?;
            let pages = mpss_json(&g, field, true, None, a.rmax as usize, a.differentials)?;
            let out = json_only(a, json!({"graph": name, "report": report, "pages": pages}))?;
            if report.passed() {
                Ok(out)
            } else {
                print!("{out}");
                Err(Failure::Verification("regular MPSS verification failed".into()))
            }
        }
        What::Mpss => {
            let field = if ring.is_field() { ring } else { Ring::Rationals };
            let l = a.lmax.ok_or_else(|| usage("mpss needs --lmax"))?;
            let mut v = mpss_json(&g, field, false, Some(l), a.rmax as usize, a.differentials)?;
            v["graph"] = json!(name);
            json_only(a, v)
        }
        What::Magnitude => {
            let cap = a.lmax.ok_or_else(|| usage("magnitude needs --lmax"))?;
            polynomial_out(a, &name, &magnitude_series(&g, cap)?, "truncated", Some(cap))
        }
        What::Rmagnitude => polynomial_out(a, &name, &regular_magnitude(&g)?, "certified", None),
        What::Diag => {
            let v = classify_diagonality(&g, a.lmax)?;
            json_only(a, json!({"graph": name, "verdict": v}))
        }
        What::Delta | What::Gamma => unreachable!("handled above"),
    }
}

fn verify(a: &VerifyArgs) -> Outcome {
    let report = run_suite(&a.only)?;
    let out = match a.format {
        Format::Json => json_out(report.to_json()),
        Format::Csv => {
            let mut s = String::from("id,passed,seconds\n");
            for c in &report.checks {
                s.push_str(&format!("{},{},{:.3}\n", c.id, c.passed, c.seconds));
            }
            s
        }
        Format::Md => {
            let mut s = String::new();
            for c in &report.checks {
                s.push_str(&format!("{} {} ({:.2}s)\n", if c.passed { "PASS" } else { "FAIL" }, c.id, c.seconds));
                for d in &c.details {
                    s.push_str(&format!("    {d}\n"));
                }
            }
            s
        }
    };
    if report.passed() {
        Ok(out)
    } else {
        print!("{out}");
        Err(Failure::Verification(format!("failed checks: {}", report.failures().join(", "))))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if j == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
            .expect("thread pool is configured once");
    }
    let result = match &cli.command {
        Command::Compute(a) => compute(a),
        Command::Verify(a) => verify(a),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(m)) => {
            eprintln!("{m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(m)) => {
            eprintln!("resource cap: {m}");
            ExitCode::from(3)
        }
    }
}
