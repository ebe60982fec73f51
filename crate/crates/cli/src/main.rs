use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use fockdec::abacus::{abacus_data, render_abacus, stable_r, AbacusData};
use fockdec::canonical::canonical_basis_any_charge;
use fockdec::combinatorics::compare_dominance_padded;
use fockdec::crystal::generate_component;
use fockdec::factorize::{decomposition_matrix, factorize, Factorization};
use fockdec::{Error, FockSpace, Modulus, Multicharge, Multipartition, PolyMatrix};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "fockdec",
    version,
    about = "Canonical bases and decomposition matrices of higher-level Fock spaces"
)]
struct Cli {
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Latex,
    Text,
    Dot,
}

#[derive(Args)]
struct Instance {
    /// Quantum characteristic: an integer >= 2 or `inf`.
    #[arg(long)]
    e: Modulus,
    /// Multicharge, comma separated, e.g. `0,0,-1`.
    #[arg(long, allow_hyphen_values = true)]
    charge: Multicharge,
    #[arg(long)]
    rank: usize,
    /// Largest rank accepted without complaint.
    #[arg(long, default_value_t = 12)]
    guard: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Target {
    E,
    Inf,
    Rel,
}

#[derive(Subcommand)]
enum Command {
    /// Crystal graph of the highest weight module, up to the given rank.
    Crystal(Instance),
    /// Decomposition matrix D_e(v) (or D_inf(v) for `--e inf`).
    Canonical(Instance),
    /// D_e, D_inf and the relative matrix D_inf^e, with verification.
    Factorize {
        #[command(flatten)]
        instance: Instance,
        /// Compare against a golden CSV matrix (label keyed).
        #[arg(long)]
        check_against: Option<PathBuf>,
        /// Which matrix the golden file describes.
        #[arg(long, value_enum, default_value = "rel")]
        check_target: Target,
    },
    /// Abacus data for a charged multipartition.
    Abacus {
        #[arg(allow_hyphen_values = true)]
        multipartition: Multipartition,
        #[arg(long, allow_hyphen_values = true)]
        charge: Multicharge,
        #[arg(long)]
        e: u32,
        /// Number of beta-numbers to read.
        #[arg(long, conflicts_with = "stable_for")]
        r: Option<usize>,
        /// Choose r so that zeta and b agree with this second e.
        #[arg(long)]
        stable_for: Option<u32>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Dominance relation between two multipartitions.
    Order {
        #[arg(allow_hyphen_values = true)]
        first: Multipartition,
        #[arg(allow_hyphen_values = true)]
        second: Multipartition,
        #[arg(long, allow_hyphen_values = true)]
        charge: Multicharge,
        /// Extra zero parts per component before comparing.
        #[arg(long, default_value_t = 0)]
        pad: usize,
    },
}

/// Failure carrying its exit status.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Self {
        let code = match error.downcast_ref::<Error>() {
            Some(Error::RTooSmall { .. }) => 3,
            Some(
                Error::Parse(_) | Error::LevelMismatch { .. } | Error::RankMismatch(..) | Error::InvalidArgument(_),
            ) => 2,
            _ => 1,
        };
        Failure { code, error }
    }
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        anyhow::Error::from(error).into()
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        error: anyhow!(msg.into()),
    }
}

fn check_instance(inst: &Instance) -> Result<(), Failure> {
    if inst.rank > inst.guard {
        return Err(Failure {
            code: 3,
            error: anyhow!(
                "rank {} exceeds the guard {} (raise --guard to proceed)",
                inst.rank,
                inst.guard
            ),
        });
    }
    Ok(())
}

fn emit_matrix(m: &PolyMatrix, format: Format) -> Result<String, Failure> {
    Ok(match format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&m.to_json()).expect("json")),
        Format::Csv => m.to_csv(),
        Format::Latex => m.to_latex(),
        Format::Text => m.to_text(),
        Format::Dot => return Err(usage("dot output is only available for `crystal`")),
    })
}

fn cmd_crystal(inst: &Instance) -> Result<String, Failure> {
    check_instance(inst)?;
    let space = FockSpace::new(inst.charge.clone(), inst.e);
    let graph = generate_component(&space, inst.rank);
    Ok(match inst.format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&graph.to_json()).expect("json")),
        Format::Dot => graph.to_dot(),
        Format::Text => {
            let mut out = String::new();
            for n in 0..=inst.rank {
                let labels: Vec<String> = graph.vertices(n).iter().map(ToString::to_string).collect();
                out.push_str(&format!("rank {n}: {}\n", labels.join(" ")));
            }
            out
        }
        Format::Csv | Format::Latex => return Err(usage("crystal supports json, dot and text")),
    })
}

fn cmd_canonical(inst: &Instance) -> Result<String, Failure> {
    check_instance(inst)?;
    let set = canonical_basis_any_charge(inst.e, &inst.charge, inst.rank)?;
    emit_matrix(&decomposition_matrix(&set), inst.format)
}

/// Label-keyed comparison; returns mismatch descriptions.
fn compare_golden(ours: &PolyMatrix, golden: &PolyMatrix) -> Vec<String> {
    let mut bad = Vec::new();
    let sorted = |v: &[Multipartition]| {
        let mut v = v.to_vec();
        v.sort();
        v
    };
    if sorted(&ours.row_labels) != sorted(&golden.row_labels) {
        bad.push("row label sets differ".to_string());
    }
    if sorted(&ours.col_labels) != sorted(&golden.col_labels) {
        bad.push("column label sets differ".to_string());
    }
    for r in &golden.row_labels {
        for c in &golden.col_labels {
            let (x, y) = (ours.get(r, c), golden.get(r, c));
            if x != y {
                bad.push(format!(
                    "({r},{c}): computed {} but golden {}",
                    x.to_cell(),
                    y.to_cell()
                ));
            }
        }
    }
    bad
}

fn emit_factorization(f: &Factorization, report: &serde_json::Value, format: Format) -> Result<String, Failure> {
    if format == Format::Json {
        let value = json!({
            "e": f.modulus.to_string(),
            "charge": f.charge.as_slice(),
            "rank": f.rank,
            "d_e": f.d_e.to_json(),
            "d_inf": f.d_inf.to_json(),
            "d_rel": f.d_rel.to_json(),
            "report": report,
        });
        return Ok(format!("{}\n", serde_json::to_string_pretty(&value).expect("json")));
    }
    let mut out = String::new();
    for (name, m) in [("D_e", &f.d_e), ("D_inf", &f.d_inf), ("D_inf^e", &f.d_rel)] {
        out.push_str(&format!("# {name}\n"));
        out.push_str(&emit_matrix(m, format)?);
        out.push('\n');
    }
    out.push_str("# checks\n");
    for c in report.as_array().into_iter().flatten() {
        let status = if c["pass"].as_bool() == Some(true) {
            "PASS"
        } else {
            "FAIL"
        };
        out.push_str(&format!(
            "{status} {} {}\n",
            c["check"].as_str().unwrap_or(""),
            c["detail"].as_str().unwrap_or("")
        ));
    }
    Ok(out)
}

fn cmd_factorize(inst: &Instance, golden: Option<&PathBuf>, target: Target) -> Result<(String, bool), Failure> {
    check_instance(inst)?;
    if inst.e.is_infinite() {
        return Err(usage("factorize needs a finite --e"));
    }
    let f = factorize(inst.e, &inst.charge, inst.rank)?;
    let mut report = f.verify();
    if let Some(path) = golden {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let expected = PolyMatrix::from_csv(&text).with_context(|| format!("parsing {}", path.display()))?;
        let ours = match target {
            Target::E => &f.d_e,
            Target::Inf => &f.d_inf,
            Target::Rel => &f.d_rel,
        };
        report.push("golden", compare_golden(ours, &expected));
    }
    let ok = report.all_pass();
    Ok((emit_factorization(&f, &report.to_json(), inst.format)?, ok))
}

fn emit_abacus(data: &AbacusData, format: Format) -> Result<String, Failure> {
    let seq = |v: &[i64]| format!("({})", v.iter().map(i64::to_string).collect::<Vec<_>>().join(","));
    match format {
        Format::Json => Ok(format!("{}\n", serde_json::to_string_pretty(data).expect("json"))),
        Format::Text => {
            let mut out = String::new();
            for (name, v) in [
                ("k", &data.k),
                ("w", &data.w),
                ("c", &data.c),
                ("d", &data.d),
                ("m", &data.m),
                ("phi", &data.phi),
                ("a", &data.a),
                ("b", &data.b),
                ("zeta", &data.zeta),
            ] {
                out.push_str(&format!("{name} = {}\n", seq(v)));
            }
            out.push('\n');
            out.push_str(&render_abacus(data));
            Ok(out)
        }
        _ => Err(usage("abacus supports json and text")),
    }
}

fn run(cli: Cli) -> Result<(String, bool), Failure> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(usage("--threads must be positive"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure {
                code: 1,
                error: e.into(),
            })?;
    }
    match cli.command {
        Command::Crystal(inst) => Ok((cmd_crystal(&inst)?, true)),
        Command::Canonical(inst) => Ok((cmd_canonical(&inst)?, true)),
        Command::Factorize {
            instance,
            check_against,
            check_target,
        } => cmd_factorize(&instance, check_against.as_ref(), check_target),
        Command::Abacus {
            multipartition,
            charge,
            e,
            r,
            stable_for,
            format,
        } => {
            if e < 2 {
                return Err(usage("--e must be at least 2"));
            }
            let r = match (r, stable_for) {
                (Some(r), _) => r,
                (None, Some(e2)) => stable_r(&multipartition, &charge, e, e2)?,
                (None, None) => return Err(usage("give --r or --stable-for")),
            };
            let data = abacus_data(&multipartition, &charge, e, r)?;
            Ok((emit_abacus(&data, format)?, true))
        }
        Command::Order {
            first,
            second,
            charge,
            pad,
        } => {
            let rel = compare_dominance_padded(&first, &second, &charge, pad)?;
            Ok((format!("{rel}\n"), true))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: verification failed");
                ExitCode::from(1)
            }
        }
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            if let Some(Error::RTooSmall { suggested, .. }) = f.error.downcast_ref::<Error>() {
                eprintln!("hint: try --r {suggested}");
            }
            ExitCode::from(f.code)
        }
    }
}
