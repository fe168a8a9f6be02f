//! Command-line front end: case listing, invariant queries, region scans to
//! CSV/SVG, refined-invariant queries, and the self-verification suite.
//!
//! All user-facing numbers are exact rationals `p/q`; the SVG emitter is the
//! only floating-point consumer.
//!
//! Exit codes: 0 success, 1 computation precondition failure, 2 I/O error,
//! 3 verification failure.

use clap::{Args, Parser, Subcommand};
use kstab::arith::{parse_rat, show_rat, Rat};
use kstab::az::{delta_z_bound, s_w};
use kstab::catalog::{self, CatalogCase, Params};
use kstab::emit::{region_csv, region_svg};
use kstab::geom::nef_value;
use kstab::scan::scan;
use kstab::stability::{beta_prime, divisorial_verdict};
use kstab::verify::{run as run_verify, VerifyConfig};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "kstab", about = "Exact K-stability invariants for threefold log Fano pairs", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CaseArgs {
    /// Case id (E1, E2, C1-C10, D1-D8, Q1, F1-F4)
    #[arg(long)]
    case: Option<String>,
    /// Load the case from a JSON document instead
    #[arg(long)]
    case_file: Option<String>,
    #[arg(long)]
    k: Option<i64>,
    #[arg(long)]
    n: Option<i64>,
    #[arg(long)]
    m: Option<i64>,
}

#[derive(Args, Clone)]
struct CoeffArgs {
    /// Boundary coefficient a as an exact rational `p/q`
    #[arg(long)]
    a: Option<String>,
    #[arg(long)]
    b: Option<String>,
    #[arg(long)]
    c: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// One row per catalog case with parameters, boundary, nef value and
    /// the semistability column
    List,
    /// Beta-prime report(s) at a coefficient point
    Beta {
        #[command(flatten)]
        case: CaseArgs,
        #[command(flatten)]
        coeffs: CoeffArgs,
        /// Restrict to one test divisor label
        #[arg(long)]
        divisor: Option<String>,
    },
    /// Refined invariant and delta bound for the cataloged centers
    Az {
        #[command(flatten)]
        case: CaseArgs,
        #[command(flatten)]
        coeffs: CoeffArgs,
        /// Restrict to one center name
        #[arg(long)]
        center: Option<String>,
    },
    /// Scan the coefficient grid and write CSV (optionally SVG)
    Region {
        #[command(flatten)]
        case: CaseArgs,
        /// Grid step as an exact rational, e.g. 1/100
        #[arg(long, default_value = "1/100")]
        step: String,
        /// Output CSV path
        #[arg(long)]
        out: String,
        /// Optional SVG path
        #[arg(long)]
        svg: Option<String>,
    },
    /// Scan and print a status histogram
    Scan {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long, default_value = "1/20")]
        step: String,
    },
    /// Export a built-in case as a JSON document
    ExportCase {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long)]
        out: String,
        /// Print the document JSON schema instead
        #[arg(long)]
        schema: bool,
    },
    /// Run the full identity/fixture/oracle suite
    Verify {
        /// Parameter cap for the instability sweeps
        #[arg(long, default_value_t = 10)]
        cap: i64,
        /// Region-scan step denominator
        #[arg(long, default_value_t = 100)]
        region_step: i64,
    },
}

fn load_case(args: &CaseArgs) -> Result<CatalogCase, String> {
    if let Some(path) = &args.case_file {
        let text = std::fs::read_to_string(path).map_err(|e| format!("io: {e}"))?;
        let doc: catalog::CaseDocument =
            serde_json::from_str(&text).map_err(|e| format!("invalid case document: {e}"))?;
        return catalog::load_custom(&doc).map_err(|e| e.to_string());
    }
    let id = args.case.as_deref().ok_or("missing --case")?;
    let mut params = Params::new();
    for (key, value) in [("k", args.k), ("n", args.n), ("m", args.m)] {
        if let Some(v) = value {
            params.insert(key.to_string(), v);
        }
    }
    catalog::instantiate(id, &params).map_err(|e| e.to_string())
}

fn parse_coeffs(case: &CatalogCase, args: &CoeffArgs) -> Result<Vec<Rat>, String> {
    let supplied = [&args.a, &args.b, &args.c];
    let mut out = Vec::new();
    for (i, name) in case.coeff_names.iter().enumerate() {
        let s = supplied[i]
            .as_ref()
            .ok_or_else(|| format!("missing --{name} (case takes {})", case.coeff_names.join(", ")))?;
        let r = parse_rat(s).map_err(|e| e.to_string())?;
        if r < Rat::from_integer(0.into()) || r >= Rat::from_integer(1.into()) {
            return Err(format!("--{name} = {s} outside [0, 1)"));
        }
        out.push(r);
    }
    if case.coeff_names.len() < 3 && args.c.is_some() {
        return Err("this case takes no coefficient c".into());
    }
    Ok(out)
}

fn cmd_list() -> Result<(), String> {
    println!(
        "{:<4} {:<10} {:<22} {:<5} {:<8} K-semistable",
        "id", "params", "boundary", "eps", "section"
    );
    for case in catalog::all_default_cases() {
        let params: Vec<String> = case.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let boundary: Vec<String> = case.boundary.iter().map(|(_, l)| l.clone()).collect();
        let nv = nef_value(&case.threefold, &case.total_boundary()).map_err(|e| e.to_string())?;
        let eps = if case.eps_erratum {
            format!("{} (table: {})", show_rat(&nv.eps), show_rat(&case.table_eps))
        } else {
            show_rat(&nv.eps)
        };
        println!(
            "{:<4} {:<10} {:<22} {:<5} {:<8} {}",
            case.id,
            params.join(","),
            boundary.join("+"),
            eps,
            case.section,
            case.semistable_note
        );
    }
    Ok(())
}

fn cmd_beta(case: &CatalogCase, coeffs: &[Rat], divisor: Option<&str>) -> Result<(), String> {
    let pair = case.pair(coeffs).map_err(|e| e.to_string())?;
    match divisor {
        Some(label) => {
            let class = case
                .test_divisor(label)
                .ok_or_else(|| format!("unknown divisor label `{label}`"))?;
            let r = beta_prime(&pair, &class, label).map_err(|e| e.to_string())?;
            println!("{r}");
        }
        None => {
            let v = divisorial_verdict(&pair, &case.test_divisor_pairs()).map_err(|e| e.to_string())?;
            for r in &v.reports {
                println!("{r}");
            }
            println!("overall: divisorially_{:?}", v.overall);
        }
    }
    Ok(())
}

fn cmd_az(case: &CatalogCase, coeffs: &[Rat], center: Option<&str>) -> Result<(), String> {
    if case.az_centers.is_empty() {
        return Err(format!("case {} has no cataloged centers", case.id));
    }
    let pair = case.pair(coeffs).map_err(|e| e.to_string())?;
    for spec in &case.az_centers {
        if let Some(name) = center {
            if spec.name != name {
                continue;
            }
        }
        let sw = s_w(&pair, spec, case.mov_eq_nef).map_err(|e| e.to_string())?;
        let bound = delta_z_bound(&pair, spec, case.mov_eq_nef).map_err(|e| e.to_string())?;
        println!(
            "center {} on {}: S(W;Z) = {}, delta_Z bound = {}",
            spec.name,
            spec.y_label,
            show_rat(&sw),
            show_rat(&bound)
        );
    }
    let verdict = case.polystable_verdict(coeffs).map_err(|e| e.to_string())?;
    println!("verdict: {verdict:?}");
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result: Result<ExitCode, String> = (|| match &cli.command {
        Command::List => cmd_list().map(|_| ExitCode::SUCCESS),
        Command::Beta { case, coeffs, divisor } => {
            let case = load_case(case)?;
            let coeffs = parse_coeffs(&case, coeffs)?;
            cmd_beta(&case, &coeffs, divisor.as_deref()).map(|_| ExitCode::SUCCESS)
        }
        Command::Az { case, coeffs, center } => {
            let case = load_case(case)?;
            let coeffs = parse_coeffs(&case, coeffs)?;
            cmd_az(&case, &coeffs, center.as_deref()).map(|_| ExitCode::SUCCESS)
        }
        Command::Region { case, step, out, svg } => {
            let case = load_case(case)?;
            let step = parse_rat(step).map_err(|e| e.to_string())?;
            let s = scan(&case, &step).map_err(|e| e.to_string())?;
            std::fs::write(out, region_csv(&s)).map_err(|e| format!("io: {e}"))?;
            if let Some(path) = svg {
                let rendered = region_svg(&s, case.known_region.as_ref());
                std::fs::write(path, rendered).map_err(|e| format!("io: {e}"))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Scan { case, step } => {
            let case = load_case(case)?;
            let step = parse_rat(step).map_err(|e| e.to_string())?;
            let s = scan(&case, &step).map_err(|e| e.to_string())?;
            let mut counts = std::collections::BTreeMap::new();
            for p in &s.points {
                *counts.entry(p.status.token()).or_insert(0usize) += 1;
            }
            for (token, count) in counts {
                println!("{token}: {count}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::ExportCase { case, out, schema } => {
            if *schema {
                println!("{}", serde_json::to_string_pretty(&catalog::case_schema()).unwrap());
                return Ok(ExitCode::SUCCESS);
            }
            let case = load_case(case)?;
            let doc = catalog::export_document(&case);
            let text = serde_json::to_string_pretty(&doc).unwrap();
            std::fs::write(out, text).map_err(|e| format!("io: {e}"))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { cap, region_step } => {
            let cfg = VerifyConfig { cap: *cap, region_step: *region_step, ..Default::default() };
            let report = run_verify(&cfg);
            print!("{}", report.render());
            Ok(if report.ok() { ExitCode::SUCCESS } else { ExitCode::from(3) })
        }
    })();
    match result {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            if msg.starts_with("io:") {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
