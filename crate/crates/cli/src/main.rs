use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use newton_spectrum::checks::{run_checks, Status};
use newton_spectrum::ehrhart::{delta_from_counts, delta_from_spectrum, EhrhartPolynomial};
use newton_spectrum::graded::{parse_monomials, product_table, quotient_basis, DegreeBound};
use newton_spectrum::numerics::format_rat;
use newton_spectrum::orbifold::box_contributions;
use newton_spectrum::{
    milnor_number, parse_polynomial, spectrum_at_infinity, toric_spectrum, Error, Mode, Poly,
    PolytopeModel, Result,
};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "newton-spectrum", version, about = "Newton spectra and related invariants of convenient polynomials")]
struct Cli {
    /// Work with the local Newton polyhedron at the origin
    #[arg(long, global = true)]
    local: bool,

    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Variable order, comma separated (default: order of appearance)
    #[arg(long, global = true, value_delimiter = ',')]
    vars: Option<Vec<String>>,

    /// Largest truncation degree tried by the generating-series route
    #[arg(long = "max-truncation", global = true, value_name = "N")]
    max_truncation: Option<u32>,

    /// Worker threads for lattice enumeration and linear algebra
    #[arg(long, global = true, value_name = "K")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Input {
    /// Polynomial, e.g. "u^2 + u^2*v^2 + v^2"
    polynomial: Option<String>,

    /// Read the polynomial from a UTF-8 file
    #[arg(long, value_name = "PATH")]
    file: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Toric Newton spectrum and the route that produced it
    Spectrum(Input),
    /// Spectrum at infinity (local singularity spectrum with --local)
    SpecInfinity(Input),
    /// Global (local) Milnor number
    Milnor(Input),
    /// δ-vector of the Newton polytope
    Delta(Input),
    /// Ehrhart polynomial in the binomial basis
    Ehrhart(Input),
    /// Graded dimensions of orbifold cohomology
    Orbifold(Input),
    /// Product table of the graded quotient ring
    ProductTable {
        #[command(flatten)]
        input: Input,
        /// Basis monomials, e.g. "1,u*v,u^2*v^2"
        #[arg(long)]
        basis: Option<String>,
    },
    /// Normalized volume μ_P
    Volume(Input),
    /// Run every invariant check on the input
    Check(Input),
    /// Dump the polytope model
    Model(Input),
}

impl Command {
    fn input(&self) -> &Input {
        match self {
            Command::Spectrum(i)
            | Command::SpecInfinity(i)
            | Command::Milnor(i)
            | Command::Delta(i)
            | Command::Ehrhart(i)
            | Command::Orbifold(i)
            | Command::Volume(i)
            | Command::Check(i)
            | Command::Model(i) => i,
            Command::ProductTable { input, .. } => input,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Command::Spectrum(_) => "spectrum",
            Command::SpecInfinity(_) => "spec-infinity",
            Command::Milnor(_) => "milnor",
            Command::Delta(_) => "delta",
            Command::Ehrhart(_) => "ehrhart",
            Command::Orbifold(_) => "orbifold",
            Command::ProductTable { .. } => "product-table",
            Command::Volume(_) => "volume",
            Command::Check(_) => "check",
            Command::Model(_) => "model",
        }
    }
}

/// Text or JSON report plus the exit code to use.
struct Report {
    text: String,
    json: Value,
    code: u8,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report { text, json, code: 0 }
    }
}

fn read_polynomial(cli: &Cli) -> Result<Poly> {
    let input = cli.command.input();
    let text = match (&input.polynomial, &input.file) {
        (Some(s), None) => s.clone(),
        (None, Some(path)) => std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?,
        (Some(_), Some(_)) => {
            return Err(Error::InvalidInput("give either a polynomial or --file, not both".into()))
        }
        (None, None) => return Err(Error::InvalidInput("no polynomial given".into())),
    };
    let mode = if cli.local { Mode::Local } else { Mode::Global };
    parse_polynomial(text.trim(), mode, cli.vars.as_deref())
}

fn execute(cli: &Cli) -> Result<Report> {
    let p = read_polynomial(cli)?;
    let cap = cli.max_truncation;
    p.check_convenient()?;
    let m = PolytopeModel::build(&p)?;
    let n = m.dim();
    Ok(match &cli.command {
        Command::Spectrum(_) => {
            let (s, route) = toric_spectrum(&m, cap)?;
            Report::ok(
                format!("{s}\nroute: {route}\n"),
                json!({ "spectrum": s, "route": route, "mu_P": m.normalized_volume() }),
            )
        }
        Command::SpecInfinity(_) => {
            let s = spectrum_at_infinity(&p, cap)?;
            Report::ok(format!("{s}\n"), json!({ "spectrum": s, "milnor": s.eval_at_one() }))
        }
        Command::Milnor(_) => {
            let mu = milnor_number(&p, cap)?;
            Report::ok(format!("{mu}\n"), json!({ "milnor": mu }))
        }
        Command::Delta(_) | Command::Ehrhart(_) => {
            let (s, _) = toric_spectrum(&m, cap)?;
            let delta = delta_from_spectrum(&s, n)?;
            let counted = delta_from_counts(&m)?;
            if counted != delta {
                return Err(Error::InternalMismatch {
                    formula: "delta-vector bucketing",
                    detail: format!("spectrum gives {:?}, lattice counts give {:?}", delta.0, counted.0),
                });
            }
            if matches!(cli.command, Command::Delta(_)) {
                Report::ok(format!("{}\n", delta.as_series()), json!({ "delta": delta }))
            } else {
                let poly = EhrhartPolynomial::new(delta.clone());
                let terms: Vec<Value> = poly
                    .terms()
                    .into_iter()
                    .map(|(c, b)| json!({ "coefficient": c, "binomial": b }))
                    .collect();
                let values: Vec<i64> = (0..=n as i64).map(|l| poly.eval(l)).collect();
                Report::ok(
                    format!("{poly}\n"),
                    json!({ "delta": delta, "terms": terms, "values": values }),
                )
            }
        }
        Command::Orbifold(_) => {
            let contributions = box_contributions(&m)?;
            let total = contributions
                .iter()
                .fold(newton_spectrum::SpectrumSeries::new(), |acc, c| &acc + &c.contribution);
            let points: Vec<Value> = contributions
                .iter()
                .map(|c| {
                    json!({
                        "v": c.v.0,
                        "nu": format_rat(&c.nu),
                        "e_star": c.e_star,
                        "contribution": c.contribution,
                    })
                })
                .collect();
            Report::ok(format!("{total}\n"), json!({ "dimensions": total, "box_points": points }))
        }
        Command::ProductTable { basis, .. } => {
            let hint = basis.as_deref().map(|b| parse_monomials(b, p.vars())).transpose()?;
            let (s, _) = toric_spectrum(&m, cap)?;
            let graded = quotient_basis(&p, &m, DegreeBound::Expected(&s), hint.as_deref())?;
            let table = product_table(&graded)?;
            Report::ok(table.to_text(), table.to_json(&m))
        }
        Command::Volume(_) => {
            let mu = m.normalized_volume();
            Report::ok(format!("{mu}\n"), json!({ "mu_P": mu }))
        }
        Command::Check(_) => {
            let report = run_checks(&p, cap)?;
            let mut text = String::new();
            for o in &report.outcomes {
                let tag = match o.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Skipped => "SKIP",
                };
                if o.detail.is_empty() {
                    let _ = writeln!(text, "{tag} {}", o.name);
                } else {
                    let _ = writeln!(text, "{tag} {}: {}", o.name, o.detail);
                }
            }
            let code = if report.all_passed() { 0 } else { 2 };
            Report { text, json: json!({ "checks": report.outcomes }), code }
        }
        Command::Model(_) => {
            let dump = serde_json::to_value(m.dump()).expect("model serializes");
            let text = serde_json::to_string_pretty(&dump).expect("model serializes") + "\n";
            Report::ok(text, dump)
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    if let Some(k) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(k).build_global() {
            eprintln!("error: cannot configure thread pool: {e}");
            return ExitCode::from(1);
        }
    }
    match execute(&cli) {
        Ok(report) => {
            if cli.json {
                let mut json = report.json;
                let obj = json.as_object_mut().expect("reports are objects");
                obj.insert("schema".into(), json!(1));
                obj.insert("command".into(), json!(cli.command.name()));
                obj.insert("mode".into(), json!(if cli.local { "local" } else { "global" }));
                println!("{}", serde_json::to_string_pretty(&json).expect("json renders"));
            } else {
                print!("{}", report.text);
            }
            ExitCode::from(report.code)
        }
        Err(e) => {
            if cli.json {
                let json = json!({
                    "schema": 1,
                    "command": cli.command.name(),
                    "error": e.to_string(),
                    "exit_code": e.exit_code(),
                });
                println!("{}", serde_json::to_string_pretty(&json).expect("json renders"));
            }
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
