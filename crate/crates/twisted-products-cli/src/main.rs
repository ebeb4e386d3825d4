mod report;

use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use twisted_products::expander::{compare, default_bounds, expand_borcherds_side, expand_phi_power, Comparison};
use twisted_products::exactseries::Q3Bounds;
use twisted_products::modforms::{self, cusp_set, supported_levels, CuspData, DATA_ENV};
use twisted_products::moonshine::{class_data, moebius_component, power_map, CLASSES};
use twisted_products::numverify::{self, DEFAULT_TERMS, MODULARITY_TOL, PROJECTION_TOL};
use twisted_products::solver::{self, SolveOptions, Solution};
use twisted_products::{Error, Rat};

use report::{Format, Report};

const EXIT_FAILED: u8 = 1;
const EXIT_INFEASIBLE: u8 = 2;
const EXIT_BAD_INPUT: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "twprod", version, about = "Twisted Borcherds product identities in exact arithmetic")]
struct Cli {
    /// Output format.
    #[arg(long, short, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Data file replacing the embedded one.
    #[arg(long, env = DATA_ENV, global = true)]
    data: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve for a product of rescaled Borcherds products.
    Solve {
        class: String,
        /// Level N' of the comparison (defaults per class).
        #[arg(long)]
        level: Option<u32>,
        /// Largest base level N of an ansatz product.
        #[arg(long)]
        max_base_level: Option<u32>,
        /// Zero out as many products as possible, largest scalings first.
        #[arg(long)]
        minimize: bool,
        #[arg(long, default_value_t = 0)]
        pole_order: u32,
    },
    /// Check the stored solution of a class, including the factorization.
    Verify {
        class: String,
        /// Truncation A B of the trivariate expansion.
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        bounds: Option<Vec<i64>>,
    },
    /// Recompute one of the reference tables.
    Tables {
        #[arg(value_enum)]
        which: Table,
    },
    /// Check bases and projection matrices in floating point.
    Numverify {
        /// Tolerance for the projection matrices.
        #[arg(long, default_value_t = PROJECTION_TOL)]
        tol: f64,
        /// Tolerance for slash invariance of the bases.
        #[arg(long, default_value_t = MODULARITY_TOL)]
        modularity_tol: f64,
        /// Number of series terms summed.
        #[arg(long, default_value_t = DEFAULT_TERMS)]
        terms: i64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Table {
    #[value(name = "Ng", alias = "ng")]
    Ng,
    #[value(name = "Zg", alias = "zg")]
    Zg,
    Cusps,
    Projections,
    Solutions,
}

/// A report plus whether everything it checked passed.
type Outcome = (Report, bool);

fn s(x: &Rat) -> String {
    x.to_string()
}

fn list(v: &[Rat]) -> String {
    format!("[{}]", v.iter().map(s).collect::<Vec<_>>().join(", "))
}

fn rats(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(s(x))).collect())
}

fn solution_rows(sol: &Solution) -> Vec<Vec<String>> {
    sol.row_tuples()
        .into_iter()
        .map(|(n, sc, tc0, tc2)| vec![n.to_string(), sc.to_string(), s(&tc0), list(&tc2)])
        .collect()
}

fn cmd_solve(class: &str, opts: &SolveOptions) -> Result<Outcome, Error> {
    let sol = solver::solve(class, opts)?;
    let mut json = sol.to_json();
    json["target_level"] = json!(sol.target_level);
    let summary = vec![
        ("class".into(), sol.class.clone()),
        ("N'".into(), sol.target_level.to_string()),
        ("p".into(), sol.p.to_string()),
        ("weight".into(), s(&sol.weight)),
    ];
    let rows = solution_rows(&sol);
    Ok((Report { json, summary, headers: vec!["N", "n", "tc0", "tc2"], rows }, true))
}

fn cmd_verify(class: &str, bounds: Option<&[i64]>) -> Result<Outcome, Error> {
    let sol = solver::table_solution(class)?;
    let report = solver::verify_solution(class, &sol)?;
    let specs = sol.specs();
    let bd = match bounds {
        Some(&[a, b]) if a >= 0 && b >= 0 => Q3Bounds::new(a, b),
        Some(_) => return Err(Error::Input("bounds must be two nonnegative integers".into())),
        None => default_bounds(class, &specs)?,
    };
    let lhs = expand_phi_power(class, sol.p, bd)?;
    let rhs = expand_borcherds_side(&specs, sol.p, bd)?;
    let cmp = compare(&lhs, &rhs)?;
    let expansion = match &cmp {
        Comparison::Equal => "equal".to_string(),
        Comparison::LeadingMismatch { lhs, rhs } => format!("leading monomials differ: {lhs:?} vs {rhs:?}"),
        Comparison::Mismatch { monomial, lhs, rhs } => {
            format!("coefficient of q1^{} z^{} q2^{}: {lhs} vs {rhs}", monomial.0, monomial.1, monomial.2)
        }
    };
    let passed = report.passed() && cmp.is_equal();
    let (e1, e2, e3) = &report.exponents;
    let json = json!({
        "class": class,
        "p": report.p,
        "weight": s(&report.weight),
        "exponents": [s(e1), s(e2), s(e3)],
        "checks": report.checks.iter().map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail})).collect::<Vec<_>>(),
        "expansion": {"bounds": [bd.a, bd.b], "equal": cmp.is_equal(), "detail": expansion},
        "passed": passed,
    });
    let mut rows: Vec<Vec<String>> = report
        .checks
        .iter()
        .map(|c| vec![c.name.to_string(), if c.passed { "ok" } else { "FAILED" }.into(), c.detail.clone()])
        .collect();
    rows.push(vec![
        "expansion".into(),
        if cmp.is_equal() { "ok" } else { "FAILED" }.into(),
        format!("A = {}, B = {}: {expansion}", bd.a, bd.b),
    ]);
    let summary = vec![
        ("class".into(), class.to_string()),
        ("p".into(), report.p.to_string()),
        ("weight".into(), s(&report.weight)),
        ("exponents".into(), format!("({e1}, {e2}, {e3})")),
    ];
    Ok((Report { json, summary, headers: vec!["check", "status", "detail"], rows }, passed))
}

fn minimized(class: &str) -> Result<Solution, Error> {
    solver::solve(class, &SolveOptions { minimize: true, ..Default::default() })
}

fn table_ng() -> Result<Report, Error> {
    let mut rows = Vec::new();
    let mut out = Vec::new();
    for g in CLASSES {
        let sol = minimized(g)?;
        let ng = class_data(g)?.conjectured_level;
        rows.push(vec![g.to_string(), ng.to_string(), s(&sol.weight), sol.p.to_string()]);
        out.push(json!({"class": g, "Ng": ng, "kg": s(&sol.weight), "p": sol.p}));
    }
    Ok(Report { json: Value::Array(out), summary: vec![], headers: vec!["g", "Ng", "kg", "p"], rows })
}

fn table_zg() -> Result<Report, Error> {
    let mut rows = Vec::new();
    let mut out = Vec::new();
    for g in CLASSES {
        for d in power_map(g)?.into_keys() {
            let (m0, m2) = moebius_component(g, d)?;
            rows.push(vec![g.to_string(), d.to_string(), s(&m0), m2.to_string()]);
            out.push(json!({"class": g, "d": d, "m0": s(&m0), "level": m2.level, "m2": rats(&m2.coords)}));
        }
    }
    Ok(Report { json: Value::Array(out), summary: vec![], headers: vec!["g", "d", "M0", "M2"], rows })
}

fn table_cusps() -> Result<Report, Error> {
    let mut rows = Vec::new();
    let mut out = Vec::new();
    for n in supported_levels()? {
        for c in cusp_set(n)? {
            rows.push(vec![n.to_string(), c.label(), c.width.to_string(), c.n_c.to_string()]);
            out.push(json!({"N": n, "cusp": c.label(), "h": c.width, "Nc": c.n_c}));
        }
    }
    Ok(Report { json: Value::Array(out), summary: vec![], headers: vec!["N", "cusp", "h", "Nc"], rows })
}

fn table_projections() -> Result<Report, Error> {
    let mut rows = Vec::new();
    let mut out = Vec::new();
    for (k, n, key) in modforms::data()?.projections.keys() {
        let cusp = CuspData::parse(*n, key)?;
        let m = modforms::projection(*k, *n, &cusp)?.matrix.to_rows();
        let text: Vec<String> = m.iter().map(|r| list(r)).collect();
        rows.push(vec![k.to_string(), n.to_string(), cusp.label(), format!("[{}]", text.join(", "))]);
        let jm: Vec<Value> = m.iter().map(|r| rats(r)).collect();
        out.push(json!({"k": k, "N": n, "cusp": cusp.label(), "matrix": jm}));
    }
    Ok(Report { json: Value::Array(out), summary: vec![], headers: vec!["k", "N", "cusp", "matrix"], rows })
}

fn table_solutions() -> Result<Report, Error> {
    let mut rows = Vec::new();
    let mut out = Vec::new();
    for g in CLASSES {
        let sol = minimized(g)?;
        for r in solution_rows(&sol) {
            let mut row = vec![g.to_string()];
            row.extend(r);
            rows.push(row);
        }
        out.push(sol.to_json());
    }
    Ok(Report { json: Value::Array(out), summary: vec![], headers: vec!["g", "N", "n", "tc0", "tc2"], rows })
}

fn cmd_tables(which: Table) -> Result<Outcome, Error> {
    let r = match which {
        Table::Ng => table_ng()?,
        Table::Zg => table_zg()?,
        Table::Cusps => table_cusps()?,
        Table::Projections => table_projections()?,
        Table::Solutions => table_solutions()?,
    };
    Ok((r, true))
}

fn cmd_numverify(tol: f64, modularity_tol: f64, terms: i64) -> Result<Outcome, Error> {
    if !(tol > 0.0 && modularity_tol > 0.0 && terms > 0) {
        return Err(Error::Input("tolerances and terms must be positive".into()));
    }
    let results = numverify::verify_all(terms, tol, modularity_tol)?;
    let passed = results.iter().all(|r| r.passed());
    let rows = results
        .iter()
        .map(|r| {
            vec![
                r.kind.to_string(),
                r.weight.to_string(),
                r.level.to_string(),
                r.cusp.clone().unwrap_or_else(|| "-".into()),
                format!("{:.3e}", r.residual),
                format!("{:e}", r.tol),
                if r.passed() { "ok" } else { "FAILED" }.into(),
            ]
        })
        .collect();
    let json = json!({
        "terms": terms,
        "passed": passed,
        "results": results.iter().map(|r| json!({
            "kind": r.kind, "k": r.weight, "N": r.level, "cusp": r.cusp,
            "residual": r.residual, "tol": r.tol, "passed": r.passed(),
        })).collect::<Vec<_>>(),
    });
    let summary = vec![("terms".into(), terms.to_string())];
    Ok((Report { json, summary, headers: vec!["check", "k", "N", "cusp", "residual", "tol", "status"], rows }, passed))
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    match &cli.command {
        Command::Solve { class, level, max_base_level, minimize, pole_order } => cmd_solve(
            class,
            &SolveOptions {
                target_level: *level,
                max_base_level: *max_base_level,
                pole_order: *pole_order,
                minimize: *minimize,
            },
        ),
        Command::Verify { class, bounds } => cmd_verify(class, bounds.as_deref()),
        Command::Tables { which } => cmd_tables(*which),
        Command::Numverify { tol, modularity_tol, terms } => cmd_numverify(*tol, *modularity_tol, *terms),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_BAD_INPUT) } else { ExitCode::SUCCESS };
        }
    };
    if let Some(path) = &cli.data {
        // read once by the library on first access
        std::env::set_var(DATA_ENV, path);
    }
    match run(&cli) {
        Ok((report, passed)) => {
            if let Err(e) = report.write(cli.format, &mut io::stdout().lock()) {
                if e.kind() == io::ErrorKind::BrokenPipe {
                    return ExitCode::SUCCESS;
                }
                eprintln!("twprod: {e}");
                return ExitCode::from(EXIT_BAD_INPUT);
            }
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAILED)
            }
        }
        Err(e) => {
            eprintln!("twprod: {e}");
            ExitCode::from(match e {
                Error::Infeasible(_) => EXIT_INFEASIBLE,
                _ => EXIT_BAD_INPUT,
            })
        }
    }
}
