//! Command-line front end: scenario solving, the four-case comparison,
//! parameter sweeps, discretization-convergence ratios and the randomized
//! property suite.
//!
//! Exit codes: 0 success, 1 property-validation failure, 2 configuration
//! error, 3 solver infeasibility.

mod config;
mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{parse_scenario, Estimation, ScenarioConfig};

use report::{opt_int, opt_sig6, record, sig6};
use twostage_core::{
    checks, convergence_ratio, solve_joint, solve_m_star, solve_theta_star_with_density,
    CaseRow, ModelError, ModelParams,
};

#[derive(Parser)]
#[command(
    name = "twostage",
    about = "Two-stage markdown pricing with learning effects, word-of-mouth and extended warranty",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the scenario selected by the config flags and print the plan.
    Solve {
        #[arg(long)]
        config: PathBuf,
        /// CSV destination (default: the config `output` path, else stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve all four cases (base, word-of-mouth, warranty, both) and
    /// report profits relative to the base case.
    CompareCases {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-solve the scenario across a parameter grid.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// One of: alpha, gamma, c, r0, beta, n.
        #[arg(long)]
        axis: String,
        #[arg(long)]
        lo: f64,
        #[arg(long)]
        hi: f64,
        #[arg(long)]
        steps: usize,
    },
    /// Discrete-to-continuous profit ratios for a list of period counts
    /// (benchmark case: the initial perception is pinned to `rm`).
    Convergence {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Comma-separated period counts, each >= 2.
        #[arg(long, value_delimiter = ',', required = true)]
        n_list: Vec<usize>,
    },
    /// Run the randomized property suite on seeded draws plus the scenario
    /// point.
    Validate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 100)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

const EXIT_PROPERTY_FAILURE: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_INFEASIBLE: u8 = 3;

fn solver_exit_code(e: &ModelError) -> u8 {
    match e {
        ModelError::InvalidParameter { .. } | ModelError::Domain { .. } => EXIT_CONFIG,
        ModelError::InfeasibleWarrantyPrice { .. } | ModelError::Solver(_) => EXIT_INFEASIBLE,
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn config(message: impl Into<String>) -> Self {
        Failure { code: EXIT_CONFIG, message: message.into() }
    }

    fn solver(e: ModelError) -> Self {
        Failure { code: solver_exit_code(&e), message: e.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn load_config(path: &Path) -> Result<ScenarioConfig, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::config(format!("cannot read config {}: {e}", path.display())))?;
    parse_scenario(&text).map_err(|e| Failure::config(e.0))
}

fn write_output(
    flag: Option<&Path>,
    config_default: Option<&Path>,
    content: &str,
) -> Result<(), Failure> {
    match flag.or(config_default) {
        Some(path) => fs::write(path, content)
            .map_err(|e| Failure::config(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Solve { config, out } => {
            let cfg = load_config(&config)?;
            cmd_solve(&cfg, out.as_deref())
        }
        Command::CompareCases { config, out } => {
            let cfg = load_config(&config)?;
            cmd_compare_cases(&cfg, out.as_deref())
        }
        Command::Sweep { config, out, axis, lo, hi, steps } => {
            let cfg = load_config(&config)?;
            cmd_sweep(&cfg, out.as_deref(), &axis, lo, hi, steps)
        }
        Command::Convergence { config, out, n_list } => {
            let cfg = load_config(&config)?;
            cmd_convergence(&cfg, out.as_deref(), &n_list)
        }
        Command::Validate { config, samples, seed } => {
            let cfg = load_config(&config)?;
            cmd_validate(&cfg, samples, seed)
        }
    }
}

// ---------------------------------------------------------------------------
// solve
// ---------------------------------------------------------------------------

struct SolveRow {
    case: &'static str,
    p1: f64,
    p2: f64,
    theta: f64,
    switch_period: Option<usize>,
    p_w: Option<f64>,
    purchase_prob: Option<f64>,
    expected_claims: Option<f64>,
    profit: f64,
    /// Stage-1 profit for price-only cases, sales profit for warranty cases.
    profit_part1: f64,
    /// Stage-2 profit for price-only cases, warranty profit for warranty cases.
    profit_part2: f64,
}

const SOLVE_HEADER: &str = "case,p1,p2,theta,switch_period,p_w,purchase_prob,expected_claims,\
profit,profit_part1,profit_part2\n";

fn solve_scenario(cfg: &ScenarioConfig) -> Result<SolveRow, Failure> {
    let params = &cfg.params;
    match (cfg.wom, cfg.warranty) {
        (false, false) => {
            let bench = ModelParams { r0: params.rm, ..params.clone() };
            let sol =
                solve_theta_star_with_density(&bench, &cfg.density).map_err(Failure::solver)?;
            Ok(SolveRow {
                case: "benchmark",
                p1: sol.p1,
                p2: sol.p2,
                theta: sol.theta,
                switch_period: sol.switch_period,
                p_w: None,
                purchase_prob: None,
                expected_claims: None,
                profit: sol.profit,
                profit_part1: sol.profit_stage1,
                profit_part2: sol.profit_stage2,
            })
        }
        (true, false) => {
            let sol = solve_m_star(params, &cfg.density).map_err(Failure::solver)?;
            Ok(SolveRow {
                case: match cfg.estimation {
                    Estimation::Overestimation => "wom-oe",
                    Estimation::Underestimation => "wom-ue",
                },
                p1: sol.p1,
                p2: sol.p2,
                theta: sol.theta,
                switch_period: sol.switch_period,
                p_w: None,
                purchase_prob: None,
                expected_claims: None,
                profit: sol.profit,
                profit_part1: sol.profit_stage1,
                profit_part2: sol.profit_stage2,
            })
        }
        (wom, true) => {
            let sol = solve_joint(params, &cfg.density, wom).map_err(Failure::solver)?;
            Ok(SolveRow {
                case: if wom { "wom+warranty" } else { "warranty" },
                p1: sol.p1,
                p2: sol.p2,
                theta: sol.theta,
                switch_period: Some(sol.m_star),
                p_w: Some(sol.p_w),
                purchase_prob: Some(sol.purchase_prob),
                expected_claims: Some(sol.expected_claims),
                profit: sol.profit_total,
                profit_part1: sol.profit_sales,
                profit_part2: sol.profit_warranty,
            })
        }
    }
}

fn cmd_solve(cfg: &ScenarioConfig, out: Option<&Path>) -> Result<u8, Failure> {
    let row = solve_scenario(cfg)?;
    println!("case: {}", row.case);
    println!("p1 = {}  p2 = {}", sig6(row.p1), sig6(row.p2));
    match row.switch_period {
        Some(m) => println!(
            "theta = {} (switch after period {m} of {})",
            sig6(row.theta),
            cfg.params.n_periods
        ),
        None => println!("theta = {}", sig6(row.theta)),
    }
    if let (Some(pw), Some(prob), Some(claims)) =
        (row.p_w, row.purchase_prob, row.expected_claims)
    {
        println!("p_w = {} (purchase probability {})", sig6(pw), sig6(prob));
        println!("expected claims = {}", sig6(claims));
        println!(
            "profit = {} (sales {}, warranty {})",
            sig6(row.profit),
            sig6(row.profit_part1),
            sig6(row.profit_part2)
        );
    } else {
        println!(
            "profit = {} (stage 1 {}, stage 2 {})",
            sig6(row.profit),
            sig6(row.profit_part1),
            sig6(row.profit_part2)
        );
    }

    let mut csv = String::from(SOLVE_HEADER);
    csv.push_str(&record(&[
        row.case.to_string(),
        sig6(row.p1),
        sig6(row.p2),
        sig6(row.theta),
        opt_int(row.switch_period),
        opt_sig6(row.p_w),
        opt_sig6(row.purchase_prob),
        opt_sig6(row.expected_claims),
        sig6(row.profit),
        sig6(row.profit_part1),
        sig6(row.profit_part2),
    ]));
    write_output(out, cfg.output.as_deref(), &csv)?;
    Ok(0)
}

// ---------------------------------------------------------------------------
// compare-cases
// ---------------------------------------------------------------------------

fn cmd_compare_cases(cfg: &ScenarioConfig, out: Option<&Path>) -> Result<u8, Failure> {
    let r0_ue = cfg
        .r0_ue
        .ok_or_else(|| Failure::config("key `r0_ue` is required for compare-cases"))?;
    if !cfg.warranty {
        return Err(Failure::config(
            "compare-cases needs the warranty parameters; set `warranty = on`",
        ));
    }
    let rows = twostage_core::case_comparison(&cfg.params, &cfg.density, cfg.r0_oe, r0_ue)
        .map_err(Failure::solver)?;
    let mut csv = String::from("case,p1,p2,theta,p_w,profit,pct_of_case_i\n");
    for row in &rows {
        csv.push_str(&case_record(row));
    }
    write_output(out, cfg.output.as_deref(), &csv)?;
    Ok(0)
}

fn case_record(row: &CaseRow) -> String {
    record(&[
        row.label.as_str().to_string(),
        sig6(row.p1),
        sig6(row.p2),
        sig6(row.theta),
        opt_sig6(row.p_w),
        sig6(row.profit),
        sig6(row.pct_of_case_i),
    ])
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq)]
enum Axis {
    Alpha,
    Gamma,
    Cost,
    R0,
    Beta,
    Periods,
}

impl Axis {
    fn parse(name: &str) -> Result<Axis, Failure> {
        match name {
            "alpha" => Ok(Axis::Alpha),
            "gamma" => Ok(Axis::Gamma),
            "c" => Ok(Axis::Cost),
            "r0" => Ok(Axis::R0),
            "beta" => Ok(Axis::Beta),
            "n" | "N" => Ok(Axis::Periods),
            other => Err(Failure::config(format!(
                "unknown sweep axis `{other}` (expected alpha|gamma|c|r0|beta|n)"
            ))),
        }
    }

    fn apply(&self, params: &ModelParams, value: f64) -> ModelParams {
        let mut p = params.clone();
        match self {
            Axis::Alpha => p.alpha = value,
            Axis::Gamma => p.gamma = value,
            Axis::Cost => p.c = value,
            Axis::R0 => p.r0 = value,
            Axis::Beta => p.beta = value,
            Axis::Periods => p.n_periods = value.round().max(2.0) as usize,
        }
        p
    }
}

fn grid(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    (0..steps)
        .map(|i| lo + (hi - lo) * i as f64 / (steps - 1) as f64)
        .collect()
}

fn cmd_sweep(
    cfg: &ScenarioConfig,
    out: Option<&Path>,
    axis: &str,
    lo: f64,
    hi: f64,
    steps: usize,
) -> Result<u8, Failure> {
    if !(lo < hi) || steps < 2 {
        return Err(Failure::config("sweep needs lo < hi and steps >= 2"));
    }
    let axis = Axis::parse(axis)?;
    let values = grid(lo, hi, steps);
    let mut ok_rows = 0usize;
    let mut csv = String::new();

    if cfg.warranty {
        csv.push_str(
            "value,ii_p1,ii_p2,ii_theta,ii_profit,ii_markdown,\
             iv_p1,iv_p2,iv_theta,iv_p_w,iv_profit,iv_markdown,profit_gap,error\n",
        );
        for &v in &values {
            let p = axis.apply(&cfg.params, v);
            let solved = p
                .validate()
                .and_then(|()| solve_m_star(&p, &cfg.density))
                .and_then(|ii| solve_joint(&p, &cfg.density, true).map(|iv| (ii, iv)));
            match solved {
                Ok((ii, iv)) => {
                    ok_rows += 1;
                    csv.push_str(&record(&[
                        sig6(v),
                        sig6(ii.p1),
                        sig6(ii.p2),
                        sig6(ii.theta),
                        sig6(ii.profit),
                        sig6(ii.p1 - ii.p2),
                        sig6(iv.p1),
                        sig6(iv.p2),
                        sig6(iv.theta),
                        sig6(iv.p_w),
                        sig6(iv.profit_total),
                        sig6(iv.p1 - iv.p2),
                        sig6(iv.profit_total - ii.profit),
                        String::new(),
                    ]));
                }
                Err(e) => csv.push_str(&error_row(v, 13, &e)),
            }
        }
    } else {
        csv.push_str("value,p1,p2,theta,switch_period,profit,error\n");
        for &v in &values {
            let p = axis.apply(&cfg.params, v);
            let solved = p.validate().and_then(|()| {
                if cfg.wom {
                    solve_m_star(&p, &cfg.density)
                } else {
                    let bench = ModelParams { r0: p.rm, ..p.clone() };
                    solve_theta_star_with_density(&bench, &cfg.density)
                }
            });
            match solved {
                Ok(sol) => {
                    ok_rows += 1;
                    csv.push_str(&record(&[
                        sig6(v),
                        sig6(sol.p1),
                        sig6(sol.p2),
                        sig6(sol.theta),
                        opt_int(sol.switch_period),
                        sig6(sol.profit),
                        String::new(),
                    ]));
                }
                Err(e) => csv.push_str(&error_row(v, 6, &e)),
            }
        }
    }

    if ok_rows == 0 {
        return Err(Failure::config("every sweep row failed; check the axis range"));
    }
    write_output(out, cfg.output.as_deref(), &csv)?;
    Ok(0)
}

fn error_row(value: f64, blank_cells: usize, e: &ModelError) -> String {
    let mut cells = vec![sig6(value)];
    cells.extend(std::iter::repeat_with(String::new).take(blank_cells - 1));
    cells.push(e.to_string().replace(',', ";"));
    record(&cells)
}

// ---------------------------------------------------------------------------
// convergence
// ---------------------------------------------------------------------------

fn cmd_convergence(cfg: &ScenarioConfig, out: Option<&Path>, n_list: &[usize]) -> Result<u8, Failure> {
    // The ratio is a benchmark quantity: the perception is pinned to `rm`.
    let bench = ModelParams { r0: cfg.params.rm, ..cfg.params.clone() };
    let mut csv = String::from("n,ratio,error\n");
    let mut ok_rows = 0usize;
    for &n in n_list {
        match convergence_ratio(&bench, n) {
            Ok(ratio) => {
                ok_rows += 1;
                csv.push_str(&record(&[n.to_string(), sig6(ratio), String::new()]));
            }
            Err(e) => {
                csv.push_str(&record(&[
                    n.to_string(),
                    String::new(),
                    e.to_string().replace(',', ";"),
                ]));
            }
        }
    }
    if ok_rows == 0 {
        return Err(Failure::config("every convergence row failed"));
    }
    write_output(out, cfg.output.as_deref(), &csv)?;
    Ok(0)
}

// ---------------------------------------------------------------------------
// validate
// ---------------------------------------------------------------------------

fn cmd_validate(cfg: &ScenarioConfig, samples: u64, seed: u64) -> Result<u8, Failure> {
    if samples < 1 {
        return Err(Failure::config("validate needs samples >= 1"));
    }
    println!("property validation: samples = {samples}, seed = {seed}");
    println!("sampling ranges: {}", checks::SAMPLING_RANGES);
    let p = &cfg.params;
    println!(
        "pinned scenario point: alpha={}, gamma={}, c={}, beta={}, r0={}, rm={}, n_periods={}",
        p.alpha, p.gamma, p.c, p.beta, p.r0, p.rm, p.n_periods
    );
    let reports = checks::run_suite(samples, seed, p);
    let mut first_failure: Option<(&'static str, String)> = None;
    for r in &reports {
        let total = r.passed + r.failed;
        println!("  {}: {}/{} passed", r.name, r.passed, total);
        if r.failed > 0 && first_failure.is_none() {
            first_failure = Some((r.name, r.first_failure.clone().unwrap_or_default()));
        }
    }
    match first_failure {
        None => {
            println!("all properties passed");
            Ok(0)
        }
        Some((name, params)) => {
            println!("FAILED property `{name}` at: {params}");
            Ok(EXIT_PROPERTY_FAILURE)
        }
    }
}
