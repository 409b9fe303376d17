//! Command-line front end: every library operation as a subcommand, plus a
//! `reproduce` subcommand that runs the full verification table.
//!
//! Exit codes: 0 success, 1 domain errors (bad expressions, failed checks),
//! 2 usage errors, 3 node-budget exhaustion. Identical invocations produce
//! byte-identical standard output; diagnostics go to standard error.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use permgrid::{
    compare_classes, enumerate_class, find_basis, format_real, gridding_exists, inequality_check,
    max_intersection_length, merge_gr_bound, merge_member, merge_upper_bound, parse_class_expr,
    rational_series, reproduce, staircase_counts, staircase_proxy_counts, t_step_staircase_gr,
    toeplitz_eigenvalues, validate_staircase, Budget, ClassComparison, ClassExpr, EnumError,
    MaxIntersection, Oracle, Permutation, StaircaseKind, StaircaseSpec, ToeplitzSpec,
    DEFAULT_NODE_BUDGET,
};

#[derive(Parser)]
#[command(
    name = "permgrid",
    version,
    about = "Permutation classes: containment, merges, grid classes, staircases, enumeration, and growth-rate formulas"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Node budget for the exponential searches; the PERMGRID_BUDGET
    /// environment variable overrides the default.
    #[arg(long, global = true)]
    budget: Option<u64>,

    /// Worker threads for enumeration (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Hard cap on accepted --max-len values.
    #[arg(long, global = true, default_value_t = 14)]
    max_len_cap: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Inc,
    Spiral,
}

impl From<KindArg> for StaircaseKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Inc => StaircaseKind::Increasing,
            KindArg::Spiral => StaircaseKind::Spiral,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a permutation contains a pattern.
    Contains {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        perm: String,
    },
    /// Count the members of a class by length.
    Enumerate {
        #[arg(long)]
        class: String,
        #[arg(long)]
        max_len: usize,
        /// Also list the members of each length (text/json only).
        #[arg(long)]
        keep_members: bool,
    },
    /// Find the minimal non-members of a class up to a length.
    Basis {
        #[arg(long)]
        class: String,
        #[arg(long)]
        max_len: usize,
    },
    /// Compare two classes length by length.
    Compare {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long)]
        max_len: usize,
    },
    /// Decide merge membership, with a witness coloring on success.
    MergeMember {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long)]
        perm: String,
    },
    /// Count the merge of two classes by length.
    MergeCount {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long)]
        max_len: usize,
    },
    /// Evaluate the binomial upper bound on merge counts.
    Bound {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long)]
        max_len: usize,
    },
    /// Exactly verify the finite-intersection inequality per length.
    Prop2Check {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long)]
        max_len: usize,
        /// Cutoff for determining the longest permutation common to both
        /// classes; exceeding it is an error.
        #[arg(long, default_value_t = 6)]
        cutoff: usize,
    },
    /// Decide grid-class membership, with a witness gridding on success.
    GridMember {
        #[arg(long)]
        class: String,
        #[arg(long)]
        perm: String,
    },
    /// Build, validate, or enumerate staircase classes.
    Staircase {
        #[command(subcommand)]
        action: StaircaseAction,
    },
    /// Closed-form eigenvalues of a tridiagonal Toeplitz matrix.
    Toeplitz {
        #[arg(long)]
        sub: f64,
        #[arg(long)]
        diag: f64,
        #[arg(long = "super")]
        sup: f64,
        #[arg(long)]
        dim: usize,
    },
    /// Growth rate of the t-step staircase from the cell growth rates.
    StaircaseGr {
        #[arg(long)]
        gr_c: f64,
        #[arg(long)]
        gr_d: f64,
        #[arg(long)]
        steps: usize,
    },
    /// The merge growth-rate bound from the two growth rates.
    MergeGrBound {
        #[arg(long)]
        gr_c: f64,
        #[arg(long)]
        gr_d: f64,
    },
    /// Expand a rational generating function into exact coefficients.
    Series {
        /// Numerator coefficients, constant term first, e.g. "1,-2".
        #[arg(long)]
        numerator: String,
        /// Denominator coefficients, constant term first, e.g. "1,-3,1".
        #[arg(long)]
        denominator: String,
        #[arg(long)]
        terms: usize,
    },
    /// Run the full verification table and print one line per check.
    Reproduce,
}

#[derive(Subcommand)]
enum StaircaseAction {
    /// Print the grid form of a staircase.
    Build {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long)]
        steps: usize,
    },
    /// Check the staircase axioms for a grid expression.
    Validate {
        #[arg(long)]
        class: String,
    },
    /// Count a staircase class by length; --steps for a fixed restriction,
    /// --proxy for the n-step proxy of the infinite staircase.
    Enumerate {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long, conflicts_with = "proxy")]
        steps: Option<usize>,
        #[arg(long)]
        proxy: bool,
        #[arg(long)]
        max_len: usize,
    },
}

enum CliError {
    Usage(String),
    Domain(String),
    Budget(String),
}

impl From<EnumError> for CliError {
    fn from(e: EnumError) -> Self {
        CliError::Budget(e.to_string())
    }
}

impl From<permgrid::BudgetExceeded> for CliError {
    fn from(e: permgrid::BudgetExceeded) -> Self {
        CliError::Budget(e.to_string())
    }
}

impl From<permgrid::SpectralError> for CliError {
    fn from(e: permgrid::SpectralError) -> Self {
        CliError::Domain(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Budget(msg)) => {
            eprintln!("budget exhausted: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let budget_limit = resolve_budget(&cli)?;
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return Err(CliError::Usage("--threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    }
    let format = cli.format;
    let cap = cli.max_len_cap;
    let oracle = Oracle::new();

    match cli.command {
        Command::Contains { pattern, perm } => {
            let pattern = parse_perm(&pattern)?;
            let perm = parse_perm(&perm)?;
            let result = perm.contains(&pattern);
            emit(
                format,
                || format!("{result}"),
                || json!({ "result": result }),
                NO_CSV,
            )
        }
        Command::Enumerate {
            class,
            max_len,
            keep_members,
        } => {
            check_max_len(max_len, cap)?;
            let expr = parse_expr(&class)?;
            let e = enumerate_class(&oracle, &expr, max_len, keep_members, budget_limit)?;
            emit_enumeration(format, &e)
        }
        Command::Basis { class, max_len } => {
            check_max_len(max_len, cap)?;
            let expr = parse_expr(&class)?;
            let basis = find_basis(&oracle, &expr, max_len, budget_limit)?;
            let strings: Vec<String> = basis.iter().map(|p| p.to_string()).collect();
            emit(
                format,
                || {
                    if strings.is_empty() {
                        "(none)".to_string()
                    } else {
                        strings.join("\n")
                    }
                },
                || json!({ "class": expr.canonical(), "max_len": max_len, "basis": strings }),
                NO_CSV,
            )
        }
        Command::Compare {
            left,
            right,
            max_len,
        } => {
            check_max_len(max_len, cap)?;
            let l = parse_expr(&left)?;
            let r = parse_expr(&right)?;
            let outcome = compare_classes(&oracle, &l, &r, max_len, budget_limit)?;
            match outcome {
                ClassComparison::EqualThrough(n) => emit(
                    format,
                    || format!("equal through length {n}"),
                    || json!({ "equal_through": n }),
                    NO_CSV,
                ),
                ClassComparison::Differs { witness, in_left } => {
                    let side = if in_left { "left" } else { "right" };
                    emit(
                        format,
                        || format!("differ: {witness} is only in the {side} class"),
                        || json!({ "witness": witness.to_string(), "in": side }),
                        NO_CSV,
                    )
                }
            }
        }
        Command::MergeMember { left, right, perm } => {
            let l = oracle.compile(&parse_expr(&left)?);
            let r = oracle.compile(&parse_expr(&right)?);
            let host = parse_perm(&perm)?;
            let budget = Budget::new(budget_limit);
            let witness = merge_member(&l, &r, &host, &budget)?;
            match witness {
                Some(coloring) => emit(
                    format,
                    || format!("true {coloring}"),
                    || json!({ "member": true, "witness": coloring.to_string() }),
                    NO_CSV,
                ),
                None => emit(
                    format,
                    || "false".to_string(),
                    || json!({ "member": false }),
                    NO_CSV,
                ),
            }
        }
        Command::MergeCount {
            left,
            right,
            max_len,
        } => {
            check_max_len(max_len, cap)?;
            let expr = ClassExpr::merge(parse_expr(&left)?, parse_expr(&right)?);
            let e = enumerate_class(&oracle, &expr, max_len, false, budget_limit)?;
            emit_enumeration(format, &e)
        }
        Command::Bound {
            left,
            right,
            max_len,
        } => {
            check_max_len(max_len, cap)?;
            let l = parse_expr(&left)?;
            let r = parse_expr(&right)?;
            let lc = enumerate_class(&oracle, &l, max_len, false, budget_limit)?.counts;
            let rc = enumerate_class(&oracle, &r, max_len, false, budget_limit)?.counts;
            let bounds: Vec<String> = (0..=max_len)
                .map(|n| {
                    merge_upper_bound(&lc, &rc, n)
                        .expect("lengths were enumerated")
                        .to_string()
                })
                .collect();
            emit(
                format,
                || {
                    bounds
                        .iter()
                        .enumerate()
                        .map(|(n, b)| format!("{n} {b}"))
                        .collect::<Vec<_>>()
                        .join("\n")
                },
                || json!({ "left": lc.class_label, "right": rc.class_label, "bounds": bounds }),
                Some(|| {
                    let mut out = String::from("n,bound\n");
                    for (n, b) in bounds.iter().enumerate() {
                        out.push_str(&format!("{n},{b}\n"));
                    }
                    out
                }),
            )
        }
        Command::Prop2Check {
            left,
            right,
            max_len,
            cutoff,
        } => {
            check_max_len(max_len, cap)?;
            if cutoff == 0 {
                return Err(CliError::Usage("--cutoff must be at least 1".into()));
            }
            let l = parse_expr(&left)?;
            let r = parse_expr(&right)?;
            let m = match max_intersection_length(&oracle, &l, &r, cutoff, budget_limit)? {
                MaxIntersection::Length(m) => m,
                MaxIntersection::ExceedsCutoff(c) => {
                    return Err(CliError::Domain(format!(
                        "the classes share a permutation of length {c}; raise --cutoff or pick classes with finite intersection"
                    )))
                }
            };
            let rows = inequality_check(&oracle, &l, &r, m, max_len, budget_limit)?;
            emit(
                format,
                || {
                    let mut lines = vec![format!("m = {m}")];
                    for row in &rows {
                        lines.push(format!(
                            "n={} lhs={} rhs={} {}",
                            row.n,
                            row.lhs,
                            row.rhs,
                            if row.holds { "holds" } else { "VIOLATED" }
                        ));
                    }
                    lines.join("\n")
                },
                || {
                    let table: Vec<serde_json::Value> = rows
                        .iter()
                        .map(|row| {
                            json!({
                                "n": row.n,
                                "lhs": row.lhs.to_string(),
                                "rhs": row.rhs.to_string(),
                                "holds": row.holds,
                            })
                        })
                        .collect();
                    json!({ "m": m, "rows": table })
                },
                Some(|| {
                    let mut out = String::from("n,lhs,rhs,holds\n");
                    for row in &rows {
                        out.push_str(&format!(
                            "{},{},{},{}\n",
                            row.n, row.lhs, row.rhs, row.holds
                        ));
                    }
                    out
                }),
            )
        }
        Command::GridMember { class, perm } => {
            let expr = parse_expr(&class)?;
            let ClassExpr::Grid(matrix) = &expr else {
                return Err(CliError::Domain(
                    "--class must be a grid(...) or staircase(...) expression".into(),
                ));
            };
            let host = parse_perm(&perm)?;
            let budget = Budget::new(budget_limit);
            let witness = gridding_exists(&oracle, matrix, &host, &budget)?;
            match witness {
                Some(g) => emit(
                    format,
                    || {
                        format!(
                            "true cols={} rows={}",
                            join_usizes(&g.col_divisions),
                            join_usizes(&g.row_divisions)
                        )
                    },
                    || json!({ "member": true, "cols": g.col_divisions, "rows": g.row_divisions }),
                    NO_CSV,
                ),
                None => emit(
                    format,
                    || "false".to_string(),
                    || json!({ "member": false }),
                    NO_CSV,
                ),
            }
        }
        Command::Staircase { action } => match action {
            StaircaseAction::Build {
                kind,
                left,
                right,
                steps,
            } => {
                let spec = staircase_spec(kind, &left, &right, steps)?;
                let grid = ClassExpr::grid(spec.build());
                emit(
                    format,
                    || grid.canonical(),
                    || json!({ "grid": grid.canonical() }),
                    NO_CSV,
                )
            }
            StaircaseAction::Validate { class } => {
                let expr = parse_expr(&class)?;
                let ClassExpr::Grid(matrix) = &expr else {
                    return Err(CliError::Domain(
                        "--class must be a grid(...) or staircase(...) expression".into(),
                    ));
                };
                let report = validate_staircase(matrix);
                emit(
                    format,
                    || {
                        if report.valid {
                            format!("valid ({}-step staircase)", report.steps.unwrap_or(0))
                        } else {
                            format!("invalid: {}", report.issues.join("; "))
                        }
                    },
                    || {
                        json!({
                            "valid": report.valid,
                            "steps": report.steps,
                            "issues": report.issues,
                        })
                    },
                    NO_CSV,
                )
            }
            StaircaseAction::Enumerate {
                kind,
                left,
                right,
                steps,
                proxy,
                max_len,
            } => {
                check_max_len(max_len, cap)?;
                let e = match (steps, proxy) {
                    (Some(steps), false) => {
                        let spec = staircase_spec(kind, &left, &right, steps)?;
                        staircase_counts(&oracle, &spec, max_len, false, budget_limit)?
                    }
                    (None, true) => staircase_proxy_counts(
                        &oracle,
                        kind.into(),
                        &parse_expr(&left)?,
                        &parse_expr(&right)?,
                        max_len,
                        false,
                        budget_limit,
                    )?,
                    _ => {
                        return Err(CliError::Usage(
                            "pass exactly one of --steps <t> or --proxy".into(),
                        ))
                    }
                };
                emit_enumeration(format, &e)
            }
        },
        Command::Toeplitz {
            sub,
            diag,
            sup,
            dim,
        } => {
            let eigenvalues = toeplitz_eigenvalues(&ToeplitzSpec {
                sub,
                diag,
                sup,
                dim,
            })?;
            let strings: Vec<String> = eigenvalues.iter().map(|x| format_real(*x)).collect();
            emit(
                format,
                || strings.join("\n"),
                || json!({ "eigenvalues": strings }),
                Some(|| {
                    let mut out = String::from("j,eigenvalue\n");
                    for (j, s) in strings.iter().enumerate() {
                        out.push_str(&format!("{},{}\n", j + 1, s));
                    }
                    out
                }),
            )
        }
        Command::StaircaseGr { gr_c, gr_d, steps } => {
            let value = t_step_staircase_gr(gr_c, gr_d, steps)?;
            emit_value(format, value)
        }
        Command::MergeGrBound { gr_c, gr_d } => {
            let value = merge_gr_bound(gr_c, gr_d)?;
            emit_value(format, value)
        }
        Command::Series {
            numerator,
            denominator,
            terms,
        } => {
            let num = parse_i64_list(&numerator)?;
            let den = parse_i64_list(&denominator)?;
            let coeffs =
                rational_series(&num, &den, terms).map_err(|e| CliError::Domain(e.to_string()))?;
            let strings: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
            emit(
                format,
                || strings.join("\n"),
                || json!({ "coefficients": strings }),
                Some(|| {
                    let mut out = String::from("n,coefficient\n");
                    for (n, c) in strings.iter().enumerate() {
                        out.push_str(&format!("{n},{c}\n"));
                    }
                    out
                }),
            )
        }
        Command::Reproduce => {
            let outcomes = reproduce::run_all(budget_limit);
            let all_passed = outcomes.iter().all(|o| o.passed);
            match format {
                Format::Json => {
                    let rows: Vec<serde_json::Value> = outcomes
                        .iter()
                        .map(|o| {
                            json!({ "check": o.name, "passed": o.passed, "details": o.details })
                        })
                        .collect();
                    println!("{}", json!({ "checks": rows, "all_passed": all_passed }));
                }
                Format::Csv => {
                    return Err(CliError::Usage(
                        "reproduce supports --format text or json".into(),
                    ))
                }
                Format::Text => {
                    for o in &outcomes {
                        let status = if o.passed { "PASS" } else { "FAIL" };
                        println!(
                            "{status} {name}: {details}",
                            name = o.name,
                            details = o.details
                        );
                    }
                    let passed = outcomes.iter().filter(|o| o.passed).count();
                    println!("{passed}/{} checks passed", outcomes.len());
                }
            }
            if all_passed {
                Ok(())
            } else {
                Err(CliError::Domain("some checks failed".into()))
            }
        }
    }
}

fn resolve_budget(cli: &Cli) -> Result<u64, CliError> {
    let limit = match cli.budget {
        Some(b) => b,
        None => match std::env::var("PERMGRID_BUDGET") {
            Ok(text) => text
                .parse::<u64>()
                .map_err(|e| CliError::Usage(format!("PERMGRID_BUDGET: {e}")))?,
            Err(_) => DEFAULT_NODE_BUDGET,
        },
    };
    if limit == 0 {
        return Err(CliError::Usage("the node budget must be positive".into()));
    }
    Ok(limit)
}

fn check_max_len(max_len: usize, cap: usize) -> Result<(), CliError> {
    if max_len > cap {
        return Err(CliError::Usage(format!(
            "--max-len {max_len} exceeds the cap of {cap}; raise --max-len-cap if you mean it"
        )));
    }
    Ok(())
}

fn parse_perm(text: &str) -> Result<Permutation, CliError> {
    text.parse()
        .map_err(|e: permgrid::PermError| CliError::Domain(e.to_string()))
}

fn parse_expr(text: &str) -> Result<ClassExpr, CliError> {
    parse_class_expr(text).map_err(|e| CliError::Domain(e.to_string()))
}

fn parse_i64_list(text: &str) -> Result<Vec<i64>, CliError> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<i64>()
                .map_err(|e| CliError::Domain(format!("coefficient {part:?}: {e}")))
        })
        .collect()
}

fn staircase_spec(
    kind: KindArg,
    left: &str,
    right: &str,
    steps: usize,
) -> Result<StaircaseSpec, CliError> {
    if steps == 0 {
        return Err(CliError::Usage("--steps must be at least 1".into()));
    }
    Ok(StaircaseSpec {
        kind: kind.into(),
        c_class: parse_expr(left)?,
        d_class: parse_expr(right)?,
        steps,
    })
}

fn join_usizes(values: &[usize]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

const NO_CSV: Option<fn() -> String> = None;

fn emit(
    format: Format,
    text: impl FnOnce() -> String,
    json: impl FnOnce() -> serde_json::Value,
    csv: Option<impl FnOnce() -> String>,
) -> Result<(), CliError> {
    match format {
        Format::Text => println!("{}", text()),
        Format::Json => println!("{}", json()),
        Format::Csv => match csv {
            Some(render) => print!("{}", render()),
            None => {
                return Err(CliError::Usage(
                    "this subcommand has no CSV form; use --format text or json".into(),
                ))
            }
        },
    }
    Ok(())
}

fn emit_value(format: Format, value: f64) -> Result<(), CliError> {
    emit(
        format,
        || format_real(value),
        || json!({ "value": format_real(value) }),
        NO_CSV,
    )
}

fn emit_enumeration(format: Format, e: &permgrid::Enumeration) -> Result<(), CliError> {
    match format {
        Format::Csv => print!("{}", e.counts.to_csv()),
        Format::Json => {
            let mut value = e.counts.to_json();
            if let Some(levels) = &e.levels {
                let members: Vec<Vec<String>> = levels
                    .iter()
                    .map(|level| level.iter().map(|p| p.to_string()).collect())
                    .collect();
                value["members"] = json!(members);
            }
            println!("{value}");
        }
        Format::Text => {
            println!("class: {}", e.counts.class_label);
            for (n, count) in e.counts.counts.iter().enumerate() {
                println!("{n} {count}");
            }
            if let Some(levels) = &e.levels {
                for (n, level) in levels.iter().enumerate() {
                    let members: Vec<String> = level.iter().map(|p| p.to_string()).collect();
                    println!("members[{n}]: {}", members.join(" "));
                }
            }
        }
    }
    Ok(())
}
