//! Command-line front end: parse a presented cascade, classify its dynamics,
//! work with symbolic enveloping-semigroup elements, print truncated
//! multiplication tables, and cross-check results with sampling oracles.
//!
//! Every subcommand prints a deterministic sequence of `key: value` lines;
//! exit status is 0 on success, 1 on domain errors (bad expressions, points
//! out of range, tables past the size limit, ...), and 2 on usage errors.

use cascade_core::{
    classify, compose, crt_solve, en_equals_ez, equicontinuity_failure_witness,
    equicontinuity_modulus, evaluate, first_aperiodic_point, inverse, minimal_sets,
    nonwap_witness, p_iterate_limit, parse_cascade, parse_element, parse_point,
    parse_residue_list, period_set, pointwise_closure, truncated_semigroup,
    uniform_period_bound, CascadeExpr, ClosureKind, CongruenceClassSpec, CrtOutcome, Dyadic,
    EllisElement, EnEzOutcome, PIterateOutcome, SemigroupTable, Side,
};
use clap::{Args, Parser, Subcommand};
use std::error::Error;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "cascade",
    version,
    about = "Exact symbolic dynamics of presented cascades on countable compact spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// The cascade to operate on: an inline expression or a file holding one.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct ExprInput {
    /// Cascade expression, e.g. `sum(shift2, cycle(3))` or `tower(cycle(2*n+2))`
    #[arg(value_name = "EXPR")]
    expr: Option<String>,
    /// Read the expression from a file instead
    #[arg(long, value_name = "PATH")]
    file: Option<PathBuf>,
}

impl ExprInput {
    fn load(&self) -> Result<CascadeExpr, Box<dyn Error>> {
        let text = match (&self.expr, &self.file) {
            (Some(s), None) => s.clone(),
            (None, Some(path)) => std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?,
            _ => unreachable!("clap enforces exactly one expression source"),
        };
        Ok(parse_cascade(text.trim())?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide the six equivalent dynamical properties, with failure witnesses
    Classify {
        #[command(flatten)]
        input: ExprInput,
    },
    /// Print the period spectrum and the minimal sets
    Periods {
        #[command(flatten)]
        input: ExprInput,
        /// Truncation depth for the visible-period listing
        #[arg(long, default_value_t = 8)]
        depth: u32,
    },
    /// Print the truncated multiplication table of the enveloping semigroup
    Ellis {
        #[command(flatten)]
        input: ExprInput,
        /// Truncation depth (controls which periods are visible)
        #[arg(long, default_value_t = 8)]
        depth: u32,
        /// Half-width of the power window in the non-all-periodic case
        #[arg(long, default_value_t = 8)]
        bound: u64,
    },
    /// Compose two semigroup elements (the inner element applies first)
    Compose {
        #[command(flatten)]
        input: ExprInput,
        /// Element applied second: `f^K`, `fwd(n:r,...)`, or `bwd(n:r,...)`
        #[arg(long, value_name = "ELEMENT")]
        outer: String,
        /// Element applied first
        #[arg(long, value_name = "ELEMENT")]
        inner: String,
    },
    /// Invert a semigroup element (defined only for all-periodic cascades)
    Inverse {
        #[command(flatten)]
        input: ExprInput,
        #[arg(long, value_name = "ELEMENT")]
        element: String,
    },
    /// Apply a semigroup element to a point
    Evaluate {
        #[command(flatten)]
        input: ExprInput,
        #[arg(long, value_name = "ELEMENT")]
        element: String,
        /// Point address, e.g. `left/0`, `piece2/1`, `-5`, `x3`, `star`, `inf`
        #[arg(long, value_name = "POINT", allow_hyphen_values = true)]
        point: String,
    },
    /// Decide whether a residue system is realized by a sequence of exponents
    Realizable {
        /// Comma-separated congruences `modulus:residue`, e.g. `2:1,3:2`
        constraints: String,
    },
    /// Compare the semigroups generated by forward-only and by all iterates
    EnEqEz {
        #[command(flatten)]
        input: ExprInput,
    },
    /// Uniform return bound and equicontinuity modulus at a given epsilon
    Equicont {
        #[command(flatten)]
        input: ExprInput,
        /// Dyadic epsilon: `a`, `a/2^k`, or `a/b` with `b` a power of two
        #[arg(long, value_parser = parse_dyadic)]
        eps: Dyadic,
    },
    /// Bounded search for a pair of points witnessing non-equicontinuity
    Witness {
        #[command(flatten)]
        input: ExprInput,
        /// Dyadic separation threshold
        #[arg(long, value_parser = parse_dyadic, default_value = "1/2")]
        eps: Dyadic,
        /// Truncation depth of the searched point set
        #[arg(long, default_value_t = 8)]
        depth: u32,
        /// Largest iterate checked per pair
        #[arg(long, default_value_t = 64)]
        iter_bound: u64,
    },
    /// Brute-force sampling oracles
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Exact-rotation disk constructions
    #[command(subcommand)]
    Disk(DiskCommand),
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Sample iterates along a congruence class and report their limit
    Piter {
        #[command(flatten)]
        input: ExprInput,
        /// Element whose class is sampled: `f^K`, `fwd(n:r,...)`, `bwd(n:r,...)`
        #[arg(long, value_name = "ELEMENT")]
        element: String,
        #[arg(long, value_name = "POINT", allow_hyphen_values = true)]
        point: String,
        /// Largest |exponent| sampled
        #[arg(long, default_value_t = 256)]
        bound: u64,
    },
    /// Brute-force the pointwise closure of the iterates on a truncation
    Closure {
        #[command(flatten)]
        input: ExprInput,
        #[arg(long, default_value_t = 6)]
        depth: u32,
        /// Largest iterate exponent sampled
        #[arg(long, default_value_t = 8)]
        bound: u64,
        /// Also include negative powers
        #[arg(long)]
        group: bool,
    },
    /// Solve a system of congruences by the Chinese remainder theorem
    Crt {
        /// Comma-separated congruences `modulus:residue`, e.g. `2:1,3:2`
        constraints: String,
    },
}

#[derive(Subcommand)]
enum DiskCommand {
    /// Finite witness that a limit of disk rotations is discontinuous
    Nonwap {
        /// Number of odd primes (hence table rows) to use
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
}

fn parse_dyadic(s: &str) -> Result<Dyadic, cascade_core::dyadic::ParseDyadicError> {
    s.parse()
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn main() -> ExitCode {
    // Die quietly when the read end of a pipe closes (`cascade ... | head`),
    // like other line-oriented tools, instead of panicking on the next print.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<(), Box<dyn Error>> {
    match command {
        Command::Classify { input } => {
            let expr = input.load()?;
            let report = classify(&expr)?;
            println!("expression: {expr}");
            println!("all-periodic: {}", yes_no(report.all_periodic));
            println!("equicontinuous: {}", yes_no(report.equicontinuous));
            println!("distal: {}", yes_no(report.distal));
            println!("limit-power-homeomorphism: {}", yes_no(report.fp_homeo_exists));
            println!("uniform-return-bound: {}", yes_no(report.uniform_bound_exists));
            println!("one-sided-equals-two-sided: {}", yes_no(report.en_eq_ez));
            if let Some(w) = report.witnesses {
                println!("aperiodic-point: {}", w.aperiodic_point);
                println!("noninjective-element: {}", w.noninjective_element);
                println!("merged-pair: {} {}", w.merged_pair.0, w.merged_pair.1);
                println!("merged-image: {}", w.merged_image);
                match w.equicont_failure {
                    Some((x, y, n)) => println!("equicontinuity-failure: x={x} y={y} n={n}"),
                    None => println!("equicontinuity-failure: none within bounds"),
                }
            }
        }
        Command::Periods { input, depth } => {
            let expr = input.load()?;
            let spec = period_set(&expr)?;
            println!("expression: {expr}");
            println!("depth: {depth}");
            println!("period-spectrum: {spec}");
            let visible: Vec<String> =
                spec.enumerate(depth).iter().map(u64::to_string).collect();
            println!("visible-periods: {}", visible.join(" "));
            println!("all-periodic: {}", yes_no(expr.is_all_periodic()));
            if let Some(p) = first_aperiodic_point(&expr) {
                println!("first-aperiodic-point: {p}");
            }
            println!("minimal-sets:");
            for s in minimal_sets(&expr) {
                println!("  - {s}");
            }
        }
        Command::Ellis { input, depth, bound } => {
            let expr = input.load()?;
            let table = truncated_semigroup(&expr, depth, bound)?;
            println!("expression: {expr}");
            println!("depth: {depth}");
            println!("bound: {bound}");
            println!("modulus: {}", table.modulus);
            let closure = match table.closure {
                ClosureKind::Complete => "complete",
                ClosureKind::PowerWindowTruncated => "power-window",
            };
            println!("closure: {closure}");
            println!("elements: {}", table.elements.len());
            for (i, e) in table.elements.iter().enumerate() {
                println!("  [{i}] {} continuous={}", e.label, yes_no(e.continuous));
            }
            if table.elements.len() <= 24 {
                println!("table:");
                print!("{}", render_table(&table));
            } else {
                println!(
                    "table: omitted ({} elements; shown only for 24 or fewer)",
                    table.elements.len()
                );
            }
        }
        Command::Compose { input, outer, inner } => {
            let expr = input.load()?;
            let g = parse_element(&outer)?;
            let h = parse_element(&inner)?;
            let composed = compose(&expr, &g, &h)?;
            println!("expression: {expr}");
            println!("outer: {g}");
            println!("inner: {h}");
            println!("composition: {composed}");
        }
        Command::Inverse { input, element } => {
            let expr = input.load()?;
            let e = parse_element(&element)?;
            let inv = inverse(&expr, &e)?;
            println!("expression: {expr}");
            println!("element: {e}");
            println!("inverse: {inv}");
        }
        Command::Evaluate { input, element, point } => {
            let expr = input.load()?;
            let el = parse_element(&element)?;
            let pt = parse_point(&expr, &point)?;
            let image = evaluate(&expr, &el, &pt)?;
            println!("expression: {expr}");
            println!("element: {el}");
            println!("point: {pt}");
            println!("image: {image}");
        }
        Command::Realizable { constraints } => {
            let system = parse_residue_list(&constraints)?;
            let report = system.realizable()?;
            println!("constraints: {system}");
            println!("realizable: {}", yes_no(report.realizable));
            println!("exact: {}", yes_no(report.exact));
            match report.witness {
                Some(w) => println!("witness: {w}"),
                None => println!("witness: none"),
            }
            println!("detail: {}", report.detail);
        }
        Command::EnEqEz { input } => {
            let expr = input.load()?;
            println!("expression: {expr}");
            match en_equals_ez(&expr)? {
                EnEzOutcome::Equal { witness } => {
                    println!("equal: yes");
                    println!("inverse-witness: {witness}");
                }
                EnEzOutcome::NotEqual { witness_point } => {
                    println!("equal: no");
                    println!("witness-point: {witness_point}");
                }
            }
        }
        Command::Equicont { input, eps } => {
            let expr = input.load()?;
            let bound = uniform_period_bound(&expr, &eps)?;
            let delta = equicontinuity_modulus(&expr, &eps)?;
            println!("expression: {expr}");
            println!("eps: {eps}");
            println!("uniform-return-bound: {bound}");
            println!("modulus-delta: {delta}");
        }
        Command::Witness { input, eps, depth, iter_bound } => {
            let expr = input.load()?;
            let found = equicontinuity_failure_witness(&expr, eps, depth, iter_bound)?;
            println!("expression: {expr}");
            println!("eps: {eps}");
            println!("depth: {depth}");
            println!("iter-bound: {iter_bound}");
            match found {
                Some((x, y, n)) => println!("witness: x={x} y={y} n={n}"),
                None => println!("witness: none"),
            }
        }
        Command::Oracle(oracle) => run_oracle(oracle)?,
        Command::Disk(disk) => run_disk(disk)?,
    }
    Ok(())
}

fn run_oracle(command: OracleCommand) -> Result<(), Box<dyn Error>> {
    match command {
        OracleCommand::Piter { input, element, point, bound } => {
            let expr = input.load()?;
            let el = parse_element(&element)?;
            let pt = parse_point(&expr, &point)?;
            let spec = match &el {
                EllisElement::Principal(m) => CongruenceClassSpec::Principal(*m),
                EllisElement::Limit { side, residues } => CongruenceClassSpec::Class {
                    residues: residues.explicit.iter().map(|(&n, &r)| (n, r)).collect(),
                    forward: *side == Side::Forward,
                },
            };
            let outcome = p_iterate_limit(&expr, &pt, &spec, bound)?;
            println!("expression: {expr}");
            println!("element: {el}");
            println!("point: {pt}");
            println!("bound: {bound}");
            match outcome {
                PIterateOutcome::Exact(v) => {
                    println!("outcome: exact");
                    println!("value: {v}");
                }
                PIterateOutcome::Stabilized { value, samples } => {
                    println!("outcome: stabilized");
                    println!("value: {value}");
                    println!("samples: {samples}");
                }
                PIterateOutcome::Converged { limit } => {
                    println!("outcome: converged");
                    println!("value: {limit}");
                }
                PIterateOutcome::Undetermined { reason } => {
                    println!("outcome: undetermined");
                    println!("reason: {reason}");
                }
            }
        }
        OracleCommand::Closure { input, depth, bound, group } => {
            let expr = input.load()?;
            let report = pointwise_closure(&expr, depth, bound, group)?;
            println!("expression: {expr}");
            println!("depth: {depth}");
            println!("bound: {bound}");
            println!("group: {}", yes_no(group));
            println!("invariant-truncation: {}", yes_no(report.invariant_truncation));
            println!("functions: {}", report.tables.len());
            for t in &report.tables {
                println!("  - {}", t.label);
            }
            if report.undetermined.is_empty() {
                println!("undetermined: none");
            } else {
                println!("undetermined: {}", report.undetermined.len());
                for reason in &report.undetermined {
                    println!("  ! {reason}");
                }
            }
        }
        OracleCommand::Crt { constraints } => {
            let pairs = parse_congruences(&constraints)?;
            let echo: Vec<String> = pairs.iter().map(|(n, r)| format!("{n}:{r}")).collect();
            println!("constraints: {}", echo.join(","));
            match crt_solve(&pairs)? {
                CrtOutcome::Solution { witness, modulus } => {
                    println!("solution: {witness} (mod {modulus})");
                }
                CrtOutcome::Incompatible { a, b } => {
                    println!("incompatible: {}:{} vs {}:{}", a.0, a.1, b.0, b.1);
                }
            }
        }
    }
    Ok(())
}

fn run_disk(command: DiskCommand) -> Result<(), Box<dyn Error>> {
    match command {
        DiskCommand::Nonwap { k } => {
            let witness = nonwap_witness(k)?;
            println!("k: {k}");
            for row in &witness.rows {
                println!(
                    "row: point={} period={} residue={} mod {} image={}",
                    row.point, row.period, row.residue.1, row.residue.0, row.image
                );
            }
            println!("limit-point: {}", witness.limit_point);
            println!("limit-image: {}", witness.limit_image);
        }
    }
    Ok(())
}

/// Parse `modulus:residue` pairs, preserving order and duplicates (the CRT
/// solver itself reports incompatibilities).
fn parse_congruences(s: &str) -> Result<Vec<(u64, u64)>, String> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (n, r) = part
            .split_once(':')
            .ok_or_else(|| format!("expected modulus:residue, got `{part}`"))?;
        let n: u64 = n.trim().parse().map_err(|_| format!("bad modulus `{n}`"))?;
        let r: u64 = r.trim().parse().map_err(|_| format!("bad residue `{r}`"))?;
        out.push((n, r));
    }
    Ok(out)
}

/// Render the composition matrix with row/column element indices; `-` marks a
/// product outside the power window.
fn render_table(table: &SemigroupTable) -> String {
    let n = table.elements.len();
    let width = if n <= 1 { 1 } else { (n - 1).to_string().len() };
    let mut out = String::new();
    let _ = write!(out, "  {:>width$} |", "");
    for j in 0..n {
        let _ = write!(out, " {j:>width$}");
    }
    out.push('\n');
    for (i, row) in table.table.iter().enumerate() {
        let _ = write!(out, "  {i:>width$} |");
        for cell in row {
            match cell {
                Some(k) => {
                    let _ = write!(out, " {k:>width$}");
                }
                None => {
                    let _ = write!(out, " {:>width$}", "-");
                }
            }
        }
        out.push('\n');
    }
    out
}
