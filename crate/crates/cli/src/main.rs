//! `qlattice`: density exporter and verification harness.
//!
//! Exit codes: 0 on success or pass, 1 when an identity fails, 2 on usage
//! errors. Results go to stdout, diagnostics to stderr. `QLATTICE_THREADS`
//! caps the worker pool.

mod verify;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qlattice::algebra::{CommutativeLattice, LatticeAlgebra};
use qlattice::densities::{density_psi, density_psi_classical, window_for};
use qlattice::series::{build_u, build_v};
use qlattice::specialize::specialize_density;
use serde_json::json;

use verify::{run_verify, VerifyArgs};

#[derive(Parser)]
#[command(
    name = "qlattice",
    version,
    about = "Exact integrals of motion of the lattice sine-Gordon model"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the density psi_n.
    Psi(PsiArgs),
    /// Print the series U, V and ln_q U + ln_q V order by order.
    Expand(ExpandArgs),
    /// Run an identity check and print its report.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
pub(crate) enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Form {
    Epingle,
    Normal,
}

#[derive(Args)]
struct PsiArgs {
    #[arg(long)]
    n: i64,
    /// Window size; defaults to the smallest admissible one.
    #[arg(long = "N")]
    big_n: Option<i64>,
    /// Classical density instead of the quantum one.
    #[arg(long)]
    classical: bool,
    /// Specialize at a primitive l-th root of unity.
    #[arg(long)]
    l: Option<u64>,
    #[arg(long, value_enum, default_value = "epingle")]
    form: Form,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct ExpandArgs {
    #[arg(long = "N")]
    big_n: i64,
    /// Truncation order in 1/lambda; defaults to 2N - 2.
    #[arg(long)]
    order: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

/// Outcome of a command: what to print and how to exit.
pub(crate) enum Outcome {
    Done(String),
    Failed(String),
    Usage(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    let outcome = match cli.command {
        Command::Psi(a) => cmd_psi(&a),
        Command::Expand(a) => cmd_expand(&a),
        Command::Verify(a) => run_verify(&a),
    };
    let (text, code) = match outcome {
        Outcome::Done(s) => (s, 0),
        Outcome::Failed(s) => (s, 1),
        Outcome::Usage(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let mut out = std::io::stdout().lock();
    if out
        .write_all(text.as_bytes())
        .and_then(|()| out.flush())
        .is_err()
    {
        return ExitCode::from(1);
    }
    ExitCode::from(code)
}

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("QLATTICE_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("QLATTICE_THREADS must be a positive integer, got {v:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn validate_window(n: i64, big_n: i64) -> Result<(), String> {
    if n < 1 {
        return Err(format!("--n must be at least 1, got {n}"));
    }
    if big_n < 2 {
        return Err(format!("--N must be at least 2, got {big_n}"));
    }
    if n > 2 * (big_n - 1) {
        return Err(format!(
            "--n {n} exceeds 2(N - 1) = {} for --N {big_n}",
            2 * (big_n - 1)
        ));
    }
    Ok(())
}

fn json_line(v: &serde_json::Value) -> String {
    format!(
        "{}\n",
        serde_json::to_string_pretty(v).expect("JSON serializes")
    )
}

fn cmd_psi(a: &PsiArgs) -> Outcome {
    let big_n = a.big_n.unwrap_or_else(|| window_for(a.n.max(1)));
    if let Err(msg) = validate_window(a.n, big_n) {
        return Outcome::Usage(msg);
    }
    match (a.classical, a.l) {
        (true, Some(_)) => return Outcome::Usage("--classical and --l are exclusive".into()),
        (_, Some(l)) if l < 2 => return Outcome::Usage(format!("--l must be at least 2, got {l}")),
        (_, Some(_)) if a.form == Form::Normal => {
            return Outcome::Usage("--l is only available with --form epingle".into())
        }
        _ => {}
    }
    let result = if a.classical {
        density_psi_classical(a.n, big_n).map(|d| match a.form {
            Form::Epingle => render_density(&d.to_json(), &d.to_text(), a.format),
            Form::Normal => {
                let e = d.to_classical_element(&CommutativeLattice);
                render_element(
                    a.n,
                    big_n,
                    "classical",
                    &e.to_json(),
                    &e.to_string(),
                    a.format,
                )
            }
        })
    } else {
        density_psi(a.n, big_n).and_then(|d| match (a.l, a.form) {
            (Some(l), _) => specialize_density(&d, l)
                .map(|s| render_density(&s.to_json(), &s.to_text(), a.format)),
            (None, Form::Epingle) => Ok(render_density(&d.to_json(), &d.to_text(), a.format)),
            (None, Form::Normal) => {
                let e = d.to_element(&LatticeAlgebra);
                Ok(render_element(
                    a.n,
                    big_n,
                    "quantum",
                    &e.to_json(),
                    &e.to_string(),
                    a.format,
                ))
            }
        })
    };
    match result {
        Ok(s) => Outcome::Done(s),
        Err(e) => Outcome::Usage(e.to_string()),
    }
}

fn render_density(json: &serde_json::Value, text: &str, format: Format) -> String {
    match format {
        Format::Json => json_line(json),
        Format::Text => text.to_string(),
    }
}

fn render_element(
    n: i64,
    big_n: i64,
    kind: &str,
    json: &serde_json::Value,
    text: &str,
    format: Format,
) -> String {
    match format {
        Format::Json => json_line(
            &json!({ "n": n, "N": big_n, "type": kind, "form": "normal", "element": json }),
        ),
        Format::Text => format!("{text}\n"),
    }
}

fn cmd_expand(a: &ExpandArgs) -> Outcome {
    if a.big_n < 2 {
        return Outcome::Usage(format!("--N must be at least 2, got {}", a.big_n));
    }
    let range = (2 * a.big_n - 2) as usize;
    let order = a.order.unwrap_or(range);
    if order > range {
        eprintln!(
            "warning: order {order} exceeds 2N - 2 = {range}; higher coefficients are outside the identity's range"
        );
    }
    let table = LatticeAlgebra;
    let series = build_u(&table, a.big_n, order).and_then(|u| {
        let v = build_v(&table, a.big_n, order)?;
        let log_sum = u.ln_q()?.try_add(&v.ln_q()?)?;
        Ok((u, v, log_sum))
    });
    let (u, v, log_sum) = match series {
        Ok(s) => s,
        Err(e) => return Outcome::Usage(e.to_string()),
    };
    let text = match a.format {
        Format::Json => json_line(&json!({
            "N": a.big_n,
            "order": order,
            "U": u.to_json(),
            "V": v.to_json(),
            "ln_q U + ln_q V": log_sum.to_json(),
        })),
        Format::Text => {
            let mut s = String::new();
            for (name, ser) in [("U", &u), ("V", &v), ("ln_q U + ln_q V", &log_sum)] {
                s.push_str(&format!("{name}:\n"));
                for k in 0..=order {
                    s.push_str(&format!("  lambda^-{k}: {}\n", ser.coeff(k)));
                }
            }
            s
        }
    };
    Outcome::Done(text)
}
