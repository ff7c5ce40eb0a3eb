//! `verify` subcommand: target dispatch, parameter validation and report
//! rendering.

use clap::{Args, ValueEnum};
use qlattice::properties::verify_properties;
use qlattice::qcoeff::{verify_binomials, verify_lemma11};
use qlattice::screening::verify_screening;
use qlattice::series::{
    verify_generating_identity, verify_lemma52, verify_lemma53, verify_ln_naturality,
};
use qlattice::specialize::{
    verify_centrality, verify_lemma54, verify_root_lemmas, verify_thm41, PhiConvention,
};
use qlattice::VerificationReport;
use serde_json::{json, Value};

use crate::{json_line, Format, Outcome};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub(crate) enum Target {
    Screening,
    Genfun,
    GenfunClassical,
    Lemma11,
    Lemma54,
    Root,
    Binomials,
    Series,
    RootLemmas,
    Properties,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
pub(crate) enum PhiArg {
    EmptyPrefix,
    AlwaysDecrementFirst,
}

#[derive(Args)]
pub(crate) struct VerifyArgs {
    #[arg(long, value_enum)]
    target: Target,
    /// Largest n (screening, binomials) or largest chain rank m (series).
    #[arg(long)]
    n_max: Option<i64>,
    /// Density index n = l n' for the root target.
    #[arg(long)]
    n: Option<i64>,
    #[arg(long = "N")]
    big_n: Option<i64>,
    #[arg(long)]
    l: Option<u64>,
    #[arg(long)]
    sum_max: Option<i64>,
    /// Longest composition for lemma11.
    #[arg(long)]
    max_len: Option<usize>,
    /// Largest exponent for root-lemmas.
    #[arg(long)]
    a_max: Option<i64>,
    /// Truncation order for the series target.
    #[arg(long)]
    order: Option<usize>,
    #[arg(long, default_value_t = 20_241_015)]
    seed: u64,
    /// Randomized cases per property suite.
    #[arg(long, default_value_t = 100)]
    cases: usize,
    #[arg(long, value_enum, default_value = "empty-prefix")]
    phi_convention: PhiArg,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Keep wall-clock timings in the output.
    #[arg(long)]
    timing: bool,
}

type Job = Box<dyn FnOnce() -> Vec<VerificationReport>>;

fn at_least<T: PartialOrd + std::fmt::Display>(name: &str, v: T, min: T) -> Result<T, String> {
    if v < min {
        return Err(format!("--{name} must be at least {min}, got {v}"));
    }
    Ok(v)
}

fn jobs_for(target: Target, a: &VerifyArgs) -> Result<Vec<Job>, String> {
    let mut jobs: Vec<Job> = Vec::new();
    match target {
        Target::Screening => {
            let n_max = at_least("n-max", a.n_max.unwrap_or(6), 1)?;
            jobs.push(Box::new(move || vec![verify_screening(n_max)]));
        }
        Target::Genfun | Target::GenfunClassical => {
            let quantum = target == Target::Genfun;
            let big_n = at_least("N", a.big_n.unwrap_or(if quantum { 3 } else { 4 }), 2)?;
            jobs.push(Box::new(move || {
                vec![verify_generating_identity(big_n, quantum)]
            }));
        }
        Target::Lemma11 => {
            let sum_max = at_least("sum-max", a.sum_max.unwrap_or(10), 1)?;
            let max_len = at_least("max-len", a.max_len.unwrap_or(6), 1)?;
            jobs.push(Box::new(move || vec![verify_lemma11(sum_max, max_len)]));
        }
        Target::Lemma54 => {
            let big_n = at_least("N", a.big_n.unwrap_or(1), 1)? as usize;
            let sum_max = at_least("sum-max", a.sum_max.unwrap_or(8), 1)?;
            let convention = match a.phi_convention {
                PhiArg::EmptyPrefix => PhiConvention::EmptyPrefix,
                PhiArg::AlwaysDecrementFirst => PhiConvention::AlwaysDecrementFirst,
            };
            jobs.push(Box::new(move || {
                vec![verify_lemma54(big_n, sum_max, convention)]
            }));
        }
        Target::Root => {
            let l = at_least("l", a.l.unwrap_or(2), 2)?;
            let n = at_least("n", a.n.unwrap_or(l as i64), 1)?;
            if n % l as i64 != 0 {
                return Err(format!("--n {n} must be a multiple of --l {l}"));
            }
            let n_prime = n / l as i64;
            jobs.push(Box::new(move || {
                vec![verify_thm41(l, n_prime), verify_centrality(l)]
            }));
        }
        Target::Binomials => {
            let n_max = at_least("n-max", a.n_max.unwrap_or(12), 0)?;
            jobs.push(Box::new(move || vec![verify_binomials(n_max)]));
        }
        Target::Series => {
            let m_max = at_least("n-max", a.n_max.unwrap_or(4), 1)?;
            let order = a.order.unwrap_or(6);
            let big_n = at_least("N", a.big_n.unwrap_or(3), 2)?;
            let nat_order = order.min(4);
            jobs.push(Box::new(move || {
                vec![
                    verify_lemma52(m_max, order),
                    verify_lemma53(m_max as usize, order),
                    verify_ln_naturality(big_n, nat_order),
                ]
            }));
        }
        Target::RootLemmas => {
            let a_max = at_least("a-max", a.a_max.unwrap_or(20), 1)?;
            let ls = match a.l {
                Some(l) => vec![at_least("l", l, 2)?],
                None => vec![2, 3, 5],
            };
            jobs.push(Box::new(move || {
                ls.into_iter()
                    .map(|l| verify_root_lemmas(l, a_max))
                    .collect()
            }));
        }
        Target::Properties => {
            let (seed, cases) = (a.seed, at_least("cases", a.cases, 1)?);
            jobs.push(Box::new(move || verify_properties(seed, cases)));
        }
        Target::All => {
            for t in [
                Target::Binomials,
                Target::Lemma11,
                Target::Screening,
                Target::Genfun,
                Target::GenfunClassical,
                Target::Lemma54,
                Target::Series,
                Target::Root,
                Target::RootLemmas,
                Target::Properties,
            ] {
                jobs.extend(jobs_for(t, &VerifyArgs::defaults_for_all(a))?);
            }
            for (l, n_prime) in [(2u64, 2i64), (3, 1)] {
                jobs.push(Box::new(move || vec![verify_thm41(l, n_prime)]));
            }
        }
    }
    Ok(jobs)
}

impl VerifyArgs {
    /// `all` runs each target at its defaults, sharing only seed and cases.
    fn defaults_for_all(a: &VerifyArgs) -> VerifyArgs {
        VerifyArgs {
            target: Target::All,
            n_max: None,
            n: None,
            big_n: None,
            l: None,
            sum_max: None,
            max_len: None,
            a_max: None,
            order: None,
            seed: a.seed,
            cases: a.cases,
            phi_convention: PhiArg::EmptyPrefix,
            format: a.format,
            timing: a.timing,
        }
    }
}

pub(crate) fn run_verify(a: &VerifyArgs) -> Outcome {
    let jobs = match jobs_for(a.target, a) {
        Ok(j) => j,
        Err(msg) => return Outcome::Usage(msg),
    };
    // Targets run one after another; each verifier parallelizes internally.
    let reports: Vec<VerificationReport> = jobs
        .into_iter()
        .flat_map(|job| job())
        .map(|r| if a.timing { r } else { r.without_timing() })
        .collect();
    let pass = reports.iter().all(|r| r.pass);
    let text = match a.format {
        Format::Json => {
            let body: Value = if reports.len() == 1 {
                reports[0].to_json()
            } else {
                json!({ "pass": pass, "reports": reports.iter().map(VerificationReport::to_json).collect::<Vec<_>>() })
            };
            json_line(&body)
        }
        Format::Text => render_table(&reports, pass),
    };
    if pass {
        Outcome::Done(text)
    } else {
        Outcome::Failed(text)
    }
}

fn render_table(reports: &[VerificationReport], pass: bool) -> String {
    let width = reports
        .iter()
        .map(|r| r.identity.len())
        .max()
        .unwrap_or(8)
        .max(8);
    let mut out = format!(
        "{:<6} {:<width$} {:>10}  params\n",
        "status", "identity", "checked"
    );
    for r in reports {
        let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let mut line = format!(
            "{:<6} {:<width$} {:>10}  {}",
            if r.pass { "PASS" } else { "FAIL" },
            r.identity,
            r.checked_count,
            params.join(" ")
        );
        if let Some(ms) = r.elapsed_ms {
            line.push_str(&format!("  ({ms} ms)"));
        }
        out.push_str(&line);
        out.push('\n');
        if let Some(c) = &r.counterexample {
            out.push_str(&format!("       counterexample: {c}\n"));
        }
    }
    out.push_str(if pass {
        "all checks passed\n"
    } else {
        "some checks FAILED\n"
    });
    out
}
