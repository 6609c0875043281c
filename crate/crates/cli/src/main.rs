//! `qrta` — reports of coherence, discord, and geometric entanglement for
//! Grover search steps and the worked HHL instance, plus a verification
//! runner that cross-checks every value against brute-force oracles.

mod report;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qrta_core::grover::{trace_states, GroverConfig};
use qrta_core::hhl;
use qrta_core::measures::{
    coherence_frobenius, discord_with_budget, gm_lambda2_with_budget, split_label, AnsatzMode,
    Bipartition,
};
use qrta_core::state::outer;

use report::{to_csv, to_json, ReportRow};
use verify::{run_suite, Suite};

#[derive(Parser)]
#[command(
    name = "qrta",
    version,
    about = "Quantum resource measures for Grover and HHL algorithm states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Tables,
    Oracles,
    Invariants,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Measures for every oracle/diffuser half-step of Grover search
    Grover {
        /// Number of qubits (1..=10)
        #[arg(long, default_value_t = 3)]
        qubits: usize,
        /// Marked basis state; defaults to the all-ones state
        #[arg(long)]
        target: Option<usize>,
        /// Oracle+diffuser rounds to trace
        #[arg(long, default_value_t = 2)]
        iterations: usize,
        /// Comma-separated subset of coherence,discord,gm
        #[arg(long, default_value = "coherence,discord,gm")]
        measures: String,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Write here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Geometric measure of the three HHL stage states
    Hhl {
        #[arg(long, allow_negative_numbers = true)]
        b0: f64,
        /// Defaults to sqrt(1 - b0^2)
        #[arg(long, allow_negative_numbers = true)]
        b1: Option<f64>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Closed-form vs numeric geometric measure over a b0 grid
    #[command(name = "hhl-sweep")]
    HhlSweep {
        /// Number of b0 samples in [0, 1]
        #[arg(long, default_value_t = 21)]
        steps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run verification checks; exits nonzero on any failure
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
    },
}

fn usage_error(message: &str) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(2)
}

fn eval_budget() -> Option<usize> {
    std::env::var("QRTA_EVAL_BUDGET")
        .ok()
        .and_then(|raw| raw.parse().ok())
}

fn emit(text: &str, out: Option<&PathBuf>) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Measure {
    Coherence,
    Discord,
    Gm,
}

fn parse_measures(raw: &str) -> Result<Vec<Measure>, String> {
    let mut parsed = Vec::new();
    for part in raw.split(',') {
        let measure = match part.trim() {
            "coherence" => Measure::Coherence,
            "discord" => Measure::Discord,
            "gm" => Measure::Gm,
            other => return Err(format!("unknown measure '{other}'")),
        };
        if !parsed.contains(&measure) {
            parsed.push(measure);
        }
    }
    if parsed.is_empty() {
        return Err("no measures requested".into());
    }
    Ok(parsed)
}

/// Reference expressions and two-decimal display values for the standard
/// three-qubit instance (qubits=3, target=7, iterations=2).
struct Reference {
    exact_expr: [&'static str; 4],
    display: [f64; 4],
}

fn reference_for(measure: Measure) -> Reference {
    match measure {
        Measure::Coherence => Reference {
            exact_expr: ["sqrt(14)/4", "7*sqrt(2)/16", "7*sqrt(2)/16", "sqrt(434)/64"],
            display: verify::COHERENCE_TABLE_DISPLAY,
        },
        Measure::Discord => Reference {
            exact_expr: [
                "h2(1/4)",
                "h2((4+sqrt(13))/8)",
                "h2((8+sqrt(37))/16)",
                "h2((16+sqrt(229))/32)",
            ],
            display: verify::DISCORD_TABLE_DISPLAY,
        },
        Measure::Gm => Reference {
            exact_expr: ["", "", "", ""],
            display: verify::GM_TABLE_DISPLAY,
        },
    }
}

fn cmd_grover(
    qubits: usize,
    target: Option<usize>,
    iterations: usize,
    measures: &str,
    format: Format,
    out: Option<PathBuf>,
) -> ExitCode {
    if !(1..=10).contains(&qubits) {
        return usage_error("--qubits must be between 1 and 10");
    }
    if iterations == 0 {
        return usage_error("--iterations must be at least 1");
    }
    let target = target.unwrap_or((1 << qubits) - 1);
    let config = match GroverConfig::new(qubits, target, iterations) {
        Ok(config) => config,
        Err(e) => return usage_error(&e.to_string()),
    };
    let measures = match parse_measures(measures) {
        Ok(m) => m,
        Err(e) => return usage_error(&e),
    };
    if qubits == 1 && measures.contains(&Measure::Discord) {
        return usage_error("discord needs at least two qubits to form a split");
    }

    let budget = eval_budget();
    let reference_config = qubits == 3 && target == 7 && iterations == 2;
    let trace = match trace_states(&config) {
        Ok(trace) => trace,
        Err(e) => return usage_error(&e.to_string()),
    };

    let split = if qubits >= 2 {
        Some(Bipartition::new(qubits, &[0]).expect("valid split"))
    } else {
        None
    };

    let mut rows = Vec::new();
    for (index, (label, psi)) in trace.states.iter().enumerate().skip(1) {
        let rho = outer(psi);
        for &measure in &measures {
            let (name, split_text, value) = match measure {
                Measure::Coherence => ("coherence", String::new(), coherence_frobenius(&rho)),
                Measure::Discord => {
                    let split = split.as_ref().expect("checked above");
                    let value = match discord_with_budget(&rho, split, budget) {
                        Ok(v) => v,
                        Err(e) => return usage_error(&e.to_string()),
                    };
                    ("discord", split_label(split), value)
                }
                Measure::Gm => {
                    let result = match gm_lambda2_with_budget(&rho, AnsatzMode::General, budget) {
                        Ok(r) => r,
                        Err(e) => return usage_error(&e.to_string()),
                    };
                    ("gm", String::new(), result.gm)
                }
            };
            let (exact_expr, paper_value) = if reference_config && (1..=4).contains(&index) {
                let reference = reference_for(measure);
                let expr = reference.exact_expr[index - 1];
                (
                    (!expr.is_empty()).then(|| expr.to_string()),
                    Some(reference.display[index - 1]),
                )
            } else {
                (None, None)
            };
            rows.push(ReportRow {
                state_label: label.clone(),
                measure: name.to_string(),
                split: split_text,
                value,
                exact_expr,
                paper_value,
            });
        }
    }

    let text = match format {
        Format::Csv => to_csv(&rows),
        Format::Json => to_json(&rows),
    };
    match emit(&text, out.as_ref()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => usage_error(&format!("cannot write output: {e}")),
    }
}

fn cmd_hhl(b0: f64, b1: Option<f64>, format: Format, out: Option<PathBuf>) -> ExitCode {
    let b1 = match b1 {
        Some(b1) => b1,
        None => {
            if b0.abs() > 1.0 + 1e-9 {
                return usage_error("--b0 must lie in [-1, 1] when --b1 is omitted");
            }
            (1.0 - b0 * b0).max(0.0).sqrt()
        }
    };
    let norm_sqr = b0 * b0 + b1 * b1;
    if !norm_sqr.is_finite() || (norm_sqr - 1.0).abs() > 1e-9 {
        return usage_error(&format!(
            "(b0, b1) must be normalized: b0^2 + b1^2 = {norm_sqr}"
        ));
    }
    // Inputs within 1e-9 of unit norm are renormalized exactly.
    let scale = norm_sqr.sqrt();
    let input = match hhl::HHLInput::new(b0 / scale, b1 / scale) {
        Ok(input) => input,
        Err(e) => return usage_error(&e.to_string()),
    };

    let budget = eval_budget();
    let gm_general = |rho: &qrta_core::DensityMatrix| {
        gm_lambda2_with_budget(rho, AnsatzMode::General, budget).map(|r| r.gm)
    };

    let mut rows = Vec::new();
    {
        let rho = match hhl::stage1_state(&input).map(|psi| outer(&psi)) {
            Ok(rho) => rho,
            Err(e) => return usage_error(&e.to_string()),
        };
        let numeric = match gm_general(&rho) {
            Ok(v) => v,
            Err(e) => return usage_error(&e.to_string()),
        };
        rows.push(ReportRow {
            state_label: "rho1".into(),
            measure: "gm".into(),
            split: String::new(),
            value: numeric,
            exact_expr: Some("-log2(max((b0-b1)^2/2,(b0+b1)^2/2))".into()),
            paper_value: Some(hhl::stage1_gm_closed_form(&input)),
        });
    }
    {
        let params = match hhl::stage2_params(&input) {
            Ok(p) => p,
            Err(e) => return usage_error(&e.to_string()),
        };
        let rho = match hhl::stage2_state(&params) {
            Ok(rho) => rho,
            Err(e) => return usage_error(&e.to_string()),
        };
        let numeric = match gm_general(&rho) {
            Ok(v) => v,
            Err(e) => return usage_error(&e.to_string()),
        };
        let bound = hhl::stage2_gm_single_angle_bound(&params);
        rows.push(ReportRow {
            state_label: "rho2".into(),
            measure: "gm".into(),
            split: String::new(),
            value: numeric,
            exact_expr: Some("-log2(max_alpha f(alpha))".into()),
            paper_value: Some(-bound.lambda2.log2()),
        });
    }
    {
        let params = match hhl::stage3_params(&input) {
            Ok(p) => p,
            Err(e) => return usage_error(&e.to_string()),
        };
        let rho = match hhl::stage3_state(&params) {
            Ok(rho) => rho,
            Err(e) => return usage_error(&e.to_string()),
        };
        let numeric = match gm_general(&rho) {
            Ok(v) => v,
            Err(e) => return usage_error(&e.to_string()),
        };
        rows.push(ReportRow {
            state_label: "rho3".into(),
            measure: "gm".into(),
            split: String::new(),
            value: numeric,
            exact_expr: Some("-log2(max(q,1-q))".into()),
            paper_value: Some(hhl::stage3_gm_closed_form(&params)),
        });
    }

    let text = match format {
        Format::Csv => to_csv(&rows),
        Format::Json => to_json(&rows),
    };
    match emit(&text, out.as_ref()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => usage_error(&format!("cannot write output: {e}")),
    }
}

fn cmd_hhl_sweep(steps: usize, out: Option<PathBuf>) -> ExitCode {
    if steps < 2 {
        return usage_error("--steps must be at least 2");
    }
    let budget = eval_budget();
    let mut text = String::from("b0,stage,gm_lemma,gm_numeric\n");
    for k in 0..steps {
        let b0 = k as f64 / (steps - 1) as f64;
        let b1 = (1.0 - b0 * b0).max(0.0).sqrt();
        let input = hhl::HHLInput::new(b0, b1).expect("grid point is normalized");

        let rho1 = outer(&hhl::stage1_state(&input).expect("valid input"));
        let closed1 = hhl::stage1_gm_closed_form(&input);
        let numeric1 = match gm_lambda2_with_budget(&rho1, AnsatzMode::General, budget) {
            Ok(r) => r.gm,
            Err(e) => return usage_error(&e.to_string()),
        };

        let params2 = hhl::stage2_params(&input).expect("valid input");
        let ghz = hhl::stage2_ghz_form(&params2).expect("valid params");
        let closed2 = -hhl::stage2_gm_single_angle_bound(&params2).lambda2.log2();
        let numeric2 = match gm_lambda2_with_budget(&ghz, AnsatzMode::Symmetric, budget) {
            Ok(r) => r.gm,
            Err(e) => return usage_error(&e.to_string()),
        };

        let params3 = hhl::stage3_params(&input).expect("valid input");
        let rho3 = hhl::stage3_state(&params3).expect("valid params");
        let closed3 = hhl::stage3_gm_closed_form(&params3);
        let numeric3 = match gm_lambda2_with_budget(&rho3, AnsatzMode::General, budget) {
            Ok(r) => r.gm,
            Err(e) => return usage_error(&e.to_string()),
        };

        for (stage, closed, numeric) in [
            (1, closed1, numeric1),
            (2, closed2, numeric2),
            (3, closed3, numeric3),
        ] {
            text.push_str(&format!(
                "{},{stage},{},{}\n",
                report::fmt_sig12(b0),
                report::fmt_sig12(closed),
                report::fmt_sig12(numeric),
            ));
        }
    }
    match emit(&text, out.as_ref()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => usage_error(&format!("cannot write output: {e}")),
    }
}

fn cmd_verify(suite: SuiteArg) -> ExitCode {
    let suite = match suite {
        SuiteArg::Tables => Suite::Tables,
        SuiteArg::Oracles => Suite::Oracles,
        SuiteArg::Invariants => Suite::Invariants,
        SuiteArg::All => Suite::All,
    };
    let checks = run_suite(suite);
    let mut failures = 0usize;
    for check in &checks {
        println!("{}", check.line());
        if !check.pass {
            failures += 1;
        }
    }
    println!("{} checks, {} failed", checks.len(), failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Grover {
            qubits,
            target,
            iterations,
            measures,
            format,
            out,
        } => cmd_grover(qubits, target, iterations, &measures, format, out),
        Command::Hhl {
            b0,
            b1,
            format,
            out,
        } => cmd_hhl(b0, b1, format, out),
        Command::HhlSweep { steps, out } => cmd_hhl_sweep(steps, out),
        Command::Verify { suite } => cmd_verify(suite),
    }
}
