use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use padic_orbital::characters::AdditiveCharacter;
use padic_orbital::exp_sums::{gamma_factor, gauss_sum, kloosterman};
use padic_orbital::grid::{certification_grid, quick_grid, run, EvalOptions, EvalReport, GridPoint, Literal, ThetaRep};
use padic_orbital::transform::Structure;
use padic_orbital::{ComplexValue, Regime, C64};
use padic_orbital_cli::{parse_character, report_record, to_csv, to_json, REPORT_HEADER, TABLE_HEADER};
use serde::Serialize;

/// Fourier transforms of regular semisimple orbital integrals on sl2(Q_p).
#[derive(Parser, Debug)]
#[command(name = "orbital", version)]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Config {
    /// Odd prime p.
    #[arg(long, global = true, default_value_t = 3)]
    p: u32,
    /// p-adic working precision N (digits).
    #[arg(long, global = true, default_value_t = padic_orbital::local_field::DEFAULT_PRECISION)]
    precision: u32,
    /// Agreement tolerance between oracle and closed form.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol: f64,
    /// Depth of the additive character.
    #[arg(long, global = true, default_value_t = -1, allow_hyphen_values = true)]
    phi_depth: i32,
    /// Non-residue to use in place of the smallest one.
    #[arg(long, global = true)]
    epsilon: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closed form at one (X*, Y).
    Eval {
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        beta: String,
        #[arg(long, default_value = "1")]
        theta: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        s: String,
        #[arg(long, default_value = "1")]
        thetap: String,
    },
    /// Oracle against closed form over a grid; exit 1 on any disagreement.
    Verify {
        /// The thinner grid (unit part of s fixed, |2Σ| ≤ 2).
        #[arg(long)]
        quick: bool,
        /// Keep only points in this regime (also `far`, `bad-shell`).
        #[arg(long)]
        regime: Option<String>,
        /// Flip the sign of every Gauss sum in the closed forms.
        #[arg(long)]
        perturb: bool,
    },
    /// Sweep ord(s) for a fixed X*.
    Table {
        #[arg(long, default_value = "p^-1", allow_hyphen_values = true)]
        beta: String,
        #[arg(long, default_value = "1")]
        theta: String,
        /// Unit part of s.
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        s_unit: i64,
        #[arg(long, default_value_t = -3, allow_hyphen_values = true)]
        s_min: i32,
        #[arg(long, default_value_t = 3, allow_hyphen_values = true)]
        s_max: i32,
        /// Restrict θ' to one class; all seven representatives otherwise.
        #[arg(long)]
        thetap: Option<String>,
    },
    /// Gauss, Kloosterman and Γ values.
    Sums {
        #[arg(value_enum)]
        which: SumKind,
        /// Kloosterman parameter ξ, a unit mod p.
        #[arg(long, default_value_t = 1)]
        xi: u32,
        /// ν^α·sgn_τ, e.g. nu-half-sgn-pi; trivial by default.
        #[arg(long, default_value = "trivial")]
        chi: String,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum SumKind {
    Gauss,
    Kloosterman,
    Gamma,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("orbital: {msg}");
            ExitCode::from(2)
        }
    }
}

type CliResult<T> = Result<T, String>;

fn dispatch(cli: &Cli) -> CliResult<bool> {
    let cfg = &cli.config;
    let opts = options(cfg)?;
    match &cli.command {
        Command::Eval { beta, theta, s, thetap } => eval(cfg, &opts, beta, theta, s, thetap),
        Command::Verify { quick, regime, perturb } => verify(
            cfg,
            &EvalOptions {
                perturb: *perturb,
                ..opts
            },
            *quick,
            regime.as_deref(),
        ),
        Command::Table {
            beta,
            theta,
            s_unit,
            s_min,
            s_max,
            thetap,
        } => table(cfg, &opts, beta, theta, *s_unit, *s_min..=*s_max, thetap.as_deref()),
        Command::Sums { which, xi, chi } => sums(cfg, &opts, *which, *xi, chi),
    }
}

fn options(cfg: &Config) -> CliResult<EvalOptions> {
    if cfg.precision < 8 {
        return Err(format!("precision must be at least 8, got {}", cfg.precision));
    }
    if !(cfg.tol > 0.0 && cfg.tol <= 1e-3) {
        return Err(format!("tolerance must lie in (0, 1e-3], got {}", cfg.tol));
    }
    let opts = EvalOptions {
        precision: cfg.precision,
        tol: cfg.tol,
        epsilon: cfg.epsilon,
        perturb: false,
        with_oracle: true,
    };
    // Validates p, N and ε together.
    let probe = GridPoint {
        p: cfg.p,
        phi_depth: cfg.phi_depth,
        beta: Literal::new(1, 0),
        theta: ThetaRep::One,
        s: Literal::new(1, 0),
        thetap: ThetaRep::One,
    };
    probe.field(&opts).map_err(|e| e.to_string())?;
    Ok(opts)
}

fn emit(cfg: &Config, text: &str) -> CliResult<()> {
    match &cfg.out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            use std::io::Write;
            match std::io::stdout().lock().write_all(text.as_bytes()) {
                // A closed pipe (`orbital ... | head`) is not an error.
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.to_string()),
                _ => Ok(()),
            }
        }
    }
}

fn fmt_c(z: ComplexValue) -> String {
    // + 0.0 turns −0 into 0.
    format!("{:.12}{:+.12}i", z.re + 0.0, z.im + 0.0)
}

fn eval(cfg: &Config, opts: &EvalOptions, beta: &str, theta: &str, s: &str, thetap: &str) -> CliResult<bool> {
    let parse_err = |e: padic_orbital::Error| e.to_string();
    let point = GridPoint {
        p: cfg.p,
        phi_depth: cfg.phi_depth,
        beta: beta.parse().map_err(parse_err)?,
        theta: theta.parse().map_err(parse_err)?,
        s: s.parse().map_err(parse_err)?,
        thetap: thetap.parse().map_err(parse_err)?,
    };
    let report = point
        .evaluate(&EvalOptions {
            with_oracle: false,
            ..*opts
        })
        .map_err(|e| e.to_string())?;
    let text = match cfg.format {
        Format::Json => to_json(&report).map_err(|e| e.to_string())?,
        Format::Csv => to_csv(&REPORT_HEADER, &[report_record(&report)]).map_err(|e| e.to_string())?,
        Format::Text => {
            let mut t = format!(
                "regime  {}\nsigma2  {}\ngamma   {}\n",
                report.regime,
                report.sigma2,
                fmt_c(report.gamma)
            );
            if let Structure::Germ { c0, .. } = report.structure {
                t += &format!("c0      {c0:.12}\n");
            }
            t += &format!("value   {}\n", fmt_c(report.closed_value));
            t
        }
    };
    emit(cfg, &text)?;
    Ok(true)
}

fn regime_filter(name: &str) -> CliResult<Box<dyn Fn(Regime) -> bool>> {
    Ok(match name {
        "far" => Box::new(Regime::is_far),
        "bad-shell" => Box::new(Regime::is_bad_shell),
        _ => {
            let r: Regime = name.parse().map_err(|e: padic_orbital::Error| e.to_string())?;
            Box::new(move |x| x == r)
        }
    })
}

fn verify(cfg: &Config, opts: &EvalOptions, quick: bool, regime: Option<&str>) -> CliResult<bool> {
    let mut points = if quick {
        quick_grid(cfg.p)
    } else {
        certification_grid(cfg.p)
    }
    .map_err(|e| e.to_string())?;
    for g in &mut points {
        g.phi_depth = cfg.phi_depth;
    }
    if let Some(name) = regime {
        let keep = regime_filter(name)?;
        let mut kept = Vec::with_capacity(points.len());
        for g in points {
            if keep(g.regime().map_err(|e| e.to_string())?) {
                kept.push(g);
            }
        }
        points = kept;
    }
    let results = run(&points, opts);
    let mut reports = Vec::with_capacity(results.len());
    let mut failures = Vec::new();
    for (g, r) in points.iter().zip(results) {
        match r {
            Ok(rep) => {
                if !rep.pass {
                    failures.push(format!(
                        "{} {} {} {}: regime {}, closed {}, oracle {}, error {:.3e}",
                        g.beta,
                        g.theta,
                        g.s,
                        g.thetap,
                        rep.regime,
                        fmt_c(rep.closed_value),
                        rep.oracle_value.map(fmt_c).unwrap_or_default(),
                        rep.abs_error.unwrap_or(f64::NAN)
                    ));
                }
                reports.push(rep);
            }
            Err(e) => failures.push(format!("{} {} {} {}: {e}", g.beta, g.theta, g.s, g.thetap)),
        }
    }
    let worst = reports.iter().filter_map(|r| r.abs_error).fold(0.0, f64::max);
    let text = match cfg.format {
        Format::Json => to_json(&reports).map_err(|e| e.to_string())?,
        Format::Csv => {
            let rows: Vec<_> = reports.iter().map(report_record).collect();
            to_csv(&REPORT_HEADER, &rows).map_err(|e| e.to_string())?
        }
        Format::Text => summary(cfg.p, &reports, failures.len(), worst),
    };
    emit(cfg, &text)?;
    if !failures.is_empty() {
        eprintln!(
            "{} of {} points failed; first {}:",
            failures.len(),
            points.len(),
            failures.len().min(10)
        );
        for f in failures.iter().take(10) {
            eprintln!("  {f}");
        }
    }
    Ok(failures.is_empty())
}

fn summary(p: u32, reports: &[EvalReport], failures: usize, worst: f64) -> String {
    let mut t = format!(
        "p = {p}: {} points, {failures} failures, max |error| {worst:.3e}\n",
        reports.len()
    );
    for r in Regime::ALL {
        let n = reports.iter().filter(|x| x.regime == r).count();
        if n > 0 {
            t += &format!("  {:<16} {n}\n", r.name());
        }
    }
    t
}

#[derive(Serialize)]
struct TableRow {
    ord_s: i32,
    s: Literal,
    thetap: ThetaRep,
    regime: Regime,
    value: ComplexValue,
    /// value / (q^{-(d+1)}|D(Y)|^{-1/2})
    normalized: ComplexValue,
    scale: f64,
}

#[allow(clippy::too_many_arguments)]
fn table(
    cfg: &Config,
    opts: &EvalOptions,
    beta: &str,
    theta: &str,
    s_unit: i64,
    ords: std::ops::RangeInclusive<i32>,
    thetap: Option<&str>,
) -> CliResult<bool> {
    let parse_err = |e: padic_orbital::Error| e.to_string();
    let beta: Literal = beta.parse().map_err(parse_err)?;
    let theta: ThetaRep = theta.parse().map_err(parse_err)?;
    let classes: Vec<ThetaRep> = match thetap {
        Some(t) => vec![t.parse().map_err(parse_err)?],
        None => ThetaRep::NAMED.to_vec(),
    };
    let eval_opts = EvalOptions {
        with_oracle: false,
        ..*opts
    };
    let mut rows = Vec::new();
    for ord_s in ords {
        for &tp in &classes {
            let g = GridPoint {
                p: cfg.p,
                phi_depth: cfg.phi_depth,
                beta,
                theta,
                s: Literal::new(s_unit, ord_s),
                thetap: tp,
            };
            let rep = g.evaluate(&eval_opts).map_err(|e| e.to_string())?;
            let field = g.field(&eval_opts).map_err(|e| e.to_string())?;
            let phi = AdditiveCharacter::with_depth(&field, g.phi_depth);
            let (x, y) = g.elements(&field).map_err(|e| e.to_string())?;
            let scale = field.q().powi(-(x.d(&phi) + 1)) * y.abs_disc_inv_sqrt(&field);
            let value: C64 = rep.closed_value.into();
            rows.push(TableRow {
                ord_s,
                s: g.s,
                thetap: tp,
                regime: rep.regime,
                value: rep.closed_value,
                normalized: (value / scale).into(),
                scale,
            });
        }
    }
    let text = match cfg.format {
        Format::Json => to_json(&rows).map_err(|e| e.to_string())?,
        Format::Csv => {
            let f = padic_orbital_cli::fmt_f64;
            let recs: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.ord_s.to_string(),
                        r.s.to_string(),
                        r.thetap.to_string(),
                        r.regime.to_string(),
                        f(r.value.re),
                        f(r.value.im),
                        f(r.normalized.re),
                        f(r.normalized.im),
                        f(r.scale),
                    ]
                })
                .collect();
            to_csv(&TABLE_HEADER, &recs).map_err(|e| e.to_string())?
        }
        Format::Text => {
            let mut t = format!(
                "{:>5}  {:<8} {:<16} {:<36} {}\n",
                "ord s", "theta'", "regime", "value", "normalized"
            );
            for r in &rows {
                t += &format!(
                    "{:>5}  {:<8} {:<16} {:<36} {}\n",
                    r.ord_s,
                    r.thetap.to_string(),
                    r.regime.name(),
                    fmt_c(r.value),
                    fmt_c(r.normalized)
                );
            }
            t
        }
    };
    emit(cfg, &text)?;
    Ok(true)
}

fn sums(cfg: &Config, opts: &EvalOptions, which: SumKind, xi: u32, chi: &str) -> CliResult<bool> {
    let probe = GridPoint {
        p: cfg.p,
        phi_depth: cfg.phi_depth,
        beta: Literal::new(1, 0),
        theta: ThetaRep::One,
        s: Literal::new(1, 0),
        thetap: ThetaRep::One,
    };
    let field = probe.field(opts).map_err(|e| e.to_string())?;
    let phi = AdditiveCharacter::with_depth(&field, cfg.phi_depth);
    let chi = parse_character(chi)?;
    let value = match which {
        SumKind::Gauss => gauss_sum(&field, &field.varpi(), &phi),
        SumKind::Kloosterman => kloosterman(chi.residue_character(), &phi.residue_character(&field), xi),
        SumKind::Gamma => gamma_factor(&field, &chi, &phi),
    }
    .map_err(|e| e.to_string())?;
    let value = ComplexValue::from(value);
    let text = match cfg.format {
        Format::Json => to_json(&value).map_err(|e| e.to_string())?,
        Format::Csv => to_csv(
            &["re", "im"],
            &[vec![
                padic_orbital_cli::fmt_f64(value.re),
                padic_orbital_cli::fmt_f64(value.im),
            ]],
        )
        .map_err(|e| e.to_string())?,
        Format::Text => format!("{}\n", fmt_c(value)),
    };
    emit(cfg, &text)?;
    Ok(true)
}
