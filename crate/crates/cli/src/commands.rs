//! Subcommand definitions and dispatch.

use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use monconv::asymptotics::{
    bohr_radius_estimate, chi_estimate, fit_exponent, multiplier_check, region_classify,
};
use monconv::budget::{Budget, BUDGET_ENV, DEFAULT_BUDGET};
use monconv::exponent::Exponent;
use monconv::harness::{
    check_even_bound, check_general_bound, check_tetra_bound, hb_membership, hb_membership_family,
    hinf_membership, impossibility_growth, run_batch, run_batch_range, sign_polynomial_search,
    BatchCheck, BatchParams, CheckContext, SequenceFamily,
};
use monconv::multiindex::exponent_bundle;
use monconv::polynomial::{format_f64, OptimizeOptions};
use monconv::report::{
    merge_reports, parse_batch, trend_rows_to_csv, InequalityReport, InequalityStatus, TrendRow,
};
use monconv::seqspace::{
    ell_norm, lorentz_maximal_norm, lorentz_quasinorm, marcinkiewicz_norm, LorentzParams,
    MarcinkiewiczSymbol,
};

use crate::io::{emit, read_points, read_vector};

#[derive(Parser)]
#[command(
    name = "monconv",
    version,
    about = "Sequence-space norms, homogeneous-polynomial sup-norm estimation, and a numerical inequality-verification harness"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    JsonLines,
    Csv,
    Pretty,
}

#[derive(Args)]
pub struct CommonOut {
    /// Output path (atomic write); stdout when omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json-lines")]
    pub format: OutputFormat,
}

fn parse_exponent(s: &str) -> Result<Exponent, String> {
    if s == "inf" || s == "infinity" {
        return Ok(Exponent::Infinity);
    }
    let v: f64 = s.parse().map_err(|e| format!("bad exponent {s:?}: {e}"))?;
    if v < 1.0 {
        return Err(format!("exponent must be at least 1, got {v}"));
    }
    Ok(Exponent::from(v))
}

/// Comma-separated, strictly increasing sizes.
#[derive(Clone)]
pub struct Grid(pub Vec<usize>);

fn parse_grid(s: &str) -> Result<Grid, String> {
    let grid: Result<Vec<usize>, _> = s.split(',').map(|t| t.trim().parse::<usize>()).collect();
    let grid = grid.map_err(|e| format!("bad grid {s:?}: {e}"))?;
    if grid.len() < 2 || !grid.windows(2).all(|w| w[0] < w[1]) {
        return Err("grid must list at least two strictly increasing sizes".into());
    }
    Ok(Grid(grid))
}

#[derive(Subcommand)]
pub enum Command {
    /// Evaluate the implemented norms of a vector.
    Norms {
        /// Vector file: {"entries": […], "ambient_dim": n?}.
        #[arg(long)]
        input: PathBuf,
        /// Minkowski exponent (accepts "inf").
        #[arg(long, default_value = "2", value_parser = parse_exponent)]
        r: Exponent,
        /// Lorentz primary index.
        #[arg(long, default_value = "2", value_parser = parse_exponent)]
        p: Exponent,
        /// Lorentz secondary index.
        #[arg(long, default_value = "1", value_parser = parse_exponent)]
        q: Exponent,
        /// Absolute tolerance for the maximal-norm series.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Run one inequality check as a seeded batch (or once on --input).
    Verify {
        /// One of: bds, tetra, even, general, hyper, ellq, mixed, hyperq2, signs.
        #[arg(long)]
        check: String,
        #[arg(long, default_value_t = 1.5)]
        r: f64,
        /// Index order bound for exact checks (tetra/even/general).
        #[arg(long = "M", default_value_t = 4)]
        order: u32,
        /// Dimension bound for exact checks.
        #[arg(long = "N", default_value_t = 16)]
        dim: usize,
        #[arg(long, default_value_t = 1.0)]
        eps: f64,
        /// Degree for polynomial checks.
        #[arg(long, default_value_t = 3)]
        m: u32,
        /// Variables for polynomial checks.
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        trials: u32,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Cap for the ratio-mode checks (ellq, hyperq2).
        #[arg(long, default_value_t = 1.0)]
        cap: f64,
        #[arg(long, default_value_t = 50)]
        restarts: u32,
        #[arg(long, default_value_t = 2000)]
        max_iters: u32,
        /// Run the check once on this decreasing vector instead of a batch.
        #[arg(long)]
        input: Option<PathBuf>,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Membership predicates for the monomial-convergence sets.
    Membership {
        /// hb (Marcinkiewicz) or hinf (lower/upper sandwich sets).
        #[arg(long)]
        space: String,
        /// telescoping | harmonic | power-log (with --a/--b); otherwise --input.
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 2.0)]
        r: f64,
        #[arg(long, default_value_t = 0.5)]
        a: f64,
        #[arg(long, default_value_t = 1.0)]
        b: f64,
        /// Caller-supplied limsup for hinf (0 for finitely supported input).
        #[arg(long, default_value_t = 0.0)]
        limsup: f64,
        #[arg(long, default_value = "16,128,1024,8192,65536", value_parser = parse_grid)]
        grid: Grid,
        #[arg(long, default_value_t = 1.5)]
        growth_threshold: f64,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Lower estimates of the mixed unconditionality constant across sizes.
    Chi {
        #[arg(long, default_value_t = 2)]
        m: u32,
        /// Comma-separated dimensions.
        #[arg(long = "n-grid", default_value = "4,8,16,32,64", value_parser = parse_grid)]
        n_grid: Grid,
        #[arg(long, default_value = "2", value_parser = parse_exponent)]
        r: Exponent,
        #[arg(long, default_value = "inf", value_parser = parse_exponent)]
        s: Exponent,
        #[arg(long, default_value_t = 30)]
        trials: u32,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        restarts: u32,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Mixed Bohr-radius proxy from χ estimates over degrees.
    Bohr {
        #[arg(long, default_value = "2", value_parser = parse_exponent)]
        p: Exponent,
        #[arg(long, default_value = "1", value_parser = parse_exponent)]
        q: Exponent,
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long = "m-max", default_value_t = 3)]
        m_max: u32,
        #[arg(long, default_value_t = 10)]
        trials: u32,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Multiplier trend checks for the weight n^{−σ_m}.
    Multiplier {
        #[arg(long, default_value_t = 2.0)]
        r: f64,
        #[arg(long, default_value_t = 3)]
        m: u32,
        #[arg(long, default_value_t = 0.05)]
        eps: f64,
        /// Positive-direction family n^{−a} log(n+1)^{−b}.
        #[arg(long, default_value_t = 0.5)]
        a: f64,
        #[arg(long, default_value_t = 1.0)]
        b: f64,
        #[arg(long, default_value = "64,256,1024,4096,16384", value_parser = parse_grid)]
        grid: Grid,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Print the derived exponents for a degree.
    Exponents {
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 2.0)]
        r: f64,
    },
    /// Least-squares power-law fit of (n, value) CSV points.
    Fit {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Merge report batches, ordered by (check, seed, trial).
    Merge {
        /// Input report files (json-lines).
        inputs: Vec<PathBuf>,
        #[command(flatten)]
        out: CommonOut,
    },
}

/// What the process learned; drives the exit code.
pub struct Outcome {
    pub violated: usize,
}

fn budget_from_env() -> Result<Budget> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => {
            let parsed: u64 = v
                .parse()
                .with_context(|| format!("{BUDGET_ENV} must be an integer, got {v:?}"))?;
            Ok(Budget(parsed))
        }
        Err(_) => Ok(Budget(DEFAULT_BUDGET)),
    }
}

fn reports_to_text(reports: &[InequalityReport], format: OutputFormat) -> String {
    match format {
        OutputFormat::JsonLines => reports
            .iter()
            .map(|r| r.to_json_line() + "\n")
            .collect::<String>(),
        OutputFormat::Csv => {
            let mut out =
                String::from("check,seed,trial,status,lhs,rhs,constant,norm_lower,norm_upper\n");
            for r in reports {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{}\n",
                    r.check,
                    r.seed,
                    r.trial,
                    r.status.as_str(),
                    format_f64(r.lhs),
                    format_f64(r.rhs),
                    format_f64(r.constant),
                    r.norm_lower.map(format_f64).unwrap_or_default(),
                    r.norm_upper.map(format_f64).unwrap_or_default(),
                ));
            }
            out
        }
        OutputFormat::Pretty => {
            let mut out = String::new();
            for r in reports {
                out.push_str(&format!(
                    "{:10} trial {:4} {:12} lhs {:24} rhs {:24}\n",
                    r.check,
                    r.trial,
                    r.status.as_str(),
                    format_f64(r.lhs),
                    format_f64(r.rhs)
                ));
            }
            let violated = reports
                .iter()
                .filter(|r| r.status == InequalityStatus::Violated)
                .count();
            out.push_str(&format!(
                "{} reports, {} violated\n",
                reports.len(),
                violated
            ));
            out
        }
    }
}

pub fn run(cli: Cli) -> Result<Outcome> {
    let budget = budget_from_env()?;
    match cli.command {
        Command::Norms {
            input,
            r,
            p,
            q,
            tol,
            out,
        } => {
            let v = read_vector(&input)?;
            let params = LorentzParams::new(p, q);
            let mut text = String::new();
            text.push_str(&format!("ell_norm: {}\n", format_f64(ell_norm(&v, r))));
            text.push_str(&format!(
                "lorentz_quasinorm: {}\n",
                format_f64(lorentz_quasinorm(&v, params))
            ));
            match lorentz_maximal_norm(&v, params, tol) {
                Ok(maximal) => {
                    text.push_str(&format!(
                        "lorentz_maximal_norm: {} (tail radius {})\n",
                        format_f64(maximal.value),
                        format_f64(maximal.tail_radius)
                    ));
                }
                Err(e) => text.push_str(&format!("lorentz_maximal_norm: undefined ({e})\n")),
            }
            if let Exponent::Finite(rv) = r {
                if rv > 1.0 && rv <= 2.0 {
                    text.push_str(&format!(
                        "marcinkiewicz_norm(psi_{rv}): {}\n",
                        format_f64(marcinkiewicz_norm(&v, &MarcinkiewiczSymbol::psi_r(rv)))
                    ));
                }
            }
            emit(&out.output, &text)?;
            Ok(Outcome { violated: 0 })
        }
        Command::Verify {
            check,
            r,
            order,
            dim,
            eps,
            m,
            n,
            trials,
            seed,
            cap,
            restarts,
            max_iters,
            input,
            out,
        } => {
            if !(1.0..=2.0).contains(&r) || r == 1.0 {
                bail!("--r must lie in (1, 2], got {r}");
            }
            let ctx = CheckContext {
                budget,
                optimize: OptimizeOptions {
                    restarts,
                    max_iters,
                    seed,
                },
            };
            if check == "signs" {
                let outcome = sign_polynomial_search(m, n, r, trials, seed, budget, ctx.optimize)?;
                let text = format!(
                    "m {} n {} trials {} seed {}\nmin_upper {}\nmin_lower {}\nbound {}\nratio_upper {}\nratio_lower {}\nbest_trial {}\n",
                    outcome.m,
                    outcome.n,
                    outcome.trials,
                    outcome.seed,
                    format_f64(outcome.min_upper),
                    format_f64(outcome.min_lower),
                    format_f64(outcome.bound),
                    format_f64(outcome.ratio_upper),
                    format_f64(outcome.ratio_lower),
                    outcome.best_trial,
                );
                emit(&out.output, &text)?;
                return Ok(Outcome { violated: 0 });
            }
            let batch_check = BatchCheck::parse(&check)
                .ok_or_else(|| anyhow!("unknown check {check:?}; see --help for the list"))?;
            let reports = match (&input, batch_check) {
                (Some(path), BatchCheck::Tetra) => {
                    let z = read_vector(path)?;
                    vec![check_tetra_bound(&z, order, dim, r, eps, &ctx)?]
                }
                (Some(path), BatchCheck::Even) => {
                    let z = read_vector(path)?;
                    vec![check_even_bound(&z, order, dim, r, &ctx)?]
                }
                (Some(path), BatchCheck::General) => {
                    let z = read_vector(path)?;
                    vec![check_general_bound(&z, order, dim, r, eps, &ctx)?]
                }
                (Some(_), _) => {
                    bail!("--input only applies to the exact checks (tetra, even, general)")
                }
                (None, _) => {
                    let params = BatchParams {
                        m: if matches!(
                            batch_check,
                            BatchCheck::Tetra | BatchCheck::Even | BatchCheck::General
                        ) {
                            order
                        } else {
                            m
                        },
                        n: if matches!(
                            batch_check,
                            BatchCheck::Tetra | BatchCheck::Even | BatchCheck::General
                        ) {
                            dim
                        } else {
                            n
                        },
                        r_choices: vec![r],
                        eps_choices: vec![eps],
                        cap,
                    };
                    if out.output.is_none() && out.format == OutputFormat::JsonLines {
                        // stream to stdout in ordered chunks so long batches
                        // are inspectable mid-run; chunking cannot change the
                        // records because per-trial seeds depend only on the
                        // trial index
                        let mut violated = 0;
                        let chunk = trials.div_ceil(16).max(1);
                        let mut start = 0;
                        while start < trials {
                            let end = (start + chunk).min(trials);
                            let part =
                                run_batch_range(batch_check, &params, start..end, seed, &ctx)?;
                            violated += part
                                .iter()
                                .filter(|r| r.status == InequalityStatus::Violated)
                                .count();
                            print!("{}", reports_to_text(&part, out.format));
                            start = end;
                        }
                        if batch_check == BatchCheck::HyperQ2 {
                            let rows = impossibility_reports(r, seed);
                            print!("{}", reports_to_text(&rows, out.format));
                        }
                        return Ok(Outcome { violated });
                    }
                    let mut reports = run_batch(batch_check, &params, trials, seed, &ctx)?;
                    if batch_check == BatchCheck::HyperQ2 {
                        reports.extend(impossibility_reports(r, seed));
                    }
                    reports
                }
            };
            let violated = reports
                .iter()
                .filter(|r| r.status == InequalityStatus::Violated)
                .count();
            emit(&out.output, &reports_to_text(&reports, out.format))?;
            Ok(Outcome { violated })
        }
        Command::Membership {
            space,
            family,
            input,
            r,
            a,
            b,
            limsup,
            grid,
            growth_threshold,
            out,
        } => {
            if !(1.0..=2.0).contains(&r) || r == 1.0 {
                bail!("--r must lie in (1, 2], got {r}");
            }
            let mut text = String::new();
            match space.as_str() {
                "hb" => match (&family, &input) {
                    (Some(name), None) => {
                        let fam = named_family(name, r, a, b)?;
                        let trend = hb_membership_family(&fam, r, &grid.0, growth_threshold);
                        text.push_str(&format!("family {}\n", fam.label()));
                        for &(n, ratio) in &trend.ratios {
                            text.push_str(&format!("n {:8} ratio {}\n", n, format_f64(ratio)));
                        }
                        text.push_str(&format!(
                            "growth {} verdict {:?}\n",
                            format_f64(trend.growth),
                            trend.verdict.verdict
                        ));
                    }
                    (None, Some(path)) => {
                        let z = read_vector(path)?;
                        let verdict = hb_membership(&z, r);
                        text.push_str(&format!(
                            "norm {} verdict {:?}\n",
                            format_f64(verdict.value),
                            verdict.verdict
                        ));
                    }
                    _ => bail!("membership --space hb needs exactly one of --family or --input"),
                },
                "hinf" => {
                    let path = input
                        .as_ref()
                        .ok_or_else(|| anyhow!("membership --space hinf needs --input"))?;
                    let z = read_vector(path)?;
                    let verdicts = hinf_membership(&z, r, limsup, None);
                    text.push_str(&format!(
                        "lower_set value {} verdict {:?}\n",
                        format_f64(verdicts.lower.value),
                        verdicts.lower.verdict
                    ));
                    text.push_str(&format!(
                        "upper_set value {} verdict {:?}\n",
                        format_f64(verdicts.upper.value),
                        verdicts.upper.verdict
                    ));
                    text.push_str(&format!(
                        "K {} embedding_upper {}\n",
                        format_f64(verdicts.k_constant),
                        format_f64(verdicts.embedding_upper)
                    ));
                }
                other => bail!("unknown space {other:?} (expected hb or hinf)"),
            }
            emit(&out.output, &text)?;
            Ok(Outcome { violated: 0 })
        }
        Command::Chi {
            m,
            n_grid,
            r,
            s,
            trials,
            seed,
            restarts,
            out,
        } => {
            let ctx = CheckContext {
                budget,
                optimize: OptimizeOptions {
                    restarts,
                    max_iters: 1000,
                    seed,
                },
            };
            let predicted = region_classify(r, s, m).predicted_exponent;
            let mut points = Vec::new();
            for &n in &n_grid.0 {
                let est = chi_estimate(m, n, r, s, trials, seed, &ctx)?;
                points.push((n, est.value));
            }
            let fit = fit_exponent(&points)?;
            let rows: Vec<TrendRow> = points
                .iter()
                .map(|&(n, estimate)| TrendRow {
                    n,
                    estimate,
                    fitted_exponent: fit.exponent,
                    predicted_exponent: predicted,
                })
                .collect();
            let text = match out.format {
                OutputFormat::Csv | OutputFormat::JsonLines => trend_rows_to_csv(&rows),
                OutputFormat::Pretty => {
                    let mut t = trend_rows_to_csv(&rows);
                    t.push_str(&format!(
                        "fitted {} predicted {} residual {}\n",
                        format_f64(fit.exponent),
                        format_f64(predicted),
                        format_f64(fit.residual)
                    ));
                    t
                }
            };
            emit(&out.output, &text)?;
            Ok(Outcome { violated: 0 })
        }
        Command::Bohr {
            p,
            q,
            n,
            m_max,
            trials,
            seed,
            out,
        } => {
            let ctx = CheckContext {
                budget,
                optimize: OptimizeOptions {
                    restarts: 12,
                    max_iters: 800,
                    seed,
                },
            };
            let est = bohr_radius_estimate(p, q, n, m_max, trials, seed, &ctx)?;
            let mut text = String::new();
            for &(m, chi) in &est.per_degree {
                text.push_str(&format!("m {} chi {}\n", m, format_f64(chi)));
            }
            text.push_str(&format!("bohr_radius_estimate {}\n", format_f64(est.value)));
            emit(&out.output, &text)?;
            Ok(Outcome { violated: 0 })
        }
        Command::Multiplier {
            r,
            m,
            eps,
            a,
            b,
            grid,
            out,
        } => {
            if !(1.0..=2.0).contains(&r) || r == 1.0 {
                bail!("--r must lie in (1, 2], got {r}");
            }
            let family = SequenceFamily::power_log(a, b);
            let report = multiplier_check(r, m, &family, &grid.0, eps);
            let mut text = format!(
                "sigma_m {} q {}\n",
                format_f64(report.sigma_m),
                format_f64(report.q)
            );
            for &(n, norm) in &report.positive {
                text.push_str(&format!("positive n {:8} norm {}\n", n, format_f64(norm)));
            }
            for &(n, quasi) in &report.optimality {
                text.push_str(&format!(
                    "optimality n {:8} quasinorm {}\n",
                    n,
                    format_f64(quasi)
                ));
            }
            text.push_str(&format!(
                "optimality_strictly_increasing {} growth {}\n",
                report.optimality_strictly_increasing,
                format_f64(report.optimality_growth)
            ));
            emit(&out.output, &text)?;
            Ok(Outcome { violated: 0 })
        }
        Command::Exponents { m, r } => {
            if !(1.0..=2.0).contains(&r) || r == 1.0 {
                bail!("--r must lie in (1, 2], got {r}");
            }
            if m < 1 {
                bail!("--m must be at least 1");
            }
            let bundle = exponent_bundle(m, r);
            println!("m {} r {}", bundle.m, format_f64(bundle.r));
            println!("r_conj {}", format_f64(bundle.r_conj));
            println!("q {}", format_f64(bundle.q));
            println!("q_conj {}", format_f64(bundle.q_conj));
            println!("sigma_m {}", format_f64(bundle.sigma_m));
            match bundle.s.value() {
                Some(s) => println!("s {}", format_f64(s)),
                None => println!("s not-applicable"),
            }
            println!("theta {}", format_f64(bundle.theta));
            Ok(Outcome { violated: 0 })
        }
        Command::Fit { input, out } => {
            let points = read_points(&input)?;
            let fit = fit_exponent(&points)?;
            let text = format!(
                "exponent {}\nintercept {}\nresidual {}\n",
                format_f64(fit.exponent),
                format_f64(fit.intercept),
                format_f64(fit.residual)
            );
            emit(&out.output, &text)?;
            Ok(Outcome { violated: 0 })
        }
        Command::Merge { inputs, out } => {
            if inputs.is_empty() {
                bail!("merge needs at least one input file");
            }
            let mut batches = Vec::new();
            for path in &inputs {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                batches.push(parse_batch(&text)?);
            }
            let merged = merge_reports(batches);
            let violated = merged
                .iter()
                .filter(|r| r.status == InequalityStatus::Violated)
                .count();
            emit(&out.output, &reports_to_text(&merged, out.format))?;
            Ok(Outcome { violated })
        }
    }
}

fn named_family(name: &str, r: f64, a: f64, b: f64) -> Result<SequenceFamily> {
    Ok(match name {
        "telescoping" => SequenceFamily::telescoping(r),
        "harmonic" => SequenceFamily::harmonic(),
        "power-log" => SequenceFamily::power_log(a, b),
        other => bail!("unknown family {other:?} (telescoping, harmonic, power-log)"),
    })
}

/// The divergence demonstration attached to hyperq2 batches: the normalized
/// partial-sum ratio of the witness sequence at degree ⌊log(n+1)⌋ must climb
/// along the grid. Each grid point becomes a record whose claim is "strictly
/// larger than the previous point" (Verified/Inconclusive; a desk-scale
/// plateau cannot falsify the limit statement, so never Violated).
fn impossibility_reports(r: f64, seed: u64) -> Vec<InequalityReport> {
    let grid = [16usize, 64, 256, 1024, 4096];
    let rows = impossibility_growth(r, &grid);
    let mut prev = 0.0;
    rows.iter()
        .enumerate()
        .map(|(idx, &(n, m, ratio))| {
            let mut params = std::collections::BTreeMap::new();
            params.insert("n".to_string(), n as f64);
            params.insert("m".to_string(), m as f64);
            params.insert("r".to_string(), r);
            let status = if ratio > prev {
                InequalityStatus::Verified
            } else {
                InequalityStatus::Inconclusive
            };
            let report = InequalityReport {
                schema: monconv::report::SCHEMA_VERSION.to_string(),
                check: "hyperq2-impossibility".to_string(),
                params,
                lhs: ratio,
                rhs: prev,
                constant: 1.0,
                constant_note: "ratio must exceed the previous grid point".to_string(),
                norm_lower: None,
                norm_upper: None,
                status,
                witness: None,
                seed,
                trial: idx as u64,
            };
            prev = ratio;
            report
        })
        .collect()
}
