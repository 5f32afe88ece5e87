//! Command implementations: compute, render, classify pass/fail.

use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use statedos::asymptotics::{
    build_series, cancellation_profile, omega_j, richardson as extrapolate, AlphaParam,
};
use statedos::exact::{big, format_rational, parse_rational, to_f64};
use statedos::mc::{build_histogram, compare_density, exact_bin_masses, SplitMix64};
use statedos::saddle::{alpha2_prefactor, parametric_pair, solve_saddle};
use statedos::spectral::{discrete_difference_identity, integrate_mu, mu_linear};

use crate::report::*;
use crate::{CliError, CommandOutput, Format};

fn parse_alpha(text: &str) -> Result<AlphaParam, CliError> {
    let value = parse_rational(text)?;
    Ok(AlphaParam::new(value)?)
}

/// Uniform rational grid 0, 1/(points-1), ..., 1.
fn unit_grid(points: usize) -> Result<Vec<BigRational>, CliError> {
    if points < 2 {
        return Err(CliError::Usage(format!(
            "need at least 2 grid points, got {points}"
        )));
    }
    let den = big((points - 1) as i64);
    Ok((0..points)
        .map(|i| BigRational::new(big(i as i64), den.clone()))
        .collect())
}

fn json<T: serde::Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| CliError::Run(format!("json rendering failed: {e}")))
}

pub fn density(
    n: usize,
    points: usize,
    format: Format,
    digits: usize,
) -> Result<CommandOutput, CliError> {
    if n < 1 {
        return Err(CliError::Usage("--n must be >= 1".into()));
    }
    let grid = unit_grid(points)?;
    let rows: Vec<DensityRow> = grid
        .iter()
        .map(|e| {
            let mu = mu_linear(n, e).expect("grid point inside [0, 1]");
            DensityRow {
                e: format_rational(e, digits),
                mu: format_rational(&mu, digits),
            }
        })
        .collect();
    let content = match format {
        Format::Csv => {
            let mut out = String::from("E,mu\n");
            for r in &rows {
                out.push_str(&format!("{},{}\n", r.e, r.mu));
            }
            out
        }
        Format::Json => json(&TableReport {
            config: ConfigEcho::new(
                "density",
                &[
                    ("n", n.to_string()),
                    ("points", points.to_string()),
                    ("precision_digits", digits.to_string()),
                ],
            ),
            rows,
        })?,
    };
    Ok(CommandOutput {
        content,
        passed: true,
        summary: None,
    })
}

pub fn figure1(points: usize, format: Format, digits: usize) -> Result<CommandOutput, CliError> {
    let grid = unit_grid(points)?;
    let mut rows = Vec::with_capacity(points);
    for e in &grid {
        let mu = |n: usize| format_rational(&mu_linear(n, e).expect("in range"), digits);
        rows.push(FigureRow {
            e: format_rational(e, digits),
            mu_n3: mu(3),
            mu_n6: mu(6),
            mu_n9: mu(9),
        });
    }
    let content = match format {
        Format::Csv => {
            let mut out = String::from("E,mu_n3,mu_n6,mu_n9\n");
            for r in &rows {
                out.push_str(&format!("{},{},{},{}\n", r.e, r.mu_n3, r.mu_n6, r.mu_n9));
            }
            out
        }
        Format::Json => json(&TableReport {
            config: ConfigEcho::new(
                "figure1",
                &[
                    ("points", points.to_string()),
                    ("precision_digits", digits.to_string()),
                ],
            ),
            rows,
        })?,
    };
    Ok(CommandOutput {
        content,
        passed: true,
        summary: None,
    })
}

pub fn normalize(max_n: usize, format: Format) -> Result<CommandOutput, CliError> {
    if max_n < 1 {
        return Err(CliError::Usage("--max-n must be >= 1".into()));
    }
    let one = BigRational::one();
    let mut checks = Vec::with_capacity(max_n);
    let mut all = true;
    for n in 1..=max_n {
        let integral = integrate_mu(n);
        let ok = integral == one;
        all &= ok;
        checks.push((n, integral, ok));
    }
    let content = match format {
        Format::Csv => {
            let mut out = String::from("n,integral,ok\n");
            for (n, integral, ok) in &checks {
                out.push_str(&format!("{n},{},{ok}\n", format_rational(integral, 30)));
            }
            out
        }
        Format::Json => json(&VerifyReport {
            config: ConfigEcho::new("normalize", &[("max_n", max_n.to_string())]),
            checks: checks
                .iter()
                .map(|(n, integral, ok)| CheckResult {
                    name: format!("normalization n={n}"),
                    passed: *ok,
                    residual: Some(0.0),
                    detail: format!("integral = {}", format_rational(integral, 30)),
                })
                .collect(),
            all_passed: all,
        })?,
    };
    Ok(CommandOutput {
        content,
        passed: all,
        summary: Some(format!("normalization: n = 1..={max_n} all exact: {all}")),
    })
}

pub fn identity(max_n: usize, format: Format) -> Result<CommandOutput, CliError> {
    if max_n < 1 {
        return Err(CliError::Usage("--max-n must be >= 1".into()));
    }
    let mut rows = Vec::with_capacity(max_n);
    let mut all = true;
    for n in 1..=max_n {
        let (lhs, rhs) = discrete_difference_identity(n);
        let ok = lhs == rhs;
        all &= ok;
        rows.push((n, lhs, rhs, ok));
    }
    let content = match format {
        Format::Csv => {
            let mut out = String::from("n,lhs,rhs,ok\n");
            for (n, lhs, rhs, ok) in &rows {
                out.push_str(&format!("{n},{lhs},{rhs},{ok}\n"));
            }
            out
        }
        Format::Json => json(&VerifyReport {
            config: ConfigEcho::new("identity", &[("max_n", max_n.to_string())]),
            checks: rows
                .iter()
                .map(|(n, lhs, rhs, ok)| CheckResult {
                    name: format!("discrete-difference n={n}"),
                    passed: *ok,
                    residual: Some(0.0),
                    detail: format!("lhs = {lhs}, rhs = {rhs}"),
                })
                .collect(),
            all_passed: all,
        })?,
    };
    Ok(CommandOutput {
        content,
        passed: all,
        summary: Some(format!("identity: n = 1..={max_n} all exact: {all}")),
    })
}

pub fn omega_series(
    alpha_text: &str,
    jmax: u64,
    format: Format,
    digits: usize,
) -> Result<CommandOutput, CliError> {
    let alpha = parse_alpha(alpha_text)?;
    let q = alpha
        .value()
        .denom()
        .to_u64()
        .ok_or_else(|| CliError::Usage("alpha denominator too large".into()))?;
    let grid: Vec<u64> = (1..).map(|k| k * q).take_while(|&j| j <= jmax).collect();
    if grid.is_empty() {
        return Err(CliError::Usage(format!(
            "no valid J: alpha = {} needs J in multiples of {q}, jmax = {jmax}",
            alpha.value()
        )));
    }
    let table = build_series(&alpha, &grid)?;
    let profile = cancellation_profile(&table);
    let rows: Vec<OmegaRow> = table
        .rows
        .iter()
        .zip(&profile)
        .map(|(row, &(_, ratio))| OmegaRow {
            j: row.j,
            omega: format_rational(&row.omega_exact, digits),
            omega_float: row.omega_float,
            max_term_float: row.max_term_float,
            cancellation_ratio: ratio,
        })
        .collect();
    let content = match format {
        Format::Csv => {
            let mut out = String::from("J,omega,omega_float,max_term_float,cancellation_ratio\n");
            for r in &rows {
                out.push_str(&format!(
                    "{},{},{:e},{:e},{:e}\n",
                    r.j, r.omega, r.omega_float, r.max_term_float, r.cancellation_ratio
                ));
            }
            out
        }
        Format::Json => json(&TableReport {
            config: ConfigEcho::new(
                "omega-series",
                &[
                    ("alpha", alpha.value().to_string()),
                    ("jmax", jmax.to_string()),
                    ("precision_digits", digits.to_string()),
                ],
            ),
            rows,
        })?,
    };
    Ok(CommandOutput {
        content,
        passed: true,
        summary: None,
    })
}

pub fn richardson(jmax: u64, order: usize, format: Format) -> Result<CommandOutput, CliError> {
    let alpha = AlphaParam::new(statedos::exact::ratio(2, 1)).expect("2 >= 2");
    let grid: Vec<u64> = (1..).map(|k| 4 * k).take_while(|&j| j <= jmax).collect();
    let table = build_series(&alpha, &grid)?;
    let sequence: Vec<(u64, f64)> = table
        .rows
        .iter()
        .map(|r| (r.j, r.omega_float / (r.j as f64).sqrt()))
        .collect();
    let estimate = extrapolate(&sequence, order)?;
    let reference = alpha2_prefactor();
    let abs_deviation = (estimate - reference).abs();
    let config = ConfigEcho::new(
        "richardson",
        &[("jmax", jmax.to_string()), ("order", order.to_string())],
    );
    let content = match format {
        Format::Csv => format!(
            "estimate,reference,abs_deviation,jmax,order\n{estimate},{reference},{abs_deviation:e},{jmax},{order}\n"
        ),
        Format::Json => json(&RichardsonReport { config, estimate, reference, abs_deviation })?,
    };
    Ok(CommandOutput {
        content,
        passed: true,
        summary: Some(format!(
            "richardson: estimate = {estimate:.12}, 2*sqrt(3/pi) = {reference:.12}"
        )),
    })
}

pub fn saddle(alpha_text: &str, format: Format) -> Result<CommandOutput, CliError> {
    let alpha = to_f64(&parse_rational(alpha_text)?);
    let result = solve_saddle(alpha)?;
    let config = ConfigEcho::new("saddle", &[("alpha", alpha.to_string())]);
    let content = match format {
        Format::Csv => {
            let prefactor = result
                .prefactor_alpha2
                .map(|c| c.to_string())
                .unwrap_or_default();
            format!(
                "alpha,lambda0,f_at_saddle,f_second_at_saddle,fprime_residual,predicted_rate,prefactor_alpha2\n\
                 {},{},{},{},{:e},{},{}\n",
                result.alpha,
                result.lambda0,
                result.f_at_saddle,
                result.f_second_at_saddle,
                result.fprime_residual,
                result.predicted_rate,
                prefactor
            )
        }
        Format::Json => json(&SaddleReport {
            config,
            alpha: result.alpha,
            lambda0: result.lambda0,
            f_at_saddle: result.f_at_saddle,
            f_second_at_saddle: result.f_second_at_saddle,
            fprime_residual: result.fprime_residual,
            predicted_rate: result.predicted_rate,
            prefactor_alpha2: result.prefactor_alpha2,
        })?,
    };
    Ok(CommandOutput {
        content,
        passed: true,
        summary: None,
    })
}

pub fn montecarlo(
    n: usize,
    samples: u64,
    bins: usize,
    seed: u64,
    tolerance: f64,
    format: Format,
    digits: usize,
) -> Result<CommandOutput, CliError> {
    if tolerance.is_nan() || tolerance <= 0.0 {
        return Err(CliError::Usage("--tolerance must be positive".into()));
    }
    let histogram = build_histogram(n, samples, bins, seed)?;
    let report = compare_density(&histogram, n, tolerance)?;
    let masses = exact_bin_masses(n, bins);
    let bins_rational = BigRational::from(big(bins as i64));
    let rows: Vec<MonteCarloBin> = (0..bins)
        .map(|i| MonteCarloBin {
            bin_center: (i as f64 + 0.5) / bins as f64,
            empirical: histogram.normalized_heights[i],
            exact: format_rational(&(&masses[i] * &bins_rational), digits),
        })
        .collect();
    let summary = format!(
        "montecarlo: n = {n}, sup_deviation = {:.6}, chi_square = {:.2} (dof {}), passed = {}",
        report.sup_deviation, report.chi_square, report.degrees_of_freedom, report.passed
    );
    let content = match format {
        Format::Csv => {
            let mut out = String::from("bin_center,empirical,exact\n");
            for r in &rows {
                out.push_str(&format!("{},{},{}\n", r.bin_center, r.empirical, r.exact));
            }
            out
        }
        Format::Json => json(&MonteCarloReport {
            config: ConfigEcho::new(
                "montecarlo",
                &[
                    ("n", n.to_string()),
                    ("samples", samples.to_string()),
                    ("bins", bins.to_string()),
                    ("seed", seed.to_string()),
                    ("tolerance", tolerance.to_string()),
                ],
            ),
            sup_deviation: report.sup_deviation,
            chi_square: report.chi_square,
            degrees_of_freedom: report.degrees_of_freedom,
            tolerance: report.tolerance,
            passed: report.passed,
            rows,
        })?,
    };
    Ok(CommandOutput {
        content,
        passed: report.passed,
        summary: Some(summary),
    })
}

pub fn verify_all(
    max_n: usize,
    jmax: u64,
    richardson_tol: f64,
    format: Format,
) -> Result<CommandOutput, CliError> {
    if max_n < 1 {
        return Err(CliError::Usage("--max-n must be >= 1".into()));
    }
    if richardson_tol.is_nan() || richardson_tol <= 0.0 {
        return Err(CliError::Usage("--richardson-tol must be positive".into()));
    }
    let mut checks = Vec::new();

    // 1. exact normalization
    {
        let one = BigRational::one();
        let failures: Vec<usize> = (1..=max_n).filter(|&n| integrate_mu(n) != one).collect();
        checks.push(CheckResult {
            name: "normalization".into(),
            passed: failures.is_empty(),
            residual: Some(0.0),
            detail: if failures.is_empty() {
                format!("integral of mu_n = 1 exactly for n = 1..={max_n}")
            } else {
                format!("failed at n = {failures:?}")
            },
        });
    }

    // 2. alternating binomial identity
    {
        let failures: Vec<usize> = (1..=max_n)
            .filter(|&n| {
                let (lhs, rhs) = discrete_difference_identity(n);
                lhs != rhs
            })
            .collect();
        checks.push(CheckResult {
            name: "discrete-difference-identity".into(),
            passed: failures.is_empty(),
            residual: Some(0.0),
            detail: if failures.is_empty() {
                format!("lhs = (-1)^n n! exactly for n = 1..={max_n}")
            } else {
                format!("failed at n = {failures:?}")
            },
        });
    }

    // 3. symmetry spot checks on seeded rationals and knots
    {
        let mut rng = SplitMix64::new(0x53);
        let one = BigRational::one();
        let mut failures = Vec::new();
        for n in [2usize, 3, 5, 9, 16] {
            for _ in 0..6 {
                let q = 2 + rng.next_u64() % 49;
                let p = 1 + rng.next_u64() % (q - 1);
                let e = BigRational::new(big(p as i64), big(q as i64));
                let mirrored = &one - &e;
                if mu_linear(n, &e).expect("in range") != mu_linear(n, &mirrored).expect("in range")
                {
                    failures.push(format!("n={n}, E={e}"));
                }
            }
            for j in 0..=n {
                let e = BigRational::new(big(j as i64), big(n as i64));
                let mirrored = &one - &e;
                if mu_linear(n, &e).expect("in range") != mu_linear(n, &mirrored).expect("in range")
                {
                    failures.push(format!("n={n}, knot {j}/{n}"));
                }
            }
        }
        checks.push(CheckResult {
            name: "symmetry".into(),
            passed: failures.is_empty(),
            residual: Some(0.0),
            detail: if failures.is_empty() {
                "mu(E) = mu(1-E) exactly on random rationals and knots".into()
            } else {
                format!("failed at {failures:?}")
            },
        });
    }

    // 4. omega / mu bridge
    {
        let mut failures = Vec::new();
        for (p, q) in [(2i64, 1i64), (3, 1), (5, 2)] {
            let alpha = AlphaParam::new(statedos::exact::ratio(p, q)).expect("alpha >= 2");
            for k in 1..=3u64 {
                let j = k * q as u64;
                let n = alpha.level_count(j).expect("multiple of q");
                let omega = omega_j(&alpha, j).expect("valid J");
                let mu = mu_linear(n, &alpha.energy()).expect("1/alpha inside [0, 1]");
                if omega != mu {
                    failures.push(format!("alpha={p}/{q}, J={j}"));
                }
            }
        }
        checks.push(CheckResult {
            name: "omega-mu-bridge".into(),
            passed: failures.is_empty(),
            residual: Some(0.0),
            detail: if failures.is_empty() {
                "omega_J(alpha) = mu(alpha J, 1/alpha) exactly".into()
            } else {
                format!("failed at {failures:?}")
            },
        });
    }

    // 5. parametric solution residuals on a complex grid
    {
        let coords = [-2.0, -1.2, -0.4, 0.4, 1.2, 2.0];
        let mut max_residual = 0.0f64;
        for &re in &coords {
            for &im in &coords {
                let p = parametric_pair(num_complex::Complex64::new(re, im))
                    .expect("grid avoids the sinh poles");
                max_residual = max_residual.max(p.residual);
            }
        }
        checks.push(CheckResult {
            name: "parametric-residual".into(),
            passed: max_residual < 1e-10,
            residual: Some(max_residual),
            detail: format!("max |s e^r - r e^s| = {max_residual:e} over the grid"),
        });
    }

    // 6. Richardson constant
    {
        let alpha = AlphaParam::new(statedos::exact::ratio(2, 1)).expect("2 >= 2");
        let grid: Vec<u64> = (1..).map(|k| 4 * k).take_while(|&j| j <= jmax).collect();
        let table = build_series(&alpha, &grid)?;
        let sequence: Vec<(u64, f64)> = table
            .rows
            .iter()
            .map(|r| (r.j, r.omega_float / (r.j as f64).sqrt()))
            .collect();
        let estimate = extrapolate(&sequence, 4)?;
        let reference = alpha2_prefactor();
        let deviation = (estimate - reference).abs();
        checks.push(CheckResult {
            name: "richardson-constant".into(),
            passed: deviation <= richardson_tol,
            residual: Some(deviation),
            detail: format!("estimate = {estimate:.12} vs 2*sqrt(3)/sqrt(pi) = {reference:.12}"),
        });
    }

    let all_passed = checks.iter().all(|c| c.passed);
    let config = ConfigEcho::new(
        "verify-all",
        &[
            ("max_n", max_n.to_string()),
            ("jmax", jmax.to_string()),
            ("richardson_tol", format!("{richardson_tol:e}")),
        ],
    );
    let content = match format {
        Format::Json => json(&VerifyReport {
            config,
            checks,
            all_passed,
        })?,
        Format::Csv => {
            let mut out = String::from("check,passed,residual,detail\n");
            for c in &checks {
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    c.name,
                    c.passed,
                    c.residual.map(|r| format!("{r:e}")).unwrap_or_default(),
                    c.detail.replace(',', ";")
                ));
            }
            out
        }
    };
    let summary = format!("verify-all: {} checks, all passed: {all_passed}", 6);
    Ok(CommandOutput {
        content,
        passed: all_passed,
        summary: Some(summary),
    })
}
