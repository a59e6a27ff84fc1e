//! Subcommand bodies. Each writes its CSV files into the output directory
//! and a short summary to `out`.

use std::io::Write;

use rayon::prelude::*;

use super::config::RunConfig;
use super::output::{fmt_num, write_file, write_table, Table};
use super::CliError;
use crate::analysis::{
    estimate_eta_limit, estimate_eta_with, find_alpha_minimum, linear_grid, sweep_inverse_alpha,
    EtaSearch,
};
use crate::decay::{
    decay_constant, frequency_renormalization, helix_attenuation, lambda2_from_eta, RateSet,
};
use crate::dynamics::{
    analytic::analytic_trajectory, numeric::numeric_trajectory, EvolutionParams,
    OneExcitationState, COMPONENT_COLUMNS,
};
use crate::exciton::ExcitonFrame;

fn say(out: &mut dyn Write, line: impl AsRef<str>) -> Result<(), CliError> {
    writeln!(out, "{}", line.as_ref()).map_err(|e| CliError::Io(e.to_string()))
}

fn key_value(out: &mut dyn Write, rows: &[(&str, f64)]) -> Result<(), CliError> {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in rows {
        say(out, format!("{k:<width$}  {}", fmt_num(*v)))?;
    }
    Ok(())
}

fn quantity_value_table(rows: &[(&str, f64)]) -> Table {
    let mut t = Table::new(&["quantity", "value"]);
    for (k, v) in rows {
        t.push_labelled(k, &[*v]);
    }
    t
}

/// Header `quantity,theta_0,…` for tables with one column per phase.
fn per_theta_table(n: usize) -> Table {
    let mut header = vec!["quantity".to_owned()];
    header.extend((0..n).map(|i| format!("theta_{i}")));
    Table::new(&header)
}

fn frame_and_rates(cfg: &RunConfig) -> Result<(ExcitonFrame, RateSet), CliError> {
    let frame = ExcitonFrame::new(&cfg.dimer)?;
    let rates = RateSet::new(&cfg.dimer, &cfg.bath)?;
    Ok((frame, rates))
}

pub fn transform(cfg: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let (frame, rates) = frame_and_rates(cfg)?;
    let lambda2 = lambda2_from_eta(cfg.dimer.lambda1, cfg.dimer.eta_abs, cfg.dimer.theta);
    let rows = [
        ("phi0_rad", frame.phi0),
        ("omega1p_cm1", frame.omega1p),
        ("omega2p_cm1", frame.omega2p),
        ("omega_plus_cm1", frame.omega_plus),
        ("omega_minus_cm1", frame.omega_minus),
        ("omega0_cm1", frame.omega0),
        ("lambda2_cm1", lambda2.value),
        ("nbar0", rates.nbar0),
        ("alpha", rates.alpha),
        ("inverse_alpha", rates.inverse_alpha),
        ("gamma_fs1", rates.gamma),
        ("lifetime_fs", rates.lifetime.unwrap_or(f64::INFINITY)),
    ];
    if frame.inverted {
        eprintln!("warning: renormalized site energies are inverted (omega1' < omega2')");
    }
    key_value(out, &rows)?;
    write_table(&cfg.output, "transform.csv", &quantity_value_table(&rows))?;
    Ok(())
}

fn gnuplot_script(thetas: &[f64]) -> String {
    let mut s = String::from(
        "set datafile separator ','\nset xlabel '|eta|'\nset ylabel '1/alpha'\nset key top left\nplot \\\n",
    );
    let lines: Vec<String> = thetas
        .iter()
        .map(|t| {
            let t = fmt_num(*t);
            format!("  'sweep.csv' every ::1 using ($1=={t} ? $2 : 1/0):3 with lines title 'theta = {t}'")
        })
        .collect();
    s.push_str(&lines.join(", \\\n"));
    s.push('\n');
    s
}

pub fn sweep(cfg: &RunConfig, gnuplot: bool, out: &mut dyn Write) -> Result<(), CliError> {
    let s = &cfg.sweep;
    let grid = linear_grid(s.eta_min, s.eta_max, s.n_points);
    let results = s
        .thetas
        .par_iter()
        .map(|&theta| sweep_inverse_alpha(&cfg.dimer, theta, &grid))
        .collect::<Result<Vec<_>, _>>()?;
    let mut t = Table::new(&["theta_rad", "eta_abs", "inverse_alpha"]);
    for r in &results {
        for &(eta, inv) in &r.points {
            t.push_numbers(&[r.theta, eta, inv]);
        }
        say(
            out,
            format!(
                "theta {}: lowest sampled 1/alpha {} at |eta| {}",
                fmt_num(r.theta),
                fmt_num(r.minimum.1),
                fmt_num(r.minimum.0)
            ),
        )?;
    }
    write_table(&cfg.output, "sweep.csv", &t)?;
    if gnuplot {
        write_file(&cfg.output, "sweep.gp", &gnuplot_script(&s.thetas))?;
    }
    Ok(())
}

pub fn minimize(cfg: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let thetas = &cfg.sweep.thetas;
    let minima = thetas
        .par_iter()
        .map(|&theta| find_alpha_minimum(&cfg.dimer, theta))
        .collect::<Result<Vec<_>, _>>()?;
    let mut t = per_theta_table(thetas.len());
    t.push_labelled("theta_rad", thetas);
    t.push_labelled("eta_min", &minima.iter().map(|m| m.0).collect::<Vec<_>>());
    t.push_labelled(
        "inverse_alpha_min",
        &minima.iter().map(|m| m.1).collect::<Vec<_>>(),
    );
    for (theta, (eta, inv)) in thetas.iter().zip(&minima) {
        say(
            out,
            format!(
                "theta {}: |eta|_min {}, (1/alpha)_min {}",
                fmt_num(*theta),
                fmt_num(*eta),
                fmt_num(*inv)
            ),
        )?;
    }
    write_table(&cfg.output, "minima.csv", &t)?;
    Ok(())
}

pub fn estimate(cfg: &RunConfig, limit: bool, out: &mut dyn Write) -> Result<(), CliError> {
    let thetas = &cfg.sweep.thetas;
    let search = EtaSearch {
        upper: cfg.eta_upper,
        ..EtaSearch::default()
    };
    let estimates = thetas
        .par_iter()
        .map(|&theta| {
            estimate_eta_with(&cfg.dimer, theta, cfg.target_ratio, search).map_err(|e| (theta, e))
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(|(theta, e)| match e {
            crate::Error::NoSolution { .. } => {
                CliError::NoSolution(format!("theta {}: {e}", fmt_num(theta)))
            }
            other => other.into(),
        })?;
    let mut t = per_theta_table(thetas.len());
    t.push_labelled("theta_rad", thetas);
    t.push_labelled("target_ratio", &vec![cfg.target_ratio; thetas.len()]);
    t.push_labelled(
        "eta_abs",
        &estimates.iter().map(|e| e.eta_abs).collect::<Vec<_>>(),
    );
    t.push_labelled(
        "lambda2_cm1",
        &estimates.iter().map(|e| e.lambda2).collect::<Vec<_>>(),
    );
    t.push_labelled(
        "n_roots",
        &estimates
            .iter()
            .map(|e| e.all_roots.len() as f64)
            .collect::<Vec<_>>(),
    );
    for e in &estimates {
        say(
            out,
            format!(
                "theta {}: |eta| {}, lambda2 {} cm-1",
                fmt_num(e.theta),
                fmt_num(e.eta_abs),
                fmt_num(e.lambda2)
            ),
        )?;
        if e.lambda2_unphysical {
            eprintln!(
                "warning: theta {}: implied lambda2 is negative",
                fmt_num(e.theta)
            );
        }
    }
    write_table(&cfg.output, "estimate.csv", &t)?;
    if limit {
        let gap0 = cfg.dimer.bare_gap();
        let eta = estimate_eta_limit(gap0, cfg.dimer.j12, cfg.target_ratio)?;
        let rows = [
            ("gap0_cm1", gap0),
            ("j12_cm1", cfg.dimer.j12),
            ("target_ratio", cfg.target_ratio),
            ("eta_abs", eta),
        ];
        say(out, format!("weak-coupling limit: |eta| {}", fmt_num(eta)))?;
        write_table(
            &cfg.output,
            "estimate_limit.csv",
            &quantity_value_table(&rows),
        )?;
    }
    Ok(())
}

fn evolution_params(cfg: &RunConfig) -> Result<EvolutionParams, CliError> {
    let (frame, rates) = frame_and_rates(cfg)?;
    let p = EvolutionParams::from_model(&frame, &rates);
    if cfg.renormalize {
        let shift = frequency_renormalization(&cfg.bath.modes, frame.omega0, cfg.bath.temperature)?;
        return Ok(p.renormalized(&shift));
    }
    Ok(p)
}

/// Components below this magnitude are round-off and written as 0, so that
/// trajectory files compare equal across platforms.
const ROUNDOFF_FLOOR: f64 = 1e-14;

fn snap(x: f64) -> f64 {
    if x.abs() < ROUNDOFF_FLOOR {
        0.0
    } else {
        x
    }
}

fn trajectory_table(times: &[f64], states: &[OneExcitationState]) -> Table {
    let mut header = vec!["t_fs"];
    header.extend(COMPONENT_COLUMNS);
    let mut t = Table::new(&header);
    for (time, s) in times.iter().zip(states) {
        let mut row = vec![*time];
        for c in s.components() {
            row.push(snap(c.re));
            row.push(snap(c.im));
        }
        t.push_numbers(&row);
    }
    t
}

pub fn evolve(cfg: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let p = evolution_params(cfg)?;
    let tg = &cfg.time_grid;
    let times = tg.times();
    let rho0 = cfg.initial_state.in_basis(tg.basis, p.phi0);
    let analytic = analytic_trajectory(&rho0, &times, &p)?;
    let numeric = numeric_trajectory(&rho0, &times, tg.dt, &p)?;
    let mut diff = Table::new(&["t_fs", "sup_diff"]);
    let mut worst: f64 = 0.0;
    for ((t, a), n) in times.iter().zip(&analytic).zip(&numeric) {
        let d = a.sup_distance(n);
        worst = worst.max(d);
        diff.push_numbers(&[*t, d]);
    }
    write_table(
        &cfg.output,
        "evolve_analytic.csv",
        &trajectory_table(&times, &analytic),
    )?;
    write_table(
        &cfg.output,
        "evolve_numeric.csv",
        &trajectory_table(&times, &numeric),
    )?;
    write_table(&cfg.output, "evolve_diff.csv", &diff)?;
    key_value(
        out,
        &[
            ("gamma_fs1", p.gamma),
            ("nbar0", p.nbar0),
            ("omega_plus_cm1", p.omega_plus),
            ("omega_minus_cm1", p.omega_minus),
            ("max_sup_diff", worst),
        ],
    )
}

pub fn helix(cfg: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let h = &cfg.helix;
    let alpha = helix_attenuation(h.a_angstrom, h.v_m_s, h.j12)?;
    let gamma = decay_constant(alpha, cfg.bath.gamma_d);
    let rows = [
        ("a_angstrom", h.a_angstrom),
        ("v_m_s", h.v_m_s),
        ("j12_cm1", h.j12),
        ("alpha", alpha),
        ("inverse_alpha", 1.0 / alpha),
        ("gamma_fs1", gamma),
        (
            "lifetime_fs",
            if gamma > 0.0 {
                1.0 / gamma
            } else {
                f64::INFINITY
            },
        ),
    ];
    key_value(out, &rows)?;
    write_table(&cfg.output, "helix.csv", &quantity_value_table(&rows))?;
    Ok(())
}

pub fn renorm(cfg: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    if cfg.modes_csv.is_none() {
        return Err(CliError::Config(
            "`bath.modes_csv`: required by renorm".into(),
        ));
    }
    let frame = ExcitonFrame::new(&cfg.dimer)?;
    let shift = frequency_renormalization(&cfg.bath.modes, frame.omega0, cfg.bath.temperature)?;
    let (bar_plus, bar_minus) = shift.apply(frame.omega_plus, frame.omega_minus);
    let rows = [
        ("omega0_cm1", frame.omega0),
        ("delta_plus_cm1", shift.delta_plus),
        ("delta_minus_cm1", shift.delta_minus),
        ("omega_plus_cm1", frame.omega_plus),
        ("omega_minus_cm1", frame.omega_minus),
        ("omega_bar_plus_cm1", bar_plus),
        ("omega_bar_minus_cm1", bar_minus),
    ];
    key_value(out, &rows)?;
    write_table(&cfg.output, "renorm.csv", &quantity_value_table(&rows))?;
    Ok(())
}
