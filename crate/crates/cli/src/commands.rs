use std::collections::HashMap;

use anyhow::{bail, Context, Result};
use twosided::experiments::{run_condnum, CondnumConfig, CondnumVariant};
use twosided::sampling::{
    assemble, gen_equispaced, recover as recover_coeffs, singular_value_ratio, synthesize,
    GridMode, SamplingScheme, DEFAULT_RATIO_TOL,
};
use twosided::specmon::{run_scenario, run_trial, ScenarioConfig};
use twosided::uniqueness::heatmap_scan;
use twosided::C64;

use crate::format::{flag, num, sibling, writer};
use crate::inputs::{parse_family, read_measurements, read_nodes, Domain};
use crate::{execution, Experiment, RecoverArgs, RunArgs};

const REFERENCE_NMSE: [f64; 3] = [0.62, 0.37, 0.25];

pub fn run(args: &RunArgs) -> Result<()> {
    match args.experiment {
        Experiment::Heatmap => heatmap(args),
        Experiment::Specmon => specmon(args),
        Experiment::CondnumHermite => condnum(args, CondnumVariant::Hermite),
        Experiment::CondnumSharedInterval => condnum(args, CondnumVariant::SharedInterval),
        Experiment::CondnumDftPost => condnum(args, CondnumVariant::DftPost),
        Experiment::CondnumSinc => condnum(args, CondnumVariant::Sinc),
    }
}

fn heatmap(args: &RunArgs) -> Result<()> {
    if args.resolution < 2 {
        bail!("--resolution must be at least 2");
    }
    let grid = gen_equispaced(
        args.grid_min,
        args.grid_max,
        args.resolution,
        GridMode::InclusiveEndpoints,
    )?;
    let map = heatmap_scan(args.t0, &grid, args.ratio_tol, execution(args.sequential))?;
    let mut w = writer(&args.out)?;
    w.write_record(["omega0", "omega1", "log_ratio", "singular_flag"])?;
    let mut flagged = 0usize;
    for (i, &a) in grid.iter().enumerate() {
        for (j, &b) in grid.iter().enumerate() {
            flagged += map.is_singular(i, j) as usize;
            w.write_record([
                num(a),
                num(b),
                num(map.log_ratio_at(i, j)),
                flag(map.is_singular(i, j)).into(),
            ])?;
        }
    }
    w.flush()?;
    println!(
        "heatmap t0={} on {}x{} grid: {flagged} entries flagged",
        args.t0, args.resolution, args.resolution
    );
    Ok(())
}

fn condnum(args: &RunArgs, variant: CondnumVariant) -> Result<()> {
    let (lo, hi, step) = match variant {
        CondnumVariant::Hermite => (4, 24, 2),
        CondnumVariant::SharedInterval => (2, 24, 1),
        CondnumVariant::DftPost | CondnumVariant::Sinc => (4, 24, 1),
    };
    let mut config =
        CondnumConfig::new(variant, args.d_min.unwrap_or(lo), args.d_max.unwrap_or(hi));
    config.d_step = args.d_step.unwrap_or(step);
    if config.d_step == 0 {
        bail!("--d-step must be positive");
    }
    config.seed = args.seed;
    if let Some(mode) = args.grid_mode {
        config.grid_mode = mode.into();
    }
    let rows = run_condnum(&config, execution(args.sequential))?;

    let mut header = vec!["D", "cond_one_sided", "cond_two_sided"];
    header.extend(variant.extra_column());
    header.extend(["one_sided_singular", "two_sided_singular"]);
    let extra_flag = variant
        .extra_column()
        .map(|c| format!("{}_singular", c.trim_start_matches("cond_")));
    if let Some(f) = &extra_flag {
        header.push(f);
    }

    let mut w = writer(&args.out)?;
    w.write_record(&header)?;
    for r in &rows {
        let mut rec = vec![
            r.d.to_string(),
            num(r.one_sided.value),
            num(r.two_sided.value),
        ];
        rec.extend(r.extra.map(|e| num(e.value)));
        rec.push(flag(r.one_sided.singular).into());
        rec.push(flag(r.two_sided.singular).into());
        rec.extend(r.extra.map(|e| flag(e.singular).to_string()));
        w.write_record(&rec)?;
    }
    w.flush()?;
    println!(
        "{}: {} rows written to {}",
        variant.name(),
        rows.len(),
        args.out.display()
    );
    Ok(())
}

fn specmon(args: &RunArgs) -> Result<()> {
    let config = ScenarioConfig {
        window_len: args.window,
        snr: args.snr,
        snr_is_db: args.snr_db,
        trials: args.trials,
        seed: args.seed,
        ..ScenarioConfig::default()
    };
    let report = run_scenario(&config, execution(args.sequential))?;
    let first = run_trial(&config, 0)?;

    let mut w = writer(&args.out)?;
    w.write_record([
        "index",
        "truth",
        "recon_time_only",
        "recon_plus2",
        "recon_plus4",
    ])?;
    for m in 0..config.window_len {
        let [a, b, c] = &first.reconstructions;
        w.write_record([
            m.to_string(),
            num(first.truth[m]),
            num(a[m]),
            num(b[m]),
            num(c[m]),
        ])?;
    }
    w.flush()?;

    let summary_path = sibling(&args.out, "_summary");
    let mut s = writer(&summary_path)?;
    s.write_record([
        "window",
        "trials",
        "seed",
        "snr",
        "snr_db",
        "nmse_time_only",
        "nmse_plus2",
        "nmse_plus4",
    ])?;
    s.write_record([
        config.window_len.to_string(),
        report.trials.to_string(),
        report.seed.to_string(),
        num(config.snr),
        flag(config.snr_is_db).into(),
        num(report.nmse_time_only),
        num(report.nmse_plus2),
        num(report.nmse_plus4),
    ])?;
    s.flush()?;

    println!(
        "mean NMSE over {} trials: time-only {:.4}, +2 bins {:.4}, +4 bins {:.4} (reference {} / {} / {})",
        report.trials,
        report.nmse_time_only,
        report.nmse_plus2,
        report.nmse_plus4,
        REFERENCE_NMSE[0],
        REFERENCE_NMSE[1],
        REFERENCE_NMSE[2]
    );
    Ok(())
}

pub fn recover(args: &RecoverArgs) -> Result<()> {
    let family = parse_family(&args.family)?;
    let nodes = read_nodes(&args.nodes)?;
    let measurements = read_measurements(&args.measurements)?;

    let mut lookup: HashMap<(bool, u64), C64> = HashMap::new();
    for m in &measurements {
        let key = (m.domain == Domain::Time, m.node.to_bits());
        if lookup.insert(key, m.value).is_some() {
            bail!(
                "{}: duplicate measurement at node {}",
                args.measurements.display(),
                m.node
            );
        }
    }
    let pick = |d: Domain| {
        nodes
            .iter()
            .filter(move |n| n.0 == d)
            .map(|n| n.1)
            .collect::<Vec<_>>()
    };
    let scheme = SamplingScheme::new(pick(Domain::Time), pick(Domain::Freq))
        .with_context(|| format!("invalid node set in {}", args.nodes.display()))?;
    let values = |is_time: bool, xs: &[f64]| -> Result<Vec<C64>> {
        xs.iter()
            .map(|&x| {
                lookup
                    .get(&(is_time, x.to_bits()))
                    .copied()
                    .with_context(|| {
                        format!(
                            "{}: no measurement for {} node {x}",
                            args.measurements.display(),
                            if is_time { "T" } else { "F" }
                        )
                    })
            })
            .collect()
    };
    let c = values(true, scheme.time_nodes())?;
    let c_hat = values(false, scheme.freq_nodes())?;
    if measurements.len() != scheme.len() {
        bail!(
            "{}: {} measurements for {} nodes",
            args.measurements.display(),
            measurements.len(),
            scheme.len()
        );
    }

    let system = assemble(&family, &scheme)?;
    let ratio = singular_value_ratio(&system.matrix)?;
    let (rows, cols) = system.matrix.shape();
    if rows < cols {
        eprintln!(
            "warning: {rows} samples for {cols} unknowns; returning the minimum-norm solution"
        );
    } else if ratio < DEFAULT_RATIO_TOL {
        eprintln!(
            "warning: sampling system is numerically singular (sigma_min/sigma_max = {ratio:.3e}); returning the minimum-norm solution"
        );
    }
    let coeffs = recover_coeffs(&system, &c, &c_hat, args.rtol)?;

    let mut w = writer(&args.out)?;
    w.write_record(["n", "re", "im"])?;
    for (n, a) in coeffs.iter().enumerate() {
        w.write_record([n.to_string(), num(a.re), num(a.im)])?;
    }
    w.flush()?;

    if args.grid_points < 2 {
        bail!("--grid-points must be at least 2");
    }
    let grid = gen_equispaced(
        args.grid_min,
        args.grid_max,
        args.grid_points,
        GridMode::InclusiveEndpoints,
    )?;
    let values = synthesize(&family, &coeffs, &grid)?;
    let mut g = writer(&sibling(&args.out, "_synth"))?;
    g.write_record(["t", "re", "im"])?;
    for (t, v) in grid.iter().zip(&values) {
        g.write_record([num(*t), num(v.re), num(v.im)])?;
    }
    g.flush()?;
    println!(
        "recovered {} coefficients from {} samples",
        coeffs.len(),
        scheme.len()
    );
    Ok(())
}
