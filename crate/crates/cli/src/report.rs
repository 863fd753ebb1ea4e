//! `report`: summarize a run directory and emit plot-ready CSV files with the
//! fixed schemas `x,value` (stage profile), `scale,count` (box counting of
//! the final support), and `k,bound,measured` (certificate audit).

use std::path::Path;

use nullseries_core::interval::{rat, Rat};
use nullseries_core::io::{read_interval_json, read_nusr};
use nullseries_core::{box_dimension, partial_sum_eval, Error, Result};

use crate::manifest::Manifest;

fn write_csv(path: &Path, header: &str, rows: &[String]) -> Result<()> {
    let mut text = String::from(header);
    text.push('\n');
    for row in rows {
        text.push_str(row);
        text.push('\n');
    }
    std::fs::write(path, text)?;
    Ok(())
}

pub fn run(dir: &Path) -> Result<()> {
    let manifest = Manifest::load(dir)?;
    let last = manifest
        .stages
        .last()
        .ok_or_else(|| Error::invalid("run directory has no completed stages to report on"))?;

    // Stage profile: |S_n| of the final completed stage on a uniform grid.
    let coeffs = read_nusr(&dir.join(&last.coeff_file))?;
    let grid = (manifest.config.grid as usize)
        .max(2 * (last.n as usize).min(coeffs.degree()) + 1)
        .next_power_of_two();
    let samples = partial_sum_eval(&coeffs, last.n as usize, grid)?;
    let profile_rows: Vec<String> = samples
        .values()
        .iter()
        .enumerate()
        .map(|(j, v)| format!("{},{}", j as f64 / grid as f64, v.norm()))
        .collect();
    write_csv(&dir.join("profile.csv"), "x,value", &profile_rows)?;

    // Box counting of the final support at dyadic scales.
    let support = read_interval_json(&dir.join(&last.support_file))?;
    let scales: Vec<Rat> = (4u32..=9).map(|e| rat(1, 1i64 << e)).collect();
    let est = box_dimension(&support, &scales)?;
    let count_rows: Vec<String> = est
        .scales
        .iter()
        .zip(&est.counts)
        .map(|(s, c)| format!("{s},{c}"))
        .collect();
    write_csv(&dir.join("boxdim.csv"), "scale,count", &count_rows)?;

    // Certificate audit across all stages: k is the stage index.
    let mut cert_rows = Vec::new();
    for stage in &manifest.stages {
        for cert in &stage.certificates {
            cert_rows.push(format!("{},{},{}", stage.index, cert.bound, cert.measured));
        }
    }
    write_csv(&dir.join("certificates.csv"), "k,bound,measured", &cert_rows)?;

    let min_slack = manifest
        .stages
        .iter()
        .flat_map(|s| s.certificates.iter().map(|c| c.slack()))
        .fold(f64::INFINITY, f64::min);
    let summary = serde_json::json!({
        "tool_version": manifest.tool_version,
        "stages_completed": manifest.stages.len(),
        "stages_requested": manifest.config.stages,
        "resource_failure": manifest.resource_failure,
        "final_stage": {
            "index": last.index,
            "n": last.n,
            "eps": last.eps,
            "degree": last.degree,
            "support_measure": last.support_measure,
            "box_dimension": est.dimension,
        },
        "min_certificate_slack": if min_slack.is_finite() { min_slack } else { 0.0 },
        "csv": ["profile.csv", "boxdim.csv", "certificates.csv"],
    });
    println!("{}", serde_json::to_string_pretty(&summary).expect("summary serializes"));
    Ok(())
}
