//! `construct`: run the staged construction, persist every completed stage,
//! and write the manifest. A stage hitting a resource cap is recorded in the
//! manifest (deterministically) and reported with exit code 3; certificate
//! violations exit 2.

use std::path::{Path, PathBuf};
use std::time::Instant;

use nullseries_core::io::{write_interval_json, write_nusr};
use nullseries_core::{iterate_construction_with, Error, PrecisionContext, Result, StageFunction};

use crate::config::RunConfig;
use crate::manifest::{Manifest, StageRecord, Timings};

fn stage_record(index: usize, stage: &StageFunction, coeff_file: &str, support_file: &str) -> StageRecord {
    StageRecord {
        index,
        n: stage.n,
        eps: stage.eps,
        degree: stage.coeffs.degree() as u64,
        support_measure: stage.support.measure().to_string(),
        coeff_file: coeff_file.to_string(),
        support_file: support_file.to_string(),
        certificates: stage.certificates.clone(),
    }
}

pub fn run(
    stages: Option<u32>,
    out: PathBuf,
    config_path: Option<PathBuf>,
    precision: u32,
) -> Result<()> {
    let config = match config_path {
        Some(p) => RunConfig::load(&p)?,
        None => {
            let k = stages.ok_or_else(|| Error::invalid("construct needs --stages or --config"))?;
            let cfg = RunConfig::from_stages(k, precision);
            cfg.validate()?;
            cfg
        }
    };
    let ctx = PrecisionContext::new(config.precision_bits);
    let started = Instant::now();
    let mut outcome =
        iterate_construction_with(config.stages as usize, config.eps.as_deref(), &ctx)?;
    // Enforce the configured degree budget on stored stages.
    if let Some(pos) = outcome
        .stages
        .iter()
        .position(|s| s.coeffs.degree() as u64 > config.degree_cap)
    {
        let deg = outcome.stages[pos].coeffs.degree();
        outcome.stages.truncate(pos);
        outcome.failure = Some(format!(
            "stage {}: degree {deg} exceeds the configured degree cap {}",
            pos + 1,
            config.degree_cap
        ));
    }
    let elapsed = started.elapsed().as_secs_f64();
    write_run(&out, config, &outcome.stages, outcome.failure.clone(), elapsed)?;
    // All stored certificates must hold; then the resource outcome decides.
    for s in &outcome.stages {
        if let Some(c) = nullseries_core::cert::first_violation(&s.certificates) {
            return Err(Error::certificate(format!(
                "stage n={}: {} measured {} + correction {} exceeds bound {}",
                s.n, c.name, c.measured, c.correction, c.bound
            )));
        }
    }
    match outcome.failure {
        Some(msg) => Err(Error::resource(msg)),
        None => Ok(()),
    }
}

fn write_run(
    dir: &Path,
    config: RunConfig,
    stages: &[StageFunction],
    failure: Option<String>,
    elapsed: f64,
) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    let mut manifest = Manifest::new(config);
    manifest.resource_failure = failure;
    for (i, stage) in stages.iter().enumerate() {
        let index = i + 1;
        let coeff_file = format!("stage_{index}.nusr");
        let support_file = format!("stage_{index}.support.json");
        write_nusr(&dir.join(&coeff_file), &stage.coeffs)?;
        write_interval_json(&dir.join(&support_file), &stage.support)?;
        manifest.record_output(dir, &coeff_file)?;
        manifest.record_output(dir, &support_file)?;
        manifest
            .stages
            .push(stage_record(index, stage, &coeff_file, &support_file));
    }
    manifest.write(dir)?;
    let mut timings = Timings::default();
    timings.push("construct", elapsed);
    timings.write(dir)?;
    let summary = serde_json::json!({
        "stages_completed": stages.len(),
        "stages_requested": manifest.config.stages,
        "resource_failure": manifest.resource_failure,
        "manifest": "manifest.json",
    });
    println!("{}", serde_json::to_string_pretty(&summary).expect("summary serializes"));
    Ok(())
}
