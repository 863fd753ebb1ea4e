//! `verify`: recompute everything a run directory claims, using independent
//! code paths — content hashes, certificate arithmetic, and oracle
//! recomputation (direct phasor summation and direct quadrature, never the
//! producing FFT/Bernstein pipeline) for the numeric certificates.

use std::path::Path;

use num_traits::ToPrimitive;
use nullseries_core::interval::IntervalUnion;
use nullseries_core::io::{read_interval_json, read_nusr};
use nullseries_core::oracle::{direct_partial_sum, direct_quadrature_l2_sq};
use nullseries_core::{grid_size_for, Certificate, CoeffSeq, Error, Result};

use crate::manifest::{config_hash, hash_file, Manifest};

/// Direct-oracle maximum of |S_n| over sample points of every support part.
fn direct_sup_on(c: &CoeffSeq, n: u64, set: &IntervalUnion, per_part: usize) -> f64 {
    let mut worst = 0.0f64;
    for (a, b) in set.parts() {
        let (af, bf) = (a.to_f64().unwrap_or(0.0), b.to_f64().unwrap_or(0.0));
        for j in 0..=per_part {
            let x = af + (bf - af) * j as f64 / per_part as f64;
            let v = direct_partial_sum(c, n as usize, x).norm();
            if v > worst {
                worst = v;
            }
        }
    }
    worst
}

fn check_cert(
    cert: &Certificate,
    coeffs: &CoeffSeq,
    support: &IntervalUnion,
    n: u64,
    prev: Option<&CoeffSeq>,
    issues: &mut Vec<String>,
) {
    if !cert.holds() {
        issues.push(format!(
            "certificate arithmetic fails for {}: measured {} + correction {} > bound {}",
            cert.name, cert.measured, cert.correction, cert.bound
        ));
    }
    let tol = 1e-9 * (1.0 + cert.bound.abs());
    if cert.name.ends_with("partial_sum_on_support") || cert.name == "h_partial_sum_arc" {
        let set;
        let probe_set = if cert.name == "h_partial_sum_arc" {
            set = IntervalUnion::interval(
                nullseries_core::interval::rat(0, 1),
                nullseries_core::interval::rat(1, 2),
            )
            .expect("arc interval");
            &set
        } else {
            support
        };
        let direct = direct_sup_on(coeffs, n, probe_set, 64);
        if direct > cert.bound + tol {
            issues.push(format!(
                "oracle recomputation breaks {}: direct sup {} exceeds bound {}",
                cert.name, direct, cert.bound
            ));
        }
    } else if cert.name == "f_flat_spectrum" {
        let direct = coeffs.sup_coeff_norm_offcenter();
        if direct > cert.bound + tol {
            issues.push(format!(
                "oracle recomputation breaks {}: off-center sup {} exceeds bound {}",
                cert.name, direct, cert.bound
            ));
        }
    } else if cert.name == "stage_mean" || cert.name == "h_mean_exact" {
        let defect = (coeffs.get(0) - num_complex::Complex64::new(1.0, 0.0)).norm();
        if defect > cert.bound + 1e-15 {
            issues.push(format!(
                "{}: mean defect {} exceeds bound {}",
                cert.name, defect, cert.bound
            ));
        }
    } else if cert.name == "g_coeff_drift" {
        if let Some(p) = prev {
            let direct = coeffs.coeff_distance(p);
            if direct > cert.bound + tol {
                issues.push(format!(
                    "oracle recomputation breaks {}: drift {} exceeds bound {}",
                    cert.name, direct, cert.bound
                ));
            }
        }
    } else if cert.name == "h_hermitian" {
        let defect = coeffs.hermitian_defect();
        if defect > cert.bound + 1e-12 {
            issues.push(format!(
                "{}: hermitian defect {} exceeds bound {}",
                cert.name, defect, cert.bound
            ));
        }
    }
    // Remaining certificates (node residual, tails, sandwich bookkeeping) are
    // validated by their stored arithmetic plus the content hashes above.
}

/// Parseval integrity of a stored sequence via direct quadrature.
fn check_parseval(label: &str, c: &CoeffSeq, issues: &mut Vec<String>) {
    let deg = c.degree();
    if deg > 1 << 16 {
        return; // quadratic-cost oracle; covered at smaller scales
    }
    let lhs = c.l2_norm().powi(2);
    let rhs = direct_quadrature_l2_sq(c, deg, grid_size_for(deg));
    if (lhs - rhs).abs() > 1e-9 * lhs.max(1.0) {
        issues.push(format!(
            "{label}: Parseval mismatch: coefficients {lhs} vs quadrature {rhs}"
        ));
    }
}

pub fn run(dir: &Path) -> Result<()> {
    let manifest = Manifest::load(dir)?;
    let mut issues: Vec<String> = Vec::new();

    for out in &manifest.outputs {
        match hash_file(&dir.join(&out.path)) {
            Ok(h) if h == out.sha256 => {}
            Ok(h) => issues.push(format!(
                "hash mismatch for {}: manifest {} actual {h}",
                out.path, out.sha256
            )),
            Err(e) => issues.push(format!("cannot hash {}: {e}", out.path)),
        }
    }
    if config_hash(&manifest.config) != manifest.config_hash {
        issues.push("config hash does not match the stored configuration".to_string());
    }

    let mut stage_slacks = Vec::new();
    let mut prev: Option<CoeffSeq> = None;
    for stage in &manifest.stages {
        let coeffs = match read_nusr(&dir.join(&stage.coeff_file)) {
            Ok(c) => c,
            Err(e) => {
                issues.push(format!("cannot read {}: {e}", stage.coeff_file));
                prev = None;
                continue;
            }
        };
        let support = match read_interval_json(&dir.join(&stage.support_file)) {
            Ok(s) => s,
            Err(e) => {
                issues.push(format!("cannot read {}: {e}", stage.support_file));
                prev = None;
                continue;
            }
        };
        if support.measure().to_string() != stage.support_measure {
            issues.push(format!(
                "stage {}: stored support measure {} differs from manifest {}",
                stage.index,
                support.measure(),
                stage.support_measure
            ));
        }
        let mut min_slack = f64::INFINITY;
        for cert in &stage.certificates {
            min_slack = min_slack.min(cert.slack());
            check_cert(cert, &coeffs, &support, stage.n, prev.as_ref(), &mut issues);
        }
        check_parseval(&format!("stage {}", stage.index), &coeffs, &mut issues);
        stage_slacks.push(serde_json::json!({
            "index": stage.index,
            "min_slack": if min_slack.is_finite() { min_slack } else { 0.0 },
        }));
        prev = Some(coeffs);
    }

    for block in &manifest.blocks {
        let coeffs = match read_nusr(&dir.join(&block.coeff_file)) {
            Ok(c) => c,
            Err(e) => {
                issues.push(format!("cannot read {}: {e}", block.coeff_file));
                continue;
            }
        };
        let support = match read_interval_json(&dir.join(&block.support_file)) {
            Ok(s) => s,
            Err(e) => {
                issues.push(format!("cannot read {}: {e}", block.support_file));
                continue;
            }
        };
        let n = block.partial_index.unwrap_or(coeffs.degree() as u64);
        for cert in &block.certificates {
            check_cert(cert, &coeffs, &support, n, None, &mut issues);
        }
        check_parseval(&format!("block {}", block.kind), &coeffs, &mut issues);
    }

    if issues.is_empty() {
        let report = serde_json::json!({
            "status": "ok",
            "outputs_verified": manifest.outputs.len(),
            "stages": stage_slacks,
            "resource_failure": manifest.resource_failure,
        });
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
        Ok(())
    } else {
        let report = serde_json::json!({ "status": "failed", "issues": issues });
        eprintln!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
        Err(Error::certificate(format!(
            "verification failed with {} issue(s)",
            issues.len()
        )))
    }
}
