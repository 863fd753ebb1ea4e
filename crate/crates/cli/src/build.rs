//! `build-block`: construct a single named block, optionally persist it with
//! a manifest, and print a JSON summary on stdout.

use std::path::{Path, PathBuf};
use std::time::Instant;

use nullseries_core::interval::IntervalUnion;
use nullseries_core::io::{write_interval_json, write_nusr};
use nullseries_core::{
    build_f, build_h, build_plateau, build_window, Certificate, CoeffSeq, Error,
    PrecisionContext, Result,
};

use crate::manifest::{Manifest, Timings};
use crate::{BlockKind, Profile};

fn interval_json(set: &IntervalUnion) -> serde_json::Value {
    serde_json::Value::Array(
        set.parts()
            .iter()
            .map(|(a, b)| serde_json::json!([a.to_string(), b.to_string()]))
            .collect(),
    )
}

fn check_certificates(certs: &[Certificate]) -> Result<()> {
    if let Some(c) = nullseries_core::cert::first_violation(certs) {
        return Err(Error::certificate(format!(
            "{}: measured {} + correction {} exceeds bound {}",
            c.name, c.measured, c.correction, c.bound
        )));
    }
    Ok(())
}

struct BuiltBlock {
    kind: &'static str,
    eps: f64,
    coeffs: CoeffSeq,
    support: IntervalUnion,
    partial_index: Option<u64>,
    certificates: Vec<Certificate>,
    extra: serde_json::Value,
}

fn persist(block: &BuiltBlock, dir: &Path, elapsed: f64) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    let coeff_file = format!("{}.nusr", block.kind);
    let support_file = format!("{}.support.json", block.kind);
    write_nusr(&dir.join(&coeff_file), &block.coeffs)?;
    write_interval_json(&dir.join(&support_file), &block.support)?;
    let mut manifest = Manifest::new(crate::config::RunConfig::from_stages(1, 53));
    manifest.record_output(dir, &coeff_file)?;
    manifest.record_output(dir, &support_file)?;
    manifest.blocks.push(crate::manifest::BlockRecord {
        kind: block.kind.to_string(),
        eps: block.eps,
        partial_index: block.partial_index,
        coeff_file,
        support_file,
        certificates: block.certificates.clone(),
    });
    manifest.write(dir)?;
    let mut timings = Timings::default();
    timings.push(&format!("build-block {}", block.kind), elapsed);
    timings.write(dir)?;
    Ok(())
}

pub fn run(
    kind: BlockKind,
    eps: f64,
    out: Option<PathBuf>,
    profile: Profile,
    precision: u32,
) -> Result<()> {
    let ctx = PrecisionContext::new(precision);
    let started = Instant::now();
    let block = match kind {
        BlockKind::H => {
            let h = build_h(eps, &ctx)?;
            BuiltBlock {
                kind: "h",
                eps,
                partial_index: Some(h.partial_index as u64),
                extra: serde_json::json!({
                    "arc_degree": h.arc_degree,
                    "m_nodes": h.m_nodes,
                    "l1_norm": h.l1_norm,
                    "condition": h.condition,
                    "precision_bits": h.precision_bits,
                }),
                coeffs: h.coeffs,
                support: h.support,
                certificates: h.certificates,
            }
        }
        BlockKind::F => {
            let f = build_f(eps, &ctx)?;
            BuiltBlock {
                kind: "f",
                eps,
                partial_index: Some(f.n),
                extra: serde_json::json!({ "n": f.n }),
                coeffs: f.coeffs,
                support: f.support,
                certificates: f.certificates,
            }
        }
        BlockKind::Plateau => {
            let u = build_plateau(eps, profile.class())?;
            BuiltBlock {
                kind: "plateau",
                eps,
                partial_index: None,
                extra: serde_json::json!({ "degree": u.coeffs.degree() }),
                coeffs: u.coeffs,
                support: u.support,
                certificates: u.certificates,
            }
        }
        BlockKind::Window => {
            // Window sized from eps: enough nodes that the cell width is
            // below eps, preserved band half the node count.
            let m = ((1.0 / eps).ceil() as usize).max(3) | 1;
            let q = build_window(m, m / 2, profile.class())?;
            BuiltBlock {
                kind: "window",
                eps,
                partial_index: None,
                extra: serde_json::json!({ "m_nodes": m, "degree": q.coeffs.degree() }),
                coeffs: q.coeffs,
                support: q.support,
                certificates: q.certificates,
            }
        }
    };
    let elapsed = started.elapsed().as_secs_f64();
    if let Some(dir) = &out {
        persist(&block, dir, elapsed)?;
    }
    let summary = serde_json::json!({
        "kind": block.kind,
        "eps": block.eps,
        "degree": block.coeffs.degree(),
        "mean": [block.coeffs.get(0).re, block.coeffs.get(0).im],
        "partial_index": block.partial_index,
        "support": interval_json(&block.support),
        "support_measure": block.support.measure().to_string(),
        "certificates": block.certificates,
        "details": block.extra,
        "seconds": elapsed,
    });
    println!("{}", serde_json::to_string_pretty(&summary).expect("summary serializes"));
    check_certificates(&block.certificates)
}
