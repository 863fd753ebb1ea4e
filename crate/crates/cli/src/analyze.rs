//! `analyze`: calculators and measurements over stored artifacts. All
//! subcommands print JSON to stdout; plot data goes to CSV files with the
//! fixed schemas `x,value`, `scale,count`, and `k,bound,measured`.

use std::path::{Path, PathBuf};

use clap::Subcommand;
use nullseries_core::interval::{rat, Rat};
use nullseries_core::io::{read_interval_json, read_nusr};
use nullseries_core::profile::SmoothnessClass;
use nullseries_core::{
    box_dimension, build_plateau, capacity_probe, growth_check, localisation_error_spectrum,
    rajchman_gap, support_detect, thm2_rate, thm3_exponent, thm3_root, Error, Result,
};

#[derive(Subcommand)]
pub enum AnalyzeCmd {
    /// The dimension threshold (sqrt(17) - 3)/2 where the growth exponent
    /// changes sign.
    Thm3Root,
    /// Growth exponent phi(d) at a given box dimension d in [0, 1].
    Thm3Exponent {
        #[arg(long)]
        d: f64,
    },
    /// r-chain and doubly-exponential rate for the dyadic subsequence 2^k.
    Thm2Rate {
        /// Use n_k = 2^k for k = 1..=K.
        #[arg(long, default_value_t = 40)]
        dyadic: u32,
    },
    /// Box-counting dimension of a stored support set.
    BoxDim {
        #[arg(long)]
        support: PathBuf,
        /// Scales are base^-e for e in min-exp..=max-exp.
        #[arg(long, default_value_t = 2)]
        base: i64,
        #[arg(long, default_value_t = 4)]
        min_exp: u32,
        #[arg(long, default_value_t = 10)]
        max_exp: u32,
        /// CSV plot data (`scale,count`).
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Partial-sum growth inequality report at scales r < s.
    Growth {
        #[arg(long)]
        nusr: PathBuf,
        #[arg(long)]
        support: PathBuf,
        #[arg(long)]
        r: u64,
        #[arg(long)]
        s: u64,
    },
    /// Monic-modulus capacity probe at the given degrees.
    Capacity {
        #[arg(long, value_delimiter = ',', default_values_t = [8usize, 16, 24])]
        degrees: Vec<usize>,
    },
    /// Uniform localisation gap against a plateau multiplier.
    Rajchman {
        #[arg(long)]
        nusr: PathBuf,
        /// Accuracy of the Gevrey plateau multiplier.
        #[arg(long)]
        phi_eps: f64,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 4096)]
        grid: u64,
    },
    /// Coefficient-space localisation error and its tail inequality.
    Localisation {
        #[arg(long)]
        nusr: PathBuf,
        #[arg(long)]
        phi_eps: f64,
        #[arg(long)]
        n: u64,
        /// CSV audit rows (`k,bound,measured`).
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Threshold-persistence support detection proxy.
    SupportDetect {
        #[arg(long)]
        nusr: PathBuf,
        #[arg(long, default_value_t = 64)]
        cells: u64,
        #[arg(long, value_delimiter = ',')]
        n_list: Vec<u64>,
        #[arg(long, value_delimiter = ',')]
        tau: Vec<f64>,
    },
}

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

fn print_json(v: serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(&v).expect("json serializes"));
}

pub fn run(cmd: AnalyzeCmd) -> Result<()> {
    match cmd {
        AnalyzeCmd::Thm3Root => {
            println!("{:.12}", thm3_root());
            Ok(())
        }
        AnalyzeCmd::Thm3Exponent { d } => {
            if !(0.0..=1.0).contains(&d) {
                return Err(Error::invalid("d must lie in [0, 1]"));
            }
            print_json(serde_json::json!({ "d": d, "exponent": thm3_exponent(d) }));
            Ok(())
        }
        AnalyzeCmd::Thm2Rate { dyadic } => {
            if dyadic < 2 || dyadic > 1020 {
                return Err(Error::invalid("dyadic exponent range must lie in [2, 1020]"));
            }
            let n_list: Vec<f64> = (1..=dyadic as i32).map(|k| 2f64.powi(k)).collect();
            let rep = thm2_rate(&n_list)?;
            print_json(serde_json::json!({
                "chain": rep.chain,
                "loglog_slope": rep.loglog_slope,
                "exponent_constant": rep.exponent_constant,
            }));
            Ok(())
        }
        AnalyzeCmd::BoxDim {
            support,
            base,
            min_exp,
            max_exp,
            csv,
        } => {
            if base < 2 || min_exp >= max_exp {
                return Err(Error::invalid("need base >= 2 and min-exp < max-exp"));
            }
            let set = read_interval_json(&support)?;
            let scales: Vec<Rat> = (min_exp..=max_exp)
                .map(|e| rat(1, base.pow(e)))
                .collect();
            let est = box_dimension(&set, &scales)?;
            if let Some(path) = csv {
                let rows: Vec<String> = est
                    .scales
                    .iter()
                    .zip(&est.counts)
                    .map(|(s, c)| format!("{},{}", s, c))
                    .collect();
                write_csv(&path, "scale,count", &rows)?;
            }
            print_json(serde_json::json!({
                "dimension": est.dimension,
                "fit_residual": est.fit_residual,
                "degenerate": est.degenerate,
                "scales": est.scales.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                "counts": est.counts,
            }));
            Ok(())
        }
        AnalyzeCmd::Growth { nusr, support, r, s } => {
            let c = read_nusr(&nusr)?;
            let set = read_interval_json(&support)?;
            let rep = growth_check(&c, &set, r, s)?;
            print_json(serde_json::json!({
                "r": rep.r,
                "s": rep.s,
                "norm_r": rep.norm_r,
                "norm_s": rep.norm_s,
                "rho": rep.rho,
                "inflation_measure": rep.inflation_measure,
                "rhs_sqrt_term": rep.rhs_sqrt_term,
                "rhs_decay_term": rep.rhs_decay_term,
                "minimal_constant": rep.minimal_constant,
                "scaling_flag": rep.scaling_flag,
            }));
            Ok(())
        }
        AnalyzeCmd::Capacity { degrees } => {
            let points = capacity_probe(&degrees)?;
            print_json(serde_json::json!({ "points": points }));
            Ok(())
        }
        AnalyzeCmd::Rajchman { nusr, phi_eps, n, grid } => {
            let c = read_nusr(&nusr)?;
            let phi = build_plateau(phi_eps, SmoothnessClass::Gevrey2)?;
            let gap = rajchman_gap(&c, &phi.coeffs, n, grid)?;
            print_json(serde_json::json!({
                "n": n,
                "phi_degree": phi.coeffs.degree(),
                "gap": gap,
            }));
            Ok(())
        }
        AnalyzeCmd::Localisation { nusr, phi_eps, n, csv } => {
            let c = read_nusr(&nusr)?;
            let phi = build_plateau(phi_eps, SmoothnessClass::Gevrey2)?;
            let rep = localisation_error_spectrum(&c, &phi.coeffs, n)?;
            if let Some(path) = csv {
                let rows: Vec<String> = rep
                    .offsets
                    .iter()
                    .map(|(k, bound, measured)| format!("{k},{bound},{measured}"))
                    .collect();
                write_csv(&path, "k,bound,measured", &rows)?;
            }
            print_json(serde_json::json!({
                "n": rep.n,
                "error_degree": rep.errors.degree(),
                "worst_slack": rep.worst_slack,
                "worst_offset": rep.worst_offset,
                "tail_ok": rep.tail_ok,
            }));
            if rep.tail_ok {
                Ok(())
            } else {
                Err(Error::certificate(format!(
                    "localisation tail inequality violated at offset {}",
                    rep.worst_offset
                )))
            }
        }
        AnalyzeCmd::SupportDetect { nusr, cells, n_list, tau } => {
            let c = read_nusr(&nusr)?;
            let det = support_detect(&c, &n_list, cells, &tau)?;
            print_json(serde_json::json!({
                "label": det.label,
                "cells": det.grid_cells,
                "measure": det.set.measure().to_string(),
                "parts": det
                    .set
                    .parts()
                    .iter()
                    .map(|(a, b)| vec![a.to_string(), b.to_string()])
                    .collect::<Vec<_>>(),
            }));
            Ok(())
        }
    }
}
