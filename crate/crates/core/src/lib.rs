//! Core kernels for building and verifying trigonometric null series along a
//! subsequence: coefficient arithmetic, certified sup norms, exact support
//! algebra, smooth building blocks, the staged construction, and the
//! analysis/verification suite.

pub mod analysis;
pub mod builders;
pub mod cert;
pub mod coeffs;
pub mod construction;
pub mod error;
pub mod grid;
pub mod interval;
pub mod io;
pub mod mpfloat;
pub mod oracle;
pub mod precision;
pub mod profile;
pub mod pwpoly;
pub mod supnorm;

pub use analysis::{
    box_dimension, growth_check, localisation_error_spectrum, rajchman_gap, support_detect,
    thm2_rate, thm3_exponent, thm3_root, DimensionEstimate, GrowthReport, LocalisationReport,
    RateReport, SupportDetection,
};
pub use builders::arc::{build_arc_poly, capacity_probe, ArcPoly, CapacityPoint};
pub use builders::{build_plateau, build_smooth_cutoff, build_window, SmoothBlock};
pub use cert::Certificate;
pub use construction::{
    build_f, build_h, iterate_construction, iterate_construction_with, reduce_coeffs,
    ConstructionOutcome, HFunction, StageFunction,
};
pub use coeffs::{coeff_convolve, dilate, CoeffSeq};
pub use error::{Error, Result};
pub use grid::{grid_size_for, partial_sum_eval, GridSamples};
pub use interval::IntervalUnion;
pub use precision::PrecisionContext;
