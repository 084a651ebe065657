//! Biholomorphic invariants of planar domains.
//!
//! The crate evaluates the Carathéodory distance of the annulus
//! `A_r = {r < |z| < 1}` through the Schottky–Klein prime function and,
//! independently, through the classical product formula on the symmetric
//! annulus `{1/R < |z| < R}`. On top of the distance it provides closed forms
//! for the squeezing function, the Fridman invariant and the injectivity
//! radius function of finitely punctured discs, the squeezing function of the
//! annulus, and a raster toolkit that samples Carathéodory balls and
//! classifies their topology.
//!
//! The [`harness`] module drives everything from the `holinv` binary.

pub mod annulus_metric;
pub mod error;
pub mod harness;
pub mod hyperbolic;
pub mod invariants;
pub mod prime;
pub mod topology;

pub use num_complex::Complex64;

pub use crate::annulus_metric::{
    caratheodory_annulus, normalize_annulus, simha_caratheodory, slit_map, tanh_c_minus_sqrt_r,
    DistanceValue, SimhaAnnulus,
};
pub use crate::error::{Error, Result};
pub use crate::hyperbolic::{
    disc_automorphism, mu, poincare_distance, pseudo_hyperbolic, ComplexPoint, RadiusPair,
    UnitDiscPoint,
};
pub use crate::invariants::{
    annulus_gap_report, fridman_h_from_H, fridman_injectivity_punctured_disc, general_upper_bound,
    squeezing_annulus, squeezing_punctured_disc, BaseDomain, CaratheodoryMetric, InvariantReport,
    PuncturedDomain, UnitDisc,
};
pub use crate::prime::{prime_omega, truncation_terms, AnnulusDomain, TruncationPolicy};
pub use crate::topology::{
    classify, connected_component_count, hole_count, is_simply_connected, sample_metric_ball,
    simple_connectivity_threshold, DistanceField, GridMask, GridSpec, Topology,
};
