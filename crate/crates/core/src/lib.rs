//! Cut-and-project point sets from irrational strips, their discrepancy,
//! and exact decision procedures for bounded discrepancy.

pub mod acceptance;
pub mod bdmatch;
pub mod criteria;
pub mod discrepancy;
pub mod error;
pub mod exactnum;
mod kernel;
pub mod patterns;
pub mod suite;

pub use acceptance::{acceptance_domain, indicator_hits, pattern_density, AcceptanceDomain, PatternSpec};
pub use bdmatch::{build_witness, build_witness_for_pattern, matching_summary, optimality_check, MatchingWitness};
pub use criteria::{bd_verdict, boundary_classes, kesten_condition, oren_condition, OrenWitness, KestenWitness, Verdict};
pub use discrepancy::{
    cochain_discrepancy, disc, empirical_verdict, estimate_density, profile, profile_parallel, signed_disc, Cochain,
    DiscrepancyProfile, EmpiricalRule, EmpiricalVerdict, Schedule,
};
pub use error::{Error, Result};
pub use exactnum::{XiReal, XiSpec};
pub use patterns::{
    colored_hits, convex_hull_window, local_discrepancy, orbit_hits, strip_points, BoundaryPolicy, Color,
    Interval, PointPattern, RotationSystem, Window,
};
pub use suite::{run_suite, SuiteConfig, SuiteReport};
