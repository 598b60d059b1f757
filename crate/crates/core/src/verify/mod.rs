//! Randomized and exact checks of the constructions.
//!
//! Each check draws its inputs from [`SampleConfig`] through per-trial seeded
//! generators, so a run is reproducible bit for bit and every failure carries
//! a replayable witness.

mod checks;
pub mod exact;
mod report;
mod sample;

pub use checks::{
    case_count, check_classification, check_contact_chord, check_corners, check_decision_oracle, check_exact_mode,
    check_fit_oracle, check_identification, check_membership, check_region_table, check_representability,
    check_sign_symmetry, check_span_roundtrip, check_tangency, contact_chord_for_frame, tangency_residual,
    vertical_tangent_points, ChordOutcome, EXACT_FRAMES,
};
pub use exact::{exact_mode_evaluate, ExactIdentity, RationalFrame};
pub use report::{CheckReport, VerifyReport, MAX_WITNESSES};
pub use sample::{SampleConfig, Tolerances};

use crate::error::Result;

type Check = fn(&SampleConfig) -> CheckReport;

/// Every check, in report order.
pub const ALL_CHECKS: [(&str, Check); 13] = [
    ("membership", check_membership),
    ("tangency", check_tangency),
    ("corners", check_corners),
    ("sign_symmetry", check_sign_symmetry),
    ("identification", check_identification),
    ("representability", check_representability),
    ("span_roundtrip", check_span_roundtrip),
    ("region_table", check_region_table),
    ("contact_chord", check_contact_chord),
    ("fit_oracle", check_fit_oracle),
    ("decision_oracle", check_decision_oracle),
    ("classification", check_classification),
    ("exact_mode", check_exact_mode),
];

/// Runs every check on its own thread.
pub fn run_all(cfg: &SampleConfig) -> Result<VerifyReport> {
    cfg.validate()?;
    let checks = std::thread::scope(|s| {
        let handles: Vec<_> = ALL_CHECKS.iter().map(|(_, check)| s.spawn(move || check(cfg))).collect();
        handles.into_iter().map(|h| h.join().expect("check panicked")).collect()
    });
    Ok(VerifyReport { seed: cfg.seed, checks })
}
