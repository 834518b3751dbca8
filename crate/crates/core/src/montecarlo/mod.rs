//! Monte Carlo checks of concentration, blowing-up and the extended
//! isoperimetric inequalities on spheres and shells.

pub mod estimate;
pub mod rng;
pub mod sampling;
pub mod sets;
pub mod verify;

pub use estimate::{estimate_intersection, Estimator, LogEstimate};
pub use rng::stream_rng;
pub use sampling::{basis_vector, normalized, sample_uniform_cap, sample_uniform_sphere, CapSampler};
pub use sets::{effective_angle, RadialLaw, SetShape, SetSpec, ShellSet};
pub use verify::{
    isoperimetry_shell, isoperimetry_sphere, verify_blowup, verify_concentration, verify_extended_isoperimetry_shell,
    verify_extended_isoperimetry_sphere, IsoperimetryOutcome, McConfig, McReport, Verdict,
};
