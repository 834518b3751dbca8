//! Capacity upper bounds and achievable rates as functions of the
//! relay-destination link capacity.

pub mod kernel;
mod search;
pub mod sweep;
pub mod upper;

pub use kernel::{
    h_at_right_angle, h_derivative_at_right_angle, h_drop_from_right_angle, h_theta, info_tension_rhs, Angle,
};
pub use sweep::{full_cooperation_curve, linear_grid, sweep, BoundCurve, BoundFamily, BoundPoint};
pub use upper::{
    cf_quantization_noise, cf_rate, cutset_bound, gap_certificate, minimize_over_omega, new_upper_bound,
    new_upper_bound_detailed, GapCertificate, NewBound, OmegaSearchResult,
};
