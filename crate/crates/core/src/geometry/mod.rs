//! Exact log-domain measures of spheres, caps, shells and ball
//! intersections, with their large-dimension exponents.

pub mod balls;
pub mod caps;
pub mod measure;
pub mod quadrature;
pub mod shell;
pub mod special;

pub use balls::{lambda_fn, log_ball_intersection_upper, log_solid_cap_volume, BallIntersection, BallPairSpec};
pub use caps::{
    intersection_exponent, ln_cap_fraction, ln_prob_interval, log_ball_volume, log_cap_area,
    log_cap_area_by_quadrature, log_cap_intersection, log_sphere_area, sin2_minus_cos2, CapIntersection, CapSpec,
};
pub use measure::{log2_add, LogMeasure, MeasureKind};
pub use shell::{
    log_radial_factor, log_shell_cap_volume, log_shell_volume, log_shellcap_intersection_bounds, shell_cap_exponents,
    ShellCapIntersection, ShellSpec,
};
pub use special::{ln_reg_inc_beta, reg_inc_beta};
