//! Residuals of the KP, Hirota and Toda equations.

mod hirota;
mod kp;
mod report;
mod toda;

pub use hirota::{hirota_q3, hirota_residual};
pub use kp::{
    deformed_kp1_residual, dispersionless_residual, equation_by_id, h1_linear_residual, kp_equations, kp_residuals, Equation, Term,
    DEFORMED_KP, DISPERSIONLESS_KP, H1_LINEAR, KP_EQUATIONS,
};
pub use report::ResidualReport;
pub use toda::{toda_residual, toda_residual_of};
