//! Tau-function constructors.

mod genus;
mod orlov_shcherbin;
mod params;
mod plane;
mod plucker;
mod toda;

pub use genus::{genus_expansion, genus_part};
pub use orlov_shcherbin::{orlov_shcherbin_log, orlov_shcherbin_tau};
pub use params::{named_params, trivial_params, ContentWeights, Family, TauParams};
pub use plane::{plane_to_tau, LaurentPlane};
pub use plucker::plucker_g24_residual;
pub use toda::{double_hurwitz_tau, n_function, r0, toda_tau, TodaFamily, MAX_CHARGE};
