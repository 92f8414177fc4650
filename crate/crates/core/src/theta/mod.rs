//! Jacobi theta functions on the imaginary axis, exact q-series and theta
//! series of Construction A and periodic packings.

mod jacobi;
mod packing;
mod qseries;

pub use jacobi::{
    jacobi_theta, s_of_tau, t_of_tau, t_product_form, tau_of_t, theta_pair_34, ThetaKind, ThetaValue,
};
pub use packing::{
    theta_construction_a_numeric, theta_construction_a_series, theta_periodic_packing, PeriodicPacking,
    DEFAULT_ORDER,
};
pub use qseries::QSeries;
pub(crate) use packing::homogeneous_eval;
