//! α- and Rényi-α divergences between densities, their kernel plug-in
//! estimators, and a closed-form Gaussian oracle.
//!
//! For densities `p`, `q` and order α ∉ {0, 1}:
//!
//! ```text
//! D_α(p, q) = (1/(α(1−α))) · {1 − ∫ (p/q)^α q dx}
//! R_α(p, q) = (1/(α−1)) · log ∫ p^α q^(1−α) dx
//! D_α       = (1/(α(α−1))) · {exp((α−1)·R_α) − 1}
//! ```
//!
//! Both integrals share the integrand `p^α q^(1−α)`, evaluated in log space
//! and integrated with composite Simpson on
//! [`Grid::STANDARD`](crate::quadrature::Grid::STANDARD)
//! widened to cover the effective support of both arguments. Plug-in values
//! are not clamped: a KDE estimate may come out slightly negative.

mod estimate;
mod model;
mod oracle;
mod order;

pub use estimate::{
    alpha_divergence, alpha_divergence_on, alpha_from_renyi, alpha_from_renyi_value,
    estimate_divergence, estimate_renyi_divergence, renyi_divergence, renyi_divergence_on,
    DivergenceEstimate, DivergenceKind,
};
pub(crate) use estimate::plug_in_pair;
pub use model::{DensityModel, Gaussian};
pub use oracle::{gaussian_alpha_oracle, gaussian_renyi_oracle};
pub use order::DivergenceOrder;
