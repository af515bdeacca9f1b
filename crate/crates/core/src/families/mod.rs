//! Orthogonal sets on a Levi subspace and the combinatorial functions,
//! volumes and lattice counts attached to them.

pub mod ehrhart;
pub mod gamma;
pub mod hull;
pub mod ortho;
pub mod volume;

pub use ehrhart::{
    a_priori_constant, count_on_lattice, dilation_period, ehrhart_table, exp_poly_constant_term,
    fit_quasi_polynomial, fitted_constant, hull_count, v_tilde_lattice, EhrhartRow,
    QuasiPolynomial,
};
pub use gamma::{
    delta, gamma_mg, gamma_mq, gamma_pq, partition_of_unity_check, support_bound_check,
    support_constant, tau, tau_hat, PartitionReport, SupportReport,
};
pub use hull::{hull_membership, Hull, Membership};
pub use ortho::{
    random_dominant, random_point, unit_dominant, Crossing, OrthoFixture, OrthogonalSet, SystemSpec,
};
pub use volume::{lattice_points, volume_analytic, volume_analytic_with, volume_polytope, AnalyticVolume};
