//! Functional-equation solvers and the `M_l(u)` production line.

mod checks;
mod h;
mod lambda;
mod z;

pub use checks::{
    consistency_check, expand_in_t, m_l_polys, negative_branch_witness, parity_check, parity_witness,
    power_sum_check, verify_factorization, Factorization,
};
pub use h::{chi_at_k1, egf_coeff, egf_row, h_at_k1, mu_table, solve_lambda, solve_lambda_undetermined, MuTable};
pub use lambda::{LambdaSpec, PhiSpec, Preset};
pub use z::{negate_u, residual, solve_z, z_coeff, Branch};
