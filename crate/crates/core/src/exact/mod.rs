//! Exact integer linear algebra: normal forms, lattices and finitely generated abelian groups.

mod group;
mod lattice;
mod matrix;
mod normal_form;

pub use group::{cokernel, FGAbelianGroup, GroupHom, Quotient};
pub use lattice::{saturation, solve_congruence_sublattice, Congruence, Lattice};
pub use matrix::{
    common_denominator, dot, gcd, gcd_all, int, ivec, json_int, json_int_vec, rational_solve, to_integral, DeInt, IntMatrix, JsonInt,
};
pub use normal_form::{hermite_normal_form, integer_kernel, invariant_factors, smith_normal_form, Hermite, Smith};
