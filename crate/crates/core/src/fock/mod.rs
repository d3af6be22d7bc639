//! Charged free fermions on the partition basis.

pub mod basis;
pub mod checks;
pub mod ops;
pub mod vector;

pub use basis::{basis_states, BasisState, Maya};
pub use ops::{
    apply_bilinear, apply_current_exp, apply_diag_exp, apply_diag_power, apply_fermion, apply_q_l0,
    apply_transfer, apply_transfer_product, apply_vertex, apply_vertex_exp, charge_offset, Bilinear,
    DiagCoeffs, FermionKind, Limit, PlusMinus,
};
pub use vector::{expectation, Contraction, FockVector, Side};
