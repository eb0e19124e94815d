//! Hypocoercivity index of semi-dissipative matrices and the unitary
//! reductions that expose it.
//!
//! Two independent routes compute the index: the definiteness chain
//! `T_m = Σ_{j≤m} L_S^j L_H (L_S*)^j` ([`hc_index_definitional`]) and the
//! block count of the staircase form ([`hc_index_staircase`]).

mod block;
mod index;
mod staircase;

pub use block::{block_diagonalize, imaginary_axis_witness, BlockDiagonalForm};
pub use index::{
    hc_index_definitional, witness_profile, witness_profile_full, witness_vector, HcCertificate,
    HcIndex,
};
pub use staircase::{hc_index_staircase, staircase, staircase_of, RankDecision, StaircaseForm};
