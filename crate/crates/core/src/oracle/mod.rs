//! Dense verification of the symbolic engine on small chains.

pub mod checks;
pub mod choi;
pub mod dense;

pub use checks::{
    algebra_agreement, apply_agreement, dense_eta, fermionization_check, rep_q8_defect, AlgebraReport,
    ApplyReport, FermionReport, Q8Report,
};
pub use choi::{choi_check, kw_choi, kw_intertwiner, ChoiReport, StabilizerSet};
pub use dense::{realize, realize_periodic, Chain, DenseOperator, MonomialMatrix, MAX_DIM};
