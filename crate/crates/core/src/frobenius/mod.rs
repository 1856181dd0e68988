//! Frobenius type structures: the axiom checker, the canonical limit
//! Frobenius manifold when all weights are 1, and the logarithmic section
//! tests along `x = 0`.

mod fts;
mod log;
mod manifold;

pub use fts::{family_fts, fts_axiom_check, fts_from_connection, FTSData};
pub use log::{log_structure, LogReport, SectionTest};
pub use manifold::{
    existdef_check, homogeneity_check, limit_manifold, structure_constants, wdvv_check,
    wdvv_report, FrobeniusData, Homogeneity,
};
