//! Companion crate to `geomodels`: JSON wire formats, report rendering,
//! named fixtures, and the randomized verification sweeps behind the binary.

pub mod checks;
pub mod corpus;
pub mod formats;
pub mod report;
