//! Command-line front end for `leveling-core`: instance files, problem class
//! dispatch, random generation, oracle sweeps and reductions.

pub mod dispatch;
pub mod format;
pub mod generate;
pub mod reduce;
pub mod verify;
