//! Dixonian elliptic functions in exact arithmetic.

pub mod cli;
pub mod contfrac;
pub mod dixonian;
pub mod exact;
pub mod numeric;
pub mod perm;
pub mod urn;
