//! `charvar`: command-line front end for the character-variety toolkit.
//!
//! Exit codes: 0 success, 1 check failure, 2 usage error, 3 resource limit.
//! JSON output uses the record types in [`records`] and the library's own
//! report types, so it deserializes and re-serializes byte for byte.

pub mod args;
pub mod cli;
pub mod commands;
pub mod error;
pub mod records;
pub mod verify;
