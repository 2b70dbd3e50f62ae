//! The identity catalog and everything that runs it: verification of one
//! identity, parameter sweeps, report export, run configuration and the
//! self-test suite.

mod catalog;
pub mod config;
mod export;
mod id;
pub mod selftest;
mod verify;

pub use catalog::{list_identities, record, Bound, IdentityRecord, LhsKind, ParamDomain};
pub use export::{export, parse_json, ExportRow, Format, Summary, COLUMNS};
pub use id::IdentityId;
pub use verify::{params, sweep, verify, Params, VerificationReport};
