//! Frontend plumbing for the `dihedrant` binary: the connection-set DSL,
//! JSON/text reports, the named verification suites and resumable scans.

pub mod dsl;
pub mod report;
pub mod scan;
pub mod verify;

use dihedrant_core::Error;

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const VERIFY_FAILED: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const RESOURCE: u8 = 3;
}

/// Exit code for a library error: resource caps map to [`exit::RESOURCE`],
/// a classification counterexample to [`exit::VERIFY_FAILED`], and invalid
/// input to [`exit::USAGE`].
pub fn exit_code_for(err: &Error) -> u8 {
    match err {
        e if e.is_resource() => exit::RESOURCE,
        Error::Counterexample(_) => exit::VERIFY_FAILED,
        _ => exit::USAGE,
    }
}
