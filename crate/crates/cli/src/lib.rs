//! File formats, benchmark records, and built-in source graphs behind the
//! `spm` binary. The solvers themselves live in `spm-core`; this crate owns
//! everything that touches text and the filesystem.

pub mod bench;
pub mod builtins;
pub mod formats;
