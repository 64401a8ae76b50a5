//! The chapters of the cvx guide, compiled.
//!
//! Each module's documentation is one chapter from `book/src/`, included
//! verbatim, so `cargo test` executes every code block in the guide
//! against the current `cvx` API.  If a chapter drifts out of sync with
//! the library, the build breaks here — the book cannot quietly rot.
//!
//! Render the human-facing version with `mdbook build book/`.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/phase-space.md")]
pub mod phase_space {}

#[doc = include_str!("../../../book/src/fock-space.md")]
pub mod fock_space {}

#[doc = include_str!("../../../book/src/gaussification.md")]
pub mod gaussification {}

#[doc = include_str!("../../../book/src/extremality.md")]
pub mod extremality {}

#[doc = include_str!("../../../book/src/channels.md")]
pub mod channels {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
