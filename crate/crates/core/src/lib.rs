//! Exact overlap numbers of embedded hypergraphs and the bounded-degree
//! geometric expander constructions built around them.
//!
//! The crate is `no_std` and needs only `alloc`. File formats, the command
//! line and anything touching the operating system live in the companion
//! `geoverlap-cli` crate.

#![no_std]

extern crate alloc;

pub mod error;
pub mod exact;
pub mod experiments;
pub mod geom;
pub mod hypergraph;
pub mod partition;
pub mod regularity;
pub mod spectral;

pub use error::{Error, Result};
