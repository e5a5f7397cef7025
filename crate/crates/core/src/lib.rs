//! Physical-layer security toolkit for BPSK satellite wiretap links.
//!
//! Covers link geometry, BI-AWGN secrecy capacity, finite-length leakage
//! bounds, a Toeplitz-hash coset wiretap code, and Monte-Carlo / exact
//! simulation oracles.

pub mod bits;
pub mod channel;
pub mod error;
pub mod figures;
pub mod finite_length;
pub mod geometry;
pub mod quadrature;
pub mod report;
pub mod secrecy_capacity;
pub mod sim;
pub mod wiretap_code;

pub use bits::BitWord;
pub use channel::{BiAwgn, BpskSymbol, WiretapChannelParams};
pub use error::{Error, Result};
pub use finite_length::{CodeParams, LeakageBound};
pub use geometry::GeometryConfig;
pub use report::Table;
pub use secrecy_capacity::CapacityResult;
