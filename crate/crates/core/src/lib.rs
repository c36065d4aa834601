//! Dyadic averaging operators, Haar multipliers and Daubechies-wavelet
//! characterizations of Besov and Triebel–Lizorkin quasi-norms.
//!
//! The crate works with piecewise-constant functions on a finite dyadic
//! interval ([`grid::GridFunction`]) and with finitely supported wavelet
//! coefficient fields ([`analysis::CoefficientField`]). On top of those it
//! provides the conditional expectations `E_N`, martingale differences
//! `D_N = E_{N+1} - E_N`, Haar multipliers `T_N[f, a]`, discrete quasi-norms,
//! and a sweep harness ([`experiments`]) measuring operator-norm ratios.

pub mod analysis;
pub mod error;
pub mod experiments;
pub mod grid;
pub mod norms;
pub mod oracle;
pub mod tolerances;
pub mod wavelet;

pub use error::{Error, Result};
