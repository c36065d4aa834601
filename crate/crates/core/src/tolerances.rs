//! Pinned tolerances shared by the harness and the acceptance suite.

/// Filter identities (sum, shift-orthogonality, vanishing moments).
pub const FILTER_IDENTITY: f64 = 1e-10;

/// Fast paths against the dense oracles, relative.
pub const ORACLE_RELATIVE: f64 = 1e-10;

/// `analyze(wavelet_at(j, ν)) = 1` for the Haar system.
pub const HAAR_NORMALIZATION: f64 = 1e-12;

/// Single-coefficient quasi-norms against `2^{js} 2^{-j/p}`.
pub const SINGLE_COEFFICIENT_NORM: f64 = 1e-12;

/// `T_N[f, 1]` rows against `D_N` rows, and transform rows against `E_N` rows.
pub const ROW_AGREEMENT: f64 = 1e-10;

/// Half-width of the admissible band for in-region profile slopes.
pub const FLAT_SLOPE: f64 = 0.1;

/// Minimum slope of the out-of-region `E_N - P_N` probes.
pub const GROWTH_SLOPE: f64 = 0.15;

/// Minimum rank correlation between active levels and the maximal
/// random-sign transform ratio.
pub const SPEARMAN_MIN: f64 = 0.8;

/// `|analyze(wavelet_at(j, ν))_{j,ν} - 1|` for the order-4 system at four
/// levels below the grid resolution.
pub const TAU_QUAD_L4_GAP4: f64 = 1e-4;
