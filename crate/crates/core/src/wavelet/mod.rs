//! Compactly supported Daubechies wavelet systems.
//!
//! Filters are tabulated (minimum phase, orders 1 through 10) and checked
//! against their algebraic identities by [`verify_filter_identities`]. The
//! scaling function and the wavelet are sampled on dyadic points with the
//! cascade scheme: exact values at the integers from the refinement
//! eigenproblem, then repeated application of the two-scale relation.

mod table;

use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Largest supported cascade depth.
pub const MAX_DEPTH: u32 = 24;

/// Highest tabulated order.
pub const MAX_ORDER: usize = 10;

/// Default order used by the experiment harness.
pub const DEFAULT_ORDER: usize = 4;

/// Tolerance for the sum and shift-orthogonality identities.
pub const FILTER_TOL: f64 = 1e-12;

/// Tolerance for the discrete vanishing moments of the highpass filter.
pub const MOMENT_TOL: f64 = 1e-10;

/// Hölder exponents of the Daubechies scaling functions (literature values,
/// order 1 through 10). Order 1 is discontinuous.
const HOELDER_EXPONENT: [f64; MAX_ORDER] = [
    0.0, 0.5500, 1.0878, 1.6179, 1.9690, 2.1891, 2.4604, 2.7608, 3.0736, 3.3614,
];

/// Lowpass/highpass pair of a Daubechies filter with `order` vanishing moments.
#[derive(Clone, Debug, PartialEq)]
pub struct FilterPair {
    order: usize,
    lowpass: Vec<f64>,
    highpass: Vec<f64>,
}

impl FilterPair {
    /// Builds a pair from an arbitrary lowpass filter; the highpass filter is
    /// the quadrature mirror `g_k = (-1)^k h_{2L-1-k}`. No identity is checked.
    pub fn from_lowpass(lowpass: Vec<f64>) -> Result<Self> {
        if lowpass.is_empty() || !lowpass.len().is_multiple_of(2) {
            return Err(Error::InvalidValue(format!(
                "lowpass filter must have even positive length, got {}",
                lowpass.len()
            )));
        }
        let n = lowpass.len();
        let highpass = (0..n)
            .map(|k| {
                let v = lowpass[n - 1 - k];
                if k % 2 == 0 {
                    v
                } else {
                    -v
                }
            })
            .collect();
        Ok(Self {
            order: n / 2,
            lowpass,
            highpass,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn lowpass(&self) -> &[f64] {
        &self.lowpass
    }

    pub fn highpass(&self) -> &[f64] {
        &self.highpass
    }

    /// Length of the support of the scaling function and of the wavelet.
    pub fn support_width(&self) -> usize {
        2 * self.order - 1
    }
}

/// Tabulated minimum-phase Daubechies filter of the given order.
pub fn daubechies_filter(order: usize) -> Result<FilterPair> {
    if !(1..=MAX_ORDER).contains(&order) {
        return Err(Error::UnsupportedOrder(order));
    }
    FilterPair::from_lowpass(table::DAUBECHIES_LOWPASS[order - 1].to_vec())
}

/// Tabulated Hölder exponent of the scaling function of the given order.
pub fn hoelder_exponent(order: usize) -> Result<f64> {
    if !(1..=MAX_ORDER).contains(&order) {
        return Err(Error::UnsupportedOrder(order));
    }
    Ok(HOELDER_EXPONENT[order - 1])
}

/// Maximum absolute residual of each identity class of a [`FilterPair`].
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityReport {
    pub order: usize,
    /// `|Σ h_k - √2|`
    pub sum: f64,
    /// `max_m |Σ h_k h_{k+2m} - δ_{m0}|`
    pub orthogonality: f64,
    /// `max_{m<L} |Σ x_k^m g_k|` with `x_k` the filter index recentred and
    /// scaled into `[-1, 1]`.
    pub vanishing_moments: f64,
    /// `max_k |g_k - (-1)^k h_{2L-1-k}|`
    pub mirror: f64,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.sum < FILTER_TOL
            && self.orthogonality < FILTER_TOL
            && self.vanishing_moments < MOMENT_TOL
            && self.mirror == 0.0
    }
}

/// Measures how far a filter pair is from satisfying the Daubechies identities.
///
/// Vanishing moments are evaluated on the abscissa `(k - c) / c`,
/// `c = (2L - 1) / 2`. Vanishing of the first `L` moments does not depend on
/// an affine change of abscissa, and the rescaled sums stay well conditioned
/// for long filters where raw powers `k^m` would reach `19^9`.
pub fn verify_filter_identities(fp: &FilterPair) -> IdentityReport {
    let h = &fp.lowpass;
    let g = &fp.highpass;
    let n = h.len();

    let sum = (h.iter().sum::<f64>() - SQRT_2).abs();

    let mut orthogonality: f64 = 0.0;
    for m in 0..n / 2 {
        let shift = 2 * m;
        let dot: f64 = (0..n - shift).map(|k| h[k] * h[k + shift]).sum();
        let target = if m == 0 { 1.0 } else { 0.0 };
        orthogonality = orthogonality.max((dot - target).abs());
    }

    let centre = (n as f64 - 1.0) / 2.0;
    let scale = if centre > 0.0 { centre } else { 1.0 };
    let mut vanishing_moments: f64 = 0.0;
    for m in 0..fp.order {
        let moment: f64 = g
            .iter()
            .enumerate()
            .map(|(k, gk)| ((k as f64 - centre) / scale).powi(m as i32) * gk)
            .sum();
        vanishing_moments = vanishing_moments.max(moment.abs());
    }

    let mirror = (0..n)
        .map(|k| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            (g[k] - sign * h[n - 1 - k]).abs()
        })
        .fold(0.0, f64::max);

    IdentityReport {
        order: fp.order,
        sum,
        orthogonality,
        vanishing_moments,
        mirror,
    }
}

/// Scaling function `ψ₀` and wavelet `ψ` sampled at spacing `2^{-depth}`.
///
/// Both are stored on `[0, 2L - 1]`: sample `i` is the value at `i·2^{-depth}`.
#[derive(Clone, Debug)]
pub struct SampledWavelet {
    filter: FilterPair,
    depth: u32,
    phi: Vec<f64>,
    psi: Vec<f64>,
    hoelder: f64,
}

impl SampledWavelet {
    pub fn filter(&self) -> &FilterPair {
        &self.filter
    }

    pub fn order(&self) -> usize {
        self.filter.order
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn phi_samples(&self) -> &[f64] {
        &self.phi
    }

    pub fn psi_samples(&self) -> &[f64] {
        &self.psi
    }

    /// Tabulated Hölder exponent `K_est` of the family.
    pub fn smoothness_estimate(&self) -> f64 {
        self.hoelder
    }

    /// Support width `2L - 1`, shared by `ψ₀` and `ψ`.
    pub fn support_width(&self) -> usize {
        self.filter.support_width()
    }

    /// `2^{-m} Σ ψ₀(i 2^{-m})`
    pub fn phi_mass(&self) -> f64 {
        self.phi.iter().sum::<f64>() / (1u64 << self.depth) as f64
    }

    /// `2^{-m} Σ ψ(i 2^{-m})`
    pub fn psi_mass(&self) -> f64 {
        self.psi.iter().sum::<f64>() / (1u64 << self.depth) as f64
    }
}

/// Values of the scaling function at the integers `0..=2L-1`, normalized to
/// sum to one.
fn integer_values(fp: &FilterPair) -> Result<Vec<f64>> {
    let width = fp.support_width();
    if fp.order == 1 {
        // Right-continuous indicator of [0, 1).
        return Ok(vec![1.0, 0.0]);
    }
    // Unknowns φ(1..=width-1); φ vanishes at both ends of its support.
    let h = &fp.lowpass;
    let n = width - 1;
    let coef = |row: usize, col: usize| -> f64 {
        let k = 2 * row as i64 - col as i64;
        if (0..h.len() as i64).contains(&k) {
            SQRT_2 * h[k as usize]
        } else {
            0.0
        }
    };
    let mut system = DMatrix::<f64>::zeros(n, n);
    for r in 0..n {
        for c in 0..n {
            system[(r, c)] = coef(r + 1, c + 1) - if r == c { 1.0 } else { 0.0 };
        }
    }
    // Column sums of the refinement block are one, so any row of (A - I) is
    // redundant; the last one is traded for the normalization Σ φ(k) = 1.
    let mut rhs = DVector::<f64>::zeros(n);
    for c in 0..n {
        system[(n - 1, c)] = 1.0;
    }
    rhs[n - 1] = 1.0;
    let solution = system
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::Construction(format!("singular system for order {}", fp.order)))?;

    let mut values = vec![0.0; width + 1];
    values[1..=n].copy_from_slice(solution.as_slice());

    let residual = (1..=n)
        .map(|r| {
            let lhs: f64 = (1..=n).map(|c| coef(r, c) * values[c]).sum();
            (lhs - values[r]).abs()
        })
        .fold(0.0, f64::max);
    if !residual.is_finite() || residual > 1e-12 {
        return Err(Error::Construction(format!(
            "eigen-residual {residual:e} for order {}",
            fp.order
        )));
    }
    Ok(values)
}

/// Samples `ψ₀` and `ψ` on the dyadic points of spacing `2^{-depth}`.
pub fn cascade_sample(fp: &FilterPair, depth: u32) -> Result<SampledWavelet> {
    if depth > MAX_DEPTH {
        return Err(Error::DepthLimit(depth));
    }
    let width = fp.support_width();

    // Refinement mask √2·h_k, formed by division so that the Haar mask is exactly (1, 1).
    let mask: Vec<f64> = fp.lowpass.iter().map(|h| h / FRAC_1_SQRT_2).collect();
    let mut phi = integer_values(fp)?;
    for level in 0..depth {
        // `phi` holds samples at spacing 2^{-level}; odd points of the next
        // lattice come from φ(x) = √2 Σ h_k φ(2x - k).
        let step = 1i64 << level;
        let len = width * (1usize << (level + 1)) + 1;
        let mut next = vec![0.0; len];
        for (i, slot) in next.iter_mut().enumerate() {
            if i % 2 == 0 {
                *slot = phi[i / 2];
            } else {
                *slot = mask
                    .iter()
                    .enumerate()
                    .map(|(k, ck)| ck * sample(&phi, i as i64 - k as i64 * step))
                    .sum::<f64>();
            }
        }
        phi = next;
    }

    let step = 1i64 << depth;
    let wavelet_mask: Vec<f64> = fp.highpass.iter().map(|g| g / FRAC_1_SQRT_2).collect();
    let psi = (0..phi.len())
        .map(|i| {
            wavelet_mask
                .iter()
                .enumerate()
                .map(|(k, ck)| ck * sample(&phi, 2 * i as i64 - k as i64 * step))
                .sum::<f64>()
        })
        .collect();

    Ok(SampledWavelet {
        filter: fp.clone(),
        depth,
        phi,
        psi,
        hoelder: hoelder_exponent(fp.order).unwrap_or(0.0),
    })
}

#[inline]
fn sample(values: &[f64], index: i64) -> f64 {
    if index < 0 {
        0.0
    } else {
        values.get(index as usize).copied().unwrap_or(0.0)
    }
}

/// Riemann sum of `∫ x^k ψ(x) dx` at the sampling spacing.
pub fn moment(sw: &SampledWavelet, k: u32) -> f64 {
    let spacing = 1.0 / (1u64 << sw.depth) as f64;
    sw.psi
        .iter()
        .enumerate()
        .map(|(i, v)| (i as f64 * spacing).powi(k as i32) * v)
        .sum::<f64>()
        * spacing
}

/// Convenience: tabulated filter of `order` sampled at `depth`.
pub fn daubechies_system(order: usize, depth: u32) -> Result<SampledWavelet> {
    cascade_sample(&daubechies_filter(order)?, depth)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    #[allow(clippy::approx_constant, clippy::excessive_precision)]
    fn haar_filter_is_two_copies_of_inverse_sqrt2() {
        let fp = daubechies_filter(1).unwrap();
        assert_eq!(fp.lowpass(), &[0.70710678118654752, 0.70710678118654752]);
        assert_eq!(fp.highpass(), &[0.70710678118654752, -0.70710678118654752]);
    }

    #[test]
    fn order_two_closed_form() {
        let fp = daubechies_filter(2).unwrap();
        let r3 = 3f64.sqrt();
        let expected = [
            (1.0 + r3) / (4.0 * SQRT_2),
            (3.0 + r3) / (4.0 * SQRT_2),
            (3.0 - r3) / (4.0 * SQRT_2),
            (1.0 - r3) / (4.0 * SQRT_2),
        ];
        for (h, e) in fp.lowpass().iter().zip(expected) {
            assert_abs_diff_eq!(*h, e, epsilon = 1e-15);
        }
        assert_abs_diff_eq!(fp.lowpass()[0], 0.4829629131445341, epsilon = 1e-15);
    }

    #[test]
    fn unsupported_orders() {
        assert!(matches!(daubechies_filter(0), Err(Error::UnsupportedOrder(0))));
        assert!(matches!(daubechies_filter(11), Err(Error::UnsupportedOrder(11))));
    }

    #[test]
    fn every_order_passes_identities() {
        for order in 1..=MAX_ORDER {
            let report = verify_filter_identities(&daubechies_filter(order).unwrap());
            assert!(report.passed(), "{report:?}");
        }
    }

    #[test]
    fn haar_residuals_are_tiny() {
        let r = verify_filter_identities(&daubechies_filter(1).unwrap());
        assert!(r.sum < 1e-15 && r.orthogonality < 1e-15 && r.vanishing_moments < 1e-15);
    }

    #[test]
    fn perturbed_filter_fails() {
        let mut h = daubechies_filter(4).unwrap().lowpass().to_vec();
        h[0] += 1e-3;
        let report = verify_filter_identities(&FilterPair::from_lowpass(h).unwrap());
        assert!(!report.passed());
        assert!(report.sum > 5e-4);
    }

    #[test]
    fn odd_length_rejected() {
        assert!(FilterPair::from_lowpass(vec![1.0, 2.0, 3.0]).is_err());
    }

    #[test]
    fn haar_cascade_is_indicator() {
        let sw = daubechies_system(1, 3).unwrap();
        let phi = sw.phi_samples();
        assert_eq!(phi.len(), 9);
        assert!(phi[..8].iter().all(|&v| v == 1.0));
        assert_eq!(phi[8], 0.0);
        let psi = sw.psi_samples();
        assert!(psi[..4].iter().all(|&v| v == 1.0));
        assert!(psi[4..8].iter().all(|&v| v == -1.0));
        assert_eq!(psi[8], 0.0);
    }

    #[test]
    fn sample_counts() {
        for order in [1, 2, 4, 7] {
            let sw = daubechies_system(order, 5).unwrap();
            let expected = (2 * order - 1) * 32 + 1;
            assert_eq!(sw.phi_samples().len(), expected);
            assert_eq!(sw.psi_samples().len(), expected);
        }
    }

    #[test]
    fn depth_guard() {
        let fp = daubechies_filter(2).unwrap();
        assert!(matches!(cascade_sample(&fp, 25), Err(Error::DepthLimit(25))));
    }

    #[test]
    fn order_two_masses() {
        let sw = daubechies_system(2, 10).unwrap();
        assert!((sw.phi_mass() - 1.0).abs() < 1e-3);
        assert!(moment(&sw, 1).abs() < 1e-3);
        assert!(sw.psi_mass().abs() < 1e-3);
    }

    #[test]
    fn haar_moments() {
        let sw = daubechies_system(1, 8).unwrap();
        assert!(moment(&sw, 0).abs() < 1e-12);
        assert_abs_diff_eq!(moment(&sw, 1), -0.25, epsilon = 1e-10);
    }

    #[test]
    fn order_four_second_moment() {
        let sw = daubechies_system(4, 12).unwrap();
        assert!(moment(&sw, 2).abs() < 1e-3);
    }

    #[test]
    fn refinement_is_consistent_across_depths() {
        for order in [2, 3, 4] {
            let coarse = daubechies_system(order, 6).unwrap();
            let fine = daubechies_system(order, 7).unwrap();
            for (i, v) in coarse.phi_samples().iter().enumerate() {
                assert_eq!(*v, fine.phi_samples()[2 * i]);
            }
        }
    }

    #[test]
    fn integer_values_are_eigenvector() {
        let fp = daubechies_filter(2).unwrap();
        let v = integer_values(&fp).unwrap();
        // Known closed form: φ(1) = (1+√3)/2, φ(2) = (1-√3)/2.
        assert_abs_diff_eq!(v[1], (1.0 + 3f64.sqrt()) / 2.0, epsilon = 1e-13);
        assert_abs_diff_eq!(v[2], (1.0 - 3f64.sqrt()) / 2.0, epsilon = 1e-13);
    }
}
