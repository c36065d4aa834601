//! Discrete Besov and Triebel–Lizorkin quasi-norms computed from wavelet
//! coefficients, and the parameter regions of the uniform bounds.
//!
//! Level `j` pairs each coefficient `λ_{j,ν}` with the indicator of
//! `I_{j,ν} = [2^{-j}ν, 2^{-j}(ν+1))`. All norms are truncated to the levels
//! stored in the field; nothing is rescaled by equivalence constants.

use serde::{Deserialize, Serialize};

use crate::analysis::CoefficientField;
use crate::error::{Error, Result};

/// Integrability `p`, fine index `q`, smoothness `s`, and the Besov fine
/// index `r` used for the `E_N - P_N` and `T_N` targets.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SmoothnessIndex {
    #[serde(with = "exponent")]
    pub p: f64,
    #[serde(with = "exponent")]
    pub q: f64,
    pub s: f64,
    #[serde(with = "exponent", default = "infinite")]
    pub r: f64,
}

fn infinite() -> f64 {
    f64::INFINITY
}

impl SmoothnessIndex {
    pub fn new(p: f64, q: f64, s: f64, r: f64) -> Result<Self> {
        let idx = Self { p, q, s, r };
        idx.validate()?;
        Ok(idx)
    }

    /// `(p, q, s)` with `r = q`.
    pub fn pqs(p: f64, q: f64, s: f64) -> Result<Self> {
        Self::new(p, q, s, q)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("p", self.p), ("q", self.q), ("r", self.r)] {
            if v.is_nan() || v <= 0.0 {
                return Err(Error::InvalidValue(format!("{name} must be positive, got {v}")));
            }
        }
        if !self.s.is_finite() {
            return Err(Error::InvalidValue(format!("s must be finite, got {}", self.s)));
        }
        Ok(())
    }

    pub fn with_q(self, q: f64) -> Self {
        Self { q, ..self }
    }

    pub fn with_s(self, s: f64) -> Self {
        Self { s, ..self }
    }
}

/// Serializes exponents as JSON numbers, with `"inf"` for infinity.
mod exponent {
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_infinite() {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(*v)
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(v),
            Raw::Text(t) if matches!(t.as_str(), "inf" | "infinity" | "Infinity") => Ok(f64::INFINITY),
            Raw::Text(t) => Err(de::Error::custom(format!("bad exponent {t:?}"))),
        }
    }
}

fn recip(p: f64) -> f64 {
    if p.is_infinite() {
        0.0
    } else {
        1.0 / p
    }
}

/// `ℓ^q` combination of nonnegative terms (supremum for `q = ∞`).
fn lq(terms: impl Iterator<Item = f64>, q: f64) -> f64 {
    if q.is_infinite() {
        terms.fold(0.0, f64::max)
    } else {
        terms.map(|t| t.powf(q)).sum::<f64>().powf(1.0 / q)
    }
}

/// Triebel–Lizorkin quasi-norm
/// `‖(Σ_j |2^{js} Σ_ν λ_{j,ν} 1_{j,ν}|^q)^{1/q}‖_p`, evaluated exactly on the
/// `2^{-j_max}` lattice.
pub fn f_quasinorm(c: &CoefficientField, idx: &SmoothnessIndex) -> Result<f64> {
    idx.validate()?;
    if idx.p.is_infinite() {
        return Err(Error::Unsupported("F quasi-norm with p = ∞".into()));
    }
    let top = c.j_max();
    let mut lo = i64::MAX;
    let mut hi = i64::MIN;
    for (j, nu, v) in c.iter() {
        if v != 0.0 {
            let len = 1i64 << (top - j);
            lo = lo.min(nu * len);
            hi = hi.max((nu + 1) * len);
        }
    }
    if lo > hi {
        return Ok(0.0);
    }
    let mut acc = vec![0.0f64; (hi - lo) as usize];
    for j in 0..=top {
        let len = 1i64 << (top - j);
        let weight = 2f64.powf(j as f64 * idx.s);
        for (&nu, &v) in c.level(j).into_iter().flatten() {
            if v == 0.0 {
                continue;
            }
            let t = (weight * v).abs();
            let first = (nu * len - lo) as usize;
            let cells = &mut acc[first..first + len as usize];
            if idx.q.is_infinite() {
                cells.iter_mut().for_each(|a| *a = a.max(t));
            } else {
                let tq = t.powf(idx.q);
                cells.iter_mut().for_each(|a| *a += tq);
            }
        }
    }
    let inner_exp = recip(idx.q);
    let cell = 2f64.powi(-(top as i32));
    let integral: f64 = acc
        .iter()
        .map(|a| {
            let g = if idx.q.is_infinite() { *a } else { a.powf(inner_exp) };
            g.powf(idx.p)
        })
        .sum::<f64>()
        * cell;
    Ok(integral.powf(1.0 / idx.p))
}

/// `‖2^{js} Σ_ν λ_{j,ν} 1_{j,ν}‖_p` for one level.
pub fn level_norm(c: &CoefficientField, j: u32, p: f64, s: f64) -> f64 {
    let Some(level) = c.level(j) else {
        return 0.0;
    };
    let weight = 2f64.powf(j as f64 * s);
    if p.is_infinite() {
        return weight * level.values().fold(0.0, |m: f64, v| m.max(v.abs()));
    }
    let measure = 2f64.powi(-(j as i32));
    let sum: f64 = level.values().map(|v| v.abs().powf(p)).sum();
    weight * (sum * measure).powf(1.0 / p)
}

/// Besov quasi-norm `(Σ_j ‖2^{js} Σ_ν λ_{j,ν} 1_{j,ν}‖_p^q)^{1/q}` with `q = idx.q`.
pub fn b_quasinorm(c: &CoefficientField, idx: &SmoothnessIndex) -> Result<f64> {
    idx.validate()?;
    Ok(lq(
        (0..=c.j_max()).map(|j| level_norm(c, j, idx.p, idx.s)),
        idx.q,
    ))
}

/// Besov quasi-norm with the fine index `r` in place of `q`.
pub fn b_quasinorm_r(c: &CoefficientField, idx: &SmoothnessIndex) -> Result<f64> {
    b_quasinorm(c, &idx.with_q(idx.r))
}

/// `1/p - 1 < s < min(1/p, 1)`.
pub fn region_theorem(idx: &SmoothnessIndex) -> bool {
    boundary_distance(idx) > 0.0
}

/// Theorem region intersected with `1/q - 1 < s < 1/q`.
pub fn region_unconditional(idx: &SmoothnessIndex) -> bool {
    unconditional_boundary_distance(idx) > 0.0
}

/// Signed distance in `s` to the theorem-region boundary, positive inside.
pub fn boundary_distance(idx: &SmoothnessIndex) -> f64 {
    let ip = recip(idx.p);
    (idx.s - (ip - 1.0)).min(ip.min(1.0) - idx.s)
}

/// Signed distance in `s` to the unconditionality-region boundary.
pub fn unconditional_boundary_distance(idx: &SmoothnessIndex) -> f64 {
    let iq = recip(idx.q);
    boundary_distance(idx)
        .min(idx.s - (iq - 1.0))
        .min(iq - idx.s)
}

/// Heuristic sufficiency check for the wavelet characterization: the
/// smoothness must exceed `max(s, 0)` and the number of vanishing moments
/// must exceed `max(1/min(p,1) - 1 - s, 0)` by one. Advisory only.
pub fn wavelet_admissible(order: usize, hoelder: f64, idx: &SmoothnessIndex) -> bool {
    let sigma = 1.0 / idx.p.min(1.0) - 1.0;
    hoelder > idx.s.max(0.0) && order as f64 > (sigma - idx.s).max(0.0) + 1.0
}

/// Constant `C` with `‖c + c'‖ ≤ C (‖c‖ + ‖c'‖)` for both quasi-norms:
/// `2^{1/u - 1}` with `u = min(1, p, q)`.
pub fn quasi_triangle_constant(idx: &SmoothnessIndex) -> f64 {
    let u = idx.p.min(idx.q).min(1.0);
    2f64.powf(1.0 / u - 1.0)
}
