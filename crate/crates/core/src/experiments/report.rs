//! CSV rows and the JSON summary.

use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;

use super::fit::{fit_growth_exponent, spearman};
use super::sweeps::{RatioReport, RatioRow};
use crate::error::Result;
use crate::norms::SmoothnessIndex;
use crate::tolerances::{FLAT_SLOPE, GROWTH_SLOPE, SPEARMAN_MIN};

pub const CSV_HEADER: [&str; 13] = [
    "experiment", "family", "p", "q", "s", "r", "N", "num", "den", "ratio", "in_theorem", "in_uncond", "bdist",
];

fn num(v: f64) -> String {
    if v.is_infinite() {
        if v > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{v:?}")
    }
}

/// Writes the rows in their current order with the fixed header.
pub fn write_csv<W: Write>(report: &RatioReport, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in &report.rows {
        let i = &r.index;
        w.write_record([
            r.experiment.clone(),
            r.family.clone(),
            num(i.p),
            num(i.q),
            num(i.s),
            num(i.r),
            r.n.to_string(),
            num(r.num),
            num(r.den),
            num(r.ratio),
            r.in_theorem.to_string(),
            r.in_uncond.to_string(),
            num(r.bdist),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Fitted slope of one family's corpus-max profile.
#[derive(Clone, Debug, Serialize)]
pub struct FamilySlope {
    pub family: String,
    /// `(N, max ratio)` over the family's instances.
    pub profile: Vec<(u32, f64)>,
    pub slope: Option<f64>,
    pub residual: Option<f64>,
    /// `None` when no expectation applies.
    pub pass: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupSummary {
    pub experiment: String,
    pub index: SmoothnessIndex,
    pub in_theorem: bool,
    pub in_uncond: bool,
    /// Largest ratio over all rows: an empirical lower bound for the constant.
    pub c_obs: f64,
    /// What the slopes are checked against: `flat`, `growth` or `none`.
    pub expectation: String,
    pub families: Vec<FamilySlope>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DichotomyCheck {
    pub index: SmoothnessIndex,
    /// `(active levels, max ratio over draws)`.
    pub profile: Vec<(u32, f64)>,
    pub spearman: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub groups: Vec<GroupSummary>,
    pub dichotomy: Vec<DichotomyCheck>,
    pub region_flags_consistent: bool,
    pub skipped: Vec<String>,
    pub pass: bool,
}

impl Summary {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Quantity whose profile is fitted: the ratio, divided by `‖b‖_∞ + ‖b‖_BV`
/// for the bounded-variation transform rows.
pub fn profile_value(row: &RatioRow) -> f64 {
    match row.multiplier_norms {
        Some((sup, bv)) if row.experiment == "mult/bv_bounded" && sup + bv > 0.0 => row.ratio / (sup + bv),
        _ => row.ratio,
    }
}

fn expectation(row: &RatioRow, growth: &[SmoothnessIndex]) -> &'static str {
    let exp = row.experiment.as_str();
    if exp == "enpn" && growth.contains(&row.index) {
        return "growth";
    }
    if exp == "growth" {
        return "none";
    }
    let needs_uncond = matches!(exp, "mult/random_signs" | "mult/alternating");
    let inside = if needs_uncond { row.in_uncond } else { row.in_theorem };
    if inside {
        "flat"
    } else {
        "none"
    }
}

/// Groups rows by (experiment, index), fits each family's profile, and
/// evaluates the flatness, growth and dichotomy expectations.
pub fn summarize(report: &RatioReport, growth_indices: &[SmoothnessIndex]) -> Summary {
    let mut groups: BTreeMap<(String, [u64; 4]), Vec<&RatioRow>> = BTreeMap::new();
    let key = |i: &SmoothnessIndex| [i.p.to_bits(), i.q.to_bits(), i.s.to_bits(), i.r.to_bits()];
    for r in &report.rows {
        groups.entry((r.experiment.clone(), key(&r.index))).or_default().push(r);
    }
    let mut out = Vec::new();
    let mut dichotomy = Vec::new();
    for ((experiment, _), rows) in &groups {
        let first = rows[0];
        let expect = expectation(first, growth_indices);
        let mut fams: BTreeMap<&str, BTreeMap<u32, f64>> = BTreeMap::new();
        for r in rows {
            let e = fams.entry(r.family_name()).or_default().entry(r.n).or_insert(0.0);
            *e = e.max(profile_value(r));
        }
        let families = fams
            .into_iter()
            .map(|(family, prof)| {
                let profile: Vec<(u32, f64)> = prof.into_iter().collect();
                let fit = fit_growth_exponent(&profile).ok();
                let pass = match (expect, fit) {
                    ("flat", Some((s, _))) => Some(s.abs() <= FLAT_SLOPE),
                    ("growth", Some((s, _))) if family == "smooth_bump" => Some(s > GROWTH_SLOPE),
                    ("growth", None) if family == "smooth_bump" => Some(false),
                    _ => None,
                };
                FamilySlope {
                    family: family.to_string(),
                    profile,
                    slope: fit.map(|f| f.0),
                    residual: fit.map(|f| f.1),
                    pass,
                }
            })
            .collect::<Vec<_>>();
        if experiment == "growth" {
            for f in &families {
                let x: Vec<f64> = f.profile.iter().map(|p| p.0 as f64).collect();
                let y: Vec<f64> = f.profile.iter().map(|p| p.1).collect();
                let rho = spearman(&x, &y);
                dichotomy.push(DichotomyCheck {
                    index: first.index,
                    profile: f.profile.clone(),
                    spearman: rho,
                    pass: rho > SPEARMAN_MIN,
                });
            }
        }
        out.push(GroupSummary {
            experiment: experiment.clone(),
            index: first.index,
            in_theorem: first.in_theorem,
            in_uncond: first.in_uncond,
            c_obs: rows.iter().map(|r| r.ratio).fold(0.0, f64::max),
            expectation: expect.to_string(),
            families,
        });
    }
    let region_flags_consistent = report.rows.iter().all(|r| {
        r.in_theorem == crate::norms::region_theorem(&r.index)
            && r.in_uncond == crate::norms::region_unconditional(&r.index)
            && r.ratio >= 0.0
    });
    let pass = region_flags_consistent
        && out.iter().flat_map(|g| &g.families).all(|f| f.pass != Some(false))
        && dichotomy.iter().all(|d| d.pass);
    Summary {
        groups: out,
        dichotomy,
        region_flags_consistent,
        skipped: report.skipped.clone(),
        pass,
    }
}

fn parse_num(field: &str) -> Result<f64> {
    match field {
        "inf" => Ok(f64::INFINITY),
        "-inf" => Ok(f64::NEG_INFINITY),
        _ => field
            .parse()
            .map_err(|_| crate::error::Error::InvalidValue(format!("bad number {field:?}"))),
    }
}

/// Reads rows written by [`write_csv`]. Multiplier norms are not stored in
/// the CSV and come back as `None`.
pub fn read_csv<R: std::io::Read>(input: R) -> Result<RatioReport> {
    let mut rd = csv::Reader::from_reader(input);
    if rd.headers()?.iter().ne(CSV_HEADER) {
        return Err(crate::error::Error::InvalidValue("unexpected CSV header".into()));
    }
    let mut report = RatioReport::default();
    for rec in rd.records() {
        let rec = rec?;
        let f = |i: usize| parse_num(&rec[i]);
        let b = |i: usize| -> Result<bool> {
            rec[i]
                .parse()
                .map_err(|_| crate::error::Error::InvalidValue(format!("bad flag {:?}", &rec[i])))
        };
        report.rows.push(RatioRow {
            experiment: rec[0].to_string(),
            family: rec[1].to_string(),
            index: SmoothnessIndex { p: f(2)?, q: f(3)?, s: f(4)?, r: f(5)? },
            n: rec[6]
                .parse()
                .map_err(|_| crate::error::Error::InvalidValue(format!("bad N {:?}", &rec[6])))?,
            num: f(7)?,
            den: f(8)?,
            ratio: f(9)?,
            in_theorem: b(10)?,
            in_uncond: b(11)?,
            bdist: f(12)?,
            multiplier_norms: None,
        });
    }
    Ok(report)
}
