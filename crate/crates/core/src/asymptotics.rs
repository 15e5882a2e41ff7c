//! Limit (relative distance, rate) curves: the product-code envelope and
//! codes on elementary transforms of `C x P^1` over optimal curve towers.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Tolerance for comparing the closed forms with the numeric optimizer.
pub const OPT_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FrontierFamily {
    Product,
    Ruled,
}

impl fmt::Display for FrontierFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FrontierFamily::Product => write!(f, "product"),
            FrontierFamily::Ruled => write!(f, "ruled"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FrontierPoint {
    pub family: FrontierFamily,
    /// `t` on the envelope, `b` on the ruled curve.
    pub param: f64,
    pub delta: f64,
    pub rate: f64,
}

/// Ihara constant for square `q`: `sqrt(q) - 1`.
pub fn default_ihara(q: u64) -> Option<f64> {
    let r = (q as f64).sqrt().round() as u64;
    (r * r == q).then(|| r as f64 - 1.0)
}

pub fn envelope_coefficient(q: f64, a_q: f64) -> f64 {
    (1.0 - 1.0 / a_q) * (1.0 + 1.0 / (q + 1.0))
}

/// Product-envelope coefficients printed next to the two published plots,
/// as `(q, A, numerator, denominator)`.
pub const FIGURE_COEFFICIENTS: [(u64, f64, u32, u32); 2] = [(16, 3.0, 36, 51), (49, 6.0, 49, 60)];

/// `(printed, formula)` when the printed envelope coefficient for `(q, A)`
/// disagrees with the formula.
pub fn figure_discrepancy(q: u64, a_q: f64) -> Option<(f64, f64)> {
    let (_, _, num, den) = FIGURE_COEFFICIENTS.iter().find(|c| c.0 == q && c.1 == a_q)?;
    let printed = *num as f64 / *den as f64;
    let formula = envelope_coefficient(q as f64, a_q);
    ((printed - formula).abs() > 1e-12).then_some((printed, formula))
}

pub fn envelope_product(q: f64, a_q: f64, samples: usize) -> Result<Vec<FrontierPoint>> {
    if a_q <= 1.0 {
        return Err(Error::Domain("A must exceed 1".into()));
    }
    if samples < 2 {
        return Err(Error::Domain("at least two samples are needed".into()));
    }
    let b = envelope_coefficient(q, a_q);
    Ok((0..samples)
        .map(|i| {
            let t = i as f64 / (samples - 1) as f64;
            FrontierPoint {
                family: FrontierFamily::Product,
                param: t,
                delta: b * t * t,
                rate: b * (1.0 - t) * (1.0 - t),
            }
        })
        .collect())
}

/// Envelope rate at relative distance `delta`, or `None` beyond its range.
pub fn envelope_rate_at(q: f64, a_q: f64, delta: f64) -> Option<f64> {
    let b = envelope_coefficient(q, a_q);
    (0.0..=b).contains(&delta).then(|| (b.sqrt() - delta.sqrt()).powi(2))
}

/// Residual of an envelope point against the product line tangent to it.
pub fn envelope_residual(q: f64, a_q: f64, p: &FrontierPoint) -> f64 {
    let c = 1.0 + 1.0 / (q + 1.0);
    let s = c * (1.0 - p.param);
    s * p.delta + (c - s) * p.rate - s * (c - s) * (1.0 - 1.0 / a_q)
}

fn limit_delta(q: f64, a: f64, b: f64, d: f64) -> f64 {
    let m = if d > 0.0 { a.min(b / ((q + 1.0) * d)) } else { a };
    (1.0 - b).min((1.0 - m) * (1.0 - b + (q + 1.0) * m * d))
}

fn limit_rate(q: f64, a_q: f64, a: f64, b: f64, d: f64) -> f64 {
    (a + 1.0 / (q + 1.0)) * (b - 1.0 / a_q - (q + 1.0) * a * d / 2.0)
}

pub fn ruled_limit_params(q: f64, a_q: f64, a: f64, b: f64, d: f64) -> Result<FrontierPoint> {
    if !(0.0..=1.0).contains(&a) || !(b > 0.0 && b < 1.0) || d < 0.0 || a_q <= 1.0 {
        return Err(Error::Domain(format!("(a, b, d, A) = ({a}, {b}, {d}, {a_q}) outside the admissible range")));
    }
    let rate = limit_rate(q, a_q, a, b, d);
    if !(0.0..=1.0).contains(&rate) {
        return Err(Error::Domain(format!("limit rate {rate} is not in [0, 1]")));
    }
    Ok(FrontierPoint {
        family: FrontierFamily::Ruled,
        param: b,
        delta: limit_delta(q, a, b, d),
        rate,
    })
}

/// The center-degree ratio at which both distance branches meet.
pub fn balanced_d(q: f64, a: f64, b: f64) -> f64 {
    (1.0 - b) / ((q + 1.0) * (1.0 - a))
}

/// Golden-section maximization of a unimodal function on `[lo, hi]`.
pub fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > tol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        }
    }
    let x = (lo + hi) / 2.0;
    (x, f(x))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OptimizedRate {
    pub a0: f64,
    pub r_max: f64,
    /// The maximal-rate expression exactly as printed; it disagrees with the
    /// optimum (its radicand is inverted) and is kept for reporting only.
    pub r_max_printed: f64,
    pub numeric_a: f64,
    pub numeric_rate: f64,
    pub agrees: bool,
    pub point: FrontierPoint,
}

fn closed_a0(q: f64, a_q: f64, b: f64) -> f64 {
    1.0 - ((q + 2.0) * a_q * (1.0 - b) / ((q + 1.0) * (a_q * (b + 1.0) - 2.0))).sqrt()
}

fn closed_r_max(q: f64, a_q: f64, b: f64) -> f64 {
    let s = a_q * (b + 1.0) - 2.0;
    1.0 - 1.0 / a_q + s / (2.0 * (q + 1.0) * a_q) - ((q + 2.0) * (1.0 - b) * s / ((q + 1.0) * a_q)).sqrt()
}

fn printed_r_max(q: f64, a_q: f64, b: f64) -> f64 {
    let s = a_q * (b + 1.0) - 2.0;
    1.0 - 1.0 / a_q + s / (2.0 * (q + 1.0) * a_q) - ((q + 2.0) * a_q * (1.0 - b) / ((q + 1.0) * s)).sqrt()
}

/// Rate along the balanced locus `d = (1-b)/((q+1)(1-a))`, where the limit
/// distance is `1 - b`.
pub fn balanced_rate(q: f64, a_q: f64, a: f64, b: f64) -> f64 {
    limit_rate(q, a_q, a, b, balanced_d(q, a, b))
}

pub fn optimized_rate(q: f64, a_q: f64, b: f64) -> Result<OptimizedRate> {
    if a_q <= 2.0 {
        return Err(Error::Domain("A must exceed 2".into()));
    }
    if !(b > 0.0 && b < 1.0) {
        return Err(Error::Domain(format!("b = {b} outside (0, 1)")));
    }
    let a0 = closed_a0(q, a_q, b);
    if !(0.0..=b).contains(&a0) {
        return Err(Error::Domain(format!("optimal a0 = {a0} lies outside [0, b = {b}]")));
    }
    let r_max = closed_r_max(q, a_q, b);
    let (numeric_a, numeric_rate) = golden_max(|a| balanced_rate(q, a_q, a, b), 0.0, b, 1e-12);
    let agrees = (numeric_a - a0).abs() <= OPT_TOL && (numeric_rate - r_max).abs() <= OPT_TOL;
    Ok(OptimizedRate {
        a0,
        r_max,
        r_max_printed: printed_r_max(q, a_q, b),
        numeric_a,
        numeric_rate,
        agrees,
        point: FrontierPoint {
            family: FrontierFamily::Ruled,
            param: b,
            delta: 1.0 - b,
            rate: numeric_rate,
        },
    })
}

/// Ruled frontier over `b` in `[b_lo, b_hi]`; points with invalid `a0` or a
/// rate outside `[0, 1]` are skipped.
pub fn ruled_curve(q: f64, a_q: f64, b_lo: f64, b_hi: f64, samples: usize) -> Result<Vec<FrontierPoint>> {
    if a_q <= 2.0 {
        return Err(Error::Domain("A must exceed 2".into()));
    }
    let n = samples.max(2);
    Ok((0..n)
        .map(|i| b_lo + (b_hi - b_lo) * i as f64 / (n - 1) as f64)
        .filter_map(|b| optimized_rate(q, a_q, b).ok())
        .map(|o| o.point)
        .filter(|p| (0.0..=1.0).contains(&p.rate))
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DominanceRow {
    pub delta: f64,
    pub product: Option<f64>,
    pub ruled: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DominanceReport {
    pub rows: Vec<DominanceRow>,
    /// Longest run of samples where the ruled rate strictly exceeds the
    /// envelope, as `(delta_min, delta_max)`.
    pub interval: Option<(f64, f64)>,
}

pub fn dominance_report(q: f64, a_q: f64, samples: usize) -> Result<DominanceReport> {
    if a_q <= 2.0 {
        return Err(Error::Domain("A must exceed 2".into()));
    }
    let n = samples.max(2);
    let rows: Vec<DominanceRow> = (1..n)
        .map(|i| {
            let delta = i as f64 / n as f64;
            DominanceRow {
                delta,
                product: envelope_rate_at(q, a_q, delta),
                ruled: optimized_rate(q, a_q, 1.0 - delta)
                    .ok()
                    .map(|o| o.numeric_rate)
                    .filter(|r| (0.0..=1.0).contains(r)),
            }
        })
        .collect();
    // samples where either side is undefined are incomparable
    let better = |r: &DominanceRow| matches!((r.product, r.ruled), (Some(p), Some(s)) if s > p);
    let mut runs = Vec::new();
    let mut i = 0;
    while i < rows.len() {
        if better(&rows[i]) {
            let s = i;
            while i < rows.len() && better(&rows[i]) {
                i += 1;
            }
            runs.push((s, i - 1));
        } else {
            i += 1;
        }
    }
    let best = runs.into_iter().max_by_key(|&(s, e)| (e - s, std::cmp::Reverse(s)));
    Ok(DominanceReport {
        interval: best.map(|(s, e)| (rows[s].delta, rows[e].delta)),
        rows,
    })
}

pub fn frontier_csv(points: &[FrontierPoint]) -> String {
    let mut s = String::from("family,param,delta,rate\n");
    for p in points {
        s.push_str(&format!("{},{:.6},{:.9},{:.9}\n", p.family, p.param, p.delta, p.rate));
    }
    s
}
