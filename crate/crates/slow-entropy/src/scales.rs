//! Scale families a_chi(n) and exponent extraction from count sequences.
//!
//! A scale family is a one-parameter family of growth rates used to grade
//! how fast a sequence of covering / complexity counts grows: the critical
//! value of chi where `limsup count(n)/a_chi(n)` drops from infinity to zero
//! is the slow-entropy invariant at that family.  Four families appear
//! throughout: polynomial `n^chi`, exponential `e^{chi n}`,
//! stretched-exponential `e^{n^chi}` and log-polynomial `n (log n)^chi`.
//!
//! `exponent_fit` estimates the critical chi from finitely many counts.
//! Because the invariant is a limsup, fitting all points flattens the
//! estimate whenever the sequence oscillates below its envelope; instead we
//! fit only the *record subsequence* — the points where
//! `count(n)/a_slope(n)` achieves its running maximum — and iterate
//! (records -> least squares -> records) to a fixed point, at most five
//! rounds.  Records are taken non-strictly so that a sequence lying exactly
//! on its envelope keeps the whole envelope in the fit.

use serde::Serialize;

use crate::error::{Error, Result};

/// The four scale families.  `chi` is supplied separately.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Scale {
    /// `n^chi`
    Polynomial,
    /// `e^{chi n}`
    Exponential,
    /// `e^{n^chi}`
    StretchedExponential,
    /// `n (log n)^chi`, natural log; requires `n >= 2`
    LogPolynomial,
}

impl Scale {
    pub const ALL: [Scale; 4] = [
        Scale::Polynomial,
        Scale::Exponential,
        Scale::StretchedExponential,
        Scale::LogPolynomial,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scale::Polynomial => "polynomial",
            Scale::Exponential => "exponential",
            Scale::StretchedExponential => "stretched-exponential",
            Scale::LogPolynomial => "log-polynomial",
        }
    }
}

impl std::str::FromStr for Scale {
    type Err = Error;
    fn from_str(s: &str) -> Result<Scale> {
        match s.trim().to_ascii_lowercase().as_str() {
            "polynomial" | "poly" => Ok(Scale::Polynomial),
            "exponential" | "exp" => Ok(Scale::Exponential),
            "stretched-exponential" | "stretched" => Ok(Scale::StretchedExponential),
            "log-polynomial" | "logpoly" => Ok(Scale::LogPolynomial),
            other => Err(Error::Parse(format!("unknown scale family {other:?}"))),
        }
    }
}

/// Evaluate `a_chi(n)`.  `chi` must be nonnegative and `n` positive
/// (log-polynomial needs `n >= 2`: at `n = 1` the value degenerates to 0).
pub fn scale_eval(scale: Scale, chi: f64, n: u64) -> Result<f64> {
    // negated form on purpose: NaN must land in the error branch
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(chi >= 0.0) {
        return Err(Error::Domain(format!("scale exponent must be >= 0, got {chi}")));
    }
    if n == 0 {
        return Err(Error::Domain("scale argument n must be positive".into()));
    }
    let nf = n as f64;
    Ok(match scale {
        Scale::Polynomial => nf.powf(chi),
        Scale::Exponential => (chi * nf).exp(),
        Scale::StretchedExponential => nf.powf(chi).exp(),
        Scale::LogPolynomial => {
            if n < 2 {
                return Err(Error::Domain(
                    "log-polynomial scale requires n >= 2".into(),
                ));
            }
            nf * nf.ln().powf(chi)
        }
    })
}

/// Smallest `n` from which `a_chi(n)/a_chi'(n) < 1` holds (and keeps
/// decreasing) whenever `chi < chi'`.  Below the threshold the families are
/// not yet separated: e.g. `n (log n)^chi` is *larger* for smaller chi at
/// `n = 2` because `log 2 < 1`.
pub fn ordering_threshold(scale: Scale) -> u64 {
    match scale {
        Scale::Polynomial => 2,
        Scale::Exponential => 1,
        Scale::StretchedExponential => 2,
        Scale::LogPolynomial => 3,
    }
}

/// Result of an exponent fit.
#[derive(Debug, Clone, Serialize)]
pub struct EntropyEstimate {
    /// Scale family the fit was performed against.
    pub scale: Scale,
    /// Estimated critical exponent, clamped to `>= 0`.
    pub exponent: f64,
    /// The `(n, count)` records the final regression used; strictly
    /// increasing in both coordinates.
    pub record_subsequence: Vec<(u64, f64)>,
    /// Maximum absolute regression residual over the record subsequence,
    /// in the family's transformed coordinates.
    pub fit_residual: f64,
    /// `(min n, max n)` of the input data.
    pub n_range: (u64, u64),
}

/// Transformed coordinates in which the family fit is an affine regression:
/// the slope of `y` against `x` is chi.
fn transform(scale: Scale, n: u64, count: f64) -> Option<(f64, f64)> {
    let nf = n as f64;
    match scale {
        Scale::Polynomial => Some((nf.ln(), count.ln())),
        Scale::Exponential => Some((nf, count.ln())),
        // log log count only carries growth information for count > 1
        Scale::StretchedExponential => (count > 1.0).then(|| (nf.ln(), count.ln().ln())),
        Scale::LogPolynomial => (n >= 2).then(|| (nf.ln().ln(), count.ln() - nf.ln())),
    }
}

struct LsFit {
    slope: f64,
    max_residual: f64,
}

fn least_squares(pts: &[(f64, f64)], idx: &[usize]) -> LsFit {
    let m = idx.len() as f64;
    let (mut sx, mut sy) = (0.0, 0.0);
    for &i in idx {
        sx += pts[i].0;
        sy += pts[i].1;
    }
    let (xbar, ybar) = (sx / m, sy / m);
    let (mut sxx, mut sxy) = (0.0, 0.0);
    for &i in idx {
        let dx = pts[i].0 - xbar;
        sxx += dx * dx;
        sxy += dx * (pts[i].1 - ybar);
    }
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let intercept = ybar - slope * xbar;
    let mut max_residual = 0.0f64;
    for &i in idx {
        let r = (pts[i].1 - (intercept + slope * pts[i].0)).abs();
        max_residual = max_residual.max(r);
    }
    LsFit { slope, max_residual }
}

/// Indices of the non-strict running maxima of `y - slope * x`, which is
/// the log of `count(n)/a_slope(n)` up to the family transform.
fn records_for(pts: &[(f64, f64)], slope: f64) -> Vec<usize> {
    let mut out = Vec::new();
    let mut best = f64::NEG_INFINITY;
    for (i, &(x, y)) in pts.iter().enumerate() {
        let r = y - slope * x;
        if r >= best {
            best = r;
            out.push(i);
        }
    }
    out
}

/// Estimate the critical exponent of `counts` against `scale`.
///
/// `counts` are `(n, count)` pairs with `n` strictly increasing and counts
/// positive; at least 8 points must survive the family transform
/// (stretched-exponential drops counts `<= 1`, log-polynomial drops
/// `n = 1`).  Multiplying all counts by a positive constant shifts only the
/// regression intercept, so the exponent is scale-equivariant.
pub fn exponent_fit(counts: &[(u64, f64)], scale: Scale) -> Result<EntropyEstimate> {
    let mut prev_n: Option<u64> = None;
    for &(n, c) in counts {
        if n == 0 {
            return Err(Error::Domain("count sequence index n must be positive".into()));
        }
        if let Some(p) = prev_n {
            if n <= p {
                return Err(Error::Domain(format!(
                    "count sequence indices must be strictly increasing ({p} then {n})"
                )));
            }
        }
        prev_n = Some(n);
        // negated form on purpose: NaN must land in the error branch
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(c > 0.0) || !c.is_finite() {
            return Err(Error::Domain(format!("count at n = {n} must be positive and finite, got {c}")));
        }
    }

    let mut ns = Vec::new();
    let mut raw = Vec::new();
    let mut pts = Vec::new();
    for &(n, c) in counts {
        if let Some(xy) = transform(scale, n, c) {
            ns.push(n);
            raw.push(c);
            pts.push(xy);
        }
    }
    if pts.len() < 8 {
        return Err(Error::InsufficientData(format!(
            "exponent fit needs at least 8 admissible points, have {}",
            pts.len()
        )));
    }
    let n_range = (ns[0], *ns.last().unwrap());

    let mut records = records_for(&pts, 0.0);
    let mut fit = least_squares(&pts, &records);
    if records.len() >= 2 {
        for _ in 0..5 {
            let slope = fit.slope.max(0.0);
            let next = records_for(&pts, slope);
            if next == records || next.len() < 2 {
                break;
            }
            records = next;
            fit = least_squares(&pts, &records);
        }
    }

    let exponent = fit.slope.max(0.0);
    // Collapse equal-count runs (they only arise at slope 0) so the reported
    // subsequence is strictly increasing in both coordinates.
    let mut record_subsequence: Vec<(u64, f64)> = Vec::new();
    for &i in &records {
        if record_subsequence.last().map(|&(_, c)| c) != Some(raw[i]) {
            record_subsequence.push((ns[i], raw[i]));
        }
    }

    Ok(EntropyEstimate {
        scale,
        exponent,
        record_subsequence,
        fit_residual: fit.max_residual,
        n_range,
    })
}

/// Smallest n admitted into asymptotic growth fits.
pub const FIT_GRID_MIN: u64 = 16;

/// Geometric evaluation grid `ceil(1.3^j)` clamped to `[n_min, n_max]`,
/// deduplicated; the shared sampling grid for growth fits.
pub fn geometric_grid(n_min: u64, n_max: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut x = 1.0f64;
    loop {
        let n = x.ceil() as u64;
        if n > n_max {
            break;
        }
        if n >= n_min && out.last() != Some(&n) {
            out.push(n);
        }
        x *= 1.3;
    }
    out
}
