//! Continued fractions and certified rational proxies.
//!
//! Irrational rotation numbers enter the toolkit as continued-fraction
//! specs — a finite prefix of partial quotients, optionally followed by a
//! repeating block, e.g. `[0;(1)]` for the golden mean 1/phi or
//! `[0;2,(1,2)]`.  Every downstream computation runs on an exact rational
//! *proxy*: the depth-K convergent `p_K/q_K`, carried together with a
//! certified error bound strictly below `1/(q_K q_{K+1})`.  Operations that
//! compare orbit points against partition endpoints check that their
//! accumulated proxy error cannot flip any comparison, and fail with a
//! precision error (asking for a deeper proxy) instead of silently
//! degrading.
//!
//! Convergents follow the recurrence `p_k = a_k p_{k-1} + p_{k-2}`,
//! `q_k = a_k q_{k-1} + q_{k-2}` seeded with `p_{-1} = 1, q_{-1} = 0,
//! p_0 = 0, q_0 = 1` (the integer part `a_0` is always 0 here).  The
//! fundamental approximation error is
//! `eta_k = (-1)^k (q_k theta - p_k) > 0`, which satisfies the two-sided
//! (Khinchin) bound `1/(q_{k+1} + q_k) < eta_k < 1/q_{k+1}`.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{frac, int, Int, Rat};

pub use crate::exact::dist_nearest_int;

/// A continued fraction in `(0, 1)`: partial quotients `a_1, a_2, ...`
/// with an optional repeating block.  Finite expansions denote rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuedFraction {
    prefix: Vec<u64>,
    tail: Option<Vec<u64>>,
}

impl ContinuedFraction {
    pub fn finite(digits: Vec<u64>) -> Result<Self> {
        Self::validate(&digits, &None)?;
        Ok(ContinuedFraction { prefix: digits, tail: None })
    }

    pub fn periodic(prefix: Vec<u64>, tail: Vec<u64>) -> Result<Self> {
        let tail = Some(tail);
        Self::validate(&prefix, &tail)?;
        Ok(ContinuedFraction { prefix, tail })
    }

    fn validate(prefix: &[u64], tail: &Option<Vec<u64>>) -> Result<()> {
        let all_ok = |ds: &[u64]| ds.iter().all(|&d| d >= 1);
        if !all_ok(prefix) || !tail.as_deref().is_none_or(all_ok) {
            return Err(Error::Domain("partial quotients must be >= 1".into()));
        }
        match tail {
            None => {
                if prefix.is_empty() {
                    return Err(Error::Domain("empty continued fraction".into()));
                }
                if prefix == [1] {
                    return Err(Error::Domain("[0;1] denotes 1, outside (0,1)".into()));
                }
            }
            Some(t) => {
                if t.is_empty() {
                    return Err(Error::Domain("empty repeating block".into()));
                }
            }
        }
        Ok(())
    }

    /// Golden mean `1/phi = [0;(1)]`.
    pub fn golden() -> Self {
        ContinuedFraction { prefix: vec![], tail: Some(vec![1]) }
    }

    pub fn is_finite(&self) -> bool {
        self.tail.is_none()
    }

    /// Number of partial quotients when the expansion is finite.
    pub fn finite_len(&self) -> Option<usize> {
        self.is_finite().then_some(self.prefix.len())
    }

    /// `a_k` (1-based), cycling through the repeating block if present.
    pub fn digit(&self, k: usize) -> Option<u64> {
        if k == 0 {
            return None;
        }
        let i = k - 1;
        if i < self.prefix.len() {
            return Some(self.prefix[i]);
        }
        self.tail
            .as_ref()
            .map(|t| t[(i - self.prefix.len()) % t.len()])
    }

    /// First `min(k, available)` partial quotients.
    pub fn digits_upto(&self, k: usize) -> Vec<u64> {
        (1..=k).map_while(|i| self.digit(i)).collect()
    }

    /// Exact value for finite expansions.
    pub fn to_rational(&self) -> Option<Rat> {
        if !self.is_finite() {
            return None;
        }
        let mut x = Rat::zero();
        for &d in self.prefix.iter().rev() {
            x = (Rat::from_integer(int(d as i64)) + x).recip();
        }
        Some(x)
    }

    /// Continued fraction of `1 - theta`.
    ///
    /// Classical digit surgery: if `a_1 = 1` the first two digits merge to
    /// `a_2 + 1`; otherwise a leading `1, a_1 - 1` is inserted.  The
    /// repeating block survives, rotated when the surgery consumes into it.
    pub fn one_minus(&self) -> ContinuedFraction {
        let d1 = self.digit(1).expect("validated CF has a first digit");
        let (lead, consumed): (Vec<u64>, usize) = if d1 == 1 {
            let d2 = self.digit(2).unwrap_or_else(|| {
                // finite [1] is rejected at construction
                unreachable!("finite CF [0;1] cannot be constructed")
            });
            (vec![d2 + 1], 2)
        } else {
            (vec![1, d1 - 1], 1)
        };
        let mut out = match &self.tail {
            None => {
                let mut digits = lead;
                digits.extend_from_slice(&self.prefix[consumed.min(self.prefix.len())..]);
                ContinuedFraction { prefix: digits, tail: None }
            }
            Some(t) => {
                if consumed <= self.prefix.len() {
                    let mut prefix = lead;
                    prefix.extend_from_slice(&self.prefix[consumed..]);
                    ContinuedFraction { prefix, tail: Some(t.clone()) }
                } else {
                    let r = (consumed - self.prefix.len()) % t.len();
                    let mut tail = t[r..].to_vec();
                    tail.extend_from_slice(&t[..r]);
                    ContinuedFraction { prefix: lead, tail: Some(tail) }
                }
            }
        };
        // canonicalize a finite trailing 1 ([..., a, 1] == [..., a+1])
        if out.tail.is_none() {
            if let [.., last] = out.prefix[..] {
                if last == 1 && out.prefix.len() > 1 {
                    out.prefix.pop();
                    *out.prefix.last_mut().unwrap() += 1;
                }
            }
        }
        out
    }

    /// Parse `[0;1,1,1]`, `[0;(1)]`, or `[0;2,(1,2)]`.
    pub fn parse(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = |msg: &str| Error::Parse(format!("{msg} in continued fraction {s:?}"));
        let body = compact
            .strip_prefix("[0;")
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| bad("expected [0;...] shape"))?;
        let parse_digits = |part: &str, what: &str| -> Result<Vec<u64>> {
            if part.is_empty() {
                return Ok(vec![]);
            }
            part.split(',')
                .map(|tok| {
                    tok.parse::<u64>()
                        .map_err(|_| bad(&format!("bad {what} quotient {tok:?}")))
                })
                .collect()
        };
        if let Some(open) = body.find('(') {
            let close = body.rfind(')').ok_or_else(|| bad("unclosed repeating block"))?;
            if close != body.len() - 1 || close < open {
                return Err(bad("repeating block must end the expansion"));
            }
            let prefix_part = body[..open].trim_end_matches(',');
            let prefix = parse_digits(prefix_part, "prefix")?;
            let tail = parse_digits(&body[open + 1..close], "repeating")?;
            ContinuedFraction::periodic(prefix, tail)
        } else {
            ContinuedFraction::finite(parse_digits(body, "partial")?)
        }
    }
}

impl std::str::FromStr for ContinuedFraction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ContinuedFraction::parse(s)
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |ds: &[u64]| {
            ds.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
        };
        write!(f, "[0;{}", join(&self.prefix))?;
        if let Some(t) = &self.tail {
            if !self.prefix.is_empty() {
                write!(f, ",")?;
            }
            write!(f, "({})", join(t))?;
        }
        write!(f, "]")
    }
}

/// Canonical continued fraction of a rational in `(0, 1)`; the last partial
/// quotient is always `>= 2`.
pub fn cf_of_rational(x: &Rat) -> Result<ContinuedFraction> {
    if !x.is_positive() || *x >= Rat::one() {
        return Err(Error::Domain(format!("rational {x} outside (0,1)")));
    }
    let mut num = x.numer().clone();
    let mut den = x.denom().clone();
    let mut digits: Vec<u64> = Vec::new();
    while !num.is_zero() {
        let a = &den / &num;
        let r = &den % &num;
        digits.push(u64::try_from(&a).map_err(|_| {
            Error::Resource("partial quotient exceeds u64".into())
        })?);
        den = std::mem::replace(&mut num, r);
    }
    // Euclid with positive remainders already ends with a quotient >= 2,
    // but normalize defensively.
    if digits.len() > 1 && digits.last() == Some(&1) {
        digits.pop();
        *digits.last_mut().unwrap() += 1;
    }
    ContinuedFraction::finite(digits)
}

/// Convergent `p_k/q_k` of a continued fraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Convergent {
    pub k: usize,
    pub p: Int,
    pub q: Int,
}

/// Convergents for `k = 1..=k_max`; a finite expansion shorter than
/// `k_max` truncates the result (check `len()` against the request).
pub fn convergents(cf: &ContinuedFraction, k_max: usize) -> Vec<Convergent> {
    let table = convergent_table(cf, k_max);
    table
        .into_iter()
        .enumerate()
        .skip(1)
        .map(|(k, (p, q))| Convergent { k, p, q })
        .collect()
}

/// `(p_k, q_k)` for `k = 0..=min(k_max, len)`, index equals `k`.
fn convergent_table(cf: &ContinuedFraction, k_max: usize) -> Vec<(Int, Int)> {
    let mut table = vec![(Int::zero(), Int::one())];
    let (mut p_prev, mut q_prev) = (Int::one(), Int::zero()); // (p_{-1}, q_{-1})
    for k in 1..=k_max {
        let Some(a) = cf.digit(k) else { break };
        let a = int(a as i64);
        let (p_cur, q_cur) = table.last().unwrap().clone();
        let p = &a * &p_cur + &p_prev;
        let q = &a * &q_cur + &q_prev;
        table.push((p, q));
        (p_prev, q_prev) = (p_cur, q_cur);
    }
    table
}

/// An irrational (or, when built from a rational, exact) parameter with a
/// certified rational proxy.
///
/// `proxy` is the depth-`K` convergent; `error_bound` certifies
/// `|theta - proxy| < error_bound`, strictly below the classical
/// `1/(q_K q_{K+1})` because one extra partial quotient is inspected.
/// Rationals carry themselves as proxy with error zero.
#[derive(Debug, Clone)]
pub struct IrrationalParam {
    cf: ContinuedFraction,
    depth: usize,
    table: Vec<(Int, Int)>, // (p_k, q_k), index = k, materialized past depth
    proxy: Rat,
    error_bound: Rat,
}

impl IrrationalParam {
    /// Build a proxy of the requested depth.  Finite expansions ignore
    /// `depth` and are represented exactly.
    pub fn from_cf(cf: ContinuedFraction, depth: usize) -> Result<Self> {
        if let Some(len) = cf.finite_len() {
            let table = convergent_table(&cf, len);
            let (p, q) = table.last().unwrap();
            let proxy = Rat::new(p.clone(), q.clone());
            return Ok(IrrationalParam { cf, depth: len, table, proxy, error_bound: Rat::zero() });
        }
        if depth == 0 {
            return Err(Error::Domain("proxy depth must be >= 1".into()));
        }
        let table = convergent_table(&cf, depth + 2);
        debug_assert_eq!(table.len(), depth + 3);
        let (p_k, q_k) = &table[depth];
        let q_k1 = &table[depth + 1].1;
        let a_guard = int(cf.digit(depth + 2).unwrap() as i64);
        // |theta - p_K/q_K| = 1/(q_K (q_{K+1} + t q_K)) with the tail value
        // t > 1/(a_{K+2} + 1), hence strictly below the bound recorded here.
        let a1 = &a_guard + Int::one();
        let error_bound = Rat::new(a1.clone(), q_k * (&a1 * q_k1 + q_k));
        let proxy = Rat::new(p_k.clone(), q_k.clone());
        Ok(IrrationalParam { cf, depth, table, proxy, error_bound })
    }

    /// Exact rational parameter in `(0, 1)`.
    pub fn from_rational(x: &Rat) -> Result<Self> {
        let cf = cf_of_rational(x)?;
        Self::from_cf(cf, usize::MAX - 2)
    }

    /// Accepts either a continued-fraction spec (`[0;...]`) or a plain
    /// rational (`p/q`, decimal).  `depth` applies to the former.
    pub fn parse(s: &str, depth: usize) -> Result<Self> {
        if s.trim_start().starts_with('[') {
            Self::from_cf(ContinuedFraction::parse(s)?, depth)
        } else {
            Self::from_rational(&crate::exact::parse_rat(s)?)
        }
    }

    pub fn cf(&self) -> &ContinuedFraction {
        &self.cf
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn proxy(&self) -> &Rat {
        &self.proxy
    }

    pub fn error_bound(&self) -> &Rat {
        &self.error_bound
    }

    pub fn is_exact(&self) -> bool {
        self.error_bound.is_zero()
    }

    /// Largest convergent index materialized in the table.
    pub fn max_convergent_index(&self) -> usize {
        self.table.len() - 1
    }

    pub fn convergent(&self, k: usize) -> Option<(&Int, &Int)> {
        self.table.get(k).map(|(p, q)| (p, q))
    }

    pub fn q(&self, k: usize) -> Option<&Int> {
        self.table.get(k).map(|(_, q)| q)
    }

    /// Parameter for `1 - theta`, proxied independently at the same depth.
    pub fn complement(&self) -> Result<IrrationalParam> {
        IrrationalParam::from_cf(self.cf.one_minus(), self.depth.max(1))
    }
}

/// An exact rational computed from a proxy, with a certified bound on its
/// distance from the true (irrational-input) value.
#[derive(Debug, Clone)]
pub struct Certified {
    pub value: Rat,
    pub error: Rat,
}

/// `eta_k = (-1)^k (q_k theta - p_k)`, computed on the proxy.
///
/// Requires proxy depth `>= k + 4` for inexact parameters so the proxy sits
/// well inside the bracket of later convergents and the sign is certain;
/// exact parameters only need `k` below the expansion length (at the length
/// itself `eta` vanishes).
pub fn eta(theta: &IrrationalParam, k: usize) -> Result<Certified> {
    if theta.is_exact() {
        let len = theta.cf.finite_len().unwrap_or(usize::MAX);
        if k >= len {
            return Err(Error::Domain(format!(
                "eta_{k} is zero or undefined for a rational with {len} partial quotients"
            )));
        }
    } else if theta.depth < k + 4 {
        return Err(Error::Precision(format!(
            "eta_{k} needs proxy depth >= {}, have {}; rebuild the parameter deeper",
            k + 4,
            theta.depth
        )));
    }
    let (p, q) = theta
        .convergent(k)
        .ok_or_else(|| Error::Domain(format!("convergent index {k} not materialized")))?;
    let signed = Rat::from_integer(q.clone()) * &theta.proxy - Rat::from_integer(p.clone());
    let value = if k.is_multiple_of(2) { signed } else { -signed };
    assert!(value.is_positive(), "eta_{k} must be positive; proxy invariant violated");
    let error = Rat::from_integer(q.clone()) * &theta.error_bound;
    Ok(Certified { value, error })
}

/// Boundedness diagnostics for the partial quotients: badly approximable
/// numbers are exactly those with bounded quotients, equivalently
/// `q_{m+1} <= C q_m` for some `C`.
#[derive(Debug, Clone)]
pub struct BadlyApproxCertificate {
    pub max_quotient: u64,
    /// max of `q_{m+1}/q_m` over `0 <= m < depth` (exact).
    pub ratio_bound: Rat,
}

pub fn badly_approx_certificate(
    cf: &ContinuedFraction,
    depth: usize,
) -> Result<BadlyApproxCertificate> {
    if depth == 0 {
        return Err(Error::Domain("certificate depth must be >= 1".into()));
    }
    let digits = cf.digits_upto(depth);
    if digits.is_empty() {
        return Err(Error::Domain("no partial quotients available".into()));
    }
    let max_quotient = *digits.iter().max().unwrap();
    let table = convergent_table(cf, digits.len());
    let mut ratio_bound = Rat::zero();
    for m in 0..table.len() - 1 {
        let r = Rat::new(table[m + 1].1.clone(), table[m].1.clone());
        if r > ratio_bound {
            ratio_bound = r;
        }
    }
    Ok(BadlyApproxCertificate { max_quotient, ratio_bound })
}

/// One row of the `S_alpha` membership profile.
#[derive(Debug, Clone)]
pub struct ProfileEntry {
    pub n: usize,
    /// `c_n = q_n * min_{|j| < q_n} ||xi - j alpha||`, exact on proxies.
    pub c_n: Rat,
    /// certified bound on the distance from the true value of `c_n`
    pub error: Rat,
}

/// Profile `c_n` for `n = 1..=depth`.  `xi` belongs to the paper-style
/// admissible set for `alpha` exactly when the profile stays bounded away
/// from zero; the empirical membership constant is `min_n c_n`.
///
/// Entries equal to zero are exact proxy hits (e.g. `xi = alpha` gives the
/// hit at `j = 1`).  A positive value smaller than its certified error
/// cannot be trusted either way and raises a precision error.
pub fn s_alpha_profile(
    xi: &IrrationalParam,
    alpha: &IrrationalParam,
    depth: usize,
) -> Result<Vec<ProfileEntry>> {
    if depth == 0 {
        return Err(Error::Domain("profile depth must be >= 1".into()));
    }
    if alpha.max_convergent_index() < depth {
        return Err(Error::Precision(format!(
            "profile depth {depth} exceeds materialized convergents ({}); deepen alpha",
            alpha.max_convergent_index()
        )));
    }
    let scan_budget: Int = int(20_000_000);
    if *alpha.q(depth).unwrap() > scan_budget {
        return Err(Error::Resource(format!(
            "q_{depth} exceeds the direct-scan budget of {scan_budget} points"
        )));
    }

    let mut best = dist_nearest_int(xi.proxy()); // j = 0
    let mut fwd = xi.proxy().clone(); // xi - j alpha for j = bound
    let mut bwd = xi.proxy().clone(); // xi + j alpha
    let mut bound: u64 = 0; // scanned |j| <= bound
    let mut out = Vec::with_capacity(depth);
    for n in 1..=depth {
        let q_n = alpha.q(n).unwrap();
        let q_n_u64 = u64::try_from(q_n).map_err(|_| {
            Error::Resource(format!("q_{n} exceeds u64 scan range"))
        })?;
        while bound + 1 < q_n_u64 {
            bound += 1;
            fwd = frac(&(&fwd - alpha.proxy()));
            bwd = frac(&(&bwd + alpha.proxy()));
            for x in [&fwd, &bwd] {
                let d = dist_nearest_int(x);
                if d < best {
                    best = d.clone();
                }
            }
        }
        let q_rat = Rat::from_integer(q_n.clone());
        let c_n = &q_rat * &best;
        let error = &q_rat * (xi.error_bound() + &q_rat * alpha.error_bound());
        if !c_n.is_zero() && c_n <= error {
            return Err(Error::Precision(format!(
                "profile value c_{n} = {c_n} is below its certified error {error}; deepen proxies"
            )));
        }
        out.push(ProfileEntry { n, c_n, error });
    }
    Ok(out)
}
