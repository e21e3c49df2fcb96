//! Three-gap structure of rotation orbits, exactly.
//!
//! The points `{j theta}` for `j = 0..=n` cut the circle into `n + 1` arcs
//! taking at most three distinct lengths.  The decomposition is fully
//! combinatorial once `n` is located in its convergent window
//! `q_k + q_{k-1} <= n <= q_{k+1} + q_k - 1`: with
//! `m = (n - q_{k-1}) div q_k` and `r = (n - q_{k-1}) mod q_k`, the arcs are
//!
//! * `n + 1 - q_k` arcs of length `eta_k`                  ("small"),
//! * `r + 1`       arcs of length `eta_{k-1} - m eta_k`    ("middle"),
//! * `q_k - r - 1`  arcs of length `eta_{k-1} - (m-1) eta_k` ("large"),
//!
//! with `eta_{-1} = 1`.  The large length is the sum of the other two, the
//! counts sum to `n + 1`, and the lengths weighted by counts sum to 1.  All
//! of this is evaluated in exact rational arithmetic on the proxy; the
//! counts depend only on the (exact) partial quotients, so only the lengths
//! carry a certified error.
//!
//! The class names are structural, not size-ordered: in the last stretch of
//! a window (`m = a_{k+1}`) the "middle" length `eta_{k+1}` drops below the
//! "small" length `eta_k`.  Anything that needs sizes sorts explicitly.

use num_traits::{One, Signed, Zero};

use crate::arithmetic::{eta, Certified, IrrationalParam};
use crate::error::{Error, Result};
use crate::exact::{frac, Int, Rat};

/// One class of arcs: a common exact length and how many arcs share it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapClass {
    pub length: Rat,
    pub count: u64,
}

/// Exact three-gap decomposition of `{j theta : j = 0..=n}`.
#[derive(Debug, Clone)]
pub struct GapStructure {
    pub n: u64,
    /// convergent window index
    pub k: usize,
    /// position within the window, `1 <= m <= a_{k+1}`
    pub m: u64,
    /// remainder, `0 <= r < q_k`; the large class is empty iff `r = q_k - 1`
    pub r: u64,
    pub small: GapClass,
    pub middle: GapClass,
    pub large: GapClass,
    /// certified bound on how far each length sits from its true
    /// (irrational-input) value; zero for exact rational parameters
    pub length_error_bound: Rat,
}

impl GapStructure {
    /// Distinct positive classes, longest first, equal lengths merged
    /// (small and middle coincide exactly when a rational orbit closes up).
    pub fn classes(&self) -> Vec<(Rat, u64)> {
        let mut out: Vec<(Rat, u64)> = Vec::new();
        for c in [&self.large, &self.middle, &self.small] {
            if c.count == 0 {
                continue;
            }
            match out.iter_mut().find(|(l, _)| *l == c.length) {
                Some((_, cnt)) => *cnt += c.count,
                None => out.push((c.length.clone(), c.count)),
            }
        }
        out.sort_by(|a, b| b.0.cmp(&a.0));
        out
    }

    pub fn total_count(&self) -> u64 {
        self.n + 1
    }
}

fn eta_or_one(theta: &IrrationalParam, k: usize, minus_one: bool) -> Result<Certified> {
    if minus_one {
        Ok(Certified { value: Rat::one(), error: Rat::zero() })
    } else {
        eta(theta, k)
    }
}

/// Locate `n` in its convergent window and evaluate the three classes.
pub fn gap_structure(theta: &IrrationalParam, n: u64) -> Result<GapStructure> {
    if n == 0 {
        return Err(Error::Domain("three-gap structure needs n >= 1".into()));
    }
    let n_int = Int::from(n);
    if theta.is_exact() && n_int >= *theta.proxy().denom() {
        return Err(Error::Domain(format!(
            "rational rotation has only {} distinct orbit points; n = {n} wraps",
            theta.proxy().denom()
        )));
    }
    // smallest k with n < q_{k+1} + q_k
    let mut k = 0usize;
    loop {
        let (Some(q_k), Some(q_k1)) = (theta.q(k), theta.q(k + 1)) else {
            return Err(Error::Precision(format!(
                "n = {n} lies beyond the materialized convergent windows; deepen the proxy"
            )));
        };
        if n_int < q_k1 + q_k {
            break;
        }
        k += 1;
    }
    let q_k = theta.q(k).unwrap().clone();
    let q_km1 = if k == 0 { Int::zero() } else { theta.q(k - 1).unwrap().clone() };
    let span = &n_int - &q_km1;
    let m_int = &span / &q_k;
    let r_int = &span % &q_k;
    let m = u64::try_from(&m_int).expect("m fits u64 because n does");
    let r = u64::try_from(&r_int).expect("r < q_k <= n");
    debug_assert!(m >= 1);
    if let Some(a_next) = theta.cf().digit(k + 1) {
        debug_assert!(m <= a_next, "window position exceeds a_(k+1)");
    }

    let eta_k = eta(theta, k)?;
    let eta_km1 = eta_or_one(theta, k.wrapping_sub(1), k == 0)?;
    let m_rat = Rat::from_integer(m_int);
    let small_len = eta_k.value.clone();
    let middle_len = &eta_km1.value - &m_rat * &eta_k.value;
    let large_len = &middle_len + &small_len;

    let q_k_u64 = u64::try_from(&q_k).expect("q_k <= n fits u64");
    let small = GapClass { length: small_len, count: n + 1 - q_k_u64 };
    let middle = GapClass { length: middle_len, count: r + 1 };
    let large = GapClass { length: large_len, count: q_k_u64 - (r + 1) };

    // exact invariants of the decomposition; violations mean a proxy or
    // windowing bug, not data error
    assert_eq!(small.count + middle.count + large.count, n + 1);
    let total: Rat = [&small, &middle, &large]
        .iter()
        .map(|c| &c.length * Rat::from_integer(Int::from(c.count)))
        .sum();
    assert!(total == Rat::one(), "gap lengths must tile the circle");
    assert!(small.length.is_positive());
    assert!(middle.length.is_positive(), "degenerate middle gap: orbit wrapped");

    let length_error_bound =
        Rat::from_integer(&q_km1 + Int::from(m) * &q_k) * theta.error_bound();
    Ok(GapStructure { n, k, m, r, small, middle, large, length_error_bound })
}

/// Measures of the `n + 1` cylinder sets of length-`n` words in the
/// Sturmian coding of the rotation by `theta` (partition `[0, 1-theta)`,
/// `[1-theta, 1)`).  These are exactly the arcs cut by the orbit of
/// `1 - theta`, so this delegates to [`gap_structure`] on the complement.
pub fn cylinder_measures(theta: &IrrationalParam, n: u64) -> Result<GapStructure> {
    gap_structure(&theta.complement()?, n)
}

/// Sorted orbit points `{j theta}` for `j = 0..=n` on the proxy, with the
/// ordering certified against proxy error: every consecutive distance must
/// exceed twice the worst-case accumulated drift `n * error_bound`.
pub fn partition_endpoints(theta: &IrrationalParam, n: u64) -> Result<Vec<Rat>> {
    let p = theta.proxy().numer();
    let q = theta.proxy().denom();
    let mut nums: Vec<Int> = match (u64::try_from(p), u64::try_from(q)) {
        (Ok(pu), Ok(qu)) => (0..=n)
            .map(|j| Int::from(((j as u128 * pu as u128) % qu as u128) as u64))
            .collect(),
        _ => {
            let mut acc = Int::zero();
            let mut out = Vec::with_capacity(n as usize + 1);
            out.push(acc.clone());
            for _ in 0..n {
                acc = (&acc + p) % q;
                out.push(acc.clone());
            }
            out
        }
    };
    nums.sort_unstable();
    let mut min_diff: Option<Int> = None;
    for w in nums.windows(2) {
        let d = &w[1] - &w[0];
        if min_diff.as_ref().is_none_or(|m| d < *m) {
            min_diff = Some(d);
        }
    }
    let wrap = q - nums.last().unwrap() + &nums[0];
    let min_diff = match min_diff {
        Some(m) if m < wrap => m,
        _ => wrap,
    };
    if min_diff.is_zero() {
        return Err(if theta.is_exact() {
            Error::Domain(format!("orbit of {} repeats within {n} steps", theta.proxy()))
        } else {
            Error::Precision(format!("proxy orbit collides at n = {n}; deepen the proxy"))
        });
    }
    let sep = Rat::new(min_diff, q.clone());
    let drift = Rat::from_integer(Int::from(2 * n)) * theta.error_bound();
    if !theta.is_exact() && drift >= sep {
        return Err(Error::Precision(format!(
            "cannot certify endpoint order at n = {n}: drift {drift} vs separation {sep}"
        )));
    }
    Ok(nums.into_iter().map(|num| Rat::new(num, q.clone())).collect())
}

/// Minimal number of arcs (cylinders) whose total measure strictly exceeds
/// `1 - epsilon`, greedy longest-first.  Greedy is optimal here because any
/// cover of a target measure by atoms of fixed sizes can be reordered
/// longest-first without increasing its cardinality.
pub fn cover_count(gs: &GapStructure, epsilon: &Rat) -> Result<u64> {
    if !epsilon.is_positive() || *epsilon >= Rat::one() {
        return Err(Error::Domain(format!("epsilon = {epsilon} outside (0,1)")));
    }
    let target = Rat::one() - epsilon;
    let mut cum = Rat::zero();
    let mut cnt: u64 = 0;
    for (len, c) in gs.classes() {
        let class_total = &len * Rat::from_integer(Int::from(c));
        if &cum + &class_total > target {
            let deficit = &target - &cum;
            let j_int = (deficit / len).floor().to_integer();
            let j = u64::try_from(&j_int).expect("cover size fits u64") + 1;
            debug_assert!(j <= c);
            return Ok(cnt + j);
        }
        cum += class_total;
        cnt += c;
    }
    // total measure is exactly 1 > target, so the loop always returns
    unreachable!("gap classes tile the circle");
}

/// One evaluation point of the covering-growth subsequence.
#[derive(Debug, Clone)]
pub struct SemitopPoint {
    pub k: usize,
    pub n: u64,
    pub count: u64,
}

/// Covering counts along the special times `n_k = q'_{k+1} + q'_k - 1` of
/// the complement `theta' = 1 - theta`, where the cylinder structure
/// degenerates to two classes (`q'_{k+1}` arcs of `eta'_k` and `q'_k` arcs
/// of `eta'_{k+1}`) and the covering count is tightest relative to `n`.
pub fn semitop_subsequence(
    theta: &IrrationalParam,
    epsilon: &Rat,
    k_max: usize,
) -> Result<Vec<SemitopPoint>> {
    let comp = theta.complement()?;
    let mut out = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let (Some(q_k), Some(q_k1)) = (comp.q(k), comp.q(k + 1)) else {
            return Err(Error::Precision(format!(
                "subsequence index k = {k} beyond materialized convergents; deepen the proxy"
            )));
        };
        let n_int = q_k1 + q_k - Int::from(1u32);
        let n = u64::try_from(&n_int).map_err(|_| {
            Error::Resource(format!("n_{k} = {n_int} exceeds u64"))
        })?;
        let gs = gap_structure(&comp, n)?;
        let count = cover_count(&gs, epsilon)?;
        out.push(SemitopPoint { k, n, count });
    }
    Ok(out)
}

/// Convenience: fractional part of `j * theta` on the proxy (exact).
pub fn orbit_point(theta: &IrrationalParam, j: u64) -> Rat {
    frac(&(theta.proxy() * Rat::from_integer(Int::from(j))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arithmetic::ContinuedFraction;
    use crate::exact::rat;

    fn param(spec: &str, depth: usize) -> IrrationalParam {
        IrrationalParam::from_cf(ContinuedFraction::parse(spec).unwrap(), depth).unwrap()
    }

    /// Independent check: sort the proxy orbit and collect consecutive
    /// differences (with wraparound) into (length, count) classes.
    fn sorted_diff_classes(p: u64, q: u64, n: u64) -> Vec<(Rat, u64)> {
        let mut pts: Vec<u64> = (0..=n)
            .map(|j| ((j as u128 * p as u128) % q as u128) as u64)
            .collect();
        pts.sort_unstable();
        let mut diffs: Vec<u64> = pts.windows(2).map(|w| w[1] - w[0]).collect();
        diffs.push(q - pts.last().unwrap() + pts[0]);
        diffs.sort_unstable_by(|a, b| b.cmp(a));
        let mut out: Vec<(Rat, u64)> = Vec::new();
        for d in diffs {
            let len = rat(d as i64, q as i64);
            match out.last_mut() {
                Some((l, c)) if *l == len => *c += 1,
                _ => out.push((len, 1)),
            }
        }
        out
    }

    fn proxy_u64(theta: &IrrationalParam) -> (u64, u64) {
        (
            u64::try_from(theta.proxy().numer()).unwrap(),
            u64::try_from(theta.proxy().denom()).unwrap(),
        )
    }

    #[test]
    fn closed_form_matches_sorted_diffs_for_rationals() {
        for (p, q) in [(2u64, 5u64), (3, 7), (5, 8), (137, 1009), (355, 1130)] {
            let g = num_integer::gcd(p, q);
            let (p, q) = (p / g, q / g);
            let theta = IrrationalParam::from_rational(&rat(p as i64, q as i64)).unwrap();
            for n in [1, 2, 3, q / 3, q / 2, q - 2, q - 1] {
                if n == 0 || n >= q {
                    continue;
                }
                let gs = gap_structure(&theta, n).unwrap();
                assert_eq!(
                    gs.classes(),
                    sorted_diff_classes(p, q, n),
                    "mismatch at p/q = {p}/{q}, n = {n}"
                );
            }
        }
    }

    #[test]
    fn closed_form_matches_sorted_diffs_for_golden() {
        let theta = param("[0;(1)]", 30);
        let (p, q) = proxy_u64(&theta);
        for n in (1..60).chain([144, 145, 233, 986, 987, 2000]) {
            let gs = gap_structure(&theta, n).unwrap();
            assert_eq!(gs.classes(), sorted_diff_classes(p, q, n), "n = {n}");
        }
    }

    #[test]
    fn closed_form_matches_sorted_diffs_for_mixed_cf() {
        let theta = param("[0;1,2,(3)]", 25);
        let (p, q) = proxy_u64(&theta);
        for n in (1..40).chain([100, 500, 1000]) {
            let gs = gap_structure(&theta, n).unwrap();
            assert_eq!(gs.classes(), sorted_diff_classes(p, q, n), "n = {n}");
        }
    }

    #[test]
    fn large_class_empty_exactly_at_window_tops() {
        let theta = param("[0;2,(1,2)]", 25);
        for n in 1..500 {
            let gs = gap_structure(&theta, n).unwrap();
            let q_k = u64::try_from(theta.q(gs.k).unwrap()).unwrap();
            assert_eq!(gs.large.count == 0, gs.r == q_k - 1, "n = {n}");
            // large is always the sum of the other two lengths
            assert_eq!(gs.large.length, &gs.small.length + &gs.middle.length);
        }
    }

    #[test]
    fn special_times_have_two_classes_and_exact_tiling() {
        // n_k = q_{k+1} + q_k - 1 leaves q_{k+1} smalls and q_k middles with
        // q_{k+1} eta_k + q_k eta_{k+1} = 1
        let theta = param("[0;2,(1)]", 30); // golden complement, directly
        for k in 1..=12 {
            let q_k = theta.q(k).unwrap().clone();
            let q_k1 = theta.q(k + 1).unwrap().clone();
            let n = u64::try_from(&(&q_k1 + &q_k - Int::from(1u32))).unwrap();
            let gs = gap_structure(&theta, n).unwrap();
            let classes = gs.classes();
            assert_eq!(classes.len(), 2, "k = {k}");
            let e_k = eta(&theta, k).unwrap().value;
            let e_k1 = eta(&theta, k + 1).unwrap().value;
            let identity = Rat::from_integer(q_k1) * &e_k + Rat::from_integer(q_k) * &e_k1;
            assert!(identity == rat(1, 1), "tiling identity fails at k = {k}");
        }
    }

    #[test]
    fn rational_orbit_wraps_cleanly() {
        let theta = IrrationalParam::from_rational(&rat(2, 5)).unwrap();
        // n = q - 1: all five points, every gap 1/5, classes merge
        let gs = gap_structure(&theta, 4).unwrap();
        assert_eq!(gs.classes(), vec![(rat(1, 5), 5)]);
        assert!(matches!(gap_structure(&theta, 5), Err(Error::Domain(_))));
    }

    #[test]
    fn endpoints_are_certified_and_match_gaps() {
        let theta = param("[0;(1)]", 30);
        let n = 55;
        let pts = partition_endpoints(&theta, n).unwrap();
        assert_eq!(pts.len(), n as usize + 1);
        assert!(pts.windows(2).all(|w| w[0] < w[1]));
        assert!(pts[0].is_zero());
        // consecutive differences reproduce the gap classes
        let mut diffs: Vec<Rat> = pts.windows(2).map(|w| &w[1] - &w[0]).collect();
        diffs.push(Rat::one() - pts.last().unwrap());
        let gs = gap_structure(&theta, n).unwrap();
        let mut by_class: u64 = 0;
        for (len, cnt) in gs.classes() {
            assert_eq!(diffs.iter().filter(|d| **d == len).count() as u64, cnt);
            by_class += cnt;
        }
        assert_eq!(by_class as usize, diffs.len());
        // a too-shallow proxy cannot certify deep orbits
        let shallow = param("[0;(1)]", 6);
        assert!(matches!(
            partition_endpoints(&shallow, 4000),
            Err(Error::Precision(_))
        ));
    }

    #[test]
    fn cover_count_matches_atom_greedy_oracle() {
        let theta = param("[0;2,(1,2)]", 25);
        for n in [5u64, 21, 55, 89, 200] {
            let gs = gap_structure(&theta, n).unwrap();
            // expand into individual atoms and cover greedily
            let mut atoms: Vec<Rat> = Vec::new();
            for (len, cnt) in gs.classes() {
                atoms.extend(std::iter::repeat_n(len, cnt as usize));
            }
            for eps in [rat(1, 20), rat(1, 10), rat(1, 3), rat(9, 10)] {
                let target = Rat::one() - &eps;
                let mut cum = Rat::zero();
                let mut oracle = 0u64;
                for a in &atoms {
                    if cum > target {
                        break;
                    }
                    cum += a;
                    oracle += 1;
                }
                assert_eq!(
                    cover_count(&gs, &eps).unwrap(),
                    oracle,
                    "n = {n}, eps = {eps}"
                );
            }
        }
        let gs = gap_structure(&theta, 10).unwrap();
        assert!(cover_count(&gs, &rat(0, 1)).is_err());
        assert!(cover_count(&gs, &rat(1, 1)).is_err());
    }

    #[test]
    fn cover_count_monotone_in_epsilon() {
        let theta = param("[0;(1)]", 25);
        let gs = gap_structure(&theta, 233).unwrap();
        let mut last = u64::MAX;
        for d in 1..=19 {
            let c = cover_count(&gs, &rat(d, 20)).unwrap();
            assert!(c <= last, "covering must shrink as epsilon grows");
            last = c;
        }
    }

    #[test]
    fn cylinder_measures_count_matches_word_complexity() {
        let theta = param("[0;(1)]", 25);
        for n in [1u64, 2, 13, 100] {
            let gs = cylinder_measures(&theta, n).unwrap();
            assert_eq!(gs.total_count(), n + 1);
            let total: u64 = gs.classes().iter().map(|(_, c)| c).sum();
            assert_eq!(total, n + 1);
        }
    }

    #[test]
    fn semitop_subsequence_on_golden() {
        let theta = param("[0;(1)]", 30);
        let pts = semitop_subsequence(&theta, &rat(1, 20), 10).unwrap();
        assert_eq!(pts.len(), 10);
        for p in &pts {
            // two-class times: counts close to (1 - eps) * (n + 1)
            assert!(p.count >= (4 * (p.n + 1)) / 5, "k = {}", p.k);
            assert!(p.count <= p.n + 1);
        }
        // n_k grows like the Fibonacci numbers of the complement
        assert_eq!(pts[0].n, 4); // q'_2 + q'_1 - 1 = 3 + 2 - 1
    }
}
