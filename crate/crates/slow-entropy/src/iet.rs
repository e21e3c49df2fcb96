//! Interval exchange transformations with exact rational arithmetic.
//!
//! An IET is given by labelled interval lengths and two permutations: the
//! label order before (`top`) and after (`bottom`) the exchange.  The map
//! translates the interval of label `a` by
//! `t_a = sum_{bottom(b) < bottom(a)} len_b - sum_{top(b) < top(a)} len_b`,
//! with every interval half-open `[.,.)` so the map is a genuine bijection
//! of `[0, |I|)`.  All dynamics here run on exact rationals; the covering
//! estimators sample starting points from a Mersenne-prime lattice that
//! provably never collides with interval endpoints, which is what lets the
//! coding loop run without any tie-breaking or tolerance.

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arithmetic::IrrationalParam;
use crate::covering::{covering_estimate, lattice_points, lattice_prime};
use crate::error::{Error, Result};
use crate::exact::{Int, Rat};
use crate::scales::{exponent_fit, geometric_grid, EntropyEstimate, Scale, FIT_GRID_MIN};

/// A labelled interval exchange.  `top[a]` / `bottom[a]` give the position
/// of label `a` in the source / target order.
#[derive(Debug, Clone)]
pub struct IntervalExchange {
    lengths: Vec<Rat>,
    top: Vec<usize>,
    bottom: Vec<usize>,
    // derived, indexed by source position
    src_starts: Vec<Rat>,
    src_labels: Vec<usize>,
    translations: Vec<Rat>,
    total: Rat,
}

impl PartialEq for IntervalExchange {
    fn eq(&self, other: &Self) -> bool {
        self.lengths == other.lengths && self.top == other.top && self.bottom == other.bottom
    }
}

fn check_perm(p: &[usize], what: &str) -> Result<()> {
    let mut seen = vec![false; p.len()];
    for &v in p {
        if v >= p.len() || seen[v] {
            return Err(Error::Domain(format!("{what} is not a permutation: {p:?}")));
        }
        seen[v] = true;
    }
    Ok(())
}

impl IntervalExchange {
    pub fn new(lengths: Vec<Rat>, top: Vec<usize>, bottom: Vec<usize>) -> Result<Self> {
        let d = lengths.len();
        if d == 0 {
            return Err(Error::Domain("an exchange needs at least one interval".into()));
        }
        if top.len() != d || bottom.len() != d {
            return Err(Error::Domain("permutation lengths must match the interval count".into()));
        }
        check_perm(&top, "top order")?;
        check_perm(&bottom, "bottom order")?;
        if let Some(bad) = lengths.iter().find(|l| !l.is_positive()) {
            return Err(Error::Domain(format!("interval lengths must be positive, got {bad}")));
        }

        let mut src_labels = vec![0usize; d];
        let mut tgt_labels = vec![0usize; d];
        for a in 0..d {
            src_labels[top[a]] = a;
            tgt_labels[bottom[a]] = a;
        }
        let starts = |labels: &[usize]| -> Vec<Rat> {
            let mut out = Vec::with_capacity(d);
            let mut acc = Rat::zero();
            for &a in labels {
                out.push(acc.clone());
                acc += &lengths[a];
            }
            out
        };
        let src_starts = starts(&src_labels);
        let tgt_starts = starts(&tgt_labels);
        let mut tgt_start_of_label = vec![Rat::zero(); d];
        for (pos, &a) in tgt_labels.iter().enumerate() {
            tgt_start_of_label[a] = tgt_starts[pos].clone();
        }
        let translations: Vec<Rat> = (0..d)
            .map(|pos| &tgt_start_of_label[src_labels[pos]] - &src_starts[pos])
            .collect();
        let total: Rat = lengths.iter().sum();
        Ok(IntervalExchange { lengths, top, bottom, src_starts, src_labels, translations, total })
    }

    /// `d` intervals in source order with the target order reversed — the
    /// symmetric presentation (an involution-reversible class).
    pub fn symmetric(lengths: Vec<Rat>) -> Result<Self> {
        let d = lengths.len();
        let top: Vec<usize> = (0..d).collect();
        let bottom: Vec<usize> = (0..d).rev().collect();
        Self::new(lengths, top, bottom)
    }

    /// The rotation `x -> x + theta mod 1` as the symmetric 2-interval
    /// exchange `(1 - theta, theta)`, on the proxy.
    pub fn rotation(theta: &IrrationalParam) -> Result<Self> {
        let t = theta.proxy().clone();
        if !t.is_positive() || t >= Rat::one() {
            return Err(Error::Domain(format!(
                "rotation proxy {t} outside (0,1); normalize theta first"
            )));
        }
        Self::symmetric(vec![Rat::one() - &t, t])
    }

    pub fn d(&self) -> usize {
        self.lengths.len()
    }

    pub fn lengths(&self) -> &[Rat] {
        &self.lengths
    }

    pub fn total(&self) -> &Rat {
        &self.total
    }

    pub fn top(&self) -> &[usize] {
        &self.top
    }

    pub fn bottom(&self) -> &[usize] {
        &self.bottom
    }

    /// Translation applied on source interval `pos` (source-order index).
    pub fn translation_at(&self, pos: usize) -> &Rat {
        &self.translations[pos]
    }

    /// Source-order position of the interval containing `x`.
    pub fn locate(&self, x: &Rat) -> Result<usize> {
        if x.is_negative() || *x >= self.total {
            return Err(Error::Domain(format!("point {x} outside [0, {})", self.total)));
        }
        Ok(self.src_starts.partition_point(|s| s <= x) - 1)
    }

    pub fn apply(&self, x: &Rat) -> Result<Rat> {
        let pos = self.locate(x)?;
        Ok(x + &self.translations[pos])
    }

    pub fn apply_n(&self, x: &Rat, n: u64) -> Result<Rat> {
        let mut y = x.clone();
        for _ in 0..n {
            y = self.apply(&y)?;
        }
        Ok(y)
    }

    pub fn inverse(&self) -> IntervalExchange {
        IntervalExchange::new(self.lengths.clone(), self.bottom.clone(), self.top.clone())
            .expect("swapping the orders of a valid exchange stays valid")
    }

    /// Conjugation by the reflection `x -> |I| - x`: both orders reverse.
    /// For a symmetric exchange this equals the inverse — the structural
    /// form of the reversibility identity.
    pub fn involution_conjugate(&self) -> IntervalExchange {
        let d = self.d();
        let flip = |p: &[usize]| p.iter().map(|&v| d - 1 - v).collect::<Vec<_>>();
        IntervalExchange::new(self.lengths.clone(), flip(&self.top), flip(&self.bottom))
            .expect("reflection preserves validity")
    }

    /// Conjugation by `x -> c x` (`c > 0`): same combinatorics, scaled
    /// lengths.
    pub fn scale_conjugate(&self, c: &Rat) -> Result<IntervalExchange> {
        if !c.is_positive() {
            return Err(Error::Domain(format!("scale factor must be positive, got {c}")));
        }
        IntervalExchange::new(
            self.lengths.iter().map(|l| l * c).collect(),
            self.top.clone(),
            self.bottom.clone(),
        )
    }

    /// Interior discontinuities of the map: the source-order cut points
    /// `beta_1 < ... < beta_{d-1}`.
    pub fn discontinuities(&self) -> Vec<Rat> {
        self.src_starts[1..].to_vec()
    }

    /// Irreducible combinatorics: no proper prefix of the source order maps
    /// to itself (such a prefix would split the exchange into two smaller
    /// ones glued side by side).
    pub fn is_irreducible(&self) -> bool {
        let d = self.d();
        let mut max_seen = 0usize;
        for pos in 0..d - 1 {
            // position-to-position permutation: source pos -> target pos
            let target = self.bottom[self.src_labels[pos]];
            max_seen = max_seen.max(target);
            if max_seen == pos {
                return false;
            }
        }
        true
    }
}

/// Result of scanning `D ∩ g^{-n}(D)` for `n = 1..=checked_to`.
#[derive(Debug, Clone)]
pub struct IdocReport {
    pub checked_to: u64,
    pub collision: Option<IdocCollision>,
}

#[derive(Debug, Clone)]
pub struct IdocCollision {
    /// first `n >= 1` with `g^n(source)` on a discontinuity
    pub n: u64,
    pub source: Rat,
    pub target: Rat,
}

impl IdocReport {
    pub fn holds(&self) -> bool {
        self.collision.is_none()
    }
}

/// Check the infinite-distinct-orbit condition to depth `n_max`: no forward
/// iterate of a discontinuity may land on a discontinuity.  Reports the
/// first collision if one exists (rational data always collides
/// eventually; a deep proxy pushes the collision beyond any fixed horizon).
pub fn idoc_check(iet: &IntervalExchange, n_max: u64) -> Result<IdocReport> {
    if n_max == 0 {
        return Err(Error::Domain("idoc horizon must be >= 1".into()));
    }
    let disc = iet.discontinuities();
    let mut best: Option<IdocCollision> = None;
    for delta in &disc {
        let mut y = delta.clone();
        for n in 1..=n_max {
            y = iet.apply(&y)?;
            if disc.binary_search(&y).is_ok() {
                if best.as_ref().is_none_or(|b| n < b.n) {
                    best = Some(IdocCollision { n, source: delta.clone(), target: y.clone() });
                }
                break;
            }
        }
    }
    Ok(IdocReport { checked_to: n_max, collision: best })
}

/// The coding partition refined along the orbit: cut points
/// `{0} ∪ g^{-i}(D)` for `i = 0..n`, sorted and deduplicated.
#[derive(Debug, Clone)]
pub struct RefinedPartition {
    pub n: u64,
    pub cuts: Vec<Rat>,
    pub total: Rat,
}

impl RefinedPartition {
    pub fn atom_count(&self) -> u64 {
        self.cuts.len() as u64
    }

    /// Atom lengths in position order.
    pub fn atom_lengths(&self) -> Vec<Rat> {
        let mut out = Vec::with_capacity(self.cuts.len());
        for w in self.cuts.windows(2) {
            out.push(&w[1] - &w[0]);
        }
        out.push(&self.total - self.cuts.last().unwrap());
        out
    }

    pub fn min_atom(&self) -> Rat {
        self.atom_lengths().into_iter().min().unwrap()
    }
}

/// Refine the natural partition by `n` backward steps.  Under idoc the
/// preimages are pairwise distinct and the atom count is exactly
/// `(d - 1) n + 1`; the count returned is the enumerated one either way.
pub fn refine(iet: &IntervalExchange, n: u64) -> Result<RefinedPartition> {
    if n > 2_000_000 {
        return Err(Error::Resource(format!("refinement depth {n} exceeds the point budget")));
    }
    let inv = iet.inverse();
    let mut cuts: Vec<Rat> = vec![Rat::zero()];
    let mut layer = iet.discontinuities();
    for _ in 0..n {
        cuts.extend(layer.iter().cloned());
        for p in layer.iter_mut() {
            *p = inv.apply(p)?;
        }
    }
    cuts.sort_unstable();
    cuts.dedup();
    Ok(RefinedPartition { n, cuts, total: iet.total().clone() })
}

/// Verify that `g^n` is affine on every atom of the `n`-refinement and that
/// the atom images tile `[0, |I|)` exactly — the pushforward sanity check
/// of the refinement construction.
pub fn verify_refinement_pushforward(iet: &IntervalExchange, n: u64) -> Result<()> {
    let part = refine(iet, n)?;
    let lengths = part.atom_lengths();
    let mut images: Vec<(Rat, Rat)> = Vec::with_capacity(lengths.len());
    for (start, len) in part.cuts.iter().zip(lengths.iter()) {
        // track the interval [u, u + len) through n applications; it must
        // stay inside a single source interval at every step
        let mut u = start.clone();
        for step in 0..n {
            let pos = iet.locate(&u)?;
            let end_of_src = if pos + 1 < iet.d() {
                iet.src_starts[pos + 1].clone()
            } else {
                iet.total().clone()
            };
            if &u + len > end_of_src {
                return Err(Error::Domain(format!(
                    "atom starting at {start} straddles a discontinuity after {step} steps"
                )));
            }
            u = iet.apply(&u)?;
        }
        images.push((u, len.clone()));
    }
    images.sort_by(|a, b| a.0.cmp(&b.0));
    let mut edge = Rat::zero();
    for (start, len) in &images {
        if *start != edge {
            return Err(Error::Domain(format!(
                "atom images leave a gap or overlap at {edge} (next starts at {start})"
            )));
        }
        edge += len;
    }
    if edge != *iet.total() {
        return Err(Error::Domain("atom images do not exhaust the interval".into()));
    }
    Ok(())
}

/// Smallest and relative spread of atom lengths along a grid of times —
/// the quantitative face of linear recurrence (`eps_n ~ c/n` with bounded
/// `max/min` homogeneity for well-behaved parameters).
#[derive(Debug, Clone)]
pub struct RecurrenceEntry {
    pub n: u64,
    pub min_atom: Rat,
    pub homogeneity: Rat,
}

pub fn linear_recurrence_profile(
    iet: &IntervalExchange,
    grid: &[u64],
) -> Result<Vec<RecurrenceEntry>> {
    let mut out = Vec::with_capacity(grid.len());
    for &n in grid {
        let part = refine(iet, n)?;
        let lengths = part.atom_lengths();
        let min = lengths.iter().min().unwrap().clone();
        let max = lengths.iter().max().unwrap().clone();
        out.push(RecurrenceEntry { n, homogeneity: &max / &min, min_atom: min });
    }
    Ok(out)
}

/// Normalized symmetric 3-IET attached to a rotation number `alpha` and a
/// section parameter `xi`: interval lengths
/// `(xi, 1 - alpha - xi, alpha + xi)` when `alpha + xi < 1`, or
/// `(xi, 2 - alpha - xi, alpha + xi - 1)` when `alpha + xi > 1`, scaled by
/// `1/(1 + xi)` to unit total.  Proxies are used exactly; if the sign of
/// `alpha + xi - 1` is not certified by the proxy error bounds the input is
/// rejected rather than silently branched.
pub fn from_alpha_xi(alpha: &IrrationalParam, xi: &IrrationalParam) -> Result<IntervalExchange> {
    let a = alpha.proxy();
    let x = xi.proxy();
    for (name, v) in [("alpha", a), ("xi", x)] {
        if !v.is_positive() || *v >= Rat::one() {
            return Err(Error::Domain(format!("{name} = {v} outside (0,1)")));
        }
    }
    let gap = a + x - Rat::one();
    let slack = alpha.error_bound() + xi.error_bound();
    if gap.abs() <= slack {
        return Err(if slack.is_zero() {
            Error::Domain("alpha + xi = 1 is a degenerate section".into())
        } else {
            Error::Precision(
                "cannot certify the sign of alpha + xi - 1; deepen the proxies".into(),
            )
        });
    }
    let lengths = if gap.is_negative() {
        vec![x.clone(), Rat::one() - a - x, a + x]
    } else {
        vec![x.clone(), Rat::from_integer(Int::from(2u32)) - a - x, a + x - Rat::one()]
    };
    let f0 = IntervalExchange::symmetric(lengths)?;
    let scale = (Rat::one() + x).recip();
    f0.scale_conjugate(&scale)
}

/// Invert [`from_alpha_xi`]: recover `(alpha, xi)` from a symmetric 3-IET
/// (any overall scale).
pub fn alpha_xi_from_iet(iet: &IntervalExchange) -> Result<(Rat, Rat)> {
    if iet.d() != 3 || *iet != IntervalExchange::symmetric(iet.lengths.clone())? {
        return Err(Error::Domain("expected a symmetric 3-interval exchange".into()));
    }
    let f_a = &iet.lengths[0] / &iet.total;
    let one_less = Rat::one() - &f_a;
    if !one_less.is_positive() {
        return Err(Error::Domain("first interval swallows the whole space".into()));
    }
    let xi = &f_a / &one_less;
    let scale = (Rat::one() + &xi) / &iet.total; // to the (1 + xi)-presentation
    let l_c = &iet.lengths[2] * &scale;
    let alpha = if l_c > xi { &l_c - &xi } else { Rat::one() + &l_c - &xi };
    if !alpha.is_positive() || alpha >= Rat::one() {
        return Err(Error::Domain(format!("recovered alpha = {alpha} outside (0,1)")));
    }
    Ok((alpha, xi))
}

/// Exact symbolic coding of the orbit of `x0`: symbol `i` is the
/// source-order interval position occupied at time `i`.
///
/// The loop runs in `u128` integers over the common denominator of `x0`
/// and the lengths whenever that fits; otherwise it falls back to exact
/// big-rational arithmetic.  No tolerance is involved anywhere: points on
/// an endpoint take the right-hand interval by the half-open convention.
pub fn coding(iet: &IntervalExchange, x0: &Rat, len: usize) -> Result<Vec<u8>> {
    if iet.d() > u8::MAX as usize {
        return Err(Error::Resource("more than 255 intervals; coding symbols are u8".into()));
    }
    if x0.is_negative() || *x0 >= iet.total {
        return Err(Error::Domain(format!("start {x0} outside [0, {})", iet.total)));
    }
    // common denominator of everything in play
    let mut den: Int = x0.denom().clone();
    for l in &iet.lengths {
        den = den.lcm(l.denom());
    }
    let scaled = |r: &Rat| -> Int { r.numer() * (&den / r.denom()) };
    let ends: Vec<Int> = (1..=iet.d())
        .map(|p| {
            if p < iet.d() {
                scaled(&iet.src_starts[p])
            } else {
                scaled(&iet.total)
            }
        })
        .collect();
    let trans: Vec<Int> = iet.translations.iter().map(&scaled).collect();
    let pos0 = scaled(x0);

    let fits = ends.last().unwrap().to_u128().is_some_and(|v| v < (1u128 << 120));
    let mut out = Vec::with_capacity(len);
    if fits {
        let ends: Vec<u128> = ends.iter().map(|e| e.to_u128().unwrap()).collect();
        let trans: Vec<i128> = trans.iter().map(|t| t.to_i128().unwrap()).collect();
        let mut pos = pos0.to_u128().unwrap();
        for _ in 0..len {
            let mut j = 0usize;
            while pos >= ends[j] {
                j += 1;
            }
            out.push(j as u8);
            pos = (pos as i128 + trans[j]) as u128;
        }
    } else {
        let mut pos = pos0;
        for _ in 0..len {
            let mut j = 0usize;
            while pos >= ends[j] {
                j += 1;
            }
            out.push(j as u8);
            pos += &trans[j];
        }
    }
    Ok(out)
}

/// Hamming mismatch count between two codes over the first `n` symbols.
pub fn hamming_distance(a: &[u8], b: &[u8], n: usize) -> u64 {
    a[..n].iter().zip(&b[..n]).filter(|(x, y)| x != y).count() as u64
}

/// A complete covering run: the raw counts, the fitted growth, and the
/// sampling description that reproduces it.
#[derive(Debug, Clone)]
pub struct CoveringRun {
    pub counts: Vec<(u64, u64)>,
    pub estimate: EntropyEstimate,
    pub m: usize,
    pub seed: u64,
    pub epsilon: Rat,
}

/// Metric slow-entropy estimate: lattice-sample `m` points, code orbits to
/// the top of the geometric grid, and fit the Hamming-covering growth.
pub fn metric_entropy_estimate(
    iet: &IntervalExchange,
    epsilon: &Rat,
    m: usize,
    seed: u64,
    n_max: u64,
    scale: Scale,
) -> Result<CoveringRun> {
    let unit = iet.scale_conjugate(&iet.total().recip())?;
    let mut guard = Int::one();
    for l in &unit.lengths {
        guard = guard.lcm(l.denom());
    }
    let (exp, _) = lattice_prime(&guard)?;
    let points = lattice_points(m, seed, exp);
    let grid = geometric_grid(FIT_GRID_MIN, n_max);
    if grid.len() < 8 {
        return Err(Error::InsufficientData(format!(
            "n_max = {n_max} leaves fewer than 8 grid points past the fit threshold"
        )));
    }
    let n_top = *grid.last().unwrap() as usize;
    let codes: Vec<Vec<u8>> = points
        .iter()
        .map(|x| coding(&unit, x, n_top))
        .collect::<Result<_>>()?;
    let (counts, estimate) = covering_estimate(&codes, &grid, epsilon, scale)?;
    Ok(CoveringRun { counts, estimate, m, seed, epsilon: epsilon.clone() })
}

/// Fewest refinement atoms whose total length strictly exceeds
/// `(1 - epsilon) |I|`, greedy longest-first.
pub fn atom_cover_count(part: &RefinedPartition, epsilon: &Rat) -> Result<u64> {
    if !epsilon.is_positive() || *epsilon >= Rat::one() {
        return Err(Error::Domain(format!("epsilon = {epsilon} outside (0,1)")));
    }
    let mut lengths = part.atom_lengths();
    lengths.sort_unstable_by(|a, b| b.cmp(a));
    let target = (Rat::one() - epsilon) * &part.total;
    let mut cum = Rat::zero();
    for (i, l) in lengths.iter().enumerate() {
        if cum > target {
            return Ok(i as u64);
        }
        cum += l;
    }
    Ok(lengths.len() as u64)
}

/// Covering growth of the refinement atoms (the semi-topological count):
/// how many atoms of the `n`-refinement cover all but an epsilon-fraction.
pub fn semitop_entropy_estimate(
    iet: &IntervalExchange,
    epsilon: &Rat,
    n_max: u64,
    scale: Scale,
) -> Result<(Vec<(u64, u64)>, EntropyEstimate)> {
    let grid = geometric_grid(FIT_GRID_MIN, n_max);
    let mut counts = Vec::with_capacity(grid.len());
    for &n in &grid {
        let part = refine(iet, n)?;
        counts.push((n, atom_cover_count(&part, epsilon)?));
    }
    let as_f64: Vec<(u64, f64)> = counts.iter().map(|&(n, c)| (n, c as f64)).collect();
    let estimate = exponent_fit(&as_f64, scale)?;
    Ok((counts, estimate))
}

/// Topological covering growth: the full atom count of the refinement.
pub fn top_entropy_estimate(
    iet: &IntervalExchange,
    n_max: u64,
    scale: Scale,
) -> Result<(Vec<(u64, u64)>, EntropyEstimate)> {
    let grid = geometric_grid(FIT_GRID_MIN, n_max);
    let mut counts = Vec::with_capacity(grid.len());
    for &n in &grid {
        counts.push((n, refine(iet, n)?.atom_count()));
    }
    let as_f64: Vec<(u64, f64)> = counts.iter().map(|&(n, c)| (n, c as f64)).collect();
    let estimate = exponent_fit(&as_f64, scale)?;
    Ok((counts, estimate))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arithmetic::ContinuedFraction;
    use crate::exact::{frac, rat};
    use crate::rotation_gaps::partition_endpoints;
    use crate::subshift::sturmian_word;

    fn golden(depth: usize) -> IrrationalParam {
        IrrationalParam::from_cf(ContinuedFraction::golden(), depth).unwrap()
    }

    /// Rotation by theta as a symmetric 2-IET.
    fn rotation_iet(theta: &IrrationalParam) -> IntervalExchange {
        IntervalExchange::rotation(theta).unwrap()
    }

    #[test]
    fn two_interval_exchange_is_the_rotation() {
        let theta = golden(30);
        let g = rotation_iet(&theta);
        assert!(g.is_irreducible());
        for r in [rat(1, 7), rat(3, 11), rat(9, 10), rat(0, 1)] {
            let image = g.apply(&r).unwrap();
            assert_eq!(image, frac(&(&r + theta.proxy())));
        }
        // coding agrees with the Sturmian coding symbol by symbol
        let x0 = rat(1, 3);
        let code = coding(&g, &x0, 500).unwrap();
        let word = sturmian_word(&theta, &x0, 500).unwrap();
        assert_eq!(code, word.symbols);
    }

    #[test]
    fn inverse_and_conjugations() {
        let g = IntervalExchange::new(
            vec![rat(1, 6), rat(1, 2), rat(1, 3)],
            vec![0, 1, 2],
            vec![2, 0, 1],
        )
        .unwrap();
        let ginv = g.inverse();
        for r in [rat(1, 7), rat(5, 7), rat(13, 14), rat(1, 4)] {
            assert_eq!(ginv.apply(&g.apply(&r).unwrap()).unwrap(), r);
            assert_eq!(g.apply(&ginv.apply(&r).unwrap()).unwrap(), r);
        }
        assert_eq!(ginv.inverse(), g);

        // scaling commutes: g_c(c x) = c g(x)
        let c = rat(3, 2);
        let gc = g.scale_conjugate(&c).unwrap();
        for r in [rat(1, 7), rat(2, 3), rat(24, 25)] {
            assert_eq!(gc.apply(&(&r * &c)).unwrap(), g.apply(&r).unwrap() * &c);
        }

        // symmetric exchanges: reflection conjugation is the inverse, both
        // structurally and pointwise off the endpoint set
        let s = IntervalExchange::symmetric(vec![rat(1, 5), rat(1, 2), rat(3, 10)]).unwrap();
        assert_eq!(s.involution_conjugate(), s.inverse());
        let iota = |x: &Rat| Rat::one() - x;
        for r in [rat(1, 7), rat(3, 7), rat(6, 7), rat(10, 11)] {
            let lhs = iota(&s.apply(&r).unwrap());
            let rhs = s.inverse().apply(&iota(&r)).unwrap();
            assert_eq!(lhs, rhs, "reversibility fails at {r}");
        }
    }

    #[test]
    fn irreducibility_detects_split_exchanges() {
        // bottom fixes the prefix {0}: decomposes into two blocks
        let split = IntervalExchange::new(
            vec![rat(1, 2), rat(1, 4), rat(1, 4)],
            vec![0, 1, 2],
            vec![0, 2, 1],
        )
        .unwrap();
        assert!(!split.is_irreducible());
        let rot = rotation_iet(&golden(10));
        assert!(rot.is_irreducible());
    }

    #[test]
    fn rational_rotation_violates_idoc_at_three() {
        let g = IntervalExchange::symmetric(vec![rat(1, 3), rat(2, 3)]).unwrap();
        let report = idoc_check(&g, 10).unwrap();
        let c = report.collision.expect("rational data must collide");
        assert_eq!(c.n, 3);
        assert_eq!(c.source, rat(1, 3));
        assert_eq!(c.target, rat(1, 3));
    }

    #[test]
    fn deep_proxy_exchange_passes_idoc_horizon() {
        let g = rotation_iet(&golden(30));
        assert!(idoc_check(&g, 300).unwrap().holds());
        let h = from_alpha_xi(&golden(30), &IrrationalParam::from_rational(&rat(2, 5)).unwrap())
            .unwrap();
        assert!(idoc_check(&h, 300).unwrap().holds());
    }

    #[test]
    fn refinement_counts_and_cross_check_with_gaps() {
        let theta = golden(30);
        let g = rotation_iet(&theta);
        for n in [1u64, 5, 34, 100] {
            let part = refine(&g, n).unwrap();
            assert_eq!(part.atom_count(), n + 1); // (d-1) n + 1 for d = 2
            // the cuts are exactly the orbit of 1 - theta-hat (the proxy's
            // own complement, not an independently truncated one)
            let comp = IrrationalParam::from_rational(&(Rat::one() - theta.proxy())).unwrap();
            let pts = partition_endpoints(&comp, n).unwrap();
            assert_eq!(part.cuts, pts);
        }
        // idoc 3-IET: atom count 2n + 1
        let h = from_alpha_xi(&theta, &IrrationalParam::from_rational(&rat(2, 5)).unwrap())
            .unwrap();
        for n in [1u64, 10, 100, 500] {
            assert_eq!(refine(&h, n).unwrap().atom_count(), 2 * n + 1);
        }
    }

    #[test]
    fn pushforward_tiles_exactly() {
        let theta = golden(30);
        verify_refinement_pushforward(&rotation_iet(&theta), 40).unwrap();
        let h = from_alpha_xi(&theta, &IrrationalParam::from_rational(&rat(2, 5)).unwrap())
            .unwrap();
        verify_refinement_pushforward(&h, 40).unwrap();
    }

    #[test]
    fn recurrence_profile_is_linear_for_golden() {
        let g = rotation_iet(&golden(30));
        let entries = linear_recurrence_profile(&g, &[10, 50, 100, 500]).unwrap();
        for e in &entries {
            // eps_n >= c / n with homogeneity bounded by a golden constant
            let n_rat = Rat::from_integer(Int::from(e.n));
            assert!(&e.min_atom * &n_rat > rat(1, 10), "min atom too small at n = {}", e.n);
            assert!(e.homogeneity < rat(4, 1), "inhomogeneous at n = {}", e.n);
        }
    }

    #[test]
    fn alpha_xi_dictionary_matches_the_worked_examples() {
        let a = IrrationalParam::from_rational(&rat(3, 10)).unwrap();
        let xi = IrrationalParam::from_rational(&rat(1, 5)).unwrap();
        let f = from_alpha_xi(&a, &xi).unwrap();
        let unscaled: Vec<Rat> =
            f.lengths().iter().map(|l| l * (Rat::one() + rat(1, 5))).collect();
        assert_eq!(unscaled, vec![rat(1, 5), rat(1, 2), rat(1, 2)]);
        assert_eq!(*f.total(), rat(1, 1));

        let a2 = IrrationalParam::from_rational(&rat(9, 10)).unwrap();
        let f2 = from_alpha_xi(&a2, &xi).unwrap();
        let unscaled2: Vec<Rat> =
            f2.lengths().iter().map(|l| l * (Rat::one() + rat(1, 5))).collect();
        assert_eq!(unscaled2, vec![rat(1, 5), rat(9, 10), rat(1, 10)]);
    }

    #[test]
    fn alpha_xi_roundtrip_and_degeneracy() {
        for (p_a, q_a, p_x, q_x) in [(3i64, 10i64, 1i64, 5i64), (9, 10, 1, 5), (2, 7, 3, 11), (5, 8, 1, 2)] {
            let a = IrrationalParam::from_rational(&rat(p_a, q_a)).unwrap();
            let xi = IrrationalParam::from_rational(&rat(p_x, q_x)).unwrap();
            let f = from_alpha_xi(&a, &xi).unwrap();
            let (a_back, xi_back) = alpha_xi_from_iet(&f).unwrap();
            assert_eq!(a_back, rat(p_a, q_a));
            assert_eq!(xi_back, rat(p_x, q_x));
        }
        // exact degeneracy
        let a = IrrationalParam::from_rational(&rat(3, 5)).unwrap();
        let xi = IrrationalParam::from_rational(&rat(2, 5)).unwrap();
        assert!(matches!(from_alpha_xi(&a, &xi), Err(Error::Domain(_))));
        // uncertifiable sign: alpha + xi - 1 smaller than the proxy slack
        let g = golden(8);
        let xi_near = Rat::one() - g.proxy();
        let xi_p = IrrationalParam::from_rational(&xi_near).unwrap();
        assert!(matches!(from_alpha_xi(&g, &xi_p), Err(Error::Precision(_))));
    }

    #[test]
    fn coding_matches_rational_orbit_tracking() {
        let h = from_alpha_xi(&golden(25), &IrrationalParam::from_rational(&rat(2, 5)).unwrap())
            .unwrap();
        let x0 = rat(355, 1130);
        let code = coding(&h, &x0, 800).unwrap();
        let mut y = x0;
        for (i, &sym) in code.iter().enumerate() {
            let pos = h.locate(&y).unwrap();
            assert_eq!(pos as u8, sym, "symbol mismatch at step {i}");
            y = h.apply(&y).unwrap();
        }
    }

    #[test]
    fn rotation_covering_counts_stay_bounded() {
        let g = rotation_iet(&golden(30));
        let run = metric_entropy_estimate(&g, &rat(1, 10), 200, 11, 800, Scale::Polynomial)
            .unwrap();
        let max = run.counts.iter().map(|&(_, c)| c).max().unwrap();
        assert!(max <= 15, "rotation covering exploded: {:?}", run.counts);
        assert!(run.estimate.exponent <= 0.1, "exponent {}", run.estimate.exponent);
    }

    #[test]
    fn semitop_atoms_grow_linearly_for_idoc_three_iet() {
        let h = from_alpha_xi(&golden(30), &IrrationalParam::from_rational(&rat(2, 5)).unwrap())
            .unwrap();
        let (counts, est) = semitop_entropy_estimate(&h, &rat(1, 20), 600, Scale::Polynomial)
            .unwrap();
        assert!((est.exponent - 1.0).abs() < 0.1, "exponent {}", est.exponent);
        for (n, c) in counts {
            assert!(c <= 2 * n + 1);
        }
        let (_, top) = top_entropy_estimate(&h, 600, Scale::Polynomial).unwrap();
        assert!((top.exponent - 1.0).abs() < 0.05, "top exponent {}", top.exponent);
    }
}
