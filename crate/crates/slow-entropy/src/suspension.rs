//! Suspension flows with a two-step roof over a circle rotation, and the
//! affine skew shift of the torus.
//!
//! The roof is `f(x) = d1` on `[0, xi)` and `d2` on `[xi, 1)`; the flow
//! moves points `(x, s)` upward at unit speed and, on reaching the roof,
//! jumps to `(x + alpha mod 1, 0)`.  Flow orbits are coded by the square
//! grid of side `1/k`: the cell of `(x, s)` is `(floor(x k), floor(s k))`.
//!
//! Two implementations of the coded mismatch time are kept side by side:
//! an event-driven one over big rationals ([`coded_mismatch_time`], the
//! reference), and an integer fast path used by the covering estimator
//! that collapses all height-gridline events of a segment into a closed
//! form.  Both are exact — the fast path works over a common denominator
//! chosen so every roof-hit time, height and grid line is an integer —
//! and a test pins them equal on a sweep of configurations.

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

use crate::arithmetic::IrrationalParam;
use crate::covering::{covering_estimate, draw_bits, epsilon_parts, lattice_prime};
use crate::error::{Error, Result};
use crate::exact::{floor_int, Int, Rat};
use crate::scales::{exponent_fit, geometric_grid, EntropyEstimate, Scale, FIT_GRID_MIN};

/// Two-valued step roof: `d1` on `[0, xi)`, `d2` on `[xi, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct StepRoof {
    d1: Rat,
    d2: Rat,
    xi: Rat,
}

impl StepRoof {
    pub fn new(d1: Rat, d2: Rat, xi: Rat) -> Result<Self> {
        if !d1.is_positive() || !d2.is_positive() {
            return Err(Error::Domain("roof heights must be positive".into()));
        }
        if !xi.is_positive() || xi >= Rat::one() {
            return Err(Error::Domain(format!("roof step xi = {xi} outside (0,1)")));
        }
        Ok(StepRoof { d1, d2, xi })
    }

    pub fn d1(&self) -> &Rat {
        &self.d1
    }

    pub fn d2(&self) -> &Rat {
        &self.d2
    }

    pub fn xi(&self) -> &Rat {
        &self.xi
    }

    pub fn eval(&self, x: &Rat) -> Result<&Rat> {
        if x.is_negative() || *x >= Rat::one() {
            return Err(Error::Domain(format!("base point {x} outside [0,1)")));
        }
        Ok(if *x < self.xi { &self.d1 } else { &self.d2 })
    }

    pub fn min_height(&self) -> &Rat {
        if self.d1 <= self.d2 {
            &self.d1
        } else {
            &self.d2
        }
    }

    pub fn max_height(&self) -> &Rat {
        if self.d1 >= self.d2 {
            &self.d1
        } else {
            &self.d2
        }
    }

    /// Area under the roof, `d1 xi + d2 (1 - xi)` — the total mass of the
    /// suspension with Lebesgue base.
    pub fn area(&self) -> Rat {
        &self.d1 * &self.xi + &self.d2 * (Rat::one() - &self.xi)
    }

    pub fn is_constant(&self) -> bool {
        self.d1 == self.d2
    }
}

fn check_unit(name: &str, v: &Rat) -> Result<()> {
    if v.is_negative() || *v >= Rat::one() {
        return Err(Error::Domain(format!("{name} = {v} outside [0,1)")));
    }
    Ok(())
}

const STEP_BUDGET: u64 = 20_000_000;

/// Exact Birkhoff sum `sum_{j<n} f(x + j alpha mod 1)`.
pub fn birkhoff_sum(roof: &StepRoof, alpha: &Rat, x: &Rat, n: u64) -> Result<Rat> {
    check_unit("x", x)?;
    check_unit("alpha", alpha)?;
    if n > STEP_BUDGET {
        return Err(Error::Resource(format!("Birkhoff horizon {n} exceeds the step budget")));
    }
    let mut acc = Rat::zero();
    let mut pos = x.clone();
    for _ in 0..n {
        acc += roof.eval(&pos)?;
        pos += alpha;
        if pos >= Rat::one() {
            pos -= Rat::one();
        }
    }
    Ok(acc)
}

/// Birkhoff-sum difference through orbit crossings: for `0 < x < y < 1`,
///
/// `f^(n)(x) - f^(n)(y) = (d1 - d2) * ( #{ j < n : xi - j alpha mod 1 in (x, y] }
///                                    - #{ j < n :    - j alpha mod 1 in (x, y] } )`.
///
/// Each summand `f(x + j a) - f(y + j a)` is a difference of arc
/// indicators, and an arc `[u, v)` contributes through its endpoints:
/// `1_{[u,v)}(x) - 1_{[u,v)}(y) = 1_{(x,y]}(v) - 1_{(x,y]}(u)`.  The
/// identity is exact for every `alpha`, rational or not.
pub fn birkhoff_diff_crossing(
    roof: &StepRoof,
    alpha: &Rat,
    x: &Rat,
    y: &Rat,
    n: u64,
) -> Result<Rat> {
    check_unit("alpha", alpha)?;
    if !x.is_positive() || x >= y || *y >= Rat::one() {
        return Err(Error::Domain(format!("need 0 < x < y < 1, got x = {x}, y = {y}")));
    }
    if n > STEP_BUDGET {
        return Err(Error::Resource(format!("crossing horizon {n} exceeds the step budget")));
    }
    let mut hits = 0i64;
    // u_j = xi - j alpha mod 1,  v_j = - j alpha mod 1, updated in place
    let mut u = roof.xi.clone();
    let mut v = Rat::zero();
    let in_window = |p: &Rat| p > x && p <= y;
    for _ in 0..n {
        if in_window(&u) {
            hits += 1;
        }
        if in_window(&v) {
            hits -= 1;
        }
        u -= alpha;
        if u.is_negative() {
            u += Rat::one();
        }
        v -= alpha;
        if v.is_negative() {
            v += Rat::one();
        }
    }
    Ok((&roof.d1 - &roof.d2) * Rat::from_integer(Int::from(hits)))
}

/// A point of the suspension space: base `x in [0,1)`, height
/// `0 <= s < f(x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowPoint {
    pub x: Rat,
    pub s: Rat,
}

impl FlowPoint {
    pub fn new(roof: &StepRoof, x: Rat, s: Rat) -> Result<Self> {
        if s.is_negative() || s >= *roof.eval(&x)? {
            return Err(Error::Domain(format!("height {s} outside [0, f({x}))")));
        }
        Ok(FlowPoint { x, s })
    }
}

/// Flow the point for time `t >= 0`; returns the endpoint and the number
/// of roof crossings.  `n` is the unique count with
/// `f^(n)(x) <= s + t < f^(n+1)(x)`.
pub fn flow_step(
    roof: &StepRoof,
    alpha: &Rat,
    p: &FlowPoint,
    t: &Rat,
) -> Result<(FlowPoint, u64)> {
    check_unit("alpha", alpha)?;
    if t.is_negative() {
        return Err(Error::Domain("flow time must be nonnegative".into()));
    }
    let mut x = p.x.clone();
    let mut s = &p.s + t;
    if p.s.is_negative() || p.s >= *roof.eval(&x)? {
        return Err(Error::Domain("start height outside the roof".into()));
    }
    let mut hits = 0u64;
    loop {
        let h = roof.eval(&x)?.clone();
        if s < h {
            return Ok((FlowPoint { x, s }, hits));
        }
        s -= &h;
        x += alpha;
        if x >= Rat::one() {
            x -= Rat::one();
        }
        hits += 1;
        if hits > STEP_BUDGET {
            return Err(Error::Resource("flow time exceeds the crossing budget".into()));
        }
    }
}

fn cell_of(v: &Rat, k: u64) -> u64 {
    floor_int(&(v * Rat::from_integer(Int::from(k)))).to_u64().expect("cell index fits u64")
}

const EVENT_BUDGET: u64 = 100_000_000;

/// Lebesgue measure of `{t in [0, horizon] : the two flow orbits sit in
/// different cells of the 1/k square grid}` — zero means the orbits match
/// throughout.  Event-driven reference implementation: every roof hit and
/// every height-gridline crossing is an explicit big-rational event, and
/// the matched and mismatched segments are verified to partition the whole
/// window before returning.
pub fn matching_measure(
    roof: &StepRoof,
    alpha: &Rat,
    a: &FlowPoint,
    b: &FlowPoint,
    horizon: &Rat,
    k: u64,
) -> Result<Rat> {
    check_unit("alpha", alpha)?;
    if k == 0 {
        return Err(Error::Domain("grid must have at least one cell".into()));
    }
    if !horizon.is_positive() {
        return Err(Error::Domain("horizon must be positive".into()));
    }
    let grid = Rat::new(Int::one(), Int::from(k));

    struct Traj {
        x: Rat,
        seg_start: Rat, // time at which the current height was 0
        roof_val: Rat,
        cell_x: u64,
        cell_s: u64,
    }
    let start = |p: &FlowPoint| -> Result<Traj> {
        let rv = roof.eval(&p.x)?.clone();
        if p.s.is_negative() || p.s >= rv {
            return Err(Error::Domain("start height outside the roof".into()));
        }
        Ok(Traj {
            seg_start: -p.s.clone(),
            roof_val: rv,
            cell_x: cell_of(&p.x, k),
            cell_s: cell_of(&p.s, k),
            x: p.x.clone(),
        })
    };
    let mut t1 = start(a)?;
    let mut t2 = start(b)?;
    let mut t = Rat::zero();
    let mut mismatch = Rat::zero();
    let mut matched = Rat::zero();
    let mut guard = 0u64;
    while t < *horizon {
        guard += 1;
        if guard > EVENT_BUDGET {
            return Err(Error::Resource("too many coding events; shrink the horizon".into()));
        }
        let next_of = |tr: &Traj| -> (Rat, Rat) {
            let hit = &tr.seg_start + &tr.roof_val;
            let gridline = &tr.seg_start + &grid * Rat::from_integer(Int::from(tr.cell_s + 1));
            (hit, gridline)
        };
        let (hit1, grid1) = next_of(&t1);
        let (hit2, grid2) = next_of(&t2);
        let mut nb = horizon.clone();
        for cand in [&hit1, &grid1, &hit2, &grid2] {
            if *cand < nb {
                nb = cand.clone();
            }
        }
        if nb > t {
            if t1.cell_x != t2.cell_x || t1.cell_s != t2.cell_s {
                mismatch += &nb - &t;
            } else {
                matched += &nb - &t;
            }
        }
        t = nb;
        if t >= *horizon {
            break;
        }
        let advance = |tr: &mut Traj, hit: &Rat, gridline: &Rat| -> Result<()> {
            if *hit == t {
                tr.x += alpha;
                if tr.x >= Rat::one() {
                    tr.x -= Rat::one();
                }
                tr.seg_start = t.clone();
                tr.roof_val = roof.eval(&tr.x)?.clone();
                tr.cell_x = cell_of(&tr.x, k);
                tr.cell_s = 0;
            } else if *gridline == t {
                tr.cell_s += 1;
            }
            Ok(())
        };
        advance(&mut t1, &hit1, &grid1)?;
        advance(&mut t2, &hit2, &grid2)?;
    }
    assert_eq!(
        &mismatch + &matched,
        *horizon,
        "matched and mismatched segments must partition the window"
    );
    Ok(mismatch)
}

// ---------- integer fast path ----------

/// Roof-hit schedule of one flow orbit, over the common denominator `U`
/// of all times: segment `j` spans `[starts[j], starts[j+1])` (the first
/// start is `-s0`, i.e. the virtual hit before time zero) and the base
/// cell during it is `cells[j]`.  The height at time `t` in segment `j`
/// is `t - starts[j]`.
struct Schedule {
    starts: Vec<i128>,
    cells: Vec<u32>,
}

struct FlowGrid {
    /// common denominator of all hit times and heights; `k` divides it
    u: Int,
    /// gridline spacing in `U`-units: `U / k`
    g: u128,
    /// common denominator of base positions
    v: Int,
    k: u64,
}

impl FlowGrid {
    fn new(roof: &StepRoof, alpha: &Rat, points: &[FlowPoint], k: u64, r_max: u64) -> Result<Self> {
        if k == 0 || k > 1 << 16 {
            return Err(Error::Domain(format!("grid resolution k = {k} outside 1..=65536")));
        }
        let mut u: Int = roof.d1.denom().lcm(roof.d2.denom());
        let mut v: Int = alpha.denom().lcm(roof.xi.denom());
        for p in points {
            u = u.lcm(p.s.denom());
            v = v.lcm(p.x.denom());
        }
        u = u.lcm(&Int::from(k));
        // every quantity the walk touches must stay inside u128/i128
        let budget: Int = Int::one() << 122;
        if &v * k > budget || &u * (Int::from(r_max) * Int::from(2_000_000_000u64)) > budget {
            return Err(Error::Resource(
                "flow coding denominators overflow the integer fast path; \
                 use shallower proxies or a coarser grid"
                    .into(),
            ));
        }
        let g = (&u / Int::from(k)).to_u128().unwrap();
        Ok(FlowGrid { u, g, v, k })
    }

    fn scaled_u(&self, r: &Rat) -> u128 {
        (r.numer() * (&self.u / r.denom())).to_u128().expect("height fits the fast path")
    }

    fn scaled_v(&self, r: &Rat) -> u128 {
        (r.numer() * (&self.v / r.denom())).to_u128().expect("position fits the fast path")
    }

    fn schedule(&self, roof: &StepRoof, alpha: &Rat, p: &FlowPoint, r_max: u64) -> Schedule {
        let v_den = self.v.to_u128().unwrap();
        let alpha_step = self.scaled_v(alpha);
        let xi_thr = self.scaled_v(&roof.xi);
        let d1_u = self.scaled_u(&roof.d1);
        let d2_u = self.scaled_u(&roof.d2);
        let u_den = self.u.to_u128().unwrap();
        let horizon = r_max as i128 * u_den as i128;
        let kk = self.k as u128;

        let roof_of = |pos: u128| if pos < xi_thr { d1_u } else { d2_u };
        let cell = |pos: u128| (pos * kk / v_den) as u32;

        let mut pos = self.scaled_v(&p.x);
        let mut starts = vec![-(self.scaled_u(&p.s) as i128)];
        let mut cells = vec![cell(pos)];
        let mut t = starts[0] + roof_of(pos) as i128;
        while t <= horizon {
            pos += alpha_step;
            if pos >= v_den {
                pos -= v_den;
            }
            starts.push(t);
            cells.push(cell(pos));
            t += roof_of(pos) as i128;
        }
        starts.push(t); // sentinel: end of the last live segment
        Schedule { starts, cells }
    }
}

/// Length of the overlap of the arc `[phi, phi + len) mod g` with the arc
/// `[lo, g)`, all in integer units; `phi < g`, `len <= g`, `lo <= g`.
fn arc_overlap(phi: u128, len: u128, lo: u128, g: u128) -> u128 {
    if phi + len <= g {
        (phi + len).saturating_sub(phi.max(lo))
    } else {
        let first = g - phi.max(lo);
        let wrapped = phi + len - g; // < g
        first + wrapped.saturating_sub(lo)
    }
}

/// Mismatch time of `{t in [0, seg): floor((h + t)/g) != floor((h + d + t)/g)}`
/// for height offset `d` with `0 < d < g`: the lower height's phase
/// `(h + t) mod g` must fall in `[g - d, g)`.
fn segment_mismatch(h_low: u128, seg: u128, d: u128, g: u128) -> u128 {
    let full = seg / g;
    let rem = seg % g;
    let phi = h_low % g;
    full * d + arc_overlap(phi, rem, g - d, g)
}

/// Decide `mismatch_time(a, b; r) * eps_den <= eps_num * r` by walking the
/// merged roof-hit segments, with early exit once the budget is blown.
fn mismatch_within(a: &Schedule, b: &Schedule, r_u: u128, g: u128, rhs: u128, eps_den: u128) -> bool {
    let mut j1 = 0usize;
    let mut j2 = 0usize;
    let mut t: i128 = 0;
    let mut mm: u128 = 0;
    let end = r_u as i128;
    loop {
        let e1 = a.starts[j1 + 1];
        let e2 = b.starts[j2 + 1];
        let nb = e1.min(e2).min(end);
        let len = (nb - t) as u128;
        if len > 0 {
            if a.cells[j1] != b.cells[j2] {
                mm += len;
            } else {
                let h1 = (t - a.starts[j1]) as u128;
                let h2 = (t - b.starts[j2]) as u128;
                let d = h1.abs_diff(h2);
                if d >= g {
                    mm += len;
                } else if d > 0 {
                    mm += segment_mismatch(h1.min(h2), len, d, g);
                }
            }
            if mm * eps_den > rhs {
                return false;
            }
        }
        if nb == end {
            return true;
        }
        if e1 == nb {
            j1 += 1;
        }
        if e2 == nb {
            j2 += 1;
        }
        t = nb;
    }
}

/// Exact mismatch time via the integer fast path, as a rational — same
/// value as [`matching_measure`], fewer events (height-gridline crossings
/// of a segment are collapsed into a closed form).
pub fn matching_measure_fast(
    roof: &StepRoof,
    alpha: &Rat,
    a: &FlowPoint,
    b: &FlowPoint,
    r_max: u64,
    k: u64,
) -> Result<Rat> {
    check_unit("alpha", alpha)?;
    if r_max == 0 {
        return Err(Error::Domain("horizon must be positive".into()));
    }
    let points = [a.clone(), b.clone()];
    let fg = FlowGrid::new(roof, alpha, &points, k, r_max)?;
    let sa = fg.schedule(roof, alpha, a, r_max);
    let sb = fg.schedule(roof, alpha, b, r_max);
    let r_u = r_max as u128 * fg.u.to_u128().unwrap();
    // accumulate exactly: reuse the walk with an impossible budget, then
    // recompute the total by a second pass that records it
    let mut j1 = 0usize;
    let mut j2 = 0usize;
    let mut t: i128 = 0;
    let mut mm: u128 = 0;
    let end = r_u as i128;
    loop {
        let e1 = sa.starts[j1 + 1];
        let e2 = sb.starts[j2 + 1];
        let nb = e1.min(e2).min(end);
        let len = (nb - t) as u128;
        if len > 0 {
            if sa.cells[j1] != sb.cells[j2] {
                mm += len;
            } else {
                let h1 = (t - sa.starts[j1]) as u128;
                let h2 = (t - sb.starts[j2]) as u128;
                let d = h1.abs_diff(h2);
                if d >= fg.g {
                    mm += len;
                } else if d > 0 {
                    mm += segment_mismatch(h1.min(h2), len, d, fg.g);
                }
            }
        }
        if nb == end {
            break;
        }
        if e1 == nb {
            j1 += 1;
        }
        if e2 == nb {
            j2 += 1;
        }
        t = nb;
    }
    Ok(Rat::new(Int::from(mm), fg.u.clone()))
}

/// Deterministic area-measure samples of the suspension space: base and
/// height drawn from the `1/Q` lattice, height rejected against the roof.
/// Sample `i` consumes stream `i` only, so prefixes are reproducible.
/// Also returns the total number of rejection attempts — the acceptance
/// rate estimates `area / max_height`.
pub fn flow_samples_with_stats(
    roof: &StepRoof,
    m: usize,
    seed: u64,
    mersenne_exp: u32,
) -> Result<(Vec<FlowPoint>, u64)> {
    let q: Int = (Int::one() << mersenne_exp) - 1;
    let max = (1u128 << mersenne_exp) - 1;
    let top = roof.max_height().clone();
    let mut out = Vec::with_capacity(m);
    let mut attempts = 0u64;
    for i in 0..m {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        let draw = |rng: &mut ChaCha8Rng| loop {
            let v = draw_bits(rng, mersenne_exp);
            if v != 0 && v != max {
                break v;
            }
        };
        let point = loop {
            attempts += 1;
            let rx = draw(&mut rng);
            let rs = draw(&mut rng);
            let x = Rat::new(Int::from(rx), q.clone());
            let s = Rat::new(Int::from(rs), q.clone()) * &top;
            if s < *roof.eval(&x)? {
                break FlowPoint { x, s };
            }
        };
        out.push(point);
    }
    Ok((out, attempts))
}

pub fn flow_samples(
    roof: &StepRoof,
    m: usize,
    seed: u64,
    mersenne_exp: u32,
) -> Result<Vec<FlowPoint>> {
    Ok(flow_samples_with_stats(roof, m, seed, mersenne_exp)?.0)
}

/// A covering run over grid-coded orbits (flow or skew shift).
#[derive(Debug, Clone)]
pub struct GridCoveringRun {
    pub counts: Vec<(u64, u64)>,
    pub estimate: EntropyEstimate,
    pub m: usize,
    pub seed: u64,
    pub epsilon: Rat,
    pub k: u64,
}

fn default_grid_k(epsilon: &Rat) -> u64 {
    // ceil(20 / epsilon)
    let v = Rat::from_integer(Int::from(20u32)) / epsilon;
    floor_int(&v).to_u64().map_or(u64::MAX, |f| if v.is_integer() { f } else { f + 1 })
}


/// Monte-Carlo slow-entropy estimate of the suspension flow: sample the
/// area measure, cache each sample's roof-hit schedule once at the top
/// horizon, and run the greedy Hamming-ball covering at every horizon of
/// the geometric grid.  Ball membership: mismatch time `<= epsilon * R`.
pub fn flow_entropy_estimate(
    roof: &StepRoof,
    theta: &IrrationalParam,
    epsilon: &Rat,
    m: usize,
    seed: u64,
    r_max: u64,
    k: Option<u64>,
    scale: Scale,
) -> Result<GridCoveringRun> {
    if m < 100 {
        return Err(Error::InsufficientData(format!("m = {m} samples; need at least 100")));
    }
    let (e_num, e_den) = epsilon_parts(epsilon)?;
    let k = k.unwrap_or_else(|| default_grid_k(epsilon));
    let alpha = theta.proxy().clone();
    check_unit("alpha", &alpha)?;

    let grid = geometric_grid(FIT_GRID_MIN, r_max);
    if grid.len() < 8 {
        return Err(Error::InsufficientData(format!(
            "r_max = {r_max} leaves fewer than 8 horizons past the fit threshold"
        )));
    }
    let allow = (m as u64 * e_num) / e_den;
    if allow < 10 {
        return Err(Error::InsufficientData(format!(
            "epsilon * m = {allow} uncovered samples is too coarse; raise m"
        )));
    }

    let mut guard: Int = alpha.denom().lcm(roof.xi.denom());
    guard = guard.lcm(roof.d1.denom()).lcm(roof.d2.denom()).lcm(&Int::from(k));
    let (exp, _q) = lattice_prime(&guard)?;
    let points = flow_samples(roof, m, seed, exp)?;

    let fg = FlowGrid::new(roof, &alpha, &points, k, r_max)?;
    let u_u128 = fg.u.to_u128().unwrap();
    // budget audit for the early-exit comparison mm * e_den <= e_num * r_u
    {
        let worst: Int = Int::from(r_max) * &fg.u * Int::from(e_num.max(e_den));
        if worst > (Int::one() << 126) {
            return Err(Error::Resource("epsilon too fine for the integer fast path".into()));
        }
    }
    let schedules: Vec<Schedule> =
        points.iter().map(|p| fg.schedule(roof, &alpha, p, r_max)).collect();

    let mut counts = Vec::with_capacity(grid.len());
    for &r in &grid {
        let r_u = r as u128 * u_u128;
        let rhs = e_num as u128 * r_u;
        let mut covered = vec![false; m];
        let mut uncovered = m as u64;
        let mut balls = 0u64;
        let mut cursor = 0usize;
        while uncovered > allow {
            while covered[cursor] {
                cursor += 1;
            }
            let c = cursor;
            covered[c] = true;
            uncovered -= 1;
            balls += 1;
            for j in c + 1..m {
                if !covered[j]
                    && mismatch_within(&schedules[c], &schedules[j], r_u, fg.g, rhs, e_den as u128)
                {
                    covered[j] = true;
                    uncovered -= 1;
                }
            }
        }
        counts.push((r, balls));
    }
    let as_f64: Vec<(u64, f64)> = counts.iter().map(|&(n, c)| (n, c as f64)).collect();
    let estimate = exponent_fit(&as_f64, scale)?;
    Ok(GridCoveringRun { counts, estimate, m, seed, epsilon: epsilon.clone(), k })
}

// ---------- skew shift ----------

/// Exact grid coding of the affine torus map `(x, y) -> (x, x + y)`:
/// symbol `n` is the packed cell `(floor(x k) << 16) | floor(y_n k)` of
/// the `1/k` square grid.  The first coordinate never moves — each fiber
/// `x = const` carries the rigid rotation by `x`.
pub fn skew_codes(x0: &Rat, y0: &Rat, k: u64, len: usize) -> Result<Vec<u32>> {
    if k == 0 || k > 1 << 16 {
        return Err(Error::Domain(format!("grid resolution k = {k} outside 1..=65536")));
    }
    check_unit("x", x0)?;
    check_unit("y", y0)?;
    let w: Int = x0.denom().lcm(y0.denom());
    let budget: Int = Int::one() << 110;
    if &w * k > budget {
        return Err(Error::Resource(
            "skew coding denominators overflow the integer fast path".into(),
        ));
    }
    let w_u = w.to_u128().unwrap();
    let scaled = |r: &Rat| (r.numer() * (&w / r.denom())).to_u128().unwrap();
    let x = scaled(x0);
    let mut y = scaled(y0);
    let kk = k as u128;
    let cx = ((x * kk / w_u) as u32) << 16;
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(cx | (y * kk / w_u) as u32);
        y += x;
        if y >= w_u {
            y -= w_u;
        }
    }
    Ok(out)
}

/// Monte-Carlo slow-entropy estimate of the affine skew shift under the
/// square-grid coding, Hamming covering over lattice sample pairs.
pub fn skew_entropy_estimate(
    epsilon: &Rat,
    m: usize,
    seed: u64,
    n_max: u64,
    k: Option<u64>,
    scale: Scale,
) -> Result<GridCoveringRun> {
    if m < 100 {
        return Err(Error::InsufficientData(format!("m = {m} samples; need at least 100")));
    }
    let k = k.unwrap_or_else(|| default_grid_k(epsilon));
    let (exp, _q) = lattice_prime(&Int::from(k))?;
    let pairs = crate::covering::lattice_pairs(m, seed, exp);
    let grid = geometric_grid(FIT_GRID_MIN, n_max);
    if grid.len() < 8 {
        return Err(Error::InsufficientData(format!(
            "n_max = {n_max} leaves fewer than 8 grid points past the fit threshold"
        )));
    }
    let n_top = *grid.last().unwrap() as usize;
    let codes: Vec<Vec<u32>> = pairs
        .iter()
        .map(|(x, y)| skew_codes(x, y, k, n_top))
        .collect::<Result<_>>()?;
    let (counts, estimate) = covering_estimate(&codes, &grid, epsilon, scale)?;
    Ok(GridCoveringRun { counts, estimate, m, seed, epsilon: epsilon.clone(), k })
}
