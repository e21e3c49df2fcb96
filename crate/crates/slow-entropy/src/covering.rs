//! Monte-Carlo covering counts in the time-n Hamming metric.
//!
//! The metric (and semi-topological) covering numbers are estimated by the
//! same machinery everywhere: draw `m` starting points, code each orbit
//! symbolically to the maximal time, and greedily cover the sample set by
//! Hamming balls — a sample is inside the ball of a center when their codes
//! disagree on strictly fewer than `epsilon * n` of the first `n` symbols.
//! Greedy stops once at most `floor(epsilon * m)` samples (an
//! epsilon-fraction of the empirical measure) remain uncovered.  Everything
//! is integer-exact: no float ever decides ball membership.
//!
//! Starting points come from a rational lattice `r/Q` with `Q` a Mersenne
//! prime coprime to every partition-endpoint denominator in play.  That
//! choice is load-bearing: an orbit point of a piecewise translation lies
//! on a discontinuity only if `r/Q` differs from an endpoint by a rational
//! with the endpoints' denominator, which forces `Q | r` — impossible for
//! `0 < r < Q`.  Samples therefore never need endpoint tie-breaking, and
//! coding cannot fail mid-orbit.  The draw itself is rejection sampling on
//! raw ChaCha8 output (stream `i` for sample `i`), so runs are reproducible
//! from `(seed, m)` alone, independent of any distribution-crate internals.

use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rand_chacha::ChaCha8Rng;
use rand_core::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::exact::{Int, Rat};
use crate::scales::{exponent_fit, EntropyEstimate, Scale};

/// Exponents `p` of the candidate lattice denominators `2^p - 1`, all prime.
const MERSENNE_EXPONENTS: [u32; 3] = [61, 89, 107];

/// Smallest Mersenne prime `2^p - 1` coprime to `denom`; returns `(p, Q)`.
pub fn lattice_prime(denom: &Int) -> Result<(u32, Int)> {
    for p in MERSENNE_EXPONENTS {
        let q: Int = (Int::one() << p) - 1;
        if denom.gcd(&q).is_one() {
            return Ok((p, q));
        }
    }
    Err(Error::Resource(
        "endpoint denominators share factors with every candidate lattice prime".into(),
    ))
}

pub(crate) fn draw_bits(rng: &mut ChaCha8Rng, bits: u32) -> u128 {
    if bits <= 64 {
        (rng.next_u64() & ((1u64 << bits) - 1)) as u128
    } else {
        let lo = rng.next_u64() as u128;
        let hi = rng.next_u64() as u128;
        ((hi << 64) | lo) & ((1u128 << bits) - 1)
    }
}

/// `m` deterministic lattice points `r_i / Q` in `(0, 1)`, `0 < r_i < Q`.
/// Sample `i` draws from stream `i`, so any prefix of a larger run is
/// bit-identical to a smaller run with the same seed.
pub fn lattice_points(m: usize, seed: u64, mersenne_exp: u32) -> Vec<Rat> {
    let q: Int = (Int::one() << mersenne_exp) - 1;
    let max = (1u128 << mersenne_exp) - 1; // == Q as u128
    (0..m)
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            let r = loop {
                let v = draw_bits(&mut rng, mersenne_exp);
                if v != 0 && v != max {
                    break v;
                }
            };
            Rat::new(Int::from(r), q.clone())
        })
        .collect()
}

/// `m` deterministic lattice pairs `(r_i / Q, r'_i / Q)`, both coordinates
/// interior.  Pair `i` draws from streams `2i` and `2i + 1`, keeping the
/// prefix property of [`lattice_points`].
pub fn lattice_pairs(m: usize, seed: u64, mersenne_exp: u32) -> Vec<(Rat, Rat)> {
    let q: Int = (Int::one() << mersenne_exp) - 1;
    let max = (1u128 << mersenne_exp) - 1;
    let one = |stream: u64| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        let r = loop {
            let v = draw_bits(&mut rng, mersenne_exp);
            if v != 0 && v != max {
                break v;
            }
        };
        Rat::new(Int::from(r), q.clone())
    };
    (0..m).map(|i| (one(2 * i as u64), one(2 * i as u64 + 1))).collect()
}

/// Greedy covering counts at each `n` of the grid.
///
/// `codes[i]` is the symbolic orbit of sample `i`; any symbol type with
/// equality works (interval indices, packed cell pairs, ...).  Every code
/// must reach the largest grid time.  Greedy picks the lowest-index
/// uncovered sample as the next ball center — deterministic, so a run is
/// fully reproducible from the codes alone.
pub fn covering_counts<C: PartialEq>(
    codes: &[Vec<C>],
    n_grid: &[u64],
    epsilon: &Rat,
) -> Result<Vec<(u64, u64)>> {
    let m = codes.len();
    let (e_num, e_den) = epsilon_parts(epsilon)?;
    let allow_uncovered = (e_num as u128 * m as u128 / e_den as u128) as usize;
    if allow_uncovered < 10 {
        return Err(Error::InsufficientData(format!(
            "an epsilon-fraction of {m} samples rounds below 10; draw at least {} samples",
            (10 * e_den).div_ceil(e_num)
        )));
    }
    let Some(&n_max) = n_grid.iter().max() else {
        return Err(Error::Domain("empty evaluation grid".into()));
    };
    if n_grid.contains(&0) {
        return Err(Error::Domain("covering times must be >= 1".into()));
    }
    if let Some(short) = codes.iter().position(|c| (c.len() as u64) < n_max) {
        return Err(Error::Domain(format!(
            "code {short} has {} symbols, grid needs {n_max}",
            codes[short].len()
        )));
    }

    let mut out = Vec::with_capacity(n_grid.len());
    for &n in n_grid {
        // inside the ball  <=>  mismatches < epsilon * n
        //                  <=>  mismatches <= (e_num * n - 1) div e_den
        let max_mism = ((e_num as u128 * n as u128 - 1) / e_den as u128) as u64;
        let mut covered = vec![false; m];
        let mut uncovered = m;
        let mut count = 0u64;
        let mut cursor = 0usize;
        while uncovered > allow_uncovered {
            while covered[cursor] {
                cursor += 1;
            }
            let center = cursor;
            count += 1;
            for j in center..m {
                if !covered[j] && within(&codes[center], &codes[j], n as usize, max_mism) {
                    covered[j] = true;
                    uncovered -= 1;
                }
            }
        }
        out.push((n, count));
    }
    Ok(out)
}

/// Covering counts plus a growth-exponent fit in one call.
pub fn covering_estimate<C: PartialEq>(
    codes: &[Vec<C>],
    n_grid: &[u64],
    epsilon: &Rat,
    scale: Scale,
) -> Result<(Vec<(u64, u64)>, EntropyEstimate)> {
    let counts = covering_counts(codes, n_grid, epsilon)?;
    let as_f64: Vec<(u64, f64)> = counts.iter().map(|&(n, c)| (n, c as f64)).collect();
    let est = exponent_fit(&as_f64, scale)?;
    Ok((counts, est))
}

pub(crate) fn epsilon_parts(epsilon: &Rat) -> Result<(u64, u64)> {
    use num_traits::Signed;
    if !epsilon.is_positive() || *epsilon >= Rat::one() {
        return Err(Error::Domain(format!("epsilon = {epsilon} outside (0,1)")));
    }
    match (epsilon.numer().to_u64(), epsilon.denom().to_u64()) {
        (Some(n), Some(d)) if d <= 1_000_000_000 => Ok((n, d)),
        _ => Err(Error::Domain(format!(
            "epsilon = {epsilon} is needlessly fine-grained; use a denominator <= 1e9"
        ))),
    }
}

fn within<C: PartialEq>(a: &[C], b: &[C], n: usize, max_mism: u64) -> bool {
    let mut mism = 0u64;
    for i in 0..n {
        if a[i] != b[i] {
            mism += 1;
            if mism > max_mism {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use num_traits::{Signed, Zero};

    #[test]
    fn lattice_points_are_deterministic_and_interior() {
        let a = lattice_points(64, 7, 61);
        let b = lattice_points(64, 7, 61);
        assert_eq!(a, b);
        let c = lattice_points(64, 8, 61);
        assert_ne!(a, c);
        // prefix stability: sample i depends only on (seed, i)
        let first = lattice_points(8, 7, 61);
        assert_eq!(&a[..8], &first[..]);
        let q = (Int::one() << 61) - 1;
        for x in &a {
            assert!(x.is_positive() && *x < rat(1, 1));
            assert_eq!(*x.denom(), q); // r never shares a factor with a prime Q
        }
        // loose sanity on uniformity
        let mean: Rat = a.iter().sum::<Rat>() / rat(64, 1);
        let dev = (mean - rat(1, 2)).abs();
        assert!(dev < rat(1, 10), "suspicious sample mean");
    }

    #[test]
    fn lattice_prime_skips_shared_factors() {
        let (p, q) = lattice_prime(&Int::from(1_000_000_007u64)).unwrap();
        assert_eq!(p, 61);
        let m61: Int = (Int::one() << 61) - 1;
        assert_eq!(q, m61);
        // force a denominator divisible by 2^61 - 1
        let (p2, _) = lattice_prime(&(m61 * Int::from(12u32))).unwrap();
        assert_eq!(p2, 89);
    }

    #[test]
    fn greedy_covering_on_handmade_codes() {
        // 60 identical codes and 20 codes at Hamming distance 4
        let a = vec![0u8; 8];
        let mut b = vec![0u8; 8];
        for i in 0..4 {
            b[i] = 1;
        }
        let mut codes: Vec<Vec<u8>> = Vec::new();
        codes.extend(std::iter::repeat_n(a, 60));
        codes.extend(std::iter::repeat_n(b, 20));
        // eps = 1/4, n = 8: ball radius is 1 mismatch, so the B block stays
        // outside — but 20 uncovered samples are exactly the allowed fraction
        assert_eq!(covering_counts(&codes, &[8], &rat(1, 4)).unwrap(), vec![(8, 1)]);
        // eps = 1/5: only 16 may remain uncovered; now B needs its own ball
        assert_eq!(covering_counts(&codes, &[8], &rat(1, 5)).unwrap(), vec![(8, 2)]);
    }

    #[test]
    fn ball_membership_is_strictly_below_epsilon_n() {
        // distance exactly epsilon * n must NOT join the ball
        let x = vec![0u8; 10];
        let mut y3 = vec![0u8; 10];
        let mut y2 = vec![0u8; 10];
        for i in 0..3 {
            y3[i] = 1;
        }
        for i in 0..2 {
            y2[i] = 1;
        }
        let mk = |w: &Vec<u8>| std::iter::repeat_n(w.clone(), 22).collect::<Vec<_>>();
        let mut at3 = mk(&x);
        at3.extend(mk(&y3));
        let mut at2 = mk(&x);
        at2.extend(mk(&y2));
        let eps = rat(3, 10); // radius boundary at 3 mismatches of n = 10
        assert_eq!(covering_counts(&at3, &[10], &eps).unwrap(), vec![(10, 2)]);
        assert_eq!(covering_counts(&at2, &[10], &eps).unwrap(), vec![(10, 1)]);
    }

    #[test]
    fn input_validation() {
        let codes: Vec<Vec<u8>> = (0..50).map(|i| vec![i as u8; 4]).collect();
        assert!(matches!(
            covering_counts(&codes, &[4], &rat(1, 10)),
            Err(Error::InsufficientData(_))
        ));
        let codes: Vec<Vec<u8>> = (0..100).map(|i| vec![i as u8; 4]).collect();
        assert!(covering_counts(&codes, &[4], &rat(1, 10)).is_ok());
        assert!(covering_counts(&codes, &[5], &rat(1, 10)).is_err()); // codes too short
        assert!(covering_counts(&codes, &[], &rat(1, 10)).is_err());
        assert!(covering_counts(&codes, &[0], &rat(1, 10)).is_err());
        assert!(covering_counts(&codes, &[4], &rat(0, 1)).is_err());
        assert!(covering_counts(&codes, &[4], &rat(3, 2)).is_err());
    }

    #[test]
    fn counts_never_increase_with_epsilon() {
        // pseudo-random but deterministic codes over a 4-letter alphabet
        let mut state = 0x243F6A8885A308D3u64;
        let mut codes: Vec<Vec<u8>> = Vec::new();
        for _ in 0..200 {
            let mut c = Vec::with_capacity(64);
            for _ in 0..64 {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                c.push(((state >> 59) & 3) as u8);
            }
            codes.push(c);
        }
        let mut last = u64::MAX;
        for d in [1i64, 2, 3, 5, 8] {
            let eps = rat(d, 10);
            let c = covering_counts(&codes, &[64], &eps).unwrap()[0].1;
            assert!(c <= last);
            last = c;
        }
        // counts stay within the trivial bounds at every grid time
        let grid = [4u64, 8, 16, 32, 64];
        let counts = covering_counts(&codes, &grid, &rat(1, 10)).unwrap();
        for (_, c) in counts {
            assert!(c >= 1 && c <= 200);
        }
        let zero = Rat::zero();
        assert!(epsilon_parts(&zero).is_err());
    }
}
