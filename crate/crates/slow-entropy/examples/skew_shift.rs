//! The affine skew shift `(x, y) -> (x, x + y)` of the torus under the
//! square-grid coding.  Each fiber `x = const` is a rigid rotation, so a
//! pair on one fiber pays a constant-rate mismatch toll; a pair on two
//! fibers drifts apart at speed `|x - x'|` and its mismatch fraction
//! saturates.  That drift is what the Hamming covering turns into growth.
//!
//!     cargo run --example skew_shift

use slow_entropy::exact::{parse_rat, rat};
use slow_entropy::scales::Scale;
use slow_entropy::suspension::{skew_codes, skew_entropy_estimate};
use slow_entropy::Result;

fn mismatch_fraction(a: &[u32], b: &[u32], n: usize) -> f64 {
    let d = a[..n].iter().zip(&b[..n]).filter(|(u, v)| u != v).count();
    d as f64 / n as f64
}

fn main() -> Result<()> {
    let k = 2;
    let len = 4096;

    // one fiber, two heights: the code difference is a rotation coding
    // difference, frequency ~ 2 k |dy| forever
    let base = skew_codes(&rat(13, 89), &rat(1, 5), k, len)?;
    let same_fiber = skew_codes(&rat(13, 89), &(rat(1, 5) + rat(1, 50)), k, len)?;
    // two fibers: the height offset grows by |dx| per step until it wraps
    let other_fiber = skew_codes(&(rat(13, 89) + rat(1, 50)), &rat(1, 5), k, len)?;

    println!("mismatch fractions against the (13/89, 1/5) orbit:");
    println!("{:>6} {:>12} {:>12}", "n", "same fiber", "other fiber");
    for n in [32usize, 128, 512, 2048, 4096] {
        println!(
            "{:>6} {:>12.4} {:>12.4}",
            n,
            mismatch_fraction(&base, &same_fiber, n),
            mismatch_fraction(&base, &other_fiber, n)
        );
    }
    let flat = mismatch_fraction(&base, &same_fiber, len);
    let grown = mismatch_fraction(&base, &other_fiber, len);
    assert!(flat < 0.2, "fiber pair should stay cheap: {flat}");
    assert!(grown > 2.0 * flat, "cross-fiber pair should saturate: {grown}");

    // covering growth: ball tolerance in the x direction shrinks like
    // eps/n, so the count climbs linearly until the sample pool thins out
    let eps = parse_rat("1/5")?;
    let run = skew_entropy_estimate(&eps, 1200, 1, 3000, Some(k), Scale::Polynomial)?;
    println!("\ncovering at eps = 1/5, m = 1200, k = {k}:");
    for &(n, c) in run.counts.iter().step_by(3) {
        println!("  n = {n:>5}: {c:>4}");
    }
    println!(
        "fitted exponent {:.3} ({} records, residual {:.3})",
        run.estimate.exponent,
        run.estimate.record_subsequence.len(),
        run.estimate.fit_residual
    );
    // the record fit reads the steepest stretch, which at Monte-Carlo
    // sample sizes overshoots the trend; the slope through the window
    // where balls still hold several samples each is the steadier
    // linear-growth reading
    let at = |target: u64| {
        run.counts
            .iter()
            .min_by_key(|&&(n, _)| n.abs_diff(target))
            .map(|&(n, c)| (n as f64, c as f64))
            .unwrap()
    };
    let ((n1, c1), (n2, c2)) = (at(18), (at(87)));
    let early = (c2.ln() - c1.ln()) / (n2.ln() - n1.ln());
    println!("early-window slope {early:.3} between n = {n1} and n = {n2}");
    assert!(run.estimate.exponent > 0.5);
    assert!(early > 0.6 && early < 1.4, "early-window slope {early}");
    Ok(())
}
