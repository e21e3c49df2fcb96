//! Monte-Carlo Hamming-ball covering of interval-exchange codings.  A
//! rotation (2-IET) is rigid: within a Hamming ball of any fixed radius
//! the covering count stops growing almost immediately.  A well-chosen
//! 3-IET instead shows clean linear growth, and the three estimates line
//! up in the variational order metric <= semi-topological <= topological.
//!
//!     cargo run --example metric_covering

use slow_entropy::arithmetic::IrrationalParam;
use slow_entropy::exact::{parse_rat, rat};
use slow_entropy::iet::{
    coding, from_alpha_xi, hamming_distance, metric_entropy_estimate, semitop_entropy_estimate,
    top_entropy_estimate, IntervalExchange,
};
use slow_entropy::scales::Scale;
use slow_entropy::Result;

fn main() -> Result<()> {
    let golden = IrrationalParam::parse("[0;(1)]", 40)?;

    // two nearby starting points of the rotation: the codes disagree only
    // when the moving arc (x, y] straddles a partition endpoint, so the
    // mismatch count grows like a fixed fraction of n, not like n itself
    let rot = IntervalExchange::rotation(&golden)?;
    let (x, y) = (rat(3, 10), rat(3, 10) + rat(1, 1000));
    let (cx, cy) = (coding(&rot, &x, 4096)?, coding(&rot, &y, 4096)?);
    println!("rotation pair at distance 1/1000: mismatch fraction by horizon");
    for n in [64usize, 256, 1024, 4096] {
        let d = hamming_distance(&cx, &cy, n);
        println!("  n = {n:>5}: {d:>3} mismatches ({:.4})", d as f64 / n as f64);
    }

    // covering growth of the rotation: bounded
    let eps = parse_rat("1/10")?;
    let run = metric_entropy_estimate(&rot, &eps, 400, 1, 10_000, Scale::Polynomial)?;
    let peak = run.counts.iter().map(|&(_, c)| c).max().unwrap();
    println!(
        "\n2-IET covering at eps = 1/10, m = 400: peak count {peak}, exponent {:.3}",
        run.estimate.exponent
    );
    assert!(run.estimate.exponent <= 0.1);

    // the 3-IET from the dictionary: linear covering growth
    let three = from_alpha_xi(&golden, &IrrationalParam::parse("1/2", 0)?)?;
    let eps = parse_rat("1/20")?;
    let run = metric_entropy_estimate(&three, &eps, 2000, 1, 5000, Scale::Polynomial)?;
    println!("\n3-IET covering at eps = 1/20, m = 2000:");
    for &(n, c) in run.counts.iter().step_by(4) {
        println!("  n = {n:>5}: {c:>5} balls");
    }
    println!(
        "exponent {:.3} (residual {:.3}, {} records)",
        run.estimate.exponent,
        run.estimate.fit_residual,
        run.estimate.record_subsequence.len()
    );
    assert!((run.estimate.exponent - 1.0).abs() < 0.2);

    // count-level ordering is a theorem: a (1-eps)-cover never needs more
    // atoms than the full refinement has
    let (semi_counts, _) = semitop_entropy_estimate(&three, &eps, 2000, Scale::Polynomial)?;
    let (top_counts, _) = top_entropy_estimate(&three, 2000, Scale::Polynomial)?;
    for (&(n, s), &(n2, t)) in semi_counts.iter().zip(&top_counts) {
        assert_eq!(n, n2);
        assert!(s <= t, "cover {s} > atoms {t} at n = {n}");
    }
    println!("\ncover counts never exceed atom counts (checked on the whole grid)");

    // Goodwyn ordering of the fitted exponents on the xi = 2/5 exchange;
    // each fit contributes its residual as slack (fits on staircase data
    // can wobble by a hair even though the counts themselves are ordered)
    let three = from_alpha_xi(&golden, &IrrationalParam::parse("2/5", 0)?)?;
    let metric = metric_entropy_estimate(&three, &eps, 2000, 1, 5000, Scale::Polynomial)?.estimate;
    let (_, semitop) = semitop_entropy_estimate(&three, &eps, 2000, Scale::Polynomial)?;
    let (_, top) = top_entropy_estimate(&three, 2000, Scale::Polynomial)?;
    println!(
        "xi = 2/5: metric {:.3} <= semitop {:.3} <= top {:.3}",
        metric.exponent, semitop.exponent, top.exponent
    );
    assert!(metric.exponent <= semitop.exponent + metric.fit_residual + semitop.fit_residual);
    assert!(semitop.exponent <= top.exponent + semitop.fit_residual + top.fit_residual);
    Ok(())
}
