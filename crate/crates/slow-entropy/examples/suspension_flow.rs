//! The step-roof suspension over an irrational rotation, exactly: Birkhoff
//! sums and the crossing identity for their differences, the flow
//! semigroup, the event-driven matching measure against its integer fast
//! path, and the covering contrast between a genuinely two-valued roof and
//! a constant one.
//!
//!     cargo run --example suspension_flow

use slow_entropy::arithmetic::IrrationalParam;
use slow_entropy::exact::{parse_rat, rat, rat_to_f64};
use slow_entropy::scales::Scale;
use slow_entropy::suspension::{
    birkhoff_diff_crossing, birkhoff_sum, flow_entropy_estimate, flow_samples_with_stats,
    flow_step, matching_measure, matching_measure_fast, FlowPoint, StepRoof,
};
use slow_entropy::Result;

fn main() -> Result<()> {
    let golden = IrrationalParam::parse("[0;(1)]", 40)?;
    let alpha = golden.proxy().clone();
    let roof = StepRoof::new(rat(2, 1), rat(1, 1), rat(2, 5))?;
    println!(
        "roof: {} on [0, {}), {} after; area {}",
        roof.d1(),
        roof.xi(),
        roof.d2(),
        roof.area()
    );

    // Birkhoff sums, and their differences through the crossing identity:
    // f^(n)(x) - f^(n)(y) counts how often the orbit of the step point xi
    // minus the orbit of 0 falls in (x, y], scaled by the height jump
    let (x, y) = (rat(1, 7), rat(2, 3));
    println!("\n{:>6} {:>10} {:>10} {:>6}", "n", "f^n(1/7)", "f^n(2/3)", "diff");
    for n in [10u64, 100, 1000, 10000] {
        let bx = birkhoff_sum(&roof, &alpha, &x, n)?;
        let by = birkhoff_sum(&roof, &alpha, &y, n)?;
        let cross = birkhoff_diff_crossing(&roof, &alpha, &x, &y, n)?;
        assert_eq!(&bx - &by, cross);
        println!(
            "{:>6} {:>10.3} {:>10.3} {:>6}",
            n,
            rat_to_f64(&bx),
            rat_to_f64(&by),
            cross
        );
    }
    // the difference stays bounded while the sums grow linearly: that
    // cancellation is what keeps the flow from being a bare product

    // flow semigroup: t then s equals t + s, crossings included
    let p = FlowPoint::new(&roof, rat(1, 7), rat(1, 2))?;
    let (q1, h1) = flow_step(&roof, &alpha, &p, &rat(13, 4))?;
    let (q2, h2) = flow_step(&roof, &alpha, &q1, &rat(9, 5))?;
    let (q12, h12) = flow_step(&roof, &alpha, &p, &(rat(13, 4) + rat(9, 5)))?;
    assert_eq!(q2, q12);
    assert_eq!(h1 + h2, h12);
    println!("\nflow semigroup checks out; 13/4 + 9/5 time units cross {h12} roofs");

    // matching measure: the event-driven reference and the integer fast
    // path agree exactly, and a pair started in the same cell matches
    // until its first arc crossing
    let a = FlowPoint::new(&roof, rat(10, 31), rat(1, 3))?;
    let b = FlowPoint::new(&roof, rat(11, 31), rat(1, 3))?;
    let k = 2;
    let slow = matching_measure(&roof, &alpha, &a, &b, &rat(120, 1), k)?;
    let fast = matching_measure_fast(&roof, &alpha, &a, &b, 120, k)?;
    assert_eq!(slow, fast);
    println!(
        "mismatch time over horizon 120 for a base offset of 1/31: {:.4}",
        rat_to_f64(&slow)
    );
    // the pair matches until the moving arc (x, y] first straddles xi or 0;
    // from then on the accumulated roof heights differ by a unit and the
    // pair pays a steady mismatch toll -- the engine of the linear covering
    // growth below
    let frac = rat_to_f64(&slow) / 120.0;
    assert!(frac > 0.0 && frac < 0.5, "toll fraction {frac}");

    // the area sampler's acceptance rate reproduces the roof area over the
    // bounding box [0,1) x [0, max height)
    let (_, attempts) = flow_samples_with_stats(&roof, 4000, 9, 61)?;
    let rate = 4000.0 / attempts as f64;
    let expect = rat_to_f64(&roof.area()) / rat_to_f64(roof.max_height());
    println!("sampler acceptance {rate:.4}, area/bounding box {expect:.4}");
    assert!((rate - expect).abs() < 0.03);

    // covering growth: the (2,1) roof accumulates mismatch from the height
    // offsets its step writes into every orbit pair, so counts keep
    // climbing; the constant roof is a rigid translation and plateaus
    let eps = parse_rat("1/5")?;
    let run = flow_entropy_estimate(&roof, &golden, &eps, 300, 3, 600, Some(2), Scale::Polynomial)?;
    println!("\n(2,1) roof counts:");
    for &(r, c) in run.counts.iter().step_by(3) {
        println!("  R = {r:>4}: {c:>4}");
    }
    println!("exponent {:.3}", run.estimate.exponent);
    assert!(run.estimate.exponent > 0.4);

    let flat = StepRoof::new(rat(1, 1), rat(1, 1), rat(2, 5))?;
    let run = flow_entropy_estimate(&flat, &golden, &eps, 300, 3, 600, Some(2), Scale::Polynomial)?;
    println!("constant roof exponent {:.3}", run.estimate.exponent);
    assert!(run.estimate.exponent < 0.2);
    Ok(())
}
