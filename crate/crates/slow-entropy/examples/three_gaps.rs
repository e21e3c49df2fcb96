//! The three-gap structure of a rotation orbit, exactly: the points
//! `{j theta : j = 0..=n}` cut the circle into arcs of at most three
//! lengths, the largest the sum of the other two.  Covering counts along
//! the special times `n_k` approach the orbit length itself.
//!
//!     cargo run --example three_gaps

use slow_entropy::arithmetic::IrrationalParam;
use slow_entropy::exact::{parse_rat, rat_to_f64};
use slow_entropy::rotation_gaps::{cover_count, gap_structure, semitop_subsequence};
use slow_entropy::Result;

fn main() -> Result<()> {
    let theta = IrrationalParam::parse("[0;(1)]", 40)?;
    println!("{:>5} {:>3} {:>3} {:>5}   small          middle         large", "n", "k", "m", "r");
    for n in [5, 12, 33, 88, 233, 610] {
        let gs = gap_structure(&theta, n)?;
        println!(
            "{:>5} {:>3} {:>3} {:>5}   {:.8} x{:<4} {:.8} x{:<4} {:.8} x{:<4}",
            n,
            gs.k,
            gs.m,
            gs.r,
            rat_to_f64(&gs.small.length),
            gs.small.count,
            rat_to_f64(&gs.middle.length),
            gs.middle.count,
            rat_to_f64(&gs.large.length),
            gs.large.count,
        );
        assert_eq!(gs.small.count + gs.middle.count + gs.large.count, n + 1);
        if gs.large.count > 0 {
            assert_eq!(&gs.small.length + &gs.middle.length, gs.large.length);
        }
    }

    // Fewest cylinders needed to fill all but an epsilon-fraction of the
    // circle, along the tight subsequence n_k: the ratio to n approaches 1,
    // which is how the coding's linear orbit growth shows up in measure.
    let epsilon = parse_rat("1/20")?;
    println!("\ncover counts at epsilon = 1/20 along the tight times n_k:");
    println!("{:>3} {:>8} {:>8} {:>8}", "k", "n_k", "C(n_k)", "C/n");
    for pt in semitop_subsequence(&theta, &epsilon, 10)? {
        println!(
            "{:>3} {:>8} {:>8} {:>8.4}",
            pt.k,
            pt.n,
            pt.count,
            pt.count as f64 / pt.n as f64
        );
    }

    // at a generic n the count is lower: middle-length cylinders carry
    // more mass per atom, so the greedy cover stops earlier
    let n = 400u64;
    let gs = gap_structure(&theta, n)?;
    println!("\ngeneric n = {n}: C = {} ({} arcs total)", cover_count(&gs, &epsilon)?, n + 1);
    Ok(())
}
