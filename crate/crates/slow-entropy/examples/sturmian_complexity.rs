//! Factor complexity of rotation codings: exactly `n + 1` factors of every
//! length, windowed counting as a cross-check, and the Bowen-ball count
//! `p_{2k+1+n}` that pins the subshift's covering numbers at every scale.
//!
//!     cargo run --example sturmian_complexity

use slow_entropy::arithmetic::IrrationalParam;
use slow_entropy::exact::parse_rat;
use slow_entropy::scales::Scale;
use slow_entropy::subshift::{
    bowen_span_count, complexity_exact_rotation, complexity_windowed, sturmian_word,
    top_entropy_estimate,
};
use slow_entropy::Result;

fn main() -> Result<()> {
    let theta = IrrationalParam::parse("[0;1,2,(3)]", 40)?;
    let word = sturmian_word(&theta, &parse_rat("0")?, 4000)?;
    let digits: String = word.symbols.iter().take(72).map(|&b| (b'0' + b) as char).collect();
    println!("coded word: {digits}...");

    println!("\n{:>4} {:>7} {:>9}", "n", "p_n", "windowed");
    for n in [1u64, 2, 3, 5, 8, 13, 21, 55, 144] {
        let exact = complexity_exact_rotation(&theta, n)?;
        let windowed = complexity_windowed(&word.symbols, n as usize);
        println!("{:>4} {:>7} {:>9}", n, exact, windowed);
        assert_eq!(exact, n + 1, "Sturmian words have exactly n + 1 factors");
        assert_eq!(windowed as u64, exact, "the sample window is long enough here");
    }

    // rational parameters close up: complexity saturates at the denominator
    let rational = IrrationalParam::parse("5/8", 0)?;
    let caps: Vec<u64> = (1..=10)
        .map(|n| complexity_exact_rotation(&rational, n))
        .collect::<Result<_>>()?;
    println!("\np_n for theta = 5/8: {caps:?} (periodic orbit, saturates at q = 8)");

    // Bowen balls at radius 2^-(k-1) need p_{2k+1+n} = n + 2k + 2 spanning
    // words: distance on the shift sees 2k + 1 coordinates around each time
    println!("\n{:>3} {:>6} {:>6} {:>6}", "k", "n=10", "n=50", "n=100");
    for k in 1..=4u32 {
        let row: Vec<u64> = [10u64, 50, 100]
            .iter()
            .map(|&n| bowen_span_count(&theta, k, n))
            .collect::<Result<_>>()?;
        println!("{:>3} {:>6} {:>6} {:>6}", k, row[0], row[1], row[2]);
    }

    let est = top_entropy_estimate(&theta, 3000, Scale::Polynomial)?;
    println!(
        "\npolynomial-scale exponent of p_n over n <= 3000: {:.4} (residual {:.4})",
        est.exponent, est.fit_residual
    );
    Ok(())
}
