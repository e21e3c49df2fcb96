//! The dictionary between a rotation number `alpha` with section parameter
//! `xi` and the normalized symmetric 3-interval exchange: both directions
//! of the translation, the branch at `alpha + xi = 1`, and the `S_alpha`
//! membership profile that certifies which `xi` give well-behaved
//! parameters.
//!
//!     cargo run --example alpha_xi_dictionary

use slow_entropy::arithmetic::{s_alpha_profile, IrrationalParam};
use slow_entropy::exact::rat_to_f64;
use slow_entropy::iet::{alpha_xi_from_iet, from_alpha_xi, idoc_check};
use slow_entropy::Result;

fn main() -> Result<()> {
    let alpha = IrrationalParam::parse("[0;(1)]", 40)?;

    // both branches of the construction, each inverted exactly
    for (label, xi_spec) in [("alpha + xi < 1", "2/5"), ("alpha + xi > 1", "3/4")] {
        let xi = IrrationalParam::parse(xi_spec, 0)?;
        let iet = from_alpha_xi(&alpha, &xi)?;
        println!("xi = {xi_spec} ({label}): lengths");
        for l in iet.lengths() {
            println!("  {l} = {:.8}", rat_to_f64(l));
        }
        let (a_back, xi_back) = alpha_xi_from_iet(&iet)?;
        assert_eq!(&a_back, alpha.proxy());
        assert_eq!(&xi_back, xi.proxy());
        println!("  inverts to alpha = {:.8}, xi = {xi_back}", rat_to_f64(&a_back));
        assert!(idoc_check(&iet, 500)?.holds());
    }

    // the boundary itself is rejected: with xi = 1 - proxy(alpha) the sign
    // of alpha + xi - 1 cannot be certified against the proxy error
    let boundary = IrrationalParam::from_rational(
        &(slow_entropy::exact::rat(1, 1) - alpha.proxy()),
    )?;
    match from_alpha_xi(&alpha, &boundary) {
        Err(e) => println!("\nboundary xi = 1 - alpha rejected: {e}"),
        Ok(_) => unreachable!("degenerate section must not construct"),
    }

    // membership profile: c_n = q_n * min_{|j| < q_n} ||xi - j alpha||.
    // A xi whose profile stays away from zero behaves like a point of the
    // admissible set; xi = alpha itself hits zero at j = 1.
    println!("\nprofile of xi = 1/2 against golden alpha:");
    println!("{:>3} {:>12} {:>12}", "n", "c_n", "error");
    let profile = s_alpha_profile(&IrrationalParam::parse("1/2", 0)?, &alpha, 12)?;
    let mut min = f64::INFINITY;
    for e in &profile {
        println!("{:>3} {:>12.6} {:>12.2e}", e.n, rat_to_f64(&e.c_n), rat_to_f64(&e.error));
        min = min.min(rat_to_f64(&e.c_n));
    }
    println!("empirical membership constant: {min:.6}");
    assert!(min > 0.0);

    // the scan window |j| < q_n only reaches the hit at j = 1 once q_n > 1
    let self_profile = s_alpha_profile(&alpha, &alpha, 12)?;
    assert!(self_profile.iter().skip(1).all(|e| e.c_n == slow_entropy::exact::rat(0, 1)));
    println!("profile of xi = alpha vanishes from n = 2 on (the orbit hit at j = 1)");
    Ok(())
}
