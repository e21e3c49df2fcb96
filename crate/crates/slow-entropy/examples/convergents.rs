//! Continued fractions and certified rational proxies: convergent tables,
//! approximation errors, digit surgery for the complement, and the
//! badly-approximable certificate.
//!
//!     cargo run --example convergents

use num_traits::ToPrimitive;
use slow_entropy::arithmetic::{
    badly_approx_certificate, cf_of_rational, convergents, eta, ContinuedFraction, IrrationalParam,
};
use slow_entropy::exact::{parse_rat, rat_to_f64};
use slow_entropy::Result;

fn main() -> Result<()> {
    let golden = ContinuedFraction::golden();
    let theta = IrrationalParam::from_cf(golden.clone(), 30)?;
    println!("theta = {golden}, proxy {} (certified error < {:.3e})", theta.proxy(), rat_to_f64(theta.error_bound()));
    println!();
    println!("{:>3} {:>8} {:>8} {:>14} {:>14}", "k", "p_k", "q_k", "eta_k", "q_{k+1} eta_k");

    // the sandwich 1/2 < q_{k+1} eta_k < 1 pins every eta to its window
    for c in convergents(&golden, 12) {
        let e = eta(&theta, c.k)?;
        let q_next = theta.q(c.k + 1).unwrap();
        let product = rat_to_f64(&e.value) * q_next.to_f64().unwrap();
        println!(
            "{:>3} {:>8} {:>8} {:>14.10} {:>14.10}",
            c.k,
            c.p,
            c.q,
            rat_to_f64(&e.value),
            product
        );
        assert!(0.5 < product && product < 1.0);
    }

    println!();
    let comp = golden.one_minus();
    println!("digit surgery: 1 - {golden} = {comp}");
    let silver = ContinuedFraction::parse("[0;(2)]")?;
    println!("               1 - {silver} = {}", silver.one_minus());

    println!();
    for spec in ["[0;(1)]", "[0;(2)]", "[0;1,2,(3)]"] {
        let cf = ContinuedFraction::parse(spec)?;
        let cert = badly_approx_certificate(&cf, 25)?;
        println!(
            "{spec:<12} max quotient {:>2}, q ratio bound {:.4}",
            cert.max_quotient,
            rat_to_f64(&cert.ratio_bound)
        );
    }

    println!();
    let x = parse_rat("113/355")?;
    println!("cf(113/355) = {} (canonical: last quotient >= 2)", cf_of_rational(&x)?);
    Ok(())
}
