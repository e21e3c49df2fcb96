//! Randomized structural invariants.  Everything asserted here is an exact
//! identity or an order relation that holds for every admissible parameter,
//! not just the tuned configurations the examples use; the one tolerance in
//! the file is the slack the polynomial fit is allowed on data that already
//! is a perfect power law.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use slow_entropy::arithmetic::IrrationalParam;
use slow_entropy::exact::{frac, rat};
use slow_entropy::iet::{refine, verify_refinement_pushforward, IntervalExchange};
use slow_entropy::rotation_gaps::{cover_count, gap_structure, partition_endpoints};
use slow_entropy::scales::{exponent_fit, geometric_grid, Scale};
use slow_entropy::subshift::{complexity_exact_rotation, complexity_windowed, sturmian_word};
use slow_entropy::suspension::{birkhoff_sum, StepRoof};
use slow_entropy::{Int, Rat};

fn reduced(p: u64, q: u64) -> (u64, u64) {
    let g = p.gcd(&q);
    (p / g, q / g)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // Gap classes straight from the convergent ladder against the sorted
    // orbit of the same rational parameter, plus the bookkeeping the class
    // description implies: n+1 arcs of total measure one, and the longest
    // length splitting as the sum of the other two while it is present.
    #[test]
    fn gap_classes_match_the_sorted_orbit(p in 1u64..1200, q in 1201u64..4800, n in 1u64..900) {
        let (p, q) = reduced(p, q);
        prop_assume!(q > 1 && n < q);
        let theta = IrrationalParam::parse(&format!("{p}/{q}"), 0).unwrap();
        let gs = gap_structure(&theta, n).unwrap();

        let ends = partition_endpoints(&theta, n).unwrap();
        prop_assert_eq!(ends.len() as u64, n + 1);
        let mut oracle: Vec<(Rat, u64)> = Vec::new();
        let mut tally = |len: Rat| match oracle.iter_mut().find(|(l, _)| *l == len) {
            Some((_, c)) => *c += 1,
            None => oracle.push((len, 1)),
        };
        for w in ends.windows(2) {
            tally(&w[1] - &w[0]);
        }
        tally(Rat::one() - ends.last().unwrap() + &ends[0]);
        oracle.sort_by(|a, b| b.0.cmp(&a.0));
        prop_assert_eq!(oracle, gs.classes());

        prop_assert_eq!(gs.total_count(), n + 1);
        let mass = gs
            .classes()
            .into_iter()
            .fold(Rat::zero(), |acc, (l, c)| acc + l * Rat::from_integer(Int::from(c)));
        prop_assert_eq!(mass, Rat::one());
        if gs.large.count > 0 {
            prop_assert_eq!(&gs.small.length + &gs.middle.length, gs.large.length.clone());
        }

        // covering a larger fraction of the mass can only need more arcs
        let loose = cover_count(&gs, &rat(1, 5)).unwrap();
        let tight = cover_count(&gs, &rat(1, 10)).unwrap();
        prop_assert!(1 <= loose && loose <= tight && tight <= n + 1);
    }

    // Birkhoff sums over a step roof compose exactly along the orbit.
    #[test]
    fn birkhoff_sums_cocycle_exactly(
        ap in 1u64..500, aq in 501u64..2000, xp in 0i64..1000,
        d1 in 1i64..6, d2 in 1i64..6, xnum in 1i64..10,
        m in 0u64..60, n in 0u64..60,
    ) {
        let (ap, aq) = reduced(ap, aq);
        prop_assume!(aq > 1);
        let alpha = rat(ap as i64, aq as i64);
        let x = rat(xp, 1000);
        let roof = StepRoof::new(rat(d1, 2), rat(d2, 3), rat(xnum, 10)).unwrap();
        let whole = birkhoff_sum(&roof, &alpha, &x, m + n).unwrap();
        let head = birkhoff_sum(&roof, &alpha, &x, m).unwrap();
        let shifted = frac(&(&x + &alpha * Rat::from_integer(Int::from(m))));
        let tail = birkhoff_sum(&roof, &alpha, &shifted, n).unwrap();
        prop_assert_eq!(whole, head + tail);
    }

    // Depth-n refinement of an exchange partitions the interval exactly and
    // never exceeds the cut budget (d-1 new endpoints per backward step);
    // the pushforward tracker agrees that every atom rides inside a single
    // source interval the whole way.
    #[test]
    fn refinement_bookkeeping_is_exact(
        parts in prop::collection::vec(1u32..20, 2..5), n in 1u64..40,
    ) {
        let lengths: Vec<Rat> = parts.iter().map(|&w| rat(w as i64, 1)).collect();
        let iet = IntervalExchange::symmetric(lengths).unwrap();
        let d = iet.d() as u64;
        let part = refine(&iet, n).unwrap();
        let lens = part.atom_lengths();
        prop_assert_eq!(lens.len() as u64, part.atom_count());
        prop_assert!(part.atom_count() <= (d - 1) * n + 1);
        prop_assert!(lens.iter().all(|l| l.is_positive()));
        let sum = lens.iter().fold(Rat::zero(), |acc, l| acc + l);
        prop_assert_eq!(&sum, iet.total());
        prop_assert_eq!(&part.min_atom(), lens.iter().min().unwrap());
        prop_assert!(verify_refinement_pushforward(&iet, n).is_ok());
    }

    // On noiseless power-law data the record regression has nothing to
    // latch on and must return the true exponent.
    #[test]
    fn polynomial_fit_recovers_exact_power_laws(c4 in 0u32..=12, n_max in 400u64..4000) {
        let c = f64::from(c4) / 4.0;
        let counts: Vec<(u64, f64)> = geometric_grid(16, n_max)
            .into_iter()
            .map(|n| (n, (n as f64).powf(c)))
            .collect();
        let est = exponent_fit(&counts, Scale::Polynomial).unwrap();
        prop_assert!((est.exponent - c).abs() < 1e-9, "fit {} for true {}", est.exponent, c);
        prop_assert!(est.fit_residual < 1e-9);
    }

    // Every window of a coded orbit is a word of the language: the windowed
    // count is monotone in the observation length and bounded by the exact
    // complexity.
    #[test]
    fn windowed_counts_stay_under_the_exact_complexity(
        p in 1u64..300, q in 301u64..1500, n in 1usize..40, l in 96usize..1200,
    ) {
        let (p, q) = reduced(p, q);
        prop_assume!(q > 1 && l > 2 * n);
        let theta = IrrationalParam::parse(&format!("{p}/{q}"), 0).unwrap();
        let word = sturmian_word(&theta, &rat(0, 1), l).unwrap();
        let full = complexity_exact_rotation(&theta, n as u64).unwrap();
        let seen = complexity_windowed(&word.symbols, n) as u64;
        let half = complexity_windowed(&word.symbols[..l / 2 + n], n) as u64;
        prop_assert!(half <= seen && seen <= full);
    }
}
