//! Property tests for the core series algebra over generated inputs.

use nahmlab::coeff::{big_rat, Rat};
use nahmlab::exponent::{exp, exp_int};
use nahmlab::FracSeries;
use proptest::collection::vec;
use proptest::prelude::*;

fn series_strategy(denom: i64, trunc: i64) -> impl Strategy<Value = FracSeries<Rat>> {
    vec((0..trunc * denom, -9i64..=9), 0..8).prop_map(move |terms| {
        let mut s = FracSeries::zero(exp_int(trunc));
        for (k, c) in terms {
            s.add_term(exp(k, denom), big_rat(c, 1));
        }
        s
    })
}

fn unit_strategy(denom: i64, trunc: i64) -> impl Strategy<Value = FracSeries<Rat>> {
    (series_strategy(denom, trunc), 1i64..=4).prop_map(|(mut s, c0)| {
        let cur = s.coeff(exp_int(0)).unwrap();
        s.add_term(exp_int(0), big_rat(c0, 1) - cur);
        s
    })
}

proptest! {
    #[test]
    fn multiplication_commutes(a in series_strategy(2, 8), b in series_strategy(4, 8)) {
        let ab = a.mul(&b);
        let ba = b.mul(&a);
        prop_assert!(ab.compare(&ba, ab.trunc()).unwrap().is_equal());
    }

    #[test]
    fn addition_associates(
        a in series_strategy(2, 8),
        b in series_strategy(2, 8),
        c in series_strategy(2, 8),
    ) {
        let l = a.add(&b).add(&c);
        let r = a.add(&b.add(&c));
        prop_assert!(l.compare(&r, exp_int(8)).unwrap().is_equal());
    }

    #[test]
    fn distributes(
        a in series_strategy(2, 8),
        b in series_strategy(2, 8),
        c in series_strategy(2, 8),
    ) {
        let l = a.mul(&b.add(&c));
        let r = a.mul(&b).add(&a.mul(&c));
        let d = l.trunc().min(r.trunc());
        prop_assert!(l.compare(&r, d).unwrap().is_equal());
    }

    #[test]
    fn inverse_is_two_sided(a in unit_strategy(2, 9)) {
        let inv = a.invert().unwrap();
        let p = a.mul(&inv);
        let one = FracSeries::one(p.trunc());
        prop_assert!(p.compare(&one, p.trunc()).unwrap().is_equal());
    }

    #[test]
    fn dissection_reassembles(a in series_strategy(1, 12), m in 2i64..=5) {
        let mut back = FracSeries::zero(a.trunc());
        for r in 0..m {
            let part = a.dissect(m, r).unwrap()
                .substitute_power(exp_int(m)).unwrap()
                .shift(exp_int(r));
            back = back.add(&part);
        }
        let d = back.trunc().min(a.trunc());
        prop_assert!(back.compare(&a, d).unwrap().is_equal());
    }

    #[test]
    fn tau_shift_squares_to_identity(a in series_strategy(2, 9)) {
        let t2 = a.tau_shift().unwrap().tau_shift().unwrap();
        prop_assert!(t2.compare(&a, a.trunc()).unwrap().is_equal());
    }

    #[test]
    fn substitute_power_multiplicative(a in series_strategy(2, 6)) {
        let s6 = a.substitute_power(exp_int(6)).unwrap();
        let s2_then_3 = a.substitute_power(exp_int(2)).unwrap()
            .substitute_power(exp_int(3)).unwrap();
        prop_assert_eq!(s6, s2_then_3);
    }
}
