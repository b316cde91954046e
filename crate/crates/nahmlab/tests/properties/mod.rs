//! Seeded randomized battery behind the property criterion; each helper
//! returns how many individual cases it verified.

use nahmlab::bivariate::BivariateSeries;
use nahmlab::coeff::{big_rat, Rat};
use nahmlab::exponent::{exp, exp_int, Exponent};
use nahmlab::modular::{wronskian, Derivation};
use nahmlab::nahm::{chi0, chi0_reference, nahm_sum, nahm_sum_with_margin, NahmTriple};
use nahmlab::products::{
    euler_inv_poch_z, jacobi_triple_product_sum, j_series, poch_z, pochhammer, PochLen, PochSign,
};
use nahmlab::FracSeries;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_series(rng: &mut ChaCha8Rng, denom: i64, trunc: i64, unit: bool) -> FracSeries<Rat> {
    let mut s = FracSeries::zero(exp_int(trunc));
    let terms = rng.gen_range(2..8);
    for _ in 0..terms {
        let k = rng.gen_range(0..trunc * denom);
        let c = rng.gen_range(-9..=9i64);
        if c != 0 {
            s.add_term(exp(k, denom), big_rat(c, 1));
        }
    }
    if unit {
        let c0 = *[1i64, -1, 2, 3].get(rng.gen_range(0..4)).unwrap();
        s.add_term(exp_int(0), big_rat(c0, 1) - s.coeff(exp_int(0)).unwrap());
        if s.coeff(exp_int(0)) == Some(big_rat(0, 1)) {
            s.add_term(exp_int(0), big_rat(1, 1));
        }
    }
    s
}

fn ring_axioms(rng: &mut ChaCha8Rng) -> usize {
    let mut cases = 0;
    for _ in 0..300 {
        let a = random_series(rng, 2, 9, false);
        let b = random_series(rng, 2, 9, false);
        let c = random_series(rng, 4, 9, false);
        let assoc = a.add(&b).add(&c).compare(&a.add(&b.add(&c)), exp_int(9)).unwrap();
        assert!(assoc.is_equal(), "additive associativity");
        let lhs = a.mul(&b.add(&c));
        let rhs = a.mul(&b).add(&a.mul(&c));
        let d = lhs.trunc().min(rhs.trunc());
        assert!(lhs.compare(&rhs, d).unwrap().is_equal(), "distributivity");
        let ab = a.mul(&b);
        let ba = b.mul(&a);
        assert!(ab.compare(&ba, ab.trunc()).unwrap().is_equal(), "commutativity");
        cases += 3;
    }
    cases
}

fn inversion(rng: &mut ChaCha8Rng) -> usize {
    let mut cases = 0;
    for _ in 0..1000 {
        let a = random_series(rng, 2, 10, true);
        let inv = a.invert().unwrap();
        let prod = a.mul(&inv);
        let one = FracSeries::one(prod.trunc());
        assert!(
            prod.compare(&one, prod.trunc()).unwrap().is_equal(),
            "two-sided inverse"
        );
        cases += 1;
    }
    cases
}

fn dissection_round_trip(rng: &mut ChaCha8Rng) -> usize {
    let mut cases = 0;
    for _ in 0..100 {
        let a = random_series(rng, 1, 14, false);
        for m in 2..=5i64 {
            let mut back = FracSeries::zero(a.trunc());
            for r in 0..m {
                let part = a
                    .dissect(m, r)
                    .unwrap()
                    .substitute_power(exp_int(m))
                    .unwrap()
                    .shift(exp_int(r));
                back = back.add(&part);
            }
            let d = back.trunc().min(a.trunc());
            assert!(back.compare(&a, d).unwrap().is_equal(), "dissection m={m}");
            cases += 1;
        }
    }
    cases
}

fn tau_shift_involution(rng: &mut ChaCha8Rng) -> usize {
    let mut cases = 0;
    for _ in 0..100 {
        let a = random_series(rng, 2, 10, false);
        let twice = a.tau_shift().unwrap().tau_shift().unwrap();
        assert!(twice.compare(&a, a.trunc()).unwrap().is_equal());
        cases += 1;
    }
    cases
}

fn ct_window_stability(_rng: &mut ChaCha8Rng) -> usize {
    let mut cases = 0;
    for _ in 0..25 {
        let trunc = exp_int(10);
        let m = 12i64;
        let build = |w: i64| {
            let mut acc = BivariateSeries::one(-w, w, trunc);
            let mut local = ChaCha8Rng::seed_from_u64(cases as u64 + 99);
            for _ in 0..3 {
                let c = big_rat(*[1i64, -1].get(local.gen_range(0..2)).unwrap(), 1);
                let r = exp_int(local.gen_range(1..3));
                let zd = *[-2i64, -1, 1, 2].get(local.gen_range(0..4)).unwrap();
                acc = acc.mul(&poch_z(&c, r, zd, exp_int(1), -w, w, trunc).unwrap());
            }
            let e = euler_inv_poch_z(&big_rat(1, 1), exp_int(1), -1, exp_int(1), -w, w, trunc)
                .unwrap();
            acc.mul(&e).constant_term().unwrap()
        };
        let narrow = build(m);
        let wide = build(m + 5);
        assert!(narrow.compare(&wide, trunc).unwrap().is_equal(), "window stability");
        cases += 1;
    }
    cases
}

fn euler_and_q_binomial() -> usize {
    let mut cases = 0;
    let depth = exp_int(40);
    // Euler pair for z = +-q^r
    for sign in [1i64, -1] {
        for r in [exp(1, 2), exp_int(1), exp(3, 2), exp_int(2)] {
            // sum z^n/(q;q)_n == 1/(z; q)_inf
            let mut lhs = FracSeries::zero(depth);
            let mut invp = FracSeries::one(depth);
            let mut n = 0i64;
            while r * n < depth {
                let c = big_rat(if sign == 1 { 1 } else { (-1i64).pow(n as u32) }, 1);
                lhs.add_shifted_assign(&invp.scale(&c), r * n);
                n += 1;
                let mut geom = FracSeries::zero(depth);
                let mut g = exp_int(0);
                while g < depth {
                    geom.add_term(g, big_rat(1, 1));
                    g = g + exp_int(n);
                }
                invp = invp.mul(&geom);
            }
            let psign = if sign == 1 { PochSign::Plus } else { PochSign::Minus };
            let rhs = pochhammer(psign, r, exp_int(1), PochLen::Infinite, depth)
                .unwrap()
                .invert()
                .unwrap();
            let d = lhs.trunc().min(rhs.trunc());
            assert!(lhs.compare(&rhs, d).unwrap().is_equal(), "first identity");
            cases += 1;

            // sum q^(n(n-1)/2) z^n/(q;q)_n == (-z; q)_inf
            let mut lhs2 = FracSeries::zero(depth);
            let mut invp2 = FracSeries::one(depth);
            let mut n = 0i64;
            while r * n + exp_int(n * (n - 1) / 2) < depth {
                let c = big_rat(if sign == 1 { 1 } else { (-1i64).pow(n as u32) }, 1);
                lhs2.add_shifted_assign(&invp2.scale(&c), r * n + exp_int(n * (n - 1) / 2));
                n += 1;
                let mut geom = FracSeries::zero(depth);
                let mut g = exp_int(0);
                while g < depth {
                    geom.add_term(g, big_rat(1, 1));
                    g = g + exp_int(n);
                }
                invp2 = invp2.mul(&geom);
            }
            let nsign = if sign == 1 { PochSign::Minus } else { PochSign::Plus };
            let rhs2 = pochhammer(nsign, r, exp_int(1), PochLen::Infinite, depth).unwrap();
            let d = lhs2.trunc().min(rhs2.trunc());
            assert!(lhs2.compare(&rhs2, d).unwrap().is_equal(), "second identity");
            cases += 1;
        }
    }
    // q-binomial on a 4x4 rational grid, depth 30
    let depth = exp_int(30);
    for alpha in [exp(1, 2), exp_int(1), exp(3, 2), exp_int(2)] {
        for beta in [exp(1, 2), exp_int(1), exp(3, 2), exp_int(2)] {
            let mut lhs = FracSeries::zero(depth);
            let mut invp = FracSeries::one(depth);
            let mut an = FracSeries::one(depth); // (q^alpha; q)_n
            let mut n = 0i64;
            while beta * n < depth {
                lhs.add_shifted_assign(&an.mul(&invp), beta * n);
                let bump = an.scale(&big_rat(-1, 1));
                an.add_shifted_assign(&bump, alpha + exp_int(n));
                n += 1;
                let mut geom = FracSeries::zero(depth);
                let mut g = exp_int(0);
                while g < depth {
                    geom.add_term(g, big_rat(1, 1));
                    g = g + exp_int(n);
                }
                invp = invp.mul(&geom);
            }
            let num = pochhammer(PochSign::Plus, alpha + beta, exp_int(1), PochLen::Infinite, depth).unwrap();
            let den = pochhammer(PochSign::Plus, beta, exp_int(1), PochLen::Infinite, depth).unwrap();
            let rhs = num.mul(&den.invert().unwrap());
            let d = lhs.trunc().min(rhs.trunc());
            assert!(lhs.compare(&rhs, d).unwrap().is_equal(), "q-binomial {alpha},{beta}");
            cases += 1;
        }
    }
    cases
}

fn jacobi_triple_product() -> usize {
    let trunc = exp_int(25);
    let m = nahmlab::bivariate::ct_window(25, 1);
    let jq = j_series(1, trunc).unwrap();
    let lhs = poch_z(&big_rat(-1, 1), exp_int(0), 1, exp_int(1), -m, m, trunc)
        .unwrap()
        .mul(&poch_z(&big_rat(-1, 1), exp_int(1), -1, exp_int(1), -m, m, trunc).unwrap())
        .mul_scalar_series(&jq);
    let rhs = jacobi_triple_product_sum(-m, m, trunc);
    let mut cases = 0;
    for d in -m / 2..=m / 2 {
        let a = lhs.component(d).unwrap();
        let b = rhs.component(d).unwrap();
        assert!(a.compare(b, exp_int(20)).unwrap().is_equal(), "z-degree {d}");
        cases += 1;
    }
    cases
}

fn enumeration_margin(rng: &mut ChaCha8Rng) -> usize {
    let mut cases = 0;
    for _ in 0..50 {
        let r = rng.gen_range(1..=4usize);
        // A = M^T M + I is positive definite for any integer M
        let m: Vec<Vec<i64>> = (0..r)
            .map(|_| (0..r).map(|_| rng.gen_range(-1..=2)).collect())
            .collect();
        let mut a = vec![vec![exp_int(0); r]; r];
        for i in 0..r {
            for j in 0..r {
                let mut v = if i == j { 1 } else { 0 };
                for k in 0..r {
                    v += m[k][i] * m[k][j];
                }
                a[i][j] = exp_int(v);
            }
        }
        let b: Vec<Exponent> = (0..r)
            .map(|_| exp(rng.gen_range(-2..=2), *[1i64, 2].get(rng.gen_range(0..2)).unwrap()))
            .collect();
        let t = NahmTriple::new(a, b, exp_int(0)).unwrap();
        let base = nahm_sum(&t, exp_int(6)).unwrap();
        let margined = nahm_sum_with_margin(&t, exp_int(6), exp_int(6)).unwrap();
        let wide = nahm_sum_with_margin(&t, exp_int(6), exp_int(12)).unwrap();
        assert!(base.compare(&margined, exp_int(6)).unwrap().is_equal());
        assert!(base.compare(&wide, exp_int(6)).unwrap().is_equal());
        cases += 1;
    }
    // fast path against the independent box enumeration
    for _ in 0..10 {
        let r = rng.gen_range(1..=3usize);
        let shifts: Vec<Exponent> = (0..r)
            .map(|_| exp(rng.gen_range(-1..=2), *[1i64, 2].get(rng.gen_range(0..2)).unwrap()))
            .collect();
        let fast = chi0(&shifts, exp_int(8)).unwrap();
        let slow = chi0_reference(&shifts, false, exp_int(8)).unwrap();
        assert!(fast.compare(&slow, exp_int(8)).unwrap().is_equal());
        cases += 1;
    }
    cases
}

fn wronskian_properties(rng: &mut ChaCha8Rng) -> usize {
    let mut cases = 0;
    for _ in 0..30 {
        // distinct leading exponents with nonzero leading coefficients
        let mut series = Vec::new();
        let mut lead = Vec::new();
        for i in 0..3i64 {
            let v = exp(rng.gen_range(0..4) * 6 + i * 2 + 1, 6);
            let mut s = FracSeries::monomial(v, big_rat(rng.gen_range(1..5), 1), exp_int(12));
            s.add_term(v + exp_int(1), big_rat(rng.gen_range(-4..=4), 1));
            if lead.contains(&v) {
                continue;
            }
            lead.push(v);
            series.push(s);
        }
        if series.len() != 3 {
            continue;
        }
        let w = wronskian(&series, Derivation::D);
        let total: Exponent = lead.iter().fold(exp_int(0), |acc, v| acc + *v);
        assert_eq!(w.vanishing_order(), Some(total), "order rule");
        cases += 1;
        // antisymmetry under a row swap
        let swapped = vec![series[1].clone(), series[0].clone(), series[2].clone()];
        let ws = wronskian(&swapped, Derivation::D);
        assert!(w.compare(&ws.neg(), w.trunc().min(ws.trunc())).unwrap().is_equal());
        cases += 1;
        // multilinearity in one slot
        let scaled = vec![series[0].scale(&big_rat(5, 1)), series[1].clone(), series[2].clone()];
        let wsc = wronskian(&scaled, Derivation::D);
        assert!(w
            .scale(&big_rat(5, 1))
            .compare(&wsc, w.trunc().min(wsc.trunc()))
            .unwrap()
            .is_equal());
        cases += 1;
    }
    cases
}

pub fn run_battery() -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut cases = 0;
    cases += ring_axioms(&mut rng);
    cases += inversion(&mut rng);
    cases += dissection_round_trip(&mut rng);
    cases += tau_shift_involution(&mut rng);
    cases += ct_window_stability(&mut rng);
    cases += euler_and_q_binomial();
    cases += jacobi_triple_product();
    cases += enumeration_margin(&mut rng);
    cases += wronskian_properties(&mut rng);
    cases
}
