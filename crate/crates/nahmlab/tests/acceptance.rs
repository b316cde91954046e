//! Acceptance gate: one test per criterion, each printing a PASS line with
//! its measured evidence (run with `--nocapture` to see them). Depths,
//! tolerances and runtime budgets are pinned here.

use nahmlab::coeff::Root5;
use nahmlab::exponent::{exp, exp_int};
use nahmlab::nahm::{chi0, tadpole};
use nahmlab::numeric::Ctx;
use nahmlab::suites::{run_suite, SuiteOptions};
use std::time::{Duration, Instant};

fn options() -> SuiteOptions {
    SuiteOptions::default()
}

fn assert_suite_green(id: &str, opt: &SuiteOptions, budget: Option<Duration>) -> usize {
    let start = Instant::now();
    let rep = run_suite(id, opt).unwrap_or_else(|e| panic!("suite {id} errored: {e}"));
    let elapsed = start.elapsed();
    for c in rep.checks.iter().filter(|c| c.status != "pass") {
        panic!(
            "suite {id} check {} {}: {:?} {:?}",
            c.id, c.status, c.mismatch, c.detail
        );
    }
    if let Some(b) = budget {
        assert!(
            elapsed < b,
            "suite {id} took {elapsed:?}, budget {b:?}"
        );
    }
    println!(
        "PASS {id}: {} checks in {elapsed:?}",
        rep.checks.len()
    );
    rep.checks.len()
}

#[test]
fn criterion_01_rogers_suite_to_q150_under_5s() {
    let opt = SuiteOptions {
        depth: Some(150),
        ..options()
    };
    let n = assert_suite_green("rogers", &opt, Some(Duration::from_secs(5)));
    assert_eq!(n, 7);
}

#[test]
fn criterion_02_six_sum_product_identities_to_q100_under_30s() {
    let opt = SuiteOptions {
        depth: Some(100),
        ..options()
    };
    let n = assert_suite_green("theorem-1.2", &opt, Some(Duration::from_secs(30)));
    assert_eq!(n, 6);
    // the Laurent case carries leading exponent -1
    let laurent = chi0(&[exp_int(-2), exp_int(2), exp(-1, 2)], exp_int(5)).unwrap();
    assert_eq!(laurent.vanishing_order(), Some(exp_int(-1)));
    println!("PASS criterion-02 addendum: Laurent case leading exponent -1");
}

#[test]
fn criterion_03_g_basis_leading_data() {
    assert_suite_green("remark-1.6", &options(), None);
}

#[test]
fn criterion_04_weber_theta_identities_to_q60_under_30s() {
    let opt = SuiteOptions {
        depth: Some(60),
        ..options()
    };
    let n = assert_suite_green("theorem-1.5", &opt, Some(Duration::from_secs(30)));
    assert_eq!(n, 6);
}

#[test]
fn criterion_05_bilinear_decompositions_to_q60() {
    let opt = SuiteOptions {
        depth: Some(60),
        ..options()
    };
    // six component decompositions plus the quintuple character check
    let start = Instant::now();
    let rep = run_suite("prop-3.2", &opt).unwrap();
    assert!(rep.all_pass(), "{:#?}", rep.checks);
    assert!(rep.checks.len() >= 6);
    println!("PASS prop-3.2: {} checks in {:?}", rep.checks.len(), start.elapsed());
}

#[test]
fn criterion_06_second_proof_suite_full_depths_under_120s() {
    // defaults carry the stated depths: q^200 for the two-term identity and
    // the dissections, q^300 for the linear-theta forms; --deep raises the
    // last check to exactly 2401 coefficients
    let opt = SuiteOptions {
        deep: true,
        ..options()
    };
    let n = assert_suite_green("second-proof", &opt, Some(Duration::from_secs(120)));
    assert_eq!(n, 10);
}

#[test]
fn criterion_07_sturm_bound_value() {
    assert_eq!(nahmlab::modular::sturm_bound(exp_int(2), 200), 2401);
    println!("PASS sturm bound (2, 200) = 2401");
}

#[test]
fn criterion_08_tba_solver_exact_forms_and_sweep() {
    use nahmlab::asymptotics::{solve_tba, t3_closed_forms, t3_forms_satisfy_system_exactly, tba_multistart};
    let cx = Ctx::new(256);
    let tol = cx.tol(40);
    let a = tadpole(3).unwrap();
    let sol = solve_tba(&a, &cx, &tol, None).unwrap();
    let s5 = cx.int(5).sqrt(&cx);
    for (qi, form) in sol.q.iter().zip(t3_closed_forms()) {
        let want = cx
            .big_rational(&form.a)
            .add(&cx.big_rational(&form.b).mul(&s5, &cx), &cx);
        let dev = qi.sub(&want, &cx).abs();
        assert!(
            dev.cmp(&cx.tol(30)) == std::cmp::Ordering::Less,
            "solver vs closed form: {:e}",
            dev.to_f64()
        );
    }
    assert!(t3_forms_satisfy_system_exactly());
    let (_, sweep_dev) = tba_multistart(&a, 100, 17, &cx, &cx.tol(32)).unwrap();
    assert!(sweep_dev.to_f64() < 1e-10, "sweep deviation {:e}", sweep_dev.to_f64());
    println!(
        "PASS tba: closed forms to 1e-30 at 256 bits, exact in Q(sqrt5), 100-start sweep dev {:e}",
        sweep_dev.to_f64()
    );
}

#[test]
fn criterion_09_obstruction_values() {
    use nahmlab::asymptotics::{c_formula, modularity_obstruction, Obstruction};
    assert_eq!(
        c_formula(&[exp_int(1), exp_int(0), exp_int(0)]),
        Root5::from_parts(-139, 80, 68, 80)
    );
    assert!(matches!(
        modularity_obstruction(&[exp_int(0), exp_int(1), exp_int(0)]),
        Obstruction::Obstructed { .. }
    ));
    assert_eq!(c_formula(&[exp_int(0); 3]), Root5::from_parts(-7, 80, 0, 1));
    assert_eq!(
        c_formula(&[exp_int(0), exp_int(0), exp(1, 2)]),
        Root5::from_parts(1, 40, 0, 1)
    );
    println!("PASS obstruction: (-139+68*sqrt5)/80 exact, verdicts and prefactor cross-checks");
}

#[test]
fn criterion_10_wronskian_order_and_closed_form() {
    use nahmlab::modular::{f_tilde_family, remark44_check, wronskian, Derivation};
    let fam = f_tilde_family(exp_int(12)).unwrap();
    let w = wronskian(&fam, Derivation::D);
    assert_eq!(w.vanishing_order(), Some(exp(3, 2)));
    let rep = remark44_check(exp_int(30)).unwrap();
    assert!(rep.passed(), "{:?}", rep.mismatch);
    println!("PASS wronskian: order 3/2 and the closed form with 5892480/70027513/64135033 to q^30");
}

#[test]
fn criterion_11_rank_scan_at_depth_40() {
    for n in 2..=5 {
        let rep = nahmlab::modular::conjecture_check(n, exp_int(40)).unwrap();
        // a falsification would surface as a reported mismatch, not a crash
        assert!(
            rep.passed(),
            "rank {n} falsification finding: {:?}",
            rep.mismatch
        );
    }
    println!("PASS rank scan n = 2..5 at depth 40");
}

#[test]
fn criterion_12_transform_residuals_and_negative_control() {
    use nahmlab::numeric::Cplx;
    use nahmlab::transform::*;
    let cx = Ctx::new(192);
    let depth = exp_int(120);
    let taus = [
        Cplx::new(cx.int(0), cx.int(1)),
        Cplx::new(cx.int(0), cx.int(2)),
        Cplx::new(cx.int(1).div(&cx.int(3), &cx), cx.int(1)),
    ];
    let mut worst = 0.0f64;
    for desc in [
        weber_descriptor(depth, &cx).unwrap(),
        rho1_descriptor(depth, &cx).unwrap(),
        rho2_descriptor(depth, &cx).unwrap(),
        rho_tilde_descriptor(depth, &cx).unwrap(),
    ] {
        for tau in &taus {
            let rep = check_s(&desc, tau, 1e-20, &cx).unwrap();
            assert!(
                rep.pass,
                "{} at {:?}: residual {:e}",
                desc.name, rep.tau, rep.max_residual
            );
            worst = worst.max(rep.max_residual);
        }
    }
    // designed negative control: a single component cannot close under S
    let w1 = nahmlab::theta::w_char(1, exp_int(90)).unwrap();
    let sample: Vec<Cplx> = [(0.0, 1.0), (0.5, 1.0), (0.0, 2.0), (0.3, 1.2)]
        .iter()
        .map(|&(re, im)| Cplx::from_f64(re, im, &cx))
        .collect();
    let control = closure_check(
        "w1-alone",
        std::slice::from_ref(&w1),
        s_image,
        "S",
        &sample,
        1e-20,
        &cx,
    )
    .unwrap();
    assert!(!control.pass && control.max_residual > 1e-6);
    println!(
        "PASS transforms: worst S residual {worst:e} (< 1e-20) at 192 bits, depth 120; negative control fails as designed"
    );
}

mod properties;

#[test]
fn criterion_13_randomized_property_battery_under_60s() {
    let start = Instant::now();
    let cases = properties::run_battery();
    let elapsed = start.elapsed();
    assert!(cases >= 1000, "only {cases} randomized cases");
    assert!(elapsed < Duration::from_secs(60), "battery took {elapsed:?}");
    println!("PASS property battery: {cases} randomized cases in {elapsed:?}");
}
