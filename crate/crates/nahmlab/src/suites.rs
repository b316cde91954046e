//! Named verification suites: data-driven identity files plus built-in checks
//! for everything the expression grammar cannot phrase (base changes, signed
//! sums, Wronskians, numerics).

use crate::coeff::big_rat;
use crate::error::{NahmlabError, Result};
use crate::exponent::{exp, exp_int, Exponent};
use crate::nahm::{chi0, chi0_reference, chi0_signed, f_char, f_tilde, tadpole, xvar_coefficient_check, LAMBDA};
use crate::numeric::{Cplx, Ctx};
use crate::products::{
    expand_to_depth, parse, weber_series, WeberKind,
};
use crate::report::{outcome_to_result, CheckReport, CheckResult, Mismatch, VerificationReport};
use crate::series::{CompareOutcome, FracSeries};
use crate::theta::{rogers_sum, t_sum, w_char, z_char};
use crate::transform::{
    check_s, check_t, check_t_exact_rho_tilde, closure_check, rho1_descriptor, rho2_descriptor,
    rho2_descriptor_uncorrected, rho_tilde_descriptor, s_image, theta_weight32_descriptor,
    weber_descriptor,
};
use rayon::prelude::*;
use sha2::{Digest, Sha256};
use std::time::Instant;

/// Run-time options shared by all checks of a suite invocation.
#[derive(Clone, Debug)]
pub struct SuiteOptions {
    /// Override every check's depth (text `@ depth` and builtin defaults).
    pub depth: Option<i64>,
    /// Enable the full-depth variants (the 2401-coefficient check).
    pub deep: bool,
    /// Precision in bits for numeric checks.
    pub prec: usize,
    /// Worker threads for check-level parallelism.
    pub jobs: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            depth: None,
            deep: false,
            prec: 192,
            jobs: 1,
        }
    }
}

impl SuiteOptions {
    fn depth_or(&self, default: i64) -> Exponent {
        exp_int(self.depth.unwrap_or(default))
    }
}

struct Check {
    id: String,
    run: Box<dyn Fn(&SuiteOptions) -> Result<(Exponent, CheckResult)> + Send + Sync>,
}

fn text_check(id: String, line: &str) -> Check {
    // parsing happens inside the runner so malformed identity text surfaces
    // as a per-check error rather than killing the whole suite
    let line = line.to_string();
    Check {
        id,
        run: Box::new(move |opt| {
            let (body, depth_text) = line
                .rsplit_once('@')
                .ok_or_else(|| NahmlabError::Msg(format!("missing '@ depth' in '{line}'")))?;
            let depth: i64 = depth_text
                .trim()
                .parse()
                .map_err(|_| NahmlabError::Msg(format!("bad depth in '{line}'")))?;
            let (lhs_text, rhs_text) = body
                .split_once("==")
                .ok_or_else(|| NahmlabError::Msg(format!("missing '==' in '{line}'")))?;
            let d = opt.depth_or(depth);
            let l = expand_to_depth(&parse(lhs_text.trim())?, d)?;
            let r = expand_to_depth(&parse(rhs_text.trim())?, d)?;
            Ok((d, outcome_to_result(l.compare(&r, d)?)))
        }),
    }
}

/// Embedded identity files; `NAHMLAB_SUITES` points at a directory whose
/// `<suite>.txt` files take precedence, so new identities need no rebuild.
fn suite_text(id: &str) -> Option<String> {
    if let Ok(dir) = std::env::var("NAHMLAB_SUITES") {
        let candidate = std::path::Path::new(&dir).join(format!("{id}.txt"));
        if let Ok(text) = std::fs::read_to_string(candidate) {
            return Some(text);
        }
    }
    match id {
        "rogers" => Some(include_str!("../suites/rogers.txt").into()),
        "theorem-1.2" => Some(include_str!("../suites/theorem-1.2.txt").into()),
        "relations" => Some(include_str!("../suites/relations.txt").into()),
        "theorem-1.5" => Some(include_str!("../suites/theorem-1.5.txt").into()),
        "second-proof" => Some(include_str!("../suites/second-proof.txt").into()),
        "products" => Some(include_str!("../suites/products-base.txt").into()),
        _ => None,
    }
}

fn text_checks(suite: &str, prefix: &str) -> Result<Vec<Check>> {
    let Some(text) = suite_text(suite) else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    let mut n = 0usize;
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        n += 1;
        out.push(text_check(format!("{prefix}{n:02}-identity"), line));
    }
    Ok(out)
}

fn simple(
    id: &str,
    default_depth: i64,
    body: impl Fn(Exponent, &SuiteOptions) -> Result<CheckResult> + Send + Sync + 'static,
) -> Check {
    let id = id.to_string();
    Check {
        id,
        run: Box::new(move |opt| {
            let d = opt.depth_or(default_depth);
            Ok((d, body(d, opt)?))
        }),
    }
}

fn compare_at(
    lhs: &FracSeries<crate::coeff::Rat>,
    rhs: &FracSeries<crate::coeff::Rat>,
    d: Exponent,
) -> Result<CheckResult> {
    Ok(outcome_to_result(lhs.compare(rhs, d)?))
}

/// Product right sides used by built-in checks (kept as grammar text so the
/// data stays readable).
fn product(text: &str, d: Exponent) -> Result<FracSeries<crate::coeff::Rat>> {
    Ok(expand_to_depth(&parse(text)?, d)?)
}

fn rogers_builtins() -> Vec<Check> {
    // double-index sums against their product forms
    let table: [(&str, i64, i64, &str); 4] = [
        ("04-double-sum-1", 0, 0, "Jam(2,10)*Jam(6,20)/(J(20)*J(1))"),
        ("05-double-sum-2", 1, 0, "Jam(1,10)*Jam(8,20)/(J(20)*J(1))"),
        ("06-double-sum-3", 1, 1, "Jam(3,10)*Jam(4,20)/(J(20)*J(1))"),
        ("07-double-sum-4", 2, 1, "Jam(4,10)*Jam(2,20)/(J(20)*J(1))"),
    ];
    table
        .into_iter()
        .map(|(id, a, b, rhs)| {
            let rhs = rhs.to_string();
            simple(id, 150, move |d, _| {
                let lhs = rogers_sum(a, b, d);
                compare_at(&lhs, &product(&rhs, d)?, d)
            })
        })
        .collect()
}

fn theorem12_builtins() -> Vec<Check> {
    let table: [(&str, [Exponent; 3], &str); 2] = [
        (
            "05-base2-sum-1",
            [exp_int(0), exp_int(0), exp_int(0)],
            "J(4)^5*J(40)/(J(1)*J(2)^2*J(8)^2*Jam(8,40)) + 2*qpow(1)*J(8)^2*Jam(6,20)*Jam(8,40)/(J(1)*J(4)^2*J(40))",
        ),
        (
            "06-base2-sum-4",
            [exp_int(-1), exp_int(1), exp_int(0)],
            "2*J(8)^2*Jam(2,20)*Jam(16,40)/(J(1)*J(4)^2*J(40)) + qpow(1)*J(4)^4*Jam(8,20)*Jam(4,40)/(J(1)*J(2)^2*J(8)^2*J(40))",
        ),
    ];
    table
        .into_iter()
        .map(|(id, shifts, rhs)| {
            let rhs = rhs.to_string();
            simple(id, 100, move |d, _| {
                let half = exp(*d.numer(), 2 * d.denom());
                let lhs = chi0(&shifts, half + exp_int(1))?
                    .substitute_power(exp_int(2))?
                    .truncate(d);
                let lhs = if lhs.trunc() < d {
                    // odd target depth: redo with one more base step
                    chi0(&shifts, half + exp_int(2))?
                        .substitute_power(exp_int(2))?
                        .truncate(d)
                } else {
                    lhs
                };
                compare_at(&lhs, &product(&rhs, d)?, d)
            })
        })
        .collect()
}

fn relations_builtins() -> Vec<Check> {
    let mut out = Vec::new();
    // signed variants: the phase construction against direct alternating sums
    for (idx, base) in [(5usize, 1usize), (6, 4)] {
        out.push(simple(
            &format!("0{}-signed-character-{idx}", idx - 1),
            60,
            move |d, _| {
                let via_shift = f_char(idx, d)?;
                let shifts: Vec<Exponent> = match base {
                    1 => vec![exp_int(0); 3],
                    _ => vec![exp_int(-1), exp_int(1), exp_int(0)],
                };
                let direct = chi0_signed(&shifts, d)?;
                compare_at(&via_shift, &direct, d)
            },
        ));
    }
    // additive-shift coefficient identities on a grid
    out.push(simple("07-xvar-grid", 20, |d, _| {
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    if !xvar_coefficient_check(i, j, k, d)? {
                        return Ok(CheckResult::fail_msg(format!(
                            "monomial identity fails at ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        Ok(CheckResult::Pass)
    }));
    // reference enumerator agrees with the memoized lattice sum
    out.push(simple("08-reference-enumeration", 30, |d, _| {
        let shifts = [exp_int(0), exp_int(0), exp(1, 2)];
        let fast = chi0(&shifts, d)?;
        let slow = chi0_reference(&shifts, false, d)?;
        compare_at(&fast, &slow, d)
    }));
    out
}

fn theorem15_builtins() -> Vec<Check> {
    let table: [(&str, usize, Exponent); 2] =
        [("05-signed-1", 5, exp_int(1)), ("06-signed-2", 6, exp_int(2))];
    table
        .into_iter()
        .map(|(id, i, j)| {
            simple(id, 60, move |d, _| {
                let lhs = f_tilde(i, d)?;
                let work = d + exp_int(2);
                let rhs = weber_series(WeberKind::F1, work)?
                    .pow(3)?
                    .mul(&crate::products::eta_series(work)?.pow(3)?.invert()?)
                    .mul(&crate::theta::partial_theta(j, exp(5, 2), true, work)?)
                    .truncate(d);
                compare_at(&lhs, &rhs, d)
            })
        })
        .collect()
}

fn remark16_builtins() -> Vec<Check> {
    vec![simple("01-g-basis-leading-data", 4, |d, _| {
        let d = d.max(exp_int(4));
        let ft: Vec<_> = (1..=6)
            .map(|i| f_tilde(i, d))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        let g = [
            ft[0].add(&ft[4]),
            ft[0].sub(&ft[4]),
            ft[3].add(&ft[5]),
            ft[3].sub(&ft[5]),
            ft[1].clone(),
            ft[2].clone(),
        ];
        let want_exp = [
            exp(-7, 80),
            exp(33, 80),
            exp(17, 80),
            exp(57, 80),
            exp(1, 40),
            exp(9, 40),
        ];
        let want_coeffs: [[i64; 3]; 6] = [
            [2, 12, 30],
            [6, 18, 54],
            [4, 6, 30],
            [6, 16, 42],
            [1, 6, 15],
            [3, 11, 30],
        ];
        for i in 0..6 {
            let (e, _) = g[i]
                .leading_term()
                .ok_or_else(|| NahmlabError::Msg(format!("g{} vanished", i + 1)))?;
            if e != want_exp[i] {
                return Ok(CheckResult::Fail {
                    mismatch: Some(Mismatch {
                        exponent: e.to_string(),
                        lhs: e.to_string(),
                        rhs: want_exp[i].to_string(),
                    }),
                    detail: Some(format!("g{} leading exponent", i + 1)),
                });
            }
            for (t, want) in want_coeffs[i].iter().enumerate() {
                let got = g[i].coeff(e + exp_int(t as i64)).unwrap();
                if got != big_rat(*want, 1) {
                    return Ok(CheckResult::Fail {
                        mismatch: Some(Mismatch {
                            exponent: (e + exp_int(t as i64)).to_string(),
                            lhs: got.to_string(),
                            rhs: want.to_string(),
                        }),
                        detail: Some(format!("g{} coefficient {t}", i + 1)),
                    });
                }
            }
        }
        Ok(CheckResult::Pass)
    })]
}

fn prop32_builtins() -> Vec<Check> {
    let mut checks: Vec<Check> = vec![simple("07-quintuple-z-characters", 100, |d, _| {
        // the four Z sums against the double-theta-over-eta characters
        for (i, (r, sidx)) in [(1usize, (1i64, 1i64)), (2, (2, 1)), (3, (2, 2)), (4, (1, 2))] {
            let z = z_char(i, d)?;
            let ch = crate::theta::minimal_model_char(r, sidx, d)?;
            if let CompareOutcome::Mismatch { exponent, lhs, rhs } = z.compare(&ch, d)? {
                return Ok(CheckResult::Fail {
                    mismatch: Some(Mismatch {
                        exponent: exponent.to_string(),
                        lhs,
                        rhs,
                    }),
                    detail: Some(format!("Z_{i} vs character ({r},{sidx})")),
                });
            }
        }
        Ok(CheckResult::Pass)
    })];
    checks.extend((1..=6usize)
        .map(|i| {
            simple(&format!("0{i}-bilinear-{i}"), 60, move |d, _| {
                let lhs = f_tilde(i, d)?;
                let work = d + exp_int(2);
                let w1 = w_char(1, work)?;
                let w2 = w_char(2, work)?;
                let z: Vec<_> = (1..=4)
                    .map(|j| z_char(j, work))
                    .collect::<std::result::Result<Vec<_>, _>>()?;
                let f = |k: WeberKind| weber_series(k, work);
                let rhs = match i {
                    1 => f(WeberKind::F)?.mul(&w1.mul(&z[3]).add(&w2.mul(&z[2]))),
                    2 => f(WeberKind::F2)?.mul(&w1.mul(&z[0]).add(&w2.mul(&z[1]))),
                    3 => f(WeberKind::F2)?.mul(&w1.mul(&z[2]).add(&w2.mul(&z[3]))),
                    4 => f(WeberKind::F)?.mul(&w1.mul(&z[1]).add(&w2.mul(&z[0]))),
                    5 => f(WeberKind::F1)?.mul(&w1.mul(&z[3]).sub(&w2.mul(&z[2]))),
                    _ => f(WeberKind::F1)?.mul(&w2.mul(&z[0]).sub(&w1.mul(&z[1]))),
                }
                .truncate(d);
                compare_at(&lhs, &rhs, d)
            })
        }));
    checks
}

fn lemma31_builtins() -> Vec<Check> {
    vec![simple("01-relation-battery", 20, |d, opt| {
        let rep = crate::theta::check_theta_relations(exp(5, 2), d, opt.prec.max(128), 1e-30)?;
        let failed: Vec<String> = rep
            .checks
            .iter()
            .filter(|c| c.status != "pass")
            .map(|c| c.id.clone())
            .collect();
        if failed.is_empty() {
            Ok(CheckResult::PassWithDetail(format!(
                "{} relations verified",
                rep.checks.len()
            )))
        } else {
            Ok(CheckResult::fail_msg(format!("failed: {}", failed.join(", "))))
        }
    })]
}

fn lemma33_builtins() -> Vec<Check> {
    let mut out = Vec::new();
    for variant in 0..2usize {
        out.push(simple(
            &format!("0{}-gaussian-assembly-{variant}", variant + 1),
            100,
            move |d, _| {
                use crate::coeff::{Coef, GaussRat};
                let lhs = crate::theta::psi_theta(variant, d);
                let c1: FracSeries<GaussRat> =
                    crate::theta::theta_residue_class(1, 5, d).embed();
                let c2: FracSeries<GaussRat> =
                    crate::theta::theta_residue_class(2, 5, d).embed();
                let two = GaussRat::from_rational(&big_rat(2, 1));
                let mut twoi = two.mul_ref(&GaussRat::i());
                if variant == 1 {
                    twoi = twoi.neg_ref();
                }
                let rhs = c1.scale(&two).add(&c2.scale(&twoi));
                Ok(outcome_to_result(lhs.compare(&rhs, d)?))
            },
        ));
    }
    out.push(simple("03-reflection-classes", 100, |d, _| {
        for a in [1i64, 2] {
            let lhs = crate::theta::theta_residue_class(a, 5, d);
            let rhs = crate::theta::theta_residue_class(5 - a, 5, d).neg();
            if let CompareOutcome::Mismatch { exponent, lhs, rhs } = lhs.compare(&rhs, d)? {
                return Ok(CheckResult::Fail {
                    mismatch: Some(Mismatch {
                        exponent: exponent.to_string(),
                        lhs,
                        rhs,
                    }),
                    detail: Some(format!("class {a} vs class {}", 5 - a)),
                });
            }
        }
        Ok(CheckResult::Pass)
    }));
    out
}

fn second_proof_builtins() -> Vec<Check> {
    let mut out = Vec::new();
    let t_products: [(&str, usize, &str); 4] = [
        (
            "02-linear-theta-1",
            1,
            "J(1)^2*J(4)^8*J(40)/(J(2)^5*J(8)^2*Jam(8,40)) + 2*qpow(1)*J(1)^2*J(4)*J(8)^2*Jam(6,20)*Jam(8,40)/(J(2)^3*J(40))",
        ),
        (
            "03-linear-theta-2",
            2,
            "2*J(1)^2*J(4)*J(8)^2*Jam(2,20)*Jam(16,40)/(J(2)^3*J(40)) + qpow(1)*J(1)^2*J(4)^7*Jam(8,20)*Jam(4,40)/(J(2)^5*J(8)^2*J(40))",
        ),
        (
            "04-linear-theta-3",
            3,
            "J(2)*J(4)^3*Jam(2,20)*Jam(16,40)/(J(8)^2*J(40)) + 2*qpow(2)*J(2)^3*J(8)^2*Jam(8,20)*Jam(4,40)/(J(4)^3*J(40))",
        ),
        (
            "05-linear-theta-4",
            4,
            "2*J(2)^3*J(8)^2*J(40)/(J(4)^2*Jam(8,40)) + J(2)*J(4)^3*Jam(6,20)*Jam(8,40)/(J(8)^2*J(40))",
        ),
    ];
    for (id, i, rhs) in t_products {
        let rhs = rhs.to_string();
        out.push(simple(id, 300, move |d, _| {
            compare_at(&t_sum(i, d)?, &product(&rhs, d)?, d)
        }));
    }
    // parity dissections, both as theta rescalings and as eta quotients
    let dissections: [(&str, usize, i64, usize, i64, i64, &str); 4] = [
        // (id, source T, residue, target T, scale numerator, shift, quotient)
        (
            "06-dissect-even",
            1,
            0,
            3,
            1,
            0,
            "J(2)^6*J(4)^3*J(20)/(J(1)^4*J(8)^2*Jam(4,20)) - 4*qpow(1)*J(2)*J(4)*J(8)^2*Jam(3,10)*Jam(4,20)/(J(1)^2*J(20))",
        ),
        (
            "07-dissect-odd",
            1,
            1,
            2,
            -2,
            1,
            "2*J(4)^7*Jam(3,10)*Jam(4,20)/(J(1)^2*J(2)*J(8)^2*J(20)) - 2*J(2)^8*J(8)^2*J(20)/(J(1)^4*J(4)^3*Jam(4,20))",
        ),
        (
            "08-dissect-even-second",
            2,
            0,
            1,
            2,
            0,
            "2*J(4)^7*Jam(1,10)*Jam(8,20)/(J(1)^2*J(2)*J(8)^2*J(20)) - 2*qpow(1)*J(2)^7*J(8)^2*Jam(4,10)*Jam(2,20)/(J(1)^4*J(4)^3*J(20))",
        ),
        (
            "09-dissect-odd-second",
            2,
            1,
            4,
            -1,
            0,
            "J(2)^5*J(4)^3*Jam(4,10)*Jam(2,20)/(J(1)^4*J(8)^2*J(20)) - 4*J(2)*J(4)*J(8)^2*Jam(1,10)*Jam(8,20)/(J(1)^2*J(20))",
        ),
    ];
    for (id, src, residue, dst, scale, shift, quotient) in dissections {
        let quotient = quotient.to_string();
        out.push(simple(id, 200, move |d, _| {
            let source = t_sum(src, d * 2 + exp_int(residue) + exp_int(1))?;
            let part = source.dissect(2, residue)?;
            // theta route: scale * q^shift * T_dst(q^2)
            let theta_route = t_sum(dst, d)?
                .substitute_power(exp_int(2))?
                .shift(exp_int(shift))
                .scale(&big_rat(scale, 1))
                .truncate(d);
            if let CompareOutcome::Mismatch { exponent, lhs, rhs } =
                part.compare(&theta_route, d)?
            {
                return Ok(CheckResult::Fail {
                    mismatch: Some(Mismatch {
                        exponent: exponent.to_string(),
                        lhs,
                        rhs,
                    }),
                    detail: Some("against rescaled theta sum".into()),
                });
            }
            compare_at(&part, &product(&quotient, d)?, d)
        }));
    }
    out.push(simple("10-sturm-depth", 401, move |d, opt| {
        let count = if opt.deep { 2401 } else { d.to_integer() };
        let rep = crate::modular::verify_sturm_depth_identity(count)?;
        if rep.passed() {
            Ok(CheckResult::PassWithDetail(format!("{count} coefficients")))
        } else {
            Ok(CheckResult::fail_msg(rep.mismatch.unwrap_or_default()))
        }
    }));
    out
}

fn wronskian_builtins() -> Vec<Check> {
    let mut out = Vec::new();
    out.push(simple("01-order-three-halves", 34, |d, _| {
        let fam = crate::modular::f_tilde_family(d)?;
        let w = crate::modular::wronskian(&fam, crate::modular::Derivation::D);
        match w.vanishing_order() {
            Some(v) if v == exp(3, 2) => Ok(CheckResult::Pass),
            Some(v) => Ok(CheckResult::fail_msg(format!("order {v}, wanted 3/2"))),
            None => Ok(CheckResult::fail_msg("wronskian vanished to truncation")),
        }
    }));
    out.push(simple("02-eta-eisenstein-form", 30, |d, _| {
        let rep = crate::modular::remark44_check(d)?;
        if rep.passed() {
            Ok(CheckResult::Pass)
        } else {
            Ok(CheckResult::fail_msg(rep.mismatch.unwrap_or_default()))
        }
    }));
    out.push(simple("03-scaling-invariance", 20, |d, _| {
        // scaling one component scales W but not the normalized form
        let mut fam = crate::modular::f_tilde_family(d)?;
        let w_norm = crate::modular::normalized_wronskian(&fam, crate::modular::Derivation::D);
        fam[2] = fam[2].scale(&big_rat(3, 1));
        let w_scaled = crate::modular::wronskian(&fam, crate::modular::Derivation::D);
        let w_scaled_norm =
            crate::modular::normalized_wronskian(&fam, crate::modular::Derivation::D);
        let dd = w_norm.trunc().min(w_scaled_norm.trunc());
        if !w_norm.compare(&w_scaled_norm, dd)?.is_equal() {
            return Ok(CheckResult::fail_msg("normalized form changed under scaling"));
        }
        // and the raw one picked up exactly the factor 3
        let fam0 = crate::modular::f_tilde_family(d)?;
        let w0 = crate::modular::wronskian(&fam0, crate::modular::Derivation::D);
        let dd = w0.trunc().min(w_scaled.trunc());
        Ok(outcome_to_result(
            w0.scale(&big_rat(3, 1)).compare(&w_scaled, dd)?,
        ))
    }));
    out
}

fn conjecture_builtins() -> Vec<Check> {
    (2..=5i64)
        .map(|n| {
            simple(&format!("0{}-rank-{n}", n - 1), 40, move |d, _| {
                let rep = crate::modular::conjecture_check(n, d)?;
                if rep.passed() {
                    Ok(CheckResult::Pass)
                } else {
                    Ok(CheckResult::Fail {
                        mismatch: None,
                        detail: Some(format!(
                            "falsification finding: {}",
                            rep.mismatch.unwrap_or_default()
                        )),
                    })
                }
            })
        })
        .collect()
}

fn tba_builtins() -> Vec<Check> {
    let mut out = Vec::new();
    out.push(simple("01-solver-closed-forms", 0, |_, opt| {
        let cx = Ctx::new(opt.prec.max(256));
        let tol = cx.tol(30);
        let sol = crate::asymptotics::solve_tba(&tadpole(3)?, &cx, &tol, None)?;
        let forms = crate::asymptotics::t3_closed_forms();
        let s5 = cx.int(5).sqrt(&cx);
        for (qi, f) in sol.q.iter().zip(&forms) {
            let want = cx.big_rational(&f.a).add(&cx.big_rational(&f.b).mul(&s5, &cx), &cx);
            let dev = qi.sub(&want, &cx).abs();
            if dev.cmp(&cx.tol(30)) != std::cmp::Ordering::Less {
                return Ok(CheckResult::fail_msg(format!(
                    "deviation {:e} from closed form",
                    dev.to_f64()
                )));
            }
        }
        Ok(CheckResult::PassWithDetail(format!(
            "residual {:e} after {} iterations",
            sol.residual.to_f64(),
            sol.iterations
        )))
    }));
    out.push(simple("02-closed-forms-exact", 0, |_, _| {
        if crate::asymptotics::t3_forms_satisfy_system_exactly() {
            Ok(CheckResult::Pass)
        } else {
            Ok(CheckResult::fail_msg("field arithmetic check failed"))
        }
    }));
    out.push(simple("03-uniqueness-sweep", 0, |_, opt| {
        let cx = Ctx::new(opt.prec.max(192));
        let tol = cx.tol(32);
        let (_, dev) = crate::asymptotics::tba_multistart(&tadpole(3)?, 100, 17, &cx, &tol)?;
        if dev.to_f64() < 1e-10 {
            Ok(CheckResult::PassWithDetail(format!(
                "100 starts agree to {:e}",
                dev.to_f64()
            )))
        } else {
            Ok(CheckResult::fail_msg(format!("starts deviate by {:e}", dev.to_f64())))
        }
    }));
    out.push(simple("04-obstruction-values", 0, |_, _| {
        use crate::asymptotics::{c_formula, modularity_obstruction, Obstruction};
        use crate::coeff::Root5;
        if c_formula(&[exp_int(1), exp_int(0), exp_int(0)]) != Root5::from_parts(-139, 80, 68, 80)
        {
            return Ok(CheckResult::fail_msg("unit-shift constraint value wrong"));
        }
        let cases = [
            ([exp_int(1), exp_int(0), exp_int(0)], true),
            ([exp_int(0), exp_int(1), exp_int(0)], true),
            ([exp_int(0), exp_int(0), exp_int(0)], false),
            ([exp_int(0), exp_int(0), exp(1, 2)], false),
        ];
        for (b, expect_obstructed) in cases {
            let got = matches!(modularity_obstruction(&b), Obstruction::Obstructed { .. });
            if got != expect_obstructed {
                return Ok(CheckResult::fail_msg(format!("verdict for {b:?}")));
            }
        }
        // candidate values line up with the two known prefactor exponents
        let c0 = c_formula(&[exp_int(0); 3]);
        let c2 = c_formula(&[exp_int(0), exp_int(0), exp(1, 2)]);
        if c0 != Root5::from_parts(*LAMBDA[0].numer(), *LAMBDA[0].denom(), 0, 1)
            || c2 != Root5::from_parts(*LAMBDA[1].numer(), *LAMBDA[1].denom(), 0, 1)
        {
            return Ok(CheckResult::fail_msg("candidate values do not match prefactors"));
        }
        Ok(CheckResult::Pass)
    }));
    out
}

fn sample_taus(cx: &Ctx) -> Vec<Cplx> {
    vec![
        Cplx::new(cx.int(0), cx.int(1)),
        Cplx::new(cx.int(0), cx.int(2)),
        Cplx::new(cx.int(1).div(&cx.int(3), cx), cx.int(1)),
    ]
}

fn transforms_builtins() -> Vec<Check> {
    let mut out = Vec::new();
    for family in ["weber", "rho1", "rho2", "rho-tilde"] {
        out.push(simple(&format!("01-s-law-{family}"), 120, move |d, opt| {
            let cx = Ctx::new(opt.prec.max(192));
            let desc = match family {
                "weber" => weber_descriptor(d, &cx)?,
                "rho1" => rho1_descriptor(d, &cx)?,
                "rho2" => rho2_descriptor(d, &cx)?,
                _ => rho_tilde_descriptor(d, &cx)?,
            };
            let mut worst = 0.0f64;
            for tau in sample_taus(&cx) {
                let rep = check_s(&desc, &tau, 1e-20, &cx)?;
                worst = worst.max(rep.max_residual);
                if !rep.pass {
                    return Ok(CheckResult::fail_msg(format!(
                        "residual {:e} at tau = {:?}",
                        rep.max_residual, rep.tau
                    )));
                }
            }
            Ok(CheckResult::PassWithDetail(format!("max residual {worst:e}")))
        }));
        out.push(simple(&format!("02-t-law-{family}"), 120, move |d, opt| {
            let cx = Ctx::new(opt.prec.max(192));
            let desc = match family {
                "weber" => weber_descriptor(d, &cx)?,
                "rho1" => rho1_descriptor(d, &cx)?,
                "rho2" => rho2_descriptor(d, &cx)?,
                _ => rho_tilde_descriptor(d, &cx)?,
            };
            let tau = Cplx::new(cx.ratio(exp(1, 5)), cx.int(1));
            let rep = check_t(&desc, &tau, 1e-20, &cx)?;
            if rep.pass {
                Ok(CheckResult::PassWithDetail(format!(
                    "max residual {:e}",
                    rep.max_residual
                )))
            } else {
                Ok(CheckResult::fail_msg(format!("residual {:e}", rep.max_residual)))
            }
        }));
    }
    out.push(simple("03-exact-t-permutation", 30, |d, _| {
        let sigma = check_t_exact_rho_tilde(d)?;
        Ok(CheckResult::PassWithDetail(format!("images {sigma:?}")))
    }));
    out.push(simple("04-weight32-s-law", 120, |d, opt| {
        let cx = Ctx::new(opt.prec.max(192));
        let desc = theta_weight32_descriptor(d, &cx)?;
        let tau = Cplx::new(cx.int(0), cx.int(2));
        let rep = check_s(&desc, &tau, 1e-20, &cx)?;
        if rep.pass {
            Ok(CheckResult::PassWithDetail(format!(
                "max residual {:e}",
                rep.max_residual
            )))
        } else {
            Ok(CheckResult::fail_msg(format!("residual {:e}", rep.max_residual)))
        }
    }));
    out.push(simple("05-fixed-point", 120, |d, opt| {
        // at tau = i the S-law becomes a linear constraint on the values
        let cx = Ctx::new(opt.prec.max(192));
        let tau = Cplx::new(cx.int(0), cx.int(1));
        for desc in [
            weber_descriptor(d, &cx)?,
            rho1_descriptor(d, &cx)?,
            rho2_descriptor(d, &cx)?,
            rho_tilde_descriptor(d, &cx)?,
        ] {
            let rep = check_s(&desc, &tau, 1e-20, &cx)?;
            if !rep.pass {
                return Ok(CheckResult::fail_msg(format!(
                    "{}: residual {:e}",
                    desc.name, rep.max_residual
                )));
            }
        }
        Ok(CheckResult::Pass)
    }));
    out.push(simple("06-closure-rho-tilde", 100, |d, opt| {
        let cx = Ctx::new(opt.prec.max(192));
        let fam = crate::modular::f_tilde_family(d)?;
        let taus: Vec<Cplx> = [
            (0.0, 1.0),
            (0.5, 1.0),
            (0.0, 2.0),
            (1.0 / 3.0, 1.0),
            (0.2, 0.9),
            (-0.4, 1.3),
            (0.7, 1.1),
            (0.1, 1.7),
            (-0.2, 0.8),
            (0.9, 1.4),
            (0.33, 2.2),
            (-0.6, 1.05),
        ]
        .iter()
        .map(|&(re, im)| Cplx::from_f64(re, im, &cx))
        .collect();
        let rep = closure_check("rho-tilde", &fam, s_image, "S", &taus, 1e-20, &cx)?;
        if rep.pass {
            Ok(CheckResult::PassWithDetail(format!(
                "residual {:e}",
                rep.max_residual
            )))
        } else {
            Ok(CheckResult::fail_msg(format!("residual {:e}", rep.max_residual)))
        }
    }));
    out.push(simple("07-negative-control-single", 90, |d, opt| {
        let cx = Ctx::new(opt.prec.max(160));
        let w1 = w_char(1, d)?;
        let taus: Vec<Cplx> = [(0.0, 1.0), (0.5, 1.0), (0.0, 2.0), (0.3, 1.2)]
            .iter()
            .map(|&(re, im)| Cplx::from_f64(re, im, &cx))
            .collect();
        let rep = closure_check("w1-alone", std::slice::from_ref(&w1), s_image, "S", &taus, 1e-20, &cx)?;
        if !rep.pass && rep.max_residual > 1e-6 {
            Ok(CheckResult::PassWithDetail(format!(
                "closure fails as designed (residual {:e})",
                rep.max_residual
            )))
        } else {
            Ok(CheckResult::fail_msg(
                "single component unexpectedly closed under S",
            ))
        }
    }));
    out.push(simple("08-negative-control-typo-matrix", 100, |d, opt| {
        let cx = Ctx::new(opt.prec.max(192));
        let tau = Cplx::new(cx.int(0), cx.int(1));
        let good = check_s(&rho2_descriptor(d, &cx)?, &tau, 1e-20, &cx)?;
        let bad = check_s(&rho2_descriptor_uncorrected(d, &cx)?, &tau, 1e-20, &cx)?;
        if good.pass && !bad.pass {
            Ok(CheckResult::PassWithDetail(format!(
                "corrected {:e} vs uncorrected {:e}",
                good.max_residual, bad.max_residual
            )))
        } else {
            Ok(CheckResult::fail_msg(
                "matrix correction did not separate the two variants",
            ))
        }
    }));
    out
}

/// All registered suite ids.
pub fn suite_ids() -> Vec<&'static str> {
    vec![
        "rogers",
        "theorem-1.2",
        "relations",
        "theorem-1.5",
        "remark-1.6",
        "prop-3.2",
        "lemma-3.1",
        "lemma-3.3",
        "second-proof",
        "products",
        "wronskian",
        "conjecture-4.5",
        "tba-obstruction",
        "transforms",
    ]
}

fn suite_checks(id: &str) -> Result<Vec<Check>> {
    let mut checks = text_checks(id, "")?;
    // builtin ids are numbered to interleave stably with text checks
    let builtins = match id {
        "rogers" => rogers_builtins(),
        "theorem-1.2" => theorem12_builtins(),
        "relations" => relations_builtins(),
        "theorem-1.5" => theorem15_builtins(),
        "remark-1.6" => remark16_builtins(),
        "prop-3.2" => prop32_builtins(),
        "lemma-3.1" => lemma31_builtins(),
        "lemma-3.3" => lemma33_builtins(),
        "second-proof" => second_proof_builtins(),
        "products" => Vec::new(),
        "wronskian" => wronskian_builtins(),
        "conjecture-4.5" => conjecture_builtins(),
        "tba-obstruction" => tba_builtins(),
        "transforms" => transforms_builtins(),
        other => {
            if checks.is_empty() {
                return Err(NahmlabError::UnknownSuite(other.into()));
            }
            Vec::new()
        }
    };
    checks.extend(builtins);
    if checks.is_empty() {
        return Err(NahmlabError::UnknownSuite(id.into()));
    }
    Ok(checks)
}

fn config_hash(suite: &str, opt: &SuiteOptions) -> String {
    let mut h = Sha256::new();
    h.update(crate::VERSION.as_bytes());
    h.update(suite.as_bytes());
    h.update(format!("depth={:?};deep={};prec={}", opt.depth, opt.deep, opt.prec).as_bytes());
    let digest = h.finalize();
    digest[..8].iter().map(|b| format!("{b:02x}")).collect()
}

/// Execute every check of a suite (in parallel up to `opt.jobs`) and gather a
/// deterministic report, ordered by check id.
pub fn run_suite(id: &str, opt: &SuiteOptions) -> Result<VerificationReport> {
    let checks = suite_checks(id)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opt.jobs.max(1))
        .build()
        .map_err(|e| NahmlabError::Msg(e.to_string()))?;
    let mut reports: Vec<CheckReport> = pool.install(|| {
        checks
            .par_iter()
            .map(|c| {
                let start = Instant::now();
                let outcome = (c.run)(opt);
                let elapsed_ms = start.elapsed().as_millis();
                match outcome {
                    Ok((depth, CheckResult::Pass)) => CheckReport {
                        id: c.id.clone(),
                        status: "pass".into(),
                        depth: depth.to_string(),
                        elapsed_ms,
                        mismatch: None,
                        detail: None,
                    },
                    Ok((depth, CheckResult::PassWithDetail(detail))) => CheckReport {
                        id: c.id.clone(),
                        status: "pass".into(),
                        depth: depth.to_string(),
                        elapsed_ms,
                        mismatch: None,
                        detail: Some(detail),
                    },
                    Ok((depth, CheckResult::Fail { mismatch, detail })) => CheckReport {
                        id: c.id.clone(),
                        status: "fail".into(),
                        depth: depth.to_string(),
                        elapsed_ms,
                        mismatch,
                        detail,
                    },
                    Err(e) => CheckReport {
                        id: c.id.clone(),
                        status: "error".into(),
                        depth: String::new(),
                        elapsed_ms,
                        mismatch: None,
                        detail: Some(e.to_string()),
                    },
                }
            })
            .collect()
    });
    reports.sort_by(|a, b| a.id.cmp(&b.id));
    let passed = reports.iter().filter(|r| r.status == "pass").count();
    let failed = reports.iter().filter(|r| r.status == "fail").count();
    let errors = reports.iter().filter(|r| r.status == "error").count();
    Ok(VerificationReport {
        suite: id.into(),
        tool_version: crate::VERSION.into(),
        config_hash: config_hash(id, opt),
        passed,
        failed,
        errors,
        checks: reports,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_an_error() {
        assert!(matches!(
            run_suite("nonexistent", &SuiteOptions::default()),
            Err(NahmlabError::UnknownSuite(_))
        ));
    }

    #[test]
    fn reports_are_deterministic_modulo_elapsed() {
        let opt = SuiteOptions::default();
        let strip = |mut v: serde_json::Value| {
            for c in v["checks"].as_array_mut().unwrap() {
                c.as_object_mut().unwrap().remove("elapsed_ms");
            }
            serde_json::to_string(&v).unwrap()
        };
        let a = strip(run_suite("remark-1.6", &opt).unwrap().to_json());
        let b = strip(run_suite("remark-1.6", &opt).unwrap().to_json());
        assert_eq!(a, b);
        // config hash shifts with the options
        let h1 = run_suite("remark-1.6", &opt).unwrap().config_hash;
        let h2 = run_suite(
            "remark-1.6",
            &SuiteOptions {
                depth: Some(6),
                ..SuiteOptions::default()
            },
        )
        .unwrap()
        .config_hash;
        assert_ne!(h1, h2);
    }

    #[test]
    fn suite_directory_override() {
        let dir = std::env::temp_dir().join(format!("nahmlab-suites-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        std::fs::write(dir.join("products.txt"), "J(1) == J(1) @ 5\n").unwrap();
        std::env::set_var("NAHMLAB_SUITES", &dir);
        let rep = run_suite("products", &SuiteOptions::default()).unwrap();
        std::env::remove_var("NAHMLAB_SUITES");
        let _ = std::fs::remove_dir_all(&dir);
        assert_eq!(rep.checks.len(), 1);
        assert!(rep.all_pass());
    }
}
