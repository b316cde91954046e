//! Weight-3/2 partial theta series, residue-class theta series, minimal-model
//! and affine characters, and the relation battery connecting them.

use crate::coeff::{big_rat, GaussRat, Rat};
use crate::error::SeriesError;
use crate::exponent::{exp, exp_int, lcm_i64, quadratic_int_range, Exponent};
use crate::numeric::{Cplx, Ctx};
use crate::products::{eta_series, theta2_series, theta3_series};
use crate::series::FracSeries;
use serde::Serialize;

/// `(dTheta)_{j,k} = sum_n (2kn+j) q^((2kn+j)^2/(4k))`, or the alternating
/// `(dG)_{j,k}` with an extra `(-1)^n` when `signed` is set.
pub fn partial_theta(
    j: Exponent,
    k: Exponent,
    signed: bool,
    depth: Exponent,
) -> Result<FracSeries<Rat>, SeriesError> {
    if k <= exp_int(0) {
        return Err(SeriesError::InvalidParameter(format!(
            "partial theta needs k > 0, got {k}"
        )));
    }
    let mut s = FracSeries::zero(depth);
    // (2kn + j)^2 / 4k < depth, a quadratic inequality in n
    let alpha = k * k * 4;
    let beta = k * j * 4;
    let gamma = j * j - k * depth * 4;
    if let Some((lo, hi)) = quadratic_int_range(alpha, beta, gamma) {
        for n in lo..=hi {
            let m = k * 2 * n + j;
            let e = m * m / (k * 4);
            if e >= depth {
                continue;
            }
            let mut c = big_rat(*m.numer(), *m.denom());
            if signed && n.rem_euclid(2) == 1 {
                c = -c;
            }
            s.add_term(e, c);
        }
    }
    Ok(s)
}

/// `sum_{n = a mod m} n q^(n^2)` over all integers `n` (negative included).
pub fn theta_residue_class(a: i64, m: i64, depth: Exponent) -> FracSeries<Rat> {
    assert!(m >= 1 && a >= 0 && a < m);
    let mut s = FracSeries::zero(depth);
    // (a + m t)^2 < depth
    let alpha = exp_int(m * m);
    let beta = exp_int(2 * a * m);
    let gamma = exp_int(a * a) - depth;
    if let Some((lo, hi)) = quadratic_int_range(alpha, beta, gamma) {
        for t in lo..=hi {
            let n = a + m * t;
            let e = exp_int(n * n);
            if e < depth {
                s.add_term(e, big_rat(n, 1));
            }
        }
    }
    s
}

/// The two conductor-5 odd-character theta series, assembled over the
/// Gaussian rationals: `variant` selects the character with value `+-i` at 2.
pub fn psi_theta(variant: usize, depth: Exponent) -> FracSeries<GaussRat> {
    use crate::coeff::Coef;
    let i_val = match variant {
        0 => GaussRat::i(),
        _ => GaussRat::i().neg_ref(),
    };
    // psi on residues 1, 2, 3, 4 mod 5: 1, ±i, ∓i, -1 (psi(3) = psi(2)^3)
    let vals = [
        GaussRat::one(),
        i_val.clone(),
        i_val.neg_ref(),
        GaussRat::one().neg_ref(),
    ];
    // summed over all integers; the character is odd, so the negative ray
    // doubles the positive one instead of cancelling it
    let mut s = FracSeries::zero(depth);
    let mut n = 1i64;
    loop {
        let e = exp_int(n * n);
        if e >= depth {
            break;
        }
        if n % 5 != 0 {
            let psi = &vals[(n % 5 - 1) as usize];
            s.add_term(e, psi.mul_ref(&GaussRat::from_rational(&big_rat(2 * n, 1))));
        }
        n += 1;
    }
    s
}

/// `sum_{n>=0} q^(n^2 + a n) / (q; q)_{2n + b}` by direct summation.
pub fn rogers_sum(a: i64, b: i64, depth: Exponent) -> FracSeries<Rat> {
    assert!(b == 0 || b == 1);
    let mut acc = FracSeries::zero(depth);
    let mut invp = FracSeries::one(depth); // 1/(q;q)_m, extended as m grows
    let mut m = 0i64;
    let mut n = 0i64;
    loop {
        let e = exp_int(n * n + a * n);
        if e >= depth {
            break;
        }
        while m < 2 * n + b {
            m += 1;
            let mut geom = FracSeries::zero(depth);
            let mut g = exp_int(0);
            while g < depth {
                geom.add_term(g, big_rat(1, 1));
                g = g + exp_int(m);
            }
            invp = invp.mul(&geom);
        }
        acc.add_shifted_assign(&invp, e);
        n += 1;
    }
    acc
}

/// Minimal-model character family: `(1/eta) sum_n (q^((30n+5r-3s)^2/60) -
/// q^((30n+5r+3s)^2/60))` for `(r, s)` in `{1,2} x {1,2}`.
pub fn minimal_model_char(
    r: i64,
    s: i64,
    depth: Exponent,
) -> Result<FracSeries<Rat>, SeriesError> {
    if !(1..=2).contains(&r) || !(1..=2).contains(&s) {
        return Err(SeriesError::InvalidParameter(format!(
            "character indices (r,s) = ({r},{s}) out of range"
        )));
    }
    let work = depth + exp(1, 24) + exp_int(1);
    let mut num = FracSeries::zero(work);
    for (sign, off) in [(1i64, 5 * r - 3 * s), (-1, 5 * r + 3 * s)] {
        // (30n + off)^2 / 60 < work
        let alpha = exp_int(900) / 60;
        let beta = exp_int(60 * off) / 60;
        let gamma = exp_int(off * off) / 60 - work;
        if let Some((lo, hi)) = quadratic_int_range(alpha, beta, gamma) {
            for n in lo..=hi {
                let t = 30 * n + off;
                num.add_term(exp(t * t, 60), big_rat(sign, 1));
            }
        }
    }
    let eta = eta_series(work)?;
    Ok(num.mul(&eta.invert()?).truncate(depth))
}

/// The four `Z_i` built from Rogers' sums with their stated prefactors.
pub fn z_char(i: usize, depth: Exponent) -> Result<FracSeries<Rat>, SeriesError> {
    let (pref, a, b) = match i {
        1 => (exp(1, 40), 1, 0),
        2 => (exp(31, 40), 2, 1),
        3 => (exp(9, 40), 1, 1),
        4 => (exp(-1, 40), 0, 0),
        _ => {
            return Err(SeriesError::InvalidParameter(format!(
                "Z index {i} out of range 1..=4"
            )))
        }
    };
    Ok(rogers_sum(a, b, depth - pref).shift(pref))
}

/// Level-one affine characters `W_1 = theta3/eta`, `W_2 = theta2/eta`.
pub fn w_char(i: usize, depth: Exponent) -> Result<FracSeries<Rat>, SeriesError> {
    let work = depth + exp(1, 24) + exp_int(1);
    let eta_inv = eta_series(work)?.invert()?;
    let num = match i {
        1 => theta3_series(work),
        2 => theta2_series(work),
        _ => {
            return Err(SeriesError::InvalidParameter(format!(
                "W index {i} out of range 1..=2"
            )))
        }
    };
    Ok(num.mul(&eta_inv).truncate(depth))
}

/// The four linear-coefficient theta sums of the quintuple route:
/// `T_1 = sum (5n+1) q^(5n^2+2n)`, `T_2 = sum (5n+2) q^(5n^2+4n)`,
/// `T_3 = sum (10n+1) q^(5n^2+n)`, `T_4 = sum (10n+3) q^(5n^2+3n)`.
pub fn t_sum(i: usize, depth: Exponent) -> Result<FracSeries<Rat>, SeriesError> {
    let (cm, ca, eb) = match i {
        1 => (5i64, 1i64, 2i64),
        2 => (5, 2, 4),
        3 => (10, 1, 1),
        4 => (10, 3, 3),
        _ => {
            return Err(SeriesError::InvalidParameter(format!(
                "T index {i} out of range 1..=4"
            )))
        }
    };
    let mut s = FracSeries::zero(depth);
    if let Some((lo, hi)) =
        quadratic_int_range(exp_int(5), exp_int(eb), -depth)
    {
        for n in lo..=hi {
            let e = exp_int(5 * n * n + eb * n);
            if e < depth {
                s.add_term(e, big_rat(cm * n + ca, 1));
            }
        }
    }
    Ok(s)
}

#[derive(Debug, Clone, Serialize)]
pub struct RelationCheck {
    #[serde(rename = "relation-id")]
    pub id: String,
    pub params: serde_json::Value,
    pub depth: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mismatch: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ThetaRelationReport {
    pub k: String,
    pub checks: Vec<RelationCheck>,
}

impl ThetaRelationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status == "pass")
    }
}

fn fmt_e(e: Exponent) -> String {
    if e.is_integer() {
        e.numer().to_string()
    } else {
        format!("{}/{}", e.numer(), e.denom())
    }
}

/// Verify the vanishing, reflection and dissection identities exactly over
/// the rationals, and the `tau -> tau+1` / `tau -> tau+2` laws in the
/// smallest ring hosting the phases (rational, Gaussian, or big-float complex
/// at `prec` bits with tolerance `tol`).
pub fn check_theta_relations(
    k: Exponent,
    depth: Exponent,
    prec: usize,
    tol: f64,
) -> Result<ThetaRelationReport, SeriesError> {
    let mut checks = Vec::new();
    let dt = |j: Exponent| partial_theta(j, k, false, depth);
    let dg = |j: Exponent| partial_theta(j, k, true, depth);

    let record_eq = |checks: &mut Vec<RelationCheck>,
                     id: String,
                     params: serde_json::Value,
                     lhs: &FracSeries<Rat>,
                     rhs: &FracSeries<Rat>|
     -> Result<(), SeriesError> {
        let outcome = lhs.compare(rhs, depth)?;
        checks.push(match outcome {
            crate::series::CompareOutcome::Equal => RelationCheck {
                id,
                params,
                depth: fmt_e(depth),
                status: "pass".into(),
                mismatch: None,
                residual: None,
            },
            crate::series::CompareOutcome::Mismatch { exponent, lhs, rhs } => RelationCheck {
                id,
                params,
                depth: fmt_e(depth),
                status: "fail".into(),
                mismatch: Some(format!("q^({}): {lhs} vs {rhs}", fmt_e(exponent))),
                residual: None,
            },
        });
        Ok(())
    };

    // vanishing at the ends
    for (id, j) in [("zero-left", exp_int(0)), ("zero-right", k)] {
        let s = dt(j)?;
        let z = FracSeries::zero(depth);
        record_eq(
            &mut checks,
            id.into(),
            serde_json::json!({"j": fmt_e(j), "k": fmt_e(k)}),
            &s,
            &z,
        )?;
    }

    // grid of half-integer j values inside (0, 2k)
    let mut js = Vec::new();
    let mut j = exp(1, 2);
    while j < k * 2 {
        js.push(j);
        j = j + exp(1, 2);
    }

    for &j in &js {
        let params = serde_json::json!({"j": fmt_e(j), "k": fmt_e(k)});
        // reflection about 2k
        let refl = k * 2 - j;
        record_eq(
            &mut checks,
            format!("reflect-theta j={}", fmt_e(j)),
            params.clone(),
            &dt(j)?,
            &dt(refl)?.neg(),
        )?;
        record_eq(
            &mut checks,
            format!("reflect-g j={}", fmt_e(j)),
            params.clone(),
            &dg(j)?,
            &dg(refl)?,
        )?;
        // parity dissection into modulus 4k
        let half = big_rat(1, 2);
        let lo = partial_theta(j * 2, k * 4, false, depth)?.scale(&half);
        let hi = partial_theta(j * 2 + k * 4, k * 4, false, depth)?.scale(&half);
        record_eq(
            &mut checks,
            format!("dissect-theta j={}", fmt_e(j)),
            params.clone(),
            &dt(j)?,
            &lo.add(&hi),
        )?;
        record_eq(
            &mut checks,
            format!("dissect-g j={}", fmt_e(j)),
            params.clone(),
            &dg(j)?,
            &lo.sub(&hi),
        )?;
    }

    // tau-shift laws need k half-odd-integral
    if (k * 2).is_integer() && !k.is_integer() {
        for &j in &js {
            let params = serde_json::json!({"j": fmt_e(j), "k": fmt_e(k)});
            let phase1 = j * j / (k * 4); // e^(i pi j^2 / 2k) as a turn count
            let phase2 = j * j / (k * 2);
            let theta = dt(j)?;
            let g = dg(j)?;
            // image of tau -> tau + 1 depends on the parity class of j
            let (img1t, img1g): (&FracSeries<Rat>, &FracSeries<Rat>) = if j.is_integer() {
                (&g, &theta)
            } else {
                (&theta, &g)
            };
            checks.push(phase_relation_check(
                format!("t-shift-theta j={}", fmt_e(j)),
                params.clone(),
                &theta,
                img1t,
                1,
                phase1,
                depth,
                prec,
                tol,
            )?);
            checks.push(phase_relation_check(
                format!("t-shift-g j={}", fmt_e(j)),
                params.clone(),
                &g,
                img1g,
                1,
                phase1,
                depth,
                prec,
                tol,
            )?);
            checks.push(phase_relation_check(
                format!("t2-shift-theta j={}", fmt_e(j)),
                params.clone(),
                &theta,
                &theta,
                2,
                phase2,
                depth,
                prec,
                tol,
            )?);
            checks.push(phase_relation_check(
                format!("t2-shift-g j={}", fmt_e(j)),
                params.clone(),
                &g,
                &g,
                2,
                phase2,
                depth,
                prec,
                tol,
            )?);
        }
    }

    Ok(ThetaRelationReport {
        k: fmt_e(k),
        checks,
    })
}

/// Check `lhs(tau + m) == e^(2 pi i phase) * rhs(tau)` coefficientwise in the
/// smallest ring hosting all phases.
#[allow(clippy::too_many_arguments)]
fn phase_relation_check(
    id: String,
    params: serde_json::Value,
    lhs: &FracSeries<Rat>,
    rhs: &FracSeries<Rat>,
    m: i64,
    phase: Exponent,
    depth: Exponent,
    prec: usize,
    tol: f64,
) -> Result<RelationCheck, SeriesError> {
    use crate::coeff::Coef;
    let d = lcm_i64(lcm_i64(lhs.denom(), rhs.denom()), *phase.denom());
    let pass_fail = |ok: bool, mismatch: Option<String>, residual: Option<f64>| RelationCheck {
        id: id.clone(),
        params: params.clone(),
        depth: fmt_e(depth),
        status: if ok { "pass" } else { "fail" }.into(),
        mismatch,
        residual,
    };

    if 2 % d == 0 || 4 % d == 0 {
        // exact: rational ring suffices for D | 2; Gaussian for D | 4
        let l: FracSeries<GaussRat> = lhs.embed();
        let r: FracSeries<GaussRat> = rhs.embed();
        let mut shifted = l;
        for _ in 0..m {
            shifted = shifted.tau_shift()?;
        }
        let ph = GaussRat::root_of_unity(*phase.numer() * (4 / *phase.denom()), 4)
            .ok_or(SeriesError::PhaseNotRepresentable(phase, "gauss"))?;
        let rr = r.scale(&ph);
        return Ok(match shifted.compare(&rr, depth)? {
            crate::series::CompareOutcome::Equal => pass_fail(true, None, None),
            crate::series::CompareOutcome::Mismatch { exponent, lhs, rhs } => pass_fail(
                false,
                Some(format!("q^({}): {lhs} vs {rhs}", fmt_e(exponent))),
                None,
            ),
        });
    }

    // numeric route at `prec` bits
    let cx = Ctx::new(prec);
    let ph = Cplx::unit(&cx.ratio(phase), &cx);
    let mut worst = cx.int(0);
    let mut exps: Vec<Exponent> = lhs.iter_terms().map(|(e, _)| e).collect();
    exps.extend(rhs.iter_terms().map(|(e, _)| e));
    exps.sort();
    exps.dedup();
    for e in exps {
        let cl = lhs.coeff(e).unwrap_or_else(|| big_rat(0, 1));
        let cr = rhs.coeff(e).unwrap_or_else(|| big_rat(0, 1));
        let rot = Cplx::unit(&cx.ratio(e * m), &cx).scale(&cx.big_rational(&cl), &cx);
        let want = ph.scale(&cx.big_rational(&cr), &cx);
        let resid = rot.sub(&want, &cx).abs(&cx);
        if resid.cmp(&worst) == std::cmp::Ordering::Greater {
            worst = resid;
        }
    }
    let rf = worst.to_f64();
    Ok(pass_fail(rf < tol, None, Some(rf)))
}
