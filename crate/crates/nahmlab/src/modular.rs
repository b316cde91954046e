//! Eisenstein series, the `q d/dq` and Serre derivations, Wronskians, and the
//! verification routines built on them.

use crate::coeff::{big_rat, Rat};
use crate::error::SeriesError;
use crate::exponent::{exp, exp_int, quadratic_int_range, to_big, Exponent};
use crate::nahm::{chi0, f_tilde};
use crate::products::{eta_series, weber_series, WeberKind};
use crate::series::{CompareOutcome, FracSeries};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Eisenstein {
    E2,
    E4,
    E6,
}

/// Classical normalization with constant term 1.
pub fn eisenstein(which: Eisenstein, depth: Exponent) -> FracSeries<Rat> {
    let (mult, power) = match which {
        Eisenstein::E2 => (-24i64, 1u32),
        Eisenstein::E4 => (240, 3),
        Eisenstein::E6 => (-504, 5),
    };
    let nmax = depth.ceil().to_integer().max(0);
    let mut s = FracSeries::zero(depth);
    s.add_term(exp_int(0), big_rat(1, 1));
    for n in 1..nmax {
        let mut sigma: i64 = 0;
        for d in 1..=n {
            if n % d == 0 {
                sigma += d.pow(power);
            }
        }
        s.add_term(exp_int(n), big_rat(mult * sigma, 1));
    }
    s
}

/// Ramanujan's derivation `D = q d/dq`: termwise multiplication by the
/// exponent. Exact on the fractional lattice.
pub fn ramanujan_d(s: &FracSeries<Rat>) -> FracSeries<Rat> {
    FracSeries::from_terms(
        s.iter_terms().map(|(e, c)| (e, c * to_big(e))),
        s.trunc(),
    )
}

/// Serre derivation `d_k = D - (k/12) E2`, weight `k` to `k + 2`.
pub fn serre_derivative(s: &FracSeries<Rat>, k: Exponent) -> FracSeries<Rat> {
    let e2 = eisenstein(Eisenstein::E2, s.trunc() - s.vanishing_order().unwrap_or(exp_int(0)));
    let correction = e2.mul(s).scale(&big_rat(*k.numer(), *k.denom() * 12));
    ramanujan_d(s).sub(&correction)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Derivation {
    D,
    /// Iterated Serre derivation starting from weight `k`.
    Serre(Exponent),
}

/// Wronskian determinant of the components under the chosen derivation.
/// An identically-zero result (to truncation) signals linear dependence.
pub fn wronskian(components: &[FracSeries<Rat>], derivation: Derivation) -> FracSeries<Rat> {
    let l = components.len();
    assert!(l >= 1, "need at least one component");
    // rows: successive derivatives of each component
    let mut rows: Vec<Vec<FracSeries<Rat>>> = vec![components.to_vec()];
    for r in 1..l {
        let prev = &rows[r - 1];
        let next: Vec<FracSeries<Rat>> = match derivation {
            Derivation::D => prev.iter().map(ramanujan_d).collect(),
            Derivation::Serre(k) => {
                let kr = k + exp_int(2 * (r as i64 - 1));
                prev.iter().map(|f| serre_derivative(f, kr)).collect()
            }
        };
        rows.push(next);
    }
    determinant(&rows, l)
}

/// Laplace expansion sharing minors across column subsets; `s` counted in
/// multiplications stays polynomial in `l` (fine for the l <= 6 used here).
fn determinant(rows: &[Vec<FracSeries<Rat>>], l: usize) -> FracSeries<Rat> {
    use std::collections::HashMap;
    let trunc = rows
        .iter()
        .flat_map(|r| r.iter().map(|s| s.trunc()))
        .fold(None::<Exponent>, |a, t| Some(a.map_or(t, |x| x.min(t))))
        .unwrap();
    let mut minors: HashMap<u32, FracSeries<Rat>> = HashMap::new();
    minors.insert(0, FracSeries::one(trunc));
    for size in 1..=l {
        let mut next: HashMap<u32, FracSeries<Rat>> = HashMap::new();
        for (&mask, minor) in &minors {
            if mask.count_ones() as usize != size - 1 {
                continue;
            }
            let row = size - 1;
            let mut sign_toggle = 0u32;
            for col in 0..l {
                let bit = 1u32 << col;
                if mask & bit != 0 {
                    sign_toggle += 1;
                    continue;
                }
                let term = rows[row][col].mul(minor);
                let signed = if sign_toggle % 2 == 1 { term.neg() } else { term };
                let e = next.entry(mask | bit).or_insert_with(|| FracSeries::zero(trunc));
                *e = e.add(&signed);
            }
        }
        minors = next;
    }
    minors.remove(&((1u32 << l) - 1)).unwrap()
}

/// Wronskian scaled so the leading coefficient is 1. A zero-to-truncation
/// Wronskian is returned unchanged (the linear-dependence signal).
pub fn normalized_wronskian(
    components: &[FracSeries<Rat>],
    derivation: Derivation,
) -> FracSeries<Rat> {
    let w = wronskian(components, derivation);
    match w.leading_term() {
        None => w,
        Some((_, lead)) => w.scale(&(Rat::from_integer(1.into()) / lead)),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub id: String,
    pub depth: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mismatch: Option<String>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.status == "pass"
    }

    fn from_outcome(id: &str, depth: Exponent, outcome: CompareOutcome) -> Self {
        match outcome {
            CompareOutcome::Equal => IdentityReport {
                id: id.into(),
                depth: fmt_e(depth),
                status: "pass".into(),
                mismatch: None,
            },
            CompareOutcome::Mismatch { exponent, lhs, rhs } => IdentityReport {
                id: id.into(),
                depth: fmt_e(depth),
                status: "fail".into(),
                mismatch: Some(format!("q^({}): {lhs} vs {rhs}", fmt_e(exponent))),
            },
        }
    }
}

fn fmt_e(e: Exponent) -> String {
    if e.is_integer() {
        e.numer().to_string()
    } else {
        format!("{}/{}", e.numer(), e.denom())
    }
}

/// The six normalized characters, each known to `q^depth`.
pub fn f_tilde_family(depth: Exponent) -> Result<Vec<FracSeries<Rat>>, SeriesError> {
    (1..=6).map(|i| f_tilde(i, depth)).collect()
}

/// Normalized Wronskian of the six characters against the closed eta- and
/// Eisenstein-form with the integer constants 5892480, 70027513, 64135033.
pub fn remark44_check(depth: Exponent) -> Result<IdentityReport, SeriesError> {
    // components to depth + room for the order-3/2 shift and normalization
    let comp_depth = depth + exp_int(4);
    let fam = f_tilde_family(comp_depth)?;
    let w = normalized_wronskian(&fam, Derivation::D);

    let rhs_depth = w.trunc().max(depth);
    let eta36 = eta_series(rhs_depth + exp_int(2))?.pow(36)?;
    let e4 = eisenstein(Eisenstein::E4, rhs_depth + exp_int(2));
    let e6 = eisenstein(Eisenstein::E6, rhs_depth + exp_int(2));
    let combo = e4
        .pow(3)?
        .scale(&big_rat(70027513, 1))
        .sub(&e6.pow(2)?.scale(&big_rat(64135033, 1)));
    let rhs = eta36.mul(&combo).scale(&big_rat(1, 5892480));

    let outcome = w.compare(&rhs, depth)?;
    Ok(IdentityReport::from_outcome("remark-4.4", depth, outcome))
}

/// Alternating theta components used on the even side of the rank-n family:
/// `R_{2k,i} = sum_n (-1)^n q^((k+1)(n - (2i-1)/(4(k+1)))^2)`.
pub fn r_component(k: i64, i: i64, depth: Exponent) -> FracSeries<Rat> {
    let kk = exp_int(k + 1);
    let c = exp(2 * i - 1, 4 * (k + 1));
    let mut s = FracSeries::zero(depth);
    // (k+1)(n - c)^2 < depth
    let alpha = kk;
    let beta = -kk * c * 2;
    let gamma = kk * c * c - depth;
    if let Some((lo, hi)) = quadratic_int_range(alpha, beta, gamma) {
        for n in lo..=hi {
            let d = exp_int(n) - c;
            let e = kk * d * d;
            if e < depth {
                let sign = if n.rem_euclid(2) == 0 { 1 } else { -1 };
                s.add_term(e, big_rat(sign, 1));
            }
        }
    }
    s
}

/// Stated prefactor exponent for the rank-n identity.
pub fn conjecture_prefactor(n: i64) -> Exponent {
    if n % 2 == 0 {
        let k = n / 2;
        exp(-k * (1 + 4 * k), 48 * (1 + k))
    } else {
        let k = (n + 1) / 2;
        exp(-1 + 6 * k - 8 * k * k, 96 * k + 48)
    }
}

/// Verify the rank-n Wronskian identity for the all-ones character at the
/// given depth. A mismatch is a finding, not an error.
pub fn conjecture_check(n: i64, depth: Exponent) -> Result<IdentityReport, SeriesError> {
    if n < 2 {
        return Err(SeriesError::InvalidParameter("rank must be >= 2".into()));
    }
    let a = conjecture_prefactor(n);
    let id = format!("rank-{n}");

    // left side: q^a * chi0(1,...,1)
    let lhs = chi0(&vec![exp_int(0); n as usize], depth - a)?.shift(a);

    // right side with adaptive headroom for the pessimistic truncation rules
    let mut margin = exp_int(4);
    for _ in 0..6 {
        let rhs = conjecture_rhs(n, depth + margin)?;
        if rhs.trunc() >= depth {
            let outcome = lhs.compare(&rhs.truncate(depth), depth)?;
            return Ok(IdentityReport::from_outcome(&id, depth, outcome));
        }
        margin = margin * 2;
    }
    Err(SeriesError::TruncationUnderflow(depth))
}

fn conjecture_rhs(n: i64, work: Exponent) -> Result<FracSeries<Rat>, SeriesError> {
    let (k, weber_pow, eta_pow, comps): (i64, i64, i64, Vec<FracSeries<Rat>>) = if n % 2 == 0 {
        let k = n / 2;
        let comps = (1..=k).map(|i| r_component(k, i, work)).collect();
        (k, 2 * k, k * (2 * k - 1), comps)
    } else {
        let k = (n + 1) / 2;
        let comps = (1..=k - 1)
            .map(|i| crate::theta::partial_theta(exp_int(i), exp(2 * k + 1, 2), false, work))
            .collect::<Result<_, _>>()?;
        (k, 2 * k - 1, (k - 1) * (2 * k - 1), comps)
    };
    let _ = k;
    let w = normalized_wronskian(&comps, Derivation::D);
    let f = weber_series(WeberKind::F, work)?.pow(weber_pow)?;
    let eta_inv = eta_series(work)?.pow(eta_pow)?.invert()?;
    Ok(f.mul(&w).mul(&eta_inv))
}

/// Coefficient count sufficient for equality of two weight-`k` forms at the
/// given level: `1 + floor(k * index / 24)` with the index taken as
/// `N^2 prod_{p | N} (1 - 1/p^2)` (no +-1 quotient).
pub fn sturm_bound(weight: Exponent, level: i64) -> i64 {
    assert!(level >= 1 && weight > exp_int(0));
    let mut index: i128 = (level as i128) * (level as i128);
    let mut m = level;
    let mut p = 2i64;
    while p * p <= m {
        if m % p == 0 {
            index = index / (p as i128 * p as i128) * ((p as i128 * p as i128) - 1);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        index = index / (m as i128 * m as i128) * ((m as i128 * m as i128) - 1);
    }
    let scaled = to_big(weight) * num::BigRational::from_integer(index.into())
        / num::BigRational::from_integer(24.into());
    1 + scaled.floor().to_integer().try_into().unwrap_or(i64::MAX)
}

/// Exact check used by the second-proof route: the theta-multiplied identity
/// holding for exactly `count` coefficients.
pub fn verify_sturm_depth_identity(count: i64) -> Result<IdentityReport, SeriesError> {
    use crate::products::{j_series, jam_series, theta3_scaled};
    let depth = exp_int(count);
    // LHS: theta3(5 tau) * sum_n (5n+1) q^((5n+1)^2)
    let theta5 = theta3_scaled(5, depth);
    let core = crate::theta::theta_residue_class(1, 5, depth);
    let lhs = theta5.mul(&core).truncate(depth);

    // RHS: theta3^4(5 tau) (f1 + f2) with the two eta-quotient pieces
    let t4 = theta5.pow(4)?;
    let j5 = j_series(5, depth)?;
    let j10i = j_series(10, depth)?.invert()?;
    let j20 = j_series(20, depth)?;
    let j40 = j_series(40, depth)?;
    let j200 = j_series(200, depth)?;
    let f1 = j5
        .pow(8)?
        .mul(&j20.pow(14)?)
        .mul(&j200)
        .mul(&j10i.pow(20)?)
        .mul(&j40.pow(2)?.invert()?)
        .mul(&jam_series(40, 200, depth)?.invert()?)
        .shift(exp_int(1));
    let f2 = j5
        .pow(8)?
        .mul(&j20.pow(7)?)
        .mul(&j40.pow(2)?)
        .mul(&jam_series(30, 100, depth)?)
        .mul(&jam_series(40, 200, depth)?)
        .mul(&j10i.pow(18)?)
        .mul(&j200.invert()?)
        .scale(&big_rat(2, 1))
        .shift(exp_int(6));
    let rhs = t4.mul(&f1.add(&f2)).truncate(depth);

    let outcome = lhs.compare(&rhs, depth)?;
    Ok(IdentityReport::from_outcome(
        &format!("sturm-depth-{count}"),
        depth,
        outcome,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> Rat {
        big_rat(n, 1)
    }

    #[test]
    fn eisenstein_series_values() {
        let e2 = eisenstein(Eisenstein::E2, exp_int(5));
        for (n, c) in [(0, 1), (1, -24), (2, -72), (3, -96), (4, -168)] {
            assert_eq!(e2.coeff(exp_int(n)), Some(rat(c)));
        }
        let e4 = eisenstein(Eisenstein::E4, exp_int(3));
        assert_eq!(e4.coeff(exp_int(1)), Some(rat(240)));
        let e6 = eisenstein(Eisenstein::E6, exp_int(3));
        assert_eq!(e6.coeff(exp_int(0)), Some(rat(1)));
        assert_eq!(e6.coeff(exp_int(2)), Some(rat(-504 * 33)));
    }

    #[test]
    fn ramanujan_relation_as_oracle() {
        // D(E4) = (E2 E4 - E6)/3 pins all three expansions at once
        let n = exp_int(30);
        let e2 = eisenstein(Eisenstein::E2, n);
        let e4 = eisenstein(Eisenstein::E4, n);
        let e6 = eisenstein(Eisenstein::E6, n);
        let lhs = ramanujan_d(&e4);
        let rhs = e2.mul(&e4).sub(&e6).scale(&big_rat(1, 3));
        assert!(lhs.compare(&rhs, n).unwrap().is_equal());
    }

    #[test]
    fn d_on_monomials() {
        let m = FracSeries::monomial(exp(1, 10), rat(1), exp_int(2));
        let d = ramanujan_d(&m);
        assert_eq!(d.coeff(exp(1, 10)), Some(big_rat(1, 10)));
        // serre at weight 0 on the constant is plain D
        let one = FracSeries::one(exp_int(10));
        let s = serre_derivative(&one, exp_int(0));
        assert!(s.is_zero_to_trunc());
    }

    #[test]
    fn wronskian_single_and_repeated() {
        let f = FracSeries::from_terms(
            [(exp_int(1), rat(2)), (exp_int(3), rat(5))],
            exp_int(8),
        );
        // single component: the function itself
        let w1 = wronskian(std::slice::from_ref(&f), Derivation::D);
        assert!(w1.compare(&f, exp_int(8)).unwrap().is_equal());
        // repeated row vanishes
        let w2 = wronskian(&[f.clone(), f.clone()], Derivation::D);
        assert!(w2.is_zero_to_trunc());
    }

    #[test]
    fn wronskian_row_swap_antisymmetry() {
        let f = FracSeries::from_terms([(exp_int(0), rat(1)), (exp_int(2), rat(3))], exp_int(9));
        let g = FracSeries::from_terms([(exp_int(1), rat(1)), (exp_int(4), rat(-2))], exp_int(9));
        let w_fg = wronskian(&[f.clone(), g.clone()], Derivation::D);
        let w_gf = wronskian(&[g, f], Derivation::D);
        assert!(w_fg.compare(&w_gf.neg(), w_fg.trunc()).unwrap().is_equal());
    }

    #[test]
    fn d_and_serre_wronskians_agree() {
        // row operations with E2 multiples leave the determinant unchanged
        let f = FracSeries::from_terms([(exp_int(0), rat(1)), (exp_int(1), rat(4))], exp_int(12));
        let g = FracSeries::from_terms([(exp_int(2), rat(1)), (exp_int(3), rat(1))], exp_int(12));
        let h = FracSeries::from_terms([(exp_int(1), rat(2)), (exp_int(5), rat(7))], exp_int(12));
        for k in [exp_int(0), exp_int(2), exp(1, 2)] {
            let wd = wronskian(&[f.clone(), g.clone(), h.clone()], Derivation::D);
            let ws = wronskian(&[f.clone(), g.clone(), h.clone()], Derivation::Serre(k));
            let d = wd.trunc().min(ws.trunc());
            assert!(wd.compare(&ws, d).unwrap().is_equal(), "weight {k}");
        }
    }

    #[test]
    fn order_rule_for_distinct_leading_exponents() {
        let f = FracSeries::from_terms([(exp(1, 3), rat(2)), (exp(4, 3), rat(1))], exp_int(10));
        let g = FracSeries::from_terms([(exp(1, 2), rat(5)), (exp(3, 2), rat(-1))], exp_int(10));
        let h = FracSeries::from_terms([(exp_int(2), rat(3)), (exp_int(3), rat(1))], exp_int(10));
        let w = wronskian(&[f, g, h], Derivation::D);
        assert_eq!(w.vanishing_order(), Some(exp(1, 3) + exp(1, 2) + exp_int(2)));
    }

    #[test]
    fn sturm_bound_values() {
        assert_eq!(sturm_bound(exp_int(2), 200), 2401);
        assert_eq!(sturm_bound(exp_int(2), 1), 1);
        // monotone in the weight
        let mut prev = 0;
        for k in 1..=8 {
            let b = sturm_bound(exp_int(k), 20);
            assert!(b >= prev);
            prev = b;
        }
    }

    #[test]
    fn conjecture_prefactors() {
        assert_eq!(conjecture_prefactor(2), exp(-5, 96));
        assert_eq!(conjecture_prefactor(3), exp(-7, 80));
        assert_eq!(conjecture_prefactor(4), exp(-1, 8));
        assert_eq!(conjecture_prefactor(5), exp(-55, 336));
    }

    #[test]
    fn r_component_leading() {
        // R_{2,1} = q^(1/32) - q^(49/32) - ...
        let r = r_component(1, 1, exp_int(3));
        assert_eq!(r.leading_term(), Some((exp(1, 32), rat(1))));
        assert_eq!(r.coeff(exp(49, 32)), Some(rat(-1)));
        assert_eq!(r.coeff(exp(81, 32)), Some(rat(-1)));
    }
}
