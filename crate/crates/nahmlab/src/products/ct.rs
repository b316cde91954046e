//! Bivariate builders for the constant-term method: z-graded Pochhammer
//! factors, their Euler-series inverses, and the triple-product theta sum.

use crate::bivariate::BivariateSeries;
use crate::coeff::{big_rat, Rat};
use crate::error::SeriesError;
use crate::exponent::{exp_int, Exponent};
use crate::series::FracSeries;
use num::Signed;

/// `prod_{k>=0} (1 + c q^(r + k b) z^d)` clipped to the window.
pub fn poch_z(
    c: &Rat,
    r: Exponent,
    zdeg: i64,
    base: Exponent,
    zmin: i64,
    zmax: i64,
    trunc: Exponent,
) -> Result<BivariateSeries<Rat>, SeriesError> {
    if base <= exp_int(0) {
        return Err(SeriesError::InvalidParameter("base power must be positive".into()));
    }
    let mut out = BivariateSeries::one(zmin, zmax, trunc);
    let mut k = 0i64;
    loop {
        let e = r + base * k;
        if e >= trunc {
            break;
        }
        out.mul_factor(zdeg, e, c);
        k += 1;
    }
    Ok(out)
}

/// `1 / (x; q^b)_inf` with `x = c q^r z^d`, via the Euler expansion
/// `sum_n x^n / (q^b; q^b)_n`. For `r <= 0` the z-degree must be nonzero so
/// the window bounds the sum.
pub fn euler_inv_poch_z(
    c: &Rat,
    r: Exponent,
    zdeg: i64,
    base: Exponent,
    zmin: i64,
    zmax: i64,
    trunc: Exponent,
) -> Result<BivariateSeries<Rat>, SeriesError> {
    if r <= exp_int(0) && zdeg == 0 {
        return Err(SeriesError::DivergentProduct(r));
    }
    let mut out = BivariateSeries::zero(zmin, zmax, trunc);
    let mut invp = FracSeries::one(trunc.abs() * 2 + exp_int(1));
    // generous truncation for the 1/(q^b;q^b)_n parts; clipped on insertion
    let mut cn = big_rat(1, 1);
    let mut n = 0i64;
    loop {
        if r > exp_int(0) && r * n >= trunc {
            break;
        }
        // z-degrees march monotonically along the ray n*zdeg; once outside the
        // window every later term is too.
        if (zdeg > 0 && n * zdeg > zmax) || (zdeg < 0 && n * zdeg < zmin) {
            break;
        }
        // term: c^n q^(r n) z^(d n) / (q^b; q^b)_n
        let term = invp.scale(&cn);
        for (e, v) in term.iter_terms() {
            out.add_term(n * zdeg, e + r * n, v.clone());
        }
        n += 1;
        cn = cn * c;
        // extend 1/(q^b;q^b)_n by the next factor
        let geom = geom_series(base * n, invp.trunc());
        invp = invp.mul(&geom);
        if n > 10_000 {
            return Err(SeriesError::InvalidParameter("Euler expansion did not terminate".into()));
        }
    }
    Ok(out)
}

/// `1/(1 - q^e) = 1 + q^e + q^(2e) + ...`
fn geom_series(e: Exponent, trunc: Exponent) -> FracSeries<Rat> {
    let mut s = FracSeries::zero(trunc);
    let mut cur = exp_int(0);
    while cur < trunc {
        s.add_term(cur, big_rat(1, 1));
        cur = cur + e;
    }
    s
}

/// Triple-product theta sum `sum_n (-1)^n q^(n(n-1)/2) z^n` on the window.
pub fn jacobi_triple_product_sum(
    zmin: i64,
    zmax: i64,
    trunc: Exponent,
) -> BivariateSeries<Rat> {
    let mut out = BivariateSeries::zero(zmin, zmax, trunc);
    for n in zmin..=zmax {
        let e = exp_int(n * (n - 1) / 2);
        if e < trunc {
            let sign = if n.rem_euclid(2) == 0 { 1 } else { -1 };
            out.add_term(n, e, big_rat(sign, 1));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bivariate::ct_window;
    use crate::products::{j_series, pochhammer, PochLen, PochSign};

    #[test]
    fn jacobi_triple_product_identity() {
        // (q, z, q/z; q)_inf == sum_n (-1)^n q^binom(n,2) z^n, depth 25
        let n = exp_int(25);
        let m = ct_window(25, 1);
        let jq = j_series(1, n).unwrap();
        let fz = poch_z(&big_rat(-1, 1), exp_int(0), 1, exp_int(1), -m, m, n).unwrap();
        let fqz = poch_z(&big_rat(-1, 1), exp_int(1), -1, exp_int(1), -m, m, n).unwrap();
        let lhs = fz.mul(&fqz).mul_scalar_series(&jq);
        let rhs = jacobi_triple_product_sum(-m, m, n);
        // compare within the trustworthy z-range (window edges are clipped)
        for d in -m / 2..=m / 2 {
            let a = lhs.component(d).unwrap();
            let b = rhs.component(d).unwrap();
            assert!(
                a.compare(b, exp_int(20)).unwrap().is_equal(),
                "z-degree {d} mismatch"
            );
        }
    }

    #[test]
    fn euler_inverse_matches_series_inverse() {
        // 1/(q^2 z^0 ...) with plain q-dependence reduces to the scalar route
        let n = exp_int(16);
        let b = euler_inv_poch_z(&big_rat(1, 1), exp_int(2), 0, exp_int(1), -2, 2, n).unwrap();
        let direct = pochhammer(PochSign::Plus, exp_int(2), exp_int(1), PochLen::Infinite, n)
            .unwrap()
            .invert()
            .unwrap();
        let ct = b.constant_term().unwrap();
        assert!(ct.compare(&direct, exp_int(14)).unwrap().is_equal());
    }

    #[test]
    fn ct_scaling_law() {
        // CT[f(alpha z^beta)] = CT[f(z)] for f = (z; q)_inf/(q/z;q)_inf-style mix,
        // recomputed in-window with alpha = -1, beta = 2.
        let n = exp_int(12);
        let m = ct_window(12, 1);
        let f = |alpha: Rat, beta: i64| {
            let a = poch_z(&(-alpha.clone()), exp_int(1), beta, exp_int(1), -m, m, n).unwrap();
            let b = euler_inv_poch_z(&alpha, exp_int(1), -beta, exp_int(1), -m, m, n).unwrap();
            a.mul(&b).constant_term().unwrap()
        };
        let plain = f(big_rat(1, 1), 1);
        let scaled = f(big_rat(-1, 1), 2);
        assert!(plain.compare(&scaled, exp_int(10)).unwrap().is_equal());
    }
}
