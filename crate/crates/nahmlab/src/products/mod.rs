//! Expansion of finite and infinite q-products: Pochhammer symbols, the
//! `J_m`/`J_{a,m}` eta-type shorthands, generalized and plain Dedekind eta,
//! Weber functions and the unary thetas — plus the expression language that
//! names them in suite files.

mod ct;
mod expr;
mod parser;

pub use ct::{euler_inv_poch_z, jacobi_triple_product_sum, poch_z};
pub use expr::{expand, expand_to_depth, ProductExpr};
pub use parser::parse;

use crate::coeff::{big_rat, Rat};
use crate::error::SeriesError;
use crate::exponent::{exp, exp_int, Exponent};
use crate::series::FracSeries;

/// Sign of a Pochhammer argument: `Plus` stands for `(+q^r; q^b)` whose
/// factors are `(1 - q^(r+kb))`, `Minus` for `(-q^r; q^b)` with `(1 + ...)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PochSign {
    Plus,
    Minus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PochLen {
    Finite(u32),
    Infinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeberKind {
    F,
    F1,
    F2,
}

/// A named product (or theta) building block.
#[derive(Clone, Debug, PartialEq)]
pub enum ProductAtom {
    Poch {
        sign: PochSign,
        r: Exponent,
        base: Exponent,
        len: PochLen,
    },
    /// `J_m = (q^m; q^m)_inf`
    J(i64),
    /// `J_{a,m} = (q^a, q^(m-a), q^m; q^m)_inf`, `0 < a < m`
    Jam { a: i64, m: i64 },
    /// Generalized Dedekind eta `eta_{delta;g}`, `0 < g < delta`
    GenEta { delta: i64, g: i64 },
    Eta,
    Weber(WeberKind),
    Theta2,
    Theta3,
    /// Weight-3/2 partial theta, plain (`dtheta`) or alternating (`dg`) sign
    PartialTheta { j: Exponent, k: Exponent },
    PartialG { j: Exponent, k: Exponent },
    QPow(Exponent),
}

impl ProductAtom {
    /// Parameter validation shared by the parser and direct construction.
    pub fn validate(&self) -> Result<(), SeriesError> {
        let bad = |m: String| Err(SeriesError::InvalidParameter(m));
        match self {
            ProductAtom::Poch { r, base, len, .. } => {
                if *base <= exp_int(0) {
                    return bad(format!("Pochhammer base power must be positive, got {base}"));
                }
                if matches!(len, PochLen::Infinite) && *r <= exp_int(0) {
                    return Err(SeriesError::DivergentProduct(*r));
                }
                Ok(())
            }
            ProductAtom::J(m) => {
                if *m < 1 {
                    bad(format!("J(m) needs m >= 1, got {m}"))
                } else {
                    Ok(())
                }
            }
            ProductAtom::Jam { a, m } => {
                if !(*a > 0 && a < m) {
                    bad(format!("Jam(a,m) needs 0 < a < m, got ({a},{m})"))
                } else {
                    Ok(())
                }
            }
            ProductAtom::GenEta { delta, g } => {
                if !(*g > 0 && g < delta) {
                    bad(format!("geta(delta;g) needs 0 < g < delta, got ({delta};{g})"))
                } else {
                    Ok(())
                }
            }
            ProductAtom::PartialTheta { k, .. } | ProductAtom::PartialG { k, .. } => {
                if *k <= exp_int(0) {
                    bad(format!("partial theta needs k > 0, got {k}"))
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }
}

/// `prod_{k=0}^{n-1} (1 -+ q^(r + k b))` truncated at `N`.
///
/// The sign convention follows the atom: `Plus` means argument `+q^r`, so
/// each factor subtracts.
pub fn pochhammer(
    sign: PochSign,
    r: Exponent,
    base: Exponent,
    len: PochLen,
    n: Exponent,
) -> Result<FracSeries<Rat>, SeriesError> {
    let atom = ProductAtom::Poch { sign, r, base, len };
    atom.validate()?;
    let c = match sign {
        PochSign::Plus => big_rat(-1, 1),
        PochSign::Minus => big_rat(1, 1),
    };
    let mut out = FracSeries::one(n);
    let mut k: u32 = 0;
    loop {
        if let PochLen::Finite(cnt) = len {
            if k >= cnt {
                break;
            }
        }
        let e = r + base * (k as i64);
        if matches!(len, PochLen::Infinite) && e >= n {
            break;
        }
        // out *= 1 + c q^e
        let bump = out.scale(&c);
        out.add_shifted_assign(&bump, e);
        k += 1;
        if k > 100_000 {
            return Err(SeriesError::InvalidParameter(
                "finite Pochhammer length too large".into(),
            ));
        }
    }
    Ok(out)
}

/// `(q^m; q^m)_inf`
pub fn j_series(m: i64, n: Exponent) -> Result<FracSeries<Rat>, SeriesError> {
    pochhammer(PochSign::Plus, exp_int(m), exp_int(m), PochLen::Infinite, n)
}

/// `(q^a, q^(m-a), q^m; q^m)_inf`
pub fn jam_series(a: i64, m: i64, n: Exponent) -> Result<FracSeries<Rat>, SeriesError> {
    ProductAtom::Jam { a, m }.validate()?;
    let p1 = pochhammer(PochSign::Plus, exp_int(a), exp_int(m), PochLen::Infinite, n)?;
    let p2 = pochhammer(PochSign::Plus, exp_int(m - a), exp_int(m), PochLen::Infinite, n)?;
    let p3 = j_series(m, n)?;
    Ok(p1.mul(&p2).mul(&p3))
}

/// Second periodic Bernoulli polynomial `P2(t) = {t}^2 - {t} + 1/6`.
pub fn periodic_bernoulli_2(t: Exponent) -> Exponent {
    let frac = t - t.floor();
    frac * frac - frac + exp(1, 6)
}

/// Generalized Dedekind eta: `q^(delta P2(g/delta)/2) prod_{m = +-g mod delta}(1-q^m)`.
pub fn gen_eta_series(delta: i64, g: i64, n: Exponent) -> Result<FracSeries<Rat>, SeriesError> {
    ProductAtom::GenEta { delta, g }.validate()?;
    let pref = periodic_bernoulli_2(exp(g, delta)) * exp(delta, 2);
    let body_n = n - pref;
    let mut body = pochhammer(PochSign::Plus, exp_int(g), exp_int(delta), PochLen::Infinite, body_n)?;
    if 2 * g != delta {
        let other = pochhammer(
            PochSign::Plus,
            exp_int(delta - g),
            exp_int(delta),
            PochLen::Infinite,
            body_n,
        )?;
        body = body.mul(&other);
    }
    Ok(body.shift(pref))
}

/// Dedekind eta `q^(1/24) (q; q)_inf`.
pub fn eta_series(n: Exponent) -> Result<FracSeries<Rat>, SeriesError> {
    let body = pochhammer(
        PochSign::Plus,
        exp_int(1),
        exp_int(1),
        PochLen::Infinite,
        n - exp(1, 24),
    )?;
    Ok(body.shift(exp(1, 24)))
}

/// Weber's functions in the eta-quotient normalization without extra
/// constants: `f = q^(-1/48)(-q^(1/2); q)`, `f1 = q^(-1/48)(q^(1/2); q)`,
/// `f2 = q^(1/24)(-q; q)` (all infinite products).
pub fn weber_series(kind: WeberKind, n: Exponent) -> Result<FracSeries<Rat>, SeriesError> {
    let (pref, sign, r) = match kind {
        WeberKind::F => (exp(-1, 48), PochSign::Minus, exp(1, 2)),
        WeberKind::F1 => (exp(-1, 48), PochSign::Plus, exp(1, 2)),
        WeberKind::F2 => (exp(1, 24), PochSign::Minus, exp_int(1)),
    };
    let body = pochhammer(sign, r, exp_int(1), PochLen::Infinite, n - pref)?;
    Ok(body.shift(pref))
}

/// `theta2 = sum_n q^((n+1/2)^2)`
pub fn theta2_series(n: Exponent) -> FracSeries<Rat> {
    theta_sum(n, |t| (exp(2 * t + 1, 2)) * exp(2 * t + 1, 2), big_rat(1, 1))
}

/// `theta3 = sum_n q^(n^2)`
pub fn theta3_series(n: Exponent) -> FracSeries<Rat> {
    theta_sum(n, |t| exp_int(t * t), big_rat(1, 1))
}

fn theta_sum(
    n: Exponent,
    exponent_of: impl Fn(i64) -> Exponent,
    coeff: Rat,
) -> FracSeries<Rat> {
    // exponents grow quadratically in both directions; scan out from 0
    let mut s = FracSeries::zero(n);
    for dir in [1i64, -1] {
        let mut t = if dir == 1 { 0 } else { -1 };
        loop {
            let e = exponent_of(t);
            if e >= n {
                break;
            }
            s.add_term(e, coeff.clone());
            t += dir;
        }
    }
    s
}

/// `theta3(q^m) = sum_n q^(m n^2)` as a series in `q`.
pub fn theta3_scaled(m: i64, n: Exponent) -> FracSeries<Rat> {
    let mut s = FracSeries::zero(n);
    if n > exp_int(0) {
        s.add_term(exp_int(0), big_rat(1, 1));
    }
    let mut t = 1i64;
    loop {
        let e = exp_int(m * t * t);
        if e >= n {
            break;
        }
        s.add_term(e, big_rat(2, 1));
        t += 1;
    }
    s
}

/// Expand a single named atom to truncation `n`.
pub fn expand_atom(atom: &ProductAtom, n: Exponent) -> Result<FracSeries<Rat>, SeriesError> {
    atom.validate()?;
    match atom {
        ProductAtom::Poch { sign, r, base, len } => pochhammer(*sign, *r, *base, *len, n),
        ProductAtom::J(m) => j_series(*m, n),
        ProductAtom::Jam { a, m } => jam_series(*a, *m, n),
        ProductAtom::GenEta { delta, g } => gen_eta_series(*delta, *g, n),
        ProductAtom::Eta => eta_series(n),
        ProductAtom::Weber(kind) => weber_series(*kind, n),
        ProductAtom::Theta2 => Ok(theta2_series(n)),
        ProductAtom::Theta3 => Ok(theta3_series(n)),
        ProductAtom::PartialTheta { j, k } => crate::theta::partial_theta(*j, *k, false, n),
        ProductAtom::PartialG { j, k } => crate::theta::partial_theta(*j, *k, true, n),
        ProductAtom::QPow(r) => Ok(FracSeries::monomial(*r, big_rat(1, 1), n)),
    }
}

/// Number of partitions of each `0..n` into parts from `allowed` (tested
/// against product expansions as an independent route).
#[cfg(test)]
pub(crate) fn partition_counts(n: usize, allowed: impl Fn(usize) -> bool) -> Vec<u64> {
    let mut dp = vec![0u64; n];
    dp[0] = 1;
    for part in 1..n {
        if !allowed(part) {
            continue;
        }
        for v in part..n {
            dp[v] += dp[v - part];
        }
    }
    dp
}
