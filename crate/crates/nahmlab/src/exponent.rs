//! Rational exponents for the `(1/D)Z` lattice.

use num::rational::Ratio;
use num::{BigRational, Integer, ToPrimitive, Zero};

/// Exponent of `q`: a reduced rational with machine-word parts.
///
/// `Ratio<i64>` already maintains the reduced-form invariant
/// (gcd(|numer|, denom) = 1, denom >= 1).
pub type Exponent = Ratio<i64>;

/// Shorthand constructor.
pub fn exp(numer: i64, denom: i64) -> Exponent {
    Ratio::new(numer, denom)
}

pub fn exp_int(n: i64) -> Exponent {
    Ratio::from_integer(n)
}

/// Floor of a rational exponent as an integer.
pub fn floor_i64(e: Exponent) -> i64 {
    e.floor().to_integer()
}

/// Ceiling of a rational exponent as an integer.
pub fn ceil_i64(e: Exponent) -> i64 {
    e.ceil().to_integer()
}

pub fn lcm_i64(a: i64, b: i64) -> i64 {
    a.lcm(&b)
}

/// Widen to an arbitrary-precision rational.
pub fn to_big(e: Exponent) -> BigRational {
    BigRational::new((*e.numer()).into(), (*e.denom()).into())
}

/// Narrow from an arbitrary-precision rational, if it fits.
pub fn from_big(r: &BigRational) -> Option<Exponent> {
    Some(Ratio::new(r.numer().to_i64()?, r.denom().to_i64()?))
}

/// Largest integer `x` with `a*x^2 + b*x + c <= 0`, paired with the smallest,
/// for `a > 0`. Returns `None` when no integer satisfies the inequality.
///
/// Used to turn exact quadratic bounds into enumeration ranges without
/// floating-point square roots.
pub fn quadratic_int_range(a: Exponent, b: Exponent, c: Exponent) -> Option<(i64, i64)> {
    assert!(a > Exponent::zero(), "quadratic bound needs positive leading term");
    // Clear denominators: A x^2 + B x + C <= 0 with integer A > 0.
    let l = lcm_i64(lcm_i64(*a.denom(), *b.denom()), *c.denom());
    let ai = (a * l).to_integer() as i128;
    let bi = (b * l).to_integer() as i128;
    let ci = (c * l).to_integer() as i128;
    let disc = bi * bi - 4 * ai * ci;
    if disc < 0 {
        return None;
    }
    let s = isqrt_i128(disc);
    // Roots are (-B +- sqrt(disc)) / 2A; start from safe integer guesses and
    // fix up by direct evaluation.
    let eval = |x: i128| ai * x * x + bi * x + ci;
    let mut hi = (-bi + s).div_euclid(2 * ai);
    while eval(hi + 1) <= 0 {
        hi += 1;
    }
    while hi >= -(bi + s).div_euclid(2 * ai) - 2 && eval(hi) > 0 {
        hi -= 1;
    }
    let mut lo = (-bi - s).div_euclid(2 * ai);
    while eval(lo - 1) <= 0 {
        lo -= 1;
    }
    while lo <= hi && eval(lo) > 0 {
        lo += 1;
    }
    if lo > hi || eval(lo) > 0 {
        return None;
    }
    Some((lo as i64, hi as i64))
}

fn isqrt_i128(n: i128) -> i128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as i128 + 1;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}
