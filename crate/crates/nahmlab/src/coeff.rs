//! Coefficient rings for truncated series.
//!
//! Everything is exact except the big-float complex instance (see
//! [`crate::numeric`]), whose per-operation error is bounded by the working
//! precision.

use num::{BigInt, BigRational, Signed, Zero};

fn rat_zero() -> BigRational {
    num::Zero::zero()
}

fn rat_one() -> BigRational {
    num::One::one()
}
use std::fmt;

/// Arbitrary-precision rational coefficient.
pub type Rat = BigRational;

/// A coefficient ring usable inside [`crate::series::FracSeries`].
pub trait Coef: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    /// Ring tag used in mismatch reports and the CLI `--ring` flag.
    const RING: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// Multiplicative inverse, if the element is a unit.
    fn inv(&self) -> Option<Self>;
    /// Canonical embedding of the rationals (exists for every instance).
    fn from_rational(r: &Rat) -> Self;
    /// `e^(2 pi i num/den)` when that root of unity lives in the ring.
    fn root_of_unity(num: i64, den: i64) -> Option<Self>;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rat::from_integer(n.into()))
    }
}

impl Coef for Rat {
    const RING: &'static str = "rational";

    fn zero() -> Self {
        rat_zero()
    }
    fn one() -> Self {
        rat_one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_rational(r: &Rat) -> Self {
        r.clone()
    }
    fn root_of_unity(num: i64, den: i64) -> Option<Self> {
        match reduced_den(num, den) {
            (1, _) => Some(rat_one()),
            (2, _) => Some(-rat_one()),
            _ => None,
        }
    }
}

/// Gaussian rational `re + im*i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GaussRat {
    pub re: Rat,
    pub im: Rat,
}

impl GaussRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        GaussRat { re, im }
    }

    pub fn i() -> Self {
        GaussRat::new(rat_zero(), rat_one())
    }

    pub fn norm(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if Zero::is_zero(&self.im) {
            return write!(f, "{}", self.re);
        }
        if Zero::is_zero(&self.re) {
            return write!(f, "{}*i", self.im);
        }
        if self.im.is_negative() {
            write!(f, "{}-{}*i", self.re, -&self.im)
        } else {
            write!(f, "{}+{}*i", self.re, self.im)
        }
    }
}

impl Coef for GaussRat {
    const RING: &'static str = "gauss";

    fn zero() -> Self {
        GaussRat::new(rat_zero(), rat_zero())
    }
    fn one() -> Self {
        GaussRat::new(rat_one(), rat_zero())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        GaussRat::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        GaussRat::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        GaussRat::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
    fn neg_ref(&self) -> Self {
        GaussRat::new(-&self.re, -&self.im)
    }
    fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if Zero::is_zero(&n) {
            return None;
        }
        Some(GaussRat::new(&self.re / &n, -&self.im / &n))
    }
    fn from_rational(r: &Rat) -> Self {
        GaussRat::new(r.clone(), rat_zero())
    }
    fn root_of_unity(num: i64, den: i64) -> Option<Self> {
        // Quartic roots: powers of i.
        let (d, n) = reduced_den(num, den);
        if 4 % d != 0 {
            return None;
        }
        let k = (n * (4 / d)).rem_euclid(4);
        Some(match k {
            0 => Coef::one(),
            1 => GaussRat::i(),
            2 => GaussRat::new(-rat_one(), rat_zero()),
            _ => GaussRat::new(rat_zero(), -rat_one()),
        })
    }
}

/// Element `a + b*sqrt(5)` of the real quadratic field Q(sqrt 5).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Root5 {
    pub a: Rat,
    pub b: Rat,
}

impl Root5 {
    pub fn new(a: Rat, b: Rat) -> Self {
        Root5 { a, b }
    }

    pub fn from_parts(an: i64, ad: i64, bn: i64, bd: i64) -> Self {
        Root5::new(
            Rat::new(an.into(), ad.into()),
            Rat::new(bn.into(), bd.into()),
        )
    }

    pub fn sqrt5() -> Self {
        Root5::new(rat_zero(), rat_one())
    }

    /// Field norm `a^2 - 5 b^2`; zero only for the zero element.
    pub fn field_norm(&self) -> Rat {
        &self.a * &self.a - Rat::from_integer(BigInt::from(5)) * &self.b * &self.b
    }

    pub fn to_f64(&self) -> f64 {
        rat_to_f64(&self.a) + rat_to_f64(&self.b) * 5f64.sqrt()
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    use num::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        // Fall back to a quotient of leading digits for huge entries.
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

impl fmt::Display for Root5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if Zero::is_zero(&self.b) {
            return write!(f, "{}", self.a);
        }
        if Zero::is_zero(&self.a) {
            return write!(f, "{}*sqrt5", self.b);
        }
        if self.b.is_negative() {
            write!(f, "{}-{}*sqrt5", self.a, -&self.b)
        } else {
            write!(f, "{}+{}*sqrt5", self.a, self.b)
        }
    }
}

impl Coef for Root5 {
    const RING: &'static str = "root5";

    fn zero() -> Self {
        Root5::new(rat_zero(), rat_zero())
    }
    fn one() -> Self {
        Root5::new(rat_one(), rat_zero())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.a) && Zero::is_zero(&self.b)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        Root5::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        Root5::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        let five = Rat::from_integer(BigInt::from(5));
        Root5::new(
            &self.a * &rhs.a + &five * &self.b * &rhs.b,
            &self.a * &rhs.b + &self.b * &rhs.a,
        )
    }
    fn neg_ref(&self) -> Self {
        Root5::new(-&self.a, -&self.b)
    }
    fn inv(&self) -> Option<Self> {
        // 5 is not a rational square, so the norm vanishes only at zero.
        let n = self.field_norm();
        if Zero::is_zero(&n) {
            return None;
        }
        Some(Root5::new(&self.a / &n, -&self.b / &n))
    }
    fn from_rational(r: &Rat) -> Self {
        Root5::new(r.clone(), rat_zero())
    }
    fn root_of_unity(num: i64, den: i64) -> Option<Self> {
        // Real field: only +-1.
        match reduced_den(num, den) {
            (1, _) => Some(Coef::one()),
            (2, _) => Some(Root5::new(-rat_one(), rat_zero())),
            _ => None,
        }
    }
}

/// Reduce `num/den` mod 1 and return `(den', num')` in lowest terms with `den' >= 1`.
fn reduced_den(num: i64, den: i64) -> (i64, i64) {
    use num::Integer;
    assert!(den >= 1);
    let n = num.rem_euclid(den);
    if n == 0 {
        return (1, 0);
    }
    let g = n.gcd(&den);
    (den / g, n / g)
}

pub fn big_rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_inverse() {
        let z = GaussRat::new(big_rat(3, 4), big_rat(-2, 1));
        let w = z.inv().unwrap();
        assert_eq!(z.mul_ref(&w), Coef::one());
        assert!(GaussRat::zero().inv().is_none());
    }

    #[test]
    fn root5_field() {
        // (3 - sqrt5)/2 has field norm 1, so its inverse is the conjugate.
        let q1 = Root5::from_parts(3, 2, -1, 2);
        let inv = q1.inv().unwrap();
        assert_eq!(inv, Root5::from_parts(3, 2, 1, 2));
        assert_eq!(q1.mul_ref(&inv), Coef::one());
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(<Rat as Coef>::root_of_unity(1, 2), Some(big_rat(-1, 1)));
        assert_eq!(<Rat as Coef>::root_of_unity(3, 2), Some(big_rat(-1, 1)));
        assert_eq!(<Rat as Coef>::root_of_unity(-1, 2), Some(big_rat(-1, 1)));
        assert_eq!(<Rat as Coef>::root_of_unity(2, 2), Some(big_rat(1, 1)));
        assert_eq!(<Rat as Coef>::root_of_unity(1, 4), None);
        assert_eq!(GaussRat::root_of_unity(1, 4), Some(GaussRat::i()));
        assert_eq!(GaussRat::root_of_unity(-1, 4), GaussRat::i().inv());
        assert_eq!(GaussRat::root_of_unity(1, 5), None);
    }
}
