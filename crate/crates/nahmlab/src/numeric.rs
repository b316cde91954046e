//! Arbitrary-precision real and complex scalars, wrapped for ergonomic use.
//!
//! Backed by `astro-float`. Every value carries its own working precision;
//! binary operations round to the larger of the two. A [`Ctx`] bundles the
//! target precision with the shared constants cache (pi etc.).

use crate::coeff::{Coef, Rat};
use crate::exponent::Exponent;
use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num::ToPrimitive;
use std::cell::{Cell, RefCell};
use std::cmp::Ordering;
use std::fmt;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static TL_CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
    static TL_PREC: Cell<usize> = const { Cell::new(192) };
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    TL_CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// Default precision used when a complex coefficient is created without an
/// explicit context (e.g. through the generic ring interface).
pub fn set_default_precision(bits: usize) {
    TL_PREC.with(|p| p.set(bits.max(64)));
}

pub fn default_precision() -> usize {
    TL_PREC.with(|p| p.get())
}

/// Numeric context: a working precision in bits.
#[derive(Clone, Debug)]
pub struct Ctx {
    prec: usize,
}

impl Ctx {
    pub fn new(prec: usize) -> Self {
        Ctx { prec: prec.max(64) }
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    pub fn int(&self, n: i64) -> Real {
        Real(BigFloat::from_i64(n, self.prec))
    }

    pub fn ratio(&self, r: Exponent) -> Real {
        self.int(*r.numer()).div(&self.int(*r.denom()), self)
    }

    pub fn big_rational(&self, r: &Rat) -> Real {
        let conv = |x: &num::BigInt| -> Real {
            match x.to_i64() {
                Some(v) => self.int(v),
                None => Real(with_consts(|cc| {
                    BigFloat::parse(&x.to_string(), Radix::Dec, self.prec, RM, cc)
                })),
            }
        };
        conv(r.numer()).div(&conv(r.denom()), self)
    }

    pub fn from_f64(&self, f: f64) -> Real {
        Real(BigFloat::from_f64(f, self.prec))
    }

    pub fn pi(&self) -> Real {
        Real(with_consts(|cc| cc.pi(self.prec, RM)))
    }

    /// `10^(-k)` as a convenient tolerance constructor.
    pub fn tol(&self, k: i64) -> Real {
        self.int(10).powi(-k, self)
    }
}

/// Arbitrary-precision real number.
#[derive(Clone, Debug, PartialEq)]
pub struct Real(pub BigFloat);

impl Real {
    pub fn add(&self, rhs: &Real, cx: &Ctx) -> Real {
        Real(self.0.add(&rhs.0, cx.prec, RM))
    }
    pub fn sub(&self, rhs: &Real, cx: &Ctx) -> Real {
        Real(self.0.sub(&rhs.0, cx.prec, RM))
    }
    pub fn mul(&self, rhs: &Real, cx: &Ctx) -> Real {
        Real(self.0.mul(&rhs.0, cx.prec, RM))
    }
    pub fn div(&self, rhs: &Real, cx: &Ctx) -> Real {
        Real(self.0.div(&rhs.0, cx.prec, RM))
    }
    pub fn neg(&self) -> Real {
        Real(self.0.neg())
    }
    pub fn abs(&self) -> Real {
        let mut x = self.0.clone();
        x.set_sign(Sign::Pos);
        Real(x)
    }
    pub fn sqrt(&self, cx: &Ctx) -> Real {
        Real(self.0.sqrt(cx.prec, RM))
    }
    pub fn exp(&self, cx: &Ctx) -> Real {
        Real(with_consts(|cc| self.0.exp(cx.prec, RM, cc)))
    }
    pub fn ln(&self, cx: &Ctx) -> Real {
        Real(with_consts(|cc| self.0.ln(cx.prec, RM, cc)))
    }
    pub fn sin(&self, cx: &Ctx) -> Real {
        Real(with_consts(|cc| self.0.sin(cx.prec, RM, cc)))
    }
    pub fn cos(&self, cx: &Ctx) -> Real {
        Real(with_consts(|cc| self.0.cos(cx.prec, RM, cc)))
    }
    pub fn powi(&self, n: i64, cx: &Ctx) -> Real {
        if n >= 0 {
            Real(self.0.powi(n as usize, cx.prec, RM))
        } else {
            Real(self.0.powi((-n) as usize, cx.prec, RM).reciprocal(cx.prec, RM))
        }
    }
    /// `self^(p/q)` for positive base, through exp/ln.
    pub fn pow_ratio(&self, r: Exponent, cx: &Ctx) -> Real {
        if r.is_integer() {
            return self.powi(r.to_integer(), cx);
        }
        self.ln(cx).mul(&cx.ratio(r), cx).exp(cx)
    }
    pub fn cmp(&self, rhs: &Real) -> Ordering {
        match self.0.cmp(&rhs.0) {
            Some(c) if c < 0 => Ordering::Less,
            Some(c) if c > 0 => Ordering::Greater,
            _ => Ordering::Equal,
        }
    }
    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }
    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Lossy conversion for reporting and coarse checks.
    pub fn to_f64(&self) -> f64 {
        if self.0.is_zero() {
            return 0.0;
        }
        if self.0.is_inf_pos() {
            return f64::INFINITY;
        }
        if self.0.is_inf_neg() {
            return f64::NEG_INFINITY;
        }
        match self.0.as_raw_parts() {
            None => f64::NAN,
            Some((words, _n, sign, e, _)) => {
                // value = 0.mantissa * 2^e with the top word holding the MSBs
                let top = *words.last().unwrap_or(&0) as f64;
                let frac = top / 2f64.powi(astro_float::WORD_BIT_SIZE as i32);
                let v = frac * 2f64.powi(e);
                if sign == Sign::Neg {
                    -v
                } else {
                    v
                }
            }
        }
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

/// Complex number over [`Real`].
#[derive(Clone, Debug, PartialEq)]
pub struct Cplx {
    pub re: Real,
    pub im: Real,
}

impl Cplx {
    pub fn new(re: Real, im: Real) -> Self {
        Cplx { re, im }
    }

    pub fn from_f64(re: f64, im: f64, cx: &Ctx) -> Self {
        Cplx::new(cx.from_f64(re), cx.from_f64(im))
    }

    pub fn zero(cx: &Ctx) -> Self {
        Cplx::new(cx.int(0), cx.int(0))
    }

    pub fn one(cx: &Ctx) -> Self {
        Cplx::new(cx.int(1), cx.int(0))
    }

    pub fn add(&self, rhs: &Cplx, cx: &Ctx) -> Cplx {
        Cplx::new(self.re.add(&rhs.re, cx), self.im.add(&rhs.im, cx))
    }
    pub fn sub(&self, rhs: &Cplx, cx: &Ctx) -> Cplx {
        Cplx::new(self.re.sub(&rhs.re, cx), self.im.sub(&rhs.im, cx))
    }
    pub fn mul(&self, rhs: &Cplx, cx: &Ctx) -> Cplx {
        Cplx::new(
            self.re.mul(&rhs.re, cx).sub(&self.im.mul(&rhs.im, cx), cx),
            self.re.mul(&rhs.im, cx).add(&self.im.mul(&rhs.re, cx), cx),
        )
    }
    pub fn div(&self, rhs: &Cplx, cx: &Ctx) -> Cplx {
        let n = rhs.norm_sq(cx);
        let c = rhs.conj();
        let p = self.mul(&c, cx);
        Cplx::new(p.re.div(&n, cx), p.im.div(&n, cx))
    }
    pub fn neg(&self) -> Cplx {
        Cplx::new(self.re.neg(), self.im.neg())
    }
    pub fn conj(&self) -> Cplx {
        Cplx::new(self.re.clone(), self.im.neg())
    }
    pub fn scale(&self, r: &Real, cx: &Ctx) -> Cplx {
        Cplx::new(self.re.mul(r, cx), self.im.mul(r, cx))
    }
    pub fn norm_sq(&self, cx: &Ctx) -> Real {
        self.re.mul(&self.re, cx).add(&self.im.mul(&self.im, cx), cx)
    }
    pub fn abs(&self, cx: &Ctx) -> Real {
        self.norm_sq(cx).sqrt(cx)
    }
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// `e^(2 pi i t)` for real `t`.
    pub fn unit(t: &Real, cx: &Ctx) -> Cplx {
        let two_pi = cx.pi().mul(&cx.int(2), cx);
        let a = two_pi.mul(t, cx);
        Cplx::new(a.cos(cx), a.sin(cx))
    }

    /// `exp(z)` for complex `z`.
    pub fn exp(&self, cx: &Ctx) -> Cplx {
        let m = self.re.exp(cx);
        Cplx::new(self.im.cos(cx).mul(&m, cx), self.im.sin(cx).mul(&m, cx))
    }

    /// Principal square root.
    pub fn sqrt(&self, cx: &Ctx) -> Cplx {
        // sqrt(r) * (cos(theta/2) + i sin(theta/2)) via half-angle identities
        let r = self.abs(cx);
        let half = cx.ratio(crate::exponent::exp(1, 2));
        let re2 = r.add(&self.re, cx).mul(&half, cx).sqrt(cx);
        let im2 = r.sub(&self.re, cx).mul(&half, cx).sqrt(cx);
        let im = if self.im.is_negative() { im2.neg() } else { im2 };
        Cplx::new(re2, im)
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl fmt::Display for Cplx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.to_f64_pair();
        if im == 0.0 {
            write!(f, "{re:e}")
        } else if im < 0.0 {
            write!(f, "{re:e}-{:e}*i", -im)
        } else {
            write!(f, "{re:e}+{im:e}*i")
        }
    }
}

impl Coef for Cplx {
    const RING: &'static str = "complex";

    fn zero() -> Self {
        let cx = Ctx::new(default_precision());
        Cplx::zero(&cx)
    }
    fn one() -> Self {
        let cx = Ctx::new(default_precision());
        Cplx::one(&cx)
    }
    fn is_zero(&self) -> bool {
        Cplx::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self.add(rhs, &self.op_ctx(rhs))
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self.sub(rhs, &self.op_ctx(rhs))
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self.mul(rhs, &self.op_ctx(rhs))
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
    fn inv(&self) -> Option<Self> {
        if Cplx::is_zero(self) {
            return None;
        }
        let cx = self.op_ctx(self);
        Some(Cplx::one(&cx).div(self, &cx))
    }
    fn from_rational(r: &Rat) -> Self {
        let cx = Ctx::new(default_precision());
        Cplx::new(cx.big_rational(r), cx.int(0))
    }
    fn root_of_unity(num: i64, den: i64) -> Option<Self> {
        let cx = Ctx::new(default_precision());
        Some(Cplx::unit(&cx.ratio(crate::exponent::exp(num, den)), &cx))
    }
}

impl Cplx {
    fn op_ctx(&self, rhs: &Cplx) -> Ctx {
        let p = [&self.re, &self.im, &rhs.re, &rhs.im]
            .iter()
            .filter_map(|r| r.0.precision())
            .max()
            .unwrap_or_else(default_precision);
        Ctx::new(p)
    }
}
