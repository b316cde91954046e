//! Truncated formal Laurent series in `q` with exponents on a `(1/D)Z` lattice.
//!
//! A [`FracSeries`] knows its coefficients for every exponent strictly below
//! its truncation bound and nothing above it. Arithmetic tracks the bound
//! pessimistically, so a stored coefficient is always the exact one —
//! precision can shrink, correctness cannot.

use crate::coeff::{Coef, Rat};
use crate::error::SeriesError;
use crate::exponent::{exp, exp_int, lcm_i64, Exponent};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Debug, PartialEq)]
pub struct FracSeries<R: Coef> {
    /// Exponent lattice denominator `D >= 1`: key `k` stands for `q^(k/D)`.
    denom: i64,
    /// Coefficients are known exactly for all exponents `< trunc`.
    trunc: Exponent,
    /// Sparse nonzero coefficients; every key satisfies `k/D < trunc`.
    terms: BTreeMap<i64, R>,
}

/// Outcome of a coefficientwise comparison up to a depth.
#[derive(Clone, Debug, PartialEq)]
pub enum CompareOutcome {
    Equal,
    Mismatch {
        exponent: Exponent,
        lhs: String,
        rhs: String,
    },
}

impl CompareOutcome {
    pub fn is_equal(&self) -> bool {
        matches!(self, CompareOutcome::Equal)
    }
}

impl<R: Coef> FracSeries<R> {
    pub fn zero(trunc: Exponent) -> Self {
        FracSeries {
            denom: 1,
            trunc,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(trunc: Exponent) -> Self {
        Self::monomial(exp_int(0), R::one(), trunc)
    }

    pub fn monomial(e: Exponent, c: R, trunc: Exponent) -> Self {
        let mut s = FracSeries {
            denom: *e.denom(),
            trunc,
            terms: BTreeMap::new(),
        };
        s.add_term(e, c);
        s
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponent, R)>>(iter: I, trunc: Exponent) -> Self {
        let mut s = Self::zero(trunc);
        for (e, c) in iter {
            s.add_term(e, c);
        }
        s
    }

    pub fn denom(&self) -> i64 {
        self.denom
    }

    pub fn trunc(&self) -> Exponent {
        self.trunc
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero_to_trunc(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterate `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn iter_terms(&self) -> impl Iterator<Item = (Exponent, &R)> + '_ {
        let d = self.denom;
        self.terms.iter().map(move |(k, c)| (exp(*k, d), c))
    }

    /// Coefficient of `q^e`; `None` when `e` is at or beyond the truncation
    /// (i.e. unknown), `Some(0)` for an absent exponent below it.
    pub fn coeff(&self, e: Exponent) -> Option<R> {
        if e >= self.trunc {
            return None;
        }
        let scaled = e * self.denom;
        if !scaled.is_integer() {
            return Some(R::zero());
        }
        Some(
            self.terms
                .get(&scaled.to_integer())
                .cloned()
                .unwrap_or_else(R::zero),
        )
    }

    /// Smallest exponent carrying a nonzero coefficient, with its value.
    /// `None` flags a series that is identically zero to truncation.
    pub fn leading_term(&self) -> Option<(Exponent, R)> {
        self.terms
            .iter()
            .next()
            .map(|(k, c)| (exp(*k, self.denom), c.clone()))
    }

    /// Order of vanishing (valuation); `None` for zero-to-truncation input.
    pub fn vanishing_order(&self) -> Option<Exponent> {
        self.leading_term().map(|(e, _)| e)
    }

    fn valuation_or_trunc(&self) -> Exponent {
        self.vanishing_order().unwrap_or(self.trunc)
    }

    /// Insert `c*q^e`, accumulating into an existing coefficient. Terms at or
    /// beyond the truncation are dropped — they carry no information.
    pub fn add_term(&mut self, e: Exponent, c: R) {
        if c.is_zero() || e >= self.trunc {
            return;
        }
        if self.denom % e.denom() != 0 {
            self.rescale_denom(lcm_i64(self.denom, *e.denom()));
        }
        let k = (e * self.denom).to_integer();
        match self.terms.entry(k) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add_ref(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn rescale_denom(&mut self, new_d: i64) {
        debug_assert!(new_d % self.denom == 0);
        if new_d == self.denom {
            return;
        }
        let f = new_d / self.denom;
        self.terms = self.terms.iter().map(|(k, c)| (k * f, c.clone())).collect();
        self.denom = new_d;
    }

    /// Divide out any common factor between the lattice denominator and the
    /// stored keys, keeping the canonical smallest `D`.
    pub fn normalize_denom(&mut self) {
        use num::Integer;
        let mut g = self.denom;
        for k in self.terms.keys() {
            g = g.gcd(k);
            if g == 1 {
                return;
            }
        }
        if g > 1 {
            self.terms = self.terms.iter().map(|(k, c)| (k / g, c.clone())).collect();
            self.denom /= g;
        }
    }

    /// Lower the truncation bound, discarding now-unknown terms.
    pub fn truncate(&self, new_trunc: Exponent) -> Self {
        let t = self.trunc.min(new_trunc);
        let mut s = FracSeries {
            denom: self.denom,
            trunc: t,
            terms: BTreeMap::new(),
        };
        let cut = t * self.denom;
        for (k, c) in &self.terms {
            if exp_int(*k) < cut {
                s.terms.insert(*k, c.clone());
            }
        }
        s
    }

    pub fn neg(&self) -> Self {
        FracSeries {
            denom: self.denom,
            trunc: self.trunc,
            terms: self.terms.iter().map(|(k, c)| (*k, c.neg_ref())).collect(),
        }
    }

    pub fn scale(&self, c: &R) -> Self {
        if c.is_zero() {
            return Self::zero(self.trunc);
        }
        let mut terms = BTreeMap::new();
        for (k, v) in &self.terms {
            let p = v.mul_ref(c);
            if !p.is_zero() {
                terms.insert(*k, p);
            }
        }
        FracSeries {
            denom: self.denom,
            trunc: self.trunc,
            terms,
        }
    }

    pub fn scale_rational(&self, c: &Rat) -> Self {
        self.scale(&R::from_rational(c))
    }

    fn unified(&self, rhs: &Self) -> (Self, Self) {
        let d = lcm_i64(self.denom, rhs.denom);
        let mut a = self.clone();
        let mut b = rhs.clone();
        a.rescale_denom(d);
        b.rescale_denom(d);
        (a, b)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let t = self.trunc.min(rhs.trunc);
        let (mut a, b) = self.unified(rhs);
        a.trunc = t;
        let cut = t * a.denom;
        a.terms.retain(|k, _| exp_int(*k) < cut);
        for (k, c) in &b.terms {
            if exp_int(*k) >= cut {
                continue;
            }
            match a.terms.entry(*k) {
                std::collections::btree_map::Entry::Vacant(v) => {
                    v.insert(c.clone());
                }
                std::collections::btree_map::Entry::Occupied(mut o) => {
                    let s = o.get().add_ref(c);
                    if s.is_zero() {
                        o.remove();
                    } else {
                        *o.get_mut() = s;
                    }
                }
            }
        }
        a
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    /// Add `q^shift * rhs` into `self` in place (truncation of `self` kept).
    /// This is the hot path of lattice summation: no fresh allocation per call
    /// beyond the inserted entries.
    pub fn add_shifted_assign(&mut self, rhs: &Self, shift: Exponent) {
        let d = lcm_i64(lcm_i64(self.denom, rhs.denom), *shift.denom());
        self.rescale_denom(d);
        let f = d / rhs.denom;
        let off = (shift * d).to_integer();
        // keys satisfy k < trunc*d; ceil handles bounds off the key lattice
        let cut = (self.trunc * d).ceil().to_integer();
        for (k, c) in &rhs.terms {
            let kk = k * f + off;
            if kk >= cut {
                continue;
            }
            match self.terms.entry(kk) {
                std::collections::btree_map::Entry::Vacant(v) => {
                    v.insert(c.clone());
                }
                std::collections::btree_map::Entry::Occupied(mut o) => {
                    let s = o.get().add_ref(c);
                    if s.is_zero() {
                        o.remove();
                    } else {
                        *o.get_mut() = s;
                    }
                }
            }
        }
    }

    /// Product with the pessimistic truncation rule
    /// `N' = min(N_a + v_b, N_b + v_a)`.
    pub fn mul(&self, rhs: &Self) -> Self {
        let va = self.valuation_or_trunc();
        let vb = rhs.valuation_or_trunc();
        let t = (self.trunc + vb).min(rhs.trunc + va);
        let d = lcm_i64(self.denom, rhs.denom);
        let fa = d / self.denom;
        let fb = d / rhs.denom;
        let cut = t * d;
        let mut out = FracSeries {
            denom: d,
            trunc: t,
            terms: BTreeMap::new(),
        };
        // Iterate the sparser operand outside.
        let (small, fs, big, fbg) = if self.terms.len() <= rhs.terms.len() {
            (&self.terms, fa, &rhs.terms, fb)
        } else {
            (&rhs.terms, fb, &self.terms, fa)
        };
        for (ka, ca) in small {
            let base = ka * fs;
            for (kb, cb) in big {
                let k = base + kb * fbg;
                if exp_int(k) >= cut {
                    break;
                }
                let p = ca.mul_ref(cb);
                if p.is_zero() {
                    continue;
                }
                match out.terms.entry(k) {
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(p);
                    }
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        let s = o.get().add_ref(&p);
                        if s.is_zero() {
                            o.remove();
                        } else {
                            *o.get_mut() = s;
                        }
                    }
                }
            }
        }
        out
    }

    /// Checked product: rejects results whose truncation carries no terms at
    /// all (`N' <=` valuation of the product) while both inputs are nonzero.
    pub fn mul_checked(&self, rhs: &Self) -> Result<Self, SeriesError> {
        let out = self.mul(rhs);
        if !self.is_zero_to_trunc() && !rhs.is_zero_to_trunc() {
            let v = self.valuation_or_trunc() + rhs.valuation_or_trunc();
            if out.trunc <= v {
                return Err(SeriesError::TruncationUnderflow(out.trunc));
            }
        }
        Ok(out)
    }

    /// Multiplicative inverse. Requires a unit leading coefficient; the
    /// result has valuation `-v` and truncation `N - 2v`.
    pub fn invert(&self) -> Result<Self, SeriesError> {
        let (kv, lead) = match self.terms.iter().next() {
            None => return Err(SeriesError::ZeroSeries),
            Some((k, c)) => (*k, c.clone()),
        };
        let lead_inv = lead.inv().ok_or(SeriesError::NonUnitLeading)?;
        let d = self.denom;
        let v = exp(kv, d);
        let rel_prec = self.trunc - v; // relative precision of the unit part
        let nkeys = (rel_prec * d).ceil().to_integer();
        if nkeys <= 0 {
            return Err(SeriesError::TruncationUnderflow(self.trunc - v - v));
        }
        // u = self shifted to valuation 0; r = u^{-1} by long division.
        let u: Vec<(i64, &R)> = self.terms.iter().map(|(k, c)| (k - kv, c)).collect();
        let mut r: BTreeMap<i64, R> = BTreeMap::new();
        r.insert(0, lead_inv.clone());
        for j in 1..nkeys {
            let mut s = R::zero();
            for (m, um) in &u[1..] {
                if *m > j {
                    break;
                }
                if let Some(rj) = r.get(&(j - m)) {
                    s = s.add_ref(&um.mul_ref(rj));
                }
            }
            if !s.is_zero() {
                r.insert(j, s.mul_ref(&lead_inv).neg_ref());
            }
        }
        let mut out = FracSeries {
            denom: d,
            trunc: rel_prec - v,
            terms: r.into_iter().map(|(k, c)| (k - kv, c)).collect(),
        };
        out.normalize_denom();
        Ok(out)
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, n: i64) -> Result<Self, SeriesError> {
        if n == 0 {
            return Ok(Self::one(self.trunc - self.valuation_or_trunc()));
        }
        let (mut base, mut e) = if n < 0 {
            (self.invert()?, (-n) as u64)
        } else {
            (self.clone(), n as u64)
        };
        let mut acc: Option<Self> = None;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc.unwrap())
    }

    /// Exponent substitution `q -> q^m` for positive rational `m`.
    pub fn substitute_power(&self, m: Exponent) -> Result<Self, SeriesError> {
        if m <= exp_int(0) {
            return Err(SeriesError::InvalidParameter(
                "substitute_power needs m > 0".into(),
            ));
        }
        let (p, s) = (*m.numer(), *m.denom());
        let d = self
            .denom
            .checked_mul(s)
            .ok_or(SeriesError::ExponentOverflow)?;
        let mut out = FracSeries {
            denom: d,
            trunc: self.trunc * m,
            terms: BTreeMap::new(),
        };
        for (k, c) in &self.terms {
            let kk = k.checked_mul(p).ok_or(SeriesError::ExponentOverflow)?;
            out.terms.insert(kk, c.clone());
        }
        out.normalize_denom();
        Ok(out)
    }

    /// Multiply by `q^r`: every exponent shifts by `r`.
    pub fn shift(&self, r: Exponent) -> Self {
        let d = lcm_i64(self.denom, *r.denom());
        let f = d / self.denom;
        let off = (r * d).to_integer();
        FracSeries {
            denom: d,
            trunc: self.trunc + r,
            terms: self.terms.iter().map(|(k, c)| (k * f + off, c.clone())).collect(),
        }
    }

    /// Residue-class dissection: keep exponents `e ≡ r (mod m)` and map
    /// `e -> (e - r)/m`. Input must live on the integer lattice.
    pub fn dissect(&self, m: i64, r: i64) -> Result<Self, SeriesError> {
        assert!(m >= 1 && r >= 0 && r < m);
        let mut a = self.clone();
        a.normalize_denom();
        if a.denom != 1 {
            return Err(SeriesError::FractionalExponents(a.denom));
        }
        let t = (a.trunc - exp_int(r)) / m;
        let mut out = FracSeries {
            denom: 1,
            trunc: t,
            terms: BTreeMap::new(),
        };
        for (k, c) in &a.terms {
            if (k - r).rem_euclid(m) == 0 {
                out.terms.insert((k - r).div_euclid(m), c.clone());
            }
        }
        Ok(out)
    }

    /// The `tau -> tau + 1` action: the coefficient of `q^e` picks up
    /// `e^(2 pi i e)`. Fails when some required root of unity is not
    /// representable in the ring.
    pub fn tau_shift(&self) -> Result<Self, SeriesError> {
        let d = self.denom;
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            let phase = R::root_of_unity(*k, d)
                .ok_or(SeriesError::PhaseNotRepresentable(exp(*k, d), R::RING))?;
            let p = c.mul_ref(&phase);
            if !p.is_zero() {
                terms.insert(*k, p);
            }
        }
        Ok(FracSeries {
            denom: d,
            trunc: self.trunc,
            terms,
        })
    }

    /// Coefficientwise comparison for all exponents `< depth`.
    pub fn compare(&self, rhs: &Self, depth: Exponent) -> Result<CompareOutcome, SeriesError> {
        for s in [self, rhs] {
            if depth > s.trunc {
                return Err(SeriesError::DepthExceedsTruncation {
                    depth,
                    trunc: s.trunc,
                });
            }
        }
        let (a, b) = self.unified(rhs);
        let cut = depth * a.denom;
        let mut keys: Vec<i64> = a
            .terms
            .keys()
            .chain(b.terms.keys())
            .copied()
            .filter(|k| exp_int(*k) < cut)
            .collect();
        keys.sort_unstable();
        keys.dedup();
        for k in keys {
            let ca = a.terms.get(&k).cloned().unwrap_or_else(R::zero);
            let cb = b.terms.get(&k).cloned().unwrap_or_else(R::zero);
            if ca != cb {
                return Ok(CompareOutcome::Mismatch {
                    exponent: exp(k, a.denom),
                    lhs: ca.to_string(),
                    rhs: cb.to_string(),
                });
            }
        }
        Ok(CompareOutcome::Equal)
    }

    /// Map into another ring through the canonical rational embedding.
    pub fn embed<S: Coef>(&self) -> FracSeries<S>
    where
        R: IntoRational,
    {
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            let v = S::from_rational(&c.to_rational());
            if !v.is_zero() {
                terms.insert(*k, v);
            }
        }
        FracSeries {
            denom: self.denom,
            trunc: self.trunc,
            terms,
        }
    }

    /// JSON form `{denom, trunc: [num, den], terms: [[k, coeff], ...]}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "denom": self.denom,
            "trunc": [*self.trunc.numer(), *self.trunc.denom()],
            "terms": self.terms.iter()
                .map(|(k, c)| serde_json::json!([k, c.to_string()]))
                .collect::<Vec<_>>(),
        })
    }
}

/// Rings that embed back into the rationals (used for cross-ring embedding
/// of exact rational series).
pub trait IntoRational: Coef {
    fn to_rational(&self) -> Rat;
}

impl IntoRational for Rat {
    fn to_rational(&self) -> Rat {
        self.clone()
    }
}

impl FracSeries<Rat> {
    /// Parse the JSON form produced by [`FracSeries::to_json`] (rational ring).
    pub fn from_json(v: &serde_json::Value) -> Option<Self> {
        let denom = v.get("denom")?.as_i64()?;
        let t = v.get("trunc")?.as_array()?;
        let trunc = exp(t.first()?.as_i64()?, t.get(1)?.as_i64()?);
        let mut terms = BTreeMap::new();
        for item in v.get("terms")?.as_array()? {
            let pair = item.as_array()?;
            let k = pair.first()?.as_i64()?;
            let c: Rat = pair.get(1)?.as_str()?.parse().ok()?;
            if !num::Zero::is_zero(&c) {
                terms.insert(k, c);
            }
        }
        Some(FracSeries { denom, trunc, terms })
    }
}

fn fmt_exp(e: Exponent) -> String {
    if e.is_integer() {
        format!("{}", e.numer())
    } else {
        format!("{}/{}", e.numer(), e.denom())
    }
}

impl<R: Coef> fmt::Display for FracSeries<R> {
    /// Canonical text form `q^(v)*{c0 + c1*q^(e1) + ...} (+O(q^(N)))` with
    /// exponents inside the braces relative to the factored-out valuation.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0 (+O(q^({})))", fmt_exp(self.trunc));
        }
        let v = self.vanishing_order().unwrap();
        if v != exp_int(0) {
            write!(f, "q^({})*", fmt_exp(v))?;
        }
        write!(f, "{{")?;
        for (i, (e, c)) in self.iter_terms().enumerate() {
            let cs = c.to_string();
            let (neg, body) = match cs.strip_prefix('-') {
                // A leading '-' is only peeled off when it negates the whole
                // coefficient (not e.g. "-1+2*i" in composite rings).
                Some(rest) if !rest.contains('+') && !rest.contains('-') => (true, rest.to_string()),
                _ => (false, cs),
            };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let rel = e - v;
            if rel == exp_int(0) {
                write!(f, "{body}")?;
            } else if body == "1" {
                write!(f, "q^({})", fmt_exp(rel))?;
            } else {
                write!(f, "{body}*q^({})", fmt_exp(rel))?;
            }
        }
        write!(f, "}} (+O(q^({})))", fmt_exp(self.trunc))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::big_rat;

    fn rone() -> Rat {
        big_rat(1, 1)
    }

    fn rzero() -> Rat {
        big_rat(0, 1)
    }

    fn geom(trunc: i64) -> FracSeries<Rat> {
        // 1 + q + q^2 + ...
        FracSeries::from_terms(
            (0..trunc).map(|k| (exp_int(k), rone())),
            exp_int(trunc),
        )
    }

    #[test]
    fn one_minus_q_times_geometric_telescopes() {
        let a = FracSeries::from_terms(
            [(exp_int(0), rone()), (exp_int(1), -rone())],
            exp_int(6),
        );
        let p = a.mul(&geom(6));
        assert_eq!(p.leading_term(), Some((exp_int(0), rone())));
        for k in 1..6 {
            assert_eq!(p.coeff(exp_int(k)), Some(rzero()));
        }
    }

    #[test]
    fn half_powers_multiply() {
        let h = FracSeries::monomial(exp(1, 2), rone(), exp_int(5));
        let p = h.mul(&h);
        assert_eq!(p.vanishing_order(), Some(exp_int(1)));
        assert_eq!(p.denom(), 2);
    }

    #[test]
    fn invert_one_minus_q() {
        let a = FracSeries::from_terms(
            [(exp_int(0), rone()), (exp_int(1), -rone())],
            exp_int(10),
        );
        let inv = a.invert().unwrap();
        assert_eq!(inv, geom(10));
        // two-sided inverse to truncation
        let prod = a.mul(&inv);
        assert!(prod.compare(&FracSeries::one(exp_int(10)), exp_int(10)).unwrap().is_equal());
    }

    #[test]
    fn invert_shifts_valuation() {
        // q^{1/2} * (1 - q): inverse has valuation -1/2
        let u = FracSeries::from_terms(
            [(exp(1, 2), rone()), (exp(3, 2), -rone())],
            exp_int(8),
        );
        let inv = u.invert().unwrap();
        assert_eq!(inv.vanishing_order(), Some(exp(-1, 2)));
        let prod = u.mul(&inv);
        assert!(prod
            .compare(&FracSeries::one(prod.trunc()), prod.trunc())
            .unwrap()
            .is_equal());
    }

    #[test]
    fn invert_rejects_zero() {
        let z = FracSeries::<Rat>::zero(exp_int(4));
        assert_eq!(z.invert(), Err(SeriesError::ZeroSeries));
    }

    #[test]
    fn substitute_and_shift() {
        let a = FracSeries::from_terms(
            [(exp_int(0), rone()), (exp_int(1), rone())],
            exp_int(3),
        );
        let sq = a.substitute_power(exp_int(2)).unwrap();
        assert_eq!(sq.coeff(exp_int(2)), Some(rone()));
        assert_eq!(sq.coeff(exp_int(1)), Some(rzero()));
        assert_eq!(sq.trunc(), exp_int(6));

        let sh = a.shift(exp(1, 40));
        assert_eq!(sh.vanishing_order(), Some(exp(1, 40)));
        assert_eq!(sh.coeff(exp(41, 40)), Some(rone()));
    }

    #[test]
    fn dissect_basic_and_reassemble() {
        let a = FracSeries::from_terms(
            [
                (exp_int(0), rone()),
                (exp_int(1), rone()),
                (exp_int(2), rone()),
            ],
            exp_int(3),
        );
        let even = a.dissect(2, 0).unwrap();
        assert_eq!(even.coeff(exp_int(0)), Some(rone()));
        assert_eq!(even.coeff(exp_int(1)), Some(rone()));
        // reassembly: sum_r q^r * dissect(a, m, r)(q^m) == a
        let mut back = FracSeries::zero(a.trunc());
        for r in 0..2 {
            let part = a.dissect(2, r).unwrap().substitute_power(exp_int(2)).unwrap();
            back = back.add(&part.shift(exp_int(r)));
        }
        assert!(back.compare(&a, back.trunc().min(a.trunc())).unwrap().is_equal());
    }

    #[test]
    fn dissect_rejects_fractional() {
        let h = FracSeries::monomial(exp(1, 2), rone(), exp_int(5));
        assert!(matches!(h.dissect(2, 0), Err(SeriesError::FractionalExponents(2))));
    }

    #[test]
    fn tau_shift_signs() {
        let a = FracSeries::from_terms(
            [(exp_int(0), rone()), (exp_int(1), rone())],
            exp_int(3),
        );
        assert_eq!(a.tau_shift().unwrap(), a);
        let h = FracSeries::monomial(exp(1, 2), rone(), exp_int(2));
        let t = h.tau_shift().unwrap();
        assert_eq!(t.coeff(exp(1, 2)), Some(-rone()));
        // not representable over the rationals for D = 80
        let f = FracSeries::monomial(exp(1, 80), rone(), exp_int(1));
        assert!(matches!(
            f.tau_shift(),
            Err(SeriesError::PhaseNotRepresentable(_, "rational"))
        ));
    }

    #[test]
    fn compare_reports_first_mismatch() {
        let a = FracSeries::from_terms(
            [(exp_int(0), rone()), (exp_int(1), rone())],
            exp_int(10),
        );
        let b = FracSeries::from_terms(
            [(exp_int(0), rone()), (exp_int(1), big_rat(2, 1))],
            exp_int(10),
        );
        match a.compare(&b, exp_int(10)).unwrap() {
            CompareOutcome::Mismatch { exponent, lhs, rhs } => {
                assert_eq!(exponent, exp_int(1));
                assert_eq!((lhs.as_str(), rhs.as_str()), ("1", "2"));
            }
            _ => panic!("expected mismatch"),
        }
        assert!(matches!(
            a.compare(&b, exp_int(11)),
            Err(SeriesError::DepthExceedsTruncation { .. })
        ));
    }

    #[test]
    fn leading_term_examples() {
        let m = FracSeries::monomial(exp_int(3), rone(), exp_int(9));
        assert_eq!(m.leading_term(), Some((exp_int(3), rone())));
        assert_eq!(FracSeries::<Rat>::zero(exp_int(4)).leading_term(), None);
    }

    #[test]
    fn display_canonical_form() {
        let s = FracSeries::from_terms(
            [
                (exp(1, 40), rone()),
                (exp(81, 40), -big_rat(6, 1)),
            ],
            exp_int(3),
        );
        assert_eq!(s.to_string(), "q^(1/40)*{1 - 6*q^(2)} (+O(q^(3)))");
        assert_eq!(
            FracSeries::<Rat>::zero(exp_int(2)).to_string(),
            "0 (+O(q^(2)))"
        );
    }

    #[test]
    fn json_round_trip() {
        let s = FracSeries::from_terms(
            [(exp(1, 2), big_rat(3, 4)), (exp_int(2), -rone())],
            exp(9, 2),
        );
        let j = s.to_json();
        let back = FracSeries::from_json(&j).unwrap();
        assert_eq!(back, s);
    }
}
