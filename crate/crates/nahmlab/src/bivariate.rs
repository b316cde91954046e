//! Bivariate Laurent layer: series in `z` over a window of degrees, with a
//! `q`-series coefficient per degree. This is the carrier for constant-term
//! extraction, which collapses multiple lattice sums into single ones.

use crate::coeff::Coef;
use crate::error::SeriesError;
use crate::exponent::{lcm_i64, Exponent};
use crate::series::FracSeries;

#[derive(Clone, Debug, PartialEq)]
pub struct BivariateSeries<R: Coef> {
    zmin: i64,
    zmax: i64,
    /// `comps[i]` is the coefficient of `z^(zmin + i)`.
    comps: Vec<FracSeries<R>>,
}

impl<R: Coef> BivariateSeries<R> {
    pub fn zero(zmin: i64, zmax: i64, trunc: Exponent) -> Self {
        assert!(zmin <= zmax);
        BivariateSeries {
            zmin,
            zmax,
            comps: (zmin..=zmax).map(|_| FracSeries::zero(trunc)).collect(),
        }
    }

    pub fn one(zmin: i64, zmax: i64, trunc: Exponent) -> Self {
        let mut s = Self::zero(zmin, zmax, trunc);
        s.add_term(0, Exponent::from_integer(0), R::one());
        s
    }

    pub fn window(&self) -> (i64, i64) {
        (self.zmin, self.zmax)
    }

    pub fn trunc(&self) -> Exponent {
        self.comps[0].trunc()
    }

    pub fn component(&self, zdeg: i64) -> Option<&FracSeries<R>> {
        if zdeg < self.zmin || zdeg > self.zmax {
            return None;
        }
        Some(&self.comps[(zdeg - self.zmin) as usize])
    }

    /// Add `c * q^e * z^d`; silently drops terms outside the window, which is
    /// exactly the clipping the window-stability check certifies.
    pub fn add_term(&mut self, zdeg: i64, e: Exponent, c: R) {
        if zdeg < self.zmin || zdeg > self.zmax {
            return;
        }
        self.comps[(zdeg - self.zmin) as usize].add_term(e, c);
    }

    /// Multiply by the sparse factor `1 + c * q^e * z^d` in place.
    pub fn mul_factor(&mut self, zdeg: i64, e: Exponent, c: &R) {
        let old = self.comps.clone();
        for (i, comp) in old.iter().enumerate() {
            if comp.is_zero_to_trunc() {
                continue;
            }
            let target = self.zmin + i as i64 + zdeg;
            if target < self.zmin || target > self.zmax {
                continue;
            }
            let scaled = comp.scale(c);
            self.comps[(target - self.zmin) as usize].add_shifted_assign(&scaled, e);
        }
    }

    /// Full product with window clipping; the q-truncation follows the
    /// pessimistic scalar rule applied per z-degree pair.
    pub fn mul(&self, rhs: &Self) -> Self {
        let zmin = self.zmin;
        let zmax = self.zmax;
        let t = self.trunc().min(rhs.trunc());
        let mut out = Self::zero(zmin, zmax, t);
        for (i, a) in self.comps.iter().enumerate() {
            if a.is_zero_to_trunc() {
                continue;
            }
            let da = zmin + i as i64;
            for (j, b) in rhs.comps.iter().enumerate() {
                if b.is_zero_to_trunc() {
                    continue;
                }
                let d = da + (rhs.zmin + j as i64);
                if d < zmin || d > zmax {
                    continue;
                }
                let prod = a.mul(b).truncate(t);
                let slot = &mut out.comps[(d - zmin) as usize];
                *slot = slot.add(&prod);
            }
        }
        out
    }

    /// Multiply every z-degree by the same q-series factor.
    pub fn mul_scalar_series(&self, f: &FracSeries<R>) -> Self {
        BivariateSeries {
            zmin: self.zmin,
            zmax: self.zmax,
            comps: self.comps.iter().map(|c| c.mul(f)).collect(),
        }
    }

    pub fn scale(&self, c: &R) -> Self {
        BivariateSeries {
            zmin: self.zmin,
            zmax: self.zmax,
            comps: self.comps.iter().map(|s| s.scale(c)).collect(),
        }
    }

    /// Extract the `z^0` component.
    pub fn constant_term(&self) -> Result<FracSeries<R>, SeriesError> {
        if self.zmin > 0 || self.zmax < 0 {
            return Err(SeriesError::WindowExcludesConstant(self.zmin, self.zmax));
        }
        Ok(self.comps[(-self.zmin) as usize].clone())
    }

    /// Largest exponent-lattice denominator across components.
    pub fn denom(&self) -> i64 {
        self.comps.iter().fold(1, |d, s| lcm_i64(d, s.denom()))
    }
}

/// Default z-window half-width for constant-term work at q-truncation `n`:
/// theta-type factors place `z^k` at q-order on the scale of `k^2/modulus`,
/// so degrees beyond `sqrt(2 n modulus)` cannot reach `z^0` below truncation.
/// The `+8` pad is certified by the window-stability check.
pub fn ct_window(n: i64, max_theta_modulus: i64) -> i64 {
    let m = ((2 * n * max_theta_modulus) as f64).sqrt().ceil() as i64;
    m + 8
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{big_rat, Rat};
    use crate::exponent::{exp, exp_int};

    #[test]
    fn constant_term_picks_z0() {
        // z + 2 + z^{-1} q  ->  CT = 2
        let mut b = BivariateSeries::<Rat>::zero(-2, 2, exp_int(5));
        b.add_term(1, exp_int(0), big_rat(1, 1));
        b.add_term(0, exp_int(0), big_rat(2, 1));
        b.add_term(-1, exp_int(1), big_rat(1, 1));
        let ct = b.constant_term().unwrap();
        assert_eq!(ct.coeff(exp_int(0)), Some(big_rat(2, 1)));
        assert_eq!(ct.num_terms(), 1);
    }

    #[test]
    fn window_exclusion_errors() {
        let b = BivariateSeries::<Rat>::zero(1, 3, exp_int(2));
        assert!(matches!(
            b.constant_term(),
            Err(SeriesError::WindowExcludesConstant(1, 3))
        ));
    }

    #[test]
    fn factor_multiplication_matches_full_product() {
        // (1 - q^{1/2} z) * (1 + q z^{-1}) both ways
        let t = exp_int(4);
        let mut a = BivariateSeries::<Rat>::one(-3, 3, t);
        a.mul_factor(1, exp(1, 2), &big_rat(-1, 1));
        let mut b = BivariateSeries::<Rat>::one(-3, 3, t);
        b.mul_factor(-1, exp_int(1), &big_rat(1, 1));
        let p1 = a.mul(&b);

        let mut p2 = BivariateSeries::<Rat>::one(-3, 3, t);
        p2.mul_factor(1, exp(1, 2), &big_rat(-1, 1));
        p2.mul_factor(-1, exp_int(1), &big_rat(1, 1));
        assert_eq!(p1, p2);
        // cross term -q^{3/2} z^0 shows up in the constant term
        let ct = p2.constant_term().unwrap();
        assert_eq!(ct.coeff(exp(3, 2)), Some(big_rat(-1, 1)));
    }
}
