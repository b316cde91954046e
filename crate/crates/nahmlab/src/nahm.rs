//! Lattice-sum evaluation of Nahm sums
//! `f_{A,B,C}(q) = sum_{n >= 0} q^(n^T A n / 2 + B.n + C) / prod (q;q)_{n_i}`
//! for positive-definite rational `A`, plus the shifted tadpole characters
//! and the dual-triple map.
//!
//! Enumeration is exact: per-coordinate ranges come from minimizing the
//! remaining quadratic form over real completions (a Schur-complement bound),
//! so no lattice point below the truncation can be missed. The summation is
//! organized as a recursion over coordinates with memoized tail sums — for
//! banded matrices such as the tadpole family the tails collapse to a handful
//! of distinct series and almost all work is shifted addition.

use crate::coeff::{big_rat, Rat};
use crate::error::SeriesError;
use crate::exponent::{exp, exp_int, quadratic_int_range, Exponent};
use num::Signed;
use crate::series::FracSeries;
use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;
use std::str::FromStr;

/// Matrix part of a CLI-facing triple: `tadpole:R`, `tadpole-inv:R` or
/// semicolon-separated rows like `2,-1;-1,2`.
#[derive(Clone, Debug, PartialEq)]
pub enum MatrixSpec {
    Tadpole(usize),
    TadpoleInv(usize),
    Explicit(Vec<Vec<Exponent>>),
}

impl FromStr for MatrixSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if let Some(r) = s.strip_prefix("tadpole-inv:") {
            let r: usize = r.trim().parse().map_err(|_| format!("bad rank in '{s}'"))?;
            return Ok(MatrixSpec::TadpoleInv(r));
        }
        if let Some(r) = s.strip_prefix("tadpole:") {
            let r: usize = r.trim().parse().map_err(|_| format!("bad rank in '{s}'"))?;
            return Ok(MatrixSpec::Tadpole(r));
        }
        let mut rows = Vec::new();
        for row in s.split(';') {
            let mut out = Vec::new();
            for cell in row.split(',') {
                out.push(parse_rational(cell.trim()).ok_or_else(|| format!("bad entry '{cell}'"))?);
            }
            rows.push(out);
        }
        Ok(MatrixSpec::Explicit(rows))
    }
}

impl MatrixSpec {
    pub fn to_matrix(&self) -> Result<Vec<Vec<Exponent>>, SeriesError> {
        match self {
            MatrixSpec::Tadpole(r) => tadpole(*r),
            MatrixSpec::TadpoleInv(r) => tadpole_inverse(*r),
            MatrixSpec::Explicit(m) => Ok(m.clone()),
        }
    }
}

pub fn parse_rational(s: &str) -> Option<Exponent> {
    match s.split_once('/') {
        Some((n, d)) => {
            let d: i64 = d.trim().parse().ok()?;
            if d == 0 {
                return None;
            }
            Some(exp(n.trim().parse().ok()?, d))
        }
        None => Some(exp_int(s.trim().parse().ok()?)),
    }
}

/// Tadpole Cartan matrix: diagonal `(2, .., 2, 1)`, off-diagonal `-1`.
pub fn tadpole(r: usize) -> Result<Vec<Vec<Exponent>>, SeriesError> {
    if r < 1 {
        return Err(SeriesError::InvalidParameter("tadpole rank must be >= 1".into()));
    }
    let mut m = vec![vec![exp_int(0); r]; r];
    for i in 0..r {
        m[i][i] = if i == r - 1 { exp_int(1) } else { exp_int(2) };
        if i + 1 < r {
            m[i][i + 1] = exp_int(-1);
            m[i + 1][i] = exp_int(-1);
        }
    }
    Ok(m)
}

/// Inverse of the tadpole matrix: `(T_r^-1)_{ij} = min(i, j)` (1-indexed).
pub fn tadpole_inverse(r: usize) -> Result<Vec<Vec<Exponent>>, SeriesError> {
    if r < 1 {
        return Err(SeriesError::InvalidParameter("tadpole rank must be >= 1".into()));
    }
    Ok((1..=r)
        .map(|i| (1..=r).map(|j| exp_int(i.min(j) as i64)).collect())
        .collect())
}

/// A Nahm triple `(A, B, C)` with `A` symmetric positive definite.
#[derive(Clone, Debug, PartialEq)]
pub struct NahmTriple {
    a: Vec<Vec<Exponent>>,
    b: Vec<Exponent>,
    c: Exponent,
}

impl NahmTriple {
    pub fn new(a: Vec<Vec<Exponent>>, b: Vec<Exponent>, c: Exponent) -> Result<Self, SeriesError> {
        let r = a.len();
        if r == 0 || a.iter().any(|row| row.len() != r) || b.len() != r {
            return Err(SeriesError::InvalidParameter("shape mismatch in Nahm triple".into()));
        }
        for i in 0..r {
            for j in 0..i {
                if a[i][j] != a[j][i] {
                    return Err(SeriesError::InvalidParameter("matrix is not symmetric".into()));
                }
            }
        }
        // positive definiteness by exact leading principal minors
        for k in 1..=r {
            let minor: Vec<Vec<Exponent>> =
                a[..k].iter().map(|row| row[..k].to_vec()).collect();
            if det(&minor) <= exp_int(0) {
                return Err(SeriesError::NotPositiveDefinite(k));
            }
        }
        Ok(NahmTriple { a, b, c })
    }

    pub fn from_spec(
        matrix: &MatrixSpec,
        b: &[Exponent],
        c: Exponent,
    ) -> Result<Self, SeriesError> {
        NahmTriple::new(matrix.to_matrix()?, b.to_vec(), c)
    }

    pub fn rank(&self) -> usize {
        self.a.len()
    }

    pub fn matrix(&self) -> &[Vec<Exponent>] {
        &self.a
    }

    pub fn vector(&self) -> &[Exponent] {
        &self.b
    }

    pub fn scalar(&self) -> Exponent {
        self.c
    }

    /// Dual triple `(A^-1, A^-1 B, B^T A^-1 B / 2 - r/24 - C)`.
    pub fn dual(&self) -> Result<NahmTriple, SeriesError> {
        let r = self.rank();
        let ainv = invert_matrix(&self.a)
            .ok_or_else(|| SeriesError::InvalidParameter("matrix is singular".into()))?;
        let bstar = mat_vec(&ainv, &self.b);
        let mut quad = exp_int(0);
        for i in 0..r {
            quad = quad + self.b[i] * bstar[i];
        }
        let cstar = quad / 2 - exp(r as i64, 24) - self.c;
        NahmTriple::new(ainv, bstar, cstar)
    }
}

fn det(m: &[Vec<Exponent>]) -> Exponent {
    // exact Gaussian elimination; matrices here are tiny
    let n = m.len();
    let mut a: Vec<Vec<Exponent>> = m.to_vec();
    let mut d = exp_int(1);
    for col in 0..n {
        let pivot = (col..n).find(|&row| a[row][col] != exp_int(0));
        let pivot = match pivot {
            None => return exp_int(0),
            Some(p) => p,
        };
        if pivot != col {
            a.swap(pivot, col);
            d = -d;
        }
        let p = a[col][col];
        d = d * p;
        for row in col + 1..n {
            let f = a[row][col] / p;
            if f == exp_int(0) {
                continue;
            }
            for k in col..n {
                let s = a[col][k];
                a[row][k] = a[row][k] - f * s;
            }
        }
    }
    d
}

fn solve_linear(m: &[Vec<Exponent>], rhs: &[Exponent]) -> Option<Vec<Exponent>> {
    let n = m.len();
    let mut a: Vec<Vec<Exponent>> = m.to_vec();
    let mut b = rhs.to_vec();
    for col in 0..n {
        let pivot = (col..n).find(|&row| a[row][col] != exp_int(0))?;
        a.swap(pivot, col);
        b.swap(pivot, col);
        let p = a[col][col];
        for row in 0..n {
            if row == col {
                continue;
            }
            let f = a[row][col] / p;
            if f == exp_int(0) {
                continue;
            }
            for k in col..n {
                let s = a[col][k];
                a[row][k] = a[row][k] - f * s;
            }
            let s = b[col];
            b[row] = b[row] - f * s;
        }
    }
    for i in 0..n {
        b[i] = b[i] / a[i][i];
    }
    Some(b)
}

fn invert_matrix(m: &[Vec<Exponent>]) -> Option<Vec<Vec<Exponent>>> {
    let n = m.len();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![exp_int(0); n];
        e[j] = exp_int(1);
        cols.push(solve_linear(m, &e)?);
    }
    // columns back to rows
    Some((0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect())
}

fn mat_vec(m: &[Vec<Exponent>], v: &[Exponent]) -> Vec<Exponent> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(exp_int(0), |s, (a, x)| s + *a * *x))
        .collect()
}

/// Evaluation context for one lattice summation. `trunc` is the working
/// truncation of every intermediate series; callers pad it above the target
/// depth so that products against negative-valuation tails stay exact, and
/// verify the final honest truncation afterwards.
struct SumCtx<'a> {
    a: &'a [Vec<Exponent>],
    r: usize,
    trunc: Exponent,
    enum_bound: Exponent,
    /// weight lattice points by `(-1)^(last coordinate)`
    signed_last: bool,
    invp: RefCell<Vec<Rc<FracSeries<Rat>>>>,
    tail_memo: RefCell<HashMap<(usize, Vec<Exponent>), Rc<FracSeries<Rat>>>>,
    prod_memo: RefCell<HashMap<(usize, i64, Vec<Exponent>), Rc<FracSeries<Rat>>>>,
}

impl<'a> SumCtx<'a> {
    fn new(a: &'a [Vec<Exponent>], trunc: Exponent, enum_bound: Exponent, signed_last: bool) -> Self {
        SumCtx {
            a,
            r: a.len(),
            trunc,
            enum_bound: enum_bound.max(trunc),
            signed_last,
            invp: RefCell::new(vec![Rc::new(FracSeries::one(trunc))]),
            tail_memo: RefCell::new(HashMap::new()),
            prod_memo: RefCell::new(HashMap::new()),
        }
    }

    /// `1/(q;q)_x` to the working truncation.
    fn inv_poch(&self, x: usize) -> Rc<FracSeries<Rat>> {
        let mut v = self.invp.borrow_mut();
        while v.len() <= x {
            let k = v.len() as i64;
            let mut geom = FracSeries::zero(self.trunc);
            let mut e = exp_int(0);
            while e < self.trunc {
                geom.add_term(e, big_rat(1, 1));
                e = e + exp_int(k);
            }
            let next = v.last().unwrap().mul(&geom);
            v.push(Rc::new(next));
        }
        v[x].clone()
    }

    /// Minimal value of the suffix form `E(x, y) = a_ll x^2/2 + w_0 x + ...`
    /// over real `y`, as an exact rational.
    fn min_completion(&self, level: usize, w: &[Exponent], x: i64) -> Exponent {
        let a00 = self.a[level][level];
        let head = a00 * x * x / 2 + w[0] * x;
        let rest = self.r - level - 1;
        if rest == 0 {
            return head;
        }
        let sub: Vec<Vec<Exponent>> = (level + 1..self.r)
            .map(|i| (level + 1..self.r).map(|j| self.a[i][j]).collect())
            .collect();
        let v: Vec<Exponent> = (0..rest)
            .map(|j| w[j + 1] + self.a[level + 1 + j][level] * x)
            .collect();
        // minimize y^T sub y / 2 + v.y  =>  value = -v^T sub^-1 v / 2
        let y = solve_linear(&sub, &v).expect("suffix block of a positive-definite matrix");
        let mut dot = exp_int(0);
        for j in 0..rest {
            dot = dot + v[j] * y[j];
        }
        head - dot / 2
    }

    /// Integer range of `x >= 0` whose minimal completion stays below the
    /// enumeration bound. The bound function is an exact quadratic in `x`;
    /// recover it by interpolation at three points.
    fn coord_range(&self, level: usize, w: &[Exponent]) -> Option<(i64, i64)> {
        let h0 = self.min_completion(level, w, 0);
        let h1 = self.min_completion(level, w, 1);
        let h2 = self.min_completion(level, w, 2);
        let alpha = (h0 - h1 * 2 + h2) / 2;
        let beta = h1 - h0 - alpha;
        let gamma = h0 - self.enum_bound;
        debug_assert!(alpha > exp_int(0));
        let (lo, hi) = quadratic_int_range(alpha, beta, gamma)?;
        if hi < 0 {
            return None;
        }
        Some((lo.max(0), hi))
    }

    /// Tail sum over coordinates `level..r` with linear shifts `w` added to
    /// the quadratic form, relative to the prefix. The returned truncation is
    /// the honest minimum over all contributions, which shrinks below the
    /// working bound when negative-valuation tails meet finite factors.
    fn tail(&self, level: usize, w: Vec<Exponent>) -> Rc<FracSeries<Rat>> {
        if let Some(hit) = self.tail_memo.borrow().get(&(level, w.clone())) {
            return hit.clone();
        }
        let a00 = self.a[level][level];
        let mut acc = FracSeries::zero(self.trunc);
        let mut honest = self.trunc;
        if let Some((lo, hi)) = self.coord_range(level, &w) {
            for x in lo..=hi {
                let e = a00 * x * x / 2 + w[0] * x;
                if level == self.r - 1 {
                    let term = self.inv_poch(x as usize);
                    if self.signed_last && x % 2 == 1 {
                        acc.add_shifted_assign(&term.neg(), e);
                    } else {
                        acc.add_shifted_assign(&term, e);
                    }
                    continue;
                }
                let w_child: Vec<Exponent> = (0..self.r - level - 1)
                    .map(|j| w[j + 1] + self.a[level + 1 + j][level] * x)
                    .collect();
                let key = (level, x, w_child.clone());
                let prod = {
                    let hit = self.prod_memo.borrow().get(&key).cloned();
                    match hit {
                        Some(p) => p,
                        None => {
                            let child = self.tail(level + 1, w_child);
                            let p = Rc::new(self.inv_poch(x as usize).mul(&child));
                            self.prod_memo.borrow_mut().insert(key, p.clone());
                            p
                        }
                    }
                };
                honest = honest.min(prod.trunc() + e);
                acc.add_shifted_assign(&prod, e);
            }
        }
        let out = Rc::new(if honest < self.trunc {
            acc.truncate(honest)
        } else {
            acc
        });
        self.tail_memo.borrow_mut().insert((level, w), out.clone());
        out
    }
}

/// Exact Nahm sum truncated at `q^depth`.
pub fn nahm_sum(t: &NahmTriple, depth: Exponent) -> Result<FracSeries<Rat>, SeriesError> {
    nahm_sum_with_margin(t, depth, exp_int(0))
}

/// Same, enumerating lattice points up to `depth + margin` past the point of
/// need. Output below `depth` must be independent of `margin`; the
/// enumeration-completeness property test leans on this.
pub fn nahm_sum_with_margin(
    t: &NahmTriple,
    depth: Exponent,
    margin: Exponent,
) -> Result<FracSeries<Rat>, SeriesError> {
    nahm_sum_inner(t, depth, margin, false)
}

fn nahm_sum_inner(
    t: &NahmTriple,
    depth: Exponent,
    margin: Exponent,
    signed_last: bool,
) -> Result<FracSeries<Rat>, SeriesError> {
    let need = depth - t.c;
    // Negative shift vectors make tail sums dip below exponent zero by at
    // most B^T A^-1 B / 2; pad the working truncation by that and retry if
    // honest tracking still lands short.
    let mut slack = {
        let y = solve_linear(&t.a, &t.b)
            .ok_or_else(|| SeriesError::InvalidParameter("matrix is singular".into()))?;
        let quad = t.b.iter().zip(&y).fold(exp_int(0), |s, (a, b)| s + *a * *b);
        (quad / 2).max(exp_int(0)).ceil() + exp_int(1)
    };
    for _ in 0..6 {
        let work = need + slack;
        let ctx = SumCtx::new(&t.a, work, need + margin, signed_last);
        let top = ctx.tail(0, t.b.clone());
        if top.trunc() >= need {
            let out = top.truncate(need).shift(t.c);
            if out.is_zero_to_trunc() {
                return Err(SeriesError::DepthBelowMinimal(depth));
            }
            return Ok(out);
        }
        slack = slack * 2;
    }
    Err(SeriesError::TruncationUnderflow(depth))
}

/// Shifted tadpole character: `x_i = q^(s_i)` in the rank-`len(s)` sum with
/// `A` the tadpole matrix, `C = 0`.
pub fn chi0(shifts: &[Exponent], depth: Exponent) -> Result<FracSeries<Rat>, SeriesError> {
    let t = NahmTriple::new(tadpole(shifts.len())?, shifts.to_vec(), exp_int(0))?;
    nahm_sum(&t, depth)
}

/// Alternating variant: the same lattice sum with each point weighted by
/// `(-1)^(last coordinate)`. This is the direct route to the signed
/// characters, against which the `tau -> tau + 1` construction is checked.
pub fn chi0_signed(shifts: &[Exponent], depth: Exponent) -> Result<FracSeries<Rat>, SeriesError> {
    let t = NahmTriple::new(tadpole(shifts.len())?, shifts.to_vec(), exp_int(0))?;
    nahm_sum_inner(&t, depth, exp_int(0), true)
}

/// Reference enumerator for shifted tadpole characters: plain nested loops
/// over a provably-covering box with a per-point exponent filter, no
/// memoization and no elimination bounds. Slow, but structurally independent
/// of [`nahm_sum`] — the oracle the fast path is tested against. With
/// `signed_last`, each point is weighted by `(-1)^(last coordinate)`.
pub fn chi0_reference(
    shifts: &[Exponent],
    signed_last: bool,
    depth: Exponent,
) -> Result<FracSeries<Rat>, SeriesError> {
    let r = shifts.len();
    assert!(r >= 1);
    // The chain form n^T T_r n = n_1^2 + sum (n_i - n_{i+1})^2 dominates s^2
    // where s is the largest of those squares' roots; with M = max |shift|,
    // E >= s^2/2 - M r^2 s, so s is bounded by the positive root below.
    let m_bound = shifts
        .iter()
        .map(|b| {
            let f = b.abs();
            (*f.numer() + *f.denom() - 1) / *f.denom()
        })
        .max()
        .unwrap_or(0);
    let dn = (depth.abs().ceil()).to_integer().max(1);
    let mr2 = m_bound * (r as i64) * (r as i64);
    let s_max = mr2 + ((mr2 * mr2 + 2 * dn) as f64).sqrt().ceil() as i64 + 2;

    let mut invp: Vec<FracSeries<Rat>> = vec![FracSeries::one(depth)];
    let mut ensure_invp = |v: &mut Vec<FracSeries<Rat>>, x: usize| {
        while v.len() <= x {
            let k = v.len() as i64;
            let mut geom = FracSeries::zero(depth);
            let mut e = exp_int(0);
            while e < depth {
                geom.add_term(e, big_rat(1, 1));
                e = e + exp_int(k);
            }
            let next = v.last().unwrap().mul(&geom);
            v.push(next);
        }
    };

    let tad = tadpole(r)?;
    let energy = |n: &[i64]| -> Exponent {
        let mut q = exp_int(0);
        for i in 0..r {
            for j in 0..r {
                q = q + tad[i][j] * n[i] * n[j];
            }
        }
        let mut e = q / 2;
        for i in 0..r {
            e = e + shifts[i] * n[i];
        }
        e
    };

    let mut acc = FracSeries::zero(depth);
    let mut point = vec![0i64; r];
    // depth-first walk of the box
    fn walk(
        level: usize,
        r: usize,
        s_max: i64,
        point: &mut Vec<i64>,
        acc: &mut FracSeries<Rat>,
        invp: &mut Vec<FracSeries<Rat>>,
        ensure_invp: &mut impl FnMut(&mut Vec<FracSeries<Rat>>, usize),
        energy: &impl Fn(&[i64]) -> Exponent,
        partial: &FracSeries<Rat>,
        depth: Exponent,
        signed_last: bool,
    ) {
        let lo = if level == 0 {
            0
        } else {
            (point[level - 1] - s_max).max(0)
        };
        let hi = if level == 0 {
            s_max
        } else {
            point[level - 1] + s_max
        };
        for x in lo..=hi {
            point[level] = x;
            ensure_invp(invp, x as usize);
            if level + 1 == r {
                let e = energy(point);
                if e < depth {
                    let contrib = partial.mul(&invp[x as usize]);
                    let signed = signed_last && x % 2 == 1;
                    let scaled = if signed { contrib.neg() } else { contrib };
                    acc.add_shifted_assign(&scaled, e);
                }
            } else {
                let next = partial.mul(&invp[x as usize]);
                walk(
                    level + 1,
                    r,
                    s_max,
                    point,
                    acc,
                    invp,
                    ensure_invp,
                    energy,
                    &next,
                    depth,
                    signed_last,
                );
            }
        }
    }
    let one = FracSeries::one(depth);
    walk(
        0,
        r,
        s_max,
        &mut point,
        &mut acc,
        &mut invp,
        &mut ensure_invp,
        &energy,
        &one,
        depth,
        signed_last,
    );
    Ok(acc)
}

/// Leading prefactor exponents of the six distinguished characters.
pub const LAMBDA: [Exponent; 6] = [
    Exponent::new_raw(-7, 80),
    Exponent::new_raw(1, 40),
    Exponent::new_raw(9, 40),
    Exponent::new_raw(17, 80),
    Exponent::new_raw(-7, 80),
    Exponent::new_raw(17, 80),
];

/// The characters `F_1..F_6` (1-indexed): four shift specializations of the
/// rank-3 character and the two signed variants obtained from the
/// `tau -> tau + 1` action.
pub fn f_char(i: usize, depth: Exponent) -> Result<FracSeries<Rat>, SeriesError> {
    let shifts: &[Exponent] = match i {
        1 => &[Exponent::new_raw(0, 1), Exponent::new_raw(0, 1), Exponent::new_raw(0, 1)],
        2 => &[Exponent::new_raw(0, 1), Exponent::new_raw(0, 1), Exponent::new_raw(1, 2)],
        3 => &[Exponent::new_raw(1, 1), Exponent::new_raw(-1, 1), Exponent::new_raw(1, 2)],
        4 => &[Exponent::new_raw(-1, 1), Exponent::new_raw(1, 1), Exponent::new_raw(0, 1)],
        5 => return Ok(f_char(1, depth)?.tau_shift()?),
        6 => return Ok(f_char(4, depth)?.tau_shift()?),
        _ => {
            return Err(SeriesError::InvalidParameter(format!(
                "character index {i} out of range 1..=6"
            )))
        }
    };
    chi0(shifts, depth)
}

/// `q^(lambda_i) F_i`, the normalized characters living on the 1/80 lattice.
pub fn f_tilde(i: usize, depth: Exponent) -> Result<FracSeries<Rat>, SeriesError> {
    let lam = LAMBDA[i - 1];
    Ok(f_char(i, depth - lam)?.shift(lam))
}

/// Per-monomial recurrence behind the additive shift relation: for fixed
/// `(i, j, k)` the coefficient identity
/// `q^(E+j-i)/P = q^(E+j)/P + q^(E(i-1,j,k)+i-1)/P'` holds as exact series
/// (second term absent for `i = 0`).
pub fn xvar_coefficient_check(
    i: i64,
    j: i64,
    k: i64,
    depth: Exponent,
) -> Result<bool, SeriesError> {
    assert!(i >= 0 && j >= 0 && k >= 0);
    let e = |i: i64, j: i64, k: i64| -> Exponent {
        exp_int(i * i + j * j - i * j - j * k) + exp(k * k, 2)
    };
    let work = depth + exp_int(4);
    let ctx_pool = SumCtx::new(&[], work, work, false); // only for inv_poch reuse
    let p = ctx_pool
        .inv_poch(i as usize)
        .mul(&ctx_pool.inv_poch(j as usize))
        .mul(&ctx_pool.inv_poch(k as usize));
    let lhs = p.shift(e(i, j, k) + exp_int(j - i));
    let mut rhs = p.shift(e(i, j, k) + exp_int(j));
    if i >= 1 {
        let p2 = ctx_pool
            .inv_poch((i - 1) as usize)
            .mul(&ctx_pool.inv_poch(j as usize))
            .mul(&ctx_pool.inv_poch(k as usize));
        rhs = rhs.add(&p2.shift(e(i - 1, j, k) + exp_int(i - 1)));
    }
    Ok(lhs.compare(&rhs, depth)?.is_equal())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::products::partition_counts;

    #[test]
    fn tadpole_matrices() {
        let t3 = tadpole(3).unwrap();
        assert_eq!(
            t3,
            vec![
                vec![exp_int(2), exp_int(-1), exp_int(0)],
                vec![exp_int(-1), exp_int(2), exp_int(-1)],
                vec![exp_int(0), exp_int(-1), exp_int(1)],
            ]
        );
        let inv = tadpole_inverse(3).unwrap();
        assert_eq!(
            inv,
            vec![
                vec![exp_int(1), exp_int(1), exp_int(1)],
                vec![exp_int(1), exp_int(2), exp_int(2)],
                vec![exp_int(1), exp_int(2), exp_int(3)],
            ]
        );
        assert_eq!(tadpole(1).unwrap(), vec![vec![exp_int(1)]]);
        assert!(tadpole(0).is_err());
        // exact inverse for several ranks
        for r in 1..=6 {
            let t = tadpole(r).unwrap();
            let ti = tadpole_inverse(r).unwrap();
            for i in 0..r {
                for j in 0..r {
                    let mut s = exp_int(0);
                    for k in 0..r {
                        s = s + t[i][k] * ti[k][j];
                    }
                    assert_eq!(s, exp_int(if i == j { 1 } else { 0 }));
                }
            }
        }
    }

    #[test]
    fn posdef_check_rejects_indefinite() {
        let m = vec![vec![exp_int(1), exp_int(2)], vec![exp_int(2), exp_int(1)]];
        assert!(matches!(
            NahmTriple::new(m, vec![exp_int(0); 2], exp_int(0)),
            Err(SeriesError::NotPositiveDefinite(2))
        ));
    }

    #[test]
    fn rank_one_rr_sum_counts_partitions() {
        // A = [[2]], B = 0, C = 0: parts = +-1 mod 5
        let t = NahmTriple::new(vec![vec![exp_int(2)]], vec![exp_int(0)], exp_int(0)).unwrap();
        let s = nahm_sum(&t, exp_int(8)).unwrap();
        let counts = partition_counts(8, |p| p % 5 == 1 || p % 5 == 4);
        for (k, c) in counts.iter().enumerate() {
            assert_eq!(s.coeff(exp_int(k as i64)), Some(big_rat(*c as i64, 1)));
        }
    }

    #[test]
    fn tadpole3_character_leading_values() {
        let s = chi0(&[exp_int(0); 3], exp(3, 2)).unwrap();
        assert_eq!(s.coeff(exp_int(0)), Some(big_rat(1, 1)));
        assert_eq!(s.coeff(exp(1, 2)), Some(big_rat(3, 1)));
        assert_eq!(s.coeff(exp_int(1)), Some(big_rat(6, 1)));
    }

    #[test]
    fn negative_shifts_give_finite_principal_part() {
        let t = NahmTriple::new(
            tadpole(3).unwrap(),
            vec![exp_int(-1), exp_int(1), exp_int(0)],
            exp_int(0),
        )
        .unwrap();
        let s = nahm_sum(&t, exp_int(6)).unwrap();
        let v = s.vanishing_order().unwrap();
        // bounded below by -B^T A^-1 B / 2
        let dual_quad = {
            let ainv = invert_matrix(t.matrix()).unwrap();
            let bi = mat_vec(&ainv, t.vector());
            t.vector()
                .iter()
                .zip(&bi)
                .fold(exp_int(0), |acc, (x, y)| acc + *x * *y)
        };
        assert!(v >= -dual_quad / 2);
    }

    #[test]
    fn dual_map_t3_inverse_example() {
        // (T3^-1, (1/2,1,3/2), c) has dual vector T3*(1/2,1,3/2) = (0,0,1/2)
        let t = NahmTriple::new(
            tadpole_inverse(3).unwrap(),
            vec![exp(1, 2), exp_int(1), exp(3, 2)],
            exp_int(0),
        )
        .unwrap();
        let d = t.dual().unwrap();
        assert_eq!(d.vector(), &[exp_int(0), exp_int(0), exp(1, 2)]);
        assert_eq!(d.matrix(), &tadpole(3).unwrap()[..]);
        // B = 0 case and the involution
        let t0 = NahmTriple::new(tadpole(2).unwrap(), vec![exp_int(0); 2], exp(1, 3)).unwrap();
        let d0 = t0.dual().unwrap();
        assert_eq!(d0.vector(), &[exp_int(0), exp_int(0)]);
        assert_eq!(d0.scalar(), -exp(2, 24) - exp(1, 3));
        assert_eq!(d0.dual().unwrap(), t0);
        assert_eq!(d.dual().unwrap(), t);
    }

    #[test]
    fn margin_does_not_change_output() {
        let t = NahmTriple::new(
            tadpole(3).unwrap(),
            vec![exp(1, 2), exp_int(-1), exp(1, 2)],
            exp_int(0),
        )
        .unwrap();
        let a = nahm_sum(&t, exp_int(12)).unwrap();
        let b = nahm_sum_with_margin(&t, exp_int(12), exp_int(7)).unwrap();
        assert!(a.compare(&b, exp_int(12)).unwrap().is_equal());
    }

    #[test]
    fn xvar_monomial_identity() {
        assert!(xvar_coefficient_check(0, 0, 0, exp_int(10)).unwrap());
        assert!(xvar_coefficient_check(1, 0, 0, exp_int(20)).unwrap());
        for (i, j, k) in [(2, 1, 3), (0, 2, 1), (3, 3, 3)] {
            assert!(xvar_coefficient_check(i, j, k, exp_int(15)).unwrap());
        }
    }

    #[test]
    fn additive_shift_relation() {
        // chi0(q,1,1) + chi0(1,q,1) = chi0(q^-1,q,1), depth 30
        let d = exp_int(30);
        let a = chi0(&[exp_int(1), exp_int(0), exp_int(0)], d).unwrap();
        let b = chi0(&[exp_int(0), exp_int(1), exp_int(0)], d).unwrap();
        let c = chi0(&[exp_int(-1), exp_int(1), exp_int(0)], d).unwrap();
        assert!(a.add(&b).compare(&c, d).unwrap().is_equal());
    }

    #[test]
    fn matrix_spec_parsing() {
        assert_eq!("tadpole:3".parse::<MatrixSpec>().unwrap(), MatrixSpec::Tadpole(3));
        assert_eq!(
            "tadpole-inv:2".parse::<MatrixSpec>().unwrap(),
            MatrixSpec::TadpoleInv(2)
        );
        let m = "2,-1;-1,2".parse::<MatrixSpec>().unwrap();
        assert_eq!(
            m.to_matrix().unwrap(),
            vec![vec![exp_int(2), exp_int(-1)], vec![exp_int(-1), exp_int(2)]]
        );
        assert!("tadpole:x".parse::<MatrixSpec>().is_err());
    }
}
