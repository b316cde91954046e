//! The algebraic fixed-point system governing Nahm-sum asymptotics, solved at
//! high precision, and the exact Q(sqrt5) obstruction that rules out
//! modularity for certain shift vectors.

use crate::coeff::{Coef, Rat, Root5};
use crate::error::{NahmlabError, Result};
use crate::exponent::{exp, exp_int, to_big, Exponent};
use crate::numeric::{Ctx, Real};
use serde::Serialize;
use std::cmp::Ordering;

/// Solution of `1 - Q_i = prod_j Q_j^(A_ij)` inside `(0,1)^r`.
#[derive(Clone, Debug)]
pub struct TbaSolution {
    pub q: Vec<Real>,
    /// Max absolute residual of the system at the returned point.
    pub residual: Real,
    pub iterations: usize,
    /// Exact quadratic-field forms matched per entry, when known.
    pub matched: Vec<Option<Root5>>,
}

fn system_values(a: &[Vec<Exponent>], q: &[Real], cx: &Ctx) -> Vec<Real> {
    // f_i = 1 - prod_j Q_j^(A_ij)
    (0..a.len())
        .map(|i| {
            let mut p = cx.int(1);
            for (j, qj) in q.iter().enumerate() {
                if a[i][j] != exp_int(0) {
                    p = p.mul(&qj.pow_ratio(a[i][j], cx), cx);
                }
            }
            cx.int(1).sub(&p, cx)
        })
        .collect()
}

/// Row-solved update: the i-th equation rearranged for its own variable,
/// `G_i = ((1 - Q_i) prod_{j != i} Q_j^(-A_ij))^(1/A_ii)`. Unlike the naive
/// `Q_i <- 1 - prod Q^A` map, this one stays inside the unit cube and its
/// damped form contracts on the systems used here.
fn row_solved_values(a: &[Vec<Exponent>], q: &[Real], cx: &Ctx) -> Vec<Real> {
    (0..a.len())
        .map(|i| {
            let mut p = cx.int(1).sub(&q[i], cx);
            for (j, qj) in q.iter().enumerate() {
                if j != i && a[i][j] != exp_int(0) {
                    p = p.mul(&qj.pow_ratio(-a[i][j], cx), cx);
                }
            }
            let aii = a[i][i];
            p.pow_ratio(aii.recip(), cx)
        })
        .collect()
}

fn residual(a: &[Vec<Exponent>], q: &[Real], cx: &Ctx) -> Real {
    let f = system_values(a, q, cx);
    let mut worst = cx.int(0);
    for (qi, fi) in q.iter().zip(&f) {
        let r = qi.sub(fi, cx).abs();
        if r.cmp(&worst) == Ordering::Greater {
            worst = r;
        }
    }
    worst
}

/// Damped fixed-point iteration `Q <- Q + (f(Q) - Q)/2` from the given start
/// (default: all entries 1/2), clamped to the open unit cube.
pub fn solve_tba(
    a: &[Vec<Exponent>],
    cx: &Ctx,
    tol: &Real,
    start: Option<Vec<Real>>,
) -> Result<TbaSolution> {
    let r = a.len();
    let half = cx.ratio(exp(1, 2));
    let eps = cx.int(2).powi(-(cx.prec() as i64) + 8, cx);
    let one_m_eps = cx.int(1).sub(&eps, cx);
    let mut q: Vec<Real> = start.unwrap_or_else(|| vec![half.clone(); r]);
    let max_iters = 64 * cx.prec() + 1000;
    for it in 0..max_iters {
        let f = row_solved_values(a, &q, cx);
        let mut worst = cx.int(0);
        for i in 0..r {
            let delta = f[i].sub(&q[i], cx);
            let d = delta.abs();
            if d.cmp(&worst) == Ordering::Greater {
                worst = d;
            }
            let mut next = q[i].add(&delta.mul(&half, cx), cx);
            if next.is_negative() || next.cmp(&eps) == Ordering::Less {
                next = eps.clone();
            }
            if next.cmp(&one_m_eps) == Ordering::Greater {
                next = one_m_eps.clone();
            }
            q[i] = next;
        }
        if worst.cmp(tol) == Ordering::Less {
            let res = residual(a, &q, cx);
            if res.cmp(tol) == Ordering::Less {
                let matched = match_closed_forms(a, &q, cx, tol);
                return Ok(TbaSolution {
                    q,
                    residual: res,
                    iterations: it + 1,
                    matched,
                });
            }
        }
    }
    Err(NahmlabError::NoConvergence {
        iters: max_iters,
        residual: residual(a, &q, cx).to_f64(),
    })
}

/// Closed forms for the rank-3 tadpole system:
/// `((3 - sqrt5)/2, sqrt5 - 2, (3 - sqrt5)/4)`.
pub fn t3_closed_forms() -> [Root5; 3] {
    [
        Root5::from_parts(3, 2, -1, 2),
        Root5::from_parts(-2, 1, 1, 1),
        Root5::from_parts(3, 4, -1, 4),
    ]
}

/// Golden-section solution of the rank-1 system `1 - Q = Q^2`.
pub fn rank1_closed_form() -> Root5 {
    Root5::from_parts(-1, 2, 1, 2)
}

/// Verify the rank-3 closed forms satisfy their three equations exactly in
/// Q(sqrt5) arithmetic (and the rank-1 golden section its quadratic).
pub fn t3_forms_satisfy_system_exactly() -> bool {
    let [q1, q2, q3] = t3_closed_forms();
    let one = Root5::one();
    let c1 = one.sub_ref(&q1) == q1.mul_ref(&q1).mul_ref(&q2.inv().unwrap());
    let c2 = one.sub_ref(&q2)
        == q1
            .inv()
            .unwrap()
            .mul_ref(&q2.mul_ref(&q2))
            .mul_ref(&q3.inv().unwrap());
    let c3 = one.sub_ref(&q3) == q3.mul_ref(&q2.inv().unwrap());
    let g = rank1_closed_form();
    let c4 = one.sub_ref(&g) == g.mul_ref(&g);
    c1 && c2 && c3 && c4
}

fn match_closed_forms(
    a: &[Vec<Exponent>],
    q: &[Real],
    cx: &Ctx,
    tol: &Real,
) -> Vec<Option<Root5>> {
    let window = tol.mul(&cx.int(1 << 20), cx);
    let candidates: Vec<Root5> = match a.len() {
        1 => vec![rank1_closed_form()],
        3 => t3_closed_forms().to_vec(),
        _ => vec![],
    };
    q.iter()
        .map(|qi| {
            candidates.iter().find_map(|c| {
                let approx = cx
                    .big_rational(&c.a)
                    .add(&cx.big_rational(&c.b).mul(&cx.int(5).sqrt(cx), cx), cx);
                if qi.sub(&approx, cx).abs().cmp(&window) == Ordering::Less {
                    Some(c.clone())
                } else {
                    None
                }
            })
        })
        .collect()
}

/// Deterministic multi-start sweep: `n_starts` random initializations in the
/// open unit cube must all land on the same solution. Returns the reference
/// solution and the largest pairwise deviation observed.
pub fn tba_multistart(
    a: &[Vec<Exponent>],
    n_starts: usize,
    seed: u64,
    cx: &Ctx,
    tol: &Real,
) -> Result<(TbaSolution, Real)> {
    let reference = solve_tba(a, cx, tol, None)?;
    let mut state = seed;
    let mut next_unit = || {
        // splitmix64
        state = state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^= z >> 31;
        // keep starts off the cube boundary
        0.02 + 0.96 * ((z >> 11) as f64 / (1u64 << 53) as f64)
    };
    let mut worst = cx.int(0);
    for _ in 0..n_starts {
        let start: Vec<Real> = (0..a.len()).map(|_| cx.from_f64(next_unit())).collect();
        let sol = solve_tba(a, cx, tol, Some(start))?;
        for (x, y) in sol.q.iter().zip(&reference.q) {
            let d = x.sub(y, cx).abs();
            if d.cmp(&worst) == Ordering::Greater {
                worst = d;
            }
        }
    }
    Ok((reference, worst))
}

/// Exact value of the leading-coefficient constraint as an element of
/// Q(sqrt5), as a function of the rank-3 shift vector.
pub fn c_formula(b: &[Exponent; 3]) -> Root5 {
    let [b1, b2, b3] = *b;
    // rational part and (1/sqrt5)-part collected separately;
    // 1/sqrt5 = sqrt5/5 exactly
    let rational = exp(-3, 4) * b1 * b1 - b1 * b2 + exp(1, 2) * b1 * b3 - exp(9, 10) * b1
        + exp(1, 2) * b2 * b3
        - exp(17, 20) * b2
        + exp(1, 4) * b3 * b3
        + exp(1, 10) * b3
        - exp(7, 80);
    let inv_sqrt5 = exp(9, 4) * b1 * b1 + exp_int(3) * b1 * b2 - exp(1, 2) * b1 * b3
        + exp_int(2) * b1
        + b2 * b2
        + exp(1, 2) * b2 * b3
        + exp(7, 4) * b2
        + b3 * b3
        - exp(1, 2) * b3;
    Root5::new(to_big(rational), to_big(inv_sqrt5 / 5))
}

#[derive(Clone, Debug, Serialize, PartialEq)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Obstruction {
    /// The constraint value has a nonzero sqrt5-component: no rational
    /// prefactor exponent exists.
    Obstructed { c: CValue },
    /// The unique rational candidate for the prefactor exponent
    /// (`c.b` is zero by construction).
    Candidate { c: CValue },
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CValue {
    pub a: String,
    pub b: String,
}

/// Decide the modularity obstruction for the rank-3 sum with shift vector `b`.
pub fn modularity_obstruction(b: &[Exponent; 3]) -> Obstruction {
    let c = c_formula(b);
    if num::Zero::is_zero(&c.b) {
        Obstruction::Candidate {
            c: CValue {
                a: c.a.to_string(),
                b: "0".into(),
            },
        }
    } else {
        Obstruction::Obstructed {
            c: CValue {
                a: c.a.to_string(),
                b: c.b.to_string(),
            },
        }
    }
}

/// `gamma = C + (1/24) sum_i (1 + Q_i)/(1 - Q_i)` at solver precision.
pub fn gamma_coefficient(c: &Rat, q: &[Real], cx: &Ctx) -> Real {
    let mut acc = cx.big_rational(c);
    let one = cx.int(1);
    let tw4 = cx.ratio(exp(1, 24));
    for qi in q {
        let term = one.add(qi, cx).div(&one.sub(qi, cx), cx);
        acc = acc.add(&term.mul(&tw4, cx), cx);
    }
    acc
}
