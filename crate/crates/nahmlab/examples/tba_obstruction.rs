//! The fixed-point system behind the asymptotics, its exact quadratic-field
//! solution, and the modularity obstruction for shifted characters.

use nahmlab::asymptotics::{
    c_formula, gamma_coefficient, modularity_obstruction, solve_tba,
    t3_forms_satisfy_system_exactly, tba_multistart,
};
use nahmlab::coeff::big_rat;
use nahmlab::exponent::{exp, exp_int};
use nahmlab::nahm::tadpole;
use nahmlab::numeric::Ctx;

fn main() -> nahmlab::Result<()> {
    let cx = Ctx::new(256);
    let tol = cx.tol(40);
    let sol = solve_tba(&tadpole(3)?, &cx, &tol, None)?;
    for (i, (q, m)) in sol.q.iter().zip(&sol.matched).enumerate() {
        println!("Q{} = {:.30}  = {}", i + 1, q.to_f64(), m.as_ref().unwrap());
    }
    println!("residual {:e} after {} iterations", sol.residual.to_f64(), sol.iterations);
    println!("closed forms satisfy the system exactly: {}", t3_forms_satisfy_system_exactly());

    let (_, dev) = tba_multistart(&tadpole(3)?, 25, 7, &cx, &tol)?;
    println!("25-start sweep deviation: {:e}", dev.to_f64());

    let gamma = gamma_coefficient(&big_rat(-7, 80), &sol.q, &cx);
    println!("gamma at the candidate prefactor: {:.20}", gamma.to_f64());

    println!();
    for b in [
        [exp_int(1), exp_int(0), exp_int(0)],
        [exp_int(0), exp_int(1), exp_int(0)],
        [exp_int(0), exp_int(0), exp_int(0)],
        [exp_int(0), exp_int(0), exp(1, 2)],
    ] {
        let c = c_formula(&b);
        println!("B = {b:?}: c = {c}  ->  {:?}", modularity_obstruction(&b));
    }
    Ok(())
}
