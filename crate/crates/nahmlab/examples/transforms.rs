//! Numeric S/T transformation checks on the upper half-plane: evaluation
//! with tail bounds, the modular families, the fixed point, and a designed
//! negative control.

use nahmlab::exponent::exp_int;
use nahmlab::numeric::{Cplx, Ctx};
use nahmlab::theta::w_char;
use nahmlab::transform::{
    check_s, check_t, closure_check, evaluate, rho1_descriptor, rho2_descriptor,
    rho_tilde_descriptor, s_image, weber_descriptor,
};

fn main() -> nahmlab::Result<()> {
    let cx = Ctx::new(192);
    let depth = exp_int(120);
    let tau_i = Cplx::new(cx.int(0), cx.int(1));

    // direct evaluation with a reported tail bound
    let eta = nahmlab::products::eta_series(depth)?;
    let (v, tail) = evaluate(&eta, &tau_i, &cx)?;
    println!("eta(i) = {v}   (tail bound {:e})", tail.to_f64());

    for d in [
        weber_descriptor(depth, &cx)?,
        rho1_descriptor(depth, &cx)?,
        rho2_descriptor(depth, &cx)?,
        rho_tilde_descriptor(depth, &cx)?,
    ] {
        let s = check_s(&d, &tau_i, 1e-20, &cx)?;
        let t = check_t(&d, &tau_i, 1e-20, &cx)?;
        println!(
            "{:<10} S residual {:.2e}  T residual {:.2e}",
            d.name, s.max_residual, t.max_residual
        );
    }

    // a single component does not close under S: the control must fail
    let w1 = w_char(1, exp_int(90))?;
    let taus: Vec<Cplx> = [(0.0, 1.0), (0.5, 1.0), (0.0, 2.0), (0.3, 1.2)]
        .iter()
        .map(|&(re, im)| Cplx::from_f64(re, im, &cx))
        .collect();
    let rep = closure_check("w1-alone", std::slice::from_ref(&w1), s_image, "S", &taus, 1e-20, &cx)?;
    println!("negative control closes: {} (residual {:.2e})", rep.pass, rep.max_residual);
    Ok(())
}
