//! The constant-term method: collapse a triple lattice sum to a single sum
//! by extracting the z^0 component of a bivariate product.

use nahmlab::bivariate::ct_window;
use nahmlab::coeff::big_rat;
use nahmlab::exponent::exp_int;
use nahmlab::nahm::chi0;
use nahmlab::products::{euler_inv_poch_z, j_series, poch_z, pochhammer, PochLen, PochSign};

fn main() -> nahmlab::Result<()> {
    let depth = exp_int(15);
    let m = ct_window(15, 2);
    println!("z-window: [{}, {}]", -m, m);

    // (-qz, -q/z, -qz, -q/z, q^2; q^2)_inf / (1/z; q^2)_inf
    let one = big_rat(1, 1);
    let fz = poch_z(&one, exp_int(1), 1, exp_int(2), -m, m, depth)?;
    let fzi = poch_z(&one, exp_int(1), -1, exp_int(2), -m, m, depth)?;
    let euler = euler_inv_poch_z(&one, exp_int(0), -1, exp_int(2), -m, m, depth)?;
    let j2 = j_series(2, depth)?;
    let integrand = fz
        .mul(&fzi)
        .mul(&fz)
        .mul(&fzi)
        .mul_scalar_series(&j2)
        .mul(&euler);
    let ct = integrand.constant_term()?;

    // prefactor (-q; q^2)_inf, then compare with the direct lattice sum at
    // base q^2
    let pref = pochhammer(PochSign::Minus, exp_int(1), exp_int(2), PochLen::Infinite, depth)?;
    let via_ct = pref.mul(&ct);
    let direct = chi0(&[exp_int(0); 3], exp_int(8))?.substitute_power(exp_int(2))?;
    let d = depth.min(direct.trunc()).min(via_ct.trunc());
    println!("constant-term route = {}", via_ct.truncate(d));
    println!("direct lattice sum  = {}", direct.truncate(d));
    assert!(via_ct.compare(&direct, d)?.is_equal());
    println!("routes agree to q^{d}");

    // widening the window never changes the answer below truncation
    let m2 = m + 5;
    let wide = poch_z(&one, exp_int(1), 1, exp_int(2), -m2, m2, depth)?
        .mul(&poch_z(&one, exp_int(1), -1, exp_int(2), -m2, m2, depth)?)
        .mul(&poch_z(&one, exp_int(1), 1, exp_int(2), -m2, m2, depth)?)
        .mul(&poch_z(&one, exp_int(1), -1, exp_int(2), -m2, m2, depth)?)
        .mul_scalar_series(&j2)
        .mul(&euler_inv_poch_z(&one, exp_int(0), -1, exp_int(2), -m2, m2, depth)?)
        .constant_term()?;
    assert!(wide.compare(&ct, d)?.is_equal());
    println!("window stability    = ok");
    Ok(())
}
