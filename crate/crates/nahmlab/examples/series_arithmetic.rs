//! Tour of the exact truncated-series type: fractional exponents, Laurent
//! parts, inversion, dissection and the canonical display form.

use nahmlab::coeff::big_rat;
use nahmlab::exponent::{exp, exp_int};
use nahmlab::{FracSeries, Rat};

fn main() -> nahmlab::Result<()> {
    // (1 - q) and its inverse, the geometric series
    let one_minus_q = FracSeries::from_terms(
        [(exp_int(0), big_rat(1, 1)), (exp_int(1), big_rat(-1, 1))],
        exp_int(10),
    );
    let geo = one_minus_q.invert()?;
    println!("1/(1-q)      = {geo}");
    println!("product      = {}", one_minus_q.mul(&geo));

    // fractional exponents live on a (1/D)Z lattice
    let half = FracSeries::monomial(exp(1, 2), big_rat(1, 1), exp_int(4));
    println!("q^(1/2)^2    = {}", half.mul(&half));

    // Laurent series with finite principal part invert cleanly
    let laurent = FracSeries::<Rat>::from_terms(
        [(exp(-1, 2), big_rat(2, 1)), (exp(1, 2), big_rat(3, 1))],
        exp_int(5),
    );
    println!("laurent      = {laurent}");
    println!("1/laurent    = {}", laurent.invert()?);

    // dissection splits by exponent residue class and reassembles exactly
    let s = FracSeries::from_terms((0..12).map(|k| (exp_int(k), big_rat(k + 1, 1))), exp_int(12));
    let even = s.dissect(2, 0)?;
    let odd = s.dissect(2, 1)?;
    println!("even part    = {even}");
    let back = even
        .substitute_power(exp_int(2))?
        .add(&odd.substitute_power(exp_int(2))?.shift(exp_int(1)));
    assert!(back.compare(&s, back.trunc().min(s.trunc()))?.is_equal());
    println!("reassembly   = ok");

    // the tau -> tau+1 action is exact on half-integer lattices
    let signed = half.tau_shift()?;
    println!("tau shift    = {signed}");
    Ok(())
}
