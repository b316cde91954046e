//! Wronskians under the q d/dq derivation: order-of-vanishing arithmetic and
//! the closed eta-Eisenstein form of the six-character determinant.

use nahmlab::coeff::big_rat;
use nahmlab::exponent::{exp, exp_int};
use nahmlab::modular::{
    eisenstein, f_tilde_family, normalized_wronskian, ramanujan_d, remark44_check, wronskian,
    Derivation, Eisenstein,
};
use nahmlab::FracSeries;

fn main() -> nahmlab::Result<()> {
    // D acts termwise by the exponent
    let e4 = eisenstein(Eisenstein::E4, exp_int(8));
    println!("E4      = {e4}");
    println!("D(E4)   = {}", ramanujan_d(&e4));

    // order of vanishing adds up for distinct leading exponents
    let f = FracSeries::from_terms([(exp(1, 3), big_rat(1, 1))], exp_int(9));
    let g = FracSeries::from_terms([(exp(1, 2), big_rat(2, 1)), (exp(3, 2), big_rat(1, 1))], exp_int(9));
    let w = wronskian(&[f, g], Derivation::D);
    println!("order   = {:?} (expect 5/6)", w.vanishing_order());

    // the six-character Wronskian: order 3/2, then the closed form
    let fam = f_tilde_family(exp_int(20))?;
    let w6 = normalized_wronskian(&fam, Derivation::D);
    println!("W~ lead = {:?}", w6.leading_term().map(|(e, c)| (e.to_string(), c.to_string())));
    let rep = remark44_check(exp_int(30))?;
    println!("closed eta-Eisenstein form to q^30: {}", rep.status);
    Ok(())
}
