//! Lattice sums: tadpole characters, shift vectors, dual triples and the
//! leading data of the six distinguished characters.

use nahmlab::exponent::{exp, exp_int};
use nahmlab::nahm::{chi0, f_tilde, tadpole_inverse, NahmTriple};

fn main() -> nahmlab::Result<()> {
    // the rank-3 character and a few shifted companions
    let f1 = chi0(&[exp_int(0); 3], exp_int(6))?;
    println!("chi0(1,1,1)       = {f1}");
    let f2 = chi0(&[exp_int(0), exp_int(0), exp(1, 2)], exp_int(6))?;
    println!("chi0(1,1,q^(1/2)) = {f2}");

    // negative shifts give Laurent tails
    let laurent = chi0(&[exp_int(-2), exp_int(2), exp(-1, 2)], exp_int(4))?;
    println!("shifted (Laurent) = {laurent}");

    // the dual-triple map is an involution
    let t = NahmTriple::new(
        tadpole_inverse(3)?,
        vec![exp(1, 2), exp_int(1), exp(3, 2)],
        exp_int(0),
    )?;
    let d = t.dual()?;
    println!("dual vector       = {:?}", d.vector());
    assert_eq!(d.dual()?, t);

    // normalized characters with their fractional prefactors
    for i in 1..=6 {
        let ft = f_tilde(i, exp_int(3))?;
        println!("F~{i}               = {ft}");
    }
    Ok(())
}
