//! The product expression language: parse, expand, and cross-check the
//! classical theta product forms.

use nahmlab::exponent::exp_int;
use nahmlab::products::{expand_to_depth, parse};

fn main() -> nahmlab::Result<()> {
    for text in [
        "J(1)",
        "qpow(1/40)*J(2)^6",
        "theta2 - 2*qpow(1/4)*J(4)^2/J(2)",
        "weber(f)*weber(f1)*weber(f2)",
        "J(5)/Jam(1,5)",
        "P(-1/2;1;inf)",
        "geta(20;4)",
        "dtheta(1,5/2)",
    ] {
        let series = expand_to_depth(&parse(text)?, exp_int(8))?;
        println!("{text:<40} = {series}");
    }

    // parse errors carry positions
    let err = parse("J(4)^5*J(40)/(J(1)*Jam(8,40)").unwrap_err();
    println!("\nbroken input reports: {err}");
    Ok(())
}
