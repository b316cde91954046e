//! Weight-3/2 partial theta series and their relation battery: vanishing,
//! reflection, parity dissection, and the tau+1 laws in the smallest ring
//! that hosts the phases.

use nahmlab::exponent::{exp, exp_int};
use nahmlab::theta::{check_theta_relations, partial_theta, theta_residue_class};

fn main() -> nahmlab::Result<()> {
    let k = exp(5, 2);
    let dt = partial_theta(exp_int(1), k, false, exp_int(8))?;
    let dg = partial_theta(exp_int(1), k, true, exp_int(8))?;
    println!("plain      = {dt}");
    println!("alternating= {dg}");

    // residue-class theta series include the negative ray
    let c1 = theta_residue_class(1, 5, exp_int(40));
    println!("class 1    = {c1}");

    let report = check_theta_relations(k, exp_int(20), 128, 1e-30)?;
    println!("\nrelation battery at k = {}:", report.k);
    for c in &report.checks {
        let extra = c
            .residual
            .map(|r| format!(" residual {r:.2e}"))
            .unwrap_or_default();
        println!("  [{}] {}{}", c.status, c.id, extra);
    }
    println!(
        "{} checks, all pass: {}",
        report.checks.len(),
        report.all_pass()
    );
    Ok(())
}
