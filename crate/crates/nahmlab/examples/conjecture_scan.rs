//! The rank-n Wronskian identity for the all-ones character, scanned over
//! small ranks. A mismatch would print as a falsification finding.

use nahmlab::exponent::exp_int;
use nahmlab::modular::{conjecture_check, conjecture_prefactor};

fn main() -> nahmlab::Result<()> {
    for n in 2..=5 {
        let rep = conjecture_check(n, exp_int(40))?;
        println!(
            "rank {n}: prefactor exponent {}  ->  {}{}",
            conjecture_prefactor(n),
            rep.status,
            rep.mismatch.map(|m| format!("  ({m})")).unwrap_or_default()
        );
    }
    Ok(())
}
