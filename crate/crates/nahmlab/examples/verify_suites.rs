//! Drive the named verification suites programmatically and inspect the
//! machine-readable report.

use nahmlab::suites::{run_suite, SuiteOptions};

fn main() -> nahmlab::Result<()> {
    let opt = SuiteOptions::default();
    for id in ["rogers", "remark-1.6", "lemma-3.3"] {
        let rep = run_suite(id, &opt)?;
        print!("{}", rep.render_text());
    }
    // JSON form for downstream tooling
    let rep = run_suite("relations", &opt)?;
    println!("{}", serde_json::to_string_pretty(&rep.to_json()).unwrap());
    Ok(())
}
