//! Command-line front end: argument parsing and printing only; all work
//! happens in the library.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use nahmlab::asymptotics::{gamma_coefficient, modularity_obstruction, solve_tba, tba_multistart};
use nahmlab::coeff::{GaussRat, Root5};
use nahmlab::exponent::{exp_int, Exponent};
use nahmlab::nahm::{parse_rational, MatrixSpec, NahmTriple};
use nahmlab::numeric::{Cplx, Ctx};
use nahmlab::products::{expand_to_depth, parse};
use nahmlab::suites::{run_suite, suite_ids, SuiteOptions};
use nahmlab::transform::{
    check_s, check_t, rho1_descriptor, rho2_descriptor, rho_tilde_descriptor, weber_descriptor,
};

#[derive(Parser)]
#[command(name = "nahmlab", version, about = "Exact q-series identity engine")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Truncation depth override
    #[arg(long, global = true)]
    depth: Option<i64>,
    /// Coefficient ring for series output
    #[arg(long, global = true, value_enum, default_value_t = Ring::Rational)]
    ring: Ring,
    /// Working precision in bits for numeric checks
    #[arg(long, global = true, default_value_t = 192)]
    prec: usize,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for suite execution
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Enable full-depth variants (the 2401-coefficient check)
    #[arg(long, global = true)]
    deep: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Ring {
    Rational,
    Root5,
    Gauss,
    Complex,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run one or more verification suites (all when none given)
    Verify {
        /// Suite ids; `--list` prints the registry
        suites: Vec<String>,
        #[arg(long)]
        list: bool,
    },
    /// Expand a product expression to a truncated series
    Expand { expr: String },
    /// Evaluate a Nahm sum for an explicit triple
    Nahm {
        /// Matrix: `tadpole:R`, `tadpole-inv:R`, or rows `2,-1;-1,2`
        #[arg(long)]
        matrix: String,
        /// Shift vector as a comma list of rationals
        #[arg(long, visible_alias = "B", default_value = "")]
        b: String,
        /// Scalar offset
        #[arg(long, default_value = "0")]
        c: String,
    },
    /// Solve the fixed-point system for a positive-definite matrix
    Tba {
        #[arg(long, default_value = "tadpole:3")]
        matrix: String,
        #[arg(long, default_value = "1e-30")]
        tol: String,
        /// Also run a multi-start uniqueness sweep with this many starts
        #[arg(long)]
        sweep: Option<usize>,
    },
    /// Exact modularity obstruction for a rank-3 shift vector
    Obstruction {
        /// Comma list `b1,b2,b3`
        #[arg(long, visible_alias = "B")]
        b: String,
    },
    /// Numeric S/T transformation checks for a named family
    Transform {
        #[arg(long)]
        suite: String,
        /// Evaluation point `re,im`
        #[arg(long, default_value = "0,1")]
        tau: String,
        #[arg(long, default_value = "1e-20")]
        tol: String,
    },
    /// Wronskian identity and order-of-vanishing report
    Wronskian,
    /// Rank-n Wronskian identity for the all-ones character
    Conjecture {
        #[arg(long)]
        n: i64,
    },
    /// Coefficient bound for weight/level
    Sturm {
        #[arg(long)]
        weight: i64,
        #[arg(long)]
        level: i64,
    },
}

fn parse_rat_list(s: &str) -> Result<Vec<Exponent>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| parse_rational(t.trim()).ok_or_else(|| anyhow!("bad rational '{t}'")))
        .collect()
}

fn print_series(s: &nahmlab::FracSeries<nahmlab::Rat>, ring: Ring, format: Format, prec: usize) {
    match (ring, format) {
        (Ring::Rational, Format::Text) => println!("{s}"),
        (Ring::Rational, Format::Json) => println!("{}", s.to_json()),
        (Ring::Gauss, Format::Text) => println!("{}", s.embed::<GaussRat>()),
        (Ring::Gauss, Format::Json) => println!("{}", s.embed::<GaussRat>().to_json()),
        (Ring::Root5, Format::Text) => println!("{}", s.embed::<Root5>()),
        (Ring::Root5, Format::Json) => println!("{}", s.embed::<Root5>().to_json()),
        (Ring::Complex, f) => {
            nahmlab::numeric::set_default_precision(prec);
            let e = s.embed::<nahmlab::numeric::Cplx>();
            if f == Format::Json {
                println!("{}", e.to_json())
            } else {
                println!("{e}")
            }
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
}

fn run(cli: Cli) -> Result<i32> {
    let opt = SuiteOptions {
        depth: cli.depth,
        deep: cli.deep,
        prec: cli.prec,
        jobs: cli.jobs,
    };
    match cli.cmd {
        Cmd::Verify { suites, list } => {
            if list {
                for id in suite_ids() {
                    println!("{id}");
                }
                return Ok(0);
            }
            let targets: Vec<String> = if suites.is_empty() {
                suite_ids().iter().map(|s| s.to_string()).collect()
            } else {
                suites
            };
            let mut all_ok = true;
            let mut json = Vec::new();
            for id in &targets {
                let rep = run_suite(id, &opt)?;
                all_ok &= rep.all_pass();
                match cli.format {
                    Format::Text => print!("{}", rep.render_text()),
                    Format::Json => json.push(rep.to_json()),
                }
            }
            if cli.format == Format::Json {
                println!("{}", serde_json::Value::Array(json));
            }
            Ok(if all_ok { 0 } else { 1 })
        }
        Cmd::Expand { expr } => {
            let tree = parse(&expr)?;
            let depth = exp_int(cli.depth.unwrap_or(20));
            let series = expand_to_depth(&tree, depth)?;
            print_series(&series, cli.ring, cli.format, cli.prec);
            Ok(0)
        }
        Cmd::Nahm { matrix, b, c } => {
            let spec: MatrixSpec = matrix.parse().map_err(|e: String| anyhow!(e))?;
            let b = parse_rat_list(&b)?;
            let b = if b.is_empty() {
                vec![exp_int(0); spec.to_matrix().map(|m| m.len()).unwrap_or(0)]
            } else {
                b
            };
            let c = parse_rational(&c).context("bad scalar")?;
            let triple = NahmTriple::from_spec(&spec, &b, c)?;
            let series = nahmlab::nahm::nahm_sum(&triple, exp_int(cli.depth.unwrap_or(20)))?;
            print_series(&series, cli.ring, cli.format, cli.prec);
            Ok(0)
        }
        Cmd::Tba { matrix, tol, sweep } => {
            let spec: MatrixSpec = matrix.parse().map_err(|e: String| anyhow!(e))?;
            let a = spec.to_matrix()?;
            let cx = Ctx::new(cli.prec.max(128));
            let tolv = cx.from_f64(tol.parse::<f64>().context("bad tolerance")?);
            let sol = solve_tba(&a, &cx, &tolv, None)?;
            let gamma = gamma_coefficient(&nahmlab::coeff::big_rat(0, 1), &sol.q, &cx);
            let sweep_dev = match sweep {
                None => None,
                Some(n) => Some(tba_multistart(&a, n, 17, &cx, &tolv)?.1.to_f64()),
            };
            let payload = serde_json::json!({
                "q": sol.q.iter().map(|x| format!("{:.32e}", x.to_f64())).collect::<Vec<_>>(),
                "residual": sol.residual.to_f64(),
                "iterations": sol.iterations,
                "matched": sol.matched.iter().map(|m| m.as_ref().map(|f| f.to_string())).collect::<Vec<_>>(),
                "gamma_at_c0": gamma.to_f64(),
                "sweep_deviation": sweep_dev,
            });
            match cli.format {
                Format::Json => println!("{payload}"),
                Format::Text => {
                    for (i, qv) in sol.q.iter().enumerate() {
                        let tag = sol.matched[i]
                            .as_ref()
                            .map(|f| format!("  = {f}"))
                            .unwrap_or_default();
                        println!("Q{} = {:.30}{}", i + 1, qv.to_f64(), tag);
                    }
                    println!(
                        "residual {:e} after {} iterations",
                        sol.residual.to_f64(),
                        sol.iterations
                    );
                    if let Some(dev) = sweep_dev {
                        println!("multi-start deviation {dev:e}");
                    }
                }
            }
            Ok(0)
        }
        Cmd::Obstruction { b } => {
            let list = parse_rat_list(&b)?;
            if list.len() != 3 {
                bail!("obstruction needs exactly three shift entries");
            }
            let verdict = modularity_obstruction(&[list[0], list[1], list[2]]);
            match cli.format {
                Format::Json => println!("{}", serde_json::to_value(&verdict)?),
                Format::Text => match verdict {
                    nahmlab::asymptotics::Obstruction::Obstructed { c } => {
                        println!("obstructed: c = {} + {}*sqrt5 has irrational part", c.a, c.b)
                    }
                    nahmlab::asymptotics::Obstruction::Candidate { c } => {
                        println!("candidate prefactor exponent: {}", c.a)
                    }
                },
            }
            Ok(0)
        }
        Cmd::Transform { suite, tau, tol } => {
            let cx = Ctx::new(cli.prec.max(128));
            let depth = exp_int(cli.depth.unwrap_or(120));
            let d = match suite.as_str() {
                "weber" => weber_descriptor(depth, &cx)?,
                "rho1" => rho1_descriptor(depth, &cx)?,
                "rho2" => rho2_descriptor(depth, &cx)?,
                "rho-tilde" => rho_tilde_descriptor(depth, &cx)?,
                other => bail!("unknown transform family '{other}'"),
            };
            let parts: Vec<&str> = tau.split(',').collect();
            if parts.len() != 2 {
                bail!("tau must be 're,im'");
            }
            let tau = Cplx::from_f64(parts[0].trim().parse()?, parts[1].trim().parse()?, &cx);
            let tolv: f64 = tol.parse().context("bad tolerance")?;
            let s = check_s(&d, &tau, tolv, &cx)?;
            let t = check_t(&d, &tau, tolv, &cx)?;
            match cli.format {
                Format::Json => println!(
                    "{}",
                    serde_json::json!({"s": serde_json::to_value(&s)?, "t": serde_json::to_value(&t)?})
                ),
                Format::Text => {
                    println!(
                        "S: max residual {:e} (tail {:e})  {}",
                        s.max_residual,
                        s.tail_bound,
                        if s.pass { "pass" } else { "fail" }
                    );
                    println!(
                        "T: max residual {:e} (tail {:e})  {}",
                        t.max_residual,
                        t.tail_bound,
                        if t.pass { "pass" } else { "fail" }
                    );
                }
            }
            Ok(if s.pass && t.pass { 0 } else { 1 })
        }
        Cmd::Wronskian => {
            let rep = run_suite("wronskian", &opt)?;
            match cli.format {
                Format::Json => println!("{}", rep.to_json()),
                Format::Text => print!("{}", rep.render_text()),
            }
            Ok(if rep.all_pass() { 0 } else { 1 })
        }
        Cmd::Conjecture { n } => {
            let rep = nahmlab::modular::conjecture_check(n, exp_int(cli.depth.unwrap_or(40)))?;
            match cli.format {
                Format::Json => println!("{}", serde_json::to_value(&rep)?),
                Format::Text => println!(
                    "rank {n}: {}{}",
                    rep.status,
                    rep.mismatch
                        .as_ref()
                        .map(|m| format!(" ({m})"))
                        .unwrap_or_default()
                ),
            }
            Ok(if rep.passed() { 0 } else { 1 })
        }
        Cmd::Sturm { weight, level } => {
            let b = nahmlab::modular::sturm_bound(exp_int(weight), level);
            match cli.format {
                Format::Json => println!("{}", serde_json::json!({"bound": b})),
                Format::Text => println!("{b}"),
            }
            Ok(0)
        }
    }
}
