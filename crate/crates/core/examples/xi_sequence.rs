//! Approximation of the soliton field by the minimizers xi_N of the
//! functionals V_N, with a log-log fit of the error.
//!
//!     cargo run --release --example xi_sequence [catalog-name]

use soliton_polytope::cli::log_log_fit;
use soliton_polytope::solve::{tian_zhu_field, xi_n};
use soliton_polytope::{catalog, SolverConfig};

fn main() -> soliton_polytope::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "bl2p2".into());
    let p = catalog::get(&name)?;
    let cfg = SolverConfig::default();
    let tau = tian_zhu_field(&p, &cfg)?.minimizer;
    println!("{name}: tau = {tau:.12?}");

    let ns = [8.0, 16.0, 32.0, 64.0, 128.0, 256.0, 512.0, 1024.0];
    let mut errs = Vec::new();
    println!("{:>6} {:>12} {:>10}  xi_N", "N", "|xi_N - tau|", "residual");
    for &n in &ns {
        let r = xi_n(&p, n, &cfg)?;
        let err = r.minimizer.iter().zip(&tau).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
        println!("{n:6} {err:12.4e} {:10.1e}  {:.10?}", r.residual.unwrap_or(f64::NAN), r.minimizer);
        errs.push(err);
    }
    if let Some((slope, _)) = log_log_fit(&ns, &errs) {
        println!("log-log slope {slope:.3}");
    }
    Ok(())
}
