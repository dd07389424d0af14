//! Driving the command-line front end from code, as the binary does.
//!
//!     cargo run --example cli_in_process

use soliton_polytope::cli;

fn main() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    for args in [
        vec!["soliton-polytope", "catalog", "list", "--out", "csv"],
        vec!["soliton-polytope", "--out", "csv", "xi-seq", "catalog:bl2p2", "--N-list", "8,32,128"],
        vec!["soliton-polytope", "--out", "csv", "beta", "catalog:p2", "--u", "1,1", "--c", "2", "--A", "2"],
        vec!["soliton-polytope", "--out", "csv", "lich", "catalog:bl1p2", "--tau-scale", "10"],
    ] {
        out.clear();
        err.clear();
        let code = cli::run(&args, &mut out, &mut err);
        println!("$ {}\n{}exit {code}\n", args[1..].join(" "), String::from_utf8_lossy(&out));
    }
}
