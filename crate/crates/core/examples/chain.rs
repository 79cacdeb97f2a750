//! Fold the last index repeatedly and watch the relative entropy decrease.

use qportrait::entropy::{chain_gaps, chain_reports};
use qportrait::portraits::chain;
use qportrait::states::{random_mixed_hs, RngSeed};
use qportrait::Tolerances;

fn main() -> qportrait::Result<()> {
    let tol = Tolerances::default();
    let rho = random_mixed_hs(6, RngSeed(21))?;
    let sigma = random_mixed_hs(6, RngSeed(22))?;

    for (k, step) in chain(&rho)?.iter().enumerate() {
        println!("step {k}: dim {} top-left {:.6}", step.dim(), step.matrix()[(0, 0)].re);
    }

    let values = chain_gaps(&rho, &sigma, &tol)?;
    for (d, v) in (2..=6).rev().zip(&values) {
        println!("dim {d}: S = {v}");
    }
    let ok = chain_reports(&values, &tol).iter().all(|r| r.holds);
    println!("nonincreasing and nonnegative: {ok}");
    Ok(())
}
