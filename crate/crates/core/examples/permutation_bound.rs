//! Largest qubit-portrait relative entropy over index permutations.

use qportrait::entropy::max_permutation_bound;
use qportrait::portraits::{distinct_portrait_permutations, IndexPermutation};
use qportrait::states::{random_mixed_hs, RngSeed};
use qportrait::Tolerances;

fn main() -> qportrait::Result<()> {
    let tol = Tolerances::default();
    let rho = random_mixed_hs(4, RngSeed(31))?;
    let sigma = random_mixed_hs(4, RngSeed(32))?;

    println!(
        "{} permutations, {} distinct qubit portraits",
        IndexPermutation::all(4).count(),
        distinct_portrait_permutations(4).len()
    );
    let b = max_permutation_bound(&rho, &sigma, &tol)?;
    println!("S(rho || sigma) = {}", b.report.lhs);
    println!("best portrait   = {} via {:?}", b.report.rhs, b.permutation.one_based());
    println!("holds: {}", b.report.holds);
    Ok(())
}
