//! The scalar inequalities on eigenvalue lists and probability vectors.

use qportrait::scalar::{
    entropy_exp_bound, gibbs_gap, pairwise_exp_sum, rho_ln_rho, tomogram_uncertainty,
    EigenvalueList,
};
use qportrait::states::{random_mixed_hs, ProbabilityVector, RngSeed};
use qportrait::Tolerances;

fn main() -> qportrait::Result<()> {
    let tol = Tolerances::default();

    let b = EigenvalueList::new(vec![0.0, 2f64.ln(), -1.0])?;
    let r = pairwise_exp_sum(&b, &tol)?;
    println!("pairwise: {} >= {}", r.lhs, r.rhs);

    let w = ProbabilityVector::new(vec![0.2, 0.5, 0.3])?;
    println!("gibbs gap:    {}", gibbs_gap(&b, &w, &tol)?.lhs);
    println!("tomogram gap: {}", tomogram_uncertainty(&w, &tol)?.lhs);

    let rho = random_mixed_hs(4, RngSeed(41))?;
    let r = entropy_exp_bound(&rho, &rho_ln_rho(&rho, &tol), &tol)?;
    println!("exp S(rho) = {} <= {}", r.rhs, r.lhs);
    Ok(())
}
