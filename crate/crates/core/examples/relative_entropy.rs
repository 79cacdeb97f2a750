//! Von Neumann and relative entropy, including the infinite case.

use qportrait::entropy::{relative_entropy, von_neumann};
use qportrait::states::{random_mixed_hs, DensityMatrix, RngSeed};
use qportrait::Tolerances;

fn main() -> qportrait::Result<()> {
    let tol = Tolerances::default();
    let rho = DensityMatrix::from_diagonal(&[0.5, 0.25, 0.25])?;
    let sigma = DensityMatrix::maximally_mixed(3)?;
    println!("S(rho)           = {:.15}", von_neumann(&rho, &tol));
    println!("S(rho || I/3)    = {}", relative_entropy(&rho, &sigma, &tol)?);

    let singular = DensityMatrix::from_diagonal(&[0.5, 0.5, 0.0])?;
    println!("S(rho || singular) = {}", relative_entropy(&rho, &singular, &tol)?);
    println!("S(singular || rho) = {}", relative_entropy(&singular, &rho, &tol)?);

    let a = random_mixed_hs(4, RngSeed(1))?;
    let b = random_mixed_hs(4, RngSeed(2))?;
    println!("random 4x4 pair: {}", relative_entropy(&a, &b, &tol)?);
    Ok(())
}
