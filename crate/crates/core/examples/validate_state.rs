//! Parse a density matrix from JSON, validate it, and print its spectrum.
//!
//! cargo run --example validate_state

use qportrait::io::parse_matrix;
use qportrait::states::validate_density;
use qportrait::Tolerances;

const GOOD: &str = r#"{"dim": 2, "entries": [[[0.75, 0.0], [0.1, -0.2]], [[0.1, 0.2], [0.25, 0.0]]]}"#;
const BAD: &str = r#"{"dim": 2, "entries": [[[0.6, 0.0], [0.5, 0.0]], [[0.5, 0.0], [0.4, 0.0]]]}"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tol = Tolerances::default();

    let rho = validate_density(&parse_matrix(GOOD)?, &tol)?;
    println!("dim {}, trace {:.15}", rho.dim(), rho.trace());
    println!("eigenvalues {:?}", rho.eigenvalues());

    match validate_density(&parse_matrix(BAD)?, &tol) {
        Ok(_) => println!("unexpectedly valid"),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}
