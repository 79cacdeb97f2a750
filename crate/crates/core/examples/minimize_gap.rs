//! Nelder-Mead search for a counterexample, printed as the JSON report.

use qportrait::search::{minimize_gap, MinimizeConfig};
use qportrait::states::RngSeed;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = MinimizeConfig::new("monotonicity:fold=1".parse()?, 3, 5, 500, RngSeed(1));
    let r = minimize_gap(&cfg)?;
    println!("{}", serde_json::to_string_pretty(&r)?);
    Ok(())
}
