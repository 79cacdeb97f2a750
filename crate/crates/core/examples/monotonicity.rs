//! Relative entropy before and after a portrait map.

use qportrait::entropy::{monotonicity_gap, portrait_nonneg_gap};
use qportrait::portraits::{BlockPartition, PortraitKind};
use qportrait::states::{random_mixed_hs, DensityMatrix, RngSeed};
use qportrait::Tolerances;

fn main() -> qportrait::Result<()> {
    let tol = Tolerances::default();

    let rho = DensityMatrix::from_diagonal(&[0.5, 0.25, 0.25])?;
    let sigma = DensityMatrix::maximally_mixed(3)?;
    let p = BlockPartition::with_lower(3, 1)?;
    let r = monotonicity_gap(&rho, &sigma, PortraitKind::FoldDiagonalBlocks, p, &tol)?;
    println!("{}: lhs {} rhs {} holds {}", r.label, r.lhs, r.rhs, r.holds);

    let rho = random_mixed_hs(6, RngSeed(10))?;
    let sigma = random_mixed_hs(6, RngSeed(11))?;
    for kind in PortraitKind::ALL {
        for p in BlockPartition::all(6) {
            let r = monotonicity_gap(&rho, &sigma, kind, p, &tol)?;
            println!("{:<28} gap {:.6}", r.label, r.gap_value());
        }
    }

    let r = portrait_nonneg_gap(&DensityMatrix::maximally_mixed(3)?, PortraitKind::FoldDiagonalBlocks, p, &tol)?;
    println!("S(padded portrait || I/3) = {}", r.lhs);
    Ok(())
}
