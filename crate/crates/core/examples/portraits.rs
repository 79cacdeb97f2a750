//! Both portrait maps on a qutrit, for every block size.

use qportrait::portraits::{embed_padded, portrait, BlockPartition, PortraitKind};
use qportrait::states::{random_mixed_hs, RngSeed};

fn main() -> qportrait::Result<()> {
    let rho = random_mixed_hs(5, RngSeed(3))?;
    for kind in PortraitKind::ALL {
        for p in BlockPartition::all(rho.dim()) {
            let out = portrait(&rho, kind, p)?;
            let lam = out.eigenvalues();
            println!(
                "{:<12} n_top={} m={}  trace {:.12}  min eig {:+.3e}",
                kind.name(),
                p.n_top(),
                p.m(),
                out.trace(),
                lam[0]
            );
        }
    }

    let p = BlockPartition::with_lower(5, 2)?;
    let small = portrait(&rho, PortraitKind::FoldDiagonalBlocks, p)?;
    let padded = embed_padded(&small, 5)?;
    println!("padded fold portrait, top-left {:.6}", padded.matrix()[(0, 0)]);
    Ok(())
}
