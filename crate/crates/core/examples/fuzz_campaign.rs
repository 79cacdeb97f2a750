//! Random sampling of every target and a histogram of the gaps.

use qportrait::search::{fuzz, FuzzConfig, Target};
use qportrait::states::RngSeed;
use qportrait::Tolerances;

fn main() -> qportrait::Result<()> {
    for target in Target::ALL {
        let cfg = FuzzConfig {
            target,
            dim: 4,
            samples: 2000,
            seed: RngSeed::DEFAULT,
            tol: Tolerances::default(),
        };
        let r = fuzz(&cfg)?;
        println!(
            "{:<26} min gap {:+.3e}  violations {}  infinite {}",
            r.target, r.min_gap, r.violations, r.histogram.infinite
        );
    }

    let cfg = FuzzConfig {
        target: "monotonicity:traceblocks".parse()?,
        dim: 3,
        samples: 500,
        seed: RngSeed(7),
        tol: Tolerances::default(),
    };
    print!("{}", fuzz(&cfg)?.histogram.to_csv());
    Ok(())
}
