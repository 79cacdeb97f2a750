//! Acceptance suite. Each test prints one `[PASS]`/`[FAIL]` line per criterion;
//! run with `cargo test --test acceptance -- --nocapture` to see them.
//!
//! Tests are serialized through a lock so the runtime limits measure one
//! criterion at a time.

use std::sync::Mutex;
use std::time::{Duration, Instant};

use qportrait::entropy::{
    chain_gaps, chain_reports, max_permutation_bound, monotonicity_gap, relative_entropy,
    ExtendedReal,
};
use qportrait::hermitian::{eigh, HermitianMatrix};
use qportrait::matrix::{ComplexMatrix, C64};
use qportrait::portraits::{chain, fold_map, trace_block_map, BlockPartition, PortraitKind};
use qportrait::scalar::{
    entropy_exp_bound, gibbs_gap, pairwise_exp_sum, rho_ln_rho, EigenvalueList,
};
use qportrait::search::{minimize_gap, MinimizeConfig, Target};
use qportrait::states::{
    partial_trace, DensityMatrix, ProbabilityVector, RngSeed, StateSampler, Subsystem,
};
use qportrait::Tolerances;

static SERIAL: Mutex<()> = Mutex::new(());

fn criterion(id: &str, title: &str, ok: bool, detail: String) {
    println!("[{}] {id}: {title} -- {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "{id} failed: {detail}");
}

fn tol() -> Tolerances {
    Tolerances::default()
}

fn hs_pair(s: &mut StateSampler, dim: usize) -> (DensityMatrix, DensityMatrix) {
    (s.mixed_hs(dim).unwrap(), s.mixed_hs(dim).unwrap())
}

#[test]
fn ac1_partial_trace_oracle() {
    let _g = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();
    let p = BlockPartition::new(2, 2).unwrap();
    let mut worst = 0.0f64;
    let mut s = StateSampler::new(RngSeed(1001));
    for _ in 0..1000 {
        let rho = s.mixed_hs(4).unwrap();
        let fold = fold_map(&rho, p).unwrap();
        let tb = trace_block_map(&rho, p).unwrap();
        let tr1 = partial_trace(&rho, (2, 2), Subsystem::First).unwrap();
        let tr2 = partial_trace(&rho, (2, 2), Subsystem::Second).unwrap();
        worst = worst
            .max(fold.matrix().max_abs_diff(tr1.matrix()))
            .max(tb.matrix().max_abs_diff(tr2.matrix()));
    }
    let elapsed = start.elapsed();
    criterion(
        "AC1",
        "fold/trace-block maps equal partial traces at (2,2)",
        worst <= 1e-12 && elapsed < Duration::from_secs(5),
        format!("max |delta| = {worst:.3e} (<= 1e-12), runtime {elapsed:.2?} (< 5 s)"),
    );
}

#[test]
fn ac2_new_inequality_all_partitions() {
    let _g = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();
    let t = tol();
    let mut min_gap = f64::INFINITY;
    let mut failures = 0usize;
    let mut configs = 0usize;
    for dim in 3..=8 {
        let parts = BlockPartition::all(dim);
        configs += 2 * parts.len();
        let mut s = StateSampler::new(RngSeed(2000 + dim as u64));
        for _ in 0..10_000 {
            let (rho, sigma) = hs_pair(&mut s, dim);
            for kind in PortraitKind::ALL {
                for &p in &parts {
                    let r = monotonicity_gap(&rho, &sigma, kind, p, &t).unwrap();
                    let g = r.gap_value();
                    min_gap = min_gap.min(g);
                    if !r.holds || g < -1e-9 {
                        failures += 1;
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    criterion(
        "AC2",
        "S(rho||sigma) >= S(M(rho)||M(sigma)) for both maps, dims 3-8, all m",
        failures == 0 && elapsed < Duration::from_secs(180),
        format!(
            "{configs} configurations x 10^4 pairs, failures {failures}, min gap {min_gap:.3e} (>= -1e-9), runtime {elapsed:.2?} (< 3 min)"
        ),
    );
}

#[test]
fn ac3_qutrit_worked_instance() {
    let _g = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let t = tol();
    let rho = DensityMatrix::from_diagonal(&[0.5, 0.25, 0.25]).unwrap();
    let sigma = DensityMatrix::maximally_mixed(3).unwrap();
    let p = BlockPartition::with_lower(3, 1).unwrap();
    let r = monotonicity_gap(&rho, &sigma, PortraitKind::FoldDiagonalBlocks, p, &t).unwrap();
    // Scalar KL on the diagonals:
    //   KL((1/2,1/4,1/4) || uniform) = ln 3 - 1.5 ln 2
    //   KL((3/4,1/4) || (2/3,1/3))   = 0.75 ln(9/8) + 0.25 ln(3/4)
    let lhs_want = 3f64.ln() - 1.5 * 2f64.ln();
    let rhs_want = 0.75 * (9.0f64 / 8.0).ln() + 0.25 * 0.75f64.ln();
    let frozen_lhs = 0.058_891_517_828_191_9;
    let frozen_rhs = 0.016_416_758_629_342_4;
    let ok = (r.lhs.value() - lhs_want).abs() <= 1e-9
        && (r.rhs.value() - rhs_want).abs() <= 1e-9
        && (lhs_want - frozen_lhs).abs() <= 1e-15
        && (rhs_want - frozen_rhs).abs() <= 1e-15
        && r.gap_value() > 0.0
        && r.holds;
    criterion(
        "AC3",
        "qutrit diag(1/2,1/4,1/4) vs I/3",
        ok,
        format!(
            "S = {:.12} (want {lhs_want:.12}), qubit portrait = {:.12} (want {rhs_want:.12}), gap = {:.12}",
            r.lhs.value(),
            r.rhs.value(),
            r.gap_value()
        ),
    );
}

#[test]
fn ac4_chain() {
    let _g = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let t = tol();
    let mut s = StateSampler::new(RngSeed(4004));
    let mut failures = 0usize;
    let mut worst_link = f64::INFINITY;
    for _ in 0..10_000 {
        let (rho, sigma) = hs_pair(&mut s, 4);
        let v = chain_gaps(&rho, &sigma, &t).unwrap();
        let reports = chain_reports(&v, &t);
        for r in &reports {
            worst_link = worst_link.min(r.gap_value());
        }
        if v.len() != 3 || reports.iter().any(|r| !r.holds || r.gap_value() < -1e-9) {
            failures += 1;
        }
    }

    // Fixture with distinct diagonal entries (not a random state).
    let fixture = DensityMatrix::new(
        HermitianMatrix::new(
            ComplexMatrix::from_rows(&[
                vec![C64::new(0.4, 0.0), C64::new(0.05, 0.02), C64::new(0.01, -0.03), C64::new(0.02, 0.0)],
                vec![C64::new(0.05, -0.02), C64::new(0.3, 0.0), C64::new(0.04, 0.01), C64::new(0.0, 0.02)],
                vec![C64::new(0.01, 0.03), C64::new(0.04, -0.01), C64::new(0.2, 0.0), C64::new(0.03, 0.0)],
                vec![C64::new(0.02, 0.0), C64::new(0.0, -0.02), C64::new(0.03, 0.0), C64::new(0.1, 0.0)],
            ])
            .unwrap(),
        )
        .unwrap(),
    )
    .unwrap();
    let c = chain(&fixture).unwrap();
    let r = fixture.matrix();
    let symbolic = c[1][(0, 0)] == r[(0, 0)] + r[(3, 3)]
        && c[2][(0, 0)] == r[(0, 0)] + r[(3, 3)] + r[(2, 2)]
        && c[1][(1, 2)] == r[(1, 2)]
        && c[2][(0, 1)] == r[(0, 1)];
    criterion(
        "AC4",
        "4x4 chain nonincreasing, final >= 0, corners rho11+rho44 then rho11+rho33+rho44",
        failures == 0 && symbolic,
        format!("10^4 pairs, failures {failures}, min link gap {worst_link:.3e}, fixture corners match: {symbolic}"),
    );
}

#[test]
fn ac5_permutation_bound() {
    let _g = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let t = tol();
    let mut s = StateSampler::new(RngSeed(5005));
    let mut failures = 0usize;
    let mut min_gap = f64::INFINITY;
    for _ in 0..10_000 {
        let (rho, sigma) = hs_pair(&mut s, 3);
        let b = max_permutation_bound(&rho, &sigma, &t).unwrap();
        let g = b.report.gap_value();
        min_gap = min_gap.min(g);
        if !b.report.holds || g < -1e-9 {
            failures += 1;
        }
    }
    criterion(
        "AC5",
        "S(rho||sigma) >= max over permutations of qubit-portrait S",
        failures == 0,
        format!("10^4 qutrit pairs, failures {failures}, min gap {min_gap:.3e} (>= -1e-9)"),
    );
}

#[test]
fn ac6_scalar_bounds() {
    let _g = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let t = tol();
    let mut s = StateSampler::new(RngSeed(6006));

    let mut pairwise_fail = 0usize;
    let mut saturation_worst = 0.0f64;
    for n in 1..=10usize {
        for _ in 0..100_000 {
            let scale = s.uniform(0.0, 5.0);
            let b: Vec<f64> = (0..n).map(|_| scale * s.normal()).collect();
            let r = pairwise_exp_sum(&EigenvalueList::new(b).unwrap(), &t).unwrap();
            if r.lhs.value() < (n * n) as f64 - 1e-9 || !r.holds {
                pairwise_fail += 1;
            }
        }
        let c = s.normal();
        let r = pairwise_exp_sum(&EigenvalueList::new(vec![c; n]).unwrap(), &t).unwrap();
        saturation_worst = saturation_worst.max((r.lhs.value() - (n * n) as f64).abs());
    }

    let mut gibbs_fail = 0usize;
    let mut gibbs_min = f64::INFINITY;
    let mut gibbs_tight_worst = 0.0f64;
    for i in 0..100_000usize {
        let n = 2 + i % 9;
        let scale = s.uniform(0.0, 5.0);
        let b: Vec<f64> = (0..n).map(|_| scale * s.normal()).collect();
        let w = ProbabilityVector::new(s.dirichlet(n)).unwrap();
        let bl = EigenvalueList::new(b.clone()).unwrap();
        let r = gibbs_gap(&bl, &w, &t).unwrap();
        gibbs_min = gibbs_min.min(r.gap_value());
        if r.gap_value() < -1e-12 || !r.holds {
            gibbs_fail += 1;
        }
        let z: f64 = b.iter().map(|x| (-x).exp()).sum();
        let g = ProbabilityVector::new(b.iter().map(|x| (-x).exp() / z).collect()).unwrap();
        gibbs_tight_worst = gibbs_tight_worst.max(gibbs_gap(&bl, &g, &t).unwrap().gap_value().abs());
    }

    let mut exp_fail = 0usize;
    let mut exp_special = 0usize;
    for i in 0..10_000usize {
        let dim = 2 + i % 7;
        let rho = s.mixed_hs(dim).unwrap();
        let b = if i % 2 == 0 {
            exp_special += 1;
            rho_ln_rho(&rho, &t)
        } else {
            let scale = s.uniform(0.05, 3.0);
            s.hermitian(dim).scaled(scale)
        };
        let r = entropy_exp_bound(&rho, &b, &t).unwrap();
        if !r.holds {
            exp_fail += 1;
        }
    }

    criterion(
        "AC6",
        "pairwise sum >= N^2, Gibbs gap >= 0, exp-entropy bound",
        pairwise_fail == 0
            && saturation_worst <= 1e-12
            && gibbs_fail == 0
            && gibbs_tight_worst <= 1e-12
            && exp_fail == 0,
        format!(
            "pairwise failures {pairwise_fail} (10^5 per N=1..10), saturation |lhs-N^2| {saturation_worst:.1e}; \
             gibbs failures {gibbs_fail}, min gap {gibbs_min:.3e}, |gap| at Gibbs(b) {gibbs_tight_worst:.1e}; \
             exp bound failures {exp_fail} of 10^4 ({exp_special} with B = rho ln rho)"
        ),
    );
}

#[test]
fn ac7_klein_and_support() {
    let _g = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let t = tol();
    let mut s = StateSampler::new(RngSeed(7007));
    let mut self_worst = 0.0f64;
    for i in 0..1000 {
        let rho = s.mixed_hs(2 + i % 7).unwrap();
        self_worst = self_worst.max(relative_entropy(&rho, &rho, &t).unwrap().value().abs());
    }

    let d = |p: &[f64]| DensityMatrix::from_diagonal(p).unwrap();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let plus = DensityMatrix::from_pure(&[C64::new(h, 0.0), C64::new(h, 0.0)]).unwrap();
    let qutrit = s.mixed_hs(3).unwrap();
    let pure3 = s.pure(3).unwrap();
    // (rho, sigma, expect +inf, finite value if known)
    let cases: Vec<(&str, DensityMatrix, DensityMatrix, bool, Option<f64>)> = vec![
        ("I/2 vs |0><0|", d(&[0.5, 0.5]), d(&[1.0, 0.0]), true, None),
        ("|+><+| vs |0><0|", plus.clone(), d(&[1.0, 0.0]), true, None),
        ("full-rank qutrit vs pure", qutrit, pure3, true, None),
        ("|0><0| vs |0><0|", d(&[1.0, 0.0]), d(&[1.0, 0.0]), false, Some(0.0)),
        ("|0><0| vs diag(1/2,0,1/2)", d(&[1.0, 0.0, 0.0]), d(&[0.5, 0.0, 0.5]), false, Some(2f64.ln())),
        ("diag(.7,.3,0) vs diag(.2,.3,.5)", d(&[0.7, 0.3, 0.0]), d(&[0.2, 0.3, 0.5]), false, Some(0.7 * 3.5f64.ln())),
    ];
    let mut bad = Vec::new();
    for (name, rho, sigma, inf, val) in &cases {
        let v = relative_entropy(rho, sigma, &t).unwrap();
        let ok = if *inf {
            v == ExtendedReal::INFINITY
        } else {
            v.is_finite() && val.is_none_or(|x| (v.value() - x).abs() <= 1e-12)
        };
        if !ok {
            bad.push(format!("{name}: got {v}"));
        }
    }
    criterion(
        "AC7",
        "S(rho||rho) ~ 0 and +inf exactly on support violation",
        self_worst <= 1e-10 && bad.is_empty(),
        format!("max |S(rho||rho)| {self_worst:.1e} (<= 1e-10); support fixtures {}/6 ok {bad:?}", 6 - bad.len()),
    );
}

#[test]
fn ac8_search_finds_no_counterexample() {
    let _g = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();
    let mut overall = f64::INFINITY;
    let mut worst_case = String::new();
    let mut runs = 0usize;
    let mut violations = 0usize;
    let mut errors = 0usize;
    for target in Target::ALL {
        for dim in 2..=6 {
            if !target.supports_dim(dim) {
                continue;
            }
            let cfg = MinimizeConfig::new(target, dim, 50, 2000, RngSeed(8000 + dim as u64));
            let r = minimize_gap(&cfg).unwrap();
            runs += 1;
            violations += r.violations;
            errors += r.errors;
            if r.min_gap < overall {
                overall = r.min_gap;
                worst_case = format!("{target} at dim {dim}");
            }
        }
    }
    let elapsed = start.elapsed();
    criterion(
        "AC8",
        "simplex search over every target, dims 2-6, 50 restarts x 2000 iterations",
        overall >= -1e-9 && violations == 0 && elapsed < Duration::from_secs(600),
        format!(
            "{runs} runs, min gap {overall:.3e} ({worst_case}), violations {violations}, evaluation errors {errors}, runtime {elapsed:.2?} (< 10 min)"
        ),
    );
}

#[test]
fn ac9_eigensolver_quality() {
    let _g = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let mut s = StateSampler::new(RngSeed(9009));
    let mut residual = 0.0f64;
    let mut unitarity = 0.0f64;
    for dim in 2..=16 {
        for _ in 0..1000 {
            let h = s.hermitian(dim);
            let sp = eigh(&h).unwrap();
            residual = residual.max(sp.reconstruction_residual(&h));
            unitarity = unitarity.max(sp.unitarity_defect());
        }
    }
    criterion(
        "AC9",
        "Jacobi reconstruction and unitarity, 1000 matrices per dim 2-16",
        residual <= 1e-11 && unitarity <= 1e-11,
        format!("max residual {residual:.2e}, max |U^dagger U - I| {unitarity:.2e} (both <= 1e-11)"),
    );
}
