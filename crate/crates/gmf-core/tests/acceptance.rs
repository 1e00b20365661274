//! Acceptance gate: one test per criterion, each printing a single
//! PASS/FAIL line (run with `--nocapture` to see the lines for passing
//! criteria; failing criteria always surface through the panic message).
//!
//! Tolerances are pinned as constants next to the criterion that uses them.

mod common;

use std::time::Instant;

use gmf_core::caps::Caps;
use gmf_core::gmf::GmfSpec;
use gmf_core::harness::{
    suite_css, suite_detm_superadd, suite_induced_superadd, suite_scalar_strong_superadd,
    suite_tensor_superadd, suite_thompson, SuiteReport, TrialConfig,
};
use gmf_core::induced::{compression_residual, induced_entrywise, StarBasis};
use gmf_core::linalg::{
    determinant, permanent, random_matrix, random_psd, rel_residual, trial_rng, BlockMatrix,
};
use gmf_core::perm::{
    binomial, enumerate_characters, two_generated_subgroups, Character, PermutationGroup,
};
use gmf_core::symclass::{enumerate_sequences, stabilizer, stabilizer_character_sum, SymmetryClass};

/// Margin tolerance for the Loewner-order and scalar inequality suites.
const TOL_INEQUALITY: f64 = 1e-9;
/// Relative tolerance for construction cross-checks and identities.
const TOL_IDENTITY: f64 = 1e-10;
/// Absolute tolerance for exact combinatorial quantities.
const TOL_EXACT: f64 = 1e-12;
/// Relative tolerance for fast-path-versus-oracle agreement.
const TOL_ORACLE: f64 = 1e-10;
/// Wall-clock budget for the blockwise superadditivity grid, in seconds.
const GRID_TIME_BUDGET: f64 = 60.0;

type Outcome = Result<String, String>;

fn report(criterion: usize, description: &str, outcome: Outcome) {
    match &outcome {
        Ok(detail) => println!("ACCEPTANCE {criterion}: PASS — {description} ({detail})"),
        Err(detail) => println!("ACCEPTANCE {criterion}: FAIL — {description} ({detail})"),
    }
    if let Err(detail) = outcome {
        panic!("acceptance criterion {criterion} failed: {detail}");
    }
}

fn err<T>(e: impl std::fmt::Display) -> Result<T, String> {
    Err(e.to_string())
}

fn check_suite(report: &SuiteReport, runs: &mut usize, min_margin: &mut f64) -> Result<(), String> {
    *runs += 1;
    if let Some(margin) = report.min_margin {
        *min_margin = min_margin.min(margin);
    }
    if !report.passed() {
        return Err(format!(
            "{} failed with {} violations, first: trial {} case {} witness {:.3e}",
            report.suite,
            report.failures.len(),
            report.failures[0].trial,
            report.failures[0].case,
            report.failures[0].witness
        ));
    }
    Ok(())
}

/// Groups for a degree used by the inequality grids: full symmetric,
/// cyclic, and trivial.
fn grid_groups(n: usize, caps: &Caps) -> Result<Vec<PermutationGroup>, String> {
    Ok(vec![
        PermutationGroup::symmetric(n, caps).map_err(|e| e.to_string())?,
        PermutationGroup::cyclic(n, caps).map_err(|e| e.to_string())?,
        PermutationGroup::trivial(n, caps).map_err(|e| e.to_string())?,
    ])
}

#[test]
fn criterion_1_blockwise_strong_superadditivity_grid() {
    let caps = Caps::default();
    let outcome = (|| -> Outcome {
        let start = Instant::now();
        let mut runs = 0usize;
        let mut min_margin = f64::INFINITY;
        let mut seed = 0x1000;
        for (m, n) in [(2usize, 2usize), (2, 3), (3, 2)] {
            for group in grid_groups(n, &caps)? {
                let characters = enumerate_characters(&group).or_else(err)?;
                for character in characters {
                    seed += 1;
                    let cfg =
                        TrialConfig::new(m, n, group.clone(), character, 200, seed, TOL_INEQUALITY)
                            .or_else(err)?;
                    check_suite(&suite_css(&cfg).or_else(err)?, &mut runs, &mut min_margin)?;
                }
            }
        }
        let elapsed = start.elapsed().as_secs_f64();
        if elapsed > GRID_TIME_BUDGET {
            return Err(format!(
                "grid took {elapsed:.1}s, over the {GRID_TIME_BUDGET:.0}s budget"
            ));
        }
        Ok(format!(
            "{runs} suite runs x 200 trials, min normalized margin {min_margin:.3e}, {elapsed:.1}s"
        ))
    })();
    report(
        1,
        "blockwise strong superadditivity across the (m, n, group, character) grid at tol 1e-9",
        outcome,
    );
}

#[test]
fn criterion_2_scalar_strong_superadditivity() {
    let caps = Caps::default();
    let outcome = (|| -> Outcome {
        let mut runs = 0usize;
        let mut min_margin = f64::INFINITY;
        let mut seed = 0x2000;
        for n in 1..=4usize {
            let symmetric = PermutationGroup::symmetric(n, &caps).or_else(err)?;
            // The determinant case and the permanent case, then every
            // degree-1 character of the cyclic group for coverage of
            // complex-valued characters.
            let mut specs = vec![
                (symmetric.clone(), Character::sign(&symmetric)),
                (symmetric.clone(), Character::trivial(&symmetric)),
            ];
            let cyclic = PermutationGroup::cyclic(n, &caps).or_else(err)?;
            for character in enumerate_characters(&cyclic).or_else(err)? {
                specs.push((cyclic.clone(), character));
            }
            for (group, character) in specs {
                seed += 1;
                let cfg = TrialConfig::new(1, n, group, character, 500, seed, TOL_INEQUALITY)
                    .or_else(err)?;
                check_suite(
                    &suite_scalar_strong_superadd(&cfg).or_else(err)?,
                    &mut runs,
                    &mut min_margin,
                )?;
            }
        }
        Ok(format!(
            "{runs} suite runs x 500 trials, n <= 4, min normalized margin {min_margin:.3e}"
        ))
    })();
    report(
        2,
        "scalar strong superadditivity (determinant, permanent, cyclic characters) at tol 1e-9",
        outcome,
    );
}

#[test]
fn criterion_3_block_determinant_superadditivity() {
    let caps = Caps::default();
    let outcome = (|| -> Outcome {
        let mut runs = 0usize;
        let mut min_margin = f64::INFINITY;
        let mut seed = 0x3000;
        for m in 1..=3usize {
            for n in 1..=3usize {
                seed += 1;
                let group = PermutationGroup::trivial(n, &caps).or_else(err)?;
                let character = Character::trivial(&group);
                let cfg = TrialConfig::new(m, n, group, character, 200, seed, TOL_INEQUALITY)
                    .or_else(err)?;
                check_suite(
                    &suite_detm_superadd(&cfg).or_else(err)?,
                    &mut runs,
                    &mut min_margin,
                )?;
            }
        }
        Ok(format!(
            "{runs} suite runs x 200 trials (Loewner and scalar forms), min normalized margin {min_margin:.3e}"
        ))
    })();
    report(
        3,
        "blockwise-determinant superadditivity for m <= 3, n <= 3",
        outcome,
    );
}

#[test]
fn criterion_4_tensor_and_induced_superadditivity() {
    let caps = Caps::default();
    let outcome = (|| -> Outcome {
        let mut runs = 0usize;
        let mut min_margin = f64::INFINITY;
        let mut seed = 0x4000;
        for side in 1..=3usize {
            for power in 1..=3usize {
                seed += 1;
                let group = PermutationGroup::trivial(1, &caps).or_else(err)?;
                let character = Character::trivial(&group);
                let cfg = TrialConfig::new(1, side, group, character, 100, seed, TOL_INEQUALITY)
                    .or_else(err)?;
                check_suite(
                    &suite_tensor_superadd(&cfg, power, &caps).or_else(err)?,
                    &mut runs,
                    &mut min_margin,
                )?;
            }
        }
        let mut skipped_classes = 0usize;
        for (group, side) in induced_class_grid(&caps)? {
            for character in enumerate_characters(&group).or_else(err)? {
                let class =
                    SymmetryClass::new(side, group.clone(), character.clone(), &caps).or_else(err)?;
                if class.dimension() > 50 {
                    skipped_classes += 1;
                    continue;
                }
                seed += 1;
                let cfg = TrialConfig::new(1, side, group.clone(), character, 100, seed, TOL_INEQUALITY)
                    .or_else(err)?;
                check_suite(
                    &suite_induced_superadd(&cfg, &caps).or_else(err)?,
                    &mut runs,
                    &mut min_margin,
                )?;
            }
        }
        Ok(format!(
            "{runs} suite runs x 100 trials, {skipped_classes} oversized classes skipped, min normalized margin {min_margin:.3e}"
        ))
    })();
    report(
        4,
        "tensor-power and induced-matrix strong superadditivity (sides <= 3, powers <= 3)",
        outcome,
    );
}

/// Symmetry-class grid shared by criteria 4 and 5: tensor powers up to 3,
/// matrix sides up to 3, symmetric and cyclic groups.
fn induced_class_grid(caps: &Caps) -> Result<Vec<(PermutationGroup, usize)>, String> {
    let mut grid = Vec::new();
    for power in 1..=3usize {
        for side in 1..=3usize {
            grid.push((
                PermutationGroup::symmetric(power, caps).map_err(|e| e.to_string())?,
                side,
            ));
            if power >= 3 {
                grid.push((
                    PermutationGroup::cyclic(power, caps).map_err(|e| e.to_string())?,
                    side,
                ));
            }
        }
    }
    Ok(grid)
}

#[test]
fn criterion_5_construction_cross_validation() {
    let caps = Caps::default();
    let outcome = (|| -> Outcome {
        let mut classes = 0usize;
        let mut max_entrywise = 0.0f64;
        let mut max_multiplicative = 0.0f64;
        let mut seed = 0x5000;
        for (group, side) in induced_class_grid(&caps)? {
            for character in enumerate_characters(&group).or_else(err)? {
                let class =
                    SymmetryClass::new(side, group.clone(), character, &caps).or_else(err)?;
                if class.dimension() == 0 {
                    continue;
                }
                let basis = StarBasis::new(class, &caps).or_else(err)?;
                classes += 1;
                seed += 1;
                let mut rng = trial_rng(seed, 0);
                for trial in 0..100 {
                    // Hermitian draw for the entrywise formula, arbitrary
                    // pair for multiplicativity.
                    let h = random_matrix(side, side, &mut rng).hermitian_part();
                    let compressed = basis.induced(&h, &caps).or_else(err)?;
                    let entrywise = induced_entrywise(&h, basis.class(), &caps).or_else(err)?;
                    let residual = rel_residual(&entrywise, &compressed);
                    max_entrywise = max_entrywise.max(residual);
                    if residual > TOL_IDENTITY {
                        return Err(format!(
                            "entrywise/compression mismatch {residual:.3e} on trial {trial}"
                        ));
                    }
                    let x = random_matrix(side, side, &mut rng);
                    let y = random_matrix(side, side, &mut rng);
                    let product = basis.induced(&(&x * &y), &caps).or_else(err)?;
                    let factored =
                        &basis.induced(&x, &caps).or_else(err)? * &basis.induced(&y, &caps).or_else(err)?;
                    let residual = rel_residual(&product, &factored);
                    max_multiplicative = max_multiplicative.max(residual);
                    if residual > TOL_IDENTITY {
                        return Err(format!(
                            "multiplicativity residual {residual:.3e} on trial {trial}"
                        ));
                    }
                }
            }
        }
        Ok(format!(
            "{classes} classes x 100 trials, max entrywise residual {max_entrywise:.3e}, max multiplicativity residual {max_multiplicative:.3e}"
        ))
    })();
    report(
        5,
        "entrywise construction matches compression; induced map is multiplicative (tol 1e-10)",
        outcome,
    );
}

#[test]
fn criterion_6_blockwise_compression_identity() {
    let caps = Caps::default();
    let outcome = (|| -> Outcome {
        let mut max_residual = 0.0f64;
        let group = PermutationGroup::symmetric(2, &caps).or_else(err)?;
        for character in [Character::sign(&group), Character::trivial(&group)] {
            let class = SymmetryClass::new(2, group.clone(), character, &caps).or_else(err)?;
            let basis = StarBasis::new(class, &caps).or_else(err)?;
            let mut rng = trial_rng(0x6000, 0);
            for trial in 0..100 {
                let blocks = BlockMatrix::from_flat(&random_psd(4, &mut rng), 2).or_else(err)?;
                let residual = compression_residual(&blocks, &basis, &caps).or_else(err)?;
                max_residual = max_residual.max(residual);
                if residual > TOL_IDENTITY {
                    return Err(format!(
                        "compression residual {residual:.3e} on trial {trial}"
                    ));
                }
            }
        }
        Ok(format!(
            "2 characters x 100 PSD block matrices, max residual {max_residual:.3e}"
        ))
    })();
    report(
        6,
        "blockwise induced matrices agree with the compressed big induced matrix (tol 1e-10)",
        outcome,
    );
}

#[test]
fn criterion_7_thompson_determinant_bound() {
    let caps = Caps::default();
    let outcome = (|| -> Outcome {
        let mut runs = 0usize;
        let mut min_margin = f64::INFINITY;
        let mut skipped = 0u64;
        let mut seed = 0x7000;
        for m in 1..=3usize {
            for n in 1..=3usize {
                seed += 1;
                let group = PermutationGroup::trivial(n, &caps).or_else(err)?;
                let character = Character::trivial(&group);
                let cfg = TrialConfig::new(m, n, group, character, 500, seed, TOL_INEQUALITY)
                    .or_else(err)?;
                let suite = suite_thompson(&cfg).or_else(err)?;
                skipped += suite.skipped;
                check_suite(&suite, &mut runs, &mut min_margin)?;
            }
        }
        Ok(format!(
            "{runs} suite runs x 500 trials (bound, unit-diagonal reformulation, 2-block base identity), {skipped} singular draws skipped, min normalized margin {min_margin:.3e}"
        ))
    })();
    report(
        7,
        "block-determinant bound det(flatten) <= det(det_m) with Cholesky reformulation >= 1",
        outcome,
    );
}

#[test]
fn criterion_8_combinatorial_exactness() {
    let caps = Caps::default();
    let outcome = (|| -> Outcome {
        // Character-stabilizer sums are exactly nu(alpha) or 0.
        let mut sums_checked = 0usize;
        let mut worst = 0.0f64;
        for degree in 1..=4usize {
            for group in two_generated_subgroups(degree, &caps).or_else(err)? {
                if group.order() > 24 {
                    continue;
                }
                let characters = enumerate_characters(&group).or_else(err)?;
                for n in 1..=4usize {
                    for alpha in enumerate_sequences(degree, n, &caps).or_else(err)? {
                        let nu = stabilizer(&alpha, &group).len() as f64;
                        for character in &characters {
                            let sum = stabilizer_character_sum(&alpha, &group, character);
                            let deviation = (sum - gmf_core::C64::new(nu, 0.0))
                                .norm()
                                .min(sum.norm());
                            worst = worst.max(deviation);
                            sums_checked += 1;
                            if deviation > TOL_EXACT {
                                return Err(format!(
                                    "stabilizer character sum {sum} is neither 0 nor {nu} (deviation {deviation:.3e})"
                                ));
                            }
                        }
                    }
                }
            }
        }
        // Dimension identities for the full symmetric group.
        let mut dims_checked = 0usize;
        for m in 1..=5usize {
            let group = PermutationGroup::symmetric(m, &caps).or_else(err)?;
            for n in 1..=5usize {
                let symmetric_dim =
                    SymmetryClass::new(n, group.clone(), Character::trivial(&group), &caps)
                        .or_else(err)?
                        .dimension();
                if symmetric_dim != binomial(n + m - 1, m) {
                    return Err(format!(
                        "symmetric class dimension {symmetric_dim} != C({}, {m}) for m={m}, n={n}",
                        n + m - 1
                    ));
                }
                let antisymmetric_dim =
                    SymmetryClass::new(n, group.clone(), Character::sign(&group), &caps)
                        .or_else(err)?
                        .dimension();
                if antisymmetric_dim != binomial(n, m) {
                    return Err(format!(
                        "antisymmetric class dimension {antisymmetric_dim} != C({n}, {m}) for m={m}, n={n}"
                    ));
                }
                dims_checked += 2;
            }
        }
        Ok(format!(
            "{sums_checked} character-stabilizer sums exact to {worst:.1e}; {dims_checked} closed-form dimensions match"
        ))
    })();
    report(
        8,
        "character-stabilizer sums are exactly nu(alpha) or 0; class dimensions match binomials",
        outcome,
    );
}

#[test]
fn criterion_9_fast_paths_match_brute_force() {
    let caps = Caps::default();
    let outcome = (|| -> Outcome {
        let mut checked = 0usize;
        let mut worst = 0.0f64;
        for n in 1..=6usize {
            let mut rng = trial_rng(0x9000 + n as u64, 0);
            for _ in 0..5 {
                let a = random_matrix(n, n, &mut rng);
                let det_fast = determinant(&a).or_else(err)?;
                let det_oracle = common::oracle_determinant(&a);
                let per_fast = permanent(&a, &caps).or_else(err)?;
                let per_oracle = common::oracle_permanent(&a);
                // The evaluator must agree regardless of which code path
                // it dispatches to at this degree.
                let det_eval = GmfSpec::determinant(n, &caps)
                    .or_else(err)?
                    .evaluate(&a)
                    .or_else(err)?;
                let per_eval = GmfSpec::permanent(n, &caps)
                    .or_else(err)?
                    .evaluate(&a)
                    .or_else(err)?;
                for (computed, oracle) in [
                    (det_fast, det_oracle),
                    (det_eval, det_oracle),
                    (per_fast, per_oracle),
                    (per_eval, per_oracle),
                ] {
                    let error = common::rel_error(computed, oracle);
                    worst = worst.max(error);
                    checked += 1;
                    if error > TOL_ORACLE {
                        return Err(format!(
                            "n={n}: computed {computed} vs oracle {oracle}, relative error {error:.3e}"
                        ));
                    }
                }
            }
        }
        // Degree 7 exercises the fast-path dispatch inside the evaluator.
        let mut rng = trial_rng(0x9100, 0);
        let a = random_matrix(7, 7, &mut rng);
        let dispatched = GmfSpec::determinant(7, &caps)
            .or_else(err)?
            .evaluate(&a)
            .or_else(err)?;
        let error = common::rel_error(dispatched, determinant(&a).or_else(err)?);
        worst = worst.max(error);
        checked += 1;
        if error > TOL_ORACLE {
            return Err(format!("degree-7 dispatch disagrees, error {error:.3e}"));
        }
        Ok(format!(
            "{checked} comparisons, worst relative error {worst:.3e}"
        ))
    })();
    report(
        9,
        "elimination determinant and inclusion-exclusion permanent match the permutation-sum oracle (n <= 6, tol 1e-10)",
        outcome,
    );
}
