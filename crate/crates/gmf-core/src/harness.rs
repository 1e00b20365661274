//! Seeded verification suites for the positivity and superadditivity
//! properties of generalized matrix functions.
//!
//! Every suite draws reproducible pseudo-random inputs (PSD matrices via
//! Gram construction), evaluates one inequality per labeled sub-case, and
//! aggregates the outcomes into a [`SuiteReport`].  Trials are independent:
//! trial `t` derives its generator stream from `(seed, t)`, so suites may
//! run trials in parallel and still produce schedule-independent reports.
//!
//! The inequalities covered, for `Phi` the blockwise generalized-matrix-
//! function map and `K` the induced matrix:
//!
//! * scalar strong superadditivity: `d(A+B+C) + d(C) >= d(A+C) + d(B+C)`
//!   for PSD `A`, `B`, `C`;
//! * complete strong superadditivity: the same inequality for `Phi` on PSD
//!   block matrices, in the Loewner order;
//! * tensor-power and induced-matrix strong superadditivity (the operator
//!   inequalities behind the blockwise result);
//! * blockwise-determinant superadditivity in Loewner and scalar form;
//! * complete positivity: `Phi` maps PSD block matrices to PSD matrices;
//! * the block-determinant bound `det(flatten(A)) <= det(det_m(A))`
//!   (Thompson's determinant inequality) together with its unit-diagonal
//!   Cholesky reformulation `det(det_m(T*T)) >= 1`.

use rayon::prelude::*;
use serde::Serialize;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::gmf::{det_m, GmfSpec};
use crate::induced::StarBasis;
use crate::linalg::{
    cholesky_upper, determinant, hermitian_eigenvalues, inverse_upper_triangular, kron_power,
    random_matrix, random_psd, rel_residual, trial_rng, BlockMatrix, ComplexMatrix, C64,
};
use crate::perm::{Character, PermutationGroup};
use crate::symclass::SymmetryClass;

/// Default relative tolerance for inequality margins.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Values that are mathematically real may carry an imaginary rounding
/// residue no larger than this, relative to `1 + |Re|`.
pub const IMAG_GUARD: f64 = 1e-10;

/// Tolerance for sub-cases where the inequality degenerates to an equality.
pub const EQUALITY_TOL: f64 = 1e-8;

/// Draws whose smallest eigenvalue falls below this fraction of the largest
/// are treated as singular and skipped by the Cholesky-based checks.
pub const SINGULAR_SKIP: f64 = 1e-10;

/// Maximum relative residual accepted when verifying `T*T` against the
/// input of a block Cholesky factorization.
pub const RECONSTRUCTION_TOL: f64 = 1e-10;

/// Shape, determinism, and tolerance parameters shared by all suites.
///
/// `m` is the block count and `n` the block size; suites that evaluate a
/// generalized matrix function on the blocks require `n` to equal the
/// degree of `group`.
#[derive(Debug, Clone)]
pub struct TrialConfig {
    m: usize,
    n: usize,
    group: PermutationGroup,
    character: Character,
    trials: u64,
    seed: u64,
    tol: f64,
}

impl TrialConfig {
    pub fn new(
        m: usize,
        n: usize,
        group: PermutationGroup,
        character: Character,
        trials: u64,
        seed: u64,
        tol: f64,
    ) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::Validation(format!(
                "block count and block size must be positive, got m={m}, n={n}"
            )));
        }
        if trials == 0 {
            return Err(Error::Validation("trial count must be at least 1".into()));
        }
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Error::Validation(format!(
                "tolerance must be a positive finite number, got {tol}"
            )));
        }
        if character.len() != group.order() {
            return Err(Error::Validation(format!(
                "character table has {} entries but the group has order {}",
                character.len(),
                group.order()
            )));
        }
        Ok(TrialConfig {
            m,
            n,
            group,
            character,
            trials,
            seed,
            tol,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn group(&self) -> &PermutationGroup {
        &self.group
    }

    pub fn character(&self) -> &Character {
        &self.character
    }

    pub fn trials(&self) -> u64 {
        self.trials
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// Serializable echo of the configuration for report output.
    fn summary(&self, power: Option<usize>) -> ConfigSummary {
        ConfigSummary {
            m: self.m,
            n: self.n,
            group_degree: self.group.degree(),
            group_order: self.group.order(),
            character: self.character.name().to_string(),
            trials: self.trials,
            seed: self.seed,
            tol: self.tol,
            power,
        }
    }

    fn require_gmf_degree(&self) -> Result<()> {
        if self.group.degree() != self.n {
            return Err(Error::Validation(format!(
                "block size {} must equal the group degree {} for generalized-matrix-function suites",
                self.n,
                self.group.degree()
            )));
        }
        Ok(())
    }
}

/// Configuration echo embedded in every report.
#[derive(Debug, Clone, Serialize)]
pub struct ConfigSummary {
    pub m: usize,
    pub n: usize,
    pub group_degree: usize,
    pub group_order: usize,
    pub character: String,
    pub trials: u64,
    pub seed: u64,
    pub tol: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub power: Option<usize>,
}

/// One recorded violation: which trial, which labeled sub-case, the raw
/// margin witness (smallest eigenvalue or scalar slack), and an FNV-1a
/// digest of the drawn inputs so the counterexample claim is replayable.
#[derive(Debug, Clone, Serialize)]
pub struct Failure {
    pub trial: u64,
    pub case: String,
    pub witness: f64,
    pub digest: String,
}

/// Aggregated outcome of one suite run.
///
/// `min_margin` is the smallest normalized margin `margin / scale` observed
/// over all checks (`None` when every trial was skipped); the suite passes
/// exactly when `failures` is empty.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub config: ConfigSummary,
    pub trials: u64,
    pub skipped: u64,
    pub failures: Vec<Failure>,
    pub min_margin: Option<f64>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// One-line human-readable result, used by command-line output.
    pub fn summary_line(&self) -> String {
        let margin = match self.min_margin {
            Some(v) => format!("{v:.3e}"),
            None => "n/a".to_string(),
        };
        format!(
            "{}: {} — trials {}, skipped {}, failures {}, min normalized margin {}",
            self.suite,
            if self.passed() { "PASS" } else { "FAIL" },
            self.trials,
            self.skipped,
            self.failures.len(),
            margin
        )
    }
}

/// FNV-1a 64-bit digest over the bit patterns of the drawn inputs.
struct InputDigest(u64);

impl InputDigest {
    fn new() -> Self {
        InputDigest(0xcbf2_9ce4_8422_2325)
    }

    fn push_u64(&mut self, value: u64) {
        for byte in value.to_le_bytes() {
            self.0 ^= u64::from(byte);
            self.0 = self.0.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }

    fn push_f64(&mut self, value: f64) {
        self.push_u64(value.to_bits());
    }

    fn push_matrix(&mut self, m: &ComplexMatrix) {
        self.push_u64(m.rows() as u64);
        self.push_u64(m.cols() as u64);
        for z in m.entries() {
            self.push_f64(z.re);
            self.push_f64(z.im);
        }
    }

    fn push_blocks(&mut self, b: &BlockMatrix) {
        self.push_u64(b.block_count() as u64);
        for i in 0..b.block_count() {
            for j in 0..b.block_count() {
                self.push_matrix(b.block(i, j));
            }
        }
    }

    fn hex(&self) -> String {
        format!("{:016x}", self.0)
    }
}

/// One inequality evaluation: passes when `margin >= -tol * scale`.
struct Check {
    case: &'static str,
    margin: f64,
    scale: f64,
    tol: f64,
}

/// Everything one trial contributes to the aggregate report.
struct TrialOutcome {
    digest: String,
    checks: Vec<Check>,
    skipped: u64,
}

/// Accumulates the labeled checks of a single trial.
struct TrialRecorder {
    digest: String,
    tol: f64,
    checks: Vec<Check>,
    skipped: u64,
}

impl TrialRecorder {
    fn new(digest: String, tol: f64) -> Self {
        TrialRecorder {
            digest,
            tol,
            checks: Vec::new(),
            skipped: 0,
        }
    }

    fn check(&mut self, case: &'static str, margin: f64, scale: f64) {
        let tol = self.tol;
        self.check_with_tol(case, margin, scale, tol);
    }

    fn check_with_tol(&mut self, case: &'static str, margin: f64, scale: f64, tol: f64) {
        self.checks.push(Check {
            case,
            margin,
            scale,
            tol,
        });
    }

    /// Real part of a value that is mathematically real; an oversized
    /// imaginary residue is recorded as an unconditional failure.
    fn real(&mut self, value: C64) -> f64 {
        if value.im.abs() > IMAG_GUARD * (1.0 + value.re.abs()) {
            self.check("imag_guard", -(1.0 + value.im.abs()), 1.0);
        }
        value.re
    }

    /// Records the Loewner comparison `x >= y` under the given label.
    fn loewner(&mut self, case: &'static str, x: &ComplexMatrix, y: &ComplexMatrix) -> Result<()> {
        let (lambda_min, scale) = loewner_margin(x, y)?;
        self.check(case, lambda_min, scale);
        Ok(())
    }

    fn skip(&mut self) {
        self.skipped += 1;
    }

    fn finish(self) -> TrialOutcome {
        TrialOutcome {
            digest: self.digest,
            checks: self.checks,
            skipped: self.skipped,
        }
    }
}

/// Smallest eigenvalue of `x - y` together with the comparison scale
/// `1 + max(|x|_max, |y|_max)`.
///
/// The scale is taken from the inputs rather than from their difference so
/// that near-equality cases (heavy cancellation) are judged relative to the
/// magnitude of the quantities actually computed.
fn loewner_margin(x: &ComplexMatrix, y: &ComplexMatrix) -> Result<(f64, f64)> {
    if x.rows() != y.rows() || x.cols() != y.cols() {
        return Err(Error::Shape(format!(
            "Loewner comparison needs equal shapes, got {}x{} vs {}x{}",
            x.rows(),
            x.cols(),
            y.rows(),
            y.cols()
        )));
    }
    if !x.is_square() {
        return Err(Error::Shape(format!(
            "Loewner comparison needs square matrices, got {}x{}",
            x.rows(),
            x.cols()
        )));
    }
    let scale = 1.0 + x.max_abs().max(y.max_abs());
    if x.rows() == 0 {
        return Ok((0.0, scale));
    }
    let diff = x - y;
    if diff.hermitian_defect() > crate::linalg::HERMITIAN_TOL * scale {
        return Err(Error::Validation(
            "Loewner comparison of matrices whose difference is not Hermitian".into(),
        ));
    }
    let eig = hermitian_eigenvalues(&diff.hermitian_part())?;
    Ok((eig[0], scale))
}

/// Whether `x >= y` in the Loewner order within `tol`, together with the
/// smallest eigenvalue of `x - y` as the witness.
///
/// The comparison passes when the smallest eigenvalue is at least
/// `-tol * (1 + max entry magnitude of x and y)`.
pub fn loewner_geq(x: &ComplexMatrix, y: &ComplexMatrix, tol: f64) -> Result<(bool, f64)> {
    let (lambda_min, scale) = loewner_margin(x, y)?;
    Ok((lambda_min >= -tol * scale, lambda_min))
}

/// Runs `trial_fn` for every trial index, in parallel, and aggregates the
/// outcomes in trial order so the report is schedule-independent.
fn run_suite<F>(
    suite: &'static str,
    cfg: &TrialConfig,
    power: Option<usize>,
    trial_fn: F,
) -> Result<SuiteReport>
where
    F: Fn(u64) -> Result<TrialOutcome> + Sync,
{
    let outcomes: Vec<TrialOutcome> = (0..cfg.trials)
        .into_par_iter()
        .map(&trial_fn)
        .collect::<Result<Vec<_>>>()?;

    let mut failures = Vec::new();
    let mut min_margin: Option<f64> = None;
    let mut skipped = 0;
    for (trial, outcome) in outcomes.iter().enumerate() {
        skipped += outcome.skipped;
        for check in &outcome.checks {
            let normalized = check.margin / check.scale;
            min_margin = Some(min_margin.map_or(normalized, |m| m.min(normalized)));
            if check.margin < -check.tol * check.scale {
                failures.push(Failure {
                    trial: trial as u64,
                    case: check.case.to_string(),
                    witness: check.margin,
                    digest: outcome.digest.clone(),
                });
            }
        }
    }
    Ok(SuiteReport {
        suite: suite.to_string(),
        config: cfg.summary(power),
        trials: cfg.trials,
        skipped,
        failures,
        min_margin,
    })
}

/// Digest of an ordered list of plain matrices.
fn digest_matrices(inputs: &[&ComplexMatrix]) -> String {
    let mut digest = InputDigest::new();
    for m in inputs {
        digest.push_matrix(m);
    }
    digest.hex()
}

/// Digest of an ordered list of block matrices.
fn digest_blocks(inputs: &[&BlockMatrix]) -> String {
    let mut digest = InputDigest::new();
    for b in inputs {
        digest.push_blocks(b);
    }
    digest.hex()
}

/// Records `d(A+B+C) + d(C) >= d(A+C) + d(B+C)` for one scalar map `d`.
fn scalar_case(
    rec: &mut TrialRecorder,
    case: &'static str,
    spec: &GmfSpec,
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    c: &ComplexMatrix,
) -> Result<()> {
    let t_abc = rec.real(spec.evaluate(&(&(a + b) + c))?);
    let t_c = rec.real(spec.evaluate(c)?);
    let t_ac = rec.real(spec.evaluate(&(a + c))?);
    let t_bc = rec.real(spec.evaluate(&(b + c))?);
    let margin = (t_abc + t_c) - (t_ac + t_bc);
    let scale = 1.0 + t_abc.abs().max(t_c.abs()).max(t_ac.abs()).max(t_bc.abs());
    rec.check(case, margin, scale);
    Ok(())
}

/// Strong superadditivity of the scalar generalized matrix function on PSD
/// inputs: `d(A+B+C) + d(C) >= d(A+C) + d(B+C)`.
///
/// Labeled sub-cases per trial: `main` (three random PSD draws), `c_zero`
/// (reduces to plain superadditivity `d(A+B) >= d(A) + d(B)`), and `b_zero`
/// (degenerates to equality).
pub fn suite_scalar_strong_superadd(cfg: &TrialConfig) -> Result<SuiteReport> {
    cfg.require_gmf_degree()?;
    let spec = GmfSpec::new(cfg.group.clone(), cfg.character.clone())?;
    run_suite("scalar_strong_superadditivity", cfg, None, |trial| {
        let mut rng = trial_rng(cfg.seed, trial);
        let a = random_psd(cfg.n, &mut rng);
        let b = random_psd(cfg.n, &mut rng);
        let c = random_psd(cfg.n, &mut rng);
        let zero = ComplexMatrix::zeros(cfg.n, cfg.n);
        let mut rec = TrialRecorder::new(digest_matrices(&[&a, &b, &c]), cfg.tol);
        scalar_case(&mut rec, "main", &spec, &a, &b, &c)?;
        scalar_case(&mut rec, "c_zero", &spec, &a, &b, &zero)?;
        scalar_case(&mut rec, "b_zero", &spec, &a, &zero, &c)?;
        Ok(rec.finish())
    })
}

/// Records `Phi(A+B+C) + Phi(C) >= Phi(A+C) + Phi(B+C)` in the Loewner
/// order for the blockwise map `Phi`.
fn blockwise_case(
    rec: &mut TrialRecorder,
    case: &'static str,
    spec: &GmfSpec,
    a: &BlockMatrix,
    b: &BlockMatrix,
    c: &BlockMatrix,
) -> Result<()> {
    let lhs = &spec.block_map(&(&(a + b) + c))? + &spec.block_map(c)?;
    let rhs = &spec.block_map(&(a + c))? + &spec.block_map(&(b + c))?;
    rec.loewner(case, &lhs, &rhs)
}

/// Complete strong superadditivity: the blockwise generalized-matrix-
/// function map `Phi` on `m x m` block matrices with `n x n` blocks
/// satisfies `Phi(A+B+C) + Phi(C) >= Phi(A+C) + Phi(B+C)` in the Loewner
/// order for PSD block matrices.
///
/// Labeled sub-cases per trial: `main`, `c_zero`, `b_zero` (equality).
pub fn suite_css(cfg: &TrialConfig) -> Result<SuiteReport> {
    cfg.require_gmf_degree()?;
    let spec = GmfSpec::new(cfg.group.clone(), cfg.character.clone())?;
    let side = cfg.m * cfg.n;
    run_suite("blockwise_strong_superadditivity", cfg, None, |trial| {
        let mut rng = trial_rng(cfg.seed, trial);
        let a = BlockMatrix::from_flat(&random_psd(side, &mut rng), cfg.m)?;
        let b = BlockMatrix::from_flat(&random_psd(side, &mut rng), cfg.m)?;
        let c = BlockMatrix::from_flat(&random_psd(side, &mut rng), cfg.m)?;
        let zero = BlockMatrix::from_flat(&ComplexMatrix::zeros(side, side), cfg.m)?;
        let mut rec = TrialRecorder::new(digest_blocks(&[&a, &b, &c]), cfg.tol);
        blockwise_case(&mut rec, "main", &spec, &a, &b, &c)?;
        blockwise_case(&mut rec, "c_zero", &spec, &a, &b, &zero)?;
        blockwise_case(&mut rec, "b_zero", &spec, &a, &zero, &c)?;
        Ok(rec.finish())
    })
}

/// Records `X^k(A+B+C) + X^k(C) >= X^k(A+C) + X^k(B+C)` for one lifting
/// `X^k` (Kronecker power or induced matrix).
fn lifted_case(
    rec: &mut TrialRecorder,
    case: &'static str,
    lift: &(impl Fn(&ComplexMatrix) -> Result<ComplexMatrix> + Sync),
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    c: &ComplexMatrix,
) -> Result<()> {
    let lhs = &lift(&(&(a + b) + c))? + &lift(c)?;
    let rhs = &lift(&(a + c))? + &lift(&(b + c))?;
    rec.loewner(case, &lhs, &rhs)
}

/// Strong superadditivity of the Kronecker power on PSD matrices:
/// `(A+B+C)^{⊗k} + C^{⊗k} >= (A+C)^{⊗k} + (B+C)^{⊗k}`.
///
/// Matrices are `n x n` with `n` taken from the configuration; `power` is
/// the Kronecker exponent `k`.  Sub-cases: `main`, `c_zero`, `b_zero`.
pub fn suite_tensor_superadd(cfg: &TrialConfig, power: usize, caps: &Caps) -> Result<SuiteReport> {
    let lift = |x: &ComplexMatrix| kron_power(x, power, caps);
    // Surface capacity errors before spawning trials.
    lift(&ComplexMatrix::zeros(cfg.n, cfg.n))?;
    run_suite(
        "tensor_power_strong_superadditivity",
        cfg,
        Some(power),
        |trial| {
            let mut rng = trial_rng(cfg.seed, trial);
            let a = random_psd(cfg.n, &mut rng);
            let b = random_psd(cfg.n, &mut rng);
            let c = random_psd(cfg.n, &mut rng);
            let zero = ComplexMatrix::zeros(cfg.n, cfg.n);
            let mut rec = TrialRecorder::new(digest_matrices(&[&a, &b, &c]), cfg.tol);
            lifted_case(&mut rec, "main", &lift, &a, &b, &c)?;
            lifted_case(&mut rec, "c_zero", &lift, &a, &b, &zero)?;
            lifted_case(&mut rec, "b_zero", &lift, &a, &zero, &c)?;
            Ok(rec.finish())
        },
    )
}

/// Strong superadditivity of the induced matrix on PSD inputs:
/// `K(A+B+C) + K(C) >= K(A+C) + K(B+C)` in the Loewner order.
///
/// `K` is built from the symmetry class of the configured group (acting as
/// tensor-factor permutations, so the group degree is the tensor power) and
/// character, on `n x n` matrices.  A class with an empty admissible-orbit
/// set yields `0 x 0` induced matrices; such runs are reported as skipped.
pub fn suite_induced_superadd(cfg: &TrialConfig, caps: &Caps) -> Result<SuiteReport> {
    let class = SymmetryClass::new(cfg.n, cfg.group.clone(), cfg.character.clone(), caps)?;
    let basis = StarBasis::new(class, caps)?;
    if basis.dimension() == 0 {
        log::info!(
            "induced-matrix suite skipped: the symmetry class is trivial (empty admissible set)"
        );
        return Ok(SuiteReport {
            suite: "induced_matrix_strong_superadditivity".to_string(),
            config: cfg.summary(None),
            trials: cfg.trials,
            skipped: cfg.trials,
            failures: Vec::new(),
            min_margin: None,
        });
    }
    let lift = |x: &ComplexMatrix| basis.induced(x, caps);
    run_suite("induced_matrix_strong_superadditivity", cfg, None, |trial| {
        let mut rng = trial_rng(cfg.seed, trial);
        let a = random_psd(cfg.n, &mut rng);
        let b = random_psd(cfg.n, &mut rng);
        let c = random_psd(cfg.n, &mut rng);
        let zero = ComplexMatrix::zeros(cfg.n, cfg.n);
        let mut rec = TrialRecorder::new(digest_matrices(&[&a, &b, &c]), cfg.tol);
        lifted_case(&mut rec, "main", &lift, &a, &b, &c)?;
        lifted_case(&mut rec, "c_zero", &lift, &a, &b, &zero)?;
        lifted_case(&mut rec, "b_zero", &lift, &a, &zero, &c)?;
        Ok(rec.finish())
    })
}

/// Superadditivity of the blockwise determinant map on PSD block matrices,
/// in both forms: `det_m(A+B) >= det_m(A) + det_m(B)` in the Loewner order
/// (cases `loewner`, `b_zero_loewner`) and the scalar consequence
/// `det(det_m(A+B)) >= det(det_m(A)) + det(det_m(B))` (cases `scalar`,
/// `b_zero_scalar`).
pub fn suite_detm_superadd(cfg: &TrialConfig) -> Result<SuiteReport> {
    let side = cfg.m * cfg.n;
    run_suite("block_determinant_superadditivity", cfg, None, |trial| {
        let mut rng = trial_rng(cfg.seed, trial);
        let a = BlockMatrix::from_flat(&random_psd(side, &mut rng), cfg.m)?;
        let b = BlockMatrix::from_flat(&random_psd(side, &mut rng), cfg.m)?;
        let mut rec = TrialRecorder::new(digest_blocks(&[&a, &b]), cfg.tol);

        let sum_image = det_m(&(&a + &b))?;
        let a_image = det_m(&a)?;
        let b_image = det_m(&b)?;
        rec.loewner("loewner", &sum_image, &(&a_image + &b_image))?;
        let d_sum = rec.real(determinant(&sum_image)?);
        let d_a = rec.real(determinant(&a_image)?);
        let d_b = rec.real(determinant(&b_image)?);
        let scale = 1.0 + d_sum.abs().max(d_a.abs()).max(d_b.abs());
        rec.check("scalar", d_sum - (d_a + d_b), scale);

        // b_zero degenerates to equality in both forms.
        let zero = BlockMatrix::from_flat(&ComplexMatrix::zeros(side, side), cfg.m)?;
        let zero_sum = det_m(&(&a + &zero))?;
        let zero_image = det_m(&zero)?;
        rec.loewner("b_zero_loewner", &zero_sum, &(&a_image + &zero_image))?;
        let d_zero_sum = rec.real(determinant(&zero_sum)?);
        let d_zero = rec.real(determinant(&zero_image)?);
        let scale = 1.0 + d_zero_sum.abs().max(d_a.abs());
        rec.check("b_zero_scalar", d_zero_sum - (d_a + d_zero), scale);
        Ok(rec.finish())
    })
}

/// Complete positivity: the blockwise generalized-matrix-function map sends
/// PSD block matrices to PSD matrices.
///
/// Labeled sub-cases per trial: `main` (random PSD block matrix), `rank1`
/// (an outer product `v v*`), and `block_diag` (off-diagonal blocks zeroed,
/// so the image is a nonnegative diagonal matrix).
pub fn suite_complete_positivity(cfg: &TrialConfig) -> Result<SuiteReport> {
    cfg.require_gmf_degree()?;
    let spec = GmfSpec::new(cfg.group.clone(), cfg.character.clone())?;
    let side = cfg.m * cfg.n;
    run_suite("complete_positivity", cfg, None, |trial| {
        let mut rng = trial_rng(cfg.seed, trial);
        let a = BlockMatrix::from_flat(&random_psd(side, &mut rng), cfg.m)?;
        let v = random_matrix(side, 1, &mut rng);
        let rank1 = BlockMatrix::from_flat(&(&v * &v.adjoint()), cfg.m)?;
        let diag = a.zero_off_diagonal();
        let mut rec = TrialRecorder::new(digest_blocks(&[&a, &rank1]), cfg.tol);
        let zero = ComplexMatrix::zeros(cfg.m, cfg.m);
        rec.loewner("main", &spec.block_map(&a)?, &zero)?;
        rec.loewner("rank1", &spec.block_map(&rank1)?, &zero)?;
        rec.loewner("block_diag", &spec.block_map(&diag)?, &zero)?;
        Ok(rec.finish())
    })
}

/// Block Cholesky factorization of a positive-definite block matrix:
/// returns block-upper-triangular `T` with `A = T*T`.
///
/// `tol` is the relative definiteness threshold: the smallest eigenvalue of
/// the flattened input must exceed `tol` times the largest eigenvalue
/// magnitude, otherwise the input is rejected as singular or indefinite.
/// The reconstruction `T*T` is verified to [`RECONSTRUCTION_TOL`].
pub fn block_cholesky(a: &BlockMatrix, tol: f64) -> Result<BlockMatrix> {
    let flat = a.flatten();
    let eig = hermitian_eigenvalues(&flat)?;
    let lambda_min = eig[0];
    let norm = eig[eig.len() - 1].abs().max(lambda_min.abs());
    if !(lambda_min > tol * norm) {
        return Err(Error::Decomposition(format!(
            "block Cholesky needs a positive-definite input; smallest eigenvalue {lambda_min:.3e} \
             is not above {tol:.1e} times the spectral norm {norm:.3e}"
        )));
    }
    let upper = cholesky_upper(&flat, 0.0)?;
    let residual = rel_residual(&(&upper.adjoint() * &upper), &flat);
    if residual > RECONSTRUCTION_TOL {
        return Err(Error::Internal(format!(
            "block Cholesky reconstruction residual {residual:.3e} exceeds {RECONSTRUCTION_TOL:.1e}"
        )));
    }
    BlockMatrix::from_flat(&upper, a.block_count())
}

/// Right-multiplies the block columns of upper-triangular `T` by the
/// inverses of its diagonal blocks, making every diagonal block the
/// identity without changing `T*T`'s determinant-bound status.
fn unit_diagonal_normalize(t: &BlockMatrix) -> Result<BlockMatrix> {
    let m = t.block_count();
    let n = t.block_size();
    let mut inverses = Vec::with_capacity(m);
    for j in 0..m {
        inverses.push(inverse_upper_triangular(t.block(j, j))?);
    }
    BlockMatrix::from_block_fn(m, n, |i, j| {
        if i > j {
            ComplexMatrix::zeros(n, n)
        } else {
            t.block(i, j) * &inverses[j]
        }
    })
}

/// Determinant bound for PSD block matrices: `det(flatten(A)) <=
/// det(det_m(A))`, plus the unit-diagonal Cholesky reformulation.
///
/// Labeled sub-cases per trial:
///
/// * `det_bound` — the bound itself on a random PSD block matrix;
/// * `block_diag_equality` — with off-diagonal blocks zeroed the bound is
///   an equality (checked to [`EQUALITY_TOL`]);
/// * `reformulation` — for nonsingular draws, factor `A = T*T`, normalize
///   `T` to unit diagonal blocks, and check `det(det_m(T*T)) >= 1`;
/// * `base_identity` (block count 2 only) — `det(I + T12* T12) -
///   det(T12* T12) >= 1` computed directly from the normalized corner
///   block, plus `base_matches_blockwise` tying it to the `det_m` form.
///
/// Draws whose flattened smallest eigenvalue is below [`SINGULAR_SKIP`]
/// times the spectral norm skip the reformulation branch and are counted
/// in the report's `skipped` field.
pub fn suite_thompson(cfg: &TrialConfig) -> Result<SuiteReport> {
    let side = cfg.m * cfg.n;
    run_suite("thompson_determinant_bound", cfg, None, |trial| {
        let mut rng = trial_rng(cfg.seed, trial);
        let a = BlockMatrix::from_flat(&random_psd(side, &mut rng), cfg.m)?;
        let flat = a.flatten();
        let mut rec = TrialRecorder::new(digest_blocks(&[&a]), cfg.tol);

        let det_blockwise = rec.real(determinant(&det_m(&a)?)?);
        let det_flat = rec.real(determinant(&flat)?);
        let scale = 1.0 + det_blockwise.abs().max(det_flat.abs());
        rec.check("det_bound", det_blockwise - det_flat, scale);

        let diag = a.zero_off_diagonal();
        let d_flat = rec.real(determinant(&diag.flatten())?);
        let d_blockwise = rec.real(determinant(&det_m(&diag)?)?);
        let scale = 1.0 + d_flat.abs().max(d_blockwise.abs());
        rec.check_with_tol(
            "block_diag_equality",
            -(d_flat - d_blockwise).abs(),
            scale,
            EQUALITY_TOL,
        );

        let eig = hermitian_eigenvalues(&flat)?;
        let norm = eig[eig.len() - 1].abs().max(eig[0].abs());
        if eig[0] < SINGULAR_SKIP * norm {
            rec.skip();
            return Ok(rec.finish());
        }
        let t = match block_cholesky(&a, SINGULAR_SKIP) {
            Ok(t) => t,
            // The eigenvalue gate above and the one inside block_cholesky
            // use the same threshold; a borderline draw that slips between
            // them is skipped rather than failed.
            Err(Error::Decomposition(_)) => {
                rec.skip();
                return Ok(rec.finish());
            }
            Err(e) => return Err(e),
        };
        let unit = unit_diagonal_normalize(&t)?;
        let unit_flat = unit.flatten();
        let gram = BlockMatrix::from_flat(&(&unit_flat.adjoint() * &unit_flat), cfg.m)?;
        let reformulated = rec.real(determinant(&det_m(&gram)?)?);
        rec.check("reformulation", reformulated - 1.0, 1.0);

        if cfg.m == 2 {
            let corner = unit.block(0, 1);
            let product = &corner.adjoint() * corner;
            let shifted = &ComplexMatrix::identity(cfg.n) + &product;
            let direct =
                rec.real(determinant(&shifted)?) - rec.real(determinant(&product)?);
            rec.check("base_identity", direct - 1.0, 1.0);
            rec.check(
                "base_matches_blockwise",
                -(direct - reformulated).abs(),
                1.0 + reformulated.abs(),
            );
        }
        Ok(rec.finish())
    })
}
