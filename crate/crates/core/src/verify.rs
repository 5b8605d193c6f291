//! Seeded randomized self-check suite: ensemble inequalities, the covariance
//! oracle against closed-form entropies, and outer-bound containment.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::channels::AmplifierChannel;
use crate::entropy::{
    check_theorem_a1, check_theorem_a2, g_inverse, g_nonneg, h_lemma, PhotonNumber,
    WeightedEnsemble,
};
use crate::oracle::{apply_two_mode_squeezer, entropy_of, GaussianState};
use crate::qepi::{bound_gap, LossTradeoffInstance};
use crate::Result;

/// Outcome of one randomized check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub trials: usize,
    pub passed: usize,
}

impl CheckResult {
    pub fn ok(&self) -> bool {
        self.passed == self.trials
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(CheckResult::ok)
    }
}

/// Random normalized ensemble with `1..=max_len` points in `[0, max_point]`.
pub fn random_ensemble(rng: &mut impl Rng, max_len: usize, max_point: f64) -> WeightedEnsemble {
    let n = rng.gen_range(1..=max_len);
    let raw: Vec<f64> = (0..n).map(|_| rng.gen_range(1e-3..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let mut weights: Vec<f64> = raw.iter().map(|w| w / total).collect();
    // push the rounding residue into the last weight
    let head: f64 = weights[..n - 1].iter().sum();
    weights[n - 1] = 1.0 - head;
    let points = (0..n).map(|_| rng.gen_range(0.0..max_point)).collect();
    WeightedEnsemble::new(weights, points).expect("constructed ensemble is valid")
}

fn count(trials: usize, mut check: impl FnMut() -> bool) -> usize {
    (0..trials).filter(|_| check()).count()
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1e-12)
}

/// Runs every check with `trials` random instances each.
pub fn run_suite(seed: u64, trials: usize) -> Result<VerifyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();

    checks.push(CheckResult {
        name: "ensemble_inequality_q_le_1",
        trials,
        passed: count(trials, || {
            let ens = random_ensemble(&mut rng, 8, 100.0);
            let q = rng.gen_range(0.0..=1.0);
            let c = rng.gen_range(0.0..50.0);
            check_theorem_a1(&ens, q, c).unwrap_or(false)
        }),
    });

    checks.push(CheckResult {
        name: "ensemble_inequality_q_gt_1",
        trials,
        passed: count(trials, || {
            let ens = random_ensemble(&mut rng, 8, 100.0);
            let q = 1.0 + rng.gen_range(1e-6..20.0);
            check_theorem_a2(&ens, q).unwrap_or(false)
        }),
    });

    let grid = 10_000;
    let mut prev = 0.0;
    checks.push(CheckResult {
        name: "h_monotone_grid",
        trials: grid,
        passed: (0..grid)
            .filter(|&k| {
                let v = h_lemma(k as f64 * 1e-2).unwrap_or(f64::NAN);
                let ok = v >= prev && v < 1.0;
                prev = v;
                ok
            })
            .count(),
    });

    checks.push(CheckResult {
        name: "h_shifted_argument",
        trials,
        passed: count(trials, || {
            let q = 1.0 + rng.gen_range(1e-6..20.0);
            let x = rng.gen_range(0.0..1e3);
            match (h_lemma(q * (1.0 + x) - 1.0), h_lemma(x)) {
                (Ok(a), Ok(b)) => a >= b - 1e-15,
                _ => false,
            }
        }),
    });

    checks.push(CheckResult {
        name: "g_inverse_round_trip",
        trials,
        passed: count(trials, || {
            let x = 10f64.powf(rng.gen_range(-12.0..12.0));
            g_inverse(g_nonneg(x)).is_ok_and(|y| (y - x).abs() <= 1e-8 * x.max(1.0))
        }),
    });

    checks.push(CheckResult {
        name: "oracle_matches_closed_form",
        trials,
        passed: count(trials, || {
            let kappa = rng.gen_range(1.0..10.0);
            let ns = rng.gen_range(0.0..50.0);
            let nb = rng.gen_range(0.0..10.0);
            oracle_agrees(kappa, ns, nb).unwrap_or(false)
        }),
    });

    checks.push(CheckResult {
        name: "displacement_invariance",
        trials,
        passed: count(trials, || {
            let n = PhotonNumber::new(rng.gen_range(0.0..50.0)).expect("nonnegative");
            let base = GaussianState::thermal(n);
            let shifted = base.displaced(rng.gen_range(-20.0..20.0), rng.gen_range(-20.0..20.0));
            match (entropy_of(&base), entropy_of(&shifted)) {
                (Ok(a), Ok(b)) => (a - b).abs() <= 1e-10,
                _ => false,
            }
        }),
    });

    checks.push(CheckResult {
        name: "degrading_composition",
        trials,
        passed: count(trials, || {
            let Ok(ch) = AmplifierChannel::new(rng.gen_range(1.0..10.0), rng.gen_range(0.0..10.0))
            else {
                return false;
            };
            let n = rng.gen_range(0.0..100.0);
            let direct = ch.complement_photons(n);
            let via = ch.degrading().apply(ch.output_photons(n));
            (direct - via).abs() <= 1e-10 * direct.max(1.0)
        }),
    });

    checks.push(CheckResult {
        name: "outer_bound_contains_conjectured",
        trials,
        passed: count(trials, || {
            let eta = rng.gen_range(0.5..=1.0);
            let ns = rng.gen_range(0.01..100.0);
            let lambda = rng.gen_range(0.0..=1.0);
            LossTradeoffInstance::pure_loss(eta, ns)
                .and_then(|i| bound_gap(&i, lambda))
                .is_ok()
        }),
    });

    Ok(VerifyReport { seed, checks })
}

/// Compares oracle entropies of the dilation marginals with `g` of the
/// closed-form output and complement occupations.
pub fn oracle_agrees(kappa: f64, ns: f64, nb: f64) -> Result<bool> {
    let ch = AmplifierChannel::new(kappa, nb)?;
    let signal = GaussianState::thermal(PhotonNumber::new(ns)?);
    let env = GaussianState::thermal(PhotonNumber::new(nb)?);
    let out = apply_two_mode_squeezer(&signal, &env, kappa)?;
    let s_b = entropy_of(&out.marginal(0)?)?;
    let s_c = entropy_of(&out.marginal(1)?)?;
    Ok(rel_close(s_b, g_nonneg(ch.output_photons(ns)), 1e-9)
        && rel_close(s_c, g_nonneg(ch.complement_photons(ns)), 1e-9))
}
