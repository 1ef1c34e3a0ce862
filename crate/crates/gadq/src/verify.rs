//! Self-verification suites.
//!
//! Each suite batches related consistency checks — structural identities,
//! cross-method oracle agreement, statistically bounded simulation checks —
//! and reports a pass/fail per check together with the measured margin, so
//! a regression shows up as a shrinking margin before it becomes a failure.
//!
//! Every check is deterministic for a fixed [`VerifyConfig`]: randomness
//! comes from counter-based RNG streams derived from the master seed, and
//! parallel grids preserve order, so reports are identical across thread
//! counts and across the sequential fallback.

use crate::channel::{
    apply_gadc_bloch, apply_gadc_density, ebt_threshold, is_entanglement_breaking,
    kraus_operators, BlochVector, DensityMatrix, GadcParams,
};
use crate::error::GadqError;
use crate::holevo::{holevo_fixed_point, holevo_gadc, holevo_symmetric};
use crate::induced::{
    binary_channel_capacity, blahut_arimoto, bsc_capacity, m1_channel, m2_flip_probability,
    BinaryChannel,
};
use crate::mat2::Matrix2;
use crate::parallel::map_slice;
use crate::queue_capacity::{
    capacity_series, compare_arrival_distributions, compare_service_distributions,
    mm1_capacity_closed_form, optimize_lambda, queue_capacity_mc, DecoherenceModel,
    LambdaEvaluator,
};
use crate::queueing::{derive_seed, gm1_sigma, simulate_queue, DistributionSpec, QueueConfig};
use crate::tolerance::{
    DEFAULT_BURN_IN, DEFAULT_OPT_TOL, DEFAULT_SAMPLES, DEFAULT_SEED, DEFAULT_SERIES_TOL,
};
use crate::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Names of the available suites, in canonical run order.
pub const SUITE_NAMES: [&str; 6] = ["core", "holevo", "induced", "queue", "capacity", "theorems"];

/// Canonical suite list.
pub fn suite_names() -> &'static [&'static str] {
    &SUITE_NAMES
}

/// Tuning knobs shared by all suites.
#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    /// Retained samples per simulation-backed check.
    pub samples: usize,
    /// Warm-up customers discarded per simulation.
    pub burn_in: usize,
    /// Master seed; all streams derive from it.
    pub seed: u64,
    /// Optimisation tolerance for the searches involved.
    pub tol: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            samples: DEFAULT_SAMPLES,
            burn_in: DEFAULT_BURN_IN,
            seed: DEFAULT_SEED,
            tol: DEFAULT_OPT_TOL,
        }
    }
}

/// One named check with its measured slack.
#[derive(Debug, Clone)]
pub struct CheckResult {
    /// Stable check identifier.
    pub name: String,
    /// Whether the check held.
    pub passed: bool,
    /// Slack remaining before the check would fail (positive = healthy).
    pub margin: f64,
    /// Human-readable account of what was measured.
    pub detail: String,
}

/// All checks of one suite.
#[derive(Debug, Clone)]
pub struct SuiteResult {
    /// Suite identifier (one of [`SUITE_NAMES`]).
    pub name: String,
    /// Individual check outcomes.
    pub checks: Vec<CheckResult>,
}

impl SuiteResult {
    /// True iff every check passed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Runs one suite by name; unknown names are a domain error.
pub fn run_suite(name: &str, cfg: &VerifyConfig) -> Result<SuiteResult> {
    let checks = match name {
        "core" => suite_core(cfg),
        "holevo" => suite_holevo(cfg),
        "induced" => suite_induced(cfg),
        "queue" => suite_queue(cfg)?,
        "capacity" => suite_capacity(cfg)?,
        "theorems" => suite_theorems(cfg)?,
        other => {
            return Err(GadqError::domain(format!(
                "unknown suite '{other}'; available: {}",
                SUITE_NAMES.join(", ")
            )))
        }
    };
    Ok(SuiteResult {
        name: name.to_string(),
        checks,
    })
}

/// Runs every suite in canonical order.
pub fn run_all(cfg: &VerifyConfig) -> Result<Vec<SuiteResult>> {
    SUITE_NAMES.iter().map(|s| run_suite(s, cfg)).collect()
}

// ---------------------------------------------------------------------------
// Check constructors
// ---------------------------------------------------------------------------

fn check_le(name: &str, measured: f64, bound: f64, detail: String) -> CheckResult {
    CheckResult {
        name: name.to_string(),
        passed: measured <= bound,
        margin: bound - measured,
        detail,
    }
}

fn check_gt(name: &str, measured: f64, floor: f64, detail: String) -> CheckResult {
    CheckResult {
        name: name.to_string(),
        passed: measured > floor,
        margin: measured - floor,
        detail,
    }
}

fn check_that(name: &str, passed: bool, detail: String) -> CheckResult {
    CheckResult {
        name: name.to_string(),
        passed,
        margin: if passed { 0.0 } else { -1.0 },
        detail,
    }
}

// ---------------------------------------------------------------------------
// core: structural identities + entanglement-breaking threshold
// ---------------------------------------------------------------------------

fn random_bloch(rng: &mut ChaCha8Rng) -> BlochVector {
    loop {
        let x = 2.0 * rng.random::<f64>() - 1.0;
        let y = 2.0 * rng.random::<f64>() - 1.0;
        let z = 2.0 * rng.random::<f64>() - 1.0;
        if x * x + y * y + z * z <= 1.0 {
            return BlochVector::new(x, y, z).expect("point drawn inside the ball");
        }
    }
}

fn suite_core(cfg: &VerifyConfig) -> Vec<CheckResult> {
    const DRAWS: usize = 1000;
    const BOUND: f64 = 1e-12;
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(cfg.seed, 0x11));
    let sz = Matrix2::diag(1.0, -1.0);
    let mut d_complete = 0.0f64;
    let mut d_agree = 0.0f64;
    let mut d_cov = 0.0f64;
    let mut d_convex = 0.0f64;
    for _ in 0..DRAWS {
        let p = rng.random::<f64>();
        let n = rng.random::<f64>();
        let ch = GadcParams::new(p, n).expect("drawn in range");
        let r = random_bloch(&mut rng);
        let rho = DensityMatrix::from_bloch(&r).expect("ball point is a state");
        let ks = kraus_operators(&ch);
        d_complete = d_complete.max(ks.completeness_defect());

        let via_kraus = apply_gadc_density(&ch, &rho);
        let via_bloch = DensityMatrix::from_bloch(&apply_gadc_bloch(&ch, &r))
            .expect("channel image stays in the ball");
        d_agree = d_agree.max(via_kraus.matrix().distance(via_bloch.matrix()));

        let conj_in = sz.mul(rho.matrix()).mul(&sz);
        let lhs = ks.apply(&conj_in);
        let rhs = sz.mul(&ks.apply(rho.matrix())).mul(&sz);
        d_cov = d_cov.max(lhs.distance(&rhs));

        let cold = kraus_operators(&GadcParams::new(p, 0.0).expect("p in range"));
        let hot = kraus_operators(&GadcParams::new(p, 1.0).expect("p in range"));
        let mix = cold
            .apply(rho.matrix())
            .scale(1.0 - n)
            .add(&hot.apply(rho.matrix()).scale(n));
        d_convex = d_convex.max(mix.distance(&ks.apply(rho.matrix())));
    }
    let mut checks = vec![
        check_le(
            "kraus_completeness",
            d_complete,
            BOUND,
            format!("worst completeness defect {d_complete:.3e} over {DRAWS} random channels"),
        ),
        check_le(
            "bloch_kraus_agreement",
            d_agree,
            BOUND,
            format!("worst action mismatch {d_agree:.3e} over {DRAWS} random (channel, state)"),
        ),
        check_le(
            "z_axis_covariance",
            d_cov,
            BOUND,
            format!("worst conjugation mismatch {d_cov:.3e} over {DRAWS} random (channel, state)"),
        ),
        check_le(
            "convex_mixture_decomposition",
            d_convex,
            BOUND,
            format!("worst mixture mismatch {d_convex:.3e} over {DRAWS} random (channel, state)"),
        ),
    ];

    let t_half = ebt_threshold(0.5).expect("0.5 is interior");
    checks.push(check_le(
        "ebt_threshold_at_half",
        (t_half - 0.828_427_124_746_190_1).abs(),
        1e-9,
        format!("threshold at n = 1/2 is {t_half:.15}"),
    ));
    let mut consistent = true;
    let mut worst = String::new();
    for i in 1..=9 {
        let n = i as f64 / 10.0;
        let t = ebt_threshold(n).expect("interior n");
        let above = is_entanglement_breaking(&GadcParams::new((t + 1e-6).min(1.0), n).unwrap());
        let below = is_entanglement_breaking(&GadcParams::new(t - 1e-6, n).unwrap());
        if !(above && !below) {
            consistent = false;
            worst = format!("n = {n}: above={above}, below={below}");
        }
    }
    checks.push(check_that(
        "ebt_predicate_brackets_threshold",
        consistent,
        if consistent {
            "predicate flips within ±1e-6 of the threshold for n = 0.1..0.9".to_string()
        } else {
            worst
        },
    ));
    checks
}

// ---------------------------------------------------------------------------
// holevo: closed form at the unital point + stationarity route
// ---------------------------------------------------------------------------

/// Worst |grid-search χ − closed form| over a damping grid at `n = 1/2`.
fn symmetric_closed_form_gap(points: usize, tol: f64) -> f64 {
    let ps: Vec<f64> = (0..points).map(|i| i as f64 / (points - 1) as f64).collect();
    let diffs = map_slice(&ps, |&p| {
        let ch = GadcParams::new(p, 0.5).expect("grid in range");
        (holevo_gadc(&ch, tol).chi - holevo_symmetric(p).expect("p in range")).abs()
    });
    diffs.into_iter().fold(0.0, f64::max)
}

fn suite_holevo(cfg: &VerifyConfig) -> Vec<CheckResult> {
    let worst_sym = symmetric_closed_form_gap(51, cfg.tol);
    let mut checks = vec![check_le(
        "symmetric_closed_form",
        worst_sym,
        1e-6,
        format!("worst gap {worst_sym:.3e} over 51 damping values at n = 1/2"),
    )];

    const GRID: usize = 20;
    let mut pts = Vec::with_capacity(GRID * GRID);
    for i in 0..GRID {
        for j in 0..GRID {
            pts.push((
                (i as f64 + 0.5) / GRID as f64,
                (j as f64 + 0.5) / GRID as f64,
            ));
        }
    }
    let res = map_slice(&pts, |&(p, n)| {
        let ch = GadcParams::new(p, n).expect("grid in range");
        holevo_fixed_point(&ch, cfg.tol)
            .ok()
            .map(|fp| (fp.chi - holevo_gadc(&ch, cfg.tol).chi).abs())
    });
    let converged = res.iter().flatten().count();
    let worst_fp = res.iter().flatten().fold(0.0f64, |a, &b| a.max(b));
    checks.push(check_le(
        "stationarity_vs_grid",
        worst_fp,
        1e-6,
        format!(
            "worst gap {worst_fp:.3e} over {converged}/{} interior grid points",
            GRID * GRID
        ),
    ));
    checks.push(check_gt(
        "stationarity_convergence_count",
        converged as f64,
        (GRID * GRID) as f64 - 10.5,
        format!("root bracketed at {converged}/{} points", GRID * GRID),
    ));
    checks
}

// ---------------------------------------------------------------------------
// induced: dominance, symmetry, gap profile, optimizer oracles
// ---------------------------------------------------------------------------

fn suite_induced(cfg: &VerifyConfig) -> Vec<CheckResult> {
    const GRID: usize = 50;
    let axis: Vec<f64> = (0..GRID).map(|i| i as f64 / (GRID - 1) as f64).collect();
    let mut pts = Vec::with_capacity(GRID * GRID);
    for &n in &axis {
        for &p in &axis {
            pts.push((p, n));
        }
    }
    let caps = map_slice(&pts, |&(p, n)| {
        let ch = GadcParams::new(p, n).expect("grid in range");
        let c1 = binary_channel_capacity(&m1_channel(&ch), cfg.tol).capacity;
        let c2 = bsc_capacity(m2_flip_probability(&ch, 0.0)).expect("flip prob in range");
        (c1, c2)
    });

    let mut min_dom = f64::INFINITY;
    for &(c1, c2) in &caps {
        min_dom = min_dom.min(c2 - c1);
    }
    let mut checks = vec![check_le(
        "symmetric_encoding_dominates_basis",
        -min_dom,
        1e-9,
        format!("min C(M2) − C(M1) = {min_dom:.3e} over a {GRID}x{GRID} grid"),
    )];

    let mut worst_sym = 0.0f64;
    for j in 0..GRID {
        for i in 0..GRID {
            let a = caps[j * GRID + i].0;
            let b = caps[(GRID - 1 - j) * GRID + i].0;
            worst_sym = worst_sym.max((a - b).abs());
        }
    }
    checks.push(check_le(
        "basis_capacity_excitation_symmetry",
        worst_sym,
        1e-9,
        format!("worst C(M1)(p,n) vs C(M1)(p,1−n) gap {worst_sym:.3e}"),
    ));

    // Gap along the unital line vanishes; off it (cold side) it is positive.
    let unital: Vec<f64> = axis.clone();
    let gaps_unital = map_slice(&unital, |&p| {
        let ch = GadcParams::new(p, 0.5).expect("grid in range");
        holevo_gadc(&ch, cfg.tol).chi
            - bsc_capacity(m2_flip_probability(&ch, 0.0)).expect("flip prob in range")
    });
    let worst_unital = gaps_unital.into_iter().fold(0.0f64, |a, b| a.max(b.abs()));
    checks.push(check_le(
        "gap_vanishes_at_unital_line",
        worst_unital,
        1e-6,
        format!("worst |χ − C(M2)| = {worst_unital:.3e} along n = 1/2"),
    ));

    let cold_pts: Vec<(f64, f64)> = pts
        .iter()
        .copied()
        .filter(|&(p, n)| n <= 0.4 && (0.05..=0.95).contains(&p))
        .collect();
    let cold_gaps = map_slice(&cold_pts, |&(p, n)| {
        let ch = GadcParams::new(p, n).expect("grid in range");
        holevo_gadc(&ch, cfg.tol).chi
            - bsc_capacity(m2_flip_probability(&ch, 0.0)).expect("flip prob in range")
    });
    let min_gap = cold_gaps.into_iter().fold(f64::INFINITY, f64::min);
    checks.push(check_gt(
        "gap_positive_off_unital_line",
        min_gap,
        0.0,
        format!(
            "min χ − C(M2) = {min_gap:.3e} over {} points with n ≤ 0.4, p ∈ [0.05, 0.95]",
            cold_pts.len()
        ),
    ));

    // Alternating-maximisation oracle on random binary channels.
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(cfg.seed, 0x21));
    let chans: Vec<BinaryChannel> = (0..1000)
        .map(|_| {
            let a = rng.random::<f64>();
            let b = rng.random::<f64>();
            BinaryChannel::new([[a, b], [1.0 - a, 1.0 - b]]).expect("columns sum to 1")
        })
        .collect();
    let diffs = map_slice(&chans, |chan| {
        let golden = binary_channel_capacity(chan, cfg.tol).capacity;
        let ba = match blahut_arimoto(chan, cfg.tol, 100_000) {
            Ok(r) => r.capacity,
            Err(GadqError::IterationLimit { best, .. }) => best.capacity,
            Err(_) => f64::NAN,
        };
        (golden - ba).abs()
    });
    let worst_ba = diffs.into_iter().fold(0.0, f64::max);
    checks.push(check_le(
        "alternating_vs_golden_capacity",
        worst_ba,
        1e-6,
        format!("worst capacity gap {worst_ba:.3e} over 1000 random binary channels"),
    ));

    // Fully cold basis channel at p = 1/2 is a Z-channel with a known value.
    let z = binary_channel_capacity(
        &m1_channel(&GadcParams::new(0.5, 0.0).expect("in range")),
        cfg.tol,
    )
    .capacity;
    checks.push(check_le(
        "z_channel_spot_value",
        (z - 0.321_928_094_887_362_35).abs(),
        1e-6,
        format!("C(M1) at (0.5, 0) = {z:.12}"),
    ));
    checks
}

// ---------------------------------------------------------------------------
// queue: simulated sojourns against stationary laws
// ---------------------------------------------------------------------------

fn suite_queue(cfg: &VerifyConfig) -> Result<Vec<CheckResult>> {
    let mut checks = Vec::new();

    let mm1 = QueueConfig::mm1(0.5, 1.0)?;
    let waits = simulate_queue(&mm1, cfg.samples, cfg.burn_in, derive_seed(cfg.seed, 0x51))?;
    let mean = waits.mean();
    let se = waits.std_err();
    checks.push(check_le(
        "mm1_sojourn_mean",
        (mean - 2.0).abs(),
        3.0 * se,
        format!("simulated mean {mean:.6} vs 2.0 (se {se:.2e})"),
    ));

    let (lap, lap_se) = waits.laplace(1.0);
    checks.push(check_le(
        "mm1_sojourn_laplace_at_1",
        (lap - 1.0 / 3.0).abs(),
        3.0 * lap_se,
        format!("empirical transform {lap:.6} vs 1/3 (se {lap_se:.2e})"),
    ));

    let det_arrival = DistributionSpec::deterministic(2.0)?;
    let dm1 = QueueConfig::new(det_arrival, DistributionSpec::exponential(1.0)?)?;
    let sol = gm1_sigma(&det_arrival, 1.0, 1e-12)?;
    let expected = 1.0 / (1.0 - sol.sigma);
    let dw = simulate_queue(&dm1, cfg.samples, cfg.burn_in, derive_seed(cfg.seed, 0x52))?;
    let dmean = dw.mean();
    let dse = dw.std_err();
    checks.push(check_le(
        "dm1_sojourn_mean",
        (dmean - expected).abs(),
        3.0 * dse,
        format!(
            "simulated mean {dmean:.6} vs 1/(μ(1−σ)) = {expected:.6} at σ = {:.6} (se {dse:.2e})",
            sol.sigma
        ),
    ));
    Ok(checks)
}

// ---------------------------------------------------------------------------
// capacity: series identities, MC agreement, rate profile
// ---------------------------------------------------------------------------

fn suite_capacity(cfg: &VerifyConfig) -> Result<Vec<CheckResult>> {
    let mut checks = Vec::new();

    let model1 = DecoherenceModel::new(1.0)?;
    let lam = 0.7;
    let unit = capacity_series(|_| 1.0, lam, &model1, DEFAULT_SERIES_TOL);
    checks.push(check_le(
        "series_normalization",
        (unit.value - lam).abs(),
        1e-9,
        format!("unit transform sums to {:.15} vs λ = {lam}", unit.value),
    ));

    let combos: Vec<(f64, f64)> = [0.3, 0.5, 0.8]
        .iter()
        .flat_map(|&l| [0.1, 1.0].map(|k| (l, k)))
        .collect();
    for (idx, &(lambda, kappa)) in combos.iter().enumerate() {
        let model = DecoherenceModel::new(kappa)?;
        let cfg_q = QueueConfig::mm1(lambda, 1.0)?;
        let mc = queue_capacity_mc(
            &cfg_q,
            &model,
            cfg.samples,
            cfg.burn_in,
            derive_seed(cfg.seed, 0x60 + idx as u64),
        )?;
        let cf = mm1_capacity_closed_form(lambda, 1.0, &model, DEFAULT_SERIES_TOL)?;
        let band = 3.0 * (mc.std_err * mc.std_err + cf.std_err * cf.std_err).sqrt();
        checks.push(check_le(
            &format!("mc_vs_closed_form_l{lambda}_k{kappa}"),
            (mc.value - cf.value).abs(),
            band,
            format!(
                "MC {:.6} ± {:.2e} vs closed form {:.6}",
                mc.value, mc.std_err, cf.value
            ),
        ));
    }

    let (l_star, c_star) = optimize_lambda(1.0, &model1, &LambdaEvaluator::Mm1ClosedForm, 1e-6)?;
    checks.push(check_that(
        "throughput_curve_interior_maximum",
        (0.02..=0.98).contains(&l_star),
        format!("optimal rate {l_star:.4} with capacity {c_star:.6}"),
    ));
    let edge = mm1_capacity_closed_form(0.99, 1.0, &model1, DEFAULT_SERIES_TOL)?.value;
    checks.push(check_le(
        "saturation_collapses_capacity",
        edge,
        0.1 * c_star,
        format!("capacity at λ = 0.99 is {edge:.6} vs peak {c_star:.6}"),
    ));
    let model01 = DecoherenceModel::new(0.1)?;
    let (l_slow, c_slow) = optimize_lambda(1.0, &model01, &LambdaEvaluator::Mm1ClosedForm, 1e-6)?;
    checks.push(check_gt(
        "slower_decoherence_raises_optimal_rate",
        l_slow,
        l_star,
        format!("λ* = {l_slow:.4} at κ = 0.1 vs {l_star:.4} at κ = 1"),
    ));
    checks.push(check_gt(
        "slower_decoherence_raises_peak",
        c_slow,
        c_star,
        format!("C* = {c_slow:.6} at κ = 0.1 vs {c_star:.6} at κ = 1"),
    ));
    Ok(checks)
}

// ---------------------------------------------------------------------------
// theorems: headline orderings and identities
// ---------------------------------------------------------------------------

fn suite_theorems(cfg: &VerifyConfig) -> Result<Vec<CheckResult>> {
    let mut checks = Vec::new();

    let worst_sym = symmetric_closed_form_gap(51, cfg.tol);
    checks.push(check_le(
        "unital_capacity_closed_form",
        worst_sym,
        1e-6,
        format!("worst gap {worst_sym:.3e} over 51 damping values at n = 1/2"),
    ));

    // Regular service wins when decoherence is slow relative to the service
    // scale; at fast decoherence the short-sojourn tail dominates the
    // Laplace transform and the ordering flips, so the check pins the slow
    // regime where the queue-length effect is the decisive one.
    let slow_model = DecoherenceModel::new(0.1)?;
    let services = [
        DistributionSpec::exponential(1.0)?,
        DistributionSpec::deterministic(1.0)?,
    ];
    let ranked = compare_service_distributions(
        0.5,
        1.0,
        &slow_model,
        &services,
        cfg.samples,
        cfg.burn_in,
        cfg.seed,
    )?;
    let det = ranked
        .iter()
        .find(|(sp, _)| sp.kind() == "deterministic")
        .expect("candidate present");
    let exp = ranked
        .iter()
        .find(|(sp, _)| sp.kind() == "exponential")
        .expect("candidate present");
    let diff = det.1.value - exp.1.value;
    let band =
        3.0 * (det.1.std_err * det.1.std_err + exp.1.std_err * exp.1.std_err).sqrt();
    checks.push(check_gt(
        "deterministic_service_beats_exponential",
        diff,
        band,
        format!(
            "C(M/D/1) − C(M/M/1) = {diff:.6} at decoherence rate 0.1 with 3σ band {band:.2e} under common random numbers"
        ),
    ));

    let model = DecoherenceModel::new(1.0)?;

    let det_arrival = DistributionSpec::deterministic(2.0)?;
    let sigma_det = gm1_sigma(&det_arrival, 1.0, 1e-12)?.sigma;
    checks.push(check_gt(
        "deterministic_arrival_root_below_poisson",
        0.5 - sigma_det,
        0.0,
        format!("σ(D/M/1) = {sigma_det:.6} vs λ/μ = 0.5"),
    ));
    let arrivals = [det_arrival, DistributionSpec::exponential(2.0)?];
    let ranked_a = compare_arrival_distributions(0.5, 1.0, &model, &arrivals, 1e-12)?;
    let det_a = ranked_a
        .iter()
        .find(|(sp, _)| sp.kind() == "deterministic")
        .expect("candidate present");
    let exp_a = ranked_a
        .iter()
        .find(|(sp, _)| sp.kind() == "exponential")
        .expect("candidate present");
    checks.push(check_gt(
        "deterministic_arrivals_beat_poisson",
        det_a.1.value - exp_a.1.value,
        0.0,
        format!(
            "C(D/M/1) = {:.6} vs C(M/M/1) = {:.6} analytically",
            det_a.1.value, exp_a.1.value
        ),
    ));
    Ok(checks)
}
