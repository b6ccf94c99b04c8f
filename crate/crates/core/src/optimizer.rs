//! Fidelity maximization over the splitter ratio B and the input squeezing S,
//! amplitude sweeps, the vacuum-ancilla baseline, and the decibel gains of
//! the two-photon scheme over that baseline.
//!
//! The optimizer is a coarse grid scan followed by a Nelder–Mead simplex
//! refinement started from the best cell; the refined point is therefore a
//! local optimum certified only against the grid. All objective evaluations
//! are pure, grids are evaluated in parallel but reduced in index order, so
//! results are bitwise independent of the parallelism degree.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::herald::{conditional_state, herald_probability, HeraldPattern};
use crate::oracle::{cascade_herald, BeamSplitterParams, CascadeParams};
use crate::states::{
    fidelity, scs_state, smsv_state, CutoffPolicy, FockVector, Parity, ScsSign, ScsTarget,
    SqueezeParams,
};

/// Rectangular search domain for (B, S_dB).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SearchBox {
    pub b_min: f64,
    pub b_max: f64,
    pub s_db_min: f64,
    pub s_db_max: f64,
}

impl Default for SearchBox {
    fn default() -> Self {
        SearchBox {
            b_min: 0.01,
            b_max: 5.0,
            s_db_min: 0.5,
            s_db_max: 20.0,
        }
    }
}

impl SearchBox {
    fn validate(&self) -> Result<()> {
        if !(self.b_min > 0.0 && self.b_max > self.b_min) {
            return Err(Error::Domain(format!(
                "B search interval [{}, {}] invalid",
                self.b_min, self.b_max
            )));
        }
        if !(self.s_db_min > 0.0 && self.s_db_max > self.s_db_min) {
            return Err(Error::Domain(format!(
                "S search interval [{}, {}] dB invalid",
                self.s_db_min, self.s_db_max
            )));
        }
        Ok(())
    }

    fn contains(&self, b: f64, s_db: f64) -> bool {
        (self.b_min..=self.b_max).contains(&b) && (self.s_db_min..=self.s_db_max).contains(&s_db)
    }
}

/// Grid density and simplex stopping rules.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OptimizerSettings {
    /// Coarse grid points along B.
    pub grid_b: usize,
    /// Coarse grid points along S.
    pub grid_s: usize,
    /// Simplex diameter (per coordinate) below which the refinement stops.
    pub simplex_tol: f64,
    /// Objective-evaluation budget of the simplex phase.
    pub max_simplex_evals: usize,
}

impl Default for OptimizerSettings {
    fn default() -> Self {
        OptimizerSettings {
            grid_b: 40,
            grid_s: 40,
            simplex_tol: 1e-5,
            max_simplex_evals: 500,
        }
    }
}

/// Settings of the one-dimensional vacuum-ancilla fidelity optimization.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BaselineSettings {
    pub y2_min: f64,
    pub y2_max: f64,
    /// Coarse scan points bracketing the golden-section refinement.
    pub scan_points: usize,
    /// Interval width at which the golden-section search stops.
    pub tol: f64,
}

impl Default for BaselineSettings {
    fn default() -> Self {
        BaselineSettings {
            y2_min: 0.001,
            y2_max: 0.49,
            scan_points: 64,
            tol: 1e-6,
        }
    }
}

/// Optimizing parameters and the figures of merit they produce for one
/// (β, k1, k2) cell; the row type of every sweep table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OptimizationResult {
    pub beta: f64,
    pub k1: usize,
    pub k2: usize,
    pub b_opt: f64,
    pub s_opt_db: f64,
    pub fid_max: f64,
    pub probability: f64,
    pub evaluations: usize,
    pub converged: bool,
}

/// Vacuum-ancilla reference for one (β, k1, k2) cell: the fidelity optimum
/// over the single parameter y₂, plus the operating point implied by the
/// configured baseline squeezing (absent when that squeezing cannot reach
/// the optimal y₂).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BaselineOutcome {
    pub beta: f64,
    pub k1: usize,
    pub k2: usize,
    pub y2_opt: f64,
    pub fid_max: f64,
    pub baseline_s_db: f64,
    pub evaluations: usize,
    pub operating: Option<BaselinePoint>,
}

/// Feasible operating point of the baseline: squeezing fixed by the
/// configured decibel value and B = √(y/y₂_opt) - 1 recovering the optimum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BaselinePoint {
    pub y: f64,
    pub b: f64,
    pub probability: f64,
}

/// Comparison row between the two-photon scheme and the vacuum baseline:
/// g = 10·log10(fid11/fid00), j = 10·log10(p11/p00), both in dB.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GainMetrics {
    pub beta: f64,
    pub k1: usize,
    pub k2: usize,
    pub fid11: f64,
    pub fid00: f64,
    pub g_db: f64,
    pub p11: f64,
    pub p00: f64,
    pub j_db: f64,
    pub baseline_s_db: f64,
    /// False when the baseline squeezing cannot reach y₂_opt; such rows carry
    /// NaN in p00 and j_db and are reported rather than dropped.
    pub feasible: bool,
}

/// Cat-state target matching the parity of k1 + k2.
fn target_for(k1: usize, k2: usize, beta: f64) -> Result<FockVector> {
    let sign = match Parity::of_index(k1 + k2) {
        Parity::Even => ScsSign::Plus,
        Parity::Odd => ScsSign::Minus,
        Parity::Mixed => unreachable!(),
    };
    scs_state(&ScsTarget::new(beta, sign)?, CutoffPolicy::Auto)
}

struct Objective {
    pattern: HeraldPattern,
    target: FockVector,
}

impl Objective {
    fn new(k1: usize, k2: usize, beta: f64) -> Result<Self> {
        Ok(Objective {
            pattern: HeraldPattern::new(k1, k2)?,
            target: target_for(k1, k2, beta)?,
        })
    }

    /// Fidelity at (B, S_dB); invalid points score -1 so they lose against
    /// any genuine fidelity.
    fn eval(&self, b: f64, s_db: f64) -> f64 {
        let Ok(squeeze) = SqueezeParams::from_decibels(s_db) else {
            return -1.0;
        };
        let y2 = squeeze.y() / ((1.0 + b) * (1.0 + b));
        match conditional_state(self.pattern, y2, b, CutoffPolicy::Auto) {
            Ok(state) => fidelity(&state, &self.target),
            Err(_) => -1.0,
        }
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n)
        .map(|i| lo + i as f64 * (hi - lo) / (n - 1) as f64)
        .collect()
}

/// Two-dimensional Nelder–Mead ascent inside a box. Out-of-box trial points
/// score -infinity, which ordinary contraction handles. Returns the best
/// vertex, its value, the evaluation count and whether the simplex diameter
/// criterion was met within the budget.
fn nelder_mead(
    f: impl Fn(f64, f64) -> f64,
    start: (f64, f64),
    start_value: f64,
    steps: (f64, f64),
    bounds: &SearchBox,
    tol: f64,
    max_evals: usize,
) -> ((f64, f64), f64, usize, bool) {
    let mut evals = 0usize;
    let score = |p: (f64, f64), evals: &mut usize| -> f64 {
        *evals += 1;
        if bounds.contains(p.0, p.1) {
            f(p.0, p.1)
        } else {
            f64::NEG_INFINITY
        }
    };

    // Initial simplex: grid-cell-sized steps, flipped when they would leave
    // the box.
    let step_from = |x: f64, dx: f64, lo: f64, hi: f64| {
        if x + dx <= hi {
            x + dx
        } else {
            (x - dx).max(lo)
        }
    };
    let p1 = (
        step_from(start.0, steps.0, bounds.b_min, bounds.b_max),
        start.1,
    );
    let v1 = score(p1, &mut evals);
    let p2 = (
        start.0,
        step_from(start.1, steps.1, bounds.s_db_min, bounds.s_db_max),
    );
    let v2 = score(p2, &mut evals);
    let mut simplex = [(start, start_value), (p1, v1), (p2, v2)];

    let mut converged = false;
    while evals < max_evals {
        simplex.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap());
        let (best, second, worst) = (simplex[0], simplex[1], simplex[2]);

        let db = (best.0 .0 - second.0 .0)
            .abs()
            .max((best.0 .0 - worst.0 .0).abs());
        let ds = (best.0 .1 - second.0 .1)
            .abs()
            .max((best.0 .1 - worst.0 .1).abs());
        if db < tol && ds < tol {
            converged = true;
            break;
        }

        let centroid = (
            (best.0 .0 + second.0 .0) / 2.0,
            (best.0 .1 + second.0 .1) / 2.0,
        );
        let reflect = (
            centroid.0 + (centroid.0 - worst.0 .0),
            centroid.1 + (centroid.1 - worst.0 .1),
        );
        let reflect_v = score(reflect, &mut evals);

        if reflect_v > best.1 {
            let expand = (
                centroid.0 + 2.0 * (centroid.0 - worst.0 .0),
                centroid.1 + 2.0 * (centroid.1 - worst.0 .1),
            );
            let expand_v = score(expand, &mut evals);
            simplex[2] = if expand_v > reflect_v {
                (expand, expand_v)
            } else {
                (reflect, reflect_v)
            };
        } else if reflect_v > second.1 {
            simplex[2] = (reflect, reflect_v);
        } else {
            let contract = (
                centroid.0 + 0.5 * (worst.0 .0 - centroid.0),
                centroid.1 + 0.5 * (worst.0 .1 - centroid.1),
            );
            let contract_v = score(contract, &mut evals);
            if contract_v > worst.1 {
                simplex[2] = (contract, contract_v);
            } else {
                // Shrink toward the best vertex.
                let anchor = simplex[0].0;
                for vertex in simplex.iter_mut().skip(1) {
                    let p = (
                        anchor.0 + 0.5 * (vertex.0 .0 - anchor.0),
                        anchor.1 + 0.5 * (vertex.0 .1 - anchor.1),
                    );
                    let v = score(p, &mut evals);
                    *vertex = (p, v);
                }
            }
        }
    }
    simplex.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap());
    (simplex[0].0, simplex[0].1, evals, converged)
}

fn optimize_inner(
    k1: usize,
    k2: usize,
    beta: f64,
    bounds: &SearchBox,
    settings: &OptimizerSettings,
    warm_start: Option<(f64, f64)>,
) -> Result<OptimizationResult> {
    bounds.validate()?;
    if settings.grid_b < 2 || settings.grid_s < 2 {
        return Err(Error::Domain(
            "optimizer grid needs at least 2x2 cells".into(),
        ));
    }
    let objective = Objective::new(k1, k2, beta)?;

    // Coarse scan, evaluated in parallel and reduced in index order.
    let b_grid = linspace(bounds.b_min, bounds.b_max, settings.grid_b);
    let s_grid = linspace(bounds.s_db_min, bounds.s_db_max, settings.grid_s);
    let cells: Vec<(f64, f64)> = b_grid
        .iter()
        .flat_map(|&b| s_grid.iter().map(move |&s| (b, s)))
        .collect();
    let values: Vec<f64> = cells
        .par_iter()
        .map(|&(b, s)| objective.eval(b, s))
        .collect();
    let mut evaluations = cells.len();
    let (grid_idx, &grid_best) = values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .expect("grid is nonempty");
    let grid_point = cells[grid_idx];

    // A warm start only displaces the grid start when it genuinely wins.
    let (start, start_value) = match warm_start {
        Some((b, s)) if bounds.contains(b, s) => {
            let v = objective.eval(b, s);
            evaluations += 1;
            if v > grid_best {
                ((b, s), v)
            } else {
                (grid_point, grid_best)
            }
        }
        _ => (grid_point, grid_best),
    };

    let steps = (
        (bounds.b_max - bounds.b_min) / (settings.grid_b - 1) as f64,
        (bounds.s_db_max - bounds.s_db_min) / (settings.grid_s - 1) as f64,
    );
    let ((b_opt, s_opt_db), fid_refined, simplex_evals, converged) = nelder_mead(
        |b, s| objective.eval(b, s),
        start,
        start_value,
        steps,
        bounds,
        settings.simplex_tol,
        settings.max_simplex_evals,
    );
    evaluations += simplex_evals;

    // The simplex never discards its best vertex, so this also dominates the
    // coarse grid.
    debug_assert!(fid_refined >= grid_best);

    let squeeze = SqueezeParams::from_decibels(s_opt_db)?;
    let cascade = CascadeParams::new(squeeze, BeamSplitterParams::from_ratio(b_opt)?);
    let probability = herald_probability(HeraldPattern::new(k1, k2)?, &cascade)?;

    Ok(OptimizationResult {
        beta,
        k1,
        k2,
        b_opt,
        s_opt_db,
        fid_max: fid_refined,
        probability,
        evaluations,
        converged,
    })
}

/// Maximize the heralded-state fidelity against the parity-matched cat target
/// over (B, S) for a fixed pattern and amplitude.
///
/// Non-convergence of the simplex phase is reported through
/// `converged = false` with best-so-far values, never clamped or hidden.
pub fn optimize_fidelity(
    k1: usize,
    k2: usize,
    beta: f64,
    bounds: &SearchBox,
    settings: &OptimizerSettings,
) -> Result<OptimizationResult> {
    optimize_inner(k1, k2, beta, bounds, settings, None)
}

/// One optimization per β, warm-starting each point from the previous
/// optimum; every point is still certified against its own coarse grid, so a
/// poor warm start cannot drag the sweep into a bad branch. Deterministic
/// for fixed settings.
pub fn sweep_beta(
    k1: usize,
    k2: usize,
    betas: &[f64],
    bounds: &SearchBox,
    settings: &OptimizerSettings,
) -> Result<Vec<OptimizationResult>> {
    let mut rows = Vec::with_capacity(betas.len());
    let mut warm = None;
    for &beta in betas {
        let row = optimize_inner(k1, k2, beta, bounds, settings, warm)?;
        warm = Some((row.b_opt, row.s_opt_db));
        rows.push(row);
    }
    Ok(rows)
}

/// Conditional state of the vacuum-ancilla cascade at a given y₂. The state
/// depends on (y, B) only through y₂, so any valid pair may represent it; a
/// mildly reflective splitter keeps y = y₂(1+B)² inside its domain for every
/// y₂ < 0.4995.
fn baseline_state(k1: usize, k2: usize, y2: f64) -> Result<FockVector> {
    let b = (0.4995_f64 / y2).sqrt().min(1.1) - 1.0;
    let y = y2 * (1.0 + b) * (1.0 + b);
    let squeeze = SqueezeParams::from_parameter(y)?;
    let input = smsv_state(&squeeze, CutoffPolicy::Auto)?;
    let bs = BeamSplitterParams::from_ratio(b)?;
    let outcome = cascade_herald(&input, 0, 0, &bs, k1, k2);
    if outcome.probability == 0.0 {
        return Err(Error::Domain(format!(
            "vacuum-ancilla outcome ({k1},{k2}) has zero probability at y2 = {y2}"
        )));
    }
    Ok(outcome.state)
}

const INV_GOLDEN: f64 = 0.618_033_988_749_894_9;

/// Golden-section maximization on [lo, hi].
fn golden_section_max(
    f: impl Fn(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    tol: f64,
    evals: &mut usize,
) -> (f64, f64) {
    let mut x1 = hi - INV_GOLDEN * (hi - lo);
    let mut x2 = lo + INV_GOLDEN * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    *evals += 2;
    while hi - lo > tol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_GOLDEN * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_GOLDEN * (hi - lo);
            f1 = f(x1);
        }
        *evals += 1;
    }
    let mid = (lo + hi) / 2.0;
    *evals += 1;
    (mid, f(mid))
}

/// Vacuum-ancilla reference: maximize the baseline fidelity over y₂ alone,
/// then fix the squeezing from `baseline_s_db` and recover the splitter from
/// y = y₂_opt·(1+B)². When that squeezing cannot reach y₂_opt the operating
/// point is absent and downstream rows are flagged infeasible.
pub fn baseline00(
    k1: usize,
    k2: usize,
    beta: f64,
    baseline_s_db: f64,
    settings: &BaselineSettings,
) -> Result<BaselineOutcome> {
    if k1 + k2 == 0 {
        return Err(Error::Domain(
            "baseline comparison needs at least one detected photon".into(),
        ));
    }
    let target = target_for(k1, k2, beta)?;
    let fid_at = |y2: f64| -> f64 {
        match baseline_state(k1, k2, y2) {
            Ok(state) => fidelity(&state, &target),
            Err(_) => -1.0,
        }
    };

    // Coarse scan brackets the optimum; golden section refines it.
    let mut evaluations = 0usize;
    let scan = linspace(
        settings.y2_min,
        settings.y2_max,
        settings.scan_points.max(3),
    );
    let scan_values: Vec<f64> = scan.par_iter().map(|&y2| fid_at(y2)).collect();
    evaluations += scan.len();
    let best = scan_values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .expect("scan is nonempty")
        .0;
    let lo = scan[best.saturating_sub(1)];
    let hi = scan[(best + 1).min(scan.len() - 1)];
    let (mut y2_opt, mut fid_max) =
        golden_section_max(fid_at, lo, hi, settings.tol, &mut evaluations);
    if scan_values[best] > fid_max {
        y2_opt = scan[best];
        fid_max = scan_values[best];
    }

    let baseline_squeeze = SqueezeParams::from_decibels(baseline_s_db)?;
    let y = baseline_squeeze.y();
    let operating = if y > y2_opt {
        let b = (y / y2_opt).sqrt() - 1.0;
        let input = smsv_state(&baseline_squeeze, CutoffPolicy::Auto)?;
        let bs = BeamSplitterParams::from_ratio(b)?;
        let outcome = cascade_herald(&input, 0, 0, &bs, k1, k2);
        Some(BaselinePoint {
            y,
            b,
            probability: outcome.probability,
        })
    } else {
        None
    };

    Ok(BaselineOutcome {
        beta,
        k1,
        k2,
        y2_opt,
        fid_max,
        baseline_s_db,
        evaluations,
        operating,
    })
}

/// Gain rows g and j for each (pattern, β), comparing the optimized
/// two-photon scheme against the vacuum baseline at the given baseline
/// squeezing. Rows keep the sweep's (pattern, β) order; infeasible baselines
/// produce flagged rows, a vanishing baseline probability reports +infinity
/// gain.
pub fn gain_curves(
    patterns: &[(usize, usize)],
    betas: &[f64],
    baseline_s_db: f64,
    bounds: &SearchBox,
    settings: &OptimizerSettings,
    baseline_settings: &BaselineSettings,
) -> Result<Vec<GainMetrics>> {
    let mut rows = Vec::with_capacity(patterns.len() * betas.len());
    for &(k1, k2) in patterns {
        let sweep = sweep_beta(k1, k2, betas, bounds, settings)?;
        for row in sweep {
            let baseline = baseline00(k1, k2, row.beta, baseline_s_db, baseline_settings)?;
            let g_db = 10.0 * (row.fid_max / baseline.fid_max).log10();
            let (p00, j_db, feasible) = match baseline.operating {
                Some(point) => {
                    let j = if point.probability == 0.0 {
                        f64::INFINITY
                    } else {
                        10.0 * (row.probability / point.probability).log10()
                    };
                    (point.probability, j, true)
                }
                None => (f64::NAN, f64::NAN, false),
            };
            rows.push(GainMetrics {
                beta: row.beta,
                k1,
                k2,
                fid11: row.fid_max,
                fid00: baseline.fid_max,
                g_db,
                p11: row.probability,
                p00,
                j_db,
                baseline_s_db,
                feasible,
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn quick_settings() -> OptimizerSettings {
        OptimizerSettings {
            grid_b: 14,
            grid_s: 14,
            simplex_tol: 1e-5,
            max_simplex_evals: 300,
        }
    }

    #[test]
    fn refined_optimum_dominates_grid() {
        let bounds = SearchBox::default();
        let settings = quick_settings();
        let row = optimize_fidelity(2, 2, 1.5, &bounds, &settings).unwrap();

        let objective = Objective::new(2, 2, 1.5).unwrap();
        let mut grid_best = f64::NEG_INFINITY;
        for &b in &linspace(bounds.b_min, bounds.b_max, settings.grid_b) {
            for &s in &linspace(bounds.s_db_min, bounds.s_db_max, settings.grid_s) {
                grid_best = grid_best.max(objective.eval(b, s));
            }
        }
        assert!(row.fid_max >= grid_best);
        assert!(row.converged);
    }

    #[test]
    fn stored_values_reproduce_freshly() {
        let row = optimize_fidelity(2, 3, 1.8, &SearchBox::default(), &quick_settings()).unwrap();
        let objective = Objective::new(2, 3, 1.8).unwrap();
        assert!((objective.eval(row.b_opt, row.s_opt_db) - row.fid_max).abs() < 1e-10);

        let squeeze = SqueezeParams::from_decibels(row.s_opt_db).unwrap();
        let cascade =
            CascadeParams::new(squeeze, BeamSplitterParams::from_ratio(row.b_opt).unwrap());
        let p = herald_probability(HeraldPattern::new(2, 3).unwrap(), &cascade).unwrap();
        assert!((p - row.probability).abs() < 1e-10 * p.max(1.0));
    }

    #[test]
    fn results_stay_in_unit_intervals() {
        let row = optimize_fidelity(4, 4, 2.0, &SearchBox::default(), &quick_settings()).unwrap();
        assert!(row.fid_max >= 0.0 && row.fid_max <= 1.0);
        assert!(row.probability >= 0.0 && row.probability <= 1.0);
        assert!(row.b_opt >= 0.01 && row.b_opt <= 5.0);
        assert!(row.s_opt_db >= 0.5 && row.s_opt_db <= 20.0);
    }

    #[test]
    fn sweep_is_deterministic_and_ordered() {
        let betas = [1.0, 1.5, 2.0];
        let a = sweep_beta(2, 2, &betas, &SearchBox::default(), &quick_settings()).unwrap();
        let b = sweep_beta(2, 2, &betas, &SearchBox::default(), &quick_settings()).unwrap();
        assert_eq!(a, b);
        for (row, &beta) in a.iter().zip(&betas) {
            assert_eq!(row.beta, beta);
        }
    }

    #[test]
    fn determinism_across_thread_pools() {
        let run = |threads: usize| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| {
                    optimize_fidelity(2, 2, 1.2, &SearchBox::default(), &quick_settings()).unwrap()
                })
        };
        let single = run(1);
        let quad = run(4);
        assert_eq!(single, quad);
    }

    #[test]
    fn baseline_reaches_optimum_and_operating_point() {
        let outcome = baseline00(2, 2, 1.5, 15.0, &BaselineSettings::default()).unwrap();
        assert!(outcome.fid_max > 0.5 && outcome.fid_max <= 1.0);
        assert!(outcome.y2_opt > 0.001 && outcome.y2_opt < 0.49);
        let point = outcome.operating.expect("15 dB reaches moderate y2");
        // Inversion identity: y = y₂_opt·(1+B)².
        let reconstructed = outcome.y2_opt * (1.0 + point.b).powi(2);
        assert!((reconstructed - point.y).abs() < 1e-12);
        assert!(point.probability > 0.0 && point.probability < 1.0);
    }

    #[test]
    fn baseline_infeasible_when_squeezing_too_small() {
        // Ask for a large cat with almost no baseline squeezing: y(0.2 dB)
        // is far below the optimal y₂.
        let outcome = baseline00(4, 4, 2.8, 0.2, &BaselineSettings::default()).unwrap();
        assert!(
            outcome.operating.is_none(),
            "expected infeasible operating point"
        );
    }

    #[test]
    fn gain_rows_follow_sweep_order_and_flag_infeasible() {
        let rows = gain_curves(
            &[(2, 2)],
            &[1.0, 2.0],
            9.0,
            &SearchBox::default(),
            &quick_settings(),
            &BaselineSettings::default(),
        )
        .unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!((rows[0].beta, rows[1].beta), (1.0, 2.0));
        for row in rows {
            assert!(row.fid11 > 0.0 && row.fid00 > 0.0);
            if row.feasible {
                assert!(row.p00 > 0.0);
                assert!(row.j_db.is_finite() || row.j_db == f64::INFINITY);
            } else {
                assert!(row.p00.is_nan() && row.j_db.is_nan());
            }
        }
    }

    proptest! {
        #[test]
        fn splitter_inversion_round_trips(y2 in 0.01..0.4_f64, b in 0.05..4.0_f64) {
            let y = y2 * (1.0 + b) * (1.0 + b);
            let back = (y / y2).sqrt() - 1.0;
            prop_assert!((back - b).abs() < 1e-12);
        }
    }
}
