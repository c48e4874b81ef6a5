//! Independent brute-force verification of the analytic solvers.
//!
//! The oracle maximizes the raw profit expressions by exhaustive grid
//! search — direct quadrature and per-period summation only, never the
//! closed-form prices or profit reductions. It shares nothing with the
//! solver modules beyond the density integrals and the perception paths.

use crate::continuous::TwoStageSolution;
use crate::density::DemandDensity;
use crate::error::{ModelError, Result};
use crate::params::ModelParams;
use crate::warranty::{warranty_purchase_prob, WarrantySolution};
use crate::wom::{wom_path, wom_path_with_warranty};
use rayon::prelude::*;

/// Grid resolution of the brute-force searches.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    /// Lower bound of both price axes, > 0.
    pub price_lo: f64,
    /// Upper bound of both price axes.
    pub price_hi: f64,
    /// Step of both price axes.
    pub price_step: f64,
    /// Step of the switching-time axis (continuous search mode).
    pub theta_step: f64,
    /// Step of the warranty-price axis.
    pub pw_step: f64,
}

impl GridSpec {
    /// Default grid bracketing the closed-form price range
    /// `[~c·gamma/(gamma−1)·e^{−alpha}, c·gamma/(gamma−1)]` with margin.
    pub fn default_for(params: &ModelParams) -> GridSpec {
        let markup = params.c * params.gamma / (params.gamma - 1.0);
        GridSpec {
            price_lo: 0.5 * markup * (-params.alpha).exp(),
            price_hi: 1.5 * markup,
            price_step: 1e-4 * params.c,
            theta_step: 1e-3,
            pw_step: 2e-4,
        }
    }

    /// Same bracket at coarser resolution, for bulk cross-validation runs.
    pub fn coarse_for(params: &ModelParams) -> GridSpec {
        GridSpec {
            price_step: 1e-3 * params.c,
            pw_step: 2e-3,
            ..GridSpec::default_for(params)
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.price_lo > 0.0 && self.price_lo < self.price_hi) {
            return Err(ModelError::param("price_lo", "need 0 < price_lo < price_hi"));
        }
        for (name, step, span) in [
            ("price_step", self.price_step, self.price_hi - self.price_lo),
            ("theta_step", self.theta_step, 1.0),
            ("pw_step", self.pw_step, 1.0),
        ] {
            if !(step > 0.0) {
                return Err(ModelError::param(name, "must be > 0"));
            }
            if span / step < 2.0 {
                return Err(ModelError::param(name, "grid must contain at least 3 points"));
            }
        }
        Ok(())
    }

    fn price_grid(&self, gamma: f64) -> Vec<(f64, f64)> {
        let count = ((self.price_hi - self.price_lo) / self.price_step).floor() as usize + 1;
        (0..count)
            .map(|i| {
                let p = self.price_lo + i as f64 * self.price_step;
                (p, p.powf(-gamma))
            })
            .collect()
    }
}

/// How the two-stage oracle walks the switching axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SwitchSearch {
    /// Continuous switching-time grid (benchmark case, requires `r0 = rm`).
    ContinuousTheta,
    /// Every feasible switch period, with word-of-mouth demand weights.
    DiscretePeriods,
}

/// Oracle result: the grid argmax plus a flag raised when it touched a grid
/// boundary (search window too small).
#[derive(Debug, Clone)]
pub struct OracleTwoStage {
    pub solution: TwoStageSolution,
    pub boundary_warning: bool,
}

#[derive(Clone, Copy)]
struct PriceScan {
    profit: f64,
    price: f64,
    on_boundary: bool,
}

/// Maximize ((p + bonus)·sa − cost)/p^gamma over the precomputed grid.
fn scan_prices(grid: &[(f64, f64)], sa: f64, cost: f64, bonus: f64) -> PriceScan {
    let mut best = PriceScan {
        profit: f64::NEG_INFINITY,
        price: grid[0].0,
        on_boundary: true,
    };
    for (idx, &(p, p_inv_gamma)) in grid.iter().enumerate() {
        let v = ((p + bonus) * sa - cost) * p_inv_gamma;
        if v > best.profit {
            best = PriceScan {
                profit: v,
                price: p,
                on_boundary: idx == 0 || idx == grid.len() - 1,
            };
        }
    }
    best
}

/// Exhaustive maximization of the raw two-stage profit over
/// (p1, p2, switching point).
pub fn brute_force_two_stage(
    params: &ModelParams,
    density: &DemandDensity,
    grid: &GridSpec,
    mode: SwitchSearch,
) -> Result<OracleTwoStage> {
    params.validate()?;
    grid.validate()?;
    let prices = grid.price_grid(params.gamma);

    // Stage masses and discounted costs per switch candidate, assembled from
    // the density integrals (and the perception path in discrete mode).
    let candidates: Vec<(f64, Option<usize>, [f64; 4])> = match mode {
        SwitchSearch::ContinuousTheta => {
            if params.r0 != params.rm {
                return Err(ModelError::domain(
                    "brute_force_two_stage",
                    "continuous mode searches the benchmark; set r0 = rm or use DiscretePeriods",
                ));
            }
            let count = (1.0 / grid.theta_step).ceil() as usize;
            let mut acc_mass = 0.0;
            let mut acc_cost = 0.0;
            let total_mass = density.mass(0.0, 1.0)?;
            let total_cost = density.discounted_mass(0.0, 1.0, params.alpha)?;
            let mut rows = Vec::with_capacity(count.saturating_sub(1));
            let mut prev = 0.0;
            for k in 1..count {
                let theta = (k as f64 * grid.theta_step).min(1.0 - grid.theta_step * 0.5);
                acc_mass += density.mass(prev, theta)?;
                acc_cost += density.discounted_mass(prev, theta, params.alpha)?;
                prev = theta;
                rows.push((
                    theta,
                    None,
                    [
                        acc_mass,
                        total_mass - acc_mass,
                        params.c * acc_cost,
                        params.c * (total_cost - acc_cost),
                    ],
                ));
            }
            rows
        }
        SwitchSearch::DiscretePeriods => {
            let n = params.n_periods;
            let path = wom_path(params.r0, params.rm, params.beta, n)?;
            let mut acc_mass = 0.0;
            let mut acc_cost = 0.0;
            let mut cum = Vec::with_capacity(n + 1);
            cum.push((0.0, 0.0));
            for j in 1..=n {
                let t0 = (j - 1) as f64 / n as f64;
                let t1 = j as f64 / n as f64;
                let w = 1.0 + path.value(j) - params.rm;
                acc_mass += w * density.mass(t0, t1)?;
                acc_cost += w * density.discounted_mass(t0, t1, params.alpha)?;
                cum.push((acc_mass, acc_cost));
            }
            let (total_mass, total_cost) = cum[n];
            (1..n)
                .map(|m| {
                    let (ma, co) = cum[m];
                    (
                        m as f64 / n as f64,
                        Some(m),
                        [
                            ma,
                            total_mass - ma,
                            params.c * co,
                            params.c * (total_cost - co),
                        ],
                    )
                })
                .collect()
        }
    };

    let evaluated: Vec<_> = candidates
        .par_iter()
        .map(|&(theta, m, [sa1, sa2, sb1, sb2])| {
            let s1 = scan_prices(&prices, sa1, sb1, 0.0);
            let s2 = scan_prices(&prices, sa2, sb2, 0.0);
            (theta, m, s1, s2)
        })
        .collect();

    let mut best: Option<(f64, f64, f64, Option<usize>, f64, f64, bool)> = None;
    for (idx, &(theta, m, s1, s2)) in evaluated.iter().enumerate() {
        let total = s1.profit + s2.profit;
        let better = match best {
            None => true,
            Some((bt, bp1, bp2, _, btheta, _, _)) => {
                total > bt
                    || (total == bt && (s1.price, s2.price, theta) < (bp1, bp2, btheta))
            }
        };
        if better {
            let on_edge =
                s1.on_boundary || s2.on_boundary || idx == 0 || idx == evaluated.len() - 1;
            best = Some((total, s1.price, s2.price, m, theta, s1.profit, on_edge));
        }
    }
    let (profit, p1, p2, m, theta, pi1, boundary) =
        best.ok_or_else(|| ModelError::Solver("empty switch grid".into()))?;
    Ok(OracleTwoStage {
        solution: TwoStageSolution {
            p1,
            p2,
            theta,
            switch_period: m,
            profit,
            profit_stage1: pi1,
            profit_stage2: profit - pi1,
        },
        boundary_warning: boundary,
    })
}

/// Inner price handling of the joint oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JointPriceMode {
    /// Scan the price grid — fully independent of the solver's price forms.
    Grid,
    /// Use the conditional first-order prices; profit still evaluated raw.
    Analytic,
}

#[derive(Debug, Clone)]
pub struct OracleJoint {
    pub solution: WarrantySolution,
    pub boundary_warning: bool,
}

/// Exhaustive maximization of the joint sales-plus-warranty profit over
/// (warranty price, switch period, stage prices).
pub fn brute_force_joint(
    params: &ModelParams,
    density: &DemandDensity,
    grid: &GridSpec,
    mode: JointPriceMode,
    wom_enabled: bool,
) -> Result<OracleJoint> {
    params.validate()?;
    grid.validate()?;
    let w = *params.warranty_params()?;
    let n = params.n_periods;
    let nf = n as f64;
    let prices = grid.price_grid(params.gamma);

    // Per-period density integrals, shared across warranty prices.
    let mut mass = Vec::with_capacity(n);
    let mut cost = Vec::with_capacity(n);
    for j in 1..=n {
        mass.push(density.mass((j - 1) as f64 / nf, j as f64 / nf)?);
        cost.push(density.discounted_mass((j - 1) as f64 / nf, j as f64 / nf, params.alpha)?);
    }

    let pw_max = w.max_warranty_price();
    let pw_count = (pw_max / grid.pw_step).floor() as usize + 1;

    struct RowBest {
        profit: f64,
        key: (f64, f64, f64, f64),
        m: usize,
        p1: f64,
        p2: f64,
        p_w: f64,
        boundary: bool,
    }

    let rows: Vec<Option<RowBest>> = (0..pw_count)
        .into_par_iter()
        .map(|i| {
            let p_w = (i as f64 * grid.pw_step).min(pw_max);
            let margin = (1.0 - w.d * p_w) * (p_w - w.f0 * w.cw);
            // Weighted cumulative sums assembled from the trajectory directly.
            let mut cum = Vec::with_capacity(n + 1);
            cum.push((0.0, 0.0));
            if wom_enabled {
                let path = wom_path_with_warranty(params, p_w).ok()?;
                for j in 1..=n {
                    let weight = 1.0 + path.value(j) - params.rm;
                    let (am, ac) = cum[j - 1];
                    cum.push((am + weight * mass[j - 1], ac + weight * cost[j - 1]));
                }
            } else {
                for j in 1..=n {
                    let (am, ac) = cum[j - 1];
                    cum.push((am + mass[j - 1], ac + cost[j - 1]));
                }
            }
            let (total_mass, total_cost) = cum[n];
            let mut best: Option<RowBest> = None;
            for m in 1..n {
                let (am, ac) = cum[m];
                let (sa1, sb1) = (am, params.c * ac);
                let (sa2, sb2) = (total_mass - am, params.c * (total_cost - ac));
                let (s1, s2) = match mode {
                    JointPriceMode::Grid => (
                        scan_prices(&prices, sa1, sb1 - margin * sa1, 0.0),
                        scan_prices(&prices, sa2, sb2 - margin * sa2, 0.0),
                    ),
                    JointPriceMode::Analytic => {
                        let g = params.gamma;
                        let k1 = sb1 / sa1 - margin;
                        let k2 = sb2 / sa2 - margin;
                        if k1 <= 0.0 || k2 <= 0.0 {
                            continue;
                        }
                        let p1 = g / (g - 1.0) * k1;
                        let p2 = g / (g - 1.0) * k2;
                        (
                            PriceScan {
                                profit: ((p1 + margin) * sa1 - sb1) * p1.powf(-g),
                                price: p1,
                                on_boundary: false,
                            },
                            PriceScan {
                                profit: ((p2 + margin) * sa2 - sb2) * p2.powf(-g),
                                price: p2,
                                on_boundary: false,
                            },
                        )
                    }
                };
                let total = s1.profit + s2.profit;
                let key = (s1.price, s2.price, m as f64 / nf, p_w);
                let better = match &best {
                    None => true,
                    Some(b) => total > b.profit || (total == b.profit && key < b.key),
                };
                if better {
                    best = Some(RowBest {
                        profit: total,
                        key,
                        m,
                        p1: s1.price,
                        p2: s2.price,
                        p_w,
                        boundary: s1.on_boundary
                            || s2.on_boundary
                            || m == 1
                            || m == n - 1
                            || i == pw_count - 1,
                    });
                }
            }
            best
        })
        .collect();

    let mut best: Option<RowBest> = None;
    for row in rows.into_iter().flatten() {
        let better = match &best {
            None => true,
            Some(b) => row.profit > b.profit || (row.profit == b.profit && row.key < b.key),
        };
        if better {
            best = Some(row);
        }
    }
    let best = best.ok_or_else(|| ModelError::Solver("no feasible joint grid point".into()))?;

    // Profit split and claims at the winning point, from the raw sums.
    let margin = (1.0 - w.d * best.p_w) * (best.p_w - w.f0 * w.cw);
    let mut sa1 = 0.0;
    let mut sb1 = 0.0;
    let mut sa2 = 0.0;
    let mut sb2 = 0.0;
    let path = if wom_enabled {
        Some(wom_path_with_warranty(params, best.p_w)?)
    } else {
        None
    };
    for j in 1..=n {
        let weight = path.as_ref().map_or(1.0, |p| 1.0 + p.value(j) - params.rm);
        if j <= best.m {
            sa1 += weight * mass[j - 1];
            sb1 += weight * params.c * cost[j - 1];
        } else {
            sa2 += weight * mass[j - 1];
            sb2 += weight * params.c * cost[j - 1];
        }
    }
    let g = params.gamma;
    let sales = (best.p1 * sa1 - sb1) * best.p1.powf(-g) + (best.p2 * sa2 - sb2) * best.p2.powf(-g);
    let warr = margin * (sa1 * best.p1.powf(-g) + sa2 * best.p2.powf(-g));
    let prob = warranty_purchase_prob(best.p_w, w.d)?;
    let claims = prob * w.f0 * (sa1 * best.p1.powf(-g) + sa2 * best.p2.powf(-g));
    Ok(OracleJoint {
        solution: WarrantySolution {
            p1: best.p1,
            p2: best.p2,
            m_star: best.m,
            theta: best.m as f64 / nf,
            p_w: best.p_w,
            purchase_prob: prob,
            expected_claims: claims,
            profit_total: sales + warr,
            profit_sales: sales,
            profit_warranty: warr,
        },
        boundary_warning: best.boundary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bench_params() -> ModelParams {
        ModelParams {
            r0: 0.7,
            ..ModelParams::default()
        }
    }

    #[test]
    fn grid_validation() {
        let p = ModelParams::default();
        let g = GridSpec::default_for(&p);
        g.validate().unwrap();
        assert!(GridSpec { price_step: 0.0, ..g }.validate().is_err());
        assert!(GridSpec { price_lo: 2.0, price_hi: 1.0, ..g }.validate().is_err());
    }

    #[test]
    fn oracle_agrees_with_the_analytic_benchmark() {
        let p = bench_params();
        let grid = GridSpec {
            price_step: 5e-4,
            theta_step: 2e-3,
            ..GridSpec::default_for(&p)
        };
        let oracle = brute_force_two_stage(&p, &DemandDensity::uniform(), &grid, SwitchSearch::ContinuousTheta)
            .unwrap();
        let analytic = crate::continuous::solve_theta_star(&p).unwrap();
        assert!(!oracle.boundary_warning);
        assert!((oracle.solution.p1 - analytic.p1).abs() <= grid.price_step + 1e-12);
        assert!((oracle.solution.p2 - analytic.p2).abs() <= grid.price_step + 1e-12);
        assert!((oracle.solution.theta - analytic.theta).abs() <= grid.theta_step + 1e-12);
        // A grid optimum cannot beat the true optimum.
        assert!(oracle.solution.profit <= analytic.profit + 1e-12);
    }

    #[test]
    fn zero_learning_collapses_the_price_gap() {
        let p = ModelParams {
            alpha: 0.0,
            ..bench_params()
        };
        let grid = GridSpec {
            price_lo: 0.75,
            price_hi: 2.25,
            price_step: 1e-3,
            theta_step: 5e-3,
            pw_step: 2e-4,
        };
        let oracle = brute_force_two_stage(&p, &DemandDensity::uniform(), &grid, SwitchSearch::ContinuousTheta)
            .unwrap();
        assert!((oracle.solution.p1 - oracle.solution.p2).abs() <= grid.price_step + 1e-12);
    }

    #[test]
    fn continuous_mode_rejects_wom_parameters() {
        let p = ModelParams::default(); // r0 != rm
        let grid = GridSpec::coarse_for(&p);
        assert!(brute_force_two_stage(&p, &DemandDensity::uniform(), &grid, SwitchSearch::ContinuousTheta)
            .is_err());
    }

    #[test]
    fn discrete_mode_matches_the_period_solver() {
        let p = ModelParams {
            n_periods: 25,
            ..ModelParams::default()
        };
        let grid = GridSpec {
            price_step: 2e-4,
            ..GridSpec::default_for(&p)
        };
        let oracle = brute_force_two_stage(&p, &DemandDensity::uniform(), &grid, SwitchSearch::DiscretePeriods)
            .unwrap();
        let solver = crate::discrete::solve_m_star(&p, &DemandDensity::uniform()).unwrap();
        assert_eq!(oracle.solution.switch_period, solver.switch_period);
        assert!((oracle.solution.p1 - solver.p1).abs() <= grid.price_step + 1e-12);
        assert!((oracle.solution.p2 - solver.p2).abs() <= grid.price_step + 1e-12);
    }

    #[test]
    fn joint_oracle_brackets_the_published_warranty_price() {
        let p = ModelParams {
            n_periods: 25,
            ..ModelParams::default()
        };
        let grid = GridSpec {
            price_step: 1e-3,
            pw_step: 5e-4,
            ..GridSpec::default_for(&p)
        };
        let oracle =
            brute_force_joint(&p, &DemandDensity::uniform(), &grid, JointPriceMode::Analytic, true)
                .unwrap();
        assert!((oracle.solution.p_w - 0.1033).abs() <= 2.0 * grid.pw_step);
        assert_eq!(oracle.solution.m_star, 13);
    }

    #[test]
    fn strong_price_sensitivity_collapses_the_warranty_price() {
        let mut p = bench_params();
        p.warranty = p
            .warranty
            .map(|w| crate::params::WarrantyParams { d: 50.0, cw: 0.01, ..w });
        let grid = GridSpec {
            price_step: 1e-3,
            pw_step: 1e-4,
            ..GridSpec::default_for(&p)
        };
        let oracle =
            brute_force_joint(&p, &DemandDensity::uniform(), &grid, JointPriceMode::Analytic, false)
                .unwrap();
        // Admissible prices collapse to [0, 1/d] = [0, 0.02]; the margin
        // optimum inside it is (1 + d·f0·cw)/(2d) = 0.0105.
        assert!(oracle.solution.p_w <= 0.02);
        assert!(
            (oracle.solution.p_w - 0.0105).abs() <= 2.0 * grid.pw_step,
            "p_w = {}",
            oracle.solution.p_w
        );
    }
}
