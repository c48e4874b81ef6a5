//! Joint pricing of the product and an extended warranty.
//!
//! Each sold unit buys the warranty with probability `1 − d·p_w`, generating
//! an expected per-unit warranty margin `(1 − d·p_w)·(p_w − f0·cw)`. That
//! margin folds into the stage first-order conditions, lowering the optimal
//! product prices; the warranty price feeds back into demand through the
//! perceived-reliability path of [`crate::wom::wom_path_with_warranty`].
//! The joint optimum is a 1-D search over the warranty price (golden section
//! after a unimodality pre-check, grid fallback otherwise) wrapped around an
//! enumeration of the switch period.

use crate::continuous::{solve_theta_star_with_density, TwoStageSolution};
use crate::density::DemandDensity;
use crate::discrete::{solve_m_star, PeriodSums, StageSums};
use crate::error::{ModelError, Result};
use crate::params::ModelParams;
use crate::search::golden_max;
use crate::wom::warranty_initial_perception;

/// Points in the unimodality pre-check of the warranty-price objective.
const PRECHECK_POINTS: usize = 50;
/// Golden-section bracket tolerance on the warranty price.
const PW_TOL: f64 = 1e-10;
/// Fallback grid step when the pre-check finds a non-unimodal shape.
const PW_FALLBACK_STEP: f64 = 1e-4;

/// Jointly solved plan: product prices, switch period, warranty price and
/// the profit split between sales and warranty.
#[derive(Debug, Clone, PartialEq)]
pub struct WarrantySolution {
    pub p1: f64,
    pub p2: f64,
    /// Switch period; `theta = m_star / n_periods`.
    pub m_star: usize,
    pub theta: f64,
    /// Extended-warranty price in [0, 1/d].
    pub p_w: f64,
    /// Warranty take-up probability `1 − d·p_w`.
    pub purchase_prob: f64,
    /// Expected number of warranty claims over the horizon.
    pub expected_claims: f64,
    pub profit_total: f64,
    pub profit_sales: f64,
    pub profit_warranty: f64,
}

/// Warranty take-up probability `P = 1 − d·p_w`.
pub fn warranty_purchase_prob(p_w: f64, d: f64) -> Result<f64> {
    if !(d > 0.0) {
        return Err(ModelError::param("d", "must be > 0"));
    }
    if !(0.0..=1.0 / d).contains(&p_w) {
        return Err(ModelError::domain(
            "warranty_purchase_prob",
            format!("p_w must lie in [0, {}], got {p_w}", 1.0 / d),
        ));
    }
    Ok(1.0 - d * p_w)
}

/// Expected warranty margin per sold unit: `(1 − d·p_w)·(p_w − f0·cw)`.
fn unit_warranty_margin(params: &ModelParams, p_w: f64) -> Result<f64> {
    let w = params.warranty_params()?;
    Ok((1.0 - w.d * p_w) * (p_w - w.f0 * w.cw))
}

/// Perception gap driving the stage-weight corrections for a given warranty
/// price; zero when the word-of-mouth channel is disabled.
fn warranty_gap(params: &ModelParams, p_w: f64, wom_enabled: bool) -> Result<f64> {
    if !wom_enabled {
        return Ok(0.0);
    }
    let w = params.warranty_params()?;
    Ok(warranty_initial_perception(w.beta0, w.b, p_w) - params.rm)
}

/// Product prices and profit split at a fixed switch period and warranty
/// price (conditional first-order-condition prices).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointEvaluation {
    pub p1: f64,
    pub p2: f64,
    pub profit_total: f64,
    pub profit_sales: f64,
    pub profit_warranty: f64,
}

fn evaluate_joint(
    params: &ModelParams,
    sums: &PeriodSums,
    m: usize,
    p_w: f64,
    wom_enabled: bool,
) -> Result<JointEvaluation> {
    let w = params.warranty_params()?;
    if !(0.0..=w.max_warranty_price()).contains(&p_w) {
        return Err(ModelError::domain(
            "joint_profit",
            format!("p_w must lie in [0, {}], got {p_w}", w.max_warranty_price()),
        ));
    }
    let margin = unit_warranty_margin(params, p_w)?;
    let gap = warranty_gap(params, p_w, wom_enabled)?;
    let s = sums.stage_sums(m, gap)?;
    evaluate_with_sums(params, &s, margin, p_w)
}

fn evaluate_with_sums(
    params: &ModelParams,
    s: &StageSums,
    margin: f64,
    p_w: f64,
) -> Result<JointEvaluation> {
    let g = params.gamma;
    // Unit net cost per stage after the warranty margin offsets it.
    let k1 = params.c * s.sb1 / s.sa1 - margin;
    let k2 = params.c * s.sb2 / s.sa2 - margin;
    if k1 <= 0.0 || k2 <= 0.0 {
        return Err(ModelError::InfeasibleWarrantyPrice {
            p_w,
            reason: "warranty margin exceeds the discounted unit cost; the \
                     conditional product price would be nonpositive"
                .into(),
        });
    }
    let p1 = g / (g - 1.0) * k1;
    let p2 = g / (g - 1.0) * k2;
    let sales1 = (p1 * s.sa1 - params.c * s.sb1) / p1.powf(g);
    let sales2 = (p2 * s.sa2 - params.c * s.sb2) / p2.powf(g);
    let warr1 = margin * s.sa1 / p1.powf(g);
    let warr2 = margin * s.sa2 / p2.powf(g);
    Ok(JointEvaluation {
        p1,
        p2,
        profit_total: sales1 + sales2 + warr1 + warr2,
        profit_sales: sales1 + sales2,
        profit_warranty: warr1 + warr2,
    })
}

/// Joint profit (total, sales, warranty) at the conditional optimal prices
/// for a fixed switch period and warranty price, with the word-of-mouth
/// channel enabled.
pub fn joint_profit(
    params: &ModelParams,
    density: &DemandDensity,
    m: usize,
    p_w: f64,
) -> Result<(f64, f64, f64)> {
    let sums = PeriodSums::for_warranty(params, density)?;
    let e = evaluate_joint(params, &sums, m, p_w, true)?;
    Ok((e.profit_total, e.profit_sales, e.profit_warranty))
}

/// Like [`joint_profit`] but returning the conditional prices as well, with
/// the word-of-mouth channel switchable (off = reliability perception pinned
/// at `rm`, the warranty-only comparison case).
pub fn joint_evaluation(
    params: &ModelParams,
    density: &DemandDensity,
    m: usize,
    p_w: f64,
    wom_enabled: bool,
) -> Result<JointEvaluation> {
    let sums = PeriodSums::for_warranty(params, density)?;
    evaluate_joint(params, &sums, m, p_w, wom_enabled)
}

/// Expected number of warranty claims over the horizon at the given plan:
/// take-up probability times failure rate times total unit sales, with the
/// demand weights following the warranty-aware reliability path.
pub fn expected_claims(
    params: &ModelParams,
    density: &DemandDensity,
    p1: f64,
    p2: f64,
    m: usize,
    p_w: f64,
) -> Result<f64> {
    let w = params.warranty_params()?;
    if !(p1 > 0.0 && p2 > 0.0) {
        return Err(ModelError::domain("expected_claims", "prices must be positive"));
    }
    let prob = warranty_purchase_prob(p_w, w.d)?;
    let sums = PeriodSums::for_warranty(params, density)?;
    let gap = warranty_gap(params, p_w, true)?;
    let s = sums.stage_sums(m, gap)?;
    let q1 = s.sa1 / p1.powf(params.gamma);
    let q2 = s.sa2 / p2.powf(params.gamma);
    Ok(prob * w.f0 * (q1 + q2))
}

/// Best profit over all switch periods for a fixed warranty price.
/// `None` when every period is infeasible at this price.
fn best_over_periods(
    params: &ModelParams,
    sums: &PeriodSums,
    p_w: f64,
    wom_enabled: bool,
) -> Option<(f64, usize)> {
    let margin = unit_warranty_margin(params, p_w).ok()?;
    let gap = warranty_gap(params, p_w, wom_enabled).ok()?;
    let mut best: Option<(f64, usize)> = None;
    for m in 1..params.n_periods {
        let s = sums.stage_sums(m, gap).ok()?;
        if let Ok(e) = evaluate_with_sums(params, &s, margin, p_w) {
            if best.is_none_or(|(v, _)| e.profit_total > v) {
                best = Some((e.profit_total, m));
            }
        }
    }
    best
}

/// Signs of successive differences admit at most one descent-after-ascent
/// switch (plateaus allowed).
fn is_unimodal(values: &[f64]) -> bool {
    let mut descending = false;
    for pair in values.windows(2) {
        let d = pair[1] - pair[0];
        if d > 0.0 {
            if descending {
                return false;
            }
        } else if d < 0.0 {
            descending = true;
        }
    }
    true
}

/// Jointly optimize the warranty price and the switch period.
///
/// The outer search over `p_w ∈ [0, 1/d]` uses golden section when a
/// 50-point pre-check confirms a unimodal profile (the observed shape of the
/// profit-versus-warranty-price curve), and falls back to a 1e-4 grid when
/// it does not. Warranty prices whose conditional product price would be
/// nonpositive are excluded; the solve fails only if every price is.
pub fn solve_joint(
    params: &ModelParams,
    density: &DemandDensity,
    wom_enabled: bool,
) -> Result<WarrantySolution> {
    params.validate()?;
    let w = *params.warranty_params()?;
    let pw_max = w.max_warranty_price();
    let sums = PeriodSums::for_warranty(params, density)?;

    let outer = |p_w: f64| -> f64 {
        best_over_periods(params, &sums, p_w, wom_enabled)
            .map_or(f64::NEG_INFINITY, |(v, _)| v)
    };

    let coarse: Vec<f64> = (0..PRECHECK_POINTS)
        .map(|i| outer(pw_max * i as f64 / (PRECHECK_POINTS - 1) as f64))
        .collect();
    if coarse.iter().all(|v| *v == f64::NEG_INFINITY) {
        return Err(ModelError::Solver(
            "no feasible warranty price in [0, 1/d]".into(),
        ));
    }

    let p_w = if is_unimodal(&coarse) {
        golden_max(outer, 0.0, pw_max, PW_TOL)
    } else {
        let steps = (pw_max / PW_FALLBACK_STEP).ceil() as usize;
        let mut best = (f64::NEG_INFINITY, 0.0);
        for i in 0..=steps {
            let x = (pw_max * i as f64 / steps as f64).min(pw_max);
            let v = outer(x);
            if v > best.0 {
                best = (v, x);
            }
        }
        best.1
    };

    let (_, m_star) = best_over_periods(params, &sums, p_w, wom_enabled)
        .ok_or_else(|| ModelError::Solver("optimal warranty price became infeasible".into()))?;
    let eval = evaluate_joint(params, &sums, m_star, p_w, wom_enabled)?;
    let prob = warranty_purchase_prob(p_w, w.d)?;
    let gap = warranty_gap(params, p_w, wom_enabled)?;
    let s = sums.stage_sums(m_star, gap)?;
    let claims =
        prob * w.f0 * (s.sa1 / eval.p1.powf(params.gamma) + s.sa2 / eval.p2.powf(params.gamma));
    Ok(WarrantySolution {
        p1: eval.p1,
        p2: eval.p2,
        m_star,
        theta: m_star as f64 / params.n_periods as f64,
        p_w,
        purchase_prob: prob,
        expected_claims: claims,
        profit_total: eval.profit_total,
        profit_sales: eval.profit_sales,
        profit_warranty: eval.profit_warranty,
    })
}

// ---------------------------------------------------------------------------
// Four-case comparison
// ---------------------------------------------------------------------------

/// The four scenario cases, with separate over-/underestimation rows where
/// word-of-mouth is active.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseLabel {
    /// No word-of-mouth, no warranty.
    BaseI,
    /// Word-of-mouth only, initial overestimation.
    WomOe,
    /// Word-of-mouth only, initial underestimation.
    WomUe,
    /// Warranty only.
    WarrantyIii,
    /// Both, overestimation.
    JointOe,
    /// Both, underestimation.
    JointUe,
}

impl CaseLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            CaseLabel::BaseI => "I",
            CaseLabel::WomOe => "II-OE",
            CaseLabel::WomUe => "II-UE",
            CaseLabel::WarrantyIii => "III",
            CaseLabel::JointOe => "IV-OE",
            CaseLabel::JointUe => "IV-UE",
        }
    }
}

/// One row of the four-case report.
#[derive(Debug, Clone)]
pub struct CaseRow {
    pub label: CaseLabel,
    pub p1: f64,
    pub p2: f64,
    pub theta: f64,
    pub p_w: Option<f64>,
    pub profit: f64,
    pub pct_of_case_i: f64,
}

/// Solve all four cases (six rows: OE and UE variants where word-of-mouth is
/// active) and report profits as percentages of the base case.
pub fn case_comparison(
    params: &ModelParams,
    density: &DemandDensity,
    r0_oe: f64,
    r0_ue: f64,
) -> Result<Vec<CaseRow>> {
    params.validate()?;
    params.warranty_params()?;
    let bench = ModelParams {
        r0: params.rm,
        ..params.clone()
    };
    let base = solve_theta_star_with_density(&bench, density)?;
    let base_profit = base.profit;
    let pct = |profit: f64| 100.0 * profit / base_profit;

    let mut rows = vec![CaseRow {
        label: CaseLabel::BaseI,
        p1: base.p1,
        p2: base.p2,
        theta: base.theta,
        p_w: None,
        profit: base_profit,
        pct_of_case_i: 100.0,
    }];

    for (label, r0) in [(CaseLabel::WomOe, r0_oe), (CaseLabel::WomUe, r0_ue)] {
        let p = ModelParams { r0, ..params.clone() };
        let sol = solve_m_star(&p, density)?;
        rows.push(CaseRow {
            label,
            p1: sol.p1,
            p2: sol.p2,
            theta: sol.theta,
            p_w: None,
            profit: sol.profit,
            pct_of_case_i: pct(sol.profit),
        });
    }

    let warranty_only = solve_joint(&bench, density, false)?;
    rows.push(CaseRow {
        label: CaseLabel::WarrantyIii,
        p1: warranty_only.p1,
        p2: warranty_only.p2,
        theta: warranty_only.theta,
        p_w: Some(warranty_only.p_w),
        profit: warranty_only.profit_total,
        pct_of_case_i: pct(warranty_only.profit_total),
    });

    for (label, r0) in [(CaseLabel::JointOe, r0_oe), (CaseLabel::JointUe, r0_ue)] {
        let p = ModelParams { r0, ..params.clone() };
        let sol = solve_joint(&p, density, true)?;
        rows.push(CaseRow {
            label,
            p1: sol.p1,
            p2: sol.p2,
            theta: sol.theta,
            p_w: Some(sol.p_w),
            profit: sol.profit_total,
            pct_of_case_i: pct(sol.profit_total),
        });
    }
    Ok(rows)
}

// ---------------------------------------------------------------------------
// Warranty sweeps
// ---------------------------------------------------------------------------

/// Axis of a warranty-model sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WarrantySweepAxis {
    Alpha,
    Gamma,
    R0,
}

/// One sweep row: the word-of-mouth-only solution and the joint solution at
/// the same parameter value, for side-by-side comparison.
#[derive(Debug, Clone)]
pub struct WarrantySweepRow {
    pub value: f64,
    pub wom_only: Result<TwoStageSolution>,
    pub joint: Result<WarrantySolution>,
}

impl WarrantySweepRow {
    /// Markdown size `p1 − p2` of the word-of-mouth-only solution.
    pub fn wom_markdown(&self) -> Option<f64> {
        self.wom_only.as_ref().ok().map(|s| s.p1 - s.p2)
    }

    /// Markdown size of the joint solution.
    pub fn joint_markdown(&self) -> Option<f64> {
        self.joint.as_ref().ok().map(|s| s.p1 - s.p2)
    }

    /// Profit advantage of the joint case over the word-of-mouth-only case.
    pub fn profit_gap(&self) -> Option<f64> {
        match (&self.wom_only, &self.joint) {
            (Ok(w), Ok(j)) => Some(j.profit_total - w.profit),
            _ => None,
        }
    }
}

/// Solve the word-of-mouth-only and joint cases across a parameter grid.
pub fn sweep_warranty(
    params: &ModelParams,
    density: &DemandDensity,
    axis: WarrantySweepAxis,
    grid: &[f64],
) -> Vec<WarrantySweepRow> {
    use rayon::prelude::*;
    grid.par_iter()
        .map(|&value| {
            let mut p = params.clone();
            match axis {
                WarrantySweepAxis::Alpha => p.alpha = value,
                WarrantySweepAxis::Gamma => p.gamma = value,
                WarrantySweepAxis::R0 => p.r0 = value,
            }
            let wom_only = p.validate().and_then(|()| solve_m_star(&p, density));
            let joint = p.validate().and_then(|()| solve_joint(&p, density, true));
            WarrantySweepRow { value, wom_only, joint }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> ModelParams {
        ModelParams::default()
    }

    fn uniform() -> DemandDensity {
        DemandDensity::uniform()
    }

    #[test]
    fn purchase_probability_boundaries() {
        assert_eq!(warranty_purchase_prob(0.0, 5.0).unwrap(), 1.0);
        assert_eq!(warranty_purchase_prob(0.2, 5.0).unwrap(), 0.0);
        assert!((warranty_purchase_prob(0.1092, 5.0).unwrap() - 0.454).abs() < 1e-12);
        assert!(warranty_purchase_prob(0.21, 5.0).is_err());
        assert!(warranty_purchase_prob(-0.01, 5.0).is_err());
    }

    #[test]
    fn zero_margin_warranty_is_price_neutral() {
        // Unit margin (1 − d·p_w)(p_w − f0·cw) vanishes at p_w = f0·cw, so
        // the conditional prices reduce to the no-warranty ones.
        let p = base();
        let pw = 0.1 * 0.2;
        let eval = joint_evaluation(&p, &uniform(), 102, pw, true).unwrap();
        let womps = {
            // Same perception path, no margin: prices straight from the sums.
            let sums = PeriodSums::for_warranty(&p, &uniform()).unwrap();
            let gap = warranty_initial_perception(0.2, 5.0, pw) - p.rm;
            let s = sums.stage_sums(102, gap).unwrap();
            crate::discrete::prices_from_sums(&p, &s)
        };
        assert!((eval.p1 - womps.0).abs() < 1e-12);
        assert!((eval.p2 - womps.1).abs() < 1e-12);
    }

    #[test]
    fn reported_joint_prices_at_the_published_point() {
        // p_w = 0.1092 with the switch after period 102 prices near
        // (1.4012, 1.3300).
        let eval = joint_evaluation(&base(), &uniform(), 102, 0.1092, true).unwrap();
        assert!((eval.p1 - 1.4012).abs() < 5e-4, "p1 {}", eval.p1);
        assert!((eval.p2 - 1.3300).abs() < 5e-4, "p2 {}", eval.p2);
    }

    #[test]
    fn joint_solve_without_wom_matches_the_envelope_price() {
        // With the perception channel off, the optimal warranty price solves
        // margin'(p_w) = 0 exactly: p_w = (1 + d·f0·cw)/(2d) = 0.11.
        let sol = solve_joint(&base(), &uniform(), false).unwrap();
        assert!((sol.p_w - 0.11).abs() < 1e-6, "p_w {}", sol.p_w);
        assert_eq!(sol.m_star, 102);
        assert!((sol.profit_total - 0.178825).abs() < 1e-5);
        assert!((sol.p1 - 1.4016).abs() < 5e-4);
        assert!((sol.p2 - 1.3303).abs() < 5e-4);
        assert!(
            (sol.profit_total - sol.profit_sales - sol.profit_warranty).abs() < 1e-12
        );
    }

    #[test]
    fn joint_solve_with_wom_discounts_the_warranty() {
        let sol = solve_joint(&base(), &uniform(), true).unwrap();
        assert!((sol.p_w - 0.1092).abs() < 5e-4, "p_w {}", sol.p_w);
        assert_eq!(sol.m_star, 102);
        assert!(sol.p_w < 0.11);
        assert!(sol.p1 > sol.p2);
    }

    #[test]
    fn small_period_count_reproduces_published_joint_solution() {
        let p = ModelParams { n_periods: 25, ..base() };
        let sol = solve_joint(&p, &uniform(), true).unwrap();
        assert!((sol.p_w - 0.1033).abs() < 2e-4, "p_w {}", sol.p_w);
        assert_eq!(sol.m_star, 13);
        assert!((sol.profit_total - 0.17799).abs() < 5e-5, "profit {}", sol.profit_total);
    }

    #[test]
    fn joint_solution_is_independent_of_initial_perception() {
        // The pre-launch anchor recalibration cancels r0 exactly.
        let a = solve_joint(&base(), &uniform(), true).unwrap();
        let b = solve_joint(&ModelParams { r0: 0.5, ..base() }, &uniform(), true).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn claims_vanish_without_failures_or_buyers() {
        let p = base();
        let no_failures = ModelParams {
            warranty: p.warranty.map(|w| crate::params::WarrantyParams { f0: 0.0, ..w }),
            ..p.clone()
        };
        let c = expected_claims(&no_failures, &uniform(), 1.4, 1.33, 102, 0.1).unwrap();
        assert_eq!(c, 0.0);
        let c = expected_claims(&p, &uniform(), 1.4, 1.33, 102, 0.2).unwrap();
        assert_eq!(c, 0.0, "no purchasers at p_w = 1/d");
    }

    #[test]
    fn claims_match_a_compositional_cross_check() {
        let p = base();
        let sol = solve_joint(&p, &uniform(), true).unwrap();
        // Independent route: purchase probability × failure rate × total
        // weighted demand, assembled from the path and density directly.
        let path = crate::wom::wom_path_with_warranty(&p, sol.p_w).unwrap();
        let d = uniform();
        let mut q = 0.0;
        for j in 1..=p.n_periods {
            let t0 = (j - 1) as f64 / 200.0;
            let t1 = j as f64 / 200.0;
            let w = 1.0 + path.value(j) - p.rm;
            let price = if j <= sol.m_star { sol.p1 } else { sol.p2 };
            q += w * d.mass(t0, t1).unwrap() / price.powf(p.gamma);
        }
        let direct = sol.purchase_prob * 0.1 * q;
        assert!((sol.expected_claims - direct).abs() < 1e-12);
        let via_op =
            expected_claims(&p, &uniform(), sol.p1, sol.p2, sol.m_star, sol.p_w).unwrap();
        assert!((via_op - direct).abs() < 1e-12);
    }

    #[test]
    fn case_comparison_matches_published_percentages() {
        let rows = case_comparison(&base(), &uniform(), 0.8, 0.6).unwrap();
        assert_eq!(rows.len(), 6);
        assert_eq!(rows[0].pct_of_case_i, 100.0);
        let iii = &rows[3];
        assert_eq!(iii.label, CaseLabel::WarrantyIii);
        assert!((iii.pct_of_case_i - 109.1).abs() < 0.5, "III pct {}", iii.pct_of_case_i);
        assert!(rows[2].pct_of_case_i < 100.0 && 100.0 < rows[1].pct_of_case_i);
        // Joint rows coincide: the warranty price pins the initial perception.
        assert!((rows[4].profit - rows[5].profit).abs() / rows[4].profit < 5e-3);
    }

    #[test]
    fn warranty_sweep_markdown_widens_with_alpha() {
        let rows = sweep_warranty(
            &base(),
            &uniform(),
            WarrantySweepAxis::Alpha,
            &[0.05, 0.1, 0.2, 0.3],
        );
        let wom_dp: Vec<f64> = rows.iter().map(|r| r.wom_markdown().unwrap()).collect();
        let joint_dp: Vec<f64> = rows.iter().map(|r| r.joint_markdown().unwrap()).collect();
        assert!(wom_dp.windows(2).all(|w| w[1] > w[0]), "{wom_dp:?}");
        assert!(joint_dp.windows(2).all(|w| w[1] > w[0]), "{joint_dp:?}");
        // The warranty margin lowers the product prices in every row.
        for r in &rows {
            let ii = r.wom_only.as_ref().unwrap();
            let iv = r.joint.as_ref().unwrap();
            assert!(iv.p1 <= ii.p1 && iv.p2 <= ii.p2, "alpha = {}", r.value);
        }
    }

    #[test]
    fn warranty_sweep_directions_over_gamma() {
        let rows = sweep_warranty(&base(), &uniform(), WarrantySweepAxis::Gamma, &[2.0, 3.0, 4.0]);
        for r in &rows {
            let gap = r.profit_gap().unwrap();
            assert!(gap > 0.0, "joint profit must beat wom-only at gamma {}", r.value);
        }
        let gaps: Vec<f64> = rows.iter().map(|r| r.profit_gap().unwrap()).collect();
        assert!(gaps.windows(2).all(|w| w[1] > w[0]), "gap should widen with gamma");
    }

    #[test]
    fn infeasible_when_margin_swamps_cost() {
        // A huge claim-free margin drives the conditional price negative.
        let mut p = base();
        p.c = 0.01;
        p.warranty = Some(crate::params::WarrantyParams {
            d: 0.5,
            ..p.warranty.unwrap()
        });
        let err = joint_evaluation(&p, &uniform(), 102, 1.0, true).unwrap_err();
        assert!(matches!(err, ModelError::InfeasibleWarrantyPrice { .. }));
    }

    #[test]
    fn unimodality_detector() {
        assert!(is_unimodal(&[1.0, 2.0, 3.0, 2.0, 1.0]));
        assert!(is_unimodal(&[1.0, 1.0, 2.0, 2.0]));
        assert!(!is_unimodal(&[1.0, 2.0, 1.0, 2.0]));
    }
}
