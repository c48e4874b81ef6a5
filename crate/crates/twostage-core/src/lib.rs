//! Optimal two-stage markdown pricing for nondurable products.
//!
//! A monopolist sells over a horizon normalized to [0, 1] at price `p1`
//! until a switching time and `p2` afterwards. Unit cost erodes with
//! production experience as `c·e^{−alpha·t}`, demand is log-linear in price
//! with elasticity exponent `gamma`, and word-of-mouth moves customers'
//! perceived reliability toward the actual one, scaling demand by
//! `1 + perceived − actual`. An optional extended warranty adds a second
//! revenue stream whose price also signals reliability.
//!
//! The crate provides:
//!
//! - [`continuous`] — the benchmark case (perception already correct):
//!   closed-form stage prices, the profit curve and the unique optimal
//!   switching time via bisection on a sign function.
//! - [`discrete`] — the general N-period word-of-mouth case: exact
//!   per-period sums, the optimal switch period by enumeration, convergence
//!   to the continuous solution, and the profit-gain predicates.
//! - [`warranty`] — joint optimization of prices, switch period and the
//!   extended-warranty price, plus the four-case comparison report.
//! - [`oracle`] — an independent brute-force grid maximizer of the raw
//!   profit expressions used to validate every analytic solution.
//! - [`checks`] — the randomized property suite behind the `validate`
//!   command.

// Validation guards use negated comparisons (`!(x > 0.0)`) so that NaN
// inputs fail closed.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod checks;
pub mod continuous;
pub mod density;
pub mod discrete;
pub mod error;
pub mod oracle;
pub mod params;
pub mod search;
pub mod warranty;
pub mod wom;

pub use analytic::{phi1, phi2, z_fn, z_normalized};
pub use continuous::{
    optimal_prices_given_theta, solve_theta_star, solve_theta_star_with_density,
    sweep_observations, total_profit, total_profit_with_density, SweepAxis, SweepRow,
    TwoStageSolution,
};
pub use density::DemandDensity;
pub use discrete::{
    convergence_ratio, discrete_price_order_check, discrete_prices, discrete_profits,
    oe_sufficient_condition, simplified_prices, simplified_total_profit, solve_m_star,
    stage_aggregates, wom_gain_condition, PeriodSums, WomStageAggregates,
};
pub use error::{ModelError, Result};
pub use oracle::{
    brute_force_joint, brute_force_two_stage, GridSpec, JointPriceMode, OracleJoint,
    OracleTwoStage, SwitchSearch,
};
pub use params::{ModelParams, WarrantyParams};
pub use warranty::{
    case_comparison, expected_claims, joint_evaluation, joint_profit, solve_joint,
    sweep_warranty, warranty_purchase_prob, CaseLabel, CaseRow, JointEvaluation,
    WarrantySolution, WarrantySweepAxis, WarrantySweepRow,
};
pub use wom::{wom_path, wom_path_with_warranty, WomTrajectory};
