//! The `oracle-check` command.

use serde::{Deserialize, Serialize};

use ropelength::oracles::{
    branch_continuity, check_m_against_oracle, check_two_ball_spots, cross_validate_transversals,
    CrossValidationReport, MGridReport, OracleConfig, TwoBallSpot, BRANCH_CONTINUITY_TOL,
};

use crate::SCHEMA_VERSION;

pub const DEFAULT_GRID: usize = 8;
pub const DEFAULT_QUADRUPLES: usize = 200;
pub const CONTINUITY_SAMPLES: usize = 200;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleCheckReport {
    pub schema_version: u32,
    pub seed: u64,
    pub config: OracleConfig,
    pub m_grid: MGridReport,
    pub branch_continuity: f64,
    pub two_ball: Vec<TwoBallSpot>,
    pub cross_validation: CrossValidationReport,
    pub passed: bool,
}

pub fn cmd_oracle_check(grid: usize, quadruples: usize, cfg: &OracleConfig) -> OracleCheckReport {
    let m_grid = check_m_against_oracle(grid, cfg);
    let continuity = branch_continuity(CONTINUITY_SAMPLES, cfg.seed);
    let two_ball = check_two_ball_spots(cfg);
    let cross_validation = cross_validate_transversals(quadruples, cfg);
    let passed = m_grid.passed
        && continuity <= BRANCH_CONTINUITY_TOL
        && two_ball.iter().all(|s| s.passed)
        && cross_validation.passed;
    OracleCheckReport {
        schema_version: SCHEMA_VERSION,
        seed: cfg.seed,
        config: *cfg,
        m_grid,
        branch_continuity: continuity,
        two_ball,
        cross_validation,
        passed,
    }
}
