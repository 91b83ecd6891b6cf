use std::str::FromStr;
use std::time::Duration;

use crate::kernel::{Limits, DEFAULT_MAX_TERM_DEPTH, DEFAULT_MAX_WIDTH, DEFAULT_PRODUCT_CAP};

/// How derived clauses are produced in a saturation round.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Multi-clause extensions, with two-clause rounds when stalled.
    #[default]
    Extension,
    /// Two-clause rounds only.
    Binary,
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Strategy, String> {
        match s {
            "extension" | "se" => Ok(Strategy::Extension),
            "binary" => Ok(Strategy::Binary),
            other => Err(format!("unknown strategy `{other}` (expected `extension` or `binary`)")),
        }
    }
}

impl std::fmt::Display for Strategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Strategy::Extension => "extension",
            Strategy::Binary => "binary",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategyConfig {
    /// Upper bound on derived clauses.
    pub max_steps: usize,
    /// Clauses per contradiction.
    pub max_width: usize,
    pub time_limit: Option<Duration>,
    /// Rotate the first start clause across rounds.
    pub start_rotation: bool,
    /// Run a two-clause round whenever an extension round derives nothing.
    pub fallback_binary: bool,
    pub max_term_depth: usize,
    /// Shuffle start clauses with this seed.
    pub seed: Option<u64>,
    pub strategy: Strategy,
    /// Search nodes explored per start literal.
    pub node_budget: usize,
    /// Also run a two-clause round every this many rounds (first-order only; 0 disables).
    pub binary_period: usize,
    pub product_cap: u64,
}

impl Default for StrategyConfig {
    fn default() -> StrategyConfig {
        StrategyConfig {
            max_steps: 20_000,
            max_width: DEFAULT_MAX_WIDTH,
            time_limit: None,
            start_rotation: true,
            fallback_binary: true,
            max_term_depth: DEFAULT_MAX_TERM_DEPTH,
            seed: None,
            strategy: Strategy::Extension,
            node_budget: 2_000,
            binary_period: 4,
            product_cap: DEFAULT_PRODUCT_CAP,
        }
    }
}

impl StrategyConfig {
    pub fn limits(&self) -> Limits {
        Limits { max_width: self.max_width.max(2), max_term_depth: self.max_term_depth, product_cap: self.product_cap }
    }
}
