use thiserror::Error;

use crate::lie::CartanLabel;

#[derive(Debug, Error)]
pub enum Error {
    #[error("inadmissible Cartan label {series}{rank}")]
    InadmissibleLabel { series: char, rank: usize },

    #[error("cannot parse Cartan label {0:?}")]
    BadLabel(String),

    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },

    #[error("Weyl group of {label} has order {order}, above the cap {cap}")]
    WeylCapExceeded { label: CartanLabel, order: u64, cap: u64 },

    #[error("representation with highest weight {lambda:?} has dimension {dim}, above the cap {cap}")]
    DimensionCapExceeded { lambda: Vec<i64>, dim: u128, cap: u128 },

    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),

    #[error("level must exceed dual Coxeter number {dual_coxeter} (got {level})")]
    LevelTooSmall { level: i64, dual_coxeter: i64 },

    #[error("weight {weight:?} is not in the level-{level} alcove")]
    OutsideAlcove { weight: Vec<i64>, level: i64 },

    #[error("winding number p must be nonzero")]
    ZeroWinding,

    #[error("winding numbers ({p},{q}) are not coprime")]
    NotCoprime { p: i64, q: i64 },

    #[error("power must be positive (got {0})")]
    NonPositivePower(i64),

    #[error("cache i/o: {0}")]
    Io(#[from] std::io::Error),

    #[error("cache format: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
