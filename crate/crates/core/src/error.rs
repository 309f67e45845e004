use thiserror::Error;

use crate::geom::Color;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("no {0:?} points in the dataset")]
    EmptyColorClass(Color),
    #[error("empty dataset")]
    EmptyDataset,
    #[error("cutting construction failed after {attempts} attempts (largest conflict list {worst}, bound {bound})")]
    CuttingFailed { attempts: usize, worst: usize, bound: usize },
    #[error("invalid mu value ({0}, {1})")]
    InvalidMu(f64, f64),
    #[error("input of size {size} exceeds the oracle limit {limit}")]
    TooLargeForOracle { size: usize, limit: usize },
    #[error("k = {k} outside [1, {max}]")]
    InvalidK { k: usize, max: usize },
    #[error("invalid parameter: {0}")]
    InvalidParams(String),
    #[error("malformed index encoding: {0}")]
    Decode(String),
}

pub type Result<T> = std::result::Result<T, Error>;
