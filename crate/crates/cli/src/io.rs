use std::fs;
use std::path::Path;

use minsmc_core::{parse_instance, CoverageInstance, InstanceError, Solution};
use serde::de::DeserializeOwned;

use crate::error::{HarnessError, Result};

pub fn read_bytes(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|source| HarnessError::Read { path: path.to_path_buf(), source })
}

pub fn write_bytes(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).map_err(|source| HarnessError::Write { path: path.to_path_buf(), source })
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let bytes = read_bytes(path)?;
    serde_json::from_slice(&bytes).map_err(|e| HarnessError::Parse { path: path.to_path_buf(), message: e.to_string() })
}

pub fn load_instance(path: &Path) -> Result<CoverageInstance> {
    let bytes = read_bytes(path)?;
    parse_instance(&bytes).map_err(|e| match e {
        InstanceError::InfeasibleDemand { .. } => HarnessError::Solver(e.into()),
        other => HarnessError::Parse { path: path.to_path_buf(), message: other.to_string() },
    })
}

pub fn load_solution(path: &Path) -> Result<Solution> {
    read_json(path)
}

pub fn to_json_bytes<T: serde::Serialize>(value: &T) -> Vec<u8> {
    let mut bytes = serde_json::to_vec_pretty(value).expect("report types serialize");
    bytes.push(b'\n');
    bytes
}
