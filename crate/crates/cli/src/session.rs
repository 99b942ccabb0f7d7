//! Named objects persisted between invocations.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use derivedlab::algebra::{AlgebraData, ModuleData};
use derivedlab::complex::{ComplexData, MapData};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Objects other than algebras remember the ring they live over, as a ring spec.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Session {
    #[serde(default)]
    pub algebras: BTreeMap<String, AlgebraData>,
    #[serde(default)]
    pub modules: BTreeMap<String, Stored<ModuleData>>,
    #[serde(default)]
    pub complexes: BTreeMap<String, Stored<ComplexData>>,
    #[serde(default)]
    pub maps: BTreeMap<String, Stored<MapData>>,
    #[serde(default)]
    pub certificates: BTreeMap<String, Stored<serde_json::Value>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Stored<T> {
    pub ring: String,
    pub value: T,
}

pub struct SessionFile {
    pub path: Option<PathBuf>,
    pub data: Session,
    dirty: bool,
}

impl SessionFile {
    pub fn open(path: Option<&Path>) -> Result<SessionFile, CliError> {
        let data = match path {
            Some(p) if p.exists() => {
                let text = std::fs::read_to_string(p).map_err(|e| CliError::input(format!("session {}: {e}", p.display())))?;
                serde_json::from_str(&text).map_err(|e| CliError::input(format!("session {}: {e}", p.display())))?
            }
            _ => Session::default(),
        };
        Ok(SessionFile { path: path.map(Path::to_path_buf), data, dirty: false })
    }

    pub fn touch(&mut self) -> Result<&mut Session, CliError> {
        if self.path.is_none() {
            return Err(CliError::input("--save needs --session"));
        }
        self.dirty = true;
        Ok(&mut self.data)
    }

    pub fn flush(&self) -> Result<(), CliError> {
        if let (true, Some(p)) = (self.dirty, &self.path) {
            let text = serde_json::to_string_pretty(&self.data).expect("session serializes");
            std::fs::write(p, text).map_err(|e| CliError::input(format!("session {}: {e}", p.display())))?;
        }
        Ok(())
    }
}
