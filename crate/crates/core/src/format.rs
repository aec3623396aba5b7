//! JSON interchange format:
//!
//! ```json
//! {"name": "N5", "elements": ["0", "a", "b", "c", "1"],
//!  "covers": [["0", "a"], ["a", "b"], ["b", "1"], ["0", "c"], ["c", "1"]]}
//! ```
//!
//! Unknown keys are rejected. Emitted files list covers sorted by element order.

use serde::{Deserialize, Serialize};

use crate::error::{LatticeError, Result};
use crate::lattice::FiniteLattice;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeFile {
    pub name: String,
    pub elements: Vec<String>,
    pub covers: Vec<[String; 2]>,
}

impl LatticeFile {
    pub fn from_lattice(l: &FiniteLattice) -> Self {
        LatticeFile {
            name: l.name().to_owned(),
            elements: l.elements().to_vec(),
            covers: l.covers().into_iter().map(|(x, y)| [l.element(x).to_owned(), l.element(y).to_owned()]).collect(),
        }
    }

    pub fn into_lattice(self) -> Result<FiniteLattice> {
        let covers: Vec<(String, String)> = self.covers.into_iter().map(|[lo, hi]| (lo, hi)).collect();
        FiniteLattice::from_covers(self.name, &self.elements, &covers)
    }
}

pub fn parse_lattice(text: &str) -> Result<FiniteLattice> {
    let file: LatticeFile = serde_json::from_str(text).map_err(|e| LatticeError::Parse(e.to_string()))?;
    file.into_lattice()
}

/// Single-line JSON.
pub fn to_json(l: &FiniteLattice) -> String {
    serde_json::to_string(&LatticeFile::from_lattice(l)).expect("lattice file serializes")
}

pub fn to_json_pretty(l: &FiniteLattice) -> String {
    serde_json::to_string_pretty(&LatticeFile::from_lattice(l)).expect("lattice file serializes")
}
