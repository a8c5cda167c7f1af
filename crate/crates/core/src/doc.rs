//! The JSON lattice document and DOT emission.
//!
//! A lattice serializes as its name, element labels in index order, and
//! cover pairs as (lower, upper) labels; the order is the
//! reflexive-transitive closure of the covers. Saving and loading round-trip
//! to an element-wise identical lattice.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{lattice_from_covers, BuildError, Lattice, Poset};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct LatticeDoc {
    pub name: String,
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
}

#[derive(Error, Debug)]
pub enum DocError {
    #[error("parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl LatticeDoc {
    pub fn from_lattice(lat: &Lattice) -> LatticeDoc {
        LatticeDoc {
            name: lat.name().to_string(),
            elements: lat.labels().to_vec(),
            covers: lat
                .covers()
                .iter()
                .map(|&(lo, hi)| (lat.labels()[lo].clone(), lat.labels()[hi].clone()))
                .collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<LatticeDoc, DocError> {
        serde_json::from_str(text).map_err(|e| DocError::Parse {
            line: e.line(),
            reason: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serialization cannot fail")
    }

    pub fn build(&self) -> Result<Lattice, DocError> {
        let covers: Vec<(&str, &str)> = self
            .covers
            .iter()
            .map(|(lo, hi)| (lo.as_str(), hi.as_str()))
            .collect();
        let names: Vec<&str> = self.elements.iter().map(|s| s.as_str()).collect();
        let poset = Poset::new(&names, &covers)?;
        let mut lat = lattice_from_covers(&poset)?;
        lat.set_name(&self.name);
        Ok(lat)
    }
}

pub fn load_lattice(path: &std::path::Path) -> Result<Lattice, DocError> {
    let text = std::fs::read_to_string(path)?;
    LatticeDoc::from_json(&text)?.build()
}

pub fn save_lattice(lat: &Lattice, path: &std::path::Path) -> Result<(), DocError> {
    std::fs::write(path, LatticeDoc::from_lattice(lat).to_json() + "\n")?;
    Ok(())
}

/// DOT digraph: one node per element, one edge per cover, ranked bottom-up.
pub fn emit_dot(lat: &Lattice) -> String {
    let mut out = String::new();
    out.push_str("digraph lattice {\n");
    out.push_str("  rankdir=BT;\n");
    out.push_str("  node [shape=circle];\n");
    for label in lat.labels() {
        out.push_str(&format!("  \"{label}\";\n"));
    }
    for &(lo, hi) in lat.covers() {
        out.push_str(&format!(
            "  \"{}\" -> \"{}\";\n",
            lat.labels()[lo],
            lat.labels()[hi]
        ));
    }
    out.push_str("}\n");
    out
}

/// Parse a comma-separated label list into a subset of the lattice.
pub fn parse_labels(lat: &Lattice, text: &str) -> Result<crate::subset::Subset, String> {
    let mut out = crate::subset::Subset::EMPTY;
    for raw in text.split(',') {
        let label = raw.trim();
        if label.is_empty() {
            continue;
        }
        match lat.elem_by_label(label) {
            Some(e) => out.insert(e),
            None => return Err(format!("unknown element label `{label}`")),
        }
    }
    Ok(out)
}

/// Labels of a subset, sorted lexicographically for report output.
pub fn sorted_labels(lat: &Lattice, s: crate::subset::Subset) -> Vec<String> {
    let mut labels: Vec<String> = s.iter().map(|e| lat.label(e).to_string()).collect();
    labels.sort();
    labels
}
