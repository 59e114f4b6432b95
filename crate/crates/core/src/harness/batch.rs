use rayon::prelude::*;
use serde::Serialize;

use super::table::{Diagnostic, Override, Table};
use crate::certify::{classify, Classification};
use crate::diagram::LinkDiagram;
use crate::state::State;
use crate::surface::build_state_surface;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertifiedSurface {
    pub state: State,
    pub names: Vec<String>,
    pub is_seifert: bool,
    pub chi: i64,
    pub orientable: bool,
    pub boundary: usize,
    pub genus_or_crosscap: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BatchRow {
    pub name: String,
    pub crossings: usize,
    pub components: usize,
    pub tags: Vec<String>,
    pub surfaces: Vec<CertifiedSurface>,
    /// Some certifying canonical state other than the Seifert state exists.
    pub certifies_without_seifert: bool,
    #[serde(skip)]
    pub classification: Classification,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BatchReport {
    pub table_hash: String,
    pub overrides: Vec<Override>,
    pub diagnostics: Vec<Diagnostic>,
    pub rows: Vec<BatchRow>,
}

pub fn batch_row(name: &str, d: &LinkDiagram) -> BatchRow {
    let c = classify(d);
    let surfaces: Vec<CertifiedSurface> = c
        .certifying
        .iter()
        .map(|cs| {
            let inv = build_state_surface(d, &cs.state).unwrap().invariants();
            CertifiedSurface {
                state: cs.state.clone(),
                names: cs.names.clone(),
                is_seifert: cs.names.iter().any(|n| n == "seifert"),
                chi: inv.chi,
                orientable: inv.orientable,
                boundary: inv.boundary,
                genus_or_crosscap: inv.genus_or_crosscap,
            }
        })
        .collect();
    BatchRow {
        name: name.to_string(),
        crossings: d.crossing_count(),
        components: d.link_component_count(),
        tags: c.tags().into_iter().map(String::from).collect(),
        certifies_without_seifert: surfaces.iter().any(|s| !s.is_seifert),
        surfaces,
        classification: c,
    }
}

/// Classifies every entry in parallel; rows keep table order.
pub fn run_batch(table: &Table) -> BatchReport {
    BatchReport {
        table_hash: table.hash.clone(),
        overrides: table.overrides.clone(),
        diagnostics: table.diagnostics.clone(),
        rows: table
            .entries
            .par_iter()
            .map(|e| batch_row(&e.name, &e.diagram))
            .collect(),
    }
}
