use rayon::prelude::*;
use serde::Serialize;

use super::table::{Bundled, Diagnostic, Override, Table};
use crate::certify::certify_essential;
use crate::diagram::LinkDiagram;
use crate::state::{checkerboard_states, negative_state, positive_state, seifert_state, State};
use crate::stategraph::{blocks, build_state_graph};

pub const ROLFSEN10_EXCEPTIONS: [&str; 6] =
    ["8_19", "10_124", "10_128", "10_134", "10_139", "10_142"];

pub const HT11_EXCEPTIONS: [&str; 9] = [
    "K11n93", "K11n95", "K11n118", "K11n126", "K11n136", "K11n169", "K11n171", "K11n180",
    "K11n181",
];

pub fn expected_exceptions(table: Bundled) -> &'static [&'static str] {
    match table {
        Bundled::Rolfsen10 => &ROLFSEN10_EXCEPTIONS,
        Bundled::Ht11 => &HT11_EXCEPTIONS,
        Bundled::Links7 => &[],
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StateCheck {
    pub state: State,
    pub adequate: bool,
    pub homogeneous: bool,
    pub is_seifert: bool,
}

impl StateCheck {
    fn new(d: &LinkDiagram, state: State) -> Self {
        let g = build_state_graph(d, &state).unwrap();
        StateCheck {
            adequate: g.is_adequate(),
            homogeneous: blocks(&g).is_homogeneous(),
            is_seifert: state == seifert_state(d),
            state,
        }
    }

    pub fn qualifies(&self) -> bool {
        self.adequate && self.homogeneous && !self.is_seifert
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckerboardCheck {
    pub state: State,
    pub essential: bool,
    pub orientable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RemarkEntry {
    pub name: String,
    pub crossings: usize,
    pub overridden: bool,
    pub plus: StateCheck,
    pub minus: StateCheck,
    pub passes: bool,
    /// Filled in for entries that fail the main check.
    pub checkerboard: Vec<CheckerboardCheck>,
    pub checkerboard_flag: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RemarkReport {
    pub table: String,
    pub table_hash: String,
    pub exceptions: Vec<String>,
    pub checkerboard_flags: Vec<String>,
    pub expected_exceptions: Vec<String>,
    pub missing: Vec<String>,
    pub unexpected: Vec<String>,
    pub overrides: Vec<Override>,
    pub diagnostics: Vec<Diagnostic>,
    pub entries: Vec<RemarkEntry>,
}

impl RemarkReport {
    pub fn matches_expected(&self) -> bool {
        self.missing.is_empty() && self.unexpected.is_empty()
    }

    /// The short summary: table hash, exceptions and checkerboard flags.
    pub fn summary(&self) -> serde_json::Value {
        serde_json::json!({
            "table_hash": self.table_hash,
            "exceptions": self.exceptions,
            "checkerboard_flags": self.checkerboard_flags,
        })
    }
}

/// Checks one diagram: does the positive or negative state certify while differing from
/// the Seifert state?
pub fn check_entry(name: &str, d: &LinkDiagram, overridden: bool) -> RemarkEntry {
    let plus = StateCheck::new(d, positive_state(d));
    let minus = StateCheck::new(d, negative_state(d));
    let passes = plus.qualifies() || minus.qualifies();
    let mut checkerboard = Vec::new();
    if !passes {
        let (black, white) = checkerboard_states(d);
        for st in [black, white] {
            let cert = certify_essential(d, &st).unwrap();
            checkerboard.push(CheckerboardCheck {
                state: st,
                essential: cert.essential,
                orientable: cert.surface.orientable,
            });
        }
    }
    let checkerboard_flag = checkerboard.iter().any(|c| c.essential && !c.orientable);
    RemarkEntry {
        name: name.to_string(),
        crossings: d.crossing_count(),
        overridden,
        plus,
        minus,
        passes,
        checkerboard,
        checkerboard_flag,
    }
}

pub fn run_remark_check(table: &Table, label: &str, expected: &[&str]) -> RemarkReport {
    let entries: Vec<RemarkEntry> = table
        .entries
        .par_iter()
        .map(|e| check_entry(&e.name, &e.diagram, e.overridden))
        .collect();
    let exceptions: Vec<String> = entries
        .iter()
        .filter(|e| !e.passes)
        .map(|e| e.name.clone())
        .collect();
    let checkerboard_flags = entries
        .iter()
        .filter(|e| e.checkerboard_flag)
        .map(|e| e.name.clone())
        .collect();
    let missing = expected
        .iter()
        .filter(|x| !exceptions.iter().any(|e| e == *x))
        .map(|x| x.to_string())
        .collect();
    let unexpected = exceptions
        .iter()
        .filter(|e| !expected.contains(&e.as_str()))
        .cloned()
        .collect();
    RemarkReport {
        table: label.to_string(),
        table_hash: table.hash.clone(),
        exceptions,
        checkerboard_flags,
        expected_exceptions: expected.iter().map(|s| s.to_string()).collect(),
        missing,
        unexpected,
        overrides: table.overrides.clone(),
        diagnostics: table.diagnostics.clone(),
        entries,
    }
}

pub fn run_bundled_remark_check(table: Bundled) -> RemarkReport {
    run_remark_check(&table.load(), table.name(), expected_exceptions(table))
}
