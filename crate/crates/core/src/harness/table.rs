use std::collections::HashMap;
use std::fs;
use std::io;
use std::path::Path;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::diagram::{parse_notation, LinkDiagram};

const OVERRIDE: &str = "@override";

#[derive(Debug, Clone)]
pub struct TableEntry {
    pub name: String,
    pub notation: String,
    pub line: usize,
    pub diagram: LinkDiagram,
    pub overridden: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub line: usize,
    pub message: String,
}

/// A replacement diagram for a named entry, from a line `@override <name> <notation>`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Override {
    pub name: String,
    pub notation: String,
    pub line: usize,
}

#[derive(Debug, Clone)]
pub struct Table {
    pub entries: Vec<TableEntry>,
    pub diagnostics: Vec<Diagnostic>,
    pub overrides: Vec<Override>,
    /// SHA-256 of the table text, hex encoded.
    pub hash: String,
}

impl Table {
    pub fn get(&self, name: &str) -> Option<&TableEntry> {
        self.entries.iter().find(|e| e.name == name)
    }
}

/// Tables shipped with the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bundled {
    /// Prime knots up to 10 crossings, classical numbering.
    Rolfsen10,
    /// Prime knots with 11 crossings.
    Ht11,
    /// Prime links up to 7 crossings.
    Links7,
}

impl Bundled {
    pub fn text(self) -> &'static str {
        match self {
            Bundled::Rolfsen10 => include_str!("../../data/rolfsen_upto10.tbl"),
            Bundled::Ht11 => include_str!("../../data/ht11.tbl"),
            Bundled::Links7 => include_str!("../../data/links_upto7.tbl"),
        }
    }

    pub fn load(self) -> Table {
        parse_table(self.text())
    }

    pub fn name(self) -> &'static str {
        match self {
            Bundled::Rolfsen10 => "rolfsen10",
            Bundled::Ht11 => "ht11",
            Bundled::Links7 => "links7",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        [Bundled::Rolfsen10, Bundled::Ht11, Bundled::Links7]
            .into_iter()
            .find(|b| b.name() == name)
    }
}

pub fn load_table(path: impl AsRef<Path>) -> io::Result<Table> {
    Ok(parse_table(&fs::read_to_string(path)?))
}

/// Parses `<name> <notation>` lines. Blank lines and `#` comments are skipped; bad lines
/// produce diagnostics and the remaining entries are kept.
pub fn parse_table(text: &str) -> Table {
    let mut entries: Vec<TableEntry> = Vec::new();
    let mut diagnostics = Vec::new();
    let mut pending = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap().trim();
        if body.is_empty() {
            continue;
        }
        let (name, notation, is_override) = match body.strip_prefix(OVERRIDE) {
            Some(rest) => match split_first(rest.trim()) {
                Some((n, t)) => (n, t, true),
                None => {
                    diagnostics.push(Diagnostic {
                        line,
                        message: "override needs a name and a diagram".into(),
                    });
                    continue;
                }
            },
            None => match split_first(body) {
                Some((n, t)) => (n, t, false),
                None => {
                    diagnostics.push(Diagnostic {
                        line,
                        message: "expected '<name> <diagram>'".into(),
                    });
                    continue;
                }
            },
        };
        if is_override {
            pending.push(Override {
                name: name.to_string(),
                notation: notation.to_string(),
                line,
            });
            continue;
        }
        if index.contains_key(name) {
            diagnostics.push(Diagnostic {
                line,
                message: format!("duplicate entry {name}"),
            });
            continue;
        }
        match parse_notation(notation) {
            Ok(d) => {
                index.insert(name.to_string(), entries.len());
                entries.push(TableEntry {
                    name: name.to_string(),
                    notation: notation.to_string(),
                    line,
                    diagram: d.with_name(name),
                    overridden: false,
                });
            }
            Err(e) => diagnostics.push(Diagnostic {
                line,
                message: format!("{name}: {e}"),
            }),
        }
    }
    let mut overrides = Vec::new();
    for o in pending {
        let Some(&i) = index.get(&o.name) else {
            diagnostics.push(Diagnostic {
                line: o.line,
                message: format!("override for unknown entry {}", o.name),
            });
            continue;
        };
        match parse_notation(&o.notation) {
            Ok(d) => {
                let e = &mut entries[i];
                e.diagram = d.with_name(o.name.clone());
                e.notation = o.notation.clone();
                e.overridden = true;
                overrides.push(o);
            }
            Err(err) => diagnostics.push(Diagnostic {
                line: o.line,
                message: format!("override {}: {err}", o.name),
            }),
        }
    }
    diagnostics.sort_by_key(|d| d.line);
    let hash = Sha256::digest(text.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect();
    Table {
        entries,
        diagnostics,
        overrides,
        hash,
    }
}

fn split_first(s: &str) -> Option<(&str, &str)> {
    let (name, rest) = s.split_once(char::is_whitespace)?;
    let rest = rest.trim();
    (!name.is_empty() && !rest.is_empty()).then_some((name, rest))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagnostics_keep_good_entries() {
        let t = parse_table(
            "# header\n3_1 X(1,4,2,5);X(3,6,4,1);X(5,2,6,3)\n\nbad X(1,2,3\n4_1 DT: 4 6 8 2\nlonely\n3_1 DT: 4 6 2\n",
        );
        assert_eq!(t.entries.len(), 2);
        let lines: Vec<usize> = t.diagnostics.iter().map(|d| d.line).collect();
        assert_eq!(lines, vec![4, 6, 7]);
        assert_eq!(t.get("4_1").unwrap().line, 5);
    }

    #[test]
    fn overrides_replace_and_are_logged() {
        let t = parse_table(
            "k X(1,4,2,5);X(3,6,4,1);X(5,2,6,3)\n@override k DT: 4 6 2\n@override nope DT: 4 6 2\n",
        );
        assert_eq!(t.overrides.len(), 1);
        assert!(t.get("k").unwrap().overridden);
        assert!(t.get("k").unwrap().diagram.is_positive());
        assert_eq!(t.diagnostics.len(), 1);
    }

    #[test]
    fn bundled_tables_load_cleanly() {
        for (b, n) in [
            (Bundled::Rolfsen10, 249),
            (Bundled::Ht11, 552),
            (Bundled::Links7, 18),
        ] {
            let t = b.load();
            assert!(t.diagnostics.is_empty(), "{:?}", t.diagnostics);
            assert_eq!(t.entries.len(), n);
        }
    }
}
