//! Oriented link diagrams in planar-diagram form.
//!
//! A crossing is stored as four arc labels `[a, b, c, d]` read counterclockwise,
//! starting from the incoming under-strand. Slot ends are addressed as
//! `4 * crossing + slot`.

mod braid;
mod dt;
mod pd;
mod plane;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

pub use braid::braid_closure;
pub use dt::{parse_dt, realize_dt};
pub use pd::{parse_notation, parse_pd};
pub use plane::{Corner, FaceColor, PlaneMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("empty diagram")]
    Empty,
    #[error("arc label {label} is not a positive integer")]
    InvalidLabel { label: i64 },
    #[error("arc label {label} appears {count} times, expected exactly 2")]
    LabelMultiplicity { label: i64, count: usize },
    #[error("strand through crossing {crossing} runs against the orientation of its under-strand")]
    Orientation { crossing: usize },
    #[error("not planar: a component with {crossings} crossings has {faces} faces, expected {expected}")]
    NonPlanar {
        crossings: usize,
        faces: usize,
        expected: usize,
    },
    #[error("malformed DT code: {0}")]
    Dt(String),
    #[error("DT code [{code}] has no planar realization")]
    NotRealizable { code: String },
}

pub(crate) fn opposite(end: usize) -> usize {
    end ^ 2
}

pub(crate) fn next_ccw(end: usize) -> usize {
    (end & !3) | ((end + 1) & 3)
}

/// One passage of a link component through a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Pass {
    pub crossing: usize,
    /// Slot through which the strand enters: 0 for the under-strand, 1 or 3 for the over-strand.
    pub slot: usize,
}

impl Pass {
    pub fn is_over(&self) -> bool {
        self.slot % 2 == 1
    }
}

#[derive(Debug, Clone)]
pub struct LinkDiagram {
    name: Option<String>,
    crossings: Vec<[u32; 4]>,
    circles: usize,
    mate: Vec<usize>,
    over_in: Vec<usize>,
    strands: Vec<Vec<Pass>>,
}

impl PartialEq for LinkDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.crossings == other.crossings && self.circles == other.circles
    }
}

impl Eq for LinkDiagram {}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Role {
    Free,
    In,
    Out,
}

impl LinkDiagram {
    /// Builds a diagram from raw crossing tuples plus `circles` crossingless components.
    ///
    /// Orientation is recovered by walking strands so that every under-strand enters at
    /// slot `a`; components that only pass over are oriented along increasing labels.
    /// Arc labels are renumbered consecutively along each component, which leaves
    /// already-normalized input unchanged.
    pub fn from_pd_terms(
        name: Option<String>,
        terms: &[[i64; 4]],
        circles: usize,
    ) -> Result<Self, DiagramError> {
        if terms.is_empty() && circles == 0 {
            return Err(DiagramError::Empty);
        }
        let n = terms.len();
        let label = |e: usize| terms[e / 4][e % 4];
        let mut ends: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for e in 0..4 * n {
            if label(e) <= 0 {
                return Err(DiagramError::InvalidLabel { label: label(e) });
            }
            ends.entry(label(e)).or_default().push(e);
        }
        let mut mate = vec![0; 4 * n];
        for (&l, v) in &ends {
            if v.len() != 2 {
                return Err(DiagramError::LabelMultiplicity {
                    label: l,
                    count: v.len(),
                });
            }
            mate[v[0]] = v[1];
            mate[v[1]] = v[0];
        }

        let mut role = vec![Role::Free; 4 * n];
        let trace = |start: usize, role: &mut Vec<Role>| -> Result<Vec<Pass>, DiagramError> {
            let mut passes = Vec::new();
            let mut e = start;
            loop {
                let out = opposite(e);
                if e % 4 == 2 || role[e] != Role::Free || role[out] != Role::Free {
                    return Err(DiagramError::Orientation { crossing: e / 4 });
                }
                role[e] = Role::In;
                role[out] = Role::Out;
                passes.push(Pass {
                    crossing: e / 4,
                    slot: e % 4,
                });
                e = mate[out];
                if e == start {
                    return Ok(passes);
                }
            }
        };
        let mut strands = Vec::new();
        for c in 0..n {
            if role[4 * c] == Role::Free {
                strands.push(trace(4 * c, &mut role)?);
            }
        }
        while let Some(e1) = (0..4 * n)
            .filter(|&e| role[e] == Role::Free)
            .min_by_key(|&e| (label(e), e))
        {
            let e2 = mate[e1];
            let fits = |e: usize| label(opposite(e)) == label(e) + 1;
            let start = if fits(e1) || !fits(e2) { e1 } else { e2 };
            strands.push(trace(start, &mut role)?);
        }

        for s in strands.iter_mut() {
            let k = (0..s.len())
                .min_by_key(|&k| label(4 * s[k].crossing + s[k].slot))
                .unwrap();
            s.rotate_left(k);
        }
        strands.sort_by_key(|s| label(4 * s[0].crossing + s[0].slot));
        let mut relabel = vec![0u32; 4 * n];
        let mut next = 1u32;
        for s in &strands {
            let len = s.len() as u32;
            for (k, p) in s.iter().enumerate() {
                let e = 4 * p.crossing + p.slot;
                relabel[e] = next + k as u32;
                relabel[opposite(e)] = next + (k as u32 + 1) % len;
            }
            next += len;
        }
        let crossings: Vec<[u32; 4]> = (0..n)
            .map(|c| [0, 1, 2, 3].map(|s| relabel[4 * c + s]))
            .collect();
        let over_in = (0..n)
            .map(|c| if role[4 * c + 1] == Role::In { 1 } else { 3 })
            .collect();

        let d = LinkDiagram {
            name,
            crossings,
            circles,
            mate,
            over_in,
            strands,
        };
        let map = d.faces();
        for (comp, crossings) in d.crossing_components().iter().enumerate() {
            let faces = map.component_face_count(comp);
            if faces != crossings.len() + 2 {
                return Err(DiagramError::NonPlanar {
                    crossings: crossings.len(),
                    faces,
                    expected: crossings.len() + 2,
                });
            }
        }
        Ok(d)
    }

    /// The crossingless unknot.
    pub fn unknot() -> Self {
        Self::from_pd_terms(None, &[], 1).unwrap()
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn crossings(&self) -> &[[u32; 4]] {
        &self.crossings
    }

    /// Number of crossingless circle components.
    pub fn circles(&self) -> usize {
        self.circles
    }

    /// Slot end at the other end of the arc leaving slot end `end`.
    pub fn mate(&self, end: usize) -> usize {
        self.mate[end]
    }

    pub fn label(&self, end: usize) -> u32 {
        self.crossings[end / 4][end % 4]
    }

    /// Link components with crossings, as passes in traversal order.
    pub fn strands(&self) -> &[Vec<Pass>] {
        &self.strands
    }

    pub fn link_component_count(&self) -> usize {
        self.strands.len() + self.circles
    }

    /// Slot (1 or 3) through which the over-strand enters crossing `i`.
    pub fn over_in(&self, i: usize) -> usize {
        self.over_in[i]
    }

    /// +1 when the over-strand enters at slot `d`, -1 when it enters at slot `b`.
    pub fn crossing_sign(&self, i: usize) -> i8 {
        if self.over_in[i] == 3 {
            1
        } else {
            -1
        }
    }

    pub fn signs(&self) -> Vec<i8> {
        (0..self.crossing_count())
            .map(|i| self.crossing_sign(i))
            .collect()
    }

    pub fn writhe(&self) -> i64 {
        self.signs().iter().map(|&s| s as i64).sum()
    }

    pub fn is_alternating(&self) -> bool {
        self.strands.iter().all(|s| {
            (0..s.len()).all(|k| s[k].is_over() != s[(k + 1) % s.len()].is_over())
        })
    }

    pub fn is_positive(&self) -> bool {
        (0..self.crossing_count()).all(|i| self.crossing_sign(i) == 1)
    }

    pub fn is_negative(&self) -> bool {
        (0..self.crossing_count()).all(|i| self.crossing_sign(i) == -1)
    }

    pub fn faces(&self) -> PlaneMap {
        PlaneMap::new(self)
    }

    /// Crossings met twice by a single face.
    pub fn nugatory_crossings(&self) -> Vec<usize> {
        let map = self.faces();
        (0..self.crossing_count())
            .filter(|&i| {
                map.face_of(4 * i) == map.face_of(4 * i + 2)
                    || map.face_of(4 * i + 1) == map.face_of(4 * i + 3)
            })
            .collect()
    }

    pub fn is_reduced(&self) -> bool {
        self.nugatory_crossings().is_empty()
    }

    /// Crossing sets of the connected pieces that contain crossings, ordered by
    /// smallest crossing index.
    pub(crate) fn crossing_components(&self) -> Vec<Vec<usize>> {
        let n = self.crossing_count();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for root in 0..n {
            if comp[root] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![root];
            comp[root] = id;
            let mut k = 0;
            while k < members.len() {
                let c = members[k];
                k += 1;
                for s in 0..4 {
                    let j = self.mate[4 * c + s] / 4;
                    if comp[j] == usize::MAX {
                        comp[j] = id;
                        members.push(j);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn diagram_component_count(&self) -> usize {
        self.crossing_components().len() + self.circles
    }

    pub fn is_split_diagram(&self) -> bool {
        self.diagram_component_count() > 1
    }

    /// Connected pieces as standalone diagrams; crossingless circles come last.
    pub fn connected_components(&self) -> Vec<LinkDiagram> {
        let mut out: Vec<LinkDiagram> = self
            .crossing_components()
            .into_iter()
            .map(|cs| {
                let terms: Vec<[i64; 4]> = cs
                    .iter()
                    .map(|&c| self.crossings[c].map(|l| l as i64))
                    .collect();
                LinkDiagram::from_pd_terms(self.name.clone(), &terms, 0)
                    .expect("component of a valid diagram")
            })
            .collect();
        for _ in 0..self.circles {
            out.push(LinkDiagram::from_pd_terms(self.name.clone(), &[], 1).unwrap());
        }
        out
    }

    /// Same projection with every crossing switched.
    pub fn mirror(&self) -> LinkDiagram {
        let terms: Vec<[i64; 4]> = self
            .crossings
            .iter()
            .zip(&self.over_in)
            .map(|(x, &o)| [0, 1, 2, 3].map(|k| x[(o + k) % 4] as i64))
            .collect();
        let name = self.name.as_ref().map(|s| format!("{s}*"));
        LinkDiagram::from_pd_terms(name, &terms, self.circles)
            .expect("mirror of a valid diagram")
    }

    pub fn to_pd_string(&self) -> String {
        let mut parts: Vec<String> = self
            .crossings
            .iter()
            .map(|x| format!("X({},{},{},{})", x[0], x[1], x[2], x[3]))
            .collect();
        parts.extend(std::iter::repeat_n("O".to_string(), self.circles));
        parts.join(";")
    }
}

impl fmt::Display for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pd_string())
    }
}
