use serde::Serialize;

use super::{next_ccw, LinkDiagram};

/// The corner of a crossing between `slot` and the next slot counterclockwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Corner {
    pub crossing: usize,
    pub slot: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FaceColor {
    Black,
    White,
}

/// Faces of the projection with their corner cycles and a checkerboard colouring.
///
/// In each connected piece the face at corner `(c, 0)` of the lowest crossing `c` is
/// black. Crossingless circles bound one black and one white face that carry no
/// corners; they are counted by [`PlaneMap::face_count`] but not listed.
#[derive(Debug, Clone)]
pub struct PlaneMap {
    faces: Vec<Vec<usize>>,
    face_of: Vec<usize>,
    colors: Vec<FaceColor>,
    component: Vec<usize>,
    circles: usize,
}

impl PlaneMap {
    pub(crate) fn new(d: &LinkDiagram) -> Self {
        let n = d.crossing_count();
        let mut face_of = vec![usize::MAX; 4 * n];
        let mut faces = Vec::new();
        for e in 0..4 * n {
            if face_of[e] != usize::MAX {
                continue;
            }
            let mut cycle = Vec::new();
            let mut cur = e;
            while face_of[cur] == usize::MAX {
                face_of[cur] = faces.len();
                cycle.push(cur);
                cur = d.mate(next_ccw(cur));
            }
            faces.push(cycle);
        }

        let comps = d.crossing_components();
        let mut comp_of = vec![0; n];
        let mut base = vec![u8::MAX; n];
        for (k, members) in comps.iter().enumerate() {
            for &c in members {
                comp_of[c] = k;
            }
            let root = members[0];
            base[root] = 0;
            let mut stack = vec![root];
            while let Some(c) = stack.pop() {
                for s in 0..4 {
                    let e = 4 * c + s;
                    let f = d.mate(next_ccw(e));
                    let want = base[c] ^ (e & 1) as u8 ^ (f & 1) as u8;
                    if base[f / 4] == u8::MAX {
                        base[f / 4] = want;
                        stack.push(f / 4);
                    }
                }
            }
        }
        let colors = faces
            .iter()
            .map(|cycle| {
                let e = cycle[0];
                if base[e / 4] ^ (e & 1) as u8 == 0 {
                    FaceColor::Black
                } else {
                    FaceColor::White
                }
            })
            .collect();
        let component = faces.iter().map(|cycle| comp_of[cycle[0] / 4]).collect();
        PlaneMap {
            faces,
            face_of,
            colors,
            component,
            circles: d.circles(),
        }
    }

    pub fn face_count(&self) -> usize {
        self.faces.len() + 2 * self.circles
    }

    /// Faces carrying corners, as cyclic lists of corner ids `4 * crossing + slot`.
    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn corners(&self, face: usize) -> Vec<Corner> {
        self.faces[face]
            .iter()
            .map(|&e| Corner {
                crossing: e / 4,
                slot: e % 4,
            })
            .collect()
    }

    pub fn face_of(&self, corner: usize) -> usize {
        self.face_of[corner]
    }

    pub fn color(&self, face: usize) -> FaceColor {
        self.colors[face]
    }

    pub fn corner_color(&self, corner: usize) -> FaceColor {
        self.colors[self.face_of[corner]]
    }

    pub(crate) fn component_face_count(&self, component: usize) -> usize {
        self.component.iter().filter(|&&c| c == component).count()
    }
}

#[cfg(test)]
mod tests {
    use crate::diagram::parse_pd;

    use super::*;

    #[test]
    fn figure_eight_faces() {
        let d = parse_pd("X(4,2,5,1);X(8,6,1,5);X(6,3,7,4);X(2,7,3,8)").unwrap();
        let map = d.faces();
        assert_eq!(map.face_count(), 6);
        let black = (0..map.faces().len())
            .filter(|&f| map.color(f) == FaceColor::Black)
            .count();
        assert_eq!(black, 3);
        for f in 0..map.faces().len() {
            for w in map.faces()[f].windows(2) {
                assert_eq!(map.corner_color(w[0]), map.corner_color(w[1]));
            }
        }
        for c in 0..4 {
            assert_ne!(map.corner_color(4 * c), map.corner_color(4 * c + 1));
        }
    }

    #[test]
    fn circle_faces() {
        let d = parse_pd("O").unwrap();
        assert_eq!(d.faces().face_count(), 2);
        assert!(d.faces().faces().is_empty());
    }
}
