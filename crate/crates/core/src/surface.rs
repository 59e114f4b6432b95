//! State surfaces as ribbon graphs: one disk per state loop, one band per crossing.

use serde::Serialize;
use thiserror::Error;

use crate::diagram::LinkDiagram;
use crate::dsu::Dsu;
use crate::state::{smooth, Sign, State, StateError};
use crate::stategraph::BlockDecomposition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error(transparent)]
    State(#[from] StateError),
    #[error("surface boundary has {boundary} components but the link has {link}")]
    SelfValidation { boundary: usize, link: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Attachment {
    pub band: usize,
    pub end: usize,
}

/// A disk and the band ends attached along its boundary, in the order met when
/// walking the boundary once.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Disk {
    pub attachments: Vec<Attachment>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BandEnd {
    pub disk: usize,
    pub position: usize,
    /// Crossing slots at the start and end of this stretch of the disk boundary.
    pub slots: [usize; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Band {
    pub crossing: usize,
    pub ends: [BandEnd; 2],
    /// Whether the band reverses the orientations induced by the two disk walks.
    pub twisted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RibbonSurface {
    pub disks: Vec<Disk>,
    pub bands: Vec<Band>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ComponentInvariants {
    pub chi: i64,
    pub boundary: usize,
    pub orientable: bool,
    pub genus_or_crosscap: i64,
}

impl ComponentInvariants {
    pub fn new(chi: i64, boundary: usize, orientable: bool) -> Self {
        let deficit = 2 - chi - boundary as i64;
        ComponentInvariants {
            chi,
            boundary,
            orientable,
            genus_or_crosscap: if orientable { deficit / 2 } else { deficit },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurfaceInvariants {
    pub chi: i64,
    pub orientable: bool,
    pub boundary: usize,
    /// Genus if orientable, crosscap number otherwise; summed over components.
    pub genus_or_crosscap: i64,
    pub connected: bool,
    pub components: Vec<ComponentInvariants>,
}

impl SurfaceInvariants {
    pub fn from_components(components: Vec<ComponentInvariants>) -> Self {
        SurfaceInvariants {
            chi: components.iter().map(|c| c.chi).sum(),
            orientable: components.iter().all(|c| c.orientable),
            boundary: components.iter().map(|c| c.boundary).sum(),
            genus_or_crosscap: components.iter().map(|c| c.genus_or_crosscap).sum(),
            connected: components.len() == 1,
            components,
        }
    }
}

fn band_walk(sign: Sign) -> [[usize; 2]; 2] {
    match sign {
        Sign::Plus => [[0, 1], [3, 2]],
        Sign::Minus => [[0, 3], [1, 2]],
    }
}

/// Builds the state surface of `state` and checks that its boundary has as many
/// components as the link.
pub fn build_state_surface(d: &LinkDiagram, state: &State) -> Result<RibbonSurface, SurfaceError> {
    let sm = smooth(d, state)?;
    let n = d.crossing_count();
    let partner = |e: usize| 4 * (e / 4) + state.get(e / 4).partner(e % 4);

    let mut disks = vec![
        Disk {
            attachments: Vec::new()
        };
        sm.loop_count()
    ];
    let mut ends: Vec<[Option<BandEnd>; 2]> = vec![[None, None]; n];
    let mut traced = vec![false; sm.loop_count()];
    for start in 0..4 * n {
        let l = sm.loop_of_end(start);
        if traced[l] {
            continue;
        }
        traced[l] = true;
        let mut cur = start;
        loop {
            let next = partner(cur);
            let c = cur / 4;
            let end = if cur % 4 == 0 || next % 4 == 0 { 0 } else { 1 };
            ends[c][end] = Some(BandEnd {
                disk: l,
                position: disks[l].attachments.len(),
                slots: [cur % 4, next % 4],
            });
            disks[l].attachments.push(Attachment { band: c, end });
            cur = d.mate(next);
            if cur == start {
                break;
            }
        }
    }
    let bands = (0..n)
        .map(|c| {
            let ends = ends[c].map(Option::unwrap);
            let walk = band_walk(state.get(c));
            let along0 = ends[0].slots == walk[0];
            let along1 = ends[1].slots == walk[1];
            Band {
                crossing: c,
                ends,
                twisted: along0 != along1,
            }
        })
        .collect();
    let s = RibbonSurface { disks, bands };
    let boundary = s.boundary_count();
    if boundary != d.link_component_count() {
        return Err(SurfaceError::SelfValidation {
            boundary,
            link: d.link_component_count(),
        });
    }
    Ok(s)
}

impl RibbonSurface {
    fn end(&self, a: Attachment) -> BandEnd {
        self.bands[a.band].ends[a.end]
    }

    /// Connected component id of each disk, numbered by first disk.
    pub fn disk_components(&self) -> (usize, Vec<usize>) {
        let mut dsu = Dsu::new(self.disks.len());
        for b in &self.bands {
            dsu.union(b.ends[0].disk, b.ends[1].disk);
        }
        dsu.classes()
    }

    /// Boundary circles, each reported by the disk it first touches.
    fn boundary_cycles(&self) -> Vec<usize> {
        // point (band, end, side): side 0 is before the attachment, side 1 after
        let id = |band: usize, end: usize, side: usize| 4 * band + 2 * end + side;
        let m = 4 * self.bands.len();
        let mut along_disk = vec![0; m];
        for disk in &self.disks {
            let k = disk.attachments.len();
            for j in 0..k {
                let a = disk.attachments[j];
                let b = disk.attachments[(j + 1) % k];
                along_disk[id(a.band, a.end, 1)] = id(b.band, b.end, 0);
                along_disk[id(b.band, b.end, 0)] = id(a.band, a.end, 1);
            }
        }
        let across_band = |p: usize| {
            let (band, end, side) = (p / 4, (p / 2) % 2, p % 2);
            let other_side = if self.bands[band].twisted { side } else { 1 - side };
            id(band, 1 - end, other_side)
        };
        let mut seen = vec![false; m];
        let mut out = Vec::new();
        for p in 0..m {
            if seen[p] {
                continue;
            }
            out.push(self.bands[p / 4].ends[(p / 2) % 2].disk);
            let mut q = p;
            while !seen[q] {
                seen[q] = true;
                let r = along_disk[q];
                seen[r] = true;
                q = across_band(r);
            }
        }
        for (v, disk) in self.disks.iter().enumerate() {
            if disk.attachments.is_empty() {
                out.push(v);
            }
        }
        out
    }

    pub fn boundary_count(&self) -> usize {
        self.boundary_cycles().len()
    }

    pub fn invariants(&self) -> SurfaceInvariants {
        let (count, comp) = self.disk_components();
        let mut vertices = vec![0i64; count];
        let mut edges = vec![0i64; count];
        let mut boundary = vec![0usize; count];
        let mut orientable = vec![true; count];
        for &c in &comp {
            vertices[c] += 1;
        }
        for b in &self.bands {
            edges[comp[b.ends[0].disk]] += 1;
        }
        for v in self.boundary_cycles() {
            boundary[comp[v]] += 1;
        }
        let mut side = vec![u8::MAX; self.disks.len()];
        let mut incident: Vec<Vec<(usize, u8)>> = vec![Vec::new(); self.disks.len()];
        for b in &self.bands {
            let t = b.twisted as u8;
            incident[b.ends[0].disk].push((b.ends[1].disk, t));
            incident[b.ends[1].disk].push((b.ends[0].disk, t));
        }
        for root in 0..self.disks.len() {
            if side[root] != u8::MAX {
                continue;
            }
            side[root] = 0;
            let mut stack = vec![root];
            while let Some(v) = stack.pop() {
                for &(w, t) in &incident[v] {
                    let want = side[v] ^ t;
                    if side[w] == u8::MAX {
                        side[w] = want;
                        stack.push(w);
                    } else if side[w] != want {
                        orientable[comp[v]] = false;
                    }
                }
            }
        }
        SurfaceInvariants::from_components(
            (0..count)
                .map(|c| {
                    ComponentInvariants::new(vertices[c] - edges[c], boundary[c], orientable[c])
                })
                .collect(),
        )
    }

    /// Orientation double cover: two copies of each disk, the second with reversed
    /// boundary order, joined so that every lifted band is untwisted.
    pub fn double_cover(&self) -> RibbonSurface {
        let nd = self.disks.len();
        let sheet_disk = |v: usize, s: usize| v + s * nd;
        let lift = |band: usize, end: usize, sheet: usize| {
            let t = self.bands[band].twisted as usize;
            let s0 = if end == 0 { sheet } else { sheet ^ t };
            band + s0 * self.bands.len()
        };
        let mut disks = Vec::with_capacity(2 * nd);
        for s in 0..2 {
            for disk in &self.disks {
                let mut attachments: Vec<Attachment> = disk
                    .attachments
                    .iter()
                    .map(|a| Attachment {
                        band: lift(a.band, a.end, s),
                        end: a.end,
                    })
                    .collect();
                if s == 1 {
                    attachments.reverse();
                }
                disks.push(Disk { attachments });
            }
        }
        let mut bands = Vec::with_capacity(2 * self.bands.len());
        for s0 in 0..2 {
            for b in &self.bands {
                let sheets = [s0, s0 ^ b.twisted as usize];
                let ends = [0, 1].map(|k| {
                    let e = b.ends[k];
                    let s = sheets[k];
                    let len = self.disks[e.disk].attachments.len();
                    BandEnd {
                        disk: sheet_disk(e.disk, s),
                        position: if s == 0 { e.position } else { len - 1 - e.position },
                        slots: if s == 0 { e.slots } else { [e.slots[1], e.slots[0]] },
                    }
                });
                bands.push(Band {
                    crossing: b.crossing,
                    ends,
                    twisted: false,
                });
            }
        }
        RibbonSurface { disks, bands }
    }

    /// Sub-surface spanned by the disks and bands of one block.
    pub fn restrict(&self, disks: &[usize], bands: &[usize]) -> RibbonSurface {
        let local_band = |b: usize| bands.iter().position(|&x| x == b);
        let local_disk = |v: usize| disks.iter().position(|&x| x == v).unwrap();
        let new_disks: Vec<Disk> = disks
            .iter()
            .map(|&v| Disk {
                attachments: self.disks[v]
                    .attachments
                    .iter()
                    .filter_map(|a| {
                        local_band(a.band).map(|band| Attachment { band, end: a.end })
                    })
                    .collect(),
            })
            .collect();
        let new_bands = bands
            .iter()
            .enumerate()
            .map(|(lb, &b)| {
                let old = &self.bands[b];
                let ends = [0, 1].map(|k| {
                    let e = old.ends[k];
                    let disk = local_disk(e.disk);
                    let position = new_disks[disk]
                        .attachments
                        .iter()
                        .position(|a| *a == Attachment { band: lb, end: k })
                        .unwrap();
                    BandEnd {
                        disk,
                        position,
                        slots: e.slots,
                    }
                });
                Band {
                    crossing: old.crossing,
                    ends,
                    twisted: old.twisted,
                }
            })
            .collect();
        RibbonSurface {
            disks: new_disks,
            bands: new_bands,
        }
    }

    pub fn attachment_end(&self, a: Attachment) -> BandEnd {
        self.end(a)
    }
}

pub fn invariants(s: &RibbonSurface) -> SurfaceInvariants {
    s.invariants()
}

pub fn double_cover(s: &RibbonSurface) -> RibbonSurface {
    s.double_cover()
}

/// One surface per block of the state graph (a Murasugi summand of the state surface).
pub fn factor_surfaces(s: &RibbonSurface, dec: &BlockDecomposition) -> Vec<RibbonSurface> {
    dec.blocks
        .iter()
        .map(|b| s.restrict(&b.vertices, &b.edges))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_pd;
    use crate::state::{negative_state, positive_state, seifert_state};
    use crate::stategraph::{blocks, build_state_graph};

    const TREFOIL: &str = "X(1,4,2,5);X(3,6,4,1);X(5,2,6,3)";
    const FIGURE_EIGHT: &str = "X(4,2,5,1);X(8,6,1,5);X(6,3,7,4);X(2,7,3,8)";

    #[test]
    fn trefoil_surfaces() {
        let d = parse_pd(TREFOIL).unwrap();
        let seifert = build_state_surface(&d, &seifert_state(&d)).unwrap();
        let inv = seifert.invariants();
        assert_eq!((inv.chi, inv.boundary, inv.orientable), (-1, 1, true));
        assert_eq!(inv.genus_or_crosscap, 1);
        let other = build_state_surface(&d, &positive_state(&d)).unwrap();
        let inv = other.invariants();
        assert_eq!((inv.chi, inv.boundary, inv.orientable), (0, 1, false));
        assert_eq!(inv.genus_or_crosscap, 1);
    }

    #[test]
    fn kink_surfaces() {
        let d = parse_pd("X(1,1,2,2)").unwrap();
        let s = build_state_surface(&d, &negative_state(&d)).unwrap();
        assert_eq!(s.disks.len(), 1);
        assert!(s.bands[0].twisted);
        let inv = s.invariants();
        assert_eq!((inv.chi, inv.orientable), (0, false));
        let s = build_state_surface(&d, &positive_state(&d)).unwrap();
        assert_eq!(s.invariants().chi, 1);
        assert!(s.invariants().orientable);
    }

    #[test]
    fn figure_eight_factors() {
        let d = parse_pd(FIGURE_EIGHT).unwrap();
        let st = seifert_state(&d);
        let s = build_state_surface(&d, &st).unwrap();
        let dec = blocks(&build_state_graph(&d, &st).unwrap());
        let factors = factor_surfaces(&s, &dec);
        assert_eq!(factors.len(), 2);
        for f in &factors {
            let inv = f.invariants();
            assert_eq!((inv.chi, inv.orientable, inv.boundary), (0, true, 2));
        }
    }

    #[test]
    fn double_cover_doubles_chi() {
        let d = parse_pd(TREFOIL).unwrap();
        for st in [positive_state(&d), negative_state(&d)] {
            let s = build_state_surface(&d, &st).unwrap();
            let inv = s.invariants();
            let cov = s.double_cover().invariants();
            assert_eq!(cov.chi, 2 * inv.chi);
            assert!(cov.orientable);
            assert_eq!(cov.connected, !inv.orientable);
        }
        let s = build_state_surface(&d, &"++-".parse().unwrap()).unwrap();
        let inv = s.invariants();
        assert_eq!((inv.chi, inv.orientable), (-1, false));
        let cov = s.double_cover().invariants();
        assert_eq!((cov.chi, cov.connected), (-2, true));
    }

    #[test]
    fn circle_is_a_disk() {
        let d = parse_pd("O").unwrap();
        let s = build_state_surface(&d, &State::new(vec![])).unwrap();
        let inv = s.invariants();
        assert_eq!((inv.chi, inv.boundary, inv.genus_or_crosscap), (1, 1, 0));
    }
}
