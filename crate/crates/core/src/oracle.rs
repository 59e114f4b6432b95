//! Slow reference implementations used to cross-check the fast paths.
//!
//! Nothing here calls into the smoothing, block or surface code: loops are walked
//! label by label, blocks are found by deleting vertices, and surfaces are classified
//! from an explicit polygon complex.

use std::collections::BTreeSet;

use crate::diagram::LinkDiagram;
use crate::state::{Sign, State};
use crate::surface::RibbonSurface;

/// Largest crossing number accepted by [`brute_adequate_homogeneous`].
pub const BRUTE_MAX_CROSSINGS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub chi: i64,
    pub orientable: bool,
    pub boundary: usize,
}

fn smoothing_pairs(sign: Sign) -> [(usize, usize); 2] {
    match sign {
        Sign::Plus => [(0, 1), (2, 3)],
        Sign::Minus => [(0, 3), (1, 2)],
    }
}

fn joined_slot(sign: Sign, slot: usize) -> usize {
    for (p, q) in smoothing_pairs(sign) {
        if slot == p {
            return q;
        }
        if slot == q {
            return p;
        }
    }
    unreachable!()
}

/// Other end of the arc through `(crossing, slot)`, found by scanning labels.
fn follow_arc(d: &LinkDiagram, crossing: usize, slot: usize) -> (usize, usize) {
    let label = d.crossings()[crossing][slot];
    for (c, x) in d.crossings().iter().enumerate() {
        for (s, &l) in x.iter().enumerate() {
            if l == label && (c, s) != (crossing, slot) {
                return (c, s);
            }
        }
    }
    unreachable!("every label appears twice")
}

/// Loops of the smoothing as sets of slot ends `4 * crossing + slot`, walked one arc at
/// a time. Crossingless circles are listed as empty sets at the end.
pub fn naive_loop_trace(d: &LinkDiagram, state: &State) -> Vec<BTreeSet<usize>> {
    assert_eq!(state.len(), d.crossing_count());
    let mut visited = BTreeSet::new();
    let mut loops = Vec::new();
    for c in 0..d.crossing_count() {
        for s in 0..4 {
            if visited.contains(&(4 * c + s)) {
                continue;
            }
            let mut members = BTreeSet::new();
            let (mut cc, mut cs) = (c, s);
            loop {
                members.insert(4 * cc + cs);
                visited.insert(4 * cc + cs);
                let js = joined_slot(state.get(cc), cs);
                members.insert(4 * cc + js);
                visited.insert(4 * cc + js);
                let (nc, ns) = follow_arc(d, cc, js);
                if members.contains(&(4 * nc + ns)) {
                    break;
                }
                (cc, cs) = (nc, ns);
            }
            loops.push(members);
        }
    }
    for _ in 0..d.circles() {
        loops.push(BTreeSet::new());
    }
    loops
}

/// Adequacy and homogeneity decided from scratch.
///
/// Two edges share a block exactly when they lie in one connected component and no
/// single vertex deletion separates them (an edge at the deleted vertex stays with its
/// other end). Panics above [`BRUTE_MAX_CROSSINGS`].
pub fn brute_adequate_homogeneous(d: &LinkDiagram, state: &State) -> (bool, bool) {
    let n = d.crossing_count();
    assert!(n <= BRUTE_MAX_CROSSINGS, "oracle limited to small diagrams");
    let loops = naive_loop_trace(d, state);
    let loop_of = |end: usize| loops.iter().position(|l| l.contains(&end)).unwrap();
    let ends: Vec<(usize, usize)> = (0..n).map(|c| (loop_of(4 * c), loop_of(4 * c + 2))).collect();
    let adequate = ends.iter().all(|(u, v)| u != v);
    let nv = loops.len();

    let component_of_edges = |removed: Option<usize>| -> Vec<Option<usize>> {
        let mut label: Vec<usize> = (0..nv).collect();
        let mut changed = true;
        while changed {
            changed = false;
            for &(u, v) in &ends {
                if Some(u) == removed || Some(v) == removed {
                    continue;
                }
                let m = label[u].min(label[v]);
                if label[u] != m || label[v] != m {
                    label[u] = m;
                    label[v] = m;
                    changed = true;
                }
            }
        }
        ends.iter()
            .map(|&(u, v)| {
                if u == v {
                    None
                } else if Some(u) == removed {
                    Some(label[v])
                } else {
                    Some(label[u])
                }
            })
            .collect()
    };
    let mut same_block = vec![vec![true; n]; n];
    for removed in std::iter::once(None).chain((0..nv).map(Some)) {
        let comp = component_of_edges(removed);
        for e in 0..n {
            for f in 0..n {
                if e != f && (comp[e].is_none() || comp[f].is_none() || comp[e] != comp[f]) {
                    same_block[e][f] = false;
                }
            }
        }
    }
    let homogeneous =
        (0..n).all(|e| (0..n).all(|f| !same_block[e][f] || state.get(e) == state.get(f)));
    (adequate, homogeneous)
}

struct Classes(Vec<usize>);

impl Classes {
    fn root(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        self.0[x] = r;
        r
    }

    fn join(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.root(a), self.root(b));
        self.0[ra.max(rb)] = ra.min(rb);
    }
}

/// Whether the polygons can be oriented so that every glued pair runs along its common
/// edge in opposite directions; `same` marks pairs whose boundary walks currently agree.
fn orient(polygons: usize, shared: &[(usize, usize, bool)]) -> bool {
    let mut o = vec![0i8; polygons];
    for start in 0..polygons {
        if o[start] != 0 {
            continue;
        }
        o[start] = 1;
        let mut changed = true;
        while changed {
            changed = false;
            for &(p, q, same) in shared {
                for (a, b) in [(p, q), (q, p)] {
                    if o[a] == 0 {
                        continue;
                    }
                    let want = if same { -o[a] } else { o[a] };
                    if o[b] == 0 {
                        o[b] = want;
                        changed = true;
                    } else if o[b] != want {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn count_cycles(vertices: usize, free_edges: &[(usize, usize)]) -> usize {
    let mut cls = Classes((0..vertices).collect());
    let mut touched = vec![false; vertices];
    for &(a, b) in free_edges {
        cls.join(a, b);
        touched[a] = true;
        touched[b] = true;
    }
    (0..vertices).filter(|&v| touched[v] && cls.root(v) == v).count()
}

/// Classifies a ribbon surface by gluing a polygon per disk and a quadrilateral per
/// band along explicit edges, then counting cells.
pub fn brute_surface_classify(s: &RibbonSurface) -> Classification {
    let mut corner_base = Vec::new();
    let mut next = 0;
    for disk in &s.disks {
        corner_base.push(next);
        next += (2 * disk.attachments.len()).max(1);
    }
    let band_base = next;
    let total = band_base + 4 * s.bands.len();
    let mut cls = Classes((0..total).collect());
    let mut free = Vec::new();
    let mut glued = 0;
    let mut shared = Vec::new();
    let nd = s.disks.len();

    for (v, disk) in s.disks.iter().enumerate() {
        let k = disk.attachments.len();
        let base = corner_base[v];
        if k == 0 {
            free.push((base, base));
            continue;
        }
        for j in 0..k {
            free.push((base + 2 * j + 1, base + (2 * j + 2) % (2 * k)));
        }
    }
    for (b, band) in s.bands.iter().enumerate() {
        let q = |i: usize| band_base + 4 * b + i;
        free.push((q(1), q(2)));
        free.push((q(3), q(0)));
        for (end, e) in band.ends.iter().enumerate() {
            let k = s.disks[e.disk].attachments.len();
            let pos = s.disks[e.disk]
                .attachments
                .iter()
                .position(|a| a.band == b && a.end == end)
                .expect("band end listed on its disk");
            debug_assert_eq!(pos, e.position);
            let before = corner_base[e.disk] + 2 * pos;
            let after = corner_base[e.disk] + (2 * pos + 1) % (2 * k);
            let (first, second) = if end == 0 { (q(0), q(1)) } else { (q(2), q(3)) };
            let reversed = end == 1 && band.twisted;
            if reversed {
                cls.join(first, after);
                cls.join(second, before);
            } else {
                cls.join(first, before);
                cls.join(second, after);
            }
            glued += 1;
            shared.push((e.disk, nd + b, !reversed));
        }
    }
    let vertices = (0..total).filter(|&x| cls.root(x) == x).count() as i64;
    let free_classes: Vec<(usize, usize)> = free
        .iter()
        .map(|&(a, b)| (cls.root(a), cls.root(b)))
        .collect();
    let edges = (glued + free.len()) as i64;
    let faces = (s.disks.len() + s.bands.len()) as i64;
    Classification {
        chi: vertices - edges + faces,
        orientable: orient(nd + s.bands.len(), &shared),
        boundary: count_cycles(total, &free_classes),
    }
}

/// Classifies the state surface straight from the diagram: slot ends are the vertices,
/// each loop is a polygon, and each crossing contributes a quadrilateral whose sides
/// follow the two strands through the crossing.
pub fn slot_complex_classify(d: &LinkDiagram, state: &State) -> Classification {
    let n = d.crossing_count();
    let loops = naive_loop_trace(d, state);
    // polygon boundary walks as sequences of slot ends
    let mut walks: Vec<Vec<usize>> = Vec::new();
    for l in loops.iter().filter(|l| !l.is_empty()) {
        let start = *l.iter().next().unwrap();
        let mut walk = vec![start];
        let mut cur = start;
        loop {
            let js = 4 * (cur / 4) + joined_slot(state.get(cur / 4), cur % 4);
            let (nc, ns) = follow_arc(d, js / 4, js % 4);
            if 4 * nc + ns == start {
                walk.push(js);
                break;
            }
            walk.push(js);
            walk.push(4 * nc + ns);
            cur = 4 * nc + ns;
        }
        walks.push(walk);
    }
    let disk_count = walks.len();
    for c in 0..n {
        let [(a, b), (p, q)] = smoothing_pairs(state.get(c));
        // a -> b, then along a strand to the slot opposite b, then the other arc, then back
        let far_b = (b + 2) % 4;
        let far_a = (a + 2) % 4;
        let (p, q) = if p == far_b { (p, q) } else { (q, p) };
        debug_assert_eq!(q, far_a);
        walks.push(vec![4 * c + a, 4 * c + b, 4 * c + p, 4 * c + q]);
    }
    let mut shared = Vec::new();
    for i in 0..disk_count {
        let w = &walks[i];
        for k in (0..w.len()).step_by(2) {
            let (x, y) = (w[k], w[k + 1]);
            let c = x / 4;
            let band = &walks[disk_count + c];
            let same = (0..4).any(|j| band[j] == x && band[(j + 1) % 4] == y);
            let opposite = (0..4).any(|j| band[j] == y && band[(j + 1) % 4] == x);
            assert!(same != opposite);
            shared.push((i, disk_count + c, same));
        }
    }
    let vertices = (4 * n + d.circles()) as i64;
    let edges = (6 * n + d.circles()) as i64;
    let faces = (loops.len() + n) as i64;
    let mut free: Vec<(usize, usize)> = Vec::new();
    for e in 0..4 * n {
        let (c, s) = follow_arc(d, e / 4, e % 4);
        free.push((e, 4 * c + s));
        free.push((e, 4 * (e / 4) + (e % 4 + 2) % 4));
    }
    Classification {
        chi: vertices - edges + faces,
        orientable: orient(walks.len(), &shared),
        boundary: count_cycles(4 * n, &free) + d.circles(),
    }
}
