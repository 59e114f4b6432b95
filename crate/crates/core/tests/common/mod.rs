#![allow(dead_code)]

use rand::Rng;
use statesurf::diagram::braid_closure;
use statesurf::harness::Bundled;
use statesurf::state::{checkerboard_states, negative_state, positive_state, seifert_state};
use statesurf::{LinkDiagram, Sign, State};

pub const ALL_TABLES: [Bundled; 3] = [Bundled::Rolfsen10, Bundled::Ht11, Bundled::Links7];

pub fn bundled_diagrams() -> Vec<(String, LinkDiagram)> {
    ALL_TABLES
        .iter()
        .flat_map(|t| t.load().entries)
        .map(|e| (e.name, e.diagram))
        .collect()
}

pub fn canonical_states(d: &LinkDiagram) -> Vec<State> {
    let (black, white) = checkerboard_states(d);
    vec![
        positive_state(d),
        negative_state(d),
        seifert_state(d),
        black,
        white,
    ]
}

/// A random braid closure on 2 to 6 strands with 1 to `max_len` letters.
pub fn random_braid<R: Rng>(rng: &mut R, max_len: usize) -> (usize, Vec<i32>, LinkDiagram) {
    let strands = rng.gen_range(2..=6usize);
    let len = rng.gen_range(1..=max_len);
    let word: Vec<i32> = (0..len)
        .map(|_| {
            let g = rng.gen_range(1..strands) as i32;
            if rng.gen_bool(0.5) {
                g
            } else {
                -g
            }
        })
        .collect();
    let d = braid_closure(strands, &word).unwrap();
    (strands, word, d)
}

pub fn random_state<R: Rng>(rng: &mut R, n: usize) -> State {
    State::new(
        (0..n)
            .map(|_| if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus })
            .collect(),
    )
}

/// Component count of a diagram counting each crossingless circle separately.
pub fn pieces(d: &LinkDiagram) -> usize {
    d.diagram_component_count()
}

use statesurf::certify::classify;
use statesurf::diagram::FaceColor;
use statesurf::oracle::{
    brute_adequate_homogeneous, brute_surface_classify, naive_loop_trace, slot_complex_classify,
};
use statesurf::state::smooth;
use statesurf::stategraph::{blocks, build_state_graph};
use statesurf::surface::{build_state_surface, factor_surfaces};

macro_rules! check {
    ($out:expr, $cond:expr, $($fmt:tt)*) => {
        if !$cond {
            $out.push(format!($($fmt)*));
        }
    };
}

/// Every forced identity for one (diagram, state) pair; returns the violations.
pub fn pair_violations(d: &LinkDiagram, st: &State) -> Vec<String> {
    let mut out = Vec::new();
    let n = d.crossing_count() as i64;
    let m = smooth(d, st).unwrap().loop_count() as i64;
    let g = build_state_graph(d, st).unwrap();
    let dec = blocks(&g);
    let surface = build_state_surface(d, st).unwrap();
    let inv = surface.invariants();
    let seifert = seifert_state(d);

    check!(out, inv.chi == m - n, "chi {} but m - n = {}", inv.chi, m - n);
    check!(
        out,
        inv.boundary == d.link_component_count(),
        "boundary {} for {} components",
        inv.boundary,
        d.link_component_count()
    );
    if *st == seifert {
        check!(out, inv.orientable, "Seifert surface nonorientable");
    }
    if d.link_component_count() == 1 {
        check!(
            out,
            inv.orientable == (*st == seifert),
            "knot: orientable {} but seifert {}",
            inv.orientable,
            *st == seifert
        );
    }
    for c in &inv.components {
        let deficit = 2 - c.chi - c.boundary as i64;
        if c.orientable {
            check!(out, deficit >= 0 && deficit % 2 == 0, "orientable deficit {deficit}");
        } else {
            check!(out, deficit >= 1, "nonorientable deficit {deficit}");
        }
    }

    let cover = surface.double_cover().invariants();
    check!(out, cover.chi == 2 * inv.chi, "cover chi {} vs {}", cover.chi, inv.chi);
    check!(out, cover.orientable, "cover nonorientable");
    check!(out, cover.boundary == 2 * inv.boundary, "cover boundary {}", cover.boundary);
    let expected_pieces: usize = inv
        .components
        .iter()
        .map(|c| if c.orientable { 2 } else { 1 })
        .sum();
    check!(
        out,
        cover.components.len() == expected_pieces,
        "cover has {} components, expected {expected_pieces}",
        cover.components.len()
    );
    if inv.connected {
        check!(
            out,
            cover.connected == !inv.orientable,
            "cover connected {} but orientable {}",
            cover.connected,
            inv.orientable
        );
    }

    let factors = factor_surfaces(&surface, &dec);
    let factor_chi: i64 = factors.iter().map(|f| f.invariants().chi).sum();
    let mut multiplicity = vec![0i64; g.vertex_count()];
    for b in &dec.blocks {
        for &v in &b.vertices {
            multiplicity[v] += 1;
        }
    }
    check!(out, multiplicity.iter().all(|&k| k >= 1), "vertex in no block");
    let correction: i64 = multiplicity.iter().map(|k| k - 1).sum();
    check!(
        out,
        factor_chi == inv.chi + correction,
        "factor chi {factor_chi} vs {} + {correction}",
        inv.chi
    );

    let mirror = d.mirror();
    let flipped = st.flipped();
    let mg = build_state_graph(&mirror, &flipped).unwrap();
    check!(out, mg.is_adequate() == g.is_adequate(), "mirror adequacy differs");
    check!(
        out,
        blocks(&mg).is_homogeneous() == dec.is_homogeneous(),
        "mirror homogeneity differs"
    );
    let minv = build_state_surface(&mirror, &flipped).unwrap().invariants();
    check!(
        out,
        (minv.chi, minv.orientable, minv.boundary) == (inv.chi, inv.orientable, inv.boundary),
        "mirror surface differs"
    );
    out
}

/// The same pair checked against the slow reference implementations.
pub fn oracle_violations(d: &LinkDiagram, st: &State) -> Vec<String> {
    let mut out = Vec::new();
    let sm = smooth(d, st).unwrap();
    let naive = naive_loop_trace(d, st);
    check!(
        out,
        naive.len() == sm.loop_count(),
        "loop count {} vs naive {}",
        sm.loop_count(),
        naive.len()
    );
    for lp in &naive {
        let ids: std::collections::BTreeSet<usize> = lp.iter().map(|&e| sm.loop_of_end(e)).collect();
        check!(out, ids.len() <= 1, "naive loop split across {} fast loops", ids.len());
    }
    let g = build_state_graph(d, st).unwrap();
    let fast = (g.is_adequate(), blocks(&g).is_homogeneous());
    let brute = brute_adequate_homogeneous(d, st);
    check!(out, fast == brute, "adequate/homogeneous {fast:?} vs brute {brute:?}");
    let surface = build_state_surface(d, st).unwrap();
    let inv = surface.invariants();
    let fast = (inv.chi, inv.orientable, inv.boundary);
    let poly = brute_surface_classify(&surface);
    let slot = slot_complex_classify(d, st);
    check!(
        out,
        fast == (poly.chi, poly.orientable, poly.boundary),
        "surface {fast:?} vs polygon complex {poly:?}"
    );
    check!(
        out,
        fast == (slot.chi, slot.orientable, slot.boundary),
        "surface {fast:?} vs slot complex {slot:?}"
    );
    out
}

/// Diagram-level identities: Turaev genus, checkerboard loops, class implications.
pub fn diagram_violations(d: &LinkDiagram) -> Vec<String> {
    let mut out = Vec::new();
    let n = d.crossing_count() as i64;
    let m_plus = smooth(d, &positive_state(d)).unwrap().loop_count() as i64;
    let m_minus = smooth(d, &negative_state(d)).unwrap().loop_count() as i64;
    let twice = 2 * pieces(d) as i64 + n - m_plus - m_minus;
    check!(out, twice >= 0 && twice % 2 == 0, "Turaev genus {twice}/2");

    if !d.is_split_diagram() && n > 0 {
        let map = d.faces();
        let black = (0..map.face_count())
            .filter(|&f| map.color(f) == FaceColor::Black)
            .count();
        let (bs, ws) = checkerboard_states(d);
        let mb = smooth(d, &bs).unwrap().loop_count();
        let mw = smooth(d, &ws).unwrap().loop_count();
        check!(out, mb == black, "black state has {mb} loops, {black} black faces");
        check!(
            out,
            mw == map.face_count() - black,
            "white state has {mw} loops, {} white faces",
            map.face_count() - black
        );
    }

    let c = classify(d);
    check!(out, !c.adequate || c.semiadequate, "adequate but not semiadequate");
    check!(
        out,
        !(c.class.alternating && c.class.reduced) || c.adequate,
        "reduced alternating but not adequate"
    );
    check!(out, !c.class.positive || c.homogeneous, "positive but not homogeneous");
    check!(out, !c.homogeneous || c.seifert_adequate, "homogeneous but Seifert inadequate");
    if c.class.positive {
        check!(out, seifert_state(d) == positive_state(d), "positive: Seifert is not plus");
    }
    out
}
