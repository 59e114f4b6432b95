//! One test per acceptance criterion. Each prints a single `[PASS]` or `[FAIL]` line
//! with its measurements and elapsed time, then asserts.

mod common;

use std::io::Write;
use std::time::{Duration, Instant};

use common::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use statesurf::certify::{classify, decide_split, decide_trivial, Undecided, Verdict};
use statesurf::diagram::braid_closure;
use statesurf::harness::{run, run_bundled_remark_check, Bundled};
use statesurf::oracle::brute_adequate_homogeneous;
use statesurf::state::{enumerate_states, negative_state, positive_state, seifert_state, smooth};
use statesurf::stategraph::{
    blocks, build_state_graph, certifies, exhaustive_search, BlockSign, SearchOptions,
};
use statesurf::surface::{build_state_surface, factor_surfaces};
use statesurf::{parse_pd, LinkDiagram, State};

fn verdict(criterion: u32, what: &str, ok: bool, detail: &str, elapsed: Duration, budget: Duration) {
    let pass = ok && elapsed < budget;
    let line = format!(
        "[{}] criterion {criterion}: {what}: {detail} ({:.2?}, budget {:?})\n",
        if pass { "PASS" } else { "FAIL" },
        elapsed,
        budget
    );
    std::io::stdout().write_all(line.as_bytes()).unwrap();
    assert!(ok, "criterion {criterion}: {detail}");
    assert!(elapsed < budget, "criterion {criterion}: over budget");
}

#[test]
fn criterion_1_figure_eight() {
    let t = Instant::now();
    let d = parse_pd("X(4,2,5,1);X(8,6,1,5);X(6,3,7,4);X(2,7,3,8)").unwrap();
    let st = seifert_state(&d);
    let g = build_state_graph(&d, &st).unwrap();
    let dec = blocks(&g);
    let surface = build_state_surface(&d, &st).unwrap();
    let inv = surface.invariants();
    let factors: Vec<_> = factor_surfaces(&surface, &dec)
        .iter()
        .map(|f| f.invariants())
        .collect();
    let block_shape: Vec<(usize, bool)> = dec
        .blocks
        .iter()
        .map(|b| (b.edges.len(), matches!(b.sign, BlockSign::Uniform(_))))
        .collect();
    let ok = g.is_adequate()
        && dec.is_homogeneous()
        && g.vertex_count() == 3
        && g.edge_count() == 4
        && block_shape == [(2, true), (2, true)]
        && (inv.chi, inv.orientable, inv.genus_or_crosscap) == (-1, true, 1)
        && factors.len() == 2
        && factors.iter().all(|f| f.chi == 0 && f.orientable && f.connected);
    let detail = format!(
        "state {st}, {} vertices, {} edges, blocks {block_shape:?}, chi {} genus {}, factor chi {:?}",
        g.vertex_count(),
        g.edge_count(),
        inv.chi,
        inv.genus_or_crosscap,
        factors.iter().map(|f| f.chi).collect::<Vec<_>>()
    );
    verdict(1, "figure-eight Seifert state", ok, &detail, t.elapsed(), Duration::from_secs(1));
}

#[test]
fn criterion_2_alternating_suite() {
    let t = Instant::now();
    let table = Bundled::Rolfsen10.load();
    let alternating: Vec<_> = table
        .entries
        .iter()
        .filter(|e| e.diagram.is_alternating())
        .collect();
    let failures: Vec<String> = alternating
        .par_iter()
        .filter_map(|e| {
            let d = &e.diagram;
            let n = d.crossing_count();
            let (p, m) = (positive_state(d), negative_state(d));
            let loops = smooth(d, &p).unwrap().loop_count() + smooth(d, &m).unwrap().loop_count();
            let ok = d.is_reduced()
                && certifies(d, &p).unwrap()
                && certifies(d, &m).unwrap()
                && loops == n + 2;
            (!ok).then(|| e.name.clone())
        })
        .collect();
    let ok = failures.is_empty() && alternating.len() == 196;
    let detail = format!(
        "{} alternating diagrams, {} failures {failures:?}",
        alternating.len(),
        failures.len()
    );
    verdict(2, "reduced alternating diagrams", ok, &detail, t.elapsed(), Duration::from_secs(30));
}

#[test]
fn criterion_3_exception_lists() {
    let t = Instant::now();
    let mut ok = true;
    let mut parts = Vec::new();
    for table in [Bundled::Rolfsen10, Bundled::Ht11] {
        let r = run_bundled_remark_check(table);
        ok &= r.matches_expected();
        parts.push(format!(
            "{}: exceptions {:?}, missing {:?}, unexpected {:?}, overrides {}",
            table.name(),
            r.exceptions,
            r.missing,
            r.unexpected,
            r.overrides.len()
        ));
    }
    verdict(3, "table exception lists", ok, &parts.join("; "), t.elapsed(), Duration::from_secs(300));
}

/// Positive words on `strands` strands of length `len`, one per rotation class.
fn necklaces(strands: usize, len: usize) -> Vec<Vec<i32>> {
    let k = strands - 1;
    let total = k.pow(len as u32);
    (0..total)
        .filter_map(|mut code| {
            let mut w = vec![0i32; len];
            for x in w.iter_mut().rev() {
                *x = (code % k) as i32 + 1;
                code /= k;
            }
            let least = (1..len).all(|r| {
                let rot: Vec<i32> = w[r..].iter().chain(&w[..r]).copied().collect();
                w <= rot
            });
            least.then_some(w)
        })
        .collect()
}

#[test]
fn criterion_4_positive_braids() {
    let t = Instant::now();
    let mut words = Vec::new();
    for strands in 2..=5 {
        for len in 1..=10 {
            words.extend(necklaces(strands, len).into_iter().map(|w| (strands, w)));
        }
    }
    let failures: Vec<String> = words
        .par_iter()
        .filter_map(|(s, w)| {
            let d = braid_closure(*s, w).unwrap();
            let ok = d.is_positive()
                && seifert_state(&d) == positive_state(&d)
                && classify(&d).homogeneous;
            (!ok).then(|| format!("{s}:{w:?}"))
        })
        .collect();
    let detail = format!("{} positive braid closures, {} failures", words.len(), failures.len());
    verdict(4, "positive diagrams", failures.is_empty(), &detail, t.elapsed(), Duration::from_secs(120));
}

#[test]
fn criterion_5_property_suite() {
    let t = Instant::now();
    let bundled = bundled_diagrams();
    let mut bad: Vec<String> = bundled
        .par_iter()
        .flat_map_iter(|(name, d)| {
            let mut v: Vec<String> = diagram_violations(d)
                .into_iter()
                .map(|x| format!("{name}: {x}"))
                .collect();
            for st in canonical_states(d) {
                v.extend(pair_violations(d, &st).into_iter().map(|x| format!("{name} {st}: {x}")));
            }
            v
        })
        .collect();
    let random = 2000;
    bad.par_extend((0..random as u64).into_par_iter().flat_map_iter(|seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (s, w, d) = random_braid(&mut rng, 14);
        let st = random_state(&mut rng, d.crossing_count());
        let mut v = pair_violations(&d, &st);
        v.extend(diagram_violations(&d));
        v.into_iter().map(move |x| format!("braid {s} {w:?}: {x}")).collect::<Vec<_>>()
    }));
    let detail = format!(
        "{} bundled diagrams x 5 canonical states, {random} random pairs, {} violations {:?}",
        bundled.len(),
        bad.len(),
        &bad[..bad.len().min(5)]
    );
    verdict(5, "forced identities", bad.is_empty(), &detail, t.elapsed(), Duration::from_secs(120));
}

#[test]
fn criterion_6_oracle_equivalence() {
    let t = Instant::now();
    let small: Vec<(String, LinkDiagram)> = bundled_diagrams()
        .into_iter()
        .filter(|(_, d)| d.crossing_count() <= 8)
        .collect();
    let results: Vec<(usize, Vec<String>)> = small
        .par_iter()
        .map(|(name, d)| {
            let mut bad = Vec::new();
            let mut brute_certifying: Vec<State> = Vec::new();
            let mut count = 0;
            for st in enumerate_states(d) {
                count += 1;
                if brute_adequate_homogeneous(d, &st) == (true, true) {
                    brute_certifying.push(st.clone());
                }
                bad.extend(oracle_violations(d, &st).into_iter().map(|x| format!("{name} {st}: {x}")));
            }
            for depth in [0, 3] {
                if exhaustive_search(d, depth) != brute_certifying {
                    bad.push(format!("{name}: exhaustive search at depth {depth} disagrees"));
                }
            }
            (count, bad)
        })
        .collect();
    let states: usize = results.iter().map(|r| r.0).sum();
    let bad: Vec<String> = results.into_iter().flat_map(|r| r.1).collect();
    let detail = format!(
        "{} diagrams, {states} states, {} disagreements {:?}",
        small.len(),
        bad.len(),
        &bad[..bad.len().min(5)]
    );
    verdict(6, "oracle equivalence", bad.is_empty(), &detail, t.elapsed(), Duration::from_secs(300));
}

/// Disjoint union of two diagrams, labels of `b` shifted past those of `a`.
fn disjoint_union(a: &LinkDiagram, b: &LinkDiagram) -> LinkDiagram {
    let shift = 2 * a.crossing_count() as i64;
    let terms: Vec<[i64; 4]> = a
        .crossings()
        .iter()
        .map(|x| x.map(i64::from))
        .chain(b.crossings().iter().map(|x| x.map(|l| l as i64 + shift)))
        .collect();
    LinkDiagram::from_pd_terms(None, &terms, a.circles() + b.circles()).unwrap()
}

#[test]
fn criterion_7_decisions() {
    let t = Instant::now();
    let opts = SearchOptions::default();
    let mut bad = Vec::new();

    let unknot = LinkDiagram::unknot();
    if decide_trivial(&unknot, &opts).map(|d| d.verdict) != Ok(Verdict::Trivial) {
        bad.push("unknot not trivial".to_string());
    }

    let bundled = bundled_diagrams();
    let mut certified = 0;
    for (name, d) in &bundled {
        let c = classify(d);
        if c.class.reduced && c.certifiable() {
            certified += 1;
            if decide_trivial(d, &opts).map(|x| x.verdict) != Ok(Verdict::Nontrivial) {
                bad.push(format!("{name} not decided nontrivial"));
            }
        }
        if let Ok(x) = decide_split(d, &opts) {
            if x.verdict == Verdict::Split {
                bad.push(format!("{name} connected but split"));
            }
        }
    }

    let kink = parse_pd("X(1,1,2,2)").unwrap();
    if !matches!(decide_trivial(&kink, &opts), Err(Undecided::NugatoryCrossings { .. })) {
        bad.push("kink decided".to_string());
    }
    if run(["statesurf", "decide", "--pd", "X(1,1,2,2)"]).code != 2 {
        bad.push("kink exit code is not 2".to_string());
    }

    let mut unions = vec![LinkDiagram::from_pd_terms(None, &[], 2).unwrap()];
    let small: Vec<&LinkDiagram> = bundled
        .iter()
        .map(|(_, d)| d)
        .filter(|d| d.crossing_count() <= 6)
        .collect();
    for a in &small {
        for b in small.iter().step_by(3) {
            unions.push(disjoint_union(a, b));
        }
        unions.push(disjoint_union(a, &LinkDiagram::unknot()));
    }
    for u in &unions {
        assert!(u.is_split_diagram());
        match decide_split(u, &opts) {
            Ok(x) if x.verdict == Verdict::Split => {}
            other => bad.push(format!("{} gave {:?}", u.to_pd_string(), other.map(|x| x.verdict))),
        }
    }
    let detail = format!(
        "{certified} certified bundled diagrams, {} disjoint unions, {} problems {:?}",
        unions.len(),
        bad.len(),
        &bad[..bad.len().min(5)]
    );
    verdict(7, "decision soundness", bad.is_empty(), &detail, t.elapsed(), Duration::from_secs(10));
}
