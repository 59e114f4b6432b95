//! State graphs, adequacy, block decomposition and the certifying-state search.

use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::diagram::LinkDiagram;
use crate::dsu::Dsu;
use crate::state::{seifert_state, smooth, Sign, State, StateError, StateSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StateEdge {
    pub crossing: usize,
    pub ends: (usize, usize),
    pub sign: Sign,
}

impl StateEdge {
    pub fn is_loop(&self) -> bool {
        self.ends.0 == self.ends.1
    }
}

/// Vertices are state loops, edges are crossings (edge `i` is crossing `i`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateGraph {
    vertex_count: usize,
    edges: Vec<StateEdge>,
    state: State,
}

impl StateGraph {
    pub fn from_edges(vertex_count: usize, edges: Vec<StateEdge>, state: State) -> Self {
        StateGraph {
            vertex_count,
            edges,
            state,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[StateEdge] {
        &self.edges
    }

    pub fn state(&self) -> &State {
        &self.state
    }

    /// Crossings whose edge is a loop in the state graph.
    pub fn self_loops(&self) -> Vec<usize> {
        self.edges
            .iter()
            .filter(|e| e.is_loop())
            .map(|e| e.crossing)
            .collect()
    }

    pub fn is_adequate(&self) -> bool {
        self.edges.iter().all(|e| !e.is_loop())
    }
}

pub fn build_state_graph(d: &LinkDiagram, state: &State) -> Result<StateGraph, StateError> {
    let sm = smooth(d, state)?;
    let edges = (0..d.crossing_count())
        .map(|c| StateEdge {
            crossing: c,
            ends: sm.incidence(c),
            sign: state.get(c),
        })
        .collect();
    Ok(StateGraph {
        vertex_count: sm.loop_count(),
        edges,
        state: state.clone(),
    })
}

pub fn is_adequate(g: &StateGraph) -> bool {
    g.is_adequate()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockSign {
    Uniform(Sign),
    Mixed,
    /// A single vertex with no edges.
    Empty,
}

impl BlockSign {
    pub fn is_uniform(&self) -> bool {
        !matches!(self, BlockSign::Mixed)
    }
}

impl Serialize for BlockSign {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(match self {
            BlockSign::Uniform(Sign::Plus) => "+",
            BlockSign::Uniform(Sign::Minus) => "-",
            BlockSign::Mixed => "mixed",
            BlockSign::Empty => "none",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Block {
    pub edges: Vec<usize>,
    pub vertices: Vec<usize>,
    pub sign: BlockSign,
}

/// Maximal 2-connected pieces of a state graph. Loop edges form singleton blocks and
/// isolated vertices form edgeless blocks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockDecomposition {
    pub blocks: Vec<Block>,
    pub cut_vertices: Vec<usize>,
}

impl BlockDecomposition {
    /// Edges of the block-cut tree as `(block, cut vertex)` pairs.
    pub fn tree_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (b, block) in self.blocks.iter().enumerate() {
            for &v in &block.vertices {
                if self.cut_vertices.binary_search(&v).is_ok() {
                    out.push((b, v));
                }
            }
        }
        out
    }

    pub fn is_homogeneous(&self) -> bool {
        self.blocks.iter().all(|b| b.sign.is_uniform())
    }
}

pub fn blocks(g: &StateGraph) -> BlockDecomposition {
    let nv = g.vertex_count;
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv];
    let mut edge_sets: Vec<Vec<usize>> = Vec::new();
    for (id, e) in g.edges.iter().enumerate() {
        if e.is_loop() {
            edge_sets.push(vec![id]);
        } else {
            adj[e.ends.0].push((e.ends.1, id));
            adj[e.ends.1].push((e.ends.0, id));
        }
    }

    let mut disc = vec![usize::MAX; nv];
    let mut low = vec![0; nv];
    let mut time = 0;
    let mut edge_stack: Vec<usize> = Vec::new();
    for root in 0..nv {
        if disc[root] != usize::MAX || adj[root].is_empty() {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        let mut frames: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(&mut (v, parent_edge, ref mut next)) = frames.last_mut() {
            if *next < adj[v].len() {
                let (w, id) = adj[v][*next];
                *next += 1;
                if id == parent_edge {
                    continue;
                }
                if disc[w] == usize::MAX {
                    edge_stack.push(id);
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    frames.push((w, id, 0));
                } else if disc[w] < disc[v] {
                    edge_stack.push(id);
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                frames.pop();
                if let Some(&(u, _, _)) = frames.last() {
                    low[u] = low[u].min(low[v]);
                    if low[v] >= disc[u] {
                        let mut set = Vec::new();
                        while let Some(id) = edge_stack.pop() {
                            set.push(id);
                            if id == parent_edge {
                                break;
                            }
                        }
                        edge_sets.push(set);
                    }
                }
            }
        }
    }

    let mut blocks: Vec<Block> = edge_sets
        .into_iter()
        .map(|mut edges| {
            edges.sort_unstable();
            let mut vertices: Vec<usize> = edges
                .iter()
                .flat_map(|&id| [g.edges[id].ends.0, g.edges[id].ends.1])
                .collect();
            vertices.sort_unstable();
            vertices.dedup();
            let first = g.edges[edges[0]].sign;
            let sign = if edges.iter().all(|&id| g.edges[id].sign == first) {
                BlockSign::Uniform(first)
            } else {
                BlockSign::Mixed
            };
            Block {
                edges,
                vertices,
                sign,
            }
        })
        .collect();
    blocks.sort_by_key(|b| b.edges[0]);

    let mut touched = vec![false; nv];
    for e in &g.edges {
        touched[e.ends.0] = true;
        touched[e.ends.1] = true;
    }
    for v in (0..nv).filter(|&v| !touched[v]) {
        blocks.push(Block {
            edges: Vec::new(),
            vertices: vec![v],
            sign: BlockSign::Empty,
        });
    }

    let mut membership = vec![0usize; nv];
    for b in &blocks {
        for &v in &b.vertices {
            membership[v] += 1;
        }
    }
    let cut_vertices = (0..nv).filter(|&v| membership[v] > 1).collect();
    BlockDecomposition {
        blocks,
        cut_vertices,
    }
}

pub fn is_homogeneous(g: &StateGraph) -> bool {
    blocks(g).is_homogeneous()
}

/// Adequate and homogeneous.
pub fn certifies(d: &LinkDiagram, state: &State) -> Result<bool, StateError> {
    let g = build_state_graph(d, state)?;
    Ok(g.is_adequate() && is_homogeneous(&g))
}

/// One block of the state graph viewed as the state graph of a Murasugi summand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MurasugiFactor {
    pub block: usize,
    pub graph: StateGraph,
    /// Global state-graph vertex for each local vertex.
    pub vertex_map: Vec<usize>,
    /// Crossing of the diagram for each local edge.
    pub crossings: Vec<usize>,
    pub sign: BlockSign,
}

pub fn murasugi_factors(g: &StateGraph, dec: &BlockDecomposition) -> Vec<MurasugiFactor> {
    dec.blocks
        .iter()
        .enumerate()
        .map(|(b, block)| {
            let local = |v: usize| block.vertices.binary_search(&v).unwrap();
            let edges = block
                .edges
                .iter()
                .map(|&id| {
                    let e = g.edges[id];
                    StateEdge {
                        crossing: e.crossing,
                        ends: (local(e.ends.0), local(e.ends.1)),
                        sign: e.sign,
                    }
                })
                .collect();
            let state = State::new(block.edges.iter().map(|&id| g.edges[id].sign).collect());
            MurasugiFactor {
                block: b,
                graph: StateGraph::from_edges(block.vertices.len(), edges, state),
                vertex_map: block.vertices.clone(),
                crossings: block.edges.iter().map(|&id| g.edges[id].crossing).collect(),
                sign: block.sign,
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchTier {
    Canonical,
    Exhaustive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOptions {
    pub family: SearchTier,
    pub exclude_seifert: bool,
    /// Largest crossing number for which the exhaustive family is searched.
    pub max_crossings: usize,
    /// Number of leading crossings whose signs are fixed per parallel task.
    pub split_depth: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            family: SearchTier::Canonical,
            exclude_seifert: false,
            max_crossings: 24,
            split_depth: 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("exhaustive search over {n} crossings exceeds the cap of {cap}")]
    TooManyCrossings { n: usize, cap: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertifyingState {
    pub state: State,
    /// Canonical names this state goes by, if any.
    pub names: Vec<String>,
    pub tier: SearchTier,
}

/// Adequate homogeneous states of `d` within the requested family, in enumeration order.
pub fn find_certifying_states(
    d: &LinkDiagram,
    opts: &SearchOptions,
) -> Result<Vec<CertifyingState>, SearchError> {
    let canonical: Vec<(String, State)> = StateSpec::CANONICAL
        .iter()
        .map(|s| (s.name(), s.resolve(d).unwrap()))
        .collect();
    let names_of = |st: &State| -> Vec<String> {
        canonical
            .iter()
            .filter(|(_, s)| s == st)
            .map(|(n, _)| n.clone())
            .collect()
    };
    let seifert = seifert_state(d);
    let states: Vec<State> = match opts.family {
        SearchTier::Canonical => {
            let mut v: Vec<State> = canonical.iter().map(|(_, s)| s.clone()).collect();
            v.sort();
            v.dedup();
            v.retain(|s| certifies(d, s).unwrap());
            v
        }
        SearchTier::Exhaustive => {
            let n = d.crossing_count();
            if n > opts.max_crossings {
                return Err(SearchError::TooManyCrossings {
                    n,
                    cap: opts.max_crossings,
                });
            }
            exhaustive_search(d, opts.split_depth)
        }
    };
    Ok(states
        .into_iter()
        .filter(|s| !(opts.exclude_seifert && *s == seifert))
        .map(|s| CertifyingState {
            names: names_of(&s),
            state: s,
            tier: opts.family,
        })
        .collect())
}

/// Every adequate homogeneous state, in lexicographic order.
///
/// The first `split_depth` signs are fixed per task and tasks run in parallel; the
/// result does not depend on `split_depth`. Subtrees are pruned as soon as a decided
/// crossing has both of its smoothing arcs on one loop, since later smoothings only
/// merge loops further.
pub fn exhaustive_search(d: &LinkDiagram, split_depth: usize) -> Vec<State> {
    let n = d.crossing_count();
    let depth = split_depth.min(n);
    let prefixes: Vec<Vec<Sign>> = (0..1u64 << depth)
        .map(|bits| {
            (0..depth)
                .map(|i| {
                    if bits >> (depth - 1 - i) & 1 == 1 {
                        Sign::Minus
                    } else {
                        Sign::Plus
                    }
                })
                .collect()
        })
        .collect();
    prefixes
        .par_iter()
        .map(|prefix| {
            let mut dsu = Dsu::new(4 * n);
            for e in 0..4 * n {
                dsu.union(e, d.mate(e));
            }
            let mut signs = Vec::with_capacity(n);
            let mut out = Vec::new();
            for &s in prefix {
                if !assign(&mut dsu, &mut signs, s) {
                    return out;
                }
            }
            descend(d, &mut dsu, &mut signs, &mut out);
            out
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

fn assign(dsu: &mut Dsu, signs: &mut Vec<Sign>, s: Sign) -> bool {
    let c = signs.len();
    signs.push(s);
    dsu.union(4 * c, 4 * c + s.partner(0));
    dsu.union(4 * c + 2, 4 * c + s.partner(2));
    (0..=c).all(|j| !dsu.same(4 * j, 4 * j + 2))
}

fn descend(d: &LinkDiagram, dsu: &mut Dsu, signs: &mut Vec<Sign>, out: &mut Vec<State>) {
    if signs.len() == d.crossing_count() {
        let state = State::new(signs.clone());
        let g = build_state_graph(d, &state).unwrap();
        if is_homogeneous(&g) {
            out.push(state);
        }
        return;
    }
    for s in [Sign::Plus, Sign::Minus] {
        let cp = dsu.checkpoint();
        if assign(dsu, signs, s) {
            descend(d, dsu, signs, out);
        }
        signs.pop();
        dsu.rollback(cp);
    }
}
