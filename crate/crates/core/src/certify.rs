//! Certificates of essentiality and the triviality / splitting decisions built on them.

use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::diagram::LinkDiagram;
use crate::state::{negative_state, positive_state, seifert_state, State, StateError};
use crate::stategraph::{
    blocks, build_state_graph, find_certifying_states, BlockSign, CertifyingState,
    SearchOptions, SearchTier,
};
use crate::surface::{build_state_surface, factor_surfaces, SurfaceError, SurfaceInvariants};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error("the Neuwirth check applies to knots, this diagram has {0} components")]
    NotAKnot(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorSummary {
    pub edges: Vec<usize>,
    pub vertices: Vec<usize>,
    pub sign: BlockSign,
    pub chi: i64,
    pub orientable: bool,
    pub boundary: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Trivial,
    Nontrivial,
    Split,
    Nonsplit,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub diagram: String,
    pub fingerprint: String,
    pub state: State,
    pub adequate: bool,
    /// Loops on the two sides of each crossing.
    pub incidence: Vec<(usize, usize)>,
    pub self_loops: Vec<usize>,
    pub homogeneous: bool,
    /// Blocks of the state graph with the surfaces of the matching Murasugi summands.
    pub blocks: Vec<FactorSummary>,
    pub surface: SurfaceInvariants,
    pub essential: bool,
    /// `None` for links with more than one component.
    pub neuwirth: Option<bool>,
    pub decision: Option<Verdict>,
    pub search_tier: Option<SearchTier>,
    pub nontrivial: Option<bool>,
    pub nonsplit: Option<bool>,
}

/// First 16 hex digits of the SHA-256 of the normalized planar diagram code.
pub fn fingerprint(d: &LinkDiagram) -> String {
    let digest = Sha256::digest(d.to_pd_string().as_bytes());
    digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

fn display_name(d: &LinkDiagram) -> String {
    d.name()
        .map(str::to_string)
        .unwrap_or_else(|| d.to_pd_string())
}

/// Reports whether `state` is adequate and homogeneous, which makes its state surface
/// essential. A false `essential` says nothing about the surface.
pub fn certify_essential(d: &LinkDiagram, state: &State) -> Result<Certificate, CertifyError> {
    let g = build_state_graph(d, state)?;
    let dec = blocks(&g);
    let surface = build_state_surface(d, state)?;
    let factors = factor_surfaces(&surface, &dec);
    let block_summaries = dec
        .blocks
        .iter()
        .zip(&factors)
        .map(|(b, f)| {
            let inv = f.invariants();
            FactorSummary {
                edges: b.edges.clone(),
                vertices: b.vertices.clone(),
                sign: b.sign,
                chi: inv.chi,
                orientable: inv.orientable,
                boundary: inv.boundary,
            }
        })
        .collect();
    let adequate = g.is_adequate();
    let homogeneous = dec.is_homogeneous();
    let essential = adequate && homogeneous;
    let inv = surface.invariants();
    let neuwirth = (d.link_component_count() == 1)
        .then(|| essential && *state != seifert_state(d) && !inv.orientable);
    Ok(Certificate {
        diagram: display_name(d),
        fingerprint: fingerprint(d),
        state: state.clone(),
        adequate,
        incidence: g.edges().iter().map(|e| e.ends).collect(),
        self_loops: g.self_loops(),
        homogeneous,
        blocks: block_summaries,
        surface: inv,
        essential,
        neuwirth,
        decision: None,
        search_tier: None,
        nontrivial: None,
        nonsplit: None,
    })
}

/// True when `state` certifies, differs from the Seifert state, and gives a
/// nonorientable surface.
pub fn certify_neuwirth(d: &LinkDiagram, state: &State) -> Result<bool, CertifyError> {
    let k = d.link_component_count();
    if k != 1 {
        return Err(CertifyError::NotAKnot(k));
    }
    Ok(certify_essential(d, state)?.neuwirth == Some(true))
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Undecided {
    #[error("nugatory crossing present: {crossings:?}")]
    NugatoryCrossings { crossings: Vec<usize> },
    #[error("no certifying state found (exhaustive search {})", if *.exhaustive { "ran" } else { "skipped: too many crossings" })]
    NoCertifyingState { exhaustive: bool },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decision {
    pub verdict: Verdict,
    /// One certificate per connected piece of the diagram that discharged the hypotheses.
    pub certificates: Vec<Certificate>,
}

fn discharge(d: &LinkDiagram, opts: &SearchOptions) -> Result<(State, SearchTier), Undecided> {
    let canonical = SearchOptions {
        family: SearchTier::Canonical,
        exclude_seifert: false,
        ..opts.clone()
    };
    if let Some(c) = find_certifying_states(d, &canonical).unwrap().into_iter().next() {
        return Ok((c.state, SearchTier::Canonical));
    }
    let exhaustive = SearchOptions {
        family: SearchTier::Exhaustive,
        ..canonical
    };
    match find_certifying_states(d, &exhaustive) {
        Ok(found) => found
            .into_iter()
            .next()
            .map(|c| (c.state, SearchTier::Exhaustive))
            .ok_or(Undecided::NoCertifyingState { exhaustive: true }),
        Err(_) => Err(Undecided::NoCertifyingState { exhaustive: false }),
    }
}

fn require_reduced(d: &LinkDiagram) -> Result<(), Undecided> {
    let crossings = d.nugatory_crossings();
    if crossings.is_empty() {
        Ok(())
    } else {
        Err(Undecided::NugatoryCrossings { crossings })
    }
}

fn certificate_for(
    d: &LinkDiagram,
    state: State,
    tier: SearchTier,
    verdict: Verdict,
) -> Certificate {
    let mut cert = certify_essential(d, &state).expect("certifying state is total");
    cert.decision = Some(verdict);
    cert.search_tier = Some(tier);
    cert
}

/// Decides whether the link is trivial, provided the diagram has no nugatory crossing
/// and some state certifies. Otherwise returns the unmet hypothesis.
pub fn decide_trivial(d: &LinkDiagram, opts: &SearchOptions) -> Result<Decision, Undecided> {
    require_reduced(d)?;
    let (state, tier) = discharge(d, opts)?;
    let nontrivial = d.crossing_count() > 0;
    let verdict = if nontrivial {
        Verdict::Nontrivial
    } else {
        Verdict::Trivial
    };
    let mut cert = certificate_for(d, state, tier, verdict);
    cert.nontrivial = Some(nontrivial);
    Ok(Decision {
        verdict,
        certificates: vec![cert],
    })
}

/// Decides whether the link is split, with the hypotheses checked on every connected
/// piece of the diagram.
pub fn decide_split(d: &LinkDiagram, opts: &SearchOptions) -> Result<Decision, Undecided> {
    require_reduced(d)?;
    let pieces = d.connected_components();
    let verdict = if pieces.len() > 1 {
        Verdict::Split
    } else {
        Verdict::Nonsplit
    };
    let mut certificates = Vec::new();
    for piece in &pieces {
        let (state, tier) = discharge(piece, opts)?;
        let mut cert = certificate_for(piece, state, tier, verdict);
        cert.nonsplit = Some(pieces.len() == 1);
        certificates.push(cert);
    }
    Ok(Decision {
        verdict,
        certificates,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagramClass {
    pub alternating: bool,
    pub positive: bool,
    pub negative: bool,
    pub reduced: bool,
    pub connected: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub diagram: String,
    pub crossings: usize,
    pub components: usize,
    pub class: DiagramClass,
    /// The Seifert state is homogeneous.
    pub homogeneous: bool,
    pub seifert_adequate: bool,
    pub plus_adequate: bool,
    pub minus_adequate: bool,
    pub semiadequate: bool,
    pub adequate: bool,
    /// Canonical states that are adequate and homogeneous.
    pub certifying: Vec<CertifyingState>,
}

impl Classification {
    pub fn certifiable(&self) -> bool {
        !self.certifying.is_empty()
    }

    /// Tags in a fixed order, for reports.
    pub fn tags(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        for (on, tag) in [
            (self.class.alternating, "alternating"),
            (self.class.positive, "positive"),
            (self.class.negative, "negative"),
            (self.class.reduced, "reduced"),
            (self.homogeneous, "homogeneous"),
            (self.semiadequate, "semiadequate"),
            (self.adequate, "adequate"),
            (self.certifiable(), "certifying"),
        ] {
            if on {
                out.push(tag);
            }
        }
        out
    }
}

pub fn classify(d: &LinkDiagram) -> Classification {
    let seifert = build_state_graph(d, &seifert_state(d)).unwrap();
    let homogeneous = blocks(&seifert).is_homogeneous();
    let seifert_adequate = seifert.is_adequate();
    assert!(
        !homogeneous || seifert_adequate,
        "homogeneous diagram with an inadequate Seifert state"
    );
    let plus_adequate = build_state_graph(d, &positive_state(d))
        .unwrap()
        .is_adequate();
    let minus_adequate = build_state_graph(d, &negative_state(d))
        .unwrap()
        .is_adequate();
    let certifying = find_certifying_states(d, &SearchOptions::default()).unwrap();
    Classification {
        diagram: display_name(d),
        crossings: d.crossing_count(),
        components: d.link_component_count(),
        class: DiagramClass {
            alternating: d.is_alternating(),
            positive: d.is_positive(),
            negative: d.is_negative(),
            reduced: d.is_reduced(),
            connected: !d.is_split_diagram(),
        },
        homogeneous,
        seifert_adequate,
        plus_adequate,
        minus_adequate,
        semiadequate: plus_adequate || minus_adequate,
        adequate: plus_adequate && minus_adequate,
        certifying,
    }
}
