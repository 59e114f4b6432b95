//! Kauffman states and their smoothings.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::diagram::{FaceColor, LinkDiagram};
use crate::dsu::Dsu;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StateError {
    #[error("state has {got} signs but the diagram has {expected} crossings")]
    Length { got: usize, expected: usize },
    #[error("invalid state '{0}': expected a string over '+' and '-' or a state name")]
    Syntax(String),
}

/// Smoothing choice at one crossing. `Plus` joins slots (a,b) and (c,d); `Minus`
/// joins (a,d) and (b,c).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    /// Slot joined to `slot` by this smoothing.
    pub fn partner(self, slot: usize) -> usize {
        match self {
            Sign::Plus => slot ^ 1,
            Sign::Minus => 3 - slot,
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.as_char().to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State(Vec<Sign>);

impl State {
    pub fn new(signs: Vec<Sign>) -> Self {
        State(signs)
    }

    pub fn uniform(n: usize, sign: Sign) -> Self {
        State(vec![sign; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn signs(&self) -> &[Sign] {
        &self.0
    }

    pub fn get(&self, i: usize) -> Sign {
        self.0[i]
    }

    pub fn flipped(&self) -> State {
        State(self.0.iter().map(|s| s.flip()).collect())
    }

    pub fn plus_count(&self) -> usize {
        self.0.iter().filter(|&&s| s == Sign::Plus).count()
    }

    pub fn check(&self, d: &LinkDiagram) -> Result<(), StateError> {
        if self.len() != d.crossing_count() {
            return Err(StateError::Length {
                got: self.len(),
                expected: d.crossing_count(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|s| write!(f, "{}", s.as_char()))
    }
}

impl FromStr for State {
    type Err = StateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.trim()
            .chars()
            .map(|c| match c {
                '+' => Ok(Sign::Plus),
                '-' => Ok(Sign::Minus),
                _ => Err(StateError::Syntax(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(State)
    }
}

impl Serialize for State {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

pub fn positive_state(d: &LinkDiagram) -> State {
    State::uniform(d.crossing_count(), Sign::Plus)
}

pub fn negative_state(d: &LinkDiagram) -> State {
    State::uniform(d.crossing_count(), Sign::Minus)
}

/// The oriented smoothing: `Plus` exactly at positive crossings.
pub fn seifert_state(d: &LinkDiagram) -> State {
    State(
        d.signs()
            .into_iter()
            .map(|s| if s > 0 { Sign::Plus } else { Sign::Minus })
            .collect(),
    )
}

/// States whose loops bound the black (first) and white (second) checkerboard faces.
pub fn checkerboard_states(d: &LinkDiagram) -> (State, State) {
    let map = d.faces();
    let black = State(
        (0..d.crossing_count())
            .map(|c| match map.corner_color(4 * c) {
                FaceColor::Black => Sign::Plus,
                FaceColor::White => Sign::Minus,
            })
            .collect(),
    );
    let white = black.flipped();
    (black, white)
}

/// A state given by name or literally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StateSpec {
    Plus,
    Minus,
    Seifert,
    CheckerboardBlack,
    CheckerboardWhite,
    Literal(State),
}

impl StateSpec {
    pub fn resolve(&self, d: &LinkDiagram) -> Result<State, StateError> {
        let s = match self {
            StateSpec::Plus => positive_state(d),
            StateSpec::Minus => negative_state(d),
            StateSpec::Seifert => seifert_state(d),
            StateSpec::CheckerboardBlack => checkerboard_states(d).0,
            StateSpec::CheckerboardWhite => checkerboard_states(d).1,
            StateSpec::Literal(s) => s.clone(),
        };
        s.check(d)?;
        Ok(s)
    }

    pub fn name(&self) -> String {
        match self {
            StateSpec::Plus => "plus".into(),
            StateSpec::Minus => "minus".into(),
            StateSpec::Seifert => "seifert".into(),
            StateSpec::CheckerboardBlack => "checkerboard-black".into(),
            StateSpec::CheckerboardWhite => "checkerboard-white".into(),
            StateSpec::Literal(s) => s.to_string(),
        }
    }

    pub const CANONICAL: [StateSpec; 5] = [
        StateSpec::Plus,
        StateSpec::Minus,
        StateSpec::Seifert,
        StateSpec::CheckerboardBlack,
        StateSpec::CheckerboardWhite,
    ];
}

impl FromStr for StateSpec {
    type Err = StateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.trim() {
            "plus" | "positive" => StateSpec::Plus,
            "minus" | "negative" => StateSpec::Minus,
            "seifert" => StateSpec::Seifert,
            "checkerboard-black" => StateSpec::CheckerboardBlack,
            "checkerboard-white" => StateSpec::CheckerboardWhite,
            other => StateSpec::Literal(other.parse()?),
        })
    }
}

/// All `2^n` states in lexicographic order with `+` before `-`, crossing 0 first.
pub fn enumerate_states(d: &LinkDiagram) -> impl Iterator<Item = State> {
    let n = d.crossing_count();
    assert!(n < 64, "too many crossings to enumerate");
    (0..1u64 << n).map(move |bits| {
        State(
            (0..n)
                .map(|i| {
                    if bits >> (n - 1 - i) & 1 == 1 {
                        Sign::Minus
                    } else {
                        Sign::Plus
                    }
                })
                .collect(),
        )
    })
}

/// The loops of a smoothed diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Smoothing {
    loop_count: usize,
    loop_of_end: Vec<usize>,
    circles: usize,
}

impl Smoothing {
    /// Number of loops, including one per crossingless circle.
    pub fn loop_count(&self) -> usize {
        self.loop_count
    }

    /// Loop through slot end `4 * crossing + slot`.
    pub fn loop_of_end(&self, end: usize) -> usize {
        self.loop_of_end[end]
    }

    /// Loop ids of crossingless circles, which come after all other loops.
    pub fn circle_loops(&self) -> std::ops::Range<usize> {
        self.loop_count - self.circles..self.loop_count
    }

    /// Loops on either side of crossing `c`: the one through slot `a`, then the one through slot `c`.
    pub fn incidence(&self, c: usize) -> (usize, usize) {
        (self.loop_of_end[4 * c], self.loop_of_end[4 * c + 2])
    }

    pub fn crossing_count(&self) -> usize {
        self.loop_of_end.len() / 4
    }
}

/// Smooths every crossing according to `state`. Loop ids are numbered in order of
/// first appearance over slot ends.
pub fn smooth(d: &LinkDiagram, state: &State) -> Result<Smoothing, StateError> {
    state.check(d)?;
    let n = d.crossing_count();
    let mut dsu = Dsu::new(4 * n);
    for e in 0..4 * n {
        dsu.union(e, d.mate(e));
    }
    for c in 0..n {
        let sign = state.get(c);
        dsu.union(4 * c, 4 * c + sign.partner(0));
        dsu.union(4 * c + 2, 4 * c + sign.partner(2));
    }
    let (count, loop_of_end) = dsu.classes();
    Ok(Smoothing {
        loop_count: count + d.circles(),
        loop_of_end,
        circles: d.circles(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_pd;

    const TREFOIL: &str = "X(1,4,2,5);X(3,6,4,1);X(5,2,6,3)";

    #[test]
    fn state_strings_round_trip() {
        let s: State = "+-+".parse().unwrap();
        assert_eq!(s.to_string(), "+-+");
        assert!("+x".parse::<State>().is_err());
        assert_eq!(
            "seifert".parse::<StateSpec>().unwrap(),
            StateSpec::Seifert
        );
    }

    #[test]
    fn trefoil_loop_counts() {
        let d = parse_pd(TREFOIL).unwrap();
        assert_eq!(smooth(&d, &positive_state(&d)).unwrap().loop_count(), 3);
        assert_eq!(smooth(&d, &negative_state(&d)).unwrap().loop_count(), 2);
        assert_eq!(seifert_state(&d), negative_state(&d));
        let (black, white) = checkerboard_states(&d);
        assert_eq!(black, positive_state(&d));
        assert_eq!(white, negative_state(&d));
    }

    #[test]
    fn partial_state_rejected() {
        let d = parse_pd(TREFOIL).unwrap();
        let s: State = "+-".parse().unwrap();
        assert_eq!(
            smooth(&d, &s).unwrap_err(),
            StateError::Length {
                got: 2,
                expected: 3
            }
        );
    }

    #[test]
    fn enumeration_order() {
        let d = parse_pd(TREFOIL).unwrap();
        let all: Vec<String> = enumerate_states(&d).map(|s| s.to_string()).collect();
        assert_eq!(all.len(), 8);
        assert_eq!(all[0], "+++");
        assert_eq!(all[1], "++-");
        assert_eq!(all[7], "---");
        let mut sorted = all.clone();
        sorted.sort_by_key(|s| s.parse::<State>().unwrap());
        assert_eq!(all, sorted);
    }

    #[test]
    fn circles_are_loops() {
        let d = parse_pd("X(1,4,2,5);X(3,6,4,1);X(5,2,6,3);O;O").unwrap();
        let sm = smooth(&d, &positive_state(&d)).unwrap();
        assert_eq!(sm.loop_count(), 5);
        assert_eq!(sm.circle_loops(), 3..5);
    }
}
