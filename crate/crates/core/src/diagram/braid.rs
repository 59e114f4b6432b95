use super::{DiagramError, LinkDiagram};

/// Closure of a braid on `strands` strands. Generator `i > 0` is the positive crossing
/// between strands `i` and `i + 1`, `-i` its inverse. Strands that no generator touches
/// close up into crossingless circles.
pub fn braid_closure(strands: usize, word: &[i32]) -> Result<LinkDiagram, DiagramError> {
    if strands == 0 {
        return Err(DiagramError::Empty);
    }
    for &g in word {
        let i = g.unsigned_abs() as usize;
        if g == 0 || i >= strands {
            return Err(DiagramError::Syntax {
                pos: 0,
                msg: format!("braid generator {g} out of range for {strands} strands"),
            });
        }
    }
    let mut cur: Vec<i64> = (1..=strands as i64).collect();
    let mut next = strands as i64 + 1;
    let mut terms = Vec::with_capacity(word.len());
    for &g in word {
        let i = g.unsigned_abs() as usize - 1;
        let (in_left, in_right) = (cur[i], cur[i + 1]);
        let (out_left, out_right) = (next, next + 1);
        next += 2;
        terms.push(if g > 0 {
            [in_right, out_right, out_left, in_left]
        } else {
            [in_left, in_right, out_right, out_left]
        });
        cur[i] = out_left;
        cur[i + 1] = out_right;
    }
    let mut circles = 0;
    for (p, &end) in cur.iter().enumerate() {
        let start = p as i64 + 1;
        if end == start {
            circles += 1;
            continue;
        }
        for t in terms.iter_mut() {
            for l in t.iter_mut() {
                if *l == end {
                    *l = start;
                }
            }
        }
    }
    LinkDiagram::from_pd_terms(None, &terms, circles)
}
