use super::pd::{split_name, strip_dt_tag};
use super::{DiagramError, LinkDiagram};

/// Parses `DT: a1 a2 ... an` (optional leading `name:`) and realizes it as a knot diagram.
pub fn parse_dt(text: &str) -> Result<LinkDiagram, DiagramError> {
    let (name, body, offset) = split_name(text);
    let rest = strip_dt_tag(body).unwrap_or(body);
    let d = parse_dt_body(rest, offset + body.len() - rest.len())?;
    Ok(match name {
        Some(n) => d.with_name(n),
        None => d,
    })
}

pub(crate) fn parse_dt_body(body: &str, offset: usize) -> Result<LinkDiagram, DiagramError> {
    if body.contains('|') || body.matches('[').count() > 1 || body.matches('(').count() > 1 {
        return Err(DiagramError::Dt(
            "multi-component DT codes are not supported".into(),
        ));
    }
    let mut code = Vec::new();
    let mut pos = 0;
    for tok in body.split(|c: char| c.is_whitespace() || c == ',') {
        let at = offset + pos;
        pos += tok.len() + 1;
        let tok = tok.trim_matches(|c| matches!(c, '[' | ']' | '(' | ')'));
        if tok.is_empty() {
            continue;
        }
        let v: i64 = tok.parse().map_err(|_| DiagramError::Syntax {
            pos: at,
            msg: format!("'{tok}' is not an integer"),
        })?;
        code.push(v);
    }
    let terms = realize_dt(&code)?;
    LinkDiagram::from_pd_terms(None, &terms, 0).map_err(|e| match e {
        DiagramError::NonPlanar { .. } => not_realizable(&code),
        other => other,
    })
}

fn not_realizable(code: &[i64]) -> DiagramError {
    let code = code
        .iter()
        .map(i64::to_string)
        .collect::<Vec<_>>()
        .join(" ");
    DiagramError::NotRealizable { code }
}

/// Planar-diagram terms for a knot DT code.
///
/// Entry `a_k` pairs visit `2k+1` with visit `|a_k|`; a positive entry means the odd
/// visit passes under. Arc `p` ends at visit `p`. The planar embedding is found by
/// propagating relative handedness across interlaced chords; the first crossing of
/// each interlacement class is fixed so that prime knots come out with the chirality
/// used by the standard tables.
pub fn realize_dt(code: &[i64]) -> Result<Vec<[i64; 4]>, DiagramError> {
    let n = code.len();
    if n == 0 {
        return Err(DiagramError::Empty);
    }
    let mut seen = vec![false; n];
    for &a in code {
        if a == 0 || a % 2 != 0 || a.unsigned_abs() as usize > 2 * n {
            return Err(DiagramError::Dt(format!(
                "entry {a} is not a nonzero even integer of size at most {}",
                2 * n
            )));
        }
        let k = a.unsigned_abs() as usize / 2 - 1;
        if seen[k] {
            return Err(DiagramError::Dt(format!("entry {a} is repeated")));
        }
        seen[k] = true;
    }
    let visits: Vec<(usize, usize)> = code
        .iter()
        .enumerate()
        .map(|(k, &a)| {
            let (x, y) = (2 * k + 1, a.unsigned_abs() as usize);
            (x.min(y), x.max(y))
        })
        .collect();

    let relation = |u: usize, v: usize| -> Option<u8> {
        let (u, v) = if visits[u].0 < visits[v].0 { (u, v) } else { (v, u) };
        let ((pu, qu), (pv, qv)) = (visits[u], visits[v]);
        if !(pu < pv && pv < qu && qu < qv) {
            return None;
        }
        let region = |x: usize| {
            if pu < x && x < pv {
                1
            } else if pv < x && x < qu {
                2
            } else if qu < x && x < qv {
                3
            } else {
                0
            }
        };
        let mut parity = 0;
        for (w, &(p, q)) in visits.iter().enumerate() {
            if w == u || w == v {
                continue;
            }
            let (a, b) = (region(p).min(region(q)), region(p).max(region(q)));
            if matches!((a, b), (0, 1) | (0, 2) | (1, 2)) {
                parity ^= 1;
            }
        }
        Some(parity)
    };

    let mut hand: Vec<Option<u8>> = vec![None; n];
    for root in 0..n {
        if hand[root].is_some() {
            continue;
        }
        hand[root] = Some(0);
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            let hu = hand[u].unwrap();
            for v in 0..n {
                if v == u {
                    continue;
                }
                let Some(r) = relation(u, v) else { continue };
                match hand[v] {
                    None => {
                        hand[v] = Some(hu ^ r);
                        stack.push(v);
                    }
                    Some(hv) if hv != hu ^ r => return Err(not_realizable(code)),
                    Some(_) => {}
                }
            }
        }
    }

    let m = 2 * n as i64;
    let wrap = |x: i64| (x - 1).rem_euclid(m) + 1;
    Ok((0..n)
        .map(|k| {
            let a = code[k];
            let odd = 2 * k as i64 + 1;
            let even = a.abs();
            let (under, over) = if a > 0 { (odd, even) } else { (even, odd) };
            let turn = if hand[k] == Some(1) { 1 } else { 3 };
            let slot = if under as usize == visits[k].0 {
                turn
            } else {
                (4 - turn) % 4
            };
            let mut x = [0i64; 4];
            x[0] = under;
            x[2] = wrap(under + 1);
            x[slot] = over;
            x[(slot + 2) % 4] = wrap(over + 1);
            x
        })
        .collect())
}
