use super::{dt, DiagramError, LinkDiagram};

/// Parses either notation: `DT: ...` or a planar diagram code, each with an optional
/// leading `name:`.
pub fn parse_notation(text: &str) -> Result<LinkDiagram, DiagramError> {
    let (name, body, offset) = split_name(text);
    if let Some(rest) = strip_dt_tag(body) {
        let d = dt::parse_dt_body(rest, offset + body.len() - rest.len())?;
        return Ok(match name {
            Some(n) => d.with_name(n),
            None => d,
        });
    }
    parse_pd(text)
}

/// Parses `X(a,b,c,d)` terms separated by `;` or `,`, with optional `O` circle tokens
/// and an optional leading `name:`.
pub fn parse_pd(text: &str) -> Result<LinkDiagram, DiagramError> {
    let (name, body, offset) = split_name(text);
    let mut sc = Scanner {
        s: body.as_bytes(),
        pos: 0,
        offset,
    };
    let mut terms = Vec::new();
    let mut circles = 0;
    loop {
        sc.skip_ws();
        let Some(ch) = sc.peek() else { break };
        match ch {
            b'X' | b'x' => {
                sc.pos += 1;
                sc.skip_ws();
                let close = match sc.peek() {
                    Some(b'(') => b')',
                    Some(b'[') => b']',
                    _ => return Err(sc.error("expected '(' after X")),
                };
                sc.pos += 1;
                let mut t = [0i64; 4];
                for (k, slot) in t.iter_mut().enumerate() {
                    if k > 0 {
                        sc.expect(b',')?;
                    }
                    *slot = sc.label()?;
                }
                sc.expect(close)?;
                terms.push(t);
            }
            b'O' => {
                sc.pos += 1;
                circles += 1;
            }
            _ => return Err(sc.error("expected X(a,b,c,d) or O")),
        }
        sc.skip_ws();
        match sc.peek() {
            None => break,
            Some(b';' | b',') => sc.pos += 1,
            Some(_) => return Err(sc.error("expected ';' or ','")),
        }
    }
    LinkDiagram::from_pd_terms(name.map(str::to_string), &terms, circles)
}

/// Splits an optional `name:` prefix, returning the body and its byte offset.
pub(crate) fn split_name(text: &str) -> (Option<&str>, &str, usize) {
    let lead = text.len() - text.trim_start().len();
    let t = text.trim();
    if let Some(i) = t.find(':') {
        let head = t[..i].trim();
        let is_name = !head.is_empty()
            && !head.eq_ignore_ascii_case("dt")
            && head
                .chars()
                .all(|c| c.is_alphanumeric() || matches!(c, '_' | '-' | '.' | '*' | '{' | '}'));
        if is_name {
            return (Some(head), &t[i + 1..], lead + i + 1);
        }
    }
    (None, t, lead)
}

pub(crate) fn strip_dt_tag(body: &str) -> Option<&str> {
    let t = body.trim_start();
    if t.len() >= 2 && t[..2].eq_ignore_ascii_case("dt") {
        let rest = t[2..].trim_start();
        return rest.strip_prefix(':');
    }
    None
}

struct Scanner<'a> {
    s: &'a [u8],
    pos: usize,
    offset: usize,
}

impl Scanner<'_> {
    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn error(&self, msg: &str) -> DiagramError {
        DiagramError::Syntax {
            pos: self.offset + self.pos,
            msg: msg.to_string(),
        }
    }

    fn expect(&mut self, ch: u8) -> Result<(), DiagramError> {
        self.skip_ws();
        if self.peek() == Some(ch) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", ch as char)))
        }
    }

    fn label(&mut self) -> Result<i64, DiagramError> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some(b'-') {
            return Err(self.error("arc labels must be positive"));
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an arc label"));
        }
        let v: i64 = std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.error("arc label out of range"))?;
        if v == 0 {
            return Err(DiagramError::InvalidLabel { label: 0 });
        }
        Ok(v)
    }
}
